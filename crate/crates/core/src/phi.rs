//! The entire functions used by exponential integrators,
//!
//! ```text
//! phi_0(z) = e^z,   phi_1(z) = (e^z - 1) / z,   phi_2(z) = (e^z - 1 - z) / z^2,
//! ```
//!
//! evaluated without cancellation near the origin.

use num_complex::Complex64 as C64;

use crate::error::{KgError, Result};

/// Below this modulus the phi functions switch to their Taylor series.
pub const PHI_TAYLOR_THRESHOLD: f64 = 1e-2;

/// Number of Taylor terms used below [`PHI_TAYLOR_THRESHOLD`].
const PHI_TAYLOR_TERMS: usize = 10;

/// Threshold on `|x|` for the small-argument branch of [`phi1_divided_difference`].
pub const DIVDIFF_TAYLOR_THRESHOLD: f64 = 1e-2;

const DIVDIFF_TAYLOR_TERMS: usize = 24;

/// `e^z - 1` accurate for small `|z|`.
pub fn expm1(z: C64) -> C64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    let re = z.re.exp_m1() * c - 2.0 * half * half;
    let im = z.re.exp() * s;
    C64::new(re, im)
}

pub fn phi0(z: C64) -> C64 {
    z.exp()
}

pub fn phi1(z: C64) -> C64 {
    if z.norm() < PHI_TAYLOR_THRESHOLD {
        taylor(z, 1)
    } else {
        expm1(z) / z
    }
}

pub fn phi2(z: C64) -> C64 {
    if z.norm() < PHI_TAYLOR_THRESHOLD {
        taylor(z, 2)
    } else {
        (expm1(z) - z) / (z * z)
    }
}

/// `int_0^1 e^{z theta} theta d theta = phi_1(z) - phi_2(z)`, so that
/// `int_0^tau e^{i w s} s ds = tau^2 phi_moment(i w tau)`.
pub fn phi_moment(z: C64) -> C64 {
    phi1(z) - phi2(z)
}

/// `phi_j(z)` for `j` in `{0, 1, 2}`.
pub fn phi(j: u32, z: C64) -> Result<C64> {
    match j {
        0 => Ok(phi0(z)),
        1 => Ok(phi1(z)),
        2 => Ok(phi2(z)),
        _ => Err(KgError::InvalidIndex {
            what: "phi function order",
            value: j as i64,
        }),
    }
}

/// `sum_{k < PHI_TAYLOR_TERMS} z^k / (k + j)!`, Horner form.
fn taylor(z: C64, j: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in (0..PHI_TAYLOR_TERMS).rev() {
        acc = acc * z + C64::new(1.0 / factorial(k + j), 0.0);
    }
    acc
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// The difference quotient `(phi_1(a x) - phi_1(b x)) / ((a - b) x)` for
/// real `a != b`.
///
/// Both `phi_1` values agree to leading order when `x` is small, so below
/// [`DIVDIFF_TAYLOR_THRESHOLD`] the quotient is summed from its series
///
/// ```text
/// sum_{k >= 1} x^(k-1) (a^k - b^k) / ((a - b) (k + 1)!)
/// ```
///
/// whose first term is `1/2`.
pub fn phi1_divided_difference(a: f64, b: f64, x: C64) -> C64 {
    debug_assert!(a != b);
    if x.norm() < DIVDIFF_TAYLOR_THRESHOLD {
        // h_k = (a^k - b^k) / (a - b) = sum_{j < k} a^j b^(k-1-j), via h_{k+1} = a h_k + b^k
        let mut acc = C64::new(0.0, 0.0);
        let mut xpow = C64::new(1.0, 0.0);
        let mut h = 1.0;
        let mut bpow = b;
        let mut fact = 2.0;
        for k in 1..=DIVDIFF_TAYLOR_TERMS {
            acc += xpow * (h / fact);
            xpow *= x;
            h = a * h + bpow;
            bpow *= b;
            fact *= (k + 2) as f64;
        }
        acc
    } else {
        (phi1(x * a) - phi1(x * b)) / (x * (a - b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 40-term reference series, independent of the branch logic above.
    fn reference(j: usize, z: C64) -> C64 {
        let mut term = C64::new(1.0 / factorial(j), 0.0);
        let mut acc = term;
        for k in 1..40 {
            term = term * z / (k + j) as f64;
            acc += term;
        }
        acc
    }

    #[test]
    fn values_at_zero() {
        let zero = C64::new(0.0, 0.0);
        assert_eq!(phi(0, zero).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(phi(1, zero).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(phi(2, zero).unwrap(), C64::new(0.5, 0.0));
    }

    #[test]
    fn phi1_at_i_pi() {
        // e^{i pi} = -1 so phi_1(i pi) = -2 / (i pi) = 2i / pi
        let v = phi1(C64::new(0.0, std::f64::consts::PI));
        let expected = C64::new(0.0, 2.0 / std::f64::consts::PI);
        assert!((v - expected).norm() < 1e-15, "{v}");
    }

    #[test]
    fn rejects_bad_index() {
        assert!(matches!(
            phi(3, C64::new(1.0, 0.0)),
            Err(KgError::InvalidIndex { .. })
        ));
    }

    #[test]
    fn matches_series_inside_unit_disc() {
        for i in 0..400 {
            let r = 1e-6 + (i as f64 / 400.0);
            let arg = i as f64 * 0.7;
            let z = C64::from_polar(r, arg);
            for j in 0..3u32 {
                let got = phi(j, z).unwrap();
                let want = reference(j as usize, z);
                assert!((got - want).norm() < 1e-13, "j={j} z={z} {got} {want}");
            }
        }
    }

    #[test]
    fn branches_agree_across_threshold() {
        for i in 0..64 {
            let arg = i as f64 * std::f64::consts::TAU / 64.0;
            let inside = C64::from_polar(PHI_TAYLOR_THRESHOLD * (1.0 - 1e-13), arg);
            let outside = C64::from_polar(PHI_TAYLOR_THRESHOLD * (1.0 + 1e-13), arg);
            for j in 1..3u32 {
                let a = phi(j, inside).unwrap();
                let b = phi(j, outside).unwrap();
                assert!((a - b).norm() < 1e-12, "j={j} arg={arg} {a} {b}");
                // direct formula evaluated inside the threshold agrees as well
                let direct = match j {
                    1 => expm1(inside) / inside,
                    _ => (expm1(inside) - inside) / (inside * inside),
                };
                assert!((a - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn phi2_on_imaginary_axis_bounded_by_half() {
        for i in 0..20_000 {
            let y = -500.0 + i as f64 * 0.05;
            assert!(phi2(C64::new(0.0, y)).norm() <= 0.5 + 1e-15, "y={y}");
        }
    }

    #[test]
    fn divided_difference_branches_agree() {
        let pairs = [(4.0, 2.0), (0.0, 2.0), (-4.0, -2.0), (-6.0, -2.0), (-8.0, -4.0), (6.0, 2.0)];
        for &(a, b) in &pairs {
            for &s in &[1.0 - 1e-9, 1.0 + 1e-9] {
                let x = C64::new(0.0, DIVDIFF_TAYLOR_THRESHOLD * s);
                let series = phi1_divided_difference(a, b, x);
                let direct = (reference(1, x * a) - reference(1, x * b)) / (x * (a - b));
                assert!((series - direct).norm() < 1e-12, "a={a} b={b}");
            }
            let tiny = C64::new(0.0, 1e-9);
            assert!((phi1_divided_difference(a, b, tiny) - 0.5).norm() < 1e-8);
        }
    }

    #[test]
    fn expm1_has_no_cancellation() {
        let z = C64::new(1e-12, -2e-12);
        let v = expm1(z);
        assert!((v - z).norm() / z.norm() < 1e-11);
    }

    #[test]
    fn moment_matches_closed_forms() {
        // int_0^1 e^{z t} t dt = (z e^z - e^z + 1) / z^2 = e^z phi_2(-z)
        for &z in &[C64::new(0.0, 3.0), C64::new(0.0, -40.0), C64::new(-1.5, 0.25), C64::new(2.0, 7.0)] {
            let closed = (z * z.exp() - z.exp() + 1.0) / (z * z);
            assert!((phi_moment(z) - closed).norm() < 1e-13 * closed.norm().max(1.0));
            assert!((phi_moment(z) - z.exp() * phi2(-z)).norm() < 1e-13 * closed.norm().max(1.0));
        }
        assert!((phi_moment(C64::new(0.0, 0.0)) - 0.5).norm() < 1e-16);
    }
}
