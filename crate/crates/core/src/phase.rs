//! Unimodular phases `e^{i l c^2 t}`.
//!
//! At `c = 1e4` and `t = 0.1` the argument `l c^2 t` reaches `4e7`, so it is
//! formed as an unevaluated double-double sum and reduced modulo `2 pi`
//! before the trigonometric evaluation. The result is accurate to a few ulps
//! of the exact phase of the floating-point inputs.

use num_complex::Complex64 as C64;

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from_product(a: f64, b: f64) -> Self {
        let hi = a * b;
        let lo = a.mul_add(b, -hi);
        Self { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Self {
        let p = Self::from_product(self.hi, b);
        let lo = p.lo + self.lo * b;
        quick_two_sum(p.hi, lo)
    }

    fn sub(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, -other.hi);
        let e = e + (self.lo - other.lo);
        quick_two_sum(s, e)
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

fn quick_two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    let e = b - (s - a);
    DoubleDouble { hi: s, lo: e }
}

/// `l * c^2 * t` reduced into `[-pi, pi]`.
pub fn reduced_argument(l: i32, c: f64, t: f64) -> f64 {
    let x = DoubleDouble::from_product(c, c)
        .mul_f64(t)
        .mul_f64(l as f64);
    let q = (x.hi / TWO_PI_HI).round();
    if q == 0.0 {
        return x.hi + x.lo;
    }
    let two_pi_q = DoubleDouble::from_product(TWO_PI_HI, q);
    let two_pi_q = quick_two_sum(two_pi_q.hi, two_pi_q.lo + TWO_PI_LO * q);
    let r = x.sub(two_pi_q);
    r.hi + r.lo
}

/// `e^{i l c^2 t}`.
pub fn oscillation(l: i32, c: f64, t: f64) -> C64 {
    let (s, co) = reduced_argument(l, c, t).sin_cos();
    C64::new(co, s)
}
