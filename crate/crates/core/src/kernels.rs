//! Oscillatory kernels of the second-order scheme for real `z`.
//!
//! With `e_l = e^{i l c^2 t_n}`, `x = i c^2 tau` and the cubic monomials
//! `v^3`, `|v|^2 conj(v)`, `conj(v)^3`, every kernel below except `theta` is a
//! combination
//!
//! ```text
//! e_2 w_0 v^3 + 3 e_{-2} w_1 |v|^2 conj(v) + e_{-4} w_2 conj(v)^3
//! ```
//!
//! with scalar weights:
//!
//! ```text
//! Psi(t_n, s, v)         w = s (phi_1(2ic^2 s), phi_1(-2ic^2 s), phi_1(-4ic^2 s))
//! vartheta(t_n, tau, v)  w = (phi_2(2x), phi_2(-2x), phi_2(-4x))
//! Omega_l(t_n, tau, v)   w = (D(l+2, l), D(l-2, l), D(l-4, l)),
//!                        D(a, b) = (phi_1(a x) - phi_1(b x)) / ((a - b) x)
//! ```
//!
//! `vartheta` uses `(phi_1(z) - 1) / z = phi_2(z)`, and `Omega_l` is
//! `tau^{-2} int_0^tau e^{i l c^2 s} Psi(t_n, s, v) ds` in closed form.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::error::{KgError, Result};
use crate::phase::oscillation;
use crate::phi::{phi1, phi1_divided_difference, phi2, phi_moment};
use crate::spectral::{MultiplierSet, SpectralField};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Fourier coefficients of `v^3` and `|v|^2 conj(v)`; `conj(v)^3` follows by
/// conjugation.
#[derive(Clone, Debug)]
pub struct CubicMonomials {
    pub cube: SpectralField,
    pub mixed: SpectralField,
}

impl CubicMonomials {
    pub fn new(v: &SpectralField) -> Self {
        Self::from_physical(v, &v.to_physical())
    }

    /// From the physical values `vp` of `v`.
    pub fn from_physical(v: &SpectralField, vp: &[C64]) -> Self {
        let grid = v.grid();
        let cube = grid.from_physical(vp.iter().map(|&w| w * w * w).collect());
        let mixed = grid.from_physical(vp.iter().map(|&w| w.norm_sqr() * w.conj()).collect());
        Self { cube, mixed }
    }

    pub fn conj_cube(&self) -> SpectralField {
        self.cube.conj()
    }

    /// `e_2 w_0 v^3 + 3 e_{-2} w_1 |v|^2 conj(v) + e_{-4} w_2 conj(v)^3`.
    pub fn combine(&self, t_n: f64, c: f64, w: [C64; 3]) -> SpectralField {
        let a = oscillation(2, c, t_n) * w[0];
        let b = oscillation(-2, c, t_n) * w[1] * 3.0;
        let d = oscillation(-4, c, t_n) * w[2];
        let n = self.cube.coeffs().len();
        let cube = self.cube.coeffs();
        let mixed = self.mixed.coeffs();
        // conj(v)^3 has coefficients conj(cube[-k])
        self.cube.map_modes(|j, _| {
            a * cube[j] + b * mixed[j] + d * cube[(n - j) % n].conj()
        })
    }
}

/// Weights of `Psi(t_n, s, .)`.
pub fn psi_weights(s: f64, c: f64) -> [C64; 3] {
    let y = c * c * s;
    [
        s * phi1(C64::new(0.0, 2.0 * y)),
        s * phi1(C64::new(0.0, -2.0 * y)),
        s * phi1(C64::new(0.0, -4.0 * y)),
    ]
}

/// Weights of `vartheta(t_n, tau, .)`.
pub fn vartheta_weights(tau: f64, c: f64) -> [C64; 3] {
    let y = c * c * tau;
    [
        phi2(C64::new(0.0, 2.0 * y)),
        phi2(C64::new(0.0, -2.0 * y)),
        phi2(C64::new(0.0, -4.0 * y)),
    ]
}

/// `tau^{-2} int_0^tau e^{i l c^2 s} s ds` for `l` in `[2, -2, -4]`.
pub fn moment_weights(tau: f64, c: f64) -> [C64; 3] {
    let y = c * c * tau;
    [
        phi_moment(C64::new(0.0, 2.0 * y)),
        phi_moment(C64::new(0.0, -2.0 * y)),
        phi_moment(C64::new(0.0, -4.0 * y)),
    ]
}

/// Weights of `Omega_l(t_n, tau, .)` for any integer `l`.
pub fn omega_weights(l: i32, tau: f64, c: f64) -> [C64; 3] {
    let x = C64::new(0.0, c * c * tau);
    let l = l as f64;
    [
        phi1_divided_difference(l + 2.0, l, x),
        phi1_divided_difference(l - 2.0, l, x),
        phi1_divided_difference(l - 4.0, l, x),
    ]
}

/// The values of `l` accepted by [`kernel_omega`].
pub const OMEGA_INDICES: [i32; 3] = [-4, -2, 2];

/// `Psi(t_n, t, v)`.
pub fn kernel_psi(t_n: f64, t: f64, v: &SpectralField, c: f64) -> SpectralField {
    CubicMonomials::new(v).combine(t_n, c, psi_weights(t, c))
}

/// `vartheta(t_n, tau, v)`.
pub fn kernel_vartheta(t_n: f64, tau: f64, v: &SpectralField, c: f64) -> SpectralField {
    CubicMonomials::new(v).combine(t_n, c, vartheta_weights(tau, c))
}

/// `Omega_l(t_n, tau, v)` for `l` in [`OMEGA_INDICES`].
pub fn kernel_omega(t_n: f64, tau: f64, v: &SpectralField, c: f64, l: i32) -> Result<SpectralField> {
    if !OMEGA_INDICES.contains(&l) {
        return Err(KgError::InvalidIndex {
            what: "oscillation index l",
            value: l as i64,
        });
    }
    Ok(CubicMonomials::new(v).combine(t_n, c, omega_weights(l, tau, c)))
}

/// `theta(tau, v)`:
///
/// ```text
/// - 9/128 e^{i tau/2 A_c} (C - 1) |v|^4 v
/// - 9/64  C e^{i tau/2 A_c} [ |v|^2 (C - 1)(|v|^2 v) ]
/// + 9/128 C e^{i tau/2 A_c} [ v^2 (C - 1)(|v|^2 conj v) ]
/// ```
///
/// with `C = c <nabla>_c^{-1}`.
pub fn kernel_theta(tau: f64, v: &SpectralField, m: &MultiplierSet) -> SpectralField {
    let vp = v.to_physical();
    let cubic = v.grid().from_physical(vp.iter().map(|&w| w.norm_sqr() * w).collect());
    theta_from_parts(&vp, &cubic, m, &m.exp_a_symbol(0.5 * tau))
}

/// [`kernel_theta`] given the physical values of `v`, the coefficients of
/// `|v|^2 v` and the symbol of `e^{i tau/2 A_c}`.
pub(crate) fn theta_from_parts(
    vp: &[C64],
    cubic: &SpectralField,
    m: &MultiplierSet,
    half: &[C64],
) -> SpectralField {
    let grid = cubic.grid();
    let quintic = grid.from_physical(vp.iter().map(|&w| w.norm_sqr() * w.norm_sqr() * w).collect());
    // (C - 1) is real and even, so (C - 1)(|v|^2 conj v) = conj((C - 1)(|v|^2 v))
    let g = m.apply_c_inv_minus_one(cubic).to_physical();
    let mixed = grid.from_physical(
        vp.iter()
            .zip(&g)
            .map(|(&w, &gw)| -9.0 / 64.0 * w.norm_sqr() * gw + 9.0 / 128.0 * w * w * gw.conj())
            .collect(),
    );
    let cm1 = &m.c_inv_minus_one;
    let ci = &m.c_inv;
    let qc = quintic.coeffs();
    mixed.map_modes(|j, x| half[j] * (ci[j] * x - 9.0 / 128.0 * cm1[j] * qc[j]))
}

/// Symbol tables of [`oscillatory_block`] for fixed `(c, tau)`.
#[derive(Clone, Debug)]
pub struct BlockTables {
    pub tau: f64,
    pub c: f64,
    /// `e^{i tau A_c}`
    pub prop: Vec<C64>,
    res_phi1: Vec<C64>,
    res_moment: Vec<C64>,
    /// `-|k|^2/2 - a_c`, the symbol of `Delta/2 - A_c`
    res_shift: Vec<f64>,
    n2_phi1: Vec<C64>,
    n2_moment: Vec<C64>,
    n4_phi1: Vec<C64>,
    n4_moment: Vec<C64>,
    /// `(mu(2x), mu(-2x), mu(-4x))`
    pub moment_scalars: [C64; 3],
    omega2: [C64; 3],
    omega_m2: [C64; 3],
    /// weights of `Omega_2`, `Omega_4`, conjugated inside `X_3`, `X_4`
    omega_conj: [[C64; 3]; 2],
}

impl BlockTables {
    pub fn new(m: &MultiplierSet, tau: f64) -> Self {
        let res = m.resonant_symbol(tau);
        let n2 = m.shifted_symbol(tau, -2.0);
        let n4 = m.shifted_symbol(tau, -4.0);
        let map = |s: &[C64], f: fn(C64) -> C64| s.iter().map(|&z| f(z)).collect::<Vec<_>>();
        let c = m.c();
        Self {
            tau,
            c,
            prop: m.exp_a_symbol(tau),
            res_phi1: map(&res, phi1),
            res_moment: map(&res, phi_moment),
            res_shift: m
                .laplace
                .iter()
                .zip(&m.a_c)
                .map(|(&l, &a)| 0.5 * l - a)
                .collect(),
            n2_phi1: map(&n2, phi1),
            n2_moment: map(&n2, phi_moment),
            n4_phi1: map(&n4, phi1),
            n4_moment: map(&n4, phi_moment),
            moment_scalars: moment_weights(tau, c),
            omega2: omega_weights(2, tau, c),
            omega_m2: omega_weights(-2, tau, c),
            omega_conj: [omega_weights(2, tau, c), omega_weights(4, tau, c)],
        }
    }
}

/// The retained part `I^1` of the oscillatory Duhamel integral,
///
/// ```text
/// I^1 = e^{i tau A_c} S
///     + tau^2 [ -3i/8 e_2 u^2 X_1 - 3i/8 e_{-2} conj(u)^2 X_2
///               + 6i/8 e_{-2} |u|^2 X_3 + 3i/8 e_{-4} conj(u)^2 X_4 ]
/// ```
///
/// where `S` collects the resonant (`2c^2 + |k|^2/2`) and non-resonant
/// (`-2c^2 - A_c`, `-4c^2 - A_c`) blocks
///
/// ```text
/// tau phi_1(z) f + i tau^2 mu(z) g,   mu(z) = phi_1(z) - phi_2(z),
/// ```
///
/// `tau^2 mu(i w tau)` being `int_0^tau e^{i w s} s ds`, and
///
/// ```text
/// X_1 = C[3 mu( 2x) |u|^2 u + Omega_2]
/// X_2 = C[3 mu(-2x) |u|^2 u + Omega_{-2}]
/// X_3 = C[3 mu(-2x) |u|^2 conj(u) + conj(Omega_2)]
/// X_4 = C[3 mu(-4x) |u|^2 conj(u) + conj(Omega_4)]
/// ```
pub fn oscillatory_block(tau: f64, t_n: f64, u: &SpectralField, m: &MultiplierSet) -> SpectralField {
    let up = u.to_physical();
    let mono = CubicMonomials::from_physical(u, &up);
    oscillatory_block_with(&BlockTables::new(m, tau), t_n, u, &up, &mono, m)
}

/// [`oscillatory_block`] with precomputed tables, physical values and monomials.
pub fn oscillatory_block_with(
    tab: &BlockTables,
    t_n: f64,
    u: &SpectralField,
    up: &[C64],
    mono: &CubicMonomials,
    m: &MultiplierSet,
) -> SpectralField {
    let grid = u.grid();
    let (tau, c) = (tab.tau, tab.c);
    let tau2 = tau * tau;
    let e2 = oscillation(2, c, t_n);
    let em2 = oscillation(-2, c, t_n);
    let em4 = oscillation(-4, c, t_n);

    let ap = m.apply_a(u).to_physical();
    let mut p_res = Vec::with_capacity(up.len());
    let mut p_n2 = Vec::with_capacity(up.len());
    let mut p_n4 = Vec::with_capacity(up.len());
    for (&w, &a) in up.iter().zip(&ap) {
        let wb = w.conj();
        let ab = a.conj();
        p_res.push(w * w * a);
        p_n2.push(wb * wb * a - 2.0 * w.norm_sqr() * ab);
        p_n4.push(wb * wb * ab);
    }
    let p_res = grid.from_physical(p_res);
    let p_n2 = grid.from_physical(p_n2);
    let p_n4 = grid.from_physical(p_n4);

    let len = u.coeffs().len();
    let cube = mono.cube.coeffs();
    let mixed = mono.mixed.coeffs();
    let (pr, p2, p4) = (p_res.coeffs(), p_n2.coeffs(), p_n4.coeffs());
    let it2 = I * tau2;
    let s = mono.cube.map_modes(|j, _| {
        let cbar = cube[(len - j) % len].conj();
        let res = tau * tab.res_phi1[j] * cube[j]
            + it2 * tab.res_moment[j] * (tab.res_shift[j] * cube[j] + 3.0 * pr[j]);
        let non2 = 3.0 * tau * tab.n2_phi1[j] * mixed[j] + 3.0 * it2 * tab.n2_moment[j] * p2[j];
        let non4 = tau * tab.n4_phi1[j] * cbar - 3.0 * it2 * tab.n4_moment[j] * p4[j];
        tab.prop[j] * (e2 * res + em2 * non2 + em4 * non4)
    });

    // |u|^2 u = conj(|u|^2 conj u)
    let plain = mono.mixed.conj();
    let omega2 = mono.combine(t_n, c, tab.omega2);
    let omega_m2 = mono.combine(t_n, c, tab.omega_m2);
    let omega3 = mono.combine(t_n, c, tab.omega_conj[0]);
    let omega4 = mono.combine(t_n, c, tab.omega_conj[1]);
    let [f2, fm2, fm4] = tab.moment_scalars;
    let x_of = |cubic: &SpectralField, phi: C64, om: &SpectralField| {
        m.apply_c_inv(&om.axpy(3.0 * phi, cubic)).to_physical()
    };
    let x1 = x_of(&plain, f2, &omega2);
    let x2 = x_of(&plain, fm2, &omega_m2);
    let x3 = x_of(&mono.mixed, fm2, &omega3.conj());
    let x4 = x_of(&mono.mixed, fm4, &omega4.conj());
    let k1 = -3.0 / 8.0 * I * e2;
    let k2 = -3.0 / 8.0 * I * em2;
    let k3 = 6.0 / 8.0 * I * em2;
    let k4 = 3.0 / 8.0 * I * em4;
    let corr: Vec<C64> = (0..up.len())
        .map(|j| {
            let w = up[j];
            let wb = w.conj();
            k1 * w * w * x1[j] + k2 * wb * wb * x2[j] + k3 * w.norm_sqr() * x3[j] + k4 * wb * wb * x4[j]
        })
        .collect();
    let corr = grid.from_physical(corr);
    s.axpy(C64::new(tau2, 0.0), &corr)
}

/// All kernels of one step, evaluated at `(t_n, tau, v)`.
#[derive(Clone, Debug)]
pub struct KernelBundle {
    /// `Psi(t_n, tau, v)`
    pub psi: SpectralField,
    pub vartheta: SpectralField,
    pub omega: BTreeMap<i32, SpectralField>,
    pub theta: SpectralField,
}

impl KernelBundle {
    pub fn evaluate(t_n: f64, tau: f64, v: &SpectralField, m: &MultiplierSet) -> Self {
        let c = m.c();
        let mono = CubicMonomials::new(v);
        let omega = OMEGA_INDICES
            .iter()
            .map(|&l| (l, mono.combine(t_n, c, omega_weights(l, tau, c))))
            .collect();
        Self {
            psi: mono.combine(t_n, c, psi_weights(tau, c)),
            vartheta: mono.combine(t_n, c, vartheta_weights(tau, c)),
            omega,
            theta: kernel_theta(tau, v, m),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.psi.is_finite()
            && self.vartheta.is_finite()
            && self.theta.is_finite()
            && self.omega.values().all(SpectralField::is_finite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use crate::spectral::{make_grid, SpectralGrid};
    use std::sync::Arc;

    fn sample(grid: &Arc<SpectralGrid>) -> SpectralField {
        SpectralField::from_fn(grid, |x| {
            C64::new(0.4 * x.sin() + 0.1 * (2.0 * x).cos(), 0.2 * (3.0 * x).sin())
        })
    }

    fn direct_phi1(z: C64) -> C64 {
        if z == C64::new(0.0, 0.0) {
            return C64::new(1.0, 0.0);
        }
        (z.exp() - 1.0) / z
    }

    #[test]
    fn kernels_vanish_at_zero() {
        let g = make_grid(1, 8).unwrap();
        let m = MultiplierSet::new(&g, 3.0).unwrap();
        let z = SpectralField::zeros(&g);
        let b = KernelBundle::evaluate(0.3, 0.05, &z, &m);
        for f in [&b.psi, &b.vartheta, &b.theta] {
            assert_eq!(f.sobolev_norm(0.0), 0.0);
        }
        assert!(b.omega.values().all(|f| f.sobolev_norm(0.0) == 0.0));
        assert_eq!(oscillatory_block(0.05, 0.3, &z, &m).sobolev_norm(0.0), 0.0);
        assert_eq!(kernel_psi(0.3, 0.0, &sample(&g), 3.0).sobolev_norm(0.0), 0.0);
    }

    #[test]
    fn omega_rejects_other_indices() {
        let g = make_grid(1, 4).unwrap();
        let v = sample(&g);
        for l in [-3, 0, 1, 4] {
            assert!(matches!(
                kernel_omega(0.0, 0.1, &v, 1.0, l),
                Err(KgError::InvalidIndex { value, .. }) if value == l as i64
            ));
        }
    }

    #[test]
    fn omega_matches_quadrature_of_its_integral() {
        let g = make_grid(1, 8).unwrap();
        let v = sample(&g);
        let rule = GaussLegendre::new(64).unwrap();
        let (t_n, tau) = (0.037, 0.01);
        for c in [1.0, 10.0] {
            let (s, w) = rule.on_interval(0.0, tau);
            for l in OMEGA_INDICES {
                let mut q = SpectralField::zeros(&g);
                for (&si, &wi) in s.iter().zip(&w) {
                    let e = C64::from_polar(1.0, l as f64 * c * c * si);
                    q = q.axpy(e * wi / (tau * tau), &kernel_psi(t_n, si, &v, c));
                }
                let got = kernel_omega(t_n, tau, &v, c, l).unwrap();
                assert!(got.distance(&q, 0.0) < 1e-10, "c={c} l={l} {}", got.distance(&q, 0.0));
            }
        }
    }

    #[test]
    fn linear_moment_has_closed_form() {
        // int_0^tau e^{i w s} s ds = tau^2 (phi_0(z) - phi_1(z)) / z, z = i w tau
        let rule = GaussLegendre::new(64).unwrap();
        let tau = 0.01;
        for c in [1.0, 10.0, 30.0] {
            let moments = moment_weights(tau, c);
            for (l, mu) in [2.0, -2.0, -4.0].into_iter().zip(moments) {
                let w = l * c * c;
                let (s, wt) = rule.on_interval(0.0, tau);
                let q: C64 = s.iter().zip(&wt).map(|(&s, &wt)| C64::from_polar(s * wt, w * s)).sum();
                let z = C64::new(0.0, w * tau);
                let closed = tau * tau * (z.exp() - direct_phi1(z)) / z;
                assert!((q - closed).norm() < 1e-15, "c={c} l={l}");
                assert!((tau * tau * mu - q).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn psi_small_argument_limit() {
        let g = make_grid(1, 8).unwrap();
        let v = sample(&g);
        let (c, t_n, t) = (1e-3, 0.4, 1e-3);
        let got = kernel_psi(t_n, t, &v, c);
        let want = CubicMonomials::new(&v).combine(t_n, c, [C64::new(t, 0.0); 3]);
        assert!(got.distance(&want, 1.0) < 1e-12 * want.sobolev_norm(1.0).max(1.0) + 1e-15);
    }

    #[test]
    fn vartheta_small_argument_limit() {
        let g = make_grid(1, 8).unwrap();
        let v = sample(&g);
        let (c, t_n, tau) = (1e-4, 0.25, 1e-3);
        let got = kernel_vartheta(t_n, tau, &v, c);
        let want = CubicMonomials::new(&v).combine(t_n, c, [C64::new(0.5, 0.0); 3]);
        assert!(got.distance(&want, 1.0) < 1e-10 * want.sobolev_norm(1.0));
    }

    #[test]
    fn vartheta_is_bounded_uniformly_in_c() {
        let g = make_grid(1, 16).unwrap();
        let v = sample(&g);
        let bound = 0.5 * 7.0 * v.sobolev_norm(1.0).powi(3);
        for c in [1.0, 10.0, 1e2, 1e3, 1e4] {
            for tau in [1e-4, 1e-2, 0.1] {
                let n = kernel_vartheta(0.1, tau, &v, c).sobolev_norm(1.0);
                assert!(n.is_finite() && n <= bound, "c={c} tau={tau} {n} {bound}");
            }
        }
    }

    #[test]
    fn theta_vanishes_for_constants() {
        let g = make_grid(1, 8).unwrap();
        let m = MultiplierSet::new(&g, 2.0).unwrap();
        let v = SpectralField::constant(&g, C64::new(0.7, -0.2));
        assert!(kernel_theta(0.1, &v, &m).sobolev_norm(0.0) < 1e-15);
    }

    #[test]
    fn theta_decays_like_inverse_c_squared() {
        let g = make_grid(1, 16).unwrap();
        let v = sample(&g);
        let norms: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&c| kernel_theta(0.05, &v, &MultiplierSet::new(&g, c).unwrap()).sobolev_norm(1.0))
            .collect();
        // least squares in log10 c at equispaced abscissae -1, 0, 1
        let slope = 0.5 * (norms[2] / norms[0]).log10();
        assert!((slope + 2.0).abs() < 0.2, "{slope}");
        assert!((norms[2] / norms[1]).log10() < -1.9);
    }

    #[test]
    fn block_for_a_constant_mode_matches_scalar_formula() {
        let g = make_grid(1, 4).unwrap();
        let a = C64::new(0.6, 0.3);
        let u = SpectralField::constant(&g, a);
        let (t_n, tau) = (0.21, 0.07);
        for c in [1.0, 3.0, 20.0] {
            let m = MultiplierSet::new(&g, c).unwrap();
            let got = oscillatory_block(tau, t_n, &u, &m).coeff(0);

            let x = C64::new(0.0, c * c * tau);
            let e = |l: f64| C64::from_polar(1.0, l * c * c * t_n);
            let mu = |z: C64| (z.exp() - direct_phi1(z)) / z;
            let dd = |p: f64, q: f64| (direct_phi1(x * p) - direct_phi1(x * q)) / (x * (p - q));
            let ab = a.conj();
            let n = a.norm_sqr();
            let comb = |w: [C64; 3]| e(2.0) * w[0] * a * a * a + 3.0 * e(-2.0) * w[1] * n * ab + e(-4.0) * w[2] * ab * ab * ab;
            let om = |l: f64| comb([dd(l + 2.0, l), dd(l - 2.0, l), dd(l - 4.0, l)]);

            let s = e(2.0) * tau * direct_phi1(x * 2.0) * a * a * a
                + e(-2.0) * 3.0 * tau * direct_phi1(x * -2.0) * n * ab
                + e(-4.0) * tau * direct_phi1(x * -4.0) * ab * ab * ab;
            let x1 = 3.0 * mu(x * 2.0) * n * a + om(2.0);
            let x2 = 3.0 * mu(x * -2.0) * n * a + om(-2.0);
            let x3 = 3.0 * mu(x * -2.0) * n * ab + om(2.0).conj();
            let x4 = 3.0 * mu(x * -4.0) * n * ab + om(4.0).conj();
            let corr = -3.0 / 8.0 * I * e(2.0) * a * a * x1 - 3.0 / 8.0 * I * e(-2.0) * ab * ab * x2
                + 6.0 / 8.0 * I * e(-2.0) * n * x3
                + 3.0 / 8.0 * I * e(-4.0) * ab * ab * x4;
            let want = s + tau * tau * corr;
            assert!((got - want).norm() < 1e-13, "c={c} {got} {want}");
            assert!(oscillatory_block(tau, t_n, &u, &m).coeffs().iter().skip(1).all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn bundle_is_finite_across_regimes() {
        let g = make_grid(1, 16).unwrap();
        let v = sample(&g);
        for c in [1e-2, 1.0, 1e2, 1e4] {
            let m = MultiplierSet::new(&g, c).unwrap();
            for tau in [1e-9, 1e-2 / (c * c), 0.0099 / (c * c), 0.0101 / (c * c), 0.1] {
                assert!(KernelBundle::evaluate(0.05, tau, &v, &m).is_finite(), "c={c} tau={tau}");
            }
        }
    }

    #[test]
    fn kernels_are_continuous_across_the_taylor_threshold() {
        let g = make_grid(1, 8).unwrap();
        let v = sample(&g);
        let c = 1.0;
        let below = KernelBundle::evaluate(0.0, 0.01 * (1.0 - 1e-9) / 4.0, &v, &MultiplierSet::new(&g, c).unwrap());
        let above = KernelBundle::evaluate(0.0, 0.01 * (1.0 + 1e-9) / 4.0, &v, &MultiplierSet::new(&g, c).unwrap());
        assert!(below.vartheta.distance(&above.vartheta, 0.0) < 1e-10);
        for l in OMEGA_INDICES {
            assert!(below.omega[&l].distance(&above.omega[&l], 0.0) < 1e-10);
        }
    }
}
