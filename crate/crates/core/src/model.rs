//! Physical and twisted representations of a Klein-Gordon solution.
//!
//! With `<nabla>_c = sqrt(c^2 - Delta)` the first-order variables are
//!
//! ```text
//! u = z - i c^{-1} <nabla>_c^{-1} z_t,    v = conj(z) - i c^{-1} <nabla>_c^{-1} conj(z_t),
//! ```
//!
//! so that `z = (u + conj(v)) / 2`, and the twisted variables filter out the
//! fast rotation: `u_* = e^{-i c^2 t} u`, `v_* = e^{-i c^2 t} v`.

use num_complex::Complex64 as C64;

use crate::error::{KgError, Result};
use crate::phase::oscillation;
use crate::spectral::{MultiplierSet, SpectralField};

/// Physical state `(z, z_t)` at time `t`.
#[derive(Clone, Debug)]
pub struct KgState {
    pub z: SpectralField,
    pub zt: SpectralField,
    pub t: f64,
}

impl KgState {
    pub fn new(z: SpectralField, zt: SpectralField, t: f64) -> Result<Self> {
        z.ensure_same_grid(&zt)?;
        Ok(Self { z, zt, t })
    }
}

/// Twisted variables `(u_*, v_*)` at time `t` for speed of light `c`.
#[derive(Clone, Debug)]
pub struct TwistedPair {
    pub u_star: SpectralField,
    pub v_star: SpectralField,
    pub t: f64,
    pub c: f64,
}

impl TwistedPair {
    /// A pair for real-valued `z`, where `u_* = v_*`.
    pub fn real(u_star: SpectralField, t: f64, c: f64) -> Self {
        Self {
            v_star: u_star.clone(),
            u_star,
            t,
            c,
        }
    }

    /// `max_k |u_k - v_k|`.
    pub fn asymmetry(&self) -> f64 {
        self.u_star.max_abs_coeff_diff(&self.v_star)
    }
}

/// `(z, z_t) -> (u, v)`.
pub fn to_first_order(
    s: &KgState,
    m: &MultiplierSet,
) -> Result<(SpectralField, SpectralField)> {
    s.z.ensure_same_grid(&s.zt)?;
    if **s.z.grid() != **m.grid() {
        return Err(KgError::GridMismatch);
    }
    let c = m.c();
    // i / (c <nabla>_c), applied to z_t
    let inv: Vec<f64> = m.bracket_c.iter().map(|&b| 1.0 / (c * b)).collect();
    let minus_i = C64::new(0.0, -1.0);
    let u = s.z.axpy(minus_i, &s.zt.mul_symbol(&inv));
    let v = s.z.conj().axpy(minus_i, &s.zt.conj().mul_symbol(&inv));
    Ok((u, v))
}

/// `(u, v) -> (z, z_t)` with `z = (u + conj v)/2`, `z_t = (i/2) c <nabla>_c (u - conj v)`.
pub fn from_first_order(
    u: &SpectralField,
    v: &SpectralField,
    m: &MultiplierSet,
    t: f64,
) -> Result<KgState> {
    u.ensure_same_grid(v)?;
    let vbar = v.conj();
    let z = (u + &vbar) * 0.5;
    let cb: Vec<f64> = m.bracket_c.iter().map(|&b| m.c() * b).collect();
    let zt = (u - &vbar).mul_symbol(&cb) * C64::new(0.0, 0.5);
    Ok(KgState { z, zt, t })
}

/// `(u, v) -> (u_*, v_*)` at time `t`.
pub fn twist(u: &SpectralField, v: &SpectralField, t: f64, c: f64) -> TwistedPair {
    let phase = oscillation(-1, c, t);
    TwistedPair {
        u_star: u.scale(phase),
        v_star: v.scale(phase),
        t,
        c,
    }
}

/// Inverse of [`twist`].
pub fn untwist(p: &TwistedPair) -> (SpectralField, SpectralField) {
    let phase = oscillation(1, p.c, p.t);
    (p.u_star.scale(phase), p.v_star.scale(phase))
}

/// `z = (e^{i c^2 t} u_* + e^{-i c^2 t} conj(v_*)) / 2`.
pub fn reconstruct_z(p: &TwistedPair) -> SpectralField {
    let plus = oscillation(1, p.c, p.t);
    let minus = oscillation(-1, p.c, p.t);
    (p.u_star.scale(plus * 0.5)).axpy(minus * 0.5, &p.v_star.conj())
}

/// Physical state of a twisted pair.
pub fn to_kg_state(p: &TwistedPair, m: &MultiplierSet) -> Result<KgState> {
    let (u, v) = untwist(p);
    from_first_order(&u, &v, m, p.t)
}

/// Twisted pair of a physical state.
pub fn from_kg_state(s: &KgState, m: &MultiplierSet) -> Result<TwistedPair> {
    let (u, v) = to_first_order(s, m)?;
    Ok(twist(&u, &v, s.t, m.c()))
}

/// `|z|^2 z`, formed pointwise.
pub fn cubic(z: &SpectralField) -> SpectralField {
    z.map_physical(|v| v * v.norm_sqr())
}

/// Tolerance on the imaginary part of `z` accepted by [`energy`].
pub const REAL_TOLERANCE: f64 = 1e-8;

/// The conserved energy of real solutions,
///
/// ```text
/// E = int  c^{-2} z_t^2 / 2 + |grad z|^2 / 2 + c^2 z^2 / 2 - z^4 / 4  dx.
/// ```
///
/// Quadratic terms use Parseval, the quartic term the trapezoidal rule,
/// which is exactly the energy conserved by the collocation semi-discretisation.
pub fn energy(s: &KgState, m: &MultiplierSet) -> Result<f64> {
    let z_nodes = s.z.to_nodes();
    let scale = s.z.sobolev_norm(0.0).max(1.0);
    let imag = z_nodes.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > REAL_TOLERANCE * scale {
        return Err(KgError::Domain(format!(
            "energy needs real z, imaginary part {imag:e}"
        )));
    }
    let c = m.c();
    let two_pi = std::f64::consts::TAU;
    let mut quadratic = 0.0;
    for (j, &k) in s.z.grid().wavenumbers().iter().enumerate() {
        let k2 = (k * k) as f64;
        quadratic += (k2 + c * c) * s.z.coeffs()[j].norm_sqr()
            + s.zt.coeffs()[j].norm_sqr() / (c * c);
    }
    let dx = s.z.grid().dx();
    let quartic: f64 = z_nodes.iter().map(|v| v.re.powi(4)).sum::<f64>() * dx;
    Ok(0.5 * two_pi * quadratic - 0.25 * quartic)
}
