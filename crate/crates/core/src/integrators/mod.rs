//! Time-stepping schemes in twisted variables.
//!
//! All steps act on `(u_*, v_*)` at time `t_n`; `C = c <nabla>_c^{-1}`,
//! `E(t) = e^{i t A_c}` and `e_l = e^{i l c^2 t_n}`.
//!
//! | scheme        | data    | order | step                                                      |
//! |---------------|---------|-------|-----------------------------------------------------------|
//! | `Uei1`        | complex | 1     | exponential integrator with exact phase integrals          |
//! | `Uei1Real`    | real    | 1     | `Uei1` with `u_* = v_*`                                   |
//! | `Uei2Real`    | real    | 2     | midpoint splitting plus oscillatory corrections           |
//! | `LieLimit`    | complex | 1     | Lie splitting of the limit Schroedinger system            |
//! | `StrangLimit` | real    | 2     | Strang splitting of the limit Schroedinger equation       |
//! | `LargeCUei1`  | complex | 1     | `Uei1` without the `O(c^{-2})` terms, for `tau c > 1`     |

mod evolve;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::kernels::{oscillatory_block_with, theta_from_parts, BlockTables, CubicMonomials};
use crate::kernels::vartheta_weights;
use crate::model::TwistedPair;
use crate::phase::oscillation;
use crate::phi::phi1;
use crate::spectral::{MultiplierSet, SpectralField, SpectralGrid};

pub use evolve::{evolve, reference_solution, step_count, ReferenceOptions, ReferenceSolution};
pub use oracle::{duhamel_oracle_step, duhamel_oracle_step_with, OracleOptions};

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum SchemeId {
    Uei1,
    Uei1Real,
    Uei2Real,
    LieLimit,
    StrangLimit,
    LargeCUei1,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] = [
        SchemeId::Uei1,
        SchemeId::Uei1Real,
        SchemeId::Uei2Real,
        SchemeId::LieLimit,
        SchemeId::StrangLimit,
        SchemeId::LargeCUei1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Uei1 => "uei1",
            SchemeId::Uei1Real => "uei1_real",
            SchemeId::Uei2Real => "uei2",
            SchemeId::LieLimit => "lie",
            SchemeId::StrangLimit => "strang",
            SchemeId::LargeCUei1 => "largec_uei1",
        }
    }

    /// Nominal convergence order.
    pub fn order(self) -> u32 {
        match self {
            SchemeId::Uei2Real | SchemeId::StrangLimit => 2,
            _ => 1,
        }
    }

    /// Whether the scheme only advances `u_*` and assumes `v_* = u_*`.
    pub fn is_real(self) -> bool {
        matches!(
            self,
            SchemeId::Uei1Real | SchemeId::Uei2Real | SchemeId::StrangLimit
        )
    }

    /// Whether the scheme approximates the limit system instead of the
    /// Klein-Gordon equation at finite `c`.
    pub fn is_limit(self) -> bool {
        matches!(self, SchemeId::LieLimit | SchemeId::StrangLimit)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<SchemeId> for &'static str {
    fn from(s: SchemeId) -> Self {
        s.name()
    }
}

impl TryFrom<String> for SchemeId {
    type Error = KgError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for SchemeId {
    type Err = KgError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uei1" => Ok(SchemeId::Uei1),
            "uei1_real" | "uei1-real" => Ok(SchemeId::Uei1Real),
            "uei2" | "uei2_real" | "uei2-real" => Ok(SchemeId::Uei2Real),
            "lie" | "lie_limit" => Ok(SchemeId::LieLimit),
            "strang" | "strang_limit" => Ok(SchemeId::StrangLimit),
            "largec" | "largec_uei1" | "large_c_uei1" => Ok(SchemeId::LargeCUei1),
            other => Err(KgError::InvalidParameter(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Step size, operators and cached symbol tables shared by all steps of a run.
#[derive(Clone)]
pub struct StepContext {
    pub grid: Arc<SpectralGrid>,
    pub m: Arc<MultiplierSet>,
    pub tau: f64,
    /// Sobolev order used for diagnostics.
    pub r: f64,
    prop: Vec<C64>,
    half_prop: Vec<C64>,
    free: Vec<C64>,
    half_free: Vec<C64>,
    tables: BlockTables,
}

impl fmt::Debug for StepContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StepContext")
            .field("c", &self.m.c())
            .field("modes", &self.grid.modes())
            .field("tau", &self.tau)
            .field("r", &self.r)
            .finish()
    }
}

impl StepContext {
    pub fn new(m: Arc<MultiplierSet>, tau: f64, r: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(KgError::InvalidParameter(format!(
                "time step must be positive, got {tau}"
            )));
        }
        let free_symbol = |t: f64| -> Vec<C64> {
            m.laplace
                .iter()
                .map(|&l| C64::from_polar(1.0, -0.5 * t * l))
                .collect()
        };
        Ok(Self {
            grid: Arc::clone(m.grid()),
            prop: m.exp_a_symbol(tau),
            half_prop: m.exp_a_symbol(0.5 * tau),
            free: free_symbol(tau),
            half_free: free_symbol(0.5 * tau),
            tables: BlockTables::new(&m, tau),
            m,
            tau,
            r,
        })
    }

    /// The same operators with another step size.
    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        Self::new(Arc::clone(&self.m), tau, self.r)
    }

    pub fn c(&self) -> f64 {
        self.m.c()
    }

    fn check(&self, f: &SpectralField) {
        debug_assert!(**f.grid() == *self.grid, "field and context grids differ");
    }
}

fn apply(symbol: &[C64], f: &SpectralField) -> SpectralField {
    f.map_modes(|j, v| v * symbol[j])
}

/// `(phi_1(2x), phi_1(-2x), phi_1(-4x))` with `x = i c^2 tau`.
fn phi1_scalars(c: f64, tau: f64) -> [C64; 3] {
    let y = c * c * tau;
    [
        phi1(C64::new(0.0, 2.0 * y)),
        phi1(C64::new(0.0, -2.0 * y)),
        phi1(C64::new(0.0, -4.0 * y)),
    ]
}

/// One component of the first-order step in its fused form
///
/// ```text
/// E(tau)[ e^{-i tau N/8} u + i tau/8 N u ]
///   - i tau/8 C E(tau)[ N u + e_2 phi_1(2x) u^2 v + e_{-2} phi_1(-2x)(2|u|^2 + |v|^2) conj v
///                       + e_{-4} phi_1(-4x) conj(v)^2 conj u ],   N = |u|^2 + 2|v|^2.
/// ```
fn uei1_component(up: &[C64], vp: &[C64], t_n: f64, ctx: &StepContext) -> SpectralField {
    let tau = ctx.tau;
    let c = ctx.c();
    let [p2, pm2, pm4] = phi1_scalars(c, tau);
    let a = oscillation(2, c, t_n) * p2;
    let b = oscillation(-2, c, t_n) * pm2;
    let d = oscillation(-4, c, t_n) * pm4;
    let mut inner = Vec::with_capacity(up.len());
    let mut corr = Vec::with_capacity(up.len());
    for (&u, &v) in up.iter().zip(vp) {
        let (nu, nv) = (u.norm_sqr(), v.norm_sqr());
        let n = nu + 2.0 * nv;
        let ph = C64::from_polar(1.0, -tau * n / 8.0);
        inner.push(ph * u + I * (tau / 8.0) * n * u);
        let vb = v.conj();
        corr.push(n * u + a * u * u * v + b * (2.0 * nu + nv) * vb + d * vb * vb * u.conj());
    }
    let inner = ctx.grid.from_physical(inner);
    let corr = ctx.grid.from_physical(corr);
    let ci = &ctx.m.c_inv;
    let k = -I * (tau / 8.0);
    let cc = corr.coeffs();
    inner.map_modes(|j, x| ctx.prop[j] * (x + k * ci[j] * cc[j]))
}

/// One step of the first-order scheme for complex data.
pub fn step_uei1(p: &TwistedPair, ctx: &StepContext) -> TwistedPair {
    ctx.check(&p.u_star);
    let up = p.u_star.to_physical();
    let vp = p.v_star.to_physical();
    let u_star = uei1_component(&up, &vp, p.t, ctx);
    let v_star = uei1_component(&vp, &up, p.t, ctx);
    TwistedPair {
        u_star,
        v_star,
        t: p.t + ctx.tau,
        c: p.c,
    }
}

/// One step of the first-order scheme for real data (`u_* = v_*`).
pub fn step_uei1_real(u: &SpectralField, t_n: f64, ctx: &StepContext) -> SpectralField {
    ctx.check(u);
    let up = u.to_physical();
    uei1_component(&up, &up, t_n, ctx)
}

/// One step of the second-order scheme for real data,
///
/// ```text
/// U = E(tau/2) u
/// u+ = E(tau/2) e^{-i tau 3/8 |U|^2} U - i tau 3/8 (C - 1) E(tau/2) |U|^2 U
///      + tau^2 theta(U) - tau^2 3/64 C [2 |u|^2 C vartheta(u) - u^2 C conj(vartheta(u))]
///      - i/8 C I^1(u).
/// ```
pub fn step_uei2_real(u: &SpectralField, t_n: f64, ctx: &StepContext) -> SpectralField {
    ctx.check(u);
    let grid = &ctx.grid;
    let m = &*ctx.m;
    let tau = ctx.tau;
    let c = ctx.c();

    let up = u.to_physical();
    let mono = CubicMonomials::from_physical(u, &up);

    let big_u = apply(&ctx.half_prop, u);
    let big_up = big_u.to_physical();
    let mut rotated = Vec::with_capacity(big_up.len());
    let mut cubic = Vec::with_capacity(big_up.len());
    for &w in &big_up {
        let n = w.norm_sqr();
        rotated.push(C64::from_polar(1.0, -tau * 3.0 / 8.0 * n) * w);
        cubic.push(n * w);
    }
    let rotated = grid.from_physical(rotated);
    let cubic = grid.from_physical(cubic);

    let theta = theta_from_parts(&big_up, &cubic, m, &ctx.half_prop);

    let cvt = m
        .apply_c_inv(&mono.combine(t_n, c, vartheta_weights(tau, c)))
        .to_physical();
    let q = grid.from_physical(
        up.iter()
            .zip(&cvt)
            .map(|(&w, &g)| 2.0 * w.norm_sqr() * g - w * w * g.conj())
            .collect(),
    );

    let block = oscillatory_block_with(&ctx.tables, t_n, u, &up, &mono, m);

    let (rc, cc, tc, qc, bc) = (
        rotated.coeffs(),
        cubic.coeffs(),
        theta.coeffs(),
        q.coeffs(),
        block.coeffs(),
    );
    let ci = &m.c_inv;
    let cm1 = &m.c_inv_minus_one;
    let tau2 = tau * tau;
    u.map_modes(|j, _| {
        let h = ctx.half_prop[j];
        h * rc[j] - I * (tau * 3.0 / 8.0) * cm1[j] * h * cc[j] + tau2 * tc[j]
            - (tau2 * 3.0 / 64.0) * ci[j] * qc[j]
            - I / 8.0 * ci[j] * bc[j]
    })
}

/// One Lie step of the limit system,
/// `u+ = e^{-i tau Delta/2} e^{-i tau (|u|^2 + 2|v|^2)/8} u` and likewise for `v`.
pub fn step_lie_limit(
    u: &SpectralField,
    v: &SpectralField,
    ctx: &StepContext,
) -> (SpectralField, SpectralField) {
    ctx.check(u);
    let up = u.to_physical();
    let vp = v.to_physical();
    let rotate = |a: &[C64], b: &[C64]| -> SpectralField {
        let vals = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| C64::from_polar(1.0, -ctx.tau * (x.norm_sqr() + 2.0 * y.norm_sqr()) / 8.0) * x)
            .collect();
        apply(&ctx.free, &ctx.grid.from_physical(vals))
    };
    (rotate(&up, &vp), rotate(&vp, &up))
}

/// One Strang step of the limit equation for real data,
/// `u+ = S e^{-i tau 3/8 |S u|^2} S u` with `S = e^{-i tau Delta/4}`.
pub fn step_strang_limit(u: &SpectralField, ctx: &StepContext) -> SpectralField {
    ctx.check(u);
    let w = apply(&ctx.half_free, u);
    let vals = w
        .to_physical()
        .into_iter()
        .map(|x| C64::from_polar(1.0, -ctx.tau * 3.0 / 8.0 * x.norm_sqr()) * x)
        .collect();
    apply(&ctx.half_free, &ctx.grid.from_physical(vals))
}

/// One step of the simplified first-order scheme for `tau c > 1`,
/// `u+ = E(tau) e^{-i tau (|u|^2 + 2|v|^2)/8} u` and likewise for `v`.
pub fn step_largec_uei1(p: &TwistedPair, ctx: &StepContext) -> TwistedPair {
    ctx.check(&p.u_star);
    let up = p.u_star.to_physical();
    let vp = p.v_star.to_physical();
    let rotate = |a: &[C64], b: &[C64]| -> SpectralField {
        let vals = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| C64::from_polar(1.0, -ctx.tau * (x.norm_sqr() + 2.0 * y.norm_sqr()) / 8.0) * x)
            .collect();
        apply(&ctx.prop, &ctx.grid.from_physical(vals))
    };
    TwistedPair {
        u_star: rotate(&up, &vp),
        v_star: rotate(&vp, &up),
        t: p.t + ctx.tau,
        c: p.c,
    }
}

/// One step of `scheme` from `p`; real schemes advance `u_*` and copy it to `v_*`.
pub fn step(scheme: SchemeId, p: &TwistedPair, ctx: &StepContext) -> TwistedPair {
    let t = p.t + ctx.tau;
    let real = |u: SpectralField| TwistedPair::real(u, t, p.c);
    match scheme {
        SchemeId::Uei1 => step_uei1(p, ctx),
        SchemeId::Uei1Real => real(step_uei1_real(&p.u_star, p.t, ctx)),
        SchemeId::Uei2Real => real(step_uei2_real(&p.u_star, p.t, ctx)),
        SchemeId::LieLimit => {
            let (u_star, v_star) = step_lie_limit(&p.u_star, &p.v_star, ctx);
            TwistedPair {
                u_star,
                v_star,
                t,
                c: p.c,
            }
        }
        SchemeId::StrangLimit => real(step_strang_limit(&p.u_star, ctx)),
        SchemeId::LargeCUei1 => step_largec_uei1(p, ctx),
    }
}
