use std::sync::Arc;

use super::{step, SchemeId, StepContext};
use crate::error::{KgError, Result};
use crate::model::{from_kg_state, reconstruct_z, KgState, TwistedPair};
use crate::spectral::MultiplierSet;

/// Callback receiving the step number and the state after that step.
pub type Observer<'a> = &'a mut dyn FnMut(usize, &TwistedPair);

/// `T / tau` as an integer, or an error if it is not one.
pub fn step_count(horizon: f64, tau: f64) -> Result<usize> {
    if !(horizon >= 0.0) || !horizon.is_finite() {
        return Err(KgError::InvalidParameter(format!(
            "horizon must be nonnegative, got {horizon}"
        )));
    }
    let ratio = horizon / tau;
    let n = ratio.round();
    if (ratio - n).abs() > 1e-9 * n.max(1.0) {
        return Err(KgError::InvalidParameter(format!(
            "horizon {horizon} is not an integer multiple of tau = {tau}"
        )));
    }
    Ok(n as usize)
}

/// Advances `p` by `horizon` with steps of `ctx.tau`.
///
/// Step `n` starts at `p.t + n tau`, formed by multiplication rather than
/// accumulation. `observer` sees the state after every step together with
/// the step number.
pub fn evolve(
    scheme: SchemeId,
    p: &TwistedPair,
    horizon: f64,
    ctx: &StepContext,
    mut observer: Option<Observer<'_>>,
) -> Result<TwistedPair> {
    let steps = step_count(horizon, ctx.tau)?;
    let t0 = p.t;
    let mut state = p.clone();
    if scheme.is_real() {
        state.v_star = state.u_star.clone();
    }
    for n in 0..steps {
        state.t = t0 + n as f64 * ctx.tau;
        state = step(scheme, &state, ctx);
        state.t = t0 + (n + 1) as f64 * ctx.tau;
        if let Some(obs) = observer.as_mut() {
            obs(n + 1, &state);
        }
    }
    Ok(state)
}

#[derive(Clone, Debug)]
pub struct ReferenceOptions {
    /// `tau_ref = T 2^{-exponent}`.
    pub exponent: u32,
    /// Largest accepted `||z(tau_ref) - z(2 tau_ref)||_1` at `T`.
    pub tolerance: f64,
}

impl Default for ReferenceOptions {
    fn default() -> Self {
        Self {
            exponent: 16,
            tolerance: 1e-9,
        }
    }
}

/// A fine-step second-order solution with its self-convergence certificate.
#[derive(Clone, Debug)]
pub struct ReferenceSolution {
    pub pair: TwistedPair,
    pub tau: f64,
    /// `||z(tau) - z(2 tau)||_1` at the final time.
    pub certificate: f64,
}

/// Runs the second-order scheme from `s0` to `s0.t + horizon` with
/// `tau = horizon 2^{-exponent}` and again with `2 tau`, and certifies the
/// fine run by the H^1 distance of the reconstructed `z`.
pub fn reference_solution(
    s0: &KgState,
    horizon: f64,
    m: &Arc<MultiplierSet>,
    opts: &ReferenceOptions,
) -> Result<ReferenceSolution> {
    if !(horizon > 0.0) {
        return Err(KgError::InvalidParameter(format!(
            "reference horizon must be positive, got {horizon}"
        )));
    }
    if opts.exponent == 0 {
        return Err(KgError::InvalidParameter("reference exponent must be positive".into()));
    }
    let p0 = from_kg_state(s0, m)?;
    let tau = horizon / 2f64.powi(opts.exponent as i32);
    let fine_ctx = StepContext::new(Arc::clone(m), tau, 1.0)?;
    let coarse_ctx = fine_ctx.with_tau(2.0 * tau)?;
    let (fine, coarse) = rayon::join(
        || evolve(SchemeId::Uei2Real, &p0, horizon, &fine_ctx, None),
        || evolve(SchemeId::Uei2Real, &p0, horizon, &coarse_ctx, None),
    );
    let (fine, coarse) = (fine?, coarse?);
    let certificate = reconstruct_z(&fine).distance(&reconstruct_z(&coarse), 1.0);
    if !(certificate <= opts.tolerance) {
        return Err(KgError::ReferenceUnreliable {
            certificate,
            tolerance: opts.tolerance,
        });
    }
    Ok(ReferenceSolution {
        pair: fine,
        tau,
        certificate,
    })
}
