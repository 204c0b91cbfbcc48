//! Brute-force discretisation of the Duhamel formula for real data,
//!
//! ```text
//! u(s) = E(s) [ u_0 - i/8 C int_0^s h(sigma) d sigma ],
//! h(sigma) = E(-sigma) G(t_n + sigma, u(sigma)),
//! G(t, w) = e_2 w^3 + 3 |w|^2 w + 3 e_{-2} |w|^2 conj w + e_{-4} conj(w)^3.
//! ```
//!
//! `[0, tau]` is cut into panels short enough that the fastest phase in `h`
//! turns by at most `panel_phase` radians across one panel. Each panel carries
//! a Gauss-Legendre rule; the unknown `u` at its nodes is obtained by Picard
//! sweeps, marching panel by panel.

use num_complex::Complex64 as C64;

use super::{StepContext, I};
use crate::error::{KgError, Result};
use crate::phase::oscillation;
use crate::quadrature::GaussLegendre;
use crate::spectral::SpectralField;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Gauss-Legendre nodes per panel, at least 16.
    pub nodes: usize,
    /// Picard sweeps per panel.
    pub sweeps: usize,
    /// Largest phase increment of `h` across one panel.
    pub panel_phase: f64,
    /// With `false` the integrand vanishes and the oracle is `E(tau) u`.
    pub nonlinear: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            nodes: 16,
            sweeps: 3,
            panel_phase: 2.0,
            nonlinear: true,
        }
    }
}

/// [`duhamel_oracle_step_with`] with default options and the given node count.
pub fn duhamel_oracle_step(
    u: &SpectralField,
    t_n: f64,
    ctx: &StepContext,
    nodes: usize,
) -> Result<SpectralField> {
    let opts = OracleOptions {
        nodes,
        ..OracleOptions::default()
    };
    duhamel_oracle_step_with(u, t_n, ctx, &opts)
}

/// Approximates the exact twisted solution `u_*(t_n + tau)` from `u_*(t_n) = u`.
pub fn duhamel_oracle_step_with(
    u: &SpectralField,
    t_n: f64,
    ctx: &StepContext,
    opts: &OracleOptions,
) -> Result<SpectralField> {
    if opts.nodes < 16 {
        return Err(KgError::InvalidParameter(format!(
            "oracle needs at least 16 nodes per panel, got {}",
            opts.nodes
        )));
    }
    if !(opts.panel_phase > 0.0) {
        return Err(KgError::InvalidParameter("panel phase must be positive".into()));
    }
    let tau = ctx.tau;
    let m = &*ctx.m;
    if !opts.nonlinear {
        return Ok(m.exp_a(tau, u));
    }
    let c = m.c();
    let a_max = m.a_c.iter().cloned().fold(0.0, f64::max);
    let omega = 4.0 * c * c + 4.0 * a_max;
    let panels = ((omega * tau / opts.panel_phase).ceil() as usize).max(1);
    let width = tau / panels as f64;

    let rule = GaussLegendre::new(opts.nodes)?;
    let cumulative = rule.cumulative_matrix();
    let n = rule.len();
    let grid = &ctx.grid;
    let ci = &m.c_inv;

    // u(s) = E(s)[u0 - i/8 C H(s)]
    let state_at = |s: f64, h_int: &SpectralField| -> SpectralField {
        let w = u.map_modes(|j, x| x - I / 8.0 * ci[j] * h_int.coeffs()[j]);
        m.exp_a(s, &w)
    };
    let integrand = |s: f64, w: &SpectralField| -> SpectralField {
        let t = t_n + s;
        let e2 = oscillation(2, c, t);
        let em2 = oscillation(-2, c, t);
        let em4 = oscillation(-4, c, t);
        let g = w
            .to_physical()
            .into_iter()
            .map(|x| {
                let xb = x.conj();
                let n2 = x.norm_sqr();
                e2 * x * x * x + 3.0 * n2 * x + 3.0 * em2 * n2 * xb + em4 * xb * xb * xb
            })
            .collect();
        m.exp_a(-s, &grid.from_physical(g))
    };

    // running int_0^{panel start} h
    let mut done = SpectralField::zeros(grid);
    for p in 0..panels {
        let a = p as f64 * width;
        let (s_nodes, weights) = rule.on_interval(a, a + width);
        let half = 0.5 * width;
        let mut h: Vec<SpectralField> = s_nodes.iter().map(|&s| integrand(s, &state_at(s, &done))).collect();
        for _ in 0..opts.sweeps {
            h = (0..n)
                .map(|j| {
                    let mut partial = done.clone();
                    for (mm, hm) in h.iter().enumerate() {
                        partial = partial.axpy(C64::new(half * cumulative[j][mm], 0.0), hm);
                    }
                    integrand(s_nodes[j], &state_at(s_nodes[j], &partial))
                })
                .collect();
        }
        for (w, hm) in weights.iter().zip(&h) {
            done = done.axpy(C64::new(*w, 0.0), hm);
        }
    }
    Ok(state_at(tau, &done))
}
