//! The verification suite behind `kg-uniform verify` and the acceptance test.
//!
//! Every check returns a [`CheckOutcome`] with a one-line summary; none of
//! them panics on a failed property.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::harness::{paper_initial_data, ErrorTable, SweepConfig, DESK_C_LIST, DESK_MODES};
use crate::integrators::{
    duhamel_oracle_step, evolve, step, step_strang_limit, step_uei1, step_uei1_real, step_uei2_real, SchemeId,
    StepContext,
};
use crate::kernels::{kernel_omega, kernel_psi, oscillatory_block, OMEGA_INDICES};
use crate::model::{energy, from_first_order, from_kg_state, to_first_order, to_kg_state, twist, untwist, KgState, TwistedPair};
use crate::phase::oscillation;
use crate::phi::phi_moment;
use crate::quadrature::GaussLegendre;
use crate::spectral::{MultiplierSet, SpectralField, SpectralGrid};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Result of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    fn error(name: &str, e: KgError) -> Self {
        Self::new(name, false, format!("error: {e}"))
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Thresholds of the suite. Every field can be overridden from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub first_order_band: (f64, f64),
    pub second_order_band: (f64, f64),
    /// Largest ratio of error constants across `c`.
    pub uniformity: f64,
    pub local_slope_first: f64,
    pub local_slope_second: f64,
    pub block_slope: f64,
    /// Largest log-log slope of the distance to the limit schemes in `c`.
    pub limit_slope: f64,
    pub omega_quadrature: f64,
    pub energy_drift: f64,
    pub round_trip: f64,
    pub symmetry: f64,
    pub operator_samples: usize,
    pub seed: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            first_order_band: (0.85, 1.15),
            second_order_band: (1.8, 2.2),
            uniformity: 10.0,
            local_slope_first: 1.8,
            local_slope_second: 2.7,
            block_slope: 2.7,
            limit_slope: -0.8,
            omega_quadrature: 1e-10,
            energy_drift: 1e-6,
            round_trip: 1e-12,
            symmetry: 1e-11,
            operator_samples: 100,
            seed: 20170601,
        }
    }
}

impl Tolerances {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| KgError::Config(e.to_string()))
    }
}

fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Slope of `log err` against `log tau`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    ls_slope(&x, &y)
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ")
}

/// The acceptance sweep: first- and second-order schemes at desk scale.
pub fn acceptance_sweep_config() -> SweepConfig {
    SweepConfig {
        schemes: vec![SchemeId::Uei1Real, SchemeId::Uei2Real],
        c_list: DESK_C_LIST.to_vec(),
        modes: DESK_MODES,
        ..SweepConfig::default()
    }
}

/// Fitted orders inside `band` for every `c` of the table, and error
/// constants `max_tau err / tau^p` within a factor `uniformity` across `c`.
/// A missing fit fails only when `require_fit` is set.
pub fn uniform_convergence(
    name: &str,
    table: &ErrorTable,
    scheme: SchemeId,
    band: (f64, f64),
    uniformity: f64,
    require_fit: bool,
) -> CheckOutcome {
    let mut cs: Vec<f64> = table.rows.iter().filter(|r| r.scheme == scheme).map(|r| r.c).collect();
    cs.sort_by(f64::total_cmp);
    cs.dedup();
    if cs.is_empty() {
        return CheckOutcome::new(name, false, format!("no cells for {scheme}"));
    }
    let p = scheme.order() as i32;
    let mut orders = Vec::new();
    let mut constants = Vec::new();
    let mut problems = Vec::new();
    for &c in &cs {
        let series = table.series(scheme, c);
        if series.iter().any(|r| r.is_failed()) {
            problems.push(format!("c={c}: failed cells"));
        }
        match table.order(scheme, c) {
            Some(o) => {
                if !(o >= band.0 && o <= band.1) {
                    problems.push(format!("c={c}: order {o:.3}"));
                }
                orders.push(o);
            }
            None => {
                if require_fit {
                    problems.push(format!("c={c}: no fit"));
                }
                orders.push(f64::NAN);
            }
        }
        let k = series
            .iter()
            .filter(|r| !r.is_failed())
            .map(|r| r.err / r.tau.powi(p))
            .fold(0.0, f64::max);
        constants.push(k);
    }
    let kmax = constants.iter().cloned().fold(0.0, f64::max);
    let kmin = constants.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = kmax / kmin;
    if !(spread <= uniformity) {
        problems.push(format!("error constants spread {spread:.2}"));
    }
    let detail = format!(
        "{scheme} orders [{}] in [{}, {}], constants spread {spread:.2} (limit {uniformity}){}",
        fmt_list(&orders),
        band.0,
        band.1,
        if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
    );
    CheckOutcome::new(name, problems.is_empty(), detail)
}

/// Single-step defects of the first- and second-order schemes against the
/// Duhamel oracle on the standard initial data, `tau = 2^{-6} .. 2^{-12}`.
pub fn local_defects(name: &str, modes: usize, cs: &[f64], tol: &Tolerances) -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let grid = crate::make_grid(1, modes)?;
        let mut ok = true;
        let mut parts = Vec::new();
        for &c in cs {
            let m = Arc::new(MultiplierSet::new(&grid, c)?);
            let u = from_kg_state(&paper_initial_data(&grid, c)?, &m)?.u_star;
            let mut d1 = Vec::new();
            let mut d2 = Vec::new();
            for e in 6..=12 {
                let tau = 2f64.powi(-e);
                let ctx = StepContext::new(Arc::clone(&m), tau, 1.0)?;
                let exact = duhamel_oracle_step(&u, 0.0, &ctx, 16)?;
                d1.push((tau, step_uei1_real(&u, 0.0, &ctx).distance(&exact, 1.0)));
                d2.push((tau, step_uei2_real(&u, 0.0, &ctx).distance(&exact, 1.0)));
            }
            let (s1, s2) = (loglog_slope(&d1), loglog_slope(&d2));
            ok &= s1 >= tol.local_slope_first && s2 >= tol.local_slope_second;
            parts.push(format!("c={c}: first {s1:.2}, second {s2:.2}"));
        }
        Ok((
            ok,
            format!(
                "{} (need >= {} and >= {})",
                parts.join("; "),
                tol.local_slope_first,
                tol.local_slope_second
            ),
        ))
    };
    match run() {
        Ok((ok, d)) => CheckOutcome::new(name, ok, d),
        Err(e) => CheckOutcome::error(name, e),
    }
}

/// Distance at `T` between the first-order scheme and the Lie limit scheme,
/// and between the second-order scheme and the Strang limit scheme, as `c`
/// grows at fixed `tau`.
pub fn limit_proximity(name: &str, modes: usize, cs: &[f64], tau: f64, horizon: f64, tol: &Tolerances) -> CheckOutcome {
    let run = || -> Result<(Vec<f64>, Vec<f64>)> {
        let grid = crate::make_grid(1, modes)?;
        let mut lie = Vec::new();
        let mut strang = Vec::new();
        for &c in cs {
            let m = Arc::new(MultiplierSet::new(&grid, c)?);
            let p = from_kg_state(&paper_initial_data(&grid, c)?, &m)?;
            let ctx = StepContext::new(m, tau, 1.0)?;
            let dist = |a: SchemeId, b: SchemeId| -> Result<f64> {
                let x = evolve(a, &p, horizon, &ctx, None)?;
                let y = evolve(b, &p, horizon, &ctx, None)?;
                Ok(x.u_star.distance(&y.u_star, 1.0))
            };
            lie.push(dist(SchemeId::Uei1, SchemeId::LieLimit)?);
            strang.push(dist(SchemeId::Uei2Real, SchemeId::StrangLimit)?);
        }
        Ok((lie, strang))
    };
    match run() {
        Ok((lie, strang)) => {
            let lc: Vec<f64> = cs.iter().map(|c| c.ln()).collect();
            let sl = ls_slope(&lc, &lie.iter().map(|d| d.ln()).collect::<Vec<_>>());
            let ss = ls_slope(&lc, &strang.iter().map(|d| d.ln()).collect::<Vec<_>>());
            let ok = sl <= tol.limit_slope && ss <= tol.limit_slope;
            CheckOutcome::new(
                name,
                ok,
                format!(
                    "slope in c: first-order vs Lie {sl:.2}, second-order vs Strang {ss:.2} (need <= {})",
                    tol.limit_slope
                ),
            )
        }
        Err(e) => CheckOutcome::error(name, e),
    }
}

/// A random field with coefficients decaying like `(1 + |k|)^{-3}`.
pub fn random_field(grid: &Arc<SpectralGrid>, rng: &mut impl Rng) -> SpectralField {
    let coeffs = grid
        .wavenumbers()
        .iter()
        .map(|&k| {
            let amp = (1.0 + k.abs() as f64).powi(-3);
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * amp
        })
        .collect();
    SpectralField::from_coeffs(grid, coeffs).expect("length matches grid")
}

/// Operator bounds on random fields, for every `c` in `cs`:
///
/// * `||A_c f||_r <= ||f||_{r+2} / 2`,
/// * `||e^{i t A_c} f||_r = ||f||_r`,
/// * `||c <nabla>_c^{-1} f||_r <= ||f||_r`,
/// * `||(e^{i t A_c} - 1) f||_r <= |t| ||f||_{r+2} / 2`,
/// * `||tau^2 mu(i tau (delta c^2 - A_c)) (v A_c w)||_r <= K tau ||v||_r ||w||_r`
///   for the resonant and both non-resonant symbols, with `K` the largest ratio
///   at the smallest `c` times the uniformity factor.
pub fn operator_properties(name: &str, modes: usize, cs: &[f64], tol: &Tolerances) -> CheckOutcome {
    let grid = match crate::make_grid(1, modes) {
        Ok(g) => g,
        Err(e) => return CheckOutcome::error(name, e),
    };
    let r = 1.0;
    let tau = 0.01;
    let mut violations = Vec::new();
    let mut ratios: Vec<f64> = Vec::new();
    for &c in cs {
        let m = match MultiplierSet::new(&grid, c) {
            Ok(m) => m,
            Err(e) => return CheckOutcome::error(name, e),
        };
        // same fields for every c
        let mut rng = ChaCha8Rng::seed_from_u64(tol.seed);
        let symbols = [
            m.resonant_symbol(tau),
            m.shifted_symbol(tau, -2.0),
            m.shifted_symbol(tau, -4.0),
        ]
        .map(|s| s.into_iter().map(|z| tau * tau * phi_moment(z)).collect::<Vec<C64>>());
        let mut worst: f64 = 0.0;
        for _ in 0..tol.operator_samples {
            let f = random_field(&grid, &mut rng);
            let g = random_field(&grid, &mut rng);
            let t = rng.gen_range(-10.0..10.0);
            let n_r = f.sobolev_norm(r);
            let n_r2 = f.sobolev_norm(r + 2.0);
            let a = m.apply_a(&f).sobolev_norm(r);
            if a > 0.5 * n_r2 + 1e-10 {
                violations.push(format!("c={c}: A_c bound {a:e} > {:e}", 0.5 * n_r2));
            }
            let e = m.exp_a(t, &f);
            if (e.sobolev_norm(r) - n_r).abs() > 1e-12 * n_r {
                violations.push(format!("c={c}: isometry"));
            }
            if m.apply_c_inv(&f).sobolev_norm(r) > n_r + 1e-12 {
                violations.push(format!("c={c}: C bound"));
            }
            let d = (&e - &f).sobolev_norm(r);
            if d > 0.5 * t.abs() * n_r2 + 1e-10 {
                violations.push(format!("c={c}: propagator difference bound"));
            }
            let prod = f.grid().from_physical(
                f.to_physical()
                    .iter()
                    .zip(m.apply_a(&g).to_physical())
                    .map(|(&x, y)| x * y)
                    .collect(),
            );
            let scale = tau * n_r * g.sobolev_norm(r);
            for s in &symbols {
                let lhs = prod.apply_complex_symbol(s).expect("symbol length").sobolev_norm(r);
                worst = worst.max(lhs / scale);
            }
        }
        ratios.push(worst);
    }
    let allowed = tol.uniformity * ratios[0];
    if let Some((c, q)) = cs.iter().zip(&ratios).find(|(_, &q)| q > allowed) {
        violations.push(format!("c={c}: stability ratio {q:.3} > {allowed:.3}"));
    }
    violations.dedup();
    let detail = format!(
        "{} samples x {} speeds, stability ratios [{}]{}",
        tol.operator_samples,
        cs.len(),
        fmt_list(&ratios),
        if violations.is_empty() {
            String::new()
        } else {
            format!("; {}", violations.iter().take(4).cloned().collect::<Vec<_>>().join("; "))
        }
    );
    CheckOutcome::new(name, violations.is_empty(), detail)
}

/// `(1/tau^2) int_0^tau e^{i l c^2 s} Psi(t_n, s, v) ds` by Gauss-Legendre.
pub fn omega_by_quadrature(t_n: f64, tau: f64, v: &SpectralField, c: f64, l: i32, nodes: usize) -> Result<SpectralField> {
    let rule = GaussLegendre::new(nodes)?;
    let (s, w) = rule.on_interval(0.0, tau);
    let mut acc = SpectralField::zeros(v.grid());
    for (&si, &wi) in s.iter().zip(&w) {
        let e = C64::from_polar(wi / (tau * tau), l as f64 * c * c * si);
        acc = acc.axpy(e, &kernel_psi(t_n, si, v, c));
    }
    Ok(acc)
}

/// The oscillatory part of the Duhamel integral,
///
/// ```text
/// int_0^tau E(tau - s)[e_2 w^3 + 3 e_{-2} |w|^2 conj(w) + e_{-4} conj(w)^3](s) ds,
/// w(s) = E(s) u - i/8 C (3 s |u|^2 u + Psi(t_n, s, u)),
/// ```
///
/// by composite Gauss-Legendre quadrature with panels resolving `e^{4 i c^2 s}`.
pub fn block_by_quadrature(tau: f64, t_n: f64, u: &SpectralField, m: &MultiplierSet, nodes: usize) -> Result<SpectralField> {
    let c = m.c();
    let rule = GaussLegendre::new(nodes)?;
    let panels = ((4.0 * c * c * tau / 2.0).ceil() as usize).max(1);
    let h = tau / panels as f64;
    let cubic = u.map_physical(|x| x.norm_sqr() * x);
    let mut acc = SpectralField::zeros(u.grid());
    for p in 0..panels {
        let (s, w) = rule.on_interval(p as f64 * h, (p + 1) as f64 * h);
        for (&si, &wi) in s.iter().zip(&w) {
            let corr = cubic.scale(C64::new(3.0 * si, 0.0)) + kernel_psi(t_n, si, u, c);
            let ws = m.exp_a(si, u) - m.apply_c_inv(&corr).scale(I / 8.0);
            let (e2, em2, em4) = (
                oscillation(2, c, t_n + si),
                oscillation(-2, c, t_n + si),
                oscillation(-4, c, t_n + si),
            );
            let g = ws.map_physical(|x| {
                let xb = x.conj();
                e2 * x * x * x + 3.0 * em2 * x.norm_sqr() * xb + em4 * xb * xb * xb
            });
            acc = acc.axpy(C64::new(wi, 0.0), &m.exp_a(tau - si, &g));
        }
    }
    Ok(acc)
}

/// `kernel_omega` against quadrature of its defining integral, and the
/// oscillatory block against quadrature of the expanded Duhamel integral.
pub fn kernel_quadrature(name: &str, tol: &Tolerances) -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let grid = crate::make_grid(1, 32)?;
        let v = paper_initial_data(&grid, 1.0)?.z;
        let mut worst: f64 = 0.0;
        for c in [1.0, 10.0] {
            for l in OMEGA_INDICES {
                let got = kernel_omega(0.0123, 0.01, &v, c, l)?;
                let q = omega_by_quadrature(0.0123, 0.01, &v, c, l, 64)?;
                worst = worst.max(got.distance(&q, 1.0));
            }
        }
        let c = 10.0;
        let m = MultiplierSet::new(&grid, c)?;
        let u = from_kg_state(&paper_initial_data(&grid, c)?, &m)?.u_star;
        let mut pts = Vec::new();
        for e in 6..=12 {
            let tau = 2f64.powi(-e);
            let d = oscillatory_block(tau, 0.0123, &u, &m).distance(&block_by_quadrature(tau, 0.0123, &u, &m, 64)?, 1.0);
            pts.push((tau, d));
        }
        let slope = loglog_slope(&pts);
        let ok = worst <= tol.omega_quadrature && slope >= tol.block_slope;
        Ok((
            ok,
            format!(
                "Omega vs quadrature {worst:.2e} (limit {:e}); block vs quadrature slope {slope:.2} (need >= {})",
                tol.omega_quadrature, tol.block_slope
            ),
        ))
    };
    match run() {
        Ok((ok, d)) => CheckOutcome::new(name, ok, d),
        Err(e) => CheckOutcome::error(name, e),
    }
}

/// Largest relative energy change along a second-order trajectory.
pub fn energy_drift(modes: usize, c: f64, tau: f64, horizon: f64) -> Result<f64> {
    let grid = crate::make_grid(1, modes)?;
    let m = Arc::new(MultiplierSet::new(&grid, c)?);
    let s0 = paper_initial_data(&grid, c)?;
    let e0 = energy(&s0, &m)?;
    let p = from_kg_state(&s0, &m)?;
    let ctx = StepContext::new(Arc::clone(&m), tau, 1.0)?;
    let mut worst: f64 = 0.0;
    let mut failure = None;
    let mut obs = |_: usize, q: &TwistedPair| {
        if failure.is_some() {
            return;
        }
        match to_kg_state(q, &m).and_then(|s| energy(&s, &m)) {
            Ok(e) => worst = worst.max((e - e0).abs() / e0.abs()),
            Err(err) => failure = Some(err),
        }
    };
    evolve(SchemeId::Uei2Real, &p, horizon, &ctx, Some(&mut obs))?;
    match failure {
        Some(e) => Err(e),
        None => Ok(worst),
    }
}

pub fn conservation(name: &str, modes: usize, tol: &Tolerances) -> CheckOutcome {
    match energy_drift(modes, 1.0, 1e-5, 0.1) {
        Ok(d) => CheckOutcome::new(
            name,
            d <= tol.energy_drift,
            format!("relative energy drift {d:.2e} over T = 0.1 at c = 1, tau = 1e-5 (limit {:e})", tol.energy_drift),
        ),
        Err(e) => CheckOutcome::error(name, e),
    }
}

/// `z <-> (u, v) <-> (u_*, v_*)` round trips on random real data, and
/// `u_* = v_*` along first-order trajectories of the standard initial data.
pub fn round_trip_symmetry(name: &str, modes: usize, cs: &[f64], tol: &Tolerances) -> CheckOutcome {
    let run = || -> Result<(f64, f64)> {
        let grid = crate::make_grid(1, modes)?;
        let mut rng = ChaCha8Rng::seed_from_u64(tol.seed ^ 0x5eed);
        let mut trip: f64 = 0.0;
        let mut asym: f64 = 0.0;
        for &c in cs {
            let m = Arc::new(MultiplierSet::new(&grid, c)?);
            for _ in 0..10 {
                let z = random_field(&grid, &mut rng).map_physical(|x| C64::new(x.re, 0.0));
                let zt = random_field(&grid, &mut rng).map_physical(|x| C64::new(x.re * c * c, 0.0));
                let t = rng.gen_range(0.0..0.1);
                let s = KgState::new(z, zt, t)?;
                let (u, v) = to_first_order(&s, &m)?;
                let p = twist(&u, &v, t, c);
                let (u2, v2) = untwist(&p);
                let back = from_first_order(&u2, &v2, &m, t)?;
                trip = trip
                    .max(back.z.distance(&s.z, 1.0) / s.z.sobolev_norm(1.0))
                    .max(back.zt.distance(&s.zt, 1.0) / s.zt.sobolev_norm(1.0));
            }
            let mut p = from_kg_state(&paper_initial_data(&grid, c)?, &m)?;
            let ctx = StepContext::new(Arc::clone(&m), 0.1 / 1024.0, 1.0)?;
            for _ in 0..1024 {
                p = step_uei1(&p, &ctx);
                asym = asym.max(p.asymmetry());
            }
        }
        Ok((trip, asym))
    };
    match run() {
        Ok((trip, asym)) => CheckOutcome::new(
            name,
            trip <= tol.round_trip && asym <= tol.symmetry,
            format!(
                "round trip {trip:.2e} (limit {:e}), max |u_* - v_*| {asym:.2e} (limit {:e})",
                tol.round_trip, tol.symmetry
            ),
        ),
        Err(e) => CheckOutcome::error(name, e),
    }
}

/// One step of each scheme differs from the Strang limit step by `O(1/c)`.
pub fn strang_step_proximity(modes: usize, cs: &[f64], tau: f64) -> Result<f64> {
    let grid = crate::make_grid(1, modes)?;
    let mut pts = Vec::new();
    for &c in cs {
        let m = Arc::new(MultiplierSet::new(&grid, c)?);
        let p = from_kg_state(&paper_initial_data(&grid, c)?, &m)?;
        let ctx = StepContext::new(m, tau, 1.0)?;
        let a = step(SchemeId::Uei2Real, &p, &ctx).u_star;
        let b = step_strang_limit(&p.u_star, &ctx);
        pts.push((c, a.distance(&b, 1.0)));
    }
    Ok(loglog_slope(&pts))
}

/// All eight acceptance criteria in order.
pub fn acceptance_suite(tol: &Tolerances) -> Vec<CheckOutcome> {
    let sweep = crate::harness::run_sweep(&acceptance_sweep_config());
    let mut out = Vec::new();
    match &sweep {
        Ok(table) => {
            out.push(uniform_convergence(
                "uniform first order",
                table,
                SchemeId::Uei1Real,
                tol.first_order_band,
                tol.uniformity,
                true,
            ));
            out.push(uniform_convergence(
                "uniform second order",
                table,
                SchemeId::Uei2Real,
                tol.second_order_band,
                tol.uniformity,
                true,
            ));
        }
        Err(e) => {
            out.push(CheckOutcome::new("uniform first order", false, format!("sweep failed: {e}")));
            out.push(CheckOutcome::new("uniform second order", false, format!("sweep failed: {e}")));
        }
    }
    out.push(local_defects("local defect vs oracle", 64, &[1.0, 100.0], tol));
    out.push(limit_proximity("limit-scheme proximity", DESK_MODES, &[100.0, 1000.0, 10000.0], 0.01, 0.1, tol));
    out.push(operator_properties("operator properties", 32, &[1.0, 10.0, 100.0, 10000.0], tol));
    out.push(kernel_quadrature("kernels vs quadrature", tol));
    out.push(conservation("energy conservation", DESK_MODES, tol));
    out.push(round_trip_symmetry("round trip and symmetry", DESK_MODES, &DESK_C_LIST, tol));
    out
}

/// Schemes whose sweep cells are held to the uniform-order criteria.
pub fn is_acceptance_scheme(s: SchemeId) -> bool {
    matches!(s, SchemeId::Uei1 | SchemeId::Uei1Real | SchemeId::Uei2Real)
}

/// Uniform-order verdicts for the acceptance schemes present in a sweep table.
pub fn sweep_verdict(table: &ErrorTable, tol: &Tolerances) -> Vec<CheckOutcome> {
    let mut schemes: Vec<SchemeId> = table.rows.iter().map(|r| r.scheme).filter(|&s| is_acceptance_scheme(s)).collect();
    schemes.sort();
    schemes.dedup();
    schemes
        .into_iter()
        .map(|s| {
            let band = if s.order() == 1 { tol.first_order_band } else { tol.second_order_band };
            uniform_convergence(&format!("uniform order {s}"), table, s, band, tol.uniformity, false)
        })
        .collect()
}
