use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::config::{ErrorVariable, SweepConfig};
use super::data::paper_initial_data;
use super::table::{fit_order, ErrorRow, ErrorTable, FittedOrder};
use crate::error::{KgError, Result};
use crate::integrators::{evolve, reference_solution, ReferenceOptions, SchemeId, StepContext};
use crate::model::{from_kg_state, reconstruct_z, TwistedPair};
use crate::spectral::{MultiplierSet, SpectralGrid};

/// Cells whose error is below this multiple of the reference certificate are
/// left out of order fits.
pub const SATURATION_FACTOR: f64 = 10.0;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "KG_THREADS";

/// Outcome of the reference run for one speed of light.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceRecord {
    pub c: f64,
    /// Self-convergence certificate, or the failure message.
    pub certificate: std::result::Result<f64, String>,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub table: ErrorTable,
    pub references: Vec<ReferenceRecord>,
}

/// A worker pool sized by `KG_THREADS` when set to a positive integer.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| KgError::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| KgError::Config(e.to_string()))
}

struct Prepared {
    c: f64,
    m: Arc<MultiplierSet>,
    start: TwistedPair,
    reference: std::result::Result<(TwistedPair, f64), String>,
}

/// Runs the sweep and returns the error table.
pub fn run_sweep(cfg: &SweepConfig) -> Result<ErrorTable> {
    Ok(run_sweep_report(cfg)?.table)
}

/// Runs the sweep and returns the table together with the reference records.
pub fn run_sweep_report(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let pool = thread_pool()?;
    pool.install(|| sweep_inner(cfg))
}

fn sweep_inner(cfg: &SweepConfig) -> Result<SweepReport> {
    if cfg.schemes.is_empty() || cfg.c_list.is_empty() {
        return Ok(SweepReport {
            table: ErrorTable::default(),
            references: Vec::new(),
        });
    }
    let grid = Arc::new(SpectralGrid::new(1, cfg.modes)?.with_dealiasing(cfg.dealias));
    let opts = ReferenceOptions {
        exponent: cfg.reference_exponent,
        tolerance: cfg.reference_tolerance,
    };

    let mut schemes = cfg.schemes.clone();
    schemes.sort();
    schemes.dedup();
    let mut c_list = cfg.c_list.clone();
    c_list.sort_by(f64::total_cmp);
    c_list.dedup();

    let prepared: Vec<Prepared> = c_list
        .par_iter()
        .map(|&c| -> Result<Prepared> {
            let m = Arc::new(MultiplierSet::new(&grid, c)?);
            let s0 = paper_initial_data(&grid, c)?;
            let start = from_kg_state(&s0, &m)?;
            let reference = match reference_solution(&s0, cfg.horizon, &m, &opts) {
                Ok(r) => Ok((r.pair, r.certificate)),
                Err(e @ KgError::ReferenceUnreliable { .. }) => Err(e.to_string()),
                Err(e) => return Err(e),
            };
            Ok(Prepared {
                c,
                m,
                start,
                reference,
            })
        })
        .collect::<Result<_>>()?;

    let taus = cfg.taus();
    let mut cells: Vec<(SchemeId, usize, f64)> = Vec::new();
    for &s in &schemes {
        for i in 0..prepared.len() {
            cells.extend(taus.iter().map(|&t| (s, i, t)));
        }
    }

    let rows: Vec<ErrorRow> = cells
        .par_iter()
        .map(|&(scheme, i, tau)| run_cell(cfg, &prepared[i], scheme, tau))
        .collect();

    let mut table = ErrorTable {
        rows,
        fitted_orders: Vec::new(),
    };
    for &scheme in &schemes {
        for p in &prepared {
            let Ok((_, cert)) = &p.reference else { continue };
            let points: Vec<(f64, f64)> = table
                .series(scheme, p.c)
                .iter()
                .filter(|r| !r.is_failed() && r.err >= SATURATION_FACTOR * cert)
                .map(|r| (r.tau, r.err))
                .collect();
            if let Ok(order) = fit_order(&points) {
                table.fitted_orders.push(FittedOrder {
                    scheme,
                    c: p.c,
                    order,
                    points: points.len(),
                });
            }
        }
    }
    table.normalize();
    let references = prepared
        .iter()
        .map(|p| ReferenceRecord {
            c: p.c,
            certificate: p.reference.as_ref().map(|r| r.1).map_err(Clone::clone),
        })
        .collect();
    Ok(SweepReport { table, references })
}

fn run_cell(cfg: &SweepConfig, p: &Prepared, scheme: SchemeId, tau: f64) -> ErrorRow {
    let Ok((reference, _)) = &p.reference else {
        return ErrorRow::failed(scheme, p.c, tau);
    };
    let clock = Instant::now();
    let result = StepContext::new(Arc::clone(&p.m), tau, cfg.r)
        .and_then(|ctx| evolve(scheme, &p.start, cfg.horizon, &ctx, None));
    let wall_time = clock.elapsed().as_secs_f64();
    let Ok(end) = result else {
        return ErrorRow::failed(scheme, p.c, tau);
    };
    let err = match cfg.error_variable {
        ErrorVariable::Z => reconstruct_z(&end).distance(&reconstruct_z(reference), cfg.r),
        ErrorVariable::Twisted => end.u_star.distance(&reference.u_star, cfg.r),
    };
    ErrorRow {
        scheme,
        c: p.c,
        tau,
        err: if err.is_finite() { err } else { f64::NAN },
        wall_time,
    }
}
