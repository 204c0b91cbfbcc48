use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{KgError, Result};
use crate::model::KgState;
use crate::spectral::{SpectralField, SpectralGrid};

/// `z(0) = cos(3x)^2 sin(2x) / (2 (2 - cos x))`,
/// `z_t(0) = c^2 sin(x) cos(2x) / (2 (2 - cos x))`.
pub fn paper_initial_data(grid: &Arc<SpectralGrid>, c: f64) -> Result<KgState> {
    if grid.dim() != 1 {
        return Err(KgError::UnsupportedDimension(grid.dim()));
    }
    if !(c > 0.0) {
        return Err(KgError::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let z = SpectralField::from_fn(grid, |x| {
        C64::new(0.5 * (3.0 * x).cos().powi(2) * (2.0 * x).sin() / (2.0 - x.cos()), 0.0)
    });
    let zt = SpectralField::from_fn(grid, |x| {
        C64::new(c * c * 0.5 * x.sin() * (2.0 * x).cos() / (2.0 - x.cos()), 0.0)
    });
    KgState::new(z, zt, 0.0)
}
