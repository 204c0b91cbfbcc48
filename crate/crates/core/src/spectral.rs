//! Periodic Fourier grid on the torus `[0, 2pi)`, spectral fields and the
//! diagonal Fourier multipliers of the Klein-Gordon operator.
//!
//! # Conventions
//!
//! * `make_grid(1, K)` has `2K` equispaced nodes `x_j = 2 pi j / (2K)` and
//!   carries the wavenumbers `-K, ..., K-1`. Coefficient index `j` holds
//!   wavenumber `j` for `j < K` and `j - 2K` otherwise (standard FFT order).
//!   The mesh width is `pi / K`; the `K = 2^10` experiment grid with
//!   `dx = 0.0061` is therefore `make_grid(1, 512)`.
//! * Coefficients are normalised as `u(x) = sum_k u_k e^{ikx}`, i.e.
//!   `u_k = (1/2K) sum_j u(x_j) e^{-ikx_j}`, so the constant `1` has
//!   `u_0 = 1` and `||1||_r = 1`.
//! * Conjugation acts in physical space. On coefficients it is
//!   `conj(u)_k = conj(u_{-k})`, with the mode `-K` mapped to itself.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::error::{KgError, Result};
use crate::phi;

#[derive(Clone)]
struct FftPair {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl FftPair {
    fn new(planner: &mut FftPlanner<f64>, len: usize) -> Self {
        Self {
            len,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        }
    }
}

/// A one-dimensional periodic Fourier grid.
#[derive(Clone)]
pub struct SpectralGrid {
    dim: usize,
    modes: usize,
    wavenumbers: Vec<i64>,
    dealias: bool,
    plain: FftPair,
    padded: FftPair,
}

/// `make_grid(d, K)`: the grid with `2K` points per dimension.
pub fn make_grid(dim: usize, modes: usize) -> Result<Arc<SpectralGrid>> {
    SpectralGrid::new(dim, modes).map(Arc::new)
}

impl SpectralGrid {
    pub fn new(dim: usize, modes: usize) -> Result<Self> {
        if dim != 1 {
            return Err(KgError::UnsupportedDimension(dim));
        }
        if modes < 2 {
            return Err(KgError::InvalidSize(modes));
        }
        let n = 2 * modes;
        let wavenumbers = (0..n)
            .map(|j| if j < modes { j as i64 } else { j as i64 - n as i64 })
            .collect();
        let mut planner = FftPlanner::new();
        let plain = FftPair::new(&mut planner, n);
        let padded = FftPair::new(&mut planner, 3 * modes);
        Ok(Self {
            dim,
            modes,
            wavenumbers,
            dealias: false,
            plain,
            padded,
        })
    }

    /// Switch nonlinear products to 3/2-rule zero padding.
    pub fn with_dealiasing(mut self, on: bool) -> Self {
        self.dealias = on;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest Fourier mode `K`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Number of grid points, `(2K)^d`.
    pub fn len(&self) -> usize {
        self.plain.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dealiased(&self) -> bool {
        self.dealias
    }

    pub fn dx(&self) -> f64 {
        std::f64::consts::TAU / self.len() as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.len()).map(|j| j as f64 * dx).collect()
    }

    /// Wavenumber of each coefficient slot.
    pub fn wavenumbers(&self) -> &[i64] {
        &self.wavenumbers
    }

    /// Slot of wavenumber `k`, if it is carried by the grid.
    pub fn index_of(&self, k: i64) -> Option<usize> {
        let kk = self.modes as i64;
        if k < -kk || k >= kk {
            None
        } else if k >= 0 {
            Some(k as usize)
        } else {
            Some((k + 2 * kk) as usize)
        }
    }

    /// Length of the workspace used for nonlinear products.
    pub fn physical_len(&self) -> usize {
        if self.dealias {
            self.padded.len
        } else {
            self.plain.len
        }
    }

    /// Values at the `2K` grid nodes.
    pub fn to_nodes(&self, f: &SpectralField) -> Vec<C64> {
        let mut buf = f.coeffs.clone();
        self.plain.inverse.process(&mut buf);
        buf
    }

    /// Coefficients of the trigonometric interpolant of nodal values.
    pub fn from_nodes(self: &Arc<Self>, mut values: Vec<C64>) -> Result<SpectralField> {
        if values.len() != self.len() {
            return Err(KgError::Shape {
                expected: self.len(),
                found: values.len(),
            });
        }
        self.plain.forward.process(&mut values);
        let scale = 1.0 / self.len() as f64;
        values.iter_mut().for_each(|v| *v *= scale);
        Ok(SpectralField {
            grid: Arc::clone(self),
            coeffs: values,
        })
    }

    /// Values on the nonlinear workspace (the nodes, or the padded grid).
    pub fn to_physical(&self, f: &SpectralField) -> Vec<C64> {
        if !self.dealias {
            return self.to_nodes(f);
        }
        let m = self.padded.len;
        let kk = self.modes as i64;
        let mut buf = vec![C64::new(0.0, 0.0); m];
        for (&k, &c) in self.wavenumbers.iter().zip(&f.coeffs) {
            if k == -kk {
                // split the unpaired mode symmetrically
                buf[(m as i64 - kk) as usize] += 0.5 * c;
                buf[kk as usize] += 0.5 * c;
            } else {
                buf[k.rem_euclid(m as i64) as usize] += c;
            }
        }
        self.padded.inverse.process(&mut buf);
        buf
    }

    /// Inverse of [`Self::to_physical`], truncating padded modes.
    pub fn from_physical(self: &Arc<Self>, mut values: Vec<C64>) -> SpectralField {
        if !self.dealias {
            return self
                .from_nodes(values)
                .expect("physical workspace has grid length");
        }
        let m = self.padded.len;
        debug_assert_eq!(values.len(), m);
        self.padded.forward.process(&mut values);
        let scale = 1.0 / m as f64;
        let kk = self.modes as i64;
        let coeffs = self
            .wavenumbers
            .iter()
            .map(|&k| {
                let v = if k == -kk {
                    values[(m as i64 - kk) as usize] + values[kk as usize]
                } else {
                    values[k.rem_euclid(m as i64) as usize]
                };
                v * scale
            })
            .collect();
        SpectralField {
            grid: Arc::clone(self),
            coeffs,
        }
    }
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("dim", &self.dim)
            .field("modes", &self.modes)
            .field("points", &self.len())
            .field("dealias", &self.dealias)
            .finish()
    }
}

impl PartialEq for SpectralGrid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.modes == other.modes && self.dealias == other.dealias
    }
}

/// Fourier coefficients of a complex field on a [`SpectralGrid`].
#[derive(Clone)]
pub struct SpectralField {
    grid: Arc<SpectralGrid>,
    coeffs: Vec<C64>,
}

impl SpectralField {
    pub fn zeros(grid: &Arc<SpectralGrid>) -> Self {
        Self {
            grid: Arc::clone(grid),
            coeffs: vec![C64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn constant(grid: &Arc<SpectralGrid>, value: C64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = value;
        f
    }

    /// Single Fourier mode `amplitude * e^{ikx}`.
    pub fn mode(grid: &Arc<SpectralGrid>, k: i64, amplitude: C64) -> Result<Self> {
        let idx = grid.index_of(k).ok_or(KgError::InvalidIndex {
            what: "wavenumber",
            value: k,
        })?;
        let mut f = Self::zeros(grid);
        f.coeffs[idx] = amplitude;
        Ok(f)
    }

    pub fn from_coeffs(grid: &Arc<SpectralGrid>, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(KgError::Shape {
                expected: grid.len(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            grid: Arc::clone(grid),
            coeffs,
        })
    }

    /// Interpolant of `f` sampled at the grid nodes.
    pub fn from_fn(grid: &Arc<SpectralGrid>, f: impl Fn(f64) -> C64) -> Self {
        let values = grid.nodes().into_iter().map(f).collect();
        grid.from_nodes(values).expect("sampled on the grid")
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Coefficient of wavenumber `k` (zero if not carried).
    pub fn coeff(&self, k: i64) -> C64 {
        self.grid
            .index_of(k)
            .map_or(C64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn same_grid(&self, other: &SpectralField) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    pub fn ensure_same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(KgError::GridMismatch)
        }
    }

    /// Values at the grid nodes.
    pub fn to_nodes(&self) -> Vec<C64> {
        self.grid.to_nodes(self)
    }

    /// Values on the nonlinear workspace.
    pub fn to_physical(&self) -> Vec<C64> {
        self.grid.to_physical(self)
    }

    /// Apply a pointwise map in physical space.
    pub fn map_physical(&self, f: impl Fn(C64) -> C64) -> Self {
        let vals = self.to_physical().into_iter().map(f).collect();
        self.grid.from_physical(vals)
    }

    /// Complex conjugate of the physical field.
    pub fn conj(&self) -> Self {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|j| self.coeffs[(n - j) % n].conj())
            .collect();
        Self {
            grid: Arc::clone(&self.grid),
            coeffs,
        }
    }

    pub fn scale(&self, a: C64) -> Self {
        Self {
            grid: Arc::clone(&self.grid),
            coeffs: self.coeffs.iter().map(|&c| c * a).collect(),
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: C64, other: &SpectralField) -> Self {
        debug_assert!(self.same_grid(other));
        Self {
            grid: Arc::clone(&self.grid),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&x, &y)| x + a * y)
                .collect(),
        }
    }

    /// Diagonal multiplier with a real symbol.
    pub fn apply_symbol(&self, symbol: &[f64]) -> Result<Self> {
        if symbol.len() != self.coeffs.len() {
            return Err(KgError::Shape {
                expected: self.coeffs.len(),
                found: symbol.len(),
            });
        }
        Ok(self.mul_symbol(symbol))
    }

    /// Diagonal multiplier with a complex symbol.
    pub fn apply_complex_symbol(&self, symbol: &[C64]) -> Result<Self> {
        if symbol.len() != self.coeffs.len() {
            return Err(KgError::Shape {
                expected: self.coeffs.len(),
                found: symbol.len(),
            });
        }
        Ok(self.map_modes(|j, c| c * symbol[j]))
    }

    pub(crate) fn mul_symbol(&self, symbol: &[f64]) -> Self {
        self.map_modes(|j, c| c * symbol[j])
    }

    pub(crate) fn map_modes(&self, f: impl Fn(usize, C64) -> C64) -> Self {
        Self {
            grid: Arc::clone(&self.grid),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| f(j, c))
                .collect(),
        }
    }

    /// `||u||_r^2 = sum_k (1 + |k|^2)^r |u_k|^2`.
    pub fn sobolev_norm(&self, r: f64) -> f64 {
        self.grid
            .wavenumbers
            .iter()
            .zip(&self.coeffs)
            .map(|(&k, c)| (1.0 + (k * k) as f64).powf(r) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `||self - other||_r`.
    pub fn distance(&self, other: &SpectralField, r: f64) -> f64 {
        (self - other).sobolev_norm(r)
    }

    /// Largest imaginary part of the nodal values.
    pub fn max_imag(&self) -> f64 {
        self.to_nodes()
            .iter()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_coeff_diff(&self, other: &SpectralField) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl fmt::Debug for SpectralField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralField")
            .field("points", &self.coeffs.len())
            .field("l2", &self.sobolev_norm(0.0))
            .finish()
    }
}

impl PartialEq for SpectralField {
    fn eq(&self, other: &Self) -> bool {
        self.same_grid(other) && self.coeffs == other.coeffs
    }
}

impl Add<&SpectralField> for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        self.axpy(C64::new(1.0, 0.0), rhs)
    }
}

impl Sub<&SpectralField> for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        self.axpy(C64::new(-1.0, 0.0), rhs)
    }
}

impl Add for SpectralField {
    type Output = SpectralField;
    fn add(mut self, rhs: SpectralField) -> SpectralField {
        self += &rhs;
        self
    }
}

impl Sub for SpectralField {
    type Output = SpectralField;
    fn sub(mut self, rhs: SpectralField) -> SpectralField {
        debug_assert!(self.same_grid(&rhs));
        self.coeffs
            .iter_mut()
            .zip(&rhs.coeffs)
            .for_each(|(a, b)| *a -= b);
        self
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        debug_assert!(self.same_grid(rhs));
        self.coeffs
            .iter_mut()
            .zip(&rhs.coeffs)
            .for_each(|(a, b)| *a += b);
    }
}

impl Mul<C64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: C64) -> SpectralField {
        self.scale(rhs)
    }
}

impl Mul<C64> for SpectralField {
    type Output = SpectralField;
    fn mul(mut self, rhs: C64) -> SpectralField {
        self.coeffs.iter_mut().for_each(|c| *c *= rhs);
        self
    }
}

impl Mul<f64> for SpectralField {
    type Output = SpectralField;
    fn mul(mut self, rhs: f64) -> SpectralField {
        self.coeffs.iter_mut().for_each(|c| *c *= rhs);
        self
    }
}

impl Neg for SpectralField {
    type Output = SpectralField;
    fn neg(mut self) -> SpectralField {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

/// `apply_symbol(m, f)`.
pub fn apply_symbol(symbol: &[f64], f: &SpectralField) -> Result<SpectralField> {
    f.apply_symbol(symbol)
}

/// Fourier symbols of the Klein-Gordon operators for a fixed `(grid, c)`.
#[derive(Clone)]
pub struct MultiplierSet {
    c: f64,
    grid: Arc<SpectralGrid>,
    /// `sqrt(c^2 + |k|^2)`, the symbol of `<nabla>_c`.
    pub bracket_c: Vec<f64>,
    /// `c sqrt(c^2 + |k|^2) - c^2`, the symbol of `A_c`.
    pub a_c: Vec<f64>,
    /// `c / sqrt(c^2 + |k|^2)`, the symbol of `c <nabla>_c^{-1}`.
    pub c_inv: Vec<f64>,
    /// `c / sqrt(c^2 + |k|^2) - 1`, formed without cancellation.
    pub c_inv_minus_one: Vec<f64>,
    /// `-|k|^2`.
    pub laplace: Vec<f64>,
}

/// `make_multipliers(grid, c)`.
pub fn make_multipliers(grid: &Arc<SpectralGrid>, c: f64) -> Result<MultiplierSet> {
    MultiplierSet::new(grid, c)
}

impl MultiplierSet {
    pub fn new(grid: &Arc<SpectralGrid>, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(KgError::InvalidParameter(format!(
                "speed of light must be positive and finite, got {c}"
            )));
        }
        let n = grid.len();
        let mut bracket_c = Vec::with_capacity(n);
        let mut a_c = Vec::with_capacity(n);
        let mut c_inv = Vec::with_capacity(n);
        let mut c_inv_minus_one = Vec::with_capacity(n);
        let mut laplace = Vec::with_capacity(n);
        for &k in grid.wavenumbers() {
            let k2 = (k * k) as f64;
            let b = c.hypot(k as f64);
            bracket_c.push(b);
            // c b - c^2 = c k^2 / (b + c)
            a_c.push(c * k2 / (b + c));
            c_inv.push(c / b);
            // c / b - 1 = (c - b) / b = -k^2 / (b (b + c))
            c_inv_minus_one.push(-k2 / (b * (b + c)));
            laplace.push(-k2);
        }
        Ok(Self {
            c,
            grid: Arc::clone(grid),
            bracket_c,
            a_c,
            c_inv,
            c_inv_minus_one,
            laplace,
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    /// `e^{i t A_c} f`.
    pub fn exp_a(&self, t: f64, f: &SpectralField) -> SpectralField {
        f.map_modes(|j, v| v * C64::from_polar(1.0, t * self.a_c[j]))
    }

    /// The symbol of `e^{i t A_c}`.
    pub fn exp_a_symbol(&self, t: f64) -> Vec<C64> {
        self.a_c.iter().map(|&a| C64::from_polar(1.0, t * a)).collect()
    }

    /// `e^{-i t Delta / 2} f`, the free Schroedinger group.
    pub fn exp_free(&self, t: f64, f: &SpectralField) -> SpectralField {
        f.map_modes(|j, v| v * C64::from_polar(1.0, -0.5 * t * self.laplace[j]))
    }

    /// `A_c f`.
    pub fn apply_a(&self, f: &SpectralField) -> SpectralField {
        f.mul_symbol(&self.a_c)
    }

    /// `c <nabla>_c^{-1} f`.
    pub fn apply_c_inv(&self, f: &SpectralField) -> SpectralField {
        f.mul_symbol(&self.c_inv)
    }

    /// `(c <nabla>_c^{-1} - 1) f`.
    pub fn apply_c_inv_minus_one(&self, f: &SpectralField) -> SpectralField {
        f.mul_symbol(&self.c_inv_minus_one)
    }

    /// The symbol `i tau (delta c^2 - A_c)`, non-resonant for `delta < 0`.
    pub fn shifted_symbol(&self, tau: f64, delta: f64) -> Vec<C64> {
        let c2 = self.c * self.c;
        self.a_c
            .iter()
            .map(|&a| C64::new(0.0, tau * (delta * c2 - a)))
            .collect()
    }

    /// The symbol `i tau (2 c^2 - Delta / 2)` of the resonant interaction.
    pub fn resonant_symbol(&self, tau: f64) -> Vec<C64> {
        let c2 = self.c * self.c;
        self.laplace
            .iter()
            .map(|&l| C64::new(0.0, tau * (2.0 * c2 - 0.5 * l)))
            .collect()
    }
}

impl fmt::Debug for MultiplierSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSet")
            .field("c", &self.c)
            .field("grid", &self.grid)
            .finish()
    }
}

/// `exp_A_c(t, m, f)`.
pub fn exp_a_c(t: f64, m: &MultiplierSet, f: &SpectralField) -> SpectralField {
    m.exp_a(t, f)
}

/// `phi_j` of a diagonal operator given by its complex symbol.
pub fn phi_of_operator(j: u32, symbol: &[C64], f: &SpectralField) -> Result<SpectralField> {
    if symbol.len() != f.coeffs().len() {
        return Err(KgError::Shape {
            expected: f.coeffs().len(),
            found: symbol.len(),
        });
    }
    let values = symbol
        .iter()
        .map(|&z| phi::phi(j, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(f.map_modes(|i, c| c * values[i]))
}

/// `sobolev_norm(f, r)`.
pub fn sobolev_norm(f: &SpectralField, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(KgError::InvalidParameter(format!(
            "Sobolev order must be nonnegative, got {r}"
        )));
    }
    Ok(f.sobolev_norm(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(k: usize) -> Arc<SpectralGrid> {
        make_grid(1, k).unwrap()
    }

    #[test]
    fn layout() {
        let g = grid(4);
        assert_eq!(g.len(), 8);
        let mut ks = g.wavenumbers().to_vec();
        ks.sort();
        assert_eq!(ks, (-4..4).collect::<Vec<_>>());
        for (j, &k) in g.wavenumbers().iter().enumerate() {
            assert_eq!(g.index_of(k), Some(j));
        }
        assert_eq!(g.index_of(4), None);
    }

    #[test]
    fn experiment_mesh_width() {
        assert_eq!(grid(1024).len(), 2048);
        // dx = 0.0061 is reproduced by 1024 nodes, i.e. modes -512..511
        assert!((grid(512).dx() - 0.0061).abs() < 5e-5);
        assert!((grid(1024).dx() - 0.0061).abs() > 1e-3);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(make_grid(2, 8), Err(KgError::UnsupportedDimension(2))));
        assert!(matches!(make_grid(1, 1), Err(KgError::InvalidSize(1))));
        let g = grid(4);
        assert!(MultiplierSet::new(&g, 0.0).is_err());
        assert!(MultiplierSet::new(&g, -1.0).is_err());
        let f = SpectralField::zeros(&g);
        assert!(matches!(
            f.apply_symbol(&[1.0; 3]),
            Err(KgError::Shape { expected: 8, found: 3 })
        ));
    }

    #[test]
    fn normalisation_of_constants_and_modes() {
        let g = grid(8);
        let one = SpectralField::from_fn(&g, |_| C64::new(1.0, 0.0));
        assert!((one.coeff(0) - 1.0).norm() < 1e-15);
        for r in [0.0, 1.0, 2.5] {
            assert!((one.sobolev_norm(r) - 1.0).abs() < 1e-14);
        }
        let e1 = SpectralField::from_fn(&g, |x| C64::new(0.0, x).exp());
        assert!((e1.coeff(1) - 1.0).norm() < 1e-14);
        assert!((e1.sobolev_norm(1.0) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn symbols_at_small_and_large_c() {
        let g = grid(4);
        let m = MultiplierSet::new(&g, 1.0).unwrap();
        let i1 = g.index_of(1).unwrap();
        assert!((m.a_c[i1] - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(m.a_c[0], 0.0);
        assert_eq!(m.c_inv[0], 1.0);
        let big = MultiplierSet::new(&g, 1e4).unwrap();
        // a_c -> k^2/2 (1 - k^2/(4c^2) + ...)
        let eps = 1.0 - big.a_c[i1] / 0.5;
        assert!(eps > 0.0 && eps < 1e-8, "eps = {eps}");
        // -k^2 / (b (b + c)) ~ -1/(2 c^2), free of the cancellation in c_inv - 1
        let rel = big.c_inv_minus_one[i1] / -0.5e-8 - 1.0;
        assert!(rel.abs() < 1e-7, "rel = {rel}");
        assert!((big.c_inv_minus_one[i1] - (big.c_inv[i1] - 1.0)).abs() < 2e-16);
    }

    #[test]
    fn laplace_of_first_mode() {
        let g = grid(8);
        let m = MultiplierSet::new(&g, 3.0).unwrap();
        let e1 = SpectralField::from_fn(&g, |x| C64::new(0.0, x).exp());
        let d = apply_symbol(&m.laplace, &e1).unwrap();
        assert!(d.distance(&e1.scale(C64::new(-1.0, 0.0)), 0.0) < 1e-14);
        let constant = SpectralField::constant(&g, C64::new(2.0, 1.0));
        assert_eq!(m.apply_a(&constant).sobolev_norm(0.0), 0.0);
        let ones = vec![1.0; g.len()];
        assert_eq!(apply_symbol(&ones, &e1).unwrap(), e1);
    }

    #[test]
    fn conj_matches_physical_conjugation() {
        let g = grid(8);
        let f = SpectralField::from_fn(&g, |x| C64::new(x.sin(), (2.0 * x).cos() + 0.3));
        let direct = g
            .from_nodes(f.to_nodes().into_iter().map(|v| v.conj()).collect())
            .unwrap();
        assert!(f.conj().distance(&direct, 0.0) < 1e-14);
    }

    #[test]
    fn dealiased_products_remove_aliasing() {
        // e^{3ix} * e^{3ix} = e^{6ix} aliases to k = -2 on a K = 4 grid
        let g = Arc::new(SpectralGrid::new(1, 4).unwrap().with_dealiasing(true));
        let f = SpectralField::mode(&g, 3, C64::new(1.0, 0.0)).unwrap();
        let sq = f.map_physical(|v| v * v);
        assert!(sq.sobolev_norm(0.0) < 1e-14);
        let plain = grid(4);
        let f = SpectralField::mode(&plain, 3, C64::new(1.0, 0.0)).unwrap();
        let sq = f.map_physical(|v| v * v);
        assert!((sq.coeff(-2) - 1.0).norm() < 1e-14);
        // padding is exact for products of low modes
        let a = SpectralField::from_fn(&g, |x| C64::new(x.cos(), 0.0));
        let a2 = a.map_physical(|v| v * v);
        assert!((a2.coeff(0) - 0.5).norm() < 1e-15);
        assert!((a2.coeff(2) - 0.25).norm() < 1e-15);
    }

    #[test]
    fn phi_operator_identity_and_bound() {
        let g = grid(16);
        let f = SpectralField::from_fn(&g, |x| C64::new((x).sin().exp(), x.cos()));
        let zero = vec![C64::new(0.0, 0.0); g.len()];
        assert_eq!(phi_of_operator(1, &zero, &f).unwrap(), f);
        let m = MultiplierSet::new(&g, 2.0).unwrap();
        let res = m.resonant_symbol(0.37);
        assert!(res.iter().all(|z| z.norm() > 0.0));
        let out = phi_of_operator(2, &res, &f).unwrap();
        assert!(out.sobolev_norm(1.0) <= 0.5 * f.sobolev_norm(1.0) + 1e-15);
        assert!(phi_of_operator(5, &res, &f).is_err());
    }
}
