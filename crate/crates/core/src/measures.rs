//! Measures derived from the frustration index and the adjacency spectrum.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::solver::FrustrationResult;

/// Largest node count for which the dense eigensolver is used.
pub const SPECTRAL_CAP: usize = 2000;
/// Largest accepted eigenpair residual, relative to `max(1, λ_max)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// `F = 1 - 2L/m` as an exact fraction.
pub fn normalized_frustration(l: usize, m: usize) -> Result<Ratio<u64>> {
    if m == 0 {
        return Err(Error::UndefinedMeasure("the normalised frustration index"));
    }
    if 2 * l > m {
        return Err(Error::Contract(format!("L = {l} exceeds m / 2 for m = {m}")));
    }
    Ok(Ratio::new((m - 2 * l) as u64, m as u64))
}

/// Ground-state energy `2L - m` of the Ising model with couplings `J_ij = a_ij`.
pub fn hamiltonian(l: usize, m: usize) -> i64 {
    2 * l as i64 - m as i64
}

/// Eigenvalues of `|A|` in nonincreasing order.
pub fn spectrum_abs(g: &SignedGraph) -> Result<Vec<f64>> {
    spectrum_abs_capped(g, SPECTRAL_CAP)
}

pub fn spectrum_abs_capped(g: &SignedGraph, cap: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n > cap {
        return Err(Error::SpectralCap { nodes: n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for e in g.edges() {
        a[(e.u, e.v)] = 1.0;
        a[(e.v, e.u)] = 1.0;
    }
    let eig = SymmetricEigen::new(a);

    let scale = eig.eigenvalues.iter().fold(1.0f64, |s, &l| s.max(l.abs()));
    let mut worst = 0.0f64;
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(j);
        for x in 0..n {
            let av: f64 = g.neighbours(x).iter().map(|nb| v[nb.node]).sum();
            worst = worst.max((av - lambda * v[x]).abs());
        }
    }
    if worst.is_nan() || worst > RESIDUAL_TOLERANCE * scale {
        return Err(Error::NonConvergence { residual: worst });
    }
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// `Σ cosh λ_j / Σ e^{λ_j}` over the spectrum of `|A|`.
pub fn beta(g: &SignedGraph) -> Result<f64> {
    Ok(beta_from_spectrum(&spectrum_abs(g)?))
}

/// `Σ e^{-λ_j} / Σ e^{λ_j}` over the spectrum of `|A|`.
pub fn bs(g: &SignedGraph) -> Result<f64> {
    Ok(bs_from_spectrum(&spectrum_abs(g)?))
}

/// Sums of `e^{λ - λ_max}` and `e^{-λ - λ_max}`. The Perron value bounds
/// every `|λ|`, so neither overflows.
fn shifted_sums(spectrum: &[f64]) -> (f64, f64) {
    let top = spectrum.iter().copied().fold(0.0f64, f64::max);
    let up = spectrum.iter().map(|&l| (l - top).exp()).sum();
    let down = spectrum.iter().map(|&l| (-l - top).exp()).sum();
    (up, down)
}

pub fn beta_from_spectrum(spectrum: &[f64]) -> f64 {
    let (up, down) = shifted_sums(spectrum);
    let b = 0.5 * (up + down) / up;
    debug_assert!((0.5 - 1e-12..=1.0 + 1e-9).contains(&b), "beta {b} out of range");
    b
}

pub fn bs_from_spectrum(spectrum: &[f64]) -> f64 {
    let (up, down) = shifted_sums(spectrum);
    let b = down / up;
    debug_assert!(b > 0.0 && b <= 1.0 + 1e-9, "b_s {b} out of range");
    b
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: PartialEq + Copy> Interval<T> {
    pub fn point(x: T) -> Self {
        Interval { lower: x, upper: x }
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }
}

/// All measures reported for one graph and one solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub n: usize,
    pub m: usize,
    pub m_minus: usize,
    pub density: Option<f64>,
    pub frustration: Interval<usize>,
    pub exact: bool,
    /// `F`; the bounds swap relative to `frustration`.
    pub normalized: Option<Interval<f64>>,
    pub hamiltonian: Interval<i64>,
    pub beta: Option<f64>,
    pub bs: Option<f64>,
}

impl MeasureReport {
    /// Spectral indices are only computed for single-signed graphs of at
    /// most [`SPECTRAL_CAP`] nodes, and only when `spectral` is set.
    pub fn new(g: &SignedGraph, result: &FrustrationResult, spectral: bool) -> Result<Self> {
        let m = g.edge_count();
        let (lo, hi) = (result.lower_bound, result.upper_bound);
        let normalized = if m == 0 {
            None
        } else {
            let f = |l| normalized_frustration(l, m).map(|r| *r.numer() as f64 / *r.denom() as f64);
            Some(Interval { lower: f(hi)?, upper: f(lo)? })
        };
        let hamiltonian = Interval { lower: hamiltonian(lo, m), upper: hamiltonian(hi, m) };
        debug_assert_eq!(hamiltonian.upper + m as i64, 2 * hi as i64);

        let uniform = g.all_signs(Sign::Positive) || g.all_signs(Sign::Negative);
        let (beta, bs) = if spectral && uniform && g.node_count() <= SPECTRAL_CAP && g.node_count() > 0 {
            let s = spectrum_abs(g)?;
            (Some(beta_from_spectrum(&s)), Some(bs_from_spectrum(&s)))
        } else {
            (None, None)
        };
        Ok(MeasureReport {
            n: g.node_count(),
            m,
            m_minus: g.negative_edge_count(),
            density: g.density(),
            frustration: Interval { lower: lo, upper: hi },
            exact: result.exact,
            normalized,
            hamiltonian,
            beta,
            bs,
        })
    }
}
