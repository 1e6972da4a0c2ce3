//! The matrix `A_α(G) = α·D(G) + (1−α)·A(G)` and its largest eigenpair.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::eigen::{symmetric_eigen, DenseMatrix};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Required max-norm residual of the returned eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance used when comparing spectral radii downstream.
pub const COMPARE_TOL: f64 = 1e-9;
/// Components whose radii differ by less than this are treated as tied.
pub const COMPONENT_TIE_TOL: f64 = 1e-10;
const CLAMP_TOL: f64 = 1e-12;

/// A mixing parameter in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub const ZERO: Alpha = Alpha(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..1.0).contains(&value) {
            Ok(Alpha(value))
        } else {
            Err(Error::AlphaRange(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether `α ≤ 1 − 1/r`, the range on which the deletion lemmas apply.
    pub fn within_turan_range(self, r: usize) -> bool {
        self.0 <= 1.0 - 1.0 / r as f64 + 1e-12
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Alpha::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub lambda_alpha: f64,
    /// Nonnegative unit eigenvector for `lambda_alpha`.
    pub eigvec: Vec<f64>,
    pub min_entry: f64,
    /// Vertex attaining `min_entry` (lowest index on ties).
    pub min_index: usize,
    /// `max_u |(A_α x)_u − λ x_u|`
    pub residual: f64,
    pub iterations: usize,
}

pub fn alpha_matrix(g: &Graph, alpha: Alpha) -> DenseMatrix {
    let n = g.order();
    let a = alpha.value();
    let mut m = DenseMatrix::zeros(n);
    for u in 0..n {
        m.set(u, u, a * g.degree(u) as f64);
        for v in bits(g.neighbors(u)) {
            m.set(u, v, 1.0 - a);
        }
    }
    m
}

/// Top eigenpair of a connected graph.
fn connected_radius(g: &Graph, alpha: Alpha) -> Result<(f64, Vec<f64>, usize)> {
    if g.order() == 1 {
        return Ok((0.0, vec![1.0], 0));
    }
    let eig = symmetric_eigen(&alpha_matrix(g, alpha))?;
    let top = eig.values.len() - 1;
    let lambda = eig.values[top];
    let mut x = eig.vectors[top].clone();
    let pivot = x
        .iter()
        .copied()
        .fold(0.0f64, |acc, xi| if xi.abs() > acc.abs() { xi } else { acc });
    if pivot < 0.0 {
        x.iter_mut().for_each(|xi| *xi = -*xi);
    }
    if let Some(bad) = x.iter().position(|&xi| xi < -CLAMP_TOL) {
        return Err(Error::ConvergenceFailure(format!(
            "top eigenvector of a connected graph has negative entry {} at {bad}",
            x[bad]
        )));
    }
    x.iter_mut().for_each(|xi| *xi = xi.max(0.0));
    normalize(&mut x);
    Ok((lambda, x, eig.sweeps))
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// The α-spectral radius with a certified nonnegative unit eigenvector.
///
/// For disconnected graphs the vector is the Perron vector of a maximizing
/// component and zero elsewhere. Components tied within 1e−10 are broken by
/// the smaller canonical key, then by the lower first vertex.
pub fn spectral_radius(g: &Graph, alpha: Alpha) -> Result<SpectralResult> {
    let n = g.order();
    let comps = g.components();
    let (lambda, eigvec, iterations) = if comps.len() == 1 {
        connected_radius(g, alpha)?
    } else {
        let mut per_comp = Vec::with_capacity(comps.len());
        let mut iterations = 0;
        for &mask in &comps {
            let sub = g.induced(mask)?;
            let (l, x, it) = connected_radius(&sub, alpha)?;
            iterations += it;
            per_comp.push((mask, sub, l, x));
        }
        let top = per_comp.iter().map(|c| c.2).fold(f64::NEG_INFINITY, f64::max);
        let chosen = per_comp
            .iter()
            .filter(|c| top - c.2 <= COMPONENT_TIE_TOL)
            .min_by_key(|c| canonical_form(&c.1))
            .expect("at least one component attains the maximum");
        let mut x = vec![0.0; n];
        for (xi, v) in chosen.3.iter().zip(bits(chosen.0)) {
            x[v] = *xi;
        }
        (chosen.2, x, iterations)
    };

    let m = alpha_matrix(g, alpha);
    let ax = m.mul_vec(&eigvec);
    let residual = ax
        .iter()
        .zip(&eigvec)
        .map(|(a, x)| (a - lambda * x).abs())
        .fold(0.0, f64::max);
    if residual > RESIDUAL_TOL || !lambda.is_finite() {
        return Err(Error::ConvergenceFailure(format!(
            "residual {residual:e} exceeds {RESIDUAL_TOL:e}"
        )));
    }
    let (min_index, min_entry) = eigvec
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    Ok(SpectralResult {
        lambda_alpha: lambda.max(0.0),
        eigvec,
        min_entry,
        min_index,
        residual,
        iterations,
    })
}

pub fn lambda_alpha(g: &Graph, alpha: Alpha) -> Result<f64> {
    spectral_radius(g, alpha).map(|r| r.lambda_alpha)
}

/// `λ_α(G^p) = p·λ_α(G)`; the verifier checks this against the explicit blow-up.
pub fn blowup_lambda(g: &Graph, alpha: Alpha, p: usize) -> Result<f64> {
    if p < 1 {
        return Err(Error::InvalidParameters("blow-up factor must be >= 1".into()));
    }
    Ok(p as f64 * lambda_alpha(g, alpha)?)
}
