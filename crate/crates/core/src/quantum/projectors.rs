use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use super::linalg::{
    conjugate, frobenius, hermiticity_residual, is_finite, ray_projector, trace_product, ComplexMatrix,
};
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Hermiticity, idempotency and trace residual allowed per projector.
    pub projector: f64,
    /// Largest ‖Π_u Π_v‖_F that still counts as orthogonal.
    pub orthogonality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { projector: 1e-9, orthogonality: 1e-8 }
    }
}

/// One rank-`rank` projector per vertex, in dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet {
    dim: usize,
    rank: usize,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectorSet {
    pub fn new(dim: usize, rank: usize, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        if dim == 0 || rank == 0 || rank > dim {
            return Err(Error::Domain(format!("need 1 <= rank <= dimension, got rank {rank}, dimension {dim}")));
        }
        if projectors.is_empty() {
            return Err(Error::Shape("no projectors".into()));
        }
        for (k, p) in projectors.iter().enumerate() {
            if p.nrows() != dim || p.ncols() != dim {
                return Err(Error::Shape(format!(
                    "projector {} is {}x{}, expected {dim}x{dim}",
                    k + 1,
                    p.nrows(),
                    p.ncols()
                )));
            }
            if !is_finite(p) {
                return Err(Error::Validation(format!("projector {} has non-finite entries", k + 1)));
            }
        }
        Ok(ProjectorSet { dim, rank, projectors })
    }

    /// Rank-1 projectors onto the given rays (normalised here).
    pub fn from_rays(rays: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rays.first().map_or(0, Vec::len);
        let projectors = rays
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let v = DVector::from_column_slice(r);
                if r.len() != dim {
                    Err(Error::Shape(format!("ray {} has length {}, expected {dim}", k + 1, r.len())))
                } else if v.norm() == 0.0 {
                    Err(Error::Domain(format!("ray {} is zero", k + 1)))
                } else {
                    Ok(ray_projector(&v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ProjectorSet::new(dim, 1, projectors)
    }

    pub fn from_real_rays(rays: &[Vec<f64>]) -> Result<Self> {
        let rays: Vec<Vec<Complex64>> =
            rays.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        ProjectorSet::from_rays(&rays)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// {U†Π_kU}
    pub fn conjugated(&self, u: &ComplexMatrix) -> Self {
        let projectors = self
            .projectors
            .iter()
            .map(|p| {
                let m = conjugate(p, u);
                (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
            })
            .collect();
        ProjectorSet { dim: self.dim, rank: self.rank, projectors }
    }
}

/// Per-invariant outcome of [`validate_realization`]. Vertex labels are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub tolerances: Tolerances,
    pub max_hermiticity_residual: f64,
    pub max_idempotency_residual: f64,
    pub max_trace_residual: f64,
    /// Largest ‖Π_uΠ_v‖ over edges (should be ≤ orthogonality tolerance).
    pub max_edge_overlap: f64,
    /// Smallest ‖Π_uΠ_v‖ over non-edges (should exceed it).
    pub min_non_edge_overlap: Option<f64>,
    pub invalid_projectors: Vec<usize>,
    pub unrealized_edges: Vec<(usize, usize)>,
    pub unexpected_orthogonal_pairs: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.passed {
            return "realization valid".into();
        }
        let mut parts = Vec::new();
        if !self.invalid_projectors.is_empty() {
            parts.push(format!("invalid projectors {:?}", self.invalid_projectors));
        }
        if !self.unrealized_edges.is_empty() {
            parts.push(format!("edges not orthogonal {:?}", self.unrealized_edges));
        }
        if !self.unexpected_orthogonal_pairs.is_empty() {
            parts.push(format!("non-edges orthogonal {:?}", self.unexpected_orthogonal_pairs));
        }
        parts.join("; ")
    }
}

/// Checks that `ps` is a strict realization of `g`: every Π is a rank-r
/// projector, edges are orthogonal and non-edges are not.
pub fn validate_realization(g: &Graph, ps: &ProjectorSet, tol: Tolerances) -> Result<ValidationReport> {
    if ps.len() != g.n() {
        return Err(Error::Shape(format!("{} projectors for a graph with {} vertices", ps.len(), g.n())));
    }
    let mut report = ValidationReport {
        passed: true,
        tolerances: tol,
        max_hermiticity_residual: 0.0,
        max_idempotency_residual: 0.0,
        max_trace_residual: 0.0,
        max_edge_overlap: 0.0,
        min_non_edge_overlap: None,
        invalid_projectors: Vec::new(),
        unrealized_edges: Vec::new(),
        unexpected_orthogonal_pairs: Vec::new(),
    };
    for (k, p) in ps.projectors.iter().enumerate() {
        let herm = hermiticity_residual(p);
        let idem = (p * p - p).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tr = p.trace();
        let trace_res = (tr.re - ps.rank as f64).abs().max(tr.im.abs());
        report.max_hermiticity_residual = report.max_hermiticity_residual.max(herm);
        report.max_idempotency_residual = report.max_idempotency_residual.max(idem);
        report.max_trace_residual = report.max_trace_residual.max(trace_res);
        if herm > tol.projector || idem > tol.projector || trace_res > tol.projector {
            report.invalid_projectors.push(k + 1);
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let overlap = frobenius(&(&ps.projectors[u] * &ps.projectors[v]));
            if g.is_adjacent(u, v) {
                report.max_edge_overlap = report.max_edge_overlap.max(overlap);
                if overlap > tol.orthogonality {
                    report.unrealized_edges.push((u + 1, v + 1));
                }
            } else {
                report.min_non_edge_overlap = Some(report.min_non_edge_overlap.map_or(overlap, |m| m.min(overlap)));
                if overlap <= tol.orthogonality {
                    report.unexpected_orthogonal_pairs.push((u + 1, v + 1));
                }
            }
        }
    }
    report.passed = report.invalid_projectors.is_empty()
        && report.unrealized_edges.is_empty()
        && report.unexpected_orthogonal_pairs.is_empty();
    Ok(report)
}

/// Slack allowed on each tr(Π_k ρ) before clamping to [0, 1].
const EXPECTATION_SLACK: f64 = 1e-9;

/// x_k = tr(Π_k ρ), clamped to [0, 1].
pub fn expectation_vector(ps: &ProjectorSet, rho: &DensityMatrix) -> Result<Vec<f64>> {
    if rho.dim() != ps.dim {
        return Err(Error::Shape(format!("state has dimension {}, projectors {}", rho.dim(), ps.dim)));
    }
    ps.projectors
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let x = trace_product(p, rho.matrix());
            if !(-EXPECTATION_SLACK..=1.0 + EXPECTATION_SLACK).contains(&x) {
                return Err(Error::Validation(format!("tr(Π_{} ρ) = {x} outside [0, 1]", k + 1)));
            }
            Ok(x.clamp(0.0, 1.0))
        })
        .collect()
}
