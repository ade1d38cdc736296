//! Numerical checks of the bilinear tree identity `LD + 2I = (2·1 − d)1ᵀ`
//! and the algebra around it.
//!
//! Throughout, `L` is the Laplacian of `G` and `D` is the distance matrix of
//! the reciprocal graph `G⁻¹`. Exact identities become residual checks
//! against a tolerance scaled by the magnitudes involved.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{self, matmul, max_abs, DenseMatrix, DEFAULT_TOL};
use crate::paths::distance_matrix;

/// Scale applied to `(I − J/n)·D(G⁻¹)·(I − J/n)` to obtain `L†` with `L†L = I − J/n`.
///
/// Fixed numerically: of the candidates ±1 and ±1/2, only −1/2 satisfies the
/// projection contract (see the `generalized_inverse_scale_is_minus_half` test).
pub const GENERALIZED_INVERSE_SCALE: f64 = -0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// max |LD + 2I − (2·1 − d)1ᵀ|
    pub residual_full: f64,
    /// Same, restricted to the strict upper triangle.
    pub residual_upper: f64,
    /// max |LDL + 2L|
    pub residual_ldl: f64,
    pub tolerance: f64,
    pub holds_full: bool,
    pub holds_upper: bool,
    pub holds_ldl: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.holds_full && self.holds_upper && self.holds_ldl
    }
}

/// `LD + 2I − (2·1 − d)1ᵀ` for a Laplacian, candidate distance matrix and degree sequence.
pub fn characterization_residual(l: &DenseMatrix, d: &DenseMatrix, degrees: &[usize]) -> Result<DenseMatrix> {
    let n = l.rows();
    if d.rows() != n || d.cols() != n || degrees.len() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n} distance matrix and {n} degrees"),
            got: format!("{}x{} and {}", d.rows(), d.cols(), degrees.len()),
        });
    }
    let mut r = matmul(l, d)?;
    for i in 0..n {
        let tau = 2.0 - degrees[i] as f64;
        for j in 0..n {
            r[(i, j)] -= tau;
        }
        r[(i, i)] += 2.0;
    }
    Ok(r)
}

/// Residual tolerance: `tol · max(1, |L|) · max(1, |D|)`.
pub fn scaled_tolerance(tol: f64, l: &DenseMatrix, d: &DenseMatrix) -> f64 {
    tol * max_abs(l).max(1.0) * max_abs(d).max(1.0)
}

pub fn check_identity(g: &WeightedGraph, d: &DenseMatrix, tol: f64) -> Result<IdentityReport> {
    let l = g.laplacian();
    let r = characterization_residual(&l, d, &g.degree_sequence())?;
    let residual_full = max_abs(&r);
    let residual_upper = max_abs(&r.strict_upper());
    let ldl = matmul(&matmul(&l, d)?, &l)?;
    let residual_ldl = max_abs(&(&ldl + &l.scale(2.0)));

    let tolerance = scaled_tolerance(tol, &l, d);
    let ldl_tolerance = tolerance * max_abs(&l).max(1.0);
    Ok(IdentityReport {
        residual_full,
        residual_upper,
        residual_ldl,
        tolerance,
        holds_full: residual_full <= tolerance,
        holds_upper: residual_upper <= tolerance,
        holds_ldl: residual_ldl <= ldl_tolerance,
    })
}

/// Which constraints accompany the `n²` identity equations when solving for `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceSystem {
    pub zero_diagonal: bool,
    pub symmetric: bool,
}

impl Default for DistanceSystem {
    fn default() -> Self {
        DistanceSystem { zero_diagonal: true, symmetric: true }
    }
}

impl DistanceSystem {
    /// Linear system `A·vec(D) = b` in the `n²` row-major entries of `D`.
    ///
    /// Rows: the identity entrywise, then `d_ii = 0` (if enabled), then
    /// `d_ij − d_ji = 0` for `i < j` (if enabled).
    pub fn assemble(&self, g: &WeightedGraph) -> (DenseMatrix, DenseMatrix) {
        let n = g.n();
        let l = g.laplacian();
        let deg = g.degree_sequence();
        let mut rows = n * n;
        if self.zero_diagonal {
            rows += n;
        }
        if self.symmetric {
            rows += n * (n - 1) / 2;
        }
        let mut a = DenseMatrix::zeros(rows, n * n);
        let mut b = DenseMatrix::zeros(rows, 1);
        let var = |k: usize, j: usize| k * n + j;

        let mut row = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    a[(row, var(k, j))] = l[(i, k)];
                }
                b[(row, 0)] = 2.0 - deg[i] as f64 - if i == j { 2.0 } else { 0.0 };
                row += 1;
            }
        }
        if self.zero_diagonal {
            for i in 0..n {
                a[(row, var(i, i))] = 1.0;
                row += 1;
            }
        }
        if self.symmetric {
            for i in 0..n {
                for j in i + 1..n {
                    a[(row, var(i, j))] = 1.0;
                    a[(row, var(j, i))] = -1.0;
                    row += 1;
                }
            }
        }
        (a, b)
    }

    pub fn solve(&self, g: &WeightedGraph, tol: f64) -> Result<linalg::ConsistencyReport> {
        let (a, b) = self.assemble(g);
        let eff = tol * max_abs(&a).max(1.0);
        linalg::solve_consistent(&a, &b, eff)
    }
}

/// Solves the identity for `D` given `G`'s Laplacian, with zero diagonal and
/// symmetry adjoined. Returns `Some(D)` only when the system is consistent
/// with a unique solution; for trees this is `D(G⁻¹)`.
pub fn solve_distance_from_laplacian(g: &WeightedGraph, tol: f64) -> Result<Option<DenseMatrix>> {
    let n = g.n();
    let report = DistanceSystem::default().solve(g, tol)?;
    if !report.is_unique(n * n) {
        return Ok(None);
    }
    let x = report.solution.expect("consistent report carries a solution");
    Ok(Some(DenseMatrix::from_fn(n, n, |i, j| x[(i * n + j, 0)])))
}

/// Closed-form inverse of `D(G⁻¹)` for a tree:
/// `(2·1 − d)(2·1 − d)ᵀ / (2 ∑ w(G⁻¹)) − L/2`.
pub fn graham_lovasz_inverse(g: &WeightedGraph) -> Result<DenseMatrix> {
    g.require_tree()?;
    let n = g.n();
    let tau: Vec<f64> = g.degree_sequence().iter().map(|&d| 2.0 - d as f64).collect();
    let denom = 2.0 * g.reciprocal().total_weight();
    let l = g.laplacian();
    Ok(DenseMatrix::from_fn(n, n, |i, j| tau[i] * tau[j] / denom - 0.5 * l[(i, j)]))
}

/// `(I − J/n)·D(G⁻¹)·(I − J/n)`.
pub fn centered_reciprocal_distance(g: &WeightedGraph) -> Result<DenseMatrix> {
    g.require_tree()?;
    let n = g.n();
    let d = distance_matrix(&g.reciprocal())?;
    let p = centering_projection(n);
    matmul(&matmul(&p, &d)?, &p)
}

/// `I − J/n`.
pub fn centering_projection(n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64)
}

/// Generalized inverse `L†` of a tree Laplacian, satisfying `L†L = I − J/n`.
pub fn generalized_inverse_laplacian(g: &WeightedGraph) -> Result<DenseMatrix> {
    Ok(centered_reciprocal_distance(g)?.scale(GENERALIZED_INVERSE_SCALE))
}

/// `1ᵀ D(G)⁻¹ 1` via an explicit inverse. For a tree this equals `2 / ∑ w(G)`.
pub fn spherical_edm_check(g: &WeightedGraph) -> Result<f64> {
    g.require_tree()?;
    let d = distance_matrix(g)?;
    let inv = linalg::inverse(&d)?;
    Ok(inv.as_slice().iter().sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// `D ≥ W(G⁻¹)` entrywise within tolerance.
    pub holds: bool,
    /// 1-based off-diagonal pairs `(i, j)`, `i < j`, where `d_ij = w_ij(G⁻¹)`.
    pub equal_pairs: Vec<(usize, usize)>,
    /// True when `equal_pairs` is exactly the edge set.
    pub equality_exactly_on_edges: bool,
}

/// Checks the side condition `D ≥ W(G⁻¹)` and where it is tight.
pub fn distance_dominates_reciprocal_weights(g: &WeightedGraph, d: &DenseMatrix, tol: f64) -> Result<DominanceReport> {
    let n = g.n();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", d.rows(), d.cols()),
        });
    }
    let w = g.reciprocal().weight_matrix();
    let eps = tol * max_abs(d).max(1.0);
    let mut holds = true;
    let mut equal_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let gap = d[(i, j)] - w[(i, j)];
            if gap < -eps {
                holds = false;
            }
            if i < j && gap.abs() <= eps {
                equal_pairs.push((i + 1, j + 1));
            }
        }
    }
    let edges: Vec<_> = g.edges().map(|(i, j, _)| (i + 1, j + 1)).collect();
    Ok(DominanceReport { holds, equality_exactly_on_edges: equal_pairs == edges, equal_pairs })
}

/// Everything `verify` reports about one graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub is_tree: bool,
    pub base_tolerance: f64,
    /// Whether the zero-diagonal system for `D` has a unique solution.
    pub distance_recoverable: bool,
    pub identity: Option<IdentityReport>,
    pub dominance: Option<DominanceReport>,
    pub inverse_residual: Option<f64>,
    pub generalized_inverse_residual: Option<f64>,
    pub spherical_value: Option<f64>,
    pub spherical_expected: Option<f64>,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Runs every check on `g`. Uses `D(G⁻¹)` when `d` is not supplied.
pub fn verify(g: &WeightedGraph, d: Option<&DenseMatrix>, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        n: g.n(),
        is_tree: g.is_tree() && g.n() >= 2,
        base_tolerance: tol,
        distance_recoverable: false,
        identity: None,
        dominance: None,
        inverse_residual: None,
        generalized_inverse_residual: None,
        spherical_value: None,
        spherical_expected: None,
        checks: Vec::new(),
    };
    let recovered = if g.n() >= 2 { solve_distance_from_laplacian(g, tol)? } else { None };
    report.distance_recoverable = recovered.is_some();
    report.checks.push(CheckOutcome {
        name: "converse".into(),
        passed: recovered.is_some(),
        detail: if recovered.is_some() {
            "the identity determines a unique zero-diagonal D".into()
        } else {
            "no zero-diagonal D satisfies LD + 2I = (2·1 - d)1^T; the graph is not a tree".into()
        },
    });
    if !report.is_tree {
        return Ok(report);
    }

    let own;
    let d = match d {
        Some(d) => d,
        None => {
            own = distance_matrix(&g.reciprocal())?;
            &own
        }
    };
    let id = check_identity(g, d, tol)?;
    report.checks.push(CheckOutcome {
        name: "identity".into(),
        passed: id.holds(),
        detail: format!(
            "full {:.3e}, upper {:.3e}, LDL {:.3e} (tolerance {:.3e})",
            id.residual_full, id.residual_upper, id.residual_ldl, id.tolerance
        ),
    });
    if let Some(rec) = &recovered {
        let dev = max_abs(&(rec - d));
        report.checks.push(CheckOutcome {
            name: "recovered-distance".into(),
            passed: dev <= id.tolerance,
            detail: format!("max deviation of recovered D from supplied D: {dev:.3e}"),
        });
    }
    report.identity = Some(id);

    let dom = distance_dominates_reciprocal_weights(g, d, tol)?;
    report.checks.push(CheckOutcome {
        name: "dominance".into(),
        passed: dom.holds && dom.equality_exactly_on_edges,
        detail: format!("D >= W(G^-1): {}, tight exactly on edges: {}", dom.holds, dom.equality_exactly_on_edges),
    });
    report.dominance = Some(dom);

    let n = g.n();
    let inv = graham_lovasz_inverse(g)?;
    let inv_res = max_abs(&(&matmul(&inv, d)? - &DenseMatrix::identity(n)));
    let inv_tol = tol * max_abs(&inv).max(1.0) * max_abs(d).max(1.0);
    report.checks.push(CheckOutcome {
        name: "distance-inverse".into(),
        passed: inv_res <= inv_tol,
        detail: format!("closed-form inverse times D minus I: {inv_res:.3e}"),
    });
    report.inverse_residual = Some(inv_res);

    let pinv = generalized_inverse_laplacian(g)?;
    let l = g.laplacian();
    let proj_res = max_abs(&(&matmul(&pinv, &l)? - &centering_projection(n)));
    let proj_tol = tol * max_abs(&pinv).max(1.0) * max_abs(&l).max(1.0);
    report.checks.push(CheckOutcome {
        name: "generalized-inverse".into(),
        passed: proj_res <= proj_tol,
        detail: format!("L†L minus (I - J/n): {proj_res:.3e}"),
    });
    report.generalized_inverse_residual = Some(proj_res);

    let value = spherical_edm_check(g)?;
    let expected = 2.0 / g.total_weight();
    report.checks.push(CheckOutcome {
        name: "spherical-edm".into(),
        passed: value > 0.0 && (value - expected).abs() <= tol.max(DEFAULT_TOL * expected),
        detail: format!("1^T D(G)^-1 1 = {value}, expected 2/sum(w) = {expected}"),
    });
    report.spherical_value = Some(value);
    report.spherical_expected = Some(expected);
    Ok(report)
}
