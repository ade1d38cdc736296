//! Exhaustive reference computations over all labeled trees (via Prüfer
//! codes) and all graphs on a handful of vertices. Everything here is
//! exponential in `n` and guarded by an explicit limit.

use std::collections::BTreeMap;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::identity::DistanceSystem;
use crate::linalg::{self, DenseMatrix};
use crate::milp::{
    attach_objective, build_model, tree_assignment, Checker, Formulation, RowRole, RowSense, SolutionAssignment,
    VarKind,
};
use crate::paths::tree_distance_matrix;
use crate::problem::{reciprocal_weighted, validate_mu, ObjectiveSpec, Sense, SideConstraints};
use crate::prufer::PruferCode;

/// Largest `n` enumerated unless the caller raises the limit. `9⁷ ≈ 4.8M` trees.
pub const DEFAULT_MAX_N: usize = 9;

/// Largest `n` for checks that enumerate all `2^(n(n−1)/2)` graphs.
pub const MAX_GRAPH_ENUMERATION_N: usize = 5;

const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeWeights {
    Unit,
    /// Edge `ij` gets weight `1/μ_ij`.
    Reciprocal(DenseMatrix),
}

impl EdgeWeights {
    pub fn apply(&self, topology: &WeightedGraph) -> WeightedGraph {
        match self {
            EdgeWeights::Unit => topology.unit(),
            EdgeWeights::Reciprocal(mu) => reciprocal_weighted(topology, mu),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            EdgeWeights::Unit => Ok(()),
            EdgeWeights::Reciprocal(mu) => validate_mu(n, mu),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumeratedTree {
    pub code: PruferCode,
    pub tree: WeightedGraph,
    pub distances: DenseMatrix,
}

fn tree_count(n: usize, max_n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("n = {n}, need n >= 2")));
    }
    if n > max_n {
        return Err(Error::EnumerationLimit { n, limit: max_n });
    }
    PruferCode::count(n).ok_or(Error::EnumerationLimit { n, limit: max_n })
}

fn enumerated(n: usize, index: u64, weights: &EdgeWeights) -> EnumeratedTree {
    let code = PruferCode::from_index(n, index).expect("index below count");
    let tree = weights.apply(&code.decode());
    let distances = tree_distance_matrix(&tree).expect("decoded codes are trees");
    EnumeratedTree { code, tree, distances }
}

/// All `n^(n−2)` labeled trees in Prüfer-code order, with their distance
/// matrices under `weights`.
pub fn enumerate_trees(n: usize, weights: EdgeWeights, max_n: usize) -> Result<impl Iterator<Item = EnumeratedTree>> {
    let total = tree_count(n, max_n)?;
    weights.validate(n)?;
    Ok((0..total).map(move |k| enumerated(n, k, &weights)))
}

/// Objective value of one tree, accumulated in the same term order the
/// model uses: pairs `i < j` row by row, edge term before distance term.
pub fn tree_objective(spec: &ObjectiveSpec, tree: &WeightedGraph, distances: &DenseMatrix) -> f64 {
    let n = tree.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (c, m) = spec.coefficients(i, j);
            if c != 0.0 && tree.has_edge(i, j) {
                total += c;
            }
            if m != 0.0 {
                total += m * distances[(i, j)];
            }
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub n: usize,
    pub sense: Sense,
    pub objective: String,
    pub best_value: f64,
    /// Lexicographically smallest optimal code.
    pub best_code: PruferCode,
    /// 1-based edges of the tree `best_code` encodes.
    pub best_edges: Vec<(usize, usize)>,
    /// Number of optimal trees.
    pub ties: usize,
    /// Trees satisfying the side constraints.
    pub evaluated: u64,
    pub enumerated: u64,
    /// Every optimal code, in lexicographic order.
    pub optimizers: Vec<PruferCode>,
}

struct Partial {
    best: Option<(f64, Vec<PruferCode>)>,
    evaluated: u64,
}

fn merge(sense: Sense, acc: &mut Option<(f64, Vec<PruferCode>)>, value: f64, codes: Vec<PruferCode>) {
    match acc {
        None => *acc = Some((value, codes)),
        Some((best, list)) => {
            if sense.improves(value, *best) {
                *acc = Some((value, codes));
            } else if value == *best {
                list.extend(codes);
            }
        }
    }
}

fn scan(
    n: usize,
    range: std::ops::Range<u64>,
    weights: &EdgeWeights,
    spec: &ObjectiveSpec,
    sense: Sense,
    side: &SideConstraints,
) -> Partial {
    let mut best = None;
    let mut evaluated = 0;
    for k in range {
        let t = enumerated(n, k, weights);
        if !side.admits(&t.tree, &t.distances, CHECK_TOL) {
            continue;
        }
        evaluated += 1;
        let value = tree_objective(spec, &t.tree, &t.distances);
        merge(sense, &mut best, value, vec![t.code]);
    }
    Partial { best, evaluated }
}

/// Finds every optimal tree by enumeration, split across `workers` threads
/// over contiguous code ranges (`0` means one per available core). Ties are
/// exact floating-point equality; each tree's value is computed the same way
/// regardless of partitioning, so the result does not depend on `workers`.
pub fn brute_force_optimize(
    n: usize,
    spec: &ObjectiveSpec,
    sense: Sense,
    side: &SideConstraints,
    mu: &DenseMatrix,
    workers: usize,
    max_n: usize,
) -> Result<OptimizationResult> {
    let total = tree_count(n, max_n)?;
    validate_mu(n, mu)?;
    spec.validate(n)?;
    side.validate(n)?;
    let weights = EdgeWeights::Reciprocal(mu.clone());

    let workers = match workers {
        0 => thread::available_parallelism().map_or(1, |p| p.get()),
        w => w,
    };
    let chunks = (workers as u64).clamp(1, total);
    let bounds: Vec<u64> = (0..=chunks).map(|c| total * c / chunks).collect();
    let partials: Vec<Partial> = thread::scope(|s| {
        let handles: Vec<_> = bounds
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                let weights = &weights;
                s.spawn(move || scan(n, lo..hi, weights, spec, sense, side))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut best = None;
    let mut evaluated = 0;
    for p in partials {
        evaluated += p.evaluated;
        if let Some((v, codes)) = p.best {
            merge(sense, &mut best, v, codes);
        }
    }
    let (best_value, mut optimizers) = best.ok_or(Error::Infeasible)?;
    optimizers.sort();
    let best_code = optimizers[0].clone();
    let best_edges = best_code.decode().edges().map(|(i, j, _)| (i + 1, j + 1)).collect();
    Ok(OptimizationResult {
        n,
        sense,
        objective: spec.name().into(),
        best_value,
        best_code,
        best_edges,
        ties: optimizers.len(),
        evaluated,
        enumerated: total,
        optimizers,
    })
}

/// Every simple graph on `n` labeled vertices, indexed by a bitmask over
/// pairs `i < j` in row order.
pub fn all_graphs(n: usize) -> Result<impl Iterator<Item = WeightedGraph>> {
    if !(2..=MAX_GRAPH_ENUMERATION_N).contains(&n) {
        return Err(Error::EnumerationLimit { n, limit: MAX_GRAPH_ENUMERATION_N });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let count = 1u64 << pairs.len();
    Ok((0..count).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p);
        WeightedGraph::unweighted(n, edges).expect("distinct pairs")
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub n: usize,
    pub graphs: u64,
    pub trees: u64,
    /// Graphs whose system (identity, zero diagonal, symmetry) is consistent.
    pub consistent: u64,
    /// Consistent graphs with a unique solution.
    pub unique: u64,
    /// Largest `|D_solved − D(G)|` over trees.
    pub max_distance_error: f64,
    /// 1-based edge lists of graphs where consistency disagrees with
    /// tree-ness or the solved matrix is not the distance matrix.
    pub counterexamples: Vec<Vec<(usize, usize)>>,
}

impl ConverseReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.consistent == self.trees && self.unique == self.trees
    }
}

/// Solves the identity for `D` on every unweighted graph with `n ≤ 5`
/// vertices and checks the system is solvable exactly for trees, with the
/// distance matrix as its only solution.
pub fn exhaustive_converse_check(n: usize) -> Result<ConverseReport> {
    let mut report = ConverseReport {
        n,
        graphs: 0,
        trees: 0,
        consistent: 0,
        unique: 0,
        max_distance_error: 0.0,
        counterexamples: Vec::new(),
    };
    for g in all_graphs(n)? {
        report.graphs += 1;
        let is_tree = g.is_tree();
        report.trees += u64::from(is_tree);
        let solved = DistanceSystem::default().solve(&g, CHECK_TOL)?;
        report.consistent += u64::from(solved.consistent);
        let unique = solved.is_unique(n * n);
        report.unique += u64::from(unique);
        let mut ok = solved.consistent == is_tree && unique == is_tree;
        if is_tree && unique {
            let x = solved.solution.expect("consistent");
            let d = tree_distance_matrix(&g)?;
            let err = (0..n * n).map(|k| (x[(k, 0)] - d[(k / n, k % n)]).abs()).fold(0.0, f64::max);
            report.max_distance_error = report.max_distance_error.max(err);
            ok &= err <= CHECK_TOL;
        }
        if !ok {
            report.counterexamples.push(g.edges().map(|(i, j, _)| (i + 1, j + 1)).collect());
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub n: usize,
    pub formulation: Formulation,
    pub trees: u64,
    /// Tree assignments the model accepts.
    pub feasible: u64,
    /// Trees where the model objective differs from the direct value.
    pub objective_mismatches: u64,
    pub max_objective_gap: f64,
    pub model_optimum: f64,
    pub oracle_optimum: f64,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl CrossValidationReport {
    pub fn holds(&self) -> bool {
        self.feasible == self.trees && self.objective_mismatches == 0 && self.model_optimum == self.oracle_optimum
    }
}

const MAX_REPORTED: usize = 10;

/// Checks the model against enumeration: every tree's induced assignment is
/// feasible, its model objective equals the tree's value, and the best
/// assignment value equals the enumerated optimum.
pub fn cross_validate_model(
    n: usize,
    spec: &ObjectiveSpec,
    sense: Sense,
    mu: &DenseMatrix,
    formulation: Formulation,
    max_n: usize,
) -> Result<CrossValidationReport> {
    let model = attach_objective(build_model(n, mu, formulation)?, spec, sense)?;
    let checker = Checker::new(&model);
    let mut report = CrossValidationReport {
        n,
        formulation,
        trees: 0,
        feasible: 0,
        objective_mismatches: 0,
        max_objective_gap: 0.0,
        model_optimum: f64::NAN,
        oracle_optimum: f64::NAN,
        failures: Vec::new(),
    };
    let note = |report: &mut CrossValidationReport, msg: String| {
        if report.failures.len() < MAX_REPORTED {
            report.failures.push(msg);
        }
    };
    for t in enumerate_trees(n, EdgeWeights::Reciprocal(mu.clone()), max_n)? {
        report.trees += 1;
        let assignment = tree_assignment(&model, &t.code.decode())?;
        let values = checker.values(&assignment)?;
        let check = checker.check_values(&values, CHECK_TOL);
        if check.feasible {
            report.feasible += 1;
        } else {
            let first =
                check.violations.first().map_or("bounds or reconstruction".to_string(), |v| v.constraint.clone());
            note(&mut report, format!("tree {:?} rejected at {first}", t.code.labels()));
        }
        let direct = tree_objective(spec, &t.tree, &t.distances);
        let gap = (check.objective_value - direct).abs();
        report.max_objective_gap = report.max_objective_gap.max(gap);
        if gap > CHECK_TOL * direct.abs().max(1.0) {
            report.objective_mismatches += 1;
            note(
                &mut report,
                format!("tree {:?}: model {} vs direct {direct}", t.code.labels(), check.objective_value),
            );
        }
        for (slot, v) in [(&mut report.model_optimum, check.objective_value), (&mut report.oracle_optimum, direct)] {
            if slot.is_nan() || sense.improves(v, *slot) {
                *slot = v;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub n: usize,
    pub formulation: Formulation,
    /// Binary edge vectors examined: `2^(n(n−1)/2)`.
    pub assignments: u64,
    pub trees: u64,
    /// Trees whose constraints admit exactly the tree distances.
    pub trees_recovered: u64,
    /// Non-trees whose equalities have no solution in `d`.
    pub non_trees_inconsistent: u64,
    /// Non-trees whose equalities are solvable but no solution satisfies
    /// the bounds and remaining inequalities.
    pub non_trees_rejected_by_inequalities: u64,
    /// Of those, how many had a solution set of positive dimension.
    pub non_trees_underdetermined: u64,
    /// Non-trees that admit a feasible `d`.
    pub non_trees_accepted: u64,
    /// 1-based edge lists of accepted non-trees and unrecovered trees.
    pub counterexamples: Vec<Vec<(usize, usize)>>,
}

impl SoundnessReport {
    pub fn holds(&self) -> bool {
        self.trees_recovered == self.trees && self.non_trees_accepted == 0 && self.counterexamples.is_empty()
    }
}

/// A row `a·d ≥ b` over the distance variables.
type Inequality = (Vec<f64>, f64);

/// Decides whether `{t : g·t ≥ h for every row}` is non-empty by
/// Fourier–Motzkin elimination. Intended for a handful of variables.
fn polyhedron_nonempty(mut rows: Vec<Inequality>, vars: usize, tol: f64) -> bool {
    for k in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (g, h) in rows {
            if g[k] > tol {
                pos.push((g, h));
            } else if g[k] < -tol {
                neg.push((g, h));
            } else {
                rest.push((g, h));
            }
        }
        for (gp, hp) in &pos {
            for (gq, hq) in &neg {
                let (sp, sq) = (1.0 / gp[k], -1.0 / gq[k]);
                let g: Vec<f64> = gp.iter().zip(gq).map(|(a, b)| a * sp + b * sq).collect();
                rest.push((g, hp * sp + hq * sq));
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, h)| *h <= tol)
}

/// Fixes every binary vector `x`, replaces each auxiliary by `x·d` (which
/// the McCormick rows force at binary points), and decides whether any `d`
/// satisfies the characterization equalities, the bounds `0 ≤ d ≤ U`, and
/// the remaining inequalities. Unique solutions are checked directly;
/// solution sets of positive dimension are decided exactly over a null-space
/// parametrization. Sound means no non-tree `x` is feasible and each tree's
/// `d` is its distance matrix.
pub fn exhaustive_soundness_check(n: usize, mu: &DenseMatrix, formulation: Formulation) -> Result<SoundnessReport> {
    let model = build_model(n, mu, formulation)?;
    let checker = Checker::new(&model);
    let products: BTreeMap<&str, (&str, &str)> =
        model.aux_inventory.products.iter().map(|p| (p.aux.as_str(), (p.x.as_str(), p.d.as_str()))).collect();
    let d_vars: Vec<&str> = model
        .variables
        .iter()
        .filter(|v| v.kind == VarKind::Continuous && v.name.starts_with("d_"))
        .map(|v| v.name.as_str())
        .collect();
    let d_col: BTreeMap<&str, usize> = d_vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let equalities: Vec<_> = model.constraints.iter().filter(|c| c.role == RowRole::Characterization).collect();
    let others: Vec<_> = model
        .constraints
        .iter()
        .filter(|c| !matches!(c.role, RowRole::Characterization | RowRole::McCormick))
        .collect();
    let upper = model.distance_upper_bound;

    // Row `c` with `x` fixed, as coefficients on `d` and a right-hand side.
    let substitute = |c: &crate::milp::LinearConstraint, x: &SolutionAssignment| -> (Vec<f64>, f64) {
        let mut a = vec![0.0; d_vars.len()];
        let mut rhs = c.rhs;
        for t in &c.terms {
            if let Some(v) = x.get(&t.var) {
                rhs -= t.coef * v;
            } else if let Some(&col) = d_col.get(t.var.as_str()) {
                a[col] += t.coef;
            } else {
                let (xv, dv) = products[t.var.as_str()];
                a[d_col[dv]] += t.coef * x.get(xv).expect("x fixed");
            }
        }
        (a, rhs)
    };

    let mut report = SoundnessReport {
        n,
        formulation,
        assignments: 0,
        trees: 0,
        trees_recovered: 0,
        non_trees_inconsistent: 0,
        non_trees_rejected_by_inequalities: 0,
        non_trees_underdetermined: 0,
        non_trees_accepted: 0,
        counterexamples: Vec::new(),
    };
    for g in all_graphs(n)? {
        report.assignments += 1;
        let is_tree = g.is_tree();
        report.trees += u64::from(is_tree);
        let edge_list = || g.edges().map(|(i, j, _)| (i + 1, j + 1)).collect::<Vec<_>>();
        let mut x = SolutionAssignment::default();
        for i in 0..n {
            for j in i + 1..n {
                x.set(crate::milp::x_name(i, j), if g.has_edge(i, j) { 1.0 } else { 0.0 });
            }
        }

        let mut a = DenseMatrix::zeros(equalities.len(), d_vars.len());
        let mut b = DenseMatrix::zeros(equalities.len(), 1);
        for (r, c) in equalities.iter().enumerate() {
            let (coefs, rhs) = substitute(c, &x);
            for (k, v) in coefs.into_iter().enumerate() {
                a[(r, k)] = v;
            }
            b[(r, 0)] = rhs;
        }
        let tol = linalg::default_tolerance(&a);
        let solved = linalg::solve_consistent(&a, &b, tol)?;
        if !solved.consistent {
            if is_tree {
                report.counterexamples.push(edge_list());
            } else {
                report.non_trees_inconsistent += 1;
            }
            continue;
        }
        let unique = solved.is_unique(d_vars.len());
        let d0 = solved.solution.expect("consistent");

        if !unique {
            if is_tree {
                report.counterexamples.push(edge_list());
                continue;
            }
            report.non_trees_underdetermined += 1;
            // d = d0 + N·t; every inequality becomes a row over t.
            let basis = linalg::null_space(&a, tol);
            let mut ineqs: Vec<Inequality> = Vec::new();
            let mut push = |coefs: &[f64], sense: RowSense, rhs: f64| {
                let g: Vec<f64> =
                    (0..basis.cols()).map(|f| (0..coefs.len()).map(|k| coefs[k] * basis[(k, f)]).sum()).collect();
                let h = rhs - (0..coefs.len()).map(|k| coefs[k] * d0[(k, 0)]).sum::<f64>();
                if sense != RowSense::Ge {
                    ineqs.push((g.iter().map(|v| -v).collect(), -h));
                }
                if sense != RowSense::Le {
                    ineqs.push((g, h));
                }
            };
            for k in 0..d_vars.len() {
                let mut unit = vec![0.0; d_vars.len()];
                unit[k] = 1.0;
                push(&unit, RowSense::Ge, 0.0);
                push(&unit, RowSense::Le, upper);
            }
            for c in &others {
                let (coefs, rhs) = substitute(c, &x);
                push(&coefs, c.sense, rhs);
            }
            if polyhedron_nonempty(ineqs, basis.cols(), CHECK_TOL) {
                report.non_trees_accepted += 1;
                report.counterexamples.push(edge_list());
            } else {
                report.non_trees_rejected_by_inequalities += 1;
            }
            continue;
        }

        let mut full = x.clone();
        for (k, &dv) in d_vars.iter().enumerate() {
            full.set(dv, d0[(k, 0)]);
        }
        for (&aux, &(xv, dv)) in &products {
            full.set(aux, x.get(xv).expect("x fixed") * full.get(dv).expect("d set"));
        }
        let values: Vec<f64> = model.variables.iter().map(|v| full.get(&v.name).expect("complete")).collect();
        let check = checker.check_values(&values, CHECK_TOL);
        let rows_ok = check.violations.is_empty() && check.bound_violations.is_empty();
        if is_tree {
            if rows_ok && check.tree.distances_agree {
                report.trees_recovered += 1;
            } else {
                report.counterexamples.push(edge_list());
            }
        } else if rows_ok {
            report.non_trees_accepted += 1;
            report.counterexamples.push(edge_list());
        } else {
            report.non_trees_rejected_by_inequalities += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::unit_mu;

    #[test]
    fn tree_counts() {
        for (n, expected) in [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)] {
            assert_eq!(enumerate_trees(n, EdgeWeights::Unit, DEFAULT_MAX_N).unwrap().count(), expected);
        }
        assert!(matches!(enumerate_trees(10, EdgeWeights::Unit, DEFAULT_MAX_N), Err(Error::EnumerationLimit { .. })));
    }

    #[test]
    fn wiener_extremes_small() {
        let side = SideConstraints::default();
        let min = brute_force_optimize(4, &ObjectiveSpec::Wiener, Sense::Minimize, &side, &unit_mu(4), 2, 9).unwrap();
        assert_eq!(min.best_value, 9.0);
        assert_eq!(min.ties, 4);
        let max = brute_force_optimize(4, &ObjectiveSpec::Wiener, Sense::Maximize, &side, &unit_mu(4), 3, 9).unwrap();
        assert_eq!(max.best_value, 10.0);
        assert_eq!(max.ties, 12);
        assert_eq!(max.evaluated, 16);
    }

    #[test]
    fn infeasible_side_constraints() {
        // every tree on 4 vertices has diameter at least 2
        let side = SideConstraints { diameter: Some(1.0), ..Default::default() };
        let r = brute_force_optimize(4, &ObjectiveSpec::Wiener, Sense::Minimize, &side, &unit_mu(4), 1, 9);
        assert_eq!(r.unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn more_workers_than_trees() {
        let r =
            brute_force_optimize(3, &ObjectiveSpec::Wiener, Sense::Minimize, &Default::default(), &unit_mu(3), 16, 9)
                .unwrap();
        assert_eq!(r.ties, 3);
        let r2 =
            brute_force_optimize(2, &ObjectiveSpec::Wiener, Sense::Maximize, &Default::default(), &unit_mu(2), 4, 9)
                .unwrap();
        assert_eq!(r2.best_edges, vec![(1, 2)]);
    }

    #[test]
    fn converse_small() {
        let r = exhaustive_converse_check(3).unwrap();
        assert_eq!((r.graphs, r.trees), (8, 3));
        assert!(r.holds(), "{r:?}");
        assert!(exhaustive_converse_check(6).is_err());
    }

    #[test]
    fn cross_validation_small() {
        for form in [Formulation::Full, Formulation::Reduced] {
            let r = cross_validate_model(4, &ObjectiveSpec::Wiener, Sense::Minimize, &unit_mu(4), form, 9).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.oracle_optimum, 9.0);
        }
    }

    #[test]
    fn fourier_motzkin() {
        // t ≥ 1 and t ≤ 2
        assert!(polyhedron_nonempty(vec![(vec![1.0], 1.0), (vec![-1.0], -2.0)], 1, 1e-12));
        // t ≥ 2 and t ≤ 1
        assert!(!polyhedron_nonempty(vec![(vec![1.0], 2.0), (vec![-1.0], -1.0)], 1, 1e-12));
        // s + t ≥ 3, s ≤ 1, t ≤ 1
        let rows = vec![(vec![1.0, 1.0], 3.0), (vec![-1.0, 0.0], -1.0), (vec![0.0, -1.0], -1.0)];
        assert!(!polyhedron_nonempty(rows, 2, 1e-12));
    }

    #[test]
    fn soundness_n3() {
        let r = exhaustive_soundness_check(3, &unit_mu(3), Formulation::Full).unwrap();
        assert_eq!(r.assignments, 8);
        assert!(r.holds(), "{r:?}");
    }
}
