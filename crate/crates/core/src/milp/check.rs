use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{d_name, x_name, CompiledModel, MilpModel, RowRole, VarKind};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::paths::tree_distance_matrix;
use crate::problem::reciprocal_weighted;

/// Binaries must lie this close to 0 or 1.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Variable name → value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SolutionAssignment(pub BTreeMap<String, f64>);

impl SolutionAssignment {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Accepts a JSON object `{"x_1_2": 1, ...}` or `name value` lines
    /// (blank lines and `#` comments skipped), as written by most solvers.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let map: BTreeMap<String, f64> = serde_json::from_str(trimmed)?;
            if let Some((k, _)) = map.iter().find(|(_, v)| !v.is_finite()) {
                return Err(Error::Parse(format!("value of `{k}` is not finite")));
            }
            return Ok(SolutionAssignment(map));
        }
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("line {}: expected `name value`", lineno + 1)));
            };
            let value: f64 = value
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::Parse(format!("line {}: `{value}` is not a finite number", lineno + 1)))?;
            if map.insert(name.to_string(), value).is_some() {
                return Err(Error::Parse(format!("line {}: `{name}` assigned twice", lineno + 1)));
            }
        }
        Ok(SolutionAssignment(map))
    }

    pub fn to_sol_lines(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: String,
    pub role: RowRole,
    pub lhs: f64,
    pub sense: String,
    pub rhs: f64,
    /// Violation relative to the row's magnitude.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub variable: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeReconstruction {
    /// 1-based edges with `x ≥ 1/2`.
    pub edges: Vec<(usize, usize)>,
    pub is_tree: bool,
    /// max |d_ij − D(tree)_ij| under weights `1/μ`, when the edges form a tree.
    pub max_distance_deviation: Option<f64>,
    pub distances_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub feasible: bool,
    pub violations: Vec<Violation>,
    pub bound_violations: Vec<BoundViolation>,
    pub integrality_violations: Vec<String>,
    pub tree: TreeReconstruction,
    pub objective_value: f64,
}

/// Reusable checker: compiles the model once.
pub struct Checker<'a> {
    model: &'a MilpModel,
    compiled: CompiledModel,
}

impl<'a> Checker<'a> {
    pub fn new(model: &'a MilpModel) -> Self {
        Checker { model, compiled: model.compile() }
    }

    pub fn values(&self, s: &SolutionAssignment) -> Result<Vec<f64>> {
        self.model
            .variables
            .iter()
            .map(|v| s.get(&v.name).ok_or_else(|| Error::MissingVariable(v.name.clone())))
            .collect()
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.compiled.objective_value(values)
    }

    pub fn check(&self, s: &SolutionAssignment, tol: f64) -> Result<ViolationReport> {
        let values = self.values(s)?;
        Ok(self.check_values(&values, tol))
    }

    pub fn check_values(&self, values: &[f64], tol: f64) -> ViolationReport {
        let m = self.model;
        let mut bound_violations = Vec::new();
        let mut integrality_violations = Vec::new();
        for (v, &val) in m.variables.iter().zip(values) {
            if val < v.lower - tol || val > v.upper + tol {
                bound_violations.push(BoundViolation {
                    variable: v.name.clone(),
                    value: val,
                    lower: v.lower,
                    upper: v.upper,
                });
            }
            if v.kind == VarKind::Binary && val.abs().min((val - 1.0).abs()) > INTEGRALITY_TOL {
                integrality_violations.push(v.name.clone());
            }
        }

        let mut violations = Vec::new();
        for (r, c) in m.constraints.iter().enumerate() {
            let (lhs, excess) = self.compiled.row_excess(r, values);
            if excess > tol {
                violations.push(Violation {
                    constraint: c.name.clone(),
                    role: c.role,
                    lhs,
                    sense: c.sense.symbol().into(),
                    rhs: c.rhs,
                    excess,
                });
            }
        }

        let tree = self.reconstruct(values, tol);
        let feasible = violations.is_empty()
            && bound_violations.is_empty()
            && integrality_violations.is_empty()
            && tree.is_tree
            && tree.distances_agree;
        ViolationReport {
            feasible,
            violations,
            bound_violations,
            integrality_violations,
            tree,
            objective_value: self.compiled.objective_value(values),
        }
    }

    fn reconstruct(&self, values: &[f64], tol: f64) -> TreeReconstruction {
        let m = self.model;
        let n = m.n;
        let index = m.variable_index();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if values[index[x_name(i, j).as_str()]] >= 0.5 {
                    edges.push((i, j));
                }
            }
        }
        let graph = WeightedGraph::unweighted(n, edges.iter().copied()).expect("pairs are distinct and in range");
        let is_tree = graph.is_tree();
        let mut max_distance_deviation = None;
        if is_tree {
            let weighted = reciprocal_weighted(&graph, &m.mu);
            let dist = tree_distance_matrix(&weighted).expect("checked tree");
            let mut dev: f64 = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    dev = dev.max((values[index[d_name(i, j).as_str()]] - dist[(i, j)]).abs());
                }
            }
            max_distance_deviation = Some(dev);
        }
        let scale = m.distance_upper_bound.max(1.0);
        TreeReconstruction {
            edges: edges.into_iter().map(|(i, j)| (i + 1, j + 1)).collect(),
            is_tree,
            distances_agree: max_distance_deviation.is_some_and(|dev| dev <= tol * scale),
            max_distance_deviation,
        }
    }
}

/// Lists every violated row, bound, and integrality condition, and checks
/// that the `x` values form a tree whose distances (under weights `1/μ`)
/// match the `d` values.
pub fn check_solution(model: &MilpModel, s: &SolutionAssignment, tol: f64) -> Result<ViolationReport> {
    Checker::new(model).check(s, tol)
}

/// The assignment a tree induces: `x` from its edges, `d` from its distances
/// under weights `1/μ`, and every auxiliary set to its product.
pub fn tree_assignment(model: &MilpModel, topology: &WeightedGraph) -> Result<SolutionAssignment> {
    if topology.n() != model.n {
        return Err(Error::DimensionMismatch {
            expected: format!("{} vertices", model.n),
            got: format!("{}", topology.n()),
        });
    }
    topology.require_tree()?;
    let n = model.n;
    let dist = tree_distance_matrix(&reciprocal_weighted(topology, &model.mu))?;
    let mut s = SolutionAssignment::default();
    for i in 0..n {
        for j in i + 1..n {
            s.set(x_name(i, j), if topology.has_edge(i, j) { 1.0 } else { 0.0 });
            s.set(d_name(i, j), dist[(i, j)]);
        }
    }
    for p in &model.aux_inventory.products {
        let value = s.get(&p.x).expect("x set above") * s.get(&p.d).expect("d set above");
        s.set(p.aux.clone(), value);
    }
    Ok(s)
}
