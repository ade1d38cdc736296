//! Solver-agnostic mixed-integer models for extremal tree problems.
//!
//! A model has binaries `x_i_j` (edge present), continuous `d_i_j`
//! (distance), and one auxiliary `y_i_k_j = x_ik · d_kj` per bilinear product
//! that appears when the tree identity is expanded entrywise. Each auxiliary
//! is linearized with its four McCormick inequalities. All labels in names
//! are 1-based with `i < j` for pair variables.

mod build;
mod check;
mod emit;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::problem::Sense;

pub use build::{
    attach_objective, attach_side_constraints, build_model, derive_product_inventory, reference_auxiliary_count,
};
pub use check::{
    check_solution, tree_assignment, BoundViolation, Checker, SolutionAssignment, TreeReconstruction, Violation,
    ViolationReport, INTEGRALITY_TOL,
};
pub use emit::{emit, emit_json, emit_lp, emit_mps, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    /// All `n²` entries of the identity.
    Full,
    /// Strict upper triangle plus `d_ij ≥ x_ij / μ_ij`.
    Reduced,
}

impl Formulation {
    pub fn name(self) -> &'static str {
        match self {
            Formulation::Full => "full",
            Formulation::Reduced => "reduced",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowSense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl RowSense {
    pub fn symbol(self) -> &'static str {
        match self {
            RowSense::Le => "<=",
            RowSense::Eq => "=",
            RowSense::Ge => ">=",
        }
    }

    /// How far `lhs` is on the wrong side of `rhs` (zero when satisfied).
    pub fn excess(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            RowSense::Le => (lhs - rhs).max(0.0),
            RowSense::Ge => (rhs - lhs).max(0.0),
            RowSense::Eq => (lhs - rhs).abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowRole {
    Characterization,
    EdgeLowerBound,
    McCormick,
    Degree,
    Fixing,
    DistanceBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub var: String,
}

impl Term {
    pub fn new(coef: f64, var: impl Into<String>) -> Self {
        Term { coef, var: var.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub name: String,
    pub role: RowRole,
    pub terms: Vec<Term>,
    pub sense: RowSense,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Objective {
    pub sense: Sense,
    /// `none` until an objective is attached.
    pub kind: String,
    pub terms: Vec<Term>,
}

/// One auxiliary product `aux = x · d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub aux: String,
    pub x: String,
    pub d: String,
}

/// The bilinear products the model linearizes, and how their number
/// compares with the `n(n−1)(n−2)/6` count of products `x_ik d_kj`, `i<k<j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxInventory {
    pub products: Vec<Product>,
    /// Products `x_ij · d_ij` on a single pair.
    pub same_pair: usize,
    /// Products `x_ik · d_kj` on two pairs sharing vertex `k`.
    pub cross_pair: usize,
    pub reference_count: usize,
    pub discrepancy: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MilpModel {
    pub n: usize,
    pub formulation: Formulation,
    pub mu: DenseMatrix,
    /// Upper bound `U` on every distance and auxiliary variable.
    pub distance_upper_bound: f64,
    pub variables: Vec<Variable>,
    pub constraints: Vec<LinearConstraint>,
    pub objective: Objective,
    pub aux_inventory: AuxInventory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCounts {
    pub binaries: usize,
    pub distances: usize,
    pub auxiliaries: usize,
    pub characterization: usize,
    pub edge_lower_bounds: usize,
    pub mccormick: usize,
    pub side: usize,
    pub rows: usize,
}

pub fn x_name(i: usize, j: usize) -> String {
    let (a, b) = (i.min(j), i.max(j));
    format!("x_{}_{}", a + 1, b + 1)
}

pub fn d_name(i: usize, j: usize) -> String {
    let (a, b) = (i.min(j), i.max(j));
    format!("d_{}_{}", a + 1, b + 1)
}

impl MilpModel {
    pub fn counts(&self) -> ModelCounts {
        let prefix = |p: &str| self.variables.iter().filter(|v| v.name.starts_with(p)).count();
        let role = |r: RowRole| self.constraints.iter().filter(|c| c.role == r).count();
        ModelCounts {
            binaries: self.variables.iter().filter(|v| v.kind == VarKind::Binary).count(),
            distances: prefix("d_"),
            auxiliaries: prefix("y_"),
            characterization: role(RowRole::Characterization),
            edge_lower_bounds: role(RowRole::EdgeLowerBound),
            mccormick: role(RowRole::McCormick),
            side: role(RowRole::Degree) + role(RowRole::Fixing) + role(RowRole::DistanceBound),
            rows: self.constraints.len(),
        }
    }

    pub fn variable_index(&self) -> HashMap<&str, usize> {
        self.variables.iter().enumerate().map(|(k, v)| (v.name.as_str(), k)).collect()
    }

    /// Structural checks applied to models read from files.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if self.n < 2 {
            return bad(format!("n = {} (need n >= 2)", self.n));
        }
        if self.mu.rows() != self.n || self.mu.cols() != self.n {
            return bad("μ has the wrong shape".into());
        }
        crate::problem::validate_mu(self.n, &self.mu).map_err(|e| Error::InvalidModel(e.to_string()))?;
        let mut names = HashSet::new();
        for v in &self.variables {
            if !names.insert(v.name.as_str()) {
                return bad(format!("duplicate variable `{}`", v.name));
            }
            if !(v.lower.is_finite() && v.upper.is_finite() && v.lower <= v.upper) {
                return bad(format!("variable `{}` has invalid bounds [{}, {}]", v.name, v.lower, v.upper));
            }
            if v.kind == VarKind::Binary && (v.lower != 0.0 || v.upper != 1.0) {
                return bad(format!("binary `{}` must have bounds [0, 1]", v.name));
            }
        }
        let mut rows = HashSet::new();
        for c in &self.constraints {
            if !rows.insert(c.name.as_str()) {
                return bad(format!("duplicate constraint `{}`", c.name));
            }
            if c.terms.is_empty() {
                return bad(format!("constraint `{}` has no terms", c.name));
            }
            if !c.rhs.is_finite() {
                return bad(format!("constraint `{}` has a non-finite right-hand side", c.name));
            }
            for t in &c.terms {
                if !t.coef.is_finite() || !names.contains(t.var.as_str()) {
                    return bad(format!("constraint `{}` has an invalid term on `{}`", c.name, t.var));
                }
            }
        }
        for t in &self.objective.terms {
            if !t.coef.is_finite() || !names.contains(t.var.as_str()) {
                return bad(format!("objective has an invalid term on `{}`", t.var));
            }
        }
        for p in &self.aux_inventory.products {
            if ![&p.aux, &p.x, &p.d].iter().all(|n| names.contains(n.as_str())) {
                return bad(format!("product `{}` references unknown variables", p.aux));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: MilpModel = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }

    /// Index-based form for evaluating many assignments.
    pub fn compile(&self) -> CompiledModel {
        let index = self.variable_index();
        let lower =
            |terms: &[Term]| -> Vec<(f64, usize)> { terms.iter().map(|t| (t.coef, index[t.var.as_str()])).collect() };
        CompiledModel {
            rows: self.constraints.iter().map(|c| (lower(&c.terms), c.sense, c.rhs)).collect(),
            objective: lower(&self.objective.terms),
        }
    }

    /// Objective value of a complete assignment.
    pub fn evaluate_objective(&self, values: &SolutionAssignment) -> Result<f64> {
        self.objective
            .terms
            .iter()
            .map(|t| values.get(&t.var).map(|v| t.coef * v).ok_or_else(|| Error::MissingVariable(t.var.clone())))
            .sum()
    }
}

/// `(coefficient, variable position)` pairs, a sense, and a right-hand side.
pub type CompiledRow = (Vec<(f64, usize)>, RowSense, f64);

/// Constraints and objective with variables replaced by their positions.
#[derive(Debug, Clone)]
pub struct CompiledModel {
    pub rows: Vec<CompiledRow>,
    pub objective: Vec<(f64, usize)>,
}

impl CompiledModel {
    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().map(|&(c, k)| c * values[k]).sum()
    }

    /// Left-hand side and scaled violation of row `r`.
    pub fn row_excess(&self, r: usize, values: &[f64]) -> (f64, f64) {
        let (terms, sense, rhs) = &self.rows[r];
        let mut lhs = 0.0;
        let mut scale = rhs.abs().max(1.0);
        for &(c, k) in terms {
            let t = c * values[k];
            lhs += t;
            scale = scale.max(t.abs());
        }
        (lhs, sense.excess(lhs, *rhs) / scale)
    }
}
