use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{
    d_name, x_name, AuxInventory, Formulation, LinearConstraint, MilpModel, Objective, Product, RowRole, RowSense,
    Term, VarKind, Variable,
};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::problem::{distance_upper_bound, validate_mu, ObjectiveSpec, Sense, SideConstraints};

type Pair = (usize, usize);
/// `(x pair, d pair)`, both canonical and 0-based.
type ProductKey = (Pair, Pair);

fn pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

/// `n(n−1)(n−2)/6`: one product `x_ik d_kj` per triple `i < k < j`.
pub fn reference_auxiliary_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

fn aux_name(((a, b), (c, e)): ProductKey) -> String {
    if (a, b) == (c, e) {
        return format!("y_{}_{}_{}", a + 1, b + 1, a + 1);
    }
    let shared = if a == c || a == e { a } else { b };
    let i = if a == shared { b } else { a };
    let j = if c == shared { e } else { c };
    format!("y_{}_{}_{}", i + 1, shared + 1, j + 1)
}

/// Entry `(i, j)` of `LD + 2I = (2·1 − d)1ᵀ` with `L` built from `μ ⊙ X`,
/// moved into the form `∑ products + ∑ x = rhs`:
///
/// `∑_{k≠i} μ_ik (x_ik d_ij − x_ik d_kj) + ∑_{k≠i} x_ik = 2 − 2δ_ij`,
/// with `d_ii = 0` dropped.
struct ExpandedEntry {
    products: BTreeMap<ProductKey, f64>,
    edges: BTreeMap<Pair, f64>,
    rhs: f64,
}

fn expand_entry(n: usize, mu: &DenseMatrix, i: usize, j: usize) -> ExpandedEntry {
    let mut products = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for k in (0..n).filter(|&k| k != i) {
        let m = mu[(i, k)];
        if j != i {
            *products.entry((pair(i, k), pair(i, j))).or_insert(0.0) += m;
        }
        if k != j {
            *products.entry((pair(i, k), pair(k, j))).or_insert(0.0) -= m;
        }
        *edges.entry(pair(i, k)).or_insert(0.0) += 1.0;
    }
    products.retain(|_, c| *c != 0.0);
    ExpandedEntry { products, edges, rhs: if i == j { 0.0 } else { 2.0 } }
}

fn equation_entries(n: usize, formulation: Formulation) -> Vec<Pair> {
    match formulation {
        Formulation::Full => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
        Formulation::Reduced => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
    }
}

/// Every distinct product `x_p · d_q` occurring in the chosen equations,
/// as 1-based `((x_i, x_j), (d_i, d_j))` pairs. Independent of `μ`.
pub fn derive_product_inventory(n: usize, formulation: Formulation) -> Vec<((usize, usize), (usize, usize))> {
    let mu = crate::problem::unit_mu(n);
    let keys: BTreeSet<ProductKey> = equation_entries(n, formulation)
        .into_iter()
        .flat_map(|(i, j)| expand_entry(n, &mu, i, j).products.into_keys())
        .collect();
    keys.into_iter().map(|((a, b), (c, e))| ((a + 1, b + 1), (c + 1, e + 1))).collect()
}

/// Builds the characterization model for trees on `n` vertices with edge
/// parameters `mu` (tree weights are `1/μ`). No objective is attached.
pub fn build_model(n: usize, mu: &DenseMatrix, formulation: Formulation) -> Result<MilpModel> {
    if n < 2 {
        return Err(Error::InvalidModel(format!("n = {n}, need n >= 2")));
    }
    validate_mu(n, mu)?;
    let upper = distance_upper_bound(n, mu);
    let pairs: Vec<Pair> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();

    let mut variables = Vec::new();
    for &(i, j) in &pairs {
        variables.push(Variable { name: x_name(i, j), kind: VarKind::Binary, lower: 0.0, upper: 1.0 });
    }
    for &(i, j) in &pairs {
        variables.push(Variable { name: d_name(i, j), kind: VarKind::Continuous, lower: 0.0, upper });
    }

    let mut constraints = Vec::new();
    let mut keys = BTreeSet::new();
    for (i, j) in equation_entries(n, formulation) {
        let entry = expand_entry(n, mu, i, j);
        let mut terms = Vec::with_capacity(entry.products.len() + entry.edges.len());
        for (&key, &coef) in &entry.products {
            keys.insert(key);
            terms.push(Term::new(coef, aux_name(key)));
        }
        for (&(a, b), &coef) in &entry.edges {
            terms.push(Term::new(coef, x_name(a, b)));
        }
        constraints.push(LinearConstraint {
            name: format!("c_{}_{}", i + 1, j + 1),
            role: RowRole::Characterization,
            terms,
            sense: RowSense::Eq,
            rhs: entry.rhs,
        });
    }

    if formulation == Formulation::Reduced {
        for &(i, j) in &pairs {
            constraints.push(LinearConstraint {
                name: format!("lb_{}_{}", i + 1, j + 1),
                role: RowRole::EdgeLowerBound,
                terms: vec![Term::new(1.0, d_name(i, j)), Term::new(-1.0 / mu[(i, j)], x_name(i, j))],
                sense: RowSense::Ge,
                rhs: 0.0,
            });
        }
    }

    let mut products = Vec::with_capacity(keys.len());
    let mut same_pair = 0;
    for &key in &keys {
        let (xp, dp) = key;
        if xp == dp {
            same_pair += 1;
        }
        let y = aux_name(key);
        let x = x_name(xp.0, xp.1);
        let d = d_name(dp.0, dp.1);
        variables.push(Variable { name: y.clone(), kind: VarKind::Continuous, lower: 0.0, upper });
        let suffix = &y[2..];
        let mc = |k: usize, terms: Vec<Term>, sense: RowSense, rhs: f64| LinearConstraint {
            name: format!("mc{k}_{suffix}"),
            role: RowRole::McCormick,
            terms,
            sense,
            rhs,
        };
        // y ≤ U·x, y ≥ 0, y ≤ d, y ≥ d − U(1 − x)
        constraints.push(mc(1, vec![Term::new(1.0, &y), Term::new(-upper, &x)], RowSense::Le, 0.0));
        constraints.push(mc(2, vec![Term::new(1.0, &y)], RowSense::Ge, 0.0));
        constraints.push(mc(3, vec![Term::new(1.0, &y), Term::new(-1.0, &d)], RowSense::Le, 0.0));
        constraints.push(mc(
            4,
            vec![Term::new(1.0, &y), Term::new(-1.0, &d), Term::new(-upper, &x)],
            RowSense::Ge,
            -upper,
        ));
        products.push(Product { aux: y, x, d });
    }

    let reference_count = reference_auxiliary_count(n);
    let cross_pair = products.len() - same_pair;
    let discrepancy = (products.len() != reference_count).then(|| {
        format!(
            "entrywise expansion ({} formulation) produces {} distinct products: {} same-pair x_ij*d_ij and {} \
             cross-pair x_ik*d_kj over all vertex orders; the reference count n(n-1)(n-2)/6 = {} covers only \
             x_ik*d_kj with i<k<j, which would leave the remaining terms bilinear",
            formulation.name(),
            products.len(),
            same_pair,
            cross_pair,
            reference_count
        )
    });

    Ok(MilpModel {
        n,
        formulation,
        mu: mu.clone(),
        distance_upper_bound: upper,
        variables,
        constraints,
        objective: Objective { sense: Sense::Minimize, kind: "none".into(), terms: Vec::new() },
        aux_inventory: AuxInventory { products, same_pair, cross_pair, reference_count, discrepancy },
    })
}

/// Replaces the model objective.
pub fn attach_objective(mut model: MilpModel, spec: &ObjectiveSpec, sense: Sense) -> Result<MilpModel> {
    let n = model.n;
    spec.validate(n)?;
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (c, m) = spec.coefficients(i, j);
            if c != 0.0 {
                terms.push(Term::new(c, x_name(i, j)));
            }
            if m != 0.0 {
                terms.push(Term::new(m, d_name(i, j)));
            }
        }
    }
    model.objective = Objective { sense, kind: spec.name().into(), terms };
    Ok(model)
}

/// Appends degree, fixing, and distance-bound rows.
pub fn attach_side_constraints(mut model: MilpModel, sc: &SideConstraints) -> Result<MilpModel> {
    let n = model.n;
    sc.validate(n)?;
    let mut rows = Vec::new();

    let mut degree: BTreeMap<usize, (Option<usize>, Option<usize>)> = BTreeMap::new();
    for b in &sc.degree_bounds {
        let slot = degree.entry(b.vertex - 1).or_insert((None, None));
        slot.0 = slot.0.max(b.min);
        slot.1 = match (slot.1, b.max) {
            (Some(a), Some(c)) => Some(a.min(c)),
            (a, c) => a.or(c),
        };
    }
    for (&v, &(lo, hi)) in &degree {
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if lo > hi {
                return Err(Error::Conflict(format!(
                    "vertex {}: combined degree bounds [{lo}, {hi}] are empty",
                    v + 1
                )));
            }
        }
        let terms: Vec<Term> = (0..n).filter(|&u| u != v).map(|u| Term::new(1.0, x_name(v, u))).collect();
        let mut push = |tag: &str, sense, rhs: usize| {
            rows.push(LinearConstraint {
                name: format!("deg{tag}_{}", v + 1),
                role: RowRole::Degree,
                terms: terms.clone(),
                sense,
                rhs: rhs as f64,
            })
        };
        match (lo, hi) {
            (Some(lo), Some(hi)) if lo == hi => push("", RowSense::Eq, lo),
            _ => {
                if let Some(lo) = lo {
                    push("_min", RowSense::Ge, lo);
                }
                if let Some(hi) = hi {
                    push("_max", RowSense::Le, hi);
                }
            }
        }
    }

    let forced: BTreeSet<Pair> = sc.forced(n)?.into_iter().collect();
    let banned: BTreeSet<Pair> = sc.banned(n)?.into_iter().collect();
    for (set, value) in [(&forced, 1.0), (&banned, 0.0)] {
        for &(i, j) in set {
            rows.push(LinearConstraint {
                name: format!("fix_{}_{}", i + 1, j + 1),
                role: RowRole::Fixing,
                terms: vec![Term::new(1.0, x_name(i, j))],
                sense: RowSense::Eq,
                rhs: value,
            });
        }
    }

    if let Some(delta) = sc.diameter {
        for i in 0..n {
            for j in i + 1..n {
                rows.push(LinearConstraint {
                    name: format!("diam_{}_{}", i + 1, j + 1),
                    role: RowRole::DistanceBound,
                    terms: vec![Term::new(1.0, d_name(i, j))],
                    sense: RowSense::Le,
                    rhs: delta,
                });
            }
        }
    }
    let mut ecc: BTreeMap<usize, f64> = BTreeMap::new();
    for e in &sc.eccentricity {
        let slot = ecc.entry(e.vertex - 1).or_insert(e.max);
        *slot = slot.min(e.max);
    }
    for (&v, &bound) in &ecc {
        for u in (0..n).filter(|&u| u != v) {
            rows.push(LinearConstraint {
                name: format!("ecc_{}_{}", v + 1, u + 1),
                role: RowRole::DistanceBound,
                terms: vec![Term::new(1.0, d_name(v, u))],
                sense: RowSense::Le,
                rhs: bound,
            });
        }
    }

    let existing: HashSet<&str> = model.constraints.iter().map(|c| c.name.as_str()).collect();
    if let Some(dup) = rows.iter().find(|r| existing.contains(r.name.as_str())) {
        return Err(Error::Conflict(format!("constraint `{}` is already present in the model", dup.name)));
    }
    model.constraints.extend(rows);
    Ok(model)
}
