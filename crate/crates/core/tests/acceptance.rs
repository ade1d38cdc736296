//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Reference values are computed here with
//! deliberately naive code (Floyd–Warshall, triple-loop products) rather
//! than through the library paths under test.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use treechar::identity::{
    check_identity, distance_dominates_reciprocal_weights, generalized_inverse_laplacian, graham_lovasz_inverse,
    spherical_edm_check,
};
use treechar::milp::{attach_objective, build_model, emit_lp, emit_mps, Formulation, MilpModel};
use treechar::oracle::{
    brute_force_optimize, cross_validate_model, enumerate_trees, exhaustive_converse_check, exhaustive_soundness_check,
    EdgeWeights, DEFAULT_MAX_N,
};
use treechar::paths::distance_matrix;
use treechar::problem::{unit_mu, ObjectiveSpec, Sense, SideConstraints};
use treechar::{DenseMatrix, PruferCode, WeightedGraph};

const SEED: u64 = 0x7ee5_c0de;
const CORPUS_SIZE: usize = 200;

const TOL_IDENTITY: f64 = 1e-9;
const TOL_LDL: f64 = 1e-8;
const TOL_INVERSE: f64 = 1e-9;
const TOL_CONVERSE: f64 = 1e-9;
const TOL_REDUCED: f64 = 1e-9;
const TOL_SPHERICAL: f64 = 1e-9;
const TOL_GENERALIZED: f64 = 1e-9;

const BUDGET_IDENTITY: Duration = Duration::from_secs(5);
const BUDGET_CONVERSE: Duration = Duration::from_secs(30);
const BUDGET_MODEL: Duration = Duration::from_secs(120);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

// ---------------------------------------------------------------- oracles

fn dense(n: usize, f: impl Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

fn mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    dense(n, |_, _| 0.0)
        .into_iter()
        .enumerate()
        .map(|(i, _)| (0..p).map(|j| (0..m).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    m.to_rows()
}

/// All-pairs shortest paths by Floyd–Warshall over edge weights `w`.
fn floyd(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = dense(n, |i, j| if i == j { 0.0 } else { f64::INFINITY });
    for &(i, j, w) in edges {
        d[i][j] = w;
        d[j][i] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn laplacian(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut l = dense(n, |_, _| 0.0);
    for &(i, j, w) in edges {
        l[i][j] -= w;
        l[j][i] -= w;
        l[i][i] += w;
        l[j][j] += w;
    }
    l
}

fn degrees(n: usize, edges: &[(usize, usize, f64)]) -> Vec<f64> {
    let mut d = vec![0.0; n];
    for &(i, j, _) in edges {
        d[i] += 1.0;
        d[j] += 1.0;
    }
    d
}

fn max_dev(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs())).fold(0.0, f64::max)
}

/// `LD + 2I − (2·1 − d)1ᵀ`, entry by entry.
fn identity_residual(n: usize, edges: &[(usize, usize, f64)], d: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let l = laplacian(n, edges);
    let deg = degrees(n, edges);
    let ld = mul(&l, d);
    dense(n, |i, j| ld[i][j] + if i == j { 2.0 } else { 0.0 } - (2.0 - deg[i]))
}

// ---------------------------------------------------------------- corpus

struct Sample {
    n: usize,
    /// Edges of `G` with weights drawn from `[0.1, 10]`.
    edges: Vec<(usize, usize, f64)>,
    graph: WeightedGraph,
}

impl Sample {
    fn reciprocal_edges(&self) -> Vec<(usize, usize, f64)> {
        self.edges.iter().map(|&(i, j, w)| (i, j, 1.0 / w)).collect()
    }
}

fn random_weights(rng: &mut StdRng, topology: &WeightedGraph) -> Sample {
    let edges: Vec<_> = topology.edges().map(|(i, j, _)| (i, j, rng.gen_range(0.1..=10.0))).collect();
    let graph = WeightedGraph::from_edges(topology.n(), edges.iter().copied()).unwrap();
    Sample { n: topology.n(), edges, graph }
}

fn corpus() -> Vec<Sample> {
    let mut rng = StdRng::seed_from_u64(SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let n = rng.gen_range(2..=12);
            let seq = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            let code = PruferCode::new(n, seq).unwrap();
            random_weights(&mut rng, &code.decode())
        })
        .collect()
}

// ---------------------------------------------------------------- criteria

fn forward_identity(corpus: &[Sample]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut library_agrees = true;
    for s in corpus {
        let d = floyd(s.n, &s.reciprocal_edges());
        worst = worst.max(max_dev(&identity_residual(s.n, &s.edges, &d), &dense(s.n, |_, _| 0.0)));
        let lib_d = distance_matrix(&s.graph.reciprocal()).unwrap();
        let report = check_identity(&s.graph, &lib_d, TOL_IDENTITY).unwrap();
        library_agrees &= report.holds_full && max_dev(&rows(&lib_d), &d) <= TOL_IDENTITY;
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= TOL_IDENTITY && library_agrees && elapsed < BUDGET_IDENTITY,
        format!("max residual {worst:.2e} <= {TOL_IDENTITY:.0e}, library check agrees: {library_agrees}, {elapsed:.2?} < {BUDGET_IDENTITY:?}"),
    )
}

fn ldl_identity(corpus: &[Sample]) -> Outcome {
    let mut worst: f64 = 0.0;
    for s in corpus {
        let d = floyd(s.n, &s.reciprocal_edges());
        let l = laplacian(s.n, &s.edges);
        let ldl = mul(&mul(&l, &d), &l);
        let minus_2l = dense(s.n, |i, j| -2.0 * l[i][j]);
        worst = worst.max(max_dev(&ldl, &minus_2l));
    }
    outcome(worst <= TOL_LDL, format!("max |LDL + 2L| {worst:.2e} <= {TOL_LDL:.0e}"))
}

fn closed_form_inverse(corpus: &[Sample]) -> Outcome {
    let mut worst: f64 = 0.0;
    for s in corpus {
        let d = floyd(s.n, &s.reciprocal_edges());
        let inv = rows(&graham_lovasz_inverse(&s.graph).unwrap());
        let eye = dense(s.n, |i, j| if i == j { 1.0 } else { 0.0 });
        worst = worst.max(max_dev(&mul(&inv, &d), &eye));
    }
    outcome(worst <= TOL_INVERSE, format!("max |D⁻¹·D − I| {worst:.2e} <= {TOL_INVERSE:.0e}"))
}

fn converse() -> Outcome {
    let start = Instant::now();
    let mut passed = true;
    let mut parts = Vec::new();
    for (n, graphs, trees) in [(4, 64, 16), (5, 1024, 125)] {
        let r = exhaustive_converse_check(n).unwrap();
        // Independent recount of trees: n − 1 edges and connected.
        let recount = treechar::oracle::all_graphs(n)
            .unwrap()
            .filter(|g| {
                let e: Vec<_> = g.edges().collect();
                e.len() == n - 1 && floyd(n, &e).iter().flatten().all(|v| v.is_finite())
            })
            .count() as u64;
        let ok = r.graphs == graphs
            && r.trees == trees
            && recount == trees
            && r.consistent == trees
            && r.holds()
            && r.max_distance_error <= TOL_CONVERSE;
        passed &= ok;
        parts.push(format!(
            "n={n}: {} graphs, {} consistent of {} trees, max |ΔD| {:.1e}",
            r.graphs, r.consistent, r.trees, r.max_distance_error
        ));
    }
    let elapsed = start.elapsed();
    parts.push(format!("{elapsed:.2?} < {BUDGET_CONVERSE:?}"));
    outcome(passed && elapsed < BUDGET_CONVERSE, parts.join("; "))
}

fn reduced_system() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 5);
    let mut worst: f64 = 0.0;
    let mut dominance_ok = true;
    let mut count = 0;
    for n in 2..=6 {
        for t in enumerate_trees(n, EdgeWeights::Unit, DEFAULT_MAX_N).unwrap() {
            let unit = Sample { n, edges: t.tree.edges().collect(), graph: t.tree.clone() };
            for s in [unit, random_weights(&mut rng, &t.tree)] {
                let d = floyd(n, &s.reciprocal_edges());
                let r = identity_residual(n, &s.edges, &d);
                for (i, row) in r.iter().enumerate() {
                    worst = row[i + 1..].iter().fold(worst, |m, v| m.max(v.abs()));
                }
                let dm = DenseMatrix::from_rows(&d).unwrap();
                let dom = distance_dominates_reciprocal_weights(&s.graph, &dm, TOL_REDUCED).unwrap();
                let edges: BTreeSet<(usize, usize)> = s.edges.iter().map(|&(i, j, _)| (i + 1, j + 1)).collect();
                let tight: BTreeSet<(usize, usize)> = dom.equal_pairs.iter().copied().collect();
                dominance_ok &= dom.holds && dom.equality_exactly_on_edges && tight == edges;
                count += 1;
            }
        }
    }
    outcome(
        worst <= TOL_REDUCED && dominance_ok,
        format!("{count} weighted trees (n <= 6): max upper residual {worst:.2e} <= {TOL_REDUCED:.0e}, dominance tight exactly on edges: {dominance_ok}"),
    )
}

fn spherical(corpus: &[Sample]) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut min_value = f64::INFINITY;
    let mut checked = 0;
    for s in corpus.iter().filter(|s| s.n >= 2) {
        let value = spherical_edm_check(&s.graph).unwrap();
        let expected = 2.0 / s.edges.iter().map(|e| e.2).sum::<f64>();
        worst = worst.max((value - expected).abs());
        min_value = min_value.min(value);
        checked += 1;
    }
    outcome(
        worst <= TOL_SPHERICAL && min_value > 0.0,
        format!(
            "{checked} trees: max |1ᵀD⁻¹1 − 2/∑w| {worst:.2e} <= {TOL_SPHERICAL:.0e}, min value {min_value:.3e} > 0"
        ),
    )
}

fn generalized_inverse(corpus: &[Sample]) -> Outcome {
    let mut worst: f64 = 0.0;
    for s in corpus {
        let pinv = rows(&generalized_inverse_laplacian(&s.graph).unwrap());
        let l = laplacian(s.n, &s.edges);
        let n = s.n as f64;
        let target = dense(s.n, |i, j| if i == j { 1.0 } else { 0.0 } - 1.0 / n);
        worst = worst.max(max_dev(&mul(&pinv, &l), &target));
    }
    outcome(worst <= TOL_GENERALIZED, format!("max |L†L − (I − J/n)| {worst:.2e} <= {TOL_GENERALIZED:.0e}"))
}

/// Products `x_ik · d_kj` obtained by expanding the identity entries by hand.
fn expected_products(n: usize, reduced: bool) -> usize {
    let canon = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut set = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if reduced && j <= i {
                continue;
            }
            for k in (0..n).filter(|&k| k != i) {
                if j != i {
                    set.insert((canon(i, k), canon(i, j)));
                }
                if k != j {
                    set.insert((canon(i, k), canon(k, j)));
                }
            }
        }
    }
    set.len()
}

fn model_counts() -> Outcome {
    let mut passed = true;
    let mut n4 = String::new();
    for n in 2usize..=10 {
        let pairs = n * (n - 1) / 2;
        let reference = n * (n - 1) * n.saturating_sub(2) / 6;
        for form in [Formulation::Full, Formulation::Reduced] {
            let model = build_model(n, &unit_mu(n), form).unwrap();
            let c = model.counts();
            let expected = expected_products(n, form == Formulation::Reduced);
            let inv = &model.aux_inventory;
            let explained =
                if c.auxiliaries == reference { inv.discrepancy.is_none() } else { inv.discrepancy.is_some() };
            let ok = c.binaries == pairs
                && c.distances == pairs
                && c.auxiliaries == expected
                && c.mccormick == 4 * c.auxiliaries
                && inv.reference_count == reference
                && explained;
            passed &= ok;
            if n == 4 && form == Formulation::Reduced {
                n4 = format!(
                    "n=4 reduced: {} binaries, {} distances, {} auxiliaries vs reference {}, {} McCormick rows",
                    c.binaries, c.distances, c.auxiliaries, reference, c.mccormick
                );
            }
        }
    }
    outcome(
        passed,
        format!("n = 2..10, both formulations: pair counts exact, 4 McCormick rows per auxiliary, auxiliary count differs from n(n−1)(n−2)/6 with the difference recorded in model metadata; {n4}"),
    )
}

fn random_mu(rng: &mut StdRng, n: usize) -> DenseMatrix {
    let mut mu = unit_mu(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(0.5..=2.0);
            mu[(i, j)] = v;
            mu[(j, i)] = v;
        }
    }
    mu
}

fn random_symmetric(rng: &mut StdRng, n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(0.0..=5.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn model_validity() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let mut runs = 0;
    let mut failures = Vec::new();
    for n in 2..=6 {
        let mut cases = vec![(unit_mu(n), ObjectiveSpec::Wiener)];
        for _ in 0..5 {
            let mu = random_mu(&mut rng, n);
            let spec =
                ObjectiveSpec::Road { cost: random_symmetric(&mut rng, n), demand: random_symmetric(&mut rng, n) };
            cases.push((mu, spec));
        }
        for (mu, spec) in &cases {
            for form in [Formulation::Full, Formulation::Reduced] {
                for sense in [Sense::Minimize, Sense::Maximize] {
                    let r = cross_validate_model(n, spec, sense, mu, form, DEFAULT_MAX_N).unwrap();
                    runs += 1;
                    if !r.holds() {
                        failures.push(format!("n={n} {} {:?}: {:?}", form.name(), sense, r.failures));
                    }
                }
            }
        }
    }
    let mut sound = Vec::new();
    for form in [Formulation::Full, Formulation::Reduced] {
        let r = exhaustive_soundness_check(4, &unit_mu(4), form).unwrap();
        if !r.holds() {
            failures.push(format!("soundness {}: {r:?}", form.name()));
        }
        sound.push(format!(
            "{}: {}/{} trees recovered, non-trees {} inconsistent + {} cut by inequalities ({} with free d), {} accepted",
            form.name(),
            r.trees_recovered,
            r.trees,
            r.non_trees_inconsistent,
            r.non_trees_rejected_by_inequalities,
            r.non_trees_underdetermined,
            r.non_trees_accepted
        ));
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < BUDGET_MODEL,
        format!(
            "{runs} cross-validations (n <= 6, unit and 5 random μ, both formulations and senses), {} with mismatches; n=4 soundness {}; {elapsed:.2?} < {BUDGET_MODEL:?}{}",
            failures.len(),
            sound.join("; "),
            if failures.is_empty() { String::new() } else { format!("; first failure: {}", failures[0]) }
        ),
    )
}

fn is_star(g: &WeightedGraph) -> bool {
    g.degree_sequence().contains(&(g.n() - 1))
}

fn is_path(g: &WeightedGraph) -> bool {
    g.degree_sequence().iter().all(|&d| d <= 2)
}

fn wiener_anchors() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for n in [4usize, 5, 7] {
        let star = ((n - 1) * (n - 1)) as f64;
        let path = (n * (n * n - 1) / 6) as f64;
        let factorial: usize = (1..=n).product();
        let side = SideConstraints::default();
        let min =
            brute_force_optimize(n, &ObjectiveSpec::Wiener, Sense::Minimize, &side, &unit_mu(n), 0, DEFAULT_MAX_N)
                .unwrap();
        let max =
            brute_force_optimize(n, &ObjectiveSpec::Wiener, Sense::Maximize, &side, &unit_mu(n), 0, DEFAULT_MAX_N)
                .unwrap();
        // Direct Wiener sums over every tree, for the optimizer classes.
        let mut stars = BTreeSet::new();
        let mut paths = BTreeSet::new();
        for t in enumerate_trees(n, EdgeWeights::Unit, DEFAULT_MAX_N).unwrap() {
            let e: Vec<_> = t.tree.edges().collect();
            let w: f64 = floyd(n, &e).iter().enumerate().map(|(i, r)| r[i + 1..].iter().sum::<f64>()).sum();
            if is_star(&t.tree) {
                assert_eq!(w, star);
                stars.insert(t.code.clone());
            }
            if is_path(&t.tree) {
                assert_eq!(w, path);
                paths.insert(t.code);
            }
        }
        let min_set: BTreeSet<_> = min.optimizers.iter().cloned().collect();
        let max_set: BTreeSet<_> = max.optimizers.iter().cloned().collect();
        let ok = min.best_value == star
            && max.best_value == path
            && min_set == stars
            && max_set == paths
            && stars.len() == n
            && paths.len() == factorial / 2;
        passed &= ok;
        parts.push(format!(
            "n={n}: min {} (star {star}, {} optimizers), max {} (path {path}, {} optimizers)",
            min.best_value, min.ties, max.best_value, max.ties
        ));
    }
    outcome(passed, parts.join("; "))
}

fn determinism() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 11);
    let mut same_oracle = true;
    let side = SideConstraints::default().with_degree_range(6, None, Some(3));
    let mu = random_mu(&mut rng, 6);
    let road = ObjectiveSpec::Road { cost: random_symmetric(&mut rng, 6), demand: random_symmetric(&mut rng, 6) };
    let cases = [(7, ObjectiveSpec::Wiener, unit_mu(7), SideConstraints::default()), (6, road, mu, side)];
    for (n, spec, mu, side) in &cases {
        for sense in [Sense::Minimize, Sense::Maximize] {
            let one = brute_force_optimize(*n, spec, sense, side, mu, 1, DEFAULT_MAX_N).unwrap();
            let eight = brute_force_optimize(*n, spec, sense, side, mu, 8, DEFAULT_MAX_N).unwrap();
            same_oracle &= one == eight;
        }
    }

    let mu5 = random_mu(&mut rng, 5);
    let make = || -> MilpModel {
        let m = build_model(5, &mu5, Formulation::Reduced).unwrap();
        attach_objective(m, &ObjectiveSpec::Wiener, Sense::Minimize).unwrap()
    };
    let (a, b) = (make(), make());
    let reparsed = MilpModel::from_json(&treechar::milp::emit_json(&a)).unwrap();
    let same_files = emit_lp(&a) == emit_lp(&b)
        && emit_mps(&a) == emit_mps(&b)
        && emit_lp(&a) == emit_lp(&reparsed)
        && emit_mps(&a) == emit_mps(&reparsed);
    outcome(
        same_oracle && same_files,
        format!("oracle results identical for 1 and 8 workers: {same_oracle}; LP/MPS byte-identical across builds and a JSON round trip: {same_files}"),
    )
}

fn main() -> ExitCode {
    let corpus = corpus();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("forward identity", Box::new(|| forward_identity(&corpus))),
        ("LDL = -2L", Box::new(|| ldl_identity(&corpus))),
        ("closed-form distance inverse", Box::new(|| closed_form_inverse(&corpus))),
        ("converse on all small graphs", Box::new(converse)),
        ("reduced system and dominance", Box::new(reduced_system)),
        ("spherical value", Box::new(|| spherical(&corpus))),
        ("generalized inverse", Box::new(|| generalized_inverse(&corpus))),
        ("model counts", Box::new(model_counts)),
        ("model completeness and soundness", Box::new(model_validity)),
        ("Wiener extremes", Box::new(wiener_anchors)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", k + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
