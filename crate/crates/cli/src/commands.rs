//! One report per parameter cell, plus the assertions each command makes.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crossfam_core::bipartite::{
    classify_extremal_pair, construct_star_pair, counterexample_pair, h_polynomial, hypothesis_grid,
    imprimitive_shapes, min_imprimitive_deficiency, random_pair, size_estimate, BipartiteDisjointness, ClauseKind,
    FragmentReport, ShapeEvaluation, Side,
};
use crossfam_core::cross::{
    bound_main0, classify_optimum, construct_case_i, construct_case_ii, random_system, search_max_sum,
    verify_cross_intersecting, CrossSystem, SearchLimits,
};
use crossfam_core::kneser::{alpha_formula, ImprimitivityMode};
use crossfam_core::{Disjointness, Error, Family, GroundSpec, Layer, ProductKneserGraph, SolverLimits};

use crate::config::{CommandKind, Construction, GridKind, RunConfig, Span};

/// Largest layer whose constructed families are listed vertex by vertex.
const LIST_LIMIT: usize = 4096;

/// Builds one extremal construction on a layer.
type Build = fn(&GroundSpec, usize) -> crossfam_core::Result<CrossSystem>;

pub struct Outcome {
    pub reports: Vec<Value>,
    /// Failed bound or classification assertions.
    pub failures: Vec<String>,
}

/// One point of the parameter grid.
#[derive(Clone, Debug)]
struct Cell {
    n: Vec<u32>,
    k: Vec<u32>,
    t: Vec<u32>,
    s: Vec<u32>,
    m: Option<u32>,
    j: Option<u32>,
}

fn expand(c: &RunConfig) -> Vec<Cell> {
    let mut axes: Vec<Span> = Vec::new();
    for list in [&c.n, &c.k, &c.t, &c.s] {
        axes.extend(&list.0);
    }
    axes.extend(c.m);
    axes.extend(c.j);
    let mut cells = Vec::new();
    let mut cur: Vec<u32> = axes.iter().map(|a| a.lo).collect();
    loop {
        let mut it = cur.iter().copied();
        let mut take = |len: usize| -> Vec<u32> { it.by_ref().take(len).collect() };
        let n = take(c.n.0.len());
        let k = take(c.k.0.len());
        let t = take(c.t.0.len());
        let s = take(c.s.0.len());
        let m = c.m.map(|_| take(1)[0]);
        let j = c.j.map(|_| take(1)[0]);
        cells.push(Cell { n, k, t, s, m, j });
        let mut pos = axes.len();
        loop {
            if pos == 0 {
                return cells;
            }
            pos -= 1;
            if cur[pos] < axes[pos].hi {
                cur[pos] += 1;
                break;
            }
            cur[pos] = axes[pos].lo;
        }
    }
}

fn search_limits(c: &RunConfig) -> SearchLimits {
    let d = SearchLimits::default();
    SearchLimits {
        work_limit: c.work_limit.unwrap_or(d.work_limit),
        max_systems: c.max_systems.unwrap_or(d.max_systems),
    }
}

fn solver_limits(c: &RunConfig) -> SolverLimits {
    let d = SolverLimits::default();
    SolverLimits {
        node_limit: c.node_limit.unwrap_or(d.node_limit),
        max_solutions: c.max_systems.unwrap_or(d.max_solutions),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn vertices(f: &Family) -> Vec<String> {
    f.vertices().iter().map(ToString::to_string).collect()
}

pub fn run(kind: CommandKind, c: &RunConfig) -> Result<Outcome> {
    if kind == CommandKind::Fragments && c.grid.is_some() {
        return run_grid(c);
    }
    let cells = expand(c);
    let results: Vec<Result<(Value, Vec<String>)>> = cells
        .par_iter()
        .enumerate()
        .map(|(i, cell)| {
            let seed = c.seed.wrapping_add(i as u64);
            match kind {
                CommandKind::Alpha => alpha(cell, c),
                CommandKind::Crossmax => crossmax(cell, c, seed),
                CommandKind::Pairmax => pairmax(cell, c, seed),
                CommandKind::Fragments if c.h_poly => hpoly(cell),
                CommandKind::Fragments => fragments(cell, c),
            }
        })
        .collect();
    let mut out = Outcome {
        reports: Vec::new(),
        failures: Vec::new(),
    };
    for r in results {
        let (report, failures) = r?;
        out.reports.push(report);
        out.failures.extend(failures);
    }
    Ok(out)
}

fn to_value<T: Serialize>(r: &T) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn need(list: &[u32], name: &str) -> Result<()> {
    if list.is_empty() {
        bail!("--{name} is required");
    }
    Ok(())
}

fn ground(n: &[u32], k: &[u32]) -> Result<GroundSpec> {
    need(n, "n")?;
    need(k, "k")?;
    Ok(GroundSpec::from_lists(n, k)?)
}

fn bipartite(cell: &Cell) -> Result<BipartiteDisjointness> {
    need(&cell.n, "n")?;
    need(&cell.t, "t")?;
    need(&cell.s, "s")?;
    Ok(BipartiteDisjointness::new(&cell.n, &cell.t, &cell.s)?)
}

#[derive(Serialize)]
struct AlphaReport {
    spec: String,
    order: String,
    alpha_formula: String,
    alpha_solver: Option<usize>,
    alpha_ratio: String,
    critical_parts: Vec<usize>,
    is_imprimitive_predicate: bool,
    is_imprimitive_search: Option<bool>,
    imprimitive_witness: Option<Vec<String>>,
    mis_normal: Option<bool>,
    mis_witness: Option<Vec<String>>,
    notes: Vec<String>,
}

fn alpha(cell: &Cell, c: &RunConfig) -> Result<(Value, Vec<String>)> {
    let spec = ground(&cell.n, &cell.k)?;
    let g = ProductKneserGraph::new(&spec)?;
    let lim = solver_limits(c);
    let mut notes = Vec::new();
    let a = g.alpha_exact(lim)?;
    notes.extend(a.solver_note.clone().map(|n| format!("solver: {n}")));
    let (search, witness) = match a.solver {
        Some(_) => match g.is_is_imprimitive(ImprimitivityMode::Search, lim) {
            Ok(v) => (Some(v.imprimitive), v.witness.as_ref().map(vertices)),
            Err(e) => {
                notes.push(format!("imprimitivity search: {e}"));
                (None, None)
            }
        },
        None => (None, None),
    };
    let (normal, mis_witness) = match a.solver {
        Some(_) => match g.is_mis_normal(lim) {
            Ok(v) => (Some(v.normal), v.witness.as_ref().map(vertices)),
            Err(e) => {
                notes.push(format!("MIS normality: {e}"));
                (None, None)
            }
        },
        None => (None, None),
    };
    let mut failures = Vec::new();
    if let Some(s) = a.solver {
        if BigUint::from(s) != a.formula {
            failures.push(format!("{spec}: solver alpha {s} != formula {}", a.formula));
        }
    }
    if search.is_some_and(|s| s != g.imprimitive_predicate()) {
        failures.push(format!("{spec}: imprimitivity search disagrees with the predicate"));
    }
    let report = AlphaReport {
        spec: spec.to_string(),
        order: g.order().to_string(),
        alpha_formula: a.formula.to_string(),
        alpha_solver: a.solver,
        alpha_ratio: g.alpha_ratio().to_string(),
        critical_parts: one_based(g.critical_parts()),
        is_imprimitive_predicate: g.imprimitive_predicate(),
        is_imprimitive_search: search,
        imprimitive_witness: witness,
        mis_normal: normal,
        mis_witness,
        notes,
    };
    Ok((to_value(&report), failures))
}

#[derive(Serialize)]
struct ConstructionRow {
    case: &'static str,
    total: String,
    attains_bound: bool,
    /// Built and checked on the enumerated layer.
    verified: Option<bool>,
}

#[derive(Serialize)]
struct Emitted {
    case: &'static str,
    families: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct SearchSummary {
    optimum: usize,
    systems: usize,
    visited: u64,
    cases: BTreeMap<String, usize>,
    unclassified: usize,
}

#[derive(Serialize)]
struct RandomSummary {
    count: u64,
    seed: u64,
    max_total: String,
}

#[derive(Serialize)]
struct CrossmaxReport {
    spec: String,
    m: usize,
    bound: String,
    alpha_formula: String,
    min_ratio: String,
    constructions: Vec<ConstructionRow>,
    emitted: Vec<Emitted>,
    search: Option<SearchSummary>,
    random: Option<RandomSummary>,
    notes: Vec<String>,
}

fn check_construction(sys: &CrossSystem, total: &BigUint, bound: &BigUint, label: &str) -> Result<bool> {
    let cross = verify_cross_intersecting(sys)?.cross_intersecting;
    let size_ok = BigUint::from(sys.total()) == *total;
    let class_ok = total != bound || classify_optimum(sys)?.cases.iter().any(|c| c.label() == label);
    Ok(cross && size_ok && class_ok)
}

fn crossmax(cell: &Cell, c: &RunConfig, seed: u64) -> Result<(Value, Vec<String>)> {
    let spec = ground(&cell.n, &cell.k)?;
    let m = cell.m.context("--m is required")? as usize;
    if !spec.is_kneser() {
        bail!("{spec}: every part needs n_i >= 2k_i");
    }
    let bound = bound_main0(&spec, m)?;
    let big_m = alpha_formula(&spec);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let enumerable = spec.is_enumerable();
    let mut constructions = Vec::new();
    let mut emitted = Vec::new();

    let builds: [(&'static str, BigUint, Build); 2] = [
        ("(i)", spec.layer_size().clone(), construct_case_i),
        ("(ii)", &big_m * BigUint::from(m), construct_case_ii),
    ];
    for (label, total, build) in builds {
        let verified = if enumerable {
            let sys = build(&spec, m)?;
            let ok = check_construction(&sys, &total, &bound, label)?;
            if total == bound {
                if spec.enumerable_len()? <= LIST_LIMIT {
                    emitted.push(Emitted {
                        case: label,
                        families: sys.families().iter().map(vertices).collect(),
                    });
                } else {
                    notes.push(format!(
                        "construction {label} not listed: layer larger than {LIST_LIMIT}"
                    ));
                }
            }
            Some(ok)
        } else {
            None
        };
        if total > bound || verified == Some(false) {
            failures.push(format!("{spec} m={m}: construction {label} does not check out"));
        }
        constructions.push(ConstructionRow {
            case: label,
            attains_bound: total == bound,
            total: total.to_string(),
            verified,
        });
    }
    if m == 2 && spec.min_ratio() == crossfam_core::Ratio::from_integer(2.into()) {
        constructions.push(ConstructionRow {
            case: "(iii)",
            total: bound.to_string(),
            attains_bound: true,
            verified: None,
        });
    }

    let search = if c.exhaustive {
        let r = search_max_sum(&spec, m, true, search_limits(c))?;
        let mut cases = BTreeMap::new();
        let mut unclassified = 0;
        for sys in &r.systems {
            match classify_optimum(sys) {
                Ok(cert) if cert.primary().is_some() => *cases.entry(cert.label().to_string()).or_insert(0) += 1,
                _ => unclassified += 1,
            }
        }
        if BigUint::from(r.optimum) != bound {
            failures.push(format!("{spec} m={m}: optimum {} != bound {bound}", r.optimum));
        }
        if unclassified > 0 {
            failures.push(format!("{spec} m={m}: {unclassified} optimal systems unclassified"));
        }
        Some(SearchSummary {
            optimum: r.optimum,
            systems: r.systems.len(),
            visited: r.visited,
            cases,
            unclassified,
        })
    } else {
        None
    };

    let random = if c.random > 0 {
        let d = Disjointness::on(&Layer::new(&spec)?)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        for _ in 0..c.random {
            best = best.max(random_system(&spec, &d, m, &mut rng)?.total());
        }
        if BigUint::from(best) > bound {
            failures.push(format!("{spec} m={m}: random system of total {best} beats {bound}"));
        }
        Some(RandomSummary {
            count: c.random,
            seed,
            max_total: best.to_string(),
        })
    } else {
        None
    };

    let report = CrossmaxReport {
        spec: spec.to_string(),
        m,
        bound: bound.to_string(),
        alpha_formula: big_m.to_string(),
        min_ratio: spec.min_ratio().to_string(),
        constructions,
        emitted,
        search,
        random,
        notes,
    };
    Ok((to_value(&report), failures))
}

#[derive(Serialize)]
struct ClauseRow {
    clause: String,
    satisfied: bool,
}

#[derive(Serialize)]
struct PairRow {
    name: &'static str,
    a_size: String,
    b_size: String,
    total: String,
    slack: String,
    cross_intersecting: bool,
}

#[derive(Serialize)]
struct PairSearch {
    alpha: usize,
    pairs: usize,
    cases: BTreeMap<String, usize>,
    unclassified: usize,
    /// Unclassified pairs with `|A| = |B| = alpha/2`.
    unclassified_balanced: usize,
}

#[derive(Serialize)]
struct PairmaxReport {
    n: Vec<u32>,
    t: Vec<u32>,
    s: Vec<u32>,
    size_x: String,
    size_y: String,
    degree_x: String,
    degree_y: String,
    bound: String,
    hypotheses: Vec<ClauseRow>,
    violated: Vec<String>,
    /// Every clause other than `p >= 2` holds, so the bound is asserted.
    bound_asserted: bool,
    construction: PairRow,
    search: Option<PairSearch>,
    random: Option<RandomSummary>,
}

/// Every hypothesis except `p >= 2`; single-part instances are covered by
/// the classical bound.
fn bound_applies(g: &BipartiteDisjointness) -> bool {
    g.check_hypotheses()
        .violated()
        .iter()
        .all(|c| c.kind == ClauseKind::TwoParts)
}

fn pairmax(cell: &Cell, c: &RunConfig, seed: u64) -> Result<(Value, Vec<String>)> {
    let g = bipartite(cell)?;
    let report = g.check_hypotheses();
    let asserted = bound_applies(&g);
    let mut failures = Vec::new();
    let name = format!("n={:?} t={:?} s={:?}", cell.n, cell.t, cell.s);

    let (label, (a, b)) = match c.construction.unwrap_or(Construction::Star) {
        Construction::Star => ("star", construct_star_pair(&g, Side::X)?),
        Construction::Remark2 => ("remark2", counterexample_pair(&g)?),
    };
    let e = g.evaluate_shapes(&a, &b)?;
    if !e.cross_intersecting {
        failures.push(format!("{name}: {label} pair is not cross-intersecting"));
    }
    if asserted && e.slack > BigInt::from(0) {
        failures.push(format!("{name}: {label} pair beats the bound by {}", e.slack));
    }
    let construction = PairRow {
        name: label,
        a_size: e.a_size.to_string(),
        b_size: e.b_size.to_string(),
        total: e.total.to_string(),
        slack: format!("{:+}", e.slack),
        cross_intersecting: e.cross_intersecting,
    };

    let search = if c.exhaustive {
        let r = g.search_max_nontrivial()?;
        let mut cases = BTreeMap::new();
        let (mut unclassified, mut balanced) = (0, 0);
        for (a, b) in &r.pairs {
            match classify_extremal_pair(&g, a, b)?.case {
                Some(case) => *cases.entry(case.label().to_string()).or_insert(0) += 1,
                None => {
                    unclassified += 1;
                    balanced += usize::from(2 * a.len() == r.alpha && a.len() == b.len());
                }
            }
        }
        if asserted {
            if BigUint::from(r.alpha) != e.bound {
                failures.push(format!("{name}: alpha {} != bound {}", r.alpha, e.bound));
            }
            if unclassified > 0 {
                failures.push(format!(
                    "{name}: {unclassified} extremal pairs are neither (i) nor (ii)"
                ));
            }
        }
        Some(PairSearch {
            alpha: r.alpha,
            pairs: r.pairs.len(),
            cases,
            unclassified,
            unclassified_balanced: balanced,
        })
    } else {
        None
    };

    let random = if c.random > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = BigUint::from(0u32);
        for _ in 0..c.random {
            let (a, b) = random_pair(&g, &mut rng)?;
            best = best.max(g.evaluate_pair(&a, &b)?.total);
        }
        if asserted && best > e.bound {
            failures.push(format!("{name}: random pair of total {best} beats {}", e.bound));
        }
        Some(RandomSummary {
            count: c.random,
            seed,
            max_total: best.to_string(),
        })
    } else {
        None
    };

    let out = PairmaxReport {
        n: cell.n.clone(),
        t: cell.t.clone(),
        s: cell.s.clone(),
        size_x: g.size(Side::X).to_string(),
        size_y: g.size(Side::Y).to_string(),
        degree_x: g.degree(Side::X).to_string(),
        degree_y: g.degree(Side::Y).to_string(),
        bound: g.bound_main1().to_string(),
        hypotheses: report
            .clauses
            .iter()
            .map(|cl| ClauseRow {
                clause: cl.statement.clone(),
                satisfied: cl.satisfied,
            })
            .collect(),
        violated: report.violated().iter().map(|cl| cl.negation.clone()).collect(),
        bound_asserted: asserted,
        construction,
        search,
        random,
    };
    Ok((to_value(&out), failures))
}

#[derive(Serialize)]
struct FragmentRow {
    set: Vec<String>,
    size: usize,
    nbhd_size: usize,
    deficiency: i64,
    balanced: bool,
    trivial: bool,
}

#[derive(Serialize)]
struct SideReport {
    epsilon: i64,
    alpha_xy: usize,
    fragments: Vec<FragmentRow>,
    nontrivial: usize,
}

#[derive(Serialize)]
struct ShapeRow {
    side: String,
    t1: Vec<usize>,
    t2: Vec<usize>,
    size: String,
    nbhd_size: String,
    deficiency: String,
    /// `d1` on `X`, `d2` on `Y`.
    margin: String,
}

#[derive(Serialize)]
struct FragmentsReport {
    n: Vec<u32>,
    t: Vec<u32>,
    s: Vec<u32>,
    x: SideReport,
    y: SideReport,
    min_imprimitive_x: Option<Vec<ShapeRow>>,
    min_imprimitive_y: Option<Vec<ShapeRow>>,
    notes: Vec<String>,
}

fn side_report(r: &FragmentReport) -> SideReport {
    SideReport {
        epsilon: r.epsilon,
        alpha_xy: r.alpha_xy,
        nontrivial: r.fragments.iter().filter(|f| !f.trivial).count(),
        fragments: r
            .fragments
            .iter()
            .map(|f| FragmentRow {
                set: vertices(&f.set),
                size: f.set.len(),
                nbhd_size: f.nbhd_size,
                deficiency: f.deficiency,
                balanced: f.balanced,
                trivial: f.trivial,
            })
            .collect(),
    }
}

fn shape_row(g: &BipartiteDisjointness, e: &ShapeEvaluation) -> Result<ShapeRow> {
    Ok(ShapeRow {
        side: e.shape.side.to_string(),
        t1: one_based(&e.shape.t1),
        t2: one_based(&e.shape.t2),
        size: e.size.to_string(),
        nbhd_size: e.nbhd_size.to_string(),
        deficiency: e.deficiency.to_string(),
        margin: size_estimate(g, &e.shape)?.margin().to_string(),
    })
}

fn fragments(cell: &Cell, _c: &RunConfig) -> Result<(Value, Vec<String>)> {
    let g = bipartite(cell)?;
    let name = format!("n={:?} t={:?} s={:?}", cell.n, cell.t, cell.s);
    let ex = g.epsilon(Side::X)?;
    let ey = g.epsilon(Side::Y)?;
    let mut failures = Vec::new();
    if ex.alpha_xy != ey.alpha_xy {
        failures.push(format!("{name}: |Y| - eps(X) != |X| - eps(Y)"));
    }
    for r in [&ex, &ey] {
        for f in &r.fragments {
            let image = g.phi(f.side, &f.set)?;
            if g.phi(f.side.other(), &image)? != f.set || f.set.len() + image.len() != r.alpha_xy {
                failures.push(format!("{name}: phi is not an involution on a fragment of {}", f.side));
            }
        }
    }
    let mut notes = Vec::new();
    let mut shapes = |side: Side| -> Result<Option<Vec<ShapeRow>>> {
        match min_imprimitive_deficiency(&g, side) {
            Ok(v) => Ok(Some(v.iter().map(|e| shape_row(&g, e)).collect::<Result<_>>()?)),
            Err(Error::NoImprimitiveShape) => {
                notes.push(format!("no imprimitive shape on {side}"));
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    };
    let min_x = shapes(Side::X)?;
    let min_y = shapes(Side::Y)?;
    let report = FragmentsReport {
        n: cell.n.clone(),
        t: cell.t.clone(),
        s: cell.s.clone(),
        x: side_report(&ex),
        y: side_report(&ey),
        min_imprimitive_x: min_x,
        min_imprimitive_y: min_y,
        notes,
    };
    Ok((to_value(&report), failures))
}

#[derive(Serialize)]
struct HReport {
    n: Vec<u32>,
    t: Vec<u32>,
    s: Vec<u32>,
    j: u32,
    a0: String,
    b0: String,
    coeffs: Vec<String>,
    integral_roots: Vec<String>,
    roots_in_range: Vec<String>,
    lhs: String,
    rhs: String,
    strict: bool,
    /// The inequality (`s_j = 2`) or rootlessness (`s_j >= 3`) is asserted
    /// only when every hypothesis holds.
    asserted: bool,
}

fn hpoly(cell: &Cell) -> Result<(Value, Vec<String>)> {
    let g = bipartite(cell)?;
    let j = cell.j.context("--j is required with --h-poly")?;
    if j == 0 {
        bail!("--j is 1-based");
    }
    let h = h_polynomial(&g, j as usize - 1)?;
    let asserted = g.check_hypotheses().all_satisfied();
    let mut failures = Vec::new();
    let name = format!("n={:?} t={:?} s={:?} j={j}", cell.n, cell.t, cell.s);
    if asserted {
        if cell.s[j as usize - 1] == 2 && !h.strict {
            failures.push(format!("{name}: {} >= {}", h.lhs, h.rhs));
        }
        if cell.s[j as usize - 1] >= 3 && !h.roots_in_range.is_empty() {
            failures.push(format!("{name}: integral roots {:?} in range", h.roots_in_range));
        }
    }
    let strings = |v: &[BigInt]| v.iter().map(ToString::to_string).collect();
    let report = HReport {
        n: cell.n.clone(),
        t: cell.t.clone(),
        s: cell.s.clone(),
        j,
        a0: h.a0.to_string(),
        b0: h.b0.to_string(),
        coeffs: h.coeffs.iter().map(ToString::to_string).collect(),
        integral_roots: strings(&h.integral_roots),
        roots_in_range: strings(&h.roots_in_range),
        lhs: h.lhs.to_string(),
        rhs: h.rhs.to_string(),
        strict: h.strict,
        asserted,
    };
    Ok((to_value(&report), failures))
}

#[derive(Serialize)]
struct GridReport {
    grid: &'static str,
    pmax: u32,
    nmax: u32,
    cells: usize,
    /// Cells left out by the layer-order condition `|Y| >= |X|`.
    excluded: usize,
    checked: usize,
    violations: usize,
    first_violations: Vec<String>,
}

/// Per-cell grid verdict: items checked and violations found.
fn grid_cell(kind: GridKind, n: &[u32], t: &[u32], s: &[u32]) -> Result<Option<(usize, Vec<String>)>> {
    let g = BipartiteDisjointness::new(n, t, s)?;
    let name = format!("n={n:?} t={t:?} s={s:?}");
    let mut bad = Vec::new();
    let mut checked = 0;
    match kind {
        GridKind::Claim3 => {
            if g.size(Side::Y) < g.size(Side::X) {
                return Ok(None);
            }
            for side in [Side::X, Side::Y] {
                for e in imprimitive_shapes(&g, side)? {
                    checked += 1;
                    let q = size_estimate(&g, &e.shape)?;
                    if *q.margin() <= crossfam_core::Ratio::from_integer(0.into()) {
                        bad.push(format!(
                            "{name} {side} T1={:?} T2={:?}: {}",
                            one_based(&e.shape.t1),
                            one_based(&e.shape.t2),
                            q.margin()
                        ));
                    }
                }
            }
        }
        GridKind::H => {
            for (j, &sj) in s.iter().enumerate() {
                checked += 1;
                let h = h_polynomial(&g, j)?;
                if sj == 2 && !h.strict {
                    bad.push(format!("{name} j={}: {} >= {}", j + 1, h.lhs, h.rhs));
                }
                if sj >= 3 && !h.roots_in_range.is_empty() {
                    bad.push(format!("{name} j={}: roots {:?}", j + 1, h.roots_in_range));
                }
            }
        }
    }
    Ok(Some((checked, bad)))
}

fn run_grid(c: &RunConfig) -> Result<Outcome> {
    let kind = c.grid.expect("grid mode");
    let (pmax, nmax) = (c.pmax.unwrap_or(3), c.nmax.unwrap_or(9));
    if !(2..=4).contains(&pmax) {
        bail!("--pmax must be between 2 and 4");
    }
    if nmax > 64 {
        bail!("--nmax must be at most 64");
    }
    let cells = hypothesis_grid(pmax as usize, nmax);
    let results = cells
        .par_iter()
        .map(|(n, t, s)| grid_cell(kind, n, t, s))
        .collect::<Result<Vec<_>>>()?;
    let mut report = GridReport {
        grid: match kind {
            GridKind::Claim3 => "claim3",
            GridKind::H => "h",
        },
        pmax,
        nmax,
        cells: cells.len(),
        excluded: 0,
        checked: 0,
        violations: 0,
        first_violations: Vec::new(),
    };
    for r in results {
        match r {
            None => report.excluded += 1,
            Some((checked, bad)) => {
                report.checked += checked;
                report.violations += bad.len();
                report
                    .first_violations
                    .extend(bad.into_iter().take(10 - report.first_violations.len().min(10)));
            }
        }
    }
    report.first_violations.truncate(10);
    let failures = if report.violations > 0 {
        vec![format!("{} grid: {} violations", report.grid, report.violations)]
    } else {
        Vec::new()
    };
    Ok(Outcome {
        reports: vec![to_value(&report)],
        failures,
    })
}
