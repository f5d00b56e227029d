//! Systems attaining the maximum-sum bound: the three constructions and the
//! classifier that recognizes them.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{bound_main0, first_violation, CrossSystem};
use crate::arith::Ratio;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::kneser::ProductKneserGraph;
use crate::layer::{Disjointness, Layer};
use crate::spec::GroundSpec;
use crate::vertex::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremalCase {
    /// One family is the whole layer, the others are empty.
    FullPlusEmpties,
    /// Every family is the same maximum intersecting family.
    IdenticalMaximum,
    /// Two families built from complement pairs over balanced parts.
    Boundary,
}

impl ExtremalCase {
    pub fn label(self) -> &'static str {
        match self {
            ExtremalCase::FullPlusEmpties => "(i)",
            ExtremalCase::IdenticalMaximum => "(ii)",
            ExtremalCase::Boundary => "(iii)",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtremalCase::FullPlusEmpties => "full-plus-empties",
            ExtremalCase::IdenticalMaximum => "identical-maximum-intersecting",
            ExtremalCase::Boundary => "boundary-structure",
        }
    }
}

/// Routes the complement pair `{representative, complement}` to family
/// `family` (0 or 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRoute {
    pub representative: Vertex,
    pub family: usize,
}

/// The data of a boundary-structure system. Vertices live on the spec
/// restricted to `s1` (0-based part indices, ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData {
    pub s1: Vec<usize>,
    pub base: Vec<Vertex>,
    pub routes: Vec<PairRoute>,
}

#[derive(Clone, Debug)]
pub struct ExtremalCertificate {
    pub total: BigUint,
    pub bound: BigUint,
    /// Every matching case in ascending order; empty below the bound.
    pub cases: Vec<ExtremalCase>,
    /// Present when the boundary structure matches (smallest `S_1` first).
    pub boundary: Option<BoundaryData>,
}

impl ExtremalCertificate {
    pub fn primary(&self) -> Option<ExtremalCase> {
        self.cases.first().copied()
    }

    pub fn label(&self) -> &'static str {
        self.primary().map_or("none", ExtremalCase::label)
    }
}

fn family_where(spec: &GroundSpec, layer: &Layer, keep: impl Fn(usize) -> bool) -> Result<Family> {
    Family::from_ranks(spec, (0..layer.len()).filter(|&r| keep(r)))
}

/// The whole layer followed by `m - 1` empty families.
pub fn construct_case_i(spec: &GroundSpec, m: usize) -> Result<CrossSystem> {
    let mut families = vec![Family::full(spec)?];
    for _ in 1..m {
        families.push(Family::empty(spec)?);
    }
    CrossSystem::new(spec, families, true)
}

/// `m` copies of the star on element 1 of the first critical part.
pub fn construct_case_ii(spec: &GroundSpec, m: usize) -> Result<CrossSystem> {
    if !spec.is_kneser() {
        return Err(Error::precondition(format!("{spec}: every part needs n_i >= 2k_i")));
    }
    let part = star_part(spec);
    let layer = Layer::new(spec)?;
    let star = family_where(spec, &layer, |r| layer.mask(r, part) & 1 == 1)?;
    CrossSystem::new(spec, vec![star; m], true)
}

/// The part maximizing `C(n_i - 1, k_i - 1) prod_{j != i} C(n_j, k_j)`,
/// i.e. the first part with the smallest `n_i / k_i`.
fn star_part(spec: &GroundSpec) -> usize {
    spec.critical_parts()[0]
}

fn complement_rank(fl: &Layer, r: usize) -> usize {
    let digits: Vec<usize> = (0..fl.spec().p())
        .map(|i| {
            let n = fl.spec().part(i).n;
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let c = !fl.mask(r, i) & full;
            fl.part_masks(i).iter().position(|&m| m == c).expect("balanced part")
        })
        .collect();
    fl.rank_of_digits(&digits)
}

fn check_s1(spec: &GroundSpec, s1: &[usize]) -> Result<()> {
    if s1.is_empty() {
        return Err(Error::precondition("S1 must be nonempty"));
    }
    if s1.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("S1 must be strictly increasing"));
    }
    for &s in s1 {
        if s >= spec.p() || !spec.part(s).is_balanced() {
            return Err(Error::precondition(format!("part {} of S1 must have n = 2k", s + 1)));
        }
    }
    Ok(())
}

/// Builds the two families
/// `(base + pairs routed to it) x prod_{s not in S1} C([n_s], k_s)`.
///
/// Requires `min n_i / k_i = 2`, a nonempty `S1` of parts with `n_s = 2k_s`,
/// a base with no member equal to the complement of another and
/// `2 |base| < |F|`, and a route for each remaining complement pair of `F`.
pub fn construct_case_iii(
    spec: &GroundSpec,
    s1: &[usize],
    base: &[Vertex],
    routes: &[PairRoute],
) -> Result<CrossSystem> {
    if !spec.is_kneser() {
        return Err(Error::precondition(format!("{spec}: every part needs n_i >= 2k_i")));
    }
    if spec.min_ratio() != Ratio::from_integer(2.into()) {
        return Err(Error::precondition("min n_i/k_i must equal 2"));
    }
    check_s1(spec, s1)?;
    let fspec = spec.restrict(s1)?;
    let fl = Layer::new(&fspec)?;
    let mut in_base = FixedBitSet::with_capacity(fl.len());
    for v in base {
        let r = fl.rank_of(v)?;
        if in_base.put(r) {
            return Err(Error::precondition(format!("base lists {v} twice")));
        }
    }
    for r in in_base.ones() {
        let c = complement_rank(&fl, r);
        if in_base.contains(c) {
            return Err(Error::precondition(format!(
                "base contains {} and its complement",
                fl.vertex(r)
            )));
        }
    }
    if 2 * in_base.count_ones(..) >= fl.len() {
        return Err(Error::precondition(format!(
            "2 w0 = {} must be below |F| = {}",
            2 * in_base.count_ones(..),
            fl.len()
        )));
    }
    let mut taken = in_base.clone();
    for r in in_base.ones() {
        taken.insert(complement_rank(&fl, r));
    }
    let mut side = [in_base.clone(), in_base.clone()];
    for route in routes {
        if route.family > 1 {
            return Err(Error::precondition(format!(
                "route to family {} (must be 0 or 1)",
                route.family
            )));
        }
        let r = fl.rank_of(&route.representative)?;
        let c = complement_rank(&fl, r);
        if taken.contains(r) || taken.contains(c) {
            return Err(Error::precondition(format!(
                "pair of {} is routed twice or meets the base",
                route.representative
            )));
        }
        taken.insert(r);
        taken.insert(c);
        side[route.family].insert(r);
        side[route.family].insert(c);
    }
    if taken.count_ones(..) != fl.len() {
        return Err(Error::precondition(format!(
            "{} complement pairs are not routed",
            (fl.len() - taken.count_ones(..)) / 2
        )));
    }
    let layer = Layer::new(spec)?;
    let families = side
        .iter()
        .map(|p| family_where(spec, &layer, |r| p.contains(layer.project(r, s1))))
        .collect::<Result<Vec<_>>>()?;
    let first_nonempty = !families[0].is_empty();
    let sys = CrossSystem::new(spec, families, first_nonempty)?;
    let check = first_violation(&Disjointness::on(&layer)?, sys.families());
    if !check.cross_intersecting {
        return Err(Error::assertion(format!(
            "construction is not cross-intersecting: {:?}",
            check.violation
        )));
    }
    Ok(sys)
}

/// Matches a cross-intersecting system against the three extremal shapes.
///
/// Below the bound no case is reported. A system above the bound, or at the
/// bound but matching no case, yields `AssertionFailed`.
pub fn classify_optimum(sys: &CrossSystem) -> Result<ExtremalCertificate> {
    let spec = sys.spec();
    let layer = Layer::new(spec)?;
    let d = Disjointness::on(&layer)?;
    if !first_violation(&d, sys.families()).cross_intersecting {
        return Err(Error::precondition("system is not cross-intersecting"));
    }
    let total = BigUint::from(sys.total());
    let bound = bound_main0(spec, sys.m())?;
    if total > bound {
        return Err(Error::assertion(format!(
            "{spec}, m={}: total {total} exceeds bound {bound}",
            sys.m()
        )));
    }
    let mut cert = ExtremalCertificate {
        total,
        bound,
        cases: Vec::new(),
        boundary: None,
    };
    if cert.total < cert.bound {
        return Ok(cert);
    }

    let sizes = sys.sizes();
    let full = sizes.iter().filter(|&&s| s == layer.len()).count();
    if full == 1 && sizes.iter().filter(|&&s| s == 0).count() == sys.m() - 1 {
        cert.cases.push(ExtremalCase::FullPlusEmpties);
    }

    let first = sys.family(0);
    if sys.families().iter().all(|f| f == first) {
        let g = ProductKneserGraph::new(spec)?;
        let alpha = g.alpha_formula().to_usize().expect("enumerable");
        if first.len() == alpha && g.is_independent(first)? {
            cert.cases.push(ExtremalCase::IdenticalMaximum);
        }
    }

    if sys.m() == 2 && spec.min_ratio() == Ratio::from_integer(2.into()) {
        cert.boundary = match_boundary(sys, &layer)?;
        if cert.boundary.is_some() {
            cert.cases.push(ExtremalCase::Boundary);
        }
    }

    if cert.cases.is_empty() {
        return Err(Error::assertion(format!(
            "{spec}, m={}: system {:?} attains the bound but matches no case",
            sys.m(),
            sys
        )));
    }
    Ok(cert)
}

/// Nonempty subsets of `parts`, by size and then lexicographically.
fn subsets_by_size(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..1 << parts.len())
        .map(|m| {
            parts
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn match_boundary(sys: &CrossSystem, layer: &Layer) -> Result<Option<BoundaryData>> {
    let spec = sys.spec();
    for s1 in subsets_by_size(&spec.balanced_parts()) {
        let fspec = spec.restrict(&s1)?;
        let fl = Layer::new(&fspec)?;
        let fibre = layer.len() / fl.len();
        let project = |f: &Family| {
            let mut p = FixedBitSet::with_capacity(fl.len());
            for r in f.bits().ones() {
                p.insert(layer.project(r, &s1));
            }
            p
        };
        let (p1, p2) = (project(sys.family(0)), project(sys.family(1)));
        if p1.count_ones(..) * fibre != sys.family(0).len() || p2.count_ones(..) * fibre != sys.family(1).len() {
            continue;
        }
        let mut base = p1.clone();
        base.intersect_with(&p2);
        let comp: Vec<usize> = (0..fl.len()).map(|r| complement_rank(&fl, r)).collect();
        if base.ones().any(|r| base.contains(comp[r])) || 2 * base.count_ones(..) >= fl.len() {
            continue;
        }
        // the rest of F splits into whole complement pairs, each owned by
        // exactly one family
        let mut ok = true;
        let mut routes = Vec::new();
        for (r, &c) in comp.iter().enumerate() {
            if base.contains(r) || base.contains(c) {
                continue;
            }
            let owner = match (p1.contains(r), p2.contains(r)) {
                (true, false) => 0,
                (false, true) => 1,
                _ => {
                    ok = false;
                    break;
                }
            };
            let partner = [&p1, &p2][owner].contains(c);
            if !partner {
                ok = false;
                break;
            }
            if r < c {
                routes.push(PairRoute {
                    representative: fl.vertex(r),
                    family: owner,
                });
            }
        }
        if ok {
            return Ok(Some(BoundaryData {
                s1,
                base: base.ones().map(|r| fl.vertex(r)).collect(),
                routes,
            }));
        }
    }
    Ok(None)
}
