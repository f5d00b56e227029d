//! The disjointness graph on a layer, i.e. the direct product
//! `KG_{n_1,k_1} x ... x KG_{n_p,k_p}`.

mod flow;
pub mod solver;

use std::ops::ControlFlow;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{binomial, ratio, Ratio};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::layer::{Disjointness, Layer};
use crate::spec::GroundSpec;

pub use solver::SolverLimits;

/// Layers up to this order get explicit adjacency rows for the solver.
pub const EAGER_ADJACENCY_LIMIT: usize = 8192;

/// `M = max_i C(n_i - 1, k_i - 1) prod_{j != i} C(n_j, k_j)`.
pub fn alpha_formula(spec: &GroundSpec) -> BigUint {
    (0..spec.p())
        .map(|i| {
            let p = spec.part(i);
            spec.binom_product(Some((i, &binomial((p.n - 1) as u64, (p.k - 1) as u64))))
        })
        .max()
        .expect("spec has at least one part")
}

pub struct ProductKneserGraph {
    spec: GroundSpec,
    alpha_formula: BigUint,
    critical_parts: Vec<usize>,
    disjointness: Option<Disjointness>,
    adjacency: OnceLock<Vec<FixedBitSet>>,
}

impl std::fmt::Debug for ProductKneserGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ProductKneserGraph({})", self.spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsClass {
    Empty,
    Maximum,
    Imprimitive,
    Ordinary,
}

impl IsClass {
    /// Classes on which the imprimitivity inequality is tight.
    pub fn is_tight(self) -> bool {
        self != IsClass::Ordinary
    }

    pub fn name(self) -> &'static str {
        match self {
            IsClass::Empty => "empty",
            IsClass::Maximum => "maximum",
            IsClass::Imprimitive => "imprimitive",
            IsClass::Ordinary => "ordinary",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndependentSetReport {
    pub set: Family,
    pub size: usize,
    pub closed_neighborhood_size: usize,
    pub non_neighbors_size: usize,
    /// `|A| / |N[A]|`, zero for the empty set.
    pub ratio: Ratio,
    pub classification: IsClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaReport {
    pub formula: BigUint,
    /// Branch-and-bound value, when the layer was small enough and the
    /// search finished inside its budget.
    pub solver: Option<usize>,
    pub solver_note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct MisNormality {
    pub normal: bool,
    /// First maximum independent set (lexicographic) that is not a preimage.
    pub witness: Option<Family>,
    /// Maximum independent sets inspected.
    pub inspected: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImprimitivityMode {
    Predicate,
    Search,
}

#[derive(Clone, Debug)]
pub struct ImprimitivityVerdict {
    pub imprimitive: bool,
    pub witness: Option<Family>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lhs: Ratio,
    pub rhs: Ratio,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoHomomorphismCheck {
    pub alpha_b: usize,
    /// `|S| / |G|`.
    pub lhs: Ratio,
    /// `alpha(G[B]) / |B|`.
    pub rhs: Ratio,
    pub equality: bool,
}

/// Decomposition of an independent set as `base x (full layers off the
/// balanced parts)`.
#[derive(Clone, Debug)]
pub struct CylinderStructure {
    /// Parts with `n_s = 2 k_s`.
    pub support: Vec<usize>,
    /// Projection onto the support parts.
    pub base: Option<Family>,
    pub is_cylinder: bool,
    pub base_intersecting: bool,
    pub base_maximum: bool,
}

impl CylinderStructure {
    pub fn holds(&self) -> bool {
        self.is_cylinder && self.base_intersecting && !self.base_maximum
    }
}

impl ProductKneserGraph {
    /// Requires `n_i >= 2 k_i` for every part.
    pub fn new(spec: &GroundSpec) -> Result<ProductKneserGraph> {
        if !spec.is_kneser() {
            return Err(Error::precondition(format!("{spec}: every part needs n_i >= 2k_i")));
        }
        let disjointness = if spec.is_enumerable() {
            Some(Disjointness::on(&Layer::new(spec)?)?)
        } else {
            None
        };
        Ok(ProductKneserGraph {
            spec: spec.clone(),
            alpha_formula: alpha_formula(spec),
            critical_parts: spec.critical_parts(),
            disjointness,
            adjacency: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &GroundSpec {
        &self.spec
    }

    pub fn order(&self) -> &BigUint {
        self.spec.layer_size()
    }

    pub fn alpha_formula(&self) -> &BigUint {
        &self.alpha_formula
    }

    /// `alpha / |G|`, equal to `min_i k_i / n_i`.
    pub fn alpha_ratio(&self) -> Ratio {
        ratio(&self.alpha_formula, self.order())
    }

    pub fn critical_parts(&self) -> &[usize] {
        &self.critical_parts
    }

    pub fn disjointness(&self) -> Result<&Disjointness> {
        self.disjointness
            .as_ref()
            .ok_or_else(|| Error::budget("layer size", self.order(), crate::spec::ENUMERABLE_LIMIT))
    }

    pub fn layer(&self) -> Result<&Layer> {
        Ok(self.disjointness()?.from_layer())
    }

    fn alpha_usize(&self) -> usize {
        self.alpha_formula.to_usize().expect("enumerable alpha fits in usize")
    }

    /// Explicit adjacency rows, built on first use.
    pub fn adjacency(&self) -> Result<&[FixedBitSet]> {
        let d = self.disjointness()?;
        if d.from_layer().len() > EAGER_ADJACENCY_LIMIT {
            return Err(Error::budget(
                "adjacency rows",
                d.from_layer().len(),
                EAGER_ADJACENCY_LIMIT,
            ));
        }
        Ok(self.adjacency.get_or_init(|| d.adjacency_rows()))
    }

    fn check_family(&self, f: &Family) -> Result<()> {
        if f.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// `N(F)`, or `N[F] = N(F) + F` when `closed`.
    pub fn neighborhood(&self, f: &Family, closed: bool) -> Result<Family> {
        self.check_family(f)?;
        let mut bits = self.disjointness()?.neighborhood(f.bits());
        if closed {
            bits.union_with(f.bits());
        }
        Family::from_bits(&self.spec, bits)
    }

    /// Vertices outside `N[F]`; the whole layer when `F` is empty.
    pub fn non_neighbors(&self, f: &Family) -> Result<Family> {
        Ok(self.neighborhood(f, true)?.complement())
    }

    /// Whether no two members of `F` are disjoint.
    pub fn is_independent(&self, f: &Family) -> Result<bool> {
        self.check_family(f)?;
        let d = self.disjointness()?;
        let mut ok = true;
        for r in f.bits().ones() {
            d.for_each_neighbor(r, |n| ok &= !f.contains_rank(n));
            if !ok {
                break;
            }
        }
        Ok(ok)
    }

    /// Solver and formula values; the solver is skipped (with a note) when
    /// the layer is too large or the search exceeds its budget.
    pub fn alpha_exact(&self, limits: SolverLimits) -> Result<AlphaReport> {
        let (solver, note) = match self.adjacency() {
            Err(e) => (None, Some(e.to_string())),
            Ok(adj) => match solver::independence_number(adj, limits) {
                Ok(a) => (Some(a), None),
                Err(e) => (None, Some(e.to_string())),
            },
        };
        if let Some(a) = solver {
            if BigUint::from(a) != self.alpha_formula {
                return Err(Error::assertion(format!(
                    "{}: solver alpha {a} differs from formula {}",
                    self.spec, self.alpha_formula
                )));
            }
        }
        Ok(AlphaReport {
            formula: self.alpha_formula.clone(),
            solver,
            solver_note: note,
        })
    }

    fn family_of(&self, members: &[usize]) -> Family {
        Family::from_ranks(&self.spec, members.iter().copied()).expect("ranks come from the layer")
    }

    /// Calls `f` with every maximum independent set in lexicographic order
    /// of rank lists; the size comes from the exact solver.
    pub fn for_each_maximum_independent_set(
        &self,
        limits: SolverLimits,
        mut f: impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<bool> {
        let adj = self.adjacency()?;
        let alpha = solver::independence_number(adj, limits)?;
        solver::for_each_independent_set_of_size(adj, alpha, limits, &mut f)
    }

    pub fn enumerate_maximum_independent_sets(&self, limits: SolverLimits) -> Result<Vec<Family>> {
        let mut out = Vec::new();
        self.for_each_maximum_independent_set(limits, |s| {
            out.push(self.family_of(s));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Whether the members of `ranks` form the full preimage of their
    /// projection onto some single part.
    fn is_preimage(&self, layer: &Layer, ranks: &[usize]) -> bool {
        (0..self.spec.p()).any(|i| {
            let mut seen = vec![false; layer.part_masks(i).len()];
            let mut distinct = 0usize;
            for &r in ranks {
                let d = layer.digit(r, i);
                if !seen[d] {
                    seen[d] = true;
                    distinct += 1;
                }
            }
            distinct * (layer.len() / seen.len()) == ranks.len()
        })
    }

    /// Checks that every maximum independent set is a preimage of an
    /// independent set of one factor under the coordinate projection.
    pub fn is_mis_normal(&self, limits: SolverLimits) -> Result<MisNormality> {
        let layer = self.layer()?;
        let mut witness = None;
        let mut inspected = 0;
        self.for_each_maximum_independent_set(limits, |s| {
            inspected += 1;
            if self.is_preimage(layer, s) {
                ControlFlow::Continue(())
            } else {
                witness = Some(self.family_of(s));
                ControlFlow::Break(())
            }
        })?;
        Ok(MisNormality {
            normal: witness.is_none(),
            witness,
            inspected,
        })
    }

    fn classify_sizes(&self, size: usize, closed: usize) -> IsClass {
        let alpha = self.alpha_usize();
        if size == 0 {
            IsClass::Empty
        } else if size == alpha {
            IsClass::Maximum
        } else if size < alpha && BigUint::from(size) * self.order() == &self.alpha_formula * BigUint::from(closed) {
            IsClass::Imprimitive
        } else {
            IsClass::Ordinary
        }
    }

    pub fn classify_independent_set(&self, f: &Family) -> Result<IndependentSetReport> {
        if !self.is_independent(f)? {
            return Err(Error::NotIndependent);
        }
        let closed = self.neighborhood(f, true)?.len();
        let size = f.len();
        let order = self.layer()?.len();
        Ok(IndependentSetReport {
            set: f.clone(),
            size,
            closed_neighborhood_size: closed,
            non_neighbors_size: order - closed,
            ratio: if closed == 0 {
                Ratio::zero()
            } else {
                crate::arith::ratio_u(size as u64, closed as u64)
            },
            classification: self.classify_sizes(size, closed),
        })
    }

    /// The closed-form criterion: some part with `n_i = 2k_i >= 4`, or two
    /// distinct parts with `n = 2, k = 1`.
    pub fn imprimitive_predicate(&self) -> bool {
        let parts = self.spec.parts();
        parts.iter().any(|p| p.is_balanced() && p.n >= 4) || parts.iter().filter(|p| p.n == 2 && p.k == 1).count() >= 2
    }

    /// Exhaustive search for an imprimitive independent set.
    ///
    /// The graph is vertex-transitive, so only sets through vertex 0 are
    /// considered. With `rho = |G| / alpha`, every independent `A` has
    /// `D(A) = |N[A]| - rho |A| >= 0`, imprimitive sets have `D = 0`, and
    /// each of them lies in a maximum independent set `J` (which itself has
    /// `D(J) = 0`). On subsets of `J`, `D` is a coverage function minus a
    /// modular one, so its smallest minimizer through vertex 0 comes from a
    /// minimum cut; an imprimitive set exists iff that minimizer is a proper
    /// subset of `J` for some `J` through vertex 0.
    pub fn search_imprimitive(&self, limits: SolverLimits) -> Result<Option<Family>> {
        let adj = self.adjacency()?;
        let alpha = self.alpha_usize();
        if alpha < 2 || alpha == adj.len() {
            return Ok(None);
        }
        let order = adj.len() as u64;
        let mut found = None;
        solver::for_each_independent_set_of_size_through(adj, 0, alpha, limits, |j| {
            let a = flow::minimal_minimizer(adj, j, &[0], order, alpha as u64);
            if a.count_ones(..) < alpha {
                found = Some(Family::from_bits(&self.spec, a).expect("layer-sized bitset"));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if let Some(f) = &found {
            let class = self.classify_independent_set(f)?.classification;
            if class != IsClass::Imprimitive {
                return Err(Error::assertion(format!(
                    "{}: min-cut set is {}",
                    self.spec,
                    class.name()
                )));
            }
        }
        Ok(found)
    }

    /// The same search by brute force: every independent set through vertex 0
    /// is visited. Kept for cross-checking.
    pub fn search_imprimitive_unreduced(&self, limits: SolverLimits) -> Result<Option<Family>> {
        let adj = self.adjacency()?;
        let alpha = self.alpha_usize();
        if alpha < 2 {
            return Ok(None);
        }
        let mut all = FixedBitSet::with_capacity(adj.len());
        all.insert_range(..);
        let mut closed = FixedBitSet::with_capacity(adj.len());
        let mut found = None;
        solver::for_each_independent_set(adj, &all, Some(0), alpha - 1, limits, |s| {
            if s.is_empty() {
                return ControlFlow::Continue(());
            }
            closed.clear();
            for &v in s {
                closed.insert(v);
                closed.union_with(&adj[v]);
            }
            if self.classify_sizes(s.len(), closed.count_ones(..)) == IsClass::Imprimitive {
                found = Some(self.family_of(s));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found)
    }

    pub fn is_is_imprimitive(&self, mode: ImprimitivityMode, limits: SolverLimits) -> Result<ImprimitivityVerdict> {
        Ok(match mode {
            ImprimitivityMode::Predicate => ImprimitivityVerdict {
                imprimitive: self.imprimitive_predicate(),
                witness: None,
            },
            ImprimitivityMode::Search => {
                let witness = self.search_imprimitive(limits)?;
                ImprimitivityVerdict {
                    imprimitive: witness.is_some(),
                    witness,
                }
            }
        })
    }

    /// `|F| + (alpha/|G|) |N̄[F]| <= alpha`, tight exactly on empty, maximum
    /// and imprimitive sets. Both facts are asserted.
    pub fn check_lemma_imprimitive(&self, f: &Family) -> Result<LemmaCheck> {
        let report = self.classify_independent_set(f)?;
        let lhs = Ratio::from_integer(report.size.into())
            + self.alpha_ratio() * Ratio::from_integer(report.non_neighbors_size.into());
        let rhs = Ratio::from_integer(self.alpha_formula.clone().into());
        if lhs > rhs {
            return Err(Error::assertion(format!("{}: {lhs} > alpha = {rhs}", self.spec)));
        }
        let equality = lhs == rhs;
        if equality != report.classification.is_tight() {
            return Err(Error::assertion(format!(
                "{}: equality {equality} but set is {}",
                self.spec,
                report.classification.name()
            )));
        }
        Ok(LemmaCheck { lhs, rhs, equality })
    }

    /// For independent `S` and nonempty `B`: `|S|/|G| <= alpha(G[B])/|B|`,
    /// and at equality `|S ∩ B| = alpha(G[B])`. Both are asserted; returns
    /// the two ratios.
    pub fn check_no_homomorphism(&self, b: &Family, s: &Family, limits: SolverLimits) -> Result<NoHomomorphismCheck> {
        self.check_family(b)?;
        if b.is_empty() {
            return Err(Error::EmptyFamily("B"));
        }
        if !self.is_independent(s)? {
            return Err(Error::NotIndependent);
        }
        let adj = self.adjacency()?;
        let alpha_b = solver::independence_number_within(adj, b.bits(), limits)?;
        let order = adj.len() as u64;
        let lhs = crate::arith::ratio_u(s.len() as u64, order);
        let rhs = crate::arith::ratio_u(alpha_b as u64, b.len() as u64);
        if lhs > rhs {
            return Err(Error::assertion(format!("{}: |S|/|G| = {lhs} > {rhs}", self.spec)));
        }
        let equality = lhs == rhs;
        if equality {
            let meet = s.intersection(b)?.len();
            if meet != alpha_b {
                return Err(Error::assertion(format!(
                    "{}: tight ratio but |S ∩ B| = {meet} != {alpha_b}",
                    self.spec
                )));
            }
        }
        Ok(NoHomomorphismCheck {
            alpha_b,
            lhs,
            rhs,
            equality,
        })
    }

    /// Splits `f` as `base x X'` over the balanced parts and checks that
    /// the base is a non-maximum intersecting family.
    pub fn cylinder_structure(&self, f: &Family) -> Result<CylinderStructure> {
        self.check_family(f)?;
        let support = self.spec.balanced_parts();
        if support.is_empty() {
            return Ok(CylinderStructure {
                support,
                base: None,
                is_cylinder: false,
                base_intersecting: false,
                base_maximum: false,
            });
        }
        let layer = self.layer()?;
        let sub_spec = self.spec.restrict(&support)?;
        let base = Family::from_ranks(&sub_spec, f.bits().ones().map(|r| layer.project(r, &support)))?;
        let fibre = layer.len() / base.layer_len();
        let is_cylinder = base.len() * fibre == f.len();
        let sub = ProductKneserGraph::new(&sub_spec)?;
        let base_intersecting = sub.is_independent(&base)?;
        let base_maximum = BigUint::from(base.len()) == sub.alpha_formula;
        Ok(CylinderStructure {
            support,
            base: Some(base),
            is_cylinder,
            base_intersecting,
            base_maximum,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Vertex;

    fn graph(n: &[u32], k: &[u32]) -> ProductKneserGraph {
        ProductKneserGraph::new(&GroundSpec::from_lists(n, k).unwrap()).unwrap()
    }

    fn fam(g: &ProductKneserGraph, sets: &[&[&[u32]]]) -> Family {
        let vs: Vec<Vertex> = sets
            .iter()
            .map(|parts| Vertex::from_elements(g.spec(), parts).unwrap())
            .collect();
        Family::from_vertices(g.spec(), &vs).unwrap()
    }

    #[test]
    fn rejects_non_kneser_parts() {
        assert!(ProductKneserGraph::new(&GroundSpec::single(5, 3).unwrap()).is_err());
    }

    #[test]
    fn alpha_formula_and_ratio() {
        let g = graph(&[2, 3], &[1, 1]);
        assert_eq!(g.alpha_formula(), &BigUint::from(3u32));
        assert_eq!(g.critical_parts(), &[0]);
        for (n, k) in [(&[5u32][..], &[2u32][..]), (&[4, 5], &[1, 2]), (&[6, 9, 4], &[3, 2, 1])] {
            let g = graph(n, k);
            let min = n
                .iter()
                .zip(k)
                .map(|(&n, &k)| crate::arith::ratio_u(k as u64, n as u64))
                .max()
                .unwrap();
            assert_eq!(g.alpha_ratio(), min);
        }
    }

    #[test]
    fn neighborhood_examples() {
        let g = graph(&[4], &[2]);
        let f = fam(&g, &[&[&[1, 2]]]);
        assert_eq!(g.neighborhood(&f, false).unwrap(), fam(&g, &[&[&[3, 4]]]));
        assert_eq!(g.neighborhood(&f, true).unwrap().len(), 2);

        let g = graph(&[5], &[2]);
        let f = fam(&g, &[&[&[1, 2]]]);
        assert_eq!(g.neighborhood(&f, false).unwrap().len(), 3);
        assert_eq!(g.non_neighbors(&f).unwrap().len(), 6);
        assert_eq!(g.non_neighbors(&Family::empty(g.spec()).unwrap()).unwrap().len(), 10);

        let g = graph(&[2, 2], &[1, 1]);
        let f = fam(&g, &[&[&[1], &[1]]]);
        assert_eq!(g.neighborhood(&f, false).unwrap(), fam(&g, &[&[&[2], &[2]]]));
    }

    #[test]
    fn non_neighbors_of_two_sets_in_kg42() {
        let g = graph(&[4], &[2]);
        let f = fam(&g, &[&[&[1, 2]], &[&[1, 3]]]);
        // N[F] = {12, 13, 34, 24}
        assert_eq!(g.non_neighbors(&f).unwrap(), fam(&g, &[&[&[1, 4]], &[&[2, 3]]]));
    }

    #[test]
    fn alpha_examples() {
        let lim = SolverLimits::default();
        for (n, k, a) in [
            (&[5u32][..], &[2u32][..], 4usize),
            (&[4], &[2], 3),
            (&[2, 3], &[1, 1], 3),
        ] {
            let r = graph(n, k).alpha_exact(lim).unwrap();
            assert_eq!(r.solver, Some(a));
            assert_eq!(r.formula, BigUint::from(a));
        }
        let big = graph(&[20, 20], &[5, 5]).alpha_exact(lim).unwrap();
        assert_eq!(big.solver, None);
        assert!(big.solver_note.is_some());
    }

    #[test]
    fn maximum_independent_sets_examples() {
        let lim = SolverLimits::default();
        let g = graph(&[5], &[2]);
        let sets = g.enumerate_maximum_independent_sets(lim).unwrap();
        assert_eq!(sets.len(), 5);
        for (x, s) in (1..=5u32).zip(&sets) {
            let star: Vec<Vertex> = g
                .layer()
                .unwrap()
                .vertex(0)
                .spec()
                .layer_size()
                .to_usize()
                .map(|len| (0..len).map(|r| g.layer().unwrap().vertex(r)).collect())
                .unwrap();
            let star: Vec<&Vertex> = star.iter().filter(|v| v.masks()[0] >> (x - 1) & 1 == 1).collect();
            assert_eq!(s, &Family::from_vertices(g.spec(), star).unwrap());
        }
        assert_eq!(
            graph(&[4], &[2]).enumerate_maximum_independent_sets(lim).unwrap().len(),
            8
        );
        assert_eq!(
            graph(&[2, 2], &[1, 1])
                .enumerate_maximum_independent_sets(lim)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn mis_normality_examples() {
        let lim = SolverLimits::default();
        assert!(graph(&[2, 2], &[1, 1]).is_mis_normal(lim).unwrap().normal);
        assert!(graph(&[2, 5], &[1, 2]).is_mis_normal(lim).unwrap().normal);
        let g = graph(&[2, 2, 2], &[1, 1, 1]);
        let r = g.is_mis_normal(lim).unwrap();
        assert!(!r.normal);
        let w = r.witness.unwrap();
        assert!(g.is_independent(&w).unwrap());
        assert_eq!(BigUint::from(w.len()), *g.alpha_formula());
    }

    #[test]
    fn classification_examples() {
        let g = graph(&[4], &[2]);
        let r = g.classify_independent_set(&fam(&g, &[&[&[1, 2]]])).unwrap();
        assert_eq!(r.ratio, crate::arith::ratio_u(1, 2));
        assert_eq!(r.classification, IsClass::Imprimitive);

        let g = graph(&[2], &[1]);
        let r = g.classify_independent_set(&fam(&g, &[&[&[1]]])).unwrap();
        assert_eq!(r.classification, IsClass::Maximum);

        let g = graph(&[2, 2], &[1, 1]);
        let r = g.classify_independent_set(&fam(&g, &[&[&[1], &[1]]])).unwrap();
        assert_eq!(r.closed_neighborhood_size, 2);
        assert_eq!(r.classification, IsClass::Imprimitive);

        let g = graph(&[5], &[2]);
        let bad = fam(&g, &[&[&[1, 2]], &[&[3, 4]]]);
        assert_eq!(g.classify_independent_set(&bad).unwrap_err(), Error::NotIndependent);
    }

    #[test]
    fn imprimitivity_modes_agree() {
        let lim = SolverLimits::default();
        for (n, k, expected) in [
            (&[4u32][..], &[2u32][..], true),
            (&[5], &[2], false),
            (&[2, 2], &[1, 1], true),
        ] {
            let g = graph(n, k);
            let p = g.is_is_imprimitive(ImprimitivityMode::Predicate, lim).unwrap();
            let s = g.is_is_imprimitive(ImprimitivityMode::Search, lim).unwrap();
            assert_eq!(p.imprimitive, expected);
            assert_eq!(s.imprimitive, expected);
            if let Some(w) = s.witness {
                assert_eq!(
                    g.classify_independent_set(&w).unwrap().classification,
                    IsClass::Imprimitive
                );
            }
        }
        let w = graph(&[4], &[2]).search_imprimitive(lim).unwrap().unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn min_cut_search_matches_brute_force() {
        let lim = SolverLimits::default();
        let specs: [(&[u32], &[u32]); 8] = [
            (&[4], &[2]),
            (&[5], &[2]),
            (&[6], &[3]),
            (&[6], &[2]),
            (&[2, 2], &[1, 1]),
            (&[2, 3], &[1, 1]),
            (&[2, 4], &[1, 2]),
            (&[3, 4], &[1, 1]),
        ];
        for (n, k) in specs {
            let g = graph(n, k);
            let fast = g.search_imprimitive(lim).unwrap();
            let slow = g.search_imprimitive_unreduced(lim).unwrap();
            assert_eq!(fast.is_some(), slow.is_some(), "{:?}", g.spec());
        }
    }

    #[test]
    fn lemma_examples() {
        let g = graph(&[5], &[2]);
        let c = g.check_lemma_imprimitive(&Family::empty(g.spec()).unwrap()).unwrap();
        assert!(c.equality);
        let c = g.check_lemma_imprimitive(&fam(&g, &[&[&[1, 2]]])).unwrap();
        assert_eq!(c.lhs, crate::arith::ratio_u(17, 5));
        assert!(!c.equality);

        let g = graph(&[4], &[2]);
        let c = g.check_lemma_imprimitive(&fam(&g, &[&[&[1, 2]]])).unwrap();
        assert_eq!(c.lhs, Ratio::from_integer(3.into()));
        assert!(c.equality);
    }

    #[test]
    fn no_homomorphism_examples() {
        let lim = SolverLimits::default();
        let g = graph(&[4], &[2]);
        let b = fam(&g, &[&[&[1, 2]], &[&[3, 4]]]);
        for s in g.enumerate_maximum_independent_sets(lim).unwrap() {
            let c = g.check_no_homomorphism(&b, &s, lim).unwrap();
            assert!(c.equality);
            assert_eq!(c.alpha_b, 1);
        }
        let full = Family::full(g.spec()).unwrap();
        let s = fam(&g, &[&[&[1, 2]]]);
        assert!(!g.check_no_homomorphism(&full, &s, lim).unwrap().equality);
        assert_eq!(
            g.check_no_homomorphism(&Family::empty(g.spec()).unwrap(), &s, lim)
                .unwrap_err(),
            Error::EmptyFamily("B")
        );
    }

    #[test]
    fn cylinder_structure_of_imprimitive_sets() {
        let g = graph(&[4, 5], &[2, 1]);
        let w = g.search_imprimitive(SolverLimits::default()).unwrap().unwrap();
        let c = g.cylinder_structure(&w).unwrap();
        assert_eq!(c.support, vec![0]);
        assert!(c.holds(), "{c:?}");
    }
}
