//! The bipartite disjointness graph `G(X, Y)` between the layers
//! `X = prod C([n_i], t_i)` and `Y = prod C([n_i], s_i)`: sizes, degrees,
//! the non-empty cross-intersecting bound, hypothesis checks, closed-form
//! family shapes, fragments and imprimitive-set estimates.

mod fragments;
mod imprimitive;
mod random;
mod shape;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::arith::{binomial, Ratio};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::layer::{Disjointness, Layer};
use crate::spec::GroundSpec;

pub use fragments::{
    classify_extremal_pair, FragmentRecord, FragmentReport, NontrivialSearch, PairCase, PairClass, CLOSED_PAIR_LIMIT,
};
pub use imprimitive::{
    h_polynomial, imprimitive_shapes, min_imprimitive_deficiency, size_estimate, size_margin, HPolynomial,
    ImprimitiveShape, ShapeEvaluation, SizeEstimate,
};
pub use random::random_pair;
pub use shape::{construct_star_pair, counterexample_pair, PartShape, ShapeFamily, ShapeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Y => "Y",
        })
    }
}

struct Enumerated {
    x: Layer,
    y: Layer,
    xy: Disjointness,
    yx: Disjointness,
}

/// Parameters `(n_i, t_i, s_i)` of `G(X, Y)`; `A in X` and `B in Y` are
/// adjacent when disjoint.
pub struct BipartiteDisjointness {
    n: Vec<u32>,
    t: Vec<u32>,
    s: Vec<u32>,
    x_spec: GroundSpec,
    y_spec: GroundSpec,
    enumerated: OnceLock<std::result::Result<Enumerated, Error>>,
}

impl fmt::Debug for BipartiteDisjointness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BipartiteDisjointness(n={:?}, t={:?}, s={:?})",
            self.n, self.t, self.s
        )
    }
}

impl Clone for BipartiteDisjointness {
    fn clone(&self) -> Self {
        BipartiteDisjointness::new(&self.n, &self.t, &self.s).expect("already validated")
    }
}

impl BipartiteDisjointness {
    /// Requires equal-length lists with `1 <= t_i, s_i <= n_i <= 64`.
    pub fn new(n: &[u32], t: &[u32], s: &[u32]) -> Result<BipartiteDisjointness> {
        if t.len() != n.len() || s.len() != n.len() {
            return Err(Error::InvalidSpec(format!(
                "{} part sizes, {} X-uniformities, {} Y-uniformities",
                n.len(),
                t.len(),
                s.len()
            )));
        }
        Ok(BipartiteDisjointness {
            x_spec: GroundSpec::from_lists(n, t)?,
            y_spec: GroundSpec::from_lists(n, s)?,
            n: n.to_vec(),
            t: t.to_vec(),
            s: s.to_vec(),
            enumerated: OnceLock::new(),
        })
    }

    pub fn p(&self) -> usize {
        self.n.len()
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn spec(&self, side: Side) -> &GroundSpec {
        match side {
            Side::X => &self.x_spec,
            Side::Y => &self.y_spec,
        }
    }

    /// Uniformities of `side`.
    pub fn uniformities(&self, side: Side) -> &[u32] {
        match side {
            Side::X => &self.t,
            Side::Y => &self.s,
        }
    }

    pub fn size(&self, side: Side) -> &BigUint {
        self.spec(side).layer_size()
    }

    /// Common degree of the vertices of `side`:
    /// `d(X) = prod C(n_i - t_i, s_i)`, `d(Y) = prod C(n_i - s_i, t_i)`.
    pub fn degree(&self, side: Side) -> BigUint {
        let (own, other) = (self.uniformities(side), self.uniformities(side.other()));
        (0..self.p()).fold(BigUint::one(), |acc, i| {
            acc * binomial((self.n[i] - own[i]) as u64, other[i] as u64)
        })
    }

    /// `prod C(n_i, s_i) - prod C(n_i - t_i, s_i) + 1`.
    pub fn bound_main1(&self) -> BigUint {
        self.size(Side::Y) - self.degree(Side::X) + BigUint::one()
    }

    fn enumerated(&self) -> Result<&Enumerated> {
        self.enumerated
            .get_or_init(|| {
                let x = Layer::new(&self.x_spec)?;
                let y = Layer::new(&self.y_spec)?;
                let xy = Disjointness::new(&x, &y)?;
                let yx = Disjointness::new(&y, &x)?;
                Ok(Enumerated { x, y, xy, yx })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn layer(&self, side: Side) -> Result<&Layer> {
        let e = self.enumerated()?;
        Ok(match side {
            Side::X => &e.x,
            Side::Y => &e.y,
        })
    }

    /// Disjointness from `side` to the opposite side.
    pub fn disjointness(&self, side: Side) -> Result<&Disjointness> {
        let e = self.enumerated()?;
        Ok(match side {
            Side::X => &e.xy,
            Side::Y => &e.yx,
        })
    }

    /// `N(A)` on the opposite side of `side`.
    pub fn neighborhood(&self, side: Side, a: &Family) -> Result<Family> {
        if a.spec() != self.spec(side) {
            return Err(Error::SpecMismatch);
        }
        let bits = self.disjointness(side)?.neighborhood(a.bits());
        Family::from_bits(self.spec(side.other()), bits)
    }

    /// `phi(A)`: the vertices of the opposite side outside `N(A)`.
    pub fn phi(&self, side: Side, a: &Family) -> Result<Family> {
        Ok(self.neighborhood(side, a)?.complement())
    }

    pub fn check_hypotheses(&self) -> HypothesisReport {
        hypotheses(self)
    }

    /// Exact cross-intersection check and totals for `A` on `X` and `B` on
    /// `Y`. Empty families are flagged, not rejected.
    pub fn evaluate_pair(&self, a: &Family, b: &Family) -> Result<PairEvaluation> {
        if a.spec() != &self.x_spec || b.spec() != &self.y_spec {
            return Err(Error::SpecMismatch);
        }
        let d = self.disjointness(Side::X)?;
        let mut cross = true;
        for r in a.bits().ones() {
            d.for_each_neighbor(r, |u| cross &= !b.contains_rank(u));
            if !cross {
                break;
            }
        }
        Ok(self.evaluation(cross, BigUint::from(a.len()), BigUint::from(b.len())))
    }

    /// As [`evaluate_pair`](Self::evaluate_pair) for closed-form families.
    pub fn evaluate_shapes(&self, a: &ShapeFamily, b: &ShapeFamily) -> Result<PairEvaluation> {
        if a.spec() != &self.x_spec || b.spec() != &self.y_spec {
            return Err(Error::SpecMismatch);
        }
        let cross = shape::cross_intersecting(a, b);
        Ok(self.evaluation(cross, a.len(), b.len()))
    }

    fn evaluation(&self, cross_intersecting: bool, a_size: BigUint, b_size: BigUint) -> PairEvaluation {
        let mut empty = Vec::new();
        if a_size == BigUint::ZERO {
            empty.push(Side::X);
        }
        if b_size == BigUint::ZERO {
            empty.push(Side::Y);
        }
        let total = &a_size + &b_size;
        let bound = self.bound_main1();
        let slack = BigInt::from(total.clone()) - BigInt::from(bound.clone());
        PairEvaluation {
            cross_intersecting,
            a_size,
            b_size,
            total,
            bound,
            slack,
            empty,
        }
    }
}

/// Parameter cells `(n, t, s)` with `2 <= p <= pmax`, `5 <= n_i <= nmax`,
/// `4 n_i <= 7 n_j`, `2 <= s_i, t_i <= n_i/2` and `n_i >= s_i + t_i + 1`,
/// in lexicographic order of `(n, s, t)` part by part.
pub fn hypothesis_grid(pmax: usize, nmax: u32) -> Vec<(Vec<u32>, Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for p in 2..=pmax {
        let mut ns = vec![5u32; p];
        if nmax < 5 {
            break;
        }
        loop {
            if (0..p).all(|i| (0..p).all(|j| 4 * ns[i] <= 7 * ns[j])) {
                let choices: Vec<Vec<(u32, u32)>> = ns
                    .iter()
                    .map(|&n| {
                        (2..=n / 2)
                            .flat_map(|s| (2..=n / 2).map(move |t| (s, t)))
                            .filter(|&(s, t)| n > s + t)
                            .collect()
                    })
                    .collect();
                let mut idx = vec![0usize; p];
                loop {
                    out.push((
                        ns.clone(),
                        (0..p).map(|i| choices[i][idx[i]].1).collect(),
                        (0..p).map(|i| choices[i][idx[i]].0).collect(),
                    ));
                    if !advance(&mut idx, |i| choices[i].len()) {
                        break;
                    }
                }
            }
            let mut digits: Vec<usize> = ns.iter().map(|&n| (n - 5) as usize).collect();
            if !advance(&mut digits, |_| (nmax - 4) as usize) {
                break;
            }
            ns = digits.iter().map(|&d| d as u32 + 5).collect();
        }
    }
    out
}

/// Mixed-radix increment, last digit fastest; false after the last tuple.
fn advance(idx: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < radix(pos) {
            return true;
        }
        idx[pos] = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEvaluation {
    pub cross_intersecting: bool,
    pub a_size: BigUint,
    pub b_size: BigUint,
    pub total: BigUint,
    pub bound: BigUint,
    /// `total - bound`; positive when the pair beats the bound.
    pub slack: BigInt,
    /// Sides whose family is empty.
    pub empty: Vec<Side>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    /// `p >= 2`.
    TwoParts,
    /// `n_i >= s_i + t_i + 1`.
    Gap,
    /// `s_i >= 2`.
    SAtLeastTwo,
    /// `s_i <= n_i / 2`.
    SAtMostHalf,
    /// `t_i >= 2`.
    TAtLeastTwo,
    /// `t_i <= n_i / 2`.
    TAtMostHalf,
    /// `n_i <= (7/4) n_j`.
    Ratio,
    /// `prod C(n_i, s_i) >= prod C(n_i, t_i)`.
    LayerOrder,
}

/// One hypothesis evaluated at specific parts (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub kind: ClauseKind,
    pub parts: Vec<usize>,
    pub satisfied: bool,
    /// The clause as stated, with 1-based part indices.
    pub statement: String,
    /// The negated clause, with 1-based part indices.
    pub negation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub clauses: Vec<Clause>,
}

impl HypothesisReport {
    pub fn all_satisfied(&self) -> bool {
        self.clauses.iter().all(|c| c.satisfied)
    }

    pub fn violated(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.satisfied).collect()
    }
}

fn hypotheses(g: &BipartiteDisjointness) -> HypothesisReport {
    let mut clauses = Vec::new();
    let mut push = |kind, parts: Vec<usize>, satisfied, statement: String, negation: String| {
        clauses.push(Clause {
            kind,
            parts,
            satisfied,
            statement,
            negation,
        })
    };
    push(
        ClauseKind::TwoParts,
        vec![],
        g.p() >= 2,
        "p >= 2".into(),
        "p < 2".into(),
    );
    for i in 0..g.p() {
        let (n, s, t, j) = (g.n[i], g.s[i], g.t[i], i + 1);
        let half = Ratio::new(n.into(), 2.into());
        push(
            ClauseKind::Gap,
            vec![i],
            n > s + t,
            format!("n_{j} >= s_{j} + t_{j} + 1"),
            format!("n_{j} < s_{j} + t_{j} + 1"),
        );
        push(
            ClauseKind::SAtLeastTwo,
            vec![i],
            s >= 2,
            format!("s_{j} >= 2"),
            format!("s_{j} < 2"),
        );
        push(
            ClauseKind::SAtMostHalf,
            vec![i],
            Ratio::from_integer(s.into()) <= half,
            format!("s_{j} <= n_{j}/2"),
            format!("s_{j} > n_{j}/2"),
        );
        push(
            ClauseKind::TAtLeastTwo,
            vec![i],
            t >= 2,
            format!("t_{j} >= 2"),
            format!("t_{j} < 2"),
        );
        push(
            ClauseKind::TAtMostHalf,
            vec![i],
            Ratio::from_integer(t.into()) <= half,
            format!("t_{j} <= n_{j}/2"),
            format!("t_{j} > n_{j}/2"),
        );
    }
    for i in 0..g.p() {
        for j in 0..g.p() {
            if i == j {
                continue;
            }
            // n_i <= (7/4) n_j  <=>  4 n_i <= 7 n_j
            push(
                ClauseKind::Ratio,
                vec![i, j],
                4 * g.n[i] as u64 <= 7 * g.n[j] as u64,
                format!("n_{} <= (7/4)n_{}", i + 1, j + 1),
                format!("n_{} > (7/4)n_{}", i + 1, j + 1),
            );
        }
    }
    push(
        ClauseKind::LayerOrder,
        vec![],
        g.size(Side::Y) >= g.size(Side::X),
        "prod C(n_i,s_i) >= prod C(n_i,t_i)".into(),
        "prod C(n_i,s_i) < prod C(n_i,t_i)".into(),
    );
    HypothesisReport { clauses }
}
