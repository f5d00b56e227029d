//! Closed pairs of `G(X, Y)`: the maximum nontrivial independent sets,
//! `epsilon` and the fragments on either side.
//!
//! A pair `(A, B)` is closed when `B = Y \ N(A)` and `A = X \ N(B)`. Every
//! fragment and every maximum nontrivial independent set is closed, and the
//! closed pairs are found by closing every subset of the smaller side.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{BipartiteDisjointness, Side};
use crate::error::{Error, Result};
use crate::family::Family;

/// Largest side (in vertices) whose subsets are all closed.
pub const CLOSED_PAIR_LIMIT: usize = 24;

/// One fragment of `G(X, Y)` on `side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentRecord {
    pub side: Side,
    pub set: Family,
    pub nbhd_size: usize,
    /// `|N(A)| - |A|`, always `epsilon(side)`.
    pub deficiency: i64,
    /// `|A| = alpha(X, Y) / 2`.
    pub balanced: bool,
    /// A singleton, or `X \ N(b)` for a single vertex `b`.
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentReport {
    pub side: Side,
    pub epsilon: i64,
    pub alpha_xy: usize,
    /// Ordered by the colex ranks of their members.
    pub fragments: Vec<FragmentRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NontrivialSearch {
    /// `alpha(X, Y)`: the largest `|A| + |B|` over nonempty cross-intersecting
    /// `A` on `X` and `B` on `Y`.
    pub alpha: usize,
    /// Every pair `(A, B)` attaining it.
    pub pairs: Vec<(Family, Family)>,
}

/// Shape of a pair attaining the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairCase {
    /// `A = {A}`, `B` every vertex of `Y` meeting `A`.
    SingletonX,
    /// `B = {B}`, `A` every vertex of `X` meeting `B`; needs `|X| = |Y|`.
    SingletonY,
}

impl PairCase {
    pub fn label(self) -> &'static str {
        match self {
            PairCase::SingletonX => "(i)",
            PairCase::SingletonY => "(ii)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub case: Option<PairCase>,
    pub total: BigUint,
    pub bound: BigUint,
}

impl PairClass {
    pub fn label(&self) -> &'static str {
        self.case.map_or("none", PairCase::label)
    }
}

/// Neighborhood masks of both sides, with the smaller side first.
struct Masks {
    /// Side whose subsets are enumerated.
    small: Side,
    small_nbhd: Vec<u64>,
    large_nbhd: Vec<u64>,
    small_full: u64,
    large_full: u64,
}

fn full(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn union_nbhd(nbhd: &[u64], set: u64) -> u64 {
    let mut out = 0;
    let mut rest = set;
    while rest != 0 {
        out |= nbhd[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    out
}

impl Masks {
    fn new(g: &BipartiteDisjointness) -> Result<Masks> {
        let (x, y) = (g.spec(Side::X).enumerable_len()?, g.spec(Side::Y).enumerable_len()?);
        let small = if x <= y { Side::X } else { Side::Y };
        let (s, l) = (x.min(y), x.max(y));
        if s > CLOSED_PAIR_LIMIT {
            return Err(Error::budget(
                "closed-pair sweep",
                format!("2^{s} subsets"),
                format!("2^{CLOSED_PAIR_LIMIT}"),
            ));
        }
        if l > 64 {
            return Err(Error::budget(
                "closed-pair sweep",
                format!("{l} vertices on one side"),
                64,
            ));
        }
        let nbhd = |side: Side| -> Result<Vec<u64>> {
            let d = g.disjointness(side)?;
            Ok((0..d.from_layer().len())
                .map(|r| d.neighbors(r).iter().fold(0u64, |acc, &b| acc | 1 << b))
                .collect())
        };
        Ok(Masks {
            small,
            small_nbhd: nbhd(small)?,
            large_nbhd: nbhd(small.other())?,
            small_full: full(s),
            large_full: full(l),
        })
    }

    fn nbhd(&self, side: Side) -> &[u64] {
        if side == self.small {
            &self.small_nbhd
        } else {
            &self.large_nbhd
        }
    }

    fn full(&self, side: Side) -> u64 {
        if side == self.small {
            self.small_full
        } else {
            self.large_full
        }
    }

    /// Every closed pair with both halves nonempty, as `(X mask, Y mask)`.
    fn closed_pairs(&self) -> Vec<(u64, u64)> {
        let small = self.small;
        let mut pairs: Vec<(u64, u64)> = (1..=self.small_full)
            .into_par_iter()
            .filter_map(|t| {
                let partner = self.large_full & !union_nbhd(&self.small_nbhd, t);
                if partner == 0 {
                    return None;
                }
                let closure = self.small_full & !union_nbhd(&self.large_nbhd, partner);
                (closure == t).then_some(match small {
                    Side::X => (t, partner),
                    Side::Y => (partner, t),
                })
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

fn family(g: &BipartiteDisjointness, side: Side, mask: u64) -> Result<Family> {
    Family::from_ranks(g.spec(side), (0..64).filter(|&r| mask >> r & 1 == 1))
}

impl BipartiteDisjointness {
    /// `alpha(X, Y)` with every pair attaining it.
    pub fn search_max_nontrivial(&self) -> Result<NontrivialSearch> {
        let masks = Masks::new(self)?;
        let pairs = masks.closed_pairs();
        let size = |&(a, b): &(u64, u64)| (a.count_ones() + b.count_ones()) as usize;
        let alpha = pairs.iter().map(size).max().unwrap_or(0);
        let pairs = pairs
            .iter()
            .filter(|p| size(p) == alpha)
            .map(|&(a, b)| Ok((family(self, Side::X, a)?, family(self, Side::Y, b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(NontrivialSearch { alpha, pairs })
    }

    /// `epsilon(side)`, the least `|N(A)| - |A|` over nonempty `A` on `side`
    /// with `N(A)` short of the opposite side, with every fragment.
    pub fn epsilon(&self, side: Side) -> Result<FragmentReport> {
        let masks = Masks::new(self)?;
        let pairs = masks.closed_pairs();
        let alpha = pairs
            .iter()
            .map(|&(a, b)| (a.count_ones() + b.count_ones()) as usize)
            .max()
            .ok_or_else(|| Error::precondition("every nonempty set has a full neighborhood"))?;
        let other_len = masks.full(side.other()).count_ones() as i64;
        let epsilon = other_len - alpha as i64;
        let (own_nbhd, other_nbhd) = (masks.nbhd(side), masks.nbhd(side.other()));
        let own_full = masks.full(side);
        let mut fragments = pairs
            .iter()
            .filter(|&&(a, b)| (a.count_ones() + b.count_ones()) as usize == alpha)
            .map(|&(x, y)| {
                let (set, partner) = match side {
                    Side::X => (x, y),
                    Side::Y => (y, x),
                };
                let nbhd_size = union_nbhd(own_nbhd, set).count_ones() as usize;
                let mut rest = partner;
                let mut trivial = set.count_ones() == 1;
                while rest != 0 && !trivial {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    trivial = set == own_full & !other_nbhd[b];
                }
                Ok(FragmentRecord {
                    side,
                    set: family(self, side, set)?,
                    nbhd_size,
                    deficiency: nbhd_size as i64 - set.count_ones() as i64,
                    balanced: 2 * set.count_ones() as usize == alpha,
                    trivial,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        fragments.sort_by_key(|f| f.set.ranks());
        Ok(FragmentReport {
            side,
            epsilon,
            alpha_xy: alpha,
            fragments,
        })
    }
}

/// Whether `(A, B)` attains the bound as a singleton on one side against
/// every vertex meeting it on the other. The singleton may sit on `Y` only
/// when `|X| = |Y|`.
pub fn classify_extremal_pair(g: &BipartiteDisjointness, a: &Family, b: &Family) -> Result<PairClass> {
    let e = g.evaluate_pair(a, b)?;
    let mut case = None;
    if e.cross_intersecting && e.total == e.bound {
        if a.len() == 1 && g.phi(Side::X, a)? == *b {
            case = Some(PairCase::SingletonX);
        } else if b.len() == 1 && g.size(Side::X) == g.size(Side::Y) && g.phi(Side::Y, b)? == *a {
            case = Some(PairCase::SingletonY);
        }
    }
    Ok(PairClass {
        case,
        total: e.total,
        bound: e.bound,
    })
}
