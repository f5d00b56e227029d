//! Closed-form families: products of per-part shapes, and the family of all
//! sets meeting a fixed multi-part set. Sizes and cross-intersection are
//! decided without enumerating the layer.

use num_bigint::BigUint;
use num_traits::One;

use super::{BipartiteDisjointness, Side};
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::layer::Layer;
use crate::spec::GroundSpec;

/// A family of `k`-subsets of `[n]` in one part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartShape {
    /// Every `k`-subset.
    Full,
    /// The single set given by the mask.
    Fixed(u64),
    /// The set and its complement (`n = 2k`).
    Pair(u64),
    /// Every `k`-subset meeting the (nonempty) mask.
    Meets(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    /// `prod_i F_i` with one shape per part.
    Product(Vec<PartShape>),
    /// Every set meeting the multi-part set `G` in at least one part.
    Meeting(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeFamily {
    spec: GroundSpec,
    kind: ShapeKind,
}

fn part_full(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl ShapeFamily {
    pub fn new(spec: &GroundSpec, kind: ShapeKind) -> Result<ShapeFamily> {
        match &kind {
            ShapeKind::Product(factors) => {
                if factors.len() != spec.p() {
                    return Err(Error::SpecMismatch);
                }
                for (i, f) in factors.iter().enumerate() {
                    let part = spec.part(i);
                    let bad = |why: &str| Err(Error::precondition(format!("part {}: {why}", i + 1)));
                    match *f {
                        PartShape::Full => {}
                        PartShape::Fixed(m) | PartShape::Pair(m) => {
                            if m & !part_full(part.n) != 0 || m.count_ones() != part.k {
                                return bad("fixed set must be a k-subset of [n]");
                            }
                            if matches!(f, PartShape::Pair(_)) && !part.is_balanced() {
                                return bad("complement pairs need n = 2k");
                            }
                        }
                        PartShape::Meets(m) => {
                            if m == 0 || m & !part_full(part.n) != 0 {
                                return bad("met set must be a nonempty subset of [n]");
                            }
                        }
                    }
                }
            }
            ShapeKind::Meeting(g) => {
                if g.len() != spec.p() {
                    return Err(Error::SpecMismatch);
                }
                if g.iter().zip(spec.parts()).any(|(&m, p)| m & !part_full(p.n) != 0) {
                    return Err(Error::precondition("met set must lie in the ground set"));
                }
            }
        }
        Ok(ShapeFamily {
            spec: spec.clone(),
            kind,
        })
    }

    pub fn spec(&self) -> &GroundSpec {
        &self.spec
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.kind
    }

    fn factor_len(&self, i: usize, f: PartShape) -> BigUint {
        let p = self.spec.part(i);
        match f {
            PartShape::Full => binomial(p.n as u64, p.k as u64),
            PartShape::Fixed(_) => BigUint::one(),
            PartShape::Pair(_) => BigUint::from(2u32),
            PartShape::Meets(m) => {
                binomial(p.n as u64, p.k as u64) - binomial((p.n - m.count_ones()) as u64, p.k as u64)
            }
        }
    }

    /// Exact size.
    pub fn len(&self) -> BigUint {
        match &self.kind {
            ShapeKind::Product(factors) => factors
                .iter()
                .enumerate()
                .fold(BigUint::one(), |acc, (i, &f)| acc * self.factor_len(i, f)),
            ShapeKind::Meeting(g) => {
                let avoid = self.spec.parts().iter().zip(g).fold(BigUint::one(), |acc, (p, &m)| {
                    acc * binomial((p.n - m.count_ones()) as u64, p.k as u64)
                });
                self.spec.layer_size() - avoid
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == BigUint::ZERO
    }

    fn contains_masks(&self, masks: &[u64]) -> bool {
        match &self.kind {
            ShapeKind::Product(factors) => factors.iter().zip(masks).all(|(f, &a)| match *f {
                PartShape::Full => true,
                PartShape::Fixed(m) => a == m,
                PartShape::Pair(m) => a == m || a & m == 0,
                PartShape::Meets(m) => a & m != 0,
            }),
            ShapeKind::Meeting(g) => g.iter().zip(masks).any(|(&m, &a)| a & m != 0),
        }
    }

    /// The members as a bitset family (enumerable layers only).
    pub fn to_family(&self) -> Result<Family> {
        let layer = Layer::new(&self.spec)?;
        Family::from_ranks(
            &self.spec,
            (0..layer.len()).filter(|&r| self.contains_masks(&layer.masks(r))),
        )
    }

    /// The family as a union of products of per-part shapes.
    fn products(&self) -> Vec<Vec<PartShape>> {
        match &self.kind {
            ShapeKind::Product(f) => vec![f.clone()],
            ShapeKind::Meeting(g) => (0..g.len())
                .filter(|&i| g[i] != 0)
                .map(|i| {
                    let mut f = vec![PartShape::Full; g.len()];
                    f[i] = PartShape::Meets(g[i]);
                    f
                })
                .collect(),
        }
    }
}

fn explicit(f: PartShape, n: u32) -> Option<Vec<u64>> {
    match f {
        PartShape::Fixed(m) => Some(vec![m]),
        PartShape::Pair(m) => Some(vec![m, !m & part_full(n)]),
        _ => None,
    }
}

/// Whether some `A` in `a` (uniformity `u`) and `B` in `b` (uniformity `w`)
/// are disjoint subsets of `[n]`.
fn exists_disjoint(n: u32, a: PartShape, u: u32, b: PartShape, w: u32) -> bool {
    use PartShape::*;
    match (explicit(a, n), explicit(b, n)) {
        (Some(la), Some(lb)) => la.iter().any(|x| lb.iter().any(|y| x & y == 0)),
        (Some(la), None) => la.iter().any(|&x| n - u >= w && fits(b, x)),
        (None, Some(lb)) => lb.iter().any(|&y| n - w >= u && fits(a, y)),
        (None, None) => u + w <= n && !matches!((a, b), (Meets(f), Meets(g)) if f == g && f.count_ones() == 1),
    }
}

/// Whether a set of shape `f` can avoid the fixed set `x` (room permitting).
fn fits(f: PartShape, x: u64) -> bool {
    match f {
        PartShape::Meets(g) => g & !x != 0,
        _ => true,
    }
}

/// Two products are cross-intersecting iff no part admits a disjoint pair
/// in every part simultaneously, i.e. iff some part's factors are
/// cross-intersecting.
fn products_cross(a: &[PartShape], b: &[PartShape], n: &[u32], u: &[u32], w: &[u32]) -> bool {
    !(0..n.len()).all(|i| exists_disjoint(n[i], a[i], u[i], b[i], w[i]))
}

pub(super) fn cross_intersecting(a: &ShapeFamily, b: &ShapeFamily) -> bool {
    if a.is_empty() || b.is_empty() {
        return true;
    }
    let n: Vec<u32> = a.spec.parts().iter().map(|p| p.n).collect();
    let u: Vec<u32> = a.spec.parts().iter().map(|p| p.k).collect();
    let w: Vec<u32> = b.spec.parts().iter().map(|p| p.k).collect();
    let (pa, pb) = (a.products(), b.products());
    pa.iter().all(|x| pb.iter().all(|y| products_cross(x, y, &n, &u, &w)))
}

fn first_elements(k: u32) -> u64 {
    part_full(k)
}

/// `({A}, {B : B meets A})` with `A` on `side` taking the first
/// elements of every part; the other family is on the opposite side.
/// Returns `(family on X, family on Y)`.
pub fn construct_star_pair(g: &BipartiteDisjointness, side: Side) -> Result<(ShapeFamily, ShapeFamily)> {
    let own = g.uniformities(side);
    let single: Vec<PartShape> = own.iter().map(|&k| PartShape::Fixed(first_elements(k))).collect();
    let masks: Vec<u64> = own.iter().map(|&k| first_elements(k)).collect();
    let a = ShapeFamily::new(g.spec(side), ShapeKind::Product(single))?;
    let b = ShapeFamily::new(g.spec(side.other()), ShapeKind::Meeting(masks))?;
    Ok(match side {
        Side::X => (a, b),
        Side::Y => (b, a),
    })
}

/// `A = {A_1} x prod_{i >= 2} C([n_i], t_i)` and
/// `B = {B_1 : B_1 meets A_1} x prod_{i >= 2} C([n_i], s_i)`, with `A_1` the
/// first `t_1` elements of part 1.
pub fn counterexample_pair(g: &BipartiteDisjointness) -> Result<(ShapeFamily, ShapeFamily)> {
    let a1 = first_elements(g.t()[0]);
    let mut fa = vec![PartShape::Full; g.p()];
    let mut fb = vec![PartShape::Full; g.p()];
    fa[0] = PartShape::Fixed(a1);
    fb[0] = PartShape::Meets(a1);
    Ok((
        ShapeFamily::new(g.spec(Side::X), ShapeKind::Product(fa))?,
        ShapeFamily::new(g.spec(Side::Y), ShapeKind::Product(fb))?,
    ))
}
