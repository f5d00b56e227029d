//! Random nonempty cross-intersecting pairs built greedily.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{BipartiteDisjointness, Side};
use crate::error::Result;
use crate::family::Family;

/// Seeds `A` with a random vertex of `X` and `B` with a random vertex of `Y`
/// meeting it, then offers the remaining vertices of both sides in random
/// order, keeping each compatible one with a per-pair random probability.
pub fn random_pair<R: Rng + ?Sized>(g: &BipartiteDisjointness, rng: &mut R) -> Result<(Family, Family)> {
    let (dx, dy) = (g.disjointness(Side::X)?, g.disjointness(Side::Y)?);
    let (nx, ny) = (dx.from_layer().len(), dy.from_layer().len());
    let keep: f64 = rng.gen_range(0.05..=1.0);
    let mut a = FixedBitSet::with_capacity(nx);
    let mut b = FixedBitSet::with_capacity(ny);
    // blocked_x: vertices of X disjoint from a member of B, and vice versa
    let mut blocked_x = FixedBitSet::with_capacity(nx);
    let mut blocked_y = FixedBitSet::with_capacity(ny);
    let first = rng.gen_range(0..nx);
    a.insert(first);
    dx.for_each_neighbor(first, |u| blocked_y.insert(u));
    let open: Vec<usize> = (0..ny).filter(|&v| !blocked_y.contains(v)).collect();
    if let Some(&v) = open.choose(rng) {
        b.insert(v);
        dy.for_each_neighbor(v, |u| blocked_x.insert(u));
    }
    let mut order: Vec<(Side, usize)> = (0..nx)
        .map(|v| (Side::X, v))
        .chain((0..ny).map(|v| (Side::Y, v)))
        .collect();
    order.shuffle(rng);
    for (side, v) in order {
        if !rng.gen_bool(keep) {
            continue;
        }
        match side {
            Side::X if !blocked_x.contains(v) && !a.contains(v) => {
                a.insert(v);
                dx.for_each_neighbor(v, |u| blocked_y.insert(u));
            }
            Side::Y if !blocked_y.contains(v) && !b.contains(v) => {
                b.insert(v);
                dy.for_each_neighbor(v, |u| blocked_x.insert(u));
            }
            _ => {}
        }
    }
    Ok((
        Family::from_bits(g.spec(Side::X), a)?,
        Family::from_bits(g.spec(Side::Y), b)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_pairs_are_cross_intersecting_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, t, s) in [
            (&[5u32][..], &[2u32][..], &[2u32][..]),
            (&[6], &[2], &[3]),
            (&[5, 5], &[2, 2], &[2, 2]),
        ] {
            let g = BipartiteDisjointness::new(n, t, s).unwrap();
            for _ in 0..100 {
                let (a, b) = random_pair(&g, &mut rng).unwrap();
                let e = g.evaluate_pair(&a, &b).unwrap();
                assert!(e.cross_intersecting && e.empty.is_empty());
                assert!(e.total <= e.bound);
            }
        }
    }
}
