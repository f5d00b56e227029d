//! Random cross-intersecting systems built greedily.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use super::CrossSystem;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::layer::Disjointness;
use crate::spec::GroundSpec;

/// Visits the layer in random order and offers each vertex to the families
/// in random order; a vertex joins a family (with a per-system random
/// probability) when it meets every member of all the other families.
///
/// `d` must be the disjointness graph of `spec`.
pub fn random_system<R: Rng + ?Sized>(
    spec: &GroundSpec,
    d: &Disjointness,
    m: usize,
    rng: &mut R,
) -> Result<CrossSystem> {
    if d.from_layer().spec() != spec || d.to_layer().spec() != spec {
        return Err(Error::SpecMismatch);
    }
    let len = d.from_layer().len();
    let keep: f64 = rng.gen_range(0.05..=1.0);
    let mut members = vec![FixedBitSet::with_capacity(len); m];
    // blocked[j]: vertices disjoint from some member of a family other than j
    let mut blocked = vec![FixedBitSet::with_capacity(len); m];
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);
    let mut fams: Vec<usize> = (0..m).collect();
    for v in order {
        fams.shuffle(rng);
        for &j in &fams {
            if blocked[j].contains(v) || !rng.gen_bool(keep) {
                continue;
            }
            members[j].insert(v);
            d.for_each_neighbor(v, |u| {
                for (i, b) in blocked.iter_mut().enumerate() {
                    if i != j {
                        b.insert(u);
                    }
                }
            });
        }
    }
    let families = members
        .into_iter()
        .map(|bits| Family::from_bits(spec, bits))
        .collect::<Result<Vec<_>>>()?;
    let first_nonempty = !families[0].is_empty();
    CrossSystem::new(spec, families, first_nonempty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cross::{bound_main0, first_violation};
    use crate::layer::Layer;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_systems_are_cross_intersecting_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, k) in [(&[5u32][..], &[2u32][..]), (&[4, 5], &[1, 2]), (&[2, 2, 3], &[1, 1, 1])] {
            let s = GroundSpec::from_lists(n, k).unwrap();
            let d = Disjointness::on(&Layer::new(&s).unwrap()).unwrap();
            for m in 2..=4 {
                let bound = bound_main0(&s, m).unwrap();
                for _ in 0..50 {
                    let sys = random_system(&s, &d, m, &mut rng).unwrap();
                    assert!(first_violation(&d, sys.families()).cross_intersecting);
                    assert!(num_bigint::BigUint::from(sys.total()) <= bound);
                }
            }
        }
    }
}
