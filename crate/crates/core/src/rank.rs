//! Colexicographic ranking of `k`-subsets of `[n]` (the combinatorial number
//! system). A subset `{c_1 < ... < c_k}` (0-based) has rank
//! `sum_i C(c_i, i)`.

use crate::arith::binomial_u64;
use crate::error::{Error, Result};
use crate::spec::MAX_PART_SIZE;

fn check_shape(n: u32, k: u32) -> Result<()> {
    if n > MAX_PART_SIZE || k > n {
        return Err(Error::InvalidSpec(format!("cannot rank {k}-subsets of [{n}]")));
    }
    Ok(())
}

fn fits(mask: u64, n: u32) -> bool {
    n >= 64 || mask >> n == 0
}

/// Colex rank of `mask` among the `k`-subsets of `[n]`.
pub fn rank_subset(mask: u64, n: u32, k: u32) -> Result<u64> {
    check_shape(n, k)?;
    if mask.count_ones() != k || !fits(mask, n) {
        return Err(Error::InvalidSubset { mask, n, k });
    }
    let mut rank = 0;
    let mut rest = mask;
    let mut i = 1;
    while rest != 0 {
        let c = rest.trailing_zeros();
        rest &= rest - 1;
        rank += binomial_u64(c, i);
        i += 1;
    }
    Ok(rank)
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(rank: u64, n: u32, k: u32) -> Result<u64> {
    check_shape(n, k)?;
    let size = binomial_u64(n, k);
    if rank >= size {
        return Err(Error::RankOutOfRange {
            rank,
            size: size.to_string(),
        });
    }
    let mut mask = 0u64;
    let mut r = rank;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= r
        let mut c = top - 1;
        while binomial_u64(c, i) > r {
            c -= 1;
        }
        mask |= 1 << c;
        r -= binomial_u64(c, i);
        top = c;
    }
    Ok(mask)
}

/// All `k`-subsets of `[n]` in colex order.
pub fn colex_subsets(n: u32, k: u32) -> Result<Vec<u64>> {
    check_shape(n, k)?;
    let size = binomial_u64(n, k);
    let mut out = Vec::with_capacity(size as usize);
    if k == 0 {
        out.push(0);
        return Ok(out);
    }
    // Gosper's hack walks masks in increasing numeric order, which is colex.
    let mut m: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    for _ in 0..size {
        out.push(m);
        if out.len() as u64 == size {
            break;
        }
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn extremes_of_colex_order() {
        assert_eq!(rank_subset(0b0011, 4, 2).unwrap(), 0);
        assert_eq!(rank_subset(0b1100, 4, 2).unwrap(), 5);
    }

    #[test]
    fn exhaustive_round_trip_n5_k2() {
        let masks: Vec<u64> = (0u64..32).filter(|m| m.count_ones() == 2).collect();
        assert_eq!(masks.len(), 10);
        for m in masks {
            let r = rank_subset(m, 5, 2).unwrap();
            assert_eq!(unrank_subset(r, 5, 2).unwrap(), m);
        }
    }

    #[test]
    fn wrong_popcount_is_rejected() {
        assert_eq!(
            rank_subset(0b111, 4, 2),
            Err(Error::InvalidSubset {
                mask: 0b111,
                n: 4,
                k: 2
            })
        );
        assert!(rank_subset(0b10001, 4, 2).is_err());
        assert!(unrank_subset(6, 4, 2).is_err());
    }

    #[test]
    fn colex_listing_matches_ranks() {
        for n in 1..=12 {
            for k in 0..=n {
                let all = colex_subsets(n, k).unwrap();
                assert_eq!(all.len() as u64, binomial_u64(n, k));
                for (r, &m) in all.iter().enumerate() {
                    if k > 0 {
                        assert_eq!(rank_subset(m, n, k).unwrap(), r as u64);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rank_unrank_bijection(n in 1u32..=64, k_seed in 0u32..64, r_seed in any::<u64>()) {
            let k = k_seed % (n + 1);
            let size = binomial_u64(n, k);
            let r = r_seed % size;
            let m = unrank_subset(r, n, k).unwrap();
            prop_assert_eq!(m.count_ones(), k);
            prop_assert_eq!(rank_subset(m, n, k).unwrap(), r);
        }
    }
}
