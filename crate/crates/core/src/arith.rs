//! Exact integer and rational helpers.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational used for every ratio in the crate.
pub type Ratio = BigRational;

/// `C(n, k)` as an arbitrary-precision integer (multiplicative formula).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

const TABLE_N: usize = 65;

fn table() -> &'static [[u64; TABLE_N]; TABLE_N] {
    static TABLE: OnceLock<Box<[[u64; TABLE_N]; TABLE_N]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; TABLE_N]; TABLE_N]);
        for n in 0..TABLE_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 64`; every such value fits in a `u64`.
pub fn binomial_u64(n: u32, k: u32) -> u64 {
    assert!(n <= 64, "binomial_u64 supports n <= 64");
    if k > n {
        0
    } else {
        table()[n as usize][k as usize]
    }
}

pub fn ratio(num: &BigUint, den: &BigUint) -> Ratio {
    Ratio::new(num.clone().into(), den.clone().into())
}

pub fn ratio_u(num: u64, den: u64) -> Ratio {
    Ratio::new(num.into(), den.into())
}

/// `BigUint -> u64` when it fits.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    u64::try_from(x).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_multiplicative_formula() {
        for n in 0..=64u32 {
            for k in 0..=n {
                assert_eq!(BigUint::from(binomial_u64(n, k)), binomial(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(18, 15), BigUint::from(816u32));
        assert_eq!(binomial_u64(64, 32), 1_832_624_140_942_590_534);
    }
}
