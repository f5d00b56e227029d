//! Multi-part ground sets and their uniform layers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{binomial, binomial_u64, to_u64, Ratio};
use crate::error::{Error, Result};

/// Layers with at most this many vertices may be materialized as bitsets.
pub const ENUMERABLE_LIMIT: u64 = 1 << 22;

/// Largest part size; per-part subsets are stored as `u64` masks.
pub const MAX_PART_SIZE: u32 = 64;

/// One part of the ground set: `k` elements are chosen from `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub n: u32,
    pub k: u32,
}

impl Part {
    pub fn new(n: u32, k: u32) -> Self {
        Part { n, k }
    }

    /// `C(n, k)`.
    pub fn size(&self) -> u64 {
        binomial_u64(self.n, self.k)
    }

    /// `n / k` as an exact rational.
    pub fn ratio(&self) -> Ratio {
        Ratio::new(self.n.into(), self.k.into())
    }

    /// `n == 2k`.
    pub fn is_balanced(&self) -> bool {
        self.n == 2 * self.k
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    parts: Vec<Part>,
    layer_size: BigUint,
}

/// Parameter vector `(n_i, k_i)` of a multi-part ground set together with
/// the exact size of the layer `prod_i C(n_i, k_i)`.
///
/// Cheap to clone; the contents are shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSpec(Arc<Inner>);

impl fmt::Debug for GroundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSpec({self})")
    }
}

impl fmt::Display for GroundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ns: Vec<String> = self.parts().iter().map(|p| p.n.to_string()).collect();
        let ks: Vec<String> = self.parts().iter().map(|p| p.k.to_string()).collect();
        write!(f, "n=({}),k=({})", ns.join(","), ks.join(","))
    }
}

impl GroundSpec {
    /// Validates `p >= 1` and `1 <= k_i <= n_i <= 64`.
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSpec("at least one part is required".into()));
        }
        for (i, p) in parts.iter().enumerate() {
            if p.n == 0 || p.n > MAX_PART_SIZE {
                return Err(Error::InvalidSpec(format!(
                    "part {}: n={} must lie in 1..={MAX_PART_SIZE}",
                    i + 1,
                    p.n
                )));
            }
            if p.k == 0 || p.k > p.n {
                return Err(Error::InvalidSpec(format!(
                    "part {}: k={} must lie in 1..={}",
                    i + 1,
                    p.k,
                    p.n
                )));
            }
        }
        let layer_size = parts
            .iter()
            .fold(BigUint::one(), |acc, p| acc * binomial(p.n as u64, p.k as u64));
        Ok(GroundSpec(Arc::new(Inner { parts, layer_size })))
    }

    /// Builds a spec from parallel `n` and `k` lists.
    pub fn from_lists(n: &[u32], k: &[u32]) -> Result<Self> {
        if n.len() != k.len() {
            return Err(Error::InvalidSpec(format!(
                "{} part sizes but {} uniformities",
                n.len(),
                k.len()
            )));
        }
        GroundSpec::new(n.iter().zip(k).map(|(&n, &k)| Part::new(n, k)).collect())
    }

    pub fn single(n: u32, k: u32) -> Result<Self> {
        GroundSpec::new(vec![Part::new(n, k)])
    }

    pub fn parts(&self) -> &[Part] {
        &self.0.parts
    }

    pub fn p(&self) -> usize {
        self.0.parts.len()
    }

    pub fn part(&self, i: usize) -> Part {
        self.0.parts[i]
    }

    /// `prod_i C(n_i, k_i)`.
    pub fn layer_size(&self) -> &BigUint {
        &self.0.layer_size
    }

    pub fn is_enumerable(&self) -> bool {
        to_u64(self.layer_size()).is_some_and(|s| s <= ENUMERABLE_LIMIT)
    }

    /// The layer size as a `usize`, or `BudgetExceeded` above the enumerable limit.
    pub fn enumerable_len(&self) -> Result<usize> {
        match to_u64(self.layer_size()) {
            Some(s) if s <= ENUMERABLE_LIMIT => Ok(s as usize),
            _ => Err(Error::budget("layer size", self.layer_size(), ENUMERABLE_LIMIT)),
        }
    }

    /// `prod_i C(n_i, k_i)`, optionally with the factor of part `i`
    /// replaced by `replacement`.
    pub fn binom_product(&self, override_part: Option<(usize, &BigUint)>) -> BigUint {
        self.parts()
            .iter()
            .enumerate()
            .fold(BigUint::one(), |acc, (i, p)| match override_part {
                Some((j, r)) if j == i => acc * r,
                _ => acc * binomial(p.n as u64, p.k as u64),
            })
    }

    /// Whether `n_i >= 2 k_i` for every part (the Kneser regime).
    pub fn is_kneser(&self) -> bool {
        self.parts().iter().all(|p| p.n >= 2 * p.k)
    }

    /// `min_i n_i / k_i`.
    pub fn min_ratio(&self) -> Ratio {
        self.parts()
            .iter()
            .map(Part::ratio)
            .min()
            .expect("spec has at least one part")
    }

    /// Indices of the parts attaining `min_i n_i / k_i`, ascending.
    pub fn critical_parts(&self) -> Vec<usize> {
        let min = self.min_ratio();
        (0..self.p()).filter(|&i| self.part(i).ratio() == min).collect()
    }

    /// Indices of the parts with `n_i == 2 k_i`, ascending.
    pub fn balanced_parts(&self) -> Vec<usize> {
        (0..self.p()).filter(|&i| self.part(i).is_balanced()).collect()
    }

    /// The spec restricted to the listed parts (in the given order).
    pub fn restrict(&self, parts: &[usize]) -> Result<GroundSpec> {
        let picked = parts
            .iter()
            .map(|&i| {
                self.parts()
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::InvalidSpec(format!("part index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        GroundSpec::new(picked)
    }

    /// The layer `(n_i, n_i - k_i)` holding complements of this layer's sets.
    pub fn complement(&self) -> Result<GroundSpec> {
        GroundSpec::new(self.parts().iter().map(|p| Part::new(p.n, p.n - p.k)).collect())
    }

    /// Same part sizes, different uniformities.
    pub fn with_uniformities(&self, k: &[u32]) -> Result<GroundSpec> {
        let n: Vec<u32> = self.parts().iter().map(|p| p.n).collect();
        GroundSpec::from_lists(&n, k)
    }

    pub fn same_ground(&self, other: &GroundSpec) -> bool {
        self.p() == other.p() && self.parts().iter().zip(other.parts()).all(|(a, b)| a.n == b.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(GroundSpec::new(vec![]).is_err());
        assert!(GroundSpec::single(4, 0).is_err());
        assert!(GroundSpec::single(4, 5).is_err());
        assert!(GroundSpec::single(65, 2).is_err());
        assert!(GroundSpec::from_lists(&[4, 5], &[1]).is_err());
    }

    #[test]
    fn binom_product_examples() {
        let s = GroundSpec::from_lists(&[4, 5], &[1, 2]).unwrap();
        assert_eq!(s.binom_product(None), BigUint::from(40u32));
        assert_eq!(s.binom_product(Some((1, &BigUint::from(4u32)))), BigUint::from(16u32));
        let r = GroundSpec::from_lists(&[18, 18], &[15, 2]).unwrap();
        assert_eq!(r.binom_product(None), BigUint::from(124_848u32));
    }

    #[test]
    fn critical_parts_use_exact_ratios() {
        let s = GroundSpec::from_lists(&[4, 6, 9], &[2, 3, 3]).unwrap();
        assert_eq!(s.critical_parts(), vec![0, 1]);
        assert_eq!(s.balanced_parts(), vec![0, 1]);
        assert_eq!(s.min_ratio(), Ratio::from_integer(2.into()));
    }

    #[test]
    fn enumerable_flag() {
        assert!(GroundSpec::single(10, 5).unwrap().is_enumerable());
        let big = GroundSpec::from_lists(&[18, 18], &[9, 9]).unwrap();
        assert!(!big.is_enumerable());
        assert!(matches!(big.enumerable_len(), Err(Error::BudgetExceeded { .. })));
    }
}
