//! Families of vertices of one enumerable layer, stored as bitsets over
//! global ranks.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::spec::GroundSpec;
use crate::vertex::Vertex;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    spec: GroundSpec,
    bits: FixedBitSet,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family[{}]{:?}", self.spec, self.ranks())
    }
}

impl Family {
    pub fn empty(spec: &GroundSpec) -> Result<Family> {
        let len = spec.enumerable_len()?;
        Ok(Family {
            spec: spec.clone(),
            bits: FixedBitSet::with_capacity(len),
        })
    }

    pub fn full(spec: &GroundSpec) -> Result<Family> {
        let mut f = Family::empty(spec)?;
        f.bits.insert_range(..);
        Ok(f)
    }

    /// Wraps a bitset whose length must equal the layer size.
    pub fn from_bits(spec: &GroundSpec, bits: FixedBitSet) -> Result<Family> {
        if bits.len() != spec.enumerable_len()? {
            return Err(Error::SpecMismatch);
        }
        Ok(Family {
            spec: spec.clone(),
            bits,
        })
    }

    pub fn from_ranks(spec: &GroundSpec, ranks: impl IntoIterator<Item = usize>) -> Result<Family> {
        let mut f = Family::empty(spec)?;
        let len = f.bits.len();
        for r in ranks {
            if r >= len {
                return Err(Error::RankOutOfRange {
                    rank: r as u64,
                    size: len.to_string(),
                });
            }
            f.bits.insert(r);
        }
        Ok(f)
    }

    pub fn from_vertices<'a>(spec: &GroundSpec, vertices: impl IntoIterator<Item = &'a Vertex>) -> Result<Family> {
        let mut f = Family::empty(spec)?;
        for v in vertices {
            f.insert(v)?;
        }
        Ok(f)
    }

    pub fn spec(&self) -> &GroundSpec {
        &self.spec
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn into_bits(self) -> FixedBitSet {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Number of vertices in the underlying layer.
    pub fn layer_len(&self) -> usize {
        self.bits.len()
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.bits.contains(rank)
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.spec() == &self.spec && self.bits.contains(v.rank() as usize)
    }

    pub fn insert(&mut self, v: &Vertex) -> Result<()> {
        if v.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        self.bits.insert(v.rank() as usize);
        Ok(())
    }

    pub fn insert_rank(&mut self, rank: usize) {
        self.bits.insert(rank);
    }

    /// Member ranks in increasing order.
    pub fn ranks(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.bits
            .ones()
            .map(|r| Vertex::from_rank(&self.spec, r as u64).expect("rank within layer"))
            .collect()
    }

    pub fn complement(&self) -> Family {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Family {
            spec: self.spec.clone(),
            bits,
        }
    }

    fn check_same(&self, other: &Family) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.check_same(other)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(Family {
            spec: self.spec.clone(),
            bits,
        })
    }

    pub fn intersection(&self, other: &Family) -> Result<Family> {
        self.check_same(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(Family {
            spec: self.spec.clone(),
            bits,
        })
    }

    pub fn is_subset(&self, other: &Family) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }
}
