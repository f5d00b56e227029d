//! Materialized layers and the disjointness relation between two layers on
//! the same ground set.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::rank::colex_subsets;
use crate::spec::GroundSpec;
use crate::vertex::Vertex;

/// An enumerable layer with per-part subset tables in colex order.
#[derive(Clone, Debug)]
pub struct Layer {
    spec: GroundSpec,
    len: usize,
    part_masks: Vec<Vec<u64>>,
    strides: Vec<usize>,
}

impl Layer {
    pub fn new(spec: &GroundSpec) -> Result<Layer> {
        let len = spec.enumerable_len()?;
        let part_masks = spec
            .parts()
            .iter()
            .map(|p| colex_subsets(p.n, p.k))
            .collect::<Result<Vec<_>>>()?;
        let mut strides = vec![1usize; spec.p()];
        for i in (0..spec.p().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * part_masks[i + 1].len();
        }
        Ok(Layer {
            spec: spec.clone(),
            len,
            part_masks,
            strides,
        })
    }

    pub fn spec(&self) -> &GroundSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Colex rank of part `part` of the vertex with global rank `rank`.
    #[inline]
    pub fn digit(&self, rank: usize, part: usize) -> usize {
        (rank / self.strides[part]) % self.part_masks[part].len()
    }

    #[inline]
    pub fn mask(&self, rank: usize, part: usize) -> u64 {
        self.part_masks[part][self.digit(rank, part)]
    }

    pub fn masks(&self, rank: usize) -> Vec<u64> {
        (0..self.spec.p()).map(|i| self.mask(rank, i)).collect()
    }

    pub fn vertex(&self, rank: usize) -> Vertex {
        Vertex::from_masks(&self.spec, self.masks(rank)).expect("layer masks are valid")
    }

    pub fn part_masks(&self, part: usize) -> &[u64] {
        &self.part_masks[part]
    }

    pub fn stride(&self, part: usize) -> usize {
        self.strides[part]
    }

    /// Global rank from per-part colex digits.
    pub fn rank_of_digits(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    /// Rank of the restriction of vertex `rank` to `parts`, inside the layer
    /// of the restricted spec (parts kept in the given order).
    pub fn project(&self, rank: usize, parts: &[usize]) -> usize {
        parts
            .iter()
            .fold(0, |acc, &i| acc * self.part_masks[i].len() + self.digit(rank, i))
    }

    pub fn rank_of(&self, v: &Vertex) -> Result<usize> {
        if v.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(v.rank() as usize)
    }
}

/// Disjointness between the vertices of `from` and `to` (same part sizes).
///
/// For each part and each `from` subset the table stores the colex ranks of
/// the `to` subsets avoiding it; neighborhoods are products of those lists.
#[derive(Clone, Debug)]
pub struct Disjointness {
    from: Layer,
    to: Layer,
    lists: Vec<Vec<Vec<u32>>>,
    degree: usize,
}

impl Disjointness {
    pub fn new(from: &Layer, to: &Layer) -> Result<Disjointness> {
        if !from.spec.same_ground(&to.spec) {
            return Err(Error::SpecMismatch);
        }
        let lists: Vec<Vec<Vec<u32>>> = (0..from.spec.p())
            .map(|i| {
                from.part_masks[i]
                    .iter()
                    .map(|&a| {
                        to.part_masks[i]
                            .iter()
                            .enumerate()
                            .filter(|(_, &b)| a & b == 0)
                            .map(|(j, _)| j as u32)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degree = lists.iter().map(|l| l[0].len()).product();
        Ok(Disjointness {
            from: from.clone(),
            to: to.clone(),
            lists,
            degree,
        })
    }

    /// Disjointness graph of a single layer.
    pub fn on(layer: &Layer) -> Result<Disjointness> {
        Disjointness::new(layer, layer)
    }

    pub fn from_layer(&self) -> &Layer {
        &self.from
    }

    pub fn to_layer(&self) -> &Layer {
        &self.to
    }

    /// Every `from` vertex has the same number of disjoint `to` vertices.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Calls `f` with the rank of every `to` vertex disjoint from `rank`.
    pub fn for_each_neighbor(&self, rank: usize, mut f: impl FnMut(usize)) {
        let p = self.from.spec.p();
        let lists: Vec<&[u32]> = (0..p)
            .map(|i| self.lists[i][self.from.digit(rank, i)].as_slice())
            .collect();
        if lists.iter().any(|l| l.is_empty()) {
            return;
        }
        let mut idx = vec![0usize; p];
        loop {
            let r: usize = (0..p).map(|i| lists[i][idx[i]] as usize * self.to.strides[i]).sum();
            f(r);
            let mut pos = p;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn neighbors(&self, rank: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree);
        self.for_each_neighbor(rank, |r| out.push(r));
        out
    }

    /// `N(set)`: every `to` vertex disjoint from some member of `set`.
    pub fn neighborhood(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.to.len);
        for r in set.ones() {
            self.for_each_neighbor(r, |n| out.insert(n));
        }
        out
    }

    /// Explicit adjacency rows (only sensible for small layers).
    pub fn adjacency_rows(&self) -> Vec<FixedBitSet> {
        (0..self.from.len)
            .map(|r| {
                let mut row = FixedBitSet::with_capacity(self.to.len);
                self.for_each_neighbor(r, |n| row.insert(n));
                row
            })
            .collect()
    }
}
