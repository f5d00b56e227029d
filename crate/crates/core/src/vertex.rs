//! Multi-part sets `A = A_1 ⊔ ... ⊔ A_p` and their global ranks.
//!
//! The global rank is mixed radix over the per-part colex ranks with the
//! last part varying fastest:
//! `rank = sum_i colex(A_i) * prod_{j > i} C(n_j, k_j)`.

use std::fmt;

use crate::arith::to_u64;
use crate::error::{Error, Result};
use crate::rank::{rank_subset, unrank_subset};
use crate::spec::GroundSpec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    spec: GroundSpec,
    masks: Vec<u64>,
    rank: u64,
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex#{}{}", self.rank, self)
    }
}

/// Prints 1-based elements per part, e.g. `({1,2},{3})`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_masks(&self.masks))
    }
}

pub fn format_masks(masks: &[u64]) -> String {
    let parts: Vec<String> = masks
        .iter()
        .map(|&m| {
            let elems: Vec<String> = (0..64)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| (b + 1).to_string())
                .collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect();
    format!("({})", parts.join(","))
}

fn ensure_rankable(spec: &GroundSpec) -> Result<u64> {
    to_u64(spec.layer_size()).ok_or_else(|| Error::budget("global rank", spec.layer_size(), u64::MAX))
}

impl Vertex {
    pub fn from_masks(spec: &GroundSpec, masks: Vec<u64>) -> Result<Vertex> {
        if masks.len() != spec.p() {
            return Err(Error::SpecMismatch);
        }
        ensure_rankable(spec)?;
        let mut rank = 0u64;
        for (p, &m) in spec.parts().iter().zip(&masks) {
            rank = rank * p.size() + rank_subset(m, p.n, p.k)?;
        }
        Ok(Vertex {
            spec: spec.clone(),
            masks,
            rank,
        })
    }

    /// Builds a vertex from 1-based element lists, one per part.
    pub fn from_elements(spec: &GroundSpec, parts: &[&[u32]]) -> Result<Vertex> {
        let masks = parts
            .iter()
            .map(|elems| {
                elems.iter().try_fold(0u64, |acc, &e| {
                    if e == 0 || e > 64 {
                        Err(Error::InvalidSpec(format!("element {e} is not 1-based")))
                    } else {
                        Ok(acc | 1 << (e - 1))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Vertex::from_masks(spec, masks)
    }

    pub fn from_rank(spec: &GroundSpec, rank: u64) -> Result<Vertex> {
        let size = ensure_rankable(spec)?;
        if rank >= size {
            return Err(Error::RankOutOfRange {
                rank,
                size: size.to_string(),
            });
        }
        let mut masks = vec![0; spec.p()];
        let mut r = rank;
        for (i, p) in spec.parts().iter().enumerate().rev() {
            let s = p.size();
            masks[i] = unrank_subset(r % s, p.n, p.k)?;
            r /= s;
        }
        Ok(Vertex {
            spec: spec.clone(),
            masks,
            rank,
        })
    }

    pub fn spec(&self) -> &GroundSpec {
        &self.spec
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }
}

/// Part-wise complement `A_i -> [n_i] \ A_i`, landing in the layer
/// `(n_i, n_i - k_i)`; when every `n_i = 2 k_i` that is the same layer.
pub fn complement_vertex(v: &Vertex) -> Result<Vertex> {
    let target = if v.spec.parts().iter().all(|p| p.is_balanced()) {
        v.spec.clone()
    } else {
        v.spec.complement()?
    };
    let masks = v
        .masks
        .iter()
        .zip(v.spec.parts())
        .map(|(&m, p)| !m & full_mask(p.n))
        .collect();
    Vertex::from_masks(&target, masks)
}

pub(crate) fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// True when `u` and `v` share no element in any part. Both must live on
/// the same ground set (uniformities may differ).
pub fn disjoint(u: &Vertex, v: &Vertex) -> Result<bool> {
    if !u.spec.same_ground(&v.spec) {
        return Err(Error::SpecMismatch);
    }
    Ok(masks_disjoint(&u.masks, &v.masks))
}

#[inline]
pub(crate) fn masks_disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}
