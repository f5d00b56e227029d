//! Exhaustive maximum-sum search over `m`-tuples of cross-intersecting
//! families on a layer of at most 64 vertices.
//!
//! The first family ranges over every subset of the layer. Each later
//! family ranges over the subsets of the region left by the earlier ones
//! (vertices meeting every member chosen so far), and the last family is
//! that whole region: an optimal system cannot leave a compatible vertex
//! out of its last family.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::CrossSystem;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::layer::{Disjointness, Layer};
use crate::spec::GroundSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest number of complete tuples the search may visit.
    pub work_limit: u64,
    /// Largest number of optimal systems that may be returned.
    pub max_systems: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            work_limit: 1 << 26,
            max_systems: 1 << 20,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaxSumSearch {
    pub optimum: usize,
    /// Every optimal system, ordered by the rank bitmasks of its families.
    pub systems: Vec<CrossSystem>,
    /// Number of tuples visited.
    pub visited: u64,
}

/// Per-chunk result: best total and the optimal tuples (as rank masks).
struct Partial {
    best: usize,
    tuples: Vec<Vec<u64>>,
}

impl Partial {
    fn offer(&mut self, total: usize, tuple: &[u64]) {
        if total > self.best {
            self.best = total;
            self.tuples.clear();
        }
        if total == self.best {
            self.tuples.push(tuple.to_vec());
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        if other.best > self.best {
            return other;
        }
        if other.best == self.best {
            self.tuples.extend(other.tuples);
        }
        self
    }
}

struct Ctx<'a> {
    nbhd: Vec<u64>,
    full: u64,
    m: usize,
    limits: SearchLimits,
    work: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl Ctx<'_> {
    /// Vertices meeting every member of `f`.
    #[inline]
    fn region(&self, f: u64) -> u64 {
        let mut cover = 0;
        let mut rest = f;
        while rest != 0 {
            cover |= self.nbhd[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        self.full & !cover
    }

    fn descend(&self, tuple: &mut Vec<u64>, region: u64, out: &mut Partial, local: &mut u64) -> bool {
        if tuple.len() + 1 == self.m {
            tuple.push(region);
            let total = tuple.iter().map(|f| f.count_ones() as usize).sum();
            out.offer(total, tuple);
            tuple.pop();
            *local += 1;
            if *local >= 4096 {
                let done = self.work.fetch_add(*local, Ordering::Relaxed) + *local;
                *local = 0;
                if done > self.limits.work_limit || self.stop.load(Ordering::Relaxed) {
                    self.stop.store(true, Ordering::Relaxed);
                    return false;
                }
            }
            return true;
        }
        // every subset of the region, including the empty one
        let mut sub = region;
        loop {
            tuple.push(sub);
            let ok = self.descend(tuple, region & self.region(sub), out, local);
            tuple.pop();
            if !ok {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & region;
        }
    }
}

/// Maximum of `sum |A_i|` over `m` cross-intersecting families, with every
/// optimal system. With `require_first_nonempty` the first family must be
/// nonempty.
pub fn search_max_sum(
    spec: &GroundSpec,
    m: usize,
    require_first_nonempty: bool,
    limits: SearchLimits,
) -> Result<MaxSumSearch> {
    if !spec.is_kneser() {
        return Err(Error::precondition(format!("{spec}: every part needs n_i >= 2k_i")));
    }
    if m < 2 {
        return Err(Error::precondition("the search needs m >= 2"));
    }
    let layer = Layer::new(spec)?;
    let len = layer.len();
    if len > 63 || (1u64 << len) > limits.work_limit {
        return Err(Error::budget(
            "max-sum search",
            format!("2^{len} first families"),
            limits.work_limit,
        ));
    }
    let d = Disjointness::on(&layer)?;
    let nbhd: Vec<u64> = (0..len)
        .map(|r| d.neighbors(r).iter().fold(0u64, |acc, &b| acc | 1 << b))
        .collect();
    let full = (1u64 << len) - 1;
    let work = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let ctx = Ctx {
        nbhd,
        full,
        m,
        limits,
        work: &work,
        stop: &stop,
    };

    let start = u64::from(require_first_nonempty);
    let chunk = 1u64 << len.saturating_sub(8).min(12);
    let chunks: Vec<(u64, u64)> = (start..=full)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk - 1).min(full)))
        .collect();
    let result = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut out = Partial {
                best: 0,
                tuples: Vec::new(),
            };
            let mut local = 0u64;
            let mut tuple = Vec::with_capacity(m);
            for first in lo..=hi {
                tuple.push(first);
                let ok = ctx.descend(&mut tuple, ctx.region(first), &mut out, &mut local);
                tuple.pop();
                if !ok {
                    break;
                }
            }
            work.fetch_add(local, Ordering::Relaxed);
            out
        })
        .reduce(
            || Partial {
                best: 0,
                tuples: Vec::new(),
            },
            Partial::merge,
        );
    let visited = work.load(Ordering::Relaxed);
    if stop.load(Ordering::Relaxed) || visited > limits.work_limit {
        return Err(Error::budget(
            "max-sum search tuples",
            format!("more than {visited}"),
            limits.work_limit,
        ));
    }
    if result.tuples.len() > limits.max_systems {
        return Err(Error::budget(
            "optimal systems",
            result.tuples.len(),
            limits.max_systems,
        ));
    }
    let mut tuples = result.tuples;
    tuples.sort_unstable();
    let systems = tuples
        .into_iter()
        .map(|t| {
            let families = t
                .into_iter()
                .map(|mask| Family::from_ranks(spec, (0..len).filter(|&r| mask >> r & 1 == 1)))
                .collect::<Result<Vec<_>>>()?;
            CrossSystem::new(spec, families, require_first_nonempty)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MaxSumSearch {
        optimum: result.best,
        systems,
        visited,
    })
}
