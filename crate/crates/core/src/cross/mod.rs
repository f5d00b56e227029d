//! Systems of cross-intersecting families on one layer: verification, the
//! maximum-sum bound, exhaustive search, extremal constructions and the
//! classification of optimal systems.

mod extremal;
mod random;
mod search;

use std::fmt;

use num_bigint::BigUint;

use crate::arith::Ratio;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::kneser::alpha_formula;
use crate::layer::{Disjointness, Layer};
use crate::spec::GroundSpec;
use crate::vertex::Vertex;

pub use extremal::{
    classify_optimum, construct_case_i, construct_case_ii, construct_case_iii, BoundaryData, ExtremalCase,
    ExtremalCertificate, PairRoute,
};
pub use random::random_system;
pub use search::{search_max_sum, MaxSumSearch, SearchLimits};

/// `m` families on the same layer, not yet known to be cross-intersecting.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossSystem {
    spec: GroundSpec,
    families: Vec<Family>,
    first_nonempty: bool,
}

impl fmt::Debug for CrossSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CrossSystem")
            .field("spec", &self.spec.to_string())
            .field("families", &self.families.iter().map(Family::ranks).collect::<Vec<_>>())
            .finish()
    }
}

impl CrossSystem {
    /// Requires `n_i >= 2 k_i`, `m >= 2` families on `spec`, and a nonempty
    /// first family when `first_nonempty` is set.
    pub fn new(spec: &GroundSpec, families: Vec<Family>, first_nonempty: bool) -> Result<CrossSystem> {
        if !spec.is_kneser() {
            return Err(Error::precondition(format!("{spec}: every part needs n_i >= 2k_i")));
        }
        if families.len() < 2 {
            return Err(Error::precondition(format!(
                "a system needs at least 2 families, got {}",
                families.len()
            )));
        }
        if families.iter().any(|f| f.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        if first_nonempty && families[0].is_empty() {
            return Err(Error::EmptyFamily("first family"));
        }
        Ok(CrossSystem {
            spec: spec.clone(),
            families,
            first_nonempty,
        })
    }

    pub fn spec(&self) -> &GroundSpec {
        &self.spec
    }

    pub fn m(&self) -> usize {
        self.families.len()
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family(&self, i: usize) -> &Family {
        &self.families[i]
    }

    pub fn first_nonempty(&self) -> bool {
        self.first_nonempty
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.families.iter().map(Family::len).collect()
    }

    pub fn total(&self) -> usize {
        self.families.iter().map(Family::len).sum()
    }
}

/// A disjoint pair between two different families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub families: (usize, usize),
    pub pair: (Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub cross_intersecting: bool,
    /// First disjoint pair in (family, rank) order.
    pub violation: Option<Violation>,
}

/// Checks every pair of families; the first violation found scanning
/// `i < j` and the members of family `i` by rank is reported.
pub fn verify_cross_intersecting(sys: &CrossSystem) -> Result<CrossCheck> {
    let layer = Layer::new(&sys.spec)?;
    let d = Disjointness::on(&layer)?;
    Ok(first_violation(&d, &sys.families))
}

pub(crate) fn first_violation(d: &Disjointness, families: &[Family]) -> CrossCheck {
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            for a in families[i].bits().ones() {
                let mut hit = None;
                d.for_each_neighbor(a, |b| {
                    if hit.is_none() && families[j].contains_rank(b) {
                        hit = Some(b);
                    }
                });
                if let Some(b) = hit {
                    let layer = d.from_layer();
                    return CrossCheck {
                        cross_intersecting: false,
                        violation: Some(Violation {
                            families: (i, j),
                            pair: (layer.vertex(a), layer.vertex(b)),
                        }),
                    };
                }
            }
        }
    }
    CrossCheck {
        cross_intersecting: true,
        violation: None,
    }
}

/// Largest possible `sum |A_i|` over `m` cross-intersecting families:
/// `|X|` when `m <= min n_i/k_i`, otherwise `m M`.
pub fn bound_main0(spec: &GroundSpec, m: usize) -> Result<BigUint> {
    if !spec.is_kneser() {
        return Err(Error::precondition(format!("{spec}: every part needs n_i >= 2k_i")));
    }
    if m == 0 {
        return Err(Error::precondition("m must be at least 1"));
    }
    if Ratio::from_integer(m.into()) <= spec.min_ratio() {
        Ok(spec.layer_size().clone())
    } else {
        Ok(alpha_formula(spec) * BigUint::from(m))
    }
}
