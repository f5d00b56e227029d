//! Deliberately naive reference computations.
//!
//! Everything here is written from first principles and shares no code with
//! `crossfam-core`: layers are built by filtering all bitmasks by popcount,
//! binomials come from Pascal's triangle, and every search is a plain sweep
//! over all subsets. The functions are slow on purpose and are only linked
//! into test and bench targets.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("invalid oracle input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Hard limits for the exponential sweeps. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest vertex count for a full `2^V` sweep.
    pub max_vertices: usize,
    /// Largest number of family tuples a max-sum sweep may visit.
    pub max_pairs: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 24,
            max_pairs: 1 << 24,
        }
    }
}

impl OracleBudget {
    fn check_vertices(&self, what: &'static str, v: usize) -> Result<()> {
        if v > self.max_vertices {
            return Err(OracleError::BudgetExceeded {
                what,
                needed: v as u128,
                limit: self.max_vertices as u128,
            });
        }
        Ok(())
    }
}

/// Which side of the two-layer disjointness graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// `C(n, k)` from the additive recurrence, one row at a time.
pub fn pascal_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row[k as usize].clone()
}

/// Two-branch bound for `m` cross-intersecting families of `k`-subsets of
/// `[n]`, `n >= 2k`.
pub fn classical_max_sum(n: u64, k: u64, m: u64) -> BigUint {
    // m <= n/k  <=>  m*k <= n
    if m * k <= n {
        pascal_binomial(n, k)
    } else {
        BigUint::from(m) * pascal_binomial(n - 1, k - 1)
    }
}

/// All multi-part sets with `k[i]` elements in part `i`, as per-part masks.
/// Order is "numeric mask order, first part slowest", unrelated to any
/// ranking scheme used elsewhere.
pub fn naive_layer(n: &[u32], k: &[u32]) -> Vec<Vec<u64>> {
    assert_eq!(n.len(), k.len());
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for (&ni, &ki) in n.iter().zip(k) {
        assert!(ni <= 24, "naive layer parts are limited to 24 elements");
        let choices: Vec<u64> = (0u64..(1u64 << ni)).filter(|m| m.count_ones() == ki).collect();
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for &c in &choices {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// True when the two multi-part sets share no element in any part.
pub fn naive_disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

/// Edge list of the disjointness graph on one layer.
pub fn disjointness_edges(n: &[u32], k: &[u32]) -> (usize, Vec<(usize, usize)>) {
    let layer = naive_layer(n, k);
    let mut edges = Vec::new();
    for i in 0..layer.len() {
        for j in i + 1..layer.len() {
            if naive_disjoint(&layer[i], &layer[j]) {
                edges.push((i, j));
            }
        }
    }
    (layer.len(), edges)
}

fn adjacency_masks(vertices: usize, edges: &[(usize, usize)]) -> Result<Vec<u64>> {
    let mut adj = vec![0u64; vertices];
    for &(a, b) in edges {
        if a >= vertices || b >= vertices {
            return Err(OracleError::Invalid(format!("edge ({a},{b}) out of range")));
        }
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Ok(adj)
}

fn is_independent(adj: &[u64], set: u64) -> bool {
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & set != 0 {
            return false;
        }
    }
    true
}

/// Every independent set (as a vertex bitmask), by a full `2^V` sweep.
pub fn naive_independent_sets(vertices: usize, edges: &[(usize, usize)], budget: &OracleBudget) -> Result<Vec<u64>> {
    budget.check_vertices("independent-set sweep", vertices)?;
    let adj = adjacency_masks(vertices, edges)?;
    Ok((0u64..(1u64 << vertices))
        .filter(|&s| is_independent(&adj, s))
        .collect())
}

/// Independence number by a full `2^V` sweep.
pub fn naive_alpha(vertices: usize, edges: &[(usize, usize)], budget: &OracleBudget) -> Result<usize> {
    Ok(naive_independent_sets(vertices, edges, budget)?
        .into_iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// All maximum independent sets, as vertex bitmasks in increasing order.
pub fn naive_maximum_independent_sets(
    vertices: usize,
    edges: &[(usize, usize)],
    budget: &OracleBudget,
) -> Result<Vec<u64>> {
    let all = naive_independent_sets(vertices, edges, budget)?;
    let best = all.iter().map(|s| s.count_ones()).max().unwrap_or(0);
    Ok(all.into_iter().filter(|s| s.count_ones() == best).collect())
}

/// Result of the unpruned max-sum sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSum {
    pub optimum: usize,
    /// Number of family tuples attaining the optimum.
    pub optimal_count: u64,
}

/// Maximum of `sum |A_i|` over all `m`-tuples of cross-intersecting families
/// on the layer, visiting every tuple.
pub fn naive_max_sum(
    n: &[u32],
    k: &[u32],
    m: usize,
    require_first_nonempty: bool,
    budget: &OracleBudget,
) -> Result<MaxSum> {
    if m == 0 {
        return Err(OracleError::Invalid("m must be positive".into()));
    }
    let (size, edges) = disjointness_edges(n, k);
    if size > 63 {
        return Err(OracleError::BudgetExceeded {
            what: "max-sum layer",
            needed: size as u128,
            limit: 63,
        });
    }
    let tuples = 1u128
        .checked_shl((size * m) as u32)
        .filter(|_| size * m < 128)
        .unwrap_or(u128::MAX);
    if tuples > budget.max_pairs {
        return Err(OracleError::BudgetExceeded {
            what: "max-sum tuples",
            needed: tuples,
            limit: budget.max_pairs,
        });
    }
    let adj = adjacency_masks(size, &edges)?;
    // neighbourhood of every family, computed once
    let per_family: u64 = 1 << size;
    let nbhd: Vec<u64> = (0..per_family)
        .map(|f| {
            let mut acc = 0;
            let mut rest = f;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= adj[v];
            }
            acc
        })
        .collect();

    let mut best = 0usize;
    let mut count = 0u64;
    let mut tuple = vec![0u64; m];
    loop {
        let ok_first = !require_first_nonempty || tuple[0] != 0;
        let mut cross = ok_first;
        'outer: for i in 0..m {
            for j in 0..m {
                if i != j && nbhd[tuple[i] as usize] & tuple[j] != 0 {
                    cross = false;
                    break 'outer;
                }
            }
        }
        if cross {
            let total: usize = tuple.iter().map(|f| f.count_ones() as usize).sum();
            if total > best {
                best = total;
                count = 1;
            } else if total == best {
                count += 1;
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(MaxSum {
                    optimum: best,
                    optimal_count: count,
                });
            }
            tuple[pos] += 1;
            if tuple[pos] == per_family {
                tuple[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}

fn bipartite_adjacency(n: &[u32], t: &[u32], s: &[u32], side: Side) -> (usize, usize, Vec<u64>) {
    let x = naive_layer(n, t);
    let y = naive_layer(n, s);
    let (from, to) = match side {
        Side::X => (&x, &y),
        Side::Y => (&y, &x),
    };
    assert!(to.len() <= 64, "opposite side must fit in 64 bits");
    let adj = from
        .iter()
        .map(|a| {
            to.iter()
                .enumerate()
                .filter(|(_, b)| naive_disjoint(a, b))
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    (from.len(), to.len(), adj)
}

/// `min |N(A)| - |A|` over nonempty `A` on `side` with `N(A)` not the whole
/// opposite side, by sweeping every subset.
pub fn naive_epsilon(n: &[u32], t: &[u32], s: &[u32], side: Side, budget: &OracleBudget) -> Result<i64> {
    let (from, to, adj) = bipartite_adjacency(n, t, s, side);
    budget.check_vertices("epsilon sweep", from)?;
    let full: u64 = if to == 64 { u64::MAX } else { (1 << to) - 1 };
    let mut best: Option<i64> = None;
    for a in 1u64..(1u64 << from) {
        let mut nb = 0u64;
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            nb |= adj[v];
        }
        if nb == full {
            continue;
        }
        let d = nb.count_ones() as i64 - a.count_ones() as i64;
        best = Some(best.map_or(d, |b: i64| b.min(d)));
    }
    best.ok_or_else(|| OracleError::Invalid("no admissible subset".into()))
}

/// Largest `|A| + |B|` over nonempty cross-intersecting `A` on the X side and
/// `B` on the Y side, sweeping every `A` and taking the largest admissible `B`.
pub fn naive_alpha_xy(n: &[u32], t: &[u32], s: &[u32], budget: &OracleBudget) -> Result<usize> {
    let (from, to, adj) = bipartite_adjacency(n, t, s, Side::X);
    budget.check_vertices("alpha(X,Y) sweep", from)?;
    let full: u64 = if to == 64 { u64::MAX } else { (1 << to) - 1 };
    let mut best = 0usize;
    for a in 1u64..(1u64 << from) {
        let mut nb = 0u64;
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            nb |= adj[v];
        }
        if nb == full {
            continue;
        }
        best = best.max(a.count_ones() as usize + (to - nb.count_ones() as usize));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> (usize, Vec<(usize, usize)>) {
        disjointness_edges(&[5], &[2])
    }

    #[test]
    fn pascal_matches_small_values() {
        assert_eq!(pascal_binomial(5, 2), BigUint::from(10u32));
        assert_eq!(pascal_binomial(18, 15), BigUint::from(816u32));
        assert_eq!(pascal_binomial(3, 4), BigUint::zero());
        assert_eq!(pascal_binomial(0, 0), BigUint::one());
    }

    #[test]
    fn alpha_examples() {
        let b = OracleBudget::default();
        let (v, e) = petersen();
        assert_eq!(e.len(), 15);
        assert_eq!(naive_alpha(v, &e, &b).unwrap(), 4);
        assert_eq!(naive_alpha(6, &[(0, 1), (2, 3), (4, 5)], &b).unwrap(), 3);
        assert_eq!(naive_alpha(5, &[], &b).unwrap(), 5);
        assert_eq!(naive_maximum_independent_sets(v, &e, &b).unwrap().len(), 5);
    }

    #[test]
    fn budget_is_enforced() {
        let b = OracleBudget {
            max_vertices: 4,
            ..Default::default()
        };
        assert!(matches!(
            naive_alpha(5, &[], &b),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn max_sum_examples() {
        let b = OracleBudget::default();
        assert_eq!(naive_max_sum(&[4], &[2], 2, true, &b).unwrap().optimum, 6);
        assert_eq!(naive_max_sum(&[2, 3], &[1, 1], 2, true, &b).unwrap().optimum, 6);
    }

    #[test]
    fn epsilon_examples() {
        let b = OracleBudget::default();
        assert_eq!(naive_epsilon(&[5], &[2], &[2], Side::X, &b).unwrap(), 2);
        assert_eq!(naive_epsilon(&[6], &[2], &[3], Side::X, &b).unwrap(), 3);
    }

    #[test]
    fn classical_max_sum_branches() {
        assert_eq!(classical_max_sum(5, 2, 2), BigUint::from(10u32));
        assert_eq!(classical_max_sum(5, 2, 3), BigUint::from(12u32));
        assert_eq!(classical_max_sum(4, 2, 2), BigUint::from(6u32));
    }
}
