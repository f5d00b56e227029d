//! Closed-form imprimitive subsets of one side of `G(X, Y)`, their
//! deficiencies, the size-estimate margins and the quadratic `H(x)` that a
//! balanced fragment would force.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{BipartiteDisjointness, Side};
use crate::arith::{binomial, ratio, Ratio};
use crate::error::{Error, Result};

/// `prod_{T1} {A_i, complement} x prod_{T2} {A_i} x prod_{free} C([n_i], u_i)`
/// on `side`, with 0-based part indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImprimitiveShape {
    pub side: Side,
    pub t1: Vec<usize>,
    pub t2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeEvaluation {
    pub shape: ImprimitiveShape,
    pub size: BigUint,
    pub nbhd_size: BigUint,
    /// `|N(A)| - |A|`.
    pub deficiency: BigInt,
}

impl ImprimitiveShape {
    /// Sizes of the shape and its neighborhood. Fails unless `T1` and `T2`
    /// are disjoint, strictly increasing, not both empty, `T2` is not every
    /// part, `T1` parts have `n_i = 2u_i` and `1 < |A| < |side|`.
    pub fn evaluate(&self, g: &BipartiteDisjointness) -> Result<ShapeEvaluation> {
        let p = g.p();
        let sorted = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&i| i < p);
        if !sorted(&self.t1) || !sorted(&self.t2) || self.t1.iter().any(|i| self.t2.contains(i)) {
            return Err(Error::precondition("T1 and T2 must be disjoint increasing part lists"));
        }
        if self.t1.is_empty() && self.t2.is_empty() {
            return Err(Error::precondition("T1 and T2 cannot both be empty"));
        }
        if self.t2.len() == p {
            return Err(Error::precondition("T2 cannot pin every part"));
        }
        let (own, other) = (g.uniformities(self.side), g.uniformities(self.side.other()));
        let n = g.n();
        if let Some(&i) = self.t1.iter().find(|&&i| n[i] != 2 * own[i]) {
            return Err(Error::precondition(format!("part {} is not balanced", i + 1)));
        }
        let mut size = BigUint::one();
        let mut nbhd = BigUint::one();
        for i in 0..p {
            let (n, u, w) = (n[i] as u64, own[i] as u64, other[i] as u64);
            if self.t1.contains(&i) {
                size *= 2u32;
                nbhd *= binomial(n / 2, w) * 2u32;
            } else if self.t2.contains(&i) {
                nbhd *= binomial(n - u, w);
            } else {
                size *= binomial(n, u);
                nbhd *= binomial(n, w);
            }
        }
        if size.is_one() || &size == g.size(self.side) {
            return Err(Error::precondition("imprimitive sets have 1 < |A| < |side|"));
        }
        let deficiency = BigInt::from(nbhd.clone()) - BigInt::from(size.clone());
        Ok(ShapeEvaluation {
            shape: self.clone(),
            size,
            nbhd_size: nbhd,
            deficiency,
        })
    }
}

/// Every valid imprimitive shape on `side`, ordered by `(|T1|, |T2|, T1, T2)`.
pub fn imprimitive_shapes(g: &BipartiteDisjointness, side: Side) -> Result<Vec<ShapeEvaluation>> {
    let p = g.p();
    if p > 16 {
        return Err(Error::budget("imprimitive shapes", format!("3^{p}"), "3^16"));
    }
    let mut out = Vec::new();
    for code in 0..3usize.pow(p as u32) {
        let (mut t1, mut t2) = (Vec::new(), Vec::new());
        let mut c = code;
        for i in 0..p {
            match c % 3 {
                1 => t1.push(i),
                2 => t2.push(i),
                _ => {}
            }
            c /= 3;
        }
        if let Ok(e) = (ImprimitiveShape { side, t1, t2 }).evaluate(g) {
            out.push(e);
        }
    }
    out.sort_by(|a, b| {
        let key = |e: &ShapeEvaluation| {
            (
                e.shape.t1.len(),
                e.shape.t2.len(),
                e.shape.t1.clone(),
                e.shape.t2.clone(),
            )
        };
        key(a).cmp(&key(b))
    });
    Ok(out)
}

/// Every imprimitive shape of least deficiency on `side`.
pub fn min_imprimitive_deficiency(g: &BipartiteDisjointness, side: Side) -> Result<Vec<ShapeEvaluation>> {
    let all = imprimitive_shapes(g, side)?;
    let best = all
        .iter()
        .map(|e| e.deficiency.clone())
        .min()
        .ok_or(Error::NoImprimitiveShape)?;
    Ok(all.into_iter().filter(|e| e.deficiency == best).collect())
}

/// Size-estimate quantities of one imprimitive shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeEstimate {
    X {
        beta1: Ratio,
        beta2: Ratio,
        theta: Ratio,
        /// `1 - beta1 - beta2 + theta`.
        d1: Ratio,
    },
    Y {
        delta: Ratio,
        eta0: Ratio,
        eta1: Ratio,
        eta2: Ratio,
        theta_prime: Ratio,
        /// `delta + eta0 (1 - eta1 - eta2) + theta_prime`.
        d2: Ratio,
    },
}

impl SizeEstimate {
    /// `d1` or `d2`.
    pub fn margin(&self) -> &Ratio {
        match self {
            SizeEstimate::X { d1, .. } => d1,
            SizeEstimate::Y { d2, .. } => d2,
        }
    }
}

pub fn size_estimate(g: &BipartiteDisjointness, shape: &ImprimitiveShape) -> Result<SizeEstimate> {
    let e = shape.evaluate(g)?;
    let dx = g.degree(Side::X);
    let one = Ratio::one();
    Ok(match shape.side {
        Side::X => {
            let beta1 = ratio(&e.size, &e.nbhd_size);
            let beta2 = ratio(&dx, &e.nbhd_size);
            let theta = ratio(&BigUint::one(), &e.nbhd_size);
            let d1 = &one - &beta1 - &beta2 + &theta;
            SizeEstimate::X {
                beta1,
                beta2,
                theta,
                d1,
            }
        }
        Side::Y => {
            let (x, y) = (g.size(Side::X), g.size(Side::Y));
            let delta = Ratio::new(BigInt::from(y.clone()) - BigInt::from(x.clone()), x.clone().into());
            let eta0 = ratio(&e.nbhd_size, x);
            let eta1 = ratio(&e.size, &e.nbhd_size);
            let eta2 = ratio(&dx, &e.nbhd_size);
            let theta_prime = ratio(&BigUint::one(), x);
            let d2 = &delta + &eta0 * (&one - &eta1 - &eta2) + &theta_prime;
            SizeEstimate::Y {
                delta,
                eta0,
                eta1,
                eta2,
                theta_prime,
                d2,
            }
        }
    })
}

/// The integer numerator of the margin: `|N(A)| - |A| - d(X) + 1` on `X`,
/// `|Y| - |X| + |N(B)| - |B| - d(X) + 1` on `Y`. Its sign is the sign of
/// `d1` or `d2`.
pub fn size_margin(g: &BipartiteDisjointness, shape: &ImprimitiveShape) -> Result<BigInt> {
    let e = shape.evaluate(g)?;
    let dx = BigInt::from(g.degree(Side::X));
    let base = e.deficiency - dx + 1;
    Ok(match shape.side {
        Side::X => base,
        Side::Y => base + BigInt::from(g.size(Side::Y).clone()) - BigInt::from(g.size(Side::X).clone()),
    })
}

/// `H(x)` for a distinguished part `j` together with the inequality it
/// encodes at `x = n_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    pub j: usize,
    /// `prod_{i != j} C(n_i - s_i, t_i) / C(n_i, t_i)`.
    pub a0: Ratio,
    /// `prod_{i != j} 1 / C(n_i, t_i)`.
    pub b0: Ratio,
    /// Coefficients of `x^2`, `x` and `1`.
    pub coeffs: [Ratio; 3],
    /// Every integral zero, ascending.
    pub integral_roots: Vec<BigInt>,
    /// Integral zeros in `[s_j + 3, 4 max n_i]`.
    pub roots_in_range: Vec<BigInt>,
    /// `2 P (n_j - 1)` with `P = prod_{i != j} C(n_i, t_i)`.
    pub lhs: BigInt,
    /// `P C(n_j, 2) - Q C(n_j - s_j, 2) + 1` with
    /// `Q = prod_{i != j} C(n_i - s_i, t_i)`.
    pub rhs: BigInt,
    /// `lhs < rhs`.
    pub strict: bool,
}

impl HPolynomial {
    pub fn eval(&self, x: &Ratio) -> Ratio {
        let [a, b, c] = &self.coeffs;
        a * x * x + b * x + c
    }
}

/// Integral zeros of `a x^2 + b x + c` (not all zero).
fn integral_zeros(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if a.is_zero() {
        if !b.is_zero() && (c % b).is_zero() {
            out.push(-c / b);
        }
        return out;
    }
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return out;
    }
    let r = disc.sqrt();
    if &r * &r != disc {
        return out;
    }
    let two_a = BigInt::from(2) * a;
    for num in [-b - &r, -b + &r] {
        if (&num % &two_a).is_zero() {
            out.push(num / &two_a);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Requires `p >= 2` and `j < p` (0-based).
pub fn h_polynomial(g: &BipartiteDisjointness, j: usize) -> Result<HPolynomial> {
    let p = g.p();
    if p < 2 {
        return Err(Error::precondition("H(x) needs p >= 2"));
    }
    if j >= p {
        return Err(Error::precondition(format!("part index {j} out of range for p = {p}")));
    }
    let (n, s, t) = (g.n(), g.s(), g.t());
    let mut big_p = BigUint::one();
    let mut big_q = BigUint::one();
    for i in (0..p).filter(|&i| i != j) {
        big_p *= binomial(n[i] as u64, t[i] as u64);
        big_q *= binomial((n[i] - s[i]) as u64, t[i] as u64);
    }
    let (pp, qq) = (BigInt::from(big_p.clone()), BigInt::from(big_q.clone()));
    let a0 = ratio(&big_q, &big_p);
    let b0 = ratio(&BigUint::one(), &big_p);
    let sj = BigInt::from(s[j]);
    let one = Ratio::one();
    let r = |v: i64| Ratio::from_integer(BigInt::from(v));
    let sr = Ratio::from_integer(sj.clone());
    let coeffs = [
        &one - &a0,
        -(r(5) - &a0 * (r(2) * &sr + &one)),
        r(2) * &b0 + r(4) - &a0 * (&sr * &sr + &sr),
    ];
    // P H(x) has integer coefficients
    let ia = &pp - &qq;
    let ib = -(BigInt::from(5) * &pp - &qq * (BigInt::from(2) * &sj + BigInt::one()));
    let ic = BigInt::from(4) * &pp - &qq * (&sj * &sj + &sj) + BigInt::from(2);
    let integral_roots = integral_zeros(&ia, &ib, &ic);
    let lo = &sj + BigInt::from(3);
    let hi = BigInt::from(4 * n.iter().copied().max().unwrap_or(0));
    let roots_in_range = integral_roots
        .iter()
        .filter(|x| **x >= lo && **x <= hi)
        .cloned()
        .collect();
    let nj = n[j] as u64;
    let lhs = BigInt::from(2) * &pp * BigInt::from(nj - 1);
    let rhs = &pp * BigInt::from(binomial(nj, 2)) - &qq * BigInt::from(binomial(nj - s[j] as u64, 2)) + 1;
    Ok(HPolynomial {
        j,
        a0,
        b0,
        coeffs,
        integral_roots,
        roots_in_range,
        strict: lhs < rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: &[u32], t: &[u32], s: &[u32]) -> BipartiteDisjointness {
        BipartiteDisjointness::new(n, t, s).unwrap()
    }

    fn shape(side: Side, t1: &[usize], t2: &[usize]) -> ImprimitiveShape {
        ImprimitiveShape {
            side,
            t1: t1.to_vec(),
            t2: t2.to_vec(),
        }
    }

    fn q(a: i64, b: i64) -> Ratio {
        Ratio::new(a.into(), b.into())
    }

    #[test]
    fn closed_form_sizes() {
        let b = g(&[5, 5], &[2, 2], &[2, 2]);
        let e = shape(Side::X, &[], &[0]).evaluate(&b).unwrap();
        assert_eq!(
            (e.size, e.nbhd_size, e.deficiency),
            (10u32.into(), 30u32.into(), 20.into())
        );
        let b = g(&[4, 5], &[2, 2], &[1, 2]);
        let e = shape(Side::X, &[0], &[]).evaluate(&b).unwrap();
        assert_eq!(e.size, BigUint::from(20u32));
        assert!(shape(Side::X, &[1], &[]).evaluate(&b).is_err());
        assert!(shape(Side::X, &[], &[0, 1]).evaluate(&b).is_err());
        assert!(shape(Side::X, &[], &[]).evaluate(&b).is_err());
    }

    #[test]
    fn single_part_has_no_imprimitive_shape() {
        let b = g(&[5], &[2], &[2]);
        assert_eq!(min_imprimitive_deficiency(&b, Side::X), Err(Error::NoImprimitiveShape));
    }

    #[test]
    fn minimizers_are_ordered() {
        let b = g(&[5, 5], &[2, 2], &[2, 2]);
        let m = min_imprimitive_deficiency(&b, Side::X).unwrap();
        let shapes: Vec<_> = m.iter().map(|e| e.shape.t2.clone()).collect();
        assert_eq!(shapes, vec![vec![0], vec![1]]);
    }

    #[test]
    fn size_estimate_example() {
        let b = g(&[5, 5], &[2, 2], &[2, 2]);
        let s = shape(Side::X, &[], &[0]);
        let SizeEstimate::X {
            beta1,
            beta2,
            theta,
            d1,
        } = size_estimate(&b, &s).unwrap()
        else {
            panic!("X-side quantities expected");
        };
        assert_eq!((beta1, beta2, theta, d1), (q(1, 3), q(3, 10), q(1, 30), q(2, 5)));
        assert_eq!(size_margin(&b, &s).unwrap(), BigInt::from(12));
        let SizeEstimate::Y { delta, .. } = size_estimate(&b, &shape(Side::Y, &[], &[1])).unwrap() else {
            panic!("Y-side quantities expected");
        };
        assert_eq!(delta, q(0, 1));
    }

    #[test]
    fn eq5_example() {
        let b = g(&[5, 5], &[2, 2], &[2, 2]);
        let h = h_polynomial(&b, 1).unwrap();
        assert_eq!((h.lhs.clone(), h.rhs.clone()), (80.into(), 92.into()));
        assert!(h.strict);
        assert!(h_polynomial(&g(&[5], &[2], &[2]), 0).is_err());
        assert!(h_polynomial(&b, 2).is_err());
    }

    #[test]
    fn integral_zeros_of_known_quadratics() {
        let z = |a: i64, b: i64, c: i64| integral_zeros(&a.into(), &b.into(), &c.into());
        assert_eq!(z(1, -5, 6), vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(z(2, -5, 2), vec![BigInt::from(2)]);
        assert_eq!(z(1, 0, 1), Vec::<BigInt>::new());
        assert_eq!(z(0, 3, -12), vec![BigInt::from(4)]);
        assert_eq!(z(1, -4, 4), vec![BigInt::from(2)]);
    }

    proptest! {
        #[test]
        fn gap_equals_scaled_h(
            n in prop::collection::vec(5u32..10, 2..4),
            seed in prop::collection::vec((2u32..5, 2u32..5), 3),
            j in 0usize..3,
        ) {
            let p = n.len();
            let j = j % p;
            let t: Vec<u32> = (0..p).map(|i| seed[i].0.min(n[i] / 2)).collect();
            let s: Vec<u32> = (0..p).map(|i| seed[i].1.min(n[i] / 2)).collect();
            let b = g(&n, &t, &s);
            let h = h_polynomial(&b, j).unwrap();
            let big_p: BigUint = (0..p).filter(|&i| i != j).map(|i| binomial(n[i] as u64, t[i] as u64)).product();
            let x = Ratio::from_integer(n[j].into());
            // rhs - lhs = P H(n_j) / 2
            let gap = Ratio::from_integer(&h.rhs - &h.lhs);
            prop_assert_eq!(gap, h.eval(&x) * Ratio::from_integer(big_p.into()) / Ratio::from_integer(2.into()));
            for r in &h.integral_roots {
                prop_assert!(h.eval(&Ratio::from_integer(r.clone())).is_zero());
            }
        }

        #[test]
        fn margins_share_sign_with_rationals(
            n in prop::collection::vec(4u32..9, 2..4),
            seed in prop::collection::vec((1u32..5, 1u32..5), 3),
        ) {
            let p = n.len();
            let t: Vec<u32> = (0..p).map(|i| seed[i].0.min(n[i] / 2)).collect();
            let s: Vec<u32> = (0..p).map(|i| seed[i].1.min(n[i] / 2)).collect();
            let b = g(&n, &t, &s);
            for side in [Side::X, Side::Y] {
                for e in imprimitive_shapes(&b, side).unwrap() {
                    let m = size_margin(&b, &e.shape).unwrap();
                    let c = size_estimate(&b, &e.shape).unwrap();
                    let den = match side {
                        Side::X => BigInt::from(e.nbhd_size.clone()),
                        Side::Y => BigInt::from(b.size(Side::X).clone()),
                    };
                    prop_assert_eq!(c.margin().clone(), Ratio::new(m, den));
                }
            }
        }
    }
}
