//! Exact Poincare-series arithmetic.
//!
//! Every closed form in sight is a Laurent polynomial divided by a power of
//! (1 - x), so that is the canonical representation: a `LaurentPoly`
//! numerator with arbitrary-precision integer coefficients and a
//! `denom_pow`. Identities are checked exactly in this form; expansion into
//! coefficients happens only at the edges.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::charlattice::{enumerate_subgroups, gaussian_binomial, Character};
use crate::{Error, Result};

/// A Laurent polynomial in x with integer coefficients; only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(degree: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(degree, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (d, c) in pairs {
            p.add_term(d, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, degree: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.terms().map(|(d, c)| (d + by, c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.terms().map(|(d, c)| (d, -c.clone())).collect(),
        }
    }

    /// Exact division by (1 - x); `None` if there is a remainder.
    pub fn div_one_minus_x(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let lo = self.min_degree().unwrap();
        let hi = self.max_degree().unwrap();
        // f = (1 - x) q  =>  q_d = f_d + q_{d-1}, scanning upward from lo
        let mut q = LaurentPoly::zero();
        let mut carry = BigInt::zero();
        for d in lo..=hi {
            carry += self.coeff(d);
            q.add_term(d, carry.clone());
        }
        if carry.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Split into (positive part, negative part): `self = pos - neg`, both
    /// with nonnegative coefficients.
    pub fn split_signs(&self) -> (LaurentPoly, LaurentPoly) {
        let mut pos = LaurentPoly::zero();
        let mut neg = LaurentPoly::zero();
        for (d, c) in self.terms() {
            if c.is_positive() {
                pos.add_term(d, c.clone());
            } else {
                neg.add_term(d, -c.clone());
            }
        }
        (pos, neg)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let unit_coeff = mag.is_one();
            match (d, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{mag}*x^{d}")?,
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial divided by (1 - x)^denom_pow, in canonical form: the
/// numerator is not divisible by (1 - x) unless the denominator power is 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSeries {
    num: LaurentPoly,
    denom_pow: u32,
}

impl RationalSeries {
    pub fn new(num: LaurentPoly, denom_pow: u32) -> Self {
        let mut s = RationalSeries { num, denom_pow };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        RationalSeries {
            num: LaurentPoly::zero(),
            denom_pow: 0,
        }
    }

    pub fn one() -> Self {
        RationalSeries {
            num: LaurentPoly::one(),
            denom_pow: 0,
        }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalSeries { num, denom_pow: 0 }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.denom_pow = 0;
            return;
        }
        while self.denom_pow > 0 {
            match self.num.div_one_minus_x() {
                Some(q) => {
                    self.num = q;
                    self.denom_pow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let e = self.denom_pow.max(other.denom_pow);
        let a = self.num.mul(&one_minus_x_pow(e - self.denom_pow));
        let b = other.num.mul(&one_minus_x_pow(e - other.denom_pow));
        RationalSeries::new(a.add(&b), e)
    }

    pub fn sub(&self, other: &RationalSeries) -> RationalSeries {
        self.add(&RationalSeries {
            num: other.num.neg(),
            denom_pow: other.denom_pow,
        })
    }

    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        RationalSeries::new(self.num.mul(&other.num), self.denom_pow + other.denom_pow)
    }

    pub fn shift(&self, by: i64) -> RationalSeries {
        RationalSeries {
            num: self.num.shift(by),
            denom_pow: self.denom_pow,
        }
    }

    /// Coefficient of x^t in the Laurent expansion around x = 0, using
    /// 1/(1-x)^e = sum_k C(e-1+k, k) x^k.
    pub fn coeff(&self, t: i64) -> BigInt {
        let e = self.denom_pow as i64;
        let mut acc = BigInt::zero();
        for (d, c) in self.num.terms() {
            let k = t - d;
            if k < 0 {
                continue;
            }
            if e == 0 {
                if k == 0 {
                    acc += c;
                }
            } else {
                acc += c * binomial(e - 1 + k, k);
            }
        }
        acc
    }

    /// Renders as `{"num": {degree: coeff}, "denom_pow": e}`.
    pub fn to_json(&self) -> serde_json::Value {
        let num: serde_json::Map<String, serde_json::Value> = self
            .num
            .terms()
            .map(|(d, c)| {
                let v = match i64::try_from(c.clone()) {
                    Ok(i) => serde_json::Value::from(i),
                    Err(_) => serde_json::Value::from(c.to_string()),
                };
                (d.to_string(), v)
            })
            .collect();
        serde_json::json!({ "num": num, "denom_pow": self.denom_pow })
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_pow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/(1-x)^{}", self.num, self.denom_pow)
        }
    }
}

fn one_minus_x_pow(e: u32) -> LaurentPoly {
    let base = LaurentPoly::from_coeffs([(0, 1), (1, -1)]);
    let mut out = LaurentPoly::one();
    for _ in 0..e {
        out = out.mul(&base);
    }
    out
}

fn binomial(n: i64, k: i64) -> BigInt {
    debug_assert!(n >= 0 && k >= 0 && k <= n);
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Laurent-expansion coefficients of `s` on [t_min, t_max], inclusive.
pub fn expand(s: &RationalSeries, t_min: i64, t_max: i64) -> Vec<BigInt> {
    assert!(t_min <= t_max);
    (t_min..=t_max).map(|t| s.coeff(t)).collect()
}

/// Hilbert series of the fixed-point ring R_n:
/// prod_{i=1}^n (1 + (2^{i-1} - 1) x) / (1 - x)^n.
pub fn phi_poincare(n: u8) -> RationalSeries {
    assert!(n >= 1);
    RationalSeries::new(phi_numerator(n as u32), n as u32)
}

fn phi_numerator(n: u32) -> LaurentPoly {
    let mut num = LaurentPoly::one();
    for i in 1..=n as i64 {
        num = num.mul(&LaurentPoly::from_coeffs([(0, 1), (1, (1 << (i - 1)) - 1)]));
    }
    num
}

/// The closed-form suspension series: the alternating sum over subgroups
/// H of the character group, with any sign of multiplicity allowed. For
/// m >= 0 this is a theorem; for mixed signs it is exposed only as a formal
/// Euler-characteristic oracle.
pub fn formal_alternating_sum(n: u8, m: &BTreeMap<Character, i64>) -> RationalSeries {
    assert!(n >= 1);
    let m_of = |alpha: Character| m.get(&alpha).copied().unwrap_or(0);
    let mut total = RationalSeries::zero();
    for k in 0..=n as usize {
        let head = phi_numerator(n as u32 - k as u32);
        for h in enumerate_subgroups(n, k) {
            let m_sum: i64 = h
                .members()
                .iter()
                .filter(|&&a| a != 0)
                .map(|&a| m_of(Character::new(a, n)))
                .sum();
            let mut term = head.shift(k as i64 + m_sum);
            if k % 2 == 1 {
                term = term.neg();
            }
            total = total.add(&RationalSeries::new(term, n as u32));
        }
    }
    total
}

/// Poincare series of the m-fold suspension over the positive cone.
pub fn suspension_poincare(n: u8, m: &BTreeMap<Character, i64>) -> Result<RationalSeries> {
    for (alpha, &v) in m {
        if v < 0 {
            return Err(Error::NegativeCoefficient(alpha.to_string(), v));
        }
    }
    Ok(formal_alternating_sum(n, m))
}

/// Checks the q-binomial identity
/// sum_k (-1)^k [n choose k]_2 x^k prod_{i=1}^{n-k} (1 + (2^{i-1}-1) x) = (1-x)^n.
pub fn qbinomial_identity_check(n: u8) -> bool {
    let n = n as u32;
    let mut lhs = LaurentPoly::zero();
    for k in 0..=n {
        let mut term = phi_numerator(n - k).shift(k as i64);
        term = term.mul(&LaurentPoly::monomial(
            0,
            BigInt::from(gaussian_binomial(n, k)),
        ));
        if k % 2 == 1 {
            term = term.neg();
        }
        lhs = lhs.add(&term);
    }
    lhs == one_minus_x_pow(n)
}

/// The complete answer for n = 2 in representation degree (k, l, m): total
/// series and its decomposition by filtration (0, -1, -2).
///
/// P = (1 + x - x^{1+k} - x^{1+l} - x^{1+m} + x^{2+k+l+m}) / (1-x)^2 is
/// always a Laurent polynomial (the numerator has a double root at x = 1).
/// The filtration placement depends only on the signs of (k, l, m).
pub fn n2_series(k: i64, l: i64, m: i64) -> (RationalSeries, BTreeMap<i64, RationalSeries>) {
    let eex1 = LaurentPoly::from_coeffs([
        (0, 1),
        (1, 1),
        (1 + k, -1),
        (1 + l, -1),
        (1 + m, -1),
        (2 + k + l + m, 1),
    ]);
    let p = RationalSeries::new(eex1, 2);
    assert_eq!(p.denom_pow(), 0, "double root at x=1 must cancel");
    let p = p.numerator().clone();
    let (pos, neg) = p.split_signs();

    let negatives = [k, l, m].iter().filter(|&&v| v < 0).count();
    let third = [k, l, m].into_iter().max().unwrap();
    let mut by_filtration: BTreeMap<i64, RationalSeries> = BTreeMap::new();
    let mut put = |f: i64, poly: LaurentPoly| {
        if !poly.is_zero() {
            by_filtration.insert(f, RationalSeries::from_poly(poly));
        }
    };
    match negatives {
        0 => put(0, p),
        1 => {
            put(0, pos);
            put(-1, neg.shift(-1));
        }
        _ if third <= 0 => put(-2, p.shift(-2)),
        _ => {
            put(-2, pos.shift(-2));
            put(-1, neg.shift(-1));
        }
    }
    let total = by_filtration
        .values()
        .fold(RationalSeries::zero(), |acc, s| acc.add(s));
    (total, by_filtration)
}
