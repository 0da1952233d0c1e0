//! The geometric fixed-point ring R_n: standard monomial basis, normal-form
//! multiplication, circuit relations.
//!
//! Ground truth is the rational model x_alpha -> 1/z_alpha with
//! z_alpha = sum of the u_i named by alpha's bits, inside F2[u_1..u_n]
//! localized at the arrangement. Standard monomials (echelon support,
//! exponents >= 1) form a basis in each degree; re-expressing a product is a
//! GF(2) linear solve over a common denominator, with the eliminated basis
//! columns cached per (rank, degree).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::charlattice::{enumerate_echelon_sets, is_echelon_independent, Character, IndexedSet};
use crate::{Error, Result};

/// A polynomial over F2 in u_1..u_r, as the set of its monomials. Exponent
/// vectors are packed 16 bits per variable into a u64 key (r <= 4).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct F2Poly {
    terms: BTreeSet<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly::default()
    }

    pub fn one() -> Self {
        F2Poly {
            terms: BTreeSet::from([0]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: u64) {
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn add(&self, other: &F2Poly) -> F2Poly {
        let mut out = self.clone();
        for &k in &other.terms {
            out.add_term(k);
        }
        out
    }

    /// The linear form z_alpha = sum of u_i over the set bits of alpha.
    pub fn linear_form(alpha: Character) -> F2Poly {
        assert!(!alpha.is_zero());
        let mut p = F2Poly::zero();
        for i in 0..alpha.rank() {
            if (alpha.bits() >> i) & 1 == 1 {
                p.add_term(1u64 << (16 * i));
            }
        }
        p
    }

    pub fn mul_linear(&self, alpha: Character) -> F2Poly {
        let mut out = F2Poly::zero();
        for i in 0..alpha.rank() {
            if (alpha.bits() >> i) & 1 == 1 {
                for &k in &self.terms {
                    out.add_term(k + (1u64 << (16 * i)));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        let mut out = F2Poly::zero();
        for &a in &self.terms {
            for &b in &other.terms {
                out.add_term(a + b);
            }
        }
        out
    }

    /// Iterates the packed exponent keys of the monomials present.
    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().copied()
    }

    fn leading(&self) -> Option<u64> {
        self.terms.iter().next_back().copied()
    }
}

/// A standard monomial: echelon-independent support with exponents >= 1. The
/// empty monomial is the ring unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StdMonomial {
    // sorted by character; every exponent >= 1
    factors: Vec<(Character, u32)>,
}

impl StdMonomial {
    pub fn new(factors: impl IntoIterator<Item = (Character, u32)>) -> Self {
        let mut factors: Vec<(Character, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort();
        let n = factors.first().map_or(0, |(c, _)| c.rank());
        let support = IndexedSet::new(n, factors.iter().map(|&(c, _)| c));
        assert_eq!(support.len(), factors.len(), "repeated characters in monomial");
        assert!(
            is_echelon_independent(&support),
            "support must be echelon-independent"
        );
        StdMonomial { factors }
    }

    pub fn one() -> Self {
        StdMonomial { factors: Vec::new() }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Character, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, alpha: Character) -> u32 {
        self.factors
            .iter()
            .find(|&&(c, _)| c == alpha)
            .map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for StdMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        // highest character first, matching the echelon reading order
        for (i, &(c, e)) in self.factors.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x[{c}]")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of R_n in the standard monomial basis; F2 coefficients, so just
/// a set of terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RingElement {
    terms: BTreeSet<StdMonomial>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::from_monomial(StdMonomial::one())
    }

    pub fn from_monomial(m: StdMonomial) -> Self {
        RingElement {
            terms: BTreeSet::from([m]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &StdMonomial> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: StdMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for t in &other.terms {
            out.add_term(t.clone());
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Image of a monomial in the rational model: numerator over powers of the
/// linear forms z_alpha.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalElement {
    pub numerator: F2Poly,
    pub denominator: BTreeMap<Character, u32>,
}

/// x_alpha -> 1/z_alpha, multiplicatively.
pub fn to_rational(m: &StdMonomial) -> RationalElement {
    RationalElement {
        numerator: F2Poly::one(),
        denominator: m.factors().iter().copied().collect(),
    }
}

fn nonzero_chars(r: u8) -> impl Iterator<Item = Character> {
    (1u32..(1 << r)).map(move |b| Character::new(b, r))
}

/// Numerator of a degree-d monomial (given by its exponents) over the degree
/// common denominator prod_alpha z_alpha^d.
fn common_numerator(r: u8, d: u32, exps: &BTreeMap<Character, u32>) -> F2Poly {
    let mut p = F2Poly::one();
    for alpha in nonzero_chars(r) {
        let e = exps.get(&alpha).copied().unwrap_or(0);
        debug_assert!(e <= d);
        for _ in 0..(d - e) {
            p = p.mul_linear(alpha);
        }
    }
    p
}

/// All standard monomials of degree d over rank-r characters, sorted.
pub fn enumerate_basis(r: u8, d: u32) -> Vec<StdMonomial> {
    if r == 0 {
        return if d == 0 { vec![StdMonomial::one()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for s in enumerate_echelon_sets(r) {
        let k = s.len();
        if k as u32 > d || (k == 0 && d > 0) {
            continue;
        }
        if k == 0 {
            out.push(StdMonomial::one());
            continue;
        }
        // compositions of d into k parts, each >= 1
        let mut parts = vec![0u32; k];
        fn rec(
            parts: &mut Vec<u32>,
            i: usize,
            remaining: u32,
            s: &IndexedSet,
            out: &mut Vec<StdMonomial>,
        ) {
            let k = parts.len();
            if i == k - 1 {
                parts[i] = remaining;
                out.push(StdMonomial::new(
                    s.chars().iter().copied().zip(parts.iter().copied()),
                ));
                return;
            }
            for v in 1..=remaining - (k - 1 - i) as u32 {
                parts[i] = v;
                rec(parts, i + 1, remaining - v, s, out);
            }
        }
        rec(&mut parts, 0, d, &s, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Number of standard monomials of degree d: sum over S in F_r of
/// C(d-1, |S|-1).
pub fn dim_degree(r: u8, d: u32) -> u64 {
    enumerate_basis(r, d).len() as u64
}

/// Cached eliminated conversion basis for one (rank, degree).
struct Solver {
    basis: Vec<StdMonomial>,
    // rows of the eliminated system: (pivot monomial key, reduced poly,
    // combination of original basis columns as a bitmask)
    rows: Vec<(u64, F2Poly, Vec<u64>)>,
    by_pivot: HashMap<u64, usize>,
}

impl Solver {
    fn build(r: u8, d: u32) -> Result<Solver> {
        let basis = enumerate_basis(r, d);
        let ncols = basis.len();
        let words = ncols.div_ceil(64);
        let mut rows: Vec<(u64, F2Poly, Vec<u64>)> = Vec::with_capacity(ncols);
        let mut by_pivot: HashMap<u64, usize> = HashMap::with_capacity(ncols);
        for (j, m) in basis.iter().enumerate() {
            let exps: BTreeMap<Character, u32> = m.factors().iter().copied().collect();
            let mut p = common_numerator(r, d, &exps);
            let mut combo = vec![0u64; words];
            combo[j / 64] |= 1 << (j % 64);
            reduce(&mut p, Some(&mut combo), &rows, &by_pivot);
            let Some(lead) = p.leading() else {
                // a dependent column would contradict the basis theorem
                return Err(Error::NormalFormFailure);
            };
            by_pivot.insert(lead, rows.len());
            rows.push((lead, p, combo));
        }
        Ok(Solver { basis, rows, by_pivot })
    }

    /// Expresses a numerator (over the degree-d common denominator) in the
    /// standard basis.
    fn solve(&self, mut target: F2Poly) -> Result<RingElement> {
        let words = self.basis.len().div_ceil(64);
        let mut combo = vec![0u64; words];
        reduce(&mut target, Some(&mut combo), &self.rows, &self.by_pivot);
        if !target.is_zero() {
            return Err(Error::NormalFormFailure);
        }
        let mut out = RingElement::zero();
        for (j, m) in self.basis.iter().enumerate() {
            if (combo[j / 64] >> (j % 64)) & 1 == 1 {
                out.add_term(m.clone());
            }
        }
        Ok(out)
    }
}

fn reduce(
    p: &mut F2Poly,
    mut combo: Option<&mut Vec<u64>>,
    rows: &[(u64, F2Poly, Vec<u64>)],
    by_pivot: &HashMap<u64, usize>,
) {
    loop {
        let Some(lead) = p.leading() else { return };
        let Some((_, q, c)) = by_pivot.get(&lead).map(|&i| &rows[i]) else {
            return;
        };
        *p = p.add(q);
        if let Some(combo) = combo.as_deref_mut() {
            for (w, cw) in combo.iter_mut().zip(c) {
                *w ^= cw;
            }
        }
    }
}

static SOLVERS: Lazy<Mutex<HashMap<(u8, u32), Arc<Solver>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn solver(r: u8, d: u32) -> Result<Arc<Solver>> {
    let mut cache = SOLVERS.lock().unwrap();
    if let Some(s) = cache.get(&(r, d)) {
        return Ok(Arc::clone(s));
    }
    let s = Arc::new(Solver::build(r, d)?);
    cache.insert((r, d), Arc::clone(&s));
    Ok(s)
}

/// Expresses an arbitrary monomial prod x_alpha^{e_alpha} (support need not
/// be echelon) in the standard basis.
pub fn express_monomial(r: u8, exps: &BTreeMap<Character, u32>) -> Result<RingElement> {
    let exps: BTreeMap<Character, u32> = exps.iter().filter(|&(_, &e)| e > 0).map(|(&c, &e)| (c, e)).collect();
    let d: u32 = exps.values().sum();
    if d == 0 {
        return Ok(RingElement::one());
    }
    let s = solver(r, d)?;
    s.solve(common_numerator(r, d, &exps))
}

/// Product in the standard monomial basis, termwise through the rational
/// model. Handles inhomogeneous inputs degree by degree.
pub fn multiply(r: u8, a: &RingElement, b: &RingElement) -> Result<RingElement> {
    // bucket the term-pair products by total degree, summing numerators
    let mut by_degree: BTreeMap<u32, F2Poly> = BTreeMap::new();
    for ta in a.terms() {
        for tb in b.terms() {
            let mut exps: BTreeMap<Character, u32> = ta.factors().iter().copied().collect();
            for &(c, e) in tb.factors() {
                *exps.entry(c).or_insert(0) += e;
            }
            let d: u32 = exps.values().sum();
            let num = common_numerator(r, d, &exps);
            let entry = by_degree.entry(d).or_insert_with(F2Poly::zero);
            *entry = entry.add(&num);
        }
    }
    let mut out = RingElement::zero();
    for (d, num) in by_degree {
        if num.is_zero() {
            continue;
        }
        let part = if d == 0 {
            RingElement::one()
        } else {
            solver(r, d)?.solve(num)?
        };
        out = out.add(&part);
    }
    Ok(out)
}

/// Checks sigma_{k-1}(x_{alpha_1}, ..., x_{alpha_k}) = 0 in the rational
/// model for a circuit C.
pub fn verify_circuit_relation(c: &IndexedSet) -> Result<bool> {
    let k = c.len();
    let xor = c.chars().iter().fold(0u32, |a, ch| a ^ ch.bits());
    let rank = crate::charlattice::Subgroup::from_generators(
        c.ambient_rank(),
        c.chars().iter().map(|ch| ch.bits()),
    )
    .rank();
    if k < 3 || xor != 0 || rank != k - 1 {
        return Err(Error::NotACircuit(format!("{c:?}")));
    }
    // sigma_{k-1} over the common denominator prod z_alpha: numerator is
    // sum_j z_{alpha_j}
    let mut num = F2Poly::zero();
    for ch in c.chars() {
        num = num.add(&F2Poly::linear_form(*ch));
    }
    Ok(num.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charlattice::circuits;
    use crate::series::phi_poincare;
    use proptest::prelude::*;

    fn ch(s: &str) -> Character {
        Character::parse(s, s.len() as u8).unwrap()
    }

    fn mono(factors: &[(&str, u32)]) -> StdMonomial {
        StdMonomial::new(factors.iter().map(|&(s, e)| (ch(s), e)))
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_basis(1, 3), vec![mono(&[("1", 3)])]);
        assert_eq!(
            enumerate_basis(2, 1),
            vec![mono(&[("10", 1)]), mono(&[("01", 1)]), mono(&[("11", 1)])]
        );
        let d2: BTreeSet<StdMonomial> = enumerate_basis(2, 2).into_iter().collect();
        let expected: BTreeSet<StdMonomial> = [
            mono(&[("10", 2)]),
            mono(&[("01", 2)]),
            mono(&[("11", 2)]),
            mono(&[("10", 1), ("01", 1)]),
            mono(&[("10", 1), ("11", 1)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(d2, expected);
        assert_eq!(enumerate_basis(0, 0), vec![StdMonomial::one()]);
        assert!(enumerate_basis(0, 1).is_empty());
    }

    #[test]
    fn dims_match_series() {
        assert_eq!(dim_degree(2, 2), 5);
        for n in 1..=4u8 {
            let p = phi_poincare(n);
            for d in 0..=12u32 {
                assert_eq!(
                    dim_degree(n, d),
                    u64::try_from(p.coeff(d as i64)).unwrap(),
                    "(n,d) = ({n},{d})"
                );
            }
        }
        assert_eq!(dim_degree(4, 1), 15);
    }

    #[test]
    fn to_rational_examples() {
        let m = mono(&[("10", 1)]);
        let r = to_rational(&m);
        assert_eq!(r.denominator, BTreeMap::from([(ch("10"), 1)]));
        let m = mono(&[("11", 2)]);
        assert_eq!(to_rational(&m).denominator, BTreeMap::from([(ch("11"), 2)]));
        assert!(to_rational(&StdMonomial::one()).denominator.is_empty());
    }

    #[test]
    fn multiply_rewrites_nonstandard_support() {
        // x_{01} * x_{11} = x_{10}x_{01} + x_{10}x_{11}
        let a = RingElement::from_monomial(mono(&[("01", 1)]));
        let b = RingElement::from_monomial(mono(&[("11", 1)]));
        let p = multiply(2, &a, &b).unwrap();
        let mut expected = RingElement::zero();
        expected.add_term(mono(&[("10", 1), ("01", 1)]));
        expected.add_term(mono(&[("10", 1), ("11", 1)]));
        assert_eq!(p, expected);
    }

    #[test]
    fn multiply_units_and_standard() {
        let one = RingElement::one();
        let xa = RingElement::from_monomial(mono(&[("10", 1)]));
        assert_eq!(multiply(2, &one, &xa).unwrap(), xa);
        let xb = RingElement::from_monomial(mono(&[("01", 1)]));
        let p = multiply(2, &xa, &xb).unwrap();
        assert_eq!(p, RingElement::from_monomial(mono(&[("10", 1), ("01", 1)])));
    }

    #[test]
    fn conversion_full_rank() {
        // solver construction fails if any degree's conversion matrix is
        // rank-deficient; exercise a spread of (r, d)
        for r in 1..=3u8 {
            for d in 0..=6u32 {
                assert!(solver(r, d.max(1)).is_ok(), "(r,d) = ({r},{d})");
            }
        }
    }

    #[test]
    fn circuit_relations_hold() {
        for n in 2..=3u8 {
            for c in circuits(n, 4) {
                assert!(verify_circuit_relation(&c).unwrap(), "{c:?}");
            }
        }
    }

    #[test]
    fn non_circuit_rejected() {
        let s = IndexedSet::new(2, [ch("10"), ch("01")]);
        assert!(matches!(
            verify_circuit_relation(&s),
            Err(Error::NotACircuit(_))
        ));
    }

    #[test]
    fn excluded_quadratic_relation_fails() {
        // x_a x_b + x_a x_c + x_b x_c + x_a^2 + x_b^2 + x_c^2 is NOT zero in
        // the rational model: its numerator over (z_a z_b z_c)^2 survives
        let chars = [ch("10"), ch("01"), ch("11")];
        let mut num = F2Poly::zero();
        for i in 0..3 {
            for j in (i + 1)..3 {
                // x_i x_j term: z_k^2 z_i z_j with k the remaining index
                let k = 3 - i - j;
                let mut p = F2Poly::one();
                p = p.mul_linear(chars[k]).mul_linear(chars[k]);
                p = p.mul_linear(chars[i]).mul_linear(chars[j]);
                num = num.add(&p);
            }
        }
        for i in 0..3 {
            // x_i^2 term: z_j^2 z_k^2
            let mut p = F2Poly::one();
            for j in 0..3 {
                if j != i {
                    p = p.mul_linear(chars[j]).mul_linear(chars[j]);
                }
            }
            num = num.add(&p);
        }
        assert!(!num.is_zero());

        // while the genuine circuit relation's numerator does vanish
        let sigma: F2Poly = chars
            .iter()
            .fold(F2Poly::zero(), |acc, &c| acc.add(&F2Poly::linear_form(c)));
        assert!(sigma.is_zero());
    }

    #[test]
    fn display_format() {
        assert_eq!(mono(&[("101", 2), ("100", 1)]).to_string(), "x[101]^2*x[100]");
        assert_eq!(StdMonomial::one().to_string(), "1");
    }

    fn arb_element(r: u8, max_deg: u32) -> impl Strategy<Value = RingElement> {
        let basis: Vec<StdMonomial> = (0..=max_deg).flat_map(|d| enumerate_basis(r, d)).collect();
        proptest::collection::vec(0..basis.len(), 0..4).prop_map(move |idx| {
            let mut e = RingElement::zero();
            for i in idx {
                e.add_term(basis[i].clone());
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn multiply_commutative_associative(a in arb_element(2, 2), b in arb_element(2, 2), c in arb_element(2, 2)) {
            let ab = multiply(2, &a, &b).unwrap();
            let ba = multiply(2, &b, &a).unwrap();
            prop_assert_eq!(&ab, &ba);
            let ab_c = multiply(2, &ab, &c).unwrap();
            let bc = multiply(2, &b, &c).unwrap();
            let a_bc = multiply(2, &a, &bc).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn multiply_distributes(a in arb_element(3, 2), b in arb_element(3, 2), c in arb_element(3, 2)) {
            let left = multiply(3, &a, &b.add(&c)).unwrap();
            let right = multiply(3, &a, &b).unwrap().add(&multiply(3, &a, &c).unwrap());
            prop_assert_eq!(left, right);
        }
    }
}
