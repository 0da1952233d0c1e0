//! Combinatorics of G = (Z/2)^n and its character group.
//!
//! Characters and group elements share one bit-vector encoding: bit `i`
//! (0-based) is the coefficient of coordinate `i + 1`, and the pairing
//! `alpha(g)` is the parity of `alpha & g`. All echelon conventions scan
//! coordinate `n` first ("reversed order of columns"), so the pivot of a
//! vector is its highest set bit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::f2linalg::{homology_dim, F2Matrix};
use crate::{Error, Result};

/// A character of (Z/2)^n, or equally a group element, as an n-bit vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    bits: u32,
    n: u8,
}

impl Character {
    pub fn new(bits: u32, n: u8) -> Self {
        debug_assert!(n as u32 <= 31 && bits < (1 << n));
        Character { bits, n }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Character addition (bitwise XOR).
    pub fn plus(&self, other: &Character) -> Character {
        debug_assert_eq!(self.n, other.n);
        Character::new(self.bits ^ other.bits, self.n)
    }

    /// Evaluation pairing: parity of the AND of the two bit vectors.
    pub fn eval(&self, g: u32) -> bool {
        (self.bits & g).count_ones() % 2 == 1
    }

    /// Highest set coordinate (0-based); the pivot under the reversed column
    /// convention. Panics on the zero character.
    pub fn pivot(&self) -> u8 {
        assert!(self.bits != 0, "zero character has no pivot");
        (31 - self.bits.leading_zeros()) as u8
    }

    /// Parses the bit-string format: leftmost char is coordinate 1.
    pub fn parse(s: &str, n: u8) -> Result<Character> {
        if s.len() != n as usize {
            return Err(Error::Parse(format!(
                "character \"{s}\" has length {}, expected {n}",
                s.len()
            )));
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return Err(Error::Parse(format!("bad digit '{c}' in character \"{s}\""))),
            }
        }
        Ok(Character::new(bits, n))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Reduces a list of bit vectors to a canonical reduced echelon basis,
/// sorted by descending pivot (coordinate n scanned first).
pub fn reduced_echelon_basis(vectors: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new(); // kept sorted by descending pivot
    for mut v in vectors {
        for &b in basis.iter() {
            let p = 31 - b.leading_zeros();
            if (v >> p) & 1 == 1 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let pv = 31 - v.leading_zeros();
        // clear the new pivot from existing rows, then insert in order
        for b in basis.iter_mut() {
            if (*b >> pv) & 1 == 1 {
                *b ^= v;
            }
        }
        let pos = basis
            .iter()
            .position(|&b| (31 - b.leading_zeros()) < pv)
            .unwrap_or(basis.len());
        basis.insert(pos, v);
    }
    basis
}

fn rank_of(vectors: impl IntoIterator<Item = u32>) -> usize {
    reduced_echelon_basis(vectors).len()
}

/// A subgroup of (Z/2)^n in canonical form: a reduced echelon basis sorted by
/// descending pivot. Equality of subgroups is equality of the basis lists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    n: u8,
    basis: Vec<u32>,
}

impl Subgroup {
    pub fn from_generators(n: u8, gens: impl IntoIterator<Item = u32>) -> Self {
        Subgroup {
            n,
            basis: reduced_echelon_basis(gens),
        }
    }

    pub fn trivial(n: u8) -> Self {
        Subgroup { n, basis: Vec::new() }
    }

    pub fn full(n: u8) -> Self {
        Subgroup::from_generators(n, (0..n).map(|i| 1u32 << i))
    }

    pub fn ambient_rank(&self) -> u8 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn corank(&self) -> usize {
        self.n as usize - self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, v: u32) -> bool {
        let mut w = v;
        for &b in &self.basis {
            let p = 31 - b.leading_zeros();
            if (w >> p) & 1 == 1 {
                w ^= b;
            }
        }
        w == 0
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// All elements of the subgroup.
    pub fn members(&self) -> Vec<u32> {
        let k = self.basis.len();
        (0..1u32 << k)
            .map(|mask| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .fold(0, |acc, (_, &b)| acc ^ b)
            })
            .collect()
    }

    /// Echelon basis of the space of characters vanishing on this subgroup,
    /// i.e. of (G/A)*, sorted by descending pivot.
    pub fn vanishing_characters_basis(&self) -> Vec<Character> {
        let n = self.n as usize;
        // rows = basis vectors, cols = coordinates; kernel of the pairing
        let mut m = F2Matrix::zeros(self.basis.len(), n);
        for (r, &b) in self.basis.iter().enumerate() {
            for c in 0..n {
                if (b >> c) & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        let mut kernel: Vec<u32> = m
            .kernel_basis()
            .iter()
            .map(|v| v.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i)))
            .collect();
        kernel = reduced_echelon_basis(kernel);
        kernel.into_iter().map(|b| Character::new(b, self.n)).collect()
    }

    /// Restriction of a character of G to this subgroup, in the subgroup's
    /// own coordinates. Coordinate bit i pairs with the basis vector of the
    /// (i+1)-th smallest pivot, so for the full group the coordinates are
    /// the ambient ones.
    pub fn restrict(&self, gamma: Character) -> Character {
        debug_assert_eq!(gamma.rank(), self.n);
        let r = self.basis.len();
        let mut bits = 0u32;
        for (i, &a) in self.basis.iter().enumerate() {
            if gamma.eval(a) {
                bits |= 1 << (r - 1 - i);
            }
        }
        Character::new(bits, r as u8)
    }

    /// Coordinates of a member g over the canonical basis, indexed as in
    /// [`Subgroup::restrict`]. Because the basis is reduced echelon, the
    /// coefficient of a basis vector is just g's bit at that vector's pivot.
    pub fn coords_of(&self, g: u32) -> u32 {
        debug_assert!(self.contains(g));
        let r = self.basis.len();
        self.basis
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| {
                let p = 31 - b.leading_zeros();
                acc | (((g >> p) & 1) << (r - 1 - i))
            })
    }

    /// Index-2 subgroups of this subgroup, in canonical enumeration order.
    pub fn index_two_subgroups(&self) -> Vec<Subgroup> {
        let s = self.rank();
        if s == 0 {
            return Vec::new();
        }
        let members = self.members();
        let mut out = BTreeSet::new();
        // a hyperplane of A = kernel of a nonzero functional on A
        for f in 1u32..(1 << s) {
            let gens = members.iter().copied().filter(|&g| {
                let coords: u32 = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| u32::from(Subgroup::coeff(g, &self.basis, i, b)))
                    .enumerate()
                    .fold(0, |acc, (i, v)| acc | (v << i));
                (coords & f).count_ones() % 2 == 0
            });
            out.insert(Subgroup::from_generators(self.n, gens));
        }
        out.into_iter().collect()
    }

    // coefficient of basis vector i in g (reduced echelon basis: coefficient
    // is just the pivot coordinate of g)
    fn coeff(g: u32, _basis: &[u32], _i: usize, b: u32) -> bool {
        let p = 31 - b.leading_zeros();
        (g >> p) & 1 == 1
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, &b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Character::new(b, self.n))?;
        }
        write!(f, ">")
    }
}

/// Gaussian binomial coefficient [n choose k] base 2: the number of
/// k-dimensional subspaces of (Z/2)^n.
pub fn gaussian_binomial(n: u32, k: u32) -> u128 {
    assert!(k <= n);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    num / den
}

/// All subgroups of (Z/2)^n of rank k, each in canonical form, enumerated in
/// canonical (sorted) order by direct construction of reduced echelon bases.
pub fn enumerate_subgroups(n: u8, k: usize) -> Vec<Subgroup> {
    assert!(k <= n as usize);
    let mut out = Vec::new();
    // choose the descending pivot set, then fill free coordinates
    let pivot_sets = combinations(n as usize, k);
    for pivots in pivot_sets {
        let mut pivots_desc: Vec<usize> = pivots.clone();
        pivots_desc.sort_unstable_by(|a, b| b.cmp(a));
        // free positions for row i: coordinates below its pivot that are not pivots
        let free: Vec<Vec<usize>> = pivots_desc
            .iter()
            .map(|&p| (0..p).filter(|q| !pivots_desc.contains(q)).collect())
            .collect();
        let total: usize = free.iter().map(|f| 1usize << f.len()).product();
        for mut code in 0..total {
            let mut basis = Vec::with_capacity(k);
            for (i, &p) in pivots_desc.iter().enumerate() {
                let nf = free[i].len();
                let sel = code & ((1 << nf) - 1);
                code >>= nf;
                let mut v = 1u32 << p;
                for (j, &q) in free[i].iter().enumerate() {
                    if (sel >> j) & 1 == 1 {
                        v |= 1 << q;
                    }
                }
                basis.push(v);
            }
            out.push(Subgroup { n, basis });
        }
    }
    out.sort();
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A finite set of nonzero characters, the candidate support of a standard
/// monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexedSet {
    n: u8,
    chars: Vec<Character>, // sorted, distinct
}

impl IndexedSet {
    pub fn new(n: u8, chars: impl IntoIterator<Item = Character>) -> Self {
        let mut chars: Vec<Character> = chars.into_iter().collect();
        chars.sort();
        chars.dedup();
        assert!(chars.iter().all(|c| !c.is_zero() && c.rank() == n));
        IndexedSet { n, chars }
    }

    pub fn empty(n: u8) -> Self {
        IndexedSet { n, chars: Vec::new() }
    }

    pub fn ambient_rank(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }
}

impl fmt::Debug for IndexedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.chars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Whether S lies in the echelon family F_n: nonzero characters with pairwise
/// distinct pivots. Sorted by descending pivot such a set is in (not
/// necessarily reduced) row echelon form with respect to the reversed column
/// order, and conversely.
pub fn is_echelon_independent(s: &IndexedSet) -> bool {
    let mut seen = 0u32;
    for c in s.chars() {
        let p = c.pivot();
        if (seen >> p) & 1 == 1 {
            return false;
        }
        seen |= 1 << p;
    }
    true
}

/// The family F_n, built by the defining recursion: F_1 = {{}, {1}} and
/// F_n = F_{n-1} plus every F_{n-1} set extended by one vector with top
/// coordinate set.
pub fn enumerate_echelon_sets(n: u8) -> Vec<IndexedSet> {
    assert!(n >= 1);
    let mut family: Vec<Vec<u32>> = vec![vec![], vec![1]];
    for level in 2..=n {
        let top = 1u32 << (level - 1);
        let mut next = family.clone();
        for s in &family {
            for low in 0..top {
                let mut t = s.clone();
                t.push(top | low);
                next.push(t);
            }
        }
        family = next;
    }
    family
        .into_iter()
        .map(|s| IndexedSet::new(n, s.into_iter().map(|b| Character::new(b, n))))
        .collect()
}

/// Homology dimensions of the complex (Q_n, d) with d(y_S) summing over the
/// span-preserving single-element deletions, graded by |S| and computed block
/// by block over the span of S.
pub fn q_complex_homology(n: u8) -> Result<BTreeMap<usize, usize>> {
    if n == 0 || n > 4 {
        return Err(Error::SizeLimit(format!(
            "q_complex_homology supports 1 <= n <= 4, got {n}"
        )));
    }
    let num_chars = (1usize << n) - 1; // nonzero characters are 1..=num_chars
    let num_masks = 1usize << num_chars;

    // span of a subset mask, as the sorted member list of the subspace
    let span_key = |mask: usize| -> Vec<u32> {
        let gens = (0..num_chars).filter(|i| (mask >> i) & 1 == 1).map(|i| (i + 1) as u32);
        let sub = Subgroup::from_generators(n, gens);
        let mut m = sub.members();
        m.sort_unstable();
        m
    };

    let mut blocks: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for mask in 0..num_masks {
        blocks.entry(span_key(mask)).or_default().push(mask);
    }

    let mut result: BTreeMap<usize, usize> = BTreeMap::new();
    for (_span, masks) in blocks {
        // index masks by cardinality
        let mut by_card: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &m in &masks {
            by_card.entry(m.count_ones() as usize).or_default().push(m);
        }
        let max_card = by_card.keys().max().copied().unwrap_or(0);
        let index: BTreeMap<usize, BTreeMap<usize, usize>> = by_card
            .iter()
            .map(|(&p, v)| (p, v.iter().enumerate().map(|(i, &m)| (m, i)).collect()))
            .collect();

        // boundary from cardinality p to p-1 within the block
        let boundary = |p: usize| -> F2Matrix {
            let src = by_card.get(&p).map_or(&[][..], |v| &v[..]);
            let tgt_index = index.get(&(p.wrapping_sub(1)));
            let tgt_len = tgt_index.map_or(0, |m| m.len());
            let mut d = F2Matrix::zeros(tgt_len, src.len());
            let (Some(tgt_index), false) = (tgt_index, p == 0) else {
                return d;
            };
            for (c, &mask) in src.iter().enumerate() {
                for i in 0..num_chars {
                    if (mask >> i) & 1 == 0 {
                        continue;
                    }
                    let sub = mask & !(1 << i);
                    if span_key(sub) == span_key(mask) {
                        let r = tgt_index[&sub];
                        d.set(r, c, true);
                    }
                }
            }
            d
        };

        for (&p, v) in &by_card {
            let d_in = if p < max_card { boundary(p + 1) } else { F2Matrix::zeros(v.len(), 0) };
            let d_out = boundary(p);
            let h = homology_dim(&d_in, &d_out)?;
            if h > 0 {
                *result.entry(p).or_insert(0) += h;
            }
        }
    }
    Ok(result)
}

/// All circuits (minimal Z/2-linearly dependent subsets of the nonzero
/// characters) of size at most `max_size`. A set is a circuit exactly when
/// its XOR-sum vanishes and its rank is one less than its size.
pub fn circuits(n: u8, max_size: usize) -> Vec<IndexedSet> {
    assert!(max_size >= 3);
    let num_chars = (1usize << n) - 1;
    let mut out = Vec::new();
    for k in 3..=max_size.min(num_chars) {
        for combo in combinations(num_chars, k) {
            let vals: Vec<u32> = combo.iter().map(|&i| (i + 1) as u32).collect();
            let xor = vals.iter().fold(0u32, |a, &b| a ^ b);
            if xor == 0 && rank_of(vals.iter().copied()) == k - 1 {
                out.push(IndexedSet::new(n, vals.into_iter().map(|b| Character::new(b, n))));
            }
        }
    }
    out
}

/// Which complement to use when building a retraction G -> A.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplittingConvention {
    /// Complement spanned by the standard basis vectors at the non-pivot
    /// coordinates of A's echelon basis.
    Pivot,
    /// Deterministic alternative: the lexicographically-last complement in
    /// canonical form. Exists so splitting-independence is testable.
    Alt,
}

impl SplittingConvention {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pivot" => Ok(SplittingConvention::Pivot),
            "alt" => Ok(SplittingConvention::Alt),
            _ => Err(Error::Parse(format!("unknown splitting convention \"{s}\""))),
        }
    }
}

/// A retraction r: G -> A together with the chosen complement.
///
/// The retraction is stored as one functional per basis vector of A:
/// `r(g) = sum_i c_i(g) a_i`, so the extension of a character `beta` of A is
/// `sum_i beta(a_i) c_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Splitting {
    subgroup: Subgroup,
    functionals: Vec<u32>,
    complement_basis: Vec<u32>,
}

impl Splitting {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn complement_basis(&self) -> &[u32] {
        &self.complement_basis
    }

    /// Applies the retraction.
    pub fn retract(&self, g: u32) -> u32 {
        self.subgroup
            .basis()
            .iter()
            .zip(&self.functionals)
            .fold(0u32, |acc, (&a, &c)| {
                if (c & g).count_ones() % 2 == 1 {
                    acc ^ a
                } else {
                    acc
                }
            })
    }

    /// Extension of a character of A (in A's own coordinates, see
    /// [`Subgroup::restrict`]) to a character of G through the retraction.
    pub fn extend(&self, beta: Character) -> Character {
        let r = self.subgroup.rank();
        debug_assert_eq!(beta.rank() as usize, r);
        let bits = self
            .functionals
            .iter()
            .enumerate()
            .filter(|(i, _)| (beta.bits() >> (r - 1 - i)) & 1 == 1)
            .fold(0u32, |acc, (_, &c)| acc ^ c);
        Character::new(bits, self.subgroup.ambient_rank())
    }
}

/// Builds a splitting for A under the given convention.
pub fn splitting_for(a: &Subgroup, convention: SplittingConvention) -> Splitting {
    let n = a.ambient_rank();
    let k = a.rank();
    let complement_basis: Vec<u32> = match convention {
        SplittingConvention::Pivot => {
            let pivot_mask: u32 = a.basis().iter().map(|&b| 1u32 << (31 - b.leading_zeros())).sum();
            (0..n).map(|i| 1u32 << i).filter(|b| b & pivot_mask == 0).collect()
        }
        SplittingConvention::Alt => {
            // lexicographically-last canonical complement basis
            enumerate_subgroups(n, n as usize - k)
                .into_iter()
                .filter(|c| {
                    c.basis().iter().all(|&v| v != 0)
                        && rank_of(a.basis().iter().chain(c.basis()).copied()) == n as usize
                })
                .map(|c| c.basis().to_vec())
                .max()
                .expect("complement always exists")
        }
    };
    // solve for the retraction functionals: rows of the inverse of
    // [a_1 .. a_k | c_1 .. c_{n-k}] as a coordinate-change matrix
    let cols: Vec<u32> = a.basis().iter().chain(&complement_basis).copied().collect();
    let nn = n as usize;
    let mut m = F2Matrix::zeros(nn, nn + nn);
    for (j, &v) in cols.iter().enumerate() {
        for i in 0..nn {
            if (v >> i) & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    for i in 0..nn {
        m.set(i, nn + i, true);
    }
    let (r, pivots, rank) = m.rref_with_order(&(0..2 * nn).collect::<Vec<_>>());
    assert_eq!(rank, nn, "basis + complement must span");
    assert!(pivots.iter().all(|&p| p < nn), "left block must carry all pivots");
    // row i of the right half is the functional extracting coordinate i
    let functionals: Vec<u32> = (0..k)
        .map(|i| (0..nn).fold(0u32, |acc, j| acc | (u32::from(r.get(i, nn + j)) << j)))
        .collect();
    Splitting {
        subgroup: a.clone(),
        functionals,
        complement_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Character {
        Character::parse(s, s.len() as u8).unwrap()
    }

    #[test]
    fn character_parse_and_display() {
        let c = ch("101");
        assert_eq!(c.bits(), 0b101);
        assert_eq!(c.to_string(), "101");
        assert!(Character::parse("10x", 3).is_err());
        assert!(Character::parse("10", 3).is_err());
    }

    #[test]
    fn pairing_examples() {
        assert!(ch("11").eval(0b01));
        assert!(!ch("11").eval(0b11));
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1), 3);
        assert_eq!(gaussian_binomial(3, 1), 7);
        assert_eq!(gaussian_binomial(3, 2), 7);
        assert_eq!(gaussian_binomial(4, 2), 35);
    }

    #[test]
    fn subgroup_enumeration_counts() {
        assert_eq!(enumerate_subgroups(2, 1).len(), 3);
        assert_eq!(enumerate_subgroups(3, 2).len(), 7);
        assert_eq!(enumerate_subgroups(4, 2).len(), 35);
        for n in 1..=4u8 {
            for k in 0..=n as usize {
                assert_eq!(
                    enumerate_subgroups(n, k).len() as u128,
                    gaussian_binomial(n as u32, k as u32),
                    "count mismatch at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn subgroup_enumeration_matches_brute_force() {
        // brute force: distinct spans of all subsets of F2^4
        let n = 4u8;
        let mut spans = BTreeSet::new();
        for mask in 0u32..(1 << 15) {
            let gens = (0..15).filter(|i| (mask >> i) & 1 == 1).map(|i| i + 1);
            let s = Subgroup::from_generators(n, gens);
            if s.rank() == 2 {
                spans.insert(s);
            }
        }
        assert_eq!(spans.len(), 35);
        let enumerated: BTreeSet<Subgroup> = enumerate_subgroups(n, 2).into_iter().collect();
        assert_eq!(spans, enumerated);
    }

    #[test]
    fn echelon_predicate() {
        let n = 2;
        let s = IndexedSet::new(n, [ch("10"), ch("01")]);
        assert!(is_echelon_independent(&s));
        let s = IndexedSet::new(n, [ch("01"), ch("11")]);
        assert!(!is_echelon_independent(&s));
        assert!(is_echelon_independent(&IndexedSet::empty(n)));
    }

    #[test]
    fn echelon_family_counts() {
        assert_eq!(enumerate_echelon_sets(1).len(), 2);
        let f2 = enumerate_echelon_sets(2);
        assert_eq!(f2.len(), 6);
        let expected: BTreeSet<IndexedSet> = [
            IndexedSet::empty(2),
            IndexedSet::new(2, [ch("10")]),
            IndexedSet::new(2, [ch("01")]),
            IndexedSet::new(2, [ch("11")]),
            IndexedSet::new(2, [ch("10"), ch("01")]),
            IndexedSet::new(2, [ch("10"), ch("11")]),
        ]
        .into_iter()
        .collect();
        assert_eq!(f2.into_iter().collect::<BTreeSet<_>>(), expected);
        assert_eq!(enumerate_echelon_sets(3).len(), 30);
        assert_eq!(enumerate_echelon_sets(4).len(), 270);
    }

    #[test]
    fn echelon_family_satisfies_predicate_and_recursion_count() {
        for n in 1..=4u8 {
            let f = enumerate_echelon_sets(n);
            assert!(f.iter().all(is_echelon_independent));
            if n > 1 {
                let prev = enumerate_echelon_sets(n - 1).len();
                assert_eq!(f.len(), prev * ((1 << (n - 1)) + 1));
            }
        }
    }

    #[test]
    fn q_homology_small() {
        assert_eq!(
            q_complex_homology(1).unwrap(),
            BTreeMap::from([(0, 1), (1, 1)])
        );
        assert_eq!(
            q_complex_homology(2).unwrap(),
            BTreeMap::from([(0, 1), (1, 3), (2, 2)])
        );
        assert_eq!(
            q_complex_homology(3).unwrap(),
            BTreeMap::from([(0, 1), (1, 7), (2, 14), (3, 8)])
        );
        assert!(matches!(q_complex_homology(5), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn q_homology_matches_echelon_counts() {
        for n in 1..=3u8 {
            let h = q_complex_homology(n).unwrap();
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for s in enumerate_echelon_sets(n) {
                *counts.entry(s.len()).or_insert(0) += 1;
            }
            assert_eq!(h, counts, "n = {n}");
        }
    }

    #[test]
    fn circuit_enumeration() {
        let c2 = circuits(2, 3);
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0], IndexedSet::new(2, [ch("10"), ch("01"), ch("11")]));

        let c3 = circuits(3, 3);
        assert_eq!(c3.len(), 7, "one size-3 circuit per 2-dim subspace");

        let c34 = circuits(3, 4);
        let quad = IndexedSet::new(3, [ch("100"), ch("010"), ch("001"), ch("111")]);
        assert!(c34.contains(&quad));
    }

    #[test]
    fn splitting_pivot_examples() {
        // A = span{(1,0)} in F2^2: retraction kills the second coordinate
        let a = Subgroup::from_generators(2, [0b01]);
        let s = splitting_for(&a, SplittingConvention::Pivot);
        assert_eq!(s.retract(0b01), 0b01);
        assert_eq!(s.retract(0b11), 0b01);
        assert_eq!(s.retract(0b10), 0);

        // A = G: identity retraction
        let g = Subgroup::full(3);
        let s = splitting_for(&g, SplittingConvention::Pivot);
        for v in 0..8u32 {
            assert_eq!(s.retract(v), v);
        }

        // A = 0: zero map
        let t = Subgroup::trivial(3);
        let s = splitting_for(&t, SplittingConvention::Pivot);
        assert_eq!(s.retract(0b101), 0);
    }

    #[test]
    fn splitting_is_retraction_both_conventions() {
        for n in 1..=4u8 {
            for k in 0..=n as usize {
                for a in enumerate_subgroups(n, k) {
                    for conv in [SplittingConvention::Pivot, SplittingConvention::Alt] {
                        let s = splitting_for(&a, conv);
                        for &m in &a.members() {
                            assert_eq!(s.retract(m), m, "r restricted to A must be identity");
                        }
                        for &c in s.complement_basis() {
                            assert_eq!(s.retract(c), 0, "complement must map to zero");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extension_restricts_back() {
        for n in 2..=3u8 {
            for k in 1..=n as usize {
                for a in enumerate_subgroups(n, k) {
                    for conv in [SplittingConvention::Pivot, SplittingConvention::Alt] {
                        let s = splitting_for(&a, conv);
                        for beta_bits in 0..(1u32 << k) {
                            let beta = Character::new(beta_bits, k as u8);
                            let ext = s.extend(beta);
                            assert_eq!(a.restrict(ext), beta);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_characters() {
        let a = Subgroup::from_generators(2, [0b10]); // ker(b) = {(g1, 0)}... here span{(0,1)}
        let v = a.vanishing_characters_basis();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].bits(), 0b01);
        // trivial subgroup: everything vanishes
        assert_eq!(Subgroup::trivial(3).vanishing_characters_basis().len(), 3);
        assert_eq!(Subgroup::full(3).vanishing_characters_basis().len(), 0);
    }

    #[test]
    fn index_two_subgroups_of_full() {
        let g = Subgroup::full(3);
        let subs = g.index_two_subgroups();
        assert_eq!(subs.len(), 7);
        for s in &subs {
            assert_eq!(s.rank(), 2);
            assert!(s.is_subgroup_of(&g));
        }
    }
}
