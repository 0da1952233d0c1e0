//! Column modules gr_A of the coefficient complex.
//!
//! A column for a subgroup A, in a fixed virtual degree, is spanned by
//! classes r * y^{-a}: a standard monomial r of the fixed-point ring R_A
//! (written in A's own coordinates) times inverse powers of the y-variables
//! indexed by the echelon basis of the characters vanishing on A. The class
//! stores a >= 0 ("shifted" exponents, bottom class a = 0) and has module
//! degree deg(r) + sum(a_i + 1). The invertible classes that the degree
//! bookkeeping would otherwise drag around are absorbed into `offset`.

use std::collections::BTreeMap;
use std::fmt;

use crate::charlattice::{Character, Splitting, Subgroup};
use crate::phiring::{enumerate_basis, StdMonomial};

/// An RO(G) degree t + sum m_alpha * alpha.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VirtualDegree {
    pub t: i64,
    pub m: BTreeMap<Character, i64>,
}

impl VirtualDegree {
    pub fn new(t: i64, m: BTreeMap<Character, i64>) -> Self {
        assert!(m.keys().all(|c| !c.is_zero()));
        VirtualDegree { t, m }
    }

    pub fn m_of(&self, alpha: Character) -> i64 {
        self.m.get(&alpha).copied().unwrap_or(0)
    }
}

/// Sum of m_alpha over the nonzero characters vanishing on A: the integer
/// degree shift absorbed by the invertible classes of the column.
pub fn offset(a: &Subgroup, m: &BTreeMap<Character, i64>) -> i64 {
    m.iter()
        .filter(|(alpha, _)| a.members().iter().all(|&g| !alpha.eval(g)))
        .map(|(_, &v)| v)
        .sum()
}

/// A basis class of a column: r * y^{-a} with r a standard monomial of R_A in
/// A's own coordinates and a indexed by the echelon basis of (G/A)*.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GrClass {
    pub r: StdMonomial,
    pub a: Vec<u32>,
}

impl GrClass {
    pub fn degree(&self) -> i64 {
        self.r.degree() as i64 + self.a.iter().map(|&ai| ai as i64 + 1).sum::<i64>()
    }
}

impl fmt::Display for GrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}; a={:?}", self.r, self.a)
    }
}

/// Everything a column needs: the subgroup, its splitting, and the chosen
/// y-basis (echelon basis of the characters vanishing on A).
#[derive(Clone, Debug)]
pub struct Column {
    pub splitting: Splitting,
    pub y_basis: Vec<Character>,
}

impl Column {
    pub fn new(splitting: Splitting) -> Self {
        let y_basis = splitting.subgroup().vanishing_characters_basis();
        Column { splitting, y_basis }
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.splitting.subgroup()
    }

    pub fn corank(&self) -> usize {
        self.y_basis.len()
    }
}

/// All classes of the column in the given virtual degree, sorted. The module
/// degree is t - offset(A, m).
pub fn column_basis(col: &Column, deg: &VirtualDegree) -> Vec<GrClass> {
    let a_sub = col.subgroup();
    let rank = a_sub.rank() as u8;
    let k = col.corank();
    let delta = deg.t - offset(a_sub, &deg.m);
    let mut out = Vec::new();
    if delta < k as i64 {
        return out;
    }
    // deg(r) + sum(a_i + 1) = delta, with sum(a_i + 1) >= k
    for dr in 0..=(delta - k as i64) {
        let rest = (delta - dr) as u32;
        for r in enumerate_basis(rank, dr as u32) {
            let mut a = vec![0u32; k];
            push_compositions(&mut a, 0, rest, &r, &mut out);
        }
    }
    out.sort();
    out
}

// all a with sum(a_i + 1) = rest; k = a.len() components
fn push_compositions(a: &mut Vec<u32>, i: usize, rest: u32, r: &StdMonomial, out: &mut Vec<GrClass>) {
    let k = a.len();
    if k == 0 {
        if rest == 0 {
            out.push(GrClass { r: r.clone(), a: a.clone() });
        }
        return;
    }
    if i == k - 1 {
        // last component: a_i + 1 = rest
        if rest >= 1 {
            a[i] = rest - 1;
            out.push(GrClass { r: r.clone(), a: a.clone() });
        }
        return;
    }
    for v in 0..=(rest.saturating_sub(k as u32 - i as u32)) {
        a[i] = v;
        push_compositions(a, i + 1, rest - v - 1, r, out);
    }
}

/// The change-of-splitting series x_{beta~+alpha} = sum x_{beta~}^{k+1}
/// y_alpha^k, truncated: returns the (x-exponent, y-exponent) pairs.
pub fn change_of_splitting_expand(cap: u32) -> Vec<(u32, u32)> {
    (0..=cap).map(|k| (k + 1, k)).collect()
}

/// Multiplies a class by the y-monomial with the given exponents over the
/// column's y-basis (the Cech-quotient action): exponents are subtracted
/// from a; any component falling below zero kills the class.
pub fn act_monomial(w: &[i64], target: &GrClass) -> Option<GrClass> {
    debug_assert_eq!(w.len(), target.a.len());
    let mut a = Vec::with_capacity(w.len());
    for (&wi, &ai) in w.iter().zip(&target.a) {
        let shifted = ai as i64 - wi;
        if shifted < 0 {
            return None;
        }
        a.push(shifted as u32);
    }
    Some(GrClass {
        r: target.r.clone(),
        a,
    })
}
