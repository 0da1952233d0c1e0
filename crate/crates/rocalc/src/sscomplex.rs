//! The n-stage coefficient complex at a fixed virtual degree.
//!
//! Columns are indexed by corank; the differential from the column of A to
//! the column of an index-2 subgroup B substitutes x_{beta~} -> y_{beta~}^{-1},
//! multiplies by the suspension-discrepancy y-monomial, and rewrites the
//! remaining x-variables through the change-of-splitting series. The result
//! is a local-cohomology symbol over the mixed generator system (A's y-basis
//! plus the distinguished character), which is finally rewritten over B's
//! echelon y-basis through the canonical change of generators. Homology of
//! the resulting complex is the answer: the complex collapses, so no higher
//! differentials are ever needed.
//!
//! Two gradings appear. Internally (columns, differential, Euler checks) a
//! class in the column of A at degree t has module degree t - offset(A, m);
//! in this grading the alternating sum of column dimensions reproduces the
//! closed-form alternating series termwise. The *reported* RO(G) degree of a
//! corank-k homology class is the internal degree minus k (the vertex
//! suspensions), which is what [`coefficients`] returns.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::charlattice::{
    enumerate_subgroups, splitting_for, Character, SplittingConvention, Subgroup,
};
use crate::f2linalg::{homology_dim, F2Matrix};
use crate::grmod::{column_basis, offset, Column, GrClass, VirtualDegree};
use crate::phiring::{express_monomial, F2Poly};
use crate::series::{expand, n2_series, suspension_poincare, formal_alternating_sum, RationalSeries};
use crate::{Error, Result};

fn check_guards(n: u8, deg: &VirtualDegree) -> Result<()> {
    if n == 0 || n > 4 {
        return Err(Error::SizeLimit(format!("n must be 1..=4, got {n}")));
    }
    if deg.t.abs() > 64 {
        return Err(Error::SizeLimit(format!("|t| <= 64 required, got {}", deg.t)));
    }
    for (c, &v) in &deg.m {
        if v.abs() > 32 {
            return Err(Error::SizeLimit(format!("|m_{c}| <= 32 required, got {v}")));
        }
    }
    Ok(())
}

/// One working term during the differential expansion: an x-monomial in B's
/// own coordinates and signed y-exponents over the mixed generator system
/// (A's y-basis followed by the distinguished character).
type Term = (BTreeMap<Character, u32>, Vec<i64>);

/// Coordinates in the span of an arbitrary independent list of characters,
/// tracked as a bitmask over the original list.
struct SpanSolver {
    rows: Vec<(u32, u32)>,
}

impl SpanSolver {
    fn new(chars: &[Character]) -> Self {
        let mut rows: Vec<(u32, u32)> = Vec::new();
        for (l, ch) in chars.iter().enumerate() {
            let (bits, combo) = Self::reduce(&rows, ch.bits(), 1u32 << l);
            assert!(bits != 0, "generators must be independent");
            rows.push((bits, combo));
        }
        SpanSolver { rows }
    }

    fn reduce(rows: &[(u32, u32)], mut bits: u32, mut combo: u32) -> (u32, u32) {
        loop {
            let mut changed = false;
            for &(rb, rc) in rows {
                let p = 31 - rb.leading_zeros();
                if (bits >> p) & 1 == 1 {
                    bits ^= rb;
                    combo ^= rc;
                    changed = true;
                }
            }
            if !changed {
                return (bits, combo);
            }
        }
    }

    fn coords(&self, bits: u32) -> Option<u32> {
        let (rem, combo) = Self::reduce(&self.rows, bits, 0);
        (rem == 0).then_some(combo)
    }
}

/// (sum of u_l over the set bits of `mask`)^e over F2, split over the binary
/// digits of e by Frobenius.
fn linear_power(mask: u32, e: u32) -> F2Poly {
    let mut out = F2Poly::one();
    for s in 0..32 {
        if (e >> s) & 1 == 0 {
            continue;
        }
        let mut f = F2Poly::zero();
        for l in 0..4u64 {
            if (mask >> l) & 1 == 1 {
                f.add_term((1u64 << s) << (16 * l));
            }
        }
        out = out.mul(&f);
    }
    out
}

type ConvTable = HashMap<Vec<u32>, Vec<Vec<u32>>>;

static CONV_CACHE: OnceLock<Mutex<HashMap<(Vec<u32>, u32), Arc<ConvTable>>>> = OnceLock::new();

/// Change of generators for top local-cohomology symbols in a fixed total
/// degree. The class of y^{-q} over the mixed generators u equals the sum
/// over exponent vectors p of c_p y^{-p} over the target generators z, where
/// c_p is the F2 coefficient of u^{q-1} in prod_j z_j(u)^{p_j - 1}
/// (the residue pairing; the change of basis is unimodular). `z_in_u[j]`
/// gives z_j as a bitmask over the u's; the table maps q to the list of p
/// with c_p = 1.
fn mixed_to_echelon(z_in_u: &[u32], total: u32) -> Arc<ConvTable> {
    let key = (z_in_u.to_vec(), total);
    let cache = CONV_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return t.clone();
    }
    let k = z_in_u.len();
    let mut table = ConvTable::new();
    let budget = total - k as u32;
    // enumerate exponent vectors e = p - 1 with sum(e) = budget
    let mut e = vec![0u32; k];
    loop {
        e[k - 1] = budget - e[..k - 1].iter().sum::<u32>();
        let mut poly = F2Poly::one();
        for j in 0..k {
            poly = poly.mul(&linear_power(z_in_u[j], e[j]));
        }
        let p: Vec<u32> = e.iter().map(|&x| x + 1).collect();
        for mono in poly.monomials() {
            let q: Vec<u32> = (0..k)
                .map(|l| ((mono >> (16 * l)) & 0xffff) as u32 + 1)
                .collect();
            table.entry(q).or_default().push(p.clone());
        }
        // advance the first k-1 slots through all vectors with sum <= budget
        let mut carry = true;
        for j in 0..k - 1 {
            e[j] += 1;
            if e[..k - 1].iter().sum::<u32>() <= budget {
                carry = false;
                break;
            }
            e[j] = 0;
        }
        if carry {
            break;
        }
    }
    let arc = Arc::new(table);
    cache.lock().unwrap().insert(key, arc.clone());
    arc
}

fn collapse(terms: Vec<Term>) -> Vec<Term> {
    let mut parity: BTreeMap<Term, bool> = BTreeMap::new();
    for t in terms {
        let e = parity.entry(t).or_insert(false);
        *e = !*e;
    }
    parity.into_iter().filter(|&(_, p)| p).map(|(t, _)| t).collect()
}

// C(a + b, a) mod 2 == 1 iff a and b have disjoint binary digits (Lucas)
fn binom_odd(a: u32, b: u32) -> bool {
    a & b == 0
}

/// Expands multiplication by (sum of the y-basis elements in `supp`)^p over
/// F2, branching terms. Uses Frobenius: the p-th power splits over the
/// binary digits of p.
fn expand_pos_power(terms: Vec<Term>, supp: &[usize], p: u32) -> Vec<Term> {
    if p == 0 {
        return terms;
    }
    let mut cur = terms;
    for s in 0..32 {
        if (p >> s) & 1 == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(cur.len() * supp.len());
        for (x, w) in cur {
            for &i in supp {
                let mut w2 = w.clone();
                w2[i] += 1i64 << s;
                next.push((x.clone(), w2));
            }
        }
        cur = next;
    }
    cur
}

/// The component of the differential from the column of A to the column of
/// an index-2 subgroup B, applied to one basis class. Returns the F2 set of
/// target classes.
pub fn d_component(
    col_a: &Column,
    col_b: &Column,
    c: &GrClass,
    deg: &VirtualDegree,
) -> Result<BTreeSet<GrClass>> {
    let a_sub = col_a.subgroup();
    let b_sub = col_b.subgroup();
    if !b_sub.is_subgroup_of(a_sub) || b_sub.rank() + 1 != a_sub.rank() {
        return Err(Error::NotIndexTwo);
    }
    let r_a = a_sub.rank() as u8;
    let r_b = b_sub.rank() as u8;
    let k_b = col_b.y_basis.len();

    // the unique nonzero character of A vanishing on B, in A's coordinates
    let betas: Vec<Character> = (1u32..(1 << r_a))
        .map(|bits| Character::new(bits, r_a))
        .filter(|chi| b_sub.basis().iter().all(|&g| !chi.eval(a_sub.coords_of(g))))
        .collect();
    let [beta] = betas[..] else {
        return Err(Error::NotIndexTwo);
    };
    let beta_ext = col_a.splitting.extend(beta);

    let delta_b = deg.t - offset(b_sub, &deg.m);
    let dx_max = delta_b - k_b as i64;
    if dx_max < 0 {
        return Ok(BTreeSet::new());
    }

    // work over the mixed generator system of B's local cohomology: A's
    // y-basis followed by the distinguished character. Every inverse power
    // below sits on one of these generators, so the expansion never has to
    // choose a direction; only at the very end is the symbol rewritten over
    // B's echelon y-basis, through the canonical change of generators.
    let k_a = col_a.y_basis.len();
    let bidx = k_a;
    let mixed: Vec<Character> = col_a.y_basis.iter().copied().chain([beta_ext]).collect();
    let solver = SpanSolver::new(&mixed);
    let supp_of = |gamma: Character| -> Vec<usize> {
        let mask = solver.coords(gamma.bits()).expect("character must vanish on B");
        (0..k_b).filter(|i| (mask >> i) & 1 == 1).collect()
    };

    // true (unshifted) exponent window: the incoming class contributes
    // y_alpha_i^{-(a_i+1)}, and x_beta^j substitutes to y_beta~^{-j}; a
    // surviving term must end with every w_i <= -1
    let mut w0 = vec![0i64; k_b];
    for (w, &a) in w0.iter_mut().zip(&c.a) {
        *w = -(a as i64 + 1);
    }
    w0[bidx] = -(c.r.exponent_of(beta) as i64);

    let mut terms: Vec<Term> = vec![(BTreeMap::new(), w0)];

    // rewrite the remaining x-variables through the change-of-splitting series
    for &(gamma_a, e) in c.r.factors() {
        if gamma_a == beta {
            continue;
        }
        let gamma_ext = col_a.splitting.extend(gamma_a);
        let gamma_b = b_sub.restrict(gamma_ext);
        assert!(!gamma_b.is_zero());
        let gamma_hat = col_b.splitting.extend(gamma_b);
        let delta = gamma_ext.plus(&gamma_hat);
        let mut next = Vec::new();
        for (x, w) in terms {
            let dx: i64 = x.values().map(|&v| v as i64).sum();
            if delta.is_zero() {
                if dx + e as i64 <= dx_max {
                    let mut x2 = x.clone();
                    *x2.entry(gamma_b).or_insert(0) += e;
                    next.push((x2, w));
                }
                continue;
            }
            let supp = supp_of(delta);
            let mut s = 0u32;
            while dx + (e + s) as i64 <= dx_max {
                if binom_odd(s, e - 1) {
                    let mut x2 = x.clone();
                    *x2.entry(gamma_b).or_insert(0) += e + s;
                    let branch = expand_pos_power(vec![(x2, w.clone())], &supp, s);
                    next.extend(branch);
                }
                s += 1;
            }
        }
        terms = collapse(next);
    }

    // suspension discrepancy: y_gamma^{m_gamma} over the characters vanishing
    // on B but not on A, i.e. the coset beta~ + (characters vanishing on A).
    // Negative powers expand as a Laurent series in the distinguished
    // variable: (y_beta~ + y_alpha)^{-p} = sum_i C(p-1+i,i) y_alpha^i
    // y_beta~^{-p-i}.
    for mask in 0..(1u32 << k_a) {
        let alpha_bits = col_a
            .y_basis
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .fold(0u32, |acc, (_, ch)| acc ^ ch.bits());
        let gamma = Character::new(alpha_bits ^ beta_ext.bits(), beta_ext.rank());
        let mg = deg.m_of(gamma);
        if mg == 0 {
            continue;
        }
        if alpha_bits == 0 {
            // a power of the distinguished variable itself
            for (_, w) in &mut terms {
                w[bidx] += mg;
            }
        } else if mg > 0 {
            terms = collapse(expand_pos_power(terms, &supp_of(gamma), mg as u32));
        } else {
            let alpha_supp: Vec<usize> =
                (0..k_a).filter(|i| (mask >> i) & 1 == 1).collect();
            let p = (-mg) as u32;
            let mut next = Vec::new();
            for (x, w) in terms {
                // the y_alpha^i part can only be absorbed by exponents still
                // owed on the A-side generators
                let cap: i64 = (0..k_a).map(|v| (-1 - w[v]).max(0)).sum();
                let mut i = 0i64;
                while i <= cap {
                    if binom_odd(i as u32, p - 1) {
                        let mut w2 = w.clone();
                        w2[bidx] -= p as i64 + i;
                        next.extend(expand_pos_power(
                            vec![(x.clone(), w2)],
                            &alpha_supp,
                            i as u32,
                        ));
                    }
                    i += 1;
                }
            }
            terms = collapse(next);
        }
    }

    // surviving terms are honest symbols over the mixed generators; rewrite
    // each over B's echelon y-basis
    let z_in_u: Vec<u32> = col_b
        .y_basis
        .iter()
        .map(|z| solver.coords(z.bits()).expect("echelon basis spans the same space"))
        .collect();
    let perm: Option<Vec<usize>> = z_in_u
        .iter()
        .map(|&m| (m.count_ones() == 1).then(|| m.trailing_zeros() as usize))
        .collect();

    let mut out: BTreeSet<GrClass> = BTreeSet::new();
    let push = |out: &mut BTreeSet<GrClass>, x: &BTreeMap<Character, u32>, a: Vec<u32>| {
        for mono in express_monomial(r_b, x)?.terms() {
            let cls = GrClass {
                r: mono.clone(),
                a: a.clone(),
            };
            if !out.remove(&cls) {
                out.insert(cls);
            }
        }
        Ok::<(), Error>(())
    };
    for (x, w) in terms {
        if w.iter().any(|&wi| wi >= 0) {
            continue;
        }
        let dx: i64 = x.values().map(|&v| v as i64).sum();
        let total = -w.iter().sum::<i64>();
        debug_assert_eq!(dx + total, delta_b, "degree bookkeeping must close");
        let q: Vec<u32> = w.iter().map(|&wi| (-wi) as u32).collect();
        if let Some(perm) = &perm {
            let a: Vec<u32> = perm.iter().map(|&l| q[l] - 1).collect();
            push(&mut out, &x, a)?;
        } else {
            let table = mixed_to_echelon(&z_in_u, total as u32);
            if let Some(ps) = table.get(&q) {
                for p in ps {
                    let a: Vec<u32> = p.iter().map(|&pi| pi - 1).collect();
                    push(&mut out, &x, a)?;
                }
            }
        }
    }
    Ok(out)
}

/// The assembled complex at one (internal) virtual degree.
pub struct ComplexInstance {
    pub n: u8,
    pub deg: VirtualDegree,
    /// per corank k: the columns (one per subgroup of corank k)
    pub columns: Vec<Vec<Column>>,
    /// per corank k: concatenated basis, tagged with the column index
    pub bases: Vec<Vec<(usize, GrClass)>>,
    /// d[k]: corank k -> corank k+1; d[n] is the empty map out of the top
    pub d: Vec<F2Matrix>,
}

impl ComplexInstance {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    /// Homology dimension per corank.
    pub fn homology_dims(&self) -> Result<Vec<usize>> {
        let n = self.n as usize;
        (0..=n)
            .map(|k| {
                let d_in = if k == 0 {
                    F2Matrix::zeros(self.bases[0].len(), 0)
                } else {
                    self.d[k - 1].clone()
                };
                homology_dim(&d_in, &self.d[k])
            })
            .collect()
    }

    /// Alternating sum of column dimensions.
    pub fn euler_columns(&self) -> i64 {
        self.bases
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }
}

fn columns_for(n: u8, convention: SplittingConvention) -> Vec<Vec<Column>> {
    (0..=n as usize)
        .map(|k| {
            enumerate_subgroups(n, n as usize - k)
                .into_iter()
                .map(|a| Column::new(splitting_for(&a, convention)))
                .collect()
        })
        .collect()
}

/// Builds the complex at internal degree (t, m) and verifies d.d = 0.
pub fn build(n: u8, deg: &VirtualDegree, convention: SplittingConvention) -> Result<ComplexInstance> {
    check_guards(n, deg)?;
    let columns = columns_for(n, convention);
    build_with_columns(n, deg, &columns)
}

fn build_with_columns(n: u8, deg: &VirtualDegree, columns: &[Vec<Column>]) -> Result<ComplexInstance> {
    let n_us = n as usize;
    let bases: Vec<Vec<(usize, GrClass)>> = columns
        .iter()
        .map(|cols| {
            cols.iter()
                .enumerate()
                .flat_map(|(ci, col)| column_basis(col, deg).into_iter().map(move |c| (ci, c)))
                .collect()
        })
        .collect();

    let mut d = Vec::with_capacity(n_us + 1);
    for k in 0..n_us {
        let mut index: HashMap<(usize, &GrClass), usize> = HashMap::new();
        for (row, (ci, cls)) in bases[k + 1].iter().enumerate() {
            index.insert((*ci, cls), row);
        }
        let mut mtx = F2Matrix::zeros(bases[k + 1].len(), bases[k].len());
        for (colj, (ci_a, cls)) in bases[k].iter().enumerate() {
            let col_a = &columns[k][*ci_a];
            for (ci_b, col_b) in columns[k + 1].iter().enumerate() {
                if !col_b.subgroup().is_subgroup_of(col_a.subgroup()) {
                    continue;
                }
                for target in d_component(col_a, col_b, cls, deg)? {
                    let row = index[&(ci_b, &target)];
                    mtx.set(row, colj, true);
                }
            }
        }
        d.push(mtx);
    }
    d.push(F2Matrix::zeros(0, bases[n_us].len()));

    for k in 0..n_us {
        if !d[k + 1].mul(&d[k]).is_zero() {
            return Err(Error::CompositionNonzero);
        }
    }

    Ok(ComplexInstance {
        n,
        deg: deg.clone(),
        columns: columns.to_vec(),
        bases,
        d,
    })
}

/// Coefficient-group dimensions by reported RO(G) degree t and corank
/// (filtration -k). A corank-k homology class of the complex at internal
/// degree u is reported at t = u - k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub by_t: BTreeMap<i64, BTreeMap<usize, usize>>,
}

impl Coefficients {
    pub fn total(&self, t: i64) -> usize {
        self.by_t.get(&t).map_or(0, |m| m.values().sum())
    }
}

/// Computes reported coefficients on [t_min, t_max].
pub fn coefficients(
    n: u8,
    m: &BTreeMap<Character, i64>,
    t_min: i64,
    t_max: i64,
    convention: SplittingConvention,
) -> Result<Coefficients> {
    assert!(t_min <= t_max);
    check_guards(n, &VirtualDegree::new(0, m.clone()))?;
    let columns = columns_for(n, convention);
    let per_u: Vec<(i64, Vec<usize>)> = (t_min..=t_max + n as i64)
        .into_par_iter()
        .map(|u| {
            let inst = build_with_columns(n, &VirtualDegree::new(u, m.clone()), &columns)?;
            Ok((u, inst.homology_dims()?))
        })
        .collect::<Result<_>>()?;
    let mut by_t: BTreeMap<i64, BTreeMap<usize, usize>> = BTreeMap::new();
    for (u, dims) in per_u {
        for (k, &h) in dims.iter().enumerate() {
            let t = u - k as i64;
            if h > 0 && t >= t_min && t <= t_max {
                by_t.entry(t).or_default().insert(k, h);
            }
        }
    }
    Ok(Coefficients { by_t })
}

/// One line of the Euler-characteristic report, at an internal degree.
#[derive(Clone, Debug)]
pub struct EulerRow {
    pub t: i64,
    pub columns: i64,
    pub homology: i64,
    pub closed_form: BigInt,
}

#[derive(Clone, Debug)]
pub struct EulerReport {
    pub rows: Vec<EulerRow>,
    pub pass: bool,
}

/// Compares, per internal degree, the alternating sums of column dimensions
/// and of homology dimensions against the formal closed-form series.
pub fn euler_characteristic(
    n: u8,
    m: &BTreeMap<Character, i64>,
    t_min: i64,
    t_max: i64,
    convention: SplittingConvention,
) -> Result<EulerReport> {
    let closed = formal_alternating_sum(n, m);
    let columns = columns_for(n, convention);
    let rows: Vec<EulerRow> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| {
            let inst = build_with_columns(n, &VirtualDegree::new(t, m.clone()), &columns)?;
            let hom: i64 = inst
                .homology_dims()?
                .iter()
                .enumerate()
                .map(|(k, &h)| if k % 2 == 0 { h as i64 } else { -(h as i64) })
                .sum();
            Ok(EulerRow {
                t,
                columns: inst.euler_columns(),
                homology: hom,
                closed_form: closed.coeff(t),
            })
        })
        .collect::<Result<_>>()?;
    let pass = rows
        .iter()
        .all(|r| BigInt::from(r.columns) == r.closed_form && r.columns == r.homology);
    Ok(EulerReport { rows, pass })
}

/// A named verification suite's outcome.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            pass: true,
            details: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.pass = false;
        self.details.push(msg);
    }
}

fn chars_of(n: u8) -> Vec<Character> {
    (1u32..(1 << n)).map(|b| Character::new(b, n)).collect()
}

/// All m supported on at most `max_support` characters with values drawn
/// from `values`.
fn enumerate_m(n: u8, values: &[i64], max_support: usize) -> Vec<BTreeMap<Character, i64>> {
    let chars = chars_of(n);
    let mut out = vec![BTreeMap::new()];
    fn rec(
        chars: &[Character],
        values: &[i64],
        start: usize,
        left: usize,
        cur: &mut BTreeMap<Character, i64>,
        out: &mut Vec<BTreeMap<Character, i64>>,
    ) {
        if left == 0 {
            return;
        }
        for i in start..chars.len() {
            for &v in values {
                cur.insert(chars[i], v);
                out.push(cur.clone());
                rec(chars, values, i + 1, left - 1, cur, out);
                cur.remove(&chars[i]);
            }
        }
    }
    let mut cur = BTreeMap::new();
    rec(&chars, values, 0, max_support, &mut cur, &mut out);
    out
}

/// Runs a named verification suite with the default sampling parameters.
/// Ranges are sized to the library's correctness claims; the heavier sweeps
/// parallelize over degrees.
pub fn verify_suite(name: &str, n: u8) -> Result<SuiteReport> {
    verify_suite_seeded(name, n, DEFAULT_SAMPLES, DEFAULT_SEED)
}

pub const DEFAULT_SAMPLES: usize = 12;
pub const DEFAULT_SEED: u64 = 0x9e3779b97f4a7c15;

/// Runs a named verification suite. The sampled suites (splitting, d2zero,
/// euler) draw `samples` mixed-sign m from a generator state initialized
/// with `seed`; the remaining suites are exhaustive over their ranges.
pub fn verify_suite_seeded(name: &str, n: u8, samples: usize, seed: u64) -> Result<SuiteReport> {
    match name {
        "positive-cone" => suite_positive_cone(n),
        "negative-cone" => suite_negative_cone(n),
        "quadrants" => suite_quadrants(n),
        "gap-remark" => suite_gap_remark(n),
        "tensor" => suite_tensor(n),
        "splitting" => suite_splitting(n, samples, seed),
        "d2zero" => suite_d2zero(n, samples, seed),
        "euler" => suite_euler(n, samples, seed),
        "l1" => suite_l1(n),
        _ => Err(Error::Parse(format!("unknown suite \"{name}\""))),
    }
}

/// All suite names accepted by [`verify_suite`].
pub const SUITES: &[&str] = &[
    "positive-cone",
    "negative-cone",
    "quadrants",
    "gap-remark",
    "tensor",
    "splitting",
    "d2zero",
    "euler",
    "l1",
];

/// Brute-force homology of the deletion complex Q_n agrees with the echelon
/// family F_n, counted by cardinality.
fn suite_l1(n: u8) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("l1");
    let h = crate::charlattice::q_complex_homology(n)?;
    let mut expected: BTreeMap<usize, usize> = BTreeMap::new();
    for s in crate::charlattice::enumerate_echelon_sets(n) {
        *expected.entry(s.chars().len()).or_insert(0) += 1;
    }
    if h != expected {
        report.fail(format!(
            "Q_{n} homology by cardinality {h:?} != F_{n} counts {expected:?}"
        ));
    }
    Ok(report)
}

fn suite_positive_cone(n: u8) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("positive-cone");
    let ms = enumerate_m(n, &[1, 2], 3);
    let failures: Vec<String> = ms
        .par_iter()
        .map(|m| {
            let expected = suspension_poincare(n, m)?;
            let coeffs = coefficients(n, m, -2, 14, SplittingConvention::Pivot)?;
            for t in -2..=14i64 {
                let by_k = coeffs.by_t.get(&t);
                let total = coeffs.total(t);
                if by_k.is_some_and(|m| m.keys().any(|&k| k > 0)) {
                    return Ok(format!("m={m:?} t={t}: homology off filtration 0"));
                }
                if BigInt::from(total) != expected.coeff(t) {
                    return Ok(format!(
                        "m={m:?} t={t}: total {total} != series {}",
                        expected.coeff(t)
                    ));
                }
            }
            Ok(String::new())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    for f in failures {
        report.fail(f);
    }
    report
        .details
        .push(format!("checked {} nonnegative m against the closed form", ms.len()));
    Ok(report)
}

fn suite_negative_cone(n: u8) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("negative-cone");
    let ms = enumerate_m(n, &[-1, -2], 3);
    let failures: Vec<String> = ms
        .par_iter()
        .map(|m| {
            let span_rank = Subgroup::from_generators(n, m.keys().map(|c| c.bits())).rank();
            let lo: i64 = m.values().sum::<i64>() - n as i64 - 2;
            let coeffs = coefficients(n, m, lo, 6, SplittingConvention::Pivot)?;
            for (t, by_k) in &coeffs.by_t {
                if by_k.keys().any(|&k| k != span_rank) {
                    return Ok(format!(
                        "m={m:?} t={t}: homology {by_k:?} off corank {span_rank}"
                    ));
                }
            }
            Ok(String::new())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    for f in failures {
        report.fail(f);
    }
    report.details.push(format!(
        "checked concentration for {} nonpositive m",
        ms.len()
    ));
    Ok(report)
}

fn suite_quadrants(n: u8) -> Result<SuiteReport> {
    if n != 2 {
        return Err(Error::SizeLimit("quadrants suite is defined for n = 2".into()));
    }
    let mut report = SuiteReport::new("quadrants");
    let (ca, cb, cc) = (
        Character::parse("10", 2).unwrap(),
        Character::parse("01", 2).unwrap(),
        Character::parse("11", 2).unwrap(),
    );
    let triples: Vec<(i64, i64, i64)> = (-3..=3)
        .flat_map(|k| (-3..=3).flat_map(move |l| (-3..=3).map(move |m| (k, l, m))))
        .collect();
    let failures: Vec<String> = triples
        .par_iter()
        .map(|&(k, l, m)| {
            let mm = BTreeMap::from([(ca, k), (cb, l), (cc, m)]);
            let (_, by_f) = n2_series(k, l, m);
            let coeffs = coefficients(2, &mm, -12, 12, SplittingConvention::Pivot)?;
            for t in -12..=12i64 {
                for corank in 0..=2usize {
                    let got = coeffs
                        .by_t
                        .get(&t)
                        .and_then(|b| b.get(&corank))
                        .copied()
                        .unwrap_or(0);
                    let want = by_f
                        .get(&-(corank as i64))
                        .map(|s| s.coeff(t))
                        .unwrap_or_default();
                    if BigInt::from(got) != want {
                        return Ok(format!(
                            "(k,l,m)=({k},{l},{m}) t={t} corank {corank}: complex {got} != closed form {want}"
                        ));
                    }
                }
            }
            Ok(String::new())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    for f in failures {
        report.fail(f);
    }
    report
        .details
        .push(format!("checked {} sign patterns, t in [-12, 12]", triples.len()));
    Ok(report)
}

fn suite_gap_remark(n: u8) -> Result<SuiteReport> {
    if n != 3 {
        return Err(Error::SizeLimit("gap-remark suite is defined for n = 3".into()));
    }
    let mut report = SuiteReport::new("gap-remark");
    let m = BTreeMap::from([
        (Character::parse("100", 3).unwrap(), 4i64),
        (Character::parse("010", 3).unwrap(), 4),
        (Character::parse("110", 3).unwrap(), -2),
        (Character::parse("001", 3).unwrap(), 4),
    ]);
    let coeffs = coefficients(3, &m, -10, 20, SplittingConvention::Pivot)?;
    let witness = coeffs.by_t.iter().find(|(_, by_k)| by_k.len() >= 2);
    match witness {
        Some((t, by_k)) => report.details.push(format!(
            "witness t={t}: homology in coranks {:?}",
            by_k.keys().collect::<Vec<_>>()
        )),
        None => report.fail("no degree with homology in two filtrations".into()),
    }
    Ok(report)
}

fn suite_tensor(n: u8) -> Result<SuiteReport> {
    if n != 2 {
        return Err(Error::SizeLimit("tensor suite is defined for n = 2".into()));
    }
    let mut report = SuiteReport::new("tensor");
    let sigma = Character::new(1, 1);
    let (ca, cb) = (
        Character::parse("10", 2).unwrap(),
        Character::parse("01", 2).unwrap(),
    );
    let pairs: Vec<(i64, i64)> = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| (a, b)))
        .collect();
    let lo = -10i64;
    let hi = 10i64;
    let failures: Vec<String> = pairs
        .par_iter()
        .map(|&(m1, m2)| {
            // factor totals are supported on a finite window
            let w = 8i64;
            let f1 = coefficients(1, &BTreeMap::from([(sigma, m1)]), lo - w, hi + w, SplittingConvention::Pivot)?;
            let f2 = coefficients(1, &BTreeMap::from([(sigma, m2)]), lo - w, hi + w, SplittingConvention::Pivot)?;
            let prod = coefficients(2, &BTreeMap::from([(ca, m1), (cb, m2)]), lo, hi, SplittingConvention::Pivot)?;
            for t in lo..=hi {
                let conv: usize = (lo - w..=hi + w)
                    .map(|t1| f1.total(t1) * f2.total(t - t1))
                    .sum();
                if prod.total(t) != conv {
                    return Ok(format!(
                        "(m1,m2)=({m1},{m2}) t={t}: product {} != convolution {conv}",
                        prod.total(t)
                    ));
                }
            }
            Ok(String::new())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    for f in failures {
        report.fail(f);
    }
    report
        .details
        .push(format!("checked {} coordinate-supported m pairs", pairs.len()));
    Ok(report)
}

fn lcg(state: &mut u64) -> u64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    *state
}

fn sample_ms(n: u8, samples: usize, seed: u64) -> Vec<BTreeMap<Character, i64>> {
    // deterministic spread of mixed-sign m
    let chars = chars_of(n);
    let mut out = vec![BTreeMap::new()];
    let vals = [-3i64, -2, -1, 1, 2, 3];
    let mut state = seed;
    for _ in 0..samples {
        let mut m = BTreeMap::new();
        for &c in &chars {
            let s = lcg(&mut state);
            if s >> 62 != 0 {
                m.insert(c, vals[(s >> 8) as usize % vals.len()]);
            }
        }
        out.push(m);
    }
    out
}

/// A random invertible F2 linear map on the character space, as its rows.
fn random_gl(n: u8, state: &mut u64) -> Vec<u32> {
    loop {
        let rows: Vec<u32> = (0..n).map(|_| (lcg(state) >> 17) as u32 & ((1 << n) - 1)).collect();
        if crate::charlattice::reduced_echelon_basis(rows.iter().copied()).len() == n as usize {
            return rows;
        }
    }
}

fn apply_gl(rows: &[u32], bits: u32) -> u32 {
    rows.iter()
        .enumerate()
        .filter(|(i, _)| (bits >> i) & 1 == 1)
        .fold(0, |acc, (_, &r)| acc ^ r)
}

fn suite_splitting(n: u8, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("splitting");
    let failures: Vec<String> = sample_ms(n, samples, seed)
        .par_iter()
        .map(|m| {
            for t in -6..=8i64 {
                let deg = VirtualDegree::new(t, m.clone());
                let h1 = build(n, &deg, SplittingConvention::Pivot)?.homology_dims()?;
                let h2 = build(n, &deg, SplittingConvention::Alt)?.homology_dims()?;
                if h1 != h2 {
                    return Ok(format!("m={m:?} t={t}: pivot {h1:?} != alt {h2:?}"));
                }
            }
            Ok(String::new())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    for f in failures {
        report.fail(f);
    }
    // homology is also invariant under relabeling the characters by any
    // automorphism of G; check a few random GL_n(F2) changes of coordinates
    let mut state = seed ^ 0xa5a5_a5a5_a5a5_a5a5;
    let base = sample_ms(n, 2.min(samples), seed);
    for g in (0..5).map(|_| random_gl(n, &mut state)) {
        for m in &base {
            let m2: BTreeMap<Character, i64> = m
                .iter()
                .map(|(c, &v)| (Character::new(apply_gl(&g, c.bits()), n), v))
                .collect();
            let c1 = coefficients(n, m, -4, 6, SplittingConvention::Pivot)?;
            let c2 = coefficients(n, &m2, -4, 6, SplittingConvention::Pivot)?;
            if c1.by_t != c2.by_t {
                report.fail(format!("relabeling {g:?} changes coefficients for m={m:?}"));
            }
        }
    }
    report
        .details
        .push("splitting conventions and GL relabelings agree".into());
    Ok(report)
}

fn suite_d2zero(n: u8, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("d2zero");
    // build() verifies d.d = 0 and errors otherwise; sweep a spread of (m, t)
    for m in sample_ms(n, samples, seed) {
        for t in -6..=8i64 {
            build(n, &VirtualDegree::new(t, m.clone()), SplittingConvention::Pivot)?;
        }
    }
    report.details.push("d.d = 0 on all sampled instances".into());
    Ok(report)
}

fn suite_euler(n: u8, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("euler");
    for m in sample_ms(n, samples, seed) {
        let rep = euler_characteristic(n, &m, -8, 10, SplittingConvention::Pivot)?;
        if !rep.pass {
            for r in rep.rows.iter().filter(|r| {
                BigInt::from(r.columns) != r.closed_form || r.columns != r.homology
            }) {
                report.fail(format!(
                    "m={m:?} t={}: columns {} homology {} closed form {}",
                    r.t, r.columns, r.homology, r.closed_form
                ));
            }
        }
    }
    report
        .details
        .push("columns = homology = closed-form alternating sum".into());
    Ok(report)
}

/// Series helper for reports: the reported totals on a window, as integers.
pub fn totals_window(c: &Coefficients, t_min: i64, t_max: i64) -> Vec<usize> {
    (t_min..=t_max).map(|t| c.total(t)).collect()
}

/// Convenience wrapper used by tests: expand a closed form on a window.
pub fn series_window(s: &RationalSeries, t_min: i64, t_max: i64) -> Vec<BigInt> {
    expand(s, t_min, t_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::GrClass;
    use crate::phiring::StdMonomial;

    fn ch(s: &str) -> Character {
        Character::parse(s, s.len() as u8).unwrap()
    }

    fn deg(t: i64, m: &[(&str, i64)]) -> VirtualDegree {
        VirtualDegree::new(
            t,
            m.iter().map(|&(s, v)| (ch(s), v)).collect(),
        )
    }

    fn cols(n: u8) -> Vec<Vec<Column>> {
        columns_for(n, SplittingConvention::Pivot)
    }

    #[test]
    fn d_component_n1_substitution() {
        let c = cols(1);
        let (col_g, col_0) = (&c[0][0], &c[1][0]);
        // x^2 at t=2 -> (1, a=1)
        let x2 = GrClass {
            r: StdMonomial::new([(Character::new(1, 1), 2)]),
            a: vec![],
        };
        let img = d_component(col_g, col_0, &x2, &deg(2, &[])).unwrap();
        assert_eq!(
            img,
            BTreeSet::from([GrClass { r: StdMonomial::one(), a: vec![1] }])
        );
        // x at t=1 -> (1, a=0)
        let x1 = GrClass {
            r: StdMonomial::new([(Character::new(1, 1), 1)]),
            a: vec![],
        };
        let img = d_component(col_g, col_0, &x1, &deg(1, &[])).unwrap();
        assert_eq!(
            img,
            BTreeSet::from([GrClass { r: StdMonomial::one(), a: vec![0] }])
        );
        // 1 at t=0 -> 0
        let one = GrClass { r: StdMonomial::one(), a: vec![] };
        assert!(d_component(col_g, col_0, &one, &deg(0, &[])).unwrap().is_empty());
        // with m_sigma = -1: 1 at t=0 -> (1, a=0)
        let img = d_component(col_g, col_0, &one, &deg(0, &[("1", -1)])).unwrap();
        assert_eq!(
            img,
            BTreeSet::from([GrClass { r: StdMonomial::one(), a: vec![0] }])
        );
    }

    #[test]
    fn d_component_n2_series_rewrite() {
        let c = cols(2);
        let col_g = &c[0][0];
        // B = ker(b): spanned by the first coordinate vector, beta~ = b
        let col_b = c[1]
            .iter()
            .find(|col| col.subgroup().basis() == [0b01])
            .unwrap();
        let x = |s: &str, e: u32| GrClass {
            r: StdMonomial::new([(ch(s), e)]),
            a: vec![],
        };
        let xb = GrClass {
            r: StdMonomial::new([(Character::new(1, 1), 1)]),
            a: vec![0],
        };
        // m_b = -1 supplies one inverse power of y_b; at t=1 both x_a and
        // x_c land on x * y_b^{-1} (x_c through the change-of-splitting
        // series), while x_b itself drops to y_b^{-2}
        let mneg = deg(1, &[("01", -1)]);
        assert_eq!(
            d_component(col_g, col_b, &x("10", 1), &mneg).unwrap(),
            BTreeSet::from([xb.clone()])
        );
        assert_eq!(
            d_component(col_g, col_b, &x("11", 1), &mneg).unwrap(),
            BTreeSet::from([xb.clone()])
        );
        assert_eq!(
            d_component(col_g, col_b, &x("01", 1), &mneg).unwrap(),
            BTreeSet::from([GrClass { r: StdMonomial::one(), a: vec![1] }])
        );
        // at m = 0: x_b x_a -> x * y_b^{-1}; x_a x_c has no room for the
        // mandatory inverse power and dies
        let img = d_component(
            col_g,
            col_b,
            &GrClass { r: StdMonomial::new([(ch("10"), 1), (ch("01"), 1)]), a: vec![] },
            &deg(2, &[]),
        )
        .unwrap();
        assert_eq!(img, BTreeSet::from([xb]));
        let img = d_component(
            col_g,
            col_b,
            &GrClass { r: StdMonomial::new([(ch("10"), 1), (ch("11"), 1)]), a: vec![] },
            &deg(2, &[]),
        )
        .unwrap();
        assert!(img.is_empty());
    }

    #[test]
    fn d_component_rejects_bad_pair() {
        let c = cols(2);
        let one = GrClass { r: StdMonomial::one(), a: vec![] };
        assert!(matches!(
            d_component(&c[0][0], &c[2][0], &one, &deg(0, &[])),
            Err(Error::NotIndexTwo)
        ));
    }

    #[test]
    fn build_examples() {
        let i = build(1, &deg(0, &[]), SplittingConvention::Pivot).unwrap();
        assert_eq!(i.dims(), vec![1, 0]);
        let i = build(1, &deg(2, &[]), SplittingConvention::Pivot).unwrap();
        assert_eq!(i.dims(), vec![1, 1]);
        assert_eq!(i.d[0].rank(), 1);
        let i = build(2, &deg(0, &[]), SplittingConvention::Pivot).unwrap();
        let h = i.homology_dims().unwrap();
        assert_eq!(h.iter().sum::<usize>(), 1);
        assert_eq!(h[0], 1);
    }

    #[test]
    fn build_guards() {
        assert!(matches!(
            build(5, &deg(0, &[]), SplittingConvention::Pivot),
            Err(Error::SizeLimit(_))
        ));
        assert!(matches!(
            build(1, &deg(100, &[]), SplittingConvention::Pivot),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn coefficients_examples() {
        // n=1, m=(2): totals 1,1,1 at t=0..2, corank 0
        let m = BTreeMap::from([(Character::new(1, 1), 2i64)]);
        let c = coefficients(1, &m, -4, 6, SplittingConvention::Pivot).unwrap();
        for t in -4..=6i64 {
            let want = usize::from((0..=2).contains(&t));
            assert_eq!(c.total(t), want, "t={t}");
        }
        assert!(c.by_t.values().all(|b| b.keys().all(|&k| k == 0)));

        // n=1, m=(-1): all totals 0
        let m = BTreeMap::from([(Character::new(1, 1), -1i64)]);
        let c = coefficients(1, &m, -6, 6, SplittingConvention::Pivot).unwrap();
        assert!(c.by_t.is_empty());

        // n=2, m=(-1,-1,1): total 1 at t=-1, corank 1
        let m = BTreeMap::from([(ch("10"), -1i64), (ch("01"), -1), (ch("11"), 1)]);
        let c = coefficients(2, &m, -8, 8, SplittingConvention::Pivot).unwrap();
        assert_eq!(c.by_t.len(), 1);
        assert_eq!(c.by_t[&-1], BTreeMap::from([(1usize, 1usize)]));

        // n=2, m=(-2,-2,0): total 1 at t=-4, corank 2
        let m = BTreeMap::from([(ch("10"), -2i64), (ch("01"), -2)]);
        let c = coefficients(2, &m, -10, 8, SplittingConvention::Pivot).unwrap();
        assert_eq!(c.by_t.len(), 1);
        assert_eq!(c.by_t[&-4], BTreeMap::from([(2usize, 1usize)]));
    }

    #[test]
    fn euler_examples() {
        let rep = euler_characteristic(1, &BTreeMap::new(), -2, 4, SplittingConvention::Pivot).unwrap();
        assert!(rep.pass);
        for r in &rep.rows {
            let want = i64::from(r.t == 0);
            assert_eq!(r.columns, want, "t={}", r.t);
        }
        // n=2, m=(-2,-2,0): the single corank-2 class sits at internal t=-2
        let m = BTreeMap::from([(ch("10"), -2i64), (ch("01"), -2)]);
        let rep = euler_characteristic(2, &m, -6, 6, SplittingConvention::Pivot).unwrap();
        assert!(rep.pass);
        for r in &rep.rows {
            let want = i64::from(r.t == -2);
            assert_eq!(r.homology, want, "t={}", r.t);
        }
    }

    #[test]
    fn quadrant_spot_checks() {
        // a fast subset of the full quadrants sweep
        let (ca, cb, cc) = (ch("10"), ch("01"), ch("11"));
        for &(k, l, m) in &[(2i64, 2, 0), (-1, -1, 1), (-2, -2, 0), (-1, -1, 0), (1, 1, -1), (0, -2, 1)] {
            let mm = BTreeMap::from([(ca, k), (cb, l), (cc, m)]);
            let (_, by_f) = n2_series(k, l, m);
            let coeffs = coefficients(2, &mm, -10, 10, SplittingConvention::Pivot).unwrap();
            for t in -10..=10i64 {
                for corank in 0..=2usize {
                    let got = coeffs.by_t.get(&t).and_then(|b| b.get(&corank)).copied().unwrap_or(0);
                    let want = by_f.get(&-(corank as i64)).map(|s| s.coeff(t)).unwrap_or_default();
                    assert_eq!(BigInt::from(got), want, "(k,l,m)=({k},{l},{m}) t={t} corank={corank}");
                }
            }
        }
    }

    #[test]
    fn splitting_smoke() {
        let m = BTreeMap::from([(ch("10"), -2i64), (ch("11"), 1)]);
        for t in -4..=5i64 {
            let d = VirtualDegree::new(t, m.clone());
            let h1 = build(2, &d, SplittingConvention::Pivot).unwrap().homology_dims().unwrap();
            let h2 = build(2, &d, SplittingConvention::Alt).unwrap().homology_dims().unwrap();
            assert_eq!(h1, h2, "t={t}");
        }
    }
}
