//! Exact dense linear algebra over the two-element field.
//!
//! Matrices are stored with bit-packed rows (64 columns per word). Everything
//! here is plain Gaussian elimination; matrix sizes in this crate stay at desk
//! scale, so a dense representation beats any sparse format.

/// A dense matrix over GF(2) with bit-packed rows.
///
/// A matrix represents a linear map by acting on column vectors: `rows` is the
/// dimension of the target, `cols` of the source.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0u64; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from explicit 0/1 rows. Rows must all have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.data[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / 64;
        let bit = 1u64 << (c % 64);
        if v {
            self.data[idx] |= bit;
        } else {
            self.data[idx] &= !bit;
        }
    }

    #[inline]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words_per_row;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product `self * rhs` (composition of linear maps).
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        let w = rhs.words_per_row;
        for r in 0..self.rows {
            let dst = r * out.words_per_row;
            for c in 0..self.cols {
                if self.get(r, c) {
                    let src = c * w;
                    for k in 0..w {
                        out.data[dst + k] ^= rhs.data[src + k];
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form under the natural column order 0, 1, 2, ...
    pub fn rref(&self) -> (F2Matrix, Vec<usize>, usize) {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    /// Reduced row echelon form scanning columns in the caller-supplied order.
    ///
    /// Returns the reduced matrix, the pivot columns (in original column
    /// indices, in scan order) and the rank.
    pub fn rref_with_order(&self, column_order: &[usize]) -> (F2Matrix, Vec<usize>, usize) {
        assert_eq!(column_order.len(), self.cols, "column order must cover all columns");
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for &col in column_order {
            if next_row >= m.rows {
                break;
            }
            let mut pivot_row = None;
            for r in next_row..m.rows {
                if m.get(r, col) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(next_row, pr);
            for r in 0..m.rows {
                if r != next_row && m.get(r, col) {
                    m.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// A basis of `ker(self)` as 0/1 column vectors of length `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let (r, pivots, rank) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            // Pivot variable i is determined by row i of the rref.
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, free) {
                    v[p] = 1;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Applies the matrix to a 0/1 column vector.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u8; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0u8;
            for (c, &x) in v.iter().enumerate() {
                if x & 1 == 1 && self.get(r, c) {
                    acc ^= 1;
                }
            }
            *o = acc;
        }
        out
    }
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Homology dimension of a composable pair `d_in: X -> Y`, `d_out: Y -> Z`:
/// `dim ker(d_out) - rank(d_in)`.
///
/// Fails with [`Error::CompositionNonzero`](crate::Error::CompositionNonzero)
/// if `d_out . d_in != 0`.
pub fn homology_dim(d_in: &F2Matrix, d_out: &F2Matrix) -> crate::Result<usize> {
    assert_eq!(d_in.rows(), d_out.cols(), "middle dimensions must agree");
    if !d_out.mul(d_in).is_zero() {
        return Err(crate::Error::CompositionNonzero);
    }
    let ker = d_out.cols() - d_out.rank();
    Ok(ker - d_in.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[u8]]) -> F2Matrix {
        F2Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rref_identity() {
        let id = F2Matrix::identity(2);
        let (r, pivots, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_zero() {
        let z = F2Matrix::zeros(3, 3);
        let (r, pivots, rank) = z.rref();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_hand_example() {
        // rows {11, 01} reduce to {10, 01}
        let a = m(&[&[1, 1], &[0, 1]]);
        let (r, _, rank) = a.rref();
        assert_eq!(r, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_reversed_column_order() {
        // Scanning the last column first makes the second row the first pivot.
        let a = m(&[&[1, 1], &[0, 1]]);
        let (_, pivots, rank) = a.rref_with_order(&[1, 0]);
        assert_eq!(pivots, vec![1, 0]);
        assert_eq!(rank, 2);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(F2Matrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map() {
        let z = F2Matrix::zeros(1, 3);
        // a 1x3 zero matrix has all of F2^3 as kernel
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_of_parity_row() {
        let a = m(&[&[1, 1, 1]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.apply(v).iter().all(|&b| b == 0));
        }
        // brute-force: exactly 4 of the 8 vectors lie in the kernel (incl. 0)
        let mut count = 0;
        for mask in 0..8u8 {
            let v = vec![mask & 1, (mask >> 1) & 1, (mask >> 2) & 1];
            if a.apply(&v)[0] == 0 {
                count += 1;
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn homology_dim_examples() {
        // d_in = 0 into F2^2, d_out = 0 out of F2^2: H = F2^2
        let d_in = F2Matrix::zeros(2, 0);
        let d_out = F2Matrix::zeros(0, 2);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 2);

        // d_in = identity: everything is a boundary
        let d_in = F2Matrix::identity(2);
        let d_out = F2Matrix::zeros(0, 2);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);

        // image span {(1,0)}, kernel span {(1,0)}: H = 0
        let d_in = m(&[&[1], &[0]]);
        let d_out = m(&[&[0, 1]]);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn homology_dim_rejects_nonzero_composition() {
        let d_in = F2Matrix::identity(2);
        let d_out = F2Matrix::identity(2);
        assert!(matches!(
            homology_dim(&d_in, &d_out),
            Err(crate::Error::CompositionNonzero)
        ));
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(move |rows| F2Matrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.cols(), m.rank() + m.kernel_basis().len());
        }

        #[test]
        fn kernel_vectors_are_in_kernel(m in arb_matrix()) {
            for v in m.kernel_basis() {
                prop_assert!(m.apply(&v).iter().all(|&b| b == 0));
            }
        }

        // homology_dim is invariant under a change of basis of the middle
        // space applied consistently to both matrices.
        #[test]
        fn homology_basis_invariance(seed in 0u64..1000) {
            let mut s = seed;
            let mut rnd = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as usize };
            let (nx, ny, nz) = (1 + rnd() % 4, 1 + rnd() % 4, 1 + rnd() % 4);
            // random d_in, then force d_out * d_in = 0 by picking d_out with
            // rows in the kernel of d_in^T ... simplest: d_out = 0.
            let mut d_in = F2Matrix::zeros(ny, nx);
            for r in 0..ny { for c in 0..nx { d_in.set(r, c, rnd() % 2 == 1); } }
            let d_out = F2Matrix::zeros(nz, ny);
            let h = homology_dim(&d_in, &d_out).unwrap();

            // random invertible p: Y -> Y
            let mut p = F2Matrix::identity(ny);
            for _ in 0..8 {
                let (a, b) = (rnd() % ny, rnd() % ny);
                if a != b { p.xor_row_into(a, b); }
            }
            let d_in2 = p.mul(&d_in);
            // d_out2 = d_out * p^{-1} = 0 still
            let h2 = homology_dim(&d_in2, &d_out).unwrap();
            prop_assert_eq!(h, h2);
        }
    }
}
