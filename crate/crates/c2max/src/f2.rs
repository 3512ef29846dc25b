//! Dense bit-packed linear algebra over the field with two elements.
//!
//! Every cohomological question downstream (ranks of coboundaries, kernels,
//! solvability of section equations) reduces to exact Gaussian elimination
//! here. Rows are packed 64 entries per word and eliminated with word-wide
//! XOR. Pivoting is deterministic (leftmost nonzero column, topmost unused
//! row), so every basis chosen downstream is reproducible across runs.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over F2, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "xor_assign: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                let idx = wi * WORD + b;
                if idx < self.len {
                    out.push(idx);
                }
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.support().len()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({}; {:?})", self.len, self.support())
    }
}

/// A dense matrix over F2 with bit-packed rows in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    width: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let width = words_for(cols);
        F2Matrix {
            rows,
            cols,
            width,
            data: vec![0; rows * width],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for i in c.support() {
                m.set(i, j, true);
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
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.width + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let mask = 1u64 << (j % WORD);
        let w = &mut self.data[i * self.width + j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (a, b) = (src * self.width, dst * self.width);
        // Split borrow via pointer arithmetic on the flat buffer.
        for k in 0..self.width {
            let v = self.data[a + k];
            self.data[b + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.width {
            self.data.swap(a * self.width + k, b * self.width + k);
        }
    }

    pub fn row(&self, i: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.cols);
        v.words
            .copy_from_slice(&self.data[i * self.width..(i + 1) * self.width]);
        // Trailing garbage cannot exist: we only ever set in-range bits.
        v
    }

    pub fn column(&self, j: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let base = i * self.width;
            for (wi, &w) in self.data[base..base + self.width].iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    let j = wi * WORD + b;
                    if j < self.cols {
                        t.set(j, i, true);
                    }
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    /// Matrix product over F2.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "mul: dimension mismatch");
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let base = i * self.width;
            for (wi, &w) in self.data[base..base + self.width].iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    let k = wi * WORD + b;
                    if k < self.cols {
                        let (src, dst) = (k * other.width, i * out.width);
                        for t in 0..other.width {
                            out.data[dst + t] ^= other.data[src + t];
                        }
                    }
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(self.cols, v.len(), "apply: dimension mismatch");
        let mut out = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u64;
            let base = i * self.width;
            for k in 0..self.width {
                acc ^= self.data[base + k] & v.words[k];
            }
            if acc.count_ones() % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn augment(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, other.rows, "augment: row mismatch");
        let mut m = F2Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    m.set(i, self.cols + j, true);
                }
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.cols, "stack: col mismatch");
        let mut m = F2Matrix::zeros(self.rows + other.rows, self.cols);
        m.data[..self.rows * self.width].copy_from_slice(&self.data);
        m.data[self.rows * self.width..].copy_from_slice(&other.data);
        m
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    ///
    /// Pivot choice is deterministic: columns are scanned left to right and
    /// the topmost not-yet-used row with a 1 in the column is promoted.
    pub fn reduced_row_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let mut pivot_row = None;
            for r in next_row..self.rows {
                if self.get(r, col) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            self.swap_rows(next_row, pr);
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduced_row_echelon().len()
    }

    /// A basis of the right kernel `{v : Mv = 0}`, deterministic.
    ///
    /// The basis has size `cols - rank`, one vector per free column, listed
    /// in ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let mut m = self.clone();
        let pivots = m.reduced_row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = F2Vector::zeros(self.cols);
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * X = b` for all columns of `b` at once.
    ///
    /// Returns `None` when the system is inconsistent. The solution sets all
    /// free variables to zero, so it is deterministic.
    pub fn solve(&self, b: &F2Matrix) -> Option<F2Matrix> {
        assert_eq!(
            self.rows, b.rows,
            "solve: M has {} rows but B has {}",
            self.rows, b.rows
        );
        let mut aug = self.augment(b);
        let pivots = aug.reduced_row_echelon();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = F2Matrix::zeros(self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                if aug.get(r, self.cols + j) {
                    x.set(pc, j, true);
                }
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, b: &F2Vector) -> Option<F2Vector> {
        let bm = F2Matrix::from_columns(b.len(), std::slice::from_ref(b));
        self.solve(&bm).map(|x| x.column(0))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}:", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Naive elimination oracle on `Vec<Vec<bool>>`, independent of the
    /// bit-packed implementation.
    pub(crate) fn naive_rank(m: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = m.to_vec();
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for col in 0..cols {
            let mut pivot = None;
            for r in rank..rows {
                if m[r][col] {
                    pivot = Some(r);
                    break;
                }
            }
            if let Some(p) = pivot {
                m.swap(rank, p);
                for r in 0..rows {
                    if r != rank && m[r][col] {
                        let (head, tail) = if r < rank {
                            let (a, b) = m.split_at_mut(rank);
                            (&mut a[r], &b[0])
                        } else {
                            let (a, b) = m.split_at_mut(r);
                            (&mut b[0], &a[rank])
                        };
                        for c in 0..cols {
                            head[c] ^= tail[c];
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> F2Matrix {
        F2Matrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
    }

    fn to_naive(m: &F2Matrix) -> Vec<Vec<bool>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
            .collect()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn one_plus_sigma_on_regular_representation() {
        // 1 + sigma for the swap on F2^2 is the all-ones 2x2 matrix.
        let m = F2Matrix::from_fn(2, 2, |_, _| true);
        assert_eq!(m.rank(), 1);
        // Kernel: enumerate all four vectors and compare.
        let mut expected = Vec::new();
        for bits in 1u8..4 {
            let v = F2Vector::from_support(
                2,
                &[0, 1]
                    .iter()
                    .filter(|&&i| bits >> i & 1 == 1)
                    .copied()
                    .collect::<Vec<_>>(),
            );
            if m.apply(&v).is_zero() {
                expected.push(v);
            }
        }
        assert_eq!(expected.len(), 1);
        assert_eq!(expected[0].support(), vec![0, 1]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].support(), vec![0, 1]);
    }

    #[test]
    fn kernel_sizes() {
        assert_eq!(F2Matrix::zeros(2, 2).kernel_basis().len(), 2);
        assert!(F2Matrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn rank_matches_naive_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=25);
            let cols = rng.gen_range(1..=35);
            let m = random_matrix(&mut rng, rows, cols, 0.4);
            assert_eq!(m.rank(), naive_rank(&to_naive(&m)));
        }
    }

    #[test]
    fn kernel_vectors_are_in_kernel_and_count_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 20, 30, 0.3);
            let basis = m.kernel_basis();
            assert_eq!(basis.len(), 30 - m.rank());
            for v in &basis {
                assert!(m.apply(v).is_zero());
            }
        }
    }

    #[test]
    fn solve_identity_and_zero() {
        let id = F2Matrix::identity(3);
        let b = F2Matrix::from_fn(3, 2, |i, j| (i + j) % 2 == 0);
        assert_eq!(id.solve(&b).unwrap(), b);

        let z = F2Matrix::zeros(3, 3);
        assert!(z.solve(&b).is_none());
        assert!(z.solve(&F2Matrix::zeros(3, 2)).is_some());
    }

    #[test]
    fn solve_constructed_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 12, 17, 0.35);
            let x0 = random_matrix(&mut rng, 17, 3, 0.5);
            let b = m.mul(&x0);
            let x = m.solve(&b).expect("constructed system must be solvable");
            assert_eq!(m.mul(&x), b);
        }
    }

    #[test]
    fn solve_none_iff_augmented_rank_grows() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 8, 6, 0.4);
            let b = random_matrix(&mut rng, 8, 2, 0.4);
            let solvable = m.solve(&b).is_some();
            let grows = m.augment(&b).rank() > m.rank();
            assert_eq!(solvable, !grows);
        }
    }

    #[test]
    fn transpose_involutive_and_mul_assoc() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 7, 9, 0.5);
        assert_eq!(a.transpose().transpose(), a);
        let b = random_matrix(&mut rng, 9, 4, 0.5);
        let c = random_matrix(&mut rng, 4, 6, 0.5);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    proptest! {
        #[test]
        fn rank_plus_nullity_is_cols(seed in 0u64..500, rows in 1usize..16, cols in 1usize..16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&mut rng, rows, cols, 0.4);
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        }

        #[test]
        fn rank_invariant_under_row_permutation(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = rng.gen_range(2..10);
            let cols = rng.gen_range(1..12);
            let m = random_matrix(&mut rng, rows, cols, 0.4);
            let mut perm: Vec<usize> = (0..rows).collect();
            for i in (1..rows).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let p = F2Matrix::from_fn(rows, cols, |i, j| m.get(perm[i], j));
            prop_assert_eq!(m.rank(), p.rank());
        }
    }
}
