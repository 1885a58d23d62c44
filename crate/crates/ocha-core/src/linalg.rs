//! Exact rational linear algebra for the truncated complexes.
//!
//! Elimination runs fraction-free: rows are cleared to primitive integer
//! vectors, cross-multiplication keeps everything integral, and each derived
//! row is divided by its content.  Pivots are chosen by smallest absolute
//! value to limit coefficient growth.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::CoreError;
use crate::scalar::Scalar;

/// A dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, CoreError> {
        if self.cols != rhs.rows {
            return Err(CoreError::SpaceMismatch { context: "matrix multiplication" });
        }
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        Ok(out)
    }

    /// Rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (_, pivots) = integer_echelon(&to_integer_rows(self));
        pivots.len()
    }

    /// A basis of the kernel `{x : M·x = 0}`, as coordinate vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = rational_rref(&to_integer_rows(self));
        let pivot_set: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut x = vec![Scalar::zero(); self.cols];
            x[free] = Scalar::one();
            for &(r, c) in &pivots {
                x[c] = -rref[r][free].clone();
            }
            basis.push(x);
        }
        basis
    }
}

/// Clears denominators row-wise and strips content, so each row is a
/// primitive integer vector.  Kernels and row spans are unchanged.
fn to_integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row: Vec<Scalar> = (0..m.cols).map(|j| m.get(i, j).clone()).collect();
            primitive_integer_row(&row)
        })
        .collect()
}

pub(crate) fn primitive_integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for s in row {
        if !s.is_zero() {
            lcm = lcm.lcm(s.denom());
        }
    }
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|s| s.numer() * (&lcm / s.denom()))
        .collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if !content.is_zero() && content != BigInt::from(1) {
        for v in &mut ints {
            *v /= &content;
        }
    }
    ints
}

/// Fraction-free row echelon form.  Returns the echelon rows and the pivot
/// list `(row, col)`; rows below the rank are zero.
fn integer_echelon(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = if nrows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        // Smallest-magnitude nonzero pivot below the current rank.
        let mut best: Option<usize> = None;
        for (idx, row) in m.iter().enumerate().skip(rank) {
            if row[col].is_zero() {
                continue;
            }
            match best {
                None => best = Some(idx),
                Some(b) => {
                    if m[idx][col].abs() < m[b][col].abs() {
                        best = Some(idx);
                    }
                }
            }
        }
        let Some(p) = best else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in 0..nrows {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in 0..ncols {
                let v = &m[i][j] * &pivot - &m[rank][j] * &factor;
                m[i][j] = v;
            }
            strip_content(&mut m[i]);
        }
        pivots.push((rank, col));
        rank += 1;
    }
    (m, pivots)
}

fn strip_content(row: &mut [BigInt]) {
    let mut content = BigInt::zero();
    for v in row.iter() {
        content = content.gcd(v);
        if content == BigInt::from(1) {
            return;
        }
    }
    if content.is_zero() || content == BigInt::from(1) {
        return;
    }
    for v in row.iter_mut() {
        *v /= &content;
    }
}

/// Reduced row echelon form over the rationals, derived from the
/// fraction-free echelon by normalizing pivots to 1.
fn rational_rref(rows: &[Vec<BigInt>]) -> (Vec<Vec<Scalar>>, Vec<(usize, usize)>) {
    let (ech, pivots) = integer_echelon(rows);
    let out: Vec<Vec<Scalar>> = pivots
        .iter()
        .map(|&(r, c)| {
            let pivot = ech[r][c].clone();
            ech[r]
                .iter()
                .map(|v| {
                    Scalar::from_bigints(v.clone(), pivot.clone())
                        .expect("pivot is nonzero")
                })
                .collect()
        })
        .collect();
    let pivots = pivots
        .iter()
        .enumerate()
        .map(|(new_r, &(_, c))| (new_r, c))
        .collect();
    (out, pivots)
}

/// A row space kept in reduced echelon form, with an augmented tracking
/// block expressing every stored row as a combination of the inserted
/// generators.
#[derive(Debug, Clone)]
pub struct TrackedSpan {
    width: usize,
    generators: usize,
    /// `(vector, pivot column, combination over generators)`.
    rows: Vec<(Vec<Scalar>, usize, Vec<Scalar>)>,
}

impl TrackedSpan {
    pub fn new(width: usize) -> Self {
        TrackedSpan {
            width,
            generators: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Inserts a generator.  Returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, CoreError> {
        assert_eq!(v.len(), self.width);
        let gen_index = self.generators;
        self.generators += 1;
        let mut combo = vec![Scalar::zero(); gen_index + 1];
        combo[gen_index] = Scalar::one();
        for row in &mut self.rows {
            row.2.push(Scalar::zero());
        }
        let (residue, combo) = self.reduce_tracked(v.to_vec(), combo);
        let Some(lead) = residue.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let lead_val = residue[lead].clone();
        let inv = lead_val.recip()?;
        let vector: Vec<Scalar> = residue.iter().map(|x| x * &inv).collect();
        let combo: Vec<Scalar> = combo.iter().map(|x| x * &inv).collect();
        // Back-eliminate the new pivot from existing rows.
        for (row_vec, _, row_combo) in &mut self.rows {
            let c = row_vec[lead].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.width {
                let delta = &vector[j] * &c;
                row_vec[j] -= &delta;
            }
            for j in 0..row_combo.len() {
                let delta = &combo[j] * &c;
                row_combo[j] -= &delta;
            }
        }
        self.rows.push((vector, lead, combo));
        self.rows.sort_by_key(|(_, pivot, _)| *pivot);
        Ok(true)
    }

    fn reduce_tracked(
        &self,
        mut v: Vec<Scalar>,
        mut combo: Vec<Scalar>,
    ) -> (Vec<Scalar>, Vec<Scalar>) {
        for (row_vec, pivot, row_combo) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.width {
                let delta = &row_vec[j] * &c;
                v[j] -= &delta;
            }
            for j in 0..row_combo.len() {
                let delta = &row_combo[j] * &c;
                combo[j] -= &delta;
            }
        }
        (v, combo)
    }

    /// Residue of `v` modulo the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let combo = vec![Scalar::zero(); self.generators];
        self.reduce_tracked(v.to_vec(), combo).0
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Expresses `v` over the inserted generators, when it lies in the span.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let combo = vec![Scalar::zero(); self.generators];
        let (residue, combo) = self.reduce_tracked(v.to_vec(), combo);
        if residue.iter().all(Scalar::is_zero) {
            // v − Σ cᵢ·rowᵢ = 0 with rows expanded over generators; the
            // accumulated combo carries the negated coefficients.
            Some(combo.iter().map(|c| -c).collect())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mat(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, s(vals[i * cols + j]));
            }
        }
        m
    }

    /// Plain rational Gaussian elimination, as an independent rank oracle.
    fn naive_rank(m: &Matrix) -> usize {
        let mut rows: Vec<Vec<Scalar>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].recip().unwrap();
            for j in 0..m.cols() {
                rows[rank][j] = &rows[rank][j] * &inv;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let c = rows[r][col].clone();
                    for j in 0..m.cols() {
                        let delta = &rows[rank][j] * &c;
                        rows[r][j] -= &delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_naive_elimination() {
        let m = mat(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank(), naive_rank(&m));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = mat(2, 4, &[1, 2, 0, -1, 0, 0, 3, 6]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for x in &kernel {
            for i in 0..m.rows() {
                let mut acc = Scalar::zero();
                for j in 0..m.cols() {
                    acc += &(m.get(i, j) * &x[j]);
                }
                assert!(acc.is_zero());
            }
        }
        // rank-nullity
        assert_eq!(m.rank() + kernel.len(), m.cols());
    }

    #[test]
    fn tracked_span_solves_membership() {
        let mut span = TrackedSpan::new(3);
        let g0 = [s(1), s(2), s(0)];
        let g1 = [s(0), s(1), s(1)];
        assert!(span.insert(&g0).unwrap());
        assert!(span.insert(&g1).unwrap());
        // 2·g0 − 3·g1
        let v = [s(2), s(1), s(-3)];
        let combo = span.solve(&v).unwrap();
        assert_eq!(combo.len(), 2);
        // Recombine and compare.
        let mut recon = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        for (c, g) in combo.iter().zip([&g0[..], &g1[..]]) {
            for j in 0..3 {
                recon[j] += &(c * &g[j]);
            }
        }
        assert_eq!(recon.to_vec(), v.to_vec());
        assert!(span.solve(&[s(0), s(0), s(5)]).is_none());
        // A dependent generator does not enlarge the span.
        assert!(!span.insert(&[s(2), s(5), s(1)]).unwrap());
    }

    #[test]
    fn random_matrices_rank_agrees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let vals: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-3..=3)).collect();
            let m = mat(rows, cols, &vals);
            assert_eq!(m.rank(), naive_rank(&m));
            assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        }
    }
}
