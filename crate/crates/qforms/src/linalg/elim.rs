//! Streaming reduced row-echelon elimination and kernel extraction.

use super::field::FieldCtx;
use super::{vec_add_scaled, vec_scale, SparseMat, SparseVec};
use crate::error::QError;

/// A reduced row-echelon accumulator. Rows can be fed one at a time, which
/// lets callers generate large matrices lazily and keep only the pivots.
pub struct Echelon<F: FieldCtx> {
    ctx: F,
    cols: usize,
    /// Pivot rows, each scaled to a leading 1, mutually reduced.
    rows: Vec<SparseVec<F::E>>,
    /// pivot column -> index into `rows`
    pivot_of_col: Vec<Option<u32>>,
}

impl<F: FieldCtx> Echelon<F> {
    pub fn new(ctx: F, cols: usize) -> Self {
        Echelon { ctx, cols, rows: Vec::new(), pivot_of_col: vec![None; cols] }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `row` after reduction against the current pivot rows.
    /// Pivot rows carry no other pivot columns, so one left-to-right pass
    /// eliminates every reducible coordinate exactly once.
    pub fn reduce(&self, row: &SparseVec<F::E>) -> SparseVec<F::E> {
        let f = &self.ctx;
        let mut r = row.clone();
        let mut i = 0;
        while i < r.len() {
            let (j, v) = r[i].clone();
            if let Some(pi) = self.pivot_of_col[j as usize] {
                r = vec_add_scaled(&r, &self.rows[pi as usize], &f.neg(&v), f);
            } else {
                i += 1;
            }
        }
        r
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: &SparseVec<F::E>) -> bool {
        let f = self.ctx.clone();
        let r = self.reduce(row);
        let Some((pcol, pval)) = r.first().cloned() else {
            return false;
        };
        let inv = f.inv(&pval).expect("nonzero pivot");
        let r = vec_scale(&r, &inv, &f);
        // Back-eliminate the new pivot column from the existing rows.
        let idx = self.rows.len() as u32;
        for er in self.rows.iter_mut() {
            if let Ok(k) = er.binary_search_by_key(&pcol, |(c, _)| *c) {
                let coeff = f.neg(&er[k].1);
                *er = vec_add_scaled(er, &r, &coeff, &f);
            }
        }
        self.pivot_of_col[pcol as usize] = Some(idx);
        self.rows.push(r);
        true
    }

    pub fn pivot_cols(&self) -> Vec<u32> {
        let mut cols: Vec<u32> = self
            .pivot_of_col
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.map(|_| j as u32))
            .collect();
        cols.sort_unstable();
        cols
    }

    /// Pivot rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<SparseVec<F::E>> {
        let mut out: Vec<SparseVec<F::E>> = Vec::with_capacity(self.rows.len());
        for col in self.pivot_cols() {
            let pi = self.pivot_of_col[col as usize].unwrap();
            out.push(self.rows[pi as usize].clone());
        }
        out
    }

    /// Kernel of the constraint system whose rows were inserted: a basis of
    /// { x : M x = 0 }, one vector per free column, already in echelon form
    /// when read against the free columns.
    pub fn kernel_rows(&self) -> Vec<SparseVec<F::E>> {
        let f = &self.ctx;
        let mut out = Vec::with_capacity(self.cols - self.rows.len());
        for free in 0..self.cols as u32 {
            if self.pivot_of_col[free as usize].is_some() {
                continue;
            }
            let mut v: SparseVec<F::E> = vec![(free, f.one())];
            for row in &self.rows {
                let pcol = row.first().unwrap().0;
                if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    let coeff = f.neg(&row[k].1);
                    match v.binary_search_by_key(&pcol, |(c, _)| *c) {
                        Ok(_) => unreachable!("pivot column duplicated"),
                        Err(pos) => v.insert(pos, (pcol, coeff)),
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

/// Exact inverse of a square matrix via elimination on [M | I].
pub fn invert<F: FieldCtx>(m: &SparseMat<F::E>, ctx: &F) -> Result<SparseMat<F::E>, QError> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let mut ech = Echelon::new(ctx.clone(), 2 * n);
    for (i, row) in m.rows_iter().enumerate() {
        let mut aug = row.clone();
        aug.push(((n + i) as u32, ctx.one()));
        ech.insert(&aug);
    }
    let rows = ech.sorted_rows();
    let mut out = SparseMat::zero(n, n);
    for (i, row) in rows.iter().enumerate() {
        // Pivots must be exactly the left block, in order; otherwise singular.
        if row.first().map(|(c, _)| *c as usize) != Some(i) {
            return Err(QError::ZeroDivisor);
        }
        for (j, v) in row {
            if (*j as usize) >= n {
                out.set(i, *j as usize - n, v.clone(), ctx);
            }
        }
    }
    if rows.len() != n {
        return Err(QError::ZeroDivisor);
    }
    Ok(out)
}

/// Kernel basis of a sparse matrix (as row constraints on column vectors).
pub fn kernel_basis<F: FieldCtx>(m: &SparseMat<F::E>, ctx: &F) -> Vec<SparseVec<F::E>> {
    let mut ech = Echelon::new(ctx.clone(), m.cols());
    // Shortest rows first keeps fill-in down on the structured matrices
    // produced by the antisymmetrizer recursion.
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by_key(|&i| m.row(i).len());
    for i in order {
        if !m.row(i).is_empty() {
            ech.insert(m.row(i));
        }
    }
    ech.kernel_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PrimeField;

    fn mat(p: u64, rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> SparseMat<u64> {
        let f = PrimeField::new(p);
        let mut m = SparseMat::zero(rows, cols);
        for (i, j, v) in entries {
            m.set(*i, *j, f.from_int(*v), &f);
        }
        m
    }

    #[test]
    fn rank_and_kernel() {
        let p = 2147483659;
        let f = PrimeField::new(p);
        // rows: (1,1,0), (0,1,1) -> rank 2, kernel spanned by (1,-1,1)
        let m = mat(p, 2, 3, &[(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 1)]);
        let mut ech = Echelon::new(f, m.cols());
        for r in m.rows_iter() {
            ech.insert(r);
        }
        assert_eq!(ech.rank(), 2);
        let ker = ech.kernel_rows();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        // check m v = 0
        let dense = crate::linalg::vec_to_dense(v, 3, &PrimeField::new(p));
        let img = m.apply(&dense, &PrimeField::new(p));
        assert!(img.iter().all(|x| *x == 0));
    }

    #[test]
    fn rank_nullity_random() {
        use rand::{Rng, SeedableRng};
        let p = 2147483659;
        let f = PrimeField::new(p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let mut m = SparseMat::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen_bool(0.4) {
                        m.set(i, j, rng.gen_range(0..p), &f);
                    }
                }
            }
            let mut ech = Echelon::new(f, cols);
            for r in m.rows_iter() {
                ech.insert(r);
            }
            assert_eq!(ech.rank() + ech.kernel_rows().len(), cols);
        }
    }
}
