//! Sparse exact linear algebra over an abstract field: rank, kernel bases,
//! and subspace lattice operations, with an exact path over the
//! rational-function field and a probabilistic modular-specialization path.

pub mod cache;
mod elim;
pub mod field;
mod modular;
mod subspace;

pub use elim::{invert, kernel_basis, Echelon};
pub use field::{FieldCtx, PrimeField, ScalarField};
pub use modular::{
    mat_mod, modular_rank, rank_mod, rank_mod_streaming, sample_stream, scalar_mod,
    ModularSample, RankCertificate, PRIMES,
};
pub use subspace::Subspace;

use crate::error::QError;
use crate::scalar::Scalar;

/// Sparse row: strictly increasing column indices, no zero entries.
pub type SparseVec<E> = Vec<(u32, E)>;

/// Rank computation mode.
#[derive(Clone, Copy, Debug)]
pub enum RankMode {
    Exact,
    Modular { samples: usize, seed: u64 },
}

/// Rank (and, in exact mode, kernel) of a matrix over the rational-function
/// field. The kernel is available only from the exact path; modular mode
/// returns the agreed specialized rank with its probabilistic certificate.
pub fn rank_kernel(
    m: &SparseMat<Scalar>,
    mode: RankMode,
) -> Result<(usize, Option<Subspace<Scalar>>, RankCertificate), QError> {
    if m.rows().saturating_mul(m.cols()) > DIM_LIMIT {
        return Err(QError::ResourceLimit(format!(
            "matrix {}x{} exceeds the dimension guard",
            m.rows(),
            m.cols()
        )));
    }
    match mode {
        RankMode::Exact => {
            let vars = m
                .rows_iter()
                .flat_map(|r| r.iter().map(|(_, v)| v.vars()))
                .max()
                .unwrap_or(1);
            let f = ScalarField { vars };
            let ker = kernel_basis(m, &f);
            let rank = m.cols() - ker.len();
            let kernel = Subspace::from_span(m.cols(), ker, &f);
            Ok((rank, Some(kernel), RankCertificate::Exact))
        }
        RankMode::Modular { samples, seed } => {
            let (rank, cert) = modular_rank(m, samples, seed)?;
            Ok((rank, None, cert))
        }
    }
}

/// Sparse matrix in row-major form. No stored entry is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<E> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<E>>,
}

/// Guard against runaway eliminations; generous for desk scale.
pub const DIM_LIMIT: usize = 1 << 28;

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> SparseMat<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity<F: FieldCtx<E = E>>(n: usize, f: &F) -> Self {
        let data = (0..n).map(|i| vec![(i as u32, f.one())]).collect();
        SparseMat { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, i: usize) -> &SparseVec<E> {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &SparseVec<E>> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<SparseVec<E>> {
        self.data
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<SparseVec<E>>) -> Self {
        assert_eq!(data.len(), rows);
        for r in &data {
            debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(r.last().map_or(true, |(c, _)| (*c as usize) < cols));
        }
        SparseMat { rows, cols, data }
    }

    pub fn get<F: FieldCtx<E = E>>(&self, i: usize, j: usize, f: &F) -> E {
        match self.data[i].binary_search_by_key(&(j as u32), |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => f.zero(),
        }
    }

    pub fn set<F: FieldCtx<E = E>>(&mut self, i: usize, j: usize, v: E, f: &F) {
        assert!(i < self.rows && j < self.cols);
        let row = &mut self.data[i];
        match row.binary_search_by_key(&(j as u32), |(c, _)| *c) {
            Ok(k) => {
                if f.is_zero(&v) {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !f.is_zero(&v) {
                    row.insert(k, (j as u32, v));
                }
            }
        }
    }

    pub fn add_at<F: FieldCtx<E = E>>(&mut self, i: usize, j: usize, v: E, f: &F) {
        let cur = self.get(i, j, f);
        self.set(i, j, f.add(&cur, &v), f);
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<E>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j as usize].push((i as u32, v.clone()));
            }
        }
        SparseMat { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale<F: FieldCtx<E = E>>(&self, c: &E, f: &F) -> Self {
        if f.is_zero(c) {
            return SparseMat::zero(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f.mul(v, c))).collect())
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn add<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| vec_add(a, b, f))
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> Self {
        self.add(&other.scale(&f.neg(&f.one()), f), f)
    }

    pub fn mul<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.cols, other.rows);
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec<E> = Vec::new();
                for (k, a) in row {
                    acc = vec_add_scaled(&acc, &other.data[*k as usize], a, f);
                }
                acc
            })
            .collect();
        SparseMat { rows: self.rows, cols: other.cols, data }
    }

    /// Matrix-vector product on a dense vector.
    pub fn apply<F: FieldCtx<E = E>>(&self, v: &[E], f: &F) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = f.zero();
                for (j, a) in row {
                    acc = f.add(&acc, &f.mul(a, &v[*j as usize]));
                }
                acc
            })
            .collect()
    }

    /// Kronecker product: block structure `self[i][j] * other`.
    pub fn kron<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data: Vec<SparseVec<E>> = Vec::with_capacity(rows);
        for arow in &self.data {
            for brow in &other.data {
                let mut out: SparseVec<E> = Vec::with_capacity(arow.len() * brow.len());
                for (aj, av) in arow {
                    for (bj, bv) in brow {
                        out.push((
                            aj * other.cols as u32 + bj,
                            f.mul(av, bv),
                        ));
                    }
                }
                out.retain(|(_, v)| !f.is_zero(v));
                data.push(out);
            }
        }
        SparseMat { rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn map<T, G>(&self, mut g: G) -> Result<SparseMat<T>, QError>
    where
        T: Clone + PartialEq + std::fmt::Debug + Send + Sync,
        G: FnMut(&E) -> Result<T, QError>,
    {
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row {
                out.push((*j, g(v)?));
            }
            data.push(out);
        }
        Ok(SparseMat { rows: self.rows, cols: self.cols, data })
    }
}

/// a + b on sparse rows.
pub fn vec_add<F: FieldCtx>(a: &SparseVec<F::E>, b: &SparseVec<F::E>, f: &F) -> SparseVec<F::E> {
    vec_add_scaled(a, b, &f.one(), f)
}

/// a + c * b on sparse rows.
pub fn vec_add_scaled<F: FieldCtx>(
    a: &SparseVec<F::E>,
    b: &SparseVec<F::E>,
    c: &F::E,
    f: &F,
) -> SparseVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ac = a.get(i).map(|(c, _)| *c);
        let bc = b.get(j).map(|(c, _)| *c);
        match (ac, bc) {
            (Some(x), Some(y)) if x == y => {
                let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
                if !f.is_zero(&v) {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (Some(_), Some(y)) => {
                let v = f.mul(c, &b[j].1);
                if !f.is_zero(&v) {
                    out.push((y, v));
                }
                j += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (None, Some(y)) => {
                let v = f.mul(c, &b[j].1);
                if !f.is_zero(&v) {
                    out.push((y, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn vec_scale<F: FieldCtx>(a: &SparseVec<F::E>, c: &F::E, f: &F) -> SparseVec<F::E> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|(j, v)| (*j, f.mul(v, c))).collect()
}

/// Dense to sparse.
pub fn vec_from_dense<F: FieldCtx>(v: &[F::E], f: &F) -> SparseVec<F::E> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(j, x)| (j as u32, x.clone()))
        .collect()
}

pub fn vec_to_dense<F: FieldCtx>(v: &SparseVec<F::E>, n: usize, f: &F) -> Vec<F::E> {
    let mut out = vec![f.zero(); n];
    for (j, x) in v {
        out[*j as usize] = x.clone();
    }
    out
}
