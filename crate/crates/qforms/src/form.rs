//! Left-invariant tensor forms.
//!
//! A degree-k element of Γ_ℓ^{⊗k} in the ν-basis: a sparse coefficient
//! vector over multi-indices (I₁,…,I_k), each leg index I = (i,j) flattened
//! to i·N + j (zero-based). Degree-0 forms are scalars sitting on the empty
//! multi-index.

use crate::linalg::{vec_add_scaled, vec_scale, FieldCtx, ScalarField, SparseMat, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TensorForm {
    n: usize,
    degree: usize,
    coeffs: SparseVec<Scalar>,
}

impl TensorForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        TensorForm { n, degree, coeffs: Vec::new() }
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let coeffs = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        TensorForm { n, degree: 0, coeffs }
    }

    /// The basis form ν^i_j (zero-based indices).
    pub fn nu(n: usize, field: &ScalarField, i: usize, j: usize) -> Self {
        assert!(i < n && j < n);
        TensorForm { n, degree: 1, coeffs: vec![((i * n + j) as u32, field.one())] }
    }

    pub fn from_coeffs(n: usize, degree: usize, coeffs: SparseVec<Scalar>) -> Self {
        let dim = (n * n).pow(degree as u32) as u32;
        debug_assert!(coeffs.last().map_or(true, |(c, _)| *c < dim));
        TensorForm { n, degree, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of Γ_ℓ^{⊗k} for this degree.
    pub fn dim(&self) -> usize {
        (self.n * self.n).pow(self.degree as u32)
    }

    pub fn coeffs(&self) -> &SparseVec<Scalar> {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        let f = ScalarField { vars: self.vars().max(other.vars()) };
        TensorForm {
            n: self.n,
            degree: self.degree,
            coeffs: vec_add_scaled(&self.coeffs, &other.coeffs, &f.one(), &f),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(self.vars(), -1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let f = ScalarField { vars: self.vars().max(c.vars()) };
        TensorForm {
            n: self.n,
            degree: self.degree,
            coeffs: vec_scale(&self.coeffs, c, &f),
        }
    }

    /// Tensor product, concatenating the legs.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let f = ScalarField { vars: self.vars().max(other.vars()) };
        let shift = other.dim() as u32;
        let mut coeffs: SparseVec<Scalar> = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let v = f.mul(a, b);
                if !f.is_zero(&v) {
                    coeffs.push((i * shift + j, v));
                }
            }
        }
        coeffs.sort_by_key(|(c, _)| *c);
        TensorForm { n: self.n, degree: self.degree + other.degree, coeffs }
    }

    /// Apply an (N²)^k-dimensional operator to the whole form.
    pub fn apply(&self, m: &SparseMat<Scalar>, f: &ScalarField) -> Self {
        assert_eq!(m.cols(), self.dim());
        let mut out: SparseVec<Scalar> = Vec::new();
        // out = M x: accumulate columns of M indexed by our support.
        let mt = m.transpose();
        for (j, c) in &self.coeffs {
            out = vec_add_scaled(&out, mt.row(*j as usize), c, f);
        }
        TensorForm { n: self.n, degree: self.degree, coeffs: out }
    }

    /// Apply an N²×N² operator to a single leg.
    pub fn apply_on_leg(&self, m: &SparseMat<Scalar>, leg: usize, f: &ScalarField) -> Self {
        assert!(leg < self.degree);
        let n2 = (self.n * self.n) as u32;
        assert_eq!(m.cols(), n2 as usize);
        let stride = n2.pow((self.degree - 1 - leg) as u32);
        let mt = m.transpose();
        let mut out: SparseVec<Scalar> = Vec::new();
        for (idx, c) in &self.coeffs {
            let letter = (idx / stride) % n2;
            let base = idx - letter * stride;
            for (to, w) in mt.row(letter as usize) {
                let v = f.mul(c, w);
                if f.is_zero(&v) {
                    continue;
                }
                out.push((base + to * stride, v));
            }
        }
        out.sort_by_key(|(c, _)| *c);
        // Merge duplicates produced by different source letters.
        let mut merged: SparseVec<Scalar> = Vec::with_capacity(out.len());
        for (c, v) in out {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => {
                    *lv = f.add(lv, &v);
                    if f.is_zero(lv) {
                        merged.pop();
                    }
                }
                _ => merged.push((c, v)),
            }
        }
        TensorForm { n: self.n, degree: self.degree, coeffs: merged }
    }

    /// Decode a flat multi-index into its per-leg letters.
    pub fn letters_of(&self, mut idx: u32) -> Vec<u32> {
        let n2 = (self.n * self.n) as u32;
        let mut out = vec![0u32; self.degree];
        for slot in (0..self.degree).rev() {
            out[slot] = idx % n2;
            idx /= n2;
        }
        out
    }

    fn vars(&self) -> usize {
        self.coeffs.first().map_or(1, |(_, c)| c.vars())
    }
}

/// Flat multi-index from per-leg letters.
pub fn encode_letters(n: usize, letters: &[u32]) -> u32 {
    let n2 = (n * n) as u32;
    letters.iter().fold(0, |acc, l| acc * n2 + l)
}
