//! Subspaces in reduced row-echelon form and their lattice operations.

use super::elim::Echelon;
use super::field::FieldCtx;
use super::{vec_add_scaled, SparseVec};
use crate::error::QError;

/// A linear subspace given by a reduced row-echelon basis: pivot columns
/// strictly increasing, pivots equal to 1, pivot columns eliminated from
/// the other rows. The echelon form is canonical, so equality of subspaces
/// is equality of bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<E> {
    ambient: usize,
    rows: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full<F: FieldCtx<E = E>>(ambient: usize, f: &F) -> Self {
        let rows = (0..ambient).map(|i| vec![(i as u32, f.one())]).collect();
        Subspace { ambient, rows }
    }

    /// Echelonize a spanning set.
    pub fn from_span<F: FieldCtx<E = E>>(
        ambient: usize,
        span: impl IntoIterator<Item = SparseVec<E>>,
        f: &F,
    ) -> Self {
        let mut ech = Echelon::new(f.clone(), ambient);
        for row in span {
            ech.insert(&row);
        }
        Subspace { ambient, rows: ech.sorted_rows() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec<E>] {
        &self.rows
    }

    fn echelon<F: FieldCtx<E = E>>(&self, f: &F) -> Echelon<F> {
        let mut ech = Echelon::new(f.clone(), self.ambient);
        for row in &self.rows {
            ech.insert(row);
        }
        ech
    }

    /// Residue of `v` modulo this subspace.
    pub fn reduce<F: FieldCtx<E = E>>(&self, v: &SparseVec<E>, f: &F) -> SparseVec<E> {
        self.echelon(f).reduce(v)
    }

    pub fn contains<F: FieldCtx<E = E>>(&self, v: &SparseVec<E>, f: &F) -> bool {
        self.reduce(v, f).is_empty()
    }

    pub fn sum<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> Result<Self, QError> {
        if self.ambient != other.ambient {
            return Err(QError::DimensionMismatch(self.ambient, other.ambient));
        }
        Ok(Self::from_span(
            self.ambient,
            self.rows.iter().chain(other.rows.iter()).cloned(),
            f,
        ))
    }

    /// Intersection by the kernel-of-stacked-bases method: solve
    /// lambda * A = mu * B over the coefficient spaces.
    pub fn intersect<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> Result<Self, QError> {
        if self.ambient != other.ambient {
            return Err(QError::DimensionMismatch(self.ambient, other.ambient));
        }
        let a = self.rows.len();
        let b = other.rows.len();
        // Constraint matrix: one row per ambient coordinate, columns are
        // the coefficients (lambda, mu); kernel rows satisfy
        // lambda * A - mu * B = 0.
        let mut cons: Vec<SparseVec<E>> = vec![Vec::new(); self.ambient];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                cons[*j as usize].push((i as u32, v.clone()));
            }
        }
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                cons[*j as usize].push(((a + i) as u32, f.neg(v)));
            }
        }
        let mut ech = Echelon::new(f.clone(), a + b);
        for mut c in cons {
            c.sort_by_key(|(j, _)| *j);
            if !c.is_empty() {
                ech.insert(&c);
            }
        }
        let span = ech.kernel_rows().into_iter().map(|lam_mu| {
            let mut acc: SparseVec<E> = Vec::new();
            for (idx, c) in lam_mu {
                if (idx as usize) < a {
                    acc = vec_add_scaled(&acc, &self.rows[idx as usize], &c, f);
                }
            }
            acc
        });
        Ok(Self::from_span(self.ambient, span, f))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }

    pub fn is_subspace_of<F: FieldCtx<E = E>>(&self, other: &Self, f: &F) -> bool {
        let ech = other.echelon(f);
        self.rows.iter().all(|r| ech.reduce(r).is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PrimeField;

    fn e(i: u32) -> SparseVec<u64> {
        vec![(i, 1u64)]
    }

    #[test]
    fn member_and_intersect() {
        let f = PrimeField::new(2147483659);
        let a = Subspace::from_span(4, vec![e(0), e(1)], &f);
        let b = Subspace::from_span(4, vec![e(1), e(2)], &f);
        assert!(a.contains(&vec![(0, 1), (1, 1)], &f));
        assert!(!a.contains(&e(2), &f));
        let i = a.intersect(&b, &f).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&e(1), &f));
        let s = a.sum(&b, &f).unwrap();
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn canonical_equality() {
        let f = PrimeField::new(2147483659);
        let a = Subspace::from_span(3, vec![vec![(0, 1), (1, 2)], vec![(1, 1), (2, 3)]], &f);
        let b = Subspace::from_span(
            3,
            vec![vec![(0, 2), (1, 4)], vec![(0, 1), (1, 3), (2, 3)]],
            &f,
        );
        assert!(a.equals(&b));
    }

    #[test]
    fn mismatch_errors() {
        let f = PrimeField::new(2147483659);
        let a = Subspace::<u64>::from_span(3, vec![e(0)], &f);
        let b = Subspace::<u64>::from_span(4, vec![e(0)], &f);
        assert!(a.sum(&b, &f).is_err());
        assert!(a.intersect(&b, &f).is_err());
    }
}
