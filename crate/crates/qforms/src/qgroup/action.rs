//! The representation f of Γ_{τ,z} and the right 𝒜-action ◁ on
//! left-invariant forms.
//!
//! Row-vector convention: ν_I ◁ a = Σ_J f^I_J(a) ν_J, so a coefficient
//! vector acts on the right of the f-matrix and f is multiplicative in
//! word order, f(w₁w₂) = f(w₁)·f(w₂).

use super::functab::{FuncTable, Scale};
use super::Tau;
use crate::form::TensorForm;
use crate::linalg::{vec_add_scaled, FieldCtx, ScalarField, SparseMat, SparseVec};

/// One generator letter S^spow(u^i_j), zero-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub i: usize,
    pub j: usize,
    pub spow: usize,
}

impl Letter {
    pub fn u(i: usize, j: usize) -> Self {
        Letter { i, j, spow: 0 }
    }

    pub fn s_u(i: usize, j: usize) -> Self {
        Letter { i, j, spow: 1 }
    }
}

pub type Word = Vec<Letter>;

/// ℓ^{sign}_x evaluated on a word: the matrix product of per-letter
/// tables; the empty word gives the identity (unitality).
pub fn l_eval<F: FieldCtx>(t: &FuncTable<F>, sign: Tau, word: &[Letter]) -> SparseMat<F::E> {
    let f = t.ctx().clone();
    let mut acc = SparseMat::identity(t.n(), &f);
    for l in word {
        acc = acc.mul(&t.letter(sign, Scale::X, l.spow, l.i, l.j), &f);
    }
    acc
}

/// f on a single letter: the N²×N² matrix with f^{(i1,i2)}_{(j1,j2)}.
/// The first leg is ℓ^τ_x, the second the contragredient ℓ^{−τ,c}_y,
/// i.e. (i2,j2) ↦ ℓ^{−τ,j2}_{i2}(S·). The coproduct of S^p(u^m_n) chains
/// forward for even p and backward for odd p.
pub fn f_letter<F: FieldCtx>(t: &FuncTable<F>, l: &Letter) -> SparseMat<F::E> {
    let n = t.n();
    let f = t.ctx().clone();
    let tau = t.tau();
    let cot = if tau == Tau::Plus { Tau::Minus } else { Tau::Plus };
    let mut out = SparseMat::zero(n * n, n * n);
    for k in 0..n {
        // Leg letters: p even: (m,k) ⊗ S(u^k_n); p odd: (k,n) ⊗ S(u^m_k).
        let (a1, b1, a2, b2) = if l.spow % 2 == 0 {
            (l.i, k, k, l.j)
        } else {
            (k, l.j, l.i, k)
        };
        let first = t.letter(tau, Scale::X, l.spow, a1, b1);
        let second = t.letter(cot, Scale::Y, l.spow + 1, a2, b2);
        for i1 in 0..n {
            for j1 in 0..n {
                let v1 = first.get(i1, j1, &f);
                if f.is_zero(&v1) {
                    continue;
                }
                for i2 in 0..n {
                    for j2 in 0..n {
                        let v2 = second.get(j2, i2, &f);
                        if f.is_zero(&v2) {
                            continue;
                        }
                        out.add_at(i1 * n + i2, j1 * n + j2, f.mul(&v1, &v2), &f);
                    }
                }
            }
        }
    }
    out
}

/// f on a word: the product of the per-letter matrices.
pub fn f_eval<F: FieldCtx>(t: &FuncTable<F>, word: &[Letter]) -> SparseMat<F::E> {
    let f = t.ctx().clone();
    let n2 = t.n() * t.n();
    let mut acc = SparseMat::identity(n2, &f);
    for l in word {
        acc = acc.mul(&f_letter(t, l), &f);
    }
    acc
}

/// The (N²)^k-dimensional operators of one matrix letter S^p(u^m_n) on
/// Γ_ℓ^{⊗k}, all N² letters at once (they chain through shared internal
/// indices). Row-vector convention as for `f_eval`.
pub fn triangle_letter_ops<F: FieldCtx>(
    t: &FuncTable<F>,
    degree: usize,
    spow: usize,
) -> Vec<SparseMat<F::E>> {
    let n = t.n();
    let f = t.ctx().clone();
    // Degree 0: the counit, ε(S^p u^m_n) = δ^m_n.
    let mut level: Vec<SparseMat<F::E>> = (0..n * n)
        .map(|mn| {
            let mut m = SparseMat::zero(1, 1);
            if mn / n == mn % n {
                m.set(0, 0, f.one(), &f);
            }
            m
        })
        .collect();
    for _ in 0..degree {
        let mut next = Vec::with_capacity(n * n);
        for m in 0..n {
            for nn in 0..n {
                let dim = level[0].rows() * n * n;
                let mut acc = SparseMat::zero(dim, dim);
                for k in 0..n {
                    let (first, rest) = if spow % 2 == 0 {
                        (Letter { i: m, j: k, spow }, k * n + nn)
                    } else {
                        (Letter { i: k, j: nn, spow }, m * n + k)
                    };
                    let fl = f_letter(t, &first);
                    acc = acc.add(&fl.kron(&level[rest], &f), &f);
                }
                next.push(acc);
            }
        }
        level = next;
    }
    level
}

/// Right action of a word on a form: x ◁ (w₁w₂) = (x ◁ w₁) ◁ w₂.
pub fn triangle_action(
    t: &FuncTable<ScalarField>,
    x: &TensorForm,
    word: &[Letter],
) -> TensorForm {
    let f = t.ctx().clone();
    let mut coeffs: SparseVec<crate::scalar::Scalar> = x.coeffs().clone();
    for l in word {
        let ops = triangle_letter_ops(t, x.degree(), l.spow);
        let op = &ops[l.i * t.n() + l.j];
        coeffs = row_apply(&coeffs, op, &f);
    }
    TensorForm::from_coeffs(x.n(), x.degree(), coeffs)
}

/// Row-vector times matrix: Σ_I x_I · M.row(I).
pub fn row_apply<F: FieldCtx>(
    x: &SparseVec<F::E>,
    m: &SparseMat<F::E>,
    f: &F,
) -> SparseVec<F::E> {
    let mut out: SparseVec<F::E> = Vec::new();
    for (i, c) in x {
        out = vec_add_scaled(&out, m.row(*i as usize), c, f);
    }
    out
}
