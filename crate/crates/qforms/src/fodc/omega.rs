//! The maps ω and 𝒮 and the truncated right ideal ℛ = ker ε ∩ ker ω.
//!
//! ω is computed by the ◁-recursion ω(a·b) = ω(a)◁b + ε(a)·ω(b) seeded
//! with Eq. (zero) on the generators; 𝒮(a) = Σ ω(a₍₁₎)⊗ω(a₍₂₎) expands the
//! coproduct letterwise. An equivalent closed form, ω(a) = ν₁◁a − ε(a)ν₁,
//! follows from Eq. (inner) and serves as an independent oracle in tests.

use super::free::{counit_word, FreeElem};
use crate::error::QError;
use crate::form::TensorForm;
use crate::linalg::{
    kernel_basis, vec_add_scaled, FieldCtx, ScalarField, SparseMat, SparseVec, Subspace,
};
use crate::qgroup::{f_eval, row_apply, CalcParams, FuncTable, Letter};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// Guard on the number of words enumerated by the truncation.
const WORD_LIMIT: usize = 100_000;

/// Shared context for the first-order-calculus maps: the per-letter
/// f-matrices of the right action, the bi-invariant ν₁ and the ω-generators
/// in the ν-basis.
pub struct OmegaCtx {
    p: CalcParams,
    f: ScalarField,
    /// f(u^i_j) for each letter index i·N + j.
    fmats: Vec<SparseMat<Scalar>>,
    nu1: TensorForm,
    /// ω^i_j = z·r_τ·ν^i_j + (z−1)·δ^i_j·ν₁ per Eq. (zero).
    omega_gen: Vec<TensorForm>,
}

/// Truncated ideal data: ℛ_D inside the span of words of length ≤ D, and
/// the span of 𝒮 over it inside Γ_ℓ⊗Γ_ℓ.
pub struct RIdealTrunc {
    pub degree: usize,
    pub word_count: usize,
    pub r_d: Subspace<Scalar>,
    pub s_span: Subspace<Scalar>,
}

impl OmegaCtx {
    pub fn new(p: &CalcParams) -> Result<Self, QError> {
        let t = FuncTable::for_params(p)?;
        let n = p.n;
        let f = p.field();
        let fmats: Vec<SparseMat<Scalar>> = (0..n * n)
            .map(|l| f_eval(&t, &[Letter::u(l / n, l % n)]))
            .collect();
        let nu1 = nu1_form(p);
        let zr = p.z().mul(&p.r_tau());
        let zm1 = p.z().sub(&Scalar::one(p.vars()));
        let omega_gen = (0..n * n)
            .map(|l| {
                let (i, j) = (l / n, l % n);
                let mut w = TensorForm::nu(n, &f, i, j).scale(&zr);
                if i == j {
                    w = w.add(&nu1.scale(&zm1));
                }
                w
            })
            .collect();
        Ok(OmegaCtx { p: *p, f, fmats, nu1, omega_gen })
    }

    pub fn params(&self) -> &CalcParams {
        &self.p
    }

    pub fn field(&self) -> &ScalarField {
        &self.f
    }

    pub fn nu1(&self) -> &TensorForm {
        &self.nu1
    }

    /// ω^i_j in the ν-basis.
    pub fn omega_gen(&self, i: usize, j: usize) -> &TensorForm {
        &self.omega_gen[i * self.p.n + j]
    }

    /// ω₁ = Σ_i trace_weight(i)·ω^i_i (equal to θ_τ·ν₁).
    pub fn omega1(&self) -> TensorForm {
        let n = self.p.n;
        let mut acc = TensorForm::zero(n, 1);
        for i in 0..n {
            acc = acc.add(&self.omega_gen(i, i).scale(&self.p.trace_weight(i)));
        }
        acc
    }

    /// ω₂ = Σ_{i,m} trace_weight(i)·ω^i_m ⊗ ω^m_i.
    pub fn omega2(&self) -> TensorForm {
        let n = self.p.n;
        let mut acc = TensorForm::zero(n, 2);
        for i in 0..n {
            let w = self.p.trace_weight(i);
            for m in 0..n {
                acc = acc.add(&self.omega_gen(i, m).tensor(self.omega_gen(m, i)).scale(&w));
            }
        }
        acc
    }

    /// Right action of a single letter on a degree-1 coefficient vector.
    fn act_letter(&self, coeffs: &SparseVec<Scalar>, l: u16) -> SparseVec<Scalar> {
        row_apply(coeffs, &self.fmats[l as usize], &self.f)
    }

    /// ω on a word by the prefix recursion
    /// ω(w·l) = ω(w)◁l + ε(w)·ω(l), ω(∅) = 0.
    pub fn omega_word(&self, w: &[u16]) -> TensorForm {
        let mut acc: SparseVec<Scalar> = Vec::new();
        let mut eps = true;
        for &l in w {
            acc = self.act_letter(&acc, l);
            if eps {
                acc = vec_add_scaled(
                    &acc,
                    self.omega_gen[l as usize].coeffs(),
                    &self.f.one(),
                    &self.f,
                );
            }
            eps = eps && counit_word(self.p.n, &[l]);
        }
        TensorForm::from_coeffs(self.p.n, 1, acc)
    }

    /// ω extended linearly.
    pub fn omega(&self, a: &FreeElem) -> TensorForm {
        let mut acc = TensorForm::zero(self.p.n, 1);
        for (w, c) in a.terms() {
            acc = acc.add(&self.omega_word(w).scale(c));
        }
        acc
    }

    /// 𝒮 on a word: Δ expanded letterwise through one internal index per
    /// letter, ω applied on both legs.
    pub fn s_word(&self, w: &[u16]) -> TensorForm {
        let mut acc = TensorForm::zero(self.p.n, 2);
        for_each_split(self.p.n, w, |left, right| {
            acc = acc.add(&self.omega_word(left).tensor(&self.omega_word(right)));
        });
        acc
    }

    /// 𝒮(a) = Σ ω(a₍₁₎)⊗ω(a₍₂₎), linear extension.
    pub fn s_map(&self, a: &FreeElem) -> TensorForm {
        let mut acc = TensorForm::zero(self.p.n, 2);
        for (w, c) in a.terms() {
            acc = acc.add(&self.s_word(w).scale(c));
        }
        acc
    }

    /// ℛ_D = ker ε ∩ ker ω on the span of words of length 1..=D, and the
    /// span of 𝒮 over a basis of ℛ_D. Free-algebra overcounting is
    /// harmless: words representing 0 in 𝒜 lie in ℛ_D and map to 0.
    pub fn r_ideal_truncated(&self, d: usize) -> Result<RIdealTrunc, QError> {
        assert!(d >= 1, "truncation degree must be at least 1");
        let n = self.p.n;
        let n2 = n * n;
        let count = word_offset(n2, d + 1);
        if count > WORD_LIMIT {
            return Err(QError::ResourceLimit(format!(
                "{count} words of length <= {d} exceed the truncation budget"
            )));
        }
        // ω of every word, level by level via the prefix recursion.
        let mut omegas: Vec<SparseVec<Scalar>> = Vec::with_capacity(count);
        let mut eps: Vec<bool> = Vec::with_capacity(count);
        for l in 0..n2 {
            omegas.push(self.omega_gen[l].coeffs().clone());
            eps.push(l / n == l % n);
        }
        for len in 2..=d {
            let lo = word_offset(n2, len - 1);
            let hi = word_offset(n2, len);
            let level: Vec<(SparseVec<Scalar>, bool)> = (lo..hi)
                .into_par_iter()
                .flat_map_iter(|pfx| {
                    let pw = &omegas[pfx];
                    let pe = eps[pfx];
                    (0..n2).map(move |l| (pfx, pe, pw, l))
                })
                .map(|(_, pe, pw, l)| {
                    let mut acc = self.act_letter(pw, l as u16);
                    if pe {
                        acc = vec_add_scaled(
                            &acc,
                            self.omega_gen[l].coeffs(),
                            &self.f.one(),
                            &self.f,
                        );
                    }
                    (acc, pe && l / n == l % n)
                })
                .collect();
            for (o, e) in level {
                omegas.push(o);
                eps.push(e);
            }
        }
        // Constraint rows: ε and each ω-coordinate, over the word span.
        let mut cons: Vec<SparseVec<Scalar>> = vec![Vec::new(); 1 + n2];
        for w in 0..count {
            if eps[w] {
                cons[0].push((w as u32, self.f.one()));
            }
            for (c, v) in &omegas[w] {
                cons[1 + *c as usize].push((w as u32, v.clone()));
            }
        }
        let cmat = SparseMat::from_rows(1 + n2, count, cons);
        let kernel = kernel_basis(&cmat, &self.f);
        // 𝒮 of every word, then of each kernel basis vector.
        let svals: Vec<SparseVec<Scalar>> = (0..count)
            .into_par_iter()
            .map(|w| {
                let mut acc = TensorForm::zero(n, 2);
                for_each_split(n, &index_word(n2, w), |left, right| {
                    let lo = lookup(&omegas, n2, left);
                    let ro = lookup(&omegas, n2, right);
                    let lt = TensorForm::from_coeffs(n, 1, lo);
                    let rt = TensorForm::from_coeffs(n, 1, ro);
                    acc = acc.add(&lt.tensor(&rt));
                });
                acc.into_coeffs()
            })
            .collect();
        let span_rows: Vec<SparseVec<Scalar>> = kernel
            .par_iter()
            .map(|kv| {
                let mut acc: SparseVec<Scalar> = Vec::new();
                for (w, c) in kv {
                    acc = vec_add_scaled(&acc, &svals[*w as usize], c, &self.f);
                }
                acc
            })
            .collect();
        let r_d = Subspace::from_span(count, kernel, &self.f);
        let s_span = Subspace::from_span(n2 * n2, span_rows, &self.f);
        Ok(RIdealTrunc { degree: d, word_count: count, r_d, s_span })
    }
}

/// ν₁ = Σ_i trace_weight(i)·ν^i_i, the bi-invariant 1-form.
pub fn nu1_form(p: &CalcParams) -> TensorForm {
    let f = p.field();
    let mut acc = TensorForm::zero(p.n, 1);
    for i in 0..p.n {
        acc = acc.add(&TensorForm::nu(p.n, &f, i, i).scale(&p.trace_weight(i)));
    }
    acc
}

/// Visit the letterwise coproduct splits of a word: for letters (i_k, j_k)
/// and every choice of internal indices m_k, the pair of words with
/// letters (i_k, m_k) and (m_k, j_k).
fn for_each_split(n: usize, w: &[u16], mut visit: impl FnMut(&[u16], &[u16])) {
    let d = w.len();
    let mut mid = vec![0usize; d];
    let mut left = vec![0u16; d];
    let mut right = vec![0u16; d];
    loop {
        for k in 0..d {
            let (i, j) = (w[k] as usize / n, w[k] as usize % n);
            left[k] = (i * n + mid[k]) as u16;
            right[k] = (mid[k] * n + j) as u16;
        }
        visit(&left, &right);
        // Increment the mixed-radix counter; empty words split once.
        let mut k = 0;
        loop {
            if k == d {
                return;
            }
            mid[k] += 1;
            if mid[k] < n {
                break;
            }
            mid[k] = 0;
            k += 1;
        }
    }
}

/// First index of words of length `len` (1-based lengths; offset(1) = 0).
fn word_offset(n2: usize, len: usize) -> usize {
    // Σ_{d=1}^{len-1} n2^d
    let mut acc = 0usize;
    let mut p = 1usize;
    for _ in 1..len {
        p *= n2;
        acc += p;
    }
    acc
}

/// Word of a global index: base-n² digits of the in-level rank.
fn index_word(n2: usize, idx: usize) -> Vec<u16> {
    let mut len = 1;
    while word_offset(n2, len + 1) <= idx {
        len += 1;
    }
    let mut rank = idx - word_offset(n2, len);
    let mut out = vec![0u16; len];
    for slot in (0..len).rev() {
        out[slot] = (rank % n2) as u16;
        rank /= n2;
    }
    out
}

fn lookup(omegas: &[SparseVec<Scalar>], n2: usize, w: &[u16]) -> SparseVec<Scalar> {
    let rank = w.iter().fold(0usize, |acc, l| acc * n2 + *l as usize);
    omegas[word_offset(n2, w.len()) + rank].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{triangle_action, Branch, Group, Tau, Word};
    use crate::scalar::parse_scalar;

    fn ctx(n: usize, tau: Tau, branch: Branch) -> OmegaCtx {
        let group = if branch == Branch::GenericZ { Group::GL } else { Group::SL };
        let p = CalcParams::new(n, tau, group, branch).unwrap();
        OmegaCtx::new(&p).unwrap()
    }

    #[test]
    fn omega_of_u_is_theta_nu1() {
        // ω(U) = θ_τ ν₁ for U = Σ trace_weight(i) u^i_i.
        for tau in [Tau::Plus, Tau::Minus] {
            for (n, branch) in [(2, Branch::Principal), (2, Branch::Negative), (3, Branch::Principal)] {
                let c = ctx(n, tau, branch);
                let p = *c.params();
                let mut u = FreeElem::zero(n, p.vars());
                for i in 0..n {
                    u = u.add(&FreeElem::letter(n, p.vars(), i, i).scale(&p.trace_weight(i)));
                }
                assert_eq!(c.omega(&u), c.nu1().scale(&p.theta_tau()));
                assert_eq!(c.omega1(), c.nu1().scale(&p.theta_tau()));
            }
        }
    }

    #[test]
    fn omega_matches_inner_formula() {
        // Independent oracle from Eq. (inner): ω(a) = ν₁ ◁ a − ε(a)ν₁,
        // checked on all words of length ≤ 2 at N = 2.
        let c = ctx(2, Tau::Plus, Branch::Principal);
        let p = *c.params();
        let t = FuncTable::for_params(&p).unwrap();
        let mut words: Vec<Vec<u16>> = (0..4u16).map(|l| vec![l]).collect();
        for a in 0..4u16 {
            for b in 0..4u16 {
                words.push(vec![a, b]);
            }
        }
        for w in words {
            let letters: Word = w
                .iter()
                .map(|l| Letter::u(*l as usize / 2, *l as usize % 2))
                .collect();
            let mut oracle = triangle_action(&t, c.nu1(), &letters);
            if counit_word(2, &w) {
                oracle = oracle.sub(c.nu1());
            }
            assert_eq!(c.omega_word(&w), oracle, "word {w:?}");
        }
    }

    #[test]
    fn s_kills_relation_words() {
        // RTT relation combinations vanish in 𝒜, so ε, ω and 𝒮 all kill
        // them: ab − q⁻¹ba, ac − q⁻¹ca, cb − bc, da − ad − Q·bc, and the
        // determinant relation ad − q⁻¹bc − 1.
        for tau in [Tau::Plus, Tau::Minus] {
            let c = ctx(2, tau, Branch::Principal);
            let p = *c.params();
            let v = p.vars();
            let g = |i: usize, j: usize| FreeElem::letter(2, v, i, j);
            let (a, b, bb, cc, d) = (g(0, 0), g(0, 1), g(0, 1), g(1, 0), g(1, 1));
            let q_inv = p.q_pow(-1);
            let rels = [
                a.mul(&b).sub(&b.mul(&a).scale(&q_inv)),
                a.mul(&cc).sub(&cc.mul(&a).scale(&q_inv)),
                cc.mul(&bb).sub(&bb.mul(&cc)),
                d.mul(&a).sub(&a.mul(&d)).sub(&bb.mul(&cc).scale(&p.big_q())),
                a.mul(&d)
                    .sub(&bb.mul(&cc).scale(&q_inv))
                    .sub(&FreeElem::one(2, v)),
            ];
            for (k, r) in rels.iter().enumerate() {
                assert!(super::super::free::counit(r).is_zero(), "eps rel {k}");
                assert!(c.omega(r).is_zero(), "omega rel {k}");
                assert!(c.s_map(r).is_zero(), "S rel {k}");
            }
        }
    }

    #[test]
    fn s_of_b_squared() {
        // SL_q(2): 𝒮(b²) = (q + q⁻¹)·ω(b)⊗ω(b).
        let c = ctx(2, Tau::Plus, Branch::Principal);
        let b = FreeElem::letter(2, 1, 0, 1);
        let qp = parse_scalar("t^2 + t^-2", 1).unwrap();
        let wb = c.omega(&b);
        assert!(!wb.is_zero());
        assert_eq!(c.s_map(&b.mul(&b)), wb.tensor(&wb).scale(&qp));
    }

    #[test]
    fn s_span_dimension_4d() {
        // dim 𝒮(ℛ) = 9 for the 4D± calculi, stable from D = 2 on, and
        // ν₁⊗ν₁ stays outside.
        for tau in [Tau::Plus, Tau::Minus] {
            for branch in [Branch::Principal, Branch::Negative] {
                let c = ctx(2, tau, branch);
                let t2 = c.r_ideal_truncated(2).unwrap();
                assert_eq!(t2.s_span.dim(), 9, "{tau:?} {branch:?}");
                let t3 = c.r_ideal_truncated(3).unwrap();
                assert!(t2.s_span.equals(&t3.s_span), "stabilization {tau:?} {branch:?}");
                let nn = c.nu1().tensor(c.nu1());
                assert!(!t2.s_span.contains(nn.coeffs(), c.field()));
            }
        }
    }
}
