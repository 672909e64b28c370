//! The R-matrix layer: parameters of one calculus Γ_{τ,z}, the type-A R̂,
//! Hecke projectors, structure constants, ℓ±-functional tables, the
//! representation f and the right action ◁ on left-invariant forms.

mod action;
mod functab;
mod rmat;

pub use action::{
    f_eval, f_letter, l_eval, row_apply, triangle_action, triangle_letter_ops, Letter, Word,
};
pub use functab::{FuncTable, Scale};
pub use rmat::{hecke_projectors, rhat, rhat_tau};

use crate::error::QError;
use crate::linalg::ScalarField;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tau {
    Plus,
    Minus,
}

impl Tau {
    pub fn sign(self) -> i32 {
        match self {
            Tau::Plus => 1,
            Tau::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    SL,
    GL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// SL: z = t^{∓2} (per τ), q = t^N. The exponent sign is forced: with
    /// x^N = q, the second functional leg ℓ^{∓}_y kills det_q − 1 only when
    /// y^N = q as well, hence (xy)^N = q² and z = (xy)^{∓1} = t^{∓2}. Both
    /// Eq. (rac) identities and the paper's closed θ_τ forms on the 4D±
    /// branches confirm this orientation.
    Principal,
    /// SL, N = 2 only: z = −t^{∓2}.
    Negative,
    /// GL: z = s, a free second indeterminate.
    GenericZ,
}

/// Parameters selecting one calculus Γ_{τ,z} together with the embedding
/// of q, z, x, y into the scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalcParams {
    pub n: usize,
    pub tau: Tau,
    pub group: Group,
    pub branch: Branch,
}

impl CalcParams {
    pub fn new(n: usize, tau: Tau, group: Group, branch: Branch) -> Result<Self, QError> {
        if n < 2 {
            return Err(QError::InvalidParams("N must be at least 2".into()));
        }
        match (group, branch) {
            (Group::SL, Branch::Principal) => {}
            (Group::SL, Branch::Negative) if n == 2 => {}
            (Group::SL, Branch::Negative) => {
                return Err(QError::InvalidParams(
                    "the negative branch exists only for N = 2 (other non-principal \
                     branches would need cyclotomic coefficients)"
                        .into(),
                ));
            }
            (Group::GL, Branch::GenericZ) => {}
            _ => {
                return Err(QError::InvalidParams(
                    "supported branches: SL/principal, SL/negative (N=2), GL/generic-z".into(),
                ));
            }
        }
        let p = CalcParams { n, tau, group, branch };
        let c = p.structure_constants()?;
        debug_assert!(!c.theta_tau.is_zero());
        Ok(p)
    }

    /// Number of scalar-field indeterminates for this branch.
    pub fn vars(&self) -> usize {
        match self.branch {
            Branch::GenericZ => 2,
            _ => 1,
        }
    }

    pub fn field(&self) -> ScalarField {
        ScalarField { vars: self.vars() }
    }

    /// q as an element of the scalar field.
    pub fn q(&self) -> Scalar {
        match self.group {
            Group::SL => Scalar::monomial(1, [self.n as i32, 0], 1),
            Group::GL => Scalar::var(2, 0),
        }
    }

    /// Integer powers of q.
    pub fn q_pow(&self, k: i32) -> Scalar {
        match self.group {
            Group::SL => Scalar::monomial(1, [self.n as i32 * k, 0], 1),
            Group::GL => self.q().pow(k),
        }
    }

    pub fn z(&self) -> Scalar {
        let e = -2 * self.tau.sign();
        match self.branch {
            Branch::Principal => Scalar::monomial(1, [e, 0], 1),
            Branch::Negative => Scalar::monomial(1, [e, 0], -1),
            Branch::GenericZ => Scalar::var(2, 1),
        }
    }

    /// The ℓ⁺-scale x, with x^N = q in SL mode.
    pub fn x(&self) -> Scalar {
        match self.group {
            Group::SL => Scalar::monomial(1, [1, 0], 1),
            Group::GL => Scalar::one(2),
        }
    }

    /// The ℓ⁻-scale y, determined by xy = z^{−1} for τ = + and xy = z for
    /// τ = −.
    pub fn y(&self) -> Scalar {
        let zpow = self.z().pow(-self.tau.sign());
        zpow.div(&self.x()).expect("x is invertible")
    }

    /// The q-integer (n)_q = q⁻² + q⁻⁴ + ⋯ + q^{−2n}.
    pub fn qnum(&self, k: usize) -> Scalar {
        let mut acc = Scalar::zero(self.vars());
        for i in 1..=k {
            acc = acc.add(&self.q_pow(-2 * i as i32));
        }
        acc
    }

    /// Q = q − q⁻¹.
    pub fn big_q(&self) -> Scalar {
        self.q_pow(1).sub(&self.q_pow(-1))
    }

    /// Q₊ = q + q⁻¹.
    pub fn big_q_plus(&self) -> Scalar {
        self.q_pow(1).add(&self.q_pow(-1))
    }

    /// r₊ = q⁻¹Q, r₋ = −q^{−2N−1}Q.
    pub fn r_tau(&self) -> Scalar {
        match self.tau {
            Tau::Plus => self.q_pow(-1).mul(&self.big_q()),
            Tau::Minus => self.q_pow(-2 * self.n as i32 - 1).mul(&self.big_q()).neg(),
        }
    }

    /// Quantum-trace weight of the i-th diagonal slot (zero-based):
    /// q^{−2(N−i)}. In this R̂ convention the bi-invariant element is
    /// ν₁ = Σ_i trace_weight(i)·ν^i_i; the same weights enter U, ω₁, ω₂
    /// and the V± quadratics.
    pub fn trace_weight(&self, i: usize) -> Scalar {
        self.q_pow(-2 * (self.n as i32 - i as i32))
    }

    /// θ_τ = z((N)_q + r_τ) − (N)_q.
    pub fn theta_tau(&self) -> Scalar {
        let nq = self.qnum(self.n);
        self.z().mul(&nq.add(&self.r_tau())).sub(&nq)
    }

    pub fn structure_constants(&self) -> Result<StructureConstants, QError> {
        let theta = self.theta_tau();
        if theta.is_zero() {
            return Err(QError::DegenerateCalculus);
        }
        Ok(StructureConstants {
            qnums: (0..=self.n).map(|k| self.qnum(k)).collect(),
            big_q: self.big_q(),
            big_q_plus: self.big_q_plus(),
            r_tau: self.r_tau(),
            theta_tau: theta,
        })
    }
}

/// The paper's deformation constants in canonical form.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    /// (0)_q, (1)_q, …, (N)_q.
    pub qnums: Vec<Scalar>,
    pub big_q: Scalar,
    pub big_q_plus: Scalar,
    pub r_tau: Scalar,
    pub theta_tau: Scalar,
}
