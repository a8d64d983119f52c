//! Canonical realization of a spin system on `(C^p)^{(x) r}`.
//!
//! With a symplectic basis `(e_i, f_i)` of a complement of the kernel, `e_i`
//! acts as the shift `S` on tensor slot `i` and `f_i` as the clock `V`, so that
//! `SV = zeta VS` realizes `omega(e_i, f_i) = 1`. A generator `u_k` is sent to
//! `phase_k * (x)_i S^{a_i} V^{b_i}` with `a_i = omega(u_k, f_i)` and
//! `b_i = omega(e_i, u_k)`; the phase is the smallest one making `U_k^p = 1`.
//! Products of such labels are tracked symbolically here; the representation
//! module turns them into monomial matrices.

use crate::gf::{GfVector, Prime};
use crate::phase::PhaseExp;
use crate::symplectic::{symplectic_basis, CommutationMatrix, SymplecticBasis};

/// `phase * (x)_i S^{a_i} V^{b_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylLabel {
    pub phase: PhaseExp,
    pub a: Vec<u8>,
    pub b: Vec<u8>,
}

impl WeylLabel {
    pub fn identity(p: Prime, r: usize) -> Self {
        WeylLabel { phase: PhaseExp::one(p), a: vec![0; r], b: vec![0; r] }
    }

    /// `S^a V^b S^a' V^b' = zeta^{-a'b} S^{a+a'} V^{b+b'}` slot by slot.
    pub fn mul(&self, other: &WeylLabel) -> WeylLabel {
        let p = self.phase.modulus();
        let twist: i64 = other.a.iter().zip(&self.b).map(|(&a2, &b1)| a2 as i64 * b1 as i64).sum();
        WeylLabel {
            phase: self.phase.mul(other.phase).mul(PhaseExp::zeta_pow(p, -twist)),
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| p.add(x, y)).collect(),
            b: self.b.iter().zip(&other.b).map(|(&x, &y)| p.add(x, y)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> WeylLabel {
        let mut acc = WeylLabel::identity(self.phase.modulus(), self.a.len());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_scalar(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&v| v == 0)
    }
}

/// The symplectic basis used and the label of every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRealization {
    pub basis: SymplecticBasis,
    pub generators: Vec<WeylLabel>,
}

pub fn canonical_realization(c: &CommutationMatrix) -> CanonicalRealization {
    let p = c.modulus();
    let n = c.n();
    let basis = symplectic_basis(c);
    let generators = (0..n)
        .map(|k| {
            let u = GfVector::unit(p, n, k);
            let a: Vec<u8> = basis.f.iter().map(|f| c.omega_raw(u.as_slice(), f.as_slice())).collect();
            let b: Vec<u8> = basis.e.iter().map(|e| c.omega_raw(e.as_slice(), u.as_slice())).collect();
            // (S^a V^b)^2 = (-1)^{ab}; odd p needs no correction
            let phase = if p == Prime::TWO {
                let ab: u32 = a.iter().zip(&b).map(|(&x, &y)| (x & y) as u32).sum();
                PhaseExp::new(p, (ab % 2) as i64)
            } else {
                PhaseExp::one(p)
            };
            WeylLabel { phase, a, b }
        })
        .collect();
    CanonicalRealization { basis, generators }
}

impl CanonicalRealization {
    /// `U_1^{x_1} ... U_n^{x_n}` as a label.
    pub fn word(&self, x: &[u8]) -> WeylLabel {
        let p = self.basis_modulus();
        let mut acc = WeylLabel::identity(p, self.basis.r());
        for (g, &xk) in self.generators.iter().zip(x) {
            acc = acc.mul(&g.pow(xk as u32));
        }
        acc
    }

    fn basis_modulus(&self) -> Prime {
        self.generators[0].phase.modulus()
    }
}
