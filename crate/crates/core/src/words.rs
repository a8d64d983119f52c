//! Exact arithmetic with words `lambda * w_x` and standard invariants.
//!
//! A word is a phase (exponent mod `p^2`) and an exponent vector `x`, standing
//! for `lambda * u_1^{x_1} ... u_n^{x_n}`. Multiplication follows the Weyl rule
//! `w_x w_y = zeta^{Q(x,y)} w_{x+y}`, and `w_x w_y = zeta^{omega(x,y)} w_y w_x`.
//!
//! Standard invariants (the scalar values of central words in an irreducible
//! system) and the classification built on them are only defined for `p = 2`;
//! those operations return [`Error::RequiresCharacteristicTwo`] otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{extend_functional, GfMatrix, GfScalar, GfVector, Prime};
use crate::phase::PhaseExp;
use crate::symplectic::{form_kernel, CommutationMatrix};
use crate::weyl::canonical_realization;

/// `phase * w_x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub phase: PhaseExp,
    pub x: GfVector,
}

impl Word {
    pub fn identity(p: Prime, n: usize) -> Self {
        Word { phase: PhaseExp::one(p), x: GfVector::zeros(p, n) }
    }

    /// The bare word `w_x`.
    pub fn bare(x: GfVector) -> Self {
        Word { phase: PhaseExp::one(x.modulus()), x }
    }

    pub fn is_identity(&self) -> bool {
        self.phase.is_one() && self.x.is_zero()
    }
}

fn check_len(c: &CommutationMatrix, x: &GfVector) -> Result<()> {
    c.modulus().expect_same(x.modulus())?;
    if x.len() != c.n() {
        return Err(Error::LengthMismatch { expected: c.n(), found: x.len() });
    }
    Ok(())
}

pub fn word_mul(c: &CommutationMatrix, a: &Word, b: &Word) -> Result<Word> {
    check_len(c, &a.x)?;
    check_len(c, &b.x)?;
    let p = c.modulus();
    let q = c.q_raw(a.x.as_slice(), b.x.as_slice());
    Ok(Word { phase: a.phase.mul(b.phase).mul(PhaseExp::zeta_pow(p, q as i64)), x: a.x.add(&b.x)? })
}

pub fn word_pow(c: &CommutationMatrix, w: &Word, k: u32) -> Result<Word> {
    let mut acc = Word::identity(c.modulus(), c.n());
    for _ in 0..k {
        acc = word_mul(c, &acc, w)?;
    }
    Ok(acc)
}

/// `p * omega(x, y)` as a phase exponent: `w_x w_y = phase * w_y w_x`.
pub fn commutation_phase(c: &CommutationMatrix, x: &GfVector, y: &GfVector) -> Result<PhaseExp> {
    check_len(c, x)?;
    check_len(c, y)?;
    Ok(PhaseExp::zeta_pow(c.modulus(), c.omega_raw(x.as_slice(), y.as_slice()) as i64))
}

/// `lambda_x w_x` with `(lambda_x w_x)^p = 1`: `lambda_x = i^{Q(x,x)}` for
/// `p = 2` and `1` for odd `p`.
pub fn normalize(c: &CommutationMatrix, x: &GfVector) -> Result<Word> {
    check_len(c, x)?;
    let p = c.modulus();
    let phase = if p == Prime::TWO {
        PhaseExp::new(p, c.q_raw(x.as_slice(), x.as_slice()) as i64)
    } else {
        PhaseExp::one(p)
    };
    Ok(Word { phase, x: x.clone() })
}

/// True iff `w_x` commutes with every generator, i.e. `x` is in the kernel.
pub fn is_central(c: &CommutationMatrix, x: &GfVector) -> Result<bool> {
    check_len(c, x)?;
    Ok(c.left_functional(x.as_slice()).iter().all(|&v| v == 0))
}

/// A function on the kernel of `omega`, stored by its values on the
/// canonical kernel basis (see [`form_kernel`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardInvariant {
    c: CommutationMatrix,
    kernel_basis: Vec<GfVector>,
    values: Vec<PhaseExp>,
}

/// On-disk form: `{"kernel_basis": [[...]], "values_exp_mod_p2": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantJson {
    pub kernel_basis: Vec<Vec<u32>>,
    pub values_exp_mod_p2: Vec<u32>,
}

impl StandardInvariant {
    pub fn new(c: &CommutationMatrix, values: Vec<PhaseExp>) -> Result<Self> {
        let kernel_basis = form_kernel(c);
        if values.len() != kernel_basis.len() {
            return Err(Error::LengthMismatch { expected: kernel_basis.len(), found: values.len() });
        }
        for v in &values {
            c.modulus().expect_same(v.modulus())?;
        }
        Ok(StandardInvariant { c: c.clone(), kernel_basis, values })
    }

    pub fn from_exps(c: &CommutationMatrix, exps: &[i64]) -> Result<Self> {
        let p = c.modulus();
        Self::new(c, exps.iter().map(|&e| PhaseExp::new(p, e)).collect())
    }

    pub fn matrix(&self) -> &CommutationMatrix {
        &self.c
    }

    pub fn kernel_basis(&self) -> &[GfVector] {
        &self.kernel_basis
    }

    pub fn values(&self) -> &[PhaseExp] {
        &self.values
    }

    pub fn to_json(&self) -> InvariantJson {
        InvariantJson {
            kernel_basis: self.kernel_basis.iter().map(|k| k.as_slice().iter().map(|&v| v as u32).collect()).collect(),
            values_exp_mod_p2: self.values.iter().map(|v| v.exp()).collect(),
        }
    }

    /// Rebuilds from JSON; the kernel basis must equal the canonical one for `c`.
    pub fn from_json(c: &CommutationMatrix, json: &InvariantJson) -> Result<Self> {
        let p = c.modulus();
        let basis = json.kernel_basis.iter().map(|k| GfVector::new(p, k)).collect::<Result<Vec<_>>>()?;
        if basis != form_kernel(c) {
            return Err(Error::BasisMismatch);
        }
        if let Some(&bad) = json.values_exp_mod_p2.iter().find(|&&v| v >= p.squared()) {
            return Err(Error::ValueOutOfRange { value: bad, p: p.squared() });
        }
        Self::new(c, json.values_exp_mod_p2.iter().map(|&v| PhaseExp::new(p, v as i64)).collect())
    }

    fn require_char2(&self) -> Result<()> {
        match self.c.modulus() {
            Prime::TWO => Ok(()),
            p => Err(Error::RequiresCharacteristicTwo(p.get())),
        }
    }

    fn same_basis(&self, other: &StandardInvariant) -> Result<()> {
        if self.c != other.c || self.kernel_basis != other.kernel_basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }
}

/// Coordinates of `x` in the kernel basis, or `NotInKernel`.
fn kernel_coordinates(c: &CommutationMatrix, basis: &[GfVector], x: &GfVector) -> Result<Vec<u8>> {
    check_len(c, x)?;
    let k = GfMatrix::from_columns(c.modulus(), c.n(), basis)?;
    k.solve(x)?.map(GfVector::into_inner).ok_or(Error::NotInKernel)
}

/// `f(x)` for `x` in the kernel: the product of the basis words
/// `w_{k_1}^{c_1} ... w_{k_d}^{c_d}` equals `zeta^s w_x`, so
/// `f(x) = zeta^{-s} prod f(k_i)^{c_i}`.
pub fn evaluate_invariant(f: &StandardInvariant, x: &GfVector) -> Result<PhaseExp> {
    let coords = kernel_coordinates(&f.c, &f.kernel_basis, x)?;
    let p = f.c.modulus();
    let mut word = Word::identity(p, f.c.n());
    let mut value = PhaseExp::one(p);
    for ((k, &ci), &fk) in f.kernel_basis.iter().zip(&coords).zip(&f.values) {
        for _ in 0..ci {
            word = word_mul(&f.c, &word, &Word::bare(k.clone()))?;
            value = value.mul(fk);
        }
    }
    debug_assert_eq!(&word.x, x);
    Ok(value.mul(word.phase.inv()))
}

/// `f(k)^2 = (-1)^{Q(k,k)}` on every basis vector.
pub fn invariant_square_check(f: &StandardInvariant) -> Result<bool> {
    f.require_char2()?;
    Ok(f.kernel_basis
        .iter()
        .zip(&f.values)
        .all(|(k, v)| (2 * v.exp()) % 4 == (2 * f.c.q_raw(k.as_slice(), k.as_slice()) as u32) % 4))
}

/// `f^gamma(x) = (-1)^{gamma . x} f(x)`.
pub fn phase_shift_invariant(f: &StandardInvariant, gamma: &GfVector) -> Result<StandardInvariant> {
    f.require_char2()?;
    check_len(&f.c, gamma)?;
    let values = f
        .kernel_basis
        .iter()
        .zip(&f.values)
        .map(|(k, v)| Ok(v.mul(PhaseExp::zeta_pow(Prime::TWO, gamma.dot(k)?.value() as i64))))
        .collect::<Result<Vec<_>>>()?;
    Ok(StandardInvariant { values, ..f.clone() })
}

pub fn invariants_equal(f: &StandardInvariant, g: &StandardInvariant) -> Result<bool> {
    f.same_basis(g)?;
    Ok(f.values == g.values)
}

/// `gamma ~ gamma'` iff `(gamma - gamma') . k = 0` for every kernel basis vector.
pub fn gammas_equivalent(gamma: &GfVector, other: &GfVector, kernel_basis: &[GfVector]) -> Result<bool> {
    let diff = gamma.sub(other)?;
    for k in kernel_basis {
        if !diff.dot(k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A `gamma` with `phase_shift_invariant(reference, gamma) == target`.
pub fn realize_invariant(target: &StandardInvariant, reference: &StandardInvariant) -> Result<GfVector> {
    target.require_char2()?;
    target.same_basis(reference)?;
    for (name, inv) in [("target", target), ("reference", reference)] {
        if !invariant_square_check(inv)? {
            return Err(Error::InvariantConstraint(format!("{name} violates f(k)^2 = (-1)^Q(k,k)")));
        }
    }
    let p = Prime::TWO;
    let theta = target
        .values
        .iter()
        .zip(&reference.values)
        .map(|(g, f)| match g.mul(f.inv()).exp() {
            0 => Ok(GfScalar::new(p, 0)?),
            2 => Ok(GfScalar::new(p, 1)?),
            _ => Err(Error::InvariantConstraint("target / reference is not +-1".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    extend_functional(p, &target.kernel_basis, &theta, target.c.n())
}

/// Number of equivalence classes of irreducible systems with kernel dimension `d`.
pub fn count_classes(d: usize) -> Result<u128> {
    1u128.checked_shl(d as u32).filter(|_| d < 128).ok_or(Error::KernelTooLarge { dim: d, bound: 127 })
}

/// The invariant of the canonical irreducible representation: each kernel
/// basis word evaluated in the canonical realization.
pub fn reference_invariant(c: &CommutationMatrix) -> StandardInvariant {
    let real = canonical_realization(c);
    let kernel_basis = real.basis.kernel.clone();
    let values = kernel_basis
        .iter()
        .map(|k| {
            let w = real.word(k.as_slice());
            debug_assert!(w.is_scalar());
            w.phase
        })
        .collect();
    StandardInvariant { c: c.clone(), kernel_basis, values }
}

/// Default bound on the kernel dimension for [`enumerate_invariants`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// All `2^d` standard invariants: the reference invariant shifted by every
/// linear functional on the kernel, in lexicographic order of the functional.
pub fn enumerate_invariants(c: &CommutationMatrix, bound: usize) -> Result<Vec<StandardInvariant>> {
    if c.modulus() != Prime::TWO {
        return Err(Error::RequiresCharacteristicTwo(c.modulus().get()));
    }
    let f0 = reference_invariant(c);
    let d = f0.kernel_basis.len();
    if d > bound {
        return Err(Error::KernelTooLarge { dim: d, bound });
    }
    Ok(GfVector::enumerate(Prime::TWO, d)
        .map(|theta| {
            let values = f0
                .values
                .iter()
                .zip(theta.as_slice())
                .map(|(v, &t)| v.mul(PhaseExp::zeta_pow(Prime::TWO, t as i64)))
                .collect();
            StandardInvariant { values, ..f0.clone() }
        })
        .collect())
}
