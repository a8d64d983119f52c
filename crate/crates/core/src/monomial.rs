//! Monomial matrices with `p^2`-th root of unity entries.
//!
//! Column `j` has its single nonzero entry in row `perm[j]`, equal to
//! `exp(2 pi i * phases[j] / p^2)`. Products, Kronecker products and powers
//! stay monomial, so every relation check on them is integer-exact.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Prime;
use crate::phase::PhaseExp;

pub type Complex64 = nalgebra::Complex<f64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    p: Prime,
    perm: Vec<u32>,
    phases: Vec<u32>,
}

/// Serialized generator: `{"perm": [...], "phase_exps": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub perm: Vec<u32>,
    pub phase_exps: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(p: Prime, perm: Vec<u32>, phases: Vec<u32>) -> Result<Self> {
        let n = perm.len();
        if phases.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: phases.len() });
        }
        let mut seen = vec![false; n];
        for &r in &perm {
            let r = r as usize;
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::Precondition("perm is not a permutation".into()));
            }
        }
        if let Some(&bad) = phases.iter().find(|&&e| e >= p.squared()) {
            return Err(Error::ValueOutOfRange { value: bad, p: p.squared() });
        }
        Ok(MonomialMatrix { p, perm, phases })
    }

    pub(crate) fn from_raw(p: Prime, perm: Vec<u32>, phases: Vec<u32>) -> Self {
        debug_assert_eq!(perm.len(), phases.len());
        MonomialMatrix { p, perm, phases }
    }

    pub fn identity(p: Prime, dim: usize) -> Self {
        Self::scalar(p, dim, PhaseExp::one(p))
    }

    pub fn scalar(p: Prime, dim: usize, phase: PhaseExp) -> Self {
        MonomialMatrix { p, perm: (0..dim as u32).collect(), phases: vec![phase.exp(); dim] }
    }

    /// `V = diag(1, zeta, ..., zeta^{p-1})`.
    pub fn clock(p: Prime) -> Self {
        let q = p.get();
        MonomialMatrix { p, perm: (0..q).collect(), phases: (0..q).map(|k| k * q).collect() }
    }

    /// `(S f)(k) = f(k + 1)`, i.e. `S e_m = e_{m-1}`.
    pub fn shift(p: Prime) -> Self {
        let q = p.get();
        MonomialMatrix { p, perm: (0..q).map(|m| (m + q - 1) % q).collect(), phases: vec![0; q as usize] }
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn phase_exps(&self) -> &[u32] {
        &self.phases
    }

    /// Entry `(i, j)`, or `None` when it is zero.
    pub fn entry(&self, i: usize, j: usize) -> Option<PhaseExp> {
        (self.perm[j] as usize == i).then(|| PhaseExp::new(self.p, self.phases[j] as i64))
    }

    fn check(&self, other: &MonomialMatrix) -> Result<()> {
        self.p.expect_same(other.p)?;
        if self.dim() != other.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        self.check(other)?;
        let q2 = self.p.squared();
        let (perm, phases) = other
            .perm
            .iter()
            .zip(&other.phases)
            .map(|(&mid, &ph)| (self.perm[mid as usize], (ph + self.phases[mid as usize]) % q2))
            .unzip();
        Ok(MonomialMatrix { p: self.p, perm, phases })
    }

    /// Kronecker product `self (x) other`; `self` indexes the slower digit.
    pub fn tensor(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        self.p.expect_same(other.p)?;
        let nb = other.dim() as u32;
        let q2 = self.p.squared();
        let mut perm = Vec::with_capacity(self.dim() * other.dim());
        let mut phases = Vec::with_capacity(perm.capacity());
        for (ra, pa) in self.perm.iter().zip(&self.phases) {
            for (rb, pb) in other.perm.iter().zip(&other.phases) {
                perm.push(ra * nb + rb);
                phases.push((pa + pb) % q2);
            }
        }
        Ok(MonomialMatrix { p: self.p, perm, phases })
    }

    pub fn pow(&self, k: u64) -> MonomialMatrix {
        let mut acc = MonomialMatrix::identity(self.p, self.dim());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let q2 = self.p.squared();
        let mut perm = vec![0u32; self.dim()];
        let mut phases = vec![0u32; self.dim()];
        for (j, (&r, &ph)) in self.perm.iter().zip(&self.phases).enumerate() {
            perm[r as usize] = j as u32;
            phases[r as usize] = (q2 - ph) % q2;
        }
        MonomialMatrix { p: self.p, perm, phases }
    }

    pub fn scale(&self, phase: PhaseExp) -> MonomialMatrix {
        let q2 = self.p.squared();
        MonomialMatrix {
            p: self.p,
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|&e| (e + phase.exp()) % q2).collect(),
        }
    }

    /// The common phase if this is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> Option<PhaseExp> {
        let first = *self.phases.first().unwrap_or(&0);
        let scalar = self.perm.iter().enumerate().all(|(j, &r)| r as usize == j) && self.phases.iter().all(|&e| e == first);
        scalar.then(|| PhaseExp::new(self.p, first as i64))
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar().is_some_and(PhaseExp::is_one)
    }

    pub fn to_dense(&self) -> DenseComplexMatrix {
        let n = self.dim();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (j, (&r, &e)) in self.perm.iter().zip(&self.phases).enumerate() {
            let (re, im) = PhaseExp::new(self.p, e as i64).to_complex();
            m[(r as usize, j)] = Complex64::new(re, im);
        }
        DenseComplexMatrix(m)
    }

    pub fn to_json(&self) -> MonomialJson {
        MonomialJson { perm: self.perm.clone(), phase_exps: self.phases.clone() }
    }

    pub fn from_json(p: Prime, json: &MonomialJson) -> Result<Self> {
        Self::new(p, json.perm.clone(), json.phase_exps.clone())
    }
}

/// Dense complex matrix used where sums of monomials are unavoidable.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseComplexMatrix(pub DMatrix<Complex64>);

impl DenseComplexMatrix {
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn identity(n: usize) -> Self {
        DenseComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn adjoint(&self) -> Self {
        DenseComplexMatrix(self.0.adjoint())
    }

    pub fn mul(&self, other: &DenseComplexMatrix) -> Self {
        DenseComplexMatrix(&self.0 * &other.0)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseComplexMatrix) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Row-major `[re, im]` pairs.
    pub fn to_row_major_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.0.nrows()).map(|i| (0..self.0.ncols()).map(|j| [self.0[(i, j)].re, self.0[(i, j)].im]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_commutator_phase(a: &MonomialMatrix, b: &MonomialMatrix) -> Option<PhaseExp> {
        let ab = a.mul(b).unwrap();
        let ba = b.mul(a).unwrap();
        ab.mul(&ba.inverse()).unwrap().is_scalar()
    }

    #[test]
    fn pauli_case() {
        let s = MonomialMatrix::shift(Prime::TWO);
        let v = MonomialMatrix::clock(Prime::TWO);
        assert_eq!(s.perm(), &[1, 0]);
        assert_eq!(v.phase_exps(), &[0, 2]);
        // SV = -VS
        assert_eq!(pair_commutator_phase(&s, &v).unwrap().exp(), 2);
    }

    #[test]
    fn clock_shift_relations() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE, Prime::new(7).unwrap()] {
            let s = MonomialMatrix::shift(p);
            let v = MonomialMatrix::clock(p);
            assert!(s.pow(p.get() as u64).is_identity());
            assert!(v.pow(p.get() as u64).is_identity());
            for k in 0..p.get() as i64 {
                let vk = v.pow(k as u64);
                let lhs = s.mul(&vk).unwrap();
                let rhs = vk.mul(&s).unwrap().scale(PhaseExp::zeta_pow(p, k));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dense_shift_matches_definition() {
        // (S f)(k) = f(k + 1): row k has its 1 in column k + 1
        let s = MonomialMatrix::shift(Prime::THREE).to_dense();
        for k in 0..3 {
            assert_eq!(s.0[(k, (k + 1) % 3)], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn algebra_basics() {
        let p = Prime::THREE;
        let s = MonomialMatrix::shift(p);
        let v = MonomialMatrix::clock(p);
        assert_eq!(s.mul(&MonomialMatrix::identity(p, 3)).unwrap(), s);
        let sv = s.tensor(&v).unwrap();
        assert_eq!(sv.dim(), 9);
        let shifted: Vec<u32> = (0..9).map(|j| ((j / 3 + 2) % 3) * 3 + j % 3).collect();
        assert_eq!(sv.perm(), &shifted[..]);
        let z = MonomialMatrix::scalar(p, 4, PhaseExp::zeta_pow(p, 1));
        assert_eq!(z.is_scalar().unwrap().exp(), 3);
        assert!(s.is_scalar().is_none());
        assert!(s.mul(&s.inverse()).unwrap().is_identity());
        assert!(s.mul(&MonomialMatrix::identity(p, 2)).is_err());
    }

    #[test]
    fn dense_agrees_with_exact_product() {
        let p = Prime::FIVE;
        let a = MonomialMatrix::shift(p).tensor(&MonomialMatrix::clock(p)).unwrap();
        let b = MonomialMatrix::clock(p).pow(2).tensor(&MonomialMatrix::shift(p).pow(3)).unwrap();
        let exact = a.mul(&b).unwrap().to_dense();
        let numeric = a.to_dense().mul(&b.to_dense());
        assert!(exact.max_abs_diff(&numeric) < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(MonomialMatrix::new(Prime::TWO, vec![0, 0], vec![0, 0]).is_err());
        assert!(MonomialMatrix::new(Prime::TWO, vec![1, 0], vec![0, 4]).is_err());
        assert!(MonomialMatrix::new(Prime::TWO, vec![1, 0], vec![0, 3]).is_ok());
    }
}
