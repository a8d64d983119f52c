//! Exact representations of spin systems by monomial matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gf::{GfVector, Prime};
use crate::monomial::{MonomialJson, MonomialMatrix};
use crate::phase::PhaseExp;
use crate::symplectic::{form_kernel, CommutationMatrix};
use crate::weyl::{canonical_realization, WeylLabel};
use crate::words::{phase_shift_invariant, realize_invariant, StandardInvariant};

/// Size bounds for constructions and dense verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest representation dimension `p^n` (or `p^r`) that will be built.
    pub max_dim: u128,
    /// Largest dimension accepted by [`crate::commutant::commutant_dim`].
    pub max_commutant_dim: usize,
    /// Largest kernel dimension for invariant enumeration.
    pub max_kernel_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: 1 << 20, max_commutant_dim: 256, max_kernel_dim: 16 }
    }
}

impl Limits {
    fn check_dim(&self, p: Prime, exponent: usize) -> Result<usize> {
        let dim = (p.get() as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
        if dim > self.max_dim || dim > usize::MAX as u128 {
            return Err(Error::SizeBound { dim, bound: self.max_dim });
        }
        Ok(dim as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// The tensor construction on `(C^p)^{(x) n}`.
    Prop11,
    /// Irreducible, on `(C^p)^{(x) r}`, with the given standard invariant.
    Irreducible(StandardInvariant),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    c: CommutationMatrix,
    generators: Vec<MonomialMatrix>,
    kind: RepKind,
}

/// `{"p": .., "n": .., "dim": .., "generators": [{"perm": [..], "phase_exps": [..]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub p: u32,
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<MonomialJson>,
}

impl Representation {
    /// Wraps hand-built generators; no relation is checked here (see [`verify_relations`]).
    pub fn from_generators(c: &CommutationMatrix, generators: Vec<MonomialMatrix>, kind: RepKind) -> Result<Self> {
        if generators.len() != c.n() {
            return Err(Error::LengthMismatch { expected: c.n(), found: generators.len() });
        }
        let dim = generators.first().map(MonomialMatrix::dim).unwrap_or(1);
        for g in &generators {
            c.modulus().expect_same(g.modulus())?;
            if g.dim() != dim {
                return Err(Error::LengthMismatch { expected: dim, found: g.dim() });
            }
        }
        Ok(Representation { c: c.clone(), generators, kind })
    }

    pub fn matrix(&self) -> &CommutationMatrix {
        &self.c
    }

    pub fn generators(&self) -> &[MonomialMatrix] {
        &self.generators
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map(MonomialMatrix::dim).unwrap_or(1)
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            p: self.c.modulus().get(),
            n: self.c.n(),
            dim: self.dim(),
            generators: self.generators.iter().map(MonomialMatrix::to_json).collect(),
        }
    }

    /// Loads generators for `c`; the kind is recorded as [`RepKind::Prop11`]
    /// unless every kernel word is scalar, in which case the invariant is read off.
    pub fn from_json(c: &CommutationMatrix, json: &RepresentationJson) -> Result<Self> {
        if json.p != c.modulus().get() {
            return Err(Error::ModulusMismatch { left: c.modulus().get(), right: json.p });
        }
        let gens = json
            .generators
            .iter()
            .map(|g| {
                let m = MonomialMatrix::from_json(c.modulus(), g)?;
                if m.dim() != json.dim {
                    return Err(Error::LengthMismatch { expected: json.dim, found: m.dim() });
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rep = Representation::from_generators(c, gens, RepKind::Prop11)?;
        if let Ok(f) = extract_invariant(&rep) {
            if crate::commutant::commutant_dim(&rep, &Limits::default()).ok() == Some(1) {
                rep.kind = RepKind::Irreducible(f);
            }
        }
        Ok(rep)
    }
}

/// Mixed-radix digits of `idx` in base `p`, most significant (slot 0) first.
fn digits(idx: usize, p: usize, slots: usize, out: &mut [usize]) {
    let mut rest = idx;
    for k in (0..slots).rev() {
        out[k] = rest % p;
        rest /= p;
    }
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * p + x)
}

/// `phase * (x)_i S^{a_i} V^{b_i}` on `(C^p)^{(x) r}`.
pub fn label_matrix(label: &WeylLabel) -> MonomialMatrix {
    let p = label.phase.modulus();
    let q = p.get() as usize;
    let r = label.a.len();
    let dim = q.pow(r as u32);
    let q2 = p.squared();
    let mut perm = Vec::with_capacity(dim);
    let mut phases = Vec::with_capacity(dim);
    let mut d = vec![0usize; r];
    for j in 0..dim {
        digits(j, q, r, &mut d);
        let mut ph = label.phase.exp();
        for i in 0..r {
            ph = (ph + q as u32 * ((label.b[i] as usize * d[i]) % q) as u32) % q2;
            d[i] = (d[i] + q - label.a[i] as usize) % q;
        }
        perm.push(undigits(&d, q) as u32);
        phases.push(ph);
    }
    MonomialMatrix::from_raw(p, perm, phases)
}

/// `U_k = V^{c_1k} (x) ... (x) V^{c_{k-1,k}} (x) S (x) 1 (x) ... (x) 1` on `(C^p)^{(x) n}`.
pub fn prop11_rep(c: &CommutationMatrix, limits: &Limits) -> Result<Representation> {
    let p = c.modulus();
    let n = c.n();
    let dim = limits.check_dim(p, n)?;
    let q = p.get() as usize;
    let q2 = p.squared();
    let generators = (0..n)
        .map(|k| {
            let mut perm = Vec::with_capacity(dim);
            let mut phases = Vec::with_capacity(dim);
            let mut d = vec![0usize; n];
            for j in 0..dim {
                digits(j, q, n, &mut d);
                let mut ph = 0u32;
                for (i, &di) in d.iter().enumerate().take(k) {
                    ph = (ph + q as u32 * ((c.entry(i, k) as usize * di) % q) as u32) % q2;
                }
                d[k] = (d[k] + q - 1) % q;
                perm.push(undigits(&d, q) as u32);
                phases.push(ph);
            }
            MonomialMatrix::from_raw(p, perm, phases)
        })
        .collect();
    Ok(Representation { c: c.clone(), generators, kind: RepKind::Prop11 })
}

/// The irreducible representation built from the canonical realization,
/// without any retargeting of its invariant.
pub fn canonical_irreducible_rep(c: &CommutationMatrix, limits: &Limits) -> Result<Representation> {
    let real = canonical_realization(c);
    limits.check_dim(c.modulus(), real.basis.r())?;
    let generators: Vec<MonomialMatrix> = if c.n() == 0 {
        Vec::new()
    } else {
        real.generators.iter().map(label_matrix).collect()
    };
    let mut rep = Representation { c: c.clone(), generators, kind: RepKind::Prop11 };
    let f = extract_invariant(&rep)?;
    rep.kind = RepKind::Irreducible(f);
    Ok(rep)
}

/// Irreducible representation of dimension `p^r` whose standard invariant is `target`.
///
/// For `p = 2` the canonical representation is re-signed by the `gamma` that
/// carries its invariant to `target`. For odd `p` only the canonical invariant
/// is accepted.
pub fn irreducible_rep(c: &CommutationMatrix, target: &StandardInvariant, limits: &Limits) -> Result<Representation> {
    if target.matrix() != c {
        return Err(Error::BasisMismatch);
    }
    let rep = canonical_irreducible_rep(c, limits)?;
    let RepKind::Irreducible(achieved) = rep.kind.clone() else { unreachable!() };
    if c.modulus() != Prime::TWO {
        if &achieved != target {
            return Err(Error::InvariantConstraint(
                "odd p: only the invariant of the canonical representation is supported".into(),
            ));
        }
        return Ok(rep);
    }
    let gamma = realize_invariant(target, &achieved)?;
    phase_shift_rep(&rep, &gamma)
}

/// `W_x = U_1^{x_1} ... U_n^{x_n}`.
pub fn word_matrix(rep: &Representation, x: &GfVector) -> Result<MonomialMatrix> {
    if x.len() != rep.c.n() {
        return Err(Error::LengthMismatch { expected: rep.c.n(), found: x.len() });
    }
    rep.c.modulus().expect_same(x.modulus())?;
    let p = rep.c.modulus();
    let mut acc = MonomialMatrix::identity(p, rep.dim());
    for (g, &xk) in rep.generators.iter().zip(x.as_slice()) {
        if xk != 0 {
            acc = acc.mul(&g.pow(xk as u64))?;
        }
    }
    Ok(acc)
}

/// Reads `f(k_i)` off the scalar kernel words.
pub fn extract_invariant(rep: &Representation) -> Result<StandardInvariant> {
    let values = form_kernel(&rep.c)
        .iter()
        .enumerate()
        .map(|(index, k)| word_matrix(rep, k)?.is_scalar().ok_or(Error::Reducible { index }))
        .collect::<Result<Vec<_>>>()?;
    StandardInvariant::new(&rep.c, values)
}

/// Generator `k` multiplied by `(-1)^{gamma_k}`.
pub fn phase_shift_rep(rep: &Representation, gamma: &GfVector) -> Result<Representation> {
    let p = rep.c.modulus();
    if p != Prime::TWO {
        return Err(Error::RequiresCharacteristicTwo(p.get()));
    }
    if gamma.len() != rep.c.n() {
        return Err(Error::LengthMismatch { expected: rep.c.n(), found: gamma.len() });
    }
    let generators = rep
        .generators
        .iter()
        .zip(gamma.as_slice())
        .map(|(g, &s)| g.scale(PhaseExp::zeta_pow(p, s as i64)))
        .collect();
    let kind = match &rep.kind {
        RepKind::Prop11 => RepKind::Prop11,
        RepKind::Irreducible(f) => RepKind::Irreducible(phase_shift_invariant(f, gamma)?),
    };
    Ok(Representation { c: rep.c.clone(), generators, kind })
}

/// Outcome of [`verify_relations`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// Generators with `U_k^p != 1`.
    pub order_failures: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, with `U_iU_j != zeta^{c_ij} U_jU_i`.
    pub pair_failures: Vec<(usize, usize)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.order_failures.is_empty() && self.pair_failures.is_empty()
    }
}

pub fn verify_relations(rep: &Representation) -> RelationReport {
    verify_relations_with(rep, Execution::default())
}

pub fn verify_relations_with(rep: &Representation, exec: Execution) -> RelationReport {
    let p = rep.c.modulus();
    let n = rep.c.n();
    let gens = &rep.generators;
    let order_ok = exec.map(n, |k| gens[k].pow(p.get() as u64).is_identity());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pair_ok = exec.map(pairs.len(), |t| {
        let (i, j) = pairs[t];
        let lhs = gens[i].mul(&gens[j]).expect("common dimension");
        let rhs = gens[j].mul(&gens[i]).expect("common dimension").scale(PhaseExp::zeta_pow(p, rep.c.entry(i, j) as i64));
        lhs == rhs
    });
    RelationReport {
        order_failures: (0..n).filter(|&k| !order_ok[k]).collect(),
        pair_failures: pairs.iter().zip(&pair_ok).filter(|(_, &ok)| !ok).map(|(&pr, _)| pr).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{clifford_matrix, form_rank};
    use crate::words::{evaluate_invariant, StandardInvariant};

    const P2: Prime = Prime::TWO;

    fn v(p: Prime, c: &[u32]) -> GfVector {
        GfVector::new(p, c).unwrap()
    }

    fn x() -> MonomialMatrix {
        MonomialMatrix::shift(P2)
    }

    fn z() -> MonomialMatrix {
        MonomialMatrix::clock(P2)
    }

    fn i2() -> MonomialMatrix {
        MonomialMatrix::identity(P2, 2)
    }

    #[test]
    fn prop11_pauli() {
        let c = clifford_matrix(P2, 2).unwrap();
        let rep = prop11_rep(&c, &Limits::default()).unwrap();
        assert_eq!(rep.generators()[0], x().tensor(&i2()).unwrap());
        assert_eq!(rep.generators()[1], z().tensor(&x()).unwrap());
        assert!(verify_relations(&rep).passed());
    }

    #[test]
    fn prop11_zero_and_clifford() {
        let rep = prop11_rep(&CommutationMatrix::zero(P2, 2), &Limits::default()).unwrap();
        assert_eq!(rep.generators()[0], x().tensor(&i2()).unwrap());
        assert_eq!(rep.generators()[1], i2().tensor(&x()).unwrap());

        let c3 = clifford_matrix(P2, 3).unwrap();
        let rep = prop11_rep(&c3, &Limits::default()).unwrap();
        assert_eq!(rep.dim(), 8);
        assert!(verify_relations(&rep).passed());
    }

    #[test]
    fn prop11_matches_tensor_formula_odd_p() {
        let p = Prime::THREE;
        let c = CommutationMatrix::from_entries(p, 3, &[0, 1, 2, 2, 0, 1, 1, 2, 0]).unwrap();
        let rep = prop11_rep(&c, &Limits::default()).unwrap();
        let s = MonomialMatrix::shift(p);
        let vv = MonomialMatrix::clock(p);
        let id = MonomialMatrix::identity(p, 3);
        for k in 0..3 {
            let mut m = MonomialMatrix::identity(p, 1);
            for slot in 0..3 {
                let factor = match slot.cmp(&k) {
                    std::cmp::Ordering::Less => vv.pow(c.entry(slot, k) as u64),
                    std::cmp::Ordering::Equal => s.clone(),
                    std::cmp::Ordering::Greater => id.clone(),
                };
                m = m.tensor(&factor).unwrap();
            }
            assert_eq!(rep.generators()[k], m);
        }
        assert!(verify_relations(&rep).passed());
    }

    #[test]
    fn size_bound() {
        let limits = Limits { max_dim: 64, ..Limits::default() };
        assert!(prop11_rep(&CommutationMatrix::zero(P2, 6), &limits).is_ok());
        assert!(matches!(prop11_rep(&CommutationMatrix::zero(P2, 7), &limits), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn irreducible_pauli() {
        let c = clifford_matrix(P2, 2).unwrap();
        let f = StandardInvariant::from_exps(&c, &[]).unwrap();
        let rep = irreducible_rep(&c, &f, &Limits::default()).unwrap();
        assert_eq!(rep.dim(), 2);
        // e_1 = u_1 acts as the shift, f_1 = u_2 as the clock
        assert_eq!(rep.generators()[0], x());
        assert_eq!(rep.generators()[1], z());
        assert!(verify_relations(&rep).passed());
    }

    #[test]
    fn irreducible_clifford_with_prescribed_invariant() {
        let c = clifford_matrix(P2, 3).unwrap();
        for target in [1, 3] {
            let f = StandardInvariant::from_exps(&c, &[target]).unwrap();
            let rep = irreducible_rep(&c, &f, &Limits::default()).unwrap();
            assert_eq!(rep.dim(), 2);
            assert!(verify_relations(&rep).passed());
            let w = word_matrix(&rep, &v(P2, &[1, 1, 1])).unwrap();
            assert_eq!(w.is_scalar().unwrap().exp(), target as u32);
            assert_eq!(extract_invariant(&rep).unwrap(), f);
            assert_eq!(rep.kind(), &RepKind::Irreducible(f));
        }
        let bad = StandardInvariant::from_exps(&c, &[0]).unwrap();
        assert!(matches!(irreducible_rep(&c, &bad, &Limits::default()), Err(Error::InvariantConstraint(_))));
    }

    #[test]
    fn irreducible_scalar_rep() {
        let c = CommutationMatrix::zero(P2, 1);
        let f = StandardInvariant::from_exps(&c, &[2]).unwrap();
        let rep = irreducible_rep(&c, &f, &Limits::default()).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.generators()[0].is_scalar().unwrap().exp(), 2);
    }

    #[test]
    fn irreducible_odd_p_only_canonical() {
        let p = Prime::THREE;
        let c = CommutationMatrix::from_entries(p, 3, &[0, 1, 2, 2, 0, 1, 1, 2, 0]).unwrap();
        let rep = canonical_irreducible_rep(&c, &Limits::default()).unwrap();
        assert_eq!(rep.dim(), 3usize.pow(form_rank(&c) as u32 / 2));
        assert!(verify_relations(&rep).passed());
        let RepKind::Irreducible(f) = rep.kind().clone() else { panic!() };
        assert_eq!(irreducible_rep(&c, &f, &Limits::default()).unwrap(), rep);
        let shifted = StandardInvariant::new(&c, f.values().iter().map(|v| v.mul(PhaseExp::zeta_pow(p, 1))).collect()).unwrap();
        assert!(irreducible_rep(&c, &shifted, &Limits::default()).is_err());
    }

    #[test]
    fn word_matrix_examples() {
        let c3 = clifford_matrix(P2, 3).unwrap();
        let rep = prop11_rep(&c3, &Limits::default()).unwrap();
        assert!(word_matrix(&rep, &GfVector::zeros(P2, 3)).unwrap().is_identity());
        for x in GfVector::enumerate(P2, 3) {
            assert_eq!(word_matrix(&rep, &x).unwrap().is_scalar().is_some(), x.is_zero());
        }
        let f = StandardInvariant::from_exps(&c3, &[3]).unwrap();
        let irr = irreducible_rep(&c3, &f, &Limits::default()).unwrap();
        let k = v(P2, &[1, 1, 1]);
        assert_eq!(word_matrix(&irr, &k).unwrap().is_scalar(), Some(evaluate_invariant(&f, &k).unwrap()));
    }

    #[test]
    fn extract_examples() {
        let c3 = clifford_matrix(P2, 3).unwrap();
        let rep = prop11_rep(&c3, &Limits::default()).unwrap();
        assert_eq!(extract_invariant(&rep), Err(Error::Reducible { index: 0 }));
        let pauli = clifford_matrix(P2, 2).unwrap();
        let irr = canonical_irreducible_rep(&pauli, &Limits::default()).unwrap();
        assert!(extract_invariant(&irr).unwrap().values().is_empty());
    }

    #[test]
    fn phase_shift_examples() {
        let c3 = clifford_matrix(P2, 3).unwrap();
        let f = StandardInvariant::from_exps(&c3, &[1]).unwrap();
        let rep = irreducible_rep(&c3, &f, &Limits::default()).unwrap();
        assert_eq!(phase_shift_rep(&rep, &GfVector::zeros(P2, 3)).unwrap(), rep);
        let shifted = phase_shift_rep(&rep, &v(P2, &[1, 0, 0])).unwrap();
        assert_eq!(extract_invariant(&shifted).unwrap().values()[0].exp(), 3);
        for g in GfVector::enumerate(P2, 3) {
            assert!(verify_relations(&phase_shift_rep(&rep, &g).unwrap()).passed());
        }
    }

    #[test]
    fn verify_reports_failures() {
        let pauli = clifford_matrix(P2, 2).unwrap();
        let xi = x().tensor(&i2()).unwrap();
        let rep = Representation::from_generators(&pauli, vec![xi.clone(), xi], RepKind::Prop11).unwrap();
        let report = verify_relations(&rep);
        assert_eq!(report.pair_failures, vec![(0, 1)]);
        assert!(report.order_failures.is_empty());

        let bad = Representation::from_generators(
            &CommutationMatrix::zero(P2, 1),
            vec![MonomialMatrix::scalar(P2, 2, PhaseExp::new(P2, 1))],
            RepKind::Prop11,
        )
        .unwrap();
        assert_eq!(verify_relations(&bad).order_failures, vec![0]);
    }

    #[test]
    fn json_round_trip() {
        let c3 = clifford_matrix(P2, 3).unwrap();
        let rep = prop11_rep(&c3, &Limits::default()).unwrap();
        let back = Representation::from_json(&c3, &rep.to_json()).unwrap();
        assert_eq!(back, rep);
        let f = StandardInvariant::from_exps(&c3, &[1]).unwrap();
        let irr = irreducible_rep(&c3, &f, &Limits::default()).unwrap();
        assert_eq!(Representation::from_json(&c3, &irr.to_json()).unwrap(), irr);
    }
}
