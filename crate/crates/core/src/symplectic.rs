//! Commutation matrices and their bilinear forms.
//!
//! Sign convention: `omega(x, y) = x^T C y` and `Q(x, y) = sum_{i > j} c_ij x_i y_j`,
//! so that `omega(u_i, u_j) = c_ij` for the generators `u_iu_j = zeta^{c_ij} u_ju_i`
//! and `omega = Q - Q^T`. In characteristic 2 both forms are symmetric in the
//! choice of triangle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{GfMatrix, GfScalar, GfVector, Prime};

/// Where a commutation matrix came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MatrixSource {
    Explicit,
    /// `pattern[k - 1] = f(k)` for separations `k >= 1`; `f` vanishes beyond the pattern.
    Toeplitz { pattern: Vec<u8> },
}

/// An alternating `n x n` matrix over `Z_p`: zero diagonal and `c_ji = -c_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutationMatrix {
    m: GfMatrix,
    source: MatrixSource,
}

impl CommutationMatrix {
    pub fn new(m: GfMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::LengthMismatch { expected: m.rows(), found: m.cols() });
        }
        let p = m.modulus();
        for i in 0..m.rows() {
            if m.get(i, i) != 0 {
                return Err(Error::NotAlternating { i, j: i });
            }
            for j in i + 1..m.rows() {
                if m.get(j, i) != p.neg(m.get(i, j)) {
                    return Err(Error::NotAlternating { i, j });
                }
            }
        }
        Ok(CommutationMatrix { m, source: MatrixSource::Explicit })
    }

    pub fn from_entries(p: Prime, n: usize, entries: &[u32]) -> Result<Self> {
        Self::new(GfMatrix::new(p, n, n, entries)?)
    }

    /// Builds from the strict upper triangle; the lower triangle is its negation.
    pub fn from_upper(p: Prime, n: usize, upper: impl Fn(usize, usize) -> u8) -> Self {
        let mut m = GfMatrix::zeros(p, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j) % p.get() as u8;
                m.set(i, j, v);
                m.set(j, i, p.neg(v));
            }
        }
        CommutationMatrix { m, source: MatrixSource::Explicit }
    }

    /// The `n x n` prefix of the banded system `c_ij = f(j - i)` for `i < j`.
    pub fn toeplitz(p: Prime, pattern: &[u32], n: usize) -> Result<Self> {
        let pattern = pattern.iter().map(|&v| p.check_value(v)).collect::<Result<Vec<u8>>>()?;
        let mut c = Self::from_upper(p, n, |i, j| pattern.get(j - i - 1).copied().unwrap_or(0));
        c.source = MatrixSource::Toeplitz { pattern };
        Ok(c)
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        Self::from_upper(p, n, |_, _| 0)
    }

    /// Block diagonal `[[0,1],[-1,0]]^{(+) r}`.
    pub fn standard(p: Prime, r: usize) -> Self {
        Self::from_upper(p, 2 * r, |i, j| u8::from(i % 2 == 0 && j == i + 1))
    }

    pub fn modulus(&self) -> Prime {
        self.m.modulus()
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.m.get(i, j)
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.m
    }

    pub fn source(&self) -> &MatrixSource {
        &self.source
    }

    /// Upper-left `n x n` block, keeping a Toeplitz source.
    pub fn prefix(&self, n: usize) -> CommutationMatrix {
        assert!(n <= self.n());
        let mut c = Self::from_upper(self.modulus(), n, |i, j| self.entry(i, j));
        c.source = self.source.clone();
        c
    }

    /// True if `self` is the upper-left block of `bigger` over the same field.
    pub fn is_prefix_of(&self, bigger: &CommutationMatrix) -> bool {
        self.modulus() == bigger.modulus()
            && self.n() <= bigger.n()
            && (0..self.n()).all(|i| (0..self.n()).all(|j| self.entry(i, j) == bigger.entry(i, j)))
    }

    /// Row vector `x^T C`, i.e. the functional `omega(x, .)`.
    pub(crate) fn left_functional(&self, x: &[u8]) -> Vec<u8> {
        let p = self.modulus().get();
        let n = self.n();
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi as u32 * self.m.get(i, j) as u32;
            }
        }
        out.into_iter().map(|v| (v % p) as u8).collect()
    }

    pub(crate) fn omega_raw(&self, x: &[u8], y: &[u8]) -> u8 {
        let p = self.modulus().get();
        let mut acc = 0u32;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = self.m.row_slice(i);
            let s = row.iter().zip(y).fold(0u32, |a, (&c, &yj)| a + c as u32 * yj as u32) % p;
            acc = (acc + xi as u32 * s) % p;
        }
        acc as u8
    }

    pub(crate) fn q_raw(&self, x: &[u8], y: &[u8]) -> u8 {
        let p = self.modulus().get();
        let mut acc = 0u32;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.m.row_slice(i)[..i];
            let s = row.iter().zip(y).fold(0u32, |a, (&c, &yj)| a + c as u32 * yj as u32) % p;
            acc = (acc + xi as u32 * s) % p;
        }
        acc as u8
    }

    fn check_vector(&self, x: &GfVector) -> Result<()> {
        self.modulus().expect_same(x.modulus())?;
        if x.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: x.len() });
        }
        Ok(())
    }
}

/// The skew form `omega(x, y) = sum_ij c_ij x_i y_j`.
pub fn omega(c: &CommutationMatrix, x: &GfVector, y: &GfVector) -> Result<GfScalar> {
    c.check_vector(x)?;
    c.check_vector(y)?;
    Ok(GfScalar::from_raw(c.modulus(), c.omega_raw(x.as_slice(), y.as_slice())))
}

/// The triangular half `Q(x, y) = sum_{i > j} c_ij x_i y_j`, with `omega = Q - Q^T`.
pub fn q_form(c: &CommutationMatrix, x: &GfVector, y: &GfVector) -> Result<GfScalar> {
    c.check_vector(x)?;
    c.check_vector(y)?;
    Ok(GfScalar::from_raw(c.modulus(), c.q_raw(x.as_slice(), y.as_slice())))
}

pub fn form_kernel(c: &CommutationMatrix) -> Vec<GfVector> {
    c.matrix().kernel_basis()
}

pub fn form_rank(c: &CommutationMatrix) -> usize {
    c.matrix().rank()
}

/// Symplectic pairs `(e_i, f_i)` together with a basis of the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticBasis {
    pub e: Vec<GfVector>,
    pub f: Vec<GfVector>,
    pub kernel: Vec<GfVector>,
}

impl SymplecticBasis {
    /// Half the rank.
    pub fn r(&self) -> usize {
        self.e.len()
    }

    /// Kernel dimension.
    pub fn d(&self) -> usize {
        self.kernel.len()
    }

    /// `e_1, f_1, ..., e_r, f_r, k_1, ..., k_d`.
    pub fn ordered(&self) -> Vec<GfVector> {
        let mut out = Vec::with_capacity(2 * self.r() + self.d());
        for (e, f) in self.e.iter().zip(&self.f) {
            out.push(e.clone());
            out.push(f.clone());
        }
        out.extend(self.kernel.iter().cloned());
        out
    }

    /// Checks the pairing relations, the kernel condition and that all
    /// vectors together form a basis of `GF(p)^n`.
    pub fn is_valid_for(&self, c: &CommutationMatrix) -> bool {
        let n = c.n();
        if self.e.len() != self.f.len() || 2 * self.r() + self.d() != n {
            return false;
        }
        let all = self.ordered();
        if all.iter().any(|v| v.len() != n || v.modulus() != c.modulus()) {
            return false;
        }
        for i in 0..self.r() {
            for j in 0..self.r() {
                let ee = c.omega_raw(self.e[i].as_slice(), self.e[j].as_slice());
                let ff = c.omega_raw(self.f[i].as_slice(), self.f[j].as_slice());
                let ef = c.omega_raw(self.e[i].as_slice(), self.f[j].as_slice());
                if ee != 0 || ff != 0 || ef != u8::from(i == j) {
                    return false;
                }
            }
        }
        if self.kernel.iter().any(|k| c.left_functional(k.as_slice()).iter().any(|&v| v != 0)) {
            return false;
        }
        GfMatrix::from_rows(c.modulus(), n, &all).map(|m| m.rank() == n).unwrap_or(false)
    }
}

/// Greedy pairing over `candidates`, starting from `pairs`. Each candidate is
/// projected onto the symplectic complement of the pairs found so far; if
/// the projection is not in the kernel it becomes a new `e`, and its partner
/// `f` is the solution (free variables zero) of `omega(e, f) = 1`,
/// `omega(e_i, f) = omega(f_i, f) = 0`.
fn pair_candidates(c: &CommutationMatrix, pairs: &mut Vec<(GfVector, GfVector)>, candidates: &[GfVector]) {
    let p = c.modulus();
    let n = c.n();
    for cand in candidates {
        let mut v = cand.clone();
        for (e, f) in pairs.iter() {
            let a = c.omega_raw(v.as_slice(), f.as_slice());
            let b = c.omega_raw(v.as_slice(), e.as_slice());
            v.axpy(p.neg(a), e);
            v.axpy(b, f);
        }
        let row = c.left_functional(v.as_slice());
        if row.iter().all(|&x| x == 0) {
            continue;
        }
        let mut rows = vec![GfVector::from_raw(p, row)];
        let mut rhs = vec![1u8];
        for (e, f) in pairs.iter() {
            rows.push(GfVector::from_raw(p, c.left_functional(e.as_slice())));
            rows.push(GfVector::from_raw(p, c.left_functional(f.as_slice())));
            rhs.extend([0, 0]);
        }
        let system = GfMatrix::from_rows(p, n, &rows).expect("rows have length n");
        let f = system
            .solve(&GfVector::from_raw(p, rhs))
            .expect("consistent shapes")
            .expect("a vector outside the kernel has a partner in the symplectic complement");
        pairs.push((v, f));
    }
}

/// Symplectic basis of `omega`: the kernel, then pairs built greedily from
/// the pivot-column complement of the kernel.
pub fn symplectic_basis(c: &CommutationMatrix) -> SymplecticBasis {
    let p = c.modulus();
    let n = c.n();
    let (_, pivots) = c.matrix().rref();
    let kernel = c.matrix().kernel_basis();
    let candidates: Vec<_> = pivots.iter().map(|&j| GfVector::unit(p, n, j)).collect();
    let mut pairs = Vec::new();
    pair_candidates(c, &mut pairs, &candidates);
    let (e, f) = pairs.into_iter().unzip();
    SymplecticBasis { e, f, kernel }
}

/// Result of growing a basis to a longer prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedBasis {
    pub basis: SymplecticBasis,
    /// Indices of old pairs that no longer paired correctly and were rebuilt.
    pub rebuilt: Vec<usize>,
}

/// Extends a basis computed for a prefix of `bigger`. Old pairs are kept
/// (zero-padded) whenever they still satisfy the pairing relations; new pairs
/// come from the old kernel vectors and the new coordinate directions.
pub fn extend_symplectic_basis(bigger: &CommutationMatrix, existing: &SymplecticBasis) -> Result<ExtendedBasis> {
    let p = bigger.modulus();
    let n = bigger.n();
    let old_n = existing.ordered().first().map(GfVector::len).unwrap_or(0);
    if existing.ordered().iter().any(|v| v.len() != old_n || v.modulus() != p) || old_n > n {
        return Err(Error::PrefixMismatch);
    }
    if !existing.is_valid_for(&bigger.prefix(old_n)) {
        return Err(Error::PrefixMismatch);
    }

    let mut pairs: Vec<(GfVector, GfVector)> = Vec::new();
    let mut rebuilt = Vec::new();
    let mut candidates = Vec::new();
    for (idx, (e, f)) in existing.e.iter().zip(&existing.f).enumerate() {
        let (e, f) = (e.padded(n), f.padded(n));
        let ok = bigger.omega_raw(e.as_slice(), f.as_slice()) == 1
            && pairs.iter().all(|(e2, f2)| {
                [(&e, e2), (&e, f2), (&f, e2), (&f, f2)].iter().all(|(a, b)| bigger.omega_raw(a.as_slice(), b.as_slice()) == 0)
            });
        if ok {
            pairs.push((e, f));
        } else {
            rebuilt.push(idx);
            candidates.push(e);
            candidates.push(f);
        }
    }
    candidates.extend(existing.kernel.iter().map(|k| k.padded(n)));
    candidates.extend((old_n..n).map(|j| GfVector::unit(p, n, j)));
    pair_candidates(bigger, &mut pairs, &candidates);
    let (e, f) = pairs.into_iter().unzip();
    Ok(ExtendedBasis { basis: SymplecticBasis { e, f, kernel: bigger.matrix().kernel_basis() }, rebuilt })
}

/// `[[0,1],[-1,0]]^{(+) r} (+) 0_d` over `GF(p)`.
pub fn standard_form(p: Prime, r: usize, d: usize) -> GfMatrix {
    let n = 2 * r + d;
    let mut m = GfMatrix::zeros(p, n, n);
    for i in 0..r {
        m.set(2 * i, 2 * i + 1, 1);
        m.set(2 * i + 1, 2 * i, p.neg(1));
    }
    m
}

/// Invertible `T` with columns `e_1, f_1, ..., e_r, f_r, k_1, ..., k_d`, so
/// that `T^t C T` is the standard block form.
pub fn congruence_to_standard(c: &CommutationMatrix) -> GfMatrix {
    let basis = symplectic_basis(c);
    GfMatrix::from_columns(c.modulus(), c.n(), &basis.ordered()).expect("basis vectors have length n")
}

/// The matrix `c_ij = omega_ref(v_i, v_j)`.
pub fn matrix_from_basis(reference: &CommutationMatrix, vectors: &[GfVector]) -> Result<CommutationMatrix> {
    for v in vectors {
        reference.check_vector(v)?;
    }
    let p = reference.modulus();
    let m = vectors.len();
    let mut out = GfMatrix::zeros(p, m, m);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, reference.omega_raw(vectors[i].as_slice(), vectors[j].as_slice()));
        }
    }
    CommutationMatrix::new(out)
}

/// Commutation matrix of `n` pairwise anticommuting generators.
pub fn clifford_matrix(p: Prime, n: usize) -> Result<CommutationMatrix> {
    if p != Prime::TWO {
        return Err(Error::RequiresCharacteristicTwo(p.get()));
    }
    Ok(CommutationMatrix::from_upper(p, n, |_, _| 1))
}
