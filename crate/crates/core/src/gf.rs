//! Dense linear algebra over the prime field `Z_p` for small primes.
//!
//! Scalars are stored as `u8` residues; all arithmetic widens to `u32`, so
//! no intermediate can overflow for `p <= 251`. Matrices over `GF(2)` are
//! row-reduced through a bit-packed path (see [`crate::gf2`]); every other
//! modulus uses the entry-level elimination in this module. Both produce the
//! same reduced row-echelon form, which is unique.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;

/// A validated prime modulus `2 <= p <= 251`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u8);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);
    pub const FIVE: Prime = Prime(5);

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=251).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p as u8))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    /// `p^2`, the order of the phase group used by the word algebra.
    #[inline]
    pub fn squared(self) -> u32 {
        self.get() * self.get()
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.get() as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.get() - b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        ((self.get() - a as u32) % self.get()) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.get()) as u8
    }

    /// Multiplicative inverse by Fermat. `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        let p = self.get();
        let (mut base, mut exp, mut acc) = (a as u32 % p, p - 2, 1u32);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u8
    }

    pub(crate) fn check_value(self, v: u32) -> Result<u8> {
        if v >= self.get() {
            return Err(Error::ValueOutOfRange { value: v, p: self.get() });
        }
        Ok(v as u8)
    }

    pub(crate) fn expect_same(self, other: Prime) -> Result<()> {
        if self != other {
            return Err(Error::ModulusMismatch { left: self.get(), right: other.get() });
        }
        Ok(())
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.get()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z_p` together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GfScalar {
    value: u8,
    p: Prime,
}

impl GfScalar {
    pub fn new(p: Prime, value: u32) -> Result<Self> {
        Ok(GfScalar { value: p.check_value(value)?, p })
    }

    pub(crate) fn from_raw(p: Prime, value: u8) -> Self {
        debug_assert!((value as u32) < p.get());
        GfScalar { value, p }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for GfScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A coordinate vector in `GF(p)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfVector {
    p: Prime,
    coords: Vec<u8>,
}

impl GfVector {
    pub fn new(p: Prime, coords: &[u32]) -> Result<Self> {
        let coords = coords.iter().map(|&c| p.check_value(c)).collect::<Result<Vec<_>>>()?;
        Ok(GfVector { p, coords })
    }

    /// Reduces arbitrary integers mod p.
    pub fn from_ints(p: Prime, coords: &[i64]) -> Self {
        GfVector { p, coords: coords.iter().map(|&c| p.reduce(c)).collect() }
    }

    pub(crate) fn from_raw(p: Prime, coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| (c as u32) < p.get()));
        GfVector { p, coords }
    }

    pub fn zeros(p: Prime, n: usize) -> Self {
        GfVector { p, coords: vec![0; n] }
    }

    pub fn unit(p: Prime, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, n);
        v.coords[i] = 1;
        v
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.coords[i]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.coords
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &GfVector) -> Result<()> {
        self.p.expect_same(other.p)?;
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    pub fn dot(&self, other: &GfVector) -> Result<GfScalar> {
        self.check(other)?;
        let p = self.p.get();
        let s = self.coords.iter().zip(&other.coords).fold(0u32, |acc, (&a, &b)| (acc + a as u32 * b as u32) % p);
        Ok(GfScalar::from_raw(self.p, s as u8))
    }

    pub fn add(&self, other: &GfVector) -> Result<GfVector> {
        self.check(other)?;
        let p = self.p;
        Ok(GfVector::from_raw(p, self.coords.iter().zip(&other.coords).map(|(&a, &b)| p.add(a, b)).collect()))
    }

    pub fn sub(&self, other: &GfVector) -> Result<GfVector> {
        self.check(other)?;
        let p = self.p;
        Ok(GfVector::from_raw(p, self.coords.iter().zip(&other.coords).map(|(&a, &b)| p.sub(a, b)).collect()))
    }

    pub fn scale(&self, s: u8) -> GfVector {
        let p = self.p;
        GfVector::from_raw(p, self.coords.iter().map(|&a| p.mul(a, s % p.0)).collect())
    }

    /// `self + s * other`, in place.
    pub(crate) fn axpy(&mut self, s: u8, other: &GfVector) {
        debug_assert_eq!(self.len(), other.len());
        let p = self.p;
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = p.add(*a, p.mul(s, b));
        }
    }

    /// Zero-pads to length `n` (which must not be shorter).
    pub fn padded(&self, n: usize) -> GfVector {
        debug_assert!(n >= self.len());
        let mut coords = self.coords.clone();
        coords.resize(n, 0);
        GfVector::from_raw(self.p, coords)
    }

    /// All `p^n` vectors of `GF(p)^n` in lexicographic order (last coordinate fastest).
    pub fn enumerate(p: Prime, n: usize) -> impl Iterator<Item = GfVector> {
        let total = (p.get() as u64).checked_pow(n as u32).expect("enumeration too large");
        (0..total).map(move |mut idx| {
            let mut coords = vec![0u8; n];
            for c in coords.iter_mut().rev() {
                *c = (idx % p.get() as u64) as u8;
                idx /= p.get() as u64;
            }
            GfVector::from_raw(p, coords)
        })
    }
}

impl Serialize for GfVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl fmt::Display for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A dense `rows x cols` matrix over `GF(p)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn new(p: Prime, rows: usize, cols: usize, entries: &[u32]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, found: entries.len() });
        }
        let data = entries.iter().map(|&c| p.check_value(c)).collect::<Result<Vec<_>>>()?;
        Ok(GfMatrix { p, rows, cols, data })
    }

    pub(crate) fn from_raw(p: Prime, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        GfMatrix { p, rows, cols, data }
    }

    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        GfMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Stacks vectors as rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(p: Prime, cols: usize, rows: &[GfVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            p.expect_same(r.p)?;
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(&r.coords);
        }
        Ok(GfMatrix { p, rows: rows.len(), cols, data })
    }

    /// Places vectors as columns. `rows` is needed when `cols` is empty.
    pub fn from_columns(p: Prime, rows: usize, cols: &[GfVector]) -> Result<Self> {
        Ok(Self::from_rows(p, rows, cols)?.transpose())
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!((v as u32) < self.p.get());
        self.data[i * self.cols + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row(&self, i: usize) -> GfVector {
        GfVector::from_raw(self.p, self.row_slice(i).to_vec())
    }

    pub fn column(&self, j: usize) -> GfVector {
        GfVector::from_raw(self.p, (0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &GfVector) -> Result<GfVector> {
        self.p.expect_same(v.p)?;
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.p.get();
        let out = (0..self.rows)
            .map(|i| {
                self.row_slice(i).iter().zip(&v.coords).fold(0u32, |acc, (&a, &b)| (acc + a as u32 * b as u32) % p) as u8
            })
            .collect();
        Ok(GfVector::from_raw(self.p, out))
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.p.expect_same(other.p)?;
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p.get();
        let mut out = GfMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u32 + a * other.get(k, j) as u32) % p) as u8;
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and the (strictly increasing, 0-based) pivot columns.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        if self.p == Prime::TWO {
            gf2::rref(self)
        } else {
            self.rref_dense()
        }
    }

    /// Entry-level Gauss-Jordan elimination, used for every modulus other than 2.
    pub fn rref_dense(&self) -> (GfMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = p.inv(m.get(r, c));
            for j in c..m.cols {
                let v = p.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = p.sub(m.get(i, j), p.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of `{v : Mv = 0}`: one vector per free column, in increasing
    /// column order, with that free coordinate set to 1.
    pub fn kernel_basis(&self) -> Vec<GfVector> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u8; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = p.neg(r.get(row, free));
                }
                GfVector::from_raw(p, v)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some `x` with `Mx = b` (free variables zero), or `None` if inconsistent.
    pub fn solve(&self, b: &GfVector) -> Result<Option<GfVector>> {
        self.p.expect_same(b.p)?;
        if b.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: b.len() });
        }
        let cols = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row_slice(i));
            data.push(b.get(i));
        }
        let (r, pivots) = GfMatrix::from_raw(self.p, self.rows, cols, data).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(Some(GfVector::from_raw(self.p, x)))
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row_slice(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Extends the functional given by `values` on an independent family
/// `basis` to all of `GF(p)^n`. The result is the solution of `B g = values`
/// with free coordinates zero, so it vanishes off a completed basis.
pub fn extend_functional(p: Prime, basis: &[GfVector], values: &[GfScalar], n: usize) -> Result<GfVector> {
    if basis.len() != values.len() {
        return Err(Error::LengthMismatch { expected: basis.len(), found: values.len() });
    }
    let b = GfMatrix::from_rows(p, n, basis)?;
    if b.rank() != basis.len() {
        return Err(Error::DependentBasis);
    }
    let rhs: Vec<u8> = values
        .iter()
        .map(|v| {
            p.expect_same(v.modulus())?;
            Ok(v.value())
        })
        .collect::<Result<_>>()?;
    Ok(b.solve(&GfVector::from_raw(p, rhs))?.expect("independent rows always have a solution"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: Prime, rows: usize, cols: usize, e: &[u32]) -> GfMatrix {
        GfMatrix::new(p, rows, cols, e).unwrap()
    }

    fn v(p: Prime, c: &[u32]) -> GfVector {
        GfVector::new(p, c).unwrap()
    }

    fn clifford3() -> GfMatrix {
        m(Prime::TWO, 3, 3, &[0, 1, 1, 1, 0, 1, 1, 1, 0])
    }

    #[test]
    fn prime_validation() {
        for p in [2, 3, 5, 7, 251] {
            assert!(Prime::new(p).is_ok());
        }
        for p in [0, 1, 4, 9, 253, 256] {
            assert_eq!(Prime::new(p), Err(Error::InvalidPrime(p)));
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 251] {
            let p = Prime::new(p).unwrap();
            for a in 1..p.get() {
                assert_eq!(p.mul(a as u8, p.inv(a as u8)), 1);
            }
        }
    }

    #[test]
    fn rref_examples() {
        let z = GfMatrix::zeros(Prime::TWO, 3, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));

        let id = GfMatrix::identity(Prime::THREE, 4);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2, 3]));

        let swap = m(Prime::TWO, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(swap.rref(), (GfMatrix::identity(Prime::TWO, 2), vec![0, 1]));
    }

    #[test]
    fn kernel_examples() {
        let z = GfMatrix::zeros(Prime::TWO, 3, 3);
        let k = z.kernel_basis();
        assert_eq!(k, (0..3).map(|i| GfVector::unit(Prime::TWO, 3, i)).collect::<Vec<_>>());

        assert_eq!(clifford3().kernel_basis(), vec![v(Prime::TWO, &[1, 1, 1])]);
        assert!(m(Prime::TWO, 2, 2, &[0, 1, 1, 0]).kernel_basis().is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(GfMatrix::zeros(Prime::FIVE, 4, 4).rank(), 0);
        assert_eq!(clifford3().rank(), 2);
        let c4 = m(Prime::TWO, 4, 4, &[0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0]);
        assert_eq!(c4.rank(), 4);
    }

    #[test]
    fn solve_examples() {
        let p = Prime::THREE;
        let b = v(p, &[2, 0, 1]);
        assert_eq!(GfMatrix::identity(p, 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(GfMatrix::zeros(p, 3, 3).solve(&b).unwrap(), None);

        let a = m(Prime::TWO, 2, 2, &[1, 1, 0, 0]);
        assert_eq!(a.solve(&v(Prime::TWO, &[1, 0])).unwrap(), Some(v(Prime::TWO, &[1, 0])));
        assert!(a.solve(&v(Prime::TWO, &[1])).is_err());
    }

    #[test]
    fn extend_functional_examples() {
        let p = Prime::TWO;
        let one = GfScalar::new(p, 1).unwrap();
        let zero = GfScalar::new(p, 0).unwrap();
        let g = extend_functional(p, &[v(p, &[1, 1, 1])], &[one], 3).unwrap();
        assert_eq!(g, v(p, &[1, 0, 0]));

        assert_eq!(extend_functional(p, &[], &[], 4).unwrap(), GfVector::zeros(p, 4));

        let std = [GfVector::unit(p, 2, 0), GfVector::unit(p, 2, 1)];
        assert_eq!(extend_functional(p, &std, &[one, zero], 2).unwrap(), v(p, &[1, 0]));

        let dep = [v(p, &[1, 1]), v(p, &[1, 1])];
        assert_eq!(extend_functional(p, &dep, &[one, one], 2), Err(Error::DependentBasis));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(GfVector::new(Prime::THREE, &[0, 3]).is_err());
        assert!(GfMatrix::new(Prime::TWO, 1, 2, &[1, 2]).is_err());
        assert!(GfMatrix::new(Prime::TWO, 1, 2, &[1]).is_err());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(GfVector::enumerate(Prime::THREE, 3).count(), 27);
        let all: Vec<_> = GfVector::enumerate(Prime::TWO, 2).collect();
        assert_eq!(all[1], v(Prime::TWO, &[0, 1]));
    }
}
