//! Matrix units of `C*(V, W)` for a pair with `V^p = W^p = 1`, `VW = zeta WV`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::monomial::{Complex64, DenseComplexMatrix, MonomialMatrix};
use crate::phase::PhaseExp;

/// The `p^2` units `e_ij`, stored row-major in `(i, j)`.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    p: usize,
    units: Vec<DenseComplexMatrix>,
}

impl MatrixUnits {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> &DenseComplexMatrix {
        &self.units[i * self.p + j]
    }

    pub fn as_slice(&self) -> &[DenseComplexMatrix] {
        &self.units
    }

    pub fn into_vec(self) -> Vec<DenseComplexMatrix> {
        self.units
    }
}

/// `P_j = (1/p) sum_k zeta^{-jk} W^k` projects onto the `zeta^j` eigenspace of
/// `W`, and `V` maps that eigenspace onto the `zeta^{j-1}` one, so
/// `e_ij = V^{j-i} P_j` maps the range of `P_j` onto that of `P_i`.
pub fn matrix_units(v: &MonomialMatrix, w: &MonomialMatrix) -> Result<MatrixUnits> {
    let prime = v.modulus();
    prime.expect_same(w.modulus())?;
    if v.dim() != w.dim() {
        return Err(Error::LengthMismatch { expected: v.dim(), found: w.dim() });
    }
    let p = prime.get() as usize;
    if !v.pow(p as u64).is_identity() || !w.pow(p as u64).is_identity() {
        return Err(Error::Precondition("V^p = W^p = 1 fails".into()));
    }
    let vw = v.mul(w)?;
    let wv = w.mul(v)?.scale(PhaseExp::zeta_pow(prime, 1));
    if vw != wv {
        return Err(Error::Precondition("VW = zeta WV fails".into()));
    }

    let n = v.dim();
    let w_pows: Vec<DMatrix<Complex64>> = (0..p).map(|k| w.pow(k as u64).to_dense().0).collect();
    let projections: Vec<DMatrix<Complex64>> = (0..p)
        .map(|j| {
            let mut acc = DMatrix::<Complex64>::zeros(n, n);
            for (k, wk) in w_pows.iter().enumerate() {
                let (re, im) = PhaseExp::zeta_pow(prime, -((j * k) as i64)).to_complex();
                acc += wk * Complex64::new(re, im);
            }
            acc / Complex64::new(p as f64, 0.0)
        })
        .collect();
    let mut units = Vec::with_capacity(p * p);
    for i in 0..p {
        for j in 0..p {
            let shift = ((j + p - i) % p) as u64;
            units.push(DenseComplexMatrix(v.pow(shift).to_dense().0 * &projections[j]));
        }
    }
    Ok(MatrixUnits { p, units })
}

/// Worst-case deviations from the matrix-unit relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitDeviations {
    /// `max |e_ij e_kl - delta_jk e_il|`.
    pub product: f64,
    /// `max |e_ij^* - e_ji|`.
    pub adjoint: f64,
    /// `max |sum_i e_ii - 1|`.
    pub resolution: f64,
    /// Numerical rank of the span of all `e_ij`.
    pub span_rank: usize,
}

pub fn unit_deviations(units: &MatrixUnits, rank_tol: f64) -> UnitDeviations {
    let p = units.p();
    let n = units.get(0, 0).dim();
    let zero = DenseComplexMatrix(DMatrix::zeros(n, n));
    let mut product: f64 = 0.0;
    let mut adjoint: f64 = 0.0;
    for i in 0..p {
        for j in 0..p {
            adjoint = adjoint.max(units.get(i, j).adjoint().max_abs_diff(units.get(j, i)));
            for k in 0..p {
                for l in 0..p {
                    let lhs = units.get(i, j).mul(units.get(k, l));
                    let rhs = if j == k { units.get(i, l) } else { &zero };
                    product = product.max(lhs.max_abs_diff(rhs));
                }
            }
        }
    }
    let mut sum = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..p {
        sum += &units.get(i, i).0;
    }
    let resolution = DenseComplexMatrix(sum).max_abs_diff(&DenseComplexMatrix::identity(n));
    let stacked = DMatrix::<Complex64>::from_fn(n * n, p * p, |row, col| units.as_slice()[col].0[(row % n, row / n)]);
    let span_rank = stacked.singular_values().iter().filter(|&&s| s >= rank_tol).count();
    UnitDeviations { product, adjoint, resolution, span_rank }
}
