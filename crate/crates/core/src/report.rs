//! Structure report for the algebra generated by a spin system: the center
//! is spanned by the kernel words, the rest is a full matrix algebra.

use serde::Serialize;

use crate::error::Result;
use crate::gf::{GfVector, Prime};
use crate::symplectic::{extend_symplectic_basis, symplectic_basis, CommutationMatrix, MatrixSource, SymplecticBasis};
use crate::words::count_classes;

/// One prefix of a Toeplitz system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Old symplectic pairs that had to be rebuilt when growing to this prefix.
    pub rebuilt_pairs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankGrowth {
    pub rows: Vec<GrowthRow>,
    /// Heuristic: the rank still increased over the last two prefixes.
    pub infinite_rank_conjectured: bool,
    pub note: &'static str,
}

pub const GROWTH_NOTE: &str = "conjecture only: finite prefixes cannot prove infinite rank";

/// Ranks of the `1 x 1, ..., n_max x n_max` prefixes, grown incrementally.
pub fn rank_growth(p: Prime, pattern: &[u32], n_max: usize) -> Result<RankGrowth> {
    let mut rows = Vec::with_capacity(n_max);
    let mut basis: Option<SymplecticBasis> = None;
    for n in 1..=n_max {
        let c = CommutationMatrix::toeplitz(p, pattern, n)?;
        let (next, rebuilt) = match &basis {
            None => (symplectic_basis(&c), Vec::new()),
            Some(prev) => {
                let ext = extend_symplectic_basis(&c, prev)?;
                (ext.basis, ext.rebuilt)
            }
        };
        rows.push(GrowthRow { n, rank: 2 * next.r(), kernel_dim: next.d(), rebuilt_pairs: rebuilt });
        basis = Some(next);
    }
    let infinite_rank_conjectured = n_max >= 3 && rows[n_max - 1].rank > rows[n_max - 3].rank;
    Ok(RankGrowth { rows, infinite_rank_conjectured, note: GROWTH_NOTE })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub p: u32,
    pub n: usize,
    pub rank: usize,
    pub r: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<GfVector>,
    /// `p^d`, the dimension of the center; `None` if it overflows.
    pub center_dim: Option<u128>,
    /// `p^r`, the size of the matrix factor.
    pub matrix_factor_dim: Option<u128>,
    pub matrix_factor: String,
    pub descriptor: String,
    pub simple: bool,
    /// `2^d` for `p = 2`; not defined for odd `p`.
    pub class_count: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_growth: Option<RankGrowth>,
}

fn pow_label(p: Prime, e: usize) -> (Option<u128>, String) {
    match (p.get() as u128).checked_pow(e as u32) {
        Some(v) => (Some(v), v.to_string()),
        None => (None, format!("{}^{}", p, e)),
    }
}

pub fn structure_report(c: &CommutationMatrix) -> Result<StructureReport> {
    let p = c.modulus();
    let basis = symplectic_basis(c);
    let (r, d) = (basis.r(), basis.d());
    let (center_dim, center_label) = pow_label(p, d);
    let (matrix_factor_dim, factor_label) = pow_label(p, r);
    let matrix_factor = format!("M_{factor_label}");
    let descriptor = match (r, d) {
        (_, 0) => matrix_factor.clone(),
        (0, _) => format!("C(X_{center_label})"),
        _ => format!("C(X_{center_label}) \u{2297} {matrix_factor}"),
    };
    let class_count = if p == Prime::TWO { count_classes(d).ok() } else { None };
    let rank_growth = match c.source() {
        MatrixSource::Toeplitz { pattern } => {
            let pattern: Vec<u32> = pattern.iter().map(|&v| v as u32).collect();
            Some(rank_growth(p, &pattern, c.n())?)
        }
        MatrixSource::Explicit => None,
    };
    Ok(StructureReport {
        p: p.get(),
        n: c.n(),
        rank: 2 * r,
        r,
        kernel_dim: d,
        kernel_basis: basis.kernel,
        center_dim,
        matrix_factor_dim,
        matrix_factor,
        descriptor,
        simple: d == 0,
        class_count,
        rank_growth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::clifford_matrix;

    #[test]
    fn pauli() {
        let r = structure_report(&clifford_matrix(Prime::TWO, 2).unwrap()).unwrap();
        assert_eq!((r.rank, r.kernel_dim, r.simple), (2, 0, true));
        assert_eq!(r.descriptor, "M_2");
        assert_eq!(r.class_count, Some(1));
    }

    #[test]
    fn clifford3() {
        let r = structure_report(&clifford_matrix(Prime::TWO, 3).unwrap()).unwrap();
        assert_eq!((r.rank, r.kernel_dim, r.simple), (2, 1, false));
        assert_eq!(r.descriptor, "C(X_2) \u{2297} M_2");
        assert_eq!(r.center_dim, Some(2));
        assert_eq!(r.class_count, Some(2));
    }

    #[test]
    fn zero_is_commutative() {
        let r = structure_report(&CommutationMatrix::zero(Prime::TWO, 3)).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.descriptor, "C(X_8)");
        let r3 = structure_report(&CommutationMatrix::zero(Prime::THREE, 2)).unwrap();
        assert_eq!(r3.descriptor, "C(X_9)");
        assert_eq!(r3.class_count, None);
    }

    #[test]
    fn clifford_growth() {
        let g = rank_growth(Prime::TWO, &[1, 1, 1, 1, 1], 6).unwrap();
        let ranks: Vec<usize> = g.rows.iter().map(|r| r.rank).collect();
        assert_eq!(ranks, vec![0, 2, 2, 4, 4, 6]);
        assert!(g.infinite_rank_conjectured);
        assert!(g.rows.iter().all(|r| r.rebuilt_pairs.is_empty()));

        let flat = rank_growth(Prime::TWO, &[], 5).unwrap();
        assert!(!flat.infinite_rank_conjectured);
    }

    #[test]
    fn toeplitz_report_has_growth_table() {
        let c = CommutationMatrix::toeplitz(Prime::TWO, &[1], 4).unwrap();
        let r = structure_report(&c).unwrap();
        assert_eq!(r.rank_growth.unwrap().rows.len(), 4);
    }
}
