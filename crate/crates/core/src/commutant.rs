//! Dimension of the commutant `{X : X U_k = U_k X for all k}`.
//!
//! For a monomial `U` with `U e_j = phi_j e_{s(j)}` the equation
//! `(XU - UX)_{a,j} = 0` reads `phi_j X_{a,s(j)} - phi_{s^-1(a)} X_{s^-1(a),j} = 0`,
//! which couples exactly the unknowns `(s^-1(a), j)` and `(a, s(j))`. The
//! stacked system over all generators is therefore block diagonal over the
//! orbits of `(r, c) -> (s(r), s(c))`; each block is solved with a complex
//! SVD and its nullity counted with the threshold `1e-8 * N`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::monomial::Complex64;
use crate::phase::PhaseExp;
use crate::rep::{Limits, Representation};

struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// One equation `coef_a * X[a] + coef_b * X[b] = 0` (indices into `X` flattened row-major).
#[derive(Clone, Copy)]
struct Equation {
    a: u32,
    coef_a: Complex64,
    b: u32,
    coef_b: Complex64,
}

fn complex(p: crate::gf::Prime, exp: u32) -> Complex64 {
    let (re, im) = PhaseExp::new(p, exp as i64).to_complex();
    Complex64::new(re, im)
}

pub fn commutant_dim(rep: &Representation, limits: &Limits) -> Result<usize> {
    commutant_dim_with(rep, limits, Execution::default())
}

pub fn commutant_dim_with(rep: &Representation, limits: &Limits, exec: Execution) -> Result<usize> {
    let n = rep.dim();
    if n > limits.max_commutant_dim {
        return Err(Error::SizeBound { dim: n as u128, bound: limits.max_commutant_dim as u128 });
    }
    let p = rep.matrix().modulus();
    let unknowns = n * n;
    let mut sets = DisjointSets::new(unknowns);
    let mut equations = Vec::with_capacity(rep.generators().len() * unknowns);
    for g in rep.generators() {
        let perm = g.perm();
        let phases = g.phase_exps();
        for r in 0..n {
            for col in 0..n {
                // row a = s(r) of the equation: phi_col X[a, s(col)] - phi_r X[r, col] = 0
                let a = perm[r] as usize * n + perm[col] as usize;
                let b = r * n + col;
                equations.push(Equation {
                    a: a as u32,
                    coef_a: complex(p, phases[col]),
                    b: b as u32,
                    coef_b: -complex(p, phases[r]),
                });
                sets.union(a as u32, b as u32);
            }
        }
    }

    let mut block_of_root = vec![u32::MAX; unknowns];
    let mut local_index = vec![0u32; unknowns];
    let mut block_sizes: Vec<usize> = Vec::new();
    let mut block_of_unknown = vec![0u32; unknowns];
    for u in 0..unknowns {
        let root = sets.find(u as u32) as usize;
        if block_of_root[root] == u32::MAX {
            block_of_root[root] = block_sizes.len() as u32;
            block_sizes.push(0);
        }
        let blk = block_of_root[root] as usize;
        block_of_unknown[u] = blk as u32;
        local_index[u] = block_sizes[blk] as u32;
        block_sizes[blk] += 1;
    }
    let mut block_equations: Vec<Vec<Equation>> = vec![Vec::new(); block_sizes.len()];
    for eq in equations {
        block_equations[block_of_unknown[eq.a as usize] as usize].push(eq);
    }

    let tol = 1e-8 * n as f64;
    Ok(exec.sum(block_sizes.len(), |blk| {
        let m = block_sizes[blk];
        let eqs = &block_equations[blk];
        if eqs.is_empty() {
            return m;
        }
        let mut a = DMatrix::<Complex64>::zeros(eqs.len(), m);
        for (row, eq) in eqs.iter().enumerate() {
            a[(row, local_index[eq.a as usize] as usize)] += eq.coef_a;
            a[(row, local_index[eq.b as usize] as usize)] += eq.coef_b;
        }
        let rank = a.singular_values().iter().filter(|&&s| s >= tol).count();
        m - rank
    }))
}
