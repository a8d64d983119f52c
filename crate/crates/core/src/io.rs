//! Text matrix files.
//!
//! ```text
//! # Pauli pair
//! 2 2
//! 0 1
//! 1 0
//! ```
//!
//! or, for a banded system `c_ij = f(j - i)`, a header `p toeplitz m` followed
//! by the `m` values `f(1), ..., f(m)`. Blank lines and `#` comments are ignored.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{GfMatrix, GfVector, Prime};
use crate::symplectic::CommutationMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixFile {
    Explicit(CommutationMatrix),
    Toeplitz { p: Prime, pattern: Vec<u32> },
}

impl MatrixFile {
    pub fn modulus(&self) -> Prime {
        match self {
            MatrixFile::Explicit(c) => c.modulus(),
            MatrixFile::Toeplitz { p, .. } => *p,
        }
    }

    /// The matrix to analyze. A Toeplitz file defaults to `m + 1` generators,
    /// the smallest prefix that sees every pattern value.
    pub fn matrix(&self, n: Option<usize>) -> Result<CommutationMatrix> {
        match self {
            MatrixFile::Explicit(c) => match n {
                Some(n) if n != c.n() => Err(Error::Precondition(format!("--n-max {n} given for a fixed {0}x{0} matrix", c.n()))),
                _ => Ok(c.clone()),
            },
            MatrixFile::Toeplitz { p, pattern } => CommutationMatrix::toeplitz(*p, pattern, n.unwrap_or(pattern.len() + 1)),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_ints(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {t:?}"))))
        .collect()
}

fn check_residues(line: usize, p: Prime, vals: &[u32]) -> Result<()> {
    match vals.iter().find(|&&v| v >= p.get()) {
        Some(v) => Err(parse_err(line, format!("entry {v} is not in [0, {p})"))),
        None => Ok(()),
    }
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"p n\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let p: u32 = fields
        .first()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "header must start with the prime p"))?;
    let p = Prime::new(p).map_err(|e| parse_err(hline, e.to_string()))?;
    match fields[1..] {
        ["toeplitz", m] => {
            let m: usize = m.parse().map_err(|_| parse_err(hline, format!("bad pattern length {m:?}")))?;
            let mut pattern = Vec::with_capacity(m);
            let mut last = hline;
            for (line, s) in lines {
                let vals = parse_ints(line, s)?;
                check_residues(line, p, &vals)?;
                pattern.extend(vals);
                last = line;
                if pattern.len() > m {
                    return Err(parse_err(line, format!("more than {m} pattern values")));
                }
            }
            if pattern.len() != m {
                return Err(parse_err(last, format!("expected {m} pattern values, found {}", pattern.len())));
            }
            Ok(MatrixFile::Toeplitz { p, pattern })
        }
        [n] => {
            let n: usize = n.parse().map_err(|_| parse_err(hline, format!("bad dimension {n:?}")))?;
            let mut entries = Vec::with_capacity(n * n);
            let mut row_lines = Vec::with_capacity(n);
            for (line, s) in lines {
                if row_lines.len() == n {
                    return Err(parse_err(line, format!("more than {n} rows")));
                }
                let vals = parse_ints(line, s)?;
                if vals.len() != n {
                    return Err(parse_err(line, format!("expected {n} entries, found {}", vals.len())));
                }
                check_residues(line, p, &vals)?;
                entries.extend(vals);
                row_lines.push(line);
            }
            if row_lines.len() != n {
                let last = row_lines.last().copied().unwrap_or(hline);
                return Err(parse_err(last, format!("expected {n} rows, found {}", row_lines.len())));
            }
            let m = GfMatrix::new(p, n, n, &entries).map_err(|e| parse_err(hline, e.to_string()))?;
            CommutationMatrix::new(m).map(MatrixFile::Explicit).map_err(|e| match e {
                Error::NotAlternating { i, j } => parse_err(
                    row_lines[i.max(j)],
                    format!("matrix is not alternating at ({}, {}) (1-based)", i + 1, j + 1),
                ),
                other => parse_err(hline, other.to_string()),
            })
        }
        _ => Err(parse_err(hline, "header must be \"p n\" or \"p toeplitz m\"")),
    }
}

/// One vector per line, all of length `n`.
pub fn parse_vectors(text: &str, p: Prime, n: usize) -> Result<Vec<GfVector>> {
    content_lines(text)
        .map(|(line, s)| {
            let vals = parse_ints(line, s)?;
            if vals.len() != n {
                return Err(parse_err(line, format!("expected {n} entries, found {}", vals.len())));
            }
            check_residues(line, p, &vals)?;
            GfVector::new(p, &vals)
        })
        .collect()
}

pub fn write_matrix_file(c: &CommutationMatrix) -> String {
    let n = c.n();
    let mut out = format!("{} {}\n", c.modulus(), n);
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| c.entry(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Uniform alternating matrix: the strict upper triangle is filled row by
/// row with i.i.d. residues and mirrored with negation.
pub fn random_alternating(p: Prime, n: usize, seed: u64) -> CommutationMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut upper = vec![0u8; n * n];
    for i in 0..n {
        for j in i + 1..n {
            upper[i * n + j] = rng.gen_range(0..p.get()) as u8;
        }
    }
    CommutationMatrix::from_upper(p, n, |i, j| upper[i * n + j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::clifford_matrix;

    #[test]
    fn parses_pauli_with_comments() {
        let f = parse_matrix_file("# pauli\n2 2  # header\n\n0 1\n1 0\n").unwrap();
        assert_eq!(f, MatrixFile::Explicit(clifford_matrix(Prime::TWO, 2).unwrap()));
    }

    #[test]
    fn parses_toeplitz() {
        let f = parse_matrix_file("2 toeplitz 3\n1 1\n1\n").unwrap();
        let c = f.matrix(None).unwrap();
        assert_eq!(c.matrix(), clifford_matrix(Prime::TWO, 4).unwrap().matrix());
        assert_eq!(f.matrix(Some(2)).unwrap().n(), 2);
    }

    #[test]
    fn line_numbered_errors() {
        let err = |s: &str| match parse_matrix_file(s) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(err(""), 1);
        assert_eq!(err("4 2\n0 1\n1 0\n"), 1);
        assert_eq!(err("2 2\n0 1\n1 x\n"), 3);
        assert_eq!(err("3 2\n0 1\n1 0\n"), 3);
        assert_eq!(err("3 2\n0 1\n# skew fails\n1 0\n"), 4);
        assert_eq!(err("2 2\n0 1\n"), 2);
        assert_eq!(err("2 2\n0 1\n1 0\n0 0\n"), 4);
        assert_eq!(err("2 2\n0 1 0\n1 0\n"), 2);
        assert_eq!(err("2 toeplitz 2\n1\n"), 2);
        assert_eq!(err("2 toeplitz 1\n2\n"), 2);
        assert_eq!(err("2\n"), 1);
    }

    #[test]
    fn round_trip() {
        for (p, n, seed) in [(Prime::TWO, 5, 1), (Prime::THREE, 4, 2), (Prime::FIVE, 6, 3), (Prime::TWO, 0, 4)] {
            let c = random_alternating(p, n, seed);
            let back = parse_matrix_file(&write_matrix_file(&c)).unwrap();
            assert_eq!(back, MatrixFile::Explicit(c));
        }
    }

    #[test]
    fn random_is_seeded() {
        let a = random_alternating(Prime::FIVE, 8, 42);
        assert_eq!(a, random_alternating(Prime::FIVE, 8, 42));
        assert_ne!(a, random_alternating(Prime::FIVE, 8, 43));
    }

    #[test]
    fn vectors() {
        let v = parse_vectors("1 1 0\n# c\n0 1 1\n", Prime::TWO, 3).unwrap();
        assert_eq!(v.len(), 2);
        assert!(parse_vectors("1 1\n", Prime::TWO, 3).is_err());
    }
}
