use std::fmt;

use serde::Serialize;

use crate::gf::Prime;

/// The root of unity `exp(2 pi i * exp / p^2)`, stored as its exponent mod `p^2`.
///
/// `zeta = exp(2 pi i / p)` has exponent `p`; for `p = 2` the exponents
/// `0, 1, 2, 3` are `1, i, -1, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhaseExp {
    exp: u32,
    p: Prime,
}

impl PhaseExp {
    pub fn new(p: Prime, exp: i64) -> Self {
        PhaseExp { exp: exp.rem_euclid(p.squared() as i64) as u32, p }
    }

    pub fn one(p: Prime) -> Self {
        PhaseExp { exp: 0, p }
    }

    /// `zeta^k`.
    pub fn zeta_pow(p: Prime, k: i64) -> Self {
        Self::new(p, k * p.get() as i64)
    }

    pub fn exp(self) -> u32 {
        self.exp
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_one(self) -> bool {
        self.exp == 0
    }

    pub fn mul(self, other: PhaseExp) -> PhaseExp {
        debug_assert_eq!(self.p, other.p);
        PhaseExp { exp: (self.exp + other.exp) % self.p.squared(), p: self.p }
    }

    pub fn inv(self) -> PhaseExp {
        PhaseExp { exp: (self.p.squared() - self.exp) % self.p.squared(), p: self.p }
    }

    pub fn pow(self, k: u64) -> PhaseExp {
        Self::new(self.p, (self.exp as u64 * (k % self.p.squared() as u64)) as i64)
    }

    /// The complex value, for numerical routines only.
    pub fn to_complex(self) -> (f64, f64) {
        let theta = std::f64::consts::TAU * self.exp as f64 / self.p.squared() as f64;
        // exact values at the quarter turns keep 2x2 examples free of rounding noise
        match (4 * self.exp) % self.p.squared() {
            0 => match 4 * self.exp / self.p.squared() {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, -1.0),
            },
            _ => (theta.cos(), theta.sin()),
        }
    }
}

impl Serialize for PhaseExp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.exp)
    }
}

impl fmt::Display for PhaseExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(2pi i {}/{})", self.exp, self.p.squared())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_is_multiple_of_p() {
        assert_eq!(PhaseExp::zeta_pow(Prime::TWO, 1).exp(), 2);
        assert_eq!(PhaseExp::zeta_pow(Prime::THREE, 2).exp(), 6);
        assert_eq!(PhaseExp::zeta_pow(Prime::THREE, 3).exp(), 0);
        assert_eq!(PhaseExp::new(Prime::TWO, -1).exp(), 3);
    }

    #[test]
    fn complex_values() {
        assert_eq!(PhaseExp::new(Prime::TWO, 1).to_complex(), (0.0, 1.0));
        assert_eq!(PhaseExp::new(Prime::TWO, 2).to_complex(), (-1.0, 0.0));
        let (re, im) = PhaseExp::zeta_pow(Prime::THREE, 1).to_complex();
        assert!((re + 0.5).abs() < 1e-15 && (im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn pow_and_inv() {
        let i = PhaseExp::new(Prime::TWO, 1);
        assert!(i.pow(4).is_one());
        assert_eq!(i.pow(2).exp(), 2);
        assert!(i.mul(i.inv()).is_one());
    }
}
