//! Scalar arithmetic shared by the array simulator and the serial eliminator.
//!
//! Three carriers are supported: IEEE doubles with an epsilon zero test,
//! residues modulo a prime `M`, and GF(2). The zero test is the only place
//! where epsilon enters; arithmetic on reals is plain `f64` arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Default zero-test tolerance for the real field.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Largest accepted prime modulus, so that products of two residues fit in 64 bits.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2..=2147483647")]
    ModulusOutOfRange(u64),
    #[error("epsilon must be a finite nonnegative number, got {0}")]
    BadEpsilon(f64),
    #[error(
        "unrecognized field selection `{0}` (expected real, real:eps=<float>, gfp:<M> or gf2)"
    )]
    BadSelection(String),
    #[error("cannot parse `{token}` as a {field} value")]
    BadValue { token: String, field: String },
}

/// Which arithmetic the machine and the eliminators run in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Real { epsilon: f64 },
    PrimeMod { modulus: u64 },
    Gf2,
}

/// A field element. Residues are always kept canonical, in `[0, M)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Real(f64),
    Residue(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

impl Scalar {
    pub fn as_f64(self) -> f64 {
        match self {
            Scalar::Real(v) => v,
            Scalar::Residue(r) => r as f64,
        }
    }

    /// The canonical residue. Panics on a real scalar.
    pub fn residue(self) -> u64 {
        match self {
            Scalar::Residue(r) => r,
            Scalar::Real(v) => panic!("expected a residue, found real scalar {v}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Real(v) => write!(f, "{v}"),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            Scalar::Real(v) => serializer.serialize_f64(v),
            Scalar::Residue(r) => serializer.serialize_u64(r),
        }
    }
}

/// Trial division up to the square root.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative inverse of `x` modulo `modulus` via the extended Euclidean algorithm.
pub fn mod_inverse(x: u64, modulus: u64) -> Result<u64, FieldError> {
    let not_invertible = FieldError::NotInvertible { value: x, modulus };
    if modulus < 2 || x.is_multiple_of(modulus) {
        return Err(not_invertible);
    }
    let (mut old_r, mut r) = (x as i128 % modulus as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(not_invertible);
    }
    Ok(old_s.rem_euclid(modulus as i128) as u64)
}

impl FieldSpec {
    pub fn real() -> Self {
        FieldSpec::Real {
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn real_with_epsilon(epsilon: f64) -> Result<Self, FieldError> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(FieldError::BadEpsilon(epsilon));
        }
        Ok(FieldSpec::Real { epsilon })
    }

    /// Integers modulo a prime. `M = 2` yields [`FieldSpec::Gf2`].
    pub fn prime(modulus: u64) -> Result<Self, FieldError> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(FieldError::ModulusOutOfRange(modulus));
        }
        if !is_prime(modulus) {
            return Err(FieldError::NotPrime(modulus));
        }
        if modulus == 2 {
            return Ok(FieldSpec::Gf2);
        }
        Ok(FieldSpec::PrimeMod { modulus })
    }

    pub fn gf2() -> Self {
        FieldSpec::Gf2
    }

    /// The modulus of an exact field; `None` for reals.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            FieldSpec::Real { .. } => None,
            FieldSpec::PrimeMod { modulus } => Some(modulus),
            FieldSpec::Gf2 => Some(2),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldSpec::Real { .. })
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Real { .. } => Scalar::Real(0.0),
            _ => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Real { .. } => Scalar::Real(1.0),
            _ => Scalar::Residue(1),
        }
    }

    /// Loads an integer, canonicalizing negatives for the exact fields.
    pub fn from_int(&self, v: i64) -> Scalar {
        match self.modulus() {
            None => Scalar::Real(v as f64),
            Some(m) => Scalar::Residue((v as i128).rem_euclid(m as i128) as u64),
        }
    }

    /// Parses one matrix entry: a decimal for reals, an integer otherwise.
    pub fn parse_value(&self, token: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadValue {
            token: token.to_string(),
            field: self.to_string(),
        };
        match self {
            FieldSpec::Real { .. } => {
                let v: f64 = token.parse().map_err(|_| bad())?;
                if !v.is_finite() {
                    return Err(bad());
                }
                Ok(Scalar::Real(v))
            }
            _ => token
                .parse::<i64>()
                .map(|v| self.from_int(v))
                .map_err(|_| bad()),
        }
    }

    pub fn op(&self, op: FieldOp, a: Scalar, b: Scalar) -> Scalar {
        match *self {
            FieldSpec::Real { .. } => {
                let (x, y) = (real(a), real(b));
                Scalar::Real(match op {
                    FieldOp::Add => x + y,
                    FieldOp::Sub => x - y,
                    FieldOp::Mul => x * y,
                })
            }
            FieldSpec::Gf2 => {
                let (x, y) = (a.residue(), b.residue());
                debug_assert!(x < 2 && y < 2);
                Scalar::Residue(match op {
                    FieldOp::Add | FieldOp::Sub => x ^ y,
                    FieldOp::Mul => x & y,
                })
            }
            FieldSpec::PrimeMod { modulus } => {
                let (x, y) = (a.residue(), b.residue());
                debug_assert!(x < modulus && y < modulus);
                Scalar::Residue(match op {
                    FieldOp::Add => (x + y) % modulus,
                    FieldOp::Sub => (x + modulus - y) % modulus,
                    FieldOp::Mul => x * y % modulus,
                })
            }
        }
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        self.op(FieldOp::Add, a, b)
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.op(FieldOp::Sub, a, b)
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        self.op(FieldOp::Mul, a, b)
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        self.sub(self.zero(), a)
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, FieldError> {
        if self.is_zero(b) {
            return Err(FieldError::DivisionByZero);
        }
        match *self {
            FieldSpec::Real { .. } => Ok(Scalar::Real(real(a) / real(b))),
            // the only nonzero divisor is 1
            FieldSpec::Gf2 => Ok(a),
            FieldSpec::PrimeMod { modulus } => {
                let inv = mod_inverse(b.residue(), modulus)?;
                Ok(self.mul(a, Scalar::Residue(inv)))
            }
        }
    }

    /// `|a| <= epsilon` for reals, exact comparison with zero otherwise.
    pub fn is_zero(&self, a: Scalar) -> bool {
        match *self {
            FieldSpec::Real { epsilon } => real(a).abs() <= epsilon,
            _ => a.residue() == 0,
        }
    }
}

fn real(s: Scalar) -> f64 {
    match s {
        Scalar::Real(v) => v,
        Scalar::Residue(r) => panic!("expected a real scalar, found residue {r}"),
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldSpec::Real { epsilon } if epsilon == DEFAULT_EPSILON => write!(f, "real"),
            FieldSpec::Real { epsilon } => write!(f, "real:eps={epsilon:e}"),
            FieldSpec::PrimeMod { modulus } => write!(f, "gfp:{modulus}"),
            FieldSpec::Gf2 => write!(f, "gf2"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FieldError::BadSelection(s.to_string());
        if s == "real" {
            return Ok(FieldSpec::real());
        }
        if s == "gf2" {
            return Ok(FieldSpec::Gf2);
        }
        if let Some(eps) = s.strip_prefix("real:eps=") {
            let eps: f64 = eps.parse().map_err(|_| bad())?;
            return FieldSpec::real_with_epsilon(eps);
        }
        if let Some(m) = s.strip_prefix("gfp:") {
            let m: u64 = m.parse().map_err(|_| bad())?;
            return FieldSpec::prime(m);
        }
        Err(bad())
    }
}
