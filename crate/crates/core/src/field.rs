//! Exact scalar arithmetic: prime fields GF(p) and the rationals.
//!
//! Everything downstream is generic over [`Scalar`]. The two implementations
//! are [`Fp`] (machine-word prime fields, runtime modulus) and [`Rat`]
//! (arbitrary-precision rationals). A [`FieldSpec`] names the field at the
//! API boundary (CLI flags, DSL headers) and is the context needed to turn
//! integer literals into scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u64, u64),
    #[error("characteristic 2: 1/2 does not exist")]
    CharTwo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus must be < 2^31, got {0}")]
    ModulusTooLarge(u64),
}

/// Names a coefficient field: GF(p) for a prime p, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldSpec {
    #[serde(rename = "gf")]
    PrimeField(u64),
    #[serde(rename = "rat")]
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    /// Parses the CLI spelling: `gf2`, `gf3`, `gfP:<p>`, `rat`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "rat" | "q" => Ok(FieldSpec::Rationals),
            "gf2" => Ok(FieldSpec::PrimeField(2)),
            "gf3" => Ok(FieldSpec::PrimeField(3)),
            _ => {
                let p = t
                    .strip_prefix("gfp:")
                    .or_else(|| t.strip_prefix("gf"))
                    .ok_or_else(|| format!("unrecognized field `{s}`"))?;
                let p: u64 = p.parse().map_err(|_| format!("unrecognized field `{s}`"))?;
                FieldSpec::prime(p).map_err(|e| e.to_string())
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Canonical forms are unique, so `==` decides
/// equality of field elements.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + 'static
{
    /// The scalar for the integer `n` in the field named by `spec`.
    fn from_spec_int(spec: &FieldSpec, n: i64) -> Self;

    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self, FieldError>;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// The inverse of 1+1, used by every characteristic ≠ 2 isomorphism.
    fn half(spec: &FieldSpec) -> Result<Self, FieldError> {
        if spec.characteristic() == 2 {
            return Err(FieldError::CharTwo);
        }
        Self::from_spec_int(spec, 2).inv()
    }

    /// True if this scalar type can represent elements of `spec`.
    fn matches_spec(spec: &FieldSpec) -> bool;
}

/// Element of GF(p). The modulus travels with the value; `p == 0` marks a
/// plain integer not yet bound to a modulus (produced by `zero()`/`one()`),
/// which any arithmetic with a bound element reduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    v: i64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!(p == 0 || p < (1 << 31));
        let mut r = Fp { v, p };
        r.normalize();
        r
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> i64 {
        self.v
    }

    fn normalize(&mut self) {
        if self.p > 0 {
            self.v = self.v.rem_euclid(self.p as i64);
        }
    }

    fn join(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, p) | (p, 0) => p,
            (p, q) => {
                assert_eq!(p, q, "mixed moduli GF({p}) and GF({q})");
                p
            }
        }
    }
}

impl PartialOrd for Fp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.v.cmp(&other.v))
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_one(&self) -> bool {
        if self.p > 0 {
            self.v == 1 || self.p == 1
        } else {
            self.v == 1
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp::new(self.v + rhs.v, Fp::join(self.p, rhs.p))
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp::new(self.v - rhs.v, Fp::join(self.p, rhs.p))
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = Fp::join(self.p, rhs.p);
        let prod = (self.v as i128) * (rhs.v as i128);
        let v = if p > 0 { prod.rem_euclid(p as i128) as i64 } else { prod as i64 };
        Fp { v, p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::new(-self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Fp {
    fn from_spec_int(spec: &FieldSpec, n: i64) -> Self {
        match spec {
            FieldSpec::PrimeField(p) => Fp::new(n, *p),
            FieldSpec::Rationals => panic!("Fp scalar asked to represent a rational"),
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.v == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if self.p == 0 {
            // unbound integers ±1 are self-inverse in every field
            assert!(
                self.v == 1 || self.v == -1,
                "cannot invert the unbound integer scalar {}",
                self.v
            );
            return Ok(*self);
        }
        // extended Euclid on (v, p)
        let (mut r0, mut r1) = (self.p as i64, self.v);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus not prime?");
        Ok(Fp::new(t0, self.p))
    }

    fn matches_spec(spec: &FieldSpec) -> bool {
        matches!(spec, FieldSpec::PrimeField(_))
    }
}

/// Arbitrary-precision rational scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Scalar for Rat {
    fn from_spec_int(_spec: &FieldSpec, n: i64) -> Self {
        Rat::from_int(n)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.0.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    fn matches_spec(spec: &FieldSpec) -> bool {
        matches!(spec, FieldSpec::Rationals)
    }
}

/// Renders a scalar for reports: rationals keep their sign, GF(p) values
/// print as canonical residues.
pub fn scalar_is_negative<K: Scalar>(k: &K) -> bool {
    // Display-level convenience used by the formatter; only meaningful over Q.
    let s = format!("{k}");
    s.starts_with('-')
}

/// Signed display helper over Q: `(sign, magnitude-string)`.
pub fn scalar_display_parts<K: Scalar>(k: &K) -> (bool, String) {
    let s = format!("{k}");
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

impl Rat {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}
