//! Dense polynomials in one variable `q` with arbitrary-precision integer
//! coefficients and an integer exponent offset (so small negative exponents
//! arising from prefactors are representable).
//!
//! The canonical form strips leading and trailing zero coefficients; the
//! zero polynomial is the empty coefficient list with offset 0. All
//! operations return canonical values, so `==` is meaningful equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Polynomial in `q`: `coeffs[k]` is the coefficient of `q^(offset+k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Polynomial::from_coeffs(0, vec![c.into()])
    }

    /// Single term `c * q^exp`.
    pub fn monomial<T: Into<BigInt>>(c: T, exp: i64) -> Self {
        Polynomial::from_coeffs(exp, vec![c.into()])
    }

    /// Build from a coefficient list starting at exponent `offset`;
    /// the result is canonicalized.
    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { offset, coeffs };
        p.canonicalize();
        p
    }

    pub fn from_i64_coeffs(offset: i64, coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest represented exponent (0 for the zero polynomial).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset + self.coeffs.len() as i64 - 1)
        }
    }

    /// Coefficient of `q^exp` (zero outside the stored range).
    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Terms in increasing exponent order, nonzero coefficients only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        let offset = self.offset;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (offset + k as i64, c))
    }

    /// Multiply by `q^e` (negative `e` allowed).
    pub fn shifted(&self, e: i64) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { offset: self.offset + e, coeffs: self.coeffs.clone() }
    }

    /// Substitute `q -> q^d`, mapping exponent `k` to `d*k`. Requires `d >= 1`.
    pub fn substitute_power(&self, d: u32) -> Polynomial {
        assert!(d >= 1, "substitution power must be positive");
        if self.is_zero() || d == 1 {
            return self.clone();
        }
        let d = d as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * d] = c.clone();
            }
        }
        Polynomial { offset: self.offset * d as i64, coeffs }
    }

    /// Exact division: returns `R` with `R * divisor == self`, or
    /// [`Error::NonExact`] if any step leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, Error> {
        if divisor.is_zero() {
            return Err(Error::NonExact("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return Err(Error::NonExact("divisor degree exceeds dividend degree".into()));
        }
        let dv = &divisor.coeffs;
        let dlead = dv.last().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dv.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for qi in (0..qlen).rev() {
            let lead = rem[qi + dv.len() - 1].clone();
            if lead.is_zero() {
                continue;
            }
            let (qc, r) = lead.div_rem(dlead);
            if !r.is_zero() {
                return Err(Error::NonExact(format!(
                    "leading coefficient {lead} not divisible by {dlead}"
                )));
            }
            for (t, dc) in dv.iter().enumerate() {
                rem[qi + t] -= &qc * dc;
            }
            quot[qi] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExact("division left a remainder".into()));
        }
        Ok(Polynomial::from_coeffs(self.offset - divisor.offset, quot))
    }

    /// Lowest exponent carrying a negative coefficient, with that
    /// coefficient; `None` when every coefficient is non-negative.
    pub fn first_negative(&self) -> Option<(i64, BigInt)> {
        self.coeffs
            .iter()
            .position(|c| c.is_negative())
            .map(|k| (self.offset + k as i64, self.coeffs[k].clone()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Smallest coefficient over the support (zero for the zero polynomial).
    pub fn min_coeff(&self) -> BigInt {
        self.coeffs.iter().min().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn sum_coeffs(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

fn add_with_sign(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.offset.min(b.offset);
    let hi = (a.offset + a.coeffs.len() as i64).max(b.offset + b.coeffs.len() as i64);
    let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.offset - lo) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.offset - lo) as usize + k];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    Polynomial::from_coeffs(lo, coeffs)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add_with_sign(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        add_with_sign(self, rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (ka, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (kb, cb) in rhs.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    coeffs[ka + kb] += ca * cb;
                }
            }
        }
        Polynomial::from_coeffs(self.offset + rhs.offset, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let one = mag == BigInt::from(1);
            match (exp, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{exp}")?,
                (_, false) => write!(f, "{mag}*q^{exp}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    offset: i64,
    coeffs: Vec<String>,
}

// Coefficients serialize as decimal strings so downstream JSON consumers
// never face 64-bit overflow.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for s in &repr.coeffs {
            let c: BigInt = s
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer literal {s:?}")))?;
            coeffs.push(c);
        }
        Ok(Polynomial::from_coeffs(repr.offset, coeffs))
    }
}
