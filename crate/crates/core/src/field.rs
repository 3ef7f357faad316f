//! Arithmetic in the prime field F_p with word-sized residues.

use std::fmt;

use crate::error::{HkError, Result};

/// Largest accepted characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The field F_p. Copyable handle; all arithmetic goes through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(HkError::InvalidCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into [0, p).
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a as u64 % self.p as u64;
        let mut acc = 1u64 % self.p as u64;
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(HkError::DivisionByZero { p: self.p });
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Ok(self.from_i64(t0))
    }

    pub fn element(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: self.from_i64(v),
            field: *self,
        }
    }
}

/// A residue together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    field: PrimeField,
}

impl PrimeFieldElement {
    pub fn new(p: u64, value: i64) -> Result<Self> {
        Ok(PrimeField::new(p)?.element(value))
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(HkError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.field.pow(self.value, exp))
    }

    fn with(&self, value: u32) -> Self {
        PrimeFieldElement {
            value,
            field: self.field,
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// One-shot field operation on raw integers; `b` is only read by binary ops.
pub fn field_arith(p: u64, op: FieldOp, a: i64, b: Option<i64>) -> Result<u32> {
    let field = PrimeField::new(p)?;
    let a = field.from_i64(a);
    let operand = || {
        b.map(|b| field.from_i64(b))
            .ok_or_else(|| HkError::InvalidParameter("binary field operation needs two operands".into()))
    };
    match op {
        FieldOp::Add => Ok(field.add(a, operand()?)),
        FieldOp::Mul => Ok(field.mul(a, operand()?)),
        FieldOp::Neg => Ok(field.neg(a)),
        FieldOp::Inv => field.inv(a),
    }
}
