//! Exact scalars.
//!
//! Everything downstream of the rewriting engine works over the rationals.
//! The rewriting engine itself is generic over [`Coeff`] so that Hilbert
//! tables can also be computed over a prime field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3`, `1/2`, `-1/2`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s.trim(), None),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Renders a rational the way the DSL reads it back.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coefficient domain for the rewriting engine.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + fmt::Debug + Send + Sync;

    /// Maps a rational into the domain; `None` when the denominator vanishes.
    fn embed(q: &Rat, ctx: &Self::Ctx) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn to_text(&self) -> String;
}

impl Coeff for Rat {
    type Ctx = ();

    fn embed(q: &Rat, _: &()) -> Option<Self> {
        Some(q.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn to_text(&self) -> String {
        fmt_rat(self)
    }
}

/// Element of a prime field `F_p`, `p < 2^32`. The modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn pow(&self, mut e: u64) -> Fp {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Fp {
            value: acc,
            modulus: self.modulus,
        }
    }
}

/// Checks primality of a candidate modulus by trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Coeff for Fp {
    type Ctx = u64;

    fn embed(q: &Rat, p: &u64) -> Option<Self> {
        let big_p = BigInt::from(*p);
        let reduce = |x: &BigInt| -> u64 {
            let r = x % &big_p;
            let r = if r.is_negative() { r + &big_p } else { r };
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        };
        let n = reduce(q.numer());
        let d = reduce(q.denom());
        if d == 0 {
            return None;
        }
        let den = Fp { value: d, modulus: *p };
        Some(Fp { value: n, modulus: *p }.mul(&den.inv()))
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Fp {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp {
            value: self.value * other.value % self.modulus,
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_p");
        self.pow(self.modulus - 2)
    }
    fn to_text(&self) -> String {
        self.value.to_string()
    }
}
