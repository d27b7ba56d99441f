use std::fmt;

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The principal ideal domain that decides integrality: `Z` or the
/// localization `Z_(p)`, i.e. rationals whose denominator is prime to `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoefficientRing {
    #[serde(rename = "integers")]
    Integers,
    #[serde(rename = "local")]
    LocalizedAtPrime { prime: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
fn int_valuation(x: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!x.is_zero());
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

impl CoefficientRing {
    pub fn localized(prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(CoefficientRing::LocalizedAtPrime { prime })
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            CoefficientRing::Integers => None,
            CoefficientRing::LocalizedAtPrime { prime } => Some(*prime),
        }
    }

    /// Checks the invariants of a deserialized value.
    pub fn validate(&self) -> Result<()> {
        match self.prime() {
            Some(p) if !is_prime(p) => Err(Error::NotPrime(p)),
            _ => Ok(()),
        }
    }

    /// p-adic valuation; `None` for zero. Only meaningful for `Z_(p)`.
    pub fn valuation(&self, x: &Rational) -> Option<i64> {
        let p = BigInt::from(self.prime()?);
        if x.is_zero() {
            return None;
        }
        Some(int_valuation(x.numer(), &p) as i64 - int_valuation(x.denom(), &p) as i64)
    }

    pub fn is_integral(&self, x: &Rational) -> bool {
        match self.prime() {
            None => x.denom().is_one(),
            Some(p) => !(x.denom() % BigInt::from(p)).is_zero(),
        }
    }

    pub fn is_unit(&self, x: &Rational) -> bool {
        match self.prime() {
            None => x.denom().is_one() && x.numer().abs().is_one(),
            Some(_) => self.valuation(x) == Some(0),
        }
    }

    /// Canonical associate of `x`: `|x|` over `Z`, `p^v(x)` over `Z_(p)`.
    /// Zero maps to zero.
    pub fn associate(&self, x: &Rational) -> Rational {
        if x.is_zero() {
            return Rational::zero();
        }
        match self.prime() {
            None => x.abs(),
            Some(p) => prime_power(p, self.valuation(x).unwrap()),
        }
    }

    /// Scalar `d` such that `entries / d` is integral with unit content.
    /// `None` when every entry is zero.
    pub fn content<'a, I>(&self, entries: I) -> Option<Rational>
    where
        I: IntoIterator<Item = &'a Rational>,
    {
        let nonzero: Vec<&Rational> = entries.into_iter().filter(|x| !x.is_zero()).collect();
        if nonzero.is_empty() {
            return None;
        }
        match self.prime() {
            None => {
                let mut g = BigInt::zero();
                let mut l = BigInt::one();
                for x in &nonzero {
                    g = g.gcd(x.numer());
                    l = l.lcm(x.denom());
                }
                Some(Rational::new(g, l))
            }
            Some(p) => {
                let v = nonzero.iter().map(|x| self.valuation(x).unwrap()).min().unwrap();
                Some(prime_power(p, v))
            }
        }
    }

    /// Representative of `x` modulo the ideal generated by `modulus`, which
    /// must be the canonical associate of a nonzero element. Over `Z` the
    /// residue lies in `[0, modulus)`; over `Z_(p)` it is the integer in the
    /// symmetric range `(-p^v/2, p^v/2]`. `x` must be integral.
    pub fn residue(&self, x: &Rational, modulus: &Rational) -> Rational {
        debug_assert!(self.is_integral(x));
        let m = modulus.to_integer();
        match self.prime() {
            None => Rational::from_integer(x.to_integer().mod_floor(&m)),
            Some(_) => {
                if m.is_one() {
                    return Rational::zero();
                }
                let inv = mod_inverse(x.denom(), &m);
                let mut r = (x.numer() * inv).mod_floor(&m);
                if &r * 2 > m {
                    r -= &m;
                }
                Rational::from_integer(r)
            }
        }
    }
}

fn prime_power(p: u64, v: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if v >= 0 {
        num::pow(base, v as usize)
    } else {
        num::pow(base.recip(), (-v) as usize)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::LocalizedAtPrime { prime } => write!(f, "Z_({prime})"),
        }
    }
}

impl std::str::FromStr for CoefficientRing {
    type Err = Error;

    /// Accepts `z` or `zp:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "z" {
            return Ok(CoefficientRing::Integers);
        }
        match t.strip_prefix("zp:").map(|p| p.parse::<u64>()) {
            Some(Ok(p)) => CoefficientRing::localized(p),
            _ => Err(Error::Validation(format!("unknown ring {s:?}, use z or zp:<prime>"))),
        }
    }
}
