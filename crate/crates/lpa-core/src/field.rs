//! Exact coefficient arithmetic: arbitrary-precision rationals and prime
//! residue fields, selectable at runtime.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// The rational numbers, with exact big-integer arithmetic.
    Rationals,
    /// The residue field GF(p) for a prime p.
    GfP(u64),
}

impl Field {
    /// Parses a field description: `rationals` or `gf:<p>` with p prime.
    pub fn parse(text: &str) -> Result<Field> {
        let text = text.trim();
        if text.is_empty() || text == "rationals" || text == "q" || text == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(p) = text.strip_prefix("gf:") {
            let p: u64 = p.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("invalid field modulus `{p}`"),
            })?;
            if !is_prime(p) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("field modulus {p} is not prime"),
                });
            }
            return Ok(Field::GfP(p));
        }
        Err(Error::Parse {
            pos: 0,
            msg: format!("unknown field `{text}` (expected `rationals` or `gf:<p>`)"),
        })
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::GfP(p) => Scalar::Mod { value: 0, prime: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::GfP(p) => Scalar::Mod { value: 1 % p, prime: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::GfP(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u64,
                prime: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(n.clone())),
            Field::GfP(p) => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Mod {
                    value: r.to_u64().unwrap(),
                    prime: *p,
                }
            }
        }
    }

    /// Builds num/den in this field. Fails when den maps to zero.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Parse {
                pos: 0,
                msg: "zero denominator".into(),
            });
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::GfP(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("denominator {den} is zero in {self:?}"),
                    });
                }
                Ok(self.from_bigint(num).mul(&d.inv().unwrap()))
            }
        }
    }

    /// The binomial coefficient C(n, k) as a field scalar.
    pub fn binomial(&self, n: u64, k: u64) -> Scalar {
        let b = num_integer::binomial(BigInt::from(n), BigInt::from(k));
        self.from_bigint(&b)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "rationals"),
            Field::GfP(p) => write!(f, "gf:{p}"),
        }
    }
}

/// An exact field scalar. Rationals are kept in reduced form with positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, prime: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, prime } => *value == 1 % prime,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { prime, .. } => Field::GfP(*prime),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    prime: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: if *value == 0 { 0 } else { prime - value },
                prime: *prime,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Mod {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    prime: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Mod { value, prime } => Some(Scalar::Mod {
                value: mod_inverse(*value, *prime),
                prime: *prime,
            }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // BigRational prints `n` when the denominator is 1, else `n/d`.
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the rational scalar is negative (residues are never negative).
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Mod { .. } => false,
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p) with p prime and a != 0.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_display_matches_grammar() {
        let f = Field::Rationals;
        assert_eq!(f.from_i64(4).to_string(), "4");
        assert_eq!(f.from_i64(-3).to_string(), "-3");
        let third = f.ratio(&BigInt::from(-1), &BigInt::from(3)).unwrap();
        assert_eq!(third.to_string(), "-1/3");
    }

    #[test]
    fn gf_arithmetic() {
        let f = Field::parse("gf:7").unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(a.mul(&b), f.from_i64(6));
        assert_eq!(a.add(&b), f.from_i64(2));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        // 1/3 = 3^{-1} = 5 in GF(7)
        let t = f.ratio(&BigInt::from(1), &BigInt::from(3)).unwrap();
        assert_eq!(t, f.from_i64(5));
    }

    #[test]
    fn gf_rejects_composite_modulus() {
        assert!(Field::parse("gf:9").is_err());
        assert!(Field::parse("gf:2").is_ok());
    }

    #[test]
    fn division_by_zero_denominator() {
        assert!(Field::Rationals
            .ratio(&BigInt::from(1), &BigInt::from(0))
            .is_err());
        assert!(Field::parse("gf:5")
            .unwrap()
            .ratio(&BigInt::from(1), &BigInt::from(10))
            .is_err());
    }
}
