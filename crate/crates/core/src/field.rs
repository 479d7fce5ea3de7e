//! Exact coefficient arithmetic over prime fields `F_p` (with `p < 2^31`)
//! and over the rationals.
//!
//! A [`FieldElement`] always carries its field, so mixing elements of two
//! different fields is detected at runtime. The `try_*` methods report the
//! mismatch as [`Error::FieldMismatch`]; the `std::ops` impls panic on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality test by trial division. Adequate for `n < 2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Prime(u32),
    Rationals,
}

/// The coefficient field: `F_p` for a prime `p < 2^31`, or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec(Kind::Rationals);

    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(Kind::Prime(p as u32)))
    }

    /// The prime modulus, or `None` for the rationals.
    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rationals => None,
        }
    }

    /// Characteristic of the field (0 for `Q`).
    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    /// True when `k` is invertible in the field, i.e. the characteristic does not divide `k`.
    pub fn admits_k(&self, k: u32) -> bool {
        match self.0 {
            Kind::Prime(p) => k % p != 0,
            Kind::Rationals => k != 0,
        }
    }

    pub fn check_k(&self, k: u32) -> Result<()> {
        if self.admits_k(k) {
            Ok(())
        } else {
            Err(Error::CharacteristicDividesK {
                p: self.characteristic(),
                k,
            })
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Elem::Mod {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
            Kind::Rationals => FieldElement(Elem::Rat(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    /// Element with canonical residue `v mod p`; for `Q` this is the integer `v`.
    pub fn from_u64(&self, v: u64) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Elem::Mod {
                value: (v % p as u64) as u32,
                modulus: p,
            }),
            Kind::Rationals => FieldElement(Elem::Rat(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        match self.0 {
            Kind::Rationals => Ok(FieldElement(Elem::Rat(r.clone()))),
            Kind::Prime(p) => {
                let big_p = BigInt::from(p);
                let num = mod_bigint(r.numer(), &big_p);
                let den = mod_bigint(r.denom(), &big_p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let n = self.from_u64(num as u64);
                let d = self.from_u64(den as u64);
                n.try_div(&d)
            }
        }
    }
}

fn mod_bigint(v: &BigInt, m: &BigInt) -> u32 {
    let mut r = v % m;
    if r.is_negative() {
        r += m;
    }
    r.to_u32().expect("residue below a u32 modulus")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "F_{p}"),
            Kind::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts a prime (`"7"`, `"F_7"`) or `"rational"` / `"Q"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "rational" | "rationals" | "Q" | "q" => Ok(FieldSpec::RATIONALS),
            _ => {
                let digits = t.strip_prefix("F_").unwrap_or(t);
                let p: u64 = digits.parse().map_err(|_| Error::Parse {
                    line: 0,
                    message: format!("expected a prime or `rational`, got `{t}`"),
                })?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Kind::Prime(p) => s.serialize_str(&p.to_string()),
            Kind::Rationals => s.serialize_str("rational"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Elem {
    Mod { value: u32, modulus: u32 },
    Rat(BigRational),
}

/// An element of a [`FieldSpec`], always in canonical form: residues in
/// `0..p`, fractions in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Elem);

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat's little theorem.
pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p as u64 - 2, p))
    }
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Elem::Mod { modulus, .. } => FieldSpec(Kind::Prime(*modulus)),
            Elem::Rat(_) => FieldSpec::RATIONALS,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Elem::Mod { value, .. } => *value == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Elem::Mod { value, .. } => *value == 1,
            Elem::Rat(r) => r.is_one(),
        }
    }

    /// Canonical residue for `F_p` elements.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Elem::Mod { value, .. } => Some(*value),
            Elem::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Elem::Rat(r) => Some(r),
            Elem::Mod { .. } => None,
        }
    }

    /// Whether the canonical form reads as a negative number when rendered.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Elem::Rat(r) => r.is_negative(),
            Elem::Mod { .. } => false,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        match (&self.0, &other.0) {
            (
                Elem::Mod {
                    value: a,
                    modulus: p,
                },
                Elem::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(FieldElement(Elem::Mod {
                value: add_mod(*a, *b, *p),
                modulus: *p,
            })),
            (Elem::Rat(a), Elem::Rat(b)) => Ok(FieldElement(Elem::Rat(a + b))),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match (&self.0, &other.0) {
            (
                Elem::Mod {
                    value: a,
                    modulus: p,
                },
                Elem::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(FieldElement(Elem::Mod {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            })),
            (Elem::Rat(a), Elem::Rat(b)) => Ok(FieldElement(Elem::Rat(a * b))),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Elem::Mod { value, modulus } => inv_mod(*value, *modulus)
                .map(|v| {
                    FieldElement(Elem::Mod {
                        value: v,
                        modulus: *modulus,
                    })
                })
                .ok_or(Error::DivisionByZero),
            Elem::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement(Elem::Rat(r.recip())))
                }
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: u64) -> Self {
        match &self.0 {
            Elem::Mod { value, modulus } => FieldElement(Elem::Mod {
                value: pow_mod(*value, exp, *modulus),
                modulus: *modulus,
            }),
            Elem::Rat(r) => {
                let e = i32::try_from(exp).expect("rational exponent fits in i32");
                FieldElement(Elem::Rat(r.pow(e)))
            }
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            Elem::Mod { value, modulus } => FieldElement(Elem::Mod {
                value: sub_mod(0, *value, *modulus),
                modulus: *modulus,
            }),
            Elem::Rat(r) => FieldElement(Elem::Rat(-r)),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Elem::Mod { value, .. } => write!(f, "{value}"),
            Elem::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group `F_p^*`.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = p as u64 - 1;
    let factors = prime_factors(order);
    (2..p)
        .find(|&g| factors.iter().all(|q| pow_mod(g, order / q, p) != 1))
        .expect("F_p^* is cyclic")
}

/// The `k` distinct `k`-th roots of unity in `F_p`, in ascending order of
/// canonical residue. Requires `p ≡ 1 (mod k)`.
pub fn kth_roots_of_unity(p: u32, k: u32) -> Result<Vec<FieldElement>> {
    let field = FieldSpec::prime(p as u64)?;
    if k == 0 {
        return Err(Error::InvalidK { k, min: 1 });
    }
    if (p - 1) % k != 0 {
        return Err(Error::RootsUnavailable { p, k });
    }
    let zeta = pow_mod(primitive_root(p), ((p - 1) / k) as u64, p);
    let mut roots: Vec<u32> = (0..k).map(|j| pow_mod(zeta, j as u64, p)).collect();
    roots.sort_unstable();
    Ok(roots
        .into_iter()
        .map(|v| field.from_u64(v as u64))
        .collect())
}

/// A primitive `k`-th root of unity in `F_p` (the `k`-th power of the
/// smallest primitive root, raised to `(p-1)/k`). Color `c` maps to `ζ^c`.
pub fn primitive_kth_root(p: u32, k: u32) -> Result<FieldElement> {
    let field = FieldSpec::prime(p as u64)?;
    if k == 0 {
        return Err(Error::InvalidK { k, min: 1 });
    }
    if (p - 1) % k != 0 {
        return Err(Error::RootsUnavailable { p, k });
    }
    Ok(field.from_u64(pow_mod(primitive_root(p), ((p - 1) / k) as u64, p) as u64))
}

/// Smallest prime `p` with `p ≡ 1 (mod k)`.
pub fn first_prime_one_mod(k: u32) -> u32 {
    (1..)
        .map(|m: u32| m * k + 1)
        .find(|&p| is_prime(p as u64))
        .expect("Dirichlet")
}
