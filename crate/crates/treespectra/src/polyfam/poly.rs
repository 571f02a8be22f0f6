//! Exact integer polynomials: the coefficient arithmetic behind every
//! family in this crate. Coefficients are arbitrary-precision, lowest degree
//! first, trailing zeros stripped; the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn x() -> Self {
        Polynomial::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::new(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Polynomial::new(coeffs)
    }

    pub fn from_coeffs(cs: &[i64]) -> Self {
        Polynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scaled(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divided by the (positive) content; sign pattern unchanged.
    pub fn primitive_part(&self) -> Polynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Polynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
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
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

// JSON form: array of decimal integer strings, lowest degree first.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad integer coefficient {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

/// Pseudo-division: returns (q, r, m) with `m * num = q * den + r`,
/// `deg r < deg den`, and `m` a power of `den`'s leading coefficient.
pub fn pseudo_div_rem(num: &Polynomial, den: &Polynomial) -> (Polynomial, Polynomial, BigInt) {
    assert!(!den.is_zero(), "division by the zero polynomial");
    let dd = den.degree().unwrap();
    if num.degree().is_none_or(|dn| dn < dd) {
        return (Polynomial::zero(), num.clone(), BigInt::one());
    }
    let lc = den.leading().unwrap().clone();
    let mut q = Polynomial::zero();
    let mut r = num.clone();
    let mut mult = BigInt::one();
    while let Some(dr) = r.degree() {
        if dr < dd {
            break;
        }
        let lead = r.leading().unwrap().clone();
        let shift = Polynomial::monomial(lead, dr - dd);
        q = q.scaled(&lc) + &shift;
        r = r.scaled(&lc) - &(&shift * den);
        mult *= &lc;
    }
    (q, r, mult)
}

/// True iff `pa` divides `pb` exactly (as polynomials over the rationals;
/// both are integer polynomials here). `pa` must be nonzero.
pub fn divides_exact(pa: &Polynomial, pb: &Polynomial) -> bool {
    assert!(!pa.is_zero(), "divisor must be nonzero");
    if pb.is_zero() {
        return true;
    }
    pseudo_div_rem(pb, pa).1.is_zero()
}

/// Primitive gcd with positive leading coefficient (Euclid on primitive
/// parts; growth controlled well enough for the degrees used here).
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    while !b.is_zero() {
        let (_, r, _) = pseudo_div_rem(&a, &b);
        a = b;
        b = r.primitive_part();
    }
    if a.leading().is_some_and(|l| l.is_negative()) {
        a = -a;
    }
    a
}

/// Exact quotient `num / den` up to a positive constant (primitive part of
/// the pseudo-quotient). `None` if the division leaves a remainder.
pub fn exact_div(num: &Polynomial, den: &Polynomial) -> Option<Polynomial> {
    let (q, r, mult) = pseudo_div_rem(num, den);
    if !r.is_zero() {
        return None;
    }
    let mut q = q.primitive_part();
    // Keep the quotient's sign consistent with num = q * den (mult > 0 view).
    if mult.is_negative() {
        q = -q;
    }
    Some(q)
}
