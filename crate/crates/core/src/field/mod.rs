//! Exact arithmetic over the two supported coefficient fields.
//!
//! `Q` is handled with arbitrary-precision rationals, `F_p` (p an odd
//! prime) with canonical residues in `[0, p)`. Characteristic 2 is rejected
//! at [`FieldSpec`] construction since the bilinear-form theory requires
//! `char != 2` throughout.

pub mod factor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

use factor::{is_prime_u64, mul_mod_u64, pow_mod_u64, squarefree_part};

/// One of the two supported coefficient fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The prime field `F_p` for an odd prime `p`.
    PrimeField(u64),
}

impl FieldSpec {
    /// The rational field `Q`.
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// The prime field `F_p`; rejects `p = 2`, even and composite moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(Error::EvenCharacteristic(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    /// The zero element.
    pub fn zero(&self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => FieldElement::Residue { value: 0, modulus: *p },
        }
    }

    /// The unit element.
    pub fn one(&self) -> FieldElement {
        self.integer(1)
    }

    /// The image of an integer in the field.
    pub fn integer(&self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldSpec::PrimeField(p) => FieldElement::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// An exact fraction; the denominator must be invertible.
    pub fn fraction(&self, num: i64, den: i64) -> Result<FieldElement> {
        let d = self.integer(den);
        if d.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(&self.integer(num) * &d.inverse()?)
    }

    /// The smallest positive quadratic non-residue of `F_p`.
    ///
    /// This is the canonical representative of the non-square class, chosen
    /// so classification strings are reproducible.
    pub fn non_residue(&self) -> Option<FieldElement> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => {
                let g = (2..*p)
                    .find(|&g| pow_mod_u64(g, (p - 1) / 2, *p) == p - 1)
                    .expect("odd prime field has a non-residue");
                Some(FieldElement::Residue { value: g, modulus: *p })
            }
        }
    }

    /// All nonzero elements (finite fields only); handy for small searches.
    pub fn units(&self) -> Option<Vec<FieldElement>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(
                (1..*p)
                    .map(|v| FieldElement::Residue { value: v, modulus: *p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact scalar in one of the supported fields.
///
/// Rationals are always kept in lowest terms (the representation reduces on
/// construction); residues are canonical in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        FieldElement::Rational(r)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    /// The multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod_u64(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Whether the element is a nonzero square; errors on zero.
    ///
    /// Over `F_p` this is Euler's criterion; over `Q` a reduced fraction is
    /// a square exactly when numerator and denominator are positive perfect
    /// squares.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match self {
            FieldElement::Rational(r) => {
                if r.is_negative() {
                    false
                } else {
                    is_perfect_square(r.numer()) && is_perfect_square(r.denom())
                }
            }
            FieldElement::Residue { value, modulus } => {
                pow_mod_u64(*value, (modulus - 1) / 2, *modulus) == 1
            }
        })
    }

    /// The canonical representative of `a` modulo nonzero squares.
    ///
    /// Over `Q`: the signed square-free integer carried by the reduced
    /// fraction. Over `F_p`: 1 or the smallest positive non-residue.
    pub fn square_class(&self) -> Result<SquareClass> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match self {
            FieldElement::Rational(r) => {
                // a/b ~ a*b modulo squares.
                let product = r.numer() * r.denom();
                SquareClass(FieldElement::Rational(BigRational::from_integer(
                    squarefree_part(&product),
                )))
            }
            FieldElement::Residue { modulus, .. } => {
                if self.is_square()? {
                    SquareClass(self.spec().one())
                } else {
                    SquareClass(
                        FieldSpec::PrimeField(*modulus)
                            .non_residue()
                            .expect("prime field"),
                    )
                }
            }
        })
    }

    /// Exact rational value (only over `Q`).
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Sign over `Q`: -1, 0 or 1.
    pub fn sign(&self) -> Option<i32> {
        match self {
            FieldElement::Rational(r) => Some(if r.is_zero() {
                0
            } else if r.is_negative() {
                -1
            } else {
                1
            }),
            _ => None,
        }
    }

    fn assert_same_spec(&self, other: &FieldElement) {
        assert_eq!(
            self.spec(),
            other.spec(),
            "field elements from different fields combined"
        );
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    use num::integer::Roots;
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &(&root * &root) == n
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_spec(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => FieldElement::Residue {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_spec(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => FieldElement::Residue {
                value: mul_mod_u64(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

/// A canonical representative of a square class `a (k^x)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareClass(FieldElement);

impl SquareClass {
    /// The canonical representative as a field element.
    pub fn representative(&self) -> &FieldElement {
        &self.0
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Whether this is the class of -1.
    pub fn is_minus_one(&self) -> bool {
        match &self.0 {
            FieldElement::Rational(r) => *r == -BigRational::one(),
            FieldElement::Residue { .. } => {
                let minus_one = -&self.0.spec().one();
                minus_one
                    .square_class()
                    .map(|c| c == *self)
                    .unwrap_or(false)
            }
        }
    }

    /// Signed square-free integer over `Q`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.0.as_rational().map(|r| r.numer().clone())
    }

    /// Product of square classes (again canonical).
    pub fn product(&self, other: &SquareClass) -> SquareClass {
        (&self.0 * &other.0)
            .square_class()
            .expect("nonzero class product")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Free-function form of [`FieldElement::inverse`].
pub fn invert(a: &FieldElement) -> Result<FieldElement> {
    a.inverse()
}

/// Free-function form of [`FieldElement::square_class`].
pub fn square_class(a: &FieldElement) -> Result<SquareClass> {
    a.square_class()
}

/// Free-function form of [`FieldElement::is_square`].
pub fn is_square(a: &FieldElement) -> Result<bool> {
    a.is_square()
}
