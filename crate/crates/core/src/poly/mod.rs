//! Multivariate polynomial ring `k[x_1,...,x_n]` under the graded reverse
//! lexicographic order with `x_1 > x_2 > ... > x_n`.
//!
//! Monomials are dense exponent vectors (at most [`MAX_VARS`] variables),
//! polynomials are term maps keyed by monomials whose `Ord` *is* grevlex,
//! so the natural iteration order of a polynomial is canonical.

pub mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::field::{FieldElement, FieldSpec};
use crate::Result;

/// Hard cap on ambient variables; desk scale, dense exponents.
pub const MAX_VARS: usize = 16;

/// A monomial `x^alpha` as a dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i` (0-based) in `n` variables.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some((i, e))` when the monomial is a pure power `x_i^e`, `e >= 1`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Lowest variable index dividing the monomial.
    pub fn lowest_variable(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Highest variable index dividing the monomial.
    pub fn highest_variable(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Divide by the variable `x_i` once; exponent must be positive.
    pub fn divide_by_variable(&self, i: usize) -> Monomial {
        debug_assert!(self.0[i] > 0);
        let mut e = self.0.clone();
        e[i] -= 1;
        Monomial(e)
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(names[i].to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", names[i], e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.0.len());
        write!(
            f,
            "{}",
            self.render(&names.iter().map(String::as_str).collect::<Vec<_>>())
        )
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Grevlex: higher total degree wins; on ties the *smaller* exponent at
    /// the last differing variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "monomial ambient mismatch");
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                for i in (0..self.0.len()).rev() {
                    match self.0[i].cmp(&other.0[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            unequal => unequal,
        }
    }
}

/// The monomial order in use. Only grevlex with declaration-order variable
/// precedence is supported; the type exists to make the choice explicit at
/// API boundaries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MonomialOrder;

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder
    }

    /// Compare two monomials, checking they share an ambient ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.num_vars() != b.num_vars() {
            return Err(Error::DimensionMismatch(a.num_vars(), b.num_vars()));
        }
        Ok(a.cmp(b))
    }
}

/// All monomials in `vars` variables of total degree exactly `d`.
pub fn monomials_of_degree(vars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    fn rec(current: &mut Vec<u32>, i: usize, remaining: u32, out: &mut Vec<Monomial>) {
        if i + 1 == current.len() {
            current[i] = remaining;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[i] = e;
            rec(current, i + 1, remaining - e, out);
        }
    }
    if vars == 0 {
        return out;
    }
    rec(&mut current, 0, d, &mut out);
    out
}

/// An exact multivariate polynomial. Zero coefficients are never stored;
/// term iteration follows grevlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    spec: FieldSpec,
    vars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(spec: FieldSpec, vars: usize) -> Self {
        assert!(vars <= MAX_VARS);
        Polynomial {
            spec,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: FieldSpec, vars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(spec, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars), c);
        }
        p
    }

    pub fn one(spec: FieldSpec, vars: usize) -> Self {
        Self::constant(spec, vars, spec.one())
    }

    pub fn variable(spec: FieldSpec, vars: usize, i: usize) -> Self {
        Self::from_monomial(spec, vars, Monomial::variable(vars, i), spec.one())
    }

    pub fn from_monomial(spec: FieldSpec, vars: usize, m: Monomial, c: FieldElement) -> Self {
        let mut p = Self::zero(spec, vars);
        if !c.is_zero() {
            assert_eq!(m.num_vars(), vars);
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(spec: FieldSpec, vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(spec, vars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn num_vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.spec.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one(self.vars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree among terms; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub(crate) fn add_term(&mut self, m: &Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        assert_eq!(m.num_vars(), self.vars, "monomial ambient mismatch");
        match self.terms.get_mut(m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.spec, self.vars);
        }
        Polynomial {
            spec: self.spec,
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Multiply by a single scaled monomial.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.spec, self.vars);
        }
        Polynomial {
            spec: self.spec,
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert_eq!(self.spec, other.spec, "field mismatch");
        assert_eq!(self.vars, other.vars, "ambient mismatch");
    }

    /// Substitute `images[i]` for `x_i` and expand fully.
    ///
    /// The images must share an ambient ring over the same field, which may
    /// have a different number of variables than `self`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars {
            return Err(Error::DimensionMismatch(images.len(), self.vars));
        }
        let (ispec, ivars) = match images.first() {
            Some(first) => (first.spec, first.vars),
            None => (self.spec, 0),
        };
        if ispec != self.spec {
            return Err(Error::FieldMismatch);
        }
        for img in images {
            if img.vars != ivars {
                return Err(Error::DimensionMismatch(img.vars, ivars));
            }
            if img.spec != ispec {
                return Err(Error::FieldMismatch);
            }
        }
        // Cache powers of each image as they are needed.
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|img| vec![Polynomial::one(ispec, ivars), img.clone()])
            .collect();
        let mut result = Polynomial::zero(ispec, ivars);
        for (m, c) in self.terms.iter() {
            let mut prod = Polynomial::constant(ispec, ivars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
            }
            result = &result + &prod;
        }
        Ok(result)
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.spec, self.vars);
        for (m, c) in self.terms.iter() {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let scaled = c * &self.spec.integer(e as i64);
            out.add_term(&m.divide_by_variable(i), &scaled);
        }
        out
    }

    /// Drop every term of total degree greater than `n`.
    pub fn truncate(&self, n: u32) -> Polynomial {
        Polynomial {
            spec: self.spec,
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the degree-1 part, indexed by variable.
    pub fn linear_coefficients(&self) -> Vec<FieldElement> {
        (0..self.vars)
            .map(|i| self.coefficient(&Monomial::variable(self.vars, i)))
            .collect()
    }

    /// Reinterpret in a larger ambient ring, keeping variable indices.
    pub fn extend_vars(&self, new_vars: usize) -> Polynomial {
        assert!(new_vars >= self.vars);
        Polynomial {
            spec: self.spec,
            vars: new_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(new_vars, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Shift all variable indices up by `offset` inside a larger ambient.
    pub fn shift_vars(&self, offset: usize, new_vars: usize) -> Polynomial {
        assert!(self.vars + offset <= new_vars);
        Polynomial {
            spec: self.spec,
            vars: new_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; new_vars];
                    e[offset..offset + self.vars].copy_from_slice(m.exponents());
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drop the first variable; every term must be free of it.
    pub fn drop_first_variable(&self) -> Polynomial {
        Polynomial {
            spec: self.spec,
            vars: self.vars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert_eq!(m.exponents()[0], 0, "term still involves the eliminated variable");
                    (Monomial::new(m.exponents()[1..].to_vec()), c.clone())
                })
                .collect(),
        }
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let (sign, mag) = match c.sign() {
                Some(-1) => ("-", -c),
                _ => ("+", c.clone()),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let coeff_str = format!("{mag}");
            if m.is_one() {
                out.push_str(&coeff_str);
            } else if mag.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", coeff_str, m.render(names)));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.num_vars());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.render(&refs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m, &(-c));
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            spec: self.spec,
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = Polynomial::zero(self.spec, self.vars);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in rhs.terms.iter() {
                out.add_term(&m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

/// Checked product (the operator form panics on ambient mismatch).
pub fn multiply(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.spec() != q.spec() {
        return Err(Error::FieldMismatch);
    }
    if p.num_vars() != q.num_vars() {
        return Err(Error::DimensionMismatch(p.num_vars(), q.num_vars()));
    }
    Ok(p * q)
}

/// The gradient of `F` as a square polynomial map.
pub fn gradient(f: &Polynomial) -> PolyMap {
    PolyMap::new((0..f.num_vars()).map(|i| f.partial(i)).collect())
        .expect("gradient is square by construction")
}

/// A polynomial map `A^n -> A^n` given by its coordinate functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    /// A square map: `n` components in `n` variables over one field.
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::DimensionMismatch(0, 0));
        }
        let spec = components[0].spec();
        for c in &components {
            if c.num_vars() != n {
                return Err(Error::DimensionMismatch(c.num_vars(), n));
            }
            if c.spec() != spec {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(PolyMap { components })
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        PolyMap::new((0..n).map(|i| Polynomial::variable(spec, n, i)).collect())
            .expect("identity map is square")
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn num_vars(&self) -> usize {
        self.components.len()
    }

    pub fn spec(&self) -> FieldSpec {
        self.components[0].spec()
    }

    /// All components vanish at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.components.iter().all(|c| c.constant_term().is_zero())
    }

    /// Index of the first component with a nonzero constant term.
    pub fn constant_term_violation(&self) -> Option<usize> {
        self.components
            .iter()
            .position(|c| !c.constant_term().is_zero())
    }

    /// Every component lies in the square of the maximal ideal.
    pub fn in_m_squared(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.min_degree().map_or(true, |d| d >= 2))
    }

    pub fn render(&self, names: &[&str]) -> String {
        self.components
            .iter()
            .map(|c| c.render(names))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.num_vars());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.render(&refs))
    }
}
