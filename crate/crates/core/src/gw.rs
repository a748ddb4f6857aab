//! Grothendieck–Witt arithmetic and classification of diagonal forms.
//!
//! Forms are diagonal representatives `⟨d_1,...,d_N⟩` with nonzero entries.
//! Over a finite field of odd characteristic, rank and discriminant decide
//! equivalence. Over `Q` the full invariant set is rank, signature,
//! discriminant and the Hasse symbol at every relevant place, which decides
//! equivalence by the Hasse–Minkowski theorem.
//!
//! Conventions: the discriminant is the plain product of the diagonal
//! entries modulo squares (no sign twist), and the Hasse invariant is
//! `c(⟨a_1,...,a_n⟩) = prod_{i<j} (a_i, a_j)_v`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;
use crate::field::factor::{odd_prime_support, squarefree_part};
use crate::field::{FieldElement, FieldSpec, SquareClass};
use crate::Result;

/// A place of `Q`: the real embedding or a finite prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A nondegenerate diagonal quadratic form over one of the two fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    spec: FieldSpec,
    diagonal: Vec<FieldElement>,
}

impl QuadraticForm {
    /// Build a form from its diagonal; entries must be nonzero.
    pub fn new(spec: FieldSpec, diagonal: Vec<FieldElement>) -> Result<Self> {
        for d in &diagonal {
            if d.spec() != spec {
                return Err(Error::FieldMismatch);
            }
            if d.is_zero() {
                return Err(Error::ZeroInput);
            }
        }
        Ok(QuadraticForm { spec, diagonal })
    }

    /// The empty (rank zero) form.
    pub fn empty(spec: FieldSpec) -> Self {
        QuadraticForm {
            spec,
            diagonal: vec![],
        }
    }

    /// Diagonal form from small integers.
    pub fn from_integers(spec: FieldSpec, entries: &[i64]) -> Result<Self> {
        Self::new(spec, entries.iter().map(|&e| spec.integer(e)).collect())
    }

    /// The hyperbolic plane `⟨1, -1⟩`.
    pub fn hyperbolic(spec: FieldSpec) -> Self {
        Self::from_integers(spec, &[1, -1]).expect("1 and -1 are nonzero")
    }

    /// `k` copies of the hyperbolic plane.
    pub fn hyperbolic_sum(spec: FieldSpec, k: usize) -> Self {
        let mut diagonal = Vec::with_capacity(2 * k);
        for _ in 0..k {
            diagonal.push(spec.integer(1));
            diagonal.push(spec.integer(-1));
        }
        QuadraticForm { spec, diagonal }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[FieldElement] {
        &self.diagonal
    }

    /// Entry-wise square-class reduction (for display).
    pub fn reduced(&self) -> QuadraticForm {
        QuadraticForm {
            spec: self.spec,
            diagonal: self
                .diagonal
                .iter()
                .map(|d| d.square_class().expect("entries nonzero").representative().clone())
                .collect(),
        }
    }

    /// The form scaled by a unit: `⟨u⟩ ⊗ q`.
    pub fn scaled(&self, u: &FieldElement) -> QuadraticForm {
        assert!(!u.is_zero());
        QuadraticForm {
            spec: self.spec,
            diagonal: self.diagonal.iter().map(|d| d * u).collect(),
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{}⟩",
            self.diagonal
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Orthogonal direct sum (concatenation of diagonals).
pub fn direct_sum(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    if q1.spec != q2.spec {
        return Err(Error::FieldMismatch);
    }
    let mut diagonal = q1.diagonal.clone();
    diagonal.extend(q2.diagonal.iter().cloned());
    Ok(QuadraticForm {
        spec: q1.spec,
        diagonal,
    })
}

/// Product in the Grothendieck–Witt ring: all pairwise entry products.
pub fn product(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    if q1.spec != q2.spec {
        return Err(Error::FieldMismatch);
    }
    let mut diagonal = Vec::with_capacity(q1.rank() * q2.rank());
    for a in &q1.diagonal {
        for b in &q2.diagonal {
            diagonal.push(a * b);
        }
    }
    Ok(QuadraticForm {
        spec: q1.spec,
        diagonal,
    })
}

/// The complete invariant set of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    rank: usize,
    disc: SquareClass,
    /// Sylvester signature; `Q` only.
    signature: Option<i64>,
    /// Hasse symbols at the support places; `Q` only. Absent places are +1.
    hasse: Option<BTreeMap<Place, i8>>,
}

impl FormInvariants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn disc(&self) -> &SquareClass {
        &self.disc
    }

    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    pub fn hasse(&self) -> Option<&BTreeMap<Place, i8>> {
        self.hasse.as_ref()
    }

    pub fn hasse_at(&self, place: &Place) -> i8 {
        self.hasse
            .as_ref()
            .and_then(|m| m.get(place).copied())
            .unwrap_or(1)
    }

    fn support(&self) -> BTreeSet<Place> {
        self.hasse
            .as_ref()
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default()
    }

    pub fn same_as(&self, other: &FormInvariants) -> bool {
        if self.rank != other.rank || self.disc != other.disc || self.signature != other.signature
        {
            return false;
        }
        let places: BTreeSet<Place> = self.support().union(&other.support()).cloned().collect();
        places
            .iter()
            .all(|v| self.hasse_at(v) == other.hasse_at(v))
    }
}

/// Rank, discriminant, and over `Q` also signature and Hasse symbols.
pub fn invariants(q: &QuadraticForm) -> FormInvariants {
    let disc = if q.rank() == 0 {
        q.spec
            .one()
            .square_class()
            .expect("one is a unit")
    } else {
        let mut prod = q.spec.one();
        for d in &q.diagonal {
            prod = &prod * d;
        }
        prod.square_class().expect("entries nonzero")
    };
    match q.spec {
        FieldSpec::PrimeField(_) => FormInvariants {
            rank: q.rank(),
            disc,
            signature: None,
            hasse: None,
        },
        FieldSpec::Rationals => {
            let signature = q
                .diagonal
                .iter()
                .map(|d| d.sign().expect("rational entries") as i64)
                .sum();
            let rationals: Vec<BigRational> = q
                .diagonal
                .iter()
                .map(|d| d.as_rational().expect("rational entries").clone())
                .collect();
            let places = support_places(&rationals);
            let mut hasse = BTreeMap::new();
            for v in places {
                let mut sym = 1i8;
                for i in 0..rationals.len() {
                    for j in i + 1..rationals.len() {
                        sym *= hilbert_q(&rationals[i], &rationals[j], &v);
                    }
                }
                hasse.insert(v, sym);
            }
            FormInvariants {
                rank: q.rank(),
                disc,
                signature: Some(signature),
                hasse: Some(hasse),
            }
        }
    }
}

/// The places where symbols of these numbers can be nontrivial: the real
/// place, 2, and the odd primes dividing some square-free part.
fn support_places(entries: &[BigRational]) -> BTreeSet<Place> {
    let mut places = BTreeSet::new();
    places.insert(Place::Real);
    places.insert(Place::Prime(BigInt::from(2)));
    for r in entries {
        let sf = squarefree_part(&(r.numer() * r.denom()));
        for p in odd_prime_support(&sf) {
            places.insert(Place::Prime(p));
        }
    }
    places
}

/// Hilbert symbol `(a, b)_v` of two nonzero rationals at a place of `Q`.
pub fn hilbert_symbol(a: &FieldElement, b: &FieldElement, place: &Place) -> Result<i8> {
    let (ar, br) = match (a.as_rational(), b.as_rational()) {
        (Some(ar), Some(br)) => (ar, br),
        _ => return Err(Error::EvenCharacteristic(a.spec().characteristic())),
    };
    if ar.is_zero() || br.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(hilbert_q(ar, br, place))
}

fn hilbert_q(a: &BigRational, b: &BigRational, place: &Place) -> i8 {
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if p == &BigInt::from(2) => {
            let (alpha, u) = val_and_unit(a, p);
            let (beta, v) = val_and_unit(b, p);
            let um = unit_mod8(&u);
            let vm = unit_mod8(&v);
            let eps = |m: u8| ((m as i64 - 1) / 2) % 2; // 1 for 3, 7 mod 8
            let omega = |m: u8| (((m as i64) * (m as i64) - 1) / 8) % 2; // 1 for 3, 5 mod 8
            let exponent = eps(um) * eps(vm) + alpha * omega(vm) + beta * omega(um);
            if exponent % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = val_and_unit(a, p);
            let (beta, v) = val_and_unit(b, p);
            let eps_p = ((p - BigInt::one()) / BigInt::from(2)) % BigInt::from(2);
            let mut sym = 1i8;
            if alpha % 2 != 0 && beta % 2 != 0 && eps_p.is_one() {
                sym = -sym;
            }
            if beta % 2 != 0 {
                sym *= legendre_rational(&u, p);
            }
            if alpha % 2 != 0 {
                sym *= legendre_rational(&v, p);
            }
            sym
        }
    }
}

/// `r = p^v * u` with `u` a `p`-adic unit.
fn val_and_unit(r: &BigRational, p: &BigInt) -> (i64, BigRational) {
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut v = 0i64;
    while (&num % p).is_zero() {
        num /= p;
        v += 1;
    }
    while (&den % p).is_zero() {
        den /= p;
        v -= 1;
    }
    (v, BigRational::new(num, den))
}

/// Legendre symbol of a `p`-adic unit modulo an odd prime.
fn legendre_rational(u: &BigRational, p: &BigInt) -> i8 {
    let num = u.numer().mod_floor(p);
    let den = u.denom().mod_floor(p);
    let den_inv = den.modpow(&(p - BigInt::from(2)), p);
    let residue = (num * den_inv).mod_floor(p);
    debug_assert!(!residue.is_zero(), "unit expected");
    let exp = (p - BigInt::one()) / BigInt::from(2);
    let e = residue.modpow(&exp, p);
    if e.is_one() {
        1
    } else {
        -1
    }
}

fn unit_mod8(u: &BigRational) -> u8 {
    let eight = BigInt::from(8);
    let num = u.numer().mod_floor(&eight);
    let den = u.denom().mod_floor(&eight);
    // odd residues are self-inverse mod 8
    let m = (num * den).mod_floor(&eight);
    u8::try_from(m).expect("value below 8")
}

trait ModFloor {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// Whether two forms over the same field are isometric.
pub fn equivalent(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    if q1.spec != q2.spec {
        return Err(Error::FieldMismatch);
    }
    let i1 = invariants(q1);
    let i2 = invariants(q2);
    Ok(match q1.spec {
        FieldSpec::PrimeField(_) => i1.rank() == i2.rank() && i1.disc() == i2.disc(),
        FieldSpec::Rationals => i1.same_as(&i2),
    })
}

/// The hyperbolic part and anisotropic kernel of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittDecomposition {
    witt_index: usize,
    anisotropic: FormInvariants,
}

impl WittDecomposition {
    pub fn witt_index(&self) -> usize {
        self.witt_index
    }

    pub fn anisotropic(&self) -> &FormInvariants {
        &self.anisotropic
    }

    pub fn anisotropic_rank(&self) -> usize {
        self.anisotropic.rank()
    }
}

/// Witt decomposition from invariants alone.
///
/// Over a finite field the anisotropic rank is read off rank parity and
/// whether the discriminant matches the hyperbolic one. Over `Q` hyperbolic
/// planes are stripped one at a time while the local isotropy criteria hold,
/// updating rank, discriminant and Hasse data by the direct-sum formulas.
pub fn witt_decompose(q: &QuadraticForm) -> WittDecomposition {
    let inv = invariants(q);
    match q.spec {
        FieldSpec::PrimeField(_) => witt_finite(q.spec, inv),
        FieldSpec::Rationals => witt_rationals(inv),
    }
}

fn minus_one_class(spec: FieldSpec) -> SquareClass {
    spec.integer(-1).square_class().expect("-1 is a unit")
}

fn witt_finite(spec: FieldSpec, inv: FormInvariants) -> WittDecomposition {
    let rank = inv.rank();
    let disc = inv.disc().clone();
    let m1 = minus_one_class(spec);
    let (witt_index, aniso_rank) = if rank % 2 == 1 {
        ((rank - 1) / 2, 1)
    } else if rank == 0 {
        (0, 0)
    } else {
        // hyperbolic exactly when disc = (-1)^{rank/2}
        let hyperbolic_disc = power_class(&m1, rank / 2, spec);
        if disc == hyperbolic_disc {
            (rank / 2, 0)
        } else {
            (rank / 2 - 1, 2)
        }
    };
    let aniso_disc = disc.product(&power_class(&m1, witt_index, spec));
    WittDecomposition {
        witt_index,
        anisotropic: FormInvariants {
            rank: aniso_rank,
            disc: aniso_disc,
            signature: None,
            hasse: None,
        },
    }
}

fn power_class(c: &SquareClass, k: usize, spec: FieldSpec) -> SquareClass {
    if k % 2 == 0 {
        spec.one().square_class().expect("unit")
    } else {
        c.clone()
    }
}

fn witt_rationals(inv: FormInvariants) -> WittDecomposition {
    let mut rank = inv.rank();
    let sig = inv.signature().expect("rational invariants");
    let mut disc = inv.disc().clone();
    let mut hasse = inv.hasse.clone().expect("rational invariants");
    let mut witt = 0usize;
    let minus_one = BigRational::from_integer(BigInt::from(-1));

    while rank >= 2 && isotropic_rationals(rank, sig, &disc, &hasse) {
        rank -= 2;
        disc = disc.product(&minus_one_class(FieldSpec::Rationals));
        let disc_rat = disc
            .representative()
            .as_rational()
            .expect("rational class")
            .clone();
        for (place, e) in hasse.iter_mut() {
            *e *= hilbert_q(&minus_one, &disc_rat, place);
        }
        witt += 1;
    }
    WittDecomposition {
        witt_index: witt,
        anisotropic: FormInvariants {
            rank,
            disc,
            signature: Some(sig),
            hasse: Some(hasse),
        },
    }
}

/// Isotropy over `Q` via the completions: indefinite at the real place and,
/// depending on the rank, the standard p-adic criteria in terms of the
/// discriminant and Hasse symbol. Places outside the support satisfy the
/// criteria automatically.
fn isotropic_rationals(
    rank: usize,
    sig: i64,
    disc: &SquareClass,
    hasse: &BTreeMap<Place, i8>,
) -> bool {
    debug_assert!(rank >= 2);
    if sig.unsigned_abs() as usize == rank {
        return false; // definite
    }
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    match rank {
        2 => disc.is_minus_one(),
        3 => {
            let minus_disc = -disc
                .representative()
                .as_rational()
                .expect("rational class")
                .clone();
            hasse.iter().all(|(v, &e)| {
                if *v == Place::Real {
                    true // covered by the signature check
                } else {
                    e == hilbert_q(&minus_one, &minus_disc, v)
                }
            })
        }
        4 => {
            if !disc.is_one() {
                return true;
            }
            hasse.iter().all(|(v, &e)| {
                if *v == Place::Real {
                    true
                } else {
                    e != -hilbert_q(&minus_one, &minus_one, v)
                }
            })
        }
        _ => true, // rank >= 5 is isotropic over every Q_p
    }
}

/// Render a form as `kH + ⟨c_1, ..., c_m⟩`.
///
/// Over a finite field the anisotropic entries are canonical square-class
/// representatives. Over `Q` a diagonal presentation of the anisotropic
/// part is reconstructed from its invariants by a small search; if the
/// search fails the invariants themselves are printed in brackets as an
/// explicit flag.
pub fn classify_string(q: &QuadraticForm) -> String {
    if q.rank() == 0 {
        return "0".to_string();
    }
    let w = witt_decompose(q);
    let k = w.witt_index();
    let aniso = w.anisotropic();
    let entries: Option<Vec<String>> = match q.spec {
        FieldSpec::PrimeField(_) => Some(match aniso.rank() {
            0 => vec![],
            1 => vec![aniso.disc().to_string()],
            2 => vec!["1".to_string(), aniso.disc().to_string()],
            _ => unreachable!("anisotropic rank over a finite field is at most 2"),
        }),
        FieldSpec::Rationals => {
            reconstruct_rational_diagonal(aniso).map(|v| v.iter().map(|n| n.to_string()).collect())
        }
    };
    match entries {
        Some(entries) => {
            if entries.is_empty() {
                format!("{k}H")
            } else if k == 0 {
                format!("⟨{}⟩", entries.join(", "))
            } else {
                format!("{k}H + ⟨{}⟩", entries.join(", "))
            }
        }
        None => {
            let sig = aniso.signature().expect("rational");
            format!(
                "{k}H + [anisotropic rank {}: disc {}, signature {}]",
                aniso.rank(),
                aniso.disc(),
                sig
            )
        }
    }
}

/// Search for a diagonal form over `Q` with exactly these invariants.
fn reconstruct_rational_diagonal(target: &FormInvariants) -> Option<Vec<BigInt>> {
    let m = target.rank();
    if m == 0 {
        return Some(vec![]);
    }
    let d = target.disc().as_integer().expect("rational class");
    if m == 1 {
        return Some(vec![d]);
    }

    let pool = candidate_pool(target);
    let check = |candidate: &[BigInt]| -> bool {
        let q = QuadraticForm::new(
            FieldSpec::Rationals,
            candidate
                .iter()
                .map(|n| FieldElement::from_rational(BigRational::from_integer(n.clone())))
                .collect(),
        )
        .expect("nonzero candidates");
        invariants(&q).same_as(target)
    };

    // uniform m<u> candidates first: catches definite kernels like 4<1>
    for u in &pool {
        let candidate = vec![u.clone(); m];
        if check(&candidate) {
            return Some(candidate);
        }
    }
    match m {
        2 => {
            for a in &pool {
                let b = squarefree_part(&(a * &d));
                let candidate = vec![a.clone(), b];
                if check(&candidate) {
                    return Some(candidate);
                }
            }
            None
        }
        3 => {
            for a in &pool {
                for b in &pool {
                    let c = squarefree_part(&(a * b * &d));
                    let candidate = vec![a.clone(), b.clone(), c];
                    if check(&candidate) {
                        return Some(candidate);
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Signed square-free integers built from the support primes of the target,
/// ordered by magnitude so the search is deterministic.
fn candidate_pool(target: &FormInvariants) -> Vec<BigInt> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    primes.insert(BigInt::from(2));
    if let Some(d) = target.disc().as_integer() {
        for p in odd_prime_support(&d) {
            primes.insert(p);
        }
    }
    for place in target.support() {
        if let Place::Prime(p) = place {
            primes.insert(p);
        }
    }
    let primes: Vec<BigInt> = primes.into_iter().collect();
    // cap the subset blow-up; beyond this the flagged fallback kicks in
    let usable = primes.len().min(6);
    let mut values: Vec<BigInt> = Vec::new();
    for mask in 0..(1u32 << usable) {
        let mut v = BigInt::one();
        for (i, p) in primes.iter().take(usable).enumerate() {
            if mask & (1 << i) != 0 {
                v *= p;
            }
        }
        values.push(v);
    }
    values.sort();
    let mut pool = Vec::with_capacity(values.len() * 2);
    for v in values {
        pool.push(v.clone());
        pool.push(-v);
    }
    pool
}
