//! The local algebra of a polynomial map at the origin.
//!
//! For `f = (f_1,...,f_n)` with `f(0) = 0`, the local ring at the origin
//! modulo `(f_1,...,f_n)` is finite dimensional exactly when the zero is
//! isolated. We present it without local orderings by the m-primary trick:
//! quotient by `(f) + m^K` for growing `K` and stop at the first `K` whose
//! dimension repeats — Nakayama then gives `m^K ⊆ (f)` locally, so the
//! stabilized quotient *is* the local algebra.

use std::collections::HashMap;

use crate::error::Error;
use crate::field::{FieldElement, FieldSpec};
use crate::groebner::{buchberger, normal_form, standard_monomials, GroebnerBasis, Staircase};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, PolyMap, Polynomial};
use crate::Result;

/// Default cap on the m-primary exponent; the largest instance in the test
/// suite (rank 81) stabilizes far below this.
pub const DEFAULT_K_CAP: u32 = 64;

/// The finite-dimensional quotient `Q_0(f)` with a monomial basis.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    map: PolyMap,
    /// Standard monomials in ascending grevlex; the first entry is 1.
    basis: Vec<Monomial>,
    /// Reduced basis of `(f) + m^K` at the stabilized `K`.
    groebner: GroebnerBasis,
    k_used: u32,
    index_of: HashMap<Monomial, usize>,
}

/// Which variable receives each monomial when f_i is written as
/// `sum_j a_ij x_j`. The distinguished socle element does not depend on the
/// choice; both are kept so that independence can be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    LowestIndex,
    HighestIndex,
}

/// The distinguished socle element expressed in the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleElement {
    coords: Vec<FieldElement>,
}

impl SocleElement {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Coefficient on the basis element 1.
    pub fn constant_coefficient(&self) -> &FieldElement {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Construct `Q_0(f)`, iterating `K = 1, 2, ...` until the dimension of
/// `k[x]/((f) + m^K)` stabilizes.
///
/// Errors with [`Error::NotIsolatedOrCapExceeded`] if no stabilization
/// happens below `k_cap` (a non-isolated zero, or a cap that is too small)
/// and with [`Error::ConstantTermNonzero`] if some component does not
/// vanish at the origin.
pub fn local_algebra(f: &PolyMap, k_cap: u32) -> Result<LocalAlgebra> {
    if let Some(i) = f.constant_term_violation() {
        return Err(Error::ConstantTermNonzero(i));
    }
    let spec = f.spec();
    let vars = f.num_vars();
    let ord = MonomialOrder::grevlex();

    let mut prev: Option<(usize, GroebnerBasis, Staircase, u32)> = None;
    for k in 1..=k_cap {
        let mut gens: Vec<Polynomial> = f
            .components()
            .iter()
            .filter(|c| !c.is_zero())
            .cloned()
            .collect();
        for m in monomials_of_degree(vars, k) {
            gens.push(Polynomial::from_monomial(spec, vars, m, spec.one()));
        }
        let basis = buchberger(&gens, ord);
        let stairs = standard_monomials(&basis);
        let dim = stairs.dimension().expect("m^K forces a finite staircase");
        if let Some((prev_dim, prev_basis, prev_stairs, prev_k)) = prev.take() {
            if prev_dim == dim {
                let standard = prev_stairs
                    .standard_monomials()
                    .expect("finite staircase")
                    .to_vec();
                let index_of = standard
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, m)| (m, i))
                    .collect();
                return Ok(LocalAlgebra {
                    map: f.clone(),
                    basis: standard,
                    groebner: prev_basis,
                    k_used: prev_k,
                    index_of,
                });
            }
        }
        prev = Some((dim, basis, stairs, k));
    }
    Err(Error::NotIsolatedOrCapExceeded { k_cap })
}

impl LocalAlgebra {
    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn spec(&self) -> FieldSpec {
        self.map.spec()
    }

    pub fn num_vars(&self) -> usize {
        self.map.num_vars()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Standard-monomial basis, ascending grevlex, 1 first.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.groebner
    }

    /// The stabilized exponent: `m^K ⊆ (f)` in the local ring.
    pub fn k_used(&self) -> u32 {
        self.k_used
    }

    /// Coordinates of the image of `p` in the quotient with respect to the
    /// standard-monomial basis.
    pub fn reduce_to_basis(&self, p: &Polynomial) -> Vec<FieldElement> {
        let nf = normal_form(p, &self.groebner);
        let mut coords = vec![self.spec().zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            let idx = *self
                .index_of
                .get(m)
                .expect("normal form terms are standard monomials");
            coords[idx] = c.clone();
        }
        coords
    }

    /// The residue of a polynomial as a linear combination of the basis.
    pub fn residue_polynomial(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.groebner)
    }

    /// Product of two basis elements, reduced to basis coordinates.
    pub fn multiply_basis(&self, i: usize, j: usize) -> Vec<FieldElement> {
        let prod = Polynomial::from_monomial(
            self.spec(),
            self.num_vars(),
            self.basis[i].mul(&self.basis[j]),
            self.spec().one(),
        );
        self.reduce_to_basis(&prod)
    }

    /// The distinguished socle element, using the lowest-index splitting.
    pub fn socle_element(&self) -> Result<SocleElement> {
        self.socle_element_with(Splitting::LowestIndex)
    }

    /// The distinguished socle element: write `f_i = sum_j a_ij x_j`, take
    /// the residue of `det(a_ij)`.
    pub fn socle_element_with(&self, splitting: Splitting) -> Result<SocleElement> {
        let det = self.socle_determinant(splitting);
        let coords = self.reduce_to_basis(&det);
        let socle = SocleElement { coords };
        if socle.is_zero() {
            return Err(Error::internal(
                "distinguished socle element reduced to zero on an isolated zero",
            ));
        }
        if self.dimension() >= 2 && !socle.constant_coefficient().is_zero() {
            return Err(Error::internal(
                "socle element has a constant component although dim >= 2",
            ));
        }
        Ok(socle)
    }

    fn socle_determinant(&self, splitting: Splitting) -> Polynomial {
        let spec = self.spec();
        let n = self.num_vars();
        let mut matrix = vec![vec![Polynomial::zero(spec, n); n]; n];
        for (i, component) in self.map.components().iter().enumerate() {
            for (m, c) in component.terms() {
                let j = match splitting {
                    Splitting::LowestIndex => m.lowest_variable(),
                    Splitting::HighestIndex => m.highest_variable(),
                }
                .expect("components vanish at the origin, so every term has a variable");
                matrix[i][j].add_term(&m.divide_by_variable(j), c);
            }
        }
        determinant(&matrix, spec, n)
    }

    /// The socle element as a polynomial in the ambient variables.
    pub fn socle_polynomial(&self, socle: &SocleElement) -> Polynomial {
        let mut out = Polynomial::zero(self.spec(), self.num_vars());
        for (m, c) in self.basis.iter().zip(socle.coords()) {
            out.add_term(m, c);
        }
        out
    }

    /// Leading-term staircase of the defining basis.
    pub fn staircase_type(&self) -> Staircase {
        standard_monomials(&self.groebner)
    }
}

fn determinant(matrix: &[Vec<Polynomial>], spec: FieldSpec, vars: usize) -> Polynomial {
    let n = matrix.len();
    if n == 1 {
        return matrix[0][0].clone();
    }
    // cofactor expansion along the first column
    let mut det = Polynomial::zero(spec, vars);
    for i in 0..n {
        if matrix[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = matrix
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let cofactor = &matrix[i][0] * &determinant(&minor, spec, vars);
        if i % 2 == 0 {
            det = &det + &cofactor;
        } else {
            det = &det - &cofactor;
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn map2(f1: &str, f2: &str) -> PolyMap {
        PolyMap::new(vec![
            parse_polynomial(f1, &["x", "y"], q()).unwrap(),
            parse_polynomial(f2, &["x", "y"], q()).unwrap(),
        ])
        .unwrap()
    }

    fn map1(f1: &str) -> PolyMap {
        PolyMap::new(vec![parse_polynomial(f1, &["x"], q()).unwrap()]).unwrap()
    }

    fn basis_names(a: &LocalAlgebra) -> Vec<String> {
        a.basis().iter().map(|m| m.render(&["x", "y"])).collect()
    }

    #[test]
    fn plane_quadric_algebra() {
        let a = local_algebra(&map2("x*y", "-x^2 + y^2"), DEFAULT_K_CAP).unwrap();
        assert_eq!(a.dimension(), 4);
        assert_eq!(basis_names(&a), ["1", "y", "x", "y^2"]);
        assert_eq!(a.k_used(), 3);
    }

    #[test]
    fn dimension_sequence_stabilizes() {
        // d-sequence for (xy, -x^2+y^2) is 1, 3, 4, 4, ...
        let f = map2("x*y", "-x^2 + y^2");
        let spec = q();
        let dims: Vec<usize> = (1..=5)
            .map(|k| {
                let mut gens = f.components().to_vec();
                for m in monomials_of_degree(2, k) {
                    gens.push(Polynomial::from_monomial(spec, 2, m, spec.one()));
                }
                standard_monomials(&buchberger(&gens, MonomialOrder::grevlex()))
                    .dimension()
                    .unwrap()
            })
            .collect();
        assert_eq!(dims, [1, 3, 4, 4, 4]);
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn identity_map_has_dimension_one() {
        let a = local_algebra(&map2("x", "y"), DEFAULT_K_CAP).unwrap();
        assert_eq!(a.dimension(), 1);
        assert_eq!(basis_names(&a), ["1"]);
    }

    #[test]
    fn far_zero_is_invisible() {
        // x(x-1) has zeros at 0 and 1; only the origin contributes
        let a = local_algebra(&map1("x^2 - x"), DEFAULT_K_CAP).unwrap();
        assert_eq!(a.dimension(), 1);
        assert_eq!(a.k_used(), 1);
    }

    #[test]
    fn nonzero_constant_term_rejected() {
        let err = local_algebra(&map2("x + 1", "y"), DEFAULT_K_CAP).unwrap_err();
        assert_eq!(err, Error::ConstantTermNonzero(0));
    }

    #[test]
    fn non_isolated_zero_exceeds_cap() {
        // (x^2, xy) vanishes on the whole y-axis
        let err = local_algebra(&map2("x^2", "x*y"), 12).unwrap_err();
        assert_eq!(err, Error::NotIsolatedOrCapExceeded { k_cap: 12 });
    }

    #[test]
    fn reduce_to_basis_examples() {
        let a = local_algebra(&map2("x*y", "-x^2 + y^2"), DEFAULT_K_CAP).unwrap();
        // x^2 = y^2 in the quotient
        let coords = a.reduce_to_basis(&parse_polynomial("x^2", &["x", "y"], q()).unwrap());
        let strs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        assert_eq!(strs, ["0", "0", "0", "1"]);
        // 1 is the first basis vector
        let coords = a.reduce_to_basis(&Polynomial::one(q(), 2));
        assert!(coords[0].is_one() && coords[1..].iter().all(|c| c.is_zero()));
        // y^3 lies in the ideal
        let coords = a.reduce_to_basis(&parse_polynomial("y^3", &["x", "y"], q()).unwrap());
        assert!(coords.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn quotient_multiplication_is_commutative_associative() {
        let a = local_algebra(&map2("x*y", "y^4 - x^2"), DEFAULT_K_CAP).unwrap();
        let n = a.dimension();
        let as_poly = |coords: &[FieldElement]| {
            let mut p = Polynomial::zero(a.spec(), a.num_vars());
            for (m, c) in a.basis().iter().zip(coords) {
                p.add_term(m, c);
            }
            p
        };
        for i in 0..n {
            for j in 0..n {
                assert_eq!(a.multiply_basis(i, j), a.multiply_basis(j, i));
                for l in 0..n {
                    let ij = as_poly(&a.multiply_basis(i, j));
                    let bl = Polynomial::from_monomial(
                        a.spec(),
                        2,
                        a.basis()[l].clone(),
                        a.spec().one(),
                    );
                    let lhs = a.reduce_to_basis(&(&ij * &bl));
                    let jl = as_poly(&a.multiply_basis(j, l));
                    let bi = Polynomial::from_monomial(
                        a.spec(),
                        2,
                        a.basis()[i].clone(),
                        a.spec().one(),
                    );
                    let rhs = a.reduce_to_basis(&(&bi * &jl));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn socle_of_plane_quadrics() {
        // general a, b: E = b y^2; here a = 1, b = 1
        let a = local_algebra(&map2("x*y", "-x^2 + y^2"), DEFAULT_K_CAP).unwrap();
        let e = a.socle_element().unwrap();
        let poly = a.socle_polynomial(&e);
        assert_eq!(poly, parse_polynomial("y^2", &["x", "y"], q()).unwrap());

        // scaled: f2 = -2x^2 + 3y^2 gives E = 3 y^2
        let a = local_algebra(&map2("x*y", "-2*x^2 + 3*y^2"), DEFAULT_K_CAP).unwrap();
        let e = a.socle_element().unwrap();
        assert_eq!(
            a.socle_polynomial(&e),
            parse_polynomial("3*y^2", &["x", "y"], q()).unwrap()
        );
    }

    #[test]
    fn socle_of_identity_is_one() {
        let a = local_algebra(&map2("x", "y"), DEFAULT_K_CAP).unwrap();
        let e = a.socle_element().unwrap();
        assert!(e.coords()[0].is_one());
    }

    #[test]
    fn socle_of_gradient_example() {
        // grad(x^3 + y^2) = (3x^2, 2y); E = 6x
        let a = local_algebra(&map2("3*x^2", "2*y"), DEFAULT_K_CAP).unwrap();
        assert_eq!(a.dimension(), 2);
        let e = a.socle_element().unwrap();
        assert_eq!(
            a.socle_polynomial(&e),
            parse_polynomial("6*x", &["x", "y"], q()).unwrap()
        );
    }

    #[test]
    fn socle_annihilates_maximal_ideal() {
        for (f1, f2) in [
            ("x*y", "-x^2 + y^2"),
            ("x*y", "y^4 - x^2"),
            ("3*x^2", "2*y"),
            ("x + y^2", "y^3"),
        ] {
            let a = local_algebra(&map2(f1, f2), DEFAULT_K_CAP).unwrap();
            let e = a.socle_element().unwrap();
            let e_poly = a.socle_polynomial(&e);
            for i in 0..2 {
                let xi = Polynomial::variable(q(), 2, i);
                let coords = a.reduce_to_basis(&(&e_poly * &xi));
                assert!(
                    coords.iter().all(|c| c.is_zero()),
                    "E * x_{i} != 0 for ({f1}, {f2})"
                );
            }
        }
    }

    #[test]
    fn splitting_choice_is_immaterial() {
        for (f1, f2) in [
            ("x*y", "-x^2 + y^2"),
            ("x*y", "y^4 - x^2"),
            ("x + y^2", "y^3"),
            ("x^2 + y^2", "x*y + y^3"),
        ] {
            let a = local_algebra(&map2(f1, f2), DEFAULT_K_CAP).unwrap();
            let lo = a.socle_element_with(Splitting::LowestIndex).unwrap();
            let hi = a.socle_element_with(Splitting::HighestIndex).unwrap();
            assert_eq!(lo, hi, "socle differs between splittings for ({f1}, {f2})");
        }
    }

    #[test]
    fn stabilization_is_stable_beyond_detection() {
        let f = map2("x*y", "y^4 - x^2");
        let a = local_algebra(&f, DEFAULT_K_CAP).unwrap();
        let spec = q();
        // d_K = dim for K_used + j, j = 0, 2, 3
        for extra in [0u32, 2, 3] {
            let k = a.k_used() + extra;
            let mut gens = f.components().to_vec();
            for m in monomials_of_degree(2, k) {
                gens.push(Polynomial::from_monomial(spec, 2, m, spec.one()));
            }
            let dim = standard_monomials(&buchberger(&gens, MonomialOrder::grevlex()))
                .dimension()
                .unwrap();
            assert_eq!(dim, a.dimension());
        }
    }

    #[test]
    fn degree_n_monomials_reduce_consistently() {
        // the quotient presentation is the same whether m^K or m^{K+1}
        // generators are used
        let f = map2("x*y", "-x^2 + y^2");
        let a = local_algebra(&f, DEFAULT_K_CAP).unwrap();
        let n = a.dimension() as u32;
        let spec = q();
        let mut gens = f.components().to_vec();
        for m in monomials_of_degree(2, a.k_used() + 1) {
            gens.push(Polynomial::from_monomial(spec, 2, m, spec.one()));
        }
        let bigger = buchberger(&gens, MonomialOrder::grevlex());
        for m in monomials_of_degree(2, n) {
            let p = Polynomial::from_monomial(spec, 2, m, spec.one());
            assert_eq!(a.residue_polynomial(&p), normal_form(&p, &bigger));
        }
    }

    #[test]
    fn staircase_cases_of_plane_maps() {
        let a = local_algebra(&map2("x*y", "y^4 - x^2"), DEFAULT_K_CAP).unwrap();
        assert_eq!(a.dimension(), 6);
        // dim 6 is not a rank-5 staircase
        assert_eq!(a.staircase_type().plane_rank5_case(), None);

        // five-dimensional with leading terms y^3, xy, x^3: case (4)
        let a = local_algebra(&map2("x*y", "x^2 + y^3"), DEFAULT_K_CAP).unwrap();
        assert_eq!(a.dimension(), 5);
        assert_eq!(a.staircase_type().plane_rank5_case(), Some(4));
    }

    #[test]
    fn staircase_one_variable_pure_power() {
        let a = local_algebra(&map1("x^5"), DEFAULT_K_CAP).unwrap();
        let stairs = a.staircase_type();
        assert_eq!(stairs.dimension(), Some(5));
        assert_eq!(stairs.leading_monomials(), &[Monomial::new(vec![5])]);
        // not a plane staircase, so no figure case
        assert_eq!(stairs.plane_rank5_case(), None);
    }

    #[test]
    fn fulton_bound_for_m_squared_components() {
        for (f1, f2) in [
            ("x*y", "-x^2 + y^2"),
            ("x^2", "y^2"),
            ("x^2 - y^2", "x*y"),
            ("x^2 + y^3", "y^2 + x^3"),
        ] {
            let f = map2(f1, f2);
            assert!(f.in_m_squared());
            let a = local_algebra(&f, DEFAULT_K_CAP).unwrap();
            assert!(a.dimension() >= 4, "({f1}, {f2}) has dim {}", a.dimension());
        }
    }
}
