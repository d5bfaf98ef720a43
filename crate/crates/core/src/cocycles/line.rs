//! Appell–Humbert exponents for line bundles and the Poincaré bundle.

use crate::algebra::{AlgebraElement, ComplexElement};
use crate::forms::{semicharacter, IntegralForm, RationalForm};
use crate::rational::Rational;
use crate::torus::{LatticeVector, RealVector, Torus};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("E does not satisfy E(ix,iy) = E(x,y)")]
    NotInNsKernel,
    #[error("E is not fixed by the (1,2)+(2,1) projection")]
    NotInALambda,
}

/// Point of the dual torus: an integer covector h (the class ξ = h^H) and a
/// rational covector c (the translate l = c^H).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoint {
    pub h: Vec<i64>,
    pub c: Vec<Rational>,
}

fn covector_real(torus: &Torus, coeffs: &[Rational], v: &RealVector) -> AlgebraElement {
    let mut acc = AlgebraElement::zero(torus.spec());
    for (c, x) in coeffs.iter().zip(&v.0) {
        if !c.is_zero() && !x.is_zero() {
            acc = acc.add_ref(&x.scale(c));
        }
    }
    acc
}

/// Hodge projection of a covector evaluated at a real vector:
/// (c(v) + i·c(iv))/2.
pub fn covector_hodge(torus: &Torus, coeffs: &[Rational], v: &RealVector) -> ComplexElement {
    let half = Rational::new(1, 2);
    let jv = torus.apply_j(v);
    ComplexElement::new(
        covector_real(torus, coeffs, v).scale(&half),
        covector_real(torus, coeffs, &jv).scale(&half),
    )
}

/// The line-bundle factor exponent
/// ϑ(λ) − (i/2)E(iv,λ) + ½E(v,λ) − (i/4)E(iλ,λ)
/// for E in the Néron–Severi kernel.
pub fn line_bundle_exponent(
    torus: &Torus,
    e: &IntegralForm,
    lam: &LatticeVector,
    v: &RealVector,
) -> Result<ComplexElement, CocycleError> {
    if !crate::forms::in_ns_kernel(e, torus) {
        return Err(CocycleError::NotInNsKernel);
    }
    Ok(line_bundle_exponent_unchecked(torus, &e.to_rational_form(), e, lam, v))
}

pub(crate) fn line_bundle_exponent_unchecked(
    torus: &Torus,
    e_rat: &RationalForm,
    e: &IntegralForm,
    lam: &LatticeVector,
    v: &RealVector,
) -> ComplexElement {
    let spec = torus.spec();
    let rl = torus.lattice_to_real(lam);
    let jv = torus.apply_j(v);
    let jl = torus.apply_j_lattice(lam);
    let theta = semicharacter(e, lam);
    let re = AlgebraElement::from_rational(spec, theta)
        .add_ref(&e_rat.eval_real(spec, &[v, &rl]).scale(&Rational::new(1, 2)));
    let im = e_rat
        .eval_real(spec, &[&jv, &rl])
        .scale(&Rational::new(-1, 2))
        .add_ref(&e_rat.eval_real(spec, &[&jl, &rl]).scale(&Rational::new(-1, 4)));
    ComplexElement::new(re, im)
}

/// The Poincaré bundle exponent ψ_{λ,ξ}(v,l) = l(λ) + ξ(λ) − conj(ξ(v)),
/// with ξ = h^H for an integer covector h and l = c^H for a rational one.
pub fn poincare_exponent(
    torus: &Torus,
    lam: &LatticeVector,
    dual_class: &[i64],
    v: &RealVector,
    dual_translate: &[Rational],
) -> ComplexElement {
    let h_rat: Vec<Rational> = dual_class.iter().map(|&x| Rational::from_i64(x)).collect();
    let rl = torus.lattice_to_real(lam);
    let l_lam = covector_hodge(torus, dual_translate, &rl);
    let xi_lam = covector_hodge(torus, &h_rat, &rl);
    let xi_v = covector_hodge(torus, &h_rat, v);
    l_lam.add_ref(&xi_lam).sub_ref(&xi_v.conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::tests::elliptic_i;

    #[test]
    fn zero_data_gives_zero_exponent() {
        let t = elliptic_i();
        let e = IntegralForm::zero(2, 2);
        let lam = LatticeVector(vec![2, -1]);
        let v = RealVector::from_rationals(t.spec(), &[Rational::new(1, 3), Rational::zero()]);
        assert!(line_bundle_exponent(&t, &e, &lam, &v).unwrap().is_zero());
        let psi = poincare_exponent(&t, &lam, &[0, 0], &v, &[Rational::zero(), Rational::zero()]);
        assert!(psi.is_zero());
    }

    #[test]
    fn poincare_at_zero_lattice_point() {
        // λ = 0 leaves only −conj(ξ(v))
        let t = elliptic_i();
        let h = [3, -1];
        let v = RealVector::from_rationals(t.spec(), &[Rational::new(1, 2), Rational::new(2, 5)]);
        let zeros = [Rational::zero(), Rational::zero()];
        let psi = poincare_exponent(&t, &LatticeVector::zero(2), &h, &v, &zeros);
        let h_rat: Vec<Rational> = h.iter().map(|&x| Rational::from_i64(x)).collect();
        let want = covector_hodge(&t, &h_rat, &v).conj().neg_ref();
        assert_eq!(psi, want);
    }

    #[test]
    fn line_exponent_at_origin() {
        // v = 0, λ basis: ϑ(λ) − (i/4)E(iλ,λ), and ϑ vanishes on basis vectors
        let t = elliptic_i();
        let e = IntegralForm::unit(2, 2, &[0, 1]);
        let lam = LatticeVector::basis(2, 0);
        let v = RealVector::zero(t.spec(), 2);
        let got = line_bundle_exponent(&t, &e, &lam, &v).unwrap();
        let jl = t.apply_j_lattice(&lam);
        let rl = t.lattice_to_real(&lam);
        let want_im = e
            .to_rational_form()
            .eval_real(t.spec(), &[&jl, &rl])
            .scale(&Rational::new(-1, 4));
        assert!(got.re.is_zero());
        assert_eq!(got.im, want_im);
    }
}
