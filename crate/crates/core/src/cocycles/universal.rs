//! The universal gerbe on the product of the torus with its moduli stack of
//! topologically trivial gerbes: the exponent Ψ on Λ × Alt²(Λ,Z), the
//! trivialization κ of the constant cocycle of ½μ^H, and the topological
//! class of the universal cocycle.

use crate::algebra::{AlgebraElement, ComplexElement};
use crate::forms::{hodge_integral_2form, sigma_eval, ComplexForm, IntegralForm, RationalForm};
use crate::rational::Rational;
use crate::torus::{LatticeVector, RealVector, Torus};
use num_bigint::BigInt;

/// The invariant (1,1) evaluation ½(μ(x,y) + μ(ix,iy)).
fn one_one_eval(
    torus: &Torus,
    mu: &RationalForm,
    x: &RealVector,
    y: &RealVector,
) -> AlgebraElement {
    let spec = torus.spec();
    let jx = torus.apply_j(x);
    let jy = torus.apply_j(y);
    mu.eval_real(spec, &[x, y])
        .add_ref(&mu.eval_real(spec, &[&jx, &jy]))
        .scale(&Rational::new(1, 2))
}

/// Ψ_{(λ₁,μ₁),(λ₂,μ₂)}(v,B): the universal gerbe exponent
/// ½(B+μ₁^H+μ₂^H)(λ₁,λ₂) + ½conj(μ₂^H(v,λ₁))
/// − (i/4)(μ₂(iv,λ₁) − μ₂(v,iλ₁)) + ¼(μ₂(v,λ₁) + μ₂(iv,iλ₁))
/// − (i/8)(μ₂(iλ₁,λ₁) − μ₂(λ₁,iλ₁)) + ½σ(μ₂)(λ₁,λ₁).
pub fn universal_exponent(
    torus: &Torus,
    l1: &LatticeVector,
    mu1: &IntegralForm,
    l2: &LatticeVector,
    mu2: &IntegralForm,
    v: &RealVector,
    b: &ComplexForm,
) -> ComplexElement {
    let spec = torus.spec();
    let half = Rational::new(1, 2);
    let quarter = Rational::new(1, 4);
    let mu1h = hodge_integral_2form(mu1, torus);
    let mu2h = hodge_integral_2form(mu2, torus);
    let mu2r = mu2.to_rational_form();
    let r1 = torus.lattice_to_real(l1);
    let jv = torus.apply_j(v);
    let j1 = torus.apply_j_lattice(l1);

    let mut acc = b
        .add(&mu1h)
        .add(&mu2h)
        .eval_lattice(&[l1, l2])
        .scale(&half);
    acc = acc.add_ref(&mu2h.eval_real(&[v, &r1]).conj().scale(&half));
    // −(i/4)(μ₂(iv,λ₁) − μ₂(v,iλ₁))
    let im1 = mu2r
        .eval_real(spec, &[&jv, &r1])
        .sub_ref(&mu2r.eval_real(spec, &[v, &j1]))
        .scale(&quarter)
        .neg_ref();
    // ¼(μ₂(v,λ₁) + μ₂(iv,iλ₁))
    let re1 = mu2r
        .eval_real(spec, &[v, &r1])
        .add_ref(&mu2r.eval_real(spec, &[&jv, &j1]))
        .scale(&quarter);
    // −(i/8)(μ₂(iλ₁,λ₁) − μ₂(λ₁,iλ₁)) = −(i/4)μ₂(iλ₁,λ₁)
    let im2 = mu2r
        .eval_real(spec, &[&j1, &r1])
        .scale(&quarter)
        .neg_ref();
    let sig = Rational::from_bigint(sigma_eval(mu2, l1, l1)).mul_ref(&half);
    acc = acc.add_ref(&ComplexElement::new(
        re1.add_ref(&AlgebraElement::from_rational(spec, sig)),
        im1.add_ref(&im2),
    ));
    acc
}

/// κ_λ(v) for an integral 2-form μ: trivializes the constant cocycle of
/// ½μ^H, i.e. δκ − ½μ^H(λ₁,λ₂) is integral. With m = ½(μ + μ(i·,i·)):
/// ½σ(μ)(λ,λ) − [−(i/2)m(iv,λ) + ½m(v,λ) − (i/4)m(iλ,λ)] − ½conj(μ^H(v,λ)).
pub fn trivializer_exponent(
    torus: &Torus,
    mu: &IntegralForm,
    lam: &LatticeVector,
    v: &RealVector,
) -> ComplexElement {
    let spec = torus.spec();
    let half = Rational::new(1, 2);
    let mur = mu.to_rational_form();
    let muh = hodge_integral_2form(mu, torus);
    let rl = torus.lattice_to_real(lam);
    let jv = torus.apply_j(v);
    let jl = torus.apply_j_lattice(lam);

    let sig = Rational::from_bigint(sigma_eval(mu, lam, lam)).mul_ref(&half);
    let bracket_re = one_one_eval(torus, &mur, v, &rl).scale(&half);
    let bracket_im = one_one_eval(torus, &mur, &jv, &rl)
        .scale(&Rational::new(-1, 2))
        .add_ref(&one_one_eval(torus, &mur, &jl, &rl).scale(&Rational::new(-1, 4)));
    let tail = muh.eval_real(&[v, &rl]).conj().scale(&half);
    ComplexElement::new(AlgebraElement::from_rational(spec, sig), AlgebraElement::zero(spec))
        .sub_ref(&ComplexElement::new(bracket_re, bracket_im))
        .sub_ref(&tail)
}

/// Topological class of the universal cocycle on basis tuples of the product
/// group: μ₁(λ₂,λ₃) − μ₂(λ₁,λ₃) + μ₃(λ₁,λ₂).
pub fn universal_class_value(
    l1: &LatticeVector,
    l2: &LatticeVector,
    l3: &LatticeVector,
    mu1: &IntegralForm,
    mu2: &IntegralForm,
    mu3: &IntegralForm,
) -> BigInt {
    mu1.eval_lattice(&[l2, l3]) - mu2.eval_lattice(&[l1, l3]) + mu3.eval_lattice(&[l1, l2])
}
