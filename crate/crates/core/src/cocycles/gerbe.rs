//! The Appell–Humbert cocycle of a gerbe: the holomorphic term H, the
//! correction cochains solving the integrality equations, the full exponent
//! Θ^{(B,E)}, the six-term boundary identity, and isogeny pullbacks.

use crate::algebra::{AlgebraElement, ComplexElement};
use crate::forms::{for_each_tuple, IntegralForm, RationalForm};
use crate::rational::Rational;
use crate::ranks::GerbeClass;
use crate::torus::{LatticeVector, RealVector, Torus};

/// H_{λ₁,λ₂}(v): the v-holomorphic part of the gerbe exponent,
/// with real part (E(v,λ₁,λ₂) + ½E(iv,iλ₁,λ₂) + ½E(iv,λ₁,iλ₂))/8 and
/// imaginary part (½E(v,iλ₁,λ₂) + ½E(v,λ₁,iλ₂) − E(iv,λ₁,λ₂))/8.
pub fn holomorphic_term(
    torus: &Torus,
    e: &RationalForm,
    l1: &LatticeVector,
    l2: &LatticeVector,
    v: &RealVector,
) -> ComplexElement {
    let spec = torus.spec();
    let r1 = torus.lattice_to_real(l1);
    let r2 = torus.lattice_to_real(l2);
    let jv = torus.apply_j(v);
    let j1 = torus.apply_j_lattice(l1);
    let j2 = torus.apply_j_lattice(l2);
    let half = Rational::new(1, 2);
    let eighth = Rational::new(1, 8);
    let re = e
        .eval_real(spec, &[v, &r1, &r2])
        .add_ref(&e.eval_real(spec, &[&jv, &j1, &r2]).scale(&half))
        .add_ref(&e.eval_real(spec, &[&jv, &r1, &j2]).scale(&half))
        .scale(&eighth);
    let im = e
        .eval_real(spec, &[v, &j1, &r2])
        .scale(&half)
        .add_ref(&e.eval_real(spec, &[v, &r1, &j2]).scale(&half))
        .sub_ref(&e.eval_real(spec, &[&jv, &r1, &r2]))
        .scale(&eighth);
    ComplexElement::new(re, im)
}

/// (k, l)(λ₁,λ₂,λ₃) = (Re, Im) of H_{λ₂,λ₃}(λ₁) — the v-independent value of
/// the degree-2 coboundary of H.
pub fn boundary_parts(
    torus: &Torus,
    e: &RationalForm,
    l1: &LatticeVector,
    l2: &LatticeVector,
    l3: &LatticeVector,
) -> (AlgebraElement, AlgebraElement) {
    let v1 = torus.lattice_to_real(l1);
    let h = holomorphic_term(torus, e, l2, l3, &v1);
    (h.re, h.im)
}

/// β″: solves (δβ″) + Im H_{λ₂,λ₃}(λ₁) = 0 exactly;
/// (E(iλ₁,λ₂,λ₁) − E(λ₂,i(λ₁+λ₂),λ₁))/16.
pub fn imag_corrector(
    torus: &Torus,
    e: &RationalForm,
    l1: &LatticeVector,
    l2: &LatticeVector,
) -> AlgebraElement {
    let spec = torus.spec();
    let r1 = torus.lattice_to_real(l1);
    let r2 = torus.lattice_to_real(l2);
    let j1 = torus.apply_j_lattice(l1);
    let j12 = torus.apply_j_lattice(&l1.add(l2));
    e.eval_real(spec, &[&j1, &r2, &r1])
        .sub_ref(&e.eval_real(spec, &[&r2, &j12, &r1]))
        .scale(&Rational::new(1, 16))
}

/// The basis-expansion part u of the real corrector: a sum over sorted
/// triples i<j<k of the coefficients of E against six twelfth-weighted
/// mixed coordinate monomials of λ₁, λ₂. Satisfies (δu) + E/6 ∈ Z.
pub fn basis_sum_corrector(e: &IntegralForm, l1: &LatticeVector, l2: &LatticeVector) -> Rational {
    assert_eq!(e.degree, 3);
    let a = &l1.0;
    let b = &l2.0;
    let mut acc_num = num_bigint::BigInt::from(0);
    for_each_tuple(e.rank, 3, |pos, t| {
        let c = &e.coeffs()[pos];
        if c.is_zero_big() {
            return;
        }
        let (i, j, k) = (t[0], t[1], t[2]);
        let (ai, aj, ak) = (a[i] as i128, a[j] as i128, a[k] as i128);
        let (bi, bj, bk) = (b[i] as i128, b[j] as i128, b[k] as i128);
        let num = 5 * ai * aj * bk
            + ai * bj * ak
            + 9 * bi * aj * ak
            + 3 * ai * bj * bk
            + 7 * bi * aj * bk
            + 11 * bi * bj * ak;
        if num != 0 {
            acc_num += c * num_bigint::BigInt::from(num);
        }
    });
    Rational::from_bigint(acc_num).mul_ref(&Rational::new(1, 12))
}

trait IsZeroBig {
    fn is_zero_big(&self) -> bool;
}
impl IsZeroBig for num_bigint::BigInt {
    fn is_zero_big(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// The complex-structure part r of the real corrector:
/// (2E(λ₁,iλ₂,iλ₁) + E(λ₂,iλ₂,iλ₁))/48. Satisfies (δr) + k − E/6 = 0
/// exactly for E ∈ A(Λ).
pub fn structure_corrector(
    torus: &Torus,
    e: &RationalForm,
    l1: &LatticeVector,
    l2: &LatticeVector,
) -> AlgebraElement {
    let spec = torus.spec();
    let r1 = torus.lattice_to_real(l1);
    let r2 = torus.lattice_to_real(l2);
    let j1 = torus.apply_j_lattice(l1);
    let j2 = torus.apply_j_lattice(l2);
    e.eval_real(spec, &[&r1, &j2, &j1])
        .scale_i64(2)
        .add_ref(&e.eval_real(spec, &[&r2, &j2, &j1]))
        .scale(&Rational::new(1, 48))
}

/// β′ = u + r: the degree-2 analogue of the semi-character; additive in E,
/// with (δβ′) + k ∈ Z.
pub fn real_corrector(
    torus: &Torus,
    e_int: &IntegralForm,
    e: &RationalForm,
    l1: &LatticeVector,
    l2: &LatticeVector,
) -> AlgebraElement {
    let u = basis_sum_corrector(e_int, l1, l2);
    let r = structure_corrector(torus, e, l1, l2);
    AlgebraElement::from_rational(torus.spec(), u).add_ref(&r)
}

/// Prepared evaluator for the gerbe exponent of a class (B, E).
pub struct GerbeCocycle<'a> {
    torus: &'a Torus,
    pub class: GerbeClass,
    e_rat: RationalForm,
}

impl<'a> GerbeCocycle<'a> {
    pub fn new(torus: &'a Torus, class: GerbeClass) -> Self {
        let e_rat = class.e.to_rational_form();
        GerbeCocycle { torus, class, e_rat }
    }

    /// Θ^{(B,E)}_{λ₁,λ₂}(v) = ½B(λ₁,λ₂) + H_{λ₁,λ₂}(v) + β′ + iβ″.
    ///
    /// Computed in one pass so the J-applications of λ₁, λ₂, v are shared by
    /// every term; agrees with the composable pieces by construction (see the
    /// `composition` test).
    pub fn exponent(
        &self,
        l1: &LatticeVector,
        l2: &LatticeVector,
        v: &RealVector,
    ) -> ComplexElement {
        let torus = self.torus;
        let spec = torus.spec();
        let e = &self.e_rat;
        let half = Rational::new(1, 2);
        let r1 = torus.lattice_to_real(l1);
        let r2 = torus.lattice_to_real(l2);
        let jv = torus.apply_j(v);
        let j1 = torus.apply_j_lattice(l1);
        let j2 = torus.apply_j_lattice(l2);
        // H
        let h_re = e
            .eval_real(spec, &[v, &r1, &r2])
            .add_ref(&e.eval_real(spec, &[&jv, &j1, &r2]).scale(&half))
            .add_ref(&e.eval_real(spec, &[&jv, &r1, &j2]).scale(&half))
            .scale(&Rational::new(1, 8));
        let h_im = e
            .eval_real(spec, &[v, &j1, &r2])
            .scale(&half)
            .add_ref(&e.eval_real(spec, &[v, &r1, &j2]).scale(&half))
            .sub_ref(&e.eval_real(spec, &[&jv, &r1, &r2]))
            .scale(&Rational::new(1, 8));
        // β′ = u + r
        let u = basis_sum_corrector(&self.class.e, l1, l2);
        let r_part = e
            .eval_real(spec, &[&r1, &j2, &j1])
            .scale_i64(2)
            .add_ref(&e.eval_real(spec, &[&r2, &j2, &j1]))
            .scale(&Rational::new(1, 48));
        let beta_re = AlgebraElement::from_rational(spec, u).add_ref(&r_part);
        // β″, with i(λ₁+λ₂) as j1 + j2
        let j12 = j1.add(&j2);
        let beta_im = e
            .eval_real(spec, &[&j1, &r2, &r1])
            .sub_ref(&e.eval_real(spec, &[&r2, &j12, &r1]))
            .scale(&Rational::new(1, 16));
        let b_half = self.class.b.eval_lattice(&[l1, l2]).scale(&half);
        ComplexElement::new(h_re.add_ref(&beta_re), h_im.add_ref(&beta_im)).add_ref(&b_half)
    }

    /// Wraps the exponent as a degree-2 cochain on Λ for coboundary work.
    pub fn cochain(&'a self) -> super::cochain::Cochain<'a> {
        super::cochain::Cochain::new(2, move |gs, x| {
            self.exponent(&gs[0].lam, &gs[1].lam, &x.v)
        })
    }
}

/// A scalar multiplier a + b·i acting on lattice vectors as a·λ + b·Jλ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotMultiplier {
    pub re: Rational,
    pub im: Rational,
}

impl SlotMultiplier {
    pub fn real(r: Rational) -> Self {
        SlotMultiplier { re: r, im: Rational::zero() }
    }

    pub fn imaginary_unit() -> Self {
        SlotMultiplier { re: Rational::zero(), im: Rational::one() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SlotMultiplier { re: self.re.sub_ref(&other.re), im: self.im.sub_ref(&other.im) }
    }

    fn apply(&self, torus: &Torus, l: &LatticeVector) -> RealVector {
        let rl = torus.lattice_to_real(l).scale_rational(&self.re);
        let jl = torus.apply_j_lattice(l).scale_rational(&self.im);
        rl.add(&jl)
    }
}

/// ζ_{λ₁,λ₂} = E(x₁λ₁+x₂λ₂, x₃λ₁+x₄λ₂, x₅λ₁+x₆λ₂) for scalar multipliers x.
pub fn mixed_two_cochain(
    torus: &Torus,
    e: &RationalForm,
    x: &[SlotMultiplier; 6],
    l1: &LatticeVector,
    l2: &LatticeVector,
) -> AlgebraElement {
    let spec = torus.spec();
    let s1 = x[0].apply(torus, l1).add(&x[1].apply(torus, l2));
    let s2 = x[2].apply(torus, l1).add(&x[3].apply(torus, l2));
    let s3 = x[4].apply(torus, l1).add(&x[5].apply(torus, l2));
    e.eval_real(spec, &[&s1, &s2, &s3])
}

/// Direct coboundary of the mixed two-cochain.
pub fn six_term_boundary_direct(
    torus: &Torus,
    e: &RationalForm,
    x: &[SlotMultiplier; 6],
    l1: &LatticeVector,
    l2: &LatticeVector,
    l3: &LatticeVector,
) -> AlgebraElement {
    let f = |a: &LatticeVector, b: &LatticeVector| mixed_two_cochain(torus, e, x, a, b);
    f(l2, l3)
        .sub_ref(&f(&l1.add(l2), l3))
        .add_ref(&f(l1, &l2.add(l3)))
        .sub_ref(&f(l1, l2))
}

/// Closed form for the same boundary:
/// E(x₁λ₁,(x₅−x₆)λ₂,x₄λ₃) + E(x₃λ₁,(x₆−x₅)λ₂,x₂λ₃) + E(x₁λ₁,(x₄−x₃)λ₂,x₆λ₃)
/// + E(x₅λ₁,(x₃−x₄)λ₂,x₂λ₃) + E(x₃λ₁,(x₁−x₂)λ₂,x₆λ₃) + E(x₅λ₁,(x₂−x₁)λ₂,x₄λ₃).
pub fn six_term_boundary_closed(
    torus: &Torus,
    e: &RationalForm,
    x: &[SlotMultiplier; 6],
    l1: &LatticeVector,
    l2: &LatticeVector,
    l3: &LatticeVector,
) -> AlgebraElement {
    let spec = torus.spec();
    let term = |p: &SlotMultiplier, q: &SlotMultiplier, r: &SlotMultiplier| {
        let s1 = p.apply(torus, l1);
        let s2 = q.apply(torus, l2);
        let s3 = r.apply(torus, l3);
        e.eval_real(spec, &[&s1, &s2, &s3])
    };
    let (x1, x2, x3, x4, x5, x6) = (&x[0], &x[1], &x[2], &x[3], &x[4], &x[5]);
    term(x1, &x5.sub(x6), x4)
        .add_ref(&term(x3, &x6.sub(x5), x2))
        .add_ref(&term(x1, &x4.sub(x3), x6))
        .add_ref(&term(x5, &x3.sub(x4), x2))
        .add_ref(&term(x3, &x1.sub(x2), x6))
        .add_ref(&term(x5, &x2.sub(x1), x4))
}

/// Pullback of a gerbe class along the multiplication-by-n isogeny:
/// (B, E) ↦ (n²B, n³E).
pub fn isogeny_pullback(n: i64, class: &GerbeClass) -> GerbeClass {
    GerbeClass { b: class.b.scale_i64(n * n), e: class.e.scale_i64(n * n * n) }
}

/// Exponent difference Θ^{(B,E)}(nλ₁, nλ₂)(nv) − Θ^{(n²B,n³E)}(λ₁,λ₂)(v);
/// the pullback law says this is integral (in fact it vanishes identically).
pub fn isogeny_pullback_difference(
    torus: &Torus,
    n: i64,
    class: &GerbeClass,
    l1: &LatticeVector,
    l2: &LatticeVector,
    v: &RealVector,
) -> ComplexElement {
    let original = GerbeCocycle::new(torus, class.clone());
    let pulled = GerbeCocycle::new(torus, isogeny_pullback(n, class));
    let lhs = original.exponent(
        &l1.scale(n),
        &l2.scale(n),
        &v.scale_rational(&Rational::from_i64(n)),
    );
    let rhs = pulled.exponent(l1, l2, v);
    lhs.sub_ref(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ComplexForm;
    use crate::torus::tests::elliptic_i;

    #[test]
    fn zero_class_gives_zero_exponent() {
        let t = elliptic_i();
        let class = GerbeClass::new(
            &t,
            ComplexForm::zero(2, 2, t.spec()),
            IntegralForm::zero(3, 2),
        )
        .unwrap();
        let c = GerbeCocycle::new(&t, class);
        let v = RealVector::from_rationals(t.spec(), &[Rational::new(1, 7), Rational::new(2, 3)]);
        assert!(c
            .exponent(&LatticeVector(vec![1, 2]), &LatticeVector(vec![-3, 4]), &v)
            .is_zero());
    }

    #[test]
    fn exponent_composes_from_parts() {
        let text = crate::specfile::tests::fixture_abc_sqrt23();
        let (torus, _) = crate::specfile::parse_spec(&text).unwrap();
        let htb = crate::ranks::htb_group(&torus);
        let mut s = crate::sample::Sampler::for_torus(&torus, 5);
        for _ in 0..10 {
            let e = s.combination(&htb.forms(), 3);
            let e_rat = e.to_rational_form();
            let b = crate::forms::hodge_2form(&s.rational_form(2), &torus);
            let co = GerbeCocycle::new(&torus, GerbeClass { b: b.clone(), e: e.clone() });
            let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
            let want = holomorphic_term(&torus, &e_rat, &l1, &l2, &v)
                .add_ref(&ComplexElement::new(
                    real_corrector(&torus, &e, &e_rat, &l1, &l2),
                    imag_corrector(&torus, &e_rat, &l1, &l2),
                ))
                .add_ref(&b.eval_lattice(&[&l1, &l2]).scale(&Rational::new(1, 2)));
            assert_eq!(co.exponent(&l1, &l2, &v), want);
        }
    }

    #[test]
    fn pullback_class_arithmetic() {
        // ((n²+n³)/2)(B,E) + ((n²−n³)/2)(B,−E) = (n²B, n³E) for n = 2
        let t = elliptic_i();
        let b = ComplexForm::zero(2, 2, t.spec());
        let e = IntegralForm::zero(3, 2);
        let class = GerbeClass { b, e };
        let n: i64 = 2;
        let plus = class.scale((n * n + n * n * n) / 2);
        let minus = GerbeClass { b: class.b.clone(), e: class.e.neg() }
            .scale((n * n - n * n * n) / 2);
        let combined = plus.add(&minus);
        let pulled = isogeny_pullback(n, &class);
        assert_eq!(combined, pulled);
    }
}
