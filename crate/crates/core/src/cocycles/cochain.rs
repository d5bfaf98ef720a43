//! Exponent-level group cochains and the coboundary with translation action.
//!
//! Values are complexified algebra elements; the actual cocycle values
//! exp(2πi·x) are never materialized. Equality of cocycles is integrality of
//! exponent differences. The group is Λ or Λ × Alt²(Λ,Z); the point is v ∈ V,
//! optionally paired with an anti-holomorphic 2-form B, and the translation
//! action is (λ,μ)·(v,B) = (v+λ, B+μ^H).

use crate::algebra::ComplexElement;
use crate::forms::{hodge_integral_2form, ComplexForm, IntegralForm};
use crate::torus::{LatticeVector, RealVector, Torus};

/// Element of Λ or Λ × Alt²(Λ,Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub lam: LatticeVector,
    pub mu: Option<IntegralForm>,
}

impl GroupElement {
    pub fn lattice(lam: LatticeVector) -> Self {
        GroupElement { lam, mu: None }
    }

    pub fn with_form(lam: LatticeVector, mu: IntegralForm) -> Self {
        GroupElement { lam, mu: Some(mu) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mu = match (&self.mu, &other.mu) {
            (None, None) => None,
            (Some(a), Some(b)) => Some(a.add(b)),
            _ => panic!("mixing group elements with and without 2-form part"),
        };
        GroupElement { lam: self.lam.add(&other.lam), mu }
    }
}

/// Point the cochain values are holomorphic functions of.
#[derive(Clone, Debug)]
pub struct BasePoint {
    pub v: RealVector,
    pub b: Option<ComplexForm>,
}

impl BasePoint {
    pub fn plain(v: RealVector) -> Self {
        BasePoint { v, b: None }
    }

    pub fn with_form(v: RealVector, b: ComplexForm) -> Self {
        BasePoint { v, b: Some(b) }
    }

    /// γ·x: translate v by λ and B by μ^H.
    pub fn translate(&self, torus: &Torus, g: &GroupElement) -> BasePoint {
        let v = self.v.add_lattice(&g.lam);
        let b = match (&self.b, &g.mu) {
            (Some(b), Some(mu)) => Some(b.add(&hodge_integral_2form(mu, torus))),
            (Some(b), None) => Some(b.clone()),
            (None, _) => None,
        };
        BasePoint { v, b }
    }
}

type EvalFn<'a> = Box<dyn Fn(&[&GroupElement], &BasePoint) -> ComplexElement + Sync + 'a>;

/// Degree-p cochain at exponent level.
pub struct Cochain<'a> {
    degree: usize,
    eval: EvalFn<'a>,
}

impl<'a> Cochain<'a> {
    pub fn new(
        degree: usize,
        eval: impl Fn(&[&GroupElement], &BasePoint) -> ComplexElement + Sync + 'a,
    ) -> Self {
        Cochain { degree, eval: Box::new(eval) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, gs: &[&GroupElement], x: &BasePoint) -> ComplexElement {
        assert_eq!(gs.len(), self.degree, "cochain arity mismatch");
        (self.eval)(gs, x)
    }

    /// The additive alternating-sum boundary:
    /// (δθ)(γ₁..γ_{p+1})(x) = θ(γ₂..)(γ₁·x) + Σᵢ (−1)ⁱ θ(..γᵢγᵢ₊₁..)(x)
    /// + (−1)^{p+1} θ(γ₁..γ_p)(x). Defined for p ≤ 2.
    pub fn coboundary(&'a self, torus: &'a Torus) -> Cochain<'a> {
        assert!(self.degree <= 2, "coboundary only defined up to degree 2");
        let p = self.degree;
        Cochain::new(p + 1, move |gs: &[&GroupElement], x: &BasePoint| {
            let translated = x.translate(torus, gs[0]);
            let mut acc = (self.eval)(&gs[1..], &translated);
            for i in 0..p {
                let merged = gs[i].add(gs[i + 1]);
                let mut args: Vec<&GroupElement> = Vec::with_capacity(p);
                args.extend_from_slice(&gs[..i]);
                args.push(&merged);
                args.extend_from_slice(&gs[i + 2..]);
                let v = (self.eval)(&args, x);
                acc = if i % 2 == 0 { acc.sub_ref(&v) } else { acc.add_ref(&v) };
            }
            let head = (self.eval)(&gs[..p], x);
            if p % 2 == 0 {
                acc.sub_ref(&head)
            } else {
                acc.add_ref(&head)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;
    use crate::rational::Rational;
    use crate::sample::Sampler;
    use crate::torus::tests::elliptic_i;

    #[test]
    fn degree_conventions() {
        // δ of a degree-0 cochain f(v) is f(v+λ) − f(v)
        let t = elliptic_i();
        let spec = t.spec().clone();
        let f = Cochain::new(0, move |_gs: &[&GroupElement], x: &BasePoint| {
            // first coordinate of v
            ComplexElement::from_real(x.v.0[0].clone())
        });
        let d = f.coboundary(&t);
        let lam = LatticeVector(vec![3, -2]);
        let x = BasePoint::plain(RealVector::from_rationals(
            t.spec(),
            &[Rational::new(1, 2), Rational::new(1, 3)],
        ));
        let got = d.eval(&[&GroupElement::lattice(lam)], &x);
        assert_eq!(
            got,
            ComplexElement::from_real(AlgebraElement::from_i64(&spec, 3))
        );
    }

    #[test]
    fn delta_of_delta_vanishes() {
        let t = elliptic_i();
        let mut s = Sampler::for_torus(&t, 17);
        // a deliberately non-linear degree-1 cochain
        let f = Cochain::new(1, |gs: &[&GroupElement], x: &BasePoint| {
            let a = gs[0].lam.0[0];
            let b = gs[0].lam.0[1];
            let c = (a * a * b + 7 * a - b).pow(2) % 23;
            ComplexElement::from_real(x.v.0[0].scale_i64(c).add_ref(&x.v.0[1].scale_i64(a * b)))
        });
        let d = f.coboundary(&t);
        let dd = d.coboundary(&t);
        for _ in 0..40 {
            let gs = [
                GroupElement::lattice(s.lattice()),
                GroupElement::lattice(s.lattice()),
                GroupElement::lattice(s.lattice()),
            ];
            let refs: Vec<&GroupElement> = gs.iter().collect();
            let x = BasePoint::plain(s.point());
            assert!(dd.eval(&refs, &x).is_zero());
        }
    }
}
