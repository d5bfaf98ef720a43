//! Alternating p-forms on the lattice Z^{2g} (p ≤ 3) with integer, rational,
//! or complexified-algebra coefficients, stored on strictly increasing index
//! tuples; plus the basis-dependent section σ of skew-symmetrization, the
//! semi-character, and the Hodge projections.

use crate::algebra::{AlgebraElement, AlgebraSpec, ComplexElement};
use crate::rational::Rational;
use crate::torus::{LatticeVector, RealVector, Torus};
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormError {
    #[error("form of degree {degree} evaluated on {got} vectors")]
    Arity { degree: usize, got: usize },
    #[error("coefficient vector has length {got}, expected {want}")]
    CoefficientCount { got: usize, want: usize },
    #[error("unsupported degree {0} (only 1, 2, 3)")]
    Degree(usize),
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Visits the strictly increasing `degree`-tuples of `0..rank` in
/// lexicographic order as `(position, tuple)`.
pub fn for_each_tuple(rank: usize, degree: usize, mut f: impl FnMut(usize, &[usize])) {
    let mut t: Vec<usize> = (0..degree).collect();
    let mut pos = 0;
    if degree > rank {
        return;
    }
    loop {
        f(pos, &t);
        pos += 1;
        // advance to the next combination
        let mut i = degree;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if t[i] != i + rank - degree {
                break;
            }
            if i == 0 {
                return;
            }
        }
        t[i] += 1;
        for j in i + 1..degree {
            t[j] = t[j - 1] + 1;
        }
    }
}

pub fn tuples(rank: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(rank, degree));
    for_each_tuple(rank, degree, |_, t| out.push(t.to_vec()));
    out
}

/// Position of a sorted tuple in the lexicographic enumeration.
pub fn tuple_position(rank: usize, tuple: &[usize]) -> usize {
    let degree = tuple.len();
    let mut pos = 0;
    let mut prev: i64 = -1;
    for (slot, &ti) in tuple.iter().enumerate() {
        for x in (prev + 1) as usize..ti {
            pos += binomial(rank - x - 1, degree - slot - 1);
        }
        prev = ti as i64;
    }
    pos
}

fn perms(p: usize) -> &'static [(&'static [usize], i64)] {
    match p {
        1 => &[(&[0], 1)],
        2 => &[(&[0, 1], 1), (&[1, 0], -1)],
        3 => &[
            (&[0, 1, 2], 1),
            (&[1, 0, 2], -1),
            (&[0, 2, 1], -1),
            (&[2, 0, 1], 1),
            (&[1, 2, 0], 1),
            (&[2, 1, 0], -1),
        ],
        _ => panic!("degree {p} out of range"),
    }
}

fn lattice_minor(vecs: &[&LatticeVector], tuple: &[usize]) -> i128 {
    match tuple.len() {
        1 => vecs[0].0[tuple[0]] as i128,
        2 => {
            let (i, j) = (tuple[0], tuple[1]);
            let (a, b) = (&vecs[0].0, &vecs[1].0);
            (a[i] as i128) * (b[j] as i128) - (a[j] as i128) * (b[i] as i128)
        }
        3 => {
            let (i, j, k) = (tuple[0], tuple[1], tuple[2]);
            let a = &vecs[0].0;
            let b = &vecs[1].0;
            let c = &vecs[2].0;
            let m = |x: &Vec<i64>, t: usize| x[t] as i128;
            m(a, i) * (m(b, j) * m(c, k) - m(b, k) * m(c, j))
                - m(a, j) * (m(b, i) * m(c, k) - m(b, k) * m(c, i))
                + m(a, k) * (m(b, i) * m(c, j) - m(b, j) * m(c, i))
        }
        d => panic!("degree {d} out of range"),
    }
}

fn real_minor(spec: &Arc<AlgebraSpec>, vecs: &[&RealVector], tuple: &[usize]) -> AlgebraElement {
    match tuple.len() {
        1 => vecs[0].0[tuple[0]].clone(),
        2 => {
            let (i, j) = (tuple[0], tuple[1]);
            let (a, b) = (&vecs[0].0, &vecs[1].0);
            a[i].mul_ref(&b[j]).sub_ref(&a[j].mul_ref(&b[i]))
        }
        3 => {
            let (i, j, k) = (tuple[0], tuple[1], tuple[2]);
            let a = &vecs[0].0;
            let b = &vecs[1].0;
            let c = &vecs[2].0;
            let mut acc = AlgebraElement::zero(spec);
            if !a[i].is_zero() {
                let m = b[j].mul_ref(&c[k]).sub_ref(&b[k].mul_ref(&c[j]));
                acc = acc.add_ref(&a[i].mul_ref(&m));
            }
            if !a[j].is_zero() {
                let m = b[i].mul_ref(&c[k]).sub_ref(&b[k].mul_ref(&c[i]));
                acc = acc.sub_ref(&a[j].mul_ref(&m));
            }
            if !a[k].is_zero() {
                let m = b[i].mul_ref(&c[j]).sub_ref(&b[j].mul_ref(&c[i]));
                acc = acc.add_ref(&a[k].mul_ref(&m));
            }
            acc
        }
        d => panic!("degree {d} out of range"),
    }
}

macro_rules! check_arity {
    ($self:expr, $vecs:expr) => {
        assert_eq!(
            $vecs.len(),
            $self.degree,
            "form of degree {} evaluated on {} vectors",
            $self.degree,
            $vecs.len()
        );
    };
}

/// Integral alternating form: coefficients in Z on sorted tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralForm {
    pub degree: usize,
    pub rank: usize,
    coeffs: Vec<BigInt>,
}

impl IntegralForm {
    pub fn new(degree: usize, rank: usize, coeffs: Vec<BigInt>) -> Result<Self, FormError> {
        if !(1..=3).contains(&degree) {
            return Err(FormError::Degree(degree));
        }
        let want = binomial(rank, degree);
        if coeffs.len() != want {
            return Err(FormError::CoefficientCount { got: coeffs.len(), want });
        }
        Ok(IntegralForm { degree, rank, coeffs })
    }

    pub fn zero(degree: usize, rank: usize) -> Self {
        IntegralForm { degree, rank, coeffs: vec![BigInt::zero(); binomial(rank, degree)] }
    }

    /// The form with coefficient 1 on one sorted tuple (e.g. e0*∧e1*).
    pub fn unit(degree: usize, rank: usize, tuple: &[usize]) -> Self {
        let mut f = Self::zero(degree, rank);
        f.coeffs[tuple_position(rank, tuple)] = BigInt::from(1);
        f
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, tuple: &[usize]) -> &BigInt {
        &self.coeffs[tuple_position(self.rank, tuple)]
    }

    pub fn set_coeff(&mut self, tuple: &[usize], v: BigInt) {
        self.coeffs[tuple_position(self.rank, tuple)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval_lattice(&self, vecs: &[&LatticeVector]) -> BigInt {
        check_arity!(self, vecs);
        let mut acc = BigInt::zero();
        for_each_tuple(self.rank, self.degree, |pos, t| {
            let c = &self.coeffs[pos];
            if !c.is_zero() {
                let m = lattice_minor(vecs, t);
                if m != 0 {
                    acc += c * BigInt::from(m);
                }
            }
        });
        acc
    }

    pub fn to_rational_form(&self) -> RationalForm {
        RationalForm {
            degree: self.degree,
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|c| Rational::from_bigint(c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.degree, self.rank), (other.degree, other.rank));
        IntegralForm {
            degree: self.degree,
            rank: self.rank,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale_i64(-1)
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        IntegralForm {
            degree: self.degree,
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|c| c * BigInt::from(n)).collect(),
        }
    }
}

/// Rational alternating form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub degree: usize,
    pub rank: usize,
    coeffs: Vec<Rational>,
}

impl RationalForm {
    pub fn new(degree: usize, rank: usize, coeffs: Vec<Rational>) -> Result<Self, FormError> {
        if !(1..=3).contains(&degree) {
            return Err(FormError::Degree(degree));
        }
        let want = binomial(rank, degree);
        if coeffs.len() != want {
            return Err(FormError::CoefficientCount { got: coeffs.len(), want });
        }
        Ok(RationalForm { degree, rank, coeffs })
    }

    pub fn zero(degree: usize, rank: usize) -> Self {
        RationalForm { degree, rank, coeffs: vec![Rational::zero(); binomial(rank, degree)] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, tuple: &[usize]) -> &Rational {
        &self.coeffs[tuple_position(self.rank, tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn eval_lattice(&self, vecs: &[&LatticeVector]) -> Rational {
        check_arity!(self, vecs);
        let mut acc = Rational::zero();
        for_each_tuple(self.rank, self.degree, |pos, t| {
            let c = &self.coeffs[pos];
            if !c.is_zero() {
                let m = lattice_minor(vecs, t);
                if m != 0 {
                    acc = acc.add_ref(&c.mul_ref(&Rational::from_i128(m)));
                }
            }
        });
        acc
    }

    /// Multilinear extension to V: slots may carry algebra coordinates.
    pub fn eval_real(&self, spec: &Arc<AlgebraSpec>, vecs: &[&RealVector]) -> AlgebraElement {
        check_arity!(self, vecs);
        let mut acc = AlgebraElement::zero(spec);
        for_each_tuple(self.rank, self.degree, |pos, t| {
            let c = &self.coeffs[pos];
            if !c.is_zero() {
                let m = real_minor(spec, vecs, t);
                if !m.is_zero() {
                    acc = acc.add_ref(&m.scale(c));
                }
            }
        });
        acc
    }
}

/// Alternating form with complexified-algebra coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexForm {
    pub degree: usize,
    pub rank: usize,
    spec: Arc<AlgebraSpec>,
    coeffs: Vec<ComplexElement>,
}

impl ComplexForm {
    pub fn new(
        degree: usize,
        rank: usize,
        spec: Arc<AlgebraSpec>,
        coeffs: Vec<ComplexElement>,
    ) -> Result<Self, FormError> {
        if !(1..=3).contains(&degree) {
            return Err(FormError::Degree(degree));
        }
        let want = binomial(rank, degree);
        if coeffs.len() != want {
            return Err(FormError::CoefficientCount { got: coeffs.len(), want });
        }
        Ok(ComplexForm { degree, rank, spec, coeffs })
    }

    pub fn zero(degree: usize, rank: usize, spec: &Arc<AlgebraSpec>) -> Self {
        ComplexForm {
            degree,
            rank,
            spec: Arc::clone(spec),
            coeffs: vec![ComplexElement::zero(spec); binomial(rank, degree)],
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[ComplexElement] {
        &self.coeffs
    }

    pub fn coeff(&self, tuple: &[usize]) -> &ComplexElement {
        &self.coeffs[tuple_position(self.rank, tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ComplexElement::is_zero)
    }

    pub fn eval_lattice(&self, vecs: &[&LatticeVector]) -> ComplexElement {
        check_arity!(self, vecs);
        let mut acc = ComplexElement::zero(&self.spec);
        for_each_tuple(self.rank, self.degree, |pos, t| {
            let c = &self.coeffs[pos];
            if !c.is_zero() {
                let m = lattice_minor(vecs, t);
                if m != 0 {
                    acc = acc.add_ref(&c.scale(&Rational::from_i128(m)));
                }
            }
        });
        acc
    }

    pub fn eval_real(&self, vecs: &[&RealVector]) -> ComplexElement {
        check_arity!(self, vecs);
        let mut acc = ComplexElement::zero(&self.spec);
        for_each_tuple(self.rank, self.degree, |pos, t| {
            let c = &self.coeffs[pos];
            if !c.is_zero() {
                let m = real_minor(&self.spec, vecs, t);
                if !m.is_zero() {
                    acc = acc.add_ref(&c.mul_ref(&ComplexElement::from_real(m)));
                }
            }
        });
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.degree, self.rank), (other.degree, other.rank));
        ComplexForm {
            degree: self.degree,
            rank: self.rank,
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ComplexForm {
            degree: self.degree,
            rank: self.rank,
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(ComplexElement::neg_ref).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        ComplexForm {
            degree: self.degree,
            rank: self.rank,
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale_rational(&Rational::from_i64(n))
    }

    pub fn conj(&self) -> Self {
        ComplexForm {
            degree: self.degree,
            rank: self.rank,
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(ComplexElement::conj).collect(),
        }
    }
}

/// σ(μ)(λ₁, λ₂) = Σ_{i<j} μ(e_i, e_j)·λ₁[i]·λ₂[j] — the basis-dependent
/// integral 2-cocycle splitting skew-symmetrization.
pub fn sigma_eval(mu: &IntegralForm, l1: &LatticeVector, l2: &LatticeVector) -> BigInt {
    assert_eq!(mu.degree, 2);
    let mut acc = BigInt::zero();
    for_each_tuple(mu.rank, 2, |pos, t| {
        let c = &mu.coeffs[pos];
        if !c.is_zero() {
            let m = (l1.0[t[0]] as i128) * (l2.0[t[1]] as i128);
            if m != 0 {
                acc += c * BigInt::from(m);
            }
        }
    });
    acc
}

/// ϑ(λ) = ½·σ(E)(λ, λ); always a half-integer.
pub fn semicharacter(e: &IntegralForm, lam: &LatticeVector) -> Rational {
    let s = sigma_eval(e, lam, lam);
    Rational::from_bigint(s).mul_ref(&Rational::new(1, 2))
}

/// Signed sum over permutations of the arguments.
pub fn skew_eval<T, F>(f: F, args: &[&LatticeVector], zero: T) -> T
where
    T: Clone,
    F: Fn(&[&LatticeVector]) -> T,
    T: SkewAccumulate,
{
    let p = args.len();
    let mut acc = zero;
    for (perm, sign) in perms(p) {
        let permuted: Vec<&LatticeVector> = perm.iter().map(|&i| args[i]).collect();
        acc = acc.accumulate(&f(&permuted), *sign);
    }
    acc
}

pub trait SkewAccumulate: Sized {
    fn accumulate(self, v: &Self, sign: i64) -> Self;
}
impl SkewAccumulate for Rational {
    fn accumulate(self, v: &Self, sign: i64) -> Self {
        if sign > 0 {
            self.add_ref(v)
        } else {
            self.sub_ref(v)
        }
    }
}
impl SkewAccumulate for BigInt {
    fn accumulate(self, v: &Self, sign: i64) -> Self {
        if sign > 0 {
            self + v
        } else {
            self - v
        }
    }
}
impl SkewAccumulate for ComplexElement {
    fn accumulate(self, v: &Self, sign: i64) -> Self {
        if sign > 0 {
            self.add_ref(v)
        } else {
            self.sub_ref(v)
        }
    }
}
impl SkewAccumulate for AlgebraElement {
    fn accumulate(self, v: &Self, sign: i64) -> Self {
        if sign > 0 {
            self.add_ref(v)
        } else {
            self.sub_ref(v)
        }
    }
}

/// Materializes s(f) on sorted basis tuples.
pub fn skew_symmetrize<F>(f: F, degree: usize, rank: usize) -> RationalForm
where
    F: Fn(&[&LatticeVector]) -> Rational,
{
    let mut coeffs = Vec::with_capacity(binomial(rank, degree));
    let basis: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::basis(rank, i)).collect();
    for_each_tuple(rank, degree, |_, t| {
        let args: Vec<&LatticeVector> = t.iter().map(|&i| &basis[i]).collect();
        coeffs.push(skew_eval(&f, &args, Rational::zero()));
    });
    RationalForm { degree, rank, coeffs }
}

/// Group-cohomology coboundary with trivial coefficients (no translation):
/// (δg)(γ₀..γ_p) = g(γ₁..) + Σ (−1)^{i+1} g(..γ_i+γ_{i+1}..) + (−1)^{p+1} g(..γ_{p−1}).
pub fn plain_coboundary<F>(g: F, args: &[&LatticeVector]) -> Rational
where
    F: Fn(&[&LatticeVector]) -> Rational,
{
    let p1 = args.len();
    let mut acc = g(&args[1..].iter().copied().collect::<Vec<_>>());
    for i in 0..p1 - 1 {
        let mut seq: Vec<LatticeVector> = Vec::with_capacity(p1 - 1);
        for (j, a) in args.iter().enumerate() {
            if j == i {
                seq.push(a.add(args[i + 1]));
            } else if j != i + 1 {
                seq.push((*a).clone());
            }
        }
        let refs: Vec<&LatticeVector> = seq.iter().collect();
        let v = g(&refs);
        acc = if i % 2 == 0 { acc.sub_ref(&v) } else { acc.add_ref(&v) };
    }
    let tail = g(&args[..p1 - 1].iter().copied().collect::<Vec<_>>());
    if p1 % 2 == 0 {
        acc.add_ref(&tail)
    } else {
        acc.sub_ref(&tail)
    }
}

/// Hodge projection of a 1-form: λ ↦ (c(λ) + i·c(iλ))/2, stored on the basis.
pub fn hodge_1form(c: &RationalForm, torus: &Torus) -> ComplexForm {
    assert_eq!(c.degree, 1);
    let spec = torus.spec();
    let n = torus.rank();
    let half = Rational::new(1, 2);
    let coeffs = (0..n)
        .map(|s| {
            let e_s = LatticeVector::basis(n, s);
            let je_s = torus.apply_j_lattice(&e_s);
            let re = AlgebraElement::from_rational(spec, c.eval_lattice(&[&e_s]).mul_ref(&half));
            let im = c.eval_real(spec, &[&je_s]).scale(&half);
            ComplexElement::new(re, im)
        })
        .collect();
    ComplexForm { degree: 1, rank: n, spec: Arc::clone(spec), coeffs }
}

/// Hodge projection of a 2-form onto its (0,2) part:
/// ω^H(v₁,v₂) = ¼(ω(v₁,v₂) − ω(iv₁,iv₂) + iω(iv₁,v₂) + iω(v₁,iv₂)).
pub fn hodge_2form(w: &RationalForm, torus: &Torus) -> ComplexForm {
    assert_eq!(w.degree, 2);
    let spec = torus.spec();
    let n = torus.rank();
    let quarter = Rational::new(1, 4);
    let mut coeffs = Vec::with_capacity(binomial(n, 2));
    for_each_tuple(n, 2, |_, t| {
        let ei = LatticeVector::basis(n, t[0]);
        let ej = LatticeVector::basis(n, t[1]);
        let jei = torus.apply_j_lattice(&ei);
        let jej = torus.apply_j_lattice(&ej);
        let rei = torus.lattice_to_real(&ei);
        let rej = torus.lattice_to_real(&ej);
        let plain = AlgebraElement::from_rational(spec, w.eval_lattice(&[&ei, &ej]));
        let re = plain.sub_ref(&w.eval_real(spec, &[&jei, &jej])).scale(&quarter);
        let im = w
            .eval_real(spec, &[&jei, &rej])
            .add_ref(&w.eval_real(spec, &[&rei, &jej]))
            .scale(&quarter);
        coeffs.push(ComplexElement::new(re, im));
    });
    ComplexForm { degree: 2, rank: n, spec: Arc::clone(spec), coeffs }
}

/// μ^H for an integral 2-form.
pub fn hodge_integral_2form(mu: &IntegralForm, torus: &Torus) -> ComplexForm {
    hodge_2form(&mu.to_rational_form(), torus)
}

/// The invariant (1,1) part of an integral 2-form, as a real-coefficient
/// complex form: ½(μ(x,y) + μ(ix,iy)).
pub fn one_one_form(mu: &IntegralForm, torus: &Torus) -> ComplexForm {
    assert_eq!(mu.degree, 2);
    let spec = torus.spec();
    let n = torus.rank();
    let half = Rational::new(1, 2);
    let murat = mu.to_rational_form();
    let mut coeffs = Vec::with_capacity(binomial(n, 2));
    for_each_tuple(n, 2, |_, t| {
        let ei = LatticeVector::basis(n, t[0]);
        let ej = LatticeVector::basis(n, t[1]);
        let jei = torus.apply_j_lattice(&ei);
        let jej = torus.apply_j_lattice(&ej);
        let plain = AlgebraElement::from_rational(spec, murat.eval_lattice(&[&ei, &ej]));
        let re = plain.add_ref(&murat.eval_real(spec, &[&jei, &jej])).scale(&half);
        coeffs.push(ComplexElement::from_real(re));
    });
    ComplexForm { degree: 2, rank: n, spec: Arc::clone(spec), coeffs }
}

/// (p^{(1,2)+(2,1)} E)(x,y,z) = E(ix,iy,z) + E(x,iy,iz) + E(ix,y,iz).
pub fn p12_21_eval(
    e: &RationalForm,
    torus: &Torus,
    x: &RealVector,
    y: &RealVector,
    z: &RealVector,
) -> AlgebraElement {
    let spec = torus.spec();
    let (jx, jy, jz) = (torus.apply_j(x), torus.apply_j(y), torus.apply_j(z));
    e.eval_real(spec, &[&jx, &jy, z])
        .add_ref(&e.eval_real(spec, &[x, &jy, &jz]))
        .add_ref(&e.eval_real(spec, &[&jx, y, &jz]))
}

/// Membership of an integral 2-form in the Néron–Severi condition
/// E(ix,iy) = E(x,y), checked on basis pairs.
pub fn in_ns_kernel(e: &IntegralForm, torus: &Torus) -> bool {
    assert_eq!(e.degree, 2);
    let n = torus.rank();
    let spec = torus.spec();
    let erat = e.to_rational_form();
    let mut ok = true;
    for_each_tuple(n, 2, |_, t| {
        if !ok {
            return;
        }
        let ei = LatticeVector::basis(n, t[0]);
        let ej = LatticeVector::basis(n, t[1]);
        let jei = torus.apply_j_lattice(&ei);
        let jej = torus.apply_j_lattice(&ej);
        let lhs = erat.eval_real(spec, &[&jei, &jej]);
        let rhs = AlgebraElement::from_rational(spec, erat.eval_lattice(&[&ei, &ej]));
        ok = lhs == rhs;
    });
    ok
}

/// Membership of an integral 3-form in A(Λ): fixed by the (1,2)+(2,1)
/// projection, checked on basis triples.
pub fn in_a_lambda(e: &IntegralForm, torus: &Torus) -> bool {
    assert_eq!(e.degree, 3);
    let n = torus.rank();
    let spec = torus.spec();
    let erat = e.to_rational_form();
    let mut ok = true;
    for_each_tuple(n, 3, |_, t| {
        if !ok {
            return;
        }
        let b: Vec<RealVector> = t
            .iter()
            .map(|&i| torus.lattice_to_real(&LatticeVector::basis(n, i)))
            .collect();
        let proj = p12_21_eval(&erat, torus, &b[0], &b[1], &b[2]);
        let lv: Vec<LatticeVector> = t.iter().map(|&i| LatticeVector::basis(n, i)).collect();
        let plain = AlgebraElement::from_rational(
            spec,
            erat.eval_lattice(&[&lv[0], &lv[1], &lv[2]]),
        );
        ok = proj == plain;
    });
    ok
}

/// Is B of pure (0,2) type: B(iv₁, v₂) = −i·B(v₁, v₂)?
pub fn is_anti_holomorphic(b: &ComplexForm, torus: &Torus) -> bool {
    assert_eq!(b.degree, 2);
    let n = torus.rank();
    let mut ok = true;
    for_each_tuple(n, 2, |_, t| {
        if !ok {
            return;
        }
        let ei = LatticeVector::basis(n, t[0]);
        let ej = LatticeVector::basis(n, t[1]);
        let jei = torus.apply_j_lattice(&ei);
        let rej = torus.lattice_to_real(&ej);
        let lhs = b.eval_real(&[&jei, &rej]);
        let rhs = b.eval_lattice(&[&ei, &ej]).times_i().neg_ref();
        ok = lhs == rhs;
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::tests::elliptic_i;

    #[test]
    fn tuple_enumeration_round_trips() {
        for (rank, degree) in [(6, 3), (6, 2), (4, 3), (2, 1), (10, 3)] {
            let all = tuples(rank, degree);
            assert_eq!(all.len(), binomial(rank, degree));
            for (i, t) in all.iter().enumerate() {
                assert_eq!(tuple_position(rank, t), i);
            }
        }
    }

    #[test]
    fn eval_is_alternating_and_multilinear() {
        // E = e0*∧e1*∧e2* on Z^6
        let e = IntegralForm::unit(3, 6, &[0, 1, 2]);
        let b = |i| LatticeVector::basis(6, i);
        assert_eq!(e.eval_lattice(&[&b(0), &b(1), &b(2)]), BigInt::from(1));
        assert_eq!(e.eval_lattice(&[&b(1), &b(0), &b(2)]), BigInt::from(-1));
        let sum = b(0).add(&b(1));
        assert_eq!(e.eval_lattice(&[&sum, &b(1), &b(2)]), BigInt::from(1));
    }

    #[test]
    fn sigma_section_values() {
        let mu = IntegralForm::unit(2, 6, &[0, 1]);
        let b = |i| LatticeVector::basis(6, i);
        assert_eq!(sigma_eval(&mu, &b(0), &b(1)), BigInt::from(1));
        assert_eq!(sigma_eval(&mu, &b(1), &b(0)), BigInt::from(0));
        let zero = IntegralForm::zero(2, 6);
        assert_eq!(sigma_eval(&zero, &b(0), &b(1)), BigInt::from(0));
    }

    #[test]
    fn semicharacter_values() {
        let e = IntegralForm::unit(2, 6, &[0, 1]);
        for i in 0..6 {
            assert_eq!(semicharacter(&e, &LatticeVector::basis(6, i)), Rational::zero());
        }
        let lam = LatticeVector::basis(6, 0).add(&LatticeVector::basis(6, 1));
        assert_eq!(semicharacter(&e, &lam), Rational::new(1, 2));
    }

    #[test]
    fn skew_recovers_alternating_times_factorial() {
        let e = IntegralForm::unit(2, 4, &[0, 1]);
        let erat = e.to_rational_form();
        let s = skew_symmetrize(|args| erat.eval_lattice(args), 2, 4);
        for_each_tuple(4, 2, |pos, t| {
            let want = erat.coeffs()[pos].scale_i64(2); // p! = 2
            assert_eq!(*s.coeff(t), want);
        });
    }

    #[test]
    fn hodge_1form_elliptic_example() {
        // g=1, τ=i, c = e0*: value (c(λ)+i c(iλ))/2 is 1/2 at e0 and i/2 at e1
        let t = elliptic_i();
        let c = RationalForm::new(1, 2, vec![Rational::one(), Rational::zero()]).unwrap();
        let h = hodge_1form(&c, &t);
        let spec = t.spec();
        let at_e0 = h.eval_lattice(&[&LatticeVector::basis(2, 0)]);
        assert_eq!(at_e0, ComplexElement::from_rational(spec, Rational::new(1, 2)));
        let at_e1 = h.eval_lattice(&[&LatticeVector::basis(2, 1)]);
        assert_eq!(
            at_e1,
            ComplexElement::new(
                AlgebraElement::zero(spec),
                AlgebraElement::from_rational(spec, Rational::new(1, 2))
            )
        );
        // anti-linearity: value at Jv = −i · value at v
        let v = RealVector::from_rationals(spec, &[Rational::new(2, 3), Rational::new(-1, 5)]);
        let jv = t.apply_j(&v);
        assert_eq!(h.eval_real(&[&jv]), h.eval_real(&[&v]).times_i().neg_ref());
        let zero = RationalForm::zero(1, 2);
        assert!(hodge_1form(&zero, &t).is_zero());
    }

    #[test]
    fn hodge_2form_kills_invariant_forms_and_is_antiholomorphic() {
        let t = elliptic_i();
        // on the elliptic curve every 2-form is (1,1): E(ix,iy) = det(J)E = E
        let w = RationalForm::new(2, 2, vec![Rational::new(3, 7)]).unwrap();
        let h = hodge_2form(&w, &t);
        assert!(h.is_zero());
        assert!(is_anti_holomorphic(&h, &t));
    }
}
