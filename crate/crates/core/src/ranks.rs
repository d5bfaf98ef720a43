//! Rank and saturated integer basis of NS(X) ⊂ Alt²(Λ,Z) and HTB(X) ⊂
//! Alt³(Λ,Z), the cubic-in-τ cross-check of the latter, and equivalence of
//! gerbe classes.
//!
//! Constraints are assembled as rational matrices (one row per algebra
//! coordinate of each exact equation), cleared to integer matrices, and the
//! integer kernel is computed by unimodular column reduction. Kernels of
//! integer matrices are saturated by construction, and bases come back in
//! Hermite normal form, so output is canonical.

use crate::algebra::{AlgebraElement, ComplexElement};
use crate::forms::{
    self, binomial, for_each_tuple, hodge_integral_2form, ComplexForm, IntegralForm,
};
use crate::linalg;
use crate::rational::Rational;
use crate::torus::{LatticeVector, Torus};
use num_bigint::BigInt;


#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("E is not fixed by the (1,2)+(2,1) projection")]
    NotInALambda,
    #[error("B is not of pure (0,2) type")]
    NotAntiHolomorphic,
    #[error("classes live on tori of different rank")]
    RankMismatch,
}

/// Saturated solution lattice of an exact linear system over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerKernel {
    pub degree: usize,
    pub rank_lattice: usize,
    /// canonical (Hermite-reduced) basis, one vector per row
    pub basis: Vec<Vec<BigInt>>,
}

impl IntegerKernel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn forms(&self) -> Vec<IntegralForm> {
        self.basis
            .iter()
            .map(|v| IntegralForm::new(self.degree, self.rank_lattice, v.clone()).unwrap())
            .collect()
    }

    pub fn contains(&self, form: &IntegralForm) -> bool {
        // saturated lattice: an integer vector lies in it iff it lies in the
        // rational span
        linalg::in_rational_span(&self.basis, form.coeffs())
    }
}

fn kernel_from_rows(rows: Vec<Vec<Rational>>, unknowns: usize, degree: usize, rank_lattice: usize) -> IntegerKernel {
    let int_rows = linalg::clear_denominators(&rows);
    let basis = linalg::integer_kernel(&int_rows, unknowns);
    IntegerKernel { degree, rank_lattice, basis }
}

/// Pushes the algebra coordinates of `value` as one rational row-chunk per
/// coordinate, at column `col` of a row block of width `unknowns`.
struct RowBlock {
    dim: usize,
    unknowns: usize,
    rows: Vec<Vec<Rational>>,
}

impl RowBlock {
    fn new(dim: usize, unknowns: usize) -> Self {
        RowBlock { dim, unknowns, rows: Vec::new() }
    }

    fn start_equation(&mut self) {
        for _ in 0..self.dim {
            self.rows.push(vec![Rational::zero(); self.unknowns]);
        }
    }

    fn add_coefficient(&mut self, col: usize, value: &AlgebraElement) {
        let base = self.rows.len() - self.dim;
        for (k, c) in value.coords().iter().enumerate() {
            if !c.is_zero() {
                self.rows[base + k][col] = self.rows[base + k][col].add_ref(c);
            }
        }
    }
}

/// NS(X): integral alternating 2-forms with E(ix,iy) = E(x,y); the kernel of
/// E ↦ E(J·,J·) − E on all basis pairs.
pub fn ns_group(torus: &Torus) -> IntegerKernel {
    let n = torus.rank();
    let unknowns = binomial(n, 2);
    let mut block = RowBlock::new(torus.spec().dim(), unknowns);
    let jb: Vec<_> = (0..n)
        .map(|i| torus.apply_j_lattice(&LatticeVector::basis(n, i)))
        .collect();
    let spec = torus.spec();
    for_each_tuple(n, 2, |_, pair| {
        block.start_equation();
        let (i, j) = (pair[0], pair[1]);
        for_each_tuple(n, 2, |col, u| {
            let unit = IntegralForm::unit(2, n, u).to_rational_form();
            let mut v = unit.eval_real(spec, &[&jb[i], &jb[j]]);
            let plain = unit.eval_lattice(&[&LatticeVector::basis(n, i), &LatticeVector::basis(n, j)]);
            v = v.sub_ref(&AlgebraElement::from_rational(spec, plain));
            block.add_coefficient(col, &v);
        });
    });
    kernel_from_rows(block.rows, unknowns, 2, n)
}

/// HTB(X) via the J-form constraint: the kernel of
/// E ↦ p^{(1,2)+(2,1)}(E) − E on all basis triples.
pub fn htb_group(torus: &Torus) -> IntegerKernel {
    let n = torus.rank();
    let unknowns = binomial(n, 3);
    let mut block = RowBlock::new(torus.spec().dim(), unknowns);
    let spec = torus.spec();
    let jb: Vec<_> = (0..n)
        .map(|i| torus.apply_j_lattice(&LatticeVector::basis(n, i)))
        .collect();
    let rb: Vec<_> = (0..n)
        .map(|i| torus.lattice_to_real(&LatticeVector::basis(n, i)))
        .collect();
    for_each_tuple(n, 3, |_, t| {
        block.start_equation();
        let (i, j, k) = (t[0], t[1], t[2]);
        for_each_tuple(n, 3, |col, u| {
            let unit = IntegralForm::unit(3, n, u).to_rational_form();
            let proj = unit
                .eval_real(spec, &[&jb[i], &jb[j], &rb[k]])
                .add_ref(&unit.eval_real(spec, &[&rb[i], &jb[j], &jb[k]]))
                .add_ref(&unit.eval_real(spec, &[&jb[i], &rb[j], &jb[k]]));
            let plain = unit.eval_lattice(&[
                &LatticeVector::basis(n, i),
                &LatticeVector::basis(n, j),
                &LatticeVector::basis(n, k),
            ]);
            let v = proj.sub_ref(&AlgebraElement::from_rational(spec, plain));
            block.add_coefficient(col, &v);
        });
    });
    kernel_from_rows(block.rows, unknowns, 3, n)
}

/// HTB(X) via the τ-polynomial constraints: for each s<t<u the contraction of
/// the full antisymmetric coefficient tensor with columns s,t,u of
/// ζ = (1_g; −τ) must vanish. Splits into real/imaginary parts per algebra
/// coordinate and must return the same lattice as [`htb_group`].
pub fn htb_via_tau(torus: &Torus) -> IntegerKernel {
    let g = torus.g();
    let n = torus.rank();
    let spec = torus.spec();
    let unknowns = binomial(n, 3);
    // zeta[p][s]: entry of the 2g×g matrix (1_g on top, −τ below)
    let zeta = |p: usize, s: usize| -> ComplexElement {
        if p < g {
            if p == s {
                ComplexElement::from_rational(spec, Rational::one())
            } else {
                ComplexElement::zero(spec)
            }
        } else {
            torus.tau()[p - g][s].neg_ref()
        }
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let dim = spec.dim();
    for_each_tuple(g, 3, |_, stu| {
        let (s, t, u) = (stu[0], stu[1], stu[2]);
        // 2·dim rational rows per complex equation
        let base = rows.len();
        for _ in 0..2 * dim {
            rows.push(vec![Rational::zero(); unknowns]);
        }
        for_each_tuple(n, 3, |col, triple| {
            // det over the 6 permutations of the triple rows against (s,t,u)
            let mut det = ComplexElement::zero(spec);
            let (a, b, c) = (triple[0], triple[1], triple[2]);
            let m = |p: usize, q: usize| zeta(p, q);
            let t1 = m(a, s).mul_ref(&m(b, t).mul_ref(&m(c, u)).sub_ref(&m(b, u).mul_ref(&m(c, t))));
            let t2 = m(b, s).mul_ref(&m(a, t).mul_ref(&m(c, u)).sub_ref(&m(a, u).mul_ref(&m(c, t))));
            let t3 = m(c, s).mul_ref(&m(a, t).mul_ref(&m(b, u)).sub_ref(&m(a, u).mul_ref(&m(b, t))));
            det = det.add_ref(&t1).sub_ref(&t2).add_ref(&t3);
            for (k2, coord) in det.re.coords().iter().enumerate() {
                if !coord.is_zero() {
                    rows[base + k2][col] = rows[base + k2][col].add_ref(coord);
                }
            }
            for (k2, coord) in det.im.coords().iter().enumerate() {
                if !coord.is_zero() {
                    rows[base + dim + k2][col] = rows[base + dim + k2][col].add_ref(coord);
                }
            }
        });
    });
    kernel_from_rows(rows, unknowns, 3, n)
}

/// Appell–Humbert parameters of a gerbe: an anti-holomorphic 2-form B and an
/// integral 3-form E fixed by the (1,2)+(2,1) projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeClass {
    pub b: ComplexForm,
    pub e: IntegralForm,
}

impl GerbeClass {
    pub fn new(torus: &Torus, b: ComplexForm, e: IntegralForm) -> Result<Self, ClassError> {
        if e.rank != torus.rank() || b.rank != torus.rank() {
            return Err(ClassError::RankMismatch);
        }
        if !forms::in_a_lambda(&e, torus) {
            return Err(ClassError::NotInALambda);
        }
        if !forms::is_anti_holomorphic(&b, torus) {
            return Err(ClassError::NotAntiHolomorphic);
        }
        Ok(GerbeClass { b, e })
    }

    /// (cB, cE); class arithmetic for the isogeny corollaries.
    pub fn scale(&self, c: i64) -> Self {
        GerbeClass { b: self.b.scale_i64(c), e: self.e.scale_i64(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        GerbeClass { b: self.b.add(&other.b), e: self.e.add(&other.e) }
    }
}

/// Two classes are equivalent iff E₁ = E₂ and B₂ − B₁ = μ^H for some
/// integral 2-form μ; existence is decided exactly by Smith normal form.
pub fn classes_equivalent(
    c1: &GerbeClass,
    c2: &GerbeClass,
    torus: &Torus,
) -> Result<bool, ClassError> {
    if c1.e.rank != c2.e.rank || c1.e.rank != torus.rank() {
        return Err(ClassError::RankMismatch);
    }
    if c1.e != c2.e {
        return Ok(false);
    }
    let diff = c2.b.sub(&c1.b);
    let n = torus.rank();
    let dim = torus.spec().dim();
    let unknowns = binomial(n, 2);
    // equations: hodge(μ)(e_i, e_j) = diff(e_i, e_j), split re/im × algebra coords
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let hodge_units: Vec<ComplexForm> = forms::tuples(n, 2)
        .iter()
        .map(|u| hodge_integral_2form(&IntegralForm::unit(2, n, u), torus))
        .collect();
    for_each_tuple(n, 2, |pos, _| {
        let base = rows.len();
        for _ in 0..2 * dim {
            rows.push(vec![Rational::zero(); unknowns]);
        }
        for (col, hu) in hodge_units.iter().enumerate() {
            let v = &hu.coeffs()[pos];
            for (k, c) in v.re.coords().iter().enumerate() {
                rows[base + k][col] = c.clone();
            }
            for (k, c) in v.im.coords().iter().enumerate() {
                rows[base + dim + k][col] = c.clone();
            }
        }
        let d = &diff.coeffs()[pos];
        rhs.extend(d.re.coords().iter().cloned());
        rhs.extend(d.im.coords().iter().cloned());
    });
    // clear denominators rowwise, keeping the rhs aligned
    let mut stacked: Vec<Vec<Rational>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.push(b);
            r
        })
        .collect();
    stacked.retain(|r| r.iter().any(|x| !x.is_zero()));
    if stacked.is_empty() {
        return Ok(true);
    }
    let cleared = linalg::clear_denominators(&stacked);
    let m: Vec<Vec<BigInt>> = cleared.iter().map(|r| r[..unknowns].to_vec()).collect();
    let b: Vec<BigInt> = cleared.iter().map(|r| r[unknowns].clone()).collect();
    Ok(linalg::solve_integer(&m, unknowns, &b).is_some())
}

/// Verifies that every basis vector satisfies the defining constraint of its
/// kernel exactly; used as a post-condition check.
pub fn kernel_satisfies_constraints(torus: &Torus, kernel: &IntegerKernel) -> bool {
    let n = torus.rank();
    let spec = torus.spec();
    match kernel.degree {
        2 => kernel.forms().iter().all(|e| forms::in_ns_kernel(e, torus)),
        3 => kernel.forms().iter().all(|e| forms::in_a_lambda(e, torus)),
        _ => {
            let _ = (n, spec);
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::tests::elliptic_i;

    #[test]
    fn elliptic_curve_groups() {
        let t = elliptic_i();
        let ns = ns_group(&t);
        assert_eq!(ns.rank(), 1);
        let htb = htb_group(&t);
        assert_eq!(htb.rank(), 0);
        let htb2 = htb_via_tau(&t);
        assert_eq!(htb2.basis, htb.basis);
    }

    #[test]
    fn zero_form_is_in_every_kernel() {
        let t = elliptic_i();
        let htb = htb_group(&t);
        assert!(htb.contains(&IntegralForm::zero(3, 2)));
    }

    #[test]
    fn kernels_satisfy_raw_constraints() {
        let t = elliptic_i();
        assert!(kernel_satisfies_constraints(&t, &ns_group(&t)));
        assert!(kernel_satisfies_constraints(&t, &htb_group(&t)));
    }
}
