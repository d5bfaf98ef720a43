//! Complex tori presented by a period matrix Π = (τ, 1_g): the real
//! complex-structure matrix J, and lattice / real-vector arithmetic over the
//! coefficient algebra.

use crate::algebra::{AlgebraElement, AlgebraSpec, ComplexElement};
use crate::rational::Rational;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum TorusError {
    #[error("imaginary part of the period matrix is singular over the algebra")]
    SingularImaginaryPart,
    #[error("period matrix must be {g}×{g}, found row of length {got}")]
    TauShape { g: usize, got: usize },
    #[error("complex structure sanity check failed: {0}")]
    BrokenComplexStructure(&'static str),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// Integer lattice point in Z^{2g}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, n: i64) -> Self {
        LatticeVector(self.0.iter().map(|a| a * n).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Point of V ≅ A^{2g}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealVector(pub Vec<AlgebraElement>);

impl RealVector {
    pub fn zero(spec: &Arc<AlgebraSpec>, n: usize) -> Self {
        RealVector(vec![AlgebraElement::zero(spec); n])
    }

    pub fn from_lattice(spec: &Arc<AlgebraSpec>, l: &LatticeVector) -> Self {
        RealVector(l.0.iter().map(|&x| AlgebraElement::from_i64(spec, x)).collect())
    }

    pub fn from_rationals(spec: &Arc<AlgebraSpec>, coords: &[Rational]) -> Self {
        RealVector(
            coords
                .iter()
                .map(|r| AlgebraElement::from_rational(spec, r.clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        RealVector(self.0.iter().zip(&other.0).map(|(a, b)| a.add_ref(b)).collect())
    }

    pub fn add_lattice(&self, l: &LatticeVector) -> Self {
        RealVector(
            self.0
                .iter()
                .zip(&l.0)
                .map(|(a, &x)| {
                    if x == 0 {
                        a.clone()
                    } else {
                        a.add_ref(&AlgebraElement::from_i64(a.spec(), x))
                    }
                })
                .collect(),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        RealVector(self.0.iter().map(|a| a.scale(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The real 2g×2g matrix of multiplication by i, together with the data it
/// was built from.
#[derive(Debug)]
pub struct Torus {
    g: usize,
    spec: Arc<AlgebraSpec>,
    tau: Vec<Vec<ComplexElement>>,
    /// J columns: j_cols[s] = J e_s
    j_cols: Vec<RealVector>,
}

impl Torus {
    /// Builds J from τ by the block formula
    /// `J = [[y⁻¹x, y⁻¹], [−y − xy⁻¹x, −xy⁻¹]]` with `x = Re τ`, `y = Im τ`,
    /// then proves `J² = −I` and `iΠ = ΠJ` exactly.
    pub fn new(
        spec: Arc<AlgebraSpec>,
        tau: Vec<Vec<ComplexElement>>,
    ) -> Result<Self, TorusError> {
        let g = tau.len();
        for row in &tau {
            if row.len() != g {
                return Err(TorusError::TauShape { g, got: row.len() });
            }
        }
        let x: Vec<Vec<AlgebraElement>> =
            tau.iter().map(|r| r.iter().map(|z| z.re.clone()).collect()).collect();
        let y: Vec<Vec<AlgebraElement>> =
            tau.iter().map(|r| r.iter().map(|z| z.im.clone()).collect()).collect();
        let yi = invert_over_algebra(&spec, &y).ok_or(TorusError::SingularImaginaryPart)?;
        let yix = mat_mul(&yi, &x);
        let xyi = mat_mul(&x, &yi);
        let xyix = mat_mul(&x, &yix);

        let n = 2 * g;
        let zero = AlgebraElement::zero(&spec);
        let mut j = vec![vec![zero; n]; n];
        for a in 0..g {
            for b in 0..g {
                j[a][b] = yix[a][b].clone();
                j[a][b + g] = yi[a][b].clone();
                j[a + g][b] = y[a][b].neg_ref().sub_ref(&xyix[a][b]);
                j[a + g][b + g] = xyi[a][b].neg_ref();
            }
        }
        let j_cols: Vec<RealVector> = (0..n)
            .map(|s| RealVector((0..n).map(|t| j[t][s].clone()).collect()))
            .collect();
        let torus = Torus { g, spec, tau, j_cols };
        torus.check_complex_structure()?;
        Ok(torus)
    }

    fn check_complex_structure(&self) -> Result<(), TorusError> {
        let n = 2 * self.g;
        // J² = −I, column by column
        for s in 0..n {
            let jjs = self.apply_j(&self.j_cols[s]);
            for t in 0..n {
                let want = if t == s {
                    AlgebraElement::from_i64(&self.spec, -1)
                } else {
                    AlgebraElement::zero(&self.spec)
                };
                if jjs.0[t] != want {
                    return Err(TorusError::BrokenComplexStructure("J^2 != -I"));
                }
            }
        }
        // iΠ = ΠJ on every basis vector
        for s in 0..n {
            let lhs: Vec<ComplexElement> = (0..self.g)
                .map(|p| self.period_entry(p, s).times_i())
                .collect();
            let je_s = &self.j_cols[s];
            for (p, l) in lhs.iter().enumerate() {
                let mut acc = ComplexElement::zero(&self.spec);
                for t in 0..n {
                    if je_s.0[t].is_zero() {
                        continue;
                    }
                    let term = self
                        .period_entry(p, t)
                        .mul_ref(&ComplexElement::from_real(je_s.0[t].clone()));
                    acc = acc.add_ref(&term);
                }
                if *l != acc {
                    return Err(TorusError::BrokenComplexStructure("i*Pi != Pi*J"));
                }
            }
        }
        Ok(())
    }

    /// Entry Π_{p,s} of the period matrix (τ, 1_g).
    fn period_entry(&self, p: usize, s: usize) -> ComplexElement {
        if s < self.g {
            self.tau[p][s].clone()
        } else if s - self.g == p {
            ComplexElement::from_rational(&self.spec, Rational::one())
        } else {
            ComplexElement::zero(&self.spec)
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rank(&self) -> usize {
        2 * self.g
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn tau(&self) -> &Vec<Vec<ComplexElement>> {
        &self.tau
    }

    pub fn j_entry(&self, t: usize, s: usize) -> &AlgebraElement {
        &self.j_cols[s].0[t]
    }

    /// J·v — multiplication by i on V.
    pub fn apply_j(&self, v: &RealVector) -> RealVector {
        let n = self.rank();
        let mut out = vec![AlgebraElement::zero(&self.spec); n];
        for (s, vs) in v.0.iter().enumerate() {
            if vs.is_zero() {
                continue;
            }
            for t in 0..n {
                let c = &self.j_cols[s].0[t];
                if c.is_zero() {
                    continue;
                }
                out[t] = out[t].add_ref(&c.mul_ref(vs));
            }
        }
        RealVector(out)
    }

    /// J·λ for a lattice point (the slot value "iλ").
    pub fn apply_j_lattice(&self, l: &LatticeVector) -> RealVector {
        let n = self.rank();
        let mut out = vec![AlgebraElement::zero(&self.spec); n];
        for (s, &x) in l.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for t in 0..n {
                let c = &self.j_cols[s].0[t];
                if c.is_zero() {
                    continue;
                }
                out[t] = out[t].add_ref(&c.scale_i64(x));
            }
        }
        RealVector(out)
    }

    pub fn lattice_to_real(&self, l: &LatticeVector) -> RealVector {
        RealVector::from_lattice(&self.spec, l)
    }
}

fn mat_mul(a: &[Vec<AlgebraElement>], b: &[Vec<AlgebraElement>]) -> Vec<Vec<AlgebraElement>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = a[i][0].mul_ref(&b[0][j]);
            for t in 1..k {
                acc = acc.add_ref(&a[i][t].mul_ref(&b[t][j]));
            }
            row.push(acc);
        }
        out.push(row);
    }
    out
}

/// Gauss–Jordan inverse over the algebra; pivots are divided out by
/// `AlgebraElement::inv`, so it succeeds exactly when the elimination only
/// meets invertible pivots (always, for a field).
fn invert_over_algebra(
    spec: &Arc<AlgebraSpec>,
    m: &[Vec<AlgebraElement>],
) -> Option<Vec<Vec<AlgebraElement>>> {
    let n = m.len();
    let mut aug: Vec<Vec<AlgebraElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    AlgebraElement::one(spec)
                } else {
                    AlgebraElement::zero(spec)
                });
            }
            r
        })
        .collect();
    for c in 0..n {
        let mut pivot = None;
        for r in c..n {
            if let Ok(inv) = aug[r][c].inv() {
                pivot = Some((r, inv));
                break;
            }
        }
        let (r, inv) = pivot?;
        aug.swap(c, r);
        for j in 0..2 * n {
            aug[c][j] = aug[c][j].mul_ref(&inv);
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * n {
                    let t = aug[c][j].mul_ref(&f);
                    aug[i][j] = aug[i][j].sub_ref(&t);
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn elliptic_i() -> Torus {
        let spec = AlgebraSpec::rationals();
        let tau = vec![vec![ComplexElement::new(
            AlgebraElement::zero(&spec),
            AlgebraElement::one(&spec),
        )]];
        Torus::new(spec, tau).unwrap()
    }

    #[test]
    fn elliptic_curve_structure() {
        // τ = i gives J = [[0,1],[−1,0]]
        let t = elliptic_i();
        let spec = t.spec().clone();
        let q = |n: i64| AlgebraElement::from_i64(&spec, n);
        assert_eq!(*t.j_entry(0, 0), q(0));
        assert_eq!(*t.j_entry(0, 1), q(1));
        assert_eq!(*t.j_entry(1, 0), q(-1));
        assert_eq!(*t.j_entry(1, 1), q(0));
        // J e0 = −e1
        let je0 = t.apply_j_lattice(&LatticeVector::basis(2, 0));
        assert_eq!(je0.0, vec![q(0), q(-1)]);
    }

    #[test]
    fn diagonal_imaginary_tau_block_form() {
        // τ = diag(iα, iβ, iγ) over Q(√2,√3): x = 0, y = diag(α,β,γ), so
        // J = [[0, y⁻¹], [−y, 0]] entrywise.
        let spec = crate::specfile::tests::algebra_q23();
        let zero = AlgebraElement::zero(&spec);
        let alpha = AlgebraElement::one(&spec);
        let beta = AlgebraElement::basis(&spec, 1);
        let gamma = AlgebraElement::basis(&spec, 2);
        let diag = [alpha.clone(), beta.clone(), gamma.clone()];
        let tau: Vec<Vec<ComplexElement>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        if i == j {
                            ComplexElement::new(zero.clone(), diag[i].clone())
                        } else {
                            ComplexElement::zero(&spec)
                        }
                    })
                    .collect()
            })
            .collect();
        let t = Torus::new(spec.clone(), tau).unwrap();
        for (i, d) in diag.iter().enumerate() {
            let dinv = d.inv().unwrap();
            for j in 0..3 {
                let want_ul = AlgebraElement::zero(&spec);
                assert_eq!(*t.j_entry(i, j), want_ul);
                let want_ur = if i == j { dinv.clone() } else { AlgebraElement::zero(&spec) };
                assert_eq!(*t.j_entry(i, j + 3), want_ur);
                let want_ll = if i == j { d.neg_ref() } else { AlgebraElement::zero(&spec) };
                assert_eq!(*t.j_entry(i + 3, j), want_ll);
                assert_eq!(*t.j_entry(i + 3, j + 3), AlgebraElement::zero(&spec));
            }
        }
    }

    #[test]
    fn singular_imaginary_part_rejected() {
        let spec = AlgebraSpec::rationals();
        let zero = || ComplexElement::zero(&spec);
        let tau = vec![vec![zero()]];
        assert!(matches!(
            Torus::new(spec.clone(), tau),
            Err(TorusError::SingularImaginaryPart)
        ));
    }

    #[test]
    fn j_applied_twice_negates() {
        let t = elliptic_i();
        let v = RealVector::from_rationals(
            t.spec(),
            &[Rational::new(3, 7), Rational::new(-1, 2)],
        );
        let jjv = t.apply_j(&t.apply_j(&v));
        let neg: Vec<_> = v.0.iter().map(|a| a.neg_ref()).collect();
        assert_eq!(jjv.0, neg);
        let zero = RealVector::zero(t.spec(), 2);
        assert_eq!(t.apply_j(&zero), zero);
    }
}
