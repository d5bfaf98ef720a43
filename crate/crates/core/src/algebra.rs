//! A user-declared finite-dimensional commutative Q-algebra, given
//! extensionally by a multiplication table on a chosen basis, together with
//! its elements and their complexifications.
//!
//! The first basis element is required to be the multiplicative unit, which
//! makes integrality of an element a plain coordinate test. The optional
//! real embedding is display-only and never enters any exact computation.

use crate::rational::Rational;
use num_bigint::BigInt;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra must have positive dimension")]
    EmptyBasis,
    #[error("first basis label must be \"1\" (the unit), found `{0}`")]
    UnitNotFirst(String),
    #[error("multiplication table has wrong shape at ({0},{1})")]
    TableShape(usize, usize),
    #[error("unit law fails: 1·{0} ≠ {0}")]
    UnitLaw(String),
    #[error("multiplication table is not commutative at ({0},{1})")]
    NotCommutative(String, String),
    #[error("multiplication table is not associative at ({0},{1},{2})")]
    NotAssociative(String, String, String),
    #[error("real embedding has wrong length")]
    EmbeddingLength,
    #[error("elements belong to different algebras")]
    SpecMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("coordinate vector has length {got}, algebra dimension is {want}")]
    CoordinateLength { got: usize, want: usize },
}

/// Table-defined commutative Q-algebra.
#[derive(Debug)]
pub struct AlgebraSpec {
    dim: usize,
    basis_names: Vec<String>,
    /// mult[i][j]: sparse coordinates of basis_i · basis_j
    mult: Vec<Vec<Vec<(usize, Rational)>>>,
    /// dense copy, kept for serialization round-trips
    table_dense: Vec<Vec<Vec<Rational>>>,
    real_embedding: Option<Vec<f64>>,
    embedding_text: Option<Vec<String>>,
}

impl AlgebraSpec {
    /// Validates the table (unit law, commutativity, associativity on all
    /// basis triples) and builds the spec.
    pub fn new(
        basis_names: Vec<String>,
        table: Vec<Vec<Vec<Rational>>>,
        embedding_text: Option<Vec<String>>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let d = basis_names.len();
        if d == 0 {
            return Err(AlgebraError::EmptyBasis);
        }
        if basis_names[0] != "1" {
            return Err(AlgebraError::UnitNotFirst(basis_names[0].clone()));
        }
        if table.len() != d {
            return Err(AlgebraError::TableShape(table.len(), 0));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != d {
                return Err(AlgebraError::TableShape(i, row.len()));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != d {
                    return Err(AlgebraError::TableShape(i, j));
                }
            }
        }
        let real_embedding = match &embedding_text {
            None => None,
            Some(v) => {
                if v.len() != d {
                    return Err(AlgebraError::EmbeddingLength);
                }
                Some(
                    v.iter()
                        .map(|s| s.parse::<f64>().unwrap_or(f64::NAN))
                        .collect(),
                )
            }
        };
        let mult: Vec<Vec<Vec<(usize, Rational)>>> = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        entry
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(t, c)| (t, c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let spec = Arc::new(AlgebraSpec {
            dim: d,
            basis_names,
            mult,
            table_dense: table,
            real_embedding,
            embedding_text,
        });

        for j in 0..d {
            let prod = spec.mul_basis(0, j);
            let want = AlgebraElement::basis(&spec, j);
            if prod != want {
                return Err(AlgebraError::UnitLaw(spec.basis_names[j].clone()));
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                if spec.mul_basis(i, j) != spec.mul_basis(j, i) {
                    return Err(AlgebraError::NotCommutative(
                        spec.basis_names[i].clone(),
                        spec.basis_names[j].clone(),
                    ));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ij = spec.mul_basis(i, j);
                    let jk = spec.mul_basis(j, k);
                    let left = ij.mul_ref(&AlgebraElement::basis(&spec, k));
                    let right = AlgebraElement::basis(&spec, i).mul_ref(&jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(
                            spec.basis_names[i].clone(),
                            spec.basis_names[j].clone(),
                            spec.basis_names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(spec)
    }

    /// The rationals themselves, as the one-dimensional algebra.
    pub fn rationals() -> Arc<Self> {
        AlgebraSpec::new(
            vec!["1".to_string()],
            vec![vec![vec![Rational::one()]]],
            None,
        )
        .expect("Q is a valid algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn table(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.table_dense
    }

    pub fn embedding_text(&self) -> Option<&Vec<String>> {
        self.embedding_text.as_ref()
    }

    pub fn real_embedding(&self) -> Option<&Vec<f64>> {
        self.real_embedding.as_ref()
    }

    fn mul_basis(self: &Arc<Self>, i: usize, j: usize) -> AlgebraElement {
        let mut coords = vec![Rational::zero(); self.dim];
        for (t, c) in &self.mult[i][j] {
            coords[*t] = c.clone();
        }
        AlgebraElement { spec: Arc::clone(self), coords }
    }

    pub fn same_as(&self, other: &AlgebraSpec) -> bool {
        std::ptr::eq(self, other)
            || (self.dim == other.dim
                && self.basis_names == other.basis_names
                && self.table_dense == other.table_dense)
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}
impl Eq for AlgebraSpec {}

/// Element of the algebra: a coordinate vector over the declared basis.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    spec: Arc<AlgebraSpec>,
    coords: Vec<Rational>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.same_as(&other.spec) && self.coords == other.coords
    }
}
impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn new(spec: &Arc<AlgebraSpec>, coords: Vec<Rational>) -> Result<Self, AlgebraError> {
        if coords.len() != spec.dim {
            return Err(AlgebraError::CoordinateLength { got: coords.len(), want: spec.dim });
        }
        Ok(AlgebraElement { spec: Arc::clone(spec), coords })
    }

    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        AlgebraElement { spec: Arc::clone(spec), coords: vec![Rational::zero(); spec.dim] }
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> Self {
        Self::basis(spec, 0)
    }

    pub fn basis(spec: &Arc<AlgebraSpec>, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); spec.dim];
        coords[i] = Rational::one();
        AlgebraElement { spec: Arc::clone(spec), coords }
    }

    pub fn from_rational(spec: &Arc<AlgebraSpec>, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); spec.dim];
        coords[0] = r;
        AlgebraElement { spec: Arc::clone(spec), coords }
    }

    pub fn from_i64(spec: &Arc<AlgebraSpec>, n: i64) -> Self {
        Self::from_rational(spec, Rational::from_i64(n))
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// The rational value when the element lies in Q·1.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Rational::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.spec.same_as(&other.spec), "elements belong to different algebras");
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add_ref(b))
            .collect();
        AlgebraElement { spec: Arc::clone(&self.spec), coords }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.sub_ref(b))
            .collect();
        AlgebraElement { spec: Arc::clone(&self.spec), coords }
    }

    pub fn neg_ref(&self) -> Self {
        AlgebraElement {
            spec: Arc::clone(&self.spec),
            coords: self.coords.iter().map(Rational::neg_ref).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_same(other);
        let mut coords = vec![Rational::zero(); self.spec.dim];
        for (i, ai) in self.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let p = ai.mul_ref(bj);
                for (t, c) in &self.spec.mult[i][j] {
                    coords[*t] = coords[*t].add_ref(&p.mul_ref(c));
                }
            }
        }
        AlgebraElement { spec: Arc::clone(&self.spec), coords }
    }

    /// Checked product, surfacing algebra mismatch as an error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if !self.spec.same_as(&other.spec) {
            return Err(AlgebraError::SpecMismatch);
        }
        Ok(self.mul_ref(other))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.spec);
        }
        AlgebraElement {
            spec: Arc::clone(&self.spec),
            coords: self.coords.iter().map(|c| c.mul_ref(r)).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale(&Rational::from_i64(n))
    }

    /// Multiplicative inverse, by solving the d×d rational system a·x = 1.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let d = self.spec.dim;
        // columns of the multiplication-by-self operator
        let mut m = vec![vec![Rational::zero(); d]; d];
        for j in 0..d {
            for (i, ai) in self.coords.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (t, c) in &self.spec.mult[i][j] {
                    m[*t][j] = m[*t][j].add_ref(&ai.mul_ref(c));
                }
            }
        }
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let x = crate::linalg::solve_rational(m, rhs).ok_or(AlgebraError::NotInvertible)?;
        AlgebraElement::new(&self.spec, x)
    }

    /// Display-only numeric value via the optional real embedding.
    pub fn embed(&self) -> Option<f64> {
        let emb: Vec<f64> = if self.spec.dim == 1 {
            vec![1.0]
        } else {
            self.spec.real_embedding.clone()?
        };
        Some(
            self.coords
                .iter()
                .zip(&emb)
                .map(|(c, e)| c.to_f64() * e)
                .sum(),
        )
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", self.spec.basis_names[i])?;
            } else {
                write!(f, "({c})·{}", self.spec.basis_names[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_alg_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$imp(rhs)
            }
        }
    };
}
forward_alg_binop!(Add, add, add_ref);
forward_alg_binop!(Sub, sub, sub_ref);
forward_alg_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}

/// Complexified algebra element, re + i·im.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexElement {
    pub re: AlgebraElement,
    pub im: AlgebraElement,
}

impl ComplexElement {
    pub fn new(re: AlgebraElement, im: AlgebraElement) -> Self {
        assert!(re.spec.same_as(&im.spec), "re/im over different algebras");
        ComplexElement { re, im }
    }

    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        ComplexElement { re: AlgebraElement::zero(spec), im: AlgebraElement::zero(spec) }
    }

    pub fn from_real(re: AlgebraElement) -> Self {
        let im = AlgebraElement::zero(&re.spec);
        ComplexElement { re, im }
    }

    pub fn from_rational(spec: &Arc<AlgebraSpec>, r: Rational) -> Self {
        Self::from_real(AlgebraElement::from_rational(spec, r))
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.re.spec
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        ComplexElement { re: self.re.add_ref(&other.re), im: self.im.add_ref(&other.im) }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        ComplexElement { re: self.re.sub_ref(&other.re), im: self.im.sub_ref(&other.im) }
    }

    pub fn neg_ref(&self) -> Self {
        ComplexElement { re: self.re.neg_ref(), im: self.im.neg_ref() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        // (a+bi)(c+di) = (ac − bd) + (ad + bc)i, skipping zero parts
        let (a, b) = (&self.re, &self.im);
        let (c, d) = (&other.re, &other.im);
        let b0 = b.is_zero();
        let d0 = d.is_zero();
        if b0 && d0 {
            return ComplexElement::from_real(a.mul_ref(c));
        }
        let re = if b0 || d0 {
            a.mul_ref(c)
        } else {
            a.mul_ref(c).sub_ref(&b.mul_ref(d))
        };
        let im = match (b0, d0) {
            (true, false) => a.mul_ref(d),
            (false, true) => b.mul_ref(c),
            _ => a.mul_ref(d).add_ref(&b.mul_ref(c)),
        };
        ComplexElement { re, im }
    }

    pub fn conj(&self) -> Self {
        ComplexElement { re: self.re.clone(), im: self.im.neg_ref() }
    }

    /// Multiplication by i.
    pub fn times_i(&self) -> Self {
        ComplexElement { re: self.im.neg_ref(), im: self.re.clone() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexElement { re: self.re.scale(r), im: self.im.scale(r) }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        ComplexElement { re: self.re.scale_i64(n), im: self.im.scale_i64(n) }
    }

    /// Exact integrality test: no imaginary part, real part in Z·1.
    pub fn as_integer(&self) -> Option<BigInt> {
        if !self.im.is_zero() {
            return None;
        }
        self.re.as_rational()?.as_integer()
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }
}

impl fmt::Display for ComplexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "i·({})", self.im)
        } else {
            write!(f, "({}) + i·({})", self.re, self.im)
        }
    }
}

macro_rules! forward_cplx_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &ComplexElement {
            type Output = ComplexElement;
            fn $method(self, rhs: &ComplexElement) -> ComplexElement {
                self.$imp(rhs)
            }
        }
    };
}
forward_cplx_binop!(Add, add, add_ref);
forward_cplx_binop!(Sub, sub, sub_ref);
forward_cplx_binop!(Mul, mul, mul_ref);
