//! Seeded, reproducible sampling of lattice points, base points, and forms
//! for the verification suite. Fixed (seed, salt) always replays the same
//! stream.

use crate::forms::{binomial, IntegralForm, RationalForm};
use crate::rational::Rational;
use crate::torus::{LatticeVector, RealVector, Torus};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
    rank: usize,
    spec: std::sync::Arc<crate::algebra::AlgebraSpec>,
}

impl Sampler {
    pub fn for_torus(torus: &Torus, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            rank: torus.rank(),
            spec: torus.spec().clone(),
        }
    }

    /// Independent deterministic stream per named check.
    pub fn salted(torus: &Torus, seed: u64, salt: u64) -> Self {
        let mixed = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        Self::for_torus(torus, mixed)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Lattice point with coordinates in [−5, 5].
    pub fn lattice(&mut self) -> LatticeVector {
        LatticeVector((0..self.rank).map(|_| self.rng.gen_range(-5..=5)).collect())
    }

    pub fn small_rational(&mut self) -> Rational {
        Rational::new(self.rng.gen_range(-8..=8), self.rng.gen_range(1..=8))
    }

    /// Base point: coordinates drawn from {0, ±1/2, ±1} and small rationals.
    pub fn point(&mut self) -> RealVector {
        let coords: Vec<Rational> = (0..self.rank)
            .map(|_| match self.rng.gen_range(0..8) {
                0 => Rational::zero(),
                1 => Rational::new(1, 2),
                2 => Rational::new(-1, 2),
                3 => Rational::one(),
                4 => Rational::from_i64(-1),
                _ => self.small_rational(),
            })
            .collect();
        RealVector::from_rationals(&self.spec, &coords)
    }

    pub fn rational_form(&mut self, degree: usize) -> RationalForm {
        let coeffs = (0..binomial(self.rank, degree))
            .map(|_| self.small_rational())
            .collect();
        RationalForm::new(degree, self.rank, coeffs).expect("sampled form shape")
    }

    pub fn integral_form(&mut self, degree: usize, bound: i64) -> IntegralForm {
        let coeffs = (0..binomial(self.rank, degree))
            .map(|_| BigInt::from(self.rng.gen_range(-bound..=bound)))
            .collect();
        IntegralForm::new(degree, self.rank, coeffs).expect("sampled form shape")
    }

    /// Random small integer combination of the given forms.
    pub fn combination(&mut self, basis: &[IntegralForm], degree: usize) -> IntegralForm {
        let mut acc = IntegralForm::zero(degree, self.rank);
        for f in basis {
            let c = self.rng.gen_range(-3..=3);
            if c != 0 {
                acc = acc.add(&f.scale_i64(c));
            }
        }
        acc
    }
}
