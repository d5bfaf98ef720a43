//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Every assertion is exact; the stated wall-clock budgets are enforced.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use torus_gerbes::algebra::{AlgebraElement, AlgebraSpec, ComplexElement};
use torus_gerbes::cocycles::{
    boundary_parts, imag_corrector, isogeny_pullback, isogeny_pullback_difference,
    line_bundle_exponent, poincare_exponent, six_term_boundary_closed, six_term_boundary_direct,
    structure_corrector, trivializer_exponent, universal_class_value, universal_exponent,
    GerbeCocycle, SlotMultiplier,
};
use torus_gerbes::forms::{
    self, for_each_tuple, hodge_2form, hodge_integral_2form, sigma_eval, skew_eval, IntegralForm,
};
use torus_gerbes::ranks::{self, GerbeClass};
use torus_gerbes::rational::Rational;
use torus_gerbes::sample::Sampler;
use torus_gerbes::specfile::parse_spec;
use torus_gerbes::torus::{LatticeVector, RealVector, Torus};

const FIXTURES: [&str; 5] = [
    "elliptic_i",
    "generic_g2",
    "abc_sqrt23",
    "abc_chain",
    "abc_rational",
];

fn load(name: &str) -> Torus {
    let path = format!("{}/fixtures/{}.json", env!("CARGO_MANIFEST_DIR"), name);
    let text = std::fs::read_to_string(&path).unwrap();
    parse_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}")).0
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "[{}] {} — {}",
        criterion,
        if passed { "PASS" } else { "FAIL" },
        detail
    );
    assert!(passed, "{criterion}: {detail}");
}

fn gerbe_delta(
    co: &GerbeCocycle,
    l1: &LatticeVector,
    l2: &LatticeVector,
    l3: &LatticeVector,
    v: &RealVector,
) -> ComplexElement {
    co.exponent(l2, l3, &v.add_lattice(l1))
        .sub_ref(&co.exponent(&l1.add(l2), l3, v))
        .add_ref(&co.exponent(l1, &l2.add(l3), v))
        .sub_ref(&co.exponent(l1, l2, v))
}

#[test]
fn criterion_1_g2_universality() {
    // rank(HTB) = 4 for 25 random rational g=2 tori, in under a second total
    let start = Instant::now();
    let spec = AlgebraSpec::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut built = 0usize;
    while built < 25 {
        let mut tau = Vec::new();
        for _ in 0..2 {
            let mut row = Vec::new();
            for _ in 0..2 {
                let q = |rng: &mut ChaCha8Rng| {
                    Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=6))
                };
                row.push(ComplexElement::new(
                    AlgebraElement::from_rational(&spec, q(&mut rng)),
                    AlgebraElement::from_rational(&spec, q(&mut rng)),
                ));
            }
            tau.push(row);
        }
        let Ok(torus) = Torus::new(spec.clone(), tau) else {
            continue; // singular imaginary part: resample
        };
        built += 1;
        let htb = ranks::htb_group(&torus);
        assert_eq!(htb.rank(), 4, "g=2 torus #{built} has HTB rank {}", htb.rank());
        let cross = ranks::htb_via_tau(&torus);
        assert_eq!(cross.basis, htb.basis);
    }
    let elapsed = start.elapsed();
    report(
        "criterion 1",
        elapsed < Duration::from_secs(1),
        &format!("25 random rational g=2 tori all have HTB rank 4 ({elapsed:.2?} < 1s)"),
    );
}

#[test]
fn criterion_2_three_elliptic_curve_table() {
    let cases: [(&str, usize, usize); 3] = [
        ("abc_sqrt23", 3, 12),
        ("abc_rational", 9, 18),
        ("abc_chain", 3, 16), // paper states >= 14; 16 is the computed value
    ];
    for (name, ns_want, htb_want) in cases {
        let start = Instant::now();
        let torus = load(name);
        let ns = ranks::ns_group(&torus);
        let htb = ranks::htb_group(&torus);
        assert_eq!(ns.rank(), ns_want, "{name} NS rank");
        assert_eq!(htb.rank(), htb_want, "{name} HTB rank");
        if name == "abc_chain" {
            assert!(htb.rank() >= 14, "paper bound");
            // the two explicit solutions lie in the computed lattice
            let n = torus.rank();
            let mut s1 = IntegralForm::zero(3, n);
            s1.set_coeff(&[0, 4, 5], BigInt::from(1));
            s1.set_coeff(&[1, 3, 5], BigInt::from(1));
            s1.set_coeff(&[2, 3, 4], BigInt::from(1));
            let mut s2 = IntegralForm::zero(3, n);
            s2.set_coeff(&[0, 2, 4], BigInt::from(1));
            s2.set_coeff(&[0, 1, 5], BigInt::from(1));
            s2.set_coeff(&[3, 4, 5], BigInt::from(1));
            assert!(htb.contains(&s1), "first explicit solution not in lattice");
            assert!(htb.contains(&s2), "second explicit solution not in lattice");
            assert!(forms::in_a_lambda(&s1, &torus));
            assert!(forms::in_a_lambda(&s2, &torus));
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(1), "{name}: {elapsed:.2?}");
    }
    report(
        "criterion 2",
        true,
        "NS/HTB ranks 3/12, 9/18, 3/16 (>=14) with explicit solutions contained, each < 1s",
    );
}

#[test]
fn criterion_3_formulation_crosscheck() {
    for name in FIXTURES {
        let torus = load(name);
        let a = ranks::htb_group(&torus);
        let b = ranks::htb_via_tau(&torus);
        assert_eq!(a.basis, b.basis, "{name}: lattices differ");
    }
    report(
        "criterion 3",
        true,
        "J-form and tau-form HTB lattices identical on all five fixtures",
    );
}

#[test]
fn criterion_4_gerbe_cocycle_integrality() {
    use rayon::prelude::*;
    let mut details = Vec::new();
    for name in FIXTURES {
        let start = Instant::now();
        let torus = load(name);
        let htb = ranks::htb_group(&torus);
        let n = torus.rank();
        // independent seeded stream per (E, B) pair; checks are pure, so the
        // outcome is identical under any scheduling
        let pairs: Vec<(usize, u64)> = (0..htb.rank())
            .flat_map(|e_idx| (0..3u64).map(move |b_idx| (e_idx, b_idx)))
            .collect();
        let forms_list = htb.forms();
        pairs.par_iter().for_each(|&(e_idx, b_idx)| {
            let e = &forms_list[e_idx];
            let mut s = Sampler::salted(&torus, 0, 1000 + (e_idx as u64) * 3 + b_idx);
            let b = hodge_2form(&s.rational_form(2), &torus);
            let class = GerbeClass::new(&torus, b, e.clone()).unwrap();
            let co = GerbeCocycle::new(&torus, class);
            for _ in 0..500 {
                let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
                let (v, v2) = (s.point(), s.point());
                let d = gerbe_delta(&co, &l1, &l2, &l3, &v);
                assert!(d.as_integer().is_some(), "{name}: delta Theta not integral");
                assert_eq!(
                    d,
                    gerbe_delta(&co, &l1, &l2, &l3, &v2),
                    "{name}: delta Theta depends on v"
                );
            }
            // s(delta Theta) = E on all basis triples
            let zero_v = RealVector::zero(torus.spec(), n);
            for_each_tuple(n, 3, |_, t| {
                let bv: Vec<LatticeVector> =
                    t.iter().map(|&i| LatticeVector::basis(n, i)).collect();
                let refs: Vec<&LatticeVector> = bv.iter().collect();
                let skew = skew_eval(
                    |args: &[&LatticeVector]| gerbe_delta(&co, args[0], args[1], args[2], &zero_v),
                    &refs,
                    ComplexElement::zero(torus.spec()),
                );
                let want = ComplexElement::from_rational(
                    torus.spec(),
                    Rational::from_bigint(e.eval_lattice(&refs)),
                );
                assert_eq!(skew, want, "{name}: s(delta Theta) != E");
            });
        });
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(10),
            "{name}: {elapsed:.2?} over the 10s budget"
        );
        details.push(format!("{name} {} (E,B) pairs in {elapsed:.2?}", pairs.len()));
    }
    report(
        "criterion 4",
        true,
        &format!(
            "delta Theta integral, v-independent at 500 samples; s(delta Theta)=E; {}",
            details.join("; ")
        ),
    );
}

#[test]
fn criterion_5_appendix_ledger() {
    for name in ["abc_sqrt23", "abc_rational"] {
        let torus = load(name);
        let spec = torus.spec();
        let htb = ranks::htb_group(&torus);
        let basis = htb.forms();
        let mut s = Sampler::for_torus(&torus, 0);
        let sixth = Rational::new(1, 6);
        for i in 0..500 {
            let e_int = s.combination(&basis, 3);
            let e = e_int.to_rational_form();
            let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
            let (k_val, l_val) = boundary_parts(&torus, &e, &l1, &l2, &l3);
            let e_val = e.eval_lattice(&[&l1, &l2, &l3]);

            // (delta beta'') + l = 0 exactly
            let b2 = |a: &LatticeVector, b: &LatticeVector| imag_corrector(&torus, &e, a, b);
            let db2 = b2(&l2, &l3)
                .sub_ref(&b2(&l1.add(&l2), &l3))
                .add_ref(&b2(&l1, &l2.add(&l3)))
                .sub_ref(&b2(&l1, &l2));
            assert!(db2.add_ref(&l_val).is_zero(), "{name}#{i}: (d beta'')+l != 0");

            // (delta r) + k - E/6 = 0 exactly
            let r = |a: &LatticeVector, b: &LatticeVector| structure_corrector(&torus, &e, a, b);
            let dr = r(&l2, &l3)
                .sub_ref(&r(&l1.add(&l2), &l3))
                .add_ref(&r(&l1, &l2.add(&l3)))
                .sub_ref(&r(&l1, &l2));
            let resid = dr
                .add_ref(&k_val)
                .sub_ref(&AlgebraElement::from_rational(spec, e_val.mul_ref(&sixth)));
            assert!(resid.is_zero(), "{name}#{i}: (d r)+k-E/6 != 0");

            // (delta u) + E/6 in Z
            let u = |a: &LatticeVector, b: &LatticeVector| {
                torus_gerbes::cocycles::basis_sum_corrector(&e_int, a, b)
            };
            let du = u(&l2, &l3)
                .sub_ref(&u(&l1.add(&l2), &l3))
                .add_ref(&u(&l1, &l2.add(&l3)))
                .sub_ref(&u(&l1, &l2));
            assert!(
                du.add_ref(&e_val.mul_ref(&sixth)).as_integer().is_some(),
                "{name}#{i}: (d u)+E/6 not integral"
            );
        }
        // helper: closed form equals direct coboundary for 200 coefficient vectors
        for i in 0..200 {
            let e = s.combination(&basis, 3).to_rational_form();
            let x: [SlotMultiplier; 6] = std::array::from_fn(|_| match s.int_in(0, 2) {
                0 => SlotMultiplier::imaginary_unit(),
                1 => SlotMultiplier::real(s.small_rational()),
                _ => SlotMultiplier { re: s.small_rational(), im: s.small_rational() },
            });
            let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
            assert_eq!(
                six_term_boundary_direct(&torus, &e, &x, &l1, &l2, &l3),
                six_term_boundary_closed(&torus, &e, &x, &l1, &l2, &l3),
                "{name}#{i}: six-term identity"
            );
        }
    }
    report(
        "criterion 5",
        true,
        "(d beta'')+l = 0, (d r)+k-E/6 = 0, (d u)+E/6 in Z at 500 samples; helper identity at 200",
    );
}

#[test]
fn criterion_6_universal_gerbe() {
    for name in ["generic_g2", "abc_sqrt23"] {
        let torus = load(name);
        let n = torus.rank();
        let mut s = Sampler::for_torus(&torus, 0);
        let zero2 = IntegralForm::zero(2, n);
        // delta Psi integral at 500 samples on the product group
        for i in 0..500 {
            let (mu1, mu2, mu3) = (
                s.integral_form(2, 5),
                s.integral_form(2, 5),
                s.integral_form(2, 5),
            );
            let b = hodge_2form(&s.rational_form(2), &torus);
            let (l1, l2, l3, v) = (s.lattice(), s.lattice(), s.lattice(), s.point());
            let shifted = b.add(&hodge_integral_2form(&mu1, &torus));
            let d = universal_exponent(&torus, &l2, &mu2, &l3, &mu3, &v.add_lattice(&l1), &shifted)
                .sub_ref(&universal_exponent(
                    &torus,
                    &l1.add(&l2),
                    &mu1.add(&mu2),
                    &l3,
                    &mu3,
                    &v,
                    &b,
                ))
                .add_ref(&universal_exponent(
                    &torus,
                    &l1,
                    &mu1,
                    &l2.add(&l3),
                    &mu2.add(&mu3),
                    &v,
                    &b,
                ))
                .sub_ref(&universal_exponent(&torus, &l1, &mu1, &l2, &mu2, &v, &b));
            assert!(d.as_integer().is_some(), "{name}#{i}: delta Psi not integral");

            // restriction mu = 0: exponent is B/2
            let psi0 = universal_exponent(&torus, &l1, &zero2, &l2, &zero2, &v, &b);
            assert_eq!(
                psi0,
                b.eval_lattice(&[&l1, &l2]).scale(&Rational::new(1, 2)),
                "{name}#{i}: restriction at mu=0"
            );

            // delta kappa - muH/2 integral
            let kap = |lam: &LatticeVector, at: &RealVector| {
                trivializer_exponent(&torus, &mu1, lam, at)
            };
            let dk = kap(&l2, &v.add_lattice(&l1))
                .sub_ref(&kap(&l1.add(&l2), &v))
                .add_ref(&kap(&l1, &v));
            let target = dk.sub_ref(
                &hodge_integral_2form(&mu1, &torus)
                    .eval_lattice(&[&l1, &l2])
                    .scale(&Rational::new(1, 2)),
            );
            assert!(
                target.as_integer().is_some(),
                "{name}#{i}: delta kappa - muH/2 not integral"
            );
        }
        // topological class vs skew of the boundary on 100 basis combinations
        let pair_tuples = forms::tuples(n, 2);
        let b = hodge_2form(&s.rational_form(2), &torus);
        let v = s.point();
        for i in 0..100 {
            let gen = |s: &mut Sampler| -> (LatticeVector, IntegralForm) {
                if s.int_in(0, 1) == 0 {
                    (
                        LatticeVector::basis(n, s.int_in(0, n as i64 - 1) as usize),
                        IntegralForm::zero(2, n),
                    )
                } else {
                    let t = &pair_tuples[s.int_in(0, pair_tuples.len() as i64 - 1) as usize];
                    (LatticeVector::zero(n), IntegralForm::unit(2, n, t))
                }
            };
            let (a1, m1) = gen(&mut s);
            let (a2, m2) = gen(&mut s);
            let (a3, m3) = gen(&mut s);
            let gens = [(&a1, &m1), (&a2, &m2), (&a3, &m3)];
            let perms: [([usize; 3], i64); 6] = [
                ([0, 1, 2], 1),
                ([1, 0, 2], -1),
                ([0, 2, 1], -1),
                ([2, 0, 1], 1),
                ([1, 2, 0], 1),
                ([2, 1, 0], -1),
            ];
            let mut acc = BigInt::from(0);
            for (p, sign) in perms {
                let (g1, g2, g3) = (gens[p[0]], gens[p[1]], gens[p[2]]);
                let shifted = b.add(&hodge_integral_2form(g1.1, &torus));
                let d =
                    universal_exponent(&torus, g2.0, g2.1, g3.0, g3.1, &v.add_lattice(g1.0), &shifted)
                        .sub_ref(&universal_exponent(
                            &torus,
                            &g1.0.add(g2.0),
                            &g1.1.add(g2.1),
                            g3.0,
                            g3.1,
                            &v,
                            &b,
                        ))
                        .add_ref(&universal_exponent(
                            &torus,
                            g1.0,
                            g1.1,
                            &g2.0.add(g3.0),
                            &g2.1.add(g3.1),
                            &v,
                            &b,
                        ))
                        .sub_ref(&universal_exponent(&torus, g1.0, g1.1, g2.0, g2.1, &v, &b));
                acc += d.as_integer().expect("delta Psi integral") * BigInt::from(sign);
            }
            assert_eq!(
                acc,
                universal_class_value(&a1, &a2, &a3, &m1, &m2, &m3),
                "{name}#{i}: topological class mismatch"
            );
        }
    }
    report(
        "criterion 6",
        true,
        "delta Psi integral (500), restriction = B/2, class formula matches skew (100), \
         delta kappa - muH/2 integral (500)",
    );
}

#[test]
fn criterion_7_pullback_laws() {
    let torus = load("abc_sqrt23");
    let htb = ranks::htb_group(&torus);
    let basis = htb.forms();
    let mut s = Sampler::for_torus(&torus, 0);
    for n in -3i64..=3 {
        for i in 0..200 {
            let b = hodge_2form(&s.rational_form(2), &torus);
            let e = s.combination(&basis, 3);
            let class = GerbeClass::new(&torus, b, e).unwrap();
            let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
            let d = isogeny_pullback_difference(&torus, n, &class, &l1, &l2, &v);
            assert!(
                d.as_integer().is_some(),
                "n={n}#{i}: pullback difference not integral"
            );
            // ((n²+n³)/2)(B,E) + ((n²−n³)/2)(B,−E) = (n²B, n³E)
            let plus = class.scale((n * n + n * n * n) / 2);
            let minus =
                GerbeClass { b: class.b.clone(), e: class.e.neg() }.scale((n * n - n * n * n) / 2);
            assert_eq!(
                plus.add(&minus),
                isogeny_pullback(n, &class),
                "n={n}#{i}: class identity"
            );
        }
    }
    report(
        "criterion 7",
        true,
        "n in -3..=3: pullback exponent differences integral at 200 samples each; class identity exact",
    );
}

#[test]
fn criterion_8_line_bundle_regression() {
    for name in ["elliptic_i", "abc_sqrt23", "abc_rational"] {
        let torus = load(name);
        let n = torus.rank();
        let ns = ranks::ns_group(&torus);
        let basis = ns.forms();
        let mut s = Sampler::for_torus(&torus, 0);
        for i in 0..500 {
            let e = s.combination(&basis, 2);
            let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
            let phi = |lam: &LatticeVector, at: &RealVector| {
                line_bundle_exponent(&torus, &e, lam, at).expect("E is in the NS kernel")
            };
            let d = phi(&l2, &v.add_lattice(&l1))
                .sub_ref(&phi(&l1.add(&l2), &v))
                .add_ref(&phi(&l1, &v));
            let val = d.as_integer();
            assert!(val.is_some(), "{name}#{i}: delta phi not integral");
            assert_eq!(
                val.unwrap(),
                -sigma_eval(&e, &l2, &l1),
                "{name}#{i}: delta phi pattern"
            );

            let h1: Vec<i64> = (0..n).map(|_| s.int_in(-4, 4)).collect();
            let h2: Vec<i64> = (0..n).map(|_| s.int_in(-4, 4)).collect();
            let c: Vec<Rational> = (0..n).map(|_| s.small_rational()).collect();
            let c_shift: Vec<Rational> = c
                .iter()
                .zip(&h1)
                .map(|(a, &b)| a.add_ref(&Rational::from_i64(b)))
                .collect();
            let h12: Vec<i64> = h1.iter().zip(&h2).map(|(a, b)| a + b).collect();
            let dpsi = poincare_exponent(&torus, &l2, &h2, &v.add_lattice(&l1), &c_shift)
                .sub_ref(&poincare_exponent(&torus, &l1.add(&l2), &h12, &v, &c))
                .add_ref(&poincare_exponent(&torus, &l1, &h1, &v, &c));
            assert!(
                dpsi.as_integer().is_some(),
                "{name}#{i}: delta psi not integral"
            );
        }
    }
    report(
        "criterion 8",
        true,
        "delta phi^E and delta psi integral at 500 samples each on three fixtures",
    );
}
