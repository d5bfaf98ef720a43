//! The machine-checked identity suite: every cocycle identity is re-verified
//! on seeded pseudo-random samples with exact arithmetic, and each check
//! reports pass/fail with the first counterexample found.

use crate::algebra::{AlgebraElement, ComplexElement};
use crate::cocycles::{
    basis_sum_corrector, boundary_parts, holomorphic_term, imag_corrector, isogeny_pullback,
    isogeny_pullback_difference, poincare_exponent, real_corrector, six_term_boundary_closed,
    six_term_boundary_direct, structure_corrector, trivializer_exponent, universal_class_value,
    universal_exponent, BasePoint, Cochain, GerbeCocycle, GroupElement, SlotMultiplier,
};
use crate::forms::{
    self, for_each_tuple, hodge_2form, hodge_integral_2form, plain_coboundary, sigma_eval,
    skew_eval, ComplexForm, IntegralForm,
};
use crate::ranks::{self, GerbeClass, IntegerKernel};
use crate::rational::Rational;
use crate::sample::Sampler;
use crate::torus::{LatticeVector, RealVector, Torus};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn pass(name: &str, samples: usize) -> Self {
        CheckResult {
            name: name.to_string(),
            samples,
            passed: true,
            first_counterexample: None,
            note: None,
        }
    }

    fn fail(name: &str, samples: usize, counterexample: String) -> Self {
        CheckResult {
            name: name.to_string(),
            samples,
            passed: false,
            first_counterexample: Some(counterexample),
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Ctx<'a> {
    torus: &'a Torus,
    seed: u64,
    samples: usize,
    ns: IntegerKernel,
    htb: IntegerKernel,
}

impl<'a> Ctx<'a> {
    fn sampler(&self, salt: u64) -> Sampler {
        Sampler::salted(self.torus, self.seed, salt)
    }

    fn random_class(&self, s: &mut Sampler) -> GerbeClass {
        let b = hodge_2form(&s.rational_form(2), self.torus);
        let e = s.combination(&self.htb.forms(), 3);
        GerbeClass { b, e }
    }
}

/// Runs the whole identity suite. `samples` scales the per-check sample
/// counts (the contract minimum is 500).
pub fn run_identity_suite(torus: &Torus, seed: u64, samples: usize) -> VerifyReport {
    let ctx = Ctx {
        torus,
        seed,
        samples,
        ns: ranks::ns_group(torus),
        htb: ranks::htb_group(torus),
    };
    let checks = vec![
        check_kernel_constraints(&ctx),
        check_formulation_crosscheck(&ctx),
        check_sigma_section(&ctx),
        check_skew_kills_coboundaries(&ctx),
        check_semicharacter_defect(&ctx),
        check_hodge_decomposition(&ctx),
        check_line_bundle_boundary(&ctx),
        check_poincare_boundary(&ctx),
        check_holomorphic_term(&ctx),
        check_skew_recovery_of_parts(&ctx),
        check_imag_corrector(&ctx),
        check_real_corrector(&ctx),
        check_corrector_additivity(&ctx),
        check_six_term_identity(&ctx),
        check_gerbe_boundary(&ctx),
        check_gerbe_skew_recovery(&ctx),
        check_universal_boundary(&ctx),
        check_universal_class(&ctx),
        check_trivializer(&ctx),
        check_pullback_laws(&ctx),
        check_delta_squared(&ctx),
        check_holomorphy_witnesses(&ctx),
    ];
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { passed, checks }
}

fn fmt_sample(parts: &[(&str, String)]) -> String {
    parts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn lat_str(l: &LatticeVector) -> String {
    format!("{:?}", l.0)
}

fn check_kernel_constraints(ctx: &Ctx) -> CheckResult {
    let name = "kernel-vectors-satisfy-constraints";
    let ok_ns = ranks::kernel_satisfies_constraints(ctx.torus, &ctx.ns);
    let ok_htb = ranks::kernel_satisfies_constraints(ctx.torus, &ctx.htb);
    let n = ctx.torus.rank();
    let bound_ns = forms::binomial(n, 2);
    let bound_htb = forms::binomial(n, 3);
    let in_bounds = ctx.ns.rank() <= bound_ns && ctx.htb.rank() <= bound_htb;
    if ok_ns && ok_htb && in_bounds {
        CheckResult::pass(name, ctx.ns.rank() + ctx.htb.rank()).with_note(format!(
            "ns rank {}, htb rank {}",
            ctx.ns.rank(),
            ctx.htb.rank()
        ))
    } else {
        CheckResult::fail(name, 0, "a basis vector violates its defining constraint".into())
    }
}

fn check_formulation_crosscheck(ctx: &Ctx) -> CheckResult {
    let name = "htb-j-form-vs-tau-form";
    let via_tau = ranks::htb_via_tau(ctx.torus);
    if via_tau.basis == ctx.htb.basis {
        CheckResult::pass(name, ctx.htb.rank())
    } else {
        CheckResult::fail(
            name,
            0,
            format!(
                "lattices differ: ranks {} vs {}",
                ctx.htb.rank(),
                via_tau.rank()
            ),
        )
    }
}

fn check_sigma_section(ctx: &Ctx) -> CheckResult {
    let name = "skew-of-sigma-is-identity";
    let n = ctx.torus.rank();
    let mut s = ctx.sampler(3);
    let total = 100;
    // all basis pairs first
    let mut mus: Vec<IntegralForm> = Vec::new();
    for_each_tuple(n, 2, |_, t| mus.push(IntegralForm::unit(2, n, t)));
    for _ in 0..total {
        mus.push(s.integral_form(2, 5));
    }
    for mu in &mus {
        for _ in 0..4 {
            let l1 = s.lattice();
            let l2 = s.lattice();
            let skew = sigma_eval(mu, &l1, &l2) - sigma_eval(mu, &l2, &l1);
            let want = mu.eval_lattice(&[&l1, &l2]);
            if skew != want {
                return CheckResult::fail(
                    name,
                    mus.len(),
                    fmt_sample(&[("l1", lat_str(&l1)), ("l2", lat_str(&l2))]),
                );
            }
        }
    }
    CheckResult::pass(name, mus.len())
}

fn check_skew_kills_coboundaries(ctx: &Ctx) -> CheckResult {
    let name = "skew-kills-coboundaries";
    let n = ctx.torus.rank();
    let mut s = ctx.sampler(4);
    // deterministic pseudo-random finitely-generated cochains
    let mix = |l: &LatticeVector, salt: i64| -> i64 {
        let mut h: i64 = salt;
        for (i, &x) in l.0.iter().enumerate() {
            h = h.wrapping_mul(31).wrapping_add(x * (i as i64 + 2));
            h = (h % 1009 + 1009) % 1009;
        }
        h % 13 - 6
    };
    for trial in 0..20 {
        let salt = s.int_in(1, 1_000_000);
        // p = 2: g is a 1-cochain
        let g1 = |args: &[&LatticeVector]| Rational::from_i64(mix(args[0], salt));
        let f2 = |args: &[&LatticeVector]| plain_coboundary(g1, args);
        let skew2 = forms::skew_symmetrize(f2, 2, n);
        if !skew2.is_zero() {
            return CheckResult::fail(name, trial, format!("degree 2, salt {salt}"));
        }
        // p = 3: g is a 2-cochain
        let g2 = |args: &[&LatticeVector]| {
            Rational::from_i64(mix(args[0], salt).wrapping_mul(mix(args[1], salt + 7)) % 17)
        };
        let f3 = |args: &[&LatticeVector]| plain_coboundary(g2, args);
        let skew3 = forms::skew_symmetrize(f3, 3, n);
        if !skew3.is_zero() {
            return CheckResult::fail(name, trial, format!("degree 3, salt {salt}"));
        }
    }
    CheckResult::pass(name, 20)
}

fn check_semicharacter_defect(ctx: &Ctx) -> CheckResult {
    let name = "semicharacter-quadratic-defect";
    let mut s = ctx.sampler(5);
    for i in 0..200 {
        let e = s.integral_form(2, 5);
        let lam = s.lattice();
        let th2 = forms::semicharacter(&e, &lam.scale(2));
        let th = forms::semicharacter(&e, &lam);
        let defect = th2.sub_ref(&th.scale_i64(4));
        if defect.as_integer().is_none() {
            return CheckResult::fail(name, i, fmt_sample(&[("lam", lat_str(&lam))]));
        }
    }
    CheckResult::pass(name, 200)
}

fn check_hodge_decomposition(ctx: &Ctx) -> CheckResult {
    let name = "hodge-type-decomposition";
    let torus = ctx.torus;
    let n = torus.rank();
    let mut s = ctx.sampler(6);
    for trial in 0..20 {
        let w = s.rational_form(2);
        let h = hodge_2form(&w, torus);
        if !forms::is_anti_holomorphic(&h, torus) {
            return CheckResult::fail(name, trial, "(0,2) condition fails".into());
        }
        // ω = ω^H + ω^{(1,1)} + conj(ω^H) on all basis pairs
        let mut ok = true;
        for_each_tuple(n, 2, |_, t| {
            if !ok {
                return;
            }
            let ei = LatticeVector::basis(n, t[0]);
            let ej = LatticeVector::basis(n, t[1]);
            let jei = torus.apply_j_lattice(&ei);
            let jej = torus.apply_j_lattice(&ej);
            let spec = torus.spec();
            let hval = h.eval_lattice(&[&ei, &ej]);
            let one_one = w
                .eval_lattice(&[&ei, &ej])                // rational value
                ;
            let one_one = AlgebraElement::from_rational(spec, one_one)
                .add_ref(&w.eval_real(spec, &[&jei, &jej]))
                .scale(&Rational::new(1, 2));
            let total = hval
                .add_ref(&ComplexElement::from_real(one_one))
                .add_ref(&hval.conj());
            let want = ComplexElement::from_real(AlgebraElement::from_rational(
                spec,
                w.eval_lattice(&[&ei, &ej]),
            ));
            ok = total == want;
        });
        if !ok {
            return CheckResult::fail(name, trial, "reassembly fails on a basis pair".into());
        }
    }
    CheckResult::pass(name, 20)
}

fn check_line_bundle_boundary(ctx: &Ctx) -> CheckResult {
    let name = "line-bundle-boundary-integral";
    let torus = ctx.torus;
    let mut s = ctx.sampler(7);
    let ns_forms = ctx.ns.forms();
    let mut pattern_held = true;
    for i in 0..ctx.samples {
        let e = s.combination(&ns_forms, 2);
        let e_rat = e.to_rational_form();
        let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
        let phi = |lam: &LatticeVector, at: &RealVector| {
            crate::cocycles::line::line_bundle_exponent_unchecked(torus, &e_rat, &e, lam, at)
        };
        let d = phi(&l2, &v.add_lattice(&l1))
            .sub_ref(&phi(&l1.add(&l2), &v))
            .add_ref(&phi(&l1, &v));
        let Some(value) = d.as_integer() else {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("l2", lat_str(&l2)), ("delta", d.to_string())]),
            );
        };
        if value != -sigma_eval(&e, &l2, &l1) {
            pattern_held = false;
        }
    }
    let note = if pattern_held {
        "delta equals -sigma(E)(l2,l1) at every sample".to_string()
    } else {
        "integral, but not always equal to -sigma(E)(l2,l1)".to_string()
    };
    CheckResult::pass(name, ctx.samples).with_note(note)
}

fn check_poincare_boundary(ctx: &Ctx) -> CheckResult {
    let name = "poincare-boundary-integral";
    let torus = ctx.torus;
    let n = torus.rank();
    let mut s = ctx.sampler(8);
    let mut pattern_held = true;
    for i in 0..ctx.samples {
        let h1: Vec<i64> = (0..n).map(|_| s.int_in(-4, 4)).collect();
        let h2: Vec<i64> = (0..n).map(|_| s.int_in(-4, 4)).collect();
        let c: Vec<Rational> = (0..n).map(|_| s.small_rational()).collect();
        let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
        // boundary in (λ, ξ) jointly: the dual coordinate translates by h1
        let c_shift: Vec<Rational> = c
            .iter()
            .zip(&h1)
            .map(|(a, &b)| a.add_ref(&Rational::from_i64(b)))
            .collect();
        let h12: Vec<i64> = h1.iter().zip(&h2).map(|(a, b)| a + b).collect();
        let t1 = poincare_exponent(torus, &l2, &h2, &v.add_lattice(&l1), &c_shift);
        let t2 = poincare_exponent(torus, &l1.add(&l2), &h12, &v, &c);
        let t3 = poincare_exponent(torus, &l1, &h1, &v, &c);
        let d = t1.sub_ref(&t2).add_ref(&t3);
        let Some(value) = d.as_integer() else {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("delta", d.to_string())]),
            );
        };
        let want: i64 = h2.iter().zip(&l1.0).map(|(a, b)| a * b).sum();
        if value != BigInt::from(-want) {
            pattern_held = false;
        }
    }
    let note = if pattern_held {
        "delta equals -h2(l1) at every sample".to_string()
    } else {
        "integral, but not always equal to -h2(l1)".to_string()
    };
    CheckResult::pass(name, ctx.samples).with_note(note)
}

fn check_holomorphic_term(ctx: &Ctx) -> CheckResult {
    let name = "holomorphic-term";
    let torus = ctx.torus;
    let mut s = ctx.sampler(9);
    let htb_forms = ctx.htb.forms();
    for i in 0..200 {
        let e = s.combination(&htb_forms, 3).to_rational_form();
        let (l1, l2, l3, v) = (s.lattice(), s.lattice(), s.lattice(), s.point());
        // H(Jv) = i·H(v)
        let jv = torus.apply_j(&v);
        let lhs = holomorphic_term(torus, &e, &l1, &l2, &jv);
        let rhs = holomorphic_term(torus, &e, &l1, &l2, &v).times_i();
        if lhs != rhs {
            return CheckResult::fail(name, i, "H(iv) != i H(v)".into());
        }
        // (δH)(λ₁,λ₂,λ₃)(v) = H_{λ₂,λ₃}(λ₁), independent of v
        let h = |a: &LatticeVector, b: &LatticeVector, at: &RealVector| {
            holomorphic_term(torus, &e, a, b, at)
        };
        let d = h(&l2, &l3, &v.add_lattice(&l1))
            .sub_ref(&h(&l1.add(&l2), &l3, &v))
            .add_ref(&h(&l1, &l2.add(&l3), &v))
            .sub_ref(&h(&l1, &l2, &v));
        let want = h(&l2, &l3, &torus.lattice_to_real(&l1));
        if d != want {
            return CheckResult::fail(name, i, "delta H != H_{l2,l3}(l1)".into());
        }
    }
    CheckResult::pass(name, 200)
}

fn check_skew_recovery_of_parts(ctx: &Ctx) -> CheckResult {
    let name = "skew-of-boundary-parts";
    let torus = ctx.torus;
    let n = torus.rank();
    let spec = torus.spec();
    for e in ctx.htb.forms() {
        let e_rat = e.to_rational_form();
        let mut ok = true;
        for_each_tuple(n, 3, |_, t| {
            if !ok {
                return;
            }
            let b: Vec<LatticeVector> =
                t.iter().map(|&i| LatticeVector::basis(n, i)).collect();
            let refs: Vec<&LatticeVector> = b.iter().collect();
            let k_skew = skew_eval(
                |args: &[&LatticeVector]| {
                    boundary_parts(torus, &e_rat, args[0], args[1], args[2]).0
                },
                &refs,
                AlgebraElement::zero(spec),
            );
            let l_skew = skew_eval(
                |args: &[&LatticeVector]| {
                    boundary_parts(torus, &e_rat, args[0], args[1], args[2]).1
                },
                &refs,
                AlgebraElement::zero(spec),
            );
            let want = AlgebraElement::from_rational(
                spec,
                e_rat.eval_lattice(&[refs[0], refs[1], refs[2]]),
            );
            ok = k_skew == want && l_skew.is_zero();
        });
        if !ok {
            return CheckResult::fail(name, ctx.htb.rank(), "s(k) != E or s(l) != 0".into());
        }
    }
    CheckResult::pass(name, ctx.htb.rank())
}

fn check_imag_corrector(ctx: &Ctx) -> CheckResult {
    let name = "imag-corrector-kills-l";
    let torus = ctx.torus;
    let mut s = ctx.sampler(10);
    let htb_forms = ctx.htb.forms();
    for i in 0..ctx.samples {
        let e = s.combination(&htb_forms, 3).to_rational_form();
        let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
        let b = |a: &LatticeVector, c: &LatticeVector| imag_corrector(torus, &e, a, c);
        let d = b(&l2, &l3)
            .sub_ref(&b(&l1.add(&l2), &l3))
            .add_ref(&b(&l1, &l2.add(&l3)))
            .sub_ref(&b(&l1, &l2));
        let l_val = boundary_parts(torus, &e, &l1, &l2, &l3).1;
        if !d.add_ref(&l_val).is_zero() {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("l2", lat_str(&l2)), ("l3", lat_str(&l3))]),
            );
        }
    }
    CheckResult::pass(name, ctx.samples)
}

fn check_real_corrector(ctx: &Ctx) -> CheckResult {
    let name = "real-corrector-ledger";
    let torus = ctx.torus;
    let spec = torus.spec();
    let mut s = ctx.sampler(11);
    let htb_forms = ctx.htb.forms();
    let sixth = Rational::new(1, 6);
    let mut strong_form_held = true;
    for i in 0..ctx.samples {
        let e_int = s.combination(&htb_forms, 3);
        let e = e_int.to_rational_form();
        let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
        let e_val = e.eval_lattice(&[&l1, &l2, &l3]);
        let (k_val, _) = boundary_parts(torus, &e, &l1, &l2, &l3);
        // (δu) + E/6 ∈ Z
        let u = |a: &LatticeVector, b: &LatticeVector| basis_sum_corrector(&e_int, a, b);
        let du = u(&l2, &l3)
            .sub_ref(&u(&l1.add(&l2), &l3))
            .add_ref(&u(&l1, &l2.add(&l3)))
            .sub_ref(&u(&l1, &l2));
        if du.add_ref(&e_val.mul_ref(&sixth)).as_integer().is_none() {
            return CheckResult::fail(name, i, format!("(delta u)+E/6 not integral at sample {i}"));
        }
        // (δr) + k − E/6 = 0 exactly
        let r = |a: &LatticeVector, b: &LatticeVector| structure_corrector(torus, &e, a, b);
        let dr = r(&l2, &l3)
            .sub_ref(&r(&l1.add(&l2), &l3))
            .add_ref(&r(&l1, &l2.add(&l3)))
            .sub_ref(&r(&l1, &l2));
        let residue = dr
            .add_ref(&k_val)
            .sub_ref(&AlgebraElement::from_rational(spec, e_val.mul_ref(&sixth)));
        if !residue.is_zero() {
            return CheckResult::fail(name, i, format!("(delta r)+k-E/6 != 0 at sample {i}"));
        }
        // (δβ′) + k ∈ Z
        let bp = |a: &LatticeVector, b: &LatticeVector| real_corrector(torus, &e_int, &e, a, b);
        let dbp = bp(&l2, &l3)
            .sub_ref(&bp(&l1.add(&l2), &l3))
            .add_ref(&bp(&l1, &l2.add(&l3)))
            .sub_ref(&bp(&l1, &l2));
        let total = dbp.add_ref(&k_val);
        match total.as_rational().and_then(|r| r.as_integer()) {
            None => {
                return CheckResult::fail(name, i, format!("(delta beta')+k not integral at sample {i}"))
            }
            Some(z) => {
                if !z.is_zero() {
                    strong_form_held = false;
                }
            }
        }
    }
    let note = if strong_form_held {
        "(delta beta') + k vanished exactly at every sample".to_string()
    } else {
        "(delta beta') + k is integral but not identically zero".to_string()
    };
    CheckResult::pass(name, ctx.samples).with_note(note)
}

fn check_corrector_additivity(ctx: &Ctx) -> CheckResult {
    let name = "exponent-additivity";
    let torus = ctx.torus;
    let mut s = ctx.sampler(12);
    let htb_forms = ctx.htb.forms();
    for i in 0..50 {
        let e1 = s.combination(&htb_forms, 3);
        let e2 = s.combination(&htb_forms, 3);
        let b1 = hodge_2form(&s.rational_form(2), torus);
        let b2 = hodge_2form(&s.rational_form(2), torus);
        let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
        let c1 = GerbeCocycle::new(torus, GerbeClass { b: b1.clone(), e: e1.clone() });
        let c2 = GerbeCocycle::new(torus, GerbeClass { b: b2.clone(), e: e2.clone() });
        let c12 = GerbeCocycle::new(torus, GerbeClass { b: b1.add(&b2), e: e1.add(&e2) });
        let sum = c1.exponent(&l1, &l2, &v).add_ref(&c2.exponent(&l1, &l2, &v));
        if sum != c12.exponent(&l1, &l2, &v) {
            return CheckResult::fail(name, i, "Theta not additive in (B, E)".into());
        }
    }
    CheckResult::pass(name, 50)
}

fn check_six_term_identity(ctx: &Ctx) -> CheckResult {
    let name = "six-term-boundary-identity";
    let torus = ctx.torus;
    let mut s = ctx.sampler(13);
    let htb_forms = ctx.htb.forms();
    for i in 0..200 {
        let e = s.combination(&htb_forms, 3).to_rational_form();
        let x: [SlotMultiplier; 6] = std::array::from_fn(|_| match s.int_in(0, 3) {
            0 => SlotMultiplier::imaginary_unit(),
            1 => SlotMultiplier::real(Rational::from_i64(-1)),
            2 => SlotMultiplier::real(s.small_rational()),
            _ => SlotMultiplier {
                re: s.small_rational(),
                im: s.small_rational(),
            },
        });
        let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
        let direct = six_term_boundary_direct(torus, &e, &x, &l1, &l2, &l3);
        let closed = six_term_boundary_closed(torus, &e, &x, &l1, &l2, &l3);
        if direct != closed {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("l2", lat_str(&l2)), ("l3", lat_str(&l3))]),
            );
        }
    }
    CheckResult::pass(name, 200)
}

fn check_gerbe_boundary(ctx: &Ctx) -> CheckResult {
    let name = "gerbe-boundary-integral-and-v-independent";
    let torus = ctx.torus;
    let mut s = ctx.sampler(14);
    for i in 0..ctx.samples {
        let class = ctx.random_class(&mut s);
        let co = GerbeCocycle::new(torus, class);
        let (l1, l2, l3) = (s.lattice(), s.lattice(), s.lattice());
        let (v, v2) = (s.point(), s.point());
        let d1 = gerbe_delta(&co, &l1, &l2, &l3, &v);
        if d1.as_integer().is_none() {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("value", d1.to_string())]),
            );
        }
        let d2 = gerbe_delta(&co, &l1, &l2, &l3, &v2);
        if d1 != d2 {
            return CheckResult::fail(name, i, "delta Theta depends on v".into());
        }
    }
    CheckResult::pass(name, ctx.samples)
}

pub(crate) fn gerbe_delta(
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

fn check_gerbe_skew_recovery(ctx: &Ctx) -> CheckResult {
    let name = "gerbe-boundary-skew-recovers-e";
    let torus = ctx.torus;
    let n = torus.rank();
    let mut s = ctx.sampler(15);
    for trial in 0..20 {
        let class = ctx.random_class(&mut s);
        let e = class.e.clone();
        let co = GerbeCocycle::new(torus, class);
        let zero_v = RealVector::zero(torus.spec(), n);
        let mut ok = true;
        for_each_tuple(n, 3, |_, t| {
            if !ok {
                return;
            }
            let b: Vec<LatticeVector> = t.iter().map(|&i| LatticeVector::basis(n, i)).collect();
            let refs: Vec<&LatticeVector> = b.iter().collect();
            let skew = skew_eval(
                |args: &[&LatticeVector]| gerbe_delta(&co, args[0], args[1], args[2], &zero_v),
                &refs,
                ComplexElement::zero(torus.spec()),
            );
            let want = ComplexElement::from_rational(
                torus.spec(),
                Rational::from_bigint(e.eval_lattice(&refs)),
            );
            ok = skew == want;
        });
        if !ok {
            return CheckResult::fail(name, trial, "s(delta Theta) != E on a basis triple".into());
        }
    }
    CheckResult::pass(name, 20)
}

fn check_universal_boundary(ctx: &Ctx) -> CheckResult {
    let name = "universal-boundary-integral";
    let torus = ctx.torus;
    let mut s = ctx.sampler(16);
    let mut pattern_held = true;
    let mut restriction_ok = true;
    for i in 0..ctx.samples {
        let mu1 = s.integral_form(2, 5);
        let mu2 = s.integral_form(2, 5);
        let mu3 = s.integral_form(2, 5);
        let b = hodge_2form(&s.rational_form(2), torus);
        let (l1, l2, l3, v) = (s.lattice(), s.lattice(), s.lattice(), s.point());
        let d = universal_delta(torus, (&l1, &mu1), (&l2, &mu2), (&l3, &mu3), &v, &b);
        let Some(value) = d.as_integer() else {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("value", d.to_string())]),
            );
        };
        if value != -sigma_eval(&mu3, &l2, &l1) {
            pattern_held = false;
        }
        // restriction μ₁ = μ₂ = 0: exponent is ½B(λ₁,λ₂)
        if i < 50 {
            let z = IntegralForm::zero(2, torus.rank());
            let psi0 = universal_exponent(torus, &l1, &z, &l2, &z, &v, &b);
            let want = b.eval_lattice(&[&l1, &l2]).scale(&Rational::new(1, 2));
            if psi0 != want {
                restriction_ok = false;
            }
        }
    }
    if !restriction_ok {
        return CheckResult::fail(name, ctx.samples, "restriction at mu=0 is not B/2".into());
    }
    let note = if pattern_held {
        "delta equals -sigma(mu3)(l2,l1) at every sample".to_string()
    } else {
        "integral, but not always -sigma(mu3)(l2,l1)".to_string()
    };
    CheckResult::pass(name, ctx.samples).with_note(note)
}

fn universal_delta(
    torus: &Torus,
    g1: (&LatticeVector, &IntegralForm),
    g2: (&LatticeVector, &IntegralForm),
    g3: (&LatticeVector, &IntegralForm),
    v: &RealVector,
    b: &ComplexForm,
) -> ComplexElement {
    let shifted_b = b.add(&hodge_integral_2form(g1.1, torus));
    let t1 = universal_exponent(torus, g2.0, g2.1, g3.0, g3.1, &v.add_lattice(g1.0), &shifted_b);
    let t2 = universal_exponent(
        torus,
        &g1.0.add(g2.0),
        &g1.1.add(g2.1),
        g3.0,
        g3.1,
        v,
        b,
    );
    let t3 = universal_exponent(
        torus,
        g1.0,
        g1.1,
        &g2.0.add(g3.0),
        &g2.1.add(g3.1),
        v,
        b,
    );
    let t4 = universal_exponent(torus, g1.0, g1.1, g2.0, g2.1, v, b);
    t1.sub_ref(&t2).add_ref(&t3).sub_ref(&t4)
}

fn check_universal_class(ctx: &Ctx) -> CheckResult {
    let name = "universal-topological-class";
    let torus = ctx.torus;
    let n = torus.rank();
    let mut s = ctx.sampler(17);
    let b = hodge_2form(&s.rational_form(2), torus);
    let v = s.point();
    let pair_tuples = forms::tuples(n, 2);
    for i in 0..100 {
        // random generators of the product group: basis lattice vectors or
        // basis 2-forms
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
        // skew-symmetrize the integer boundary over the 6 permutations
        let gens = [(&a1, &m1), (&a2, &m2), (&a3, &m3)];
        let perms: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 0, 2], -1),
            ([0, 2, 1], -1),
            ([2, 0, 1], 1),
            ([1, 2, 0], 1),
            ([2, 1, 0], -1),
        ];
        let mut acc = BigInt::zero();
        for (p, sign) in perms {
            let d = universal_delta(torus, gens[p[0]], gens[p[1]], gens[p[2]], &v, &b);
            let val = d.as_integer().expect("universal boundary must be integral");
            acc += val * BigInt::from(sign);
        }
        let want = universal_class_value(&a1, &a2, &a3, &m1, &m2, &m3);
        if acc != want {
            return CheckResult::fail(name, i, format!("skew {acc} != class {want}"));
        }
    }
    CheckResult::pass(name, 100)
}

fn check_trivializer(ctx: &Ctx) -> CheckResult {
    let name = "trivializer-boundary";
    let torus = ctx.torus;
    let mut s = ctx.sampler(18);
    for i in 0..ctx.samples {
        let mu = s.integral_form(2, 5);
        let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
        let kap = |lam: &LatticeVector, at: &RealVector| trivializer_exponent(torus, &mu, lam, at);
        let d = kap(&l2, &v.add_lattice(&l1))
            .sub_ref(&kap(&l1.add(&l2), &v))
            .add_ref(&kap(&l1, &v));
        let muh = hodge_integral_2form(&mu, torus);
        let target = d.sub_ref(&muh.eval_lattice(&[&l1, &l2]).scale(&Rational::new(1, 2)));
        if target.as_integer().is_none() {
            return CheckResult::fail(
                name,
                i,
                fmt_sample(&[("l1", lat_str(&l1)), ("value", target.to_string())]),
            );
        }
        // additivity: κ is linear in μ, so the combination vanishes exactly
        if i < 50 {
            let mu2 = s.integral_form(2, 5);
            let sum = trivializer_exponent(torus, &mu.add(&mu2), &l1, &v);
            let parts = trivializer_exponent(torus, &mu, &l1, &v)
                .add_ref(&trivializer_exponent(torus, &mu2, &l1, &v));
            if sum != parts {
                return CheckResult::fail(name, i, "kappa not additive in mu".into());
            }
        }
    }
    CheckResult::pass(name, ctx.samples)
}

fn check_pullback_laws(ctx: &Ctx) -> CheckResult {
    let name = "isogeny-pullback-laws";
    let torus = ctx.torus;
    let mut s = ctx.sampler(19);
    let per_n = 200;
    let mut all_zero = true;
    for n in -3i64..=3 {
        for i in 0..per_n {
            let class = ctx.random_class(&mut s);
            let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
            let d = isogeny_pullback_difference(torus, n, &class, &l1, &l2, &v);
            if d.as_integer().is_none() {
                return CheckResult::fail(
                    name,
                    i,
                    fmt_sample(&[("n", n.to_string()), ("value", d.to_string())]),
                );
            }
            if !d.is_zero() {
                all_zero = false;
            }
            // class identity ((n²+n³)/2)(B,E) + ((n²−n³)/2)(B,−E) = (n²B, n³E)
            let plus = class.scale((n * n + n * n * n) / 2);
            let minus = GerbeClass { b: class.b.clone(), e: class.e.neg() }
                .scale((n * n - n * n * n) / 2);
            if plus.add(&minus) != isogeny_pullback(n, &class) {
                return CheckResult::fail(name, i, format!("class identity fails for n={n}"));
            }
        }
    }
    let note = if all_zero {
        "pullback exponent differences vanished exactly at every sample".to_string()
    } else {
        "differences integral but not always zero".to_string()
    };
    CheckResult::pass(name, 7 * per_n).with_note(note)
}

fn check_delta_squared(ctx: &Ctx) -> CheckResult {
    let name = "coboundary-squares-to-zero";
    let torus = ctx.torus;
    let mut s = ctx.sampler(20);
    // degree 0 → 2 and 1 → 3 on nonlinear deterministic cochains
    let c0 = Cochain::new(0, |_gs: &[&GroupElement], x: &BasePoint| {
        let a = &x.v.0[0];
        ComplexElement::from_real(a.mul_ref(a))
    });
    let c1 = Cochain::new(1, |gs: &[&GroupElement], x: &BasePoint| {
        let w = gs[0].lam.0.iter().fold(1i64, |acc, &t| {
            (acc.wrapping_mul(2).wrapping_add(t * t)) % 97
        });
        ComplexElement::from_real(x.v.0[0].scale_i64(w))
    });
    for (deg, c) in [(0usize, &c0), (1usize, &c1)] {
        let d = c.coboundary(torus);
        let dd = d.coboundary(torus);
        for i in 0..30 {
            let gs: Vec<GroupElement> = (0..deg + 2)
                .map(|_| GroupElement::lattice(s.lattice()))
                .collect();
            let refs: Vec<&GroupElement> = gs.iter().collect();
            let x = BasePoint::plain(s.point());
            if !dd.eval(&refs, &x).is_zero() {
                return CheckResult::fail(name, i, format!("degree {deg}"));
            }
        }
    }
    CheckResult::pass(name, 60)
}

fn check_holomorphy_witnesses(ctx: &Ctx) -> CheckResult {
    let name = "holomorphy-of-v-parts";
    let torus = ctx.torus;
    let n = torus.rank();
    let mut s = ctx.sampler(21);
    let zero_v = RealVector::zero(torus.spec(), n);
    for i in 0..50 {
        let mu = s.integral_form(2, 5);
        let lam = s.lattice();
        let v = s.point();
        let jv = torus.apply_j(&v);
        // κ: f(v) = κ_λ(v) − κ_λ(0) satisfies f(iv) = i f(v)
        let f = |at: &RealVector| {
            trivializer_exponent(torus, &mu, &lam, at)
                .sub_ref(&trivializer_exponent(torus, &mu, &lam, &zero_v))
        };
        if f(&jv) != f(&v).times_i() {
            return CheckResult::fail(name, i, "kappa v-part not holomorphic".into());
        }
        // Ψ: same for the v-dependence at fixed group entries and B
        let mu2 = s.integral_form(2, 5);
        let b = hodge_2form(&s.rational_form(2), torus);
        let l2 = s.lattice();
        let g = |at: &RealVector| {
            universal_exponent(torus, &lam, &mu, &l2, &mu2, at, &b).sub_ref(&universal_exponent(
                torus, &lam, &mu, &l2, &mu2, &zero_v, &b,
            ))
        };
        if g(&jv) != g(&v).times_i() {
            return CheckResult::fail(name, i, "universal v-part not holomorphic".into());
        }
    }
    CheckResult::pass(name, 50)
}
