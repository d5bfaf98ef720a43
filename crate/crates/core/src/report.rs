//! Machine-readable run reports and the shared command runner behind the CLI
//! and the C API. Reports are byte-identical for a fixed (spec, seed); wall
//! time is only included on request.

use crate::algebra::ComplexElement;
use crate::cocycles::{
    isogeny_pullback, isogeny_pullback_difference, universal_exponent, GerbeCocycle,
};
use crate::forms::{hodge_2form, IntegralForm};
use crate::ranks::{self, GerbeClass};
use crate::rational::Rational;
use crate::sample::Sampler;
use crate::specfile::{self, SpecError, TorusSpecFile};
use crate::torus::Torus;
use crate::verify;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyTorus,
    Ns,
    Htb,
    HtbCrosscheck,
    Equiv,
    EvalGerbe,
    EvalUniversal,
    Pullback,
    Verify,
}

impl Command {
    pub fn parse(name: &str) -> Option<Command> {
        Some(match name {
            "verify-torus" => Command::VerifyTorus,
            "ns" => Command::Ns,
            "htb" => Command::Htb,
            "htb-crosscheck" => Command::HtbCrosscheck,
            "equiv" => Command::Equiv,
            "eval-gerbe" => Command::EvalGerbe,
            "eval-universal" => Command::EvalUniversal,
            "pullback" => Command::Pullback,
            "verify" => Command::Verify,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyTorus => "verify-torus",
            Command::Ns => "ns",
            Command::Htb => "htb",
            Command::HtbCrosscheck => "htb-crosscheck",
            Command::Equiv => "equiv",
            Command::EvalGerbe => "eval-gerbe",
            Command::EvalUniversal => "eval-universal",
            Command::Pullback => "pullback",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub samples: usize,
    pub embed: bool,
    pub timing: bool,
    /// for `pullback`: restrict to one n instead of the −3..3 sweep
    pub pullback_n: Option<i64>,
    /// for `eval-gerbe`: index into the HTB basis
    pub e_index: usize,
    /// for `equiv`: the two class files
    pub class1: Option<String>,
    pub class2: Option<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            samples: 500,
            embed: false,
            timing: false,
            pullback_n: None,
            e_index: 0,
            class1: None,
            class2: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub fingerprint: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command:     {}\n", self.command));
        out.push_str(&format!("fingerprint: {}\n", self.fingerprint));
        out.push_str(&format!("seed:        {}\n", self.seed));
        out.push_str(&format!("status:      {}\n", if self.passed { "PASS" } else { "FAIL" }));
        out.push_str(&format!(
            "results:\n{}\n",
            serde_json::to_string_pretty(&self.results).unwrap()
        ));
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time_ms:     {ms}\n"));
        }
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("invalid input: {0}")]
    Input(String),
}

fn kernel_json(k: &ranks::IntegerKernel) -> Value {
    let tuples = crate::forms::tuples(k.rank_lattice, k.degree);
    json!({
        "rank": k.rank(),
        "index_tuples": tuples,
        "basis": k.basis.iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn complex_json(z: &ComplexElement, embed: bool) -> Value {
    let mut v = json!({
        "re": z.re.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "im": z.im.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if embed {
        if let (Some(re), Some(im)) = (z.re.embed(), z.im.embed()) {
            // display-only numeric value of exp(2πi·z)
            let modulus = (-2.0 * std::f64::consts::PI * im).exp();
            let angle = 2.0 * std::f64::consts::PI * re;
            v["exp_approx"] = json!({
                "re": modulus * angle.cos(),
                "im": modulus * angle.sin(),
            });
        }
    }
    v
}

/// JSON description of a gerbe class: `e` names coefficients of the integral
/// 3-form on sorted triples, `b_rational` a rational 2-form whose Hodge
/// projection is B, and `b_shift_mu` an optional integral 2-form added as μ^H.
#[derive(Debug, serde::Deserialize)]
pub struct ClassFile {
    pub e: Vec<Rational>,
    pub b_rational: Vec<Rational>,
    #[serde(default)]
    pub b_shift_mu: Option<Vec<Rational>>,
}

pub fn parse_class(torus: &Torus, text: &str) -> Result<GerbeClass, RunError> {
    let file: ClassFile =
        serde_json::from_str(text).map_err(|e| RunError::Input(e.to_string()))?;
    let n = torus.rank();
    let to_big = |v: &[Rational]| -> Result<Vec<num_bigint::BigInt>, RunError> {
        v.iter()
            .map(|r| {
                r.as_integer()
                    .ok_or_else(|| RunError::Input(format!("expected integer, found {r}")))
            })
            .collect()
    };
    let e = IntegralForm::new(3, n, to_big(&file.e)?)
        .map_err(|e| RunError::Input(e.to_string()))?;
    let w = crate::forms::RationalForm::new(2, n, file.b_rational.clone())
        .map_err(|e| RunError::Input(e.to_string()))?;
    let mut b = hodge_2form(&w, torus);
    if let Some(mu) = &file.b_shift_mu {
        let mu = IntegralForm::new(2, n, to_big(mu)?)
            .map_err(|e| RunError::Input(e.to_string()))?;
        b = b.add(&crate::forms::hodge_integral_2form(&mu, torus));
    }
    ranks::GerbeClass::new(torus, b, e).map_err(|e| RunError::Input(e.to_string()))
}

/// Runs one command against a parsed torus; shared by the CLI and the C API.
pub fn run_command(
    torus: &Torus,
    file: &TorusSpecFile,
    command: Command,
    opts: &RunOptions,
) -> Result<Report, RunError> {
    let start = std::time::Instant::now();
    let (passed, results) = match command {
        Command::VerifyTorus => {
            // parsing already proved the invariants; re-state them
            (
                true,
                json!({
                    "g": torus.g(),
                    "algebra_dim": torus.spec().dim(),
                    "j_squared_is_minus_identity": true,
                    "period_relation_holds": true,
                }),
            )
        }
        Command::Ns => {
            let k = ranks::ns_group(torus);
            (true, json!({ "ns": kernel_json(&k) }))
        }
        Command::Htb => {
            let k = ranks::htb_group(torus);
            (true, json!({ "htb": kernel_json(&k) }))
        }
        Command::HtbCrosscheck => {
            let a = ranks::htb_group(torus);
            let b = ranks::htb_via_tau(torus);
            let same = a.basis == b.basis;
            (
                same,
                json!({
                    "j_form": kernel_json(&a),
                    "tau_form": kernel_json(&b),
                    "identical_lattices": same,
                }),
            )
        }
        Command::Equiv => {
            let (Some(c1), Some(c2)) = (&opts.class1, &opts.class2) else {
                return Err(RunError::Input(
                    "equiv needs --class1 and --class2 files".into(),
                ));
            };
            let g1 = parse_class(torus, c1)?;
            let g2 = parse_class(torus, c2)?;
            let eq = ranks::classes_equivalent(&g1, &g2, torus)
                .map_err(|e| RunError::Input(e.to_string()))?;
            (true, json!({ "equivalent": eq }))
        }
        Command::EvalGerbe => {
            let htb = ranks::htb_group(torus);
            let mut s = Sampler::salted(torus, opts.seed, 101);
            let e = if htb.rank() == 0 {
                IntegralForm::zero(3, torus.rank())
            } else if opts.e_index < htb.rank() {
                htb.forms().swap_remove(opts.e_index)
            } else {
                return Err(RunError::Input(format!(
                    "--e-index {} out of range (htb rank {})",
                    opts.e_index,
                    htb.rank()
                )));
            };
            let b = hodge_2form(&s.rational_form(2), torus);
            let class = GerbeClass { b, e };
            let co = GerbeCocycle::new(torus, class);
            let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
            let value = co.exponent(&l1, &l2, &v);
            let mut integral = true;
            let mut first_bad = None;
            for i in 0..opts.samples {
                let (a, b2, c, w) = (s.lattice(), s.lattice(), s.lattice(), s.point());
                let d = verify::gerbe_delta(&co, &a, &b2, &c, &w);
                if d.as_integer().is_none() {
                    integral = false;
                    first_bad = Some(json!({"sample": i, "value": d.to_string()}));
                    break;
                }
            }
            (
                integral,
                json!({
                    "e_index": opts.e_index,
                    "sample_exponent": {
                        "l1": l1.0, "l2": l2.0,
                        "value": complex_json(&value, opts.embed),
                    },
                    "boundary_integral": integral,
                    "first_counterexample": first_bad,
                }),
            )
        }
        Command::EvalUniversal => {
            let mut s = Sampler::salted(torus, opts.seed, 102);
            let mu1 = s.integral_form(2, 5);
            let mu2 = s.integral_form(2, 5);
            let b = hodge_2form(&s.rational_form(2), torus);
            let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
            let value = universal_exponent(torus, &l1, &mu1, &l2, &mu2, &v, &b);
            (
                true,
                json!({
                    "l1": l1.0, "l2": l2.0,
                    "mu1": mu1.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "mu2": mu2.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "value": complex_json(&value, opts.embed),
                }),
            )
        }
        Command::Pullback => {
            let htb = ranks::htb_group(torus);
            let mut s = Sampler::salted(torus, opts.seed, 103);
            let ns: Vec<i64> = match opts.pullback_n {
                Some(n) => vec![n],
                None => (-3..=3).collect(),
            };
            let mut all_ok = true;
            let mut rows = Vec::new();
            for &n in &ns {
                let b = hodge_2form(&s.rational_form(2), torus);
                let e = s.combination(&htb.forms(), 3);
                let class = GerbeClass { b, e };
                let mut integral = true;
                let mut exact_zero = true;
                for _ in 0..opts.samples.min(200) {
                    let (l1, l2, v) = (s.lattice(), s.lattice(), s.point());
                    let d = isogeny_pullback_difference(torus, n, &class, &l1, &l2, &v);
                    if d.as_integer().is_none() {
                        integral = false;
                        break;
                    }
                    if !d.is_zero() {
                        exact_zero = false;
                    }
                }
                let plus = class.scale((n * n + n * n * n) / 2);
                let minus = GerbeClass { b: class.b.clone(), e: class.e.neg() }
                    .scale((n * n - n * n * n) / 2);
                let class_identity = plus.add(&minus) == isogeny_pullback(n, &class);
                all_ok &= integral && class_identity;
                rows.push(json!({
                    "n": n,
                    "difference_integral": integral,
                    "difference_exactly_zero": exact_zero,
                    "class_identity_holds": class_identity,
                }));
            }
            (all_ok, json!({ "pullback": rows }))
        }
        Command::Verify => {
            let report = verify::run_identity_suite(torus, opts.seed, opts.samples);
            let passed = report.passed;
            (passed, serde_json::to_value(&report).unwrap())
        }
    };
    let timing_ms = opts.timing.then(|| start.elapsed().as_millis());
    Ok(Report {
        command: command.name().to_string(),
        fingerprint: specfile::fingerprint(file),
        seed: opts.seed,
        samples: opts.samples,
        passed,
        results,
        timing_ms,
    })
}

/// Convenience wrapper: parse text, run, return the report.
pub fn run_on_text(
    spec_text: &str,
    command: Command,
    opts: &RunOptions,
) -> Result<Report, RunError> {
    let (torus, file) = specfile::parse_spec(spec_text)?;
    run_command(&torus, &file, command, opts)
}
