//! The verification suites. Each one enumerates its inputs in a fixed order,
//! checks them in parallel and keeps that order in the report.

use logjet::combinat::{binom, gamma_exact, mbinom, qbinom};
use logjet::homotopy::{h, homotopy_check_at};
use logjet::indexing::{indices_up_to, slot_set, symbols_in_window};
use logjet::{Chain, DeltaSymbol, JetComplex, MultiIndex, Params, RelationSpec};
use rayon::prelude::*;

use crate::config::{RunConfig, Suite};
use crate::report::{Failure, Inconsistency, SuiteReport};

/// Largest `k` in the `qbinom` p-integrality sweep.
pub const INTEGRALITY_MAX_K: u64 = 200;

pub enum Outcome {
    Pass,
    Fail { input: String, residual: String },
    Inconsistent { input: String, error: String },
}

fn outcome_of(input: impl FnOnce() -> String, result: logjet::Result<Option<String>>) -> Outcome {
    match result {
        Ok(None) => Outcome::Pass,
        Ok(Some(residual)) => Outcome::Fail {
            input: input(),
            residual,
        },
        Err(e) => Outcome::Inconsistent {
            input: input(),
            error: e.to_string(),
        },
    }
}

fn collect(suite: Suite, outcomes: Vec<Outcome>) -> SuiteReport {
    let mut report = SuiteReport {
        suite,
        cases: outcomes.len(),
        failures: Vec::new(),
        inconsistencies: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Pass => {}
            Outcome::Fail { input, residual } => report.failures.push(Failure { input, residual }),
            Outcome::Inconsistent { input, error } => {
                report.inconsistencies.push(Inconsistency { input, error })
            }
        }
    }
    report
}

fn check_all<T: Sync>(inputs: &[T], check: impl Fn(&T) -> Outcome + Sync + Send) -> Vec<Outcome> {
    inputs.par_iter().map(check).collect()
}

fn residual_if_nonzero(cx: &JetComplex, v: &Chain) -> logjet::Result<Option<String>> {
    Ok((!cx.quotient_zero(v)?).then(|| v.to_string()))
}

pub fn run_suite(config: &RunConfig, suite: Suite) -> SuiteReport {
    let params = config.params();
    let outcomes = match suite {
        Suite::Binomials => binomials(&params),
        Suite::Gamma => gamma_cases(&params),
        Suite::Ddzero => ddzero(config),
        Suite::Relations => relations(config),
        Suite::Homotopy => homotopy(config),
        Suite::Lemmas => lemmas(config),
    };
    collect(suite, outcomes)
}

#[derive(Debug, Clone, Copy)]
enum BinomialCase {
    /// `qbinom(p^m q + k, t)` for `q >= 1`, `k < t <= p^m`.
    Vanishing { q: u64, k: u64, t: u64 },
    /// `qbinom(p^m q + t, t)`.
    Diagonal { q: u64, t: u64 },
    /// `qbinom(k, j)` is p-integral and `binom = mbinom * qbinom`.
    Integral { k: u64, j: u64 },
}

fn binomials(params: &Params) -> Vec<Outcome> {
    let (p, pm) = (params.p() as u64, params.pm() as u64);
    let mut cases = Vec::new();
    for q in 1..=p * p {
        for k in 0..pm {
            for t in k + 1..=pm {
                cases.push(BinomialCase::Vanishing { q, k, t });
            }
        }
    }
    for q in 0..=p * p {
        for t in 0..=pm {
            cases.push(BinomialCase::Diagonal { q, t });
        }
    }
    for k in 0..=INTEGRALITY_MAX_K {
        for j in 0..=k {
            cases.push(BinomialCase::Integral { k, j });
        }
    }
    check_all(&cases, |case| {
        let result = (|| -> logjet::Result<Option<String>> {
            Ok(match *case {
                BinomialCase::Vanishing { q, k, t } => {
                    let got = qbinom(params, pm * q + k, t)?.residue().residue();
                    let want = if t < pm { 0 } else { 1 };
                    (got != want).then(|| format!("{got} (expected {want})"))
                }
                BinomialCase::Diagonal { q, t } => {
                    let got = qbinom(params, pm * q + t, t)?.residue().residue();
                    (got != 1).then(|| format!("{got} (expected 1)"))
                }
                BinomialCase::Integral { k, j } => {
                    let qb = qbinom(params, k, j)?;
                    let lhs = binom(k, j)? * qb.denom();
                    let rhs = mbinom(params, k, j)? * qb.numer();
                    (lhs != rhs).then(|| format!("binom*den={lhs}, mbinom*num={rhs}"))
                }
            })
        })();
        outcome_of(
            || match *case {
                BinomialCase::Vanishing { q, k, t } => {
                    format!("qbinom({}, {t}) with q={q}, k={k}", pm * q + k)
                }
                BinomialCase::Diagonal { q, t } => {
                    format!("qbinom({}, {t}) with q={q}", pm * q + t)
                }
                BinomialCase::Integral { k, j } => format!("qbinom({k}, {j}) integrality"),
            },
            result,
        )
    })
}

/// The value the case analysis predicts for scalar `Gamma_{a,b,c}` with
/// `a + b + c = p^m q + k`, `k < p^m`, `a + c <= p^m`.
pub fn gamma_case_value(params: &Params, a: u64, b: u64, c: u64) -> logjet::Result<u32> {
    let (p, pm) = (params.p(), params.pm() as u64);
    let q = (a + b + c) / pm;
    let k = (a + b + c) % pm;
    if q >= 1 && (a, b, c) == (pm, pm * (q - 1) + k, 0) {
        return Ok((q % p as u64) as u32);
    }
    if q >= 1 && (a, b, c) == (0, pm * (q - 1) + k, pm) {
        return Ok(1);
    }
    if b >= pm * q {
        return Ok(gamma_exact(params, a, b - pm * q, c)?.residue().residue());
    }
    Ok(0)
}

fn gamma_cases(params: &Params) -> Vec<Outcome> {
    let (p, pm) = (params.p() as u64, params.pm() as u64);
    let mut cases = Vec::new();
    for q in 0..=p * p {
        for k in 0..pm {
            let total = pm * q + k;
            for a in 0..=pm.min(total) {
                for c in 0..=(pm - a).min(total - a) {
                    cases.push((a, total - a - c, c));
                }
            }
        }
    }
    check_all(&cases, |&(a, b, c)| {
        let result = (|| -> logjet::Result<Option<String>> {
            let got = gamma_exact(params, a, b, c)?.residue().residue();
            let want = gamma_case_value(params, a, b, c)?;
            Ok((got != want).then(|| format!("{got} (expected {want})")))
        })();
        outcome_of(|| format!("Gamma({a},{b},{c})"), result)
    })
}

/// `eta^{I}` with `|I| <= max_weight + p^m`, then symbols of degrees
/// `1..max_degree` with `|I| <= max_weight`.
fn ddzero(config: &RunConfig) -> Vec<Outcome> {
    let params = config.params();
    let cx = JetComplex::new(params);
    let mut inputs: Vec<DeltaSymbol> =
        indices_up_to(params.n(), config.max_weight + params.pm() as u64)
            .into_iter()
            .map(DeltaSymbol::eta)
            .collect();
    for r in 1..config.max_degree {
        inputs.extend(symbols_in_window(&params, config.max_weight, r));
    }
    check_all(&inputs, |s| {
        let result = (|| {
            let r = s.degree();
            let x = Chain::symbol(&params, s.clone())?;
            let dd = cx.differential(&cx.differential(&x, r)?, r + 1)?;
            residual_if_nonzero(&cx, &dd)
        })();
        outcome_of(|| s.to_string(), result)
    })
}

/// `h` of every relation of degree `2..=max_degree + 1` with `|I| <= max_weight`.
fn relations(config: &RunConfig) -> Vec<Outcome> {
    let params = config.params();
    let cx = JetComplex::new(params);
    let mut specs: Vec<RelationSpec> = Vec::new();
    for eta in indices_up_to(params.n(), config.max_weight) {
        for r in 2..=config.max_degree + 1 {
            specs.extend(cx.relation_specs(&eta, r));
        }
    }
    check_all(&specs, |spec| {
        let result = (|| {
            let image = h(&cx, &cx.relation_chain(spec)?, spec.degree())?;
            residual_if_nonzero(&cx, &image)
        })();
        outcome_of(|| spec.to_string(), result)
    })
}

/// The homotopy identity in coordinate `n` and, conjugated, in every `i < n`.
fn homotopy(config: &RunConfig) -> Vec<Outcome> {
    let params = config.params();
    let cx = JetComplex::new(params);
    let n = params.n();
    let mut inputs: Vec<(usize, DeltaSymbol)> = Vec::new();
    for i in (1..=n).rev() {
        for r in 0..=config.max_degree {
            inputs.extend(
                symbols_in_window(&params, config.max_weight, r)
                    .into_iter()
                    .map(|s| (i, s)),
            );
        }
    }
    check_all(&inputs, |(i, s)| {
        let result = homotopy_check_at(&cx, *i, s, s.degree())
            .map(|c| (!c.passed).then(|| c.residual.to_string()));
        outcome_of(|| format!("h_{i} on {s}"), result)
    })
}

enum LemmaCase {
    /// `h(d eta^{I}) = eta^{I}` if `i_n > 0`, else 0, exactly.
    DegreeZero(MultiIndex),
    /// `(h d + d h) d(i; k) = d(i; k)` for `n = 1`.
    OneVariable(u32, u32),
    /// `(h d + d h)(eta_n^{i} (dlog t)^J)`: 0 if `i = j_n = 0`, else identity.
    LastCoordinate(u32, MultiIndex),
}

fn lemmas(config: &RunConfig) -> Vec<Outcome> {
    let params = config.params();
    let n = params.n();
    let pm = params.pm();
    let cx = JetComplex::new(params);
    let line_params = params.with_n(1).expect("n = 1 is valid");
    let line = JetComplex::new(line_params);

    let mut cases = Vec::new();
    for i in indices_up_to(n, config.max_weight + pm as u64) {
        cases.push(LemmaCase::DegreeZero(i));
    }
    for i in 0..=config.max_weight as u32 {
        for k in 1..=pm {
            cases.push(LemmaCase::OneVariable(i, k));
        }
    }
    for i in 0..=config.max_weight as u32 {
        for j in slot_set(&params) {
            cases.push(LemmaCase::LastCoordinate(i, j));
        }
    }

    // (h d + d h)(x) for a degree-1 symbol
    let both = |cx: &JetComplex, x: &Chain| -> logjet::Result<Chain> {
        let hd = h(cx, &cx.differential(x, 1)?, 2)?;
        hd.add(&cx.differential(&h(cx, x, 1)?, 0)?)
    };

    check_all(&cases, |case| match case {
        LemmaCase::DegreeZero(i) => {
            let result = (|| {
                let x = Chain::symbol(&params, DeltaSymbol::eta(i.clone()))?;
                let got = h(&cx, &cx.differential(&x, 0)?, 1)?;
                let want = if i.last() > 0 {
                    x
                } else {
                    Chain::zero(&params, 0)
                };
                let diff = got.sub(&want)?;
                Ok((!diff.is_zero()).then(|| diff.to_string()))
            })();
            outcome_of(|| format!("h(d eta^{i})"), result)
        }
        LemmaCase::OneVariable(i, k) => {
            let s = DeltaSymbol::new(MultiIndex::from(vec![*i]), vec![MultiIndex::from(vec![*k])]);
            let result = (|| {
                let x = Chain::symbol(&line_params, s.clone())?;
                residual_if_nonzero(&line, &both(&line, &x)?.sub(&x)?)
            })();
            outcome_of(|| format!("(hd+dh) {s}, n=1"), result)
        }
        LemmaCase::LastCoordinate(i, j) => {
            let s = DeltaSymbol::new(MultiIndex::last_only(*i, n), vec![j.clone()]);
            let result = (|| {
                let x = Chain::symbol(&params, s.clone())?;
                let want = if *i == 0 && j.last() == 0 {
                    Chain::zero(&params, 1)
                } else {
                    x.clone()
                };
                residual_if_nonzero(&cx, &both(&cx, &x)?.sub(&want)?)
            })();
            outcome_of(|| format!("(hd+dh) {s}"), result)
        }
    })
}
