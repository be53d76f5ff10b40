//! The acceptance gate: eleven self-contained checks covering the forced
//! lower bounds, the algorithm guarantees, the tight constructions, and the
//! oracle itself. Each check reports one pass/fail line; `verify_all` runs
//! the lot and renders a machine-readable summary. Runtimes are printed for
//! reference, never asserted.

use std::time::Instant;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algorithms::{
    potential_trace, rescaled_min_f, rho_for, run, run_with, AlgoParams, AlgorithmSpec,
    AssignUConfig, AssignUDoubling,
};
use crate::adversaries::{
    gf_tight, greedy_lower_bound_report, halving, tight_symmetric, two_machine,
};
use crate::harness::random::{random_clustered, random_general, random_symmetric, RandomSpec};
use crate::oracle::{
    competitive_ratio, exact_opt, exhaustive_opt, greedy_bound, greedy_favorite_bound,
    greedy_symmetric_bound, lb_balance, lb_general, lb_symmetric, rescale_bound,
    two_machine_forced_ratio,
};
use crate::value::{format_exact, is_one, rat, to_f64, Rat};
use crate::Result;

const SEED_PREFIX_INVARIANT: u64 = 1002;
const SEED_KNOWN_OPT: u64 = 1004;
const SEED_SYMMETRIC: u64 = 1006;
const SEED_CLUSTERED: u64 = 1010;
const SEED_ORACLE: u64 = 1011;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub elapsed_ms: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{status} {:>2} {} ({} ms): {}",
            self.id, self.name, self.elapsed_ms, self.details
        )
    }

    fn json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub outcomes: Vec<CriterionOutcome>,
    pub passed: bool,
}

impl VerifySummary {
    pub fn json(&self) -> Value {
        json!({
            "passed": self.passed,
            "criteria": self.outcomes.iter().map(CriterionOutcome::json).collect::<Vec<_>>(),
        })
    }
}

fn check(
    id: usize,
    name: &'static str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, details) = match body() {
        Ok(result) => result,
        Err(error) => (false, format!("error: {error}")),
    };
    CriterionOutcome {
        id,
        name,
        passed,
        details,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn greedy() -> Result<AlgorithmSpec> {
    AlgorithmSpec::parse("greedy", &AlgoParams::default())
}

/// Greedy concedes exactly (m+f-1)/f on the staircase sequences, and the
/// claimed optimum of one is confirmed by search on the smaller shapes.
pub fn criterion_1() -> CriterionOutcome {
    check(1, "greedy forced to (m+f-1)/f", || {
        let mut notes = Vec::new();
        for (m, f) in [(4, 2), (6, 2), (6, 3), (8, 4), (3, 3)] {
            let (built, report) = greedy_lower_bound_report(m, f)?;
            let target = greedy_bound(m, f);
            if report.forced_ratio != target || built.target_ratio != target {
                return Ok((
                    false,
                    format!(
                        "(m={m},f={f}) forced {} instead of {}",
                        format_exact(&report.forced_ratio),
                        format_exact(&target)
                    ),
                ));
            }
            if m <= 6 {
                let best = exact_opt(&report.instance, None)?;
                if !is_one(&best.opt) {
                    return Ok((
                        false,
                        format!(
                            "(m={m},f={f}) search found optimum {} instead of 1",
                            format_exact(&best.opt)
                        ),
                    ));
                }
            }
            notes.push(format!("(m={m},f={f})={}", format_exact(&target)));
        }
        Ok((true, notes.join(" ")))
    })
}

/// After every greedy prefix, the f largest loads never exceed the total
/// minimum work released so far.
pub fn criterion_2() -> CriterionOutcome {
    check(2, "greedy prefix load invariant", || {
        let spec = greedy()?;
        let mut rng = RandomSpec::rng(SEED_PREFIX_INVARIANT);
        let mut prefixes = 0usize;
        for _ in 0..1000 {
            let instance = random_general(&mut rng, 8, 50)?;
            let schedule = run(&spec, &instance)?;
            let f = instance.f();
            let history = schedule.load_history(&instance);
            let mut released = Rat::zero();
            for (k, job) in instance.jobs().iter().enumerate() {
                released += job.pmin();
                let top = history[k + 1].sorted().top_sum(f);
                if top > released {
                    return Ok((
                        false,
                        format!(
                            "prefix {} of a {}-machine instance: top-{f} loads {} exceed released work {}",
                            k + 1,
                            instance.m(),
                            format_exact(&top),
                            format_exact(&released)
                        ),
                    ));
                }
                prefixes += 1;
            }
        }
        Ok((true, format!("0 violations over {prefixes} prefixes")))
    })
}

/// The halving opponent drives every tested algorithm to (1 + log2(m/f) + 1)/2
/// times its witness optimum of exactly one.
pub fn criterion_3() -> CriterionOutcome {
    check(3, "halving forces the logarithmic ratio", || {
        let defaults = AlgoParams::default();
        let specs = vec![
            AlgorithmSpec::parse("greedy", &defaults)?,
            AlgorithmSpec::parse("greedy-favorite", &defaults)?,
            AlgorithmSpec::parse("assign-u-doubling", &defaults)?,
            // the combined rule runs plain greedy off the two-group model
            AlgorithmSpec::parse("greedy", &defaults)?,
        ];
        let mut notes = Vec::new();
        for m in [4usize, 8, 16] {
            let expected_rounds = 1 + (m / 2).trailing_zeros() as usize;
            let expected_bound =
                Rat::new((1 + expected_rounds).into(), 2.into());
            for spec in &specs {
                let outcome = halving(spec, m, 2)?;
                if outcome.bound != expected_bound {
                    return Ok((
                        false,
                        format!(
                            "m={m}: bound {} instead of {}",
                            format_exact(&outcome.bound),
                            format_exact(&expected_bound)
                        ),
                    ));
                }
                if !is_one(&outcome.report.claimed_opt) {
                    return Ok((false, format!("m={m} {spec}: witness optimum not 1")));
                }
                if outcome.report.online_cost < outcome.bound {
                    return Ok((
                        false,
                        format!(
                            "m={m} {spec}: online {} below {}",
                            format_exact(&outcome.report.online_cost),
                            format_exact(&outcome.bound)
                        ),
                    ));
                }
            }
            notes.push(format!("m={m}>={}", format_exact(&expected_bound)));
        }
        Ok((true, notes.join(" ")))
    })
}

/// Fed the exact optimum as its estimate, the exponential-cost rule stays
/// within rho of the optimum and its potential never increases along the
/// run, measured against the oracle witness.
pub fn criterion_4(gamma: f64) -> CriterionOutcome {
    check(4, "assign-u within rho of a known optimum", || {
        let mut rng = RandomSpec::rng(SEED_KNOWN_OPT);
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let instance = random_general(&mut rng, 6, 10)?;
            let best = exact_opt(&instance, None)?;
            let rho = rho_for(gamma, instance.m(), instance.f());
            let params = AlgoParams {
                lambda: Some(best.opt.clone()),
                gamma,
                ..AlgoParams::default()
            };
            let spec = AlgorithmSpec::parse("assign-u", &params)?;
            let schedule = run(&spec, &instance)?;
            let slack = to_f64(schedule.makespan()) / (rho * to_f64(&best.opt));
            worst = worst.max(slack);
            if to_f64(schedule.makespan()) > rho * to_f64(&best.opt) + 1e-9 {
                return Ok((
                    false,
                    format!(
                        "makespan {} exceeds rho*opt = {:.6}*{}",
                        format_exact(schedule.makespan()),
                        rho,
                        format_exact(&best.opt)
                    ),
                ));
            }
            let trace = potential_trace(&instance, &best.witness, gamma, &best.opt)?;
            for (step, window) in trace.windows(2).enumerate() {
                if window[1] > window[0] + 1e-9 {
                    return Ok((
                        false,
                        format!(
                            "potential rose from {:.12} to {:.12} at job {}",
                            window[0],
                            window[1],
                            step + 1
                        ),
                    ));
                }
            }
        }
        Ok((
            true,
            format!("200 instances, worst makespan/(rho*opt) = {worst:.4}"),
        ))
    })
}

/// Without the estimate, doubling pays at most a factor four more, the
/// estimates double exactly, and the first estimate is the first job's
/// minimum time.
pub fn criterion_5(gamma: f64) -> CriterionOutcome {
    check(5, "doubling within 4 rho, estimates double", || {
        let mut rng = RandomSpec::rng(SEED_KNOWN_OPT);
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let instance = random_general(&mut rng, 6, 10)?;
            let best = exact_opt(&instance, None)?;
            let mut algo = AssignUDoubling::new(instance.m(), instance.f(), gamma)?;
            let schedule = run_with(&mut algo, &instance)?;
            let cap = 4.0 * algo.rho() * to_f64(&best.opt);
            let slack = to_f64(schedule.makespan()) / cap;
            worst = worst.max(slack);
            if to_f64(schedule.makespan()) > cap + 1e-9 {
                return Ok((
                    false,
                    format!(
                        "makespan {} exceeds 4*rho*opt = {cap:.6}",
                        format_exact(schedule.makespan())
                    ),
                ));
            }
            let phases = algo.phases();
            if phases.is_empty() {
                return Ok((false, "no phases recorded".into()));
            }
            if &phases[0].lambda != instance.jobs()[0].pmin() {
                return Ok((
                    false,
                    format!(
                        "first estimate {} is not the first job's minimum {}",
                        format_exact(&phases[0].lambda),
                        format_exact(instance.jobs()[0].pmin())
                    ),
                ));
            }
            for pair in phases.windows(2) {
                if pair[1].lambda != &pair[0].lambda * rat(2, 1) {
                    return Ok((
                        false,
                        format!(
                            "estimate stepped {} -> {}",
                            format_exact(&pair[0].lambda),
                            format_exact(&pair[1].lambda)
                        ),
                    ));
                }
            }
        }
        Ok((
            true,
            format!("200 instances, worst makespan/(4*rho*opt) = {worst:.4}"),
        ))
    })
}

/// Greedy's measured ratio on random two-group instances never exceeds the
/// three-term closed-form bound.
pub fn criterion_6() -> CriterionOutcome {
    check(6, "greedy symmetric bound holds", || {
        let spec = greedy()?;
        let mut rng = RandomSpec::rng(SEED_SYMMETRIC);
        let mut worst: f64 = 0.0;
        for _ in 0..500 {
            let instance = random_symmetric(&mut rng, 3, 10, &rat(1, 1), &rat(4, 1))?;
            let info = instance.symmetric_info().expect("symmetric sampler").clone();
            let best = exact_opt(&instance, None)?;
            let schedule = run(&spec, &instance)?;
            let ratio = competitive_ratio(schedule.makespan(), &best.opt)?;
            let bound = greedy_symmetric_bound(info.f, &info.s);
            worst = worst.max(to_f64(&ratio) / to_f64(&bound));
            if to_f64(&ratio) > to_f64(&bound) + 1e-9 {
                return Ok((
                    false,
                    format!(
                        "ratio {} above bound {} at f={} s={}",
                        format_exact(&ratio),
                        format_exact(&bound),
                        info.f,
                        format_exact(&info.s)
                    ),
                ));
            }
        }
        Ok((true, format!("500 instances, worst ratio/bound = {worst:.4}")))
    })
}

/// The favorite-only rule pays exactly 2 - 1/f + 1/s on its tight sequence,
/// with a witness achieving one.
pub fn criterion_7() -> CriterionOutcome {
    check(7, "favorite-only rule tight at 2-1/f+1/s", || {
        let spec = AlgorithmSpec::parse("greedy-favorite", &AlgoParams::default())?;
        let mut notes = Vec::new();
        for (f, s) in [(1, rat(1, 1)), (2, rat(2, 1)), (3, rat(3, 2))] {
            let built = gf_tight(f, &s)?;
            let target = greedy_favorite_bound(f, &s);
            if built.target_ratio != target {
                return Ok((false, format!("f={f}: construction targets the wrong ratio")));
            }
            let schedule = run(&spec, &built.instance)?;
            if schedule.makespan() != &target {
                return Ok((
                    false,
                    format!(
                        "f={f} s={}: online {} instead of {}",
                        format_exact(&s),
                        format_exact(schedule.makespan()),
                        format_exact(&target)
                    ),
                ));
            }
            if !is_one(built.witness.makespan()) {
                return Ok((false, format!("f={f}: witness optimum not 1")));
            }
            notes.push(format!("(f={f},s={})={}", format_exact(&s), format_exact(&target)));
        }
        Ok((true, notes.join(" ")))
    })
}

/// The five tight constructions for greedy on the two-group model: the two
/// exact regimes match their closed forms outright, the three drip regimes
/// match within the advertised finite-depth slack.
pub fn criterion_8() -> CriterionOutcome {
    check(8, "symmetric tight constructions match closed forms", || {
        let eps = rat(1, 10_000);
        let mut notes = Vec::new();
        for s in [rat(1, 1), rat(13, 10), rat(2, 1)] {
            let outcome = tight_symmetric(1, 1, &s, 8, &eps)?;
            if outcome.report.forced_ratio != outcome.closed_form
                || !outcome.slack.is_zero()
                || !is_one(&outcome.report.claimed_opt)
            {
                return Ok((
                    false,
                    format!(
                        "case 1 s={}: forced {} vs closed {}",
                        format_exact(&s),
                        format_exact(&outcome.report.forced_ratio),
                        format_exact(&outcome.closed_form)
                    ),
                ));
            }
            notes.push(format!("c1(s={})={}", format_exact(&s), format_exact(&outcome.closed_form)));
        }
        for (f, s) in [(2, rat(3, 1)), (3, rat(4, 1))] {
            let outcome = tight_symmetric(5, f, &s, 8, &eps)?;
            let expected = rat(3 * f as i64 - 1, f as i64);
            if outcome.report.forced_ratio != expected || !is_one(&outcome.report.claimed_opt) {
                return Ok((
                    false,
                    format!(
                        "case 5 f={f} s={}: forced {} instead of {}",
                        format_exact(&s),
                        format_exact(&outcome.report.forced_ratio),
                        format_exact(&expected)
                    ),
                ));
            }
            notes.push(format!("c5(f={f})={}", format_exact(&expected)));
        }
        let drip_plans: [(u8, usize, Rat, usize); 6] = [
            (2, 2, rat(1, 1), 8),
            (2, 2, rat(6, 5), 8),
            (2, 2, rat(3, 2), 8),
            (3, 3, rat(6, 5), 8),
            (3, 3, rat(7, 5), 8),
            (4, 4, rat(3, 2), 9),
        ];
        for (case, f, s, depth) in drip_plans {
            let outcome = tight_symmetric(case, f, &s, depth, &eps)?;
            let gap = (&outcome.report.forced_ratio - &outcome.closed_form).abs();
            let mut tail = rat(1, 1);
            for _ in 0..depth {
                tail *= &s - rat(1, 1);
            }
            let allowance = rat(10, 1) * tail + rat(100, 1) * &eps;
            if gap > allowance {
                return Ok((
                    false,
                    format!(
                        "case {case} f={f} s={}: gap {} above allowance {}",
                        format_exact(&s),
                        format_exact(&gap),
                        format_exact(&allowance)
                    ),
                ));
            }
            if outcome.slack > allowance {
                return Ok((
                    false,
                    format!("case {case}: advertised slack looser than the allowance"),
                ));
            }
            notes.push(format!(
                "c{case}(f={f},s={}) gap={:.2e}",
                format_exact(&s),
                to_f64(&gap)
            ));
        }
        Ok((true, notes.join(" ")))
    })
}

/// The adaptive two-machine game extracts at least min{1+s^2/(s+1), 1+1/s}
/// from every implemented algorithm; the threshold-switching rule meets it
/// exactly, and its worst grid value stays under the proven ceiling.
pub fn criterion_9() -> CriterionOutcome {
    check(9, "two-machine game forces the threshold", || {
        let defaults = AlgoParams::default();
        let unit_estimate = AlgoParams {
            lambda: Some(rat(1, 1)),
            ..AlgoParams::default()
        };
        let specs = vec![
            AlgorithmSpec::parse("greedy", &defaults)?,
            AlgorithmSpec::parse("greedy-favorite", &defaults)?,
            AlgorithmSpec::parse("ggf", &defaults)?,
            AlgorithmSpec::parse("assign-u", &unit_estimate)?,
            AlgorithmSpec::parse("assign-u-doubling", &defaults)?,
            AlgorithmSpec::parse("rescale:3/2:greedy", &defaults)?,
        ];
        let grid = [rat(1, 1), rat(6, 5), rat(3703, 2500), rat(2, 1), rat(3, 1)];
        let mut ggf_worst: f64 = 0.0;
        let mut notes = Vec::new();
        for s in &grid {
            let bound = two_machine_forced_ratio(s);
            for spec in &specs {
                let outcome = two_machine(spec, s)?;
                if !outcome.guaranteed {
                    return Ok((
                        false,
                        format!("{spec} at s={}: no opener matched", format_exact(s)),
                    ));
                }
                let forced = to_f64(&outcome.report.forced_ratio);
                if forced < to_f64(&bound) - 1e-9 {
                    return Ok((
                        false,
                        format!(
                            "{spec} at s={}: forced {} below {}",
                            format_exact(s),
                            format_exact(&outcome.report.forced_ratio),
                            format_exact(&bound)
                        ),
                    ));
                }
                if matches!(spec, AlgorithmSpec::Ggf { .. }) {
                    if (forced - to_f64(&bound)).abs() > 1e-9 {
                        return Ok((
                            false,
                            format!(
                                "threshold rule off its bound at s={}: {} vs {}",
                                format_exact(s),
                                format_exact(&outcome.report.forced_ratio),
                                format_exact(&bound)
                            ),
                        ));
                    }
                    ggf_worst = ggf_worst.max(forced);
                }
            }
            notes.push(format!("s={}>={}", format_exact(s), format_exact(&bound)));
        }
        if ggf_worst > 1.7549 + 1e-4 {
            return Ok((
                false,
                format!("threshold rule exceeded the ceiling: {ggf_worst:.6}"),
            ));
        }
        notes.push(format!("ggf max {ggf_worst:.6} <= 1.7549"));
        Ok((true, notes.join(" ")))
    })
}

/// On clustered instances, wrapping greedy in the rescaler keeps the ratio
/// within c*(m+f_hat-1)/f_hat, where f_hat is the effective favorite count
/// the wrapper itself reports.
pub fn criterion_10() -> CriterionOutcome {
    check(10, "rescaling bound with effective favorites", || {
        let mut rng = RandomSpec::rng(SEED_CLUSTERED);
        let thresholds = [rat(11, 10), rat(5, 4), rat(3, 2), rat(2, 1)];
        let mut worst: f64 = 0.0;
        for index in 0..100 {
            let c = &thresholds[index % thresholds.len()];
            let instance = random_clustered(&mut rng, 5, 8, c)?;
            let spec = AlgorithmSpec::parse(
                &format!("rescale:{}:greedy", format_exact(c)),
                &AlgoParams::default(),
            )?;
            let schedule = run(&spec, &instance)?;
            let best = exact_opt(&instance, None)?;
            let ratio = competitive_ratio(schedule.makespan(), &best.opt)?;
            let f_hat = rescaled_min_f(&instance, c);
            let bound = rescale_bound(c, instance.m(), f_hat);
            worst = worst.max(to_f64(&ratio) / to_f64(&bound));
            if ratio > bound {
                return Ok((
                    false,
                    format!(
                        "instance {index}: ratio {} above c(m+f_hat-1)/f_hat = {} (f_hat={f_hat})",
                        format_exact(&ratio),
                        format_exact(&bound)
                    ),
                ));
            }
        }
        Ok((true, format!("100 instances, worst ratio/bound = {worst:.4}")))
    })
}

/// The two optimum solvers agree, and every closed-form lower bound is a
/// true lower bound on the exact optimum.
pub fn criterion_11() -> CriterionOutcome {
    check(11, "oracle agreement and bound soundness", || {
        let mut rng = RandomSpec::rng(SEED_ORACLE);
        for index in 0..500 {
            let instance = random_general(&mut rng, 4, 8)?;
            let full = exhaustive_opt(&instance)?;
            let pruned = exact_opt(&instance, None)?;
            if full.opt != pruned.opt {
                return Ok((
                    false,
                    format!(
                        "solvers disagree on instance {index}: {} vs {}",
                        format_exact(&full.opt),
                        format_exact(&pruned.opt)
                    ),
                ));
            }
        }
        for index in 0..1000 {
            let instance = if index % 2 == 0 {
                random_general(&mut rng, 5, 8)?
            } else {
                random_symmetric(&mut rng, 3, 8, &rat(1, 1), &rat(4, 1))?
            };
            let best = exact_opt(&instance, None)?;
            if lb_general(&instance) > best.opt {
                return Ok((false, format!("general bound above optimum at {index}")));
            }
            if instance.symmetric_info().is_some() {
                if lb_symmetric(&instance)? > best.opt {
                    return Ok((false, format!("group bound above optimum at {index}")));
                }
                if lb_balance(&instance)? > best.opt {
                    return Ok((false, format!("balance bound above optimum at {index}")));
                }
            }
        }
        Ok((
            true,
            "500 solver agreements, 1000 sound lower bounds".into(),
        ))
    })
}

/// Runs the whole suite. An invalid gamma is a configuration error and
/// aborts before any criterion runs.
pub fn verify_all(gamma: f64) -> Result<VerifySummary> {
    AssignUConfig::check(gamma, None)?;
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(gamma),
        criterion_5(gamma),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ];
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(VerifySummary { outcomes, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_gamma_is_rejected_before_running() {
        assert!(verify_all(1.0).is_err());
        assert!(verify_all(f64::NAN).is_err());
    }

    #[test]
    fn outcome_lines_name_their_verdict() {
        let outcome = CriterionOutcome {
            id: 3,
            name: "demo",
            passed: false,
            details: "broke".into(),
            elapsed_ms: 7,
        };
        assert_eq!(outcome.line(), "FAIL  3 demo (7 ms): broke");
        assert_eq!(outcome.json()["passed"], serde_json::json!(false));
    }
}
