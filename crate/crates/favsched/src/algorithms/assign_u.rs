//! Exponential-cost assignment with a load estimate, plus the estimate
//! doubling wrapper that removes the need to know the optimum in advance.
//!
//! With estimate L and base a = 1 + 1/gamma, a job goes to the machine
//! minimizing a^((load + time)/L) - a^(load/L). When L is at least the
//! optimal makespan, no machine climbs past rho * L where
//! rho = log_a(gamma/(gamma-1) * m/f) + 1. The wrapper starts from the first
//! job's minimum time and doubles the estimate whenever the chosen placement
//! would breach that cap, forgetting previous phases' loads; the total over
//! all phases stays within 4 * rho of the optimum.
//!
//! The exponential scores are evaluated in f64 — only the argmin enters the
//! schedule, and all bookkeeping of actual loads stays exact.

use super::OnlineAlgorithm;
use crate::model::{Instance, Job, LoadVec, Schedule};
use crate::value::{to_f64, Rat};
use crate::{Error, Result};

use num_traits::Zero;

/// Parameter validation shared by the fixed-estimate and doubling variants.
pub struct AssignUConfig;

impl AssignUConfig {
    pub fn check(gamma: f64, lambda: Option<&Rat>) -> Result<()> {
        if !gamma.is_finite() || gamma <= 1.0 {
            return Err(Error::Config(format!(
                "gamma must be a finite value above 1, got {gamma}"
            )));
        }
        if let Some(lambda) = lambda {
            if *lambda <= Rat::zero() {
                return Err(Error::Config(format!(
                    "load estimate lambda must be positive, got {lambda}"
                )));
            }
        }
        Ok(())
    }
}

/// Machine minimizing the exponential score increase at estimate `lambda`;
/// ties go to the smallest index.
pub fn assign_u_step(job: &Job, loads: &LoadVec, gamma: f64, lambda: f64) -> usize {
    let a = 1.0 + 1.0 / gamma;
    let mut best: Option<(f64, usize)> = None;
    for (machine, load) in loads.iter() {
        let l = to_f64(load) / lambda;
        let p = to_f64(job.time_on(machine)) / lambda;
        let delta = a.powf(l + p) - a.powf(l);
        match &best {
            Some((current, _)) if delta >= *current => {}
            _ => best = Some((delta, machine)),
        }
    }
    best.expect("at least one machine").1
}

/// log_a(γ/(γ−1) · m/f) + 1 with a = 1 + 1/γ: the guarantee factor when the
/// estimate is at least the optimum.
pub fn rho_for(gamma: f64, m: usize, f: usize) -> f64 {
    let a = 1.0 + 1.0 / gamma;
    (gamma / (gamma - 1.0) * m as f64 / f as f64).log(a) + 1.0
}

/// Exponential-cost assignment with a fixed load estimate.
#[derive(Debug, Clone)]
pub struct AssignU {
    gamma: f64,
    lambda: Rat,
    lambda_f64: f64,
}

impl AssignU {
    pub fn new(gamma: f64, lambda: Rat) -> Result<AssignU> {
        AssignUConfig::check(gamma, Some(&lambda))?;
        let lambda_f64 = to_f64(&lambda);
        Ok(AssignU {
            gamma,
            lambda,
            lambda_f64,
        })
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }
}

impl OnlineAlgorithm for AssignU {
    fn place(&mut self, job: &Job, loads: &LoadVec) -> Result<usize> {
        Ok(assign_u_step(job, loads, self.gamma, self.lambda_f64))
    }
}

/// One doubling phase: the estimate in force and the first job (1-based
/// arrival index) considered under it. A phase can end up empty when the
/// estimate has to double several times in a row for one oversized job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseRecord {
    pub lambda: Rat,
    pub first_job: usize,
}

/// Doubling wrapper: phase-local loads drive the decisions, the real loads
/// accumulate at the caller. The cap test compares in f64, matching the
/// precision of the scores themselves.
pub struct AssignUDoubling {
    gamma: f64,
    rho: f64,
    lambda: Option<Rat>,
    phase_loads: LoadVec,
    phases: Vec<PhaseRecord>,
    seen: usize,
}

impl AssignUDoubling {
    pub fn new(m: usize, f: usize, gamma: f64) -> Result<AssignUDoubling> {
        AssignUConfig::check(gamma, None)?;
        if f == 0 || f > m {
            return Err(Error::Config(format!(
                "favorite-set floor f = {f} out of range 1..={m}"
            )));
        }
        Ok(AssignUDoubling {
            gamma,
            rho: rho_for(gamma, m, f),
            lambda: None,
            phase_loads: LoadVec::zeros(m),
            phases: Vec::new(),
            seen: 0,
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn phases(&self) -> &[PhaseRecord] {
        &self.phases
    }

    fn open_phase(&mut self, lambda: Rat) {
        self.phases.push(PhaseRecord {
            lambda: lambda.clone(),
            first_job: self.seen,
        });
        self.lambda = Some(lambda);
        self.phase_loads.reset();
    }
}

impl OnlineAlgorithm for AssignUDoubling {
    fn place(&mut self, job: &Job, _real_loads: &LoadVec) -> Result<usize> {
        self.seen += 1;
        if self.lambda.is_none() {
            self.open_phase(job.pmin().clone());
        }
        loop {
            let lambda = self.lambda.clone().expect("phase is open");
            let machine = assign_u_step(job, &self.phase_loads, self.gamma, to_f64(&lambda));
            let new_load = self.phase_loads.get(machine) + job.time_on(machine);
            if to_f64(&new_load) > self.rho * to_f64(&lambda) {
                self.open_phase(lambda * Rat::from_integer(2.into()));
                continue;
            }
            self.phase_loads.add(machine, job.time_on(machine));
            return Ok(machine);
        }
    }
}

/// The invariant behind the cap guarantee: with estimate `lambda`, base
/// a = 1 + 1/gamma, online loads l_i and offline witness loads o_i after the
/// same arrival prefix,
///
///   phi(t) = sum_i a^(l_i/lambda) * (gamma - o_i/lambda)
///
/// never increases, provided lambda is at least the witness makespan.
/// Returns phi(0..=n) for the fixed-estimate run on `instance` against
/// `witness`.
pub fn potential_trace(
    instance: &Instance,
    witness: &Schedule,
    gamma: f64,
    lambda: &Rat,
) -> Result<Vec<f64>> {
    AssignUConfig::check(gamma, Some(lambda))?;
    if witness.assignment().len() != instance.n() || witness.m() != instance.m() {
        return Err(Error::Contract(
            "witness schedule does not match the instance shape".into(),
        ));
    }
    let a = 1.0 + 1.0 / gamma;
    let lam = to_f64(lambda);
    let mut algo = AssignU::new(gamma, lambda.clone())?;
    let mut online = LoadVec::zeros(instance.m());
    let mut offline = LoadVec::zeros(instance.m());
    let phi = |online: &LoadVec, offline: &LoadVec| -> f64 {
        online
            .iter()
            .zip(offline.iter())
            .map(|((_, l), (_, o))| a.powf(to_f64(l) / lam) * (gamma - to_f64(o) / lam))
            .sum()
    };
    let mut trace = Vec::with_capacity(instance.n() + 1);
    trace.push(phi(&online, &offline));
    for (idx, job) in instance.jobs().iter().enumerate() {
        let chosen = algo.place(job, &online)?;
        online.add(chosen, job.time_on(chosen));
        let opt_machine = witness.assignment()[idx];
        offline.add(opt_machine, job.time_on(opt_machine));
        trace.push(phi(&online, &offline));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;
    use crate::value::rat_int;
    use std::collections::{BTreeMap, BTreeSet};

    fn job(pmin: Rat, favs: &[usize], others: &[(usize, Rat)]) -> Job {
        Job::new(
            pmin,
            favs.iter().copied().collect::<BTreeSet<_>>(),
            others.iter().cloned().collect::<BTreeMap<_, _>>(),
        )
        .unwrap()
    }

    #[test]
    fn score_argmin_moves_off_a_loaded_favorite() {
        // gamma = 2 so a = 1.5, lambda = 1; job: favorite 1 (time 1),
        // machine 2 at time 2.
        let j = job(rat_int(1), &[1], &[(2, rat_int(2))]);
        let empty = LoadVec::zeros(2);
        // deltas: 1.5 - 1 = 0.5 vs 1.5^2 - 1 = 1.25
        assert_eq!(assign_u_step(&j, &empty, 2.0, 1.0), 1);
        let mut mid = LoadVec::zeros(2);
        mid.add(1, &rat_int(2));
        // deltas: 1.5^3 - 1.5^2 = 1.125 vs 1.25 — still the favorite
        assert_eq!(assign_u_step(&j, &mid, 2.0, 1.0), 1);
        let mut high = LoadVec::zeros(2);
        high.add(1, &rat_int(3));
        // deltas: 1.5^4 - 1.5^3 = 1.6875 vs 1.25 — switch to the slow machine
        assert_eq!(assign_u_step(&j, &high, 2.0, 1.0), 2);
    }

    #[test]
    fn doubling_starts_at_first_pmin_and_doubles_exactly() {
        // single machine: rho = log_1.5(2) + 1, phase cap breached by the
        // third unit job, so the estimate doubles once
        let jobs: Vec<Job> = (0..6).map(|_| job(rat_int(1), &[1], &[])).collect();
        let instance = Instance::new(1, jobs).unwrap();
        let mut algo = AssignUDoubling::new(1, 1, 2.0).unwrap();
        let schedule = super::super::run_with(&mut algo, &instance).unwrap();
        assert_eq!(schedule.makespan(), &rat_int(6));
        let phases = algo.phases();
        assert_eq!(phases.len(), 2);
        assert_eq!(phases[0].lambda, rat_int(1));
        assert_eq!(phases[0].first_job, 1);
        assert_eq!(phases[1].lambda, rat_int(2));
        assert_eq!(phases[1].first_job, 3);
    }

    #[test]
    fn estimate_tracks_first_job_scale() {
        let instance = Instance::new(1, vec![job(rat_int(5), &[1], &[])]).unwrap();
        let mut algo = AssignUDoubling::new(1, 1, 2.0).unwrap();
        super::super::run_with(&mut algo, &instance).unwrap();
        assert_eq!(algo.phases()[0].lambda, rat_int(5));
    }

    #[test]
    fn rejects_gamma_at_or_below_one() {
        assert!(AssignU::new(1.0, rat_int(1)).is_err());
        assert!(AssignU::new(f64::NAN, rat_int(1)).is_err());
        assert!(AssignU::new(2.0, rat_int(0)).is_err());
        assert!(AssignUDoubling::new(2, 1, 0.5).is_err());
        assert!(AssignUDoubling::new(2, 3, 2.0).is_err());
    }

    #[test]
    fn potential_declines_when_estimate_covers_the_optimum() {
        let instance = Instance::new(
            2,
            vec![
                job(rat_int(1), &[1], &[(2, rat_int(2))]),
                job(rat_int(1), &[2], &[(1, rat_int(2))]),
            ],
        )
        .unwrap();
        let witness = Schedule::from_assignment(&instance, vec![1, 2]).unwrap();
        let trace = potential_trace(&instance, &witness, 2.0, &rat_int(1)).unwrap();
        assert_eq!(trace.len(), 3);
        assert!((trace[0] - 4.0).abs() < 1e-12);
        assert!((trace[1] - 3.5).abs() < 1e-12);
        assert!((trace[2] - 3.0).abs() < 1e-12);
        for pair in trace.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-12);
        }
    }
}
