//! Worst-case job sequences: fixed constructions and adaptive opponents
//! that force specific competitive ratios out of online algorithms.
//!
//! Every construction hands back an [`AdversaryReport`]: the released
//! instance, what the algorithm did, and a concrete witness schedule whose
//! makespan upper-bounds the optimum. The forced ratio is always measured
//! against the witness, never against a formula, so a buggy construction
//! shows up as a weak ratio instead of a wrong claim.

mod greedy_lb;
mod halving;
mod symmetric;
mod two_machine;

pub use greedy_lb::{greedy_lower_bound, greedy_lower_bound_report, GreedyLbConstruction};
pub use halving::{halving, HalvingIteration, HalvingOutcome};
pub use symmetric::{
    gf_tight, small_jobs_prefix, tight_symmetric, GfTightConstruction, TightOutcome,
};
pub use two_machine::{two_machine, TwoMachineOutcome};

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Group, Instance, Job, Schedule};
use crate::oracle::competitive_ratio;
use crate::value::Rat;
use crate::{Error, Result};

/// Outcome of running an algorithm against an adversarial sequence.
#[derive(Debug, Clone)]
pub struct AdversaryReport {
    pub instance: Instance,
    pub online: Schedule,
    pub online_cost: Rat,
    /// A feasible schedule proving the optimum is at most `claimed_opt`.
    pub witness: Schedule,
    pub claimed_opt: Rat,
    /// online_cost / claimed_opt — a certified lower bound on the
    /// algorithm's competitive ratio.
    pub forced_ratio: Rat,
}

impl AdversaryReport {
    /// Recomputes both schedules against the instance so that a report can
    /// never carry costs that don't belong to it.
    pub fn new(instance: Instance, online: Schedule, witness: Schedule) -> Result<AdversaryReport> {
        let online = Schedule::from_assignment(&instance, online.assignment().to_vec())?;
        let witness = Schedule::from_assignment(&instance, witness.assignment().to_vec())?;
        let online_cost = online.makespan().clone();
        let claimed_opt = witness.makespan().clone();
        let forced_ratio = competitive_ratio(&online_cost, &claimed_opt)?;
        Ok(AdversaryReport {
            instance,
            online,
            online_cost,
            witness,
            claimed_opt,
            forced_ratio,
        })
    }
}

/// A job in the two-group layout with m = 2f machines: minimum time on the
/// favorite group, `s` times that elsewhere. Tolerates s = 1.
pub(crate) fn two_group_job(pmin: Rat, group: Group, f: usize, s: &Rat) -> Job {
    let favorites: BTreeSet<usize> = match group {
        Group::One => (1..=f).collect(),
        Group::Two => (f + 1..=2 * f).collect(),
    };
    let others: BTreeMap<usize, Rat> = (1..=2 * f)
        .filter(|machine| !favorites.contains(machine))
        .map(|machine| (machine, s * &pmin))
        .collect();
    Job::new_relaxed(pmin, favorites, others).expect("two-group job is well formed")
}

/// A job pinned to an explicit favorite set with a flat processing time on
/// every other machine.
pub(crate) fn pinned_job(
    pmin: Rat,
    favorites: BTreeSet<usize>,
    m: usize,
    outside_time: &Rat,
) -> Result<Job> {
    check_favorites(&favorites, m)?;
    let others: BTreeMap<usize, Rat> = (1..=m)
        .filter(|machine| !favorites.contains(machine))
        .map(|machine| (machine, outside_time.clone()))
        .collect();
    Job::new_relaxed(pmin, favorites, others)
}

/// A job pinned to an explicit favorite set, slowed by a multiplicative
/// factor everywhere else.
pub(crate) fn scaled_job(
    pmin: Rat,
    favorites: BTreeSet<usize>,
    m: usize,
    factor: &Rat,
) -> Result<Job> {
    check_favorites(&favorites, m)?;
    let others: BTreeMap<usize, Rat> = (1..=m)
        .filter(|machine| !favorites.contains(machine))
        .map(|machine| (machine, factor * &pmin))
        .collect();
    Job::new_relaxed(pmin, favorites, others)
}

fn check_favorites(favorites: &BTreeSet<usize>, m: usize) -> Result<()> {
    if favorites.is_empty() || *favorites.iter().last().unwrap_or(&0) > m {
        return Err(Error::Parameter(format!(
            "favorite set must be a non-empty subset of 1..={m}"
        )));
    }
    Ok(())
}
