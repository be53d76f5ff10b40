//! Adaptive opponent that defeats every online algorithm at once: it keeps
//! a shrinking set of active machines, repeatedly loads them with unit jobs
//! whose favorite sets are small groups of the active set, and discards the
//! lightly loaded half of each group. Surviving machines carry an average
//! load that grows by one half per round, while the discarded machines — one
//! per released job — absorb the whole sequence at unit makespan.
//!
//! With m/f rounded down to a power of two (extra machines are simply never
//! favored) there are u = 1 + log2(m*/f) rounds, forcing cost (u+1)/2
//! against a witness of cost exactly 1. Jobs cost m + 2 off their favorite
//! group, so any escape placement alone already exceeds the bound.

use num_traits::One;

use super::{pinned_job, AdversaryReport};
use crate::algorithms::{AlgorithmSpec, LiveRun};
use crate::model::Schedule;
use crate::value::{rat, rat_u, Rat};
use crate::{Error, Result};

/// State of one round, recorded before its jobs are released.
#[derive(Debug, Clone)]
pub struct HalvingIteration {
    pub active: Vec<usize>,
    pub average_active_load: Rat,
    pub jobs_released: usize,
}

#[derive(Debug, Clone)]
pub struct HalvingOutcome {
    pub report: AdversaryReport,
    pub iterations: Vec<HalvingIteration>,
    /// (u+1)/2: what any algorithm must pay relative to the witness.
    pub bound: Rat,
    pub rounds: usize,
    /// The machines actually used: f times the largest power of two fitting
    /// into m/f.
    pub machines_used: usize,
}

/// Runs the halving opponent against `spec` on m machines with favorite
/// sets of size f (f even).
pub fn halving(spec: &AlgorithmSpec, m: usize, f: usize) -> Result<HalvingOutcome> {
    if f == 0 || f % 2 != 0 {
        return Err(Error::Parameter(format!(
            "group size f must be even and positive, got {f}"
        )));
    }
    if m < f {
        return Err(Error::Parameter(format!(
            "need at least f = {f} machines, got m = {m}"
        )));
    }
    let mut doubled = f;
    while doubled * 2 <= m {
        doubled *= 2;
    }
    let m_star = doubled;
    let rounds = 1 + (m_star / f).trailing_zeros() as usize;

    let mut live = LiveRun::new(spec, m, f, None)?;
    let outside = rat_u(m) + rat_u(2);
    let mut active: Vec<usize> = (1..=m_star).collect();
    let mut iterations = Vec::with_capacity(rounds);
    let mut witness_assign: Vec<usize> = Vec::new();

    for round in 1..=rounds {
        let average = if active.is_empty() {
            Rat::one()
        } else {
            active
                .iter()
                .map(|&machine| live.loads().get(machine).clone())
                .sum::<Rat>()
                / rat_u(active.len())
        };
        let last_round = round == rounds;
        let mut kept: Vec<usize> = Vec::new();
        let mut released = 0usize;
        for group in active.chunks(f) {
            let favorites: std::collections::BTreeSet<usize> = group.iter().copied().collect();
            let per_group = if last_round { f } else { f / 2 };
            for _ in 0..per_group {
                let job = pinned_job(Rat::one(), favorites.clone(), m, &outside)?;
                live.feed(job)?;
                released += 1;
            }
            if last_round {
                // every active machine takes one witness job
                witness_assign.extend(group.iter().copied());
            } else {
                // heaviest half survives; each discarded machine hosts one
                // of this round's jobs in the witness
                let mut by_load: Vec<usize> = group.to_vec();
                by_load.sort_by(|&a, &b| {
                    live.loads()
                        .get(b)
                        .cmp(live.loads().get(a))
                        .then(a.cmp(&b))
                });
                let (survivors, discarded) = by_load.split_at(f / 2);
                kept.extend(survivors.iter().copied());
                let mut hosts: Vec<usize> = discarded.to_vec();
                hosts.sort_unstable();
                witness_assign.extend(hosts);
            }
        }
        iterations.push(HalvingIteration {
            active: active.clone(),
            average_active_load: average,
            jobs_released: released,
        });
        if !last_round {
            kept.sort_unstable();
            active = kept;
        }
    }

    let (instance, online) = live.finish()?;
    let witness = Schedule::from_assignment(&instance, witness_assign)?;
    let report = AdversaryReport::new(instance, online, witness)?;
    Ok(HalvingOutcome {
        report,
        iterations,
        bound: rat(1 + rounds as i64, 2),
        rounds,
        machines_used: m_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{AlgoParams, AlgorithmSpec};
    use crate::value::rat_int;

    fn spec(id: &str) -> AlgorithmSpec {
        AlgorithmSpec::parse(id, &AlgoParams::default()).unwrap()
    }

    #[test]
    fn greedy_is_forced_past_the_round_bound() {
        let outcome = halving(&spec("greedy"), 8, 2).unwrap();
        assert_eq!(outcome.rounds, 3);
        assert_eq!(outcome.bound, rat(2, 1));
        assert_eq!(outcome.report.claimed_opt, rat_int(1));
        assert!(outcome.report.forced_ratio >= outcome.bound);
    }

    #[test]
    fn witness_uses_each_machine_at_most_once() {
        let outcome = halving(&spec("greedy-favorite"), 8, 2).unwrap();
        let witness = &outcome.report.witness;
        for (machine, load) in witness.loads().iter() {
            assert!(
                *load <= rat_int(1),
                "machine {machine} carries {load} in the witness"
            );
        }
        assert_eq!(outcome.report.claimed_opt, rat_int(1));
    }

    #[test]
    fn average_active_load_grows_by_half_per_round() {
        let outcome = halving(&spec("greedy"), 16, 2).unwrap();
        for (i, iteration) in outcome.iterations.iter().enumerate() {
            assert!(
                iteration.average_active_load >= rat(i as i64, 2),
                "round {} average {}",
                i + 1,
                iteration.average_active_load
            );
        }
    }

    #[test]
    fn trims_to_a_power_of_two_group_count() {
        let outcome = halving(&spec("greedy"), 12, 2).unwrap();
        assert_eq!(outcome.machines_used, 8);
        assert_eq!(outcome.rounds, 3);
        // machines beyond the trimmed set never receive witness jobs
        let witness = &outcome.report.witness;
        for machine in 9..=12 {
            assert_eq!(witness.loads().get(machine), &rat_int(0));
        }
    }

    #[test]
    fn rejects_odd_group_sizes() {
        assert!(halving(&spec("greedy"), 8, 3).is_err());
        assert!(halving(&spec("greedy"), 1, 2).is_err());
    }
}
