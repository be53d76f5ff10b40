//! Fixed job sequence on which completion-time greedy (with the
//! slow-machine tie rule) pays exactly (m + f - 1)/f times the optimum.
//!
//! Machines are split into m/f groups of f. A staircase of job pairs walks
//! the groups: f jobs of size 1 - i/q land on group i, then f jobs of size
//! i/q tie exactly between group i (completing at i) and the fresh group
//! i + 1 (time q * i/q = i there) — the tie rule pushes them onto the fresh
//! group. The last group then receives f(f-1) jobs of size 1/f and a final
//! unit job. The denominator q is chosen large enough (and integral, to keep
//! every size rational) that each stair prefers its own group over all
//! earlier ones.

use num_traits::One;

use super::{scaled_job, AdversaryReport};
use crate::algorithms::{run, AlgorithmSpec, TieBreakPolicy};
use crate::model::{Instance, Job, Schedule};
use crate::oracle::greedy_bound;
use crate::value::{rat, Rat};
use crate::{Error, Result};

/// The sequence, a witness packing with makespan one, and the ratio the
/// sequence forces out of greedy.
#[derive(Debug, Clone)]
pub struct GreedyLbConstruction {
    pub instance: Instance,
    pub witness: Schedule,
    /// Denominator of the stair sizes.
    pub scaling: u64,
    pub target_ratio: Rat,
}

fn ceil_stair_threshold(groups: usize) -> u64 {
    // smallest integer at least g - 1 + sqrt((g-1)(g-2))
    if groups <= 2 {
        return (groups as u64).saturating_sub(1);
    }
    let g = groups as u64;
    let x = (g - 1) * (g - 2);
    let mut root = 0u64;
    while (root + 1) * (root + 1) <= x {
        root += 1;
    }
    let exact = root * root == x;
    g - 1 + root + u64::from(!exact)
}

/// Builds the forcing sequence for m machines with favorite sets of size f;
/// f must divide m.
pub fn greedy_lower_bound(m: usize, f: usize) -> Result<GreedyLbConstruction> {
    if f == 0 || m == 0 || m % f != 0 {
        return Err(Error::Parameter(format!(
            "need f >= 1 dividing m, got m = {m}, f = {f}"
        )));
    }
    let groups = m / f;
    let q = ceil_stair_threshold(groups).max(m as u64) + 1;
    let factor = rat(q as i64, 1);
    let group_machines =
        |g: usize| ((g - 1) * f + 1..=g * f).collect::<std::collections::BTreeSet<usize>>();

    let mut jobs: Vec<Job> = Vec::new();
    let mut witness_assign: Vec<usize> = Vec::new();

    for i in 1..groups {
        let big = Rat::one() - rat(i as i64, q as i64);
        let small = rat(i as i64, q as i64);
        for slot in 0..f {
            jobs.push(scaled_job(big.clone(), group_machines(i), m, &factor)?);
            witness_assign.push((i - 1) * f + 1 + slot);
        }
        for slot in 0..f {
            jobs.push(scaled_job(small.clone(), group_machines(i), m, &factor)?);
            witness_assign.push((i - 1) * f + 1 + slot);
        }
    }
    let last = group_machines(groups);
    for k in 0..f * (f - 1) {
        jobs.push(scaled_job(rat(1, f as i64), last.clone(), m, &factor)?);
        witness_assign.push((groups - 1) * f + 1 + k % (f - 1));
    }
    jobs.push(scaled_job(Rat::one(), last, m, &factor)?);
    witness_assign.push(m);

    let instance = Instance::new(m, jobs)?;
    let witness = Schedule::from_assignment(&instance, witness_assign)?;
    if !witness.makespan().is_integer() || *witness.makespan() != Rat::one() {
        return Err(Error::Contract(format!(
            "witness packing has makespan {}, expected 1",
            witness.makespan()
        )));
    }
    Ok(GreedyLbConstruction {
        instance,
        witness,
        scaling: q,
        target_ratio: greedy_bound(m, f),
    })
}

/// Convenience: build the sequence, run greedy on it, report the ratio.
pub fn greedy_lower_bound_report(m: usize, f: usize) -> Result<(GreedyLbConstruction, AdversaryReport)> {
    let construction = greedy_lower_bound(m, f)?;
    let spec = AlgorithmSpec::Greedy {
        tie_break: TieBreakPolicy::BadMachineSmallestIndex,
    };
    let online = run(&spec, &construction.instance)?;
    let report = AdversaryReport::new(
        construction.instance.clone(),
        online,
        construction.witness.clone(),
    )?;
    Ok((construction, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat_int;

    #[test]
    fn stair_denominators_match_hand_checks() {
        assert_eq!(greedy_lower_bound(4, 2).unwrap().scaling, 5);
        assert_eq!(greedy_lower_bound(6, 2).unwrap().scaling, 7);
        assert_eq!(greedy_lower_bound(8, 4).unwrap().scaling, 9);
        assert_eq!(greedy_lower_bound(3, 3).unwrap().scaling, 4);
    }

    #[test]
    fn greedy_pays_the_full_ratio_on_small_cases() {
        for (m, f) in [(4, 2), (6, 2), (6, 3), (3, 3), (2, 1)] {
            let (construction, report) = greedy_lower_bound_report(m, f).unwrap();
            assert_eq!(
                report.forced_ratio, construction.target_ratio,
                "m = {m}, f = {f}"
            );
            assert_eq!(report.claimed_opt, rat_int(1));
        }
    }

    #[test]
    fn smallest_index_ties_defuse_the_sequence() {
        // the stairs rely on ties falling onto fresh groups; with plain
        // smallest-index ties greedy stays below the target
        let construction = greedy_lower_bound(4, 2).unwrap();
        let spec = AlgorithmSpec::Greedy {
            tie_break: TieBreakPolicy::SmallestIndex,
        };
        let online = run(&spec, &construction.instance).unwrap();
        let report =
            AdversaryReport::new(construction.instance.clone(), online, construction.witness)
                .unwrap();
        assert!(report.forced_ratio < construction.target_ratio);
    }

    #[test]
    fn rejects_non_dividing_group_size() {
        assert!(greedy_lower_bound(5, 2).is_err());
        assert!(greedy_lower_bound(4, 0).is_err());
    }
}
