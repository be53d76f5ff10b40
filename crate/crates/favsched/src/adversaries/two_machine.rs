//! Adaptive opponent for two machines with one favorite each.
//!
//! The opponent first probes the algorithm with single-job openers until it
//! finds one whose placement it predicted; the matched run then continues
//! with a second job favoring the loaded machine. Taking it there ends the
//! game at ratio 1 + 1/s; sending it away sets up a third job that costs
//! s^2 + s + 1 on either machine against a witness of s + 1. Both endings
//! meet min{1 + s^2/(s+1), 1 + 1/s}, so no deterministic algorithm beats
//! that ratio.

use num_traits::One;

use super::{two_group_job, AdversaryReport};
use crate::algorithms::{AlgorithmSpec, LiveRun};
use crate::model::{Group, Schedule, SymmetricInfo};
use crate::oracle::{exact_opt, two_machine_forced_ratio};
use crate::value::Rat;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct TwoMachineOutcome {
    pub report: AdversaryReport,
    /// min{1 + s^2/(s+1), 1 + 1/s}: the ratio every algorithm must concede.
    pub bound: Rat,
    /// False only when every opener was mispredicted and the sequence
    /// degenerated to a single job.
    pub guaranteed: bool,
    /// True when the algorithm took the bait on the second job and the game
    /// ended after two jobs.
    pub stopped_early: bool,
    /// Which opener (1-4) the algorithm answered as predicted.
    pub committed_probe: Option<usize>,
}

struct Probe {
    pmin: Rat,
    group: Group,
    expected: usize,
}

/// Plays the two-machine game against `spec` at slowdown s >= 1.
pub fn two_machine(spec: &AlgorithmSpec, s: &Rat) -> Result<TwoMachineOutcome> {
    if s < &Rat::one() {
        return Err(Error::Parameter(format!(
            "slowdown must be at least 1, got {s}"
        )));
    }
    let info = SymmetricInfo {
        f: 1,
        s: s.clone(),
    };
    let bound = two_machine_forced_ratio(s);
    let inverse = Rat::one() / s;
    let probes = [
        Probe {
            pmin: Rat::one(),
            group: Group::One,
            expected: 1,
        },
        Probe {
            pmin: Rat::one(),
            group: Group::Two,
            expected: 2,
        },
        Probe {
            pmin: inverse.clone(),
            group: Group::Two,
            expected: 1,
        },
        Probe {
            pmin: inverse,
            group: Group::One,
            expected: 2,
        },
    ];

    for (index, probe) in probes.iter().enumerate() {
        let mut live = LiveRun::new(spec, 2, 1, Some(info.clone()))?;
        let opener = two_group_job(probe.pmin.clone(), probe.group, 1, s);
        let placed = live.feed(opener)?;
        if placed != probe.expected {
            continue;
        }
        let loaded = probe.expected;
        let other = 3 - loaded;
        let group_of = |machine: usize| if machine == 1 { Group::One } else { Group::Two };

        let bait = two_group_job(s.clone(), group_of(loaded), 1, s);
        let second = live.feed(bait)?;
        let (witness_assign, stopped_early) = if second == loaded {
            (vec![other, loaded], true)
        } else {
            let closer = two_group_job(s + Rat::one(), group_of(other), 1, s);
            live.feed(closer)?;
            (vec![loaded, loaded, other], false)
        };

        let (instance, online) = live.finish()?;
        let witness = Schedule::from_assignment(&instance, witness_assign)?;
        let report = AdversaryReport::new(instance, online, witness)?;
        return Ok(TwoMachineOutcome {
            report,
            bound,
            guaranteed: true,
            stopped_early,
            committed_probe: Some(index + 1),
        });
    }

    // Every opener was answered against its prediction. Record the last
    // single-job exchange with an exact optimum; the ratio says nothing
    // about the algorithm in this case.
    let mut live = LiveRun::new(spec, 2, 1, Some(info))?;
    live.feed(two_group_job(Rat::one(), Group::One, 1, s))?;
    let (instance, online) = live.finish()?;
    let witness = exact_opt(&instance, None)?.witness;
    let report = AdversaryReport::new(instance, online, witness)?;
    Ok(TwoMachineOutcome {
        report,
        bound,
        guaranteed: false,
        stopped_early: false,
        committed_probe: None,
    })
}
