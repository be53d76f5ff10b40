//! Favorite-set rescaling: treat every machine within a factor c of a job's
//! minimum time as a favorite, run an inner algorithm on that rewritten
//! view, and pay at most a factor c over it on the real times.
//!
//! The inner algorithm only ever sees rewritten jobs and rewritten loads
//! (each placed job contributes its rewritten time), so its guarantee holds
//! verbatim on the virtual instance; real completion times are within c of
//! virtual ones machine by machine.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use super::OnlineAlgorithm;
use crate::model::{Instance, Job, LoadVec};
use crate::value::Rat;
use crate::{Error, Result};

/// Machines whose time for `job` is within factor `c` of its minimum.
pub fn rescaled_favorites(job: &Job, m: usize, c: &Rat) -> BTreeSet<usize> {
    let cutoff = c * job.pmin();
    (1..=m)
        .filter(|&machine| *job.time_on(machine) <= cutoff)
        .collect()
}

fn rewrite_job(job: &Job, m: usize, c: &Rat) -> Result<Job> {
    let favorites = rescaled_favorites(job, m, c);
    let others: BTreeMap<usize, Rat> = (1..=m)
        .filter(|machine| !favorites.contains(machine))
        .map(|machine| (machine, job.time_on(machine).clone()))
        .collect();
    Job::new(job.pmin().clone(), favorites, others)
}

/// The whole instance under the rewritten favorite sets. Any two-group
/// structure of the original is not preserved.
pub fn rescale_instance(instance: &Instance, c: &Rat) -> Result<Instance> {
    check_threshold(c)?;
    let jobs = instance
        .jobs()
        .iter()
        .map(|job| rewrite_job(job, instance.m(), c))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(instance.m(), jobs)
}

/// Smallest rewritten favorite-set size across the jobs (m when empty):
/// the f that enters the wrapper's guarantee.
pub fn rescaled_min_f(instance: &Instance, c: &Rat) -> usize {
    instance
        .jobs()
        .iter()
        .map(|job| rescaled_favorites(job, instance.m(), c).len())
        .min()
        .unwrap_or(instance.m())
}

fn check_threshold(c: &Rat) -> Result<()> {
    if *c < Rat::one() {
        return Err(Error::Config(format!(
            "rescale threshold c must be >= 1, got {c}"
        )));
    }
    Ok(())
}

/// Wrapper feeding an inner algorithm the rewritten jobs over virtual loads.
pub struct Rescale {
    m: usize,
    c: Rat,
    inner: Box<dyn OnlineAlgorithm>,
    virtual_loads: LoadVec,
}

impl Rescale {
    pub fn new(m: usize, c: Rat, inner: Box<dyn OnlineAlgorithm>) -> Result<Rescale> {
        check_threshold(&c)?;
        Ok(Rescale {
            m,
            c,
            inner,
            virtual_loads: LoadVec::zeros(m),
        })
    }
}

impl OnlineAlgorithm for Rescale {
    fn place(&mut self, job: &Job, _real_loads: &LoadVec) -> Result<usize> {
        let rewritten = rewrite_job(job, self.m, &self.c)?;
        let machine = self.inner.place(&rewritten, &self.virtual_loads)?;
        if machine == 0 || machine > self.m {
            return Err(Error::Contract(format!(
                "inner algorithm returned machine {machine}, outside 1..={}",
                self.m
            )));
        }
        self.virtual_loads
            .add(machine, rewritten.time_on(machine));
        Ok(machine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{AlgoParams, AlgorithmSpec};
    use crate::value::{rat, rat_int};

    fn near_favorite_job() -> Job {
        Job::new(
            rat(99, 100),
            [1].into_iter().collect(),
            [
                (2, rat_int(1)),
                (3, rat_int(1)),
                (4, rat_int(1)),
                (5, rat_int(2)),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap()
    }

    #[test]
    fn threshold_widens_the_favorite_set() {
        let job = near_favorite_job();
        let c = rat(102, 100);
        let favs = rescaled_favorites(&job, 5, &c);
        assert_eq!(favs.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        // at c = 1 nothing changes
        let favs = rescaled_favorites(&job, 5, &rat_int(1));
        assert_eq!(favs.into_iter().collect::<Vec<_>>(), vec![1]);
        let instance = Instance::new(5, vec![near_favorite_job()]).unwrap();
        assert_eq!(rescaled_min_f(&instance, &c), 4);
        assert_eq!(rescaled_min_f(&instance, &rat_int(1)), 1);
    }

    #[test]
    fn inner_greedy_sees_virtual_loads() {
        let instance =
            Instance::new(5, vec![near_favorite_job(), near_favorite_job()]).unwrap();
        let spec = AlgorithmSpec::parse("rescale:102/100:greedy", &AlgoParams::default()).unwrap();
        let schedule = crate::algorithms::run(&spec, &instance).unwrap();
        // both jobs look identical to the inner greedy over a widened
        // favorite set; the second lands on the next rewritten favorite
        // instead of stacking
        assert_eq!(schedule.assignment(), &[1, 2]);
        assert_eq!(schedule.loads().get(1), &rat(99, 100));
        assert_eq!(schedule.loads().get(2), &rat_int(1));
    }

    #[test]
    fn rejects_threshold_below_one() {
        assert!(rescale_instance(
            &Instance::new(5, vec![near_favorite_job()]).unwrap(),
            &rat(1, 2)
        )
        .is_err());
        assert!(AlgorithmSpec::parse("rescale:0.5:greedy", &AlgoParams::default()).is_err());
        assert!(AlgorithmSpec::parse("rescale:2", &AlgoParams::default()).is_err());
    }

    #[test]
    fn rewritten_instance_round_trips_times() {
        let instance = Instance::new(5, vec![near_favorite_job()]).unwrap();
        let rewritten = rescale_instance(&instance, &rat(102, 100)).unwrap();
        assert_eq!(rewritten.proc_time(1, 2).unwrap(), rat(99, 100));
        assert_eq!(rewritten.proc_time(1, 5).unwrap(), rat_int(2));
        assert_eq!(rewritten.f(), 4);
    }
}
