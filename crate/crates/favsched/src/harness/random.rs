//! Seeded instance samplers. Fixed-shape sampling backs the CLI's `--gen
//! random`; the loose-shape helpers draw dimensions too and feed the stress
//! suites. Everything derives from a caller-provided ChaCha stream, so a
//! seed pins the full instance sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Group, SymJob};
use crate::value::{rat, rat_u, Rat};
use crate::{Error, Instance, Job, Result, SymmetricInstance};

/// Minimum processing times are drawn from an evenly spaced rational grid,
/// endpoints included, so results stay exact and reproducible.
#[derive(Debug, Clone)]
pub enum PminDistribution {
    Grid { lo: Rat, hi: Rat, steps: u32 },
    Discrete(Vec<Rat>),
}

impl Default for PminDistribution {
    fn default() -> PminDistribution {
        PminDistribution::Grid {
            lo: rat(1, 10),
            hi: rat(10, 1),
            steps: 99,
        }
    }
}

impl PminDistribution {
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Rat> {
        match self {
            PminDistribution::Grid { lo, hi, steps } => {
                if lo <= &Rat::from_integer(0.into()) || hi < lo {
                    return Err(Error::Config(
                        "pmin grid needs 0 < lo <= hi".into(),
                    ));
                }
                let k = rng.gen_range(0..=*steps);
                Ok(lo + (hi - lo) * rat_u(k as usize) / rat_u((*steps).max(1) as usize))
            }
            PminDistribution::Discrete(values) => {
                if values.is_empty() {
                    return Err(Error::Config("empty pmin value set".into()));
                }
                Ok(values[rng.gen_range(0..values.len())].clone())
            }
        }
    }
}

/// Non-favorite inflation multipliers: strictly above one, at most `hi`.
/// The default matches the documented reporting convention, uniform on a
/// grid over (1, 4].
#[derive(Debug, Clone)]
pub struct InflationDistribution {
    pub hi: Rat,
    pub steps: u32,
}

impl Default for InflationDistribution {
    fn default() -> InflationDistribution {
        InflationDistribution {
            hi: rat(4, 1),
            steps: 300,
        }
    }
}

impl InflationDistribution {
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Rat> {
        let one = Rat::from_integer(1.into());
        if self.hi <= one || self.steps == 0 {
            return Err(Error::Config(
                "inflation grid needs hi > 1 and at least one step".into(),
            ));
        }
        let k = rng.gen_range(1..=self.steps);
        Ok(&one + (&self.hi - &one) * rat_u(k as usize) / rat_u(self.steps as usize))
    }
}

/// Fixed-shape random instances: m machines, favorite sets of size at least
/// f (the first job gets exactly f, pinning the instance's guarantee
/// parameter), n jobs. With `symmetric` set the spec instead draws two-group
/// instances on 2f machines at the given slowdown.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub m: usize,
    pub f: usize,
    pub n: usize,
    pub pmin: PminDistribution,
    pub inflation: InflationDistribution,
    pub symmetric: Option<Rat>,
}

impl RandomSpec {
    pub fn new(m: usize, f: usize, n: usize) -> Result<RandomSpec> {
        if m == 0 || f == 0 || f > m {
            return Err(Error::Config(format!(
                "random spec needs 1 <= f <= m, got m={m} f={f}"
            )));
        }
        Ok(RandomSpec {
            m,
            f,
            n,
            pmin: PminDistribution::default(),
            inflation: InflationDistribution::default(),
            symmetric: None,
        })
    }

    pub fn symmetric(f: usize, s: Rat, n: usize) -> Result<RandomSpec> {
        if f == 0 {
            return Err(Error::Config("symmetric spec needs f >= 1".into()));
        }
        if s < Rat::from_integer(1.into()) {
            return Err(Error::Config("slowdown must be at least 1".into()));
        }
        Ok(RandomSpec {
            m: 2 * f,
            f,
            n,
            pmin: PminDistribution::default(),
            inflation: InflationDistribution::default(),
            symmetric: Some(s),
        })
    }

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Instance> {
        match &self.symmetric {
            Some(s) => {
                let jobs = (0..self.n)
                    .map(|_| {
                        let pmin = self.pmin.sample(rng)?;
                        let group = if rng.gen_bool(0.5) { Group::One } else { Group::Two };
                        SymJob::new(pmin, group)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SymmetricInstance::new(self.f, s.clone(), jobs)?.to_instance())
            }
            None => {
                let jobs = (0..self.n)
                    .map(|j| {
                        let size = if j == 0 {
                            self.f
                        } else {
                            rng.gen_range(self.f..=self.m)
                        };
                        self.job(rng, size)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Instance::new(self.m, jobs)
            }
        }
    }

    fn job(&self, rng: &mut ChaCha8Rng, favorites: usize) -> Result<Job> {
        let pmin = self.pmin.sample(rng)?;
        let chosen: std::collections::BTreeSet<usize> =
            rand::seq::index::sample(rng, self.m, favorites)
                .iter()
                .map(|i| i + 1)
                .collect();
        let mut others = std::collections::BTreeMap::new();
        for machine in 1..=self.m {
            if !chosen.contains(&machine) {
                others.insert(machine, &pmin * self.inflation.sample(rng)?);
            }
        }
        Job::new(pmin, chosen, others)
    }
}

/// Draws shape and content: m in 1..=max_m, f in 1..=m, n in 1..=max_n.
pub fn random_general(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> Result<Instance> {
    let m = rng.gen_range(1..=max_m);
    let f = rng.gen_range(1..=m);
    let n = rng.gen_range(1..=max_n);
    RandomSpec::new(m, f, n)?.sample(rng)
}

/// Two-group instances with f in 1..=max_f, n in 1..=max_n and the slowdown
/// drawn from a 300-point grid over [s_lo, s_hi].
pub fn random_symmetric(
    rng: &mut ChaCha8Rng,
    max_f: usize,
    max_n: usize,
    s_lo: &Rat,
    s_hi: &Rat,
) -> Result<Instance> {
    if s_lo < &Rat::from_integer(1.into()) || s_hi < s_lo {
        return Err(Error::Config("slowdown range needs 1 <= lo <= hi".into()));
    }
    let f = rng.gen_range(1..=max_f);
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(0..=300u32);
    let s = s_lo + (s_hi - s_lo) * rat_u(k as usize) / rat_u(300);
    RandomSpec::symmetric(f, s, n)?.sample(rng)
}

/// Instances whose processing rows cluster within factor c of pmin on a
/// random superset of the declared favorites; machines outside the cluster
/// cost strictly more than c·pmin. Rescaling at threshold c recovers the
/// cluster as the effective favorite set.
pub fn random_clustered(
    rng: &mut ChaCha8Rng,
    max_m: usize,
    max_n: usize,
    c: &Rat,
) -> Result<Instance> {
    if c <= &Rat::from_integer(1.into()) {
        return Err(Error::Config("cluster factor must exceed 1".into()));
    }
    let m = rng.gen_range(2..=max_m.max(2));
    let n = rng.gen_range(1..=max_n);
    let base = RandomSpec::new(m, 1, n)?;
    let one = Rat::from_integer(1.into());
    let jobs = (0..n)
        .map(|_| {
            let pmin = base.pmin.sample(rng)?;
            let fav = rng.gen_range(1..=m);
            let cluster = rng.gen_range(fav..=m);
            let picked = rand::seq::index::sample(rng, m, cluster);
            let favorites: std::collections::BTreeSet<usize> =
                picked.iter().take(fav).map(|i| i + 1).collect();
            let near: std::collections::BTreeSet<usize> =
                picked.iter().map(|i| i + 1).collect();
            let mut others = std::collections::BTreeMap::new();
            for machine in 1..=m {
                if favorites.contains(&machine) {
                    continue;
                }
                let time = if near.contains(&machine) {
                    // in (pmin, c·pmin]
                    let k = rng.gen_range(1..=100usize);
                    &pmin * (&one + (c - &one) * rat_u(k) / rat_u(100))
                } else {
                    // strictly above c·pmin
                    let k = rng.gen_range(1..=100usize);
                    &pmin * c * (&one + rat_u(k) / rat_u(100))
                };
                others.insert(machine, time);
            }
            Job::new(pmin, favorites, others)
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(m, jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::rescaled_min_f;
    use crate::value::to_f64;

    #[test]
    fn fixed_seed_reproduces_the_instance() {
        let spec = RandomSpec::new(5, 2, 8).unwrap();
        let a = spec.sample(&mut RandomSpec::rng(42)).unwrap();
        let b = spec.sample(&mut RandomSpec::rng(42)).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        assert_eq!(a.f(), 2);
        assert_eq!(a.n(), 8);
    }

    #[test]
    fn sampled_jobs_respect_the_model() {
        let mut rng = RandomSpec::rng(7);
        for _ in 0..20 {
            let instance = random_general(&mut rng, 6, 12).unwrap();
            for job in instance.jobs() {
                assert!(job.favorites().len() >= instance.f());
                for machine in 1..=instance.m() {
                    if !job.is_favorite(machine) {
                        assert!(job.time_on(machine) > job.pmin());
                        assert!(job.time_on(machine) <= &(job.pmin() * rat(4, 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_samples_carry_their_info() {
        let mut rng = RandomSpec::rng(11);
        let instance = random_symmetric(&mut rng, 3, 6, &rat(1, 1), &rat(4, 1)).unwrap();
        let info = instance.symmetric_info().expect("symmetric");
        assert!(info.f >= 1 && info.f <= 3);
        let s = to_f64(&info.s);
        assert!((1.0..=4.0).contains(&s));
    }

    #[test]
    fn clustered_rows_sit_inside_the_threshold() {
        let mut rng = RandomSpec::rng(3);
        let c = rat(3, 2);
        for _ in 0..10 {
            let instance = random_clustered(&mut rng, 5, 6, &c).unwrap();
            let f_hat = rescaled_min_f(&instance, &c);
            assert!(f_hat >= instance.f() && f_hat <= instance.m());
            for job in instance.jobs() {
                let widened = crate::algorithms::rescaled_favorites(job, instance.m(), &c);
                assert!(job.favorites().is_subset(&widened));
            }
        }
    }
}
