//! Online assignment algorithms.
//!
//! Every algorithm consumes jobs one at a time through [`OnlineAlgorithm`]
//! and never revokes a decision. The runner owns the real load vector;
//! algorithms that reason over transformed loads (doubling phases, rescaled
//! favorite sets) keep that state internally.

mod assign_u;
mod greedy;
mod rescale;

pub use assign_u::{
    assign_u_step, potential_trace, rho_for, AssignU, AssignUConfig, AssignUDoubling, PhaseRecord,
};
pub use greedy::{ggf_threshold, greedy_favorite_step, greedy_step, Ggf, Greedy, GreedyFavorite};
pub use rescale::{rescale_instance, rescaled_favorites, rescaled_min_f, Rescale};

use std::fmt;

use crate::model::{Instance, Job, LoadVec, Schedule, SymmetricInfo};
use crate::value::{format_exact, parse_rat, Rat};
use crate::{Error, Result};

/// An online algorithm: sees jobs in arrival order, returns a machine for
/// each, decisions are final. `loads` is the real load vector before the
/// job, maintained by the caller.
pub trait OnlineAlgorithm {
    fn place(&mut self, job: &Job, loads: &LoadVec) -> Result<usize>;
}

/// How a completion-time argmin resolves ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreakPolicy {
    /// Among tied machines, prefer one where the job is slow (non-favorite);
    /// smallest index within that class. This is the default: it makes the
    /// worst-case job sequences reproducible instead of merely existent.
    #[default]
    BadMachineSmallestIndex,
    /// Smallest machine index outright.
    SmallestIndex,
}

impl TieBreakPolicy {
    pub fn parse(text: &str) -> Result<TieBreakPolicy> {
        match text {
            "bad-smallest" => Ok(TieBreakPolicy::BadMachineSmallestIndex),
            "smallest-index" => Ok(TieBreakPolicy::SmallestIndex),
            other => Err(Error::Config(format!(
                "unknown tie-break policy {other:?}; use bad-smallest or smallest-index"
            ))),
        }
    }
}

impl fmt::Display for TieBreakPolicy {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreakPolicy::BadMachineSmallestIndex => write!(out, "bad-smallest"),
            TieBreakPolicy::SmallestIndex => write!(out, "smallest-index"),
        }
    }
}

/// Parsed algorithm selection, including parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmSpec {
    Greedy {
        tie_break: TieBreakPolicy,
    },
    GreedyFavorite,
    Ggf {
        tie_break: TieBreakPolicy,
    },
    AssignU {
        gamma: f64,
        lambda: Rat,
    },
    AssignUDoubling {
        gamma: f64,
    },
    Rescale {
        c: Rat,
        inner: Box<AlgorithmSpec>,
    },
}

/// Optional parameters accompanying an algorithm id.
#[derive(Debug, Clone)]
pub struct AlgoParams {
    pub tie_break: TieBreakPolicy,
    pub gamma: f64,
    pub lambda: Option<Rat>,
}

impl Default for AlgoParams {
    fn default() -> AlgoParams {
        AlgoParams {
            tie_break: TieBreakPolicy::default(),
            gamma: 2.0,
            lambda: None,
        }
    }
}

impl AlgorithmSpec {
    /// Parses ids: `greedy`, `greedy-favorite`, `ggf`, `assign-u`,
    /// `assign-u-doubling`, and `rescale:<c>:<inner-id>` (recursively).
    pub fn parse(id: &str, params: &AlgoParams) -> Result<AlgorithmSpec> {
        match id {
            "greedy" => Ok(AlgorithmSpec::Greedy {
                tie_break: params.tie_break,
            }),
            "greedy-favorite" => Ok(AlgorithmSpec::GreedyFavorite),
            "ggf" => Ok(AlgorithmSpec::Ggf {
                tie_break: params.tie_break,
            }),
            "assign-u" => {
                let lambda = params.lambda.clone().ok_or_else(|| {
                    Error::Config(
                        "assign-u needs an explicit load estimate (--lambda); \
                         use assign-u-doubling to search for one online"
                            .into(),
                    )
                })?;
                AssignUConfig::check(params.gamma, Some(&lambda))?;
                Ok(AlgorithmSpec::AssignU {
                    gamma: params.gamma,
                    lambda,
                })
            }
            "assign-u-doubling" => {
                AssignUConfig::check(params.gamma, None)?;
                Ok(AlgorithmSpec::AssignUDoubling {
                    gamma: params.gamma,
                })
            }
            other => {
                if let Some(rest) = other.strip_prefix("rescale:") {
                    let (c_text, inner_id) = rest.split_once(':').ok_or_else(|| {
                        Error::Config(format!(
                            "rescale id must look like rescale:<c>:<inner>, got {other:?}"
                        ))
                    })?;
                    let c = parse_rat(c_text)?;
                    if c < Rat::from_integer(1.into()) {
                        return Err(Error::Config(format!(
                            "rescale threshold c must be >= 1, got {c_text}"
                        )));
                    }
                    let inner = AlgorithmSpec::parse(inner_id, params)?;
                    Ok(AlgorithmSpec::Rescale {
                        c,
                        inner: Box::new(inner),
                    })
                } else {
                    Err(Error::Config(format!(
                        "unknown algorithm {other:?}; known ids: greedy, greedy-favorite, \
                         ggf, assign-u, assign-u-doubling, rescale:<c>:<inner>"
                    )))
                }
            }
        }
    }

    /// Instantiates the algorithm for an instance shape. `f` is the smallest
    /// favorite-set size the adversary or instance guarantees; `symmetric`
    /// must be present for algorithms that need the scaling factor.
    pub fn build(
        &self,
        m: usize,
        f: usize,
        symmetric: Option<&SymmetricInfo>,
    ) -> Result<Box<dyn OnlineAlgorithm>> {
        if m == 0 {
            return Err(Error::Config("cannot build an algorithm for m = 0".into()));
        }
        if f == 0 || f > m {
            return Err(Error::Config(format!(
                "favorite-set floor f = {f} out of range 1..={m}"
            )));
        }
        match self {
            AlgorithmSpec::Greedy { tie_break } => Ok(Box::new(Greedy::new(*tie_break))),
            AlgorithmSpec::GreedyFavorite => Ok(Box::new(GreedyFavorite::new())),
            AlgorithmSpec::Ggf { tie_break } => {
                let info = symmetric.ok_or_else(|| {
                    Error::NotSymmetric(
                        "ggf needs the two-group model (its rule is keyed on the scaling factor)"
                            .into(),
                    )
                })?;
                Ok(Box::new(Ggf::new(info.s.clone(), *tie_break)))
            }
            AlgorithmSpec::AssignU { gamma, lambda } => {
                Ok(Box::new(AssignU::new(*gamma, lambda.clone())?))
            }
            AlgorithmSpec::AssignUDoubling { gamma } => {
                Ok(Box::new(AssignUDoubling::new(m, f, *gamma)?))
            }
            AlgorithmSpec::Rescale { c, inner } => {
                let inner_algo = inner.build(m, f, symmetric)?;
                Ok(Box::new(Rescale::new(m, c.clone(), inner_algo)?))
            }
        }
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmSpec::Greedy { tie_break } => match tie_break {
                TieBreakPolicy::BadMachineSmallestIndex => write!(out, "greedy"),
                TieBreakPolicy::SmallestIndex => write!(out, "greedy[ties=smallest-index]"),
            },
            AlgorithmSpec::GreedyFavorite => write!(out, "greedy-favorite"),
            AlgorithmSpec::Ggf { tie_break } => match tie_break {
                TieBreakPolicy::BadMachineSmallestIndex => write!(out, "ggf"),
                TieBreakPolicy::SmallestIndex => write!(out, "ggf[ties=smallest-index]"),
            },
            AlgorithmSpec::AssignU { gamma, lambda } => {
                write!(out, "assign-u(gamma={gamma},lambda={})", format_exact(lambda))
            }
            AlgorithmSpec::AssignUDoubling { gamma } => {
                write!(out, "assign-u-doubling(gamma={gamma})")
            }
            AlgorithmSpec::Rescale { c, inner } => {
                write!(out, "rescale:{}:{inner}", format_exact(c))
            }
        }
    }
}

/// Runs `algo` over the whole instance, returning the resulting schedule.
pub fn run_with(algo: &mut dyn OnlineAlgorithm, instance: &Instance) -> Result<Schedule> {
    let mut loads = LoadVec::zeros(instance.m());
    let mut assignment = Vec::with_capacity(instance.n());
    for job in instance.jobs() {
        let machine = algo.place(job, &loads)?;
        if machine == 0 || machine > instance.m() {
            return Err(Error::Contract(format!(
                "algorithm returned machine {machine}, outside 1..={}",
                instance.m()
            )));
        }
        loads.add(machine, job.time_on(machine));
        assignment.push(machine);
    }
    Schedule::from_assignment(instance, assignment)
}

/// Builds the algorithm for this instance and runs it.
pub fn run(spec: &AlgorithmSpec, instance: &Instance) -> Result<Schedule> {
    let mut algo = spec.build(instance.m(), instance.f(), instance.symmetric_info())?;
    run_with(algo.as_mut(), instance)
}

/// Incremental run driver for adaptive adversaries: jobs are fed one at a
/// time, the instance and schedule materialize at the end.
pub struct LiveRun {
    algo: Box<dyn OnlineAlgorithm>,
    m: usize,
    symmetric: Option<SymmetricInfo>,
    loads: LoadVec,
    jobs: Vec<Job>,
    assignment: Vec<usize>,
}

impl LiveRun {
    pub fn new(
        spec: &AlgorithmSpec,
        m: usize,
        f: usize,
        symmetric: Option<SymmetricInfo>,
    ) -> Result<LiveRun> {
        let algo = spec.build(m, f, symmetric.as_ref())?;
        Ok(LiveRun {
            algo,
            m,
            symmetric,
            loads: LoadVec::zeros(m),
            jobs: Vec::new(),
            assignment: Vec::new(),
        })
    }

    /// Releases one job to the algorithm; returns the machine it picked.
    pub fn feed(&mut self, job: Job) -> Result<usize> {
        let machine = self.algo.place(&job, &self.loads)?;
        if machine == 0 || machine > self.m {
            return Err(Error::Contract(format!(
                "algorithm returned machine {machine}, outside 1..={}",
                self.m
            )));
        }
        self.loads.add(machine, job.time_on(machine));
        self.jobs.push(job);
        self.assignment.push(machine);
        Ok(machine)
    }

    pub fn loads(&self) -> &LoadVec {
        &self.loads
    }

    pub fn makespan(&self) -> Rat {
        self.loads.max()
    }

    pub fn jobs_released(&self) -> usize {
        self.jobs.len()
    }

    /// Finalizes into the released instance plus the algorithm's schedule.
    pub fn finish(self) -> Result<(Instance, Schedule)> {
        let mut instance = Instance::new(self.m, self.jobs)?;
        if let Some(info) = self.symmetric {
            instance = instance.with_symmetric(info);
        }
        let schedule = Schedule::from_assignment(&instance, self.assignment)?;
        Ok((instance, schedule))
    }
}
