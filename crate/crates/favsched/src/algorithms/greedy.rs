//! List-scheduling rules: plain greedy, favorite-restricted greedy, and the
//! scaling-aware switch between the two.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::{OnlineAlgorithm, TieBreakPolicy};
use crate::model::{Job, LoadVec};
use crate::value::{rat, rat_int, Rat};
use crate::Result;

/// Machine minimizing the job's completion time `load + time`, over all
/// machines, ties resolved by `tie_break`.
pub fn greedy_step(job: &Job, loads: &LoadVec, tie_break: TieBreakPolicy) -> usize {
    let mut best: Option<(Rat, usize)> = None;
    for (machine, load) in loads.iter() {
        let completion = load + job.time_on(machine);
        let better = match &best {
            None => true,
            Some((current, chosen)) => match completion.cmp(current) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => match tie_break {
                    TieBreakPolicy::SmallestIndex => false,
                    // Upgrade only from a favorite to a non-favorite; the
                    // scan order keeps indices smallest within each class.
                    TieBreakPolicy::BadMachineSmallestIndex => {
                        job.is_favorite(*chosen) && !job.is_favorite(machine)
                    }
                },
            },
        };
        if better {
            best = Some((completion, machine));
        }
    }
    best.expect("at least one machine").1
}

/// Least-loaded favorite machine, smallest index on ties.
pub fn greedy_favorite_step(job: &Job, loads: &LoadVec) -> usize {
    job.favorites()
        .iter()
        .copied()
        .min_by(|&a, &b| loads.get(a).cmp(loads.get(b)))
        .expect("favorite set is non-empty")
}

/// Completion-time list scheduling over all machines.
#[derive(Debug, Clone)]
pub struct Greedy {
    tie_break: TieBreakPolicy,
}

impl Greedy {
    pub fn new(tie_break: TieBreakPolicy) -> Greedy {
        Greedy { tie_break }
    }
}

impl OnlineAlgorithm for Greedy {
    fn place(&mut self, job: &Job, loads: &LoadVec) -> Result<usize> {
        Ok(greedy_step(job, loads, self.tie_break))
    }
}

/// List scheduling restricted to each job's favorite machines.
#[derive(Debug, Clone, Default)]
pub struct GreedyFavorite;

impl GreedyFavorite {
    pub fn new() -> GreedyFavorite {
        GreedyFavorite
    }
}

impl OnlineAlgorithm for GreedyFavorite {
    fn place(&mut self, job: &Job, loads: &LoadVec) -> Result<usize> {
        Ok(greedy_favorite_step(job, loads))
    }
}

/// Crossover point between the two rules in the two-group model: the root of
/// s^3 + s^2 - 3s - 1 in (1, 2). Below it the unrestricted greedy has the
/// better guarantee, above it the favorite-restricted one.
pub fn ggf_threshold() -> f64 {
    static THRESHOLD: OnceLock<f64> = OnceLock::new();
    *THRESHOLD.get_or_init(|| {
        // Bisection with rational endpoints; the polynomial is increasing on
        // the bracket, so the sign test is reliable and exact.
        let mut lo = rat_int(1);
        let mut hi = rat_int(2);
        let eps = rat(1, 1_000_000_000_000);
        while &hi - &lo > eps {
            let mid = (&lo + &hi) / rat_int(2);
            if crossover_sign(&mid) <= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        crate::value::to_f64(&((&lo + &hi) / rat_int(2)))
    })
}

/// Sign of s^3 + s^2 - 3s - 1, exact.
fn crossover_sign(s: &Rat) -> i8 {
    let value = s * s * s + s * s - s * rat_int(3) - Rat::one();
    if value < Rat::zero() {
        -1
    } else if value > Rat::zero() {
        1
    } else {
        0
    }
}

/// Which rule a scaling factor selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GgfBranch {
    Unrestricted,
    FavoriteOnly,
}

/// Picks plain greedy for small scaling factors and favorite-restricted
/// greedy for large ones. The branch test evaluates the crossover polynomial
/// on the exact rational s, so it agrees with the irrational threshold for
/// every representable input.
#[derive(Debug, Clone)]
pub struct Ggf {
    branch: GgfBranch,
    tie_break: TieBreakPolicy,
}

impl Ggf {
    pub fn new(s: Rat, tie_break: TieBreakPolicy) -> Ggf {
        let branch = if crossover_sign(&s) <= 0 {
            GgfBranch::Unrestricted
        } else {
            GgfBranch::FavoriteOnly
        };
        Ggf { branch, tie_break }
    }

    pub fn uses_unrestricted(&self) -> bool {
        self.branch == GgfBranch::Unrestricted
    }
}

impl OnlineAlgorithm for Ggf {
    fn place(&mut self, job: &Job, loads: &LoadVec) -> Result<usize> {
        let machine = match self.branch {
            GgfBranch::Unrestricted => greedy_step(job, loads, self.tie_break),
            GgfBranch::FavoriteOnly => greedy_favorite_step(job, loads),
        };
        Ok(machine)
    }
}
