//! Exact optimum solvers, instance lower bounds, and the closed-form
//! guarantees the algorithms are tested against.
//!
//! The branch-and-bound solver is exact over rationals. It orders jobs by
//! decreasing minimum time, collapses machines that are interchangeable for
//! the remaining suffix (same load, same time for every remaining job), and
//! descends in order of completion time so that balanced packings are found
//! early. A node budget keeps it from wandering off on adversarial inputs:
//! exceeding the budget is an error, never a silently weaker answer.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algorithms::{greedy_step, TieBreakPolicy};
use crate::model::{Instance, LoadVec, Schedule};
use crate::value::{rat_u, Rat};
use crate::{Error, Result};

/// Outcome of an exact solve.
#[derive(Debug, Clone)]
pub struct OptResult {
    pub opt: Rat,
    pub witness: Schedule,
    /// Search nodes visited; 0 when the warm start already met the root
    /// lower bound.
    pub nodes: u64,
}

/// Node budget used when the caller passes none: the `FAVSCHED_NODE_BUDGET`
/// environment variable, else ten million.
pub fn default_node_budget() -> u64 {
    std::env::var("FAVSCHED_NODE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000_000)
}

struct SearchCtx<'a> {
    instance: &'a Instance,
    /// Job indices (0-based) in decreasing order of minimum time.
    order: Vec<usize>,
    /// Machine equivalence classes per depth: machines with equal class ids
    /// get identical times from every not-yet-placed job.
    class_at: Vec<Vec<usize>>,
    /// Sum of minimum times of the jobs from each depth on.
    suffix_pmin: Vec<Rat>,
    budget: u64,
    nodes: u64,
    best: Rat,
    best_assign: Vec<usize>,
}

impl SearchCtx<'_> {
    fn dfs(
        &mut self,
        depth: usize,
        loads: &mut Vec<Rat>,
        current_max: &Rat,
        total: &Rat,
        assignment: &mut Vec<usize>,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        let m = self.instance.m();
        // Bound: finished machines can't shrink, the remaining work spreads
        // at best evenly, and the largest remaining job runs somewhere.
        let mut lb = current_max.clone();
        let spread = (total + &self.suffix_pmin[depth]) / rat_u(m);
        if spread > lb {
            lb = spread;
        }
        if depth < self.order.len() {
            let next_pmin = self.instance.jobs()[self.order[depth]].pmin();
            if *next_pmin > lb {
                lb = next_pmin.clone();
            }
        }
        if lb >= self.best {
            return Ok(());
        }
        if depth == self.order.len() {
            self.best = current_max.clone();
            self.best_assign = assignment.clone();
            return Ok(());
        }
        let job_idx = self.order[depth];
        let job = &self.instance.jobs()[job_idx];
        // One representative per (suffix class, load); order by completion.
        let mut reps: BTreeMap<(usize, Rat), usize> = BTreeMap::new();
        for (i, load) in loads.iter().enumerate() {
            reps.entry((self.class_at[depth][i], load.clone()))
                .or_insert(i);
        }
        let mut candidates: Vec<(Rat, usize)> = reps
            .values()
            .map(|&i| (&loads[i] + job.time_on(i + 1), i))
            .collect();
        candidates.sort();
        for (completion, i) in candidates {
            let time = job.time_on(i + 1).clone();
            let new_max = if completion > *current_max {
                completion.clone()
            } else {
                current_max.clone()
            };
            loads[i] += &time;
            let new_total = total + &time;
            assignment[job_idx] = i + 1;
            self.dfs(depth + 1, loads, &new_max, &new_total, assignment)?;
            loads[i] -= &time;
            assignment[job_idx] = 0;
        }
        Ok(())
    }
}

/// Exact minimum makespan with a witness schedule, by branch and bound.
/// `budget` caps the visited node count (default: [`default_node_budget`]).
pub fn exact_opt(instance: &Instance, budget: Option<u64>) -> Result<OptResult> {
    let m = instance.m();
    let n = instance.n();
    if n == 0 {
        return Ok(OptResult {
            opt: Rat::zero(),
            witness: Schedule::from_assignment(instance, vec![])?,
            nodes: 0,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        instance.jobs()[b]
            .pmin()
            .cmp(instance.jobs()[a].pmin())
            .then(a.cmp(&b))
    });

    // Suffix refinement: at the end every machine is interchangeable; each
    // job going backwards splits classes by the time it takes on them.
    let mut class_at = vec![vec![0usize; m]; n + 1];
    for k in (0..n).rev() {
        let job = &instance.jobs()[order[k]];
        let mut ids: BTreeMap<(usize, Rat), usize> = BTreeMap::new();
        for i in 0..m {
            let key = (class_at[k + 1][i], job.time_on(i + 1).clone());
            let next = ids.len();
            class_at[k][i] = *ids.entry(key).or_insert(next);
        }
    }

    let mut suffix_pmin = vec![Rat::zero(); n + 1];
    for k in (0..n).rev() {
        suffix_pmin[k] = &suffix_pmin[k + 1] + instance.jobs()[order[k]].pmin();
    }

    // Warm start: greedy over the sorted order.
    let mut warm_assign = vec![0usize; n];
    let mut warm_loads = LoadVec::zeros(m);
    for &idx in &order {
        let job = &instance.jobs()[idx];
        let machine = greedy_step(job, &warm_loads, TieBreakPolicy::BadMachineSmallestIndex);
        warm_loads.add(machine, job.time_on(machine));
        warm_assign[idx] = machine;
    }
    let warm_best = warm_loads.max();

    let root_lb = {
        let mut lb = &suffix_pmin[0] / rat_u(m);
        let maxp = instance.jobs()[order[0]].pmin();
        if *maxp > lb {
            lb = maxp.clone();
        }
        lb
    };

    let mut ctx = SearchCtx {
        instance,
        order,
        class_at,
        suffix_pmin,
        budget: budget.unwrap_or_else(default_node_budget),
        nodes: 0,
        best: warm_best.clone(),
        best_assign: warm_assign,
    };

    if warm_best > root_lb {
        let mut loads = vec![Rat::zero(); m];
        let mut assignment = vec![0usize; n];
        let (zero_max, zero_total) = (Rat::zero(), Rat::zero());
        ctx.dfs(0, &mut loads, &zero_max, &zero_total, &mut assignment)?;
    }

    let witness = Schedule::from_assignment(instance, ctx.best_assign.clone())?;
    Ok(OptResult {
        opt: ctx.best,
        witness,
        nodes: ctx.nodes,
    })
}

/// Brute-force minimum makespan over all m^n assignments. Refuses instances
/// with more than 2^20 assignments; meant as an independent check on the
/// branch-and-bound solver, not for production use.
pub fn exhaustive_opt(instance: &Instance) -> Result<OptResult> {
    let m = instance.m();
    let n = instance.n();
    let space = (m as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Oracle("assignment space overflows".into()))?;
    if space > 1 << 20 {
        return Err(Error::Oracle(format!(
            "assignment space {space} exceeds the exhaustive limit 2^20"
        )));
    }
    let mut best: Option<Rat> = None;
    let mut best_assign = vec![1usize; n];
    let mut assignment = vec![1usize; n];
    let mut leaves = 0u64;

    fn descend(
        instance: &Instance,
        depth: usize,
        loads: &mut Vec<Rat>,
        assignment: &mut Vec<usize>,
        best: &mut Option<Rat>,
        best_assign: &mut Vec<usize>,
        leaves: &mut u64,
    ) {
        if depth == instance.n() {
            *leaves += 1;
            let makespan = loads.iter().max().cloned().unwrap_or_else(Rat::zero);
            if best.as_ref().map_or(true, |b| makespan < *b) {
                *best = Some(makespan);
                best_assign.clone_from(assignment);
            }
            return;
        }
        let job = &instance.jobs()[depth];
        for i in 0..instance.m() {
            let time = job.time_on(i + 1).clone();
            loads[i] += &time;
            assignment[depth] = i + 1;
            descend(
                instance, depth + 1, loads, assignment, best, best_assign, leaves,
            );
            loads[i] -= &time;
        }
    }

    let mut loads = vec![Rat::zero(); m];
    descend(
        instance,
        0,
        &mut loads,
        &mut assignment,
        &mut best,
        &mut best_assign,
        &mut leaves,
    );
    let opt = best.unwrap_or_else(Rat::zero);
    let witness = Schedule::from_assignment(instance, best_assign)?;
    Ok(OptResult {
        opt,
        witness,
        nodes: leaves,
    })
}

/// Fractionally relaxed optimum bound: work spread evenly, and no job beats
/// its minimum time.
pub fn lb_general(instance: &Instance) -> Rat {
    let mut lb = instance.total_pmin() / rat_u(instance.m());
    for job in instance.jobs() {
        if *job.pmin() > lb {
            lb = job.pmin().clone();
        }
    }
    lb
}

fn symmetric_class_totals(instance: &Instance) -> Result<(Rat, Rat, Rat, usize, Rat)> {
    let info = instance
        .symmetric_info()
        .cloned()
        .ok_or_else(|| Error::NotSymmetric("this bound needs the two-group model".into()))?;
    let last = instance
        .jobs()
        .last()
        .ok_or_else(|| Error::Oracle("bound needs at least one job".into()))?;
    let last_first_group = last.is_favorite(1);
    let mut same = Rat::zero();
    let mut other = Rat::zero();
    for job in &instance.jobs()[..instance.n() - 1] {
        if job.is_favorite(1) == last_first_group {
            same += job.pmin();
        } else {
            other += job.pmin();
        }
    }
    Ok((same, other, last.pmin().clone(), info.f, info.s))
}

/// Weighted-average optimum bound for two-group instances, anchored on the
/// last job: with T the total minimum time of the earlier jobs sharing that
/// job's favorite group, U the earlier total on the other group, and p the
/// last job's minimum time,
///
///   opt >= max{ (sT + U + sp) / (fs(s+1)), (T + sU + s^2 p) / (fs(s+1)), p }.
pub fn lb_symmetric(instance: &Instance) -> Result<Rat> {
    let (t_same, t_other, p_last, f, s) = symmetric_class_totals(instance)?;
    let denom = rat_u(f) * &s * (&s + Rat::one());
    let bound1 = (&s * &t_same + &t_other + &s * &p_last) / &denom;
    let bound2 = (&t_same + &s * &t_other + &s * &s * &p_last) / &denom;
    let mut lb = p_last;
    if bound1 > lb {
        lb = bound1;
    }
    if bound2 > lb {
        lb = bound2;
    }
    Ok(lb)
}

/// Group-balance optimum bound for two-group instances: with P and Q the
/// per-class minimum-time totals, P >= Q,
///
///   opt >= (sP + Q) / (f(s+1)).
pub fn lb_balance(instance: &Instance) -> Result<Rat> {
    let info = instance
        .symmetric_info()
        .cloned()
        .ok_or_else(|| Error::NotSymmetric("this bound needs the two-group model".into()))?;
    let mut first = Rat::zero();
    let mut second = Rat::zero();
    for job in instance.jobs() {
        if job.is_favorite(1) {
            first += job.pmin();
        } else {
            second += job.pmin();
        }
    }
    let (heavier, lighter) = if first >= second {
        (first, second)
    } else {
        (second, first)
    };
    let s = info.s;
    Ok((&s * heavier + lighter) / (rat_u(info.f) * (&s + Rat::one())))
}

/// online / opt, demanding a positive optimum unless both costs are zero
/// (the empty instance, ratio 1).
pub fn competitive_ratio(online: &Rat, opt: &Rat) -> Result<Rat> {
    if *opt <= Rat::zero() {
        if *opt == Rat::zero() && *online == Rat::zero() {
            return Ok(Rat::one());
        }
        return Err(Error::Oracle(format!(
            "cannot form a ratio against optimum {opt}"
        )));
    }
    Ok(online / opt)
}

/// Guarantee of completion-time greedy on general instances: (m+f-1)/f.
pub fn greedy_bound(m: usize, f: usize) -> Rat {
    (rat_u(m) + rat_u(f) - Rat::one()) / rat_u(f)
}

/// Guarantee of completion-time greedy on two-group instances:
/// min{ 1 + (2-1/f)s^2/(s+1), s + (2-1/f)s/(s+1), 3 - 1/f }.
pub fn greedy_symmetric_bound(f: usize, s: &Rat) -> Rat {
    let weight = rat_u(2) - Rat::one() / rat_u(f);
    let splus = s + Rat::one();
    let quad = Rat::one() + &weight * s * s / &splus;
    let linear = s + &weight * s / &splus;
    let cap = rat_u(3) - Rat::one() / rat_u(f);
    let mut bound = quad;
    if linear < bound {
        bound = linear;
    }
    if cap < bound {
        bound = cap;
    }
    bound
}

/// Guarantee of favorite-restricted greedy on two-group instances:
/// 2 - 1/f + 1/s.
pub fn greedy_favorite_bound(f: usize, s: &Rat) -> Rat {
    rat_u(2) - Rat::one() / rat_u(f) + Rat::one() / s
}

/// Guarantee of the scaling-aware switch, independent of f:
/// min{ s(s+3)/(s+1), 2 + 1/s }. The two branches cross exactly where the
/// switch changes rule.
pub fn ggf_bound(s: &Rat) -> Rat {
    let switch_low = s * (s + rat_u(3)) / (s + Rat::one());
    let switch_high = rat_u(2) + Rat::one() / s;
    if switch_low < switch_high {
        switch_low
    } else {
        switch_high
    }
}

/// Ratio every deterministic algorithm can be forced to on two machines with
/// one favorite each: min{ 1 + s^2/(s+1), 1 + 1/s }.
pub fn two_machine_forced_ratio(s: &Rat) -> Rat {
    let continue_case = Rat::one() + s * s / (s + Rat::one());
    let stop_case = Rat::one() + Rat::one() / s;
    if continue_case < stop_case {
        continue_case
    } else {
        stop_case
    }
}

/// Guarantee of the rescaling wrapper around greedy, at threshold c with
/// rewritten favorite-set floor f.
pub fn rescale_bound(c: &Rat, m: usize, f_hat: usize) -> Rat {
    c * greedy_bound(m, f_hat)
}
