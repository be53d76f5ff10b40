//! Tight sequences for the two-group model: constructions that push the
//! default greedy exactly onto its guarantee, plus the matching sequence
//! for the favorite-only rule.
//!
//! The drip constructions share a skeleton. A prefix of tiny jobs walks
//! every machine up to a common level t: the first block seeds one group,
//! then each block of f jobs favors the heavier group so that greedy dumps
//! it on the lighter one, raising the floor by one grain. On that floor,
//! geometrically shrinking waves a_i = (s-1)^i exploit the exact tie
//! s * a_i = a_{i+1} + a_i to ratchet one group upward while the other
//! lags one term behind, and a closing unit job lands off-group through
//! the tie s - a_1 = 1. The grain size eps never touches the online cost
//! (the prefix is sized so the blocks divide t exactly); it only blurs the
//! witness, which is why each outcome carries an explicit slack.

use num_traits::{One, Zero};

use super::AdversaryReport;
use crate::algorithms::{run, AlgoParams, AlgorithmSpec};
use crate::model::{Group, Instance, Schedule, SymJob, SymmetricInstance};
use crate::oracle::greedy_favorite_bound;
use crate::value::{ceil_to_usize, rat, rat_u, Rat};
use crate::{Error, Result};

/// Result of a tight run: what greedy paid, the witness, and how far the
/// measured ratio may sit from the closed form (0 for the exact cases).
#[derive(Debug, Clone)]
pub struct TightOutcome {
    pub case_id: u8,
    pub report: AdversaryReport,
    pub closed_form: Rat,
    pub slack: Rat,
    pub epsilon_used: Option<Rat>,
}

/// Fixed sequence on which the favorite-only rule pays exactly
/// 2 - 1/f + 1/s against an optimum of one.
#[derive(Debug, Clone)]
pub struct GfTightConstruction {
    pub instance: Instance,
    pub witness: Schedule,
    pub target_ratio: Rat,
}

fn greedy_spec() -> Result<AlgorithmSpec> {
    AlgorithmSpec::parse("greedy", &AlgoParams::default())
}

/// The prefix staircase as a standalone instance: k = t/eps blocks of f
/// jobs each, walking the group loads to (t, t - eps) under greedy.
/// Requires t to be an exact multiple of eps and a slowdown of at most 2;
/// above 2 the drip jobs become cheap enough to place on the heavy side
/// and the climb stalls.
pub fn small_jobs_prefix(f: usize, s: &Rat, t: &Rat, eps: &Rat) -> Result<SymmetricInstance> {
    if eps <= &Rat::zero() {
        return Err(Error::Parameter(format!(
            "grain size must be positive, got {eps}"
        )));
    }
    if t <= &Rat::zero() {
        return Err(Error::Parameter(format!(
            "target level must be positive, got {t}"
        )));
    }
    if s > &rat_u(2) {
        return Err(Error::Parameter(format!(
            "the drip only climbs for slowdowns at most 2, got {s}"
        )));
    }
    let blocks = t / eps;
    if !blocks.is_integer() {
        return Err(Error::Parameter(format!(
            "target level {t} must be an integer multiple of the grain {eps}"
        )));
    }
    let k = ceil_to_usize(&blocks)?;
    SymmetricInstance::new(f, s.clone(), prefix_blocks(f, s, k, eps))
}

/// Job list of the staircase. Which group each block favors depends on the
/// tie rule's behavior at s = 1, where the very first block already lands
/// off-group and the parity flips.
fn prefix_blocks(f: usize, s: &Rat, k: usize, eps: &Rat) -> Vec<SymJob> {
    let mut jobs = Vec::with_capacity(k * f);
    for _ in 0..f {
        jobs.push(SymJob {
            pmin: eps.clone(),
            group: Group::One,
        });
    }
    let drip = rat_u(2) * eps / s;
    let flipped = s.is_one();
    for block in 2..=k {
        let group = match (block % 2 == 0, flipped) {
            (true, false) | (false, true) => Group::One,
            _ => Group::Two,
        };
        for _ in 0..f {
            jobs.push(SymJob {
                pmin: drip.clone(),
                group,
            });
        }
    }
    jobs
}

/// Staircase to level t on every machine: the bare prefix leaves the groups
/// at (t, t - eps), so one more block of grains aimed at the light group
/// levels them. Returns the jobs and the grain actually used (t/k, so the
/// blocks divide t exactly). Empty for t = 0.
fn balanced_prefix(f: usize, s: &Rat, t: &Rat, eps_request: &Rat) -> Result<(Vec<SymJob>, Rat)> {
    if t < &Rat::zero() {
        return Err(Error::Parameter(format!(
            "prefix level must be non-negative, got {t}"
        )));
    }
    if eps_request <= &Rat::zero() {
        return Err(Error::Parameter(format!(
            "grain size must be positive, got {eps_request}"
        )));
    }
    if t.is_zero() {
        return Ok((Vec::new(), Rat::zero()));
    }
    let k = ceil_to_usize(&(t / eps_request))?.max(1);
    let eps = t / rat_u(k);
    let mut jobs = prefix_blocks(f, s, k, &eps);

    // Replay the prefix to see which group greedy left light, instead of
    // reasoning about block parity twice.
    let sym = SymmetricInstance::new(f, s.clone(), jobs.clone())?;
    let schedule = run(&greedy_spec()?, &sym.to_instance())?;
    let group_load = |group: Group| -> Rat {
        sym.group_machines(group)
            .map(|machine| schedule.loads().get(machine).clone())
            .sum()
    };
    let light = if group_load(Group::One) <= group_load(Group::Two) {
        Group::One
    } else {
        Group::Two
    };
    for _ in 0..f {
        jobs.push(SymJob {
            pmin: eps.clone(),
            group: light,
        });
    }
    Ok((jobs, eps))
}

/// Runs the default greedy against the tight sequence for one of the five
/// parameter regimes and certifies the outcome with a witness schedule.
///
/// 1. one favorite per group, any slowdown (exact);
/// 2. two favorites per group, slowdown up to 1.605 (drip, even depth);
/// 3. three or more favorites, slowdown up to 1.5 (drip, even depth);
/// 4. slowdown below the golden ratio with f(s-1) comfortably above s
///    (drip, odd depth);
/// 5. slowdown strictly above the group size (exact).
///
/// `depth` is the number of drip waves and `eps` the requested grain; both
/// are ignored by the exact regimes 1 and 5.
pub fn tight_symmetric(
    case: u8,
    f: usize,
    s: &Rat,
    depth: usize,
    eps: &Rat,
) -> Result<TightOutcome> {
    if s < &Rat::one() {
        return Err(Error::Parameter(format!(
            "slowdown must be at least 1, got {s}"
        )));
    }
    match case {
        1 => tight_single_favorite(f, s),
        2 | 3 => tight_even_drip(case, f, s, depth, eps),
        4 => tight_odd_drip(f, s, depth, eps),
        5 => tight_high_slowdown(f, s),
        other => Err(Error::Parameter(format!(
            "no tight regime numbered {other}; pick 1-5"
        ))),
    }
}

fn finish_case(
    case_id: u8,
    f: usize,
    s: &Rat,
    jobs: Vec<SymJob>,
    witness_assign: Vec<usize>,
    closed_form: Rat,
    slack: Rat,
    epsilon_used: Option<Rat>,
) -> Result<TightOutcome> {
    let sym = SymmetricInstance::new(f, s.clone(), jobs)?;
    let instance = sym.to_instance();
    let online = run(&greedy_spec()?, &instance)?;
    let witness = Schedule::from_assignment(&instance, witness_assign)?;
    let report = AdversaryReport::new(instance, online, witness)?;
    Ok(TightOutcome {
        case_id,
        report,
        closed_form,
        slack,
        epsilon_used,
    })
}

/// f = 1: three jobs suffice and the ratio is exact. Below the golden
/// ratio the third job still fits next to the first two; above it, parking
/// the second job off-group is already the better greedy move and the
/// ratio caps at 2.
fn tight_single_favorite(f: usize, s: &Rat) -> Result<TightOutcome> {
    if f != 1 {
        return Err(Error::Parameter(format!(
            "the single-favorite regime needs f = 1, got {f}"
        )));
    }
    let one = Rat::one();
    let below_golden = s * s <= s + &one;
    let jobs = if below_golden {
        vec![
            SymJob {
                pmin: &one / (s + &one),
                group: Group::Two,
            },
            SymJob {
                pmin: s / (s + &one),
                group: Group::Two,
            },
            SymJob {
                pmin: one.clone(),
                group: Group::One,
            },
        ]
    } else {
        vec![
            SymJob {
                pmin: (s - &one) / s,
                group: Group::Two,
            },
            SymJob {
                pmin: &one / s,
                group: Group::Two,
            },
            SymJob {
                pmin: one.clone(),
                group: Group::One,
            },
        ]
    };
    let closed_form = if below_golden {
        &one + s * s / (s + &one)
    } else {
        rat_u(2)
    };
    finish_case(
        1,
        f,
        s,
        jobs,
        vec![2, 2, 1],
        closed_form,
        Rat::zero(),
        None,
    )
}

/// s > f >= 2: two off-group waves pin every machine at one, f(f-1) grains
/// wall up the first group, and the closing unit job has nowhere cheap
/// left. Exact, no prefix needed.
fn tight_high_slowdown(f: usize, s: &Rat) -> Result<TightOutcome> {
    if f < 2 {
        return Err(Error::Parameter(format!(
            "the high-slowdown regime needs at least two favorites per group, got {f}"
        )));
    }
    if s <= &rat_u(f) {
        return Err(Error::Parameter(format!(
            "the high-slowdown regime needs s strictly above f = {f}, got {s}"
        )));
    }
    let one = Rat::one();
    let mut jobs = Vec::with_capacity(2 * f + f * (f - 1) + 1);
    for _ in 0..f {
        jobs.push(SymJob {
            pmin: &one - &one / s,
            group: Group::Two,
        });
    }
    for _ in 0..f {
        jobs.push(SymJob {
            pmin: &one / s,
            group: Group::Two,
        });
    }
    let grain = &one / rat_u(f);
    for _ in 0..f * (f - 1) {
        jobs.push(SymJob {
            pmin: grain.clone(),
            group: Group::One,
        });
    }
    jobs.push(SymJob {
        pmin: one.clone(),
        group: Group::One,
    });

    let mut witness = Vec::with_capacity(jobs.len());
    for i in 0..f {
        witness.push(f + 1 + i);
    }
    for i in 0..f {
        witness.push(f + 1 + i);
    }
    for idx in 0..f * (f - 1) {
        witness.push(1 + idx / f);
    }
    witness.push(f);

    let closed_form = rat_u(3) - &one / rat_u(f);
    finish_case(5, f, s, jobs, witness, closed_form, Rat::zero(), None)
}

/// Shared core of the even-depth drip (regimes 2 and 3): prefix to t, an
/// off-group double wave to t + g, then waves a_u .. a_1 and the closing
/// unit job, for an online cost of exactly 1 + (2 - 1/f) s^2 / (s+1).
fn tight_even_drip(case: u8, f: usize, s: &Rat, depth: usize, eps: &Rat) -> Result<TightOutcome> {
    match case {
        2 if f != 2 => {
            return Err(Error::Parameter(format!(
                "this drip regime is pinned to f = 2, got {f}"
            )))
        }
        3 if f < 3 => {
            return Err(Error::Parameter(format!(
                "this drip regime needs at least three favorites per group, got {f}"
            )))
        }
        _ => {}
    }
    let ceiling = if case == 2 { rat(321, 200) } else { rat(3, 2) };
    if s > &ceiling {
        return Err(Error::Parameter(format!(
            "slowdown {s} exceeds this regime's ceiling {ceiling}"
        )));
    }
    if depth < 2 || depth % 2 != 0 {
        return Err(Error::Parameter(format!(
            "drip depth must be even and at least 2, got {depth}"
        )));
    }

    let one = Rat::one();
    let fr = rat_u(f);
    let a = powers_of_gap(s, depth);
    let tail: Rat = a[1..].iter().fold(Rat::zero(), |acc, x| acc + x);
    let weight = rat_u(2) - &one / &fr;
    let l_alpha = &weight * s * s / (s + &one);
    let l_beta_good = (&fr + s - &fr * s) / (&fr * (s + &one));
    let t = &l_alpha - &tail - &l_beta_good + &a[depth];
    let g = &l_beta_good - &a[depth];
    if t < Rat::zero() {
        return Err(Error::Parameter(format!(
            "prefix level comes out negative ({t}); lower the depth"
        )));
    }
    if g < Rat::zero() {
        return Err(Error::Parameter(format!(
            "off-group wave comes out negative ({g}); raise the depth or lower s"
        )));
    }

    let (mut jobs, eps_used) = balanced_prefix(f, s, &t, eps)?;
    if g > Rat::zero() {
        for _ in 0..f {
            jobs.push(SymJob {
                pmin: g.clone(),
                group: Group::Two,
            });
        }
        let echo = &g / s;
        for _ in 0..f {
            jobs.push(SymJob {
                pmin: echo.clone(),
                group: Group::Two,
            });
        }
    }
    if s > &one {
        for _ in 0..f {
            jobs.push(SymJob {
                pmin: a[depth].clone(),
                group: Group::Two,
            });
        }
        for _ in 0..f {
            jobs.push(SymJob {
                pmin: a[depth - 1].clone(),
                group: Group::Two,
            });
        }
        for i in (1..=depth - 2).rev() {
            let group = if i % 2 == 0 { Group::One } else { Group::Two };
            for _ in 0..f {
                jobs.push(SymJob {
                    pmin: a[i].clone(),
                    group,
                });
            }
        }
    }
    jobs.push(SymJob {
        pmin: one.clone(),
        group: Group::One,
    });

    let witness = all_good_lpt(f, &jobs);
    let closed_form = &l_alpha + &one;
    let slack = rat_u(10) * &a[depth] + rat_u(100) * &eps_used;
    finish_case(case, f, s, jobs, witness, closed_form, slack, Some(eps_used))
}

/// Odd-depth drip for slowdowns below the golden ratio: no off-group wave,
/// the first drip lands on-group, and the online cost is exactly
/// s + (2 - 1/f) s / (s+1). The witness rebalances by parking a sliver of
/// the prefix off-group.
fn tight_odd_drip(f: usize, s: &Rat, depth: usize, eps: &Rat) -> Result<TightOutcome> {
    if depth % 2 == 0 {
        return Err(Error::Parameter(format!(
            "drip depth must be odd, got {depth}"
        )));
    }
    let one = Rat::one();
    if s * s > s + &one {
        return Err(Error::Parameter(format!(
            "slowdown {s} is above the golden ratio; the closing tie breaks"
        )));
    }
    if s <= &one {
        return Err(Error::Parameter(
            "this regime needs a slowdown strictly above 1".into(),
        ));
    }
    let a = powers_of_gap(s, depth);
    let margin = s - &one - (s + &one) * &a[depth];
    if margin <= Rat::zero() {
        return Err(Error::Parameter(format!(
            "drip depth {depth} too shallow for slowdown {s}: the tail term dominates"
        )));
    }
    let fr = rat_u(f);
    if &fr * &margin <= *s {
        return Err(Error::Parameter(format!(
            "need more favorites per group: f(s - 1 - (s+1)(s-1)^depth) must exceed s, got f = {f}, s = {s}"
        )));
    }
    let l_alpha_good = (&fr * s - &fr - s) / (&fr * (s + &one));
    let l_alpha = s + &l_alpha_good;
    let tail: Rat = a[1..].iter().fold(Rat::zero(), |acc, x| acc + x);
    let t = &l_alpha - &tail;
    if t < Rat::zero() {
        return Err(Error::Parameter(format!(
            "prefix level comes out negative ({t}); lower the depth"
        )));
    }

    let (mut jobs, eps_used) = balanced_prefix(f, s, &t, eps)?;
    let prefix_len = jobs.len();
    for _ in 0..f {
        jobs.push(SymJob {
            pmin: a[depth].clone(),
            group: Group::One,
        });
    }
    for i in (1..=depth - 1).rev() {
        let group = if i % 2 == 0 { Group::One } else { Group::Two };
        for _ in 0..f {
            jobs.push(SymJob {
                pmin: a[i].clone(),
                group,
            });
        }
    }
    jobs.push(SymJob {
        pmin: one.clone(),
        group: Group::One,
    });

    let steal = &fr * (&l_alpha_good - &a[depth]) / s;
    let witness = steal_witness(f, s, &jobs, prefix_len, &steal)?;
    let closed_form = s + (rat_u(2) - &one / &fr) * s / (s + &one);
    let slack = rat_u(10) * &a[depth] + rat_u(100) * &eps_used;
    finish_case(4, f, s, jobs, witness, closed_form, slack, Some(eps_used))
}

/// Powers (s-1)^0 ..= (s-1)^exp.
fn powers_of_gap(s: &Rat, exp: usize) -> Vec<Rat> {
    let gap = s - Rat::one();
    let mut out = Vec::with_capacity(exp + 1);
    out.push(Rat::one());
    for i in 1..=exp {
        let next = &out[i - 1] * &gap;
        out.push(next);
    }
    out
}

/// Witness that keeps every job on its own group, spreading each group's
/// pool largest-first over its f machines.
fn all_good_lpt(f: usize, jobs: &[SymJob]) -> Vec<usize> {
    let mut assign = vec![0usize; jobs.len()];
    for group in [Group::One, Group::Two] {
        let pool: Vec<(usize, Rat)> = jobs
            .iter()
            .enumerate()
            .filter(|(_, job)| job.group == group)
            .map(|(i, job)| (i, job.pmin.clone()))
            .collect();
        let machines: Vec<usize> = match group {
            Group::One => (1..=f).collect(),
            Group::Two => (f + 1..=2 * f).collect(),
        };
        fill_least_loaded(pool, &machines, &mut assign);
    }
    assign
}

/// Witness for the odd drip: group one's pool runs light by exactly
/// s * steal, so that much prefix work is taken from group two and parked
/// off-group (costing s per unit), which levels both groups at one.
fn steal_witness(
    f: usize,
    s: &Rat,
    jobs: &[SymJob],
    prefix_len: usize,
    steal: &Rat,
) -> Result<Vec<usize>> {
    let mut stolen = vec![false; jobs.len()];
    let mut taken = Rat::zero();
    for (i, job) in jobs.iter().enumerate().take(prefix_len) {
        if taken >= *steal {
            break;
        }
        if job.group == Group::Two {
            stolen[i] = true;
            taken += &job.pmin;
        }
    }
    if taken < *steal {
        return Err(Error::Contract(format!(
            "prefix holds only {taken} of off-group work, needed {steal}; lower the grain size"
        )));
    }
    let mut first_pool: Vec<(usize, Rat)> = Vec::new();
    let mut second_pool: Vec<(usize, Rat)> = Vec::new();
    for (i, job) in jobs.iter().enumerate() {
        match (job.group, stolen[i]) {
            (Group::One, _) => first_pool.push((i, job.pmin.clone())),
            (Group::Two, true) => first_pool.push((i, s * &job.pmin)),
            (Group::Two, false) => second_pool.push((i, job.pmin.clone())),
        }
    }
    let first_machines: Vec<usize> = (1..=f).collect();
    let second_machines: Vec<usize> = (f + 1..=2 * f).collect();
    let mut assign = vec![0usize; jobs.len()];
    fill_least_loaded(first_pool, &first_machines, &mut assign);
    fill_least_loaded(second_pool, &second_machines, &mut assign);
    Ok(assign)
}

/// Largest contribution first, always onto the lightest machine of the
/// slice (earliest on ties).
fn fill_least_loaded(mut pool: Vec<(usize, Rat)>, machines: &[usize], assign: &mut [usize]) {
    pool.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut loads = vec![Rat::zero(); machines.len()];
    for (job, contribution) in pool {
        let mut pick = 0;
        for (pos, load) in loads.iter().enumerate() {
            if *load < loads[pick] {
                pick = pos;
            }
        }
        assign[job] = machines[pick];
        loads[pick] += &contribution;
    }
}

/// Sequence on which the favorite-only rule pays 2 - 1/f + 1/s exactly:
/// f(f-1) grains spread over the first group, f jobs of 1/s stack on top,
/// and a unit job closes. The witness walls the grains onto f-1 machines,
/// parks the 1/s jobs off-group (each costing exactly 1 there), and gives
/// the unit job the freed machine.
pub fn gf_tight(f: usize, s: &Rat) -> Result<GfTightConstruction> {
    if f == 0 {
        return Err(Error::Parameter("need at least one favorite".into()));
    }
    if s < &Rat::one() {
        return Err(Error::Parameter(format!(
            "slowdown must be at least 1, got {s}"
        )));
    }
    let one = Rat::one();
    let grain = &one / rat_u(f);
    let mut jobs = Vec::with_capacity(f * f + 1);
    for _ in 0..f * (f - 1) {
        jobs.push(SymJob {
            pmin: grain.clone(),
            group: Group::One,
        });
    }
    for _ in 0..f {
        jobs.push(SymJob {
            pmin: &one / s,
            group: Group::One,
        });
    }
    jobs.push(SymJob {
        pmin: one.clone(),
        group: Group::One,
    });

    let mut witness_assign = Vec::with_capacity(jobs.len());
    for idx in 0..f * (f - 1) {
        witness_assign.push(1 + idx / f);
    }
    for i in 0..f {
        witness_assign.push(f + 1 + i);
    }
    witness_assign.push(f);

    let sym = SymmetricInstance::new(f, s.clone(), jobs)?;
    let instance = sym.to_instance();
    let witness = Schedule::from_assignment(&instance, witness_assign)?;
    Ok(GfTightConstruction {
        instance,
        witness,
        target_ratio: greedy_favorite_bound(f, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat_int;
    use num_traits::Signed;

    #[test]
    fn staircase_walks_the_groups_apart() {
        let eps = rat(1, 100);
        let t = rat(2, 100);
        let sym = small_jobs_prefix(1, &rat(3, 2), &t, &eps).unwrap();
        let schedule = run(&greedy_spec().unwrap(), &sym.to_instance()).unwrap();
        let sorted = schedule.loads().sorted();
        assert_eq!(sorted.values(), &[rat(2, 100), rat(1, 100)]);

        // at s = 1 the first block already lands off-group and the parity flips
        let sym = small_jobs_prefix(1, &rat_int(1), &t, &eps).unwrap();
        let schedule = run(&greedy_spec().unwrap(), &sym.to_instance()).unwrap();
        assert_eq!(schedule.loads().get(1), &rat(2, 100));
        assert_eq!(schedule.loads().get(2), &rat(1, 100));
    }

    #[test]
    fn staircase_rejects_misaligned_grain() {
        assert!(small_jobs_prefix(1, &rat(3, 2), &rat(3, 200), &rat(1, 100)).is_err());
        assert!(small_jobs_prefix(1, &rat(3, 2), &rat(1, 100), &rat(0, 1)).is_err());
        assert!(small_jobs_prefix(1, &rat(5, 2), &rat(2, 100), &rat(1, 100)).is_err());
    }

    #[test]
    fn single_favorite_regime_is_exact() {
        let zero = Rat::zero();
        let one = rat_int(1);
        for (s, expected) in [
            (rat_int(1), rat(3, 2)),
            (rat(13, 10), rat(399, 230)),
            (rat_int(2), rat_int(2)),
        ] {
            let outcome = tight_symmetric(1, 1, &s, 0, &one).unwrap();
            assert_eq!(outcome.report.forced_ratio, expected, "s = {s}");
            assert_eq!(outcome.report.claimed_opt, one);
            assert_eq!(outcome.slack, zero);
        }
    }

    #[test]
    fn high_slowdown_regime_is_exact() {
        let outcome = tight_symmetric(5, 2, &rat_int(3), 0, &rat_int(1)).unwrap();
        assert_eq!(outcome.report.forced_ratio, rat(5, 2));
        assert_eq!(outcome.report.claimed_opt, rat_int(1));
        assert_eq!(outcome.closed_form, rat(5, 2));

        assert!(tight_symmetric(5, 2, &rat_int(2), 0, &rat_int(1)).is_err());
        assert!(tight_symmetric(5, 1, &rat_int(3), 0, &rat_int(1)).is_err());
    }

    #[test]
    fn even_drip_pays_exactly_the_closed_form() {
        // hand-checked: t = 5/8, g = 5/48, waves 1/16 then 1/4
        let s = rat(5, 4);
        let outcome = tight_symmetric(2, 2, &s, 2, &rat(1, 100)).unwrap();
        assert_eq!(outcome.closed_form, rat(49, 24));
        assert_eq!(outcome.report.online_cost, rat(49, 24));
        assert!(outcome.report.claimed_opt >= rat_int(1));
        assert!(outcome.report.claimed_opt <= rat_int(1) + rat(1, 25));
        let gap = (&outcome.report.forced_ratio - &outcome.closed_form).abs();
        assert!(gap <= outcome.slack);

        let outcome = tight_symmetric(3, 3, &s, 2, &rat(1, 100)).unwrap();
        assert_eq!(outcome.closed_form, rat(233, 108));
        assert_eq!(outcome.report.online_cost, rat(233, 108));
        assert!(outcome.report.claimed_opt <= rat_int(1) + rat(1, 25));
    }

    #[test]
    fn even_drip_handles_equal_speeds() {
        let outcome = tight_symmetric(2, 2, &rat_int(1), 2, &rat(1, 100)).unwrap();
        assert_eq!(outcome.closed_form, rat(7, 4));
        assert_eq!(outcome.report.online_cost, rat(7, 4));
        assert!(outcome.report.claimed_opt <= rat_int(1) + rat(1, 25));
    }

    #[test]
    fn odd_drip_pays_exactly_the_closed_form() {
        let s = rat(3, 2);
        let outcome = tight_symmetric(4, 4, &s, 5, &rat(1, 200)).unwrap();
        assert_eq!(outcome.closed_form, rat(51, 20));
        assert_eq!(outcome.report.online_cost, rat(51, 20));
        assert!(outcome.report.claimed_opt >= rat_int(1));
        assert!(outcome.report.claimed_opt <= rat_int(1) + rat(1, 25));
    }

    #[test]
    fn drip_regimes_validate_their_parameters() {
        let eps = rat(1, 100);
        // wrong group counts
        assert!(tight_symmetric(2, 3, &rat(5, 4), 2, &eps).is_err());
        assert!(tight_symmetric(3, 2, &rat(5, 4), 2, &eps).is_err());
        // parity of the depth
        assert!(tight_symmetric(2, 2, &rat(5, 4), 3, &eps).is_err());
        assert!(tight_symmetric(4, 4, &rat(3, 2), 4, &eps).is_err());
        // too few favorites for the odd drip
        assert!(tight_symmetric(4, 2, &rat(3, 2), 9, &eps).is_err());
        // unknown regime
        assert!(tight_symmetric(6, 2, &rat(5, 4), 2, &eps).is_err());
    }

    #[test]
    fn favorite_only_sequence_hits_its_target() {
        for (f, s, expected) in [
            (1, rat_int(1), rat_int(2)),
            (2, rat_int(2), rat_int(2)),
            (3, rat(3, 2), rat(7, 3)),
        ] {
            let built = gf_tight(f, &s).unwrap();
            assert_eq!(built.target_ratio, expected);
            assert_eq!(built.witness.makespan(), &rat_int(1));
            let spec = AlgorithmSpec::parse("greedy-favorite", &AlgoParams::default()).unwrap();
            let online = run(&spec, &built.instance).unwrap();
            assert_eq!(online.makespan(), &expected);
        }
    }
}
