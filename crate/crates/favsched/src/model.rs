//! Instance, job, load, and schedule types.
//!
//! Machines and jobs are addressed with 1-based indices everywhere in the
//! public API. A job runs in its minimum time `pmin` on each machine of its
//! favorite set and strictly slower elsewhere; the per-machine slowdowns are
//! arbitrary positive values, not a single factor. The two-group symmetric
//! shape (m = 2f, uniform scaling s on the wrong group) gets its own type
//! and converts into the general one.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::value::{format_exact, parse_rat, Rat};
use crate::{Error, Result};

/// One job: minimum time, favorite machines, explicit times elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pmin: Rat,
    favorites: BTreeSet<usize>,
    others: BTreeMap<usize, Rat>,
}

impl Job {
    /// Validates pmin > 0, a non-empty favorite set, and every non-favorite
    /// time strictly above pmin.
    pub fn new(pmin: Rat, favorites: BTreeSet<usize>, others: BTreeMap<usize, Rat>) -> Result<Job> {
        let job = Job::new_relaxed(pmin, favorites, others)?;
        for (&machine, time) in &job.others {
            if *time <= job.pmin {
                return Err(Error::Model(format!(
                    "non-favorite time {time} on machine {machine} must exceed pmin {}",
                    job.pmin
                )));
            }
        }
        Ok(job)
    }

    /// Like `new` but tolerates non-favorite times equal to pmin. Needed for
    /// the symmetric model at s = 1, where the declared group is kept as the
    /// favorite set even though the slowdown degenerates.
    pub(crate) fn new_relaxed(
        pmin: Rat,
        favorites: BTreeSet<usize>,
        others: BTreeMap<usize, Rat>,
    ) -> Result<Job> {
        if pmin <= Rat::zero() {
            return Err(Error::Model(format!("pmin must be positive, got {pmin}")));
        }
        if favorites.is_empty() {
            return Err(Error::Model("favorite set must be non-empty".into()));
        }
        if let Some(&0) = favorites.first() {
            return Err(Error::Model("machine indices are 1-based".into()));
        }
        for (&machine, time) in &others {
            if machine == 0 {
                return Err(Error::Model("machine indices are 1-based".into()));
            }
            if favorites.contains(&machine) {
                return Err(Error::Model(format!(
                    "machine {machine} is listed both as favorite and non-favorite"
                )));
            }
            if *time < pmin {
                return Err(Error::Model(format!(
                    "non-favorite time {time} on machine {machine} is below pmin {pmin}"
                )));
            }
        }
        Ok(Job {
            pmin,
            favorites,
            others,
        })
    }

    pub fn pmin(&self) -> &Rat {
        &self.pmin
    }

    pub fn favorites(&self) -> &BTreeSet<usize> {
        &self.favorites
    }

    pub fn is_favorite(&self, machine: usize) -> bool {
        self.favorites.contains(&machine)
    }

    /// Processing time on `machine`; the machine must be a favorite or carry
    /// an explicit non-favorite time.
    pub fn time_on(&self, machine: usize) -> &Rat {
        if self.favorites.contains(&machine) {
            &self.pmin
        } else {
            self.others
                .get(&machine)
                .unwrap_or_else(|| panic!("job has no time for machine {machine}"))
        }
    }

    pub fn nonfavorite_times(&self) -> &BTreeMap<usize, Rat> {
        &self.others
    }
}

/// Metadata retained when a symmetric instance is converted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricInfo {
    pub f: usize,
    pub s: Rat,
}

/// A scheduling instance: m machines and an arrival-ordered job list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    m: usize,
    jobs: Vec<Job>,
    symmetric: Option<SymmetricInfo>,
}

impl Instance {
    pub fn new(m: usize, jobs: Vec<Job>) -> Result<Instance> {
        if m == 0 {
            return Err(Error::Model("need at least one machine".into()));
        }
        for (idx, job) in jobs.iter().enumerate() {
            let id = idx + 1;
            if let Some(&max) = job.favorites.last() {
                if max > m {
                    return Err(Error::Model(format!(
                        "job {id} lists favorite machine {max} but m = {m}"
                    )));
                }
            }
            for &machine in job.others.keys() {
                if machine > m {
                    return Err(Error::Model(format!(
                        "job {id} lists machine {machine} but m = {m}"
                    )));
                }
            }
            // Every machine needs a defined time.
            for machine in 1..=m {
                if !job.favorites.contains(&machine) && !job.others.contains_key(&machine) {
                    return Err(Error::Model(format!(
                        "job {id} has no processing time for machine {machine}"
                    )));
                }
            }
        }
        Ok(Instance {
            m,
            jobs,
            symmetric: None,
        })
    }

    pub(crate) fn with_symmetric(mut self, info: SymmetricInfo) -> Instance {
        self.symmetric = Some(info);
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    /// Job by 1-based arrival index.
    pub fn job(&self, id: usize) -> Result<&Job> {
        if id == 0 || id > self.jobs.len() {
            return Err(Error::Index(format!(
                "job {id} out of range 1..={}",
                self.jobs.len()
            )));
        }
        Ok(&self.jobs[id - 1])
    }

    /// Smallest favorite-set cardinality over the jobs (m for an empty list):
    /// the interpolation parameter of the model.
    pub fn f(&self) -> usize {
        self.jobs
            .iter()
            .map(|j| j.favorites.len())
            .min()
            .unwrap_or(self.m)
    }

    /// Processing time of job `job_id` on `machine`, both 1-based.
    pub fn proc_time(&self, job_id: usize, machine: usize) -> Result<Rat> {
        let job = self.job(job_id)?;
        if machine == 0 || machine > self.m {
            return Err(Error::Index(format!(
                "machine {machine} out of range 1..={}",
                self.m
            )));
        }
        Ok(job.time_on(machine).clone())
    }

    pub fn symmetric_info(&self) -> Option<&SymmetricInfo> {
        self.symmetric.as_ref()
    }

    pub fn total_pmin(&self) -> Rat {
        self.jobs
            .iter()
            .fold(Rat::zero(), |acc, j| acc + j.pmin.clone())
    }

    /// Prefix instance containing the first `k` jobs.
    pub fn prefix(&self, k: usize) -> Result<Instance> {
        if k > self.jobs.len() {
            return Err(Error::Index(format!(
                "prefix {k} longer than job list {}",
                self.jobs.len()
            )));
        }
        Ok(Instance {
            m: self.m,
            jobs: self.jobs[..k].to_vec(),
            symmetric: self.symmetric.clone(),
        })
    }

    pub fn from_json_str(text: &str) -> Result<Instance> {
        let value: Value = serde_json::from_str(text)?;
        Instance::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Instance> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Model("instance must be a JSON object".into()))?;
        let m = get_usize(obj.get("m"), "m")?;
        let jobs_value = obj
            .get("jobs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Model("instance needs a \"jobs\" array".into()))?;
        let mut jobs = Vec::with_capacity(jobs_value.len());
        for (idx, jv) in jobs_value.iter().enumerate() {
            let jo = jv
                .as_object()
                .ok_or_else(|| Error::Model(format!("job {} must be an object", idx + 1)))?;
            let pmin = get_rat(jo.get("p"), "p")?;
            let favorites: BTreeSet<usize> = jo
                .get("favorites")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Model(format!("job {} needs \"favorites\"", idx + 1)))?
                .iter()
                .map(|v| get_usize(Some(v), "favorites entry"))
                .collect::<Result<_>>()?;
            let mut others = BTreeMap::new();
            if let Some(ov) = jo.get("others") {
                let oo = ov
                    .as_object()
                    .ok_or_else(|| Error::Model("\"others\" must map machine -> time".into()))?;
                for (key, tv) in oo {
                    let machine: usize = key.parse().map_err(|_| {
                        Error::Model(format!("bad machine key {key:?} in \"others\""))
                    })?;
                    others.insert(machine, get_rat(Some(tv), "others entry")?);
                }
            }
            jobs.push(Job::new(pmin, favorites, others)?);
        }
        Instance::new(m, jobs)
    }

    pub fn to_json_value(&self) -> Value {
        let jobs: Vec<Value> = self
            .jobs
            .iter()
            .map(|j| {
                let others: serde_json::Map<String, Value> = j
                    .others
                    .iter()
                    .map(|(machine, t)| (machine.to_string(), rat_json(t)))
                    .collect();
                json!({
                    "p": rat_json(&j.pmin),
                    "favorites": j.favorites.iter().copied().collect::<Vec<_>>(),
                    "others": Value::Object(others),
                })
            })
            .collect();
        json!({ "m": self.m, "jobs": jobs })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("instance serializes")
    }
}

/// Group tag in the symmetric model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    One,
    Two,
}

impl Group {
    pub fn index(self) -> u8 {
        match self {
            Group::One => 1,
            Group::Two => 2,
        }
    }

    pub fn other(self) -> Group {
        match self {
            Group::One => Group::Two,
            Group::Two => Group::One,
        }
    }
}

/// Job in the symmetric model: minimum time plus a favorite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymJob {
    pub pmin: Rat,
    pub group: Group,
}

impl SymJob {
    pub fn new(pmin: Rat, group: Group) -> Result<SymJob> {
        if pmin <= Rat::zero() {
            return Err(Error::Model(format!("pmin must be positive, got {pmin}")));
        }
        Ok(SymJob { pmin, group })
    }
}

/// Two groups of f machines each; a job takes s times its minimum on the
/// wrong group. s = 1 is allowed: group membership is kept as the declared
/// favorite set so the favorite-restricted algorithms stay meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricInstance {
    f: usize,
    s: Rat,
    jobs: Vec<SymJob>,
}

impl SymmetricInstance {
    pub fn new(f: usize, s: Rat, jobs: Vec<SymJob>) -> Result<SymmetricInstance> {
        if f == 0 {
            return Err(Error::Model("group size f must be at least 1".into()));
        }
        if s < Rat::one() {
            return Err(Error::Model(format!("scaling s must be >= 1, got {s}")));
        }
        Ok(SymmetricInstance { f, s, jobs })
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }

    pub fn m(&self) -> usize {
        2 * self.f
    }

    pub fn jobs(&self) -> &[SymJob] {
        &self.jobs
    }

    /// Machines of a group, in index order: group one is 1..=f, group two is
    /// f+1..=2f.
    pub fn group_machines(&self, group: Group) -> std::ops::RangeInclusive<usize> {
        match group {
            Group::One => 1..=self.f,
            Group::Two => self.f + 1..=2 * self.f,
        }
    }

    pub fn to_instance(&self) -> Instance {
        let m = self.m();
        let jobs = self
            .jobs
            .iter()
            .map(|job| {
                let favorites: BTreeSet<usize> = self.group_machines(job.group).collect();
                let others: BTreeMap<usize, Rat> = (1..=m)
                    .filter(|machine| !favorites.contains(machine))
                    .map(|machine| (machine, &self.s * &job.pmin))
                    .collect();
                Job::new_relaxed(job.pmin.clone(), favorites, others)
                    .expect("validated symmetric job converts")
            })
            .collect();
        Instance::new(m, jobs)
            .expect("validated symmetric instance converts")
            .with_symmetric(SymmetricInfo {
                f: self.f,
                s: self.s.clone(),
            })
    }

    pub fn from_json_str(text: &str) -> Result<SymmetricInstance> {
        let value: Value = serde_json::from_str(text)?;
        SymmetricInstance::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<SymmetricInstance> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Model("symmetric instance must be a JSON object".into()))?;
        let f = get_usize(obj.get("f"), "f")?;
        let s = get_rat(obj.get("s"), "s")?;
        let jobs_value = obj
            .get("jobs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Model("symmetric instance needs a \"jobs\" array".into()))?;
        let mut jobs = Vec::with_capacity(jobs_value.len());
        for (idx, jv) in jobs_value.iter().enumerate() {
            let jo = jv
                .as_object()
                .ok_or_else(|| Error::Model(format!("job {} must be an object", idx + 1)))?;
            let pmin = get_rat(jo.get("p"), "p")?;
            let group = match get_usize(jo.get("group"), "group")? {
                1 => Group::One,
                2 => Group::Two,
                g => return Err(Error::Model(format!("group must be 1 or 2, got {g}"))),
            };
            jobs.push(SymJob::new(pmin, group)?);
        }
        SymmetricInstance::new(f, s, jobs)
    }

    pub fn to_json_value(&self) -> Value {
        let jobs: Vec<Value> = self
            .jobs
            .iter()
            .map(|j| json!({ "p": rat_json(&j.pmin), "group": j.group.index() }))
            .collect();
        json!({ "f": self.f, "s": rat_json(&self.s), "jobs": jobs })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("instance serializes")
    }
}

/// Per-machine loads addressed by 1-based machine index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadVec {
    loads: Vec<Rat>,
}

impl LoadVec {
    pub fn zeros(m: usize) -> LoadVec {
        LoadVec {
            loads: vec![Rat::zero(); m],
        }
    }

    pub fn m(&self) -> usize {
        self.loads.len()
    }

    pub fn get(&self, machine: usize) -> &Rat {
        &self.loads[machine - 1]
    }

    pub fn add(&mut self, machine: usize, amount: &Rat) {
        let slot = &mut self.loads[machine - 1];
        *slot += amount;
    }

    pub fn reset(&mut self) {
        for slot in &mut self.loads {
            *slot = Rat::zero();
        }
    }

    /// (machine, load) pairs in machine order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.loads.iter().enumerate().map(|(i, l)| (i + 1, l))
    }

    pub fn max(&self) -> Rat {
        self.loads.iter().max().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total(&self) -> Rat {
        self.loads.iter().fold(Rat::zero(), |acc, l| acc + l)
    }

    pub fn sorted(&self) -> SortedLoads {
        sorted_loads(self)
    }
}

/// Load profile in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedLoads {
    values: Vec<Rat>,
}

impl SortedLoads {
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// k-th largest load, 1-based; `None` past the machine count.
    pub fn kth(&self, k: usize) -> Option<&Rat> {
        if k == 0 {
            return None;
        }
        self.values.get(k - 1)
    }

    /// Sum of the k largest loads (all of them if k exceeds the count).
    pub fn top_sum(&self, k: usize) -> Rat {
        self.values
            .iter()
            .take(k)
            .fold(Rat::zero(), |acc, l| acc + l)
    }
}

/// Non-increasing view of a load vector.
pub fn sorted_loads(loads: &LoadVec) -> SortedLoads {
    let mut values: Vec<Rat> = loads.loads.clone();
    values.sort_by(|a, b| b.cmp(a));
    SortedLoads { values }
}

/// A complete assignment of the jobs of one instance, arrival order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    m: usize,
    assignment: Vec<usize>,
    loads: LoadVec,
    makespan: Rat,
}

impl Schedule {
    /// Builds and validates a schedule from a per-job machine assignment.
    pub fn from_assignment(instance: &Instance, assignment: Vec<usize>) -> Result<Schedule> {
        if assignment.len() != instance.n() {
            return Err(Error::Model(format!(
                "assignment length {} does not match job count {}",
                assignment.len(),
                instance.n()
            )));
        }
        let mut loads = LoadVec::zeros(instance.m());
        for (idx, &machine) in assignment.iter().enumerate() {
            if machine == 0 || machine > instance.m() {
                return Err(Error::Model(format!(
                    "job {} assigned to machine {machine}, but m = {}",
                    idx + 1,
                    instance.m()
                )));
            }
            loads.add(machine, instance.jobs()[idx].time_on(machine));
        }
        let makespan = loads.max();
        Ok(Schedule {
            m: instance.m(),
            assignment,
            loads,
            makespan,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Machine of the 1-based job `id`.
    pub fn machine_of(&self, id: usize) -> Result<usize> {
        if id == 0 || id > self.assignment.len() {
            return Err(Error::Index(format!(
                "job {id} out of range 1..={}",
                self.assignment.len()
            )));
        }
        Ok(self.assignment[id - 1])
    }

    pub fn loads(&self) -> &LoadVec {
        &self.loads
    }

    /// Largest completion time; zero for an empty job list.
    pub fn makespan(&self) -> &Rat {
        &self.makespan
    }

    /// Loads after the first `prefix` jobs, recomputed by replay.
    pub fn loads_after(&self, instance: &Instance, prefix: usize) -> Result<LoadVec> {
        if prefix > self.assignment.len() {
            return Err(Error::Index(format!(
                "prefix {prefix} out of range 0..={}",
                self.assignment.len()
            )));
        }
        let mut loads = LoadVec::zeros(self.m);
        for (idx, &machine) in self.assignment.iter().take(prefix).enumerate() {
            loads.add(machine, instance.jobs()[idx].time_on(machine));
        }
        Ok(loads)
    }

    /// Sorted load profile after the first `prefix` jobs.
    pub fn sorted_loads_after(&self, instance: &Instance, prefix: usize) -> Result<SortedLoads> {
        Ok(self.loads_after(instance, prefix)?.sorted())
    }

    /// Load history over all prefixes, including the empty one.
    pub fn load_history(&self, instance: &Instance) -> Vec<LoadVec> {
        let mut history = Vec::with_capacity(self.assignment.len() + 1);
        let mut loads = LoadVec::zeros(self.m);
        history.push(loads.clone());
        for (idx, &machine) in self.assignment.iter().enumerate() {
            loads.add(machine, instance.jobs()[idx].time_on(machine));
            history.push(loads.clone());
        }
        history
    }
}

pub(crate) fn rat_json(x: &Rat) -> Value {
    if x.is_integer() {
        if let Some(n) = num_traits::ToPrimitive::to_i64(x.numer()) {
            return json!(n);
        }
    }
    Value::String(format_exact(x))
}

fn get_usize(value: Option<&Value>, field: &str) -> Result<usize> {
    let v = value.ok_or_else(|| Error::Model(format!("missing field {field:?}")))?;
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Model(format!("field {field:?} must be a non-negative integer")))
}

/// Accepts JSON numbers (parsed from their exact literal) and strings like
/// "4/5" or "0.8".
fn get_rat(value: Option<&Value>, field: &str) -> Result<Rat> {
    let v = value.ok_or_else(|| Error::Model(format!("missing field {field:?}")))?;
    match v {
        Value::Number(n) => parse_rat(&n.to_string()),
        Value::String(s) => parse_rat(s),
        _ => Err(Error::Model(format!(
            "field {field:?} must be a number or numeric string"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{rat, rat_int};

    fn job(pmin: Rat, favs: &[usize], others: &[(usize, Rat)]) -> Job {
        Job::new(
            pmin,
            favs.iter().copied().collect(),
            others.iter().cloned().collect(),
        )
        .unwrap()
    }

    #[test]
    fn proc_time_uses_pmin_on_favorites_and_listed_time_elsewhere() {
        let inst = Instance::new(
            3,
            vec![job(rat_int(2), &[1, 3], &[(2, rat_int(5))])],
        )
        .unwrap();
        assert_eq!(inst.proc_time(1, 1).unwrap(), rat_int(2));
        assert_eq!(inst.proc_time(1, 3).unwrap(), rat_int(2));
        assert_eq!(inst.proc_time(1, 2).unwrap(), rat_int(5));
        assert!(inst.proc_time(1, 4).is_err());
        assert!(inst.proc_time(2, 1).is_err());
    }

    #[test]
    fn job_validation_rejects_slow_favorites_and_gaps() {
        assert!(Job::new(
            rat_int(2),
            [1].into_iter().collect(),
            [(2, rat_int(2))].into_iter().collect()
        )
        .is_err());
        assert!(Job::new(rat_int(0), [1].into_iter().collect(), BTreeMap::new()).is_err());
        assert!(Job::new(rat_int(1), BTreeSet::new(), BTreeMap::new()).is_err());
        // missing time for machine 3
        let j = job(rat_int(1), &[1], &[(2, rat_int(3))]);
        assert!(Instance::new(3, vec![j]).is_err());
    }

    #[test]
    fn symmetric_conversion_lays_out_groups() {
        let sym = SymmetricInstance::new(
            2,
            rat_int(2),
            vec![SymJob::new(rat_int(1), Group::Two).unwrap()],
        )
        .unwrap();
        let inst = sym.to_instance();
        assert_eq!(inst.m(), 4);
        let row: Vec<Rat> = (1..=4).map(|i| inst.proc_time(1, i).unwrap()).collect();
        assert_eq!(row, vec![rat_int(2), rat_int(2), rat_int(1), rat_int(1)]);
        assert_eq!(
            inst.jobs()[0].favorites().iter().copied().collect::<Vec<_>>(),
            vec![3, 4]
        );
        assert_eq!(inst.f(), 2);
        assert_eq!(inst.symmetric_info().unwrap().s, rat_int(2));
    }

    #[test]
    fn symmetric_accepts_s_equal_one_keeping_declared_groups() {
        let sym = SymmetricInstance::new(
            1,
            rat_int(1),
            vec![SymJob::new(rat_int(1), Group::One).unwrap()],
        )
        .unwrap();
        let inst = sym.to_instance();
        assert_eq!(
            inst.jobs()[0].favorites().iter().copied().collect::<Vec<_>>(),
            vec![1]
        );
        assert_eq!(inst.proc_time(1, 2).unwrap(), rat_int(1));
    }

    #[test]
    fn sorted_loads_orders_and_sums() {
        let mut loads = LoadVec::zeros(4);
        loads.add(1, &rat(1, 2));
        loads.add(3, &rat_int(3));
        loads.add(4, &rat_int(1));
        let sorted = loads.sorted();
        assert_eq!(
            sorted.values(),
            &[rat_int(3), rat_int(1), rat(1, 2), rat_int(0)]
        );
        assert_eq!(sorted.top_sum(2), rat_int(4));
        // idempotent under re-sorting
        let again = SortedLoads {
            values: sorted.values().to_vec(),
        };
        assert_eq!(again.values(), sorted.values());
    }

    #[test]
    fn schedule_replay_and_makespan() {
        let inst = Instance::new(
            2,
            vec![
                job(rat_int(2), &[1], &[(2, rat_int(3))]),
                job(rat_int(3), &[2], &[(1, rat_int(4))]),
                job(rat_int(4), &[2], &[(1, rat_int(5))]),
            ],
        )
        .unwrap();
        let sched = Schedule::from_assignment(&inst, vec![1, 2, 2]).unwrap();
        assert_eq!(sched.makespan(), &rat_int(7));
        assert_eq!(sched.loads().get(1), &rat_int(2));
        let mid = sched.sorted_loads_after(&inst, 2).unwrap();
        assert_eq!(mid.values(), &[rat_int(3), rat_int(2)]);
        assert!(Schedule::from_assignment(&inst, vec![1, 2]).is_err());
        assert!(Schedule::from_assignment(&inst, vec![1, 2, 5]).is_err());
        // empty instance has makespan zero
        let empty = Instance::new(2, vec![]).unwrap();
        let es = Schedule::from_assignment(&empty, vec![]).unwrap();
        assert_eq!(es.makespan(), &rat_int(0));
    }

    #[test]
    fn instance_json_round_trip_is_exact() {
        let inst = Instance::new(
            2,
            vec![job(rat(4, 5), &[1], &[(2, rat(9, 2))])],
        )
        .unwrap();
        let text = inst.to_json_string();
        let back = Instance::from_json_str(&text).unwrap();
        assert_eq!(back.proc_time(1, 1).unwrap(), rat(4, 5));
        assert_eq!(back.proc_time(1, 2).unwrap(), rat(9, 2));
    }

    #[test]
    fn json_numbers_parse_from_exact_literals() {
        let inst = Instance::from_json_str(
            r#"{"m":2,"jobs":[{"p":0.8,"favorites":[1],"others":{"2":"9/2"}}]}"#,
        )
        .unwrap();
        assert_eq!(inst.proc_time(1, 1).unwrap(), rat(4, 5));
        let sym = SymmetricInstance::from_json_str(
            r#"{"f":1,"s":1.5,"jobs":[{"p":"2/3","group":2}]}"#,
        )
        .unwrap();
        assert_eq!(sym.s(), &rat(3, 2));
        assert_eq!(sym.jobs()[0].group, Group::Two);
    }
}
