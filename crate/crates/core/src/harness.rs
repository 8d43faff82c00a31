//! Batch experiment driver: runs heuristics over instance sets on a worker
//! pool, attaches bounds, and aggregates success / gap / win statistics.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::burn::validate_sequence;
use crate::error::{Error, Result};
use crate::exact::{cluster_bound, exact_bn, theta_bound, trivial_lower_bound, DEFAULT_NODE_BUDGET};
use crate::generators::{gen_instance, mix_seed, FamilyRange, InstanceMeta, InstanceName};
use crate::graph::Graph;
use crate::heuristics::{run_heuristic_with, HeuristicConfig, HeuristicId};
use crate::io::{average_degree, read_graph, write_edge_list, ResultRecord};

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub meta: Option<InstanceMeta>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub heuristics: Vec<HeuristicId>,
    /// Runs per randomized heuristic and instance.
    pub repetitions: u32,
    pub workers: usize,
    pub master_seed: u64,
    /// When false, `wall_time_ms` is written as 0 so output is reproducible byte for byte.
    pub record_timing: bool,
    pub heuristic_config: HeuristicConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            heuristics: HeuristicId::ALL.to_vec(),
            repetitions: 1,
            workers: 1,
            master_seed: 0,
            record_timing: true,
            heuristic_config: HeuristicConfig::default(),
        }
    }
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.workers == 0 || self.repetitions == 0 {
            return Err(Error::InvalidParameters("workers and repetitions must be at least 1".into()));
        }
        Ok(())
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))
}

/// FNV-1a, stable across platforms and runs.
fn name_hash(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Seed for one run, derived from the instance name so scheduling cannot change it.
pub fn run_seed(master_seed: u64, instance: &str, heuristic: HeuristicId, repetition: u32) -> u64 {
    let h = HeuristicId::ALL.iter().position(|&x| x == heuristic).unwrap_or(0) as u64;
    mix_seed(mix_seed(master_seed, name_hash(instance)), (h << 32) | u64::from(repetition))
}

/// Bound attached to an instance's records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachedBound {
    pub name: &'static str,
    pub value: u32,
    /// Only upper bounds produce a gap.
    pub is_upper: bool,
}

/// Canonical name first, sidecar metadata second, degree-based lower bound last.
pub fn attach_bound(instance: &Instance) -> AttachedBound {
    let from_name = instance.name.parse::<InstanceName>().ok();
    match from_name {
        Some(InstanceName::Theta { n, .. }) => return theta_attached(n),
        Some(InstanceName::Cluster { path, .. }) => return cluster_attached(path),
        None => {}
    }
    match &instance.meta {
        Some(InstanceMeta::Theta { spec, .. }) => theta_attached(spec.cycle_size + spec.path_internal),
        Some(InstanceMeta::Cluster { modulator, .. }) => cluster_attached(modulator.len()),
        None => AttachedBound {
            name: "degree-lower",
            value: trivial_lower_bound(&instance.graph),
            is_upper: false,
        },
    }
}

fn theta_attached(n: usize) -> AttachedBound {
    AttachedBound {
        name: "theta",
        value: theta_bound(n as u64).map(|b| b.expected).unwrap_or(1),
        is_upper: true,
    }
}

fn cluster_attached(d: usize) -> AttachedBound {
    AttachedBound {
        name: "cluster",
        value: cluster_bound(d as u64),
        is_upper: true,
    }
}

fn base_record(instance: &Instance, heuristic: &str, seed: u64) -> ResultRecord {
    let g = &instance.graph;
    ResultRecord {
        instance: instance.name.clone(),
        n: g.vertex_count(),
        m: g.edge_count(),
        max_deg: g.max_degree(),
        avg_deg: average_degree(g),
        heuristic: heuristic.to_string(),
        seed,
        length: None,
        bound_name: None,
        bound: None,
        gap: None,
        wall_time_ms: 0.0,
    }
}

fn run_one(instance: &Instance, heuristic: HeuristicId, repetition: u32, config: &ExperimentConfig) -> Result<ResultRecord> {
    let seed = run_seed(config.master_seed, &instance.name, heuristic, repetition);
    let run = run_heuristic_with(&instance.graph, heuristic, seed, &config.heuristic_config)?;
    let seq = &run.sequence;
    let report = validate_sequence(&instance.graph, &seq.activators, seq.completion_time)?;
    if !report.valid {
        return Err(Error::Validation(format!(
            "{heuristic} on {} (seed {seed}) produced an invalid sequence: {} uncovered, {} spacing violations",
            instance.name,
            report.uncovered.len(),
            report.spacing_violations.len()
        )));
    }
    let bound = attach_bound(instance);
    let mut record = base_record(instance, heuristic.as_str(), seed);
    record.length = Some(seq.completion_time);
    record.bound_name = Some(bound.name.to_string());
    record.bound = Some(bound.value);
    record.gap = bound.is_upper.then(|| i64::from(seq.completion_time) - i64::from(bound.value));
    if config.record_timing {
        record.wall_time_ms = (run.wall_time.as_secs_f64() * 1e6).round() / 1e3;
    }
    Ok(record)
}

fn heuristic_rank(name: &str) -> usize {
    HeuristicId::ALL
        .iter()
        .position(|h| h.as_str() == name)
        .unwrap_or(HeuristicId::ALL.len())
}

/// Canonical record order: instance, heuristic, seed.
pub fn sort_records(records: &mut [ResultRecord]) {
    records.sort_by(|a, b| {
        a.instance
            .cmp(&b.instance)
            .then(heuristic_rank(&a.heuristic).cmp(&heuristic_rank(&b.heuristic)))
            .then(a.heuristic.cmp(&b.heuristic))
            .then(a.seed.cmp(&b.seed))
    });
}

/// Runs every configured heuristic on every instance. Any invalid sequence
/// aborts the batch with `Error::Validation`.
pub fn burn_instances(instances: &[Instance], config: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    config.validate()?;
    let jobs: Vec<(usize, HeuristicId, u32)> = (0..instances.len())
        .flat_map(|i| {
            config.heuristics.iter().flat_map(move |&h| {
                // Center heuristics are seed-independent; one run is enough.
                let reps = if h.uses_center() { 1 } else { config.repetitions };
                (0..reps).map(move |r| (i, h, r))
            })
        })
        .collect();
    let mut records = pool(config.workers)?.install(|| {
        jobs.par_iter()
            .map(|&(i, h, r)| run_one(&instances[i], h, r, config))
            .collect::<Result<Vec<_>>>()
    })?;
    sort_records(&mut records);
    Ok(records)
}

/// Exact burning numbers for instances up to `size_cap` vertices.
pub fn exact_instances(instances: &[Instance], size_cap: usize, budget: u64, workers: usize) -> Result<Vec<ResultRecord>> {
    let mut records = pool(workers.max(1))?.install(|| {
        instances
            .par_iter()
            .map(|inst| {
                let mut record = base_record(inst, "exact", 0);
                if inst.graph.vertex_count() > size_cap {
                    record.bound_name = Some("size-cap".into());
                    return Ok(record);
                }
                let started = std::time::Instant::now();
                match exact_bn(&inst.graph, budget) {
                    Ok(out) => {
                        record.length = Some(out.burning_number);
                        let bound = attach_bound(inst);
                        record.bound_name = Some(bound.name.into());
                        record.bound = Some(bound.value);
                        record.gap = bound
                            .is_upper
                            .then(|| i64::from(out.burning_number) - i64::from(bound.value));
                    }
                    Err(Error::BudgetExceeded { .. } | Error::TooLarge { .. }) => {
                        record.bound_name = Some("budget-exceeded".into());
                    }
                    Err(e) => return Err(e),
                }
                record.wall_time_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
                Ok(record)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    sort_records(&mut records);
    Ok(records)
}

pub fn exact_default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicStats {
    pub heuristic: String,
    pub instances: usize,
    /// Fraction of bounded instances where the best length over seeds is `<= bound`.
    pub success_rate: f64,
    /// Fraction of instances where this heuristic attains the minimum; ties count for every winner.
    pub win_rate: f64,
    pub wins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub instances: usize,
    pub bounded_instances: usize,
    pub per_heuristic: Vec<HeuristicStats>,
    /// Best-of-all length `<= bound`.
    pub best_success_rate: f64,
    /// Best-of-all length `<= bound + 1`.
    pub best_within_one_rate: f64,
    /// Mean of `best - bound` over instances with an upper bound.
    pub average_gap: Option<f64>,
    /// Population standard deviation of the same gaps.
    pub gap_std_dev: Option<f64>,
}

fn ratio(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

/// Aggregates records per instance. Order-independent.
pub fn summarize(records: &[ResultRecord]) -> SummaryStats {
    struct PerInstance {
        best: BTreeMap<String, u32>,
        bound: Option<u32>,
        upper: bool,
    }
    let mut by_instance: BTreeMap<&str, PerInstance> = BTreeMap::new();
    for r in records {
        let Some(length) = r.length else { continue };
        let entry = by_instance.entry(&r.instance).or_insert_with(|| PerInstance {
            best: BTreeMap::new(),
            bound: None,
            upper: false,
        });
        let slot = entry.best.entry(r.heuristic.clone()).or_insert(length);
        *slot = (*slot).min(length);
        if r.bound.is_some() {
            entry.bound = r.bound;
        }
        entry.upper |= r.gap.is_some();
    }

    let mut names: Vec<String> = by_instance.values().flat_map(|p| p.best.keys().cloned()).collect();
    names.sort_by(|a, b| heuristic_rank(a).cmp(&heuristic_rank(b)).then(a.cmp(b)));
    names.dedup();

    let mut successes: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut wins: BTreeMap<&str, usize> = BTreeMap::new();
    let mut appearances: BTreeMap<&str, usize> = BTreeMap::new();
    let (mut bounded, mut best_ok, mut best_within_one) = (0, 0, 0);
    let mut gaps: Vec<f64> = Vec::new();
    for p in by_instance.values() {
        let best = *p.best.values().min().expect("non-empty");
        for (h, &len) in &p.best {
            *appearances.entry(h.as_str()).or_default() += 1;
            if len == best {
                *wins.entry(h.as_str()).or_default() += 1;
            }
            if let Some(bound) = p.bound {
                let s = successes.entry(h.as_str()).or_default();
                s.1 += 1;
                if len <= bound {
                    s.0 += 1;
                }
            }
        }
        if let Some(bound) = p.bound {
            bounded += 1;
            best_ok += usize::from(best <= bound);
            best_within_one += usize::from(best <= bound + 1);
            if p.upper {
                gaps.push(f64::from(best) - f64::from(bound));
            }
        }
    }
    let per_heuristic = names
        .iter()
        .map(|h| {
            let (ok, total) = successes.get(h.as_str()).copied().unwrap_or((0, 0));
            let seen = appearances.get(h.as_str()).copied().unwrap_or(0);
            let w = wins.get(h.as_str()).copied().unwrap_or(0);
            HeuristicStats {
                heuristic: h.clone(),
                instances: seen,
                success_rate: ratio(ok, total),
                win_rate: ratio(w, seen),
                wins: w,
            }
        })
        .collect();
    let (average_gap, gap_std_dev) = if gaps.is_empty() {
        (None, None)
    } else {
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        let var = gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / gaps.len() as f64;
        (Some(mean), Some(var.sqrt()))
    };
    SummaryStats {
        instances: by_instance.len(),
        bounded_instances: bounded,
        per_heuristic,
        best_success_rate: ratio(best_ok, bounded),
        best_within_one_rate: ratio(best_within_one, bounded),
        average_gap,
        gap_std_dev,
    }
}

/// Text table with one row per heuristic plus a best-of-all footer.
pub fn render_stats(stats: &SummaryStats) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<16} {:>10} {:>12} {:>10}", "Heuristic", "Instances", "Success Rate", "Win Rate");
    for h in &stats.per_heuristic {
        let label = h
            .heuristic
            .parse::<HeuristicId>()
            .map(|id| id.label().to_string())
            .unwrap_or_else(|_| h.heuristic.clone());
        let _ = writeln!(
            out,
            "{:<16} {:>10} {:>11.1}% {:>9.1}%",
            label,
            h.instances,
            h.success_rate * 100.0,
            h.win_rate * 100.0
        );
    }
    let _ = writeln!(
        out,
        "best-of-all: {:.1}% meet bound, {:.1}% within one ({} of {} instances bounded)",
        stats.best_success_rate * 100.0,
        stats.best_within_one_rate * 100.0,
        stats.bounded_instances,
        stats.instances
    );
    if let (Some(avg), Some(sd)) = (stats.average_gap, stats.gap_std_dev) {
        let _ = writeln!(out, "gap to upper bound: mean {avg:.4}, population std dev {sd:.4}");
    }
    out
}

/// Generates `count` instances of `family` in parallel, in index order.
pub fn generate(family: &FamilyRange, count: u32, master_seed: u64, workers: usize) -> Result<Vec<Instance>> {
    pool(workers.max(1))?.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| {
                gen_instance(family, master_seed, i).map(|g| Instance {
                    name: g.name,
                    graph: g.graph,
                    meta: Some(g.meta),
                })
            })
            .collect()
    })
}

/// Writes `<name>.edges` and `<name>.json` for each instance.
pub fn write_instances(instances: &[Instance], dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(instances.len());
    for inst in instances {
        let graph_path = dir.join(format!("{}.edges", inst.name));
        fs::write(&graph_path, write_edge_list(&inst.graph))?;
        if let Some(meta) = &inst.meta {
            let json = serde_json::to_string_pretty(meta).expect("metadata serializes");
            fs::write(dir.join(format!("{}.json", inst.name)), json + "\n")?;
        }
        written.push(graph_path);
    }
    Ok(written)
}

/// Reads a graph file and its `<stem>.json` sidecar when present.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let (graph, _) = read_graph(path)?;
    let name = graph.name().unwrap_or("graph").to_string();
    let sidecar = path.with_extension("json");
    let meta = if sidecar != path && sidecar.exists() {
        let text = fs::read_to_string(&sidecar)
            .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", sidecar.display())))?;
        Some(serde_json::from_str(&text).map_err(|e| Error::parse(e.line(), format!("{}: {e}", sidecar.display())))?)
    } else {
        None
    };
    Ok(Instance { name, graph, meta })
}

#[derive(Debug, Clone)]
pub struct BenchOutput {
    pub instances: Vec<Instance>,
    pub records: Vec<ResultRecord>,
    pub stats: SummaryStats,
}

/// Generate, burn and summarize in one pass.
pub fn bench(family: &FamilyRange, count: u32, config: &ExperimentConfig) -> Result<BenchOutput> {
    config.validate()?;
    let instances = generate(family, count, config.master_seed, config.workers)?;
    let records = burn_instances(&instances, config)?;
    let stats = summarize(&records);
    Ok(BenchOutput {
        instances,
        records,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path};

    fn rec(instance: &str, heuristic: &str, length: u32, bound: u32) -> ResultRecord {
        ResultRecord {
            instance: instance.into(),
            n: 10,
            m: 9,
            max_deg: 2,
            avg_deg: 1.8,
            heuristic: heuristic.into(),
            seed: 0,
            length: Some(length),
            bound_name: Some("theta".into()),
            bound: Some(bound),
            gap: Some(i64::from(length) - i64::from(bound)),
            wall_time_ms: 0.0,
        }
    }

    fn plain(name: &str, graph: Graph) -> Instance {
        Instance {
            name: name.into(),
            graph,
            meta: None,
        }
    }

    #[test]
    fn stats_all_on_bound() {
        let records = vec![rec("a", "ctr-far", 5, 5), rec("b", "ctr-far", 4, 4)];
        let s = summarize(&records);
        assert_eq!(s.best_success_rate, 1.0);
        assert_eq!(s.average_gap, Some(0.0));
        assert_eq!(s.gap_std_dev, Some(0.0));
    }

    #[test]
    fn stats_population_std_dev() {
        let records = vec![rec("a", "ctr-far", 5, 5), rec("b", "ctr-far", 6, 4)];
        let s = summarize(&records);
        assert_eq!(s.average_gap, Some(1.0));
        assert_eq!(s.gap_std_dev, Some(1.0));
        assert_eq!(s.best_success_rate, 0.5);
    }

    #[test]
    fn stats_ties_count_for_all_winners() {
        let records = vec![
            rec("a", "ctr-far", 5, 5),
            rec("a", "dfs-path", 5, 5),
            rec("a", "rnd-far", 7, 5),
            rec("b", "ctr-far", 9, 5),
            rec("b", "dfs-path", 6, 5),
            rec("b", "rnd-far", 6, 5),
        ];
        let s = summarize(&records);
        let win = |h: &str| s.per_heuristic.iter().find(|x| x.heuristic == h).unwrap().win_rate;
        assert_eq!(win("ctr-far"), 0.5);
        assert_eq!(win("dfs-path"), 1.0);
        assert_eq!(win("rnd-far"), 0.5);
        assert_eq!(s.gap_std_dev, Some(0.5));
        assert!(render_stats(&s).contains("DFS-path"));
    }

    #[test]
    fn stats_ignore_missing_lengths() {
        let mut r = rec("a", "exact", 0, 0);
        r.length = None;
        let s = summarize(&[r]);
        assert_eq!(s.instances, 0);
        assert_eq!(s.average_gap, None);
    }

    #[test]
    fn bounds_from_names() {
        let theta = plain("theta529-74-472-57", path(529));
        assert_eq!(attach_bound(&theta).value, 24);
        let cluster = plain("cluster52-4-20-592-1170-0315", path(3));
        assert_eq!(attach_bound(&cluster).value, 27);
        let other = plain("c-fat200-5", complete(5));
        let b = attach_bound(&other);
        assert_eq!((b.name, b.value, b.is_upper), ("degree-lower", 2, false));
    }

    #[test]
    fn burn_single_vertex() {
        let recs = burn_instances(&[plain("k1", path(1))], &ExperimentConfig::default()).unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.length == Some(1)));
    }

    #[test]
    fn burn_rejects_bad_config() {
        let config = ExperimentConfig {
            workers: 0,
            ..ExperimentConfig::default()
        };
        assert!(burn_instances(&[], &config).is_err());
    }

    #[test]
    fn exact_records() {
        let instances = [plain("p9", path(9)), plain("k5", complete(5)), plain("p60", path(60))];
        let recs = exact_instances(&instances, 64, 3, 2).unwrap();
        let by_name = |n: &str| recs.iter().find(|r| r.instance == n).unwrap();
        assert_eq!(by_name("p9").length, Some(3));
        assert_eq!(by_name("k5").length, Some(2));
        assert_eq!(by_name("p60").length, None);
        assert_eq!(by_name("p60").bound_name.as_deref(), Some("budget-exceeded"));
        let capped = exact_instances(&instances, 8, 1000, 1).unwrap();
        assert_eq!(capped.iter().find(|r| r.instance == "p9").unwrap().bound_name.as_deref(), Some("size-cap"));
    }
}
