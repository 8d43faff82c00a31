//! Burning-process semantics.
//!
//! Activator `x_i` is ignited in round `i` (1-based) and fire spreads one hop
//! per round, so vertex `v` burns at `min_i (i + d(v, x_i))`. An activator
//! placed in round `j` must satisfy `d(x_i, x_j) >= j - i` for every earlier
//! `x_i`: a vertex that spread would reach in the same round is still a legal
//! choice.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, VertexId, UNREACHABLE};

/// Ordered activators together with the round at which the graph is fully burned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurningSequence {
    pub activators: Vec<VertexId>,
    pub completion_time: u32,
}

impl BurningSequence {
    pub fn len(&self) -> u32 {
        self.completion_time
    }

    pub fn is_empty(&self) -> bool {
        self.activators.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnTimes {
    pub times: Vec<u32>,
    pub completion: u32,
}

fn check_activators(g: &Graph, activators: &[VertexId]) -> Result<()> {
    if activators.is_empty() {
        return Err(Error::NoActivators);
    }
    let mut seen = vec![false; g.vertex_count()];
    for &x in activators {
        g.check_vertex(x)?;
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::DuplicateActivator(x));
        }
    }
    Ok(())
}

/// Burn round of every vertex, by a single BFS in which activator `i` joins
/// the frontier at time `i`.
pub fn burn_times(g: &Graph, activators: &[VertexId]) -> Result<BurnTimes> {
    check_activators(g, activators)?;
    let n = g.vertex_count();
    let mut times = vec![UNREACHABLE; n];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    let mut t: u32 = 1;
    loop {
        if let Some(&x) = activators.get(t as usize - 1) {
            if times[x] > t {
                times[x] = t;
                queue.push_back(x);
            }
        }
        if queue.is_empty() && t as usize >= activators.len() {
            break;
        }
        // The queue only ever holds vertices whose time is `t`.
        for _ in 0..queue.len() {
            let u = queue.pop_front().expect("counted");
            if times[u] != t {
                continue;
            }
            for &w in g.neighbors(u) {
                if times[w] > t + 1 {
                    times[w] = t + 1;
                    queue.push_back(w);
                }
            }
        }
        t += 1;
    }
    if times.contains(&UNREACHABLE) {
        return Err(Error::Disconnected);
    }
    let completion = times.iter().copied().max().unwrap_or(0);
    Ok(BurnTimes { times, completion })
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Vertices not within `k - i` of any `x_i`.
    pub uncovered: Vec<VertexId>,
    /// 0-based position pairs `(i, j)`, `i < j`, with `d(x_i, x_j) < j - i`.
    pub spacing_violations: Vec<(usize, usize)>,
}

/// Checks coverage and spacing of `activators` as a burning sequence of length `k`.
pub fn validate_sequence(g: &Graph, activators: &[VertexId], k: u32) -> Result<ValidationReport> {
    check_activators(g, activators)?;
    let rows = activators
        .iter()
        .map(|&x| bfs_distances(g, x))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ValidationReport::default();
    for v in 0..g.vertex_count() {
        let covered = rows.iter().enumerate().any(|(i, row)| {
            let radius = k as i64 - (i as i64 + 1);
            row.dist[v] != UNREACHABLE && i64::from(row.dist[v]) <= radius
        });
        if !covered {
            report.uncovered.push(v);
        }
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, &xj) in activators.iter().enumerate().skip(i + 1) {
            if (row.dist[xj] as usize) < j - i {
                report.spacing_violations.push((i, j));
            }
        }
    }
    report.valid = report.uncovered.is_empty() && report.spacing_violations.is_empty();
    Ok(report)
}

/// Burning process after `round` rounds. `burn_time[v]` is the round `v`
/// burns in if no further activators are added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnState {
    pub round: u32,
    pub burn_time: Vec<u32>,
    pub activators: Vec<VertexId>,
}

/// `t^k(v)` for every vertex still unburned after round `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeToBurn {
    pub per_vertex: Vec<Option<u32>>,
    pub max: u32,
}

impl TimeToBurn {
    pub fn unburned(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.per_vertex
            .iter()
            .enumerate()
            .filter_map(|(v, t)| t.map(|t| (v, t)))
    }
}

impl BurnState {
    /// Round 0, nothing placed.
    pub fn new(n: usize) -> Self {
        BurnState {
            round: 0,
            burn_time: vec![UNREACHABLE; n],
            activators: Vec::new(),
        }
    }

    pub fn is_burned(&self, v: VertexId) -> bool {
        self.burn_time[v] <= self.round
    }

    pub fn unburned_count(&self) -> usize {
        self.burn_time.iter().filter(|&&t| t > self.round).count()
    }

    pub fn all_burned(&self) -> bool {
        self.burn_time.iter().all(|&t| t <= self.round)
    }

    /// Largest projected burn round; `UNREACHABLE` if some vertex is out of reach.
    pub fn completion(&self) -> u32 {
        self.burn_time.iter().copied().max().unwrap_or(0)
    }

    /// Whether `v` may be ignited in the next round.
    pub fn can_ignite(&self, v: VertexId) -> bool {
        self.burn_time[v] > self.round
    }

    pub fn time_to_burn(&self) -> Result<TimeToBurn> {
        if self.activators.is_empty() {
            return Err(Error::NoActivators);
        }
        let k = self.round;
        let per_vertex: Vec<Option<u32>> = self
            .burn_time
            .iter()
            .map(|&t| (t > k).then(|| t - k))
            .collect();
        let max = per_vertex.iter().flatten().copied().max().unwrap_or(0);
        Ok(TimeToBurn { per_vertex, max })
    }

    /// Moves to round `k + 1`, optionally igniting `activator` in that round.
    pub fn advance(&mut self, g: &Graph, activator: Option<VertexId>) -> Result<()> {
        let next = self.round + 1;
        if let Some(x) = activator {
            g.check_vertex(x)?;
            if !self.can_ignite(x) {
                return Err(Error::AlreadyBurned { vertex: x, round: next });
            }
            self.burn_time[x] = next;
            self.activators.push(x);
            // Pruned BFS: stop at vertices the new fire does not reach sooner.
            let mut queue = VecDeque::from([x]);
            while let Some(u) = queue.pop_front() {
                let t = self.burn_time[u] + 1;
                for &w in g.neighbors(u) {
                    if self.burn_time[w] > t {
                        self.burn_time[w] = t;
                        queue.push_back(w);
                    }
                }
            }
        }
        self.round = next;
        Ok(())
    }

    pub fn to_sequence(&self) -> BurningSequence {
        BurningSequence {
            activators: self.activators.clone(),
            completion_time: self.completion(),
        }
    }
}

pub fn time_to_burn_field(state: &BurnState) -> Result<TimeToBurn> {
    state.time_to_burn()
}

pub fn advance_round(g: &Graph, mut state: BurnState, new_activator: Option<VertexId>) -> Result<BurnState> {
    state.advance(g, new_activator)?;
    Ok(state)
}
