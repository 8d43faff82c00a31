//! Exact burning number for small graphs, plus closed-form bounds and
//! certificates.

use serde::{Deserialize, Serialize};

use crate::burn::{burn_times, BurnState, BurningSequence};
use crate::error::{Error, Result};
use crate::generators::InstanceName;
use crate::graph::{bfs_distances, is_connected, Graph, VertexId};
use crate::math::{ceil_sqrt, floor_sqrt};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest graph the bitset search accepts.
pub const MAX_EXACT_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactOutcome {
    pub burning_number: u32,
    /// A burning sequence of length `burning_number`.
    pub witness: BurningSequence,
    pub expanded: u64,
}

struct Search<'a> {
    dist: &'a [Vec<u32>],
    /// `balls[r][v]`: vertices within distance `r` of `v`.
    balls: Vec<Vec<u128>>,
    /// `max_ball[r]`: largest ball of radius `r`.
    max_ball: Vec<u32>,
    full: u128,
    k: u32,
    budget: u64,
    expanded: u64,
    placed: Vec<(VertexId, u32)>,
}

impl Search<'_> {
    /// Rounds `round..=k` remain; `covered` is what earlier activators reach by round `k`.
    fn extend(&mut self, round: u32, covered: u128) -> Result<bool> {
        if covered == self.full {
            return Ok(true);
        }
        if round > self.k {
            return Ok(false);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let uncovered = (self.full & !covered).count_ones();
        let capacity: u32 = (round..=self.k).map(|j| self.max_ball[(self.k - j) as usize]).sum();
        if uncovered > capacity {
            return Ok(false);
        }
        let radius = (self.k - round) as usize;
        let mut candidates: Vec<(u32, VertexId)> = (0..self.dist.len())
            .filter(|&x| {
                self.placed
                    .iter()
                    .all(|&(y, j)| self.dist[y][x] >= round - j)
            })
            .filter_map(|x| {
                let gain = (self.balls[radius][x] & !covered).count_ones();
                (gain > 0).then_some((gain, x))
            })
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, x) in candidates {
            self.placed.push((x, round));
            if self.extend(round + 1, covered | self.balls[radius][x])? {
                return Ok(true);
            }
            self.placed.pop();
        }
        // Leaving a round empty is never worse than a useless activator.
        self.extend(round + 1, covered)
    }
}

/// Minimum number of rounds, by iterative deepening on `k` with a
/// depth-first search over activators for each `k`.
///
/// Candidates at round `i` must respect spacing against earlier picks and
/// reach something new; a branch is cut when the largest balls of the
/// remaining radii cannot cover what is left.
pub fn exact_bn(g: &Graph, node_budget: u64) -> Result<ExactOutcome> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: MAX_EXACT_VERTICES,
        });
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let dist: Vec<Vec<u32>> = (0..n)
        .map(|v| bfs_distances(g, v).map(|row| row.dist))
        .collect::<Result<_>>()?;
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0) as usize;
    let balls: Vec<Vec<u128>> = (0..=diameter.max(n))
        .map(|r| {
            dist.iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(_, &d)| d as usize <= r)
                        .fold(0u128, |acc, (w, _)| acc | (1u128 << w))
                })
                .collect()
        })
        .collect();
    let max_ball: Vec<u32> = balls
        .iter()
        .map(|row| row.iter().map(|b| b.count_ones()).max().unwrap_or(0))
        .collect();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };

    let mut expanded = 0;
    for k in trivial_lower_bound(g)..=n as u32 {
        let mut search = Search {
            dist: &dist,
            balls: balls.clone(),
            max_ball: max_ball.clone(),
            full,
            k,
            budget: node_budget.saturating_sub(expanded),
            expanded: 0,
            placed: Vec::new(),
        };
        let found = search.extend(1, 0).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::BudgetExceeded { budget: node_budget },
            e => e,
        })?;
        expanded += search.expanded;
        if found {
            let witness = complete_witness(g, &search.placed, k);
            debug_assert_eq!(witness.completion_time, k);
            return Ok(ExactOutcome {
                burning_number: k,
                witness,
                expanded,
            });
        }
    }
    unreachable!("n rounds always suffice for a connected graph")
}

/// Turns a schedule with empty rounds into a full burning sequence: empty or
/// already-burned slots take the unburned vertex that would burn last.
fn complete_witness(g: &Graph, placed: &[(VertexId, u32)], k: u32) -> BurningSequence {
    let mut state = BurnState::new(g.vertex_count());
    for round in 1..=k {
        if !state.activators.is_empty() && state.all_burned() {
            break;
        }
        let scheduled = placed.iter().find(|&&(_, r)| r == round).map(|&(x, _)| x);
        let pick = match scheduled {
            Some(x) if state.can_ignite(x) => x,
            _ => (0..g.vertex_count())
                .filter(|&v| state.can_ignite(v))
                .max_by_key(|&v| (state.burn_time[v], std::cmp::Reverse(v)))
                .expect("an unburned vertex exists"),
        };
        state.advance(g, Some(pick)).expect("legal pick");
    }
    state.to_sequence()
}

/// `bn(G) = 2` exactly when `n >= 2` and the maximum degree is `n - 1` or `n - 2`.
pub fn bn2_characterization(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 2 && g.max_degree() + 2 >= n
}

/// 1 for `n <= 1`, 2 when the degree test admits two rounds, 3 otherwise.
pub fn trivial_lower_bound(g: &Graph) -> u32 {
    if g.vertex_count() <= 1 {
        1
    } else if bn2_characterization(g) {
        2
    } else {
        3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericBound {
    /// `ceil(2 sqrt(n) - 1)`.
    pub upper: u32,
    /// `ceil(sqrt(n))`, conjectured but unproven.
    pub conjectured: u32,
}

pub fn generic_upper_bound(n: u64) -> GenericBound {
    // ceil(2 sqrt(n) - 1) = ceil(sqrt(4n)) - 1
    GenericBound {
        upper: (ceil_sqrt(4 * n).max(1) - 1).max(1) as u32,
        conjectured: ceil_sqrt(n) as u32,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaBound {
    /// `floor(sqrt(n))`.
    pub q: u32,
    /// `q` of the decomposition `n = q^2 + r`, `1 <= r <= 2q + 1`.
    pub decomposition_q: u32,
    pub decomposition_r: u32,
    /// The burning number is one of `decomposition_q`, `decomposition_q + 1`.
    pub allowed: [u32; 2],
    /// Reported comparison value `q + 1`.
    pub expected: u32,
}

pub fn theta_bound(n: u64) -> Result<ThetaBound> {
    if n == 0 {
        return Err(Error::InvalidParameters("theta bound needs n >= 1".into()));
    }
    let q = floor_sqrt(n);
    let dq = ceil_sqrt(n) - 1;
    Ok(ThetaBound {
        q: q as u32,
        decomposition_q: dq as u32,
        decomposition_r: (n - dq * dq) as u32,
        allowed: [dq as u32, dq as u32 + 1],
        expected: q as u32 + 1,
    })
}

/// `ceil(sqrt(d)) + 2` for a graph whose cluster modulator is a path on `d` vertices.
pub fn cluster_bound(d: u64) -> u32 {
    ceil_sqrt(d) as u32 + 2
}

fn is_cluster_complement(g: &Graph, in_modulator: &[bool]) -> bool {
    let n = g.vertex_count();
    let mut seen = in_modulator.to_vec();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut component = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < component.len() {
            let u = component[i];
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
            i += 1;
        }
        let size = component.len();
        let complete = component
            .iter()
            .all(|&u| g.neighbors(u).iter().filter(|&&w| !in_modulator[w]).count() == size - 1);
        if !complete {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClusterCheck {
    pub holds: bool,
    /// Completion of the sequence on the modulator subgraph.
    pub modulator_completion: u32,
    /// Completion of the same activators on the whole graph.
    pub graph_completion: u32,
}

/// Burns `g` with a sequence computed for `G[A]` and checks it finishes
/// within two more rounds.
pub fn cluster_theorem_check(g: &Graph, modulator: &[VertexId], seq_on_modulator: &BurningSequence) -> Result<ClusterCheck> {
    let mut in_modulator = vec![false; g.vertex_count()];
    for &a in modulator {
        g.check_vertex(a)?;
        in_modulator[a] = true;
    }
    if !is_cluster_complement(g, &in_modulator) {
        return Err(Error::NotClusterGraph);
    }
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &a) in modulator.iter().enumerate() {
        local[a] = i;
    }
    let sub = g.induced_subgraph(modulator)?;
    let sub_activators = seq_on_modulator
        .activators
        .iter()
        .map(|&x| match local.get(x) {
            Some(&i) if i != usize::MAX => Ok(i),
            _ => Err(Error::InvalidParameters(format!("activator {x} is not in the modulator"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let modulator_completion = burn_times(&sub, &sub_activators)?.completion;
    let graph_completion = burn_times(g, &seq_on_modulator.activators)?.completion;
    Ok(ClusterCheck {
        holds: graph_completion <= modulator_completion + 2,
        modulator_completion,
        graph_completion,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub value: u32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower: u32,
    pub upper: u32,
    pub certificates: Vec<Certificate>,
}

/// Collects every bound that applies to `g`. `name` adds the θ bound for θ
/// instances; `modulator_path` adds the cluster bound.
pub fn bound_report(g: &Graph, name: Option<&InstanceName>, modulator_path: Option<usize>) -> BoundReport {
    let n = g.vertex_count() as u64;
    let lower = trivial_lower_bound(g);
    let generic = generic_upper_bound(n);
    let mut certificates = vec![
        Certificate {
            name: "degree-lower".into(),
            value: lower,
            reason: "bn = 2 iff n >= 2 and max degree is n-1 or n-2".into(),
        },
        Certificate {
            name: "generic-upper".into(),
            value: generic.upper,
            reason: "bn <= ceil(2 sqrt(n) - 1) for connected graphs".into(),
        },
    ];
    let mut upper = generic.upper.max(lower);
    if let Some(InstanceName::Theta { n: tn, .. }) = name {
        if let Ok(tb) = theta_bound(*tn as u64) {
            certificates.push(Certificate {
                name: "theta".into(),
                value: tb.allowed[1],
                reason: format!("theta graph on n = {tn}: bn is {} or {}", tb.allowed[0], tb.allowed[1]),
            });
            upper = upper.min(tb.allowed[1]);
        }
    }
    let d = modulator_path.or(match name {
        Some(&InstanceName::Cluster { path, .. }) => Some(path),
        _ => None,
    });
    if let Some(d) = d {
        let cb = cluster_bound(d as u64);
        certificates.push(Certificate {
            name: "cluster".into(),
            value: cb,
            reason: format!("path modulator of {d} vertices: bn <= ceil(sqrt(d)) + 2"),
        });
        upper = upper.min(cb);
    }
    BoundReport {
        lower,
        upper: upper.max(lower),
        certificates,
    }
}
