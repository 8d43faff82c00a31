//! The six burning heuristics.
//!
//! Four pick the first activator (graph center or random) and each later one
//! from the time-to-burn field (half of the maximum, or the maximum). Two
//! extract a long path (DFS tree or double-sweep BFS), burn it with the
//! optimal path schedule and finish with random unburned activators.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::burn::{BurnState, BurningSequence};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, dfs_long_path, double_bfs_path, is_connected, metrics, Graph, VertexId};
use crate::math::ceil_sqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeuristicId {
    CtrHalf,
    CtrFar,
    RndHalf,
    RndFar,
    DfsPath,
    DBfsPath,
}

impl HeuristicId {
    pub const ALL: [HeuristicId; 6] = [
        HeuristicId::CtrHalf,
        HeuristicId::CtrFar,
        HeuristicId::RndHalf,
        HeuristicId::RndFar,
        HeuristicId::DfsPath,
        HeuristicId::DBfsPath,
    ];

    /// Command-line name.
    pub fn as_str(self) -> &'static str {
        match self {
            HeuristicId::CtrHalf => "ctr-half",
            HeuristicId::CtrFar => "ctr-far",
            HeuristicId::RndHalf => "rnd-half",
            HeuristicId::RndFar => "rnd-far",
            HeuristicId::DfsPath => "dfs-path",
            HeuristicId::DBfsPath => "d-bfs-path",
        }
    }

    /// Display label used in rendered tables.
    pub fn label(self) -> &'static str {
        match self {
            HeuristicId::CtrHalf => "Ctr-Half dist.",
            HeuristicId::CtrFar => "Ctr-Far dist.",
            HeuristicId::RndHalf => "Rnd-Half dist.",
            HeuristicId::RndFar => "Rnd-Far dist.",
            HeuristicId::DfsPath => "DFS-path",
            HeuristicId::DBfsPath => "D-BFS-path",
        }
    }

    pub fn is_path_based(self) -> bool {
        matches!(self, HeuristicId::DfsPath | HeuristicId::DBfsPath)
    }

    pub fn uses_center(self) -> bool {
        matches!(self, HeuristicId::CtrHalf | HeuristicId::CtrFar)
    }

    /// Parses a comma-separated list of names.
    pub fn parse_list(s: &str) -> Result<Vec<HeuristicId>> {
        s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect()
    }
}

impl fmt::Display for HeuristicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HeuristicId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HeuristicId::ALL
            .into_iter()
            .find(|h| h.as_str() == s)
            .ok_or_else(|| Error::UnknownHeuristic(s.to_string()))
    }
}

/// Target used by the far-distance rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FarTarget {
    /// Vertex with maximum time-to-burn.
    #[default]
    Max,
    /// Vertex whose time-to-burn is closest to the maximum minus one.
    MaxMinusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub far_target: FarTarget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicRun {
    pub heuristic: HeuristicId,
    pub seed: u64,
    pub sequence: BurningSequence,
    pub wall_time: Duration,
}

pub fn first_activator_center(g: &Graph) -> Result<VertexId> {
    Ok(metrics(g)?.center[0])
}

pub fn first_activator_random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<VertexId> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(rng.gen_range(0..g.vertex_count()))
}

/// Unburned vertex whose time-to-burn is nearest `target`; ties go to the
/// larger time-to-burn, then to `tie_key`, then to the smaller id.
fn nearest_to(state: &BurnState, target: impl FnOnce(u32) -> u32, tie_key: impl Fn(VertexId) -> u32) -> Result<VertexId> {
    let field = state.time_to_burn()?;
    if field.max == 0 {
        return Err(Error::AllBurned);
    }
    let target = target(field.max);
    field
        .unburned()
        .min_by_key(|&(v, t)| (t.abs_diff(target), std::cmp::Reverse(t), tie_key(v), v))
        .map(|(v, _)| v)
        .ok_or(Error::AllBurned)
}

/// Half-distance rule: time-to-burn closest to `ceil(t / 2)`. Among equally
/// good vertices the one nearest the last-burning vertex wins, so the new
/// fire heads toward the region that burns last.
pub fn next_activator_half(g: &Graph, state: &BurnState) -> Result<VertexId> {
    let field = state.time_to_burn()?;
    let farthest = field
        .unburned()
        .find(|&(_, t)| t == field.max)
        .map(|(v, _)| v)
        .ok_or(Error::AllBurned)?;
    let dist = bfs_distances(g, farthest)?.dist;
    nearest_to(state, |t| t.div_ceil(2), |v| dist[v])
}

/// Far-distance rule: maximum time-to-burn, smallest id on ties.
pub fn next_activator_far(state: &BurnState) -> Result<VertexId> {
    next_activator_far_with(state, FarTarget::Max)
}

pub fn next_activator_far_with(state: &BurnState, target: FarTarget) -> Result<VertexId> {
    match target {
        FarTarget::Max => nearest_to(state, |t| t, |_| 0),
        FarTarget::MaxMinusOne => nearest_to(state, |t| t.saturating_sub(1).max(1), |_| 0),
    }
}

fn check_input(g: &Graph) -> Result<()> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn loop_guard(g: &Graph, state: &BurnState) {
    assert!(
        state.round as usize <= g.vertex_count(),
        "burning loop exceeded n = {} rounds",
        g.vertex_count()
    );
}

pub fn run_heuristic(g: &Graph, id: HeuristicId, seed: u64) -> Result<HeuristicRun> {
    run_heuristic_with(g, id, seed, &HeuristicConfig::default())
}

pub fn run_heuristic_with(g: &Graph, id: HeuristicId, seed: u64, config: &HeuristicConfig) -> Result<HeuristicRun> {
    let started = Instant::now();
    let sequence = if id.is_path_based() {
        run_path_heuristic(g, id, seed)?
    } else {
        run_selection_heuristic(g, id, seed, config)?
    };
    Ok(HeuristicRun {
        heuristic: id,
        seed,
        sequence,
        wall_time: started.elapsed(),
    })
}

/// Center or random first activator, then half- or far-distance activators
/// until every vertex is burned.
pub fn run_selection_heuristic(g: &Graph, id: HeuristicId, seed: u64, config: &HeuristicConfig) -> Result<BurningSequence> {
    check_input(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = match id {
        HeuristicId::CtrHalf | HeuristicId::CtrFar => first_activator_center(g)?,
        HeuristicId::RndHalf | HeuristicId::RndFar => first_activator_random(g, &mut rng)?,
        _ => return Err(Error::InvalidParameters(format!("{id} is not a selection heuristic"))),
    };
    let mut state = BurnState::new(g.vertex_count());
    state.advance(g, Some(first))?;
    while !state.all_burned() {
        loop_guard(g, &state);
        let next = match id {
            HeuristicId::CtrHalf | HeuristicId::RndHalf => next_activator_half(g, &state)?,
            _ => next_activator_far_with(&state, config.far_target)?,
        };
        state.advance(g, Some(next))?;
    }
    Ok(state.to_sequence())
}

/// Optimal burning order for a path `p_1..p_L` in `b = ceil(sqrt(L))` rounds.
///
/// Activator `i` is the center of the `i`-th segment from the left. Segment
/// `i` spans `2(b - i) + 1` vertices, shrunk so that every later round still
/// has at least one vertex of its own.
pub fn path_burning_schedule(path: &[VertexId]) -> Result<Vec<VertexId>> {
    if path.is_empty() {
        return Err(Error::NotAPath("empty".into()));
    }
    let mut sorted = path.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NotAPath(format!("vertex {} repeated", w[0])));
    }
    let len = path.len();
    let b = ceil_sqrt(len as u64) as usize;
    let mut schedule = Vec::with_capacity(b);
    let mut start = 0;
    for i in 1..=b {
        let later = b - i;
        let size = (2 * later + 1).min(len - start - later);
        schedule.push(path[start + (size - 1) / 2]);
        start += size;
    }
    debug_assert_eq!(start, len);
    Ok(schedule)
}

/// Random vertex that is still unburned after the next round's spread, or
/// failing that any vertex that may legally be ignited.
fn random_unburned<R: Rng + ?Sized>(state: &BurnState, rng: &mut R) -> Option<VertexId> {
    let next = state.round + 1;
    let open: Vec<VertexId> = (0..state.burn_time.len()).filter(|&v| state.burn_time[v] > next).collect();
    if let Some(&v) = open.choose(rng) {
        return Some(v);
    }
    let edge: Vec<VertexId> = (0..state.burn_time.len()).filter(|&v| state.can_ignite(v)).collect();
    edge.choose(rng).copied()
}

/// Burns `g` along `path`: scheduled activators while they are legal, a random
/// unburned vertex whenever a scheduled one is already burned or the schedule
/// has run out.
pub fn burn_along_path<R: Rng + ?Sized>(g: &Graph, path: &[VertexId], rng: &mut R) -> Result<BurningSequence> {
    let schedule = path_burning_schedule(path)?;
    let mut state = BurnState::new(g.vertex_count());
    let mut pending = schedule.into_iter();
    loop {
        let next = match pending.next() {
            Some(v) if state.can_ignite(v) => v,
            _ => random_unburned(&state, rng).ok_or(Error::AllBurned)?,
        };
        state.advance(g, Some(next))?;
        if state.all_burned() {
            break;
        }
        loop_guard(g, &state);
    }
    Ok(state.to_sequence())
}

pub fn run_path_heuristic(g: &Graph, id: HeuristicId, seed: u64) -> Result<BurningSequence> {
    check_input(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let path = match id {
        HeuristicId::DfsPath => dfs_long_path(g, &mut rng)?,
        HeuristicId::DBfsPath => double_bfs_path(g, &mut rng)?,
        _ => return Err(Error::InvalidParameters(format!("{id} is not a path heuristic"))),
    };
    burn_along_path(g, &path, &mut rng)
}
