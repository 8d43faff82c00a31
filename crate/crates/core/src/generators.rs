//! Seeded instance generators: θ-graphs, path-plus-cliques graphs with a known
//! cluster modulator, and elementary graphs.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
}

/// Cycle `C_n`; `n < 3` degenerates to a path.
pub fn cycle(n: usize) -> Graph {
    let closing = (n >= 3).then_some((n - 1, 0));
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)).chain(closing)).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementaryKind {
    Path,
    Cycle,
    Complete,
}

pub fn gen_elementary(kind: ElementaryKind, n: usize) -> Result<Graph> {
    match kind {
        ElementaryKind::Path => Ok(path(n)),
        ElementaryKind::Cycle if n < 3 => Err(Error::InvalidParameters(format!("cycle needs n >= 3, got {n}"))),
        ElementaryKind::Cycle => Ok(cycle(n)),
        ElementaryKind::Complete => Ok(complete(n)),
    }
}

/// SplitMix64 finaliser, used to derive independent per-instance seeds.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Canonical instance label. θ: `theta<n>-<sample>-<m>-<l>`; cluster:
/// `cluster<k>-<nmin>-<nmax>-<d>-<n>-<sample as 4 digits>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InstanceName {
    Theta {
        n: usize,
        sample: u32,
        cycle: usize,
        path: usize,
    },
    Cluster {
        cliques: usize,
        size_min: usize,
        size_max: usize,
        path: usize,
        n: usize,
        sample: u32,
    },
}

impl fmt::Display for InstanceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InstanceName::Theta { n, sample, cycle, path } => write!(f, "theta{n}-{sample}-{cycle}-{path}"),
            InstanceName::Cluster {
                cliques,
                size_min,
                size_max,
                path,
                n,
                sample,
            } => write!(f, "cluster{cliques}-{size_min}-{size_max}-{path}-{n}-{sample:04}"),
        }
    }
}

impl FromStr for InstanceName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("not a canonical instance name: {s}"));
        let fields = |rest: &str, count: usize| -> Result<Vec<usize>> {
            let parts: Vec<_> = rest.split('-').collect();
            if parts.len() != count {
                return Err(bad());
            }
            parts.iter().map(|p| p.parse::<usize>().map_err(|_| bad())).collect()
        };
        if let Some(rest) = s.strip_prefix("theta") {
            let f = fields(rest, 4)?;
            Ok(InstanceName::Theta {
                n: f[0],
                sample: f[1] as u32,
                cycle: f[2],
                path: f[3],
            })
        } else if let Some(rest) = s.strip_prefix("cluster") {
            let f = fields(rest, 6)?;
            Ok(InstanceName::Cluster {
                cliques: f[0],
                size_min: f[1],
                size_max: f[2],
                path: f[3],
                n: f[4],
                sample: f[5] as u32,
            })
        } else {
            Err(bad())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub cycle_size: usize,
    /// Number of internal vertices on the joining path.
    pub path_internal: usize,
    pub seed: u64,
    pub sample: u32,
}

#[derive(Debug, Clone)]
pub struct ThetaInstance {
    pub graph: Graph,
    pub name: InstanceName,
    pub junctions: (VertexId, VertexId),
}

/// Cycle on `0..m`, two distinct random cycle vertices, joined through `l`
/// new vertices `m..m+l`.
pub fn gen_theta(spec: &ThetaSpec) -> Result<ThetaInstance> {
    let (m, l) = (spec.cycle_size, spec.path_internal);
    if m < 3 || l < 1 {
        return Err(Error::InvalidParameters(format!("theta needs m >= 3 and l >= 1, got m={m}, l={l}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let u = rng.gen_range(0..m);
    let mut v = rng.gen_range(0..m - 1);
    if v >= u {
        v += 1;
    }
    let n = m + l;
    let mut edges: Vec<(VertexId, VertexId)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    edges.push((u, m));
    edges.extend((m + 1..n).map(|w| (w - 1, w)));
    edges.push((n - 1, v));
    let name = InstanceName::Theta {
        n,
        sample: spec.sample,
        cycle: m,
        path: l,
    };
    let graph = Graph::from_edges(n, edges)?.with_name(name.to_string());
    Ok(ThetaInstance {
        graph,
        name,
        junctions: (u.min(v), u.max(v)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub clique_count: usize,
    pub size_min: usize,
    pub size_max: usize,
    /// Number of vertices on the path.
    pub path_len: usize,
    pub seed: u64,
    pub sample: u32,
}

#[derive(Debug, Clone)]
pub struct ClusterInstance {
    pub graph: Graph,
    pub name: InstanceName,
    /// Path vertices `0..d`; deleting them leaves the cliques.
    pub modulator: Vec<VertexId>,
    pub clique_sizes: Vec<usize>,
    /// Edges from each clique to the path (`a_i`).
    pub attachments: Vec<usize>,
}

/// Path `0..d` followed by `k` cliques; clique `i` gets `a_i` edges to random
/// path vertices from distinct clique vertices, `1 <= a_i < n_i - 1`.
pub fn gen_cluster(spec: &ClusterSpec) -> Result<ClusterInstance> {
    let ClusterSpec {
        clique_count: k,
        size_min,
        size_max,
        path_len: d,
        ..
    } = *spec;
    if size_min < 3 || size_min > size_max || d < 1 || k < 1 {
        return Err(Error::InvalidParameters(format!(
            "cluster needs k >= 1, 3 <= size_min <= size_max, d >= 1; got k={k}, sizes {size_min}..{size_max}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let clique_sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(size_min..=size_max)).collect();
    let n = d + clique_sizes.iter().sum::<usize>();
    let mut edges: Vec<(VertexId, VertexId)> = (1..d).map(|v| (v - 1, v)).collect();
    let mut attachments = Vec::with_capacity(k);
    let mut offset = d;
    for &size in &clique_sizes {
        for a in 0..size {
            for b in a + 1..size {
                edges.push((offset + a, offset + b));
            }
        }
        let count = rng.gen_range(1..=size - 2);
        for local in index::sample(&mut rng, size, count) {
            edges.push((rng.gen_range(0..d), offset + local));
        }
        attachments.push(count);
        offset += size;
    }
    let name = InstanceName::Cluster {
        cliques: k,
        size_min,
        size_max,
        path: d,
        n,
        sample: spec.sample,
    };
    let graph = Graph::from_edges(n, edges)?.with_name(name.to_string());
    Ok(ClusterInstance {
        graph,
        name,
        modulator: (0..d).collect(),
        clique_sizes,
        attachments,
    })
}

/// Parameter ranges for a batch; all ranges inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyRange {
    Theta {
        n_min: usize,
        n_max: usize,
    },
    Cluster {
        k_min: usize,
        k_max: usize,
        size_min: usize,
        size_max: usize,
        d_min: usize,
        d_max: usize,
    },
}

impl FamilyRange {
    pub fn theta_default() -> Self {
        FamilyRange::Theta { n_min: 400, n_max: 900 }
    }

    pub fn cluster_default() -> Self {
        FamilyRange::Cluster {
            k_min: 50,
            k_max: 100,
            size_min: 4,
            size_max: 20,
            d_min: 500,
            d_max: 1000,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilyRange::Theta { n_min, n_max } => n_min >= 4 && n_min <= n_max,
            FamilyRange::Cluster {
                k_min,
                k_max,
                size_min,
                size_max,
                d_min,
                d_max,
            } => k_min >= 1 && k_min <= k_max && size_min >= 3 && size_min <= size_max && d_min >= 1 && d_min <= d_max,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("bad family ranges: {self:?}")))
        }
    }
}

/// Sidecar metadata stored next to a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum InstanceMeta {
    Theta {
        name: String,
        spec: ThetaSpec,
        junctions: (VertexId, VertexId),
    },
    Cluster {
        name: String,
        spec: ClusterSpec,
        modulator: Vec<VertexId>,
        clique_sizes: Vec<usize>,
        attachments: Vec<usize>,
    },
}

impl InstanceMeta {
    pub fn name(&self) -> &str {
        match self {
            InstanceMeta::Theta { name, .. } | InstanceMeta::Cluster { name, .. } => name,
        }
    }

    /// Size of the known cluster modulator, if any.
    pub fn modulator_size(&self) -> Option<usize> {
        match self {
            InstanceMeta::Cluster { modulator, .. } => Some(modulator.len()),
            InstanceMeta::Theta { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub name: String,
    pub graph: Graph,
    pub meta: InstanceMeta,
}

/// Instance `index` of a batch; depends only on `(family, master_seed, index)`.
pub fn gen_instance(family: &FamilyRange, master_seed: u64, index: u32) -> Result<GeneratedInstance> {
    family.validate()?;
    let seed = mix_seed(master_seed, u64::from(index));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        FamilyRange::Theta { n_min, n_max } => {
            let n = rng.gen_range(n_min..=n_max);
            let l = rng.gen_range(1..=n - 3);
            let spec = ThetaSpec {
                cycle_size: n - l,
                path_internal: l,
                seed: rng.gen(),
                sample: index,
            };
            let inst = gen_theta(&spec)?;
            Ok(GeneratedInstance {
                name: inst.name.to_string(),
                meta: InstanceMeta::Theta {
                    name: inst.name.to_string(),
                    spec,
                    junctions: inst.junctions,
                },
                graph: inst.graph,
            })
        }
        FamilyRange::Cluster {
            k_min,
            k_max,
            size_min,
            size_max,
            d_min,
            d_max,
        } => {
            let spec = ClusterSpec {
                clique_count: rng.gen_range(k_min..=k_max),
                size_min,
                size_max,
                path_len: rng.gen_range(d_min..=d_max),
                seed: rng.gen(),
                sample: index,
            };
            let inst = gen_cluster(&spec)?;
            Ok(GeneratedInstance {
                name: inst.name.to_string(),
                meta: InstanceMeta::Cluster {
                    name: inst.name.to_string(),
                    spec,
                    modulator: inst.modulator,
                    clique_sizes: inst.clique_sizes,
                    attachments: inst.attachments,
                },
                graph: inst.graph,
            })
        }
    }
}

/// Lazily generates `count` instances.
pub fn gen_batch(family: FamilyRange, count: u32, master_seed: u64) -> impl Iterator<Item = Result<GeneratedInstance>> {
    (0..count).map(move |i| gen_instance(&family, master_seed, i))
}
