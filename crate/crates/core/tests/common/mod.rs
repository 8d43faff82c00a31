// Independent reference implementations. Nothing here calls into the
// library's BFS, burning or search code.
#![allow(dead_code)]

use graph_burning::Graph;

pub const INF: u32 = u32::MAX / 4;

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Covering plus spacing, straight from the definition.
pub fn is_burning_sequence(d: &[Vec<u32>], seq: &[usize], k: usize) -> bool {
    let n = d.len();
    let covered = (0..n).all(|v| seq.iter().enumerate().any(|(i, &x)| (d[x][v] as usize) + i < k));
    let spaced = (0..seq.len()).all(|j| (0..j).all(|i| d[seq[i]][seq[j]] as usize >= j - i));
    covered && spaced && seq.len() <= k
}

/// Tries every ordered tuple of distinct vertices of length 1, 2, ...
pub fn brute_force_bn(g: &Graph) -> u32 {
    let d = floyd_warshall(g);
    let n = g.vertex_count();
    for k in 1..=n {
        let mut seq = Vec::with_capacity(k);
        let mut used = vec![false; n];
        if tuples(&d, k, &mut seq, &mut used) {
            return k as u32;
        }
    }
    n as u32
}

fn tuples(d: &[Vec<u32>], k: usize, seq: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if seq.len() == k {
        return is_burning_sequence(d, seq, k);
    }
    for v in 0..d.len() {
        if used[v] {
            continue;
        }
        used[v] = true;
        seq.push(v);
        let found = tuples(d, k, seq, used);
        seq.pop();
        used[v] = false;
        if found {
            return true;
        }
    }
    false
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (seen >> u & 1 == 1 || seen >> v & 1 == 1) {
                next |= 1 << u | 1 << v;
            }
        }
        if next == seen {
            return seen.count_ones() as usize == n;
        }
        seen = next;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(cur, n, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// One representative per isomorphism class of connected graphs on `n` vertices.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs = pair_index(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        slot[u][v] = i;
        slot[v][u] = i;
    }
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if !mask_connected(n, &pairs, mask) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << slot[p[u]][p[v]])
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

/// All 143 connected graphs on 1..=6 vertices.
pub fn small_corpus() -> Vec<Graph> {
    (1..=6).flat_map(connected_graphs_up_to_iso).collect()
}
