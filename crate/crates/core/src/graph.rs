//! The forbidden-vertex graph (hypercube subgraph induced on the complement
//! of S) and the largest clique-subdivision order it contains.

use crate::geom::{CubePoint, PointSet};
use itertools::Itertools;

/// Induced subgraph of the n-cube graph on the vertices outside S.
#[derive(Clone, Debug)]
pub struct ForbiddenGraph {
    pub n: usize,
    pub verts: Vec<CubePoint>,
    /// Index pairs (i, j), i < j, whose masks differ in exactly one bit.
    pub edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl ForbiddenGraph {
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
}

pub fn forbidden_graph(s: &PointSet) -> ForbiddenGraph {
    let n = s.n();
    let verts: Vec<CubePoint> = s.complement().points();
    let index: std::collections::HashMap<u64, usize> =
        verts.iter().enumerate().map(|(i, p)| (p.mask, i)).collect();
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); verts.len()];
    for (i, p) in verts.iter().enumerate() {
        for b in 0..n {
            let other = p.mask ^ (1u64 << b);
            if let Some(&j) = index.get(&other) {
                if i < j {
                    edges.push((i, j));
                }
                adj[i].push(j);
            }
        }
    }
    ForbiddenGraph { n, verts, edges, adj }
}

/// Largest t such that the graph contains a subdivision of K_{t+1}
/// (topological clique). Conventions: the empty graph and edgeless graphs
/// give 0. Found by descending search over t; a K_{t+1}-subdivision always
/// contains a K_t-subdivision, so the first hit is the maximum.
pub fn max_subdivision_order(g: &ForbiddenGraph) -> usize {
    let v = g.vertex_count();
    if v == 0 || g.edges.is_empty() {
        return 0;
    }
    let maxdeg = (0..v).map(|i| g.degree(i)).max().unwrap();
    let upper = maxdeg.min(v - 1);
    for t in (1..=upper).rev() {
        if has_clique_subdivision(g, t + 1) {
            return t;
        }
    }
    0
}

/// True iff g contains a subdivision of K_k: k branch vertices joined by
/// internally vertex-disjoint paths, all internal vertices distinct from
/// the branch vertices. Exhaustive backtracking over branch sets and path
/// systems, pruned by free-vertex reachability and exit-capacity counts.
pub fn has_clique_subdivision(g: &ForbiddenGraph, k: usize) -> bool {
    let v = g.vertex_count();
    if k == 0 {
        return true;
    }
    if k == 1 {
        return v >= 1;
    }
    // internally disjoint paths use pairwise distinct edges
    if g.edges.len() < k * (k - 1) / 2 {
        return false;
    }
    // branch vertices need degree >= k-1; high-degree candidates first so
    // witnesses in dense graphs surface early
    let mut eligible: Vec<usize> = (0..v).filter(|&i| g.degree(i) >= k - 1).collect();
    if eligible.len() < k {
        return false;
    }
    eligible.sort_by_key(|&i| std::cmp::Reverse(g.degree(i)));
    // Star-shaped branch sets (a center plus k-1 of its neighbors) realize
    // clique subdivisions in cube subgraphs through pairwise-distinct
    // midpoints, so they are by far the likeliest witnesses: probe them
    // before the general enumeration.
    for &c in &eligible {
        let nbs: Vec<usize> = g
            .neighbors(c)
            .iter()
            .copied()
            .filter(|&x| g.degree(x) >= k - 1)
            .collect();
        if nbs.len() < k - 1 {
            continue;
        }
        for rest in nbs.iter().copied().combinations(k - 1) {
            let mut branch = vec![c];
            branch.extend(rest);
            if connect_all(g, &branch) {
                return true;
            }
        }
    }
    let mut branch = Vec::with_capacity(k);
    choose_branches(g, k, &eligible, 0, &mut branch)
}

fn choose_branches(
    g: &ForbiddenGraph,
    k: usize,
    eligible: &[usize],
    start: usize,
    branch: &mut Vec<usize>,
) -> bool {
    if branch.len() == k {
        return connect_all(g, branch);
    }
    let need = k - branch.len();
    for idx in start..eligible.len() {
        if eligible.len() - idx < need {
            break;
        }
        branch.push(eligible[idx]);
        if choose_branches(g, k, eligible, idx + 1, branch) {
            branch.pop();
            return true;
        }
        branch.pop();
    }
    false
}

fn connect_all(g: &ForbiddenGraph, branch: &[usize]) -> bool {
    let mut pairs = Vec::new();
    for i in 0..branch.len() {
        for j in i + 1..branch.len() {
            pairs.push((branch[i], branch[j]));
        }
    }
    let mut used = vec![false; g.vertex_count()];
    for &b in branch {
        used[b] = true;
    }
    connect_from(g, branch, &mut pairs, 0, &mut used)
}

/// How many immediate routing options pair (a, b) has right now: direct
/// edge, free common neighbors (length-2 paths), then general free exits.
/// Lower means more constrained.
fn pair_options(g: &ForbiddenGraph, a: usize, b: usize, used: &[bool]) -> usize {
    if g.neighbors(a).contains(&b) {
        return 0;
    }
    let common = g
        .neighbors(a)
        .iter()
        .filter(|&&x| !used[x] && g.neighbors(b).contains(&x))
        .count();
    if common > 0 {
        return common;
    }
    let fa = g.neighbors(a).iter().filter(|&&x| !used[x]).count();
    let fb = g.neighbors(b).iter().filter(|&&x| !used[x]).count();
    8 + fa.min(fb)
}

/// Every remaining pair must still admit a path through currently free
/// vertices; BFS per pair.
fn remaining_reachable(
    g: &ForbiddenGraph,
    pairs: &[(usize, usize)],
    idx: usize,
    used: &[bool],
) -> bool {
    let mut visited = vec![false; g.vertex_count()];
    let mut queue = Vec::new();
    'pairs: for &(a, b) in &pairs[idx..] {
        visited.iter_mut().for_each(|x| *x = false);
        queue.clear();
        visited[a] = true;
        queue.push(a);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &nb in g.neighbors(x) {
                if nb == b {
                    continue 'pairs;
                }
                if !used[nb] && !visited[nb] {
                    visited[nb] = true;
                    queue.push(nb);
                }
            }
        }
        return false;
    }
    true
}

/// Each branch vertex must keep one distinct exit neighbor per remaining
/// pair it participates in: an unused neighbor, or the partner itself when
/// adjacent.
fn exits_sufficient(
    g: &ForbiddenGraph,
    branch: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    used: &[bool],
) -> bool {
    for &u in branch {
        let mut needed = 0;
        let mut adjacent_partners = 0;
        for &(a, b) in &pairs[idx..] {
            if a == u || b == u {
                needed += 1;
                let partner = if a == u { b } else { a };
                if g.neighbors(u).contains(&partner) {
                    adjacent_partners += 1;
                }
            }
        }
        if needed == 0 {
            continue;
        }
        let free = g.neighbors(u).iter().filter(|&&nb| !used[nb]).count();
        if free + adjacent_partners < needed {
            return false;
        }
    }
    true
}

fn connect_from(
    g: &ForbiddenGraph,
    branch: &[usize],
    pairs: &mut Vec<(usize, usize)>,
    idx: usize,
    used: &mut [bool],
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    if !exits_sufficient(g, branch, pairs, idx, used)
        || !remaining_reachable(g, pairs, idx, used)
    {
        return false;
    }
    // Route the most constrained remaining pair next; any fixed choice per
    // node keeps the search complete, and fail-first ordering collapses
    // hopeless branch sets quickly.
    let mut best = idx;
    let mut best_score = usize::MAX;
    for i in idx..pairs.len() {
        let (a, b) = pairs[i];
        let score = pair_options(g, a, b, used);
        if score < best_score {
            best_score = score;
            best = i;
            if score == 0 {
                break;
            }
        }
    }
    pairs.swap(idx, best);
    let (a, b) = pairs[idx];
    let mut path = vec![a];
    extend_path(g, b, branch, pairs, idx, used, &mut path)
}

/// Grows a chordless path along `path` toward `target` over unused internal
/// vertices; upon completion recurses into the next pair, undoing markings
/// on backtrack. Restricting to chordless paths is complete — a path system
/// minimizing its internal-vertex count has no chords, since a chord would
/// shortcut it — and it prunes the wandering that makes dense cube
/// subgraphs explode. Neighbors closest to the target (Hamming) are tried
/// first, which makes witness discovery nearly greedy.
fn extend_path(
    g: &ForbiddenGraph,
    target: usize,
    branch: &[usize],
    pairs: &mut Vec<(usize, usize)>,
    idx: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    let cur = *path.last().unwrap();
    let tmask = g.verts[target].mask;
    let chord_free = |nb: usize| {
        let nmask = g.verts[nb].mask;
        path[..path.len() - 1]
            .iter()
            .all(|&x| (g.verts[x].mask ^ nmask).count_ones() != 1)
    };
    let mut order: Vec<usize> = g
        .neighbors(cur)
        .iter()
        .copied()
        .filter(|&nb| (nb == target || !used[nb]) && chord_free(nb))
        .collect();
    order.sort_by_key(|&nb| (g.verts[nb].mask ^ tmask).count_ones());
    for nb in order {
        if nb == target {
            if connect_from(g, branch, pairs, idx + 1, used) {
                return true;
            }
        } else {
            used[nb] = true;
            path.push(nb);
            if extend_path(g, target, branch, pairs, idx, used, path) {
                path.pop();
                used[nb] = false;
                return true;
            }
            path.pop();
            used[nb] = false;
        }
    }
    false
}
