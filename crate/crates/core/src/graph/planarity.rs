//! Planarity testing and Kuratowski witnesses.
//!
//! The production test is an incremental path-addition algorithm
//! (Demoucron–Malgrange–Pertuiset): grow a planar embedding face by face,
//! placing one fragment path per step; a fragment with no admissible face
//! certifies nonplanarity. Loops and parallel edges never affect planarity
//! and are stripped up front; the test runs per biconnected block.
//!
//! Witnesses come from an exhaustive subdivision search: an injective
//! placement of K5/K3,3 branch vertices plus internally disjoint connecting
//! paths, found by backtracking. The search doubles as the desk-scale
//! cross-check oracle for the incremental test.

use std::collections::BTreeSet;

use super::canonical::canonical_labeling;
use super::MetricGraph;

pub fn is_planar(g: &MetricGraph) -> bool {
    // Simplify: planarity is invariant under removing loops and collapsing
    // parallel edges.
    let n = g.vertex_count();
    let mut simple: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(u, v, _) in g.edges() {
        if u != v {
            simple.insert(if u < v { (u, v) } else { (v, u) });
        }
    }
    let edges: Vec<(usize, usize)> = simple.into_iter().collect();
    for block in biconnected_blocks(n, &edges) {
        if !block_planar(&block) {
            return false;
        }
    }
    true
}

/// Edge sets of the biconnected blocks (bridges come out as single-edge
/// blocks), via the classic lowpoint DFS with an edge stack.
fn biconnected_blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge idx)
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut blocks = Vec::new();
    let mut num = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0usize;
    let mut stack: Vec<usize> = Vec::new(); // edge indices
    let mut used_edge = vec![false; edges.len()];

    fn dfs(
        v: usize,
        parent_edge: Option<usize>,
        adj: &[Vec<(usize, usize)>],
        edges: &[(usize, usize)],
        num: &mut [usize],
        low: &mut [usize],
        counter: &mut usize,
        stack: &mut Vec<usize>,
        used_edge: &mut [bool],
        blocks: &mut Vec<Vec<(usize, usize)>>,
    ) {
        num[v] = *counter;
        low[v] = *counter;
        *counter += 1;
        for &(w, e) in &adj[v] {
            if Some(e) == parent_edge {
                continue;
            }
            if !used_edge[e] {
                used_edge[e] = true;
                stack.push(e);
            }
            if num[w] == usize::MAX {
                dfs(w, Some(e), adj, edges, num, low, counter, stack, used_edge, blocks);
                low[v] = low[v].min(low[w]);
                if low[w] >= num[v] {
                    // v is a cut vertex (or root): pop one block.
                    let mut block = Vec::new();
                    while let Some(&top) = stack.last() {
                        stack.pop();
                        block.push(edges[top]);
                        if top == e {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            } else {
                low[v] = low[v].min(num[w]);
            }
        }
    }

    for v in 0..n {
        if num[v] == usize::MAX {
            dfs(
                v, None, &adj, edges, &mut num, &mut low, &mut counter, &mut stack,
                &mut used_edge, &mut blocks,
            );
        }
    }
    blocks
}

/// Planarity of one biconnected simple block by incremental path addition.
fn block_planar(block: &[(usize, usize)]) -> bool {
    let verts: BTreeSet<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    let nv = verts.len();
    let ne = block.len();
    if ne <= 3 || nv <= 3 {
        return true;
    }
    if ne > 3 * nv - 6 {
        return false;
    }
    let vlist: Vec<usize> = verts.iter().copied().collect();
    let vidx = |v: usize| vlist.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = block
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (vidx(u), vidx(v));
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for nbrs in adj.iter_mut() {
        nbrs.sort_unstable();
    }

    // Initial cycle by DFS back edge.
    let cycle = find_cycle(nv, &adj).expect("biconnected block with >= 4 edges has a cycle");
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.clone()];
    let mut embedded_v = vec![false; nv];
    for &v in &cycle {
        embedded_v[v] = true;
    }
    let mut embedded_e: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_e.insert(if a < b { (a, b) } else { (b, a) });
    }

    loop {
        let fragments = compute_fragments(nv, &edges, &adj, &embedded_v, &embedded_e);
        if fragments.is_empty() {
            return true;
        }
        // Admissible faces contain all attachments of the fragment.
        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.or(fallback).expect("nonempty fragments");
        let frag = &fragments[fi];
        let path = fragment_path(frag, &adj);
        // Split the chosen face along the path.
        let face = faces.swap_remove(face_idx);
        let ia = face.iter().position(|&v| v == path[0]).unwrap();
        let ib = face.iter().position(|&v| v == *path.last().unwrap()).unwrap();
        let m = face.len();
        let mut f1 = Vec::new();
        let mut i = ia;
        loop {
            f1.push(face[i]);
            if i == ib {
                break;
            }
            i = (i + 1) % m;
        }
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2 = Vec::new();
        let mut i = ib;
        loop {
            f2.push(face[i]);
            if i == ia {
                break;
            }
            i = (i + 1) % m;
        }
        f2.extend(path[1..path.len() - 1].iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            let (a, b) = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
            embedded_e.insert((a, b));
        }
        for &v in &path {
            embedded_v[v] = true;
        }
    }
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior (non-embedded) vertices; empty for single-edge fragments.
    interior: BTreeSet<usize>,
    /// For single-edge fragments, the edge itself.
    chord: Option<(usize, usize)>,
}

fn compute_fragments(
    nv: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<usize>],
    embedded_v: &[bool],
    embedded_e: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    // Chords: non-embedded edges between embedded vertices.
    for &(u, v) in edges {
        if embedded_v[u] && embedded_v[v] && !embedded_e.contains(&(u, v)) {
            fragments.push(Fragment {
                attachments: vec![u, v],
                interior: BTreeSet::new(),
                chord: Some((u, v)),
            });
        }
    }
    // Components of the non-embedded part plus their attachment vertices.
    let mut seen = vec![false; nv];
    for start in 0..nv {
        if embedded_v[start] || seen[start] {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut attach = BTreeSet::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &w in &adj[v] {
                if embedded_v[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        fragments.push(Fragment {
            attachments: attach.into_iter().collect(),
            interior: comp,
            chord: None,
        });
    }
    fragments.sort_by(|a, b| {
        (&a.attachments, a.interior.iter().next())
            .cmp(&(&b.attachments, b.interior.iter().next()))
    });
    fragments
}

/// A path through the fragment between two distinct attachment vertices
/// whose interior vertices all lie in the fragment (so every path edge is
/// still unembedded).
fn fragment_path(frag: &Fragment, adj: &[Vec<usize>]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let start = frag.attachments[0];
    let mut prev: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[start] {
        if frag.interior.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if w != start && frag.attachments.contains(&w) {
                let mut path = vec![w, v];
                let mut cur = v;
                while cur != start {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
        }
        for &w in &adj[v] {
            if frag.interior.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("biconnected blocks give every fragment two attachments")
}

fn find_cycle(nv: usize, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; nv];
    let mut state = vec![0u8; nv]; // 0 unvisited, 1 in stack, 2 done
    for root in 0..nv {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, usize::MAX)];
        while let Some(&(v, from)) = stack.last() {
            if state[v] == 0 {
                state[v] = 1;
                parent[v] = from;
                let mut advanced = false;
                for &w in &adj[v] {
                    if w == from {
                        continue;
                    }
                    if state[w] == 1 {
                        // Back edge v -> w closes a cycle.
                        let mut cycle = vec![v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            cycle.push(cur);
                        }
                        return Some(cycle);
                    }
                    if state[w] == 0 {
                        stack.push((w, v));
                        advanced = true;
                        break;
                    }
                }
                if advanced {
                    continue;
                }
            }
            // Exhausted v: try remaining neighbors before popping.
            let mut pushed = false;
            for &w in &adj[v] {
                if state[w] == 0 {
                    stack.push((w, v));
                    pushed = true;
                    break;
                }
                if state[w] == 1 && w != from && w != v {
                    let mut cycle = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur];
                        cycle.push(cur);
                    }
                    return Some(cycle);
                }
            }
            if !pushed {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision witness: the branch vertices and the edge ids (into the
/// input multigraph) of the union of the connecting paths. Suppressing the
/// witness subgraph's degree-2 vertices yields K5 or K3,3.
#[derive(Debug, Clone)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl KuratowskiWitness {
    /// Verifies the witness against the host graph: the selected edge
    /// subset, with degree-2 vertices suppressed, must be isomorphic to
    /// the claimed Kuratowski graph.
    pub fn verify(&self, g: &MetricGraph) -> bool {
        let verts: BTreeSet<usize> = self
            .edges
            .iter()
            .flat_map(|&e| {
                let (u, v, _) = g.edge(e);
                [u, v]
            })
            .collect();
        let vlist: Vec<usize> = verts.iter().copied().collect();
        let vidx = |v: usize| vlist.binary_search(&v).unwrap();
        let mut n = vlist.len();
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&e| {
                let (u, v, _) = g.edge(e);
                (vidx(u), vidx(v))
            })
            .collect();
        // Suppress degree-2 vertices.
        loop {
            let degree = |pairs: &[(usize, usize)], v: usize| -> usize {
                pairs
                    .iter()
                    .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
                    .sum()
            };
            let Some(v) = (0..n).find(|&v| degree(&pairs, v) == 2) else {
                break;
            };
            let incident: Vec<usize> = (0..pairs.len())
                .filter(|&e| pairs[e].0 == v || pairs[e].1 == v)
                .collect();
            if incident.len() != 2 {
                return false; // loop at a degree-2 vertex: not a subdivision
            }
            let other = |e: usize| {
                let (a, b) = pairs[e];
                if a == v {
                    b
                } else {
                    a
                }
            };
            let (x, y) = (other(incident[0]), other(incident[1]));
            pairs.remove(incident[1]);
            pairs.remove(incident[0]);
            pairs.push((x.min(y), x.max(y)));
            let remap = |w: usize| if w > v { w - 1 } else { w };
            pairs = pairs.iter().map(|&(a, b)| (remap(a), remap(b))).collect();
            n -= 1;
        }
        let canon = canonical_labeling(n, &pairs);
        match self.kind {
            KuratowskiKind::K5 => canon == canonical_labeling(5, &k5_edges()),
            KuratowskiKind::K33 => canon == canonical_labeling(6, &k33_edges()),
        }
    }
}

pub fn k5_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..5 {
        for j in (i + 1)..5 {
            e.push((i, j));
        }
    }
    e
}

pub fn k33_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            e.push((i, j));
        }
    }
    e
}

/// Exhaustive search for a K5 or K3,3 subdivision: place branch vertices,
/// then grow internally disjoint connecting paths by backtracking.
pub fn find_kuratowski_subdivision(g: &MetricGraph) -> Option<KuratowskiWitness> {
    for kind in [KuratowskiKind::K5, KuratowskiKind::K33] {
        if let Some(w) = search_subdivision(g, kind) {
            return Some(w);
        }
    }
    None
}

fn search_subdivision(g: &MetricGraph, kind: KuratowskiKind) -> Option<KuratowskiWitness> {
    let n = g.vertex_count();
    let (branch_count, min_degree, target_edges): (usize, usize, Vec<(usize, usize)>) = match kind
    {
        KuratowskiKind::K5 => (5, 4, k5_edges()),
        KuratowskiKind::K33 => (6, 3, k33_edges()),
    };
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= min_degree).collect();
    if candidates.len() < branch_count {
        return None;
    }
    // Adjacency with edge ids; loops are useless for subdivisions.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (u, v, _) = g.edge(e);
        if u == v {
            continue;
        }
        adj[u].push((v, e));
        adj[v].push((u, e));
    }

    let mut assign: Vec<usize> = Vec::new();
    let mut result: Option<KuratowskiWitness> = None;
    assign_branches(
        g,
        &adj,
        &candidates,
        branch_count,
        kind,
        &target_edges,
        &mut assign,
        &mut result,
    );
    result
}

#[allow(clippy::too_many_arguments)]
fn assign_branches(
    g: &MetricGraph,
    adj: &[Vec<(usize, usize)>],
    candidates: &[usize],
    branch_count: usize,
    kind: KuratowskiKind,
    target_edges: &[(usize, usize)],
    assign: &mut Vec<usize>,
    result: &mut Option<KuratowskiWitness>,
) {
    if result.is_some() {
        return;
    }
    if assign.len() == branch_count {
        let mut used_v = vec![false; g.vertex_count()];
        for &b in assign.iter() {
            used_v[b] = true;
        }
        let mut used_e = vec![false; g.edge_count()];
        let mut paths: Vec<Vec<usize>> = Vec::new();
        if place_paths(
            g, adj, assign, target_edges, 0, &mut used_v, &mut used_e, &mut paths,
        ) {
            let mut edges: Vec<usize> = paths.into_iter().flatten().collect();
            edges.sort_unstable();
            edges.dedup();
            *result = Some(KuratowskiWitness {
                kind,
                branch_vertices: assign.clone(),
                edges,
            });
        }
        return;
    }
    for &v in candidates {
        if assign.contains(&v) {
            continue;
        }
        // Symmetry breaking: K5 branch tuples ascending; K3,3 ascending
        // within each side and the first side starts lower.
        match kind {
            KuratowskiKind::K5 => {
                if let Some(&last) = assign.last() {
                    if v <= last {
                        continue;
                    }
                }
            }
            KuratowskiKind::K33 => {
                let pos = assign.len();
                if pos != 3 {
                    if let Some(&last) = assign.last() {
                        if pos != 0 && v <= last {
                            continue;
                        }
                    }
                }
                if pos == 3 && v <= assign[0] {
                    continue;
                }
                if pos > 3 {
                    if let Some(&last) = assign.last() {
                        if v <= last {
                            continue;
                        }
                    }
                }
            }
        }
        assign.push(v);
        assign_branches(
            g, adj, candidates, branch_count, kind, target_edges, assign, result,
        );
        assign.pop();
        if result.is_some() {
            return;
        }
    }
}

/// Places internally disjoint paths for the remaining target edges.
#[allow(clippy::too_many_arguments)]
fn place_paths(
    g: &MetricGraph,
    adj: &[Vec<(usize, usize)>],
    branches: &[usize],
    target_edges: &[(usize, usize)],
    idx: usize,
    used_v: &mut Vec<bool>,
    used_e: &mut Vec<bool>,
    paths: &mut Vec<Vec<usize>>,
) -> bool {
    if idx == target_edges.len() {
        return true;
    }
    let (ta, tb) = target_edges[idx];
    let (a, b) = (branches[ta], branches[tb]);
    let mut path_vertices: Vec<usize> = Vec::new();
    let mut path_edges: Vec<usize> = Vec::new();
    dfs_path(
        g, adj, branches, target_edges, idx, a, b, a, used_v, used_e, &mut path_vertices,
        &mut path_edges, paths,
    )
}

/// Depth-first enumeration of simple paths from `cur` to `b` whose interior
/// vertices are unused non-branch vertices; on reaching `b`, recurses into
/// the next target edge.
#[allow(clippy::too_many_arguments)]
fn dfs_path(
    g: &MetricGraph,
    adj: &[Vec<(usize, usize)>],
    branches: &[usize],
    target_edges: &[(usize, usize)],
    idx: usize,
    a: usize,
    b: usize,
    cur: usize,
    used_v: &mut Vec<bool>,
    used_e: &mut Vec<bool>,
    path_vertices: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    paths: &mut Vec<Vec<usize>>,
) -> bool {
    for &(next, e) in &adj[cur] {
        if used_e[e] {
            continue;
        }
        if next == b {
            used_e[e] = true;
            path_edges.push(e);
            paths.push(path_edges.clone());
            if place_paths(g, adj, branches, target_edges, idx + 1, used_v, used_e, paths) {
                return true;
            }
            paths.pop();
            path_edges.pop();
            used_e[e] = false;
            continue;
        }
        if used_v[next] || branches.contains(&next) {
            continue;
        }
        used_v[next] = true;
        used_e[e] = true;
        path_vertices.push(next);
        path_edges.push(e);
        if dfs_path(
            g, adj, branches, target_edges, idx, a, b, next, used_v, used_e, path_vertices,
            path_edges, paths,
        ) {
            return true;
        }
        path_edges.pop();
        path_vertices.pop();
        used_e[e] = false;
        used_v[next] = false;
    }
    false
}
