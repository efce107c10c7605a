//! Independent exact references at desk scale: LP vertex enumeration,
//! Hopcroft-Karp, brute-force densest subgraph, half-integral vertex
//! cover, and an isomorphism-free enumeration of small connected
//! graphs. These back the acceptance suite and the `oracle` CLI
//! subcommand; size bounds are hard refusals.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::MixedInstance;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
}

/// Small dense LP for vertex enumeration. Nonnegativity of the
/// variables is implicit and treated as additional constraints.
#[derive(Debug, Clone)]
pub struct DenseLp {
    pub rows: Vec<Vec<f64>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<f64>,
    pub objective: Vec<f64>,
    pub minimize: bool,
}

const LP_MAX_DIM: usize = 24;
const LP_MAX_BASES: u128 = 40_000_000;
const FEAS_TOL: f64 = 1e-9;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Exact optimum by enumerating basic solutions: every subset of n
/// constraints (original rows plus nonnegativity) that is nonsingular
/// yields a candidate vertex, which is kept when it satisfies all
/// constraints. Auditable at tiny scale, no pivoting subtleties.
pub fn lp_vertex_enumeration(lp: &DenseLp) -> Result<f64> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    if n == 0 || n > LP_MAX_DIM || m > LP_MAX_DIM {
        return Err(Error::SizeBound(format!(
            "vertex enumeration handles up to {LP_MAX_DIM} rows and columns, got {m} x {n}"
        )));
    }
    for row in &lp.rows {
        if row.len() != n {
            return Err(Error::Dimension("ragged LP row".into()));
        }
    }
    let total = m + n;
    if binomial(total, n) > LP_MAX_BASES {
        return Err(Error::SizeBound(format!(
            "C({total}, {n}) basic solutions exceed the enumeration budget"
        )));
    }

    // rows 0..m are the LP rows; rows m..m+n are x_i >= 0
    let coeff = |r: usize, c: usize| -> f64 {
        if r < m {
            lp.rows[r][c]
        } else if r - m == c {
            1.0
        } else {
            0.0
        }
    };
    let rhs = |r: usize| -> f64 {
        if r < m {
            lp.rhs[r]
        } else {
            0.0
        }
    };

    let eval = |combo: &[usize]| -> Option<f64> {
        let mut a = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        for (k, &r) in combo.iter().enumerate() {
            for c in 0..n {
                a[k][c] = coeff(r, c);
            }
            b[k] = rhs(r);
        }
        let x = solve_square(&mut a, &mut b)?;
        // feasibility of the candidate vertex
        for (r, row) in lp.rows.iter().enumerate() {
            let lhs: f64 = row.iter().zip(&x).map(|(a, b)| a * b).sum();
            let scale = 1.0 + lp.rhs[r].abs();
            match lp.senses[r] {
                Sense::Le if lhs > lp.rhs[r] + FEAS_TOL * scale => return None,
                Sense::Ge if lhs < lp.rhs[r] - FEAS_TOL * scale => return None,
                _ => {}
            }
        }
        if x.iter().any(|&v| v < -FEAS_TOL) {
            return None;
        }
        Some(lp.objective.iter().zip(&x).map(|(a, b)| a * b).sum())
    };
    let pick = |a: f64, b: f64| if lp.minimize { a.min(b) } else { a.max(b) };

    // stream combinations in batches to keep memory flat
    const BATCH: usize = 1 << 15;
    let mut best: Option<f64> = None;
    let mut combo: Vec<usize> = (0..n).collect();
    let mut batch: Vec<Vec<usize>> = Vec::with_capacity(BATCH);
    let mut done = false;
    while !done {
        batch.clear();
        while batch.len() < BATCH {
            batch.push(combo.clone());
            if !next_combination(&mut combo, total) {
                done = true;
                break;
            }
        }
        let local = batch.par_iter().filter_map(|c| eval(c)).reduce_with(pick);
        best = match (best, local) {
            (Some(a), Some(b)) => Some(pick(a, b)),
            (a, b) => a.or(b),
        };
    }
    best.ok_or(Error::OracleInfeasible)
}

/// Advance to the next k-combination of 0..total; false when exhausted.
fn next_combination(combo: &mut [usize], total: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if combo[i] != i + total - k {
            break;
        }
        if i == 0 {
            return false;
        }
    }
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// Gaussian elimination with partial pivoting; `None` on singularity.
fn solve_square(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let (pivot_row, pivot_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if pivot_val < 1e-10 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut v = b[col];
        for c in col + 1..n {
            v -= a[col][c] * x[c];
        }
        x[col] = v / a[col][col];
    }
    Some(x)
}

/// Exact matching LP `max <1, x> s.t. Mx <= 1, x >= 0` in dense form.
pub fn matching_lp(g: &Graph) -> DenseLp {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut rows = vec![vec![0.0; m]; n];
    for (e, &(r, c)) in g.edges().iter().enumerate() {
        rows[r as usize][e] = 1.0;
        rows[c as usize][e] = 1.0;
    }
    DenseLp {
        rows,
        senses: vec![Sense::Le; n],
        rhs: vec![1.0; n],
        objective: vec![1.0; m],
        minimize: false,
    }
}

/// Exact vertex cover LP `min <1, x> s.t. M'x >= 1, x >= 0`.
pub fn vcover_lp(g: &Graph) -> DenseLp {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut rows = vec![vec![0.0; n]; m];
    for (e, &(r, c)) in g.edges().iter().enumerate() {
        rows[e][r as usize] = 1.0;
        rows[e][c as usize] = 1.0;
    }
    DenseLp {
        rows,
        senses: vec![Sense::Ge; m],
        rhs: vec![1.0; m],
        objective: vec![1.0; n],
        minimize: true,
    }
}

/// Exact dominating set LP `min <1, x> s.t. (I + A)x >= 1, x >= 0`.
pub fn domset_lp(g: &Graph) -> DenseLp {
    let n = g.vertex_count();
    let mut rows = vec![vec![0.0; n]; n];
    for v in 0..n {
        rows[v][v] = 1.0;
    }
    for &(r, c) in g.edges() {
        rows[r as usize][c as usize] = 1.0;
        rows[c as usize][r as usize] = 1.0;
    }
    DenseLp {
        rows,
        senses: vec![Sense::Ge; n],
        rhs: vec![1.0; n],
        objective: vec![1.0; n],
        minimize: true,
    }
}

/// Maximum bipartite matching cardinality via Hopcroft-Karp.
pub fn hopcroft_karp(g: &Graph) -> Result<usize> {
    let n_left = g
        .bipartition()
        .ok_or_else(|| Error::Graph("hopcroft_karp expects a bipartite graph".into()))?;
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_left];
    for &(r, c) in g.edges() {
        adj[r as usize].push(c as usize - n_left);
    }
    let n_right = n - n_left;
    let mut match_left = vec![usize::MAX; n_left];
    let mut match_right = vec![usize::MAX; n_right];
    let mut dist = vec![u32::MAX; n_left];
    let mut total = 0;
    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_left[u] == usize::MAX {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_right[v];
                if w == usize::MAX {
                    found = true;
                } else if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        fn try_augment(
            u: usize,
            adj: &[Vec<usize>],
            match_left: &mut [usize],
            match_right: &mut [usize],
            dist: &mut [u32],
        ) -> bool {
            for i in 0..adj[u].len() {
                let v = adj[u][i];
                let w = match_right[v];
                if w == usize::MAX
                    || (dist[w] == dist[u] + 1
                        && try_augment(w, adj, match_left, match_right, dist))
                {
                    match_left[u] = v;
                    match_right[v] = u;
                    return true;
                }
            }
            dist[u] = u32::MAX;
            false
        }
        for u in 0..n_left {
            if match_left[u] == usize::MAX
                && dist[u] == 0
                && try_augment(u, &adj, &mut match_left, &mut match_right, &mut dist)
            {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// Plain augmenting-path maximum matching, the independent cross-check
/// for [`hopcroft_karp`].
pub fn max_matching_augmenting(g: &Graph) -> Result<usize> {
    let n_left = g
        .bipartition()
        .ok_or_else(|| Error::Graph("expects a bipartite graph".into()))?;
    let n_right = g.vertex_count() - n_left;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_left];
    for &(r, c) in g.edges() {
        adj[r as usize].push(c as usize - n_left);
    }
    let mut match_right = vec![usize::MAX; n_right];
    fn dfs(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [usize]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if match_right[v] == usize::MAX || dfs(match_right[v], adj, seen, match_right) {
                    match_right[v] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut total = 0;
    for u in 0..n_left {
        let mut seen = vec![false; n_right];
        if dfs(u, &adj, &mut seen, &mut match_right) {
            total += 1;
        }
    }
    Ok(total)
}

/// Maximum subgraph density `|E(S)| / |S|` by exhausting vertex subsets.
pub fn brute_densest(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n > 15 {
        return Err(Error::SizeBound(format!(
            "brute densest handles up to 15 vertices, got {n}"
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph("densest subgraph needs edges".into()));
    }
    let edge_masks: Vec<u32> = g
        .edges()
        .iter()
        .map(|&(r, c)| (1u32 << r) | (1u32 << c))
        .collect();
    let mut best = 0.0f64;
    for s in 1u32..(1 << n) {
        let inside = edge_masks.iter().filter(|&&em| em & s == em).count();
        let density = inside as f64 / s.count_ones() as f64;
        if density > best {
            best = density;
        }
    }
    Ok(best)
}

/// Exact vertex cover LP optimum using half-integrality: the optimum is
/// attained on `{0, 1/2, 1}^n`, which is exhausted directly.
pub fn half_integral_vcover(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n > 14 {
        return Err(Error::SizeBound(format!(
            "half-integral enumeration handles up to 14 vertices, got {n}"
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph("vertex cover needs edges".into()));
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(r, c)| (r as usize, c as usize))
        .collect();
    let total = 3usize.pow(n as u32);
    let best = (0..total)
        .into_par_iter()
        .with_min_len(4096)
        .filter_map(|code| {
            let mut x = [0.0f64; 14];
            let mut rest = code;
            let mut cost = 0.0;
            for xi in x.iter_mut().take(n) {
                *xi = (rest % 3) as f64 * 0.5;
                cost += *xi;
                rest /= 3;
            }
            for &(u, v) in &edges {
                if x[u] + x[v] < 1.0 {
                    return None;
                }
            }
            Some(cost)
        })
        .reduce_with(f64::min);
    best.ok_or(Error::OracleInfeasible)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_packing: f64,
    pub min_covering: f64,
    pub packing_ok: bool,
    pub covering_ok: bool,
    pub pass: bool,
}

/// Check a solution against the `(1+eps)`-relative contract at 1e-9
/// tolerance.
pub fn verify_solution(inst: &MixedInstance, x: &[f64], eps: f64) -> Result<VerifyReport> {
    if x.len() != inst.cols() {
        return Err(Error::Dimension(format!(
            "solution has {} entries, instance wants {}",
            x.len(),
            inst.cols()
        )));
    }
    let mut yp = vec![0.0; inst.packing_rows()];
    inst.packing().apply(x, &mut yp);
    let mut yc = vec![0.0; inst.covering_rows()];
    inst.covering().apply(x, &mut yc);
    let max_packing = yp.iter().copied().fold(0.0f64, f64::max);
    let min_covering = yc.iter().copied().fold(f64::INFINITY, f64::min);
    let packing_ok = max_packing <= (1.0 + eps) + FEAS_TOL;
    let covering_ok = min_covering >= 1.0 - FEAS_TOL;
    Ok(VerifyReport {
        max_packing,
        min_covering,
        packing_ok,
        covering_ok,
        pass: packing_ok && covering_ok,
    })
}

// --- enumeration of connected graphs up to isomorphism ---

/// Pair (i, j) with i < j maps to bit C(j, 2) + i, so vertices 0..k
/// occupy a prefix of the bits and adding vertex k appends a block.
fn pair_bit(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Decode a mask into a graph on `n` vertices.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("mask encodes clean edges")
}

/// Canonical form: minimum edge mask over all vertex relabelings that
/// respect a degree-refinement partition. Refinement labels are
/// isomorphism-invariant, so restricting to partition-respecting
/// permutations preserves canonicity while pruning the search.
fn canonical_mask(n: usize, mask: u64) -> u64 {
    let mut adj = vec![Vec::new(); n];
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    // iterated neighborhood-label refinement
    let mut labels: Vec<u64> = adj.iter().map(|a| a.len() as u64).collect();
    for _ in 0..n {
        let mut keys: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = adj[v].iter().map(|&u| labels[u]).collect();
                nb.sort_unstable();
                (labels[v], nb)
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u64> = keys
            .drain(..)
            .map(|k| sorted.binary_search(&k).unwrap() as u64)
            .collect();
        if next == labels {
            break;
        }
        labels = next;
    }

    // vertices grouped by label; positions assigned class by class
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| labels[v]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(cl) if labels[cl[0]] == labels[v] => cl.push(v),
            _ => classes.push(vec![v]),
        }
    }

    let mut walk = ClassWalk {
        classes: &classes,
        adj: &adj,
        perm: vec![0; n], // vertex -> position
        best: u64::MAX,
    };
    walk.descend(0, 0);
    walk.best
}

/// Enumerates the class-respecting permutations and tracks the minimum
/// relabeled mask.
struct ClassWalk<'a> {
    classes: &'a [Vec<usize>],
    adj: &'a [Vec<usize>],
    perm: Vec<usize>,
    best: u64,
}

impl ClassWalk<'_> {
    fn descend(&mut self, ci: usize, next_pos: usize) {
        if ci == self.classes.len() {
            let mut m = 0u64;
            for (v, nb) in self.adj.iter().enumerate() {
                for &u in nb {
                    if u > v {
                        let (a, b) = (
                            self.perm[v].min(self.perm[u]),
                            self.perm[v].max(self.perm[u]),
                        );
                        m |= 1 << pair_bit(a, b);
                    }
                }
            }
            if m < self.best {
                self.best = m;
            }
            return;
        }
        self.arrange(ci, next_pos, 0, 0);
    }

    /// Place the vertices of class `ci` over its position block in every
    /// order.
    fn arrange(&mut self, ci: usize, base: usize, slot: usize, taken: u64) {
        let cl = &self.classes[ci];
        if slot == cl.len() {
            self.descend(ci + 1, base + cl.len());
            return;
        }
        for k in 0..cl.len() {
            if taken >> k & 1 == 0 {
                self.perm[self.classes[ci][k]] = base + slot;
                self.arrange(ci, base, slot + 1, taken | 1 << k);
            }
        }
    }
}

/// All connected graphs on exactly `n` vertices, one canonical edge mask
/// per isomorphism class. Built by extending every (n-1)-vertex class
/// with a new vertex attached to each nonempty neighborhood; every
/// connected graph contains a non-cut vertex, so the recursion is
/// complete.
pub fn connected_graph_masks(n: usize) -> Result<Vec<u64>> {
    if n == 0 || n > 9 {
        return Err(Error::SizeBound(format!(
            "connected enumeration handles 1..=9 vertices, got {n}"
        )));
    }
    let mut reps: Vec<u64> = vec![0]; // the single 1-vertex graph
    for k in 2..=n {
        let base = pair_bit(0, k - 1); // first bit of the new block
        let candidates: Vec<u64> = reps
            .par_iter()
            .flat_map_iter(|&rep| (1u64..(1 << (k - 1))).map(move |nbhd| rep | (nbhd << base)))
            .map(|mask| canonical_mask(k, mask))
            .collect();
        let mut dedup = candidates;
        dedup.par_sort_unstable();
        dedup.dedup();
        reps = dedup;
    }
    Ok(reps)
}

/// Convenience: decoded connected graphs on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_graph_masks(n)?
        .into_iter()
        .map(|m| graph_from_mask(n, m))
        .collect())
}
