//! Ribbon graphs, their orientations, and the graph diagonal.
//!
//! A graph on half-edges `0..2E` is a pair of permutations: `nu` sends a
//! half-edge to the next one around its vertex, `iota` to the other half of
//! its edge. Vertices and edges are numbered by their least half-edge.
//!
//! An untwisted orientation is a sign against `⟨v_0 … v_{V-1} h_0 … h_{2E-1}⟩`.
//! A twisted orientation lives in `det E` and is a sign against `e_0 ∧ … ∧ e_{E-1}`.

use crate::chain::Chain;
use crate::diagonal::Diagonal;
use crate::error::{Error, Result};
use crate::linalg::Eliminator;
use crate::rational::{index_perm_sign, pm, sign_q, Q};
use crate::tensor::{tensor_compose, Pair, PairChain};
use crate::tree::{all_trees, root_decomposition, tree_boundary, Node, PlanarTree};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    Untwisted,
    Twisted,
}

impl Twist {
    pub fn from_parity(eps: usize) -> Twist {
        if eps % 2 == 0 {
            Twist::Untwisted
        } else {
            Twist::Twisted
        }
    }

    pub fn parity(self) -> usize {
        match self {
            Twist::Untwisted => 0,
            Twist::Twisted => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RibbonGraph {
    nu: Vec<usize>,
    iota: Vec<usize>,
}

pub type GraphChain = Chain<RibbonGraph>;
pub type GraphPair = (RibbonGraph, RibbonGraph);
pub type GraphPairChain = Chain<GraphPair>;

/// Orientation symbols: vertex index, half-edge index, cycle index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    V(usize),
    H(usize),
    S(usize),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::V(i) => write!(f, "v{i}"),
            Sym::H(i) => write!(f, "h{i}"),
            Sym::S(i) => write!(f, "s{i}"),
        }
    }
}

impl std::str::FromStr for Sym {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sym> {
        let bad = || Error::Parse(format!("bad orientation symbol {s:?}"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let i: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "v" => Ok(Sym::V(i)),
            "h" => Ok(Sym::H(i)),
            "s" => Ok(Sym::S(i)),
            _ => Err(bad()),
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl RibbonGraph {
    pub fn new(nu: Vec<usize>, iota: Vec<usize>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidGraph(m.to_string()));
        if nu.len() != iota.len() || nu.is_empty() || nu.len() % 2 != 0 {
            return bad("need an even, positive number of half-edges");
        }
        if !is_permutation(&nu) || !is_permutation(&iota) {
            return bad("nu and iota must be permutations");
        }
        if (0..iota.len()).any(|h| iota[h] == h || iota[iota[h]] != h) {
            return bad("iota must be a fixed-point-free involution");
        }
        let g = RibbonGraph { nu, iota };
        if g.valencies().iter().any(|&v| v < 3) {
            return bad("every vertex needs valency at least 3");
        }
        let mut seen = vec![false; g.half_edges()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(h) = stack.pop() {
            for x in [g.nu[h], g.iota[h]] {
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("graph is disconnected");
        }
        Ok(g)
    }

    /// From vertex cycles (cyclic orders) and edge pairs.
    pub fn from_cycles(vertices: &[Vec<usize>], edges: &[(usize, usize)]) -> Result<Self> {
        let n = 2 * edges.len();
        let mut nu = vec![usize::MAX; n];
        let mut iota = vec![usize::MAX; n];
        for cyc in vertices {
            for (k, &h) in cyc.iter().enumerate() {
                if h >= n || nu[h] != usize::MAX {
                    return Err(Error::InvalidGraph(format!("half-edge {h} misplaced")));
                }
                nu[h] = cyc[(k + 1) % cyc.len()];
            }
        }
        for &(a, b) in edges {
            if a >= n || b >= n || iota[a] != usize::MAX || iota[b] != usize::MAX {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) misplaced")));
            }
            iota[a] = b;
            iota[b] = a;
        }
        if nu.contains(&usize::MAX) || iota.contains(&usize::MAX) {
            return Err(Error::InvalidGraph("some half-edge is unused".into()));
        }
        Self::new(nu, iota)
    }

    pub fn half_edges(&self) -> usize {
        self.nu.len()
    }

    pub fn num_edges(&self) -> usize {
        self.nu.len() / 2
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn iota(&self) -> &[usize] {
        &self.iota
    }

    /// Cyclic orders, each starting at its least half-edge, in order of that half-edge.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.half_edges()];
        let mut out = Vec::new();
        for h in 0..self.half_edges() {
            if seen[h] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.nu[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.half_edges()];
        for (i, cyc) in self.vertices().iter().enumerate() {
            for &h in cyc {
                out[h] = i;
            }
        }
        out
    }

    pub fn valencies(&self) -> Vec<usize> {
        self.vertices().iter().map(Vec::len).collect()
    }

    /// Edges as `(lo, hi)` half-edge pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.half_edges())
            .filter(|&h| h < self.iota[h])
            .map(|h| (h, self.iota[h]))
            .collect()
    }

    pub fn edge_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.half_edges()];
        for (k, (a, b)) in self.edges().into_iter().enumerate() {
            out[a] = k;
            out[b] = k;
        }
        out
    }

    /// `Σ (val(v) − 3)`.
    pub fn degree(&self) -> usize {
        self.half_edges() - 3 * self.num_vertices()
    }

    /// Orbits of `nu ∘ iota`.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.half_edges()];
        let mut out = Vec::new();
        for h in 0..self.half_edges() {
            if seen[h] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.nu[self.iota[x]];
            }
            out.push(cyc);
        }
        out
    }

    /// `(g, n)` from `V − E + n = 2 − 2g`.
    pub fn genus_and_boundaries(&self) -> (usize, usize) {
        let n = self.boundary_cycles().len() as i64;
        let chi = self.num_vertices() as i64 - self.num_edges() as i64;
        (((2 - chi - n) / 2) as usize, n as usize)
    }

    /// Rank of `H_1`.
    pub fn loops(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices()
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (a, b) = self.edges()[edge];
        let v = self.vertex_of();
        v[a] == v[b]
    }

    /// The same graph with half-edge `h` renamed `label[h]`.
    pub fn relabel(&self, label: &[usize]) -> RibbonGraph {
        let n = self.half_edges();
        let mut nu = vec![0; n];
        let mut iota = vec![0; n];
        for h in 0..n {
            nu[label[h]] = label[self.nu[h]];
            iota[label[h]] = label[self.iota[h]];
        }
        RibbonGraph { nu, iota }
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in self.vertices() {
            let s: Vec<String> = cyc.iter().map(usize::to_string).collect();
            write!(f, "({})", s.join(" "))?;
        }
        let e: Vec<String> = self
            .edges()
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, " [{}]", e.join(" "))
    }
}

impl fmt::Debug for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Two trivalent vertices joined by three edges, planar.
pub fn theta() -> RibbonGraph {
    RibbonGraph::from_cycles(&[vec![0, 1, 2], vec![3, 4, 5]], &[(0, 3), (1, 5), (2, 4)]).unwrap()
}

/// Two loop-vertices joined by a bridge.
pub fn dumbbell() -> RibbonGraph {
    RibbonGraph::from_cycles(&[vec![0, 1, 2], vec![3, 4, 5]], &[(0, 1), (3, 4), (2, 5)]).unwrap()
}

/// One four-valent vertex with two adjacent loops: genus 0, three boundaries.
pub fn figure_eight() -> RibbonGraph {
    RibbonGraph::from_cycles(&[vec![0, 1, 2, 3]], &[(0, 1), (2, 3)]).unwrap()
}

/// One four-valent vertex with two interleaved loops: genus 1, one boundary.
pub fn torus_figure_eight() -> RibbonGraph {
    RibbonGraph::from_cycles(&[vec![0, 1, 2, 3]], &[(0, 2), (1, 3)]).unwrap()
}

/// One vertex of valency `2k` with the given loop pairing.
pub fn rose(pairs: &[(usize, usize)]) -> Result<RibbonGraph> {
    RibbonGraph::from_cycles(&[(0..2 * pairs.len()).collect()], pairs)
}

/// Sign of an untwisted symbol sequence against the standard order.
pub fn sequence_sign(g: &RibbonGraph, seq: &[Sym]) -> Result<i32> {
    let nv = g.num_vertices();
    let idx: Vec<usize> = seq
        .iter()
        .map(|s| match *s {
            Sym::V(i) if i < nv => Ok(i),
            Sym::H(h) if h < g.half_edges() => Ok(nv + h),
            _ => Err(Error::InvalidGraph(format!(
                "symbol {s} does not belong to the graph"
            ))),
        })
        .collect::<Result<_>>()?;
    if idx.len() != nv + g.half_edges() || !is_permutation(&idx) {
        return Err(Error::InvalidGraph(
            "orientation must list every vertex and half-edge once".into(),
        ));
    }
    Ok(index_perm_sign(&idx))
}

/// Standard untwisted symbol order.
pub fn standard_symbols(g: &RibbonGraph) -> Vec<Sym> {
    (0..g.num_vertices())
        .map(Sym::V)
        .chain((0..g.half_edges()).map(Sym::H))
        .collect()
}

// ---------------------------------------------------------------------------
// canonical forms

fn bfs_labeling(g: &RibbonGraph, start: usize) -> Vec<usize> {
    let n = g.half_edges();
    let mut label = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    label[start] = 0;
    let mut next = 1;
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for y in [g.nu[x], g.iota[x]] {
            if label[y] == usize::MAX {
                label[y] = next;
                next += 1;
                queue.push_back(y);
            }
        }
    }
    label
}

/// The least relabeling over all starting half-edges, with every labeling attaining it.
pub fn canonical_labelings(g: &RibbonGraph) -> (RibbonGraph, Vec<Vec<usize>>) {
    let mut best: Option<RibbonGraph> = None;
    let mut labels = Vec::new();
    for start in 0..g.half_edges() {
        let l = bfs_labeling(g, start);
        let h = g.relabel(&l);
        match &best {
            Some(b) if h > *b => {}
            Some(b) if h == *b => labels.push(l),
            _ => {
                best = Some(h);
                labels = vec![l];
            }
        }
    }
    (best.expect("graphs have half-edges"), labels)
}

/// Sign `s` with `label_*(standard orientation of g) = s · standard orientation of g.relabel(label)`.
pub fn transport_sign(g: &RibbonGraph, twist: Twist, label: &[usize]) -> i32 {
    let h = g.relabel(label);
    match twist {
        Twist::Untwisted => {
            let vh = h.vertex_of();
            let nv = g.num_vertices();
            let mut idx: Vec<usize> = g.vertices().iter().map(|c| vh[label[c[0]]]).collect();
            idx.extend((0..g.half_edges()).map(|x| nv + label[x]));
            index_perm_sign(&idx)
        }
        Twist::Twisted => {
            let eh = h.edge_of();
            let idx: Vec<usize> = g.edges().iter().map(|&(a, _)| eh[label[a]]).collect();
            index_perm_sign(&idx)
        }
    }
}

/// Automorphisms of `g` as half-edge permutations.
pub fn automorphisms(g: &RibbonGraph) -> Vec<Vec<usize>> {
    let (_, labels) = canonical_labelings(g);
    let first = &labels[0];
    let mut inv = vec![0; first.len()];
    for (h, &l) in first.iter().enumerate() {
        inv[l] = h;
    }
    labels
        .iter()
        .map(|l| (0..l.len()).map(|h| inv[l[h]]).collect())
        .collect()
}

/// Canonical representative of `(g, sign · standard)`, or `None` when an automorphism reverses it.
pub fn canonicalize(g: &RibbonGraph, twist: Twist, sign: i32) -> Option<(RibbonGraph, i32)> {
    let (c, labels) = canonical_labelings(g);
    let s0 = transport_sign(g, twist, &labels[0]);
    if labels[1..]
        .iter()
        .any(|l| transport_sign(g, twist, l) != s0)
    {
        return None;
    }
    Some((c, sign * s0))
}

pub fn oriented(g: &RibbonGraph, twist: Twist, sign: i32) -> GraphChain {
    match canonicalize(g, twist, sign) {
        Some((c, s)) => Chain::single(c, sign_q(s)),
        None => Chain::zero(),
    }
}

// ---------------------------------------------------------------------------
// contraction and expansion

/// Split a vertex: `v⁻` gets `minus` then `e⁻`, `v⁺` gets `e⁺` then `plus`.
/// `minus ++ plus` must be the vertex's cyclic order up to rotation.
/// Returns the new graph, its orientation sign, and `(e⁻, e⁺) = (2E, 2E+1)`.
pub fn expand(
    g: &RibbonGraph,
    twist: Twist,
    sign: i32,
    minus: &[usize],
    plus: &[usize],
) -> (RibbonGraph, i32) {
    let n = g.half_edges();
    let (em, ep) = (n, n + 1);
    let mut nu = g.nu.clone();
    let mut iota = g.iota.clone();
    nu.extend([minus[0], plus[0]]);
    iota.extend([ep, em]);
    nu[*minus.last().unwrap()] = em;
    nu[*plus.last().unwrap()] = ep;
    let h = RibbonGraph { nu, iota };
    let s = match twist {
        Twist::Untwisted => {
            let vg = g.vertex_of();
            let v = vg[minus[0]];
            let vh = h.vertex_of();
            let nv = h.num_vertices();
            let mut idx = vec![vh[em], vh[ep], nv + em, nv + ep];
            idx.extend(
                g.vertices()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != v)
                    .map(|(_, c)| vh[c[0]]),
            );
            idx.extend((0..n).map(|x| nv + x));
            pm(v) * index_perm_sign(&idx)
        }
        Twist::Twisted => {
            let eh = h.edge_of();
            let mut idx = vec![eh[em]];
            idx.extend(g.edges().iter().map(|&(a, _)| eh[a]));
            index_perm_sign(&idx)
        }
    };
    (h, sign * s)
}

/// Every expansion of `(g, sign)` at vertex `v`: `val(val−3)/2` of them.
pub fn expansions_at(
    g: &RibbonGraph,
    twist: Twist,
    sign: i32,
    v: usize,
) -> Vec<(RibbonGraph, i32)> {
    let cyc = &g.vertices()[v];
    let m = cyc.len();
    let mut out = Vec::new();
    for b in 2..m.saturating_sub(1) {
        for j in 1..=m - b {
            let plus: Vec<usize> = cyc[j..j + b].to_vec();
            let minus: Vec<usize> = cyc[j + b..].iter().chain(&cyc[..j]).copied().collect();
            out.push(expand(g, twist, sign, &minus, &plus));
        }
    }
    out
}

pub fn graph_boundary(g: &RibbonGraph, twist: Twist) -> GraphChain {
    let mut out = Chain::zero();
    for v in 0..g.num_vertices() {
        for (h, s) in expansions_at(g, twist, 1, v) {
            if let Some((c, t)) = canonicalize(&h, twist, s) {
                out.add_term(c, sign_q(t));
            }
        }
    }
    out
}

pub fn boundary(x: &GraphChain, twist: Twist) -> GraphChain {
    x.map_linear(|g| graph_boundary(g, twist))
}

/// `(g/e, σ/e)` for the edge with index `edge`.
pub fn contract_edge(
    g: &RibbonGraph,
    twist: Twist,
    sign: i32,
    edge: usize,
) -> Result<(RibbonGraph, i32)> {
    let edges = g.edges();
    let &(a, b) = edges
        .get(edge)
        .ok_or(Error::InvalidGraph(format!("no edge {edge}")))?;
    let vg = g.vertex_of();
    if vg[a] == vg[b] {
        return Err(Error::IsLoop(edge));
    }
    let n = g.half_edges();
    let pred = |x: usize| (0..n).find(|&y| g.nu[y] == x).unwrap();
    let mut nu = g.nu.clone();
    nu[pred(a)] = g.nu[b];
    nu[pred(b)] = g.nu[a];
    let keep: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
    let mut label = vec![usize::MAX; n];
    for (i, &x) in keep.iter().enumerate() {
        label[x] = i;
    }
    let h = RibbonGraph {
        nu: keep.iter().map(|&x| label[nu[x]]).collect(),
        iota: keep.iter().map(|&x| label[g.iota[x]]).collect(),
    };
    let s = match twist {
        Twist::Untwisted => {
            let nv = g.num_vertices();
            let (vm, vp) = (vg[a], vg[b]);
            // σ = ε⟨v⁻ v⁺ e⁻ e⁺ R⟩ with R in standard order
            let mut idx = vec![vm, vp, nv + a, nv + b];
            idx.extend((0..nv).filter(|&i| i != vm && i != vp));
            idx.extend(keep.iter().map(|&x| nv + x));
            let eps = index_perm_sign(&idx);
            let vh = h.vertex_of();
            let hv = h.num_vertices();
            let verts = g.vertices();
            let mut out = vec![vh[label[verts[vm].iter().copied().find(|&x| x != a).unwrap()]]];
            out.extend(
                (0..nv)
                    .filter(|&i| i != vm && i != vp)
                    .map(|i| vh[label[verts[i][0]]]),
            );
            out.extend(keep.iter().map(|&x| hv + label[x]));
            eps * index_perm_sign(&out)
        }
        Twist::Twisted => {
            let eh = h.edge_of();
            let idx: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != edge)
                .map(|(_, &(x, _))| eh[label[x]])
                .collect();
            pm(edge) * index_perm_sign(&idx)
        }
    };
    Ok((h, sign * s))
}

// ---------------------------------------------------------------------------
// markings and the det E identification

/// A vertex order with a root half-edge `e_{i,0}` at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub roots: Vec<usize>,
}

impl Marking {
    /// Vertices in standard order, each rooted at its least half-edge.
    pub fn standard(g: &RibbonGraph) -> Marking {
        Marking {
            roots: g.vertices().iter().map(|c| c[0]).collect(),
        }
    }

    pub fn check(&self, g: &RibbonGraph) -> Result<()> {
        let vg = g.vertex_of();
        let mut vs: Vec<usize> = self
            .roots
            .iter()
            .map(|&r| vg.get(r).copied().unwrap_or(usize::MAX))
            .collect();
        vs.sort_unstable();
        if vs != (0..g.num_vertices()).collect::<Vec<_>>() {
            return Err(Error::InvalidGraph(
                "marking must root every vertex once".into(),
            ));
        }
        Ok(())
    }

    /// `e_{i,0}, e_{i,1}, …, e_{i,n_i}` for each vertex in order.
    pub fn blocks(&self, g: &RibbonGraph) -> Vec<Vec<usize>> {
        self.roots
            .iter()
            .map(|&r| {
                let mut b = vec![r];
                let mut x = g.nu[r];
                while x != r {
                    b.push(x);
                    x = g.nu[x];
                }
                b
            })
            .collect()
    }

    /// `n_i = val(v_i) − 1`.
    pub fn arities(&self, g: &RibbonGraph) -> Vec<usize> {
        self.blocks(g).iter().map(|b| b.len() - 1).collect()
    }

    /// `⟨v_1 e_{1,0} … e_{1,n_1} v_2 …⟩`.
    pub fn symbols(&self, g: &RibbonGraph) -> Vec<Sym> {
        let vg = g.vertex_of();
        let mut out = Vec::new();
        for b in self.blocks(g) {
            out.push(Sym::V(vg[b[0]]));
            out.extend(b.iter().map(|&h| Sym::H(h)));
        }
        out
    }
}

/// BFS spanning tree from vertex 0: `(tree edges, parent edge and parent vertex per vertex)`.
fn spanning_tree(g: &RibbonGraph) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let vg = g.vertex_of();
    let eg = g.edge_of();
    let verts = g.vertices();
    let mut parent = vec![None; verts.len()];
    let mut seen = vec![false; verts.len()];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &h in &verts[u] {
            let w = vg[g.iota[h]];
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((eg[h], u));
                tree.push(eg[h]);
                queue.push_back(w);
            }
        }
    }
    (tree, parent)
}

/// Fundamental cycles of the BFS spanning tree, ordered by their non-tree edge.
/// Coordinates are over edges directed from their lower to their higher half-edge.
pub fn cycle_basis(g: &RibbonGraph) -> Vec<Vec<i64>> {
    let vg = g.vertex_of();
    let edges = g.edges();
    let (tree, parent) = spanning_tree(g);
    let to_root = |mut x: usize| {
        let mut c = vec![0i64; edges.len()];
        while let Some((e, p)) = parent[x] {
            let (lo, hi) = edges[e];
            c[e] += if vg[lo] == x && vg[hi] == p { 1 } else { -1 };
            x = p;
        }
        c
    };
    let tree: BTreeSet<usize> = tree.into_iter().collect();
    let mut out = Vec::new();
    for (k, &(lo, hi)) in edges.iter().enumerate() {
        if tree.contains(&k) {
            continue;
        }
        let mut c = vec![0i64; edges.len()];
        c[k] += 1;
        let up = to_root(vg[hi]);
        let down = to_root(vg[lo]);
        for e in 0..edges.len() {
            c[e] += up[e] - down[e];
        }
        out.push(c);
    }
    out
}

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        let piv = m[col][col].clone();
        d *= &piv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &piv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    d
}

/// Sign `s` with `Φ(⟨seq⟩) = s · e_0 ∧ … ∧ e_{E-1}` under `det E ≅ det V ⊗ det H ⊗ det H_1`,
/// where `S(i)` names the `i`-th vector of [`cycle_basis`].
///
/// The half-edges fix edge directions, the cellular chain complex `C_1 → C_0` turns
/// `s_1 ∧ … ∧ s_n ⊗ v_1 ∧ … ∧ v_V` into a top form of `C_1`, and the factor
/// `(−1)^{V(n−1)}` makes `Φ(⟨v⁺ e⁺ e⁻ X⟩) = e ∧ Φ(⟨v X⟩)` under expansion.
pub fn det_sign(g: &RibbonGraph, seq: &[Sym]) -> Result<i32> {
    let nv = g.num_vertices();
    let ne = g.num_edges();
    let cycles = cycle_basis(g);
    let nl = cycles.len();
    let bad = || {
        Error::InvalidGraph(
            "twisted orientation must list every vertex, half-edge and cycle once".into(),
        )
    };
    if seq.len() != nv + 2 * ne + nl || seq.iter().collect::<BTreeSet<_>>().len() != seq.len() {
        return Err(bad());
    }
    let class = |s: &Sym| match s {
        Sym::V(_) => 0,
        Sym::H(_) => 1,
        Sym::S(_) => 2,
    };
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if class(&seq[i]) > class(&seq[j]) {
                inversions += 1;
            }
        }
    }
    let mut vs = Vec::new();
    let mut hs = Vec::new();
    let mut ss = Vec::new();
    for s in seq {
        match *s {
            Sym::V(i) if i < nv => vs.push(i),
            Sym::H(h) if h < 2 * ne => hs.push(h),
            Sym::S(i) if i < nl => ss.push(i),
            _ => return Err(bad()),
        }
    }
    // pair the half-edges edge by edge, in order of first appearance
    let mut pos = vec![usize::MAX; 2 * ne];
    for (i, &h) in hs.iter().enumerate() {
        pos[h] = i;
    }
    let mut target = Vec::new();
    let mut directions = 1;
    for &h in &hs {
        let o = g.iota[h];
        if pos[o] > pos[h] {
            target.push(pos[h]);
            target.push(pos[o]);
            if h > o {
                directions = -directions;
            }
        }
    }
    let pairing = index_perm_sign(&target);

    let vg = g.vertex_of();
    let edges = g.edges();
    let (tree, _) = spanning_tree(g);
    let mut alpha = vec![vec![Q::zero(); ne]; ne];
    for (c, &i) in ss.iter().enumerate() {
        for e in 0..ne {
            alpha[e][c] = Q::from_integer(cycles[i][e].into());
        }
    }
    for (c, &t) in tree.iter().enumerate() {
        alpha[t][nl + c] = Q::one();
    }
    let mut row = vec![0; nv];
    for (r, &v) in vs.iter().enumerate() {
        row[v] = r;
    }
    let mut beta = vec![vec![Q::zero(); nv]; nv];
    for (c, &t) in tree.iter().enumerate() {
        let (lo, hi) = edges[t];
        beta[row[vg[hi]]][c] += Q::one();
        beta[row[vg[lo]]][c] -= Q::one();
    }
    beta[0][nv - 1] = Q::one();
    let a = det(alpha);
    let b = det(beta);
    debug_assert!(!a.is_zero() && !b.is_zero());
    let s = if a.is_positive() == b.is_positive() {
        1
    } else {
        -1
    };
    Ok(pm(inversions + nv * (nl + 1)) * pairing * directions * s)
}

/// Sign of an orientation given by symbols, against the standard orientation.
pub fn symbols_sign(g: &RibbonGraph, twist: Twist, seq: &[Sym]) -> Result<i32> {
    match twist {
        Twist::Untwisted => sequence_sign(g, seq),
        Twist::Twisted => det_sign(g, seq),
    }
}

/// `A_Γ` or `B_Γ` for the orientation `sign · standard`.
pub fn marking_sign(g: &RibbonGraph, twist: Twist, sign: i32, m: &Marking) -> Result<i32> {
    m.check(g)?;
    let mut seq = m.symbols(g);
    if twist == Twist::Twisted {
        seq.extend((0..g.loops()).map(Sym::S));
    }
    Ok(sign * symbols_sign(g, twist, &seq)?)
}

// ---------------------------------------------------------------------------
// replacing vertices by trees

enum Child {
    Leaf(usize),
    Vertex(usize),
}

/// Children of each vertex, vertices tagged in pre-order, leaves numbered from 1.
fn tree_shape(t: &PlanarTree) -> Vec<Vec<Child>> {
    fn walk(n: &Node, out: &mut Vec<Vec<Child>>, leaf: &mut usize) -> usize {
        let me = out.len();
        out.push(Vec::new());
        if let Node::Vertex(cs) = n {
            for c in cs {
                let child = match c {
                    Node::Leaf => {
                        *leaf += 1;
                        Child::Leaf(*leaf)
                    }
                    Node::Vertex(_) => Child::Vertex(walk(c, out, leaf)),
                };
                out[me].push(child);
            }
        }
        me
    }
    let mut out = Vec::new();
    walk(&t.node(), &mut out, &mut 0);
    out
}

/// `Γ(T_1, …, T_k)` with the orientation whose successive contraction of the tree
/// edges (in order `f_{1,1}, …, f_{k,t_k}`) returns `sign · standard` on `g`.
pub fn graft_trees(
    g: &RibbonGraph,
    twist: Twist,
    sign: i32,
    m: &Marking,
    trees: &[PlanarTree],
) -> Result<(RibbonGraph, i32)> {
    m.check(g)?;
    let blocks = m.blocks(g);
    if trees.len() != blocks.len() {
        return Err(Error::ArityMismatch {
            expected: blocks.len(),
            got: trees.len(),
        });
    }
    let n0 = g.half_edges();
    let mut nu = g.nu.clone();
    let mut iota = g.iota.clone();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for (block, t) in blocks.iter().zip(trees) {
        if t.leaves() != block.len() - 1 {
            return Err(Error::ArityMismatch {
                expected: block.len() - 1,
                got: t.leaves(),
            });
        }
        let shape = tree_shape(t);
        let mut up = vec![usize::MAX; shape.len()];
        let mut down = vec![usize::MAX; shape.len()];
        up[0] = block[0];
        for (tag, children) in shape.iter().enumerate() {
            for c in children {
                if let Child::Vertex(c) = c {
                    down[*c] = nu.len();
                    up[*c] = nu.len() + 1;
                    nu.extend([0, 0]);
                    iota.extend([nu.len() - 1, nu.len() - 2]);
                }
            }
            let mut cyc = vec![up[tag]];
            cyc.extend(children.iter().map(|c| match c {
                Child::Leaf(l) => block[*l],
                Child::Vertex(c) => down[*c],
            }));
            for k in 0..cyc.len() {
                nu[cyc[k]] = cyc[(k + 1) % cyc.len()];
            }
        }
        tree_edges.extend((1..shape.len()).map(|c| (down[c], up[c])));
    }
    let h = RibbonGraph { nu, iota };
    let s = match twist {
        Twist::Untwisted => {
            let vh = h.vertex_of();
            #[derive(Clone, Copy, PartialEq)]
            enum Item {
                Vert(usize),
                Half(usize),
            }
            let vg = g.vertex_of();
            let mut root_of = vec![0; g.num_vertices()];
            for b in &blocks {
                root_of[vg[b[0]]] = b[0];
            }
            let mut items: Vec<Item> = (0..g.num_vertices())
                .map(|i| Item::Vert(vh[root_of[i]]))
                .collect();
            items.extend((0..n0).map(Item::Half));
            let mut s = 1;
            for k in (0..tree_edges.len()).rev() {
                let mut uf: Vec<usize> = (0..h.num_vertices()).collect();
                fn find(uf: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while uf[r] != r {
                        r = uf[r];
                    }
                    uf[x] = r;
                    r
                }
                for &(a, b) in &tree_edges[..=k] {
                    let (ra, rb) = (find(&mut uf, vh[a]), find(&mut uf, vh[b]));
                    uf[ra] = rb;
                }
                let (a, b) = tree_edges[k];
                let target = find(&mut uf, vh[a]);
                let p = items
                    .iter()
                    .position(|it| matches!(it, Item::Vert(x) if find(&mut uf, *x) == target))
                    .expect("each cluster is listed once");
                s *= pm(p);
                items.remove(p);
                items.splice(
                    0..0,
                    [
                        Item::Vert(vh[a]),
                        Item::Vert(vh[b]),
                        Item::Half(a),
                        Item::Half(b),
                    ],
                );
            }
            let nv = h.num_vertices();
            let idx: Vec<usize> = items
                .iter()
                .map(|it| match *it {
                    Item::Vert(x) => x,
                    Item::Half(x) => nv + x,
                })
                .collect();
            s * index_perm_sign(&idx)
        }
        Twist::Twisted => {
            let eh = h.edge_of();
            let mut idx: Vec<usize> = tree_edges.iter().map(|&(a, _)| eh[a]).collect();
            idx.extend(g.edges().iter().map(|&(a, _)| eh[a]));
            index_perm_sign(&idx)
        }
    };
    Ok((h, sign * s))
}

/// `φ_Γ` (untwisted) or `ψ_Γ` (twisted) on a tensor of oriented trees:
/// `(−1)^{|Γ|} A_Γ (−1)^{Σ_{i<j} n_i t_j} Γ(T_1, …, T_k)`.
pub fn phi(
    g: &RibbonGraph,
    twist: Twist,
    m: &Marking,
    trees: &[(PlanarTree, i32)],
) -> Result<GraphChain> {
    let ts: Vec<PlanarTree> = trees.iter().map(|(t, _)| t.clone()).collect();
    let (h, s) = graft_trees(g, twist, 1, m, &ts)?;
    let ns = m.arities(g);
    let mut e = g.degree();
    for j in 0..ts.len() {
        for i in 0..j {
            e += ns[i] * ts[j].internal_edges();
        }
    }
    let sign =
        s * pm(e) * marking_sign(g, twist, 1, m)? * trees.iter().map(|(_, s)| *s).product::<i32>();
    Ok(oriented(&h, twist, sign))
}

/// All tree tuples indexing `C_*(K(n_1)) ⊗ … ⊗ C_*(K(n_k))`.
pub fn tree_tuples(g: &RibbonGraph, m: &Marking) -> Vec<Vec<PlanarTree>> {
    let mut out = vec![Vec::new()];
    for n in m.arities(g) {
        let ts = all_trees(n);
        out = out
            .into_iter()
            .flat_map(|pre| {
                ts.iter().map(move |t| {
                    let mut v = pre.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// `|T_1 ⊗ … ⊗ T_k|`.
pub fn tuple_degree(ts: &[PlanarTree]) -> usize {
    ts.iter().map(PlanarTree::degree).sum()
}

/// Koszul boundary on a tensor of trees.
pub fn tuple_boundary(ts: &[PlanarTree]) -> Vec<(Vec<PlanarTree>, Q)> {
    let mut out = Vec::new();
    let mut before = 0;
    for m in 0..ts.len() {
        for (u, c) in tree_boundary(&ts[m]).iter() {
            let mut v = ts.to_vec();
            v[m] = u.clone();
            out.push((v, c * sign_q(pm(before))));
        }
        before += ts[m].degree();
    }
    out
}

/// Basis of `𝒢_*(Γ)` by degree: the nonzero canonical graphs `Γ(T_1, …, T_k)`.
pub fn generate_subcomplex(g: &RibbonGraph, twist: Twist) -> BTreeMap<usize, Vec<RibbonGraph>> {
    let m = Marking::standard(g);
    let mut found: BTreeMap<usize, BTreeSet<RibbonGraph>> = BTreeMap::new();
    for ts in tree_tuples(g, &m) {
        let (h, _) = graft_trees(g, twist, 1, &m, &ts).expect("arities match by construction");
        if let Some((c, _)) = canonicalize(&h, twist, 1) {
            found.entry(c.degree()).or_default().insert(c);
        }
    }
    found
        .into_iter()
        .map(|(d, s)| (d, s.into_iter().collect()))
        .collect()
}

// ---------------------------------------------------------------------------
// the diagonal

/// Which orientation each side of `δ` carries, from the pairing parities of the two algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    EvenEven,
    EvenOdd,
    OddEven,
    OddOdd,
}

impl ParityCase {
    pub const ALL: [ParityCase; 4] = [
        ParityCase::EvenEven,
        ParityCase::EvenOdd,
        ParityCase::OddEven,
        ParityCase::OddOdd,
    ];

    pub fn from_parities(a: usize, b: usize) -> ParityCase {
        match (a % 2, b % 2) {
            (0, 0) => ParityCase::EvenEven,
            (0, _) => ParityCase::EvenOdd,
            (_, 0) => ParityCase::OddEven,
            _ => ParityCase::OddOdd,
        }
    }

    /// `(source, left, right)`.
    pub fn twists(self) -> (Twist, Twist, Twist) {
        use Twist::*;
        match self {
            ParityCase::EvenEven => (Untwisted, Untwisted, Untwisted),
            ParityCase::EvenOdd => (Twisted, Untwisted, Twisted),
            ParityCase::OddEven => (Twisted, Twisted, Untwisted),
            ParityCase::OddOdd => (Untwisted, Twisted, Twisted),
        }
    }
}

/// `Δ(T)` for an arbitrary tree, through its decomposition into corollas.
pub fn diagonal_of_tree(d: &Diagonal, t: &PlanarTree) -> Result<PairChain> {
    let (subs, sign) = root_decomposition(t);
    let mut acc = d.get(subs.len())?.clone();
    for (i, s) in subs.iter().enumerate().rev() {
        if let Some(s) = s {
            acc = tensor_compose(&acc, i + 1, &diagonal_of_tree(d, s)?)?;
        }
    }
    Ok(acc.scaled(&sign_q(sign)))
}

/// `(φ⊗φ) ∘ τ ∘ (Δ⊗…⊗Δ)` on a tensor of trees, with `Γ` as the base graph.
pub fn diagonal_on_trees(
    g: &RibbonGraph,
    case: ParityCase,
    d: &Diagonal,
    m: &Marking,
    trees: &[PlanarTree],
) -> Result<GraphPairChain> {
    let (_, left, right) = case.twists();
    let need = m.arities(g).into_iter().max().unwrap_or(2);
    if d.max_arity < need {
        return Err(Error::DiagonalArityTooSmall {
            have: d.max_arity,
            need,
        });
    }
    let factors: Vec<Vec<(Pair, Q)>> = trees
        .iter()
        .map(|t| {
            diagonal_of_tree(d, t).map(|c| c.iter().map(|(p, q)| (p.clone(), q.clone())).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = Chain::zero();
    let mut pick = vec![0usize; factors.len()];
    'outer: loop {
        if factors.iter().any(Vec::is_empty) {
            break;
        }
        let mut coeff = Q::one();
        let mut us = Vec::new();
        let mut vs = Vec::new();
        let mut koszul = 0;
        for (i, f) in factors.iter().enumerate() {
            let ((u, v), c) = &f[pick[i]];
            coeff *= c;
            koszul += u.degree()
                * vs.iter()
                    .map(|x: &(PlanarTree, i32)| x.0.degree())
                    .sum::<usize>();
            us.push((u.clone(), 1));
            vs.push((v.clone(), 1));
        }
        let a = phi(g, left, m, &us)?;
        if !a.is_zero() {
            let b = phi(g, right, m, &vs)?;
            for (x, cx) in a.iter() {
                for (y, cy) in b.iter() {
                    out.add_term(
                        (x.clone(), y.clone()),
                        &coeff * cx * cy * sign_q(pm(koszul)),
                    );
                }
            }
        }
        for i in (0..pick.len()).rev() {
            pick[i] += 1;
            if pick[i] < factors[i].len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        break;
    }
    Ok(out)
}

/// `δ(g)` for `g` with its standard orientation, computed with `g` itself as base.
pub fn diagonal_marked(
    g: &RibbonGraph,
    case: ParityCase,
    d: &Diagonal,
    m: &Marking,
) -> Result<GraphPairChain> {
    let (source, _, _) = case.twists();
    let corollas: Vec<PlanarTree> = m.arities(g).into_iter().map(PlanarTree::corolla).collect();
    let pre = pm(g.degree()) * marking_sign(g, source, 1, m)?;
    Ok(diagonal_on_trees(g, case, d, m, &corollas)?.scaled(&sign_q(pre)))
}

pub fn graph_diagonal(x: &GraphChain, case: ParityCase, d: &Diagonal) -> Result<GraphPairChain> {
    let mut out = Chain::zero();
    for (g, c) in x.iter() {
        out.add_scaled(&diagonal_marked(g, case, d, &Marking::standard(g))?, c);
    }
    Ok(out)
}

/// `φ_Γ^{-1}` on a chain in `𝒢_*(Γ)`, as combinations of tree tuples.
pub fn phi_inverse(
    g: &RibbonGraph,
    twist: Twist,
    m: &Marking,
    x: &GraphChain,
) -> Result<Vec<(Vec<PlanarTree>, Q)>> {
    let tuples = tree_tuples(g, m);
    let mut elim = Eliminator::new();
    for ts in &tuples {
        let signed: Vec<(PlanarTree, i32)> = ts.iter().map(|t| (t.clone(), 1)).collect();
        elim.insert_chain(&phi(g, twist, m, &signed)?);
    }
    let sol = elim.solve(x).map_err(|r| Error::NotSolvable {
        residual_terms: r.len(),
    })?;
    Ok(sol
        .into_iter()
        .map(|(j, c)| (tuples[j].clone(), c))
        .collect())
}

/// `δ_Γ` on any chain of `𝒢_*(Γ)`, through `φ_Γ^{-1}`.
pub fn diagonal_via_base(
    g: &RibbonGraph,
    case: ParityCase,
    d: &Diagonal,
    m: &Marking,
    x: &GraphChain,
) -> Result<GraphPairChain> {
    let (source, _, _) = case.twists();
    let mut out = Chain::zero();
    for (ts, c) in phi_inverse(g, source, m, x)? {
        out.add_scaled(&diagonal_on_trees(g, case, d, m, &ts)?, &c);
    }
    Ok(out)
}

/// `∂⊗1 + (−1)^{|x|} 1⊗∂` on a tensor of graph chains.
pub fn pair_boundary(x: &GraphPairChain, left: Twist, right: Twist) -> GraphPairChain {
    let mut out = Chain::zero();
    for ((a, b), c) in x.iter() {
        for (u, cu) in graph_boundary(a, left).iter() {
            out.add_term((u.clone(), b.clone()), c * cu);
        }
        let s = sign_q(pm(a.degree()));
        for (v, cv) in graph_boundary(b, right).iter() {
            out.add_term((a.clone(), v.clone()), c * cv * &s);
        }
    }
    out
}

/// The cycles of `g` viewed in an expansion `h` (new edge coefficient fixed by ∂ = 0).
pub fn lift_cycles(g: &RibbonGraph, h: &RibbonGraph) -> Vec<Vec<i64>> {
    let eg = g.edges();
    let eh = h.edge_of();
    let vh = h.vertex_of();
    let hedges = h.edges();
    let enew = eh[g.half_edges()];
    cycle_basis(g)
        .into_iter()
        .map(|c| {
            let mut out = vec![0i64; h.num_edges()];
            for (k, &(lo, _)) in eg.iter().enumerate() {
                out[eh[lo]] = c[k];
            }
            let mut d = vec![0i64; h.num_vertices()];
            for (k, &(lo, hi)) in hedges.iter().enumerate() {
                d[vh[hi]] += out[k];
                d[vh[lo]] -= out[k];
            }
            let (lo, hi) = hedges[enew];
            // d + x(v_hi − v_lo) = 0
            out[enew] = -d[vh[hi]];
            debug_assert_eq!(d[vh[lo]], out[enew]);
            out
        })
        .collect()
}

/// Sign of the change of basis from `cycles` to `cycle_basis(h)`.
pub fn basis_change_sign(h: &RibbonGraph, cycles: &[Vec<i64>]) -> i32 {
    let (tree, _) = spanning_tree(h);
    let nontree: Vec<usize> = (0..h.num_edges()).filter(|e| !tree.contains(e)).collect();
    let m: Vec<Vec<Q>> = cycles
        .iter()
        .map(|c| {
            nontree
                .iter()
                .map(|&e| Q::from_integer(c[e].into()))
                .collect()
        })
        .collect();
    if det(m).is_positive() {
        1
    } else {
        -1
    }
}

/// `A_{Γ'} = (−1)^{Σ_{l<m} n_l + i(j+1) + n_m j + 1} A_Γ` for every expansion at a marked vertex.
pub fn check_marking_law(base: &RibbonGraph, twist: Twist) -> std::result::Result<usize, String> {
    let m = Marking::standard(base);
    let blocks = m.blocks(base);
    let ns = m.arities(base);
    let a = marking_sign(base, twist, 1, &m).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (mi, blk) in blocks.iter().enumerate() {
        let nm = ns[mi];
        for j in 2..nm {
            for i in 1..=nm - j + 1 {
                let minus: Vec<usize> = blk[i..i + j].to_vec();
                let plus: Vec<usize> = blk[i + j..].iter().chain(&blk[..i]).copied().collect();
                let (h, s) = expand(base, twist, 1, &minus, &plus);
                let mut roots = m.roots.clone();
                roots[mi] = blk[0];
                roots.insert(mi + 1, base.half_edges());
                let mut a2 =
                    marking_sign(&h, twist, s, &Marking { roots }).map_err(|e| e.to_string())?;
                if twist == Twist::Twisted {
                    a2 *= basis_change_sign(&h, &lift_cycles(base, &h));
                }
                let e = ns[..mi].iter().sum::<usize>() + i * (j + 1) + nm * j + 1;
                if a2 != pm(e) * a {
                    return Err(format!("{base} {twist:?} vertex {mi} i={i} j={j}"));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `φ_Γ` commutes with the differentials and its image spans `𝒢_*(Γ)`.
pub fn check_phi(base: &RibbonGraph, twist: Twist) -> std::result::Result<usize, String> {
    let m = Marking::standard(base);
    let tuples = tree_tuples(base, &m);
    let plain = |ts: &[PlanarTree]| ts.iter().map(|t| (t.clone(), 1)).collect::<Vec<_>>();
    let mut images = Vec::new();
    for ts in &tuples {
        let img = phi(base, twist, &m, &plain(ts)).map_err(|e| e.to_string())?;
        let mut rhs = Chain::zero();
        for (vs, c) in tuple_boundary(ts) {
            rhs.add_scaled(
                &phi(base, twist, &m, &plain(&vs)).map_err(|e| e.to_string())?,
                &c,
            );
        }
        if boundary(&img, twist) != rhs {
            return Err(format!("{base} {twist:?} {ts:?}: not a chain map"));
        }
        images.push(img);
    }
    let dim: usize = generate_subcomplex(base, twist)
        .values()
        .map(Vec::len)
        .sum();
    let rank = crate::linalg::rank_of(&images);
    if rank != dim {
        return Err(format!("{base} {twist:?}: rank {rank}, dimension {dim}"));
    }
    Ok(dim)
}

/// `δ∂ = (∂⊗1 ± 1⊗∂)δ` on every generator of `𝒢_*(Γ)`.
pub fn check_diagonal_chain_map(
    base: &RibbonGraph,
    case: ParityCase,
    d: &Diagonal,
) -> std::result::Result<usize, String> {
    let (src, l, r) = case.twists();
    let mut checked = 0;
    for gs in generate_subcomplex(base, src).into_values() {
        for g in gs {
            let x = oriented(&g, src, 1);
            let lhs = graph_diagonal(&boundary(&x, src), case, d).map_err(|e| e.to_string())?;
            let rhs = pair_boundary(
                &graph_diagonal(&x, case, d).map_err(|e| e.to_string())?,
                l,
                r,
            );
            if lhs != rhs {
                return Err(format!("{g} {case:?}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// `δ(g)` against every vertex order and every choice of roots.
pub fn check_diagonal_independence(
    g: &RibbonGraph,
    case: ParityCase,
    d: &Diagonal,
) -> std::result::Result<usize, String> {
    let reference =
        diagonal_marked(g, case, d, &Marking::standard(g)).map_err(|e| e.to_string())?;
    let vs = g.vertices();
    let mut checked = 0;
    for order in permutations(vs.len()) {
        let mut choice = vec![0usize; vs.len()];
        loop {
            let m = Marking {
                roots: order.iter().map(|&v| vs[v][choice[v]]).collect(),
            };
            if diagonal_marked(g, case, d, &m).map_err(|e| e.to_string())? != reference {
                return Err(format!("{g} {case:?} roots {:?}", m.roots));
            }
            checked += 1;
            let mut i = 0;
            while i < vs.len() {
                choice[i] += 1;
                if choice[i] < vs[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == vs.len() {
                break;
            }
        }
    }
    Ok(checked)
}
