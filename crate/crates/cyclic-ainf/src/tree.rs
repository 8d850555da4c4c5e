//! Planar rooted trees as oriented cells of the associahedra.
//!
//! A tree is stored by its text encoding (`*` for a leaf, parenthesised
//! child lists for vertices), which is canonical and orders the basis.
//! An orientation is a sign against the pre-order listing of internal
//! edges, each edge named by its lower vertex.

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::{perm_sign, pm, Q};
use num_traits::One;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarTree {
    code: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf,
    Vertex(Vec<Node>),
}

/// Vertex-tagged tree used for orientation bookkeeping.
#[derive(Clone, Debug)]
enum Tagged {
    Leaf,
    Vertex(usize, Vec<Tagged>),
}

impl Node {
    pub fn leaves(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Vertex(cs) => cs.iter().map(Node::leaves).sum(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Vertex(cs) => 1 + cs.iter().map(Node::vertices).sum::<usize>(),
        }
    }

    fn encode_into(&self, out: &mut String) {
        match self {
            Node::Leaf => out.push('*'),
            Node::Vertex(cs) => {
                out.push('(');
                for c in cs {
                    c.encode_into(out);
                }
                out.push(')');
            }
        }
    }

    fn tag_preorder(&self, next: &mut usize) -> Tagged {
        match self {
            Node::Leaf => Tagged::Leaf,
            Node::Vertex(cs) => {
                let me = *next;
                *next += 1;
                Tagged::Vertex(me, cs.iter().map(|c| c.tag_preorder(next)).collect())
            }
        }
    }
}

impl Tagged {
    fn untag(&self) -> Node {
        match self {
            Tagged::Leaf => Node::Leaf,
            Tagged::Vertex(_, cs) => Node::Vertex(cs.iter().map(Tagged::untag).collect()),
        }
    }

    /// Tags of non-root vertices in pre-order: the canonical edge order.
    fn edge_tags(&self) -> Vec<usize> {
        fn walk(t: &Tagged, out: &mut Vec<usize>, root: bool) {
            if let Tagged::Vertex(tag, cs) = t {
                if !root {
                    out.push(*tag);
                }
                for c in cs {
                    walk(c, out, false);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out, true);
        out
    }

    fn leaves(&self) -> usize {
        match self {
            Tagged::Leaf => 1,
            Tagged::Vertex(_, cs) => cs.iter().map(Tagged::leaves).sum(),
        }
    }
}

impl PlanarTree {
    pub fn parse(s: &str) -> Result<Self> {
        let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let node = parse_node(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input in tree {s:?}")));
        }
        if matches!(node, Node::Leaf) {
            return Err(Error::Parse("a tree needs at least one vertex".into()));
        }
        Ok(Self::from_node(&node))
    }

    pub fn from_node(node: &Node) -> Self {
        let mut code = String::new();
        node.encode_into(&mut code);
        PlanarTree { code }
    }

    pub fn corolla(n: usize) -> Self {
        assert!(n >= 2, "corolla needs at least two leaves");
        PlanarTree {
            code: format!("({})", "*".repeat(n)),
        }
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn node(&self) -> Node {
        let chars: Vec<char> = self.code.chars().collect();
        let mut pos = 0;
        parse_node(&chars, &mut pos).expect("stored encodings are valid")
    }

    pub fn leaves(&self) -> usize {
        self.code.bytes().filter(|&b| b == b'*').count()
    }

    pub fn internal_edges(&self) -> usize {
        self.code.bytes().filter(|&b| b == b'(').count() - 1
    }

    pub fn degree(&self) -> usize {
        self.leaves() - 2 - self.internal_edges()
    }

    pub fn is_corolla(&self) -> bool {
        self.internal_edges() == 0
    }

    /// Child counts of the vertices in pre-order.
    pub fn vertex_arities(&self) -> Vec<usize> {
        fn walk(n: &Node, out: &mut Vec<usize>) {
            if let Node::Vertex(cs) = n {
                out.push(cs.len());
                for c in cs {
                    walk(c, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.node(), &mut out);
        out
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

fn parse_node(s: &[char], pos: &mut usize) -> Result<Node> {
    match s.get(*pos) {
        Some('*') => {
            *pos += 1;
            Ok(Node::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let mut cs = Vec::new();
            while s.get(*pos) != Some(&')') {
                if *pos >= s.len() {
                    return Err(Error::Parse("unclosed vertex".into()));
                }
                cs.push(parse_node(s, pos)?);
            }
            *pos += 1;
            if cs.len() < 2 {
                return Err(Error::Parse("vertex with fewer than two children".into()));
            }
            Ok(Node::Vertex(cs))
        }
        Some(c) => Err(Error::Parse(format!("unexpected {c:?} in tree"))),
        None => Err(Error::Parse("unexpected end of tree".into())),
    }
}

fn all_shapes(n: usize) -> Vec<Node> {
    // ordered sequences of at least `min_len` trees with `n` leaves in total
    fn seqs(n: usize, min_len: usize, memo: &mut HashMap<usize, Vec<Node>>) -> Vec<Vec<Node>> {
        let mut out = Vec::new();
        if min_len <= 1 {
            for h in shapes(n, memo) {
                out.push(vec![h]);
            }
        }
        for first in 1..n {
            let heads = shapes(first, memo);
            let tails = seqs(n - first, min_len.saturating_sub(1).max(1), memo);
            for h in &heads {
                for t in &tails {
                    let mut v = vec![h.clone()];
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
    fn shapes(n: usize, memo: &mut HashMap<usize, Vec<Node>>) -> Vec<Node> {
        if let Some(v) = memo.get(&n) {
            return v.clone();
        }
        let v = if n == 1 {
            vec![Node::Leaf]
        } else {
            seqs(n, 2, memo).into_iter().map(Node::Vertex).collect()
        };
        memo.insert(n, v.clone());
        v
    }
    shapes(n, &mut HashMap::new())
}

/// All planar trees with `n` leaves and degree `d`, in encoding order.
pub fn enumerate_trees(n: usize, d: usize) -> Result<Vec<PlanarTree>> {
    if n < 2 || d > n - 2 {
        return Err(Error::DegreeOutOfRange { n, d });
    }
    Ok(all_trees(n)
        .into_iter()
        .filter(|t| t.degree() == d)
        .collect())
}

/// Every planar tree with `n` leaves, in encoding order.
pub fn all_trees(n: usize) -> Vec<PlanarTree> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<PlanarTree>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let mut v: Vec<PlanarTree> = if n < 2 {
        Vec::new()
    } else {
        all_shapes(n).iter().map(PlanarTree::from_node).collect()
    };
    v.sort();
    cache.lock().unwrap().insert(n, v.clone());
    v
}

fn graft_tagged(t: &Tagged, i: usize, sub: &Tagged, seen: &mut usize) -> Tagged {
    match t {
        Tagged::Leaf => {
            *seen += 1;
            if *seen == i {
                sub.clone()
            } else {
                Tagged::Leaf
            }
        }
        Tagged::Vertex(tag, cs) => Tagged::Vertex(
            *tag,
            cs.iter().map(|c| graft_tagged(c, i, sub, seen)).collect(),
        ),
    }
}

/// `(U, can) ∘_i (V, can) = sign · (U ∘_i V, can)`.
pub fn graft(u: &PlanarTree, i: usize, v: &PlanarTree) -> Result<(PlanarTree, i32)> {
    let n1 = u.leaves();
    let n2 = v.leaves();
    if i == 0 || i > n1 {
        return Err(Error::IndexOutOfRange { i, n: n1 });
    }
    let l = v.degree();
    let mut next = 0;
    let tu = u.node().tag_preorder(&mut next);
    let base = next;
    let tv = v.node().tag_preorder(&mut next);
    // σ ∧ τ ∧ e, with e named by the root of V
    let mut given: Vec<usize> = (1..base).collect();
    given.extend(base + 1..next);
    given.push(base);
    let mut seen = 0;
    let w = graft_tagged(&tu, i, &tv, &mut seen);
    let canon = w.edge_tags();
    let s = perm_sign(&given, &canon) * pm(i * (n2 + 1) + n1 * l);
    Ok((PlanarTree::from_node(&w.untag()), s))
}

/// Graft on chains over trees.
pub fn graft_chain(
    u: &Chain<PlanarTree>,
    i: usize,
    v: &Chain<PlanarTree>,
) -> Result<Chain<PlanarTree>> {
    let mut out = Chain::zero();
    for (a, ca) in u.iter() {
        for (b, cb) in v.iter() {
            let (w, s) = graft(a, i, b)?;
            let c = ca * cb;
            out.add_term(w, if s > 0 { c } else { -c });
        }
    }
    Ok(out)
}

/// All one-edge expansions `V` of `T`, with the sign of `e ∧ σ_T` against `V`'s canonical order.
pub fn expansions(t: &PlanarTree) -> Vec<(PlanarTree, i32)> {
    let mut next = 0;
    let tagged = t.node().tag_preorder(&mut next);
    let fresh = next;
    let mut given = vec![fresh];
    given.extend(1..next);

    fn rebuild(t: &Tagged, target: usize, a: usize, j: usize, fresh: usize) -> Tagged {
        match t {
            Tagged::Leaf => Tagged::Leaf,
            Tagged::Vertex(tag, cs) => {
                let cs: Vec<Tagged> = cs.iter().map(|c| rebuild(c, target, a, j, fresh)).collect();
                if *tag == target {
                    let mut out = cs[..a].to_vec();
                    out.push(Tagged::Vertex(fresh, cs[a..a + j].to_vec()));
                    out.extend(cs[a + j..].iter().cloned());
                    Tagged::Vertex(*tag, out)
                } else {
                    Tagged::Vertex(*tag, cs)
                }
            }
        }
    }
    fn arities(t: &Tagged, out: &mut Vec<(usize, usize)>) {
        if let Tagged::Vertex(tag, cs) = t {
            out.push((*tag, cs.len()));
            for c in cs {
                arities(c, out);
            }
        }
    }

    let mut verts = Vec::new();
    arities(&tagged, &mut verts);
    let mut out = Vec::new();
    for (tag, k) in verts {
        for j in 2..k {
            for a in 0..=k - j {
                let w = rebuild(&tagged, tag, a, j, fresh);
                let s = perm_sign(&given, &w.edge_tags());
                out.push((PlanarTree::from_node(&w.untag()), s));
            }
        }
    }
    out
}

pub fn tree_boundary(t: &PlanarTree) -> Chain<PlanarTree> {
    let mut out = Chain::zero();
    for (v, s) in expansions(t) {
        out.add_term(v, if s > 0 { Q::one() } else { -Q::one() });
    }
    out
}

pub fn boundary_chain(c: &Chain<PlanarTree>) -> Chain<PlanarTree> {
    c.map_linear(tree_boundary)
}

/// Cyclic generator: `r(T, σ) = (-1)^n (r(T), σ)` with the last leaf becoming the root.
pub fn rotate(t: &PlanarTree) -> (PlanarTree, i32) {
    let n = t.leaves();
    let mut next = 0;
    let tagged = t.node().tag_preorder(&mut next);
    let nv = next;
    // nodes: 0..nv internal vertices by tag; nv = root leg; nv+1.. = leaves
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv + 1 + n];
    let mut parent: Vec<usize> = vec![usize::MAX; nv + 1 + n];
    fn build(
        t: &Tagged,
        up: usize,
        adj: &mut Vec<Vec<usize>>,
        parent: &mut Vec<usize>,
        leaf_id: &mut usize,
    ) -> usize {
        match t {
            Tagged::Leaf => {
                let me = *leaf_id;
                *leaf_id += 1;
                adj[me].push(up);
                parent[me] = up;
                me
            }
            Tagged::Vertex(tag, cs) => {
                adj[*tag].push(up);
                parent[*tag] = up;
                for c in cs {
                    let id = build(c, *tag, adj, parent, leaf_id);
                    adj[*tag].push(id);
                }
                *tag
            }
        }
    }
    let mut leaf_id = nv + 1;
    build(&tagged, nv, &mut adj, &mut parent, &mut leaf_id);
    adj[nv].push(0);

    let new_root_leg = nv + n;
    let edge_of = |a: usize, b: usize| -> usize {
        if parent[a] == b {
            a
        } else {
            b
        }
    };
    fn grow(
        v: usize,
        from: usize,
        nv: usize,
        adj: &[Vec<usize>],
        edge_of: &dyn Fn(usize, usize) -> usize,
        is_root: bool,
    ) -> Tagged {
        if v >= nv {
            return Tagged::Leaf;
        }
        let cyc = &adj[v];
        let k = cyc.iter().position(|&x| x == from).unwrap();
        let children = (1..cyc.len())
            .map(|s| grow(cyc[(k + s) % cyc.len()], v, nv, adj, edge_of, false))
            .collect();
        let tag = if is_root {
            usize::MAX
        } else {
            edge_of(v, from)
        };
        Tagged::Vertex(tag, children)
    }
    let w = adj[new_root_leg][0];
    let rotated = grow(w, new_root_leg, nv, &adj, &edge_of, true);
    debug_assert_eq!(rotated.leaves(), n);
    let old: Vec<usize> = (1..nv).collect();
    let s = perm_sign(&old, &rotated.edge_tags()) * pm(n);
    (PlanarTree::from_node(&rotated.untag()), s)
}

pub fn rotate_chain(c: &Chain<PlanarTree>) -> Chain<PlanarTree> {
    c.map_signed(|t| Some(rotate(t)))
}

/// Decomposition of `(T, can)` into corollas: `(T, can) = sign · (c_k ∘_k S_k) ∘ … ∘_1 S_1`
/// where the `S_i` are the child subtrees (leaves skipped) in canonical orientation.
pub fn root_decomposition(t: &PlanarTree) -> (Vec<Option<PlanarTree>>, i32) {
    let Node::Vertex(cs) = t.node() else {
        unreachable!()
    };
    let k = cs.len();
    let mut acc = PlanarTree::corolla(k);
    let mut sign = 1;
    let mut subs = vec![None; k];
    for i in (0..k).rev() {
        if let Node::Vertex(_) = &cs[i] {
            let s = PlanarTree::from_node(&cs[i]);
            let (w, g) = graft(&acc, i + 1, &s).expect("index in range");
            acc = w;
            sign *= g;
            subs[i] = Some(s);
        }
    }
    debug_assert_eq!(&acc, t);
    (subs, sign)
}

/// Kirkman–Cayley count of planar trees with `n` leaves and `t` internal edges.
pub fn kirkman_count(n: usize, t: usize) -> u128 {
    fn binom(n: u128, k: u128) -> u128 {
        if k > n {
            return 0;
        }
        let mut r = 1u128;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }
    if n < 2 || t > n - 2 {
        return 0;
    }
    let (n, t) = (n as u128, t as u128);
    binom(n - 2, t) * binom(n + t, t) / (t + 1)
}

pub fn signed(t: PlanarTree, s: i32) -> Chain<PlanarTree> {
    Chain::single(t, if s > 0 { Q::one() } else { -Q::one() })
}
