// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Simple undirected graphs: the graph `G(S)` of a vector set, block
//! decomposition, claw detection, and line graphs of trees.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{SymplecticSpace, VectorSet};

/// Default vertex cap for brute-force isomorphism.
pub const ISOMORPHISM_CAP: usize = 10;

/// An undirected graph without loops or parallel edges on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    /// `n` isolated vertices labelled by their index.
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        SimpleGraph {
            labels,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("valid");
            }
        }
        g
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    /// Graph on `n` vertices whose edge set is read from `mask`, bit `k`
    /// being the `k`-th pair `(i, j)`, `i < j`, in lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = SimpleGraph::new(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> k & 1 == 1 {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
                k += 1;
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn add_vertex(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: String) {
        self.labels[v] = label;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Same vertices and edges, ignoring labels.
    pub fn same_structure(&self, other: &SimpleGraph) -> bool {
        self.adj == other.adj
    }

    /// Number of connected components after deleting the vertices in `removed`.
    pub fn components_without(&self, removed: &[usize]) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn component_count(&self) -> usize {
        self.components_without(&[])
    }

    /// The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// A single vertex and a single edge both count as paths.
    pub fn is_path(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || !self.is_connected() || self.edge_count() + 1 != n {
            return false;
        }
        (0..n).all(|v| self.degree(v) <= 2)
    }

    pub fn is_complete_on(&self, vertices: &BTreeSet<usize>) -> bool {
        vertices.iter().all(|&u| {
            vertices
                .iter()
                .all(|&v| u == v || self.adj[u].contains(&v))
        })
    }

    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::with_labels(
            vertices.iter().map(|&v| self.labels[v].clone()).collect(),
        );
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", dot_id(name));
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_adjacency(&self) -> AdjacencyJson {
        AdjacencyJson {
            labels: self.labels.clone(),
            adjacency: self.adj.iter().map(|s| s.iter().copied().collect()).collect(),
        }
    }

    pub fn from_adjacency(json: &AdjacencyJson) -> Result<Self> {
        let n = json.adjacency.len();
        if json.labels.len() != n {
            return Err(Error::Graph(format!(
                "{} labels for {n} adjacency lists",
                json.labels.len()
            )));
        }
        let mut g = SimpleGraph::with_labels(json.labels.clone());
        for (u, nbrs) in json.adjacency.iter().enumerate() {
            for &v in nbrs {
                g.add_edge(u, v)?;
            }
        }
        for (u, nbrs) in json.adjacency.iter().enumerate() {
            if nbrs.len() != g.degree(u) {
                return Err(Error::Graph(format!("adjacency of vertex {u} is not symmetric")));
            }
        }
        Ok(g)
    }
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}

/// Adjacency-list interchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub labels: Vec<String>,
    pub adjacency: Vec<Vec<usize>>,
}

/// `G(S)`: vertices are the members of `S` in order, `i ~ j` iff `B(S_i, S_j) = 1`.
pub fn graph_of_set(space: &SymplecticSpace, set: &VectorSet) -> Result<SimpleGraph> {
    if set.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: set.dim(),
        });
    }
    Ok(graph_of_bits(space, &set.bits(), set.to_bitstrings()))
}

pub(crate) fn graph_of_bits(space: &SymplecticSpace, bits: &[u64], labels: Vec<String>) -> SimpleGraph {
    let mut g = SimpleGraph::with_labels(labels);
    for i in 0..bits.len() {
        let f = space.functional(bits[i]);
        for j in i + 1..bits.len() {
            if crate::f2::parity(f & bits[j]) {
                g.adj[i].insert(j);
                g.adj[j].insert(i);
            }
        }
    }
    g
}

/// Blocks (maximal subgraphs without a cut vertex) and cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, sorted. Isolated vertices form singleton blocks.
    pub blocks: Vec<BTreeSet<usize>>,
    pub cut_vertices: BTreeSet<usize>,
}

struct Tarjan<'a> {
    g: &'a SimpleGraph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<BTreeSet<usize>>,
    cuts: BTreeSet<usize>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        for &v in &self.g.adj[u] {
            if self.disc[v] == 0 {
                children += 1;
                self.stack.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.cuts.insert(u);
                    }
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = self.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent.is_none() && children == 0 {
            self.blocks.push(BTreeSet::from([u]));
        }
    }
}

pub fn block_decomposition(g: &SimpleGraph) -> BlockDecomposition {
    let n = g.vertex_count();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cuts: BTreeSet::new(),
    };
    for v in 0..n {
        if t.disc[v] == 0 {
            t.visit(v, None);
        }
    }
    let mut blocks = t.blocks;
    blocks.sort();
    BlockDecomposition {
        blocks,
        cut_vertices: t.cuts,
    }
}

/// No vertex has three pairwise non-adjacent neighbours.
pub fn is_claw_free(g: &SimpleGraph) -> bool {
    find_claw(g).is_none()
}

/// A claw as `(centre, [leaf; 3])`, if one exists.
pub fn find_claw(g: &SimpleGraph) -> Option<(usize, [usize; 3])> {
    for c in 0..g.vertex_count() {
        let nbrs: Vec<usize> = g.neighbors(c).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &d in &nbrs[j + 1..] {
                    if !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return Some((c, [a, b, d]));
                    }
                }
            }
        }
    }
    None
}

/// Connected, and every block induces a complete subgraph.
pub fn is_block_graph(g: &SimpleGraph) -> bool {
    g.is_connected()
        && block_decomposition(g)
            .blocks
            .iter()
            .all(|b| g.is_complete_on(b))
}

pub fn is_claw_free_block_graph(g: &SimpleGraph) -> bool {
    is_block_graph(g) && is_claw_free(g)
}

/// The four structural conditions on a graph, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralConditions {
    /// The graph is connected.
    pub connected: bool,
    /// Deleting any single vertex leaves at most two components.
    pub at_most_two_components: bool,
    /// Every block is complete.
    pub blocks_complete: bool,
    /// The block intersection graph is a tree.
    pub block_graph_is_tree: bool,
}

impl StructuralConditions {
    pub fn as_tuple(&self) -> (bool, bool, bool, bool) {
        (
            self.connected,
            self.at_most_two_components,
            self.blocks_complete,
            self.block_graph_is_tree,
        )
    }
}

pub fn theorem11_conditions(g: &SimpleGraph) -> StructuralConditions {
    let dec = block_decomposition(g);
    let connected = g.is_connected();
    let at_most_two_components = (0..g.vertex_count()).all(|v| g.components_without(&[v]) <= 2);
    let blocks_complete = dec.blocks.iter().all(|b| g.is_complete_on(b));
    let k = dec.blocks.len();
    let mut h = SimpleGraph::new(k);
    for i in 0..k {
        for j in i + 1..k {
            if !dec.blocks[i].is_disjoint(&dec.blocks[j]) {
                h.add_edge(i, j).expect("distinct blocks");
            }
        }
    }
    StructuralConditions {
        connected,
        at_most_two_components,
        blocks_complete,
        block_graph_is_tree: h.is_tree(),
    }
}

/// Line graph of a tree: one vertex per edge of `tree.edges()`, in that
/// order, adjacent when the edges share an endpoint.
pub fn line_graph(tree: &SimpleGraph) -> Result<SimpleGraph> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let edges = tree.edges();
    Ok(line_graph_of_edges(
        &edges,
        edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", tree.label(u), tree.label(v)))
            .collect(),
    ))
}

pub(crate) fn line_graph_of_edges(edges: &[(usize, usize)], labels: Vec<String>) -> SimpleGraph {
    let mut g = SimpleGraph::with_labels(labels);
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                g.adj[i].insert(j);
                g.adj[j].insert(i);
            }
        }
    }
    g
}

/// A tree together with the edge assigned to each vertex of the source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTree {
    pub tree: SimpleGraph,
    /// `edge_of[v]` is the tree edge labelled by source vertex `v`.
    pub edge_of: Vec<(usize, usize)>,
}

impl RootTree {
    /// The line graph with vertex `v` standing for `edge_of[v]`.
    pub fn labeled_line_graph(&self, labels: Vec<String>) -> SimpleGraph {
        line_graph_of_edges(&self.edge_of, labels)
    }

    /// Indices of source vertices whose tree edge touches a leaf.
    pub fn pendant_edges(&self) -> Vec<usize> {
        self.edge_of
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| self.tree.degree(a) == 1 || self.tree.degree(b) == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Builds a tree whose line graph is `g`, or returns `None` when there is none.
///
/// The tree has a vertex per block and a leaf per non-cut vertex. A cut
/// vertex becomes the edge between its two blocks and a non-cut vertex the
/// edge from its block to its leaf. The candidate is then checked edge by
/// edge against `g`.
pub fn reconstruct_root_tree(g: &SimpleGraph) -> Option<RootTree> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let dec = block_decomposition(g);
    let mut tree = SimpleGraph::with_labels(
        (0..dec.blocks.len()).map(|b| format!("b{b}")).collect(),
    );
    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, block) in dec.blocks.iter().enumerate() {
        for &v in block {
            member_of[v].push(b);
        }
    }
    let mut edge_of = Vec::with_capacity(n);
    for v in 0..n {
        let edge = match member_of[v].as_slice() {
            [b] => {
                let leaf = tree.add_vertex(format!("l{}", g.label(v)));
                (*b, leaf)
            }
            [b1, b2] => (*b1, *b2),
            _ => return None,
        };
        if tree.has_edge(edge.0, edge.1) {
            return None;
        }
        tree.add_edge(edge.0, edge.1).ok()?;
        edge_of.push(edge);
    }
    if !tree.is_tree() {
        return None;
    }
    let root = RootTree { tree, edge_of };
    let lg = root.labeled_line_graph(g.labels().to_vec());
    lg.same_structure(g).then_some(root)
}

/// Brute-force isomorphism with degree pruning.
pub fn graph_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    graph_isomorphic_capped(g1, g2, ISOMORPHISM_CAP)
}

pub fn graph_isomorphic_capped(g1: &SimpleGraph, g2: &SimpleGraph, cap: usize) -> Result<bool> {
    for g in [g1, g2] {
        if g.vertex_count() > cap {
            return Err(Error::GraphTooLarge {
                size: g.vertex_count(),
                cap,
            });
        }
    }
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut d1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_iso(g1, g2, 0, &mut map, &mut used))
}

fn extend_iso(g1: &SimpleGraph, g2: &SimpleGraph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == map.len() {
        return true;
    }
    for w in 0..map.len() {
        if used[w] || g1.degree(v) != g2.degree(w) {
            continue;
        }
        if (0..v).any(|u| g1.has_edge(u, v) != g2.has_edge(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_iso(g1, g2, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
