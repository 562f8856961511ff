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

//! Labeled trees: Prüfer codes, parent arrays, and exhaustive enumeration.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;

/// Edges of the labeled tree on `code.len() + 2` vertices with Prüfer code
/// `code`, in decoding order.
pub fn prufer_decode(code: &[usize]) -> Result<Vec<(usize, usize)>> {
    let m = code.len() + 2;
    if let Some(&bad) = code.iter().find(|&&c| c >= m) {
        return Err(Error::VertexOutOfRange(bad));
    }
    let mut degree = vec![1usize; m];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(m - 1);
    for &c in code {
        let leaf = *leaves.iter().next().expect("a tree always has a leaf");
        leaves.remove(&leaf);
        edges.push((leaf.min(c), leaf.max(c)));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let mut rest = leaves.into_iter();
    let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((u, v));
    Ok(edges)
}

pub fn prufer_encode(tree: &SimpleGraph) -> Result<Vec<usize>> {
    if !tree.is_tree() || tree.vertex_count() < 2 {
        return Err(Error::NotATree);
    }
    let m = tree.vertex_count();
    let mut degree: Vec<usize> = (0..m).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; m];
    let mut code = Vec::with_capacity(m - 2);
    for _ in 0..m - 2 {
        let leaf = (0..m).find(|&v| !removed[v] && degree[v] == 1).unwrap();
        let parent = tree.neighbors(leaf).find(|&w| !removed[w]).unwrap();
        code.push(parent);
        removed[leaf] = true;
        degree[parent] -= 1;
    }
    Ok(code)
}

/// Tree edges from a parent array (`None` marks the root), one edge per
/// non-root vertex in vertex order.
pub fn parents_to_edges(parents: &[Option<usize>]) -> Result<Vec<(usize, usize)>> {
    let m = parents.len();
    let edges: Vec<(usize, usize)> = parents
        .iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| (p, v)))
        .collect();
    for &(p, v) in &edges {
        if p >= m {
            return Err(Error::VertexOutOfRange(p));
        }
        if p == v {
            return Err(Error::NotATree);
        }
    }
    let g = SimpleGraph::from_edges(m, &edges)?;
    if !g.is_tree() || g.edge_count() != edges.len() {
        return Err(Error::NotATree);
    }
    Ok(edges)
}

/// Iterator over every Prüfer code for trees on `m >= 2` vertices.
pub struct PruferCodes {
    m: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for PruferCodes {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let mut done = true;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.m {
                done = false;
                break;
            }
            succ[i] = 0;
        }
        if !done {
            self.next = Some(succ);
        }
        Some(current)
    }
}

pub fn all_prufer_codes(m: usize) -> PruferCodes {
    assert!(m >= 2, "trees need at least two vertices to have a Prüfer code");
    PruferCodes {
        m,
        next: Some(vec![0; m - 2]),
    }
}

pub fn random_prufer_code<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<usize> {
    (0..m.saturating_sub(2)).map(|_| rng.gen_range(0..m)).collect()
}
