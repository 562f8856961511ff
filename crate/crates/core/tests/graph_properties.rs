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

use proptest::prelude::*;

use transvect::construct::EdgeLabeledTree;
use transvect::f2::VectorSet;
use transvect::graphs::{
    block_decomposition, find_claw, graph_isomorphic, graph_of_set, is_block_graph, is_claw_free,
    is_claw_free_block_graph, line_graph, reconstruct_root_tree, theorem11_conditions, SimpleGraph,
};
use transvect::mutation::{mutate, MutationMode};
use transvect::trees::{all_prufer_codes, prufer_decode};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn claw_oracle(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    subsets(n, 4).iter().any(|s| {
        s.iter().any(|&c| {
            let leaves: Vec<usize> = s.iter().copied().filter(|&x| x != c).collect();
            leaves.iter().all(|&l| g.has_edge(c, l))
                && !g.has_edge(leaves[0], leaves[1])
                && !g.has_edge(leaves[0], leaves[2])
                && !g.has_edge(leaves[1], leaves[2])
        })
    })
}

fn induced_edge_count(g: &SimpleGraph, s: &[usize]) -> usize {
    let mut c = 0;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            c += g.has_edge(u, v) as usize;
        }
    }
    c
}

// Block graphs are exactly the chordal diamond-free graphs.
fn block_graph_oracle(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    let diamond = subsets(n, 4).iter().any(|s| induced_edge_count(g, s) == 5);
    let hole = (4..=n).any(|k| {
        subsets(n, k).iter().any(|s| {
            let sub = g.induced(s);
            sub.is_connected() && (0..k).all(|v| sub.degree(v) == 2)
        })
    });
    !diamond && !hole
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn iso_oracle(a: &SimpleGraph, b: &SimpleGraph, perms: &[Vec<usize>]) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    perms.iter().any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
}

#[test]
fn line_graphs_of_trees_by_brute_force() {
    // Every graph on at most 5 vertices: it is a tree line graph iff some
    // labeled tree on one more vertex produces it.
    for n in 1..=5 {
        let perms = permutations(n);
        let tree_lines: Vec<SimpleGraph> = all_prufer_codes(n + 1)
            .map(|code| line_graph(&SimpleGraph::from_edges(n + 1, &prufer_decode(&code).unwrap()).unwrap()).unwrap())
            .collect();
        for mask in 0u64..1 << (n * (n - 1) / 2) {
            let g = SimpleGraph::from_mask(n, mask);
            let oracle = tree_lines.iter().any(|l| iso_oracle(l, &g, &perms));
            assert_eq!(reconstruct_root_tree(&g).is_some(), oracle, "n={n} mask={mask:#x}");
            assert_eq!(is_claw_free_block_graph(&g), oracle, "n={n} mask={mask:#x}");
        }
    }
}

#[test]
fn claw_and_block_oracles_on_small_graphs() {
    for n in 0usize..=6 {
        for mask in 0u64..1 << (n * n.saturating_sub(1) / 2) {
            let g = SimpleGraph::from_mask(n, mask);
            assert_eq!(is_claw_free(&g), !claw_oracle(&g), "n={n} mask={mask:#x}");
            assert_eq!(is_block_graph(&g), g.is_connected() && block_graph_oracle(&g), "n={n} mask={mask:#x}");
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs).max(1))
    })
    .prop_map(|(n, mask)| SimpleGraph::from_mask(n, mask))
}

fn tree_strategy() -> impl Strategy<Value = Vec<(usize, usize)>> {
    (3usize..=10).prop_flat_map(|m| prop::collection::vec(0..m, m - 2)).prop_map(|code| prufer_decode(&code).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reconstruction_is_exact(g in graph_strategy()) {
        let cfbg = is_claw_free_block_graph(&g);
        let root = reconstruct_root_tree(&g);
        prop_assert_eq!(cfbg, root.is_some());
        if let Some(root) = root {
            prop_assert!(root.tree.is_tree());
            prop_assert_eq!(root.tree.edge_count(), g.vertex_count());
            prop_assert!(root.labeled_line_graph(g.labels().to_vec()).same_structure(&g));
            prop_assert!(graph_isomorphic(&line_graph(&root.tree).unwrap(), &g).unwrap());
        }
    }

    #[test]
    fn structural_conditions(g in graph_strategy()) {
        let c = theorem11_conditions(&g);
        prop_assert_eq!(c.connected && c.at_most_two_components && c.blocks_complete, is_claw_free_block_graph(&g));
        prop_assert!(!(c.connected && c.at_most_two_components) || c.block_graph_is_tree);
        if let Some((centre, leaves)) = find_claw(&g) {
            prop_assert!(leaves.iter().all(|&l| g.has_edge(centre, l)));
        }
    }

    #[test]
    fn blocks_cover_every_edge_once(g in graph_strategy()) {
        let d = block_decomposition(&g);
        for (u, v) in g.edges() {
            let holders = d.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(holders, 1);
        }
        for v in 0..g.vertex_count() {
            let count = d.blocks.iter().filter(|b| b.contains(&v)).count();
            prop_assert_eq!(count > 1, d.cut_vertices.contains(&v));
        }
    }

    #[test]
    fn line_graph_of_a_tree_reconstructs(edges in tree_strategy()) {
        let m = edges.len() + 1;
        let tree = SimpleGraph::from_edges(m, &edges).unwrap();
        let lg = line_graph(&tree).unwrap();
        prop_assert!(is_claw_free_block_graph(&lg));
        let root = reconstruct_root_tree(&lg).unwrap();
        prop_assert!(graph_isomorphic(&root.tree, &tree).unwrap());
    }

    // Moving one tree edge along an adjacent one keeps a tree line graph
    // with the same number of edges.
    #[test]
    fn tree_surgery(edges in tree_strategy(), pick: prop::sample::Index) {
        let m = edges.len() + 1;
        let (space, tree) = EdgeLabeledTree::with_edge_basis(m, edges).unwrap();
        let set: VectorSet = tree.label_set().unwrap();
        let g = graph_of_set(&space, &set).unwrap();
        let adjacent = g.edges();
        let (i, j) = adjacent[pick.index(adjacent.len())];
        let (a, b) = (set.members()[i], set.members()[j]);
        let moved = mutate(&space, &set, a, b, MutationMode::Independent).unwrap();
        let h = graph_of_set(&space, &moved).unwrap();
        let root = reconstruct_root_tree(&h).expect("still a tree line graph");
        prop_assert_eq!(root.tree.vertex_count(), m);
    }
}
