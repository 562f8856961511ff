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
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transvect::construct::{
    check_proposition4, dagger_vector, dual_data, extend_with_pendant, lemma41_witnesses, solve_dagger,
    DaggerSolution, EdgeLabeledTree,
};
use transvect::graphs::{graph_of_set, reconstruct_root_tree};
use transvect::harness::random_relabel;
use transvect::trees::{prufer_decode, prufer_encode};
use transvect::Error;

fn tree_strategy(min: usize, max: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (min..=max).prop_flat_map(|m| (Just(m), prop::collection::vec(0..m, m - 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prufer_round_trip((m, code) in tree_strategy(2, 12)) {
        let edges = prufer_decode(&code).unwrap();
        prop_assert_eq!(edges.len(), m - 1);
        prop_assert_eq!(prufer_encode(&transvect::graphs::SimpleGraph::from_edges(m, &edges).unwrap()).unwrap(), code);
    }

    #[test]
    fn pendant_construction((m, code) in tree_strategy(3, 9), seed: u64) {
        let (sp, tree) = EdgeLabeledTree::with_edge_basis(m, prufer_decode(&code).unwrap()).unwrap();
        let (sp, tree) = random_relabel(&sp, &tree, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(tree.matches_form(&sp).unwrap());
        let even = (m - 1) % 2 == 0;
        let w = lemma41_witnesses(&sp, &tree).unwrap();
        prop_assert!(w.all_equal());
        prop_assert_eq!(w.radical_zero, even);
        let dd = dual_data(&sp, &tree).unwrap();
        prop_assert!(dd.theta_factors() && dd.lambda_kernel_is_w() && dd.mu_image_is_even());
        for u in 0..m {
            let sol = solve_dagger(&sp, &tree, u).unwrap();
            if !even {
                prop_assert_eq!(sol, DaggerSolution::NoSolution);
                continue;
            }
            let DaggerSolution::Unique(beta) = sol else {
                return Err(TestCaseError::fail("even trees have a unique pendant vector"));
            };
            for (i, &(a, b)) in tree.edges().iter().enumerate() {
                let incident = a == u || b == u;
                prop_assert_eq!(sp.form_eval(tree.labels()[i], beta).unwrap(), incident);
            }
            match extend_with_pendant(&sp, &tree, u, beta) {
                Ok((set, ext)) => {
                    prop_assert!(!set.is_independent() && set.spans());
                    prop_assert!(ext.matches_form(&sp).unwrap());
                    prop_assert!(check_proposition4(&sp, &set).unwrap().holds());
                    let root = reconstruct_root_tree(&graph_of_set(&sp, &set).unwrap()).unwrap();
                    prop_assert_eq!(root.tree.vertex_count(), m + 1);
                }
                Err(Error::PendantInBasis(_)) => prop_assert!(m == 3 && tree.is_leaf(u)),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}

#[test]
fn wrong_pendant_is_rejected() {
    let (sp, tree) = EdgeLabeledTree::with_edge_basis(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let beta = dagger_vector(&sp, &tree, 0).unwrap().unwrap();
    let other = dagger_vector(&sp, &tree, 2).unwrap().unwrap();
    assert_ne!(beta, other);
    assert!(matches!(extend_with_pendant(&sp, &tree, 0, other), Err(Error::PendantMismatch)));
}
