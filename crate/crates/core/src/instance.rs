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

//! The instance file format.
//!
//! ```json
//! {"dim": 3, "gram": ["010", "101", "010"], "set": ["100", "010", "001"]}
//! ```
//!
//! Character `k` (0-based) of every bitstring is coordinate `k + 1`. An
//! optional `tree` block describes an edge-labeled tree by parent array or
//! Prüfer code.

use serde::{Deserialize, Serialize};

use crate::construct::EdgeLabeledTree;
use crate::error::{Error, Result};
use crate::f2::{F2Vector, SymplecticSpace, VectorSet};
use crate::trees::{parents_to_edges, prufer_decode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub dim: usize,
    pub gram: Vec<String>,
    #[serde(default)]
    pub set: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeJson>,
}

/// A tree given by exactly one of `parents` (root marked `null`) or `prufer`.
///
/// With `parents`, edge `i` joins the `i`-th non-root vertex to its parent;
/// with `prufer`, edges come in decoding order. `labels[i]` labels edge `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parents: Option<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prufer: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TreeJson {
    /// Vertex count and edges in label order.
    pub fn edges(&self) -> Result<(usize, Vec<(usize, usize)>)> {
        match (&self.parents, &self.prufer) {
            (Some(p), None) => Ok((p.len(), parents_to_edges(p)?)),
            (None, Some(code)) => Ok((code.len() + 2, prufer_decode(code)?)),
            _ => Err(Error::Input(
                "tree needs exactly one of \"parents\" or \"prufer\"".into(),
            )),
        }
    }

    fn names(&self, m: usize) -> Result<Vec<String>> {
        match &self.names {
            Some(n) if n.len() == m => Ok(n.clone()),
            Some(n) => Err(Error::Input(format!("{} names for {m} tree vertices", n.len()))),
            None => Ok((0..m).map(|v| format!("v{v}")).collect()),
        }
    }

    /// Builds the tree under `space`, or with the edge-basis form when no
    /// labels are given.
    pub fn build(&self, space: Option<&SymplecticSpace>) -> Result<(SymplecticSpace, EdgeLabeledTree)> {
        let (m, edges) = self.edges()?;
        let names = self.names(m)?;
        match (&self.labels, space) {
            (Some(labels), Some(space)) => {
                let labels = labels
                    .iter()
                    .map(|s| parse_vector(s, space.dim()))
                    .collect::<Result<Vec<_>>>()?;
                let tree = EdgeLabeledTree::with_names(names, edges, labels)?;
                Ok((space.clone(), tree))
            }
            (None, _) => {
                let (space, tree) = EdgeLabeledTree::with_edge_basis(m, edges.clone())?;
                let tree = EdgeLabeledTree::with_names(names, edges, tree.labels().to_vec())?;
                Ok((space, tree))
            }
            (Some(_), None) => Err(Error::Input("tree labels need \"dim\" and \"gram\"".into())),
        }
    }

    pub fn from_tree(tree: &EdgeLabeledTree) -> Self {
        // Root at vertex 0; the parent array lists edges in BFS order, so
        // labels are reordered to match.
        let m = tree.vertex_count();
        let g = tree.tree();
        let mut parents = vec![None; m];
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parents[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        let labels = (0..m)
            .filter_map(|v| parents[v].map(|p| (p, v)))
            .map(|(p, v)| {
                let i = tree
                    .edges()
                    .iter()
                    .position(|&(a, b)| (a, b) == (p, v) || (a, b) == (v, p))
                    .expect("every parent edge is a tree edge");
                tree.labels()[i].to_bitstring()
            })
            .collect();
        TreeJson {
            parents: Some(parents),
            prufer: None,
            names: Some(g.labels().to_vec()),
            labels: Some(labels),
        }
    }
}

fn parse_vector(s: &str, dim: usize) -> Result<F2Vector> {
    let v = F2Vector::parse(s)?;
    if v.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        });
    }
    Ok(v)
}

/// A parsed and validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub space: SymplecticSpace,
    pub set: VectorSet,
    pub tree: Option<EdgeLabeledTree>,
}

impl Instance {
    pub fn new(space: SymplecticSpace, set: VectorSet) -> Self {
        Instance { space, set, tree: None }
    }

    /// Validates `json`; the zero vector is accepted in `set` only when
    /// `allow_zero` is set.
    pub fn from_json(json: &InstanceJson, allow_zero: bool) -> Result<Self> {
        let space = SymplecticSpace::from_bitstrings(json.dim, &json.gram)?;
        let members = json
            .set
            .iter()
            .map(|s| parse_vector(s, json.dim))
            .collect::<Result<Vec<_>>>()?;
        let set = if allow_zero {
            VectorSet::with_zero(json.dim, members)?
        } else {
            VectorSet::new(json.dim, members)?
        };
        let tree = match &json.tree {
            Some(t) => {
                let (tree_space, tree) = t.build(Some(&space))?;
                if tree_space != space {
                    return Err(Error::Input("tree labels must use the instance form".into()));
                }
                Some(tree)
            }
            None => None,
        };
        Ok(Instance { space, set, tree })
    }

    /// Parses either a bare instance or any object carrying it under `"instance"`.
    pub fn parse(text: &str, allow_zero: bool) -> Result<Self> {
        Self::from_json(&parse_instance_json(text)?, allow_zero)
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            dim: self.space.dim(),
            gram: self.space.gram_bitstrings(),
            set: self.set.to_bitstrings(),
            tree: self.tree.as_ref().map(TreeJson::from_tree),
        }
    }
}

pub fn parse_instance_json(text: &str) -> Result<InstanceJson> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    let inner = match value.get("instance") {
        Some(inner) if value.get("dim").is_none() => inner.clone(),
        _ => value,
    };
    serde_json::from_value(inner).map_err(|e| Error::Input(e.to_string()))
}

pub fn instance_json(space: &SymplecticSpace, set: &VectorSet) -> InstanceJson {
    InstanceJson {
        dim: space.dim(),
        gram: space.gram_bitstrings(),
        set: set.to_bitstrings(),
        tree: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_exact_serialization() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::parse(3, &["100", "010", "001", "110"]).unwrap();
        let text = serde_json::to_string(&instance_json(&sp, &s)).unwrap();
        assert_eq!(
            text,
            r#"{"dim":3,"gram":["010","101","010"],"set":["100","010","001","110"]}"#
        );
        let back = Instance::parse(&text, false).unwrap();
        assert_eq!(back.space, sp);
        assert_eq!(back.set, s);
    }

    #[test]
    fn wrapped_instances_are_accepted() {
        let text = r#"{"instance": {"dim": 2, "gram": ["01", "10"], "set": ["11"]}, "result": {}}"#;
        let inst = Instance::parse(text, false).unwrap();
        assert_eq!(inst.set.to_bitstrings(), vec!["11"]);
    }

    #[test]
    fn malformed_instances() {
        assert!(Instance::parse(r#"{"dim": 2, "gram": ["01", "11"], "set": []}"#, false).is_err());
        assert!(Instance::parse(r#"{"dim": 2, "gram": ["01", "10"], "set": ["1"]}"#, false).is_err());
        assert!(Instance::parse(r#"{"dim": 2, "gram": ["01", "10"], "set": ["00"]}"#, false).is_err());
        assert!(Instance::parse(r#"{"dim": 2, "gram": ["01", "10"], "set": ["00"]}"#, true).is_ok());
        assert!(Instance::parse("not json", false).is_err());
    }

    #[test]
    fn tree_blocks() {
        let t = TreeJson {
            prufer: Some(vec![1, 2]),
            ..Default::default()
        };
        let (sp, tree) = t.build(None).unwrap();
        assert_eq!(sp, SymplecticSpace::path_form(3).unwrap());
        assert!(tree.matches_form(&sp).unwrap());

        let both = TreeJson {
            prufer: Some(vec![]),
            parents: Some(vec![None, Some(0)]),
            ..Default::default()
        };
        assert!(both.build(None).is_err());

        let text = r#"{"dim": 2, "gram": ["01", "10"], "set": [],
                      "tree": {"parents": [null, 0, 1], "labels": ["10", "01"]}}"#;
        let inst = Instance::parse(text, false).unwrap();
        let tree = inst.tree.clone().unwrap();
        let round = Instance::from_json(&inst.to_json(), false).unwrap();
        assert!(round.tree.unwrap().matches_form(&inst.space).unwrap());
        assert_eq!(tree.edges(), &[(0, 1), (1, 2)]);
    }
}
