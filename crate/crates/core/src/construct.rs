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

//! Edge-labeled trees whose line graph is `G(I)`, the incidence system that
//! adds a pendant edge at a chosen vertex, and the linear maps relating the
//! form to the tree's vertex space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{rank_of, solve, BitMatrix, F2Vector, SymplecticSpace, VectorSet};
use crate::graphs::{graph_of_set, is_claw_free_block_graph, line_graph_of_edges, reconstruct_root_tree, SimpleGraph};
use crate::trees::{parents_to_edges, prufer_decode};

/// A tree whose edges carry distinct vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeledTree {
    tree: SimpleGraph,
    edges: Vec<(usize, usize)>,
    labels: Vec<F2Vector>,
}

impl EdgeLabeledTree {
    /// `edges[i]` carries `labels[i]`. Vertex names default to `v0, v1, ...`.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, labels: Vec<F2Vector>) -> Result<Self> {
        let names = (0..vertex_count).map(|v| format!("v{v}")).collect();
        Self::with_names(names, edges, labels)
    }

    pub fn with_names(names: Vec<String>, edges: Vec<(usize, usize)>, labels: Vec<F2Vector>) -> Result<Self> {
        let mut tree = SimpleGraph::with_labels(names);
        for &(u, v) in &edges {
            tree.add_edge(u, v)?;
        }
        if !tree.is_tree() || tree.edge_count() != edges.len() {
            return Err(Error::NotATree);
        }
        if labels.len() != edges.len() {
            return Err(Error::Input(format!(
                "{} labels for {} tree edges",
                labels.len(),
                edges.len()
            )));
        }
        // Distinctness and a common dimension.
        if let Some(first) = labels.first() {
            VectorSet::with_zero(first.dim(), labels.clone())?;
        }
        Ok(EdgeLabeledTree { tree, edges, labels })
    }

    pub fn from_prufer(code: &[usize], labels: Vec<F2Vector>) -> Result<Self> {
        Self::new(code.len() + 2, prufer_decode(code)?, labels)
    }

    pub fn from_parents(parents: &[Option<usize>], labels: Vec<F2Vector>) -> Result<Self> {
        Self::new(parents.len(), parents_to_edges(parents)?, labels)
    }

    /// Labels the edges with the standard basis and builds the form in which
    /// two basis vectors pair to 1 exactly when their edges share a vertex.
    pub fn with_edge_basis(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<(SymplecticSpace, Self)> {
        let d = edges.len();
        let labels = (0..d).map(|i| F2Vector::basis(d, i)).collect::<Result<Vec<_>>>()?;
        let lg = line_graph_of_edges(&edges, vec![String::new(); d]);
        let gram = (0..d)
            .map(|i| lg.neighbors(i).fold(0u64, |acc, j| acc | 1 << j))
            .collect();
        let space = SymplecticSpace::new(d, gram)?;
        Ok((space, Self::new(vertex_count, edges, labels)?))
    }

    pub fn tree(&self) -> &SimpleGraph {
        &self.tree
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[F2Vector] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.tree.labels().iter().position(|l| l == name)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.tree.degree(v) == 1
    }

    fn incident(&self, u: usize, edge: usize) -> bool {
        let (a, b) = self.edges[edge];
        a == u || b == u
    }

    pub fn label_set(&self) -> Result<VectorSet> {
        let dim = self.labels.first().map_or(1, |l| l.dim());
        VectorSet::with_zero(dim, self.labels.clone())
    }

    /// Line graph with vertex `i` standing for edge `i`, labelled by its vector.
    pub fn labeled_line_graph(&self) -> SimpleGraph {
        line_graph_of_edges(
            &self.edges,
            self.labels.iter().map(|l| l.to_bitstring()).collect(),
        )
    }

    /// Checks that `G(labels)` equals the labeled line graph under `space`.
    pub fn matches_form(&self, space: &SymplecticSpace) -> Result<bool> {
        let g = graph_of_set(space, &self.label_set()?)?;
        Ok(g.same_structure(&self.labeled_line_graph()))
    }

    fn check_basis(&self, space: &SymplecticSpace) -> Result<()> {
        if self.labels.len() != space.dim()
            || self.labels.iter().any(|l| l.dim() != space.dim())
            || rank_of(self.labels.iter().map(|l| l.bits())) != space.dim()
        {
            return Err(Error::LabelsNotBasis);
        }
        Ok(())
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.vertex_count() {
            return Err(Error::VertexOutOfRange(u));
        }
        Ok(())
    }
}

/// Solutions `β` of `B(α, β) = [u incident to α]` over the labels `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DaggerSolution {
    NoSolution,
    Unique(F2Vector),
    /// Solvable, with a kernel of this dimension.
    Multiple { particular: F2Vector, kernel_dim: usize },
}

pub fn solve_dagger(space: &SymplecticSpace, tree: &EdgeLabeledTree, u: usize) -> Result<DaggerSolution> {
    tree.check_basis(space)?;
    tree.check_vertex(u)?;
    let rows: Vec<u64> = tree.labels.iter().map(|a| space.functional(a.bits())).collect();
    let rhs: Vec<bool> = (0..tree.labels.len()).map(|i| tree.incident(u, i)).collect();
    Ok(match solve(&rows, &rhs, space.dim()) {
        None => DaggerSolution::NoSolution,
        Some(sol) if sol.kernel.is_empty() => {
            DaggerSolution::Unique(F2Vector::from_raw(sol.particular, space.dim()))
        }
        Some(sol) => DaggerSolution::Multiple {
            particular: F2Vector::from_raw(sol.particular, space.dim()),
            kernel_dim: sol.kernel.len(),
        },
    })
}

/// The unique `β` pairing to 1 with exactly the edges at `u`, if it exists.
pub fn dagger_vector(space: &SymplecticSpace, tree: &EdgeLabeledTree, u: usize) -> Result<Option<F2Vector>> {
    match solve_dagger(space, tree, u)? {
        DaggerSolution::NoSolution => Ok(None),
        DaggerSolution::Unique(b) => Ok(Some(b)),
        DaggerSolution::Multiple { .. } => Err(Error::DaggerNotUnique(u)),
    }
}

/// Adds a pendant edge labelled `beta` at `u`.
///
/// Returns `I ∪ {β}` together with the extended tree, after checking that
/// `G(I ∪ {β})` is the line graph of the extended tree.
pub fn extend_with_pendant(
    space: &SymplecticSpace,
    tree: &EdgeLabeledTree,
    u: usize,
    beta: F2Vector,
) -> Result<(VectorSet, EdgeLabeledTree)> {
    space.check(beta)?;
    match solve_dagger(space, tree, u)? {
        DaggerSolution::Unique(b) if b == beta => {}
        _ => return Err(Error::PendantMismatch),
    }
    if tree.labels.contains(&beta) {
        return Err(Error::PendantInBasis(beta.to_bitstring()));
    }
    let mut names = tree.tree.labels().to_vec();
    let leaf = names.len();
    names.push(format!("v{leaf}"));
    while names[..leaf].contains(&names[leaf]) {
        names[leaf].push('\'');
    }
    let mut edges = tree.edges.clone();
    edges.push((u, leaf));
    let mut labels = tree.labels.clone();
    labels.push(beta);
    let extended = EdgeLabeledTree::with_names(names, edges, labels.clone())?;
    let set = VectorSet::new(space.dim(), labels)?;
    if !extended.matches_form(space)? {
        return Err(Error::Hypothesis(
            "G(I ∪ {β}) is not the line graph of the extended tree".into(),
        ));
    }
    Ok((set, extended))
}

/// The four equivalent conditions on a tree whose edge labels form a basis,
/// each evaluated on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma41Witnesses {
    pub radical_zero: bool,
    pub dim_even: bool,
    pub some_u_has_beta: bool,
    pub all_u_unique_beta: bool,
}

impl Lemma41Witnesses {
    pub fn all_equal(&self) -> bool {
        let v = self.radical_zero;
        self.dim_even == v && self.some_u_has_beta == v && self.all_u_unique_beta == v
    }
}

pub fn lemma41_witnesses(space: &SymplecticSpace, tree: &EdgeLabeledTree) -> Result<Lemma41Witnesses> {
    tree.check_basis(space)?;
    let mut some = false;
    let mut all_unique = true;
    for u in 0..tree.vertex_count() {
        match solve_dagger(space, tree, u)? {
            DaggerSolution::NoSolution => all_unique = false,
            DaggerSolution::Unique(_) => some = true,
            DaggerSolution::Multiple { .. } => {
                some = true;
                all_unique = false;
            }
        }
    }
    Ok(Lemma41Witnesses {
        radical_zero: space.is_nondegenerate(),
        dim_even: space.dim() % 2 == 0,
        some_u_has_beta: some,
        all_u_unique_beta: all_unique,
    })
}

/// The form, incidence, and edge-to-endpoint-sum maps written in the
/// label basis of `V` and the vertex basis of the tree's vertex space `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualData {
    /// `theta[i]` bit `j` = `B(α_i, α_j)`.
    pub theta: BitMatrix,
    /// Vertices by edges: `lambda[u]` bit `j` = `[u incident to α_j]`.
    pub lambda: BitMatrix,
    /// Edges by vertices: `mu[i]` = the two endpoints of `α_i`.
    pub mu: BitMatrix,
    /// The sum of all vertices.
    pub w: u64,
}

impl DualData {
    /// `theta` factors as `mu` followed by `lambda`.
    pub fn theta_factors(&self) -> bool {
        self.mu.mul(&self.lambda).is_ok_and(|p| p == self.theta)
    }

    /// The kernel of `lambda` is exactly `{0, w}`.
    pub fn lambda_kernel_is_w(&self) -> bool {
        let ker = self.lambda.left_kernel();
        ker.len() == 1 && ker[0] == self.w
    }

    /// The image of `mu` is the even-weight subspace of `U`.
    pub fn mu_image_is_even(&self) -> bool {
        let m = self.lambda.nrows();
        self.mu.rows().iter().all(|r| r.count_ones() == 2) && self.mu.rank() + 1 == m
    }
}

pub fn dual_data(space: &SymplecticSpace, tree: &EdgeLabeledTree) -> Result<DualData> {
    tree.check_basis(space)?;
    let d = tree.labels.len();
    let m = tree.vertex_count();
    if m > 64 {
        return Err(Error::GraphTooLarge { size: m, cap: 64 });
    }
    let mut theta = BitMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            theta.set(i, j, space.pair(tree.labels[i].bits(), tree.labels[j].bits()));
        }
    }
    let mut lambda = BitMatrix::zeros(m, d);
    let mut mu = BitMatrix::zeros(d, m);
    for (j, &(a, b)) in tree.edges.iter().enumerate() {
        lambda.set(a, j, true);
        lambda.set(b, j, true);
        mu.set(j, a, true);
        mu.set(j, b, true);
    }
    let w = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    Ok(DualData { theta, lambda, mu, w })
}

fn basis_with_connected_graph(space: &SymplecticSpace, basis: &VectorSet) -> Result<()> {
    if basis.dim() != space.dim() || basis.len() != space.dim() || !basis.is_independent() {
        return Err(Error::Hypothesis("basis_set is not a basis".into()));
    }
    if !graph_of_set(space, basis)?.is_connected() {
        return Err(Error::Hypothesis("G(basis_set) is not connected".into()));
    }
    if !space.is_nondegenerate() {
        return Err(Error::Hypothesis("the form has a nonzero radical".into()));
    }
    Ok(())
}

/// Whether `G(I ∪ extras)` is a claw-free block graph, for a basis `I`
/// with connected graph in a nondegenerate space and at least two extras.
pub fn check_lemma42(space: &SymplecticSpace, basis_set: &VectorSet, extras: &[F2Vector]) -> Result<bool> {
    basis_with_connected_graph(space, basis_set)?;
    if extras.len() < 2 {
        return Err(Error::Hypothesis("need at least two extra vectors".into()));
    }
    let mut members = basis_set.members().to_vec();
    for &e in extras {
        space.check(e)?;
        if basis_set.contains(e) {
            return Err(Error::Hypothesis(format!("{e} belongs to the basis")));
        }
        members.push(e);
    }
    // Rejects repeated extras.
    let all = VectorSet::with_zero(space.dim(), members)?;
    Ok(is_claw_free_block_graph(&graph_of_set(space, &all)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Proposition4Check {
    pub radical_zero: bool,
    pub dim_even: bool,
    pub every_pendant_removal_is_basis: bool,
}

impl Proposition4Check {
    pub fn holds(&self) -> bool {
        self.radical_zero && self.dim_even && self.every_pendant_removal_is_basis
    }
}

/// Evaluates the conclusions for a dependent spanning set whose graph is
/// the line graph of a tree. Pendant edges are read off the reconstructed tree.
pub fn check_proposition4(space: &SymplecticSpace, set: &VectorSet) -> Result<Proposition4Check> {
    if set.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: set.dim(),
        });
    }
    if set.is_independent() {
        return Err(Error::Hypothesis("set is linearly independent".into()));
    }
    if !set.spans() {
        return Err(Error::Hypothesis("set does not span the space".into()));
    }
    let g = graph_of_set(space, set)?;
    let root = reconstruct_root_tree(&g)
        .ok_or_else(|| Error::Hypothesis("G(S) is not the line graph of a tree".into()))?;
    let every = root.pendant_edges().into_iter().all(|i| {
        let rest = set.without(i);
        rest.len() == space.dim() && rest.is_independent()
    });
    Ok(Proposition4Check {
        radical_zero: space.is_nondegenerate(),
        dim_even: space.dim() % 2 == 0,
        every_pendant_removal_is_basis: every,
    })
}
