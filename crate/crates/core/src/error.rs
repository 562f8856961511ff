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

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..=64")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bit word {bits:#x} has bits set above dimension {dim}")]
    BitsOutOfRange { bits: u64, dim: usize },
    #[error("malformed bitstring {0:?}")]
    Bitstring(String),
    #[error("gram matrix must have {dim} rows of {dim} characters")]
    GramShape { dim: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    GramNotSymmetric { row: usize, col: usize },
    #[error("gram matrix has a nonzero diagonal entry at row {0}")]
    GramNotAlternating(usize),
    #[error("vector set contains the zero vector")]
    ZeroMember,
    #[error("vector set contains {0} more than once")]
    DuplicateMember(String),
    #[error("{0} is not a member of the set")]
    NotAMember(String),
    #[error("set member {0} lies in the radical")]
    RadicalMember(String),
    #[error("set is linearly dependent")]
    Dependent,
    #[error("move would leave the set of linearly independent sets")]
    IndependenceViolated,

    #[error("graph error: {0}")]
    Graph(String),
    #[error("graph has {size} vertices, above the cap of {cap}")]
    GraphTooLarge { size: usize, cap: usize },
    #[error("input graph is not a tree")]
    NotATree,

    #[error("group enumeration supports dimension at most 8, got {0}")]
    GroupDimension(usize),
    #[error("group enumeration was capped at {0} elements")]
    Capped(usize),
    #[error("symmetric-group search gave up after {0} nodes")]
    SearchBudget(u64),

    #[error("tree edge labels do not form a basis of the space")]
    LabelsNotBasis,
    #[error("(tree vertex {0}) solution of the incidence system is not unique")]
    DaggerNotUnique(usize),
    #[error("vertex index {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("pendant vector {0} already belongs to the basis")]
    PendantInBasis(String),
    #[error("pendant vector does not solve the incidence system at the chosen vertex")]
    PendantMismatch,
    #[error("hypotheses not met: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
