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

//! Mutation moves `β -> τ_α(β)` on vector sets and breadth-first search of
//! the equivalence classes they generate.
//!
//! [`MutationMode::Free`] acts on arbitrary sets. A move there may collide
//! with an existing member and shrink the set; the class then also
//! contains the inverse "grow" moves. [`MutationMode::Independent`]
//! restricts moves to linearly independent sets, where neither can happen.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{rank_of, Echelon, F2Vector, SymplecticSpace, VectorSet};
use crate::graphs::graph_of_bits;

pub const DEFAULT_MAX_SETS: usize = 200_000;
pub const DEFAULT_MAX_MOVES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MutationMode {
    /// Arbitrary subsets of `V`.
    Free,
    /// Linearly independent subsets only.
    Independent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassCaps {
    pub max_sets: usize,
    pub max_moves: u64,
}

impl Default for ClassCaps {
    fn default() -> Self {
        ClassCaps {
            max_sets: DEFAULT_MAX_SETS,
            max_moves: DEFAULT_MAX_MOVES,
        }
    }
}

/// Sorted member encodings; identifies a set regardless of member order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSet(Vec<u64>);

impl CanonicalSet {
    pub fn of(set: &VectorSet) -> Self {
        Self::from_bits(set.bits())
    }

    pub fn from_bits(mut bits: Vec<u64>) -> Self {
        bits.sort_unstable();
        bits.dedup();
        CanonicalSet(bits)
    }

    pub fn bits(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_set(&self, dim: usize) -> Result<VectorSet> {
        VectorSet::from_bits(dim, &self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    /// `β` replaced by `τ_α(β)`, which was not yet a member.
    Replace,
    /// `τ_α(β)` was already a member, so `β` simply disappears.
    Shrink,
    /// Inverse of a shrink: `τ_α(β)` is added while `β` stays.
    Grow,
}

/// One step of a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub alpha: F2Vector,
    pub beta: F2Vector,
    pub kind: MoveKind,
}

impl Move {
    pub fn is_cardinality_changing(&self) -> bool {
        self.kind != MoveKind::Replace
    }
}

/// Replaces `beta` by `τ_alpha(beta)`.
///
/// In free mode the result may be smaller than `set`. In independent mode
/// `set` must be independent and the move must keep it so.
pub fn mutate(
    space: &SymplecticSpace,
    set: &VectorSet,
    alpha: F2Vector,
    beta: F2Vector,
    mode: MutationMode,
) -> Result<VectorSet> {
    Ok(mutate_traced(space, set, alpha, beta, mode)?.0)
}

fn mutate_traced(
    space: &SymplecticSpace,
    set: &VectorSet,
    alpha: F2Vector,
    beta: F2Vector,
    mode: MutationMode,
) -> Result<(VectorSet, Move)> {
    space.check(alpha)?;
    space.check(beta)?;
    if !set.contains(alpha) {
        return Err(Error::NotAMember(alpha.to_bitstring()));
    }
    let Some(bi) = set.index_of(beta) else {
        return Err(Error::NotAMember(beta.to_bitstring()));
    };
    if mode == MutationMode::Independent && !set.is_independent() {
        return Err(Error::Dependent);
    }
    let image = space.transvection_apply(alpha, beta)?;
    let mut members = set.members().to_vec();
    let kind = if image == beta {
        MoveKind::Replace
    } else if set.contains(image) {
        members.remove(bi);
        MoveKind::Shrink
    } else {
        members[bi] = image;
        MoveKind::Replace
    };
    let out = VectorSet::with_zero(set.dim(), members)?;
    if mode == MutationMode::Independent && (kind != MoveKind::Replace || !out.is_independent()) {
        return Err(Error::IndependenceViolated);
    }
    Ok((out, Move { alpha, beta, kind }))
}

/// Applies a recorded move. Grow moves are only legal in free mode.
pub fn apply_move(space: &SymplecticSpace, set: &VectorSet, mv: &Move, mode: MutationMode) -> Result<VectorSet> {
    match mv.kind {
        MoveKind::Replace | MoveKind::Shrink => {
            let (out, done) = mutate_traced(space, set, mv.alpha, mv.beta, mode)?;
            if done.kind != mv.kind {
                return Err(Error::Input(format!(
                    "move ({}, {}) is a {:?} move here, trace says {:?}",
                    mv.alpha, mv.beta, done.kind, mv.kind
                )));
            }
            Ok(out)
        }
        MoveKind::Grow => {
            if mode == MutationMode::Independent {
                return Err(Error::IndependenceViolated);
            }
            for v in [mv.alpha, mv.beta] {
                if !set.contains(v) {
                    return Err(Error::NotAMember(v.to_bitstring()));
                }
            }
            let image = space.transvection_apply(mv.alpha, mv.beta)?;
            if image == mv.beta || set.contains(image) {
                return Err(Error::Input(format!(
                    "grow move ({}, {}) adds nothing",
                    mv.alpha, mv.beta
                )));
            }
            set.with(image)
        }
    }
}

pub fn replay(space: &SymplecticSpace, set: &VectorSet, trace: &[Move], mode: MutationMode) -> Result<VectorSet> {
    trace
        .iter()
        .try_fold(set.clone(), |s, mv| apply_move(space, &s, mv, mode))
}

/// Summary of an equivalence-class search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClassReport {
    pub class_size: usize,
    pub path_representative: Option<CanonicalSet>,
    /// Moves leading from the start set to `path_representative`.
    pub move_trace: Option<Vec<Move>>,
    pub truncated: bool,
    /// Whether any cardinality-changing edge was seen (free mode only).
    pub saw_cardinality_change: bool,
    pub moves_evaluated: u64,
}

/// A searched class together with its members in discovery order.
#[derive(Clone, Debug)]
pub struct MutationClass {
    pub report: MutationClassReport,
    pub sets: Vec<CanonicalSet>,
}

fn is_path_set(space: &SymplecticSpace, bits: &[u64]) -> bool {
    graph_of_bits(space, bits, vec![String::new(); bits.len()]).is_path()
}

fn neighbours(space: &SymplecticSpace, set: &[u64], mode: MutationMode, out: &mut Vec<(Vec<u64>, MoveKind, u64, u64)>) {
    out.clear();
    for &a in set {
        let fa = space.functional(a);
        for (bi, &b) in set.iter().enumerate() {
            if a == b || !crate::f2::parity(fa & b) {
                continue;
            }
            let image = a ^ b;
            match set.binary_search(&image) {
                Err(_) => {
                    let mut next = set.to_vec();
                    next[bi] = image;
                    next.sort_unstable();
                    out.push((next, MoveKind::Replace, a, b));
                }
                Ok(_) if mode == MutationMode::Free => {
                    let mut next = set.to_vec();
                    next.remove(bi);
                    out.push((next, MoveKind::Shrink, a, b));
                }
                Ok(_) => {}
            }
            if mode == MutationMode::Free && set.binary_search(&image).is_err() {
                let mut next = set.to_vec();
                next.push(image);
                next.sort_unstable();
                out.push((next, MoveKind::Grow, a, b));
            }
        }
    }
}

/// Breadth-first search of the class of `set`.
///
/// Explores the whole class (up to the caps) and records the first member,
/// in BFS order, whose graph is a path.
pub fn equivalence_class(
    space: &SymplecticSpace,
    set: &VectorSet,
    mode: MutationMode,
    caps: ClassCaps,
) -> Result<MutationClass> {
    explore(space, set, mode, caps, false)
}

pub fn equivalence_class_bfs(
    space: &SymplecticSpace,
    set: &VectorSet,
    mode: MutationMode,
    caps: ClassCaps,
) -> Result<MutationClassReport> {
    Ok(equivalence_class(space, set, mode, caps)?.report)
}

fn explore(
    space: &SymplecticSpace,
    set: &VectorSet,
    mode: MutationMode,
    caps: ClassCaps,
    stop_at_path: bool,
) -> Result<MutationClass> {
    if set.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: set.dim(),
        });
    }
    if mode == MutationMode::Independent && !set.is_independent() {
        return Err(Error::Dependent);
    }
    let dim = set.dim();
    let start = CanonicalSet::of(set);
    let mut index: HashMap<CanonicalSet, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes: Vec<(CanonicalSet, Option<(usize, Move)>)> = vec![(start, None)];
    let mut found: Option<usize> = None;
    let mut truncated = false;
    let mut saw_change = false;
    let mut moves = 0u64;
    let mut scratch = Vec::new();
    let mut head = 0;
    'bfs: while head < nodes.len() {
        let current = nodes[head].0.clone();
        if found.is_none() && is_path_set(space, current.bits()) {
            found = Some(head);
            if stop_at_path {
                break;
            }
        }
        neighbours(space, current.bits(), mode, &mut scratch);
        for (next, kind, a, b) in scratch.drain(..) {
            moves += 1;
            if moves > caps.max_moves {
                truncated = true;
                break 'bfs;
            }
            if kind != MoveKind::Replace {
                saw_change = true;
            }
            let next = CanonicalSet(next);
            if index.contains_key(&next) {
                continue;
            }
            if nodes.len() >= caps.max_sets {
                truncated = true;
                break 'bfs;
            }
            let mv = Move {
                alpha: F2Vector::from_raw(a, dim),
                beta: F2Vector::from_raw(b, dim),
                kind,
            };
            index.insert(next.clone(), nodes.len());
            nodes.push((next, Some((head, mv))));
        }
        head += 1;
    }
    if truncated && found.is_none() {
        // Sets discovered but not yet expanded may still be paths.
        found = (head..nodes.len()).find(|&i| is_path_set(space, nodes[i].0.bits()));
    }
    let (path_representative, move_trace) = match found {
        Some(i) => {
            let mut trace = Vec::new();
            let mut cur = i;
            while let Some((parent, mv)) = nodes[cur].1 {
                trace.push(mv);
                cur = parent;
            }
            trace.reverse();
            (Some(nodes[i].0.clone()), Some(trace))
        }
        None => (None, None),
    };
    Ok(MutationClass {
        report: MutationClassReport {
            class_size: nodes.len(),
            path_representative,
            move_trace,
            truncated,
            saw_cardinality_change: saw_change,
            moves_evaluated: moves,
        },
        sets: nodes.into_iter().map(|(s, _)| s).collect(),
    })
}

/// Decides "some set in the class of `set` has a path graph".
///
/// `Some(true)` when a path representative is found, `Some(false)` when the
/// whole class was exhausted without one, `None` when the caps cut the
/// search short.
pub fn decide_symmetric_via_mutation(
    space: &SymplecticSpace,
    set: &VectorSet,
    mode: MutationMode,
    caps: ClassCaps,
) -> Result<Option<bool>> {
    if let Some(r) = set.radical_member(space) {
        return Err(Error::RadicalMember(r.to_bitstring()));
    }
    let class = explore(space, set, mode, caps, true)?;
    Ok(match (&class.report.path_representative, class.report.truncated) {
        (Some(_), _) => Some(true),
        (None, false) => Some(false),
        (None, true) => None,
    })
}

/// The span of a set as an echelon basis, for span comparisons.
pub fn span_of(bits: &[u64]) -> Echelon {
    let mut e = Echelon::new();
    for &b in bits {
        e.insert(b);
    }
    e
}

/// Whether two sets span the same subspace.
pub fn same_span(a: &[u64], b: &[u64]) -> bool {
    let ea = span_of(a);
    let r = ea.rank();
    r == rank_of(b.iter().copied()) && b.iter().all(|&x| ea.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> F2Vector {
        F2Vector::parse(s).unwrap()
    }

    fn counterexample() -> (SymplecticSpace, VectorSet) {
        (
            SymplecticSpace::path_form(3).unwrap(),
            VectorSet::parse(3, &["100", "010", "001", "110"]).unwrap(),
        )
    }

    #[test]
    fn counterexample_move_gives_basis() {
        let (sp, s) = counterexample();
        let out = mutate(&sp, &s, v("100"), v("110"), MutationMode::Free).unwrap();
        assert_eq!(CanonicalSet::of(&out), CanonicalSet::of(&VectorSet::standard_basis(3).unwrap()));
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn trivial_moves() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::standard_basis(3).unwrap();
        assert_eq!(mutate(&sp, &s, v("010"), v("010"), MutationMode::Independent).unwrap(), s);
        // B(e3, e1) = 0
        assert_eq!(mutate(&sp, &s, v("100"), v("001"), MutationMode::Independent).unwrap(), s);
        let moved = mutate(&sp, &s, v("100"), v("010"), MutationMode::Independent).unwrap();
        assert_eq!(moved.members(), &[v("100"), v("110"), v("001")]);
    }

    #[test]
    fn mutate_errors() {
        let (sp, s) = counterexample();
        assert!(matches!(
            mutate(&sp, &s, v("011"), v("100"), MutationMode::Free),
            Err(Error::NotAMember(_))
        ));
        assert_eq!(
            mutate(&sp, &s, v("100"), v("110"), MutationMode::Independent),
            Err(Error::Dependent)
        );
    }

    #[test]
    fn shrinking_move_in_free_mode() {
        // τ_{e2}(e1) = e1 + e2, already present: the set shrinks.
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::parse(3, &["100", "010", "110"]).unwrap();
        let out = mutate(&sp, &s, v("010"), v("100"), MutationMode::Free).unwrap();
        assert_eq!(out.members(), &[v("010"), v("110")]);
    }

    #[test]
    fn class_of_path_basis() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::standard_basis(3).unwrap();
        let r = equivalence_class_bfs(&sp, &s, MutationMode::Independent, ClassCaps::default()).unwrap();
        assert_eq!(r.path_representative, Some(CanonicalSet::of(&s)));
        assert_eq!(r.move_trace, Some(vec![]));
        assert!(!r.truncated);
        assert!(!r.saw_cardinality_change);
    }

    #[test]
    fn class_of_counterexample_free_mode() {
        let (sp, s) = counterexample();
        let r = equivalence_class_bfs(&sp, &s, MutationMode::Free, ClassCaps::default()).unwrap();
        let rep = r.path_representative.clone().unwrap();
        let trace = r.move_trace.clone().unwrap();
        assert_eq!(trace.len(), 1);
        let replayed = replay(&sp, &s, &trace, MutationMode::Free).unwrap();
        assert_eq!(CanonicalSet::of(&replayed), rep);
        assert_eq!(rep.len(), 3);
        assert!(r.saw_cardinality_change);
    }

    #[test]
    fn edgeless_class_is_a_singleton() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::parse(3, &["100", "001"]).unwrap();
        for mode in [MutationMode::Independent, MutationMode::Free] {
            let r = equivalence_class_bfs(&sp, &s, mode, ClassCaps::default()).unwrap();
            assert_eq!(r.class_size, 1);
            assert_eq!(r.path_representative, None);
        }
        assert_eq!(
            decide_symmetric_via_mutation(&sp, &s, MutationMode::Independent, ClassCaps::default()),
            Ok(Some(false))
        );
    }

    #[test]
    fn decide_examples() {
        let sp = SymplecticSpace::path_form(4).unwrap();
        let s = VectorSet::standard_basis(4).unwrap();
        assert_eq!(
            decide_symmetric_via_mutation(&sp, &s, MutationMode::Independent, ClassCaps::default()),
            Ok(Some(true))
        );
        let (sp3, ce) = counterexample();
        assert_eq!(
            decide_symmetric_via_mutation(&sp3, &ce, MutationMode::Free, ClassCaps::default()),
            Ok(Some(true))
        );
        let with_rad = VectorSet::parse(3, &["101", "010"]).unwrap();
        assert!(matches!(
            decide_symmetric_via_mutation(&sp3, &with_rad, MutationMode::Independent, ClassCaps::default()),
            Err(Error::RadicalMember(_))
        ));
    }

    #[test]
    fn truncation_is_reported() {
        let sp = SymplecticSpace::hyperbolic(4).unwrap();
        let s = VectorSet::parse(4, &["1000", "0110", "0001"]).unwrap();
        let caps = ClassCaps { max_sets: 2, max_moves: 1_000 };
        let r = equivalence_class_bfs(&sp, &s, MutationMode::Independent, caps).unwrap();
        assert!(r.truncated);
        assert!(r.class_size <= 2);
    }

    #[test]
    fn grow_move_replays() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::parse(3, &["100", "010"]).unwrap();
        let grow = Move { alpha: v("100"), beta: v("010"), kind: MoveKind::Grow };
        let out = apply_move(&sp, &s, &grow, MutationMode::Free).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out.contains(v("110")));
        assert!(apply_move(&sp, &s, &grow, MutationMode::Independent).is_err());
    }
}
