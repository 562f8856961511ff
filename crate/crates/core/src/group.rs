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

//! Enumeration of transvection groups and an exact decision procedure for
//! "is this group a symmetric group".
//!
//! Elements are square bit matrices of size at most 8 packed into a single
//! `u64`, row `i` in byte `i` (see [`BitMatrix::pack`]).

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, SymplecticSpace, VectorSet};

pub const MAX_GROUP_DIM: usize = 8;
pub const DEFAULT_GROUP_CAP: usize = 5_000_000;
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

fn identity_code(dim: usize) -> u64 {
    (0..dim).fold(0, |acc, i| acc | 1u64 << (9 * i))
}

#[inline]
fn row(code: u64, i: usize) -> u64 {
    code >> (8 * i) & 0xff
}

/// `a` then `b`, in packed form.
#[inline]
pub(crate) fn mul_codes(a: u64, b: u64, dim: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..dim {
        let mut r = row(a, i);
        let mut img = 0u64;
        while r != 0 {
            img ^= row(b, r.trailing_zeros() as usize);
            r &= r - 1;
        }
        out |= img << (8 * i);
    }
    out
}

/// Right multiplication by a fixed matrix through a byte lookup table.
struct RightMul {
    table: Box<[u64; 256]>,
}

impl RightMul {
    fn new(b: u64, dim: usize) -> Self {
        let mut table = Box::new([0u64; 256]);
        for (byte, slot) in table.iter_mut().enumerate() {
            *slot = mul_codes(byte as u64, b, dim) & 0xff;
        }
        RightMul { table }
    }

    #[inline]
    fn apply(&self, a: u64, dim: usize) -> u64 {
        let mut out = 0;
        for i in 0..dim {
            out |= self.table[row(a, i) as usize] << (8 * i);
        }
        out
    }
}

fn closure(dim: usize, generators: &[u64], cap: usize) -> (Vec<u64>, bool) {
    let id = identity_code(dim);
    let movers: Vec<RightMul> = generators.iter().map(|&g| RightMul::new(g, dim)).collect();
    let mut seen: HashSet<u64> = HashSet::from([id]);
    let mut frontier = vec![id];
    let mut capped = false;
    'outer: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for m in &movers {
                let y = m.apply(x, dim);
                if seen.insert(y) {
                    if seen.len() > cap {
                        capped = true;
                        break 'outer;
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<u64> = seen.into_iter().collect();
    elements.sort_unstable();
    (elements, capped)
}

/// All elements of a finitely generated matrix group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEnumeration {
    dim: usize,
    elements: Vec<u64>,
    generators: Vec<u64>,
    capped: bool,
}

impl GroupEnumeration {
    /// Closure of `generators` under multiplication, stopping once more than
    /// `cap` elements have been found.
    pub fn from_generators(dim: usize, generators: &[BitMatrix], cap: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_GROUP_DIM {
            return Err(Error::GroupDimension(dim));
        }
        if cap == 0 {
            return Err(Error::Input("group cap must be at least 1".into()));
        }
        let codes = generators
            .iter()
            .map(|g| {
                if g.ncols() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: g.ncols(),
                    });
                }
                g.pack().ok_or(Error::GroupDimension(g.ncols()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_codes(dim, codes, cap))
    }

    fn from_codes(dim: usize, generators: Vec<u64>, cap: usize) -> Self {
        let (elements, capped) = closure(dim, &generators, cap);
        GroupEnumeration {
            dim,
            elements,
            generators,
            capped,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements found; meaningful only when not capped.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    /// Sorted packed encodings.
    pub fn codes(&self) -> &[u64] {
        &self.elements
    }

    pub fn generators(&self) -> Vec<BitMatrix> {
        self.generators
            .iter()
            .map(|&c| BitMatrix::unpack(c, self.dim))
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = BitMatrix> + '_ {
        self.elements.iter().map(|&c| BitMatrix::unpack(c, self.dim))
    }

    pub fn contains(&self, m: &BitMatrix) -> bool {
        m.ncols() == self.dim
            && m.pack()
                .is_some_and(|c| self.elements.binary_search(&c).is_ok())
    }

    /// The image under `x -> p^-1 x p`, generators included.
    pub fn conjugate_by(&self, p: &BitMatrix) -> Result<GroupEnumeration> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Input("conjugating matrix is singular".into()))?;
        let (pc, ic) = (
            p.pack().ok_or(Error::GroupDimension(p.ncols()))?,
            inv.pack().ok_or(Error::GroupDimension(p.ncols()))?,
        );
        if p.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.ncols(),
            });
        }
        let conj = |x: u64| mul_codes(mul_codes(ic, x, self.dim), pc, self.dim);
        let mut elements: Vec<u64> = self.elements.iter().map(|&x| conj(x)).collect();
        elements.sort_unstable();
        Ok(GroupEnumeration {
            dim: self.dim,
            elements,
            generators: self.generators.iter().map(|&x| conj(x)).collect(),
            capped: self.capped,
        })
    }

    /// Same elements, generators permuted.
    pub fn with_generator_order(&self, order: &[usize]) -> GroupEnumeration {
        GroupEnumeration {
            generators: order.iter().map(|&i| self.generators[i]).collect(),
            ..self.clone()
        }
    }
}

/// `Tv(S)`: the group generated by the transvections with directions in `S`.
pub fn generate_group(space: &SymplecticSpace, set: &VectorSet, cap: usize) -> Result<GroupEnumeration> {
    if set.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: set.dim(),
        });
    }
    let gens = set
        .iter()
        .map(|a| space.transvection_matrix(a))
        .collect::<Result<Vec<_>>>()?;
    GroupEnumeration::from_generators(space.dim(), &gens, cap)
}

/// Set equality of element lists. Capped enumerations never compare equal.
pub fn groups_equal(a: &GroupEnumeration, b: &GroupEnumeration) -> bool {
    !a.capped && !b.capped && a.dim == b.dim && a.elements == b.elements
}

/// Type-A Coxeter generators exhibiting a group as `Sym(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricGroupCertificate {
    pub k: usize,
    pub coxeter_generators: Vec<BitMatrix>,
}

#[derive(Serialize)]
struct CertificateJson {
    k: usize,
    coxeter_generators: Vec<Vec<String>>,
}

impl SymmetricGroupCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            k: self.k,
            coxeter_generators: self
                .coxeter_generators
                .iter()
                .map(BitMatrix::to_bitstrings)
                .collect(),
        })
        .expect("certificate serializes")
    }

    /// Re-checks the relations, membership, generation and the order `k!`.
    pub fn verify(&self, g: &GroupEnumeration) -> bool {
        if g.capped || factorial(self.k) != Some(g.order() as u128) {
            return false;
        }
        if self.coxeter_generators.len() + 1 != self.k.max(1) {
            return false;
        }
        let dim = g.dim;
        let id = identity_code(dim);
        let Some(t) = self
            .coxeter_generators
            .iter()
            .map(|m| m.pack())
            .collect::<Option<Vec<u64>>>()
        else {
            return false;
        };
        if t.iter().any(|&x| g.elements.binary_search(&x).is_err()) {
            return false;
        }
        for i in 0..t.len() {
            if t[i] == id || mul_codes(t[i], t[i], dim) != id {
                return false;
            }
            for j in i + 1..t.len() {
                let p = mul_codes(t[i], t[j], dim);
                let ok = if j == i + 1 {
                    mul_codes(mul_codes(p, p, dim), p, dim) == id
                } else {
                    mul_codes(p, p, dim) == id
                };
                if !ok {
                    return false;
                }
            }
        }
        closure(dim, &t, g.order()).0.len() == g.order()
    }
}

pub fn factorial(k: usize) -> Option<u128> {
    (1..=k as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

/// The `k >= 1` with `k! = order`, taking `k = 1` for the trivial group.
pub fn factorial_index(order: usize) -> Option<usize> {
    let order = order as u128;
    let mut k = 1;
    loop {
        let f = factorial(k)?;
        if f == order {
            return Some(k);
        }
        if f > order {
            return None;
        }
        k += 1;
    }
}

/// Decides whether `g` is isomorphic to a symmetric group.
pub fn is_symmetric_group(g: &GroupEnumeration) -> Result<Option<SymmetricGroupCertificate>> {
    is_symmetric_group_with_budget(g, DEFAULT_SEARCH_BUDGET)
}

/// Exhaustive search for type-A Coxeter generators.
///
/// A group of order `k!` generated by involutions `t_1..t_{k-1}` with
/// `(t_i t_{i+1})^3 = 1` and `(t_i t_j)^2 = 1` for `|i - j| >= 2` is a quotient
/// of `Sym(k)` of full order, hence `Sym(k)`. Conversely the images of the
/// adjacent transpositions form such a system, so an exhausted search
/// proves the group is not symmetric. The search fixes `t_1` up to
/// conjugacy and requires `t_1 ... t_j` to have order `j + 1`, both of which
/// every solution can be brought to satisfy.
pub fn is_symmetric_group_with_budget(
    g: &GroupEnumeration,
    budget: u64,
) -> Result<Option<SymmetricGroupCertificate>> {
    if g.capped {
        return Err(Error::Capped(g.order()));
    }
    let Some(k) = factorial_index(g.order()) else {
        return Ok(None);
    };
    if k == 1 {
        return Ok(Some(SymmetricGroupCertificate {
            k,
            coxeter_generators: Vec::new(),
        }));
    }
    let mut search = CoxeterSearch::new(g, k, budget);
    let mut chosen = Vec::with_capacity(k - 1);
    for first in search.class_representatives() {
        chosen.push(first);
        if search.extend(&mut chosen)? {
            return Ok(Some(SymmetricGroupCertificate {
                k,
                coxeter_generators: chosen
                    .iter()
                    .map(|&c| BitMatrix::unpack(c, g.dim))
                    .collect(),
            }));
        }
        chosen.pop();
    }
    Ok(None)
}

struct CoxeterSearch<'a> {
    g: &'a GroupEnumeration,
    k: usize,
    id: u64,
    involutions: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl<'a> CoxeterSearch<'a> {
    fn new(g: &'a GroupEnumeration, k: usize, budget: u64) -> Self {
        let dim = g.dim;
        let id = identity_code(dim);
        let mut involutions: Vec<(usize, u64)> = g
            .elements
            .iter()
            .copied()
            .filter(|&x| x != id && mul_codes(x, x, dim) == id)
            .map(|x| {
                // Larger fixed spaces first: transvections tend to be transpositions.
                let fixed = dim - crate::f2::rank_of((0..dim).map(|i| row(x, i) ^ (1 << i)));
                (fixed, x)
            })
            .collect();
        involutions.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        CoxeterSearch {
            g,
            k,
            id,
            involutions: involutions.into_iter().map(|(_, x)| x).collect(),
            nodes: 0,
            budget,
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_codes(a, b, self.g.dim)
    }

    fn inverse(&self, x: u64) -> u64 {
        let mut prev = self.id;
        let mut cur = x;
        while cur != self.id {
            prev = cur;
            cur = self.mul(cur, x);
        }
        prev
    }

    fn order_of(&self, x: u64, limit: usize) -> Option<usize> {
        let mut cur = x;
        for n in 1..=limit {
            if cur == self.id {
                return Some(n);
            }
            cur = self.mul(cur, x);
        }
        None
    }

    /// First involution of each conjugacy class, in search order.
    fn class_representatives(&self) -> Vec<u64> {
        let conjugators: Vec<(u64, u64)> = self
            .g
            .generators
            .iter()
            .map(|&h| (h, self.inverse(h)))
            .collect();
        let mut class_of: HashMap<u64, usize> = HashMap::new();
        let mut reps = Vec::new();
        for &x in &self.involutions {
            if class_of.contains_key(&x) {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            class_of.insert(x, class);
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &(h, hi) in &conjugators {
                    let z = self.mul(self.mul(hi, y), h);
                    if let std::collections::hash_map::Entry::Vacant(e) = class_of.entry(z) {
                        e.insert(class);
                        stack.push(z);
                    }
                }
            }
        }
        reps
    }

    fn extend(&mut self, chosen: &mut Vec<u64>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget(self.budget));
        }
        let depth = chosen.len();
        let product = chosen.iter().fold(self.id, |acc, &t| self.mul(acc, t));
        if self.order_of(product, depth + 1) != Some(depth + 1) {
            return Ok(false);
        }
        if depth == self.k - 1 {
            let (elements, _) = closure(self.g.dim, chosen, self.g.order());
            return Ok(elements.len() == self.g.order());
        }
        let last = chosen[depth - 1];
        for idx in 0..self.involutions.len() {
            let c = self.involutions[idx];
            if chosen.contains(&c) {
                continue;
            }
            let p = self.mul(last, c);
            if self.mul(self.mul(p, p), p) != self.id {
                continue;
            }
            if chosen[..depth - 1]
                .iter()
                .any(|&t| self.mul(t, c) != self.mul(c, t))
            {
                continue;
            }
            chosen.push(c);
            if self.extend(chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::F2Vector;

    fn path_group(n: usize) -> GroupEnumeration {
        let sp = SymplecticSpace::path_form(n).unwrap();
        generate_group(&sp, &VectorSet::standard_basis(n).unwrap(), DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn factorial_indices() {
        assert_eq!(factorial_index(1), Some(1));
        assert_eq!(factorial_index(2), Some(2));
        assert_eq!(factorial_index(6), Some(3));
        assert_eq!(factorial_index(24), Some(4));
        assert_eq!(factorial_index(4), None);
        assert_eq!(factorial_index(0), None);
        assert_eq!(factorial_index(362_880), Some(9));
    }

    #[test]
    fn path_basis_dim3_is_sym4() {
        let g = path_group(3);
        assert_eq!(g.order(), 24);
        assert!(!g.is_capped());
        let cert = is_symmetric_group(&g).unwrap().unwrap();
        assert_eq!(cert.k, 4);
        assert_eq!(cert.coxeter_generators.len(), 3);
        assert!(cert.verify(&g));
    }

    #[test]
    fn single_transvection() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let g = generate_group(&sp, &VectorSet::parse(3, &["010"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), 2);
        let cert = is_symmetric_group(&g).unwrap().unwrap();
        assert_eq!(cert.k, 2);
        assert!(cert.verify(&g));
    }

    #[test]
    fn trivial_group_is_sym1() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let g = generate_group(&sp, &VectorSet::parse(3, &["101"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), 1);
        let cert = is_symmetric_group(&g).unwrap().unwrap();
        assert_eq!(cert.k, 1);
        assert!(cert.coxeter_generators.is_empty());
    }

    #[test]
    fn dependent_triangle_is_sym3() {
        let sp = SymplecticSpace::hyperbolic(2).unwrap();
        let s = VectorSet::parse(2, &["10", "01", "11"]).unwrap();
        let g = generate_group(&sp, &s, 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(is_symmetric_group(&g).unwrap().unwrap().k, 3);
    }

    #[test]
    fn counterexample_dim3_order() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let s = VectorSet::parse(3, &["100", "010", "001", "110"]).unwrap();
        let g = generate_group(&sp, &s, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 24);
        assert!(groups_equal(&g, &path_group(3)));
    }

    #[test]
    fn klein_four_is_not_symmetric() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let g = generate_group(&sp, &VectorSet::parse(3, &["100", "001"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(is_symmetric_group(&g).unwrap(), None);
    }

    #[test]
    fn cyclic_six_is_not_symmetric() {
        // Z/2 x Sym(3) has order 12; Z/6 needs a non-involution generator.
        let sp = SymplecticSpace::hyperbolic(4).unwrap();
        let a = sp.transvection_matrix(F2Vector::parse("1000").unwrap()).unwrap();
        let b = sp.transvection_matrix(F2Vector::parse("0100").unwrap()).unwrap();
        let c = sp.transvection_matrix(F2Vector::parse("0010").unwrap()).unwrap();
        // a*b has order 3, c commutes with both: <ab * c> is cyclic of order 6.
        let gen = a.mul(&b).unwrap().mul(&c).unwrap();
        let g = GroupEnumeration::from_generators(4, &[gen], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(is_symmetric_group(&g).unwrap(), None);
    }

    #[test]
    fn distinct_single_generators() {
        let sp = SymplecticSpace::path_form(3).unwrap();
        let a = generate_group(&sp, &VectorSet::parse(3, &["100"]).unwrap(), 10).unwrap();
        let b = generate_group(&sp, &VectorSet::parse(3, &["010"]).unwrap(), 10).unwrap();
        assert!(!groups_equal(&a, &b));
        assert!(groups_equal(&a, &a));
    }

    #[test]
    fn capped_enumeration() {
        let g = GroupEnumeration::from_generators(
            4,
            &path_group(4).generators(),
            10,
        )
        .unwrap();
        assert!(g.is_capped());
        assert_eq!(is_symmetric_group(&g), Err(Error::Capped(g.order())));
        assert!(!groups_equal(&g, &g));
    }

    #[test]
    fn enumeration_errors() {
        let sp = SymplecticSpace::path_form(9).unwrap();
        assert_eq!(
            generate_group(&sp, &VectorSet::standard_basis(9).unwrap(), 10),
            Err(Error::GroupDimension(9))
        );
        let sp = SymplecticSpace::path_form(3).unwrap();
        assert!(generate_group(&sp, &VectorSet::standard_basis(3).unwrap(), 0).is_err());
    }

    #[test]
    fn elements_preserve_form_and_are_invertible() {
        let sp = SymplecticSpace::path_form(4).unwrap();
        let g = generate_group(&sp, &VectorSet::standard_basis(4).unwrap(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 120);
        for m in g.elements() {
            assert!(m.determinant());
            assert!(sp.preserves_form(&m));
        }
    }

    #[test]
    fn budget_is_reported() {
        let g = path_group(4);
        assert_eq!(
            is_symmetric_group_with_budget(&g, 1),
            Err(Error::SearchBudget(1))
        );
    }
}
