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

//! Linear algebra over F2: vectors as bit words, alternating forms,
//! radicals, rank, and transvections.
//!
//! Coordinates are numbered from 1 in bitstrings and from 0 in bit
//! positions: coordinate `k` lives at bit `k - 1`, and the leftmost
//! character of a bitstring is coordinate 1.

use std::fmt;
use std::ops::Add;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

/// Printed at the top of every human-readable report.
pub const ORIENTATION: &str = "bitstrings: leftmost character = coordinate 1";

#[inline]
fn mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

#[inline]
pub(crate) fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange(dim));
    }
    Ok(())
}

fn bits_to_string(bits: u64, width: usize) -> String {
    (0..width)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn bits_from_str(s: &str) -> Result<u64> {
    if s.len() > MAX_DIM {
        return Err(Error::Bitstring(s.to_string()));
    }
    let mut bits = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << i,
            _ => return Err(Error::Bitstring(s.to_string())),
        }
    }
    Ok(bits)
}

/// A vector of `F2^dim`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    bits: u64,
    dim: u8,
}

impl F2Vector {
    pub fn new(bits: u64, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if bits & !mask(dim) != 0 {
            return Err(Error::BitsOutOfRange { bits, dim });
        }
        Ok(F2Vector { bits, dim: dim as u8 })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(0, dim)
    }

    /// The standard basis vector for coordinate `index + 1`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::VertexOutOfRange(index));
        }
        Self::new(1 << index, dim)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits = bits_from_str(s)?;
        Self::new(bits, s.len())
    }

    pub(crate) fn from_raw(bits: u64, dim: usize) -> Self {
        debug_assert!(bits & !mask(dim) == 0);
        F2Vector { bits, dim: dim as u8 }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Coordinate `index + 1`.
    pub fn get(self, index: usize) -> bool {
        self.bits >> index & 1 == 1
    }

    pub fn to_bitstring(self) -> String {
        bits_to_string(self.bits, self.dim())
    }

    pub fn checked_add(self, other: F2Vector) -> Result<F2Vector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(F2Vector::from_raw(self.bits ^ other.bits, self.dim()))
    }
}

impl Add for F2Vector {
    type Output = F2Vector;

    /// Panics on mismatched dimensions; use [`F2Vector::checked_add`] otherwise.
    fn add(self, other: F2Vector) -> F2Vector {
        self.checked_add(other).expect("dimension mismatch in F2Vector addition")
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({})", self.to_bitstring())
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl Serialize for F2Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for F2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        F2Vector::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Incremental row echelon form keyed on the lowest set bit.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<u64>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v & (r & r.wrapping_neg()) != 0 {
                v ^= r;
            }
        }
        v
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let low = v & v.wrapping_neg();
        for r in &mut self.rows {
            if *r & low != 0 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank over F2 of a list of bit words.
pub fn rank_of(words: impl IntoIterator<Item = u64>) -> usize {
    let mut e = Echelon::new();
    for w in words {
        e.insert(w);
    }
    e.rank()
}

/// Basis of `{x : parity(row & x) = 0 for every row}` for `cols` unknowns.
pub fn kernel(rows: &[u64], cols: usize) -> Vec<u64> {
    match solve(rows, &vec![false; rows.len()], cols) {
        Some(sol) => sol.kernel,
        None => unreachable!("homogeneous systems are always solvable"),
    }
}

/// Solution set of a linear system over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: u64,
    pub kernel: Vec<u64>,
}

/// Solves `parity(rows[i] & x) = rhs[i]` for all `i`, with `cols` unknowns.
pub fn solve(rows: &[u64], rhs: &[bool], cols: usize) -> Option<Solution> {
    assert_eq!(rows.len(), rhs.len());
    let mut a: Vec<(u64, bool)> = rows
        .iter()
        .zip(rhs)
        .map(|(&r, &b)| (r & mask(cols), b))
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let bit = 1u64 << col;
        let Some(p) = (rank..a.len()).find(|&i| a[i].0 & bit != 0) else {
            continue;
        };
        a.swap(rank, p);
        let (pr, pb) = a[rank];
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row.0 & bit != 0 {
                row.0 ^= pr;
                row.1 ^= pb;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if a[rank..].iter().any(|&(_, b)| b) {
        return None;
    }
    let mut particular = 0u64;
    for (i, &col) in pivots.iter().enumerate() {
        if a[i].1 {
            particular |= 1 << col;
        }
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = 1u64 << free;
        for (i, &col) in pivots.iter().enumerate() {
            if a[i].0 >> free & 1 == 1 {
                x |= 1 << col;
            }
        }
        kernel.push(x);
    }
    Some(Solution { particular, kernel })
}

/// A dense matrix over F2 with at most 64 columns; row `i` is a bit word.
///
/// Square matrices act on row vectors: row `i` is the image of `e_i`, and
/// `a.mul(&b)` is the map "apply `a`, then `b`".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: Vec<u64>, cols: usize) -> Result<Self> {
        if cols > MAX_DIM {
            return Err(Error::DimensionOutOfRange(cols));
        }
        for &r in &rows {
            if r & !mask(cols) != 0 {
                return Err(Error::BitsOutOfRange { bits: r, dim: cols });
            }
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn zeros(nrows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![0; nrows] }
    }

    pub fn identity(dim: usize) -> Self {
        BitMatrix {
            cols: dim,
            rows: (0..dim).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        if value {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// `v * self` for a row vector `v` of length `nrows`.
    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut v = v;
        while v != 0 {
            let i = v.trailing_zeros() as usize;
            out ^= self.rows[i];
            v &= v - 1;
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        Ok(BitMatrix {
            cols: other.cols,
            rows: self.rows.iter().map(|&r| other.apply(r)).collect(),
        })
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..self.cols {
                if r >> j & 1 == 1 {
                    t.rows[j] |= 1 << i;
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows.iter().copied())
    }

    /// Over F2 the determinant is 1 exactly when the matrix is invertible.
    pub fn determinant(&self) -> bool {
        self.is_square() && self.rank() == self.cols
    }

    /// Basis of the right kernel `{x : self * x^T = 0}`.
    pub fn kernel(&self) -> Vec<u64> {
        kernel(&self.rows, self.cols)
    }

    /// Basis of the left kernel `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Vec<u64> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.determinant() {
            return None;
        }
        let n = self.cols;
        // Column j of the inverse solves self * x = e_j.
        let mut inv_t = Vec::with_capacity(n);
        for j in 0..n {
            let rhs: Vec<bool> = (0..n).map(|i| i == j).collect();
            let sol = solve(&self.rows, &rhs, n)?;
            inv_t.push(sol.particular);
        }
        Some(BitMatrix { cols: n, rows: inv_t }.transpose())
    }

    /// Packs a square matrix of size at most 8 into one word, row `i` in byte `i`.
    pub fn pack(&self) -> Option<u64> {
        if !self.is_square() || self.cols > 8 {
            return None;
        }
        Some(
            self.rows
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &r)| acc | r << (8 * i)),
        )
    }

    pub fn unpack(code: u64, dim: usize) -> BitMatrix {
        assert!(dim <= 8);
        BitMatrix {
            cols: dim,
            rows: (0..dim).map(|i| code >> (8 * i) & 0xff).collect(),
        }
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&r| bits_to_string(r, self.cols))
            .collect()
    }

    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S]) -> Result<BitMatrix> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Bitstring(r.to_string()));
            }
            out.push(bits_from_str(r)?);
        }
        BitMatrix::new(out, cols)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_bitstrings()).finish()
    }
}

/// A finite-dimensional F2-space with an alternating bilinear form `B`.
///
/// The form need not be nondegenerate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    dim: usize,
    gram: Vec<u64>,
}

impl SymplecticSpace {
    /// Builds a space from its Gram matrix rows, `gram[i]` bit `j` = `B(e_i, e_j)`.
    pub fn new(dim: usize, gram: Vec<u64>) -> Result<Self> {
        check_dim(dim)?;
        if gram.len() != dim {
            return Err(Error::GramShape { dim });
        }
        for (i, &row) in gram.iter().enumerate() {
            if row & !mask(dim) != 0 {
                return Err(Error::GramShape { dim });
            }
            if row >> i & 1 == 1 {
                return Err(Error::GramNotAlternating(i));
            }
            for j in 0..i {
                if (row >> j & 1) != (gram[j] >> i & 1) {
                    return Err(Error::GramNotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymplecticSpace { dim, gram })
    }

    pub fn from_bitstrings<S: AsRef<str>>(dim: usize, rows: &[S]) -> Result<Self> {
        check_dim(dim)?;
        if rows.len() != dim || rows.iter().any(|r| r.as_ref().len() != dim) {
            return Err(Error::GramShape { dim });
        }
        let gram = rows
            .iter()
            .map(|r| bits_from_str(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, gram)
    }

    /// `B(e_i, e_j) = 1` iff `|i - j| = 1`.
    pub fn path_form(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let gram = (0..dim)
            .map(|i| {
                let mut row = 0u64;
                if i > 0 {
                    row |= 1 << (i - 1);
                }
                if i + 1 < dim {
                    row |= 1 << (i + 1);
                }
                row
            })
            .collect();
        Self::new(dim, gram)
    }

    /// Orthogonal sum of hyperbolic planes on `(e1, e2), (e3, e4), ...`;
    /// an odd dimension leaves the last coordinate in the radical.
    pub fn hyperbolic(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let gram = (0..dim)
            .map(|i| {
                let partner = i ^ 1;
                if partner < dim {
                    1u64 << partner
                } else {
                    0
                }
            })
            .collect();
        Self::new(dim, gram)
    }

    pub fn zero_form(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Self::new(dim, vec![0; dim])
    }

    /// Uniformly random alternating form.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_dim(dim)?;
        let mut gram = vec![0u64; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                if rng.gen::<bool>() {
                    gram[i] |= 1 << j;
                    gram[j] |= 1 << i;
                }
            }
        }
        Self::new(dim, gram)
    }

    /// The form whose Gram matrix is the adjacency matrix of a graph given
    /// by its neighbour masks.
    pub fn from_adjacency(adj: &[u64]) -> Result<Self> {
        Self::new(adj.len(), adj.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &[u64] {
        &self.gram
    }

    pub fn gram_matrix(&self) -> BitMatrix {
        BitMatrix {
            cols: self.dim,
            rows: self.gram.clone(),
        }
    }

    pub fn gram_bitstrings(&self) -> Vec<String> {
        self.gram.iter().map(|&r| bits_to_string(r, self.dim)).collect()
    }

    pub fn vector(&self, bits: u64) -> Result<F2Vector> {
        F2Vector::new(bits, self.dim)
    }

    pub(crate) fn check(&self, v: F2Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// `u * gram`, the functional `B(u, -)` as a bit word.
    #[inline]
    pub(crate) fn functional(&self, u: u64) -> u64 {
        let mut out = 0;
        let mut u = u;
        while u != 0 {
            out ^= self.gram[u.trailing_zeros() as usize];
            u &= u - 1;
        }
        out
    }

    #[inline]
    pub(crate) fn pair(&self, u: u64, v: u64) -> bool {
        parity(self.functional(u) & v)
    }

    /// `B(u, v)`.
    pub fn form_eval(&self, u: F2Vector, v: F2Vector) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.pair(u.bits(), v.bits()))
    }

    /// A basis of the radical; empty means the form is nondegenerate.
    pub fn radical(&self) -> Vec<F2Vector> {
        kernel(&self.gram, self.dim)
            .into_iter()
            .map(|b| F2Vector::from_raw(b, self.dim))
            .collect()
    }

    pub fn radical_dim(&self) -> usize {
        self.dim - rank_of(self.gram.iter().copied())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical_dim() == 0
    }

    pub fn in_radical(&self, v: F2Vector) -> bool {
        self.functional(v.bits()) == 0
    }

    #[inline]
    pub(crate) fn transvect_bits(&self, alpha: u64, beta: u64) -> u64 {
        if self.pair(beta, alpha) {
            beta ^ alpha
        } else {
            beta
        }
    }

    /// `τ_α(β) = β + B(β, α) α`.
    pub fn transvection_apply(&self, alpha: F2Vector, beta: F2Vector) -> Result<F2Vector> {
        self.check(alpha)?;
        self.check(beta)?;
        Ok(F2Vector::from_raw(
            self.transvect_bits(alpha.bits(), beta.bits()),
            self.dim,
        ))
    }

    /// Matrix of `τ_α`; row `i` is `τ_α(e_i)`.
    pub fn transvection_matrix(&self, alpha: F2Vector) -> Result<BitMatrix> {
        self.check(alpha)?;
        Ok(BitMatrix {
            cols: self.dim,
            rows: (0..self.dim)
                .map(|i| self.transvect_bits(alpha.bits(), 1 << i))
                .collect(),
        })
    }

    /// Whether `m` preserves the form on all pairs of basis vectors.
    pub fn preserves_form(&self, m: &BitMatrix) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                self.pair(m.rows()[i], m.rows()[j]) == (self.gram[i] >> j & 1 == 1)
            })
        })
    }
}

impl fmt::Debug for SymplecticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymplecticSpace")
            .field("dim", &self.dim)
            .field("gram", &self.gram_bitstrings())
            .finish()
    }
}

/// An ordered, duplicate-free list of vectors of one dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorSet {
    dim: usize,
    members: Vec<F2Vector>,
}

impl VectorSet {
    /// Rejects duplicates and the zero vector.
    pub fn new(dim: usize, members: Vec<F2Vector>) -> Result<Self> {
        Self::build(dim, members, false)
    }

    /// Like [`VectorSet::new`] but admits the zero vector.
    pub fn with_zero(dim: usize, members: Vec<F2Vector>) -> Result<Self> {
        Self::build(dim, members, true)
    }

    fn build(dim: usize, members: Vec<F2Vector>, allow_zero: bool) -> Result<Self> {
        check_dim(dim)?;
        let mut seen = std::collections::HashSet::with_capacity(members.len());
        for &m in &members {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            if m.is_zero() && !allow_zero {
                return Err(Error::ZeroMember);
            }
            if !seen.insert(m.bits()) {
                return Err(Error::DuplicateMember(m.to_bitstring()));
            }
        }
        Ok(VectorSet { dim, members })
    }

    pub fn from_bits(dim: usize, bits: &[u64]) -> Result<Self> {
        let members = bits
            .iter()
            .map(|&b| F2Vector::new(b, dim))
            .collect::<Result<Vec<_>>>()?;
        Self::with_zero(dim, members)
    }

    pub fn parse<S: AsRef<str>>(dim: usize, items: &[S]) -> Result<Self> {
        let members = items
            .iter()
            .map(|s| {
                let v = F2Vector::parse(s.as_ref())?;
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.dim(),
                    });
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, members)
    }

    /// The standard basis `e_1, ..., e_dim`.
    pub fn standard_basis(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Self::new(
            dim,
            (0..dim).map(|i| F2Vector::from_raw(1 << i, dim)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[F2Vector] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = F2Vector> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, v: F2Vector) -> bool {
        self.members.contains(&v)
    }

    pub fn index_of(&self, v: F2Vector) -> Option<usize> {
        self.members.iter().position(|&m| m == v)
    }

    pub fn bits(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.bits()).collect()
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        self.members.iter().map(|m| m.to_bitstring()).collect()
    }

    pub fn rank(&self) -> usize {
        rank_of(self.members.iter().map(|m| m.bits()))
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.len()
    }

    pub fn spans(&self) -> bool {
        self.rank() == self.dim
    }

    /// Same members as `self` minus the one at `index`.
    pub fn without(&self, index: usize) -> VectorSet {
        let mut members = self.members.clone();
        members.remove(index);
        VectorSet { dim: self.dim, members }
    }

    /// Appends `v`, keeping the duplicate-free invariant.
    pub fn with(&self, v: F2Vector) -> Result<VectorSet> {
        let mut members = self.members.clone();
        members.push(v);
        Self::with_zero(self.dim, members)
    }

    /// First member lying in the radical of `space`, if any.
    pub fn radical_member(&self, space: &SymplecticSpace) -> Option<F2Vector> {
        self.members.iter().copied().find(|&m| space.in_radical(m))
    }
}

impl fmt::Debug for VectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_bitstrings()).finish()
    }
}

/// Rank of a set, as a free function.
pub fn rank(set: &VectorSet) -> usize {
    set.rank()
}

pub fn is_independent(set: &VectorSet) -> bool {
    set.is_independent()
}

pub fn spans(set: &VectorSet) -> bool {
    set.spans()
}
