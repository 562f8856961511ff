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

//! Batch verification suites.
//!
//! Every suite enumerates instances, evaluates the claims under test through
//! independent code paths, and tallies agreements, discrepancies and
//! truncations. Exploratory measurements that are not assertions go into
//! `findings`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::construct::{
    check_lemma42, check_proposition4, dagger_vector, dual_data, extend_with_pendant, lemma41_witnesses,
    EdgeLabeledTree,
};
use crate::error::{Error, Result};
use crate::f2::{rank_of, BitMatrix, Echelon, F2Vector, SymplecticSpace, VectorSet, ORIENTATION};
use crate::graphs::{
    graph_isomorphic, graph_of_set, is_block_graph, is_claw_free, is_claw_free_block_graph, line_graph,
    reconstruct_root_tree, theorem11_conditions, SimpleGraph,
};
use crate::group::{
    factorial, generate_group, groups_equal, is_symmetric_group_with_budget, GroupEnumeration,
    DEFAULT_GROUP_CAP, DEFAULT_SEARCH_BUDGET,
};
use crate::instance::{instance_json, InstanceJson};
use crate::mutation::{equivalence_class, mutate, same_span, CanonicalSet, ClassCaps, MutationMode};
use crate::trees::prufer_decode;

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    /// Largest dimension for the set-enumerating suites.
    pub max_dim: usize,
    /// Random alternating forms per dimension.
    pub random_forms: usize,
    pub seed: u64,
    /// Largest graph order for the graph suite.
    pub max_vertices: usize,
    /// Largest tree order for the tree suite.
    pub max_tree_vertices: usize,
    pub group_cap: usize,
    pub search_budget: u64,
    pub class_caps: ClassCaps,
    pub counterexample_sizes: Vec<usize>,
    pub conjugation_samples: usize,
    pub lemma42_samples: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            max_dim: 4,
            random_forms: 20,
            seed: 0x7a11_5eed,
            max_vertices: 6,
            max_tree_vertices: 8,
            group_cap: DEFAULT_GROUP_CAP,
            search_budget: DEFAULT_SEARCH_BUDGET,
            class_caps: ClassCaps::default(),
            counterexample_sizes: vec![3, 4, 5, 6],
            conjugation_samples: 10_000,
            lemma42_samples: 2_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub description: String,
    pub dump: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub title: String,
    pub detail: String,
    pub data: serde_json::Value,
}

/// Outcome of one suite.
///
/// `agreements + discrepancies.len() + truncations == instances_checked`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instances_checked: u64,
    pub agreements: u64,
    pub discrepancies: Vec<Discrepancy>,
    pub truncations: u64,
    /// Instances outside the hypotheses of the claim, not counted above.
    pub out_of_hypothesis: u64,
    pub findings: Vec<Finding>,
    pub notes: Vec<String>,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            instances_checked: 0,
            agreements: 0,
            discrepancies: Vec::new(),
            truncations: 0,
            out_of_hypothesis: 0,
            findings: Vec::new(),
            notes: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn agree(&mut self) {
        self.instances_checked += 1;
        self.agreements += 1;
    }

    pub fn disagree(&mut self, description: impl Into<String>, dump: serde_json::Value) {
        self.instances_checked += 1;
        self.discrepancies.push(Discrepancy {
            description: description.into(),
            dump,
        });
    }

    pub fn truncate(&mut self) {
        self.instances_checked += 1;
        self.truncations += 1;
    }

    /// Records `ok` as an agreement or a discrepancy.
    pub fn check(&mut self, ok: bool, description: impl FnOnce() -> String, dump: impl FnOnce() -> serde_json::Value) {
        if ok {
            self.agree();
        } else {
            self.disagree(description(), dump());
        }
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.instances_checked += other.instances_checked;
        self.agreements += other.agreements;
        self.discrepancies.extend(other.discrepancies);
        self.truncations += other.truncations;
        self.out_of_hypothesis += other.out_of_hypothesis;
        self.findings.extend(other.findings);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.agreements + self.discrepancies.len() as u64 + self.truncations == self.instances_checked
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.suite);
        let _ = writeln!(
            out,
            "instances {}  agreements {}  discrepancies {}  truncations {}  out-of-hypothesis {}  time {} ms",
            self.instances_checked,
            self.agreements,
            self.discrepancies.len(),
            self.truncations,
            self.out_of_hypothesis,
            self.wall_time_ms
        );
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        if !self.findings.is_empty() {
            let _ = writeln!(out, "  findings:");
            for f in &self.findings {
                let _ = writeln!(out, "    - {}: {}", f.title, f.detail);
            }
        }
        for d in self.discrepancies.iter().take(20) {
            let _ = writeln!(out, "  DISCREPANCY: {}", d.description);
            let _ = writeln!(out, "    {}", d.dump);
        }
        if self.discrepancies.len() > 20 {
            let _ = writeln!(out, "  ... {} more", self.discrepancies.len() - 20);
        }
        out
    }
}

fn timed(suite: &str, body: impl FnOnce(&mut VerificationReport)) -> VerificationReport {
    let mut report = VerificationReport::new(suite);
    body(&mut report);
    report
}

fn finish(mut report: VerificationReport, start: Instant) -> Result<VerificationReport> {
    report.discrepancies.sort_by(|a, b| a.description.cmp(&b.description));
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

/// One form of the enumeration family.
#[derive(Clone, Debug)]
pub struct FormCase {
    pub name: String,
    pub space: SymplecticSpace,
}

/// Path form, hyperbolic sum, and `random` seeded random alternating forms.
pub fn form_family(dim: usize, random: usize, seed: u64) -> Result<Vec<FormCase>> {
    let mut out = vec![
        FormCase {
            name: format!("path{dim}"),
            space: SymplecticSpace::path_form(dim)?,
        },
        FormCase {
            name: format!("hyperbolic{dim}"),
            space: SymplecticSpace::hyperbolic(dim)?,
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (dim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for i in 0..random {
        out.push(FormCase {
            name: format!("random{dim}#{i}"),
            space: SymplecticSpace::random(dim, &mut rng)?,
        });
    }
    Ok(out)
}

fn families(cfg: &HarnessConfig, dims: std::ops::RangeInclusive<usize>) -> Result<Vec<FormCase>> {
    let mut out = Vec::new();
    for d in dims {
        out.extend(form_family(d, cfg.random_forms, cfg.seed)?);
    }
    Ok(out)
}

/// Every nonempty independent set, members in increasing order, optionally
/// skipping radical vectors.
pub fn independent_sets(space: &SymplecticSpace, radical_free: bool) -> Vec<Vec<u64>> {
    let candidates: Vec<u64> = (1..1u64 << space.dim())
        .filter(|&v| !radical_free || space.functional(v) != 0)
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_independent(&candidates, 0, &Echelon::new(), &mut current, &mut out);
    out
}

fn extend_independent(cands: &[u64], from: usize, span: &Echelon, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    for i in from..cands.len() {
        if span.contains(cands[i]) {
            continue;
        }
        let mut next = span.clone();
        next.insert(cands[i]);
        current.push(cands[i]);
        out.push(current.clone());
        extend_independent(cands, i + 1, &next, current, out);
        current.pop();
    }
}

/// Every set of nonzero vectors that is dependent and spans the space.
fn dependent_spanning_sets(space: &SymplecticSpace) -> Vec<Vec<u64>> {
    let d = space.dim();
    let n = (1usize << d) - 1;
    assert!(n <= 20, "exhaustive subset enumeration is limited to dim 4");
    (1u64..1 << n)
        .filter(|mask| mask.count_ones() as usize > d)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect::<Vec<_>>())
        .filter(|bits| rank_of(bits.iter().copied()) == d)
        .collect()
}

fn set_of(space: &SymplecticSpace, bits: &[u64]) -> VectorSet {
    VectorSet::from_bits(space.dim(), bits).expect("enumerated sets are valid")
}

fn dump(space: &SymplecticSpace, set: &VectorSet) -> serde_json::Value {
    serde_json::to_value(instance_json(space, set)).expect("instances serialize")
}

/// The four equivalent conditions for an independent radical-free set,
/// each from its own module, plus the measured order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FourConditions {
    /// `Tv(S)` is a symmetric group (group enumeration).
    pub symmetric_group: bool,
    /// `G(S)` is a claw-free block graph.
    pub claw_free_block_graph: bool,
    /// `G(S)` is the line graph of a tree (reconstruction).
    pub line_graph_of_tree: bool,
    /// Some set in the independent mutation class has a path graph.
    pub path_in_class: bool,
    pub order: usize,
    pub k: Option<usize>,
}

impl FourConditions {
    pub fn agree(&self) -> bool {
        let v = self.symmetric_group;
        self.claw_free_block_graph == v && self.line_graph_of_tree == v && self.path_in_class == v
    }

    pub fn letter_count_holds(&self, n: usize) -> bool {
        !self.claw_free_block_graph
            || (factorial(n + 1) == Some(self.order as u128) && self.k == Some(n + 1))
    }
}

/// Mutation-class answers keyed by canonical set; every member of an
/// exhausted class shares its answer.
#[derive(Default)]
pub struct ClassCache {
    answers: HashMap<CanonicalSet, bool>,
}

impl ClassCache {
    fn path_in_class(&mut self, space: &SymplecticSpace, set: &VectorSet, caps: ClassCaps) -> Result<Option<bool>> {
        let key = CanonicalSet::of(set);
        if let Some(&a) = self.answers.get(&key) {
            return Ok(Some(a));
        }
        let class = equivalence_class(space, set, MutationMode::Independent, caps)?;
        if class.report.truncated {
            return Ok(None);
        }
        let answer = class.report.path_representative.is_some();
        for s in class.sets {
            self.answers.insert(s, answer);
        }
        Ok(Some(answer))
    }
}

/// `None` when a cap or budget cut the computation short.
pub fn four_conditions(
    space: &SymplecticSpace,
    set: &VectorSet,
    cfg: &HarnessConfig,
    cache: &mut ClassCache,
) -> Result<Option<FourConditions>> {
    let group = generate_group(space, set, cfg.group_cap)?;
    if group.is_capped() {
        return Ok(None);
    }
    let cert = match is_symmetric_group_with_budget(&group, cfg.search_budget) {
        Ok(c) => c,
        Err(Error::SearchBudget(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let g = graph_of_set(space, set)?;
    let Some(path_in_class) = cache.path_in_class(space, set, cfg.class_caps)? else {
        return Ok(None);
    };
    Ok(Some(FourConditions {
        symmetric_group: cert.is_some(),
        claw_free_block_graph: is_claw_free_block_graph(&g),
        line_graph_of_tree: reconstruct_root_tree(&g).is_some(),
        path_in_class,
        order: group.order(),
        k: cert.map(|c| c.k),
    }))
}

/// Independent radical-free sets under the form family: the four
/// conditions agree, and the letter count is `|S| + 1` when they hold.
pub fn verify_theorem31(cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = families(cfg, 1..=cfg.max_dim)?;
    let parts: Vec<Result<VerificationReport>> = forms
        .par_iter()
        .map(|form| {
            let mut r = VerificationReport::new("thm31");
            let mut cache = ClassCache::default();
            for bits in independent_sets(&form.space, true) {
                let set = set_of(&form.space, &bits);
                match four_conditions(&form.space, &set, cfg, &mut cache)? {
                    None => r.truncate(),
                    Some(c) => r.check(
                        c.agree() && c.letter_count_holds(set.len()),
                        || format!("{}: conditions {:?}", form.name, c),
                        || dump(&form.space, &set),
                    ),
                }
            }
            Ok(r)
        })
        .collect();
    let mut report = timed("thm31", |report| {
        report.notes.push(format!(
            "dims 1..={}, {} forms (path, hyperbolic, {} random per dim), independent sets without radical members",
            cfg.max_dim,
            forms.len(),
            cfg.random_forms
        ));
    });
    for p in parts {
        report.absorb(p?);
    }
    // A set with a radical member lies outside the hypotheses.
    let sp = SymplecticSpace::path_form(3)?;
    let s = VectorSet::parse(3, &["101", "010"])?;
    let g = generate_group(&sp, &s, cfg.group_cap)?;
    let graph = graph_of_set(&sp, &s)?;
    report.out_of_hypothesis += 1;
    report.findings.push(Finding {
        title: "radical member".into(),
        detail: format!(
            "S = {{e1+e3, e2}} on the dim-3 path form: |Tv(S)| = {} (Sym(2)) while G(S) connected = {}; outside the hypotheses, not a discrepancy",
            g.order(),
            graph.is_connected()
        ),
        data: dump(&sp, &s),
    });
    finish(report, start)
}

/// The dim-`n` path form and `S = I ∪ {e1 + e2}`.
pub fn counterexample_instance(n: usize) -> Result<(SymplecticSpace, VectorSet)> {
    let sp = SymplecticSpace::path_form(n)?;
    let mut members: Vec<F2Vector> = (0..n).map(|i| F2Vector::basis(n, i)).collect::<Result<_>>()?;
    members.push(F2Vector::new(0b11, n)?);
    Ok((sp, VectorSet::new(n, members)?))
}

pub fn reproduce_counterexample(n: usize, cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    if !(3..=7).contains(&n) {
        return Err(Error::Input(format!("counterexample size {n} outside 3..=7")));
    }
    let mut outcome = Ok(());
    let report = timed(&format!("counterexample(n={n})"), |r| {
        outcome = (|| -> Result<()> {
            let (sp, s) = counterexample_instance(n)?;
            let basis = VectorSet::standard_basis(n)?;
            let d = dump(&sp, &s);
            let expect = factorial(n + 1).unwrap() as usize;

            r.check(s.spans(), || "S does not span V".into(), || d.clone());
            let e1 = F2Vector::basis(n, 0)?;
            let moved = mutate(&sp, &s, e1, F2Vector::new(0b11, n)?, MutationMode::Free)?;
            r.check(
                CanonicalSet::of(&moved) == CanonicalSet::of(&basis),
                || "one move does not reach I".into(),
                || d.clone(),
            );
            r.check(graph_of_set(&sp, &basis)?.is_path(), || "G(I) is not a path".into(), || d.clone());

            let group = generate_group(&sp, &s, cfg.group_cap)?;
            r.check(
                !group.is_capped() && group.order() == expect,
                || format!("|Tv(S)| = {}, expected {expect}", group.order()),
                || d.clone(),
            );
            let cert = is_symmetric_group_with_budget(&group, cfg.search_budget)?;
            let k = cert.as_ref().map(|c| c.k);
            r.check(
                k == Some(n + 1) && cert.as_ref().is_some_and(|c| c.verify(&group)),
                || format!("certificate k = {k:?}, expected {}", n + 1),
                || d.clone(),
            );
            let g = graph_of_set(&sp, &s)?;
            r.check(g.is_connected(), || "G(S) is disconnected".into(), || d.clone());
            r.check(is_claw_free(&g), || "G(S) has a claw".into(), || d.clone());
            r.check(!is_block_graph(&g), || "G(S) is a block graph".into(), || d.clone());
            let cond = theorem11_conditions(&g).as_tuple();
            r.check(
                cond == (true, true, false, true),
                || format!("conditions {cond:?}, expected (T, T, F, T)"),
                || d.clone(),
            );

            let control = generate_group(&sp, &basis, cfg.group_cap)?;
            let control_k = is_symmetric_group_with_budget(&control, cfg.search_budget)?.map(|c| c.k);
            r.check(
                is_block_graph(&graph_of_set(&sp, &basis)?) && control_k == Some(n + 1),
                || format!("control I: k = {control_k:?}"),
                || dump(&sp, &basis),
            );
            r.check(groups_equal(&group, &control), || "Tv(S) != Tv(I)".into(), || d.clone());
            r.findings.push(Finding {
                title: format!("counterexample n={n}"),
                detail: format!(
                    "|Tv(S)| = {} = {}!, G(S) claw-free but not a block graph, conditions {:?}",
                    group.order(),
                    n + 1,
                    cond
                ),
                data: json!({ "order": group.order(), "k": k, "instance": d }),
            });
            Ok(())
        })();
    });
    outcome.and_then(|_| finish(report, start))
}

/// Instance counts keyed by (dimension, |S|, |Tv(S)|).
type OrderTally = BTreeMap<(usize, usize, usize), u64>;

/// Letter count `(|S| + 1)!` for independent radical-free sets with a
/// claw-free block graph; dependent and radical cases are measured only.
pub fn verify_lemma33_independent(cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = families(cfg, 1..=cfg.max_dim)?;
    let parts: Vec<Result<(VerificationReport, OrderTally)>> = forms
        .par_iter()
        .map(|form| {
            let sp = &form.space;
            let mut r = VerificationReport::new("lemma33");
            let mut measured = BTreeMap::new();
            for bits in independent_sets(sp, true) {
                let set = set_of(sp, &bits);
                if !is_claw_free_block_graph(&graph_of_set(sp, &set)?) {
                    continue;
                }
                let group = generate_group(sp, &set, cfg.group_cap)?;
                if group.is_capped() {
                    r.truncate();
                    continue;
                }
                let k = match is_symmetric_group_with_budget(&group, cfg.search_budget) {
                    Ok(c) => c.map(|c| c.k),
                    Err(Error::SearchBudget(_)) => {
                        r.truncate();
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let n = set.len();
                r.check(
                    factorial(n + 1) == Some(group.order() as u128) && k == Some(n + 1),
                    || format!("{}: |S| = {n}, |Tv(S)| = {}, k = {k:?}", form.name, group.order()),
                    || dump(sp, &set),
                );
            }
            if sp.dim() <= 4 {
                for bits in dependent_spanning_sets(sp) {
                    let set = set_of(sp, &bits);
                    if !is_claw_free_block_graph(&graph_of_set(sp, &set)?) {
                        continue;
                    }
                    let group = generate_group(sp, &set, cfg.group_cap)?;
                    r.out_of_hypothesis += 1;
                    *measured.entry((sp.dim(), set.len(), group.order())).or_insert(0) += 1;
                }
            }
            Ok((r, measured))
        })
        .collect();
    let mut report = timed("lemma33", |_| {});
    let mut measured = OrderTally::new();
    for p in parts {
        let (r, m) = p?;
        report.absorb(r);
        for (key, count) in m {
            *measured.entry(key).or_insert(0) += count;
        }
    }
    for ((dim, n, order), count) in &measured {
        let predicted = factorial(n + 1).unwrap();
        report.findings.push(Finding {
            title: format!("dependent spanning sets, dim {dim}, |S| = {n}"),
            detail: format!(
                "{count} instances (with multiplicity over forms) with |Tv(S)| = {order}; (|S|+1)! = {predicted}{}",
                if *order as u128 == predicted { "" } else { "  <- differs from (|S|+1)!" }
            ),
            data: json!({ "dim": dim, "size": n, "order": order, "count": count }),
        });
    }

    // Named instances.
    let tri_space = SymplecticSpace::hyperbolic(2)?;
    let tri = VectorSet::parse(2, &["10", "01", "11"])?;
    let tri_group = generate_group(&tri_space, &tri, cfg.group_cap)?;
    let tri_k = is_symmetric_group_with_budget(&tri_group, cfg.search_budget)?.map(|c| c.k);
    report.findings.push(Finding {
        title: "dependent triangle".into(),
        detail: format!(
            "S = {{e1, e2, e1+e2}} in the nondegenerate dim-2 space: G(S) is a claw-free block graph of order 3, |Tv(S)| = {} (k = {:?}), not 4! = 24; S is dependent, outside the independence hypothesis",
            tri_group.order(),
            tri_k
        ),
        data: json!({ "order": tri_group.order(), "k": tri_k, "instance": dump(&tri_space, &tri) }),
    });

    let (sp4, tree4) = EdgeLabeledTree::with_edge_basis(5, (0..4).map(|i| (i, i + 1)).collect())?;
    if let Some(beta) = dagger_vector(&sp4, &tree4, 0)? {
        let (s, _) = extend_with_pendant(&sp4, &tree4, 0, beta)?;
        let g = generate_group(&sp4, &s, cfg.group_cap)?;
        let k = is_symmetric_group_with_budget(&g, cfg.search_budget)?.map(|c| c.k);
        report.findings.push(Finding {
            title: "dependent pendant instance".into(),
            detail: format!(
                "path form dim 4, S = I ∪ {{{beta}}} (|S| = 5): |Tv(S)| = {} (k = {:?}); (|S|+1)! = 720",
                g.order(),
                k
            ),
            data: json!({ "order": g.order(), "k": k, "instance": dump(&sp4, &s) }),
        });
    }

    let sp3 = SymplecticSpace::path_form(3)?;
    let rad = VectorSet::parse(3, &["101"])?;
    let rg = generate_group(&sp3, &rad, cfg.group_cap)?;
    report.findings.push(Finding {
        title: "radical singleton".into(),
        detail: format!(
            "S = {{e1+e3}} on the dim-3 path form: G(S) is a single vertex, |Tv(S)| = {} (a radical direction gives the identity)",
            rg.order()
        ),
        data: json!({ "order": rg.order(), "instance": dump(&sp3, &rad) }),
    });
    finish(report, start)
}

fn check_graph(n: usize, mask: u64, r: &mut VerificationReport) {
    let g = SimpleGraph::from_mask(n, mask);
    let cond = theorem11_conditions(&g);
    let cfbg = is_claw_free_block_graph(&g);
    let root = reconstruct_root_tree(&g);
    let mut problems = Vec::new();
    if cfbg != root.is_some() {
        problems.push(format!("claw-free block graph = {cfbg}, root tree found = {}", root.is_some()));
    }
    if let Some(root) = &root {
        let lg = line_graph(&root.tree).expect("reconstructed roots are trees");
        if !graph_isomorphic(&lg, &g).unwrap_or(false)
            || root.tree.edge_count() != n
            || root.tree.vertex_count() != n + 1
        {
            problems.push("reconstructed tree does not reproduce the graph".into());
        }
    }
    if (cond.connected && cond.at_most_two_components && cond.blocks_complete) != cfbg {
        problems.push(format!("(i)∧(ii)∧(iii) vs claw-free block graph: {:?} vs {cfbg}", cond));
    }
    if cond.connected && cond.at_most_two_components && !cond.block_graph_is_tree {
        problems.push("(i)∧(ii) holds but the block intersection graph is not a tree".into());
    }
    if problems.is_empty() {
        r.agree();
    } else {
        r.disagree(
            format!("graph n={n} mask={mask:#x}: {}", problems.join("; ")),
            serde_json::to_value(g.to_adjacency()).expect("adjacency serializes"),
        );
    }
}

/// All labeled graphs on up to `cfg.max_vertices` vertices.
pub fn verify_graph_lemmas(cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    if cfg.max_vertices > 8 {
        return Err(Error::Input("graph enumeration is limited to 8 vertices".into()));
    }
    let report = timed("graphs", |report| {
        for n in 0..=cfg.max_vertices {
            let pairs = n * n.saturating_sub(1) / 2;
            let part = (0u64..1 << pairs)
                .into_par_iter()
                .fold(
                    || VerificationReport::new("graphs"),
                    |mut r, mask| {
                        check_graph(n, mask, &mut r);
                        r
                    },
                )
                .reduce(
                    || VerificationReport::new("graphs"),
                    |mut a, b| {
                        a.absorb(b);
                        a
                    },
                );
            report.absorb(part);
        }
        report.notes.push(format!(
            "all labeled graphs on 0..={} vertices, exhaustive",
            cfg.max_vertices
        ));
    });
    finish(report, start)
}

fn prufer_code_at(mut index: u64, m: usize) -> Vec<usize> {
    let mut code = vec![0; m - 2];
    for slot in code.iter_mut().rev() {
        *slot = (index % m as u64) as usize;
        index /= m as u64;
    }
    code
}

fn random_invertible<R: Rng>(d: usize, rng: &mut R) -> BitMatrix {
    loop {
        let rows: Vec<u64> = (0..d).map(|_| rng.gen::<u64>() & ((1u64 << d) - 1)).collect();
        let m = BitMatrix::new(rows, d).expect("masked rows");
        if m.determinant() {
            return m;
        }
    }
}

/// The same tree and line-graph form written in a random basis: labels are
/// the rows of `P` and the Gram matrix becomes `P^-1 L P^-T`.
pub fn random_relabel<R: Rng>(space: &SymplecticSpace, tree: &EdgeLabeledTree, rng: &mut R) -> Result<(SymplecticSpace, EdgeLabeledTree)> {
    let d = space.dim();
    let p = random_invertible(d, rng);
    let pinv = p.inverse().expect("invertible");
    let gram = pinv.mul(&space.gram_matrix())?.mul(&pinv.transpose())?;
    let sp = SymplecticSpace::new(d, gram.rows().to_vec())?;
    let labels = p
        .rows()
        .iter()
        .map(|&r| F2Vector::new(r, d))
        .collect::<Result<Vec<_>>>()?;
    let t = EdgeLabeledTree::with_names(tree.tree().labels().to_vec(), tree.edges().to_vec(), labels)?;
    Ok((sp, t))
}

fn tree_identities(space: &SymplecticSpace, tree: &EdgeLabeledTree) -> Result<Option<String>> {
    let even = space.dim() % 2 == 0;
    let w = lemma41_witnesses(space, tree)?;
    if !w.all_equal() || w.radical_zero != even {
        return Ok(Some(format!("witnesses {w:?} with {} edges", space.dim())));
    }
    let dd = dual_data(space, tree)?;
    if !dd.theta_factors() || !dd.lambda_kernel_is_w() || !dd.mu_image_is_even() {
        return Ok(Some("θ = λ∘μ, ker λ = {0, w} or Im μ = even vectors fails".into()));
    }
    Ok(None)
}

fn tree_dump(space: &SymplecticSpace, tree: &EdgeLabeledTree) -> serde_json::Value {
    let mut inst = InstanceJson {
        dim: space.dim(),
        gram: space.gram_bitstrings(),
        set: vec![],
        tree: None,
    };
    inst.tree = Some(crate::instance::TreeJson::from_tree(tree));
    serde_json::to_value(inst).expect("instances serialize")
}

/// Tree identities, non-recognition with two or more extra vectors, and
/// the conclusions for dependent spanning sets.
pub fn verify_section4(cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut outcome: Result<()> = Ok(());
    let report = timed("section4", |report| {
        outcome = (|| -> Result<()> {
            // Every labeled tree, with the edge-basis form and a random re-basing.
            for m in 2..=cfg.max_tree_vertices {
                let count = (m as u64).pow(m as u32 - 2);
                let part = (0..count)
                    .into_par_iter()
                    .map(|idx| -> Result<VerificationReport> {
                        let mut r = VerificationReport::new("section4");
                        let edges = prufer_decode(&prufer_code_at(idx, m))?;
                        let (sp, tree) = EdgeLabeledTree::with_edge_basis(m, edges)?;
                        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (idx << 8) ^ m as u64);
                        let (sp2, tree2) = random_relabel(&sp, &tree, &mut rng)?;
                        for (s, t) in [(&sp, &tree), (&sp2, &tree2)] {
                            match tree_identities(s, t)? {
                                None => r.agree(),
                                Some(msg) => r.disagree(format!("tree m={m} #{idx}: {msg}"), tree_dump(s, t)),
                            }
                        }
                        Ok(r)
                    })
                    .try_reduce(
                        || VerificationReport::new("section4"),
                        |mut a, b| {
                            a.absorb(b);
                            Ok(a)
                        },
                    )?;
                report.absorb(part);
            }
            report.notes.push(format!(
                "tree identities over all labeled trees on 2..={} vertices, edge-basis form and one random basis each",
                cfg.max_tree_vertices
            ));

            lemma42_exhaustive(cfg, report)?;
            lemma42_sampled(cfg, report)?;
            proposition_on_pendant_instances(cfg, report)?;
            proposition_exhaustive(cfg, report)?;
            Ok(())
        })();
    });
    outcome.and_then(|_| finish(report, start))
}

fn lemma42_exhaustive(cfg: &HarnessConfig, report: &mut VerificationReport) -> Result<()> {
    let forms: Vec<FormCase> = form_family(4, cfg.random_forms, cfg.seed)?
        .into_iter()
        .filter(|f| f.space.is_nondegenerate())
        .collect();
    let parts: Vec<Result<VerificationReport>> = forms
        .par_iter()
        .map(|form| {
            let sp = &form.space;
            let mut r = VerificationReport::new("section4");
            for bits in independent_sets(sp, false).into_iter().filter(|b| b.len() == 4) {
                let basis = set_of(sp, &bits);
                if !graph_of_set(sp, &basis)?.is_connected() {
                    continue;
                }
                let others: Vec<F2Vector> = (0u64..16)
                    .filter(|v| !bits.contains(v))
                    .map(|v| F2Vector::new(v, 4))
                    .collect::<Result<_>>()?;
                for i in 0..others.len() {
                    for j in i + 1..others.len() {
                        let pair = [others[i], others[j]];
                        let recognized = check_lemma42(sp, &basis, &pair)?;
                        r.check(
                            !recognized,
                            || format!("{}: extras {:?} recognized", form.name, pair),
                            || dump(sp, &basis),
                        );
                        for &third in &others[j + 1..] {
                            let triple = [others[i], others[j], third];
                            let recognized = check_lemma42(sp, &basis, &triple)?;
                            r.check(
                                !recognized,
                                || format!("{}: extras {:?} recognized", form.name, triple),
                                || dump(sp, &basis),
                            );
                        }
                    }
                }
            }
            Ok(r)
        })
        .collect();
    for p in parts {
        report.absorb(p?);
    }
    report.notes.push(format!(
        "two or more extras: exhaustive over {} nondegenerate dim-4 forms, every basis with connected graph, all pairs and triples",
        forms.len()
    ));
    Ok(())
}

fn lemma42_sampled(cfg: &HarnessConfig, report: &mut VerificationReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x42);
    let mut forms = vec![SymplecticSpace::path_form(6)?, SymplecticSpace::hyperbolic(6)?];
    while forms.len() < 6 {
        let sp = SymplecticSpace::random(6, &mut rng)?;
        if sp.is_nondegenerate() {
            forms.push(sp);
        }
    }
    let mut checked = 0;
    for sp in &forms {
        // Random bases with connected graph, plus the standard one.
        let mut bases = vec![VectorSet::standard_basis(6)?];
        while bases.len() < 5 {
            let p = random_invertible(6, &mut rng);
            let b = VectorSet::from_bits(6, p.rows())?;
            if graph_of_set(sp, &b)?.is_connected() {
                bases.push(b);
            }
        }
        for basis in bases.iter().filter(|b| graph_of_set(sp, b).is_ok_and(|g| g.is_connected())) {
            for _ in 0..cfg.lemma42_samples / 25 {
                let k = rng.gen_range(2..=3);
                let mut extras: Vec<F2Vector> = Vec::new();
                while extras.len() < k {
                    let v = F2Vector::new(rng.gen_range(0..64), 6)?;
                    if !basis.contains(v) && !extras.contains(&v) {
                        extras.push(v);
                    }
                }
                let recognized = check_lemma42(sp, basis, &extras)?;
                report.check(
                    !recognized,
                    || format!("dim 6: extras {extras:?} recognized"),
                    || dump(sp, basis),
                );
                checked += 1;
            }
        }
    }
    report.notes.push(format!("two or more extras: {checked} seeded samples at dim 6"));
    Ok(())
}

fn proposition_on_pendant_instances(cfg: &HarnessConfig, report: &mut VerificationReport) -> Result<()> {
    let mut skipped = 0u64;
    let mut built = 0u64;
    for d in (2..=6).step_by(2).filter(|&d| d < cfg.max_tree_vertices.max(3)) {
        let m = d + 1;
        let count = (m as u64).pow(m as u32 - 2);
        let parts: Vec<Result<(VerificationReport, u64, u64)>> = (0..count)
            .into_par_iter()
            .map(|idx| {
                let mut r = VerificationReport::new("section4");
                let (mut skip, mut made) = (0, 0);
                let edges = prufer_decode(&prufer_code_at(idx, m))?;
                let (sp, tree) = EdgeLabeledTree::with_edge_basis(m, edges)?;
                for u in 0..m {
                    let Some(beta) = dagger_vector(&sp, &tree, u)? else {
                        r.disagree(format!("dim {d}: no pendant vector at vertex {u}"), tree_dump(&sp, &tree));
                        continue;
                    };
                    let (set, ext) = match extend_with_pendant(&sp, &tree, u, beta) {
                        Ok(x) => x,
                        Err(Error::PendantInBasis(_)) => {
                            skip += 1;
                            // Only possible at dimension 2 with u a leaf.
                            r.check(
                                d == 2 && tree.is_leaf(u),
                                || format!("dim {d}: pendant vector at vertex {u} lies in I"),
                                || tree_dump(&sp, &tree),
                            );
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    made += 1;
                    let ok = !set.is_independent()
                        && ext.matches_form(&sp)?
                        && check_proposition4(&sp, &set)?.holds();
                    r.check(
                        ok,
                        || format!("dim {d}: pendant instance at vertex {u} violates the conclusions"),
                        || dump(&sp, &set),
                    );
                }
                Ok((r, skip, made))
            })
            .collect();
        for p in parts {
            let (r, s, b) = p?;
            report.absorb(r);
            skipped += s;
            built += b;
        }
    }
    report.notes.push(format!(
        "pendant construction: {built} dependent instances at dims 2, 4, 6; {skipped} cases where the pendant vector is already in I (dim 2, leaf)"
    ));
    Ok(())
}

fn proposition_exhaustive(cfg: &HarnessConfig, report: &mut VerificationReport) -> Result<()> {
    let forms = families(cfg, 1..=cfg.max_dim.min(4))?;
    let parts: Vec<Result<VerificationReport>> = forms
        .par_iter()
        .map(|form| {
            let sp = &form.space;
            let mut r = VerificationReport::new("section4");
            for bits in dependent_spanning_sets(sp) {
                let set = set_of(sp, &bits);
                if reconstruct_root_tree(&graph_of_set(sp, &set)?).is_none() {
                    continue;
                }
                let c = check_proposition4(sp, &set)?;
                r.check(
                    c.holds(),
                    || format!("{}: conclusions {c:?}", form.name),
                    || dump(sp, &set),
                );
            }
            Ok(r)
        })
        .collect();
    for p in parts {
        report.absorb(p?);
    }
    report.notes.push(format!(
        "conclusions for every dependent spanning set with a tree line graph, {} forms at dims 1..={}",
        forms.len(),
        cfg.max_dim.min(4)
    ));
    Ok(())
}

/// Independent-mode moves keep independence, cardinality, span and the
/// generated group; `τ_{τ_α β} = τ_α τ_β τ_α` on random triples.
pub fn verify_mutation_invariants(cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = families(cfg, 1..=cfg.max_dim.min(4))?;
    let parts: Vec<Result<VerificationReport>> = forms
        .par_iter()
        .map(|form| {
            let sp = &form.space;
            let mut r = VerificationReport::new("mutation");
            let mut groups: HashMap<CanonicalSet, GroupEnumeration> = HashMap::new();
            let mut group_of = |set: &VectorSet| -> Result<GroupEnumeration> {
                let key = CanonicalSet::of(set);
                if let Some(g) = groups.get(&key) {
                    return Ok(g.clone());
                }
                let g = generate_group(sp, set, cfg.group_cap)?;
                groups.insert(key, g.clone());
                Ok(g)
            };
            for bits in independent_sets(sp, false) {
                let set = set_of(sp, &bits);
                let base = group_of(&set)?;
                for &a in set.members() {
                    for &b in set.members() {
                        if a == b {
                            continue;
                        }
                        let out = mutate(sp, &set, a, b, MutationMode::Independent)?;
                        let g = group_of(&out)?;
                        if base.is_capped() || g.is_capped() {
                            r.truncate();
                            continue;
                        }
                        let ok = out.is_independent()
                            && out.len() == set.len()
                            && same_span(&set.bits(), &out.bits())
                            && groups_equal(&base, &g);
                        r.check(ok, || format!("{}: move ({a}, {b})", form.name), || dump(sp, &set));
                    }
                }
            }
            Ok(r)
        })
        .collect();
    let mut report = timed("mutation", |_| {});
    for p in parts {
        report.absorb(p?);
    }
    report.notes.push(format!(
        "every independent-mode move on every independent set, {} forms at dims 1..={}",
        forms.len(),
        cfg.max_dim.min(4)
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0);
    for _ in 0..cfg.conjugation_samples {
        let d = rng.gen_range(2..=8);
        let sp = SymplecticSpace::random(d, &mut rng)?;
        let a = F2Vector::new(rng.gen_range(0..1u64 << d), d)?;
        let b = F2Vector::new(rng.gen_range(0..1u64 << d), d)?;
        let ma = sp.transvection_matrix(a)?;
        let lhs = sp.transvection_matrix(sp.transvection_apply(a, b)?)?;
        let rhs = ma.mul(&sp.transvection_matrix(b)?)?.mul(&ma)?;
        report.check(
            lhs == rhs,
            || format!("conjugation identity fails for α = {a}, β = {b}"),
            || json!({ "dim": d, "gram": sp.gram_bitstrings(), "alpha": a, "beta": b }),
        );
    }
    report.notes.push(format!(
        "conjugation identity on {} random (form, α, β) triples at dims 2..=8",
        cfg.conjugation_samples
    ));
    finish(report, start)
}

/// Every set in the independent class of a set with a claw-free block
/// graph again has a claw-free block graph.
pub fn verify_lemma34(cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = families(cfg, 1..=cfg.max_dim.min(4))?;
    let parts: Vec<Result<VerificationReport>> = forms
        .par_iter()
        .map(|form| {
            let sp = &form.space;
            let mut r = VerificationReport::new("lemma34");
            let mut verdict: HashMap<CanonicalSet, Option<String>> = HashMap::new();
            for bits in independent_sets(sp, false) {
                let set = set_of(sp, &bits);
                if !is_claw_free_block_graph(&graph_of_set(sp, &set)?) {
                    continue;
                }
                let key = CanonicalSet::of(&set);
                if !verdict.contains_key(&key) {
                    let class = equivalence_class(sp, &set, MutationMode::Independent, cfg.class_caps)?;
                    if class.report.truncated {
                        r.truncate();
                        continue;
                    }
                    let mut bad = None;
                    for s in &class.sets {
                        let g = graph_of_set(sp, &s.to_set(sp.dim())?)?;
                        if !is_claw_free_block_graph(&g) {
                            bad = Some(format!("{}: class member {:?} loses the property", form.name, s.bits()));
                            break;
                        }
                    }
                    for s in class.sets {
                        verdict.insert(s, bad.clone());
                    }
                }
                match &verdict[&key] {
                    None => r.agree(),
                    Some(msg) => r.disagree(msg.clone(), dump(sp, &set)),
                }
            }
            Ok(r)
        })
        .collect();
    let mut report = timed("lemma34", |_| {});
    for p in parts {
        report.absorb(p?);
    }
    report.notes.push(format!(
        "independent classes of every independent set with a claw-free block graph, {} forms at dims 1..={}",
        forms.len(),
        cfg.max_dim.min(4)
    ));
    finish(report, start)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem31,
    Counterexample,
    Lemma33,
    Graphs,
    Section4,
    Mutation,
    Lemma34,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Counterexample,
        Suite::Theorem31,
        Suite::Lemma33,
        Suite::Graphs,
        Suite::Section4,
        Suite::Mutation,
        Suite::Lemma34,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem31 => "thm31",
            Suite::Counterexample => "counterexample",
            Suite::Lemma33 => "lemma33",
            Suite::Graphs => "graphs",
            Suite::Section4 => "section4",
            Suite::Mutation => "mutation",
            Suite::Lemma34 => "lemma34",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().copied().find(|x| x.name() == s).map(|x| vec![x])
    }
}

pub fn run_suite(suite: Suite, cfg: &HarnessConfig) -> Result<Vec<VerificationReport>> {
    Ok(match suite {
        Suite::Theorem31 => vec![verify_theorem31(cfg)?],
        Suite::Counterexample => cfg
            .counterexample_sizes
            .iter()
            .map(|&n| reproduce_counterexample(n, cfg))
            .collect::<Result<_>>()?,
        Suite::Lemma33 => vec![verify_lemma33_independent(cfg)?],
        Suite::Graphs => vec![verify_graph_lemmas(cfg)?],
        Suite::Section4 => vec![verify_section4(cfg)?],
        Suite::Mutation => vec![verify_mutation_invariants(cfg)?],
        Suite::Lemma34 => vec![verify_lemma34(cfg)?],
    })
}

pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = format!("# {ORIENTATION}\n");
    for r in reports {
        out.push_str(&r.to_text());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_set_counts() {
        // Number of k-element independent sets of F2^3: 7, 21, 28.
        let sp = SymplecticSpace::zero_form(3).unwrap();
        let sets = independent_sets(&sp, false);
        let mut by_size = [0; 4];
        for s in &sets {
            by_size[s.len()] += 1;
        }
        assert_eq!(by_size, [0, 7, 21, 28]);
        assert!(independent_sets(&sp, true).is_empty());
    }

    #[test]
    fn dependent_spanning_counts_dim2() {
        let sp = SymplecticSpace::hyperbolic(2).unwrap();
        assert_eq!(dependent_spanning_sets(&sp), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn report_bookkeeping() {
        let mut r = VerificationReport::new("x");
        r.agree();
        r.truncate();
        r.disagree("bad", json!(null));
        assert!(r.is_consistent());
        assert!(!r.passed());
        assert!(r.to_text().contains("DISCREPANCY: bad"));
    }

    #[test]
    fn form_family_is_seeded() {
        let a = form_family(4, 3, 7).unwrap();
        let b = form_family(4, 3, 7).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.iter().zip(&b).all(|(x, y)| x.space == y.space));
    }

    #[test]
    fn prufer_indices_cover_codes() {
        let codes: Vec<_> = (0..16).map(|i| prufer_code_at(i, 4)).collect();
        assert_eq!(codes, crate::trees::all_prufer_codes(4).collect::<Vec<_>>());
    }

    #[test]
    fn random_relabel_keeps_line_graph() {
        let (sp, t) = EdgeLabeledTree::with_edge_basis(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (sp2, t2) = random_relabel(&sp, &t, &mut rng).unwrap();
        assert!(t2.matches_form(&sp2).unwrap());
        assert!(tree_identities(&sp2, &t2).unwrap().is_none());
    }

    #[test]
    fn small_counterexample_suite() {
        let r = reproduce_counterexample(3, &HarnessConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.is_consistent());
        assert!(reproduce_counterexample(2, &HarnessConfig::default()).is_err());
    }
}
