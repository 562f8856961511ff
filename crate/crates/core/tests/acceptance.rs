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

//! Acceptance gate. Runs each criterion once and prints one line per
//! criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use transvect::f2::{F2Vector, SymplecticSpace, VectorSet};
use transvect::graphs::graph_of_set;
use transvect::graphs::is_claw_free_block_graph;
use transvect::group::{generate_group, is_symmetric_group};
use transvect::harness::{
    reproduce_counterexample, verify_graph_lemmas, verify_lemma33_independent, verify_lemma34,
    verify_mutation_invariants, verify_section4, verify_theorem31, HarnessConfig, VerificationReport,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn clean(r: &VerificationReport) -> bool {
    r.passed() && r.is_consistent() && r.truncations == 0 && r.instances_checked > 0
}

fn summary(r: &VerificationReport) -> String {
    format!(
        "{} instances, {} discrepancies, {} truncations",
        r.instances_checked,
        r.discrepancies.len(),
        r.truncations
    )
}

fn counterexamples(cfg: &HarnessConfig) -> Outcome {
    let mut detail = Vec::new();
    let mut passed = true;
    for n in 3..=6 {
        let r = reproduce_counterexample(n, cfg).expect("counterexample runs");
        passed &= clean(&r) && r.instances_checked == 11;
        detail.push(format!("n={n}: {}", summary(&r)));
        if !r.passed() {
            eprint!("{}", r.to_text());
        }
    }
    Outcome { passed, detail: detail.join("; ") }
}

fn report_outcome(r: VerificationReport) -> Outcome {
    if !clean(&r) {
        eprint!("{}", r.to_text());
    }
    Outcome {
        passed: clean(&r),
        detail: summary(&r),
    }
}

fn graph_criterion(cfg: &HarnessConfig) -> Outcome {
    // Every labeled graph on at most 6 vertices: 1 + 1 + 2 + 8 + 64 + 1024 + 32768.
    let r = verify_graph_lemmas(cfg).expect("graph suite runs");
    let expected = 1 + 1 + 2 + 8 + 64 + 1024 + 32768;
    let mut o = report_outcome(r.clone());
    o.passed &= r.instances_checked == expected;
    o
}

fn triangle_finding(cfg: &HarnessConfig) -> Outcome {
    let sp = SymplecticSpace::hyperbolic(2).unwrap();
    let s = VectorSet::new(
        2,
        vec![
            F2Vector::parse("10").unwrap(),
            F2Vector::parse("01").unwrap(),
            F2Vector::parse("11").unwrap(),
        ],
    )
    .unwrap();
    let g = generate_group(&sp, &s, 1000).unwrap();
    let k = is_symmetric_group(&g).unwrap().map(|c| c.k);
    let graph = graph_of_set(&sp, &s).unwrap();
    let r = verify_lemma33_independent(cfg).expect("letter-count suite runs");
    let reported = r
        .findings
        .iter()
        .any(|f| f.title == "dependent triangle" && f.data["order"] == 6 && f.detail.contains("outside the independence hypothesis"));
    Outcome {
        passed: g.order() == 6
            && k == Some(3)
            && is_claw_free_block_graph(&graph)
            && !s.is_independent()
            && reported
            && clean(&r),
        detail: format!(
            "|Tv(S)| = {}, k = {k:?}, reported = {reported}; independent-set letter count: {}",
            g.order(),
            summary(&r)
        ),
    }
}

fn main() -> ExitCode {
    let cfg = HarnessConfig::default();
    type Criterion = (usize, &'static str, Duration, Box<dyn Fn(&HarnessConfig) -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        (1, "counterexample n=3..6", Duration::from_secs(30), Box::new(counterexamples)),
        (
            2,
            "four-way equivalence, dim <= 4",
            Duration::from_secs(600),
            Box::new(|c| report_outcome(verify_theorem31(c).unwrap())),
        ),
        (
            3,
            "block graph vs root tree, <= 6 vertices",
            Duration::from_secs(300),
            Box::new(graph_criterion),
        ),
        (
            4,
            "structural conditions, <= 6 vertices",
            Duration::from_secs(300),
            Box::new(graph_criterion),
        ),
        (
            5,
            "mutation invariants and conjugation identity",
            Duration::MAX,
            Box::new(|c| report_outcome(verify_mutation_invariants(c).unwrap())),
        ),
        (
            6,
            "class preservation of claw-free block graphs",
            Duration::MAX,
            Box::new(|c| report_outcome(verify_lemma34(c).unwrap())),
        ),
        (
            7,
            "trees, extras and pendant constructions",
            Duration::from_secs(600),
            Box::new(|c| report_outcome(verify_section4(c).unwrap())),
        ),
        (8, "dependent triangle finding", Duration::MAX, Box::new(triangle_finding)),
    ];

    let mut failures = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let mut outcome = run(&cfg);
        let elapsed = start.elapsed();
        if elapsed > limit {
            outcome.passed = false;
            outcome.detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
        }
        if !outcome.passed {
            failures += 1;
        }
        println!(
            "criterion {id} {}: {name} ({:.1}s) {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
