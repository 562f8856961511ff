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

//! `transvect`: command-line front end.
//!
//! Exit status: 0 on success or agreement, 1 when a check finds a
//! discrepancy, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transvect::construct::{dagger_vector, extend_with_pendant, EdgeLabeledTree};
use transvect::f2::{F2Vector, SymplecticSpace, VectorSet, ORIENTATION};
use transvect::graphs::{
    block_decomposition, find_claw, graph_of_set, is_block_graph, is_claw_free, is_claw_free_block_graph,
    reconstruct_root_tree, theorem11_conditions,
};
use transvect::group::{generate_group, is_symmetric_group_with_budget, DEFAULT_GROUP_CAP, DEFAULT_SEARCH_BUDGET};
use transvect::harness::{render_text, run_suite, HarnessConfig, Suite};
use transvect::instance::{Instance, InstanceJson, TreeJson};
use transvect::mutation::{
    apply_move, equivalence_class, mutate, ClassCaps, Move, MoveKind, MutationMode, DEFAULT_MAX_MOVES,
    DEFAULT_MAX_SETS,
};
use transvect::Error;

#[derive(Parser, Debug)]
#[command(name = "transvect", version, about = "Transvection groups over F2 and their graphs")]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest group to enumerate.
    #[arg(long, global = true, env = "TRANSVECT_GROUP_CAP", default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
    /// Node budget of the symmetric-group search.
    #[arg(long, global = true, env = "TRANSVECT_SEARCH_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: u64,
    /// Largest mutation class to explore.
    #[arg(long, global = true, env = "TRANSVECT_MAX_SETS", default_value_t = DEFAULT_MAX_SETS)]
    max_sets: usize,
    /// Move budget of a mutation class search.
    #[arg(long, global = true, env = "TRANSVECT_MAX_MOVES", default_value_t = DEFAULT_MAX_MOVES)]
    max_moves: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph predicates and structural conditions of G(S).
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Order of Tv(S) and the symmetric-group decision.
    Group {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// One move, the mutation class, or a recorded trace.
    Mutate(MutateArgs),
    /// Extend an edge-labeled tree by a pendant edge.
    Construct {
        #[arg(long)]
        tree: PathBuf,
        /// Vertex name or index.
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 0x7a11_5eed)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        random_forms: usize,
        /// Largest graph order for the graph suite.
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Largest tree order for the tree suite.
        #[arg(long, default_value_t = 8)]
        max_tree_vertices: usize,
        #[arg(long)]
        json: bool,
    },
    /// G(S) in DOT.
    ExportDot {
        file: PathBuf,
        /// Emit the reconstructed root tree instead.
        #[arg(long)]
        root_tree: bool,
    },
}

#[derive(Args, Debug)]
struct MutateArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Independent)]
    mode: Mode,
    #[arg(long, requires = "beta", conflicts_with_all = ["class", "replay"])]
    alpha: Option<String>,
    #[arg(long, requires = "alpha")]
    beta: Option<String>,
    /// Explore the whole class and look for a path representative.
    #[arg(long, conflicts_with = "replay")]
    class: bool,
    /// Trace file: a list of [alpha, beta] or [alpha, beta, kind], or an
    /// object with a "move_trace" field.
    #[arg(long)]
    replay: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Free,
    Independent,
}

impl From<Mode> for MutationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Free => MutationMode::Free,
            Mode::Independent => MutationMode::Independent,
        }
    }
}

enum Failure {
    Input(String),
    Discrepancy,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Discrepancy) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let caps = cli.caps;
    match cli.command {
        Command::Classify { file, json } => classify(&file, json),
        Command::Group { file, json } => group(&file, json, caps),
        Command::Mutate(args) => mutate_cmd(args, caps),
        Command::Construct { tree, vertex, json } => construct(&tree, &vertex, json),
        Command::Verify {
            suite,
            max_dim,
            seed,
            random_forms,
            max_vertices,
            max_tree_vertices,
            json,
        } => {
            let suites = Suite::parse(&suite).ok_or_else(|| Failure::Input(format!("unknown suite {suite:?}")))?;
            let cfg = HarnessConfig {
                max_dim,
                seed,
                random_forms,
                max_vertices,
                max_tree_vertices,
                group_cap: caps.group_cap,
                search_budget: caps.search_budget,
                class_caps: ClassCaps {
                    max_sets: caps.max_sets,
                    max_moves: caps.max_moves,
                },
                ..HarnessConfig::default()
            };
            verify(&suites, &cfg, json)
        }
        Command::ExportDot { file, root_tree } => export_dot(&file, root_tree),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Instance, Failure> {
    Ok(Instance::parse(&read(path)?, false)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn header() {
    println!("# {ORIENTATION}");
}

fn classification(space: &SymplecticSpace, set: &VectorSet) -> std::result::Result<Value, Failure> {
    let g = graph_of_set(space, set)?;
    let cond = theorem11_conditions(&g);
    let blocks = block_decomposition(&g);
    let root = reconstruct_root_tree(&g).map(|r| {
        json!({
            "vertices": r.tree.vertex_count(),
            "edges": r.tree.edges(),
            "edge_of_vertex": r.edge_of,
        })
    });
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edges(),
        "connected": g.is_connected(),
        "claw_free": is_claw_free(&g),
        "claw": find_claw(&g).map(|(c, l)| json!({ "centre": c, "leaves": l })),
        "block_graph": is_block_graph(&g),
        "claw_free_block_graph": is_claw_free_block_graph(&g),
        "blocks": blocks.blocks,
        "cut_vertices": blocks.cut_vertices,
        "conditions": [cond.connected, cond.at_most_two_components, cond.blocks_complete, cond.block_graph_is_tree],
        "root_tree": root,
    }))
}

fn tf(b: &Value) -> &'static str {
    if b.as_bool() == Some(true) {
        "T"
    } else {
        "F"
    }
}

fn classify(file: &Path, as_json: bool) -> Outcome {
    let text = read(file)?;
    let inst = Instance::parse(&text, false)?;
    let c = classification(&inst.space, &inst.set)?;
    // A previous `classify --json` output carries its result; compare.
    let previous = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("classification").cloned());
    let reproduced = previous.as_ref().map(|p| *p == c);
    if as_json {
        let mut out = json!({
            "orientation": ORIENTATION,
            "instance": inst.to_json(),
            "classification": c,
        });
        if let Some(r) = reproduced {
            out["reproduced"] = json!(r);
        }
        print_json(&out);
    } else {
        header();
        println!("vertices={} edges={}", c["vertices"], c["edges"].as_array().map_or(0, Vec::len));
        for key in ["connected", "claw_free", "block_graph", "claw_free_block_graph"] {
            println!("{key}={}", c[key]);
        }
        let conds: Vec<&str> = c["conditions"].as_array().unwrap().iter().map(tf).collect();
        println!("conditions=({})", conds.join(","));
        match c["root_tree"].get("edges") {
            Some(edges) => println!("root_tree={edges}"),
            None => println!("root_tree=none"),
        }
        if let Some(r) = reproduced {
            println!("reproduced={r}");
        }
    }
    match reproduced {
        Some(false) => Err(Failure::Discrepancy),
        _ => Ok(()),
    }
}

fn group(file: &Path, as_json: bool, caps: Caps) -> Outcome {
    let inst = load(file)?;
    let g = generate_group(&inst.space, &inst.set, caps.group_cap)?;
    let cert = if g.is_capped() {
        None
    } else {
        match is_symmetric_group_with_budget(&g, caps.search_budget) {
            Ok(c) => Some(c),
            Err(Error::SearchBudget(n)) => {
                eprintln!("symmetric-group search stopped after {n} nodes");
                None
            }
            Err(e) => return Err(e.into()),
        }
    };
    let decided = cert.is_some();
    let cert = cert.flatten();
    if as_json {
        print_json(&json!({
            "orientation": ORIENTATION,
            "instance": inst.to_json(),
            "order": g.order(),
            "capped": g.is_capped(),
            "decided": decided,
            "symmetric": cert.is_some(),
            "k": cert.as_ref().map(|c| c.k),
            "certificate": cert.as_ref().map(|c| c.to_json()),
        }));
    } else {
        header();
        println!("order={}{}", g.order(), if g.is_capped() { " (capped)" } else { "" });
        match (&cert, decided) {
            (Some(c), _) => {
                println!("symmetric=k{}", c.k);
                for (i, m) in c.coxeter_generators.iter().enumerate() {
                    println!("s{} = [{}]", i + 1, m.to_bitstrings().join(" "));
                }
            }
            (None, true) => println!("symmetric=no"),
            (None, false) => println!("symmetric=undecided"),
        }
    }
    Ok(())
}

fn vector(s: &str, dim: usize) -> std::result::Result<F2Vector, Failure> {
    let v = F2Vector::parse(s)?;
    if v.dim() != dim {
        return Err(Failure::Input(format!("{s}: expected {dim} bits")));
    }
    Ok(v)
}

fn trace_json(trace: &[Move]) -> Value {
    trace
        .iter()
        .map(|m| match m.kind {
            MoveKind::Replace => json!([m.alpha, m.beta]),
            kind => json!([m.alpha, m.beta, kind]),
        })
        .collect()
}

fn parse_trace(text: &str, dim: usize) -> std::result::Result<Vec<(F2Vector, F2Vector, Option<MoveKind>)>, Failure> {
    let bad = |what: &str| Failure::Input(format!("malformed trace: {what}"));
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Input(e.to_string()))?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("move_trace")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("no move_trace list"))?,
        _ => return Err(bad("expected a list")),
    };
    list.iter()
        .map(|step| {
            let parts = step.as_array().ok_or_else(|| bad("step is not a list"))?;
            let s = |i: usize| parts.get(i).and_then(Value::as_str).ok_or_else(|| bad("step needs two bitstrings"));
            let kind = match parts.get(2) {
                None => None,
                Some(k) => Some(serde_json::from_value(k.clone()).map_err(|_| bad("unknown move kind"))?),
            };
            if parts.len() > 3 {
                return Err(bad("step has extra fields"));
            }
            Ok((vector(s(0)?, dim)?, vector(s(1)?, dim)?, kind))
        })
        .collect()
}

fn mutate_cmd(args: MutateArgs, caps: Caps) -> Outcome {
    let inst = load(&args.file)?;
    let mode: MutationMode = args.mode.into();
    let dim = inst.space.dim();
    if let (Some(a), Some(b)) = (&args.alpha, &args.beta) {
        let out = mutate(&inst.space, &inst.set, vector(a, dim)?, vector(b, dim)?, mode)?;
        emit_instance(&Instance::new(inst.space.clone(), out), args.json, None);
        return Ok(());
    }
    if let Some(path) = &args.replay {
        let mut set = inst.set.clone();
        for (alpha, beta, kind) in parse_trace(&read(path)?, dim)? {
            set = match kind {
                None => mutate(&inst.space, &set, alpha, beta, mode)?,
                Some(kind) => apply_move(&inst.space, &set, &Move { alpha, beta, kind }, mode)?,
            };
        }
        let g = graph_of_set(&inst.space, &set)?;
        emit_instance(
            &Instance::new(inst.space.clone(), set),
            args.json,
            Some(json!({ "path": g.is_path() })),
        );
        return Ok(());
    }
    if !args.class {
        return Err(Failure::Input("give --alpha/--beta, --class or --replay".into()));
    }
    let class = equivalence_class(
        &inst.space,
        &inst.set,
        mode,
        ClassCaps {
            max_sets: caps.max_sets,
            max_moves: caps.max_moves,
        },
    )?;
    let r = &class.report;
    let rep = match &r.path_representative {
        Some(c) => Some(c.to_set(dim)?.to_bitstrings()),
        None => None,
    };
    let trace = r.move_trace.as_deref().map(trace_json);
    if args.json {
        print_json(&json!({
            "orientation": ORIENTATION,
            "instance": inst.to_json(),
            "mode": mode,
            "class_size": r.class_size,
            "truncated": r.truncated,
            "path_representative": rep,
            "move_trace": trace,
            "saw_cardinality_change": r.saw_cardinality_change,
            "moves_evaluated": r.moves_evaluated,
        }));
    } else {
        header();
        println!("class_size={}{}", r.class_size, if r.truncated { " (truncated)" } else { "" });
        match (&rep, &trace) {
            (Some(rep), Some(trace)) => {
                println!("path_representative=[{}]", rep.join(" "));
                println!("move_trace={trace}");
            }
            _ => println!("path_representative=none"),
        }
        if r.saw_cardinality_change {
            println!("note: the class contains sets of different sizes");
        }
    }
    Ok(())
}

fn emit_instance(inst: &Instance, as_json: bool, extra: Option<Value>) {
    if as_json {
        let mut out = json!({ "orientation": ORIENTATION, "instance": inst.to_json() });
        if let Some(Value::Object(extra)) = extra {
            out.as_object_mut().unwrap().extend(extra);
        }
        print_json(&out);
    } else {
        header();
        println!("set=[{}]", inst.set.to_bitstrings().join(" "));
        if let Some(Value::Object(extra)) = extra {
            for (k, v) in extra {
                println!("{k}={v}");
            }
        }
        println!("{}", serde_json::to_string(&inst.to_json()).expect("instances serialize"));
    }
}

fn load_tree(path: &Path) -> std::result::Result<(SymplecticSpace, EdgeLabeledTree), Failure> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
    if v.get("dim").is_some() || v.get("instance").is_some() {
        let inst = Instance::parse(&text, false)?;
        let tree = inst
            .tree
            .ok_or_else(|| Failure::Input("instance has no \"tree\" block".into()))?;
        return Ok((inst.space, tree));
    }
    let tj: TreeJson = serde_json::from_value(v).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(tj.build(None)?)
}

fn construct(path: &Path, vertex: &str, as_json: bool) -> Outcome {
    let (space, tree) = load_tree(path)?;
    let u = tree
        .vertex_by_name(vertex)
        .or_else(|| vertex.parse::<usize>().ok().filter(|&u| u < tree.vertex_count()))
        .ok_or_else(|| Failure::Input(format!("no tree vertex {vertex:?}")))?;
    let beta = dagger_vector(&space, &tree, u)?
        .ok_or_else(|| Failure::Input(format!("no pendant vector exists at vertex {vertex:?}")))?;
    let (set, extended) = extend_with_pendant(&space, &tree, u, beta)?;
    let inst = InstanceJson {
        tree: Some(TreeJson::from_tree(&extended)),
        ..transvect::instance::instance_json(&space, &set)
    };
    if as_json {
        print_json(&json!({ "orientation": ORIENTATION, "beta": beta, "instance": inst }));
    } else {
        header();
        println!("beta={beta}");
        println!("{}", serde_json::to_string(&inst).expect("instances serialize"));
    }
    Ok(())
}

fn verify(suites: &[Suite], cfg: &HarnessConfig, as_json: bool) -> Outcome {
    let mut reports = Vec::new();
    for &s in suites {
        reports.extend(run_suite(s, cfg)?);
    }
    if as_json {
        print_json(&json!({
            "orientation": ORIENTATION,
            "passed": reports.iter().all(|r| r.passed()),
            "reports": reports,
        }));
    } else {
        print!("{}", render_text(&reports));
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Discrepancy)
    }
}

fn export_dot(file: &Path, root_tree: bool) -> Outcome {
    let inst = load(file)?;
    let g = graph_of_set(&inst.space, &inst.set)?;
    println!("// {ORIENTATION}");
    if root_tree {
        let root = reconstruct_root_tree(&g)
            .ok_or_else(|| Failure::Input("G(S) is not the line graph of a tree".into()))?;
        let mut t = root.tree.clone();
        for v in 0..t.vertex_count() {
            t.set_label(v, format!("t{v}"));
        }
        print!("{}", t.to_dot("root_tree"));
    } else {
        print!("{}", g.to_dot("G"));
    }
    Ok(())
}
