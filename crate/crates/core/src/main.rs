//! Command-line front end: label, verify, find-clique, oracle, generate.
//!
//! Exit codes: 0 success, 1 the requested predicate is false (labelling not
//! antimagic, oracle found nothing), 2 usage or parse errors, 3 unmet
//! preconditions (including infeasible generator shapes and search budgets),
//! 4 internal invariant violations.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use antimagic::alternating;
use antimagic::clique::{check_preconditions, find_dominating_cliques, DominatingClique, DEFAULT_SUBSET_BUDGET};
use antimagic::generate::{barrus, precondition_instance, BarrusSpec, PrecondSpec, Target};
use antimagic::graph::Graph;
use antimagic::labelling::{
    format_report, is_c_antimagic_labelling, parse_labelling, vertex_sums, EdgeLabelling,
};
use antimagic::oracle::{brute_force_antimagic, min_c, OracleResult, DEFAULT_EDGE_CAP};
use antimagic::spaced;

#[derive(Parser)]
#[command(name = "antimagic", version, about = "Antimagic edge labellers for graphs with a dominating clique")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Alternating labeller: clique order >= 4, outside degrees bounded by
    /// the minimum clique degree; plain antimagic output.
    T4,
    /// Spaced-pool labeller: clique order >= 3 plus an edge-count bound;
    /// injective output with slack at most 3.
    T5,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Complete core B with loosely attached group A and saturated group C.
    Barrus,
    /// Clique plus random outside edges, repaired to a labeller's
    /// preconditions.
    Precond,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    T4,
    T5,
}

#[derive(Subcommand)]
enum Command {
    /// Label a graph with one of the constructive labellers.
    Label {
        /// Graph file, or - for stdin.
        graph: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Clique members, e.g. "0 1 2 3". Falls back to a "# clique:"
        /// comment in the input, then to an automatic search.
        #[arg(long)]
        clique: Option<String>,
        /// Refuse to run when the method's preconditions fail (t4 only;
        /// t5 always enforces its preconditions).
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a labelling file against a graph for the C-antimagic property.
    Verify {
        /// Allowed slack above the edge count.
        #[arg(long, default_value_t = 0)]
        c: u64,
        /// Graph file, or - for stdin.
        graph: String,
        /// Labelling file, or - for stdin; label output is accepted as is.
        labelling: String,
        #[arg(long)]
        json: bool,
    },
    /// List dominating cliques in lexicographic order.
    FindClique {
        /// Graph file, or - for stdin.
        graph: String,
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        /// Defaults to the vertex count.
        #[arg(long)]
        kmax: Option<usize>,
        /// Cap on candidate subsets visited.
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively search small graphs for a C-antimagic labelling.
    Oracle {
        /// Graph file, or - for stdin.
        graph: String,
        /// Slack to search at.
        #[arg(long, default_value_t = 0)]
        c: u64,
        /// Edge-count cap guarding against factorial blowup.
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
        /// Scan slacks 0..=c-max and report the smallest that works.
        #[arg(long)]
        find_min_c: bool,
        /// Largest slack tried with --find-min-c.
        #[arg(long, default_value_t = 3)]
        c_max: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded instance; the clique rides along as a comment.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// barrus: order of the complete core.
        #[arg(long, default_value_t = 4)]
        b_size: usize,
        /// barrus: vertices hooked onto one random core vertex.
        #[arg(long, default_value_t = 0)]
        a_size: usize,
        /// barrus: vertices adjacent to the whole core.
        #[arg(long, default_value_t = 0)]
        c_size: usize,
        /// barrus: chance of each extra A-to-core edge.
        #[arg(long, default_value_t = 0.0)]
        a_edge_prob: f64,
        /// barrus: chance of each C-to-C edge.
        #[arg(long, default_value_t = 0.0)]
        c_edge_prob: f64,
        /// precond: vertex count.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// precond: clique order (members 0..k).
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// precond: chance of each optional edge.
        #[arg(long, default_value_t = 0.25)]
        extra_edge_prob: f64,
        /// precond: which labeller the instance must satisfy.
        #[arg(long, value_enum, default_value_t = TargetArg::T5)]
        target: TargetArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout. A closed pipe (e.g. piping into `head`) is a normal
/// way for the consumer to stop reading, not an error.
fn emit(text: impl AsRef<str>) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_ref().as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
            Err(Failure { code: 0, message: String::new() })
        }
        Err(e) => Err(fail(2, format!("writing stdout: {e}"))),
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(2, format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(arg).map_err(|e| fail(2, format!("reading {arg}: {e}")))
    }
}

fn parse_graph(text: &str) -> Result<Graph, Failure> {
    text.parse::<Graph>().map_err(|e| fail(2, e))
}

fn parse_member_list(s: &str) -> Result<Vec<usize>, Failure> {
    let members: Result<Vec<usize>, _> = s
        .split(|ch: char| ch.is_whitespace() || ch == ',')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect();
    let members = members.map_err(|e| fail(2, format!("clique list {s:?}: {e}")))?;
    if members.is_empty() {
        return Err(fail(2, "clique list is empty"));
    }
    Ok(members)
}

/// Clique embedded in graph text as a `# clique: ...` comment.
fn embedded_clique(text: &str) -> Option<&str> {
    text.lines().find_map(|line| line.trim().strip_prefix("# clique:"))
}

fn resolve_clique(
    g: &Graph,
    text: &str,
    flag: Option<&str>,
    method: Method,
) -> Result<Vec<usize>, Failure> {
    if let Some(s) = flag {
        return parse_member_list(s);
    }
    if let Some(s) = embedded_clique(text) {
        return parse_member_list(s);
    }
    let k_min = match method {
        Method::T4 => 4,
        Method::T5 => 3,
    };
    if g.n() < k_min {
        return Err(fail(3, format!("graph has {} vertices, fewer than the clique order {k_min} the method needs", g.n())));
    }
    let cliques = find_dominating_cliques(g, k_min, g.n(), DEFAULT_SUBSET_BUDGET)
        .map_err(|e| fail(3, e))?;
    for kq in &cliques {
        let report = check_preconditions(g, kq).map_err(|e| fail(3, e))?;
        let ok = match method {
            Method::T4 => report.t4_ok,
            Method::T5 => report.t5_ok,
        };
        if ok {
            return Ok(kq.members().to_vec());
        }
    }
    Err(fail(3, "no dominating clique satisfying the method's preconditions was found; pass --clique"))
}

fn label_triples(f: &EdgeLabelling) -> Vec<(usize, usize, u64)> {
    f.iter().map(|((u, v), l)| (u, v, l)).collect()
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Label { graph, method, clique, strict, json } => {
            let text = read_input(&graph)?;
            let g = parse_graph(&text)?;
            let members = resolve_clique(&g, &text, clique.as_deref(), method)?;
            let kq = DominatingClique::new(&g, members).map_err(|e| fail(3, e))?;
            match method {
                Method::T4 => run_label_t4(&g, &kq, strict, json),
                Method::T5 => run_label_t5(&g, &kq, json),
            }
        }
        Command::Verify { c, graph, labelling, json } => {
            if graph == "-" && labelling == "-" {
                return Err(fail(2, "only one input may come from stdin"));
            }
            let g = parse_graph(&read_input(&graph)?)?;
            let pairs = parse_labelling(&read_input(&labelling)?).map_err(|e| fail(2, e))?;
            let f = EdgeLabelling::from_pairs(&g, pairs, true).map_err(|e| fail(2, e))?;
            let ok = is_c_antimagic_labelling(&g, &f, c).map_err(|e| fail(4, e))?;
            let sums = vertex_sums(&g, &f, false).map_err(|e| fail(4, e))?;
            if json {
                print_json(&serde_json::json!({
                    "sums": sums,
                    "antimagic": ok,
                    "c": c,
                    "max_label": f.max_label(),
                }))?;
            } else {
                emit(format_report(&sums, ok, c))?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::FindClique { graph, kmin, kmax, budget, json } => {
            let g = parse_graph(&read_input(&graph)?)?;
            let kmax = kmax.unwrap_or_else(|| g.n());
            let cliques = find_dominating_cliques(&g, kmin, kmax, budget).map_err(|e| fail(3, e))?;
            if json {
                let members: Vec<&[usize]> = cliques.iter().map(|kq| kq.members()).collect();
                print_json(&serde_json::json!({ "cliques": members }))?;
            } else {
                for kq in &cliques {
                    emit(format!("{}\n", join(kq.members())))?;
                }
            }
            Ok(0)
        }
        Command::Oracle { graph, c, cap, find_min_c, c_max, json } => {
            let g = parse_graph(&read_input(&graph)?)?;
            let result = if find_min_c {
                min_c(&g, c_max, cap)
            } else {
                brute_force_antimagic(&g, c, cap)
            };
            let result = result.map_err(|e| fail(3, e))?;
            print_oracle(&result, json)?;
            Ok(if result.found { 0 } else { 1 })
        }
        Command::Generate {
            family,
            seed,
            b_size,
            a_size,
            c_size,
            a_edge_prob,
            c_edge_prob,
            n,
            k,
            extra_edge_prob,
            target,
            json,
        } => {
            let inst = match family {
                Family::Barrus => {
                    let spec = BarrusSpec { b_size, a_size, c_size, a_edge_prob, c_edge_prob };
                    barrus(&spec, seed)
                }
                Family::Precond => {
                    let target = match target {
                        TargetArg::T4 => Target::T4,
                        TargetArg::T5 => Target::T5,
                    };
                    let spec = PrecondSpec { n, k, extra_edge_prob, target };
                    precondition_instance(&spec, seed)
                }
            }
            .map_err(|e| fail(3, e))?;
            if json {
                print_json(&serde_json::json!({
                    "n": inst.graph.n(),
                    "m": inst.graph.m(),
                    "edges": inst.graph.edges(),
                    "clique": inst.clique,
                    "seed": seed,
                }))?;
            } else {
                emit(inst.graph.to_edge_list())?;
                emit(format!("# clique: {}\n", join(&inst.clique)))?;
            }
            Ok(0)
        }
    }
}

fn run_label_t4(g: &Graph, kq: &DominatingClique, strict: bool, json: bool) -> Result<u8, Failure> {
    match alternating::label(g, kq, strict) {
        Ok(out) => {
            if json {
                print_json(&serde_json::json!({
                    "method": "t4",
                    "clique": kq.members(),
                    "labels": label_triples(&out.labelling),
                    "sums": out.sums,
                    "antimagic": true,
                    "c": 0,
                    "certificate": out.certificate,
                }))?;
            } else {
                emit(out.labelling.to_lines())?;
                emit(format_report(&out.sums, true, 0))?;
                emit(format!("gamma: {}\n", out.certificate.gamma))?;
            }
            Ok(0)
        }
        Err(alternating::AlternatingError::NotAntimagic { output, conflicts }) => {
            if json {
                print_json(&serde_json::json!({
                    "method": "t4",
                    "clique": kq.members(),
                    "labels": label_triples(&output.labelling),
                    "sums": output.sums,
                    "antimagic": false,
                    "c": 0,
                    "certificate": output.certificate,
                    "conflicts": conflicts,
                }))?;
            } else {
                emit(output.labelling.to_lines())?;
                emit(format_report(&output.sums, false, 0))?;
                emit(format!("gamma: {}\n", output.certificate.gamma))?;
                for (u, v) in &conflicts {
                    emit(format!("conflict: {u} {v}\n"))?;
                }
            }
            Ok(1)
        }
        Err(e @ alternating::AlternatingError::PreconditionsNotMet(_)) => Err(fail(3, e)),
        Err(e @ alternating::AlternatingError::Clique(_)) => Err(fail(3, e)),
        Err(e) => Err(fail(4, e)),
    }
}

fn run_label_t5(g: &Graph, kq: &DominatingClique, json: bool) -> Result<u8, Failure> {
    match spaced::label(g, kq) {
        Ok(out) => {
            if json {
                print_json(&serde_json::json!({
                    "method": "t5",
                    "clique": kq.members(),
                    "labels": label_triples(&out.labelling),
                    "sums": out.sums,
                    "antimagic": true,
                    "c": out.c_used,
                    "swaps": out.trace.swaps,
                    "overflow_label": out.trace.chosen_overflow,
                    "k3_shifted": out.trace.k3_shifted,
                }))?;
            } else {
                emit(out.labelling.to_lines())?;
                emit(format_report(&out.sums, true, out.c_used))?;
                for s in &out.trace.swaps {
                    emit(format!(
                        "swap: position={} up={} {} down={} {}\n",
                        s.position, s.up_edge.0, s.up_edge.1, s.down_edge.0, s.down_edge.1
                    ))?;
                }
                if let Some(t) = out.trace.chosen_overflow {
                    emit(format!("overflow-label: {t}\n"))?;
                }
            }
            Ok(0)
        }
        Err(e @ spaced::SpacedError::PreconditionsNotMet(_)) => Err(fail(3, e)),
        Err(e @ spaced::SpacedError::PoolsInfeasible { .. }) => Err(fail(3, e)),
        Err(e @ spaced::SpacedError::CliqueTooSmall { .. }) => Err(fail(3, e)),
        Err(e @ spaced::SpacedError::Clique(_)) => Err(fail(3, e)),
        Err(e) => Err(fail(4, e)),
    }
}

fn print_oracle(result: &OracleResult, json: bool) -> Result<(), Failure> {
    if json {
        let witness = result.witness.as_ref().map(label_triples);
        print_json(&serde_json::json!({
            "found": result.found,
            "witness": witness,
            "c": result.c_used,
            "search_space": result.search_space_size.to_string(),
        }))
    } else {
        emit(format!("found: {}\n", if result.found { "yes" } else { "no" }))?;
        if let Some(w) = &result.witness {
            emit(w.to_lines())?;
        }
        if let Some(c) = result.c_used {
            emit(format!("c: {c}\n"))?;
        }
        emit(format!("search-space: {}\n", result.search_space_size))
    }
}

fn print_json(value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| fail(4, e))?;
    emit(format!("{text}\n"))
}

fn join(members: &[usize]) -> String {
    members.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
