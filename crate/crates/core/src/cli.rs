//! Command-line front end.
//!
//! One executable, seven subcommands, line-oriented key-value reports.
//! Every graph or function the CLI writes uses the canonical text formats
//! from [`crate::digraph`] and [`crate::dynamics`], so outputs can be fed
//! back in unchanged.
//!
//! Exit codes: 0 success, 1 a construction hypothesis failed or a verified
//! bound was missed, 2 unusable input (bad arguments or a file that does
//! not parse), 3 a search budget or state cap was exhausted.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructions::{
    complete_loops_class2, double_cycle_function, gen_family, loops_added_nilpotent,
    nilpotent_3letter, nilpotent_3letter_class2, nilpotent_4letter, primitive_andnet,
    strong_loop_nilpotent, strong_wheel_nilpotent, undirected_class3, universal_class3,
    xor_class2, Construction, ConstructionError, DoubleCycleOutcome, Family,
};
use crate::digraph::{Sign, SignedDigraph};
use crate::dynamics::{report_to_text, Alphabet, DynamicsError, FdsFile, DEFAULT_STATE_CAP};
use crate::oracle::{min_nilpotent_class, Outcome, DEFAULT_BUDGET};

const EXIT_OK: i32 = 0;
const EXIT_CONSTRUCTION: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_RESOURCE: i32 = 3;

/// Certified constructions and exhaustive search for nilpotent dynamics on
/// signed digraphs.
#[derive(Parser)]
#[command(name = "nilpotent", no_binary_name = true, version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a certified nilpotent function on a digraph.
    Construct(ConstructArgs),
    /// Decide nilpotency of a function file and report its class.
    Analyze {
        /// Function file to read.
        #[arg(short = 'f', long = "function")]
        function: PathBuf,
        /// Largest state space the engine may enumerate.
        #[arg(long = "max-states", default_value_t = DEFAULT_STATE_CAP)]
        max_states: u64,
    },
    /// Print the interaction graph of a function file.
    Igraph {
        /// Function file to read.
        #[arg(short = 'f', long = "function")]
        function: PathBuf,
    },
    /// Exhaustively search a digraph for nilpotent functions.
    Oracle {
        /// Digraph file to read.
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Alphabet size the candidate functions range over.
        #[arg(long, default_value_t = 2)]
        alphabet: u8,
        /// Candidates must realize the arc signs, not just the arcs.
        #[arg(long, conflicts_with = "unsigned")]
        signed: bool,
        /// Candidates must realize the arcs; signs are ignored (default).
        #[arg(long)]
        unsigned: bool,
        /// Largest number of candidate functions to examine.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Largest state space the engine may enumerate per candidate.
        #[arg(long = "max-states", default_value_t = DEFAULT_STATE_CAP)]
        max_states: u64,
    },
    /// Generate a digraph from a named family.
    Gen {
        /// Family name: cycle, double_cycle, wheel, tight_full,
        /// tight_general, complete, or complete_loops.
        family: String,
        /// Numeric family parameters, e.g. `double_cycle 1 3`.
        params: Vec<usize>,
        /// Write the graph here instead of standard output.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Print structural facts about a digraph file.
    CheckGraph {
        /// Digraph file to read.
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
    },
    /// Run every catalogued construction and search result at desk scale.
    VerifyTable {
        /// Largest vertex count the scaled instances may use (5..=8).
        #[arg(default_value_t = 6)]
        size_limit: usize,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Method name; see the command help for the list.
    ///
    /// One of: nilpotent_3letter, nilpotent_4letter, nilpotent_3letter_class2,
    /// strong_loop, strong_wheel, primitive, universal_class3,
    /// undirected_class3, loops_added, xor_class2, complete_loops.
    method: String,
    /// Digraph file the function must live on.
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    /// Write the certified function file here.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// Re-analyze the result and fail unless the certified bound holds.
    #[arg(long)]
    verify: bool,
    /// Largest state space `--verify` may enumerate.
    #[arg(long = "max-states", default_value_t = DEFAULT_STATE_CAP)]
    max_states: u64,
}

/// Runs the CLI on `args` (without the binary name) and returns the exit
/// code. All reports go to standard output, diagnostics to standard error.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here with a non-error kind.
            let failed = e.use_stderr();
            let _ = e.print();
            return if failed { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            e.code
        }
    }
}

struct CliError {
    code: i32,
    msg: String,
}

impl CliError {
    fn parse(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_PARSE, msg: msg.into() }
    }

    fn construction(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_CONSTRUCTION, msg: msg.into() }
    }

    fn resource(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_RESOURCE, msg: msg.into() }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> CliError {
        match e {
            // Bad numeric parameters are a usage problem, not a failed
            // hypothesis check.
            ConstructionError::BadParam(_) => CliError::parse(e.to_string()),
            _ => CliError::construction(e.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> CliError {
        match e {
            DynamicsError::CapExceeded { .. } => CliError::resource(e.to_string()),
            _ => CliError::parse(e.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<SignedDigraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    SignedDigraph::parse(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn read_function(path: &Path) -> Result<FdsFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    FdsFile::parse(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Construct(args) => construct(args),
        Cmd::Analyze { function, max_states } => {
            let file = read_function(&function)?;
            let report = file.fds.analyze(max_states)?;
            print!("{}", report_to_text(&report));
            Ok(())
        }
        Cmd::Igraph { function } => {
            let file = read_function(&function)?;
            print!("{}", file.fds.interaction_graph().to_text());
            Ok(())
        }
        Cmd::Oracle { graph, alphabet, signed, unsigned, budget, max_states } => {
            let _ = unsigned;
            if alphabet < 2 {
                return Err(CliError::parse("alphabet needs at least two letters"));
            }
            let g = read_graph(&graph)?;
            let verdict =
                min_nilpotent_class(&g, Alphabet::new(alphabet), signed, budget, max_states)?;
            print!("{}", verdict.to_text());
            if let Some(w) = verdict.witness() {
                print!("{}", FdsFile::plain(w.clone()).to_text());
            }
            match verdict.outcome {
                Outcome::BudgetExceeded { .. } => {
                    Err(CliError::resource("search budget exhausted before a verdict"))
                }
                _ => Ok(()),
            }
        }
        Cmd::Gen { family, params, out } => {
            let g = gen_family(parse_family(&family, &params)?)?;
            emit(out.as_deref(), &g.to_text())
        }
        Cmd::CheckGraph { graph } => {
            let g = read_graph(&graph)?;
            print!("{}", graph_facts(&g));
            Ok(())
        }
        Cmd::VerifyTable { size_limit } => verify_table(size_limit),
    }
}

fn construct(args: ConstructArgs) -> Result<(), CliError> {
    let g = read_graph(&args.graph)?;
    let c = build_by_name(&args.method, &g)?;
    println!("method {}", c.certificate.method);
    println!("bound {}", c.certificate.claimed_bound);
    if args.verify {
        let report = c.fds.analyze(args.max_states)?;
        let class = match (report.nilpotent, report.class) {
            (true, Some(class)) => class,
            _ => {
                return Err(CliError::construction(format!(
                    "method {} produced a non-nilpotent function",
                    c.certificate.method
                )))
            }
        };
        if class > c.certificate.claimed_bound {
            return Err(CliError::construction(format!(
                "class {class} exceeds the certified bound {}",
                c.certificate.claimed_bound
            )));
        }
        println!("class {class}");
    }
    if let Some(out) = &args.out {
        emit(Some(out), &c.into_file().to_text())?;
    }
    Ok(())
}

fn build_by_name(method: &str, g: &SignedDigraph) -> Result<Construction, CliError> {
    let c = match method {
        "nilpotent_3letter" => nilpotent_3letter(g),
        "nilpotent_4letter" => nilpotent_4letter(g),
        "nilpotent_3letter_class2" => nilpotent_3letter_class2(g)?,
        "strong_loop" => strong_loop_nilpotent(g)?,
        "strong_wheel" => strong_wheel_nilpotent(g)?,
        "primitive" => primitive_andnet(g, None)?,
        "universal_class3" => universal_class3(g)?,
        "undirected_class3" => undirected_class3(g)?,
        "loops_added" => loops_added_nilpotent(g)?,
        "xor_class2" => xor_class2(g)?,
        "complete_loops" => {
            let n = g.n();
            let model = gen_family(Family::CompleteLoops(n))?;
            let same = (1..=n)
                .all(|u| (1..=n).all(|v| g.sign(u, v).is_some() == model.sign(u, v).is_some()));
            if !same {
                return Err(CliError::construction(format!(
                    "HYPOTHESIS_FAILED: the graph is not the complete graph \
                     with loops on {n} vertices"
                )));
            }
            complete_loops_class2(n)?
        }
        "double_cycle" => {
            let (l, r) = recognize_double_cycle(g).ok_or_else(|| {
                CliError::construction(
                    "HYPOTHESIS_FAILED: the graph is not a double cycle".to_string(),
                )
            })?;
            match double_cycle_function(l, r)? {
                DoubleCycleOutcome::Function(c) => c,
                DoubleCycleOutcome::NoneExists => {
                    return Err(CliError::construction(format!(
                        "no boolean nilpotent function exists on this double cycle: \
                         {} does not divide {}",
                        l.min(r),
                        l.max(r)
                    )))
                }
            }
        }
        other => return Err(CliError::parse(format!("unknown method `{other}`"))),
    };
    Ok(c)
}

/// Matches `g` against the two-cycles-through-a-vertex shape and returns the
/// cycle lengths. The canonical layout is the one `gen double_cycle` writes:
/// hub 1, first cycle 1..=l, second cycle 1, l+1, ..., l+r-1.
fn recognize_double_cycle(g: &SignedDigraph) -> Option<(usize, usize)> {
    for l in 1..g.n() {
        let r = g.n() + 1 - l;
        if let Ok(model) = gen_family(Family::DoubleCycle(l, r)) {
            let same = (1..=g.n()).all(|u| {
                (1..=g.n()).all(|v| g.sign(u, v).is_some() == model.sign(u, v).is_some())
            });
            if same {
                return Some((l, r));
            }
        }
    }
    None
}

fn parse_family(name: &str, params: &[usize]) -> Result<Family, CliError> {
    let fam = match (name, params) {
        ("cycle", &[n]) => Family::Cycle(n),
        ("double_cycle", &[l, r]) => Family::DoubleCycle(l, r),
        ("wheel", &[m]) => Family::Wheel(m),
        ("tight_full", &[d]) => Family::TightFull(d as u32),
        ("tight_general", &[n]) => Family::TightGeneral(n),
        ("complete", &[n]) => Family::Complete(n),
        ("complete_loops", &[n]) => Family::CompleteLoops(n),
        ("cycle" | "wheel" | "tight_full" | "tight_general" | "complete"
        | "complete_loops", _) => {
            return Err(CliError::parse(format!("family `{name}` takes one parameter")))
        }
        ("double_cycle", _) => {
            return Err(CliError::parse("family `double_cycle` takes two parameters"))
        }
        (other, _) => return Err(CliError::parse(format!("unknown family `{other}`"))),
    };
    Ok(fam)
}

fn graph_facts(g: &SignedDigraph) -> String {
    let n = g.n();
    let mut out = String::new();
    let _ = writeln!(out, "n {n}");
    let _ = writeln!(out, "arcs {}", g.arc_count());
    let _ = writeln!(out, "loops {}", g.loop_vertices().len());
    let _ = writeln!(out, "strong {}", g.is_strong());
    let _ = writeln!(out, "symmetric {}", g.is_symmetric());
    let _ = writeln!(out, "primitive {}", g.is_primitive());
    let min_in = (1..=n).map(|v| g.in_degree(v)).min().unwrap_or(0);
    let max_out = (1..=n).map(|v| g.out_degree(v)).max().unwrap_or(0);
    let _ = writeln!(out, "min_in_degree {min_in}");
    let _ = writeln!(out, "max_out_degree {max_out}");
    let _ = writeln!(out, "initial_components {}", g.initial_components().len());
    if g.is_strong() {
        if let Ok(k) = g.loop_number() {
            let _ = writeln!(out, "loop_number {k}");
        }
    }
    out
}

/// A symmetric loop-less path on `n` vertices, all arc signs positive.
fn symmetric_path(n: usize) -> SignedDigraph {
    let mut arcs = Vec::new();
    for v in 1..n {
        arcs.push((v, v + 1, Sign::Positive));
        arcs.push((v + 1, v, Sign::Positive));
    }
    SignedDigraph::from_arcs(n, &arcs)
}

/// A directed cycle on `n` vertices with alternating arc signs, so every
/// in-arc is essential and monotone.
fn alternating_cycle(n: usize) -> SignedDigraph {
    let arcs: Vec<_> = (1..=n)
        .map(|v| {
            let sign = if v % 2 == 1 { Sign::Positive } else { Sign::Negative };
            (v, v % n + 1, sign)
        })
        .collect();
    SignedDigraph::from_arcs(n, &arcs)
}

/// Runs one construction or search per catalogued result, each on a small
/// concrete instance, and prints a PASS/FAIL line per row. Returns an error
/// (exit code 1) when any row fails.
fn verify_table(size_limit: usize) -> Result<(), CliError> {
    if !(5..=8).contains(&size_limit) {
        return Err(CliError::parse("size limit must be between 5 and 8"));
    }
    let s = size_limit.min(6);
    let mut all = true;
    let mut row = |i: usize, name: &str, res: Result<String, String>| {
        match res {
            Ok(detail) => println!("row {i} PASS {name} {detail}"),
            Err(detail) => {
                all = false;
                println!("row {i} FAIL {name} {detail}");
            }
        }
    };

    // Certified constructions: build, re-analyze, check the bound.
    let built = |c: Result<Construction, ConstructionError>| -> Result<String, String> {
        let c = c.map_err(|e| e.to_string())?;
        let report = c.fds.analyze(DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
        match report.class {
            Some(class) if report.nilpotent && class <= c.certificate.claimed_bound => {
                Ok(format!("class {class} bound {}", c.certificate.claimed_bound))
            }
            _ => Err(format!(
                "class {:?} misses bound {}",
                report.class, c.certificate.claimed_bound
            )),
        }
    };
    // Impossibility results: the exhaustive search must come up empty.
    let absent = |g: &SignedDigraph, signed: bool| -> Result<String, String> {
        let verdict =
            min_nilpotent_class(g, Alphabet::new(2), signed, DEFAULT_BUDGET, DEFAULT_STATE_CAP)
                .map_err(|e| e.to_string())?;
        match verdict.outcome {
            Outcome::NoneExists => Ok("verdict none".to_string()),
            Outcome::Exists { min_class, .. } => Err(format!("found class {min_class}")),
            Outcome::BudgetExceeded { .. } => Err("budget exhausted".to_string()),
        }
    };

    let tight = gen_family(Family::TightGeneral(s)).map_err(CliError::from)?;
    row(1, "four_letter_class2", built(Ok(nilpotent_4letter(&tight))));
    row(2, "three_letter_log", built(Ok(nilpotent_3letter(&tight))));
    row(3, "monotone_signs_class2", built(nilpotent_3letter_class2(&alternating_cycle(s))));

    let c3_pos = gen_family(Family::Cycle(3)).map_err(CliError::from)?;
    row(4, "uniform_cycle_signs", absent(&c3_pos, true));
    row(5, "plain_cycle", absent(&c3_pos, false));
    let c23 = gen_family(Family::DoubleCycle(2, 3)).map_err(CliError::from)?;
    row(6, "double_cycle_nondivisor", absent(&c23, false));

    row(
        7,
        "double_cycle_divisor",
        match double_cycle_function(2, 4) {
            Ok(DoubleCycleOutcome::Function(c)) => built(Ok(c)),
            Ok(DoubleCycleOutcome::NoneExists) => Err("expected a function".to_string()),
            Err(e) => Err(e.to_string()),
        },
    );

    let k4 = gen_family(Family::Complete(4)).map_err(CliError::from)?;
    row(8, "primitive_subgraph", built(primitive_andnet(&k4, None)));
    let c14 = gen_family(Family::DoubleCycle(1, 4)).map_err(CliError::from)?;
    row(9, "strong_with_loop", built(strong_loop_nilpotent(&c14)));
    row(10, "universal_hub", built(universal_class3(&k4)));
    row(11, "symmetric_loopless", built(undirected_class3(&symmetric_path(3))));

    let c4 = gen_family(Family::Cycle(4)).map_err(CliError::from)?;
    row(12, "loops_min_in_two", built(loops_added_nilpotent(&c4)));
    row(13, "loops_symmetric", built(loops_added_nilpotent(&symmetric_path(3))));
    let hub = SignedDigraph::from_arcs(
        4,
        &[
            (1, 2, Sign::Positive),
            (1, 3, Sign::Positive),
            (1, 4, Sign::Positive),
            (2, 1, Sign::Positive),
            (3, 2, Sign::Positive),
            (4, 3, Sign::Positive),
        ],
    );
    row(14, "loops_full_out_hub", built(loops_added_nilpotent(&hub)));
    row(15, "complete_loops", built(complete_loops_class2(4)));

    if all {
        println!("table PASS");
        Ok(())
    } else {
        println!("table FAIL");
        Err(CliError::construction("a table row failed"))
    }
}
