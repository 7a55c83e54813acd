//! `pgg`: solve, verify, reduce, classify and inspect public goods games on graphs.
//!
//! Exit status: 0 when the answer is positive (equilibrium found, profile is
//! an equilibrium, dynamics reached a fixpoint, all checks passed), 1 when it
//! is negative, 2 on any error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pgg_core::experiments::{self, ExperimentReport};
use pgg_core::gadgets::suite::{negative_control, run_contract_suite, SuiteGroup};
use pgg_core::gadgets::{gadget_by_name, GADGET_NAMES};
use pgg_core::reductions::one_in_three::PlacementKind;
use pgg_core::reductions::{
    classify, extract_assignment, reduce_1in3_to_pgg, validate_chain, CnfFormula1in3, Verdict,
};
use pgg_core::solve::{
    br_dynamics, encode_ntpne_cnf, enumerate_ntpne, solve_ntpne, Method, Schedule, Terminal, DEFAULT_EXHAUSTIVE_CAP,
};
use pgg_core::{Graph, Pattern, PggInstance, Profile};

#[derive(Parser)]
#[command(name = "pgg", version, about = "Public goods games on graphs with best-response patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Cnf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    RoundRobin,
    LowestDeviator,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    ZeroOrTwo,
    IsolatedOdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentArg {
    /// 1-in-3 formulas against equilibria of the reduced graphs.
    Reduction,
    /// Equilibria of (G, T) against (double(G), T').
    Double,
    /// Shift-by-one against the Force-1/Add-1 graph family.
    Shift,
    /// Classifier verdicts and chains over all short patterns.
    Classifier,
    /// Exhaustive search against the CNF route.
    Solvers,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a non-trivial pure Nash equilibrium exists.
    Solve {
        /// Graph file: `n m` header, then one `u v` edge per line.
        #[arg(long)]
        graph: PathBuf,
        /// Best-response pattern as a 0/1 string, e.g. `101`.
        #[arg(long)]
        pattern: Pattern,
        #[arg(long, value_enum, default_value = "brute")]
        method: MethodArg,
        /// Largest graph the exhaustive method accepts.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
        /// List up to this many equilibria (exhaustive search) instead of one.
        #[arg(long)]
        all: Option<usize>,
        /// `dimacs` prints the CNF encoding instead of solving.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a profile is a non-trivial pure Nash equilibrium.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: Pattern,
        /// Profile as a 0/1 string with one character per node.
        #[arg(long)]
        profile: Profile,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compile a 1-in-3 formula (DIMACS-like) into an equilibrium instance under `101`.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        /// Write `<out>.graph`, `<out>.labels.json` and `<out>.dot`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Without `--out`: `text` prints the graph, `json` the label map, `dot` the clustered drawing.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also solve the reduced instance and read back an assignment.
        #[arg(long)]
        solve: bool,
    },
    /// Classify a finite pattern and print its validated reduction chain.
    Classify {
        #[arg(long)]
        pattern: Pattern,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a gadget with its ports and witness table.
    Gadget {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(GADGET_NAMES))]
        name: String,
        /// Parameter of `force1` and `add1`.
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run sequential best-response dynamics.
    Dynamics {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: Pattern,
        /// Start profile; all-zero by default.
        #[arg(long)]
        start: Option<Profile>,
        #[arg(long, value_enum, default_value = "lowest-deviator")]
        schedule: ScheduleArg,
        /// Maximum number of single-node updates.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustively check every gadget contract, plus a contract that must fail.
    Selftest {
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a seeded batch experiment against independent oracles.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of instances; each experiment has its own default.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Result of a command: what to print and whether the answer was positive.
struct Outcome {
    output: String,
    positive: bool,
}

impl Outcome {
    fn new(output: String, positive: bool) -> Self {
        Outcome { output, positive }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            print!("{}", o.output);
            ExitCode::from(if o.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Solve {
            graph,
            pattern,
            method,
            cap,
            all,
            format,
            out,
        } => cmd_solve(&graph, pattern, method, cap, all, format, out.as_deref()),
        Command::Verify {
            graph,
            pattern,
            profile,
            format,
        } => cmd_verify(&graph, pattern, &profile, format),
        Command::Reduce { cnf, out, format, solve } => cmd_reduce(&cnf, out.as_deref(), format, solve),
        Command::Classify { pattern, format } => cmd_classify(&pattern, format),
        Command::Gadget { name, m, format, out } => cmd_gadget(&name, m, format, out.as_deref()),
        Command::Dynamics {
            graph,
            pattern,
            start,
            schedule,
            cap,
            format,
        } => cmd_dynamics(&graph, pattern, start, schedule, cap, format),
        Command::Selftest { group, cap, format } => cmd_selftest(group, cap, format),
        Command::Experiment {
            name,
            seed,
            trials,
            format,
        } => cmd_experiment(name, seed, trials, format),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_text(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn require_format(cmd: &str, format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        bail!("{cmd} does not support --format {name}");
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes to `out` if given; otherwise returns the text for standard output.
fn emit(out: Option<&Path>, content: String) -> Result<String> {
    match out {
        Some(p) => {
            fs::write(p, content).with_context(|| format!("writing {}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(content),
    }
}

fn cmd_solve(
    graph: &Path,
    pattern: Pattern,
    method: MethodArg,
    cap: usize,
    all: Option<usize>,
    format: Format,
    out: Option<&Path>,
) -> Result<Outcome> {
    require_format("solve", format, &[Format::Text, Format::Json, Format::Dimacs])?;
    let inst = PggInstance::new(read_graph(graph)?, pattern);
    if format == Format::Dimacs {
        return Ok(Outcome::new(emit(out, encode_ntpne_cnf(&inst).to_dimacs())?, true));
    }
    if let Some(limit) = all {
        let found = enumerate_ntpne(&inst, limit, cap)?;
        let text = match format {
            Format::Json => json(&serde_json::json!({
                "status": if found.is_empty() { "NONE" } else { "FOUND" },
                "count": found.len(),
                "limit": limit,
                "witnesses": found,
            }))?,
            _ => {
                let mut s = format!(
                    "{} {} equilibria (limit {limit})\n",
                    if found.is_empty() { "NONE" } else { "FOUND" },
                    found.len()
                );
                for w in &found {
                    let _ = writeln!(s, "{w}");
                }
                s
            }
        };
        return Ok(Outcome::new(emit(out, text)?, !found.is_empty()));
    }
    let method = match method {
        MethodArg::Brute => Method::Brute,
        MethodArg::Cnf => Method::Cnf,
    };
    let r = solve_ntpne(&inst, method, cap)?;
    let text = match format {
        Format::Json => json(&r)?,
        _ => {
            let mut s = match &r.witness {
                Some(w) => format!("FOUND\nwitness {w}\n"),
                None => "NONE\n".to_string(),
            };
            let _ = writeln!(
                s,
                "method {} nodes_explored={} conflicts={} elapsed={:.2?}",
                serde_json::to_value(r.method)?.as_str().unwrap_or("?"),
                r.stats.nodes_explored,
                r.stats.conflicts,
                r.stats.elapsed
            );
            s
        }
    };
    Ok(Outcome::new(emit(out, text)?, r.found()))
}

#[derive(Serialize)]
struct VerifyReport {
    ntpne: bool,
    pne: bool,
    trivial: bool,
    deviator: Option<DeviatorReport>,
}

#[derive(Serialize)]
struct DeviatorReport {
    node: usize,
    plays: bool,
    productive_neighbors: usize,
    best_response: bool,
}

fn cmd_verify(graph: &Path, pattern: Pattern, profile: &Profile, format: Format) -> Result<Outcome> {
    require_format("verify", format, &[Format::Text, Format::Json])?;
    let inst = PggInstance::new(read_graph(graph)?, pattern);
    let deviator = inst
        .first_deviator(profile)?
        .map(|node| -> Result<DeviatorReport> {
            Ok(DeviatorReport {
                node,
                plays: profile.get(node),
                productive_neighbors: pgg_core::productive_neighbors(&inst.graph, profile, node)?,
                best_response: inst.best_response(profile, node)?,
            })
        })
        .transpose()?;
    let report = VerifyReport {
        pne: deviator.is_none(),
        trivial: profile.is_all_zero(),
        ntpne: deviator.is_none() && !profile.is_all_zero(),
        deviator,
    };
    let text = match format {
        Format::Json => json(&report)?,
        _ => match &report.deviator {
            Some(d) => format!(
                "NOT AN EQUILIBRIUM: node {} plays {} but its best response to {} productive neighbors is {}\n",
                d.node, d.plays as u8, d.productive_neighbors, d.best_response as u8
            ),
            None if report.trivial => "TRIVIAL: the all-zero profile is a PNE but not a non-trivial one\n".into(),
            None => "NTPNE: every node best-responds and at least one produces\n".into(),
        },
    };
    Ok(Outcome::new(text, report.ntpne))
}

fn cmd_reduce(cnf: &Path, out: Option<&Path>, format: Format, solve: bool) -> Result<Outcome> {
    require_format("reduce", format, &[Format::Text, Format::Json, Format::Dot])?;
    let text = fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?;
    let f: CnfFormula1in3 = text.parse().with_context(|| format!("parsing formula {}", cnf.display()))?;
    let (inst, lm) = reduce_1in3_to_pgg(&f)?;
    let g = &inst.graph;
    if g.max_degree() > 6 {
        bail!("internal error: reduced graph has max degree {}", g.max_degree());
    }
    let mut summary = format!(
        "reduced {} clauses over {} variables: {} nodes, {} edges, max degree {}\n",
        f.clauses.len(),
        f.num_vars,
        g.n(),
        g.edge_count(),
        g.max_degree()
    );
    let hist: Vec<String> = g
        .degree_histogram()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    let _ = writeln!(summary, "degree histogram {}", hist.join(" "));
    let _ = writeln!(
        summary,
        "gadgets: {} clause, {} copy, {} negation",
        lm.count(|k| matches!(k, PlacementKind::Clause { .. })),
        lm.count(|k| matches!(k, PlacementKind::Copy { .. })),
        lm.count(|k| matches!(k, PlacementKind::Negation { .. }))
    );

    let mut stdout = String::new();
    match out {
        Some(prefix) => {
            let with_ext = |ext: &str| {
                let mut p = prefix.as_os_str().to_owned();
                p.push(ext);
                PathBuf::from(p)
            };
            for (path, content) in [
                (with_ext(".graph"), g.to_text()),
                (with_ext(".labels.json"), json(&lm)?),
                (with_ext(".dot"), lm.to_dot(g)),
            ] {
                fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
                let _ = writeln!(summary, "wrote {}", path.display());
            }
            stdout.push_str(&summary);
        }
        None => {
            // the artifact owns standard output; the summary goes to standard error
            eprint!("{summary}");
            stdout.push_str(&match format {
                Format::Json => json(&lm)?,
                Format::Dot => lm.to_dot(g),
                _ => g.to_text(),
            });
        }
    }

    if !solve {
        return Ok(Outcome::new(stdout, true));
    }
    let r = solve_ntpne(&inst, Method::Cnf, DEFAULT_EXHAUSTIVE_CAP)?;
    let line = match &r.witness {
        Some(w) => {
            let a = extract_assignment(&inst, w, &lm)?;
            let vals: Vec<String> = a.iter().enumerate().map(|(i, &b)| format!("x{}={}", i + 1, b as u8)).collect();
            format!("SATISFIABLE {}\n", vals.join(" "))
        }
        None => "UNSATISFIABLE\n".to_string(),
    };
    if out.is_some() {
        stdout.push_str(&line);
    } else {
        eprint!("{line}");
    }
    Ok(Outcome::new(stdout, r.found()))
}

fn cmd_classify(pattern: &Pattern, format: Format) -> Result<Outcome> {
    require_format("classify", format, &[Format::Text, Format::Json])?;
    let v = classify(pattern);
    let report = v.chain.as_ref().map(|c| validate_chain(pattern, c));
    if let Some(r) = &report {
        if !r.valid {
            bail!("internal error: classifier emitted an invalid chain\n{r}");
        }
    }
    let text = match format {
        Format::Json => json(&v)?,
        _ => {
            let mut s = format!("{} {}\n", v.pattern, serde_json::to_value(v.verdict)?.as_str().unwrap_or("?"));
            if let Some(r) = &report {
                s.push_str(&r.to_string());
            }
            if v.verdict == Verdict::OutOfScopeInfinite {
                s.push_str("infinite patterns are outside the classifier's domain\n");
            }
            s
        }
    };
    Ok(Outcome::new(text, true))
}

fn cmd_gadget(name: &str, m: usize, format: Format, out: Option<&Path>) -> Result<Outcome> {
    require_format("gadget", format, &[Format::Text, Format::Json, Format::Dot])?;
    let g = gadget_by_name(name, m)?;
    let text = match format {
        Format::Json => {
            let mut v = g.witness_table_json();
            v["edge_list"] = serde_json::to_value(g.graph.edges().collect::<Vec<_>>())?;
            json(&v)?
        }
        Format::Dot => g.to_dot(),
        _ => {
            let mut s = format!(
                "# gadget {} ({} nodes, {} edges), design pattern {}\n",
                g.kind,
                g.n(),
                g.graph.edge_count(),
                g.design_pattern
            );
            for (port, id) in &g.ports {
                let _ = writeln!(s, "# port {port} = {id}");
            }
            for (i, n) in g.names.iter().enumerate() {
                let _ = writeln!(s, "# node {i} = {n}");
            }
            s + &g.graph.to_text()
        }
    };
    Ok(Outcome::new(emit(out, text)?, true))
}

fn cmd_dynamics(
    graph: &Path,
    pattern: Pattern,
    start: Option<Profile>,
    schedule: ScheduleArg,
    cap: usize,
    format: Format,
) -> Result<Outcome> {
    require_format("dynamics", format, &[Format::Text, Format::Json])?;
    let inst = PggInstance::new(read_graph(graph)?, pattern);
    let start = start.unwrap_or_else(|| Profile::zeros(inst.n()));
    let schedule = match schedule {
        ScheduleArg::RoundRobin => Schedule::RoundRobin,
        ScheduleArg::LowestDeviator => Schedule::LowestDeviator,
    };
    let trace = br_dynamics(&inst, &start, schedule, cap)?;
    let text = match format {
        Format::Json => json(&trace)?,
        _ => {
            let mut s = format!(
                "{} after {} updates\nfinal {}\n",
                serde_json::to_value(trace.terminal)?.as_str().unwrap_or("?"),
                trace.steps.len(),
                trace.final_profile
            );
            for st in &trace.steps {
                let _ = writeln!(s, "step {}: node {} flips", st.step, st.node);
            }
            s
        }
    };
    Ok(Outcome::new(text, trace.terminal == Terminal::Fixpoint))
}

fn cmd_selftest(group: Option<GroupArg>, cap: usize, format: Format) -> Result<Outcome> {
    require_format("selftest", format, &[Format::Text, Format::Json])?;
    let group = group.map(|g| match g {
        GroupArg::ZeroOrTwo => SuiteGroup::ZeroOrTwo,
        GroupArg::IsolatedOdd => SuiteGroup::IsolatedOdd,
    });
    let reports = run_contract_suite(group, cap)?;
    let control = negative_control().run(cap)?;
    let control_rejected = !control.passed && control.requirements.iter().any(|r| r.counterexample.is_some());
    let all_passed = reports.iter().all(|r| r.passed) && control_rejected;
    let text = match format {
        Format::Json => json(&serde_json::json!({
            "passed": all_passed,
            "contracts": reports,
            "negative_control": control,
        }))?,
        _ => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.to_string());
            }
            let cex = control
                .requirements
                .iter()
                .find_map(|r| r.counterexample.clone())
                .unwrap_or_else(|| "none".into());
            let _ = writeln!(
                s,
                "{} negative control {} rejected (counterexample: {cex})",
                if control_rejected { "PASS" } else { "FAIL" },
                control.contract
            );
            let failed = reports.iter().filter(|r| !r.passed).count();
            let _ = writeln!(
                s,
                "{}: {} contracts, {failed} failed",
                if all_passed { "ALL PASS" } else { "FAILURES" },
                reports.len()
            );
            s
        }
    };
    Ok(Outcome::new(text, all_passed))
}

fn cmd_experiment(name: ExperimentArg, seed: u64, trials: Option<usize>, format: Format) -> Result<Outcome> {
    require_format("experiment", format, &[Format::Text, Format::Json])?;
    let report: ExperimentReport = match name {
        ExperimentArg::Reduction => experiments::theorem1_end_to_end(seed, trials.unwrap_or(200))?,
        ExperimentArg::Double => experiments::double_equivalence(seed, trials.unwrap_or(500))?,
        ExperimentArg::Shift => experiments::shift_equivalence(seed, trials.unwrap_or(50))?,
        ExperimentArg::Classifier => experiments::classifier_totality(seed, 10, trials.unwrap_or(20))?,
        ExperimentArg::Solvers => experiments::solver_cross_validation(seed, trials.unwrap_or(300))?,
    };
    let text = match format {
        Format::Json => json(&report)?,
        _ => format!("{report}\n"),
    };
    Ok(Outcome::new(text, report.passed()))
}
