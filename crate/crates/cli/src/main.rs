use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use veltman::families::{self, no_fixed_point_scan, PaperFamily};
use veltman::fixpoint::{fixed_point, verify_fixed_point};
use veltman::frame::FrameProperty;
use veltman::io::{model_to_json, parse_frame, parse_model, to_dot};
use veltman::semantics::{holds, truth_set};
use veltman::suite::{run_suite, SuiteOptions};
use veltman::{lookup, parse, Engine, Formula, Logic, Model, Report, SearchBudget};

const CONFIRMED: u8 = 0;
const REFUTED: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "veltman",
    version,
    about = "Model checking and fixed points for sublogics of IL"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its core form.
    Parse { formula: String },
    /// Evaluate a formula in a model file.
    CheckModel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        world: Option<String>,
    },
    /// Check a frame file against a logic's frame conditions.
    CheckFrame {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        logic: String,
    },
    /// Synthesize a fixed point, optionally verifying it.
    Fixpoint {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        formula: String,
        #[arg(long = "var")]
        var: String,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search for a counter-model.
    Refute {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the witness as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the witness as a model file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, check or scan one of the counter-model families.
    Paper {
        #[arg(long)]
        figure: u8,
        /// Truncation index.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, conflicts_with = "scan")]
        check: bool,
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 2, requires = "scan")]
        depth: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the semantic theorem suite.
    Suite {
        #[arg(long = "name", num_args = 1..)]
        names: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Omit wall times so output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    #[arg(long, default_value_t = 1 << 16)]
    max_valuations: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Enumerate,
    Sat,
}

impl SearchArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_worlds: self.max_size,
            max_valuations: self.max_valuations,
            sampling_seed: self.seed,
            engine: match self.engine {
                EngineArg::Auto => Engine::Auto,
                EngineArg::Enumerate => Engine::Enumerate,
                EngineArg::Sat => Engine::Symbolic,
            },
        }
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Parse { formula } => cmd_parse(&formula),
        Command::CheckModel { model, formula, world } => cmd_check_model(&model, &formula, world.as_deref()),
        Command::CheckFrame { frame, logic } => cmd_check_frame(&frame, &logic),
        Command::Fixpoint {
            logic,
            formula,
            var,
            verify,
            search,
        } => cmd_fixpoint(&logic, &formula, &var, verify, &search),
        Command::Refute {
            logic,
            formula,
            search,
            dot,
            out,
        } => cmd_refute(&logic, &formula, &search, dot.as_deref(), out.as_deref()),
        Command::Paper {
            figure,
            n,
            check,
            scan,
            depth,
            dot,
            out,
        } => cmd_paper(figure, n, check, scan, depth, dot.as_deref(), out.as_deref()),
        Command::Suite {
            names,
            max_size,
            seed,
            instances,
            no_timing,
        } => cmd_suite(&names, max_size, seed, instances, !no_timing),
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure(format!("{e}\n  {text}\n  {}^", " ".repeat(e.offset()))))
}

fn logic(name: &str) -> Result<Logic, Failure> {
    Ok(lookup(name)?)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn cmd_parse(text: &str) -> Outcome {
    let f = formula(text)?;
    println!("core: {}", f.render());
    println!("pretty: {}", f.render_pretty());
    let vars: Vec<String> = f.variables().iter().map(|v| v.to_string()).collect();
    println!("variables: {{{}}}", vars.join(", "));
    println!("depth: {}", f.depth());
    Ok(CONFIRMED)
}

fn truth_line(m: &Model, f: &Formula) -> String {
    let set = truth_set(m, f);
    let worlds: Vec<&str> = set.ones().map(|w| m.frame.name(w)).collect();
    format!("{{{}}}", worlds.join(", "))
}

fn cmd_check_model(path: &Path, text: &str, world: Option<&str>) -> Outcome {
    let m = parse_model(&read(path)?)?;
    let f = formula(text)?;
    match world {
        Some(name) => {
            let w = m
                .frame
                .world(name)
                .ok_or_else(|| Failure(format!("unknown world {name}")))?;
            let value = holds(&m, w, &f)?;
            println!("{name} {} {}", if value { "|=" } else { "|/=" }, f.render());
            Ok(if value { CONFIRMED } else { REFUTED })
        }
        None => {
            let set = truth_set(&m, &f);
            println!("true at: {}", truth_line(&m, &f));
            let valid = set.count_ones(..) == m.frame.len();
            println!("valid in model: {valid}");
            Ok(if valid { CONFIRMED } else { REFUTED })
        }
    }
}

fn cmd_check_frame(path: &Path, name: &str) -> Outcome {
    let frame = parse_frame(&read(path)?)?;
    let l = logic(name)?;
    for p in FrameProperty::ALL.into_iter().filter(|p| *p != FrameProperty::Base) {
        println!("{:<4} {}", p.name(), frame.check(p));
    }
    let ok = l.frame_class_check(&frame);
    println!("{} frame: {ok}", l.name);
    Ok(if ok { CONFIRMED } else { REFUTED })
}

fn print_report(r: &Report) {
    println!("{}", r.status);
    println!("frames checked: {} [{}]", r.frames_checked, r.coverage());
    if let Some(w) = &r.witness {
        println!("witness world: {}", w.world_name());
        println!("witness model: {}", model_to_json(&w.model));
    }
}

fn cmd_fixpoint(name: &str, text: &str, var: &str, verify: bool, search: &SearchArgs) -> Outcome {
    let l = logic(name)?;
    let a = formula(text)?;
    let result = fixed_point(&l, &a, var)?;
    println!("{}", result.fixpoint.render());
    for step in &result.trace {
        println!("  {:<11} {} in {}", step.rule, step.subproblem.render(), step.var);
    }
    if !verify {
        return Ok(CONFIRMED);
    }
    let budget = search.budget();
    let report = verify_fixed_point(&l, &a, var, &result.fixpoint, &budget, &[])?;
    print_report(&report);
    Ok(if report.is_refuted() { REFUTED } else { CONFIRMED })
}

fn export(m: &Model, dot: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    if let Some(p) = dot {
        write(p, &to_dot(m))?;
    }
    if let Some(p) = out {
        write(p, &model_to_json(m))?;
    }
    Ok(())
}

fn cmd_refute(name: &str, text: &str, search: &SearchArgs, dot: Option<&Path>, out: Option<&Path>) -> Outcome {
    let l = logic(name)?;
    let f = formula(text)?;
    let budget = search.budget();
    let report = veltman::search(&l, &f, &budget)?;
    if let Some(s) = report.sampling {
        println!("sampling seed: {}", s.seed);
    }
    print_report(&report);
    match &report.witness {
        Some(w) => {
            export(&w.model, dot, out)?;
            Ok(REFUTED)
        }
        None => Ok(CONFIRMED),
    }
}

fn check_line(label: &str, ok: bool) -> bool {
    println!("{:<5} {label}", if ok { "ok" } else { "FAIL" });
    ok
}

fn check_figure(family: PaperFamily, m: &Model, n: usize) -> Result<bool, Failure> {
    let mut ok = true;
    let props: &[(FrameProperty, bool)] = match family {
        PaperFamily::Fig2Ufp => &[(FrameProperty::J1, true), (FrameProperty::J5, true)],
        PaperFamily::Fig3Cl => &[(FrameProperty::J1, true), (FrameProperty::J2plus, true)],
        PaperFamily::Fig4J1J5 => &[
            (FrameProperty::J1, true),
            (FrameProperty::J5, true),
            (FrameProperty::J4plus, false),
        ],
        PaperFamily::Fig5Fpp => &[
            (FrameProperty::J1, true),
            (FrameProperty::J4plus, true),
            (FrameProperty::J5, true),
        ],
    };
    for &(p, expected) in props {
        let verb = if expected { "holds" } else { "fails" };
        ok &= check_line(&format!("{} {verb}", p.name()), m.frame.check(p) == expected);
    }
    if family == PaperFamily::Fig2Ufp {
        let w = m.frame.world("w").expect("named world");
        let eq = |v: &str| {
            let x = Formula::var(v);
            Formula::boxdot(Formula::iff(x.clone(), Formula::rhd(Formula::top(), Formula::not(x))))
        };
        let differ = Formula::not(Formula::iff(Formula::var("p"), Formula::var("q")));
        for (label, f) in [
            ("w |= ⊡(p <-> true |> ~p)", eq("p")),
            ("w |= ⊡(q <-> true |> ~q)", eq("q")),
            ("w |= ~(p <-> q)", differ),
        ] {
            ok &= check_line(label, holds(m, w, &f)?);
        }
    } else {
        let logic = family.logic();
        ok &= check_line(
            &format!("{} frame at N={n}", logic.name),
            logic.frame_class_check(&m.frame),
        );
    }
    Ok(ok)
}

fn cmd_paper(
    figure: u8,
    n: usize,
    check: bool,
    scan: bool,
    depth: usize,
    dot: Option<&Path>,
    out: Option<&Path>,
) -> Outcome {
    let family = PaperFamily::from_figure(figure)?;
    let m = families::build(family, n)?;
    export(&m, dot, out)?;
    if check {
        let ok = check_figure(family, &m, n)?;
        return Ok(if ok { CONFIRMED } else { REFUTED });
    }
    if scan {
        let shape = family
            .shape()
            .ok_or_else(|| Failure(format!("{family} has no fixed-point scan")))?;
        let report = no_fixed_point_scan(family, shape, n, depth)?;
        println!("{family}: {shape}, N={n}, depth={depth}, probes={}", report.probes);
        for c in &report.candidates {
            match &c.failure {
                Some(w) => println!("  fails at {w:<4} {}", c.formula.render()),
                None => println!("  SURVIVES     {}", c.formula.render()),
            }
        }
        let total = report.candidates.len();
        let refuted = total - report.survivors().count();
        println!("refuted {refuted}/{total}");
        println!("unstable on tail window: {}", report.unstable().count());
        return Ok(if report.all_refuted() { CONFIRMED } else { REFUTED });
    }
    if dot.is_none() && out.is_none() {
        println!("{}", model_to_json(&m));
    }
    Ok(CONFIRMED)
}

fn cmd_suite(names: &[String], max_size: usize, seed: u64, instances: usize, timing: bool) -> Outcome {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let budget = SearchBudget::new(max_size);
    let opts = SuiteOptions { instances, seed };
    println!("seed={seed} max-size={max_size} instances={instances}");
    let reports = run_suite(&names, &budget, &opts)?;
    let mut ok = true;
    for r in &reports {
        println!("{}", r.line(timing));
        println!("  claim: {}", r.entry.claim);
        if let Some(c) = &r.counterexample {
            println!("  formula: {}", c.formula.render());
            if let Some(w) = &c.witness {
                println!("  witness at {}: {}", w.world_name(), model_to_json(&w.model));
            }
        }
        ok &= r.passed();
    }
    Ok(if ok { CONFIRMED } else { REFUTED })
}
