//! Command-line front end.
//!
//! Exit status: 0 success, 1 refuted (countervaluation on stdout), 2 input
//! error, 3 internal invariant breach. Every emitted derivation is re-checked
//! before it is written.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::check::ProofError;
use crate::cutfree::{cut_elimination, gcf_prove, DecisionResult};
use crate::envelope::{from_json, to_json, Calculus, Conclusion, Derivation};
use crate::formula::{parse, Formula};
use crate::hilbert::{hc_to_nc, nc_to_hc};
use crate::natded::NcDerivation;
use crate::normalforms::{complete, CompletenessResult};
use crate::semantics::{eval, valuation_for_row, Valuation, DEFAULT_MAX_VARS};
use crate::sequent::{big_or, g_to_nc, nc_to_g, GcDerivation, Sequent};

/// Stack for the worker thread; derivations are deep recursive trees.
const STACK_BYTES: usize = 1 << 30;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "propkit", version, about = "Checkable proofs for classical propositional logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it in normal notation.
    Parse { formula: String },
    /// Evaluate a formula under a valuation; unlisted variables are false.
    Eval {
        formula: String,
        #[arg(long = "val", default_value = "")]
        val: String,
    },
    /// Print the truth table of a formula.
    Table { formula: String },
    /// Decide a formula or a sequent.
    #[command(group(ArgGroup::new("input").required(true).args(["formula", "sequent"])))]
    Decide {
        formula: Option<String>,
        /// Sequent such as "p, q => r"; either side may be empty.
        #[arg(long)]
        sequent: Option<String>,
        /// Write the proof of a valid input to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize a derivation of a valid formula.
    Prove {
        formula: String,
        #[arg(long, value_enum, default_value_t = Calculus::Nc)]
        calculus: Calculus,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a derivation file ("-" for stdin) into another calculus.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a cut-free derivation of a derivation file's endsequent.
    CutElim {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a derivation file ("-" for stdin).
    Check { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Nc,
    Hc,
    Gc,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<ProofError> for Failure {
    fn from(e: ProofError) -> Self {
        match e {
            ProofError::PreconditionViolated(c) => Failure::Input(format!("input derivation rejected: {c}")),
            ProofError::Semantics(s) => Failure::Input(s.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut (dyn Read + Send),
    out: &'a mut (dyn Write + Send),
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send), out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
            return code;
        }
    };
    let result = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(STACK_BYTES)
            .spawn_scoped(scope, || {
                let mut io = Io { stdin, out };
                let r = dispatch(cli.command, &mut io);
                let _ = io.out.flush();
                r
            })
            .map(|h| h.join())
    });
    let code = match result {
        Ok(Ok(Ok(code))) => return code,
        Ok(Ok(Err(failure))) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
        Ok(Err(_)) => {
            let _ = writeln!(err, "error: internal invariant breach (worker panicked)");
            EXIT_INTERNAL
        }
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker thread: {e}");
            EXIT_INTERNAL
        }
    };
    let _ = err.flush();
    code
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Outcome {
    match cmd {
        Command::Parse { formula } => {
            let f = formula_arg(&formula)?;
            line(io, &f.to_string())
        }
        Command::Eval { formula, val } => {
            let f = formula_arg(&formula)?;
            let v: Valuation = val.parse().map_err(|e| Failure::Input(format!("{e}")))?;
            line(io, if eval(&v, &f) { "true" } else { "false" })
        }
        Command::Table { formula } => table(&formula_arg(&formula)?, io),
        Command::Decide { formula, sequent, out } => match (formula, sequent) {
            (_, Some(s)) => decide_sequent(&sequent_arg(&s)?, out.as_deref(), io),
            (Some(f), None) => decide_formula(&formula_arg(&f)?, out.as_deref(), io),
            (None, None) => Err(Failure::Input("nothing to decide".into())),
        },
        Command::Prove { formula, calculus, out } => prove(&formula_arg(&formula)?, calculus, out.as_deref(), io),
        Command::Translate { file, to, out } => {
            let d = read_checked(&file, io)?;
            let translated = translate(d, to)?;
            emit(&translated.0, &translated.1, out.as_deref(), io)?;
            Ok(EXIT_OK)
        }
        Command::CutElim { file, out } => {
            let d = read_checked(&file, io)?;
            let g = to_gc(d)?;
            let expected = Conclusion::Sequent(g.sequent.clone());
            let cf = cut_elimination(&g)?;
            emit(&Derivation::Gcf(cf), &expected, out.as_deref(), io)?;
            Ok(EXIT_OK)
        }
        Command::Check { file } => {
            let text = read_input(&file, io)?;
            let d = from_json(&text).map_err(|e| Failure::Input(e.to_string()))?;
            let c = d.check().map_err(|e| Failure::Input(format!("{} derivation rejected: {e}", d.calculus())))?;
            line(io, &format!("OK {} {c}", d.calculus()))
        }
    }
}

fn line(io: &mut Io<'_>, s: &str) -> Outcome {
    writeln!(io.out, "{s}").map_err(|e| Failure::Input(format!("cannot write output: {e}")))?;
    Ok(EXIT_OK)
}

fn formula_arg(s: &str) -> Result<Formula, Failure> {
    parse(s).map_err(|e| Failure::Input(format!("cannot parse formula {s:?}: {e}")))
}

fn sequent_arg(s: &str) -> Result<Sequent, Failure> {
    s.parse().map_err(|e| Failure::Input(format!("cannot parse sequent {s:?}: {e}")))
}

fn table(f: &Formula, io: &mut Io<'_>) -> Outcome {
    let vars = f.variables();
    if vars.len() > DEFAULT_MAX_VARS {
        return Err(Failure::Input(format!(
            "{} variables exceed the truth-table limit of {DEFAULT_MAX_VARS}",
            vars.len()
        )));
    }
    let widths: Vec<usize> = vars.iter().map(|p| p.as_str().chars().count().max(1)).collect();
    let mut header: Vec<String> = vars.iter().map(|p| p.to_string()).collect();
    header.push(format!("| {f}"));
    line(io, &header.join(" "))?;
    for row in 0..1u64 << vars.len() {
        let v = valuation_for_row(&vars, row);
        let mut cells: Vec<String> =
            vars.iter().zip(&widths).map(|(p, w)| format!("{:<w$}", mark(v.get(p)), w = *w)).collect();
        cells.push(format!("| {}", mark(eval(&v, f))));
        line(io, &cells.join(" "))?;
    }
    Ok(EXIT_OK)
}

fn mark(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

fn refuted(v: &Valuation, io: &mut Io<'_>) -> Outcome {
    line(io, "INVALID")?;
    line(io, &v.to_string())?;
    Ok(EXIT_REFUTED)
}

fn decide_formula(f: &Formula, out: Option<&Path>, io: &mut Io<'_>) -> Outcome {
    match complete(f)? {
        CompletenessResult::Proof(d) => {
            let expected = Conclusion::Judgement(vec![], f.clone());
            let d = Derivation::Nc(d);
            recheck(&d, &expected)?;
            line(io, "VALID")?;
            if let Some(path) = out {
                write_file(path, &d)?;
            }
            Ok(EXIT_OK)
        }
        CompletenessResult::NotValid(v) => {
            if eval(&v, f) {
                return Err(Failure::Internal(format!("countervaluation {v} satisfies {f}")));
            }
            refuted(&v, io)
        }
    }
}

fn decide_sequent(s: &Sequent, out: Option<&Path>, io: &mut Io<'_>) -> Outcome {
    match gcf_prove(s) {
        DecisionResult::Proof(d) => {
            let expected = Conclusion::Sequent(s.clone());
            let d = Derivation::Gcf(d);
            recheck(&d, &expected)?;
            line(io, "VALID")?;
            if let Some(path) = out {
                write_file(path, &d)?;
            }
            Ok(EXIT_OK)
        }
        DecisionResult::Countervaluation(v) => {
            let holds = s.gamma.iter().all(|g| eval(&v, g)) && !s.delta.iter().any(|d| eval(&v, d));
            if !holds {
                return Err(Failure::Internal(format!("{v} does not refute {s}")));
            }
            refuted(&v, io)
        }
    }
}

fn prove(f: &Formula, calculus: Calculus, out: Option<&Path>, io: &mut Io<'_>) -> Outcome {
    let goal = Sequent::new(vec![], vec![f.clone()]);
    let (d, expected) = if calculus == Calculus::Gcf {
        match gcf_prove(&goal) {
            DecisionResult::Proof(d) => (Derivation::Gcf(d), Conclusion::Sequent(goal)),
            DecisionResult::Countervaluation(v) => return refuted(&v, io),
        }
    } else {
        let nc = match complete(f)? {
            CompletenessResult::Proof(d) => d,
            CompletenessResult::NotValid(v) => return refuted(&v, io),
        };
        match calculus {
            Calculus::Nc => (Derivation::Nc(nc), Conclusion::Judgement(vec![], f.clone())),
            Calculus::Hc => (Derivation::Hc(nc_to_hc(&nc)?), Conclusion::Judgement(vec![], f.clone())),
            _ => (Derivation::Gc(nc_to_g(&nc)?), Conclusion::Sequent(goal)),
        }
    };
    emit(&d, &expected, out, io)?;
    Ok(EXIT_OK)
}

fn hc_or_nc(d: Derivation) -> Result<NcDerivation, Failure> {
    match d {
        Derivation::Nc(n) => Ok(n),
        Derivation::Hc(h) => Ok(hc_to_nc(&h)?),
        Derivation::Gc(g) | Derivation::Gcf(g) => Ok(g_to_nc(&g)?),
    }
}

fn to_gc(d: Derivation) -> Result<GcDerivation, Failure> {
    match d {
        Derivation::Gc(g) | Derivation::Gcf(g) => Ok(g),
        other => Ok(nc_to_g(&hc_or_nc(other)?)?),
    }
}

/// Judgement proved by the natural deduction image of a derivation.
fn judgement_of(c: &Conclusion) -> Conclusion {
    match c {
        Conclusion::Judgement(..) => c.clone(),
        Conclusion::Sequent(s) => Conclusion::Judgement(s.gamma.clone(), big_or(&s.delta)),
    }
}

fn sequent_of(c: &Conclusion) -> Conclusion {
    match c {
        Conclusion::Judgement(ctx, a) => Conclusion::Sequent(Sequent::new(ctx.clone(), vec![a.clone()])),
        Conclusion::Sequent(_) => c.clone(),
    }
}

fn translate(d: Derivation, to: Target) -> Result<(Derivation, Conclusion), Failure> {
    let source = recheck_input(&d)?;
    Ok(match to {
        Target::Nc => {
            let expected = judgement_of(&source);
            (Derivation::Nc(hc_or_nc(d)?), expected)
        }
        Target::Hc => {
            let expected = judgement_of(&source);
            let hc = match d {
                Derivation::Hc(h) => h,
                other => nc_to_hc(&hc_or_nc(other)?)?,
            };
            (Derivation::Hc(hc), expected)
        }
        Target::Gc => (Derivation::Gc(to_gc(d)?), sequent_of(&source)),
    })
}

fn recheck_input(d: &Derivation) -> Result<Conclusion, Failure> {
    d.check().map_err(|e| Failure::Input(format!("{} derivation rejected: {e}", d.calculus())))
}

fn recheck(d: &Derivation, expected: &Conclusion) -> Result<(), Failure> {
    match d.check() {
        Ok(c) if c == *expected => Ok(()),
        Ok(c) => Err(Failure::Internal(format!(
            "emitted {} derivation proves {c}, expected {expected}",
            d.calculus()
        ))),
        Err(e) => Err(Failure::Internal(format!("emitted {} derivation fails its checker: {e}", d.calculus()))),
    }
}

fn write_file(path: &Path, d: &Derivation) -> Result<(), Failure> {
    std::fs::write(path, format!("{}\n", to_json(d)))
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

/// Re-checks `d` against `expected`, then writes it to `out` or stdout.
fn emit(d: &Derivation, expected: &Conclusion, out: Option<&Path>, io: &mut Io<'_>) -> Result<(), Failure> {
    recheck(d, expected)?;
    match out {
        Some(path) => write_file(path, d),
        None => line(io, &to_json(d)).map(|_| ()),
    }
}

fn read_input(path: &Path, io: &mut Io<'_>) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
    }
}

fn read_checked(path: &Path, io: &mut Io<'_>) -> Result<Derivation, Failure> {
    let text = read_input(path, io)?;
    let d = from_json(&text).map_err(|e| Failure::Input(e.to_string()))?;
    recheck_input(&d)?;
    Ok(d)
}
