//! Command-line front end.
//!
//! Every command prints a short human summary, a line `---`, and a JSON
//! document with the same content. Exit codes: 0 success, 1 input or
//! validation error, 2 computation limit.

use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arf::{arf, is_regular, quad_form};
use crate::diagrams::{assemble_couple, parse_gauss, vlk, CurveSystem};
use crate::error::{Error, Result};
use crate::exact::{format_rat, parse_rat, Int};
use crate::families::{fixture, kmn_couple, kmn_is_derived};
use crate::invariants::{alexander, concordant, is_metabolic, order_via_quadratic_criterion, report, signature_profile, AlexanderSide};
use crate::linalg::RatMatrix;
use crate::seifert::{validate_couple, Ring, SeifertCouple, Side};
use crate::witt::{boundary_infinity, boundary_p, is_trivial_wittq, order_wittq, WittClassQ};

/// On-disk couple: entries are integers or "p/q" strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoupleFile {
    pub name: String,
    pub ring: String,
    pub a_plus: Vec<Vec<String>>,
    pub a_minus: Vec<Vec<String>>,
}

impl CoupleFile {
    pub fn from_couple(name: &str, c: &SeifertCouple) -> CoupleFile {
        CoupleFile {
            name: name.to_string(),
            ring: c.ring().tag().to_string(),
            a_plus: c.a_plus().to_strings(),
            a_minus: c.a_minus().to_strings(),
        }
    }

    pub fn to_couple(&self) -> Result<SeifertCouple> {
        let ring = match self.ring.as_str() {
            "Z" => Ring::Z,
            "Q" => Ring::Q,
            other => return Err(Error::invalid(format!("ring must be \"Z\" or \"Q\", got {other:?}"))),
        };
        let grid = |g: &[Vec<String>]| -> Result<RatMatrix> {
            let rows = g
                .iter()
                .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if rows.is_empty() {
                return Ok(RatMatrix::empty());
            }
            RatMatrix::from_rows(rows)
        };
        validate_couple(grid(&self.a_plus)?, grid(&self.a_minus)?, ring)
    }
}

/// Load a couple from a JSON file or a `fixture://NAME` reference.
pub fn load_couple(spec: &str) -> Result<(String, SeifertCouple)> {
    if let Some(name) = spec.strip_prefix("fixture://") {
        return Ok((name.to_string(), fixture(name)?));
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::invalid(format!("cannot read {spec}: {e}")))?;
    let file: CoupleFile =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{spec} is not a couple file: {e}")))?;
    let c = file.to_couple()?;
    Ok((file.name, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Plus => Side::Plus,
            SideArg::Minus => Side::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlexArg {
    Plus,
    Minus,
    Mixed,
}

#[derive(Debug, Parser)]
#[command(name = "vconc", about = "Algebraic concordance invariants of Seifert couples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the defining conditions of a couple.
    Validate { file: String },
    /// Full invariant report of one side.
    Invariants {
        file: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Order in the rational concordance group.
    Order {
        file: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    Metabolic {
        file: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    Concordant {
        file_a: String,
        file_b: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Arf invariant of the F_2 form of an integral couple.
    Arf {
        file: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Arc profile of the directed signature function.
    Sigfn {
        file: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    Alexander {
        file: String,
        #[arg(long, value_enum)]
        side: AlexArg,
    },
    /// Witt class of a diagonal form "a1,a2,...".
    Witt {
        #[arg(allow_hyphen_values = true)]
        entries: String,
    },
    /// The K(m, n) couple shifted i times.
    Kmn {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        i: i64,
        #[arg(long)]
        emit: Option<String>,
    },
    /// An embedded reference couple.
    Fixture {
        name: String,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Virtual linking number vlk(J, K) in a Gauss-code diagram.
    Vlk { diagram: String, j: String, k: String },
    /// Assemble a couple from a diagram with `@cores` and `@push` directives.
    Assemble { diagram: String },
}

struct Output {
    summary: String,
    json: Value,
}

fn output(summary: impl Into<String>, json: Value) -> Output {
    Output {
        summary: summary.into(),
        json,
    }
}

fn matrix_json(m: &RatMatrix) -> Value {
    json!(m.to_strings())
}

fn couple_json(name: &str, c: &SeifertCouple) -> Value {
    json!({
        "name": name,
        "ring": c.ring().tag(),
        "dim": c.dim(),
        "admissible": c.is_admissible(),
        "a_plus": matrix_json(c.a_plus()),
        "a_minus": matrix_json(c.a_minus()),
    })
}

fn side_name(s: SideArg) -> &'static str {
    Side::from(s).name()
}

fn emit(path: &Option<String>, name: &str, c: &SeifertCouple) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(&CoupleFile::from_couple(name, c))
            .map_err(|e| Error::Internal(format!("serializing couple: {e}")))?;
        fs::write(p, text + "\n").map_err(|e| Error::invalid(format!("cannot write {p}: {e}")))?;
    }
    Ok(())
}

fn read_text(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))
}

/// Split a diagram file into the Gauss code and the `@cores` / `@push` directives.
fn curve_system(text: &str) -> Result<CurveSystem> {
    let mut code = String::new();
    let mut cores = Vec::new();
    let mut push = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("@cores") {
            cores.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = t.strip_prefix("@push") {
            let w: Vec<&str> = rest.split_whitespace().collect();
            if w.len() != 3 {
                return Err(Error::invalid(format!("expected \"@push CORE PLUS MINUS\", got {t:?}")));
            }
            push.push((w[0].to_string(), w[1].to_string(), w[2].to_string()));
        } else {
            code.push_str(line);
        }
        code.push('\n');
    }
    let d = parse_gauss(&code)?;
    let mut push_offs = Vec::new();
    for core in &cores {
        let (_, p, m) = push
            .iter()
            .find(|(c, _, _)| c == core)
            .ok_or_else(|| Error::invalid(format!("no @push line for core {core}")))?;
        push_offs.push((p.clone(), m.clone()));
    }
    if push.len() != cores.len() {
        return Err(Error::invalid("@push lines must match the @cores list"));
    }
    CurveSystem::new(d, cores, push_offs)
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Validate { file } => {
            let (name, c) = load_couple(&file)?;
            let summary = format!(
                "{name}: valid {} couple of dimension {}, {}",
                c.ring().tag(),
                c.dim(),
                if c.is_admissible() { "admissible" } else { "not admissible" }
            );
            Ok(output(summary, json!({"valid": true, "couple": couple_json(&name, &c)})))
        }
        Command::Invariants { file, side } => {
            let (name, c) = load_couple(&file)?;
            let a = c.project(side.into())?;
            let r = report(&a, &format!("{name} {}", side_name(side)))?;
            Ok(output(r.to_string(), r.to_json()))
        }
        Command::Order { file, side } => {
            let (name, c) = load_couple(&file)?;
            let a = c.project(side.into())?;
            let r = report(&a, &format!("{name} {}", side_name(side)))?;
            let crit = order_via_quadratic_criterion(&a)?;
            let mut j = r.to_json();
            j["quadratic_criterion"] = json!(crit.map(|o| o.to_string()));
            let summary = format!(
                "{}\nquadratic criterion: {}",
                r,
                crit.map_or("inapplicable".to_string(), |o| o.to_string())
            );
            Ok(output(summary, j))
        }
        Command::Metabolic { file, side } => {
            let (name, c) = load_couple(&file)?;
            let m = is_metabolic(&c.project(side.into())?)?;
            Ok(output(
                format!("{name} {}: metabolic = {m}", side_name(side)),
                json!({"input": name, "side": side_name(side), "metabolic": m}),
            ))
        }
        Command::Concordant { file_a, file_b, side } => {
            let (na, ca) = load_couple(&file_a)?;
            let (nb, cb) = load_couple(&file_b)?;
            let v = concordant(&ca.project(side.into())?, &cb.project(side.into())?)?;
            Ok(output(
                format!("{na} ~ {nb} ({}): concordant = {v}", side_name(side)),
                json!({"a": na, "b": nb, "side": side_name(side), "concordant": v}),
            ))
        }
        Command::Arf { file, side } => {
            let (name, c) = load_couple(&file)?;
            let q = quad_form(&c, side.into())?;
            let regular = is_regular(&q);
            let value = if regular { Some(arf(&q)?) } else { None };
            let summary = match value {
                Some(v) => format!("{name}: Arf = {v}"),
                None => format!("{name}: form is not regular, Arf undefined"),
            };
            Ok(output(
                summary,
                json!({"input": name, "side": side_name(side), "regular": regular, "arf": value, "polarization": q.polarization_matrix()}),
            ))
        }
        Command::Sigfn { file, side } => {
            let (name, c) = load_couple(&file)?;
            let prof = signature_profile(&c.project(side.into())?)?;
            let mut summary = format!("{name} {}: {} arcs", side_name(side), prof.arcs.len());
            let mut arcs = Vec::new();
            for a in &prof.arcs {
                summary.push_str(&format!("\n  ({:.4}, {:.4}) deg: {}", a.start_deg, a.end_deg, a.value));
                arcs.push(json!({
                    "start_deg": a.start_deg,
                    "end_deg": a.end_deg,
                    "sample": [format_rat(&a.sample.x), format_rat(&a.sample.y)],
                    "value": a.value,
                }));
            }
            Ok(output(summary, json!({"input": name, "side": side_name(side), "arcs": arcs})))
        }
        Command::Alexander { file, side } => {
            let (name, c) = load_couple(&file)?;
            let (s, label) = match side {
                AlexArg::Plus => (AlexanderSide::Plus, "plus"),
                AlexArg::Minus => (AlexanderSide::Minus, "minus"),
                AlexArg::Mixed => (AlexanderSide::Mixed, "mixed"),
            };
            let f = alexander(&c, s)?;
            Ok(output(
                format!("{name} {label}: {f}"),
                json!({"input": name, "side": label, "polynomial": f.to_string(), "coefficients": f.to_strings()}),
            ))
        }
        Command::Witt { entries } => {
            let vals = entries
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_rat)
                .collect::<Result<Vec<_>>>()?;
            let w = WittClassQ::from_diagonal(&vals)?;
            let mut residues = Vec::new();
            let mut summary = format!("{w}: signature {}", boundary_infinity(&w));
            for p in w.candidate_primes() {
                let b = boundary_p(&w, &p)?;
                summary.push_str(&format!("\n  p = {p}: {b}{}", if b.is_trivial() { " (trivial)" } else { "" }));
                residues.push(json!({"p": p.to_string(), "rank_mod_2": b.rank_mod_2, "disc_square": b.disc_square, "trivial": b.is_trivial()}));
            }
            let trivial = is_trivial_wittq(&w)?;
            let ord = order_wittq(&w)?;
            summary.push_str(&format!(
                "\ntrivial: {trivial}\norder: {}",
                ord.map_or("inf".to_string(), |k| k.to_string())
            ));
            Ok(output(
                summary,
                json!({
                    "entries": w.entries().iter().map(format_rat).collect::<Vec<_>>(),
                    "signature": boundary_infinity(&w),
                    "residues": residues,
                    "trivial": trivial,
                    "order": ord.map_or("inf".to_string(), |k| k.to_string()),
                }),
            ))
        }
        Command::Kmn { m, n, i, emit: path } => {
            let parse_int = |s: &str| -> Result<Int> {
                s.trim().replace('\u{2212}', "-").parse().map_err(|_| Error::invalid(format!("not an integer: {s:?}")))
            };
            let (mi, ni) = (parse_int(&m)?, parse_int(&n)?);
            let c = kmn_couple(&mi, &ni, i)?;
            let name = format!("K({mi},{ni}) shift {i}");
            emit(&path, &name, &c)?;
            let derived = kmn_is_derived(i);
            let mut j = couple_json(&name, &c);
            j["derived_pattern"] = json!(derived);
            let summary = format!(
                "{name}: dimension {}{}",
                c.dim(),
                if derived { " (blocks from the recursion only)" } else { "" }
            );
            Ok(output(summary, j))
        }
        Command::Fixture { name, emit: path } => {
            let c = fixture(&name)?;
            emit(&path, &name, &c)?;
            Ok(output(format!("{name}: dimension {}", c.dim()), couple_json(&name, &c)))
        }
        Command::Vlk { diagram, j, k } => {
            let d = parse_gauss(&read_text(&diagram)?)?;
            let v = vlk(&d, &j, &k)?;
            Ok(output(format!("vlk({j}, {k}) = {v}"), json!({"j": j, "k": k, "vlk": v})))
        }
        Command::Assemble { diagram } => {
            let cs = curve_system(&read_text(&diagram)?)?;
            let c = assemble_couple(&cs)?;
            Ok(output(format!("assembled couple of dimension {}", c.dim()), couple_json(&diagram, &c)))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ComputationLimit(_) => 2,
        _ => 1,
    }
}

/// Run the CLI on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let json = serde_json::to_string_pretty(&o.json).unwrap_or_else(|_| "{}".into());
            let _ = writeln!(out, "{}\n---\n{json}", o.summary);
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
