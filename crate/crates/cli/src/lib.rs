//! Command-line front end for generalized bound path algebras: reads a `.gbpa`
//! specification and prints bases, multiplication tables, projectives, injectives,
//! simples, cones and duals as text or JSON.

pub mod render;
pub mod spec;

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use gbpa::functors::{cone, dual_cone, opposite_algebra, Opposite};
use gbpa::structure::{injective_rep, projective_rep, radical_of_projective, simple_rep};
use gbpa::{GbpAlgebra, Representation, DEFAULT_MAX_PATH_LEN};
use serde_json::{json, Value};

use render::{opposite_name, RepView};
use spec::{lookup, parse_spec, ErrorKind, SpecDocument, SpecError};

pub const MAX_PATH_LEN_VAR: &str = "GBPA_MAX_PATH_LEN";

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "gbpa", version, about = "Generalized bound path algebras and their representations")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a specification and report dimensions
    Check { spec: PathBuf },
    /// List the basis of Λ
    Basis { spec: PathBuf },
    /// Multiplication table of Λ
    Table { spec: PathBuf },
    /// Indecomposable projective P(i,j)
    Proj { spec: PathBuf, i: String, j: String },
    /// Indecomposable injective I(i,j)
    Inj { spec: PathBuf, i: String, j: String },
    /// Simple S(i,j)
    Simple { spec: PathBuf, i: String, j: String },
    /// Radical of P(i,j)
    #[command(name = "rad-proj")]
    RadProj { spec: PathBuf, i: String, j: String },
    /// Cone C_i(M) of a declared module
    Cone { spec: PathBuf, i: String, module: String },
    /// Dual cone C*_i(M) = D C_i(D M)
    #[command(name = "dual-cone")]
    DualCone { spec: PathBuf, i: String, module: String },
    /// Specification of the opposite algebra
    Opposite { spec: PathBuf },
    /// Dual D(R) over the opposite algebra of a representation R, given as
    /// `proj|inj|simple|rad-proj i j` or `cone|dual-cone i MODULE`
    Dual {
        spec: PathBuf,
        #[arg(required = true, num_args = 3, allow_hyphen_values = true, value_names = ["KIND", "I", "J|MODULE"])]
        rep: Vec<String>,
    },
}

#[derive(Clone, Debug)]
enum RepRequest {
    Proj(String, String),
    Inj(String, String),
    Simple(String, String),
    RadProj(String, String),
    Cone(String, String),
    DualCone(String, String),
}

impl RepRequest {
    fn parse(words: &[String]) -> Option<Self> {
        let [kind, a, b] = words else { return None };
        let (a, b) = (a.clone(), b.clone());
        Some(match kind.as_str() {
            "proj" => RepRequest::Proj(a, b),
            "inj" => RepRequest::Inj(a, b),
            "simple" => RepRequest::Simple(a, b),
            "rad-proj" => RepRequest::RadProj(a, b),
            "cone" => RepRequest::Cone(a, b),
            "dual-cone" => RepRequest::DualCone(a, b),
            _ => return None,
        })
    }

    fn command(&self) -> &'static str {
        match self {
            RepRequest::Proj(..) => "proj",
            RepRequest::Inj(..) => "inj",
            RepRequest::Simple(..) => "simple",
            RepRequest::RadProj(..) => "rad-proj",
            RepRequest::Cone(..) => "cone",
            RepRequest::DualCone(..) => "dual-cone",
        }
    }
}

/// Result of one invocation: what to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs the command line `args` (including the program name), reading the path
/// bound from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(MAX_PATH_LEN_VAR).ok())
}

pub fn run_with_env<I, T>(args: I, max_len_var: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            };
        }
    };
    let max_len = match max_len_var.as_deref().map(str::trim) {
        None | Some("") => DEFAULT_MAX_PATH_LEN,
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => return Outcome::usage(format!("error: {MAX_PATH_LEN_VAR} must be a positive integer, got `{v}`\n")),
        },
    };
    let spec_path = match &cli.command {
        Command::Check { spec }
        | Command::Basis { spec }
        | Command::Table { spec }
        | Command::Proj { spec, .. }
        | Command::Inj { spec, .. }
        | Command::Simple { spec, .. }
        | Command::RadProj { spec, .. }
        | Command::Cone { spec, .. }
        | Command::DualCone { spec, .. }
        | Command::Opposite { spec }
        | Command::Dual { spec, .. } => spec.clone(),
    };
    if let Command::Dual { rep, .. } = &cli.command {
        if RepRequest::parse(rep).is_none() {
            return Outcome::usage(format!(
                "error: `dual` expects `proj|inj|simple|rad-proj I J` or `cone|dual-cone I MODULE`, got `{}`\n",
                rep.join(" ")
            ));
        }
    }
    let text = match read_spec(&spec_path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("error: cannot read {}: {e}\n", spec_path.display())),
    };
    let result = parse_spec(&text, max_len).and_then(|doc| execute(&cli.command, &doc));
    match result {
        Ok((text, value)) => Outcome::ok(if cli.json { json_line(&value) } else { text }),
        Err(e) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: if cli.json {
                json_line(&error_json(&e))
            } else {
                format!("{}: {e}\n", spec_path.display())
            },
        },
    }
}

fn read_spec(path: &Path) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}

pub fn error_json(e: &SpecError) -> Value {
    json!({
        "error": {
            "kind": e.kind.name(),
            "message": e.message,
            "line": e.pos.map(|p| p.line),
            "column": e.pos.map(|p| p.col),
        }
    })
}

fn execute(command: &Command, doc: &SpecDocument) -> Result<(String, Value), SpecError> {
    let l = &doc.lambda;
    Ok(match command {
        Command::Check { .. } => (render::check_text(doc), render::check_json(doc)),
        Command::Basis { .. } => (render::basis_text(l), render::basis_json(l)),
        Command::Table { .. } => (render::table_text(l), render::table_json(l)),
        Command::Opposite { .. } => {
            let text = render::opposite_spec(doc);
            let value = json!({"command": "opposite", "dim": l.dim(), "spec": text});
            (text, value)
        }
        Command::Proj { i, j, .. } => show(doc, &RepRequest::Proj(i.clone(), j.clone()), false)?,
        Command::Inj { i, j, .. } => show(doc, &RepRequest::Inj(i.clone(), j.clone()), false)?,
        Command::Simple { i, j, .. } => show(doc, &RepRequest::Simple(i.clone(), j.clone()), false)?,
        Command::RadProj { i, j, .. } => show(doc, &RepRequest::RadProj(i.clone(), j.clone()), false)?,
        Command::Cone { i, module, .. } => show(doc, &RepRequest::Cone(i.clone(), module.clone()), false)?,
        Command::DualCone { i, module, .. } => show(doc, &RepRequest::DualCone(i.clone(), module.clone()), false)?,
        Command::Dual { rep, .. } => {
            let req = RepRequest::parse(rep).expect("checked before parsing the spec");
            show(doc, &req, true)?
        }
    })
}

fn show(doc: &SpecDocument, req: &RepRequest, dual: bool) -> Result<(String, Value), SpecError> {
    let needs_op = dual || matches!(req, RepRequest::Inj(..) | RepRequest::DualCone(..));
    let op = if needs_op {
        Some(opposite_algebra(&doc.lambda).map_err(|e| SpecError::from_core(e, None))?)
    } else {
        None
    };
    let (label, rep) = build_rep(doc, op.as_ref(), req)?;
    let (label, rep, names, command) = if dual {
        let op = op.as_ref().expect("built above");
        let d = op.dual_representation(&rep).map_err(|e| SpecError::from_core(e, None))?;
        let names = doc
            .vertex_algebras
            .iter()
            .map(|n| opposite_name(doc.algebra_def(n).expect("resolved at parse time")))
            .collect();
        (format!("D({label})"), d, names, "dual")
    } else {
        (label, rep, doc.vertex_algebras.clone(), req.command())
    };
    let view = RepView {
        command,
        label,
        rep: &rep,
        algebra_names: names,
        opposite: dual,
    };
    Ok((view.text(), view.json()))
}

fn vertex_pair(l: &GbpAlgebra, i: &str, j: &str) -> Result<(usize, usize), SpecError> {
    let g = l.gamma();
    let vi = lookup(g.vertices(), i).ok_or_else(|| {
        SpecError::new(ErrorKind::UnknownVertex, format!("`{i}` is not a vertex of Γ"), None)
    })?;
    let vj = lookup(l.algebra(vi).sigma().vertices(), j).ok_or_else(|| {
        SpecError::new(
            ErrorKind::UnknownVertex,
            format!("`{j}` is not a vertex of the algebra at `{}`", g.vertex_name(vi)),
            None,
        )
    })?;
    Ok((vi, vj))
}

fn pair_label(l: &GbpAlgebra, prefix: &str, i: usize, j: usize) -> String {
    format!(
        "{prefix}({},{})",
        l.gamma().vertex_name(i),
        l.algebra(i).sigma().vertex_name(j)
    )
}

fn build_rep(doc: &SpecDocument, op: Option<&Opposite>, req: &RepRequest) -> Result<(String, Representation), SpecError> {
    let l: &Arc<GbpAlgebra> = &doc.lambda;
    let core = |e| SpecError::from_core(e, None);
    match req {
        RepRequest::Proj(i, j) | RepRequest::Inj(i, j) | RepRequest::Simple(i, j) | RepRequest::RadProj(i, j) => {
            let (vi, vj) = vertex_pair(l, i, j)?;
            let (prefix, rep) = match req {
                RepRequest::Proj(..) => ("P", projective_rep(l, vi, vj)),
                RepRequest::Inj(..) => ("I", injective_rep(op.expect("opposite built for injectives"), vi, vj)),
                RepRequest::Simple(..) => ("S", simple_rep(l, vi, vj)),
                _ => ("rad P", radical_of_projective(l, vi, vj)),
            };
            Ok((pair_label(l, prefix, vi, vj), rep.map_err(core)?))
        }
        RepRequest::Cone(i, m) | RepRequest::DualCone(i, m) => {
            let g = l.gamma();
            let vi = lookup(g.vertices(), i).ok_or_else(|| {
                SpecError::new(ErrorKind::UnknownVertex, format!("`{i}` is not a vertex of Γ"), None)
            })?;
            let def = doc
                .module_def(m)
                .ok_or_else(|| SpecError::new(ErrorKind::UnknownName, format!("unknown module `{m}`"), None))?;
            if def.algebra != doc.vertex_algebras[vi] {
                return Err(SpecError::new(
                    ErrorKind::InvalidModule,
                    format!(
                        "module `{m}` is over `{}` but vertex `{}` carries `{}`",
                        def.algebra,
                        g.vertex_name(vi),
                        doc.vertex_algebras[vi]
                    ),
                    None,
                ));
            }
            let vname = g.vertex_name(vi);
            match req {
                RepRequest::Cone(..) => Ok((format!("C_{vname}({m})"), cone(l, vi, &def.module).map_err(core)?)),
                _ => {
                    let rep = match op {
                        Some(op) => op.dual_cone(l, vi, &def.module),
                        None => dual_cone(l, vi, &def.module),
                    };
                    Ok((format!("C*_{vname}({m})"), rep.map_err(core)?))
                }
            }
        }
    }
}
