mod input;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maxsub::catalog;
use maxsub::exact::ScalarMode;
use maxsub::maximality::{check_maximal, Verdict, DEFAULT_WITNESS_DEGREE};
use maxsub::polyfield::{parse_field, DegreeBasis, DEFAULT_MAX_DEGREE};
use maxsub::repanalysis::analyze;
use maxsub::subalgebra::{close_under_bracket, normalizer_tower, Caps, DEFAULT_MAX_DIM};
use maxsub::symtensor::{parse_tensor, SymTensor};
use serde_json::{json, Value};

use input::{load_algebra, parse_space_flag, read_fields, CliError};

#[derive(Parser)]
#[command(name = "maxsub", version, about = "Graded subalgebras of polynomial vector fields and their maximality")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Dimension of the space, as `n=<int>`.
    #[arg(long, global = true, value_parser = parse_space_flag)]
    space: Option<usize>,
    #[arg(long, global = true, default_value = "rational")]
    mode: ScalarMode,
    /// Write a JSON report to this path (`-` for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: i32,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two fields.
    Bracket { left: String, right: String },
    /// Decide maximality of a catalog algebra or the algebra generated by a file.
    Check {
        input: String,
        #[arg(long, default_value_t = DEFAULT_WITNESS_DEGREE)]
        witness_degree: i32,
    },
    /// Homogeneous components of a field.
    Grade { field: String },
    /// Bracket closure of generators given inline or in a file.
    Close {
        #[arg(long)]
        file: Option<PathBuf>,
        fields: Vec<String>,
    },
    /// Normalizer tower of a subspace of constant fields.
    Normalizer {
        /// Constant fields spanning F; repeat or separate with commas.
        #[arg(long, required = true, value_delimiter = ',')]
        subspace: Vec<String>,
    },
    /// Representation of L₀ on L₋₁.
    AnalyzeRep { input: String },
    /// Field to symmetric tensors (per degree) or tensor to field.
    Convert { expr: String },
    /// Catalog presets.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn caps(o: &Options) -> Caps {
    Caps { max_dim: o.max_dim, max_degree: o.max_degree }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let o = &cli.opts;
    match &cli.command {
        Command::Bracket { left, right } => {
            let s = input::space(o.space, o.mode)?;
            let b = parse_field(left, s)?.bracket(&parse_field(right, s)?)?;
            Ok(Output::ok(format!("{b}\n"), json!({ "space": report::space(s), "bracket": b.to_string() })))
        }
        Command::Check { input, witness_degree } => {
            let loaded = load_algebra(input, o.space, o.mode, caps(o))?;
            let r = check_maximal(&loaded.algebra, *witness_degree)?;
            let code = match r.verdict {
                Verdict::Maximal => 0,
                Verdict::NotMaximal => 3,
                Verdict::NotGraded | Verdict::Undecided => 4,
            };
            Ok(Output {
                text: report::check_text(&loaded.label, &loaded.algebra, &r),
                json: report::check_json(&loaded.label, &loaded.algebra, &r),
                code,
            })
        }
        Command::Grade { field } => {
            let s = input::space(o.space, o.mode)?;
            let x = parse_field(field, s)?;
            let comps = x.graded_components();
            let parts: Vec<String> = comps.iter().map(|(p, c)| format!("{p}: {c}")).collect();
            let json = Value::Object(comps.iter().map(|(p, c)| (p.to_string(), Value::String(c.to_string()))).collect());
            Ok(Output::ok(format!("{{{}}}\n", parts.join(", ")), json))
        }
        Command::Close { file, fields } => {
            let s = input::space(o.space, o.mode)?;
            let mut gens = match file {
                Some(f) => read_fields(f, s)?,
                None => Vec::new(),
            };
            for f in fields {
                gens.push(parse_field(f, s)?);
            }
            let l = close_under_bracket(s, &gens, caps(o))?;
            let mut text = format!("dimension {}\n", l.dim());
            if let Some(d) = l.graded_dims() {
                let dims: Vec<String> = d.iter().map(|(p, k)| format!("{p}: {k}")).collect();
                text.push_str(&format!("graded dims {{{}}}\n", dims.join(", ")));
            } else {
                text.push_str("not graded\n");
            }
            for x in l.basis() {
                text.push_str(&format!("{x}\n"));
            }
            let json = json!({
                "space": report::space(s),
                "dimension": l.dim(),
                "graded_dims": report::graded_dims(&l),
                "basis": report::fields(l.basis()),
            });
            Ok(Output::ok(text, json))
        }
        Command::Normalizer { subspace } => {
            let s = input::space(o.space, o.mode)?;
            let gens = subspace.iter().map(|t| parse_field(t.trim(), s)).collect::<Result<Vec<_>, _>>()?;
            let f = DegreeBasis::new(s, -1).subspace(&gens)?;
            let d = o.max_degree.min(DEFAULT_MAX_DEGREE);
            let t = normalizer_tower(s, &f, d)?;
            let dims = t.dims();
            let mut text = format!("dims {dims:?}\n");
            let mut levels = serde_json::Map::new();
            for i in -1..=t.top() {
                let fs = t.fields(i);
                let names: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("{i}: {}\n", names.join(", ")));
                levels.insert(i.to_string(), report::fields(&fs));
            }
            Ok(Output::ok(text, json!({ "space": report::space(s), "dims": dims, "levels": levels })))
        }
        Command::AnalyzeRep { input } => {
            let loaded = load_algebra(input, o.space, o.mode, caps(o))?;
            let r = analyze(&loaded.algebra)?;
            Ok(Output::ok(report::rep_text(&loaded.algebra, &r), report::rep_json(&loaded.algebra, &r)))
        }
        Command::Convert { expr } => {
            let s = input::space(o.space, o.mode)?;
            if expr.contains('>') {
                let x = parse_tensor(expr, s)?.to_field();
                Ok(Output::ok(format!("{x}\n"), json!({ "field": x.to_string() })))
            } else {
                let x = parse_field(expr, s)?;
                let mut text = String::new();
                let mut map = serde_json::Map::new();
                for (p, c) in x.graded_components() {
                    let t = SymTensor::from_field_of_degree(&c, p)?;
                    text.push_str(&format!("{p}: {t}\n"));
                    map.insert(p.to_string(), Value::String(t.to_string()));
                }
                if x.is_zero() {
                    text.push_str("0\n");
                }
                Ok(Output::ok(text, json!({ "tensors": map })))
            }
        }
        Command::Catalog { action: CatalogAction::List } => {
            let entries = catalog::list();
            let text: String = entries.iter().map(|(k, d)| format!("{k:<34} {d}\n")).collect();
            let json = Value::Array(entries.iter().map(|(k, d)| json!({ "key": k, "description": d })).collect());
            Ok(Output::ok(text, json))
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), CliError> {
    match &cli.opts.json {
        Some(p) if p.as_os_str() == "-" => {
            let mut so = std::io::stdout().lock();
            let _ = writeln!(so, "{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
        }
        Some(p) => {
            let body = serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n";
            fs::write(p, body).map_err(|source| CliError::Io { path: p.clone(), source })?;
            print!("{}", out.text);
        }
        None => print!("{}", out.text),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out).map(|_| out.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
