use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flagcells::cells::{betti_numbers, cell_polynomial, euler_characteristic, export_poset, DEFAULT_POSET_CAP};
use flagcells::geometry::{sample_flag_cell, schubert_symbol_flag};
use flagcells::json::{flag_to_json, general_symbol_to_json, parse_flag_file, CellsRecord};
use flagcells::symbols::{enumerate_general, FlagSignature, GeneralSymbol};
use flagcells::verifier::{run_suites, SuiteConfig};
use flagcells::{Error, Field, Tolerances};

/// Schubert cells of real, complex and quaternionic flag manifolds.
///
/// Rank and orthonormality tolerances can be overridden through the
/// SCHUBERT_TOL environment variable, as "RANK" or "RANK,ORTH".
#[derive(Parser)]
#[command(name = "flagcells", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Manifold {
    /// Ground field: R, C or H.
    #[arg(long, value_parser = parse_field)]
    field: Field,
    /// Flag dimensions as a comma list, e.g. 1,2.
    #[arg(long)]
    signature: String,
    /// Dimension of the ambient space.
    #[arg(long)]
    ambient: usize,
}

impl Manifold {
    fn signature(&self) -> Result<FlagSignature, Error> {
        FlagSignature::parse(&self.signature, self.ambient)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List every cell with its real dimension.
    Cells(Manifold),
    /// Cell counts by real dimension (the Poincaré polynomial over C and H).
    Poincare(Manifold),
    /// Euler characteristic.
    Euler(Manifold),
    /// Real dimension of the manifold.
    Dim(Manifold),
    /// Schubert symbol of the flag stored in a JSON file.
    Symbol {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a random flag from the cell of a symbol as a flag file.
    Sample {
        /// Ground field: R, C or H.
        #[arg(long, value_parser = parse_field)]
        field: Field,
        /// General symbol, e.g. "((2),(2,3))" or "2;2,3".
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        ambient: usize,
        /// Optional check on the signature implied by the symbol.
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Covering graph of the boundary-candidate relation, as DOT.
    Poset {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        ambient: usize,
        /// Refuse signatures with more cells than this.
        #[arg(long, default_value_t = DEFAULT_POSET_CAP)]
        cap: usize,
    },
    /// Run the seeded property suites.
    Verify {
        /// Suite names, comma separated, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per field for stochastic suites.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Fields to test, comma separated.
        #[arg(long, default_value = "R,C,H")]
        fields: String,
        #[arg(long, default_value_t = 7)]
        max_dim: usize,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

/// Accepts `((2),(2,3))`, `(2),(2,3)` or `2;2,3`.
fn parse_symbol(text: &str, ambient: usize) -> Result<GeneralSymbol, Error> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = if compact.starts_with("((") && compact.ends_with("))") {
        &compact[1..compact.len() - 1]
    } else {
        compact.as_str()
    };
    let parts: Vec<&str> = if body.contains(';') {
        body.split(';').collect()
    } else {
        body.split("),(").collect()
    };
    let parts = parts
        .iter()
        .map(|p| {
            p.trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|v| v.parse::<usize>().map_err(|_| Error::Parse(format!("bad symbol value '{v}' in {text}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dims = parts.iter().map(Vec::len).collect();
    GeneralSymbol::from_values(FlagSignature::new(dims, ambient)?, parts)
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = Tolerances::from_env()?;
    let fmt = cli.format;
    match cli.command {
        Command::Cells(m) => {
            let sig = m.signature()?;
            let r = m.field.real_dim();
            let mut symbols: Vec<GeneralSymbol> = enumerate_general(&sig).collect();
            symbols.sort_by_key(GeneralSymbol::dim);
            let mut text = String::new();
            let mut cells = Vec::new();
            for s in &symbols {
                text.push_str(&format!("{s}\t{}\n", r * s.dim()));
                cells.push(json!({ "symbol": general_symbol_to_json(s)["parts"], "dimension": r * s.dim() }));
            }
            text.push_str(&format!("{} cells\n", symbols.len()));
            let mut value = serde_json::to_value(CellsRecord::new(&sig, m.field)).expect("record");
            value["cells"] = Value::Array(cells);
            emit(fmt, text, value);
        }
        Command::Poincare(m) => {
            let sig = m.signature()?;
            let p = cell_polynomial(&sig, m.field);
            let label = match betti_numbers(&sig, m.field) {
                Ok(_) => "Poincare polynomial",
                Err(_) => "cell polynomial",
            };
            let text = format!("{label}: {p}\ncoefficients: {:?}\n", p.coefficients());
            emit(fmt, text, serde_json::to_value(CellsRecord::new(&sig, m.field)).expect("record"));
        }
        Command::Euler(m) => {
            let sig = m.signature()?;
            let chi = euler_characteristic(&sig, m.field);
            emit(fmt, format!("{chi}\n"), serde_json::to_value(CellsRecord::new(&sig, m.field)).expect("record"));
        }
        Command::Dim(m) => {
            let sig = m.signature()?;
            let record = CellsRecord::new(&sig, m.field);
            emit(fmt, format!("{}\n", record.dimension), serde_json::to_value(record).expect("record"));
        }
        Command::Symbol { input } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", input.display())))?;
            let flag = parse_flag_file(&text, &tol)?;
            let s = schubert_symbol_flag(&flag, &tol)?;
            let mut value = general_symbol_to_json(&s);
            value["dimension"] = json!(s.dim());
            emit(fmt, format!("{s}\n"), value);
        }
        Command::Sample { field, symbol, ambient, signature, seed, output } => {
            let sigma = parse_symbol(&symbol, ambient)?;
            if let Some(sig) = signature {
                let sig = FlagSignature::parse(&sig, ambient)?;
                if &sig != sigma.signature() {
                    return Err(Failure::Input(format!(
                        "symbol {sigma} has signature {}, not {sig}",
                        sigma.signature()
                    )));
                }
            }
            let flag = sample_flag_cell(&sigma, field, seed)?;
            let out = serde_json::to_string_pretty(&flag_to_json(&flag)).expect("valid JSON");
            match output {
                Some(path) => fs::write(&path, out + "\n")
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
                None => println!("{out}"),
            }
        }
        Command::Poset { signature, ambient, cap } => {
            let sig = FlagSignature::parse(&signature, ambient)?;
            let poset = export_poset(&sig, cap)?;
            let nodes: Vec<Value> = poset
                .nodes
                .iter()
                .map(|s| json!({ "symbol": general_symbol_to_json(s)["parts"], "d": s.dim() }))
                .collect();
            let value = json!({
                "signature": sig.dims(),
                "ambient": sig.ambient(),
                "nodes": nodes,
                "edges": poset.edges,
            });
            emit(fmt, poset.to_dot(), value);
        }
        Command::Verify { suite, seed, trials, fields, max_dim } => {
            let fields = fields.split(',').map(|f| Field::parse(f.trim())).collect::<Result<Vec<_>, _>>()?;
            let cfg = SuiteConfig {
                suites: suite.split(',').map(|s| s.trim().to_string()).collect(),
                seed,
                trials,
                fields,
                max_dim,
                tol,
            };
            let report = run_suites(&cfg)?;
            match fmt {
                Format::Text => print!("{}", report.to_table()),
                Format::Json => println!("{}", report.to_json()),
            }
            if !report.passed {
                return Err(Failure::Verification("verification failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
