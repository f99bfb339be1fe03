use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use recoil_cover::algebra::all_pairs;
use recoil_cover::sweep::run_sweep;
use recoil_cover::{
    cycle_rank, monodromy_report, verify_covering, CoveringInstance, CoveringStatus, CoxeterSpec,
    CoxeterSystem, Error, GeneratorSet, RecoilAtlas, StructureTable,
};

/// Which group to build: `S<n>`, `I<m>`, or `matrix:<path>`.
#[derive(Debug, Clone)]
enum GroupArg {
    Symmetric(usize),
    Dihedral(usize),
    Matrix(PathBuf),
}

impl FromStr for GroupArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let number = |digits: &str| {
            digits
                .parse::<usize>()
                .map_err(|_| format!("expected S<n>, I<m> or matrix:<path>, got {text:?}"))
        };
        if let Some(path) = text.strip_prefix("matrix:") {
            return Ok(GroupArg::Matrix(PathBuf::from(path)));
        }
        if let Some(n) = text.strip_prefix('S') {
            let n = number(n)?;
            return if n >= 1 {
                Ok(GroupArg::Symmetric(n))
            } else {
                Err("S_n needs n >= 1".into())
            };
        }
        if let Some(m) = text.strip_prefix('I') {
            let m = number(m)?;
            return if m >= 2 {
                Ok(GroupArg::Dihedral(m))
            } else {
                Err("I_2(m) needs m >= 2".into())
            };
        }
        Err(format!(
            "expected S<n>, I<m> or matrix:<path>, got {text:?}"
        ))
    }
}

impl GroupArg {
    fn spec(&self, cap: Option<usize>) -> Result<CoxeterSpec, Error> {
        let spec = match self {
            GroupArg::Symmetric(n) => CoxeterSpec::symmetric(*n),
            GroupArg::Dihedral(m) => CoxeterSpec::dihedral(*m),
            GroupArg::Matrix(path) => CoxeterSpec::load_matrix(path)?,
        };
        Ok(match cap {
            Some(cap) => spec.with_cap(cap),
            None => spec,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    version,
    about = "Recoil classes, covering graphs and descent-algebra structure constants"
)]
struct Args {
    /// Stop enumerating after this many elements.
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Triple {
    #[arg(long)]
    group: GroupArg,
    /// Comma-separated 1-based generator indices (`s`, `t` also accepted for I<m>).
    #[arg(long, allow_hyphen_values = true)]
    left: String,
    #[arg(long, allow_hyphen_values = true)]
    right: String,
    #[arg(long, allow_hyphen_values = true)]
    target: String,
}

#[derive(Subcommand)]
enum Command {
    /// Expand products Y_I·Y_J; an omitted side ranges over all subsets.
    Table {
        #[arg(long)]
        group: GroupArg,
        #[arg(long, allow_hyphen_values = true)]
        left: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        right: Option<String>,
    },
    /// Build the covering Z_IJK -> Y_K and report its components.
    Cover {
        #[command(flatten)]
        triple: Triple,
        /// Write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run every invariant check on a group.
    Verify {
        #[arg(long)]
        group: GroupArg,
    },
    /// Fiber actions of the relation loops of Y_K.
    Monodromy {
        #[command(flatten)]
        triple: Triple,
    },
}

/// What went wrong, mapped onto the exit status.
enum Failure {
    Usage(String),
    Invariant(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let text = err.to_string();
        match err {
            Error::CapExceeded { .. } => Failure::Cap(text),
            Error::InvalidSpec(_)
            | Error::GeneratorOutOfRange { .. }
            | Error::Parse(_)
            | Error::Io(_)
            | Error::Json(_) => Failure::Usage(text),
            _ => Failure::Invariant(text),
        }
    }
}

fn build(group: &GroupArg, cap: Option<usize>) -> Result<CoxeterSystem, Failure> {
    Ok(CoxeterSystem::build(group.spec(cap)?)?)
}

fn subset(sys: &CoxeterSystem, text: &str) -> Result<GeneratorSet, Failure> {
    Ok(GeneratorSet::parse(
        text,
        sys.rank(),
        sys.spec().is_dihedral(),
    )?)
}

fn subsets(sys: &CoxeterSystem, text: Option<&str>) -> Result<Vec<GeneratorSet>, Failure> {
    match text {
        Some(text) => Ok(vec![subset(sys, text)?]),
        None => Ok(GeneratorSet::all(sys.rank()).collect()),
    }
}

fn to_json(value: Result<Value, serde_json::Error>) -> String {
    value.expect("report types serialize").to_string()
}

/// Compact JSON with each element of the top-level `rows` array on its own line.
fn table_json(table: &StructureTable) -> String {
    let mut value = serde_json::to_value(table).expect("tables serialize");
    let rows = value
        .as_object_mut()
        .and_then(|o| o.remove("rows"))
        .and_then(|r| match r {
            Value::Array(rows) => Some(rows),
            _ => None,
        })
        .unwrap_or_default();
    let head = value.to_string();
    let rows: Vec<String> = rows.iter().map(|r| format!("  {r}")).collect();
    format!(
        "{},\"rows\":[\n{}\n]}}",
        head.trim_end_matches('}'),
        rows.join(",\n")
    )
}

fn cmd_table(
    sys: &CoxeterSystem,
    left: Option<&str>,
    right: Option<&str>,
    format: Format,
) -> Result<String, Failure> {
    let atlas = RecoilAtlas::new(sys);
    let pairs = match (left, right) {
        (None, None) => all_pairs(sys.rank()),
        _ => {
            let (lefts, rights) = (subsets(sys, left)?, subsets(sys, right)?);
            lefts
                .iter()
                .flat_map(|&i| rights.iter().map(move |&j| (i, j)))
                .collect()
        }
    };
    let table = StructureTable::build(&atlas, &pairs)?;
    Ok(match format {
        Format::Json => table_json(&table),
        Format::Text => format!("{}\n{}", table.group, table.to_text()),
    })
}

fn parse_triple(sys: &CoxeterSystem, triple: &Triple) -> Result<[GeneratorSet; 3], Failure> {
    Ok([
        subset(sys, &triple.left)?,
        subset(sys, &triple.right)?,
        subset(sys, &triple.target)?,
    ])
}

fn cmd_cover(
    sys: &CoxeterSystem,
    triple: &Triple,
    dot: Option<&PathBuf>,
    format: Format,
) -> Result<String, Failure> {
    let [i, j, k] = parse_triple(sys, triple)?;
    let atlas = RecoilAtlas::new(sys);
    let z = CoveringInstance::build(&atlas, i, j, k);
    let report = verify_covering(&z);
    let a = z.check_fiber_constancy()?;
    if report.status == CoveringStatus::Violated {
        return Err(Failure::Invariant(format!(
            "not a covering: {}",
            report.violations.first().cloned().unwrap_or_default()
        )));
    }
    if let Some(path) = dot {
        std::fs::write(path, z.to_dot())
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let summary = z.summary();
    debug_assert_eq!(summary.a, a);
    Ok(match format {
        Format::Json => to_json(Ok(json!({
            "group": sys.spec().name(),
            "I": summary.left,
            "J": summary.right,
            "K": summary.target,
            "a": summary.a,
            "lambda": summary.lambda,
            "components": summary.components,
            "vertices": summary.vertices,
            "edges": z.edge_count(),
            "degrees": z.degrees,
            "cycle_rank": cycle_rank(&z),
            "status": report.status,
        }))),
        Format::Text => {
            let parts: Vec<String> = summary.lambda.iter().map(ToString::to_string).collect();
            let status = match report.status {
                CoveringStatus::Covering => "covering",
                CoveringStatus::EmptyInstance => "empty instance",
                CoveringStatus::Violated => "violated",
            };
            format!(
                "Z_{}/{}/{} -> Y_{} in {}\n\
                 vertices = {}, edges = {}, components = {}\n\
                 degrees = {:?}\n\
                 a = {}, lambda = ({})\n\
                 status: {status}\n",
                i.subscript(),
                j.subscript(),
                k.subscript(),
                k.subscript(),
                sys.spec().name(),
                summary.vertices,
                z.edge_count(),
                summary.components,
                z.degrees,
                summary.a,
                parts.join(","),
            )
        }
    })
}

fn cmd_verify(sys: &CoxeterSystem, format: Format) -> Result<String, Failure> {
    let report = run_sweep(sys);
    let out = match format {
        Format::Json => to_json(serde_json::to_value(&report)),
        Format::Text => report.to_string(),
    };
    match report.first_failure() {
        None => Ok(out),
        Some((check, witness)) => {
            print!("{out}");
            Err(Failure::Invariant(format!("{check}: {witness}")))
        }
    }
}

fn cmd_monodromy(sys: &CoxeterSystem, triple: &Triple, format: Format) -> Result<String, Failure> {
    let [i, j, k] = parse_triple(sys, triple)?;
    let atlas = RecoilAtlas::new(sys);
    let z = CoveringInstance::build(&atlas, i, j, k);
    let report = monodromy_report(&z)?;
    Ok(match format {
        Format::Json => to_json(serde_json::to_value(&report)),
        Format::Text => {
            let orders: Vec<String> = report
                .orders
                .iter()
                .map(|(o, n)| format!("{n}×order {o}"))
                .collect();
            let mut out = format!(
                "Z_{}/{}/{} -> Y_{}: {} braid loops",
                i.subscript(),
                j.subscript(),
                k.subscript(),
                k.subscript(),
                report.braid_loops
            );
            if !orders.is_empty() {
                out.push_str(&format!(" ({})", orders.join(", ")));
            }
            if report.polygon_loops > 0 {
                let orders: Vec<String> = report
                    .polygon_orders
                    .iter()
                    .map(|(o, n)| format!("{n}×order {o}"))
                    .collect();
                out.push_str(&format!(
                    "; {} polygon loops ({})",
                    report.polygon_loops,
                    orders.join(", ")
                ));
            }
            out.push('\n');
            out
        }
    })
}

fn run(args: &Args) -> Result<String, Failure> {
    match &args.command {
        Command::Table { group, left, right } => {
            let sys = build(group, args.cap)?;
            cmd_table(
                &sys,
                left.as_deref(),
                right.as_deref(),
                args.format.unwrap_or(Format::Text),
            )
        }
        Command::Cover { triple, dot } => {
            let sys = build(&triple.group, args.cap)?;
            cmd_cover(
                &sys,
                triple,
                dot.as_ref(),
                args.format.unwrap_or(Format::Text),
            )
        }
        Command::Verify { group } => {
            let sys = build(group, args.cap)?;
            cmd_verify(&sys, args.format.unwrap_or(Format::Text))
        }
        Command::Monodromy { triple } => {
            let sys = build(&triple.group, args.cap)?;
            cmd_monodromy(&sys, triple, args.format.unwrap_or(Format::Json))
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
