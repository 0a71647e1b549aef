use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use cube_magic::cube::DEFAULT_MAX_SUM;
use cube_magic::enumerate::CountReport;
use cube_magic::series::{closed_form_f1_specialized, closed_form_f2_specialized, closed_form_g, closed_form_gstar};
use cube_magic::symmetry::canonical_shape;
use cube_magic::verify::{self, Suite};
use cube_magic::{
    classify, compose, cube_group, enumerate_by_type, is_distinct, ConeType, EdgeLabelling, Error, MagicSum,
    TypeDecomposition,
};

#[derive(Parser)]
#[command(name = "cube-magic", version, about = "Magic labellings of the cube graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "G")]
    G,
    #[value(name = "Gstar")]
    Gstar,
    #[value(name = "F1")]
    F1,
    #[value(name = "F2")]
    F2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Show {
    Elements,
    Orbits,
    Stabilizer,
}

#[derive(Subcommand)]
enum Command {
    /// Count magic labellings with a given magic sum.
    Count {
        #[arg(long)]
        sum: MagicSum,
        /// Also count labellings with twelve different labels.
        #[arg(long)]
        distinct: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List magic labellings with a given magic sum.
    Enumerate {
        #[arg(long)]
        sum: MagicSum,
        #[arg(long)]
        distinct: bool,
        /// Keep only canonical orbit representatives (implies --distinct).
        #[arg(long)]
        canonical: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Write a magic labelling as one of the eight types.
    Decompose {
        /// Twelve comma-separated labels in edge order.
        #[arg(long, allow_hyphen_values = true)]
        labelling: String,
    },
    /// Build the labelling of a type and multiplicities.
    Compose {
        #[arg(long = "type")]
        ty: String,
        /// Six comma-separated multiplicities.
        #[arg(long, allow_hyphen_values = true)]
        ks: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand a closed-form generating function.
    Series {
        #[arg(long, value_enum)]
        target: Target,
        /// Highest exponent to print.
        #[arg(long, default_value_t = 30)]
        terms: usize,
        /// Print the closed form in factored notation instead of coefficients.
        #[arg(long)]
        closed_form: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Inspect the automorphism group acting on edges.
    Group {
        #[arg(long, value_enum, default_value = "elements")]
        show: Show,
        /// Edge fixed by the stabilizer.
        #[arg(long, default_value_t = 1)]
        edge: usize,
    },
    /// Run cross-checks; exits 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_sum: MagicSum,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Verification,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn print_json<T: Serialize + ?Sized>(value: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::WriterBuilder::new().has_headers(false).from_writer(io::stdout().lock())
}

fn check_sum(sum: MagicSum) -> Outcome {
    if sum > DEFAULT_MAX_SUM {
        return Err(Failure::Input(format!("--sum {sum} exceeds the supported maximum {DEFAULT_MAX_SUM}")));
    }
    Ok(())
}

fn write_labellings(rows: impl Iterator<Item = EdgeLabelling>, format: Format) -> Outcome {
    match format {
        Format::Json => {
            let mut out = io::stdout().lock();
            out.write_all(b"[")?;
            for (i, l) in rows.enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                serde_json::to_writer(&mut out, &l).map_err(io::Error::from)?;
            }
            out.write_all(b"]\n")?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            for l in rows {
                w.serialize(l.labels())?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn parse_ks(s: &str) -> Result<[i64; 6], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let values: Vec<i64> = parts
        .iter()
        .map(|p| p.parse().map_err(|_| Failure::Input(format!("`{p}` is not an integer"))))
        .collect::<Result<_, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<i64>| Failure::Input(format!("expected 6 multiplicities, got {}", v.len())))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Count { sum, distinct, format } => {
            check_sum(sum)?;
            let report = CountReport::new(sum, distinct);
            match format {
                Format::Json => print_json(&report)?,
                Format::Csv => {
                    let mut w = csv_writer();
                    let opt = |v: &Option<_>| v.as_ref().map(ToString::to_string).unwrap_or_default();
                    w.write_record(["r", "total", "distinct_raw", "distinct_orbits"])?;
                    w.write_record([
                        report.r.to_string(),
                        report.total.to_string(),
                        opt(&report.distinct_raw),
                        opt(&report.distinct_orbits),
                    ])?;
                    w.flush()?;
                }
            }
        }
        Command::Enumerate { sum, distinct, canonical, format } => {
            check_sum(sum)?;
            let rows = enumerate_by_type(sum)
                .filter(|l| !(distinct || canonical) || is_distinct(l))
                .filter(|l| !canonical || canonical_shape(l).is_some());
            write_labellings(rows, format)?;
        }
        Command::Decompose { labelling } => {
            let l: EdgeLabelling = labelling.parse()?;
            print_json(&classify(&l)?)?;
        }
        Command::Compose { ty, ks, format } => {
            let ty: ConeType = ty.parse()?;
            let d = TypeDecomposition::from_signed(ty, parse_ks(&ks)?)?;
            let l = compose(&d)?;
            write_labellings(std::iter::once(l), format)?;
        }
        Command::Series { target, terms, closed_form, format } => {
            let f = match target {
                Target::G => closed_form_g(),
                Target::Gstar => closed_form_gstar(),
                Target::F1 => closed_form_f1_specialized(),
                Target::F2 => closed_form_f2_specialized(),
            };
            if closed_form {
                println!("{f}");
                return Ok(());
            }
            let coeffs = f.expand(terms);
            match format {
                Format::Json => print_json(&coeffs.iter().map(BigInt::to_string).collect::<Vec<_>>())?,
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["r", "coefficient"])?;
                    for (r, c) in coeffs.iter().enumerate() {
                        w.write_record([r.to_string(), c.to_string()])?;
                    }
                    w.flush()?;
                }
            }
        }
        Command::Group { show, edge } => {
            #[derive(Serialize)]
            struct Element {
                cycles: String,
                image: Vec<usize>,
            }
            let describe = |g: &cube_magic::PermutationGroup| -> Vec<Element> {
                g.elements()
                    .iter()
                    .map(|u| Element { cycles: u.to_string(), image: u.images() })
                    .collect()
            };
            let u = cube_group();
            match show {
                Show::Elements => print_json(&describe(u))?,
                Show::Orbits => print_json(&u.orbits())?,
                Show::Stabilizer => {
                    #[derive(Serialize)]
                    struct Stabilizer {
                        edge: usize,
                        order: usize,
                        elements: Vec<Element>,
                        orbits: Vec<std::collections::BTreeSet<usize>>,
                    }
                    let s = u.stabilizer(edge)?;
                    print_json(&Stabilizer { edge, order: s.len(), elements: describe(&s), orbits: s.orbits() })?;
                }
            }
        }
        Command::Verify { suite, max_sum, format } => {
            let results = verify::run(suite, max_sum);
            let passed = results.iter().all(|c| c.passed);
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Summary<'a> {
                        passed: bool,
                        checks: &'a [verify::CheckResult],
                    }
                    print_json(&Summary { passed, checks: &results })?;
                }
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["name", "passed", "detail"])?;
                    for c in &results {
                        w.serialize((&c.name, c.passed, &c.detail))?;
                    }
                    w.flush()?;
                }
            }
            if !passed {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
