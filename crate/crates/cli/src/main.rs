//! `gtcg`: decompositions, index utilities, coefficient tables and checks.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gtcg::table::write_table;
use gtcg::verify::verify_product;
use gtcg::{compute_tensor, Decomposition, Error, GtPattern, IWeight};

#[derive(Parser)]
#[command(
    name = "gtcg",
    version,
    about = "su(N) Clebsch-Gordan coefficients in the Gelfand-Tsetlin basis"
)]
struct Cli {
    /// Only print results and failures.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose S ⊗ S' into irreps.
    Decompose { n: usize, s: String, s2: String },
    /// Coefficient table of one target irrep S''.
    Coefficients {
        n: usize,
        s: String,
        s2: String,
        s2pp: String,
        /// Write the table here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Translate between weights or patterns and their indices.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Compute every coefficient of S ⊗ S' and run the consistency checks.
    Verify {
        n: usize,
        s: String,
        s2: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Subcommand)]
#[allow(clippy::enum_variant_names)]
enum IndexCommand {
    /// Index P(S) of a normalized i-weight.
    WeightToIndex { n: usize, s: String },
    /// i-weight of rank N with index P.
    WeightFromIndex { n: usize, p: u64 },
    /// Index Q(M) of a pattern, rows separated by ';'.
    PatternToIndex { pattern: String },
    /// Pattern of irrep S with index Q.
    PatternFromIndex { s: String, q: u64 },
}

enum Failure {
    Input(Error),
    Domain(Error),
    Io(io::Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::RankMismatch { .. }
            | Error::NotNonincreasing(_)
            | Error::ZeroRank
            | Error::NotNormalized(_)
            | Error::MalformedPattern(_)
            | Error::InvalidPattern
            | Error::IndexOutOfRange { .. } => Failure::Input(e),
            other => Failure::Domain(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn weight(text: &str, n: usize) -> Result<IWeight, Error> {
    IWeight::parse_with_rank(text, n)
}

fn decompose(out: &mut impl Write, n: usize, s: &str, s2: &str) -> Result<(), Failure> {
    let (s, s2) = (weight(s, n)?, weight(s2, n)?);
    let d = Decomposition::new(&s, &s2)?;
    let mut dims = Vec::new();
    for (w, mult) in d.terms().iter().rev() {
        writeln!(out, "{w} x{mult} dim={}", w.dimension())?;
        dims.extend(std::iter::repeat_n(
            w.dimension().to_string(),
            *mult as usize,
        ));
    }
    let (a, b) = (s.dimension(), s2.dimension());
    writeln!(out, "{a} x {b} = {} = {}", a * b, dims.join(" + "))?;
    Ok(())
}

fn coefficients(
    out: &mut impl Write,
    quiet: bool,
    n: usize,
    texts: [&str; 3],
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let (s, s2, s2pp) = (
        weight(texts[0], n)?,
        weight(texts[1], n)?,
        weight(texts[2], n)?,
    );
    let tensor = compute_tensor::<f64>(&s, &s2, &s2pp)?;
    let summary = format!(
        "alpha_count={} nonzero={}",
        tensor.alpha_count(),
        tensor.nonzero_count()
    );
    match output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_table(&tensor, &mut file)?;
            file.flush()?;
            if !quiet {
                writeln!(out, "{summary}")?;
            }
        }
        None => {
            write_table(&tensor, out)?;
            if !quiet {
                eprintln!("{summary}");
            }
        }
    }
    Ok(())
}

fn index(out: &mut impl Write, cmd: &IndexCommand) -> Result<(), Failure> {
    match cmd {
        IndexCommand::WeightToIndex { n, s } => writeln!(out, "{}", weight(s, *n)?.index()?)?,
        IndexCommand::WeightFromIndex { n, p } => {
            writeln!(out, "{}", IWeight::from_index(*n, *p)?)?
        }
        IndexCommand::PatternToIndex { pattern } => {
            let m: GtPattern = pattern.parse()?;
            if !m.is_valid() {
                return Err(Error::InvalidPattern.into());
            }
            writeln!(out, "{}", m.index()?)?
        }
        IndexCommand::PatternFromIndex { s, q } => {
            let s: IWeight = s.parse()?;
            writeln!(out, "{}", GtPattern::from_index(&s, *q)?)?
        }
    }
    Ok(())
}

fn verify(
    out: &mut impl Write,
    quiet: bool,
    n: usize,
    s: &str,
    s2: &str,
    tol: f64,
) -> Result<(), Failure> {
    let (s, s2) = (weight(s, n)?, weight(s2, n)?);
    let reports = verify_product::<f64>(&s, &s2, tol)?;
    let mut ok = true;
    for r in &reports {
        ok &= r.passed;
        if !quiet || !r.passed {
            writeln!(out, "{r}")?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Decompose { n, s, s2 } => decompose(&mut out, *n, s, s2),
        Command::Coefficients {
            n,
            s,
            s2,
            s2pp,
            output,
        } => coefficients(&mut out, cli.quiet, *n, [s, s2, s2pp], output.as_ref()),
        Command::Index(cmd) => index(&mut out, cmd),
        Command::Verify { n, s, s2, tol } => verify(&mut out, cli.quiet, *n, s, s2, *tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
