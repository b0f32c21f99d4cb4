use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apartment::commands::{self, ComplexOptions};
use apartment::formats::{from_json, read_census, read_lattice, read_records, read_text, to_json, write_census, SpectraDocument};
use apartment::pipeline::run_pipeline;
use apartment::{CliError, CliResult};
use apartment_core::census::WeightConvention;
use apartment_core::hecke_counts::CountConvention;
use apartment_core::zeta::AsymptoticReport;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "apartment", version, about = "Geodesic censuses, Hecke spectra and zeta fits on quotients of Ã_d buildings")]
struct Cli {
    /// Suppress human-readable tables on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ComplexArgs {
    /// Subgroup words (or a `kernel …` directive) for a triangle presentation.
    #[arg(long)]
    subgroup: Option<PathBuf>,
    /// Coset limit for enumeration.
    #[arg(long)]
    limit: Option<usize>,
    /// Use the bipartite double cover of a non-bipartite graph.
    #[arg(long)]
    double_cover: bool,
}

impl ComplexArgs {
    fn options(&self) -> ComplexOptions<'_> {
        ComplexOptions { subgroup: self.subgroup.as_deref(), limit: self.limit, double_cover: self.double_cover }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian binomials, c_j and η_1(λ(a_j)) as CSV.
    HeckeCounts {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "iwahori")]
        convention: CountConvention,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate complexes or build covers.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Simultaneous triangularization of the translation Hecke family.
    Spectra {
        complex: PathBuf,
        #[command(flatten)]
        source: ComplexArgs,
        #[arg(long, default_value = "iwahori")]
        convention: CountConvention,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-geodesic census as CSV rows k_1,…,k_d,N.
    Census {
        #[arg(long)]
        complex: PathBuf,
        #[command(flatten)]
        source: ComplexArgs,
        #[arg(long)]
        max_k: usize,
        #[arg(long, default_value = "ind")]
        weights: WeightConvention,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rational reconstruction and dominant-term asymptotics.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Class-number-weighted sums against the dominant term.
    ClassSum {
        #[arg(long)]
        records: PathBuf,
        /// Output of `zeta asymptotics` (or a bare report).
        #[arg(long)]
        asymptotics: PathBuf,
        /// Comma-separated places that every record must describe.
        #[arg(long, value_delimiter = ',')]
        places: Vec<String>,
        /// Field degree n (default d + 1).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline from a key=value config.
    Run { config: PathBuf },
}

#[derive(Subcommand)]
enum ComplexCommand {
    Validate {
        file: PathBuf,
        #[command(flatten)]
        source: ComplexArgs,
        /// Write the chamber system as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Cover {
        file: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long, default_value_t = commands::DEFAULT_COSET_LIMIT)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long)]
    census: PathBuf,
    #[arg(long)]
    spectra: PathBuf,
    /// Fit only on points with coordinate sum at most this.
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ZetaCommand {
    Fit {
        #[command(flatten)]
        args: ZetaArgs,
    },
    Asymptotics {
        #[command(flatten)]
        args: ZetaArgs,
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long)]
        sublattice: Option<PathBuf>,
    },
}

fn write_out(out: &Option<PathBuf>, contents: &str) -> CliResult<bool> {
    match out {
        Some(p) => std::fs::write(p, contents).map(|_| true).map_err(|e| CliError::io(p, e)),
        None => Ok(false),
    }
}

fn name(p: &Path) -> String {
    p.display().to_string()
}

fn report_from(path: &Path) -> CliResult<AsymptoticReport> {
    let text = read_text(path)?;
    let value: serde_json::Value = from_json(&name(path), &text)?;
    let inner = value.get("report").cloned().unwrap_or(value);
    serde_json::from_value(inner).map_err(|e| CliError::Invalid(format!("{}: {e}", name(path))))
}

fn zeta_inputs(a: &ZetaArgs) -> CliResult<(apartment_core::census::GeodesicCensus, apartment_core::spectra::SpectralData)> {
    let census = read_census(&name(&a.census), &read_text(&a.census)?)?;
    let doc: SpectraDocument = from_json(&name(&a.spectra), &read_text(&a.spectra)?)?;
    Ok((census, doc.into_data(&name(&a.spectra))?))
}

fn execute(cli: Cli) -> CliResult<()> {
    let say = |s: String| {
        if !cli.quiet {
            print!("{s}");
        }
    };
    match &cli.command {
        Command::HeckeCounts { d, q, convention, out } => {
            let csv = commands::hecke_counts(*d, *q, *convention)?;
            if !write_out(out, &csv)? {
                print!("{csv}");
            }
        }
        Command::Complex(ComplexCommand::Validate { file, source, out }) => {
            let (summary, cs) = commands::complex_validate(file, &source.options())?;
            if let Some(cs) = cs {
                write_out(out, &to_json(&commands::chamber_document(&cs)))?;
            }
            say(to_json(&summary));
        }
        Command::Complex(ComplexCommand::Cover { file, subgroup, limit, out }) => {
            let opts = ComplexOptions { subgroup: Some(subgroup), limit: Some(*limit), double_cover: false };
            let (summary, cs) = commands::complex_validate(file, &opts)?;
            let dump = to_json(&commands::chamber_document(&cs.expect("cover yields chambers")));
            if !write_out(out, &dump)? {
                print!("{dump}");
            }
            eprint!("{}", to_json(&summary));
        }
        Command::Spectra { complex, source, convention, out } => {
            let loaded = commands::load_complex(complex, &source.options())?;
            let (data, report) = commands::spectra(&loaded.chambers, *convention)?;
            let json = to_json(&SpectraDocument::from(&data));
            if !write_out(out, &json)? {
                print!("{json}");
            } else {
                say(commands::spectra_table(&data, &report));
            }
        }
        Command::Census { complex, source, max_k, weights, out } => {
            let loaded = commands::load_complex(complex, &source.options())?;
            let csv = write_census(&commands::census(&loaded, *max_k, *weights)?);
            if !write_out(out, &csv)? {
                print!("{csv}");
            }
        }
        Command::Zeta(ZetaCommand::Fit { args }) => {
            let (census, spec) = zeta_inputs(args)?;
            let doc = commands::zeta_fit(&census, &spec, args.window)?;
            write_out(&args.out, &to_json(&doc))?;
            say(commands::fit_table(&doc));
        }
        Command::Zeta(ZetaCommand::Asymptotics { args, lattice, sublattice }) => {
            let (census, spec) = zeta_inputs(args)?;
            let load = |p: &Option<PathBuf>| p.as_ref().map(|p| read_lattice(&name(p), &read_text(p)?)).transpose();
            let doc = commands::zeta_asymptotics(&census, &spec, load(lattice)?, load(sublattice)?, args.window)?;
            write_out(&args.out, &to_json(&doc))?;
            say(commands::asymptotics_table(&doc));
        }
        Command::ClassSum { records, asymptotics, places, degree, out } => {
            let recs = read_records(&name(records), &read_text(records)?)?;
            let doc = commands::class_sum(&recs, &report_from(asymptotics)?, places, *degree)?;
            write_out(out, &to_json(&doc))?;
            say(commands::class_sum_table(&doc));
        }
        Command::Run { config } => {
            let manifest = run_pipeline(config)?;
            say(to_json(&manifest));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
