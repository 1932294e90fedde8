use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zerobound::fixtures::{run_fixture, FIXTURE_NAMES};
use zerobound::oracle::find_roots;
use zerobound::report::{
    format_sig, run_compare, CompareOptions, Format, MACHINE_DIGITS, TEXT_DIGITS,
};
use zerobound::{Error, Polynomial};

const EXIT_FIXTURE_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_MW_REFUSED: u8 = 3;
const EXIT_ORACLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "zerobound",
    version,
    about = "Bounds on the zeros of complex polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate bounds on one polynomial.
    Compare {
        /// Degree-descending coefficients, e.g. "1, 5/4, 4/3, 1, 2, 3, 4".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated method names, or `all`.
        #[arg(long)]
        methods: Option<String>,
        /// `linden=printed|table` or `kittaneh=printed|plus_one`; repeatable.
        #[arg(long = "variant")]
        variants: Vec<String>,
        /// Exponent s in (0, 1) of the block bound.
        #[arg(long)]
        alpha: Option<f64>,
        /// Angle samples for the numerical radius sweep.
        #[arg(long)]
        theta_samples: Option<usize>,
        /// Refuse MW when its guard does not guarantee it.
        #[arg(long)]
        strict_mw: bool,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
        /// Check every bound against computed zeros.
        #[arg(long)]
        oracle: bool,
        /// File of `key=value` defaults; flags take precedence.
        #[arg(long)]
        config: Option<String>,
    },
    /// Reproduce a bundled table: table1..table5, h1..h3, or `all`.
    Fixture { name: String },
    /// Print the zeros of a polynomial.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
}

fn fail(code: u8, err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(code)
}

#[allow(clippy::too_many_arguments)]
fn compare(
    poly: &str,
    methods: Option<String>,
    variants: &[String],
    alpha: Option<f64>,
    theta_samples: Option<usize>,
    strict_mw: bool,
    format: Option<OutFormat>,
    oracle: bool,
    config: Option<String>,
) -> ExitCode {
    let mut opts = CompareOptions::default();
    let setup = (|| -> zerobound::Result<Polynomial> {
        if let Some(path) = &config {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse {
                token: path.clone(),
                reason: e.to_string(),
            })?;
            opts.apply_config(&text)?;
        }
        if let Some(m) = &methods {
            opts.set("methods", m)?;
        }
        for v in variants {
            opts.set_variant(v)?;
        }
        if let Some(a) = alpha {
            opts.set("alpha", &a.to_string())?;
        }
        if let Some(n) = theta_samples {
            opts.theta_samples = n;
        }
        if strict_mw {
            opts.strict_mw = true;
        }
        if oracle {
            opts.oracle = true;
        }
        if let Some(f) = format {
            opts.format = f.into();
        }
        Polynomial::parse(poly)
    })();
    let p = match setup {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, &e),
    };

    let report = run_compare(&p, &opts);
    print!("{}", report.render(opts.format));
    if let Some(err) = &report.oracle_error {
        eprintln!("error: oracle failed: {err}");
        return ExitCode::from(EXIT_ORACLE);
    }
    if report.mw_refused() {
        eprintln!("error: mw refused under --strict-mw");
        return ExitCode::from(EXIT_MW_REFUSED);
    }
    ExitCode::SUCCESS
}

fn fixtures(name: &str) -> ExitCode {
    let names: Vec<&str> = if name == "all" {
        FIXTURE_NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut all_passed = true;
    for n in names {
        match run_fixture(n) {
            Ok(outcome) => {
                print!("{}", outcome.to_text());
                all_passed &= outcome.passed();
            }
            Err(e) => return fail(EXIT_PARSE, &e),
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FIXTURE_FAILED)
    }
}

fn roots(poly: &str, format: Option<OutFormat>) -> ExitCode {
    let p = match Polynomial::parse(poly) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, &e),
    };
    let set = match find_roots(&p) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_ORACLE, &e),
    };
    match format.map(Format::from).unwrap_or_default() {
        Format::Text => {
            println!("p(z) = {p}");
            println!("max modulus {}", format_sig(set.max_modulus, TEXT_DIGITS));
            for (z, r) in set.roots.iter().zip(&set.residuals) {
                println!(
                    "{:>18} {:>18}i  |z| {:>14}  residual {:.2e}",
                    format_sig(z.re, TEXT_DIGITS),
                    format_sig(z.im, TEXT_DIGITS),
                    format_sig(z.norm(), TEXT_DIGITS),
                    r
                );
            }
        }
        Format::Csv => {
            println!("re,im,modulus,residual");
            for (z, r) in set.roots.iter().zip(&set.residuals) {
                println!(
                    "{},{},{},{}",
                    format_sig(z.re, MACHINE_DIGITS),
                    format_sig(z.im, MACHINE_DIGITS),
                    format_sig(z.norm(), MACHINE_DIGITS),
                    format_sig(*r, 3)
                );
            }
        }
        Format::Json => {
            let items: Vec<String> = set
                .roots
                .iter()
                .zip(&set.residuals)
                .map(|(z, r)| {
                    format!(
                        "{{\"re\":\"{}\",\"im\":\"{}\",\"modulus\":\"{}\",\"residual\":\"{}\"}}",
                        format_sig(z.re, MACHINE_DIGITS),
                        format_sig(z.im, MACHINE_DIGITS),
                        format_sig(z.norm(), MACHINE_DIGITS),
                        format_sig(*r, 3)
                    )
                })
                .collect();
            println!(
                "{{\"max_modulus\":\"{}\",\"roots\":[{}]}}",
                format_sig(set.max_modulus, MACHINE_DIGITS),
                items.join(",")
            );
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compare {
            poly,
            methods,
            variants,
            alpha,
            theta_samples,
            strict_mw,
            format,
            oracle,
            config,
        } => compare(
            &poly,
            methods,
            &variants,
            alpha,
            theta_samples,
            strict_mw,
            format,
            oracle,
            config,
        ),
        Command::Fixture { name } => fixtures(&name),
        Command::Roots { poly, format } => roots(&poly, format),
    }
}
