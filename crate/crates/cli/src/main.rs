//! Command-line front end: sequence generation, decompositions, exact gap
//! censuses, limiting-law tables, census-versus-theory comparisons, spectral
//! summaries, and asymptotic approximations.
//!
//! Exit codes: 0 success, 2 usage error, 3 resource cap exceeded, 4 numeric
//! non-convergence. Identical invocations produce byte-identical output; run
//! metadata goes to stderr and only under `--meta`.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use zeckgap::error::Error;
use zeckgap::fardiff;
use zeckgap::gap_census::{self, GapHistogram, PgExperiment};
use zeckgap::recurrence::{kangaroo_spec, KangarooParams, RecurrenceSpec, SequenceTable};
use zeckgap::report::{census_csv, census_json, format_sig, spectral_json, REPORT_SIG_DIGITS};
use zeckgap::spectral;
use zeckgap::zeckendorf::{greedy_decompose, DEFAULT_ENUM_CAP};

#[derive(Parser)]
#[command(name = "zeckgap", version, about = "Generalized Zeckendorf decompositions and exact gap distributions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print run metadata to stderr
    #[arg(long, global = true)]
    meta: bool,
    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Kangaroo parameters as "g,l"
    #[arg(long, value_name = "G,L", conflicts_with = "coeffs")]
    kangaroo: Option<String>,
    /// Explicit recurrence coefficients "c1,c2,...,cL"
    #[arg(long, value_name = "C1,..,CL")]
    coeffs: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the first N terms of a recurrence
    Seq {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of terms
        #[arg(long)]
        count: usize,
    },
    /// Decompose a positive integer (greedy, or far-difference with --fardiff)
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the signed far-difference representation over Fibonacci numbers
        #[arg(long)]
        fardiff: bool,
        /// The integer to decompose
        m: String,
    },
    /// Exact gap census over [G_n, G_{n+1}) (or the far-difference interval)
    Census {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        fardiff: bool,
        /// Top index n
        #[arg(long)]
        n: usize,
        /// Census method
        #[arg(long, default_value = "exact", value_parser = ["enum", "exact"])]
        method: String,
        /// Maximum concurrent enumeration workers
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
        format: String,
    },
    /// Limiting gap law P(j) for j <= jmax
    Theory {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        fardiff: bool,
        #[arg(long)]
        jmax: usize,
        #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
        format: String,
    },
    /// Census versus limiting law, row by row
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        fardiff: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jmax: usize,
        #[arg(long, default_value = "exact", value_parser = ["enum", "exact"])]
        method: String,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
        format: String,
    },
    /// Spectral summary (dominant root, a1, C_Lek, root set) as JSON
    Spectral {
        #[command(flatten)]
        spec: SpecArgs,
        /// Relative tolerance for the root solve
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Large-g asymptotic approximations as JSON
    Approx {
        /// Hop length g
        #[arg(long)]
        g: u64,
        /// Number of hops l (enables the lambda approximation)
        #[arg(long)]
        l: Option<u64>,
    },
}

fn parse_spec(args: &SpecArgs) -> Result<RecurrenceSpec, Error> {
    match (&args.kangaroo, &args.coeffs) {
        (Some(k), None) => {
            let parts: Vec<&str> = k.split(',').collect();
            let bad = || Error::InvalidArgument(format!("--kangaroo expects \"g,l\", got \"{k}\""));
            if parts.len() != 2 {
                return Err(bad());
            }
            let g: u32 = parts[0].trim().parse().map_err(|_| bad())?;
            let l: u32 = parts[1].trim().parse().map_err(|_| bad())?;
            kangaroo_spec(g, l)
        }
        (None, Some(c)) => {
            let coeffs: Result<Vec<u64>, _> = c.split(',').map(|p| p.trim().parse()).collect();
            let coeffs = coeffs
                .map_err(|_| Error::InvalidArgument(format!("--coeffs expects integers, got \"{c}\"")))?;
            RecurrenceSpec::new(coeffs)
        }
        _ => Err(Error::InvalidArgument(
            "exactly one of --kangaroo or --coeffs is required".into(),
        )),
    }
}

fn kangaroo_of(spec: &RecurrenceSpec) -> Result<KangarooParams, Error> {
    spec.as_kangaroo().ok_or_else(|| {
        Error::InvalidArgument("this operation requires a Kangaroo coefficient pattern".into())
    })
}

fn enum_cap() -> u64 {
    std::env::var("ZECK_MAX_ENUM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

fn census_of(spec: &SpecArgs, fardiff: bool, n: usize, method: &str, shards: usize) -> Result<(GapHistogram, Option<KangarooParams>), Error> {
    if fardiff {
        let t = fardiff::s_table(n.max(1))?;
        return Ok((fardiff::far_census(&t, n, enum_cap())?, None));
    }
    let spec = parse_spec(spec)?;
    let params = kangaroo_of(&spec)?;
    let h = if method == "enum" {
        gap_census::census_enumerate(&params, n, enum_cap(), shards.max(1))?
    } else {
        let t = SequenceTable::generate(&spec, n + 1)?;
        gap_census::census_exact(&t, &params, n)?
    };
    Ok((h, Some(params)))
}

fn theory_of(spec: &SpecArgs, fardiff: bool, jmax: usize) -> Result<(gap_census::TheoryDistribution<f64>, Option<KangarooParams>), Error> {
    if fardiff {
        return Ok((fardiff::far_theory(jmax)?, None));
    }
    let spec = parse_spec(spec)?;
    let params = kangaroo_of(&spec)?;
    let summary = spectral::summarize::<f64>(&spec, 1e-12)?;
    Ok((gap_census::theory_distribution(&params, &summary, jmax)?, Some(params)))
}

fn histogram_csv(h: &GapHistogram) -> String {
    let mut out = String::from("j,count\n");
    for (j, c) in h.counts() {
        out.push_str(&format!("{j},{c}\n"));
    }
    out
}

fn histogram_json(h: &GapHistogram, params: Option<KangarooParams>) -> String {
    let gl = |v: Option<u32>| v.map_or("null".to_string(), |x| x.to_string());
    let mut out = format!(
        "{{\"g\":{},\"l\":{}",
        gl(params.map(|p| p.hop())),
        gl(params.map(|p| p.hops())),
    );
    if params.is_none() {
        out.push_str(",\"fardiff\":true");
    }
    out.push_str(&format!(",\"n\":{},\"Y\":{},\"rows\":[", h.top(), h.total()));
    for (k, (j, c)) in h.counts().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&format!("{{\"j\":{j},\"count\":{c}}}"));
    }
    out.push_str("]}");
    out
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.cmd {
        Cmd::Seq { spec, count } => {
            if *count == 0 {
                return Err(Error::InvalidArgument("--count must be >= 1".into()));
            }
            let spec = parse_spec(spec)?;
            let t = SequenceTable::generate(&spec, *count)?;
            let terms: Vec<String> = t.values().iter().map(|v| v.to_string()).collect();
            Ok(terms.join(" ") + "\n")
        }
        Cmd::Decompose { spec, fardiff: far, m } => {
            let m: BigInt = m
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("not an integer: \"{m}\"")))?;
            if *far {
                if spec.kangaroo.is_some() || spec.coeffs.is_some() {
                    return Err(Error::InvalidArgument(
                        "--fardiff fixes the Fibonacci sequence; drop --kangaroo/--coeffs".into(),
                    ));
                }
                let t = fardiff::s_table(2)?;
                let d = fardiff::far_decompose(&t, &m)?;
                let t = fardiff::s_table(d.terms()[0].0)?;
                let mut out = String::new();
                for (k, &(i, s)) in d.terms().iter().enumerate() {
                    let v = t.f(i)?;
                    if k == 0 {
                        out.push_str(&format!("+{v}"));
                    } else {
                        out.push_str(&format!(" {} {v}", if s == 1 { '+' } else { '-' }));
                    }
                }
                return Ok(out + "\n");
            }
            let spec = parse_spec(spec)?;
            let t = SequenceTable::generate(&spec, 2)?;
            let d = greedy_decompose(&t, &m)?;
            let t = t.extended(d.top());
            let mut parts = Vec::new();
            for (i, &a) in d.coeffs().iter().enumerate() {
                for _ in 0..a {
                    parts.push(t.term(d.top() - i)?.to_string());
                }
            }
            Ok(parts.join(" + ") + "\n")
        }
        Cmd::Census { spec, fardiff, n, method, shards, format } => {
            let (h, params) = census_of(spec, *fardiff, *n, method, *shards)?;
            Ok(if format == "json" {
                histogram_json(&h, params) + "\n"
            } else {
                histogram_csv(&h)
            })
        }
        Cmd::Theory { spec, fardiff, jmax, format } => {
            let (th, params) = theory_of(spec, *fardiff, *jmax)?;
            if format == "json" {
                let gl = |v: Option<u32>| v.map_or("null".to_string(), |x| x.to_string());
                let mut out = format!(
                    "{{\"g\":{},\"l\":{}",
                    gl(params.map(|p| p.hop())),
                    gl(params.map(|p| p.hops())),
                );
                if th.is_fardiff() {
                    out.push_str(",\"fardiff\":true");
                }
                out.push_str(",\"rows\":[");
                for j in 1..=*jmax {
                    if j > 1 {
                        out.push(',');
                    }
                    out.push_str(&format!(
                        "{{\"j\":{j},\"p\":{}}}",
                        format_sig(th.prob(j), REPORT_SIG_DIGITS)
                    ));
                }
                out.push_str(&format!(
                    "],\"tailMass\":{}}}\n",
                    format_sig(th.tail_mass(), REPORT_SIG_DIGITS)
                ));
                Ok(out)
            } else {
                let mut out = String::from("j,p_theory\n");
                for j in 1..=*jmax {
                    out.push_str(&format!("{j},{}\n", format_sig(th.prob(j), REPORT_SIG_DIGITS)));
                }
                Ok(out)
            }
        }
        Cmd::Compare { spec, fardiff, n, jmax, method, shards, format } => {
            let (h, params) = census_of(spec, *fardiff, *n, method, *shards)?;
            let (th, _) = theory_of(spec, *fardiff, *jmax)?;
            // the open-question experiment: both P(g) candidates when l >= 3
            let pg = params.filter(|p| p.hops() >= 3).map(|p| {
                let lam = spectral::kangaroo_dominant_root::<f64>(
                    p.hop() as u64,
                    p.hops() as u64,
                    1e-13,
                )?;
                let cand = gap_census::pg_candidates(&p, lam);
                Ok::<_, Error>(PgExperiment {
                    j: p.hop() as usize,
                    unweighted: cand.unweighted,
                    weighted: cand.weighted,
                })
            });
            let pg = pg.transpose()?;
            let report = gap_census::compare(
                &h,
                &th,
                params.map(|p| p.hop()),
                params.map(|p| p.hops()),
                pg,
            );
            Ok(if format == "json" {
                census_json(&report) + "\n"
            } else {
                census_csv(&report)
            })
        }
        Cmd::Spectral { spec, tol } => {
            let spec = parse_spec(spec)?;
            if *tol <= 0.0 {
                return Err(Error::InvalidArgument("--tol must be positive".into()));
            }
            let s = spectral::summarize::<f64>(&spec, *tol)?;
            Ok(spectral_json(&s) + "\n")
        }
        Cmd::Approx { g, l } => {
            let a = spectral::alpha_approx::<f64>(*g)?;
            let mut out = format!(
                "{{\"g\":{g},\"alpha\":{},\"residual\":{}",
                format_sig(a.alpha, REPORT_SIG_DIGITS),
                format_sig(a.residual, REPORT_SIG_DIGITS)
            );
            if let Some(l) = l {
                let lam = spectral::lambda_approx::<f64>(*g, *l)?;
                out.push_str(&format!(
                    ",\"lambda\":{},\"gapRatio\":{},\"warnings\":[",
                    format_sig(lam.lambda, REPORT_SIG_DIGITS),
                    format_sig(lam.gap_ratio, REPORT_SIG_DIGITS)
                ));
                for (k, w) in lam.warnings.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str(&format!("\"{w}\""));
                }
                out.push(']');
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.meta {
        let args: Vec<String> = std::env::args().collect();
        eprintln!(
            "# zeckgap {} | invocation: {}",
            env!("CARGO_PKG_VERSION"),
            args.join(" ")
        );
    }
    match run(&cli) {
        Ok(out) => {
            let result = match &cli.output {
                Some(path) => std::fs::write(path, &out).map_err(|e| e.to_string()),
                None => std::io::stdout()
                    .write_all(out.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = result {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                Error::NonConvergence(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}
