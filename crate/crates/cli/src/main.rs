use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polcert_core::cert::{
    classify_file, render_markdown, search, verify, CertError, Certificate, ClassifyDomain,
    NegativeControl, RunConfig, SearchRequest, Target, Verdict,
};
use polcert_core::matrep::ElementaryTarget;

/// Exact verification certificates for polynomial maps on C3 and the
/// matrix representations of Pol3(C3).
#[derive(Parser)]
#[command(name = "polcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipelines of a target and emit a certificate.
    Verify {
        /// pol2, presentation, char0, char3, remark, nilpotency or all
        target: Target,
        /// Run configuration (JSON, or TOML by extension).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Certificate output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrupt one input, e.g. `pi:b:0,1`, `rho:b:2,2`, `relator:gamma:0`.
        #[arg(long)]
        mutate: Option<NegativeControl>,
    },
    /// List the unital polynomial maps of a given degree from C3 (or C2).
    Classify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        degree: i64,
        #[arg(long, default_value = "c3")]
        domain: ClassifyDomain,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a word mapping to an elementary matrix.
    Search {
        /// 3: rho over F3[u], targets E_ij(u^k); 0: pi over Z[omega], targets E_ij(3^k).
        #[arg(long = "char", value_parser = ["0", "3"])]
        characteristic: String,
        /// `E13:u^2`, `E21:3`, `identity`, ...
        #[arg(long)]
        target: ElementaryTarget,
        #[arg(long)]
        max_len: Option<usize>,
        /// Entry u-degree bound (char 3) or log3 of the height bound (char 0).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Disable meet-in-the-middle lookups.
        #[arg(long)]
        no_mitm: bool,
        /// Verification-only mode: check this word in a, b against the target.
        #[arg(long)]
        check_word: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render a certificate file.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CertError> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn emit(cert: &Certificate, out: Option<&Path>) -> Result<(), CertError> {
    let json = cert.to_json();
    match out {
        Some(p) => std::fs::write(p, json + "\n")?,
        None => println!("{json}"),
    }
    let count = |v: Verdict| cert.body.claims.iter().filter(|c| c.verdict == v).count();
    eprintln!(
        "{}: {} verified, {} assumed-lemma, {} inconclusive, {} falsified",
        cert.body.command,
        count(Verdict::Verified),
        count(Verdict::AssumedLemma),
        count(Verdict::Inconclusive),
        count(Verdict::Falsified),
    );
    for c in cert.body.claims.iter().filter(|c| c.verdict == Verdict::Falsified) {
        eprintln!("  falsified: {}", c.id);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CertError> {
    let cert = match cli.command {
        Command::Verify { target, config, out, mutate } => {
            let mut cfg = load_config(config.as_deref())?;
            if mutate.is_some() {
                cfg.negative_control = mutate;
            }
            let out = out.or_else(|| cfg.output.clone());
            let cert = verify(target, &cfg)?;
            emit(&cert, out.as_deref())?;
            cert
        }
        Command::Classify { group, degree, domain, config, out } => {
            let cfg = load_config(config.as_deref())?;
            let out = out.or_else(|| cfg.output.clone());
            let cert = classify_file(&group, degree, domain, &cfg)?;
            emit(&cert, out.as_deref())?;
            cert
        }
        Command::Search {
            characteristic,
            target,
            max_len,
            max_degree,
            max_nodes,
            budget_ms,
            no_mitm,
            check_word,
            config,
            out,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            cfg.search_max_len = max_len.unwrap_or(cfg.search_max_len);
            cfg.search_max_degree = max_degree.unwrap_or(cfg.search_max_degree);
            cfg.search_max_nodes = max_nodes.unwrap_or(cfg.search_max_nodes);
            cfg.search_budget_ms = budget_ms.or(cfg.search_budget_ms);
            cfg.meet_in_middle &= !no_mitm;
            let req = SearchRequest {
                characteristic: characteristic.parse().expect("validated by clap"),
                target,
                check_word,
            };
            let out = out.or_else(|| cfg.output.clone());
            let cert = search(&req, &cfg)?;
            emit(&cert, out.as_deref())?;
            cert
        }
        Command::Report { input, format } => {
            let text = std::fs::read_to_string(&input)?;
            let cert: Certificate = serde_json::from_str(&text)?;
            match format {
                Format::Json => println!("{}", cert.to_json()),
                Format::Markdown => print!("{}", render_markdown(&cert)),
            }
            if !cert.seal_ok() {
                eprintln!("warning: body digest does not match header");
            }
            return Ok(false);
        }
    };
    Ok(cert.falsified())
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("POLCERT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("POLCERT_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
