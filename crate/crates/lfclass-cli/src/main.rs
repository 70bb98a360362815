use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use lfclass_cli::report::Status;
use lfclass_cli::{
    cmd_bounds, cmd_bt_window, cmd_conductor, cmd_count_zeros, cmd_detector_demo,
    cmd_hadamard_check, cmd_prop_a1_corpus, cmd_rs_check, cmd_sieve_bound, cmd_turan_demo,
    cmd_verify_jensen, exit_code_for_error, explain,
};

/// Reproducible verification experiments for an axiomatic class of
/// L-functions.
#[derive(Parser)]
#[command(name = "lfclass", version, about)]
struct Cli {
    /// Write the JSON report to this path (wall time goes to stderr only,
    /// so the file is byte-identical across runs of one config and seed).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print what the command verifies and exit.
    #[arg(long, global = true)]
    explain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the critical-strip Jensen identity for one instance.
    VerifyJensen {
        /// "zeta", "q,index", or the generator-image grammar "q;k/n;..."
        #[arg(long, default_value = "zeta")]
        instance: String,
        /// Character selector "q,index" (alias for --instance).
        #[arg(long)]
        character: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Count zeros in a box and/or locate them on the critical line.
    CountZeros {
        #[arg(long, default_value = "zeta")]
        instance: String,
        /// Box as "smin,smax,tmin,tmax".
        #[arg(long = "box")]
        box_spec: Option<String>,
        /// Locate all zeros with |gamma| up to this height.
        #[arg(long)]
        locate: Option<f64>,
        /// Export located zeros as CSV (beta,gamma,residual).
        #[arg(long)]
        out_csv: Option<PathBuf>,
        /// Cross-check located zeros against a CSV table.
        #[arg(long)]
        check_csv: Option<PathBuf>,
    },
    /// Check the Hadamard real-part identity at a point.
    HadamardCheck {
        #[arg(long, default_value = "zeta")]
        instance: String,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 60.0)]
        height: f64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Power-sum witness search over a random corpus.
    TuranDemo {
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        nu_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Zero-detector scan over planted random clusters.
    DetectorDemo {
        #[arg(long, default_value_t = 0.01)]
        eta: f64,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long = "T", default_value_t = 10.0)]
        t_upper: f64,
        #[arg(long = "K", default_value_t = 8)]
        k: u32,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8.0)]
        threshold_constant: f64,
    },
    /// Local Rankin-Selberg factor consistency and inequality check.
    RsCheck {
        /// JSON file with one local representation or a pair.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 30)]
        f_max: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Coefficient inequality chain over a random ramified corpus.
    PropA1Corpus {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        f_max: u32,
    },
    /// Selberg-sieve upper bound for the smoothed rough-number sum.
    SieveBound {
        #[arg(long, default_value = "zeta")]
        instance: String,
        #[arg(long, default_value_t = 1e6)]
        x: f64,
        #[arg(long, default_value_t = 30)]
        z: u64,
        #[arg(long = "T", default_value_t = 1.0)]
        t: f64,
    },
    /// Window sum of lambda(n) Lambda(n) against x/T.
    BtWindow {
        /// "zeta", "delta-rs", or a coefficient file path.
        #[arg(long, default_value = "zeta")]
        instance: String,
        #[arg(long, default_value_t = 1e4)]
        x: f64,
        #[arg(long = "T", default_value_t = 2.0)]
        t: f64,
    },
    /// Analytic conductor from gamma data.
    Conductor {
        #[arg(long)]
        n: u64,
        /// Gamma shifts, each "re" or "re:im"; repeat per shift.
        #[arg(long)]
        mu: Vec<String>,
    },
    /// Closed-form bound evaluators.
    Bounds {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        n_zeros: u32,
        #[arg(long, default_value_t = 0.0)]
        log_l32: f64,
    },
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::VerifyJensen { .. } => "verify-jensen",
        Command::CountZeros { .. } => "count-zeros",
        Command::HadamardCheck { .. } => "hadamard-check",
        Command::TuranDemo { .. } => "turan-demo",
        Command::DetectorDemo { .. } => "detector-demo",
        Command::RsCheck { .. } => "rs-check",
        Command::PropA1Corpus { .. } => "prop-a1-corpus",
        Command::SieveBound { .. } => "sieve-bound",
        Command::BtWindow { .. } => "bt-window",
        Command::Conductor { .. } => "conductor",
        Command::Bounds { .. } => "bounds",
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.explain {
        println!("{}", explain(command_name(&cli.command)));
        return;
    }
    let started = Instant::now();
    let result = match &cli.command {
        Command::VerifyJensen {
            instance,
            character,
            tol,
        } => cmd_verify_jensen(character.as_deref().unwrap_or(instance), *tol),
        Command::CountZeros {
            instance,
            box_spec,
            locate,
            out_csv,
            check_csv,
        } => cmd_count_zeros(
            instance,
            box_spec.as_deref(),
            *locate,
            out_csv.as_ref(),
            check_csv.as_ref(),
        ),
        Command::HadamardCheck {
            instance,
            s,
            height,
            tol,
        } => cmd_hadamard_check(instance, *s, *height, *tol),
        Command::TuranDemo {
            trials,
            nu_max,
            seed,
        } => cmd_turan_demo(*trials, *nu_max, *seed),
        Command::DetectorDemo {
            eta,
            tau,
            t_upper,
            k,
            trials,
            seed,
            threshold_constant,
        } => cmd_detector_demo(
            *eta,
            *tau,
            *t_upper,
            *k,
            *trials,
            *seed,
            *threshold_constant,
        ),
        Command::RsCheck { file, f_max, seed } => cmd_rs_check(file.as_ref(), *f_max, *seed),
        Command::PropA1Corpus {
            trials,
            seed,
            f_max,
        } => cmd_prop_a1_corpus(*trials, *seed, *f_max),
        Command::SieveBound { instance, x, z, t } => cmd_sieve_bound(instance, *x, *z, *t),
        Command::BtWindow { instance, x, t } => cmd_bt_window(instance, *x, *t),
        Command::Conductor { n, mu } => cmd_conductor(*n, mu),
        Command::Bounds {
            c,
            m,
            delta,
            n_zeros,
            log_l32,
        } => cmd_bounds(*c, *m, *delta, *n_zeros, *log_l32),
    };
    let elapsed = started.elapsed();
    match result {
        Ok(report) => {
            print!("{}", report.render_text());
            eprintln!("wall time: {:.1} ms", elapsed.as_secs_f64() * 1e3);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                    eprintln!("error writing report: {e}");
                    std::process::exit(2);
                }
            }
            std::process::exit(match report.status {
                Status::Pass | Status::Info => 0,
                Status::Fail => 1,
            });
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(exit_code_for_error(&err));
        }
    }
}
