//! Command-line front end: parameter scans, figure-data reproduction and
//! CSV/JSON serialization of everything the library computes.
//!
//! All numeric output is written with 17 significant digits so files
//! round-trip to bit-identical doubles. Scan rows are computed in parallel
//! (capped by `SPINFRAME_THREADS`) and written in deterministic order.

pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use spinframe::alignment::{error_via_quadrature, n_copy_error};
use spinframe::asymptotics::residual_scan;
use spinframe::filter::{conditional_error, design_filter, Branch};
use spinframe::fisher::crb_gap_report;
use spinframe::locc::locc_single_pair_bound;
use spinframe::montecarlo::{chebyshev_check, simulate_protocol};
use spinframe::{CoefficientVector, MultiplicityTable, QuadratureSpec, Spin};

use output::{fmt_f64, OutputSink};

/// Exit status policy: 1 for invalid parameters, 2 for internal tolerance
/// failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Tolerance(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Tolerance(_) => 2,
            CliError::Io(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Tolerance(m) => m.clone(),
            CliError::Io(e) => format!("io error: {e}"),
        }
    }
}

impl From<spinframe::Error> for CliError {
    fn from(e: spinframe::Error) -> Self {
        match e {
            spinframe::Error::ToleranceNotMet { .. } => CliError::Tolerance(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "spinframe",
    about = "Reference-frame alignment errors from spin singlets: exact values, scans, simulations",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ErrorMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Figure {
    #[value(name = "fig3")]
    Fig3,
    #[value(name = "fig4")]
    Fig4,
    #[value(name = "fig5")]
    Fig5,
    #[value(name = "supp_nogo")]
    SuppNogo,
    #[value(name = "supp_3copy")]
    Supp3copy,
    #[value(name = "supp_4copy")]
    Supp4copy,
}

#[derive(Debug, Args)]
pub struct SpinRange {
    /// Smallest doubled spin 2j
    #[arg(long)]
    pub twice_j_min: u32,
    /// Largest doubled spin 2j
    #[arg(long)]
    pub twice_j_max: u32,
    /// Step in 2j (2 walks integer spins)
    #[arg(long, default_value_t = 2)]
    pub twice_j_step: u32,
}

impl SpinRange {
    fn values(&self) -> Result<Vec<Spin>, CliError> {
        if self.twice_j_step == 0 || self.twice_j_max < self.twice_j_min {
            return Err(CliError::Usage("empty spin range".into()));
        }
        Ok((self.twice_j_min..=self.twice_j_max)
            .step_by(self.twice_j_step as usize)
            .map(|t| Spin::from_twice(t as i64).unwrap())
            .collect())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact error for n copies of the spin-j singlet
    Error {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        twice_j: u32,
        #[arg(long, value_enum, default_value_t = ErrorMethod::ClosedForm)]
        method: ErrorMethod,
        #[arg(long)]
        output: Option<String>,
    },
    /// Error scan with the regime residual (n = 2, 3 or 4)
    Scan {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        range: SpinRange,
        #[arg(long)]
        output: Option<String>,
    },
    /// Filter design scan: success probability and branch errors
    Filter {
        #[command(flatten)]
        range: SpinRange,
        #[arg(long)]
        output: Option<String>,
    },
    /// Quantum Fisher information matrix of the spin-j singlet
    Qfi {
        #[arg(long)]
        twice_j: u32,
        #[arg(long)]
        output: Option<String>,
    },
    /// Exact error against the Cramér-Rao benchmark
    Crb {
        /// Copy counts (comma separated)
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        /// Doubled spins (comma separated)
        #[arg(long, value_delimiter = ',', required = true)]
        twice_j: Vec<u32>,
        #[arg(long)]
        output: Option<String>,
    },
    /// Monte Carlo simulation of the estimation protocol (JSON result)
    Mc {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        twice_j: u32,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional tail thresholds (comma separated)
        #[arg(long, value_delimiter = ',')]
        epsilons: Vec<f64>,
        #[arg(long)]
        output: Option<String>,
    },
    /// Sector multiplicity table for the n-fold singlet power
    Multiplicities {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        twice_j: u32,
        #[arg(long)]
        output: Option<String>,
    },
    /// Best separable-measurement error for a single pair (JSON result)
    Locc {
        #[arg(long, default_value_t = 1)]
        twice_j: u32,
        #[arg(long)]
        output: Option<String>,
    },
    /// Reproduce a figure's data grid as CSV
    Figures {
        #[arg(long, value_enum)]
        which: Figure,
        /// Row stride for the dense supp-nogo grid
        #[arg(long, default_value_t = 1)]
        stride: u32,
        #[arg(long)]
        output: Option<String>,
    },
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Error {
            n,
            twice_j,
            method,
            output,
        } => cmd_error(n, twice_j, method, output),
        Command::Scan { n, range, output } => cmd_scan(n, &range, output),
        Command::Filter { range, output } => cmd_filter(&range, output),
        Command::Qfi { twice_j, output } => cmd_qfi(twice_j, output),
        Command::Crb { n, twice_j, output } => cmd_crb(&n, &twice_j, output),
        Command::Mc {
            n,
            twice_j,
            trials,
            seed,
            epsilons,
            output,
        } => cmd_mc(n, twice_j, trials, seed, &epsilons, output),
        Command::Multiplicities { n, twice_j, output } => cmd_multiplicities(n, twice_j, output),
        Command::Locc { twice_j, output } => cmd_locc(twice_j, output),
        Command::Figures {
            which,
            stride,
            output,
        } => cmd_figures(which, stride, output),
    }
}

fn spin(twice_j: u32) -> Spin {
    Spin::from_twice(twice_j as i64).unwrap()
}

fn cmd_error(
    n: u32,
    twice_j: u32,
    method: ErrorMethod,
    output: Option<String>,
) -> Result<(), CliError> {
    let report = match method {
        ErrorMethod::ClosedForm => n_copy_error(n, spin(twice_j))?,
        ErrorMethod::Quadrature => {
            let c = CoefficientVector::for_copies(n, spin(twice_j))?;
            error_via_quadrature(&c, &QuadratureSpec::auto_for(n, twice_j))?
        }
    };
    let mut sink = OutputSink::create(output)?;
    sink.csv_header(&["n", "twice_j", "value", "method"])?;
    sink.csv_row(&[
        n.to_string(),
        twice_j.to_string(),
        fmt_f64(report.value),
        report.method.name().to_string(),
    ])?;
    sink.finish()
}

fn cmd_scan(n: u32, range: &SpinRange, output: Option<String>) -> Result<(), CliError> {
    let rows = residual_scan(n, &range.values()?)?;
    let mut sink = OutputSink::create(output)?;
    sink.csv_header(&["n", "twice_j", "error", "leading_term", "residual"])?;
    for row in rows {
        sink.csv_row(&[
            row.n.to_string(),
            row.twice_j.to_string(),
            fmt_f64(row.error),
            fmt_f64(row.leading_term),
            fmt_f64(row.residual),
        ])?;
    }
    sink.finish()
}

fn cmd_filter(range: &SpinRange, output: Option<String>) -> Result<(), CliError> {
    let rows: Result<Vec<_>, spinframe::Error> = range
        .values()?
        .par_iter()
        .map(|&j| {
            let d = design_filter(j)?;
            let err_yes = conditional_error(&d, Branch::Yes)?.value;
            let err_no = conditional_error(&d, Branch::No)?.value;
            Ok((j, d.p_yes, d.argmin_k.twice(), err_yes, err_no))
        })
        .collect();
    let mut sink = OutputSink::create(output)?;
    sink.csv_header(&["j", "p_yes", "argmin_twice_k", "err_yes", "err_no"])?;
    for (j, p_yes, argmin, err_yes, err_no) in rows? {
        sink.csv_row(&[
            j.as_f64().to_string(),
            fmt_f64(p_yes),
            argmin.to_string(),
            fmt_f64(err_yes),
            fmt_f64(err_no),
        ])?;
    }
    sink.finish()
}

fn cmd_qfi(twice_j: u32, output: Option<String>) -> Result<(), CliError> {
    let f = spinframe::fisher::qfi_matrix(spin(twice_j))?;
    let mut sink = OutputSink::create(output)?;
    sink.json(&serde_json::json!({
        "twice_j": twice_j,
        "matrix": f.entries,
    }))?;
    sink.finish()
}

fn cmd_crb(ns: &[u32], twice_js: &[u32], output: Option<String>) -> Result<(), CliError> {
    let mut sink = OutputSink::create(output)?;
    sink.csv_header(&["n", "twice_j", "exact_error", "crb_bound", "ratio"])?;
    for &n in ns {
        for &tj in twice_js {
            let gap = crb_gap_report(n, spin(tj))?;
            sink.csv_row(&[
                n.to_string(),
                tj.to_string(),
                fmt_f64(gap.exact_error),
                fmt_f64(gap.crb_bound),
                fmt_f64(gap.ratio),
            ])?;
        }
    }
    sink.finish()
}

fn cmd_mc(
    n: u32,
    twice_j: u32,
    trials: u64,
    seed: u64,
    epsilons: &[f64],
    output: Option<String>,
) -> Result<(), CliError> {
    let result = if epsilons.is_empty() {
        simulate_protocol(n, spin(twice_j), trials, seed)?
    } else {
        let c = CoefficientVector::for_copies(n, spin(twice_j))?;
        chebyshev_check(&c, epsilons, trials, seed)?
    };
    let mut sink = OutputSink::create(output)?;
    sink.json(&result)?;
    sink.finish()
}

fn cmd_multiplicities(n: u32, twice_j: u32, output: Option<String>) -> Result<(), CliError> {
    let table = MultiplicityTable::new(n, spin(twice_j))?;
    let probs = table.probabilities();
    let mut sink = OutputSink::create(output)?;
    sink.csv_header(&["twice_k", "multiplicity", "p_k"])?;
    for ((tk, m), p) in table.iter().zip(probs) {
        sink.csv_row(&[tk.to_string(), m.to_string(), fmt_f64(p)])?;
    }
    sink.finish()
}

fn cmd_locc(twice_j: u32, output: Option<String>) -> Result<(), CliError> {
    let quad = QuadratureSpec::gauss_legendre(512, 1e-8)?;
    let report = locc_single_pair_bound(spin(twice_j), &quad)?;
    let mut sink = OutputSink::create(output)?;
    sink.json(&report)?;
    sink.finish()
}

fn cmd_figures(which: Figure, stride: u32, output: Option<String>) -> Result<(), CliError> {
    if stride == 0 {
        return Err(CliError::Usage("stride must be positive".into()));
    }
    let mut sink = OutputSink::create(output)?;
    match which {
        Figure::Fig3 => {
            // filter success probability, j from 10 to 1000 in unit steps
            let rows: Result<Vec<_>, spinframe::Error> = (10u32..=1000)
                .into_par_iter()
                .map(|j| Ok((j, design_filter(Spin::integer(j))?.p_yes)))
                .collect();
            sink.csv_header(&["j", "p_yes"])?;
            for (j, p) in rows? {
                sink.csv_row(&[j.to_string(), fmt_f64(p)])?;
            }
        }
        Figure::Fig4 | Figure::Fig5 => {
            // n=4: j^2 <d^2>; n=3: 8 j^2 <d^2> - ln j; j = 100..10000 step 100
            let n = if matches!(which, Figure::Fig4) { 4 } else { 3 };
            let js: Vec<Spin> = (1..=100).map(|k| Spin::integer(100 * k)).collect();
            let rows: Result<Vec<_>, spinframe::Error> = js
                .par_iter()
                .map(|&j| {
                    let e = n_copy_error(n, j)?.value;
                    let jf = j.as_f64();
                    let scaled = if n == 4 {
                        jf * jf * e
                    } else {
                        8.0 * jf * jf * e - jf.ln()
                    };
                    Ok((j.twice() / 2, e, scaled))
                })
                .collect();
            let scaled_name = if n == 4 { "j2_error" } else { "residual" };
            sink.csv_header(&["j", "error", scaled_name])?;
            for (j, e, scaled) in rows? {
                sink.csv_row(&[j.to_string(), fmt_f64(e), fmt_f64(scaled)])?;
            }
        }
        Figure::SuppNogo => {
            // unfavourable-branch error, j from 10 to 10000
            let js: Vec<u32> = (10u32..=10_000).step_by(stride as usize).collect();
            let rows: Result<Vec<_>, spinframe::Error> = js
                .par_iter()
                .map(|&j| {
                    let d = design_filter(Spin::integer(j))?;
                    let e = conditional_error(&d, Branch::No)?.value;
                    Ok((j, e, j as f64 * e))
                })
                .collect();
            sink.csv_header(&["j", "err_no", "j_err_no"])?;
            for (j, e, je) in rows? {
                sink.csv_row(&[j.to_string(), fmt_f64(e), fmt_f64(je)])?;
            }
        }
        Figure::Supp3copy | Figure::Supp4copy => {
            // sector weight distributions in rescaled units (k/j, p*j)
            let n = if matches!(which, Figure::Supp3copy) {
                3
            } else {
                4
            };
            sink.csv_header(&["j", "k_over_j", "p_times_j"])?;
            for j in [50u32, 100] {
                let c = CoefficientVector::for_copies(n, Spin::integer(j))?;
                for (tk, ck) in c.iter() {
                    let k_over_j = tk as f64 / 2.0 / j as f64;
                    sink.csv_row(&[
                        j.to_string(),
                        fmt_f64(k_over_j),
                        fmt_f64(ck * ck * j as f64),
                    ])?;
                }
            }
        }
    }
    sink.finish()
}
