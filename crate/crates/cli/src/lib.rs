//! Command-line front end: evaluate W, sweep bounds against the sieve,
//! locate thresholds and crossovers, print asymptotics tables and write the
//! figure data as CSV.
//!
//! Exit status: 0 on success, 1 when `verify` finds violations or
//! `crossover` cannot bracket a root, 2 on usage or domain errors.

pub mod figures;
pub mod format;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wprime::{
    expansion_error_report, find_crossover, find_threshold, lambert_w, pi_ratio_table,
    pn_estimate_table, verify_range, BoundFamily, BoundSpec, Branch, ConvergenceRow, Error,
    PnVariant, PrimeTable, Subject, ViolationKind,
};

use crate::format::real;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Lambert W bounds on the prime counting function and the n'th prime.
#[derive(Debug, Parser)]
#[command(name = "wprime", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one real branch of W.
    #[command(name = "w-eval")]
    WEval {
        /// Branch index: 0 or -1.
        #[arg(long, allow_negative_numbers = true)]
        branch: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Check a bound at every integer of a range against the sieve.
    Verify {
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long = "from")]
        from: u64,
        #[arg(long = "to")]
        to: u64,
    },
    /// Smallest start from which a bound holds up to --to.
    Threshold {
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long = "to")]
        to: u64,
    },
    /// Where the power-family lower bound with eps-b overtakes the one with eps-a.
    Crossover {
        #[arg(long)]
        eps_a: f64,
        #[arg(long)]
        eps_b: f64,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long)]
        hi: f64,
    },
    /// Write the figure data as CSV files.
    Figures {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 100)]
        xmax: u64,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
    },
    /// Print a convergence table as CSV.
    Asym {
        #[arg(long, value_enum)]
        kind: AsymKind,
        /// Comma-separated integers.
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<u64>,
    },
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Bound id, e.g. pi-upper-w or pn-upper.
    #[arg(long)]
    bound: String,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    coeff: Option<f64>,
    #[arg(long)]
    shift: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsymKind {
    Pi,
    PnBasic,
    PnRefined,
    Expansion,
}

/// A failure with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Bracket { .. } | Error::Ambiguous { .. } => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("i/o error: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parse `args` (program name first) and run, writing results to `out` and
/// diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::WEval { branch, x } => w_eval(&branch, x, out),
        Command::Verify { bound, from, to } => verify(&bound, from, to, out),
        Command::Threshold { bound, to } => threshold(&bound, to, out),
        Command::Crossover {
            eps_a,
            eps_b,
            lo,
            hi,
        } => crossover(eps_a, eps_b, lo, hi, out),
        Command::Figures {
            out: dir,
            xmax,
            nmax,
        } => write_figures(&dir, xmax, nmax, out),
        Command::Asym { kind, points } => asym(kind, &points, out),
    }
}

fn w_eval(branch: &str, x: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    let branch: Branch = branch.parse()?;
    let w = lambert_w(branch, x)?;
    writeln!(out, "branch,x,value,residual,iterations")?;
    writeln!(
        out,
        "{branch},{},{},{},{}",
        real(x),
        real(w.value),
        real(w.residual),
        w.iterations
    )?;
    Ok(EXIT_OK)
}

/// Turn the bound flags into a spec, rejecting flags the family does not use.
pub fn bound_spec(
    id: &str,
    eps: Option<f64>,
    coeff: Option<f64>,
    shift: Option<f64>,
) -> Result<BoundSpec, String> {
    let family: BoundFamily = id.parse().map_err(|e: Error| e.to_string())?;
    let unused = |flag: &str| Err(format!("--{flag} is not used by {family}"));
    let spec = match family {
        BoundFamily::PiUpperW | BoundFamily::PnLower | BoundFamily::UInverse => {
            if eps.is_some() {
                return unused("eps");
            }
            if coeff.is_some() {
                return unused("coeff");
            }
            if shift.is_some() {
                return unused("shift");
            }
            match family {
                BoundFamily::PiUpperW => BoundSpec::pi_upper_w(),
                BoundFamily::PnLower => BoundSpec::pn_lower(),
                _ => BoundSpec::u_inverse(),
            }
        }
        BoundFamily::PiLowerPower | BoundFamily::PnBandUpper | BoundFamily::PnBandLower => {
            if coeff.is_some() {
                return unused("coeff");
            }
            if shift.is_some() {
                return unused("shift");
            }
            let eps = eps.ok_or_else(|| format!("{family} needs --eps"))?;
            match family {
                BoundFamily::PiLowerPower => BoundSpec::pi_lower_power(eps),
                BoundFamily::PnBandUpper => BoundSpec::pn_band_upper(eps),
                _ => BoundSpec::pn_band_lower(eps),
            }
        }
        BoundFamily::PiLowerLinear => {
            if shift.is_some() {
                return unused("shift");
            }
            match (coeff, eps) {
                (Some(c), None) => BoundSpec::pi_lower_linear(c),
                (None, Some(e)) => BoundSpec::pi_lower_linear_eps(e),
                (Some(_), Some(_)) => return Err("give either --coeff or --eps, not both".into()),
                (None, None) => return Err(format!("{family} needs --coeff (or --eps)")),
            }
        }
        BoundFamily::PnUpper => {
            if eps.is_some() {
                return unused("eps");
            }
            if coeff.is_some() {
                return unused("coeff");
            }
            BoundSpec::pn_upper(shift.unwrap_or(0.0))
        }
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn spec_from(args: &BoundArgs) -> Result<BoundSpec, Failure> {
    bound_spec(&args.bound, args.eps, args.coeff, args.shift).map_err(usage)
}

/// Sieve limit that covers `p_n` for every `n ≤ count`, plus one more prime.
fn table_for_primes(count: u64) -> Result<PrimeTable, Failure> {
    let n = (count + 1) as f64;
    let mut limit = if n < 6.0 {
        15
    } else {
        (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1
    };
    loop {
        let table = PrimeTable::build(limit)?;
        if table.prime_count() > count {
            return Ok(table);
        }
        limit *= 2;
    }
}

/// Sieve limit that covers `x ≤ max` and the prime following it.
fn table_for_x(max: u64) -> Result<PrimeTable, Failure> {
    let mut limit = max.max(2) + 64;
    loop {
        let table = PrimeTable::build(limit)?;
        if table.largest_prime() > max {
            return Ok(table);
        }
        limit *= 2;
    }
}

fn table_for(subject: Subject, hi: u64) -> Result<PrimeTable, Failure> {
    match subject {
        Subject::PrimeCount => table_for_x(hi),
        Subject::NthPrime => table_for_primes(hi),
    }
}

fn describe(spec: &BoundSpec) -> String {
    let family = spec.family;
    match family {
        BoundFamily::PiLowerPower | BoundFamily::PnBandUpper | BoundFamily::PnBandLower => {
            format!("{family} eps={}", real(spec.epsilon))
        }
        BoundFamily::PiLowerLinear => format!("{family} coeff={}", real(spec.linear_coeff)),
        BoundFamily::PnUpper => format!("{family} shift={}", real(spec.shift)),
        _ => family.to_string(),
    }
}

fn arg_name(subject: Subject) -> &'static str {
    match subject {
        Subject::PrimeCount => "x",
        Subject::NthPrime => "n",
    }
}

fn verify(args: &BoundArgs, from: u64, to: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = spec_from(args)?;
    if from > to {
        return Err(usage(format!("--from {from} exceeds --to {to}")));
    }
    let subject = spec.family.subject();
    let table = table_for(subject, to)?;
    let report = verify_range(&spec, &table, from, to)?;
    let name = arg_name(subject);

    writeln!(out, "bound {}", describe(&spec))?;
    writeln!(out, "range {from} {to}")?;
    writeln!(out, "checked {}", report.checked())?;
    writeln!(out, "skipped {}", report.skipped.len())?;
    writeln!(out, "{} violations", report.violations.len())?;
    for v in &report.violations {
        let kind = match v.kind {
            ViolationKind::Strict => "strict",
            ViolationKind::Marginal => "marginal",
            ViolationKind::Undefined => "undefined",
        };
        let bound = v.bound.map(real).unwrap_or_else(|| "undefined".into());
        writeln!(
            out,
            "violation {name}={} bound={bound} truth={} kind={kind}",
            v.arg, v.truth
        )?;
    }
    match report.empirical_threshold {
        Some(t) => writeln!(out, "empirical_threshold {t}")?,
        None => writeln!(out, "empirical_threshold none")?,
    }
    Ok(if report.holds() { EXIT_OK } else { EXIT_FAILED })
}

fn threshold(args: &BoundArgs, to: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = spec_from(args)?;
    let table = table_for(spec.family.subject(), to)?;
    let found = find_threshold(&spec, &table, to)?;
    writeln!(out, "bound {}", describe(&spec))?;
    if let Some(claimed) = spec.claimed_from {
        writeln!(out, "claimed_from {claimed}")?;
    }
    match found {
        Some(t) => writeln!(out, "threshold {t}")?,
        None => writeln!(out, "threshold none")?,
    }
    Ok(EXIT_OK)
}

fn crossover(
    eps_a: f64,
    eps_b: f64,
    lo: f64,
    hi: f64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let a = BoundSpec::pi_lower_power(eps_a);
    let b = BoundSpec::pi_lower_power(eps_b);
    let x = find_crossover(&a, &b, lo, hi)?;
    writeln!(out, "crossover {}", real(x))?;
    Ok(EXIT_OK)
}

fn write_figures(dir: &PathBuf, xmax: u64, nmax: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    if xmax == 0 || nmax == 0 {
        return Err(usage("--xmax and --nmax must be positive"));
    }
    std::fs::create_dir_all(dir)?;
    let by_x = table_for_x(xmax)?;
    let table = if by_x.prime_count() > nmax {
        by_x
    } else {
        let by_n = table_for_primes(nmax)?;
        if by_n.limit() >= xmax {
            by_n
        } else {
            PrimeTable::build(xmax.max(by_n.limit()))?
        }
    };
    for csv in figures::generate(&table, xmax, nmax)? {
        let path = csv.write_to(dir)?;
        writeln!(out, "{} {}", path.display(), csv.rows)?;
    }
    Ok(EXIT_OK)
}

fn asym(kind: AsymKind, points: &[u64], out: &mut dyn Write) -> Result<i32, Failure> {
    let max = points.iter().copied().max().unwrap_or(0);
    let rows: Vec<ConvergenceRow> = match kind {
        AsymKind::Pi => pi_ratio_table(&table_for_x(max)?, points)?,
        AsymKind::PnBasic => pn_estimate_table(&table_for_primes(max)?, points, PnVariant::Basic)?,
        AsymKind::PnRefined => {
            pn_estimate_table(&table_for_primes(max)?, points, PnVariant::Refined)?
        }
        AsymKind::Expansion => expansion_error_report(&table_for_primes(max)?, points)?,
    };
    let Some(first) = rows.first() else {
        return Err(usage("--points is empty"));
    };
    let ids: Vec<&str> = first.estimates.keys().copied().collect();
    let mut header = vec!["index".to_string(), "truth".to_string()];
    for id in &ids {
        header.extend([
            id.to_string(),
            format!("{id}_ratio"),
            format!("{id}_rel_error"),
        ]);
    }
    writeln!(out, "{}", header.join(","))?;
    for row in &rows {
        let mut fields = vec![row.index.to_string(), row.truth.to_string()];
        for id in &ids {
            fields.push(real(row.estimates[id]));
            fields.push(real(row.ratios[id]));
            fields.push(real(row.rel_error[id]));
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(EXIT_OK)
}
