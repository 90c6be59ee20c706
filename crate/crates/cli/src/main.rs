use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pumgab::distance::{row_distance_profile, DpBudget, Metric};
use pumgab::matrix::{hamming_weight, rank_norm, sum_rank_weight};
use pumgab::pum::{build_code, min_field_size, rate_check, PumCode, PumParams};
use pumgab::record::{
    BlockSeqRecord, CheckRecord, CodeRecord, ProfileRecord, Record, VerifyReport,
};
use pumgab::{Error, ExtField};

const EXIT_VALIDATION: u8 = 1;
const EXIT_IO: u8 = 3;
const EXIT_BUDGET: u8 = 4;

/// Memory-one convolutional codes from Gabidulin parity checks.
#[derive(Parser, Debug)]
#[command(name = "pumgab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and write its record.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long = "mH", default_value_t = 1)]
        mh: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Extension degree; defaults to the smallest admissible one.
        #[arg(long)]
        s: Option<usize>,
        /// Monic modulus coefficients, constant term first, comma separated.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check every structural property of a stored code.
    Verify {
        code: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extended row distances, free distance and slope estimate.
    Distance {
        code: PathBuf,
        #[arg(long = "L")]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = MetricArg::SumRank)]
        metric: MetricArg,
        /// Maximum number of trellis states.
        #[arg(long)]
        budget: Option<u128>,
        /// Slope window as `start,end`.
        #[arg(long, value_delimiter = ',')]
        window: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode an information block sequence; a flush block is appended.
    Encode {
        code: PathBuf,
        info: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sum-rank and Hamming weight of a block sequence.
    Weight { seq: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    SumRank,
    Hamming,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::SumRank => Metric::SumRank,
            MetricArg::Hamming => Metric::Hamming,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
    Checks(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Lib(Error::Record(_)) => EXIT_IO,
            Failure::Lib(Error::BudgetExceeded { .. })
            | Failure::Lib(Error::EnumerationTooLarge { .. }) => EXIT_BUDGET,
            Failure::Lib(_) | Failure::Checks(_) => EXIT_VALIDATION,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(m) | Failure::Checks(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<PumCode, Failure> {
    Ok(CodeRecord::from_json(&read(path)?)?.to_code()?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct {
            n,
            k,
            k1,
            mh,
            q,
            s,
            modulus,
            out,
        } => construct(PumParams::new(n, k, k1, mh), q, s, modulus, &out),
        Command::Verify { code, out } => verify(&code, out.as_deref()),
        Command::Distance {
            code,
            max_order,
            metric,
            budget,
            window,
            out,
        } => distance(
            &code,
            max_order,
            metric.into(),
            budget,
            window,
            out.as_deref(),
        ),
        Command::Encode { code, info, out } => encode(&code, &info, &out),
        Command::Weight { seq } => weight(&seq),
    }
}

fn construct(
    params: PumParams,
    q: u32,
    s: Option<usize>,
    modulus: Option<Vec<u32>>,
    out: &Path,
) -> Result<(), Failure> {
    let check = rate_check(&params);
    if !check.is_valid() {
        return Err(Error::RateRestriction(check.explanation).into());
    }
    let s = match s {
        Some(s) => s,
        None => min_field_size(params.n, params.k, params.mh)?,
    };
    let field = ExtField::new(q, s, modulus.as_deref())?;
    let code = build_code(&field, params)?;
    write(out, &CodeRecord::from_code(&code).to_json())?;
    println!(
        "constructed ({},{}|{}) mH={} over F_{}^{} ({})",
        params.n, params.k, params.k1, params.mh, q, s, check.explanation
    );
    println!("modulus: {:?}", field.modulus());
    println!("normal element: {}", code.normal_element().to_int());
    println!(
        "h0: {:?}",
        code.h0().iter().map(|x| x.to_int()).collect::<Vec<_>>()
    );
    println!("wrote {}", out.display());
    Ok(())
}

fn verify_checks(code: &PumCode) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let rate = rate_check(code.params());
    checks.push(CheckRecord {
        name: "rate restriction".into(),
        passed: rate.is_valid(),
        detail: rate.explanation,
        witness: None,
    });
    let structural = code.structural_checks();
    let shapes_ok = structural.first().is_some_and(|c| c.passed);
    checks.extend(structural.into_iter().map(CheckRecord::from));
    if !shapes_ok {
        return checks;
    }
    for cond in code.chain_report().conditions {
        checks.push(CheckRecord {
            name: cond.label,
            passed: cond.passed,
            detail: cond.detail,
            witness: cond.dependency,
        });
    }
    match code.minimal_basic_report() {
        Ok(mb) => checks.push(CheckRecord {
            name: "minimal basic parity check".into(),
            passed: mb.passed,
            detail: format!(
                "max minor degree {:?}, constraint length {}",
                mb.max_degree, mb.constraint_length
            ),
            witness: None,
        }),
        Err(e) => checks.push(CheckRecord {
            name: "minimal basic parity check".into(),
            passed: false,
            detail: e.to_string(),
            witness: None,
        }),
    }
    checks
}

fn verify(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let code = load_code(path)?;
    let report = VerifyReport::new(verify_checks(&code));
    if let Some(out) = out {
        write(out, &report.to_json())?;
    }
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        match &c.witness {
            Some(w) => println!("{mark}  {}: {} (dependency {w:?})", c.name, c.detail),
            None => println!("{mark}  {}: {}", c.name, c.detail),
        }
    }
    if report.passed {
        println!("all {} checks passed", report.checks.len());
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Err(Failure::Checks(format!(
            "{failed} of {} checks failed",
            report.checks.len()
        )))
    }
}

fn distance(
    path: &Path,
    max_order: usize,
    metric: Metric,
    budget: Option<u128>,
    window: Option<Vec<usize>>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let code = load_code(path)?;
    let mut dp_budget = DpBudget::default();
    if let Some(b) = budget {
        dp_budget = dp_budget.with_max_states(b);
    }
    let window = match window.as_deref() {
        None => None,
        Some(&[a, b]) => Some((a, b)),
        Some(_) => {
            return Err(Failure::Checks(
                "--window takes exactly two orders, start,end".into(),
            ))
        }
    };
    if let Some((a, b)) = window {
        if a == 0 || b <= a || b > max_order {
            return Err(Error::InvalidWindow {
                start: a,
                end: b,
                reason: format!("need 1 <= start < end <= L = {max_order}"),
            }
            .into());
        }
    }
    let trellis = code.trellis()?;
    let profile = row_distance_profile(&trellis, max_order, metric, &dp_budget)?;
    let record = ProfileRecord::new(&code, &profile, window);
    if let Some(out) = out {
        write(out, &record.to_json())?;
    }
    let fmt = |d: &Option<u32>| d.map_or("empty".to_string(), |v| v.to_string());
    println!("metric: {}", record.metric);
    for (i, d) in record.d_row.iter().enumerate() {
        let flag = if record.zero_block_minimizer[i] {
            " (minimizers contain a zero block)"
        } else {
            ""
        };
        println!("d_{} = {}{flag}", i + 1, fmt(d));
    }
    println!("free distance: {} ({})", fmt(&record.d_free), record.status);
    if let Some(s) = &record.slope_estimate {
        println!("slope estimate over [{}, {}]: {}", s.start, s.end, s.value);
    }
    if let Some(b) = &record.bounds {
        println!(
            "bounds: free distance <= {}, slope <= {}",
            b.free_distance_bound, b.slope_bound
        );
    }
    if record.construction_bound_check.applicable {
        let ok = record
            .construction_bound_check
            .per_order
            .iter()
            .all(|x| x.unwrap_or(true));
        println!("construction lower bound met: {ok}");
    }
    if let Some(out) = out {
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn encode(code_path: &Path, info_path: &Path, out: &Path) -> Result<(), Failure> {
    let code = load_code(code_path)?;
    let (field, info) = BlockSeqRecord::from_json(&read(info_path)?)?.to_seq()?;
    if field != *code.field() {
        return Err(
            Error::Record("information file uses a different field than the code".into()).into(),
        );
    }
    let seq = code.encode_sequence(&info)?;
    write(out, &BlockSeqRecord::new(&field, &seq.code).to_json())?;
    println!(
        "encoded {} information blocks into {} code blocks",
        info.len(),
        seq.code.len()
    );
    println!("wrote {}", out.display());
    Ok(())
}

fn weight(path: &Path) -> Result<(), Failure> {
    let (field, seq) = BlockSeqRecord::from_json(&read(path)?)?.to_seq()?;
    let per_block: Vec<usize> = seq.blocks().iter().map(|b| rank_norm(&field, b)).collect();
    println!("blocks: {}", seq.len());
    println!("block ranks: {per_block:?}");
    println!("sum-rank weight: {}", sum_rank_weight(&field, &seq));
    println!("hamming weight: {}", hamming_weight(&seq));
    Ok(())
}
