use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use coded_caching::analysis::{
    brute_force_min_f, comparison_row, eta_ratio, grouping_compare, lambda_ratio, stirling_binom,
    table_csv, table_vi, ComparisonRow, DEFAULT_SEARCH_BUDGET,
};
use coded_caching::constructions::{construction_a, construction_b, for_system, maddah_ali_niesen};
use coded_caching::ratio::fraction_string;
use coded_caching::sim::{DEFAULT_EXHAUSTIVE_CAP, DEFAULT_PACKET_BYTES};
use coded_caching::{
    parse_pda, write_pda, CachingInstance, DemandVector, Detail, Error, MemoryRatio, Pda,
    VerifyMode,
};

#[derive(Parser)]
#[command(
    name = "pda",
    version,
    about = "Placement delivery arrays for coded caching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    An,
    A,
    B,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Build an array and optionally write it to a file.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long = "K")]
        users: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        ratio: Option<MemoryRatio>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an array file against the defining conditions.
    Validate {
        file: PathBuf,
        #[arg(long)]
        verbose: bool,
    },
    /// Run placement, delivery and decoding for an array file.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        files: usize,
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "verify",
            required_unless_present = "verify"
        )]
        demand: Option<Vec<usize>>,
        /// `exhaustive` or `sample:COUNT:SEED`.
        #[arg(long)]
        verify: Option<VerifyArg>,
        #[arg(long, default_value_t = DEFAULT_PACKET_BYTES)]
        packet_bytes: usize,
        /// Seed for the random file contents.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: u64,
    },
    /// Rates, gains and subpacketization at one operating point.
    Analyze {
        #[arg(long = "K")]
        users: usize,
        #[arg(long)]
        ratio: MemoryRatio,
        /// Also compare the two grouping strategies at this coding gain.
        #[arg(long)]
        g: Option<usize>,
    },
    /// Comparison table as CSV.
    Table {
        #[arg(long, value_enum, conflicts_with_all = ["users", "ratio"])]
        set: Option<TableSet>,
        #[arg(long = "K", value_delimiter = ',', requires = "ratio")]
        users: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', requires = "users")]
        ratio: Option<Vec<MemoryRatio>>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Smallest row count of a regular array with fixed stars per row.
    Search {
        #[arg(long = "K")]
        users: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        stars_per_row: usize,
        #[arg(long, default_value_t = 8)]
        fmax: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableSet {
    Table6,
}

#[derive(Clone, Copy)]
struct VerifyArg(VerifyMode);

impl std::str::FromStr for VerifyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exhaustive" {
            return Ok(VerifyArg(VerifyMode::exhaustive()));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["sample", count, seed] => {
                let count = count
                    .parse()
                    .map_err(|_| format!("bad sample count `{count}`"))?;
                let seed = seed.parse().map_err(|_| format!("bad seed `{seed}`"))?;
                Ok(VerifyArg(VerifyMode::Sample { count, seed }))
            }
            _ => Err(format!(
                "expected `exhaustive` or `sample:COUNT:SEED`, got `{s}`"
            )),
        }
    }
}

/// Failure classes with their exit codes.
enum Failure {
    Domain(anyhow::Error),
    Usage(anyhow::Error),
    Budget(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.into()),
            Error::SearchBudgetExceeded { .. } => Failure::Budget(e.into()),
            _ => Failure::Domain(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct {
            family,
            users,
            t,
            q,
            m,
            ratio,
            out,
        } => construct(family, users, t, q, m, ratio, out.as_deref()),
        Command::Validate { file, verbose } => validate(&file, verbose),
        Command::Simulate {
            file,
            files,
            demand,
            verify,
            packet_bytes,
            seed,
            cap,
        } => simulate(&file, files, demand, verify, packet_bytes, seed, cap),
        Command::Analyze { users, ratio, g } => analyze(users, ratio, g),
        Command::Table {
            set,
            users,
            ratio,
            csv,
        } => table(set, users, ratio, csv.as_deref()),
        Command::Search {
            users,
            g,
            stars_per_row,
            fmax,
            budget,
        } => search(users, g, stars_per_row, fmax, budget),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Domain(e) | Failure::Usage(e) | Failure::Budget(e)) = &f;
            eprintln!("error: {e:#}");
            ExitCode::from(f.code())
        }
    }
}

fn required<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(anyhow!("--family {family} needs {flag}")))
}

fn construct(
    family: Family,
    users: Option<usize>,
    t: Option<usize>,
    q: Option<u64>,
    m: Option<u32>,
    ratio: Option<MemoryRatio>,
    out: Option<&Path>,
) -> Outcome {
    let pda = match family {
        Family::An => maddah_ali_niesen(required(users, "--K", "an")?, required(t, "--t", "an")?)?,
        Family::A => construction_a(required(q, "--q", "a")?, required(m, "--m", "a")?)?,
        Family::B => construction_b(required(q, "--q", "b")?, required(m, "--m", "b")?)?,
        Family::Auto => for_system(
            required(users, "--K", "auto")?,
            required(ratio, "--ratio", "auto")?,
        )?,
    };
    if let Some(path) = out {
        fs::write(path, write_pda(&pda)).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", describe(&pda));
    Ok(())
}

fn describe(pda: &Pda) -> String {
    let gain = match pda.regularity().gain {
        Some(g) => g.to_string(),
        None => "irregular".into(),
    };
    format!(
        "{} g={gain} rate={}",
        pda.params(),
        fraction_string(&pda.rate())
    )
}

fn read_pda(path: &Path) -> Result<Pda, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    parse_pda(&text).map_err(|e| Failure::Usage(anyhow!("{}: {e}", path.display())))
}

fn validate(path: &Path, verbose: bool) -> Outcome {
    let pda = read_pda(path)?;
    let report = pda.validate();
    if report.valid() {
        println!("valid (K,F,Z,S)={}", pda.params());
        if verbose {
            println!("{}", describe(&pda));
        }
        return Ok(());
    }
    println!("invalid (K,F,Z,S)={}", pda.params());
    let shown = if verbose { report.violations.len() } else { 20 };
    for v in report.violations.iter().take(shown) {
        println!("  {v}");
    }
    if report.violations.len() > shown {
        println!(
            "  ... {} more (use --verbose)",
            report.violations.len() - shown
        );
    }
    Err(Failure::Domain(anyhow!(
        "{} violation(s)",
        report.violations.len()
    )))
}

fn simulate(
    path: &Path,
    files: usize,
    demand: Option<Vec<usize>>,
    verify: Option<VerifyArg>,
    packet_bytes: usize,
    seed: u64,
    cap: u64,
) -> Outcome {
    let pda = read_pda(path)?;
    let inst = CachingInstance::place(pda, files)?.with_random_payloads(packet_bytes, seed);

    if let Some(VerifyArg(mode)) = verify {
        let mode = match mode {
            VerifyMode::Exhaustive { .. } => VerifyMode::Exhaustive { cap },
            other => other,
        };
        let summary = inst.verify_demands(mode, Detail::Summary)?;
        for o in &summary.outcomes {
            println!("{o}");
        }
        println!("{}", summary.summary_line());
        if !summary.all_ok() {
            return Err(anyhow!("{} demand(s) failed", summary.demands - summary.ok).into());
        }
        return Ok(());
    }

    let demand = DemandVector(demand.expect("clap requires --demand or --verify"));
    let schedule = inst.deliver(&demand)?;
    for tx in &schedule {
        println!("{tx}");
    }
    let report = inst.run_demand(&demand)?;
    for user in &report.users {
        let got: Vec<String> = user
            .recovered
            .iter()
            .map(|r| format!("{}@{}", r.packet, r.slot))
            .collect();
        println!("user {}: {}", user.user, got.join(" "));
    }
    println!(
        "demand={demand} {} slots={}",
        if report.complete { "ok" } else { "fail" },
        report.slots
    );
    if !report.complete {
        return Err(anyhow!("some user did not recover its file").into());
    }
    Ok(())
}

fn analyze(users: usize, ratio: MemoryRatio, gain: Option<usize>) -> Outcome {
    let row = comparison_row(users, ratio)?;
    println!("K={users} M/N={ratio}");
    println!(
        "g_an={} R_an={} F_an={}",
        row.g_an,
        fraction_string(&row.r_an),
        row.f_an
    );
    println!(
        "g_new={} R_new={} F_new={}",
        row.g_new,
        fraction_string(&row.r_new),
        row.f_new
    );
    println!("lambda={}", fraction_string(&lambda_ratio(users, ratio)?));
    let eta = eta_ratio(users, ratio)?;
    println!(
        "eta={:.4} eta_asymptotic={:.4}",
        eta.exact_f64(),
        eta.asymptotic
    );
    let est = stirling_binom(users, ratio)?;
    println!(
        "binomial={} estimate={:.4e} relative_error={:.4}",
        est.exact, est.estimate, est.relative_error
    );
    if let Some(g) = gain {
        let c = grouping_compare(users, ratio, g)?;
        println!(
            "grouping g={g} q={} R_an={} F_an={} R_new={} F_new={} F_ratio={:.4}",
            c.q,
            fraction_string(&c.r_an),
            c.f_an,
            fraction_string(&c.r_new),
            c.f_new,
            c.f_ratio_f64()
        );
    }
    Ok(())
}

fn table(
    set: Option<TableSet>,
    users: Option<Vec<usize>>,
    ratios: Option<Vec<MemoryRatio>>,
    csv: Option<&Path>,
) -> Outcome {
    let rows: Vec<ComparisonRow> = match (set, users, ratios) {
        (Some(TableSet::Table6), _, _) => table_vi(),
        (None, Some(users), Some(ratios)) => {
            let single = users.len() == 1 && ratios.len() == 1;
            let mut rows = Vec::new();
            for &r in &ratios {
                for &k in &users {
                    match comparison_row(k, r) {
                        Ok(row) => rows.push(row),
                        Err(e) if !single => eprintln!("skipping K={k} M/N={r}: {e}"),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            if rows.is_empty() {
                return Err(Failure::Domain(anyhow!("no valid (K, M/N) combination")));
            }
            rows
        }
        _ => {
            return Err(Failure::Usage(anyhow!(
                "give --set table6 or both --K and --ratio"
            )))
        }
    };
    let text = table_csv(&rows);
    print!("{text}");
    if let Some(path) = csv {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn search(users: usize, g: usize, stars_per_row: usize, fmax: usize, budget: u64) -> Outcome {
    if users > 6 || fmax > 64 {
        return Err(Failure::Usage(anyhow!(
            "search is limited to K <= 6 and fmax <= 64"
        )));
    }
    match brute_force_min_f(users, g, stars_per_row, fmax, budget)? {
        Some(found) => {
            println!("minF={}", found.packets);
            print!("{}", write_pda(&found.witness));
            println!("nodes={}", found.nodes);
        }
        None => println!("none \u{2264} {fmax}"),
    }
    Ok(())
}
