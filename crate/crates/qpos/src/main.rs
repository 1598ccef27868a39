//! Command-line surface: evaluate polynomials, run the brute-force
//! oracle, verify transform and lift identities, check named families,
//! and sweep whole regimes.
//!
//! Exit codes: 0 all checks pass, 1 any positivity violation or identity
//! mismatch, 2 usage or parameter errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qpos::dseries::{self, parse_rational, DParams, RegimeKind};
use qpos::harness::{self, FamilyId, SweepFilters, Verdict, VerdictCache};
use qpos::partitions::{self, HookConstraint, Partition};
use qpos::qseries;
use qpos::transforms::{self, KernelKind};
use qpos::Error;

#[derive(Parser)]
#[command(name = "qpos", version, about = "Exact hook-difference polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gaussian binomial [N over M] in base q^base as JSON
    Qbinom {
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "M")]
        m: i64,
        #[arg(long, default_value_t = 1)]
        base: u32,
    },
    /// Evaluate D_{K,i}(N,M;alpha,beta), optionally in base q^base
    Dpoly {
        #[arg(long = "K")]
        k: i64,
        #[arg(long)]
        i: i64,
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "M")]
        m: i64,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1)]
        base: u32,
    },
    /// Evaluate G(N,M;alpha,beta,K)
    Gpoly {
        #[arg(long = "K")]
        k: i64,
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "M")]
        m: i64,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Brute-force partition oracle for integer alpha, beta
    Oracle {
        #[arg(long = "K")]
        k: i64,
        #[arg(long)]
        i: i64,
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "M")]
        m: i64,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Write a JSON report including the admissible partitions
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hook differences of a partition, row by row
    Hooks {
        /// Comma-separated non-increasing positive parts, e.g. 5,3,1
        #[arg(long)]
        partition: String,
    },
    /// Verify the kernel transform identities on a grid
    VerifyTransforms {
        /// C, O, W, A, or ATILDE; all kinds when omitted
        #[arg(long)]
        kind: Option<String>,
        #[arg(long = "max-L", default_value_t = 8)]
        max_l: i64,
        /// Index margin around the support; defaults to L+3
        #[arg(long = "max-a")]
        max_a: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the lift-identity catalog
    VerifyLifts {
        #[arg(long = "max-L", default_value_t = 6)]
        max_l: i64,
        /// Restrict to instances whose label starts with this id
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Instantiate and check one named family member
    CheckFamily {
        #[arg(long)]
        id: String,
        /// Family parameters, e.g. L=2,p=2,pp=3,r=1,s=1
        #[arg(long)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Non-negativity sweep over a whole regime
    Sweep {
        /// COR_1_2, CONJ_1_3, or CONJ_2_1
        #[arg(long)]
        regime: String,
        /// Bound on N+M
        #[arg(long = "max-size")]
        max_size: i64,
        /// Filters: maxK=..., K=..., i=..., maxden=...
        #[arg(long)]
        params: Option<String>,
        /// Worker threads; defaults to available cores
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Verdict cache directory (env QPOS_CACHE_DIR as fallback)
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
    },
}

fn write_report(path: &PathBuf, verdicts: &[Verdict], summary: &serde_json::Value) -> Result<(), Error> {
    let mut lines = Vec::with_capacity(verdicts.len() + 1);
    for v in verdicts {
        lines.push(serde_json::to_string(v).expect("verdict serializes"));
    }
    lines.push(summary.to_string());
    lines.push(String::new());
    std::fs::write(path, lines.join("\n"))?;
    Ok(())
}

fn print_verdicts(verdicts: &[Verdict]) {
    for v in verdicts {
        let status = if v.passed { "pass" } else { "FAIL" };
        match (&v.first_negative, &v.detail) {
            (Some((exp, coeff)), _) => {
                println!("{status}  {}  first negative {coeff}*q^{exp}", v.key)
            }
            (None, Some(detail)) if !v.passed => println!("{status}  {}  {detail}", v.key),
            _ if v.degree >= 0 => println!("{status}  {}  degree {}", v.key, v.degree),
            _ => println!("{status}  {}", v.key),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Qbinom { n, m, base } => {
            if !(1..=64).contains(&base) {
                return Err(Error::Range("base must be between 1 and 64".into()));
            }
            let poly = qseries::qbinom_base(n, m, base);
            println!("{}", serde_json::to_string(&poly).expect("polynomial serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dpoly { k, i, n, m, alpha, beta, base } => {
            if !(1..=64).contains(&base) {
                return Err(Error::Range("base must be between 1 and 64".into()));
            }
            let params = DParams::new(k, i, n, m, parse_rational(&alpha)?, parse_rational(&beta)?)?;
            let poly = dseries::d_poly(&params).substitute_power(base);
            println!("{}", serde_json::to_string(&poly).expect("polynomial serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gpoly { k, n, m, alpha, beta } => {
            let poly = dseries::g_poly(n, m, parse_rational(&alpha)?, parse_rational(&beta)?, k)?;
            println!("{}", serde_json::to_string(&poly).expect("polynomial serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { k, i, n, m, alpha, beta, out } => {
            let params = DParams::new(k, i, n, m, parse_rational(&alpha)?, parse_rational(&beta)?)?;
            let constraint = HookConstraint::from_dparams(&params)?;
            let poly = partitions::oracle_gf(n, m, &constraint);
            println!("{}", serde_json::to_string(&poly).expect("polynomial serializes"));
            if let Some(path) = out {
                let admissible = partitions::enumerate_admissible(n, m, &constraint);
                let parts: Vec<Vec<i64>> =
                    admissible.iter().map(|p| p.parts().to_vec()).collect();
                let report = json!({
                    "key": format!("oracle {}", params.key()),
                    "polynomial": poly,
                    "partitions": parts,
                });
                std::fs::write(&path, format!("{report}\n"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hooks { partition } => {
            let parts: Vec<i64> = partition
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad part {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            let pi = Partition::new(parts)?;
            let rows = pi.hook_differences();
            println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTransforms { kind, max_l, max_a, out } => {
            let kinds: Vec<KernelKind> = match kind {
                Some(k) => vec![KernelKind::parse(&k)?],
                None => KernelKind::ALL.to_vec(),
            };
            let mut verdicts = Vec::new();
            for kind in &kinds {
                for l in 0..=max_l {
                    let start = std::time::Instant::now();
                    let margin = max_a.unwrap_or(l + 3);
                    let mut failures = Vec::new();
                    for a in -margin..=margin {
                        if !transforms::verify_transform(*kind, l, a) {
                            failures.push(format!("a={a}"));
                        }
                    }
                    let mut min_kernel = num::BigInt::from(0);
                    let mut first_negative = None;
                    for k in 0..=l {
                        let ker = transforms::kernel(*kind, l, k);
                        min_kernel = min_kernel.min(ker.min_coeff());
                        if first_negative.is_none() {
                            first_negative =
                                ker.first_negative().map(|(e, c)| (e, c.to_string()));
                        }
                    }
                    verdicts.push(Verdict {
                        key: format!("transform {} L={l}", kind.token()),
                        passed: failures.is_empty() && first_negative.is_none(),
                        degree: -1,
                        offset: 0,
                        min_coeff: min_kernel.to_string(),
                        first_negative,
                        detail: if failures.is_empty() {
                            None
                        } else {
                            Some(format!("identity fails at {}", failures.join(", ")))
                        },
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    });
                }
            }
            finish_checks(verdicts, out)
        }
        Command::VerifyLifts { max_l, id, out } => {
            let instances = transforms::standard_lift_checks();
            let mut verdicts = Vec::new();
            for inst in &instances {
                if let Some(filter) = &id {
                    if !inst.id.starts_with(filter.as_str()) {
                        continue;
                    }
                }
                let start = std::time::Instant::now();
                let mut failures = Vec::new();
                for l in 0..=max_l {
                    if !transforms::verify_lift(inst, l) {
                        failures.push(format!("L={l}"));
                    }
                }
                verdicts.push(Verdict {
                    key: format!("lift {}", inst.label()),
                    passed: failures.is_empty(),
                    degree: -1,
                    offset: 0,
                    min_coeff: "0".into(),
                    first_negative: None,
                    detail: if failures.is_empty() {
                        None
                    } else {
                        Some(format!("identity fails at {}", failures.join(", ")))
                    },
                    elapsed_ms: start.elapsed().as_millis() as u64,
                });
            }
            if verdicts.is_empty() {
                return Err(Error::Range("no lift instances match the id filter".into()));
            }
            finish_checks(verdicts, out)
        }
        Command::CheckFamily { id, params, out } => {
            let id = FamilyId::parse(&id)?;
            let map = harness::parse_params(&params)?;
            let verdict = harness::check_family(id, &map)?;
            finish_checks(vec![verdict], out)
        }
        Command::Sweep { regime, max_size, params, jobs, out, cache_dir } => {
            let regime = RegimeKind::parse(&regime)?;
            let filters = match params {
                Some(p) => SweepFilters::from_params(&harness::parse_params(&p)?)?,
                None => SweepFilters::default(),
            };
            let cache_dir = cache_dir.or_else(|| std::env::var_os("QPOS_CACHE_DIR").map(Into::into));
            let cache = match &cache_dir {
                Some(dir) => Some(VerdictCache::open(dir)?),
                None => None,
            };
            let outcome = harness::sweep(regime, max_size, &filters, jobs, cache.as_ref())?;
            for v in outcome.verdicts.iter().filter(|v| !v.passed) {
                let (exp, coeff) = v.first_negative.clone().unwrap_or((0, "?".into()));
                println!("VIOLATION  {}  first negative {coeff}*q^{exp}", v.key);
            }
            println!(
                "{}: {} tuples checked, {} violations, {} ms",
                regime.token(),
                outcome.tuples_checked,
                outcome.violations,
                outcome.wall_ms
            );
            if let Some(path) = &out {
                let summary = json!({
                    "engine": harness::ENGINE,
                    "tuples_checked": outcome.tuples_checked,
                    "violations": outcome.violations,
                });
                write_report(path, &outcome.verdicts, &summary)?;
            }
            if outcome.violations > 0 {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn finish_checks(verdicts: Vec<Verdict>, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    print_verdicts(&verdicts);
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("{} checks, {} failed", verdicts.len(), failed);
    if let Some(path) = &out {
        let summary = json!({
            "engine": harness::ENGINE,
            "tuples_checked": verdicts.len(),
            "violations": failed,
        });
        write_report(path, &verdicts, &summary)?;
    }
    if failed > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
