//! Command-line front end. Parsing and dispatch only; every
//! computation lives in the library modules. Exit codes: 0 success,
//! 1 malformed input file, 2 domain/hypothesis violation, 3 verify
//! run that found violations.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::applications::{
    classical_means, kyfan_report, mean_comparison_bounds, moment_bounds, power_mean,
    power_mean_gap_bound, MeansSummary,
};
use crate::bounds::{jensen_bounds, mercer_bounds};
use crate::characteristic::{characteristic_closed_form, characteristic_numeric, NumericConfig};
use crate::csv::read_sample;
use crate::error::{Error, Result};
use crate::functions::parse_function_spec;
use crate::json::{flatten, to_json_string};
use crate::sample::{jensen_functional, mercer_functional, Interval, WeightedSample};
use crate::verify::{verify_inequalities, VerificationConfig};

#[derive(Debug, Parser)]
#[command(
    name = "jengap",
    version,
    about = "Jensen and Jensen-Mercer gaps for weighted samples, with converse bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `--fn` spec, e.g. `pow:2`, `exp@rapid`, `affine:1,2`, `table:f.csv`.
#[derive(Debug, Args)]
pub struct FnArg {
    #[arg(long = "fn", value_name = "SPEC")]
    pub function: String,
}

#[derive(Debug, Args)]
pub struct DataArg {
    /// CSV sample with header `x` or `x,w`.
    #[arg(long, value_name = "PATH")]
    pub data: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Jensen functional (and the Mercer functional when
    /// an interval is given).
    Eval {
        #[command(flatten)]
        function: FnArg,
        #[command(flatten)]
        data: DataArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Option<Interval>,
    },
    /// Jensen functional with every applicable bound.
    Bounds {
        #[command(flatten)]
        function: FnArg,
        #[command(flatten)]
        data: DataArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Interval,
        /// Override the characteristic number used by Eq4.
        #[arg(long, value_name = "C")]
        charnum: Option<f64>,
    },
    /// Jensen-Mercer functional with every applicable bound.
    Mercer {
        #[command(flatten)]
        function: FnArg,
        #[command(flatten)]
        data: DataArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Interval,
        #[arg(long, value_name = "C")]
        charnum: Option<f64>,
    },
    /// Characteristic number of a function: closed form when known,
    /// otherwise a windowed numeric estimate.
    Charnum {
        #[command(flatten)]
        function: FnArg,
        /// Force a numeric estimate restricted to this endpoint window.
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        window: Option<Interval>,
    },
    /// Classical means of a sample, with interval-level comparison
    /// bounds when an interval is given.
    Means {
        #[command(flatten)]
        data: DataArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Option<Interval>,
    },
    /// Power mean of a sample and the arithmetic-power gap bound.
    Powermean {
        #[command(flatten)]
        data: DataArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Option<Interval>,
    },
    /// Ky Fan ratios with converse factors.
    Kyfan {
        #[command(flatten)]
        data: DataArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Interval,
    },
    /// Central/raw moment gap bounds for x^s.
    Moments {
        #[command(flatten)]
        data: DataArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Interval,
        /// Moment order s.
        #[arg(long)]
        order: f64,
    },
    /// Randomized verification of the selected inequalities.
    Verify {
        #[command(flatten)]
        function: FnArg,
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Interval,
        /// Comma-separated theorem tags, e.g. `Eq2,Thm2.5`.
        #[arg(long, value_delimiter = ',', required = true)]
        tags: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, env = "JGAP_SEED", default_value_t = 0)]
        seed: u64,
        /// Sample-size range, inclusive.
        #[arg(long, value_name = "MIN,MAX", value_parser = parse_n_range, default_value = "1,8")]
        n_range: (usize, usize),
        #[arg(long)]
        parallel: bool,
    },
}

fn parse_interval(s: &str) -> std::result::Result<Interval, String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad interval endpoint `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad interval endpoint `{hi}`"))?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

fn parse_n_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `min,max`, got `{s}`"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad sample size `{lo}`"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad sample size `{hi}`"))?;
    Ok((lo, hi))
}

#[derive(Debug, Serialize)]
struct EvalReport {
    jensen: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mercer: Option<f64>,
}

#[derive(Debug, Serialize)]
struct MeansReport {
    #[serde(flatten)]
    means: MeansSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    difference_bound: Option<f64>,
}

#[derive(Debug, Serialize)]
struct PowerMeanReport {
    alpha: f64,
    value: f64,
    arithmetic: f64,
    /// `A - P_alpha` for `alpha < 1`, `P_alpha - A` for `alpha > 1`.
    gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap_bound: Option<f64>,
}

fn render<T: Serialize>(report: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json_string(report),
        Format::Csv | Format::Text => {
            let json = to_json_string(report)?;
            let value: serde_json::Value =
                serde_json::from_str(&json).map_err(|e| Error::Numeric(e.to_string()))?;
            let sep = if format == Format::Csv { "," } else { " = " };
            Ok(flatten(&value)
                .into_iter()
                .map(|(k, v)| format!("{k}{sep}{v}"))
                .collect::<Vec<_>>()
                .join("\n"))
        }
    }
}

fn supplied_charnum(c: Option<f64>) -> Result<Option<crate::characteristic::CharacteristicEstimate>> {
    match c {
        None => Ok(None),
        Some(v) => {
            if !(0.5..=1.0).contains(&v) {
                return Err(Error::Config(format!(
                    "characteristic number must lie in [1/2, 1], got {v}"
                )));
            }
            Ok(Some(crate::characteristic::CharacteristicEstimate {
                value: v,
                method: crate::characteristic::CharacteristicMethod::Numeric,
                argmax: None,
                window: None,
            }))
        }
    }
}

fn check_hosted(s: &WeightedSample, e: Interval) -> Result<()> {
    if let Some(x) = e.first_outside(s) {
        return Err(Error::Precondition {
            tag: "Thm2.1",
            hypothesis: format!(
                "all sample points must lie in [{}, {}], found {x}",
                e.lo(),
                e.hi()
            ),
        });
    }
    Ok(())
}

/// Run one parsed request. Returns the rendered report and the exit
/// status (0 or, for verify runs that found violations, 3).
pub fn execute(cli: Cli) -> Result<(String, i32)> {
    let format = cli.format;
    match cli.command {
        Command::Eval { function, data, interval } => {
            let f = parse_function_spec(&function.function)?;
            let s = read_sample(&data.data)?;
            let jensen = jensen_functional(&s, &f)?;
            let mercer = match interval {
                Some(e) => Some(mercer_functional(&s, e, &f)?),
                None => None,
            };
            Ok((render(&EvalReport { jensen, mercer }, format)?, 0))
        }
        Command::Bounds { function, data, interval, charnum } => {
            let f = parse_function_spec(&function.function)?;
            let s = read_sample(&data.data)?;
            check_hosted(&s, interval)?;
            let c = supplied_charnum(charnum)?;
            let rep = jensen_bounds(&s, interval, &f, c.as_ref())?;
            Ok((render(&rep, format)?, 0))
        }
        Command::Mercer { function, data, interval, charnum } => {
            let f = parse_function_spec(&function.function)?;
            let s = read_sample(&data.data)?;
            let c = supplied_charnum(charnum)?;
            let rep = mercer_bounds(&s, interval, &f, c.as_ref())?;
            Ok((render(&rep, format)?, 0))
        }
        Command::Charnum { function, window } => {
            let f = parse_function_spec(&function.function)?;
            let est = match window {
                Some(w) => characteristic_numeric(&f, w, NumericConfig::default())?,
                None => characteristic_closed_form(&f)?.ok_or_else(|| {
                    Error::Config(format!(
                        "{} has no closed-form characteristic number; supply --window for a \
                         numeric estimate",
                        f.describe()
                    ))
                })?,
            };
            Ok((render(&est, format)?, 0))
        }
        Command::Means { data, interval } => {
            let s = read_sample(&data.data)?;
            let means = classical_means(&s)?;
            let (quotient_bound, difference_bound) = match interval {
                Some(e) => {
                    check_hosted(&s, e)?;
                    let (q, d) = mean_comparison_bounds(e)?;
                    (Some(q), Some(d))
                }
                None => (None, None),
            };
            Ok((render(&MeansReport { means, quotient_bound, difference_bound }, format)?, 0))
        }
        Command::Powermean { data, alpha, interval } => {
            let s = read_sample(&data.data)?;
            let value = power_mean(&s, alpha)?;
            let arithmetic = s.mean();
            let gap = if alpha < 1.0 { arithmetic - value } else { value - arithmetic };
            let gap_bound = match interval {
                Some(e) if alpha != 1.0 => {
                    check_hosted(&s, e)?;
                    Some(power_mean_gap_bound(e, alpha)?)
                }
                _ => None,
            };
            Ok((render(&PowerMeanReport { alpha, value, arithmetic, gap, gap_bound }, format)?, 0))
        }
        Command::Kyfan { data, interval } => {
            let s = read_sample(&data.data)?;
            let rep = kyfan_report(&s, interval)?;
            Ok((render(&rep, format)?, 0))
        }
        Command::Moments { data, interval, order } => {
            let s = read_sample(&data.data)?;
            let rep = moment_bounds(&s, interval, order)?;
            Ok((render(&rep, format)?, 0))
        }
        Command::Verify { function, interval, tags, trials, seed, n_range, parallel } => {
            let f = parse_function_spec(&function.function)?;
            let cfg = VerificationConfig::new(f, interval, tags)
                .with_trials(trials)
                .with_seed(seed)
                .with_n_range(n_range.0, n_range.1)
                .parallel(parallel);
            let rep = verify_inequalities(&cfg)?;
            let status = if rep.violations > 0 { 3 } else { 0 };
            Ok((render(&rep, format)?, status))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_parser() {
        let e = parse_interval("0, 1").unwrap();
        assert_eq!((e.lo(), e.hi()), (0.0, 1.0));
        assert!(parse_interval("1,0").is_err());
        assert!(parse_interval("x").is_err());
    }

    #[test]
    fn cli_parses_verify() {
        let cli = Cli::try_parse_from([
            "jengap", "verify", "--fn", "exp", "--interval", "0,1", "--tags", "Eq2,Thm2.5",
            "--trials", "10", "--seed", "1",
        ])
        .unwrap();
        match cli.command {
            Command::Verify { tags, trials, seed, .. } => {
                assert_eq!(tags, vec!["Eq2", "Thm2.5"]);
                assert_eq!(trials, 10);
                assert_eq!(seed, 1);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn supplied_charnum_validates_range() {
        assert!(supplied_charnum(Some(0.4)).is_err());
        assert!(supplied_charnum(Some(0.75)).unwrap().is_some());
        assert!(supplied_charnum(None).unwrap().is_none());
    }
}
