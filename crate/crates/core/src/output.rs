//! CSV serialization of aggregates and the reproducibility manifest.
//!
//! The CSV layout is the stable contract: one row per year, a fixed column
//! order, numbers printed with 9 significant digits, and empty cells where
//! a statistic was undefined in every run (e.g. perception of an absent
//! group).

use crate::config;
use crate::error::{invalid, Error, Result};
use crate::scenarios::{field, RunAggregate, ScenarioSpec};
use serde_json::json;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stat {
    Mean,
    Std,
}

/// Column layout after the leading `year`: every mean column first (stds of
/// the first few interleaved for the most-read fields), then the remaining
/// std columns in field order.
fn columns() -> Vec<(String, usize, Stat)> {
    let mut cols: Vec<(String, usize, Stat)> = vec![
        ("inflow_x_mean".into(), field::INFLOW_X, Stat::Mean),
        ("inflow_x_std".into(), field::INFLOW_X, Stat::Std),
        ("share_F_mean".into(), field::SHARE_F, Stat::Mean),
        ("share_F_std".into(), field::SHARE_F, Stat::Std),
        ("lambda_mean".into(), field::LAMBDA, Stat::Mean),
        ("net_homophily_mean".into(), field::NET_HOMOPHILY, Stat::Mean),
        ("net_homophily_std".into(), field::NET_HOMOPHILY, Stat::Std),
        ("perc_F_by_F_mean".into(), field::PERC_F_BY_F, Stat::Mean),
        ("perc_F_by_M_mean".into(), field::PERC_F_BY_M, Stat::Mean),
        ("perc_F_by_all_mean".into(), field::PERC_F_BY_ALL, Stat::Mean),
        ("delta_s_mean".into(), field::DELTA_S, Stat::Mean),
        ("fstar_mean".into(), field::FSTAR_MEAN, Stat::Mean),
        ("fstar_cv_mean".into(), field::FSTAR_CV, Stat::Mean),
    ];
    for b in 0..crate::metrics::N_BINS {
        cols.push((format!("rep_bin_{:02}_mean", b + 1), field::REP_BINS + b, Stat::Mean));
    }
    cols.push(("lambda_std".into(), field::LAMBDA, Stat::Std));
    cols.push(("perc_F_by_F_std".into(), field::PERC_F_BY_F, Stat::Std));
    cols.push(("perc_F_by_M_std".into(), field::PERC_F_BY_M, Stat::Std));
    cols.push(("perc_F_by_all_std".into(), field::PERC_F_BY_ALL, Stat::Std));
    cols.push(("delta_s_std".into(), field::DELTA_S, Stat::Std));
    cols.push(("fstar_std".into(), field::FSTAR_MEAN, Stat::Std));
    cols.push(("fstar_cv_std".into(), field::FSTAR_CV, Stat::Std));
    for b in 0..crate::metrics::N_BINS {
        cols.push((format!("rep_bin_{:02}_std", b + 1), field::REP_BINS + b, Stat::Std));
    }
    cols
}

/// All CSV column names in order, `year` included.
pub fn column_names() -> Vec<String> {
    let mut names = vec!["year".to_string()];
    names.extend(columns().into_iter().map(|(n, ..)| n));
    names
}

/// Format with 9 significant digits, shortest-form style: plain decimal for
/// moderate magnitudes, otherwise scientific; trailing zeros trimmed.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("{:e} always carries an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 9);

    let body = if (-4..9).contains(&exp) {
        if exp >= 0 {
            let k = exp as usize;
            let int = &digits[..=k];
            let frac = digits[k + 1..].trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            let tail = format!("{zeros}{digits}");
            format!("0.{}", tail.trim_end_matches('0'))
        }
    } else {
        let frac = digits[1..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{}e{exp}", &digits[..1])
        } else {
            format!("{}.{frac}e{exp}", &digits[..1])
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Write the aggregate as CSV. Undefined cells stay empty.
pub fn write_csv<W: Write>(agg: &RunAggregate, mut w: W) -> Result<()> {
    let cols = columns();
    writeln!(w, "{}", column_names().join(","))?;
    for row in agg.rows() {
        let mut line = String::with_capacity(cols.len() * 12);
        line.push_str(&row.year.to_string());
        for (_, f, stat) in &cols {
            line.push(',');
            let value = match stat {
                Stat::Mean => row.mean(*f),
                Stat::Std => row.std(*f),
            };
            if let Some(v) = value {
                line.push_str(&format_sig9(v));
            }
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn csv_string(agg: &RunAggregate) -> String {
    let mut buf = Vec::new();
    write_csv(agg, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Look up one cell by CSV column name. `Ok(None)` marks a cell that is
/// empty in the CSV as well.
pub fn value_by_column(agg: &RunAggregate, year: usize, column: &str) -> Result<Option<f64>> {
    if year >= agg.n_years() {
        return Err(invalid(
            "year",
            format!("out of range: {year} (have 0..{})", agg.n_years()),
        ));
    }
    let row = agg.row(year);
    if column == "year" {
        return Ok(Some(row.year as f64));
    }
    for (name, f, stat) in columns() {
        if name == column {
            return Ok(match stat {
                Stat::Mean => row.mean(f),
                Stat::Std => row.std(f),
            });
        }
    }
    Err(Error::UnknownField {
        field: column.to_string(),
        valid: column_names().join(", "),
    })
}

/// Reproduction manifest: tool version, the full flat config echo (the same
/// keys a config file uses), and what was written where.
pub fn manifest_json(spec: &ScenarioSpec, outputs: &[String], wall_time_secs: f64) -> serde_json::Value {
    let c = &spec.config;
    json!({
        "tool": "boardnet",
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": spec.id,
        "master_seed": c.master_seed,
        "wall_time_secs": wall_time_secs,
        "outputs": outputs,
        "config": {
            "id": spec.id,
            "firms": c.firms,
            "runs": c.runs,
            "years": c.years,
            "master_seed": c.master_seed,
            "m": c.m,
            "board_size_mean": c.board_size_mean,
            "board_size_var": c.board_size_var,
            "min_board_size": c.min_board_size,
            "mode": config::init_mode_name(c.init.mode),
            "gamma": c.init.gamma,
            "initial_share": c.init.initial_share,
            "retire_rate": c.dynamics.retire_rate,
            "g_f": c.dynamics.g_f,
            "target_share": c.dynamics.target_share,
            "lambda_mode": config::lambda_mode_name(c.dynamics.lambda_mode),
            "lambda_bar": c.dynamics.lambda_bar,
            "g_lambda": c.dynamics.g_lambda,
            "y_m": c.dynamics.y_m,
            "beta": c.dynamics.beta,
            "growth_mode": config::growth_mode_name(c.dynamics.growth_mode),
            "endo_application": config::endo_application_name(c.dynamics.endo_application),
            "growth_form": config::growth_form_name(c.dynamics.growth_form),
        },
    })
}
