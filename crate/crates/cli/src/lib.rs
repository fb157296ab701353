//! Command implementations behind the `arndt-carlitz` binary.
//!
//! Every command renders to a `String` so the binary only parses flags,
//! prints, and maps [`CliError`] to an exit code.

use std::fmt;
use std::str::FromStr;

use arndt_carlitz::asymptotics::{
    self, amplitudes, estimate_with, eval_denominator, find_rho, SumCutoff, CARLITZ_GROWTH,
    UNRESTRICTED_GROWTH,
};
use arndt_carlitz::gf::{AlphaBeta, SeriesBundle};
use arndt_carlitz::{
    count_brute_force, list_arndt_carlitz, BruteForceLimit, Composition, Error,
    HighPrecisionReal as Real, Parity,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

mod verify;

pub use verify::{verify, verify_with, Check, CountTable, VerifyReport, VerifyTables};

/// Exit code for each failure class.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    CapExceeded(Error),
    #[error("verification failed")]
    Mismatch(VerifyReport),
    #[error("numeric failure: {0}")]
    Precision(Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::CapExceeded(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Precision(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::CapExceeded(e),
            Error::Domain(_)
            | Error::NoSignChange { .. }
            | Error::DegeneratePole
            | Error::Precision(_)
            | Error::NoConvergence { .. } => CliError::Precision(e),
            Error::NonInvertible | Error::NotIntegral { .. } | Error::Negative { .. } => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Gf,
    Slice,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Gf => "gf",
            Method::Slice => "slice",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(Method::Brute),
            "gf" => Ok(Method::Gf),
            "slice" => Ok(Method::Slice),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Bfile,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "bfile" => Ok(Format::Bfile),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

/// Counts for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub n: usize,
    pub even: BigInt,
    pub odd: BigInt,
    pub total: BigInt,
    pub asymptotic_total: Option<String>,
    pub relative_error: Option<String>,
}

impl OutputRecord {
    fn new(n: usize, even: BigInt, odd: BigInt) -> Self {
        let total = &even + &odd;
        Self {
            n,
            even,
            odd,
            total,
            asymptotic_total: None,
            relative_error: None,
        }
    }

    pub fn get(&self, parity: Parity) -> &BigInt {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
            Parity::All => &self.total,
        }
    }
}

/// Column names shown for a parity filter.
fn columns(parity: Parity) -> &'static [(&'static str, Parity)] {
    match parity {
        Parity::Even => &[("even", Parity::Even)],
        Parity::Odd => &[("odd", Parity::Odd)],
        Parity::All => &[
            ("even", Parity::Even),
            ("odd", Parity::Odd),
            ("total", Parity::All),
        ],
    }
}

/// A JSON integer of any size.
fn json_int(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

/// Coefficients `c₀ … c_order` of the even, odd and total series by one method.
pub fn count_table(order: usize, method: Method, limit: BruteForceLimit) -> CliResult<CountTable> {
    match method {
        Method::Gf => Ok(CountTable::from_bundle(&SeriesBundle::compute(order)?)),
        Method::Slice => Ok(CountTable::from_bundle(
            &SeriesBundle::from_slice_iteration(order)?,
        )),
        Method::Brute => {
            limit.check(order)?;
            let mut table = CountTable::zeros(order);
            for n in 1..=order {
                let c = count_brute_force(n, limit)?;
                table.even[n] = c.even.into();
                table.odd[n] = c.odd.into();
                table.total[n] = c.total.into();
            }
            Ok(table)
        }
    }
}

/// Counts of Arndt-Carlitz compositions of `n`, optionally with the
/// asymptotic estimate `c_total·ρ⁻ⁿ` and its relative error.
pub fn cmd_count(
    n: usize,
    method: Method,
    limit: BruteForceLimit,
    with_asymptotics: bool,
) -> CliResult<OutputRecord> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let mut record = match method {
        Method::Brute => {
            let c = count_brute_force(n, limit)?;
            OutputRecord::new(n, c.even.into(), c.odd.into())
        }
        _ => {
            let t = count_table(n, method, limit)?;
            OutputRecord::new(n, t.even[n].clone(), t.odd[n].clone())
        }
    };
    if with_asymptotics {
        let est = asymptotics::estimate(asymptotics::DEFAULT_DIGITS)?;
        let approx = asymptotics::asymptotic_count(n as u64, &est, Parity::All);
        let wp = approx.digits();
        let rel = &approx / &Real::from_bigint(&record.total, wp) - Real::from_i64(1, wp);
        record.asymptotic_total = Some(approx.to_string_digits(asymptotics::DEFAULT_DIGITS));
        record.relative_error = Some(rel.to_scientific(6));
    }
    Ok(record)
}

pub fn render_count(
    record: &OutputRecord,
    parity: Parity,
    method: Method,
    format: Format,
) -> CliResult<String> {
    let cols = columns(parity);
    let extras = [
        ("asymptotic_total", &record.asymptotic_total),
        ("relative_error", &record.relative_error),
    ];
    Ok(match format {
        Format::Plain => {
            let mut out = format!("n {}\n", record.n);
            for (name, p) in cols {
                out += &format!("{name} {}\n", record.get(*p));
            }
            for (name, v) in extras {
                if let Some(v) = v {
                    out += &format!("{name} {v}\n");
                }
            }
            out
        }
        Format::Json => {
            let mut rec = serde_json::Map::new();
            rec.insert("n".into(), json!(record.n));
            for (name, p) in cols {
                rec.insert((*name).into(), json_int(record.get(*p)));
            }
            for (name, v) in extras {
                if let Some(v) = v {
                    rec.insert(name.into(), json!(v));
                }
            }
            let doc = json!({
                "query": {"command": "count", "n": record.n, "parity": parity.as_str()},
                "method": method.as_str(),
                "order": record.n,
                "records": [Value::Object(rec)],
            });
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?
                + "\n"
        }
        Format::Csv => {
            let mut header = vec!["n".to_string()];
            let mut row = vec![record.n.to_string()];
            for (name, p) in cols {
                header.push((*name).into());
                row.push(record.get(*p).to_string());
            }
            for (name, v) in extras {
                if let Some(v) = v {
                    header.push(name.into());
                    row.push(v.clone());
                }
            }
            write_csv(&[header, row])?
        }
        Format::Bfile => {
            let value = if parity == Parity::All {
                &record.total
            } else {
                record.get(parity)
            };
            format!("{} {}\n", record.n, value)
        }
    })
}

fn write_csv(rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row)
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

/// Coefficients `0 … order` of the counting series.
pub fn cmd_series(
    order: usize,
    parity: Parity,
    method: Method,
    limit: BruteForceLimit,
) -> CliResult<Vec<BigInt>> {
    Ok(count_table(order, method, limit)?.get(parity).to_vec())
}

pub fn render_series(
    coeffs: &[BigInt],
    parity: Parity,
    method: Method,
    format: Format,
) -> CliResult<String> {
    let order = coeffs.len() - 1;
    Ok(match format {
        Format::Plain => {
            let words: Vec<_> = coeffs.iter().map(|c| c.to_string()).collect();
            words.join(" ") + "\n"
        }
        Format::Json => {
            let doc = json!({
                "query": {"command": "series", "parity": parity.as_str(), "order": order},
                "method": method.as_str(),
                "order": order,
                "coefficients": coeffs.iter().map(json_int).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?
                + "\n"
        }
        Format::Csv => {
            let mut rows = vec![vec!["n".to_string(), "coefficient".to_string()]];
            rows.extend(
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| vec![n.to_string(), c.to_string()]),
            );
            write_csv(&rows)?
        }
        // "n a(n)" from n = 1
        Format::Bfile => coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| format!("{n} {c}\n"))
            .collect(),
    })
}

/// One `+`-joined composition per line, lexicographic.
pub fn cmd_list(n: usize, parity: Parity, limit: BruteForceLimit) -> CliResult<String> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    Ok(list_arndt_carlitz(n, parity, limit)?
        .iter()
        .map(|c: &Composition| format!("{c}\n"))
        .collect())
}

/// Internal precision used when fewer digits are requested.
const MIN_INTERNAL_DIGITS: usize = asymptotics::DEFAULT_DIGITS;

/// `ρ`, `1/ρ` and the amplitudes rounded to `digits` significant digits.
pub fn cmd_asymptotics(digits: usize, cutoff: SumCutoff, format: Format) -> CliResult<String> {
    if digits == 0 {
        return Err(CliError::Usage("--digits must be positive".into()));
    }
    let est = estimate_with(digits.max(MIN_INTERNAL_DIGITS), cutoff)?;
    let rows = [
        ("rho", est.rho.to_string_digits(digits)),
        ("growth", est.growth.to_string_digits(digits)),
        ("c_even", est.c_even.to_string_digits(digits)),
        ("c_odd", est.c_odd.to_string_digits(digits)),
        ("c_total", est.c_total.to_string_digits(digits)),
        ("unrestricted_growth", UNRESTRICTED_GROWTH.to_string()),
        ("carlitz_growth", CARLITZ_GROWTH.to_string()),
    ];
    Ok(match format {
        Format::Json => {
            let mut map = serde_json::Map::new();
            map.insert(
                "query".into(),
                json!({"command": "asymptotics", "digits": digits, "sum_terms": match cutoff {
                    SumCutoff::Converged => Value::Null,
                    SumCutoff::Terms(k) => json!(k),
                }}),
            );
            for (k, v) in rows {
                map.insert(k.into(), json!(v));
            }
            serde_json::to_string_pretty(&Value::Object(map))
                .map_err(|e| CliError::Internal(e.to_string()))?
                + "\n"
        }
        Format::Csv => {
            let mut table = vec![vec!["name".to_string(), "value".to_string()]];
            table.extend(rows.iter().map(|(k, v)| vec![k.to_string(), v.clone()]));
            write_csv(&table)?
        }
        Format::Plain | Format::Bfile => rows.iter().map(|(k, v)| format!("{k} {v}\n")).collect(),
    })
}

/// Residual `|D(ρ)|` at `digits + 15` working digits, used by `verify`.
fn rho_checks(digits: usize) -> CliResult<(Real, Real)> {
    let rho = find_rho(digits)?;
    let tol = Real::ten_to_minus(rho.digits(), rho.digits());
    let residual = eval_denominator(&rho, &tol)?.abs();
    Ok((rho, residual))
}

fn system_is_exact(order: usize, bundle: &SeriesBundle) -> bool {
    let ab = AlphaBeta::compute(order);
    let (r1, r2) = ab.residuals(bundle.even(), bundle.fzz());
    r1.is_zero() && r2.is_zero()
}

fn amplitudes_at(rho: &Real, digits: usize) -> CliResult<asymptotics::AsymptoticEstimate> {
    Ok(amplitudes(rho, digits)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> BruteForceLimit {
        BruteForceLimit::default()
    }

    #[test]
    fn count_by_every_method() {
        for method in [Method::Gf, Method::Brute, Method::Slice] {
            let r = cmd_count(8, method, lim(), false).unwrap();
            assert_eq!(
                (r.even, r.odd, r.total),
                (7.into(), 9.into(), 16.into()),
                "{method}"
            );
        }
        let r = cmd_count(1, Method::Brute, lim(), false).unwrap();
        assert_eq!((r.even, r.odd), (0.into(), 1.into()));
        assert_eq!(
            cmd_count(7, Method::Slice, lim(), false).unwrap().even,
            5.into()
        );
    }

    #[test]
    fn count_errors() {
        assert_eq!(
            cmd_count(0, Method::Gf, lim(), false)
                .unwrap_err()
                .exit_code(),
            2
        );
        let e = cmd_count(12, Method::Brute, BruteForceLimit::new(10), false).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn series_plain() {
        let even = cmd_series(11, Parity::Even, Method::Gf, lim()).unwrap();
        assert_eq!(
            render_series(&even, Parity::Even, Method::Gf, Format::Plain).unwrap(),
            "0 0 0 1 1 2 3 5 7 12 20 30\n"
        );
        let odd = cmd_series(11, Parity::Odd, Method::Gf, lim()).unwrap();
        assert_eq!(
            render_series(&odd, Parity::Odd, Method::Gf, Format::Plain).unwrap(),
            "0 1 1 1 1 2 4 5 9 15 22 36\n"
        );
    }

    #[test]
    fn series_order_zero_json() {
        let c = cmd_series(0, Parity::All, Method::Gf, lim()).unwrap();
        let text = render_series(&c, Parity::All, Method::Gf, Format::Json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["coefficients"], json!([0]));
        assert_eq!(v["order"], json!(0));
    }

    #[test]
    fn formats_carry_the_same_numbers() {
        let c = cmd_series(15, Parity::All, Method::Gf, lim()).unwrap();
        let plain: Vec<String> = render_series(&c, Parity::All, Method::Gf, Format::Plain)
            .unwrap()
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let v: Value = serde_json::from_str(
            &render_series(&c, Parity::All, Method::Gf, Format::Json).unwrap(),
        )
        .unwrap();
        let json: Vec<String> = v["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let csv_text = render_series(&c, Parity::All, Method::Gf, Format::Csv).unwrap();
        let csv: Vec<String> = csv_text
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().to_string())
            .collect();
        let bfile: Vec<String> = render_series(&c, Parity::All, Method::Gf, Format::Bfile)
            .unwrap()
            .lines()
            .map(|l| l.split(' ').nth(1).unwrap().to_string())
            .collect();
        assert_eq!(plain, json);
        assert_eq!(plain, csv);
        assert_eq!(plain[1..], bfile[..]);
    }

    #[test]
    fn large_coefficients_stay_exact_in_json() {
        let c = cmd_series(100, Parity::All, Method::Gf, lim()).unwrap();
        assert!(c[100] > BigInt::from(u64::MAX));
        let text = render_series(&c, Parity::All, Method::Gf, Format::Json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["coefficients"][100].to_string(), c[100].to_string());
    }

    #[test]
    fn listing() {
        assert_eq!(
            cmd_list(7, Parity::Even, lim()).unwrap(),
            "2+1+3+1\n3+1+2+1\n4+3\n5+2\n6+1\n"
        );
        let odd = cmd_list(8, Parity::Odd, lim()).unwrap();
        assert_eq!(odd.lines().count(), 9);
        assert!(odd.lines().any(|l| l == "8") && odd.lines().any(|l| l == "2+1+2+1+2"));
        assert_eq!(cmd_list(2, Parity::Even, lim()).unwrap(), "");
    }

    #[test]
    fn count_rendering_respects_parity() {
        let r = cmd_count(8, Method::Gf, lim(), false).unwrap();
        assert_eq!(
            render_count(&r, Parity::All, Method::Gf, Format::Plain).unwrap(),
            "n 8\neven 7\nodd 9\ntotal 16\n"
        );
        assert_eq!(
            render_count(&r, Parity::Odd, Method::Gf, Format::Csv).unwrap(),
            "n,odd\n8,9\n"
        );
        assert_eq!(
            render_count(&r, Parity::All, Method::Gf, Format::Bfile).unwrap(),
            "8 16\n"
        );
    }

    #[test]
    fn count_with_asymptotics() {
        let r = cmd_count(50, Method::Gf, lim(), true).unwrap();
        let rel: f64 = r.relative_error.unwrap().parse().unwrap();
        assert!(rel.abs() < 0.01);
        assert!(r.asymptotic_total.is_some());
    }

    #[test]
    fn asymptotics_rounding() {
        let text = cmd_asymptotics(15, SumCutoff::Converged, Format::Plain).unwrap();
        assert!(text.contains("growth 1.59260772923814\n"), "{text}");
        let text = cmd_asymptotics(5, SumCutoff::Converged, Format::Plain).unwrap();
        assert!(text.starts_with("rho 0.62790\n"), "{text}");
        assert!(text.contains("carlitz_growth 1.750243\n"));
        let text = cmd_asymptotics(15, SumCutoff::Terms(20), Format::Plain).unwrap();
        assert!(text.contains("growth 1.59260772617444\n"), "{text}");
    }
}
