use std::fmt;

use arndt_carlitz::asymptotics::eval_denominator;
use arndt_carlitz::gf::SeriesBundle;
use arndt_carlitz::{list_arndt_carlitz, BruteForceLimit, HighPrecisionReal as Real, Parity};
use num_bigint::BigInt;

use super::{amplitudes_at, count_table, rho_checks, system_is_exact, CliError, CliResult, Method};

const GOLDEN_EVEN: [u32; 12] = [0, 0, 0, 1, 1, 2, 3, 5, 7, 12, 20, 30];
const GOLDEN_ODD: [u32; 12] = [0, 1, 1, 1, 1, 2, 4, 5, 9, 15, 22, 36];
const RATIO_POINTS: [usize; 3] = [20, 40, 60];

/// Coefficients `0 … order` per parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub even: Vec<BigInt>,
    pub odd: Vec<BigInt>,
    pub total: Vec<BigInt>,
}

impl CountTable {
    pub fn zeros(order: usize) -> Self {
        let z = vec![BigInt::from(0); order + 1];
        Self {
            even: z.clone(),
            odd: z.clone(),
            total: z,
        }
    }

    pub fn from_bundle(b: &SeriesBundle) -> Self {
        Self {
            even: b.counts(Parity::Even).to_vec(),
            odd: b.counts(Parity::Odd).to_vec(),
            total: b.counts(Parity::All).to_vec(),
        }
    }

    pub fn get(&self, parity: Parity) -> &[BigInt] {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
            Parity::All => &self.total,
        }
    }
}

/// Tables under comparison. `verify_with` hands them to a hook before any
/// check runs, which is how tests inject faults.
#[derive(Debug, Clone)]
pub struct VerifyTables {
    pub brute: CountTable,
    pub gf: CountTable,
    pub slice: CountTable,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{ok}/{} checks passed", self.checks.len())
    }
}

pub fn verify(max_n: usize, order: usize, limit: BruteForceLimit) -> CliResult<VerifyReport> {
    verify_with(max_n, order, limit, |_| {})
}

/// Runs every check and returns the report; a report with a failure comes
/// back as [`CliError::Mismatch`].
pub fn verify_with(
    max_n: usize,
    order: usize,
    limit: BruteForceLimit,
    tamper: impl FnOnce(&mut VerifyTables),
) -> CliResult<VerifyReport> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    if max_n > limit.cap {
        return Err(CliError::Usage(format!(
            "--max-n {max_n} exceeds the brute-force cap {}",
            limit.cap
        )));
    }
    if max_n > order {
        return Err(CliError::Usage(format!(
            "--max-n {max_n} exceeds --order {order}"
        )));
    }

    let gf_bundle = SeriesBundle::compute(order)?;
    let mut tables = VerifyTables {
        brute: count_table(max_n, Method::Brute, limit)?,
        gf: CountTable::from_bundle(&gf_bundle),
        slice: count_table(max_n, Method::Slice, limit)?,
    };
    tamper(&mut tables);

    let mut report = VerifyReport::default();
    report.push("golden series", golden(&tables.gf));
    report.push("brute = gf = slice", equivalence(&tables, max_n));
    report.push("golden listings", listings(limit));
    report.push(
        "functional equations",
        if system_is_exact(order, &gf_bundle) {
            Ok(format!("exact to z^{order}"))
        } else {
            Err(format!("nonzero residual below z^{order}"))
        },
    );
    match rho_checks(20) {
        Ok((rho, residual)) => {
            report.push("denominator root", root_check(&rho, &residual));
            match amplitudes_at(&rho, 20) {
                Ok(est) => {
                    report.push("growth constant", growth_check(&est.growth));
                    report.push(
                        "ratio convergence",
                        ratio_check(&tables.gf.total, &est.growth),
                    );
                }
                Err(e) => report.push("growth constant", Err(e.to_string())),
            }
        }
        Err(e) => report.push("denominator root", Err(e.to_string())),
    }

    if report.passed() {
        Ok(report)
    } else {
        Err(CliError::Mismatch(report))
    }
}

fn golden(gf: &CountTable) -> Result<String, String> {
    let len = GOLDEN_EVEN.len().min(gf.even.len());
    for (parity, want) in [(Parity::Even, &GOLDEN_EVEN), (Parity::Odd, &GOLDEN_ODD)] {
        let got = &gf.get(parity)[..len];
        if got
            .iter()
            .zip(want.iter())
            .any(|(g, w)| *g != BigInt::from(*w))
        {
            let got: Vec<String> = got.iter().map(ToString::to_string).collect();
            return Err(format!("{parity} series starts {}", got.join(" ")));
        }
    }
    Ok(format!("even and odd through z^{}", len - 1))
}

fn equivalence(t: &VerifyTables, max_n: usize) -> Result<String, String> {
    for n in 1..=max_n {
        for parity in [Parity::Even, Parity::Odd, Parity::All] {
            let (b, g, s) = (
                &t.brute.get(parity)[n],
                &t.gf.get(parity)[n],
                &t.slice.get(parity)[n],
            );
            if b != g || g != s {
                return Err(format!("n={n} {parity}: brute {b}, gf {g}, slice {s}"));
            }
        }
    }
    Ok(format!("n = 1..{max_n}"))
}

fn listings(limit: BruteForceLimit) -> Result<String, String> {
    let cases: [(usize, Parity, usize); 3] = [
        (7, Parity::Even, 5),
        (8, Parity::Even, 7),
        (8, Parity::Odd, 9),
    ];
    let mut done = Vec::new();
    for (n, parity, want) in cases {
        if n > limit.cap {
            continue;
        }
        let got = list_arndt_carlitz(n, parity, limit).map_err(|e| e.to_string())?;
        if got.len() != want {
            return Err(format!(
                "list({n}, {parity}) has {} entries, expected {want}",
                got.len()
            ));
        }
        if !got.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("list({n}, {parity}) is not lexicographic"));
        }
        done.push(format!("list({n},{parity})={want}"));
    }
    if done.is_empty() {
        return Ok("skipped: cap below 8".into());
    }
    Ok(done.join(", "))
}

fn root_check(rho: &Real, residual: &Real) -> Result<String, String> {
    let wp = rho.digits();
    if *residual >= Real::ten_to_minus(20, wp) {
        return Err(format!("|D(rho)| = {}", residual.to_scientific(3)));
    }
    let eps = Real::ten_to_minus(12, wp);
    let tol = Real::ten_to_minus(wp, wp);
    let below = eval_denominator(&(rho - &eps), &tol).map_err(|e| e.to_string())?;
    let above = eval_denominator(&(rho + &eps), &tol).map_err(|e| e.to_string())?;
    if !(below.is_positive() && above.is_negative()) {
        return Err("no sign change of D across rho".into());
    }
    Ok(format!(
        "rho = {}, |D(rho)| = {}",
        rho.to_string_digits(20),
        residual.to_scientific(3)
    ))
}

fn growth_check(growth: &Real) -> Result<String, String> {
    let wp = growth.digits();
    let (lo, hi) = (
        Real::parse("1.59", wp).unwrap(),
        Real::parse("1.60", wp).unwrap(),
    );
    if lo < *growth && *growth < hi {
        Ok(format!("1/rho = {}", growth.to_string_digits(20)))
    } else {
        Err(format!(
            "1/rho = {} outside (1.59, 1.60)",
            growth.to_string_digits(20)
        ))
    }
}

/// `|a(n+1)/a(n) − 1/ρ|` must shrink along the sample points that fit.
fn ratio_check(total: &[BigInt], growth: &Real) -> Result<String, String> {
    let wp = growth.digits();
    let points: Vec<usize> = RATIO_POINTS
        .iter()
        .copied()
        .filter(|&n| n + 1 < total.len())
        .collect();
    if points.len() < 2 {
        return Ok(format!("skipped: order {} too small", total.len() - 1));
    }
    let errors: Vec<Real> = points
        .iter()
        .map(|&n| {
            if total[n] == BigInt::from(0) {
                return Real::from_i64(1, wp);
            }
            (Real::from_bigint(&total[n + 1], wp) / Real::from_bigint(&total[n], wp) - growth).abs()
        })
        .collect();
    let shown: Vec<String> = points
        .iter()
        .zip(&errors)
        .map(|(n, e)| format!("n={n}: {}", e.to_scientific(3)))
        .collect();
    if errors.windows(2).all(|w| w[1] < w[0]) {
        Ok(shown.join(", "))
    } else {
        Err(format!("ratio error not decreasing ({})", shown.join(", ")))
    }
}
