//! Reduced-scale consistency checks, runnable from the command line.

use serde::Serialize;

use crate::asymptotics::{eval_constants, log1p_within_twice, LogEstimator};
use crate::engines::{brute_force_p, brute_force_pl, Kind, SequenceTable};
use crate::error::{precondition, Result};
use crate::framework::{compute_bounds, instantiate_p, instantiate_pl, uniform_delta};
use crate::real::{Ball, Precision};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfTestReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Outcome of comparing exact logarithms against the estimate envelope.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeCheck {
    pub checked: u64,
    pub violations: Vec<u64>,
    /// Largest `|log_b value - midpoint| / envelope` seen.
    pub max_ratio: f64,
}

/// Checks `|log_b value(n) - midpoint| <= envelope` for `n` in
/// `from..=to`, using the exact values held by `table`.
pub fn check_envelope(
    table: &SequenceTable,
    base: u32,
    from: u64,
    to: u64,
    precision: Precision,
) -> Result<EnvelopeCheck> {
    let est = match table.kind() {
        Kind::Partition => LogEstimator::<Ball>::partition(base, precision)?,
        Kind::PlanePartition => LogEstimator::plane_partition(base, &eval_constants(precision)?)?,
    };
    let mut out = EnvelopeCheck {
        checked: 0,
        violations: Vec::new(),
        max_ratio: 0.0,
    };
    for n in from..=to {
        let value = table
            .get(n)
            .ok_or_else(|| precondition(format!("table does not hold {n}")))?;
        let e = est.estimate(n)?;
        let exact = Ball::ln_biguint(value, precision) / est.ln_base();
        if !e.contains(&exact) {
            out.violations.push(n);
        }
        out.max_ratio = out.max_ratio.max(e.relative_error(&exact));
        out.checked += 1;
    }
    Ok(out)
}

/// CSV with header `check,passed,detail`.
pub fn write_csv<W: std::io::Write>(out: W, report: &SelfTestReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check", "passed", "detail"])?;
    for c in &report.checks {
        w.write_record([
            c.name.as_str(),
            if c.passed { "true" } else { "false" },
            c.detail.as_str(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs every check at a scale that finishes in a few seconds.
pub fn run(precision: Precision) -> Result<SelfTestReport> {
    let mut checks = Vec::new();

    let mut p = SequenceTable::new(Kind::Partition);
    p.extend(2000)?;
    let mut pl = SequenceTable::new(Kind::PlanePartition);
    pl.extend(3200)?;

    let bad_p: Vec<u64> = (0..=30)
        .filter(|&n| brute_force_p(n).ok().as_ref() != p.get(n))
        .collect();
    checks.push(check(
        "p recurrence vs enumeration, n <= 30",
        bad_p.is_empty(),
        format!("mismatches: {bad_p:?}"),
    ));
    let bad_pl: Vec<u64> = (0..=10)
        .filter(|&n| brute_force_pl(n).ok().as_ref() != pl.get(n))
        .collect();
    checks.push(check(
        "PL recurrence vs enumeration, n <= 10",
        bad_pl.is_empty(),
        format!("mismatches: {bad_pl:?}"),
    ));

    for base in [2, 10] {
        let r = check_envelope(&p, base, 4, 2000, precision)?;
        checks.push(check(
            &format!("p envelope, 4 <= n <= 2000, base {base}"),
            r.violations.is_empty(),
            format!(
                "{} checked, max ratio {:.4}, violations {:?}",
                r.checked, r.max_ratio, r.violations
            ),
        ));
        let r = check_envelope(&pl, base, 2829, 3200, precision)?;
        checks.push(check(
            &format!("PL envelope, 2829 <= n <= 3200, base {base}"),
            r.violations.is_empty(),
            format!(
                "{} checked, max ratio {:.4}, violations {:?}",
                r.checked, r.max_ratio, r.violations
            ),
        ));
    }

    let delta = uniform_delta::<Ball>(10, 1, precision);
    let bp = compute_bounds(&instantiate_p::<Ball>(10, precision)?, &delta)?;
    let l1 = Ball::from_int(54, precision) / (Ball::pi(precision) * Ball::pi(precision));
    let diff = (&bp.l1 - &l1).abs().upper_f64();
    checks.push(check(
        "p instantiation, L1 = 54/pi^2",
        diff < 1e-20,
        format!("|diff| <= {diff:e}"),
    ));
    let bpl = compute_bounds(&instantiate_pl(10, &eval_constants(precision)?)?, &delta)?;
    checks.push(check(
        "PL instantiation, L4 < L2",
        bpl.l4.certainly_lt(&bpl.l2),
        format!("L4 = {:.3}, L2 = {:.3}", bpl.l4.to_f64(), bpl.l2.to_f64()),
    ));

    let grid = 1000;
    // x = 0 is an equality; its enclosure cannot certify "<="
    let bad = (0..=grid)
        .filter(|&i| 2 * i != grid)
        .map(|i| Ball::from_ratio_i64(i - grid / 2, grid, precision))
        .filter(|x| !log1p_within_twice(x))
        .count();
    checks.push(check(
        "|ln(1+x)| <= 2|x| on [-1/2, 1/2]",
        bad == 0,
        format!("{bad} failures on {} points", grid + 1),
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(SelfTestReport { checks, passed })
}
