//! Leading digits in base `b` and their logarithmic characterisation.
//!
//! For `n >= b^(t-1)` the top `t` base-`b` digits of `n` equal `f` exactly
//! when `{log_b n}` lies in `[log_b f - t + 1, log_b (f+1) - t + 1)`. The
//! functions here compute both sides: the exact digit extraction and the
//! certified fractional logarithm with its target interval.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{precondition, Error, Result};
use crate::real::{Ball, Precision};

pub const DEFAULT_PRECISION: Precision = 192;

/// Largest base accepted by the textual digit syntax.
pub const MAX_TEXT_BASE: u32 = 36;

/// A `t`-digit base-`b` string with non-zero leading digit (`t >= 2` when
/// `b = 2`), most significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString {
    base: u32,
    digits: Vec<u32>,
}

fn check_shape(base: u32, t: usize) -> Result<()> {
    if base < 2 {
        return Err(precondition(format!("base must be at least 2, got {base}")));
    }
    if t == 0 {
        return Err(precondition("digit strings need at least one digit"));
    }
    if base == 2 && t < 2 {
        return Err(precondition("base 2 requires at least two digits"));
    }
    Ok(())
}

impl DigitString {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        check_shape(base, digits.len())?;
        let invalid = |reason: String| Error::InvalidDigits {
            text: format!("{digits:?}"),
            base,
            reason,
        };
        if digits[0] == 0 {
            return Err(invalid("leading digit is zero".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(invalid(format!("digit {d} out of range")));
        }
        Ok(DigitString { base, digits })
    }

    /// Parses `0-9` and case-insensitive `a-z` digits for bases up to 36.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidDigits {
            text: text.to_string(),
            base,
            reason: reason.to_string(),
        };
        if !(2..=MAX_TEXT_BASE).contains(&base) {
            return Err(invalid("textual digits need a base between 2 and 36"));
        }
        if text.is_empty() {
            return Err(invalid("empty digit string"));
        }
        let digits = text
            .chars()
            .map(|c| c.to_digit(36).filter(|&d| d < base))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| invalid("character is not a digit of this base"))?;
        if digits[0] == 0 {
            return Err(invalid("leading zero"));
        }
        if base == 2 && digits.len() < 2 {
            return Err(invalid("base 2 requires at least two digits"));
        }
        Ok(DigitString { base, digits })
    }

    /// The digit string of `value`, which must have exactly `t` digits.
    pub fn from_value(value: &BigUint, base: u32, t: usize) -> Result<Self> {
        check_shape(base, t)?;
        let digits = to_digits(value, base);
        if digits.len() != t {
            return Err(precondition(format!(
                "{value} has {} base-{base} digits, expected {t}",
                digits.len()
            )));
        }
        Self::new(base, digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Number of digits `t`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// The integer `f` spelled by the digits.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::zero();
        for &d in &self.digits {
            v = v * self.base + d;
        }
        v
    }

    /// Every member of the set of `t`-digit strings, in increasing order.
    pub fn all(base: u32, t: usize) -> Result<impl Iterator<Item = DigitString>> {
        check_shape(base, t)?;
        let lo = BigUint::from(base).pow(t as u32 - 1);
        let hi = &lo * base;
        let mut cur = lo;
        Ok(std::iter::from_fn(move || {
            if cur >= hi {
                return None;
            }
            let digits = to_digits(&cur, base);
            cur += 1u32;
            Some(DigitString { base, digits })
        }))
    }

    /// Number of strings in the set, `(b - 1) b^(t-1)`.
    pub fn count(base: u32, t: usize) -> BigUint {
        BigUint::from(base - 1) * BigUint::from(base).pow(t as u32 - 1)
    }
}

fn to_digits(value: &BigUint, base: u32) -> Vec<u32> {
    if value.is_zero() {
        return vec![0];
    }
    if base <= 256 {
        return value.to_radix_be(base).into_iter().map(u32::from).collect();
    }
    let b = BigUint::from(base);
    let mut out = Vec::new();
    let mut v = value.clone();
    while !v.is_zero() {
        let (q, r) = v.div_rem(&b);
        out.push(r.to_u32().expect("digit below base"));
        v = q;
    }
    out.reverse();
    out
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= MAX_TEXT_BASE {
            for &d in &self.digits {
                let c = char::from_digit(d, self.base).expect("digit below base");
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(":"))
        }
    }
}

impl Serialize for DigitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Number of base-`b` digits of `n` (0 for `n = 0`).
pub fn digit_count(n: &BigUint, base: u32) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let b = BigUint::from(base);
    let estimate = ((n.bits() - 1) as f64 * std::f64::consts::LN_2 / (base as f64).ln()).floor();
    let mut k = (estimate as u64).saturating_sub(1);
    let mut pow = b.pow(k as u32);
    while &pow > n {
        pow /= &b;
        k -= 1;
    }
    loop {
        let next = &pow * &b;
        if &next > n {
            break;
        }
        pow = next;
        k += 1;
    }
    k + 1
}

/// The leading `t` base-`b` digits of `n`, i.e. `floor(n / b^z)` with
/// `z = digits(n) - t`.
pub fn leading_digits(n: &BigUint, base: u32, t: usize) -> Result<DigitString> {
    check_shape(base, t)?;
    let d = digit_count(n, base);
    if d < t as u64 {
        return Err(precondition(format!(
            "{n} has only {d} base-{base} digits, fewer than {t}"
        )));
    }
    let z = (d - t as u64) as u32;
    let q = n / BigUint::from(base).pow(z);
    DigitString::from_value(&q, base, t)
}

/// Logarithm data for one base, shared across many evaluations.
#[derive(Clone, Debug)]
pub struct LogBase {
    base: u32,
    precision: Precision,
    ln_base: Ball,
}

impl LogBase {
    pub fn new(base: u32, precision: Precision) -> Result<Self> {
        if base < 2 {
            return Err(precondition(format!("base must be at least 2, got {base}")));
        }
        Ok(LogBase {
            base,
            precision,
            ln_base: Ball::ln_u64(base as u64, precision),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn ln_base(&self) -> &Ball {
        &self.ln_base
    }

    /// Certified `log_b n` for `n >= 1`.
    pub fn log(&self, n: &BigUint) -> Ball {
        Ball::ln_biguint(n, self.precision) / &self.ln_base
    }

    /// Certified `{log_b n}` for `n >= 1`.
    pub fn frac_log(&self, n: &BigUint) -> Result<FracLog> {
        if n.is_zero() {
            return Err(precondition("frac_log needs n >= 1"));
        }
        let log = self.log(n);
        if let Some(k) = log.floor_if_certain().and_then(|k| k.to_u64()) {
            return Ok(FracLog {
                value: log - Ball::from_int(k, self.precision),
                digit_count: k + 1,
            });
        }
        // log_b n is close to an integer: settle the floor exactly
        let k = digit_count(n, self.base) - 1;
        let value = if n == &BigUint::from(self.base).pow(k as u32) {
            Ball::zero(self.precision)
        } else {
            log - Ball::from_int(k, self.precision)
        };
        Ok(FracLog {
            value,
            digit_count: k + 1,
        })
    }

    pub fn target_interval(&self, f: &DigitString) -> Result<TargetInterval> {
        if f.base() != self.base {
            return Err(precondition(format!(
                "digit string is base {}, context is base {}",
                f.base(),
                self.base
            )));
        }
        let p = self.precision;
        let t = f.len() as u64;
        let value = f.value();
        let b = BigUint::from(self.base);
        let shift = Ball::from_int(t - 1, p);
        let lo = if value == b.pow(t as u32 - 1) {
            Ball::zero(p)
        } else {
            self.log(&value) - &shift
        };
        let next = &value + 1u32;
        let hi = if next == b.pow(t as u32) {
            Ball::from_int(1, p)
        } else {
            self.log(&next) - &shift
        };
        Ok(TargetInterval { lo, hi })
    }
}

/// `{log_b n}` together with the exact digit count of `n`.
#[derive(Clone, Debug)]
pub struct FracLog {
    pub value: Ball,
    pub digit_count: u64,
}

/// Certified `{log_b n}` at the default precision.
pub fn frac_log(n: &BigUint, base: u32) -> Result<Ball> {
    Ok(LogBase::new(base, DEFAULT_PRECISION)?.frac_log(n)?.value)
}

/// The half-open interval `[log_b f - t + 1, log_b (f+1) - t + 1)`.
pub fn target_interval(f: &DigitString) -> Result<TargetInterval> {
    LogBase::new(f.base(), DEFAULT_PRECISION)?.target_interval(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    Undecided,
}

/// Half-open `[lo, hi)` with certified endpoints.
#[derive(Clone, Debug)]
pub struct TargetInterval {
    pub lo: Ball,
    pub hi: Ball,
}

impl TargetInterval {
    /// `delta = hi - lo`.
    pub fn delta(&self) -> Ball {
        &self.hi - &self.lo
    }

    pub fn classify(&self, x: &Ball) -> Membership {
        if self.lo.certainly_le(x) && x.certainly_lt(&self.hi) {
            Membership::Inside
        } else if x.certainly_lt(&self.lo) || self.hi.certainly_le(x) {
            Membership::Outside
        } else {
            Membership::Undecided
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn zero_is_not_a_digit_string() {
        assert!(DigitString::from_value(&big(0), 10, 1).is_err());
        assert!(DigitString::from_value(&big(7), 10, 1).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let f = DigitString::parse("31", 10).unwrap();
        assert_eq!(f.value(), big(31));
        assert_eq!(f.to_string(), "31");
        let h = DigitString::parse("fF", 16).unwrap();
        assert_eq!(h.value(), big(255));
        assert_eq!(h.to_string(), "ff");
        assert!(DigitString::parse("07", 10).is_err());
        assert!(DigitString::parse("", 10).is_err());
        assert!(DigitString::parse("12", 2).is_err());
        assert!(DigitString::parse("1", 2).is_err());
        assert!(DigitString::parse("10", 2).is_ok());
        assert!(DigitString::parse("1", 37).is_err());
        assert!(DigitString::parse("g", 16).is_err());
    }

    #[test]
    fn large_bases_use_digit_lists() {
        let f = DigitString::new(1000, vec![999, 0, 5]).unwrap();
        assert_eq!(f.value(), big(999_000_005));
        assert_eq!(f.to_string(), "999:0:5");
        assert!(DigitString::new(1000, vec![0, 1]).is_err());
        assert!(DigitString::new(1000, vec![1000]).is_err());
        let lead = leading_digits(&big(999_000_005_123), 1000, 3).unwrap();
        assert_eq!(lead, f);
    }

    #[test]
    fn enumerates_all_strings_in_order() {
        let all: Vec<String> = DigitString::all(10, 2)
            .unwrap()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(all.len(), 90);
        assert_eq!(all[0], "10");
        assert_eq!(all[89], "99");
        let bin: Vec<String> = DigitString::all(2, 2)
            .unwrap()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(bin, vec!["10", "11"]);
        assert_eq!(DigitString::count(10, 3), big(900));
        assert!(DigitString::all(2, 1).is_err());
    }

    #[test]
    fn leading_digit_examples() {
        assert_eq!(
            leading_digits(&big(31415), 10, 2).unwrap().to_string(),
            "31"
        );
        assert_eq!(
            leading_digits(&big(1000), 10, 4).unwrap().to_string(),
            "1000"
        );
        assert_eq!(leading_digits(&big(1000), 10, 2).unwrap().to_string(), "10");
        assert_eq!(leading_digits(&big(81), 3, 3).unwrap().to_string(), "100");
        assert!(leading_digits(&big(99), 10, 3).is_err());
    }

    #[test]
    fn digit_counts() {
        assert_eq!(digit_count(&big(1), 10), 1);
        assert_eq!(digit_count(&big(9), 10), 1);
        assert_eq!(digit_count(&big(10), 10), 2);
        assert_eq!(digit_count(&big(1023), 2), 10);
        assert_eq!(digit_count(&big(1024), 2), 11);
        let huge = BigUint::from(7u32).pow(3000);
        assert_eq!(digit_count(&huge, 7), 3001);
        assert_eq!(digit_count(&(huge - 1u32), 7), 3000);
    }

    #[test]
    fn target_interval_examples() {
        let one = target_interval(&DigitString::parse("1", 10).unwrap()).unwrap();
        assert!(one.lo.is_exact() && one.lo.to_f64() == 0.0);
        assert!((one.hi.to_f64() - 2f64.log10()).abs() < 1e-15);
        assert!(one.hi.radius_f64() < 1e-30);

        let nine = target_interval(&DigitString::parse("9", 10).unwrap()).unwrap();
        assert!((nine.lo.to_f64() - 9f64.log10()).abs() < 1e-15);
        assert!(nine.hi.is_exact() && nine.hi.to_f64() == 1.0);

        let f31 = target_interval(&DigitString::parse("31", 10).unwrap()).unwrap();
        assert!((f31.lo.to_f64() - (31f64.log10() - 1.0)).abs() < 1e-15);
        assert!((f31.hi.to_f64() - (32f64.log10() - 1.0)).abs() < 1e-15);
        assert!(f31.lo.radius_f64() < 1e-30 && f31.hi.radius_f64() < 1e-30);
    }

    #[test]
    fn frac_log_examples() {
        let z = frac_log(&big(1000), 10).unwrap();
        assert!(z.is_exact() && z.to_f64() == 0.0);
        let two = frac_log(&big(2), 10).unwrap();
        assert!(two.to_decimal(12).starts_with("0.301029995663"));
        assert!(two.radius_f64() < 1e-40);
        assert!(frac_log(&big(0), 10).is_err());
    }

    #[test]
    fn boundary_values_are_undecided_not_misclassified() {
        let ctx = LogBase::new(10, DEFAULT_PRECISION).unwrap();
        let f = DigitString::parse("31", 10).unwrap();
        let iv = ctx.target_interval(&f).unwrap();
        // 31 * 10^5 sits exactly on the lower endpoint
        let x = ctx.frac_log(&big(3_100_000)).unwrap().value;
        assert_eq!(iv.classify(&x), Membership::Undecided);
        let just_below = ctx.frac_log(&big(3_099_999)).unwrap().value;
        assert_eq!(iv.classify(&just_below), Membership::Outside);
        let inside = ctx.frac_log(&big(3_150_000)).unwrap().value;
        assert_eq!(iv.classify(&inside), Membership::Inside);
    }
}
