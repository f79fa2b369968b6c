//! Bounds on the first `m >= K` with `{g(m)}` in a window `[a, a + delta)`.
//!
//! The functions handled here have the shape
//!
//! ```text
//! g(n) = c1 n^theta + c2 ln n + c3 + E(n),    |E(n)| <= c4 n^-theta  (n >= K)
//! ```
//!
//! with `c1 > 0`, `c2 < 0` and `0 < theta < 1`. For every window of width
//! `delta` some `m <= 2 max{K, L1, L2 + 1, L3, L4}` lands inside, where
//!
//! ```text
//! L1 = (-3 c2 / (c1 theta))^(1/theta)     L2 = (3 c4 / delta)^(1/theta)
//! D  = 2 / (c1 2^(theta-1) theta)         L3 = D^(1/theta)
//! L4 = (3 c1 theta / delta)^(1/(1-theta))
//! ```
//!
//! `log_b p(n)` and `log_b PL(n)` both fit this shape, which gives the
//! closed-form bounds of [`theorem_bound`].

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::asymptotics::{Constants, PARTITION_VALID_FROM, PLANE_PARTITION_VALID_FROM};
use crate::digits::{DigitString, LogBase, Membership, TargetInterval};
use crate::engines::Kind;
use crate::error::{precondition, Error, Result};
use crate::real::{Ball, Precision, Real};

/// Precision at which certified scans give up and report undecidable.
pub const MAX_PRECISION: Precision = 4096;

/// The data `(c1, c2, c3, c4, theta, K)` describing `g`.
#[derive(Clone, Debug)]
pub struct FrameworkParams<R> {
    pub c1: R,
    pub c2: R,
    pub c3: R,
    pub c4: R,
    pub theta: R,
    pub k: u64,
}

#[derive(Clone, Debug)]
pub struct FrameworkBounds<R> {
    pub l1: R,
    pub l2: R,
    pub l3: R,
    pub l4: R,
    pub d: R,
    /// `ceil(2 max{K, L1, L2 + 1, L3, L4})`
    pub bound: BigUint,
}

impl<R: Real> FrameworkParams<R> {
    pub fn validate(&self) -> Result<()> {
        let one = self.theta.int(1);
        let checks = [
            (self.c1.certainly_positive(), "c1 > 0"),
            ((-self.c2.clone()).certainly_positive(), "c2 < 0"),
            (self.c4.certainly_positive(), "c4 > 0"),
            (self.theta.certainly_positive(), "theta > 0"),
            (self.theta.certainly_lt(&one), "theta < 1"),
            (self.k >= 1, "K >= 1"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, what)) => Err(precondition(format!("framework parameters need {what}"))),
            None => Ok(()),
        }
    }

    /// `h(n) = c1 n^theta + c2 ln n + c3`.
    pub fn main_term(&self, n: u64) -> R {
        let x = self.c1.int(n as i64);
        self.c1.clone() * x.powf(&self.theta) + self.c2.clone() * x.ln() + self.c3.clone()
    }

    /// `c4 n^-theta`.
    pub fn envelope(&self, n: u64) -> R {
        let x = self.c4.int(n as i64);
        self.c4.clone() / x.powf(&self.theta)
    }
}

/// `x^e` for `x > 0`; anything else is a domain error.
fn positive_pow<R: Real>(x: R, e: &R, what: &str) -> Result<R> {
    if !x.certainly_positive() {
        return Err(Error::Domain(format!("{what}: base {x:?} is not positive")));
    }
    Ok(x.powf(e))
}

/// Evaluates `L1..L4`, `D` and the bound for a window of width `delta`.
pub fn compute_bounds<R: Real>(
    params: &FrameworkParams<R>,
    delta: &R,
) -> Result<FrameworkBounds<R>> {
    params.validate()?;
    if !delta.certainly_positive() {
        return Err(precondition(format!(
            "delta must be positive, got {delta:?}"
        )));
    }
    let FrameworkParams {
        c1,
        c2,
        c4,
        theta,
        k,
        ..
    } = params;
    let one = theta.int(1);
    let three = theta.int(3);
    let inv_theta = one.clone() / theta.clone();

    let l1 = positive_pow(
        -(three.clone() * c2.clone()) / (c1.clone() * theta.clone()),
        &inv_theta,
        "L1",
    )?;
    let l2 = positive_pow(three.clone() * c4.clone() / delta.clone(), &inv_theta, "L2")?;
    let two_pow = positive_pow(theta.int(2), &(theta.clone() - one.clone()), "D")?;
    let d = theta.int(2) / (c1.clone() * two_pow * theta.clone());
    let l3 = positive_pow(d.clone(), &inv_theta, "L3")?;
    let l4 = positive_pow(
        three * c1.clone() * theta.clone() / delta.clone(),
        &(one.clone() / (one.clone() - theta.clone())),
        "L4",
    )?;

    let top = [&l1, &l3, &l4]
        .into_iter()
        .fold(l2.clone() + one, |m, x| m.max(x))
        .max(&theta.int(*k as i64));
    let bound = (theta.int(2) * top)
        .ceil_upper()
        .to_biguint()
        .expect("the maximum is at least K >= 1");
    Ok(FrameworkBounds {
        l1,
        l2,
        l3,
        l4,
        d,
        bound,
    })
}

/// Parameters for `g(n) = log_b p(n)`, valid from `n = 4`.
pub fn instantiate_p<R: Real>(base: u32, ctx: R::Ctx) -> Result<FrameworkParams<R>> {
    check_base(base)?;
    let one = R::from_i64(1, ctx);
    let ln_b = one.int(base as i64).ln();
    Ok(FrameworkParams {
        c1: R::pi(ctx) * one.int(24).sqrt() / (one.int(6) * ln_b.clone()),
        c2: -(one.clone() / ln_b.clone()),
        c3: (one.int(3).sqrt() / one.int(12)).ln() / ln_b.clone(),
        c4: one.int(4) / ln_b,
        theta: one.ratio(1, 2),
        k: PARTITION_VALID_FROM,
    })
}

/// Parameters for `g(n) = log_b PL(n)`, valid from `n = 2829`.
pub fn instantiate_pl<R: Real>(base: u32, constants: &Constants<R>) -> Result<FrameworkParams<R>> {
    check_base(base)?;
    let a = &constants.a;
    let ln_b = a.int(base as i64).ln();
    Ok(FrameworkParams {
        c1: a.int(3) * (a.clone() / a.int(4)).powf(&a.ratio(1, 3)) / ln_b.clone(),
        c2: -(a.ratio(25, 36) / ln_b.clone()),
        c3: constants.b.ln() / ln_b.clone(),
        c4: a.int(200) / ln_b,
        theta: a.ratio(2, 3),
        k: PLANE_PARTITION_VALID_FROM,
    })
}

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        return Err(precondition(format!("base must be at least 2, got {base}")));
    }
    Ok(())
}

fn check_base_len(base: u32, t: u32) -> Result<()> {
    check_base(base)?;
    if t == 0 || (base == 2 && t == 1) {
        return Err(precondition(format!(
            "length {t} is not allowed in base {base} (need t >= 1, and t >= 2 in base 2)"
        )));
    }
    Ok(())
}

/// `b^-t`, the window width used for the closed-form bounds.
pub fn uniform_delta<R: Real>(base: u32, t: u32, ctx: R::Ctx) -> R {
    let den = BigInt::from(base).pow(t);
    R::from_ratio(&BigInt::from(1), &den, ctx)
}

/// The closed form `290 b^(2t) / ln^2 b` or `29396 b^(3t/2) / ln^(3/2) b`
/// as a certified ball.
pub fn theorem_value(kind: Kind, base: u32, t: u32, precision: Precision) -> Result<Ball> {
    check_base_len(base, t)?;
    let ln_b = Ball::ln_u64(base as u64, precision);
    let value = match kind {
        Kind::Partition => {
            let num = Ball::from_int(BigInt::from(290) * BigInt::from(base).pow(2 * t), precision);
            num / (&ln_b * &ln_b)
        }
        Kind::PlanePartition => {
            let cube = Ball::from_int(BigInt::from(base).pow(3 * t), precision);
            Ball::from_int(29396, precision) * cube.sqrt() / (&ln_b * ln_b.sqrt())
        }
    };
    Ok(value)
}

/// `ceil` of [`theorem_value`], with the precision raised until the ceiling
/// is certain.
pub fn theorem_bound(kind: Kind, base: u32, t: u32) -> Result<BigUint> {
    let mut precision = 128;
    loop {
        let v = theorem_value(kind, base, t, precision)?;
        // the closed form is irrational, so (k, k + 1] pins the ceiling
        let hi = v.ceil_upper();
        if v.floor_lower() + 1 == hi {
            return Ok(hi.to_biguint().expect("bound is positive"));
        }
        if precision >= MAX_PRECISION {
            return Err(Error::Undecidable { n: 0, precision });
        }
        precision *= 2;
    }
}

/// Framework bounds for `kind` in base `b` with window width `delta`.
pub fn kind_bounds(kind: Kind, base: u32, delta: &Ball) -> Result<FrameworkBounds<Ball>> {
    let prec = delta.prec();
    let params = match kind {
        Kind::Partition => instantiate_p::<Ball>(base, prec)?,
        Kind::PlanePartition => {
            let constants = crate::asymptotics::eval_constants(prec)?;
            instantiate_pl(base, &constants)?
        }
    };
    compute_bounds(&params, delta)
}

/// `{x}` when the floor of `x` is certain.
fn frac_if_certain(x: &Ball) -> Option<Ball> {
    x.floor_if_certain()
        .map(|k| x - Ball::from_int(k, x.prec()))
}

/// Smallest `m` in `[k, scan_limit]` with `{g(m)}` in `[a, a + delta)`.
///
/// `g(m, precision)` must return an enclosure of `g(m)` at the requested
/// precision; undecided memberships are retried at doubled precision up to
/// [`MAX_PRECISION`], after which an undecidable error is returned.
pub fn find_m_a_delta<G>(
    g: G,
    k: u64,
    a: &Ball,
    delta: &Ball,
    scan_limit: u64,
) -> Result<Option<u64>>
where
    G: Fn(u64, Precision) -> Ball,
{
    find_m_a_delta_with_fallback(g, k, a, delta, scan_limit, |m, precision| {
        Err(Error::Undecidable { n: m, precision })
    })
}

/// Like [`find_m_a_delta`], but asks `fallback` to settle memberships that
/// stay undecided at [`MAX_PRECISION`] (exact ties, typically).
pub fn find_m_a_delta_with_fallback<G, F>(
    g: G,
    k: u64,
    a: &Ball,
    delta: &Ball,
    scan_limit: u64,
    mut fallback: F,
) -> Result<Option<u64>>
where
    G: Fn(u64, Precision) -> Ball,
    F: FnMut(u64, Precision) -> Result<bool>,
{
    let window = TargetInterval {
        lo: a.clone(),
        hi: a + delta,
    };
    if a.certainly_negative() || Ball::from_int(1, a.prec()).certainly_lt(&window.hi) {
        return Err(precondition("the window [a, a + delta) must lie in [0, 1)"));
    }
    let start = a.prec().max(64);
    for m in k..=scan_limit {
        let mut precision = start;
        let inside = loop {
            let x = g(m, precision);
            let verdict = frac_if_certain(&x).map(|f| window.classify(&f));
            match verdict {
                Some(Membership::Inside) => break true,
                Some(Membership::Outside) => break false,
                _ if precision >= MAX_PRECISION => break fallback(m, precision)?,
                _ => precision = (precision * 2).min(MAX_PRECISION),
            }
        };
        if inside {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Plain-number view of [`FrameworkBounds`] for reports.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsSummary {
    pub delta: f64,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L2")]
    pub l2: f64,
    #[serde(rename = "L3")]
    pub l3: f64,
    #[serde(rename = "L4")]
    pub l4: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub bound: BigUint,
}

impl BoundsSummary {
    pub fn new<R: Real>(bounds: &FrameworkBounds<R>, delta: &R) -> Self {
        BoundsSummary {
            delta: delta.to_f64(),
            l1: bounds.l1.to_f64(),
            l2: bounds.l2.to_f64(),
            l3: bounds.l3.to_f64(),
            l4: bounds.l4.to_f64(),
            d: bounds.d.to_f64(),
            bound: bounds.bound.clone(),
        }
    }
}

/// Closed-form bound plus the framework breakdown under both window
/// conventions: the uniform width `b^-t` and the actual width of one digit
/// string (by default the narrowest, `f = b^t - 1`).
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub kind: Kind,
    pub b: u32,
    pub t: u32,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub theorem_bound: BigUint,
    pub uniform: BoundsSummary,
    pub f: DigitString,
    pub actual: BoundsSummary,
}

pub fn bound_report(
    kind: Kind,
    base: u32,
    t: u32,
    f: Option<&DigitString>,
    precision: Precision,
) -> Result<BoundReport> {
    let theorem = theorem_bound(kind, base, t)?;
    let f = match f {
        Some(f) if f.base() != base || f.len() != t as usize => {
            return Err(precondition(format!(
                "digit string {f} does not have length {t} in base {base}"
            )))
        }
        Some(f) => f.clone(),
        None => {
            let last = BigUint::from(base).pow(t) - 1u32;
            DigitString::from_value(&last, base, t as usize)?
        }
    };
    let uniform = uniform_delta::<Ball>(base, t, precision);
    let actual = LogBase::new(base, precision)?.target_interval(&f)?.delta();
    let summarize = |delta: &Ball| -> Result<BoundsSummary> {
        Ok(BoundsSummary::new(&kind_bounds(kind, base, delta)?, delta))
    };
    Ok(BoundReport {
        kind,
        b: base,
        t,
        theorem_bound: theorem,
        uniform: summarize(&uniform)?,
        actual: summarize(&actual)?,
        f,
    })
}
