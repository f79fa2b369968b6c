//! Certified estimates of `log_b p(n)` and `log_b PL(n)`.
//!
//! Partition kind, valid for `n >= 4`:
//!
//! ```text
//! log_b p(n) = (pi sqrt(24) / 6) sqrt(n) / ln b - ln n / ln b + log_b(sqrt(3) / 12)
//!              +- 4 / (sqrt(n) ln b)
//! ```
//!
//! Plane-partition kind, valid for `n >= 2829`, with `A = zeta(3)`,
//! `c = zeta'(-1)` and `B = 2^(25/26) e^c A^(7/26) / sqrt(12 pi)`:
//!
//! ```text
//! log_b PL(n) = 3 (A/4)^(1/3) n^(2/3) / ln b - (25/36) ln n / ln b + log_b B
//!               +- 200 / (n^(2/3) ln b)
//! ```
//!
//! Everything is generic over [`Real`]; with [`Ball`] the midpoint carries
//! its own rounding radius and containment checks add it on the envelope
//! side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::engines::Kind;
use crate::error::{precondition, Result};
use crate::real::{Ball, Precision, Real};

pub const PARTITION_VALID_FROM: u64 = 4;
pub const PLANE_PARTITION_VALID_FROM: u64 = 2829;

/// Smallest precision accepted by [`eval_constants`].
pub const MIN_CONSTANT_PRECISION: Precision = 128;

/// `zeta(3)`, `zeta'(-1)` and the plane-partition constant `B`.
#[derive(Clone, Debug)]
pub struct Constants<R> {
    /// `zeta(3)`.
    pub a: R,
    /// `zeta'(-1)`.
    pub c: R,
    pub b: R,
}

impl<R: Real> Constants<R> {
    pub fn evaluate(ctx: R::Ctx) -> Self {
        let a = zeta3::<R>(ctx);
        let c = zeta_prime_minus_one::<R>(ctx);
        let b = plane_constant(&a, &c);
        Constants { a, c, b }
    }
}

/// Constants as certified balls; `precision` must be at least 128 bits.
pub fn eval_constants(precision: Precision) -> Result<Constants<Ball>> {
    if precision < MIN_CONSTANT_PRECISION {
        return Err(precondition(format!(
            "constant evaluation needs at least {MIN_CONSTANT_PRECISION} bits, got {precision}"
        )));
    }
    Ok(Constants::evaluate(precision))
}

/// `B = 2^(25/26) e^c A^(7/26) / sqrt(12 pi)`.
pub fn plane_constant<R: Real>(a: &R, c: &R) -> R {
    let two = a.int(2);
    let num = two.powf(&a.ratio(25, 26)) * c.exp() * a.powf(&a.ratio(7, 26));
    let den = (a.int(12) * R::pi(a.ctx())).sqrt();
    num / den
}

fn ratio_real<R: Real>(r: &BigRational, ctx: R::Ctx) -> R {
    R::from_ratio(r.numer(), r.denom(), ctx)
}

/// Apery's series `zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 C(2k, k))`.
///
/// The partial sum is accumulated exactly; the alternating tail is below
/// the first omitted term.
pub fn zeta3<R: Real>(ctx: R::Ctx) -> R {
    let target = BigInt::one() << (R::bits(ctx) + 16);
    let mut sum = BigRational::zero();
    let mut central = BigInt::one(); // C(2k, k)
    let mut k = 1u64;
    let tail = loop {
        central = central * BigInt::from(2 * (2 * k - 1)) / BigInt::from(k);
        let den = BigInt::from(k).pow(3) * &central;
        if den > target {
            break BigRational::new(BigInt::one(), den);
        }
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    };
    let five_halves = BigRational::new(BigInt::from(5), BigInt::from(2));
    let value: R = ratio_real(&(sum * &five_halves), ctx);
    value.widen(&ratio_real(&(tail * five_halves), ctx))
}

/// Bernoulli numbers `B_0..=B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for n in 1..=m {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(n+1, 0)
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `ln A` for the Glaisher–Kinkelin constant `A`, from the Euler–Maclaurin
/// expansion of `sum_{k<=N} k ln k`:
///
/// ```text
/// ln A = sum_{k<=N} k ln k - (N^2/2 + N/2 + 1/12) ln N + N^2/4
///        + sum_{j>=1} B_{2j+2} / ((2j+2)(2j+1)(2j) N^(2j))
/// ```
///
/// All even derivatives of `x ln x` beyond the first are positive, so the
/// truncation error is below the first omitted correction term.
pub fn ln_glaisher<R: Real>(ctx: R::Ctx) -> R {
    let bits = R::bits(ctx);
    let n = (bits / 4 + 32) as i64;
    let one = R::from_i64(1, ctx);
    let mut sum = R::from_i64(0, ctx);
    for k in 2..=n {
        sum = sum + one.int(k) * one.int(k).ln();
    }
    let ln_n = one.int(n).ln();
    let main =
        (one.ratio(n * n, 2) + one.ratio(n, 2) + one.ratio(1, 12)) * ln_n - one.ratio(n * n, 4);

    let threshold = BigRational::new(BigInt::one(), BigInt::one() << (bits + 16));
    let nn = BigInt::from(n * n);
    let correction_term = |j: usize, b: &[BigRational]| -> BigRational {
        let d = BigInt::from((2 * j + 2) * (2 * j + 1) * (2 * j)) * nn.pow(j as u32);
        &b[2 * j + 2] / BigRational::from_integer(d)
    };
    let mut max_j = 8;
    let (correction, omitted) = loop {
        let b = bernoulli(2 * max_j + 4);
        let mut acc = BigRational::zero();
        let mut found = None;
        for j in 1..=max_j {
            let term = correction_term(j, &b);
            if term.abs() < threshold {
                found = Some(term);
                break;
            }
            acc += term;
        }
        match found {
            Some(omitted) => break (acc, omitted),
            None => max_j *= 2,
        }
    };
    let value = sum - main + ratio_real::<R>(&correction, ctx);
    value.widen(&ratio_real::<R>(&omitted.abs(), ctx))
}

/// `zeta'(-1) = 1/12 - ln A`.
pub fn zeta_prime_minus_one<R: Real>(ctx: R::Ctx) -> R {
    R::from_ratio(&BigInt::one(), &BigInt::from(12), ctx) - ln_glaisher::<R>(ctx)
}

/// `mu(n) = (pi / 6) sqrt(24 n - 1)`.
pub fn mu_p<R: Real>(n: u64, ctx: R::Ctx) -> R {
    let one = R::from_i64(1, ctx);
    R::pi(ctx) / one.int(6) * one.int(24 * n as i64 - 1).sqrt()
}

/// An estimate of `log_b` of p(n) or PL(n) with the error envelope that
/// holds from `valid_from` on.
#[derive(Clone, Debug)]
pub struct LogEstimate<R> {
    pub midpoint: R,
    pub envelope: R,
    pub valid_from: u64,
}

impl<R: Real> LogEstimate<R> {
    /// `|value - midpoint| <= envelope`, decided on the enclosures.
    pub fn contains(&self, value: &R) -> bool {
        (value.clone() - self.midpoint.clone())
            .abs()
            .certainly_le(&self.envelope)
    }

    /// `|value - midpoint|` divided by the envelope.
    pub fn relative_error(&self, value: &R) -> f64 {
        (value.clone() - self.midpoint.clone()).abs().to_f64() / self.envelope.to_f64()
    }
}

/// Precomputed main-term data for one kind and base.
#[derive(Clone, Debug)]
pub struct LogEstimator<R> {
    kind: Kind,
    ln_base: R,
    /// coefficient of the growth term (`n^(1/2)` or `n^(2/3)`), before `/ ln b`
    growth: R,
    /// coefficient of `ln n`, before `/ ln b`
    log_coeff: R,
    /// constant term, before `/ ln b`
    constant: R,
}

impl<R: Real> LogEstimator<R> {
    pub fn partition(base: u32, ctx: R::Ctx) -> Result<Self> {
        check_base(base)?;
        let one = R::from_i64(1, ctx);
        let pi = R::pi(ctx);
        Ok(LogEstimator {
            kind: Kind::Partition,
            ln_base: one.int(base as i64).ln(),
            growth: pi * one.int(24).sqrt() / one.int(6),
            log_coeff: one.int(-1),
            constant: (one.int(3).sqrt() / one.int(12)).ln(),
        })
    }

    pub fn plane_partition(base: u32, constants: &Constants<R>) -> Result<Self> {
        check_base(base)?;
        let a = &constants.a;
        Ok(LogEstimator {
            kind: Kind::PlanePartition,
            ln_base: a.int(base as i64).ln(),
            growth: a.int(3) * (a.clone() / a.int(4)).powf(&a.ratio(1, 3)),
            log_coeff: -a.ratio(25, 36),
            constant: constants.b.ln(),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ln_base(&self) -> &R {
        &self.ln_base
    }

    pub fn valid_from(&self) -> u64 {
        match self.kind {
            Kind::Partition => PARTITION_VALID_FROM,
            Kind::PlanePartition => PLANE_PARTITION_VALID_FROM,
        }
    }

    /// `n^theta` for the kind's growth exponent.
    fn growth_power(&self, n: &R) -> R {
        match self.kind {
            Kind::Partition => n.sqrt(),
            Kind::PlanePartition => n.powf(&n.ratio(2, 3)),
        }
    }

    pub fn estimate(&self, n: u64) -> Result<LogEstimate<R>> {
        let valid_from = self.valid_from();
        if n < valid_from {
            return Err(precondition(format!(
                "{} estimate is proven only for n >= {valid_from}, got {n}",
                self.kind
            )));
        }
        let nr = self.ln_base.int(n as i64);
        let power = self.growth_power(&nr);
        let ln_n = nr.ln();
        let midpoint = (self.growth.clone() * power.clone()
            + self.log_coeff.clone() * ln_n
            + self.constant.clone())
            / self.ln_base.clone();
        let scale = match self.kind {
            Kind::Partition => 4,
            Kind::PlanePartition => 200,
        };
        let envelope = nr.int(scale) / (power * self.ln_base.clone());
        Ok(LogEstimate {
            midpoint,
            envelope,
            valid_from,
        })
    }
}

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        return Err(precondition(format!("base must be at least 2, got {base}")));
    }
    Ok(())
}

/// Certified estimate of `log_b p(n)`, `n >= 4`.
pub fn log_p_estimate(n: u64, base: u32, precision: Precision) -> Result<LogEstimate<Ball>> {
    LogEstimator::<Ball>::partition(base, precision)?.estimate(n)
}

/// Certified estimate of `log_b PL(n)`, `n >= 2829`.
pub fn log_pl_estimate(n: u64, base: u32, precision: Precision) -> Result<LogEstimate<Ball>> {
    let constants = eval_constants(precision.max(MIN_CONSTANT_PRECISION))?;
    LogEstimator::plane_partition(base, &constants)?.estimate(n)
}

/// `|ln(1 + x)| <= 2 |x|`, decided on the enclosures (`|x| <= 1/2`).
pub fn log1p_within_twice<R: Real>(x: &R) -> bool {
    let lhs = (x.int(1) + x.clone()).ln().abs();
    lhs.certainly_le(&(x.int(2) * x.abs()))
}

/// `(pi sqrt(24) / 6) sqrt(n) - mu(n)`, which lies in `[0, 2 / sqrt(n)]`.
pub fn mu_p_gap<R: Real>(n: u64, ctx: R::Ctx) -> R {
    let one = R::from_i64(1, ctx);
    R::pi(ctx) * one.int(24).sqrt() / one.int(6) * one.int(n as i64).sqrt() - mu_p::<R>(n, ctx)
}
