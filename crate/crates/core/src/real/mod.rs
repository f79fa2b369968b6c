//! Scalar abstraction shared by the asymptotic and framework code.
//!
//! [`Real`] is implemented by the IEEE floats (through `num_traits::Float`,
//! with an empty context and no error tracking) and by [`Ball`], whose
//! context is the working precision in bits. Code written against `Real`
//! runs fast in `f64` for reports and estimates, and as a proof in `Ball`.

mod ball;

pub use ball::Ball;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Working precision, in bits, for [`Ball`] computations.
pub type Precision = u32;

pub trait Real:
    Sized
    + Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whatever is needed to create constants (precision for balls).
    type Ctx: Copy + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn from_i64(v: i64, ctx: Self::Ctx) -> Self;
    fn from_ratio(num: &BigInt, den: &BigInt, ctx: Self::Ctx) -> Self;
    fn from_f64(v: f64, ctx: Self::Ctx) -> Self;
    fn pi(ctx: Self::Ctx) -> Self;
    /// Significand bits available in this context.
    fn bits(ctx: Self::Ctx) -> u32;

    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn abs(&self) -> Self;
    fn max(&self, other: &Self) -> Self;

    /// Enlarges the enclosure by `|err|`; a no-op for plain floats.
    fn widen(self, err: &Self) -> Self;

    fn certainly_positive(&self) -> bool;
    fn certainly_lt(&self, other: &Self) -> bool;
    fn certainly_le(&self, other: &Self) -> bool;
    /// Smallest integer not below any point of the enclosure.
    fn ceil_upper(&self) -> BigInt;
    fn to_f64(&self) -> f64;
    fn radius(&self) -> f64;

    fn int(&self, v: i64) -> Self {
        Self::from_i64(v, self.ctx())
    }

    fn ratio(&self, num: i64, den: i64) -> Self {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den), self.ctx())
    }
}

impl<F> Real for F
where
    F: Float + FloatConst + FromPrimitive + Debug + Send + Sync,
{
    type Ctx = ();

    fn ctx(&self) {}

    fn from_i64(v: i64, _: ()) -> Self {
        F::from_i64(v).expect("integer fits the float type")
    }

    fn from_ratio(num: &BigInt, den: &BigInt, _: ()) -> Self {
        let r = BigRational::new(num.clone(), den.clone());
        F::from_f64(r.to_f64().expect("finite ratio")).expect("f64 converts")
    }

    fn from_f64(v: f64, _: ()) -> Self {
        F::from_f64(v).expect("f64 converts")
    }

    fn pi(_: ()) -> Self {
        F::PI()
    }

    fn bits(_: ()) -> u32 {
        F::epsilon().recip().log2().to_u32().unwrap_or(52) + 1
    }

    fn sqrt(&self) -> Self {
        Float::sqrt(*self)
    }

    fn ln(&self) -> Self {
        Float::ln(*self)
    }

    fn exp(&self) -> Self {
        Float::exp(*self)
    }

    fn powf(&self, e: &Self) -> Self {
        Float::powf(*self, *e)
    }

    fn abs(&self) -> Self {
        Float::abs(*self)
    }

    fn max(&self, other: &Self) -> Self {
        Float::max(*self, *other)
    }

    fn widen(self, _: &Self) -> Self {
        self
    }

    fn certainly_positive(&self) -> bool {
        *self > F::zero()
    }

    fn certainly_lt(&self, other: &Self) -> bool {
        self < other
    }

    fn certainly_le(&self, other: &Self) -> bool {
        self <= other
    }

    fn ceil_upper(&self) -> BigInt {
        use num_traits::FromPrimitive as _;
        BigInt::from_f64(Float::ceil(*self).to_f64().expect("finite"))
            .expect("finite value has a ceiling")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn radius(&self) -> f64 {
        0.0
    }
}

impl Real for Ball {
    type Ctx = Precision;

    fn ctx(&self) -> Precision {
        self.prec()
    }

    fn from_i64(v: i64, ctx: Precision) -> Self {
        Ball::from_int(v, ctx)
    }

    fn from_ratio(num: &BigInt, den: &BigInt, ctx: Precision) -> Self {
        Ball::from_ratio(num, den, ctx)
    }

    fn from_f64(v: f64, ctx: Precision) -> Self {
        Ball::from_f64(v, ctx)
    }

    fn pi(ctx: Precision) -> Self {
        Ball::pi(ctx)
    }

    fn bits(ctx: Precision) -> u32 {
        ctx
    }

    fn sqrt(&self) -> Self {
        Ball::sqrt(self)
    }

    fn ln(&self) -> Self {
        Ball::ln(self)
    }

    fn exp(&self) -> Self {
        Ball::exp(self)
    }

    fn powf(&self, e: &Self) -> Self {
        Ball::powf(self, e)
    }

    fn abs(&self) -> Self {
        Ball::abs(self)
    }

    fn max(&self, other: &Self) -> Self {
        Ball::max(self, other)
    }

    fn widen(self, err: &Self) -> Self {
        Ball::widen(self, err)
    }

    fn certainly_positive(&self) -> bool {
        Ball::certainly_positive(self)
    }

    fn certainly_lt(&self, other: &Self) -> bool {
        Ball::certainly_lt(self, other)
    }

    fn certainly_le(&self, other: &Self) -> bool {
        Ball::certainly_le(self, other)
    }

    fn ceil_upper(&self) -> BigInt {
        Ball::ceil_upper(self)
    }

    fn to_f64(&self) -> f64 {
        Ball::to_f64(self)
    }

    fn radius(&self) -> f64 {
        self.radius_f64()
    }
}
