//! Fixed-point midpoint-radius balls.
//!
//! A [`Ball`] with precision `p` encloses every real in
//! `[(mid - rad) / 2^p, (mid + rad) / 2^p]`. Every operation returns a ball
//! that encloses the exact result for every choice of inputs inside the
//! operand balls, so a comparison that succeeds on the enclosures is a proof.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Guard bits added to the working precision of transcendental kernels.
const GUARD_BITS: u32 = 32;

#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
}

fn shr_floor(x: &BigInt, k: u32) -> (BigInt, bool) {
    if k == 0 {
        return (x.clone(), false);
    }
    let q = x >> k;
    let inexact = &(&q << k) != x;
    (q, inexact)
}

fn shr_ceil(x: &BigUint, k: u32) -> BigUint {
    if k == 0 {
        return x.clone();
    }
    let q = x >> k;
    if &(&q << k) != x {
        q + 1u32
    } else {
        q
    }
}

fn div_ceil(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn magnitude(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

/// `f * 2^e` without intermediate overflow for moderate `f`.
fn ldexp(mut f: f64, mut e: i64) -> f64 {
    while e > 1000 {
        f *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        f *= 2f64.powi(-1000);
        e += 1000;
    }
    f * 2f64.powi(e as i32)
}

fn scaled_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(0.0);
    ldexp(top, shift as i64 - prec as i64)
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: BigInt::zero(),
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Ball {
            mid: v.into() << prec,
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn from_biguint(v: &BigUint, prec: u32) -> Self {
        Self::from_int(BigInt::from(v.clone()), prec)
    }

    /// Enclosure of `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "ratio with zero denominator");
        let (q, r) = (num << prec).div_mod_floor(den);
        Ball {
            mid: q,
            rad: if r.is_zero() {
                BigUint::zero()
            } else {
                BigUint::one()
            },
            prec,
        }
    }

    pub fn from_ratio_i64(num: i64, den: i64, prec: u32) -> Self {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    /// Exact enclosure of a finite `f64` (dyadic, so exact unless it has more
    /// fractional bits than `prec`).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite value {v}");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let (mant, exp, sign) = v.integer_decode();
        let mut m = BigInt::from(mant);
        if sign < 0 {
            m = -m;
        }
        let shift = exp as i64 + prec as i64;
        if shift >= 0 {
            Ball {
                mid: m << shift as u32,
                rad: BigUint::zero(),
                prec,
            }
        } else {
            let (q, inexact) = shr_floor(&m, (-shift) as u32);
            Ball {
                mid: q,
                rad: if inexact {
                    BigUint::one()
                } else {
                    BigUint::zero()
                },
                prec,
            }
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Midpoint scaled by `2^prec`.
    pub fn mid_scaled(&self) -> &BigInt {
        &self.mid
    }

    /// Radius scaled by `2^prec`.
    pub fn rad_scaled(&self) -> &BigUint {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn lower_scaled(&self) -> BigInt {
        &self.mid - BigInt::from(self.rad.clone())
    }

    fn upper_scaled(&self) -> BigInt {
        &self.mid + BigInt::from(self.rad.clone())
    }

    fn upper_abs_scaled(&self) -> BigUint {
        magnitude(&self.mid) + &self.rad
    }

    /// Re-expresses the ball at another precision, rounding outward.
    pub fn with_prec(&self, prec: u32) -> Ball {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let k = prec - self.prec;
                Ball {
                    mid: &self.mid << k,
                    rad: &self.rad << k,
                    prec,
                }
            }
            Ordering::Less => {
                let k = self.prec - prec;
                let (mid, inexact) = shr_floor(&self.mid, k);
                let mut rad = shr_ceil(&self.rad, k);
                if inexact {
                    rad += 1u32;
                }
                Ball { mid, rad, prec }
            }
        }
    }

    fn aligned(a: &Ball, b: &Ball) -> (Ball, Ball) {
        let p = a.prec.max(b.prec);
        (a.with_prec(p), b.with_prec(p))
    }

    /// Adds `err_scaled / 2^prec` to the radius.
    fn add_rad(mut self, err_scaled: &BigUint) -> Ball {
        self.rad += err_scaled;
        self
    }

    /// Grows the radius by `|err|`.
    pub fn widen(self, err: &Ball) -> Ball {
        let e = err.with_prec(self.prec.max(err.prec));
        let p = self.prec;
        let extra = shr_ceil(&e.upper_abs_scaled(), e.prec - p);
        self.add_rad(&extra)
    }

    /// Grows the radius by `2^-bits` (absolute).
    pub fn widen_pow2(self, bits: u32) -> Ball {
        let p = self.prec;
        let extra = if bits >= p {
            BigUint::one()
        } else {
            BigUint::one() << (p - bits)
        };
        self.add_rad(&extra)
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k.magnitude(),
            prec: self.prec,
        }
    }

    pub fn mul_u64(&self, k: u64) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k,
            prec: self.prec,
        }
    }

    pub fn div_u64(&self, k: u64) -> Ball {
        assert!(k > 0, "division by zero");
        let (q, r) = self.mid.div_mod_floor(&BigInt::from(k));
        let mut rad = div_ceil(&self.rad, &BigUint::from(k));
        if !r.is_zero() {
            rad += 1u32;
        }
        Ball {
            mid: q,
            rad,
            prec: self.prec,
        }
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: u32) -> Ball {
        Ball {
            mid: &self.mid << k,
            rad: &self.rad << k,
            prec: self.prec,
        }
    }

    /// Divides by `2^k`.
    pub fn shr(&self, k: u32) -> Ball {
        let (mid, inexact) = shr_floor(&self.mid, k);
        let mut rad = shr_ceil(&self.rad, k);
        if inexact {
            rad += 1u32;
        }
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    fn mul_ref(a: &Ball, b: &Ball) -> Ball {
        let (a, b) = Self::aligned(a, b);
        let p = a.prec;
        let prod = &a.mid * &b.mid;
        let (mid, inexact) = shr_floor(&prod, p);
        let err = magnitude(&a.mid) * &b.rad + magnitude(&b.mid) * &a.rad + &a.rad * &b.rad;
        let mut rad = shr_ceil(&err, p);
        if inexact {
            rad += 1u32;
        }
        Ball { mid, rad, prec: p }
    }

    fn div_ref(a: &Ball, b: &Ball) -> Ball {
        let (a, b) = Self::aligned(a, b);
        let p = a.prec;
        let bm = magnitude(&b.mid);
        assert!(bm > b.rad, "division by a ball that may contain zero");
        let (q, r) = (&a.mid << p).div_mod_floor(&b.mid);
        let num = (&a.rad * &bm + magnitude(&a.mid) * &b.rad) << p;
        let den = &bm * (&bm - &b.rad);
        let mut rad = div_ceil(&num, &den);
        if !r.is_zero() {
            rad += 1u32;
        }
        Ball {
            mid: q,
            rad,
            prec: p,
        }
    }

    pub fn abs(&self) -> Ball {
        if self.mid.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Enclosure of `max(x, y)` for `x` in `self`, `y` in `other`.
    pub fn max(&self, other: &Ball) -> Ball {
        let (a, b) = Self::aligned(self, other);
        let lo = a.lower_scaled().max(b.lower_scaled());
        let hi = a.upper_scaled().max(b.upper_scaled());
        let mid: BigInt = (&lo + &hi) >> 1u32;
        let rad = (&hi - &mid).to_biguint().expect("hi >= mid");
        Ball {
            mid,
            rad,
            prec: a.prec,
        }
    }

    pub fn certainly_positive(&self) -> bool {
        self.mid.is_positive() && self.mid.magnitude() > &self.rad
    }

    pub fn certainly_negative(&self) -> bool {
        self.mid.is_negative() && self.mid.magnitude() > &self.rad
    }

    /// Every point of `self` is `<` every point of `other`.
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.upper_scaled() < b.lower_scaled()
    }

    /// Every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Ball) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.upper_scaled() <= b.lower_scaled()
    }

    /// `floor(x)` if it is the same for every `x` in the ball.
    pub fn floor_if_certain(&self) -> Option<BigInt> {
        let lo = self.lower_scaled() >> self.prec;
        let hi = self.upper_scaled() >> self.prec;
        (lo == hi).then_some(lo)
    }

    /// Smallest integer that is `>=` every point of the ball.
    pub fn ceil_upper(&self) -> BigInt {
        let u = self.upper_scaled();
        let q = &u >> self.prec;
        if (&q << self.prec) == u {
            q
        } else {
            q + 1
        }
    }

    /// Largest integer that is `<=` every point of the ball.
    pub fn floor_lower(&self) -> BigInt {
        self.lower_scaled() >> self.prec
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, self.prec)
    }

    pub fn lower_f64(&self) -> f64 {
        scaled_to_f64(&self.lower_scaled(), self.prec)
    }

    pub fn upper_f64(&self) -> f64 {
        scaled_to_f64(&self.upper_scaled(), self.prec)
    }

    pub fn radius_f64(&self) -> f64 {
        scaled_to_f64(&BigInt::from(self.rad.clone()), self.prec)
    }

    /// `true` if the ball `x` lies entirely inside `self`.
    pub fn contains(&self, x: &Ball) -> bool {
        let (a, b) = Self::aligned(self, x);
        a.lower_scaled() <= b.lower_scaled() && b.upper_scaled() <= a.upper_scaled()
    }

    /// Midpoint rendered with `digits` decimals (truncated toward -inf).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let v = (&self.mid * &scale) >> self.prec;
        let neg = v.is_negative();
        let s = v.magnitude().to_str_radix(10);
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    // ---- transcendental kernels ----

    /// `sum_{i>=0} z^(2i+1) / (2i+1)`, valid for `|z| <= 1/2`.
    fn atanh_series(z: &Ball) -> Ball {
        let z2 = z * z;
        let mut term = z.clone();
        let mut acc = z.clone();
        let mut i = 1u64;
        loop {
            term = &term * &z2;
            acc = &acc + &term.div_u64(2 * i + 1);
            if term.upper_abs_scaled() <= BigUint::from(4u32) {
                break;
            }
            i += 1;
        }
        // remaining terms are bounded by |term| * z^2 / (1 - z^2) <= |term| / 3
        let tail = term.upper_abs_scaled();
        acc.add_rad(&tail)
    }

    /// `sum_{i>=0} (-1)^i x^(2i+1) / (2i+1)` for `x = 1/k`, `k >= 2`.
    fn atan_inv(k: u64, prec: u32) -> Ball {
        let k2 = k * k;
        let mut pow = Ball::from_ratio_i64(1, k as i64, prec);
        let mut acc = pow.clone();
        let mut i = 1u64;
        loop {
            pow = pow.div_u64(k2);
            let term = pow.div_u64(2 * i + 1);
            let done = term.upper_abs_scaled() <= BigUint::from(4u32);
            acc = if i % 2 == 1 {
                acc - term.clone()
            } else {
                acc + term.clone()
            };
            if done {
                // alternating, decreasing: tail bounded by the next term
                return acc.add_rad(&term.upper_abs_scaled());
            }
            i += 1;
        }
    }

    fn cached(
        cache: &'static OnceLock<Mutex<HashMap<u32, Ball>>>,
        prec: u32,
        compute: impl FnOnce(u32) -> Ball,
    ) -> Ball {
        let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = map.lock().expect("constant cache poisoned").get(&prec) {
            return v.clone();
        }
        let v = compute(prec);
        map.lock()
            .expect("constant cache poisoned")
            .insert(prec, v.clone());
        v
    }

    pub fn pi(prec: u32) -> Ball {
        static CACHE: OnceLock<Mutex<HashMap<u32, Ball>>> = OnceLock::new();
        Self::cached(&CACHE, prec, |p| {
            let w = p + GUARD_BITS;
            // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
            let v = Self::atan_inv(5, w).mul_u64(16) - Self::atan_inv(239, w).mul_u64(4);
            v.with_prec(p)
        })
    }

    pub fn ln2(prec: u32) -> Ball {
        static CACHE: OnceLock<Mutex<HashMap<u32, Ball>>> = OnceLock::new();
        Self::cached(&CACHE, prec, |p| {
            let w = p + GUARD_BITS;
            let z = Ball::from_ratio_i64(1, 3, w);
            Self::atanh_series(&z).shl(1).with_prec(p)
        })
    }

    /// `ln(m / 2^frac_bits)` for a positive integer `m`, at precision `prec`.
    fn ln_point(m: &BigUint, frac_bits: u32, prec: u32) -> Ball {
        assert!(!m.is_zero(), "logarithm of zero");
        let w = prec + GUARD_BITS;
        let top = m.bits() - 1;
        // m = y * 2^top with y in [1, 2)
        let mut k = top as i64 - frac_bits as i64;
        let (y_mid, inexact) = if top <= w as u64 {
            (m << (w as u64 - top), false)
        } else {
            let s = top - w as u64;
            let q = m >> s;
            let inexact = (&q << s) != *m;
            (q, inexact)
        };
        let mut y = Ball {
            mid: BigInt::from(y_mid),
            rad: if inexact {
                BigUint::one()
            } else {
                BigUint::zero()
            },
            prec: w,
        };
        let three_halves = BigInt::from(3u32) << (w - 1);
        if y.mid > three_halves {
            y = y.shr(1);
            k += 1;
        }
        let one = Ball::from_int(1, w);
        let z = &(&y - &one) / &(&y + &one);
        let ln_y = Self::atanh_series(&z).shl(1);
        let ln_x = ln_y + Self::ln2(w).mul_int(&BigInt::from(k));
        ln_x.with_prec(prec)
    }

    pub fn ln(&self) -> Ball {
        assert!(
            self.certainly_positive(),
            "logarithm of a ball that is not certainly positive"
        );
        let p = self.prec;
        let m = self.mid.magnitude();
        let base = Self::ln_point(m, p, p + GUARD_BITS);
        if self.rad.is_zero() {
            return base.with_prec(p);
        }
        // |ln x - ln m| <= r / (m - r) on [m - r, m + r]
        let w = base.prec;
        let err = div_ceil(&(&self.rad << w), &(m - &self.rad));
        base.add_rad(&err).with_prec(p)
    }

    /// Certified `ln(n)` for an exact non-negative integer `n >= 1`.
    ///
    /// Large values are reduced to their top `prec + 64` bits; the
    /// discarded tail contributes at most `2^-(prec + 63)`.
    pub fn ln_biguint(n: &BigUint, prec: u32) -> Ball {
        let window = prec as u64 + 64;
        let bits = n.bits();
        if bits <= window {
            return Self::ln_point(n, 0, prec);
        }
        let shift = bits - window;
        let top = n >> shift;
        let ln_top = Self::ln_point(&top, 0, prec + GUARD_BITS);
        let v = ln_top + Self::ln2(prec + GUARD_BITS).mul_u64(shift);
        // ln(n) - ln(top * 2^shift) in [0, 1/top)
        v.widen_pow2((window - 1) as u32).with_prec(prec)
    }

    pub fn ln_u64(n: u64, prec: u32) -> Ball {
        Self::ln_biguint(&BigUint::from(n), prec)
    }

    /// `exp(m / 2^prec)`.
    fn exp_point(m: &BigInt, prec: u32) -> Ball {
        let int_bits = (m.magnitude() >> prec).bits() as u32;
        let halvings = int_bits + 10;
        let w = prec + GUARD_BITS + halvings;
        // y = x / 2^halvings, exact at precision w
        let y = Ball {
            mid: m << (w - prec - halvings),
            rad: BigUint::zero(),
            prec: w,
        };
        let mut acc = Ball::from_int(1, w) + y.clone();
        let mut term = y.clone();
        let mut i = 2u64;
        loop {
            term = (&term * &y).div_u64(i);
            acc = &acc + &term;
            if term.upper_abs_scaled() <= BigUint::from(4u32) {
                break;
            }
            i += 1;
        }
        // |y| < 2^-10 so the tail is below |term|
        acc = acc.add_rad(&term.upper_abs_scaled());
        for _ in 0..halvings {
            acc = &acc * &acc;
        }
        acc.with_prec(prec)
    }

    pub fn exp(&self) -> Ball {
        let p = self.prec;
        let w = p + GUARD_BITS;
        let base = Self::exp_point(&(&self.mid << GUARD_BITS), w);
        if self.rad.is_zero() {
            return base.with_prec(p);
        }
        // |e^x - e^m| <= e^m (e^rho - 1), rho = rad / 2^p
        let half = BigUint::one() << p.saturating_sub(1);
        let growth = if self.rad <= half {
            // e^rho - 1 <= 2 rho for rho <= 1/2
            Ball {
                mid: BigInt::zero(),
                rad: &self.rad << (GUARD_BITS + 1),
                prec: w,
            }
        } else {
            let e_rho = Self::exp_point(&BigInt::from(&self.rad << GUARD_BITS), w);
            e_rho - Ball::from_int(1, w)
        };
        let err = shr_ceil(&(base.upper_abs_scaled() * growth.upper_abs_scaled()), w);
        base.add_rad(&err).with_prec(p)
    }

    pub fn sqrt(&self) -> Ball {
        let p = self.prec;
        let lo = self.lower_scaled();
        assert!(
            !lo.is_negative(),
            "square root of a ball with negative points"
        );
        let hi = self.upper_scaled();
        let s_lo: BigInt = BigInt::from((lo.magnitude() << p).sqrt());
        let s_hi: BigInt = BigInt::from((hi.magnitude() << p).sqrt()) + 1;
        let mid: BigInt = (&s_lo + &s_hi) >> 1u32;
        let rad = (&s_hi - &mid).to_biguint().expect("hi >= mid");
        Ball { mid, rad, prec: p }
    }

    /// `self^e` for a certainly positive base.
    pub fn powf(&self, e: &Ball) -> Ball {
        (e * &self.ln()).exp()
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.to_decimal(25), self.radius_f64())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_decimal(digits))
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            mid: -self.mid,
            rad: self.rad,
            prec: self.prec,
        }
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -self.clone()
    }
}

impl Add<&Ball> for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        if self.prec == rhs.prec {
            return Ball {
                mid: &self.mid + &rhs.mid,
                rad: &self.rad + &rhs.rad,
                prec: self.prec,
            };
        }
        let (a, b) = Ball::aligned(self, rhs);
        &a + &b
    }
}

impl Sub<&Ball> for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        self + &(-rhs)
    }
}

impl Mul<&Ball> for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        Ball::mul_ref(self, rhs)
    }
}

impl Div<&Ball> for &Ball {
    type Output = Ball;
    fn div(self, rhs: &Ball) -> Ball {
        Ball::div_ref(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: &Ball) -> Ball {
                (&self).$m(rhs)
            }
        }
        impl $tr<Ball> for &Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 192;

    fn close(b: &Ball, reference: &str, digits: usize) {
        let s = b.to_decimal(digits + 2);
        assert!(
            s.starts_with(&reference[..reference.len().min(digits)]),
            "{s} vs {reference}"
        );
    }

    #[test]
    fn pi_and_ln2_digits() {
        close(&Ball::pi(P), "3.14159265358979323846264338327950288", 36);
        close(&Ball::ln2(P), "0.69314718055994530941723212145817656", 36);
        assert!(Ball::pi(P).radius_f64() < 1e-50);
    }

    #[test]
    fn ln_of_exact_powers() {
        let ln8 = Ball::ln_u64(8, P);
        let three_ln2 = Ball::ln2(P).mul_u64(3);
        assert!((ln8 - three_ln2).abs().upper_f64() < 1e-50);
        let ln1 = Ball::ln_u64(1, P);
        assert!(ln1.upper_f64().abs() < 1e-50);
        let ln10 = Ball::ln_u64(10, P);
        close(&ln10, "2.30258509299404568401799145468436420760", 38);
    }

    #[test]
    fn ln_of_huge_integer_uses_window() {
        // ln(10^500) = 500 ln 10
        let n = BigUint::from(10u32).pow(500);
        let v = Ball::ln_biguint(&n, P);
        let expect = Ball::ln_u64(10, P).mul_u64(500);
        let d = (&v - &expect).abs();
        assert!(d.upper_f64() < 1e-45, "{d:?}");
    }

    #[test]
    fn exp_inverts_ln() {
        for &x in &[-20.5, -1.0, -1e-9, 0.0, 0.25, 1.0, 3.7, 60.0] {
            let b = Ball::from_f64(x, P);
            let r = b.exp().ln();
            assert!((r - &b).abs().upper_f64() < 1e-40, "x = {x}");
        }
        close(
            &Ball::from_int(1, P).exp(),
            "2.718281828459045235360287471352662497",
            36,
        );
    }

    #[test]
    fn radius_propagates_through_exp_and_ln() {
        let x = Ball::from_f64(2.0, P).widen(&Ball::from_f64(1e-10, P));
        let e = x.exp();
        assert!(e.radius_f64() >= 7.0e-10 && e.radius_f64() < 2e-9);
        assert!(e.contains(&Ball::from_f64(2.0 + 0.9e-10, 60).exp()));
        let l = x.ln();
        assert!(l.radius_f64() >= 4.9e-11);
    }

    #[test]
    fn sqrt_and_division() {
        let two = Ball::from_int(2, P);
        let s = two.sqrt();
        close(&s, "1.41421356237309504880168872420969807", 36);
        let q = &Ball::from_int(1, P) / &Ball::from_int(3, P);
        close(&q, "0.33333333333333333333333333333333333", 36);
        let back = &q * &Ball::from_int(3, P);
        assert!(back.contains(&Ball::from_int(1, 40)));
    }

    #[test]
    fn comparisons_are_strict_enclosures() {
        let a = Ball::from_ratio_i64(1, 3, P);
        let b = Ball::from_ratio_i64(1, 3, P);
        assert!(!a.certainly_lt(&b));
        assert!(!a.certainly_le(&b) || a.is_exact());
        let c = Ball::from_ratio_i64(1, 2, P);
        assert!(a.certainly_lt(&c));
        let exact = Ball::from_int(5, P);
        assert!(exact.certainly_le(&exact));
        assert_eq!(exact.floor_if_certain(), Some(BigInt::from(5)));
        assert_eq!(exact.ceil_upper(), BigInt::from(5));
        let near = Ball::from_int(5, P).widen_pow2(100);
        assert_eq!(near.floor_if_certain(), None);
        assert_eq!(near.ceil_upper(), BigInt::from(6));
    }

    #[test]
    fn max_is_an_enclosure() {
        let a = Ball::from_f64(1.0, P).widen(&Ball::from_f64(0.5, P));
        let b = Ball::from_f64(1.2, P);
        let m = a.max(&b);
        assert!(m.lower_f64() <= 1.2 + 1e-12 && m.upper_f64() >= 1.5 - 1e-12);
    }

    #[test]
    fn precision_changes_round_outward() {
        let third = Ball::from_ratio_i64(1, 3, 300);
        let low = third.with_prec(64);
        assert!(low.contains(&third.with_prec(64)));
        assert!(low.lower_f64() <= 1.0 / 3.0 && low.upper_f64() >= 1.0 / 3.0);
    }
}
