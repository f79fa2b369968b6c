//! Synthetic framework instances shared by the integration and acceptance
//! tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use pdigits::framework::{compute_bounds, find_m_a_delta, FrameworkParams};
use pdigits::{Ball, Precision};
use rand::Rng;

/// How the synthetic error term `E(n) = c4 n^-theta u(n)` picks `u(n)`.
#[derive(Clone, Copy, Debug)]
pub enum Adversary {
    /// `u = +-1`, pushing `{g(n)}` away from the middle of the window.
    Repel,
    /// `u = +-1` by parity of `n`.
    Alternate,
    /// `u = +1` throughout.
    Up,
    /// `u = -1` throughout.
    Down,
    /// `u` pseudo-random in `[-1, 1]`.
    Noise(u64),
}

/// A random valid `(params, delta, a)` with every constant a ratio of
/// small integers so that it can be rebuilt at any precision.
#[derive(Clone, Debug)]
pub struct Instance {
    /// `(numerator, denominator)` for c1, c2, c3, c4, theta
    pub c: [(i64, i64); 5],
    pub k: u64,
    pub a: (i64, i64),
    pub delta: (i64, i64),
    pub adversary: Adversary,
}

const DEN: i64 = 1000;

fn pick(rng: &mut impl Rng, lo: f64, hi: f64) -> (i64, i64) {
    let lo = (lo * DEN as f64).round() as i64;
    let hi = (hi * DEN as f64).round() as i64;
    (rng.gen_range(lo..=hi), DEN)
}

impl Instance {
    pub fn random(rng: &mut impl Rng, adversary: Adversary) -> Self {
        let delta = pick(rng, 0.1, 0.5);
        let a_max = DEN - delta.0 - 1;
        Instance {
            c: [
                pick(rng, 0.2, 2.0),
                pick(rng, -2.0, -0.05),
                pick(rng, -3.0, 3.0),
                pick(rng, 0.01, 0.3),
                pick(rng, 0.4, 0.75),
            ],
            k: rng.gen_range(1..=50),
            a: (rng.gen_range(0..=a_max), DEN),
            delta,
            adversary,
        }
    }

    fn r(v: (i64, i64), prec: Precision) -> Ball {
        Ball::from_ratio(&BigInt::from(v.0), &BigInt::from(v.1), prec)
    }

    pub fn params(&self, prec: Precision) -> FrameworkParams<Ball> {
        let [c1, c2, c3, c4, theta] = self.c.map(|v| Self::r(v, prec));
        FrameworkParams {
            c1,
            c2,
            c3,
            c4,
            theta,
            k: self.k,
        }
    }

    pub fn a(&self, prec: Precision) -> Ball {
        Self::r(self.a, prec)
    }

    pub fn delta(&self, prec: Precision) -> Ball {
        Self::r(self.delta, prec)
    }

    fn f(v: (i64, i64)) -> f64 {
        v.0 as f64 / v.1 as f64
    }

    /// `u(n)` in `[-1, 1]`, as a ratio with denominator `DEN`.
    pub fn u(&self, n: u64) -> i64 {
        let [c1, c2, c3, _, theta] = self.c.map(Self::f);
        let x = n as f64;
        let h = c1 * x.powf(theta) + c2 * x.ln() + c3;
        let a = Self::f(self.a);
        let d = Self::f(self.delta);
        let frac = h - h.floor();
        let centred = {
            let y = frac - (a + d / 2.0);
            y - y.round()
        };
        match self.adversary {
            Adversary::Repel => {
                if centred < 0.0 {
                    -DEN
                } else {
                    DEN
                }
            }
            Adversary::Alternate => {
                if n.is_multiple_of(2) {
                    DEN
                } else {
                    -DEN
                }
            }
            Adversary::Up => DEN,
            Adversary::Down => -DEN,
            Adversary::Noise(seed) => {
                let mut z = seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15);
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
                z ^= z >> 31;
                (z % (2 * DEN as u64 + 1)) as i64 - DEN
            }
        }
    }

    /// `g(n) = h(n) + c4 n^-theta u(n)` at the given precision.
    pub fn g(&self, n: u64, prec: Precision) -> Ball {
        let p = self.params(prec);
        p.main_term(n) + p.envelope(n) * Self::r((self.u(n), DEN), prec)
    }

    /// First hit and the framework bound.
    pub fn run(&self, prec: Precision) -> (Option<u64>, u64) {
        let bounds = compute_bounds(&self.params(prec), &self.delta(prec)).unwrap();
        let limit: u64 = (&bounds.bound).try_into().expect("bound fits in u64");
        let hit = find_m_a_delta(
            |n, p| self.g(n, p),
            self.k,
            &self.a(prec),
            &self.delta(prec),
            limit,
        )
        .unwrap();
        (hit, limit)
    }
}

pub fn adversary(i: usize) -> Adversary {
    match i % 5 {
        0 => Adversary::Repel,
        1 => Adversary::Alternate,
        2 => Adversary::Up,
        3 => Adversary::Down,
        _ => Adversary::Noise(i as u64),
    }
}
