//! Exact tables of p(n) and PL(n).
//!
//! - Partition kind: Euler's pentagonal recurrence,
//!   `p(n) = sum_{k>=1} (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
//! - PlanePartition kind: `n PL(n) = sum_{k=1}^{n} sigma2(k) PL(n-k)`, with
//!   the division by `n` checked to be exact.
//!
//! Both recurrences reach arbitrarily far back, so the whole prefix is
//! kept in memory. Extension refuses to start if the estimated footprint
//! exceeds the table's memory budget.

mod cache;
mod limbs;
mod oracle;

pub use oracle::{brute_force_p, brute_force_pl, BRUTE_FORCE_PL_MAX, BRUTE_FORCE_P_MAX};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};

/// Arbitrary-precision non-negative integer.
pub type BigNat = BigUint;

pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "p")]
    Partition,
    #[serde(rename = "pl")]
    PlanePartition,
}

impl Kind {
    pub fn short_name(self) -> &'static str {
        match self {
            Kind::Partition => "p",
            Kind::PlanePartition => "pl",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "partition" => Ok(Kind::Partition),
            "pl" | "plane" | "plane-partition" => Ok(Kind::PlanePartition),
            _ => Err(precondition(format!(
                "unknown kind {s:?} (expected p or pl)"
            ))),
        }
    }
}

/// `sum_{d | k} d^2` by trial division.
pub fn sigma2(k: u64) -> u64 {
    assert!(k >= 1, "sigma2 is defined for k >= 1");
    let mut total = 0u64;
    let mut d = 1u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            total += d * d;
            let e = k / d;
            if e != d {
                total += e * e;
            }
        }
        d += 1;
    }
    total
}

/// `sigma2(1..=n)` by a divisor sieve; index 0 holds 0.
pub fn sigma2_sieve(n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    sieve_range(&mut s, 1);
    s
}

/// Fills `s[from..]` assuming `s[..from]` is already correct.
fn sieve_range(s: &mut [u64], from: usize) {
    let n = s.len() - 1;
    if from > n {
        return;
    }
    for d in 1..=n {
        let d2 = (d as u64) * (d as u64);
        let mut m = from.div_ceil(d) * d;
        while m <= n {
            s[m] += d2;
            m += d;
        }
    }
}

/// Rough upper estimate of the bytes held by a table indexed `0..=n`.
pub fn estimated_table_bytes(kind: Kind, n: u64) -> u64 {
    let nf = n as f64;
    // sum over m <= n of an upper bound on log2(value(m))
    let bit_sum = match kind {
        // p(m) < exp(pi sqrt(2m/3))
        Kind::Partition => {
            let c = std::f64::consts::PI * (2.0f64 / 3.0).sqrt() / std::f64::consts::LN_2;
            c * (2.0 / 3.0 * nf.powf(1.5) + nf.sqrt())
        }
        // ln PL(m) ~ 3 (zeta(3)/4)^(1/3) m^(2/3) = 2.0095 m^(2/3)
        Kind::PlanePartition => {
            let c = 2.01 / std::f64::consts::LN_2;
            c * (0.6 * nf.powf(5.0 / 3.0) + nf.powf(2.0 / 3.0))
        }
    };
    let entries = nf + 1.0;
    let limb_bytes = 8.0 * (bit_sum / 64.0 + entries);
    let header_bytes = 24.0 * entries;
    let sigma_bytes = match kind {
        Kind::Partition => 0.0,
        Kind::PlanePartition => 8.0 * entries,
    };
    let total = limb_bytes + header_bytes + sigma_bytes;
    if total >= u64::MAX as f64 {
        u64::MAX
    } else {
        total as u64
    }
}

/// Exact values `0..=N` of p or PL.
///
/// Extension is sequential; once built the table is read-only and can be
/// shared between threads.
#[derive(Clone, Debug)]
pub struct SequenceTable {
    kind: Kind,
    values: Vec<BigNat>,
    sigma2: Vec<u64>,
    memory_budget: u64,
}

impl SequenceTable {
    pub fn new(kind: Kind) -> Self {
        Self::with_memory_budget(kind, DEFAULT_MEMORY_BUDGET)
    }

    pub fn with_memory_budget(kind: Kind, memory_budget: u64) -> Self {
        SequenceTable {
            kind,
            values: vec![BigNat::one()],
            sigma2: match kind {
                Kind::Partition => Vec::new(),
                Kind::PlanePartition => vec![0],
            },
            memory_budget,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn memory_budget(&self) -> u64 {
        self.memory_budget
    }

    pub fn set_memory_budget(&mut self, bytes: u64) {
        self.memory_budget = bytes;
    }

    /// Largest index held.
    pub fn max_index(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn values(&self) -> &[BigNat] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<&BigNat> {
        self.values.get(usize::try_from(n).ok()?)
    }

    /// `sigma2(0..=N)` (PlanePartition tables only; empty otherwise).
    pub fn sigma2(&self) -> &[u64] {
        &self.sigma2
    }

    /// Bytes currently held by limbs, vector headers and the sieve.
    pub fn memory_bytes(&self) -> u64 {
        let limbs: u64 = self
            .values
            .iter()
            .map(|v| v.iter_u64_digits().len() as u64)
            .sum();
        8 * limbs + 24 * self.values.len() as u64 + 8 * self.sigma2.len() as u64
    }

    /// Checks the budget for a table holding `0..=n`.
    pub fn check_budget(&self, n: u64) -> Result<()> {
        let needed = estimated_table_bytes(self.kind, n);
        if needed > self.memory_budget {
            return Err(Error::ResourceLimit {
                kind: self.kind.short_name(),
                n,
                needed,
                budget: self.memory_budget,
            });
        }
        Ok(())
    }

    /// Extends the table so it holds exact values for every index `0..=n`.
    pub fn extend(&mut self, n: u64) -> Result<()> {
        if n <= self.max_index() {
            return Ok(());
        }
        self.check_budget(n)?;
        let n = usize::try_from(n).map_err(|_| precondition("index does not fit in memory"))?;
        let from = self.values.len();
        self.values.reserve(n + 1 - from);
        if self.kind == Kind::PlanePartition && self.sigma2.len() <= n {
            let sieved = self.sigma2.len();
            self.sigma2.resize(n + 1, 0);
            sieve_range(&mut self.sigma2, sieved);
        }
        for m in from..=n {
            let v = self.compute_entry(m)?;
            self.values.push(v);
        }
        Ok(())
    }

    /// Recomputes entry `m` from entries `0..m`.
    fn compute_entry(&self, m: usize) -> Result<BigNat> {
        if m == 0 {
            return Ok(BigNat::one());
        }
        match self.kind {
            Kind::Partition => self.pentagonal_step(m),
            Kind::PlanePartition => self.convolution_step(m),
        }
    }

    fn pentagonal_step(&self, m: usize) -> Result<BigNat> {
        let mut plus = BigNat::zero();
        let mut minus = BigNat::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = g1 + k;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &self.values[m - g1];
            if g2 <= m {
                *acc += &self.values[m - g2];
            }
        }
        if plus < minus {
            return Err(Error::Recurrence {
                n: m as u64,
                reason: "pentagonal sum is negative".into(),
            });
        }
        Ok(plus - minus)
    }

    fn convolution_step(&self, m: usize) -> Result<BigNat> {
        let mut acc: Vec<u64> = Vec::with_capacity(self.values[m - 1].iter_u64_digits().len() + 4);
        for k in 1..=m {
            limbs::mac(&mut acc, &self.values[m - k], self.sigma2[k]);
        }
        let rem = limbs::div_small(&mut acc, m as u64);
        if rem != 0 {
            return Err(Error::Recurrence {
                n: m as u64,
                reason: format!("convolution sum leaves remainder {rem} modulo n"),
            });
        }
        Ok(limbs::to_biguint(&acc))
    }

    /// Recomputes entry `n` from the earlier entries and compares.
    pub fn verify_entry(&self, n: u64) -> Result<()> {
        let idx = usize::try_from(n).map_err(|_| precondition("index out of range"))?;
        let stored = self
            .values
            .get(idx)
            .ok_or_else(|| precondition(format!("index {n} not in table")))?;
        let fresh = self.compute_entry(idx)?;
        if &fresh != stored {
            return Err(Error::Recurrence {
                n,
                reason: "stored value differs from recomputation".into(),
            });
        }
        Ok(())
    }

    pub(crate) fn from_parts(kind: Kind, values: Vec<BigNat>, memory_budget: u64) -> Self {
        let sigma2 = match kind {
            Kind::Partition => Vec::new(),
            Kind::PlanePartition => sigma2_sieve(values.len() - 1),
        };
        SequenceTable {
            kind,
            values,
            sigma2,
            memory_budget,
        }
    }
}
