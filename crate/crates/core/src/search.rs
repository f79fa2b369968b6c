//! Smallest `n` whose value starts with a digit string, and the sweep over
//! all digit strings of one length that checks it against the closed-form
//! bound.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::digits::{
    leading_digits, DigitString, LogBase, Membership, TargetInterval, DEFAULT_PRECISION,
};
use crate::engines::{Kind, SequenceTable};
use crate::error::{precondition, Error, Result};
use crate::framework::theorem_bound;
use crate::real::Precision;

/// Entries added per table extension while scanning (at least).
const MIN_CHUNK: u64 = 1024;

/// How a hit was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// The certified logarithm straddled an endpoint; exact digits decided.
    Exact,
    /// The certified logarithm decided; exact digits confirmed.
    AsymptoticConfirmedExact,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::AsymptoticConfirmedExact => "asymptotic-confirmed-exact",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub f: DigitString,
    pub kind: Kind,
    /// `None` only in a verification report, when nothing up to the bound
    /// matched.
    pub n_min: Option<u64>,
    pub value_digit_count: Option<u64>,
    pub method: Option<Method>,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub bound: BigUint,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: Kind,
    pub b: u32,
    pub t: usize,
    pub results: Vec<SearchResult>,
    pub max_n_min: Option<u64>,
    pub all_within_bound: bool,
    /// Largest index examined.
    pub scanned_to: u64,
    pub table_entries: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl VerificationReport {
    pub fn violations(&self) -> impl Iterator<Item = &SearchResult> {
        self.results.iter().filter(|r| !r.within_bound)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub f: DigitString,
    pub count: u64,
}

/// Leading-digit frequencies of the values at `n = 1..=N`.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub kind: Kind,
    pub b: u32,
    pub t: usize,
    pub n: u64,
    /// One row per digit string of length `t`, increasing.
    pub rows: Vec<CensusRow>,
    /// Indices whose value has fewer than `t` digits.
    pub short_values: u64,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }
}

#[derive(Clone, Copy, Debug)]
struct Hit {
    n: u64,
    digit_count: u64,
    method: Method,
}

/// Leading-digit classification for one `(b, t)`.
struct Classifier {
    log: LogBase,
    t: usize,
    first: BigUint,
    /// `f = b^(t-1) + i` at index `i`
    intervals: Vec<TargetInterval>,
}

impl Classifier {
    fn new(base: u32, t: usize, precision: Precision) -> Result<Self> {
        let log = LogBase::new(base, precision)?;
        let intervals = DigitString::all(base, t)?
            .map(|f| log.target_interval(&f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Classifier {
            log,
            t,
            first: BigUint::from(base).pow(t as u32 - 1),
            intervals,
        })
    }

    fn index_of(&self, f: &DigitString) -> usize {
        (f.value() - &self.first)
            .to_usize()
            .expect("digit string index fits")
    }

    fn exact_index(&self, v: &BigUint) -> Result<usize> {
        let f = leading_digits(v, self.log.base(), self.t)?;
        Ok(self.index_of(&f))
    }

    /// Index of the leading digit string of `v` (which has at least `t`
    /// digits), its digit count and how it was decided.
    fn classify(&self, v: &BigUint) -> Result<(usize, u64, Method)> {
        let frac = self.log.frac_log(v)?;
        let guess = self.guess(frac.value.to_f64());
        if let Some(i) = guess {
            if self.intervals[i].classify(&frac.value) == Membership::Inside {
                return Ok((i, frac.digit_count, Method::AsymptoticConfirmedExact));
            }
        }
        Ok((self.exact_index(v)?, frac.digit_count, Method::Exact))
    }

    /// Candidate index from a float approximation of `{log_b v}`.
    fn guess(&self, x: f64) -> Option<usize> {
        let b = self.log.base() as f64;
        let lead = (b.ln() * (self.t as f64 - 1.0 + x)).exp().floor();
        if !lead.is_finite() {
            return None;
        }
        let i = lead - self.first.to_f64()?;
        (i >= 0.0 && (i as usize) < self.intervals.len()).then_some(i as usize)
    }
}

/// Searches over a growing table of exact values.
pub struct Searcher {
    table: SequenceTable,
    precision: Precision,
}

impl Searcher {
    pub fn new(kind: Kind) -> Self {
        Self::from_table(SequenceTable::new(kind))
    }

    pub fn from_table(table: SequenceTable) -> Self {
        Searcher {
            table,
            precision: DEFAULT_PRECISION,
        }
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn kind(&self) -> Kind {
        self.table.kind()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn table(&self) -> &SequenceTable {
        &self.table
    }

    pub fn into_table(self) -> SequenceTable {
        self.table
    }

    /// Makes index `n` available, growing the table geometrically up to
    /// `limit`.
    fn ensure(&mut self, n: u64, limit: u64) -> Result<()> {
        let have = self.table.max_index();
        if n <= have {
            return Ok(());
        }
        let target = (have.saturating_mul(2))
            .max(n + MIN_CHUNK)
            .min(limit)
            .max(n);
        self.table.extend(target)
    }

    /// Scans `n = 0..=limit` once and records the first hit for each
    /// wanted index. Stops early once every wanted index has a hit.
    fn scan(
        &mut self,
        cls: &Classifier,
        wanted: &[usize],
        limit: u64,
    ) -> Result<(Vec<Option<Hit>>, u64)> {
        let mut hits: Vec<Option<Hit>> = vec![None; cls.intervals.len()];
        let mut want = vec![false; cls.intervals.len()];
        for &i in wanted {
            want[i] = true;
        }
        let mut open = wanted.len();
        let mut n = 0u64;
        let mut last = 0u64;
        while n <= limit && open > 0 {
            self.ensure(n, limit)?;
            last = n;
            let v = &self.table.values()[n as usize];
            if *v >= cls.first {
                let (i, digits, method) = cls.classify(v)?;
                if want[i] && hits[i].is_none() {
                    if method == Method::AsymptoticConfirmedExact && cls.exact_index(v)? != i {
                        return Err(Error::Domain(format!(
                            "certified leading digits of value {n} disagree with exact extraction"
                        )));
                    }
                    hits[i] = Some(Hit {
                        n,
                        digit_count: digits,
                        method,
                    });
                    open -= 1;
                }
            }
            n += 1;
        }
        Ok((hits, last))
    }

    fn result(&self, f: DigitString, hit: Option<Hit>, bound: &BigUint) -> SearchResult {
        SearchResult {
            f,
            kind: self.kind(),
            n_min: hit.map(|h| h.n),
            value_digit_count: hit.map(|h| h.digit_count),
            method: hit.map(|h| h.method),
            bound: bound.clone(),
            within_bound: hit.is_some_and(|h| BigUint::from(h.n) <= *bound),
        }
    }

    /// Smallest `n <= limit` whose value starts with `f`.
    pub fn find_min_n(&mut self, f: &DigitString, limit: u64) -> Result<SearchResult> {
        let cls = Classifier::new(f.base(), f.len(), self.precision)?;
        let bound = theorem_bound(self.kind(), f.base(), f.len() as u32)?;
        let i = cls.index_of(f);
        let (hits, _) = self.scan(&cls, &[i], limit)?;
        match hits[i] {
            Some(hit) => Ok(self.result(f.clone(), Some(hit), &bound)),
            None => Err(Error::NotFound { limit }),
        }
    }

    /// Runs the search for every digit string of length `t` in base `b`
    /// up to the closed-form bound.
    pub fn verify_theorem(&mut self, base: u32, t: usize) -> Result<VerificationReport> {
        let t32 = u32::try_from(t).map_err(|_| precondition("length too large"))?;
        let bound = theorem_bound(self.kind(), base, t32)?;
        let limit = bound
            .to_u64()
            .ok_or_else(|| precondition(format!("bound {bound} does not fit in 64 bits")))?;
        if limit > self.table.max_index() {
            self.table.check_budget(limit)?;
        }
        let cls = Classifier::new(base, t, self.precision)?;
        let wanted: Vec<usize> = (0..cls.intervals.len()).collect();
        let (hits, scanned_to) = self.scan(&cls, &wanted, limit)?;
        let results: Vec<SearchResult> = DigitString::all(base, t)?
            .zip(hits)
            .map(|(f, hit)| self.result(f, hit, &bound))
            .collect();
        Ok(VerificationReport {
            kind: self.kind(),
            b: base,
            t,
            max_n_min: results.iter().filter_map(|r| r.n_min).max(),
            all_within_bound: results.iter().all(|r| r.within_bound),
            results,
            scanned_to,
            table_entries: self.table.max_index() + 1,
            runtime_seconds: None,
        })
    }

    /// Leading-digit counts over `n = 1..=n_max`.
    pub fn digit_census(&mut self, base: u32, t: usize, n_max: u64) -> Result<Census> {
        let cls = Classifier::new(base, t, self.precision)?;
        if n_max > self.table.max_index() {
            self.table.check_budget(n_max)?;
            self.table.extend(n_max)?;
        }
        let mut counts = vec![0u64; cls.intervals.len()];
        let mut short_values = 0;
        for v in &self.table.values()[1..=n_max as usize] {
            if *v < cls.first {
                short_values += 1;
            } else {
                counts[cls.classify(v)?.0] += 1;
            }
        }
        let rows = DigitString::all(base, t)?
            .zip(counts)
            .map(|(f, count)| CensusRow { f, count })
            .collect();
        Ok(Census {
            kind: self.kind(),
            b: base,
            t,
            n: n_max,
            rows,
            short_values,
        })
    }
}

/// One-shot [`Searcher::find_min_n`] with a fresh table.
pub fn find_min_n(kind: Kind, f: &DigitString, limit: u64) -> Result<SearchResult> {
    Searcher::new(kind).find_min_n(f, limit)
}

/// One-shot [`Searcher::verify_theorem`] with a fresh table.
pub fn verify_theorem(kind: Kind, base: u32, t: usize) -> Result<VerificationReport> {
    Searcher::new(kind).verify_theorem(base, t)
}

/// One-shot [`Searcher::digit_census`] with a fresh table.
pub fn digit_census(kind: Kind, base: u32, t: usize, n_max: u64) -> Result<Census> {
    Searcher::new(kind).digit_census(base, t, n_max)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    f: String,
    n_min: Option<u64>,
    bound: String,
    within_bound: bool,
    method: &'a str,
}

/// CSV with header `f,n_min,bound,within_bound,method`.
pub fn write_results_csv<'a, W: Write>(
    out: W,
    results: impl IntoIterator<Item = &'a SearchResult>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(CsvRow {
            f: r.f.to_string(),
            n_min: r.n_min,
            bound: r.bound.to_string(),
            within_bound: r.within_bound,
            method: r.method.map_or("", Method::as_str),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// CSV with header `f,count`.
pub fn write_census_csv<W: Write>(out: W, census: &Census) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["f", "count"])?;
    for row in &census.rows {
        w.write_record([row.f.to_string(), row.count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
