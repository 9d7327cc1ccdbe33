//! Exact arbitrary-precision counting of partitions p(n) and plane
//! partitions pp(n), brute-force enumeration oracles, and the
//! asymptotic-ratio reports comparing ln-counts to their leading exponents.

use crate::special::{sigma2, SKYSCRAPER_EXPONENT, YOUNG_EXPONENT};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Which family a table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Integer partitions / Young diagrams.
    Young,
    /// Plane partitions / skyscrapers.
    Skyscraper,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Young => write!(f, "young"),
            Kind::Skyscraper => write!(f, "skyscraper"),
        }
    }
}

/// Exact count sequence indexed 0..=nmax.
#[derive(Debug, Clone)]
pub struct CountTable {
    kind: Kind,
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Result<&BigUint> {
        self.values
            .get(n)
            .ok_or_else(|| Error::Domain(format!("index {n} past the table end")))
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Table of partition numbers p(0..=nmax) by the pentagonal-number
/// recurrence p(n) = Σ_{k≥1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
pub fn partition_table(nmax: usize) -> CountTable {
    let mut values: Vec<BigUint> = Vec::with_capacity(nmax + 1);
    values.push(BigUint::one());
    for n in 1..=nmax {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let positive = k % 2 == 1;
            let acc = if positive { &mut plus } else { &mut minus };
            *acc += &values[n - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                let acc = if positive { &mut plus } else { &mut minus };
                *acc += &values[n - g2];
            }
            k += 1;
        }
        values.push(plus - minus);
    }
    CountTable { kind: Kind::Young, values }
}

/// Table of plane-partition numbers pp(0..=nmax) by the divisor-sum
/// recurrence n·pp(n) = Σ_{k=1}^{n} σ₂(k) pp(n-k). Every division by n is
/// checked exact; a nonzero remainder indicates an implementation bug.
pub fn plane_partition_table(nmax: usize) -> Result<CountTable> {
    let mut sg: Vec<u64> = Vec::with_capacity(nmax + 1);
    sg.push(0);
    for k in 1..=nmax {
        sg.push(sigma2(k as u64)?);
    }
    let mut values: Vec<BigUint> = Vec::with_capacity(nmax + 1);
    values.push(BigUint::one());
    for n in 1..=nmax {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            acc += &values[n - k] * sg[k];
        }
        let (q, r) = num_integer_div_rem(&acc, n as u64);
        if !r.is_zero() {
            return Err(Error::Integrity(format!(
                "plane-partition recurrence not divisible by {n}"
            )));
        }
        values.push(q);
    }
    Ok(CountTable { kind: Kind::Skyscraper, values })
}

fn num_integer_div_rem(x: &BigUint, d: u64) -> (BigUint, BigUint) {
    let d = BigUint::from(d);
    (x / &d, x % &d)
}

/// Count partitions of n by explicit recursive enumeration of nonincreasing
/// part sequences. Guarded to n ≤ 60 so the walk stays in the seconds range.
pub fn brute_force_partitions(n: u64) -> Result<BigUint> {
    if n > 60 {
        return Err(Error::Domain(format!(
            "brute-force partition enumeration capped at 60, got {n}"
        )));
    }
    fn walk(remaining: u64, max_part: u64) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut count = 0;
        for part in (1..=max_part.min(remaining)).rev() {
            count += walk(remaining - part, part);
        }
        count
    }
    Ok(BigUint::from(walk(n, n.max(1))))
}

/// Count plane partitions of n by explicit enumeration of row stacks:
/// each row is a nonincreasing sequence dominated componentwise by the row
/// above. Guarded to n ≤ 12.
pub fn brute_force_plane_partitions(n: u64) -> Result<BigUint> {
    if n > 12 {
        return Err(Error::Domain(format!(
            "brute-force plane-partition enumeration capped at 12, got {n}"
        )));
    }
    // enumerate the next row under `prev`, then recurse on the remainder
    fn rows(prev: &[u64], remaining: u64) -> u64 {
        let mut total = u64::from(remaining == 0);
        let mut row = Vec::with_capacity(prev.len());
        extend(prev, remaining, &mut row, &mut total);
        total
    }
    fn extend(prev: &[u64], remaining: u64, row: &mut Vec<u64>, total: &mut u64) {
        let pos = row.len();
        if pos >= prev.len() {
            return;
        }
        let used: u64 = row.iter().sum();
        let mut cap = prev[pos].min(remaining - used);
        if pos > 0 {
            cap = cap.min(row[pos - 1]);
        }
        for val in 1..=cap {
            row.push(val);
            // the row can end here: recurse into deeper rows
            *total += rows(row, remaining - used - val);
            extend(prev, remaining, row, total);
            row.pop();
        }
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let top = vec![n; n as usize];
    Ok(BigUint::from(rows(&top, n)))
}

/// Natural log of a big integer from its top bits: exact counts never pass
/// through floating point wholesale.
pub fn log_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap_or(0.0).ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// One comparison row: exact log-count against the predicted leading
/// exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub n: u64,
    pub log_count: f64,
    pub predicted: f64,
    pub ratio: f64,
}

/// Rows (N, ln count, predicted exponent, ratio) for the requested indices.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticsReport {
    pub kind: Kind,
    pub rows: Vec<ReportRow>,
}

/// Predicted leading exponent: π(2/3)^{1/2} √N for partitions,
/// 3(ζ(3)/4)^{1/3} N^{2/3} for plane partitions.
pub fn predicted_exponent(kind: Kind, n: u64) -> f64 {
    match kind {
        Kind::Young => YOUNG_EXPONENT * (n as f64).sqrt(),
        Kind::Skyscraper => SKYSCRAPER_EXPONENT * (n as f64).powf(2.0 / 3.0),
    }
}

/// Build the asymptotics report for the given indices from an exact table.
pub fn asymptotic_report(kind: Kind, ns: &[u64], table: &CountTable) -> Result<AsymptoticsReport> {
    if table.kind() != kind {
        return Err(Error::Domain(format!(
            "table holds {} counts, requested {kind}",
            table.kind()
        )));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if n == 0 {
            return Err(Error::Domain("report rows need N >= 1".into()));
        }
        let count = table.get(n as usize)?;
        let log_count = log_big(count);
        let predicted = predicted_exponent(kind, n);
        rows.push(ReportRow { n, log_count, predicted, ratio: log_count / predicted });
    }
    Ok(AsymptoticsReport { kind, rows })
}
