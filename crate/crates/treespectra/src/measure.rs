//! Spectral measures: normalization onto [0, 1], empirical and limiting
//! staircase CDFs, plateau endpoints, and the totient-sum identities that
//! certify the limiting weights.
//!
//! Weights are exact rationals wherever the counts are exact
//! (multiplicities over node counts, `(k-1)^2 / (k^m - 1)` limiting
//! proportions); floats appear only in positions and reported cumulatives.
//! Limiting quantities are truncated sums and always carry an explicit tail
//! bound.

use num::bigint::BigInt;
use num::integer::gcd;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyfam::{closed_form_roots, euler_phi};
use crate::spectra::{OperatorKind, SpectrumReport};
use crate::treegen::BranchingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizeScheme {
    /// `x = (lambda + k) / (2k)`, exactly as published. For k <= 3 this maps
    /// part of the support outside [0, 1] (2 sqrt(k) > k).
    PaperAffine,
    /// `x = (lambda + 2 sqrt(b)) / (4 sqrt(b))`: the spectral support
    /// [-2 sqrt(b), 2 sqrt(b)] lands exactly on [0, 1]. Default.
    SupportAffine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdfKind {
    Empirical { depth: usize },
    Limiting { truncation: usize },
}

#[derive(Debug, Clone)]
pub struct CdfPoint {
    /// Normalized eigenvalue position.
    pub x: f64,
    /// Exact weight of the atom.
    pub weight: BigRational,
}

/// Weighted normalized eigenvalue distribution as a right-continuous step
/// CDF. `cumulative[i]` is the total mass at and left of `points[i]`.
#[derive(Debug, Clone)]
pub struct StaircaseCDF {
    pub points: Vec<CdfPoint>,
    pub cumulative: Vec<f64>,
    pub kind: CdfKind,
    pub scheme: NormalizeScheme,
    /// Mass possibly missing beyond the truncation (zero for empirical).
    pub tail_bound: f64,
}

impl StaircaseCDF {
    /// Right-continuous evaluation F(x).
    pub fn eval(&self, x: f64) -> f64 {
        match self.points.partition_point(|p| p.x <= x) {
            0 => 0.0,
            i => self.cumulative[i - 1],
        }
    }

    /// Left limit F(x-).
    pub fn eval_left(&self, x: f64) -> f64 {
        match self.points.partition_point(|p| p.x < x) {
            0 => 0.0,
            i => self.cumulative[i - 1],
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// CSV columns: x, cumulative (17 significant digits).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,cumulative\n");
        for (p, c) in self.points.iter().zip(self.cumulative.iter()) {
            out.push_str(&format!("{:.16e},{:.16e}\n", p.x, c));
        }
        out
    }
}

/// The family parameters behind the normalization: display `k` and
/// branching `b` (`b = k` for constant trees, `b = k - 1` for regular
/// subtrees).
fn normalization_params(spec: &BranchingSpec) -> Result<(u64, u64)> {
    match spec {
        BranchingSpec::ConstantChildren { k } => Ok((*k, *k)),
        BranchingSpec::RegularSubtree { k } => Ok((*k, *k - 1)),
        _ => Err(Error::InvalidSpec(
            "normalization is defined for constant and regular-subtree families".into(),
        )),
    }
}

/// Maps one eigenvalue into [0, 1] under the scheme.
pub fn normalize_value(lambda: f64, spec: &BranchingSpec, scheme: NormalizeScheme) -> Result<f64> {
    let (k, b) = normalization_params(spec)?;
    Ok(match scheme {
        NormalizeScheme::PaperAffine => (lambda + k as f64) / (2.0 * k as f64),
        NormalizeScheme::SupportAffine => {
            let edge = 2.0 * (b as f64).sqrt();
            (lambda + edge) / (2.0 * edge)
        }
    })
}

/// Normalizes an adjacency spectrum report into a weighted point set with
/// weights `multiplicity / total_dim`, already a right-continuous step CDF.
pub fn normalize_spectrum(
    report: &SpectrumReport,
    scheme: NormalizeScheme,
) -> Result<StaircaseCDF> {
    if report.operator != OperatorKind::Adjacency {
        return Err(Error::InvalidSpec(
            "normalization applies to adjacency spectra".into(),
        ));
    }
    let total = BigInt::from(report.total_dim);
    let points: Vec<CdfPoint> = report
        .entries
        .iter()
        .map(|e| {
            Ok(CdfPoint {
                x: normalize_value(e.value, &report.spec, scheme)?,
                weight: BigRational::new(BigInt::from(e.multiplicity), total.clone()),
            })
        })
        .collect::<Result<_>>()?;
    Ok(finish_cdf(
        points,
        CdfKind::Empirical {
            depth: report.depth,
        },
        scheme,
        0.0,
    ))
}

/// Finalizes a point set into a step CDF: sorts, merges equal positions,
/// accumulates. Idempotent on the output of [`normalize_spectrum`].
pub fn empirical_cdf(cdf: &StaircaseCDF) -> StaircaseCDF {
    finish_cdf(cdf.points.clone(), cdf.kind, cdf.scheme, cdf.tail_bound)
}

fn finish_cdf(
    mut points: Vec<CdfPoint>,
    kind: CdfKind,
    scheme: NormalizeScheme,
    tail_bound: f64,
) -> StaircaseCDF {
    points.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    let mut merged: Vec<CdfPoint> = Vec::with_capacity(points.len());
    for p in points {
        match merged.last_mut() {
            Some(last) if last.x == p.x => last.weight += p.weight,
            _ => merged.push(p),
        }
    }
    let mut acc = BigRational::zero();
    let cumulative = merged
        .iter()
        .map(|p| {
            acc += &p.weight;
            acc.to_f64().unwrap()
        })
        .collect();
    StaircaseCDF {
        points: merged,
        cumulative,
        kind,
        scheme,
        tail_bound,
    }
}

fn limit_proportion_exact(spec: &BranchingSpec, m: usize) -> Result<BigRational> {
    if m < 2 {
        return Err(Error::IndexOutOfRange { index: m, limit: 2 });
    }
    let (base, num) = match spec {
        BranchingSpec::ConstantChildren { k } => (*k, (*k - 1) * (*k - 1)),
        BranchingSpec::RegularSubtree { k } => (*k - 1, (*k - 2) * (*k - 2)),
        _ => {
            return Err(Error::InvalidSpec(
                "limiting proportions are defined for constant and regular-subtree families".into(),
            ))
        }
    };
    let den = num::pow::pow(BigInt::from(base), m) - BigInt::one();
    Ok(BigRational::new(BigInt::from(num), den))
}

/// Limiting proportion of eigenvalues equal to a value first appearing at
/// index `m`: `(k-1)^2 / (k^m - 1)` for the k-ary tree,
/// `(k-2)^2 / ((k-1)^m - 1)` for the regular subtree.
pub fn limit_proportion(spec: &BranchingSpec, m: usize) -> Result<f64> {
    Ok(limit_proportion_exact(spec, m)?.to_f64().unwrap())
}

/// Upper bound on the limiting mass carried by indices above `truncation`:
/// each index n holds at most (n-1) first-appearance values.
fn proportion_tail_bound(spec: &BranchingSpec, truncation: usize) -> f64 {
    let mut tail = 0.0;
    for n in truncation + 1..truncation + 400 {
        let p = match limit_proportion(spec, n) {
            Ok(p) => p,
            Err(_) => return f64::NAN,
        };
        let term = (n as f64 - 1.0) * p;
        tail += term;
        if term < 1e-300 {
            break;
        }
    }
    tail
}

/// The truncated limiting spectral CDF: one atom per first-appearance root
/// `2 sqrt(b) cos(a pi / m)` (gcd(a, m) = 1) for `m = 2 ..= truncation`,
/// each weighted by `limit_proportion(m)`.
pub fn limiting_cdf(
    spec: &BranchingSpec,
    truncation: usize,
    scheme: NormalizeScheme,
) -> Result<StaircaseCDF> {
    let (_, b) = normalization_params(spec)?;
    if truncation < 2 {
        return Err(Error::IndexOutOfRange {
            index: truncation,
            limit: 2,
        });
    }
    let mut points = Vec::new();
    for m in 2..=truncation {
        let weight = limit_proportion_exact(spec, m)?;
        let roots = closed_form_roots(b, m as u64);
        for (idx, root) in roots.iter().enumerate() {
            // roots[idx] corresponds to l = m - 1 - idx (descending l gives
            // ascending roots).
            let l = m - 1 - idx;
            if gcd(l, m) != 1 {
                continue;
            }
            points.push(CdfPoint {
                x: normalize_value(*root, spec, scheme)?,
                weight: weight.clone(),
            });
        }
    }
    Ok(finish_cdf(
        points,
        CdfKind::Limiting { truncation },
        scheme,
        proportion_tail_bound(spec, truncation),
    ))
}

/// One plateau of the limiting staircase.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EndpointRecord {
    pub m: u64,
    pub a: u64,
    /// Cumulative measure strictly below the value.
    pub left: f64,
    /// `left + width`.
    pub right: f64,
    /// `limit_proportion(m)`.
    pub width: f64,
    /// Truncation tail bound on `left`.
    pub tail_bound: f64,
}

/// Endpoints of the plateau of the value `2 sqrt(b) cos(a pi / m)`,
/// `gcd(a, m) = 1`: the cumulative measure below the value sums
/// `limit_proportion(n)` over the coprime pairs `(l, n)` with
/// `l / n > a / m` (cosine decreases on `[0, pi]`, so larger angle fractions
/// sit further left), truncated at `truncation_n` with a reported tail.
pub fn staircase_endpoints(
    spec: &BranchingSpec,
    m: u64,
    a: u64,
    truncation_n: usize,
) -> Result<EndpointRecord> {
    if m < 2 || a < 1 || a >= m {
        return Err(Error::IndexOutOfRange {
            index: a as usize,
            limit: m as usize - 1,
        });
    }
    if gcd(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    if truncation_n < m as usize {
        return Err(Error::IndexOutOfRange {
            index: truncation_n,
            limit: m as usize,
        });
    }
    let mut left = BigRational::zero();
    for n in 2..=truncation_n as u64 {
        let count = (1..n).filter(|&l| gcd(l, n) == 1 && l * m > a * n).count();
        if count > 0 {
            left += limit_proportion_exact(spec, n as usize)?
                * BigRational::from_integer(BigInt::from(count));
        }
    }
    let width = limit_proportion_exact(spec, m as usize)?;
    let right = &left + &width;
    Ok(EndpointRecord {
        m,
        a,
        left: left.to_f64().unwrap(),
        right: right.to_f64().unwrap(),
        width: width.to_f64().unwrap(),
        tail_bound: proportion_tail_bound(spec, truncation_n),
    })
}

/// All endpoint records for first indices `2 ..= max_m`, ordered by (m, a).
pub fn all_endpoints(
    spec: &BranchingSpec,
    max_m: u64,
    truncation_n: usize,
) -> Result<Vec<EndpointRecord>> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        for a in 1..m {
            if gcd(a, m) == 1 {
                out.push(staircase_endpoints(spec, m, a, truncation_n)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct LambertPartial {
    pub value: f64,
    pub tail_bound: f64,
}

/// Partial sum of `sum_{n=2}^{N} phi(n) (k-1)^2 / (k^n - 1)`, which
/// converges to 1: the limiting plateau widths tile the unit interval. The
/// tail bound majorizes the missing terms with `phi(n) <= n` and
/// `k^n - 1 >= k^n / 2`.
pub fn lambert_partial(k: u64, truncation: usize) -> Result<LambertPartial> {
    if k < 2 {
        return Err(Error::InvalidSpec("identity sums require k >= 2".into()));
    }
    if truncation < 2 {
        return Err(Error::IndexOutOfRange {
            index: truncation,
            limit: 2,
        });
    }
    let mut sum = BigRational::zero();
    let numerator = BigInt::from((k - 1) * (k - 1));
    for n in 2..=truncation {
        let den = num::pow::pow(BigInt::from(k), n) - BigInt::one();
        let term = BigRational::new(&numerator * BigInt::from(euler_phi(n as u64)?), den);
        sum += term;
    }
    Ok(LambertPartial {
        value: sum.to_f64().unwrap(),
        tail_bound: geometric_index_tail(k, truncation, ((k - 1) * (k - 1)) as f64),
    })
}

/// The k = 2 variant summed from n = 1, `sum phi(n) / (2^n - 1)`, which
/// converges to 2.
pub fn lambert_partial_from_one(truncation: usize) -> Result<LambertPartial> {
    if truncation < 1 {
        return Err(Error::IndexOutOfRange {
            index: truncation,
            limit: 1,
        });
    }
    let mut sum = BigRational::zero();
    for n in 1..=truncation {
        let den = num::pow::pow(BigInt::from(2u64), n) - BigInt::one();
        let term = BigRational::new(BigInt::from(euler_phi(n as u64)?), den);
        sum += term;
    }
    Ok(LambertPartial {
        value: sum.to_f64().unwrap(),
        tail_bound: geometric_index_tail(2, truncation, 1.0),
    })
}

/// `factor * 2 * sum_{n > N} n x^n` at `x = 1/k`, in closed form.
fn geometric_index_tail(k: u64, truncation: usize, factor: f64) -> f64 {
    let x = 1.0 / k as f64;
    let n = truncation as f64;
    let series = x.powf(n + 1.0) * ((n + 1.0) - n * x) / ((1.0 - x) * (1.0 - x));
    2.0 * factor * series
}

/// Kolmogorov (sup) distance between two step CDFs on the same
/// normalization scheme, evaluated at the union of jump points (both sides
/// of every jump). Jump positions within 1e-9 of each other are treated as
/// the same atom: the two CDFs compute positions through different float
/// paths (isolated polynomial roots vs cosine closed forms), and without
/// snapping an atom shared by both would register its full weight over a
/// spurious 1-ulp interval.
pub fn cdf_distance(c1: &StaircaseCDF, c2: &StaircaseCDF) -> Result<f64> {
    if c1.scheme != c2.scheme {
        return Err(Error::SchemeMismatch);
    }
    let mut xs: Vec<f64> = c1
        .points
        .iter()
        .chain(c2.points.iter())
        .map(|p| p.x)
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let snap = 1e-9;
    let mut worst = 0.0f64;
    let mut i = 0;
    while i < xs.len() {
        let mut j = i + 1;
        while j < xs.len() && xs[j] - xs[j - 1] <= snap {
            j += 1;
        }
        // Right of the whole group both CDFs have jumped; left of the group
        // neither has.
        let right = xs[j - 1];
        let left = xs[i];
        worst = worst.max((c1.eval(right) - c2.eval(right)).abs());
        worst = worst.max((c1.eval_left(left) - c2.eval_left(left)).abs());
        i = j;
    }
    Ok(worst)
}
