//! Real-root extraction for the spectral polynomial families.
//!
//! Roots are isolated by Sturm-sequence sign counts with exact rational
//! arithmetic (an f64 evaluation with a running error bound filters out the
//! easy sign decisions), bisected to the requested tolerance, and polished
//! with a few Newton steps. The family polynomials are squarefree, which is
//! checked via gcd(p, p') rather than assumed.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use super::poly::{exact_div, poly_gcd, pseudo_div_rem, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RootFind {
    /// All distinct real roots, ascending.
    pub roots: Vec<f64>,
    /// False when the input had repeated roots and the squarefree part was
    /// used instead.
    pub squarefree: bool,
}

/// All real roots of `p`, each accurate to about `tol`, one entry per
/// distinct root. Errors if the root count does not match the degree of the
/// squarefree part (the spectral families here have all-real roots, so a
/// mismatch signals a bug).
pub fn sturm_roots(p: &Polynomial, tol: f64) -> Result<RootFind> {
    if p.is_zero() {
        return Err(Error::InvalidSpec(
            "cannot extract roots of the zero polynomial".into(),
        ));
    }
    if p.degree() == Some(0) {
        return Ok(RootFind {
            roots: Vec::new(),
            squarefree: true,
        });
    }
    let g = poly_gcd(p, &p.derivative());
    let squarefree = g.degree() == Some(0);
    let sf = if squarefree {
        p.primitive_part()
    } else {
        exact_div(p, &g).expect("gcd divides p").primitive_part()
    };
    let deg = sf.degree().unwrap();
    if deg == 0 {
        return Ok(RootFind {
            roots: Vec::new(),
            squarefree,
        });
    }

    let chain = sturm_chain(&sf);
    let bound = cauchy_bound(&sf);
    let lo = -bound.clone();
    let hi = bound;
    let vlo = sign_variations(&chain, &lo);
    let vhi = sign_variations(&chain, &hi);

    let mut intervals = Vec::new();
    isolate(&chain, &sf, lo, hi, vlo, vhi, &mut intervals);
    if intervals.len() != deg {
        return Err(Error::RootCountMismatch {
            found: intervals.len(),
            expected: deg,
        });
    }

    let tol_rat = BigRational::from_float(tol.max(1e-14)).unwrap();
    let mut roots: Vec<f64> = intervals
        .into_iter()
        .map(|iv| refine(&sf, iv, &tol_rat, tol))
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(RootFind { roots, squarefree })
}

/// The closed root set of the constant-branching family member `P_n` with
/// parameter `b`: `{ 2 sqrt(b) cos(l pi / n) : l = 1 .. n-1 }`, ascending.
/// (`l = n` would give `-2 sqrt(b)`, one more value than the degree allows;
/// the report module records that discrepancy.)
pub fn closed_form_roots(b: u64, n: u64) -> Vec<f64> {
    let scale = 2.0 * (b as f64).sqrt();
    (1..n)
        .rev()
        .map(|l| scale * (l as f64 * std::f64::consts::PI / n as f64).cos())
        .collect()
}

fn sturm_chain(sf: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![sf.clone(), sf.derivative().primitive_part()];
    loop {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        if b.is_zero() {
            chain.pop();
            break;
        }
        let (_, r, mult) = pseudo_div_rem(a, b);
        // Keep the generalized-Sturm sign structure: the next element must be
        // a positive multiple of -(a mod b).
        let next = if mult.is_negative() { r } else { -r };
        if next.is_zero() {
            break;
        }
        chain.push(next.primitive_part());
    }
    chain
}

/// 1 + max |c_i| / |c_deg|, rounded up to an integer: every real root lies
/// strictly inside (-bound, bound).
fn cauchy_bound(p: &Polynomial) -> BigRational {
    let lead = p.leading().unwrap().abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let q = (max + &lead - BigInt::one()) / &lead; // ceil(max/lead)
    BigRational::from_integer(q + BigInt::one())
}

/// Sign of p(x), deciding in f64 when the error bound allows and falling
/// back to exact integer arithmetic otherwise.
fn sign_at(p: &Polynomial, x: &BigRational) -> i8 {
    if p.is_zero() {
        return 0;
    }
    if let Some(xf) = x.to_f64() {
        if xf.is_finite() {
            let mut val = 0.0f64;
            let mut mag = 0.0f64;
            for c in p.coeffs().iter().rev() {
                let cf = c.to_f64().unwrap_or(f64::NAN);
                val = val * xf + cf;
                mag = mag * xf.abs() + cf.abs();
            }
            let err = mag * (4.0 * p.coeffs().len() as f64) * f64::EPSILON;
            if val.is_finite() && val.abs() > err {
                return if val > 0.0 { 1 } else { -1 };
            }
        }
    }
    // Exact: sign of p(n/d) * d^deg, all integer.
    let n = x.numer();
    let d = x.denom();
    let mut acc = p.leading().unwrap().clone();
    let mut dpow = BigInt::one();
    for c in p.coeffs().iter().rev().skip(1) {
        dpow *= d;
        acc = acc * n + c * &dpow;
    }
    match acc.sign() {
        num::bigint::Sign::Plus => 1,
        num::bigint::Sign::Minus => -1,
        num::bigint::Sign::NoSign => 0,
    }
}

fn sign_variations(chain: &[Polynomial], x: &BigRational) -> usize {
    let mut count = 0;
    let mut prev: i8 = 0;
    for p in chain {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Splits (lo, hi] until each piece holds exactly one root. Split points are
/// always chosen off the root set so the variation counts stay clean.
fn isolate(
    chain: &[Polynomial],
    sf: &Polynomial,
    lo: BigRational,
    hi: BigRational,
    vlo: usize,
    vhi: usize,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    let count = vlo - vhi;
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((lo, hi));
        return;
    }
    let split = non_root_split(sf, &lo, &hi);
    let vsplit = sign_variations(chain, &split);
    isolate(chain, sf, lo, split.clone(), vlo, vsplit, out);
    isolate(chain, sf, split, hi, vsplit, vhi, out);
}

/// A point strictly inside (lo, hi), not a root of `sf`: the midpoint, or a
/// nearby dyadic fallback when the midpoint happens to be a root.
fn non_root_split(sf: &Polynomial, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mid = (lo + hi) / &two;
    if sign_at(sf, &mid) != 0 {
        return mid;
    }
    let mut offset = (hi - lo) / BigRational::from_integer(BigInt::from(8));
    loop {
        for candidate in [&mid + &offset, &mid - &offset] {
            if sign_at(sf, &candidate) != 0 {
                return candidate;
            }
        }
        offset /= &two;
    }
}

/// Bisects the isolating interval to `tol_rat`, then polishes with Newton.
fn refine(
    sf: &Polynomial,
    (mut lo, mut hi): (BigRational, BigRational),
    tol_rat: &BigRational,
    tol: f64,
) -> f64 {
    let two = BigRational::from_integer(BigInt::from(2));
    let slo = sign_at(sf, &lo);
    debug_assert_ne!(slo, 0);
    while &hi - &lo > *tol_rat {
        let mid = (&lo + &hi) / &two;
        let s = sign_at(sf, &mid);
        if s == 0 {
            return mid.to_f64().unwrap();
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lof = lo.to_f64().unwrap();
    let hif = hi.to_f64().unwrap();
    let mut x = 0.5 * (lof + hif);
    let deriv = sf.derivative();
    for _ in 0..3 {
        let fx = sf.eval_f64(x);
        let dfx = deriv.eval_f64(x);
        if dfx == 0.0 || !fx.is_finite() || !dfx.is_finite() {
            break;
        }
        let next = x - fx / dfx;
        if !next.is_finite() || (next - x).abs() > 4.0 * (hif - lof + tol) {
            break;
        }
        x = next;
    }
    x
}
