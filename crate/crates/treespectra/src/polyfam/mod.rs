//! Polynomial families defined by three-term recurrences, their
//! root-closing polynomials, and real-root extraction.
//!
//! Every rooted family in this crate fits one scheme: a sequence
//! `P_0, P_1, ...` of exact integer polynomials built leaf-up from the
//! branching profile, plus a closing rule `Q_n = qc1 * P_n - qc0 * P_{n-1}`
//! whose root at index `depth + 1` closes the eigen relation at the root of
//! the graph. The eigenvalues of the depth-`r` graph are then the roots of
//! `P_2 .. P_{r+1}` together with the roots of `Q_{r+1}`.
//!
//! The branching parameter `b` of a constant family is deliberately
//! decoupled from the display parameter `k` of the tree: the k-ary tree uses
//! `b = k`, the regular subtree uses `b = k - 1` with `qc0 = k`.

mod poly;
mod roots;

use num::bigint::BigInt;

pub use poly::{divides_exact, exact_div, poly_gcd, pseudo_div_rem, Polynomial};
pub use roots::{closed_form_roots, sturm_roots, RootFind};

use crate::error::{Error, Result};

/// Closing rule `Q_n = qc1 * P_n - qc0 * P_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRule {
    pub qc1: Polynomial,
    pub qc0: BigInt,
}

/// How members beyond the initial block are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    /// `P_n = c1 * P_{n-step} - c0 * P_{n-2*step}`; `step = 1` for the
    /// constant-coefficient families, `step = l` for period-l branching.
    Step {
        c1: Polynomial,
        c0: BigInt,
        step: usize,
    },
    /// Coefficients read off an explicit branching profile, leaves up; used
    /// for strictly-increasing branching sequences, where the family depends
    /// on the tree depth. Members exist only up to index `profile.len() + 1`.
    Layered { branching_from_root: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyConfig {
    pub recurrence: Recurrence,
    /// `P_0 ..` initial members: two for step-1 families, `2 * step` for
    /// step-l families (computed directly from the coupled layer system),
    /// two for layered families.
    pub inits: Vec<Polynomial>,
    pub q_rule: QRule,
    pub label: String,
}

/// A materialized family: `members[n]` is `P_n`, `q_members[n]` is `Q_n`
/// (`q_members[0]` is a placeholder; the rule needs `P_{n-1}`).
#[derive(Debug, Clone)]
pub struct PolyFamily {
    pub config: FamilyConfig,
    pub members: Vec<Polynomial>,
    pub q_members: Vec<Polynomial>,
}

impl PolyFamily {
    pub fn n_max(&self) -> usize {
        self.members.len() - 1
    }

    pub fn member(&self, n: usize) -> &Polynomial {
        &self.members[n]
    }

    pub fn root_poly(&self, n: usize) -> Result<&Polynomial> {
        if n == 0 || n >= self.q_members.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: self.q_members.len().saturating_sub(1),
            });
        }
        Ok(&self.q_members[n])
    }
}

/// Builds `P_0 .. P_{n_max}` and the corresponding `Q` polynomials exactly.
pub fn make_family(config: FamilyConfig, n_max: usize) -> Result<PolyFamily> {
    let mut members: Vec<Polynomial> = Vec::with_capacity(n_max + 1);
    match &config.recurrence {
        Recurrence::Step { c1, c0, step } => {
            let step = *step;
            assert!(step >= 1);
            assert_eq!(
                config.inits.len(),
                2 * step,
                "step-{step} recurrence needs {} initial members",
                2 * step
            );
            for n in 0..=n_max {
                if n < 2 * step {
                    members.push(config.inits[n].clone());
                } else {
                    let next = &(c1 * &members[n - step]) - &members[n - 2 * step].scaled(c0);
                    members.push(next);
                }
            }
        }
        Recurrence::Layered {
            branching_from_root,
        } => {
            let r = branching_from_root.len();
            if n_max > r + 1 {
                return Err(Error::IndexOutOfRange {
                    index: n_max,
                    limit: r + 1,
                });
            }
            assert_eq!(config.inits.len(), 2);
            let x = Polynomial::x();
            for n in 0..=n_max {
                let next = match n {
                    0 | 1 => config.inits[n].clone(),
                    2 => &x * &members[1],
                    // Step j = n - 1 reads the branching of depth r - j + 1.
                    _ => {
                        let c = branching_from_root[r + 2 - n];
                        &(&x * &members[n - 1]) - &members[n - 2].scaled(&BigInt::from(c))
                    }
                };
                members.push(next);
            }
        }
    }
    let mut q_members = Vec::with_capacity(members.len());
    q_members.push(Polynomial::zero());
    for n in 1..members.len() {
        q_members
            .push(&(&config.q_rule.qc1 * &members[n]) - &members[n - 1].scaled(&config.q_rule.qc0));
    }
    Ok(PolyFamily {
        config,
        members,
        q_members,
    })
}

/// The family's closing polynomial `Q_n` (a fresh copy).
pub fn make_root_poly(family: &PolyFamily, n: usize) -> Result<Polynomial> {
    family.root_poly(n).cloned()
}

/// Cyclic elementary symmetric sum with a gap condition: the sum over all
/// `i`-element index subsets of the cycle `1..l` with no two selected
/// indices adjacent mod `l`, of the product of the selected alphas.
pub fn sigma_noncons(alphas: &[u64], i: usize) -> Result<u64> {
    let l = alphas.len();
    if l > 24 {
        return Err(Error::InvalidSpec(
            "subset enumeration supports periods up to 24".into(),
        ));
    }
    if i < 1 || i > l / 2 {
        return Err(Error::IndexOutOfRange {
            index: i,
            limit: l / 2,
        });
    }
    let mut total: u64 = 0;
    for mask in 0u32..(1 << l) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let adjacent = (0..l).any(|j| {
            let next = (j + 1) % l;
            mask & (1 << j) != 0 && mask & (1 << next) != 0
        });
        if adjacent {
            continue;
        }
        let mut prod: u64 = 1;
        for (j, &a) in alphas.iter().enumerate() {
            if mask & (1 << j) != 0 {
                prod = prod.checked_mul(a).expect("sigma product overflow");
            }
        }
        total += prod;
    }
    Ok(total)
}

/// The step-l recurrence of a period-l branching vector:
/// `c1(x) = sum_{i=0}^{floor(l/2)} (-1)^i sigma(i) x^{l-2i}` (with the empty
/// product `sigma(0) = 1` supplying the leading term) and `c0 = prod alphas`.
/// The first `2l` members come from unrolling the coupled layer system.
pub fn periodic_recurrence_coeffs(alphas: &[u64]) -> Result<FamilyConfig> {
    let l = alphas.len();
    if l < 2 {
        return Err(Error::InvalidSpec(format!(
            "periodic recurrence needs a period of at least 2, got {l}"
        )));
    }
    if l > 16 {
        return Err(Error::InvalidSpec("period too long".into()));
    }
    if let Some(a) = alphas.iter().find(|a| **a < 2) {
        return Err(Error::InvalidSpec(format!(
            "periodic branching requires alpha >= 2, got {a}"
        )));
    }
    let mut c1 = Polynomial::monomial(1, l);
    for i in 1..=l / 2 {
        let sigma = BigInt::from(sigma_noncons(alphas, i)?);
        let signed = if i % 2 == 1 { -sigma } else { sigma };
        c1 = &c1 + &Polynomial::monomial(signed, l - 2 * i);
    }
    let c0: BigInt = alphas.iter().map(|&a| BigInt::from(a)).product();

    // Unroll the layer system for two full periods to seed the recurrence;
    // the phase matches complete-period trees.
    let inits = layered_members(alphas, 2 * l - 1);
    Ok(FamilyConfig {
        recurrence: Recurrence::Step { c1, c0, step: l },
        inits,
        q_rule: QRule {
            qc1: Polynomial::x(),
            qc0: BigInt::from(alphas[0]),
        },
        label: format!("adjacency periodic({alphas:?})"),
    })
}

/// `P_0 .. P_{n_max}` for a periodic profile at complete-period depths: the
/// one-step recurrence `P_{j+1} = x P_j - alphas[(1 - j) mod l] P_{j-1}`.
fn layered_members(alphas: &[u64], n_max: usize) -> Vec<Polynomial> {
    let l = alphas.len();
    let x = Polynomial::x();
    let mut members = vec![Polynomial::zero(), Polynomial::one()];
    for n in 2..=n_max {
        let next = if n == 2 {
            &x * &members[1]
        } else {
            let j = n - 1;
            let idx = (l - (j - 1) % l) % l; // (1 - j) mod l
            &(&x * &members[n - 1]) - &members[n - 2].scaled(&BigInt::from(alphas[idx]))
        };
        members.push(next);
    }
    members
}

pub mod families {
    //! Ready-made family configurations for the supported graphs and
    //! operators. "Derived" Laplacian and random-walk coefficients come from
    //! the depth-profile recurrences of the operators (the same data the
    //! tridiagonal depth reduction uses); the "as-stated" variants keep the
    //! published coefficients and exist only for the discrepancy report.

    use super::*;

    fn step1(
        c1: Polynomial,
        c0: i64,
        p0: Polynomial,
        p1: Polynomial,
        qc1: Polynomial,
        qc0: i64,
        label: String,
    ) -> FamilyConfig {
        FamilyConfig {
            recurrence: Recurrence::Step {
                c1,
                c0: BigInt::from(c0),
                step: 1,
            },
            inits: vec![p0, p1],
            q_rule: QRule {
                qc1,
                qc0: BigInt::from(qc0),
            },
            label,
        }
    }

    /// `P_n = x P_{n-1} - b P_{n-2}`, `P_0 = 0`, `P_1 = 1`, closing
    /// `Q_n = x P_n - qc0 P_{n-1}`.
    pub fn generalized_fibonacci(b: u64, qc0: u64, label: String) -> FamilyConfig {
        step1(
            Polynomial::x(),
            b as i64,
            Polynomial::zero(),
            Polynomial::one(),
            Polynomial::x(),
            qc0 as i64,
            label,
        )
    }

    /// Adjacency family of the k-ary tree: `b = k`; the closing rule
    /// collapses to `Q_n = P_{n+1}`.
    pub fn constant_adjacency(k: u64) -> FamilyConfig {
        generalized_fibonacci(k, k, format!("adjacency constant(k={k})"))
    }

    /// Adjacency family of the regular subtree: interior branching `k - 1`
    /// with the root still spreading over `k` children.
    pub fn hat_adjacency(k: u64) -> FamilyConfig {
        generalized_fibonacci(k - 1, k, format!("adjacency hat(k={k})"))
    }

    /// Adjacency family of the (k, d) fan upper-adjacency graph:
    /// `F_{n+1} = (x - (d-2)) F_n - k(d-1) F_{n-1}`,
    /// `G_n = x F_n - k(d-1) F_{n-1}`.
    pub fn fan(k: u64, d: u64) -> FamilyConfig {
        let kd = (k * (d - 1)) as i64;
        step1(
            Polynomial::from_coeffs(&[-((d as i64) - 2), 1]),
            kd,
            Polynomial::zero(),
            Polynomial::one(),
            Polynomial::x(),
            kd,
            format!("adjacency fan(k={k},d={d})"),
        )
    }

    /// Laplacian depth-profile family of the k-ary tree: leaves give
    /// `P_2 = 1 - x`, interior nodes `P_{n+1} = (k+1-x) P_n - k P_{n-1}`,
    /// the root closes with `(k - x) P_{r+1} - k P_r`.
    pub fn laplacian_derived_constant(k: u64) -> FamilyConfig {
        let k = k as i64;
        step1(
            Polynomial::from_coeffs(&[k + 1, -1]),
            k,
            Polynomial::one(),
            Polynomial::one(),
            Polynomial::from_coeffs(&[k, -1]),
            k,
            format!("laplacian constant(k={k})"),
        )
    }

    /// Laplacian depth-profile family of the regular subtree.
    pub fn laplacian_derived_hat(k: u64) -> FamilyConfig {
        let k = k as i64;
        step1(
            Polynomial::from_coeffs(&[k, -1]),
            k - 1,
            Polynomial::one(),
            Polynomial::one(),
            Polynomial::from_coeffs(&[k, -1]),
            k,
            format!("laplacian hat(k={k})"),
        )
    }

    /// Random-walk depth-profile family of the k-ary tree: leaves give
    /// `P_2 = x`, interior `P_{n+1} = (k+1) x P_n - k P_{n-1}`, root closing
    /// `x P_{r+1} - P_r`.
    pub fn random_walk_derived_constant(k: u64) -> FamilyConfig {
        let k = k as i64;
        step1(
            Polynomial::from_coeffs(&[0, k + 1]),
            k,
            Polynomial::x(),
            Polynomial::one(),
            Polynomial::x(),
            1,
            format!("random-walk constant(k={k})"),
        )
    }

    /// Random-walk depth-profile family of the regular subtree.
    pub fn random_walk_derived_hat(k: u64) -> FamilyConfig {
        let k = k as i64;
        step1(
            Polynomial::from_coeffs(&[0, k]),
            k - 1,
            Polynomial::x(),
            Polynomial::one(),
            Polynomial::x(),
            1,
            format!("random-walk hat(k={k})"),
        )
    }

    /// The published Laplacian coefficients, verbatim: recurrence
    /// `(k - x) P_n - (k-1) P_{n-1}` with `P_1 = 1`, `P_2 = 1 - x` and
    /// `Q_n = (x - k) P_n + k P_{n-1}`. Exercised only by the discrepancy
    /// report.
    pub fn laplacian_as_stated(k: u64) -> FamilyConfig {
        let k = k as i64;
        step1(
            Polynomial::from_coeffs(&[k, -1]),
            k - 1,
            // P_0 = 1 is forced by the recurrence and the stated P_1, P_2.
            Polynomial::one(),
            Polynomial::one(),
            Polynomial::from_coeffs(&[-k, 1]),
            -k,
            format!("laplacian as-stated(k={k})"),
        )
    }

    /// The published random-walk coefficients, verbatim:
    /// `P_{n+1} = (k+1)(x P_n - k P_{n-1})` with `P_1 = 1`, `P_2 = (k+1) x`
    /// and `Q_n = x P_n - P_{n-1}`. Exercised only by the discrepancy report.
    pub fn random_walk_as_stated(k: u64) -> FamilyConfig {
        let k = k as i64;
        step1(
            Polynomial::from_coeffs(&[0, k + 1]),
            (k + 1) * k,
            Polynomial::zero(),
            Polynomial::one(),
            Polynomial::x(),
            1,
            format!("random-walk as-stated(k={k})"),
        )
    }

    /// Depth-pinned adjacency family for an arbitrary branching profile
    /// (one child count per depth, root first).
    pub fn layered(branching_from_root: Vec<u64>, label: String) -> FamilyConfig {
        // An empty profile is the single-node graph; its closing rule
        // multiplies P_0 = 0, so the root branching never enters.
        let qc0 = BigInt::from(branching_from_root.first().copied().unwrap_or(0));
        FamilyConfig {
            recurrence: Recurrence::Layered {
                branching_from_root,
            },
            inits: vec![Polynomial::zero(), Polynomial::one()],
            q_rule: QRule {
                qc1: Polynomial::x(),
                qc0,
            },
            label,
        }
    }
}

/// Euler's totient via trial-division factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidSpec("totient requires n >= 1".into()));
    }
    let mut n = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

/// Number of roots of `members[n]` at distance more than `tol` from every
/// root of `members[2..n]`. For a constant family this equals `phi(n)`.
pub fn new_root_count(family: &PolyFamily, n: usize, tol: f64) -> Result<usize> {
    if n < 2 || n > family.n_max() {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: family.n_max(),
        });
    }
    let mut prior: Vec<f64> = Vec::new();
    for m in 2..n {
        prior.extend(sturm_roots(family.member(m), tol.min(1e-12))?.roots);
    }
    let roots = sturm_roots(family.member(n), tol.min(1e-12))?.roots;
    Ok(roots
        .iter()
        .filter(|r| prior.iter().all(|p| (*r - p).abs() > tol))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_family_members() {
        let fam = make_family(families::constant_adjacency(2), 5).unwrap();
        assert_eq!(fam.member(2), &Polynomial::x());
        assert_eq!(fam.member(3), &Polynomial::from_coeffs(&[-2, 0, 1]));
        assert_eq!(fam.member(4), &Polynomial::from_coeffs(&[0, -4, 0, 1]));
        // For b = k the closing rule collapses to the next member.
        assert_eq!(fam.root_poly(3).unwrap(), fam.member(4));
        // P_2 = x for every k.
        for k in 2..6 {
            let f = make_family(families::constant_adjacency(k), 2).unwrap();
            assert_eq!(f.member(2), &Polynomial::x());
        }
    }

    #[test]
    fn fan_family_members() {
        let fam = make_family(families::fan(2, 3), 3).unwrap();
        assert_eq!(fam.member(2), &Polynomial::from_coeffs(&[-1, 1]));
        // F_3 = (x-1)^2 - 4 = x^2 - 2x - 3
        assert_eq!(fam.member(3), &Polynomial::from_coeffs(&[-3, -2, 1]));
        // G_2 = x(x-1) - 4 = x^2 - x - 4
        assert_eq!(
            fam.root_poly(2).unwrap(),
            &Polynomial::from_coeffs(&[-4, -1, 1])
        );
    }

    #[test]
    fn hat_root_poly() {
        // k = 3, so b = 2: Q_2 = x*x - 3*1 = x^2 - 3.
        let fam = make_family(families::hat_adjacency(3), 3).unwrap();
        assert_eq!(
            fam.root_poly(2).unwrap(),
            &Polynomial::from_coeffs(&[-3, 0, 1])
        );
        assert_eq!(fam.root_poly(1).unwrap(), &Polynomial::x());
        // Q_3 = x(x^2-2) - 3x = x^3 - 5x
        assert_eq!(
            fam.root_poly(3).unwrap(),
            &Polynomial::from_coeffs(&[0, -5, 0, 1])
        );
    }

    #[test]
    fn root_poly_index_checked() {
        let fam = make_family(families::constant_adjacency(2), 3).unwrap();
        assert!(fam.root_poly(0).is_err());
        assert!(fam.root_poly(4).is_err());
        assert!(make_root_poly(&fam, 1).is_ok());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_noncons(&[2, 3, 2, 3], 1).unwrap(), 10);
        assert_eq!(sigma_noncons(&[2, 3, 2, 3], 2).unwrap(), 13); // {1,3}, {2,4}
        assert_eq!(sigma_noncons(&[5, 7], 1).unwrap(), 12);
        assert!(sigma_noncons(&[2, 3], 2).is_err());
    }

    #[test]
    fn periodic_coeffs_two_periodic() {
        let cfg = periodic_recurrence_coeffs(&[3, 2]).unwrap();
        match &cfg.recurrence {
            Recurrence::Step { c1, c0, step } => {
                assert_eq!(c1, &Polynomial::from_coeffs(&[-5, 0, 1])); // x^2 - (3+2)
                assert_eq!(c0, &BigInt::from(6));
                assert_eq!(*step, 2);
            }
            _ => panic!("expected step recurrence"),
        }
        // P_3 = x^2 - beta with (alpha, beta) = (3, 2).
        assert_eq!(cfg.inits[3], Polynomial::from_coeffs(&[-2, 0, 1]));
    }

    #[test]
    fn periodic_alpha_alpha_matches_constant_family_reindexed() {
        // (2,2) gives P_n = (x^2-4) P_{n-2} - 4 P_{n-4}: the same members as
        // the b = 2 constant family, as an exact polynomial identity.
        let per = make_family(periodic_recurrence_coeffs(&[2, 2]).unwrap(), 12).unwrap();
        let cons = make_family(families::constant_adjacency(2), 12).unwrap();
        for n in 0..=12 {
            assert_eq!(per.member(n), cons.member(n), "n = {n}");
        }
    }

    #[test]
    fn periodic_step_recurrence_matches_layer_unroll() {
        // The sigma-based step recurrence must agree with the directly
        // unrolled layer system.
        for alphas in [
            vec![3, 2],
            vec![2, 3],
            vec![2, 3, 4],
            vec![3, 2, 2],
            vec![2, 3, 4, 5],
        ] {
            let l = alphas.len();
            let n_max = 3 * l + 1;
            let fam = make_family(periodic_recurrence_coeffs(&alphas).unwrap(), n_max).unwrap();
            let direct = layered_members(&alphas, n_max);
            for (n, expected) in direct.iter().enumerate() {
                assert_eq!(fam.member(n), expected, "alphas {alphas:?}, n = {n}");
            }
        }
    }

    #[test]
    fn layered_family_matches_hand_unroll() {
        // Sequence (2, 3, 5) at depth 3: leaves hang from 5-child parents.
        let cfg = families::layered(vec![2, 3, 5], "seq".into());
        let fam = make_family(cfg, 4).unwrap();
        assert_eq!(fam.member(2), &Polynomial::x());
        // P_3 = x^2 - 5 (depth-2 branching)
        assert_eq!(fam.member(3), &Polynomial::from_coeffs(&[-5, 0, 1]));
        // P_4 = x P_3 - 3 P_2 = x^3 - 8x
        assert_eq!(fam.member(4), &Polynomial::from_coeffs(&[0, -8, 0, 1]));
        // Q_4 = x P_4 - 2 P_3 = x^4 - 10 x^2 + 10
        assert_eq!(
            fam.root_poly(4).unwrap(),
            &Polynomial::from_coeffs(&[10, 0, -10, 0, 1])
        );
    }

    #[test]
    fn recurrence_identity_reverified() {
        for cfg in [
            families::constant_adjacency(3),
            families::hat_adjacency(4),
            families::fan(2, 4),
            families::laplacian_derived_constant(2),
            families::random_walk_derived_hat(3),
        ] {
            let (c1, c0, step) = match &cfg.recurrence {
                Recurrence::Step { c1, c0, step } => (c1.clone(), c0.clone(), *step),
                _ => unreachable!(),
            };
            let fam = make_family(cfg, 9).unwrap();
            for n in (2 * step)..=9 {
                let rhs = &(&c1 * fam.member(n - step)) - &fam.member(n - 2 * step).scaled(&c0);
                assert_eq!(fam.member(n), &rhs, "{} n={n}", fam.config.label);
            }
        }
    }

    #[test]
    fn constant_family_degrees() {
        let fam = make_family(families::constant_adjacency(4), 10).unwrap();
        for n in 1..=10 {
            assert_eq!(fam.member(n).degree(), Some(n - 1));
        }
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(6).unwrap(), 2);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(30).unwrap(), 8);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn new_root_counts_follow_totients() {
        let fam = make_family(families::constant_adjacency(2), 8).unwrap();
        assert_eq!(new_root_count(&fam, 7, 1e-9).unwrap(), 6); // phi(7)
        assert_eq!(new_root_count(&fam, 2, 1e-9).unwrap(), 1);
        let fam3 = make_family(families::constant_adjacency(3), 4).unwrap();
        assert_eq!(new_root_count(&fam3, 4, 1e-9).unwrap(), 2); // phi(4)
    }

    #[test]
    fn closed_form_matches_sturm_for_small_cases() {
        for b in [2u64, 3, 5] {
            let fam = make_family(families::constant_adjacency(b), 9).unwrap();
            for n in 2..=9usize {
                let cf = closed_form_roots(b, n as u64);
                let sr = sturm_roots(fam.member(n), 1e-12).unwrap();
                assert!(sr.squarefree);
                assert_eq!(cf.len(), sr.roots.len());
                for (a, c) in cf.iter().zip(sr.roots.iter()) {
                    assert!((a - c).abs() < 1e-10, "b={b} n={n}: {a} vs {c}");
                }
            }
        }
    }

    #[test]
    fn root_interlacing_constant_family() {
        let fam = make_family(families::constant_adjacency(3), 12).unwrap();
        for n in 2..12usize {
            let a = sturm_roots(fam.member(n), 1e-12).unwrap().roots;
            let b = sturm_roots(fam.member(n + 1), 1e-12).unwrap().roots;
            for (i, x) in a.iter().enumerate() {
                assert!(
                    b[i] < x - 1e-10 && x + 1e-10 < b[i + 1],
                    "interlacing fails at n={n}, root {i}"
                );
            }
        }
    }

    #[test]
    fn divisibility_follows_index_divisibility() {
        let fam = make_family(families::constant_adjacency(2), 24).unwrap();
        for m in 1..=24usize {
            for n in 1..=24usize {
                let divides = divides_exact(fam.member(m), fam.member(n));
                if n % m == 0 {
                    assert!(divides, "P_{m} should divide P_{n}");
                } else {
                    // The reverse direction holds empirically over this range.
                    assert!(!divides, "P_{m} unexpectedly divides P_{n}");
                }
            }
        }
    }
}
