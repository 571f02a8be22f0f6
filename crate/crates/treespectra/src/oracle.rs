//! Brute-force ground truth: a dense symmetric eigensolver with no external
//! numerical dependencies, spectrum clustering, and spectrum comparison.
//!
//! The solver follows the classic EISPACK/JAMA route: Householder reduction
//! to tridiagonal form followed by implicit-shift QL, eigenvalues only. Both
//! stages are written against the lower triangle with contiguous row access
//! so the O(n^3) reduction stays usable up to n ~ 6000.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::spectra::OperatorKind;
use crate::treegen::TreeGraph;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone)]
pub struct DenseSymMatrix {
    pub n: usize,
    entries: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseSymMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.n + j] = v;
        self.entries[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }
}

/// Realizes A, L = D - A, or the symmetrized walk D^{-1/2} A D^{-1/2}.
pub fn dense_operator(graph: &TreeGraph, operator: OperatorKind) -> Result<DenseSymMatrix> {
    let n = graph.n_nodes;
    let mut m = DenseSymMatrix::zeros(n);
    match operator {
        OperatorKind::Adjacency => {
            for v in 0..n {
                for &u in graph.neighbors(v) {
                    m.set(v, u as usize, 1.0);
                }
            }
        }
        OperatorKind::Laplacian => {
            for v in 0..n {
                m.set(v, v, graph.degree(v) as f64);
                for &u in graph.neighbors(v) {
                    m.set(v, u as usize, -1.0);
                }
            }
        }
        OperatorKind::RandomWalk => {
            if let Some(v) = (0..n).find(|&v| graph.degree(v) == 0) {
                return Err(Error::IsolatedNode(v));
            }
            for v in 0..n {
                let dv = graph.degree(v) as f64;
                for &u in graph.neighbors(v) {
                    let du = graph.degree(u as usize) as f64;
                    m.set(v, u as usize, 1.0 / (dv * du).sqrt());
                }
            }
        }
    }
    Ok(m)
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    let n = m.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = m.entries.clone();
    let (mut d, mut e) = householder_tridiagonalize(&mut a, n);
    ql_implicit_shift(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
/// `offdiag.len()` must be `diag.len() - 1` (or both empty).
pub fn tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    assert_eq!(
        offdiag.len(),
        n - 1,
        "offdiag length must be diag length - 1"
    );
    let mut d = diag.to_vec();
    // ql_implicit_shift reads the subdiagonal from e[1..n].
    let mut e = vec![0.0; n];
    e[1..].copy_from_slice(offdiag);
    ql_implicit_shift(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Householder reduction of the symmetric matrix in `a` (row-major, n x n)
/// to tridiagonal form. Returns (diagonal, subdiagonal) with the subdiagonal
/// in e[1..n]; `a` is destroyed. Transformations are not accumulated.
///
/// The rank-2 update of each step is not applied in its own pass: it is kept
/// pending and folded into the next step's matrix-vector pass, so the lower
/// triangle is streamed once per step instead of twice. This is what keeps
/// the reduction memory traffic tolerable at n ~ 6000.
fn householder_tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut ucur = vec![0.0; n];
    let mut qcur = vec![0.0; n];
    let mut uprev = vec![0.0; n];
    let mut qprev = vec![0.0; n];
    let mut pending = false;

    for i in (1..n).rev() {
        let l = i;
        // Finalize row i (the pending update covers rows 0..=i).
        if pending {
            apply_rank2_row(&mut a[i * n..i * n + i + 1], &uprev, &qprev, i);
        }
        d[i] = a[i * n + i];

        // Generate the Householder vector from row i, in place.
        let u = &mut a[i * n..i * n + l];
        let mut scale = 0.0;
        if l > 1 {
            scale = u.iter().map(|x| x.abs()).sum::<f64>();
        }
        if scale == 0.0 || l == 1 {
            e[i] = u[l - 1];
            if pending {
                for j in 0..l {
                    apply_rank2_row(&mut a[j * n..j * n + j + 1], &uprev, &qprev, j);
                }
                pending = false;
            }
            continue;
        }
        let mut h = 0.0;
        for x in u.iter_mut() {
            *x /= scale;
            h += *x * *x;
        }
        let f = u[l - 1];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        u[l - 1] = f - g;
        ucur[..l].copy_from_slice(u);
        let u = &ucur[..l];

        // One pass over the lower triangle: flush the pending rank-2 update
        // of the previous step, then accumulate p = A u from the hot row.
        p[..l].fill(0.0);
        for j in 0..l {
            let row = &mut a[j * n..j * n + j + 1];
            if pending {
                apply_rank2_row(row, &uprev, &qprev, j);
            }
            let uj = u[j];
            let mut s = 0.0;
            for (rv, uv) in row.iter().zip(u[..=j].iter()) {
                s += rv * uv;
            }
            p[j] += s;
            for (pk, rv) in p[..j].iter_mut().zip(row[..j].iter()) {
                *pk += rv * uj;
            }
        }
        for x in p[..l].iter_mut() {
            *x /= h;
        }
        let mut kk = 0.0;
        for (pv, uv) in p[..l].iter().zip(u.iter()) {
            kk += pv * uv;
        }
        kk /= 2.0 * h;
        // q = p - K u; the update A -= u q^T + q u^T stays pending.
        for ((qv, pv), uv) in qcur[..l].iter_mut().zip(p[..l].iter()).zip(u.iter()) {
            *qv = pv - kk * uv;
        }
        std::mem::swap(&mut uprev, &mut ucur);
        std::mem::swap(&mut qprev, &mut qcur);
        pending = true;
    }
    if pending {
        a[0] -= 2.0 * uprev[0] * qprev[0];
    }
    d[0] = a[0];
    e[0] = 0.0;
    (d, e)
}

/// row[0..=j] -= u[j] * q[0..=j] + q[j] * u[0..=j]
#[inline]
fn apply_rank2_row(row: &mut [f64], u: &[f64], q: &[f64], j: usize) {
    let uj = u[j];
    let qj = q[j];
    for ((rv, qk), uk) in row.iter_mut().zip(q[..=j].iter()).zip(u[..=j].iter()) {
        *rv -= uj * *qk + qj * *uk;
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. On input the
/// subdiagonal sits in e[1..n]; on output d holds the eigenvalues (unsorted).
fn ql_implicit_shift(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::IterationFailure(l));
                }
                let g = d[l];
                let mut pp = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = pp.hypot(1.0);
                if pp < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (pp + r);
                d[l + 1] = e[l] * (pp + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                pp = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let gg = c * e[i];
                    h = c * pp;
                    r = pp.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = pp / r;
                    pp = c * d[i] - s * gg;
                    d[i + 1] = h + s * (c * gg + s * d[i]);
                }
                pp = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * pp;
                d[l] = c * pp;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Greedy clustering of a sorted value list: consecutive values within `tol`
/// merge, the cluster value is the mean. Errors if two resulting cluster
/// means sit closer than `10 * tol` (the clustering would be ambiguous).
pub fn cluster_multiset(values: &[f64], tol: f64) -> Result<Vec<(f64, u64)>> {
    let mut clusters: Vec<(f64, u64)> = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i + 1;
        let mut sum = values[i];
        while j < values.len() && values[j] - values[j - 1] <= tol {
            sum += values[j];
            j += 1;
        }
        clusters.push((sum / (j - i) as f64, (j - i) as u64));
        i = j;
    }
    for w in clusters.windows(2) {
        let gap = w[1].0 - w[0].0;
        if gap <= 10.0 * tol {
            return Err(Error::AmbiguousClustering {
                gap,
                required: 10.0 * tol,
            });
        }
    }
    Ok(clusters)
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub matched: bool,
    pub worst_value_gap: f64,
    /// (value, multiplicity in a, multiplicity in b)
    pub mult_mismatches: Vec<(f64, u64, u64)>,
    pub length_mismatch: Option<(usize, usize)>,
}

/// Pairs two clustered spectra index by index.
pub fn compare_spectra(a: &[(f64, u64)], b: &[(f64, u64)], tol: f64) -> CompareReport {
    let mut report = CompareReport {
        matched: true,
        worst_value_gap: 0.0,
        mult_mismatches: Vec::new(),
        length_mismatch: None,
    };
    if a.len() != b.len() {
        report.matched = false;
        report.length_mismatch = Some((a.len(), b.len()));
    }
    for (&(va, ma), &(vb, mb)) in a.iter().zip(b.iter()) {
        let gap = (va - vb).abs();
        report.worst_value_gap = report.worst_value_gap.max(gap);
        if gap > tol {
            report.matched = false;
        }
        if ma != mb {
            report.matched = false;
            report.mult_mismatches.push((va, ma, mb));
        }
    }
    report
}

/// Number of eigenvalues of `m` within `tol` of `lambda`. Errors when some
/// eigenvalue lands in the ambiguous band (tol, 2*tol] around `lambda`.
pub fn eigenspace_dim(m: &DenseSymMatrix, lambda: f64, tol: f64) -> Result<u64> {
    let values = sym_eigenvalues(m)?;
    eigenspace_dim_of_values(&values, lambda, tol)
}

/// Same as [`eigenspace_dim`] but against precomputed eigenvalues.
pub fn eigenspace_dim_of_values(values: &[f64], lambda: f64, tol: f64) -> Result<u64> {
    let mut count = 0u64;
    for &v in values {
        let gap = (v - lambda).abs();
        if gap <= tol {
            count += 1;
        } else if gap <= 2.0 * tol {
            return Err(Error::AmbiguousClustering {
                gap,
                required: 2.0 * tol,
            });
        }
    }
    Ok(count)
}

/// Exact nullity of the adjacency matrix of a tree, by rational
/// leaf-elimination diagonalization (children are folded into their parent;
/// a zero pivot among the children flips one (parent, child) pair into a
/// (+, -) block and detaches the parent from its own parent). The signs of
/// the resulting diagonal give the inertia, so the zero count is the nullity.
///
/// Runs in O(n) rational operations, which is what makes nullity available
/// far beyond the dense solver's practical size limit.
pub fn tree_zero_nullity(graph: &TreeGraph) -> Result<u64> {
    if graph.is_fan() {
        return Err(Error::InvalidSpec(
            "tree nullity requires a tree kind, not a fan".into(),
        ));
    }
    let n = graph.n_nodes;
    let mut d: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut detached = vec![false; n];
    for v in (0..n).rev() {
        let children = graph.children(v);
        if children.is_empty() {
            continue;
        }
        let zero_child = children.clone().find(|&c| !detached[c] && d[c].is_zero());
        if let Some(c) = zero_child {
            d[c] = BigRational::from_integer(BigInt::from(2));
            d[v] = -BigRational::new(BigInt::one(), BigInt::from(2));
            detached[v] = true;
        } else {
            let mut s = BigRational::zero();
            for c in children {
                if !detached[c] {
                    s += d[c].recip();
                }
            }
            d[v] = -s;
        }
    }
    Ok(d.iter().filter(|x| x.is_zero()).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treegen::{build_tree, BranchingSpec};

    fn star(k: u64) -> TreeGraph {
        build_tree(&BranchingSpec::ConstantChildren { k }, 1).unwrap()
    }

    #[test]
    fn k12_adjacency_matrix_and_eigenvalues() {
        let g = star(2);
        let m = dense_operator(&g, OperatorKind::Adjacency).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(0, 2), 1.0);
        assert_eq!(m.get(1, 2), 0.0);
        assert_eq!(m.get(0, 0), 0.0);
        let ev = sym_eigenvalues(&m).unwrap();
        let expected = [-(2.0f64).sqrt(), 0.0, (2.0f64).sqrt()];
        for (a, b) in ev.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn k12_laplacian_matrix() {
        let g = star(2);
        let m = dense_operator(&g, OperatorKind::Laplacian).unwrap();
        assert_eq!(m.get(0, 0), 2.0);
        assert_eq!(m.get(1, 1), 1.0);
        assert_eq!(m.get(0, 1), -1.0);
    }

    #[test]
    fn single_node_operators() {
        let g = build_tree(&BranchingSpec::ConstantChildren { k: 2 }, 0).unwrap();
        for op in [OperatorKind::Adjacency, OperatorKind::Laplacian] {
            let m = dense_operator(&g, op).unwrap();
            assert_eq!(m.n, 1);
            assert_eq!(m.get(0, 0), 0.0);
            assert_eq!(sym_eigenvalues(&m).unwrap(), vec![0.0]);
        }
        assert!(matches!(
            dense_operator(&g, OperatorKind::RandomWalk),
            Err(Error::IsolatedNode(0))
        ));
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let mut m = DenseSymMatrix::zeros(2);
        m.set(0, 0, 3.5);
        m.set(1, 1, -1.25);
        assert_eq!(sym_eigenvalues(&m).unwrap(), vec![-1.25, 3.5]);
    }

    #[test]
    fn star_laplacian_spectrum() {
        let g = star(3);
        let m = dense_operator(&g, OperatorKind::Laplacian).unwrap();
        let ev = sym_eigenvalues(&m).unwrap();
        let expected = [0.0, 1.0, 1.0, 4.0];
        for (a, b) in ev.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn eigenvalue_sums_match_trace_and_frobenius() {
        let g = build_tree(&BranchingSpec::ConstantChildren { k: 3 }, 3).unwrap();
        for op in [
            OperatorKind::Adjacency,
            OperatorKind::Laplacian,
            OperatorKind::RandomWalk,
        ] {
            let m = dense_operator(&g, op).unwrap();
            let ev = sym_eigenvalues(&m).unwrap();
            let sum: f64 = ev.iter().sum();
            let sq: f64 = ev.iter().map(|x| x * x).sum();
            assert!((sum - m.trace()).abs() < 1e-8, "{op:?}: {sum}");
            assert!((sq - m.frobenius_norm_sq()).abs() < 1e-8, "{op:?}: {sq}");
        }
    }

    #[test]
    fn walk_spectrum_in_unit_interval() {
        let g = build_tree(&BranchingSpec::RegularSubtree { k: 3 }, 3).unwrap();
        let m = dense_operator(&g, OperatorKind::RandomWalk).unwrap();
        let ev = sym_eigenvalues(&m).unwrap();
        assert!(ev.iter().all(|v| (-1.0 - 1e-10..=1.0 + 1e-10).contains(v)));
    }

    #[test]
    fn bipartite_adjacency_symmetric_about_zero() {
        let g = build_tree(&BranchingSpec::ConstantChildren { k: 2 }, 4).unwrap();
        let m = dense_operator(&g, OperatorKind::Adjacency).unwrap();
        let ev = sym_eigenvalues(&m).unwrap();
        for i in 0..ev.len() {
            assert!((ev[i] + ev[ev.len() - 1 - i]).abs() < 1e-9);
        }
    }

    #[test]
    #[allow(clippy::approx_constant)] // near-sqrt(2) pairs are cluster-test data
    fn clustering_examples() {
        let clustered = cluster_multiset(&[-2.0, -1.4142135, -1.4142136, 0.0], 1e-6).err();
        // The -1.41... pair is within 1e-6 of itself: it merges; means are
        // separated by ~1.4, fine.
        assert!(clustered.is_none());
        let clustered = cluster_multiset(&[-2.0, -1.4142136, -1.4142135, 0.0], 1e-6).unwrap();
        assert_eq!(clustered.len(), 3);
        assert_eq!(clustered[1].1, 2);
        assert!((clustered[1].0 + 1.41421355).abs() < 1e-7);
        assert!(cluster_multiset(&[], 1e-6).unwrap().is_empty());
    }

    #[test]
    fn clustering_gap_guard_fires() {
        let err = cluster_multiset(&[0.0, 5e-6], 1e-6).unwrap_err();
        assert!(matches!(err, Error::AmbiguousClustering { .. }));
    }

    #[test]
    fn x22_oracle_spectrum_clusters() {
        let g = build_tree(&BranchingSpec::ConstantChildren { k: 2 }, 2).unwrap();
        let m = dense_operator(&g, OperatorKind::Adjacency).unwrap();
        let ev = sym_eigenvalues(&m).unwrap();
        let clustered = cluster_multiset(&ev, 1e-6).unwrap();
        let mults: Vec<u64> = clustered.iter().map(|c| c.1).collect();
        assert_eq!(mults, vec![1, 1, 3, 1, 1]);
    }

    #[test]
    fn compare_reports_mismatches() {
        let a = [(0.0, 3u64)];
        let b = [(0.0, 2u64)];
        let r = compare_spectra(&a, &b, 1e-8);
        assert!(!r.matched);
        assert_eq!(r.mult_mismatches, vec![(0.0, 3, 2)]);
        let r = compare_spectra(&a, &a, 1e-8);
        assert!(r.matched);
    }

    #[test]
    fn eigenspace_dim_examples() {
        let g = build_tree(&BranchingSpec::ConstantChildren { k: 2 }, 2).unwrap();
        let m = dense_operator(&g, OperatorKind::Adjacency).unwrap();
        assert_eq!(eigenspace_dim(&m, 0.0, 1e-8).unwrap(), 3);
        let single = build_tree(&BranchingSpec::ConstantChildren { k: 2 }, 0).unwrap();
        let m1 = dense_operator(&single, OperatorKind::Adjacency).unwrap();
        assert_eq!(eigenspace_dim(&m1, 0.0, 1e-8).unwrap(), 1);
    }

    #[test]
    fn tree_nullity_matches_dense_solver() {
        let specs = [
            BranchingSpec::ConstantChildren { k: 2 },
            BranchingSpec::ConstantChildren { k: 3 },
            BranchingSpec::RegularSubtree { k: 3 },
            BranchingSpec::Sequence {
                alphas: vec![2, 3, 5, 8],
            },
        ];
        for spec in &specs {
            for depth in 0..=4usize {
                if spec.validate_depth(depth).is_err() {
                    continue;
                }
                let g = build_tree(spec, depth).unwrap();
                let exact = tree_zero_nullity(&g).unwrap();
                let m = dense_operator(&g, OperatorKind::Adjacency).unwrap();
                let dense = eigenspace_dim(&m, 0.0, 1e-8).unwrap();
                assert_eq!(exact, dense, "{spec:?} depth {depth}");
            }
        }
    }

    #[test]
    fn disconnected_blocks_solve() {
        // A path on {0,1,2} plus an edge {3,4}: the reduction hits all-zero
        // rows mid-stream, which exercises the pending-update flush path.
        let mut m = DenseSymMatrix::zeros(5);
        m.set(0, 1, 1.0);
        m.set(1, 2, 1.0);
        m.set(3, 4, 1.0);
        let ev = sym_eigenvalues(&m).unwrap();
        let s2 = 2f64.sqrt();
        let expected = [-s2, -1.0, 0.0, 1.0, s2];
        for (a, b) in ev.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn path_graph_eigenvalues_to_machine_precision() {
        // Path on 200 nodes: eigenvalues 2 cos(j pi / 201) in closed form.
        let n = 200usize;
        let mut m = DenseSymMatrix::zeros(n);
        for i in 0..n - 1 {
            m.set(i, i + 1, 1.0);
        }
        let ev = sym_eigenvalues(&m).unwrap();
        for (i, v) in ev.iter().enumerate() {
            let j = n - i; // ascending eigenvalues come from descending j
            let expected = 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((v - expected).abs() < 1e-12, "index {i}: {v} vs {expected}");
        }
    }

    #[test]
    #[ignore = "timing probe for the largest acceptance instance"]
    fn large_solve_timing() {
        let g = build_tree(&BranchingSpec::ConstantChildren { k: 4 }, 6).unwrap();
        assert_eq!(g.n_nodes, 5461);
        let m = dense_operator(&g, OperatorKind::Adjacency).unwrap();
        let t0 = std::time::Instant::now();
        let ev = sym_eigenvalues(&m).unwrap();
        println!("n=5461 solve: {:.2?}", t0.elapsed());
        let sum: f64 = ev.iter().sum();
        assert!(sum.abs() < 1e-6);
    }
}
