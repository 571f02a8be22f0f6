//! Depth reduction: block-diagonalization of the operator into small
//! symmetric tridiagonal matrices, one per symmetry class.
//!
//! Functions that are isotropic below an anchor form invariant subspaces; in
//! the orthonormal level-indicator basis the operator restricted to such a
//! subspace is tridiagonal with couplings `sqrt(children)` between adjacent
//! levels (scaled by the degree normalization for the random walk). The
//! isotropic class contributes one block of size `depth + 1`; the type-s
//! class one block of size `s - 1` with the anchor-count multiplicity. The
//! union of the block spectra is the full spectrum, which makes this an
//! independent route to each eigenvalue alongside the polynomial families
//! and the dense solver.

use num::BigInt;

use crate::error::{Error, Result};
use crate::oracle;
use crate::treegen::{build_tree, node_count_closed, BranchingSpec};

use super::{branching_profile, exact_multiplicity, OperatorKind};

#[derive(Debug, Clone)]
pub struct TridiagonalBlock {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub multiplicity: u64,
}

/// Tridiagonal blocks of the operator on the constant or regular-subtree
/// family at the given depth: one per type-s class plus the isotropic class.
pub fn depth_reduce(
    spec: &BranchingSpec,
    depth: usize,
    operator: OperatorKind,
) -> Result<Vec<TridiagonalBlock>> {
    if !matches!(
        spec,
        BranchingSpec::ConstantChildren { .. } | BranchingSpec::RegularSubtree { .. }
    ) {
        return Err(Error::InvalidSpec(
            "depth reduction covers constant and regular-subtree families".into(),
        ));
    }
    spec.validate_depth(depth)?;
    if depth == 0 {
        return Ok(vec![TridiagonalBlock {
            diag: vec![0.0],
            offdiag: vec![],
            multiplicity: 1,
        }]);
    }

    let profile = branching_profile(spec, depth);
    // Degree of a node at each level.
    let deg = |level: usize| -> f64 {
        if level == 0 {
            profile[0] as f64
        } else if level < depth {
            profile[level] as f64 + 1.0
        } else {
            1.0
        }
    };
    let diag_entry = |level: usize| -> f64 {
        match operator {
            OperatorKind::Adjacency | OperatorKind::RandomWalk => 0.0,
            OperatorKind::Laplacian => deg(level),
        }
    };
    let off_entry = |level: usize| -> f64 {
        let c = (profile[level] as f64).sqrt();
        match operator {
            OperatorKind::Adjacency => c,
            OperatorKind::Laplacian => -c,
            OperatorKind::RandomWalk => c / (deg(level) * deg(level + 1)).sqrt(),
        }
    };

    let mut blocks = Vec::with_capacity(depth + 1);
    // Isotropic class: levels 0 ..= depth.
    blocks.push(TridiagonalBlock {
        diag: (0..=depth).map(diag_entry).collect(),
        offdiag: (0..depth).map(off_entry).collect(),
        multiplicity: 1,
    });
    // Type-s classes: levels d+1 ..= depth below anchors at depth d.
    for s in 2..=depth + 1 {
        let d = depth + 1 - s;
        blocks.push(TridiagonalBlock {
            diag: (d + 1..=depth).map(diag_entry).collect(),
            offdiag: (d + 1..depth).map(off_entry).collect(),
            multiplicity: exact_multiplicity(s, depth, spec)?,
        });
    }

    let total: u64 = blocks
        .iter()
        .map(|b| b.diag.len() as u64 * b.multiplicity)
        .sum();
    let expected = node_count_closed(spec, depth)?;
    if total != expected {
        return Err(Error::InconsistentTotal { total, expected });
    }
    Ok(blocks)
}

/// Solves every block and returns the union of the spectra with block
/// multiplicities applied, sorted ascending.
pub fn block_union_spectrum(blocks: &[TridiagonalBlock]) -> Result<Vec<f64>> {
    let mut all = Vec::new();
    for b in blocks {
        let values = oracle::tridiagonal_eigenvalues(&b.diag, &b.offdiag)?;
        for v in values {
            for _ in 0..b.multiplicity {
                all.push(v);
            }
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(all)
}

#[derive(Debug, Clone)]
pub struct ZeroProportion {
    /// Closed-form lower bound on the zero-eigenvalue proportion: the
    /// leaf-difference eigenvectors alone give
    /// `(alpha_depth - 1) * prod_{j < depth} alpha_j` dimensions.
    pub bound: f64,
    /// Exact nullity of the adjacency matrix (rational leaf elimination).
    pub nullity: u64,
    /// Exact nullity as a proportion of the node count.
    pub proportion: f64,
    pub n_nodes: u64,
}

/// Zero-eigenvalue dominance data for increasing-branching trees. The bound
/// at depth 0 is zero (no leaves attached yet; the single node's eigenvalue
/// 0 still shows up in `nullity = 1`).
pub fn zero_proportion(spec: &BranchingSpec, depth: usize) -> Result<ZeroProportion> {
    let alphas = match spec {
        BranchingSpec::Sequence { alphas } => alphas.clone(),
        _ => {
            return Err(Error::InvalidSpec(
                "zero-proportion bounds apply to increasing branching sequences".into(),
            ))
        }
    };
    spec.validate_depth(depth)?;
    let n_nodes = node_count_closed(spec, depth)?;
    let bound = if depth == 0 {
        0.0
    } else {
        let mut dims = BigInt::from(alphas[depth - 1] - 1);
        for a in &alphas[..depth - 1] {
            dims *= BigInt::from(*a);
        }
        rational_to_f64(&dims, &BigInt::from(n_nodes))
    };
    let graph = build_tree(spec, depth)?;
    let nullity = oracle::tree_zero_nullity(&graph)?;
    Ok(ZeroProportion {
        bound,
        nullity,
        proportion: nullity as f64 / n_nodes as f64,
        n_nodes,
    })
}

fn rational_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    use num::rational::BigRational;
    use num::ToPrimitive;
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{cluster_multiset, dense_operator, sym_eigenvalues};
    use crate::spectra::assemble_spectrum;

    fn constant(k: u64) -> BranchingSpec {
        BranchingSpec::ConstantChildren { k }
    }

    #[test]
    fn star_adjacency_blocks() {
        let blocks = depth_reduce(&constant(2), 1, OperatorKind::Adjacency).unwrap();
        assert_eq!(blocks.len(), 2);
        // Isotropic 2x2 with coupling sqrt(2); type-2 block is [0] with mult 1.
        assert_eq!(blocks[0].diag, vec![0.0, 0.0]);
        assert!((blocks[0].offdiag[0] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(blocks[1].diag, vec![0.0]);
        assert_eq!(blocks[1].multiplicity, 1);
        let union = block_union_spectrum(&blocks).unwrap();
        let expected = [-(2f64.sqrt()), 0.0, 2f64.sqrt()];
        for (a, b) in union.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn star_laplacian_blocks() {
        for k in [2u64, 3, 4] {
            let blocks = depth_reduce(&constant(k), 1, OperatorKind::Laplacian).unwrap();
            let union = block_union_spectrum(&blocks).unwrap();
            // {0, 1^(k-1), k+1}
            assert!((union[0]).abs() < 1e-12);
            for v in &union[1..k as usize] {
                assert!((v - 1.0).abs() < 1e-12);
            }
            assert!((union[k as usize] - (k as f64 + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn depth_zero_single_block() {
        for op in [
            OperatorKind::Adjacency,
            OperatorKind::Laplacian,
            OperatorKind::RandomWalk,
        ] {
            let blocks = depth_reduce(&constant(2), 0, op).unwrap();
            assert_eq!(blocks.len(), 1);
            assert_eq!(blocks[0].diag, vec![0.0]);
        }
    }

    #[test]
    fn block_union_matches_assembled_and_oracle() {
        let specs = [
            constant(2),
            constant(3),
            BranchingSpec::RegularSubtree { k: 3 },
        ];
        for spec in &specs {
            for depth in 1..=4usize {
                for op in [
                    OperatorKind::Adjacency,
                    OperatorKind::Laplacian,
                    OperatorKind::RandomWalk,
                ] {
                    let blocks = depth_reduce(spec, depth, op).unwrap();
                    let union = block_union_spectrum(&blocks).unwrap();
                    let clustered = cluster_multiset(&union, 1e-6).unwrap();

                    let assembled = assemble_spectrum(spec, depth, op).unwrap();
                    let cmp = oracle::compare_spectra(&clustered, &assembled.as_clustered(), 1e-8);
                    assert!(
                        cmp.matched,
                        "{spec:?} {op:?} depth {depth}: blocks vs assembled: {cmp:?}"
                    );

                    let graph = build_tree(spec, depth).unwrap();
                    let dense = sym_eigenvalues(&dense_operator(&graph, op).unwrap()).unwrap();
                    let dense_clustered = cluster_multiset(&dense, 1e-6).unwrap();
                    let cmp = oracle::compare_spectra(&clustered, &dense_clustered, 1e-8);
                    assert!(
                        cmp.matched,
                        "{spec:?} {op:?} depth {depth}: blocks vs oracle: {cmp:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn depth_reduce_rejects_other_specs() {
        assert!(depth_reduce(
            &BranchingSpec::Periodic { alphas: vec![2, 3] },
            2,
            OperatorKind::Adjacency
        )
        .is_err());
    }

    #[test]
    fn fibonacci_zero_proportion() {
        let spec = BranchingSpec::Sequence {
            alphas: vec![2, 3, 5, 8, 13, 21],
        };
        // Depth 2: bound (3-1)*2/9 = 4/9; oracle nullity 5/9.
        let z = zero_proportion(&spec, 2).unwrap();
        assert!((z.bound - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(z.nullity, 5);
        assert_eq!(z.n_nodes, 9);
        // Depth 1: star bound 1/3, nullity exactly 1.
        let z = zero_proportion(&spec, 1).unwrap();
        assert!((z.bound - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(z.nullity, 1);
        // Depth 0: bound 0, nullity 1 (the single node).
        let z = zero_proportion(&spec, 0).unwrap();
        assert_eq!(z.bound, 0.0);
        assert_eq!(z.nullity, 1);
    }
}
