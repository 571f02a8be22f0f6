//! Full spectra with exact multiplicities, explicit eigenvector
//! certificates, and the tridiagonal depth reduction.
//!
//! For every tree kind the assembly is the same picture: eigenvalues are the
//! roots of the family members `P_2 .. P_{r+1}`, where a root of `P_s` owns
//! one eigenspace per anchor node at depth `r + 1 - s` (dimension
//! "children - 1" from the zero-sum coefficient choices), plus the roots of
//! the closing polynomial `Q_{r+1}`, each carrying the one isotropic
//! eigenvector. Values recur across members; the assembly merges them and
//! tracks the first index where each value appears.

mod eigvec;
mod reduce;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle;
use crate::polyfam::{self, families, sturm_roots, PolyFamily};
use crate::treegen::{build_fan_graph, node_count_closed, BranchingSpec};

pub use eigvec::{
    certify_all, extend_to_ball, isotropic_eigenvector, typed_eigenbasis, verify_eigenpair,
    verify_eigenpair_interior, CertificationSummary, Construction, EigvecCertificate,
};
pub use reduce::{
    block_union_spectrum, depth_reduce, zero_proportion, TridiagonalBlock, ZeroProportion,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Adjacency,
    Laplacian,
    RandomWalk,
}

impl OperatorKind {
    pub fn label(&self) -> &'static str {
        match self {
            OperatorKind::Adjacency => "adjacency",
            OperatorKind::Laplacian => "laplacian",
            OperatorKind::RandomWalk => "random-walk",
        }
    }
}

/// Where a spectrum entry came from: which family, which member index, and
/// the first index at which the value appears.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySource {
    pub family_label: String,
    pub poly_index: usize,
    pub first_index: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: u64,
    pub source: EntrySource,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub entries: Vec<SpectrumEntry>,
    pub total_dim: u64,
    pub spec: BranchingSpec,
    pub depth: usize,
    pub operator: OperatorKind,
}

impl SpectrumReport {
    /// (value, multiplicity) pairs, ascending: the shape the oracle's
    /// clustered spectra use.
    pub fn as_clustered(&self) -> Vec<(f64, u64)> {
        self.entries
            .iter()
            .map(|e| (e.value, e.multiplicity))
            .collect()
    }

    pub fn entry_for(&self, value: f64, tol: f64) -> Option<&SpectrumEntry> {
        self.entries
            .iter()
            .min_by(|a, b| {
                (a.value - value)
                    .abs()
                    .partial_cmp(&(b.value - value).abs())
                    .unwrap()
            })
            .filter(|e| (e.value - value).abs() <= tol)
    }

    /// Documented JSON schema:
    /// `{"spec": .., "depth": r, "operator": .., "entries": [{"value", "mult", "first_index"}, ..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "depth": self.depth,
            "operator": self.operator,
            "total_dim": self.total_dim,
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "value": e.value,
                "mult": e.multiplicity,
                "first_index": e.source.first_index,
            })).collect::<Vec<_>>(),
        })
    }

    /// CSV columns: value, mult, first_index. Floats carry 17 significant
    /// digits so the text round-trips to the same f64.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,mult,first_index\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{:.16e},{},{}\n",
                e.value, e.multiplicity, e.source.first_index
            ));
        }
        out
    }
}

/// Children counts per depth `0 .. depth-1`.
pub fn branching_profile(spec: &BranchingSpec, depth: usize) -> Vec<u64> {
    (0..depth).map(|m| spec.branching_at(m)).collect()
}

/// New-appearance eigenspace dimension for roots of the index-`s` family
/// member on the depth-`r` graph: anchors at depth `d = r + 1 - s`, times
/// the zero-sum degrees of freedom over each anchor's children. For the
/// k-ary tree this is `(k-1) k^{r+1-s}`; the index `s = r + 2` addresses the
/// isotropic closing class (dimension 1).
pub fn exact_multiplicity(s: usize, depth: usize, spec: &BranchingSpec) -> Result<u64> {
    spec.validate()?;
    if !spec.is_tree_kind() {
        return Err(Error::InvalidSpec(
            "typed multiplicities are defined for tree kinds only".into(),
        ));
    }
    if s == depth + 2 {
        if matches!(spec, BranchingSpec::ConstantChildren { .. }) {
            return Ok(1);
        }
        return Err(Error::IndexOutOfRange {
            index: s,
            limit: depth + 1,
        });
    }
    if s < 2 || s > depth + 1 {
        return Err(Error::IndexOutOfRange {
            index: s,
            limit: depth + 1,
        });
    }
    let d = depth + 1 - s;
    let profile = branching_profile(spec, depth);
    let anchors: u64 = profile[..d].iter().product();
    Ok(anchors * (profile[d] - 1))
}

/// Total multiplicity at depth `r` of a value first appearing as a root of
/// the index-`m` member: the value recurs exactly at the multiples of `m`
/// (divisibility of the constant families), so the per-index dimensions are
/// summed over `j*m` up to `r+2` (constant; the closing is `P_{r+2}`) or
/// `r+1` (regular subtree; closing roots are value-matched separately).
pub fn cumulative_multiplicity(m: usize, depth: usize, spec: &BranchingSpec) -> Result<u64> {
    if m < 2 {
        return Err(Error::IndexOutOfRange { index: m, limit: 2 });
    }
    let top = match spec {
        BranchingSpec::ConstantChildren { .. } => depth + 2,
        BranchingSpec::RegularSubtree { .. } => depth + 1,
        _ => {
            return Err(Error::InvalidSpec(
                "cumulative multiplicity by divisibility applies to constant and hat trees".into(),
            ))
        }
    };
    let mut total = 0u64;
    let mut idx = m;
    while idx <= top {
        total += exact_multiplicity(idx, depth, spec)?;
        idx += m;
    }
    Ok(total)
}

/// The polynomial family whose roots are the operator's eigenvalues on this
/// graph. Laplacian and random-walk coefficients are the depth-profile
/// recurrences (see [`depth_reduce`]); adjacency covers every family.
pub fn derived_family(
    spec: &BranchingSpec,
    depth: usize,
    operator: OperatorKind,
) -> Result<PolyFamily> {
    spec.validate_depth(depth)?;
    let unsupported = || Error::UnsupportedOperator {
        family: spec.family_label(),
        operator,
    };
    let config = match (spec, operator) {
        (BranchingSpec::ConstantChildren { k }, OperatorKind::Adjacency) => {
            families::constant_adjacency(*k)
        }
        (BranchingSpec::ConstantChildren { k }, OperatorKind::Laplacian) => {
            families::laplacian_derived_constant(*k)
        }
        (BranchingSpec::ConstantChildren { k }, OperatorKind::RandomWalk) => {
            families::random_walk_derived_constant(*k)
        }
        (BranchingSpec::RegularSubtree { k }, OperatorKind::Adjacency) => {
            families::hat_adjacency(*k)
        }
        (BranchingSpec::RegularSubtree { k }, OperatorKind::Laplacian) => {
            families::laplacian_derived_hat(*k)
        }
        (BranchingSpec::RegularSubtree { k }, OperatorKind::RandomWalk) => {
            families::random_walk_derived_hat(*k)
        }
        (BranchingSpec::Periodic { alphas }, OperatorKind::Adjacency) => {
            if alphas.len() >= 2 {
                polyfam::periodic_recurrence_coeffs(alphas)?
            } else {
                families::constant_adjacency(alphas[0])
            }
        }
        (BranchingSpec::Sequence { alphas }, OperatorKind::Adjacency) => families::layered(
            alphas[..depth].to_vec(),
            format!("adjacency sequence({:?})", &alphas[..depth]),
        ),
        (BranchingSpec::Fan { k, d }, OperatorKind::Adjacency) => families::fan(*k, *d),
        _ => return Err(unsupported()),
    };
    polyfam::make_family(config, depth + 1)
}

/// Root-finding tolerance used throughout the assembly.
const ROOT_TOL: f64 = 1e-13;
/// Residual contract for every certificate.
pub const CERT_TOL: f64 = 1e-9;

/// Assembles the full spectrum of the operator on the depth-`r` graph of the
/// family, with exact multiplicities and per-value provenance.
///
/// Tree kinds go through the polynomial families; fans report the certified
/// closing-root direction and take the remaining eigenvalues from the dense
/// oracle (only one direction of the fan spectrum has a closed form).
pub fn assemble_spectrum(
    spec: &BranchingSpec,
    depth: usize,
    operator: OperatorKind,
) -> Result<SpectrumReport> {
    spec.validate_depth(depth)?;
    if let BranchingSpec::Fan { k, d } = spec {
        if operator != OperatorKind::Adjacency {
            return Err(Error::UnsupportedOperator {
                family: spec.family_label(),
                operator,
            });
        }
        return assemble_fan_spectrum(*k, *d, depth);
    }
    if operator != OperatorKind::Adjacency
        && !matches!(
            spec,
            BranchingSpec::ConstantChildren { .. } | BranchingSpec::RegularSubtree { .. }
        )
    {
        return Err(Error::UnsupportedOperator {
            family: spec.family_label(),
            operator,
        });
    }
    if operator == OperatorKind::RandomWalk && depth == 0 {
        return Err(Error::IsolatedNode(0));
    }

    let family = derived_family(spec, depth, operator)?;
    let node_count = node_count_closed(spec, depth)?;
    let label = family.config.label.clone();

    // (value, multiplicity, poly index) contributions before merging.
    let mut contributions: Vec<(f64, u64, usize)> = Vec::new();
    for s in 2..=depth + 1 {
        let mult = exact_multiplicity(s, depth, spec)?;
        for root in sturm_roots(family.member(s), ROOT_TOL)?.roots {
            contributions.push((root, mult, s));
        }
    }
    let closing_index = match (spec, operator) {
        // For the k-ary tree the closing rule collapses to P_{r+2}; report
        // it under its member index so first-index bookkeeping follows the
        // divisibility structure.
        (BranchingSpec::ConstantChildren { .. }, OperatorKind::Adjacency) => depth + 2,
        _ => depth + 1,
    };
    for root in sturm_roots(family.root_poly(depth + 1)?, ROOT_TOL)?.roots {
        contributions.push((root, 1, closing_index));
    }

    let entries = merge_contributions(contributions, &label)?;
    let total: u64 = entries.iter().map(|e| e.multiplicity).sum();
    if total != node_count {
        return Err(Error::InconsistentTotal {
            total,
            expected: node_count,
        });
    }
    Ok(SpectrumReport {
        entries,
        total_dim: node_count,
        spec: spec.clone(),
        depth,
        operator,
    })
}

/// Values recur across family members within root-finding noise; merge
/// contributions closer than `1e-9 * scale` and guard the gaps between the
/// survivors.
fn merge_contributions(
    mut contributions: Vec<(f64, u64, usize)>,
    label: &str,
) -> Result<Vec<SpectrumEntry>> {
    contributions.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.2.cmp(&b.2)));
    let scale = contributions
        .iter()
        .map(|c| c.0.abs())
        .fold(1.0f64, f64::max);
    let tol = 1e-9 * scale;

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut i = 0;
    while i < contributions.len() {
        let mut j = i;
        let mut mult = 0u64;
        let mut first = usize::MAX;
        let mut value = contributions[i].0;
        while j < contributions.len()
            && (j == i || contributions[j].0 - contributions[j - 1].0 <= tol)
        {
            mult += contributions[j].1;
            if contributions[j].2 < first {
                first = contributions[j].2;
                value = contributions[j].0;
            }
            j += 1;
        }
        entries.push(SpectrumEntry {
            value,
            multiplicity: mult,
            source: EntrySource {
                family_label: label.to_string(),
                poly_index: first,
                first_index: first,
            },
        });
        i = j;
    }
    for w in entries.windows(2) {
        let gap = w[1].value - w[0].value;
        if gap <= 10.0 * tol {
            return Err(Error::AmbiguousClustering {
                gap,
                required: 10.0 * tol,
            });
        }
    }
    Ok(entries)
}

fn assemble_fan_spectrum(k: u64, d: u64, depth: usize) -> Result<SpectrumReport> {
    let spec = BranchingSpec::Fan { k, d };
    let graph = build_fan_graph(k, d, depth)?;
    let matrix = oracle::dense_operator(&graph, OperatorKind::Adjacency)?;
    let values = oracle::sym_eigenvalues(&matrix)?;
    let clustered = oracle::cluster_multiset(&values, 1e-8)?;

    let family = derived_family(&spec, depth, OperatorKind::Adjacency)?;
    let closing_roots = sturm_roots(family.root_poly(depth + 1)?, ROOT_TOL)?.roots;

    let entries: Vec<SpectrumEntry> = clustered
        .into_iter()
        .map(|(value, multiplicity)| {
            let from_closing = closing_roots.iter().any(|r| (r - value).abs() <= 1e-8);
            let source = if from_closing {
                EntrySource {
                    family_label: format!("{}:closing", family.config.label),
                    poly_index: depth + 1,
                    first_index: depth + 1,
                }
            } else {
                EntrySource {
                    family_label: "oracle".into(),
                    poly_index: 0,
                    first_index: 0,
                }
            };
            SpectrumEntry {
                value,
                multiplicity,
                source,
            }
        })
        .collect();

    let node_count = node_count_closed(&spec, depth)?;
    let total: u64 = entries.iter().map(|e| e.multiplicity).sum();
    if total != node_count {
        return Err(Error::InconsistentTotal {
            total,
            expected: node_count,
        });
    }
    Ok(SpectrumReport {
        entries,
        total_dim: node_count,
        spec,
        depth,
        operator: OperatorKind::Adjacency,
    })
}
