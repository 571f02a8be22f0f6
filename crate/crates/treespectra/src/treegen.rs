//! Construction of the rooted graph families as explicit adjacency structures.
//!
//! All builders produce a breadth-first node layout: nodes are numbered level
//! by level, children in creation order, so every graph (and everything
//! serialized from it) is deterministic.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declarative description of a tree or fan family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum BranchingSpec {
    /// Every non-leaf node has `k` children; the root has degree `k`,
    /// interior nodes degree `k + 1`.
    #[serde(rename = "constant")]
    ConstantChildren { k: u64 },
    /// Finite ball of the infinite `k`-regular tree: the root has `k`
    /// children, every other non-leaf has `k - 1`, so non-leaves have
    /// degree `k`.
    #[serde(rename = "hat")]
    RegularSubtree { k: u64 },
    /// Branching counts cycle through `alphas`; nodes at depth `m` have
    /// `alphas[m % len]` children.
    Periodic { alphas: Vec<u64> },
    /// Strictly increasing branching counts, one per level.
    Sequence { alphas: Vec<u64> },
    /// Upper-adjacency graph of the `k`-regular rooted fan of dimension `d`:
    /// each frontier node gains `k` disjoint cliques of `d - 1` new nodes.
    Fan { k: u64, d: u64 },
}

impl BranchingSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            BranchingSpec::ConstantChildren { k } if *k < 2 => Err(Error::InvalidSpec(format!(
                "constant branching requires k >= 2, got {k}"
            ))),
            BranchingSpec::RegularSubtree { k } if *k < 3 => Err(Error::InvalidSpec(format!(
                "regular subtree requires k >= 3 (interior branching k - 1 >= 2), got {k}"
            ))),
            BranchingSpec::Periodic { alphas } => {
                if alphas.is_empty() {
                    return Err(Error::InvalidSpec("periodic vector is empty".into()));
                }
                if let Some(a) = alphas.iter().find(|a| **a < 2) {
                    return Err(Error::InvalidSpec(format!(
                        "periodic branching requires alpha >= 2, got {a}"
                    )));
                }
                Ok(())
            }
            BranchingSpec::Sequence { alphas } => {
                if alphas.is_empty() {
                    return Err(Error::InvalidSpec("branching sequence is empty".into()));
                }
                if alphas[0] < 2 {
                    return Err(Error::InvalidSpec(format!(
                        "sequence branching requires alpha >= 2, got {}",
                        alphas[0]
                    )));
                }
                if let Some(w) = alphas.windows(2).find(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidSpec(format!(
                        "branching sequence must be strictly increasing, got {} after {}",
                        w[1], w[0]
                    )));
                }
                Ok(())
            }
            BranchingSpec::Fan { k, d } => {
                if *k < 1 {
                    return Err(Error::InvalidSpec(format!("fan requires k >= 1, got {k}")));
                }
                if *d < 2 {
                    return Err(Error::InvalidSpec(format!("fan requires d >= 2, got {d}")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Also checks the spec/depth pairing (periodic trees only exist at
    /// complete-period depths; sequences cannot outrun their data).
    pub fn validate_depth(&self, depth: usize) -> Result<()> {
        self.validate()?;
        match self {
            BranchingSpec::Periodic { alphas } if !depth.is_multiple_of(alphas.len()) => {
                Err(Error::InvalidSpec(format!(
                    "depth {depth} is not a multiple of the period length {} (incomplete period)",
                    alphas.len()
                )))
            }
            BranchingSpec::Sequence { alphas } if depth > alphas.len() => {
                Err(Error::InvalidSpec(format!(
                    "depth {depth} exceeds the {} supplied branching counts",
                    alphas.len()
                )))
            }
            _ => Ok(()),
        }
    }

    /// Number of children of a node at depth `m` (for fans: `k(d-1)` new
    /// nodes hang below each frontier node).
    pub fn branching_at(&self, m: usize) -> u64 {
        match self {
            BranchingSpec::ConstantChildren { k } => *k,
            BranchingSpec::RegularSubtree { k } => {
                if m == 0 {
                    *k
                } else {
                    *k - 1
                }
            }
            BranchingSpec::Periodic { alphas } => alphas[m % alphas.len()],
            BranchingSpec::Sequence { alphas } => alphas[m],
            BranchingSpec::Fan { k, d } => *k * (*d - 1),
        }
    }

    pub fn is_tree_kind(&self) -> bool {
        !matches!(self, BranchingSpec::Fan { .. })
    }

    pub fn family_label(&self) -> String {
        match self {
            BranchingSpec::ConstantChildren { k } => format!("constant(k={k})"),
            BranchingSpec::RegularSubtree { k } => format!("hat(k={k})"),
            BranchingSpec::Periodic { alphas } => format!("periodic({alphas:?})"),
            BranchingSpec::Sequence { alphas } => format!("sequence({alphas:?})"),
            BranchingSpec::Fan { k, d } => format!("fan(k={k},d={d})"),
        }
    }
}

/// Concrete adjacency structure with per-node depth metadata.
///
/// Nodes are in BFS order; `level_offsets[d]..level_offsets[d+1]` is the
/// contiguous index range of depth `d`.
#[derive(Debug, Clone)]
pub struct TreeGraph {
    pub n_nodes: usize,
    pub depth: usize,
    pub depth_of: Vec<u32>,
    neighbor_offsets: Vec<usize>,
    neighbors: Vec<u32>,
    children_of: Vec<(u32, u32)>,
    parent_of: Vec<Option<u32>>,
    level_offsets: Vec<usize>,
    /// Per-node clique-group id for fans (`None` for tree kinds). The root
    /// sits in its own group; each added clique of `d - 1` nodes is a group.
    sibling_group: Option<Vec<u32>>,
}

impl TreeGraph {
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.neighbor_offsets[v]..self.neighbor_offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_offsets[v + 1] - self.neighbor_offsets[v]
    }

    pub fn children(&self, v: usize) -> std::ops::Range<usize> {
        let (a, b) = self.children_of[v];
        a as usize..b as usize
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent_of[v].map(|p| p as usize)
    }

    pub fn nodes_at_depth(&self, d: usize) -> std::ops::Range<usize> {
        self.level_offsets[d]..self.level_offsets[d + 1]
    }

    pub fn n_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn sibling_group(&self, v: usize) -> Option<u32> {
        self.sibling_group.as_ref().map(|g| g[v])
    }

    pub fn is_fan(&self) -> bool {
        self.sibling_group.is_some()
    }

    /// Edge-list text format: first line `n m`, then one `u v` line per edge
    /// (0-indexed, BFS order), then a sidecar line `depths: d0 d1 ...`.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n_nodes, self.n_edges());
        for v in 0..self.n_nodes {
            for &u in self.neighbors(v) {
                if (u as usize) > v {
                    let _ = writeln!(out, "{} {}", v, u);
                }
            }
        }
        out.push_str("depths:");
        for d in &self.depth_of {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
        w.write_all(out.as_bytes())?;
        Ok(())
    }

    /// Parses the `write_edge_list` format back.
    #[allow(clippy::type_complexity)]
    pub fn read_edge_list(text: &str) -> Result<(usize, Vec<(u32, u32)>, Vec<u32>)> {
        let bad = |m: &str| Error::InvalidSpec(format!("edge list parse: {m}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("bad node count"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("bad edge count"))?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines.next().ok_or_else(|| bad("missing edge line"))?;
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("bad edge"))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("bad edge"))?;
            edges.push((u, v));
        }
        let depths_line = lines.next().ok_or_else(|| bad("missing depths line"))?;
        let rest = depths_line
            .strip_prefix("depths:")
            .ok_or_else(|| bad("missing depths prefix"))?;
        let depths: Vec<u32> = rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad depth")))
            .collect::<Result<_>>()?;
        if depths.len() != n {
            return Err(bad("depth count does not match node count"));
        }
        Ok((n, edges, depths))
    }
}

/// Assembles a `TreeGraph` from a flat edge set plus per-node metadata.
struct GraphBuilder {
    n: usize,
    edges: Vec<(u32, u32)>,
    depth_of: Vec<u32>,
    children_of: Vec<(u32, u32)>,
    parent_of: Vec<Option<u32>>,
    level_offsets: Vec<usize>,
}

impl GraphBuilder {
    fn finish(self, depth: usize, sibling_group: Option<Vec<u32>>) -> TreeGraph {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut neighbor_offsets = vec![0usize; self.n + 1];
        for v in 0..self.n {
            neighbor_offsets[v + 1] = neighbor_offsets[v] + deg[v];
        }
        let mut neighbors = vec![0u32; self.edges.len() * 2];
        let mut cursor = neighbor_offsets.clone();
        for &(u, v) in &self.edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        // Neighbor lists sorted for deterministic iteration.
        for v in 0..self.n {
            neighbors[neighbor_offsets[v]..neighbor_offsets[v + 1]].sort_unstable();
        }
        TreeGraph {
            n_nodes: self.n,
            depth,
            depth_of: self.depth_of,
            neighbor_offsets,
            neighbors,
            children_of: self.children_of,
            parent_of: self.parent_of,
            level_offsets: self.level_offsets,
            sibling_group,
        }
    }
}

/// Builds the rooted graph of the family at the given depth (BFS layout).
pub fn build_tree(spec: &BranchingSpec, depth: usize) -> Result<TreeGraph> {
    spec.validate_depth(depth)?;
    if let BranchingSpec::Fan { k, d } = spec {
        return build_fan_graph(*k, *d, depth);
    }

    let n = checked_size(spec, depth)?;
    let mut b = GraphBuilder {
        n,
        edges: Vec::with_capacity(n.saturating_sub(1)),
        depth_of: Vec::with_capacity(n),
        children_of: vec![(0, 0); n],
        parent_of: vec![None; n],
        level_offsets: vec![0],
    };
    b.depth_of.push(0);
    let mut level: Vec<u32> = vec![0];
    let mut next_id: u32 = 1;
    for m in 0..depth {
        b.level_offsets.push(next_id as usize);
        let c = spec.branching_at(m) as u32;
        let mut next_level = Vec::with_capacity(level.len() * c as usize);
        for &p in &level {
            b.children_of[p as usize] = (next_id, next_id + c);
            for _ in 0..c {
                b.edges.push((p, next_id));
                b.depth_of.push(m as u32 + 1);
                b.parent_of[next_id as usize] = Some(p);
                next_level.push(next_id);
                next_id += 1;
            }
        }
        level = next_level;
    }
    b.level_offsets.push(next_id as usize);
    debug_assert_eq!(next_id as usize, n);
    Ok(b.finish(depth, None))
}

/// Builds the fan upper-adjacency graph: starting from a root, every node
/// added at the previous level gains `k` disjoint cliques of `d - 1` new
/// nodes, each clique node adjacent to its parent and to its clique siblings.
pub fn build_fan_graph(k: u64, d: u64, depth: usize) -> Result<TreeGraph> {
    let spec = BranchingSpec::Fan { k, d };
    spec.validate()?;
    let n = checked_size(&spec, depth)?;
    let clique = (d - 1) as u32;
    let mut b = GraphBuilder {
        n,
        edges: Vec::new(),
        depth_of: Vec::with_capacity(n),
        children_of: vec![(0, 0); n],
        parent_of: vec![None; n],
        level_offsets: vec![0],
    };
    let mut groups: Vec<u32> = Vec::with_capacity(n);
    b.depth_of.push(0);
    groups.push(0);
    let mut next_group: u32 = 1;
    let mut level: Vec<u32> = vec![0];
    let mut next_id: u32 = 1;
    for m in 0..depth {
        b.level_offsets.push(next_id as usize);
        let mut next_level = Vec::with_capacity(level.len() * (k * (d - 1)) as usize);
        for &p in &level {
            b.children_of[p as usize] = (next_id, next_id + k as u32 * clique);
            for _ in 0..k {
                let base = next_id;
                for i in 0..clique {
                    let v = base + i;
                    b.edges.push((p, v));
                    for j in 0..i {
                        b.edges.push((base + j, v));
                    }
                    b.depth_of.push(m as u32 + 1);
                    b.parent_of[v as usize] = Some(p);
                    groups.push(next_group);
                    next_level.push(v);
                }
                next_id += clique;
                next_group += 1;
            }
        }
        level = next_level;
    }
    b.level_offsets.push(next_id as usize);
    debug_assert_eq!(next_id as usize, n);
    Ok(b.finish(depth, Some(groups)))
}

/// Node ids are u32; refuse to build graphs that cannot be indexed.
fn checked_size(spec: &BranchingSpec, depth: usize) -> Result<usize> {
    let n = node_count_closed(spec, depth)?;
    if n > u32::MAX as u64 {
        return Err(Error::InvalidSpec(format!(
            "graph with {n} nodes exceeds the u32 node-id range"
        )));
    }
    Ok(n as usize)
}

/// Closed-form node count; equals `build_tree(spec, depth).n_nodes`.
pub fn node_count_closed(spec: &BranchingSpec, depth: usize) -> Result<u64> {
    spec.validate_depth(depth)?;
    let overflow = || Error::InvalidSpec("node count overflows u64".into());
    match spec {
        BranchingSpec::ConstantChildren { k } => {
            // (k^(r+1) - 1) / (k - 1)
            let mut p: u128 = 1;
            for _ in 0..=depth {
                p = p.checked_mul(*k as u128).ok_or_else(overflow)?;
            }
            u64::try_from((p - 1) / (*k as u128 - 1)).map_err(|_| overflow())
        }
        BranchingSpec::RegularSubtree { k } => {
            // k/(k-2) * ((k-1)^r - 1) + 1
            let mut p: u128 = 1;
            for _ in 0..depth {
                p = p.checked_mul((*k - 1) as u128).ok_or_else(overflow)?;
            }
            let total = (*k as u128) * (p - 1) / (*k as u128 - 2) + 1;
            u64::try_from(total).map_err(|_| overflow())
        }
        _ => {
            // Level sizes multiply by the per-depth branching.
            let mut total: u128 = 1;
            let mut level: u128 = 1;
            for m in 0..depth {
                level = level
                    .checked_mul(spec.branching_at(m) as u128)
                    .ok_or_else(overflow)?;
                total = total.checked_add(level).ok_or_else(overflow)?;
            }
            u64::try_from(total).map_err(|_| overflow())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(k: u64) -> BranchingSpec {
        BranchingSpec::ConstantChildren { k }
    }

    #[test]
    fn binary_tree_depth_4_has_31_nodes() {
        let g = build_tree(&constant(2), 4).unwrap();
        assert_eq!(g.n_nodes, 31);
        assert_eq!(g.n_edges(), 30);
    }

    #[test]
    fn depth_zero_is_a_single_node() {
        let g = build_tree(&constant(2), 0).unwrap();
        assert_eq!(g.n_nodes, 1);
        assert_eq!(g.n_edges(), 0);
        assert_eq!(g.depth_of, vec![0]);
    }

    #[test]
    fn hat_tree_k3_depth_2_has_10_nodes() {
        let g = build_tree(&BranchingSpec::RegularSubtree { k: 3 }, 2).unwrap();
        assert_eq!(g.n_nodes, 10); // 1 + 3 + 6
    }

    #[test]
    fn periodic_3_2_depth_2_has_10_nodes() {
        let g = build_tree(&BranchingSpec::Periodic { alphas: vec![3, 2] }, 2).unwrap();
        assert_eq!(g.n_nodes, 10); // 1 + 3 + 6
    }

    #[test]
    fn periodic_incomplete_period_rejected() {
        let err = build_tree(&BranchingSpec::Periodic { alphas: vec![3, 2] }, 3).unwrap_err();
        assert!(err.to_string().contains("incomplete period"));
    }

    #[test]
    fn closed_counts_match_paper_formulas() {
        assert_eq!(node_count_closed(&constant(3), 2).unwrap(), 13);
        assert_eq!(
            node_count_closed(&BranchingSpec::RegularSubtree { k: 4 }, 3).unwrap(),
            53
        );
        assert_eq!(
            node_count_closed(
                &BranchingSpec::Sequence {
                    alphas: vec![2, 3, 5],
                },
                3
            )
            .unwrap(),
            39
        );
    }

    #[test]
    fn fan_2_3_depth_1_is_two_triangles_sharing_the_root() {
        let g = build_fan_graph(2, 3, 1).unwrap();
        assert_eq!(g.n_nodes, 5);
        assert_eq!(g.n_edges(), 6);
        // Two clique groups besides the root's own.
        assert_eq!(g.sibling_group(1), g.sibling_group(2));
        assert_eq!(g.sibling_group(3), g.sibling_group(4));
        assert_ne!(g.sibling_group(1), g.sibling_group(3));
    }

    #[test]
    fn fan_2_3_depth_2_has_21_nodes() {
        let g = build_fan_graph(2, 3, 2).unwrap();
        assert_eq!(g.n_nodes, 21); // 1 + 4 + 16
    }

    #[test]
    fn fan_d2_equals_constant_tree_edge_for_edge() {
        for k in 1..=4u64 {
            for r in 0..=4usize {
                let f = build_fan_graph(k, 2, r).unwrap();
                if k >= 2 {
                    let t = build_tree(&constant(k), r).unwrap();
                    assert_eq!(f.n_nodes, t.n_nodes);
                    for v in 0..t.n_nodes {
                        assert_eq!(f.neighbors(v), t.neighbors(v), "node {v} k={k} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn degree_profile_constant_k() {
        for k in [2u64, 3, 5] {
            let g = build_tree(&constant(k), 3).unwrap();
            assert_eq!(g.degree(0), k as usize);
            for v in 1..g.n_nodes {
                let expected = if g.depth_of[v] as usize == g.depth {
                    1
                } else {
                    k as usize + 1
                };
                assert_eq!(g.degree(v), expected, "node {v}");
            }
        }
    }

    #[test]
    fn bfs_depths_and_parents_consistent() {
        let specs = [
            constant(3),
            BranchingSpec::RegularSubtree { k: 4 },
            BranchingSpec::Periodic { alphas: vec![2, 3] },
            BranchingSpec::Sequence {
                alphas: vec![2, 3, 5, 8],
            },
        ];
        for spec in &specs {
            let depth = match spec {
                BranchingSpec::Sequence { alphas } => alphas.len().min(4),
                _ => 4,
            };
            let g = build_tree(spec, depth).unwrap();
            assert_eq!(g.n_edges(), g.n_nodes - 1);
            for v in 1..g.n_nodes {
                let p = g.parent(v).unwrap();
                assert_eq!(g.depth_of[p] + 1, g.depth_of[v]);
                // Exactly one neighbor at depth - 1.
                let ups = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| g.depth_of[u as usize] + 1 == g.depth_of[v])
                    .count();
                assert_eq!(ups, 1);
            }
            for d in 0..=g.depth {
                for v in g.nodes_at_depth(d) {
                    assert_eq!(g.depth_of[v] as usize, d);
                }
            }
        }
    }

    #[test]
    fn closed_count_matches_built_graph() {
        let specs = [
            constant(2),
            constant(5),
            BranchingSpec::RegularSubtree { k: 3 },
            BranchingSpec::RegularSubtree { k: 6 },
            BranchingSpec::Periodic { alphas: vec![3, 2] },
            BranchingSpec::Periodic {
                alphas: vec![2, 3, 4],
            },
            BranchingSpec::Sequence {
                alphas: vec![2, 3, 5, 8, 13, 21, 34, 55],
            },
            BranchingSpec::Fan { k: 2, d: 3 },
            BranchingSpec::Fan { k: 3, d: 4 },
        ];
        for spec in &specs {
            for depth in 0..=8usize {
                if spec.validate_depth(depth).is_err() {
                    continue;
                }
                if node_count_closed(spec, depth).unwrap() > 200_000 {
                    continue;
                }
                let g = build_tree(spec, depth).unwrap();
                assert_eq!(
                    g.n_nodes as u64,
                    node_count_closed(spec, depth).unwrap(),
                    "{spec:?} depth {depth}"
                );
            }
        }
    }

    #[test]
    fn edge_list_round_trips() {
        let g = build_tree(&constant(2), 3).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let (n, edges, depths) = TreeGraph::read_edge_list(&text).unwrap();
        assert_eq!(n, g.n_nodes);
        assert_eq!(edges.len(), g.n_edges());
        assert_eq!(depths, g.depth_of);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn spec_and_depth() -> impl Strategy<Value = (BranchingSpec, usize)> {
            prop_oneof![
                (2u64..=5, 0usize..=6)
                    .prop_map(|(k, r)| (BranchingSpec::ConstantChildren { k }, r)),
                (3u64..=6, 0usize..=5).prop_map(|(k, r)| (BranchingSpec::RegularSubtree { k }, r)),
                (proptest::collection::vec(2u64..=4, 1..=3), 0usize..=2).prop_map(
                    |(alphas, periods)| {
                        let depth = periods * alphas.len();
                        (BranchingSpec::Periodic { alphas }, depth)
                    }
                ),
                (proptest::collection::vec(1u64..=3, 1..=5), 0usize..=5).prop_map(|(steps, d)| {
                    let mut alphas = Vec::new();
                    let mut v = 1u64;
                    for s in steps {
                        v += s;
                        alphas.push(v);
                    }
                    let depth = d.min(alphas.len());
                    (BranchingSpec::Sequence { alphas }, depth)
                }),
                ((1u64..=3), (2u64..=4), 0usize..=3)
                    .prop_map(|(k, d, r)| (BranchingSpec::Fan { k, d }, r)),
            ]
        }

        proptest! {
            #[test]
            fn built_graphs_match_closed_counts_and_bfs((spec, depth) in spec_and_depth()) {
                let g = build_tree(&spec, depth).unwrap();
                prop_assert_eq!(g.n_nodes as u64, node_count_closed(&spec, depth).unwrap());
                prop_assert_eq!(g.depth_of[0], 0);
                if spec.is_tree_kind() {
                    prop_assert_eq!(g.n_edges(), g.n_nodes - 1);
                }
                for v in 1..g.n_nodes {
                    let ups = g
                        .neighbors(v)
                        .iter()
                        .filter(|&&u| g.depth_of[u as usize] + 1 == g.depth_of[v])
                        .count();
                    prop_assert_eq!(ups, 1); // one parent, so connected and acyclic
                }
                // Adjacency is symmetric and loop-free.
                for v in 0..g.n_nodes {
                    for &u in g.neighbors(v) {
                        prop_assert!(u as usize != v);
                        prop_assert!(g.neighbors(u as usize).contains(&(v as u32)));
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_specs_name_the_violated_bound() {
        assert!(build_tree(&constant(1), 2)
            .unwrap_err()
            .to_string()
            .contains("k >= 2"));
        assert!(build_tree(&BranchingSpec::RegularSubtree { k: 2 }, 2)
            .unwrap_err()
            .to_string()
            .contains("k >= 3"));
        assert!(
            build_tree(&BranchingSpec::Sequence { alphas: vec![2, 2] }, 2,)
                .unwrap_err()
                .to_string()
                .contains("strictly increasing")
        );
        assert!(build_fan_graph(2, 1, 1)
            .unwrap_err()
            .to_string()
            .contains("d >= 2"));
    }
}
