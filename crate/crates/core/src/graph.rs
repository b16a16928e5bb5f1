//! Dual graph of the rational curves.
//!
//! Two builders: [`build_graph_shift`] applies the rule "an entry `a` at
//! position `i` meets the curve at `i + a - 1` (cyclically)", while
//! [`build_graph_structural`] lays out branches and cycle segments from the
//! singular lengths directly. Both produce the same arcs, roles and labels.
//!
//! Node ids are positions in the expanded entry list. Arcs point from a
//! branch node towards its root and along the cycle in creation order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::linalg::{self, IntMatrix};
use crate::sequence::DlousskySequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Tip,
    BranchInner,
    BranchBlack,
    CycleBlack,
    CycleWhite,
    Root,
}

impl Role {
    pub fn is_branch(self) -> bool {
        matches!(self, Role::Tip | Role::BranchInner | Role::BranchBlack)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveNode {
    pub id: usize,
    pub entry: u32,
    pub role: Role,
    pub component: usize,
    pub label: String,
    pub self_loops: u8,
}

impl CurveNode {
    pub fn is_black(&self) -> bool {
        self.entry >= 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<CurveNode>,
    /// One outgoing arc per node, sorted.
    pub arcs: Vec<(usize, usize)>,
    pub intersection: IntMatrix,
}

impl DualGraph {
    fn finish(nodes: Vec<CurveNode>, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        let n = nodes.len();
        let mut m = vec![vec![BigInt::from(0); n]; n];
        for node in &nodes {
            m[node.id][node.id] = BigInt::from(-(node.entry as i64) + 2 * node.self_loops as i64);
        }
        for &(u, v) in &arcs {
            if u != v {
                m[u][v] += 1;
                m[v][u] += 1;
            }
        }
        DualGraph {
            nodes,
            arcs,
            intersection: m,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Undirected edge multiset as sorted `(min, max)` pairs; loops are `(i, i)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e
    }

    /// Edges with their multiplicity.
    pub fn edge_counts(&self) -> Vec<((usize, usize), usize)> {
        let mut counts = BTreeMap::new();
        for e in self.edges() {
            *counts.entry(e).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Positions of the structural pieces of one simple component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLayout {
    pub offset: usize,
    /// `A_1 .. A_alpha`, tip first.
    pub branch: Vec<usize>,
    /// `C_0 .. C_{beta+m-1}`; when `m >= 2` the root sits at index `beta + 1`.
    pub cycle: Vec<usize>,
    pub root: usize,
    /// Index of the root in the extended cycle list (`beta + 1`).
    pub root_index: usize,
}

impl ComponentLayout {
    /// `C_j` for `0 <= j <= beta + 1`, reaching into the next component when
    /// the root is its `C_0`.
    pub fn cycle_ext(&self, j: usize) -> usize {
        if j == self.root_index {
            self.root
        } else {
            self.cycle[j]
        }
    }
}

pub fn layout(seq: &DlousskySequence) -> Vec<ComponentLayout> {
    let offsets = seq.offsets();
    let n = seq.branch_count();
    seq.components()
        .iter()
        .enumerate()
        .map(|(f, comp)| {
            let o = offsets[f];
            let ks = comp.singular();
            let p = ks.len();
            let m = comp.regular_len() as usize;
            // cumulative starts P_i of each singular block
            let mut starts = Vec::with_capacity(p + 1);
            let mut acc = 0usize;
            for &k in ks {
                starts.push(acc);
                acc += k as usize;
            }
            starts.push(acc);
            let big_k = acc;

            let mut branch = Vec::new();
            let mut cycle = vec![o];
            for i in 0..p {
                let target = if i % 2 == 0 { &mut branch } else { &mut cycle };
                target.extend((starts[i] + 1..starts[i + 1]).map(|q| o + q));
                // head of block i+1, or the first regular entry
                target.push(o + starts[i + 1]);
            }
            let beta = cycle.len() - 1;
            cycle.extend((big_k + 1..big_k + m).map(|q| o + q));
            let root = if m >= 2 { o + big_k + 1 } else { offsets[(f + 1) % n] };
            ComponentLayout {
                offset: o,
                branch,
                cycle,
                root,
                root_index: beta + 1,
            }
        })
        .collect()
}

fn component_of(offsets: &[usize], id: usize) -> usize {
    offsets.partition_point(|&o| o <= id) - 1
}

fn label(base: String, comp: usize, branches: usize) -> String {
    if branches > 1 {
        format!("{}_{}", base, comp + 1)
    } else {
        base
    }
}

pub fn build_graph_structural(seq: &DlousskySequence) -> DualGraph {
    let entries = seq.expand();
    let offsets = seq.offsets();
    let n = seq.branch_count();
    let lay = layout(seq);
    let roots: Vec<usize> = lay.iter().map(|l| l.root).collect();

    let mut role = vec![None; entries.len()];
    let mut names = vec![String::new(); entries.len()];
    let mut arcs = Vec::with_capacity(entries.len());
    let mut cyc = Vec::new();

    for l in &lay {
        let f = component_of(&offsets, l.offset);
        for (i, &id) in l.branch.iter().enumerate() {
            role[id] = Some(if i == 0 {
                Role::Tip
            } else if entries[id] >= 3 {
                Role::BranchBlack
            } else {
                Role::BranchInner
            });
            names[id] = label(format!("A{}", i + 1), f, n);
            let next = l.branch.get(i + 1).copied().unwrap_or(l.root);
            arcs.push((id, next));
        }
        for (j, &id) in l.cycle.iter().enumerate() {
            role[id] = Some(if roots.contains(&id) {
                Role::Root
            } else if entries[id] >= 3 {
                Role::CycleBlack
            } else {
                Role::CycleWhite
            });
            let base = if j > 0 && id == l.root { "R".to_string() } else { format!("C{}", j) };
            names[id] = label(base, f, n);
        }
        cyc.extend_from_slice(&l.cycle);
    }
    let len = cyc.len();
    for i in 0..len {
        arcs.push((cyc[i], cyc[(i + 1) % len]));
    }

    let nodes = entries
        .iter()
        .enumerate()
        .map(|(id, &entry)| CurveNode {
            id,
            entry,
            role: role[id].expect("layout covers every position"),
            component: component_of(&offsets, id),
            label: std::mem::take(&mut names[id]),
            self_loops: u8::from(len == 1 && cyc[0] == id),
        })
        .collect();
    DualGraph::finish(nodes, arcs)
}

pub fn build_graph_shift(seq: &DlousskySequence) -> DualGraph {
    let entries = seq.expand();
    let offsets = seq.offsets();
    let n = seq.branch_count();
    let b = entries.len();
    let target: Vec<usize> = entries
        .iter()
        .enumerate()
        .map(|(i, &a)| (i + a as usize - 1) % b)
        .collect();

    let on_cycle: Vec<bool> = (0..b)
        .map(|i| {
            let mut x = target[i];
            for _ in 0..b {
                if x == i {
                    return true;
                }
                x = target[x];
            }
            false
        })
        .collect();
    let mut has_branch_pred = vec![false; b];
    let mut in_degree = vec![0usize; b];
    for i in 0..b {
        in_degree[target[i]] += 1;
        if !on_cycle[i] {
            has_branch_pred[target[i]] = true;
        }
    }

    let roles: Vec<Role> = (0..b)
        .map(|i| match (on_cycle[i], entries[i] >= 3) {
            (true, _) if has_branch_pred[i] => Role::Root,
            (true, true) => Role::CycleBlack,
            (true, false) => Role::CycleWhite,
            (false, _) if in_degree[i] == 0 => Role::Tip,
            (false, true) => Role::BranchBlack,
            (false, false) => Role::BranchInner,
        })
        .collect();

    let mut names = vec![String::new(); b];
    for tip in (0..b).filter(|&i| roles[i] == Role::Tip) {
        let f = component_of(&offsets, tip);
        let mut x = tip;
        let mut i = 1;
        while !on_cycle[x] {
            names[x] = label(format!("A{}", i), f, n);
            x = target[x];
            i += 1;
        }
    }
    for f in 0..n {
        let start = offsets[f];
        let stop = offsets[(f + 1) % n];
        let mut x = start;
        let mut j = 0;
        loop {
            let base = if j > 0 && roles[x] == Role::Root { "R".to_string() } else { format!("C{}", j) };
            names[x] = label(base, f, n);
            x = target[x];
            j += 1;
            if x == stop || j > b {
                break;
            }
        }
    }

    let loops: Vec<u8> = (0..b).map(|i| u8::from(target[i] == i)).collect();
    let nodes = (0..b)
        .map(|id| CurveNode {
            id,
            entry: entries[id],
            role: roles[id],
            component: component_of(&offsets, id),
            label: std::mem::take(&mut names[id]),
            self_loops: loops[id],
        })
        .collect();
    DualGraph::finish(nodes, target.into_iter().enumerate().collect())
}

pub fn intersection_matrix(g: &DualGraph) -> &IntMatrix {
    &g.intersection
}

/// `det(-M)`; positive because `M` is negative definite.
pub fn graph_determinant(g: &DualGraph) -> BigInt {
    let neg: IntMatrix = g
        .intersection
        .iter()
        .map(|row| row.iter().map(|v| -v).collect())
        .collect();
    linalg::determinant(&neg)
}

pub fn is_negative_definite(g: &DualGraph) -> bool {
    linalg::is_negative_definite(&g.intersection)
}

/// Graphviz digraph. Black nodes are filled and carry their entry; white
/// nodes are blank circles. Cycle arcs follow creation order, branch edges
/// are drawn without arrowheads.
pub fn export_dot(g: &DualGraph, name: &str) -> String {
    let mut out = String::new();
    let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
    writeln!(out, "digraph \"{}\" {{", escaped).unwrap();
    for node in &g.nodes {
        let mut attrs = if node.is_black() {
            format!(
                "label=\"{}\", shape=circle, style=filled, fillcolor=black, fontcolor=white",
                node.entry
            )
        } else {
            "label=\"\", shape=circle".to_string()
        };
        write!(attrs, ", tooltip=\"{}\"", node.label).unwrap();
        if node.self_loops > 0 {
            attrs.push_str(", xlabel=\"nodal\"");
        }
        writeln!(out, "  n{} [{}];", node.id, attrs).unwrap();
    }
    for &(u, v) in &g.arcs {
        if g.nodes[u].role.is_branch() {
            writeln!(out, "  n{} -> n{} [dir=none];", u, v).unwrap();
        } else {
            writeln!(out, "  n{} -> n{};", u, v).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> DlousskySequence {
        text.parse().unwrap()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn permuted(m: &IntMatrix, order: &[usize]) -> IntMatrix {
        order
            .iter()
            .map(|&i| order.iter().map(|&j| m[i][j].clone()).collect())
            .collect()
    }

    #[test]
    fn shift_rule_s2r2() {
        let g = build_graph_shift(&seq("[s2 r2]"));
        assert_eq!(g.edges(), vec![(0, 3), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.nodes[0].role, Role::CycleBlack);
        assert_eq!(g.nodes[3].role, Role::Root);
        assert_eq!(g.nodes[1].role, Role::Tip);
        assert_eq!(g.nodes[2].role, Role::BranchInner);
        let labels: Vec<&str> = g.nodes.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, vec!["C0", "A1", "A2", "R"]);
    }

    #[test]
    fn shift_rule_nodal() {
        let g = build_graph_shift(&seq("[s1 r1]"));
        assert_eq!(g.edges(), vec![(0, 0), (0, 1)]);
        assert_eq!(g.nodes[0].self_loops, 1);
        assert_eq!(g.nodes[0].role, Role::Root);
    }

    #[test]
    fn shift_rule_black_root() {
        let g = build_graph_shift(&seq("[s1 s2 r1]"));
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3), (2, 3)]);
        assert_eq!(g.nodes[0].role, Role::Root);
        assert_eq!(g.nodes[0].entry, 3);
        assert_eq!(g.nodes[1].role, Role::Tip);
        assert_eq!(g.nodes[1].entry, 4);
        let labels: Vec<&str> = g.nodes.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, vec!["C0", "A1", "C1", "C2"]);
    }

    #[test]
    fn structural_matches_shift_examples() {
        for text in ["[s2 r2]", "[s1 r1]", "[s1 s2 r1]", "[s1 r1 | s1 r1]", "[s2 s1 s3 r2 | s1 r3]"] {
            let s = seq(text);
            assert_eq!(build_graph_structural(&s), build_graph_shift(&s), "{text}");
        }
    }

    #[test]
    fn two_branch_labels() {
        let g = build_graph_structural(&seq("[s1 r1 | s1 r1]"));
        let labels: Vec<&str> = g.nodes.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, vec!["C0_1", "A1_1", "C0_2", "A1_2"]);
        // each tip attaches to the other component's C0
        assert_eq!(g.edge_counts(), vec![((0, 2), 2), ((0, 3), 1), ((1, 2), 1)]);
    }

    #[test]
    fn matrices() {
        let g = build_graph_structural(&seq("[s2 r2]"));
        // node order (A1, A2, C0, R) = ids (1, 2, 0, 3)
        let expected = mat(&[&[-2, 1, 0, 0], &[1, -2, 0, 1], &[0, 0, -4, 2], &[0, 1, 2, -2]]);
        assert_eq!(permuted(&g.intersection, &[1, 2, 0, 3]), expected);
        assert_eq!(graph_determinant(&g), BigInt::from(4));

        let g = build_graph_structural(&seq("[s1 r1]"));
        assert_eq!(permuted(&g.intersection, &[1, 0]), mat(&[&[-2, 1], &[1, -1]]));
        assert_eq!(graph_determinant(&g), BigInt::from(1));

        let g = build_graph_structural(&seq("[s1 r1 | s1 r1]"));
        let expected = mat(&[&[-2, 1, 0, 0], &[1, -3, 0, 2], &[0, 0, -2, 1], &[0, 2, 1, -3]]);
        assert_eq!(permuted(&g.intersection, &[1, 2, 3, 0]), expected);
        assert_eq!(graph_determinant(&g), BigInt::from(9));
        assert!(is_negative_definite(&g));
    }

    #[test]
    fn layout_s3r2() {
        let l = &layout(&seq("[s3 r2]"))[0];
        assert_eq!(l.branch, vec![1, 2, 3]);
        assert_eq!(l.cycle, vec![0, 4]);
        assert_eq!((l.root, l.root_index), (4, 1));
    }

    #[test]
    fn dot_output() {
        let g = build_graph_structural(&seq("[s2 r2]"));
        let dot = export_dot(&g, "[s2 r2]");
        assert_eq!(dot.lines().filter(|l| l.contains(" [label=")).count(), 4);
        assert_eq!(dot.lines().filter(|l| l.contains(" -> ")).count(), 4);
        assert_eq!(dot.matches("n0 -> n3").count() + dot.matches("n3 -> n0").count(), 2);

        let dot = export_dot(&build_graph_structural(&seq("[s1 r1]")), "[s1 r1]");
        assert!(dot.contains("xlabel=\"nodal\""));
        assert!(dot.contains("n0 -> n0;"));
    }
}
