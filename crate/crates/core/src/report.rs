//! JSON views of the computed data. Big integers are decimal strings and
//! rationals are `"n"` or `"n/d"`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::anticanonical::{self, StructureReport};
use crate::error::{Error, Result};
use crate::germ::{self, GermData, LatticeReport, ModuliReport};
use crate::graph::{self, DualGraph, Role};
use crate::rational::{self, Rational};
use crate::sequence::{DlousskySequence, SequenceStats};

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_string).collect()
}

#[derive(Debug, Serialize)]
pub struct NodeMultiplicity {
    pub id: usize,
    pub label: String,
    pub entry: u32,
    pub role: Role,
    pub multiplicity: String,
}

#[derive(Debug, Serialize)]
pub struct LatticeJson {
    pub sublattice_index: String,
    pub determinant: String,
    pub branch_determinants: Vec<String>,
    pub twisting_coefficient: String,
}

impl From<&LatticeReport> for LatticeJson {
    fn from(l: &LatticeReport) -> Self {
        LatticeJson {
            sublattice_index: l.sublattice_index.to_string(),
            determinant: l.determinant.to_string(),
            branch_determinants: l.branch_determinants.iter().map(BigInt::to_string).collect(),
            twisting_coefficient: l.twisting_coefficient.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ModuliJson {
    pub delta: u8,
    pub epsilon: u8,
    pub log_dim: u64,
    pub fixed_dim: u64,
}

impl From<&ModuliReport> for ModuliJson {
    fn from(m: &ModuliReport) -> Self {
        ModuliJson {
            delta: m.delta,
            epsilon: m.epsilon,
            log_dim: m.log_dim,
            fixed_dim: m.fixed_dim,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GermJson {
    pub sequence: String,
    pub j: String,
    pub s: String,
    pub k: String,
    pub pure_coefficient_count: u64,
    pub non_pure_coefficient_count: u64,
    pub sk_over_km1: Option<String>,
    pub germ_index: String,
    pub t: String,
    pub lattice: LatticeJson,
    /// One entry per admissible `delta`.
    pub moduli: Vec<ModuliJson>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub sequence: String,
    pub entries: Vec<u32>,
    pub stats: SequenceStats,
    pub index: String,
    pub tip_multiplicity: String,
    pub multiplicities: Vec<NodeMultiplicity>,
    pub tips: Vec<String>,
    pub roots: Vec<String>,
    pub slopes: Vec<Vec<String>>,
    pub structure: StructureReport,
    pub germ: GermJson,
}

#[derive(Debug, Serialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct GraphNodeJson {
    pub id: usize,
    pub entry: u32,
    pub role: Role,
    pub label: String,
    pub component: usize,
    pub self_loops: u8,
}

#[derive(Debug, Serialize)]
pub struct GraphJson {
    pub sequence: String,
    pub nodes: Vec<GraphNodeJson>,
    pub edges: Vec<EdgeJson>,
    pub arcs: Vec<[usize; 2]>,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
}

#[derive(Debug, Serialize)]
pub struct ModuliOutput {
    pub sequence: String,
    pub index: String,
    #[serde(flatten)]
    pub moduli: ModuliJson,
}

#[derive(Debug, Serialize)]
pub struct ErrorJson {
    pub code: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        ErrorJson {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

fn germ_json_from(seq: &DlousskySequence, g: &GermData) -> Result<GermJson> {
    let moduli = (0..=1)
        .filter_map(|delta| match germ::moduli_dimensions(seq, delta) {
            Ok(m) => Some(Ok(ModuliJson::from(&m))),
            Err(Error::DeltaInconsistent { .. }) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GermJson {
        sequence: seq.to_string(),
        j: g.j.to_string(),
        s: g.s.to_string(),
        k: g.k.to_string(),
        pure_coefficient_count: g.pure_coefficient_count,
        non_pure_coefficient_count: g.non_pure_coefficient_count(),
        sk_over_km1: g.sk_over_km1_integral.as_ref().map(BigInt::to_string),
        germ_index: germ::germ_index(g).to_string(),
        t: rational::to_string(&germ::germ_tip(g)),
        lattice: LatticeJson::from(&germ::lattice_invariants(seq)),
        moduli,
    })
}

pub fn germ_json(seq: &DlousskySequence) -> Result<GermJson> {
    let g = germ::germ_of(seq)?;
    germ_json_from(seq, &g)
}

/// Full report. Fails with an internal error if the solvers disagree.
pub fn analyze(seq: &DlousskySequence) -> Result<AnalyzeReport> {
    let asg = anticanonical::cross_checked(seq)?;
    let g = graph::build_graph_structural(seq);
    let germ = germ::germ_of(seq)?;
    if germ::germ_index(&germ) != asg.index {
        return Err(Error::Internal(format!("germ index disagrees on {seq}")));
    }
    let multiplicities = g
        .nodes
        .iter()
        .map(|n| NodeMultiplicity {
            id: n.id,
            label: n.label.clone(),
            entry: n.entry,
            role: n.role,
            multiplicity: rational::to_string(&asg.values[n.id]),
        })
        .collect();
    Ok(AnalyzeReport {
        sequence: seq.to_string(),
        entries: seq.expand(),
        stats: seq.stats(),
        index: asg.index.to_string(),
        tip_multiplicity: rational::to_string(&anticanonical::tip_multiplicity(seq)),
        multiplicities,
        tips: strs(&asg.tip_values),
        roots: strs(&asg.root_values),
        slopes: asg.slopes.iter().map(|s| strs(s)).collect(),
        structure: anticanonical::structure_checks(seq),
        germ: germ_json_from(seq, &germ)?,
    })
}

pub fn graph_json(seq: &DlousskySequence, g: &DualGraph) -> GraphJson {
    GraphJson {
        sequence: seq.to_string(),
        nodes: g
            .nodes
            .iter()
            .map(|n| GraphNodeJson {
                id: n.id,
                entry: n.entry,
                role: n.role,
                label: n.label.clone(),
                component: n.component,
                self_loops: n.self_loops,
            })
            .collect(),
        edges: g
            .edge_counts()
            .into_iter()
            .map(|((u, v), multiplicity)| EdgeJson { u, v, multiplicity })
            .collect(),
        arcs: g.arcs.iter().map(|&(u, v)| [u, v]).collect(),
        matrix: g
            .intersection
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect(),
        determinant: graph::graph_determinant(g).to_string(),
    }
}

pub fn moduli_json(seq: &DlousskySequence, delta: u8) -> Result<ModuliOutput> {
    let m = germ::moduli_dimensions(seq, delta)?;
    Ok(ModuliOutput {
        sequence: seq.to_string(),
        index: anticanonical::surface_index(seq).to_string(),
        moduli: ModuliJson::from(&m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_black_root() {
        let seq: DlousskySequence = "[s1 s2 r1]".parse().unwrap();
        let r = analyze(&seq).unwrap();
        assert_eq!(r.index, "1");
        let pairs: Vec<(&str, &str)> = r
            .multiplicities
            .iter()
            .map(|n| (n.label.as_str(), n.multiplicity.as_str()))
            .collect();
        assert_eq!(pairs, vec![("C0", "2"), ("A1", "1"), ("C1", "2"), ("C2", "2")]);
    }

    #[test]
    fn graph_json_shape() {
        let seq: DlousskySequence = "[s2 r2]".parse().unwrap();
        let g = graph::build_graph_structural(&seq);
        let v = serde_json::to_value(graph_json(&seq, &g)).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
        assert_eq!(v["matrix"][0][0], "-4");
        assert_eq!(v["determinant"], "4");
        let double = v["edges"].as_array().unwrap().iter().find(|e| e["multiplicity"] == 2).unwrap();
        assert_eq!((double["u"].as_u64(), double["v"].as_u64()), (Some(0), Some(3)));
    }
}
