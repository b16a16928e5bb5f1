//! Multiplicities of the anticanonical class `-K = sum d_i D_i`.
//!
//! Three independent routes:
//! * [`solve_closed_form`]: slopes `g_j` as linear functions of the tip value,
//!   piecewise-linear profiles along branches and cycle.
//! * [`solve_chase`]: local propagation of the adjunction rows from the tip
//!   and from `C_0`, for an arbitrary tip value.
//! * [`solve_adjunction_system`]: exact elimination on `M d = rhs`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{f_form, p_form};
use crate::graph::{self, ComponentLayout, DualGraph, Role};
use crate::linalg;
use crate::rational::{self, Rational};
use crate::sequence::{DlousskySequence, SimpleComponent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityAssignment {
    /// `d_i` indexed by node id.
    pub values: Vec<Rational>,
    /// `a_{1,f}` per component.
    pub tip_values: Vec<Rational>,
    /// `r_f` per component.
    pub root_values: Vec<Rational>,
    /// `g_0 .. g_p` per component, read off the values.
    pub slopes: Vec<Vec<Rational>>,
    /// Least common multiple of the denominators.
    pub index: BigInt,
}

impl MultiplicityAssignment {
    fn from_values(seq: &DlousskySequence, lay: &[ComponentLayout], values: Vec<Rational>) -> Self {
        let tip_values = lay.iter().map(|l| values[l.branch[0]].clone()).collect();
        let root_values = lay.iter().map(|l| values[l.root].clone()).collect();
        let slopes = seq
            .components()
            .iter()
            .zip(lay)
            .map(|(c, l)| slopes_from_values(c, l, &values))
            .collect();
        let index = rational::lcm_of_denominators(&values);
        MultiplicityAssignment {
            values,
            tip_values,
            root_values,
            slopes,
            index,
        }
    }
}

/// Read `g_0 .. g_p` off a value assignment: `g_0` is the tip value, even
/// slopes are the branch step leaving a black node (or reaching the root),
/// odd slopes the cycle step leaving a black node.
pub fn slopes_from_values(comp: &SimpleComponent, lay: &ComponentLayout, values: &[Rational]) -> Vec<Rational> {
    let ks = comp.singular();
    let p = ks.len();
    let mut out = Vec::with_capacity(p + 1);
    out.push(values[lay.branch[0]].clone());
    for j in 1..=p {
        let idx: usize = ks[..j].iter().skip(j % 2).step_by(2).map(|&k| k as usize).sum();
        let (from, to) = if j % 2 == 0 {
            let to = lay.branch.get(idx).copied().unwrap_or(lay.root);
            (lay.branch[idx - 1], to)
        } else {
            (lay.cycle_ext(idx), lay.cycle_ext(idx + 1))
        };
        out.push(&values[to] - &values[from]);
    }
    out
}

fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn ks64(comp: &SimpleComponent) -> Vec<u64> {
    comp.singular().iter().map(|&k| k as u64).collect()
}

/// `P_f = P(k_0..k_{p-1})`.
pub fn p_of(comp: &SimpleComponent) -> BigInt {
    p_form(&ks64(comp))
}

/// `Q_f = P(k_1..k_{p-1}) + m`.
pub fn q_of(comp: &SimpleComponent) -> BigInt {
    p_form(&ks64(comp)[1..]) + comp.regular_len()
}

/// `(S, K)` with `t = S / (K - 1)`: `K = prod (P_f + 1)`,
/// `S = sum_h Q_h prod_{f > h} (P_f + 1)`.
fn tip_fraction(seq: &DlousskySequence) -> (BigInt, BigInt) {
    let mut s = BigInt::zero();
    let mut k = BigInt::one();
    // Horner from the first component: S <- S (P_f + 1) + Q_f
    for c in seq.components() {
        let pf1 = p_of(c) + 1u32;
        s = s * &pf1 + q_of(c);
        k *= pf1;
    }
    (s, k)
}

/// Tip multiplicity of the first component.
pub fn tip_multiplicity(seq: &DlousskySequence) -> Rational {
    let (s, k) = tip_fraction(seq);
    Rational::new(s, k - 1u32)
}

/// `(K - 1) / gcd(K - 1, S)`.
pub fn surface_index(seq: &DlousskySequence) -> BigInt {
    let (s, k) = tip_fraction(seq);
    let km1 = k - 1u32;
    let g = km1.gcd(&s);
    km1 / g
}

/// `g_j = f(k_0..k_{j-1}) a - f(k_1..k_{j-1})` for `j = 0..=p`.
pub fn formula_slopes(comp: &SimpleComponent, a: &Rational) -> Vec<Rational> {
    let ks = ks64(comp);
    (0..=ks.len())
        .map(|j| {
            let lead = big(f_form(&ks[..j])) * a;
            if j == 0 {
                lead
            } else {
                lead - big(f_form(&ks[1..j]))
            }
        })
        .collect()
}

pub fn solve_closed_form(seq: &DlousskySequence) -> MultiplicityAssignment {
    let entries = seq.expand();
    let lay = graph::layout(seq);
    let mut values = vec![Rational::zero(); entries.len()];
    let mut a = tip_multiplicity(seq);

    for (comp, l) in seq.components().iter().zip(&lay) {
        let g = formula_slopes(comp, &a);
        let pf1 = big(p_of(comp) + 1u32);
        let q = big(q_of(comp));
        let m = comp.regular_len() as usize;

        let mut v = a.clone();
        let mut black = 0;
        for (i, &id) in l.branch.iter().enumerate() {
            if i > 0 {
                v += &g[2 * black];
            }
            values[id] = v.clone();
            if entries[id] >= 3 {
                black += 1;
            }
        }

        let beta = l.root_index - 1;
        let mut v = &a + Rational::one();
        values[l.cycle[0]] = v.clone();
        let mut black = 1;
        for j in 1..=beta {
            v += &g[2 * black - 1];
            let id = l.cycle[j];
            values[id] = v.clone();
            if entries[id] >= 3 {
                black += 1;
            }
        }

        let r = &pf1 * &a - &q + Rational::from_integer(m.into());
        for i in 1..m.saturating_sub(1) {
            values[l.cycle[beta + 1 + i]] = &r - Rational::from_integer(i.into());
        }
        if m >= 2 {
            values[l.root] = r;
        }
        a = &pf1 * &a - &q;
    }
    MultiplicityAssignment::from_values(seq, &lay, values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaseOutcome {
    pub assignment: MultiplicityAssignment,
    /// Value propagated around the cycle back onto `C_{0,1}`, minus the
    /// starting value `t + 1`. Zero exactly for the true tip multiplicity.
    pub closure_defect: Rational,
}

/// Propagate adjunction rows starting from tip value `t` on the first
/// component. Each branch is chased from its tip; each cycle segment starts
/// at `c_0 = a + 1`, `c_1 = c_0 + k_0 a - 1`, and the value arriving at the
/// next `C_0` fixes the next tip.
pub fn solve_chase(seq: &DlousskySequence, t: &Rational) -> ChaseOutcome {
    let entries = seq.expand();
    let lay = graph::layout(seq);
    let e = |id: usize| Rational::from_integer(entries[id].into());
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let mut values = vec![Rational::zero(); entries.len()];
    let mut a = t.clone();
    let mut seam = Rational::zero();

    for (f, (comp, l)) in seq.components().iter().zip(&lay).enumerate() {
        // branch
        let br = &l.branch;
        values[br[0]] = a.clone();
        if br.len() >= 2 {
            values[br[1]] = &two + (&a - &one) * e(br[0]);
        }
        for i in 2..br.len() {
            values[br[i]] = (&values[br[i - 1]] - &one) * e(br[i - 1]) + &two - &values[br[i - 2]];
        }
        let a_alpha = values[*br.last().unwrap()].clone();

        // cycle segment: node sequence C_0, C_1, .., C_{beta+m-1}, next C_0
        let mut walk: Vec<usize> = l.cycle.clone();
        walk.push(lay[(f + 1) % lay.len()].cycle[0]);
        let mut vals: Vec<Rational> = Vec::with_capacity(walk.len());
        vals.push(&a + &one);
        let k0 = Rational::from_integer(comp.singular()[0].into());
        vals.push(&vals[0] + &k0 * &a - &one);
        for j in 1..walk.len() - 1 {
            let id = walk[j];
            let mut next = (&vals[j] - &one) * e(id) + &two - &vals[j - 1];
            if id == l.root {
                next -= &a_alpha;
            }
            vals.push(next);
        }
        for (j, &id) in walk[..walk.len() - 1].iter().enumerate() {
            values[id] = vals[j].clone();
        }
        seam = vals.last().unwrap().clone();
        a = &seam - &one;
    }
    let closure_defect = &seam - &values[lay[0].cycle[0]];
    ChaseOutcome {
        assignment: MultiplicityAssignment::from_values(seq, &lay, values),
        closure_defect,
    }
}

/// Right-hand side of the adjunction rows: `D_i^2 + 2` for smooth rational
/// curves, `D_i^2` for the nodal curve.
pub fn adjunction_rhs(g: &DualGraph) -> Vec<BigInt> {
    g.nodes
        .iter()
        .map(|n| &g.intersection[n.id][n.id] + 2 - 2 * n.self_loops as i64)
        .collect()
}

/// `M d - rhs` per node.
pub fn adjunction_residuals(g: &DualGraph, values: &[Rational]) -> Vec<Rational> {
    let rhs = adjunction_rhs(g);
    g.intersection
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let lhs: Rational = row
                .iter()
                .zip(values)
                .map(|(m, d)| Rational::from_integer(m.clone()) * d)
                .sum();
            lhs - Rational::from_integer(r)
        })
        .collect()
}

pub fn solve_adjunction_system(seq: &DlousskySequence, g: &DualGraph) -> Result<MultiplicityAssignment> {
    let values = linalg::solve(&g.intersection, &adjunction_rhs(g))?;
    Ok(MultiplicityAssignment::from_values(seq, &graph::layout(seq), values))
}

/// Index of `[s_{k_0} .. s_{k_{p-1}} r_m]` for `m = 1..=m_max`.
pub fn index_spectrum(ks: &[u32], m_max: u32) -> Result<BTreeMap<u32, BigInt>> {
    (1..=m_max)
        .map(|m| {
            let c = SimpleComponent::new(ks.to_vec(), m)?;
            Ok((m, surface_index(&DlousskySequence::new(vec![c])?)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub index_one: bool,
    /// Index 1 implies every slope is at least 1, except `g_1 = 0` when
    /// the tip value and `k_0` are both 1.
    pub slope_floor_ok: bool,
    /// One branch, `m = 1`, profile `(1)` or `(1, k)`: entries `(3, 2)` or
    /// `(3, k+2, 2, .., 2)`.
    pub black_root_family: bool,
    /// Index 1 implies `b2(B) <= m`. Vacuous otherwise.
    pub branch_bound: bool,
    /// Index 1 and `b2(B) = m` exactly when every component is `[s_m r_m]`
    /// or `[3 s_k 2]`. Vacuous for index > 1. Fails on e.g. `[s1 s1 s1 r2]`.
    pub equality_case_matches: bool,
    pub b2_branches: u64,
    pub m_total: u64,
    pub min_node: usize,
    pub max_node: usize,
    /// Index 1 implies the minimum is attained at a tip and the maximum
    /// at a root. Vacuous otherwise.
    pub extrema_ok: bool,
}

/// `[3 s_k 2]` with `k >= 0`.
fn is_black_root_form(c: &SimpleComponent) -> bool {
    c.regular_len() == 1 && c.singular()[0] == 1 && c.singular().len() <= 2
}

fn is_equality_form(c: &SimpleComponent) -> bool {
    c.singular() == [c.regular_len()] || is_black_root_form(c)
}

pub fn structure_checks(seq: &DlousskySequence) -> StructureReport {
    let asg = solve_closed_form(seq);
    let g = graph::build_graph_structural(seq);
    let stats = seq.stats();
    let index_one = asg.index.is_one();

    let slope_floor_ok = !index_one
        || seq.components().iter().zip(&asg.slopes).zip(&asg.tip_values).all(|((c, gs), a)| {
            gs.iter().enumerate().all(|(j, gj)| {
                *gj >= Rational::one() || (j == 1 && gj.is_zero() && a.is_one() && c.singular()[0] == 1)
            })
        });

    let black_root_family = seq.branch_count() == 1 && is_black_root_form(&seq.components()[0]);

    let branch_bound = !index_one || stats.b2_branches <= stats.m_total;
    let equality_case_matches =
        !index_one || (stats.b2_branches == stats.m_total) == seq.components().iter().all(is_equality_form);

    let (min_node, _) = asg
        .values
        .iter()
        .enumerate()
        .fold((0, &asg.values[0]), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    let (max_node, _) = asg
        .values
        .iter()
        .enumerate()
        .fold((0, &asg.values[0]), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    let min_v = &asg.values[min_node];
    let max_v = &asg.values[max_node];
    let extrema_ok = !index_one
        || (g.nodes.iter().any(|n| n.role == Role::Tip && asg.values[n.id] == *min_v)
            && g.nodes.iter().any(|n| n.role == Role::Root && asg.values[n.id] == *max_v));

    StructureReport {
        index_one,
        slope_floor_ok,
        black_root_family,
        branch_bound,
        equality_case_matches,
        b2_branches: stats.b2_branches,
        m_total: stats.m_total,
        min_node,
        max_node,
        extrema_ok,
    }
}

/// Error out unless all three solvers agree; used by the CLI before
/// reporting.
pub fn cross_checked(seq: &DlousskySequence) -> Result<MultiplicityAssignment> {
    let closed = solve_closed_form(seq);
    let chase = solve_chase(seq, &tip_multiplicity(seq));
    let oracle = solve_adjunction_system(seq, &graph::build_graph_structural(seq))?;
    if closed != oracle {
        return Err(Error::Internal(format!("closed form disagrees with adjunction system on {seq}")));
    }
    if chase.assignment != oracle || !chase.closure_defect.is_zero() {
        return Err(Error::Internal(format!("chase disagrees with adjunction system on {seq}")));
    }
    if closed.index != surface_index(seq) {
        return Err(Error::Internal(format!("index formula disagrees with denominators on {seq}")));
    }
    Ok(closed)
}
