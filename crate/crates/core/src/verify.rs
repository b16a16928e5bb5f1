//! Exhaustive cross-checks over all sequences up to a given `b2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::anticanonical::{self, MultiplicityAssignment};
use crate::forms;
use crate::germ;
use crate::graph::{self, Role};
use crate::rational::Rational;
use crate::sequence::{enumerate_sequences, DlousskySequence};

/// Failures kept per family; the count is always exact.
const MAX_REPORTED: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub examples: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub b2_max: usize,
    pub sequences: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<24} {:>8} {:>8}  status\n", "check", "cases", "failed");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<24} {:>8} {:>8}  {}\n",
                c.name,
                c.checked,
                c.failed,
                if c.passed() { "PASS" } else { "FAIL" }
            ));
            for e in &c.examples {
                out.push_str(&format!("    {}\n", e));
            }
        }
        out
    }
}

type Outcome = Vec<(&'static str, Option<String>)>;

fn check(name: &'static str, ok: bool, seq: &DlousskySequence, what: &str) -> (&'static str, Option<String>) {
    (name, (!ok).then(|| format!("{seq}: {what}")))
}

/// Identities that tie slopes, tips, roots and cycle values together.
pub fn structural_identities(seq: &DlousskySequence, asg: &MultiplicityAssignment) -> Vec<(&'static str, bool)> {
    let lay = graph::layout(seq);
    let one = Rational::one();
    let mut out = Vec::new();
    for (f, (comp, l)) in seq.components().iter().zip(&lay).enumerate() {
        let ks = comp.singular();
        let p = ks.len();
        let g = &asg.slopes[f];
        let v = &asg.values;
        let a = &asg.tip_values[f];
        let r = &asg.root_values[f];
        let a_at = |i: usize| &v[l.branch[i - 1]];
        let c_at = |j: usize| &v[l.cycle_ext(j)];

        let mut duality = true;
        for j in 0..=p / 2 {
            let idx: usize = ks[..2 * j].iter().skip(1).step_by(2).map(|&k| k as usize).sum();
            duality &= &one + &g[2 * j] == *c_at(idx);
        }
        for j in 0..p.div_ceil(2) {
            let idx: usize = ks[..=2 * j].iter().step_by(2).map(|&k| k as usize).sum();
            duality &= &one + &g[2 * j + 1] == *a_at(idx);
        }
        out.push(("duality", duality));

        let recursion = (1..p).all(|j| &g[j + 1] - &g[j - 1] == Rational::from_integer(ks[j].into()) * &g[j]);
        out.push(("slope_recursion", recursion));
        out.push(("slope_formula", *g == anticanonical::formula_slopes(comp, a)));

        let alpha = l.branch.len();
        let beta = l.root_index - 1;
        out.push(("root_from_slopes", *r == &g[p] + &g[p - 1] + &one));
        out.push(("root_from_ends", *r == a_at(alpha) + c_at(beta) - &one));
        out.push((
            "c0_slope",
            &g[1] + &one == Rational::from_integer(ks[0].into()) * (c_at(0) - &one),
        ));
        let m = comp.regular_len() as usize;
        let chain = (0..m.saturating_sub(1)).all(|i| r - c_at(beta + 1 + i) == Rational::from_integer(i.into()));
        out.push(("descending_chain", chain));

        let floor = !asg.index.is_one()
            || g.iter().enumerate().all(|(j, gj)| *gj >= one || (j == 1 && gj.is_zero() && a.is_one() && ks[0] == 1));
        out.push(("slope_floor", floor));
    }
    out.push(("positivity", asg.values.iter().all(|d| *d > Rational::zero())));
    out
}

fn check_sequence(seq: &DlousskySequence) -> Outcome {
    let mut out = Vec::new();
    let shift = graph::build_graph_shift(seq);
    let structural = graph::build_graph_structural(seq);
    out.push(check("builder_agreement", shift == structural, seq, "shift and structural graphs differ"));

    let closed = anticanonical::solve_closed_form(seq);
    let t = anticanonical::tip_multiplicity(seq);
    let chase = anticanonical::solve_chase(seq, &t);
    let oracle = anticanonical::solve_adjunction_system(seq, &structural);
    let oracle_ok = matches!(&oracle, Ok(o) if *o == closed && *o == chase.assignment) && chase.closure_defect.is_zero();
    out.push(check("oracle_equality", oracle_ok, seq, "solvers disagree"));

    let k: BigInt = seq.components().iter().map(|c| anticanonical::p_of(c) + 1u32).product();
    let km1 = &k - 1u32;
    let det_ok = graph::graph_determinant(&structural) == &km1 * &km1 && graph::is_negative_definite(&structural);
    out.push(check("determinant_law", det_ok, seq, "determinant or definiteness"));
    let lattice_ok = germ::lattice_invariants(seq).determinant == graph::graph_determinant(&structural);
    out.push(check("lattice_determinant", lattice_ok, seq, "lattice determinant differs"));

    let formula = anticanonical::surface_index(seq);
    let germ_idx = germ::germ_of(seq).map(|g| germ::germ_index(&g));
    let triple = formula == closed.index && germ_idx.as_ref() == Ok(&formula);
    out.push(check("index_agreement", triple, seq, "index formula, denominators and germ differ"));

    let rot_ok = (1..seq.branch_count()).all(|r| anticanonical::surface_index(&seq.rotated(r)) == formula);
    out.push(check("rotation_invariance", rot_ok, seq, "index changes under rotation"));

    let gcd_ok = if seq.branch_count() == 1 {
        germ::simple_germ(&seq.components()[0]).is_ok()
    } else {
        germ::germ_of(seq).is_ok()
    };
    out.push(check("germ_gcd", gcd_ok, seq, "gcd(j, k) law"));

    for (name, ok) in structural_identities(seq, &closed) {
        out.push(check("structural_identities", ok, seq, name));
    }

    let report = anticanonical::structure_checks(seq);
    out.push(check("branch_bound", report.branch_bound, seq, "b2(B) <= m"));
    out.push(check("extrema", report.extrema_ok, seq, "min at a tip, max at a root"));

    if seq.branch_count() == 1 && seq.components()[0].regular_len() == 1 {
        out.push(check(
            "black_root_census",
            report.index_one == report.black_root_family,
            seq,
            "index 1 iff [3 s_k 2]",
        ));
    }

    let weight: u64 = structural.nodes.iter().map(|n| (n.entry - 1) as u64).sum();
    let black = structural.nodes.iter().filter(|n| n.is_black());
    let j_sum: u64 = black.clone().map(|n| (n.entry - 2) as u64).sum();
    let white = structural.nodes.iter().filter(|n| !n.is_black()).count() as u64;
    let b = seq.b2() as u64;
    let m = seq.m_total();
    let count_ok = weight == 2 * b - m
        && j_sum + m == b
        && white == black.map(|n| (n.entry - 3) as u64).sum::<u64>() + m;
    out.push(check("counting_identities", count_ok, seq, "curve counts"));

    let roles_ok = structural.nodes.iter().filter(|n| n.role == Role::Root).count() == seq.branch_count()
        && structural.nodes.iter().filter(|n| n.role == Role::Tip).count() == seq.branch_count();
    out.push(check("roles", roles_ok, seq, "one tip and one root per branch"));
    out
}

fn forms_check() -> CheckResult {
    let mut checked = 0;
    let mut examples = Vec::new();
    let mut failed = 0;
    for n in 1..=6u32 {
        for code in 0..4u64.pow(n) {
            let xs: Vec<u64> = (0..n).map(|i| code / 4u64.pow(i) % 4 + 1).collect();
            checked += 1;
            let ok = forms::p_form(&xs) == forms::dloussky_poly_bruteforce(&xs)
                && (xs.len() < 3 || {
                    let (l, r) = forms::division_split(&xs).expect("n >= 3");
                    l == r
                });
            if !ok {
                failed += 1;
                if examples.len() < MAX_REPORTED {
                    examples.push(format!("{xs:?}"));
                }
            }
        }
    }
    CheckResult {
        name: "form_equivalence",
        checked,
        failed,
        examples,
    }
}

pub fn run(b2_max: usize) -> VerifyReport {
    let sequences: Vec<DlousskySequence> = (2..=b2_max).flat_map(enumerate_sequences).collect();
    let outcomes: Vec<Outcome> = sequences.par_iter().map(check_sequence).collect();

    let mut checks: Vec<CheckResult> = Vec::new();
    for outcome in outcomes {
        for (name, failure) in outcome {
            let pos = match checks.iter().position(|c| c.name == name) {
                Some(p) => p,
                None => {
                    checks.push(CheckResult {
                        name,
                        checked: 0,
                        failed: 0,
                        examples: Vec::new(),
                    });
                    checks.len() - 1
                }
            };
            let c = &mut checks[pos];
            c.checked += 1;
            if let Some(msg) = failure {
                c.failed += 1;
                if c.examples.len() < MAX_REPORTED {
                    c.examples.push(msg);
                }
            }
        }
    }
    checks.push(forms_check());
    VerifyReport {
        b2_max,
        sequences: sequences.len(),
        checks,
    }
}
