//! Exponents `(j, s, k)` of the contracting germ, lattice invariants and
//! moduli dimensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::anticanonical::{self, p_of};
use crate::error::{Error, Result};
use crate::forms::p_form;
use crate::rational::Rational;
use crate::sequence::{DlousskySequence, SimpleComponent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermData {
    pub j: BigInt,
    pub s: BigInt,
    pub k: BigInt,
    /// Nonzero coefficients of the polynomial part in the pure normal form.
    pub pure_coefficient_count: u64,
    /// `s k / (k - 1)` when it is an integer.
    pub sk_over_km1_integral: Option<BigInt>,
}

impl GermData {
    fn new(j: BigInt, s: BigInt, k: BigInt, pure_coefficient_count: u64) -> Self {
        let km1 = &k - 1u32;
        let sk = &s * &k;
        let sk_over_km1_integral = if !km1.is_zero() && (&sk % &km1).is_zero() { Some(sk / km1) } else { None };
        GermData {
            j,
            s,
            k,
            pure_coefficient_count,
            sk_over_km1_integral,
        }
    }

    /// Coefficient count when the extra `c xi^{sk/(k-1)}` term is present.
    pub fn non_pure_coefficient_count(&self) -> u64 {
        self.pure_coefficient_count + 1
    }
}

/// `k = P(k_0..) + 1`, `j = P(k_1..) + 1`, `s = j + m - 1`.
pub fn simple_germ(comp: &SimpleComponent) -> Result<GermData> {
    let ks: Vec<u64> = comp.singular().iter().map(|&k| k as u64).collect();
    let k = p_form(&ks) + 1u32;
    let j = p_form(&ks[1..]) + 1u32;
    let m = comp.regular_len();
    let s = &j + m - 1u32;
    let g = j.gcd(&k);
    if !g.is_one() {
        return Err(Error::GcdViolation { gcd: g.to_string() });
    }
    Ok(GermData::new(j, s, k, m as u64))
}

/// `k = k_1 k_2`, `j = j_1 k_2`, `s = s_1 k_2 + s_2`.
pub fn compose_germs(g1: &GermData, g2: &GermData) -> GermData {
    GermData::new(
        &g1.j * &g2.k,
        &g1.s * &g2.k + &g2.s,
        &g1.k * &g2.k,
        g1.pure_coefficient_count + g2.pure_coefficient_count,
    )
}

/// Left fold of the simple germs in stored component order.
pub fn germ_of(seq: &DlousskySequence) -> Result<GermData> {
    let mut parts = seq.components().iter().map(simple_germ);
    let first = parts.next().expect("a sequence has at least one component")?;
    let g = parts.try_fold(first, |acc, next| Ok::<_, Error>(compose_germs(&acc, &next?)))?;
    if seq.branch_count() > 1 && g.j.gcd(&g.k).is_one() {
        return Err(Error::Internal(format!("gcd(j, k) = 1 for the composed germ of {seq}")));
    }
    Ok(g)
}

/// `(k - 1) / gcd(k - 1, s)`.
pub fn germ_index(g: &GermData) -> BigInt {
    let km1 = &g.k - 1u32;
    let d = km1.gcd(&g.s);
    km1 / d
}

/// `t = s / (k - 1)`.
pub fn germ_tip(g: &GermData) -> Rational {
    Rational::new(g.s.clone(), &g.k - 1u32)
}

/// For one branch: `t = s/(k-1)`, `r = sk/(k-1) + 1 - j`, `s = (k-1) t` and
/// `sk/(k-1) = k t`, against the multiplicities.
pub fn germ_relations_check(seq: &DlousskySequence) -> Result<bool> {
    if seq.branch_count() != 1 {
        return Err(Error::InvalidArgument("germ relations are stated for one branch".into()));
    }
    let g = germ_of(seq)?;
    let asg = anticanonical::solve_closed_form(seq);
    let t = &asg.tip_values[0];
    let r = &asg.root_values[0];
    let k = Rational::from_integer(g.k.clone());
    let km1 = &k - Rational::one();
    let s = Rational::from_integer(g.s.clone());
    let j = Rational::from_integer(g.j.clone());
    let sk = &s * &k / &km1;
    Ok(*t == &s / &km1 && *r == &sk + Rational::one() - j && s == &km1 * t && sk == &k * t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub sublattice_index: BigInt,
    pub determinant: BigInt,
    pub branch_determinants: Vec<BigInt>,
    pub twisting_coefficient: BigInt,
}

pub fn lattice_invariants(seq: &DlousskySequence) -> LatticeReport {
    let branch_determinants: Vec<BigInt> = seq.components().iter().map(|c| p_of(c) + 1u32).collect();
    let k: BigInt = branch_determinants.iter().product();
    let sublattice_index = &k - 1u32;
    LatticeReport {
        determinant: &sublattice_index * &sublattice_index,
        sublattice_index,
        branch_determinants,
        twisting_coefficient: k,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub delta: u8,
    pub epsilon: u8,
    pub log_dim: u64,
    pub fixed_dim: u64,
}

/// `log_dim = m + delta`, `fixed_dim = b + m - epsilon`; `epsilon = 1` iff
/// `delta = 1` and some tip has multiplicity 1.
pub fn moduli_dimensions(seq: &DlousskySequence, delta: u8) -> Result<ModuliReport> {
    if delta > 1 {
        return Err(Error::InvalidArgument(format!("delta must be 0 or 1, got {delta}")));
    }
    let index = anticanonical::surface_index(seq);
    if delta == 1 && !index.is_one() {
        return Err(Error::DeltaInconsistent { index: index.to_string() });
    }
    let epsilon = if delta == 1 {
        let asg = anticanonical::solve_closed_form(seq);
        let min_tip = asg.tip_values.iter().min().expect("at least one tip");
        u8::from(min_tip.is_one())
    } else {
        0
    };
    let m = seq.m_total();
    Ok(ModuliReport {
        delta,
        epsilon,
        log_dim: m + delta as u64,
        fixed_dim: seq.b2() as u64 + m - epsilon as u64,
    })
}

/// `sum over nodes of (entry - 1)`, which equals `2 b - m`.
pub fn curve_weight_sum(seq: &DlousskySequence) -> u64 {
    seq.expand().iter().map(|&e| (e - 1) as u64).sum()
}

/// Small germ exponents as machine integers, for display.
pub fn exponents_u64(g: &GermData) -> Option<(u64, u64, u64)> {
    Some((g.j.to_u64()?, g.s.to_u64()?, g.k.to_u64()?))
}
