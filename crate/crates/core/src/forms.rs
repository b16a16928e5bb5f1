//! Continuant-style forms `f` and `P` and the subset-sum polynomial that
//! independently reproduces `P`.
//!
//! `f(X_1..X_n) = X_n f(X_1..X_{n-1}) + f(X_1..X_{n-2})` with `f() = 1`,
//! `f(X_1) = X_1`. `P(X_1..X_n) = X_n f(X_1..X_{n-1}) + P(X_1..X_{n-1})`
//! with `P() = 0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn f_form(xs: &[u64]) -> BigInt {
    // (f over xs[..i-1], f over xs[..i])
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for &x in xs {
        let next = &cur * x + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

pub fn p_form(xs: &[u64]) -> BigInt {
    let mut f_prev = BigInt::zero();
    let mut f_cur = BigInt::one();
    let mut p = BigInt::zero();
    for &x in xs {
        p += &f_cur * x;
        let next = &f_cur * x + &f_prev;
        f_prev = std::mem::replace(&mut f_cur, next);
    }
    p
}

/// Sum over `B ⊂ {1..n}` of `prod_{j not in B} X_j`, where `B` runs over the
/// disjoint unions of the blocks `{n}, {1,2}, .., {n-1,n}` other than the
/// full cover. Exponential in `n`.
pub fn dloussky_poly_bruteforce(xs: &[u64]) -> BigInt {
    let n = xs.len();
    assert!((1..64).contains(&n), "argument count out of range");
    // block bitmasks over positions 0..n
    let mut blocks: Vec<u64> = (0..n - 1).map(|i| 0b11u64 << i).collect();
    blocks.push(1u64 << (n - 1));

    let mut unions = BTreeSet::new();
    for family in 0u64..(1u64 << blocks.len()) {
        let mut union = 0u64;
        let mut disjoint = true;
        for (bi, &mask) in blocks.iter().enumerate() {
            if family >> bi & 1 == 1 {
                if union & mask != 0 {
                    disjoint = false;
                    break;
                }
                union |= mask;
            }
        }
        if disjoint {
            unions.insert(union);
        }
    }
    unions.remove(&((1u64 << n) - 1));

    unions
        .into_iter()
        .map(|b| {
            xs.iter()
                .enumerate()
                .filter(|(j, _)| b >> j & 1 == 0)
                .fold(BigInt::one(), |acc, (_, &x)| acc * x)
        })
        .sum()
}

/// Both sides of `P(X_1..X_n) = X_1 (P(X_2..X_n) + 1) + P(X_3..X_n)`.
pub fn division_split(xs: &[u64]) -> Result<(BigInt, BigInt)> {
    if xs.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "division identity needs at least 3 arguments, got {}",
            xs.len()
        )));
    }
    let lhs = p_form(xs);
    let rhs = (p_form(&xs[1..]) + 1u32) * xs[0] + p_form(&xs[2..]);
    Ok((lhs, rhs))
}
