//! Exact classical (local hidden variable) bounds.
//!
//! The maximum of a correlation expression over local strategies is attained
//! at a deterministic one, so it suffices to enumerate ±1 assignments for the
//! side with fewer settings; the other side answers each setting with the
//! sign of its column sum.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};
use crate::inequality::CorrelationInequality;

/// Largest number of settings on the enumerated side.
pub const MAX_ENUMERATED_SETTINGS: usize = 30;

/// Classical bound together with an optimal deterministic strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBound {
    /// `max Σ c[s][t]·a_s·b_t` over `a, b ∈ {±1}`.
    pub value: f64,
    /// Alice's optimal outcomes.
    pub witness_x: Vec<i8>,
    /// Bob's optimal outcomes.
    pub witness_y: Vec<i8>,
}

/// Enumerates deterministic strategies of the smaller side.
///
/// Among maximizers, the enumerated side's witness is the lexicographically
/// smallest with `+1` ordered before `−1`; the responding side plays `+1` on
/// a zero column sum. Integer coefficients are accumulated exactly in `i64`.
pub fn lhv_bound(ineq: &CorrelationInequality) -> Result<ClassicalBound> {
    let alice_enumerates = ineq.n_alice() <= ineq.n_bob();
    let (k, l) = if alice_enumerates {
        (ineq.n_alice(), ineq.n_bob())
    } else {
        (ineq.n_bob(), ineq.n_alice())
    };
    if k > MAX_ENUMERATED_SETTINGS {
        return Err(Error::TooLarge {
            what: "enumerated settings",
            size: k,
            limit: MAX_ENUMERATED_SETTINGS,
        });
    }
    // coefficients laid out as [enumerated][responder]
    let coeff = |e: usize, r: usize| {
        if alice_enumerates {
            ineq.coefficient(e, r)
        } else {
            ineq.coefficient(r, e)
        }
    };

    let (value, enumerated, response) = if ineq.is_integral() {
        let table: Vec<i64> = (0..k * l).map(|i| coeff(i / l, i % l) as i64).collect();
        let (v, e, r) = best_strategy(&table, k, l, 0i64);
        (v as f64, e, r)
    } else {
        let table: Vec<f64> = (0..k * l).map(|i| coeff(i / l, i % l)).collect();
        best_strategy(&table, k, l, 0.0)
    };

    let (witness_x, witness_y) = if alice_enumerates {
        (enumerated, response)
    } else {
        (response, enumerated)
    };
    Ok(ClassicalBound {
        value,
        witness_x,
        witness_y,
    })
}

fn best_strategy<T>(table: &[T], k: usize, l: usize, zero: T) -> (T, Vec<i8>, Vec<i8>)
where
    T: Copy + PartialOrd + Add<Output = T> + Neg<Output = T> + Mul<Output = T> + From<i8>,
{
    let abs = |x: T| if x < zero { -x } else { x };
    let mut sums = alloc::vec![zero; l];
    let mut best: Option<(T, u64)> = None;

    // x_0 = +1 without loss of generality (flipping every sign on both sides
    // leaves the value unchanged). Bit (k-1-e) set means x_e = -1, so
    // ascending masks walk the assignments in lexicographic order.
    let masks = 1u64 << (k - 1);
    for mask in 0..masks {
        sums.fill(zero);
        for e in 0..k {
            let sign = T::from(outcome(mask, k, e));
            for (acc, &c) in sums.iter_mut().zip(&table[e * l..(e + 1) * l]) {
                *acc = *acc + sign * c;
            }
        }
        let value = sums.iter().fold(zero, |acc, &s| acc + abs(s));
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, mask));
        }
    }

    let (value, mask) = best.expect("at least one assignment");
    let enumerated: Vec<i8> = (0..k).map(|e| outcome(mask, k, e)).collect();
    sums.fill(zero);
    for (e, &x) in enumerated.iter().enumerate() {
        for (acc, &c) in sums.iter_mut().zip(&table[e * l..(e + 1) * l]) {
            *acc = *acc + T::from(x) * c;
        }
    }
    let response = sums
        .iter()
        .map(|&s| if s < zero { -1 } else { 1 })
        .collect();
    (value, enumerated, response)
}

#[inline]
fn outcome(mask: u64, k: usize, e: usize) -> i8 {
    if (mask >> (k - 1 - e)) & 1 == 1 {
        -1
    } else {
        1
    }
}

/// `Σ c[s][t]·x_s·y_t` for a deterministic strategy.
pub fn strategy_value(ineq: &CorrelationInequality, x: &[i8], y: &[i8]) -> Result<f64> {
    ineq.check_counts(x.len(), y.len())?;
    let mut total = 0.0;
    for (s, &a) in x.iter().enumerate() {
        for (t, &b) in y.iter().enumerate() {
            total += ineq.coefficient(s, t) * f64::from(a) * f64::from(b);
        }
    }
    Ok(total)
}
