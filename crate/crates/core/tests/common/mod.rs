#![allow(dead_code)]

use std::sync::Arc;

use germlab::polyring::{integer, rational};
use germlab::{Monomial, Polynomial, Rational, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

/// Mersenne prime used by the modular oracle.
pub const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn reduce_bigint(v: &BigInt) -> u64 {
    let m = v.mod_floor(&BigInt::from(P));
    m.to_u64().expect("reduced")
}

/// Image of a rational modulo `P`; panics if the denominator vanishes.
pub fn rational_mod_p(c: &Rational) -> u64 {
    let d = reduce_bigint(c.denom());
    assert!(d != 0, "denominator divisible by the modulus");
    mulmod(reduce_bigint(c.numer()), invmod(d))
}

/// All exponent vectors of total degree `< d`, in a fixed order.
pub fn monomials_below(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..d {
        let mut cur = vec![0u32; nvars];
        layer(&mut out, &mut cur, 0, total);
    }
    out
}

fn layer(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        layer(out, cur, i + 1, left - e);
    }
}

/// `dim Q[x]/(I + m^d)` computed as a rank modulo `P` of the dense
/// Macaulay matrix of all `m * g` with `deg m < d`.
pub fn truncated_dim_mod_p(gens: &[Polynomial], nvars: usize, d: u32) -> usize {
    let cols = monomials_below(nvars, d);
    let index: std::collections::HashMap<Vec<u32>, usize> =
        cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let terms: Vec<(Vec<u32>, u64)> = g
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), rational_mod_p(c)))
            .collect();
        for shift in &cols {
            let mut row = vec![0u64; cols.len()];
            let mut any = false;
            for (m, c) in &terms {
                let e: Vec<u32> = m.iter().zip(shift).map(|(a, b)| a + b).collect();
                if let Some(&k) = index.get(&e) {
                    row[k] = (row[k] + c) % P;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    cols.len() - rank_mod_p(rows, cols.len())
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = invmod(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = mulmod(*v, inv);
        }
        let prow = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, p) in row.iter_mut().zip(&prow).skip(col) {
                *v = (*v + P - mulmod(f, *p)) % P;
            }
        }
        rank += 1;
    }
    rank
}

/// Colength of an ideal from the modular Macaulay oracle: the first `D`
/// with `dim(D) == dim(D + 1)`, or `None` below `cap`.
pub fn oracle_colength_mod_p(gens: &[Polynomial], nvars: usize, cap: u32) -> Option<u64> {
    let mut prev = truncated_dim_mod_p(gens, nvars, 1);
    for d in 2..=cap {
        let cur = truncated_dim_mod_p(gens, nvars, d);
        if cur == prev {
            return Some(cur as u64);
        }
        prev = cur;
    }
    None
}

/// Milnor number from the modular Macaulay oracle.
pub fn oracle_mu_mod_p(f: &Polynomial, cap: u32) -> Option<u64> {
    let n = f.nvars();
    let jac: Vec<Polynomial> = (0..n)
        .map(|i| f.partial_derivative(i).unwrap())
        .filter(|d| !d.is_zero())
        .collect();
    oracle_colength_mod_p(&jac, n, cap)
}

/// Colength of a monomial ideal by counting standard monomials degree by
/// degree. The standard monomials form an order ideal, so an empty layer
/// ends the count. `None` if no empty layer appears below `max_degree`.
pub fn brute_colength(gens: &[Monomial], nvars: usize, max_degree: u32) -> Option<u64> {
    let mut count = 0;
    for total in 0..=max_degree {
        let mut layer_monos = Vec::new();
        let mut cur = vec![0u32; nvars];
        layer(&mut layer_monos, &mut cur, 0, total);
        let standard = layer_monos
            .iter()
            .filter(|e| {
                !gens
                    .iter()
                    .any(|g| g.exponents().iter().zip(e.iter()).all(|(a, b)| a <= b))
            })
            .count();
        if standard == 0 {
            return Some(count);
        }
        count += standard as u64;
    }
    None
}

pub fn ring(n: usize) -> Arc<Ring> {
    Ring::standard(n).unwrap()
}

/// Random polynomial with small integer coefficients.
pub fn poly_strategy(
    ring: Arc<Ring>,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), integer(c))),
        )
    })
}

/// Random polynomial with rational coefficients.
pub fn rational_poly_strategy(
    ring: Arc<Ring>,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(e, a, b)| (Monomial::from_exponents(&e), rational(a, b))),
        )
    })
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| rational(a, b))
}

pub fn nonzero_rational_strategy() -> impl Strategy<Value = Rational> {
    rational_strategy().prop_filter("nonzero", |c| !c.is_zero())
}

/// Invertible `n x n` matrix with small integer entries, as a linear map.
pub fn linear_map_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_filter("invertible", |m| determinant(m) != 0)
}

pub fn determinant(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unimplemented!("small dimensions only"),
    }
}

/// Components `x_i -> sum_j m[i][j] x_j`.
pub fn linear_components(ring: &Arc<Ring>, m: &[Vec<i64>]) -> Vec<Polynomial> {
    m.iter()
        .map(|row| {
            Polynomial::from_terms(
                ring,
                row.iter()
                    .enumerate()
                    .map(|(j, &c)| (Monomial::var(ring.nvars(), j, 1), integer(c))),
            )
        })
        .collect()
}
