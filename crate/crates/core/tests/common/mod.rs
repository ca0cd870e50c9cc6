#![allow(dead_code)]

use affine_automata::{Afa, Kind, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

pub const AB: [char; 2] = ['a', 'b'];

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Column of `len` entries over a common denominator `d ≤ 8`, summing to 1.
pub fn affine_column(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    (1i64..=8).prop_flat_map(move |d| {
        prop::collection::vec(-d..=d, len - 1).prop_map(move |mut nums| {
            nums.push(d - nums.iter().sum::<i64>());
            nums.into_iter().map(|n| q(n, d)).collect()
        })
    })
}

pub fn affine_matrix(size: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(affine_column(size), size).prop_map(move |cols| {
        (0..size)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    })
}

pub fn afa_with(states: usize, alphabet: &'static [char]) -> impl Strategy<Value = Afa> {
    (
        affine_column(states),
        prop::collection::vec(affine_matrix(states), alphabet.len()),
        prop::collection::vec(any::<bool>(), states),
    )
        .prop_map(move |(init, mats, acc)| {
            let accepting = acc.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i);
            Afa::from_rows(Kind::Affine, alphabet, init, mats, accepting).unwrap()
        })
}

/// Random affine automaton over `{a, b}` with 2 or 3 states.
pub fn small_afa() -> impl Strategy<Value = Afa> {
    prop_oneof![afa_with(2, &AB), afa_with(3, &AB)]
}

pub fn word(max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop_oneof![Just('a'), Just('b')], 0..=max_len)
        .prop_map(|cs| cs.into_iter().collect())
}

pub fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| q(n, d)))
}

/// Reference evaluation on dense row-major grids, independent of the
/// library's sparse storage: `v ← M v` per symbol, then `|P v| / |v|`.
pub fn dense_value(a: &Afa, word: &str) -> Rational {
    let v = dense_run(a, word);
    let total = v.iter().fold(Rational::zero(), |s, x| s + x.abs());
    let acc = a
        .accepting()
        .accepting()
        .iter()
        .fold(Rational::zero(), |s, &i| s + v[i].abs());
    acc / total
}

pub fn dense_run(a: &Afa, word: &str) -> Vec<Rational> {
    let mut v = a.initial().entries().to_vec();
    for c in word.chars() {
        let rows = a.transition(c).unwrap().rows();
        v = rows
            .iter()
            .map(|row| row.iter().zip(&v).fold(Rational::zero(), |s, (m, x)| s + m * x))
            .collect();
    }
    v
}

/// Kronecker product of row-major grids, index `i * n + j`.
pub fn kron(x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let (m, n) = (x.len(), y.len());
    let mut out = vec![vec![Rational::zero(); m * n]; m * n];
    for i in 0..m {
        for j in 0..m {
            for k in 0..n {
                for l in 0..n {
                    out[i * n + k][j * n + l] = &x[i][j] * &y[k][l];
                }
            }
        }
    }
    out
}
