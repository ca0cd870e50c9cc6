//! Random automata for tests and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Afa, Kind};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::projection::Projection;
use crate::Rational;

/// A random affine vector of length `len` whose entries share a
/// denominator `d ≤ max_den` and have numerators in `[-d, d]`, except the
/// last one which fixes the sum.
pub fn random_affine_entries<R: Rng + ?Sized>(rng: &mut R, len: usize, max_den: i64) -> Vec<Rational> {
    assert!(len > 0 && max_den > 0);
    let d = rng.gen_range(1..=max_den);
    let mut nums: Vec<i64> = (0..len - 1).map(|_| rng.gen_range(-d..=d)).collect();
    nums.push(d - nums.iter().sum::<i64>());
    nums.into_iter()
        .map(|n| Rational::new(n.into(), d.into()))
        .collect()
}

pub fn random_affine_matrix<R: Rng + ?Sized>(rng: &mut R, size: usize, max_den: i64) -> AffineMatrix {
    let columns: Vec<Vec<Rational>> = (0..size).map(|_| random_affine_entries(rng, size, max_den)).collect();
    let rows = (0..size)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    AffineMatrix::new(rows).expect("columns sum to 1")
}

/// A random affine automaton with a random, possibly empty, accepting set.
pub fn random_afa<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: &[char], max_den: i64) -> Afa {
    let initial = AffineVector::new(random_affine_entries(rng, states, max_den)).expect("sums to 1");
    let transitions = alphabet
        .iter()
        .map(|&c| (c, random_affine_matrix(rng, states, max_den)))
        .collect();
    let mut indices: Vec<usize> = (0..states).collect();
    indices.shuffle(rng);
    let keep = rng.gen_range(0..=states);
    let accepting = Projection::new(states, indices.into_iter().take(keep)).expect("in range");
    Afa::new(Kind::Affine, alphabet.to_vec(), initial, transitions, accepting).expect("valid by construction")
}
