#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use taffy::braid::BraidWord;
use taffy::burau::{burau_minus_one, spectral_radius_bound};
use taffy::compile::{compile_braid, compile_braid_with_axis, DEFAULT_SAMPLES};
use taffy::loops::{entropy, EntropyEstimate, LoopCoords};
use taffy::matrix::IntMatrix;
use taffy::motion::{catalog, RodMotionSpec};

pub const TOL: f64 = 1e-4;
pub const MAX_ITER: usize = 200;

pub fn letter(n: usize) -> impl Strategy<Value = i32> {
    let m = (n - 1) as i32;
    (1..=m, any::<bool>()).prop_map(|(k, neg)| if neg { -k } else { k })
}

pub fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(n), 0..=max_len)
        .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
}

pub fn any_word(min_n: usize, max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (min_n..=max_n).prop_flat_map(move |n| word(n, max_len))
}

pub fn loop_coords(n: usize) -> impl Strategy<Value = LoopCoords> {
    let m = n - 2;
    (
        prop::collection::vec(-60i64..=60, m),
        prop::collection::vec(-60i64..=60, m),
    )
        .prop_filter("zero vector", |(a, b)| a.iter().chain(b).any(|&v| v != 0))
        .prop_map(|(a, b)| LoopCoords::from_i64(&a, &b).unwrap())
}

/// A loop on 3..=8 punctures with a valid generator index.
pub fn loop_and_letter() -> impl Strategy<Value = (LoopCoords, i32)> {
    (3usize..=8).prop_flat_map(|n| (loop_coords(n), letter(n)))
}

/// A loop on 4..=8 punctures with `k` such that `k + 1 <= n - 1`.
pub fn loop_and_adjacent_pair() -> impl Strategy<Value = (LoopCoords, i32)> {
    (4usize..=8).prop_flat_map(|n| (loop_coords(n), 1..=(n as i32 - 2)))
}

/// A loop on 5..=8 punctures with far-apart generators `j`, `k`.
pub fn loop_and_far_pair() -> impl Strategy<Value = (LoopCoords, i32, i32)> {
    (5usize..=8)
        .prop_flat_map(|n| {
            let m = n as i32 - 1;
            (loop_coords(n), 1..=m, 1..=m, any::<bool>(), any::<bool>())
        })
        .prop_filter("|j - k| >= 2", |(_, j, k, _, _)| (j - k).abs() >= 2)
        .prop_map(|(l, j, k, sj, sk)| (l, if sj { -j } else { j }, if sk { -k } else { k }))
}

pub fn pair_of_words() -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (3usize..=6).prop_flat_map(|n| (word(n, 12), word(n, 12)))
}

fn acted(l: &LoopCoords, letters: &[i32]) -> LoopCoords {
    let mut out = l.clone();
    for &k in letters {
        out.act(k).unwrap();
    }
    out
}

pub fn check_dynnikov_inverse((l, k): (LoopCoords, i32)) -> Result<(), TestCaseError> {
    prop_assert_eq!(acted(&l, &[k, -k]), l.clone());
    prop_assert_eq!(acted(&l, &[-k, k]), l);
    Ok(())
}

pub fn check_braid_relation((l, k): (LoopCoords, i32)) -> Result<(), TestCaseError> {
    prop_assert_eq!(acted(&l, &[k, k + 1, k]), acted(&l, &[k + 1, k, k + 1]));
    prop_assert_eq!(acted(&l, &[-k, -k - 1, -k]), acted(&l, &[-k - 1, -k, -k - 1]));
    Ok(())
}

pub fn check_far_commutation((l, j, k): (LoopCoords, i32, i32)) -> Result<(), TestCaseError> {
    prop_assert_eq!(acted(&l, &[j, k]), acted(&l, &[k, j]));
    Ok(())
}

pub fn check_burau_homomorphism((b, c): (BraidWord, BraidWord)) -> Result<(), TestCaseError> {
    let lhs = burau_minus_one(&b.concat(&c).unwrap()).unwrap();
    let rhs = &burau_minus_one(&b).unwrap() * &burau_minus_one(&c).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn check_burau_inverse(b: BraidWord) -> Result<(), TestCaseError> {
    let id = IntMatrix::identity(b.n_strands() - 1);
    prop_assert_eq!(burau_minus_one(&b.concat(&b.inverse()).unwrap()).unwrap(), id.clone());
    prop_assert_eq!(burau_minus_one(&b.inverse().concat(&b).unwrap()).unwrap(), id);
    Ok(())
}

/// Entropy estimate of a braid with clear exponential growth, or `None`.
pub fn growing(b: &BraidWord) -> Option<EntropyEstimate> {
    let e = entropy(b, TOL, MAX_ITER).ok()?;
    (e.converged && e.value > 0.1).then_some(e)
}

pub fn check_entropy_conjugation((b, g): (BraidWord, BraidWord)) -> Result<(), TestCaseError> {
    let Some(e) = growing(&b) else {
        return Err(TestCaseError::reject("no exponential growth"));
    };
    let conj = entropy(&b.conjugate_by(&g).unwrap(), TOL, MAX_ITER).unwrap();
    prop_assert!(conj.converged, "conjugate did not converge: {:?}", conj);
    prop_assert!(
        (e.value - conj.value).abs() < 3.0 * TOL,
        "{} vs {} for {} conjugated by {}",
        e.value,
        conj.value,
        b,
        g
    );
    Ok(())
}

pub fn check_entropy_power((b, k): (BraidWord, usize)) -> Result<(), TestCaseError> {
    let Some(e) = growing(&b) else {
        return Err(TestCaseError::reject("no exponential growth"));
    };
    let pow = entropy(&b.pow(k), TOL, MAX_ITER).unwrap();
    prop_assert!(
        (pow.value - k as f64 * e.value).abs() < 3.0 * TOL,
        "entropy({}^{}) = {} but {} * {}",
        b,
        k,
        pow.value,
        k,
        e.value
    );
    Ok(())
}

pub fn check_entropy_inverse(b: BraidWord) -> Result<(), TestCaseError> {
    let Some(e) = growing(&b) else {
        return Err(TestCaseError::reject("no exponential growth"));
    };
    let inv = entropy(&b.inverse(), TOL, MAX_ITER).unwrap();
    prop_assert!((inv.value - e.value).abs() < 3.0 * TOL, "{} vs {}", e.value, inv.value);
    Ok(())
}

pub fn devices() -> Vec<RodMotionSpec> {
    catalog()
}

fn strand_entropy(b: &BraidWord) -> f64 {
    if b.n_strands() < 3 {
        0.0
    } else {
        entropy(b, TOL, MAX_ITER).unwrap().value
    }
}

fn char_poly_of(b: &BraidWord) -> String {
    if b.n_strands() < 3 {
        String::new()
    } else {
        burau_minus_one(b).unwrap().char_poly().to_string()
    }
}

/// Doubling the starting sample count leaves the braid invariants alone.
pub fn check_sampling_robustness((i, extra): (usize, u32)) -> Result<(), TestCaseError> {
    let spec = &devices()[i];
    let base = DEFAULT_SAMPLES << extra;
    let b1 = compile_braid(spec, spec.period_fraction, base).unwrap();
    let b2 = compile_braid(spec, spec.period_fraction, 2 * base).unwrap();
    prop_assert_eq!(char_poly_of(&b1), char_poly_of(&b2), "{}", spec.name);
    prop_assert_eq!(b1.permutation(), b2.permutation(), "{}", spec.name);
    Ok(())
}

/// A rotated projection axis gives a conjugate braid.
pub fn check_projection_robustness((i, angle): (usize, f64)) -> Result<(), TestCaseError> {
    let spec = &devices()[i];
    let b0 = compile_braid(spec, spec.period_fraction, DEFAULT_SAMPLES).unwrap();
    let b1 = compile_braid_with_axis(spec, spec.period_fraction, DEFAULT_SAMPLES, angle).unwrap();
    let (e0, e1) = (strand_entropy(&b0), strand_entropy(&b1));
    prop_assert!((e0 - e1).abs() < 3.0 * TOL, "{}: {} vs {} at axis {}", spec.name, e0, e1, angle);
    prop_assert_eq!(
        taffy::braid::cycle_type(&b0.permutation()),
        taffy::braid::cycle_type(&b1.permutation()),
        "{}",
        spec.name
    );
    Ok(())
}

pub fn device_and_angle() -> impl Strategy<Value = (usize, f64)> {
    (0..devices().len(), 0.0..std::f64::consts::PI)
}

pub fn device_and_extra() -> impl Strategy<Value = (usize, u32)> {
    (0..devices().len(), 0u32..3)
}

/// Three-strand words whose Burau trace exceeds 2 in magnitude.
pub fn hyperbolic_three_strand(max_len: usize) -> impl Strategy<Value = BraidWord> {
    word(3, max_len).prop_filter("|trace| > 2", |b| {
        let t = burau_minus_one(b).unwrap().trace();
        t > BigInt::from(2) || t < BigInt::from(-2)
    })
}

/// Loop growth and the Burau spectral radius agree on three strands.
pub fn check_three_strand_oracle(b: BraidWord, within: f64) -> Result<(), TestCaseError> {
    let e = entropy(&b, 1e-12, 400).unwrap();
    let bound = spectral_radius_bound(&b).unwrap().ln();
    prop_assert!((e.value - bound).abs() < within, "{}: {} vs {}", b, e.value, bound);
    Ok(())
}
