use taffy::braid::{cycle_type, BraidWord};
use taffy::burau::burau_minus_one;
use taffy::compile::compile_braid;
use taffy::error::TaffyError;
use taffy::loops::entropy;
use taffy::motion::{catalog, catalog_spec, mixograph, Frequency, MixographParams, RodMotionSpec};

fn compiled(name: &str) -> (RodMotionSpec, BraidWord) {
    let spec = catalog_spec(name).unwrap();
    let b = compile_braid(&spec, spec.period_fraction, 1024).unwrap();
    (spec, b)
}

fn same_set(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| (p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9))
}

#[test]
fn catalog_contents() {
    let cat = catalog();
    assert!(cat.len() >= 6);
    let counts = |name: &str| {
        let s = catalog_spec(name).unwrap();
        (s.n_rods(), s.n_fixed())
    };
    assert_eq!(counts("firchau"), (2, 0));
    assert_eq!(counts("standard-3-rod"), (3, 1));
    assert_eq!(counts("nitz"), (3, 0));
    assert_eq!(counts("standard-4-rod"), (4, 0));
    assert_eq!(counts("six-rod"), (6, 2));
    assert_eq!(counts("mixograph"), (7, 0));
    assert!(matches!(catalog_spec("nope"), Err(TaffyError::UnknownDevice(_))));
}

#[test]
fn standard_three_rod_starts_collinear() {
    let p = catalog_spec("standard-3-rod").unwrap().positions(0.0);
    assert_eq!(p.len(), 3);
    assert!(p.iter().all(|q| q[1].abs() < 1e-12));
    assert!(p[0][0] != p[1][0] && p[1][0] != p[2][0] && p[0][0] != p[2][0]);
}

#[test]
fn every_orbit_closes() {
    for spec in catalog() {
        assert!(same_set(&spec.positions(0.0), &spec.positions(1.0)), "{}", spec.name);
    }
}

#[test]
fn six_rod_half_period_swaps_pairs() {
    let spec = catalog_spec("six-rod").unwrap();
    let start = spec.positions(0.0);
    let half = spec.positions(0.5);
    for (i, j) in [(0, 3), (3, 0), (2, 5), (5, 2), (1, 1), (4, 4)] {
        assert!((half[i][0] - start[j][0]).abs() < 1e-12 && (half[i][1] - start[j][1]).abs() < 1e-12);
    }
}

#[test]
fn two_rod_device_does_not_stretch() {
    let (_, b) = compiled("firchau");
    assert_eq!(b.n_strands(), 2);
    // A pure twist: the rods never change order for good.
    assert_eq!(b.permutation(), vec![0, 1]);
    assert!(matches!(entropy(&b, 1e-4, 60), Err(TaffyError::TooFewStrands { .. })));
}

#[test]
fn figure_eight_is_golden() {
    let (_, b) = compiled("nitz");
    assert_eq!(burau_minus_one(&b).unwrap().char_poly().to_string(), "x^2-3x+1");
    // Conjugate to 1 -2: a cyclic rotation of the word.
    let target = BraidWord::parse("1 -2", 3).unwrap();
    let letters = b.letters();
    let rotations: Vec<Vec<i32>> = (0..letters.len())
        .map(|i| [&letters[i..], &letters[..i]].concat())
        .collect();
    assert!(rotations.iter().any(|r| r == target.letters()), "{b}");
    assert_eq!(cycle_type(&b.permutation()), vec![3]);
}

#[test]
fn standard_three_rod_is_silver() {
    let (_, b) = compiled("standard-3-rod");
    assert_eq!(burau_minus_one(&b).unwrap().char_poly().to_string(), "x^2-6x+1");
}

#[test]
fn four_rod_matches_three_rod() {
    let (_, b) = compiled("standard-4-rod");
    let p = burau_minus_one(&b).unwrap().char_poly();
    assert_eq!(p.dominant_quadratic_factor().unwrap().to_string(), "x^2-6x+1");
    let e = entropy(&b, 1e-6, 200).unwrap();
    assert!((e.value - (3.0 + 8f64.sqrt()).ln()).abs() < 1e-5);
}

#[test]
fn six_rod_braid() {
    let (_, b) = compiled("six-rod");
    assert_eq!(b.permutation(), vec![3, 1, 5, 0, 4, 2]);
    let e = entropy(&b, 1e-4, 60).unwrap();
    assert!((e.value - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-3);
    let p = burau_minus_one(&b).unwrap().char_poly();
    assert_eq!(p.dominant_quadratic_factor().unwrap().to_string(), "x^2-4x+1");
}

#[test]
fn mixograph_entropy() {
    let (_, b) = compiled("mixograph");
    assert_eq!(b.n_strands(), 7);
    let e = entropy(&b, 1e-4, 60).unwrap();
    assert!(e.converged);
    assert!((e.value - 4.1858f64.ln()).abs() < 1e-3, "{e:?}");
}

#[test]
fn mixograph_parameters_reproduce_bundled_spec() {
    let built = mixograph(MixographParams::default());
    let bundled = catalog_spec("mixograph").unwrap();
    assert_eq!(built.period_fraction, bundled.period_fraction);
    for t in [0.0, 0.05, 0.13, 0.5] {
        assert!(same_set(&built.positions(t), &bundled.positions(t)));
    }
}

#[test]
fn mixograph_lab_frame_rests_the_lid() {
    let lab = catalog_spec("mixograph").unwrap().in_rotating_frame(Frequency::from_integer(4));
    assert_eq!(lab.n_fixed(), 3);
    let rot = catalog_spec("mixograph").unwrap();
    assert!(same_set(&lab.positions(0.0), &rot.positions(0.0)));
}

#[test]
fn spec_json_round_trip() {
    for spec in catalog() {
        let back = RodMotionSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
    }
}

#[test]
fn spec_validation() {
    let base = catalog_spec("standard-3-rod").unwrap();
    let mut s = base.clone();
    s.rods[0].arms[0].frequency = Frequency::new(1, 2);
    assert!(matches!(s.validate(), Err(TaffyError::InvalidSpec(_))));
    let mut s = base.clone();
    s.period_fraction = Frequency::new(1, 2);
    assert!(matches!(s.validate(), Err(TaffyError::InvalidSpec(_))));
    let mut s = base.clone();
    s.rods[2] = s.rods[1].clone();
    assert!(matches!(s.validate(), Err(TaffyError::CoincidentRods(..))));
    let text = r#"{"name":"x","rods":[{"center":[0,0]},{"center":[1,0],"arms":[{"radius":0.2,"frequency":"3/1","phase":0}]}],"period_fraction":"1"}"#;
    let s = RodMotionSpec::from_json(text).unwrap();
    assert_eq!(s.rods[1].arms[0].frequency, Frequency::from_integer(3));
    assert!(RodMotionSpec::from_json(r#"{"name":"x","rods":[],"period_fraction":"1/0"}"#).is_err());
}

#[test]
fn sample_count_does_not_change_braid() {
    for spec in catalog() {
        let a = compile_braid(&spec, spec.period_fraction, 64).unwrap();
        let b = compile_braid(&spec, spec.period_fraction, 8192).unwrap();
        assert_eq!(a.commutation_normal_form(), b.commutation_normal_form(), "{}", spec.name);
    }
}
