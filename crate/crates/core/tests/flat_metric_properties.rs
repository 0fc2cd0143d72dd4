use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triangle_finsler::flat_metric::{build_tube, check_degree_length, finsler_delta_eval, translation_length};
use triangle_finsler::spectral::enumerate_even_classes;
use triangle_finsler::triangle_group::{Gen, Presentation, SymbolicRep, Word};

fn complex() -> impl Strategy<Value = Complex64> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #[test]
    fn pointwise_norm_is_positively_homogeneous(mu in complex(), v in complex(), lambda in 0.01f64..100.0) {
        let base = finsler_delta_eval(mu, v);
        prop_assert!((finsler_delta_eval(mu, v * lambda) - lambda * base).abs() <= 1e-9 * (1.0 + lambda * base.abs()));
    }

    #[test]
    fn cubic_scaling_of_the_differential(mu in complex(), v in complex(), a in 0.1f64..10.0) {
        let base = finsler_delta_eval(mu, v);
        let scaled = finsler_delta_eval(mu * a.powi(3), v);
        prop_assert!((scaled - a * base).abs() <= 1e-9 * (1.0 + a * base.abs()));
    }

    #[test]
    fn pointwise_triangle_inequality(mu in complex(), v in complex(), w in complex()) {
        let lhs = finsler_delta_eval(mu, v + w);
        let rhs = finsler_delta_eval(mu, v) + finsler_delta_eval(mu, w);
        prop_assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn nonzero_vectors_have_positive_norm(mu in complex(), v in complex()) {
        prop_assume!(mu.norm() > 1e-3 && v.norm() > 1e-3);
        prop_assert!(finsler_delta_eval(mu, v) > 0.0);
    }
}

fn p444() -> Presentation {
    Presentation::new(4, 4, 4).unwrap()
}

fn random_reduced_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let mut gens: Vec<Gen> = Vec::with_capacity(len);
    while gens.len() < len {
        let g = Gen::ALL[rng.gen_range(0..3)];
        if gens.last() != Some(&g) {
            gens.push(g);
        }
    }
    Word::from_gens(gens)
}

#[test]
fn length_is_invariant_under_rotation() {
    let pres = p444();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..25 {
        let len = rng.gen_range(1..=10);
        let w = random_reduced_word(&mut rng, len);
        let base = translation_length(&pres, &w).unwrap();
        for k in 1..w.len() {
            assert_eq!(translation_length(&pres, &w.rotate(k)).unwrap(), base, "{w} rotated by {k}");
        }
    }
}

#[test]
fn reversed_paths_pay_the_complementary_weight() {
    let pres = p444();
    let patch = build_tube(&pres, &"cbcacbcacbcacbacbabcabab".parse().unwrap(), 2).unwrap();
    let edges = patch.directed_edges();
    let mut adj = vec![Vec::new(); patch.vertices().len()];
    for e in &edges {
        adj[e.from].push(e.to);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut path = vec![rng.gen_range(0..adj.len())];
        for _ in 0..rng.gen_range(1..30) {
            let here = *path.last().unwrap();
            if adj[here].is_empty() {
                break;
            }
            path.push(adj[here][rng.gen_range(0..adj[here].len())]);
        }
        let weight = |p: &[usize]| -> u32 { p.windows(2).map(|e| patch.weight(e[0], e[1]).unwrap()).sum() };
        let reversed: Vec<usize> = path.iter().rev().copied().collect();
        assert_eq!(weight(&path) + weight(&reversed), 3 * (path.len() as u32 - 1));
    }
}

#[test]
fn degrees_match_lengths_up_to_length_fourteen() {
    let pres = p444();
    let rep = SymbolicRep::new(pres).unwrap();
    let classes = enumerate_even_classes(&pres, 14);
    assert_eq!(classes.len(), 260);
    for w in &classes {
        let r = check_degree_length(&rep, w).unwrap();
        assert!(r.consistent, "{w}: {r:?}");
    }
}

#[test]
fn degrees_match_lengths_in_other_groups() {
    for (p, q, r, max_len) in [(3, 3, 4, 8), (5, 5, 5, 6), (3, 4, 5, 6)] {
        let pres = Presentation::new(p, q, r).unwrap();
        let rep = SymbolicRep::new(pres).unwrap();
        for w in enumerate_even_classes(&pres, max_len) {
            let report = check_degree_length(&rep, &w).unwrap();
            assert!(report.consistent, "{pres} {w}: {report:?}");
        }
    }
}

#[test]
fn non_geodesic_words_are_shortened_first() {
    let pres = p444();
    assert_eq!(translation_length(&pres, &"abababab".parse().unwrap()).unwrap(), 0);
    let w: Word = "abcb".parse().unwrap();
    let padded = w.concat(&"ab".parse::<Word>().unwrap().repeat(4));
    assert_eq!(
        translation_length(&pres, &padded).unwrap(),
        translation_length(&pres, &w).unwrap()
    );
}
