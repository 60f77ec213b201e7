use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_core::theta_f2::*;
use theta_core::{ClassKind, DivisorClass, PicardLattice};

#[test]
fn riemann_mumford_genus_three_model() {
    let all = EvenSubsetClass::all();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let theta = all[rng.gen_range(0..all.len())];
        for &a in &all {
            for &b in &all {
                let lhs = q_theta(theta, a.add(b)) ^ q_theta(theta, a) ^ q_theta(theta, b);
                assert_eq!(lhs, weil_pair(a, b), "theta {theta} a {a} b {b}");
            }
        }
    }
}

#[test]
fn syzygy_is_symmetric() {
    let odd = EvenSubsetClass::odd();
    for (i, &a) in odd.iter().enumerate() {
        for (j, &b) in odd.iter().enumerate().skip(i + 1) {
            for &c in &odd[j + 1..] {
                let s = syzygetic(a, b, c).unwrap();
                for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    assert_eq!(syzygetic(x, y, z).unwrap(), s);
                }
            }
        }
    }
}

#[test]
fn aronhold_sets() {
    let sets = enumerate_aronhold();
    assert_eq!(sets.len(), 288);
    let standard: Vec<_> = (1..=7)
        .map(|i| EvenSubsetClass::from_indices(&[i, 8]).unwrap())
        .collect();
    let mut standard_sorted = standard.clone();
    standard_sorted.sort();
    assert!(sets.iter().any(|s| s.as_slice() == standard_sorted.as_slice()));

    let mut fibers: BTreeMap<EvenSubsetClass, usize> = BTreeMap::new();
    for s in &sets {
        let e = even_theta_of_aronhold(s).unwrap();
        assert_eq!(e.parity(), 0);
        *fibers.entry(e).or_default() += 1;
    }
    assert_eq!(fibers.len(), 36);
    assert!(fibers.values().all(|&n| n == 8));
}

#[test]
fn aronhold_six_subsets_extend() {
    let sets = enumerate_aronhold();
    for s in &sets {
        for drop in 0..7 {
            let six: Vec<_> = s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, t)| *t).collect();
            let extensions = sets
                .iter()
                .filter(|t| six.iter().all(|x| t.contains(x)))
                .count();
            assert!(extensions >= 1);
        }
    }
}

#[test]
fn blowdown_labels() {
    let lat = PicardLattice::new(2).unwrap();
    let mut fibers: BTreeMap<EvenSubsetClass, usize> = BTreeMap::new();
    for bd in lat.enumerate_classes(ClassKind::BlowDown) {
        let set = aronhold_of_blowdown(&lat, &bd).unwrap();
        assert!(is_aronhold(&set));
        let e = even_theta_of_blowdown(&lat, &bd).unwrap();
        let g = lat.geiser(&bd).unwrap();
        assert_eq!(aronhold_of_blowdown(&lat, &g).unwrap(), set);
        assert_eq!(even_theta_of_blowdown(&lat, &g).unwrap(), e);
        *fibers.entry(e).or_default() += 1;
    }
    assert_eq!(fibers.len(), 36);
    assert!(fibers.values().all(|&n| n == 16));
}

fn permute_class(c: &DivisorClass, i: usize, j: usize) -> DivisorClass {
    let mut v = c.coeffs().to_vec();
    v.swap(i, j);
    DivisorClass::new(v)
}

fn permute_theta(t: EvenSubsetClass, i: usize, j: usize) -> EvenSubsetClass {
    let ix: Vec<usize> = t
        .indices()
        .into_iter()
        .map(|k| if k == i { j } else if k == j { i } else { k })
        .collect();
    EvenSubsetClass::from_indices(&ix).unwrap()
}

#[test]
fn blowdown_labels_commute_with_transpositions() {
    let lat = PicardLattice::new(2).unwrap();
    for bd in lat.enumerate_classes(ClassKind::BlowDown) {
        let e = even_theta_of_blowdown(&lat, &bd).unwrap();
        for i in 1..=7 {
            for j in (i + 1)..=7 {
                let moved = permute_class(&bd, i, j);
                assert_eq!(even_theta_of_blowdown(&lat, &moved).unwrap(), permute_theta(e, i, j));
            }
        }
    }
}

#[test]
fn zero_counts_match_formula() {
    for genus in 1..=7usize {
        for arf in [0u8, 1] {
            let q = QuadraticSpace::with_arf(genus, arf).unwrap();
            assert_eq!(q.arf(), Some(arf));
            let big = 1u64 << (2 * genus - 1);
            let small = 1u64 << (genus - 1);
            let expected = if arf == 0 { big + small } else { big - small };
            assert_eq!(q.count_zeros(), expected, "genus {genus} arf {arf}");
        }
    }
}

#[test]
fn twisting_by_a_zero_keeps_arf() {
    for genus in 1..=6usize {
        for arf in [0u8, 1] {
            let q = QuadraticSpace::with_arf(genus, arf).unwrap();
            for alpha in 0..(1u64 << (2 * genus)) {
                if q.eval(alpha) == 0 {
                    assert_eq!(q.twist(alpha).arf(), Some(arf));
                }
            }
        }
    }
}

#[test]
fn conic_pairs() {
    let expected = ConicPairCount {
        quotient_zeros: 496,
        z: 990,
        pairs: 495,
    };
    assert_eq!(count_conic_pairs(0), expected);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let (q1, eta) = random_admissible(6, &mut rng);
        assert_eq!(count_conic_pairs_with(&q1, eta).unwrap(), expected);
    }
    let even = QuadraticSpace::with_arf(6, 0).unwrap();
    assert!(count_conic_pairs_with(&even, 1).is_err());
}

fn random_form(dim: usize) -> impl Strategy<Value = QuadraticSpace> {
    (
        prop::collection::vec(any::<u64>(), dim),
        any::<u64>(),
    )
        .prop_map(move |(rows, linear)| {
            let mask = (1u64 << dim) - 1;
            let upper = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| r & mask & !((2u64 << i) - 1))
                .collect();
            QuadraticSpace::from_parts(dim, upper, linear).unwrap()
        })
}

proptest! {
    #[test]
    fn riemann_mumford_random_forms(
        (q, a, b) in (1usize..=12).prop_flat_map(|d| (random_form(d), 0..(1u64 << d), 0..(1u64 << d)))
    ) {
        prop_assert_eq!(q.eval(a ^ b) ^ q.eval(a) ^ q.eval(b), q.pairing(a, b));
    }

    #[test]
    fn arf_decides_majority(q in (1usize..=5).prop_flat_map(|g| random_form(2 * g))) {
        let total = 1u64 << q.dim();
        let zeros = q.count_zeros();
        match q.arf() {
            Some(0) => prop_assert!(zeros > total / 2),
            Some(1) => prop_assert!(zeros < total / 2),
            _ => {}
        }
    }
}
