use std::collections::BTreeSet;

use proptest::prelude::*;
use theta_core::{ClassKind, DivisorClass, PicardLattice};

/// Scan the box `|a| <= amax`, `|b_i| <= bmax` and keep the vectors with the
/// requested numerical invariants. Independent of the bounded search used by
/// `enumerate_classes`.
fn brute_force(degree: u32, kind: ClassKind, amax: i64, bmax: i64) -> Vec<DivisorClass> {
    let n = 9 - degree as usize;
    let (s, k) = kind.invariants();
    let mut out = Vec::new();
    let mut b = vec![-bmax; n];
    loop {
        let sum: i64 = b.iter().sum();
        let sq: i64 = b.iter().map(|x| x * x).sum();
        for a in -amax..=amax {
            // D.K = -3a - sum b, D.D = a^2 - sum b^2
            if -3 * a - sum == k && a * a - sq == s {
                let mut v = vec![a];
                v.extend_from_slice(&b);
                out.push(DivisorClass::new(v));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            if b[i] < bmax {
                b[i] += 1;
                break;
            }
            b[i] = -bmax;
            i += 1;
        }
    }
}

#[test]
fn root_counts_match_brute_force() {
    let l3 = PicardLattice::new(3).unwrap();
    let roots3 = l3.enumerate_classes(ClassKind::Root);
    assert_eq!(roots3, brute_force(3, ClassKind::Root, 4, 3));
    assert_eq!(roots3.len(), 72);

    let l2 = PicardLattice::new(2).unwrap();
    let roots2 = l2.enumerate_classes(ClassKind::Root);
    assert_eq!(roots2, brute_force(2, ClassKind::Root, 4, 3));
    assert_eq!(roots2.len(), 126);
}

#[test]
fn exceptional_counts_match_brute_force() {
    let l3 = PicardLattice::new(3).unwrap();
    let ex3 = l3.enumerate_classes(ClassKind::Exceptional);
    assert_eq!(ex3.len(), 27);
    assert_eq!(ex3, brute_force(3, ClassKind::Exceptional, 4, 3));
    let l2 = PicardLattice::new(2).unwrap();
    let ex2 = l2.enumerate_classes(ClassKind::Exceptional);
    assert_eq!(ex2.len(), 56);
    assert_eq!(ex2, brute_force(2, ClassKind::Exceptional, 4, 3));
}

#[test]
fn blowdown_counts() {
    let l3 = PicardLattice::new(3).unwrap();
    let bd3 = l3.enumerate_classes(ClassKind::BlowDown);
    assert_eq!(bd3.len(), 72);
    assert_eq!(bd3, brute_force(3, ClassKind::BlowDown, 6, 3));
    let l2 = PicardLattice::new(2).unwrap();
    assert_eq!(l2.enumerate_classes(ClassKind::BlowDown).len(), 576);
}

/// The ten coefficient families of the degree-2 blow-down list, as
/// `(a, sorted E-coefficients)` together with their sizes.
fn degree2_families() -> Vec<(i64, Vec<i64>, usize)> {
    vec![
        (1, vec![0, 0, 0, 0, 0, 0, 0], 1),
        (2, vec![-1, -1, -1, 0, 0, 0, 0], 35),
        (3, vec![-2, -1, -1, -1, -1, 0, 0], 105),
        (4, vec![-2, -2, -2, -1, -1, -1, 0], 140),
        (5, vec![-2, -2, -2, -2, -2, -2, 0], 7),
        (8, vec![-3, -3, -3, -3, -3, -3, -3], 1),
        (7, vec![-3, -3, -3, -3, -2, -2, -2], 35),
        (6, vec![-3, -3, -2, -2, -2, -2, -1], 105),
        (5, vec![-3, -2, -2, -2, -1, -1, -1], 140),
        (4, vec![-3, -1, -1, -1, -1, -1, -1], 7),
    ]
}

#[test]
fn blowdown_families_degree_two() {
    let lat = PicardLattice::new(2).unwrap();
    let all = lat.enumerate_classes(ClassKind::BlowDown);
    for (a, sig, size) in degree2_families() {
        let count = all
            .iter()
            .filter(|c| {
                let mut e = c.coeffs()[1..].to_vec();
                e.sort();
                c.degree() == a && e == sig
            })
            .count();
        assert_eq!(count, size, "family {a} {sig:?}");
    }
}

#[test]
fn geiser_swaps_upper_and_lower_families() {
    let lat = PicardLattice::new(2).unwrap();
    let all: BTreeSet<_> = lat.enumerate_classes(ClassKind::BlowDown).into_iter().collect();
    let upper: Vec<_> = all.iter().filter(|c| c.degree() <= 5 && c.coeffs()[1..].iter().all(|&b| b >= -2)).cloned().collect();
    assert_eq!(upper.len(), 288);
    for c in &upper {
        let g = lat.geiser(c).unwrap();
        assert!(all.contains(&g));
        assert!(!upper.contains(&g));
        assert_eq!(&lat.geiser(&g).unwrap(), c);
    }
}

#[test]
fn contracted_line_counts() {
    for (deg, expected) in [(2, 7), (3, 6)] {
        let lat = PicardLattice::new(deg).unwrap();
        for bd in lat.enumerate_classes(ClassKind::BlowDown) {
            let lines = lat.contracted_lines(&bd);
            assert_eq!(lines.len(), expected);
            for (i, a) in lines.iter().enumerate() {
                for b in &lines[i + 1..] {
                    assert_eq!(lat.pair(a, b).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn double_sixes() {
    let lat = PicardLattice::new(3).unwrap();
    let bds = lat.enumerate_classes(ClassKind::BlowDown);
    let mut orbits = BTreeSet::new();
    for b in &bds {
        let p = lat.double_six_partner(b).unwrap();
        assert_ne!(&p, b);
        assert_eq!(&lat.double_six_partner(&p).unwrap(), b);
        // the two systems contract complementary sixes: E_i <-> C_i pattern
        let mine = lat.contracted_lines(b);
        let theirs = lat.contracted_lines(&p);
        for (i, d) in mine.iter().enumerate() {
            let meets: Vec<_> = theirs.iter().map(|e| lat.pair(d, e).unwrap()).collect();
            assert_eq!(meets.iter().filter(|&&m| m == 0).count(), 1, "{i}");
            assert_eq!(meets.iter().filter(|&&m| m == 1).count(), 5);
        }
        orbits.insert(std::cmp::min(b.clone(), p));
    }
    assert_eq!(orbits.len(), 36);
}

#[test]
fn weyl_orbits_and_orders() {
    let l2 = PicardLattice::new(2).unwrap();
    let orbit = l2.weyl_orbit(&l2.exceptional(1)).unwrap();
    let lines: BTreeSet<_> = l2.enumerate_classes(ClassKind::Exceptional).into_iter().collect();
    assert_eq!(orbit, lines);
    assert_eq!(l2.weyl_order(), 2_903_040);
    assert_eq!(l2.weyl_order(), 576 * 5040);

    let l3 = PicardLattice::new(3).unwrap();
    assert_eq!(l3.weyl_order(), 51_840);
    // cross-check: transitive on the 72 blow-down classes, stabilizer of L is S_6
    let bd_orbit = l3.weyl_orbit(&l3.line()).unwrap();
    assert_eq!(bd_orbit.len(), 72);
    assert_eq!(72 * 720, 51_840);
    let roots: BTreeSet<_> = l3.enumerate_classes(ClassKind::Root).into_iter().collect();
    assert_eq!(l3.weyl_orbit(&l3.simple_roots()[0]).unwrap(), roots);
}

fn class_strategy(rank: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(-4i64..=4, rank).prop_map(DivisorClass::new)
}

proptest! {
    #[test]
    fn reflections_are_isometric_involutions(
        x in class_strategy(8),
        y in class_strategy(8),
        idx in 0usize..126,
    ) {
        let lat = PicardLattice::new(2).unwrap();
        let roots = lat.enumerate_classes(ClassKind::Root);
        let r = &roots[idx];
        let rx = lat.reflect(r, &x).unwrap();
        let ry = lat.reflect(r, &y).unwrap();
        prop_assert_eq!(lat.pair(&rx, &ry).unwrap(), lat.pair(&x, &y).unwrap());
        prop_assert_eq!(lat.reflect(r, &rx).unwrap(), x.clone());
        prop_assert_eq!(lat.reflect(r, &lat.canonical()).unwrap(), lat.canonical());
    }

    #[test]
    fn geiser_is_isometric_involution(x in class_strategy(8), y in class_strategy(8)) {
        let lat = PicardLattice::new(2).unwrap();
        let gx = lat.geiser(&x).unwrap();
        prop_assert_eq!(lat.pair(&gx, &lat.geiser(&y).unwrap()).unwrap(), lat.pair(&x, &y).unwrap());
        prop_assert_eq!(lat.geiser(&gx).unwrap(), x);
    }
}
