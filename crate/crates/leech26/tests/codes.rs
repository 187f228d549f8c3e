use std::collections::BTreeMap;

use leech26::codes::*;

/// Words of a self-dual ternary code found by brute force as the dual of its generators.
fn dual_by_brute_force(gens: &[Vec<i8>], n: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    for k in 0..3usize.pow(n as u32) {
        let w: Vec<i8> = (0..n).map(|i| (k / 3usize.pow(i as u32) % 3) as i8 - 1).collect();
        let ok = gens.iter().all(|g| g.iter().zip(&w).map(|(a, b)| (a * b) as i64).sum::<i64>().rem_euclid(3) == 0);
        if ok {
            out.push(w);
        }
    }
    out
}

fn enumerator(words: &[Vec<i8>]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for w in words {
        *m.entry(w.iter().filter(|&&x| x != 0).count()).or_insert(0) += 1;
    }
    m
}

#[test]
fn tetracode_and_golay_sizes() {
    assert_eq!(tetracode().words().len(), 9);
    assert_eq!(golay12().words().len(), 729);
    assert_eq!(tetracode().min_weight(), 3);
    assert_eq!(golay12().min_weight(), 6);
}

#[test]
fn golay_enumerator() {
    let want = BTreeMap::from([(0, 1), (6, 264), (9, 440), (12, 24)]);
    assert_eq!(golay12().weight_enumerator(), want);
    let brute = dual_by_brute_force(&golay12().generators, 12);
    assert_eq!(brute.len(), 729);
    assert_eq!(enumerator(&brute), want);
    for w in &brute {
        assert!(golay12().contains(w));
    }
}

#[test]
fn tetracode_is_self_dual() {
    let brute = dual_by_brute_force(&tetracode().generators, 4);
    assert_eq!(enumerator(&brute), tetracode().weight_enumerator());
    assert!(tetracode().is_self_orthogonal());
}

#[test]
fn quadratic_residue_codes() {
    let c11 = qr_code(11).unwrap();
    assert_eq!(c11.length(), 12);
    assert_eq!(c11.dimension(), 6);
    assert_eq!(c11.weight_enumerator(), golay12().weight_enumerator());
    let c23 = qr_code(23).unwrap();
    assert_eq!(c23.length(), 24);
    assert_eq!(c23.weight_enumerator().keys().copied().find(|&w| w > 0), Some(8));
    assert_eq!(c23.weight_enumerator(), BTreeMap::from([(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]));
    assert!(qr_code(13).is_err());
}

#[test]
fn golay_minimum_weight_by_bounded_search() {
    // every nonzero combination of at most two generators already has weight ≥ 6
    let g = &golay12().generators;
    for i in 0..6 {
        for j in i..6 {
            for s in [1i8, -1] {
                let w: Vec<i8> = (0..12).map(|k| f3((g[i][k] + if i == j { 0 } else { s * g[j][k] }) as i64)).collect();
                assert!(w.iter().filter(|&&x| x != 0).count() >= 6);
            }
        }
    }
}
