//! Golden data for every bundled knot: classical invariants, augmentation
//! counts, Poincare multisets, and pipeline determinism.

use lch_core::augment::{brute_force_augmentations, enumerate_augmentations};
use lch_core::dga::{action_certificate, ActionCertificate};
use lch_core::front::{classical_invariants, dga_from_plat, parse_plat};
use lch_core::library;
use lch_core::linhom::{linearized_boundary, poincare_polynomial};

const LIMIT: usize = 30;

#[test]
fn every_entry_matches_its_golden_data() {
    for entry in library::entries() {
        let front = parse_plat(entry.plat).expect(entry.id);
        let (tb, rot) = classical_invariants(&front).expect(entry.id);
        assert_eq!((tb, rot), (entry.expected.tb, entry.expected.rot), "{}", entry.id);

        let dga = dga_from_plat(entry.plat).expect(entry.id);
        assert!(dga.check_d_squared().is_ok(), "{}", entry.id);
        assert!(dga.check_grading().is_ok(), "{}", entry.id);
        assert!(
            matches!(action_certificate(&dga), ActionCertificate::Feasible { .. }),
            "{}",
            entry.id
        );

        let set = enumerate_augmentations(&dga, LIMIT).expect(entry.id);
        assert_eq!(set.augs.len(), entry.expected.n_augmentations, "{}", entry.id);
        assert_eq!(
            set,
            brute_force_augmentations(&dga, LIMIT).unwrap(),
            "{}",
            entry.id
        );

        let mut polys: Vec<String> = set
            .augs
            .iter()
            .map(|e| {
                let dims = linearized_boundary(&dga, e).unwrap().homology_dims();
                poincare_polynomial(&dims).to_string()
            })
            .collect();
        polys.sort();
        let mut expected: Vec<&str> = entry.expected.poincare.to_vec();
        expected.sort_unstable();
        assert_eq!(polys, expected, "{}", entry.id);
    }
}

#[test]
fn generator_counts_and_hash_stability() {
    for entry in library::entries() {
        let d1 = dga_from_plat(entry.plat).unwrap();
        let d2 = dga_from_plat(entry.plat).unwrap();
        assert_eq!(d1.content_hash(), d2.content_hash(), "{}", entry.id);
        assert_eq!(d1.to_json_string(), d2.to_json_string(), "{}", entry.id);
        // Degree-1 generators include one chord per right cusp.
        let cusps = entry
            .plat
            .split_whitespace()
            .filter(|t| t.starts_with('C'))
            .count();
        let deg1 = d1.generators().filter(|g| g.degree == 1).count();
        assert!(deg1 >= cusps, "{}", entry.id);
    }
}

#[test]
fn front_built_trefoil_equals_the_reference_dga() {
    let built = dga_from_plat(library::entry("trefoil").unwrap().plat).unwrap();
    assert_eq!(built, library::trefoil_dga());
}

#[test]
fn chekanov_pair_separation() {
    // The two bundled presentations of the same smooth knot with the same
    // classical invariants have different multisets (indeed different sets)
    // of linearized Poincare polynomials.
    let polys = |id: &str| -> Vec<String> {
        let dga = dga_from_plat(library::entry(id).unwrap().plat).unwrap();
        let mut v: Vec<String> = enumerate_augmentations(&dga, LIMIT)
            .unwrap()
            .augs
            .iter()
            .map(|e| {
                poincare_polynomial(&linearized_boundary(&dga, e).unwrap().homology_dims())
                    .to_string()
            })
            .collect();
        v.sort();
        v
    };
    let a = polys("chekanov_a");
    let b = polys("chekanov_b");
    assert_ne!(a, b);
    let mut set_a = a.clone();
    set_a.dedup();
    let mut set_b = b.clone();
    set_b.dedup();
    assert_ne!(set_a, set_b);
}
