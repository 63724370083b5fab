//! Bundled knot library: plat fronts with golden invariant data.
//!
//! Entries are resolved by the CLI through the `library:<id>` scheme. The
//! golden numbers are pinned by the test suite; the hand-written trefoil Dga
//! below doubles as the reference the front pipeline is checked against.

use std::collections::BTreeMap;

use crate::dga::{ChordGenerator, Dga};
use crate::poly::{NcPoly, Word};

/// One bundled front together with its expected invariants.
#[derive(Clone, Debug)]
pub struct KnotLibraryEntry {
    pub id: &'static str,
    pub plat: &'static str,
    pub expected: Expected,
}

/// Golden data asserted by the tests and reported by the CLI.
#[derive(Clone, Debug)]
pub struct Expected {
    pub tb: i64,
    pub rot: i64,
    pub n_augmentations: usize,
    /// Multiset of linearized Poincare polynomials, one per augmentation,
    /// rendered in the ascending-degree ASCII format.
    pub poincare: &'static [&'static str],
}

/// All bundled entries, in fixed order.
pub fn entries() -> Vec<KnotLibraryEntry> {
    vec![
        KnotLibraryEntry {
            id: "unknot",
            plat: "O1 C1",
            expected: Expected {
                tb: -1,
                rot: 0,
                n_augmentations: 1,
                poincare: &["t"],
            },
        },
        KnotLibraryEntry {
            id: "trefoil",
            plat: "O1 O1 X2 X2 X2 C1 C1",
            expected: Expected {
                tb: 1,
                rot: 0,
                n_augmentations: 5,
                poincare: &["2 + t", "2 + t", "2 + t", "2 + t", "2 + t"],
            },
        },
        KnotLibraryEntry {
            id: "chekanov_a",
            plat: "O1 O1 X2 X2 X2 X1 X1 X2 X2 C1 C1",
            expected: Expected {
                tb: 1,
                rot: 0,
                n_augmentations: 6,
                poincare: &["2 + t", "2 + t", "2 + t", "2 + t", "2 + t", "2 + t"],
            },
        },
        KnotLibraryEntry {
            id: "chekanov_b",
            plat: "O1 O1 X2 X2 X2 X3 X1 X2 X2 C1 C1",
            expected: Expected {
                tb: 1,
                rot: 0,
                n_augmentations: 2,
                poincare: &["t^-2 + t + t^2", "t^-2 + t + t^2"],
            },
        },
        KnotLibraryEntry {
            id: "stab_unknot",
            plat: "O1 X1 X1 C1",
            expected: Expected {
                tb: -3,
                rot: 0,
                n_augmentations: 0,
                poincare: &[],
            },
        },
    ]
}

pub fn entry(id: &str) -> Option<KnotLibraryEntry> {
    entries().into_iter().find(|e| e.id == id)
}

fn poly(words: &[&[&str]]) -> NcPoly {
    NcPoly::from_words(words.iter().map(|w| Word::of(w)))
}

/// The unknot Dga: one degree-1 chord with zero differential.
pub fn unknot_dga() -> Dga {
    Dga::new(1, vec![ChordGenerator::new("a", 1)], BTreeMap::new()).unwrap()
}

/// The max-tb right trefoil Dga, written out by hand:
/// da1 = 1 + b1 + b3 + b1 b2 b3, da2 = 1 + b1 + b3 + b3 b2 b1.
pub fn trefoil_dga() -> Dga {
    let gens = vec![
        ChordGenerator::new("a1", 1),
        ChordGenerator::new("a2", 1),
        ChordGenerator::new("b1", 0),
        ChordGenerator::new("b2", 0),
        ChordGenerator::new("b3", 0),
    ];
    let mut diff = BTreeMap::new();
    diff.insert(
        "a1".to_string(),
        poly(&[&[], &["b1"], &["b3"], &["b1", "b2", "b3"]]),
    );
    diff.insert(
        "a2".to_string(),
        poly(&[&[], &["b1"], &["b3"], &["b3", "b2", "b1"]]),
    );
    Dga::new(1, gens, diff).unwrap()
}
