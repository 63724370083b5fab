//! Deciding and enumerating augmentations of a Dga over F2.
//!
//! An augmentation is a unital algebra map to F2 supported in degree 0 that
//! annihilates every differential. Enumeration solves the induced boolean
//! polynomial system by backtracking with early constraint evaluation; an
//! exhaustive brute-force search over all assignments is kept as the oracle.

use thiserror::Error;

use crate::dga::{Augmentation, Dga};

/// Degree-0 generator budget for enumeration; 2^30 assignments worst case.
pub const DEFAULT_MAX_DEGREE_ZERO: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AugmentError {
    #[error("{count} degree-0 generators exceed the enumeration limit {limit} \
             (set LCH_MAX_DEG0 to raise it)")]
    TooManyVariables { count: usize, limit: usize },
}

/// All augmentations of `dga`, sorted by their value vector over the sorted
/// degree-0 generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationSet {
    pub dga_hash: String,
    pub augs: Vec<Augmentation>,
}

/// True iff `e` vanishes outside degree 0 and its multiplicative extension
/// annihilates diff(a) for every generator a.
pub fn is_augmentation(dga: &Dga, e: &Augmentation) -> bool {
    if e.check_support(dga).is_err() {
        return false;
    }
    dga.generators().all(|g| !e.eval(&dga.diff(&g.name)))
}

/// One boolean constraint: constant term plus monomials over variable ids.
/// Words containing a generator of nonzero degree always evaluate to zero and
/// are dropped at compile time; repeated letters collapse (x*x = x).
struct Constraint {
    constant: bool,
    monomials: Vec<Vec<usize>>,
}

impl Constraint {
    /// Evaluates under a partial assignment: `None` while undecided.
    /// A monomial is decided 0 as soon as one factor is 0, and decided by the
    /// product once all factors are assigned.
    fn eval(&self, assignment: &[Option<bool>]) -> Option<bool> {
        let mut acc = self.constant;
        for m in &self.monomials {
            let mut value = Some(true);
            for &v in m {
                match assignment[v] {
                    Some(false) => {
                        value = Some(false);
                        break;
                    }
                    Some(true) => {}
                    None => value = None,
                }
            }
            match value {
                Some(b) => acc ^= b,
                None => return None,
            }
        }
        Some(acc)
    }
}

struct Search<'a> {
    vars: Vec<String>,
    constraints: Vec<Constraint>,
    dga: &'a Dga,
}

impl<'a> Search<'a> {
    fn compile(dga: &'a Dga, limit: usize) -> Result<Self, AugmentError> {
        let mut vars: Vec<String> = dga
            .generators()
            .filter(|g| g.degree == 0)
            .map(|g| g.name.clone())
            .collect();
        if vars.len() > limit {
            return Err(AugmentError::TooManyVariables {
                count: vars.len(),
                limit,
            });
        }
        // Backtracking order: ascending word-frequency, ties by name.
        let all_words: Vec<crate::poly::Word> = dga
            .generators()
            .flat_map(|g| dga.diff(&g.name).words().cloned().collect::<Vec<_>>())
            .collect();
        let frequency = |name: &str| {
            all_words
                .iter()
                .filter(|w| w.letters().any(|l| l == name))
                .count()
        };
        vars.sort_by_key(|v| (frequency(v), v.clone()));
        let var_id = |name: &str| vars.iter().position(|v| v == name);

        let mut constraints = Vec::new();
        for g in dga.generators() {
            let d = dga.diff(&g.name);
            if d.is_zero() {
                continue;
            }
            let mut constant = false;
            let mut monomials = Vec::new();
            'words: for w in d.words() {
                if w.is_unit() {
                    constant ^= true;
                    continue;
                }
                let mut mono = Vec::new();
                for letter in w.letters() {
                    if dga.degree(letter) != Some(0) {
                        continue 'words; // letter forced to 0
                    }
                    let id = var_id(letter).expect("degree-0 letter is a variable");
                    if !mono.contains(&id) {
                        mono.push(id);
                    }
                }
                monomials.push(mono);
            }
            constraints.push(Constraint {
                constant,
                monomials,
            });
        }
        Ok(Search {
            vars,
            constraints,
            dga,
        })
    }

    fn run(&self) -> Vec<Augmentation> {
        let mut assignment: Vec<Option<bool>> = vec![None; self.vars.len()];
        let mut found = Vec::new();
        self.backtrack(0, &mut assignment, &mut found);
        found
    }

    fn backtrack(
        &self,
        next: usize,
        assignment: &mut Vec<Option<bool>>,
        found: &mut Vec<Augmentation>,
    ) {
        if self
            .constraints
            .iter()
            .any(|c| c.eval(assignment) == Some(true))
        {
            return;
        }
        if next == self.vars.len() {
            let ones: Vec<&str> = assignment
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == Some(true))
                .map(|(i, _)| self.vars[i].as_str())
                .collect();
            found.push(Augmentation::new(self.dga, &ones).expect("degree-0 support"));
            return;
        }
        for value in [false, true] {
            assignment[next] = Some(value);
            self.backtrack(next + 1, assignment, found);
        }
        assignment[next] = None;
    }
}

/// Sort key: value vector over the sorted degree-0 generator names.
fn value_vector(dga: &Dga, e: &Augmentation) -> Vec<bool> {
    let mut names: Vec<&str> = dga
        .generators()
        .filter(|g| g.degree == 0)
        .map(|g| g.name.as_str())
        .collect();
    names.sort_unstable();
    names.iter().map(|n| e.value(n)).collect()
}

/// Exactly the set of all augmentations, found by backtracking.
pub fn enumerate_augmentations(dga: &Dga, limit: usize) -> Result<AugmentationSet, AugmentError> {
    let mut augs = Search::compile(dga, limit)?.run();
    augs.sort_by_key(|e| value_vector(dga, e));
    debug_assert!(augs.iter().all(|e| is_augmentation(dga, e)));
    Ok(AugmentationSet {
        dga_hash: dga.content_hash(),
        augs,
    })
}

/// Brute-force oracle: tries all 2^k assignments on the degree-0 generators.
pub fn brute_force_augmentations(
    dga: &Dga,
    limit: usize,
) -> Result<AugmentationSet, AugmentError> {
    let mut names: Vec<String> = dga
        .generators()
        .filter(|g| g.degree == 0)
        .map(|g| g.name.clone())
        .collect();
    names.sort();
    if names.len() > limit {
        return Err(AugmentError::TooManyVariables {
            count: names.len(),
            limit,
        });
    }
    let mut augs = Vec::new();
    for mask in 0u64..(1u64 << names.len()) {
        let ones: Vec<&str> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, n)| n.as_str())
            .collect();
        let e = Augmentation::new(dga, &ones).expect("degree-0 support");
        if is_augmentation(dga, &e) {
            augs.push(e);
        }
    }
    augs.sort_by_key(|e| value_vector(dga, e));
    Ok(AugmentationSet {
        dga_hash: dga.content_hash(),
        augs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::ChordGenerator;
    use crate::library::{trefoil_dga, unknot_dga};
    use crate::poly::{NcPoly, Word};
    use std::collections::BTreeMap;

    const LIMIT: usize = DEFAULT_MAX_DEGREE_ZERO;

    #[test]
    fn unknot_has_exactly_the_zero_augmentation() {
        let d = unknot_dga();
        assert!(is_augmentation(&d, &Augmentation::zero()));
        let set = enumerate_augmentations(&d, LIMIT).unwrap();
        assert_eq!(set.augs, vec![Augmentation::zero()]);
        assert_eq!(set, brute_force_augmentations(&d, LIMIT).unwrap());
    }

    #[test]
    fn trefoil_has_exactly_five_augmentations() {
        // Solutions of 1 + x + z + xyz = 0 over (x,y,z) = (b1,b2,b3).
        let d = trefoil_dga();
        let set = enumerate_augmentations(&d, LIMIT).unwrap();
        let tuples: Vec<Vec<u8>> = set
            .augs
            .iter()
            .map(|e| {
                ["b1", "b2", "b3"]
                    .iter()
                    .map(|n| u8::from(e.value(n)))
                    .collect()
            })
            .collect();
        assert_eq!(
            tuples,
            vec![
                vec![0, 0, 1],
                vec![0, 1, 1],
                vec![1, 0, 0],
                vec![1, 1, 0],
                vec![1, 1, 1],
            ]
        );
        assert_eq!(set, brute_force_augmentations(&d, LIMIT).unwrap());
    }

    #[test]
    fn trefoil_spec_example_augmentation() {
        let d = trefoil_dga();
        let e = Augmentation::new(&d, &["b1"]).unwrap();
        assert!(is_augmentation(&d, &e));
    }

    #[test]
    fn degree_support_makes_it_fail() {
        let d = trefoil_dga();
        let mut m = BTreeMap::new();
        m.insert("a1".to_string(), true);
        assert!(!is_augmentation(&d, &Augmentation::from_map(m)));
    }

    #[test]
    fn unit_differential_has_no_augmentations() {
        let gens = vec![ChordGenerator::new("a", 1)];
        let mut diff = BTreeMap::new();
        diff.insert("a".to_string(), NcPoly::one());
        let d = Dga::new(1, gens, diff).unwrap();
        let set = enumerate_augmentations(&d, LIMIT).unwrap();
        assert!(set.augs.is_empty());
    }

    #[test]
    fn limit_is_enforced() {
        let gens: Vec<ChordGenerator> = (0..5)
            .map(|i| ChordGenerator::new(&format!("c{i}"), 0))
            .collect();
        let d = Dga::new(1, gens, BTreeMap::new()).unwrap();
        assert!(matches!(
            enumerate_augmentations(&d, 4),
            Err(AugmentError::TooManyVariables { count: 5, limit: 4 })
        ));
        assert_eq!(enumerate_augmentations(&d, 5).unwrap().augs.len(), 32);
    }

    #[test]
    fn twisting_by_member_kills_constant_terms() {
        let d = trefoil_dga();
        for e in enumerate_augmentations(&d, LIMIT).unwrap().augs {
            let tw = d.twist(&e).unwrap();
            for g in tw.generators() {
                assert!(
                    !tw.diff(&g.name).constant_term(),
                    "constant term survived twisting by {e}"
                );
            }
        }
    }

    #[test]
    fn backtracking_matches_brute_force_with_repeated_letters() {
        // d(a) = 1 + x x + x y: tests monomial collapsing (x*x = x).
        let gens = vec![
            ChordGenerator::new("a", 1),
            ChordGenerator::new("x", 0),
            ChordGenerator::new("y", 0),
        ];
        let mut diff = BTreeMap::new();
        diff.insert(
            "a".to_string(),
            NcPoly::from_words([Word::unit(), Word::of(&["x", "x"]), Word::of(&["x", "y"])]),
        );
        let d = Dga::new(1, gens, diff).unwrap();
        let fast = enumerate_augmentations(&d, LIMIT).unwrap();
        let slow = brute_force_augmentations(&d, LIMIT).unwrap();
        assert_eq!(fast, slow);
        // 1 + x + xy = 0 forces x = 1 and y = 0.
        assert_eq!(fast.augs.len(), 1);
        assert!(fast.augs[0].value("x") && !fast.augs[0].value("y"));
    }
}
