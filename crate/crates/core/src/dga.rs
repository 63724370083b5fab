//! Differential graded algebras on Reeb-chord generators over F2.
//!
//! A [`Dga`] is a finite set of graded generators together with a differential
//! assignment generator -> polynomial, extended to the whole free algebra by
//! the Leibniz rule. The module provides the structural checks that make a
//! candidate differential an actual DGA differential: square zero, degree -1
//! homogeneity, and the existence of an action filtration (strictly positive
//! chord weights strictly decreased by every differential word).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::poly::{NcPoly, Word};

/// A graded generator: one Reeb chord of the Legendrian.
///
/// `comp_from`/`comp_to` are the link-component indices of the chord
/// endpoints; a chord is pure when they coincide. `action`, when present, is
/// the declared chord length and must be strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordGenerator {
    pub name: String,
    pub degree: i64,
    pub action: Option<Rational64>,
    pub comp_from: usize,
    pub comp_to: usize,
}

impl ChordGenerator {
    pub fn new(name: &str, degree: i64) -> Self {
        ChordGenerator {
            name: name.to_string(),
            degree,
            action: None,
            comp_from: 0,
            comp_to: 0,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.comp_from == self.comp_to
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DgaError {
    #[error("generator name {0:?} is empty or duplicated")]
    BadGeneratorName(String),
    #[error("generator {gen:?} declares non-positive action {action}")]
    NonPositiveAction { gen: String, action: Rational64 },
    #[error("differential of {gen:?} mentions undeclared generator {letter:?}")]
    UndeclaredGenerator { gen: String, letter: String },
    #[error("polynomial mentions undeclared generator {0:?}")]
    UndeclaredInPoly(String),
    #[error("augmentation assigns 1 to {gen:?} of degree {degree} != 0")]
    AugmentationOutsideDegreeZero { gen: String, degree: i64 },
    #[error("augmentation is missing a value for degree-0 generator {0:?}")]
    AugmentationNotTotal(String),
    #[error("grading offsets cover {given} components but the Dga has {needed}")]
    BadOffsetCount { given: usize, needed: usize },
}

/// Outcome of a structural check: ok, or the first witness of failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome<W> {
    Ok,
    Failed(W),
}

impl<W> CheckOutcome<W> {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckOutcome::Ok)
    }
}

/// Witness for a square-zero failure: the generator and the nonzero residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredWitness {
    pub generator: String,
    pub residue: NcPoly,
}

/// Witness for a grading failure: a word of the wrong total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingWitness {
    pub generator: String,
    pub word: Word,
    pub expected: i64,
    pub got: i64,
}

/// An assignment generator -> {0,1} supported in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Augmentation {
    values: BTreeMap<String, bool>,
}

impl Augmentation {
    /// The zero augmentation.
    pub fn zero() -> Self {
        Augmentation::default()
    }

    /// Builds an augmentation from the generators sent to 1, validating the
    /// degree-0 support condition against `dga`.
    pub fn new(dga: &Dga, ones: &[&str]) -> Result<Self, DgaError> {
        let mut values = BTreeMap::new();
        for name in ones {
            values.insert(name.to_string(), true);
        }
        let aug = Augmentation { values };
        aug.check_support(dga)?;
        Ok(aug)
    }

    pub fn from_map(values: BTreeMap<String, bool>) -> Self {
        // Normalize: drop explicit zeros so equality is support equality.
        let values = values.into_iter().filter(|(_, v)| *v).collect();
        Augmentation { values }
    }

    /// Value on a single generator; unset generators map to 0.
    pub fn value(&self, name: &str) -> bool {
        self.values.get(name).copied().unwrap_or(false)
    }

    /// Multiplicative extension to a word: product of the letters' values.
    /// The empty word evaluates to 1. Letters of nonzero degree evaluate to 0
    /// by the support condition, which is assumed to hold.
    pub fn eval_word(&self, w: &Word) -> bool {
        w.letters().all(|l| self.value(l))
    }

    /// Additive-multiplicative extension to a polynomial.
    pub fn eval(&self, p: &NcPoly) -> bool {
        let mut acc = false;
        for w in p.words() {
            acc ^= self.eval_word(w);
        }
        acc
    }

    /// Names sent to 1.
    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    /// Checks the degree-0 support invariant against a Dga.
    pub fn check_support(&self, dga: &Dga) -> Result<(), DgaError> {
        for name in self.values.keys() {
            match dga.generator(name) {
                None => return Err(DgaError::UndeclaredInPoly(name.clone())),
                Some(g) if g.degree != 0 => {
                    return Err(DgaError::AugmentationOutsideDegreeZero {
                        gen: name.clone(),
                        degree: g.degree,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Renders the augmentation as a `name -> 0/1` map over the degree-0
    /// generators of `dga`, in sorted name order.
    pub fn to_map(&self, dga: &Dga) -> BTreeMap<String, u8> {
        dga.generators()
            .filter(|g| g.degree == 0)
            .map(|g| (g.name.clone(), u8::from(self.value(&g.name))))
            .collect()
    }
}

impl fmt::Display for Augmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ones: Vec<&str> = self.support().collect();
        if ones.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({} -> 1)", ones.join(","))
        }
    }
}

/// A Chekanov-Eliashberg style DGA: generators plus a differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    /// Ambient Legendrian dimension; 1 for knots in standard contact 3-space.
    pub n: i64,
    generators: Vec<ChordGenerator>,
    index: BTreeMap<String, usize>,
    diff: BTreeMap<String, NcPoly>,
}

impl Dga {
    /// Builds a Dga, validating name uniqueness, positive declared actions
    /// and that every differential letter is declared.
    pub fn new(
        n: i64,
        generators: Vec<ChordGenerator>,
        diff: BTreeMap<String, NcPoly>,
    ) -> Result<Self, DgaError> {
        let mut index = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() || index.insert(g.name.clone(), i).is_some() {
                return Err(DgaError::BadGeneratorName(g.name.clone()));
            }
            if let Some(a) = g.action {
                if a <= Rational64::from_integer(0) {
                    return Err(DgaError::NonPositiveAction {
                        gen: g.name.clone(),
                        action: a,
                    });
                }
            }
        }
        for (name, p) in &diff {
            if !index.contains_key(name) {
                return Err(DgaError::BadGeneratorName(name.clone()));
            }
            for w in p.words() {
                for letter in w.letters() {
                    if !index.contains_key(letter) {
                        return Err(DgaError::UndeclaredGenerator {
                            gen: name.clone(),
                            letter: letter.to_string(),
                        });
                    }
                }
            }
        }
        let diff = diff.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(Dga {
            n,
            generators,
            index,
            diff,
        })
    }

    pub fn generators(&self) -> impl Iterator<Item = &ChordGenerator> {
        self.generators.iter()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, name: &str) -> Option<&ChordGenerator> {
        self.index.get(name).map(|&i| &self.generators[i])
    }

    pub fn degree(&self, name: &str) -> Option<i64> {
        self.generator(name).map(|g| g.degree)
    }

    /// The differential of a single generator (zero if unlisted).
    pub fn diff(&self, name: &str) -> NcPoly {
        self.diff.get(name).cloned().unwrap_or_default()
    }

    pub fn word_degree(&self, w: &Word) -> Option<i64> {
        let mut total = 0;
        for letter in w.letters() {
            total += self.degree(letter)?;
        }
        Some(total)
    }

    /// Extends the differential to an arbitrary polynomial by the Leibniz
    /// rule: d(w1...wk) = sum_i w1...d(wi)...wk, and d(1) = 0.
    pub fn leibniz_apply(&self, p: &NcPoly) -> Result<NcPoly, DgaError> {
        let mut out = NcPoly::zero();
        for w in p.words() {
            let letters: Vec<&str> = w.letters().collect();
            for l in &letters {
                if !self.index.contains_key(*l) {
                    return Err(DgaError::UndeclaredInPoly(l.to_string()));
                }
            }
            for i in 0..letters.len() {
                let prefix = NcPoly::from_word(Word(
                    letters[..i].iter().map(|s| s.to_string()).collect(),
                ));
                let suffix = NcPoly::from_word(Word(
                    letters[i + 1..].iter().map(|s| s.to_string()).collect(),
                ));
                out = &out + &(&(&prefix * &self.diff(letters[i])) * &suffix);
            }
        }
        Ok(out)
    }

    /// Checks d^2 = 0 on every generator; returns the first failing generator
    /// with its nonzero residue.
    pub fn check_d_squared(&self) -> CheckOutcome<DSquaredWitness> {
        for g in &self.generators {
            let residue = self
                .leibniz_apply(&self.diff(&g.name))
                .expect("diff letters are declared");
            if !residue.is_zero() {
                return CheckOutcome::Failed(DSquaredWitness {
                    generator: g.name.clone(),
                    residue,
                });
            }
        }
        CheckOutcome::Ok
    }

    /// Checks that every word of diff(a) has total degree |a| - 1.
    pub fn check_grading(&self) -> CheckOutcome<GradingWitness> {
        for g in &self.generators {
            for w in self.diff(&g.name).words() {
                let got = self
                    .word_degree(w)
                    .expect("diff letters are declared");
                if got != g.degree - 1 {
                    return CheckOutcome::Failed(GradingWitness {
                        generator: g.name.clone(),
                        word: w.clone(),
                        expected: g.degree - 1,
                        got,
                    });
                }
            }
        }
        CheckOutcome::Ok
    }

    /// Conjugates the differential by the involution g_e(c) = c + e(c):
    /// the differential twisted by `e`. Twisting twice restores the original.
    pub fn twist(&self, e: &Augmentation) -> Result<Dga, DgaError> {
        e.check_support(self)?;
        let g = |letter: &str| {
            let mut p = NcPoly::generator(letter);
            if e.value(letter) {
                p = &p + &NcPoly::one();
            }
            p
        };
        let mut diff = BTreeMap::new();
        for gen in &self.generators {
            let d = self.diff(&gen.name);
            if d.is_zero() {
                continue;
            }
            // d^e = g_e o d o g_e on generators: g_e(gen) = gen + e(gen) and
            // d kills the constant, so this is g_e applied to d(gen).
            let twisted = d.substitute(g);
            if !twisted.is_zero() {
                diff.insert(gen.name.clone(), twisted);
            }
        }
        Dga::new(self.n, self.generators.clone(), diff)
    }

    /// Canonical JSON encoding: generators sorted by name, sorted word sets,
    /// zero differentials omitted.
    pub fn to_json(&self) -> DgaJson {
        let mut generators: Vec<GeneratorJson> = self
            .generators
            .iter()
            .map(|g| GeneratorJson {
                name: g.name.clone(),
                degree: g.degree,
                action: g.action.map(|a| format!("{}/{}", a.numer(), a.denom())),
                comp_from: g.comp_from,
                comp_to: g.comp_to,
            })
            .collect();
        generators.sort_by(|a, b| a.name.cmp(&b.name));
        DgaJson {
            n: self.n,
            generators,
            differential: self.diff.clone(),
            grading_offsets: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Content hash of the canonical JSON encoding.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_json()).expect("serializable");
        let digest = Sha256::digest(&bytes);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_json_str(s: &str) -> Result<Dga, DgaLoadError> {
        let json: DgaJson = serde_json::from_str(s)?;
        json.try_into_dga()
    }
}

#[derive(Debug, Error)]
pub enum DgaLoadError {
    #[error("invalid Dga JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error("invalid action {0:?}: expected a positive rational like \"3/4\" or a number")]
    BadAction(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: i64,
    #[serde(default)]
    pub action: Option<String>,
    #[serde(default)]
    pub comp_from: usize,
    #[serde(default)]
    pub comp_to: usize,
}

/// Wire format for a Dga. `differential` maps generator names to word lists;
/// unlisted generators have zero differential. `grading_offsets`, when
/// present, gives one integer per link component; the effective degree of a
/// mixed chord is shifted by offset(to) - offset(from).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DgaJson {
    pub n: i64,
    pub generators: Vec<GeneratorJson>,
    pub differential: BTreeMap<String, NcPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading_offsets: Option<Vec<i64>>,
}

impl DgaJson {
    pub fn try_into_dga(self) -> Result<Dga, DgaLoadError> {
        let offsets = self.grading_offsets.clone().unwrap_or_default();
        let n_components = self
            .generators
            .iter()
            .map(|g| g.comp_from.max(g.comp_to) + 1)
            .max()
            .unwrap_or(1);
        if !offsets.is_empty() && offsets.len() < n_components {
            return Err(DgaError::BadOffsetCount {
                given: offsets.len(),
                needed: n_components,
            }
            .into());
        }
        let offset = |c: usize| offsets.get(c).copied().unwrap_or(0);
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let action = g.action.as_deref().map(parse_rational).transpose()?;
                Ok(ChordGenerator {
                    name: g.name.clone(),
                    degree: g.degree + offset(g.comp_to) - offset(g.comp_from),
                    action,
                    comp_from: g.comp_from,
                    comp_to: g.comp_to,
                })
            })
            .collect::<Result<Vec<_>, DgaLoadError>>()?;
        Ok(Dga::new(self.n, generators, self.differential)?)
    }
}

fn parse_rational(s: &str) -> Result<Rational64, DgaLoadError> {
    let bad = || DgaLoadError::BadAction(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational64::new(n, d))
    } else {
        let n: i64 = s.trim().parse().map_err(|_| bad())?;
        Ok(Rational64::from_integer(n))
    }
}

/// Result of the action-filtration search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionCertificate {
    /// Strictly positive weights with a(gen) > sum of a over every
    /// differential word of gen. When the Dga declares chord actions they
    /// have been validated against the same inequalities.
    Feasible { weights: BTreeMap<String, Rational64> },
    /// The constraints contain a cycle: no positive weights exist.
    Infeasible { cycle: Vec<String> },
    /// Declared actions violate the filtration on the witness word.
    DeclaredViolation { generator: String, word: Word },
}

impl ActionCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ActionCertificate::Feasible { .. })
    }
}

/// Searches for an action filtration. Every word constraint is relaxed to
/// a(gen) >= sum(word) + 1 on an integer grid; since all weights are strictly
/// positive, the system is feasible exactly when the letter-dependency
/// digraph (gen -> every letter of every differential word) is acyclic, in
/// which case longest-path relaxation converges within |generators| sweeps.
pub fn action_certificate(dga: &Dga) -> ActionCertificate {
    // Declared actions are validated first, exactly (rational arithmetic).
    for g in dga.generators() {
        if g.action.is_none() {
            continue;
        }
        let a = g.action.unwrap();
        for w in dga.diff(&g.name).words() {
            let mut sum = Rational64::from_integer(0);
            let mut all_declared = true;
            for letter in w.letters() {
                match dga.generator(letter).and_then(|g| g.action) {
                    Some(v) => sum += v,
                    None => {
                        all_declared = false;
                        break;
                    }
                }
            }
            if all_declared && a <= sum {
                return ActionCertificate::DeclaredViolation {
                    generator: g.name.clone(),
                    word: w.clone(),
                };
            }
        }
    }

    let names: Vec<&str> = dga.generators().map(|g| g.name.as_str()).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let n = names.len();
    let succ: Vec<Vec<usize>> = names
        .iter()
        .map(|name| {
            let mut out: Vec<usize> = dga
                .diff(name)
                .words()
                .flat_map(|w| w.letters().map(|l| index[l]))
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();

    if let Some(cycle) = find_cycle(&succ) {
        let cycle = cycle.into_iter().map(|i| names[i].to_string()).collect();
        return ActionCertificate::Infeasible { cycle };
    }

    let mut weight: Vec<i64> = vec![1; n];
    loop {
        let mut changed = false;
        for (i, name) in names.iter().enumerate() {
            for w in dga.diff(name).words() {
                let sum: i64 = w.letters().map(|l| weight[index[l]]).sum();
                if weight[i] < sum + 1 {
                    weight[i] = sum + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let weights = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.to_string(), Rational64::from_integer(weight[i])))
        .collect();
    ActionCertificate::Feasible { weights }
}

/// Iterative DFS cycle detection; returns one cycle as a vertex list.
fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let n = succ.len();
    let mut color = vec![Color::White; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if color[root] != Color::White {
            continue;
        }
        color[root] = Color::Gray;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let u = succ[v][*next];
                *next += 1;
                match color[u] {
                    Color::White => {
                        color[u] = Color::Gray;
                        stack.push((u, 0));
                    }
                    Color::Gray => {
                        let start = stack.iter().position(|&(w, _)| w == u).unwrap();
                        return Some(stack[start..].iter().map(|&(w, _)| w).collect());
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                stack.pop();
            }
        }
    }
    None
}
