//! Free noncommutative polynomials over the two-element field.
//!
//! A [`Word`] is an ordered sequence of generator names (the empty word is the
//! unit of the algebra), and an [`NcPoly`] is a finite set of words: since the
//! coefficients live in F2, adding a word twice cancels it, so set semantics
//! with symmetric difference is exactly characteristic-2 addition.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An ordered word of generator names. Empty means the unit 1.
///
/// Words are ordered by length first and lexicographically second, which is
/// the canonical order used for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn of(letters: &[&str]) -> Self {
        Word(letters.iter().map(|s| s.to_string()).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// Concatenation of two words.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.0.join("."))
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for letter in &self.0 {
            seq.serialize_element(letter)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Word(Vec::<String>::deserialize(d)?))
    }
}

/// A formal F2-sum of words, stored as a sorted set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    words: BTreeSet<Word>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        let mut words = BTreeSet::new();
        words.insert(w);
        NcPoly { words }
    }

    pub fn generator(name: &str) -> Self {
        NcPoly::from_word(Word(vec![name.to_string()]))
    }

    /// Builds a polynomial from a list of words, cancelling duplicates mod 2.
    pub fn from_words<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        let mut p = NcPoly::zero();
        for w in iter {
            p.toggle(w);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> bool {
        self.words.contains(&Word::unit())
    }

    /// Adds a single word mod 2.
    pub fn toggle(&mut self, w: Word) {
        if !self.words.remove(&w) {
            self.words.insert(w);
        }
    }

    /// Applies a per-generator substitution, extending multiplicatively and
    /// additively. The substitution must be total on letters that occur.
    pub fn substitute<F>(&self, subst: F) -> NcPoly
    where
        F: Fn(&str) -> NcPoly,
    {
        let mut out = NcPoly::zero();
        for w in &self.words {
            let mut acc = NcPoly::one();
            for letter in w.letters() {
                acc = &acc * &subst(letter);
            }
            out = &out + &acc;
        }
        out
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;

    /// Symmetric difference of word sets: characteristic-2 addition.
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let words = self
            .words
            .symmetric_difference(&rhs.words)
            .cloned()
            .collect();
        NcPoly { words }
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;

    /// Bilinear extension of word concatenation, duplicates cancelled mod 2.
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for l in &self.words {
            for r in &rhs.words {
                out.toggle(l.concat(r));
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.words.len()))?;
        for w in &self.words {
            seq.serialize_element(w)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for NcPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = NcPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of words (lists of generator names)")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<NcPoly, A::Error> {
                let mut p = NcPoly::zero();
                while let Some(w) = seq.next_element::<Word>()? {
                    p.toggle(w);
                }
                Ok(p)
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(words: &[&[&str]]) -> NcPoly {
        NcPoly::from_words(words.iter().map(|w| Word::of(w)))
    }

    #[test]
    fn add_cancels_mod_two() {
        let b1 = poly(&[&["b1"]]);
        assert!((&b1 + &b1).is_zero());
    }

    #[test]
    fn add_unit_and_generator() {
        let p = &NcPoly::one() + &poly(&[&["b1"]]);
        assert_eq!(p, poly(&[&[], &["b1"]]));
    }

    #[test]
    fn noncommutative_words_are_distinct() {
        let p = &poly(&[&["b1", "b2"]]) + &poly(&[&["b2", "b1"]]);
        assert_eq!(p.num_words(), 2);
    }

    #[test]
    fn mul_by_unit() {
        let b1 = poly(&[&["b1"]]);
        assert_eq!(&NcPoly::one() * &b1, b1);
    }

    #[test]
    fn mul_concatenates() {
        assert_eq!(
            &poly(&[&["b1"]]) * &poly(&[&["b2"]]),
            poly(&[&["b1", "b2"]])
        );
    }

    #[test]
    fn mul_cross_terms_cancel() {
        // (b1 + 1)^2 = b1*b1 + 1 in characteristic 2.
        let p = poly(&[&["b1"], &[]]);
        assert_eq!(&p * &p, poly(&[&["b1", "b1"], &[]]));
    }

    #[test]
    fn canonical_word_order_is_length_then_lex() {
        let p = poly(&[&["b1", "b2", "b3"], &["b3"], &[], &["b1"]]);
        let order: Vec<String> = p.words().map(|w| w.to_string()).collect();
        assert_eq!(order, vec!["1", "b1", "b3", "b1.b2.b3"]);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..4)
            .prop_map(|ls| Word(ls.into_iter().map(String::from).collect()))
    }

    fn arb_poly() -> impl Strategy<Value = NcPoly> {
        prop::collection::vec(arb_word(), 0..6).prop_map(NcPoly::from_words)
    }

    proptest! {
        #[test]
        fn add_commutative(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
        }

        #[test]
        fn add_associative_and_self_inverse(
            p in arb_poly(), q in arb_poly(), r in arb_poly()
        ) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert!((&p + &p).is_zero());
        }

        #[test]
        fn mul_associative_with_unit(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &NcPoly::one(), p.clone());
            prop_assert_eq!(&NcPoly::one() * &p, p);
        }
    }
}
