//! Linearized and bilinearized Legendrian contact cohomology.
//!
//! The keep-one-letter splitting of the differential under a pair of
//! augmentations gives a square-zero degree -1 endomorphism of the chord
//! space; its homology dimensions are computed by exact elimination over F2.
//! The chord space and its dual are canonically identified, so the
//! cohomological dimensions are read from the same matrix.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::augment::{self, AugmentError};
use crate::dga::{Augmentation, Dga};
use crate::f2::F2Matrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("boundary matrix is {rows}x{cols} but the basis has {basis} elements")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        basis: usize,
    },
    #[error("entry ({target}, {src}) connects degree {src_deg} to {tgt_deg}, \
             but the boundary has degree {shift}")]
    DegreeLaw {
        target: String,
        src: String,
        src_deg: i64,
        tgt_deg: i64,
        shift: i64,
    },
    #[error("boundary does not square to zero: witness column {0}")]
    NotSquareZero(String),
    #[error("{0} is not an augmentation of this Dga")]
    NotAnAugmentation(String),
    #[error(transparent)]
    Augment(#[from] AugmentError),
}

/// A finite graded F2 complex: named graded basis plus a square boundary
/// matrix (column = source basis element) of uniform degree `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplexF2 {
    basis: Vec<(String, i64)>,
    boundary: F2Matrix,
    shift: i64,
}

impl GradedComplexF2 {
    /// Validates the dimension, degree-law and square-zero invariants.
    pub fn new(
        basis: Vec<(String, i64)>,
        boundary: F2Matrix,
        shift: i64,
    ) -> Result<Self, ComplexError> {
        if boundary.rows() != basis.len() || boundary.cols() != basis.len() {
            return Err(ComplexError::DimensionMismatch {
                rows: boundary.rows(),
                cols: boundary.cols(),
                basis: basis.len(),
            });
        }
        for (t, s) in boundary.entries() {
            if basis[t].1 != basis[s].1 + shift {
                return Err(ComplexError::DegreeLaw {
                    target: basis[t].0.clone(),
                    src: basis[s].0.clone(),
                    src_deg: basis[s].1,
                    tgt_deg: basis[t].1,
                    shift,
                });
            }
        }
        let square = boundary.mul(&boundary);
        if !square.is_zero() {
            let col = (0..square.cols())
                .find(|&c| (0..square.rows()).any(|r| square.get(r, c)))
                .unwrap();
            return Err(ComplexError::NotSquareZero(basis[col].0.clone()));
        }
        Ok(GradedComplexF2 {
            basis,
            boundary,
            shift,
        })
    }

    pub fn empty(shift: i64) -> Self {
        GradedComplexF2 {
            basis: Vec::new(),
            boundary: F2Matrix::zero(0, 0),
            shift,
        }
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn boundary(&self) -> &F2Matrix {
        &self.boundary
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis.iter().map(|(_, d)| *d).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn indices_of_degree(&self, k: i64) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].1 == k)
            .collect()
    }

    /// Rank of the boundary restricted to sources of degree `k`.
    fn rank_from_degree(&self, k: i64) -> usize {
        let cols = self.indices_of_degree(k);
        let rows = self.indices_of_degree(k + self.shift);
        self.boundary.submatrix(&rows, &cols).rank()
    }

    /// Homology dimension per degree: dim ker - dim im, by exact rank
    /// computation. Degrees with zero dimension are omitted.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let mut dims = BTreeMap::new();
        for k in self.degrees() {
            let n = self.indices_of_degree(k).len();
            let out = self.rank_from_degree(k);
            let into = self.rank_from_degree(k - self.shift);
            let h = n - out - into;
            if h > 0 {
                dims.insert(k, h);
            }
        }
        dims
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }
}

/// The matrix of the bilinearized differential d_1^{e1,e2}: for each word
/// b_1...b_m of diff(a) and kept index i, the letters left of b_i are
/// augmented by e1 and the letters right of it by e2.
pub fn bilinearized_boundary(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
) -> Result<GradedComplexF2, ComplexError> {
    for (label, e) in [("first", e1), ("second", e2)] {
        if !augment::is_augmentation(dga, e) {
            return Err(ComplexError::NotAnAugmentation(format!(
                "{label} argument {e}"
            )));
        }
    }
    let basis: Vec<(String, i64)> = dga
        .generators()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    let index: BTreeMap<&str, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.as_str(), i))
        .collect();
    let mut m = F2Matrix::zero(basis.len(), basis.len());
    for (col, (name, _)) in basis.iter().enumerate() {
        for w in dga.diff(name).words() {
            let letters: Vec<&str> = w.letters().collect();
            for i in 0..letters.len() {
                let left = letters[..i].iter().all(|l| e1.value(l));
                let right = letters[i + 1..].iter().all(|l| e2.value(l));
                if left && right {
                    let row = index[letters[i]];
                    m.set(row, col, !m.get(row, col));
                }
            }
        }
    }
    GradedComplexF2::new(basis, m, -1)
}

/// Linearized differential: both augmentations equal.
pub fn linearized_boundary(
    dga: &Dga,
    e: &Augmentation,
) -> Result<GradedComplexF2, ComplexError> {
    bilinearized_boundary(dga, e, e)
}

/// A sparse integer polynomial in t, used for Poincare polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PoincarePoly(pub BTreeMap<i64, usize>);

pub fn poincare_polynomial(dims: &BTreeMap<i64, usize>) -> PoincarePoly {
    PoincarePoly(dims.iter().filter(|(_, &c)| c > 0).map(|(&k, &c)| (k, c)).collect())
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let term = |(&k, &c): (&i64, &usize)| -> String {
            let coeff = if c == 1 && k != 0 {
                String::new()
            } else {
                c.to_string()
            };
            match k {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{k}"),
            }
        };
        let terms: Vec<String> = self.0.iter().map(term).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Verdict of the necessary-condition fillability test for one augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationVerdict {
    pub aug: Augmentation,
    pub dims: BTreeMap<i64, usize>,
    pub pass: bool,
    pub reasons: Vec<String>,
    /// For n = 1: the genus a connected exact filling would have to have.
    pub genus: Option<usize>,
}

/// Per-augmentation fillability report. A filling induces an augmentation, so
/// no augmentation at all rules exact fillability out; otherwise the verdict
/// only says whether the homological necessary conditions hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FillabilityReport {
    NoAugmentation,
    PerAugmentation(Vec<AugmentationVerdict>),
}

pub fn fillability_report(dga: &Dga, limit: usize) -> Result<FillabilityReport, ComplexError> {
    let set = augment::enumerate_augmentations(dga, limit)?;
    if set.augs.is_empty() {
        return Ok(FillabilityReport::NoAugmentation);
    }
    let n = dga.n;
    let mut verdicts = Vec::new();
    for aug in set.augs {
        let dims = linearized_boundary(dga, &aug)?.homology_dims();
        let mut reasons = Vec::new();
        for (&k, &c) in &dims {
            if c > 0 && (k < 0 || k > n) {
                reasons.push(format!(
                    "support in degree {k} outside [0, {n}]"
                ));
            }
        }
        if n == 1 {
            let top = dims.get(&1).copied().unwrap_or(0);
            if top != 1 {
                reasons.push(format!(
                    "dim LCH^1 = {top} != 1 (a connected filling forces dim H_0 = 1)"
                ));
            }
            let zero = dims.get(&0).copied().unwrap_or(0);
            if zero % 2 != 0 {
                reasons.push(format!(
                    "dim LCH^0 = {zero} is odd (b_1 of a once-punctured surface is even)"
                ));
            }
        }
        let pass = reasons.is_empty();
        let genus = if pass && n == 1 {
            Some(dims.get(&0).copied().unwrap_or(0) / 2)
        } else {
            None
        };
        verdicts.push(AugmentationVerdict {
            aug,
            dims,
            pass,
            reasons,
            genus,
        });
    }
    Ok(FillabilityReport::PerAugmentation(verdicts))
}
