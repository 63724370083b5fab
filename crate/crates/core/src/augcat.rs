//! The A-infinity composition maps of the augmentation category.
//!
//! The arity-d map takes chords b_d,...,b_1 and augmentations
//! e_{d+1},...,e_1; its coefficient on a chord a sums over the words of
//! diff(a) containing b_1,...,b_d as an ordered subsequence, augmenting the
//! prefix by e_1, the gap after b_i by e_{i+1}, and the suffix by e_{d+1}.
//! Tensors are stored sparsely; the A-infinity relations are verified by
//! composing tensors and checking that the total vanishes, which covers
//! every input tuple of the finite chord basis at once.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::augment;
use crate::dga::{Augmentation, Dga};
use crate::f2::F2Matrix;
use crate::linhom::{bilinearized_boundary, ComplexError, GradedComplexF2};
use crate::poly::NcPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AugcatError {
    #[error("arity must be at least 1")]
    ArityZero,
    #[error("input {0:?} is not a declared generator")]
    UndeclaredInput(String),
    #[error("expected {expected} augmentations for arity {arity}, got {got}")]
    WrongAugCount {
        arity: usize,
        expected: usize,
        got: usize,
    },
    #[error("{0} is not an augmentation of this Dga")]
    NotAnAugmentation(String),
    #[error("not a valid link Dga / diagonal rule violated: e(d({witness})) = 1")]
    DiagonalNotAugmentation { witness: String },
    #[error("diagonal augmentation needs {needed} per-component augmentations, got {got}")]
    ComponentCount { needed: usize, got: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Sparse arity-d tensor: entries (a; b_d,...,b_1) with coefficient 1,
/// stored with the inputs in word order b_1,...,b_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTensor {
    pub arity: usize,
    entries: BTreeSet<(String, Vec<String>)>,
}

impl MuTensor {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &(String, Vec<String>)> {
        self.entries.iter()
    }

    /// Coefficient of output `a` on inputs given in word order b_1,...,b_d.
    pub fn coefficient(&self, a: &str, inputs_word_order: &[&str]) -> bool {
        let key = (
            a.to_string(),
            inputs_word_order
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        );
        self.entries.contains(&key)
    }
}

/// Builds the arity-d tensor for augmentations given in increasing index
/// order e_1,...,e_{d+1} (e_1 augments the prefix, e_{d+1} the suffix).
pub fn mu_tensor(dga: &Dga, augs_low_to_high: &[&Augmentation]) -> Result<MuTensor, AugcatError> {
    if augs_low_to_high.len() < 2 {
        return Err(AugcatError::ArityZero);
    }
    let arity = augs_low_to_high.len() - 1;
    for e in augs_low_to_high {
        if !augment::is_augmentation(dga, e) {
            return Err(AugcatError::NotAnAugmentation(e.to_string()));
        }
    }
    let mut entries = BTreeSet::new();
    for g in dga.generators() {
        for w in dga.diff(&g.name).words() {
            let letters: Vec<&str> = w.letters().collect();
            if letters.len() < arity {
                continue;
            }
            for kept in (0..letters.len()).combinations(arity) {
                // Segment before b_1 gets e_1, between b_i and b_{i+1}
                // gets e_{i+1}, after b_d gets e_{d+1}.
                let mut coeff = true;
                let mut prev = 0;
                for (slot, &pos) in kept.iter().enumerate() {
                    coeff &= letters[prev..pos]
                        .iter()
                        .all(|l| augs_low_to_high[slot].value(l));
                    prev = pos + 1;
                }
                coeff &= letters[prev..]
                    .iter()
                    .all(|l| augs_low_to_high[arity].value(l));
                if coeff {
                    let key = (
                        g.name.clone(),
                        kept.iter().map(|&i| letters[i].to_string()).collect(),
                    );
                    if !entries.remove(&key) {
                        entries.insert(key);
                    }
                }
            }
        }
    }
    Ok(MuTensor { arity, entries })
}

/// The arity-k map on one input tuple. `augs_high_to_low` and
/// `inputs_high_to_low` follow the display order (e_{k+1},...,e_1) and
/// (b_k,...,b_1); the result is the F2-sum of output chords.
pub fn mu(
    dga: &Dga,
    augs_high_to_low: &[&Augmentation],
    inputs_high_to_low: &[&str],
) -> Result<NcPoly, AugcatError> {
    if inputs_high_to_low.is_empty() {
        return Err(AugcatError::ArityZero);
    }
    let arity = inputs_high_to_low.len();
    if augs_high_to_low.len() != arity + 1 {
        return Err(AugcatError::WrongAugCount {
            arity,
            expected: arity + 1,
            got: augs_high_to_low.len(),
        });
    }
    for b in inputs_high_to_low {
        if dga.generator(b).is_none() {
            return Err(AugcatError::UndeclaredInput(b.to_string()));
        }
    }
    let low_to_high: Vec<&Augmentation> = augs_high_to_low.iter().rev().copied().collect();
    let tensor = mu_tensor(dga, &low_to_high)?;
    let word_order: Vec<&str> = inputs_high_to_low.iter().rev().copied().collect();
    let mut out = NcPoly::zero();
    for g in dga.generators() {
        if tensor.coefficient(&g.name, &word_order) {
            out = &out + &NcPoly::generator(&g.name);
        }
    }
    Ok(out)
}

/// The matrix of the arity-1 map for the pair (e_to, e_from) on the chord
/// basis in declaration order: the transpose of the bilinearized boundary.
pub fn mu1_matrix(
    dga: &Dga,
    e_to: &Augmentation,
    e_from: &Augmentation,
) -> Result<F2Matrix, AugcatError> {
    let complex = bilinearized_boundary(dga, e_from, e_to)?;
    Ok(complex.boundary().transpose())
}

/// Every nonzero tensor entry must satisfy |a| = sum |b_i| + 1.
pub fn check_degree_law(dga: &Dga, tensor: &MuTensor) -> bool {
    tensor.entries().all(|(a, inputs)| {
        let out = dga.degree(a).expect("declared");
        let ins: i64 = inputs.iter().map(|b| dga.degree(b).expect("declared")).sum();
        out == ins + 1
    })
}

/// One failing A-infinity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfWitness {
    pub arity: usize,
    /// Augmentation indices e_1,...,e_{d+1} into the checked set.
    pub aug_tuple: Vec<usize>,
    pub output: String,
    /// Inputs in word order b_1,...,b_d.
    pub inputs: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct AInfReport {
    /// One record per arity: (arity, augmentation tuples checked, exhaustive).
    pub checked: Vec<(usize, usize, bool)>,
    pub witness: Option<AInfWitness>,
}

impl AInfReport {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

/// Verification policy: tuple enumeration is exhaustive up to the given
/// arity and seeded-random above it.
#[derive(Clone, Copy, Debug)]
pub struct AInfPolicy {
    pub exhaustive_up_to: usize,
    pub samples_above: usize,
    pub seed: u64,
}

impl Default for AInfPolicy {
    fn default() -> Self {
        AInfPolicy {
            exhaustive_up_to: 3,
            samples_above: 200,
            seed: 0,
        }
    }
}

/// Checks the A-infinity relations for every arity d <= max_arity over
/// tuples of augmentations from `augs`: the sum over j, n of the composites
/// mu^{d-j+1}(b_d,..., mu^j(b_{n+j},...,b_{n+1}), ..., b_1) must vanish
/// under the matching augmentation reindexing. Composites are assembled as
/// sparse tensors, so each relation is verified for every input tuple of
/// the chord basis at once.
pub fn verify_a_infinity(
    dga: &Dga,
    augs: &[Augmentation],
    max_arity: usize,
    policy: AInfPolicy,
) -> Result<AInfReport, AugcatError> {
    let mut cache: HashMap<(usize, Vec<usize>), MuTensor> = HashMap::new();
    let mut cached_tensor = |idx: &[usize]| -> Result<MuTensor, AugcatError> {
        let key = (idx.len() - 1, idx.to_vec());
        if let Some(t) = cache.get(&key) {
            return Ok(t.clone());
        }
        let refs: Vec<&Augmentation> = idx.iter().map(|&i| &augs[i]).collect();
        let t = mu_tensor(dga, &refs)?;
        cache.insert(key, t.clone());
        Ok(t)
    };

    let n = augs.len();
    let mut checked = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    for d in 1..=max_arity {
        if n == 0 {
            checked.push((d, 0, true));
            continue;
        }
        let exhaustive = d <= policy.exhaustive_up_to;
        let tuples: Vec<Vec<usize>> = if exhaustive {
            (0..d + 1).map(|_| 0..n).multi_cartesian_product().collect()
        } else {
            (0..policy.samples_above)
                .map(|_| (0..d + 1).map(|_| rng.random_range(0..n)).collect())
                .collect()
        };
        for tuple in &tuples {
            // Accumulate the relation sum as a sparse map and require zero.
            let mut total: BTreeSet<(String, Vec<String>)> = BTreeSet::new();
            for j in 1..=d {
                for offset in 0..=(d - j) {
                    // Inner map consumes b_{offset+1..offset+j} with
                    // augmentations e_{offset+1},...,e_{offset+j+1}; the
                    // outer map keeps e_1..e_{offset+1} then jumps to
                    // e_{offset+j+1}..e_{d+1}.
                    let inner_idx: Vec<usize> = tuple[offset..offset + j + 1].to_vec();
                    let outer_idx: Vec<usize> = tuple[..offset + 1]
                        .iter()
                        .chain(&tuple[offset + j..])
                        .copied()
                        .collect();
                    let inner = cached_tensor(&inner_idx)?;
                    let outer = cached_tensor(&outer_idx)?;
                    let mut by_output: HashMap<&str, Vec<&Vec<String>>> = HashMap::new();
                    for (g, ins) in inner.entries() {
                        by_output.entry(g).or_default().push(ins);
                    }
                    for (a, outer_inputs) in outer.entries() {
                        let plug = &outer_inputs[offset];
                        let Some(inner_entries) = by_output.get(plug.as_str()) else {
                            continue;
                        };
                        for inner_inputs in inner_entries {
                            let mut key_inputs: Vec<String> = outer_inputs[..offset].to_vec();
                            key_inputs.extend(inner_inputs.iter().cloned());
                            key_inputs.extend(outer_inputs[offset + 1..].iter().cloned());
                            let key = (a.clone(), key_inputs);
                            if !total.remove(&key) {
                                total.insert(key);
                            }
                        }
                    }
                }
            }
            if let Some((output, inputs)) = total.into_iter().next() {
                return Ok(AInfReport {
                    checked,
                    witness: Some(AInfWitness {
                        arity: d,
                        aug_tuple: tuple.clone(),
                        output,
                        inputs,
                    }),
                });
            }
        }
        checked.push((d, tuples.len(), exhaustive));
    }
    Ok(AInfReport {
        checked,
        witness: None,
    })
}

/// The diagonal augmentation of a link Dga: e_i on pure chords of component
/// i, zero on mixed chords. The result is checked to actually augment the
/// Dga before being returned.
pub fn diagonal_augmentation(
    dga: &Dga,
    per_component: &[Augmentation],
) -> Result<Augmentation, AugcatError> {
    let needed = dga
        .generators()
        .map(|g| g.comp_from.max(g.comp_to) + 1)
        .max()
        .unwrap_or(1);
    if per_component.len() != needed {
        return Err(AugcatError::ComponentCount {
            needed,
            got: per_component.len(),
        });
    }
    let mut values = BTreeMap::new();
    for g in dga.generators() {
        if g.is_pure() && per_component[g.comp_from].value(&g.name) {
            values.insert(g.name.clone(), true);
        }
    }
    let candidate = Augmentation::from_map(values);
    if candidate.check_support(dga).is_err() {
        return Err(AugcatError::NotAnAugmentation(candidate.to_string()));
    }
    if let Some(bad) = dga.generators().find(|g| candidate.eval(&dga.diff(&g.name))) {
        return Err(AugcatError::DiagonalNotAugmentation {
            witness: bad.name.clone(),
        });
    }
    Ok(candidate)
}

/// Chosen cocycle representatives of the cohomology of (C, mu^1): the
/// kernel-basis vectors of a fixed-order elimination that extend the
/// coboundary space.
pub struct HomologyBasis {
    complex: GradedComplexF2,
    /// Cocycle representatives as coefficient vectors on the chord basis.
    pub representatives: Vec<Vec<bool>>,
    image: Vec<Vec<bool>>,
}

impl HomologyBasis {
    fn new(complex: GradedComplexF2) -> Self {
        let m = complex.boundary();
        let n = complex.dim();
        let kernel = m.kernel_basis();
        let image: Vec<Vec<bool>> = {
            let (_, pivots) = m.clone().eliminate();
            pivots.iter().map(|&c| m.column(c)).collect()
        };
        let mut representatives = Vec::new();
        let mut span = F2Matrix::from_columns(n, &image);
        for k in &kernel {
            let candidate = span.hstack(&F2Matrix::from_columns(n, &[k.clone()]));
            if candidate.rank() > span.rank() {
                representatives.push(k.clone());
                span = candidate;
            }
        }
        HomologyBasis {
            complex,
            representatives,
            image,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn chord_space_dim(&self) -> usize {
        self.complex.dim()
    }

    /// Degree of the i-th class.
    pub fn degree(&self, i: usize) -> i64 {
        let v = &self.representatives[i];
        let basis = self.complex.basis();
        (0..v.len())
            .find(|&k| v[k])
            .map(|k| basis[k].1)
            .expect("representatives are nonzero")
    }

    /// Coordinates of a cocycle's class in the representative basis; None if
    /// the vector is not a cocycle.
    pub fn express(&self, v: &[bool]) -> Option<Vec<bool>> {
        if self.complex.boundary().apply(v).iter().any(|&b| b) {
            return None;
        }
        let n = self.complex.dim();
        let mut cols: Vec<Vec<bool>> = self.representatives.clone();
        cols.extend(self.image.iter().cloned());
        let a = F2Matrix::from_columns(n, &cols);
        let b = a.hstack(&F2Matrix::from_columns(n, &[v.to_vec()]));
        let (rref, pivots) = b.eliminate();
        let last = cols.len();
        debug_assert!(!pivots.contains(&last), "cocycle outside the class span");
        let mut x = vec![false; self.representatives.len()];
        for (row, &pc) in pivots.iter().enumerate() {
            if pc < self.representatives.len() && rref.get(row, last) {
                x[pc] = true;
            }
        }
        Some(x)
    }
}

/// The induced product on bilinearized cohomology:
/// hom(e2, e3) (x) hom(e1, e2) -> hom(e1, e3), [x][y] = [mu^2(x, y)].
pub struct HomologyProduct {
    pub left: HomologyBasis,
    pub right: HomologyBasis,
    pub target: HomologyBasis,
    /// table[i][j] = coordinates of [mu^2(left_i, right_j)] in the target
    /// homology basis.
    pub table: Vec<Vec<Vec<bool>>>,
}

/// Builds the product table for the triple (e1, e2, e3). Well-definedness on
/// classes is the arity-2 relation; products of the chosen representatives
/// are checked to be cocycles when they are expressed in the target basis.
pub fn product_on_homology(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    e3: &Augmentation,
) -> Result<HomologyProduct, AugcatError> {
    let cochain = |from: &Augmentation, to: &Augmentation| -> Result<GradedComplexF2, AugcatError> {
        let complex = bilinearized_boundary(dga, from, to)?;
        let transposed = complex.boundary().transpose();
        Ok(GradedComplexF2::new(complex.basis().to_vec(), transposed, 1)
            .expect("transpose of a square-zero degree -1 matrix"))
    };
    let left = HomologyBasis::new(cochain(e2, e3)?);
    let right = HomologyBasis::new(cochain(e1, e2)?);
    let target = HomologyBasis::new(cochain(e1, e3)?);

    let tensor = mu_tensor(dga, &[e1, e2, e3])?;
    let names: Vec<String> = dga.generators().map(|g| g.name.clone()).collect();
    let index: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();

    let mut table = Vec::new();
    for x in &left.representatives {
        let mut row = Vec::new();
        for y in &right.representatives {
            row.push(
                target
                    .express(&mu2_apply(&tensor, &index, x, y))
                    .expect("product of cocycles is a cocycle by the arity-2 relation"),
            );
        }
        table.push(row);
    }
    Ok(HomologyProduct {
        left,
        right,
        target,
        table,
    })
}

/// mu^2 extended bilinearly to coefficient vectors: x in the b_2 slot, y in
/// the b_1 slot.
pub fn mu2_apply(
    tensor: &MuTensor,
    index: &BTreeMap<&str, usize>,
    x: &[bool],
    y: &[bool],
) -> Vec<bool> {
    assert_eq!(tensor.arity, 2);
    let mut out = vec![false; x.len()];
    for (a, inputs) in tensor.entries() {
        let b1 = index[inputs[0].as_str()];
        let b2 = index[inputs[1].as_str()];
        if y[b1] && x[b2] {
            let ai = index[a.as_str()];
            out[ai] = !out[ai];
        }
    }
    out
}
