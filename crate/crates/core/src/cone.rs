//! Graded mapping cones and the three-block complex of a cobordism pair.
//!
//! The three-block complex is generated by positive-end chords (grading
//! offset +2), intersection points (offset 0) and negative-end chords
//! (offset +1); its differential is block upper-triangular in the sense that
//! nothing maps out of the positive block. Squaring it splits into four
//! named identities: the positive block is a subcomplex, the lower 2x2 block
//! is a quotient complex, and the two star identities say exactly that the
//! off-diagonal row assembles a chain map from the quotient to the
//! subcomplex, making the total complex its cone. Acyclicity of the cone is
//! equivalent to that chain map being a quasi-isomorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::F2Matrix;
use crate::linhom::{ComplexError, GradedComplexF2};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("chain map matrix is {rows}x{cols}, expected {tgt_dim}x{src_dim}")]
    MapDimensionMismatch {
        rows: usize,
        cols: usize,
        tgt_dim: usize,
        src_dim: usize,
    },
    #[error("entry ({target}, {src}) has degree {got}, expected shift {shift}")]
    MapDegreeLaw {
        target: String,
        src: String,
        got: i64,
        shift: i64,
    },
    #[error("chain-map identity fails at entry ({target}, {src})")]
    NotChainMap { target: String, src: String },
    #[error("cone requires a degree-0 map between complexes of equal boundary degree")]
    ConeShape,
    #[error("block {block} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    BlockDimensionMismatch {
        block: String,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("block {0:?} sits below the diagonal; the differential maps nothing out of \
             the positive summand")]
    LowerTriangularBlock(String),
    #[error("unknown block name {0:?}")]
    UnknownBlock(String),
    #[error("quasi-isomorphism and cone acyclicity disagree; this is a bug")]
    InternalDisagreement,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A chain map between graded F2 complexes: matrix columns are indexed by
/// the source basis, rows by the target basis.
#[derive(Clone, Debug)]
pub struct ChainMapF2 {
    pub source: GradedComplexF2,
    pub target: GradedComplexF2,
    pub matrix: F2Matrix,
    pub degree_shift: i64,
}

impl ChainMapF2 {
    /// Validates dimensions, the entrywise degree law and the chain-map
    /// identity target.boundary o matrix = matrix o source.boundary.
    pub fn new(
        source: GradedComplexF2,
        target: GradedComplexF2,
        matrix: F2Matrix,
        degree_shift: i64,
    ) -> Result<Self, ConeError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(ConeError::MapDimensionMismatch {
                rows: matrix.rows(),
                cols: matrix.cols(),
                tgt_dim: target.dim(),
                src_dim: source.dim(),
            });
        }
        for (t, s) in matrix.entries() {
            let got = target.basis()[t].1 - source.basis()[s].1;
            if got != degree_shift {
                return Err(ConeError::MapDegreeLaw {
                    target: target.basis()[t].0.clone(),
                    src: source.basis()[s].0.clone(),
                    got,
                    shift: degree_shift,
                });
            }
        }
        let lhs = target.boundary().mul(&matrix);
        let rhs = matrix.mul(source.boundary());
        let diff = lhs.add(&rhs);
        if let Some(&(t, s)) = diff.entries().first() {
            return Err(ConeError::NotChainMap {
                target: target.basis()[t].0.clone(),
                src: source.basis()[s].0.clone(),
            });
        }
        Ok(ChainMapF2 {
            source,
            target,
            matrix,
            degree_shift,
        })
    }

    pub fn identity(complex: &GradedComplexF2) -> Self {
        ChainMapF2::new(
            complex.clone(),
            complex.clone(),
            F2Matrix::identity(complex.dim()),
            0,
        )
        .expect("identity is a chain map")
    }

    pub fn zero(source: GradedComplexF2, target: GradedComplexF2) -> Result<Self, ConeError> {
        let m = F2Matrix::zero(target.dim(), source.dim());
        ChainMapF2::new(source, target, m, 0)
    }
}

/// The mapping cone of a degree-0 chain map: basis = shifted source plus
/// target, boundary [[source.boundary, 0], [matrix, target.boundary]].
/// Source degrees are shifted against the boundary degree so the cone
/// boundary is homogeneous; square zero is equivalent to the chain-map
/// identity and asserted by the constructor.
pub fn build_cone(f: &ChainMapF2) -> Result<GradedComplexF2, ConeError> {
    if f.degree_shift != 0 || f.source.shift() != f.target.shift() {
        return Err(ConeError::ConeShape);
    }
    let shift = f.source.shift();
    let ns = f.source.dim();
    let nt = f.target.dim();
    let mut basis: Vec<(String, i64)> = Vec::with_capacity(ns + nt);
    for (name, d) in f.source.basis() {
        basis.push((format!("s:{name}"), d - shift));
    }
    for (name, d) in f.target.basis() {
        basis.push((format!("t:{name}"), *d));
    }
    let mut m = F2Matrix::zero(ns + nt, ns + nt);
    for (t, s) in f.source.boundary().entries() {
        m.set(t, s, true);
    }
    for (t, s) in f.target.boundary().entries() {
        m.set(ns + t, ns + s, true);
    }
    for (t, s) in f.matrix.entries() {
        m.set(ns + t, s, true);
    }
    Ok(GradedComplexF2::new(basis, m, shift)?)
}

pub fn is_acyclic(c: &GradedComplexF2) -> bool {
    c.is_acyclic()
}

/// Whether the induced map on homology is bijective in every degree, by
/// exact rank computations on kernels and images.
pub fn homology_map_bijective(f: &ChainMapF2) -> bool {
    let mut degrees: Vec<i64> = f
        .source
        .basis()
        .iter()
        .map(|(_, d)| *d)
        .chain(f.target.basis().iter().map(|(_, d)| d - f.degree_shift))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    for k in degrees {
        let src_k = f.source.indices_of_degree(k);
        let tgt_k = f.target.indices_of_degree(k + f.degree_shift);

        let src_h = homology_data(&f.source, k);
        let tgt_h = homology_data(&f.target, k + f.degree_shift);
        if src_h.dim != tgt_h.dim {
            return false;
        }
        if src_h.dim == 0 {
            continue;
        }
        // Map the source kernel basis through f, restricted to the target
        // degree block, and measure the induced rank modulo boundaries.
        let full_cols: Vec<Vec<bool>> = src_h
            .kernel
            .iter()
            .map(|v| {
                let mut full = vec![false; f.source.dim()];
                for (i, &idx) in src_k.iter().enumerate() {
                    full[idx] = v[i];
                }
                let image = f.matrix.apply(&full);
                tgt_k.iter().map(|&idx| image[idx]).collect()
            })
            .collect();
        let mapped = F2Matrix::from_columns(tgt_k.len(), &full_cols);
        let boundaries = F2Matrix::from_columns(tgt_k.len(), &tgt_h.boundaries);
        let induced_rank = mapped.hstack(&boundaries).rank() - boundaries.rank();
        if induced_rank != src_h.dim {
            return false;
        }
    }
    true
}

struct DegreeHomology {
    dim: usize,
    /// Kernel basis vectors in block coordinates.
    kernel: Vec<Vec<bool>>,
    /// Basis of the boundary subspace in block coordinates.
    boundaries: Vec<Vec<bool>>,
}

fn homology_data(c: &GradedComplexF2, k: i64) -> DegreeHomology {
    let block = c.indices_of_degree(k);
    let out_rows = c.indices_of_degree(k + c.shift());
    let in_cols = c.indices_of_degree(k - c.shift());
    let outgoing = c.boundary().submatrix(&out_rows, &block);
    let incoming = c.boundary().submatrix(&block, &in_cols);
    let kernel = outgoing.kernel_basis();
    let boundaries: Vec<Vec<bool>> = {
        let (_, pivots) = incoming.clone().eliminate();
        pivots.iter().map(|&c| incoming.column(c)).collect()
    };
    DegreeHomology {
        dim: kernel.len() - boundaries.len(),
        kernel,
        boundaries,
    }
}

/// Computes quasi-isomorphism and cone acyclicity by their own definitions
/// and asserts they agree.
pub fn quasi_iso_iff_acyclic_cone(f: &ChainMapF2) -> Result<(bool, bool), ConeError> {
    let is_quasi_iso = homology_map_bijective(f);
    let cone_acyclic = is_acyclic(&build_cone(f)?);
    if is_quasi_iso != cone_acyclic {
        return Err(ConeError::InternalDisagreement);
    }
    Ok((is_quasi_iso, cone_acyclic))
}

/// Grading offsets of the three summands: positive chords, intersection
/// points, negative chords.
pub const OFFSETS: [i64; 3] = [2, 0, 1];

pub const BLOCK_NAMES: [&str; 7] = ["d++", "d+0", "d+-", "d00", "d0-", "d-0", "d--"];

/// The three graded bases and seven blocks of the cobordism-pair complex.
/// Zero blocks below the diagonal (from the positive summand into the
/// others) are implicit and may not be supplied.
#[derive(Clone, Debug)]
pub struct CthulhuData {
    pub plus: Vec<(String, i64)>,
    pub intersection: Vec<(String, i64)>,
    pub minus: Vec<(String, i64)>,
    /// Blocks keyed by name; missing blocks are zero.
    pub blocks: BTreeMap<String, F2Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BasisElementJson {
    name: String,
    degree: i64,
}

/// Wire format: three basis lists plus sparse blocks as entry lists
/// [target_index, source_index].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CthulhuJson {
    plus: Vec<BasisElementJson>,
    intersection: Vec<BasisElementJson>,
    minus: Vec<BasisElementJson>,
    blocks: BTreeMap<String, Vec<(usize, usize)>>,
}

impl CthulhuData {
    pub fn from_json_str(s: &str) -> Result<CthulhuData, CthulhuLoadError> {
        let json: CthulhuJson = serde_json::from_str(s)?;
        let basis = |v: &[BasisElementJson]| -> Vec<(String, i64)> {
            v.iter().map(|b| (b.name.clone(), b.degree)).collect()
        };
        let plus = basis(&json.plus);
        let intersection = basis(&json.intersection);
        let minus = basis(&json.minus);
        let dims = [plus.len(), intersection.len(), minus.len()];
        let mut blocks = BTreeMap::new();
        for (name, entries) in &json.blocks {
            if ["d0+", "d-+"].contains(&name.as_str()) {
                return Err(ConeError::LowerTriangularBlock(name.clone()).into());
            }
            let Some(pos) = BLOCK_NAMES.iter().position(|n| n == name) else {
                return Err(ConeError::UnknownBlock(name.clone()).into());
            };
            let (t, s) = block_parts(pos);
            let mut m = F2Matrix::zero(dims[t], dims[s]);
            for &(r, c) in entries {
                if r >= m.rows() || c >= m.cols() {
                    return Err(ConeError::BlockDimensionMismatch {
                        block: name.clone(),
                        rows: r + 1,
                        cols: c + 1,
                        expected_rows: m.rows(),
                        expected_cols: m.cols(),
                    }
                    .into());
                }
                m.set(r, c, !m.get(r, c));
            }
            blocks.insert(name.clone(), m);
        }
        Ok(CthulhuData {
            plus,
            intersection,
            minus,
            blocks,
        })
    }

    fn block(&self, name: &str) -> F2Matrix {
        let pos = BLOCK_NAMES.iter().position(|n| *n == name).unwrap();
        let (t, s) = block_parts(pos);
        let dims = [self.plus.len(), self.intersection.len(), self.minus.len()];
        self.blocks
            .get(name)
            .cloned()
            .unwrap_or_else(|| F2Matrix::zero(dims[t], dims[s]))
    }
}

#[derive(Debug, Error)]
pub enum CthulhuLoadError {
    #[error("invalid three-block complex JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// (target part, source part) of each named block; 0 = plus, 1 =
/// intersection, 2 = minus.
fn block_parts(pos: usize) -> (usize, usize) {
    [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)][pos]
}

/// Outcome of the named verification checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CthulhuReport {
    /// d++ squares to zero: the positive chords form a subcomplex.
    pub subcomplex: bool,
    /// The lower 2x2 block squares to zero: the quotient complex.
    pub quotient: bool,
    /// *_{+0} = d++ d+0 + d+0 d00 + d+- d-0 = 0.
    pub star_plus_zero: bool,
    /// *_{+-} = d++ d+- + d+0 d0- + d+- d-- = 0.
    pub star_plus_minus: bool,
    /// Every block entry raises the offset grading by exactly 1.
    pub degree_one: bool,
    /// The assembled differential squares to zero (equivalent to the four
    /// identities above).
    pub total_square_zero: bool,
    /// Homology of the total complex vanishes; only computed when the total
    /// differential squares to zero and is graded.
    pub acyclic: Option<bool>,
}

impl CthulhuReport {
    pub fn all_identities(&self) -> bool {
        self.subcomplex && self.quotient && self.star_plus_zero && self.star_plus_minus
    }
}

/// Verifies the named identities of the three-block differential, its
/// uniform degree, and the acyclicity of the total complex.
pub fn assemble_cthulhu(data: &CthulhuData) -> Result<CthulhuReport, ConeError> {
    let dims = [data.plus.len(), data.intersection.len(), data.minus.len()];
    for (pos, name) in BLOCK_NAMES.iter().enumerate() {
        if let Some(m) = data.blocks.get(*name) {
            let (t, s) = block_parts(pos);
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(ConeError::BlockDimensionMismatch {
                    block: name.to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: dims[t],
                    expected_cols: dims[s],
                });
            }
        }
    }
    let dpp = data.block("d++");
    let dp0 = data.block("d+0");
    let dpm = data.block("d+-");
    let d00 = data.block("d00");
    let d0m = data.block("d0-");
    let dm0 = data.block("d-0");
    let dmm = data.block("d--");

    let subcomplex = dpp.mul(&dpp).is_zero();
    let quotient = {
        let a = d00.mul(&d00).add(&d0m.mul(&dm0));
        let b = d00.mul(&d0m).add(&d0m.mul(&dmm));
        let c = dm0.mul(&d00).add(&dmm.mul(&dm0));
        let d = dm0.mul(&d0m).add(&dmm.mul(&dmm));
        a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero()
    };
    let star_plus_zero = dpp
        .mul(&dp0)
        .add(&dp0.mul(&d00))
        .add(&dpm.mul(&dm0))
        .is_zero();
    let star_plus_minus = dpp
        .mul(&dpm)
        .add(&dp0.mul(&d0m))
        .add(&dpm.mul(&dmm))
        .is_zero();

    // Shifted degrees of the assembled complex.
    let parts = [&data.plus, &data.intersection, &data.minus];
    let shifted: Vec<i64> = (0..3)
        .flat_map(|p| parts[p].iter().map(move |(_, d)| d + OFFSETS[p]))
        .collect();
    let offset_of = |p: usize| -> usize { dims[..p].iter().sum() };
    let total_dim: usize = dims.iter().sum();
    let mut total = F2Matrix::zero(total_dim, total_dim);
    for (pos, name) in BLOCK_NAMES.iter().enumerate() {
        let (t, s) = block_parts(pos);
        let m = data.block(name);
        for (r, c) in m.entries() {
            total.set(offset_of(t) + r, offset_of(s) + c, true);
        }
    }
    let degree_one = total
        .entries()
        .iter()
        .all(|&(t, s)| shifted[t] == shifted[s] + 1);
    let total_square_zero = total.mul(&total).is_zero();
    debug_assert_eq!(
        total_square_zero,
        subcomplex && quotient && star_plus_zero && star_plus_minus
    );

    let acyclic = if total_square_zero && degree_one {
        let basis: Vec<(String, i64)> = (0..3)
            .flat_map(|p| {
                parts[p]
                    .iter()
                    .map(move |(n, d)| (format!("{}:{n}", ["+", "0", "-"][p]), d + OFFSETS[p]))
            })
            .collect();
        let complex = GradedComplexF2::new(basis, total, 1)?;
        Some(complex.is_acyclic())
    } else {
        None
    };

    Ok(CthulhuReport {
        subcomplex,
        quotient,
        star_plus_zero,
        star_plus_minus,
        degree_one,
        total_square_zero,
        acyclic,
    })
}

/// Seeded random square-zero complexes and chain maps for property tests:
/// direct sums of acyclic two-term complexes and zero summands, conjugated
/// by random degree-preserving invertible matrices, with null-homotopic
/// perturbations for the maps.
pub mod testgen {
    use rand::Rng;

    use super::*;

    /// A random square-zero graded complex with at most `max_dim` basis
    /// elements and boundary degree `shift`.
    pub fn random_complex<R: Rng>(rng: &mut R, max_dim: usize, shift: i64) -> GradedComplexF2 {
        let n = rng.random_range(1..=max_dim.max(1));
        // Degrees first, then pair adjacent-degree elements into acyclic
        // two-term summands.
        let degrees: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=3)).collect();
        let mut boundary = F2Matrix::zero(n, n);
        let mut used = vec![false; n];
        for src in 0..n {
            if used[src] {
                continue;
            }
            if rng.random_bool(0.7) {
                if let Some(tgt) = (0..n)
                    .find(|&t| !used[t] && t != src && degrees[t] == degrees[src] + shift)
                {
                    boundary.set(tgt, src, true);
                    used[src] = true;
                    used[tgt] = true;
                }
            }
        }
        // Conjugate by a random degree-preserving invertible matrix.
        let p = random_graded_invertible(rng, &degrees);
        let p_inv = p.inverse().expect("invertible by construction");
        let conjugated = p.mul(&boundary).mul(&p_inv);
        let basis: Vec<(String, i64)> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| (format!("e{i}"), d))
            .collect();
        GradedComplexF2::new(basis, conjugated, shift)
            .expect("conjugation preserves square zero and grading")
    }

    /// Random invertible block-diagonal matrix preserving the grading.
    pub fn random_graded_invertible<R: Rng>(rng: &mut R, degrees: &[i64]) -> F2Matrix {
        let n = degrees.len();
        let mut m = F2Matrix::identity(n);
        // Product of random transvections within degree blocks keeps the
        // matrix invertible and graded.
        for _ in 0..3 * n {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            if i != j && degrees[i] == degrees[j] {
                // row_i += row_j
                let row: Vec<bool> = (0..n).map(|c| m.get(j, c)).collect();
                for (c, &v) in row.iter().enumerate() {
                    if v {
                        m.set(i, c, !m.get(i, c));
                    }
                }
            }
        }
        m
    }

    /// A random chain map source -> target: a base matching of acyclic and
    /// homology summands where degrees allow, plus a null-homotopic term
    /// dT g + g dS with g random of degree -shift.
    pub fn random_chain_map<R: Rng>(
        rng: &mut R,
        source: &GradedComplexF2,
        target: &GradedComplexF2,
        include_identity_part: bool,
    ) -> ChainMapF2 {
        let ns = source.dim();
        let nt = target.dim();
        let mut base = F2Matrix::zero(nt, ns);
        if include_identity_part && ns == nt {
            let same = source
                .basis()
                .iter()
                .zip(target.basis())
                .all(|((_, d1), (_, d2))| d1 == d2);
            if same && source.boundary() == target.boundary() {
                base = F2Matrix::identity(ns);
            }
        }
        // Homotopy term: g has degree -shift so dT g + g dS has degree 0.
        let mut g = F2Matrix::zero(nt, ns);
        for t in 0..nt {
            for s in 0..ns {
                if target.basis()[t].1 == source.basis()[s].1 - source.shift()
                    && rng.random_bool(0.3)
                {
                    g.set(t, s, true);
                }
            }
        }
        let homotopic = target.boundary().mul(&g).add(&g.mul(source.boundary()));
        let matrix = base.add(&homotopic);
        ChainMapF2::new(source.clone(), target.clone(), matrix, 0)
            .expect("base and homotopic terms are chain maps")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn two_term(names: (&str, &str), degrees: (i64, i64), with_boundary: bool) -> GradedComplexF2 {
        let mut m = F2Matrix::zero(2, 2);
        if with_boundary {
            m.set(0, 1, true);
        }
        GradedComplexF2::new(
            vec![(names.0.into(), degrees.0), (names.1.into(), degrees.1)],
            m,
            -1,
        )
        .unwrap()
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = two_term(("x", "y"), (0, 1), false);
        let cone = build_cone(&ChainMapF2::identity(&c)).unwrap();
        assert!(is_acyclic(&cone));
    }

    #[test]
    fn cone_of_zero_map_carries_both_homologies() {
        let a = two_term(("x", "y"), (0, 1), false);
        let b = two_term(("u", "v"), (0, 1), false);
        let cone = build_cone(&ChainMapF2::zero(a, b).unwrap()).unwrap();
        let dims = cone.homology_dims();
        // Source homology shifted by one plus target homology.
        assert_eq!(dims.get(&0), Some(&1));
        assert_eq!(dims.get(&1), Some(&2));
        assert_eq!(dims.get(&2), Some(&1));
    }

    #[test]
    fn chain_map_violation_is_reported_with_witness() {
        let a = two_term(("x", "y"), (0, 1), true);
        let b = two_term(("u", "v"), (0, 1), false);
        // Identity matrix is not a chain map from a to b.
        let err = ChainMapF2::new(a, b, F2Matrix::identity(2), 0).unwrap_err();
        assert_eq!(
            err,
            ConeError::NotChainMap {
                target: "u".into(),
                src: "y".into()
            }
        );
    }

    #[test]
    fn quasi_iso_equivalence_on_handmade_instances() {
        let acyclic = two_term(("x", "y"), (0, 1), true);
        let with_homology = two_term(("x", "y"), (0, 1), false);
        let zero_between_acyclic =
            ChainMapF2::zero(acyclic.clone(), acyclic.clone()).unwrap();
        assert_eq!(
            quasi_iso_iff_acyclic_cone(&zero_between_acyclic).unwrap(),
            (true, true)
        );
        let zero_into_homology =
            ChainMapF2::zero(acyclic.clone(), with_homology.clone()).unwrap();
        assert_eq!(
            quasi_iso_iff_acyclic_cone(&zero_into_homology).unwrap(),
            (false, false)
        );
        let identity = ChainMapF2::identity(&with_homology);
        assert_eq!(quasi_iso_iff_acyclic_cone(&identity).unwrap(), (true, true));
    }

    #[test]
    fn quasi_iso_equivalence_on_random_instances() {
        let mut agree_true = 0;
        let mut agree_false = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let source = testgen::random_complex(&mut rng, 8, -1);
            let target = if rng.random_bool(0.5) {
                source.clone()
            } else {
                testgen::random_complex(&mut rng, 8, -1)
            };
            let with_identity = rng.random_bool(0.5);
            let f = testgen::random_chain_map(&mut rng, &source, &target, with_identity);
            let (q, a) = quasi_iso_iff_acyclic_cone(&f).unwrap();
            assert_eq!(q, a, "seed {seed}");
            if q {
                agree_true += 1;
            } else {
                agree_false += 1;
            }
        }
        assert!(agree_true > 0, "no quasi-isomorphism instances generated");
        assert!(agree_false > 0, "no non-quasi-isomorphism instances generated");
    }

    fn empty_data() -> CthulhuData {
        CthulhuData {
            plus: vec![],
            intersection: vec![],
            minus: vec![],
            blocks: BTreeMap::new(),
        }
    }

    #[test]
    fn empty_bases_pass_and_are_acyclic() {
        let report = assemble_cthulhu(&empty_data()).unwrap();
        assert!(report.all_identities());
        assert!(report.degree_one);
        assert_eq!(report.acyclic, Some(true));
    }

    #[test]
    fn zero_blocks_pass_but_are_not_acyclic() {
        let mut data = empty_data();
        data.plus = vec![("g".into(), 0)];
        data.intersection = vec![("x".into(), 0)];
        let report = assemble_cthulhu(&data).unwrap();
        assert!(report.all_identities());
        assert!(report.total_square_zero);
        assert_eq!(report.acyclic, Some(false));
    }

    #[test]
    fn displaced_pair_model_is_acyclic() {
        // No chord generators; intersection points killed by an acyclic d00.
        let mut data = empty_data();
        data.intersection = vec![("x".into(), 0), ("y".into(), 1)];
        // d00 has unshifted degree 1: x (degree 0) -> y (degree 1).
        data.blocks
            .insert("d00".into(), F2Matrix::from_entries(2, 2, &[(1, 0)]));
        let report = assemble_cthulhu(&data).unwrap();
        assert!(report.all_identities());
        assert!(report.degree_one);
        assert_eq!(report.acyclic, Some(true));
    }

    /// Crafted instances violating exactly one named identity each.
    #[test]
    fn each_identity_is_independently_falsifiable() {
        // (1) subcomplex: d++ not square-zero. Degrees: a -> b -> c with
        // d++ of unshifted degree 1.
        let mut d1 = empty_data();
        d1.plus = vec![("a".into(), 0), ("b".into(), 1), ("c".into(), 2)];
        d1.blocks.insert(
            "d++".into(),
            F2Matrix::from_entries(3, 3, &[(1, 0), (2, 1)]),
        );
        let r1 = assemble_cthulhu(&d1).unwrap();
        assert!(!r1.subcomplex);
        assert!(r1.quotient && r1.star_plus_zero && r1.star_plus_minus);
        assert!(!r1.total_square_zero);
        assert_eq!(r1.acyclic, None);

        // (2) quotient: d00 not square-zero, everything else empty.
        let mut d2 = empty_data();
        d2.intersection = vec![("x".into(), 0), ("y".into(), 1), ("z".into(), 2)];
        d2.blocks.insert(
            "d00".into(),
            F2Matrix::from_entries(3, 3, &[(1, 0), (2, 1)]),
        );
        let r2 = assemble_cthulhu(&d2).unwrap();
        assert!(!r2.quotient);
        assert!(r2.subcomplex && r2.star_plus_zero && r2.star_plus_minus);
        assert!(!r2.total_square_zero);

        // (3) *_{+0}: d+0 d00 nonzero with d00 square-zero; x -> y by d00,
        // y -> g by d+0 (unshifted degree -1: g has degree y+1-2 = 0).
        let mut d3 = empty_data();
        d3.plus = vec![("g".into(), 0)];
        d3.intersection = vec![("x".into(), 0), ("y".into(), 1)];
        d3.blocks
            .insert("d00".into(), F2Matrix::from_entries(2, 2, &[(1, 0)]));
        d3.blocks
            .insert("d+0".into(), F2Matrix::from_entries(1, 2, &[(0, 1)]));
        let r3 = assemble_cthulhu(&d3).unwrap();
        assert!(!r3.star_plus_zero);
        assert!(r3.subcomplex && r3.quotient && r3.star_plus_minus);
        assert!(r3.degree_one);
        assert!(!r3.total_square_zero);

        // (4) *_{+-}: d+0 d0- nonzero; m -> x by d0- (unshifted degree 2),
        // x -> g by d+0 (unshifted degree -1).
        let mut d4 = empty_data();
        d4.plus = vec![("g".into(), 1)];
        d4.intersection = vec![("x".into(), 2)];
        d4.minus = vec![("m".into(), 0)];
        d4.blocks
            .insert("d0-".into(), F2Matrix::from_entries(1, 1, &[(0, 0)]));
        d4.blocks
            .insert("d+0".into(), F2Matrix::from_entries(1, 1, &[(0, 0)]));
        let r4 = assemble_cthulhu(&d4).unwrap();
        assert!(!r4.star_plus_minus);
        assert!(r4.subcomplex && r4.quotient && r4.star_plus_zero);
        assert!(r4.degree_one);
        assert!(!r4.total_square_zero);
    }

    #[test]
    fn square_zero_iff_the_four_identities_on_random_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let np = rng.random_range(0..3usize);
            let n0 = rng.random_range(0..3usize);
            let nm = rng.random_range(0..3usize);
            let mut data = empty_data();
            data.plus = (0..np).map(|i| (format!("g{i}"), 0)).collect();
            data.intersection = (0..n0).map(|i| (format!("x{i}"), 0)).collect();
            data.minus = (0..nm).map(|i| (format!("m{i}"), 0)).collect();
            let dims = [np, n0, nm];
            for (pos, name) in BLOCK_NAMES.iter().enumerate() {
                let (t, s) = block_parts(pos);
                let mut m = F2Matrix::zero(dims[t], dims[s]);
                for r in 0..dims[t] {
                    for c in 0..dims[s] {
                        if rng.random_bool(0.4) {
                            m.set(r, c, true);
                        }
                    }
                }
                data.blocks.insert(name.to_string(), m);
            }
            // Grading is ignored here; only the algebraic equivalence is
            // exercised (the debug assertion inside checks it too).
            let report = assemble_cthulhu(&data).unwrap();
            assert_eq!(report.total_square_zero, report.all_identities());
        }
    }

    #[test]
    fn json_loading_and_block_validation() {
        let json = r#"{
            "plus": [{"name": "g", "degree": 0}],
            "intersection": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}],
            "minus": [],
            "blocks": {"d00": [[1, 0]]}
        }"#;
        let data = CthulhuData::from_json_str(json).unwrap();
        let report = assemble_cthulhu(&data).unwrap();
        assert!(report.all_identities());
        assert_eq!(report.acyclic, Some(false)); // g survives

        let bad = r#"{
            "plus": [], "intersection": [], "minus": [],
            "blocks": {"d0+": []}
        }"#;
        assert!(matches!(
            CthulhuData::from_json_str(bad),
            Err(CthulhuLoadError::Cone(ConeError::LowerTriangularBlock(_)))
        ));

        let mismatch = r#"{
            "plus": [{"name": "g", "degree": 0}],
            "intersection": [], "minus": [],
            "blocks": {"d++": [[3, 3]]}
        }"#;
        assert!(matches!(
            CthulhuData::from_json_str(mismatch),
            Err(CthulhuLoadError::Cone(ConeError::BlockDimensionMismatch { .. }))
        ));
    }
}
