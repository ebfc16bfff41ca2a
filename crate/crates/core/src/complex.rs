//! Bounded cochain complexes of rational vector spaces, their cohomology with
//! explicit cocycle bases, and maps induced on cohomology.

use crate::linalg::matrix::echelon_basis;
use crate::linalg::rational::Rat;
use crate::linalg::QMat;
use crate::spectra::{is_expanding_matrix, ExpansionVerdict};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("expected {expected} differentials, got {got}")]
    DifferentialCount { expected: usize, got: usize },
    #[error("differential in degree {degree} is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape {
        degree: usize,
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("d_{} d_{} is nonzero", .degree + 1, .degree)]
    NotAComplex { degree: usize },
    #[error("expected {expected} maps, got {got}")]
    MapCount { expected: usize, got: usize },
    #[error("map in degree {degree} does not commute with the differential")]
    NotAChainMap { degree: usize },
    #[error("map in degree {degree} is not square of the right size")]
    MapShape { degree: usize },
}

/// `C_0 -> C_1 -> ... -> C_top` with `d_i: C_i -> C_{i+1}` stored as a
/// `dims[i+1] x dims[i]` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    diffs: Vec<QMat>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, diffs: Vec<QMat>) -> Result<Self, ComplexError> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(ComplexError::DifferentialCount {
                expected,
                got: diffs.len(),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(ComplexError::Shape {
                    degree: i,
                    rows: d.rows(),
                    cols: d.cols(),
                    want_rows: dims[i + 1],
                    want_cols: dims[i],
                });
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !(&diffs[i + 1] * &diffs[i]).is_zero() {
                return Err(ComplexError::NotAComplex { degree: i });
            }
        }
        Ok(CochainComplex { dims, diffs })
    }

    /// All differentials zero.
    pub fn with_zero_differentials(dims: Vec<usize>) -> Self {
        let diffs = dims.windows(2).map(|w| QMat::zeros(w[1], w[0])).collect();
        CochainComplex { dims, diffs }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// `d_i`, or `None` past the top degree.
    pub fn differential(&self, i: usize) -> Option<&QMat> {
        self.diffs.get(i)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    /// Cohomology in every degree `0..=top`.
    pub fn cohomology(&self) -> Vec<CohomologySpace> {
        (0..self.dims.len())
            .map(|i| self.cohomology_at(i))
            .collect()
    }

    pub fn cohomology_at(&self, i: usize) -> CohomologySpace {
        let n = self.dims[i];
        let boundaries = match i.checked_sub(1) {
            Some(p) => self.diffs[p].image_basis(),
            None => Vec::new(),
        };
        let cocycles = match self.diffs.get(i) {
            Some(d) => d.kernel_basis(),
            None => echelon_basis(n, &standard_basis(n)),
        };
        // Greedy complement of the boundaries inside the cocycles.
        let mut spanning = boundaries.clone();
        let mut reps: Vec<Vec<Rat>> = Vec::new();
        let mut rank = boundaries.len();
        for z in cocycles {
            spanning.push(z.clone());
            let r = QMat::from_columns(n, &spanning).rank();
            if r > rank {
                rank = r;
                reps.push(z);
            } else {
                spanning.pop();
            }
        }
        let h = reps.len();
        let representatives = QMat::from_columns(n, &reps);
        // Left inverse of [B | R]; its last h rows read off R-coordinates.
        let projection = if h == 0 {
            QMat::zeros(0, n)
        } else {
            let m = QMat::from_columns(n, &spanning);
            let mt = m.transpose();
            let gram_inv = (&mt * &m).inverse().expect("columns are independent");
            let left = &gram_inv * &mt;
            let b = boundaries.len();
            left.submatrix(&(b..b + h).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())
        };
        CohomologySpace {
            degree: i,
            dim: h,
            representatives,
            projection,
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.cohomology().iter().map(|c| c.dim).collect()
    }
}

fn standard_basis(n: usize) -> Vec<Vec<Rat>> {
    QMat::identity(n).columns()
}

pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// `H^i = ker d_i / im d_{i-1}` with a basis of cocycle representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologySpace {
    pub degree: usize,
    pub dim: usize,
    /// `dims[i] x dim`; columns are cocycles whose classes form a basis.
    pub representatives: QMat,
    /// `dim x dims[i]`; on cocycles, the coordinates of the class.
    pub projection: QMat,
}

impl CohomologySpace {
    /// Class coordinates of a cocycle.
    pub fn project(&self, cocycle: &[Rat]) -> Vec<Rat> {
        self.projection.mul_vec(cocycle)
    }
}

/// A chain map of a complex to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEndomorphism {
    complex: CochainComplex,
    maps: Vec<QMat>,
}

impl ChainEndomorphism {
    pub fn new(complex: CochainComplex, maps: Vec<QMat>) -> Result<Self, ComplexError> {
        if maps.len() != complex.dims.len() {
            return Err(ComplexError::MapCount {
                expected: complex.dims.len(),
                got: maps.len(),
            });
        }
        for (i, f) in maps.iter().enumerate() {
            if f.rows() != complex.dims[i] || f.cols() != complex.dims[i] {
                return Err(ComplexError::MapShape { degree: i });
            }
        }
        for (i, d) in complex.diffs.iter().enumerate() {
            if d * &maps[i] != &maps[i + 1] * d {
                return Err(ComplexError::NotAChainMap { degree: i });
            }
        }
        Ok(ChainEndomorphism { complex, maps })
    }

    pub fn identity(complex: CochainComplex) -> Self {
        let maps = complex.dims.iter().map(|&n| QMat::identity(n)).collect();
        ChainEndomorphism { complex, maps }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn maps(&self) -> &[QMat] {
        &self.maps
    }

    /// Degreewise product `self . other`.
    pub fn compose(&self, other: &ChainEndomorphism) -> Result<Self, ComplexError> {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a * b)
            .collect();
        ChainEndomorphism::new(self.complex.clone(), maps)
    }
}

/// Matrices of the induced maps on cohomology, in the bases of
/// [`CochainComplex::cohomology`].
pub fn induced_on_cohomology(f: &ChainEndomorphism) -> Vec<QMat> {
    induced_with(f, &f.complex.cohomology())
}

pub fn induced_with(f: &ChainEndomorphism, spaces: &[CohomologySpace]) -> Vec<QMat> {
    spaces
        .iter()
        .map(|h| {
            if h.dim == 0 {
                QMat::zeros(0, 0)
            } else {
                let image = &f.maps[h.degree] * &h.representatives;
                &h.projection * &image
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeExpansion {
    pub degree: usize,
    /// Verdict for `f_i` on the cochains.
    pub chain: ExpansionVerdict,
    /// Matrix and verdict of the induced map on `H^i`.
    pub induced: QMat,
    pub cohomology: ExpansionVerdict,
}

/// Per positive degree, whether `f_i` is expanding and whether the induced
/// map on cohomology is.
pub fn chain_exp_check(f: &ChainEndomorphism) -> Vec<DegreeExpansion> {
    let induced = induced_on_cohomology(f);
    (1..f.maps.len())
        .map(|i| DegreeExpansion {
            degree: i,
            chain: is_expanding_matrix(&f.maps[i]).expect("square"),
            cohomology: is_expanding_matrix(&induced[i]).expect("square"),
            induced: induced[i].clone(),
        })
        .collect()
}

/// True when every `f_i` with `i > 0` is expanding but some induced map is
/// not.
pub fn contradicts_expansion(report: &[DegreeExpansion]) -> bool {
    report.iter().all(|d| d.chain.is_expanding())
        && report.iter().any(|d| !d.cohomology.is_expanding())
}

/// `A --(i1, i2)--> B1 + B2 --(j1 - j2)--> C`, exact in the middle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTriple {
    pub i1: QMat,
    pub i2: QMat,
    pub j1: QMat,
    pub j2: QMat,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactTripleError {
    #[error("map shapes do not fit A -> B1 + B2 -> C")]
    Shape,
    #[error("psi . phi is nonzero")]
    CompositionNonzero,
    #[error("not exact: rank phi {rank_phi} + rank psi {rank_psi} != dim B1 + dim B2 = {middle}")]
    NotExact {
        rank_phi: usize,
        rank_psi: usize,
        middle: usize,
    },
}

impl ExactTriple {
    pub fn new(i1: QMat, i2: QMat, j1: QMat, j2: QMat) -> Result<Self, ExactTripleError> {
        let a = i1.cols();
        if i2.cols() != a
            || j1.cols() != i1.rows()
            || j2.cols() != i2.rows()
            || j1.rows() != j2.rows()
        {
            return Err(ExactTripleError::Shape);
        }
        let t = ExactTriple { i1, i2, j1, j2 };
        let (phi, psi) = (t.phi(), t.psi());
        if !(&psi * &phi).is_zero() {
            return Err(ExactTripleError::CompositionNonzero);
        }
        let (rank_phi, rank_psi) = (phi.rank(), psi.rank());
        let middle = phi.rows();
        if rank_phi + rank_psi != middle {
            return Err(ExactTripleError::NotExact {
                rank_phi,
                rank_psi,
                middle,
            });
        }
        Ok(t)
    }

    /// `phi = (i1; i2)`.
    pub fn phi(&self) -> QMat {
        self.i1.vstack(&self.i2)
    }

    /// `psi = (j1 | -j2)`.
    pub fn psi(&self) -> QMat {
        self.j1.hstack(&-&self.j2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapShape {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

impl MapShape {
    fn of(m: &QMat) -> Self {
        MapShape {
            rank: m.rank(),
            rows: m.rows(),
            cols: m.cols(),
        }
    }

    pub fn injective(&self) -> bool {
        self.rank == self.cols
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    /// `a` to `d`, with a `'` for the `(i2, j1)` variants.
    pub label: &'static str,
    pub premise: bool,
    pub conclusion: bool,
}

impl Implication {
    pub fn violated(&self) -> bool {
        self.premise && !self.conclusion
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTripleReport {
    pub i1: MapShape,
    pub i2: MapShape,
    pub j1: MapShape,
    pub j2: MapShape,
    pub phi: MapShape,
    pub psi: MapShape,
    pub implications: Vec<Implication>,
}

impl ExactTripleReport {
    pub fn violations(&self) -> Vec<&Implication> {
        self.implications.iter().filter(|i| i.violated()).collect()
    }
}

/// Ranks of all six maps and the injectivity/surjectivity transfer rules
/// between `i1` and `j2` (and between `i2` and `j1`).
pub fn exact_triple_analyze(t: &ExactTriple) -> ExactTripleReport {
    let i1 = MapShape::of(&t.i1);
    let i2 = MapShape::of(&t.i2);
    let j1 = MapShape::of(&t.j1);
    let j2 = MapShape::of(&t.j2);
    let phi = MapShape::of(&t.phi());
    let psi = MapShape::of(&t.psi());
    let rules = |i: MapShape, j: MapShape, primed: bool| {
        let l = |a: &'static str, b: &'static str| if primed { b } else { a };
        vec![
            Implication {
                label: l("a", "a'"),
                premise: i.injective(),
                conclusion: j.injective(),
            },
            Implication {
                label: l("b", "b'"),
                premise: j.injective() && phi.injective(),
                conclusion: i.injective(),
            },
            Implication {
                label: l("c", "c'"),
                premise: i.surjective() && psi.surjective(),
                conclusion: j.surjective(),
            },
            Implication {
                label: l("d", "d'"),
                premise: j.surjective(),
                conclusion: i.surjective(),
            },
        ]
    };
    let mut implications = rules(i1, j2, false);
    implications.extend(rules(i2, j1, true));
    ExactTripleReport {
        i1,
        i2,
        j1,
        j2,
        phi,
        psi,
        implications,
    }
}
