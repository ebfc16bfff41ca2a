//! Betti-number bookkeeping for a closed manifold whose non-wandering set is
//! a pair of attractors built from disk bundles over closed manifolds with
//! expanding maps.
//!
//! Everything here is integer arithmetic on Betti vectors; no space or map is
//! represented. Homology of a sphere bundle with zero Euler class splits as
//! `H_l(boundary) = H_l(X) + H_{l-q+1}(X)`, and a surjective Mayer-Vietoris
//! map `H_l(P) -> H_l(N_1) + H_l(N_2)` forces dimension inequalities.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("Betti vector is empty")]
    Empty,
    #[error("beta_0 = {0}, expected 1")]
    NotConnected(u64),
    #[error("top Betti number beta_{degree} = {value}, expected 1")]
    NotOrientable { degree: usize, value: u64 },
    #[error("Poincare duality fails: beta_{i} = {a} but beta_{j} = {b}")]
    DualityFails { i: usize, j: usize, a: u64, b: u64 },
    #[error("fiber disk dimension q = {0} must be at least 2")]
    FiberTooSmall(usize),
    #[error("base dimension p = {0} must be at least 1")]
    BaseTooSmall(usize),
    #[error("p{which} + q{which} = {sum}, expected n = {n}")]
    DimensionMismatch { which: usize, sum: usize, n: usize },
    #[error("ambient dimension n = {0} is below 3")]
    AmbientTooSmall(usize),
}

/// Betti numbers `beta_0..beta_p` of a closed, connected, oriented
/// `p`-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiVector(Vec<u64>);

impl BettiVector {
    pub fn new(v: Vec<u64>) -> Result<Self, ObstructionError> {
        let p = v.len().checked_sub(1).ok_or(ObstructionError::Empty)?;
        if v[0] != 1 {
            return Err(ObstructionError::NotConnected(v[0]));
        }
        if v[p] != 1 {
            return Err(ObstructionError::NotOrientable {
                degree: p,
                value: v[p],
            });
        }
        for i in 0..=p / 2 {
            if v[i] != v[p - i] {
                return Err(ObstructionError::DualityFails {
                    i,
                    j: p - i,
                    a: v[i],
                    b: v[p - i],
                });
            }
        }
        Ok(BettiVector(v))
    }

    /// `(1, 1, ..., 1)` of length `p + 1`.
    pub fn all_ones(p: usize) -> Self {
        BettiVector(vec![1; p + 1])
    }

    /// Betti numbers of the `p`-torus: binomial coefficients.
    pub fn torus(p: usize) -> Self {
        let mut row = vec![1u64];
        for _ in 0..p {
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        BettiVector(row)
    }

    /// The `q`-sphere.
    pub fn sphere(q: usize) -> Self {
        let mut v = vec![0u64; q + 1];
        v[0] = 1;
        v[q] = 1;
        BettiVector(v)
    }

    pub fn manifold_dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `beta_l`, zero outside `0..=p`.
    pub fn get(&self, l: i64) -> u64 {
        if l < 0 {
            return 0;
        }
        self.0.get(l as usize).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// Betti vector of the sphere bundle `boundary N` of a `q`-disk bundle with
/// zero Euler class over `X`: `beta_l(X) + beta_{l-q+1}(X)`, for
/// `l = 0..p+q-1`.
pub fn gysin_boundary_betti(x: &BettiVector, q: usize) -> Result<BettiVector, ObstructionError> {
    if q < 2 {
        return Err(ObstructionError::FiberTooSmall(q));
    }
    let len = x.manifold_dim() + q;
    let shift = q as i64 - 1;
    let v = (0..len as i64)
        .map(|l| x.get(l) + x.get(l - shift))
        .collect();
    Ok(BettiVector(v))
}

/// Two attractors of types `(p1, q1)` and `(p2, q2)` in a closed `n`-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorPairSpec {
    pub n: usize,
    pub q1: usize,
    pub q2: usize,
    pub betti1: BettiVector,
    pub betti2: BettiVector,
}

impl AttractorPairSpec {
    pub fn new(
        n: usize,
        (q1, betti1): (usize, BettiVector),
        (q2, betti2): (usize, BettiVector),
    ) -> Result<Self, ObstructionError> {
        for (which, q, b) in [(1, q1, &betti1), (2, q2, &betti2)] {
            if q < 2 {
                return Err(ObstructionError::FiberTooSmall(q));
            }
            let p = b.manifold_dim();
            if p < 1 {
                return Err(ObstructionError::BaseTooSmall(p));
            }
            if p + q != n {
                return Err(ObstructionError::DimensionMismatch {
                    which,
                    sum: p + q,
                    n,
                });
            }
        }
        Ok(AttractorPairSpec {
            n,
            q1,
            q2,
            betti1,
            betti2,
        })
    }

    pub fn p1(&self) -> usize {
        self.n - self.q1
    }

    pub fn p2(&self) -> usize {
        self.n - self.q2
    }

    /// The same pair with `q1 <= q2`.
    pub fn normalized(&self) -> AttractorPairSpec {
        if self.q1 <= self.q2 {
            self.clone()
        } else {
            AttractorPairSpec {
                n: self.n,
                q1: self.q2,
                q2: self.q1,
                betti1: self.betti2.clone(),
                betti2: self.betti1.clone(),
            }
        }
    }
}

/// Dimension count for the composite `U_2 subset H_l(boundary N_2) ->
/// H_l(N_1) + H_l(N_2)` in degree `l`, assuming `q1 <= q2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub degree: usize,
    /// `dim H_l(boundary N_2)`.
    pub domain: u64,
    /// `dim U_2 = beta_{l-q2+1}(X_2)` when the fibre sphere has dimension at
    /// least 2, which places `U_2` in the kernel; otherwise 0.
    pub forced_kernel: u64,
    /// Upper bound on the image dimension: `domain - forced_kernel`.
    pub image_bound: u64,
    /// `beta_l(X_1) + beta_l(X_2)`, the dimension a surjection must reach.
    pub target: u64,
    /// Whether the `q2 >= 3` kernel argument applies.
    pub kernel_argument: bool,
    pub impossible: bool,
}

pub fn mv_surjectivity_gap(spec: &AttractorPairSpec, l: usize) -> GapReport {
    let s = spec.normalized();
    let l_i = l as i64;
    let boundary = gysin_boundary_betti(&s.betti2, s.q2).expect("q2 >= 2");
    let domain = boundary.get(l_i);
    let kernel_argument = s.q2 >= 3;
    let forced_kernel = if kernel_argument {
        s.betti2.get(l_i - s.q2 as i64 + 1)
    } else {
        0
    };
    let image_bound = domain - forced_kernel;
    let target = s.betti1.get(l_i) + s.betti2.get(l_i);
    GapReport {
        degree: l,
        domain,
        forced_kernel,
        image_bound,
        target,
        kernel_argument,
        impossible: image_bound < target,
    }
}

/// One inequality of the `q1 = q2 = 2` chain:
/// `beta_{l-1}(X_from) >= beta_l(X_to)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub degree: usize,
    /// 1 or 2: the base whose `beta_{l-1}` is on the left.
    pub from: usize,
    pub lhs: u64,
    pub rhs: u64,
}

impl ChainStep {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ObstructionVerdict {
    /// Some fibre has dimension at least 3: in degree `l = p1` the image of
    /// `H_l(boundary N_2)` is smaller than `H_l(N_1) + H_l(N_2)`.
    Case1Contradiction {
        degree: usize,
        report: GapReport,
        /// Every degree with a dimensional gap.
        witnesses: Vec<usize>,
    },
    /// `M` has the rational homology of the `n`-sphere.
    SphereForced {
        m_betti: Vec<u64>,
        chain: Vec<ChainStep>,
    },
    /// No diffeomorphism realizes the data.
    InputInconsistent { reason: String },
}

impl ObstructionVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            ObstructionVerdict::Case1Contradiction { .. } => "Case1Contradiction",
            ObstructionVerdict::SphereForced { .. } => "SphereForced",
            ObstructionVerdict::InputInconsistent { .. } => "InputInconsistent",
        }
    }
}

pub fn sphere_theorem_check(spec: &AttractorPairSpec) -> ObstructionVerdict {
    let s = spec.normalized();
    let n = s.n;
    if s.q2 >= 3 {
        let degree = s.p1();
        let witnesses = (1..n)
            .filter(|&l| mv_surjectivity_gap(&s, l).impossible)
            .collect();
        return ObstructionVerdict::Case1Contradiction {
            degree,
            report: mv_surjectivity_gap(&s, degree),
            witnesses,
        };
    }
    let b1 = gysin_boundary_betti(&s.betti1, s.q1).expect("q1 >= 2");
    let b2 = gysin_boundary_betti(&s.betti2, s.q2).expect("q2 >= 2");
    if b1 != b2 {
        let l = (0..b1.as_slice().len())
            .find(|&l| b1.get(l as i64) != b2.get(l as i64))
            .unwrap_or(0);
        return ObstructionVerdict::InputInconsistent {
            reason: format!(
                "boundary Betti numbers differ in degree {l}: {} vs {}",
                b1.get(l as i64),
                b2.get(l as i64)
            ),
        };
    }
    let mut chain = Vec::new();
    for l in 1..=n.saturating_sub(2) {
        let li = l as i64;
        for (from, a, b) in [(1, &s.betti1, &s.betti2), (2, &s.betti2, &s.betti1)] {
            let step = ChainStep {
                degree: l,
                from,
                lhs: a.get(li - 1),
                rhs: b.get(li),
            };
            if !step.holds() {
                let to = 3 - from;
                return ObstructionVerdict::InputInconsistent {
                    reason: format!(
                        "beta_{}(X{from}) = {} < beta_{l}(X{to}) = {} at l = {l}",
                        l - 1,
                        step.lhs,
                        step.rhs
                    ),
                };
            }
            chain.push(step);
        }
    }
    let mut m_betti = vec![0u64; n + 1];
    m_betti[0] = 1;
    m_betti[n] = 1;
    ObstructionVerdict::SphereForced { m_betti, chain }
}

/// First Betti counts when both bases are `(n-2)`-tori with `q = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricReport {
    pub n: usize,
    /// `beta_1` of the common boundary region: `n - 1`.
    pub boundary_b1: u64,
    /// `beta_1(N_1) + beta_1(N_2) = 2n - 4`.
    pub target_b1: u64,
    pub impossible: bool,
}

pub fn toric_corollary_check(n: usize) -> Result<ToricReport, ObstructionError> {
    if n < 3 {
        return Err(ObstructionError::AmbientTooSmall(n));
    }
    let torus = BettiVector::torus(n - 2);
    let boundary_b1 = gysin_boundary_betti(&torus, 2)?.get(1);
    let target_b1 = 2 * torus.get(1);
    Ok(ToricReport {
        n,
        boundary_b1,
        target_b1,
        impossible: boundary_b1 < target_b1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[u64]) -> BettiVector {
        BettiVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validates_duality() {
        assert!(BettiVector::new(vec![1, 2, 1]).is_ok());
        assert!(matches!(
            BettiVector::new(vec![1, 2, 3, 1]),
            Err(ObstructionError::DualityFails { .. })
        ));
        assert!(BettiVector::new(vec![]).is_err());
        assert_eq!(BettiVector::torus(4).as_slice(), &[1, 4, 6, 4, 1]);
    }

    #[test]
    fn gysin_examples() {
        assert_eq!(
            gysin_boundary_betti(&bv(&[1, 2, 1]), 2).unwrap(),
            bv(&[1, 3, 3, 1])
        );
        assert_eq!(
            gysin_boundary_betti(&bv(&[1, 1]), 2).unwrap(),
            bv(&[1, 2, 1])
        );
        assert_eq!(
            gysin_boundary_betti(&bv(&[1]), 4).unwrap(),
            BettiVector::sphere(3)
        );
        assert_eq!(
            gysin_boundary_betti(&bv(&[1]), 1),
            Err(ObstructionError::FiberTooSmall(1))
        );
    }

    #[test]
    fn torus_pair_in_dimension_four() {
        let t2 = BettiVector::torus(2);
        let spec = AttractorPairSpec::new(4, (2, t2.clone()), (2, t2)).unwrap();
        match sphere_theorem_check(&spec) {
            ObstructionVerdict::InputInconsistent { reason } => {
                assert!(reason.contains("at l = 1"), "{reason}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn all_ones_forces_sphere() {
        for n in 3..=12 {
            let b = BettiVector::all_ones(n - 2);
            let spec = AttractorPairSpec::new(n, (2, b.clone()), (2, b)).unwrap();
            match sphere_theorem_check(&spec) {
                ObstructionVerdict::SphereForced { m_betti, chain } => {
                    assert_eq!(m_betti.len(), n + 1);
                    assert_eq!(m_betti.iter().sum::<u64>(), 2);
                    assert!(chain.iter().all(|s| s.lhs == s.rhs));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn large_fibre_gives_case_one() {
        let spec =
            AttractorPairSpec::new(5, (2, BettiVector::torus(3)), (3, BettiVector::torus(2)))
                .unwrap();
        match sphere_theorem_check(&spec) {
            ObstructionVerdict::Case1Contradiction { degree, report, .. } => {
                assert_eq!(degree, 3);
                assert!(report.impossible);
                assert_eq!(report.target, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn q2_two_has_no_kernel_argument() {
        let b = BettiVector::all_ones(2);
        let spec = AttractorPairSpec::new(4, (2, b.clone()), (2, b)).unwrap();
        let r = mv_surjectivity_gap(&spec, 2);
        assert!(!r.kernel_argument && !r.impossible);
    }

    #[test]
    fn toric_counts() {
        let r4 = toric_corollary_check(4).unwrap();
        assert_eq!((r4.boundary_b1, r4.target_b1, r4.impossible), (3, 4, true));
        let r3 = toric_corollary_check(3).unwrap();
        assert_eq!((r3.boundary_b1, r3.target_b1, r3.impossible), (2, 2, false));
        let r10 = toric_corollary_check(10).unwrap();
        assert_eq!((r10.boundary_b1, r10.target_b1), (9, 16));
        assert!(toric_corollary_check(2).is_err());
    }

    #[test]
    fn toric_gap_report_in_degree_one() {
        let t2 = BettiVector::torus(2);
        let spec = AttractorPairSpec::new(4, (2, t2.clone()), (2, t2)).unwrap();
        let r = mv_surjectivity_gap(&spec, 1);
        assert_eq!((r.image_bound, r.target, r.impossible), (3, 4, true));
    }
}
