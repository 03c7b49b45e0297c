//! Character-lattice matrices of products of two CM abelian varieties, their
//! Mumford-Tate dimensions, and the status of the two projections.
//!
//! The product's Mumford-Tate torus is the image of `T_L` in `T_E1 × T_E2`.
//! Dually, its character lattice is `(Z[H1\G] ⊕ Z[H2\G]) / ker M`, where the
//! pair matrix `M` has one 0/1 column per embedding. Projection `π_i` is an
//! isomorphism iff `ker M` together with the block-`i` coordinates spans the
//! whole lattice, and an isogeny iff that span has finite index.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cmtype::{self, CMFactor, CMType};
use crate::error::{Error, Result};
use crate::groups::{CentralInvolution, FiniteGroup};
use crate::zlattice::{self, IntMatrix, SpanStatus};

/// Two CM factors presented inside one common Galois group.
#[derive(Clone, Debug)]
pub struct PairInput {
    pub group: Arc<FiniteGroup>,
    pub rho: CentralInvolution,
    pub factor1: CMFactor,
    pub factor2: CMFactor,
}

impl PairInput {
    pub fn new(factor1: CMFactor, factor2: CMFactor) -> Result<Self> {
        let group = Arc::clone(factor1.cm_type.group());
        let rho = factor1.cm_type.rho();
        let g2 = factor2.cm_type.group();
        if !(Arc::ptr_eq(&group, g2) || *group == **g2) || factor2.cm_type.rho() != rho {
            return Err(Error::FactorMismatch);
        }
        Ok(PairInput {
            group,
            rho,
            factor1,
            factor2,
        })
    }

    pub fn swapped(&self) -> PairInput {
        PairInput {
            group: Arc::clone(&self.group),
            rho: self.rho,
            factor1: self.factor2.clone(),
            factor2: self.factor1.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProjectionStatus {
    Neither,
    Isogeny,
    Iso,
}

impl ProjectionStatus {
    /// ISO counts as at least ISOGENY.
    pub fn at_least(self, other: ProjectionStatus) -> bool {
        self >= other
    }

    fn from_span(span: &SpanStatus) -> Self {
        match span {
            SpanStatus::Full { .. } => ProjectionStatus::Iso,
            SpanStatus::FiniteIndex { .. } => ProjectionStatus::Isogeny,
            SpanStatus::InfiniteIndex { .. } => ProjectionStatus::Neither,
        }
    }
}

impl fmt::Display for ProjectionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionStatus::Iso => "ISO",
            ProjectionStatus::Isogeny => "ISOGENY",
            ProjectionStatus::Neither => "NEITHER",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairAnalysis {
    pub dim_mt_1: usize,
    pub dim_mt_2: usize,
    pub dim_mt_product: usize,
    pub dim_hg_1: usize,
    pub dim_hg_2: usize,
    pub dim_hg_product: usize,
    pub status_pi1: ProjectionStatus,
    pub status_pi2: ProjectionStatus,
    pub kernel_rank: usize,
    pub matrix: IntMatrix,
    pub kernel: IntMatrix,
}

impl PairAnalysis {
    pub fn dims_equal(&self) -> bool {
        self.dim_mt_product == self.dim_mt_1 && self.dim_mt_product == self.dim_mt_2
    }
}

/// Matrix of `N*φ*` for one factor: rows indexed by `G`, columns by `H\G`,
/// entry `(g1, Hg2)` equal to 1 iff `g1 g2⁻¹ ∈ Φ̃*`.
pub fn reflex_norm_block(t: &CMType) -> IntMatrix {
    let g = t.group();
    let star = cmtype::reflex(t).lift_inverse;
    let space = t.space();
    let reps: Vec<usize> = space.representatives();
    let rows: Vec<Vec<i64>> = g
        .elements()
        .map(|g1| {
            reps.iter()
                .map(|&g2| i64::from(star.contains(g.mul(g1, g.inv(g2)))))
                .collect()
        })
        .collect();
    IntMatrix::from_rows_with_cols(&rows, reps.len())
}

/// `[M_1 | M_2]`
pub fn pair_matrix(p: &PairInput) -> IntMatrix {
    reflex_norm_block(&p.factor1.cm_type).hstack(&reflex_norm_block(&p.factor2.cm_type))
}

/// `(dim MT, dim Hg)` of a single CM abelian variety.
pub fn mt_dimension(t: &CMType) -> (usize, usize) {
    let dim = zlattice::rank(&reflex_norm_block(t));
    (dim, dim.saturating_sub(1))
}

pub fn pair_analysis(p: &PairInput) -> PairAnalysis {
    let m1 = reflex_norm_block(&p.factor1.cm_type);
    let m2 = reflex_norm_block(&p.factor2.cm_type);
    let (c1, c2) = (m1.cols(), m2.cols());
    let dim_mt_1 = zlattice::rank(&m1);
    let dim_mt_2 = zlattice::rank(&m2);
    let matrix = m1.hstack(&m2);
    let kernel = zlattice::kernel_basis(&matrix);
    let total = c1 + c2;
    let dim_mt_product = total - kernel.rows();

    // ker M + (block i) = Z^{c1+c2} iff the projection of ker M onto the
    // other block's coordinates spans that block, with the same index.
    let other_block = |offset: usize, width: usize| {
        let cols: Vec<usize> = (offset..offset + width).collect();
        zlattice::span_status(&kernel.select_cols(&cols), width)
    };
    let status_pi1 = ProjectionStatus::from_span(&other_block(c1, c2));
    let status_pi2 = ProjectionStatus::from_span(&other_block(0, c1));

    PairAnalysis {
        dim_mt_1,
        dim_mt_2,
        dim_mt_product,
        dim_hg_1: dim_mt_1.saturating_sub(1),
        dim_hg_2: dim_mt_2.saturating_sub(1),
        dim_hg_product: dim_mt_product.saturating_sub(1),
        status_pi1,
        status_pi2,
        kernel_rank: kernel.rows(),
        matrix,
        kernel,
    }
}
