//! First and second integral homology of finite groups.
//!
//! Three routes: `H₁` from a presentation's abelianization matrix, `H₁` and
//! `H₂` from a concrete multiplication table through the normalized bar
//! complex, and `H₂` of direct products from the Künneth formula
//! `H₂(G × H) = H₂(G) ⊕ H₂(H) ⊕ (H₁(G) ⊗ H₁(H))`.

use serde::Serialize;
use thiserror::Error;

use crate::coset_enum::GroupTable;
use crate::int::Int;
use crate::linalg::{cokernel, homology_quotient, AbelianError, FinAbGroup, IntMatrix, LinalgError};
use crate::presentations::{building_block, BlockKind, Presentation, PresentationError};

/// Default largest group order accepted by [`h2_from_table`]. The degree-3
/// chain group has `(order - 1)^3` basis elements.
pub const DEFAULT_H2_ORDER_CEILING: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("group order {order} exceeds the bar-complex ceiling {ceiling}; use the Künneth pipeline or raise the ceiling")]
    OrderCeilingExceeded { order: usize, ceiling: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

pub fn h1_from_presentation(p: &Presentation) -> FinAbGroup {
    cokernel(&p.abelianization_matrix())
}

/// Boundary maps of the normalized bar complex with trivial integral
/// coefficients in degrees 1 to 3, acting on column vectors.
///
/// The degree-k basis is the k-tuples of non-identity elements, indexed
/// lexicographically in element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarComplexSlice {
    pub d1: IntMatrix,
    pub d2: IntMatrix,
    pub d3: IntMatrix,
}

impl BarComplexSlice {
    pub fn satisfies_chain_condition(&self) -> bool {
        self.d1.mul(&self.d2).is_zero() && self.d2.mul(&self.d3).is_zero()
    }
}

struct BarBasis<'a> {
    gt: &'a GroupTable,
    index: Vec<Option<usize>>,
    m: usize,
}

impl<'a> BarBasis<'a> {
    fn new(gt: &'a GroupTable) -> Self {
        let e = gt.identity();
        let mut index = vec![None; gt.order()];
        let mut next = 0;
        for (g, slot) in index.iter_mut().enumerate() {
            if g != e {
                *slot = Some(next);
                next += 1;
            }
        }
        BarBasis { gt, index, m: next }
    }

    fn nonidentity(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.index.iter().enumerate().filter_map(|(g, i)| i.map(|i| (g, i)))
    }

    fn d1(&self) -> IntMatrix {
        IntMatrix::zeros(1, self.m)
    }

    /// `(g, h) ↦ (h) - (gh) + (g)`
    fn d2(&self) -> IntMatrix {
        let m = self.m;
        let mut t = Vec::with_capacity(3 * m * m);
        for (g, gi) in self.nonidentity() {
            for (h, hi) in self.nonidentity() {
                let col = gi * m + hi;
                t.push((hi, col, Int::ONE));
                if let Some(ghi) = self.index[self.gt.mul(g, h)] {
                    t.push((ghi, col, -Int::ONE));
                }
                t.push((gi, col, Int::ONE));
            }
        }
        IntMatrix::from_triplets(m, m * m, t)
    }

    /// `(g, h, k) ↦ (h, k) - (gh, k) + (g, hk) - (g, h)`
    fn d3(&self) -> IntMatrix {
        let m = self.m;
        let mut t = Vec::with_capacity(4 * m * m * m);
        for (g, gi) in self.nonidentity() {
            for (h, hi) in self.nonidentity() {
                let gh = self.index[self.gt.mul(g, h)];
                for (k, ki) in self.nonidentity() {
                    let col = (gi * m + hi) * m + ki;
                    t.push((hi * m + ki, col, Int::ONE));
                    if let Some(ghi) = gh {
                        t.push((ghi * m + ki, col, -Int::ONE));
                    }
                    if let Some(hki) = self.index[self.gt.mul(h, k)] {
                        t.push((gi * m + hki, col, Int::ONE));
                    }
                    t.push((gi * m + hi, col, -Int::ONE));
                }
            }
        }
        IntMatrix::from_triplets(m * m, m * m * m, t)
    }
}

pub fn bar_complex(gt: &GroupTable) -> BarComplexSlice {
    let basis = BarBasis::new(gt);
    BarComplexSlice { d1: basis.d1(), d2: basis.d2(), d3: basis.d3() }
}

/// `ker d1 / im d2`, which is the cokernel of `d2` since `d1 = 0`.
pub fn h1_from_table(gt: &GroupTable) -> Result<FinAbGroup, HomologyError> {
    let basis = BarBasis::new(gt);
    Ok(homology_quotient(&basis.d1(), &basis.d2())?)
}

/// Schur multiplier `ker d2 / im d3` from the bar complex, for orders up to
/// [`DEFAULT_H2_ORDER_CEILING`].
pub fn h2_from_table(gt: &GroupTable) -> Result<FinAbGroup, HomologyError> {
    h2_from_table_with_ceiling(gt, DEFAULT_H2_ORDER_CEILING)
}

pub fn h2_from_table_with_ceiling(gt: &GroupTable, ceiling: usize) -> Result<FinAbGroup, HomologyError> {
    if gt.order() > ceiling {
        return Err(HomologyError::OrderCeilingExceeded { order: gt.order(), ceiling });
    }
    let basis = BarBasis::new(gt);
    Ok(homology_quotient(&basis.d2(), &basis.d3())?)
}

/// `H₂(G × H)` from the homology of the factors.
pub fn h2_kunneth(
    h2g: &FinAbGroup,
    h2h: &FinAbGroup,
    h1g: &FinAbGroup,
    h1h: &FinAbGroup,
) -> Result<FinAbGroup, AbelianError> {
    Ok(h2g.direct_sum(&h2h.direct_sum(&h1g.tensor(h1h)?)))
}

/// Claimed Schur multipliers of the building blocks: trivial for `A_p` and
/// `C_p`, `(Z/p)^2` for `B_p`. The bar-complex oracle re-derives these in
/// the test suites.
pub fn block_h2_claim(kind: BlockKind, p: u64) -> FinAbGroup {
    match kind {
        BlockKind::A | BlockKind::C => FinAbGroup::trivial(),
        BlockKind::B => FinAbGroup::elementary(p, 2),
    }
}

/// `(H₁, H₂)` of `A_p^r × B_p^s × C_p^t`, folding the Künneth formula over
/// the factors in the order A, B, C.
pub fn block_product_homology(p: u64, r: usize, s: usize, t: usize) -> Result<(FinAbGroup, FinAbGroup), HomologyError> {
    let mut h1 = FinAbGroup::trivial();
    let mut h2 = FinAbGroup::trivial();
    for (kind, count) in [(BlockKind::A, r), (BlockKind::B, s), (BlockKind::C, t)] {
        if count == 0 {
            continue;
        }
        let block_h1 = h1_from_presentation(&building_block(kind, p)?);
        let block_h2 = block_h2_claim(kind, p);
        for _ in 0..count {
            h2 = h2_kunneth(&h2, &block_h2, &h1, &block_h1)?;
            h1 = h1.direct_sum(&block_h1);
        }
    }
    Ok((h1, h2))
}

pub fn h2_of_block_product(p: u64, r: usize, s: usize, t: usize) -> Result<FinAbGroup, HomologyError> {
    Ok(block_product_homology(p, r, s, t)?.1)
}
