use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::int::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("tensor product is only supported for finite groups (got torsion-free rank {0})")]
    InfiniteTensorFactor(usize),
}

/// A finitely generated abelian group `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with
/// `1 < d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    torsion_free_rank: usize,
    invariant_factors: Vec<Int>,
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            torsion_free_rank: usize,
            invariant_factors: Vec<Int>,
        }
        let w = Wire::deserialize(deserializer)?;
        Ok(FinAbGroup::new(w.torsion_free_rank, w.invariant_factors))
    }
}

impl FinAbGroup {
    /// Normalizes arbitrary cyclic orders: units are dropped, a zero order
    /// contributes a free summand, and the rest is put in chain form.
    pub fn new(torsion_free_rank: usize, cyclic_orders: impl IntoIterator<Item = Int>) -> FinAbGroup {
        let mut rank = torsion_free_rank;
        let mut factors = Vec::new();
        for d in cyclic_orders {
            let d = d.abs();
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                factors.push(d);
            }
        }
        FinAbGroup { torsion_free_rank: rank, invariant_factors: invariant_chain(factors) }
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup { torsion_free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> FinAbGroup {
        FinAbGroup { torsion_free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn cyclic(order: u64) -> FinAbGroup {
        FinAbGroup::new(0, [Int::from(order)])
    }

    /// `(Z/p)^k`
    pub fn elementary(p: u64, k: usize) -> FinAbGroup {
        FinAbGroup::new(0, std::iter::repeat(Int::from(p)).take(k))
    }

    pub fn torsion_free_rank(&self) -> usize {
        self.torsion_free_rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion_free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.torsion_free_rank == 0
    }

    /// Cardinality, or `None` when the group is infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().fold(Int::ONE, |acc, d| &acc * d))
    }

    /// Size of a smallest generating set, `d(A)`.
    pub fn min_generators(&self) -> usize {
        self.torsion_free_rank + self.invariant_factors.len()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        FinAbGroup::new(
            self.torsion_free_rank + other.torsion_free_rank,
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned(),
        )
    }

    /// `A ⊗ B` for finite `A`, `B`: one `Z/gcd(d, e)` per pair of factors.
    pub fn tensor(&self, other: &FinAbGroup) -> Result<FinAbGroup, AbelianError> {
        for g in [self, other] {
            if g.torsion_free_rank > 0 {
                return Err(AbelianError::InfiniteTensorFactor(g.torsion_free_rank));
            }
        }
        Ok(FinAbGroup::new(
            0,
            self.invariant_factors
                .iter()
                .flat_map(|d| other.invariant_factors.iter().map(move |e| d.gcd(e))),
        ))
    }
}

fn invariant_chain(mut d: Vec<Int>) -> Vec<Int> {
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !d[j].is_multiple_of(&d[i]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.retain(|x| !x.is_one());
    d
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.torsion_free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // group equal factors: Z/2 ⊕ Z/2 is shown as (Z/2)^2
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let mut k = 1;
            while i + k < self.invariant_factors.len() && &self.invariant_factors[i + k] == d {
                k += 1;
            }
            if k == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{k}"));
            }
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}
