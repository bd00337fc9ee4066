//! Finite presentations, the three building blocks `A_p`, `B_p`, `C_p`, and
//! the direct-product presentation `⟨X ⊔ Y | R ⊔ S ⊔ {[x, y]}⟩`.

mod text;

pub use text::{parse_presentation, render_presentation, ParseError, RenderFormat};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deficiency::BlockCounts;
use crate::int::Int;
use crate::linalg::IntMatrix;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("relator {0} is the empty word")]
    EmptyRelator(usize),
    #[error("relator {relator} uses generator index {index} but only {num_generators} generators exist")]
    GeneratorOutOfRange { relator: usize, index: usize, num_generators: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}: expected a letter or underscore followed by letters, digits or underscores")]
    InvalidName(String),
    #[error("power product needs at least one factor")]
    EmptyPower,
}

/// The three families of building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    A,
    B,
    C,
}

impl BlockKind {
    pub const ALL: [BlockKind; 3] = [BlockKind::A, BlockKind::B, BlockKind::C];
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockKind::A => "A",
            BlockKind::B => "B",
            BlockKind::C => "C",
        };
        f.write_str(s)
    }
}

/// Generators and relator words, optionally annotated with the prime and
/// the block counts of the construction that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationWire")]
pub struct Presentation {
    #[serde(rename = "generators")]
    generator_names: Vec<String>,
    relators: Vec<Word>,
    prime: Option<u64>,
    pedigree: Option<BlockCounts>,
}

#[derive(Deserialize)]
struct PresentationWire {
    generators: Vec<String>,
    relators: Vec<Word>,
    #[serde(default)]
    prime: Option<u64>,
    #[serde(default)]
    pedigree: Option<BlockCounts>,
}

impl TryFrom<PresentationWire> for Presentation {
    type Error = PresentationError;

    fn try_from(w: PresentationWire) -> Result<Self, Self::Error> {
        let mut p = Presentation::new(w.generators, w.relators)?;
        p.prime = w.prime;
        p.pedigree = w.pedigree;
        Ok(p)
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Presentation {
    pub fn new(
        generator_names: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Presentation, PresentationError> {
        let mut seen = HashSet::new();
        for name in &generator_names {
            if !is_valid_name(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let n = generator_names.len();
        for (i, r) in relators.iter().enumerate() {
            if r.is_identity() {
                return Err(PresentationError::EmptyRelator(i));
            }
            if let Some(g) = r.max_generator().filter(|&g| g >= n) {
                return Err(PresentationError::GeneratorOutOfRange { relator: i, index: g, num_generators: n });
            }
        }
        Ok(Presentation { generator_names, relators, prime: None, pedigree: None })
    }

    pub fn with_prime(mut self, p: Option<u64>) -> Presentation {
        self.prime = p;
        self
    }

    pub fn with_pedigree(mut self, counts: Option<BlockCounts>) -> Presentation {
        self.pedigree = counts;
        self
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// `(generators, relators)`
    pub fn counts(&self) -> (usize, usize) {
        (self.num_generators(), self.num_relators())
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn pedigree(&self) -> Option<&BlockCounts> {
        self.pedigree.as_ref()
    }

    /// Generators minus relators, a lower bound for the deficiency of the
    /// group presented.
    pub fn deficiency(&self) -> i64 {
        self.num_generators() as i64 - self.num_relators() as i64
    }

    /// Exponent sums: one row per relator, one column per generator.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let triplets = self.relators.iter().enumerate().flat_map(|(i, r)| {
            r.exponent_sums(n)
                .expect("relators validated at construction")
                .into_iter()
                .enumerate()
                .filter(|(_, v)| *v != 0)
                .map(move |(j, v)| (i, j, Int::from(v)))
        });
        IntMatrix::from_triplets(self.num_relators(), n, triplets)
    }

    /// Appends `stamp` to every generator name (`a` becomes `a2`).
    pub fn with_stamped_names(&self, stamp: usize) -> Presentation {
        Presentation {
            generator_names: self.generator_names.iter().map(|n| format!("{n}{stamp}")).collect(),
            ..self.clone()
        }
    }

    /// Relators sorted, for comparisons that ignore relator order.
    pub fn sorted_relators(&self) -> Vec<Word> {
        let mut r = self.relators.clone();
        r.sort();
        r
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_presentation(self, RenderFormat::Native))
    }
}

fn a() -> Word {
    Word::generator(0)
}

fn b() -> Word {
    Word::generator(1)
}

fn block_names(count: usize) -> Vec<String> {
    ["a", "b"][..count].iter().map(|s| s.to_string()).collect()
}

/// The presentations of `A_p`, `B_p` (with the special form of `B_2`) and
/// `C_p`, with equations `u = v` stored as `u v⁻¹`.
pub fn building_block(kind: BlockKind, p: u64) -> Result<Presentation, PresentationError> {
    if !is_prime(p) {
        return Err(PresentationError::NotPrime(p));
    }
    let e = p as i64;
    let relators = match kind {
        // a^p = b^p, a^b = a^(p+1)
        BlockKind::A => vec![a().pow(e).mul(&b().pow(-e)), a().conjugate(&b()).mul(&a().pow(-(e + 1)))],
        BlockKind::B if p == 2 => vec![
            a().pow(4),
            b().pow(4),
            a().mul(&b()).pow(2),
            a().inverse().mul(&b()).pow(2),
        ],
        BlockKind::B => {
            let c = a().commutator(&b());
            vec![a().pow(e), b().pow(e), c.commutator(&a()), c.commutator(&b())]
        }
        BlockKind::C => vec![a().pow(e)],
    };
    let gens = if kind == BlockKind::C { 1 } else { 2 };
    let (r, s, t) = match kind {
        BlockKind::A => (1, 0, 0),
        BlockKind::B => (0, 1, 0),
        BlockKind::C => (0, 0, 1),
    };
    Ok(Presentation::new(block_names(gens), relators)?
        .with_prime(Some(p))
        .with_pedigree(Some(BlockCounts::new(Some(p), r, s, t))))
}

fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    (2..).map(|k| format!("{base}_{k}")).find(|n| !taken.contains(n)).expect("unbounded")
}

/// `⟨X ⊔ Y | R, S, [x, y] for x ∈ X, y ∈ Y⟩`.
///
/// Relators of `p` come first, then those of `q` with shifted indices, then
/// the commutators ordered by `(x, y)`. Clashing names from `q` get a
/// `_k` suffix. Primes and pedigrees carry over when both sides agree.
pub fn direct_product(p: &Presentation, q: &Presentation) -> Presentation {
    let shift = p.num_generators();
    let mut taken: HashSet<String> = p.generator_names.iter().cloned().collect();
    let mut names = p.generator_names.clone();
    for n in &q.generator_names {
        let name = if taken.contains(n) { fresh_name(n, &taken) } else { n.clone() };
        taken.insert(name.clone());
        names.push(name);
    }

    let mut relators = p.relators.clone();
    relators.extend(q.relators.iter().map(|r| r.map_generators(|g| g + shift)));
    for x in 0..shift {
        for y in 0..q.num_generators() {
            relators.push(Word::generator(x).commutator(&Word::generator(y + shift)));
        }
    }

    let prime = match (p.prime, q.prime) {
        (Some(a), Some(b)) if a == b => Some(a),
        _ => None,
    };
    let pedigree = match (&p.pedigree, &q.pedigree) {
        (Some(x), Some(y)) if prime.is_some() && x.p == y.p => {
            Some(BlockCounts::new(prime, x.r + y.r, x.s + y.s, x.t + y.t))
        }
        _ => None,
    };
    Presentation { generator_names: names, relators, prime, pedigree }
}

/// `P^k` as a left fold of [`direct_product`], factor `i` stamped with `i`.
pub fn power_product(p: &Presentation, k: usize) -> Result<Presentation, PresentationError> {
    match k {
        0 => Err(PresentationError::EmptyPower),
        1 => Ok(p.clone()),
        _ => Ok(product_of(&vec![p.clone(); k])),
    }
}

/// Left fold of [`direct_product`] over `factors`; names are stamped with the
/// factor position when there is more than one factor.
pub fn product_of(factors: &[Presentation]) -> Presentation {
    assert!(!factors.is_empty(), "empty product");
    if factors.len() == 1 {
        return factors[0].clone();
    }
    let mut acc = factors[0].with_stamped_names(1);
    for (i, f) in factors.iter().enumerate().skip(1) {
        acc = direct_product(&acc, &f.with_stamped_names(i + 1));
    }
    acc
}
