use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::{CosetEnumError, CosetTable};
use crate::words::{Letter, Word};

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 200_000;

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    product: Vec<usize>,
    identity: usize,
    inverses: Vec<Option<usize>>,
    element_words: Vec<Word>,
    generator_names: Vec<String>,
}

impl GroupTable {
    /// Wraps an explicit table. Entries must lie in `0..n`; group axioms are
    /// not checked here (see [`validate_group`]).
    pub fn from_product(product: Vec<Vec<usize>>, identity: usize) -> Result<GroupTable, CosetEnumError> {
        let n = product.len();
        if n == 0 || identity >= n || product.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(CosetEnumError::MalformedTable);
        }
        let product: Vec<usize> = product.into_iter().flatten().collect();
        let inverses = (0..n).map(|x| (0..n).find(|&y| product[x * n + y] == identity)).collect();
        Ok(GroupTable {
            order: n,
            product,
            identity,
            inverses,
            element_words: Vec::new(),
            generator_names: Vec::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b]
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.inverses[x]
    }

    /// Representative words, empty for tables not built from a presentation.
    pub fn element_words(&self) -> &[Word] {
        &self.element_words
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.product.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.syllables()
            .into_iter()
            .map(|(g, e)| {
                let name = self.generator_names.get(g).cloned().unwrap_or_else(|| format!("x{g}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Serialize for GroupTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            order: usize,
            product: Vec<Vec<usize>>,
            words: Vec<String>,
        }
        Wire {
            order: self.order,
            product: self.rows(),
            words: self.element_words.iter().map(|w| self.render_word(w)).collect(),
        }
        .serialize(serializer)
    }
}

/// The regular representation read off a closed coset table over the
/// trivial subgroup: element `i` is the coset reached from the base coset by
/// its representative word, and `i * j` follows `j`'s word from coset `i`.
pub fn multiplication_table(ct: &CosetTable) -> Result<GroupTable, CosetEnumError> {
    if !ct.is_closed() {
        return Err(CosetEnumError::NotClosed);
    }
    let n = ct.num_cosets();
    let cols = ct.num_columns();

    // breadth-first spanning tree from the base coset
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = vec![0usize];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for x in 0..cols {
            let d = ct.action(c, x).expect("closed");
            if !seen[d] {
                seen[d] = true;
                tree[d] = Some((c, x));
                order.push(d);
            }
        }
    }
    if order.len() != n {
        return Err(CosetEnumError::NotClosed);
    }

    let mut words = vec![Word::identity(); n];
    for &c in &order[1..] {
        let (parent, x) = tree[c].expect("non-root has a parent");
        let letter = Letter { generator: x / 2, inverse: x % 2 == 1 };
        words[c] = words[parent].mul(&Word::reduce([letter]));
    }

    let mut product = vec![0usize; n * n];
    for i in 0..n {
        product[i * n] = i;
        for &j in &order[1..] {
            let (parent, x) = tree[j].expect("non-root has a parent");
            product[i * n + j] = ct.action(product[i * n + parent], x).expect("closed");
        }
    }
    let inverses = (0..n).map(|x| (0..n).find(|&y| product[x * n + y] == 0)).collect();
    Ok(GroupTable {
        order: n,
        product,
        identity: 0,
        inverses,
        element_words: words,
        generator_names: ct.generator_names().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupViolation {
    RowNotPermutation { row: usize },
    ColumnNotPermutation { column: usize },
    Identity { element: usize },
    MissingInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociativityCheck {
    Exhaustive,
    Sampled { triples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub associativity: AssociativityCheck,
    pub counterexample: Option<GroupViolation>,
}

fn is_permutation(values: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for v in values {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Checks the Latin-square property, identity, inverses and associativity,
/// stopping at the first failure.
pub fn validate_group(gt: &GroupTable) -> ValidationReport {
    let n = gt.order;
    let associativity = if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        AssociativityCheck::Exhaustive
    } else {
        AssociativityCheck::Sampled { triples: SAMPLED_TRIPLES }
    };
    let fail = |v| ValidationReport { passed: false, associativity, counterexample: Some(v) };

    for r in 0..n {
        if !is_permutation((0..n).map(|c| gt.mul(r, c)), n) {
            return fail(GroupViolation::RowNotPermutation { row: r });
        }
    }
    for c in 0..n {
        if !is_permutation((0..n).map(|r| gt.mul(r, c)), n) {
            return fail(GroupViolation::ColumnNotPermutation { column: c });
        }
    }
    let e = gt.identity;
    for x in 0..n {
        if gt.mul(e, x) != x || gt.mul(x, e) != x {
            return fail(GroupViolation::Identity { element: x });
        }
    }
    for x in 0..n {
        match gt.inverses[x] {
            Some(y) if gt.mul(y, x) == e => {}
            _ => return fail(GroupViolation::MissingInverse { element: x }),
        }
    }
    let assoc = |a: usize, b: usize, c: usize| gt.mul(gt.mul(a, b), c) == gt.mul(a, gt.mul(b, c));
    match associativity {
        AssociativityCheck::Exhaustive => {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return fail(GroupViolation::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        AssociativityCheck::Sampled { triples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..triples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return fail(GroupViolation::NotAssociative { a, b, c });
                }
            }
        }
    }
    ValidationReport { passed: true, associativity, counterexample: None }
}
