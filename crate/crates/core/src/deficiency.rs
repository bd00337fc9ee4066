//! Deficiency bounds, the block-count solver, and certificates.
//!
//! For a finite group the deficiency is at most `rk H₁ - d(H₂)`; the direct
//! product `A_p^r × B_p^s × C_p^t` of efficient blocks attains
//! `-(binom(2r + 2s + t, 2) + s - r)`, and [`solve`] picks `(r, s, t)` hitting
//! any requested `-n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset_enum::{enumerate, multiplication_table, validate_group, Strategy, DEFAULT_MAX_COSETS};
use crate::homology::{
    block_product_homology, h1_from_presentation, h2_from_table_with_ceiling, HomologyError,
    DEFAULT_H2_ORDER_CEILING,
};
use crate::linalg::FinAbGroup;
use crate::presentations::{building_block, product_of, BlockKind, Presentation, PresentationError};

/// Exponents `(r, s, t)` of `A^r × B^s × C^t` together with the solver's
/// intermediate values `m = 2r + 2s + t` and `d = s - r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "BlockCountsWire")]
pub struct BlockCounts {
    pub p: Option<u64>,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub trace_m: u64,
    pub trace_d: i64,
}

#[derive(Deserialize)]
struct BlockCountsWire {
    #[serde(default)]
    p: Option<u64>,
    r: usize,
    s: usize,
    t: usize,
}

impl From<BlockCountsWire> for BlockCounts {
    fn from(w: BlockCountsWire) -> Self {
        BlockCounts::new(w.p, w.r, w.s, w.t)
    }
}

fn binom2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(k: usize) -> String {
    k.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

impl BlockCounts {
    pub fn new(p: Option<u64>, r: usize, s: usize, t: usize) -> BlockCounts {
        BlockCounts {
            p,
            r,
            s,
            t,
            trace_m: (2 * r + 2 * s + t) as u64,
            trace_d: s as i64 - r as i64,
        }
    }

    pub fn with_prime(self, p: u64) -> BlockCounts {
        BlockCounts { p: Some(p), ..self }
    }

    pub fn num_generators(&self) -> usize {
        2 * self.r + 2 * self.s + self.t
    }

    /// The invariants every output of [`solve`] satisfies.
    pub fn satisfies_solver_invariants(&self) -> bool {
        let half = (self.trace_m / 2) as i64;
        self.r * self.s == 0
            && self.trace_m >= (2 * self.r + 2 * self.s) as u64
            && self.t as u64 == self.trace_m - (2 * self.r + 2 * self.s) as u64
            && self.trace_d == self.s as i64 - self.r as i64
            && -half <= self.trace_d
            && self.trace_d <= half
    }

    /// Name such as `B×C²`; the trivial product is `1`.
    pub fn group_name(&self) -> String {
        let parts: Vec<String> = [("A", self.r), ("B", self.s), ("C", self.t)]
            .into_iter()
            .filter(|(_, k)| *k > 0)
            .map(|(n, k)| if k == 1 { n.to_string() } else { format!("{n}{}", superscript(k)) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("×")
        }
    }
}

/// `rk H₁ - d(H₂)`, an upper bound for the deficiency.
pub fn upper_bound(h1: &FinAbGroup, h2: &FinAbGroup) -> i64 {
    h1.torsion_free_rank() as i64 - h2.min_generators() as i64
}

/// Block counts with `binom(2r + 2s + t, 2) + s - r = n`.
///
/// `m` is the least positive integer with `binom(m, 2) + ⌊m/2⌋ >= n`, found
/// by scanning upward; `d = n - binom(m, 2)` becomes `s` when non-negative
/// and `r = -d` otherwise, and `t = m - 2r - 2s`.
pub fn solve(n: u64) -> BlockCounts {
    let mut m = 1u64;
    while binom2(m) + m / 2 < n {
        m += 1;
    }
    let d = n as i64 - binom2(m) as i64;
    let (r, s) = if d >= 0 { (0, d as usize) } else { ((-d) as usize, 0) };
    let t = m as usize - 2 * r - 2 * s;
    let counts = BlockCounts { p: None, r, s, t, trace_m: m, trace_d: d };
    debug_assert!(counts.satisfies_solver_invariants());
    counts
}

/// `-(binom(2r + 2s + t, 2) + s - r)`, the deficiency of `A^r × B^s × C^t`.
pub fn deficiency_of_counts(bc: &BlockCounts) -> i64 {
    let m = bc.num_generators() as i64;
    -(m * (m - 1) / 2 + bc.s as i64 - bc.r as i64)
}

/// A presentation of `A_p^r × B_p^s × C_p^t` with deficiency exactly `-n`,
/// factors in the order A, B, C.
pub fn construct(p: u64, n: u64) -> Result<Presentation, PresentationError> {
    let counts = solve(n).with_prime(p);
    let mut factors = Vec::with_capacity(counts.r + counts.s + counts.t);
    for (kind, k) in [(BlockKind::A, counts.r), (BlockKind::B, counts.s), (BlockKind::C, counts.t)] {
        if k > 0 {
            let blk = building_block(kind, p)?;
            factors.extend(std::iter::repeat(blk).take(k));
        }
    }
    if factors.is_empty() {
        // n = 0 always gives one cyclic factor, but keep prime validation
        building_block(BlockKind::C, p)?;
    }
    Ok(product_of(&factors).with_prime(Some(p)).with_pedigree(Some(counts)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMode {
    /// Coset enumeration, then the bar complex of the multiplication table.
    #[default]
    Table,
    /// The Künneth formula over the presentation's block pedigree.
    Kunneth,
}

impl FromStr for CertifyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(CertifyMode::Table),
            "kunneth" => Ok(CertifyMode::Kunneth),
            other => Err(format!("unknown mode {other:?} (expected table or kunneth)")),
        }
    }
}

impl fmt::Display for CertifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertifyMode::Table => "table",
            CertifyMode::Kunneth => "kunneth",
        })
    }
}

/// Where the `H₂` in a certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Provenance {
    /// Computed from the bar complex of an enumerated multiplication table.
    BarComplex,
    /// Künneth fold over block multipliers that the test suites re-derive
    /// from the bar complex.
    KunnethFromBlockClaims,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("kunneth mode needs a presentation annotated with block counts")]
    MissingPedigree,
    #[error("block counts annotation does not match the presentation: H1 is {found}, counts predict {expected}")]
    PedigreeMismatch { expected: FinAbGroup, found: FinAbGroup },
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    InconsistentBounds { lower: i64, upper: i64 },
    #[error("enumerated table failed validation")]
    InvalidTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyCertificate {
    pub presentation: Presentation,
    pub mode: CertifyMode,
    /// Generators minus relators.
    pub lower_bound: i64,
    /// `rk H₁ - d(H₂)`, absent when homology could not be computed.
    pub upper_bound: Option<i64>,
    pub certified_value: Option<i64>,
    pub order: Option<usize>,
    pub h1: Option<FinAbGroup>,
    pub h2: Option<FinAbGroup>,
    pub h2_provenance: Option<H2Provenance>,
    /// Why the upper bound is missing, if it is.
    pub failure: Option<String>,
}

impl DeficiencyCertificate {
    pub fn is_certified(&self) -> bool {
        self.certified_value.is_some()
    }
}

impl fmt::Display for DeficiencyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.certified_value, self.upper_bound) {
            (Some(v), _) => write!(f, "certified deficiency {v}"),
            (None, Some(u)) => write!(f, "unknown: deficiency in [{}, {u}]", self.lower_bound),
            (None, None) => write!(
                f,
                "unknown: deficiency >= {} ({})",
                self.lower_bound,
                self.failure.as_deref().unwrap_or("no upper bound")
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub max_cosets: usize,
    pub strategy: Strategy,
    pub h2_ceiling: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_cosets: DEFAULT_MAX_COSETS, strategy: Strategy::Hlt, h2_ceiling: DEFAULT_H2_ORDER_CEILING }
    }
}

pub fn certify(p: &Presentation, mode: CertifyMode) -> Result<DeficiencyCertificate, CertifyError> {
    certify_with(p, mode, &CertifyOptions::default())
}

/// Compares the presentation's deficiency with the homological upper bound;
/// the value is certified exactly when the two agree.
pub fn certify_with(
    p: &Presentation,
    mode: CertifyMode,
    opts: &CertifyOptions,
) -> Result<DeficiencyCertificate, CertifyError> {
    let mut cert = DeficiencyCertificate {
        presentation: p.clone(),
        mode,
        lower_bound: p.deficiency(),
        upper_bound: None,
        certified_value: None,
        order: None,
        h1: None,
        h2: None,
        h2_provenance: None,
        failure: None,
    };
    let h1 = h1_from_presentation(p);
    let h2 = match mode {
        CertifyMode::Table => {
            let table = match enumerate(p, opts.max_cosets, opts.strategy) {
                Ok(t) => t,
                Err(e) => {
                    cert.h1 = Some(h1);
                    cert.failure = Some(e.to_string());
                    return Ok(cert);
                }
            };
            cert.order = Some(table.num_cosets());
            if table.num_cosets() > opts.h2_ceiling {
                return Err(HomologyError::OrderCeilingExceeded { order: table.num_cosets(), ceiling: opts.h2_ceiling }.into());
            }
            let gt = multiplication_table(&table).map_err(|_| CertifyError::InvalidTable)?;
            if !validate_group(&gt).passed {
                return Err(CertifyError::InvalidTable);
            }
            cert.h2_provenance = Some(H2Provenance::BarComplex);
            h2_from_table_with_ceiling(&gt, opts.h2_ceiling)?
        }
        CertifyMode::Kunneth => {
            let (Some(counts), Some(prime)) = (p.pedigree(), p.prime()) else {
                return Err(CertifyError::MissingPedigree);
            };
            let (expected_h1, h2) = block_product_homology(prime, counts.r, counts.s, counts.t)?;
            if expected_h1 != h1 {
                return Err(CertifyError::PedigreeMismatch { expected: expected_h1, found: h1 });
            }
            cert.h2_provenance = Some(H2Provenance::KunnethFromBlockClaims);
            h2
        }
    };
    let upper = upper_bound(&h1, &h2);
    if cert.lower_bound > upper {
        return Err(CertifyError::InconsistentBounds { lower: cert.lower_bound, upper });
    }
    cert.upper_bound = Some(upper);
    cert.certified_value = (upper == cert.lower_bound).then_some(upper);
    cert.h1 = Some(h1);
    cert.h2 = Some(h2);
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GsVerdict {
    Consistent,
    Violation,
}

/// Whether `deficiency < -rank²/4 + rank`, the bound every finite p-group of
/// the given rank satisfies. Exact integer comparison.
pub fn golod_shafarevich_check(rank: u64, deficiency: i64) -> GsVerdict {
    let d = rank as i128;
    if 4 * (deficiency as i128) < 4 * d - d * d {
        GsVerdict::Consistent
    } else {
        GsVerdict::Violation
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigureRow {
    pub n: u64,
    pub counts: BlockCounts,
    pub name: String,
}

/// Solver output for `n = 0..=max_n`, with group names like `B×C²`.
pub fn figure_one_table(p: u64, max_n: u64) -> Vec<FigureRow> {
    (0..=max_n)
        .map(|n| {
            let counts = solve(n).with_prime(p);
            FigureRow { n, name: counts.group_name(), counts }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::Int;
    use crate::presentations::parse_presentation;

    fn rst(n: u64) -> (usize, usize, usize, u64, i64) {
        let c = solve(n);
        (c.r, c.s, c.t, c.trace_m, c.trace_d)
    }

    #[test]
    fn solve_examples() {
        assert_eq!(rst(5), (1, 0, 2, 4, -1));
        assert_eq!(rst(7), (0, 1, 2, 4, 1));
        assert_eq!(rst(0), (0, 0, 1, 1, 0));
        assert_eq!(rst(2), (0, 1, 0, 2, 1));
        assert_eq!(rst(4), (0, 1, 1, 3, 1));
    }

    #[test]
    fn deficiency_of_counts_examples() {
        assert_eq!(deficiency_of_counts(&BlockCounts::new(None, 0, 0, 1)), 0);
        assert_eq!(deficiency_of_counts(&BlockCounts::new(None, 1, 0, 2)), -5);
        assert_eq!(deficiency_of_counts(&BlockCounts::new(None, 0, 2, 0)), -8);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(&FinAbGroup::cyclic(2), &FinAbGroup::trivial()), 0);
        for p in [2, 3, 5] {
            assert_eq!(upper_bound(&FinAbGroup::elementary(p, 2), &FinAbGroup::elementary(p, 2)), -2);
        }
        assert_eq!(upper_bound(&FinAbGroup::free(2), &FinAbGroup::trivial()), 2);
    }

    #[test]
    fn construct_examples() {
        let g = construct(2, 5).unwrap();
        assert_eq!(g.counts(), (4, 9));
        assert_eq!(g.deficiency(), -5);
        assert_eq!(g.generator_names(), &["a1", "b1", "a2", "a3"].map(String::from));

        let c3 = construct(3, 0).unwrap();
        assert_eq!(c3.to_string(), "< a | a^3 >");

        let v4 = construct(2, 1).unwrap();
        assert_eq!(v4.counts(), (2, 3));
        assert_eq!(v4.deficiency(), -1);

        assert_eq!(construct(6, 3), Err(PresentationError::NotPrime(6)));
        assert_eq!(construct(1, 0), Err(PresentationError::NotPrime(1)));
    }

    #[test]
    fn certify_examples() {
        let cert = certify(&construct(2, 5).unwrap(), CertifyMode::Kunneth).unwrap();
        assert_eq!(cert.certified_value, Some(-5));
        assert_eq!(cert.h2_provenance, Some(H2Provenance::KunnethFromBlockClaims));

        let b2 = building_block(BlockKind::B, 2).unwrap();
        let cert = certify(&b2, CertifyMode::Table).unwrap();
        assert_eq!(cert.certified_value, Some(-2));
        assert_eq!(cert.order, Some(16));
        assert_eq!(cert.h2, Some(FinAbGroup::elementary(2, 2)));

        let inf = parse_presentation("< a, b | a^2, b^2 >").unwrap();
        let opts = CertifyOptions { max_cosets: 2000, ..Default::default() };
        let cert = certify_with(&inf, CertifyMode::Table, &opts).unwrap();
        assert!(!cert.is_certified());
        assert_eq!(cert.upper_bound, None);
        assert!(cert.failure.unwrap().contains("coset limit"));
    }

    #[test]
    fn certify_errors() {
        let plain = parse_presentation("< a | a^2 >").unwrap();
        assert_eq!(certify(&plain, CertifyMode::Kunneth), Err(CertifyError::MissingPedigree));

        let big = construct(2, 7).unwrap(); // order 64
        assert!(matches!(
            certify(&big, CertifyMode::Table),
            Err(CertifyError::Homology(HomologyError::OrderCeilingExceeded { order: 64, ceiling: 32 }))
        ));

        // annotation claiming C_2 on a presentation of C_4
        let lie = parse_presentation("< a | a^4 >")
            .unwrap()
            .with_prime(Some(2))
            .with_pedigree(Some(BlockCounts::new(Some(2), 0, 0, 1)));
        assert_eq!(
            certify(&lie, CertifyMode::Kunneth),
            Err(CertifyError::PedigreeMismatch { expected: FinAbGroup::cyclic(2), found: FinAbGroup::cyclic(4) })
        );
    }

    #[test]
    fn uncertified_interval() {
        // Z/2 with a redundant relator: bounds -1 and 0
        let p = parse_presentation("< a | a^2, a^4 >").unwrap();
        let cert = certify(&p, CertifyMode::Table).unwrap();
        assert_eq!((cert.lower_bound, cert.upper_bound, cert.certified_value), (-1, Some(0), None));
        assert_eq!(cert.to_string(), "unknown: deficiency in [-1, 0]");
        assert_eq!(cert.h1, Some(FinAbGroup::new(0, [Int::from(2)])));
    }

    #[test]
    fn gs_examples() {
        assert_eq!(golod_shafarevich_check(2, -2), GsVerdict::Consistent);
        assert_eq!(golod_shafarevich_check(4, 0), GsVerdict::Violation);
        assert_eq!(golod_shafarevich_check(1, 0), GsVerdict::Consistent);
        assert_eq!(golod_shafarevich_check(3, 0), GsVerdict::Consistent);
        assert_eq!(golod_shafarevich_check(2, 1), GsVerdict::Violation);
    }

    #[test]
    fn figure_rows() {
        let rows = figure_one_table(2, 7);
        let names: Vec<&str> = rows.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["C", "C²", "B", "C³", "B×C", "A×C²", "C⁴", "B×C²"]);
        assert_eq!(BlockCounts::new(None, 0, 0, 12).group_name(), "C¹²");
        assert_eq!(BlockCounts::new(None, 0, 0, 0).group_name(), "1");
    }

    #[test]
    fn block_counts_json_recomputes_traces() {
        let c: BlockCounts = serde_json::from_str(r#"{"p":3,"r":1,"s":0,"t":2,"trace_m":99,"trace_d":7}"#).unwrap();
        assert_eq!(c, BlockCounts::new(Some(3), 1, 0, 2));
    }
}
