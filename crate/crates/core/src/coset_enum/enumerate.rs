//! Todd–Coxeter coset enumeration over the trivial subgroup.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CosetEnumError;
use crate::presentations::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 1 << 16;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Relator-driven definitions with a lookahead pass when space runs out.
    #[default]
    Hlt,
    /// Gap-driven definitions with a deduction stack.
    Felsch,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy {other:?} (expected hlt or felsch)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

/// A coset table with one column per generator and per inverse generator
/// (`2g` and `2g + 1`). Tables returned by [`enumerate`] are closed and in
/// standard (breadth-first) numbering, with coset 0 the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generator_names: Vec<String>,
    columns: usize,
    entries: Vec<Option<usize>>,
}

impl CosetTable {
    /// Builds a table from explicit rows, for inspection and tests.
    pub fn from_rows(generator_names: Vec<String>, rows: Vec<Vec<Option<usize>>>) -> CosetTable {
        let columns = 2 * generator_names.len();
        assert!(rows.iter().all(|r| r.len() == columns), "row width must be twice the generator count");
        CosetTable { generator_names, columns, entries: rows.into_iter().flatten().collect() }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn num_columns(&self) -> usize {
        self.columns
    }

    pub fn num_cosets(&self) -> usize {
        if self.columns == 0 {
            0
        } else {
            self.entries.len() / self.columns
        }
    }

    pub fn action(&self, coset: usize, column: usize) -> Option<usize> {
        self.entries[coset * self.columns + column]
    }

    pub fn is_closed(&self) -> bool {
        let n = self.num_cosets();
        self.entries.iter().all(|e| matches!(e, Some(c) if *c < n))
    }
}

pub fn enumerate(p: &Presentation, max_cosets: usize, strategy: Strategy) -> Result<CosetTable, CosetEnumError> {
    if p.num_generators() == 0 {
        return Err(CosetEnumError::NoGenerators);
    }
    let mut e = Enumerator::new(p, max_cosets);
    match strategy {
        Strategy::Hlt => e.run_hlt()?,
        Strategy::Felsch => e.run_felsch()?,
    }
    e.into_standard_table(p)
}

/// Number of elements of the group presented, via [`enumerate`].
pub fn order(p: &Presentation, max_cosets: usize, strategy: Strategy) -> Result<usize, CosetEnumError> {
    enumerate(p, max_cosets, strategy).map(|t| t.num_cosets())
}

struct OutOfSpace;

struct Enumerator {
    columns: usize,
    table: Vec<u32>,
    /// Union-find parent; a coset is live iff it is its own parent.
    parent: Vec<u32>,
    max: usize,
    relators: Vec<Vec<usize>>,
    /// Felsch only: for each column, relator rotations starting with it.
    rotations: Vec<Vec<Vec<usize>>>,
    track_deductions: bool,
    deductions: Vec<(u32, usize)>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(p: &Presentation, max: usize) -> Enumerator {
        let columns = 2 * p.num_generators();
        let relators: Vec<Vec<usize>> =
            p.relators().iter().map(|r| r.letters().iter().map(|l| l.column()).collect()).collect();
        let mut e = Enumerator {
            columns,
            table: Vec::new(),
            parent: Vec::new(),
            max: max.max(1),
            relators,
            rotations: vec![Vec::new(); columns],
            track_deductions: false,
            deductions: Vec::new(),
            queue: Vec::new(),
        };
        e.push_row();
        e
    }

    fn slots(&self) -> usize {
        self.parent.len()
    }

    fn push_row(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.table.extend(std::iter::repeat(UNDEF).take(self.columns));
        self.parent.push(c);
        c
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.columns + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.columns + x] = v;
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, OutOfSpace> {
        if self.slots() >= self.max {
            return Err(OutOfSpace);
        }
        let d = self.push_row();
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        if self.track_deductions {
            self.deductions.push((c, x));
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (keep, kill) = if k < l { (k, l) } else { (l, k) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let e = self.queue[head];
            head += 1;
            for x in 0..self.columns {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, UNDEF);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != UNDEF {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                        if self.track_deductions {
                            self.deductions.push((e1, x));
                        }
                    }
                }
            }
        }
    }

    /// Traces `word` from `alpha` in both directions. Closes a single gap as a
    /// deduction, reports a coincidence when the ends disagree, and with
    /// `fill` defines new cosets to bridge longer gaps.
    fn scan(&mut self, alpha: u32, word: &[usize], fill: bool) -> Result<(), OutOfSpace> {
        let (mut f, mut i) = (alpha, 0);
        let (mut b, mut j) = (alpha, word.len());
        loop {
            while i < j {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let next = self.get(b, word[j - 1] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = word[i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                if self.track_deductions {
                    self.deductions.push((f, x));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    /// Drops dead rows, renumbering live cosets in order. Returns the old to
    /// new index map (`UNDEF` for dead rows).
    fn compact(&mut self) -> Vec<u32> {
        let n = self.slots();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.columns);
        for c in 0..n as u32 {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.columns {
                let v = self.get(c, x);
                let v = if v == UNDEF { UNDEF } else { map[self.rep(v) as usize] };
                table.push(v);
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions.clear();
        map
    }

    /// New position for a cursor at old index `at` after compaction.
    fn moved_cursor(map: &[u32], at: usize) -> usize {
        map[..at.min(map.len())].iter().filter(|&&v| v != UNDEF).count()
    }

    fn has_dead(&self) -> bool {
        (0..self.slots() as u32).any(|c| !self.is_live(c))
    }

    fn run_hlt(&mut self) -> Result<(), CosetEnumError> {
        let mut alpha = 0usize;
        while alpha < self.slots() {
            let a = alpha as u32;
            if !self.is_live(a) {
                alpha += 1;
                continue;
            }
            match self.hlt_process(a) {
                Ok(()) => alpha += 1,
                Err(OutOfSpace) => {
                    self.lookahead();
                    if !self.has_dead() {
                        return Err(CosetEnumError::CosetLimitExceeded(self.max));
                    }
                    let map = self.compact();
                    alpha = Self::moved_cursor(&map, alpha);
                }
            }
        }
        Ok(())
    }

    fn hlt_process(&mut self, alpha: u32) -> Result<(), OutOfSpace> {
        for r in 0..self.relators.len() {
            let word = std::mem::take(&mut self.relators[r]);
            let res = self.scan(alpha, &word, true);
            self.relators[r] = word;
            res?;
            if !self.is_live(alpha) {
                return Ok(());
            }
        }
        for x in 0..self.columns {
            if self.get(alpha, x) == UNDEF {
                self.define(alpha, x)?;
            }
        }
        Ok(())
    }

    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        for c in 0..self.slots() as u32 {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
        self.relators = relators;
    }

    fn build_rotations(&mut self) {
        let mut words: Vec<Vec<usize>> = Vec::new();
        for r in &self.relators {
            let inv: Vec<usize> = r.iter().rev().map(|x| x ^ 1).collect();
            for w in [r.clone(), inv] {
                for k in 0..w.len() {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    words.push(rot);
                }
            }
        }
        words.sort();
        words.dedup();
        for w in words {
            self.rotations[w[0]].push(w);
        }
    }

    fn process_deductions(&mut self) {
        let rotations = std::mem::take(&mut self.rotations);
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for w in &rotations[x] {
                let _ = self.scan(c, w, false);
                if !self.is_live(c) {
                    break;
                }
            }
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == UNDEF || !self.is_live(d) {
                continue;
            }
            for w in &rotations[x ^ 1] {
                let _ = self.scan(d, w, false);
                if !self.is_live(d) {
                    break;
                }
            }
        }
        self.rotations = rotations;
    }

    fn first_gap(&self, from: usize) -> Option<(u32, usize)> {
        (from..self.slots()).map(|c| c as u32).filter(|&c| self.is_live(c)).find_map(|c| {
            (0..self.columns).find(|&x| self.get(c, x) == UNDEF).map(|x| (c, x))
        })
    }

    fn run_felsch(&mut self) -> Result<(), CosetEnumError> {
        self.track_deductions = true;
        self.build_rotations();
        let mut cursor = 0usize;
        // Relators read at the base coset seed the first deductions.
        let relators = std::mem::take(&mut self.relators);
        for r in &relators {
            let _ = self.scan(0, r, false);
        }
        self.relators = relators;
        loop {
            self.process_deductions();
            let gap = self.first_gap(cursor).or_else(|| self.first_gap(0));
            let Some((c, x)) = gap else {
                return Ok(());
            };
            cursor = c as usize;
            if self.define(c, x).is_err() {
                if !self.has_dead() {
                    return Err(CosetEnumError::CosetLimitExceeded(self.max));
                }
                let map = self.compact();
                cursor = Self::moved_cursor(&map, cursor);
            }
        }
    }

    /// Compacts and renumbers cosets breadth-first by column order, which
    /// makes the table independent of the strategy that produced it.
    fn into_standard_table(mut self, p: &Presentation) -> Result<CosetTable, CosetEnumError> {
        self.compact();
        let n = self.slots();
        if self.table.iter().any(|&v| v == UNDEF) {
            return Err(CosetEnumError::NotClosed);
        }
        let mut order = Vec::with_capacity(n);
        let mut label = vec![UNDEF; n];
        label[0] = 0;
        order.push(0u32);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for x in 0..self.columns {
                let d = self.get(c, x);
                if label[d as usize] == UNDEF {
                    label[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        debug_assert_eq!(order.len(), n, "coset table is connected");
        let mut entries = Vec::with_capacity(n * self.columns);
        for &c in &order {
            for x in 0..self.columns {
                entries.push(Some(label[self.get(c, x) as usize] as usize));
            }
        }
        Ok(CosetTable { generator_names: p.generator_names().to_vec(), columns: self.columns, entries })
    }
}
