//! Sparse Smith normal form over the integers.
//!
//! Pivots are chosen by smallest absolute value, then by fewest nonzeros in
//! the pivot's row plus column, then by position. Rows and columns are
//! cleared with nearest-quotient steps; a nonzero remainder becomes the next
//! pivot. The resulting diagonal is brought into divisibility-chain form by
//! 2x2 gcd/lcm moves, which are also applied to the transforms when tracked.

use std::collections::BTreeSet;

use crate::int::Int;
use crate::linalg::IntMatrix;

/// Unimodular transforms with `left * M * right = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub left: IntMatrix,
    pub right: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` entries `d1 | d2 | ...`, all non-negative, zeros last.
    pub diagonal: Vec<Int>,
    pub transforms: Option<Transforms>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<Int> {
        self.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// The diagonal matrix `D`, shaped like the input.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::from_triplets(
            rows,
            cols,
            self.diagonal.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    compute(m, false)
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    compute(m, true)
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Basis of `{x : M x = 0}` as the columns of the returned matrix, read off
/// the right transform of the Smith form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form_with_transforms(m);
    let r = snf.rank();
    let right = snf.transforms.expect("transforms requested").right;
    let n = m.ncols();
    IntMatrix::from_triplets(
        n,
        n - r,
        (0..n).flat_map(|i| (r..n).map(move |j| (i, j))).filter_map(|(i, j)| {
            let v = right.get(i, j);
            (!v.is_zero()).then(|| (i, j - r, v))
        }),
    )
}

fn compute(m: &IntMatrix, track: bool) -> SmithForm {
    // Work with at most as many rows as columns; pivot search walks rows.
    if m.nrows() > m.ncols() {
        let t = compute(&m.transpose(), track);
        let transforms = t.transforms.map(|tr| Transforms {
            left: tr.right.transpose(),
            right: tr.left.transpose(),
        });
        return SmithForm { diagonal: t.diagonal, transforms };
    }
    let mut e = Elimination::new(m, track);
    e.run();
    e.finish(m.nrows(), m.ncols())
}

struct Elimination {
    rows: Vec<Vec<(usize, Int)>>,
    cols: Vec<BTreeSet<usize>>,
    left: Option<Vec<Vec<Int>>>,
    right: Option<Vec<Vec<Int>>>,
    pivots: Vec<(usize, usize, Int)>,
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

impl Elimination {
    fn new(m: &IntMatrix, track: bool) -> Elimination {
        let rows = m.sparse_rows();
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                cols[*c].insert(r);
            }
        }
        Elimination {
            rows,
            cols,
            left: track.then(|| identity_rows(m.nrows())),
            right: track.then(|| identity_rows(m.ncols())),
            pivots: Vec::new(),
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&Int> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |(col, _)| *col).ok().map(|k| &row[k].1)
    }

    fn set_entry(&mut self, r: usize, c: usize, v: Int) {
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(col, _)| *col) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
                self.cols[c].remove(&r);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => {
                row.insert(k, (c, v));
                self.cols[c].insert(r);
            }
        }
    }

    /// `row[dst] += factor * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Int) {
        let old = std::mem::take(&mut self.rows[dst]);
        let from = &self.rows[src];
        let mut merged = Vec::with_capacity(old.len() + from.len());
        let (mut a, mut b) = (0, 0);
        while a < old.len() || b < from.len() {
            let ca = old.get(a).map_or(usize::MAX, |e| e.0);
            let cb = from.get(b).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                merged.push(old[a].clone());
                a += 1;
            } else if cb < ca {
                merged.push((cb, factor * &from[b].1));
                self.cols[cb].insert(dst);
                b += 1;
            } else {
                let v = &old[a].1 + &(factor * &from[b].1);
                if v.is_zero() {
                    self.cols[ca].remove(&dst);
                } else {
                    merged.push((ca, v));
                }
                a += 1;
                b += 1;
            }
        }
        self.rows[dst] = merged;

        if let Some(left) = self.left.as_mut() {
            let src_row = left[src].clone();
            for (d, s) in left[dst].iter_mut().zip(&src_row) {
                if !s.is_zero() {
                    *d = &*d + &(factor * s);
                }
            }
        }
    }

    /// Column step `col[l] -= q * col[j]` when column `j` holds only row `i`.
    fn reduce_row_entry(&mut self, i: usize, l: usize, j: usize, q: &Int) {
        let pivot = self.entry(i, j).cloned().unwrap_or(Int::ZERO);
        let current = self.entry(i, l).cloned().unwrap_or(Int::ZERO);
        self.set_entry(i, l, &current - &(q * &pivot));
        if let Some(right) = self.right.as_mut() {
            for row in right.iter_mut() {
                if !row[j].is_zero() {
                    row[l] = &row[l] - &(q * &row[j]);
                }
            }
        }
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.rows.len()).filter(|&r| !self.rows[r].is_empty()).collect();
        if order.is_empty() {
            return None;
        }
        order.sort_by_key(|&r| (self.rows[r].len(), r));

        // Units first; the row length bounds the achievable cost from below.
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &order {
            let len = self.rows[r].len();
            if let Some((cost, _, _)) = best {
                if len + 1 > cost {
                    break;
                }
            }
            for (c, v) in &self.rows[r] {
                if v.is_unit() {
                    let cand = (len + self.cols[*c].len(), r, *c);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        if let Some((_, r, c)) = best {
            return Some((r, c));
        }

        let mut best: Option<(Int, usize, usize, usize)> = None;
        for &r in &order {
            let len = self.rows[r].len();
            for (c, v) in &self.rows[r] {
                let cand = (v.abs(), len + self.cols[*c].len(), r, *c);
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn run(&mut self) {
        while let Some((mut i, mut j)) = self.choose_pivot() {
            loop {
                let pivot = self.entry(i, j).cloned().expect("pivot is nonzero");

                let others: Vec<usize> = self.cols[j].iter().copied().filter(|&k| k != i).collect();
                let mut smallest: Option<(Int, usize)> = None;
                for k in others {
                    let a = self.entry(k, j).cloned().expect("column index in sync");
                    let q = a.div_nearest(&pivot);
                    if !q.is_zero() {
                        self.add_row_multiple(k, i, &-q);
                    }
                    if let Some(rem) = self.entry(k, j) {
                        let rem = rem.abs();
                        if smallest.as_ref().map_or(true, |(s, _)| rem < *s) {
                            smallest = Some((rem, k));
                        }
                    }
                }
                if let Some((_, k)) = smallest {
                    i = k;
                    continue;
                }

                if pivot.is_unit() && self.right.is_none() {
                    // Clearing the row only touches the untracked right transform.
                    let row = std::mem::take(&mut self.rows[i]);
                    for (c, v) in row {
                        if c == j {
                            self.rows[i].push((c, v));
                        } else {
                            self.cols[c].remove(&i);
                        }
                    }
                } else {
                    let others: Vec<(usize, Int)> =
                        self.rows[i].iter().filter(|(c, _)| *c != j).cloned().collect();
                    let mut smallest: Option<(Int, usize)> = None;
                    for (l, a) in others {
                        let q = a.div_nearest(&pivot);
                        if !q.is_zero() {
                            self.reduce_row_entry(i, l, j, &q);
                        }
                        if let Some(rem) = self.entry(i, l) {
                            let rem = rem.abs();
                            if smallest.as_ref().map_or(true, |(s, _)| rem < *s) {
                                smallest = Some((rem, l));
                            }
                        }
                    }
                    if let Some((_, l)) = smallest {
                        j = l;
                        continue;
                    }
                }
                break;
            }
            let value = self.entry(i, j).cloned().expect("pivot survives elimination");
            debug_assert_eq!(self.rows[i].len(), 1);
            debug_assert_eq!(self.cols[j].len(), 1);
            self.rows[i].clear();
            self.cols[j].clear();
            self.pivots.push((i, j, value));
        }
    }

    fn finish(self, nrows: usize, ncols: usize) -> SmithForm {
        let k = nrows.min(ncols);
        let Elimination { pivots, left, right, .. } = self;
        let mut diagonal: Vec<Int> = pivots.iter().map(|(_, _, v)| v.clone()).collect();
        diagonal.resize(k, Int::ZERO);

        let (Some(left), Some(right)) = (left, right) else {
            for d in diagonal.iter_mut() {
                *d = d.abs();
            }
            normalize_chain(&mut diagonal, None);
            return SmithForm { diagonal, transforms: None };
        };

        // Move pivot t to position (t, t).
        let row_order = permutation(nrows, pivots.iter().map(|p| p.0));
        let col_order = permutation(ncols, pivots.iter().map(|p| p.1));
        let mut u: Vec<Vec<Int>> = row_order.iter().map(|&r| left[r].clone()).collect();
        let mut v: Vec<Vec<Int>> =
            right.iter().map(|row| col_order.iter().map(|&c| row[c].clone()).collect()).collect();

        for t in 0..pivots.len() {
            if diagonal[t].is_negative() {
                diagonal[t] = -&diagonal[t];
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        normalize_chain(&mut diagonal, Some((&mut u, &mut v)));

        SmithForm {
            diagonal,
            transforms: Some(Transforms { left: square(u, nrows), right: square(v, ncols) }),
        }
    }
}

fn square(rows: Vec<Vec<Int>>, n: usize) -> IntMatrix {
    if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(rows)
    }
}

fn permutation(n: usize, first: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut order: Vec<usize> = first.collect();
    let mut used = vec![false; n];
    for &x in &order {
        used[x] = true;
    }
    order.extend((0..n).filter(|&x| !used[x]));
    order
}

/// Replaces a non-negative diagonal by its invariant-factor chain using
/// `diag(a, b) -> diag(gcd, lcm)` moves.
fn normalize_chain(d: &mut [Int], mut transforms: Option<(&mut Vec<Vec<Int>>, &mut Vec<Vec<Int>>)>) {
    for i in 0..d.len() {
        if d[i].is_one() {
            continue;
        }
        for j in i + 1..d.len() {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let (a, b) = (d[i].clone(), d[j].clone());
            let (g, x, y) = a.extended_gcd(&b);
            let (ag, bg) = (a.div_exact(&g), b.div_exact(&g));
            if let Some((u, v)) = transforms.as_mut() {
                // [[x, y], [-b/g, a/g]] diag(a, b) [[1, -y b/g], [1, x a/g]] = diag(g, ab/g)
                let (ui, uj) = (u[i].clone(), u[j].clone());
                for c in 0..ui.len() {
                    u[i][c] = &(&x * &ui[c]) + &(&y * &uj[c]);
                    u[j][c] = &(&ag * &uj[c]) - &(&bg * &ui[c]);
                }
                let s = -(&y * &bg);
                let t = &x * &ag;
                for row in v.iter_mut() {
                    let (vi, vj) = (row[i].clone(), row[j].clone());
                    row[i] = &vi + &vj;
                    row[j] = &(&s * &vi) + &(&t * &vj);
                }
            }
            d[i] = g;
            d[j] = &ag * &b;
            if d[i].is_one() {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &[&[i64]]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_i64_rows(m)).diagonal.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    fn check_transforms(m: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form_with_transforms(m);
        let t = snf.transforms.clone().unwrap();
        let d = snf.diagonal_matrix(m.nrows(), m.ncols());
        assert_eq!(t.left.mul(m).mul(&t.right), d, "U M V != D for {m:?}");
        assert_eq!(snf.diagonal, smith_normal_form(m).diagonal);
        snf
    }

    #[test]
    fn spec_examples() {
        assert_eq!(diag(&[&[2, 4], &[6, 8]]), vec![2, 4]);
        assert_eq!(diag(&[&[1, 0], &[0, 1]]), vec![1, 1]);
        assert_eq!(diag(&[&[0]]), vec![0]);
    }

    #[test]
    fn chain_normalization() {
        assert_eq!(diag(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(diag(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 0]]), vec![2, 12, 0]);
        assert_eq!(diag(&[&[0, 0], &[0, 5]]), vec![5, 0]);
    }

    #[test]
    fn rectangular_shapes() {
        assert_eq!(diag(&[&[2, 2], &[-2, 2], &[4, 0]]), vec![2, 4]);
        assert_eq!(diag(&[&[0, 0]]), vec![0]);
        assert_eq!(diag(&[&[3, 6, 9]]), vec![3]);
        assert!(smith_normal_form(&IntMatrix::zeros(0, 4)).diagonal.is_empty());
    }

    #[test]
    fn transforms_are_exact() {
        for rows in [
            vec![vec![2i64, 4], vec![6, 8]],
            vec![vec![0, 0, 0], vec![0, 0, 0]],
            vec![vec![4, 0], vec![0, 6], vec![2, 2]],
            vec![vec![6, 10, 15]],
            vec![vec![0, -3], vec![5, 0], vec![0, 0]],
            vec![vec![12, 18, 30], vec![-8, 4, 10], vec![2, 2, 2], vec![7, 0, -14]],
        ] {
            let m = IntMatrix::from_i64_rows(&rows);
            check_transforms(&m);
        }
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let m = IntMatrix::from_i64_rows(&[[1, 2, 3], [2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.ncols(), 2);
        assert!(m.mul(&k).is_zero());
        let full = kernel_basis(&IntMatrix::zeros(1, 3));
        assert_eq!(full.ncols(), 3);
    }
}
