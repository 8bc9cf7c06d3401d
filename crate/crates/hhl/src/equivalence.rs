//! Signed-permutation equivalence of polynomial matrices: equality up to
//! independent row and column permutations and sign flips. This is the sense
//! in which two complexes built from different orientation or ordering
//! choices have the same differentials.

use crate::complex::{poly_neg, MonomialTerm, PolyEntry, SparsePolyMatrix};
use std::collections::BTreeMap;

/// Dense view of a small polynomial matrix.
#[derive(Clone, Debug)]
pub struct DensePolyMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cells: Vec<Vec<PolyEntry>>,
}

impl DensePolyMatrix {
    pub fn from_sparse(m: &SparsePolyMatrix) -> Self {
        let mut cells = vec![vec![Vec::new(); m.ncols]; m.nrows];
        for (&(r, c), terms) in &m.entries {
            cells[r][c] = terms.clone();
        }
        DensePolyMatrix { nrows: m.nrows, ncols: m.ncols, cells }
    }

    /// Rows given as lists of terms `(coeff, exponents)`; used to transcribe
    /// reference matrices in tests.
    pub fn from_terms(rows: Vec<Vec<Vec<(i64, Vec<u32>)>>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cells = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|terms| {
                        crate::complex::poly_normalize(
                            terms
                                .into_iter()
                                .map(|(coeff, exponents)| MonomialTerm { coeff, exponents })
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        DensePolyMatrix { nrows, ncols, cells }
    }
}

/// Multiset fingerprint of the nonzero pattern of a line, ignoring signs.
fn line_profile(entries: impl Iterator<Item = PolyEntry>) -> Vec<Vec<Vec<u32>>> {
    let mut profile: Vec<Vec<Vec<u32>>> = entries
        .filter(|e| !e.is_empty())
        .map(|e| e.into_iter().map(|t| t.exponents).collect())
        .collect();
    profile.sort();
    profile
}

fn entry_sign_match(a: &PolyEntry, b: &PolyEntry) -> Option<i8> {
    if a.is_empty() && b.is_empty() {
        return None;
    }
    if *a == *b {
        Some(1)
    } else if *a == poly_neg(b) {
        Some(-1)
    } else {
        // incompatible even up to sign
        Some(0)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        heap(n, &mut items, &mut out);
    }
    out
}

/// Tests whether `a[i][j] = s_i * t_j * b[pi[i]][rho[j]]` admits a consistent
/// sign assignment, via a two-coloring of the bipartite support graph.
fn signs_consistent(a: &DensePolyMatrix, b: &DensePolyMatrix, pi: &[usize], rho: &[usize]) -> bool {
    let mut required: BTreeMap<(usize, usize), i8> = BTreeMap::new();
    for i in 0..a.nrows {
        for j in 0..a.ncols {
            let av = &a.cells[i][j];
            let bv = &b.cells[pi[i]][rho[j]];
            match entry_sign_match(av, bv) {
                None => {}
                Some(0) => return false,
                Some(s) => {
                    required.insert((i, j), s);
                }
            }
        }
    }
    let mut row_sign = vec![0i8; a.nrows];
    let mut col_sign = vec![0i8; a.ncols];
    loop {
        let mut changed = false;
        let mut seeded = false;
        for (&(i, j), &s) in &required {
            match (row_sign[i], col_sign[j]) {
                (0, 0) => {
                    if !seeded {
                        row_sign[i] = 1;
                        col_sign[j] = s;
                        seeded = true;
                        changed = true;
                    }
                }
                (0, cs) => {
                    row_sign[i] = s * cs;
                    changed = true;
                }
                (rs, 0) => {
                    col_sign[j] = s * rs;
                    changed = true;
                }
                (rs, cs) => {
                    if rs * cs != s {
                        return false;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Exhaustive search over row and column permutations and sign flips.
pub fn signed_permutation_equivalent(a: &DensePolyMatrix, b: &DensePolyMatrix) -> bool {
    if a.nrows != b.nrows || a.ncols != b.ncols {
        return false;
    }
    // profile pruning: row/column nonzero patterns must match as multisets
    let row_profiles_a: Vec<_> = (0..a.nrows)
        .map(|i| line_profile(a.cells[i].iter().cloned()))
        .collect();
    let row_profiles_b: Vec<_> = (0..b.nrows)
        .map(|i| line_profile(b.cells[i].iter().cloned()))
        .collect();
    {
        let mut sa = row_profiles_a.clone();
        let mut sb = row_profiles_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let col_profiles_a: Vec<_> = (0..a.ncols)
        .map(|j| line_profile((0..a.nrows).map(|i| a.cells[i][j].clone())))
        .collect();
    let col_profiles_b: Vec<_> = (0..b.ncols)
        .map(|j| line_profile((0..b.nrows).map(|i| b.cells[i][j].clone())))
        .collect();

    let row_perms = permutations(a.nrows);
    let col_perms = permutations(a.ncols);
    for pi in &row_perms {
        if (0..a.nrows).any(|i| row_profiles_a[i] != row_profiles_b[pi[i]]) {
            continue;
        }
        for rho in &col_perms {
            if (0..a.ncols).any(|j| col_profiles_a[j] != col_profiles_b[rho[j]]) {
                continue;
            }
            if signs_consistent(a, b, pi, rho) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<Vec<(i64, Vec<u32>)>>>) -> DensePolyMatrix {
        DensePolyMatrix::from_terms(rows)
    }

    fn x() -> Vec<(i64, Vec<u32>)> {
        vec![(1, vec![1, 0])]
    }

    fn y() -> Vec<(i64, Vec<u32>)> {
        vec![(1, vec![0, 1])]
    }

    fn one() -> Vec<(i64, Vec<u32>)> {
        vec![(1, vec![0, 0])]
    }

    fn neg(t: Vec<(i64, Vec<u32>)>) -> Vec<(i64, Vec<u32>)> {
        t.into_iter().map(|(c, e)| (-c, e)).collect()
    }

    #[test]
    fn identical_matrices_are_equivalent() {
        let a = m(vec![vec![one(), x()], vec![y(), vec![]]]);
        assert!(signed_permutation_equivalent(&a, &a));
    }

    #[test]
    fn permuted_and_flipped() {
        let a = m(vec![vec![one(), x()], vec![y(), vec![]]]);
        // swap rows and flip the sign of one column
        let b = m(vec![vec![neg(y()), vec![]], vec![neg(one()), x()]]);
        assert!(signed_permutation_equivalent(&a, &b));
    }

    #[test]
    fn distinct_patterns_rejected() {
        let a = m(vec![vec![one(), x()], vec![y(), vec![]]]);
        let b = m(vec![vec![one(), x()], vec![y(), one()]]);
        assert!(!signed_permutation_equivalent(&a, &b));
        let c = m(vec![vec![one(), y()], vec![y(), vec![]]]);
        assert!(!signed_permutation_equivalent(&a, &c));
    }

    #[test]
    fn inconsistent_signs_rejected() {
        // a 2x2 all-ones matrix with exactly one negated entry cannot be
        // reached from all-ones by row/column sign flips
        let a = m(vec![vec![one(), one()], vec![one(), one()]]);
        let b = m(vec![vec![neg(one()), one()], vec![one(), one()]]);
        assert!(!signed_permutation_equivalent(&a, &b));
    }
}
