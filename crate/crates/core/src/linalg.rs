//! Sparse exact row arithmetic and Gaussian elimination used by the quotient
//! engine and the invariant computations.

use crate::field::Scalar;
use std::collections::BTreeMap;

/// Sparse vector: (column, coefficient) pairs sorted by column, no zeros.
pub type Row<K> = Vec<(u32, K)>;

pub fn row_unit<K: Scalar>(col: u32, one: K) -> Row<K> {
    vec![(col, one)]
}

pub fn row_get<K: Scalar>(r: &[(u32, K)], col: u32) -> Option<&K> {
    r.binary_search_by_key(&col, |e| e.0).ok().map(|i| &r[i].1)
}

pub fn row_scale<K: Scalar>(r: &mut Row<K>, c: &K) {
    if c.is_zero() {
        r.clear();
        return;
    }
    for e in r.iter_mut() {
        e.1 = e.1.clone() * c.clone();
    }
}

pub fn row_neg<K: Scalar>(r: &mut Row<K>) {
    for e in r.iter_mut() {
        e.1 = -e.1.clone();
    }
}

/// dst += c * src, merging sorted supports.
pub fn row_axpy<K: Scalar>(dst: &mut Row<K>, c: &K, src: &[(u32, K)]) {
    if c.is_zero() || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                let v = a.1.clone() + c.clone() * b.1.clone();
                if !v.is_zero() {
                    out.push((a.0, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                out.push(a.clone());
                i += 1;
            }
            (Some(_), Some(b)) => {
                let v = c.clone() * b.1.clone();
                if !v.is_zero() {
                    out.push((b.0, v));
                }
                j += 1;
            }
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(b)) => {
                let v = c.clone() * b.1.clone();
                if !v.is_zero() {
                    out.push((b.0, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *dst = out;
}

pub fn row_add<K: Scalar>(a: &[(u32, K)], b: &[(u32, K)]) -> Row<K> {
    let mut out = a.to_vec();
    row_axpy(&mut out, &K::one(), b);
    out
}

pub fn row_sub<K: Scalar>(a: &[(u32, K)], b: &[(u32, K)]) -> Row<K> {
    let mut out = a.to_vec();
    row_axpy(&mut out, &(-K::one()), b);
    out
}

/// Maps the columns of a row, keeping it sorted.
pub fn row_remap<K: Scalar>(r: &[(u32, K)], f: impl Fn(u32) -> u32) -> Row<K> {
    let mut out: Vec<(u32, K)> = r.iter().map(|(c, k)| (f(*c), k.clone())).collect();
    out.sort_by_key(|e| e.0);
    out
}

/// Reduced row echelon form over an exact field, maintained incrementally.
/// Pivot columns are the smallest column indices of inserted rows, so order
/// the columns with the preferred pivots first.
#[derive(Debug, Clone)]
pub struct Rref<K: Scalar> {
    pivots: BTreeMap<u32, Row<K>>,
}

impl<K: Scalar> Default for Rref<K> {
    fn default() -> Self {
        Rref { pivots: BTreeMap::new() }
    }
}

impl<K: Scalar> Rref<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row<K>> {
        self.pivots.values()
    }

    pub fn pivot_row(&self, col: u32) -> Option<&Row<K>> {
        self.pivots.get(&col)
    }

    /// Fully reduces `r` against the current pivots.
    pub fn reduce(&self, mut r: Row<K>) -> Row<K> {
        let mut i = 0;
        while i < r.len() {
            let col = r[i].0;
            if let Some(p) = self.pivots.get(&col) {
                let c = -r[i].1.clone();
                row_axpy(&mut r, &c, p);
                // r no longer contains col; entries before i are untouched
            } else {
                i += 1;
            }
        }
        r
    }

    /// Reduces and inserts; returns the new pivot column, or `None` if the
    /// row was dependent.
    pub fn insert(&mut self, r: Row<K>) -> Option<u32> {
        let mut r = self.reduce(r);
        if r.is_empty() {
            return None;
        }
        let lead = r[0].0;
        let inv = r[0].1.inv().expect("nonzero leading coefficient");
        row_scale(&mut r, &inv);
        // back-substitute into existing pivot rows
        for p in self.pivots.values_mut() {
            if let Some(c) = row_get(p, lead).cloned() {
                row_axpy(p, &(-c), &r);
            }
        }
        self.pivots.insert(lead, r);
        Some(lead)
    }

    pub fn contains(&self, r: &[(u32, K)]) -> bool {
        self.reduce(r.to_vec()).is_empty()
    }
}

/// Basis of the solution space of `rows * x = 0` in `ncols` unknowns.
pub fn nullspace<K: Scalar>(rows: &[Row<K>], ncols: u32) -> Vec<Row<K>> {
    let mut rref = Rref::new();
    for r in rows {
        rref.insert(r.clone());
    }
    let pivot_cols: std::collections::BTreeSet<u32> = rref.pivot_cols().collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        // x_free = 1, pivot variables read off the reduced rows
        let mut v: Row<K> = vec![(free, K::one())];
        for (piv, row) in rref.pivots.iter() {
            if let Some(c) = row_get(row, free) {
                v.push((*piv, -c.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        out.push(v);
    }
    out
}

/// Rank of a set of rows.
pub fn rank<K: Scalar>(rows: &[Row<K>]) -> usize {
    let mut rref = Rref::new();
    for r in rows {
        rref.insert(r.clone());
    }
    rref.rank()
}
