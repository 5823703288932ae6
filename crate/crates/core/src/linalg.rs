//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are sorted `(index, value)` lists without zeros. Matrices are stored
//! column-wise, which matches how module maps are assembled (one column per
//! basis vector of the source).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rat;

pub type SparseVec = Vec<(usize, Rat)>;

pub fn unit(i: usize) -> SparseVec {
    vec![(i, Rat::one())]
}

/// `a + c * b`.
pub fn axpy(a: &SparseVec, c: &Rat, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_vec<I: IntoIterator<Item = (usize, Rat)>>(entries: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (i, v) in entries {
        let e = acc.entry(i).or_insert_with(Rat::zero);
        *e += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn get(a: &SparseVec, i: usize) -> Option<&Rat> {
    a.binary_search_by_key(&i, |e| e.0).ok().map(|k| &a[k].1)
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SMat {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<SparseVec>,
}

impl SMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SMat {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SMat {
            nrows: n,
            ncols: n,
            cols: (0..n).map(unit).collect(),
        }
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        SMat {
            nrows,
            ncols: cols.len(),
            cols,
        }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| !rows[i][j].is_zero())
                    .map(|i| (i, rows[i][j].clone()))
                    .collect()
            })
            .collect();
        SMat { nrows, ncols, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut rows = vec![vec![Rat::zero(); self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i][j] = v.clone();
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (j, c) in v {
            acc = axpy(&acc, c, &self.cols[*j]);
        }
        acc
    }

    /// `self * other`.
    pub fn mul(&self, other: &SMat) -> SMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        SMat {
            nrows: self.nrows,
            ncols: other.ncols,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SMat) -> SMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        SMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| axpy(a, &Rat::one(), b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> SMat {
        SMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().map(|col| scale(col, c)).collect(),
        }
    }

    pub fn transpose(&self) -> SMat {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SMat {
            nrows: self.ncols,
            ncols: self.nrows,
            cols,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.nrows, false);
        for c in &self.cols {
            ech.insert(c.clone());
        }
        ech.rank()
    }

    /// Basis of the null space, one sparse vector per kernel direction.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new(self.nrows, true);
        let mut out = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            if let Some(dep) = ech.insert_tagged(c.clone(), unit(j)) {
                out.push(dep);
            }
        }
        out
    }

    /// Selects the submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SMat {
        let mut pos = vec![usize::MAX; self.nrows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        SMat {
            nrows: rows.len(),
            ncols: cols.len(),
            cols: cols
                .iter()
                .map(|&c| {
                    self.cols[c]
                        .iter()
                        .filter(|(i, _)| pos[*i] != usize::MAX)
                        .map(|(i, v)| (pos[*i], v.clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Incremental row echelon form.
///
/// Each stored vector has its smallest index as pivot with coefficient 1.
/// When tracking is on, every stored vector remembers the combination of
/// inserted tags it came from, so dependencies and coordinates come for free.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    track: bool,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize, track: bool) -> Self {
        Echelon {
            dim,
            track,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_of: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the stored rows; returns the remainder and the
    /// (negated) tag combination that was subtracted.
    fn reduce_with(&self, v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let mut acc: BTreeMap<usize, Rat> = v.into_iter().collect();
        let mut rest: SparseVec = Vec::new();
        while let Some((idx, c)) = acc.pop_first() {
            match self.pivot_of.get(&idx) {
                Some(&r) => {
                    for (i, x) in self.rows[r].iter().skip(1) {
                        let e = acc.entry(*i).or_insert_with(Rat::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            acc.remove(i);
                        }
                    }
                    if self.track {
                        tag = axpy(&tag, &-&c, &self.tags[r]);
                    }
                }
                None => rest.push((idx, c)),
            }
        }
        (rest, tag)
    }

    /// Inserts a vector; returns whether it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (rest, _) = self.reduce_with(v, Vec::new());
        self.store(rest, Vec::new())
    }

    /// Inserts a vector with a tag; returns the dependency tag if it was
    /// already in the span.
    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let (rest, tag) = self.reduce_with(v, tag);
        if rest.is_empty() {
            Some(tag)
        } else {
            self.store(rest, tag);
            None
        }
    }

    fn store(&mut self, rest: SparseVec, tag: SparseVec) -> bool {
        if rest.is_empty() {
            return false;
        }
        let lead = rest[0].1.clone();
        let inv = lead.recip();
        let row = scale(&rest, &inv);
        let tag = if self.track { scale(&tag, &inv) } else { tag };
        self.pivot_of.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        self.tags.push(tag);
        true
    }

    /// Remainder of `v` modulo the span; supported on non-pivot indices.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with(v.clone(), Vec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_with(v.clone(), Vec::new()).0.is_empty()
    }

    /// Expresses `v` as a combination of the inserted tags, if it lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "coordinates need a tracking echelon");
        let (rest, tag) = self.reduce_with(v.clone(), Vec::new());
        if rest.is_empty() {
            Some(scale(&tag, &-Rat::one()))
        } else {
            None
        }
    }

    /// Standard basis indices completing the span to the whole space.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|i| !self.pivot_of.contains_key(i))
            .collect()
    }
}

/// Solves for coordinates of every column of `targets` in the basis given by
/// the columns of `basis`. Panics if some column is outside the span.
pub fn coordinates_in(basis: &[SparseVec], dim: usize, targets: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(dim, true);
    for (k, b) in basis.iter().enumerate() {
        let dep = ech.insert_tagged(b.clone(), unit(k));
        assert!(dep.is_none(), "basis vectors are dependent");
    }
    targets
        .iter()
        .map(|t| ech.coordinates(t).expect("vector outside the span"))
        .collect()
}

/// Basis of the intersection of the null spaces of several maps on one space.
pub fn common_kernel(maps: &[&SMat], dim: usize) -> Vec<SparseVec> {
    let rows: usize = maps.iter().map(|m| m.nrows).sum();
    let mut cols: Vec<SparseVec> = vec![Vec::new(); dim];
    let mut offset = 0;
    for m in maps {
        for (j, col) in m.cols.iter().enumerate() {
            cols[j].extend(col.iter().map(|(i, v)| (i + offset, v.clone())));
        }
        offset += m.nrows;
    }
    SMat::from_cols(rows, cols).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(rows: &[&[i64]]) -> SMat {
        SMat::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).is_empty());
    }

    #[test]
    fn coordinates_roundtrip() {
        let basis = vec![vec![(0, rat(1)), (1, rat(1))], vec![(1, rat(1)), (2, rat(2))]];
        let target = axpy(&scale(&basis[0], &rat(3)), &rat(-2), &basis[1]);
        let c = coordinates_in(&basis, 3, &[target]);
        assert_eq!(c[0], vec![(0, rat(3)), (1, rat(-2))]);
    }

    #[test]
    fn complement_spans() {
        let mut e = Echelon::new(3, false);
        e.insert(vec![(0, rat(1)), (2, rat(1))]);
        assert_eq!(e.complement(), vec![1, 2]);
        assert!(e.contains(&vec![(0, rat(2)), (2, rat(2))]));
    }
}
