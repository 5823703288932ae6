//! Oracles that share no code with the library.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense-free rational row reduction over sparse rows keyed by column.
struct Reducer {
    rows: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl Reducer {
    fn new() -> Self {
        Reducer { rows: BTreeMap::new() }
    }

    /// Adds a vector; true if it was independent.
    fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) -> bool {
        loop {
            let Some((&pivot, c)) = v.iter().next() else { return false };
            match self.rows.get(&pivot) {
                Some(row) => {
                    let c = c.clone();
                    for (k, x) in row {
                        let e = v.entry(*k).or_insert_with(BigRational::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / c;
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(pivot, v);
                    return true;
                }
            }
        }
    }
}

/// Layer dimensions by path length of the preprojective algebra of the quiver
/// with `n` vertices and arrows `(source, target)`, through `max_len` or the
/// first zero layer.
pub fn preprojective_layers(n: usize, arrows: &[(usize, usize)], max_len: usize) -> Vec<usize> {
    let m = arrows.len();
    // doubled: arrow a < m as given, a + m reversed
    let ends: Vec<(usize, usize)> = arrows.iter().copied().chain(arrows.iter().map(|&(s, t)| (t, s))).collect();
    let out_of = |v: usize| -> Vec<usize> { (0..2 * m).filter(|&a| ends[a].0 == v).collect() };
    // mesh relation at v as (path, coefficient)
    let mesh: Vec<Vec<(Vec<usize>, i64)>> = (0..n)
        .map(|v| {
            let mut r = Vec::new();
            for (a, &(s, t)) in arrows.iter().enumerate() {
                if s == v {
                    r.push((vec![a, a + m], 1));
                }
                if t == v {
                    r.push((vec![a + m, a], -1));
                }
            }
            r
        })
        .collect();
    // paths[k]: all paths of length k, with their endpoints
    let mut paths: Vec<Vec<(Vec<usize>, usize, usize)>> = vec![(0..n).map(|v| (vec![], v, v)).collect()];
    let mut layers = Vec::new();
    for len in 0..=max_len {
        if len > 0 {
            let next = paths[len - 1]
                .iter()
                .flat_map(|(p, s, t)| {
                    let ends = &ends;
                    out_of(*t).into_iter().map(move |a| {
                        let mut q = p.clone();
                        q.push(a);
                        (q, *s, ends[a].1)
                    })
                })
                .collect();
            paths.push(next);
        }
        let index: HashMap<&Vec<usize>, usize> = paths[len].iter().enumerate().map(|(i, (p, _, _))| (p, i)).collect();
        let mut red = Reducer::new();
        if len >= 2 {
            for k in 0..=len - 2 {
                for (u, _, ut) in &paths[k] {
                    for (w, ws, _) in &paths[len - 2 - k] {
                        if ut != ws || mesh[*ut].is_empty() {
                            continue;
                        }
                        let mut v = BTreeMap::new();
                        for (mid, c) in &mesh[*ut] {
                            let full: Vec<usize> = u.iter().chain(mid).chain(w).copied().collect();
                            let e = v.entry(index[&full]).or_insert_with(BigRational::zero);
                            *e += BigRational::from_integer((*c).into());
                        }
                        v.retain(|_, c: &mut BigRational| !c.is_zero());
                        red.insert(v);
                    }
                }
            }
        }
        let dim = paths[len].len() - red.rows.len();
        layers.push(dim);
        if dim == 0 {
            break;
        }
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_by_hand() {
        assert_eq!(preprojective_layers(1, &[], 3), vec![1, 0]);
        assert_eq!(preprojective_layers(2, &[(0, 1)], 4), vec![2, 2, 0]);
        assert_eq!(preprojective_layers(1, &[(0, 0)], 4), vec![1, 2, 3, 4, 5]);
    }
}
