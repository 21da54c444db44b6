use std::collections::BTreeMap;

use super::Rat;

/// A sparse vector: `(index, value)` pairs with strictly increasing indices and
/// no explicit zeros.
pub type SparseVec = Vec<(usize, Rat)>;

const NO_PIVOT: usize = usize::MAX;

/// Incremental row-echelon form over `Rat`.
///
/// Rows are kept with leading coefficient 1; entries after the lead are not
/// necessarily reduced until [`Echelon::into_rref`] is called.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    fn reduce_acc(&self, acc: &mut BTreeMap<usize, Rat>) {
        let mut cursor = 0;
        while let Some((&c, _)) = acc.range(cursor..).next() {
            cursor = c + 1;
            let r = self.pivot_row[c];
            if r == NO_PIVOT {
                continue;
            }
            let factor = acc.remove(&c).expect("present");
            for (c2, v) in &self.rows[r][1..] {
                let e = acc.entry(*c2).or_insert_with(Rat::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    acc.remove(c2);
                }
            }
        }
    }

    /// Reduces `v` against the current pivots.
    pub fn reduce(&self, v: &[(usize, Rat)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rat> = v
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (*i, x.clone()))
            .collect();
        self.reduce_acc(&mut acc);
        acc.into_iter().collect()
    }

    /// Adds `v` to the row space. Returns `true` iff it was independent.
    pub fn insert(&mut self, v: &[(usize, Rat)]) -> bool {
        let red = self.reduce(v);
        self.insert_reduced(red)
    }

    fn insert_reduced(&mut self, mut red: SparseVec) -> bool {
        if red.is_empty() {
            return false;
        }
        let lead = red[0].0;
        if !red[0].1.is_one() {
            let inv = red[0].1.recip();
            for (_, x) in red.iter_mut() {
                *x *= &inv;
            }
        }
        self.pivot_row[lead] = self.rows.len();
        self.rows.push(red);
        true
    }

    pub fn insert_dense(&mut self, v: &[Rat]) -> bool {
        let sv = to_sparse(v);
        self.insert(&sv)
    }

    pub fn contains(&self, v: &[(usize, Rat)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Consumes the echelon form and returns the reduced row-echelon form.
    pub fn into_rref(self) -> Rref {
        let ncols = self.ncols;
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let mut pivot_row = vec![NO_PIVOT; ncols];
        for (i, r) in rows.iter().enumerate() {
            pivot_row[r[0].0] = i;
        }
        let mut done = Echelon {
            ncols,
            rows: Vec::with_capacity(rows.len()),
            pivot_row: vec![NO_PIVOT; ncols],
        };
        let mut out: Vec<SparseVec> = vec![Vec::new(); rows.len()];
        for (i, row) in rows.into_iter().enumerate().rev() {
            let lead = row[0].0;
            let tail = done.reduce(&row[1..]);
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push((lead, Rat::one()));
            full.extend(tail);
            done.pivot_row[lead] = done.rows.len();
            done.rows.push(full.clone());
            out[i] = full;
        }
        let pivots = out.iter().map(|r| r[0].0).collect();
        Rref {
            ncols,
            rows: out,
            pivots,
        }
    }
}

/// Reduced row-echelon form: rows sorted by pivot column, each pivot column
/// zero in every other row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Null-space basis, one vector per free column (in increasing order).
    /// Each vector has a 1 at its own free column and 0 at every other free column.
    pub fn kernel(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let free = self.free_cols();
        let mut col_entries: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.ncols];
        for row in &self.rows {
            let lead = row[0].0;
            for (c, v) in &row[1..] {
                col_entries[*c].push((lead, v.clone()));
            }
        }
        let vecs = free
            .iter()
            .map(|&f| {
                let mut v: SparseVec = col_entries[f].iter().map(|(l, x)| (*l, -x)).collect();
                v.push((f, Rat::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        (vecs, free)
    }
}

pub fn to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &[(usize, Rat)], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Rank of a family of sparse vectors in `ncols`-space.
pub fn rank_of(ncols: usize, vecs: &[SparseVec]) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        to_sparse(&v.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_and_kernel() {
        let mut e = Echelon::new(4);
        assert!(e.insert(&sv(&[1, 2, 0, 1])));
        assert!(e.insert(&sv(&[2, 4, 1, 0])));
        assert!(!e.insert(&sv(&[3, 6, 1, 1])));
        let rref = e.into_rref();
        assert_eq!(rref.pivots, vec![0, 2]);
        let (ker, free) = rref.kernel();
        assert_eq!(free, vec![1, 3]);
        for k in &ker {
            for row in [[1, 2, 0, 1], [2, 4, 1, 0]] {
                let dot: Rat = k.iter().map(|(i, x)| x * Rat::from_int(row[*i])).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
