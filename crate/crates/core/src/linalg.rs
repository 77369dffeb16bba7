//! Sparse exact linear algebra over [`Rational`] with arbitrary ordered keys.
//!
//! Rows are kept in semi-echelon form: every stored row is monic at its
//! smallest key (its pivot), and pivots are distinct. Reduction always
//! eliminates the smallest remaining key, so the result is deterministic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `dst += scale * src`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(dst: &mut SparseVec<K>, scale: &Rational, src: &SparseVec<K>) {
    if scale.is_zero() {
        return;
    }
    for (k, v) in src {
        let term = v * scale;
        match dst.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(term);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += term;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &mut SparseVec<K>, s: &Rational) {
    for x in v.values_mut() {
        *x *= s;
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    /// Combination of inserted inputs this row represents.
    combo: SparseVec<usize>,
}

/// Outcome of inserting a vector.
#[derive(Clone, Debug, PartialEq)]
pub enum Insert<K> {
    /// Independent; carries the residual before it was made monic.
    New(SparseVec<K>),
    /// Dependent; carries the combination of earlier inputs (plus this one
    /// with coefficient 1) that reduces to zero.
    Dependent(SparseVec<usize>),
}

/// Incrementally built semi-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: BTreeMap<K, Row<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    fn reduce_tracked(&self, v: &mut SparseVec<K>, combo: &mut SparseVec<usize>) {
        while let Some((k, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(row) = self.rows.get(&k) else { break };
            let factor = -c;
            axpy(v, &factor, &row.vec);
            axpy(combo, &factor, &row.combo);
        }
    }

    /// Residual of `v` against the stored rows; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let mut scratch = SparseVec::new();
        self.reduce_tracked(&mut v, &mut scratch);
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts the next input vector (inputs are numbered from 0).
    pub fn insert(&mut self, v: SparseVec<K>) -> Insert<K> {
        let id = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut combo = SparseVec::new();
        combo.insert(id, Rational::one());
        self.reduce_tracked(&mut v, &mut combo);
        let Some((pivot, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Insert::Dependent(combo);
        };
        let residual = v.clone();
        let inv = lead.recip();
        scale(&mut v, &inv);
        scale(&mut combo, &inv);
        self.rows.insert(pivot, Row { vec: v, combo });
        Insert::New(residual)
    }

    /// Fully reduced rows, ordered by pivot.
    pub fn reduced_rows(&self) -> Vec<SparseVec<K>> {
        let mut rows: Vec<(K, SparseVec<K>)> = self.rows.iter().map(|(k, r)| (k.clone(), r.vec.clone())).collect();
        // back-substitute from the last pivot upwards
        for i in (0..rows.len()).rev() {
            let (pivot, pivot_row) = rows[i].clone();
            for (_, row) in rows.iter_mut().take(i) {
                if let Some(c) = row.get(&pivot).cloned() {
                    axpy(row, &-c, &pivot_row);
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Reduced row echelon form of the span of `vectors` (pivot = smallest key).
pub fn rref<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<K>> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.reduced_rows()
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`, as vectors
/// over column indices, in reduced echelon form.
pub fn kernel<K: Ord + Clone>(columns: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::new();
    let mut null = Vec::new();
    for col in columns {
        if let Insert::Dependent(combo) = e.insert(col) {
            null.push(combo);
        }
    }
    rref(null)
}
