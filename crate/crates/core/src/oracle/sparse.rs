//! Incremental row echelon form over sparse rows.
//!
//! The horizon systems are block banded, so eliminating row by row against pivots keyed
//! by leading column keeps fill inside the band.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Sorted `(column, value)` pairs without zeros.
pub(crate) type SparseRow = Vec<(usize, Rational)>;

/// `a - c * b` for sorted sparse rows.
fn sub_scaled(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Debug, Default)]
pub(crate) struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    /// Reduces `row` against the current pivots; returns the new pivot column, if any.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        loop {
            let (lead, val) = row.first()?.clone();
            match self.pivots.get(&lead) {
                Some(p) => row = sub_scaled(&row, &val, p),
                None => {
                    if !val.is_one() {
                        let inv = Rational::one() / &val;
                        for e in row.iter_mut() {
                            e.1 *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return Some(lead);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }
}
