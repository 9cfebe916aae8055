use std::ops::Range;

use crate::exact::RatMatrix;

/// A pencil under accumulated strict equivalence: `p * f0 * q == f`, `p * g0 * q == g`.
#[derive(Debug, Clone)]
pub(crate) struct Working {
    pub f: RatMatrix,
    pub g: RatMatrix,
    pub p: RatMatrix,
    pub q: RatMatrix,
}

impl Working {
    pub fn new(f: &RatMatrix, g: &RatMatrix) -> Self {
        Working {
            f: f.clone(),
            g: g.clone(),
            p: RatMatrix::identity(f.rows()),
            q: RatMatrix::identity(f.cols()),
        }
    }

    pub fn rows(&self) -> usize {
        self.f.rows()
    }

    pub fn cols(&self) -> usize {
        self.f.cols()
    }

    /// Replaces rows `r0..r0+t.rows()` of `F`, `G` and `P` by `t` times themselves.
    pub fn row_op(&mut self, r0: usize, t: &RatMatrix) {
        let n = t.rows();
        if n == 0 {
            return;
        }
        for m in [&mut self.f, &mut self.g, &mut self.p] {
            let block = m.submatrix(r0..r0 + n, 0..m.cols());
            m.set_block(r0, 0, &(t * &block));
        }
    }

    /// Replaces columns `c0..c0+t.cols()` of `F`, `G` and `Q` by themselves times `t`.
    pub fn col_op(&mut self, c0: usize, t: &RatMatrix) {
        let n = t.cols();
        if n == 0 {
            return;
        }
        for m in [&mut self.f, &mut self.g, &mut self.q] {
            let block = m.submatrix(0..m.rows(), c0..c0 + n);
            m.set_block(0, c0, &(&block * t));
        }
    }

    /// `rows[target] += x * rows[source]` on `F`, `G`, `P`.
    pub fn add_rows(&mut self, target: Range<usize>, source: Range<usize>, x: &RatMatrix) {
        if x.rows() == 0 || x.cols() == 0 {
            return;
        }
        for m in [&mut self.f, &mut self.g, &mut self.p] {
            let src = m.submatrix(source.clone(), 0..m.cols());
            let dst = m.submatrix(target.clone(), 0..m.cols());
            m.set_block(target.start, 0, &(&dst + &(x * &src)));
        }
    }

    /// `cols[target] += cols[source] * y` on `F`, `G`, `Q`.
    pub fn add_cols(&mut self, target: Range<usize>, source: Range<usize>, y: &RatMatrix) {
        if y.rows() == 0 || y.cols() == 0 {
            return;
        }
        for m in [&mut self.f, &mut self.g, &mut self.q] {
            let src = m.submatrix(0..m.rows(), source.clone());
            let dst = m.submatrix(0..m.rows(), target.clone());
            m.set_block(0, target.start, &(&dst + &(&src * y)));
        }
    }

    /// Reorders rows in `r0..r0+perm.len()` so that new row `i` is old row `r0 + perm[i]`.
    pub fn permute_rows(&mut self, r0: usize, perm: &[usize]) {
        self.row_op(r0, &RatMatrix::permutation(perm));
    }

    pub fn permute_cols(&mut self, c0: usize, perm: &[usize]) {
        self.col_op(c0, &RatMatrix::permutation(perm).transpose());
    }

    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> (RatMatrix, RatMatrix) {
        (self.f.submatrix(rows.clone(), cols.clone()), self.g.submatrix(rows, cols))
    }
}

/// `split..n` followed by `0..split`: moves everything from `split` on to the front.
pub(crate) fn rotate_front(n: usize, split: usize) -> Vec<usize> {
    (split..n).chain(0..split).collect()
}
