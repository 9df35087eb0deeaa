//! Bit-packed linear algebra over GF(2).
//!
//! Everything downstream (differentials, homology, transfer) reduces to
//! rank / solve / kernel computations on matrices whose entries are bits,
//! so rows are packed into `u64` words and elimination works a word at a
//! time.

/// Dense bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        BitVec::from_indices(len, &[i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Dot product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b))
            .count_ones()
            % 2
            == 1
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

/// Row-major GF(2) matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    /// Build from columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for r in col.iter_ones() {
                m.data[r].set(c, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        debug_assert_eq!(x.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(x) {
                out.set(r, true);
            }
        }
        out
    }

    /// Row echelon form in place, eliminating columns left to right.
    /// Returns the pivot columns in order; row i of the result is the row
    /// whose leading 1 sits in the i-th pivot column.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pr) = (next_row..self.rows).find(|&r| self.data[r].get(col)) else {
                continue;
            };
            self.data.swap(next_row, pr);
            let pivot_row = self.data[next_row].clone();
            for (r, row) in self.data.iter_mut().enumerate() {
                if r != next_row && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().len()
    }

    /// One solution of `self * x = b`, or None if `b` is outside the
    /// column space.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        debug_assert_eq!(b.len(), self.rows);
        // Eliminate the augmented matrix [self | b], with b kept separately.
        let mut work = self.clone();
        let mut rhs = b.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..work.cols {
            let Some(pr) = (next_row..work.rows).find(|&r| work.data[r].get(col)) else {
                continue;
            };
            work.data.swap(next_row, pr);
            let brs = rhs.get(next_row);
            let brp = rhs.get(pr);
            rhs.set(next_row, brp);
            rhs.set(pr, brs);
            let pivot_row = work.data[next_row].clone();
            let pivot_b = rhs.get(next_row);
            for r in 0..work.rows {
                if r != next_row && work.data[r].get(col) {
                    let row_b = rhs.get(r);
                    work.data[r].xor_assign(&pivot_row);
                    rhs.set(r, row_b ^ pivot_b);
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == work.rows {
                break;
            }
        }
        // Inconsistent iff some zeroed row still has a 1 on the right.
        for r in next_row..work.rows {
            if rhs.get(r) {
                return None;
            }
        }
        let mut x = BitVec::zeros(self.cols);
        for &(r, c) in &pivots {
            if rhs.get(r) {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// Basis of the null space.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.clone();
        let pivots = work.echelonize();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if work.data[i].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Column indices whose columns form a basis of the column space.
    pub fn image_pivot_columns(&self) -> Vec<usize> {
        self.clone().echelonize()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix product; row i of the result is the XOR of the rows of
    /// `other` selected by row i of `self`.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for j in row.iter_ones() {
                out.data[r].xor_assign(&other.data[j]);
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, row) in out.data.iter_mut().enumerate() {
            row.xor_assign(&other.data[r]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    /// Gauss-Jordan inverse of a square matrix.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pr = (col..n).find(|&r| work.data[r].get(col))?;
            work.data.swap(col, pr);
            inv.data.swap(col, pr);
            let wrow = work.data[col].clone();
            let irow = inv.data[col].clone();
            for r in 0..n {
                if r != col && work.data[r].get(col) {
                    work.data[r].xor_assign(&wrow);
                    inv.data[r].xor_assign(&irow);
                }
            }
        }
        Some(inv)
    }
}

/// Incremental rank tracker: feed vectors one at a time, learn which ones
/// enlarge the span. Used for saturation checks and basis extraction.
pub struct SpanTracker {
    len: usize,
    // Reduced vectors, each with a distinct leading bit.
    reduced: Vec<BitVec>,
}

impl SpanTracker {
    pub fn new(len: usize) -> Self {
        SpanTracker {
            len,
            reduced: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Returns true if `v` was independent of the span so far (and absorbs it).
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut v = v.clone();
        loop {
            let Some(lead) = v.first_one() else {
                return false;
            };
            match self.reduced.iter().find(|r| r.first_one() == Some(lead)) {
                Some(r) => v.xor_assign(&r.clone()),
                None => {
                    self.reduced.push(v);
                    return true;
                }
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        loop {
            let Some(lead) = v.first_one() else {
                return true;
            };
            match self.reduced.iter().find(|r| r.first_one() == Some(lead)) {
                Some(r) => v.xor_assign(&r.clone()),
                None => return false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitvec_ops() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert!(v.get(64));
        assert!(!v.get(63));
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        v.flip(0);
        assert_eq!(v.first_one(), Some(64));
    }

    #[test]
    fn rank_and_kernel() {
        // Columns: e1, e2, e1+e2, 0.
        let cols = vec![
            BitVec::from_indices(3, &[0]),
            BitVec::from_indices(3, &[1]),
            BitVec::from_indices(3, &[0, 1]),
            BitVec::zeros(3),
        ];
        let m = Mat::from_columns(3, &cols);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).is_zero());
        }
        assert_eq!(m.image_pivot_columns(), vec![0, 1]);
    }

    #[test]
    fn solve_consistent_and_not() {
        let cols = vec![
            BitVec::from_indices(3, &[0, 1]),
            BitVec::from_indices(3, &[1, 2]),
        ];
        let m = Mat::from_columns(3, &cols);
        let b = BitVec::from_indices(3, &[0, 2]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let bad = BitVec::from_indices(3, &[0]);
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn span_tracker_matches_rank() {
        let cols = vec![
            BitVec::from_indices(4, &[0, 3]),
            BitVec::from_indices(4, &[1]),
            BitVec::from_indices(4, &[0, 1, 3]),
            BitVec::from_indices(4, &[2]),
        ];
        let mut t = SpanTracker::new(4);
        let mut fresh = 0;
        for c in &cols {
            if t.insert(c) {
                fresh += 1;
            }
        }
        assert_eq!(fresh, 3);
        assert!(t.contains(&BitVec::from_indices(4, &[0, 1, 3])));
        assert!(!t.contains(&BitVec::from_indices(4, &[3])));
    }
}
