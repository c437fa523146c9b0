//! Linear algebra over F2: packed bit vectors, dense elimination, and sparse
//! column reduction with lowest-index pivots.

/// A packed F2 vector of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        if self.get(i) != b {
            self.flip(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set index.
    pub fn lowest(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Incremental row-echelon basis of a subspace, pivoting on the lowest index.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    // pivot index -> reduced vector with that lowest index
    rows: std::collections::BTreeMap<usize, BitVec>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis { len, rows: Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce `v` against the basis (canonical residual).
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        // rows with pivot p only touch indices >= p, so one ascending pass suffices
        for (&p, r) in &self.rows {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    /// Insert `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut v = v;
        while let Some(p) = v.lowest() {
            match self.rows.get(&p) {
                Some(r) => v.xor_assign(r),
                None => {
                    self.rows.insert(p, v);
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        while let Some(p) = v.lowest() {
            match self.rows.get(&p) {
                Some(r) => v.xor_assign(r),
                None => return false,
            }
        }
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.values()
    }
}

/// Rank of a family of vectors (dense bitset elimination).
pub fn rank_of(vectors: impl IntoIterator<Item = BitVec>) -> usize {
    let mut iter = vectors.into_iter().peekable();
    let len = match iter.peek() {
        Some(v) => v.len(),
        None => return 0,
    };
    let mut basis = EchelonBasis::new(len);
    for v in iter {
        basis.insert(v);
    }
    basis.rank()
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`,
/// returned as vectors in the domain (length `images.len()`).
pub fn kernel_basis(images: &[BitVec]) -> Vec<BitVec> {
    let n = images.len();
    let mut pivots: std::collections::BTreeMap<usize, (BitVec, BitVec)> = Default::default();
    let mut kernel = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut tag = BitVec::zeros(n);
        tag.flip(j);
        loop {
            match v.lowest() {
                None => {
                    kernel.push(tag);
                    break;
                }
                Some(p) => match pivots.get(&p) {
                    Some((pv, pt)) => {
                        v.xor_assign(pv);
                        tag.xor_assign(pt);
                    }
                    None => {
                        pivots.insert(p, (v, tag));
                        break;
                    }
                },
            }
        }
    }
    kernel
}

/// Sparse F2 matrix stored as sorted row-index lists per column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseF2 {
    pub nrows: usize,
    pub cols: Vec<Vec<u32>>,
}

/// Symmetric difference of two sorted index lists.
pub fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Outcome of a column reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Reduced columns; a column is zero or has a pivot (lowest row) no other column shares.
    pub reduced: Vec<Vec<u32>>,
    /// For each column, the set of original columns summed into it (only when tracked).
    pub transforms: Option<Vec<Vec<u32>>>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// Columns that reduced to zero, as combinations of original columns.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let t = self.transforms.as_ref().expect("kernel requires tracked transforms");
        self.reduced
            .iter()
            .zip(t)
            .filter(|(r, _)| r.is_empty())
            .map(|(_, v)| v.clone())
            .collect()
    }
}

impl SparseF2 {
    pub fn new(nrows: usize, cols: Vec<Vec<u32>>) -> Self {
        SparseF2 { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Left-to-right column reduction, pivot = lowest row index.
    pub fn reduce(&self, track: bool) -> Reduction {
        let mut pivot_of: std::collections::HashMap<u32, usize> = Default::default();
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(self.cols.len());
        let mut transforms: Vec<Vec<u32>> = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            let mut c = col.clone();
            let mut t = if track { vec![j as u32] } else { Vec::new() };
            while let Some(&p) = c.first() {
                match pivot_of.get(&p) {
                    Some(&k) => {
                        c = sym_diff(&c, &reduced[k]);
                        if track {
                            t = sym_diff(&t, &transforms[k]);
                        }
                    }
                    None => {
                        pivot_of.insert(p, j);
                        break;
                    }
                }
            }
            reduced.push(c);
            if track {
                transforms.push(t);
            }
        }
        Reduction { reduced, transforms: track.then_some(transforms) }
    }

    pub fn rank(&self) -> usize {
        self.reduce(false).rank()
    }

    /// Dense bitset rank of the same matrix, used as a cross-check.
    pub fn rank_dense(&self) -> usize {
        rank_of(self.cols.iter().map(|c| BitVec::from_indices(self.nrows, c.iter().map(|&i| i as usize))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_repeated_column() {
        let a = BitVec::from_indices(3, [0, 1]);
        let k = kernel_basis(&[a.clone(), a, BitVec::from_indices(3, [2])]);
        assert_eq!(k, vec![BitVec::from_indices(3, [0, 1])]);
    }

    #[test]
    fn sparse_and_dense_ranks_agree() {
        let m = SparseF2::new(4, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.rank_dense(), 3);
        let red = m.reduce(true);
        assert_eq!(red.kernel(), vec![vec![0, 1, 2]]);
    }
}
