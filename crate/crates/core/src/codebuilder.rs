//! Base matrices W over GF(q), their expansion H = f(W) into arrays of
//! permutation matrices, the cross-addition test for 4-cycles, subarrays and
//! GF(2) rank.

use alloc::vec;
use alloc::vec::Vec;

use crate::galois::{Elem, GaloisField};
use crate::permfield::{f_map, LatinKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("W entry ({row}, {col}) is unset")]
    Unset { row: usize, col: usize },
    #[error("W entry ({row}, {col}) is not an element of GF({q})")]
    NotInField { row: usize, col: usize, q: u32 },
    #[error("W dimensions must be positive")]
    EmptyDimensions,
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index {0} selected twice")]
    DuplicateIndex(usize),
    #[error("row length {got} differs from {expected}")]
    Ragged { expected: usize, got: usize },
}

/// A μ×η array over GF(q) whose entries may be unset while it is being grown.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Option<Elem>>,
}

impl WMatrix {
    /// All entries unset.
    pub fn new(q: u32, rows: usize, cols: usize) -> Result<Self, CodeError> {
        if rows == 0 || cols == 0 {
            return Err(CodeError::EmptyDimensions);
        }
        Ok(WMatrix { q, rows, cols, entries: vec![None; rows * cols] })
    }

    /// `rows` rows and no columns yet; grow it with [`WMatrix::push_col`].
    pub fn with_rows(q: u32, rows: usize) -> Self {
        WMatrix { q, rows, cols: 0, entries: Vec::new() }
    }

    pub fn from_rows(field: &GaloisField, rows: &[Vec<Elem>]) -> Result<Self, CodeError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut w = WMatrix::new(field.order(), rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(CodeError::Ragged { expected: cols, got: row.len() });
            }
            for (j, &e) in row.iter().enumerate() {
                if !field.contains(e) {
                    return Err(CodeError::NotInField { row: i, col: j, q: field.order() });
                }
                w.set(i, j, Some(e));
            }
        }
        Ok(w)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Elem> {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Option<Elem>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    /// Number of leading columns whose entries are all set.
    pub fn complete_cols(&self) -> usize {
        (0..self.cols)
            .take_while(|&j| (0..self.rows).all(|i| self.get(i, j).is_some()))
            .count()
    }

    /// Appends an unset column and returns its index.
    pub fn push_col(&mut self) -> usize {
        let old = self.cols;
        let mut entries = Vec::with_capacity(self.rows * (old + 1));
        for i in 0..self.rows {
            entries.extend_from_slice(&self.entries[i * old..(i + 1) * old]);
            entries.push(None);
        }
        self.entries = entries;
        self.cols += 1;
        old
    }

    /// Keeps the first `cols` columns.
    pub fn truncate_cols(&mut self, cols: usize) {
        if cols >= self.cols {
            return;
        }
        let old = self.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(&self.entries[i * old..i * old + cols]);
        }
        self.entries = entries;
        self.cols = cols;
    }

    /// Selects the given rows and columns, in the given order.
    pub fn subarray(&self, rows: &[usize], cols: &[usize]) -> Result<WMatrix, CodeError> {
        check_indices(rows, self.rows)?;
        check_indices(cols, self.cols)?;
        let mut out = WMatrix::new(self.q, rows.len(), cols.len())?;
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// First `gamma` rows and first `rho` columns.
    pub fn leading(&self, gamma: usize, rho: usize) -> Result<WMatrix, CodeError> {
        self.subarray(&(0..gamma).collect::<Vec<_>>(), &(0..rho).collect::<Vec<_>>())
    }

    /// Row 0 and column 0 are zero; entry (i, j) for i, j ≥ 1 is α^{(i−1)+(j−1)}.
    pub fn base(field: &GaloisField) -> WMatrix {
        let q = field.order() as usize;
        let mut w = WMatrix::new(field.order(), q, q).expect("q >= 2");
        for i in 0..q {
            for j in 0..q {
                let e = if i == 0 || j == 0 {
                    Elem::ZERO
                } else {
                    field.alpha_pow((i - 1 + j - 1) as i64)
                };
                w.set(i, j, Some(e));
            }
        }
        w
    }

    fn sum_at(&self, field: &GaloisField, a: (usize, usize), b: (usize, usize)) -> Option<Elem> {
        Some(field.add(self.get(a.0, a.1)?, self.get(b.0, b.1)?))
    }

    /// First quadruple (i1, i2, j1, j2) with i1 ≠ i2, j1 ≠ j2 and
    /// w[i1][j1] + w[i2][j2] = w[i1][j2] + w[i2][j1]. Unset entries never
    /// participate.
    pub fn cross_addition_violation(&self, field: &GaloisField) -> Option<Quad> {
        for i1 in 0..self.rows {
            for i2 in i1 + 1..self.rows {
                for j1 in 0..self.cols {
                    for j2 in j1 + 1..self.cols {
                        if self.quad_violates(field, i1, i2, j1, j2) {
                            return Some(Quad { i1, i2, j1, j2 });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn cross_addition_ok(&self, field: &GaloisField) -> bool {
        self.cross_addition_violation(field).is_none()
    }

    /// Only quadruples that use entry (i, j).
    pub fn cross_addition_violation_at(&self, field: &GaloisField, i: usize, j: usize) -> Option<Quad> {
        self.get(i, j)?;
        for i2 in (0..self.rows).filter(|&r| r != i) {
            if self.get(i2, j).is_none() {
                continue;
            }
            for j2 in (0..self.cols).filter(|&c| c != j) {
                if self.quad_violates(field, i, i2, j, j2) {
                    let (i1, i2) = (i.min(i2), i.max(i2));
                    let (j1, j2) = (j.min(j2), j.max(j2));
                    return Some(Quad { i1, i2, j1, j2 });
                }
            }
        }
        None
    }

    fn quad_violates(&self, field: &GaloisField, i1: usize, i2: usize, j1: usize, j2: usize) -> bool {
        match (self.sum_at(field, (i1, j1), (i2, j2)), self.sum_at(field, (i1, j2), (i2, j1))) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// The multiplicative analogue: w[i1][j1]·w[i2][j2] ≠ w[i1][j2]·w[i2][j1].
    /// Quadruples touching zero or unset entries are skipped.
    pub fn cross_multiplication_violation(&self, field: &GaloisField) -> Option<Quad> {
        let nz = |i, j| self.get(i, j).filter(|e: &Elem| !e.is_zero());
        for i1 in 0..self.rows {
            for i2 in i1 + 1..self.rows {
                for j1 in 0..self.cols {
                    for j2 in j1 + 1..self.cols {
                        let (Some(a), Some(b), Some(c), Some(d)) =
                            (nz(i1, j1), nz(i2, j2), nz(i1, j2), nz(i2, j1))
                        else {
                            continue;
                        };
                        if field.mul(a, b) == field.mul(c, d) {
                            return Some(Quad { i1, i2, j1, j2 });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn cross_multiplication_ok(&self, field: &GaloisField) -> bool {
        self.cross_multiplication_violation(field).is_none()
    }

    /// Expands to H = f(W) using the subtractive Latin square.
    pub fn expand(&self, field: &GaloisField) -> Result<ParityCheck, CodeError> {
        self.expand_with(field, LatinKind::Subtractive)
    }

    /// Expands with the chosen Latin square. For the multiplicative square the
    /// blocks are (q−1)×(q−1) circulants and zero entries become zero blocks.
    pub fn expand_with(&self, field: &GaloisField, kind: LatinKind) -> Result<ParityCheck, CodeError> {
        let q = field.order() as usize;
        let block = match kind {
            LatinKind::Subtractive => q,
            LatinKind::Multiplicative => q - 1,
        };
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::with_capacity(self.rows); self.cols * block];
        for j in 0..self.cols {
            for i in 0..self.rows {
                let e = self.get(i, j).ok_or(CodeError::Unset { row: i, col: j })?;
                if !field.contains(e) {
                    return Err(CodeError::NotInField { row: i, col: j, q: field.order() });
                }
                match kind {
                    LatinKind::Subtractive => {
                        let m = f_map(field, e);
                        for r in 0..q {
                            col_rows[j * q + m.col_of_row(r)].push((i * q + r) as u32);
                        }
                    }
                    LatinKind::Multiplicative => {
                        if let Some(t) = field.log_alpha(e).exponent() {
                            let n = block;
                            for r in 0..n {
                                let c = (r + n - t as usize % n) % n;
                                col_rows[j * n + c].push((i * n + r) as u32);
                            }
                        }
                    }
                }
            }
        }
        for rows in &mut col_rows {
            rows.sort_unstable();
        }
        Ok(ParityCheck {
            rows: self.rows * block,
            cols: self.cols * block,
            col_rows,
            blocks: Some(BlockInfo { gamma: self.rows, rho: self.cols, size: block }),
        })
    }
}

fn check_indices(idx: &[usize], len: usize) -> Result<(), CodeError> {
    if idx.is_empty() {
        return Err(CodeError::EmptyDimensions);
    }
    for (k, &i) in idx.iter().enumerate() {
        if i >= len {
            return Err(CodeError::IndexOutOfRange { index: i, len });
        }
        if idx[..k].contains(&i) {
            return Err(CodeError::DuplicateIndex(i));
        }
    }
    Ok(())
}

/// Row pair and column pair of a violated cross constraint (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quad {
    pub i1: usize,
    pub i2: usize,
    pub j1: usize,
    pub j2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockInfo {
    pub gamma: usize,
    pub rho: usize,
    pub size: usize,
}

/// Sparse binary parity-check matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheck {
    rows: usize,
    cols: usize,
    col_rows: Vec<Vec<u32>>,
    blocks: Option<BlockInfo>,
}

impl ParityCheck {
    /// From per-column row lists. Repeated or out-of-range rows give `None`.
    pub fn from_columns(rows: usize, col_rows: Vec<Vec<u32>>) -> Option<Self> {
        let mut col_rows = col_rows;
        for c in &mut col_rows {
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) || c.iter().any(|&r| r as usize >= rows) {
                return None;
            }
        }
        Some(ParityCheck { rows, cols: col_rows.len(), col_rows, blocks: None })
    }

    pub fn identity(n: usize) -> Self {
        ParityCheck { rows: n, cols: n, col_rows: (0..n as u32).map(|r| vec![r]).collect(), blocks: None }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn blocks(&self) -> Option<BlockInfo> {
        self.blocks
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.col_rows[c]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.col_rows
    }

    /// Per-row column lists, sorted.
    pub fn row_lists(&self) -> Vec<Vec<u32>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (c, rs) in self.col_rows.iter().enumerate() {
            for &r in rs {
                rows[r as usize].push(c as u32);
            }
        }
        rows
    }

    pub fn ones(&self) -> usize {
        self.col_rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.col_rows[c].binary_search(&(r as u32)).is_ok()
    }

    /// H · x over GF(2).
    pub fn syndrome(&self, word: &[u8]) -> Vec<u8> {
        let mut s = vec![0u8; self.rows];
        for (c, rs) in self.col_rows.iter().enumerate() {
            if word[c] & 1 == 1 {
                for &r in rs {
                    s[r as usize] ^= 1;
                }
            }
        }
        s
    }

    pub fn is_codeword(&self, word: &[u8]) -> bool {
        self.syndrome(word).iter().all(|&b| b == 0)
    }

    /// Rank over GF(2) by dense Gaussian elimination on packed rows.
    pub fn gf2_rank(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut m = vec![0u64; self.rows * words];
        for (c, rs) in self.col_rows.iter().enumerate() {
            for &r in rs {
                m[r as usize * words + c / 64] |= 1u64 << (c % 64);
            }
        }
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.rows).find(|&r| m[r * words + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..words {
                    m.swap(pivot * words + k, rank * words + k);
                }
            }
            for r in 0..self.rows {
                if r != rank && m[r * words + w] & bit != 0 {
                    for k in w..words {
                        let v = m[rank * words + k];
                        m[r * words + k] ^= v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Code dimension k = n − rank.
    pub fn dimension(&self) -> usize {
        self.cols - self.gf2_rank()
    }
}
