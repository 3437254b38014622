//! Permutation matrices obtained from Latin squares over GF(q), and the field
//! they form under ⊞ (matrix product) and ⊡ (shift conjugation).
//!
//! Rows and columns are indexed by positions in the canonical order
//! (0, 1, α, α², …, α^{q−2}); see [`GaloisField::position`].

use alloc::vec::Vec;

use crate::galois::{Elem, GaloisField, LogAlpha};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("permutation sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("matrix is not the image of a field element")]
    NotInField,
}

/// Which Cayley table of GF(q) the Latin square is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatinKind {
    /// l_{i,j} = i − j over all of GF(q); images are q×q.
    Subtractive,
    /// l_{i,j} = i · j^{-1} over GF(q) \ {0}; images are (q−1)×(q−1) circulants.
    Multiplicative,
}

/// A Latin square whose rows, columns and symbols are field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    kind: LatinKind,
    size: usize,
    /// Row-major symbols.
    cells: Vec<Elem>,
    /// Element labelling each row/column index.
    labels: Vec<Elem>,
}

impl LatinSquare {
    /// Cayley table of subtraction; indices in canonical order.
    pub fn subtractive(field: &GaloisField) -> Self {
        let q = field.order();
        let labels: Vec<Elem> = (0..q).map(|p| field.at_position(p)).collect();
        let mut cells = Vec::with_capacity((q * q) as usize);
        for &i in &labels {
            for &j in &labels {
                cells.push(field.sub(i, j));
            }
        }
        LatinSquare { kind: LatinKind::Subtractive, size: q as usize, cells, labels }
    }

    /// Cayley table of division on the nonzero elements, indexed by
    /// (1, α, …, α^{q−2}).
    pub fn multiplicative(field: &GaloisField) -> Self {
        let q = field.order();
        let labels: Vec<Elem> = (1..q).map(|p| field.at_position(p)).collect();
        let mut cells = Vec::with_capacity(labels.len() * labels.len());
        for &i in &labels {
            for &j in &labels {
                cells.push(field.div(i, j).expect("nonzero divisor"));
            }
        }
        LatinSquare { kind: LatinKind::Multiplicative, size: labels.len(), cells, labels }
    }

    pub fn new(field: &GaloisField, kind: LatinKind) -> Self {
        match kind {
            LatinKind::Subtractive => Self::subtractive(field),
            LatinKind::Multiplicative => Self::multiplicative(field),
        }
    }

    pub fn kind(&self) -> LatinKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> Elem {
        self.cells[row * self.size + col]
    }

    pub fn labels(&self) -> &[Elem] {
        &self.labels
    }

    /// Each symbol appears exactly once in every row and every column.
    pub fn is_latin(&self) -> bool {
        let n = self.size;
        let mut seen = alloc::collections::BTreeSet::new();
        for r in 0..n {
            seen.clear();
            for c in 0..n {
                seen.insert(self.get(r, c));
            }
            if seen.len() != n {
                return false;
            }
        }
        for c in 0..n {
            seen.clear();
            for r in 0..n {
                seen.insert(self.get(r, c));
            }
            if seen.len() != n {
                return false;
            }
        }
        true
    }

    /// The map f: symbol ↦ permutation matrix with ones where the square holds
    /// that symbol. Returns `None` when the symbol does not occur.
    pub fn image(&self, symbol: Elem) -> Option<PermMatrix> {
        let n = self.size;
        let mut row_to_col = alloc::vec![u32::MAX; n];
        for (r, slot) in row_to_col.iter_mut().enumerate() {
            for c in 0..n {
                if self.get(r, c) == symbol {
                    *slot = c as u32;
                    break;
                }
            }
            if *slot == u32::MAX {
                return None;
            }
        }
        Some(PermMatrix { row_to_col })
    }
}

/// A permutation matrix stored as the column index of the single one in
/// each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermMatrix {
    row_to_col: Vec<u32>,
}

impl PermMatrix {
    pub fn identity(n: usize) -> Self {
        PermMatrix { row_to_col: (0..n as u32).collect() }
    }

    /// Wraps an index map, checking that it is a bijection.
    pub fn from_row_to_col(row_to_col: Vec<u32>) -> Option<Self> {
        let n = row_to_col.len();
        let mut seen = alloc::vec![false; n];
        for &c in &row_to_col {
            if c as usize >= n || core::mem::replace(&mut seen[c as usize], true) {
                return None;
            }
        }
        Some(PermMatrix { row_to_col })
    }

    pub fn size(&self) -> usize {
        self.row_to_col.len()
    }

    pub fn col_of_row(&self, row: usize) -> usize {
        self.row_to_col[row] as usize
    }

    pub fn row_to_col(&self) -> &[u32] {
        &self.row_to_col
    }

    pub fn is_one(&self, row: usize, col: usize) -> bool {
        self.row_to_col[row] as usize == col
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &PermMatrix) -> Result<PermMatrix, PermError> {
        if self.size() != other.size() {
            return Err(PermError::SizeMismatch(self.size(), other.size()));
        }
        let row_to_col = self.row_to_col.iter().map(|&k| other.row_to_col[k as usize]).collect();
        Ok(PermMatrix { row_to_col })
    }

    pub fn transpose(&self) -> PermMatrix {
        let mut inv = alloc::vec![0u32; self.size()];
        for (r, &c) in self.row_to_col.iter().enumerate() {
            inv[c as usize] = r as u32;
        }
        PermMatrix { row_to_col: inv }
    }

    /// Dense 0/1 rows, for debugging and small tests.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        (0..n)
            .map(|r| (0..n).map(|c| self.is_one(r, c) as u8).collect())
            .collect()
    }
}

/// f(a): ones at (i, j) exactly when i − j = a, i.e. column x maps to row
/// x + a. f(0) is the identity.
pub fn f_map(field: &GaloisField, a: Elem) -> PermMatrix {
    let q = field.order();
    let row_to_col = (0..q)
        .map(|pos| field.position(field.sub(field.at_position(pos), a)))
        .collect();
    PermMatrix { row_to_col }
}

/// M_t = f(α^t).
pub fn m_t(field: &GaloisField, t: i64) -> PermMatrix {
    f_map(field, field.alpha_pow(t))
}

/// The shift matrix P: fixes index 0 and sends the row of α^s to the column of
/// α^{s−1}. Q = Pᵀ.
pub fn shift_p(q: usize) -> PermMatrix {
    let mut row_to_col = alloc::vec![0u32; q];
    if q > 1 {
        row_to_col[1] = (q - 1) as u32;
        for (k, slot) in row_to_col.iter_mut().enumerate().skip(2) {
            *slot = (k - 1) as u32;
        }
    }
    PermMatrix { row_to_col }
}

/// P^s (s may be negative). Index 0 is fixed; the nonzero positions rotate.
pub fn shift_p_pow(q: usize, s: i64) -> PermMatrix {
    let order = (q - 1).max(1) as i64;
    let s = s.rem_euclid(order);
    let mut row_to_col = alloc::vec![0u32; q];
    for (k, slot) in row_to_col.iter_mut().enumerate().skip(1) {
        let t = (k as i64 - 1 - s).rem_euclid(order);
        *slot = (t + 1) as u32;
    }
    PermMatrix { row_to_col }
}

/// P^s · M · Q^s.
pub fn conjugate_by_shift(m: &PermMatrix, s: i64) -> PermMatrix {
    let q = m.size();
    let p = shift_p_pow(q, s);
    let pt = p.transpose();
    p.mul(m).and_then(|x| x.mul(&pt)).expect("same size")
}

/// Recovers a from f(a), checking that the matrix really is an image.
pub fn preimage(field: &GaloisField, m: &PermMatrix) -> Result<Elem, PermError> {
    if m.size() != field.order() as usize {
        return Err(PermError::SizeMismatch(m.size(), field.order() as usize));
    }
    // row 0 (element 0) holds its one at column −a
    let a = field.neg(field.at_position(m.row_to_col[0]));
    if f_map(field, a) == *m {
        Ok(a)
    } else {
        Err(PermError::NotInField)
    }
}

/// A ⊞ B = A · B, which equals f(a + b).
pub fn box_plus(a: &PermMatrix, b: &PermMatrix) -> Result<PermMatrix, PermError> {
    a.mul(b)
}

/// A ⊡ B for A = M_{t1}, B = M_{t2}: the conjugate P^{t2} M_{t1} Q^{t2} =
/// M_{t1+t2}. A zero operand (the identity image f(0)) annihilates.
pub fn box_dot(field: &GaloisField, a: &PermMatrix, b: &PermMatrix) -> Result<PermMatrix, PermError> {
    if a.size() != b.size() {
        return Err(PermError::SizeMismatch(a.size(), b.size()));
    }
    let ea = preimage(field, a)?;
    let eb = preimage(field, b)?;
    match (field.log_alpha(ea), field.log_alpha(eb)) {
        (LogAlpha::Exp(_), LogAlpha::Exp(t2)) => Ok(conjugate_by_shift(a, t2 as i64)),
        _ => Ok(PermMatrix::identity(a.size())),
    }
}

/// Outcome of the exhaustive field-isomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub addition_pairs: usize,
    pub multiplication_pairs: usize,
    pub counterexample: Option<Counterexample>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counterexample {
    Addition(Elem, Elem),
    Multiplication(Elem, Elem),
    Shift(u32),
}

/// Checks f(a + b) = f(a) ⊞ f(b) and f(a · b) = f(a) ⊡ f(b) on every pair,
/// plus M_{t+1} = P M_t Q for every t. `None` when q exceeds `max_order`.
pub fn verify_isomorphism(field: &GaloisField, max_order: u32) -> Option<IsomorphismReport> {
    let q = field.order();
    if q > max_order {
        return None;
    }
    let images: Vec<PermMatrix> = field.elements().map(|a| f_map(field, a)).collect();
    let mut report = IsomorphismReport { addition_pairs: 0, multiplication_pairs: 0, counterexample: None };
    for a in field.elements() {
        for b in field.elements() {
            report.addition_pairs += 1;
            let sum = box_plus(&images[a.0 as usize], &images[b.0 as usize]).expect("same size");
            if sum != images[field.add(a, b).0 as usize] {
                report.counterexample = Some(Counterexample::Addition(a, b));
                return Some(report);
            }
        }
    }
    for a in field.elements() {
        for b in field.elements() {
            report.multiplication_pairs += 1;
            let prod = box_dot(field, &images[a.0 as usize], &images[b.0 as usize]).expect("images");
            if prod != images[field.mul(a, b).0 as usize] {
                report.counterexample = Some(Counterexample::Multiplication(a, b));
                return Some(report);
            }
        }
    }
    let p = shift_p(q as usize);
    let qt = p.transpose();
    for t in 0..q.saturating_sub(1) {
        let next = p.mul(&m_t(field, t as i64)).and_then(|x| x.mul(&qt)).expect("same size");
        if next != m_t(field, t as i64 + 1) {
            report.counterexample = Some(Counterexample::Shift(t));
            return Some(report);
        }
    }
    Some(report)
}
