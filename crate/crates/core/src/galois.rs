//! Arithmetic over GF(q), q = p^m, driven by exp/log tables of a fixed
//! primitive element α.
//!
//! Elements are encoded as integers: the polynomial `c_0 + c_1 x + ... +
//! c_{m-1} x^{m-1}` over GF(p) is stored as `c_0 + c_1 p + ... + c_{m-1}
//! p^{m-1}`. The zero element is code 0 and the one element is code 1.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order carry a precomputed addition table.
const ADD_TABLE_LIMIT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum of 65536")]
    TooLarge(u64),
    #[error("modulus must be monic of degree {expected}, got {got} coefficients")]
    BadModulus { expected: u32, got: usize },
    #[error("modulus coefficient {0} is not reduced modulo the characteristic")]
    CoefficientOutOfRange(u32),
    #[error("modulus is reducible over GF(p)")]
    Reducible,
    #[error("no primitive element found (internal error)")]
    NoPrimitive,
}

/// A field element, encoded as described in the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Discrete logarithm to base α. Zero has no finite logarithm and maps to
/// [`LogAlpha::NegInfinity`], mirroring α^{-∞} = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogAlpha {
    NegInfinity,
    Exp(u32),
}

impl LogAlpha {
    pub fn exponent(self) -> Option<u32> {
        match self {
            LogAlpha::NegInfinity => None,
            LogAlpha::Exp(t) => Some(t),
        }
    }
}

impl fmt::Display for LogAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogAlpha::NegInfinity => f.write_str("-inf"),
            LogAlpha::Exp(t) => write!(f, "{t}"),
        }
    }
}

/// Immutable GF(p^m) with precomputed tables.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first, length m + 1.
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u32>,
    /// log[0] is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(code % p);
        code /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo a monic polynomial, coefficients mod p.
fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (k, &mc) in modulus[..deg].iter().enumerate() {
                let idx = shift + k;
                r[idx] = ((r[idx] as u64 + (p - lead) as u64 * mc as u64) % p as u64) as u32;
            }
        }
    }
    r.resize(deg, 0);
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, modulus, p)
}

/// True when the monic polynomial `f` (constant term first) has no monic
/// factor of degree between 1 and deg(f)/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = digits(code as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree m, ordered by the integer
/// code of its lower coefficients.
fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut f = digits(code as u32, p, m);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisField {
    /// Builds GF(p^m). Without an explicit modulus the smallest monic
    /// irreducible polynomial is used; α is the smallest element (by code) of
    /// multiplicative order q − 1.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 || f[m as usize] != 1 {
                    return Err(FieldError::BadModulus { expected: m, got: f.len() });
                }
                if let Some(&c) = f.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientOutOfRange(c));
                }
                if !is_irreducible(f, p) {
                    return Err(FieldError::Reducible);
                }
                f.to_vec()
            }
            None => default_modulus(p, m),
        };

        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut primitive = None;
        'search: for cand in 1..q {
            let g = digits(cand, p, m);
            let mut cur = digits(1, p, m);
            for t in 0..order {
                let code = undigits(&cur, p);
                if t > 0 && code == 1 {
                    continue 'search;
                }
                exp[t as usize] = code;
                cur = poly_mul_mod(&cur, &g, &modulus, p);
            }
            if undigits(&cur, p) != 1 {
                continue;
            }
            primitive = Some(Elem(cand));
            break;
        }
        let primitive = primitive.ok_or(FieldError::NoPrimitive)?;
        for (t, &code) in exp.iter().enumerate() {
            log[code as usize] = t as u32;
        }

        let neg = (0..q)
            .map(|c| {
                let d: Vec<u32> = digits(c, p, m).iter().map(|&x| (p - x) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let mut field = GaloisField {
            p,
            m,
            q,
            modulus,
            primitive,
            exp,
            log,
            neg,
            add_table: None,
        };
        if q <= ADD_TABLE_LIMIT && p != 2 {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b) as u16;
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// Iterates all elements in integer-code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.p, self.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<Elem> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return None;
        }
        Some(Elem(undigits(coeffs, self.p)))
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.q
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => Elem(t[(a.0 * self.q + b.0) as usize] as u32),
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let order = self.q - 1;
        let t = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        Elem(self.exp[t as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let order = self.q - 1;
        let t = (order - self.log[a.0 as usize]) % order;
        Some(Elem(self.exp[t as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn log_alpha(&self, a: Elem) -> LogAlpha {
        if a.is_zero() {
            LogAlpha::NegInfinity
        } else {
            LogAlpha::Exp(self.log[a.0 as usize])
        }
    }

    /// α^t for any integer t (reduced modulo q − 1).
    pub fn alpha_pow(&self, t: i64) -> Elem {
        let order = (self.q - 1) as i64;
        Elem(self.exp[t.rem_euclid(order) as usize])
    }

    pub fn from_log(&self, l: LogAlpha) -> Elem {
        match l {
            LogAlpha::NegInfinity => Elem::ZERO,
            LogAlpha::Exp(t) => self.alpha_pow(t as i64),
        }
    }

    /// Position of `a` in the canonical index order (0, 1, α, …, α^{q−2}).
    #[inline]
    pub fn position(&self, a: Elem) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.log[a.0 as usize] + 1
        }
    }

    /// Inverse of [`GaloisField::position`].
    #[inline]
    pub fn at_position(&self, pos: u32) -> Elem {
        if pos == 0 {
            Elem::ZERO
        } else {
            Elem(self.exp[(pos - 1) as usize])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2() {
        let f = GaloisField::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.primitive(), Elem::ONE);
        assert_eq!(f.add(Elem::ONE, Elem::ONE), Elem::ZERO);
    }

    #[test]
    fn gf8_with_explicit_modulus() {
        // x^3 + x + 1
        let f = GaloisField::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let alpha = f.primitive();
        assert_eq!(f.coeffs(alpha), vec![0, 1, 0]);
        let a3 = f.alpha_pow(3);
        assert_eq!(a3, f.add(alpha, Elem::ONE));
        assert_eq!(f.log_alpha(f.add(alpha, Elem::ONE)), LogAlpha::Exp(3));
        assert_eq!(f.mul(f.alpha_pow(3), f.alpha_pow(5)), alpha);
    }

    #[test]
    fn default_modulus_gf8_is_x3_x_1() {
        let f = GaloisField::new(2, 3, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn gf9_alpha_is_x_plus_1() {
        let f = GaloisField::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.coeffs(f.primitive()), vec![1, 1]);
        let a4 = f.alpha_pow(4);
        assert_eq!(f.mul(a4, a4), Elem::ONE);
    }

    #[test]
    fn gf5_addition() {
        let f = GaloisField::new(5, 1, None).unwrap();
        assert_eq!(f.add(Elem(3), Elem(4)), Elem(2));
        assert_eq!(f.sub(Elem(1), Elem(3)), Elem(3));
    }

    #[test]
    fn gf361_builds() {
        let f = GaloisField::new(19, 2, None).unwrap();
        assert_eq!(f.order(), 361);
        let mut seen = vec![false; 361];
        for t in 0..360 {
            let e = f.alpha_pow(t);
            assert!(!seen[e.0 as usize]);
            seen[e.0 as usize] = true;
        }
    }

    #[test]
    fn log_of_zero_and_one() {
        let f = GaloisField::new(2, 3, None).unwrap();
        assert_eq!(f.log_alpha(Elem::ZERO), LogAlpha::NegInfinity);
        assert_eq!(f.log_alpha(Elem::ONE), LogAlpha::Exp(0));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(GaloisField::new(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(GaloisField::new(2, 0, None).unwrap_err(), FieldError::ZeroDegree);
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(
            GaloisField::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            FieldError::Reducible
        );
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
        assert_eq!(
            GaloisField::new(2, 4, Some(&[1, 0, 1, 0, 1])).unwrap_err(),
            FieldError::Reducible
        );
        assert!(matches!(
            GaloisField::new(2, 3, Some(&[1, 1, 0])),
            Err(FieldError::BadModulus { .. })
        ));
        assert!(matches!(GaloisField::new(2, 17, None), Err(FieldError::TooLarge(_))));
    }

    #[test]
    fn positions_round_trip() {
        let f = GaloisField::new(3, 2, None).unwrap();
        for pos in 0..9 {
            assert_eq!(f.position(f.at_position(pos)), pos);
        }
        assert_eq!(f.at_position(1), Elem::ONE);
        assert_eq!(f.at_position(2), f.primitive());
    }
}
