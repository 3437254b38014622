//! Iterative decoders with a flooding schedule: Gallager A/B on hard
//! decisions and log-domain sum-product on LLRs (positive means bit 0).

use alloc::vec;
use alloc::vec::Vec;

use crate::codebuilder::ParityCheck;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    /// A variable flips its outgoing message only when every other incoming
    /// check message disagrees with the channel bit.
    GallagerA,
    /// Flips when at least `threshold` other incoming check messages disagree.
    GallagerB { threshold: usize },
    Spa,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    pub algorithm: Algorithm,
    pub max_iter: usize,
    /// Bound on message magnitudes entering and leaving the tanh rule.
    pub llr_clamp: f64,
}

impl DecoderConfig {
    pub const DEFAULT_MAX_ITER: usize = 50;
    pub const DEFAULT_CLAMP: f64 = 25.0;

    pub fn new(algorithm: Algorithm) -> Self {
        DecoderConfig { algorithm, max_iter: Self::DEFAULT_MAX_ITER, llr_clamp: Self::DEFAULT_CLAMP }
    }

    pub fn gallager_a() -> Self {
        Self::new(Algorithm::GallagerA)
    }

    /// Gallager B with the majority threshold 2 used for column weight 3.
    pub fn gallager_b() -> Self {
        Self::new(Algorithm::GallagerB { threshold: 2 })
    }

    pub fn spa() -> Self {
        Self::new(Algorithm::Spa)
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    /// Checks the settings against a code whose largest column weight is
    /// `max_var_degree`.
    pub fn validate(&self, max_var_degree: usize) -> Result<(), DecodeError> {
        if self.max_iter == 0 {
            return Err(DecodeError::BadConfig("max_iter must be at least 1"));
        }
        if !(self.llr_clamp.is_finite() && self.llr_clamp > 0.0) {
            return Err(DecodeError::BadConfig("llr_clamp must be positive and finite"));
        }
        if let Algorithm::GallagerB { threshold } = self.algorithm {
            let ext = max_var_degree.saturating_sub(1);
            if 2 * threshold <= ext || threshold > ext {
                return Err(DecodeError::BadConfig("Gallager B threshold must be a strict majority of the extrinsic messages"));
            }
        }
        Ok(())
    }
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self::spa()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub word: Vec<u8>,
    pub success: bool,
    pub iterations_used: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecodeError {
    #[error("input length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("input value at position {0} is not finite")]
    NonFinite(usize),
    #[error("input value at position {0} is not a bit")]
    NotBinary(usize),
    #[error("{0}")]
    BadConfig(&'static str),
    #[error("a soft decoder needs LLR input; a hard decoder needs bits")]
    WrongInput,
}

/// Edge-indexed view of H with reusable message buffers. Edges are numbered
/// column by column.
#[derive(Debug, Clone)]
pub struct Decoder {
    cfg: DecoderConfig,
    n: usize,
    var_start: Vec<usize>,
    edge_var: Vec<u32>,
    check_edges: Vec<Vec<u32>>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    bits_v2c: Vec<u8>,
    bits_c2v: Vec<u8>,
    scratch: Vec<f64>,
}

impl Decoder {
    pub fn new(h: &ParityCheck, cfg: DecoderConfig) -> Result<Self, DecodeError> {
        let n = h.cols();
        let mut var_start = Vec::with_capacity(n + 1);
        let mut edge_var = Vec::with_capacity(h.ones());
        let mut check_edges = vec![Vec::new(); h.rows()];
        var_start.push(0);
        let mut max_deg = 0;
        for v in 0..n {
            let col = h.column(v);
            max_deg = max_deg.max(col.len());
            for &c in col {
                check_edges[c as usize].push(edge_var.len() as u32);
                edge_var.push(v as u32);
            }
            var_start.push(edge_var.len());
        }
        cfg.validate(max_deg)?;
        let e = edge_var.len();
        Ok(Decoder {
            cfg,
            n,
            var_start,
            edge_var,
            check_edges,
            v2c: vec![0.0; e],
            c2v: vec![0.0; e],
            bits_v2c: vec![0; e],
            bits_c2v: vec![0; e],
            scratch: Vec::new(),
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn syndrome_zero(&self, word: &[u8]) -> bool {
        self.check_edges
            .iter()
            .all(|es| es.iter().fold(0u8, |acc, &e| acc ^ word[self.edge_var[e as usize] as usize]) == 0)
    }

    /// Gallager A or B on a received binary word.
    pub fn decode_hard(&mut self, y: &[u8]) -> Result<DecodeResult, DecodeError> {
        if y.len() != self.n {
            return Err(DecodeError::LengthMismatch { expected: self.n, got: y.len() });
        }
        if let Some(i) = y.iter().position(|&b| b > 1) {
            return Err(DecodeError::NotBinary(i));
        }
        let threshold = match self.cfg.algorithm {
            Algorithm::GallagerA => None,
            Algorithm::GallagerB { threshold } => Some(threshold),
            Algorithm::Spa => return Err(DecodeError::WrongInput),
        };
        let mut word = y.to_vec();
        if self.syndrome_zero(&word) {
            return Ok(DecodeResult { word, success: true, iterations_used: 0 });
        }
        for v in 0..self.n {
            for e in self.var_start[v]..self.var_start[v + 1] {
                self.bits_v2c[e] = y[v];
            }
        }
        for it in 1..=self.cfg.max_iter {
            for es in &self.check_edges {
                let total = es.iter().fold(0u8, |acc, &e| acc ^ self.bits_v2c[e as usize]);
                for &e in es {
                    self.bits_c2v[e as usize] = total ^ self.bits_v2c[e as usize];
                }
            }
            for v in 0..self.n {
                let (lo, hi) = (self.var_start[v], self.var_start[v + 1]);
                let deg = hi - lo;
                let disagree = (lo..hi).filter(|&e| self.bits_c2v[e] != y[v]).count();
                let need = threshold.unwrap_or(deg.saturating_sub(1)).max(1);
                for e in lo..hi {
                    let own = usize::from(self.bits_c2v[e] != y[v]);
                    let ext = disagree - own;
                    self.bits_v2c[e] = if deg > 1 && ext >= need { y[v] ^ 1 } else { y[v] };
                }
                word[v] = if 2 * disagree > deg { y[v] ^ 1 } else { y[v] };
            }
            if self.syndrome_zero(&word) {
                return Ok(DecodeResult { word, success: true, iterations_used: it });
            }
        }
        Ok(DecodeResult { word, success: false, iterations_used: self.cfg.max_iter })
    }

    /// Sum-product on channel LLRs.
    pub fn decode_soft(&mut self, llr: &[f64]) -> Result<DecodeResult, DecodeError> {
        if llr.len() != self.n {
            return Err(DecodeError::LengthMismatch { expected: self.n, got: llr.len() });
        }
        if let Some(i) = llr.iter().position(|x| !x.is_finite()) {
            return Err(DecodeError::NonFinite(i));
        }
        if self.cfg.algorithm != Algorithm::Spa {
            return Err(DecodeError::WrongInput);
        }
        let clamp = self.cfg.llr_clamp;
        let mut word: Vec<u8> = llr.iter().map(|&x| u8::from(x < 0.0)).collect();
        if self.syndrome_zero(&word) {
            return Ok(DecodeResult { word, success: true, iterations_used: 0 });
        }
        for v in 0..self.n {
            for e in self.var_start[v]..self.var_start[v + 1] {
                self.v2c[e] = llr[v];
            }
        }
        for it in 1..=self.cfg.max_iter {
            for es in &self.check_edges {
                let d = es.len();
                // tanh(m/2), then forward and backward partial products
                self.scratch.clear();
                self.scratch.extend(es.iter().map(|&e| half_tanh(self.v2c[e as usize].clamp(-clamp, clamp))));
                self.scratch.resize(2 * d, 1.0);
                let (t, bwd) = self.scratch.split_at_mut(d);
                let mut acc = 1.0;
                for k in (0..d).rev() {
                    bwd[k] = acc;
                    acc *= t[k];
                }
                acc = 1.0;
                for k in 0..d {
                    let m = twice_atanh(acc * bwd[k]);
                    acc *= t[k];
                    self.c2v[es[k] as usize] = m.clamp(-clamp, clamp);
                }
            }
            for v in 0..self.n {
                let (lo, hi) = (self.var_start[v], self.var_start[v + 1]);
                let total: f64 = llr[v] + self.c2v[lo..hi].iter().sum::<f64>();
                for e in lo..hi {
                    self.v2c[e] = total - self.c2v[e];
                }
                word[v] = u8::from(total < 0.0);
            }
            if self.syndrome_zero(&word) {
                return Ok(DecodeResult { word, success: true, iterations_used: it });
            }
        }
        Ok(DecodeResult { word, success: false, iterations_used: self.cfg.max_iter })
    }
}

/// tanh(x/2).
fn half_tanh(x: f64) -> f64 {
    let e = libm::expm1(x);
    e / (e + 2.0)
}

/// 2·atanh(y); ±∞ at y = ±1.
fn twice_atanh(y: f64) -> f64 {
    libm::log1p(2.0 * y / (1.0 - y))
}

pub fn gallager_ab_decode(h: &ParityCheck, y: &[u8], cfg: &DecoderConfig) -> Result<DecodeResult, DecodeError> {
    Decoder::new(h, *cfg)?.decode_hard(y)
}

pub fn spa_decode(h: &ParityCheck, llr: &[f64], cfg: &DecoderConfig) -> Result<DecodeResult, DecodeError> {
    Decoder::new(h, *cfg)?.decode_soft(llr)
}
