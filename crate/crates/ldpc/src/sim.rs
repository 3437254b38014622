//! Monte Carlo FER/BER estimation.
//!
//! Frame `f` of point `k` draws its noise from ChaCha8 seeded with the point
//! seed and switched to stream `f`. Frames are decoded in parallel batches
//! and tallied in frame order, so the stopping frame and every count are
//! independent of the worker count.

use std::time::{Duration, Instant};

use ldpc_core::codebuilder::ParityCheck;
use ldpc_core::decode::{Algorithm, DecodeError, Decoder, DecoderConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{ChannelError, ChannelPoint, Received, transmit};
use crate::seeds;

/// Two-sided 95 % standard normal quantile.
pub const Z95: f64 = 1.959963984540054;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    /// Zero disables the error-count stop.
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule { min_frame_errors: 100, max_frames: 10_000_000 }
    }
}

impl StopRule {
    pub fn desk() -> Self {
        StopRule { min_frame_errors: 30, max_frames: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub point: ChannelPoint,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub bits_per_frame: usize,
    pub seed: u64,
    pub wall_time: Duration,
}

impl PointResult {
    /// `None` when no frame was sent.
    pub fn fer(&self) -> Option<f64> {
        (self.frames > 0).then(|| self.frame_errors as f64 / self.frames as f64)
    }

    pub fn ber(&self) -> Option<f64> {
        let bits = self.frames * self.bits_per_frame as u64;
        (bits > 0).then(|| self.bit_errors as f64 / bits as f64)
    }

    /// 95 % Wilson interval for the FER.
    pub fn fer_ci(&self) -> Option<(f64, f64)> {
        wilson(self.frame_errors, self.frames, Z95)
    }
}

pub fn wilson(successes: u64, trials: u64, z: f64) -> Option<(f64, f64)> {
    if trials == 0 {
        return None;
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Some(((centre - half).max(0.0), (centre + half).min(1.0)))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("point {index}: {source}")]
    Channel { index: usize, source: ChannelError },
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("codeword source returned a word of length {0}")]
    WordLength(usize),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub batch: usize,
    /// Wall-clock limit checked between batches. A run cut short by it is
    /// no longer reproducible.
    pub deadline: Option<Instant>,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { workers: None, batch: 256, deadline: None }
    }
}

fn point_seed(seed: u64, index: usize) -> u64 {
    seeds::derive(seed, &format!("point/{index}"))
}

fn frame_rng(point_seed: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(point_seed);
    rng.set_stream(frame);
    rng
}

fn decode_frame(dec: &mut Decoder, point: &ChannelPoint, word: &[u8], rng: &mut ChaCha8Rng) -> Result<u64, DecodeError> {
    let rx = transmit(word, point, rng);
    let out = match (dec.config().algorithm, rx) {
        (Algorithm::Spa, Received::Soft(llr)) => dec.decode_soft(&llr)?,
        (Algorithm::Spa, rx) => dec.decode_soft(&rx.llr(point, dec.config().llr_clamp))?,
        (_, Received::Hard(bits)) => dec.decode_hard(&bits)?,
        (_, rx) => dec.decode_hard(&rx.hard())?,
    };
    Ok(out.word.iter().zip(word).filter(|(a, b)| a != b).count() as u64)
}

/// All-zero-codeword simulation of every point.
pub fn run_montecarlo(
    h: &ParityCheck,
    cfg: &DecoderConfig,
    points: &[ChannelPoint],
    stop: StopRule,
    seed: u64,
    opts: SimOptions,
) -> Result<Vec<PointResult>, SimError> {
    let zero = vec![0u8; h.cols()];
    run_montecarlo_words(h, cfg, points, stop, seed, opts, |_| zero.clone())
}

/// As [`run_montecarlo`] with frame words drawn by `words`, which must
/// return codewords. It receives a generator independent of the noise.
pub fn run_montecarlo_words<F>(
    h: &ParityCheck,
    cfg: &DecoderConfig,
    points: &[ChannelPoint],
    stop: StopRule,
    seed: u64,
    opts: SimOptions,
    words: F,
) -> Result<Vec<PointResult>, SimError>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<u8> + Sync,
{
    for (index, p) in points.iter().enumerate() {
        p.validate().map_err(|source| SimError::Channel { index, source })?;
    }
    Decoder::new(h, *cfg)?;
    let body = || {
        points
            .iter()
            .enumerate()
            .map(|(k, p)| run_point(h, cfg, p, stop, point_seed(seed, k), opts.batch.max(1), opts.deadline, &words))
            .collect()
    };
    match opts.workers {
        None => body(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| SimError::Pool(e.to_string()))?
            .install(body),
    }
}

fn run_point<F>(
    h: &ParityCheck,
    cfg: &DecoderConfig,
    point: &ChannelPoint,
    stop: StopRule,
    seed: u64,
    batch: usize,
    deadline: Option<Instant>,
    words: &F,
) -> Result<PointResult, SimError>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<u8> + Sync,
{
    let start = Instant::now();
    let word_seed = seeds::derive(seed, "words");
    let mut res = PointResult {
        point: *point,
        frames: 0,
        frame_errors: 0,
        bit_errors: 0,
        bits_per_frame: h.cols(),
        seed,
        wall_time: Duration::ZERO,
    };
    'outer: while res.frames < stop.max_frames && (stop.min_frame_errors == 0 || res.frame_errors < stop.min_frame_errors) {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let first = res.frames;
        let last = (first + batch as u64).min(stop.max_frames);
        let errs: Vec<Result<u64, SimError>> = (first..last)
            .into_par_iter()
            .map_init(
                || Decoder::new(h, *cfg).expect("validated"),
                |dec, f| {
                    let word = words(&mut frame_rng(word_seed, f));
                    if word.len() != h.cols() {
                        return Err(SimError::WordLength(word.len()));
                    }
                    Ok(decode_frame(dec, point, &word, &mut frame_rng(seed, f))?)
                },
            )
            .collect();
        for e in errs {
            let e = e?;
            res.frames += 1;
            res.bit_errors += e;
            if e > 0 {
                res.frame_errors += 1;
                if res.frame_errors == stop.min_frame_errors {
                    break 'outer;
                }
            }
        }
    }
    res.wall_time = start.elapsed();
    Ok(res)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.6e}"))
}

/// Result table; wall time is left out so reruns compare byte for byte.
pub fn to_csv(results: &[PointResult]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "channel", "parameter", "rate", "frames", "frame_errors", "bit_errors", "fer", "ber", "fer_ci_low",
        "fer_ci_high", "seed",
    ])
    .unwrap();
    for r in results {
        let ci = r.fer_ci();
        w.write_record([
            r.point.kind().to_string(),
            r.point.parameter().to_string(),
            r.point.rate.to_string(),
            r.frames.to_string(),
            r.frame_errors.to_string(),
            r.bit_errors.to_string(),
            opt(r.fer()),
            opt(r.ber()),
            opt(ci.map(|c| c.0)),
            opt(ci.map(|c| c.1)),
            r.seed.to_string(),
        ])
        .unwrap();
    }
    w.into_inner().unwrap()
}

/// Whitespace-separated columns for gnuplot; undefined values print as NaN.
pub fn to_gnuplot(results: &[PointResult]) -> String {
    let mut out = String::from("# parameter fer ber fer_ci_low fer_ci_high frames frame_errors\n");
    for r in results {
        let ci = r.fer_ci();
        let f = |v: Option<f64>| v.map_or_else(|| "NaN".to_string(), |x| format!("{x:.6e}"));
        out.push_str(&format!(
            "{} {} {} {} {} {} {}\n",
            r.point.parameter(),
            f(r.fer()),
            f(r.ber()),
            f(ci.map(|c| c.0)),
            f(ci.map(|c| c.1)),
            r.frames,
            r.frame_errors
        ));
    }
    out
}
