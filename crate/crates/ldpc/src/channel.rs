//! BSC and BPSK/AWGN channels.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    /// Crossover probability.
    Bsc { alpha: f64 },
    /// Eb/N0 in dB; BPSK maps 0 to +1 and 1 to −1.
    Awgn { ebn0_db: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPoint {
    pub channel: Channel,
    /// Code rate, used to scale the AWGN noise.
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("crossover probability {0} outside [0, 0.5)")]
    Crossover(f64),
    #[error("Eb/N0 {0} dB is not finite")]
    Snr(f64),
    #[error("code rate {0} outside (0, 1)")]
    Rate(f64),
}

/// Received frame: bits for the BSC, LLRs for the AWGN channel.
#[derive(Debug, Clone, PartialEq)]
pub enum Received {
    Hard(Vec<u8>),
    Soft(Vec<f64>),
}

impl ChannelPoint {
    pub fn bsc(alpha: f64) -> Self {
        ChannelPoint { channel: Channel::Bsc { alpha }, rate: 0.5 }
    }

    pub fn awgn(ebn0_db: f64, rate: f64) -> Self {
        ChannelPoint { channel: Channel::Awgn { ebn0_db }, rate }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        match self.channel {
            Channel::Bsc { alpha } if !(0.0..0.5).contains(&alpha) => Err(ChannelError::Crossover(alpha)),
            Channel::Awgn { ebn0_db } if !ebn0_db.is_finite() => Err(ChannelError::Snr(ebn0_db)),
            Channel::Awgn { .. } if !(self.rate > 0.0 && self.rate < 1.0) => Err(ChannelError::Rate(self.rate)),
            _ => Ok(()),
        }
    }

    /// Noise variance 1 / (2 R Eb/N0).
    pub fn sigma2(&self) -> Option<f64> {
        match self.channel {
            Channel::Awgn { ebn0_db } => Some(1.0 / (2.0 * self.rate * 10f64.powf(ebn0_db / 10.0))),
            Channel::Bsc { .. } => None,
        }
    }

    /// Channel parameter as printed in result tables.
    pub fn parameter(&self) -> f64 {
        match self.channel {
            Channel::Bsc { alpha } => alpha,
            Channel::Awgn { ebn0_db } => ebn0_db,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.channel {
            Channel::Bsc { .. } => "bsc",
            Channel::Awgn { .. } => "awgn",
        }
    }
}

/// Sends `word` through the channel. The point must be valid.
pub fn transmit<R: Rng + ?Sized>(word: &[u8], point: &ChannelPoint, rng: &mut R) -> Received {
    match point.channel {
        Channel::Bsc { alpha } => Received::Hard(word.iter().map(|&b| b ^ u8::from(rng.random_bool(alpha))).collect()),
        Channel::Awgn { .. } => {
            let s2 = point.sigma2().unwrap();
            let sigma = s2.sqrt();
            Received::Soft(
                word.iter()
                    .map(|&b| {
                        let x = if b == 0 { 1.0 } else { -1.0 };
                        let n: f64 = StandardNormal.sample(rng);
                        2.0 * (x + sigma * n) / s2
                    })
                    .collect(),
            )
        }
    }
}

impl Received {
    /// Hard decisions; a zero LLR decides 0.
    pub fn hard(&self) -> Vec<u8> {
        match self {
            Received::Hard(b) => b.clone(),
            Received::Soft(l) => l.iter().map(|&x| u8::from(x < 0.0)).collect(),
        }
    }

    /// LLRs; BSC bits map to ±ln((1−α)/α), capped at `clamp`.
    pub fn llr(&self, point: &ChannelPoint, clamp: f64) -> Vec<f64> {
        match self {
            Received::Soft(l) => l.clone(),
            Received::Hard(b) => {
                let Channel::Bsc { alpha } = point.channel else { unreachable!() };
                let m = if alpha > 0.0 { ((1.0 - alpha) / alpha).ln().min(clamp) } else { clamp };
                b.iter().map(|&x| if x == 0 { m } else { -m }).collect()
            }
        }
    }
}
