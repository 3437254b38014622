use ldpc_core::codebuilder::{ParityCheck, WMatrix};
use ldpc_core::decode::DecoderConfig;
use ldpc_core::galois::GaloisField;
use ldpc_tools::channel::{transmit, ChannelPoint, Received};
use ldpc_tools::sim::{run_montecarlo, run_montecarlo_words, to_csv, wilson, SimOptions, StopRule, Z95};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn code(p: u32, rho: usize) -> ParityCheck {
    let f = GaloisField::new(p, 1, None).unwrap();
    WMatrix::base(&f).leading(3, rho).unwrap().expand(&f).unwrap()
}

/// Basis of the null space over GF(2) by dense elimination.
fn null_space(h: &ParityCheck) -> Vec<Vec<u8>> {
    let n = h.cols();
    let mut rows: Vec<Vec<u8>> = (0..h.rows()).map(|r| (0..n).map(|c| u8::from(h.get(r, c))).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        let pr = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                row.iter_mut().zip(&pr).for_each(|(x, y)| *x ^= y);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[k][f];
            }
            v
        })
        .collect()
}

#[test]
fn bsc_flip_rate_within_three_sigma() {
    let n = 1_000_000usize;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let Received::Hard(y) = transmit(&vec![0u8; n], &ChannelPoint::bsc(0.01), &mut rng) else { panic!() };
    let flips = y.iter().filter(|&&b| b == 1).count() as f64;
    let sd = (n as f64 * 0.01 * 0.99).sqrt();
    assert!((flips - 0.01 * n as f64).abs() < 3.0 * sd, "{flips}");
}

#[test]
fn awgn_llr_moments() {
    let p = ChannelPoint::awgn(2.0, 0.5);
    let s2 = p.sigma2().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let Received::Soft(l) = transmit(&vec![0u8; 200_000], &p, &mut rng) else { panic!() };
    let mean = l.iter().sum::<f64>() / l.len() as f64;
    let var = l.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / l.len() as f64;
    // LLR ~ N(2/σ², 4/σ²)
    assert!((mean - 2.0 / s2).abs() < 0.02 * 2.0 / s2);
    assert!((var - 4.0 / s2).abs() < 0.03 * 4.0 / s2);
}

#[test]
fn worker_count_does_not_change_results() {
    let h = code(13, 6);
    let pts = [ChannelPoint::awgn(1.5, 0.5), ChannelPoint::awgn(2.5, 0.5), ChannelPoint::awgn(3.5, 0.5)];
    let stop = StopRule { min_frame_errors: 20, max_frames: 4000 };
    let run = |w| to_csv(&run_montecarlo(&h, &DecoderConfig::spa(), &pts, stop, 42, SimOptions { workers: Some(w), batch: 64, deadline: None }).unwrap());
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(4));
}

#[test]
fn gallager_on_bsc_and_zero_crossover() {
    let h = code(13, 6);
    let stop = StopRule { min_frame_errors: 10, max_frames: 2000 };
    let r = run_montecarlo(&h, &DecoderConfig::gallager_b(), &[ChannelPoint::bsc(0.0), ChannelPoint::bsc(0.05)], stop, 1, SimOptions::default())
        .unwrap();
    assert_eq!((r[0].frames, r[0].frame_errors), (2000, 0));
    assert_eq!(r[0].fer(), Some(0.0));
    assert!(r[1].frame_errors > 0 && r[1].frame_errors <= r[1].frames);
}

#[test]
fn fer_does_not_rise_with_snr() {
    let h = code(17, 8);
    let pts: Vec<ChannelPoint> = [1.0, 2.0, 3.0].iter().map(|&e| ChannelPoint::awgn(e, 5.0 / 8.0)).collect();
    let stop = StopRule { min_frame_errors: 40, max_frames: 20_000 };
    let r = run_montecarlo(&h, &DecoderConfig::spa(), &pts, stop, 8, SimOptions::default()).unwrap();
    for w in r.windows(2) {
        let (lo_prev, _) = w[0].fer_ci().unwrap();
        let (_, hi_next) = w[1].fer_ci().unwrap();
        // later point is below, or the intervals overlap
        assert!(w[1].fer().unwrap() <= w[0].fer().unwrap() || hi_next >= lo_prev);
    }
}

#[test]
fn wilson_interval_shrinks() {
    let widths: Vec<f64> = [100u64, 1000, 10_000].iter().map(|&n| {
        let (lo, hi) = wilson(n / 10, n, Z95).unwrap();
        hi - lo
    }).collect();
    assert!(widths[0] > widths[1] && widths[1] > widths[2]);
}

#[test]
fn all_zero_matches_random_codewords() {
    let h = code(13, 6);
    let basis = null_space(&h);
    assert!(basis.iter().all(|c| h.is_codeword(c)));
    let random_word = |rng: &mut ChaCha8Rng| {
        let mut w = vec![0u8; h.cols()];
        for b in &basis {
            if rng.random_bool(0.5) {
                w.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        w
    };
    let pts = [ChannelPoint::awgn(2.0, 0.5), ChannelPoint::awgn(3.0, 0.5)];
    let stop = StopRule { min_frame_errors: 0, max_frames: 6000 };
    let cfg = DecoderConfig::spa();
    let zero = run_montecarlo(&h, &cfg, &pts, stop, 5, SimOptions::default()).unwrap();
    let rand = run_montecarlo_words(&h, &cfg, &pts, stop, 5, SimOptions::default(), random_word).unwrap();
    for (a, b) in zero.iter().zip(&rand) {
        let (alo, ahi) = a.fer_ci().unwrap();
        let (blo, bhi) = b.fer_ci().unwrap();
        assert!(alo <= bhi && blo <= ahi, "{:?} vs {:?}", a.fer(), b.fer());
    }
}
