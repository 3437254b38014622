use ldpc_core::codebuilder::{ParityCheck, WMatrix};
use ldpc_core::galois::{Elem, GaloisField};
use ldpc_core::graph::{girth, TannerGraph};
use proptest::prelude::*;

fn dense(h: &ParityCheck) -> Vec<Vec<u8>> {
    (0..h.rows()).map(|r| (0..h.cols()).map(|c| u8::from(h.get(r, c))).collect()).collect()
}

/// Two rows sharing two columns.
fn dense_has_four_cycle(m: &[Vec<u8>]) -> bool {
    for r1 in 0..m.len() {
        for r2 in r1 + 1..m.len() {
            let shared = (0..m[r1].len()).filter(|&c| m[r1][c] == 1 && m[r2][c] == 1).count();
            if shared >= 2 {
                return true;
            }
        }
    }
    false
}

fn dense_rank(mut m: Vec<Vec<u8>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_w(f: &GaloisField, rows: usize, entries: &[u32]) -> WMatrix {
    let q = f.order();
    let data: Vec<Vec<Elem>> = entries.chunks(entries.len() / rows).map(|r| r.iter().map(|&x| Elem(x % q)).collect()).collect();
    WMatrix::from_rows(f, &data).unwrap()
}

/// Circulant expansion: α^t becomes the (q−1)×(q−1) identity shifted by t.
fn circulant(f: &GaloisField, w: &WMatrix) -> Vec<Vec<u8>> {
    let s = (f.order() - 1) as usize;
    let mut m = vec![vec![0u8; w.cols() * s]; w.rows() * s];
    for i in 0..w.rows() {
        for j in 0..w.cols() {
            let t = f.log_alpha(w.get(i, j).unwrap()).exponent().unwrap() as usize;
            for r in 0..s {
                m[i * s + r][j * s + (r + t) % s] = 1;
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cross_addition_iff_no_four_cycle(entries in prop::collection::vec(0u32..13, 24)) {
        let f = GaloisField::new(13, 1, None).unwrap();
        let w = random_w(&f, 3, &entries);
        let h = w.expand(&f).unwrap();
        prop_assert_eq!(w.cross_addition_ok(&f), !dense_has_four_cycle(&dense(&h)));
        prop_assert_eq!(w.cross_addition_ok(&f), girth(&TannerGraph::from_parity(&h)).at_least(6));
    }

    #[test]
    fn cross_multiplication_matches_circulant_oracle(entries in prop::collection::vec(1u32..11, 12)) {
        let f = GaloisField::new(11, 1, None).unwrap();
        let w = random_w(&f, 3, &entries);
        prop_assert_eq!(w.cross_multiplication_ok(&f), !dense_has_four_cycle(&circulant(&f, &w)));
    }

    #[test]
    fn subarrays_inherit_cross_addition(
        rows in prop::sample::subsequence((0..7usize).collect::<Vec<_>>(), 1..=7),
        cols in prop::sample::subsequence((0..7usize).collect::<Vec<_>>(), 1..=7),
    ) {
        let f = GaloisField::new(7, 1, None).unwrap();
        let base = WMatrix::base(&f);
        prop_assert!(base.cross_addition_ok(&f));
        let sub = base.subarray(&rows, &cols).unwrap();
        prop_assert!(sub.cross_addition_ok(&f));
        prop_assert_eq!(sub.expand(&f).unwrap().ones(), rows.len() * cols.len() * 7);
    }

    #[test]
    fn rank_matches_dense_elimination(entries in prop::collection::vec(0u32..8, 15)) {
        let f = GaloisField::new(2, 3, None).unwrap();
        let w = random_w(&f, 3, &entries);
        let h = w.expand(&f).unwrap();
        let r = h.gf2_rank();
        prop_assert_eq!(r, dense_rank(dense(&h)));
        prop_assert!(r <= 3 * 8 - 2);
        prop_assert_eq!(h.dimension(), h.cols() - r);
    }
}

#[test]
fn base_cross_addition_small_fields() {
    for (p, m) in [(2, 2), (5, 1), (7, 1), (2, 3)] {
        let f = GaloisField::new(p, m, None).unwrap();
        let h = WMatrix::base(&f).expand(&f).unwrap();
        assert!(WMatrix::base(&f).cross_addition_ok(&f));
        assert!(!dense_has_four_cycle(&dense(&h)));
    }
}

#[test]
fn example_dimensions() {
    let f = GaloisField::new(53, 1, None).unwrap();
    let h = WMatrix::base(&f).leading(3, 10).unwrap().expand(&f).unwrap();
    assert_eq!((h.rows(), h.cols()), (159, 530));
    // block rows each sum to the all-ones vector
    assert!(h.gf2_rank() <= 159 - 2);
}
