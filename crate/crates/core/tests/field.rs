use ldpc_core::galois::{Elem, GaloisField, LogAlpha};
use ldpc_core::permfield::{box_dot, box_plus, f_map, m_t, preimage, shift_p, PermMatrix};
use proptest::prelude::*;

const ORDERS: [(u32, u32); 8] = [(2, 1), (2, 2), (2, 3), (3, 2), (13, 1), (2, 4), (5, 2), (3, 3)];

fn field(k: usize) -> GaloisField {
    let (p, m) = ORDERS[k % ORDERS.len()];
    GaloisField::new(p, m, None).unwrap()
}

/// Schoolbook product of coefficient vectors reduced by the monic modulus.
fn poly_mul(f: &GaloisField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = f.characteristic();
    let m = f.degree() as usize;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let modulus = f.modulus();
    for d in (m..2 * m).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (k, &mk) in modulus.iter().enumerate().take(m) {
            let idx = d - m + k;
            prod[idx] = (prod[idx] + p - (c * mk) % p) % p;
        }
        prod[d] = 0;
    }
    prod.truncate(m);
    prod
}

fn elem(f: &GaloisField, raw: u32) -> Elem {
    Elem(raw % f.order())
}

proptest! {
    #[test]
    fn ring_axioms(k in 0usize..8, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let f = field(k);
        let (a, b, c) = (elem(&f, x), elem(&f, y), elem(&f, z));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, Elem::ONE), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.div(f.mul(a, b), a), Some(b));
        } else {
            prop_assert_eq!(f.inv(a), None);
        }
    }

    #[test]
    fn multiplication_matches_polynomial_oracle(k in 0usize..8, x in any::<u32>(), y in any::<u32>()) {
        let f = field(k);
        let (a, b) = (elem(&f, x), elem(&f, y));
        let expected = poly_mul(&f, &f.coeffs(a), &f.coeffs(b));
        prop_assert_eq!(f.coeffs(f.mul(a, b)), expected);
    }

    #[test]
    fn logs_and_positions_round_trip(k in 0usize..8, x in any::<u32>()) {
        let f = field(k);
        let a = elem(&f, x);
        prop_assert_eq!(f.from_log(f.log_alpha(a)), a);
        prop_assert_eq!(f.at_position(f.position(a)), a);
        match f.log_alpha(a) {
            LogAlpha::NegInfinity => prop_assert_eq!(f.position(a), 0),
            LogAlpha::Exp(t) => prop_assert_eq!(f.position(a), t + 1),
        }
    }

    #[test]
    fn f_is_a_field_isomorphism(k in 0usize..6, x in any::<u32>(), y in any::<u32>()) {
        let f = field(k);
        let (a, b) = (elem(&f, x), elem(&f, y));
        let (fa, fb) = (f_map(&f, a), f_map(&f, b));
        prop_assert_eq!(box_plus(&fa, &fb).unwrap(), f_map(&f, f.add(a, b)));
        prop_assert_eq!(box_dot(&f, &fa, &fb).unwrap(), f_map(&f, f.mul(a, b)));
        prop_assert_eq!(preimage(&f, &fa).unwrap(), a);
    }

    #[test]
    fn shift_rule(k in 0usize..6, t in -40i64..40) {
        let f = field(k);
        let q = f.order() as usize;
        // M_{t+1} = P M_t Q with Q = P^T restricted to the nonzero positions
        let p = shift_p(q);
        let next = p.mul(&m_t(&f, t)).unwrap().mul(&p.transpose()).unwrap();
        prop_assert_eq!(next, m_t(&f, t + 1));
    }
}

#[test]
fn primitive_element_has_full_order() {
    for k in 0..ORDERS.len() {
        let f = field(k);
        let alpha = f.primitive();
        let mut x = alpha;
        let mut order = 1;
        while x != Elem::ONE {
            x = f.mul(x, alpha);
            order += 1;
        }
        assert_eq!(order, f.order() - 1, "GF({})", f.order());
    }
}

#[test]
fn images_are_permutations() {
    let f = field(3);
    for a in f.elements() {
        let m = f_map(&f, a);
        assert_eq!(PermMatrix::from_row_to_col(m.row_to_col().to_vec()), Some(m));
    }
}
