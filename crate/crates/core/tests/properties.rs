use std::sync::Arc;

use cyclic_lie::coinv::{CoinvElem, Necklace};
use cyclic_lie::fields2d;
use cyclic_lie::parse;
use cyclic_lie::scalar::{FieldSpec, Scalar};
use cyclic_lie::space::SymplecticSpace;
use cyclic_lie::word::{Letter, Word};
use proptest::prelude::*;

fn space(field: FieldSpec, dim: usize) -> Arc<SymplecticSpace> {
    SymplecticSpace::standard(field, dim).unwrap().into_shared()
}

fn word(dim: usize, min: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..dim as Letter, min..=max).prop_map(Word::new)
}

fn terms(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<(i64, Word)>> {
    prop::collection::vec((-3i64..=3, word(dim, 2, max_len)), 1..=3)
}

fn elem(v: &Arc<SymplecticSpace>, t: &[(i64, Word)]) -> CoinvElem {
    let mut a = CoinvElem::zero(v.clone());
    for (c, w) in t {
        a.add_word(w, &Scalar::from_i64(v.field(), *c));
    }
    a
}

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::RATIONALS),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn least_rotation_is_the_minimum(w in word(3, 0, 9)) {
        let brute = w.rotations().min().unwrap_or_else(Word::empty);
        prop_assert_eq!(w.least_rotation(), brute.clone());
        for r in 0..w.len() as i64 {
            prop_assert_eq!(Necklace::canonicalize(&w.rotate(r)).word().clone(), brute.clone());
        }
    }

    #[test]
    fn bracket_is_antisymmetric(f in fields(), ta in terms(2, 5), tb in terms(2, 5)) {
        let v = space(f, 2);
        let (a, b) = (elem(&v, &ta), elem(&v, &tb));
        prop_assert!((&a.bracket(&b) + &b.bracket(&a)).is_zero());
        prop_assert!(a.bracket(&a).is_zero());
    }

    #[test]
    fn jacobi(f in fields(), ta in terms(4, 4), tb in terms(4, 4), tc in terms(4, 4)) {
        let v = space(f, 4);
        let (a, b, c) = (elem(&v, &ta), elem(&v, &tb), elem(&v, &tc));
        let sum = &(&a.bracket(&b.bracket(&c)) + &b.bracket(&c.bracket(&a))) + &c.bracket(&a.bracket(&b));
        prop_assert!(sum.is_zero(), "{}", sum);
    }

    #[test]
    fn derivation_rule(f in fields(), x in 0u16..2, ta in terms(2, 5), tb in terms(2, 5)) {
        let v = space(f, 2);
        let (a, b) = (elem(&v, &ta), elem(&v, &tb));
        let lhs = a.bracket(&b).derivation(x);
        let rhs = &a.derivation(x).bracket(&b) + &a.bracket(&b.derivation(x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn iota_is_a_homomorphism(f in fields(), ta in terms(2, 5), tb in terms(2, 5)) {
        let v = space(f, 2);
        let (a, b) = (elem(&v, &ta), elem(&v, &tb));
        prop_assert_eq!(a.bracket(&b).iota(), a.iota().bracket(&b.iota()));
        prop_assert_eq!(a.iota().iota(), a);
    }

    #[test]
    fn trace_ignores_the_representative(w in word(2, 1, 7), r in 0i64..7) {
        let v = space(FieldSpec::RATIONALS, 2);
        prop_assert_eq!(CoinvElem::trace_word(&v, &w.rotate(r)), CoinvElem::trace_word(&v, &w));
    }

    #[test]
    fn pq_reassembles_the_trace(f in fields(), ta in terms(2, 6)) {
        let v = space(f, 2);
        let a = elem(&v, &ta);
        let pq = fields2d::pq_decompose(&a).unwrap();
        prop_assert_eq!(fields2d::pq_reassemble(&pq), a.trace());
    }

    #[test]
    fn display_parses_back(f in fields(), ta in terms(2, 6)) {
        let v = space(f, 2);
        let a = elem(&v, &ta);
        prop_assert_eq!(parse::parse_element(&a.to_string(), &v).unwrap(), a);
    }

    #[test]
    fn index_syntax_parses_back(ta in terms(4, 5)) {
        let v = space(FieldSpec::RATIONALS, 4);
        let a = elem(&v, &ta);
        prop_assert_eq!(parse::parse_element(&a.to_string(), &v).unwrap(), a);
    }
}
