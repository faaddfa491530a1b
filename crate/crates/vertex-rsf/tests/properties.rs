use num_traits::Zero;
use proptest::prelude::*;
use vertex_rsf::lattice::{decode, encode, f_lattice_rows, partition_f, rows_of};
use vertex_rsf::scalar::{rat_format, rat_parse};
use vertex_rsf::strings::{enumerate_nstrings, inversion_number};
use vertex_rsf::symmetrize::symmetrized_f;
use vertex_rsf::{CompositionVector, Model, NString, Rational, WeightTable};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=60)
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn q_value() -> impl Strategy<Value = Rational> {
    rational().prop_filter("q away from 1 and -1", |q| {
        *q != Rational::from_integer(1.into()) && *q != Rational::from_integer((-1).into())
    })
}

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![Just(Model::SixVertex), Just(Model::IzerginKorepin)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(rat_parse(&rat_format(&r)).unwrap(), r);
    }

    #[test]
    fn nstring_is_canonical(entries in prop::collection::vec(0usize..=2, 0..6), pad in 0usize..3) {
        let s = NString::new(2, entries.clone()).unwrap();
        let mut padded = entries;
        padded.extend(std::iter::repeat_n(0, pad));
        prop_assert_eq!(&NString::new(2, padded).unwrap(), &s);
        let shown = s.to_string();
        let inner = shown.trim_start_matches('(').trim_end_matches(')');
        let back = if inner.is_empty() { NString::empty(2) } else { NString::parse(2, inner).unwrap() };
        prop_assert_eq!(back, s);
    }

    #[test]
    fn encode_decode_round_trip(digits in prop::collection::vec(0usize..3, 1..6)) {
        let code = encode(&digits, 3);
        prop_assert!(code < 3usize.pow(digits.len() as u32));
        prop_assert_eq!(decode(code, digits.len(), 3), digits);
    }

    #[test]
    fn inversions_of_reverse(v in prop::collection::vec(0usize..=2, 1..5)) {
        // inv(v) + inv(reverse v) sums a(n-b) + b(n-a) over unordered pairs
        let fwd = inversion_number(&CompositionVector::new(2, v.clone()).unwrap());
        let mut rev = v.clone();
        rev.reverse();
        let bwd = inversion_number(&CompositionVector::new(2, rev).unwrap());
        let mut pairs = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                pairs += 2 * (v[i] + v[j]) - 2 * v[i] * v[j];
            }
        }
        prop_assert_eq!(fwd + bwd, pairs);
    }

    #[test]
    fn transfer_matches_enumeration(
        m in model(),
        q in q_value(),
        xs in prop::collection::vec(rational(), 2),
        zs in prop::collection::vec(rational(), 2),
        pick in any::<prop::sample::Index>(),
    ) {
        let table = WeightTable::plain(m, q);
        let n = m.n();
        let strings = enumerate_nstrings(n, 2 * n, 2).unwrap();
        let s = pick.get(&strings);
        match f_lattice_rows(rows_of(&table, &xs), &zs, s, &[n, n], 2) {
            Ok(lat) => match (lat.evaluate(), lat.brute_force()) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "disagree on singularity: {:?} {:?}", a, b),
            },
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn f_is_symmetric_in_x(
        m in model(),
        q in q_value(),
        xs in prop::collection::vec(rational(), 2),
        zs in prop::collection::vec(rational(), 3),
        pick in any::<prop::sample::Index>(),
    ) {
        let table = WeightTable::plain(m, q.clone());
        let n = m.n();
        let strings = enumerate_nstrings(n, 2 * n, 3).unwrap();
        let s = pick.get(&strings);
        let swapped = [xs[1].clone(), xs[0].clone()];
        if let (Ok(a), Ok(b)) = (
            partition_f(&table, &xs, &zs, s, None),
            partition_f(&table, &swapped, &zs, s, None),
        ) {
            prop_assert_eq!(&a, &b);
            if let Ok(sym) = symmetrized_f(m, s, &q, &xs, &zs) {
                prop_assert!((sym - a).is_zero());
            }
        }
    }
}
