//! Hand-checkable values of the partition functions.

use vertex_rsf::lattice::{frozen_dw, partition_f, partition_h, zn_limit};
use vertex_rsf::scalar::rat_parse;
use vertex_rsf::strings::enumerate_two_perm;
use vertex_rsf::symmetrize::symmetrized_f;
use vertex_rsf::twisted::twisted_partition_f;
use vertex_rsf::{Model, NString, Rational, WeightTable};

fn r(s: &str) -> Rational {
    rat_parse(s).unwrap()
}

#[test]
fn single_row_ik() {
    let table = WeightTable::plain(Model::IzerginKorepin, r("1/2"));
    let s = NString::parse(2, "2").unwrap();
    let f = partition_f(&table, &[r("2")], &[r("1")], &s, None).unwrap();
    assert_eq!(f, r("17/35"));
    assert_eq!(
        twisted_partition_f(&s, &r("1/2"), &[r("2")], &[r("1")]).unwrap(),
        f
    );
    let sym = symmetrized_f(Model::IzerginKorepin, &s, &r("1/2"), &[r("2")], &[r("1")]).unwrap();
    assert_eq!(sym, f);
}

#[test]
fn infinite_domain_wall() {
    assert_eq!(zn_limit(&r("1/2"), 3).unwrap(), r("-21"));
    assert_eq!(
        frozen_dw(Model::IzerginKorepin, &r("1/2"), 0).unwrap(),
        r("1")
    );
}

#[test]
fn h_special_cases() {
    let table = WeightTable::plain(Model::IzerginKorepin, r("3/7"));
    let xs = [r("2"), r("-5/3")];
    let zs = [r("1/2"), r("4"), r("-1")];
    let empty = NString::empty(2);
    assert_eq!(partition_h(&table, &xs, &zs, &empty).unwrap(), r("1"));
    let full = NString::parse(2, "1,2,1").unwrap();
    assert_eq!(
        partition_h(&table, &xs, &zs, &full).unwrap(),
        partition_f(&table, &xs, &zs, &full, None).unwrap()
    );
}

#[test]
fn two_permutation_count() {
    let s = NString::parse(2, "1,0,2,1").unwrap();
    assert_eq!(enumerate_two_perm(2, 2, &s, None).unwrap().len(), 4);
}
