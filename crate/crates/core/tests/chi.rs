mod common;

use std::collections::BTreeSet;
use std::ops::Bound;

use kaleido_core::chi::{
    classify, conway_name, enumerate_by_chi, enumerate_euclidean, enumerate_spherical, euler_characteristic,
    weighted_euler, GeometryClass, GroupOrder, WeightedMapCensus, EUCLIDEAN_SIGNATURES,
};
use kaleido_core::notation::OrbifoldSignature;
use kaleido_core::rational::Rational;
use num_rational::Ratio;

fn sig(s: &str) -> OrbifoldSignature {
    OrbifoldSignature::parse(s).unwrap()
}

fn strings(sigs: &[OrbifoldSignature]) -> BTreeSet<String> {
    sigs.iter().map(ToString::to_string).collect()
}

#[test]
fn euclidean_enumeration_matches_the_table() {
    let found = strings(&enumerate_euclidean());
    let expected: BTreeSet<String> = EUCLIDEAN_SIGNATURES.iter().map(|s| s.to_string()).collect();
    assert_eq!(found, expected);
    for s in enumerate_euclidean() {
        assert_eq!(euler_characteristic(&s), Rational::ZERO);
        assert_eq!(classify(&s), GeometryClass::Euclidean);
    }
}

#[test]
fn spherical_enumeration_matches_oracle() {
    for max_order in 2..=7u32 {
        let found = strings(&enumerate_spherical(max_order).unwrap());
        assert_eq!(found, common::spherical_oracle(max_order as i64), "max_order {max_order}");
    }
    assert_eq!(enumerate_spherical(5).unwrap().len(), 38);
}

#[test]
fn spherical_orders_divide_evenly() {
    for s in enumerate_spherical(6).unwrap() {
        let chi = euler_characteristic(&s);
        match classify(&s) {
            GeometryClass::Spherical(GroupOrder::Finite(k)) => {
                assert_eq!(Rational::from_integer(k as i64) * chi, Rational::TWO, "{s}");
            }
            other => panic!("{s}: {other:?}"),
        }
    }
}

#[test]
fn hyperbolic_window_matches_oracle() {
    let lo = Ratio::new(-1, 6);
    let found = enumerate_by_chi(Bound::Included(Rational::new(-1, 6)), Bound::Excluded(Rational::ZERO), 7).unwrap();
    let expected = common::priced_oracle(7, Ratio::new(13, 6), |price| {
        let chi = Ratio::from_integer(2) - price;
        chi >= lo && chi < Ratio::from_integer(0)
    });
    assert_eq!(strings(&found), expected);
    assert!(found.iter().all(|s| classify(s) == GeometryClass::Hyperbolic));
}

#[test]
fn spot_values() {
    assert_eq!(euler_characteristic(&sig("*532")), Rational::new(1, 60));
    assert_eq!(classify(&sig("*532")).order(), Some(120));
    assert_eq!(euler_characteristic(&sig("*732")), Rational::new(-1, 84));
    assert_eq!(classify(&sig("*237")), GeometryClass::Hyperbolic);
    assert_eq!(classify(&sig("*22")).order(), Some(4));
    assert_eq!(classify(&sig("55")).order(), Some(5));
    for bad in ["5", "43", "*5", "*43"] {
        assert_eq!(classify(&sig(bad)), GeometryClass::Bad, "{bad}");
    }
}

#[test]
fn billiard_census() {
    let quarter = Rational::new(1, 4);
    let half = Rational::new(1, 2);
    let table = WeightedMapCensus::new(vec![(4, quarter)], vec![(4, half)], vec![(1, Rational::ONE)]).unwrap();
    assert_eq!(weighted_euler(&table), Rational::ZERO);
    let cube = WeightedMapCensus::unweighted(8, 12, 6);
    assert_eq!(weighted_euler(&cube), Rational::TWO);
}

#[test]
fn all_seventeen_are_named() {
    let table = [
        ("*632", "hexascopic"),
        ("*442", "tetrascopic"),
        ("*333", "triscopic"),
        ("*2222", "discopic"),
        ("**", "monoscopic"),
        ("632", "hexatropic"),
        ("442", "tetratropic"),
        ("333", "tritropic"),
        ("2222", "ditropic"),
        ("o", "monotropic"),
        ("4*2", "tetragyro"),
        ("3*3", "trigyro"),
        ("22*", "digyro"),
        ("22x", "diglide"),
        ("xx", "monoglide"),
        ("2*22", "dirhombic"),
        ("*x", "monorhombic"),
    ];
    for (s, name) in table {
        assert_eq!(conway_name(&sig(s)).unwrap().full, name);
    }
    assert!(conway_name(&sig("*532")).is_none());
}
