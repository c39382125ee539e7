//! The exact suites again, over big rationals: every identity must hold with
//! zero discrepancy.

use num_bigint::BigInt;
use num_rational::Ratio;
use pointproc::dist::DiscreteDist;
use pointproc::gb;
use pointproc::verify::{distributive_laws, gb_laws, morphism_laws, Check};
use pointproc::{Bag, Point};

type Q = Ratio<BigInt>;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

fn exact(checks: Vec<Check>) {
    for c in checks {
        assert!(c.instances > 0, "{}", c.name);
        assert_eq!(c.max_discrepancy, 0.0, "{}: {:?}", c.name, c.first_failure);
    }
}

#[test]
fn gb_laws_are_exact() {
    exact(gb_laws::<Q>(11, 40).unwrap());
}

#[test]
fn distributive_laws_are_exact() {
    exact(distributive_laws::<Q>(12, 40).unwrap());
}

#[test]
fn morphism_laws_are_exact() {
    exact(morphism_laws::<Q>(13, 40).unwrap());
}

#[test]
fn two_fair_coins_in_thirds_and_halves() {
    let a = DiscreteDist::new([(Point::Nat(0), q(1, 3)), (Point::Nat(1), q(2, 3))]).unwrap();
    let b = DiscreteDist::new([(Point::Nat(0), q(1, 2)), (Point::Nat(1), q(1, 2))]).unwrap();
    let law = gb::distributive_law(&[a, b]).unwrap();
    let mixed = Bag::from_tuple([Point::Nat(0), Point::Nat(1)]);
    assert_eq!(law.weight(&mixed), q(1, 2));
    assert_eq!(law.weight(&Bag::from_tuple([Point::Nat(1); 2])), q(1, 3));
    assert_eq!(*law.defect(), q(0, 1));
}
