use proptest::prelude::*;
use springer_core::matrings::{make_ring, Elem, Ring, RingAuto};
use springer_core::scalar::Arith;

const SPECS: [&str; 6] = [
    "F(2)",
    "F(7)",
    "F(3,2)",
    "F(2,3)",
    "F(2)[e]/e^2",
    "F(3)[t]/t^3",
];

fn ring(i: usize) -> Ring {
    make_ring(SPECS[i]).unwrap()
}

fn triple(r: &Ring, seeds: (u32, u32, u32)) -> (Elem, Elem, Elem) {
    let n = r.size();
    (seeds.0 % n, seeds.1 % n, seeds.2 % n)
}

proptest! {
    #[test]
    fn commutative_ring_axioms(i in 0..SPECS.len(), s in any::<(u32, u32, u32)>()) {
        let r = ring(i);
        let (a, b, c) = triple(&r, s);
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        prop_assert_eq!(r.sub(&a, &b), r.add(&a, &r.neg(&b)));
        prop_assert_eq!(r.mul(&a, &r.one()), a);
    }

    #[test]
    fn inverses_exist_exactly_for_units(i in 0..SPECS.len(), s in any::<u32>()) {
        let r = ring(i);
        let a = s % r.size();
        match r.inv(&a) {
            Some(b) => {
                prop_assert!(r.is_unit(a));
                prop_assert_eq!(r.mul(&a, &b), r.one());
            }
            None => prop_assert!(!r.is_unit(a)),
        }
    }

    #[test]
    fn frobenius_is_a_ring_endomorphism(i in 0..SPECS.len(), s in any::<(u32, u32, u32)>(), e in 1u32..3) {
        let r = ring(i);
        let (a, b, _) = triple(&r, s);
        let f = RingAuto::Frobenius(e);
        let fa = r.apply_auto(&f, a);
        let fb = r.apply_auto(&f, b);
        prop_assert_eq!(r.apply_auto(&f, r.add(&a, &b)), r.add(&fa, &fb));
        prop_assert_eq!(r.apply_auto(&f, r.mul(&a, &b)), r.mul(&fa, &fb));
    }

    #[test]
    fn coordinates_round_trip(i in 0..SPECS.len(), s in any::<u32>()) {
        let r = ring(i);
        let a = s % r.size();
        prop_assert_eq!(r.from_coords(&r.coords(a)), a);
    }
}

#[test]
fn element_and_unit_counts() {
    for (spec, size, units) in [
        ("F(2)", 2, 1),
        ("F(3,2)", 9, 8),
        ("F(2)[e]/e^2", 4, 2),
        ("F(3)[t]/t^3", 27, 18),
        ("F(3)xF(3,2)", 27, 16),
    ] {
        let r = make_ring(spec).unwrap();
        assert_eq!(r.elements().count() as u32, size, "{spec}");
        assert_eq!(r.units().len(), units, "{spec}");
        assert_eq!(r.unit_group_order(), units as u64, "{spec}");
    }
}

#[test]
fn frobenius_on_quadratic_extension_is_an_involution() {
    let r = make_ring("F(5,2)").unwrap();
    let f = RingAuto::Frobenius(1);
    let fixed = r.elements().filter(|&a| r.apply_auto(&f, a) == a).count();
    assert_eq!(fixed, 5);
    assert!(r.elements().all(|a| r.apply_auto(&f, r.apply_auto(&f, a)) == a));
}
