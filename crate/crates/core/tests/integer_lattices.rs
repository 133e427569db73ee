use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use springer_core::intlinalg::{determinant, smith_normal_form, IntegerMatrix};
use springer_core::rootdata::{
    fold, parse_root_system, root_system_of, weyl_group_order, weyl_group_order_enumerated,
    DiagramAutomorphism,
};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..10, c), r)
    })
}

proptest! {
    #[test]
    fn smith_form_factorizes(m in small_matrix()) {
        let a = IntegerMatrix::from_rows(&m);
        let s = smith_normal_form(&a);
        let uav = s.u.mul(&a).mul(&s.v);
        prop_assert_eq!(&uav, &s.d);
        for (i, row) in s.d.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    prop_assert!(x.is_zero());
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.invariant_factors.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn square_determinant_is_factor_product(n in 1usize..5, seed in prop::collection::vec(-6i64..7, 16)) {
        let m: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
        let det = determinant(&m);
        let s = smith_normal_form(&IntegerMatrix::from_rows(&m));
        if det == 0 {
            prop_assert!(s.rank < n);
        } else {
            let prod: BigInt = s.invariant_factors.iter().product();
            prop_assert_eq!(prod, BigInt::from(det.abs()));
        }
    }
}

#[test]
fn smith_form_of_cartan_matrices() {
    // |P / ZΦ| is the determinant of the Cartan matrix.
    for (name, det) in [("A4", 5), ("D4", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("G2", 1)] {
        let rs = parse_root_system(name).unwrap();
        let s = smith_normal_form(&IntegerMatrix::from_rows(&rs.cartan));
        let prod: BigInt = s.invariant_factors.iter().product();
        assert_eq!(prod, BigInt::from(det), "{name}");
    }
    let d4 = parse_root_system("D4").unwrap();
    let s = smith_normal_form(&IntegerMatrix::from_rows(&d4.cartan));
    assert_eq!(s.torsion(), vec![BigInt::from(2), BigInt::from(2)]);
}

#[test]
fn weyl_orders_agree_with_enumeration() {
    for name in ["A1", "A3", "B3", "C3", "D4", "G2", "F4"] {
        let rs = parse_root_system(name).unwrap();
        assert_eq!(weyl_group_order(&rs), weyl_group_order_enumerated(&rs), "{name}");
    }
    assert_eq!(weyl_group_order(&parse_root_system("E6").unwrap()), 51840);
    assert_eq!(weyl_group_order(&parse_root_system("E8").unwrap()), 696729600);
}

#[test]
fn root_counts() {
    for (name, roots) in [("A5", 30), ("B4", 32), ("C4", 32), ("D5", 40), ("E6", 72), ("E7", 126), ("E8", 240), ("F4", 48), ("G2", 12)] {
        let rs = parse_root_system(name).unwrap();
        assert_eq!(rs.all_roots().len(), roots, "{name}");
        assert_eq!(rs.num_positive() * 2, roots, "{name}");
    }
}

#[test]
fn folding_by_identity_is_trivial() {
    for name in ["B3", "E6", "G2"] {
        let rs = parse_root_system(name).unwrap();
        let ty = rs.cartan_type.unwrap();
        let rs = root_system_of(ty);
        let f = fold(&rs, &DiagramAutomorphism::identity(&rs)).unwrap();
        assert_eq!(f.identified, Some(ty));
    }
}
