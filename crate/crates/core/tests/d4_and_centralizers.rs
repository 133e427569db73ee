use springer_core::d4cheval::descent::{self, DescentData};
use springer_core::d4cheval::{LieU, Triality};
use springer_core::matrings::centralizer::{
    centralizer_points, centralizer_points_brute, find_noncommuting_pair, DEFAULT_BUDGET,
};
use springer_core::matrings::{make_ring, parse_matrix, Flavor, GroupElement};
use springer_core::primes::{pi1_order, Isogeny, RootDatum};
use springer_core::rootdata::parse_root_system;
use springer_core::scalar::{Arith, Std};
use springer_core::{F5, F7, Q};

#[test]
fn d4_lie_algebra_over_several_fields() {
    fn check<A: Arith>(ctx: &A) {
        let u = LieU::new(ctx).unwrap();
        assert!(u.jacobi_holds());
        let (dim, matches) = u.fixed_space_matches().unwrap();
        assert_eq!(dim, 4);
        assert!(matches);
        assert!(u.triality_action_matches(Triality::Lambda).unwrap());
        assert!(u.triality_action_matches(Triality::Mu).unwrap());
    }
    check(&Std::<Q>::new());
    check(&Std::<F5>::new());
    check(&Std::<F7>::new());
}

#[test]
fn d4_descent_solutions_verify() {
    for data in [
        DescentData::cyclic2(3).unwrap(),
        DescentData::cyclic3(3).unwrap(),
        DescentData::s3(3).unwrap(),
        DescentData::cyclic2(5).unwrap(),
    ] {
        let case = descent::solve_default(&data).unwrap();
        assert!(case.passed(), "{:?}", case.kind);
    }
}

#[test]
fn fast_and_brute_centralizers_agree() {
    for (flavor, spec, m) in [
        (Flavor::SL, "F(3)", "1,1;0,1"),
        (Flavor::SL, "F(2)[e]/e^2", "1,1;0,1"),
        (Flavor::PGL, "F(2)[e]/e^2", "1,1;0,1"),
        (Flavor::GL, "F(2)", "1,1,0;0,1,1;0,0,1"),
        (Flavor::PGL, "F(3)", "1,1,0;0,1,1;0,0,1"),
    ] {
        let r = make_ring(spec).unwrap();
        let g = GroupElement::new(&r, flavor, parse_matrix(&r, m).unwrap()).unwrap();
        let mut fast = centralizer_points(&r, &g, DEFAULT_BUDGET).unwrap();
        let mut brute = centralizer_points_brute(&r, &g, DEFAULT_BUDGET).unwrap();
        fast.sort_by(|a, b| a.matrix.cmp(&b.matrix));
        brute.sort_by(|a, b| a.matrix.cmp(&b.matrix));
        assert_eq!(fast, brute, "{flavor:?} {spec}");
    }
}

#[test]
fn pgl3_dual_centralizer_is_noncommutative() {
    let r = make_ring("F(3)[e]/e^2").unwrap();
    let g = GroupElement::new(&r, Flavor::PGL, parse_matrix(&r, "1,1,0;0,1,1;0,0,1").unwrap()).unwrap();
    let z = centralizer_points(&r, &g, DEFAULT_BUDGET).unwrap();
    assert!(find_noncommuting_pair(&r, &z).is_some());
}

#[test]
fn fundamental_group_orders() {
    for (name, iso, order) in [("A3", "sc", 1), ("A3", "adj", 4), ("E6", "adj", 3), ("D4", "adj", 4), ("G2", "adj", 1)] {
        let rd = RootDatum::new(parse_root_system(name).unwrap(), iso.parse::<Isogeny>().unwrap()).unwrap();
        assert_eq!(pi1_order(&rd), num_bigint::BigInt::from(order), "{name} {iso}");
    }
}
