use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use springer_core::linalg::{identity, mat_mul, mat_sub};
use springer_core::matrings::matrix::inverse;
use springer_core::matrings::{make_ring, Elem, Flavor, GroupElement, Ring};
use springer_core::scalar::Arith;
use springer_core::springer::{
    apply_inverse, apply_springer, corrupt_coefficients, quadratic_extension, random_sl,
    random_unipotent, recurrence_residuals, solve_quasisplit, twisted_agrees, QuasiSplitOutcome,
    SpringerCoefficients,
};

const FIELDS: [&str; 4] = ["F(2)", "F(3)", "F(2,2)", "F(5)"];

fn coefficients(r: &Ring, n: usize, raw: &[u32]) -> SpringerCoefficients {
    let units = r.units();
    let mut a: Vec<Elem> = raw.iter().take(n).map(|x| x % r.size()).collect();
    a[0] = units[raw[0] as usize % units.len()];
    SpringerCoefficients::new(r, a).unwrap()
}

fn is_strictly_upper(r: &Ring, m: &[Vec<Elem>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().take(i + 1).all(|x| r.is_zero(x)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_undoes_springer_map(f in 0..FIELDS.len(), n in 1usize..5, raw in prop::collection::vec(any::<u32>(), 4), seed in any::<u64>()) {
        let r = make_ring(FIELDS[f]).unwrap();
        let c = coefficients(&r, n, &raw);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unipotent(&r, n + 1, &mut rng);
        let g = GroupElement::new(&r, Flavor::SL, u.clone()).unwrap();
        let x = apply_springer(&c, &g).unwrap();
        prop_assert_eq!(apply_inverse(&c, &x.matrix).unwrap(), u);
    }

    #[test]
    fn springer_map_is_conjugation_equivariant(f in 0..FIELDS.len(), n in 1usize..4, raw in prop::collection::vec(any::<u32>(), 3), seed in any::<u64>()) {
        let r = make_ring(FIELDS[f]).unwrap();
        let c = coefficients(&r, n, &raw);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unipotent(&r, n + 1, &mut rng);
        let h = random_sl(&r, n + 1, &mut rng);
        let h_inv = inverse(&r, &h).unwrap();
        let conj = |m: &Vec<Vec<Elem>>| mat_mul(&r, &mat_mul(&r, &h, m), &h_inv);
        let rho = |m: Vec<Vec<Elem>>| {
            apply_springer(&c, &GroupElement::new(&r, Flavor::SL, m).unwrap()).unwrap().matrix
        };
        prop_assert_eq!(rho(conj(&u)), conj(&rho(u)));
    }

    #[test]
    fn upper_unitriangular_maps_to_strictly_upper(f in 0..FIELDS.len(), n in 1usize..5, raw in prop::collection::vec(any::<u32>(), 14)) {
        let r = make_ring(FIELDS[f]).unwrap();
        let c = coefficients(&r, n, &raw);
        let size = n + 1;
        let mut u = identity(&r, size);
        let mut k = 4;
        for (i, row) in u.iter_mut().enumerate() {
            for x in row.iter_mut().skip(i + 1) {
                *x = raw[k % raw.len()] % r.size();
                k += 1;
            }
        }
        let x = apply_springer(&c, &GroupElement::new(&r, Flavor::SL, u.clone()).unwrap()).unwrap();
        prop_assert!(is_strictly_upper(&r, &x.matrix));
        // The linear part is a₁ times u − 1.
        let e = mat_sub(&r, &u, &identity(&r, size));
        for j in 0..n {
            prop_assert_eq!(x.matrix[j][j + 1], r.mul(&c.a[0], &e[j][j + 1]));
        }
    }
}

#[test]
fn quasisplit_solutions_satisfy_recurrence() {
    for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
        let (base, ext, sigma) = quadratic_extension(p, k).unwrap();
        for n in 1..=5 {
            let fixed: Vec<Elem> = ext
                .units()
                .into_iter()
                .filter(|&u| ext.apply_auto(&sigma, u) == u)
                .collect();
            assert_eq!(fixed.len(), base.units().len());
            for a1 in fixed {
                match solve_quasisplit(n, &base.spec(), &ext, &sigma, a1).unwrap() {
                    QuasiSplitOutcome::Solved(c) => {
                        let res = recurrence_residuals(&ext, &sigma, &c.a);
                        assert!(res.iter().all(|x| ext.is_zero(x)), "p={p} k={k} n={n}");
                    }
                    QuasiSplitOutcome::Obstructed(o) => panic!("p={p} k={k} n={n}: {o:?}"),
                }
            }
        }
    }
}

#[test]
fn trivial_involution_in_characteristic_two_is_obstructed() {
    let r = make_ring("F(2,2)").unwrap();
    let sigma = springer_core::matrings::RingAuto::Identity;
    for n in 2..=4 {
        match solve_quasisplit(n, &r.spec(), &r, &sigma, r.one()).unwrap() {
            QuasiSplitOutcome::Obstructed(o) => assert_eq!(o.index, 2),
            QuasiSplitOutcome::Solved(c) => panic!("unexpected solution {:?}", c.a),
        }
    }
}

#[test]
fn corrupted_coefficients_break_twisted_equivariance() {
    let (base, ext, sigma) = quadratic_extension(3, 1).unwrap();
    let QuasiSplitOutcome::Solved(c) = solve_quasisplit(3, &base.spec(), &ext, &sigma, ext.one()).unwrap() else {
        panic!("F9/F3 descent is solvable");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<_> = (0..100).map(|_| random_unipotent(&ext, 4, &mut rng)).collect();
    assert!(samples.iter().all(|g| twisted_agrees(&c, &sigma, g)));
    for i in 2..=3 {
        let bad = corrupt_coefficients(&c, i).unwrap();
        assert!(samples.iter().any(|g| !twisted_agrees(&bad, &sigma, g)), "a{i}");
    }
}
