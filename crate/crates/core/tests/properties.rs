use bethe_core::arrangement::TorusPoint;
use bethe_core::exact::{rat, ExactMatrix, FieldScalar, Rational};
use bethe_core::hamiltonians::{w_action, DegreeOne, TauAction};
use bethe_core::lattice::{in_lattice, mat_mul, saturation, smith_normal_form, IntMatrix};
use bethe_core::reps::hecke::HeckeAlgebra;
use bethe_core::rootsys::RootSystem;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Elements of Q(ζ_6) and Q(ζ_4), so that mixed sums go through lifting.
fn scalar() -> impl Strategy<Value = FieldScalar> {
    prop_oneof![
        small_rational().prop_map(FieldScalar::from_rational),
        (small_rational(), small_rational()).prop_map(|(a, b)| FieldScalar::from_coeffs(6, vec![a, b])),
        (small_rational(), small_rational()).prop_map(|(a, b)| FieldScalar::from_coeffs(4, vec![a, b])),
    ]
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
}

fn det(m: &IntMatrix) -> i64 {
    ExactMatrix::from_ints(m).determinant().unwrap().as_rational().unwrap().to_integer().try_into().unwrap()
}

/// Largest r with a nonzero r×r minor, by brute force.
fn minor_rank(m: &IntMatrix) -> usize {
    let (r, c) = (m.len(), m[0].len());
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
    };
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rs| {
                subsets(c, k).iter().any(|cs| det(&rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect()) != 0)
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, FieldScalar::zero());
    }

    #[test]
    fn field_inverses(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), FieldScalar::one());
    }

    #[test]
    fn scalar_strings_round_trip(a in scalar()) {
        prop_assert_eq!(FieldScalar::parse(&a.to_string(), a.order()).unwrap(), a);
    }

    #[test]
    fn rank_matches_minors(m in int_matrix(3, 4)) {
        prop_assert_eq!(ExactMatrix::from_ints(&m).rank(), minor_rank(&m));
    }

    #[test]
    fn rref_is_idempotent_and_row_order_free(m in int_matrix(4, 4), shift in 0usize..4) {
        let a = ExactMatrix::from_ints(&m);
        let r = a.rref();
        prop_assert_eq!(r.rref(), r.clone());
        let mut rotated = m.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(ExactMatrix::from_ints(&rotated).rref(), r);
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn smith_form_factors(m in int_matrix(3, 4)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d.clone());
        prop_assert_eq!(det(&s.u).abs(), 1);
        prop_assert_eq!(det(&s.v).abs(), 1);
        let d = s.divisors();
        prop_assert!(d.iter().all(|&x| x > 0));
        prop_assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(d.len(), minor_rank(&m));
    }

    #[test]
    fn saturation_is_idempotent(m in int_matrix(2, 3)) {
        let s = saturation(&m);
        prop_assert_eq!(saturation(&s), s.clone());
        for row in &m {
            prop_assert!(in_lattice(&s, row));
        }
        // membership in the saturation is membership in the rational span
        let r = ExactMatrix::from_ints(&m).rank();
        for code in 0..125 {
            let v: Vec<i64> = (0..3).map(|i| (code / 5i64.pow(i)) % 5 - 2).collect();
            let mut ext = m.clone();
            ext.push(v.clone());
            prop_assert_eq!(in_lattice(&s, &v), ExactMatrix::from_ints(&ext).rank() == r);
        }
    }

    #[test]
    fn delta_form_agrees(c in proptest::collection::vec(small_rational(), 2), h in proptest::collection::vec(small_rational(), 2)) {
        let rs = RootSystem::build("B2").unwrap();
        let c = TorusPoint::new(c.into_iter().map(FieldScalar::from_rational).collect());
        prop_assume!(c.as_ref().is_ok_and(|c| c.is_regular(&rs)));
        let c = c.unwrap();
        let h: Vec<FieldScalar> = h.into_iter().map(FieldScalar::from_rational).collect();
        let d = DegreeOne::of(&rs);
        prop_assert_eq!(d.bethe_hamiltonian(&c, &h).unwrap(), d.bethe_hamiltonian_delta_form(&c, &h).unwrap());
    }

    #[test]
    fn weyl_action_is_a_group_action(a in 0usize..12, b in 0usize..12, v in proptest::collection::vec(small_rational(), 8)) {
        let rs = RootSystem::build("G2").unwrap();
        let wg = rs.weyl().unwrap();
        let v: Vec<FieldScalar> = v.into_iter().map(FieldScalar::from_rational).collect();
        let once = w_action(&rs, wg.compose(a, b), &v, TauAction::SELECTED).unwrap();
        let twice = w_action(&rs, a, &w_action(&rs, b, &v, TauAction::SELECTED).unwrap(), TauAction::SELECTED).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn hecke_multiplication_associates(
        w in proptest::collection::vec(0usize..8, 3),
        h in proptest::collection::vec(small_rational(), 6),
        t in small_rational(),
    ) {
        let rs = RootSystem::build("B2").unwrap();
        let alg = HeckeAlgebra::new(&rs, FieldScalar::from_rational(t)).unwrap();
        let elem = |k: usize| {
            let x = alg.x(&[FieldScalar::from_rational(h[2 * k].clone()), FieldScalar::from_rational(h[2 * k + 1].clone())]);
            alg.mul(&alg.group(w[k]), &x).unwrap()
        };
        let (a, b, c) = (elem(0), elem(1), elem(2));
        let left = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
        let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
        prop_assert!(left.sub(&right).is_zero());
    }
}
