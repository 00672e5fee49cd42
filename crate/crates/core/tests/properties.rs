use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relchar_core::cone::Cone;
use relchar_core::linalg::{smith_normal_form, solve_diophantine, solve_diophantine_echelon};
use relchar_core::{fixtures, sample, IntMatrix, Space};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_decomposes(rows in matrix()) {
        let m = IntMatrix::from_dense(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v()).unwrap(), s.d());
        prop_assert_eq!(s.u.mul(&s.u_inv()).unwrap(), IntMatrix::identity(m.nrows()));
        prop_assert_eq!(s.v().mul(&s.v_inv).unwrap(), IntMatrix::identity(m.ncols()));
        for w in s.diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn diophantine_solvers_agree(rows in matrix(), seed in 0u64..1000) {
        let m = IntMatrix::from_dense(&rows);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::int_vec(&mut rng, m.ncols(), 3);
        let b = m.mul_vec(&x);
        let a = solve_diophantine(&m, &b).unwrap().expect("solvable by construction");
        prop_assert_eq!(m.mul_vec(&a), b.clone());
        let e = solve_diophantine_echelon(&m, &b).unwrap().expect("solvable by construction");
        prop_assert_eq!(m.mul_vec(&e), b.clone());
        let shifted: Vec<BigInt> = b.iter().map(|v| v * 2 + 1).collect();
        prop_assert_eq!(
            solve_diophantine(&m, &shifted).unwrap().is_some(),
            solve_diophantine_echelon(&m, &shifted).unwrap().is_some()
        );
    }

    #[test]
    fn cone_coboundary_squares_to_zero(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sp = Space::Cone(Cone::new(&fixtures::deg2()));
        let u = sample::rat_vec(&mut rng, sp.dim(0));
        let du = sp.chain().coboundary(0, &u);
        prop_assert!(sp.chain().coboundary(1, &du).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn evaluation_is_additive(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sp = Space::Cone(Cone::new(&fixtures::deg2()));
        let h = sample::character(&mut rng, &sp, 2).unwrap();
        let a = sample::cycle(&mut rng, &sp, 1);
        let b = sample::cycle(&mut rng, &sp, 1);
        let s: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = h.evaluate(&s).unwrap();
        let rhs = relchar_core::linalg::frac(&(h.evaluate(&a).unwrap() + h.evaluate(&b).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }
}
