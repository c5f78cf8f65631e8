use degencheck::arith::{RationalFunction, Symbol};
use degencheck::linalg::Matrix;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec((-4i64..=4, 0i64..=1, 0i64..=1), 1..=2).prop_map(|v| {
        let t = RationalFunction::var(Symbol::T);
        let a = RationalFunction::var(Symbol::Alpha);
        v.into_iter().fold(RationalFunction::zero(), |acc, (c, et, ea)| {
            acc + RationalFunction::from_int(c) * t.pow(et).unwrap() * a.pow(ea).unwrap()
        })
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(entry(), cols), rows).prop_map(|r| Matrix::from_rows(r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
        let lhs = (&a * &b).determinant().unwrap();
        prop_assert_eq!(lhs, &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn determinant_of_transpose(a in matrix(3, 3)) {
        prop_assert_eq!(a.transpose().determinant().unwrap(), a.determinant().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(3, 3)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, Matrix::identity(3));
        prop_assert_eq!(&inv * &a, Matrix::identity(3));
    }

    #[test]
    fn rank_nullity(a in matrix(3, 4)) {
        prop_assert_eq!(a.rank() + a.nullspace_dimension(), 4);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        for v in a.nullspace() {
            let col = Matrix::from_rows(v.into_iter().map(|x| vec![x]).collect()).unwrap();
            prop_assert!((&a * &col).is_zero());
        }
    }

    #[test]
    fn solve_recovers_solution(a in matrix(3, 3), x in matrix(3, 1)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        prop_assert_eq!(a.solve(&(&a * &x)).unwrap(), x);
    }
}
