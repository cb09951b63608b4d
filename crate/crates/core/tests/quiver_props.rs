use proptest::prelude::*;
use wallcross_core::arith::{is_integer, Rational};
use wallcross_core::lattice::determinant;
use wallcross_core::quiver::kronecker::{kronecker_dt, Direction};
use wallcross_core::quiver::Quiver;

/// Quivers without 2-cycles on up to four vertices.
fn cluster_quiver() -> impl Strategy<Value = Quiver> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-2i64..=2, n * n).prop_map(move |x| {
            let mut a = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let s = x[i * n + j];
                    if s > 0 {
                        a[i][j] = s;
                    } else {
                        a[j][i] = -s;
                    }
                }
            }
            Quiver::new(a).unwrap()
        })
    })
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn det(m: &[Vec<i64>]) -> Rational {
    determinant(m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutation_is_an_involution(q in cluster_quiver(), k in 0usize..4) {
        let k = k % q.len();
        prop_assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q);
    }

    /// The new basis is unimodular, the old form restricted to it is the
    /// mutated quiver's form, and mutating twice is a unimodular change of basis.
    #[test]
    fn class_mutation_matches_the_form(q in cluster_quiver(), k in 0usize..4) {
        let k = k % q.len();
        let n = q.len();
        let lat = q.lattice();
        let v = q.mutate_classes(&identity(n), k).unwrap();
        let d = det(&v);
        prop_assert!(d == Rational::from_integer(1.into()) || d == Rational::from_integer((-1).into()));
        let mutated = q.mutate(k).unwrap().lattice();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(lat.pair(&v[i], &v[j]), mutated.form()[i][j]);
            }
        }
        let twice = q.mutate(k).unwrap().mutate_classes(&v, k).unwrap();
        let d2 = det(&twice);
        prop_assert!(d2 == Rational::from_integer(1.into()) || d2 == Rational::from_integer((-1).into()));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(lat.pair(&twice[i], &twice[j]), q.lattice().form()[i][j]);
            }
        }
    }

    #[test]
    fn kronecker_tables_recompose(k in 1i64..=4, n in 1u32..=8) {
        let t = kronecker_dt(k, n, Direction::Increasing).unwrap();
        prop_assert!(t.recomposes);
        prop_assert!(t.omega.iter().all(|(_, c)| is_integer(c)));
    }
}
