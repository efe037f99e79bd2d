use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use hstrata::exact_linalg::{
    integer_kernel_basis, kernel_basis_q, kernel_dim_q, rank_q, QMatrix, ZMatrix,
};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)
    })
}

#[allow(clippy::needless_range_loop)]
fn skew(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    m[i][j] = v;
                    m[j][i] = -v;
                }
            }
            m
        })
    })
}

/// Does `v` lie in the Z-span of `basis`? Basis is in row Hermite form, so
/// coefficients are forced pivot by pivot.
fn in_lattice(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut rest = v.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).unwrap();
        if (&rest[p] % &b[p]).is_zero() {
            let c = &rest[p] / &b[p];
            for (r, x) in rest.iter_mut().zip(b) {
                *r -= &c * x;
            }
        } else {
            return false;
        }
    }
    rest.iter().all(Zero::is_zero)
}

proptest! {
    #[test]
    fn rank_nullity(rows in matrix(6, 6)) {
        let m = QMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(rank_q(&m) + kernel_dim_q(&m), m.cols());
        prop_assert_eq!(rank_q(&m), rank_q(&m.transpose()));
    }

    #[test]
    fn kernel_vectors_are_killed(rows in matrix(5, 6)) {
        let m = QMatrix::from_rows(&rows).unwrap();
        let basis = kernel_basis_q(&m);
        prop_assert_eq!(basis.len(), kernel_dim_q(&m));
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(BigRational::is_zero));
        }
    }

    #[test]
    fn skew_rank_is_even(rows in skew(9)) {
        let m = ZMatrix::from_rows(&rows).unwrap();
        prop_assert!(m.is_skew_symmetric());
        let n = m.cols();
        prop_assert_eq!(rank_q(&m.to_q()) % 2, 0);
        prop_assert_eq!(kernel_dim_q(&m.to_q()) % 2, n % 2);
    }

    #[test]
    fn integer_kernel_is_full_lattice(rows in matrix(3, 4)) {
        let m = ZMatrix::from_rows(&rows).unwrap();
        let basis = integer_kernel_basis(&m);
        prop_assert_eq!(basis.len(), kernel_dim_q(&m.to_q()));
        for b in &basis {
            prop_assert!(m.mul_vec(b).unwrap().iter().all(Zero::is_zero));
        }
        // every boxed kernel vector is an integer combination of the basis
        let n = m.cols();
        let total = 11usize.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<BigInt> = (0..n).map(|_| { let x = (c % 11) as i64 - 5; c /= 11; BigInt::from(x) }).collect();
            if m.mul_vec(&v).unwrap().iter().all(Zero::is_zero) {
                prop_assert!(in_lattice(&basis, &v), "{:?} not generated", v);
            }
        }
    }

    #[test]
    fn deterministic(rows in skew(6)) {
        let m = ZMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(integer_kernel_basis(&m), integer_kernel_basis(&m.clone()));
        prop_assert_eq!(kernel_basis_q(&m.to_q()), kernel_basis_q(&m.to_q()));
    }
}
