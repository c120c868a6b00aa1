use chordlab::intlinalg::{hermite_normal_form, lattice_contains_i64};
use chordlab::{left_kernel, IntegerMatrix, LatticeBasis};
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 0..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn times(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| v.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

/// Every vector in `[-r, r]^n`.
fn boxed(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn rank_over_q(m: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs())) else {
            break;
        };
        if rows[p][c].abs() < 1e-9 {
            continue;
        }
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank {
                let f = rows[i][c] / rows[rank][c];
                for j in 0..cols {
                    rows[i][j] -= f * rows[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn saturated_where_rational_basis_is_not() {
    // 2x + 4y = 0 has integer solutions generated by (2, -1)
    let k = left_kernel(&IntegerMatrix::from_rows(&[vec![2i64], vec![4]]));
    assert!(k.same_lattice(&LatticeBasis::from_i64(2, &[vec![2, -1]]).unwrap()));
    assert!(!lattice_contains_i64(&k, &[1, 0]).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kernel_vectors_annihilate(m in matrix(6, 5)) {
        let k = left_kernel(&IntegerMatrix::from_rows(&m));
        for v in k.vectors_i64().unwrap() {
            prop_assert!(times(&v, &m).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rank_plus_nullity(m in matrix(6, 5)) {
        let mat = IntegerMatrix::from_rows(&m);
        let k = left_kernel(&mat);
        prop_assert_eq!(mat.rank(), rank_over_q(&m));
        prop_assert_eq!(mat.rank() + k.rank(), m.len());
    }

    #[test]
    fn kernel_is_saturated(m in matrix(4, 3)) {
        let k = left_kernel(&IntegerMatrix::from_rows(&m));
        for v in boxed(m.len(), 2) {
            let zero = times(&v, &m).iter().all(|&x| x == 0);
            prop_assert_eq!(lattice_contains_i64(&k, &v).unwrap(), zero, "v = {:?}", v);
        }
    }

    #[test]
    fn row_permutation_permutes_kernel(m in matrix(6, 4), seed in any::<u64>()) {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mat = IntegerMatrix::from_rows(&m);
        let k = left_kernel(&mat);
        let kp = left_kernel(&mat.permute_rows(&perm));
        // row i of the permuted matrix is row perm[i] of the original
        let moved: Vec<Vec<i64>> = k
            .vectors_i64()
            .unwrap()
            .iter()
            .map(|v| perm.iter().map(|&p| v[p]).collect())
            .collect();
        prop_assert!(kp.same_lattice(&LatticeBasis::from_i64(n, &moved).unwrap()));
    }

    #[test]
    fn column_order_is_irrelevant(m in matrix(5, 4)) {
        let flipped: Vec<Vec<i64>> = m.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let a = left_kernel(&IntegerMatrix::from_rows(&m));
        let b = left_kernel(&IntegerMatrix::from_rows(&flipped));
        prop_assert!(a.same_lattice(&b));
    }

    #[test]
    fn hnf_is_canonical(vs in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 0..5), mix in prop::collection::vec(-2i64..=2, 25)) {
        // a unimodular change of generators leaves the normal form alone
        let big = |v: &Vec<i64>| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let a: Vec<Vec<BigInt>> = vs.iter().map(big).collect();
        let mut b = vs.clone();
        for (t, &c) in mix.iter().enumerate() {
            let (i, j) = (t % vs.len().max(1), (t / 5) % vs.len().max(1));
            if i != j && !b.is_empty() {
                let src = b[j].clone();
                b[i].iter_mut().zip(&src).for_each(|(x, y)| *x += c * y);
            }
        }
        b.reverse();
        let b: Vec<Vec<BigInt>> = b.iter().map(big).collect();
        prop_assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
    }
}
