use super::{decimal_vec, TopologyError};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pivot) = (rank..n_rows).find(|&r| m[r][col] != zero) else { continue };
        m.swap(rank, pivot);
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = zero.clone();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dimensions of the reduced `L^2` cohomology of a manifold with `T^3` cusps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L2Dimensions {
    /// `dim H^k`, `k = 0..=4`.
    #[serde(with = "decimal_vec")]
    pub dims: Vec<i64>,
    pub pairing_rank: usize,
}

/// `H^k = b_k(X)` for `k < 2`, `b_k(X, L)` for `k > 2`, and in degree 2 the
/// classes pairing trivially with every torus: `b_2(X) - rank(pairing)`.
///
/// `pairing` has one row per torus and at most `b_2(X)` columns; missing
/// columns are basis elements that pair trivially.
pub fn l2_cohomology_dims(
    betti: &[i64; 5],
    pairing: &[Vec<i64>],
    relative: &[i64; 5],
) -> Result<L2Dimensions, TopologyError> {
    if betti.iter().chain(relative).any(|&b| b < 0) {
        return Err(TopologyError::ShapeMismatch("Betti numbers must be non-negative".into()));
    }
    let cols = pairing.first().map_or(0, Vec::len);
    if pairing.iter().any(|r| r.len() != cols) {
        return Err(TopologyError::ShapeMismatch("pairing rows have different lengths".into()));
    }
    if cols as i64 > betti[2] {
        return Err(TopologyError::ShapeMismatch(format!("pairing has {cols} columns but b2 = {}", betti[2])));
    }
    let rank = rational_rank(pairing);
    let dims = vec![betti[0], betti[1], betti[2] - rank as i64, relative[3], relative[4]];
    Ok(L2Dimensions { dims, pairing_rank: rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Plain Gaussian elimination over exact rationals.
    fn rank_oracle(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != BigRational::from_integer(0.into())) else { continue };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in 0..m.len() {
                if r != rank {
                    let f = &m[r][c] / &pivot;
                    for k in 0..cols {
                        let v = &m[rank][k] * &f;
                        m[r][k] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn examples() {
        let b = [1, 0, 5, 0, 0];
        assert_eq!(l2_cohomology_dims(&b, &[vec![0; 5], vec![0; 5]], &[0, 0, 0, 1, 0]).unwrap().dims[2], 5);
        let d = l2_cohomology_dims(&[1, 0, 4, 0, 0], &[vec![2, 4], vec![1, 2]], &[0; 5]).unwrap();
        assert_eq!((d.pairing_rank, d.dims[2]), (1, 3));
        assert_eq!(
            l2_cohomology_dims(&[1, 2, 3, 4, 5], &[vec![0, 0, 0]], &[9, 9, 9, 7, 1]).unwrap().dims,
            vec![1, 2, 3, 7, 1]
        );
        assert!(matches!(
            l2_cohomology_dims(&[1, 0, 1, 0, 0], &[vec![1, 2]], &[0; 5]),
            Err(TopologyError::ShapeMismatch(_))
        ));
        assert!(matches!(
            l2_cohomology_dims(&[1, 0, 3, 0, 0], &[vec![1, 2], vec![1]], &[0; 5]),
            Err(TopologyError::ShapeMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(rows in prop::collection::vec(prop::collection::vec(-6i64..6, 5), 1..6), dup in any::<bool>()) {
            let mut rows = rows;
            if dup {
                let combo: Vec<i64> = rows[0].iter().zip(&rows[rows.len() - 1]).map(|(a, b)| 3 * a - 2 * b).collect();
                rows.push(combo);
            }
            prop_assert_eq!(rational_rank(&rows), rank_oracle(&rows));
        }
    }
}
