//! Permutations of `{1..n}` and their matrix representation.
//!
//! The matrix convention is fixed once for the whole crate:
//! `P[i][j] = 1` iff `pi(i) = j`, so conjugation `P A P^T` relabels an
//! adjacency matrix as `(P A P^T)[i][j] = A[pi(i)][pi(j)]`.

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{1..n}`, stored 0-based internally. All public I/O is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Builds from a 1-based image vector `map[i] = pi(i+1)`.
    pub fn from_one_based(map: &[usize]) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in map {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            map: map.iter().map(|&v| v - 1).collect(),
        })
    }

    /// Builds from a 0-based image vector without bounds diagnostics beyond bijectivity.
    pub fn from_zero_based(map: Vec<usize>) -> Result<Self> {
        let one_based: Vec<usize> = map.iter().map(|&v| v + 1).collect();
        Self::from_one_based(&one_based)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(rng);
        Permutation { map }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// `pi(i)` with 0-based position and image.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// 1-based image vector, the external representation.
    pub fn one_based(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v + 1).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn invert(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Advances to the lexicographically next permutation; returns `false`
    /// after wrapping around from the last one. Used by the exhaustive oracles.
    pub fn next_lex(&mut self) -> bool {
        let m = &mut self.map;
        let n = m.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && m[i - 1] >= m[i] {
            i -= 1;
        }
        if i == 0 {
            m.sort_unstable();
            return false;
        }
        let mut j = n - 1;
        while m[j] <= m[i - 1] {
            j -= 1;
        }
        m.swap(i - 1, j);
        m[i..].reverse();
        true
    }

    /// Swaps the images at positions `a` and `b` (0-based).
    pub fn swap_positions(&mut self, a: usize, b: usize) {
        self.map.swap(a, b);
    }

    /// Reverses the segment of positions `[a, b]` (0-based, inclusive).
    pub fn reverse_segment(&mut self, a: usize, b: usize) {
        self.map[a..=b].reverse();
    }
}

/// The permutation matrix `P` with `P[i][j] = 1` iff `pi(i) = j`.
pub fn perm_matrix(pi: &Permutation) -> Array2<i64> {
    let n = pi.n();
    let mut p = Array2::zeros((n, n));
    for i in 0..n {
        p[[i, pi.apply(i)]] = 1;
    }
    p
}

/// Conjugation `P A P^T`: returns `M` with `M[i][j] = A[pi(i)][pi(j)]`.
pub fn relabel(a: &Array2<i64>, pi: &Permutation) -> Result<Array2<i64>> {
    let n = pi.n();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.nrows(),
        });
    }
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = a[[pi.apply(i), pi.apply(j)]];
        }
    }
    Ok(m)
}

/// The cyclic successor matrix: `V[i][j] = 1` iff `j = (i mod n) + 1` in
/// 1-based terms, i.e. row i points at the next position, wrapping around.
pub fn cycle_shift_matrix(n: usize) -> Result<Array2<i64>> {
    if n < 2 {
        return Err(Error::InvalidInstance(format!(
            "cycle shift matrix needs n >= 2, got {n}"
        )));
    }
    let mut v = Array2::zeros((n, n));
    for i in 0..n {
        v[[i, (i + 1) % n]] = 1;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn perm_matrix_matches_worked_example() {
        // pi = (3,5,1,2 ... ) the 5-element example: row 1 has its 1 in column 3.
        let pi = Permutation::from_one_based(&[3, 5, 1, 4, 2]).unwrap();
        let p = perm_matrix(&pi);
        let expected = array![
            [0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0],
        ];
        assert_eq!(p, expected);
    }

    #[test]
    fn perm_matrix_identity_and_transposition() {
        let id = Permutation::identity(4);
        assert_eq!(perm_matrix(&id), Array2::from_diag_elem(4, 1));
        let t = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(perm_matrix(&t), array![[0, 1], [1, 0]]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
    }

    #[test]
    fn relabel_identity_is_noop() {
        let a = array![[0, 1], [1, 0]];
        let id = Permutation::identity(2);
        assert_eq!(relabel(&a, &id).unwrap(), a);
    }

    #[test]
    fn cycle_shift_small() {
        let v = cycle_shift_matrix(3).unwrap();
        assert_eq!(v, array![[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        assert!(cycle_shift_matrix(1).is_err());
    }

    #[test]
    fn cycle_shift_power_is_identity() {
        let v = cycle_shift_matrix(4).unwrap();
        let v2 = v.dot(&v);
        let v4 = v2.dot(&v2);
        assert_eq!(v4, Array2::from_diag_elem(4, 1));
    }

    #[test]
    fn cycle_shift_is_doubly_stochastic() {
        for n in 2..7 {
            let v = cycle_shift_matrix(n).unwrap();
            for i in 0..n {
                assert_eq!(v.row(i).sum(), 1);
                assert_eq!(v.column(i).sum(), 1);
            }
        }
    }

    #[test]
    fn next_lex_enumerates_factorial() {
        let mut pi = Permutation::identity(4);
        let mut count = 1;
        while pi.next_lex() {
            count += 1;
        }
        assert_eq!(count, 24);
        assert!(pi.is_identity());
    }

    fn random_sym_matrix(n: usize, seed: u64) -> Array2<i64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                let bit = rng.random_range(0..2);
                a[[i, j]] = bit;
                a[[j, i]] = bit;
            }
        }
        a
    }

    proptest! {
        #[test]
        fn compose_with_inverse_is_identity(seed in 0u64..1000, n in 1usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let pi = Permutation::random(n, &mut rng);
            prop_assert!(pi.compose(&pi.invert()).unwrap().is_identity());
            prop_assert!(pi.invert().compose(&pi).unwrap().is_identity());
        }

        #[test]
        fn perm_matrix_row_col_sums(seed in 0u64..1000, n in 1usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let pi = Permutation::random(n, &mut rng);
            let p = perm_matrix(&pi);
            for i in 0..n {
                prop_assert_eq!(p.row(i).sum(), 1);
                prop_assert_eq!(p.column(i).sum(), 1);
            }
            prop_assert_eq!(perm_matrix(&pi.invert()), p.t().to_owned());
        }

        #[test]
        fn relabel_round_trip_and_preservation(seed in 0u64..1000, n in 2usize..8) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = random_sym_matrix(n, seed ^ 0xabcd);
            let pi = Permutation::random(n, &mut rng);
            let m = relabel(&a, &pi).unwrap();
            // symmetry, zero diagonal, entry sum preserved
            prop_assert_eq!(m.t().to_owned(), m.clone());
            for i in 0..n {
                prop_assert_eq!(m[[i, i]], 0);
            }
            prop_assert_eq!(m.sum(), a.sum());
            // round trip through the inverse
            prop_assert_eq!(relabel(&m, &pi.invert()).unwrap(), a.clone());
            // agrees with the explicit P A P^T product
            let p = perm_matrix(&pi);
            prop_assert_eq!(p.dot(&a).dot(&p.t()), m);
        }
    }
}
