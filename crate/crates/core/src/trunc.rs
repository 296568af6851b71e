//! Structured truncation matrices `C(k)` and the shared trace kernel
//! `Tr(M C)` behind every constraint check.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The family of structured 0/1 selector matrices the formulations use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationSpec {
    /// Ones in the top-left `k x k` block.
    PrefixBlock { k: usize },
    /// Ones where one index is `<= k` and the other `> k` (requires `k < n`).
    CrossBlock { k: usize },
    /// Ones in the bottom-right `(n-k) x (n-k)` block.
    SuffixBlock { k: usize },
    /// Block-diagonal all-ones blocks of the given sizes.
    DiagonalBlocks { blocks: Vec<usize> },
}

impl TruncationSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            TruncationSpec::PrefixBlock { k } => {
                if *k < 1 || *k > n {
                    return Err(Error::KOutOfRange { k: *k, n });
                }
            }
            TruncationSpec::CrossBlock { k } => {
                if *k < 1 || *k >= n {
                    return Err(Error::KOutOfRange { k: *k, n });
                }
            }
            TruncationSpec::SuffixBlock { k } => {
                // k = 0 selects the whole matrix; legal so the edgeless vertex
                // cover optimum stays representable.
                if *k > n {
                    return Err(Error::KOutOfRange { k: *k, n });
                }
            }
            TruncationSpec::DiagonalBlocks { blocks } => {
                if blocks.is_empty() || blocks.iter().any(|&b| b == 0) {
                    return Err(Error::InvalidComposition(
                        "every block must have size >= 1".into(),
                    ));
                }
                let total: usize = blocks.iter().sum();
                if total != n {
                    return Err(Error::InvalidComposition(format!(
                        "block sizes sum to {total}, expected {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Materializes the dense `n x n` matrix. Constraint checks go through
    /// [`trace_product`] instead; this is for export and inspection.
    pub fn matrix(&self, n: usize) -> Result<Array2<i64>> {
        self.validate(n)?;
        let mut c = Array2::zeros((n, n));
        match self {
            TruncationSpec::PrefixBlock { k } => {
                for i in 0..*k {
                    for j in 0..*k {
                        c[[i, j]] = 1;
                    }
                }
            }
            TruncationSpec::CrossBlock { k } => {
                for i in 0..*k {
                    for j in *k..n {
                        c[[i, j]] = 1;
                        c[[j, i]] = 1;
                    }
                }
            }
            TruncationSpec::SuffixBlock { k } => {
                for i in *k..n {
                    for j in *k..n {
                        c[[i, j]] = 1;
                    }
                }
            }
            TruncationSpec::DiagonalBlocks { blocks } => {
                let mut start = 0;
                for &b in blocks {
                    for i in start..start + b {
                        for j in start..start + b {
                            c[[i, j]] = 1;
                        }
                    }
                    start += b;
                }
            }
        }
        Ok(c)
    }
}

/// `Tr(M C)` for a structured `C`, computed as the corresponding block sum
/// without materializing `C`. All four kinds are symmetric, so
/// `Tr(M C) = sum_{ij} M[i][j] C[i][j]`.
pub fn trace_product(m: &Array2<i64>, spec: &TruncationSpec) -> Result<i64> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    spec.validate(n)?;
    let sum = match spec {
        TruncationSpec::PrefixBlock { k } => block_sum(m, 0, *k, 0, *k),
        TruncationSpec::CrossBlock { k } => {
            block_sum(m, 0, *k, *k, n) + block_sum(m, *k, n, 0, *k)
        }
        TruncationSpec::SuffixBlock { k } => block_sum(m, *k, n, *k, n),
        TruncationSpec::DiagonalBlocks { blocks } => {
            let mut total = 0;
            let mut start = 0;
            for &b in blocks {
                total += block_sum(m, start, start + b, start, start + b);
                start += b;
            }
            total
        }
    };
    Ok(sum)
}

fn block_sum(m: &Array2<i64>, r0: usize, r1: usize, c0: usize, c1: usize) -> i64 {
    let mut s = 0;
    for i in r0..r1 {
        for j in c0..c1 {
            s += m[[i, j]];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::demo_mis_graph;
    use crate::perm::{relabel, Permutation};
    use ndarray::array;
    use proptest::prelude::*;
    use rand::SeedableRng;

    /// Dense `Tr(M C)` oracle, independent of the structured kernels.
    fn trace_dense(m: &Array2<i64>, c: &Array2<i64>) -> i64 {
        let n = m.nrows();
        let mut t = 0;
        for i in 0..n {
            for j in 0..n {
                t += m[[i, j]] * c[[j, i]];
            }
        }
        t
    }

    #[test]
    fn prefix_block_matrix() {
        let c = TruncationSpec::PrefixBlock { k: 3 }.matrix(5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(c[[i, j]], if i < 3 && j < 3 { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn cross_block_boundary() {
        // k = n-1: ones only in row n / column n off-block entries
        let c = TruncationSpec::CrossBlock { k: 3 }.matrix(4).unwrap();
        let expected = array![
            [0, 0, 0, 1],
            [0, 0, 0, 1],
            [0, 0, 0, 1],
            [1, 1, 1, 0],
        ];
        assert_eq!(c, expected);
    }

    #[test]
    fn singleton_blocks_give_identity() {
        let c = TruncationSpec::DiagonalBlocks {
            blocks: vec![1, 1, 1, 1],
        }
        .matrix(4)
        .unwrap();
        assert_eq!(c, Array2::from_diag_elem(4, 1));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(TruncationSpec::PrefixBlock { k: 0 }.validate(5).is_err());
        assert!(TruncationSpec::PrefixBlock { k: 6 }.validate(5).is_err());
        assert!(TruncationSpec::CrossBlock { k: 5 }.validate(5).is_err());
        assert!(TruncationSpec::DiagonalBlocks { blocks: vec![2, 2] }
            .validate(5)
            .is_err());
        assert!(TruncationSpec::DiagonalBlocks { blocks: vec![0, 5] }
            .validate(5)
            .is_err());
    }

    #[test]
    fn identity_times_prefix_is_k() {
        let id = Array2::from_diag_elem(5, 1);
        assert_eq!(
            trace_product(&id, &TruncationSpec::PrefixBlock { k: 3 }).unwrap(),
            3
        );
    }

    #[test]
    fn demo_relabel_zero_block() {
        let g = demo_mis_graph();
        let pi = Permutation::from_one_based(&[1, 4, 5, 2, 3]).unwrap();
        let m = relabel(&g.adjacency(), &pi).unwrap();
        assert_eq!(
            trace_product(&m, &TruncationSpec::PrefixBlock { k: 3 }).unwrap(),
            0
        );
    }

    fn random_spec(n: usize, seed: u64) -> TruncationSpec {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        match rng.random_range(0..4) {
            0 => TruncationSpec::PrefixBlock {
                k: rng.random_range(1..=n),
            },
            1 => TruncationSpec::CrossBlock {
                k: rng.random_range(1..n),
            },
            2 => TruncationSpec::SuffixBlock {
                k: rng.random_range(0..=n),
            },
            _ => {
                let mut blocks = Vec::new();
                let mut left = n;
                while left > 0 {
                    let b = rng.random_range(1..=left);
                    blocks.push(b);
                    left -= b;
                }
                TruncationSpec::DiagonalBlocks { blocks }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn structured_matches_dense(seed in 0u64..10_000, n in 2usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut m = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    m[[i, j]] = rng.random_range(-3i64..4);
                }
            }
            let spec = random_spec(n, seed ^ 0x5eed);
            let c = spec.matrix(n).unwrap();
            prop_assert_eq!(trace_product(&m, &spec).unwrap(), trace_dense(&m, &c));
        }

        #[test]
        fn sym_zero_diag_prefix_trace_is_even(seed in 0u64..10_000, n in 2usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut m = Array2::zeros((n, n));
            for i in 0..n {
                for j in (i + 1)..n {
                    let bit = rng.random_range(0..2);
                    m[[i, j]] = bit;
                    m[[j, i]] = bit;
                }
            }
            let k = rng.random_range(1..=n);
            let t = trace_product(&m, &TruncationSpec::PrefixBlock { k }).unwrap();
            prop_assert_eq!(t % 2, 0);
            // equals twice the strict-upper-triangle count in the k x k block
            let mut upper = 0;
            for i in 0..k {
                for j in (i + 1)..k {
                    upper += m[[i, j]];
                }
            }
            prop_assert_eq!(t, 2 * upper);
        }
    }
}
