//! Deterministic enumerations used by the search-based constructions.
//!
//! Integer vectors are visited by increasing height (largest absolute
//! coordinate), then by support size, then by support in lexicographic
//! order, with values taken in the order 1, -1, 2, -2, ...

use itertools::Itertools;

/// Search limits shared by every constructive step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Height bound on the scaled integer triples tried by `sqrt_pure`.
    pub sqrt_height: i64,
    /// Height bound on coordinates of candidate vectors.
    pub vector_height: u32,
    /// Maximum number of candidate vectors tried per search.
    pub vector_budget: usize,
    /// Maximum number of perturbation lists tried in the inductive step.
    pub perturbation_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            sqrt_height: 64,
            vector_height: 4,
            vector_budget: 200_000,
            perturbation_budget: 2_000,
        }
    }
}

fn values(h: i64) -> Vec<i64> {
    (1..=h).flat_map(|v| [v, -v]).collect()
}

/// Nonzero integer vectors of length `dim` with height at most `max_height`.
pub fn height_ordered(dim: usize, max_height: u32) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_height as i64).flat_map(move |h| {
        (1..=dim).flat_map(move |k| {
            (0..dim).combinations(k).flat_map(move |support| {
                std::iter::repeat_n(values(h), k)
                    .multi_cartesian_product()
                    .filter(move |vals| vals.iter().any(|v| v.abs() == h))
                    .map(move |vals| {
                        let mut out = vec![0i64; dim];
                        for (&idx, v) in support.iter().zip(vals) {
                            out[idx] = v;
                        }
                        out
                    })
            })
        })
    })
}

/// Same as [`height_ordered`] but starting with the zero vector.
pub fn height_ordered_with_zero(dim: usize, max_height: u32) -> impl Iterator<Item = Vec<i64>> {
    std::iter::once(vec![0; dim]).chain(height_ordered(dim, max_height))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_starts_sparse_and_small() {
        let v: Vec<_> = height_ordered(3, 2).take(8).collect();
        assert_eq!(v[0], vec![1, 0, 0]);
        assert_eq!(v[1], vec![-1, 0, 0]);
        assert_eq!(v[2], vec![0, 1, 0]);
        assert_eq!(v[6], vec![1, 1, 0]);
    }

    #[test]
    fn counts_match_box_sizes() {
        // every nonzero vector in [-h,h]^dim appears exactly once
        let all: Vec<_> = height_ordered(3, 2).collect();
        assert_eq!(all.len(), 5usize.pow(3) - 1);
        let uniq: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(uniq.len(), all.len());
        assert!(all.windows(2).all(|w| {
            let h = |v: &Vec<i64>| v.iter().map(|x| x.abs()).max().unwrap();
            h(&w[0]) <= h(&w[1])
        }));
    }
}
