//! Exact maximum-weight perfect assignment.
//!
//! This is the classical Hungarian algorithm with row/column potentials in
//! O(n³) arithmetic operations, run over exact rationals.  Entries are
//! `Option<Rat>` and `None` marks a forbidden edge, so the same routine
//! answers both "what is the best assignment" and "is there one at all"
//! — which is exactly what the edge-forbidding uniqueness probe needs.

use num_traits::Zero;

use crate::Rat;

/// Maximum-weight perfect assignment of a square matrix.
///
/// `weights[i][j]` is the gain for matching row `i` to column `j`; `None`
/// forbids the pair.  Returns the optimal total weight and the permutation
/// `perm` with `perm[i] = j`, or `None` when no perfect assignment avoids
/// the forbidden entries.
pub fn max_assignment(weights: &[Vec<Option<Rat>>]) -> Option<(Rat, Vec<usize>)> {
    let n = weights.len();
    debug_assert!(weights.iter().all(|row| row.len() == n));
    if n == 0 {
        return Some((Rat::zero(), Vec::new()));
    }

    // Minimize cost = -weight.  Columns are shifted by one so index 0 can act
    // as the virtual start column of each augmentation; `p[j]` is the row
    // currently matched to column `j` (`usize::MAX` = free).
    const FREE: usize = usize::MAX;
    let mut u = vec![Rat::zero(); n];
    let mut v = vec![Rat::zero(); n + 1];
    let mut p = vec![FREE; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 0..n {
        p[0] = i;
        let mut j0 = 0usize;
        // minv[j] = cheapest known reduced cost of reaching column j; None = unreachable.
        let mut minv: Vec<Option<Rat>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rat> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = weights[i0][j - 1]
                    .as_ref()
                    .map(|w| -w - &u[i0] - &v[j]);
                if let Some(c) = &cur {
                    if minv[j].as_ref().is_none_or(|m| c < m) {
                        minv[j] = cur.clone();
                        way[j] = j0;
                    }
                }
                if let Some(m) = &minv[j] {
                    if delta.as_ref().is_none_or(|d| m < d) {
                        delta = Some(m.clone());
                        j1 = j;
                    }
                }
            }
            // Every free column unreachable: the forbidden pattern has no
            // perfect assignment.
            let delta = delta?;
            for j in 0..=n {
                if used[j] {
                    // Used columns are always matched (column 0 to the row
                    // being inserted), so `p[j]` is a valid row.
                    let row = p[j];
                    u[row] = &u[row] + &delta;
                    v[j] = &v[j] - &delta;
                } else if let Some(m) = &minv[j] {
                    minv[j] = Some(m - &delta);
                }
            }
            j0 = j1;
            if p[j0] == FREE {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0usize; n];
    let mut total = Rat::zero();
    for j in 1..=n {
        let i = p[j];
        perm[i] = j - 1;
        total = total
            + weights[i][j - 1]
                .as_ref()
                .expect("matched edges are finite by construction");
    }
    Some((total, perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::rat;

    /// Brute force over all n! permutations; the independent oracle for the
    /// potentials implementation.
    fn oracle(weights: &[Vec<Option<Rat>>]) -> Option<(Rat, Vec<usize>)> {
        let n = weights.len();
        let mut best: Option<(Rat, Vec<usize>)> = None;
        for perm in (0..n).permutations(n) {
            let mut total = Rat::zero();
            let mut ok = true;
            for (i, &j) in perm.iter().enumerate() {
                match &weights[i][j] {
                    Some(w) => total = total + w,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && best.as_ref().is_none_or(|(b, _)| total > *b) {
                best = Some((total, perm));
            }
        }
        best
    }

    fn from_ints(rows: &[&[i64]]) -> Vec<Vec<Option<Rat>>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Some(rat(x))).collect())
            .collect()
    }

    #[test]
    fn empty_matrix_has_empty_assignment() {
        assert_eq!(max_assignment(&[]), Some((rat(0), vec![])));
    }

    #[test]
    fn picks_the_off_diagonal_when_it_pays() {
        let w = from_ints(&[&[1, 5], &[5, 1]]);
        let (value, perm) = max_assignment(&w).unwrap();
        assert_eq!(value, rat(10));
        assert_eq!(perm, vec![1, 0]);
    }

    #[test]
    fn forbidden_edges_are_avoided() {
        let mut w = from_ints(&[&[9, 1], &[9, 1]]);
        w[0][0] = None;
        let (value, perm) = max_assignment(&w).unwrap();
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(value, rat(10));
    }

    #[test]
    fn fully_forbidden_row_means_no_assignment() {
        let mut w = from_ints(&[&[1, 2], &[3, 4]]);
        w[1][0] = None;
        w[1][1] = None;
        assert_eq!(max_assignment(&w), None);
    }

    #[test]
    fn forbidden_pattern_blocking_all_matchings_is_detected() {
        // Both rows can only use column 0.
        let w = vec![
            vec![Some(rat(1)), None],
            vec![Some(rat(1)), None],
        ];
        assert_eq!(max_assignment(&w), None);
    }

    #[test]
    fn agrees_with_permutation_enumeration_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a551);
        for n in 1..=5usize {
            for _ in 0..60 {
                let w: Vec<Vec<Option<Rat>>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                if rng.gen_ratio(1, 6) {
                                    None
                                } else {
                                    Some(rat(rng.gen_range(-20..=20)))
                                }
                            })
                            .collect()
                    })
                    .collect();
                let fast = max_assignment(&w);
                let slow = oracle(&w);
                match (&fast, &slow) {
                    (None, None) => {}
                    (Some((a, _)), Some((b, _))) => {
                        assert_eq!(a, b, "optimal values differ on {w:?}")
                    }
                    _ => panic!("feasibility verdicts differ on {w:?}: {fast:?} vs {slow:?}"),
                }
                // The returned permutation must realize the returned value.
                if let Some((value, perm)) = &fast {
                    let mut total = Rat::zero();
                    for (i, &j) in perm.iter().enumerate() {
                        total = total + w[i][j].as_ref().unwrap();
                    }
                    assert_eq!(&total, value);
                }
            }
        }
    }
}
