//! Integer chain complexes, Smith normal form, and reduced homology.
//!
//! Everything here is exact over `Z`.  Chain complexes are stored as their
//! boundary matrices, always including the augmentation `C_0 -> Z`, so the
//! homology computed below is reduced homology.  Acyclicity over `Z` implies
//! acyclicity over every field, which is the form of the statement the
//! resolution checks need.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn from_rows(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .expect("literal rows have equal length")
    }

    /// The `1 x n` all-ones matrix: the augmentation map on vertices.
    pub fn ones_row(n: usize) -> Self {
        IntMatrix {
            rows: 1,
            cols: n,
            entries: vec![vec![BigInt::one(); n]],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other.entries[k][j];
                    out.entries[i][j] += add;
                }
            }
        }
        Ok(out)
    }
}

/// Diagonal of the Smith normal form: the nonzero invariant factors, each
/// positive and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The factors greater than 1, i.e. the torsion contributed by the map.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form by repeated pivoting on the smallest-magnitude nonzero
/// entry.  Small pivots keep coefficient growth in check without changing
/// the exact answer.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut a = m.entries.clone();
    let rows = m.rows;
    let cols = m.cols;
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest-magnitude nonzero entry of the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        'reduce: loop {
            // Clear the pivot column with truncated division; a nonzero
            // remainder becomes the new, strictly smaller pivot.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    continue 'reduce;
                }
            }
            // Same for the pivot row.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().take(rows).skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'reduce;
                }
            }
            // Divisibility fix-up: fold in any row containing an entry the
            // pivot does not divide, then start over with a smaller pivot.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if (&a[i][j] % &a[t][t]).is_zero() {
                        continue;
                    }
                    for k in t..cols {
                        let add = a[i][k].clone();
                        a[t][k] += add;
                    }
                    continue 'reduce;
                }
            }
            break;
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    SmithNormalForm {
        invariant_factors: factors,
    }
}

/// An augmented chain complex of free `Z`-modules.
///
/// `boundaries[k]` is the matrix of the boundary map from `k`-chains to
/// `(k-1)`-chains, columns indexed by `k`-cells; `boundaries[0]` maps the
/// `0`-chains to the augmentation module `Z` and must therefore have one row.
/// An empty complex is represented by the single `1 x 0` augmentation.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn from_boundaries(boundaries: Vec<IntMatrix>) -> Result<ChainComplex> {
        if boundaries.is_empty() {
            return Err(Error::EmptyInput(
                "a chain complex needs at least the augmentation map".into(),
            ));
        }
        if boundaries[0].rows != 1 {
            return Err(Error::Dimension(
                "the augmentation must map to a rank-1 module".into(),
            ));
        }
        for k in 1..boundaries.len() {
            if boundaries[k].rows != boundaries[k - 1].cols {
                return Err(Error::Dimension(format!(
                    "boundary {} has {} rows but there are {} cells below",
                    k,
                    boundaries[k].rows,
                    boundaries[k - 1].cols
                )));
            }
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "boundary maps {} and {} do not compose to zero",
                    k - 1,
                    k
                )));
            }
        }
        Ok(ChainComplex { boundaries })
    }

    /// The empty complex: no cells in any dimension.
    pub fn empty() -> ChainComplex {
        ChainComplex {
            boundaries: vec![IntMatrix::zero(1, 0)],
        }
    }

    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k]
    }

    /// Number of cells in each dimension `0..=top_dim`.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.boundaries.iter().map(|b| b.cols).collect()
    }

    /// Dimension of the highest (possibly empty) chain group.
    pub fn top_dim(&self) -> i64 {
        self.boundaries.len() as i64 - 1
    }
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reduced homology in every degree from `-1` through the top dimension.
pub fn reduced_homology(complex: &ChainComplex) -> BTreeMap<i64, HomologyGroup> {
    let n = complex.boundaries.len();
    let snfs: Vec<SmithNormalForm> = complex
        .boundaries
        .iter()
        .map(smith_normal_form)
        .collect();
    let mut out = BTreeMap::new();
    for k in -1..n as i64 {
        // Rank of the boundary map out of degree k, and the number of k-cells.
        let (cells, rank_out) = if k < 0 {
            (1, 0)
        } else {
            (complex.boundaries[k as usize].cols, snfs[k as usize].rank())
        };
        // The map coming in from degree k+1 kills rank and creates torsion.
        let (rank_in, torsion) = if (k + 1) < n as i64 {
            let s = &snfs[(k + 1) as usize];
            (s.rank(), s.torsion())
        } else {
            (0, Vec::new())
        };
        out.insert(
            k,
            HomologyGroup {
                rank: cells - rank_out - rank_in,
                torsion,
            },
        );
    }
    out
}

/// Whether every reduced homology group vanishes.  The empty complex is not
/// acyclic: its degree `-1` group is all of `Z`.
pub fn is_acyclic(complex: &ChainComplex) -> bool {
    reduced_homology(complex).values().all(HomologyGroup::is_trivial)
}

/// Build the augmented simplicial chain complex spanned by the given
/// simplices (vertex index lists; the subset closure is taken here).
/// Boundary signs follow the usual alternating rule on sorted vertex tuples.
pub fn simplicial_chain_complex(simplices: &[Vec<usize>]) -> Result<ChainComplex> {
    let mut closed: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = Vec::new();
    for s in simplices {
        let mut v = s.clone();
        v.sort_unstable();
        let len = v.len();
        v.dedup();
        if v.len() != len {
            return Err(Error::InvalidArgument(format!(
                "repeated vertex in simplex {s:?}"
            )));
        }
        if !v.is_empty() {
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        if !closed.insert(v.clone()) || v.len() == 1 {
            continue;
        }
        for drop in 0..v.len() {
            let mut w = v.clone();
            w.remove(drop);
            stack.push(w);
        }
    }

    let top = closed.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); top];
    for s in &closed {
        by_dim[s.len() - 1].push(s);
    }
    let index: Vec<BTreeMap<&Vec<usize>, usize>> = by_dim
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, i))
                .collect()
        })
        .collect();

    let mut boundaries = Vec::with_capacity(top.max(1));
    boundaries.push(IntMatrix::ones_row(by_dim.first().map_or(0, |v| v.len())));
    for k in 1..top {
        let mut b = IntMatrix::zero(by_dim[k - 1].len(), by_dim[k].len());
        for (col, s) in by_dim[k].iter().enumerate() {
            for (drop, sign) in (0..s.len()).zip([1i64, -1].into_iter().cycle()) {
                let mut w = (*s).clone();
                w.remove(drop);
                let row = index[k - 1][&w];
                b.set(row, col, BigInt::from(sign));
            }
        }
        boundaries.push(b);
    }
    ChainComplex::from_boundaries(boundaries)
}

/// The order complex of a finite poset, as an augmented chain complex: its
/// simplices are the chains `x_0 < x_1 < … < x_k`.  Elements are `0..n` and
/// must be numbered along a linear extension, so that `strictly_below(a, b)`
/// can only hold when `a < b`.
pub fn order_complex(
    n: usize,
    strictly_below: impl Fn(usize, usize) -> bool,
) -> Result<ChainComplex> {
    for a in 0..n {
        for b in 0..=a {
            if strictly_below(a, b) {
                return Err(Error::InvalidArgument(
                    "poset elements are not numbered along a linear extension".into(),
                ));
            }
        }
    }
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("chains are nonempty");
        for next in last + 1..n {
            if strictly_below(last, next) {
                let mut longer = c.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
        chains.push(c);
    }
    simplicial_chain_complex(&chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn smith_factors_divide_in_turn() {
        let m = IntMatrix::from_ints(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, vec![big(2), big(4)]);

        let m = IntMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, vec![big(1), big(2)]);
    }

    #[test]
    fn smith_needs_the_divisibility_fixup_for_coprime_diagonals() {
        let m = IntMatrix::from_ints(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, vec![big(1), big(6)]);
    }

    #[test]
    fn smith_rank_of_rectangular_and_zero_matrices() {
        let m = IntMatrix::from_ints(&[&[1, 1, 1]]);
        assert_eq!(smith_normal_form(&m).rank(), 1);
        let z = IntMatrix::zero(3, 2);
        assert_eq!(smith_normal_form(&z).rank(), 0);
        let wide = IntMatrix::from_ints(&[&[0, 2, 0], &[0, 0, 0]]);
        assert_eq!(smith_normal_form(&wide).invariant_factors, vec![big(2)]);
    }

    #[test]
    fn smith_determinant_product_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd1a6);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let entries: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| big(rng.gen_range(-9..=9))).collect())
                .collect();
            let m = IntMatrix::from_rows(entries.clone()).unwrap();
            let det = det_oracle(&entries);
            let s = smith_normal_form(&m);
            for w in s.invariant_factors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "{:?}", s.invariant_factors);
            }
            if det.is_zero() {
                assert!(s.rank() < n);
            } else {
                let prod: BigInt = s.invariant_factors.iter().product();
                assert_eq!(prod, det.abs());
            }
        }
    }

    fn det_oracle(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut det = BigInt::zero();
        for (j, top) in m[0].iter().enumerate() {
            if top.is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = top * det_oracle(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn empty_complex_is_not_acyclic() {
        let c = ChainComplex::empty();
        let h = reduced_homology(&c);
        assert_eq!(h[&-1], HomologyGroup::free(1));
        assert!(!is_acyclic(&c));
    }

    #[test]
    fn a_point_is_acyclic() {
        let c = simplicial_chain_complex(&[vec![0]]).unwrap();
        assert!(is_acyclic(&c));
    }

    #[test]
    fn two_points_have_one_extra_component() {
        let c = simplicial_chain_complex(&[vec![0], vec![1]]).unwrap();
        let h = reduced_homology(&c);
        assert_eq!(h[&-1], HomologyGroup::trivial());
        assert_eq!(h[&0], HomologyGroup::free(1));
    }

    #[test]
    fn a_hollow_triangle_is_a_circle() {
        let c = simplicial_chain_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let h = reduced_homology(&c);
        assert_eq!(h[&0], HomologyGroup::trivial());
        assert_eq!(h[&1], HomologyGroup::free(1));
        assert!(!is_acyclic(&c));
    }

    #[test]
    fn a_filled_tetrahedron_is_acyclic_but_its_boundary_is_a_sphere() {
        let solid = simplicial_chain_complex(&[vec![0, 1, 2, 3]]).unwrap();
        assert!(is_acyclic(&solid));

        let shell = simplicial_chain_complex(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let h = reduced_homology(&shell);
        assert_eq!(h[&0], HomologyGroup::trivial());
        assert_eq!(h[&1], HomologyGroup::trivial());
        assert_eq!(h[&2], HomologyGroup::free(1));
    }

    #[test]
    fn projective_plane_cell_structure_has_two_torsion() {
        // One cell in each dimension, attaching map of degree two.
        let c = ChainComplex::from_boundaries(vec![
            IntMatrix::ones_row(1),
            IntMatrix::from_ints(&[&[0]]),
            IntMatrix::from_ints(&[&[2]]),
        ])
        .unwrap();
        let h = reduced_homology(&c);
        assert_eq!(h[&0], HomologyGroup::trivial());
        assert_eq!(
            h[&1],
            HomologyGroup {
                rank: 0,
                torsion: vec![big(2)]
            }
        );
        assert_eq!(h[&2], HomologyGroup::trivial());
        assert_eq!(format!("{}", h[&1]), "Z/2");
    }

    #[test]
    fn composition_of_boundaries_must_vanish() {
        let bad = ChainComplex::from_boundaries(vec![
            IntMatrix::ones_row(2),
            IntMatrix::from_ints(&[&[1], &[1]]),
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn order_complex_of_a_polygon_face_poset_is_a_circle() {
        // Proper faces of a triangle: vertices 0,1,2 then edges {0,1},{1,2},{0,2}
        // numbered 3,4,5.  The order complex is the barycentric subdivision of
        // the boundary, a hexagon.
        let below = |a: usize, b: usize| match (a, b) {
            (0, 3) | (1, 3) => true,
            (1, 4) | (2, 4) => true,
            (0, 5) | (2, 5) => true,
            _ => false,
        };
        let c = order_complex(6, below).unwrap();
        assert_eq!(c.cell_counts(), vec![6, 6]);
        let h = reduced_homology(&c);
        assert_eq!(h[&0], HomologyGroup::trivial());
        assert_eq!(h[&1], HomologyGroup::free(1));
    }

    #[test]
    fn order_complex_rejects_inconsistent_numbering() {
        assert!(order_complex(2, |a, b| a == 1 && b == 0).is_err());
    }
}
