//! Tropical projective geometry over the max-plus semiring `(Q, max, +)`.
//!
//! Points live in tropical projective space: coordinate vectors modulo adding
//! a common scalar, kept in the canonical form with first coordinate `0`.
//! A tropical hyperplane is the locus where the maximum in
//! `max_i (x_i - c_i)` is attained at least twice; its apex `c` may have
//! `+∞` entries, which simply remove those coordinates from the competition.
//! Halfspaces split the hyperplane's sectors into two camps, and the tropical
//! determinant of a square matrix is the value of the best assignment.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::field::Sign;
use crate::par;
use crate::{Error, Rat, Result};

pub mod assignment;

/// A point of tropical projective space in canonical form (`coords[0] == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalPoint {
    coords: Vec<Rat>,
}

impl TropicalPoint {
    /// Canonicalize a coordinate vector by subtracting its first entry.
    /// Errors if fewer than two coordinates are given.
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Dimension(format!(
                "a tropical projective point needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        let first = coords[0].clone();
        Ok(TropicalPoint {
            coords: coords.into_iter().map(|c| c - &first).collect(),
        })
    }

    /// Build from small integers (test and fixture convenience).
    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| crate::rat(c)).collect())
            .expect("fixture points have valid dimensions")
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl std::fmt::Display for TropicalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.coords.iter().map(|c| c.to_string()).join(", "))
    }
}

/// Apex coordinate of a tropical hyperplane: finite or `+∞`.
///
/// An infinite coordinate removes that index from every maximum; the
/// corresponding sector is empty.
pub type ApexCoord = Option<Rat>;

/// A tropical hyperplane, given by its apex.
///
/// Canonical form subtracts the first finite coordinate from all finite
/// coordinates.  At least two coordinates must be finite, otherwise the locus
/// where the maximum is attained twice would be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalHyperplane {
    apex: Vec<ApexCoord>,
}

impl TropicalHyperplane {
    pub fn new(apex: Vec<ApexCoord>) -> Result<Self> {
        if apex.len() < 2 {
            return Err(Error::Dimension(
                "a tropical hyperplane needs at least 2 coordinates".into(),
            ));
        }
        let finite = apex.iter().flatten().count();
        if finite < 2 {
            return Err(Error::InvalidArgument(format!(
                "a tropical hyperplane needs at least 2 finite apex coordinates, got {finite}"
            )));
        }
        let base = apex
            .iter()
            .flatten()
            .next()
            .expect("checked at least one finite coordinate")
            .clone();
        Ok(TropicalHyperplane {
            apex: apex
                .into_iter()
                .map(|c| c.map(|v| v - &base))
                .collect(),
        })
    }

    pub fn at_point(p: &TropicalPoint) -> Self {
        Self::new(p.coords().iter().cloned().map(Some).collect())
            .expect("points are valid finite apexes")
    }

    pub fn apex(&self) -> &[ApexCoord] {
        &self.apex
    }

    pub fn dim(&self) -> usize {
        self.apex.len()
    }

    /// Indices with finite apex coordinates.
    pub fn finite_support(&self) -> BTreeSet<usize> {
        self.apex
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|_| i))
            .collect()
    }
}

/// Sector membership of a point relative to a hyperplane: all indices where
/// `x_i - c_i` attains the maximum (over finite apex coordinates).
pub fn sectors_of(x: &TropicalPoint, h: &TropicalHyperplane) -> Result<BTreeSet<usize>> {
    if x.dim() != h.dim() {
        return Err(Error::Dimension(format!(
            "point dimension {} does not match hyperplane dimension {}",
            x.dim(),
            h.dim()
        )));
    }
    let mut best: Option<Rat> = None;
    let mut arg = BTreeSet::new();
    for (i, c) in h.apex.iter().enumerate() {
        let Some(c) = c else { continue };
        let v = &x.coords[i] - c;
        match &best {
            None => {
                best = Some(v);
                arg.insert(i);
            }
            Some(b) => match v.cmp(b) {
                std::cmp::Ordering::Greater => {
                    best = Some(v);
                    arg.clear();
                    arg.insert(i);
                }
                std::cmp::Ordering::Equal => {
                    arg.insert(i);
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
    Ok(arg)
}

/// `true` when the maximum of `x_i - c_i` is attained at least twice.
pub fn on_hyperplane(x: &TropicalPoint, h: &TropicalHyperplane) -> Result<bool> {
    Ok(sectors_of(x, h)?.len() >= 2)
}

/// Position of a point relative to a closed tropical halfspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfspacePosition {
    Interior,
    Boundary,
    Outside,
}

/// A closed tropical halfspace: the points whose maximum over the sector set
/// `A` is at least the maximum over the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalHalfspace {
    pub hyperplane: TropicalHyperplane,
    /// The favoured sectors `A`; nonempty proper subset of all indices.
    pub sectors: BTreeSet<usize>,
}

impl TropicalHalfspace {
    pub fn new(hyperplane: TropicalHyperplane, sectors: BTreeSet<usize>) -> Result<Self> {
        let d = hyperplane.dim();
        if sectors.is_empty() || sectors.len() >= d {
            return Err(Error::InvalidArgument(format!(
                "halfspace sectors must be a nonempty proper subset of 0..{d}"
            )));
        }
        if sectors.iter().any(|&i| i >= d) {
            return Err(Error::InvalidArgument(
                "halfspace sector index out of range".into(),
            ));
        }
        Ok(TropicalHalfspace { hyperplane, sectors })
    }

    /// Classify `x` against this halfspace. Coordinates with infinite apex
    /// entries take part in neither maximum.
    pub fn position(&self, x: &TropicalPoint) -> Result<HalfspacePosition> {
        if x.dim() != self.hyperplane.dim() {
            return Err(Error::Dimension(format!(
                "point dimension {} does not match halfspace dimension {}",
                x.dim(),
                self.hyperplane.dim()
            )));
        }
        let mut max_in: Option<Rat> = None;
        let mut max_out: Option<Rat> = None;
        for (i, c) in self.hyperplane.apex.iter().enumerate() {
            let Some(c) = c else { continue };
            let v = &x.coords[i] - c;
            let slot = if self.sectors.contains(&i) {
                &mut max_in
            } else {
                &mut max_out
            };
            if slot.as_ref().is_none_or(|b| v > *b) {
                *slot = Some(v);
            }
        }
        Ok(match (max_in, max_out) {
            (None, _) => HalfspacePosition::Outside,
            (Some(_), None) => HalfspacePosition::Interior,
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Greater => HalfspacePosition::Interior,
                std::cmp::Ordering::Equal => HalfspacePosition::Boundary,
                std::cmp::Ordering::Less => HalfspacePosition::Outside,
            },
        })
    }
}

/// Tropical linear combination `⊕_i (c_i ⊙ v_i)`, canonicalized.
pub fn tconv_combination(coeffs: &[Rat], points: &[TropicalPoint]) -> Result<TropicalPoint> {
    if points.is_empty() {
        return Err(Error::EmptyInput("tropical combination of no points".into()));
    }
    if coeffs.len() != points.len() {
        return Err(Error::Dimension(format!(
            "{} coefficients for {} points",
            coeffs.len(),
            points.len()
        )));
    }
    let d = points[0].dim();
    if points.iter().any(|p| p.dim() != d) {
        return Err(Error::Dimension("mixed point dimensions".into()));
    }
    let mut out = vec![None::<Rat>; d];
    for (c, p) in coeffs.iter().zip(points) {
        for (j, x) in p.coords().iter().enumerate() {
            let v = c + x;
            if out[j].as_ref().is_none_or(|b| v > *b) {
                out[j] = Some(v);
            }
        }
    }
    TropicalPoint::new(out.into_iter().map(|v| v.expect("nonempty")).collect())
}

/// Exact membership test for the tropical convex hull of `points`.
///
/// Returns the canonical witness coefficients `c_i = min_j (x_j - v_{ij})`
/// together with the verdict: `x` lies in the hull iff the combination with
/// those coefficients reproduces `x`.
pub fn membership(x: &TropicalPoint, points: &[TropicalPoint]) -> Result<(bool, Vec<Rat>)> {
    if points.is_empty() {
        return Err(Error::EmptyInput("membership in the hull of no points".into()));
    }
    let d = points[0].dim();
    if x.dim() != d || points.iter().any(|p| p.dim() != d) {
        return Err(Error::Dimension("mixed point dimensions".into()));
    }
    let coeffs: Vec<Rat> = points
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .zip(x.coords())
                .map(|(vj, xj)| xj - vj)
                .min()
                .expect("d >= 2")
        })
        .collect();
    let combo = tconv_combination(&coeffs, points)?;
    Ok((&combo == x, coeffs))
}

/// The tropical segment between `p` and `q`: an ordered polyline with at most
/// `d` breakpoints (including both endpoints).
pub fn tropical_segment(p: &TropicalPoint, q: &TropicalPoint) -> Result<Vec<TropicalPoint>> {
    if p.dim() != q.dim() {
        return Err(Error::Dimension("segment endpoints of mixed dimension".into()));
    }
    if p == q {
        return Ok(vec![p.clone()]);
    }
    // Points on the segment are max(p, s + q) componentwise as s sweeps R.
    // Breakpoints happen at s = p_i - q_i.
    let mut svals: Vec<Rat> = p
        .coords()
        .iter()
        .zip(q.coords())
        .map(|(pi, qi)| pi - qi)
        .collect();
    svals.sort();
    svals.dedup();
    let mut out: Vec<TropicalPoint> = Vec::new();
    for s in &svals {
        let coords: Vec<Rat> = p
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(pi, qi)| {
                let shifted = s + qi;
                if *pi >= shifted {
                    pi.clone()
                } else {
                    shifted
                }
            })
            .collect();
        let pt = TropicalPoint::new(coords)?;
        if out.last() != Some(&pt) {
            out.push(pt);
        }
    }
    Ok(out)
}

/// A square matrix of rationals whose columns are tropical point coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix {
    entries: Vec<Vec<Rat>>,
}

impl TropicalMatrix {
    /// Row-major square matrix.
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::EmptyInput("empty tropical matrix".into()));
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("tropical matrix must be square".into()));
        }
        Ok(TropicalMatrix { entries })
    }

    /// Matrix whose `j`-th column is `points[subset[j]]`.
    /// Requires point dimension to equal `subset.len()`.
    pub fn from_columns(points: &[TropicalPoint], subset: &[usize]) -> Result<Self> {
        let n = subset.len();
        for &idx in subset {
            if idx >= points.len() {
                return Err(Error::InvalidArgument(format!(
                    "column index {idx} out of range"
                )));
            }
            if points[idx].dim() != n {
                return Err(Error::Dimension(format!(
                    "need {n} coordinates per point for a {n}x{n} matrix, got {}",
                    points[idx].dim()
                )));
            }
        }
        let entries = (0..n)
            .map(|i| subset.iter().map(|&j| points[j].coords()[i].clone()).collect())
            .collect();
        Ok(TropicalMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    fn as_assignment_weights(&self) -> Vec<Vec<Option<Rat>>> {
        self.entries
            .iter()
            .map(|row| row.iter().cloned().map(Some).collect())
            .collect()
    }
}

/// Tropical determinant: the maximum over permutations `σ` of
/// `Σ_i a_{i,σ(i)}`, computed as an optimal assignment.
pub fn tropical_det(m: &TropicalMatrix) -> Rat {
    let (value, _) = assignment::max_assignment(&m.as_assignment_weights())
        .expect("all-finite matrices always have a perfect assignment");
    value
}

/// Tropical sign: the sign of the unique optimal permutation, or
/// [`Sign::Zero`] when at least two permutations attain the optimum.
///
/// Uniqueness is decided exactly: for every edge of the optimal assignment,
/// forbid that edge and re-solve; the optimum is unique iff every such
/// restricted problem is strictly worse.
pub fn tropical_sign(m: &TropicalMatrix) -> (Sign, Option<Vec<usize>>) {
    let weights = m.as_assignment_weights();
    let (value, perm) =
        assignment::max_assignment(&weights).expect("all-finite matrices have assignments");
    for (i, &j) in perm.iter().enumerate() {
        let mut restricted = weights.clone();
        restricted[i][j] = None;
        if let Some((v, _)) = assignment::max_assignment(&restricted) {
            if v == value {
                return (Sign::Zero, None);
            }
        }
    }
    (permutation_sign(&perm), Some(perm))
}

/// Parity sign of a permutation given as the image vector `i -> perm[i]`.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// The tropical chirotope: tropical signs of all maximal square submatrices
/// of the configuration (columns = points, in index order).
///
/// Fans out across subsets when the `parallel` feature is enabled.
pub fn chirotope(points: &[TropicalPoint]) -> Result<Vec<(Vec<usize>, Sign)>> {
    let subsets = maximal_subsets(points)?;
    Ok(par::map_collect(&subsets, |s| chirotope_entry(points, s)))
}

/// Sequential twin of [`chirotope`] for benchmarking the fallback path.
pub fn chirotope_seq(points: &[TropicalPoint]) -> Result<Vec<(Vec<usize>, Sign)>> {
    let subsets = maximal_subsets(points)?;
    Ok(par::map_collect_seq(&subsets, |s| chirotope_entry(points, s)))
}

fn maximal_subsets(points: &[TropicalPoint]) -> Result<Vec<Vec<usize>>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("chirotope of no points".into()));
    }
    let d = points[0].dim();
    if points.iter().any(|p| p.dim() != d) {
        return Err(Error::Dimension("mixed point dimensions".into()));
    }
    Ok((0..points.len()).combinations(d).collect())
}

fn chirotope_entry(points: &[TropicalPoint], subset: &Vec<usize>) -> (Vec<usize>, Sign) {
    let m = TropicalMatrix::from_columns(points, subset)
        .expect("subset indices are valid by construction");
    (subset.clone(), tropical_sign(&m).0)
}

/// A configuration is in general position when every maximal square
/// submatrix has a unique optimal assignment (no tropical sign vanishes).
pub fn is_general_position(points: &[TropicalPoint]) -> Result<bool> {
    Ok(chirotope(points)?
        .iter()
        .all(|(_, sign)| *sign != Sign::Zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn pt(coords: &[i64]) -> TropicalPoint {
        TropicalPoint::from_ints(coords)
    }

    #[test]
    fn points_are_canonicalized() {
        let p = TropicalPoint::new(vec![rat(2), rat(5), rat(1)]).unwrap();
        assert_eq!(p.coords(), &[rat(0), rat(3), rat(-1)]);
        assert_eq!(p, pt(&[0, 3, -1]));
        assert!(TropicalPoint::new(vec![rat(1)]).is_err());
    }

    #[test]
    fn hyperplane_canonicalization_uses_first_finite_coordinate() {
        let h = TropicalHyperplane::new(vec![None, Some(rat(3)), Some(rat(5))]).unwrap();
        assert_eq!(h.apex(), &[None, Some(rat(0)), Some(rat(2))]);
        assert!(TropicalHyperplane::new(vec![None, Some(rat(1)), None]).is_err());
    }

    #[test]
    fn sectors_are_argmax_sets() {
        // Hyperplane at the origin of TP^2.
        let h = TropicalHyperplane::at_point(&pt(&[0, 0, 0]));
        assert_eq!(
            sectors_of(&pt(&[0, 3, 1]), &h).unwrap(),
            BTreeSet::from([1])
        );
        assert_eq!(
            sectors_of(&pt(&[0, 0, -1]), &h).unwrap(),
            BTreeSet::from([0, 1])
        );
        assert!(on_hyperplane(&pt(&[0, 0, -1]), &h).unwrap());
        assert!(!on_hyperplane(&pt(&[0, 3, 1]), &h).unwrap());
    }

    #[test]
    fn infinite_apex_coordinates_sit_out() {
        let h = TropicalHyperplane::new(vec![Some(rat(0)), None, Some(rat(0))]).unwrap();
        // Coordinate 1 never competes, however large.
        assert_eq!(
            sectors_of(&pt(&[0, 100, 0]), &h).unwrap(),
            BTreeSet::from([0, 2])
        );
    }

    #[test]
    fn halfspace_positions_on_the_triangle_fixture() {
        // Halfspace with apex (0,1,2) favouring sector {1} contains the
        // triangle {(0,3,0),(0,1,1),(0,2,3)} with two vertices on its boundary.
        let h = TropicalHyperplane::at_point(&pt(&[0, 1, 2]));
        let hs = TropicalHalfspace::new(h, BTreeSet::from([1])).unwrap();
        assert_eq!(
            hs.position(&pt(&[0, 3, 0])).unwrap(),
            HalfspacePosition::Interior
        );
        assert_eq!(
            hs.position(&pt(&[0, 1, 1])).unwrap(),
            HalfspacePosition::Boundary
        );
        assert_eq!(
            hs.position(&pt(&[0, 2, 3])).unwrap(),
            HalfspacePosition::Boundary
        );
        // A point deep in the complement.
        assert_eq!(
            hs.position(&pt(&[0, -5, 0])).unwrap(),
            HalfspacePosition::Outside
        );
    }

    #[test]
    fn combination_and_membership_round_trip() {
        let vs = [pt(&[0, 3, 0]), pt(&[0, 1, 1]), pt(&[0, 2, 3])];
        let x = tconv_combination(&[rat(0), rat(2), rat(-1)], &vs).unwrap();
        let (inside, coeffs) = membership(&x, &vs).unwrap();
        assert!(inside);
        let again = tconv_combination(&coeffs, &vs).unwrap();
        assert_eq!(again, x);
        // A point well outside.
        let (outside, _) = membership(&pt(&[0, 100, 0]), &vs).unwrap();
        assert!(!outside);
    }

    #[test]
    fn segments_are_short_polylines() {
        let p = pt(&[0, 0, 0]);
        let q = pt(&[0, 2, 5]);
        let line = tropical_segment(&p, &q).unwrap();
        assert_eq!(line.first(), Some(&p));
        assert_eq!(line.last(), Some(&q));
        assert!(line.len() <= 3);
        // Every reported breakpoint is in the hull of the endpoints.
        for b in &line {
            let (inside, _) = membership(b, &[p.clone(), q.clone()]).unwrap();
            assert!(inside, "breakpoint {b} escaped the segment");
        }
        assert_eq!(tropical_segment(&p, &p).unwrap(), vec![p.clone()]);
    }

    #[test]
    fn tropical_det_is_best_assignment() {
        let m = TropicalMatrix::new(vec![
            vec![rat(0), rat(1)],
            vec![rat(0), rat(10)],
        ])
        .unwrap();
        // max(0 + 10, 1 + 0) = 10, via the identity permutation.
        assert_eq!(tropical_det(&m), rat(10));
        let (sign, perm) = tropical_sign(&m);
        assert_eq!(sign, Sign::Positive);
        assert_eq!(perm, Some(vec![0, 1]));
    }

    #[test]
    fn singular_matrices_have_sign_zero() {
        let m = TropicalMatrix::new(vec![
            vec![rat(0), rat(0)],
            vec![rat(0), rat(0)],
        ])
        .unwrap();
        assert_eq!(tropical_det(&m), rat(0));
        assert_eq!(tropical_sign(&m).0, Sign::Zero);
    }

    #[test]
    fn rational_entries_are_fine() {
        let m = TropicalMatrix::new(vec![
            vec![ratio(1, 2), rat(0)],
            vec![rat(0), ratio(1, 3)],
        ])
        .unwrap();
        assert_eq!(tropical_det(&m), ratio(5, 6));
        assert_eq!(tropical_sign(&m).0, Sign::Positive);
    }

    #[test]
    fn chirotope_of_the_triangle_fixture() {
        let vs = [pt(&[0, 3, 0]), pt(&[0, 1, 1]), pt(&[0, 2, 3])];
        let chi = chirotope(&vs).unwrap();
        assert_eq!(chi.len(), 1);
        assert_eq!(chi[0].0, vec![0, 1, 2]);
        assert_ne!(chi[0].1, Sign::Zero);
        assert!(is_general_position(&vs).unwrap());
    }

    #[test]
    fn duplicated_points_break_general_position() {
        let vs = [pt(&[0, 3, 0]), pt(&[0, 3, 0]), pt(&[0, 1, 1])];
        assert!(!is_general_position(&vs).unwrap());
    }

    #[test]
    fn parallel_and_sequential_chirotopes_agree() {
        let vs = [
            pt(&[0, 2, 0, 1]),
            pt(&[0, 2, 1, 0]),
            pt(&[0, 1, 2, 5]),
            pt(&[0, 1, 3, 4]),
            pt(&[0, 1, 4, 3]),
            pt(&[0, 1, 5, 2]),
        ];
        assert_eq!(chirotope(&vs).unwrap(), chirotope_seq(&vs).unwrap());
    }
}
