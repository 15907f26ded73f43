//! Worked example configurations used across the test suites and docs.
//!
//! Each fixture is a small, fully pinned-down input whose geometry has been
//! worked out by hand: point configurations in low-dimensional tropical
//! projective spaces and a few monomial ideals.  Tests freeze the expected
//! combinatorics of these and cross-check every module against them.

use crate::tropical::TropicalPoint;

/// Vertex labels for [`model`] and other six-point configurations.
pub const LABELS: [&str; 9] = ["A", "B", "C", "D", "E", "F", "G", "H", "I"];

fn points(rows: &[&[i64]]) -> Vec<TropicalPoint> {
    rows.iter().map(|r| TropicalPoint::from_ints(r)).collect()
}

/// Three points spanning a tropical triangle in `TP^2`.
pub fn triangle() -> Vec<TropicalPoint> {
    points(&[&[0, 3, 0], &[0, 1, 1], &[0, 2, 3]])
}

/// A three-point configuration in `TP^2` whose edges have hand-computed
/// direction pairs.
pub fn small_triangle() -> Vec<TropicalPoint> {
    points(&[&[0, 0, 2], &[0, 0, 3], &[0, 1, 0]])
}

/// The six-point configuration in `TP^3` (vertices A–F) whose polytope is a
/// flattened-pocket surface: a hexagonal shell with two square flaps.
pub fn model() -> Vec<TropicalPoint> {
    points(&[
        &[0, 2, 0, 1], // A
        &[0, 2, 1, 0], // B
        &[0, 1, 2, 5], // C
        &[0, 1, 3, 4], // D
        &[0, 1, 4, 3], // E
        &[0, 1, 5, 2], // F
    ])
}

/// A nine-point configuration in `TP^3` (vertices A–I) arranged in three
/// tiers; its outer-hull lattice has a maximal chain witnessing
/// non-gradedness.
pub fn three_tier() -> Vec<TropicalPoint> {
    points(&[
        &[0, 3, 0, 1], // A
        &[0, 3, 1, 0], // B
        &[0, 2, 2, 4], // C
        &[0, 2, 3, 3], // D
        &[0, 2, 4, 2], // E
        &[0, 1, 5, 8], // F
        &[0, 1, 6, 7], // G
        &[0, 1, 7, 6], // H
        &[0, 1, 8, 5], // I
    ])
}

/// Five points in `TP^3` (vertices A–E) forming a tropical cube with a
/// pendant edge hanging off one vertex.
pub fn cube_with_pendant() -> Vec<TropicalPoint> {
    points(&[
        &[0, 1, 0, 1], // A
        &[0, 0, 1, 1], // B
        &[0, 0, 0, 2], // C
        &[0, 0, 0, 1], // D
        &[0, 1, 1, 0], // E
    ])
}

/// The six 0/1-vectors with exactly two ones, as points of `TP^3`: the
/// second hypersimplex.  Every lift is combinatorially an octahedron.
pub fn hypersimplex_2_4() -> Vec<TropicalPoint> {
    points(&[
        &[1, 1, 0, 0],
        &[1, 0, 1, 0],
        &[1, 0, 0, 1],
        &[0, 1, 1, 0],
        &[0, 1, 0, 1],
        &[0, 0, 1, 1],
    ])
}

/// A monomial ideal given by the exponent vectors of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFixture {
    pub nvars: usize,
    pub generators: Vec<Vec<u64>>,
}

/// `⟨x, y⟩` in two variables.
pub fn ideal_xy() -> IdealFixture {
    IdealFixture {
        nvars: 2,
        generators: vec![vec![1, 0], vec![0, 1]],
    }
}

/// `⟨x⁴, x³y, xy³, y⁴⟩`: four generators in two variables with first
/// syzygies in three degrees.
pub fn ideal_four_gens() -> IdealFixture {
    IdealFixture {
        nvars: 2,
        generators: vec![vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]],
    }
}

/// `⟨x²z, x²y, xy²z⁵, xy³z⁴, xy⁴z³, xy⁵z²⟩`: the three-variable ideal whose
/// tropicalization is the six-point [`model`] configuration.
pub fn model_ideal() -> IdealFixture {
    IdealFixture {
        nvars: 3,
        generators: vec![
            vec![2, 0, 1],
            vec![2, 1, 0],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 4, 3],
            vec![1, 5, 2],
        ],
    }
}

/// Five generators in three variables, all sharing maximum coordinate 4;
/// one explicit lift puts all five on a single pentagon facet.
pub fn ideal_pentagon() -> IdealFixture {
    IdealFixture {
        nvars: 3,
        generators: vec![
            vec![4, 2, 0],
            vec![4, 0, 2],
            vec![2, 4, 0],
            vec![0, 4, 2],
            vec![2, 0, 4],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::is_general_position;

    #[test]
    fn fixture_dimensions_are_consistent() {
        assert!(triangle().iter().all(|p| p.dim() == 3));
        assert!(small_triangle().iter().all(|p| p.dim() == 3));
        assert!(model().iter().all(|p| p.dim() == 4));
        assert!(three_tier().iter().all(|p| p.dim() == 4));
        assert!(cube_with_pendant().iter().all(|p| p.dim() == 4));
        assert!(hypersimplex_2_4().iter().all(|p| p.dim() == 4));
        assert_eq!(model().len(), 6);
        assert_eq!(three_tier().len(), 9);
    }

    #[test]
    fn hypersimplex_points_are_canonicalized() {
        let pts = hypersimplex_2_4();
        assert!(pts.iter().all(|p| p.coords()[0] == crate::rat(0)));
        // (1,1,0,0) and (0,0,-1,-1) name the same projective point.
        assert_eq!(pts[0], TropicalPoint::from_ints(&[0, 0, -1, -1]));
    }

    #[test]
    fn triangle_is_in_general_position() {
        assert!(is_general_position(&triangle()).unwrap());
    }

    #[test]
    fn ideal_fixtures_match_their_tropical_points() {
        let ideal = model_ideal();
        assert_eq!(ideal.generators.len(), model().len());
        for (exp, point) in ideal.generators.iter().zip(model()) {
            let coords: Vec<i64> = std::iter::once(0)
                .chain(exp.iter().map(|&e| e as i64))
                .collect();
            assert_eq!(point, TropicalPoint::from_ints(&coords));
        }
        assert!(ideal_pentagon()
            .generators
            .iter()
            .all(|g| g.iter().copied().max() == Some(4)));
    }
}
