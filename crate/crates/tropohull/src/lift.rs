//! Lifting tropical point configurations to Puiseux space and mapping the
//! resulting polytope geometry back down.
//!
//! A lift replaces each tropical point by a vector of Puiseux numbers whose
//! componentwise degrees reproduce the point and whose leading coefficients
//! are all positive.  The convex hull of the lifted vectors is an ordinary
//! polytope over the field; its faces push forward through the degree map to
//! pieces of the tropical polytope, giving a systematic supply of candidate
//! face structures downstairs.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covector::CellComplex;
use crate::field::{OrderedField, Sign};
use crate::hull::{
    affine_hull, face_lattice, orientation, span_pivots, FaceLattice, FaceRecord, Functional,
    GeneratorSet,
};
use crate::puiseux::{PuiseuxNumber, PuiseuxPoly};
use crate::tropical::{membership, TropicalHalfspace, TropicalHyperplane, TropicalPoint};
use crate::{rat, ratio, Error, Rat, Result};

/// How a lift was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftSpec {
    /// Plain monomial lift `t^{v_ij}`.
    Hull,
    /// Randomly perturbed lift, reproducible from the seed.
    Generic { seed: u64 },
    /// Caller-supplied vectors.
    Explicit,
}

/// A lift of a tropical configuration into `K^d`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub source: Vec<TropicalPoint>,
    pub vectors: Vec<Vec<PuiseuxNumber>>,
    pub spec: LiftSpec,
}

/// Componentwise degree of a vector with nonzero entries, canonicalized.
pub fn degree_point(x: &[PuiseuxNumber]) -> Result<TropicalPoint> {
    let mut coords = Vec::with_capacity(x.len());
    for v in x {
        match v.degree() {
            Some(d) => coords.push(d),
            None => {
                return Err(Error::InvalidArgument(
                    "degree of a zero coordinate is undefined".into(),
                ))
            }
        }
    }
    TropicalPoint::new(coords)
}

/// The tropical halfspace cut out by a homogeneous functional with
/// coefficients in `K`:  apex `-deg(f_i)` (infinite where `f_i = 0`) and
/// favoured sectors where `f_i > 0`.
pub fn halfspace_image(f: &Functional<PuiseuxNumber>) -> Result<TropicalHalfspace> {
    let mut apex = Vec::with_capacity(f.coeffs.len());
    let mut sectors = BTreeSet::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        match c.degree() {
            Some(d) => {
                apex.push(Some(-d));
                if c.sign() == Sign::Positive {
                    sectors.insert(i);
                }
            }
            None => apex.push(None),
        }
    }
    let hyperplane = TropicalHyperplane::new(apex)?;
    TropicalHalfspace::new(hyperplane, sectors)
}

impl Lift {
    /// The monomial lift: `vectors[i][j] = t^{v_ij}`.
    pub fn hull(points: &[TropicalPoint]) -> Result<Lift> {
        let vectors = points
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|e| PuiseuxNumber::monomial(rat(1), e.clone()))
                    .collect()
            })
            .collect();
        let lift = Lift {
            source: points.to_vec(),
            vectors,
            spec: LiftSpec::Hull,
        };
        lift.validate()?;
        Ok(lift)
    }

    /// A perturbed lift `t^{v_ij} + c_ij t^{v_ij - 1/2}` with random
    /// `c_ij ∈ (0,1)`, resampled until every maximal generator subset has
    /// nonzero orientation over `K`.
    ///
    /// All perturbations sit at the same offset `1/2` below the leading
    /// exponent, so every exponent arising in downstream arithmetic stays on
    /// the half-integer grid and polynomials keep few distinct terms; the
    /// genericity comes entirely from the random coefficients, and is
    /// certified (not assumed) by the orientation check.
    pub fn generic(points: &[TropicalPoint], seed: u64) -> Result<Lift> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const ATTEMPTS: usize = 64;
        for _ in 0..ATTEMPTS {
            let vectors: Vec<Vec<PuiseuxNumber>> = points
                .iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .map(|e| {
                            let c = ratio(rng.gen_range(1..64), 64);
                            let lead = PuiseuxPoly::monomial(rat(1), e.clone());
                            let tail = PuiseuxPoly::monomial(c, e - ratio(1, 2));
                            PuiseuxNumber::from_poly(lead.add(&tail))
                        })
                        .collect()
                })
                .collect();
            let lift = Lift {
                source: points.to_vec(),
                vectors,
                spec: LiftSpec::Generic { seed },
            };
            lift.validate()?;
            if lift.is_nondegenerate()? {
                return Ok(lift);
            }
        }
        Err(Error::InvariantViolation(format!(
            "no nondegenerate lift found in {ATTEMPTS} attempts for seed {seed}"
        )))
    }

    /// Wrap caller-supplied vectors, enforcing the lift invariants.
    pub fn explicit(points: &[TropicalPoint], vectors: Vec<Vec<PuiseuxNumber>>) -> Result<Lift> {
        let lift = Lift {
            source: points.to_vec(),
            vectors,
            spec: LiftSpec::Explicit,
        };
        lift.validate()?;
        Ok(lift)
    }

    /// Check the defining invariants: degrees reproduce the source points and
    /// every coordinate has positive leading coefficient.
    pub fn validate(&self) -> Result<()> {
        if self.source.len() != self.vectors.len() {
            return Err(Error::Dimension(
                "lift must have one vector per source point".into(),
            ));
        }
        if self.source.is_empty() {
            return Err(Error::EmptyInput("empty lift".into()));
        }
        for (p, v) in self.source.iter().zip(self.vectors.iter()) {
            if p.dim() != v.len() {
                return Err(Error::Dimension(
                    "lift vector length differs from point dimension".into(),
                ));
            }
            for (e, x) in p.coords().iter().zip(v.iter()) {
                match x.degree() {
                    Some(d) if d == *e => {}
                    _ => {
                        return Err(Error::InvariantViolation(format!(
                            "lift coordinate {x} does not have degree {e}"
                        )))
                    }
                }
                if x.leading_coeff().sign() != Sign::Positive {
                    return Err(Error::InvariantViolation(format!(
                        "lift coordinate {x} has a nonpositive leading coefficient"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Ambient dimension `d` of the lifted vectors.
    pub fn ambient(&self) -> usize {
        self.source[0].dim()
    }

    /// Affine points in `K^{d-1}`: each coned vector divided by its first
    /// coordinate (which has degree 0 by canonicality).
    pub fn dehomogenized(&self) -> Vec<Vec<PuiseuxNumber>> {
        self.vectors
            .iter()
            .map(|v| {
                let first = v[0].clone();
                v[1..]
                    .iter()
                    .map(|x| x.clone() / first.clone())
                    .collect()
            })
            .collect()
    }

    /// The generator set of the lift polytope.  The coned vectors already
    /// are homogeneous coordinates (their first entry has degree `0` and a
    /// positive leading coefficient), so they go in unchanged — polynomial
    /// entries keep the downstream hull arithmetic far cheaper than the
    /// quotients that dividing through by the first coordinate would create.
    pub fn generator_set(&self) -> Result<GeneratorSet<PuiseuxNumber>> {
        GeneratorSet::from_cone_points(&self.vectors)
    }

    /// Deterministic insertion order for hull computations: generators
    /// sorted by the lexicographic order of their degree vectors.
    pub fn insertion_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.source.len()).collect();
        order.sort_by(|&a, &b| {
            self.source[a]
                .coords()
                .cmp(self.source[b].coords())
                .then(a.cmp(&b))
        });
        order
    }

    /// All maximal generator subsets have nonzero orientation over `K`.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        let gens = self.generator_set()?;
        let (dim, basis) = affine_hull(&gens);
        let need = (dim + 1) as usize;
        if self.len() < need {
            return Ok(true);
        }
        let pivots = span_pivots(&basis);
        for subset in (0..self.len()).combinations(need) {
            let rows: Vec<Vec<PuiseuxNumber>> = subset
                .iter()
                .map(|&i| {
                    let g = &gens.homogeneous()[i];
                    pivots.iter().map(|&c| g[c].clone()).collect()
                })
                .collect();
            if orientation(&rows)? == Sign::Zero {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A lift together with the face lattice of its polytope.
#[derive(Clone, Debug)]
pub struct AnalyzedLift {
    pub lift: Lift,
    pub lattice: FaceLattice<PuiseuxNumber>,
}

/// A face of a lift whose degree image keeps full dimension.
#[derive(Clone, Debug)]
pub struct Fatom {
    pub k: i64,
    /// Generator indices of the lift face (also source point indices).
    pub generators: BTreeSet<usize>,
    /// The image downstairs, as cell ids of the covector decomposition.
    pub image_cells: BTreeSet<usize>,
}

impl AnalyzedLift {
    pub fn analyze(lift: Lift) -> Result<AnalyzedLift> {
        let gens = lift.generator_set()?;
        let order = lift.insertion_order();
        let lattice = face_lattice(&gens, Some(&order))?;
        Ok(AnalyzedLift { lift, lattice })
    }

    /// Tropical image of the sub-polytope spanned by a generator subset, as
    /// the set of decomposition cells it covers.
    pub fn image_cells(
        &self,
        generators: &BTreeSet<usize>,
        complex: &CellComplex,
    ) -> Result<BTreeSet<usize>> {
        let sub: Vec<TropicalPoint> = generators
            .iter()
            .map(|&i| self.lift.source[i].clone())
            .collect();
        if sub.is_empty() {
            return Ok(BTreeSet::new());
        }
        let mut out = BTreeSet::new();
        for (id, cell) in complex.cells.iter().enumerate() {
            let (inside, _) = membership(&cell.witness, &sub)?;
            if inside {
                out.insert(id);
            }
        }
        Ok(out)
    }

    /// Dimension of a cell union: the largest member dimension.
    pub fn image_dim(cells: &BTreeSet<usize>, complex: &CellComplex) -> i64 {
        cells
            .iter()
            .map(|&id| complex.cells[id].dim)
            .max()
            .unwrap_or(-1)
    }

    /// The `k`-faces of the lift whose tropical image has dimension exactly
    /// `k`.
    pub fn fatoms(&self, k: i64, complex: &CellComplex) -> Result<Vec<Fatom>> {
        let mut out = Vec::new();
        for face in &self.lattice.faces {
            if face.dim != k || face.generators.is_empty() {
                continue;
            }
            let image = self.image_cells(&face.generators, complex)?;
            if Self::image_dim(&image, complex) == k {
                out.push(Fatom {
                    k,
                    generators: face.generators.clone(),
                    image_cells: image,
                });
            }
        }
        Ok(out)
    }

    /// Union of the facet images: the boundary of the tropical polytope,
    /// independent of which lift produced it.
    pub fn boundary_image(&self, complex: &CellComplex) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for facet in self.lattice.facet_records() {
            out.extend(self.image_cells(&facet.generators, complex)?);
        }
        Ok(out)
    }

    /// Halfspace images of all facets.
    pub fn facet_halfspaces(&self) -> Result<Vec<TropicalHalfspace>> {
        self.lattice
            .facet_records()
            .iter()
            .map(|f| {
                halfspace_image(f.functional.as_ref().expect("facets carry functionals"))
            })
            .collect()
    }

    /// Facet records, convenience passthrough.
    pub fn facets(&self) -> Vec<&FaceRecord<PuiseuxNumber>> {
        self.lattice.facet_records()
    }
}

/// Decide interiority of `x` in a full-dimensional tropical polytope by the
/// halfspace images of a generic lift: interior points are strictly inside
/// every one of them.
pub fn interior_by_halfspaces(
    analyzed: &AnalyzedLift,
    complex: &CellComplex,
    x: &TropicalPoint,
) -> Result<bool> {
    let full = complex.dim();
    let polytope_dim = complex
        .bounded_cells()
        .into_iter()
        .map(|i| complex.cells[i].dim)
        .max()
        .unwrap_or(-1);
    if polytope_dim != full {
        return Err(Error::InvalidArgument(format!(
            "interiority by halfspaces needs a full-dimensional polytope, got dimension {polytope_dim} in a {full}-dimensional space"
        )));
    }
    for hs in analyzed.facet_halfspaces()? {
        if hs.position(x)? != crate::tropical::HalfspacePosition::Interior {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lift a tropical scalar to the monomial `t^c`.
pub fn lift_scalar(c: &Rat) -> PuiseuxNumber {
    PuiseuxNumber::monomial(rat(1), c.clone())
}

/// Componentwise-positive linear combination of lift vectors.
pub fn combine_vectors(
    coeffs: &[PuiseuxNumber],
    vectors: &[Vec<PuiseuxNumber>],
) -> Result<Vec<PuiseuxNumber>> {
    if coeffs.len() != vectors.len() || vectors.is_empty() {
        return Err(Error::Dimension("combination shape mismatch".into()));
    }
    let d = vectors[0].len();
    let mut acc = vec![PuiseuxNumber::zero(); d];
    for (c, v) in coeffs.iter().zip(vectors.iter()) {
        for (a, x) in acc.iter_mut().zip(v.iter()) {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covector::decompose;
    use crate::fixtures;
    use crate::hull::orientation_in_hull;
    use crate::tropical::{tconv_combination, tropical_sign, TropicalMatrix};

    fn parse(s: &str) -> PuiseuxNumber {
        s.parse().unwrap()
    }

    #[test]
    fn hull_lift_uses_plain_monomials() {
        let lift = Lift::hull(&fixtures::triangle()).unwrap();
        assert_eq!(lift.vectors[0], vec![parse("1"), parse("t^3"), parse("1")]);
        let model = Lift::hull(&fixtures::model()).unwrap();
        assert_eq!(
            model.vectors[0],
            vec![parse("1"), parse("t^2"), parse("1"), parse("t")]
        );
        for lift in [&lift, &model] {
            for (p, v) in lift.source.iter().zip(lift.vectors.iter()) {
                assert_eq!(&degree_point(v).unwrap(), p);
            }
        }
    }

    #[test]
    fn degree_point_reads_leading_behaviour() {
        let v = vec![parse("t + 1"), parse("t - 1"), parse("2")];
        assert_eq!(
            degree_point(&v).unwrap(),
            TropicalPoint::from_ints(&[0, 0, -1])
        );
        assert!(degree_point(&[PuiseuxNumber::zero(), parse("t")]).is_err());
    }

    #[test]
    fn halfspace_image_handles_zero_coefficients() {
        let f = Functional::new(vec![parse("1"), parse("-1"), parse("0"), parse("0")]);
        let hs = halfspace_image(&f).unwrap();
        assert_eq!(
            hs.hyperplane.apex(),
            &[Some(rat(0)), Some(rat(0)), None, None]
        );
        assert_eq!(hs.sectors, BTreeSet::from([0]));
    }

    #[test]
    fn model_hull_lift_has_the_hand_computed_facet() {
        let analyzed = AnalyzedLift::analyze(Lift::hull(&fixtures::model()).unwrap()).unwrap();
        assert_eq!(analyzed.lattice.dim, 3);
        // The facet through A, B, D, E.
        let abde: BTreeSet<usize> = [0, 1, 3, 4].into_iter().collect();
        let facet = analyzed
            .facets()
            .into_iter()
            .find(|f| f.generators == abde)
            .expect("ABDE is a facet of the monomial lift");
        let expected = [
            -parse("t^6 + t^5 - t^2 - t"),
            parse("t^4 + t^3 - t - 1"),
            parse("t^2 - t"),
            parse("t^2 - t"),
        ];
        let got = &facet.functional.as_ref().unwrap().coeffs;
        assert_eq!(got.len(), 4);
        // Proportionality with matching orientation.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    expected[i].clone() * got[j].clone(),
                    expected[j].clone() * got[i].clone(),
                    "coefficient ratio mismatch at ({i},{j})"
                );
            }
            assert_ne!(expected[i].sign().times(got[i].sign()), Sign::Negative);
        }

        // Its halfspace image: apex (0,2,4,4), favouring the last three sectors.
        let hs = halfspace_image(facet.functional.as_ref().unwrap()).unwrap();
        assert_eq!(
            hs.hyperplane.apex(),
            &[Some(rat(0)), Some(rat(2)), Some(rat(4)), Some(rat(4))]
        );
        assert_eq!(hs.sectors, BTreeSet::from([1, 2, 3]));

        // The companion facet through A, B, C, F: apex (0,2,5,5), sector {0}.
        let abcf: BTreeSet<usize> = [0, 1, 2, 5].into_iter().collect();
        let facet = analyzed
            .facets()
            .into_iter()
            .find(|f| f.generators == abcf)
            .expect("ABCF is a facet of the monomial lift");
        let hs = halfspace_image(facet.functional.as_ref().unwrap()).unwrap();
        assert_eq!(
            hs.hyperplane.apex(),
            &[Some(rat(0)), Some(rat(2)), Some(rat(5)), Some(rat(5))]
        );
        assert_eq!(hs.sectors, BTreeSet::from([0]));
    }

    #[test]
    fn hypersimplex_hull_lift_is_an_octahedron() {
        let analyzed =
            AnalyzedLift::analyze(Lift::hull(&fixtures::hypersimplex_2_4()).unwrap()).unwrap();
        let (dim, _) = affine_hull(&analyzed.lift.generator_set().unwrap());
        assert_eq!(dim, 3);
        assert_eq!(analyzed.lattice.f_vector(), vec![6, 12, 8]);
        for f in analyzed.facets() {
            assert_eq!(f.generators.len(), 3);
        }
    }

    #[test]
    fn generic_lifts_are_deterministic_and_nondegenerate() {
        let points = fixtures::triangle();
        let a = Lift::generic(&points, 7).unwrap();
        let b = Lift::generic(&points, 7).unwrap();
        assert_eq!(a.vectors, b.vectors);
        assert!(a.is_nondegenerate().unwrap());
        let c = Lift::generic(&points, 8).unwrap();
        assert_ne!(a.vectors, c.vectors);
    }

    #[test]
    fn generic_model_lift_is_simplicial() {
        let analyzed =
            AnalyzedLift::analyze(Lift::generic(&fixtures::model(), 1).unwrap()).unwrap();
        assert_eq!(analyzed.lattice.dim, 3);
        for f in analyzed.facets() {
            assert_eq!(f.generators.len(), 3, "nonsimplicial facet {:?}", f.generators);
        }
    }

    #[test]
    fn combinations_with_positive_coefficients_project_to_tropical_ones() {
        use rand::{Rng, SeedableRng};
        let points = fixtures::model();
        let hull = Lift::hull(&points).unwrap();
        let generic = Lift::generic(&points, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for lift in [&hull, &generic] {
            for _ in 0..25 {
                let coeffs: Vec<Rat> =
                    (0..points.len()).map(|_| rat(rng.gen_range(-6..=6))).collect();
                let lifted: Vec<PuiseuxNumber> = coeffs.iter().map(lift_scalar).collect();
                let combo = combine_vectors(&lifted, &lift.vectors).unwrap();
                let expected = tconv_combination(&coeffs, &points).unwrap();
                assert_eq!(degree_point(&combo).unwrap(), expected);
            }
        }
    }

    #[test]
    fn lift_orientations_refine_tropical_signs() {
        for points in [fixtures::triangle(), fixtures::model()] {
            let d = points[0].dim();
            for lift in [
                Lift::hull(&points).unwrap(),
                Lift::generic(&points, 5).unwrap(),
            ] {
                let gens = lift.generator_set().unwrap();
                for subset in (0..points.len()).combinations(d) {
                    let m = TropicalMatrix::from_columns(&points, &subset).unwrap();
                    let (tsign, _) = tropical_sign(&m);
                    if tsign == Sign::Zero {
                        continue;
                    }
                    assert_eq!(
                        orientation_in_hull(&gens, &subset).unwrap(),
                        tsign,
                        "orientation of {subset:?} disagrees"
                    );
                }
            }
        }
    }

    #[test]
    fn boundary_image_matches_the_complex_boundary_for_every_lift() {
        let points = fixtures::triangle();
        let complex = decompose(&points).unwrap();
        let expected = complex.boundary_cells();
        for lift in [
            Lift::hull(&points).unwrap(),
            Lift::generic(&points, 11).unwrap(),
            Lift::generic(&points, 12).unwrap(),
        ] {
            let analyzed = AnalyzedLift::analyze(lift).unwrap();
            assert_eq!(analyzed.boundary_image(&complex).unwrap(), expected);
        }
    }

    #[test]
    fn vertex_fatoms_are_the_extreme_points() {
        let points = fixtures::triangle();
        let complex = decompose(&points).unwrap();
        let analyzed = AnalyzedLift::analyze(Lift::hull(&points).unwrap()).unwrap();
        let atoms = analyzed.fatoms(0, &complex).unwrap();
        assert_eq!(atoms.len(), 3);
        for atom in &atoms {
            assert_eq!(atom.generators.len(), 1);
            assert_eq!(atom.image_cells.len(), 1);
            let cell = &complex.cells[*atom.image_cells.first().unwrap()];
            assert_eq!(cell.dim, 0);
        }
    }

    #[test]
    fn interiority_by_generic_halfspaces_matches_cell_structure() {
        let points = fixtures::triangle();
        let complex = decompose(&points).unwrap();
        let analyzed = AnalyzedLift::analyze(Lift::generic(&points, 2).unwrap()).unwrap();
        let boundary = complex.boundary_cells();
        for (id, cell) in complex.cells.iter().enumerate() {
            let interior =
                interior_by_halfspaces(&analyzed, &complex, &cell.witness).unwrap();
            let expected = cell.bounded && !boundary.contains(&id);
            assert_eq!(
                interior, expected,
                "interiority mismatch on cell {id} ({})",
                crate::covector::covector_string(&cell.covector)
            );
        }
    }
}
