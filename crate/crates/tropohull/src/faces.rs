//! Boundary faces of tropical polytopes.
//!
//! Tropical polytopes admit two rival notions of "facet", and this module
//! implements both together with the machinery needed to compare them.
//!
//! The first notion is combinatorial: a facet certificate records an
//! inclusion-maximal set of extreme points lying on the apex hyperplane of a
//! closed tropical halfspace that contains the whole configuration.  Those
//! certificates generate an intersection lattice ([`j_face_lattice`]) which
//! behaves like a classical face lattice in general position but can fail to
//! be graded otherwise.
//!
//! The second notion is geometric and goes through lifts: each face of a lift
//! polytope whose degree image keeps full dimension and stays on the boundary
//! contributes a boundary piece, and a *face* of the tropical polytope is an
//! inclusion-minimal set of boundary cells that every sampled lift can write
//! as a union of such pieces ([`faces`]).  Faces of different lifts subdivide
//! the boundary differently, so the minimal common refinements are found by a
//! seeded fixpoint search.  Intersections of faces are computed upstairs in
//! each lift ([`face_intersection`]), outward directions come from supporting
//! functionals of realizing lifts ([`direction`]), and the sign vectors swept
//! out between two adjacent facets are enumerated exactly
//! ([`edge_sign_vectors`]).

use std::collections::{BTreeMap, BTreeSet};

use crate::covector::{decompose, CellComplex};
use crate::field::{OrderedField, Sign};
use crate::homology::{order_complex, reduced_homology, HomologyGroup};
use crate::lift::AnalyzedLift;
use crate::puiseux::PuiseuxNumber;
use crate::tropical::{
    membership, tropical_segment, TropicalHalfspace, TropicalHyperplane, TropicalPoint,
};
use crate::{par, Error, Rat, Result};

/// Indices of the points that are not in the hull of the other points.
///
/// A duplicated coordinate vector is reported once, at its first index.
pub fn extreme_points(points: &[TropicalPoint]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("extreme points of no points".into()));
    }
    let mut out = Vec::new();
    for i in 0..points.len() {
        if points[..i].contains(&points[i]) {
            continue;
        }
        let others: Vec<TropicalPoint> = points
            .iter()
            .enumerate()
            .filter(|(j, p)| *j != i && **p != points[i])
            .map(|(_, p)| p.clone())
            .collect();
        if others.is_empty() || !membership(&points[i], &others)?.0 {
            out.push(i);
        }
    }
    Ok(out)
}

/// A facet certificate: an inclusion-maximal set of extreme points on the
/// apex hyperplane of a closed halfspace containing every input point.
#[derive(Clone, Debug)]
pub struct JFacet {
    /// Extreme points lying on the boundary of the witness halfspace.
    pub vertex_indices: BTreeSet<usize>,
    /// A canonical certifying halfspace: apex and favoured sectors are
    /// lexicographically smallest among all certificates for this vertex set.
    pub witness: TropicalHalfspace,
}

/// All facet certificates of a configuration, sorted by vertex set.
///
/// Candidate apexes are the pseudovertices of the covector decomposition;
/// for each apex every nonempty proper sector subset is tried.  A candidate
/// vertex set survives only if it is inclusion-maximal among all certified
/// sets.
pub fn j_facets(points: &[TropicalPoint]) -> Result<Vec<JFacet>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("facet certificates of no points".into()));
    }
    let d = points[0].dim();
    if d > 20 {
        return Err(Error::InvalidArgument(format!(
            "certificate search enumerates 2^{d} sector subsets; refusing beyond 2^20"
        )));
    }
    let extreme: BTreeSet<usize> = extreme_points(points)?.into_iter().collect();
    let complex = decompose(points)?;

    // Certified vertex set -> all (apex coordinates, sectors) certificates.
    let mut by_set: BTreeMap<BTreeSet<usize>, BTreeSet<(Vec<Rat>, BTreeSet<usize>)>> =
        BTreeMap::new();
    for pv in complex.pseudovertices() {
        let apex = &complex.cells[pv].witness;
        let rel: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| {
                (0..d)
                    .map(|j| &p.coords()[j] - &apex.coords()[j])
                    .collect()
            })
            .collect();
        let full: u32 = (1 << d) - 1;
        for mask in 1..full {
            let mut boundary = BTreeSet::new();
            let mut inside = true;
            for (pi, w) in rel.iter().enumerate() {
                let mut va: Option<&Rat> = None;
                let mut vc: Option<&Rat> = None;
                for (j, wj) in w.iter().enumerate() {
                    let slot = if mask >> j & 1 == 1 { &mut va } else { &mut vc };
                    if slot.map_or(true, |m| wj > m) {
                        *slot = Some(wj);
                    }
                }
                let (va, vc) = (va.unwrap(), vc.unwrap());
                if va < vc {
                    inside = false;
                    break;
                }
                if va == vc && extreme.contains(&pi) {
                    boundary.insert(pi);
                }
            }
            if inside && !boundary.is_empty() {
                let sectors: BTreeSet<usize> = (0..d).filter(|j| mask >> j & 1 == 1).collect();
                by_set
                    .entry(boundary)
                    .or_default()
                    .insert((apex.coords().to_vec(), sectors));
            }
        }
    }

    let sets: Vec<BTreeSet<usize>> = by_set.keys().cloned().collect();
    let mut out = Vec::new();
    for s in &sets {
        if sets.iter().any(|t| s != t && s.is_subset(t)) {
            continue;
        }
        let (apex, sectors) = by_set[s].iter().next().expect("nonempty certificate set");
        let hyperplane = TropicalHyperplane::at_point(&TropicalPoint::new(apex.clone())?);
        out.push(JFacet {
            vertex_indices: s.clone(),
            witness: TropicalHalfspace::new(hyperplane, sectors.clone())?,
        });
    }
    Ok(out)
}

/// The lattice generated by facet certificates under intersection, completed
/// by the empty set and the full set of extreme points.
#[derive(Clone, Debug)]
pub struct JFaceLattice {
    /// All elements, sorted by cardinality then lexicographically.
    pub elements: Vec<BTreeSet<usize>>,
    /// The generating facet vertex sets.
    pub facet_sets: Vec<BTreeSet<usize>>,
    /// All extreme point indices.
    pub top: BTreeSet<usize>,
}

impl JFaceLattice {
    /// Close the facet sets under pairwise intersection and adjoin bottom and
    /// top.
    pub fn from_facet_sets(facet_sets: Vec<BTreeSet<usize>>, top: BTreeSet<usize>) -> Self {
        let mut elems: BTreeSet<BTreeSet<usize>> = facet_sets.iter().cloned().collect();
        elems.insert(top.clone());
        elems.insert(BTreeSet::new());
        loop {
            let snapshot: Vec<BTreeSet<usize>> = elems.iter().cloned().collect();
            let before = elems.len();
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    elems.insert(&snapshot[i] & &snapshot[j]);
                }
            }
            if elems.len() == before {
                break;
            }
        }
        let mut elements: Vec<BTreeSet<usize>> = elems.into_iter().collect();
        elements.sort_by_key(|e| (e.len(), e.clone()));
        JFaceLattice {
            elements,
            facet_sets,
            top,
        }
    }

    pub fn contains(&self, s: &BTreeSet<usize>) -> bool {
        self.elements.binary_search_by_key(&(s.len(), s.clone()), |e| (e.len(), e.clone())).is_ok()
    }

    /// Minimal nonempty elements.
    pub fn atoms(&self) -> Vec<&BTreeSet<usize>> {
        self.elements
            .iter()
            .filter(|e| !e.is_empty())
            .filter(|e| {
                !self
                    .elements
                    .iter()
                    .any(|f| !f.is_empty() && f.len() < e.len() && f.is_subset(e))
            })
            .collect()
    }

    /// Lengths of all maximal chains from the empty set to the top.
    fn chain_lengths(&self) -> BTreeSet<usize> {
        let n = self.elements.len();
        let mut lengths: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for idx in (0..n).rev() {
            let above: Vec<usize> = (idx + 1..n)
                .filter(|&j| {
                    self.elements[idx].len() < self.elements[j].len()
                        && self.elements[idx].is_subset(&self.elements[j])
                })
                .collect();
            let covers: Vec<usize> = above
                .iter()
                .copied()
                .filter(|&c| {
                    !above.iter().any(|&m| {
                        m != c
                            && self.elements[m].len() < self.elements[c].len()
                            && self.elements[m].is_subset(&self.elements[c])
                    })
                })
                .collect();
            if covers.is_empty() {
                lengths[idx].insert(0);
            } else {
                for c in covers {
                    let ls: Vec<usize> = lengths[c].iter().map(|l| l + 1).collect();
                    lengths[idx].extend(ls);
                }
            }
        }
        lengths[0].clone()
    }

    /// Every maximal chain between bottom and top has the same length.
    pub fn is_graded(&self) -> bool {
        self.chain_lengths().len() == 1
    }

    /// Length of the longest maximal chain.
    pub fn height(&self) -> usize {
        self.chain_lengths().into_iter().max().unwrap_or(0)
    }
}

/// Facet certificates closed under intersection.
pub fn j_face_lattice(points: &[TropicalPoint]) -> Result<JFaceLattice> {
    let facets = j_facets(points)?;
    let top: BTreeSet<usize> = extreme_points(points)?.into_iter().collect();
    Ok(JFaceLattice::from_facet_sets(
        facets.into_iter().map(|f| f.vertex_indices).collect(),
        top,
    ))
}

/// A face assembled from sampled lifts: a set of `k`-dimensional boundary
/// cells of the covector decomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub k: i64,
    pub cells: BTreeSet<usize>,
}

/// Branching depth for the face fixpoint search.  Minimal faces of the
/// sampled fixtures are reached well within this bound; a seed whose every
/// branch is cut by the bound with no fixpoint found raises
/// [`Error::BudgetExhausted`] because the answer would be uncertain.
const FACE_BRANCH_BUDGET: usize = 16;

/// The boundary images of a lift's `k`-faces, restricted to `k`-cells.
///
/// A lift face only counts when its whole image — cells of every dimension —
/// lies in boundary cells: faces whose image dips into the interior are not
/// boundary pieces and never take part in the face search.
fn lift_boundary_images(
    lift: &AnalyzedLift,
    k: i64,
    complex: &CellComplex,
    boundary: &BTreeSet<usize>,
    atoms: &BTreeSet<usize>,
) -> Result<Vec<BTreeSet<usize>>> {
    let mut images = BTreeSet::new();
    for fatom in lift.fatoms(k, complex)? {
        if !fatom.image_cells.is_subset(boundary) {
            continue;
        }
        let restricted: BTreeSet<usize> = &fatom.image_cells & atoms;
        if !restricted.is_empty() {
            images.insert(restricted);
        }
    }
    Ok(images.into_iter().collect())
}

/// Can every cell of `state` be covered by some image contained in `state`?
/// Returns the first uncovered (lift, cell) witness otherwise.
fn uncovered_cell(
    state: &BTreeSet<usize>,
    images: &[Vec<BTreeSet<usize>>],
) -> Option<(usize, usize)> {
    for (li, imgs) in images.iter().enumerate() {
        for &c in state {
            if !imgs
                .iter()
                .any(|img| img.contains(&c) && img.is_subset(state))
            {
                return Some((li, c));
            }
        }
    }
    None
}

struct FaceSearch<'a> {
    images: &'a [Vec<BTreeSet<usize>>],
    visited: BTreeMap<BTreeSet<usize>, usize>,
    fixpoints: BTreeSet<BTreeSet<usize>>,
    found: bool,
    budget_hit: bool,
}

impl FaceSearch<'_> {
    fn expand(&mut self, state: BTreeSet<usize>, depth: usize) {
        if let Some(&seen) = self.visited.get(&state) {
            if seen <= depth {
                return;
            }
        }
        self.visited.insert(state.clone(), depth);
        let Some((li, c)) = uncovered_cell(&state, self.images) else {
            self.fixpoints.insert(state);
            self.found = true;
            return;
        };
        let candidates: Vec<&BTreeSet<usize>> = self.images[li]
            .iter()
            .filter(|img| img.contains(&c))
            .collect();
        if candidates.is_empty() {
            // No image of this lift ever covers the cell: genuine dead end.
            return;
        }
        if depth + 1 > FACE_BRANCH_BUDGET {
            self.budget_hit = true;
            return;
        }
        for (i, img) in candidates.iter().enumerate() {
            let minimal = !candidates
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && other.is_subset(img) && *other != *img);
            if !minimal {
                continue;
            }
            let next: BTreeSet<usize> = &state | *img;
            self.expand(next, depth + 1);
        }
    }
}

fn check_lifts(complex: &CellComplex, lifts: &[AnalyzedLift]) -> Result<()> {
    if lifts.is_empty() {
        return Err(Error::EmptyInput("face search needs at least one lift".into()));
    }
    for lift in lifts {
        if lift.lift.source != complex.points {
            return Err(Error::InvalidArgument(
                "lift does not belong to the decomposed configuration".into(),
            ));
        }
    }
    Ok(())
}

/// The `k`-dimensional faces seen by the sampled lifts.
///
/// A set of `k`-dimensional boundary cells is *expressible* in a lift when
/// each of its cells lies in some boundary image of a `k`-face of that lift
/// that stays inside the set.  Faces are the inclusion-minimal nonempty sets
/// expressible in every sampled lift; they are found by growing each image
/// until every sampled lift can express the result, branching over the
/// inclusion-minimal covering images when there is a choice.
pub fn faces(complex: &CellComplex, k: i64, lifts: &[AnalyzedLift]) -> Result<Vec<Face>> {
    check_lifts(complex, lifts)?;
    if k < 0 {
        return Err(Error::InvalidArgument("face dimension must be nonnegative".into()));
    }
    let boundary = complex.boundary_cells();
    let atoms: BTreeSet<usize> = complex
        .cells_of_dim(k)
        .into_iter()
        .filter(|c| boundary.contains(c))
        .collect();
    if atoms.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<Vec<BTreeSet<usize>>> = par::map_collect(lifts, |lift| {
        lift_boundary_images(lift, k, complex, &boundary, &atoms)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut search = FaceSearch {
        images: &images,
        visited: BTreeMap::new(),
        fixpoints: BTreeSet::new(),
        found: false,
        budget_hit: false,
    };
    for imgs in &images {
        for seed in imgs {
            search.visited.clear();
            search.found = false;
            search.budget_hit = false;
            search.expand(seed.clone(), 0);
            if !search.found && search.budget_hit {
                return Err(Error::BudgetExhausted(format!(
                    "face search from a seed of {} cells exceeded depth {}",
                    seed.len(),
                    FACE_BRANCH_BUDGET
                )));
            }
        }
    }
    let fixpoints: Vec<BTreeSet<usize>> = search.fixpoints.into_iter().collect();
    let mut out: Vec<Face> = fixpoints
        .iter()
        .filter(|s| {
            !fixpoints
                .iter()
                .any(|t| t.len() < s.len() && t.is_subset(s))
        })
        .map(|s| Face {
            k,
            cells: s.clone(),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Counts of faces per dimension, from points up to one below the polytope
/// dimension.
pub fn face_f_vector(complex: &CellComplex, lifts: &[AnalyzedLift]) -> Result<Vec<usize>> {
    let pdim = complex
        .cells
        .iter()
        .filter(|c| c.bounded)
        .map(|c| c.dim)
        .max()
        .unwrap_or(-1);
    (0..pdim)
        .map(|k| faces(complex, k, lifts).map(|fs| fs.len()))
        .collect()
}

/// All cells of the complex that are faces of some cell in `cells`.
pub fn closure_cells(complex: &CellComplex, cells: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..complex.cells.len())
        .filter(|&c| cells.iter().any(|&a| complex.is_face_of(c, a)))
        .collect()
}

/// Generator sets of the lift's faces of dimension `face.k` whose image lies
/// inside the closed face.
fn face_pieces(
    face: &Face,
    lift: &AnalyzedLift,
    complex: &CellComplex,
) -> Result<Vec<BTreeSet<usize>>> {
    let boundary = complex.boundary_cells();
    let top_cells: BTreeSet<usize> = complex.cells_of_dim(face.k).into_iter().collect();
    let mut out = Vec::new();
    for rec in lift.lattice.faces_of_dim(face.k) {
        if rec.generators.is_empty() {
            continue;
        }
        let img = lift.image_cells(&rec.generators, complex)?;
        if !img.is_subset(&boundary) {
            continue;
        }
        // The image may trail lower-dimensional whiskers past the face, but
        // its top-dimensional cells must realize part of the face itself.
        let top: BTreeSet<usize> = &img & &top_cells;
        if !top.is_empty() && top.is_subset(&face.cells) {
            out.push(rec.generators.clone());
        }
    }
    Ok(out)
}

/// Intersection of two faces, computed upstairs in one lift.
///
/// Every lift face of dimension `f.k` mapping into the closed face `f` is
/// intersected with every lift face of dimension `g.k` mapping into `g`; the
/// images of the resulting lattice faces are returned as a set of cells of
/// every dimension.
pub fn face_intersection(
    f: &Face,
    g: &Face,
    lift: &AnalyzedLift,
    complex: &CellComplex,
) -> Result<BTreeSet<usize>> {
    check_lifts(complex, std::slice::from_ref(lift))?;
    let closed_f = closure_cells(complex, &f.cells);
    let closed_g = closure_cells(complex, &g.cells);
    let pieces_f = face_pieces(f, lift, complex)?;
    let pieces_g = face_pieces(g, lift, complex)?;
    let mut out = BTreeSet::new();
    for p in &pieces_f {
        for q in &pieces_g {
            let meet: BTreeSet<usize> = p & q;
            if meet.is_empty() {
                continue;
            }
            if lift.lattice.face_by_generators(&meet).is_none() {
                return Err(Error::InvariantViolation(
                    "intersection of two lattice faces is not a lattice face".into(),
                ));
            }
            out.extend(lift.image_cells(&meet, complex)?);
        }
    }
    // Whisker cells outside either closed face belong to neither factor and
    // therefore not to the intersection.
    Ok(&(&out & &closed_f) & &closed_g)
}

/// Per-lift face intersections, cross-checked but never merged.
#[derive(Clone, Debug)]
pub struct FaceIntersectionReport {
    /// The intersection according to the first lift.
    pub cells: BTreeSet<usize>,
    /// The intersection according to each sampled lift.
    pub per_lift: Vec<BTreeSet<usize>>,
    /// Whether all sampled lifts agree.
    pub agreed: bool,
}

/// Compute [`face_intersection`] in every sampled lift and report agreement.
pub fn face_intersection_sampled(
    f: &Face,
    g: &Face,
    lifts: &[AnalyzedLift],
    complex: &CellComplex,
) -> Result<FaceIntersectionReport> {
    check_lifts(complex, lifts)?;
    let per_lift: Vec<BTreeSet<usize>> = lifts
        .iter()
        .map(|lift| face_intersection(f, g, lift, complex))
        .collect::<Result<_>>()?;
    let agreed = per_lift.windows(2).all(|w| w[0] == w[1]);
    Ok(FaceIntersectionReport {
        cells: per_lift[0].clone(),
        per_lift,
        agreed,
    })
}

/// Coordinates with a fixed coefficient sign across every realizing lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    /// Coordinates whose supporting coefficient is positive in every
    /// realizing lift; the polytope lies inside the sectors so indexed.
    pub positive: BTreeSet<usize>,
    /// Coordinates whose supporting coefficient is negative in every
    /// realizing lift.
    pub negative: BTreeSet<usize>,
}

/// Where a generator subset points, according to the lifts that realize it.
#[derive(Clone, Debug)]
pub struct DirectionReport {
    pub direction: Direction,
    /// Whether each sampled lift has the subset as a facet.
    pub realized: Vec<bool>,
    /// Coefficient signs of the supporting functional per realizing lift.
    pub sign_vectors: Vec<Option<Vec<Sign>>>,
}

/// Outward direction of a generator subset across sampled lifts.
///
/// A lift realizes the subset when it is exactly the generator set of one of
/// the lift's facets; the facet's supporting functional then has a sign per
/// coordinate.  The direction keeps the coordinates whose sign agrees across
/// all realizing lifts.  At least one lift must realize the subset; the
/// report says which ones do, so a partially realized subset is visible.
pub fn direction(subset: &BTreeSet<usize>, lifts: &[AnalyzedLift]) -> Result<DirectionReport> {
    if lifts.is_empty() {
        return Err(Error::EmptyInput("direction needs at least one lift".into()));
    }
    let mut realized = Vec::new();
    let mut sign_vectors: Vec<Option<Vec<Sign>>> = Vec::new();
    for lift in lifts {
        let rec = lift
            .lattice
            .facet_records()
            .into_iter()
            .find(|rec| rec.generators == *subset);
        match rec {
            Some(rec) => {
                let f = rec.functional.as_ref().ok_or_else(|| {
                    Error::InvariantViolation("facet without supporting functional".into())
                })?;
                realized.push(true);
                sign_vectors.push(Some(f.coeffs.iter().map(|c| c.sign()).collect()));
            }
            None => {
                realized.push(false);
                sign_vectors.push(None);
            }
        }
    }
    let realized_signs: Vec<&Vec<Sign>> = sign_vectors.iter().flatten().collect();
    if realized_signs.is_empty() {
        return Err(Error::InvalidArgument(
            "no sampled lift realizes the subset as a facet".into(),
        ));
    }
    let d = realized_signs[0].len();
    let fixed = |s: Sign| -> BTreeSet<usize> {
        (0..d)
            .filter(|&i| realized_signs.iter().all(|v| v[i] == s))
            .collect()
    };
    Ok(DirectionReport {
        direction: Direction {
            positive: fixed(Sign::Positive),
            negative: fixed(Sign::Negative),
        },
        realized,
        sign_vectors,
    })
}

/// Sign vectors of `f + rho * g` over all `rho > 0`, exactly.
///
/// Signs change only where a coordinate of the pencil vanishes, at
/// `rho = -f_i / g_i`.  Sampling below the smallest such critical value, at
/// each critical value, between consecutive ones and above the largest —
/// or at `rho = 1` when there are none — therefore captures every sign
/// vector of the open pencil.
pub fn sign_vector_sweep(
    f: &[PuiseuxNumber],
    g: &[PuiseuxNumber],
) -> Result<BTreeSet<Vec<Sign>>> {
    if f.is_empty() || f.len() != g.len() {
        return Err(Error::Dimension(
            "sign sweep needs two functionals of equal positive length".into(),
        ));
    }
    let mut crits: Vec<PuiseuxNumber> = Vec::new();
    for (fi, gi) in f.iter().zip(g) {
        if fi.sign() != Sign::Zero && gi.sign() != Sign::Zero {
            let r = -(fi.clone() / gi.clone());
            if r.sign() == Sign::Positive && !crits.contains(&r) {
                crits.push(r);
            }
        }
    }
    crits.sort_by(|a, b| a.compare(b));
    let two = PuiseuxNumber::from_integer(2);
    let mut samples: Vec<PuiseuxNumber> = Vec::new();
    if crits.is_empty() {
        samples.push(PuiseuxNumber::from_integer(1));
    } else {
        samples.push(crits[0].clone() / two.clone());
        for (i, c) in crits.iter().enumerate() {
            samples.push(c.clone());
            if let Some(next) = crits.get(i + 1) {
                samples.push((c.clone() + next.clone()) / two.clone());
            }
        }
        samples.push(crits.last().unwrap().clone() * two);
    }
    let mut out = BTreeSet::new();
    for rho in samples {
        let vector: Vec<Sign> = f
            .iter()
            .zip(g)
            .map(|(fi, gi)| (fi.clone() + rho.clone() * gi.clone()).sign())
            .collect();
        out.insert(vector);
    }
    Ok(out)
}

/// Sign vectors swept out between the two facets of a lift that share a
/// codimension-2 face.
///
/// The subset must be the generator set of a lattice face of dimension two
/// below the lift polytope, contained in exactly two facets; the sweep then
/// runs over all positive combinations of the two supporting functionals.
pub fn edge_sign_vectors(
    lift: &AnalyzedLift,
    subset: &BTreeSet<usize>,
) -> Result<BTreeSet<Vec<Sign>>> {
    let rec = lift.lattice.face_by_generators(subset).ok_or_else(|| {
        Error::InvalidArgument("subset is not a face of the lift".into())
    })?;
    if rec.dim != lift.lattice.dim - 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs a face of dimension {}, got {}",
            lift.lattice.dim - 2,
            rec.dim
        )));
    }
    if rec.containing_facets.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs a face in exactly two facets, got {}",
            rec.containing_facets.len()
        )));
    }
    let funcs: Vec<&Vec<PuiseuxNumber>> = rec
        .containing_facets
        .iter()
        .map(|&pos| {
            let idx = lift.lattice.facets[pos];
            lift.lattice.faces[idx]
                .functional
                .as_ref()
                .map(|f| &f.coeffs)
                .ok_or_else(|| {
                    Error::InvariantViolation("facet without supporting functional".into())
                })
        })
        .collect::<Result<_>>()?;
    let swept = sign_vector_sweep(funcs[0], funcs[1])?;
    if swept.iter().any(|v| v.iter().all(|s| *s == Sign::Zero)) {
        return Err(Error::InvariantViolation(
            "two distinct facets have antiproportional functionals".into(),
        ));
    }
    Ok(swept)
}

/// Reduced homology of the order complex of a family of faces, ordered by
/// closure containment.
///
/// Duplicated faces are collapsed first.  Elements are numbered by dimension,
/// then by number of cells, which is a linear extension of containment.
pub fn face_complex_homology(
    all_faces: &[Face],
    complex: &CellComplex,
) -> Result<BTreeMap<i64, HomologyGroup>> {
    let mut faces: Vec<Face> = all_faces.to_vec();
    faces.sort_by_key(|f| (f.k, f.cells.len(), f.cells.clone()));
    faces.dedup();
    let closures: Vec<BTreeSet<usize>> = faces
        .iter()
        .map(|f| closure_cells(complex, &f.cells))
        .collect();
    let chain = order_complex(faces.len(), |a, b| {
        closures[a] != closures[b] && closures[a].is_subset(&closures[b])
    })?;
    Ok(reduced_homology(&chain))
}

/// Are the cells of a face connected through shared subcells?
pub fn face_is_connected(face: &Face, complex: &CellComplex) -> bool {
    let cells: Vec<usize> = face.cells.iter().copied().collect();
    if cells.len() <= 1 {
        return true;
    }
    let adjacent = |a: usize, b: usize| {
        (0..complex.cells.len())
            .any(|c| complex.is_face_of(c, a) && complex.is_face_of(c, b))
    };
    let mut seen = BTreeSet::from([cells[0]]);
    let mut queue = vec![cells[0]];
    while let Some(a) = queue.pop() {
        for &b in &cells {
            if !seen.contains(&b) && adjacent(a, b) {
                seen.insert(b);
                queue.push(b);
            }
        }
    }
    seen.len() == cells.len()
}

/// Does the straight segment from `a` to `b` (in the chart where the first
/// coordinate is zero) meet the closed cell?
///
/// The closed cell is cut out by the inequalities `x_j - x_k >= v_ij - v_ik`
/// for every point `i`, every sector `j` of its covector entry and every
/// coordinate `k`; the segment parameter is clipped against each inequality
/// exactly.
pub fn segment_meets_cell(
    complex: &CellComplex,
    cell: usize,
    a: &TropicalPoint,
    b: &TropicalPoint,
) -> Result<bool> {
    if cell >= complex.cells.len() {
        return Err(Error::InvalidArgument(format!("no cell {cell}")));
    }
    let d = complex.points[0].dim();
    if a.dim() != d || b.dim() != d {
        return Err(Error::Dimension("segment endpoints of wrong dimension".into()));
    }
    let mut lo: Rat = crate::rat(0);
    let mut hi: Rat = crate::rat(1);
    for (i, mask) in complex.cells[cell].covector.iter().enumerate() {
        let v = complex.points[i].coords();
        for j in (0..d).filter(|&j| mask >> j & 1 == 1) {
            for k in (0..d).filter(|&k| k != j) {
                let at_a = (&a.coords()[j] - &a.coords()[k]) - (&v[j] - &v[k]);
                let at_b = (&b.coords()[j] - &b.coords()[k]) - (&v[j] - &v[k]);
                let slope = &at_b - &at_a;
                match slope.sign() {
                    Sign::Zero => {
                        if at_a.sign() == Sign::Negative {
                            return Ok(false);
                        }
                    }
                    Sign::Positive => {
                        let bound = -&at_a / &slope;
                        if bound > lo {
                            lo = bound;
                        }
                    }
                    Sign::Negative => {
                        let bound = -&at_a / &slope;
                        if bound < hi {
                            hi = bound;
                        }
                    }
                }
                if lo > hi {
                    return Ok(false);
                }
            }
        }
    }
    Ok(lo <= hi)
}

/// Does the tropical segment between `p` and `q` meet any of the closed
/// cells?
pub fn tropical_segment_meets_cells(
    complex: &CellComplex,
    cells: &BTreeSet<usize>,
    p: &TropicalPoint,
    q: &TropicalPoint,
) -> Result<bool> {
    let chain = tropical_segment(p, q)?;
    if chain.len() == 1 {
        for &c in cells {
            if segment_meets_cell(complex, c, &chain[0], &chain[0])? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    for w in chain.windows(2) {
        for &c in cells {
            if segment_meets_cell(complex, c, &w[0], &w[1])? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
