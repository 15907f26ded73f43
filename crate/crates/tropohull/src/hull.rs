//! Exact convex hulls over an arbitrary ordered field.
//!
//! Everything here runs on the homogenized ("coned") encoding: a polyhedron
//! in `F^m` becomes a cone in `F^{m+1}` whose generators carry a leading 1
//! (points) or 0 (recession rays).  One double description sweep computes
//! the polar of a list of vectors, and because polarity is an involution the
//! same engine enumerates facets from generators and vertices from
//! inequalities.  Incidence bookkeeping rides along as "tight sets", which
//! is all the face lattice needs.

use std::collections::{BTreeMap, BTreeSet};

use crate::field::{
    axpy_neg, cross_axpy, determinant_sign, dot, lex_cmp, rank, reduce_mod, rref, OrderedField,
    Sign,
};
use crate::{Error, Result};

/// A linear functional with an affine reading: on a homogenized vector
/// `(x_0, x)` the value is `coeffs[0] * x_0 + Σ coeffs[i] * x_i`, so
/// `coeffs[0]` is the offset of the affine inequality `⟨a, x⟩ + a_0 ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional<F> {
    pub coeffs: Vec<F>,
}

impl<F: OrderedField> Functional<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        Functional { coeffs }
    }

    pub fn eval(&self, v: &[F]) -> F {
        dot(&self.coeffs, v)
    }

    pub fn sign_at(&self, v: &[F]) -> Sign {
        self.eval(v).sign()
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// The constant term of the affine inequality.
    pub fn offset(&self) -> &F {
        &self.coeffs[0]
    }

    /// The linear part acting on the affine coordinates.
    pub fn linear(&self) -> &[F] {
        &self.coeffs[1..]
    }

    /// Evaluate on affine coordinates: `offset + ⟨linear, x⟩`.
    pub fn eval_affine(&self, x: &[F]) -> F {
        self.offset().clone() + dot(self.linear(), x)
    }
}

/// Generators of a polyhedron: homogenized points and recession rays.
#[derive(Clone, Debug)]
pub struct GeneratorSet<F> {
    gens: Vec<Vec<F>>,
    is_ray: Vec<bool>,
    ambient: usize,
}

impl<F: OrderedField> GeneratorSet<F> {
    /// Hull of affine points (each of length `m`), homogenized with a leading 1.
    pub fn from_points(points: &[Vec<F>]) -> Result<Self> {
        Self::from_points_and_rays(points, &[])
    }

    /// Hull of points plus recession rays.
    pub fn from_points_and_rays(points: &[Vec<F>], rays: &[Vec<F>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput(
                "a polyhedron needs at least one point generator".into(),
            ));
        }
        let m = points[0].len();
        if points.iter().any(|p| p.len() != m) || rays.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("mixed generator dimensions".into()));
        }
        let mut gens = Vec::with_capacity(points.len() + rays.len());
        let mut is_ray = Vec::with_capacity(points.len() + rays.len());
        for p in points {
            let mut v = Vec::with_capacity(m + 1);
            v.push(F::one());
            v.extend(p.iter().cloned());
            gens.push(v);
            is_ray.push(false);
        }
        for r in rays {
            let mut v = Vec::with_capacity(m + 1);
            v.push(F::zero());
            v.extend(r.iter().cloned());
            gens.push(v);
            is_ray.push(true);
        }
        Ok(GeneratorSet {
            gens,
            is_ray,
            ambient: m,
        })
    }

    /// Point generators given directly in homogeneous coordinates, each with
    /// a strictly positive leading entry.
    ///
    /// Projectively this describes the same polyhedron as dividing each
    /// vector through by its leading entry and calling [`Self::from_points`],
    /// but it lets callers whose field elements grow under division (Puiseux
    /// quotients, say) keep the generators in whatever well-scaled form they
    /// already have.
    pub fn from_cone_points(vectors: &[Vec<F>]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyInput(
                "a polyhedron needs at least one point generator".into(),
            ));
        }
        let m = vectors[0].len();
        if m < 2 || vectors.iter().any(|v| v.len() != m) {
            return Err(Error::Dimension(
                "homogeneous generators need equal lengths of at least two".into(),
            ));
        }
        if vectors.iter().any(|v| v[0].sign() != Sign::Positive) {
            return Err(Error::InvalidArgument(
                "homogeneous point generators need a positive leading entry".into(),
            ));
        }
        Ok(GeneratorSet {
            gens: vectors.to_vec(),
            is_ray: vec![false; vectors.len()],
            ambient: m - 1,
        })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Homogenized generator vectors, each of length `ambient_dim() + 1`.
    pub fn homogeneous(&self) -> &[Vec<F>] {
        &self.gens
    }

    pub fn is_ray(&self, i: usize) -> bool {
        self.is_ray[i]
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
}

/// An extreme ray of a polar cone together with the indices of the input
/// vectors it vanishes on.
#[derive(Clone, Debug)]
pub struct RayData<F> {
    pub vec: Vec<F>,
    pub tight: BTreeSet<usize>,
}

/// Lineality basis plus extreme rays, the output of the double description
/// sweep.  Rays are reduced modulo the lineality space and sorted, so the
/// description is canonical for the cone it encodes.
#[derive(Clone, Debug)]
pub struct ConeDescription<F> {
    pub lineality: Vec<Vec<F>>,
    pub rays: Vec<RayData<F>>,
}

/// The polar cone `{ f : ⟨f, v_j⟩ ≥ 0 for all j }` of a vector list.
///
/// `order` optionally prescribes the insertion order of the constraints (a
/// permutation of `0..vectors.len()`); tight sets always use the original
/// indices.  The lineality of the result is the common orthogonal complement
/// of the input, and the rays are its extreme rays modulo that lineality.
pub fn polar_dual<F: OrderedField>(
    vectors: &[Vec<F>],
    order: Option<&[usize]>,
) -> Result<ConeDescription<F>> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::EmptyInput("polar of an empty vector list".into()));
    }
    let dim = vectors[0].len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension("mixed vector dimensions in polar".into()));
    }
    let default_order: Vec<usize>;
    let order: &[usize] = match order {
        Some(o) => {
            let mut seen = vec![false; n];
            if o.len() != n || o.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidArgument(
                    "insertion order must be a permutation of the vector indices".into(),
                ));
            }
            o
        }
        None => {
            default_order = (0..n).collect();
            &default_order
        }
    };

    // Start from the whole space: lineality = standard basis, no rays.
    let mut lineality: Vec<Vec<F>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<RayData<F>> = Vec::new();
    let mut processed: BTreeSet<usize> = BTreeSet::new();

    for &ci in order {
        let c = &vectors[ci];
        let pivot = lineality
            .iter()
            .position(|b| dot(c, b).sign() != Sign::Zero);
        if let Some(pos) = pivot {
            // The constraint cuts the lineality space: one basis vector turns
            // into a ray on the positive side, everything else is projected
            // onto the hyperplane ⟨c, ·⟩ = 0.
            let mut b = lineality.swap_remove(pos);
            let mut vb = dot(c, &b);
            if vb.sign() == Sign::Negative {
                b = b.into_iter().map(|x| -x).collect();
                vb = -vb;
            }
            for other in lineality.iter_mut() {
                let val = dot(c, other);
                if val.sign() != Sign::Zero {
                    // vb * other - val * b vanishes on c; the positive factor
                    // vb keeps the step division-free.
                    *other = cross_axpy(other, &val, &b, &vb);
                    F::simplify_projective(other);
                }
            }
            for ray in rays.iter_mut() {
                let val = dot(c, &ray.vec);
                if val.sign() != Sign::Zero {
                    ray.vec = cross_axpy(&ray.vec, &val, &b, &vb);
                    F::simplify_projective(&mut ray.vec);
                }
                ray.tight.insert(ci);
            }
            F::simplify_projective(&mut b);
            rays.push(RayData {
                vec: b,
                tight: processed.clone(),
            });
            processed.insert(ci);
            continue;
        }

        // Classic double description step: the constraint already vanishes on
        // the lineality space, so only rays move.
        let values: Vec<Sign> = rays.iter().map(|r| dot(c, &r.vec).sign()).collect();
        if values.iter().all(|&s| s != Sign::Negative) {
            for (ray, &s) in rays.iter_mut().zip(values.iter()) {
                if s == Sign::Zero {
                    ray.tight.insert(ci);
                }
            }
            processed.insert(ci);
            continue;
        }
        let mut next: Vec<RayData<F>> = Vec::new();
        for (i, ray) in rays.iter().enumerate() {
            match values[i] {
                Sign::Positive => next.push(ray.clone()),
                Sign::Zero => {
                    let mut kept = ray.clone();
                    kept.tight.insert(ci);
                    next.push(kept);
                }
                Sign::Negative => {}
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            if values[pi] != Sign::Positive {
                continue;
            }
            for (ni, nneg) in rays.iter().enumerate() {
                if values[ni] != Sign::Negative {
                    continue;
                }
                let common: BTreeSet<usize> =
                    p.tight.intersection(&nneg.tight).copied().collect();
                let blocked = rays.iter().enumerate().any(|(ri, r)| {
                    ri != pi && ri != ni && r.tight.is_superset(&common)
                });
                if blocked {
                    continue;
                }
                let vp = dot(c, &p.vec);
                let vn = dot(c, &nneg.vec);
                // vp * n - vn * p has value 0 on c and stays in the cone.
                let mut vec: Vec<F> = nneg
                    .vec
                    .iter()
                    .zip(p.vec.iter())
                    .map(|(nx, px)| vp.clone() * nx.clone() - vn.clone() * px.clone())
                    .collect();
                F::simplify_projective(&mut vec);
                let mut tight = common;
                tight.insert(ci);
                next.push(RayData { vec, tight });
            }
        }
        rays = next;
        processed.insert(ci);
    }

    // Canonical output: echelonized lineality, rays reduced modulo it and
    // sorted coordinatewise.
    let lineality = canonical_basis(&lineality);
    for ray in rays.iter_mut() {
        ray.vec = reduce_mod(&ray.vec, &lineality);
        F::simplify_projective(&mut ray.vec);
    }
    rays.sort_by(|a, b| lex_cmp(&a.vec, &b.vec));
    let lineality = lineality
        .into_iter()
        .map(|mut row| {
            F::simplify_projective(&mut row);
            row
        })
        .collect();
    Ok(ConeDescription { lineality, rays })
}

fn canonical_basis<F: OrderedField>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    rref(rows)
}

/// Sign of the determinant of a square matrix of homogenized vectors.
pub fn orientation<F: OrderedField>(vectors: &[Vec<F>]) -> Result<Sign> {
    let n = vectors.len();
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!(
            "orientation needs a square matrix, got {n} vectors of lengths {:?}",
            vectors.iter().map(|v| v.len()).collect::<Vec<_>>()
        )));
    }
    Ok(determinant_sign(vectors))
}

/// Affine dimension of the hull of the generators, with a canonical basis of
/// the homogeneous span.
pub fn affine_hull<F: OrderedField>(gens: &GeneratorSet<F>) -> (i64, Vec<Vec<F>>) {
    let basis = rref(gens.homogeneous());
    (basis.len() as i64 - 1, basis)
}

/// Orientation of a generator subset inside the affine hull.
///
/// The subset must have exactly `dim + 1` members, where `dim` is the affine
/// dimension of the whole generator set; coordinates are taken with respect
/// to the canonical basis of the hull's span, so the sign is deterministic.
pub fn orientation_in_hull<F: OrderedField>(
    gens: &GeneratorSet<F>,
    subset: &[usize],
) -> Result<Sign> {
    let (dim, basis) = affine_hull(gens);
    let need = (dim + 1) as usize;
    if subset.len() != need {
        return Err(Error::Dimension(format!(
            "orientation in a {dim}-dimensional hull needs {need} generators, got {}",
            subset.len()
        )));
    }
    if subset.iter().any(|&i| i >= gens.len()) {
        return Err(Error::InvalidArgument("generator index out of range".into()));
    }
    let pivots = span_pivots(&basis);
    let rows: Vec<Vec<F>> = subset
        .iter()
        .map(|&i| {
            let g = &gens.homogeneous()[i];
            pivots.iter().map(|&c| g[c].clone()).collect()
        })
        .collect();
    orientation(&rows)
}

/// Pivot columns of an `rref` basis.  In reduced echelon coordinates, the
/// coefficient of basis row `r` in a span member is just its entry at that
/// row's pivot column, so these columns serve as coordinates on the span.
pub fn span_pivots<F: OrderedField>(basis: &[Vec<F>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| {
            row.iter()
                .position(|x| x.sign() != Sign::Zero)
                .expect("rref rows are nonzero")
        })
        .collect()
}

/// One face of a polyhedron, recorded combinatorially.
#[derive(Clone, Debug)]
pub struct FaceRecord<F> {
    /// Indices of the generators lying on the face.
    pub generators: BTreeSet<usize>,
    /// The subset of `generators` that are recession rays.
    pub ray_generators: BTreeSet<usize>,
    /// Affine dimension; the empty face has dimension -1.
    pub dim: i64,
    /// No ray generator touches the face.
    pub bounded: bool,
    /// A supporting functional (homogeneous, nonnegative on every generator,
    /// zero exactly on the face for facets).  `None` for the whole polyhedron.
    pub functional: Option<Functional<F>>,
    /// Positions in [`FaceLattice::facets`] of the facets containing this face.
    pub containing_facets: BTreeSet<usize>,
}

impl<F> FaceRecord<F> {
    /// The point generators on the face.
    pub fn point_generators(&self) -> BTreeSet<usize> {
        self.generators
            .difference(&self.ray_generators)
            .copied()
            .collect()
    }
}

/// The full face lattice of a pointed polyhedron, from the empty face to the
/// polyhedron itself, sorted by dimension and then by generator set.
#[derive(Clone, Debug)]
pub struct FaceLattice<F> {
    pub faces: Vec<FaceRecord<F>>,
    /// Indices into `faces` of the codimension-1 faces.
    pub facets: Vec<usize>,
    /// Canonical equations vanishing on the whole polyhedron.
    pub affine_hull: Vec<Functional<F>>,
    pub ambient_dim: usize,
    /// Dimension of the polyhedron.
    pub dim: i64,
    by_generators: BTreeMap<BTreeSet<usize>, usize>,
}

impl<F: OrderedField> FaceLattice<F> {
    pub fn face_by_generators(&self, generators: &BTreeSet<usize>) -> Option<&FaceRecord<F>> {
        self.by_generators.get(generators).map(|&i| &self.faces[i])
    }

    pub fn face_index(&self, generators: &BTreeSet<usize>) -> Option<usize> {
        self.by_generators.get(generators).copied()
    }

    pub fn top(&self) -> &FaceRecord<F> {
        self.faces.last().expect("lattice always has a top face")
    }

    pub fn faces_of_dim(&self, dim: i64) -> Vec<&FaceRecord<F>> {
        self.faces.iter().filter(|f| f.dim == dim).collect()
    }

    /// Proper bounded faces, every dimension.
    pub fn bounded_faces(&self) -> Vec<&FaceRecord<F>> {
        self.faces
            .iter()
            .filter(|f| f.bounded && f.dim >= 0 && f.dim < self.dim)
            .collect()
    }

    /// Number of faces of each dimension `0..dim` (proper faces only).
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|d| self.faces.iter().filter(|f| f.dim == d).count())
            .collect()
    }

    /// The facet records themselves.
    pub fn facet_records(&self) -> Vec<&FaceRecord<F>> {
        self.facets.iter().map(|&i| &self.faces[i]).collect()
    }

    /// Lattice order: face `a` is contained in face `b`.
    pub fn is_subface(&self, a: usize, b: usize) -> bool {
        self.faces[a].generators.is_subset(&self.faces[b].generators)
    }
}

/// Compute the face lattice of the polyhedron generated by `gens`.
///
/// `order` optionally fixes the order in which generators are fed to the
/// double description sweep (useful when the caller knows a numerically kind
/// ordering); the output is independent of it.
///
/// The homogenization cone must be pointed — true for any polyhedron that
/// has at least one vertex — otherwise faces are not determined by their
/// generator sets and an invariant error is returned.
pub fn face_lattice<F: OrderedField>(
    gens: &GeneratorSet<F>,
    order: Option<&[usize]>,
) -> Result<FaceLattice<F>> {
    let cone = polar_dual(gens.homogeneous(), order)?;
    let n = gens.len();
    let hom_dim = gens.ambient_dim() + 1;

    // Pointedness: the polar must span the ambient space.
    let mut span: Vec<Vec<F>> = cone.lineality.clone();
    span.extend(cone.rays.iter().map(|r| r.vec.clone()));
    if rank(&span) < hom_dim {
        return Err(Error::InvariantViolation(
            "generator cone has a lineality space; faces are not determined by incidence".into(),
        ));
    }

    let top_dim = rank(gens.homogeneous()) as i64 - 1;

    // Facet incidence sets; distinct extreme rays give distinct facets.
    // Facets of the homogenization cone touching no point generator lie
    // entirely at infinity and are faces of the recession cone only, so they
    // are not facets of the polyhedron and get dropped here.  (No face of
    // the polyhedron is contained in one, so the intersection closure below
    // never needs them.)
    let mut facet_sets: Vec<(BTreeSet<usize>, Functional<F>)> = Vec::new();
    for ray in &cone.rays {
        let tight = &ray.tight;
        if facet_sets.iter().any(|(t, _)| t == tight) {
            return Err(Error::InvariantViolation(
                "two facets share a generator incidence set".into(),
            ));
        }
        if tight.iter().any(|&i| !gens.is_ray(i)) {
            facet_sets.push((tight.clone(), Functional::new(ray.vec.clone())));
        }
    }
    facet_sets.sort_by(|a, b| a.0.cmp(&b.0));

    // Intersection closure of the facet sets, plus top and bottom.
    let all: BTreeSet<usize> = (0..n).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(all.clone());
    sets.insert(BTreeSet::new());
    let mut frontier: Vec<BTreeSet<usize>> =
        facet_sets.iter().map(|(t, _)| t.clone()).collect();
    while let Some(s) = frontier.pop() {
        if !sets.insert(s.clone()) {
            continue;
        }
        for (t, _) in &facet_sets {
            let meet: BTreeSet<usize> = s.intersection(t).copied().collect();
            if !sets.contains(&meet) {
                frontier.push(meet);
            }
        }
    }

    let mut faces: Vec<FaceRecord<F>> = Vec::new();
    for s in sets {
        // Intersections that meet only at infinity (ray generators alone)
        // are empty as faces of the polyhedron; the empty face itself stays.
        if !s.is_empty() && s.iter().all(|&i| gens.is_ray(i)) {
            continue;
        }
        let member_vectors: Vec<Vec<F>> = s
            .iter()
            .map(|&i| gens.homogeneous()[i].clone())
            .collect();
        let dim = if s.is_empty() {
            -1
        } else {
            rank(&member_vectors) as i64 - 1
        };
        let ray_generators: BTreeSet<usize> =
            s.iter().copied().filter(|&i| gens.is_ray(i)).collect();
        let bounded = ray_generators.is_empty();
        let containing_facets: BTreeSet<usize> = facet_sets
            .iter()
            .enumerate()
            .filter(|(_, (t, _))| s.is_subset(t))
            .map(|(i, _)| i)
            .collect();
        let functional = if s == all {
            None
        } else if let Some(fi) = facet_sets.iter().position(|(t, _)| *t == s) {
            Some(facet_sets[fi].1.clone())
        } else {
            // Sum of the containing facets' functionals supports the face:
            // it is nonnegative on the polyhedron and vanishes exactly on
            // the common intersection of those facets.
            let mut acc = vec![F::zero(); hom_dim];
            for &fi in &containing_facets {
                for (a, b) in acc.iter_mut().zip(facet_sets[fi].1.coeffs.iter()) {
                    *a = a.clone() + b.clone();
                }
            }
            F::simplify_projective(&mut acc);
            Some(Functional::new(acc))
        };
        faces.push(FaceRecord {
            generators: s,
            ray_generators,
            dim,
            bounded,
            functional,
            containing_facets,
        });
    }
    faces.sort_by(|a, b| (a.dim, &a.generators).cmp(&(b.dim, &b.generators)));

    let mut by_generators = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        by_generators.insert(f.generators.clone(), i);
    }
    let facets: Vec<usize> = facet_sets
        .iter()
        .map(|(t, _)| by_generators[t])
        .collect();
    for &fi in &facets {
        if faces[fi].dim != top_dim - 1 {
            return Err(Error::InvariantViolation(format!(
                "facet {:?} has dimension {} in a polyhedron of dimension {}",
                faces[fi].generators, faces[fi].dim, top_dim
            )));
        }
    }

    let affine_hull = cone
        .lineality
        .iter()
        .map(|v| Functional::new(v.clone()))
        .collect();

    Ok(FaceLattice {
        faces,
        facets,
        affine_hull,
        ambient_dim: gens.ambient_dim(),
        dim: top_dim,
        by_generators,
    })
}

/// A polyhedron described by its vertices, recession rays, and lineality.
#[derive(Clone, Debug)]
pub struct VRepresentation<F> {
    /// Affine coordinates of the vertices (minimal-face representatives when
    /// a lineality space is present).
    pub vertices: Vec<Vec<F>>,
    /// Recession directions modulo lineality.
    pub rays: Vec<Vec<F>>,
    /// Affine lineality directions.
    pub lineality: Vec<Vec<F>>,
    /// For each vertex, the indices of the inequalities tight at it.
    pub vertex_tight: Vec<BTreeSet<usize>>,
    /// For each recession ray, the inequalities its direction saturates.
    pub ray_tight: Vec<BTreeSet<usize>>,
}

impl<F: OrderedField> VRepresentation<F> {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_empty() && self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Affine dimension: -1 when empty.
    pub fn dim(&self) -> i64 {
        if self.is_empty() {
            return -1;
        }
        let m = self.vertices[0].len();
        let base = &self.vertices[0];
        let mut dirs: Vec<Vec<F>> = self
            .vertices
            .iter()
            .skip(1)
            .map(|v| axpy_neg(v, &F::one(), base))
            .collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.iter().cloned());
        if dirs.is_empty() {
            return 0;
        }
        debug_assert!(dirs.iter().all(|d| d.len() == m));
        rank(&dirs) as i64
    }

    /// A relative-interior point: vertex centroid plus the sum of the rays.
    pub fn relative_interior_point(&self) -> Option<Vec<F>> {
        if self.is_empty() {
            return None;
        }
        let m = self.vertices[0].len();
        let mut acc = vec![F::zero(); m];
        for v in &self.vertices {
            for (a, x) in acc.iter_mut().zip(v.iter()) {
                *a = a.clone() + x.clone();
            }
        }
        let count = F::from_integer(self.vertices.len() as i64);
        for a in acc.iter_mut() {
            *a = a.clone() / count.clone();
        }
        for r in &self.rays {
            for (a, x) in acc.iter_mut().zip(r.iter()) {
                *a = a.clone() + x.clone();
            }
        }
        Some(acc)
    }
}

/// Enumerate the vertices, rays, and lineality of
/// `{ x : ⟨a, x⟩ ≥ b for (a, b) in inequalities, ⟨a, x⟩ = b for (a, b) in equations }`.
pub fn vertex_enumeration<F: OrderedField>(
    ambient: usize,
    inequalities: &[(Vec<F>, F)],
    equations: &[(Vec<F>, F)],
) -> Result<VRepresentation<F>> {
    if inequalities.iter().any(|(a, _)| a.len() != ambient)
        || equations.iter().any(|(a, _)| a.len() != ambient)
    {
        return Err(Error::Dimension(
            "constraint coefficients do not match the ambient dimension".into(),
        ));
    }
    let homogenize = |a: &[F], b: &F| -> Vec<F> {
        let mut v = Vec::with_capacity(ambient + 1);
        v.push(-b.clone());
        v.extend(a.iter().cloned());
        v
    };
    let mut vectors: Vec<Vec<F>> = Vec::new();
    for (a, b) in equations {
        let v = homogenize(a, b);
        vectors.push(v.iter().map(|x| -x.clone()).collect());
        vectors.push(v);
    }
    let mut nonneg = vec![F::zero(); ambient + 1];
    nonneg[0] = F::one();
    vectors.push(nonneg);
    let offset = vectors.len();
    for (a, b) in inequalities {
        vectors.push(homogenize(a, b));
    }

    let cone = polar_dual(&vectors, None)?;
    let strip = |tight: &BTreeSet<usize>| -> BTreeSet<usize> {
        tight
            .iter()
            .filter(|&&i| i >= offset)
            .map(|&i| i - offset)
            .collect()
    };

    let mut vertices = Vec::new();
    let mut vertex_tight = Vec::new();
    let mut rays = Vec::new();
    let mut ray_tight = Vec::new();
    for ray in &cone.rays {
        match ray.vec[0].sign() {
            Sign::Positive => {
                let scale = ray.vec[0].clone();
                vertices.push(
                    ray.vec[1..]
                        .iter()
                        .map(|x| x.clone() / scale.clone())
                        .collect(),
                );
                vertex_tight.push(strip(&ray.tight));
            }
            Sign::Zero => {
                rays.push(ray.vec[1..].to_vec());
                ray_tight.push(strip(&ray.tight));
            }
            Sign::Negative => {
                return Err(Error::InvariantViolation(
                    "homogenization coordinate went negative in a polar ray".into(),
                ));
            }
        }
    }
    let lineality: Vec<Vec<F>> = cone
        .lineality
        .iter()
        .map(|v| {
            debug_assert_eq!(v[0].sign(), Sign::Zero);
            v[1..].to_vec()
        })
        .collect();
    Ok(VRepresentation {
        vertices,
        rays,
        lineality,
        vertex_tight,
        ray_tight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::PuiseuxNumber;
    use crate::{rat, Rat};

    fn pts(list: &[&[i64]]) -> Vec<Vec<Rat>> {
        list.iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    fn set(ids: &[usize]) -> BTreeSet<usize> {
        ids.iter().copied().collect()
    }

    #[test]
    fn square_lattice_has_four_edges_and_four_vertices() {
        let gens =
            GeneratorSet::from_points(&pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.dim, 2);
        assert_eq!(lat.f_vector(), vec![4, 4]);
        assert!(lat.affine_hull.is_empty());
        // Edges are consecutive vertex pairs, never diagonals.
        assert!(lat.face_by_generators(&set(&[0, 1])).is_some());
        assert!(lat.face_by_generators(&set(&[0, 2])).is_none());
        // Every vertex lies on exactly two facets.
        for v in lat.faces_of_dim(0) {
            assert_eq!(v.containing_facets.len(), 2);
            assert!(v.bounded);
        }
        // Facet functionals vanish on their generators and are positive
        // on the rest.
        for f in lat.facet_records() {
            let func = f.functional.as_ref().unwrap();
            for (i, g) in gens.homogeneous().iter().enumerate() {
                let expected = if f.generators.contains(&i) {
                    Sign::Zero
                } else {
                    Sign::Positive
                };
                assert_eq!(func.sign_at(g), expected);
            }
        }
    }

    #[test]
    fn interior_points_appear_in_no_proper_face() {
        let gens = GeneratorSet::from_points(&pts(&[
            &[0, 0],
            &[2, 0],
            &[2, 2],
            &[0, 2],
            &[1, 1],
        ]))
        .unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.f_vector(), vec![4, 4]);
        for f in &lat.faces {
            if f.dim < lat.dim {
                assert!(!f.generators.contains(&4), "center escaped into {f:?}");
            }
        }
    }

    #[test]
    fn tetrahedron_counts_faces_like_a_simplex() {
        let gens = GeneratorSet::from_points(&pts(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
        ]))
        .unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.dim, 3);
        assert_eq!(lat.f_vector(), vec![4, 6, 4]);
        // 4 + 6 + 4 proper faces + top + empty.
        assert_eq!(lat.faces.len(), 16);
    }

    #[test]
    fn octahedron_f_vector() {
        let gens = GeneratorSet::from_points(&pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
        .unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn segment_in_the_plane_has_an_affine_hull_equation() {
        let gens = GeneratorSet::from_points(&pts(&[&[0, 0], &[2, 0]])).unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.dim, 1);
        assert_eq!(lat.f_vector(), vec![2]);
        assert_eq!(lat.affine_hull.len(), 1);
        // The equation vanishes on both generators.
        for g in gens.homogeneous() {
            assert_eq!(lat.affine_hull[0].sign_at(g), Sign::Zero);
        }
    }

    #[test]
    fn quadrant_with_apex_has_one_vertex_and_two_unbounded_facets() {
        let gens = GeneratorSet::from_points_and_rays(
            &pts(&[&[3, 4]]),
            &pts(&[&[1, 0], &[0, 1]]),
        )
        .unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.dim, 2);
        assert_eq!(lat.facets.len(), 2);
        let vertex = lat.face_by_generators(&set(&[0])).unwrap();
        assert_eq!(vertex.dim, 0);
        assert!(vertex.bounded);
        for f in lat.facet_records() {
            assert!(!f.bounded);
            assert_eq!(f.dim, 1);
        }
        assert_eq!(
            lat.bounded_faces()
                .iter()
                .map(|f| f.generators.clone())
                .collect::<Vec<_>>(),
            vec![set(&[0])]
        );
    }

    #[test]
    fn insertion_order_does_not_change_the_lattice() {
        let points = pts(&[&[0, 0], &[3, 0], &[3, 3], &[0, 3], &[1, 1]]);
        let gens = GeneratorSet::from_points(&points).unwrap();
        let base = face_lattice(&gens, None).unwrap();
        for order in [&[4, 3, 2, 1, 0][..], &[2, 0, 4, 1, 3][..]] {
            let lat = face_lattice(&gens, Some(order)).unwrap();
            assert_eq!(lat.f_vector(), base.f_vector());
            let sets: Vec<_> = lat.faces.iter().map(|f| f.generators.clone()).collect();
            let base_sets: Vec<_> =
                base.faces.iter().map(|f| f.generators.clone()).collect();
            assert_eq!(sets, base_sets);
            // Functionals are canonical, so they agree too.
            for (a, b) in lat.faces.iter().zip(base.faces.iter()) {
                assert_eq!(a.functional, b.functional);
            }
        }
    }

    #[test]
    fn vertex_enumeration_recovers_the_unit_square() {
        let ineqs: Vec<(Vec<Rat>, Rat)> = vec![
            (vec![rat(1), rat(0)], rat(0)),  // x >= 0
            (vec![rat(0), rat(1)], rat(0)),  // y >= 0
            (vec![rat(-1), rat(0)], rat(-1)), // x <= 1
            (vec![rat(0), rat(-1)], rat(-1)), // y <= 1
        ];
        let vrep = vertex_enumeration(2, &ineqs, &[]).unwrap();
        assert!(vrep.is_bounded());
        assert_eq!(vrep.vertices.len(), 4);
        assert_eq!(vrep.dim(), 2);
        // Each vertex saturates its two defining inequalities.
        for tight in &vrep.vertex_tight {
            assert_eq!(tight.len(), 2);
        }
        let interior = vrep.relative_interior_point().unwrap();
        for (a, b) in &ineqs {
            assert_eq!((dot(a, &interior) - b.clone()).sign(), Sign::Positive);
        }
    }

    #[test]
    fn vertex_enumeration_reports_rays_and_emptiness() {
        // x >= 1, y >= 2, pointed but unbounded.
        let ineqs: Vec<(Vec<Rat>, Rat)> = vec![
            (vec![rat(1), rat(0)], rat(1)),
            (vec![rat(0), rat(1)], rat(2)),
        ];
        let vrep = vertex_enumeration(2, &ineqs, &[]).unwrap();
        assert_eq!(vrep.vertices, pts(&[&[1, 2]]));
        assert_eq!(vrep.rays.len(), 2);
        assert_eq!(vrep.dim(), 2);

        // x >= 1 and x <= 0 is empty.
        let empty = vertex_enumeration(
            1,
            &[
                (vec![rat(1)], rat(1)),
                (vec![rat(-1)], rat(0)),
            ],
            &[],
        )
        .unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.dim(), -1);

        // An equation cuts the square to a segment.
        let ineqs: Vec<(Vec<Rat>, Rat)> = vec![
            (vec![rat(1), rat(0)], rat(0)),
            (vec![rat(0), rat(1)], rat(0)),
            (vec![rat(-1), rat(0)], rat(-2)),
            (vec![rat(0), rat(-1)], rat(-2)),
        ];
        let eqs: Vec<(Vec<Rat>, Rat)> = vec![(vec![rat(1), rat(1)], rat(2))];
        let seg = vertex_enumeration(2, &ineqs, &eqs).unwrap();
        assert_eq!(seg.vertices.len(), 2);
        assert_eq!(seg.dim(), 1);
    }

    #[test]
    fn vertex_enumeration_surfaces_lineality() {
        // A slab: 0 <= x <= 1 in the plane, free in y.
        let ineqs: Vec<(Vec<Rat>, Rat)> = vec![
            (vec![rat(1), rat(0)], rat(0)),
            (vec![rat(-1), rat(0)], rat(-1)),
        ];
        let vrep = vertex_enumeration(2, &ineqs, &[]).unwrap();
        assert_eq!(vrep.lineality.len(), 1);
        assert!(!vrep.is_bounded());
        assert_eq!(vrep.dim(), 2);
    }

    #[test]
    fn affine_hull_and_orientation_track_the_span() {
        let gens = GeneratorSet::from_points(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let (dim, basis) = affine_hull(&gens);
        assert_eq!(dim, 2);
        assert_eq!(basis.len(), 3);
        // Standard order is positively oriented; a swap flips the sign.
        assert_eq!(orientation_in_hull(&gens, &[0, 1, 2]).unwrap(), Sign::Positive);
        assert_eq!(orientation_in_hull(&gens, &[1, 0, 2]).unwrap(), Sign::Negative);
        assert!(orientation_in_hull(&gens, &[0, 1]).is_err());

        // A segment in the plane: dimension 1, orientations of pairs.
        let seg = GeneratorSet::from_points(&pts(&[&[0, 0], &[2, 2], &[1, 1]])).unwrap();
        let (dim, _) = affine_hull(&seg);
        assert_eq!(dim, 1);
        assert_ne!(orientation_in_hull(&seg, &[0, 1]).unwrap(), Sign::Zero);
        // A degenerate pair: the same point twice.
        let (single, _) = affine_hull(
            &GeneratorSet::from_points(&pts(&[&[5, 7]])).unwrap(),
        );
        assert_eq!(single, 0);
    }

    #[test]
    fn hulls_work_verbatim_over_puiseux_series() {
        // A triangle in K^2 whose vertices sit at different scales of t.
        let t = |e: i64| -> PuiseuxNumber {
            format!("t^{e}").parse().unwrap()
        };
        let points = vec![
            vec![t(0), t(0)],
            vec![t(3), t(0)],
            vec![t(0), t(2)],
        ];
        let gens = GeneratorSet::from_points(&points).unwrap();
        let lat = face_lattice(&gens, None).unwrap();
        assert_eq!(lat.dim, 2);
        assert_eq!(lat.f_vector(), vec![3, 3]);
        for f in lat.facet_records() {
            let func = f.functional.as_ref().unwrap();
            for (i, g) in gens.homogeneous().iter().enumerate() {
                let expected = if f.generators.contains(&i) {
                    Sign::Zero
                } else {
                    Sign::Positive
                };
                assert_eq!(func.sign_at(g), expected, "facet {:?} at generator {i}", f.generators);
            }
        }
    }
}
