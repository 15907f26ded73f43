//! The covector decomposition of tropical projective space induced by a
//! point configuration.
//!
//! Each configuration point `v_i` carries an inverted tropical hyperplane;
//! together they cut `TP^{d-1}` into polyhedral cells.  The cell containing
//! `x` in its relative interior is named by the covector `S` with
//! `S_i = argmax_j (v_ij - x_j)`, and the tropical polytope spanned by the
//! configuration is exactly the union of the bounded cells.
//!
//! Cells are enumerated exactly over the rationals: a depth-first search with
//! feasibility pruning finds the full-dimensional cells, and every lower cell
//! shows up as a polyhedral face of a closed full-dimensional one.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::hull::{face_lattice, vertex_enumeration, GeneratorSet, VRepresentation};
use crate::tropical::TropicalPoint;
use crate::{Error, Rat, Result};

/// A covector: one coordinate bitmask per configuration point.
/// Bit `j` of entry `i` is set when coordinate `j` attains `max_j (v_ij - x_j)`.
pub type Covector = Vec<u64>;

/// Render a covector with 1-based coordinate digits, one block per point.
pub fn covector_string(cv: &Covector) -> String {
    cv.iter()
        .map(|mask| {
            (0..64)
                .filter(|j| mask & (1 << j) != 0)
                .map(|j| (j + 1).to_string())
                .join("")
        })
        .join("|")
}

/// The covector of `x` with respect to the configuration.
pub fn covector_of(x: &TropicalPoint, points: &[TropicalPoint]) -> Result<Covector> {
    if points.is_empty() {
        return Err(Error::EmptyInput("covector over an empty configuration".into()));
    }
    let d = points[0].dim();
    if d > 64 {
        return Err(Error::Dimension("covector bitmasks support at most 64 coordinates".into()));
    }
    if x.dim() != d || points.iter().any(|p| p.dim() != d) {
        return Err(Error::Dimension("mixed point dimensions".into()));
    }
    let mut cv = Vec::with_capacity(points.len());
    for v in points {
        let mut best: Option<Rat> = None;
        let mut mask = 0u64;
        for j in 0..d {
            let val = &v.coords()[j] - &x.coords()[j];
            match &best {
                None => {
                    best = Some(val);
                    mask = 1 << j;
                }
                Some(b) => match val.cmp(b) {
                    std::cmp::Ordering::Greater => {
                        best = Some(val);
                        mask = 1 << j;
                    }
                    std::cmp::Ordering::Equal => mask |= 1 << j,
                    std::cmp::Ordering::Less => {}
                },
            }
        }
        cv.push(mask);
    }
    Ok(cv)
}

/// `a` refines to `b`: the cell of `a` is a face of the cell of `b`.
/// Face order is componentwise containment of the covector sets.
pub fn is_face_covector(a: &Covector, b: &Covector) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x & y == *y)
}

/// One cell of the decomposition.
#[derive(Clone, Debug)]
pub struct Cell {
    pub covector: Covector,
    /// Dimension of the cell as a polyhedron in the chart `x_0 = 0`.
    pub dim: i64,
    /// A point in the relative interior; its covector is exactly `covector`.
    pub witness: TropicalPoint,
    /// Bounded cells make up the tropical polytope of the configuration.
    pub bounded: bool,
}

/// The full cell complex, cells sorted by dimension then covector.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub points: Vec<TropicalPoint>,
    pub cells: Vec<Cell>,
    by_covector: BTreeMap<Covector, usize>,
}

impl CellComplex {
    pub fn dim(&self) -> i64 {
        self.points[0].dim() as i64 - 1
    }

    pub fn cell_by_covector(&self, cv: &Covector) -> Option<usize> {
        self.by_covector.get(cv).copied()
    }

    pub fn cells_of_dim(&self, dim: i64) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].dim == dim)
            .collect()
    }

    /// Ids of the full-dimensional cells (the maximal ones).
    pub fn full_cells(&self) -> Vec<usize> {
        self.cells_of_dim(self.dim())
    }

    /// `a` is a face of `b` (equality included).
    pub fn is_face_of(&self, a: usize, b: usize) -> bool {
        is_face_covector(&self.cells[a].covector, &self.cells[b].covector)
    }

    /// Bounded cells of dimension zero.  Every 0-cell covers all coordinates
    /// with its covector, so they are all bounded.
    pub fn pseudovertices(&self) -> Vec<usize> {
        self.cells_of_dim(0)
    }

    /// Ids of the bounded cells: the tropical polytope of the configuration.
    pub fn bounded_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].bounded)
            .collect()
    }

    /// The cell whose relative interior contains `x`.
    pub fn member_cell(&self, x: &TropicalPoint) -> Result<usize> {
        let cv = covector_of(x, &self.points)?;
        self.cell_by_covector(&cv).ok_or_else(|| {
            Error::InvariantViolation(format!(
                "covector {} of a probe point is missing from the complex",
                covector_string(&cv)
            ))
        })
    }

    /// Bounded cells on the topological boundary of the tropical polytope:
    /// those that are faces of some unbounded cell.
    pub fn boundary_cells(&self) -> BTreeSet<usize> {
        let unbounded: Vec<usize> = (0..self.cells.len())
            .filter(|&i| !self.cells[i].bounded)
            .collect();
        (0..self.cells.len())
            .filter(|&i| {
                self.cells[i].bounded
                    && unbounded.iter().any(|&u| self.is_face_of(i, u))
            })
            .collect()
    }
}

/// Closed-cell constraint rows for a partial sector assignment, in the chart
/// `x_0 = 0` (variables `x_1 .. x_{d-1}`).
fn pattern_constraints(
    points: &[TropicalPoint],
    pattern: &[usize],
) -> Vec<(Vec<Rat>, Rat)> {
    let d = points[0].dim();
    let mut out = Vec::new();
    for (i, &j) in pattern.iter().enumerate() {
        let v = points[i].coords();
        for k in 0..d {
            if k == j {
                continue;
            }
            // v_ij - x_j >= v_ik - x_k  ⇔  x_k - x_j >= v_ik - v_ij.
            let mut row = vec![crate::rat(0); d - 1];
            if k > 0 {
                row[k - 1] = crate::rat(1);
            }
            if j > 0 {
                row[j - 1] = &row[j - 1] - crate::rat(1);
            }
            out.push((row, &v[k] - &v[j]));
        }
    }
    out
}

fn chart_point(coords: &[Rat]) -> TropicalPoint {
    let mut full = Vec::with_capacity(coords.len() + 1);
    full.push(crate::rat(0));
    full.extend(coords.iter().cloned());
    TropicalPoint::new(full).expect("chart points have full dimension")
}

/// Compute the entire covector decomposition of `TP^{d-1}` induced by the
/// configuration.
pub fn decompose(points: &[TropicalPoint]) -> Result<CellComplex> {
    if points.is_empty() {
        return Err(Error::EmptyInput("decomposition of an empty configuration".into()));
    }
    let d = points[0].dim();
    if d > 64 {
        return Err(Error::Dimension("covector bitmasks support at most 64 coordinates".into()));
    }
    if points.iter().any(|p| p.dim() != d) {
        return Err(Error::Dimension("mixed point dimensions".into()));
    }
    let full_dim = d as i64 - 1;

    // Depth-first search over sector assignments, pruning prefixes whose
    // closed region already dropped dimension: extending a pattern only adds
    // constraints, so no full-dimensional cell is lost.
    let mut full_patterns: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..d).map(|j| vec![j]).collect();
    stack.reverse();
    while let Some(pattern) = stack.pop() {
        let vrep = vertex_enumeration(d - 1, &pattern_constraints(points, &pattern), &[])?;
        if vrep.is_empty() || vrep.dim() < full_dim {
            continue;
        }
        if pattern.len() == points.len() {
            full_patterns.push(pattern);
            continue;
        }
        for j in (0..d).rev() {
            let mut next = pattern.clone();
            next.push(j);
            stack.push(next);
        }
    }
    if full_patterns.is_empty() {
        return Err(Error::InvariantViolation(
            "a covector decomposition always has full-dimensional cells".into(),
        ));
    }

    // Every cell is a polyhedral face of some closed full-dimensional cell,
    // so walking the face lattices of the maximal cells reaches everything.
    let mut by_covector: BTreeMap<Covector, (i64, TropicalPoint)> = BTreeMap::new();
    for pattern in &full_patterns {
        let vrep = vertex_enumeration(d - 1, &pattern_constraints(points, pattern), &[])?;
        debug_assert!(vrep.lineality.is_empty(), "covector cells are pointed");
        let gens = GeneratorSet::from_points_and_rays(&vrep.vertices, &vrep.rays)?;
        let lattice = face_lattice(&gens, None)?;
        for face in &lattice.faces {
            if face.dim < 0 {
                continue;
            }
            let witness = face_witness(&vrep, &face.generators);
            let x = chart_point(&witness);
            let cv = covector_of(&x, points)?;
            match by_covector.get(&cv) {
                Some((dim, _)) => {
                    if *dim != face.dim {
                        return Err(Error::InvariantViolation(format!(
                            "cell {} seen with dimensions {} and {}",
                            covector_string(&cv),
                            dim,
                            face.dim
                        )));
                    }
                }
                None => {
                    by_covector.insert(cv, (face.dim, x));
                }
            }
        }
    }

    let mut cells: Vec<Cell> = by_covector
        .into_iter()
        .map(|(cv, (dim, witness))| {
            let bounded = covector_covers_all(&cv, d);
            Cell {
                covector: cv,
                dim,
                witness,
                bounded,
            }
        })
        .collect();
    cells.sort_by(|a, b| (a.dim, &a.covector).cmp(&(b.dim, &b.covector)));
    let by_covector = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.covector.clone(), i))
        .collect();
    let complex = CellComplex {
        points: points.to_vec(),
        cells,
        by_covector,
    };

    // Boundedness has an independent reading from the recession behaviour:
    // cross-check it on every cell via the tie-graph dimension formula too.
    for cell in &complex.cells {
        let tie_dim = tie_graph_components(&cell.covector, d) as i64 - 1;
        if tie_dim != cell.dim {
            return Err(Error::InvariantViolation(format!(
                "cell {} has polyhedral dimension {} but tie-graph dimension {}",
                covector_string(&cell.covector),
                cell.dim,
                tie_dim
            )));
        }
    }
    Ok(complex)
}

/// Relative-interior point of the face of a cell spanned by the given
/// generator subset (indices into vertices then rays of the cell).
fn face_witness(vrep: &VRepresentation<Rat>, generators: &BTreeSet<usize>) -> Vec<Rat> {
    let nv = vrep.vertices.len();
    let m = vrep.vertices[0].len();
    let mut acc = vec![crate::rat(0); m];
    let mut point_count = 0i64;
    for &g in generators {
        if g < nv {
            point_count += 1;
            for (a, x) in acc.iter_mut().zip(vrep.vertices[g].iter()) {
                *a = &*a + x;
            }
        }
    }
    let scale = crate::rat(point_count.max(1));
    for a in acc.iter_mut() {
        *a = &*a / &scale;
    }
    for &g in generators {
        if g >= nv {
            for (a, x) in acc.iter_mut().zip(vrep.rays[g - nv].iter()) {
                *a = &*a + x;
            }
        }
    }
    acc
}

/// A cell is bounded exactly when its covector sets jointly cover every
/// coordinate.
pub fn covector_covers_all(cv: &Covector, d: usize) -> bool {
    let all = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    cv.iter().fold(0u64, |acc, m| acc | m) == all
}

/// Number of connected components of the tie graph on the coordinates,
/// where each covector set makes its members mutually adjacent.
fn tie_graph_components(cv: &Covector, d: usize) -> usize {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for mask in cv {
        let members: Vec<usize> = (0..d).filter(|j| mask & (1 << j) != 0).collect();
        for w in members.windows(2) {
            let a = find(&mut parent, w[0]);
            let b = find(&mut parent, w[1]);
            parent[a] = b;
        }
    }
    (0..d).map(|j| find(&mut parent, j)).collect::<BTreeSet<_>>().len()
}
