//! Ordered-field abstraction shared by exact rationals and Puiseux series.
//!
//! All classical (non-tropical) geometry in this crate — convex hulls, face
//! lattices, orientations — is written against [`OrderedField`] so that the
//! same double-description code runs over plain rationals (used for covector
//! cells and as an independent test instantiation) and over the Puiseux field
//! (used for lifts).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Sign of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// Sign as `-1`, `0`, or `1`.
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    /// Sign of a product.
    pub fn times(self, other: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * other.as_i8())
    }

    /// Compact single-character form: `-`, `0`, `+`.
    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// An ordered field with by-value arithmetic and exact sign information.
///
/// The additive and multiplicative structure comes from the
/// [`num_traits::Zero`] and [`num_traits::One`] supertraits (which also
/// provide `zero()`, `one()` and `is_zero()`); the order is recovered from
/// [`OrderedField::sign`]: `a < b` iff `(a - b).sign() == Sign::Negative`.
/// Implementations must be exact — no rounding anywhere.
pub trait OrderedField:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn sign(&self) -> Sign;
    fn from_integer(n: i64) -> Self;

    /// Compare two elements through the sign of their difference.
    fn compare(&self, other: &Self) -> std::cmp::Ordering {
        match (self.clone() - other.clone()).sign() {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        }
    }

    /// Rescale a projectively meaningful vector in place by a **positive**
    /// scalar to a smaller canonical representative.  Used by the hull code to
    /// keep double-description intermediates small; the default is a no-op.
    fn simplify_projective(coords: &mut [Self]) {
        let _ = coords;
    }
}

impl OrderedField for Rat {
    fn sign(&self) -> Sign {
        if <Rat as Zero>::is_zero(self) {
            Sign::Zero
        } else if self.numer().is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn from_integer(n: i64) -> Self {
        Rat::from(BigInt::from(n))
    }

    /// Clear denominators and divide by the integer content, keeping signs.
    fn simplify_projective(coords: &mut [Self]) {
        use num_integer::Integer;
        if coords.iter().all(|c| <Rat as Zero>::is_zero(c)) {
            return;
        }
        let mut den_lcm = BigInt::one();
        for c in coords.iter() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in coords.iter() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        if num_gcd.is_zero() {
            return;
        }
        for c in coords.iter_mut() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            *c = Rat::from(scaled / &num_gcd);
        }
    }
}

/// Dot product of two equal-length slices.
pub fn dot<F: OrderedField>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

/// `a - c * b` componentwise, the elimination step used all over the hull code.
pub fn axpy_neg<F: OrderedField>(a: &[F], c: &F, b: &[F]) -> Vec<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.clone() - c.clone() * y.clone())
        .collect()
}

/// `bp * a - ap * b` componentwise: the cross-multiplied elimination step.
///
/// With `ap = a[col]` and `bp = b[col]` this zeroes column `col` of `a`
/// without ever dividing, so entries stay inside the ring generated by the
/// inputs — crucial for fields whose division produces bulky quotients.  The
/// result is the eliminated row scaled by `bp`, which callers must account
/// for when `bp` can be negative.
pub fn cross_axpy<F: OrderedField>(a: &[F], ap: &F, b: &[F], bp: &F) -> Vec<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| bp.clone() * x.clone() - ap.clone() * y.clone())
        .collect()
}

/// Lexicographic comparison of coordinate vectors by field order.
pub fn lex_cmp<F: OrderedField>(a: &[F], b: &[F]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.compare(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Rank of a list of row vectors, by division-free Gaussian elimination.
///
/// Elimination steps are cross-multiplied (each updated row is a nonzero
/// multiple of the usual one, which changes neither the row space's dimension
/// nor later pivots' vanishing) and working rows are renormalized through
/// [`OrderedField::simplify_projective`].
pub fn rank<F: OrderedField>(rows: &[Vec<F>]) -> usize {
    let mut mat: Vec<Vec<F>> = rows.to_vec();
    for row in mat.iter_mut() {
        F::simplify_projective(row);
    }
    let cols = mat.first().map_or(0, |r| r.len());
    let mut r = 0usize;
    for col in 0..cols {
        let Some(pivot) = (r..mat.len()).find(|&i| mat[i][col].sign() != Sign::Zero) else {
            continue;
        };
        mat.swap(r, pivot);
        let (head, tail) = mat.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[col].sign() != Sign::Zero {
                let ap = row[col].clone();
                *row = cross_axpy(row, &ap, prow, &prow[col]);
                F::simplify_projective(row);
            }
        }
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form with unit pivots; zero rows are dropped.
///
/// The result is the canonical basis of the row space, so two inputs span the
/// same space iff their reduced forms are equal.  Forward elimination is
/// cross-multiplied (each working row is a nonzero multiple of the usual one,
/// invisible in the canonical output) with rows kept small via
/// [`OrderedField::simplify_projective`]; the unit-pivot normalization and
/// upward sweep happen afterwards, bottom-up.
pub fn rref<F: OrderedField>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut mat: Vec<Vec<F>> = rows.to_vec();
    for row in mat.iter_mut() {
        F::simplify_projective(row);
    }
    let cols = mat.first().map_or(0, |r| r.len());
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        let r = pivots.len();
        let Some(pivot) = (r..mat.len()).find(|&i| mat[i][col].sign() != Sign::Zero) else {
            continue;
        };
        mat.swap(r, pivot);
        let (head, tail) = mat.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[col].sign() != Sign::Zero {
                let ap = row[col].clone();
                *row = cross_axpy(row, &ap, prow, &prow[col]);
                F::simplify_projective(row);
            }
        }
        pivots.push(col);
        if pivots.len() == mat.len() {
            break;
        }
    }
    mat.truncate(pivots.len());
    for r in (0..mat.len()).rev() {
        let col = pivots[r];
        F::simplify_projective(&mut mat[r]);
        let lead = mat[r][col].clone();
        for entry in mat[r].iter_mut() {
            *entry = entry.clone() / lead.clone();
        }
        for i in 0..r {
            if mat[i][col].sign() != Sign::Zero {
                let factor = mat[i][col].clone();
                mat[i] = axpy_neg(&mat[i], &factor, &mat[r]);
            }
        }
    }
    mat
}

/// Reduce `v` modulo the row space of an `rref` basis, zeroing pivot columns.
pub fn reduce_mod<F: OrderedField>(v: &[F], basis: &[Vec<F>]) -> Vec<F> {
    let mut out = v.to_vec();
    for row in basis {
        let Some(col) = row.iter().position(|x| x.sign() != Sign::Zero) else {
            continue;
        };
        if out[col].sign() != Sign::Zero {
            let factor = out[col].clone() / row[col].clone();
            out = axpy_neg(&out, &factor, row);
        }
    }
    out
}

/// Determinant of a square matrix by Gaussian elimination with exact division.
pub fn determinant<F: OrderedField>(mat: &[Vec<F>]) -> F {
    let n = mat.len();
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<F>> = mat.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| m[i][col].sign() != Sign::Zero) else {
            return F::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det = det * m[col][col].clone();
        let (head, tail) = m.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            if row[col].sign() != Sign::Zero {
                let factor = row[col].clone() / prow[col].clone();
                *row = axpy_neg(row, &factor, prow);
            }
        }
    }
    det
}

/// Sign of the determinant, computed division-free with working rows
/// renormalized through [`OrderedField::simplify_projective`].
///
/// Row rescales multiply the determinant by a known-sign amount, so the sign
/// survives even though the value is given up: the positive simplify rescales
/// are free, and each cross-multiplied elimination step scales its row by the
/// pivot entry, compensated by one flip whenever that entry is negative.
/// This keeps the elimination fast for fields (like Puiseux quotients) whose
/// elements grow under repeated division.
pub fn determinant_sign<F: OrderedField>(mat: &[Vec<F>]) -> Sign {
    let n = mat.len();
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<F>> = mat.to_vec();
    for row in m.iter_mut() {
        F::simplify_projective(row);
    }
    let mut sign = Sign::Positive;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| m[i][col].sign() != Sign::Zero) else {
            return Sign::Zero;
        };
        if pivot != col {
            m.swap(col, pivot);
            sign = sign.flip();
        }
        let psign = m[col][col].sign();
        sign = sign.times(psign);
        let (head, tail) = m.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            if row[col].sign() != Sign::Zero {
                let ap = row[col].clone();
                *row = cross_axpy(row, &ap, prow, &prow[col]);
                if psign == Sign::Negative {
                    sign = sign.flip();
                }
                F::simplify_projective(row);
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn sign_arithmetic() {
        assert_eq!(Sign::Negative.times(Sign::Negative), Sign::Positive);
        assert_eq!(Sign::Negative.times(Sign::Zero), Sign::Zero);
        assert_eq!(Sign::Positive.flip(), Sign::Negative);
        assert_eq!(Sign::from_i8(-7), Sign::Negative);
    }

    #[test]
    fn rational_field_basics() {
        let half = ratio(1, 2);
        assert_eq!(half.sign(), Sign::Positive);
        assert_eq!((half.clone() - ratio(1, 2)).sign(), Sign::Zero);
        assert_eq!(ratio(-3, 4).sign(), Sign::Negative);
        assert_eq!(
            ratio(1, 3).compare(&ratio(1, 2)),
            std::cmp::Ordering::Less
        );
    }

    #[test]
    fn rational_projective_simplification() {
        let mut v = vec![ratio(1, 2), ratio(-3, 4), rat(0)];
        Rat::simplify_projective(&mut v);
        assert_eq!(v, vec![rat(2), rat(-3), rat(0)]);
        // Direction is preserved: only positive rescaling is allowed.
        assert_eq!(v[0].sign(), Sign::Positive);
        assert_eq!(v[1].sign(), Sign::Negative);
    }

    #[test]
    fn dot_and_elimination_helpers() {
        let a = vec![rat(1), rat(2), rat(3)];
        let b = vec![rat(4), rat(5), rat(6)];
        assert_eq!(dot(&a, &b), rat(32));
        assert_eq!(axpy_neg(&a, &rat(2), &b), vec![rat(-7), rat(-8), rat(-9)]);
    }

    #[test]
    fn rank_detects_dependent_rows() {
        let rows = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[vec![rat(0), rat(0)]]), 0);
    }

    #[test]
    fn rref_is_canonical_for_the_row_space() {
        let a = vec![vec![rat(2), rat(2), rat(0)], vec![rat(0), rat(0), rat(3)]];
        let b = vec![vec![rat(1), rat(1), rat(5)], vec![rat(0), rat(0), rat(1)]];
        assert_eq!(rref(&a), rref(&b));
        let reduced = reduce_mod(&[rat(4), rat(7), rat(9)], &rref(&a));
        assert_eq!(reduced, vec![rat(0), rat(3), rat(0)]);
    }

    #[test]
    fn determinant_signs_and_singularity() {
        let m = vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ];
        assert_eq!(determinant(&m), rat(-1));
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(determinant(&singular), rat(0));
        let frac = vec![vec![ratio(1, 2), rat(0)], vec![rat(7), ratio(2, 3)]];
        assert_eq!(determinant(&frac), ratio(1, 3));
    }

    #[test]
    fn determinant_sign_agrees_with_exact_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5157);
        for n in 1..=5usize {
            for _ in 0..40 {
                let m: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect())
                    .collect();
                assert_eq!(
                    determinant_sign(&m),
                    determinant(&m).sign(),
                    "sign mismatch on {m:?}"
                );
            }
        }
    }
}
