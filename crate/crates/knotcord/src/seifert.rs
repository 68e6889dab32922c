//! Validated Seifert matrices and the constructors for every knot family
//! the library works with.
//!
//! A Seifert matrix here is a square integer matrix `V` of even dimension
//! `2g` with `det(V - V^T) = 1`; `g` is the genus of the underlying spanning
//! surface. The 0x0 matrix is the unknot and acts as the identity for
//! connected sum.

use crate::linalg::{self, IMat};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix dimension {0} is odd; a Seifert matrix has even dimension")]
    OddDimension(usize),
    #[error("det(V - V^T) = {0}, expected 1; not the intersection form of a once-punctured surface")]
    NonUnimodularIntersectionForm(String),
    #[error("pretzel needs an odd number of strand parameters, got {0}")]
    EvenParameterCount(usize),
    #[error("pretzel strand parameter {0} is even; all parameters must be odd")]
    EvenEntry(i64),
    #[error("bad constructor parameter: {0}")]
    BadParameter(String),
    #[error("matrix rows have unequal lengths")]
    NotSquare,
    #[error("entry overflow while assembling the matrix")]
    EntryOverflow,
}

/// Square integer matrix `V` with `det(V - V^T) = 1`.
///
/// Instances are immutable; every operation returns a fresh matrix.
/// Equality compares dimensions and entries; the provenance note is
/// display-only.
#[derive(Clone, Debug)]
pub struct SeifertMatrix {
    dim: usize,
    entries: Vec<i64>,
    provenance: Option<String>,
}

impl PartialEq for SeifertMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for SeifertMatrix {}

impl SeifertMatrix {
    /// Validation gate: wraps `rows` iff the dimension is even and
    /// `det(V - V^T) = 1`.
    pub fn validate(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(MatrixError::NotSquare);
        }
        if dim % 2 != 0 {
            return Err(MatrixError::OddDimension(dim));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in &rows {
            entries.extend_from_slice(r);
        }
        let m = Self {
            dim,
            entries,
            provenance: None,
        };
        let d = linalg::determinant(&m.intersection_form());
        if !d.is_one() {
            return Err(MatrixError::NonUnimodularIntersectionForm(d.to_string()));
        }
        Ok(m)
    }

    // Constructors preserve det(V - V^T) = 1 structurally; the property
    // tests quantify this over parameter grids, so no determinant is
    // recomputed here (connected sums grow large).
    fn validated_unchecked(dim: usize, entries: Vec<i64>, provenance: String) -> Self {
        Self {
            dim,
            entries,
            provenance: Some(provenance),
        }
    }

    /// The 0x0 matrix of the unknot.
    pub fn unknot() -> Self {
        Self::validated_unchecked(0, Vec::new(), "unknot".to_string())
    }

    /// Seifert matrix of the (p1, ..., p_{2k+1}) pretzel knot on its
    /// standard genus-k surface: a banded 2k x 2k form with
    /// `V[i][i] = (p_i + p_{i+1})/2`, `V[i][i+1] = (p_{i+1} + 1)/2`,
    /// `V[i+1][i] = (p_{i+1} - 1)/2`.
    pub fn pretzel(params: &[i64]) -> Result<Self, MatrixError> {
        if params.len() % 2 == 0 || params.is_empty() {
            return Err(MatrixError::EvenParameterCount(params.len()));
        }
        if let Some(&p) = params.iter().find(|p| *p % 2 == 0) {
            return Err(MatrixError::EvenEntry(p));
        }
        let dim = params.len() - 1;
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = params[i]
                .checked_add(params[i + 1])
                .ok_or(MatrixError::EntryOverflow)?
                / 2;
            if i + 1 < dim {
                entries[i * dim + i + 1] = (params[i + 1] + 1) / 2;
                entries[(i + 1) * dim + i] = (params[i + 1] - 1) / 2;
            }
        }
        let prov = format!(
            "pretzel({})",
            params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        );
        Ok(Self::validated_unchecked(dim, entries, prov))
    }

    /// Seifert matrix of the (2, q) torus knot, q odd and >= 3: the
    /// (q-1) x (q-1) bidiagonal form with -1 on the diagonal and 1 above.
    pub fn torus2(q: i64) -> Result<Self, MatrixError> {
        if q < 3 || q % 2 == 0 {
            return Err(MatrixError::BadParameter(format!(
                "torus(2,q) needs odd q >= 3, got q = {q}"
            )));
        }
        let dim = (q - 1) as usize;
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = -1;
            if i + 1 < dim {
                entries[i * dim + i + 1] = 1;
            }
        }
        Ok(Self::validated_unchecked(dim, entries, format!("torus(2,{q})")))
    }

    /// Genus-1 twist form `[[-1, 1], [0, m]]`, m nonzero.
    pub fn twist(m: i64) -> Result<Self, MatrixError> {
        if m == 0 {
            return Err(MatrixError::BadParameter(
                "twist(0) is an unknot form; use unknot() instead".to_string(),
            ));
        }
        Ok(Self::validated_unchecked(2, vec![-1, 1, 0, m], format!("twist({m})")))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Genus of the underlying surface: dimension / 2.
    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn to_imat(&self) -> IMat {
        IMat::from_fn(self.dim, self.dim, |i, j| self.entry(i, j).into())
    }

    /// The intersection form `V - V^T` of the surface.
    pub fn intersection_form(&self) -> IMat {
        IMat::from_fn(self.dim, self.dim, |i, j| {
            (self.entry(i, j) - self.entry(j, i)).into()
        })
    }

    /// Symmetrized form `V + V^T`.
    pub fn symmetrized(&self) -> IMat {
        IMat::from_fn(self.dim, self.dim, |i, j| {
            (self.entry(i, j) + self.entry(j, i)).into()
        })
    }

    /// Block-diagonal sum; models connected sum of knots. The unknot is the
    /// identity.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let dim = self.dim + other.dim;
        let mut entries = vec![0i64; dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i * dim + j] = self.entry(i, j);
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                entries[(self.dim + i) * dim + (self.dim + j)] = other.entry(i, j);
            }
        }
        let prov = format!(
            "sum({}, {})",
            self.provenance.as_deref().unwrap_or("matrix"),
            other.provenance.as_deref().unwrap_or("matrix")
        );
        Self::validated_unchecked(dim, entries, prov)
    }

    /// Reversed knot: transpose.
    pub fn reverse(&self) -> SeifertMatrix {
        self.unary(|v, i, j| v.entry(j, i), "rev")
    }

    /// Concordance inverse -K: negation.
    pub fn inverse(&self) -> SeifertMatrix {
        self.unary(|v, i, j| -v.entry(i, j), "inv")
    }

    /// Mirror image: negated transpose.
    pub fn mirror(&self) -> SeifertMatrix {
        self.unary(|v, i, j| -v.entry(j, i), "mirror")
    }

    fn unary(&self, f: impl Fn(&Self, usize, usize) -> i64, op: &str) -> SeifertMatrix {
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries.push(f(self, i, j));
            }
        }
        let prov = format!("{op}({})", self.provenance.as_deref().unwrap_or("matrix"));
        Self::validated_unchecked(self.dim, entries, prov)
    }

    /// Indices grouped by connected component of the nonzero support
    /// pattern; each group is a diagonal block of the matrix.
    pub fn diagonal_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in 0..n {
                    if !seen[j] && (self.entry(i, j) != 0 || self.entry(j, i) != 0) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            blocks.push(comp);
        }
        blocks
    }

    /// i64 rows of the principal submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.entry(i, j)).collect())
            .collect()
    }
}

/// Genus bookkeeping for a knot: constructor-tracked upper bounds and
/// signature-derived lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusData {
    g3_upper: usize,
    g4_lower: usize,
    g4_upper: usize,
}

impl GenusData {
    pub fn new(g3_upper: usize, g4_lower: usize, g4_upper: usize) -> Option<Self> {
        if g4_lower <= g4_upper && g4_upper <= g3_upper {
            Some(GenusData {
                g3_upper,
                g4_lower,
                g4_upper,
            })
        } else {
            None
        }
    }

    pub fn g3_upper(&self) -> usize {
        self.g3_upper
    }

    pub fn g4_lower(&self) -> usize {
        self.g4_lower
    }

    pub fn g4_upper(&self) -> usize {
        self.g4_upper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let empty = SeifertMatrix::validate(vec![]).unwrap();
        assert_eq!(empty.genus(), 0);

        let v = SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(v.genus(), 1);

        match SeifertMatrix::validate(vec![vec![1, 0], vec![0, 1]]) {
            Err(MatrixError::NonUnimodularIntersectionForm(d)) => assert_eq!(d, "0"),
            other => panic!("expected NonUnimodularIntersectionForm, got {other:?}"),
        }

        assert!(matches!(
            SeifertMatrix::validate(vec![vec![0]]),
            Err(MatrixError::OddDimension(1))
        ));
    }

    #[test]
    fn pretzel_examples() {
        let t = SeifertMatrix::pretzel(&[1, 1, 1]).unwrap();
        assert_eq!(t.rows(), vec![vec![1, 1], vec![0, 1]]);

        let p = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        assert_eq!(p.rows(), vec![vec![4, 3], vec![2, 6]]);

        let p5 = SeifertMatrix::pretzel(&[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(p5.genus(), 2);
        for i in 0..4 {
            assert_eq!(p5.entry(i, i), 1);
        }

        assert!(matches!(
            SeifertMatrix::pretzel(&[1, 1]),
            Err(MatrixError::EvenParameterCount(2))
        ));
        assert!(matches!(
            SeifertMatrix::pretzel(&[1, 2, 3]),
            Err(MatrixError::EvenEntry(2))
        ));
    }

    #[test]
    fn torus2_examples() {
        let t3 = SeifertMatrix::torus2(3).unwrap();
        assert_eq!(t3.rows(), vec![vec![-1, 1], vec![0, -1]]);
        let t7 = SeifertMatrix::torus2(7).unwrap();
        assert_eq!(t7.dim(), 6);
        assert!(matches!(SeifertMatrix::torus2(4), Err(MatrixError::BadParameter(_))));
        assert!(matches!(SeifertMatrix::torus2(1), Err(MatrixError::BadParameter(_))));
    }

    #[test]
    fn twist_examples() {
        let w = SeifertMatrix::twist(1).unwrap();
        assert_eq!(w.rows(), vec![vec![-1, 1], vec![0, 1]]);
        assert_eq!(SeifertMatrix::twist(-1).unwrap().rows(), SeifertMatrix::torus2(3).unwrap().rows());
        assert!(matches!(SeifertMatrix::twist(0), Err(MatrixError::BadParameter(_))));
    }

    #[test]
    fn sum_and_unary_ops() {
        let v = SeifertMatrix::torus2(3).unwrap();
        let u = SeifertMatrix::unknot();
        assert_eq!(u.connected_sum(&v).rows(), v.rows());
        assert_eq!(v.connected_sum(&u).rows(), v.rows());

        assert_eq!(v.reverse().rows(), vec![vec![-1, 0], vec![1, -1]]);
        assert_eq!(v.inverse().inverse().rows(), v.rows());
        assert_eq!(v.reverse().reverse().rows(), v.rows());
        assert_eq!(v.mirror().mirror().rows(), v.rows());
        assert_eq!(v.mirror().rows(), v.inverse().reverse().rows());
        assert_eq!(v.mirror().rows(), v.reverse().inverse().rows());

        let w = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        let s = v.connected_sum(&w);
        assert_eq!(s.genus(), v.genus() + w.genus());
    }

    #[test]
    fn constructor_outputs_validate_on_a_grid() {
        for a in [-3i64, -1, 1, 3, 5] {
            for b in [-3i64, -1, 1, 3, 7] {
                for c in [-1i64, 1, 5, 9] {
                    let p = SeifertMatrix::pretzel(&[a, b, c]).unwrap();
                    assert!(SeifertMatrix::validate(p.rows()).is_ok(), "pretzel({a},{b},{c})");
                }
            }
        }
        for q in [3i64, 5, 7, 9, 11, 13] {
            let t = SeifertMatrix::torus2(q).unwrap();
            assert!(SeifertMatrix::validate(t.rows()).is_ok());
            assert_eq!(t.genus(), (q as usize - 1) / 2);
        }
        for m in [-4i64, -2, -1, 1, 2, 4] {
            let w = SeifertMatrix::twist(m).unwrap();
            assert!(SeifertMatrix::validate(w.rows()).is_ok());
            assert_eq!(w.genus(), 1);
        }
    }

    #[test]
    fn connected_sum_is_associative() {
        let a = SeifertMatrix::pretzel(&[1, 1, 1]).unwrap();
        let b = SeifertMatrix::torus2(5).unwrap();
        let c = SeifertMatrix::twist(2).unwrap();
        assert_eq!(
            a.connected_sum(&b).connected_sum(&c),
            a.connected_sum(&b.connected_sum(&c))
        );
    }

    #[test]
    fn diagonal_classes_have_zero_framing() {
        // z = (x, x) on V ⊕ -V^T pairs to zero for every integer x,
        // because x^T V x = x^T V^T x
        let v = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        let w = v.connected_sum(&v.mirror());
        for x in [[1i64, 0], [0, 1], [1, 1], [2, -3], [-5, 7], [4, 6]] {
            let z = [x[0], x[1], x[0], x[1]];
            let mut framing = 0i64;
            for i in 0..4 {
                for j in 0..4 {
                    framing += z[i] * w.entry(i, j) * z[j];
                }
            }
            assert_eq!(framing, 0, "class {x:?}");
        }
    }

    #[test]
    fn genus_data_enforces_ordering() {
        assert!(GenusData::new(3, 1, 2).is_some());
        assert!(GenusData::new(3, 3, 3).is_some());
        assert!(GenusData::new(2, 3, 2).is_none());
        assert!(GenusData::new(2, 1, 3).is_none());
        let g = GenusData::new(4, 1, 3).unwrap();
        assert_eq!((g.g3_upper(), g.g4_lower(), g.g4_upper()), (4, 1, 3));
    }

    #[test]
    fn diagonal_blocks_split_sums() {
        let v = SeifertMatrix::torus2(3).unwrap();
        let w = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        let s = v.connected_sum(&w);
        let blocks = s.diagonal_blocks();
        assert_eq!(blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(s.submatrix(&blocks[1]), w.rows());
    }
}
