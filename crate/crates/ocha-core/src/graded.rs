//! Finite graded vector spaces with a declared degree shift.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// A finite-dimensional graded vector space: an ordered basis of labelled
/// elements with integer degrees, plus a shift constant.
///
/// All signs in the engine use the *shifted* degree of a basis element,
/// `degree − shift`.  The shift is fixed at construction; the conventional
/// defaults are shift 2 for closed-string spaces and shift 1 for open-string
/// spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    name: String,
    shift: i64,
    labels: Vec<String>,
    degrees: Vec<i64>,
    index: BTreeMap<String, u32>,
}

/// Shared handle to a graded space.  Values built over a space hold one of
/// these; equality is structural (same name, shift and basis).
pub type Space = Arc<GradedSpace>;

impl GradedSpace {
    pub fn new(
        name: impl Into<String>,
        shift: i64,
        basis: impl IntoIterator<Item = (String, i64)>,
    ) -> Result<Space, CoreError> {
        let name = name.into();
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut index = BTreeMap::new();
        for (label, degree) in basis {
            if index.insert(label.clone(), labels.len() as u32).is_some() {
                return Err(CoreError::DuplicateLabel { label });
            }
            labels.push(label);
            degrees.push(degree);
        }
        Ok(Arc::new(GradedSpace {
            name,
            shift,
            labels,
            degrees,
            index,
        }))
    }

    /// The zero-dimensional space, usable as a trivial closed-string side.
    pub fn zero(name: impl Into<String>, shift: i64) -> Space {
        GradedSpace::new(name, shift, core::iter::empty()).expect("empty basis")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn dim(&self) -> u32 {
        self.labels.len() as u32
    }

    pub fn degree(&self, idx: u32) -> i64 {
        self.degrees[idx as usize]
    }

    /// Shifted degree `degree − shift` of the basis element `idx`.
    pub fn shifted_degree(&self, idx: u32) -> i64 {
        self.degrees[idx as usize] - self.shift
    }

    pub fn label(&self, idx: u32) -> &str {
        &self.labels[idx as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = (u32, &str, i64)> {
        self.labels
            .iter()
            .zip(&self.degrees)
            .enumerate()
            .map(|(i, (l, d))| (i as u32, l.as_str(), *d))
    }

    pub fn check_index(&self, idx: u32) -> Result<(), CoreError> {
        if (idx as usize) < self.labels.len() {
            Ok(())
        } else {
            Err(CoreError::UnknownBasisElement {
                space: self.name.clone(),
                index: idx as usize,
            })
        }
    }
}

/// Structural equality of space handles (fast path on pointer identity).
pub fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Which kind of multilinear map a degree computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// `B^{∧l} ⊗ A^{⊗k} → A'`; requires `(l, k) ≠ (0, 0)`.
    OpenClosed,
    /// `B^{∧l} → B'`; requires `l ≥ 1`.
    ClosedOnly,
}

/// Shifted degree of a multilinear map from its raw degree and arities:
/// `|φ| = raw + l·(source closed shift) + k·(source open shift) − (target shift)`,
/// chosen so that `|φ(b; a)| = |φ| + Σ|b_i| + Σ|a_i|` for shifted degrees of
/// the inputs and output.
pub fn shifted_map_degree(
    kind: MapKind,
    l: u32,
    k: u32,
    raw_degree: i64,
    closed_shift: i64,
    open_shift: i64,
    target_shift: i64,
) -> Result<i64, CoreError> {
    match kind {
        MapKind::OpenClosed => {
            if l == 0 && k == 0 {
                return Err(CoreError::ForbiddenArity { l, k });
            }
        }
        MapKind::ClosedOnly => {
            if l == 0 || k != 0 {
                return Err(CoreError::ForbiddenArity { l, k });
            }
        }
    }
    Ok(raw_degree + (l as i64) * closed_shift + (k as i64) * open_shift - target_shift)
}

/// A sparse vector in a graded space.  Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    space: Space,
    entries: BTreeMap<u32, Scalar>,
}

impl Vector {
    pub fn zero(space: &Space) -> Self {
        Vector {
            space: space.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(space: &Space, idx: u32) -> Result<Self, CoreError> {
        space.check_index(idx)?;
        let mut entries = BTreeMap::new();
        entries.insert(idx, Scalar::one());
        Ok(Vector {
            space: space.clone(),
            entries,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, idx: u32) -> Scalar {
        self.entries.get(&idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.entries.iter().map(|(i, s)| (*i, s))
    }

    pub fn add_term(&mut self, idx: u32, coeff: &Scalar) -> Result<(), CoreError> {
        self.space.check_index(idx)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry(idx).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.entries.remove(&idx);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Vector) -> Result<Vector, CoreError> {
        if !same_space(&self.space, &rhs.space) {
            return Err(CoreError::SpaceMismatch { context: "vector addition" });
        }
        let mut out = self.clone();
        for (idx, c) in rhs.entries() {
            out.add_term(idx, c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero(&self.space);
        }
        Vector {
            space: self.space.clone(),
            entries: self
                .entries
                .iter()
                .map(|(i, s)| (*i, s * c))
                .collect(),
        }
    }

    /// Shifted degree when the vector is homogeneous; `None` when zero or
    /// mixed.
    pub fn homogeneous_shifted_degree(&self) -> Option<i64> {
        let mut it = self.entries.keys();
        let first = self.space.shifted_degree(*it.next()?);
        for idx in it {
            if self.space.shifted_degree(*idx) != first {
                return None;
            }
        }
        Some(first)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, self.space.label(*idx))?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn space() -> Space {
        GradedSpace::new(
            "A",
            1,
            vec![("e".to_string(), 0), ("x".to_string(), 2)],
        )
        .unwrap()
    }

    #[test]
    fn shifted_degrees() {
        let a = space();
        assert_eq!(a.shifted_degree(0), -1);
        assert_eq!(a.shifted_degree(1), 1);
        assert_eq!(a.index_of("x"), Some(1));
        assert!(a.check_index(2).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = GradedSpace::new(
            "A",
            0,
            vec![("e".to_string(), 0), ("e".to_string(), 1)],
        );
        assert!(matches!(r, Err(CoreError::DuplicateLabel { .. })));
    }

    #[test]
    fn map_degree_bookkeeping() {
        // A differential: l=0, k=1, raw degree 1, equal shifts.
        assert_eq!(
            shifted_map_degree(MapKind::OpenClosed, 0, 1, 1, 2, 1, 1).unwrap(),
            1
        );
        // A degree-preserving closed-to-open map with j_B = 2, j_A = 1.
        assert_eq!(
            shifted_map_degree(MapKind::OpenClosed, 1, 0, 0, 2, 1, 1).unwrap(),
            1
        );
        assert!(shifted_map_degree(MapKind::OpenClosed, 0, 0, 0, 2, 1, 1).is_err());
        assert!(shifted_map_degree(MapKind::ClosedOnly, 0, 0, 0, 2, 2, 2).is_err());
        assert!(shifted_map_degree(MapKind::ClosedOnly, 1, 1, 0, 2, 2, 2).is_err());
    }

    #[test]
    fn vector_arithmetic_is_sparse() {
        let a = space();
        let e = Vector::basis(&a, 0).unwrap();
        let minus_e = e.scale(&Scalar::from_int(-1));
        let sum = e.add(&minus_e).unwrap();
        assert!(sum.is_zero());
    }
}
