//! Finite-dimensional integer-graded vector spaces with named bases, sparse
//! vectors in them, and degree-homogeneous sparse linear maps.
//!
//! Basis order is the single source of determinism in the whole kernel: a
//! [`GradedSpace`] always stores its basis ascending by `(degree, label)`, and
//! every echelon form, representative choice and report downstream inherits
//! that order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// A graded basis: unique labels, each with an integer degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    basis: Vec<(String, i64)>,
    label_index: BTreeMap<String, usize>,
    degree_index: BTreeMap<i64, Vec<usize>>,
}

impl GradedSpace {
    /// Builds a space from `(label, degree)` pairs. The basis is sorted
    /// ascending by `(degree, label)`; duplicate labels are rejected.
    pub fn new(mut basis: Vec<(String, i64)>) -> Result<Arc<Self>, CoreError> {
        basis.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let mut label_index = BTreeMap::new();
        let mut degree_index: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, (label, degree)) in basis.iter().enumerate() {
            if label_index.insert(label.clone(), i).is_some() {
                return Err(CoreError::DuplicateLabel(label.clone()));
            }
            degree_index.entry(*degree).or_default().push(i);
        }
        Ok(Arc::new(GradedSpace { basis, label_index, degree_index }))
    }

    pub fn from_labels(labels: &[(&str, i64)]) -> Arc<Self> {
        Self::new(labels.iter().map(|(l, d)| (l.to_string(), *d)).collect())
            .expect("labels are distinct")
    }

    /// Space with `n` degree-0 basis vectors named by `labels`.
    pub fn ungraded(labels: &[&str]) -> Arc<Self> {
        Self::from_labels(&labels.iter().map(|l| (*l, 0)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn require(&self, label: &str, context: &str) -> Result<usize, CoreError> {
        self.index_of(label).ok_or_else(|| CoreError::UnknownLabel {
            label: label.to_string(),
            context: context.to_string(),
        })
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.degree_index.keys().copied()
    }

    /// Basis positions of the given degree, in basis order.
    pub fn degree_positions(&self, degree: i64) -> &[usize] {
        self.degree_index.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree_dim(&self, degree: i64) -> usize {
        self.degree_positions(degree).len()
    }

    /// The degree-`n` slice as a standalone space (labels preserved), plus the
    /// positions each slice basis vector occupies in `self`.
    pub fn degree_slice(&self, degree: i64) -> (Arc<GradedSpace>, Vec<usize>) {
        let positions: Vec<usize> = self.degree_positions(degree).to_vec();
        let basis = positions.iter().map(|&i| self.basis[i].clone()).collect();
        let space = GradedSpace::new(basis).expect("labels already unique");
        (space, positions)
    }

    /// Same labels, all degrees shifted so that the slice `(V[k])^n = V^{n+k}`.
    pub fn shifted(&self, k: i64) -> Arc<GradedSpace> {
        GradedSpace::new(self.basis.iter().map(|(l, d)| (l.clone(), d - k)).collect())
            .expect("labels already unique")
    }

    /// Same labels, all degrees set to zero. Used when a computed current
    /// algebra is handed to the ungraded Lie-algebra machinery.
    pub fn flattened(&self) -> Arc<GradedSpace> {
        GradedSpace::new(self.basis.iter().map(|(l, _)| (l.clone(), 0)).collect())
            .expect("labels already unique")
    }
}

/// Tensor product of two graded spaces. Pair labels are `"a⊗b"`, degrees add,
/// and the combined basis is re-sorted into canonical `(degree, label)` order.
pub struct TensorSpace {
    pub space: Arc<GradedSpace>,
    /// For each basis position of `space`, the `(left, right)` factor indices.
    pub pairs: Vec<(usize, usize)>,
    pair_index: BTreeMap<(usize, usize), usize>,
}

impl TensorSpace {
    pub fn new(left: &GradedSpace, right: &GradedSpace) -> Self {
        let mut basis = Vec::with_capacity(left.dim() * right.dim());
        for i in 0..left.dim() {
            for j in 0..right.dim() {
                basis.push((
                    format!("{}⊗{}", left.label(i), right.label(j)),
                    left.degree(i) + right.degree(j),
                    (i, j),
                ));
            }
        }
        basis.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let pairs: Vec<(usize, usize)> = basis.iter().map(|(_, _, p)| *p).collect();
        let space = GradedSpace::new(basis.into_iter().map(|(l, d, _)| (l, d)).collect())
            .expect("factor labels are unique");
        let pair_index = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        TensorSpace { space, pairs, pair_index }
    }

    pub fn index_of_pair(&self, left: usize, right: usize) -> usize {
        self.pair_index[&(left, right)]
    }
}

/// Splits a tensor label at its last `⊗`, so nested left factors like
/// `"θ⊗ε⊗I(e)"` resolve to `("θ⊗ε", "I(e)")`.
pub fn split_tensor_label(label: &str) -> Option<(&str, &str)> {
    label.rfind('⊗').map(|i| (&label[..i], &label[i + '⊗'.len_utf8()..]))
}

/// A sparse vector: basis position → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vector {
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn unit(index: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(index, Scalar::one());
        Vector { entries }
    }

    pub fn term(index: usize, coeff: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(index, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn from_labels(
        space: &GradedSpace,
        terms: &[(&str, Scalar)],
        context: &str,
    ) -> Result<Self, CoreError> {
        let mut v = Vector::zero();
        for (label, coeff) in terms {
            v.add_term(space.require(label, context)?, coeff.clone());
        }
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.entries.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_term(&mut self, index: usize, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.entries.remove(&index);
                }
            }
            None => {
                self.entries.insert(index, coeff);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, x * c);
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn negated(&self) -> Vector {
        self.scaled(&-Scalar::one())
    }

    /// Renders the vector against a space's labels, e.g. `"2·I(e) - 1/2·L(h)"`.
    pub fn display<'a>(&'a self, space: &'a GradedSpace) -> VectorDisplay<'a> {
        VectorDisplay { vector: self, space }
    }

    /// Degree of a homogeneous vector, `None` for zero. Errors if entries mix
    /// degrees.
    pub fn homogeneous_degree(&self, space: &GradedSpace) -> Result<Option<i64>, CoreError> {
        let mut degree = None;
        for (i, _) in self.iter() {
            let d = space.degree(i);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(CoreError::DegreeMismatch(format!(
                        "vector mixes degrees {prev} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self, space: &GradedSpace) -> BTreeMap<i64, Vector> {
        let mut parts: BTreeMap<i64, Vector> = BTreeMap::new();
        for (i, c) in self.iter() {
            parts.entry(space.degree(i)).or_default().add_term(i, c.clone());
        }
        parts
    }
}

pub struct VectorDisplay<'a> {
    vector: &'a Vector,
    space: &'a GradedSpace,
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vector.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.vector.iter().enumerate() {
            let label = self.space.label(i);
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{c}·{label}")?;
            }
        }
        Ok(())
    }
}

/// A degree-homogeneous sparse linear map between graded spaces, stored by
/// columns: source basis position → image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Arc<GradedSpace>,
    pub target: Arc<GradedSpace>,
    pub degree: i64,
    columns: BTreeMap<usize, Vector>,
}

impl GradedMap {
    pub fn zero(source: Arc<GradedSpace>, target: Arc<GradedSpace>, degree: i64) -> Self {
        GradedMap { source, target, degree, columns: BTreeMap::new() }
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let columns = (0..space.dim()).map(|i| (i, Vector::unit(i))).collect();
        GradedMap { source: space.clone(), target: space, degree: 0, columns }
    }

    /// Builds a map from columns, checking degree homogeneity: every entry must
    /// connect basis elements with `deg(target) = deg(source) + degree`.
    pub fn from_columns(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        columns: BTreeMap<usize, Vector>,
    ) -> Result<Self, CoreError> {
        for (&j, v) in &columns {
            for (i, _) in v.iter() {
                let expect = source.degree(j) + degree;
                if target.degree(i) != expect {
                    return Err(CoreError::DegreeMismatch(format!(
                        "entry ({}, {}) has target degree {} ≠ {}",
                        target.label(i),
                        source.label(j),
                        target.degree(i),
                        expect
                    )));
                }
            }
        }
        let columns = columns.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(GradedMap { source, target, degree, columns })
    }

    pub fn from_label_entries(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        entries: &[(&str, &str, Scalar)],
        context: &str,
    ) -> Result<Self, CoreError> {
        let mut columns: BTreeMap<usize, Vector> = BTreeMap::new();
        for (target_label, source_label, coeff) in entries {
            let j = source.require(source_label, context)?;
            let i = target.require(target_label, context)?;
            columns.entry(j).or_default().add_term(i, coeff.clone());
        }
        Self::from_columns(source, target, degree, columns)
    }

    pub fn set_column(&mut self, j: usize, v: Vector) {
        if v.is_zero() {
            self.columns.remove(&j);
        } else {
            self.columns.insert(j, v);
        }
    }

    pub fn column(&self, j: usize) -> Vector {
        self.columns.get(&j).cloned().unwrap_or_default()
    }

    pub fn columns(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.columns.iter().map(|(j, v)| (*j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            if let Some(col) = self.columns.get(&j) {
                out.add_scaled(col, c);
            }
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        debug_assert_eq!(other.target.dim(), self.source.dim());
        let columns = other
            .columns
            .iter()
            .map(|(&j, v)| (j, self.apply(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            columns,
        }
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (&j, v) in &other.columns {
            let mut col = out.column(j);
            col.add_scaled(v, &Scalar::one());
            out.set_column(j, col);
        }
        out
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.add(&other.scaled(&-Scalar::one()))
    }

    pub fn scaled(&self, c: &Scalar) -> GradedMap {
        if c.is_zero() {
            return GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        }
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            columns: self.columns.iter().map(|(&j, v)| (j, v.scaled(c))).collect(),
        }
    }

    /// The ordinary commutator `self∘other − other∘self` (both degree-composable
    /// endomorphism-style maps on one space).
    pub fn commutator(&self, other: &GradedMap) -> GradedMap {
        self.compose(other).sub(&other.compose(self))
    }

    /// The graded commutator `self∘other − (−1)^{|self||other|} other∘self`.
    pub fn graded_commutator(&self, other: &GradedMap) -> GradedMap {
        let s = crate::scalar::sign(self.degree * other.degree);
        self.compose(other).sub(&other.compose(self).scaled(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_sorted_and_unique() {
        let s = GradedSpace::from_labels(&[("b", 0), ("a", 0), ("c", -1)]);
        assert_eq!(s.label(0), "c");
        assert_eq!(s.label(1), "a");
        assert_eq!(s.label(2), "b");
        assert!(GradedSpace::new(vec![("x".into(), 0), ("x".into(), 1)]).is_err());
    }

    #[test]
    fn tensor_degrees_add_and_unit_law() {
        let pt = GradedSpace::from_labels(&[("1", 0)]);
        let x = GradedSpace::from_labels(&[("u", 0), ("v", 1)]);
        let t = TensorSpace::new(&pt, &x);
        assert_eq!(t.space.dim(), 2);
        assert_eq!(t.space.degree_dim(0), 1);
        assert_eq!(t.space.degree_dim(1), 1);

        let a = GradedSpace::from_labels(&[("p", 0), ("q", 1)]);
        let b = GradedSpace::from_labels(&[("r", 0), ("s", -1), ("t", -1)]);
        let ab = TensorSpace::new(&a, &b);
        assert_eq!(ab.space.dim(), 6);
        let degrees: Vec<i64> = ab.space.degrees().collect();
        assert_eq!(degrees, vec![-1, 0, 1]);
        for (k, &(i, j)) in ab.pairs.iter().enumerate() {
            assert_eq!(ab.space.degree(k), a.degree(i) + b.degree(j));
            assert_eq!(ab.index_of_pair(i, j), k);
        }
    }

    #[test]
    fn split_label_uses_last_separator() {
        assert_eq!(split_tensor_label("θ⊗ε⊗I(e)"), Some(("θ⊗ε", "I(e)")));
        assert_eq!(split_tensor_label("plain"), None);
    }

    #[test]
    fn map_degree_checked() {
        let s = GradedSpace::from_labels(&[("x", 0), ("y", 1)]);
        let ok = GradedMap::from_label_entries(
            s.clone(),
            s.clone(),
            1,
            &[("y", "x", Scalar::one())],
            "test",
        );
        assert!(ok.is_ok());
        let bad = GradedMap::from_label_entries(
            s.clone(),
            s.clone(),
            1,
            &[("x", "y", Scalar::one())],
            "test",
        );
        assert!(bad.is_err());
    }

    #[test]
    fn apply_and_compose() {
        let s = GradedSpace::from_labels(&[("x", 0), ("y", 1)]);
        let d = GradedMap::from_label_entries(
            s.clone(),
            s.clone(),
            1,
            &[("y", "x", Scalar::from_int(2))],
            "test",
        )
        .unwrap();
        let v = Vector::from_labels(&s, &[("x", Scalar::from_int(3))], "test").unwrap();
        let dv = d.apply(&v);
        assert_eq!(dv.coeff(s.index_of("y").unwrap()), Scalar::from_int(6));
        assert!(d.compose(&d).is_zero());
    }
}
