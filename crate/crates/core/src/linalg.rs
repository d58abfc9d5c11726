//! Exact sparse linear algebra over ℚ: reduced row echelon form, kernels,
//! images, quotients and subquotients of graded spaces.
//!
//! Everything here is deterministic by construction. The pivot rule is "first
//! nonzero entry in basis order", subspaces are always presented by their
//! reduced echelon basis, and quotients are presented on the non-pivot basis
//! directions. Identical inputs produce bit-identical outputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::CoreError;
use crate::graded::{GradedMap, GradedSpace, Vector};
use crate::scalar::Scalar;

/// A sparse matrix given by rows; column indices live in `0..cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: Vec<Vector>,
    pub cols: usize,
}

impl SparseMatrix {
    pub fn new(rows: Vec<Vector>, cols: usize) -> Self {
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(data: &[&[i64]]) -> Self {
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let rows = data
            .iter()
            .map(|r| Vector::from_terms(r.iter().enumerate().map(|(j, &x)| (j, Scalar::from_int(x)))))
            .collect();
        SparseMatrix { rows, cols }
    }
}

/// Result of a reduced row echelon computation.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Row-equivalent echelon form of the input, zero rows kept at the bottom.
    pub matrix: SparseMatrix,
    /// Pivot column per nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form with the deterministic pivot rule: columns are
/// scanned in order and the first row with a nonzero entry wins. Pivots are
/// normalized to 1 and cleared above and below.
pub fn rref(input: &SparseMatrix) -> Echelon {
    let mut rows = input.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..input.cols {
        if next >= rows.len() {
            break;
        }
        let Some(pivot_row) = (next..rows.len()).find(|&r| !rows[r].coeff(col).is_zero()) else {
            continue;
        };
        rows.swap(next, pivot_row);
        let inv = rows[next].coeff(col).recip();
        rows[next] = rows[next].scaled(&inv);
        for r in 0..rows.len() {
            if r == next {
                continue;
            }
            let factor = rows[r].coeff(col);
            if !factor.is_zero() {
                let pivot = rows[next].scaled(&-factor);
                rows[r].add_scaled(&pivot, &Scalar::one());
            }
        }
        pivots.push(col);
        next += 1;
    }
    let rank = pivots.len();
    Echelon { matrix: SparseMatrix::new(rows, input.cols), pivots, rank }
}

/// Solves `Σ xᵢ·basis[i] = v` over coordinates `0..dim`. Returns the unique
/// deterministic solution with free variables set to zero, or `None`.
pub fn solve_in_span(basis: &[Vector], v: &Vector, dim: usize) -> Option<Vec<Scalar>> {
    // Augmented system: columns are the basis vectors plus v, rows are the
    // ambient coordinates.
    let k = basis.len();
    let mut rows = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut row = Vector::zero();
        for (i, b) in basis.iter().enumerate() {
            row.add_term(i, b.coeff(j));
        }
        row.add_term(k, v.coeff(j));
        rows.push(row);
    }
    let ech = rref(&SparseMatrix::new(rows, k + 1));
    if ech.pivots.contains(&k) {
        return None;
    }
    let mut solution = vec![Scalar::zero(); k];
    for (r, &p) in ech.pivots.iter().enumerate() {
        solution[p] = ech.matrix.rows[r].coeff(k);
    }
    Some(solution)
}

/// Whether a subquotient presents a subspace (section is an inclusion) or a
/// quotient (projection is the canonical surjection).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubquotientKind {
    Subspace,
    Quotient,
}

/// A subspace or quotient of a graded space with explicit, deterministic
/// projection and section maps satisfying `projection ∘ section = id`.
///
/// Subspaces are presented by reduced-echelon representatives; their labels
/// are the ambient labels at the leading positions. Quotients are presented on
/// the non-pivot ambient basis directions after echelonizing the killed
/// subspace.
#[derive(Debug, Clone)]
pub struct SubquotientBasis {
    pub kind: SubquotientKind,
    pub ambient: Arc<GradedSpace>,
    /// The subquotient itself as a graded space.
    pub space: Arc<GradedSpace>,
    /// Ambient representative of each `space` basis vector, in basis order.
    pub representatives: Vec<Vector>,
    /// Degree-0 map ambient → space.
    pub projection: GradedMap,
    /// Degree-0 map space → ambient; columns are the representatives.
    pub section: GradedMap,
}

/// Echelonizes a spanning set of a graded subspace, degree by degree. Input
/// vectors may be inhomogeneous; their homogeneous parts are used, which is
/// only correct because graded subspaces contain them.
fn graded_echelon_basis(ambient: &GradedSpace, spanning: &[Vector]) -> Vec<Vector> {
    let mut per_degree: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    for v in spanning {
        for (d, part) in v.homogeneous_parts(ambient) {
            per_degree.entry(d).or_default().push(part);
        }
    }
    let mut basis = Vec::new();
    for (_, rows) in per_degree {
        let ech = rref(&SparseMatrix::new(rows, ambient.dim()));
        for row in ech.matrix.rows.into_iter().take(ech.rank) {
            basis.push(row);
        }
    }
    basis
}

impl SubquotientBasis {
    /// The graded subspace spanned by the given vectors.
    pub fn subspace(ambient: Arc<GradedSpace>, spanning: &[Vector]) -> Self {
        let reps = graded_echelon_basis(&ambient, spanning);
        let leading: Vec<usize> = reps
            .iter()
            .map(|r| r.leading().expect("echelon rows are nonzero").0)
            .collect();
        let space = GradedSpace::new(
            leading.iter().map(|&l| (ambient.label(l).to_string(), ambient.degree(l))).collect(),
        )
        .expect("leading positions are distinct");
        // Echelon leading columns carry exactly one nonzero entry, so reading
        // them off is a retraction onto the subspace.
        let mut proj_cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for (i, &l) in leading.iter().enumerate() {
            let slot = space
                .index_of(ambient.label(l))
                .expect("labels transferred verbatim");
            proj_cols.insert(l, Vector::unit(slot));
            debug_assert_eq!(i, i);
        }
        let projection = GradedMap::from_columns(ambient.clone(), space.clone(), 0, proj_cols)
            .expect("degrees preserved");
        let mut ordered_reps = vec![Vector::zero(); space.dim()];
        let mut section_cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for (rep, &l) in reps.iter().zip(&leading) {
            let slot = space.index_of(ambient.label(l)).unwrap();
            ordered_reps[slot] = rep.clone();
            section_cols.insert(slot, rep.clone());
        }
        let section = GradedMap::from_columns(space.clone(), ambient.clone(), 0, section_cols)
            .expect("echelon rows are homogeneous");
        SubquotientBasis {
            kind: SubquotientKind::Subspace,
            ambient,
            space,
            representatives: ordered_reps,
            projection,
            section,
        }
    }

    /// The quotient of the ambient space by the span of `killed`.
    /// Representatives are the non-pivot ambient basis directions.
    pub fn quotient(ambient: Arc<GradedSpace>, killed: &[Vector]) -> Self {
        let sub = graded_echelon_basis(&ambient, killed);
        let pivot_of: BTreeMap<usize, &Vector> = sub
            .iter()
            .map(|r| (r.leading().expect("echelon rows are nonzero").0, r))
            .collect();
        let free: Vec<usize> = (0..ambient.dim()).filter(|i| !pivot_of.contains_key(i)).collect();
        let space = GradedSpace::new(
            free.iter().map(|&i| (ambient.label(i).to_string(), ambient.degree(i))).collect(),
        )
        .expect("ambient labels are distinct");
        let slot_of: BTreeMap<usize, usize> = free
            .iter()
            .map(|&i| (i, space.index_of(ambient.label(i)).unwrap()))
            .collect();
        let mut proj_cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for (&i, &slot) in &slot_of {
            proj_cols.insert(i, Vector::unit(slot));
        }
        // A pivot direction e_p with echelon row r (leading 1 at p) satisfies
        // e_p ≡ e_p − r mod the subspace, which is supported on free columns.
        for (&p, row) in &pivot_of {
            let mut image = Vector::zero();
            for (j, c) in row.iter() {
                if j != p {
                    image.add_term(slot_of[&j], -c.clone());
                }
            }
            if !image.is_zero() {
                proj_cols.insert(p, image);
            }
        }
        let projection = GradedMap::from_columns(ambient.clone(), space.clone(), 0, proj_cols)
            .expect("echelon rows are homogeneous");
        let representatives: Vec<Vector> = free.iter().map(|&i| Vector::unit(i)).collect();
        let section_cols = (0..space.dim()).map(|s| (s, Vector::unit(free[s]))).collect();
        let section = GradedMap::from_columns(space.clone(), ambient.clone(), 0, section_cols)
            .expect("degrees preserved");
        SubquotientBasis {
            kind: SubquotientKind::Quotient,
            ambient,
            space,
            representatives,
            projection,
            section,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Quotient map / retraction onto subquotient coordinates.
    pub fn project(&self, v: &Vector) -> Vector {
        self.projection.apply(v)
    }

    /// Canonical ambient representative of the class of `v`.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        self.section.apply(&self.project(v))
    }

    /// Coordinates of an ambient vector that is claimed to lie in a subspace;
    /// errors when it does not.
    pub fn coords_of(&self, v: &Vector, context: &str) -> Result<Vector, CoreError> {
        let coords = self.project(v);
        if self.section.apply(&coords) != *v {
            return Err(CoreError::NotInSubspace(context.to_string()));
        }
        Ok(coords)
    }
}

/// Kernel of a graded map, computed block-by-block over source degrees and
/// presented in reduced echelon form.
pub fn kernel(map: &GradedMap) -> SubquotientBasis {
    let mut spanning = Vec::new();
    let source = &map.source;
    for degree in source.degrees().collect::<Vec<_>>() {
        let positions = source.degree_positions(degree).to_vec();
        let n = positions.len();
        // Rows of the block matrix are target coordinates.
        let mut rows: BTreeMap<usize, Vector> = BTreeMap::new();
        for (j, &p) in positions.iter().enumerate() {
            for (t, c) in map.column(p).iter() {
                rows.entry(t).or_default().add_term(j, c.clone());
            }
        }
        let ech = rref(&SparseMatrix::new(rows.into_values().collect(), n));
        let pivot_set: Vec<usize> = ech.pivots.clone();
        for free in (0..n).filter(|j| !pivot_set.contains(j)) {
            let mut v = Vector::unit(positions[free]);
            for (r, &p) in pivot_set.iter().enumerate() {
                let c = ech.matrix.rows[r].coeff(free);
                v.add_term(positions[p], -c);
            }
            spanning.push(v);
        }
    }
    SubquotientBasis::subspace(source.clone(), &spanning)
}

/// Image of a graded map as a subspace of the target.
pub fn image(map: &GradedMap) -> SubquotientBasis {
    let columns: Vec<Vector> = (0..map.source.dim()).map(|j| map.column(j)).collect();
    SubquotientBasis::subspace(map.target.clone(), &columns)
}

/// Cycles modulo boundaries: a subquotient with closed representatives that
/// are linearly independent modulo the boundary subspace.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub ambient: Arc<GradedSpace>,
    pub cycles: SubquotientBasis,
    /// Quotient of cycle coordinates by the boundaries.
    pub classes: SubquotientBasis,
    /// Ambient representative per class, in class basis order.
    pub representatives: Vec<Vector>,
}

impl Subquotient {
    pub fn new(
        ambient: Arc<GradedSpace>,
        cycle_span: &[Vector],
        boundary_span: &[Vector],
    ) -> Result<Self, CoreError> {
        let cycles = SubquotientBasis::subspace(ambient.clone(), cycle_span);
        let mut boundary_coords = Vec::new();
        for b in boundary_span {
            boundary_coords.push(cycles.coords_of(b, "boundary inside cycles")?);
        }
        let classes = SubquotientBasis::quotient(cycles.space.clone(), &boundary_coords);
        let representatives = (0..classes.dim())
            .map(|i| cycles.section.apply(&classes.representatives[i]))
            .collect();
        Ok(Subquotient { ambient, cycles, classes, representatives })
    }

    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    /// Class coordinates of a cycle; errors if `v` is not a cycle.
    pub fn class_of(&self, v: &Vector, context: &str) -> Result<Vector, CoreError> {
        Ok(self.classes.project(&self.cycles.coords_of(v, context)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent dense Gauss-Jordan oracle used to cross-check `rref`.
    fn dense_rref_oracle(data: &[&[i64]]) -> (Vec<Vec<Scalar>>, usize) {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let mut m: Vec<Vec<Scalar>> =
            data.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][col].recip();
            for c in 0..cols {
                m[rank][c] = &m[rank][c] * &inv;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..cols {
                        let delta = &f * &m[rank][c];
                        m[r][c] = &m[r][c] - &delta;
                    }
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    fn assert_matches_oracle(data: &[&[i64]]) {
        let ech = rref(&SparseMatrix::from_dense(data));
        let (oracle, rank) = dense_rref_oracle(data);
        assert_eq!(ech.rank, rank);
        for (i, row) in oracle.iter().enumerate() {
            for (j, val) in row.iter().enumerate() {
                let got = ech.matrix.rows.get(i).map(|r| r.coeff(j)).unwrap_or_else(Scalar::zero);
                assert_eq!(&got, val, "mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = SparseMatrix::from_dense(&[&[1, 0], &[0, 1]]);
        let ech = rref(&id);
        assert_eq!(ech.rank, 2);
        assert_eq!(ech.pivots, vec![0, 1]);
        assert_eq!(ech.matrix, id);

        let zero = SparseMatrix::from_dense(&[&[0, 0], &[0, 0]]);
        let ech = rref(&zero);
        assert_eq!(ech.rank, 0);
        assert!(ech.pivots.is_empty());
        assert_eq!(ech.matrix, zero);
    }

    #[test]
    fn rref_rank_one() {
        // Hand row-reduction: [[1,2],[2,4]] → [[1,2],[0,0]].
        let ech = rref(&SparseMatrix::from_dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(ech.rank, 1);
        assert_eq!(ech.pivots, vec![0]);
        assert_eq!(ech.matrix, SparseMatrix::from_dense(&[&[1, 2], &[0, 0]]));
        assert_matches_oracle(&[&[1, 2], &[2, 4]]);
        assert_matches_oracle(&[&[0, 2, 1], &[3, 6, 0], &[3, 8, 1]]);
        assert_matches_oracle(&[&[2, 4], &[1, 3], &[0, 5]]);
    }

    fn three_dim() -> Arc<GradedSpace> {
        GradedSpace::from_labels(&[("a", 0), ("b", 0), ("c", 0)])
    }

    #[test]
    fn kernel_and_image_of_zero_and_identity() {
        let s = three_dim();
        let zero = GradedMap::zero(s.clone(), s.clone(), 0);
        assert_eq!(kernel(&zero).dim(), 3);
        assert_eq!(image(&zero).dim(), 0);
        let id = GradedMap::identity(s.clone());
        assert_eq!(kernel(&id).dim(), 0);
        assert_eq!(image(&id).dim(), 3);
    }

    #[test]
    fn rank_nullity_on_a_rectangular_map() {
        let s = three_dim();
        let t = GradedSpace::from_labels(&[("u", 0), ("v", 0)]);
        // a ↦ u, b ↦ u, c ↦ v
        let m = GradedMap::from_label_entries(
            s.clone(),
            t,
            0,
            &[
                ("u", "a", Scalar::one()),
                ("u", "b", Scalar::one()),
                ("v", "c", Scalar::one()),
            ],
            "test",
        )
        .unwrap();
        let k = kernel(&m);
        let im = image(&m);
        assert_eq!(k.dim() + im.dim(), 3);
        assert_eq!(k.dim(), 1);
        // Echelon representative: a − b.
        let rep = &k.representatives[0];
        assert_eq!(rep.coeff(0), Scalar::one());
        assert_eq!(rep.coeff(1), -Scalar::one());
    }

    #[test]
    fn quotient_examples() {
        // Quotient of span{η, εη} by span{η} → 1-dim with representative εη.
        let s = GradedSpace::from_labels(&[("η", 1), ("εη", 1)]);
        let eta = Vector::from_labels(&s, &[("η", Scalar::one())], "test").unwrap();
        let q = SubquotientBasis::quotient(s.clone(), &[eta.clone()]);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.space.label(0), "εη");
        assert!(q.project(&eta).is_zero());

        // Quotient by the zero subspace is the identity presentation.
        let q0 = SubquotientBasis::quotient(s.clone(), &[]);
        assert_eq!(q0.dim(), 2);
        for i in 0..2 {
            assert_eq!(q0.normal_form(&Vector::unit(i)), Vector::unit(i));
        }

        // Quotient of a space by itself is zero-dimensional.
        let all: Vec<Vector> = (0..2).map(Vector::unit).collect();
        assert_eq!(SubquotientBasis::quotient(s, &all).dim(), 0);
    }

    #[test]
    fn projection_section_round_trip() {
        let s = GradedSpace::from_labels(&[("a", 0), ("b", 0), ("c", 1), ("d", 1)]);
        let v1 = Vector::from_labels(
            &s,
            &[("a", Scalar::from_int(2)), ("b", Scalar::from_int(1))],
            "t",
        )
        .unwrap();
        let v2 = Vector::from_labels(&s, &[("c", Scalar::one()), ("d", Scalar::from_int(-3))], "t")
            .unwrap();
        for sq in [
            SubquotientBasis::subspace(s.clone(), &[v1.clone(), v2.clone()]),
            SubquotientBasis::quotient(s.clone(), &[v1, v2]),
        ] {
            let round = sq.projection.compose(&sq.section);
            for i in 0..sq.dim() {
                assert_eq!(round.apply(&Vector::unit(i)), Vector::unit(i));
            }
        }
    }

    #[test]
    fn solve_in_span_finds_coordinates() {
        let b0 = Vector::from_terms([(0, Scalar::one()), (1, Scalar::one())]);
        let b1 = Vector::from_terms([(1, Scalar::one())]);
        let v = Vector::from_terms([(0, Scalar::from_int(2)), (1, Scalar::from_int(5))]);
        let sol = solve_in_span(&[b0.clone(), b1.clone()], &v, 3).unwrap();
        assert_eq!(sol, vec![Scalar::from_int(2), Scalar::from_int(3)]);
        let unreachable = Vector::from_terms([(2, Scalar::one())]);
        assert!(solve_in_span(&[b0, b1], &unreachable, 3).is_none());
    }
}
