//! The shipped catalogue: Lie algebras ab1, ab2, ab3, heis3, sl2, gl2, sl3;
//! CDGA models Pt, Circ, Intv, T2, T3, CircIntv, FmsS; and the torus-forms
//! 𝔤-differential space used by the sigma-model fixtures.
//!
//! Matrix algebras are built from their defining representations: commutators
//! are computed exactly and re-expressed in the chosen basis by solving a
//! linear system, so a typo in a structure constant is impossible by
//! construction (the solve fails instead).

use std::collections::BTreeMap;

use crate::dgla::{tensor_cdga, Cdga, GDiffSpace, LieAlgebra};
use crate::error::CoreError;
use crate::graded::{GradedMap, Vector};
use crate::linalg::solve_in_span;
use crate::scalar::{sign, Scalar};

/// Small dense rational matrix, only used to define fixture algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Scalar>,
}

impl Mat {
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "square matrix");
            a.extend(r.iter().map(|&x| Scalar::from_int(x)));
        }
        Mat { n, a }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.n + j]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut a = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = x * other.at(k, j);
                    a[i * n + j] += &t;
                }
            }
        }
        Mat { n, a }
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        let ab = self.mul(other);
        let ba = other.mul(self);
        Mat { n: self.n, a: ab.a.iter().zip(&ba.a).map(|(x, y)| x - y).collect() }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.n {
            t += self.at(i, i);
        }
        t
    }

    fn flat(&self) -> Vector {
        Vector::from_terms(self.a.iter().enumerate().map(|(i, c)| (i, c.clone())))
    }
}

/// Builds a Lie algebra from named matrices; brackets are matrix commutators
/// expressed in the given basis.
pub fn lie_from_matrices(name: &str, basis: &[(&str, Mat)]) -> Result<LieAlgebra, CoreError> {
    let n = basis[0].1.n;
    let span: Vec<Vector> = basis.iter().map(|(_, m)| m.flat()).collect();
    let labels: Vec<&str> = basis.iter().map(|(l, _)| *l).collect();
    let mut brackets = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let comm = basis[i].1.commutator(&basis[j].1);
            let coords = solve_in_span(&span, &comm.flat(), n * n).ok_or_else(|| {
                CoreError::Rejected(format!(
                    "[{}, {}] is not in the span of the basis of {name}",
                    labels[i], labels[j]
                ))
            })?;
            let terms: Vec<(&str, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (labels[k], c))
                .collect();
            if !terms.is_empty() {
                brackets.push((labels[i], labels[j], terms));
            }
        }
    }
    LieAlgebra::new(name, &labels, &brackets)
}

pub fn ab1() -> LieAlgebra {
    LieAlgebra::new("ab1", &["x"], &[]).unwrap()
}

pub fn ab2() -> LieAlgebra {
    LieAlgebra::new("ab2", &["x", "y"], &[]).unwrap()
}

pub fn ab3() -> LieAlgebra {
    LieAlgebra::new("ab3", &["e1", "e2", "e3"], &[]).unwrap()
}

/// The Heisenberg algebra: [x, y] = z, z central.
pub fn heis3() -> LieAlgebra {
    LieAlgebra::new("heis3", &["x", "y", "z"], &[("x", "y", vec![("z", Scalar::one())])])
        .unwrap()
}

pub fn sl2_matrices() -> Vec<(&'static str, Mat)> {
    vec![
        ("e", Mat::from_rows(&[&[0, 1], &[0, 0]])),
        ("f", Mat::from_rows(&[&[0, 0], &[1, 0]])),
        ("h", Mat::from_rows(&[&[1, 0], &[0, -1]])),
    ]
}

pub fn sl2() -> LieAlgebra {
    lie_from_matrices("sl2", &sl2_matrices()).unwrap()
}

pub fn gl2_matrices() -> Vec<(&'static str, Mat)> {
    vec![
        ("E11", Mat::from_rows(&[&[1, 0], &[0, 0]])),
        ("E12", Mat::from_rows(&[&[0, 1], &[0, 0]])),
        ("E21", Mat::from_rows(&[&[0, 0], &[1, 0]])),
        ("E22", Mat::from_rows(&[&[0, 0], &[0, 1]])),
    ]
}

pub fn gl2() -> LieAlgebra {
    lie_from_matrices("gl2", &gl2_matrices()).unwrap()
}

pub fn sl3_matrices() -> Vec<(&'static str, Mat)> {
    vec![
        ("E12", Mat::from_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])),
        ("E13", Mat::from_rows(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]])),
        ("E23", Mat::from_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]])),
        ("E21", Mat::from_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]])),
        ("E31", Mat::from_rows(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]])),
        ("E32", Mat::from_rows(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]])),
        ("H1", Mat::from_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]])),
        ("H2", Mat::from_rows(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]])),
    ]
}

pub fn sl3() -> LieAlgebra {
    lie_from_matrices("sl3", &sl3_matrices()).unwrap()
}

pub const LIE_FIXTURES: &[&str] = &["ab1", "ab2", "ab3", "heis3", "sl2", "gl2", "sl3"];

pub fn lie_algebra(name: &str) -> Option<LieAlgebra> {
    match name {
        "ab1" => Some(ab1()),
        "ab2" => Some(ab2()),
        "ab3" => Some(ab3()),
        "heis3" => Some(heis3()),
        "sl2" => Some(sl2()),
        "gl2" => Some(gl2()),
        "sl3" => Some(sl3()),
        _ => None,
    }
}

pub fn point() -> Cdga {
    Cdga::point()
}

pub fn circ() -> Cdga {
    Cdga::exterior("Circ", &["θ"])
}

pub fn interval() -> Cdga {
    Cdga::interval()
}

pub fn t2() -> Cdga {
    Cdga::exterior("T2", &["a", "b"])
}

pub fn t3() -> Cdga {
    Cdga::exterior("T3", &["a", "b", "c"])
}

pub fn circ_interval() -> Cdga {
    tensor_cdga("CircIntv", &circ(), &interval())
}

pub fn fms_model() -> Cdga {
    tensor_cdga("FmsS", &t3(), &interval())
}

pub const CDGA_FIXTURES: &[&str] = &["Pt", "Circ", "Intv", "T2", "T3", "CircIntv", "FmsS"];

pub fn cdga(name: &str) -> Option<Cdga> {
    match name {
        "Pt" => Some(point()),
        "Circ" => Some(circ()),
        "Intv" => Some(interval()),
        "T2" => Some(t2()),
        "T3" => Some(t3()),
        "CircIntv" => Some(circ_interval()),
        "FmsS" => Some(fms_model()),
        _ => None,
    }
}

/// Contraction with the `gen_index`-th degree-1 generator of an exterior
/// algebra: `i(x_t)(x_{j_1}∧…∧x_{j_r}) = (−1)^{t−1} x_{j_1}∧…x̂…∧x_{j_r}`.
pub fn exterior_contraction(model: &Cdga, generators: &[&str], gen_index: usize) -> GradedMap {
    let n = generators.len();
    let label = |mask: u32| -> String {
        if mask == 0 {
            "1".to_string()
        } else {
            (0..n)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| generators[b])
                .collect::<Vec<_>>()
                .join("∧")
        }
    };
    let mut columns: BTreeMap<usize, Vector> = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        if mask & (1 << gen_index) == 0 {
            continue;
        }
        let src = model.space.index_of(&label(mask)).expect("exterior label");
        let below = (mask & ((1 << gen_index) - 1)).count_ones() as i64;
        let tgt = model
            .space
            .index_of(&label(mask & !(1 << gen_index)))
            .expect("exterior label");
        columns.insert(src, Vector::term(tgt, sign(below)));
    }
    GradedMap::from_columns(model.space.clone(), model.space.clone(), -1, columns)
        .expect("contraction has degree −1")
}

/// The forms model Λ(a,b,c) as a 𝔤-differential space over 𝔤 = ℝ³: I(e_i)
/// is contraction with the i-th generator, L(e_i) = 0 and d = 0 (translation
/// action on constant-coefficient forms).
pub fn torus3_forms() -> GDiffSpace {
    let g = ab3();
    let model = t3();
    let generators = ["a", "b", "c"];
    let space = model.space.clone();
    let i_ops: Vec<GradedMap> =
        (0..3).map(|k| exterior_contraction(&model, &generators, k)).collect();
    let l_ops: Vec<GradedMap> =
        (0..3).map(|_| GradedMap::zero(space.clone(), space.clone(), 0)).collect();
    GDiffSpace {
        name: "Ω(T3)".into(),
        g,
        space: space.clone(),
        differential: GradedMap::zero(space.clone(), space, 1),
        l_ops,
        i_ops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_structure_constants() {
        let g = sl2();
        let e = g.space.index_of("e").unwrap();
        let f = g.space.index_of("f").unwrap();
        let h = g.space.index_of("h").unwrap();
        // [h,e] = 2e, [h,f] = −2f, [e,f] = h.
        assert_eq!(g.bracket.value(h, e), Vector::term(e, Scalar::from_int(2)));
        assert_eq!(g.bracket.value(h, f), Vector::term(f, Scalar::from_int(-2)));
        assert_eq!(g.bracket.value(e, f), Vector::term(h, Scalar::one()));
        assert!(g.validate().passed());
    }

    #[test]
    fn matrix_algebras_satisfy_jacobi() {
        for g in [gl2(), sl3(), heis3(), ab3()] {
            let cert = g.validate();
            assert!(cert.passed(), "{}", cert.summary());
        }
    }

    #[test]
    fn shipped_cdgas_validate() {
        for name in CDGA_FIXTURES {
            let c = cdga(name).unwrap();
            let cert = c.validate();
            assert!(cert.passed(), "{}", cert.summary());
        }
    }

    #[test]
    fn interval_truncation() {
        let c = interval();
        let eps = c.space.index_of("ε").unwrap();
        let eta = c.space.index_of("η").unwrap();
        // ε² = 0 and εη = 0 (forced by Leibniz on (ε, ε)).
        assert!(c.products.value(eps, eps).is_zero());
        assert!(c.products.value(eps, eta).is_zero());
        assert_eq!(c.d(&Vector::unit(eps)), Vector::unit(eta));
    }

    #[test]
    fn fms_model_dimensions() {
        let c = fms_model();
        assert_eq!(c.dim(), 24);
        let dims: Vec<usize> = (0..=4).map(|n| c.space.degree_dim(n)).collect();
        assert_eq!(dims, vec![2, 7, 9, 5, 1]);
    }

    #[test]
    fn contractions_anticommute() {
        let v = torus3_forms();
        let cert = v.validate();
        assert!(cert.passed(), "{}", cert.summary());
        // i_{e2} i_{e1} (a∧b∧c) = c.
        let abc = v.space.index_of("a∧b∧c").unwrap();
        let c = v.space.index_of("c").unwrap();
        let double = v.i_ops[1].apply(&v.i_ops[0].apply(&Vector::unit(abc)));
        assert_eq!(double, Vector::unit(c));
    }
}
