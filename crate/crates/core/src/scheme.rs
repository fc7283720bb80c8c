//! Commutative association schemes and their Bose-Mesner algebras.
//!
//! A [`Scheme`] is built from its relation matrices and checked against the
//! four axioms. Intersection numbers are read off exactly from integer
//! products. Idempotents and eigenmatrices are only attached by the
//! translation module, which knows them in closed form; operations that need
//! them fail with [`Error::Unsupported`] otherwise.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Axiom, AxiomViolation, Error, Result, TranslationViolation};

pub type CMatrix = DMatrix<Complex64>;

/// Absolute tolerance used for complex comparisons, scaled by `max(1, scale)`.
pub const DEFAULT_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Adjacency matrices `A_0..A_d`.
    A,
    /// Primitive idempotents `E_0..E_d`.
    E,
}

impl Basis {
    pub fn swapped(self) -> Basis {
        match self {
            Basis::A => Basis::E,
            Basis::E => Basis::A,
        }
    }
}

/// An element of the Bose-Mesner algebra in coordinates over one of its two
/// bases. Coefficients past the end of `coeffs` are zero, so a pure basis
/// element does not need to know the class count.
#[derive(Debug, Clone, PartialEq)]
pub struct BMElement {
    pub basis: Basis,
    pub coeffs: Vec<Complex64>,
}

impl BMElement {
    pub fn new(basis: Basis, coeffs: Vec<Complex64>) -> Self {
        BMElement { basis, coeffs }
    }

    /// The basis element `A_index` or `E_index`.
    pub fn pure(basis: Basis, index: usize) -> Self {
        let mut coeffs = vec![ZERO; index + 1];
        coeffs[index] = ONE;
        BMElement { basis, coeffs }
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or(ZERO)
    }

    /// `Some((basis, i))` when this is exactly one basis element.
    pub fn as_pure(&self) -> Option<(Basis, usize)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if *c != ONE || found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found.map(|i| (self.basis, i))
    }

    /// Highest index with a nonzero coefficient.
    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    pub fn scale(&self, alpha: Complex64) -> BMElement {
        BMElement::new(self.basis, self.coeffs.iter().map(|c| c * alpha).collect())
    }

    /// `alpha * self + beta * other`; both must share a basis.
    pub fn combine(
        &self,
        alpha: Complex64,
        other: &BMElement,
        beta: Complex64,
    ) -> Result<BMElement> {
        if self.basis != other.basis {
            return Err(Error::invalid(
                "cannot combine elements over different bases",
            ));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(BMElement::new(
            self.basis,
            (0..len)
                .map(|i| alpha * self.coeff(i) + beta * other.coeff(i))
                .collect(),
        ))
    }
}

/// Primitive idempotents and the two eigenmatrices.
///
/// `A_i = sum_j P[(j, i)] E_j` and `E_i = |X|^-1 sum_j Q[(j, i)] A_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    pub idempotents: Vec<CMatrix>,
    pub p: CMatrix,
    pub q: CMatrix,
}

/// Structure constants indexed `[i][j][k]`, flattened row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterTensor {
    dim: usize,
    values: Vec<Complex64>,
}

impl ParameterTensor {
    fn zeros(dim: usize) -> Self {
        ParameterTensor {
            dim,
            values: vec![ZERO; dim * dim * dim],
        }
    }

    /// Number of classes plus one.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.values[(i * self.dim + j) * self.dim + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        self.values[(i * self.dim + j) * self.dim + k] = v;
    }

    /// Nested `[i][j][k]` form.
    pub fn to_nested(&self) -> Vec<Vec<Vec<Complex64>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|k| self.get(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn max_abs_diff(&self, other: &ParameterTensor) -> f64 {
        assert_eq!(self.dim, other.dim, "parameter tensors of different size");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct Scheme {
    size: usize,
    relations: Vec<DMatrix<i64>>,
    /// Relation index of each pair, row-major.
    class_of: Vec<usize>,
    /// A representative pair for every relation.
    representatives: Vec<(usize, usize)>,
    transpose_of: Vec<usize>,
    intersection: ParameterTensor,
    eigen: Option<EigenData>,
}

impl Scheme {
    /// Validates `A_0..A_d` against (AS1)-(AS4). Every violation found is
    /// reported; AS4 is only checked once AS2 holds.
    pub fn from_relations(matrices: Vec<DMatrix<i64>>) -> Result<Scheme> {
        let size = check_shapes(&matrices)?;
        let classes = matrices.len();
        let mut violations = Vec::new();

        if matrices[0] != DMatrix::identity(size, size) {
            violations.push(AxiomViolation {
                axiom: Axiom::As1,
                relations: vec![0],
                detail: "A_0 is not the identity matrix".into(),
            });
        }

        let mut class_of = vec![usize::MAX; size * size];
        let mut partition_ok = true;
        for x in 0..size {
            for y in 0..size {
                let owners: Vec<usize> =
                    (0..classes).filter(|&i| matrices[i][(x, y)] == 1).collect();
                if owners.len() != 1 {
                    partition_ok = false;
                    violations.push(AxiomViolation {
                        axiom: Axiom::As2,
                        relations: owners.clone(),
                        detail: format!(
                            "entry ({x},{y}) is covered by {} relations, expected exactly one",
                            owners.len()
                        ),
                    });
                } else {
                    class_of[x * size + y] = owners[0];
                }
            }
        }

        let mut transpose_of = vec![usize::MAX; classes];
        for (i, a) in matrices.iter().enumerate() {
            let t = a.transpose();
            match matrices.iter().position(|b| *b == t) {
                Some(j) => transpose_of[i] = j,
                None => violations.push(AxiomViolation {
                    axiom: Axiom::As3,
                    relations: vec![i],
                    detail: format!("transpose of A_{i} is not a relation matrix"),
                }),
            }
        }

        let mut representatives = vec![(usize::MAX, usize::MAX); classes];
        let mut intersection = ParameterTensor::zeros(classes);
        if partition_ok {
            for (idx, &c) in class_of.iter().enumerate() {
                if representatives[c].0 == usize::MAX {
                    representatives[c] = (idx / size, idx % size);
                }
            }
            if let Some(empty) = representatives.iter().position(|r| r.0 == usize::MAX) {
                violations.push(AxiomViolation {
                    axiom: Axiom::As2,
                    relations: vec![empty],
                    detail: format!("relation {empty} is empty"),
                });
            } else {
                check_products(
                    &matrices,
                    &class_of,
                    &representatives,
                    &mut intersection,
                    &mut violations,
                );
            }
        }

        if !violations.is_empty() {
            return Err(Error::SchemeAxioms(violations));
        }
        Ok(Scheme {
            size,
            relations: matrices,
            class_of,
            representatives,
            transpose_of,
            intersection,
            eigen: None,
        })
    }

    /// Builds a scheme from flattened row-major 0/1 relation arrays.
    pub fn from_flat_relations(size: usize, relations: &[Vec<i64>]) -> Result<Scheme> {
        let mats = relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if r.len() != size * size {
                    return Err(Error::invalid(format!(
                        "relation {i} has {} entries, expected {}",
                        r.len(),
                        size * size
                    )));
                }
                Ok(DMatrix::from_row_slice(size, size, r))
            })
            .collect::<Result<Vec<_>>>()?;
        Scheme::from_relations(mats)
    }

    /// Attaches idempotents and eigenmatrices after checking them.
    pub(crate) fn with_eigen_data(mut self, eigen: EigenData) -> Result<Scheme> {
        validate_eigen(&self, &eigen).map_err(TranslationViolation::EigenData)?;
        self.eigen = Some(eigen);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of classes `d`.
    pub fn classes(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn relations(&self) -> &[DMatrix<i64>] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &DMatrix<i64> {
        &self.relations[i]
    }

    /// Relation containing `(x, y)`.
    pub fn class_of(&self, x: usize, y: usize) -> usize {
        self.class_of[x * self.size + y]
    }

    /// Index `j` with `A_i^T = A_j`.
    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose_of[i]
    }

    pub fn eigen(&self) -> Option<&EigenData> {
        self.eigen.as_ref()
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose_of.iter().enumerate().all(|(i, &j)| i == j)
    }

    fn require_eigen(&self, what: &str) -> Result<&EigenData> {
        self.eigen.as_ref().ok_or_else(|| {
            Error::unsupported(format!(
                "{what} needs idempotents, which this scheme does not carry"
            ))
        })
    }

    /// `p[i][j][k]` with `A_i A_j = sum_k p[i][j][k] A_k`.
    pub fn intersection_numbers(&self) -> ParameterTensor {
        self.intersection.clone()
    }

    /// `q[i][j][k]` with `E_i o E_j = |X|^-1 sum_k q[i][j][k] E_k`.
    pub fn krein_parameters(&self) -> Result<ParameterTensor> {
        let eigen = self.require_eigen("Krein parameters")?;
        let n = self.size as f64;
        let dim = self.relations.len();
        let mut out = ParameterTensor::zeros(dim);
        let mults: Vec<f64> = eigen.idempotents.iter().map(|e| e.trace().re).collect();
        for i in 0..dim {
            for j in 0..dim {
                let had = eigen.idempotents[i].component_mul(&eigen.idempotents[j]);
                for (k, (ek, &m)) in eigen.idempotents.iter().zip(&mults).enumerate() {
                    // E_k projects the Hadamard product onto its k-th coordinate.
                    let t = (&had * ek).trace();
                    out.set(i, j, k, t * n / m);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicities `m_i = rank(E_i)`.
    pub fn multiplicities(&self) -> Result<Vec<f64>> {
        let eigen = self.require_eigen("multiplicities")?;
        Ok(eigen.idempotents.iter().map(|e| e.trace().re).collect())
    }

    /// Valencies `k_i`, the row sums of the relation matrices.
    pub fn valencies(&self) -> Vec<i64> {
        self.relations.iter().map(|a| a.row(0).sum()).collect()
    }

    fn check_element(&self, w: &BMElement) -> Result<()> {
        if let Some(top) = w.max_index() {
            if top > self.classes() {
                return Err(Error::invalid(format!(
                    "weight uses class {top} but the scheme has {} classes",
                    self.classes()
                )));
            }
        }
        Ok(())
    }

    /// The `|X| x |X|` matrix `sum_i coeffs_i (A_i or E_i)`.
    pub fn bm_to_matrix(&self, w: &BMElement) -> Result<CMatrix> {
        self.check_element(w)?;
        let n = self.size;
        match w.basis {
            Basis::A => Ok(CMatrix::from_fn(n, n, |x, y| w.coeff(self.class_of(x, y)))),
            Basis::E => {
                let eigen = self.require_eigen("E-basis weights")?;
                let mut m = CMatrix::zeros(n, n);
                for (i, e) in eigen.idempotents.iter().enumerate() {
                    let c = w.coeff(i);
                    if c != ZERO {
                        m += e * c;
                    }
                }
                Ok(m)
            }
        }
    }

    /// Re-expresses `w` over `basis` using the eigenmatrices.
    pub fn to_basis(&self, w: &BMElement, basis: Basis) -> Result<BMElement> {
        self.check_element(w)?;
        if w.basis == basis {
            return Ok(w.clone());
        }
        let eigen = self.require_eigen("change of basis")?;
        let dim = self.relations.len();
        let coeffs = match basis {
            // sum_i a_i A_i = sum_j (sum_i P[j,i] a_i) E_j
            Basis::E => (0..dim)
                .map(|j| (0..dim).map(|i| eigen.p[(j, i)] * w.coeff(i)).sum())
                .collect(),
            // sum_i e_i E_i = sum_j (|X|^-1 sum_i Q[j,i] e_i) A_j
            Basis::A => {
                let n = self.size as f64;
                (0..dim)
                    .map(|j| {
                        (0..dim)
                            .map(|i| eigen.q[(j, i)] * w.coeff(i))
                            .sum::<Complex64>()
                            / n
                    })
                    .collect()
            }
        };
        Ok(BMElement::new(basis, coeffs))
    }

    /// Matrix product, expressed over the basis of `a`.
    pub fn bm_product(&self, a: &BMElement, b: &BMElement) -> Result<BMElement> {
        let b = self.to_basis(b, a.basis)?;
        self.check_element(a)?;
        let dim = self.relations.len();
        match a.basis {
            Basis::E => Ok(BMElement::new(
                Basis::E,
                (0..dim).map(|i| a.coeff(i) * b.coeff(i)).collect(),
            )),
            Basis::A => Ok(BMElement::new(
                Basis::A,
                structure_product(dim, a, &b, |i, j, k| self.intersection.get(i, j, k)),
            )),
        }
    }

    /// Entrywise product, expressed over the basis of `a`.
    pub fn bm_hadamard(&self, a: &BMElement, b: &BMElement) -> Result<BMElement> {
        let b = self.to_basis(b, a.basis)?;
        self.check_element(a)?;
        let dim = self.relations.len();
        match a.basis {
            Basis::A => Ok(BMElement::new(
                Basis::A,
                (0..dim).map(|i| a.coeff(i) * b.coeff(i)).collect(),
            )),
            Basis::E => {
                let q = self.krein_parameters()?;
                let n = self.size as f64;
                let coeffs = structure_product(dim, a, &b, |i, j, k| q.get(i, j, k));
                Ok(BMElement::new(
                    Basis::E,
                    coeffs.into_iter().map(|c| c / n).collect(),
                ))
            }
        }
    }

    /// P-polynomial (metric) test for the current ordering of relations.
    pub fn is_p_polynomial(&self) -> bool {
        self.is_symmetric()
            && triangle_pattern_holds(self.relations.len(), |i, j, k| {
                self.intersection.get(i, j, k).norm() > 0.5
            })
    }

    /// Q-polynomial (cometric) test for the current ordering of idempotents.
    pub fn is_q_polynomial(&self) -> Result<bool> {
        let eigen = self.require_eigen("Q-polynomial test")?;
        let symmetric = eigen
            .idempotents
            .iter()
            .all(|e| max_abs(&(e - e.transpose())) <= DEFAULT_TOL);
        if !symmetric {
            return Ok(false);
        }
        let q = self.krein_parameters()?;
        Ok(triangle_pattern_holds(self.relations.len(), |i, j, k| {
            q.get(i, j, k).norm() > DEFAULT_TOL
        }))
    }

    /// Relabels the relations so that new class `i` is old class `order[i]`.
    /// `order[0]` must be 0. Eigen data follows the relabeling.
    pub fn reorder_relations(&self, order: &[usize]) -> Result<Scheme> {
        check_permutation(order, self.relations.len())?;
        let mats = order.iter().map(|&i| self.relations[i].clone()).collect();
        let mut s = Scheme::from_relations(mats)?;
        if let Some(e) = &self.eigen {
            let dim = order.len();
            s.eigen = Some(EigenData {
                idempotents: e.idempotents.clone(),
                p: CMatrix::from_fn(dim, dim, |j, i| e.p[(j, order[i])]),
                q: CMatrix::from_fn(dim, dim, |j, i| e.q[(order[j], i)]),
            });
        }
        Ok(s)
    }

    /// Relabels the idempotents so that new `E_i` is old `E_order[i]`.
    pub fn reorder_idempotents(&self, order: &[usize]) -> Result<Scheme> {
        let e = self.require_eigen("reordering idempotents")?;
        check_permutation(order, self.relations.len())?;
        let dim = order.len();
        let mut s = self.clone();
        s.eigen = Some(EigenData {
            idempotents: order.iter().map(|&i| e.idempotents[i].clone()).collect(),
            p: CMatrix::from_fn(dim, dim, |j, i| e.p[(order[j], i)]),
            q: CMatrix::from_fn(dim, dim, |j, i| e.q[(j, order[i])]),
        });
        Ok(s)
    }

    /// A pair `(x, y)` in relation `i`.
    pub fn representative(&self, i: usize) -> (usize, usize) {
        self.representatives[i]
    }
}

fn check_shapes(matrices: &[DMatrix<i64>]) -> Result<usize> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::invalid("a scheme needs at least one relation"))?;
    let size = first.nrows();
    if size == 0 {
        return Err(Error::invalid("relation matrices must be nonempty"));
    }
    for (i, m) in matrices.iter().enumerate() {
        if m.nrows() != size || m.ncols() != size {
            return Err(Error::invalid(format!(
                "relation {i} is {}x{}, expected {size}x{size}",
                m.nrows(),
                m.ncols()
            )));
        }
        if let Some(v) = m.iter().find(|&&v| v != 0 && v != 1) {
            return Err(Error::invalid(format!(
                "relation {i} has entry {v}; entries must be 0 or 1"
            )));
        }
    }
    Ok(size)
}

fn check_products(
    matrices: &[DMatrix<i64>],
    class_of: &[usize],
    reps: &[(usize, usize)],
    intersection: &mut ParameterTensor,
    violations: &mut Vec<AxiomViolation>,
) {
    let size = matrices[0].nrows();
    let classes = matrices.len();
    for i in 0..classes {
        for j in 0..classes {
            let prod = &matrices[i] * &matrices[j];
            if j > i && prod != &matrices[j] * &matrices[i] {
                violations.push(AxiomViolation {
                    axiom: Axiom::As4,
                    relations: vec![i, j],
                    detail: format!("A_{i} A_{j} != A_{j} A_{i}"),
                });
            }
            for k in 0..classes {
                intersection.set(i, j, k, Complex64::new(prod[reps[k]] as f64, 0.0));
            }
            let off = (0..size * size)
                .find(|&idx| prod[(idx / size, idx % size)] != prod[reps[class_of[idx]]]);
            if let Some(idx) = off {
                violations.push(AxiomViolation {
                    axiom: Axiom::As4,
                    relations: vec![i, j],
                    detail: format!(
                        "A_{i} A_{j} is not constant on relation {} (entry ({},{}))",
                        class_of[idx],
                        idx / size,
                        idx % size
                    ),
                });
            }
        }
    }
}

fn validate_eigen(s: &Scheme, e: &EigenData) -> std::result::Result<(), String> {
    let n = s.size;
    let dim = s.relations.len();
    if e.idempotents.len() != dim || e.p.shape() != (dim, dim) || e.q.shape() != (dim, dim) {
        return Err(format!(
            "expected {dim} idempotents and {dim}x{dim} eigenmatrices"
        ));
    }
    let tol = DEFAULT_TOL;
    let j_over_n = CMatrix::from_element(n, n, Complex64::new(1.0 / n as f64, 0.0));
    if max_abs(&(&e.idempotents[0] - j_over_n)) > tol {
        return Err("E_0 is not |X|^-1 J".into());
    }
    let mut total = CMatrix::zeros(n, n);
    for (i, ei) in e.idempotents.iter().enumerate() {
        total += ei;
        for (j, ej) in e.idempotents.iter().enumerate() {
            let prod = ei * ej;
            let want = if i == j {
                ei.clone()
            } else {
                CMatrix::zeros(n, n)
            };
            if max_abs(&(prod - want)) > tol {
                return Err(format!("E_{i} E_{j} is not delta_ij E_{i}"));
            }
        }
    }
    if max_abs(&(total - CMatrix::identity(n, n))) > tol {
        return Err("idempotents do not sum to I".into());
    }
    for i in 0..dim {
        let a = s.relations[i].map(|v| Complex64::new(v as f64, 0.0));
        let mut from_e = CMatrix::zeros(n, n);
        let mut from_a = CMatrix::zeros(n, n);
        for j in 0..dim {
            from_e += &e.idempotents[j] * e.p[(j, i)];
            from_a +=
                s.relations[j].map(|v| Complex64::new(v as f64, 0.0)) * (e.q[(j, i)] / n as f64);
        }
        if max_abs(&(from_e - a)) > tol * (n as f64).max(1.0) {
            return Err(format!("A_{i} != sum_j P[j,{i}] E_j"));
        }
        if max_abs(&(from_a - &e.idempotents[i])) > tol {
            return Err(format!("E_{i} != |X|^-1 sum_j Q[j,{i}] A_j"));
        }
    }
    Ok(())
}

fn structure_product(
    dim: usize,
    a: &BMElement,
    b: &BMElement,
    c: impl Fn(usize, usize, usize) -> Complex64,
) -> Vec<Complex64> {
    let mut out = vec![ZERO; dim];
    for i in 0..dim {
        let ai = a.coeff(i);
        if ai == ZERO {
            continue;
        }
        for j in 0..dim {
            let bj = b.coeff(j);
            if bj == ZERO {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += ai * bj * c(i, j, k);
            }
        }
    }
    out
}

/// For every triple: zero when one index exceeds the sum of the other two,
/// nonzero when one index equals that sum.
fn triangle_pattern_holds(dim: usize, nonzero: impl Fn(usize, usize, usize) -> bool) -> bool {
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let t = [i, j, k];
                let sum = i + j + k;
                let exceeds = t.iter().any(|&x| 2 * x > sum);
                let equals = t.iter().any(|&x| 2 * x == sum);
                let nz = nonzero(i, j, k);
                if (exceeds && nz) || (equals && !nz) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_permutation(order: &[usize], dim: usize) -> Result<()> {
    let mut seen = vec![false; dim];
    if order.len() != dim || order.first() != Some(&0) {
        return Err(Error::invalid("reordering must be a permutation fixing 0"));
    }
    for &i in order {
        if i >= dim || std::mem::replace(&mut seen[i], true) {
            return Err(Error::invalid("reordering must be a permutation fixing 0"));
        }
    }
    Ok(())
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_scheme(n: usize) -> Scheme {
        // distance classes of the n-cycle
        let d = n / 2;
        let mats = (0..=d)
            .map(|i| {
                DMatrix::from_fn(n, n, |x, y| {
                    let diff = (y + n - x) % n;
                    i64::from(diff.min(n - diff) == i)
                })
            })
            .collect();
        Scheme::from_relations(mats).unwrap()
    }

    #[test]
    fn complete_graph_scheme() {
        let n = 3;
        let s = Scheme::from_relations(vec![
            DMatrix::identity(n, n),
            DMatrix::from_fn(n, n, |x, y| i64::from(x != y)),
        ])
        .unwrap();
        assert_eq!(s.classes(), 1);
        assert_eq!(
            s.intersection_numbers().get(1, 1, 0),
            Complex64::new(2.0, 0.0)
        );
        assert!(s.is_p_polynomial());
    }

    #[test]
    fn four_cycle_intersection_numbers() {
        let s = cycle_scheme(4);
        let p = s.intersection_numbers();
        assert_eq!(p.get(1, 1, 0).re, 2.0);
        assert_eq!(p.get(1, 1, 2).re, 2.0);
        assert_eq!(p.get(1, 1, 1).re, 0.0);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(p.get(0, j, k).re, f64::from(u8::from(j == k)));
            }
        }
        // A_i A_j = sum_k p_ijk A_k, exactly.
        for i in 0..3 {
            for j in 0..3 {
                let prod = s.relation(i) * s.relation(j);
                let mut rebuilt = DMatrix::<i64>::zeros(4, 4);
                for k in 0..3 {
                    rebuilt += s.relation(k) * (p.get(i, j, k).re as i64);
                }
                assert_eq!(prod, rebuilt);
            }
        }
        assert!(s.is_p_polynomial());
        let swapped = s.reorder_relations(&[0, 2, 1]).unwrap();
        assert!(!swapped.is_p_polynomial());
    }

    #[test]
    fn hadamard_products_of_relations_are_disjoint() {
        let s = cycle_scheme(6);
        for i in 0..=3 {
            for j in 0..=3 {
                let h = s.relation(i).component_mul(s.relation(j));
                if i == j {
                    assert_eq!(&h, s.relation(i));
                } else {
                    assert_eq!(h, DMatrix::zeros(6, 6));
                }
            }
        }
    }

    #[test]
    fn as4_violation_is_reported() {
        // path 0-1-2-3 is not closed under products
        let n = 4;
        let m = DMatrix::from_fn(n, n, |x: usize, y: usize| i64::from(x.abs_diff(y) == 1));
        let rest = DMatrix::from_fn(n, n, |x, y| i64::from(x != y) - m[(x, y)]);
        let err = Scheme::from_relations(vec![DMatrix::identity(n, n), m, rest]).unwrap_err();
        match err {
            Error::SchemeAxioms(v) => assert!(v.iter().any(|v| v.axiom == Axiom::As4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn as1_as2_as3_violations() {
        let n = 3;
        let not_identity = DMatrix::from_fn(n, n, |x, y| i64::from(x != y));
        let err = Scheme::from_relations(vec![not_identity, DMatrix::identity(n, n)]).unwrap_err();
        let Error::SchemeAxioms(v) = err else {
            panic!()
        };
        assert!(v.iter().any(|v| v.axiom == Axiom::As1));

        let err = Scheme::from_relations(vec![DMatrix::identity(n, n)]).unwrap_err();
        let Error::SchemeAxioms(v) = err else {
            panic!()
        };
        assert!(v.iter().all(|v| v.axiom == Axiom::As2));

        // directed 3-cycle alone is not transpose-closed
        let c = DMatrix::from_fn(n, n, |x, y| i64::from((x + 1) % n == y));
        let ct = c.transpose();
        let both = Scheme::from_relations(vec![DMatrix::identity(n, n), c.clone(), ct]);
        assert!(both.is_ok());
        let bad = Scheme::from_relations(vec![
            DMatrix::identity(n, n),
            c.clone(),
            DMatrix::from_fn(n, n, |x, y| i64::from(x != y) - c[(x, y)]),
        ]);
        // the complement is the transposed cycle, so this is fine too
        assert!(bad.is_ok());
        let asym = DMatrix::from_row_slice(3, 3, &[0, 1, 1, 0, 0, 0, 0, 0, 0]);
        let rest = DMatrix::from_fn(3, 3, |x, y| i64::from(x != y) - asym[(x, y)]);
        let err = Scheme::from_relations(vec![DMatrix::identity(3, 3), asym, rest]).unwrap_err();
        let Error::SchemeAxioms(v) = err else {
            panic!()
        };
        assert!(v.iter().any(|v| v.axiom == Axiom::As3));
    }

    #[test]
    fn non_binary_entries_are_invalid_input() {
        let err = Scheme::from_relations(vec![DMatrix::identity(2, 2) * 2]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn bm_matrices_in_a_basis() {
        let s = cycle_scheme(4);
        let id = s.bm_to_matrix(&BMElement::pure(Basis::A, 0)).unwrap();
        assert_eq!(id, CMatrix::identity(4, 4));
        let all = s
            .bm_to_matrix(&BMElement::new(Basis::A, vec![ONE; 3]))
            .unwrap();
        assert_eq!(all, CMatrix::from_element(4, 4, ONE));
        assert!(matches!(
            s.bm_to_matrix(&BMElement::pure(Basis::E, 1)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(s.krein_parameters(), Err(Error::Unsupported(_))));
        assert!(s.bm_to_matrix(&BMElement::pure(Basis::A, 3)).is_err());
    }

    #[test]
    fn products_in_a_basis() {
        let s = cycle_scheme(4);
        let a1 = BMElement::pure(Basis::A, 1);
        let sq = s.bm_product(&a1, &a1).unwrap();
        assert_eq!(
            sq.coeffs,
            vec![Complex64::new(2.0, 0.0), ZERO, Complex64::new(2.0, 0.0)]
        );
        let had = s.bm_hadamard(&a1, &BMElement::pure(Basis::A, 2)).unwrap();
        assert!(had.coeffs.iter().all(|c| *c == ZERO));
    }

    #[test]
    fn pure_detection() {
        assert_eq!(BMElement::pure(Basis::E, 2).as_pure(), Some((Basis::E, 2)));
        let two = BMElement::new(Basis::A, vec![ONE, ONE]);
        assert_eq!(two.as_pure(), None);
        assert_eq!(BMElement::new(Basis::A, vec![]).as_pure(), None);
    }
}
