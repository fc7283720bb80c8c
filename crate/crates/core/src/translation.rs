//! Translation schemes: relations `R_i = {(x, y) : y x^-1 in N_i}` for a
//! partition `N_0 = {1}, N_1, ..., N_d` of a finite abelian group.
//!
//! The characters are common eigenvectors of every relation matrix, so the
//! eigen data is available in closed form. Grouping characters by their
//! eigenvalue vectors gives the classes `X*_0, ..., X*_d`; the class of the
//! trivial character comes first and the rest follow in order of first
//! appearance in the character enumeration.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result, TranslationViolation};
use crate::groups::{AbelianGroup, Character, GroupElement};
use crate::scheme::{CMatrix, EigenData, Scheme};

/// Eigenvalue vectors closer than this (per component) are the same class.
pub const CLASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct TranslationScheme {
    group: AbelianGroup,
    /// Element indices of `N_0..N_d`.
    connection_sets: Vec<Vec<usize>>,
    /// Character indices of `X*_0..X*_d`, aligned with the idempotents.
    eigen_classes: Vec<Vec<usize>>,
    scheme: Scheme,
}

impl TranslationScheme {
    /// Builds and validates the translation scheme of a partition of `group`.
    pub fn new(group: AbelianGroup, sets: &[Vec<GroupElement>]) -> Result<TranslationScheme> {
        let indices = sets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|x| group.index_of(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(group, indices)
    }

    /// Like [`TranslationScheme::new`] with sets given by element index.
    pub fn from_indices(group: AbelianGroup, sets: Vec<Vec<usize>>) -> Result<TranslationScheme> {
        let scheme = relations_from_sets(&group, &sets)?;
        let table = group.character_table();
        let n = group.size();
        let dim = sets.len();

        // eigenvalue of A_i on the eigenvector of eps: sum_{z in N_i} conj(eps(z))
        let eigenvalues: Vec<Vec<Complex64>> = (0..n)
            .map(|eps| {
                sets.iter()
                    .map(|set| set.iter().map(|&z| table[eps * n + z].conj()).sum())
                    .collect()
            })
            .collect();

        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut rows: Vec<&Vec<Complex64>> = Vec::new();
        for (eps, lam) in eigenvalues.iter().enumerate() {
            match rows.iter().position(|r| same_vector(r, lam)) {
                Some(c) => classes[c].push(eps),
                None => {
                    rows.push(lam);
                    classes.push(vec![eps]);
                }
            }
        }
        if classes.len() != dim {
            return Err(TranslationViolation::EigenClassCount {
                found: classes.len(),
                expected: dim,
            }
            .into());
        }

        let p = CMatrix::from_fn(dim, dim, |j, i| rows[j][i]);
        let q = p.clone().try_inverse().ok_or_else(|| {
            TranslationViolation::EigenData("first eigenmatrix is singular".into())
        })? * Complex64::new(n as f64, 0.0);
        let idempotents = classes
            .iter()
            .map(|class| projector(n, &table, class))
            .collect();
        let scheme = scheme.with_eigen_data(EigenData { idempotents, p, q })?;
        Ok(TranslationScheme {
            group,
            connection_sets: sets,
            eigen_classes: classes,
            scheme,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn classes(&self) -> usize {
        self.scheme.classes()
    }

    pub fn connection_set_indices(&self) -> &[Vec<usize>] {
        &self.connection_sets
    }

    pub fn connection_sets(&self) -> Vec<Vec<GroupElement>> {
        self.connection_sets
            .iter()
            .map(|set| set.iter().map(|&i| self.group.element(i)).collect())
            .collect()
    }

    pub fn eigen_class_indices(&self) -> &[Vec<usize>] {
        &self.eigen_classes
    }

    pub fn eigen_classes(&self) -> Vec<Vec<Character>> {
        self.eigen_classes
            .iter()
            .map(|set| set.iter().map(|&i| self.group.character(i)).collect())
            .collect()
    }

    pub fn eigen_data(&self) -> &EigenData {
        self.scheme
            .eigen()
            .expect("translation schemes always carry eigen data")
    }

    /// The dual scheme on the character group, with connection sets
    /// `N*_i = X*_i` and eigenmatrices `P* = Q`, `Q* = P`.
    pub fn dual(&self) -> Result<TranslationScheme> {
        let group = self.group.dual_group();
        let n = group.size();
        let dim = self.eigen_classes.len();
        let sets = self.eigen_classes.clone();
        let scheme = relations_from_sets(&group, &sets)?;
        let eigen = self.eigen_data();

        // E*_i = |X|^-1 sum_j P[j,i] A*_j
        let idempotents: Vec<CMatrix> = (0..dim)
            .map(|i| CMatrix::from_fn(n, n, |x, y| eigen.p[(scheme.class_of(x, y), i)] / n as f64))
            .collect();
        let p_star = eigen.q.clone();
        let q_star = eigen.p.clone();

        // Characters of X* are the elements of X under the same pairing;
        // place each in the class whose row of P* matches its eigenvalues.
        let table = group.character_table();
        let mut classes = vec![Vec::new(); dim];
        for x in 0..n {
            let lam: Vec<Complex64> = sets
                .iter()
                .map(|set| set.iter().map(|&eps| table[x * n + eps].conj()).sum())
                .collect();
            let hit = (0..dim).find(|&j| {
                lam.iter()
                    .enumerate()
                    .all(|(i, l)| (l - p_star[(j, i)]).norm() <= CLASS_TOL * (n as f64))
            });
            match hit {
                Some(j) => classes[j].push(x),
                None => {
                    return Err(TranslationViolation::EigenData(format!(
                        "character {x} of the dual matches no row of Q"
                    ))
                    .into())
                }
            }
        }
        if let Some(j) = classes.iter().position(Vec::is_empty) {
            return Err(
                TranslationViolation::EigenData(format!("dual eigenspace {j} is empty")).into(),
            );
        }

        let scheme = scheme.with_eigen_data(EigenData {
            idempotents,
            p: p_star,
            q: q_star,
        })?;
        Ok(TranslationScheme {
            group,
            connection_sets: sets,
            eigen_classes: classes,
            scheme,
        })
    }
}

fn relations_from_sets(group: &AbelianGroup, sets: &[Vec<usize>]) -> Result<Scheme> {
    let n = group.size();
    let mut owner = vec![usize::MAX; n];
    for (i, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(TranslationViolation::NotAPartition(format!("set {i} is empty")).into());
        }
        for &z in set {
            if z >= n {
                return Err(Error::invalid(format!("element index {z} out of range")));
            }
            if owner[z] != usize::MAX {
                return Err(TranslationViolation::NotAPartition(format!(
                    "element {} lies in sets {} and {i}",
                    group.element(z),
                    owner[z]
                ))
                .into());
            }
            owner[z] = i;
        }
    }
    if let Some(z) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(TranslationViolation::NotAPartition(format!(
            "element {} is in no set",
            group.element(z)
        ))
        .into());
    }
    if sets.first().map(Vec::as_slice) != Some(&[0][..]) {
        return Err(TranslationViolation::IdentityClass.into());
    }
    let mats = (0..sets.len())
        .map(|i| {
            DMatrix::from_fn(n, n, |x, y| {
                i64::from(owner[group.mul_index(y, group.inv_index(x))] == i)
            })
        })
        .collect();
    Scheme::from_relations(mats)
}

/// `sum_{eps in class} e_hat e_hat^H` with `e_hat = |X|^-1/2 sum_x conj(eps(x)) x`.
fn projector(n: usize, table: &[Complex64], class: &[usize]) -> CMatrix {
    CMatrix::from_fn(n, n, |x, y| {
        class
            .iter()
            .map(|&eps| table[eps * n + x].conj() * table[eps * n + y])
            .sum::<Complex64>()
            / n as f64
    })
}

fn same_vector(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= CLASS_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Axiom;
    use crate::scheme::max_abs;

    fn elems(sets: &[&[&[usize]]]) -> Vec<Vec<GroupElement>> {
        sets.iter()
            .map(|s| s.iter().map(|c| GroupElement(c.to_vec())).collect())
            .collect()
    }

    fn z4_cycle() -> TranslationScheme {
        let g = AbelianGroup::cyclic(4).unwrap();
        let sets = elems(&[&[&[0]], &[&[1], &[3]], &[&[2]]]);
        TranslationScheme::new(g, &sets).unwrap()
    }

    fn h22() -> TranslationScheme {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        let sets = elems(&[&[&[0, 0]], &[&[0, 1], &[1, 0]], &[&[1, 1]]]);
        TranslationScheme::new(g, &sets).unwrap()
    }

    fn real(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_fn(rows.len(), rows.len(), |i, j| {
            Complex64::new(rows[i][j], 0.0)
        })
    }

    #[test]
    fn four_cycle_eigenmatrices() {
        let ts = z4_cycle();
        let want = real(&[&[1.0, 2.0, 1.0], &[1.0, 0.0, -1.0], &[1.0, -2.0, 1.0]]);
        let e = ts.eigen_data();
        assert!(max_abs(&(&e.p - &want)) < 1e-12);
        assert!(max_abs(&(&e.q - &want)) < 1e-9);
        assert_eq!(ts.eigen_class_indices(), &[vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn first_row_is_valencies() {
        for ts in [z4_cycle(), h22()] {
            let e = ts.eigen_data();
            for (i, k) in ts.scheme().valencies().into_iter().enumerate() {
                assert!((e.p[(0, i)] - Complex64::new(k as f64, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hamming_scheme_is_valid() {
        let ts = h22();
        assert_eq!(ts.classes(), 2);
        let q = ts.scheme().krein_parameters().unwrap();
        assert!((q.get(1, 1, 0) - Complex64::new(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn krein_parameters_of_four_cycle_match_intersection_numbers() {
        let ts = z4_cycle();
        let p = ts.scheme().intersection_numbers();
        let q = ts.scheme().krein_parameters().unwrap();
        assert!(p.max_abs_diff(&q) < 1e-9);
        for j in 0..3 {
            for k in 0..3 {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((q.get(0, j, k) - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
        assert!(ts.scheme().is_q_polynomial().unwrap());
        let swapped = ts.scheme().reorder_idempotents(&[0, 2, 1]).unwrap();
        assert!(!swapped.is_q_polynomial().unwrap());
    }

    #[test]
    fn asymmetric_sets_fail_as3() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let sets = elems(&[&[&[0]], &[&[1]], &[&[2], &[3]]]);
        match TranslationScheme::new(g, &sets).unwrap_err() {
            Error::SchemeAxioms(v) => assert!(v.iter().any(|v| v.axiom == Axiom::As3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn partition_errors() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let missing = elems(&[&[&[0]], &[&[1], &[3]]]);
        assert!(matches!(
            TranslationScheme::new(g.clone(), &missing),
            Err(Error::Translation(TranslationViolation::NotAPartition(_)))
        ));
        let twice = elems(&[&[&[0]], &[&[1], &[3]], &[&[2], &[1]]]);
        assert!(matches!(
            TranslationScheme::new(g.clone(), &twice),
            Err(Error::Translation(TranslationViolation::NotAPartition(_)))
        ));
        let no_identity = elems(&[&[&[0], &[2]], &[&[1], &[3]]]);
        assert!(matches!(
            TranslationScheme::new(g, &no_identity),
            Err(Error::Translation(TranslationViolation::IdentityClass))
        ));
    }

    #[test]
    fn fusion_that_is_not_a_scheme_is_rejected() {
        // {1, 2} on Z5 is not inverse-closed
        let g = AbelianGroup::cyclic(5).unwrap();
        let sets = elems(&[&[&[0]], &[&[1], &[2]], &[&[3], &[4]]]);
        assert!(TranslationScheme::new(g, &sets)
            .unwrap_err()
            .is_validation_failure());
    }

    #[test]
    fn dual_swaps_eigenmatrices() {
        for ts in [z4_cycle(), h22()] {
            let dual = ts.dual().unwrap();
            let (e, d) = (ts.eigen_data(), dual.eigen_data());
            assert!(max_abs(&(&d.p - &e.q)) < 1e-9);
            assert!(max_abs(&(&d.q - &e.p)) < 1e-9);
            // self-dual: same P as the original
            assert!(max_abs(&(&d.p - &e.p)) < 1e-9);
            let double = dual.dual().unwrap();
            assert!(max_abs(&(&double.eigen_data().p - &e.p)) < 1e-9);
            for (class, m) in dual
                .eigen_class_indices()
                .iter()
                .zip(dual.scheme().multiplicities().unwrap())
            {
                assert!((class.len() as f64 - m).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dual_of_complete_scheme() {
        let g = AbelianGroup::cyclic(3).unwrap();
        let ts = TranslationScheme::from_indices(g, vec![vec![0], vec![1, 2]]).unwrap();
        let dual = ts.dual().unwrap();
        assert_eq!(dual.connection_set_indices(), &[vec![0], vec![1, 2]]);
    }
}
