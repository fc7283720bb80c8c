//! Character-basis coefficients of scaffold tensors, the isometry `Psi`,
//! and numerical verification of scaffold duality over translation schemes.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::evaluate::{eval_elimination, EvalOptions, ScaffoldTensor};
use crate::groups::AbelianGroup;
use crate::scheme::Basis;
use crate::translation::TranslationScheme;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Coefficients of a tensor in the orthonormal basis `eta_1^ (x) ... (x)
/// eta_l^` with `eta^ = |X|^{-1/2} sum_x conj(eta(x)) x^`. Indexed by
/// character indices of `group`, row-major like [`ScaffoldTensor`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTensor {
    pub ell: usize,
    pub group: AbelianGroup,
    pub entries: Vec<Complex64>,
}

impl CoeffTensor {
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn unflatten(&self, mut idx: usize, out: &mut [usize]) {
        let n = self.group.size();
        for slot in out.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
    }

    /// The coefficients viewed as a tensor over `X*`.
    pub fn as_tensor(&self) -> ScaffoldTensor {
        ScaffoldTensor {
            ell: self.ell,
            size: self.group.size(),
            entries: self.entries.clone(),
        }
    }
}

/// Applies `table` (row-major `n x n`, `out[a] = sum_b table[a][b] in[b]`)
/// along every axis in turn.
fn transform_axes(
    entries: &[Complex64],
    ell: usize,
    n: usize,
    table: &[Complex64],
) -> Vec<Complex64> {
    let mut cur = entries.to_vec();
    let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
    for axis in 0..ell {
        let stride = n.pow((ell - 1 - axis) as u32);
        let block = stride * n;
        for z in next.iter_mut() {
            *z = Complex64::new(0.0, 0.0);
        }
        for base in (0..cur.len()).step_by(block) {
            for inner in 0..stride {
                for a in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..n {
                        acc += table[a * n + b] * cur[base + b * stride + inner];
                    }
                    next[base + a * stride + inner] = acc;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// `c_eta = <T, eta^>`, computed one axis at a time.
pub fn character_coefficients(t: &ScaffoldTensor, g: &AbelianGroup) -> Result<CoeffTensor> {
    let n = g.size();
    if t.size != n {
        return Err(Error::invalid(format!(
            "tensor is over {} points but the group has {n} elements",
            t.size
        )));
    }
    let scale = (n as f64).sqrt().recip();
    let table: Vec<Complex64> = g.character_table().into_iter().map(|z| z * scale).collect();
    Ok(CoeffTensor {
        ell: t.ell,
        group: g.clone(),
        entries: transform_axes(&t.entries, t.ell, n, &table),
    })
}

/// `T = sum_eta c_eta eta^`.
pub fn inverse_coefficients(c: &CoeffTensor) -> ScaffoldTensor {
    let n = c.group.size();
    let scale = (n as f64).sqrt().recip();
    let chars = c.group.character_table();
    // transpose and conjugate: table[x][eta] = conj(eta(x)) / sqrt(n)
    let table: Vec<Complex64> = (0..n * n)
        .map(|k| chars[(k % n) * n + k / n].conj() * scale)
        .collect();
    ScaffoldTensor {
        ell: c.ell,
        size: n,
        entries: transform_axes(&c.entries, c.ell, n, &table),
    }
}

fn product_is_trivial(g: &AbelianGroup, idx: &[usize]) -> bool {
    idx.iter().fold(0, |acc, &e| g.mul_index(acc, e)) == 0
}

/// Norm of the coefficients off `Gamma = {eps_1 ... eps_l = iota}`.
pub fn gamma_residual(c: &CoeffTensor) -> Result<f64> {
    if c.ell == 0 {
        return Err(Error::unsupported("Gamma is only defined for order >= 1"));
    }
    let mut idx = vec![0; c.ell];
    let mut sum = 0.0;
    for (k, z) in c.entries.iter().enumerate() {
        c.unflatten(k, &mut idx);
        if !product_is_trivial(&c.group, &idx) {
            sum += z.norm_sqr();
        }
    }
    Ok(sum.sqrt())
}

/// `Phi(eta) = (eta_l eta_1^-1, eta_1 eta_2^-1, ..., eta_{l-1} eta_l^-1)`.
pub fn phi(g: &AbelianGroup, eta: &[usize]) -> Vec<usize> {
    let l = eta.len();
    (0..l)
        .map(|i| {
            let prev = eta[(i + l - 1) % l];
            g.mul_index(prev, g.inv_index(eta[i]))
        })
        .collect()
}

/// `Psi(C)[eta] = |X|^{-1/2} C[Phi(eta)]`. Fails if `C` carries more than
/// `tol * max(1, |C|)` off `Gamma`.
pub fn apply_psi(c: &CoeffTensor, tol: f64) -> Result<CoeffTensor> {
    let off = gamma_residual(c)?;
    if off > tol * c.norm().max(1.0) {
        return Err(Error::invalid(format!(
            "coefficients have norm {off:e} off Gamma"
        )));
    }
    let n = c.group.size();
    let scale = (n as f64).sqrt().recip();
    let mut eta = vec![0; c.ell];
    let entries = (0..c.entries.len())
        .map(|k| {
            c.unflatten(k, &mut eta);
            let target = phi(&c.group, &eta).iter().fold(0, |acc, &e| acc * n + e);
            c.entries[target] * scale
        })
        .collect();
    Ok(CoeffTensor {
        ell: c.ell,
        group: c.group.clone(),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Timings {
    pub eval_seconds: f64,
    pub dual_eval_seconds: f64,
    pub transform_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub ell: usize,
    pub n: usize,
    /// `|X|^{n - l/2 - 1/2}`, or `|X|^{n-1}` when `l = 0`.
    pub scalar: f64,
    /// `max |Psi(S) - scalar S+|`, divided by `max(1, |S+|_max)`.
    pub residual: f64,
    /// Norm of `S`'s coefficients off `Gamma`, divided by `max(1, |S|)`;
    /// zero when `l = 0`.
    pub gamma_residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub timings: Timings,
}

/// Checks `Psi(S) = |X|^{n - l/2 - 1/2} S+` (or `S = |X|^{n-1} S+` when
/// `l = 0`), where `S+` is the dual diagram evaluated on the dual scheme.
pub fn verify_duality(
    d: &Diagram,
    ts: &TranslationScheme,
    tol: f64,
    opts: &EvalOptions,
) -> Result<DualityReport> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::invalid(format!(
            "tolerance must be non-negative, got {tol}"
        )));
    }
    if !d.edges().is_empty() && d.pure_basis() != Some(Basis::A) {
        return Err(Error::unsupported(
            "duality is verified for diagrams weighted by single A_i",
        ));
    }
    let size = ts.group().size() as f64;
    let (ell, n) = (d.order(), d.node_count());

    let clock = Instant::now();
    let s = eval_elimination(d, ts.scheme(), None, opts)?;
    let eval_seconds = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let dual_ts = ts.dual()?;
    let s_dual = eval_elimination(&d.dual()?, dual_ts.scheme(), None, opts)?;
    let dual_eval_seconds = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let (scalar, lhs, gamma) = if ell == 0 {
        (size.powi(n as i32 - 1), s.clone(), 0.0)
    } else {
        let c = character_coefficients(&s, ts.group())?;
        let gamma = gamma_residual(&c)? / c.norm().max(1.0);
        let psi = apply_psi(&c, f64::INFINITY)?;
        let scalar = size.powf(n as f64 - ell as f64 / 2.0 - 0.5);
        (scalar, psi.as_tensor(), gamma)
    };
    let transform_seconds = clock.elapsed().as_secs_f64();

    let rhs = s_dual.scale(Complex64::new(scalar, 0.0));
    let residual = lhs.max_abs_diff(&rhs)? / s_dual.max_abs().max(1.0);
    Ok(DualityReport {
        ell,
        n,
        scalar,
        residual,
        gamma_residual: gamma,
        tol,
        pass: residual <= tol && gamma <= tol,
        timings: Timings {
            eval_seconds,
            dual_eval_seconds,
            transform_seconds,
        },
    })
}

/// One term `coeff * |X|^size_power * S(diagram)` of a dualized combination.
/// The power is kept symbolic because no scheme is fixed yet.
#[derive(Debug, Clone, PartialEq)]
pub struct DualTerm {
    pub coeff: Complex64,
    pub size_power: usize,
    pub diagram: Diagram,
}

impl DualTerm {
    /// The coefficient with `|X| = size` substituted.
    pub fn numeric_coeff(&self, size: usize) -> Complex64 {
        self.coeff * (size as f64).powi(self.size_power as i32)
    }
}

/// `(a, d) -> (a |X|^{n_d}, d+)`, with `n_d` the node count of `d`. All
/// diagrams must have the same order.
pub fn dualize_combination(terms: &[(Complex64, Diagram)]) -> Result<Vec<DualTerm>> {
    if let Some((_, first)) = terms.first() {
        if let Some((_, odd)) = terms.iter().find(|(_, d)| d.order() != first.order()) {
            return Err(Error::invalid(format!(
                "terms mix orders {} and {}",
                first.order(),
                odd.order()
            )));
        }
    }
    terms
        .iter()
        .map(|(a, d)| {
            if !d.edges().is_empty() && d.pure_basis() != Some(Basis::A) {
                return Err(Error::unsupported(
                    "combinations are dualized for diagrams weighted by single A_i",
                ));
            }
            Ok(DualTerm {
                coeff: *a,
                size_power: d.node_count(),
                diagram: d.dual()?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn ones_vector_lands_on_iota() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let t = ScaffoldTensor::new(1, 4, vec![ONE; 4]).unwrap();
        let c = character_coefficients(&t, &g).unwrap();
        assert!(close(c.entries[0], Complex64::new(2.0, 0.0)));
        assert!(c.entries[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn hat_vectors_are_orthonormal() {
        let g = AbelianGroup::new(&[2, 3]).unwrap();
        let n = g.size();
        let chars = g.character_table();
        for eps in 0..n {
            let hat: Vec<Complex64> = (0..n)
                .map(|x| chars[eps * n + x].conj() / (n as f64).sqrt())
                .collect();
            let c = character_coefficients(&ScaffoldTensor::new(1, n, hat).unwrap(), &g).unwrap();
            for (k, z) in c.entries.iter().enumerate() {
                let want = if k == eps {
                    ONE
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!(close(*z, want));
            }
        }
    }

    #[test]
    fn psi_of_order_one() {
        let g = AbelianGroup::cyclic(5).unwrap();
        let mut c = CoeffTensor {
            ell: 1,
            group: g,
            entries: vec![Complex64::new(0.0, 0.0); 5],
        };
        c.entries[0] = ONE;
        let p = apply_psi(&c, 1e-9).unwrap();
        let s = 5f64.sqrt().recip();
        assert!(p.entries.iter().all(|z| close(*z, Complex64::new(s, 0.0))));

        c.entries[2] = ONE;
        assert!((gamma_residual(&c).unwrap() - 1.0).abs() < 1e-12);
        assert!(apply_psi(&c, 1e-9).is_err());
    }

    #[test]
    fn psi_fibres_in_order_two() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let n = 4;
        let mut c = CoeffTensor {
            ell: 2,
            group: g.clone(),
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        };
        // unit at (eps, eps^-1) with eps = 1
        c.entries[n + g.inv_index(1)] = ONE;
        let p = apply_psi(&c, 1e-9).unwrap();
        let hits: Vec<usize> = (0..n * n)
            .filter(|&k| p.entries[k].norm() > 1e-12)
            .collect();
        assert_eq!(hits.len(), n);
        for k in hits {
            let (e1, e2) = (k / n, k % n);
            // Phi(eta)_2 = eta_1 eta_2^-1 must equal eps^-1
            assert_eq!(g.mul_index(e1, g.inv_index(e2)), g.inv_index(1));
            assert!(close(p.entries[k], Complex64::new(0.5, 0.0)));
        }
        assert!((p.norm() - c.norm()).abs() < 1e-12);
    }

    #[test]
    fn gamma_needs_order() {
        let c = CoeffTensor {
            ell: 0,
            group: AbelianGroup::cyclic(3).unwrap(),
            entries: vec![ONE],
        };
        assert!(matches!(gamma_residual(&c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn point_and_loop_specialize() {
        let opts = EvalOptions::default();
        let ts = catalog::scheme("z4-cycle").unwrap();
        let r = verify_duality(&catalog::point0().unwrap(), &ts, DEFAULT_TOL, &opts).unwrap();
        assert!(r.pass && r.scalar == 1.0, "{r:?}");
        for i in 0..ts.classes() + 1 {
            let r = verify_duality(&catalog::loop0(i).unwrap(), &ts, DEFAULT_TOL, &opts).unwrap();
            assert!(r.pass, "loop A_{i}: {r:?}");
        }
    }

    #[test]
    fn triangle_on_the_four_cycle() {
        let ts = catalog::scheme("z4-cycle").unwrap();
        let d = catalog::triangle(1, 1, 2).unwrap();
        let r = verify_duality(&d, &ts, DEFAULT_TOL, &EvalOptions::default()).unwrap();
        assert_eq!((r.n, r.ell), (3, 3));
        assert!((r.scalar - 4.0).abs() < 1e-12);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn dualize_scales_by_node_count() {
        let terms = vec![
            (ONE, catalog::ex21_lhs(1, 1).unwrap()),
            (-ONE, catalog::ex21_rhs(1, 1).unwrap()),
        ];
        let out = dualize_combination(&terms).unwrap();
        assert_eq!((out[0].size_power, out[1].size_power), (4, 3));
        assert_eq!(out[1].coeff, -ONE);
        assert_eq!(out[0].numeric_coeff(2), Complex64::new(16.0, 0.0));
        assert!(dualize_combination(&[]).unwrap().is_empty());
        let mixed = vec![
            (ONE, catalog::point1().unwrap()),
            (ONE, catalog::point0().unwrap()),
        ];
        assert!(dualize_combination(&mixed).is_err());
    }
}
