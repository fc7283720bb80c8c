mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scaffolds::catalog;
use scaffolds::duality::{character_coefficients, gamma_residual, verify_duality, DEFAULT_TOL};
use scaffolds::evaluate::{eval_bruteforce, eval_elimination};
use scaffolds::{BMElement, Basis, Complex64, Diagram, EvalOptions, ScaffoldTensor};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn eval(d: &Diagram, scheme: &str) -> ScaffoldTensor {
    let ts = catalog::scheme(scheme).unwrap();
    eval_elimination(d, ts.scheme(), None, &EvalOptions::default()).unwrap()
}

fn rel_diff(a: &ScaffoldTensor, b: &ScaffoldTensor) -> f64 {
    a.max_abs_diff(b).unwrap() / a.max_abs().max(b.max_abs()).max(1.0)
}

/// `t` with its axes in reverse order.
fn reverse_axes(t: &ScaffoldTensor) -> ScaffoldTensor {
    let n = t.size;
    let mut out = t.clone();
    for (k, z) in t.entries.iter().enumerate() {
        let mut idx = Vec::with_capacity(t.ell);
        let mut rem = k;
        for _ in 0..t.ell {
            idx.push(rem % n);
            rem /= n;
        }
        // idx is already reversed (least significant first)
        let flat = idx.iter().fold(0, |acc, &x| acc * n + x);
        out.entries[flat] = *z;
    }
    out
}

fn random_element(r: &mut ChaCha8Rng, dim: usize) -> BMElement {
    BMElement::new(
        Basis::A,
        (0..dim)
            .map(|_| Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_diagrams_satisfy_euler(seed in any::<u64>()) {
        let d = common::random_diagram(&mut rng(seed), 6, 8, 4, 2);
        prop_assert_eq!(d.trace_faces().euler_characteristic(), 2);
    }

    #[test]
    fn elimination_agrees_with_brute_force(seed in any::<u64>()) {
        let d = common::random_diagram(&mut rng(seed), 6, 8, 4, 2);
        let ts = catalog::scheme("z4-cycle").unwrap();
        let opts = EvalOptions::default();
        let b = eval_bruteforce(&d, ts.scheme(), &opts).unwrap();
        let e = eval_elimination(&d, ts.scheme(), None, &opts).unwrap();
        prop_assert!(rel_diff(&b, &e) <= 1e-10);
    }

    #[test]
    fn evaluation_ignores_the_embedding(seed in any::<u64>()) {
        let d = common::random_diagram(&mut rng(seed), 5, 7, 3, 2);
        let m = common::mirror(&d);
        let ts = catalog::scheme("z4-cycle").unwrap();
        let opts = EvalOptions::default();
        let a = eval_bruteforce(&d, ts.scheme(), &opts).unwrap();
        let b = eval_bruteforce(&m, ts.scheme(), &opts).unwrap();
        prop_assert_eq!(a, reverse_axes(&b));
    }

    #[test]
    fn double_dual_reverses_edges(seed in any::<u64>()) {
        let d = common::random_diagram(&mut rng(seed), 6, 8, 4, 2);
        let dd = d.dual().unwrap().dual().unwrap();
        prop_assert!(d.correspondence(&dd, true, 1).is_some());
        let dddd = dd.dual().unwrap().dual().unwrap();
        prop_assert!(d.correspondence(&dddd, false, 2).is_some());
    }

    #[test]
    fn duality_holds_on_random_diagrams(seed in any::<u64>(), h22 in any::<bool>()) {
        let d = common::random_diagram(&mut rng(seed), 5, 6, 3, 2);
        let ts = catalog::scheme(if h22 { "h22" } else { "z4-cycle" }).unwrap();
        let r = verify_duality(&d, &ts, DEFAULT_TOL, &EvalOptions::default()).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn planar_scaffolds_are_supported_on_gamma(seed in any::<u64>()) {
        let d = common::random_diagram(&mut rng(seed), 5, 7, 4, 2);
        prop_assume!(d.order() > 0);
        let ts = catalog::scheme("z5-paley").unwrap();
        let s = eval_elimination(&d, ts.scheme(), None, &EvalOptions::default()).unwrap();
        let c = character_coefficients(&s, ts.group()).unwrap();
        prop_assert!(gamma_residual(&c).unwrap() <= 1e-9 * s.norm().max(1.0));
    }

    #[test]
    fn evaluation_is_multilinear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = common::random_diagram(&mut r, 5, 6, 3, 2);
        prop_assume!(!d.edges().is_empty());
        let k = r.gen_range(0..d.edges().len());
        let (u, w) = (random_element(&mut r, 3), random_element(&mut r, 3));
        let alpha = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let beta = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let mix = u.combine(alpha, &w, beta).unwrap();
        let lhs = eval(&d.with_weight(k, mix), "z4-cycle");
        let rhs = eval(&d.with_weight(k, u), "z4-cycle")
            .scale(alpha)
            .axpy(beta, &eval(&d.with_weight(k, w), "z4-cycle"))
            .unwrap();
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn series_and_parallel_reductions_preserve_value(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = common::random_diagram(&mut r, 6, 8, 3, 2);
        let ts = catalog::scheme("z6-cycle").unwrap();
        let s = ts.scheme();
        let before = eval(&d, "z6-cycle");
        for v in 0..d.node_count() {
            if let Ok(red) = d.reduce_series(&d.nodes()[v], s) {
                prop_assert!(rel_diff(&before, &eval(&red, "z6-cycle")) <= 1e-10);
            }
        }
        for e in d.edges() {
            let (t, h) = (&d.nodes()[e.tail], &d.nodes()[e.head]);
            if let Ok(red) = d.reduce_parallel(t, h, s) {
                prop_assert!(rel_diff(&before, &eval(&red, "z6-cycle")) <= 1e-10);
            }
        }
    }
}

#[test]
fn catalog_series_and_parallel_examples() {
    let ts = catalog::scheme("z5-paley").unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let path = catalog::path2(i, j).unwrap();
            let joined = path.reduce_series("v", ts.scheme()).unwrap();
            assert_eq!(joined.edges().len(), 1);
            assert!(rel_diff(&eval(&path, "z5-paley"), &eval(&joined, "z5-paley")) <= 1e-10);

            let par = catalog::parallel2(i, j).unwrap();
            let merged = par.reduce_parallel("r1", "r2", ts.scheme()).unwrap();
            // A_i o A_j = delta_ij A_i
            let w = &merged.edges()[0].weight;
            let want = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert_eq!(w.coeff(i), want);
            assert!(rel_diff(&eval(&par, "z5-paley"), &eval(&merged, "z5-paley")) <= 1e-10);
        }
    }
}

#[test]
fn two_loop_embeddings_agree() {
    let side = catalog::loops_side(1, 2).unwrap();
    let nested = catalog::loops_nested(1, 2).unwrap();
    assert_eq!(eval(&side, "h22"), eval(&nested, "h22"));
}
