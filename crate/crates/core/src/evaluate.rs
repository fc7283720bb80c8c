//! Scaffold tensors: the sum over all node assignments of the product of
//! edge weights, indexed by the values at the roots.

use num_complex::Complex64;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::scheme::Scheme;

pub const DEFAULT_CAP: u128 = 10_000_000;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense tensor over `X^ell`, row-major in the root order; `r_1` varies
/// slowest. Order 0 holds one scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaffoldTensor {
    pub ell: usize,
    pub size: usize,
    pub entries: Vec<Complex64>,
}

impl ScaffoldTensor {
    pub fn new(ell: usize, size: usize, entries: Vec<Complex64>) -> Result<Self> {
        let want =
            checked_pow(size, ell).ok_or_else(|| Error::invalid("tensor shape overflows"))?;
        if entries.len() as u128 != want {
            return Err(Error::invalid(format!(
                "order-{ell} tensor over {size} points needs {want} entries, got {}",
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("tensor entries must be finite"));
        }
        Ok(ScaffoldTensor { ell, size, entries })
    }

    pub fn zeros(ell: usize, size: usize) -> Self {
        ScaffoldTensor {
            ell,
            size,
            entries: vec![ZERO; size.pow(ell as u32)],
        }
    }

    /// Entry at the root values `index` (one per root).
    pub fn get(&self, index: &[usize]) -> Complex64 {
        assert_eq!(index.len(), self.ell);
        self.entries[index.iter().fold(0, |acc, &x| acc * self.size + x)]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, alpha: Complex64) -> ScaffoldTensor {
        ScaffoldTensor {
            entries: self.entries.iter().map(|z| z * alpha).collect(),
            ..*self
        }
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: Complex64, other: &ScaffoldTensor) -> Result<ScaffoldTensor> {
        self.same_shape(other)?;
        Ok(ScaffoldTensor {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + alpha * b)
                .collect(),
            ..*self
        })
    }

    pub fn max_abs_diff(&self, other: &ScaffoldTensor) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn same_shape(&self, other: &ScaffoldTensor) -> Result<()> {
        if self.ell != other.ell || self.size != other.size {
            return Err(Error::invalid(format!(
                "tensor shapes differ: order {} over {} vs order {} over {}",
                self.ell, self.size, other.ell, other.size
            )));
        }
        Ok(())
    }
}

/// `sum_x T1[x] conj(T2[x])`.
pub fn inner_product(t1: &ScaffoldTensor, t2: &ScaffoldTensor) -> Result<Complex64> {
    t1.same_shape(t2)?;
    Ok(t1
        .entries
        .iter()
        .zip(&t2.entries)
        .map(|(a, b)| a * b.conj())
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest `|X|^|V|` brute force will enumerate.
    pub max_entries: u128,
    /// Largest factor elimination may build.
    pub max_intermediate: u128,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_entries: DEFAULT_CAP,
            max_intermediate: DEFAULT_CAP,
        }
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    (base as u128).checked_pow(u32::try_from(exp).ok()?)
}

/// Row-major `|X| x |X|` weight matrices, one per edge.
fn weight_tables(d: &Diagram, s: &Scheme) -> Result<Vec<Vec<Complex64>>> {
    d.edges()
        .iter()
        .map(|e| {
            let m = s.bm_to_matrix(&e.weight)?;
            let n = s.size();
            Ok((0..n * n).map(|k| m[(k / n, k % n)]).collect())
        })
        .collect()
}

/// Direct summation over every map `V -> X`.
pub fn eval_bruteforce(d: &Diagram, s: &Scheme, opts: &EvalOptions) -> Result<ScaffoldTensor> {
    let n = s.size();
    let v = d.node_count();
    let configs = checked_pow(n, v).unwrap_or(u128::MAX);
    if configs > opts.max_entries {
        return Err(Error::ResourceLimit {
            what: "brute-force assignments",
            requested: configs,
            cap: opts.max_entries,
        });
    }
    let tables = weight_tables(d, s)?;
    let ends: Vec<(usize, usize)> = d.edges().iter().map(|e| (e.tail, e.head)).collect();
    let mut out = ScaffoldTensor::zeros(d.order(), n);
    let mut sigma = vec![0usize; v];
    'outer: loop {
        let mut prod = ONE;
        for (t, &(a, b)) in tables.iter().zip(&ends) {
            prod *= t[sigma[a] * n + sigma[b]];
            if prod == ZERO {
                break;
            }
        }
        if prod != ZERO {
            let idx = d.roots().iter().fold(0, |acc, &r| acc * n + sigma[r]);
            out.entries[idx] += prod;
        }
        for x in sigma.iter_mut().rev() {
            *x += 1;
            if *x < n {
                continue 'outer;
            }
            *x = 0;
        }
        break;
    }
    Ok(out)
}

/// A dense factor over a sorted set of nodes, row-major in that order.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    table: Vec<Complex64>,
}

impl Factor {
    fn at(&self, n: usize, assignment: &[usize]) -> Complex64 {
        let idx = self.vars.iter().fold(0, |acc, &v| acc * n + assignment[v]);
        self.table[idx]
    }
}

/// Multiplies `factors` over the union of their nodes and sums out `gone`
/// (if any). `assignment` is scratch space indexed by node.
fn combine(
    factors: &[Factor],
    gone: Option<usize>,
    n: usize,
    nodes: usize,
    cap: u128,
) -> Result<Factor> {
    let mut union: Vec<usize> = factors
        .iter()
        .flat_map(|f| f.vars.iter().copied())
        .collect();
    if let Some(g) = gone {
        union.push(g);
    }
    union.sort_unstable();
    union.dedup();
    let span = checked_pow(n, union.len()).unwrap_or(u128::MAX);
    if span > cap {
        return Err(Error::ResourceLimit {
            what: "elimination intermediate",
            requested: span,
            cap,
        });
    }
    let kept: Vec<usize> = union.iter().copied().filter(|&u| Some(u) != gone).collect();
    let mut table = vec![ZERO; n.pow(kept.len() as u32)];
    let mut assignment = vec![0usize; nodes];
    let mut counter = vec![0usize; union.len()];
    'outer: loop {
        for (slot, &u) in counter.iter().zip(&union) {
            assignment[u] = *slot;
        }
        let mut prod = ONE;
        for f in factors {
            prod *= f.at(n, &assignment);
            if prod == ZERO {
                break;
            }
        }
        if prod != ZERO {
            let idx = kept.iter().fold(0, |acc, &u| acc * n + assignment[u]);
            table[idx] += prod;
        }
        for c in counter.iter_mut().rev() {
            *c += 1;
            if *c < n {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    Ok(Factor { vars: kept, table })
}

/// Min-degree greedy order over the non-roots. Degree counts distinct
/// neighbours (roots included) in the interaction graph, which gains a
/// clique on the neighbourhood of each eliminated node. Ties go to the
/// smaller node name.
pub fn elimination_order(d: &Diagram) -> Vec<String> {
    let v = d.node_count();
    let mut adj = vec![vec![false; v]; v];
    for e in d.edges() {
        if !e.is_loop() {
            adj[e.tail][e.head] = true;
            adj[e.head][e.tail] = true;
        }
    }
    let mut alive: Vec<bool> = vec![true; v];
    let mut order = Vec::new();
    loop {
        let degree = |u: usize, adj: &[Vec<bool>], alive: &[bool]| {
            (0..v).filter(|&w| alive[w] && adj[u][w]).count()
        };
        let pick = (0..v)
            .filter(|&u| alive[u] && !d.is_root(u))
            .min_by(|&a, &b| {
                degree(a, &adj, &alive)
                    .cmp(&degree(b, &adj, &alive))
                    .then_with(|| d.nodes()[a].cmp(&d.nodes()[b]))
            });
        let Some(u) = pick else { break };
        let nbrs: Vec<usize> = (0..v).filter(|&w| alive[w] && adj[u][w]).collect();
        for &a in &nbrs {
            for &b in &nbrs {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        alive[u] = false;
        order.push(d.nodes()[u].clone());
    }
    order
}

/// Variable elimination over the non-roots. `order`, when given, must list
/// every non-root exactly once; otherwise [`elimination_order`] is used.
pub fn eval_elimination(
    d: &Diagram,
    s: &Scheme,
    order: Option<&[String]>,
    opts: &EvalOptions,
) -> Result<ScaffoldTensor> {
    let n = s.size();
    let nodes = d.node_count();
    let order: Vec<usize> = match order {
        Some(names) => resolve_order(d, names)?,
        None => elimination_order(d)
            .iter()
            .map(|name| {
                d.node_index(name)
                    .expect("order names come from the diagram")
            })
            .collect(),
    };

    let tables = weight_tables(d, s)?;
    let mut factors: Vec<Factor> = d
        .edges()
        .iter()
        .zip(tables)
        .map(|(e, t)| {
            if e.is_loop() {
                Factor {
                    vars: vec![e.tail],
                    table: (0..n).map(|x| t[x * n + x]).collect(),
                }
            } else if e.tail < e.head {
                Factor {
                    vars: vec![e.tail, e.head],
                    table: t,
                }
            } else {
                Factor {
                    vars: vec![e.head, e.tail],
                    table: (0..n * n).map(|k| t[(k % n) * n + k / n]).collect(),
                }
            }
        })
        .collect();

    for &u in &order {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&u));
        factors = rest;
        factors.push(combine(
            &touching,
            Some(u),
            n,
            nodes,
            opts.max_intermediate,
        )?);
    }

    let last = combine(&factors, None, n, nodes, opts.max_intermediate)?;
    // the remaining factor is over the sorted roots that carry an edge;
    // roots without one contribute a constant axis
    let mut out = ScaffoldTensor::zeros(d.order(), n);
    let mut assignment = vec![0usize; nodes];
    for (idx, slot) in out.entries.iter_mut().enumerate() {
        let mut rem = idx;
        for &r in d.roots().iter().rev() {
            assignment[r] = rem % n;
            rem /= n;
        }
        *slot = last.at(n, &assignment);
    }
    Ok(out)
}

fn resolve_order(d: &Diagram, names: &[String]) -> Result<Vec<usize>> {
    let mut seen = vec![false; d.node_count()];
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        let v = d
            .node_index(name)
            .ok_or_else(|| Error::invalid(format!("order names unknown node `{name}`")))?;
        if d.is_root(v) {
            return Err(Error::invalid(format!("order lists root `{name}`")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!("order lists `{name}` twice")));
        }
        out.push(v);
    }
    let missing = (0..d.node_count())
        .filter(|&v| !d.is_root(v) && !seen[v])
        .count();
    if missing > 0 {
        return Err(Error::invalid(format!(
            "order omits {missing} non-root node(s)"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn z4() -> crate::TranslationScheme {
        catalog::scheme("z4-cycle").unwrap()
    }

    #[test]
    fn empty_products() {
        let s = z4();
        let opts = EvalOptions::default();
        let t = eval_bruteforce(&catalog::point1().unwrap(), s.scheme(), &opts).unwrap();
        assert_eq!(t.entries, vec![ONE; 4]);
        let t = eval_bruteforce(&catalog::point0().unwrap(), s.scheme(), &opts).unwrap();
        assert_eq!(t.entries, vec![Complex64::new(4.0, 0.0)]);
        let t = eval_elimination(&catalog::point0().unwrap(), s.scheme(), None, &opts).unwrap();
        assert_eq!(t.entries, vec![Complex64::new(4.0, 0.0)]);
    }

    #[test]
    fn single_edge_is_the_adjacency_matrix() {
        let s = z4();
        let d = crate::DiagramBuilder::new()
            .root("a")
            .root("b")
            .edge("e", "a", "b", crate::BMElement::pure(crate::Basis::A, 1))
            .rotation("a", &["e:t"])
            .rotation("b", &["e:h"])
            .build()
            .unwrap();
        let t = eval_bruteforce(&d, s.scheme(), &EvalOptions::default()).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let want = if (y + 4 - x) % 4 == 1 || (x + 4 - y) % 4 == 1 {
                    1.0
                } else {
                    0.0
                };
                assert_eq!(t.get(&[x, y]), Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(elimination_order(&catalog::path2(1, 1).unwrap()), vec!["v"]);
        assert_eq!(
            elimination_order(&catalog::star(1, 1, 1).unwrap()),
            vec!["d"]
        );
        assert!(elimination_order(&catalog::triangle(1, 1, 1).unwrap()).is_empty());
    }

    #[test]
    fn bad_orders_and_caps() {
        let s = z4();
        let d = catalog::path2(1, 1).unwrap();
        let opts = EvalOptions::default();
        for bad in [vec!["r1"], vec!["v", "v"], vec![], vec!["zz"]] {
            let bad: Vec<String> = bad.into_iter().map(String::from).collect();
            assert!(eval_elimination(&d, s.scheme(), Some(&bad), &opts).is_err());
        }
        let tight = EvalOptions {
            max_entries: 10,
            max_intermediate: 10,
        };
        assert!(matches!(
            eval_bruteforce(&d, s.scheme(), &tight),
            Err(Error::ResourceLimit { requested: 64, .. })
        ));
        assert!(matches!(
            eval_elimination(&d, s.scheme(), None, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn inner_products() {
        let ones = ScaffoldTensor::new(1, 4, vec![ONE; 4]).unwrap();
        assert_eq!(
            inner_product(&ones, &ones).unwrap(),
            Complex64::new(4.0, 0.0)
        );
        let other = ScaffoldTensor::zeros(2, 4);
        assert!(inner_product(&ones, &other).is_err());
        assert!(ScaffoldTensor::new(1, 4, vec![ONE; 3]).is_err());
    }

    #[test]
    fn elimination_matches_brute_force_on_catalog() {
        let opts = EvalOptions::default();
        for (sname, ts) in catalog::all_schemes() {
            for name in catalog::DIAGRAM_NAMES {
                let d = catalog::diagram(name, None, Some(ts.classes())).unwrap();
                let b = eval_bruteforce(&d, ts.scheme(), &opts).unwrap();
                let e = eval_elimination(&d, ts.scheme(), None, &opts).unwrap();
                let diff = b.max_abs_diff(&e).unwrap();
                assert!(
                    diff <= 1e-10 * b.max_abs().max(1.0),
                    "{sname}/{name}: {diff}"
                );
            }
        }
    }
}
