//! Black-box polynomial oracles and the derived oracles built on top of
//! them: shifted inputs, linear combinations, homogeneous components via
//! scaled-input interpolation, and directional derivatives.
//!
//! An oracle is an evaluation procedure plus a degree bound. Derived oracles
//! are lazy compositions: querying a homogeneous-component oracle costs
//! exactly `d + 1` queries of the underlying base oracle, and a
//! directional-derivative oracle costs `(d + 1)^2` (nested interpolation).
//! Base-query counts are tracked in a shared counter for reporting.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::field::{factorial, FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::DensePoly;

type EvalFn = dyn Fn(&[FieldElement]) -> FieldElement + Send + Sync;

/// Black-box access to a polynomial: `n` variables, a degree bound, and a
/// pure evaluation procedure.
///
/// The function computed is assumed to have total degree at most
/// `degree_bound`; a violated bound makes interpolation-based derived
/// oracles silently wrong, so bounds must be conservative.
#[derive(Clone)]
pub struct Oracle {
    n: usize,
    degree_bound: u32,
    field: FieldSpec,
    queries: Arc<AtomicU64>,
    eval_fn: Arc<EvalFn>,
    dense: Option<Arc<DensePoly>>,
}

impl core::fmt::Debug for Oracle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Oracle")
            .field("n", &self.n)
            .field("degree_bound", &self.degree_bound)
            .field("field", &self.field)
            .field("queries", &self.queries())
            .finish()
    }
}

impl Oracle {
    /// Base oracle from an arbitrary evaluation procedure. Every call is
    /// counted as one base query.
    pub fn new(
        n: usize,
        degree_bound: u32,
        field: FieldSpec,
        eval: impl Fn(&[FieldElement]) -> FieldElement + Send + Sync + 'static,
    ) -> Oracle {
        let queries = Arc::new(AtomicU64::new(0));
        let counter = Arc::clone(&queries);
        Oracle {
            n,
            degree_bound,
            field,
            queries,
            eval_fn: Arc::new(move |point| {
                counter.fetch_add(1, Ordering::Relaxed);
                eval(point)
            }),
            dense: None,
        }
    }

    pub fn from_dense(p: &DensePoly) -> Oracle {
        let poly = p.clone();
        let bound = p.degree().unwrap_or(0);
        let mut o = Oracle::new(p.num_vars(), bound, p.field(), move |point| {
            poly.evaluate(point).expect("dimension checked by oracle")
        });
        o.dense = Some(Arc::new(p.clone()));
        o
    }

    pub fn from_circuit(c: &Circuit, degree_bound: u32) -> Oracle {
        let circuit = c.clone();
        Oracle::new(c.num_vars(), degree_bound, c.field(), move |point| {
            circuit.evaluate(point).expect("dimension checked by oracle")
        })
    }

    pub fn zero(n: usize, field: FieldSpec) -> Oracle {
        Oracle::new(n, 0, field, move |_| field.zero())
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Number of base-oracle queries made through this oracle's counter.
    /// Derived oracles share the counter of the oracle they were built from.
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// The explicit polynomial this oracle was built from, if any. Derived
    /// oracles do not carry a dense backing.
    pub fn dense_backing(&self) -> Option<&DensePoly> {
        self.dense.as_deref()
    }

    /// Attaches an explicit polynomial for exact cross-checks. The caller is
    /// responsible for it actually matching the evaluation procedure.
    pub fn with_dense_backing(mut self, p: DensePoly) -> Oracle {
        self.dense = Some(Arc::new(p));
        self
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.n, "oracle query dimension mismatch");
        (self.eval_fn)(point)
    }

    /// Same oracle with a different declared degree bound.
    pub(crate) fn with_degree_bound(&self, bound: u32) -> Oracle {
        let mut o = self.clone();
        o.degree_bound = bound;
        o
    }

    fn derived(
        &self,
        degree_bound: u32,
        eval: impl Fn(&[FieldElement]) -> FieldElement + Send + Sync + 'static,
    ) -> Oracle {
        Oracle {
            n: self.n,
            degree_bound,
            field: self.field,
            queries: Arc::clone(&self.queries),
            eval_fn: Arc::new(eval),
            dense: None,
        }
    }

    /// Oracle for `x -> f(x + a)`.
    pub fn shifted(&self, a: &[FieldElement]) -> Result<Oracle> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        let inner = self.clone();
        let a = a.to_vec();
        Ok(self.derived(self.degree_bound, move |point| {
            let moved: Vec<FieldElement> =
                point.iter().zip(&a).map(|(x, s)| x + s).collect();
            inner.eval(&moved)
        }))
    }

    /// Oracle for `sum coeffs[i] * oracles[i]`.
    pub fn linear_combination(
        coeffs: &[FieldElement],
        oracles: &[Oracle],
    ) -> Result<Oracle> {
        assert!(!oracles.is_empty(), "empty linear combination");
        if coeffs.len() != oracles.len() {
            return Err(Error::DimensionMismatch {
                expected: oracles.len(),
                got: coeffs.len(),
            });
        }
        let n = oracles[0].n;
        let field = oracles[0].field;
        for o in oracles {
            if o.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: o.n,
                });
            }
            if o.field != field {
                return Err(Error::MixedFields);
            }
        }
        let bound = oracles.iter().map(|o| o.degree_bound).max().unwrap_or(0);
        let parts: Vec<(FieldElement, Oracle)> = coeffs
            .iter()
            .cloned()
            .zip(oracles.iter().cloned())
            .collect();
        Ok(oracles[0].derived(bound, move |point| {
            let mut acc = field.zero();
            for (c, o) in &parts {
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &(c * &o.eval(point));
            }
            acc
        }))
    }

    /// Oracle for the homogeneous component `H^i(f)`, obtained by evaluating
    /// `f` at `alpha_0 x, ..., alpha_d x` and solving the Vandermonde system.
    /// Default nodes are `0, 1, ..., d`. Each query costs `d + 1` base
    /// queries. The result's degree bound is `i` (its output is homogeneous).
    pub fn homogeneous(&self, i: u32, nodes: Option<&[FieldElement]>) -> Result<Oracle> {
        let oracle = self.homogeneous_with_bound(i, nodes)?;
        Ok(oracle.with_degree_bound(i))
    }

    /// As [`Oracle::homogeneous`] but keeps the base oracle's degree bound;
    /// the nested interpolation in [`Oracle::directional_derivative`] relies
    /// on this to keep its query cost at exactly `(d + 1)^2`.
    fn homogeneous_with_bound(&self, i: u32, nodes: Option<&[FieldElement]>) -> Result<Oracle> {
        let d = self.degree_bound;
        assert!(i <= d, "component degree exceeds the degree bound");
        let nodes: Vec<FieldElement> = match nodes {
            Some(nodes) => {
                if nodes.len() != d as usize + 1 {
                    return Err(Error::DimensionMismatch {
                        expected: d as usize + 1,
                        got: nodes.len(),
                    });
                }
                nodes.to_vec()
            }
            None => self.default_nodes()?,
        };
        // Row i of the inverse Vandermonde matrix is the only one needed to
        // extract component i, so invert once here and make every query a
        // dot product against d + 1 scaled evaluations.
        let field = self.field;
        let size = nodes.len();
        let mut vandermonde = Matrix::zeros(size, size, field);
        for (r, node) in nodes.iter().enumerate() {
            let mut power = field.one();
            for c in 0..size {
                vandermonde.set(r, c, power.clone());
                power = &power * node;
            }
        }
        let inverse = vandermonde.inverse().ok_or(Error::DuplicateNodes)?;
        let weights: Vec<FieldElement> = (0..size)
            .map(|j| inverse.get(i as usize, j).clone())
            .collect();
        let inner = self.clone();
        Ok(self.derived(d, move |point| {
            let mut acc = field.zero();
            for (alpha, weight) in nodes.iter().zip(&weights) {
                let scaled: Vec<FieldElement> = point.iter().map(|x| alpha * x).collect();
                acc = &acc + &(weight * &inner.eval(&scaled));
            }
            acc
        }))
    }

    fn default_nodes(&self) -> Result<Vec<FieldElement>> {
        let d = self.degree_bound as u64;
        if let Some(p) = self.field.characteristic() {
            if p < d + 1 {
                return Err(Error::FieldTooSmall { needed: d + 1 });
            }
        }
        Ok((0..=d).map(|j| self.field.from_u64(j)).collect())
    }

    /// Oracle for the order-`r` directional derivative of the degree-`k`
    /// homogeneous component along `a`, computed as
    /// `r! * H^{k-r}(H^k(f)(x + a))`. Each query costs `(d + 1)^2` base
    /// queries.
    pub fn directional_derivative(
        &self,
        k: u32,
        r: u32,
        a: &[FieldElement],
    ) -> Result<Oracle> {
        assert!(r <= k, "derivative order exceeds component degree");
        assert!(k <= self.degree_bound, "component degree exceeds bound");
        // Keeping the intermediate bound at d makes the outer interpolation
        // reuse the same d + 1 node set; with more nodes than the true degree
        // needs, the extracted component is still exact.
        let shifted = self.homogeneous_with_bound(k, None)?.shifted(a)?;
        let scale = factorial(self.field, r);
        let component = shifted.homogeneous(k - r, None)?;
        let inner = component.clone();
        Ok(self.derived(k - r, move |point| &scale * &inner.eval(point)))
    }

    /// Oracle for the full first-order directional derivative
    /// `f^{(1)}(a, x) = sum_k f_k^{(1)}(a, x)` over `k = 1..=d`.
    pub fn first_order(&self, a: &[FieldElement]) -> Result<Oracle> {
        let d = self.degree_bound;
        if d == 0 {
            return Ok(Oracle::zero(self.n, self.field).with_queries_of(self));
        }
        let parts: Result<Vec<Oracle>> = (1..=d)
            .map(|k| self.directional_derivative(k, 1, a))
            .collect();
        let parts = parts?;
        let ones: Vec<FieldElement> = parts.iter().map(|_| self.field.one()).collect();
        Oracle::linear_combination(&ones, &parts)
    }

    fn with_queries_of(mut self, other: &Oracle) -> Oracle {
        self.queries = Arc::clone(&other.queries);
        self
    }

    /// Oracle for `x -> f(Ax + b)`.
    pub fn affine_compose(&self, a: &Matrix, b: &[FieldElement]) -> Result<Oracle> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.rows(),
            });
        }
        if b.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: b.len(),
            });
        }
        let inner = self.clone();
        let a = a.clone();
        let b = b.to_vec();
        Ok(self.derived(self.degree_bound, move |point| {
            let mut image = a.mul_vec(point);
            for (img, off) in image.iter_mut().zip(&b) {
                *img = &*img + off;
            }
            inner.eval(&image)
        }))
    }

    /// Oracle with some coordinates pinned to fixed values; the variable
    /// count is unchanged (pinned coordinates ignore the query point).
    pub fn restricted(&self, assignments: &[(usize, FieldElement)]) -> Oracle {
        let inner = self.clone();
        let assignments = assignments.to_vec();
        self.derived(self.degree_bound, move |point| {
            let mut patched = point.to_vec();
            for (idx, value) in &assignments {
                patched[*idx] = value.clone();
            }
            inner.eval(&patched)
        })
    }

    /// Wraps the oracle with a point-keyed memo table. Values are unchanged;
    /// repeated queries stop hitting the base oracle (and its counter).
    #[cfg(feature = "std")]
    pub fn memoized(&self) -> Oracle {
        use std::collections::HashMap;
        use std::sync::Mutex;
        let inner = self.clone();
        let cache: Mutex<HashMap<Vec<FieldElement>, FieldElement>> =
            Mutex::new(HashMap::new());
        let mut o = self.derived(self.degree_bound, move |point| {
            if let Some(hit) = cache.lock().unwrap().get(point) {
                return hit.clone();
            }
            let value = inner.eval(point);
            cache
                .lock()
                .unwrap()
                .insert(point.to_vec(), value.clone());
            value
        });
        o.dense = self.dense.clone();
        o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_expression;
    use crate::field::FactorialTable;
    use crate::rng::SeededRng;
    use alloc::vec;

    const F101: FieldSpec = FieldSpec::Prime(101);

    fn fe(v: i64) -> FieldElement {
        F101.from_i64(v)
    }

    fn dense(expr: &str, n: usize) -> DensePoly {
        parse_expression(expr, n, F101)
            .unwrap()
            .to_dense()
            .unwrap()
    }

    #[test]
    fn base_oracles_evaluate() {
        let sq = dense("x1^2", 1);
        let o = Oracle::from_dense(&sq);
        assert_eq!(o.eval(&[fe(3)]), fe(9));
        let c = parse_expression("(x1+x2)^2", 2, F101).unwrap();
        let oc = Oracle::from_circuit(&c, 2);
        assert_eq!(oc.eval(&[fe(1), fe(2)]), fe(9));
        let z = Oracle::zero(2, F101);
        assert_eq!(z.eval(&[fe(5), fe(6)]), fe(0));
    }

    #[test]
    fn shifted_oracle() {
        let o = Oracle::from_dense(&dense("x1^2", 1));
        let s = o.shifted(&[fe(1)]).unwrap();
        assert_eq!(s.eval(&[fe(2)]), fe(9));
        let mut rng = SeededRng::new(3);
        let f = DensePoly::random(2, 3, 0.7, F101, &mut rng);
        let of = Oracle::from_dense(&f);
        let z = of.shifted(&[fe(0), fe(0)]).unwrap();
        let a = F101.sample_point(2, 101, &mut rng).unwrap();
        let b = F101.sample_point(2, 101, &mut rng).unwrap();
        let ab: Vec<_> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let nested = of.shifted(&a).unwrap().shifted(&b).unwrap();
        let direct = of.shifted(&ab).unwrap();
        for _ in 0..10 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            assert_eq!(z.eval(&p), of.eval(&p));
            assert_eq!(nested.eval(&p), direct.eval(&p));
        }
        assert!(of.shifted(&[fe(1)]).is_err());
    }

    #[test]
    fn linear_combination_cancels() {
        let o = Oracle::from_dense(&dense("x1^3 - x1 + 2", 1));
        let diff =
            Oracle::linear_combination(&[fe(1), fe(-1)], &[o.clone(), o.clone()]).unwrap();
        let mut rng = SeededRng::new(4);
        for _ in 0..10 {
            let p = F101.sample_point(1, 101, &mut rng).unwrap();
            assert_eq!(diff.eval(&p), fe(0));
        }
        let x1 = Oracle::from_dense(&dense("x1", 2));
        let x2 = Oracle::from_dense(&dense("x2", 2));
        let combo = Oracle::linear_combination(&[fe(2), fe(3)], &[x1, x2]).unwrap();
        assert_eq!(combo.eval(&[fe(1), fe(1)]), fe(5));
    }

    #[test]
    fn homogeneous_oracle_matches_binomial() {
        // f = (x+1)^3 has H^1 = 3x.
        let o = Oracle::from_dense(&dense("(x1+1)^3", 1));
        let h1 = o.homogeneous(1, None).unwrap();
        assert_eq!(h1.eval(&[fe(2)]), fe(6));
        assert_eq!(h1.degree_bound(), 1);
    }

    #[test]
    fn homogeneous_oracle_is_projection() {
        let f = dense("x1^2*x2 + x1*x2^2", 2); // already homogeneous of degree 3
        let o = Oracle::from_dense(&f);
        let h3 = o.homogeneous(3, None).unwrap();
        let mut rng = SeededRng::new(5);
        for _ in 0..10 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            assert_eq!(h3.eval(&p), o.eval(&p));
        }
    }

    #[test]
    fn homogeneous_oracle_matches_dense_components() {
        let mut rng = SeededRng::new(6);
        for _ in 0..5 {
            let f = DensePoly::random(3, 5, 0.5, F101, &mut rng);
            let o = Oracle::from_dense(&f);
            let d = o.degree_bound();
            for i in 0..=d {
                let h = o.homogeneous(i, None).unwrap();
                let dense_h = f.homogeneous_component(i);
                for _ in 0..10 {
                    let p = F101.sample_point(3, 101, &mut rng).unwrap();
                    assert_eq!(h.eval(&p), dense_h.evaluate(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn homogeneous_components_sum_to_oracle() {
        let mut rng = SeededRng::new(7);
        let f = DensePoly::random(2, 4, 0.6, F101, &mut rng);
        let o = Oracle::from_dense(&f);
        for _ in 0..10 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            let mut acc = fe(0);
            for i in 0..=o.degree_bound() {
                acc = &acc + &o.homogeneous(i, None).unwrap().eval(&p);
            }
            assert_eq!(acc, o.eval(&p));
        }
    }

    #[test]
    fn custom_interpolation_nodes() {
        let o = Oracle::from_dense(&dense("(x1+1)^3", 1));
        let nodes: Vec<_> = [5, 9, 23, 57].iter().map(|&v| fe(v)).collect();
        let h1 = o.homogeneous(1, Some(&nodes)).unwrap();
        assert_eq!(h1.eval(&[fe(2)]), fe(6));
        let wrong_count: Vec<_> = [1, 2].iter().map(|&v| fe(v)).collect();
        assert!(o.homogeneous(1, Some(&wrong_count)).is_err());
    }

    #[test]
    fn directional_derivative_single_partial() {
        // f = x1^2 x2, k = 3: f^{(1)} along e1 is 2 x1 x2.
        let o = Oracle::from_dense(&dense("x1^2*x2", 2));
        let dd = o.directional_derivative(3, 1, &[fe(1), fe(0)]).unwrap();
        let mut rng = SeededRng::new(8);
        for _ in 0..10 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            assert_eq!(dd.eval(&p), &(&fe(2) * &p[0]) * &p[1]);
        }
    }

    #[test]
    fn directional_derivative_order_zero_is_component() {
        let mut rng = SeededRng::new(9);
        let f = DensePoly::random(2, 4, 0.6, F101, &mut rng);
        let o = Oracle::from_dense(&f);
        let k = 3;
        let a = F101.sample_point(2, 50, &mut rng).unwrap();
        let dd0 = o.directional_derivative(k, 0, &a).unwrap();
        let hk = o.homogeneous(k, None).unwrap();
        for _ in 0..10 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            assert_eq!(dd0.eval(&p), hk.eval(&p));
        }
    }

    #[test]
    fn directional_derivative_matches_explicit() {
        // Pins down the r! constant against the formal definition.
        let mut rng = SeededRng::new(10);
        for _ in 0..5 {
            let f = DensePoly::random(3, 4, 0.5, F101, &mut rng);
            let d = f.degree().unwrap_or(0);
            let o = Oracle::from_dense(&f);
            let a = F101.sample_point(3, 30, &mut rng).unwrap();
            for k in 0..=d {
                for r in 0..=k.min(3) {
                    let oracle = o.directional_derivative(k, r, &a).unwrap();
                    let explicit = f
                        .homogeneous_component(k)
                        .directional_derivative(&a, r)
                        .unwrap();
                    for _ in 0..5 {
                        let p = F101.sample_point(3, 101, &mut rng).unwrap();
                        assert_eq!(
                            oracle.eval(&p),
                            explicit.evaluate(&p).unwrap(),
                            "k={k} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn first_order_oracle() {
        let mut rng = SeededRng::new(11);
        // Zero direction gives the zero oracle.
        let f = DensePoly::random(2, 3, 0.7, F101, &mut rng);
        let o = Oracle::from_dense(&f);
        let z = o.first_order(&[fe(0), fe(0)]).unwrap();
        for _ in 0..5 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            assert_eq!(z.eval(&p), fe(0));
        }
        // f = x1^2 along (c): derivative is 2 c x1.
        let sq = Oracle::from_dense(&dense("x1^2", 1));
        let c = fe(7);
        let fo = sq.first_order(&[c.clone()]).unwrap();
        for _ in 0..5 {
            let p = F101.sample_point(1, 101, &mut rng).unwrap();
            assert_eq!(fo.eval(&p), &(&fe(2) * &c) * &p[0]);
        }
        // A stabilizer direction of (x1 - x2)^2 kills the derivative.
        let sym = Oracle::from_dense(&dense("(x1-x2)^2", 2));
        let killed = sym.first_order(&[fe(1), fe(1)]).unwrap();
        for _ in 0..5 {
            let p = F101.sample_point(2, 101, &mut rng).unwrap();
            assert_eq!(killed.eval(&p), fe(0));
        }
    }

    #[test]
    fn taylor_identity_via_oracles() {
        let mut rng = SeededRng::new(12);
        let f = DensePoly::random(2, 4, 0.6, F101, &mut rng);
        let o = Oracle::from_dense(&f);
        let d = o.degree_bound();
        let table = FactorialTable::build(F101, d).unwrap();
        let a = F101.sample_point(2, 30, &mut rng).unwrap();
        let shifted = o.shifted(&a).unwrap();
        for i in 0..=d {
            let lhs = shifted.homogeneous(i, None).unwrap();
            let mut terms = Vec::new();
            let mut coeffs = Vec::new();
            for j in i..=d {
                terms.push(o.directional_derivative(j, j - i, &a).unwrap());
                coeffs.push(table.inv_factorial(j - i).clone());
            }
            let rhs = Oracle::linear_combination(&coeffs, &terms).unwrap();
            for _ in 0..5 {
                let p = F101.sample_point(2, 101, &mut rng).unwrap();
                assert_eq!(lhs.eval(&p), rhs.eval(&p), "i = {i}");
            }
        }
    }

    #[test]
    fn query_accounting() {
        let f = dense("x1^3 + x2 + 1", 2);
        let o = Oracle::from_dense(&f);
        let d = o.degree_bound() as u64;
        let h = o.homogeneous(2, None).unwrap();
        let before = o.queries();
        h.eval(&[fe(1), fe(2)]);
        assert_eq!(o.queries() - before, d + 1);
        let dd = o.directional_derivative(3, 1, &[fe(1), fe(0)]).unwrap();
        let before = o.queries();
        dd.eval(&[fe(1), fe(2)]);
        assert_eq!(o.queries() - before, (d + 1) * (d + 1));
        // The derived handle reports the same counter.
        assert_eq!(h.queries(), o.queries());
    }

    #[test]
    fn affine_compose_oracle() {
        let o = Oracle::from_dense(&dense("x1^2 + x2", 2));
        let a = Matrix::from_rows(
            vec![vec![fe(0), fe(1)], vec![fe(1), fe(0)]],
            F101,
        );
        let composed = o.affine_compose(&a, &[fe(1), fe(2)]).unwrap();
        // x -> f(x2 + 1, x1 + 2)
        assert_eq!(composed.eval(&[fe(3), fe(4)]), &fe(25) + &fe(5));
    }

    #[test]
    fn restricted_oracle_pins_coordinates() {
        let o = Oracle::from_dense(&dense("x1*x2", 2));
        let r = o.restricted(&[(0, fe(5))]);
        assert_eq!(r.eval(&[fe(100), fe(3)]), fe(15));
    }

    #[cfg(feature = "std")]
    #[test]
    fn memoized_oracle_caches() {
        let o = Oracle::from_dense(&dense("x1^2", 1));
        let m = o.memoized();
        let before = o.queries();
        assert_eq!(m.eval(&[fe(4)]), fe(16));
        assert_eq!(m.eval(&[fe(4)]), fe(16));
        assert_eq!(o.queries() - before, 1);
    }
}
