//! Explicit multivariate polynomials stored as term maps.
//!
//! This is the ground-truth representation: evaluation, explicit shifts,
//! homogeneous components and formal derivatives are all computed exactly,
//! so black-box constructions elsewhere in the crate can be cross-checked
//! against it.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::rng::SeededRng;

/// Exponent vector of a single monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn constant(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A multivariate polynomial as a map from monomials to nonzero coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// identity. The degree of the zero polynomial is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl DensePoly {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        DensePoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, value: FieldElement) -> Self {
        let field = value.spec();
        let mut p = DensePoly::zero(n, field);
        p.add_term(Monomial::constant(n), value);
        p
    }

    /// The variable `x_{index}` (1-based, matching the textual grammar).
    pub fn variable(n: usize, index: usize, field: FieldSpec) -> Self {
        assert!(index >= 1 && index <= n, "variable index out of range");
        let mut exps = vec![0u32; n];
        exps[index - 1] = 1;
        let mut p = DensePoly::zero(n, field);
        p.add_term(Monomial::new(exps), field.one());
        p
    }

    pub fn from_terms(
        n: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut p = DensePoly::zero(n, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, monomial: Monomial, coeff: FieldElement) {
        assert_eq!(monomial.exponents.len(), self.n, "monomial arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        self.combine(other, true)
    }

    fn combine(&self, other: &DensePoly, negate: bool) -> DensePoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> DensePoly {
        let mut out = DensePoly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> DensePoly {
        let mut out = DensePoly::zero(self.n, self.field);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), c * v);
        }
        out
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = DensePoly::zero(self.n, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma
                    .exponents
                    .iter()
                    .zip(&mb.exponents)
                    .map(|(a, b)| a + b)
                    .collect();
                out.add_term(Monomial::new(exps), ca * cb);
            }
        }
        out
    }

    /// Exact evaluation with per-variable power tables.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let max_exp: Vec<u32> = (0..self.n)
            .map(|j| {
                self.terms
                    .keys()
                    .map(|m| m.exponents[j])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &e)| {
                let mut row = Vec::with_capacity(e as usize + 1);
                row.push(self.field.one());
                for _ in 0..e {
                    let next = row.last().unwrap() * x;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in m.exponents.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[j][e as usize];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Explicit expansion of `f(x + a)`, one variable at a time with
    /// in-field binomial rows.
    pub fn shift(&self, a: &[FieldElement]) -> Result<DensePoly> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        let mut current = self.clone();
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            current = current.shift_one_var(j, aj);
        }
        Ok(current)
    }

    /// Substitutes `x_j -> x_j + a` via the binomial theorem.
    fn shift_one_var(&self, j: usize, a: &FieldElement) -> DensePoly {
        let max_exp = self
            .terms
            .keys()
            .map(|m| m.exponents[j])
            .max()
            .unwrap_or(0) as usize;
        let binom = binomial_rows(self.field, max_exp);
        let mut a_pows = Vec::with_capacity(max_exp + 1);
        a_pows.push(self.field.one());
        for _ in 0..max_exp {
            let next = a_pows.last().unwrap() * a;
            a_pows.push(next);
        }
        let mut out = DensePoly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            let e = m.exponents[j] as usize;
            // (x + a)^e = sum_t C(e, t) a^{e-t} x^t
            for t in 0..=e {
                let coeff = &(c * &binom[e][t]) * &a_pows[e - t];
                let mut exps = m.exponents.clone();
                exps[j] = t as u32;
                out.add_term(Monomial::new(exps), coeff);
            }
        }
        out
    }

    /// Sum of the terms of total degree exactly `i`.
    pub fn homogeneous_component(&self, i: u32) -> DensePoly {
        let mut out = DensePoly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            if m.total_degree() == i {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Formal partial derivative with respect to `x_j` (1-based).
    pub fn partial_derivative(&self, j: usize) -> DensePoly {
        assert!(j >= 1 && j <= self.n, "variable index out of range");
        let mut out = DensePoly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            let e = m.exponents[j - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents.clone();
            exps[j - 1] = e - 1;
            out.add_term(Monomial::new(exps), c * &self.field.from_u64(e as u64));
        }
        out
    }

    /// First-order directional derivative `sum_t a_t d f / d x_t`.
    pub fn first_order_directional(&self, a: &[FieldElement]) -> Result<DensePoly> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        let mut out = DensePoly::zero(self.n, self.field);
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            out = out.add(&self.partial_derivative(j + 1).scale(aj));
        }
        Ok(out)
    }

    /// Order-`r` directional derivative along `a`, computed as `r`
    /// applications of the first-order operator. Order 0 is the polynomial
    /// itself.
    pub fn directional_derivative(&self, a: &[FieldElement], r: u32) -> Result<DensePoly> {
        let mut out = self.clone();
        for _ in 0..r {
            out = out.first_order_directional(a)?;
        }
        Ok(out)
    }

    /// Coefficient vector of this polynomial with respect to an explicit
    /// monomial basis (entries are zero for basis monomials not present).
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<FieldElement> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    /// Random polynomial: every monomial of total degree `<= d` is included
    /// with probability `density`, with a uniform nonzero coefficient.
    pub fn random(
        n: usize,
        d: u32,
        density: f64,
        field: FieldSpec,
        rng: &mut SeededRng,
    ) -> DensePoly {
        assert!(density > 0.0 && density <= 1.0, "density must be in (0, 1]");
        let mut out = DensePoly::zero(n, field);
        for m in monomials_up_to(n, d) {
            if rng.unit_f64() < density {
                out.add_term(m, random_nonzero(field, rng));
            }
        }
        out
    }
}

fn random_nonzero(field: FieldSpec, rng: &mut SeededRng) -> FieldElement {
    match field {
        FieldSpec::Prime(p) => field.from_u64(1 + rng.below(p - 1)),
        // Uniform nonzero integer in [-999, 999] keeps rational blowup sane.
        FieldSpec::Rational => {
            let v = rng.below(1998) as i64 - 999;
            field.from_i64(if v >= 0 { v + 1 } else { v })
        }
    }
}

/// All monomials in `n` variables of total degree at most `d`, in map order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut out, &mut current, 0, d);
    out.sort();
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var == current.len() {
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Pascal triangle rows `0..=max` as field elements.
fn binomial_rows(field: FieldSpec, max: usize) -> Vec<Vec<FieldElement>> {
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(max + 1);
    rows.push(vec![field.one()]);
    for e in 1..=max {
        let prev = &rows[e - 1];
        let mut row = Vec::with_capacity(e + 1);
        row.push(field.one());
        for t in 1..e {
            row.push(&prev[t - 1] + &prev[t]);
        }
        row.push(field.one());
        rows.push(row);
    }
    rows
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut printed = false;
            if !c.is_one() || m.total_degree() == 0 {
                write!(f, "{c}")?;
                printed = true;
            }
            for (j, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                printed = true;
                write!(f, "x{}", j + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Renders a term-map polynomial for reports; inverse of the expression
/// grammar for the subset it emits.
pub fn poly_to_string(p: &DensePoly) -> String {
    alloc::format!("{p}")
}
