//! Arithmetic circuits: DAGs of input, constant, addition and multiplication
//! gates, parsed from a small expression grammar.
//!
//! Subtraction and unary minus are desugared into `(-1) * rhs` so the gate
//! alphabet stays `{+, *}`. `^k` expands to a balanced multiplication chain.
//! At desk scale a circuit can be expanded into an explicit [`DensePoly`]
//! for cross-checking.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := 'x' uint | int | '(' expr ')' | '-' base
//! ```
//!
//! Variables are `x1..xn`. Integer literals may be negative; over the
//! rationals `a/b` literals are also accepted.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::DensePoly;

/// Default cap on the syntactic degree bound accepted by [`Circuit::to_dense`].
pub const MAX_DENSE_DEGREE: u32 = 64;
/// Default cap on intermediate term counts in [`Circuit::to_dense`].
pub const MAX_DENSE_TERMS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Input(usize),
    Const(FieldElement),
    Add(usize, usize),
    Mul(usize, usize),
}

/// An arithmetic circuit in topological order: children always precede
/// parents, and a single output gate is designated.
#[derive(Debug, Clone)]
pub struct Circuit {
    n: usize,
    field: FieldSpec,
    gates: Vec<Gate>,
    output: usize,
}

impl Circuit {
    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Gate-by-gate evaluation in topological order.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut values: Vec<FieldElement> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match gate {
                Gate::Input(i) => point[*i].clone(),
                Gate::Const(c) => c.clone(),
                Gate::Add(l, r) => &values[*l] + &values[*r],
                Gate::Mul(l, r) => &values[*l] * &values[*r],
            };
            values.push(v);
        }
        Ok(values[self.output].clone())
    }

    /// Per-gate degree bound: inputs are 1, constants 0, addition takes the
    /// max and multiplication the sum. Always at least the true degree.
    pub fn syntactic_degree_bound(&self) -> u32 {
        let mut bounds: Vec<u32> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let b = match gate {
                Gate::Input(_) => 1,
                Gate::Const(_) => 0,
                Gate::Add(l, r) => bounds[*l].max(bounds[*r]),
                Gate::Mul(l, r) => bounds[*l].saturating_add(bounds[*r]),
            };
            bounds.push(b);
        }
        bounds[self.output]
    }

    /// Exact expansion into a term map, with default size limits.
    pub fn to_dense(&self) -> Result<DensePoly> {
        self.to_dense_with_limits(MAX_DENSE_DEGREE, MAX_DENSE_TERMS)
    }

    pub fn to_dense_with_limits(&self, max_degree: u32, max_terms: usize) -> Result<DensePoly> {
        if self.syntactic_degree_bound() > max_degree {
            return Err(Error::TooLarge(format!(
                "syntactic degree bound {} exceeds limit {max_degree}",
                self.syntactic_degree_bound()
            )));
        }
        let mut polys: Vec<DensePoly> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let p = match gate {
                Gate::Input(i) => DensePoly::variable(self.n, i + 1, self.field),
                Gate::Const(c) => DensePoly::constant(self.n, c.clone()),
                Gate::Add(l, r) => polys[*l].add(&polys[*r]),
                Gate::Mul(l, r) => polys[*l].mul(&polys[*r]),
            };
            if p.num_terms() > max_terms {
                return Err(Error::TooLarge(format!(
                    "intermediate expansion has more than {max_terms} terms"
                )));
            }
            polys.push(p);
        }
        Ok(polys.swap_remove(self.output))
    }
}

/// Builder that hash-conses input and constant leaves; internal gates are
/// appended as-is.
struct Builder {
    n: usize,
    field: FieldSpec,
    gates: Vec<Gate>,
    var_gate: Vec<Option<usize>>,
    const_gate: BTreeMap<FieldElement, usize>,
}

impl Builder {
    fn new(n: usize, field: FieldSpec) -> Self {
        Builder {
            n,
            field,
            gates: Vec::new(),
            var_gate: vec![None; n],
            const_gate: BTreeMap::new(),
        }
    }

    fn input(&mut self, i: usize) -> usize {
        if let Some(g) = self.var_gate[i] {
            return g;
        }
        self.gates.push(Gate::Input(i));
        let g = self.gates.len() - 1;
        self.var_gate[i] = Some(g);
        g
    }

    fn constant(&mut self, c: FieldElement) -> usize {
        if let Some(&g) = self.const_gate.get(&c) {
            return g;
        }
        self.gates.push(Gate::Const(c.clone()));
        let g = self.gates.len() - 1;
        self.const_gate.insert(c, g);
        g
    }

    fn add(&mut self, l: usize, r: usize) -> usize {
        self.gates.push(Gate::Add(l, r));
        self.gates.len() - 1
    }

    fn mul(&mut self, l: usize, r: usize) -> usize {
        self.gates.push(Gate::Mul(l, r));
        self.gates.len() - 1
    }

    fn neg(&mut self, g: usize) -> usize {
        let minus_one = self.constant(self.field.from_i64(-1));
        self.mul(minus_one, g)
    }

    fn sub(&mut self, l: usize, r: usize) -> usize {
        let neg_r = self.neg(r);
        self.add(l, neg_r)
    }

    /// Balanced power chain via repeated squaring.
    fn pow(&mut self, base: usize, exp: u32) -> usize {
        match exp {
            0 => self.constant(self.field.one()),
            1 => base,
            _ => {
                let half = self.pow(base, exp / 2);
                let sq = self.mul(half, half);
                if exp % 2 == 1 {
                    self.mul(sq, base)
                } else {
                    sq
                }
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    builder: Builder,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self) -> Result<usize> {
        // Unary minus binds looser than `^`: -x1^2 is -(x1^2).
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            let first = self.term()?;
            self.builder.neg(first)
        } else {
            self.term()?
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' {
                self.builder.add(acc, rhs)
            } else {
                self.builder.sub(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<usize> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.builder.mul(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<usize> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.uint()?;
            return Ok(self.builder.pow(base, exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<usize> {
        match self.peek() {
            Some(b'-') => {
                // Negative literal, e.g. `-5` or `-5/3`; minus in front of
                // anything else is handled at the expression level.
                self.pos += 1;
                let literal = self.base()?;
                Ok(self.builder.neg(literal))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.uint()? as usize;
                if idx < 1 || idx > self.builder.n {
                    return Err(self.err(format!(
                        "variable x{idx} out of range (n = {})",
                        self.builder.n
                    )));
                }
                Ok(self.builder.input(idx - 1))
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.uint()? as i64;
                // `a/b` literals are only meaningful over the rationals;
                // there is no division gate.
                if self.peek() == Some(b'/') {
                    if self.builder.field != FieldSpec::Rational {
                        return Err(self.err("`a/b` literals require the rational field"));
                    }
                    self.pos += 1;
                    let den = self.uint()? as i64;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    let c = self.builder.field.from_ratio(num, den)?;
                    return Ok(self.builder.constant(c));
                }
                let c = self.builder.field.from_i64(num);
                Ok(self.builder.constant(c))
            }
            Some(b) => Err(self.err(format!("unexpected character `{}`", b as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("number out of range"))
    }
}

/// Parses an expression into a circuit over `n` variables.
pub fn parse_expression(text: &str, n: usize, field: FieldSpec) -> Result<Circuit> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        builder: Builder::new(n, field),
    };
    let output = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(Circuit {
        n,
        field,
        gates: parser.builder.gates,
        output,
    })
}
