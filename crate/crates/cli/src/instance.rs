//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! field: p=101          (or `rational`; default p=2305843009213693951)
//! n: 2
//! degree: 4             (optional degree bound)
//! f: (x1+x2)^2
//! g: x1^2+2*x1*x2+x2^2
//! h: x1                 (repeatable; generators for `lindep`)
//! ```
//!
//! A polynomial may be declared as `dense: <terms>` instead of a plain
//! expression; it is then expanded to an explicit term list up front and the
//! oracle is backed by it directly.

use polyshift_core::circuit::{parse_expression, Circuit};
use polyshift_core::{DensePoly, Error, FieldSpec, Oracle};

#[derive(Debug, Clone)]
pub struct ParsedPoly {
    pub circuit: Circuit,
    pub dense: Option<DensePoly>,
}

impl ParsedPoly {
    fn parse(text: &str, n: usize, field: FieldSpec) -> Result<Self, Error> {
        let (body, want_dense) = match text.trim().strip_prefix("dense:") {
            Some(rest) => (rest.trim(), true),
            None => (text.trim(), false),
        };
        let circuit = parse_expression(body, n, field)?;
        let dense = if want_dense {
            Some(circuit.to_dense()?)
        } else {
            None
        };
        Ok(ParsedPoly { circuit, dense })
    }

    /// Oracle with the given degree bound; `dense:` declarations are served
    /// from the expanded term list (with its exact degree).
    pub fn oracle(&self, degree_bound: Option<u32>) -> Oracle {
        match &self.dense {
            Some(p) => Oracle::from_dense(p),
            None => {
                let bound = degree_bound.unwrap_or_else(|| self.circuit.syntactic_degree_bound());
                Oracle::from_circuit(&self.circuit, bound)
            }
        }
    }

    /// Same oracle but guaranteed to carry an explicit polynomial for exact
    /// re-checks; expands the circuit when necessary.
    pub fn oracle_with_dense(&self, degree_bound: Option<u32>) -> Result<Oracle, Error> {
        match &self.dense {
            Some(p) => Ok(Oracle::from_dense(p)),
            None => {
                let expanded = self.circuit.to_dense()?;
                Ok(self.oracle(degree_bound).with_dense_backing(expanded))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub field: FieldSpec,
    pub n: usize,
    pub degree: Option<u32>,
    pub f: Option<ParsedPoly>,
    pub g: Option<ParsedPoly>,
    pub generators: Vec<ParsedPoly>,
}

impl Instance {
    /// Parses file text. `field_override` wins over the file's `field:` line.
    pub fn parse(text: &str, field_override: Option<FieldSpec>) -> Result<Instance, Error> {
        let mut field: Option<FieldSpec> = None;
        let mut n: Option<usize> = None;
        let mut degree: Option<u32> = None;
        let mut polys: Vec<(char, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Parse {
                    pos: lineno + 1,
                    message: format!("expected `key: value`, got `{line}`"),
                });
            };
            let value = value.trim();
            match key.trim() {
                "field" => field = Some(FieldSpec::parse(value)?),
                "n" => {
                    n = Some(value.parse().map_err(|_| Error::Parse {
                        pos: lineno + 1,
                        message: format!("invalid variable count `{value}`"),
                    })?)
                }
                "degree" => {
                    degree = Some(value.parse().map_err(|_| Error::Parse {
                        pos: lineno + 1,
                        message: format!("invalid degree bound `{value}`"),
                    })?)
                }
                "f" => polys.push(('f', value.to_string())),
                "g" => polys.push(('g', value.to_string())),
                "h" => polys.push(('h', value.to_string())),
                other => {
                    return Err(Error::Parse {
                        pos: lineno + 1,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let field = field_override
            .or(field)
            .unwrap_or_else(FieldSpec::default_prime);
        let n = n.ok_or_else(|| Error::Parse {
            pos: 0,
            message: "missing `n:` line".to_string(),
        })?;
        let mut instance = Instance {
            field,
            n,
            degree,
            f: None,
            g: None,
            generators: Vec::new(),
        };
        for (kind, text) in polys {
            let parsed = ParsedPoly::parse(&text, n, field)?;
            match kind {
                'f' => instance.f = Some(parsed),
                'g' => instance.g = Some(parsed),
                _ => instance.generators.push(parsed),
            }
        }
        Ok(instance)
    }

    pub fn require_f(&self) -> Result<&ParsedPoly, Error> {
        self.f.as_ref().ok_or_else(|| Error::Parse {
            pos: 0,
            message: "instance file has no `f:` line".to_string(),
        })
    }

    pub fn require_g(&self) -> Result<&ParsedPoly, Error> {
        self.g.as_ref().ok_or_else(|| Error::Parse {
            pos: 0,
            message: "instance file has no `g:` line".to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_instance() {
        let text = "\
# a pair over a small field
field: p=101
n: 2
degree: 4
f: (x1+x2)^2
g: x1^2+2*x1*x2+x2^2
h: x1
h: x2
";
        let inst = Instance::parse(text, None).unwrap();
        assert_eq!(inst.field, FieldSpec::Prime(101));
        assert_eq!(inst.n, 2);
        assert_eq!(inst.degree, Some(4));
        assert!(inst.f.is_some());
        assert!(inst.g.is_some());
        assert_eq!(inst.generators.len(), 2);
        let f = inst.f.unwrap().oracle(inst.degree);
        let p = |v: i64| FieldSpec::Prime(101).from_i64(v);
        assert_eq!(f.eval(&[p(1), p(2)]), p(9));
        assert_eq!(f.degree_bound(), 4);
    }

    #[test]
    fn dense_declaration_expands() {
        let text = "n: 1\nf: dense: x1^2 + 2*x1 + 1\n";
        let inst = Instance::parse(text, None).unwrap();
        let f = inst.f.unwrap();
        assert_eq!(f.dense.as_ref().unwrap().num_terms(), 3);
        let o = f.oracle(None);
        assert!(o.dense_backing().is_some());
        assert_eq!(o.degree_bound(), 2);
    }

    #[test]
    fn defaults_and_overrides() {
        let inst = Instance::parse("n: 1\nf: x1\n", None).unwrap();
        assert_eq!(inst.field, FieldSpec::default_prime());
        let inst = Instance::parse(
            "field: p=101\nn: 1\nf: x1\n",
            Some(FieldSpec::Rational),
        )
        .unwrap();
        assert_eq!(inst.field, FieldSpec::Rational);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Instance::parse("nonsense\n", None).is_err());
        assert!(Instance::parse("n: 1\nq: x1\n", None).is_err());
        assert!(Instance::parse("f: x1\n", None).is_err()); // missing n
        assert!(Instance::parse("n: 2\nf: x3\n", None).is_err());
    }
}
