//! Polynomial identity testing engines.
//!
//! Two interchangeable engines sit behind one interface: single-sample
//! Schwartz-Zippel (one-sided error `<= degree_bound / |T|`) and explicit
//! hitting sets (deterministic: zero iff every point evaluates to zero).
//! A decision-to-search scan turns any deterministic engine into a
//! nonzero-point finder.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::oracle::Oracle;
use crate::rng::SeededRng;

/// How a hitting set came to be; recorded for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Random { seed: u64, size: usize },
    UserSupplied,
}

/// A fixed set of evaluation points intended to hit a class of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSet {
    pub points: Vec<Vec<FieldElement>>,
    pub provenance: Provenance,
}

impl HittingSet {
    pub fn user_supplied(points: Vec<Vec<FieldElement>>) -> Self {
        HittingSet {
            points,
            provenance: Provenance::UserSupplied,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `size` uniform points of `T^n` with `|T| = min(p, d^2 * size)`.
///
/// The guarantee that a random set of appropriate size hits all circuits of
/// size `s` and degree `d` is non-constructive about the domain; the `d^2 *
/// size` choice (and the `|F| >= max(d^2, s)` expectation on the caller) is
/// a heuristic validated empirically in the test suite.
pub fn random_hitting_set(
    n: usize,
    d: u32,
    _s: u64,
    size: usize,
    field: FieldSpec,
    rng: &mut SeededRng,
) -> HittingSet {
    let seed_marker = rng.next_u64();
    let mut local = SeededRng::new(seed_marker);
    let wanted = (d as u128 * d as u128 * size as u128).max(1);
    let domain = match field.characteristic() {
        Some(p) => wanted.min(p as u128) as u64,
        None => wanted.min(u64::MAX as u128) as u64,
    };
    let points = (0..size)
        .map(|_| {
            field
                .sample_point(n, domain, &mut local)
                .expect("domain fits the field by construction")
        })
        .collect();
    HittingSet {
        points,
        provenance: Provenance::Random {
            seed: seed_marker,
            size,
        },
    }
}

/// A PIT engine: either single-sample Schwartz-Zippel with a per-call error
/// budget, or a deterministic hitting-set evaluator.
#[derive(Debug, Clone)]
pub enum PitEngine {
    SchwartzZippel { epsilon: f64, rng: SeededRng },
    HittingSet(HittingSet),
}

/// Smallest `t` with `d / t <= epsilon` (i.e. `ceil(d / epsilon)`), floored
/// at 1 so constants still get one sample.
fn sampling_set_size(d: u32, epsilon: f64) -> u64 {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must be in (0, 1)");
    let raw = d as f64 / epsilon;
    if raw >= u64::MAX as f64 {
        return u64::MAX;
    }
    let t = raw as u64;
    let t = if (t as f64) < raw { t + 1 } else { t };
    t.max(1)
}

impl PitEngine {
    pub fn schwartz_zippel(epsilon: f64, seed: u64) -> Self {
        PitEngine::SchwartzZippel {
            epsilon,
            rng: SeededRng::new(seed),
        }
    }

    pub fn schwartz_zippel_with_rng(epsilon: f64, rng: SeededRng) -> Self {
        PitEngine::SchwartzZippel { epsilon, rng }
    }

    pub fn hitting_set(hs: HittingSet) -> Self {
        PitEngine::HittingSet(hs)
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self, PitEngine::HittingSet(_))
    }

    /// Declares whether the oracle computes the zero polynomial.
    ///
    /// Schwartz-Zippel draws one point of `T^n` with
    /// `|T| = ceil(degree_bound / epsilon)`: a true zero is never
    /// misreported, a nonzero is misreported with probability at most
    /// `degree_bound / |T| <= epsilon`. The hitting-set engine is
    /// deterministic and exact whenever the set actually hits the oracle's
    /// class.
    pub fn is_zero(&mut self, o: &Oracle) -> Result<bool> {
        match self {
            PitEngine::SchwartzZippel { epsilon, rng } => {
                let t = sampling_set_size(o.degree_bound(), *epsilon);
                if let Some(p) = o.field().characteristic() {
                    if t > p {
                        return Err(Error::CannotMeetEpsilon {
                            needed: t,
                            field_size: p,
                        });
                    }
                }
                let point = o.field().sample_point(o.num_vars(), t, rng)?;
                Ok(o.eval(&point).is_zero())
            }
            PitEngine::HittingSet(hs) => {
                for point in &hs.points {
                    if !o.eval(point).is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Finds a point where a known-nonzero oracle does not vanish, by fixing one
/// variable at a time: each coordinate scans `degree_bound + 1` values and
/// keeps the first under which the restricted oracle is still nonzero
/// according to the engine.
///
/// The engine must be deterministic (hitting-set kind) and valid for the
/// restrictions of the oracle's class; `NotFound` signals that it is not, or
/// that the oracle was zero after all. The returned point is confirmed with
/// one extra direct evaluation.
pub fn find_nonzero_point(o: &Oracle, engine: &mut PitEngine) -> Result<Vec<FieldElement>> {
    if !engine.is_deterministic() {
        return Err(Error::NondeterministicEngine);
    }
    let field = o.field();
    let d = o.degree_bound() as u64;
    if let Some(p) = field.characteristic() {
        if p < d + 1 {
            return Err(Error::FieldTooSmall { needed: d + 1 });
        }
    }
    let scan_values: Vec<FieldElement> = (0..=d).map(|v| field.from_u64(v)).collect();
    let mut assignments: Vec<(usize, FieldElement)> = Vec::with_capacity(o.num_vars());
    for var in 0..o.num_vars() {
        let mut fixed = None;
        for value in &scan_values {
            assignments.push((var, value.clone()));
            let restricted = o.restricted(&assignments);
            assignments.pop();
            if !engine.is_zero(&restricted)? {
                fixed = Some(value.clone());
                break;
            }
        }
        match fixed {
            Some(value) => assignments.push((var, value)),
            None => return Err(Error::NotFound),
        }
    }
    let point: Vec<FieldElement> = assignments.into_iter().map(|(_, v)| v).collect();
    if o.eval(&point).is_zero() {
        return Err(Error::NotFound);
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_expression;
    use crate::poly::DensePoly;

    const F101: FieldSpec = FieldSpec::Prime(101);

    fn fe(v: i64) -> FieldElement {
        F101.from_i64(v)
    }

    fn oracle(expr: &str, n: usize) -> Oracle {
        Oracle::from_dense(
            &parse_expression(expr, n, F101)
                .unwrap()
                .to_dense()
                .unwrap(),
        )
    }

    #[test]
    fn zero_oracle_is_never_misreported() {
        let z = Oracle::zero(2, F101);
        for seed in 0..50 {
            let mut engine = PitEngine::schwartz_zippel(0.25, seed);
            assert!(engine.is_zero(&z).unwrap());
        }
        let c = parse_expression("x1*x2 - x2*x1", 2, F101).unwrap();
        let o = Oracle::from_circuit(&c, 2);
        let mut engine = PitEngine::schwartz_zippel(0.5, 3);
        assert!(engine.is_zero(&o).unwrap());
    }

    #[test]
    fn nonzero_detected_with_small_epsilon() {
        let big = FieldSpec::default_prime();
        let o = Oracle::from_dense(&DensePoly::variable(1, 1, big));
        for seed in 0..20 {
            let mut engine = PitEngine::schwartz_zippel(1.0 / (1u64 << 20) as f64, seed);
            assert!(!engine.is_zero(&o).unwrap());
        }
    }

    #[test]
    fn sz_uses_exactly_one_query() {
        let o = oracle("x1^2 + 1", 1);
        let mut engine = PitEngine::schwartz_zippel(0.05, 7);
        let before = o.queries();
        engine.is_zero(&o).unwrap();
        assert_eq!(o.queries() - before, 1);
    }

    #[test]
    fn epsilon_too_small_for_field() {
        let spec = FieldSpec::Prime(5);
        let p = DensePoly::variable(1, 1, spec);
        let o = Oracle::from_dense(&p);
        let mut engine = PitEngine::schwartz_zippel(0.1, 0);
        assert!(matches!(
            engine.is_zero(&o),
            Err(Error::CannotMeetEpsilon { .. })
        ));
    }

    #[test]
    fn empirical_false_zero_rate_respects_sz_bound() {
        // d / |T| = 3/30 = 0.1; the observed single-sample false-zero rate
        // over 10^4 trials stays within the bound plus sampling slack.
        let mut rng = SeededRng::new(2024);
        let f = DensePoly::random(3, 3, 0.6, F101, &mut rng);
        assert!(!f.is_zero());
        let o = Oracle::from_dense(&f);
        let trials = 10_000u32;
        let mut engine = PitEngine::schwartz_zippel(0.1, 555);
        let mut false_zero = 0u32;
        for _ in 0..trials {
            if engine.is_zero(&o).unwrap() {
                false_zero += 1;
            }
        }
        let rate = false_zero as f64 / trials as f64;
        assert!(rate <= 0.1 + 0.01, "rate {rate} exceeds the bound");
    }

    #[test]
    fn hitting_set_engine_is_deterministic() {
        let points = alloc::vec![
            alloc::vec![fe(1), fe(2)],
            alloc::vec![fe(3), fe(4)],
            alloc::vec![fe(5), fe(6)],
        ];
        let mut engine = PitEngine::hitting_set(HittingSet::user_supplied(points));
        assert!(engine.is_deterministic());
        let z = Oracle::zero(2, F101);
        assert!(engine.is_zero(&z).unwrap());
        let o = oracle("x1 - 1", 2);
        assert!(!engine.is_zero(&o).unwrap());
    }

    #[test]
    fn random_hitting_set_is_reproducible_and_certifies() {
        let mut rng_a = SeededRng::new(1);
        let mut rng_b = SeededRng::new(1);
        let hs_a = random_hitting_set(3, 4, 10, 48, F101, &mut rng_a);
        let hs_b = random_hitting_set(3, 4, 10, 48, F101, &mut rng_b);
        assert_eq!(hs_a, hs_b);
        assert!(random_hitting_set(2, 3, 5, 0, F101, &mut rng_a).is_empty());

        // size >= 4 * d * n certifies random nonzero dense polynomials.
        let mut rng = SeededRng::new(99);
        let mut engine = PitEngine::hitting_set(hs_a);
        for _ in 0..100 {
            let f = DensePoly::random(3, 4, 0.5, F101, &mut rng);
            if f.is_zero() {
                continue;
            }
            assert!(!engine.is_zero(&Oracle::from_dense(&f)).unwrap());
        }
    }

    #[test]
    fn find_nonzero_point_linear() {
        let o = oracle("x1", 1);
        let mut engine = PitEngine::hitting_set(HittingSet::user_supplied(alloc::vec![
            alloc::vec![fe(1)],
            alloc::vec![fe(2)],
        ]));
        let point = find_nonzero_point(&o, &mut engine).unwrap();
        assert_eq!(point, alloc::vec![fe(1)]);
    }

    #[test]
    fn find_nonzero_point_constant() {
        let o = oracle("5", 2);
        let mut engine = PitEngine::hitting_set(HittingSet::user_supplied(alloc::vec![
            alloc::vec![fe(0), fe(0)],
        ]));
        let point = find_nonzero_point(&o, &mut engine).unwrap();
        assert_eq!(o.eval(&point), fe(5));
    }

    #[test]
    fn find_nonzero_point_avoids_zero_set() {
        let mut rng = SeededRng::new(8);
        let hs = random_hitting_set(2, 2, 4, 24, F101, &mut rng);
        let o = oracle("(x1-1)*(x2-2)", 2);
        let mut engine = PitEngine::hitting_set(hs);
        let before_engine_budget = o.queries();
        let point = find_nonzero_point(&o, &mut engine).unwrap();
        assert!(!o.eval(&point).is_zero());
        // n * (d + 1) engine invocations at most, each costing |hs| queries,
        // plus the final confirmation queries.
        let n = 2u64;
        let d = 2u64;
        let budget = n * (d + 1) * 24 + 2;
        assert!(o.queries() - before_engine_budget <= budget);
    }

    #[test]
    fn find_nonzero_point_requires_deterministic_engine() {
        let o = oracle("x1", 1);
        let mut engine = PitEngine::schwartz_zippel(0.01, 0);
        assert_eq!(
            find_nonzero_point(&o, &mut engine),
            Err(Error::NondeterministicEngine)
        );
    }

    #[test]
    fn find_nonzero_point_reports_not_found() {
        let z = Oracle::zero(1, F101);
        let mut engine = PitEngine::hitting_set(HittingSet::user_supplied(alloc::vec![
            alloc::vec![fe(7)],
        ]));
        assert_eq!(find_nonzero_point(&z, &mut engine), Err(Error::NotFound));
    }
}
