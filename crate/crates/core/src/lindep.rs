//! Linear dependencies among black-box polynomials: decide whether a target
//! lies in the span of given generators and produce the coefficients, plus
//! the joint solver for systems of such identities sharing one unknown
//! vector.
//!
//! Three strategies are implemented. The randomized and white-box span
//! solvers follow the incremental determinant scan: generators are admitted
//! one at a time, each with a witness point keeping the evaluation matrix
//! nonsingular, and generators whose determinant test fails are treated as
//! dependent. The hitting-set solver evaluates everything on the set and
//! solves one exact linear system. The joint solver stacks random-evaluation
//! rows across equations and re-verifies its particular solution with PIT.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{solve_affine, AffineSubspace, Matrix};
use crate::oracle::Oracle;
use crate::pit::{find_nonzero_point, HittingSet, PitEngine};
use crate::rng::SeededRng;

/// Does `target` lie in the span of `generators`?
#[derive(Debug, Clone)]
pub struct SpanQuery {
    pub target: Oracle,
    pub generators: Vec<Oracle>,
}

/// One identity `target = sum_l b_l * generators[l]` over shared unknowns `b`.
#[derive(Debug, Clone)]
pub struct JointEquation {
    pub target: Oracle,
    pub generators: Vec<Oracle>,
}

/// A system of identities over one shared unknown vector of length
/// `unknown_dim`.
#[derive(Debug, Clone)]
pub struct JointLinearSystem {
    pub unknown_dim: usize,
    pub equations: Vec<JointEquation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinDepStatus {
    Solution(AffineSubspace),
    NoSolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinDepResult {
    pub status: LinDepStatus,
    /// Whether a final PIT confirmation ran and passed for the particular
    /// solution.
    pub verified: bool,
}

impl LinDepResult {
    pub fn solution(&self) -> Option<&AffineSubspace> {
        match &self.status {
            LinDepStatus::Solution(s) => Some(s),
            LinDepStatus::NoSolution => None,
        }
    }

    fn no_solution() -> Self {
        LinDepResult {
            status: LinDepStatus::NoSolution,
            verified: false,
        }
    }
}

/// Strategy handed to [`solve_joint`].
pub enum JointStrategy<'a> {
    Randomized { epsilon: f64, rng: &'a mut SeededRng },
    HittingSet(&'a HittingSet),
}

fn max_degree_bound(target: &Oracle, generators: &[Oracle]) -> u32 {
    generators
        .iter()
        .map(Oracle::degree_bound)
        .chain(core::iter::once(target.degree_bound()))
        .max()
        .unwrap_or(0)
        .max(1)
}

/// `floor(2 d k / epsilon)`, the sampling-set size for the randomized scan,
/// clamped to the field size. Shrinking the set below the lemma's size
/// degrades the error probability to roughly `2 d k / p`; the achievable
/// budget is the caller's concern.
pub(crate) fn scan_set_size(d: u32, k: usize, epsilon: f64, field: FieldSpec) -> u64 {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must be in (0, 1)");
    let raw = 2.0 * d as f64 * k.max(1) as f64 / epsilon;
    let size = if raw >= u64::MAX as f64 {
        u64::MAX
    } else {
        (raw as u64).max(d as u64 + 1)
    };
    match field.characteristic() {
        Some(p) => size.min(p),
        None => size,
    }
}

/// The determinant of the scan matrix `M` with rows `kept + [candidate]`,
/// numeric columns at `points` and a last symbolic column, expanded along
/// the symbolic column: a linear combination of the row oracles.
fn scan_determinant_oracle(
    rows: &[&Oracle],
    points: &[Vec<FieldElement>],
    field: FieldSpec,
) -> Result<Oracle> {
    let c = points.len();
    debug_assert_eq!(rows.len(), c + 1);
    if c == 0 {
        return Ok(rows[0].clone());
    }
    // Numeric part: rows[i] evaluated at each point.
    let numeric: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|o| points.iter().map(|p| o.eval(p)).collect())
        .collect();
    let mut coeffs = Vec::with_capacity(c + 1);
    for i in 0..=c {
        // Minor: all rows but i, all numeric columns.
        let minor_rows: Vec<Vec<FieldElement>> = (0..=c)
            .filter(|&r| r != i)
            .map(|r| numeric[r].clone())
            .collect();
        let minor = Matrix::from_rows(minor_rows, field).determinant();
        let sign_flip = (i + c) % 2 == 1;
        coeffs.push(if sign_flip { -&minor } else { minor });
    }
    let oracles: Vec<Oracle> = rows.iter().map(|&o| o.clone()).collect();
    Oracle::linear_combination(&coeffs, &oracles)
}

/// Outcome of the incremental scan: a maximal independent sub-family with
/// witness points, plus the indices that were discarded as dependent.
struct ScanOutcome {
    kept: Vec<usize>,
    points: Vec<Vec<FieldElement>>,
    discarded: Vec<usize>,
}

fn scan_randomized(
    generators: &[Oracle],
    set_size: u64,
    field: FieldSpec,
    n: usize,
    rng: &mut SeededRng,
) -> Result<ScanOutcome> {
    let mut kept: Vec<usize> = Vec::new();
    let mut points: Vec<Vec<FieldElement>> = Vec::new();
    let mut discarded: Vec<usize> = Vec::new();
    for (idx, candidate) in generators.iter().enumerate() {
        let candidate_point = field.sample_point(n, set_size, rng)?;
        let rows: Vec<&Oracle> = kept
            .iter()
            .map(|&i| &generators[i])
            .chain(core::iter::once(candidate))
            .collect();
        let det = scan_determinant_oracle(&rows, &points, field)?;
        if det.eval(&candidate_point).is_zero() {
            discarded.push(idx);
        } else {
            kept.push(idx);
            points.push(candidate_point);
        }
    }
    Ok(ScanOutcome {
        kept,
        points,
        discarded,
    })
}

fn scan_white_box(
    generators: &[Oracle],
    field: FieldSpec,
    engine: &mut PitEngine,
) -> Result<ScanOutcome> {
    let mut kept: Vec<usize> = Vec::new();
    let mut points: Vec<Vec<FieldElement>> = Vec::new();
    let mut discarded: Vec<usize> = Vec::new();
    for (idx, candidate) in generators.iter().enumerate() {
        let rows: Vec<&Oracle> = kept
            .iter()
            .map(|&i| &generators[i])
            .chain(core::iter::once(candidate))
            .collect();
        let det = scan_determinant_oracle(&rows, &points, field)?;
        if engine.is_zero(&det)? {
            discarded.push(idx);
        } else {
            kept.push(idx);
            points.push(find_nonzero_point(&det, engine)?);
        }
    }
    Ok(ScanOutcome {
        kept,
        points,
        discarded,
    })
}

/// Shared tail of the scan-based span solvers: solve the full-rank system
/// over the kept generators, reconstruct directions for the discarded ones,
/// and confirm the combination with the supplied zero test.
fn assemble_span_solution(
    query: &SpanQuery,
    outcome: &ScanOutcome,
    field: FieldSpec,
    mut confirm: impl FnMut(&Oracle) -> Result<bool>,
) -> Result<LinDepResult> {
    let k = query.generators.len();
    let r = outcome.kept.len();
    let mut coeffs = vec![field.zero(); k];
    if r > 0 {
        // H[j][i] = h_{kept[i]}(a_j) is full rank by construction.
        let h = Matrix::from_rows(
            outcome
                .points
                .iter()
                .map(|p| {
                    outcome
                        .kept
                        .iter()
                        .map(|&i| query.generators[i].eval(p))
                        .collect()
                })
                .collect(),
            field,
        );
        let rhs: Vec<FieldElement> =
            outcome.points.iter().map(|p| query.target.eval(p)).collect();
        let Some(sol) = solve_affine(&h, &rhs) else {
            return Ok(LinDepResult::no_solution());
        };
        debug_assert!(sol.basis.is_empty());
        for (slot, value) in outcome.kept.iter().zip(sol.point) {
            coeffs[*slot] = value;
        }
    }
    // Confirm target = sum coeffs * generators with one zero test.
    let mut all = Vec::with_capacity(k + 1);
    let mut weights = Vec::with_capacity(k + 1);
    all.push(query.target.clone());
    weights.push(field.one());
    for (o, c) in query.generators.iter().zip(&coeffs) {
        all.push(o.clone());
        weights.push(-c);
    }
    let difference = Oracle::linear_combination(&weights, &all)?;
    if !confirm(&difference)? {
        return Ok(LinDepResult::no_solution());
    }
    // Each discarded generator contributes one ambiguity direction: writing
    // h_l = sum gamma_i h_kept[i] (solved on the witness points) gives the
    // relation e_l - sum gamma_i e_kept[i] in the solution set's span.
    let mut basis = Vec::new();
    for &l in &outcome.discarded {
        let mut direction = vec![field.zero(); k];
        direction[l] = field.one();
        if r > 0 {
            let h = Matrix::from_rows(
                outcome
                    .points
                    .iter()
                    .map(|p| {
                        outcome
                            .kept
                            .iter()
                            .map(|&i| query.generators[i].eval(p))
                            .collect()
                    })
                    .collect(),
                field,
            );
            let rhs: Vec<FieldElement> = outcome
                .points
                .iter()
                .map(|p| query.generators[l].eval(p))
                .collect();
            let Some(gamma) = solve_affine(&h, &rhs) else {
                continue;
            };
            for (slot, value) in outcome.kept.iter().zip(gamma.point) {
                direction[*slot] = -&value;
            }
        }
        // Keep only directions the zero test actually confirms as relations.
        let relation = Oracle::linear_combination(
            &direction,
            &query.generators.iter().cloned().collect::<Vec<_>>(),
        )?;
        if confirm(&relation)? {
            basis.push(direction);
        }
    }
    Ok(LinDepResult {
        status: LinDepStatus::Solution(AffineSubspace {
            ambient_dim: k,
            point: coeffs,
            basis,
        }),
        verified: true,
    })
}

/// Randomized span solver: incremental determinant scan with points sampled
/// from `S^n`, `|S| = floor(2 d k / epsilon)`, then one Schwartz-Zippel
/// confirmation. Two-sided error at most `epsilon` overall.
pub fn solve_span_randomized(
    query: &SpanQuery,
    epsilon: f64,
    rng: &mut SeededRng,
) -> Result<LinDepResult> {
    let field = query.target.field();
    let n = query.target.num_vars();
    let k = query.generators.len();
    let d = max_degree_bound(&query.target, &query.generators);
    let set_size = scan_set_size(d, k, epsilon, field);
    let outcome = scan_randomized(&query.generators, set_size, field, n, rng)?;
    let mut sample_rng = rng.fork();
    assemble_span_solution(query, &outcome, field, |difference| {
        let point = field.sample_point(n, set_size, &mut sample_rng)?;
        Ok(difference.eval(&point).is_zero())
    })
}

/// Hitting-set span solver: evaluates every polynomial on the set and solves
/// the evaluation system exactly. Deterministic given the set; exact
/// whenever the set hits the span of `target` and the generators.
pub fn solve_span_hitting_set(query: &SpanQuery, hs: &HittingSet) -> Result<LinDepResult> {
    let field = query.target.field();
    let k = query.generators.len();
    let rows: Vec<Vec<FieldElement>> = hs
        .points
        .iter()
        .map(|p| query.generators.iter().map(|h| h.eval(p)).collect())
        .collect();
    let rhs: Vec<FieldElement> = hs.points.iter().map(|p| query.target.eval(p)).collect();
    let matrix = if rows.is_empty() {
        Matrix::zeros(0, k, field)
    } else {
        Matrix::from_rows(rows, field)
    };
    match solve_affine(&matrix, &rhs) {
        Some(sol) => Ok(LinDepResult {
            status: LinDepStatus::Solution(sol),
            verified: true,
        }),
        None => Ok(LinDepResult::no_solution()),
    }
}

/// White-box-style span solver: the same determinant scan, but dependence is
/// decided by the supplied deterministic PIT engine and witness points come
/// from the decision-to-search reduction. Deterministic; exact whenever the
/// engine is valid for linear combinations of the inputs.
pub fn solve_span_white_box(query: &SpanQuery, engine: &mut PitEngine) -> Result<LinDepResult> {
    if !engine.is_deterministic() {
        return Err(Error::NondeterministicEngine);
    }
    let field = query.target.field();
    let outcome = scan_white_box(&query.generators, field, engine)?;
    assemble_span_solution(query, &outcome, field, |difference| engine.is_zero(difference))
}

/// Joint solver for [`JointLinearSystem`]: stacks evaluation rows of every
/// equation at shared sample points into one exact linear system over the
/// unknowns, then verifies the particular solution per equation with the
/// strategy's PIT. With the randomized strategy the sample points are
/// `unknown_dim + 20` draws from `S^n` and a failed verification triggers
/// one resample; with a hitting set, every point of the set is used and the
/// rows themselves certify the solution.
pub fn solve_joint(
    system: &JointLinearSystem,
    strategy: JointStrategy<'_>,
) -> Result<LinDepResult> {
    for eq in &system.equations {
        assert_eq!(
            eq.generators.len(),
            system.unknown_dim,
            "every equation must have one generator per unknown"
        );
    }
    match strategy {
        JointStrategy::HittingSet(hs) => {
            let Some(first) = system.equations.first() else {
                return Ok(trivial_full_space(system.unknown_dim));
            };
            let field = first.target.field();
            solve_joint_at_points(system, &hs.points, field)
        }
        JointStrategy::Randomized { epsilon, rng } => {
            let Some(first) = system.equations.first() else {
                return Ok(trivial_full_space(system.unknown_dim));
            };
            let field = first.target.field();
            let n = first.target.num_vars();
            let d = system
                .equations
                .iter()
                .map(|eq| max_degree_bound(&eq.target, &eq.generators))
                .max()
                .unwrap_or(1);
            let set_size = scan_set_size(d, system.unknown_dim, epsilon, field);
            let m = system.unknown_dim + 20;
            for _attempt in 0..2 {
                let points: Vec<Vec<FieldElement>> = (0..m)
                    .map(|_| field.sample_point(n, set_size, rng))
                    .collect::<Result<_>>()?;
                let result = solve_joint_at_points(system, &points, field)?;
                let Some(sol) = result.solution() else {
                    return Ok(result);
                };
                if verify_joint_solution(system, &sol.point, epsilon, set_size, rng)? {
                    return Ok(result);
                }
                // Verification failed: resample once, then give up.
            }
            Ok(LinDepResult::no_solution())
        }
    }
}

/// With no equations every assignment works: the zero point plus the
/// standard basis.
fn trivial_full_space(unknown_dim: usize) -> LinDepResult {
    // No oracles exist to take a field from, so this degenerate case only
    // makes sense for dimension zero.
    debug_assert_eq!(unknown_dim, 0, "empty systems must have no unknowns");
    LinDepResult {
        status: LinDepStatus::Solution(AffineSubspace {
            ambient_dim: unknown_dim,
            point: Vec::new(),
            basis: Vec::new(),
        }),
        verified: true,
    }
}

fn solve_joint_at_points(
    system: &JointLinearSystem,
    points: &[Vec<FieldElement>],
    field: FieldSpec,
) -> Result<LinDepResult> {
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let mut rhs: Vec<FieldElement> = Vec::new();
    for eq in &system.equations {
        for point in points {
            rows.push(eq.generators.iter().map(|o| o.eval(point)).collect());
            rhs.push(eq.target.eval(point));
        }
    }
    let matrix = if rows.is_empty() {
        Matrix::zeros(0, system.unknown_dim, field)
    } else {
        Matrix::from_rows(rows, field)
    };
    match solve_affine(&matrix, &rhs) {
        Some(sol) => Ok(LinDepResult {
            status: LinDepStatus::Solution(sol),
            verified: true,
        }),
        None => Ok(LinDepResult::no_solution()),
    }
}

fn verify_joint_solution(
    system: &JointLinearSystem,
    solution: &[FieldElement],
    epsilon: f64,
    set_size: u64,
    rng: &mut SeededRng,
) -> Result<bool> {
    let _ = epsilon;
    for eq in &system.equations {
        let field = eq.target.field();
        let mut oracles = Vec::with_capacity(system.unknown_dim + 1);
        let mut weights = Vec::with_capacity(system.unknown_dim + 1);
        oracles.push(eq.target.clone());
        weights.push(field.one());
        for (o, b) in eq.generators.iter().zip(solution) {
            oracles.push(o.clone());
            weights.push(-b);
        }
        let difference = Oracle::linear_combination(&weights, &oracles)?;
        let point = field.sample_point(eq.target.num_vars(), set_size, rng)?;
        if !difference.eval(&point).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
