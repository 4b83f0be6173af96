//! Shift-equivalence testing: given black-box access to `f` and `g`, decide
//! whether some vector `a` satisfies `f(x + a) = g(x)` and produce one.
//!
//! The main algorithm walks the homogeneous components from the top degree
//! down, at step `k` solving the joint linear system that matches components
//! `d-k..=d` of `g` against the Taylor expansion of `f(x + b)` in the
//! unknown shift `b`, where all higher-order derivative terms are pinned at
//! the previous iterate. A solution at every step yields a candidate that a
//! final identity test accepts or rejects, so a returned shift is never
//! wrong beyond the PIT error budget.
//!
//! The alternative algorithm instead eliminates redundant variables of the
//! top component through an invertible change of coordinates, solves a
//! uniquely-determined linear system for the essential prefix of the shift,
//! strips the top component and recurses on the remainder at degree `d - 1`.
//!
//! Every operation takes a [`SetConfig`] carrying the total error budget
//! (split as `epsilon / d^2` per randomized sub-call), the PIT strategy and
//! the seed; identical configs and inputs reproduce identical results.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::field::{FactorialTable, FieldElement, FieldSpec};
use crate::lindep::{solve_joint, JointEquation, JointLinearSystem, JointStrategy, LinDepResult};
use crate::linalg::{AffineSubspace, Matrix};
use crate::oracle::Oracle;
use crate::pit::{HittingSet, PitEngine};
use crate::rng::SeededRng;

/// Which machinery backs the randomized steps.
#[derive(Debug, Clone)]
pub enum Strategy {
    /// Schwartz-Zippel everywhere, with per-step budgets from the config.
    Randomized,
    /// A caller-supplied hitting set drives both identity tests and linear
    /// solving; deterministic, exact when the set hits the relevant spans.
    HittingSet(HittingSet),
    /// A caller-supplied PIT engine is used for every identity test.
    WhiteBox(PitEngine),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Main,
    Alt,
}

#[derive(Debug, Clone)]
pub struct SetConfig {
    /// Total error budget over the whole run.
    pub epsilon: f64,
    pub strategy: Strategy,
    pub seed: u64,
    pub algorithm: Algorithm,
    /// When both oracles carry a dense backing, exactly re-check any
    /// returned shift against it and downgrade to FAIL on mismatch.
    pub verify_with_dense: bool,
}

impl Default for SetConfig {
    fn default() -> Self {
        SetConfig {
            epsilon: 1e-9,
            strategy: Strategy::Randomized,
            seed: 0,
            algorithm: Algorithm::Main,
            verify_with_dense: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftStatus {
    Shift(Vec<FieldElement>),
    Fail,
}

impl ShiftStatus {
    pub fn shift(&self) -> Option<&[FieldElement]> {
        match self {
            ShiftStatus::Shift(a) => Some(a),
            ShiftStatus::Fail => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShiftResult {
    pub status: ShiftStatus,
    pub stabilizer: Option<AffineSubspace>,
    pub coset: Option<AffineSubspace>,
    /// Base-oracle queries spent by this call (both inputs combined).
    pub queries_used: u64,
}

/// Per-run state: the cloned strategy plus the seeded RNG stream.
struct Session {
    epsilon: f64,
    field: FieldSpec,
    strategy: Strategy,
    rng: SeededRng,
}

impl Session {
    fn new(cfg: &SetConfig, field: FieldSpec) -> Self {
        Session {
            epsilon: cfg.epsilon,
            field,
            strategy: cfg.strategy.clone(),
            rng: SeededRng::new(cfg.seed),
        }
    }

    /// `epsilon / d^2`: the per-call budget from the union-bound analysis.
    /// Over a field too small to host the sampling set that budget demands,
    /// the budget degrades to the achievable `d / p` per call (the final
    /// identity test still gates every answer).
    fn step_epsilon(&self, d: u32) -> f64 {
        let dd = d.max(1) as f64;
        achievable_epsilon(self.field, d, self.epsilon / (dd * dd))
    }

    fn engine(&mut self, d: u32) -> PitEngine {
        match &self.strategy {
            Strategy::Randomized => {
                PitEngine::schwartz_zippel_with_rng(self.step_epsilon(d), self.rng.fork())
            }
            Strategy::HittingSet(hs) => PitEngine::hitting_set(hs.clone()),
            Strategy::WhiteBox(engine) => match engine {
                PitEngine::HittingSet(_) => engine.clone(),
                PitEngine::SchwartzZippel { epsilon, .. } => {
                    PitEngine::schwartz_zippel_with_rng(*epsilon, self.rng.fork())
                }
            },
        }
    }

    fn solve(&mut self, system: &JointLinearSystem, d: u32) -> Result<LinDepResult> {
        let epsilon = self.step_epsilon(d);
        match &self.strategy {
            Strategy::Randomized => solve_joint(
                system,
                JointStrategy::Randomized {
                    epsilon,
                    rng: &mut self.rng,
                },
            ),
            Strategy::HittingSet(hs) => solve_joint(system, JointStrategy::HittingSet(hs)),
            Strategy::WhiteBox(engine) => match engine {
                PitEngine::HittingSet(hs) => solve_joint(system, JointStrategy::HittingSet(hs)),
                PitEngine::SchwartzZippel { epsilon, .. } => {
                    let epsilon = *epsilon;
                    solve_joint(
                        system,
                        JointStrategy::Randomized {
                            epsilon,
                            rng: &mut self.rng,
                        },
                    )
                }
            },
        }
    }

    /// Sample points for rank estimation: the hitting set when one is
    /// configured, otherwise `count` random draws.
    fn probe_points(
        &mut self,
        n: usize,
        d: u32,
        count: usize,
        field: FieldSpec,
    ) -> Result<Vec<Vec<FieldElement>>> {
        match &self.strategy {
            Strategy::HittingSet(hs) => Ok(hs.points.clone()),
            Strategy::WhiteBox(PitEngine::HittingSet(hs)) => Ok(hs.points.clone()),
            _ => {
                let epsilon = self.step_epsilon(d);
                let set_size = crate::lindep::scan_set_size(d, n, epsilon, field);
                (0..count)
                    .map(|_| field.sample_point(n, set_size, &mut self.rng))
                    .collect()
            }
        }
    }
}

/// The requested error budget, raised to the floor the field can actually
/// support: a degree-`d` Schwartz-Zippel test over `F_p` cannot do better
/// than one sample from the whole field, error `d / p`.
pub fn achievable_epsilon(field: FieldSpec, d: u32, requested: f64) -> f64 {
    match field.characteristic() {
        Some(p) => {
            let floor = d.max(1) as f64 / p as f64 * 1.000_001;
            if requested < floor {
                floor
            } else {
                requested
            }
        }
        None => requested,
    }
}

/// Memoize base oracles so the interpolation batteries reuse evaluations.
/// Results are identical with or without the cache.
fn accel(o: &Oracle) -> Oracle {
    #[cfg(feature = "std")]
    {
        o.memoized()
    }
    #[cfg(not(feature = "std"))]
    {
        o.clone()
    }
}

fn zeros(n: usize, field: FieldSpec) -> Vec<FieldElement> {
    vec![field.zero(); n]
}

fn unit_directions(n: usize, field: FieldSpec) -> Vec<Vec<FieldElement>> {
    (0..n)
        .map(|i| {
            let mut e = zeros(n, field);
            e[i] = field.one();
            e
        })
        .collect()
}

fn difference(a: &Oracle, b: &Oracle) -> Result<Oracle> {
    let field = a.field();
    Oracle::linear_combination(&[field.one(), -&field.one()], &[a.clone(), b.clone()])
}

/// Exact degree of the polynomial behind `o`: the largest `i <= d_bound`
/// whose homogeneous component is not identically zero per the configured
/// PIT; `None` when every component vanishes.
pub fn exact_degree(o: &Oracle, d_bound: u32, cfg: &SetConfig) -> Result<Option<u32>> {
    let mut session = Session::new(cfg, o.field());
    exact_degree_inner(&accel(o), d_bound, &mut session)
}

fn exact_degree_inner(o: &Oracle, d_bound: u32, session: &mut Session) -> Result<Option<u32>> {
    let bounded = o.with_degree_bound(d_bound);
    let mut engine = session.engine(d_bound);
    for i in (0..=d_bound).rev() {
        let component = bounded.homogeneous(i, None)?;
        if !engine.is_zero(&component)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// One identity test: `f(x + a) = g(x)` per the supplied engine.
pub fn verify_shift(
    f: &Oracle,
    g: &Oracle,
    a: &[FieldElement],
    engine: &mut PitEngine,
) -> Result<bool> {
    engine.is_zero(&difference(&f.shifted(a)?, g)?)
}

/// Runs the configured algorithm.
pub fn solve(f: &Oracle, g: &Oracle, cfg: &SetConfig) -> Result<ShiftResult> {
    match cfg.algorithm {
        Algorithm::Main => find_shift(f, g, cfg),
        Algorithm::Alt => find_shift_alt(f, g, cfg),
    }
}

/// The iterative algorithm: preprocessing (exact degree of `f`), `d` rounds
/// of joint linear solving, and one final identity test of the candidate.
pub fn find_shift(f: &Oracle, g: &Oracle, cfg: &SetConfig) -> Result<ShiftResult> {
    check_inputs(f, g)?;
    let mut session = Session::new(cfg, f.field());
    let start = f.queries() + g.queries();
    let fw = accel(f);
    let gw = accel(g);
    let mut status = find_shift_inner(&fw, &gw, &mut session)?;
    if cfg.verify_with_dense {
        status = dense_downgrade(status, f, g);
    }
    Ok(ShiftResult {
        status,
        stabilizer: None,
        coset: None,
        queries_used: f.queries() + g.queries() - start,
    })
}

fn check_inputs(f: &Oracle, g: &Oracle) -> Result<()> {
    assert_eq!(f.num_vars(), g.num_vars(), "variable counts differ");
    assert_eq!(f.field(), g.field(), "fields differ");
    // Standing assumption: characteristic above the degree in play.
    f.field()
        .require_char_above(f.degree_bound().max(g.degree_bound()) as u64)
}

/// Exact re-check of a candidate against dense backings, when both exist.
/// Soundness becomes unconditional: a surviving shift satisfies
/// `f(x + a) = g` coefficient for coefficient.
fn dense_downgrade(status: ShiftStatus, f: &Oracle, g: &Oracle) -> ShiftStatus {
    let ShiftStatus::Shift(ref a) = status else {
        return status;
    };
    let (Some(fd), Some(gd)) = (f.dense_backing(), g.dense_backing()) else {
        return status;
    };
    match fd.shift(a) {
        Ok(shifted) if &shifted == gd => status,
        _ => ShiftStatus::Fail,
    }
}

fn find_shift_inner(f: &Oracle, g: &Oracle, session: &mut Session) -> Result<ShiftStatus> {
    let n = f.num_vars();
    let field = f.field();
    let Some(d) = exact_degree_inner(f, f.degree_bound(), session)? else {
        // f is (whp) the zero polynomial, which is shift-equivalent only to
        // the zero polynomial, by the zero shift.
        let mut engine = session.engine(g.degree_bound());
        return Ok(if engine.is_zero(g)? {
            ShiftStatus::Shift(zeros(n, field))
        } else {
            ShiftStatus::Fail
        });
    };
    let table = FactorialTable::build(field, d)?;
    let fh = f.with_degree_bound(d);
    let gh = g.with_degree_bound(d);
    let units = unit_directions(n, field);
    let mut a = zeros(n, field);
    for k in 1..=d {
        let mut equations = Vec::with_capacity(k as usize + 1);
        for i in (d - k)..=d {
            // target_i = H^i(g) - H^i(f) - sum_{j >= i+2} f_j^{(j-i)}(a, x) / (j-i)!
            let mut oracles = vec![gh.homogeneous(i, None)?, fh.homogeneous(i, None)?];
            let mut coeffs = vec![field.one(), -&field.one()];
            for j in (i + 2)..=d {
                oracles.push(fh.directional_derivative(j, j - i, &a)?);
                coeffs.push(-table.inv_factorial(j - i));
            }
            let target = Oracle::linear_combination(&coeffs, &oracles)?;
            // Unknown side: f_{i+1}^{(1)}(b, x) = sum_l b_l f_{i+1}^{(1)}(e_l, x);
            // at i = d there is no component d+1, which pins the targets to zero.
            let generators = if i < d {
                units
                    .iter()
                    .map(|e| fh.directional_derivative(i + 1, 1, e))
                    .collect::<Result<Vec<_>>>()?
            } else {
                (0..n).map(|_| Oracle::zero(n, field)).collect()
            };
            equations.push(JointEquation { target, generators });
        }
        let system = JointLinearSystem {
            unknown_dim: n,
            equations,
        };
        let result = session.solve(&system, d)?;
        match result.solution() {
            Some(sol) => a = sol.point.clone(),
            None => return Ok(ShiftStatus::Fail),
        }
    }
    // Final identity test on f(x + a) - g(x), at the callers' full bounds.
    let full_f = f.with_degree_bound(f.degree_bound().max(g.degree_bound()));
    let diff = difference(&full_f.shifted(&a)?, g)?;
    let mut engine = session.engine(f.degree_bound().max(g.degree_bound()));
    Ok(if engine.is_zero(&diff)? {
        ShiftStatus::Shift(a)
    } else {
        ShiftStatus::Fail
    })
}

/// Basis of the stabilizer `S_f = {a : f(x + a) = f(x)}`, found by solving
/// `f_i^{(1)}(b, x) = 0` jointly over all component degrees `i = 1..=d` and
/// keeping the nullspace directions that an identity test confirms.
pub fn stabilizer_basis(f: &Oracle, d: u32, cfg: &SetConfig) -> Result<AffineSubspace> {
    let mut session = Session::new(cfg, f.field());
    stabilizer_inner(&accel(f), d, &mut session)
}

fn stabilizer_inner(f: &Oracle, d: u32, session: &mut Session) -> Result<AffineSubspace> {
    let n = f.num_vars();
    let field = f.field();
    let candidate_basis = if d == 0 {
        // Constants are fixed by every shift.
        unit_directions(n, field)
    } else {
        let fh = f.with_degree_bound(d);
        let units = unit_directions(n, field);
        let equations = (1..=d)
            .map(|i| {
                Ok(JointEquation {
                    target: Oracle::zero(n, field),
                    generators: units
                        .iter()
                        .map(|e| fh.directional_derivative(i, 1, e))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let system = JointLinearSystem {
            unknown_dim: n,
            equations,
        };
        let result = session.solve(&system, d)?;
        result
            .solution()
            .expect("a homogeneous system is always consistent")
            .basis
            .clone()
    };
    // Keep only directions that the identity test certifies as stabilizing.
    let mut engine = session.engine(d);
    let mut basis = Vec::with_capacity(candidate_basis.len());
    for v in candidate_basis {
        if engine.is_zero(&difference(&f.shifted(&v)?, f)?)? {
            basis.push(v);
        }
    }
    Ok(AffineSubspace {
        ambient_dim: n,
        point: zeros(n, field),
        basis,
    })
}

/// The full solution coset `S_{f,g} = a + S_f`, or `None` when the
/// configured algorithm reports the pair inequivalent.
pub fn shift_space(f: &Oracle, g: &Oracle, cfg: &SetConfig) -> Result<Option<AffineSubspace>> {
    let result = solve(f, g, cfg)?;
    let ShiftStatus::Shift(a) = result.status else {
        return Ok(None);
    };
    let mut session = Session::new(cfg, f.field());
    let d = exact_degree_inner(&accel(f), f.degree_bound(), &mut session)?.unwrap_or(0);
    let stabilizer = stabilizer_basis(f, d, cfg)?;
    Ok(Some(AffineSubspace {
        ambient_dim: f.num_vars(),
        point: a,
        basis: stabilizer.basis,
    }))
}

/// Essential-variable reduction of the top component: returns the essential
/// count `m` and an invertible matrix `A` such that `H^d(f(Ax))` depends
/// only on the first `m` variables. Columns `m+1..n` of `A` span the
/// sampled right-nullspace of the gradient map of `H^d(f)`; the first `m`
/// columns are a standard-basis completion.
pub fn essential_variables(f: &Oracle, d: u32, cfg: &SetConfig) -> Result<(usize, Matrix)> {
    let mut session = Session::new(cfg, f.field());
    essential_variables_inner(&accel(f), d, &mut session)
}

fn essential_variables_inner(
    f: &Oracle,
    d: u32,
    session: &mut Session,
) -> Result<(usize, Matrix)> {
    let n = f.num_vars();
    let field = f.field();
    let fh = f.with_degree_bound(d);
    let units = unit_directions(n, field);
    let gradient: Vec<Oracle> = units
        .iter()
        .map(|e| fh.directional_derivative(d, 1, e))
        .collect::<Result<_>>()?;
    let points = session.probe_points(n, d, n + 20, field)?;
    let sampled = Matrix::from_rows(
        points
            .iter()
            .map(|p| gradient.iter().map(|o| o.eval(p)).collect())
            .collect(),
        field,
    );
    let nullspace = sampled.nullspace();
    let m = n - nullspace.len();
    // Complete the nullspace columns to an invertible matrix with standard
    // basis vectors, chosen greedily.
    let mut columns: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    for e in &units {
        if columns.len() == m {
            break;
        }
        let mut trial: Vec<Vec<FieldElement>> = columns.clone();
        trial.push(e.clone());
        trial.extend(nullspace.iter().cloned());
        if Matrix::from_rows(trial, field).rank() == columns.len() + 1 + nullspace.len() {
            columns.push(e.clone());
        }
    }
    columns.extend(nullspace);
    debug_assert_eq!(columns.len(), n);
    let mut a = Matrix::zeros(n, n, field);
    for (j, col) in columns.iter().enumerate() {
        for i in 0..n {
            a.set(i, j, col[i].clone());
        }
    }
    debug_assert_eq!(a.rank(), n, "change of basis must be invertible");
    Ok((m, a))
}

/// The recursive algorithm: rotate away redundant variables of the top
/// component, solve for the uniquely-determined essential prefix of the
/// shift, subtract the top component and recurse at degree `d - 1`.
pub fn find_shift_alt(f: &Oracle, g: &Oracle, cfg: &SetConfig) -> Result<ShiftResult> {
    check_inputs(f, g)?;
    let mut session = Session::new(cfg, f.field());
    let start = f.queries() + g.queries();
    let fw = accel(f);
    let gw = accel(g);
    let mut status = match alt_recurse(&fw, &gw, fw.degree_bound(), &mut session)? {
        Some(a) => {
            // The per-level tests ran at reduced bounds; re-check the final
            // candidate at the callers' full bounds.
            let bound = f.degree_bound().max(g.degree_bound());
            let mut engine = session.engine(bound);
            let diff = difference(&fw.with_degree_bound(bound).shifted(&a)?, &gw)?;
            if engine.is_zero(&diff)? {
                ShiftStatus::Shift(a)
            } else {
                ShiftStatus::Fail
            }
        }
        None => ShiftStatus::Fail,
    };
    if cfg.verify_with_dense {
        status = dense_downgrade(status, f, g);
    }
    Ok(ShiftResult {
        status,
        stabilizer: None,
        coset: None,
        queries_used: f.queries() + g.queries() - start,
    })
}

/// Returns a shift valid in the coordinates of `f` and `g`, or `None` for
/// FAIL. The degree argument is an upper bound; each level re-derives the
/// exact degree.
fn alt_recurse(
    f: &Oracle,
    g: &Oracle,
    d_bound: u32,
    session: &mut Session,
) -> Result<Option<Vec<FieldElement>>> {
    let n = f.num_vars();
    let field = f.field();
    let Some(d) = exact_degree_inner(f, d_bound, session)? else {
        let mut engine = session.engine(d_bound);
        return Ok(if engine.is_zero(&g.with_degree_bound(d_bound))? {
            Some(zeros(n, field))
        } else {
            None
        });
    };
    if d == 0 {
        // Base case: compare constants.
        let origin = zeros(n, field);
        return Ok(if f.eval(&origin) == g.eval(&origin) {
            Some(origin)
        } else {
            None
        });
    }
    let fd = f.with_degree_bound(d);
    let (m, a_mat) = essential_variables_inner(&fd, d, session)?;
    let origin = zeros(n, field);
    let f_rot = accel(&fd.affine_compose(&a_mat, &origin)?);
    let g_rot = accel(&g.with_degree_bound(d).affine_compose(&a_mat, &origin)?);
    // Solve H^d(G) = H^d(F) and
    // H^{d-1}(G) = H^{d-1}(F) + sum_{k<=m} b_k dH^d(F)/dx_k, with the
    // remaining coordinates of b constrained to zero.
    let units = unit_directions(n, field);
    let eq_top = JointEquation {
        target: difference(&g_rot.homogeneous(d, None)?, &f_rot.homogeneous(d, None)?)?,
        generators: (0..m).map(|_| Oracle::zero(n, field)).collect(),
    };
    let eq_next = JointEquation {
        target: difference(
            &g_rot.homogeneous(d - 1, None)?,
            &f_rot.homogeneous(d - 1, None)?,
        )?,
        generators: units[..m]
            .iter()
            .map(|e| f_rot.directional_derivative(d, 1, e))
            .collect::<Result<Vec<_>>>()?,
    };
    let system = JointLinearSystem {
        unknown_dim: m,
        equations: vec![eq_top, eq_next],
    };
    let result = session.solve(&system, d)?;
    let Some(sol) = result.solution() else {
        return Ok(None);
    };
    let mut shift_rot = zeros(n, field);
    for (slot, value) in shift_rot.iter_mut().take(m).zip(sol.point.iter()) {
        *slot = value.clone();
    }
    // Strip the (now matched) top component and recurse one degree down.
    let f_shifted = f_rot.shifted(&shift_rot)?;
    let top = f_shifted.homogeneous(d, None)?;
    let f_next = accel(&difference(&f_shifted, &top)?.with_degree_bound(d - 1));
    let g_next = accel(&difference(&g_rot, &top)?.with_degree_bound(d - 1));
    let Some(tail) = alt_recurse(&f_next, &g_next, d - 1, session)? else {
        return Ok(None);
    };
    // The recursion must not disturb the essential prefix.
    if tail[..m].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    for k in m..n {
        shift_rot[k] = tail[k].clone();
    }
    let diff = difference(&f_rot.shifted(&shift_rot)?, &g_rot)?;
    let mut engine = session.engine(d);
    if !engine.is_zero(&diff)? {
        return Ok(None);
    }
    // shift_rot solves F(x + s) = G(x) for F = f(Ax), G = g(Ax); in the
    // callers' coordinates the witness is A s.
    Ok(Some(a_mat.mul_vec(&shift_rot)))
}
