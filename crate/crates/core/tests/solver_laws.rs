//! Structural laws tying the solver's answers to the explicit
//! representation: stabilizer identities, coset structure, derivative laws,
//! and preservation of the top homogeneous component.

use polyshift_core::poly::monomials_up_to;
use polyshift_core::solver::{
    find_shift, stabilizer_basis, SetConfig, ShiftStatus,
};
use polyshift_core::{DensePoly, FieldElement, FieldSpec, Matrix, Oracle, SeededRng};

const FIELD: FieldSpec = FieldSpec::default_prime();

fn cfg() -> SetConfig {
    SetConfig::default()
}

/// Stabilizer dimension by exact dense linear algebra: `n` minus the rank of
/// the matrix whose columns are the partial-derivative coefficient vectors.
fn dense_stabilizer_dim(f: &DensePoly) -> usize {
    let n = f.num_vars();
    let d = f.degree().unwrap_or(0);
    let basis = monomials_up_to(n, d);
    let derivs: Vec<Vec<FieldElement>> = (1..=n)
        .map(|j| f.partial_derivative(j).coefficient_vector(&basis))
        .collect();
    let rows: Vec<Vec<FieldElement>> = (0..basis.len())
        .map(|row| derivs.iter().map(|col| col[row].clone()).collect())
        .collect();
    let matrix = Matrix::from_rows(rows, f.field());
    n - matrix.rank()
}

#[test]
fn stabilizer_vectors_fix_the_polynomial_exactly() {
    let mut rng = SeededRng::new(101);
    for round in 0..25 {
        let n = 2 + (round % 3) as usize;
        let f = DensePoly::random(n, 3, 0.5, FIELD, &mut rng);
        let d = match f.degree() {
            Some(d) => d,
            None => continue,
        };
        let o = Oracle::from_dense(&f);
        let stab = stabilizer_basis(&o, d, &cfg()).unwrap();
        for v in &stab.basis {
            // Kernel definition: f(x + v) = f(x), coefficient for coefficient.
            assert_eq!(f.shift(v).unwrap(), f, "round {round}");
            // Higher-order vanishing: every directional derivative dies.
            for r in 1..=d {
                assert!(
                    f.directional_derivative(v, r).unwrap().is_zero(),
                    "round {round}, order {r}"
                );
            }
        }
        assert_eq!(stab.dim(), dense_stabilizer_dim(&f), "round {round}");
    }
}

#[test]
fn coset_law_stabilizers_of_equivalent_pairs_agree() {
    let mut rng = SeededRng::new(202);
    let mut nontrivial = 0;
    for round in 0..12 {
        let n = 2 + (round % 2) as usize;
        // Polynomials built from linear forms have nontrivial stabilizers.
        let mut form = DensePoly::zero(n, FIELD);
        for j in 1..=n {
            let c = FIELD.sample_uniform(50, &mut rng).unwrap();
            form = form.add(&DensePoly::variable(n, j, FIELD).scale(&c));
        }
        let f = form.mul(&form).add(&form);
        let c = FIELD.sample_point(n, 1000, &mut rng).unwrap();
        let g = f.shift(&c).unwrap();
        let fo = Oracle::from_dense(&f);
        let go = Oracle::from_dense(&g);
        let result = find_shift(&fo, &go, &cfg()).unwrap();
        let ShiftStatus::Shift(a) = result.status else {
            panic!("planted instance must solve, round {round}");
        };
        assert_eq!(f.shift(&a).unwrap(), g);
        let d = f.degree().unwrap();
        let sf = stabilizer_basis(&fo, d, &cfg()).unwrap();
        let sg = stabilizer_basis(&go, d, &cfg()).unwrap();
        assert!(sf.same_span(&sg, FIELD), "round {round}");
        if sf.dim() > 0 {
            nontrivial += 1;
            // a - c must lie in S_f.
            let diff: Vec<FieldElement> =
                a.iter().zip(&c).map(|(x, y)| x - y).collect();
            assert!(
                sf.contains(&diff, FIELD) || diff.iter().all(|e| e.is_zero()),
                "round {round}"
            );
        }
    }
    assert!(nontrivial >= 6, "stabilizers were almost always trivial");
}

#[test]
fn returned_shift_matches_planted_first_derivative() {
    let mut rng = SeededRng::new(303);
    for round in 0..15 {
        let n = 2 + (round % 3) as usize;
        let f = DensePoly::random(n, 4, 0.5, FIELD, &mut rng);
        if f.degree().unwrap_or(0) < 1 {
            continue;
        }
        let c = FIELD.sample_point(n, 1000, &mut rng).unwrap();
        let g = f.shift(&c).unwrap();
        let result = find_shift(&Oracle::from_dense(&f), &Oracle::from_dense(&g), &cfg()).unwrap();
        let ShiftStatus::Shift(a) = result.status else {
            panic!("planted instance must solve, round {round}");
        };
        // Both are witnesses, so the first-order derivatives along them
        // coincide as formal polynomials.
        assert_eq!(
            f.first_order_directional(&a).unwrap(),
            f.first_order_directional(&c).unwrap(),
            "round {round}"
        );
    }
}

#[test]
fn mismatched_top_components_always_fail() {
    let mut rng = SeededRng::new(404);
    for round in 0..10 {
        let n = 2;
        let f = DensePoly::random(n, 3, 0.6, FIELD, &mut rng);
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => continue,
        };
        // Perturb the top component only: shifts preserve H^d, so no shift
        // of f can reach g.
        let top = f.homogeneous_component(d);
        let g = f.add(&top); // doubles the top component
        assert_ne!(g.homogeneous_component(d), top);
        let result = find_shift(&Oracle::from_dense(&f), &Oracle::from_dense(&g), &cfg()).unwrap();
        assert_eq!(result.status, ShiftStatus::Fail, "round {round}");
    }
}
