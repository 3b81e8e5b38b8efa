//! Seeded randomized checks of the solver laws: residual exactness, the
//! degree bound, layer-system structure, kernel counting, and agreement
//! between the structured solver and the brute-force route.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poldif::linalg;
use poldif::poly::{apply_operator, Polynomial};
use poldif::rational::rat_int;
use poldif::sample;
use poldif::solver::{self, LayerSystem};

#[test]
fn residual_zero_and_degree_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..60 {
        let arity = rng.gen_range(2..=3);
        let s = rng.gen_range(0..=2u32);
        let p = sample::random_with_zero_order(&mut rng, arity, s, s + 2);
        let q_degree = rng.gen_range(0..=3);
        let q = sample::random_polynomial(&mut rng, arity, q_degree, 0.4);

        let outcome = solver::solve_pde(&p, &q).unwrap();
        assert!(solver::verify(&p, &outcome.particular, &q).unwrap().is_zero());
        assert!(outcome.particular.degree() <= q.degree() + s as i32);
        assert_eq!(outcome.zero_order, s);
    }
}

#[test]
fn layer_system_rows_match_shifted_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..40 {
        let arity = rng.gen_range(2..=3);
        let n = rng.gen_range(0..=3u32);
        let m = rng.gen_range(0..=3u32);
        let p = sample::random_homogeneous(&mut rng, arity, n);
        let system = LayerSystem::new(&p, m).unwrap();

        for (i, alpha0) in system.row_index().iter().enumerate() {
            let shifted = &Polynomial::monomial(alpha0.clone(), rat_int(1)) * &p;
            for (j, beta) in system.col_index().iter().enumerate() {
                assert_eq!(
                    *system.matrix.get(i, j),
                    shifted.coeff(beta),
                    "row {alpha0:?}, column {beta:?}"
                );
            }
        }
    }
}

#[test]
fn layer_system_has_full_row_rank_and_sigma_free_columns() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..30 {
        let arity = rng.gen_range(2..=4);
        let n = rng.gen_range(0..=3u32);
        let m = rng.gen_range(0..=2u32);
        let p = sample::random_homogeneous(&mut rng, arity, n);
        let system = LayerSystem::new(&p, m).unwrap();

        let echelon = linalg::eliminate(&system.matrix);
        assert_eq!(echelon.rank, solver::dim_hom(m as i32, arity));
        assert_eq!(echelon.free_columns.len(), solver::sigma_free(n, m, arity));
    }
}

#[test]
fn kernel_basis_members_are_annihilated_and_counted() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..25 {
        let arity = rng.gen_range(2..=3);
        let s = rng.gen_range(0..=2u32);
        let p = sample::random_with_zero_order(&mut rng, arity, s, s + 2);
        let ambient = rng.gen_range(0..=4u32);

        let basis = solver::kernel_basis(&p, ambient).unwrap();
        for f in &basis {
            assert!(apply_operator(&p, f).unwrap().is_zero());
            assert!(f.degree() <= ambient as i32);
        }
        // Size agrees with rank–nullity on the operator matrix.
        let matrix = solver::operator_matrix(&p, ambient);
        assert_eq!(
            basis.len(),
            solver::dim_pi(ambient as i32, arity) - linalg::rank(&matrix)
        );
        // And with the closed-form count in two variables.
        if arity == 2 {
            assert_eq!(basis.len(), solver::kernel_dim(s, ambient));
        }
    }
}

#[test]
fn kernel_closed_under_partial_derivatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..15 {
        let arity = rng.gen_range(2..=3);
        let s = rng.gen_range(1..=2u32);
        let p = sample::random_with_zero_order(&mut rng, arity, s, s + 1);
        for f in solver::kernel_basis(&p, 3).unwrap() {
            for v in 0..arity {
                let derivative = f.partial_derivative(v);
                assert!(apply_operator(&p, &derivative).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn oracle_and_layer_peeling_differ_by_kernel_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..40 {
        let arity = rng.gen_range(2..=3);
        let s = rng.gen_range(0..=2u32);
        let p = sample::random_with_zero_order(&mut rng, arity, s, s + 2);
        let q_degree = rng.gen_range(0..=2);
        let q = sample::random_polynomial(&mut rng, arity, q_degree, 0.5);

        let structured = solver::solve_pde(&p, &q).unwrap().particular;
        let ambient = (q.degree() + s as i32).max(0) as u32;
        let oracle = solver::oracle_solve(&p, &q, ambient)
            .unwrap()
            .expect("a solution exists in the ambient space");
        assert!(solver::verify(&p, &oracle, &q).unwrap().is_zero());
        let difference = &structured - &oracle;
        assert!(apply_operator(&p, &difference).unwrap().is_zero());
    }
}

#[test]
fn unit_operators_have_one_solution_along_every_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..30 {
        let arity = rng.gen_range(2..=3);
        let p = sample::random_with_zero_order(&mut rng, arity, 0, 2);
        let m = rng.gen_range(0..=3);
        let q = sample::random_polynomial(&mut rng, arity, m, 0.5);

        let series = solver::solve_unit(&p, &q).unwrap();
        let peeled = solver::solve_pde(&p, &q).unwrap().particular;
        assert_eq!(series, peeled);
        for ambient in [m, m + 2] {
            let oracle = solver::oracle_solve(&p, &q, ambient).unwrap().unwrap();
            assert_eq!(series, oracle);
        }
    }
}

#[test]
fn homogeneous_case_reduces_to_a_single_layer() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..25 {
        let arity = rng.gen_range(2..=3);
        let n = rng.gen_range(1..=3u32);
        let m = rng.gen_range(0..=2u32);
        let p = sample::random_homogeneous(&mut rng, arity, n);
        let q = sample::random_homogeneous(&mut rng, arity, m);

        let peeled = solver::solve_pde(&p, &q).unwrap().particular;
        let layered = solver::solve_layer(&p, &q).unwrap();
        assert_eq!(peeled, layered);
        assert!(peeled.is_homogeneous());
        // The top layer alone already satisfies the lower-layer equation.
        let top = peeled.layer((n + m) as u32);
        assert_eq!(apply_operator(&p, &top).unwrap(), q);
    }
}

#[test]
fn solution_family_spans_other_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for _ in 0..15 {
        let arity = 2;
        let s = rng.gen_range(0..=2u32);
        let p = sample::random_with_zero_order(&mut rng, arity, s, s + 1);
        let q = sample::random_polynomial(&mut rng, arity, 2, 0.5);
        let ambient = ((q.degree() + s as i32).max(0) as u32) + 1;

        let family = solver::solution_family(&p, &q, ambient).unwrap();
        assert_eq!(family.free_count, family.kernel_basis.len());
        assert!(solver::verify(&p, &family.particular, &q).unwrap().is_zero());

        // particular + any kernel combination still solves.
        let mut shifted = family.particular.clone();
        for (i, f) in family.kernel_basis.iter().enumerate() {
            shifted = &shifted + &f.scale(&rat_int(i as i64 % 5 - 2));
        }
        assert!(solver::verify(&p, &shifted, &q).unwrap().is_zero());
    }
}
