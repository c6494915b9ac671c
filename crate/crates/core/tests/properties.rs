use proptest::prelude::*;

use crossalg::ring::{all_vectors, howell_form, FiniteAlgebra, LinearMap, Solver, Submodule, Zm};
use crossalg::xmod;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (prop::sample::select(vec![2u64, 3, 4, 6, 8, 9, 12]), 1..=max_cols).prop_flat_map(move |(m, cols)| {
        let row = prop::collection::vec(0..m, cols);
        (Just(m), Just(cols), prop::collection::vec(row, 0..=max_rows))
    })
}

proptest! {
    #[test]
    fn howell_form_is_idempotent((m, cols, rows) in matrix(5, 4)) {
        let z = Zm::new(m).unwrap();
        let h = howell_form(z, cols, &rows);
        prop_assert_eq!(howell_form(z, cols, &h), h.clone());
        let span = Submodule::span(z, cols, &rows);
        prop_assert!(rows.iter().all(|r| span.contains(r)));
        prop_assert_eq!(Submodule::span(z, cols, &h), span);
    }

    #[test]
    fn kernel_is_exact((m, cols, rows) in matrix(3, 3)) {
        let z = Zm::new(m).unwrap();
        let f = LinearMap::from_columns(z, rows.len(), &(0..cols).map(|c| rows.iter().map(|r| r[c]).collect()).collect::<Vec<Vec<u64>>>())
            .unwrap();
        let k = f.kernel();
        for v in all_vectors(z, cols) {
            prop_assert_eq!(k.contains(&v), f.apply(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solver_reproduces_combinations((m, cols, rows) in matrix(4, 4), seed in any::<u64>()) {
        let z = Zm::new(m).unwrap();
        let coeffs: Vec<u64> = (0..rows.len()).map(|i| (seed >> (4 * i)) % m).collect();
        let mut target = vec![0; cols];
        for (c, r) in coeffs.iter().zip(&rows) {
            for (t, x) in target.iter_mut().zip(r) {
                *t = (*t + c * x) % m;
            }
        }
        let x = Solver::new(z, cols, &rows).solve(&target).expect("in the span");
        let mut back = vec![0; cols];
        for (c, r) in x.iter().zip(&rows) {
            for (t, v) in back.iter_mut().zip(r) {
                *t = (*t + c * v) % m;
            }
        }
        prop_assert_eq!(back, target);
    }

    #[test]
    fn truncated_polynomials_are_algebras(m in 2u64..10, n in 1usize..4) {
        let a = FiniteAlgebra::truncated_polynomial(Zm::new(m).unwrap(), n);
        prop_assert!(a.check().passed());
        if m.pow(n as u32) <= 27 {
            prop_assert!(a.check_exhaustive(1 << 12).unwrap().passed());
        }
    }

    #[test]
    fn ideals_of_truncated_polynomials_are_crossed(n in 1usize..4, k in 0usize..4) {
        let z = Zm::new(2).unwrap();
        let r = FiniteAlgebra::truncated_polynomial(z, n);
        let gens: Vec<Vec<u64>> = (k < n).then(|| (0..n).map(|i| u64::from(i == k)).collect()).into_iter().collect();
        let x = xmod::from_ideal(&r, &gens).unwrap();
        prop_assert!(x.is_crossed());
        prop_assert_eq!(x.c().rank(), n.saturating_sub(k));
    }
}
