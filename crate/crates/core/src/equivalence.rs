//! The functors Γ (2-algebras to crossed modules) and Ψ (crossed modules
//! to 2-algebras), their action on morphisms, and round-trip witnesses.

use std::sync::Arc;

use crate::error::{require, Error, Result};
use crate::report::{Report, Witness};
use crate::ring::{vec_ops, ActionTensor, FiniteAlgebra, LinearMap, Solver};
use crate::two_cat::{TwoAlgMorphism, TwoAlgebra};
use crate::xmod::{CrossedModule, XModMorphism, XModStatus};

/// Γ(A) together with the inclusion `Ker s -> A1` of its chosen basis.
#[derive(Clone, Debug)]
pub struct GammaResult {
    pub xmod: Arc<CrossedModule>,
    pub inclusion: LinearMap,
    solver: Solver,
}

impl GammaResult {
    /// Coordinates of a cell of `Ker s` in the chosen basis.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.solver.solve(v)
    }
}

fn integrity(axiom: &str, detail: String) -> Error {
    let mut r = Report::new("construction invariant");
    r.record(axiom, Some(Witness::new([], detail)));
    Error::Integrity(Box::new(r))
}

/// Γ: `C = Ker s` with the product of A1, `R = A0`, `∂ = t|_C`,
/// `x▶q = e(x)•q`.
pub fn gamma(a: &TwoAlgebra) -> Result<GammaResult> {
    require(a.check())?;
    let z = a.ring();
    let d1 = a.a1().rank();
    let basis = a.s().kernel().free_basis()?;
    let k = basis.len();
    let solver = Solver::new(z, d1, &basis);
    let coords = |v: &[u64], what: &str| {
        solver
            .solve(v)
            .ok_or_else(|| integrity("KER-CLOSED", format!("{what} = {v:?} leaves Ker s")))
    };

    let mut table = Vec::with_capacity(k * k * k);
    for p in &basis {
        for q in &basis {
            table.extend(coords(&a.a1().product(p, q), "product")?);
        }
    }
    let c = FiniteAlgebra::new(z, k, table, None)?.with_detected_unit();

    let d0 = a.a0().rank();
    let mut act = Vec::with_capacity(d0 * k * k);
    for i in 0..d0 {
        let ex = a.e().apply(&a.a0().basis(i));
        for q in &basis {
            act.extend(coords(&a.a1().product(&ex, q), "e(x)•q")?);
        }
    }
    let action = ActionTensor::new(z, d0, k, act)?;
    let inclusion = LinearMap::from_columns(z, d1, &basis)?;
    let boundary = a.t().compose(&inclusion);
    let xmod = CrossedModule::new(c, a.a0().clone(), boundary, action)?;
    let rep = xmod.check();
    if !rep.passed() {
        return Err(Error::Integrity(Box::new(rep)));
    }
    Ok(GammaResult {
        xmod: Arc::new(xmod),
        inclusion,
        solver,
    })
}

/// Ψ: `A0 = R`, `A1 = G⋊R` on the basis (G-basis, R-basis) with
/// `(g,c)(g′,c′) = (c▶g′ + c′▶g + gg′, cc′)`, `s(g,c) = c`,
/// `t(g,c) = ∂g + c`, `e(c) = (0,c)`.
///
/// No axioms are required of `x`; a pre-crossed input yields a structure
/// whose interchange law may fail.
pub fn psi(x: &CrossedModule) -> TwoAlgebra {
    let z = x.r().ring();
    let (dg, dr) = (x.c().rank(), x.r().rank());
    let n = dg + dr;
    let g_part = |v: Vec<u64>| vec_ops::concat(&v, &vec![0; dr]);
    let mut table = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let v = match (i < dg, j < dg) {
                (true, true) => g_part(x.c().basis_product(i, j)),
                (true, false) => g_part(x.action().basis_action(j - dg, i)),
                (false, true) => g_part(x.action().basis_action(i - dg, j)),
                (false, false) => vec_ops::concat(&vec![0; dg], &x.r().basis_product(i - dg, j - dg)),
            };
            table.extend(v);
        }
    }
    let unit = vec_ops::concat(&vec![0; dg], x.r().unit().expect("R is unital"));
    let mut a1 = FiniteAlgebra::new(z, n, table, Some(unit)).expect("shapes agree");
    if let (Some(lc), Some(lr)) = (x.c().labels(), x.r().labels()) {
        let labels = lc
            .iter()
            .map(|l| format!("({l},0)"))
            .chain(lr.iter().map(|l| format!("(0,{l})")))
            .collect();
        a1 = a1.with_labels(labels);
    }
    let s = LinearMap::from_fn(z, dr, n, |r, c| u64::from(c >= dg && c - dg == r));
    let t = LinearMap::from_fn(z, dr, n, |r, c| {
        if c < dg {
            x.boundary().get(r, c)
        } else {
            u64::from(c - dg == r)
        }
    });
    let e = s.transpose();
    TwoAlgebra::new(x.r().clone(), a1, s, t, e).expect("shapes agree")
}

/// Ψ(x) with the status of `x`; anything but `Crossed` means the
/// interchange law is not guaranteed.
pub fn psi_with_status(x: &CrossedModule) -> (TwoAlgebra, XModStatus) {
    (psi(x), x.status())
}

/// `f1 = F1|_{Ker s}`, `f0 = F0`.
pub fn gamma_mor(f: &TwoAlgMorphism) -> Result<XModMorphism> {
    require(f.check())?;
    let src = gamma(f.source())?;
    let tgt = gamma(f.target())?;
    restrict(f, &Arc::new(src), &Arc::new(tgt))
}

/// Γ(F) against already computed Γ of its endpoints.
pub(crate) fn restrict(f: &TwoAlgMorphism, src: &Arc<GammaResult>, tgt: &Arc<GammaResult>) -> Result<XModMorphism> {
    let z = f.f0().ring();
    let mut cols = Vec::with_capacity(src.inclusion.domain_rank());
    for q in src.inclusion.columns() {
        let image = f.f1().apply(&q);
        let c = tgt
            .coordinates(&image)
            .ok_or_else(|| integrity("KER-PRES", format!("F1{q:?} = {image:?} leaves Ker s′")))?;
        cols.push(c);
    }
    let f1 = LinearMap::from_columns(z, tgt.inclusion.domain_rank(), &cols)?;
    XModMorphism::new(
        src.xmod.clone(),
        tgt.xmod.clone(),
        f1,
        f.f0().clone(),
    )
}

/// `F1 = f1 ⊕ f0` on the semidirect basis, `F0 = f0`.
pub fn psi_mor(f: &XModMorphism) -> TwoAlgMorphism {
    TwoAlgMorphism::new(
        Arc::new(psi(f.source())),
        Arc::new(psi(f.target())),
        LinearMap::block_diagonal(f.f1(), f.f0()),
        f.f0().clone(),
    )
    .expect("shapes agree")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `X -> Γ(Ψ(X))`.
    XMod,
    /// `A -> Ψ(Γ(A))`.
    TwoAlg,
}

/// Explicit inverse morphisms between a structure and its image under the
/// composite functor.
#[derive(Clone, Debug)]
pub struct RoundTripWitness {
    pub direction: Direction,
    /// `(level 1, level 0)` of the forward morphism.
    pub forward: (LinearMap, LinearMap),
    pub backward: (LinearMap, LinearMap),
    pub report: Report,
}

impl RoundTripWitness {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

fn identity_entry(r: &mut Report, id: &str, m: &LinearMap) {
    let bad = (0..m.domain_rank()).find(|&j| m.column(j) != vec_ops::unit_vector(m.codomain_rank(), j));
    r.record(id, bad.map(|j| Witness::new([j], format!("composite sends basis {j} to {:?}", m.column(j)))));
}

/// φ: `a ↦ (a − e(s a), s a)` into Ψ(Γ(A)) with inverse `(q, x) ↦ q + e(x)`.
pub fn phi_iso(a: &TwoAlgebra) -> Result<RoundTripWitness> {
    let g = gamma(a)?;
    let b = psi(&g.xmod);
    let z = a.ring();
    let d1 = a.a1().rank();
    let es = a.e().compose(a.s());
    let proj = LinearMap::identity(z, d1).sub(&es);
    let k = g.inclusion.domain_rank();
    let mut q_cols = Vec::with_capacity(d1);
    for j in 0..d1 {
        let v = proj.column(j);
        q_cols.push(
            g.coordinates(&v)
                .ok_or_else(|| integrity("KER-PROJ", format!("a − e(s a) = {v:?} leaves Ker s")))?,
        );
    }
    let q_part = LinearMap::from_columns(z, k, &q_cols)?;
    let fwd1 = LinearMap::stack(&q_part, a.s());
    let bwd1 = {
        let cols: Vec<Vec<u64>> = g.inclusion.columns().into_iter().chain(a.e().columns()).collect();
        LinearMap::from_columns(z, d1, &cols)?
    };
    let id0 = LinearMap::identity(z, a.a0().rank());

    let a = Arc::new(a.clone());
    let b = Arc::new(b);
    let fwd = TwoAlgMorphism::new(a.clone(), b.clone(), fwd1.clone(), id0.clone())?;
    let bwd = TwoAlgMorphism::new(b, a, bwd1.clone(), id0.clone())?;
    let mut report = Report::new("A ≅ Ψ(Γ(A))");
    report.absorb("FWD", fwd.check());
    report.absorb("BWD", bwd.check());
    identity_entry(&mut report, "RT-ID-A1", &bwd1.compose(&fwd1));
    identity_entry(&mut report, "RT-ID-B1", &fwd1.compose(&bwd1));
    Ok(RoundTripWitness {
        direction: Direction::TwoAlg,
        forward: (fwd1, id0.clone()),
        backward: (bwd1, id0),
        report,
    })
}

/// `X -> Γ(Ψ(X))` via `g ↦ (g, 0)`, and back.
///
/// `RT-COORD` records whether Γ(Ψ(X)) equals X in coordinates.
pub fn roundtrip_xmod(x: &CrossedModule) -> Result<RoundTripWitness> {
    require(x.check())?;
    let g = gamma(&psi(x))?;
    let z = x.r().ring();
    let (dc, dr) = (x.c().rank(), x.r().rank());
    let mut fwd_cols = Vec::with_capacity(dc);
    for j in 0..dc {
        let cell = vec_ops::concat(&x.c().basis(j), &vec![0; dr]);
        fwd_cols.push(
            g.coordinates(&cell)
                .ok_or_else(|| integrity("KER-EMBED", format!("({j},0) is not in Ker s")))?,
        );
    }
    let fwd1 = LinearMap::from_columns(z, g.inclusion.domain_rank(), &fwd_cols)?;
    let take_g = LinearMap::from_fn(z, dc, dc + dr, |r, c| u64::from(r == c));
    let bwd1 = take_g.compose(&g.inclusion);
    let id0 = LinearMap::identity(z, dr);

    let same = g.xmod.same_data(x);
    let xa = Arc::new(x.clone());
    let ya = g.xmod;
    let fwd = XModMorphism::new(xa.clone(), ya.clone(), fwd1.clone(), id0.clone())?;
    let bwd = XModMorphism::new(ya, xa, bwd1.clone(), id0.clone())?;
    let mut report = Report::new("X ≅ Γ(Ψ(X))");
    report.absorb("FWD", fwd.check());
    report.absorb("BWD", bwd.check());
    identity_entry(&mut report, "RT-ID-C", &bwd1.compose(&fwd1));
    identity_entry(&mut report, "RT-ID-K", &fwd1.compose(&bwd1));
    report.record(
        "RT-COORD",
        (!same).then(|| Witness::new([], "Γ(Ψ(X)) differs from X in coordinates")),
    );
    Ok(RoundTripWitness {
        direction: Direction::XMod,
        forward: (fwd1, id0.clone()),
        backward: (bwd1, id0),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult_alg;
    use crate::ring::Zm;
    use crate::xmod;

    fn z2() -> Zm {
        Zm::new(2).unwrap()
    }

    fn dual() -> FiniteAlgebra {
        FiniteAlgebra::truncated_polynomial(z2(), 2)
    }

    #[test]
    fn gamma_of_discrete_is_zero_xmod() {
        let a = TwoAlgebra::discrete(&dual()).unwrap();
        let g = gamma(&a).unwrap();
        assert_eq!(g.xmod.c().rank(), 0);
        assert!(g.xmod.r().same_structure(&dual()));
    }

    #[test]
    fn psi_of_ideal_inclusion() {
        let x = xmod::from_ideal(&dual(), &[vec![0, 1]]).unwrap();
        let a = psi(&x);
        assert_eq!((a.a0().rank(), a.a1().rank()), (2, 3));
        assert!(a.check_exhaustive(4096).unwrap().passed());
        // (g,c)∘(g′,∂g+c) = (g+g′,c)
        let z = z2();
        for g in 0..2u64 {
            for g2 in 0..2u64 {
                for c in crate::ring::all_vectors(z, 2) {
                    let a1 = vec_ops::concat(&[g], &c);
                    let dg = x.boundary().apply(&[g]);
                    let a2 = vec_ops::concat(&[g2], &vec_ops::add(z, &dg, &c));
                    let got = a.compose_cells(&a1, &a2).unwrap();
                    assert_eq!(got, vec_ops::concat(&[z.add(g, g2)], &c));
                }
            }
        }
    }

    #[test]
    fn psi_of_zero_xmod_is_discrete() {
        let x = xmod::from_ideal(&dual(), &[]).unwrap();
        assert!(psi(&x).same_data(&TwoAlgebra::discrete(&dual()).unwrap()));
    }

    #[test]
    fn precrossed_specimen_breaks_interchange() {
        let g = FiniteAlgebra::ground(z2());
        let x = CrossedModule::new(
            g.clone(),
            g,
            LinearMap::zero(z2(), 1, 1),
            ActionTensor::new(z2(), 1, 1, vec![1]).unwrap(),
        )
        .unwrap();
        let (a, status) = psi_with_status(&x);
        assert_eq!(status, XModStatus::PreCrossed);
        let r = a.check();
        assert!(r.fails("ICHG"));
        assert_eq!(r.witness("ICHG").unwrap().indices, vec![0, 0]);
        let q = a.interchange_counterexample().unwrap().expect("a failing quadruple");
        let defect = a.interchange_defect(&q[0], &q[1], &q[2], &q[3]).unwrap();
        assert!(!vec_ops::is_zero(&defect));
        assert!(a.check_exhaustive(4096).unwrap().fails("ICHG-EXH"));
    }

    #[test]
    fn round_trips_on_examples() {
        let examples = [
            xmod::from_ideal(&dual(), &[]).unwrap(),
            xmod::from_ideal(&dual(), &[vec![0, 1]]).unwrap(),
            xmod::from_multiplication(&FiniteAlgebra::ground(z2())).unwrap(),
        ];
        for x in &examples {
            let w = roundtrip_xmod(x).unwrap();
            assert!(w.passed(), "{}", w.report);
            assert!(w.report.holds("RT-COORD"));
        }
        let m = mult_alg::multiplication_two_algebra(&FiniteAlgebra::ground(z2())).unwrap();
        assert!(phi_iso(&m).unwrap().passed());
        assert!(phi_iso(&TwoAlgebra::discrete(&dual()).unwrap()).unwrap().passed());
    }

    #[test]
    fn multiplication_two_algebra_is_psi_of_multiplication_xmod() {
        for c in [FiniteAlgebra::ground(z2()), dual(), FiniteAlgebra::ground(Zm::new(4).unwrap())] {
            let direct = mult_alg::multiplication_two_algebra(&c).unwrap();
            let via = psi(&xmod::from_multiplication(&c).unwrap());
            assert!(direct.same_data(&via));
        }
    }

    #[test]
    fn gamma_of_multiplication_two_algebra() {
        let a = mult_alg::multiplication_two_algebra(&dual()).unwrap();
        let g = gamma(&a).unwrap();
        let x = xmod::from_multiplication(&dual()).unwrap();
        assert!(g.xmod.same_data(&x));
    }

    #[test]
    fn morphism_transport() {
        let x = Arc::new(xmod::from_ideal(&dual(), &[vec![0, 1]]).unwrap());
        let y = Arc::new(xmod::from_ideal(&dual(), &[]).unwrap());
        let id = XModMorphism::identity(x.clone());
        let pid = psi_mor(&id);
        assert!(pid.check().passed());
        assert!(pid.f1().is_identity());
        assert!(gamma_mor(&pid).unwrap().same_maps(&id));

        // the quotient pair fails as a crossed module morphism, so Ψ of it
        // must fail the t-square
        let q = XModMorphism::new(x, y, LinearMap::zero(z2(), 0, 1), LinearMap::identity(z2(), 2)).unwrap();
        assert!(psi_mor(&q).check().fails("T-SQ"));
    }

    #[test]
    fn swap_on_ker_s_fails_target_square() {
        let x = xmod::from_ideal(&dual(), &[vec![1, 0]]).unwrap();
        assert_eq!(x.c().rank(), 2);
        let a = Arc::new(psi(&x));
        let z = z2();
        let swap = LinearMap::from_fn(z, 4, 4, |r, c| match c {
            0 => u64::from(r == 1),
            1 => u64::from(r == 0),
            _ => u64::from(r == c),
        });
        let f = TwoAlgMorphism::new(a.clone(), a, swap, LinearMap::identity(z, 2)).unwrap();
        let r = f.check();
        assert!(r.fails("T-SQ"));
        assert_eq!(r.witness("T-SQ").unwrap().indices, vec![0]);
    }
}
