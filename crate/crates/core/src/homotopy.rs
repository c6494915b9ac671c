//! Homotopies: derivations between crossed module morphisms, homotopies
//! between 2-algebra morphisms, their composition and transport.

use std::sync::Arc;

use crate::equivalence::{gamma, psi_mor, restrict, GammaResult};
use crate::error::{require, Error, Result};
use crate::report::{Report, Witness};
use crate::ring::algebra::check_morphism_into;
use crate::ring::{vec_ops, LinearMap};
use crate::two_cat::{TwoAlgMorphism, TwoAlgebra};
use crate::xmod::XModMorphism;

/// A linear map `h: R -> C′` meant to be an `f0`-derivation for the
/// morphism `base: (C -> R) => (C′ -> R′)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    base: XModMorphism,
    map: LinearMap,
}

impl Derivation {
    pub fn new(base: XModMorphism, map: LinearMap) -> Result<Self> {
        if map.domain_rank() != base.source().r().rank() || map.codomain_rank() != base.target().c().rank() {
            return Err(Error::shape("a derivation maps R to C′"));
        }
        Ok(Self { base, map })
    }

    pub fn zero(base: XModMorphism) -> Self {
        let map = LinearMap::zero(base.f0().ring(), base.target().c().rank(), base.source().r().rank());
        Self { base, map }
    }

    pub fn base(&self) -> &XModMorphism {
        &self.base
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// `h(rr′) = f0(r)▶h(r′) + f0(r′)▶h(r) + h(r)h(r′)` on basis pairs, and
    /// `h(1) = 0`.
    pub fn check(&self) -> Report {
        let mut rep = Report::new("derivation");
        let (x, y) = (self.base.source(), self.base.target());
        let z = self.map.ring();
        let r = x.r();
        let d = r.rank();
        let images = self.map.columns();
        let f0 = self.base.f0();
        let mut law = None;
        'outer: for i in 0..d {
            let fi = f0.column(i);
            for j in i..d {
                let fj = f0.column(j);
                let lhs = self.map.apply(&r.basis_product(i, j));
                let mut rhs = y.act(&fi, &images[j]);
                rhs = vec_ops::add(z, &rhs, &y.act(&fj, &images[i]));
                rhs = vec_ops::add(z, &rhs, &y.c().product(&images[i], &images[j]));
                if lhs != rhs {
                    law = Some(Witness::new(
                        [i, j],
                        format!("h(r{i}r{j}) = {lhs:?} but the derivation law gives {rhs:?}"),
                    ));
                    break 'outer;
                }
            }
        }
        rep.record("DERIV", law);
        let h1 = self.map.apply(r.unit().expect("R is unital"));
        rep.record(
            "DERIV-UNIT",
            (!vec_ops::is_zero(&h1)).then(|| Witness::new([], format!("h(1) = {h1:?}"))),
        );
        rep
    }
}

pub fn check_derivation(d: &Derivation) -> Report {
    d.check()
}

/// `f ⇒ g` along a derivation, with `g0 = f0 + ∂′h` and `g1 = f1 + h∂`.
#[derive(Clone, Debug)]
pub struct XModHomotopy {
    pub f: XModMorphism,
    pub d: Derivation,
    pub g: XModMorphism,
}

/// Computes the target morphism of a derivation. The target is verified;
/// a failure is an integrity error carrying the morphism report.
pub fn homotopy_target(d: &Derivation) -> Result<XModHomotopy> {
    let f = d.base();
    require(f.check())?;
    require(d.check())?;
    let (x, y) = (f.source(), f.target());
    let g0 = f.f0().add(&y.boundary().compose(d.map()));
    let g1 = f.f1().add(&d.map().compose(x.boundary()));
    let g = XModMorphism::new(x.clone(), y.clone(), g1, g0)?;
    let rep = g.check();
    if !rep.passed() {
        return Err(Error::Integrity(Box::new(rep)));
    }
    Ok(XModHomotopy {
        f: f.clone(),
        d: d.clone(),
        g,
    })
}

/// `(f ⇒ g) + (g ⇒ u) = (f ⇒ u)` with the pointwise sum of derivations.
pub fn add_derivations(h: &XModHomotopy, h2: &XModHomotopy) -> Result<XModHomotopy> {
    if !h.g.same_maps(&h2.f) {
        return Err(Error::Chain("the first homotopy does not end where the second starts".into()));
    }
    let sum = Derivation::new(h.f.clone(), h.d.map().add(h2.d.map()))?;
    let out = homotopy_target(&sum)?;
    if !out.g.same_maps(&h2.g) {
        let mut r = Report::new("composite homotopy");
        r.record("HTPY-CHAIN", Some(Witness::new([], "sum of derivations misses the final target")));
        return Err(Error::Integrity(Box::new(r)));
    }
    Ok(out)
}

/// `δ: A0 -> A1′` connecting `F` to `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAlgHomotopy {
    f: TwoAlgMorphism,
    g: TwoAlgMorphism,
    delta: LinearMap,
}

impl TwoAlgHomotopy {
    pub fn new(f: TwoAlgMorphism, g: TwoAlgMorphism, delta: LinearMap) -> Result<Self> {
        let same = |x: &Arc<TwoAlgebra>, y: &Arc<TwoAlgebra>| Arc::ptr_eq(x, y) || x.same_data(y);
        if !same(f.source(), g.source()) || !same(f.target(), g.target()) {
            return Err(Error::shape("F and G must share source and target"));
        }
        if delta.domain_rank() != f.source().a0().rank() || delta.codomain_rank() != f.target().a1().rank() {
            return Err(Error::shape("δ maps A0 to A1′"));
        }
        Ok(Self { f, g, delta })
    }

    /// `δ = e′F0`, connecting `F` to itself.
    pub fn identity(f: TwoAlgMorphism) -> Self {
        let delta = f.target().e().compose(f.f0());
        Self { g: f.clone(), f, delta }
    }

    pub fn f(&self) -> &TwoAlgMorphism {
        &self.f
    }

    pub fn g(&self) -> &TwoAlgMorphism {
        &self.g
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    /// δ a unital algebra map, `s′δ = F0`, `t′δ = G0`, and
    /// `F1(a) ∘′ δ(t a) = δ(s a) ∘′ G1(a)` on the basis of A1.
    pub fn check(&self) -> Report {
        let mut rep = Report::new("2-algebra homotopy");
        let (a, b) = (self.f.source(), self.f.target());
        let mut m = Report::new("");
        check_morphism_into(&mut m, "HTPY", &self.delta, a.a0(), b.a1(), true);
        for e in m.entries {
            rep.entries.push(e);
        }

        let eq = |lhs: LinearMap, rhs: &LinearMap| {
            (0..lhs.domain_rank())
                .find(|&j| lhs.column(j) != rhs.column(j))
                .map(|j| Witness::new([j], format!("{:?} vs {:?}", lhs.column(j), rhs.column(j))))
        };
        rep.record("HTPY1", eq(b.s().compose(&self.delta), self.f.f0()));
        rep.record("HTPY2", eq(b.t().compose(&self.delta), self.g.f0()));

        let mut nat = None;
        for j in 0..a.a1().rank() {
            let cell = a.a1().basis(j);
            let l1 = self.f.f1().apply(&cell);
            let l2 = self.delta.apply(&a.t().apply(&cell));
            let r1 = self.delta.apply(&a.s().apply(&cell));
            let r2 = self.g.f1().apply(&cell);
            let lhs = b.compose_cells(&l1, &l2);
            let rhs = b.compose_cells(&r1, &r2);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => {
                    nat = Some(Witness::new([j], format!("F1(a)∘′δ(ta) = {l:?} but δ(sa)∘′G1(a) = {r:?}")));
                }
                (l, r) => {
                    let why = l.err().or(r.err()).map(|e| e.to_string()).unwrap_or_default();
                    nat = Some(Witness::new([j], format!("cells not composable: {why}")));
                }
            }
            if nat.is_some() {
                break;
            }
        }
        rep.record("HTPY3", nat);
        rep
    }
}

pub fn check_two_alg_homotopy(h: &TwoAlgHomotopy) -> Report {
    h.check()
}

/// `(δ∗δ′)(x) = δ(x) + δ′(x) − e′(t′δ(x))`, connecting `F` to `U`.
pub fn star(h: &TwoAlgHomotopy, h2: &TwoAlgHomotopy) -> Result<TwoAlgHomotopy> {
    if !h.g.same_maps(&h2.f) {
        return Err(Error::Chain("the first homotopy does not end where the second starts".into()));
    }
    let b = h.f.target();
    let correction = b.e().compose(&b.t().compose(&h.delta));
    let delta = h.delta.add(&h2.delta).sub(&correction);
    TwoAlgHomotopy::new(h.f.clone(), h2.g.clone(), delta)
}

/// Γ(δ): `x ↦ δ(x) − e′(F0 x)` in coordinates of `Ker s′`, an
/// F0-derivation for Γ(F).
pub fn gamma_htpy(h: &TwoAlgHomotopy) -> Result<XModHomotopy> {
    let src = Arc::new(gamma(h.f.source())?);
    let tgt = Arc::new(gamma(h.f.target())?);
    gamma_htpy_with(h, &src, &tgt)
}

/// [`gamma_htpy`] with Γ of the source and target 2-algebras supplied by
/// the caller, who must pass the results of [`gamma`] on `h.f().source()`
/// and `h.f().target()`.
pub fn gamma_htpy_with(h: &TwoAlgHomotopy, src: &Arc<GammaResult>, tgt: &Arc<GammaResult>) -> Result<XModHomotopy> {
    require(h.check())?;
    let base = restrict(&h.f, src, tgt)?;
    let b = h.f.target();
    let diff = h.delta.sub(&b.e().compose(h.f.f0()));
    let mut cols = Vec::with_capacity(diff.domain_rank());
    for v in diff.columns() {
        let c = tgt.coordinates(&v).ok_or_else(|| {
            let mut r = Report::new("Γ(δ)");
            r.record("HTPY-KER", Some(Witness::new([], format!("δ(x) − e′F0(x) = {v:?} leaves Ker s′"))));
            Error::Integrity(Box::new(r))
        })?;
        cols.push(c);
    }
    let map = LinearMap::from_columns(diff.ring(), tgt.inclusion.domain_rank(), &cols)?;
    let out = homotopy_target(&Derivation::new(base, map)?)?;
    let expected = restrict(&h.g, src, tgt)?;
    if !out.g.same_maps(&expected) {
        let mut r = Report::new("Γ(δ)");
        r.record("HTPY-END", Some(Witness::new([], "target differs from Γ(G)")));
        return Err(Error::Integrity(Box::new(r)));
    }
    Ok(out)
}

/// Ψ(h): `δ(x) = (h(x), f0(x))`, connecting Ψ(f) to Ψ(g).
pub fn psi_htpy(h: &XModHomotopy) -> Result<TwoAlgHomotopy> {
    let delta = LinearMap::stack(h.d.map(), h.f.f0());
    TwoAlgHomotopy::new(psi_mor(&h.f), psi_mor(&h.g), delta)
}

/// [`psi_htpy`] reusing Ψ of the source and target crossed modules.
pub fn psi_htpy_with(h: &XModHomotopy, src: &Arc<TwoAlgebra>, tgt: &Arc<TwoAlgebra>) -> Result<TwoAlgHomotopy> {
    let lift = |m: &XModMorphism| {
        TwoAlgMorphism::new(src.clone(), tgt.clone(), LinearMap::block_diagonal(m.f1(), m.f0()), m.f0().clone())
    };
    let delta = LinearMap::stack(h.d.map(), h.f.f0());
    TwoAlgHomotopy::new(lift(&h.f)?, lift(&h.g)?, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ActionTensor, FiniteAlgebra, Zm};
    use crate::xmod::{self, CrossedModule};

    fn z2() -> Zm {
        Zm::new(2).unwrap()
    }

    fn ideal_identity() -> XModMorphism {
        let x = xmod::from_ideal(&FiniteAlgebra::truncated_polynomial(z2(), 2), &[vec![0, 1]]).unwrap();
        XModMorphism::identity(Arc::new(x))
    }

    #[test]
    fn zero_derivation_is_identity_homotopy() {
        let f = ideal_identity();
        let d = Derivation::zero(f.clone());
        assert!(d.check().passed());
        let h = homotopy_target(&d).unwrap();
        assert!(h.g.same_maps(&f));
        let p = psi_htpy(&h).unwrap();
        assert!(p.check().passed());
        assert_eq!(p.delta(), TwoAlgHomotopy::identity(psi_mor(&f)).delta());
    }

    #[test]
    fn nonzero_derivation_on_ideal_inclusion() {
        // h(1) = 0, h(x) = x
        let f = ideal_identity();
        let d = Derivation::new(f.clone(), LinearMap::new(z2(), 1, 2, vec![0, 1]).unwrap()).unwrap();
        assert!(d.check().passed());
        let h = homotopy_target(&d).unwrap();
        assert!(!h.g.same_maps(&f));
        assert_eq!(h.g.f1(), &LinearMap::zero(z2(), 1, 1));
        assert_eq!(h.g.f0(), &LinearMap::new(z2(), 2, 2, vec![1, 0, 0, 0]).unwrap());

        let p = psi_htpy(&h).unwrap();
        assert!(p.check().passed(), "{}", p.check());
        let back = gamma_htpy(&p).unwrap();
        assert_eq!(back.d.map(), d.map());
    }

    #[test]
    fn derivation_with_nonzero_unit_value_breaks_unitality() {
        // C = R = Z2, ∂ = id: h = id satisfies the law but g0 = f0 + ∂h = 0
        let g = FiniteAlgebra::ground(z2());
        let id = LinearMap::identity(z2(), 1);
        let x = CrossedModule::new(g.clone(), g, id.clone(), ActionTensor::new(z2(), 1, 1, vec![1]).unwrap()).unwrap();
        assert!(x.is_crossed());
        let f = XModMorphism::identity(Arc::new(x));
        let d = Derivation::new(f, id).unwrap();
        let r = d.check();
        assert!(r.holds("DERIV"));
        assert!(r.fails("DERIV-UNIT"));
    }

    #[test]
    fn failing_law_reports_basis_pair() {
        let f = ideal_identity();
        // h(1) = x: h(1·1) = x but 2h(1) + h(1)² = 0
        let d = Derivation::new(f, LinearMap::new(z2(), 1, 2, vec![1, 0]).unwrap()).unwrap();
        let r = d.check();
        assert!(r.fails("DERIV"));
        assert_eq!(r.witness("DERIV").unwrap().indices, vec![0, 0]);
    }

    #[test]
    fn composition_and_transport() {
        let f = ideal_identity();
        let d = Derivation::new(f.clone(), LinearMap::new(z2(), 1, 2, vec![0, 1]).unwrap()).unwrap();
        let h = homotopy_target(&d).unwrap();
        let zero_back = Derivation::zero(h.g.clone());
        let h2 = homotopy_target(&zero_back).unwrap();
        let sum = add_derivations(&h, &h2).unwrap();
        assert_eq!(sum.d.map(), h.d.map());

        let (p, p2) = (psi_htpy(&h).unwrap(), psi_htpy(&h2).unwrap());
        let st = star(&p, &p2).unwrap();
        assert!(st.check().passed());
        assert_eq!(st.delta(), p.delta());
        assert_eq!(gamma_htpy(&st).unwrap().d.map(), sum.d.map());
        assert_eq!(psi_htpy(&sum).unwrap().delta(), st.delta());

        assert!(matches!(add_derivations(&h2, &h), Err(Error::Chain(_))));
    }

    #[test]
    fn wrong_source_fails_condition_one() {
        let f = psi_mor(&ideal_identity());
        let mut h = TwoAlgHomotopy::identity(f);
        h.delta = LinearMap::zero(z2(), 3, 2);
        let r = h.check();
        assert!(r.fails("HTPY1"));
        assert_eq!(r.witness("HTPY1").unwrap().indices, vec![0]);
    }
}
