//! Crossed modules of commutative algebras and their morphisms.

use std::sync::Arc;

use crate::error::{require, Error, Result};
use crate::mult_alg;
use crate::report::{Report, Witness};
use crate::ring::algebra::check_morphism_into;
use crate::ring::{vec_ops, ActionTensor, FiniteAlgebra, LinearMap, Solver, Submodule};

/// A boundary `∂: C -> R` together with an action of the unital algebra R
/// on C. Whether CM1/CM2 hold is a matter for [`CrossedModule::check`];
/// candidates that satisfy only CM1 (pre-crossed modules) are ordinary
/// values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    c: FiniteAlgebra,
    r: FiniteAlgebra,
    boundary: LinearMap,
    action: ActionTensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XModStatus {
    /// CM1 and CM2 hold.
    Crossed,
    /// Everything but the Peiffer identity holds.
    PreCrossed,
    /// Some axiom other than CM2 fails.
    Invalid,
}

impl CrossedModule {
    pub fn new(
        c: FiniteAlgebra,
        r: FiniteAlgebra,
        boundary: LinearMap,
        action: ActionTensor,
    ) -> Result<Self> {
        let ring = r.ring();
        if c.ring() != ring || boundary.ring() != ring || action.ring() != ring {
            return Err(Error::shape("components live over different moduli"));
        }
        if boundary.domain_rank() != c.rank() || boundary.codomain_rank() != r.rank() {
            return Err(Error::shape(format!(
                "boundary is {}x{} but C has rank {} and R has rank {}",
                boundary.codomain_rank(),
                boundary.domain_rank(),
                c.rank(),
                r.rank()
            )));
        }
        if action.acting_rank() != r.rank() || action.acted_rank() != c.rank() {
            return Err(Error::shape("action tensor does not match the ranks of R and C"));
        }
        if r.unit().is_none() {
            return Err(Error::shape("the acting algebra R must be unital"));
        }
        Ok(Self {
            c,
            r,
            boundary,
            action,
        })
    }

    pub fn c(&self) -> &FiniteAlgebra {
        &self.c
    }

    pub fn r(&self) -> &FiniteAlgebra {
        &self.r
    }

    pub fn boundary(&self) -> &LinearMap {
        &self.boundary
    }

    pub fn action(&self) -> &ActionTensor {
        &self.action
    }

    /// `r ▶ c`.
    pub fn act(&self, r: &[u64], c: &[u64]) -> Vec<u64> {
        self.action.act(r, c)
    }

    /// Full verification: C and R are algebras, ∂ is an algebra morphism,
    /// the action is unital, associative and multiplicative, then CM1 and
    /// CM2 on basis pairs.
    pub fn check(&self) -> Report {
        let mut rep = Report::new(format!(
            "crossed module C(rank {}) -> R(rank {}) over Z/{}",
            self.c.rank(),
            self.r.rank(),
            self.r.ring().modulus()
        ));
        let mut cr = Report::new("");
        self.c.check_into(&mut cr);
        rep.absorb("C", cr);
        let mut rr = Report::new("");
        self.r.check_into(&mut rr);
        rep.absorb("R", rr);
        check_morphism_into(&mut rep, "BDRY", &self.boundary, &self.c, &self.r, false);
        self.action.check_into(&mut rep, &self.r, &self.c, true);

        let (dc, dr) = (self.c.rank(), self.r.rank());
        let mut cm1 = None;
        'cm1: for i in 0..dr {
            for j in 0..dc {
                let lhs = self.boundary.apply(&self.action.basis_action(i, j));
                let rhs = self.r.product(&self.r.basis(i), &self.boundary.column(j));
                if lhs != rhs {
                    cm1 = Some(Witness::new(
                        [i, j],
                        format!("∂(r{i}▶c{j}) = {lhs:?} but r{i}·∂(c{j}) = {rhs:?}"),
                    ));
                    break 'cm1;
                }
            }
        }
        rep.record("CM1", cm1);

        let mut cm2 = None;
        'cm2: for i in 0..dc {
            let di = self.boundary.column(i);
            for j in 0..dc {
                let lhs = self.action.act(&di, &self.c.basis(j));
                let rhs = self.c.basis_product(i, j);
                if lhs != rhs {
                    cm2 = Some(Witness::new(
                        [i, j],
                        format!("∂(c{i})▶c{j} = {lhs:?} but c{i}·c{j} = {rhs:?}"),
                    ));
                    break 'cm2;
                }
            }
        }
        rep.record("CM2", cm2);
        rep
    }

    pub fn status(&self) -> XModStatus {
        classify(&self.check())
    }

    pub fn is_crossed(&self) -> bool {
        self.status() == XModStatus::Crossed
    }

    /// Coordinate equality of C, R (structure constants), ∂ and the action.
    pub fn same_data(&self, other: &CrossedModule) -> bool {
        self.c.same_structure(&other.c)
            && self.r.same_structure(&other.r)
            && self.boundary == other.boundary
            && self.action == other.action
    }

    /// Whether `∂C` is an ideal of R: the span of the boundary images is
    /// closed under multiplication by the basis of R.
    pub fn image_is_ideal(&self) -> bool {
        let image = self.boundary.image();
        image.generators().iter().all(|g| {
            (0..self.r.rank()).all(|i| image.contains(&self.r.product(&self.r.basis(i), g)))
        })
    }
}

pub fn check_crossed_module(x: &CrossedModule) -> Report {
    x.check()
}

pub(crate) fn classify(rep: &Report) -> XModStatus {
    let mut others_pass = true;
    let mut cm2 = true;
    for e in &rep.entries {
        if e.axiom == "CM2" {
            cm2 = e.passed;
        } else if !e.passed {
            others_pass = false;
        }
    }
    match (others_pass, cm2) {
        (true, true) => XModStatus::Crossed,
        (true, false) => XModStatus::PreCrossed,
        _ => XModStatus::Invalid,
    }
}

/// The ideal of `r` generated by `gens`, with its inclusion: the crossed
/// module `I ↪ R` acted on by multiplication.
///
/// The ideal must be a free Z/m-module so it can carry a basis.
pub fn from_ideal(r: &FiniteAlgebra, gens: &[Vec<u64>]) -> Result<CrossedModule> {
    if r.unit().is_none() {
        return Err(Error::Precondition("R must be unital".into()));
    }
    require(r.check())?;
    let ring = r.ring();
    let d = r.rank();
    if let Some(g) = gens.iter().find(|g| g.len() != d) {
        return Err(Error::shape(format!("generator {g:?} does not lie in a rank-{d} algebra")));
    }
    let mut ideal = Submodule::span(ring, d, gens);
    loop {
        let mut next: Vec<Vec<u64>> = ideal.generators().to_vec();
        for g in ideal.generators() {
            for i in 0..d {
                next.push(r.product(&r.basis(i), g));
            }
        }
        let grown = Submodule::span(ring, d, &next);
        if grown == ideal {
            break;
        }
        ideal = grown;
    }
    let basis = ideal.free_basis().map_err(|_| Error::NotFree {
        what: "the generated ideal".into(),
        modulus: ring.modulus(),
    })?;
    let k = basis.len();
    let solver = Solver::new(ring, d, &basis);
    let coords = |v: &[u64]| solver.solve(v).expect("ideal is closed under multiplication");

    let mut table = Vec::with_capacity(k * k * k);
    for a in &basis {
        for b in &basis {
            table.extend(coords(&r.product(a, b)));
        }
    }
    let c = FiniteAlgebra::new(ring, k, table, None)?.with_detected_unit();

    let mut act = Vec::with_capacity(d * k * k);
    for i in 0..d {
        for b in &basis {
            act.extend(coords(&r.product(&r.basis(i), b)));
        }
    }
    let action = ActionTensor::new(ring, d, k, act)?;
    let boundary = LinearMap::from_columns(ring, d, &basis)?;
    CrossedModule::new(c, r.clone(), boundary, action)
}

/// `0: M -> R` for an R-module M (an algebra with zero multiplication).
pub fn from_module(m: &FiniteAlgebra, r: &FiniteAlgebra, act: &ActionTensor) -> Result<CrossedModule> {
    if !m.is_zero_multiplication() {
        return Err(Error::Precondition(
            "the module must carry the zero multiplication".into(),
        ));
    }
    let x = CrossedModule::new(
        m.clone(),
        r.clone(),
        LinearMap::zero(r.ring(), r.rank(), m.rank()),
        act.clone(),
    )?;
    require(act.check(r, m, true))?;
    Ok(x)
}

/// The multiplication crossed module `(C, M(C), μ)`.
pub fn from_multiplication(c: &FiniteAlgebra) -> Result<CrossedModule> {
    let mults = mult_alg::multipliers(c)?;
    let mu = mult_alg::mu(&mults)?;
    let action = ActionTensor::from_operators(c.ring(), c.rank(), mults.basis_maps());
    CrossedModule::new(c.clone(), mults.algebra().clone(), mu, action)
}

/// A morphism of crossed modules `(f1, f0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModMorphism {
    source: Arc<CrossedModule>,
    target: Arc<CrossedModule>,
    f1: LinearMap,
    f0: LinearMap,
}

impl XModMorphism {
    pub fn new(
        source: Arc<CrossedModule>,
        target: Arc<CrossedModule>,
        f1: LinearMap,
        f0: LinearMap,
    ) -> Result<Self> {
        if f1.domain_rank() != source.c.rank() || f1.codomain_rank() != target.c.rank() {
            return Err(Error::shape("f1 does not map C to C′"));
        }
        if f0.domain_rank() != source.r.rank() || f0.codomain_rank() != target.r.rank() {
            return Err(Error::shape("f0 does not map R to R′"));
        }
        Ok(Self {
            source,
            target,
            f1,
            f0,
        })
    }

    pub fn identity(x: Arc<CrossedModule>) -> Self {
        let ring = x.r.ring();
        let (dc, dr) = (x.c.rank(), x.r.rank());
        Self {
            source: x.clone(),
            target: x,
            f1: LinearMap::identity(ring, dc),
            f0: LinearMap::identity(ring, dr),
        }
    }

    pub fn source(&self) -> &Arc<CrossedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CrossedModule> {
        &self.target
    }

    pub fn f1(&self) -> &LinearMap {
        &self.f1
    }

    pub fn f0(&self) -> &LinearMap {
        &self.f0
    }

    /// Checks that f1 is an algebra map, f0 a unital algebra map, and
    /// that `∂′f1 = f0∂` and `f1(r▶c) = f0(r)▶f1(c)` on basis elements.
    pub fn check(&self) -> Report {
        let (x, y) = (&*self.source, &*self.target);
        let mut rep = Report::new("crossed module morphism");
        check_morphism_into(&mut rep, "F1", &self.f1, &x.c, &y.c, false);
        check_morphism_into(&mut rep, "F0", &self.f0, &x.r, &y.r, true);

        let lhs = y.boundary.compose(&self.f1);
        let rhs = self.f0.compose(&x.boundary);
        let sq = (0..x.c.rank()).find(|&j| lhs.column(j) != rhs.column(j)).map(|j| {
            Witness::new(
                [j],
                format!("∂′f1(c{j}) = {:?} but f0∂(c{j}) = {:?}", lhs.column(j), rhs.column(j)),
            )
        });
        rep.record("BDRY-SQ", sq);

        let mut eq = None;
        'e: for i in 0..x.r.rank() {
            let fr = self.f0.column(i);
            for j in 0..x.c.rank() {
                let l = self.f1.apply(&x.action.basis_action(i, j));
                let r = y.action.act(&fr, &self.f1.column(j));
                if l != r {
                    eq = Some(Witness::new(
                        [i, j],
                        format!("f1(r{i}▶c{j}) = {l:?} but f0(r{i})▶f1(c{j}) = {r:?}"),
                    ));
                    break 'e;
                }
            }
        }
        rep.record("EQUIV", eq);
        rep
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &XModMorphism) -> Result<XModMorphism> {
        if !self.target.same_data(&next.source) {
            return Err(Error::Chain("target of the first morphism is not the source of the second".into()));
        }
        XModMorphism::new(
            self.source.clone(),
            next.target.clone(),
            next.f1.compose(&self.f1),
            next.f0.compose(&self.f0),
        )
    }

    /// Equality of the underlying maps (endpoints compared by data).
    pub fn same_maps(&self, other: &XModMorphism) -> bool {
        self.f1 == other.f1
            && self.f0 == other.f0
            && (Arc::ptr_eq(&self.source, &other.source) || self.source.same_data(&other.source))
            && (Arc::ptr_eq(&self.target, &other.target) || self.target.same_data(&other.target))
    }
}

pub fn check_xmod_morphism(f: &XModMorphism) -> Report {
    f.check()
}

/// For every `q` in the kernel of ∂ and every basis `c`: `∂(c) ▶ q = 0`.
pub fn boundary_acts_trivially_on_kernel(x: &CrossedModule) -> bool {
    let ker = x.boundary.kernel();
    (0..x.c.rank()).all(|j| {
        let dc = x.boundary.column(j);
        ker.generators()
            .iter()
            .all(|q| vec_ops::is_zero(&x.action.act(&dc, q)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zm;

    fn z2() -> Zm {
        Zm::new(2).unwrap()
    }

    fn dual() -> FiniteAlgebra {
        FiniteAlgebra::truncated_polynomial(z2(), 2)
    }

    #[test]
    fn ideal_inclusion_is_crossed() {
        let x = from_ideal(&dual(), &[vec![0, 1]]).unwrap();
        assert_eq!(x.c().rank(), 1);
        assert_eq!(x.c().basis_product(0, 0), vec![0]);
        assert_eq!(x.status(), XModStatus::Crossed);
        assert!(x.image_is_ideal());
    }

    #[test]
    fn empty_generators_give_zero_crossed_module() {
        let x = from_ideal(&dual(), &[]).unwrap();
        assert_eq!(x.c().rank(), 0);
        assert!(x.is_crossed());
    }

    #[test]
    fn ideal_generated_by_two_in_z4_is_not_free() {
        let z4 = FiniteAlgebra::ground(Zm::new(4).unwrap());
        assert!(matches!(from_ideal(&z4, &[vec![2]]), Err(Error::NotFree { .. })));
        // the unit ideal of Z4 is fine
        assert!(from_ideal(&z4, &[vec![3]]).unwrap().is_crossed());
    }

    #[test]
    fn unit_with_zero_boundary_is_only_pre_crossed() {
        let g = FiniteAlgebra::ground(z2());
        let x = CrossedModule::new(
            g.clone(),
            g,
            LinearMap::zero(z2(), 1, 1),
            ActionTensor::new(z2(), 1, 1, vec![1]).unwrap(),
        )
        .unwrap();
        let rep = x.check();
        assert!(rep.holds("CM1"));
        assert!(rep.fails("CM2"));
        assert_eq!(rep.witness("CM2").unwrap().indices, vec![0, 0]);
        assert_eq!(x.status(), XModStatus::PreCrossed);
    }

    #[test]
    fn zero_boundary_modules_are_crossed() {
        let r = FiniteAlgebra::ground(z2());
        for rank in 1..=2 {
            let m = FiniteAlgebra::zero_multiplication(z2(), rank);
            let act = ActionTensor::from_operators(z2(), rank, &[LinearMap::identity(z2(), rank)]);
            let x = from_module(&m, &r, &act).unwrap();
            assert!(x.is_crossed());
            assert!(boundary_acts_trivially_on_kernel(&x));
        }
        let not_module = FiniteAlgebra::ground(z2());
        let act = ActionTensor::new(z2(), 1, 1, vec![1]).unwrap();
        assert!(matches!(
            from_module(&not_module, &r, &act),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quotient_pair_fails_boundary_square() {
        let x = Arc::new(from_ideal(&dual(), &[vec![0, 1]]).unwrap());
        let y = Arc::new(from_ideal(&dual(), &[]).unwrap());
        let f = XModMorphism::new(
            x,
            y,
            LinearMap::zero(z2(), 0, 1),
            LinearMap::identity(z2(), 2),
        )
        .unwrap();
        let rep = f.check();
        assert!(rep.fails("BDRY-SQ"));
        assert_eq!(rep.witness("BDRY-SQ").unwrap().indices, vec![0]);
        assert!(rep.holds("EQUIV"));
    }

    #[test]
    fn identity_and_composite_pass() {
        let x = Arc::new(from_ideal(&dual(), &[vec![0, 1]]).unwrap());
        let id = XModMorphism::identity(x);
        assert!(id.check().passed());
        assert!(id.then(&id).unwrap().check().passed());
    }
}
