//! 2-modules, strict commutative 2-algebras and their morphisms.
//!
//! Vertical composition is never stored. It is always `a∘b = a + b − e(s(b))`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::ring::algebra::check_morphism_into;
use crate::ring::{vec_ops, FiniteAlgebra, LinearMap, Submodule, Zm};

/// Upper bound on the number of quadruples the exhaustive interchange
/// check is willing to visit.
pub const QUADRUPLE_CAP: u128 = 1 << 24;

/// An internal category in Z/m-modules: `s, t: M1 -> M0`, `e: M0 -> M1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoModule {
    ring: Zm,
    d0: usize,
    d1: usize,
    s: LinearMap,
    t: LinearMap,
    e: LinearMap,
}

impl TwoModule {
    pub fn new(s: LinearMap, t: LinearMap, e: LinearMap) -> Result<Self> {
        let ring = s.ring();
        let (d0, d1) = (s.codomain_rank(), s.domain_rank());
        if t.ring() != ring || e.ring() != ring {
            return Err(Error::shape("s, t, e live over different moduli"));
        }
        if t.codomain_rank() != d0 || t.domain_rank() != d1 {
            return Err(Error::shape("s and t must have the same shape"));
        }
        if e.codomain_rank() != d1 || e.domain_rank() != d0 {
            return Err(Error::shape(format!("e must be {d1}x{d0}")));
        }
        Ok(Self { ring, d0, d1, s, t, e })
    }

    pub fn ring(&self) -> Zm {
        self.ring
    }

    pub fn d0(&self) -> usize {
        self.d0
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn s(&self) -> &LinearMap {
        &self.s
    }

    pub fn t(&self) -> &LinearMap {
        &self.t
    }

    pub fn e(&self) -> &LinearMap {
        &self.e
    }

    /// The forced composite without the composability check.
    pub fn compose_unchecked(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let z = self.ring;
        let esb = self.e.apply(&self.s.apply(b));
        vec_ops::sub(z, &vec_ops::add(z, a, b), &esb)
    }

    /// `a∘b = a + b − e(s(b))`, defined when `t(a) = s(b)`.
    pub fn compose_cells(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        if a.len() != self.d1 || b.len() != self.d1 {
            return Err(Error::shape(format!("cells must have length {}", self.d1)));
        }
        let (ta, sb) = (self.t.apply(a), self.s.apply(b));
        if ta != sb {
            return Err(Error::NotComposable {
                left_target: ta,
                right_source: sb,
            });
        }
        Ok(self.compose_unchecked(a, b))
    }

    /// Composable pairs `(a, b)` as a submodule of `M1 ⊕ M1`.
    pub fn composable_pairs(&self) -> Submodule {
        let z = self.ring;
        let d1 = self.d1;
        let cond = LinearMap::from_fn(z, self.d0, 2 * d1, |r, c| {
            if c < d1 {
                self.t.get(r, c)
            } else {
                z.neg(self.s.get(r, c - d1))
            }
        });
        cond.kernel()
    }

    /// Composable triples `(a, b, c)` as a submodule of `M1^3`.
    pub fn composable_triples(&self) -> Submodule {
        let z = self.ring;
        let (d0, d1) = (self.d0, self.d1);
        let cond = LinearMap::from_fn(z, 2 * d0, 3 * d1, |r, c| {
            let (block_r, rr) = (r / d0, r % d0);
            let (block_c, cc) = (c / d1, c % d1);
            if block_c == block_r {
                self.t.get(rr, cc)
            } else if block_c == block_r + 1 {
                z.neg(self.s.get(rr, cc))
            } else {
                0
            }
        });
        cond.kernel()
    }

    /// Identity-cell laws `se = te = id` and the category laws of the
    /// forced composition. The laws are linear on the submodules of
    /// composable pairs and triples, so their Howell generators suffice.
    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("2-module M1(rank {}) ⇉ M0(rank {})", self.d1, self.d0));
        self.check_into(&mut r);
        r
    }

    pub(crate) fn check_into(&self, r: &mut Report) {
        let se = self.s.compose(&self.e);
        let te = self.t.compose(&self.e);
        let bad = |m: &LinearMap| (0..self.d0).find(|&j| m.column(j) != vec_ops::unit_vector(self.d0, j));
        r.record(
            "SRC",
            bad(&se).map(|j| Witness::new([j], format!("s(e(x{j})) = {:?}", se.column(j)))),
        );
        r.record(
            "TGT",
            bad(&te).map(|j| Witness::new([j], format!("t(e(x{j})) = {:?}", te.column(j)))),
        );

        let d1 = self.d1;
        let pairs = self.composable_pairs();
        let split = |v: &[u64]| (v[..d1].to_vec(), v[d1..].to_vec());
        let mut src = None;
        let mut tgt = None;
        for (n, p) in pairs.generators().iter().enumerate() {
            let (a, b) = split(p);
            let ab = self.compose_unchecked(&a, &b);
            if src.is_none() && self.s.apply(&ab) != self.s.apply(&a) {
                src = Some(Witness::new([n], format!("s(a∘b) ≠ s(a) for a = {a:?}, b = {b:?}")));
            }
            if tgt.is_none() && self.t.apply(&ab) != self.t.apply(&b) {
                tgt = Some(Witness::new([n], format!("t(a∘b) ≠ t(b) for a = {a:?}, b = {b:?}")));
            }
        }
        r.record("COMP-SRC", src);
        r.record("COMP-TGT", tgt);

        let unit = (0..d1).find_map(|j| {
            let a = vec_ops::unit_vector(d1, j);
            let left = self.compose_unchecked(&self.e.apply(&self.s.apply(&a)), &a);
            let right = self.compose_unchecked(&a, &self.e.apply(&self.t.apply(&a)));
            (left != a || right != a).then(|| {
                Witness::new([j], format!("e(s a)∘a = {left:?}, a∘e(t a) = {right:?}"))
            })
        });
        r.record("COMP-UNIT", unit);

        let assoc = self.composable_triples().generators().iter().enumerate().find_map(|(n, v)| {
            let (a, b, c) = (&v[..d1], &v[d1..2 * d1], &v[2 * d1..]);
            let lhs = self.compose_unchecked(&self.compose_unchecked(a, b), c);
            let rhs = self.compose_unchecked(a, &self.compose_unchecked(b, c));
            (lhs != rhs).then(|| Witness::new([n], format!("(a∘b)∘c = {lhs:?}, a∘(b∘c) = {rhs:?}")))
        });
        r.record("COMP-ASSOC", assoc);
    }

    /// Element-level check of the category laws over every composable pair
    /// and triple, refusing when the triple count exceeds `cap`.
    pub fn check_exhaustive(&self, cap: u128) -> Result<Report> {
        let mut r = self.check();
        self.exhaustive_into(&mut r, cap)?;
        Ok(r)
    }

    fn exhaustive_into(&self, r: &mut Report, cap: u128) -> Result<()> {
        let d1 = self.d1;
        let pairs = self.composable_pairs().elements(cap)?;
        let mut laws = None;
        for (n, p) in pairs.iter().enumerate() {
            let (a, b) = (&p[..d1], &p[d1..]);
            let ab = self.compose_unchecked(a, b);
            if self.s.apply(&ab) != self.s.apply(a) || self.t.apply(&ab) != self.t.apply(b) {
                laws = Some(Witness::new([n], format!("source/target law fails on {a:?}, {b:?}")));
                break;
            }
        }
        r.record("COMP-EXH-SRC-TGT", laws);
        let triples = self.composable_triples().elements(cap)?;
        let assoc = triples.iter().enumerate().find_map(|(n, v)| {
            let (a, b, c) = (&v[..d1], &v[d1..2 * d1], &v[2 * d1..]);
            let lhs = self.compose_unchecked(&self.compose_unchecked(a, b), c);
            let rhs = self.compose_unchecked(a, &self.compose_unchecked(b, c));
            (lhs != rhs).then(|| Witness::new([n], format!("associativity fails on {a:?}, {b:?}, {c:?}")))
        });
        r.record("COMP-EXH-ASSOC", assoc);
        Ok(())
    }
}

pub fn check_two_module(t: &TwoModule) -> Report {
    t.check()
}

/// A strict commutative 2-algebra: a 2-module whose levels are unital
/// algebras and whose structure maps are unital algebra morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAlgebra {
    a0: FiniteAlgebra,
    a1: FiniteAlgebra,
    module: TwoModule,
}

impl TwoAlgebra {
    pub fn new(a0: FiniteAlgebra, a1: FiniteAlgebra, s: LinearMap, t: LinearMap, e: LinearMap) -> Result<Self> {
        let module = TwoModule::new(s, t, e)?;
        if module.d0 != a0.rank() || module.d1 != a1.rank() {
            return Err(Error::shape(format!(
                "structure maps are {}⇉{} but A1, A0 have ranks {}, {}",
                module.d1,
                module.d0,
                a1.rank(),
                a0.rank()
            )));
        }
        if a0.ring() != module.ring || a1.ring() != module.ring {
            return Err(Error::shape("levels and maps live over different moduli"));
        }
        if a0.unit().is_none() || a1.unit().is_none() {
            return Err(Error::shape("both levels of a 2-algebra must be unital"));
        }
        Ok(Self { a0, a1, module })
    }

    /// `A1 = A0` with `s = t = e = id`.
    pub fn discrete(a: &FiniteAlgebra) -> Result<Self> {
        let id = LinearMap::identity(a.ring(), a.rank());
        Self::new(a.clone(), a.clone(), id.clone(), id.clone(), id)
    }

    pub fn ring(&self) -> Zm {
        self.module.ring
    }

    pub fn a0(&self) -> &FiniteAlgebra {
        &self.a0
    }

    pub fn a1(&self) -> &FiniteAlgebra {
        &self.a1
    }

    pub fn module(&self) -> &TwoModule {
        &self.module
    }

    pub fn s(&self) -> &LinearMap {
        &self.module.s
    }

    pub fn t(&self) -> &LinearMap {
        &self.module.t
    }

    pub fn e(&self) -> &LinearMap {
        &self.module.e
    }

    pub fn compose_cells(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        self.module.compose_cells(a, b)
    }

    /// Horizontal composition `a•b`.
    pub fn horizontal(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.a1.product(a, b)
    }

    /// `(f1•g1)∘(f2•g2) − (f1∘f2)•(g1∘g2)`.
    pub fn interchange_defect(&self, f1: &[u64], f2: &[u64], g1: &[u64], g2: &[u64]) -> Result<Vec<u64>> {
        let f = self.compose_cells(f1, f2)?;
        let g = self.compose_cells(g1, g2)?;
        let lhs = self.module.compose_unchecked(&self.horizontal(f1, g1), &self.horizontal(f2, g2));
        Ok(vec_ops::sub(self.ring(), &lhs, &self.horizontal(&f, &g)))
    }

    /// Algebra laws, unital morphism laws for s, t, e, the 2-module laws,
    /// and interchange.
    ///
    /// Interchange is equivalent to `(q − e(t q))•q′ = 0` for `q, q′` in
    /// `Ker s`, checked on its Howell generators.
    pub fn check(&self) -> Report {
        let mut r = Report::new(format!(
            "2-algebra A1(rank {}) ⇉ A0(rank {}) over Z/{}",
            self.a1.rank(),
            self.a0.rank(),
            self.ring().modulus()
        ));
        let mut r0 = Report::new("");
        self.a0.check_into(&mut r0);
        r.absorb("A0", r0);
        let mut r1 = Report::new("");
        self.a1.check_into(&mut r1);
        r.absorb("A1", r1);
        check_morphism_into(&mut r, "S", self.s(), &self.a1, &self.a0, true);
        check_morphism_into(&mut r, "T", self.t(), &self.a1, &self.a0, true);
        check_morphism_into(&mut r, "E", self.e(), &self.a0, &self.a1, true);
        self.module.check_into(&mut r);

        let u0 = self.a0.unit().unwrap();
        let u1 = self.a1.unit().unwrap();
        let eu = self.e().apply(u0);
        let unit = if eu != u1 {
            Some(Witness::new([], format!("e(1) = {eu:?} but 1 = {u1:?}")))
        } else {
            (0..self.a1.rank())
                .find(|&j| self.horizontal(u1, &self.a1.basis(j)) != self.a1.basis(j))
                .map(|j| Witness::new([j], format!("1•b{j} ≠ b{j}")))
        };
        r.record("UNIT", unit);
        r.record("ICHG", self.interchange_witness());
        r
    }

    fn interchange_witness(&self) -> Option<Witness> {
        let z = self.ring();
        let ker = self.s().kernel();
        let gens = ker.generators();
        for (i, q) in gens.iter().enumerate() {
            let k = vec_ops::sub(z, q, &self.e().apply(&self.t().apply(q)));
            for (j, q2) in gens.iter().enumerate() {
                let p = self.horizontal(&k, q2);
                if !vec_ops::is_zero(&p) {
                    return Some(Witness::new(
                        [i, j],
                        format!(
                            "Ker s generators q = {q:?}, q′ = {q2:?}: q•q′ − e(t q)•q′ = {p:?}"
                        ),
                    ));
                }
            }
        }
        None
    }

    /// [`TwoAlgebra::check`] plus element-level checks: the category laws
    /// on all composable pairs and triples, and the interchange law on all
    /// composable quadruples. `cap` bounds `|A1|`.
    pub fn check_exhaustive(&self, cap: u128) -> Result<Report> {
        let size = (self.ring().modulus() as u128).saturating_pow(self.a1.rank() as u32);
        if size > cap {
            return Err(Error::CapExceeded { count: size, cap });
        }
        let mut r = self.check();
        self.module.exhaustive_into(&mut r, QUADRUPLE_CAP)?;
        let w = self
            .interchange_counterexample()?
            .map(|q| Witness::new([], format!("f1 = {:?}, f2 = {:?}, g1 = {:?}, g2 = {:?}", q[0], q[1], q[2], q[3])));
        r.record("ICHG-EXH", w);
        Ok(r)
    }

    /// The first composable quadruple `[f1, f2, g1, g2]` with a nonzero
    /// interchange defect, in enumeration order.
    pub fn interchange_counterexample(&self) -> Result<Option<[Vec<u64>; 4]>> {
        let d1 = self.a1.rank();
        let pairs = self.module.composable_pairs().elements(QUADRUPLE_CAP)?;
        let count = (pairs.len() as u128) * (pairs.len() as u128);
        if count > QUADRUPLE_CAP {
            return Err(Error::CapExceeded { count, cap: QUADRUPLE_CAP });
        }
        for f in &pairs {
            let (f1, f2) = (&f[..d1], &f[d1..]);
            let fc = self.module.compose_unchecked(f1, f2);
            for g in &pairs {
                let (g1, g2) = (&g[..d1], &g[d1..]);
                let gc = self.module.compose_unchecked(g1, g2);
                let lhs = self
                    .module
                    .compose_unchecked(&self.horizontal(f1, g1), &self.horizontal(f2, g2));
                if lhs != self.horizontal(&fc, &gc) {
                    return Ok(Some([f1.to_vec(), f2.to_vec(), g1.to_vec(), g2.to_vec()]));
                }
            }
        }
        Ok(None)
    }

    /// Coordinate equality of the algebras' structure constants and of
    /// `s, t, e`.
    pub fn same_data(&self, other: &TwoAlgebra) -> bool {
        self.a0.same_structure(&other.a0) && self.a1.same_structure(&other.a1) && self.module == other.module
    }
}

pub fn check_two_algebra(a: &TwoAlgebra) -> Report {
    a.check()
}

/// A strict morphism of 2-algebras `(F1, F0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAlgMorphism {
    source: Arc<TwoAlgebra>,
    target: Arc<TwoAlgebra>,
    f1: LinearMap,
    f0: LinearMap,
}

impl TwoAlgMorphism {
    pub fn new(source: Arc<TwoAlgebra>, target: Arc<TwoAlgebra>, f1: LinearMap, f0: LinearMap) -> Result<Self> {
        if f1.domain_rank() != source.a1.rank() || f1.codomain_rank() != target.a1.rank() {
            return Err(Error::shape("F1 does not map A1 to A1′"));
        }
        if f0.domain_rank() != source.a0.rank() || f0.codomain_rank() != target.a0.rank() {
            return Err(Error::shape("F0 does not map A0 to A0′"));
        }
        Ok(Self { source, target, f1, f0 })
    }

    pub fn identity(a: Arc<TwoAlgebra>) -> Self {
        let z = a.ring();
        let (d0, d1) = (a.a0.rank(), a.a1.rank());
        Self {
            source: a.clone(),
            target: a,
            f1: LinearMap::identity(z, d1),
            f0: LinearMap::identity(z, d0),
        }
    }

    pub fn source(&self) -> &Arc<TwoAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TwoAlgebra> {
        &self.target
    }

    pub fn f1(&self) -> &LinearMap {
        &self.f1
    }

    pub fn f0(&self) -> &LinearMap {
        &self.f0
    }

    /// Unital multiplicativity of both levels, the squares with s, t, e,
    /// and preservation of vertical composition on the generators of the
    /// composable pairs.
    pub fn check(&self) -> Report {
        let (a, b) = (&*self.source, &*self.target);
        let mut r = Report::new("2-algebra morphism");
        check_morphism_into(&mut r, "F1", &self.f1, &a.a1, &b.a1, true);
        check_morphism_into(&mut r, "F0", &self.f0, &a.a0, &b.a0, true);

        let square = |lhs: LinearMap, rhs: LinearMap, what: &str| {
            (0..lhs.domain_rank()).find(|&j| lhs.column(j) != rhs.column(j)).map(|j| {
                Witness::new([j], format!("{what} differs on basis element {j}: {:?} vs {:?}", lhs.column(j), rhs.column(j)))
            })
        };
        r.record("S-SQ", square(b.s().compose(&self.f1), self.f0.compose(a.s()), "s′F1 vs F0s"));
        r.record("T-SQ", square(b.t().compose(&self.f1), self.f0.compose(a.t()), "t′F1 vs F0t"));
        r.record("E-SQ", square(b.e().compose(&self.f0), self.f1.compose(a.e()), "e′F0 vs F1e"));

        let d1 = a.a1.rank();
        let comp = a.module.composable_pairs().generators().iter().enumerate().find_map(|(n, p)| {
            let (x, y) = (&p[..d1], &p[d1..]);
            let lhs = self.f1.apply(&a.module.compose_unchecked(x, y));
            let rhs = b.module.compose_unchecked(&self.f1.apply(x), &self.f1.apply(y));
            (lhs != rhs).then(|| Witness::new([n], format!("F1(a∘b) = {lhs:?} but F1a∘F1b = {rhs:?}")))
        });
        r.record("COMP-PRES", comp);
        r
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &TwoAlgMorphism) -> Result<TwoAlgMorphism> {
        if !self.target.same_data(&next.source) {
            return Err(Error::Chain("target of the first morphism is not the source of the second".into()));
        }
        Self::new(
            self.source.clone(),
            next.target.clone(),
            next.f1.compose(&self.f1),
            next.f0.compose(&self.f0),
        )
    }

    pub fn same_maps(&self, other: &TwoAlgMorphism) -> bool {
        self.f1 == other.f1
            && self.f0 == other.f0
            && (Arc::ptr_eq(&self.source, &other.source) || self.source.same_data(&other.source))
            && (Arc::ptr_eq(&self.target, &other.target) || self.target.same_data(&other.target))
    }
}

pub fn check_two_alg_morphism(f: &TwoAlgMorphism) -> Report {
    f.check()
}
