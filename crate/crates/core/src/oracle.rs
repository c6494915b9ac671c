//! Brute-force enumerators used as independent ground truth.
//!
//! Candidates are visited in lexicographic order of their flattened
//! coefficient tuple (first coordinate most significant). Filtering runs in
//! parallel; results keep candidate order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homotopy::{Derivation, TwoAlgHomotopy};
use crate::ring::linear::index_to_vector;
use crate::ring::{check_morphism, ActionTensor, FiniteAlgebra, LinearMap, Zm};
use crate::two_cat::{TwoAlgMorphism, TwoModule};
use crate::xmod::{classify, CrossedModule, XModMorphism, XModStatus};

pub const DEFAULT_CAP: u128 = 1 << 20;

/// `m^params`, saturating.
pub fn candidate_count(m: u64, params: usize) -> u128 {
    (m as u128).checked_pow(params as u32).unwrap_or(u128::MAX)
}

fn guard(count: u128, cap: u128) -> Result<u64> {
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(count as u64)
}

fn filter_candidates<T, F>(m: u64, params: usize, cap: u128, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Vec<u64>) -> Option<T> + Sync,
{
    let count = guard(candidate_count(m, params), cap)?;
    Ok((0..count)
        .into_par_iter()
        .filter_map(|i| f(index_to_vector(m, params, i as u128)))
        .collect())
}

/// Every linear map `(Z/m)^cols -> (Z/m)^rows`, row-major order.
pub fn enumerate_linear_maps(ring: Zm, rows: usize, cols: usize, cap: u128) -> Result<Vec<LinearMap>> {
    filter_candidates(ring.modulus(), rows * cols, cap, |v| {
        Some(LinearMap::new(ring, rows, cols, v).unwrap())
    })
}

/// Every commutative associative structure tensor of the given rank. The
/// free parameters are `c[i][j][l]` for `i ≤ j`. Units are detected.
pub fn enumerate_algebras(ring: Zm, rank: usize, cap: u128) -> Result<Vec<FiniteAlgebra>> {
    let d = rank;
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    filter_candidates(ring.modulus(), pairs.len() * d, cap, |v| {
        let mut table = vec![0; d * d * d];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for l in 0..d {
                table[(i * d + j) * d + l] = v[p * d + l];
                table[(j * d + i) * d + l] = v[p * d + l];
            }
        }
        let a = FiniteAlgebra::new(ring, d, table, None).unwrap();
        a.check().passed().then(|| a.with_detected_unit())
    })
}

pub fn enumerate_unital_algebras(ring: Zm, rank: usize, cap: u128) -> Result<Vec<FiniteAlgebra>> {
    Ok(enumerate_algebras(ring, rank, cap)?
        .into_iter()
        .filter(|a| a.unit().is_some())
        .collect())
}

/// Unital actions of `r` on `c`.
pub fn enumerate_actions(r: &FiniteAlgebra, c: &FiniteAlgebra, cap: u128) -> Result<Vec<ActionTensor>> {
    let ring = r.ring();
    let (dr, dc) = (r.rank(), c.rank());
    filter_candidates(ring.modulus(), dr * dc * dc, cap, |v| {
        let act = ActionTensor::new(ring, dr, dc, v).unwrap();
        act.check(r, c, true).passed().then_some(act)
    })
}

/// Algebra morphisms `a -> b`.
pub fn enumerate_algebra_morphisms(a: &FiniteAlgebra, b: &FiniteAlgebra, unital: bool, cap: u128) -> Result<Vec<LinearMap>> {
    let ring = a.ring();
    filter_candidates(ring.modulus(), a.rank() * b.rank(), cap, |v| {
        let f = LinearMap::new(ring, b.rank(), a.rank(), v).unwrap();
        check_morphism(&f, a, b, unital).passed().then_some(f)
    })
}

/// One candidate that passed everything except possibly CM2.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub xmod: CrossedModule,
    pub crossed: bool,
}

/// Pre-crossed modules found by exhaustive search; `crossed` marks the
/// ones that also satisfy CM2.
#[derive(Clone, Debug, Default)]
pub struct XModCensus {
    pub entries: Vec<CensusEntry>,
}

impl XModCensus {
    pub fn crossed(&self) -> impl Iterator<Item = &CrossedModule> {
        self.entries.iter().filter(|e| e.crossed).map(|e| &e.xmod)
    }

    pub fn pre_crossed_only(&self) -> impl Iterator<Item = &CrossedModule> {
        self.entries.iter().filter(|e| !e.crossed).map(|e| &e.xmod)
    }

    pub fn crossed_count(&self) -> usize {
        self.crossed().count()
    }
}

/// All `(∂, ▶)` making `c -> r` pre-crossed, boundary-major order.
///
/// The cap applies to the raw product `m^(dc·dr) · m^(dr·dc²)`.
pub fn enumerate_crossed_modules(r: &FiniteAlgebra, c: &FiniteAlgebra, cap: u128) -> Result<XModCensus> {
    if r.unit().is_none() {
        return Err(Error::Precondition("R must be unital".into()));
    }
    let m = r.ring().modulus();
    let (dr, dc) = (r.rank(), c.rank());
    let raw = candidate_count(m, dc * dr).saturating_mul(candidate_count(m, dr * dc * dc));
    guard(raw, cap)?;
    let boundaries = enumerate_algebra_morphisms(c, r, false, cap)?;
    let actions = enumerate_actions(r, c, cap)?;
    let entries = boundaries
        .par_iter()
        .flat_map_iter(|b| {
            actions.iter().filter_map(move |act| {
                let x = CrossedModule::new(c.clone(), r.clone(), b.clone(), act.clone()).unwrap();
                match classify(&x.check()) {
                    XModStatus::Crossed => Some(CensusEntry { xmod: x, crossed: true }),
                    XModStatus::PreCrossed => Some(CensusEntry { xmod: x, crossed: false }),
                    XModStatus::Invalid => None,
                }
            })
        })
        .collect();
    Ok(XModCensus { entries })
}

/// What to enumerate in [`census`].
#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    pub modulus: u64,
    pub max_rank_c: usize,
    pub max_rank_r: usize,
    pub cap: u128,
}

impl EnumerationSpec {
    pub fn new(modulus: u64, max_rank_c: usize, max_rank_r: usize) -> Self {
        Self {
            modulus,
            max_rank_c,
            max_rank_r,
            cap: DEFAULT_CAP,
        }
    }
}

/// Every pre-crossed module `C -> R` with `rank C ≤ max_rank_c` (from 0)
/// and `1 ≤ rank R ≤ max_rank_r`, with C and R ranging over all valid
/// structure tensors. Order: rank C, rank R, C, R, then boundary-major.
pub fn census(spec: &EnumerationSpec) -> Result<XModCensus> {
    let ring = Zm::new(spec.modulus)?;
    let mut out = XModCensus::default();
    for dc in 0..=spec.max_rank_c {
        let cs = enumerate_algebras(ring, dc, spec.cap)?;
        for dr in 1..=spec.max_rank_r {
            let rs = enumerate_unital_algebras(ring, dr, spec.cap)?;
            for c in &cs {
                for r in &rs {
                    out.entries.extend(enumerate_crossed_modules(r, c, spec.cap)?.entries);
                }
            }
        }
    }
    Ok(out)
}

/// Crossed module morphisms `x -> y`; `f0` ranges over unital algebra
/// maps and `f1` over algebra maps before the squares are tested.
pub fn enumerate_xmod_morphisms(x: &std::sync::Arc<CrossedModule>, y: &std::sync::Arc<CrossedModule>, cap: u128) -> Result<Vec<XModMorphism>> {
    let m = x.r().ring().modulus();
    let raw = candidate_count(m, x.r().rank() * y.r().rank())
        .saturating_mul(candidate_count(m, x.c().rank() * y.c().rank()));
    guard(raw, cap)?;
    let f0s = enumerate_algebra_morphisms(x.r(), y.r(), true, cap)?;
    let f1s = enumerate_algebra_morphisms(x.c(), y.c(), false, cap)?;
    Ok(f1s
        .iter()
        .flat_map(|f1| {
            f0s.iter().filter_map(move |f0| {
                let f = XModMorphism::new(x.clone(), y.clone(), f1.clone(), f0.clone()).unwrap();
                f.check().passed().then_some(f)
            })
        })
        .collect())
}

/// Maps `R -> C′` passing the derivation law and `h(1) = 0`.
pub fn enumerate_derivations(f: &XModMorphism, cap: u128) -> Result<Vec<Derivation>> {
    let ring = f.f0().ring();
    let (dr, dc) = (f.source().r().rank(), f.target().c().rank());
    filter_candidates(ring.modulus(), dc * dr, cap, |v| {
        let d = Derivation::new(f.clone(), LinearMap::new(ring, dc, dr, v).unwrap()).unwrap();
        d.check().passed().then_some(d)
    })
}

/// Maps `R -> C′` passing the derivation law, whatever their value at 1.
pub fn enumerate_derivation_law(f: &XModMorphism, cap: u128) -> Result<Vec<Derivation>> {
    let ring = f.f0().ring();
    let (dr, dc) = (f.source().r().rank(), f.target().c().rank());
    filter_candidates(ring.modulus(), dc * dr, cap, |v| {
        let d = Derivation::new(f.clone(), LinearMap::new(ring, dc, dr, v).unwrap()).unwrap();
        d.check().holds("DERIV").then_some(d)
    })
}

/// Maps `A0 -> A1′` that are homotopies from `f` to `g`.
pub fn enumerate_two_alg_homotopies(f: &TwoAlgMorphism, g: &TwoAlgMorphism, cap: u128) -> Result<Vec<TwoAlgHomotopy>> {
    let ring = f.f0().ring();
    let (d0, d1) = (f.source().a0().rank(), f.target().a1().rank());
    filter_candidates(ring.modulus(), d1 * d0, cap, |v| {
        let h = TwoAlgHomotopy::new(f.clone(), g.clone(), LinearMap::new(ring, d1, d0, v).unwrap()).ok()?;
        h.check().passed().then_some(h)
    })
}

/// Every `(s, t, e)` with `se = te = id`, flattened as `s, t, e`.
pub fn enumerate_two_modules(ring: Zm, d0: usize, d1: usize, cap: u128) -> Result<Vec<TwoModule>> {
    let n = d0 * d1;
    filter_candidates(ring.modulus(), 3 * n, cap, |v| {
        let s = LinearMap::new(ring, d0, d1, v[..n].to_vec()).unwrap();
        let t = LinearMap::new(ring, d0, d1, v[n..2 * n].to_vec()).unwrap();
        let e = LinearMap::new(ring, d1, d0, v[2 * n..].to_vec()).unwrap();
        let tm = TwoModule::new(s, t, e).unwrap();
        let r = tm.check();
        (r.holds("SRC") && r.holds("TGT")).then_some(tm)
    })
}

/// Linear maps `γ: M1 ⊕ M1 -> M1` that satisfy the unit laws
/// `γ(e(s a), a) = a = γ(a, e(t a))` and the source/target laws on every
/// composable pair, checked element by element.
pub fn enumerate_compositions(t: &TwoModule, cap: u128) -> Result<Vec<LinearMap>> {
    let ring = t.ring();
    let d1 = t.d1();
    let pairs = t.composable_pairs().elements(cap)?;
    let cells: Vec<Vec<u64>> = crate::ring::all_vectors(ring, d1).collect();
    if cells.len() as u128 > cap {
        return Err(Error::CapExceeded { count: cells.len() as u128, cap });
    }
    filter_candidates(ring.modulus(), d1 * 2 * d1, cap, |v| {
        let g = LinearMap::new(ring, d1, 2 * d1, v).unwrap();
        let comp = |a: &[u64], b: &[u64]| g.apply(&[a, b].concat());
        let units = cells.iter().all(|a| {
            comp(&t.e().apply(&t.s().apply(a)), a) == *a && comp(a, &t.e().apply(&t.t().apply(a))) == *a
        });
        let ends = units
            && pairs.iter().all(|p| {
                let (a, b) = p.split_at(d1);
                let ab = comp(a, b);
                t.s().apply(&ab) == t.s().apply(a) && t.t().apply(&ab) == t.t().apply(b)
            });
        ends.then_some(g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xmod;

    fn z2() -> Zm {
        Zm::new(2).unwrap()
    }

    #[test]
    fn action_counts() {
        let g = FiniteAlgebra::ground(z2());
        let triv = FiniteAlgebra::zero_multiplication(z2(), 1);
        assert_eq!(enumerate_actions(&g, &triv, DEFAULT_CAP).unwrap().len(), 1);
        assert_eq!(enumerate_actions(&g, &g, DEFAULT_CAP).unwrap().len(), 1);
        let dual = FiniteAlgebra::truncated_polynomial(z2(), 2);
        // x must act nilpotently on a rank-1 module: only x ▶ c = 0
        assert_eq!(enumerate_actions(&dual, &triv, DEFAULT_CAP).unwrap().len(), 1);
        let err = enumerate_actions(&dual, &FiniteAlgebra::zero_multiplication(z2(), 2), 10);
        assert!(matches!(err, Err(Error::CapExceeded { count: 256, cap: 10 })));
    }

    #[test]
    fn crossed_modules_on_a_trivial_module() {
        let g = FiniteAlgebra::ground(z2());
        let triv = FiniteAlgebra::zero_multiplication(z2(), 1);
        let census = enumerate_crossed_modules(&g, &triv, DEFAULT_CAP).unwrap();
        // ∂ = id is not multiplicative (c·c = 0 but 1·1 = 1)
        assert_eq!(census.crossed_count(), 1);
        assert!(census.crossed().all(|x| x.boundary().is_zero()));
    }

    #[test]
    fn census_contains_example_one_and_a_precrossed_specimen() {
        let dual = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let inc = xmod::from_ideal(&dual, &[vec![0, 1]]).unwrap();
        let census = enumerate_crossed_modules(&dual, inc.c(), DEFAULT_CAP).unwrap();
        assert!(census.crossed().any(|x| x.same_data(&inc)));

        let g = FiniteAlgebra::ground(z2());
        let census = enumerate_crossed_modules(&g, &g, DEFAULT_CAP).unwrap();
        assert_eq!(census.pre_crossed_only().count(), 1);
    }

    #[test]
    fn refiltering_is_identity() {
        let dual = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let acts = enumerate_actions(&dual, &dual, DEFAULT_CAP).unwrap();
        assert!(acts.iter().all(|a| a.check(&dual, &dual, true).passed()));
        let again = enumerate_actions(&dual, &dual, DEFAULT_CAP).unwrap();
        assert_eq!(acts, again);
    }

    #[test]
    fn derivations_on_ideal_inclusion() {
        let x = std::sync::Arc::new(xmod::from_ideal(&FiniteAlgebra::truncated_polynomial(z2(), 2), &[vec![0, 1]]).unwrap());
        let f = XModMorphism::identity(x);
        let ds = enumerate_derivations(&f, DEFAULT_CAP).unwrap();
        assert_eq!(ds.len(), 2);
        assert!(ds[0].map().is_zero());
    }

    #[test]
    fn forced_composition_is_unique_on_projection_module() {
        let z = z2();
        let p = LinearMap::new(z, 1, 2, vec![1, 0]).unwrap();
        let e = LinearMap::new(z, 2, 1, vec![1, 0]).unwrap();
        let t = TwoModule::new(p.clone(), p, e).unwrap();
        let survivors = enumerate_compositions(&t, DEFAULT_CAP).unwrap();
        assert!(!survivors.is_empty());
        for g in &survivors {
            for pair in t.composable_pairs().elements(64).unwrap() {
                let (a, b) = pair.split_at(2);
                assert_eq!(g.apply(&pair), t.compose_unchecked(a, b));
            }
        }
    }
}
