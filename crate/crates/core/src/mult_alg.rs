//! Multipliers, bimultipliers, `μ: C -> M(C)` and the multiplication
//! 2-algebra.

use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::ring::{vec_ops, FiniteAlgebra, LinearMap, Solver, Submodule, Zm};
use crate::two_cat::TwoAlgebra;

/// `{a : a·e_j = 0 for all j}`.
pub fn annihilator(c: &FiniteAlgebra) -> Submodule {
    let d = c.rank();
    let cols: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).flat_map(|j| c.basis_product(i, j)).collect())
        .collect();
    LinearMap::from_columns(c.ring(), d * d, &cols).unwrap().kernel()
}

/// The span of all products `e_i e_j`.
pub fn square_span(c: &FiniteAlgebra) -> Submodule {
    let d = c.rank();
    let products: Vec<Vec<u64>> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| c.basis_product(i, j))
        .collect();
    Submodule::span(c.ring(), d, &products)
}

/// Solution space of a linear condition on `n` unknowns, where `f` maps an
/// unknown vector to the vector of residuals.
fn solution_space(ring: Zm, n: usize, f: impl Fn(&[u64]) -> Vec<u64>) -> Submodule {
    let cols: Vec<Vec<u64>> = (0..n).map(|k| f(&vec_ops::unit_vector(n, k))).collect();
    let rows = cols.first().map_or(0, Vec::len);
    LinearMap::from_columns(ring, rows, &cols).unwrap().kernel()
}

/// Column-major vectorisation of a `d×d` map.
fn vectorize(f: &LinearMap) -> Vec<u64> {
    f.columns().concat()
}

fn unvectorize(ring: Zm, d: usize, v: &[u64]) -> LinearMap {
    LinearMap::from_fn(ring, d, d, |i, j| v[j * d + i])
}

/// The multiplier algebra `M(C)` on an explicit basis of maps.
#[derive(Clone, Debug)]
pub struct MultiplierAlgebra {
    base: FiniteAlgebra,
    basis_maps: Vec<LinearMap>,
    algebra: FiniteAlgebra,
    solver: Solver,
}

impl MultiplierAlgebra {
    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn basis_maps(&self) -> &[LinearMap] {
        &self.basis_maps
    }

    /// `M(C)` as a structure-constant algebra; unit is the identity map.
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.basis_maps.len()
    }

    /// Coordinates of a map in the multiplier basis, if it is a multiplier.
    pub fn coordinates(&self, f: &LinearMap) -> Option<Vec<u64>> {
        self.solver.solve(&vectorize(f))
    }

    /// The map with the given coordinates.
    pub fn map_of(&self, coords: &[u64]) -> LinearMap {
        let z = self.base.ring();
        let d = self.base.rank();
        let mut out = LinearMap::zero(z, d, d);
        for (k, &a) in coords.iter().enumerate() {
            if a != 0 {
                let scaled = LinearMap::from_fn(z, d, d, |i, j| z.mul(a, self.basis_maps[k].get(i, j)));
                out = out.add(&scaled);
            }
        }
        out
    }
}

fn multiplier_residual(c: &FiniteAlgebra, lam: &LinearMap) -> Vec<u64> {
    let z = c.ring();
    let d = c.rank();
    let mut out = Vec::with_capacity(d * d * d);
    for a in 0..d {
        let la = lam.column(a);
        for b in 0..d {
            let lhs = lam.apply(&c.basis_product(a, b));
            let rhs = c.product(&la, &c.basis(b));
            out.extend(vec_ops::sub(z, &lhs, &rhs));
        }
    }
    out
}

/// Fails with a precondition error unless `Ann(C) = 0` or `C² = C`.
pub fn require_hypothesis(c: &FiniteAlgebra) -> Result<()> {
    let ann_zero = annihilator(c).is_zero();
    let square_full = square_span(c).is_full();
    if ann_zero || square_full {
        Ok(())
    } else {
        Err(Error::Precondition(
            "Ann(C) = 0 fails and C² = C fails".into(),
        ))
    }
}

/// Solves `λ(e_a e_b) = λ(e_a) e_b` for `λ: C -> C`.
///
/// The basis is the free basis of the solution space in column-major
/// coordinates.
pub fn multipliers(c: &FiniteAlgebra) -> Result<MultiplierAlgebra> {
    crate::error::require(c.check())?;
    require_hypothesis(c)?;
    let z = c.ring();
    let d = c.rank();
    let space = solution_space(z, d * d, |v| multiplier_residual(c, &unvectorize(z, d, v)));
    let basis = space.free_basis().map_err(|_| Error::NotFree {
        what: "the multiplier space".into(),
        modulus: z.modulus(),
    })?;
    let basis_maps: Vec<LinearMap> = basis.iter().map(|v| unvectorize(z, d, v)).collect();
    let solver = Solver::new(z, d * d, &basis);
    let k = basis_maps.len();

    let mut report = Report::new("multiplier algebra");
    let mut comm = None;
    let mut table = Vec::with_capacity(k * k * k);
    for (a, la) in basis_maps.iter().enumerate() {
        for (b, lb) in basis_maps.iter().enumerate() {
            let ab = la.compose(lb);
            if comm.is_none() && ab != lb.compose(la) {
                comm = Some(Witness::new([a, b], "λ_a λ_b ≠ λ_b λ_a"));
            }
            let coords = solver
                .solve(&vectorize(&ab))
                .expect("multipliers are closed under composition");
            table.extend(coords);
        }
    }
    report.record("MULT-COMM", comm);
    if !report.passed() {
        return Err(Error::Integrity(Box::new(report)));
    }
    let unit = solver
        .solve(&vectorize(&LinearMap::identity(z, d)))
        .expect("the identity is a multiplier");
    let algebra = FiniteAlgebra::new(z, k, table, Some(unit))?;
    Ok(MultiplierAlgebra {
        base: c.clone(),
        basis_maps,
        algebra,
        solver,
    })
}

/// `μ(c)` = coordinates of multiplication-by-`c`.
pub fn mu(m: &MultiplierAlgebra) -> Result<LinearMap> {
    let c = &m.base;
    let mut cols = Vec::with_capacity(c.rank());
    for j in 0..c.rank() {
        let coords = m.coordinates(&c.multiplication_map(&c.basis(j))).ok_or_else(|| {
            let mut r = Report::new("μ");
            r.record(
                "MU-SPAN",
                Some(Witness::new([j], "multiplication by a basis element is not a multiplier")),
            );
            Error::Integrity(Box::new(r))
        })?;
        cols.push(coords);
    }
    LinearMap::from_columns(c.ring(), m.rank(), &cols)
}

/// A pair `(γ, δ)` with `γ(cc′) = γ(c)c′`, `δ(cc′) = cδ(c′)` and
/// `cγ(c′) = δ(c)c′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimultiplierPair {
    pub gamma: LinearMap,
    pub delta: LinearMap,
}

impl BimultiplierPair {
    pub fn check(&self, c: &FiniteAlgebra) -> Report {
        let mut r = Report::new("bimultiplier");
        let v = bimultiplier_residual(c, &self.gamma, &self.delta);
        let d = c.rank();
        let block = d * d * d;
        for (n, id) in ["BIM-GAMMA", "BIM-DELTA", "BIM-MIXED"].iter().enumerate() {
            let part = &v[n * block..(n + 1) * block];
            let w = part.chunks(d).position(|x| !vec_ops::is_zero(x)).map(|p| {
                Witness::new([p / d, p % d], "equation does not hold on this basis pair")
            });
            r.record(id, w);
        }
        r
    }

    pub fn is_diagonal(&self) -> bool {
        self.gamma == self.delta
    }
}

fn bimultiplier_residual(c: &FiniteAlgebra, g: &LinearMap, dl: &LinearMap) -> Vec<u64> {
    let z = c.ring();
    let d = c.rank();
    let mut out = Vec::with_capacity(3 * d * d * d);
    for a in 0..d {
        for b in 0..d {
            let lhs = g.apply(&c.basis_product(a, b));
            out.extend(vec_ops::sub(z, &lhs, &c.product(&g.column(a), &c.basis(b))));
        }
    }
    for a in 0..d {
        for b in 0..d {
            let lhs = dl.apply(&c.basis_product(a, b));
            out.extend(vec_ops::sub(z, &lhs, &c.product(&c.basis(a), &dl.column(b))));
        }
    }
    for a in 0..d {
        for b in 0..d {
            let lhs = c.product(&c.basis(a), &g.column(b));
            out.extend(vec_ops::sub(z, &lhs, &c.product(&dl.column(a), &c.basis(b))));
        }
    }
    out
}

/// All bimultiplier pairs, as a submodule of `(Z/m)^{2d²}` with `γ` then
/// `δ` vectorised column-major.
pub fn bimultiplier_space(c: &FiniteAlgebra) -> Submodule {
    let z = c.ring();
    let d = c.rank();
    let n = d * d;
    solution_space(z, 2 * n, |v| {
        bimultiplier_residual(c, &unvectorize(z, d, &v[..n]), &unvectorize(z, d, &v[n..]))
    })
}

/// Howell generators of the bimultiplier space.
pub fn bimultipliers(c: &FiniteAlgebra) -> Vec<BimultiplierPair> {
    let z = c.ring();
    let d = c.rank();
    let n = d * d;
    bimultiplier_space(c)
        .generators()
        .iter()
        .map(|v| BimultiplierPair {
            gamma: unvectorize(z, d, &v[..n]),
            delta: unvectorize(z, d, &v[n..]),
        })
        .collect()
}

/// The 2-algebra of multiplications: `A0 = M(C)`, `A1 = C ⋊ M(C)` with
/// `(x,f)(x′,f′) = (f(x′) + f′(x) + xx′, ff′)`, `s(x,f) = f`,
/// `t(x,f) = μ(x) + f`, `e(f) = (0,f)`.
pub fn multiplication_two_algebra(c: &FiniteAlgebra) -> Result<TwoAlgebra> {
    let m = multipliers(c)?;
    let mu = mu(&m)?;
    let z = c.ring();
    let (d, k) = (c.rank(), m.rank());
    let n = d + k;
    let a0 = m.algebra().clone();

    let embed_c = |x: &[u64]| vec_ops::concat(x, &vec![0; k]);
    let embed_m = |f: &[u64]| vec_ops::concat(&vec![0; d], f);
    let mut table = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let v = match (i < d, j < d) {
                (true, true) => embed_c(&c.basis_product(i, j)),
                (true, false) => embed_c(&m.basis_maps()[j - d].apply(&c.basis(i))),
                (false, true) => embed_c(&m.basis_maps()[i - d].apply(&c.basis(j))),
                (false, false) => embed_m(&a0.basis_product(i - d, j - d)),
            };
            table.extend(v);
        }
    }
    let unit = embed_m(a0.unit().expect("M(C) is unital"));
    let a1 = FiniteAlgebra::new(z, n, table, Some(unit))?;

    let s = LinearMap::from_fn(z, k, n, |r, col| u64::from(col >= d && col - d == r));
    let t = LinearMap::from_fn(z, k, n, |r, col| {
        if col < d {
            mu.get(r, col)
        } else {
            u64::from(col - d == r)
        }
    });
    let e = s.transpose();
    TwoAlgebra::new(a0, a1, s, t, e)
}
