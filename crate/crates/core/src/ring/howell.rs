//! Submodules of `(Z/m)^n` in Howell form.
//!
//! The Howell form is the canonical generating set for a submodule of a
//! free module over Z/m: rows in echelon form, pivots normalised to
//! divisors of m, entries above each pivot reduced modulo it, and the
//! Howell property (every span vector vanishing on the first `k` columns
//! lies in the span of the rows whose pivot is at column `k` or later).
//! Two generating sets span the same submodule iff their Howell forms are
//! equal, and membership is decided by greedy reduction.

use std::collections::BTreeSet;

use super::linear::{vec_ops, LinearMap};
use super::zm::{ext_gcd, Zm};
use crate::error::{Error, Result};

/// Unimodular combination of `p` and `r` on column `col`.
///
/// Returns `(p', r')` with `p'[col] = gcd(p[col], r[col])` and `r'[col] = 0`.
fn gcd_combine(z: Zm, p: &[u64], r: &[u64], col: usize) -> (Vec<u64>, Vec<u64>) {
    let (a, b) = (p[col] as i128, r[col] as i128);
    let (g, x, y) = ext_gcd(a, b);
    let x = z.reduce_signed(x as i64);
    let y = z.reduce_signed(y as i64);
    let bg = z.reduce_signed((-(b / g)) as i64);
    let ag = z.reduce((a / g) as u64);
    let np = p
        .iter()
        .zip(r)
        .map(|(&u, &v)| z.add(z.mul(x, u), z.mul(y, v)))
        .collect();
    let nr = p
        .iter()
        .zip(r)
        .map(|(&u, &v)| z.add(z.mul(bg, u), z.mul(ag, v)))
        .collect();
    (np, nr)
}

/// Howell form of the row span of `rows` in `(Z/m)^ncols`, zero rows removed.
pub fn howell_form(z: Zm, ncols: usize, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let m = z.modulus();
    let mut pending: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length does not match ambient rank");
            r.iter().map(|&v| z.reduce(v)).collect::<Vec<_>>()
        })
        .filter(|r| !vec_ops::is_zero(r))
        .collect();
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();

    for col in 0..ncols {
        let mut pivot: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(pending.len());
        for row in pending.drain(..) {
            if row[col] == 0 {
                rest.push(row);
                continue;
            }
            pivot = Some(match pivot.take() {
                None => row,
                Some(p) => {
                    let (np, nr) = gcd_combine(z, &p, &row, col);
                    if !vec_ops::is_zero(&nr) {
                        rest.push(nr);
                    }
                    np
                }
            });
        }
        if let Some(p) = pivot {
            let (u, h) = z.normalize(p[col]);
            let p = vec_ops::scale(z, u, &p);
            debug_assert_eq!(p[col], h);
            // (m/h)·p vanishes at `col`; keeping it preserves the Howell property.
            let ann = vec_ops::scale(z, m / h, &p);
            if !vec_ops::is_zero(&ann) {
                rest.push(ann);
            }
            echelon.push((col, p));
        }
        pending = rest;
    }
    debug_assert!(pending.iter().all(|r| vec_ops::is_zero(r)));

    for k in 0..echelon.len() {
        let (pc, ref pivot_row) = echelon[k];
        let pivot_row = pivot_row.clone();
        let h = pivot_row[pc];
        for (_, row) in echelon.iter_mut().take(k) {
            let q = row[pc] / h;
            if q != 0 {
                vec_ops::axpy(z, row, z.neg(q), &pivot_row);
            }
        }
    }
    echelon.into_iter().map(|(_, r)| r).collect()
}

fn pivot_of(row: &[u64]) -> usize {
    row.iter().position(|&v| v != 0).expect("Howell rows are nonzero")
}

/// A submodule of `(Z/m)^ambient`, held as its Howell form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    ring: Zm,
    ambient: usize,
    rows: Vec<Vec<u64>>,
}

impl Submodule {
    pub fn span(ring: Zm, ambient: usize, generators: &[Vec<u64>]) -> Self {
        Self {
            ring,
            ambient,
            rows: howell_form(ring, ambient, generators),
        }
    }

    pub fn zero(ring: Zm, ambient: usize) -> Self {
        Self {
            ring,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ring: Zm, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| vec_ops::unit_vector(ambient, i)).collect();
        Self { ring, ambient, rows }
    }

    pub fn ring(&self) -> Zm {
        self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// The Howell rows.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `(pivot column, pivot value)` for each Howell row.
    pub fn pivots(&self) -> Vec<(usize, u64)> {
        self.rows
            .iter()
            .map(|r| {
                let p = pivot_of(r);
                (p, r[p])
            })
            .collect()
    }

    /// Canonical remainder of `v` modulo the submodule.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient rank");
        let z = self.ring;
        let mut v: Vec<u64> = v.iter().map(|&x| z.reduce(x)).collect();
        for row in &self.rows {
            let p = pivot_of(row);
            let q = v[p] / row[p];
            if q != 0 {
                vec_ops::axpy(z, &mut v, z.neg(q), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        vec_ops::is_zero(&self.reduce(v))
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
            && self.pivots().iter().all(|&(_, h)| h == 1)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Submodule::span(self.ring, self.ambient, &gens)
    }

    /// Number of elements, `∏ m / pivot`.
    pub fn cardinality(&self) -> u128 {
        let m = self.ring.modulus() as u128;
        self.pivots()
            .iter()
            .map(|&(_, h)| m / h as u128)
            .product()
    }

    /// Every element, in a deterministic order. Fails above `cap` elements.
    pub fn elements(&self, cap: u128) -> Result<Vec<Vec<u64>>> {
        let count = self.cardinality();
        if count > cap {
            return Err(Error::CapExceeded { count, cap });
        }
        let z = self.ring;
        let m = z.modulus();
        let orders: Vec<u64> = self.pivots().iter().map(|&(_, h)| m / h).collect();
        let mut out = BTreeSet::new();
        let mut coeffs = vec![0u64; self.rows.len()];
        loop {
            let mut v = vec![0u64; self.ambient];
            for (c, row) in coeffs.iter().zip(&self.rows) {
                vec_ops::axpy(z, &mut v, *c, row);
            }
            out.insert(v);
            // odometer over [0, order_i)
            let mut i = coeffs.len();
            loop {
                if i == 0 {
                    return Ok(out.into_iter().collect());
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < orders[i] {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// A basis of the submodule, if it is free.
    ///
    /// When every Howell pivot is 1 the Howell rows are returned (the
    /// reduced echelon basis). Otherwise a Smith decomposition decides
    /// freeness and supplies a basis.
    pub fn free_basis(&self) -> Result<Vec<Vec<u64>>> {
        if self.pivots().iter().all(|&(_, h)| h == 1) {
            return Ok(self.rows.clone());
        }
        smith_basis(self.ring, self.ambient, &self.rows).ok_or_else(|| Error::NotFree {
            what: "submodule".into(),
            modulus: self.ring.modulus(),
        })
    }
}

/// Kernel of `f` as a submodule of its domain.
///
/// Howell form of `[fᵀ | I]`: the rows whose first block vanishes span
/// the kernel, by the Howell property.
pub fn kernel(f: &LinearMap) -> Submodule {
    let z = f.ring();
    let (cod, dom) = (f.codomain_rank(), f.domain_rank());
    let aug: Vec<Vec<u64>> = (0..dom)
        .map(|j| vec_ops::concat(&f.column(j), &vec_ops::unit_vector(dom, j)))
        .collect();
    let h = howell_form(z, cod + dom, &aug);
    let gens: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|r| vec_ops::is_zero(&r[..cod]))
        .map(|r| r[cod..].to_vec())
        .collect();
    Submodule::span(z, dom, &gens)
}

/// Solves `Σ x_i v_i = target` for the coefficient vector `x`.
///
/// Keeps the Howell form of `[V | I]` so repeated solves are cheap.
#[derive(Clone, Debug)]
pub struct Solver {
    ring: Zm,
    ambient: usize,
    count: usize,
    aug: Vec<Vec<u64>>,
}

impl Solver {
    pub fn new(ring: Zm, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        let count = vectors.len();
        let rows: Vec<Vec<u64>> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| vec_ops::concat(v, &vec_ops::unit_vector(count, i)))
            .collect();
        Self {
            ring,
            ambient,
            count,
            aug: howell_form(ring, ambient + count, &rows),
        }
    }

    /// Some coefficient vector, or `None` if `target` is outside the span.
    /// Unique when the vectors are independent.
    pub fn solve(&self, target: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(target.len(), self.ambient);
        let z = self.ring;
        let mut v = vec_ops::concat(target, &vec![0; self.count]);
        for row in &self.aug {
            let p = pivot_of(row);
            if p >= self.ambient {
                break;
            }
            let q = v[p] / row[p];
            if q != 0 {
                vec_ops::axpy(z, &mut v, z.neg(q), row);
            }
        }
        if !vec_ops::is_zero(&v[..self.ambient]) {
            return None;
        }
        Some(vec_ops::neg(z, &v[self.ambient..]))
    }
}

pub fn solve(ring: Zm, vectors: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    Solver::new(ring, target.len(), vectors).solve(target)
}

/// True when `vectors` are Z/m-linearly independent.
pub fn independent(ring: Zm, ambient: usize, vectors: &[Vec<u64>]) -> bool {
    let as_map = LinearMap::from_columns(ring, ambient, vectors).expect("consistent lengths");
    as_map.kernel().is_zero()
}

/// Smith reduction of the row span; returns a basis iff every invariant
/// factor is a unit or zero.
fn smith_basis(z: Zm, ncols: usize, rows: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let k = a.len();
    // w tracks V^{-1}: the span of `rows` equals the row span of a·w.
    let mut w: Vec<Vec<u64>> = (0..ncols).map(|i| vec_ops::unit_vector(ncols, i)).collect();
    let lim = k.min(ncols);
    let mut t = 0;
    while t < lim {
        let best = (t..k)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| z.ideal_generator(a[i][j]));
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        w.swap(t, bj);
        loop {
            let (u, _) = z.normalize(a[t][t]);
            a[t] = vec_ops::scale(z, u, &a[t]);
            for i in t + 1..k {
                if a[i][t] != 0 {
                    let (np, nr) = gcd_combine(z, &a[t], &a[i], t);
                    a[t] = np;
                    a[i] = nr;
                }
            }
            let (u, _) = z.normalize(a[t][t]);
            a[t] = vec_ops::scale(z, u, &a[t]);
            for j in t + 1..ncols {
                if a[t][j] != 0 {
                    column_combine(z, &mut a, &mut w, t, j);
                }
            }
            let col_clear = (t + 1..k).all(|i| a[i][t] == 0);
            if !col_clear {
                continue;
            }
            let h = z.ideal_generator(a[t][t]);
            let offender = (t + 1..k).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(h)));
            match offender {
                Some(i) => {
                    let ri = a[i].clone();
                    vec_ops::axpy(z, &mut a[t], 1, &ri);
                }
                None => break,
            }
        }
        t += 1;
    }
    let mut basis = Vec::new();
    for t in 0..lim {
        match z.ideal_generator(a[t][t]) {
            1 => basis.push(w[t].clone()),
            g if g == z.modulus() => {}
            _ => return None,
        }
    }
    Some(basis)
}

/// Column operation clearing `a[t][j]` into `a[t][t]`, with the inverse
/// operation applied to the rows of `w`.
fn column_combine(z: Zm, a: &mut [Vec<u64>], w: &mut [Vec<u64>], t: usize, j: usize) {
    let (ai, bi) = (a[t][t] as i128, a[t][j] as i128);
    let (g, x, y) = ext_gcd(ai, bi);
    let ag = z.reduce((ai / g) as u64);
    let bg = z.reduce((bi / g) as u64);
    let x = z.reduce_signed(x as i64);
    let y = z.reduce_signed(y as i64);
    for row in a.iter_mut() {
        let (ct, cj) = (row[t], row[j]);
        row[t] = z.add(z.mul(x, ct), z.mul(y, cj));
        row[j] = z.sub(z.mul(ag, cj), z.mul(bg, ct));
    }
    let (wt, wj) = (w[t].clone(), w[j].clone());
    for c in 0..wt.len() {
        w[t][c] = z.add(z.mul(ag, wt[c]), z.mul(bg, wj[c]));
        w[j][c] = z.sub(z.mul(x, wj[c]), z.mul(y, wt[c]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::linear::all_vectors;

    fn z(m: u64) -> Zm {
        Zm::new(m).unwrap()
    }

    /// Span by closure under addition, independent of the Howell code.
    fn closure(z: Zm, n: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::from([vec![0; n]]);
        loop {
            let mut next = set.clone();
            for v in &set {
                for g in gens {
                    next.insert(vec_ops::add(z, v, g));
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn single_two_over_z4_is_canonical() {
        assert_eq!(howell_form(z(4), 1, &[vec![2]]), vec![vec![2]]);
        assert!(howell_form(z(4), 3, &[]).is_empty());
    }

    #[test]
    fn span_of_11_02_over_z4_has_eight_elements() {
        let gens = vec![vec![1, 1], vec![0, 2]];
        let oracle = closure(z(4), 2, &gens);
        assert_eq!(oracle.len(), 8);
        let s = Submodule::span(z(4), 2, &gens);
        let elems: BTreeSet<_> = s.elements(1 << 20).unwrap().into_iter().collect();
        assert_eq!(elems, oracle);
        assert_eq!(s.cardinality(), 8);
    }

    #[test]
    fn howell_property_needs_annihilator_rows() {
        // (2,1) over Z4: 2·(2,1) = (0,2) must appear as its own row.
        let h = howell_form(z(4), 2, &[vec![2, 1]]);
        assert_eq!(h, vec![vec![2, 1], vec![0, 2]]);
        let s = Submodule::span(z(4), 2, &[vec![2, 1]]);
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[0, 1]));
    }

    #[test]
    fn kernel_examples() {
        let times_two = LinearMap::new(z(4), 1, 1, vec![2]).unwrap();
        assert_eq!(times_two.kernel().generators(), &[vec![2]]);
        assert!(LinearMap::identity(z(6), 3).kernel().is_zero());
        let zero = LinearMap::zero(z(2), 2, 2);
        assert_eq!(zero.kernel().generators(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn kernel_is_exact_exhaustively() {
        let f = LinearMap::new(z(6), 2, 3, vec![2, 3, 0, 4, 0, 3]).unwrap();
        let k = f.kernel();
        for v in all_vectors(z(6), 3) {
            assert_eq!(vec_ops::is_zero(&f.apply(&v)), k.contains(&v), "{v:?}");
        }
    }

    #[test]
    fn free_basis_of_non_echelon_free_module() {
        // span{(3,2)} over Z6 is free of rank 1 but its Howell pivot is 3.
        let s = Submodule::span(z(6), 2, &[vec![3, 2]]);
        assert_ne!(s.pivots()[0].1, 1);
        let b = s.free_basis().unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(Submodule::span(z(6), 2, &b), s);
        assert!(independent(z(6), 2, &b));
    }

    #[test]
    fn torsion_submodule_is_not_free() {
        let s = Submodule::span(z(4), 1, &[vec![2]]);
        assert!(matches!(s.free_basis(), Err(Error::NotFree { .. })));
    }

    #[test]
    fn solver_recovers_coefficients() {
        let vs = vec![vec![1, 2, 0], vec![0, 1, 3]];
        let solver = Solver::new(z(5), 3, &vs);
        let target = vec![3, 4, 4];
        match solver.solve(&target) {
            Some(x) => {
                let mut acc = vec![0; 3];
                for (c, v) in x.iter().zip(&vs) {
                    vec_ops::axpy(z(5), &mut acc, *c, v);
                }
                assert_eq!(acc, target);
            }
            None => panic!("target should be in the span"),
        }
        assert!(solver.solve(&[0, 0, 1]).is_none());
    }
}
