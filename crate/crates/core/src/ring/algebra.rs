use std::fmt;

use super::howell::Solver;
use super::linear::{all_vectors, vec_ops, LinearMap};
use super::zm::Zm;
use crate::error::{Error, Result};
use crate::report::{Report, Witness};

/// A finite-rank commutative algebra over Z/m given by structure constants
/// `e_i·e_j = Σ_l c[i][j][l] e_l`.
///
/// Construction checks shapes only; the algebra axioms are verified by
/// [`FiniteAlgebra::check`].
#[derive(Clone)]
pub struct FiniteAlgebra {
    ring: Zm,
    rank: usize,
    table: Vec<u64>,
    unit: Option<Vec<u64>>,
    labels: Option<Vec<String>>,
}

impl FiniteAlgebra {
    pub fn new(ring: Zm, rank: usize, table: Vec<u64>, unit: Option<Vec<u64>>) -> Result<Self> {
        if table.len() != rank * rank * rank {
            return Err(Error::shape(format!(
                "rank-{rank} structure tensor needs {} entries, got {}",
                rank * rank * rank,
                table.len()
            )));
        }
        if let Some(u) = &unit {
            if u.len() != rank {
                return Err(Error::shape(format!(
                    "unit has length {} but rank is {rank}",
                    u.len()
                )));
            }
        }
        Ok(Self {
            ring,
            rank,
            table: table.into_iter().map(|v| ring.reduce(v)).collect(),
            unit: unit.map(|u| u.into_iter().map(|v| ring.reduce(v)).collect()),
            labels: None,
        })
    }

    /// From sparse `(i, j, l, value)` entries. Entries are taken literally;
    /// commutativity is not filled in.
    pub fn from_sparse(
        ring: Zm,
        rank: usize,
        entries: &[(usize, usize, usize, u64)],
        unit: Option<Vec<u64>>,
    ) -> Result<Self> {
        let mut table = vec![0; rank * rank * rank];
        for &(i, j, l, v) in entries {
            if i >= rank || j >= rank || l >= rank {
                return Err(Error::shape(format!(
                    "entry ({i},{j},{l}) outside rank {rank}"
                )));
            }
            table[(i * rank + j) * rank + l] = ring.reduce(v);
        }
        Self::new(ring, rank, table, unit)
    }

    /// Z/m itself, rank 1 with `e0·e0 = e0`.
    pub fn ground(ring: Zm) -> Self {
        Self::new(ring, 1, vec![1], Some(vec![1]))
            .unwrap()
            .with_labels(vec!["1".into()])
    }

    /// Rank `rank` with all products zero (a bare Z/m-module).
    pub fn zero_multiplication(ring: Zm, rank: usize) -> Self {
        Self::new(ring, rank, vec![0; rank * rank * rank], None).unwrap()
    }

    /// `Z/m[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(ring: Zm, n: usize) -> Self {
        assert!(n >= 1, "need at least the constant term");
        let mut table = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    table[(i * n + j) * n + i + j] = 1;
                }
            }
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Self::new(ring, n, table, Some(vec_ops::unit_vector(n, 0)))
            .unwrap()
            .with_labels(labels)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank, "one label per basis element");
        self.labels = Some(labels);
        self
    }

    pub fn with_unit(mut self, unit: Option<Vec<u64>>) -> Self {
        if let Some(u) = &unit {
            assert_eq!(u.len(), self.rank, "unit length must equal rank");
        }
        self.unit = unit;
        self
    }

    /// Same algebra with `unit` set to the detected unit, if one exists.
    pub fn with_detected_unit(self) -> Self {
        let unit = self.find_unit();
        self.with_unit(unit)
    }

    pub fn ring(&self) -> Zm {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn unit(&self) -> Option<&[u64]> {
        self.unit.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> u64 {
        self.table[(i * self.rank + j) * self.rank + l]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<u64> {
        let base = (i * self.rank + j) * self.rank;
        self.table[base..base + self.rank].to_vec()
    }

    pub fn basis(&self, i: usize) -> Vec<u64> {
        vec_ops::unit_vector(self.rank, i)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank]
    }

    /// Product of two elements; errors if either has the wrong rank.
    pub fn mul(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.rank || y.len() != self.rank {
            return Err(Error::shape(format!(
                "elements of lengths {} and {} do not belong to a rank-{} algebra",
                x.len(),
                y.len(),
                self.rank
            )));
        }
        Ok(self.product(x, y))
    }

    /// Product without the rank check. Panics on mismatched lengths.
    pub fn product(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let z = self.ring;
        let d = self.rank;
        let mut out = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let w = z.mul(xi, yj);
                let base = (i * d + j) * d;
                for (l, o) in out.iter_mut().enumerate() {
                    *o = z.mul_add(*o, w, self.table[base + l]);
                }
            }
        }
        out
    }

    /// Multiplication-by-`x` as a linear map.
    pub fn multiplication_map(&self, x: &[u64]) -> LinearMap {
        let cols: Vec<Vec<u64>> = (0..self.rank).map(|j| self.product(x, &self.basis(j))).collect();
        LinearMap::from_columns(self.ring, self.rank, &cols).unwrap()
    }

    pub fn is_zero_multiplication(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// Structural equality: same ring, rank and structure constants.
    /// Units and labels are ignored.
    pub fn same_structure(&self, other: &FiniteAlgebra) -> bool {
        self.ring == other.ring && self.rank == other.rank && self.table == other.table
    }

    /// Solves `u·e_j = e_j` for all `j`.
    pub fn find_unit(&self) -> Option<Vec<u64>> {
        let d = self.rank;
        // unknown u ∈ (Z/m)^d; the equations stack into a d²×d system
        let columns: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).flat_map(|j| self.basis_product(i, j)).collect())
            .collect();
        let target: Vec<u64> = (0..d).flat_map(|j| self.basis(j)).collect();
        if d == 0 {
            return Some(Vec::new());
        }
        Solver::new(self.ring, d * d, &columns).solve(&target)
    }

    /// Checks commutativity, associativity and (if a unit is declared)
    /// the unit law, all on basis tuples.
    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("algebra of rank {} over Z/{}", self.rank, self.ring.modulus()));
        self.check_into(&mut r);
        r
    }

    pub(crate) fn check_into(&self, r: &mut Report) {
        let d = self.rank;

        let comm = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.basis_product(i, j) != self.basis_product(j, i))
            .map(|(i, j)| {
                Witness::new(
                    [i, j],
                    format!(
                        "e{i}·e{j} = {:?} but e{j}·e{i} = {:?}",
                        self.basis_product(i, j),
                        self.basis_product(j, i)
                    ),
                )
            });
        r.record("COMM", comm);

        let mut assoc = None;
        'outer: for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for q in 0..d {
                    let left = self.product(&ij, &self.basis(q));
                    let jq = self.basis_product(j, q);
                    let right = self.product(&self.basis(i), &jq);
                    if left != right {
                        assoc = Some(Witness::new(
                            [i, j, q],
                            format!("(e{i}e{j})e{q} = {left:?} but e{i}(e{j}e{q}) = {right:?}"),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        r.record("ASSOC", assoc);

        if let Some(u) = &self.unit {
            let bad = (0..d).find(|&j| self.product(u, &self.basis(j)) != self.basis(j));
            r.record(
                "UNIT",
                bad.map(|j| {
                    Witness::new(
                        [j],
                        format!("1·e{j} = {:?}", self.product(u, &self.basis(j))),
                    )
                }),
            );
        }
    }

    /// Element-level check of the same axioms over all `m^rank` elements.
    pub fn check_exhaustive(&self, cap: u128) -> Result<Report> {
        let count = (self.ring.modulus() as u128).pow(self.rank as u32);
        if count > cap {
            return Err(Error::CapExceeded { count, cap });
        }
        let elems: Vec<Vec<u64>> = all_vectors(self.ring, self.rank).collect();
        let mut r = Report::new("exhaustive algebra check");
        let mut comm = None;
        let mut assoc = None;
        'outer: for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate() {
                let xy = self.product(x, y);
                if comm.is_none() && xy != self.product(y, x) {
                    comm = Some(Witness::new([a, b], format!("{x:?}·{y:?} not commutative")));
                }
                for (c, w) in elems.iter().enumerate() {
                    if self.product(&xy, w) != self.product(x, &self.product(y, w)) {
                        assoc = Some(Witness::new([a, b, c], format!("{x:?},{y:?},{w:?} not associative")));
                        break 'outer;
                    }
                }
            }
        }
        r.record("COMM", comm);
        r.record("ASSOC", assoc);
        if let Some(u) = &self.unit {
            let bad = elems.iter().position(|x| &self.product(u, x) != x);
            r.record("UNIT", bad.map(|a| Witness::new([a], "1·x ≠ x")));
        }
        Ok(r)
    }

    pub(crate) fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_structure(other) && self.unit == other.unit
    }
}

impl Eq for FiniteAlgebra {}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAlgebra[Z/{}; rank {}] {{", self.ring.modulus(), self.rank)?;
        let mut first = true;
        for i in 0..self.rank {
            for j in i..self.rank {
                let p = self.basis_product(i, j);
                if vec_ops::is_zero(&p) {
                    continue;
                }
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                write!(f, " {}·{} = {:?}", self.label(i), self.label(j), p)?;
            }
        }
        if let Some(u) = &self.unit {
            write!(f, "; 1 = {u:?}")?;
        }
        write!(f, " }}")
    }
}

/// Checks that `f: A -> B` is an algebra morphism on basis pairs and, when
/// `unital` is set and both units exist, that `f(1_A) = 1_B`.
pub fn check_morphism(f: &LinearMap, a: &FiniteAlgebra, b: &FiniteAlgebra, unital: bool) -> Report {
    let mut r = Report::new("algebra morphism");
    check_morphism_into(&mut r, "MOR", f, a, b, unital);
    r
}

pub(crate) fn check_morphism_into(
    r: &mut Report,
    id: &str,
    f: &LinearMap,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    unital: bool,
) {
    if f.domain_rank() != a.rank() || f.codomain_rank() != b.rank() {
        r.record(
            &format!("{id}-SHAPE"),
            Some(Witness::new(
                [],
                format!(
                    "map is {}x{} but algebras have ranks {} -> {}",
                    f.codomain_rank(),
                    f.domain_rank(),
                    a.rank(),
                    b.rank()
                ),
            )),
        );
        return;
    }
    let d = a.rank();
    let images: Vec<Vec<u64>> = f.columns();
    let mut mul = None;
    'outer: for i in 0..d {
        for j in i..d {
            let lhs = f.apply(&a.basis_product(i, j));
            let rhs = b.product(&images[i], &images[j]);
            if lhs != rhs {
                mul = Some(Witness::new(
                    [i, j],
                    format!(
                        "f({}·{}) = {lhs:?} but f({})f({}) = {rhs:?}",
                        a.label(i),
                        a.label(j),
                        a.label(i),
                        a.label(j)
                    ),
                ));
                break 'outer;
            }
        }
    }
    r.record(&format!("{id}-MUL"), mul);
    if unital {
        if let (Some(ua), Some(ub)) = (a.unit(), b.unit()) {
            let img = f.apply(ua);
            let w = (img != ub).then(|| Witness::new([], format!("f(1) = {img:?} but 1 = {ub:?}")));
            r.record(&format!("{id}-UNIT"), w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Zm {
        Zm::new(2).unwrap()
    }

    #[test]
    fn dual_numbers_products() {
        let a = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let x = vec![0, 1];
        assert_eq!(a.mul(&x, &x).unwrap(), vec![0, 0]);
        let one_plus_x = vec![1, 1];
        assert_eq!(a.mul(&one_plus_x, &one_plus_x).unwrap(), vec![1, 0]);
        assert_eq!(a.mul(&[0, 0], &one_plus_x).unwrap(), vec![0, 0]);
        assert!(a.mul(&[1], &x).is_err());
    }

    #[test]
    fn check_algebra_examples() {
        assert!(FiniteAlgebra::truncated_polynomial(z2(), 2).check().passed());
        assert!(FiniteAlgebra::ground(z2()).check().passed());
        // e0e1 = e0, e1e0 = e1
        let bad = FiniteAlgebra::from_sparse(z2(), 2, &[(0, 1, 0, 1), (1, 0, 1, 1)], None).unwrap();
        let r = bad.check();
        assert!(r.fails("COMM"));
        assert_eq!(r.witness("COMM").unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn finds_units() {
        let a = FiniteAlgebra::truncated_polynomial(Zm::new(4).unwrap(), 3);
        assert_eq!(a.find_unit(), Some(vec![1, 0, 0]));
        assert_eq!(FiniteAlgebra::zero_multiplication(z2(), 2).find_unit(), None);
    }

    #[test]
    fn morphism_examples() {
        let dual = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let ground = FiniteAlgebra::ground(z2());
        assert!(check_morphism(&LinearMap::identity(z2(), 2), &dual, &dual, true).passed());
        let quotient = LinearMap::new(z2(), 1, 2, vec![1, 0]).unwrap();
        assert!(check_morphism(&quotient, &dual, &ground, true).passed());
        let into_x = LinearMap::new(z2(), 2, 1, vec![0, 1]).unwrap();
        let r = check_morphism(&into_x, &ground, &dual, false);
        assert!(r.fails("MOR-MUL"));
        assert_eq!(r.witness("MOR-MUL").unwrap().indices, vec![0, 0]);
    }
}
