use super::algebra::FiniteAlgebra;
use super::linear::{vec_ops, LinearMap};
use super::zm::Zm;
use crate::error::{Error, Result};
use crate::report::{Report, Witness};

/// An action of an algebra R on an algebra C by structure constants
/// `r_i ▶ c_j = Σ_l a[i][j][l] c_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionTensor {
    ring: Zm,
    acting: usize,
    acted: usize,
    table: Vec<u64>,
}

impl ActionTensor {
    pub fn new(ring: Zm, acting: usize, acted: usize, table: Vec<u64>) -> Result<Self> {
        if table.len() != acting * acted * acted {
            return Err(Error::shape(format!(
                "action of rank {acting} on rank {acted} needs {} entries, got {}",
                acting * acted * acted,
                table.len()
            )));
        }
        Ok(Self {
            ring,
            acting,
            acted,
            table: table.into_iter().map(|v| ring.reduce(v)).collect(),
        })
    }

    pub fn from_sparse(
        ring: Zm,
        acting: usize,
        acted: usize,
        entries: &[(usize, usize, usize, u64)],
    ) -> Result<Self> {
        let mut table = vec![0; acting * acted * acted];
        for &(i, j, l, v) in entries {
            if i >= acting || j >= acted || l >= acted {
                return Err(Error::shape(format!("action entry ({i},{j},{l}) out of range")));
            }
            table[(i * acted + j) * acted + l] = ring.reduce(v);
        }
        Self::new(ring, acting, acted, table)
    }

    pub fn zero(ring: Zm, acting: usize, acted: usize) -> Self {
        Self::new(ring, acting, acted, vec![0; acting * acted * acted]).unwrap()
    }

    /// The action `r ▶ c = ι(r)·c` induced by an algebra map `ι: R -> C`
    /// followed by multiplication in `C`.
    pub fn through_map(iota: &LinearMap, c: &FiniteAlgebra) -> Self {
        let (acting, acted) = (iota.domain_rank(), c.rank());
        let mut table = Vec::with_capacity(acting * acted * acted);
        for i in 0..acting {
            let ri = iota.column(i);
            for j in 0..acted {
                table.extend(c.product(&ri, &c.basis(j)));
            }
        }
        Self::new(c.ring(), acting, acted, table).unwrap()
    }

    /// `r ▶ c = λ_r(c)` for an algebra of operators given by matrices.
    pub fn from_operators(ring: Zm, acted: usize, operators: &[LinearMap]) -> Self {
        let mut table = Vec::with_capacity(operators.len() * acted * acted);
        for op in operators {
            for j in 0..acted {
                table.extend(op.column(j));
            }
        }
        Self::new(ring, operators.len(), acted, table).unwrap()
    }

    pub fn ring(&self) -> Zm {
        self.ring
    }

    pub fn acting_rank(&self) -> usize {
        self.acting
    }

    pub fn acted_rank(&self) -> usize {
        self.acted
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn basis_action(&self, i: usize, j: usize) -> Vec<u64> {
        let base = (i * self.acted + j) * self.acted;
        self.table[base..base + self.acted].to_vec()
    }

    /// `r ▶ c`.
    pub fn act(&self, r: &[u64], c: &[u64]) -> Vec<u64> {
        assert_eq!(r.len(), self.acting, "acting element has the wrong rank");
        assert_eq!(c.len(), self.acted, "acted element has the wrong rank");
        let z = self.ring;
        let d = self.acted;
        let mut out = vec![0u64; d];
        for (i, &ri) in r.iter().enumerate() {
            if ri == 0 {
                continue;
            }
            for (j, &cj) in c.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                let w = z.mul(ri, cj);
                let base = (i * d + j) * d;
                for (l, o) in out.iter_mut().enumerate() {
                    *o = z.mul_add(*o, w, self.table[base + l]);
                }
            }
        }
        out
    }

    /// The linear operator `c ↦ r ▶ c`.
    pub fn operator(&self, r: &[u64]) -> LinearMap {
        let cols: Vec<Vec<u64>> = (0..self.acted)
            .map(|j| self.act(r, &vec_ops::unit_vector(self.acted, j)))
            .collect();
        LinearMap::from_columns(self.ring, self.acted, &cols).unwrap()
    }

    /// Verifies associativity over R, multiplicativity over C, and, when
    /// `unital` is set and R has a unit, `1 ▶ c = c`.
    pub fn check(&self, acting: &FiniteAlgebra, acted: &FiniteAlgebra, unital: bool) -> Report {
        let mut r = Report::new("action");
        self.check_into(&mut r, acting, acted, unital);
        r
    }

    pub(crate) fn check_into(
        &self,
        r: &mut Report,
        acting: &FiniteAlgebra,
        acted: &FiniteAlgebra,
        unital: bool,
    ) {
        if acting.rank() != self.acting || acted.rank() != self.acted {
            r.record(
                "ACT-SHAPE",
                Some(Witness::new(
                    [],
                    format!(
                        "tensor is {}x{} but algebras have ranks {} and {}",
                        self.acting,
                        self.acted,
                        acting.rank(),
                        acted.rank()
                    ),
                )),
            );
            return;
        }
        let (dr, dc) = (self.acting, self.acted);

        let mut assoc = None;
        'a: for i in 0..dr {
            for k in 0..dr {
                let rk = acting.basis_product(i, k);
                for j in 0..dc {
                    let lhs = self.act(&rk, &acted.basis(j));
                    let rhs = self.act(&acting.basis(i), &self.basis_action(k, j));
                    if lhs != rhs {
                        assoc = Some(Witness::new(
                            [i, k, j],
                            format!("(r{i}r{k})▶c{j} = {lhs:?} but r{i}▶(r{k}▶c{j}) = {rhs:?}"),
                        ));
                        break 'a;
                    }
                }
            }
        }
        r.record("ACT-ASSOC", assoc);

        let mut mul = None;
        'm: for i in 0..dr {
            for j in 0..dc {
                let ij = self.basis_action(i, j);
                for l in 0..dc {
                    let lhs = self.act(&acting.basis(i), &acted.basis_product(j, l));
                    let rhs = acted.product(&ij, &acted.basis(l));
                    if lhs != rhs {
                        mul = Some(Witness::new(
                            [i, j, l],
                            format!("r{i}▶(c{j}c{l}) = {lhs:?} but (r{i}▶c{j})c{l} = {rhs:?}"),
                        ));
                        break 'm;
                    }
                }
            }
        }
        r.record("ACT-MUL", mul);

        if unital {
            if let Some(u) = acting.unit() {
                let bad = (0..dc).find(|&j| self.act(u, &acted.basis(j)) != acted.basis(j));
                r.record(
                    "ACT-UNIT",
                    bad.map(|j| {
                        Witness::new([j], format!("1▶c{j} = {:?}", self.act(u, &acted.basis(j))))
                    }),
                );
            }
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
    fn ideal_is_a_module() {
        // R = Z2 acting on C = span{x} ⊂ Z2[x]/(x²), x² = 0.
        let r = FiniteAlgebra::ground(z2());
        let c = FiniteAlgebra::zero_multiplication(z2(), 1);
        let act = ActionTensor::new(z2(), 1, 1, vec![1]).unwrap();
        assert!(act.check(&r, &c, true).passed());
    }

    #[test]
    fn zero_action_is_not_unital() {
        let r = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let c = FiniteAlgebra::zero_multiplication(z2(), 2);
        let rep = ActionTensor::zero(z2(), 2, 2).check(&r, &c, true);
        assert!(rep.holds("ACT-ASSOC") && rep.holds("ACT-MUL"));
        assert!(rep.fails("ACT-UNIT"));
    }

    #[test]
    fn through_map_matches_products() {
        let r = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let act = ActionTensor::through_map(&LinearMap::identity(z2(), 2), &r);
        assert_eq!(act.act(&[0, 1], &[1, 1]), vec![0, 1]);
        assert!(act.check(&r, &r, true).passed());
    }
}
