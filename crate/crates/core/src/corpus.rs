//! The bundled example corpus and a kind-dispatching checker.

use std::path::Path;
use std::sync::Arc;

use crate::equivalence::{psi, psi_mor};
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_target, psi_htpy, Derivation};
use crate::io::{self, Structure};
use crate::mult_alg::multiplication_two_algebra;
use crate::report::Report;
use crate::ring::{ActionTensor, FiniteAlgebra, LinearMap, Zm};
use crate::two_cat::{TwoAlgMorphism, TwoAlgebra};
use crate::xmod::{self, CrossedModule, XModMorphism};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub structure: Structure,
    /// Whether every axiom is expected to hold.
    pub valid: bool,
}

impl CorpusEntry {
    fn new(name: &str, structure: Structure, valid: bool) -> Self {
        Self {
            name: name.into(),
            structure,
            valid,
        }
    }

    /// `name.kind.json`
    pub fn file_name(&self) -> String {
        format!("{}.{}.json", self.name, self.structure.kind())
    }
}

impl Structure {
    /// The checker for this kind. Morphisms, derivations and homotopies also
    /// report on their endpoints.
    pub fn check(&self) -> Report {
        match self {
            Structure::Algebra(a) => a.check(),
            Structure::XMod(x) => x.check(),
            Structure::TwoAlg(a) => a.check(),
            Structure::XModMorphism(f) => {
                let mut r = Report::new("crossed module morphism");
                r.absorb("source", f.source().check());
                r.absorb("target", f.target().check());
                r.absorb("", f.check());
                r
            }
            Structure::TwoAlgMorphism(f) => {
                let mut r = Report::new("2-algebra morphism");
                r.absorb("source", f.source().check());
                r.absorb("target", f.target().check());
                r.absorb("", f.check());
                r
            }
            Structure::Derivation(d) => {
                let mut r = Report::new("derivation");
                r.absorb("base", Structure::XModMorphism(d.base().clone()).check());
                r.absorb("", d.check());
                r
            }
            Structure::TwoAlgHomotopy(h) => {
                let mut r = Report::new("2-algebra homotopy");
                r.absorb("F", Structure::TwoAlgMorphism(h.f().clone()).check());
                r.absorb("G", h.g().check());
                r.absorb("", h.check());
                r
            }
        }
    }

    /// [`Structure::check`] plus element-level checks where the kind has them.
    pub fn check_exhaustive(&self, cap: u128) -> Result<Report> {
        let mut r = self.check();
        match self {
            Structure::Algebra(a) => r.absorb("EXH", a.check_exhaustive(cap)?),
            Structure::TwoAlg(a) => r.absorb("EXH", a.check_exhaustive(cap)?),
            _ => {}
        }
        Ok(r)
    }
}

fn z(m: u64) -> Zm {
    Zm::new(m).expect("modulus at least 2")
}

fn dual() -> FiniteAlgebra {
    FiniteAlgebra::truncated_polynomial(z(2), 2)
}

fn example1() -> CrossedModule {
    xmod::from_ideal(&dual(), &[vec![0, 1]]).expect("(x) is free")
}

fn example2() -> CrossedModule {
    let m = FiniteAlgebra::zero_multiplication(z(2), 1);
    let r = FiniteAlgebra::ground(z(2));
    xmod::from_module(&m, &r, &ActionTensor::new(z(2), 1, 1, vec![1]).expect("rank 1")).expect("zero boundary")
}

fn example3() -> CrossedModule {
    xmod::from_multiplication(&dual()).expect("unital algebras have trivial annihilator")
}

/// `∂ = 0` on Z/2 acting on itself by the identity: CM1 holds, CM2 fails.
pub fn precrossed_specimen() -> CrossedModule {
    let g = FiniteAlgebra::ground(z(2));
    CrossedModule::new(g.clone(), g, LinearMap::zero(z(2), 1, 1), ActionTensor::new(z(2), 1, 1, vec![1]).expect("rank 1"))
        .expect("shapes agree")
}

fn noncommutative() -> FiniteAlgebra {
    FiniteAlgebra::from_sparse(z(2), 2, &[(0, 0, 0, 1), (0, 1, 1, 1)], None).expect("indices in range")
}

fn mult(c: FiniteAlgebra) -> TwoAlgebra {
    multiplication_two_algebra(&c).expect("unital input")
}

/// Every bundled structure, in a fixed order.
pub fn builtin() -> Vec<CorpusEntry> {
    use Structure as S;
    let e1 = Arc::new(example1());
    let id1 = XModMorphism::identity(e1.clone());
    let quotient = XModMorphism::new(
        e1.clone(),
        Arc::new(xmod::from_ideal(&dual(), &[]).expect("zero ideal")),
        LinearMap::zero(z(2), 0, 1),
        LinearMap::identity(z(2), 2),
    )
    .expect("shapes agree");
    // h(1) = 0, h(x) = the generator of the ideal
    let der = Derivation::new(id1.clone(), LinearMap::new(z(2), 1, 2, vec![0, 1]).expect("1x2")).expect("shapes agree");
    let htpy = psi_htpy(&homotopy_target(&der).expect("a derivation")).expect("endpoints agree");

    vec![
        CorpusEntry::new("z2", S::Algebra(FiniteAlgebra::ground(z(2))), true),
        CorpusEntry::new("z4", S::Algebra(FiniteAlgebra::ground(z(4))), true),
        CorpusEntry::new("dual", S::Algebra(dual()), true),
        CorpusEntry::new("noncommutative", S::Algebra(noncommutative()), false),
        CorpusEntry::new("example1", S::XMod((*e1).clone()), true),
        CorpusEntry::new("example2", S::XMod(example2()), true),
        CorpusEntry::new("example3", S::XMod(example3()), true),
        CorpusEntry::new("zero", S::XMod(xmod::from_ideal(&dual(), &[]).expect("zero ideal")), true),
        CorpusEntry::new("precrossed_specimen", S::XMod(precrossed_specimen()), false),
        CorpusEntry::new("mult_z2", S::TwoAlg(mult(FiniteAlgebra::ground(z(2)))), true),
        CorpusEntry::new("mult_z4", S::TwoAlg(mult(FiniteAlgebra::ground(z(4)))), true),
        CorpusEntry::new("mult_dual", S::TwoAlg(mult(dual())), true),
        CorpusEntry::new("mult_cubic", S::TwoAlg(mult(FiniteAlgebra::truncated_polynomial(z(2), 3))), true),
        CorpusEntry::new("mult_z6", S::TwoAlg(mult(FiniteAlgebra::ground(z(6)))), true),
        CorpusEntry::new("psi_example1", S::TwoAlg(psi(&e1)), true),
        CorpusEntry::new("discrete_dual", S::TwoAlg(TwoAlgebra::discrete(&dual()).expect("unital")), true),
        CorpusEntry::new("precrossed_specimen", S::TwoAlg(psi(&precrossed_specimen())), false),
        CorpusEntry::new("identity_example1", S::XModMorphism(id1.clone()), true),
        CorpusEntry::new("quotient", S::XModMorphism(quotient), false),
        CorpusEntry::new("psi_identity_example1", S::TwoAlgMorphism(psi_mor(&id1)), true),
        CorpusEntry::new(
            "identity_psi_example1",
            S::TwoAlgMorphism(TwoAlgMorphism::identity(Arc::new(psi(&e1)))),
            true,
        ),
        CorpusEntry::new("example1_x", S::Derivation(der), true),
        CorpusEntry::new("example1_x", S::TwoAlgHomotopy(htpy), true),
    ]
}

/// Loads every `*.json` file of a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, Structure)>> {
    let mut names: Vec<String> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let text = std::fs::read_to_string(dir.join(&n))?;
            let s = io::parse(&text).map_err(|e| Error::Parse {
                location: n.clone(),
                message: e.to_string(),
            })?;
            Ok((n, s))
        })
        .collect()
}

/// Writes the bundled corpus into `dir`.
pub fn write_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in builtin() {
        std::fs::write(dir.join(e.file_name()), io::serialize(&e.structure))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_flags_match_checks() {
        for e in builtin() {
            assert_eq!(e.structure.check().passed(), e.valid, "{}", e.file_name());
        }
    }

    #[test]
    fn file_names_are_distinct() {
        let mut names: Vec<String> = builtin().iter().map(|e| e.file_name()).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}
