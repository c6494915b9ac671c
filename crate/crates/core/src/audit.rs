//! The acceptance audit. Each criterion recomputes its evidence from
//! scratch and reports a single pass/fail outcome.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::corpus;
use crate::equivalence::{gamma, phi_iso, psi, roundtrip_xmod, GammaResult};
use crate::error::Result;
use crate::homotopy::{
    add_derivations, gamma_htpy_with, homotopy_target, psi_htpy_with, star, Derivation, XModHomotopy,
};
use crate::io::{self, Structure};
use crate::mult_alg::{mu, multiplication_two_algebra, multipliers};
use crate::oracle::{self, EnumerationSpec, XModCensus, DEFAULT_CAP};
use crate::ring::{all_vectors, howell_form, vec_ops, FiniteAlgebra, LinearMap, Submodule, Zm};
use crate::two_cat::{TwoAlgebra, TwoModule};
use crate::xmod::{self, CrossedModule, XModMorphism};

/// Element cap for exhaustive checks.
pub const ELEMENT_CAP: u128 = 4096;

pub const LIMIT_FORCED: Duration = Duration::from_secs(10);
pub const LIMIT_ROUNDTRIP: Duration = Duration::from_secs(120);
pub const LIMIT_MULT: Duration = Duration::from_secs(60);

pub const RANDOM_MATRICES: usize = 1000;
pub const RANDOM_SEED: u64 = 0x5eed_2a19;
pub const COMPOSABLE_PAIRS: usize = 100;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u8, title: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = match run() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn within(o: Outcome, limit: Duration) -> Outcome {
    if o.elapsed <= limit {
        return o;
    }
    Outcome {
        passed: false,
        detail: format!("{}; over the {}s limit", o.detail, limit.as_secs()),
        ..o
    }
}

fn z(m: u64) -> Zm {
    Zm::new(m).expect("modulus at least 2")
}

/// Crossed and pre-crossed modules over Z/2 with `rank C ≤ 2`, `rank R ≤ 2`.
pub fn small_census() -> Result<XModCensus> {
    oracle::census(&EnumerationSpec::new(2, 2, 2))
}

/// Over Z/2 with `d0 = 1`, `d1 = 2`: every linear composition obeying the
/// unit and source/target laws agrees with `a + b − e(s b)` on composable
/// pairs, and that formula is among the survivors.
pub fn forced_composition() -> Outcome {
    let o = timed(1, "forced composition", || {
        let ring = z(2);
        let modules = oracle::enumerate_two_modules(ring, 1, 2, DEFAULT_CAP)?;
        let mut survivors = 0;
        let mut bad = 0;
        let mut missing = 0;
        for t in &modules {
            let comps = oracle::enumerate_compositions(t, DEFAULT_CAP)?;
            let pairs = t.composable_pairs().elements(ELEMENT_CAP)?;
            let formula = forced_map(t);
            survivors += comps.len();
            bad += comps
                .iter()
                .filter(|g| pairs.iter().any(|p| g.apply(p) != formula.apply(p)))
                .count();
            missing += usize::from(!comps.contains(&formula));
        }
        Ok((
            bad == 0 && missing == 0 && !modules.is_empty(),
            format!(
                "{} 2-modules, {survivors} surviving compositions, {bad} disagree with the formula, {missing} modules miss it",
                modules.len()
            ),
        ))
    });
    within(o, LIMIT_FORCED)
}

/// `(a, b) ↦ a + b − e(s b)` as a map `M1 ⊕ M1 -> M1`.
fn forced_map(t: &TwoModule) -> LinearMap {
    let z = t.ring();
    let d1 = t.d1();
    let es = t.e().compose(t.s());
    LinearMap::from_fn(z, d1, 2 * d1, |r, c| {
        if c < d1 {
            u64::from(r == c)
        } else {
            z.sub(u64::from(r == c - d1), es.get(r, c - d1))
        }
    })
}

fn corpus_two_algebras() -> Vec<(String, TwoAlgebra)> {
    corpus::builtin()
        .into_iter()
        .filter(|e| e.valid)
        .filter_map(|e| match e.structure {
            Structure::TwoAlg(a) => Some((e.name, a)),
            _ => None,
        })
        .collect()
}

/// With `b ∈ Ker s` and `t a = 0`, composition reduces to addition.
pub fn kernel_composition() -> Outcome {
    timed(2, "composition with b in Ker s", || {
        let mut pools = Vec::new();
        for (name, a) in corpus_two_algebras() {
            let lefts = a.t().kernel().elements(ELEMENT_CAP)?;
            let rights = a.s().kernel().elements(ELEMENT_CAP)?;
            let pairs: Vec<(Vec<u64>, Vec<u64>)> = lefts
                .iter()
                .flat_map(|l| rights.iter().map(move |r| (l.clone(), r.clone())))
                .collect();
            pools.push((name, a, pairs));
        }
        let mut taken = 0;
        let mut failures = Vec::new();
        let mut used = HashSet::new();
        'rounds: for k in 0.. {
            let mut any = false;
            for (name, a, pairs) in &pools {
                let Some((l, r)) = pairs.get(k) else { continue };
                any = true;
                used.insert(name.clone());
                let got = a.compose_cells(l, r)?;
                if got != vec_ops::add(a.ring(), l, r) {
                    failures.push(format!("{name}: {l:?}∘{r:?} = {got:?}"));
                }
                taken += 1;
                if taken == COMPOSABLE_PAIRS {
                    break 'rounds;
                }
            }
            if !any {
                break;
            }
        }
        Ok((
            taken == COMPOSABLE_PAIRS && failures.is_empty(),
            format!(
                "{taken} pairs from {} 2-algebras, {} mismatches{}",
                used.len(),
                failures.len(),
                failures.first().map(|f| format!(", first {f}")).unwrap_or_default()
            ),
        ))
    })
}

/// `X ≅ Γ(Ψ(X))` with exact coordinates on the census, `A ≅ Ψ(Γ(A))` on
/// the corpus.
pub fn round_trips(census: &XModCensus) -> Outcome {
    let o = timed(3, "round trips", || {
        let crossed: Vec<&CrossedModule> = census.crossed().collect();
        let failed_x: Vec<usize> = crossed
            .par_iter()
            .enumerate()
            .filter_map(|(i, x)| {
                let ok = roundtrip_xmod(x).map(|w| w.passed() && w.report.holds("RT-COORD")).unwrap_or(false);
                (!ok).then_some(i)
            })
            .collect();
        let algebras = corpus_two_algebras();
        let failed_a: Vec<&str> = algebras
            .iter()
            .filter(|(_, a)| !phi_iso(a).map(|w| w.passed()).unwrap_or(false))
            .map(|(n, _)| n.as_str())
            .collect();
        Ok((
            !crossed.is_empty() && failed_x.is_empty() && failed_a.is_empty(),
            format!(
                "{}/{} crossed modules, {}/{} corpus 2-algebras{}",
                crossed.len() - failed_x.len(),
                crossed.len(),
                algebras.len() - failed_a.len(),
                algebras.len(),
                if failed_a.is_empty() { String::new() } else { format!(", failing {failed_a:?}") }
            ),
        ))
    });
    within(o, LIMIT_ROUNDTRIP)
}

/// Ψ(X) satisfies interchange exactly when X satisfies CM2.
pub fn interchange_iff_peiffer(census: &XModCensus) -> Outcome {
    timed(4, "interchange iff Peiffer", || {
        let exceptions: Vec<usize> = census
            .entries
            .par_iter()
            .enumerate()
            .filter_map(|(i, e)| (psi(&e.xmod).check().holds("ICHG") != e.crossed).then_some(i))
            .collect();
        let pre = census.entries.iter().filter(|e| !e.crossed).count();
        Ok((
            pre > 0 && exceptions.is_empty(),
            format!(
                "{} specimens ({} crossed, {pre} only pre-crossed), {} exceptions",
                census.entries.len(),
                census.entries.len() - pre,
                exceptions.len()
            ),
        ))
    })
}

/// For C in {Z/2, Z/4, Z/2[x]/(x²)}: exhaustive checks, agreement with
/// Ψ of the multiplication crossed module, and the closed forms of both
/// sides of interchange.
pub fn multiplication_two_algebras() -> Outcome {
    let o = timed(5, "multiplication 2-algebras", || {
        let cases = [
            ("Z/2", FiniteAlgebra::ground(z(2))),
            ("Z/4", FiniteAlgebra::ground(z(4))),
            ("Z/2[x]/(x^2)", FiniteAlgebra::truncated_polynomial(z(2), 2)),
        ];
        let mut problems = Vec::new();
        let mut quadruples = 0;
        for (name, c) in &cases {
            let a = multiplication_two_algebra(c)?;
            let mut rep = a.check();
            rep.absorb("EXH", a.check_exhaustive(ELEMENT_CAP)?);
            if !rep.passed() {
                problems.push(format!("{name}: {rep}"));
            }
            if !a.same_data(&psi(&xmod::from_multiplication(c)?)) {
                problems.push(format!("{name}: differs from Ψ(C -> M(C))"));
            }
            let (n, bad) = displayed_expansion(c, &a)?;
            quadruples += n;
            if bad > 0 {
                problems.push(format!("{name}: {bad} quadruples disagree with the closed forms"));
            }
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!("3 algebras, {quadruples} quadruples")
            } else {
                problems.join("; ")
            },
        ))
    });
    within(o, LIMIT_MULT)
}

/// Runs over all `x, x′, y, y′ ∈ C` and `f, f′ ∈ M(C)`, with the cells
/// `(x, f) ∘ (x′, M_x·f)` and `(y, f′) ∘ (y′, M_y·f′)`:
///
/// `LHS = (f′(x′) + f′(x) + f(y′) + f(y) + x′y′ + x′y + xy′ + xy, f′f)`
/// `RHS = (f′(x) + f(y) + xy + yx′ + f′(x′) + xy′ + f(y′) + x′y′, f′f)`
///
/// Both must match the library's horizontal-then-vertical and
/// vertical-then-horizontal composites. Returns (quadruples, mismatches).
fn displayed_expansion(c: &FiniteAlgebra, a: &TwoAlgebra) -> Result<(usize, usize)> {
    let m = multipliers(c)?;
    let mu = mu(&m)?;
    let ring = c.ring();
    let cs: Vec<Vec<u64>> = all_vectors(ring, c.rank()).collect();
    let fs: Vec<Vec<u64>> = all_vectors(ring, m.rank()).collect();
    let maps: Vec<LinearMap> = fs.iter().map(|f| m.map_of(f)).collect();
    let cell = |x: &[u64], f: &[u64]| vec_ops::concat(x, f);
    let add = |u: &[u64], v: &[u64]| vec_ops::add(ring, u, v);
    let sum = |vs: &[Vec<u64>]| vs.iter().fold(vec![0; c.rank()], |acc, v| add(&acc, v));
    let (mut count, mut bad) = (0, 0);
    for (fi, f) in fs.iter().enumerate() {
        for (gi, f2) in fs.iter().enumerate() {
            let (fm, f2m) = (&maps[fi], &maps[gi]);
            let ff = m.algebra().product(f2, f);
            for x in &cs {
                let tx = add(&mu.apply(x), f);
                for y in &cs {
                    let ty = add(&mu.apply(y), f2);
                    for x2 in &cs {
                        for y2 in &cs {
                            count += 1;
                            let p = |u: &[u64], v: &[u64]| c.product(u, v);
                            let lhs = cell(
                                &sum(&[
                                    f2m.apply(x2),
                                    f2m.apply(x),
                                    fm.apply(y2),
                                    fm.apply(y),
                                    p(x2, y2),
                                    p(x2, y),
                                    p(x, y2),
                                    p(x, y),
                                ]),
                                &ff,
                            );
                            let rhs = cell(
                                &sum(&[
                                    f2m.apply(x),
                                    fm.apply(y),
                                    p(x, y),
                                    p(y, x2),
                                    f2m.apply(x2),
                                    p(x, y2),
                                    fm.apply(y2),
                                    p(x2, y2),
                                ]),
                                &ff,
                            );
                            let (a1, a2) = (cell(x, f), cell(x2, &tx));
                            let (b1, b2) = (cell(y, f2), cell(y2, &ty));
                            let vertical_first = a.horizontal(&a.compose_cells(&a1, &a2)?, &a.compose_cells(&b1, &b2)?);
                            let horizontal_first = a.compose_cells(&a.horizontal(&a1, &b1), &a.horizontal(&a2, &b2))?;
                            if lhs != rhs || lhs != vertical_first || rhs != horizontal_first {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((count, bad))
}

/// Census crossed modules, every morphism between them, and every
/// derivation over each morphism, with Ψ and Γ(Ψ) cached per module.
pub struct Population {
    pub xmods: Vec<Arc<CrossedModule>>,
    pub psis: Vec<Arc<TwoAlgebra>>,
    pub gammas: Vec<Arc<GammaResult>>,
    /// `(source index, target index, morphism)`.
    pub morphisms: Vec<(usize, usize, XModMorphism)>,
    /// Derivations over each morphism, as ranges into `derivations`.
    pub ranges: Vec<Range<usize>>,
    /// `(morphism index, derivation)`.
    pub derivations: Vec<(usize, Derivation)>,
    /// `homotopy_target` of each derivation, `None` on an integrity error.
    pub targets: Vec<Option<XModHomotopy>>,
    /// Maps satisfying the derivation law with `h(1) ≠ 0`.
    pub law_only: usize,
    index: HashMap<MorphismKey, usize>,
}

type MorphismKey = (usize, usize, Vec<Vec<u64>>, Vec<Vec<u64>>);

fn key(a: usize, b: usize, f: &XModMorphism) -> MorphismKey {
    (a, b, f.f1().columns(), f.f0().columns())
}

impl Population {
    pub fn build(census: &XModCensus) -> Result<Self> {
        let xmods: Vec<Arc<CrossedModule>> = census.crossed().cloned().map(Arc::new).collect();
        let psis: Vec<Arc<TwoAlgebra>> = xmods.iter().map(|x| Arc::new(psi(x))).collect();
        let gammas = psis
            .iter()
            .map(|a| gamma(a).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let n = xmods.len();
        let per_pair = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (a, b) = (k / n, k % n);
                let mut out = Vec::new();
                for f in oracle::enumerate_xmod_morphisms(&xmods[a], &xmods[b], DEFAULT_CAP)? {
                    let mut good = Vec::new();
                    let mut law_only = 0;
                    for d in oracle::enumerate_derivation_law(&f, DEFAULT_CAP)? {
                        if d.check().passed() {
                            good.push(d);
                        } else {
                            law_only += 1;
                        }
                    }
                    out.push((f, good, law_only));
                }
                Ok((a, b, out))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut pop = Self {
            xmods,
            psis,
            gammas,
            morphisms: Vec::new(),
            ranges: Vec::new(),
            derivations: Vec::new(),
            targets: Vec::new(),
            law_only: 0,
            index: HashMap::new(),
        };
        for (a, b, fs) in per_pair {
            for (f, ds, law_only) in fs {
                let i = pop.morphisms.len();
                pop.index.insert(key(a, b, &f), i);
                let start = pop.derivations.len();
                pop.derivations.extend(ds.into_iter().map(|d| (i, d)));
                pop.ranges.push(start..pop.derivations.len());
                pop.law_only += law_only;
                pop.morphisms.push((a, b, f));
            }
        }
        pop.targets = pop
            .derivations
            .par_iter()
            .map(|(_, d)| homotopy_target(d).ok())
            .collect();
        Ok(pop)
    }

    /// Index of a morphism between census modules `a` and `b`.
    pub fn morphism_index(&self, a: usize, b: usize, f: &XModMorphism) -> Option<usize> {
        self.index.get(&key(a, b, f)).copied()
    }
}

/// Enumerates the population; every derivation must yield a valid target
/// morphism.
pub fn homotopy_targets(census: &XModCensus) -> (Outcome, Option<Population>) {
    let mut built = None;
    let o = timed(6, "homotopy targets", || {
        let pop = Population::build(census)?;
        let errors = pop.targets.iter().filter(|t| t.is_none()).count();
        let res = (
            errors == 0 && !pop.targets.is_empty(),
            format!(
                "{} crossed modules, {} morphisms, {} derivations, {errors} integrity errors; {} law-only maps with h(1) ≠ 0 excluded",
                pop.xmods.len(),
                pop.morphisms.len(),
                pop.targets.len(),
                pop.law_only
            ),
        );
        built = Some(pop);
        Ok(res)
    });
    (o, built)
}

#[derive(Default)]
struct Tally {
    gamma_psi: usize,
    psi_gamma: usize,
    star_pairs: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(what);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.gamma_psi += other.gamma_psi;
        self.psi_gamma += other.psi_gamma;
        self.star_pairs += other.star_pairs;
        self.failures += other.failures;
        self.first = self.first.or(other.first);
        self
    }
}

/// Γ∘Ψ and Ψ∘Γ on every homotopy, and Γ(δ∗δ′) against the sum of
/// derivations on every chained pair.
pub fn transport_laws(pop: &Population) -> Outcome {
    timed(7, "homotopy transport", || {
        let targets = &pop.targets;
        let tally = (0..targets.len())
            .into_par_iter()
            .fold(Tally::default, |mut t, i| {
                let Some(h) = &targets[i] else {
                    t.fail(format!("derivation {i} has no target"));
                    return t;
                };
                let (a, b, _) = &pop.morphisms[pop.derivations[i].0];
                let (pa, pb) = (&pop.psis[*a], &pop.psis[*b]);
                let (ga, gb) = (&pop.gammas[*a], &pop.gammas[*b]);
                let lifted = match psi_htpy_with(h, pa, pb) {
                    Ok(l) if l.check().passed() => l,
                    _ => {
                        t.fail(format!("Ψ of derivation {i} is not a homotopy"));
                        return t;
                    }
                };
                match gamma_htpy_with(&lifted, ga, gb) {
                    Ok(back) if same_homotopy(&back, h) => t.gamma_psi += 1,
                    _ => t.fail(format!("Γ(Ψ(h)) ≠ h for derivation {i}")),
                }
                match gamma_htpy_with(&lifted, ga, gb).and_then(|back| psi_htpy_with(&back, pa, pb)) {
                    Ok(again) if again == lifted => t.psi_gamma += 1,
                    _ => t.fail(format!("Ψ(Γ(H)) ≠ H for derivation {i}")),
                }

                let Some(next) = pop.morphism_index(*a, *b, &h.g) else {
                    t.fail(format!("target of derivation {i} is not an enumerated morphism"));
                    return t;
                };
                for j in pop.ranges[next].clone() {
                    let Some(h2) = &targets[j] else { continue };
                    t.star_pairs += 1;
                    let got = psi_htpy_with(h2, pa, pb)
                        .and_then(|l2| star(&lifted, &l2))
                        .and_then(|s| gamma_htpy_with(&s, ga, gb));
                    let want = add_derivations(h, h2);
                    match (got, want) {
                        (Ok(g), Ok(w)) if same_homotopy(&g, &w) => {}
                        _ => t.fail(format!("Γ(δ∗δ′) ≠ h + h′ for derivations {i}, {j}")),
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        Ok((
            tally.failures == 0 && tally.gamma_psi > 0 && tally.star_pairs > 0,
            format!(
                "Γ∘Ψ = id on {}, Ψ∘Γ = id on {}, star law on {} chained pairs, {} failures{}",
                tally.gamma_psi,
                tally.psi_gamma,
                tally.star_pairs,
                tally.failures,
                tally.first.map(|f| format!(", first: {f}")).unwrap_or_default()
            ),
        ))
    })
}

/// Exact equality of the maps; endpoints are compared by coordinates.
fn same_homotopy(x: &XModHomotopy, y: &XModHomotopy) -> bool {
    x.d.map() == y.d.map() && x.f.same_maps(&y.f) && x.g.same_maps(&y.g)
}

/// Howell forms of random matrices over Z/4 and Z/6, checked for
/// idempotence and span equality, plus byte-identical parse/serialize on
/// the corpus (and the files in `corpus_dir`, if given).
pub fn infrastructure(corpus_dir: Option<&Path>) -> Outcome {
    timed(8, "Howell forms and file format", || {
        let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
        let mut problems = Vec::new();
        let mut exhaustive = 0;
        for k in 0..RANDOM_MATRICES {
            let ring = z(if k % 2 == 0 { 4 } else { 6 });
            let cols = rng.gen_range(1..=4);
            let rows: Vec<Vec<u64>> = (0..rng.gen_range(0..=4))
                .map(|_| (0..cols).map(|_| rng.gen_range(0..ring.modulus())).collect())
                .collect();
            let h = howell_form(ring, cols, &rows);
            if howell_form(ring, cols, &h) != h {
                problems.push(format!("matrix {k}: not idempotent"));
                continue;
            }
            let span = Submodule::span(ring, cols, &rows);
            if span.generators() != h.as_slice() || !rows.iter().all(|r| span.contains(r)) {
                problems.push(format!("matrix {k}: span differs from its Howell form"));
                continue;
            }
            if cols <= 3 {
                exhaustive += 1;
                let brute = brute_span(ring, cols, &rows);
                let member = all_vectors(ring, cols).all(|v| span.contains(&v) == brute.contains(&v));
                let listed: HashSet<Vec<u64>> = span.elements(ELEMENT_CAP)?.into_iter().collect();
                if !member || listed != brute {
                    problems.push(format!("matrix {k}: membership disagrees with the brute-force span"));
                }
            }
        }

        let mut files = 0;
        for e in corpus::builtin() {
            let text = io::serialize(&e.structure);
            match io::parse(&text) {
                Ok(back) if back == e.structure && io::serialize(&back) == text => {}
                _ => problems.push(format!("{}: serialization does not round-trip", e.file_name())),
            }
            if let Some(dir) = corpus_dir {
                files += 1;
                match std::fs::read_to_string(dir.join(e.file_name())) {
                    Ok(disk) if disk == text => {}
                    Ok(_) => problems.push(format!("{}: file differs from the bundled value", e.file_name())),
                    Err(err) => problems.push(format!("{}: {err}", e.file_name())),
                }
            }
        }
        if let Some(dir) = corpus_dir {
            for (name, s) in corpus::load_dir(dir)? {
                let text = std::fs::read_to_string(dir.join(&name))?;
                if io::serialize(&s) != text {
                    problems.push(format!("{name}: reserialization changes bytes"));
                }
            }
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!(
                    "{RANDOM_MATRICES} matrices ({exhaustive} cross-checked exhaustively), {} corpus structures, {files} files",
                    corpus::builtin().len()
                )
            } else {
                format!("{} problems, first: {}", problems.len(), problems[0])
            },
        ))
    })
}

/// All Z/m-combinations of `rows`, enumerated coefficient by coefficient.
fn brute_span(ring: Zm, cols: usize, rows: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    all_vectors(ring, rows.len())
        .map(|coeffs| {
            coeffs.iter().zip(rows).fold(vec![0; cols], |mut acc, (&c, r)| {
                vec_ops::axpy(ring, &mut acc, c, r);
                acc
            })
        })
        .collect()
}

/// Runs criteria 1 to 8 in order.
pub fn run_all(corpus_dir: Option<&Path>) -> Result<Vec<Outcome>> {
    let census = small_census()?;
    let mut out = vec![
        forced_composition(),
        kernel_composition(),
        round_trips(&census),
        interchange_iff_peiffer(&census),
        multiplication_two_algebras(),
    ];
    let (o6, pop) = homotopy_targets(&census);
    out.push(o6);
    out.push(match pop {
        Some(pop) => transport_laws(&pop),
        None => timed(7, "homotopy transport", || Ok((false, "no population".into()))),
    });
    out.push(infrastructure(corpus_dir));
    Ok(out)
}
