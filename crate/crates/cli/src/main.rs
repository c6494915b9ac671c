use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crossalg::corpus;
use crossalg::equivalence::{gamma, gamma_mor, phi_iso, psi, psi_mor, psi_with_status, roundtrip_xmod};
use crossalg::homotopy::{add_derivations, gamma_htpy, homotopy_target, psi_htpy, star};
use crossalg::io::{self, Structure};
use crossalg::mult_alg::multiplication_two_algebra;
use crossalg::oracle::{self, EnumerationSpec, DEFAULT_CAP};
use crossalg::ring::{ActionTensor, LinearMap};
use crossalg::xmod::{self, XModStatus};
use crossalg::{audit, Error, Report};

#[derive(Parser)]
#[command(name = "crossalg", version, about = "Crossed modules and strict 2-algebras over Z/m")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against the axioms of its kind
    Check {
        file: PathBuf,
        /// Also run element-level checks
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 4096)]
        cap: u128,
    },
    /// Build a crossed module or 2-algebra from an algebra
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Ψ: crossed module (or morphism, derivation) to 2-algebra side
    #[command(name = "to-2alg")]
    To2Alg {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Γ: 2-algebra (or morphism, homotopy) to crossed module side
    #[command(name = "to-xmod")]
    ToXMod {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Verify X ≅ Γ(Ψ(X)) or A ≅ Ψ(Γ(A)) and print the witnesses
    Roundtrip { file: PathBuf },
    Homotopy {
        #[command(subcommand)]
        what: HomotopyCmd,
    },
    /// Count crossed and pre-crossed modules by brute force
    Enumerate {
        #[arg(long, default_value_t = 2)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        rank_c: usize,
        #[arg(long, default_value_t = 1)]
        rank_r: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Write every crossed module found into this directory
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Check the bundled corpus; `--full` also runs the acceptance audit
    Selftest {
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The inclusion of an ideal generated by the given elements
    Ideal {
        algebra: PathBuf,
        /// A generator as comma-separated coordinates; repeatable
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[command(flatten)]
        out: Out,
    },
    /// The zero boundary from a module with zero multiplication
    Zero {
        module: PathBuf,
        ring: PathBuf,
        /// Action entry `i,j,l,v` meaning r_i ▶ c_j has v at c_l; repeatable
        #[arg(long = "act")]
        act: Vec<String>,
        #[command(flatten)]
        out: Out,
    },
    /// The multiplication crossed module C -> M(C)
    Mult {
        algebra: PathBuf,
        /// Emit the multiplication 2-algebra instead
        #[arg(long)]
        two_algebra: bool,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum HomotopyCmd {
    /// Check a derivation or a 2-algebra homotopy
    Check { file: PathBuf },
    /// Chain two derivations (sum) or two 2-algebra homotopies (∗)
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    #[command(name = "to-xmod")]
    ToXMod {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    #[command(name = "to-2alg")]
    To2Alg {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Out {
    /// Output file; stdout when absent
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

enum Failure {
    Axioms,
    Usage(String),
}

type Outcome = Result<(), Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.report() {
            Some(r) => {
                println!("{r}");
                if !matches!(e, Error::Invalid(_)) {
                    eprintln!("error: integrity check failed");
                }
                Failure::Axioms
            }
            None => Failure::Usage(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Structure, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(s: &Structure, out: &Out) -> Outcome {
    let text = io::serialize(s);
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(r: &Report) -> Outcome {
    println!("{r}");
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Axioms)
    }
}

fn wrong_kind(s: &Structure, expected: &str) -> Failure {
    Failure::Usage(format!("expected {expected}, got a {} file", s.kind()))
}

fn integers(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{text}` is not a comma-separated list of integers")))
        })
        .collect()
}

fn matrix(name: &str, m: &LinearMap) {
    println!("{name} ({}x{}):", m.codomain_rank(), m.domain_rank());
    for i in 0..m.codomain_rank() {
        let row: Vec<String> = m.row(i).iter().map(u64::to_string).collect();
        println!("  [{}]", row.join(" "));
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { file, exhaustive, cap } => {
            let s = load(&file)?;
            let r = if exhaustive { s.check_exhaustive(cap)? } else { s.check() };
            verdict(&r)
        }
        Command::Construct { what } => construct(what),
        Command::To2Alg { file, out } => {
            let s = match load(&file)? {
                Structure::XMod(x) => {
                    let (a, status) = psi_with_status(&x);
                    if status != XModStatus::Crossed {
                        eprintln!("warning: input is not a crossed module; interchange not guaranteed");
                    }
                    Structure::TwoAlg(a)
                }
                Structure::XModMorphism(f) => Structure::TwoAlgMorphism(psi_mor(&f)),
                Structure::Derivation(d) => Structure::TwoAlgHomotopy(psi_htpy(&homotopy_target(&d)?)?),
                other => return Err(wrong_kind(&other, "xmod, xmod_morphism or derivation")),
            };
            emit(&s, &out)
        }
        Command::ToXMod { file, out } => {
            let s = match load(&file)? {
                Structure::TwoAlg(a) => Structure::XMod((*gamma(&a)?.xmod).clone()),
                Structure::TwoAlgMorphism(f) => Structure::XModMorphism(gamma_mor(&f)?),
                Structure::TwoAlgHomotopy(h) => Structure::Derivation(gamma_htpy(&h)?.d),
                other => return Err(wrong_kind(&other, "2alg, 2alg_morphism or 2alg_homotopy")),
            };
            emit(&s, &out)
        }
        Command::Roundtrip { file } => {
            let w = match load(&file)? {
                Structure::XMod(x) => roundtrip_xmod(&x)?,
                Structure::TwoAlg(a) => phi_iso(&a)?,
                other => return Err(wrong_kind(&other, "xmod or 2alg")),
            };
            matrix("forward level 1", &w.forward.0);
            matrix("forward level 0", &w.forward.1);
            matrix("backward level 1", &w.backward.0);
            matrix("backward level 0", &w.backward.1);
            verdict(&w.report)
        }
        Command::Homotopy { what } => homotopy(what),
        Command::Enumerate {
            modulus,
            rank_c,
            rank_r,
            cap,
            out,
        } => {
            let mut spec = EnumerationSpec::new(modulus, rank_c, rank_r);
            spec.cap = cap;
            let census = oracle::census(&spec)?;
            println!(
                "Z/{modulus}, rank C <= {rank_c}, rank R <= {rank_r}: {} pre-crossed modules, {} crossed",
                census.entries.len(),
                census.crossed_count()
            );
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                for (i, x) in census.crossed().enumerate() {
                    let path = dir.join(format!("xmod_{i:05}.xmod.json"));
                    emit(&Structure::XMod(x.clone()), &Out { out: Some(path) })?;
                }
            }
            Ok(())
        }
        Command::Selftest { full } => selftest(full),
    }
}

fn construct(what: Construct) -> Outcome {
    let algebra = |p: &Path| match load(p)? {
        Structure::Algebra(a) => Ok(a),
        other => Err(wrong_kind(&other, "algebra")),
    };
    match what {
        Construct::Ideal { algebra: path, gens, out } => {
            let r = algebra(&path)?;
            let gens = gens.iter().map(|g| integers(g)).collect::<Result<Vec<_>, _>>()?;
            emit(&Structure::XMod(xmod::from_ideal(&r, &gens)?), &out)
        }
        Construct::Zero { module, ring, act, out } => {
            let (m, r) = (algebra(&module)?, algebra(&ring)?);
            let mut entries = Vec::new();
            for a in &act {
                match integers(a)?.as_slice() {
                    &[i, j, l, v] => entries.push((i as usize, j as usize, l as usize, v)),
                    _ => return Err(Failure::Usage(format!("action entry `{a}` needs four integers"))),
                }
            }
            let action = ActionTensor::from_sparse(r.ring(), r.rank(), m.rank(), &entries)?;
            emit(&Structure::XMod(xmod::from_module(&m, &r, &action)?), &out)
        }
        Construct::Mult {
            algebra: path,
            two_algebra,
            out,
        } => {
            let c = algebra(&path)?;
            let s = if two_algebra {
                Structure::TwoAlg(multiplication_two_algebra(&c)?)
            } else {
                Structure::XMod(xmod::from_multiplication(&c)?)
            };
            emit(&s, &out)
        }
    }
}

fn homotopy(what: HomotopyCmd) -> Outcome {
    match what {
        HomotopyCmd::Check { file } => match load(&file)? {
            s @ (Structure::Derivation(_) | Structure::TwoAlgHomotopy(_)) => verdict(&s.check()),
            other => Err(wrong_kind(&other, "derivation or 2alg_homotopy")),
        },
        HomotopyCmd::Compose { first, second, out } => {
            let s = match (load(&first)?, load(&second)?) {
                (Structure::Derivation(a), Structure::Derivation(b)) => {
                    let h = add_derivations(&homotopy_target(&a)?, &homotopy_target(&b)?)?;
                    Structure::Derivation(h.d)
                }
                (Structure::TwoAlgHomotopy(a), Structure::TwoAlgHomotopy(b)) => {
                    let h = star(&a, &b)?;
                    verdict(&h.check())?;
                    Structure::TwoAlgHomotopy(h)
                }
                _ => return Err(Failure::Usage("expected two derivations or two 2alg_homotopy files".into())),
            };
            emit(&s, &out)
        }
        HomotopyCmd::ToXMod { file, out } => match load(&file)? {
            Structure::TwoAlgHomotopy(h) => emit(&Structure::Derivation(gamma_htpy(&h)?.d), &out),
            other => Err(wrong_kind(&other, "2alg_homotopy")),
        },
        HomotopyCmd::To2Alg { file, out } => match load(&file)? {
            Structure::Derivation(d) => {
                emit(&Structure::TwoAlgHomotopy(psi_htpy(&homotopy_target(&d)?)?), &out)
            }
            other => Err(wrong_kind(&other, "derivation")),
        },
    }
}

fn selftest(full: bool) -> Outcome {
    let mut ok = true;
    for e in corpus::builtin() {
        let passed = e.structure.check().passed();
        let text = io::serialize(&e.structure);
        let stable = io::parse(&text).map(|b| io::serialize(&b) == text).unwrap_or(false);
        let good = passed == e.valid && stable;
        ok &= good;
        println!(
            "[{}] {} ({})",
            if good { "PASS" } else { "FAIL" },
            e.file_name(),
            if e.valid { "valid" } else { "expected to fail" }
        );
    }
    let mut round = true;
    for e in corpus::builtin().into_iter().filter(|e| e.valid) {
        if let Structure::XMod(x) = &e.structure {
            round &= roundtrip_xmod(x).map(|w| w.passed()).unwrap_or(false);
            let back = gamma(&psi(x)).map(|g| g.xmod.same_data(x)).unwrap_or(false);
            round &= back;
        }
    }
    println!("[{}] Γ(Ψ(X)) = X on corpus crossed modules", if round { "PASS" } else { "FAIL" });
    ok &= round;
    if full {
        let outcomes = audit::run_all(None)?;
        for o in &outcomes {
            println!("{o}");
            ok &= o.passed;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Axioms)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Axioms) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
