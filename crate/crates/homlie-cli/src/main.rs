//! Command-line frontend: loads JSON inputs, runs the library checks, and
//! reports verdicts as text or JSON with deterministic exit codes
//! (0 all verdicts pass, 1 a verdict failed, 2 bad input).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use homlie::algebra::AxiomWitness;
use homlie::cohomology::{check_representation, Representation};
use homlie::derivation::derivation_space;
use homlie::homgroup::{check_weak_hom, FhgReport, FhgWitness, FiniteHomGroup};
use homlie::json as hjson;
use homlie::linalg::{Matrix, Mode, Scalar, TAU_RES};
use homlie::matgroup::{random_invertible, TwistedMatrixSpace};
use homlie::Error;

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "homlie", version, about = "Checks for twisted Lie structures")]
struct Cli {
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the defining axioms of an algebra or finite Hom-group file
    Check { path: PathBuf },
    /// Cochain dimensions (Z, B, H) and the d∘d = 0 verdicts
    Cohomology {
        /// Algebra file (exact mode required)
        #[arg(required_unless_present = "rep_file")]
        path: Option<PathBuf>,
        /// Built-in representation to use
        #[arg(long, value_enum, default_value_t = RepKind::Adjoint)]
        rep: RepKind,
        /// Full representation file (replaces the algebra path)
        #[arg(long)]
        rep_file: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Basis and dimensions of the derivation space
    Derivations { path: PathBuf },
    /// Hom-exponential β·exp(tAβ⁻¹)
    Hexp {
        #[arg(long)]
        beta: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Mixed central-difference check of the group-commutator derivative
    VerifyCommutator {
        #[arg(long)]
        beta: PathBuf,
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
    /// Hom-group checks (finite tables or twisted matrix groups)
    #[command(subcommand)]
    Group(GroupCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    Adjoint,
    Trivial,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Axioms: a finite Hom-group file, or --beta for the matrix group
    Check {
        path: Option<PathBuf>,
        /// Twist matrix; switches to sampled matrix-group checking
        #[arg(long, conflicts_with = "path")]
        beta: Option<PathBuf>,
        /// Random samples to draw in matrix mode
        #[arg(long, default_value_t = 6)]
        samples: usize,
        /// RNG seed for matrix mode (falls back to HOMLIE_SEED, then 7)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Weak/strong homomorphism verdicts for a map between finite Hom-groups
    Weakhom {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Twisted-conjugation action laws
    Adaction {
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        beta: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

struct Verdict {
    name: &'static str,
    pass: bool,
    residual: Option<f64>,
    witness: Option<String>,
}

impl Verdict {
    fn plain(name: &'static str, pass: bool) -> Verdict {
        Verdict {
            name,
            pass,
            residual: None,
            witness: None,
        }
    }

    fn with_residual(name: &'static str, pass: bool, residual: f64) -> Verdict {
        Verdict {
            name,
            pass,
            residual: Some(residual),
            witness: None,
        }
    }
}

struct RunReport {
    command: &'static str,
    verdicts: Vec<Verdict>,
    payload: Option<Value>,
    seed: Option<u64>,
    /// Shown in text output only, so JSON stays byte-identical across runs.
    elapsed_ms: u128,
}

impl RunReport {
    fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    fn to_json(&self) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                let mut o = json!({"name": v.name, "pass": v.pass});
                if let Some(r) = v.residual {
                    o["residual"] = json!(r);
                }
                if let Some(w) = &v.witness {
                    o["witness"] = json!(w);
                }
                o
            })
            .collect();
        let mut doc = json!({
            "command": self.command,
            "pass": self.pass(),
            "verdicts": verdicts,
        });
        if let Some(p) = &self.payload {
            doc["payload"] = p.clone();
        }
        if let Some(s) = self.seed {
            doc["seed"] = json!(s);
        }
        doc
    }

    fn text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(s) = self.seed {
            out.push_str(&format!("seed: {s}\n"));
        }
        for v in &self.verdicts {
            out.push_str(&format!(
                "  {:<28} {}",
                v.name,
                if v.pass { "pass" } else { "FAIL" }
            ));
            if let Some(r) = v.residual {
                out.push_str(&format!("  (residual {r:.3e})"));
            }
            out.push('\n');
            if let Some(w) = &v.witness {
                out.push_str(&format!("      witness: {w}\n"));
            }
        }
        if let Some(p) = &self.payload {
            out.push_str("payload:\n");
            for l in serde_json::to_string_pretty(p).unwrap_or_default().lines() {
                out.push_str(&format!("  {l}\n"));
            }
        }
        out.push_str(&format!(
            "result: {} (elapsed {} ms)\n",
            if self.pass() { "pass" } else { "FAIL" },
            self.elapsed_ms
        ));
        out
    }
}

fn scalar_text(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) => r.to_string(),
        Scalar::Approx(x) => format!("{x}"),
    }
}

fn vector_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(scalar_text).collect();
    format!("({})", parts.join(", "))
}

fn axiom_witness_text(w: &AxiomWitness) -> String {
    format!(
        "{} at {:?}: lhs={} rhs={}",
        w.axiom,
        w.indices,
        vector_text(&w.lhs),
        vector_text(&w.rhs)
    )
}

fn fhg_witness_text(w: &FhgWitness) -> String {
    format!("{} at {:?}", w.law, w.tuple)
}

fn load(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::schema(format!("cannot read {}: {e}", path.display())))?;
    hjson::parse_document(&text)
}

fn load_matrix(path: &Path, mode: Mode) -> Result<Matrix, Error> {
    hjson::matrix_from_value(&load(path)?, mode)
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("HOMLIE_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_SEED)
}

fn cmd_check(path: &Path) -> Result<RunReport, Error> {
    match hjson::document_from_value(&load(path)?)? {
        hjson::Document::Algebra(alg) => {
            let report = alg.check_axioms();
            let witness_for = |axiom: &str| {
                report
                    .witnesses
                    .iter()
                    .find(|w| w.axiom == axiom)
                    .map(axiom_witness_text)
            };
            let verdicts = vec![
                Verdict::plain("skew", report.skew),
                Verdict {
                    name: "multiplicative",
                    pass: report.multiplicative,
                    residual: None,
                    witness: witness_for("multiplicative"),
                },
                Verdict {
                    name: "hom_jacobi",
                    pass: report.hom_jacobi,
                    residual: None,
                    witness: witness_for("hom_jacobi"),
                },
                Verdict {
                    name: "regular",
                    pass: report.regular,
                    residual: None,
                    witness: witness_for("regular"),
                },
            ];
            Ok(RunReport {
                command: "check",
                verdicts,
                payload: None,
                seed: None,
                elapsed_ms: 0,
            })
        }
        hjson::Document::Group(g) => Ok(RunReport {
            command: "check",
            verdicts: fhg_verdicts(&g.check_axioms()),
            payload: None,
            seed: None,
            elapsed_ms: 0,
        }),
    }
}

fn fhg_verdicts(report: &FhgReport) -> Vec<Verdict> {
    let rows: [(&'static str, bool, &'static str); 7] = [
        ("twist_multiplicative", report.twist_multiplicative, "twist_multiplicative"),
        ("hom_associative", report.hom_associative, "hom_associative"),
        ("unit_law", report.unit_law, "unit_unique"),
        ("has_inverses", report.has_inverses, "has_inverses"),
        ("twist_fixes_unit", report.twist_fixes_unit, "twist_fixes_unit"),
        ("unique_inverses", report.unique_inverses, "unique_inverses"),
        (
            "inverse_antihomomorphism",
            report.inverse_antihomomorphism,
            "inverse_antihomomorphism",
        ),
    ];
    rows.into_iter()
        .map(|(name, pass, law)| Verdict {
            name,
            pass,
            residual: None,
            witness: report
                .witnesses
                .iter()
                .find(|w| w.law == law)
                .map(fhg_witness_text),
        })
        .collect()
}

fn cmd_cohomology(
    path: Option<&Path>,
    rep: RepKind,
    rep_file: Option<&Path>,
    max_degree: usize,
) -> Result<RunReport, Error> {
    let mut verdicts = Vec::new();
    let rep = match rep_file {
        Some(f) => {
            let rep = hjson::representation_from_value(&load(f)?)?;
            let check = check_representation(&rep);
            verdicts.push(Verdict {
                name: "representation_axioms",
                pass: check.pass,
                residual: None,
                witness: check.witness.map(|idx| format!("at {idx:?}")),
            });
            rep
        }
        None => {
            let alg = match hjson::document_from_value(&load(path.expect("clap"))?)? {
                hjson::Document::Algebra(a) => a,
                hjson::Document::Group(_) => {
                    return Err(Error::schema("cohomology expects an algebra file"))
                }
            };
            match rep {
                RepKind::Adjoint => Representation::adjoint(&alg)?,
                RepKind::Trivial => Representation::trivial(alg, 1)?,
            }
        }
    };
    for k in 0..=max_degree {
        let chk = rep.d_squared_check(k)?;
        let name: &'static str = match k {
            0 => "d_squared_zero_k0",
            1 => "d_squared_zero_k1",
            2 => "d_squared_zero_k2",
            _ => "d_squared_zero",
        };
        verdicts.push(Verdict::with_residual(name, chk.pass, chk.max_abs));
    }
    let dims = rep.cohomology_dims(max_degree)?;
    Ok(RunReport {
        command: "cohomology",
        verdicts,
        payload: Some(hjson::cohomology_dims_to_value(&dims)),
        seed: None,
        elapsed_ms: 0,
    })
}

fn cmd_derivations(path: &Path) -> Result<RunReport, Error> {
    let alg = match hjson::document_from_value(&load(path)?)? {
        hjson::Document::Algebra(a) => a,
        hjson::Document::Group(_) => {
            return Err(Error::schema("derivations expects an algebra file"))
        }
    };
    let space = derivation_space(&alg)?;
    let summary = format!(
        "dim {} = {} inner + {} outer",
        space.dim, space.inner_dim, space.outer_dim
    );
    Ok(RunReport {
        command: "derivations",
        verdicts: vec![Verdict {
            name: "derivation_space",
            pass: true,
            residual: None,
            witness: Some(summary),
        }],
        payload: Some(hjson::derivation_space_to_value(&space)),
        seed: None,
        elapsed_ms: 0,
    })
}

fn cmd_hexp(beta: &Path, matrix: &Path, t: f64) -> Result<RunReport, Error> {
    let sp = TwistedMatrixSpace::new(load_matrix(beta, Mode::Approx)?)?;
    let a = load_matrix(matrix, Mode::Approx)?;
    let result = sp.one_param(&a, t)?;
    Ok(RunReport {
        command: "hexp",
        verdicts: Vec::new(),
        payload: Some(hjson::matrix_to_value(&result)),
        seed: None,
        elapsed_ms: 0,
    })
}

fn cmd_verify_commutator(beta: &Path, a: &Path, b: &Path, step: f64) -> Result<RunReport, Error> {
    let sp = TwistedMatrixSpace::new(load_matrix(beta, Mode::Approx)?)?;
    let a = load_matrix(a, Mode::Approx)?;
    let b = load_matrix(b, Mode::Approx)?;
    let check = sp.commutator_fd_verify(&a, &b, step)?;
    let tol = 1e-5f64.max(100.0 * step * step);
    Ok(RunReport {
        command: "verify-commutator",
        verdicts: vec![Verdict::with_residual(
            "commutator_stencil",
            check.residual <= tol,
            check.residual,
        )],
        payload: Some(hjson::commutator_check_to_value(&check)),
        seed: None,
        elapsed_ms: 0,
    })
}

fn load_group(path: &Path) -> Result<FiniteHomGroup, Error> {
    hjson::group_from_value(&load(path)?)
}

fn matrix_samples(beta: &Matrix, n: usize, seed: u64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_invertible(&mut rng, beta.rows())).collect()
}

fn cmd_group_check(
    path: Option<&Path>,
    beta: Option<&Path>,
    samples: usize,
    seed: Option<u64>,
) -> Result<RunReport, Error> {
    match (path, beta) {
        (Some(p), None) => {
            let g = load_group(p)?;
            Ok(RunReport {
                command: "group check",
                verdicts: fhg_verdicts(&g.check_axioms()),
                payload: None,
                seed: None,
                elapsed_ms: 0,
            })
        }
        (None, Some(bp)) => {
            let seed = resolve_seed(seed);
            let sp = TwistedMatrixSpace::new(load_matrix(bp, Mode::Approx)?)?;
            let report = sp.check_homgroup(&matrix_samples(sp.beta(), samples, seed))?;
            let verdicts = vec![
                Verdict::with_residual(
                    "twist_multiplicative",
                    report.multiplicativity <= TAU_RES,
                    report.multiplicativity,
                ),
                Verdict::with_residual(
                    "hom_associative",
                    report.hom_associativity <= TAU_RES,
                    report.hom_associativity,
                ),
                Verdict::with_residual("unit_law", report.unit <= TAU_RES, report.unit),
                Verdict::with_residual("has_inverses", report.inverse <= TAU_RES, report.inverse),
            ];
            Ok(RunReport {
                command: "group check",
                verdicts,
                payload: None,
                seed: Some(seed),
                elapsed_ms: 0,
            })
        }
        _ => Err(Error::schema(
            "group check needs a finite group file or --beta",
        )),
    }
}

fn cmd_group_weakhom(map: &Path, from: &Path, to: &Path) -> Result<RunReport, Error> {
    let f = hjson::map_from_value(&load(map)?)?;
    let g = load_group(from)?;
    let h = load_group(to)?;
    let rep = check_weak_hom(&f, &g, &h)?;
    let witness = rep.witness.as_ref().map(fhg_witness_text);
    // the headline verdicts; strong/twist-commuting status is informational
    let verdicts = vec![
        Verdict {
            name: "unit_preserved",
            pass: rep.unit_preserved,
            residual: None,
            witness: witness.clone(),
        },
        Verdict {
            name: "weak_homomorphism",
            pass: rep.weak,
            residual: None,
            witness,
        },
    ];
    Ok(RunReport {
        command: "group weakhom",
        verdicts,
        payload: Some(json!({
            "homomorphism": rep.homomorphism,
            "twist_commutes": rep.twist_commutes,
        })),
        seed: None,
        elapsed_ms: 0,
    })
}

fn cmd_group_adaction(
    path: Option<&Path>,
    beta: Option<&Path>,
    seed: Option<u64>,
) -> Result<RunReport, Error> {
    match (path, beta) {
        (Some(p), None) => {
            let g = load_group(p)?;
            let report = g.tilde_ad_check()?;
            let witness_for = |law: &str| {
                report
                    .witnesses
                    .iter()
                    .find(|w| w.law == law)
                    .map(fhg_witness_text)
            };
            Ok(RunReport {
                command: "group adaction",
                verdicts: vec![
                    Verdict {
                        name: "unit_acts_as_twist",
                        pass: report.unit_action,
                        residual: None,
                        witness: witness_for("unit_acts_as_twist"),
                    },
                    Verdict {
                        name: "action_composition",
                        pass: report.composition,
                        residual: None,
                        witness: witness_for("action_composition"),
                    },
                ],
                payload: None,
                seed: None,
                elapsed_ms: 0,
            })
        }
        (None, Some(bp)) => {
            let seed = resolve_seed(seed);
            let sp = TwistedMatrixSpace::new(load_matrix(bp, Mode::Approx)?)?;
            let report = sp.tilde_ad_action_check(&matrix_samples(sp.beta(), 4, seed))?;
            Ok(RunReport {
                command: "group adaction",
                verdicts: vec![
                    Verdict::with_residual(
                        "unit_acts_as_twist",
                        report.unit_residual <= TAU_RES,
                        report.unit_residual,
                    ),
                    Verdict::with_residual(
                        "action_composition",
                        report.composition_residual <= TAU_RES,
                        report.composition_residual,
                    ),
                ],
                payload: None,
                seed: Some(seed),
                elapsed_ms: 0,
            })
        }
        _ => Err(Error::schema(
            "group adaction needs a finite group file or --beta",
        )),
    }
}

fn run(cmd: &Cmd) -> Result<RunReport, Error> {
    match cmd {
        Cmd::Check { path } => cmd_check(path),
        Cmd::Cohomology {
            path,
            rep,
            rep_file,
            max_degree,
        } => cmd_cohomology(path.as_deref(), *rep, rep_file.as_deref(), *max_degree),
        Cmd::Derivations { path } => cmd_derivations(path),
        Cmd::Hexp { beta, matrix, t } => cmd_hexp(beta, matrix, *t),
        Cmd::VerifyCommutator { beta, a, b, step } => {
            cmd_verify_commutator(beta, a, b, *step)
        }
        Cmd::Group(g) => match g {
            GroupCmd::Check {
                path,
                beta,
                samples,
                seed,
            } => cmd_group_check(path.as_deref(), beta.as_deref(), *samples, *seed),
            GroupCmd::Weakhom { map, from, to } => cmd_group_weakhom(map, from, to),
            GroupCmd::Adaction { path, beta, seed } => {
                cmd_group_adaction(path.as_deref(), beta.as_deref(), *seed)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.cmd) {
        Ok(mut report) => {
            report.elapsed_ms = started.elapsed().as_millis();
            let rendered = if cli.json {
                let mut s =
                    serde_json::to_string_pretty(&report.to_json()).expect("serializable");
                s.push('\n');
                s
            } else {
                report.text()
            };
            // tolerate a closed pipe (e.g. piping into `head`)
            use std::io::Write;
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
