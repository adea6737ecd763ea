//! `pairkit`: instance registry, law-suite runner, and per-domain commands
//! over the kernel. Reports are machine-readable and byte-stable for fixed
//! flags; exit code 0 means every selected law passed, 1 a law failure,
//! 2 a usage or parse problem.

use clap::{Args, Parser, Subcommand};
use pairkit_core::instances::{self, AnyPair};
use pairkit_core::pairs::Pair;
use pairkit_core::suite::{run_suite, SuiteConfig};
use pairkit_core::{cong, hyper, linalg, matrix, morph, poly, with_pair, KernelError};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pairkit",
    version,
    about = "exact kernel for semirings with a null part"
)]
struct Cli {
    /// Seed recorded in reports and used by any sampled sweep.
    #[arg(long, global = true, default_value_t = 0xA11CE)]
    seed: u64,
    /// Tuple-length bound for the bounded decision procedures.
    #[arg(long, global = true, default_value_t = 4)]
    bound: usize,
    /// Machine-readable JSON on stdout, nothing else.
    #[arg(long, global = true)]
    json: bool,
    /// Comma-separated element names overriding witness-search palettes.
    #[arg(long, global = true)]
    palette: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect or list the built-in instances.
    Instance(InstanceArgs),
    /// Run a law suite against an instance.
    Verify(VerifyArgs),
    /// Determinant-side matrix operations.
    Matrix(MatrixArgs),
    /// Polynomial evaluation, roots, divisibility, derivatives.
    Poly(PolyArgs),
    /// Dependence-condition sweeps.
    Linalg(LinalgArgs),
    /// Congruence enumeration and the twist-product spectrum.
    Cong(CongArgs),
    /// Hypergroup constructions.
    Hyper(HyperArgs),
    /// Morphism classification.
    Morphism(MorphismArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Registry name; omit with --list.
    name: Option<String>,
    /// Dump the full descriptor of a finite instance.
    #[arg(long)]
    describe: bool,
    /// List registry names.
    #[arg(long)]
    list: bool,
    /// Load the instance from a JSON descriptor file instead.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    name: Option<String>,
    /// Law selection: `all` or a glob like `matrix.*`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Load the instance from a JSON descriptor file instead.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args)]
struct MatrixArgs {
    /// det | charpoly | adjoint | eigen
    op: String,
    #[arg(long)]
    instance: String,
    /// JSON array of element-name rows.
    #[arg(long)]
    matrix: String,
}

#[derive(Args)]
struct PolyArgs {
    /// eval | roots | divides | derivative
    op: String,
    #[arg(long)]
    instance: String,
    /// Polynomial literal such as `3*l^2 + 9*l^4`.
    #[arg(long)]
    poly: String,
    /// Evaluation point for `eval`.
    #[arg(long)]
    at: Option<String>,
    /// Divisor literal for `divides`.
    #[arg(long)]
    by: Option<String>,
    /// plain | surpass | null
    #[arg(long, default_value = "surpass")]
    kind: String,
    #[arg(long, default_value_t = 2)]
    degree_bound: u32,
}

#[derive(Args)]
struct LinalgArgs {
    /// Only `conditions` is defined.
    op: String,
    #[arg(long)]
    instance: String,
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    /// Comma-separated entry palette; the full carrier when omitted.
    #[arg(long)]
    palette: Option<String>,
}

#[derive(Args)]
struct CongArgs {
    /// enumerate | primes
    op: String,
    #[arg(long)]
    instance: String,
}

#[derive(Args)]
struct HyperArgs {
    /// quotient
    op: String,
    /// Field name like `F5`.
    #[arg(long)]
    field: Option<String>,
    /// Comma-separated subgroup elements, e.g. `1,4`.
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct MorphismArgs {
    /// check | registry
    op: String,
    /// JSON map file with from/to/graph.
    #[arg(long)]
    map: Option<String>,
    /// weak | preceq | hom
    #[arg(long, default_value = "weak")]
    class: String,
}

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic when output is paged.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_instance(name: Option<&str>, file: Option<&str>) -> pairkit_core::Result<AnyPair> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| KernelError::Parse {
            location: path.to_string(),
            message: e.to_string(),
        })?;
        let label = name.unwrap_or("loaded");
        return Ok(AnyPair::Finite(instances::load_descriptor(label, &text)?));
    }
    match name {
        Some(n) => instances::lookup(n),
        None => Err(KernelError::Invalid(
            "an instance name or --file is required".into(),
        )),
    }
}

fn run(cli: &Cli) -> pairkit_core::Result<ExitCode> {
    let cfg = SuiteConfig {
        bound: cli.bound,
        seed: cli.seed,
        palette: cli
            .palette
            .as_ref()
            .map(|s| s.split(',').map(|t| t.trim().to_string()).collect()),
    };
    match &cli.command {
        Command::Instance(a) => {
            if a.list {
                if cli.json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&instances::registry_names()).unwrap()
                    );
                } else {
                    for n in instances::registry_names() {
                        println!("{n}");
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            let inst = load_instance(a.name.as_deref(), a.file.as_deref())?;
            if a.describe || cli.json {
                let classification = with_pair!(&inst, p => serde_json::to_value(
                    pairkit_core::pairs::classify(p, cli.bound)
                ).unwrap());
                let mut doc = serde_json::json!({
                    "name": inst.name(),
                    "capabilities": serde_json::to_value(inst.caps()).unwrap(),
                    "classification": classification,
                });
                if let Some(f) = inst.as_finite() {
                    doc["descriptor"] = serde_json::to_value(f.descriptor()).unwrap();
                }
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                let caps = inst.caps();
                println!(
                    "{}: enumerable={}, distributive={}, negation witness={}",
                    inst.name(),
                    caps.enumerable,
                    caps.distributive,
                    inst.claims_property_n()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(a) => {
            let inst = load_instance(a.name.as_deref(), a.file.as_deref())?;
            let started = std::time::Instant::now();
            let report = run_suite(&inst, &a.suite, cfg.clone());
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for c in &report.checks {
                    let status = format!("{:?}", c.status).to_lowercase();
                    match &c.witness {
                        Some(w) => println!("{:<9} {:<34} {w}", status, c.law_id),
                        None => println!("{:<9} {}", status, c.law_id),
                    }
                }
                eprintln!(
                    "{}: {} checks in {:.2}s",
                    report.instance,
                    report.checks.len(),
                    started.elapsed().as_secs_f64()
                );
            }
            Ok(if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Matrix(a) => {
            let inst = instances::lookup(&a.instance)?;
            let doc = with_pair!(&inst, p => {
                let m = matrix::parse_matrix(p, &a.matrix)?;
                match a.op.as_str() {
                    "det" => serde_json::json!({
                        "detPlus": p.el_name(&matrix::det_plus(p, &m)?),
                        "detMinus": p.el_name(&matrix::det_minus(p, &m)?),
                        "dagDet": p.el_name(&matrix::dag_det(p, &m)?),
                        "opDagDet": p.el_name(&matrix::dag_det_op(p, &m)?),
                        "singular": matrix::is_singular(p, &m)?,
                        "dagSingular": matrix::is_dag_singular(p, &m)?,
                    }),
                    "charpoly" => {
                        let (d, f) = matrix::char_poly(p, &m)?;
                        let terms: Vec<serde_json::Value> = f
                            .terms
                            .iter()
                            .map(|(k, c)| serde_json::json!({"power": k, "coeff": d.el_name(c)}))
                            .collect();
                        serde_json::json!({
                            "terms": terms,
                            "cayleyHamilton": matrix::cayley_hamilton_check(p, &m)?,
                        })
                    }
                    "adjoint" => {
                        let adj = matrix::dag_adjoint(p, &m)?;
                        serde_json::json!({ "adjoint": matrix::matrix_names(p, &adj) })
                    }
                    "eigen" => {
                        let eigens = matrix::eigen_search(p, &m, p.canonical_rel())?;
                        let list: Vec<serde_json::Value> = eigens
                            .iter()
                            .map(|(al, v)| {
                                serde_json::json!({
                                    "value": p.el_name(al),
                                    "vector": v.iter().map(|x| p.el_name(x)).collect::<Vec<_>>(),
                                })
                            })
                            .collect();
                        serde_json::json!({ "eigenpairs": list })
                    }
                    other => {
                        return Err(KernelError::Invalid(format!("unknown matrix op `{other}`")))
                    }
                }
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Poly(a) => {
            let inst = instances::lookup(&a.instance)?;
            let doc = with_pair!(&inst, p => {
                let f = poly::parse_upoly(p, &a.poly)?;
                match a.op.as_str() {
                    "eval" => {
                        let at = a.at.as_deref().ok_or_else(|| {
                            KernelError::Invalid("`eval` needs --at".into())
                        })?;
                        let b = p.parse_el(at).ok_or_else(|| KernelError::Parse {
                            location: at.into(),
                            message: "unknown element".into(),
                        })?;
                        let v = poly::eval(p, &f, &b);
                        serde_json::json!({
                            "value": p.el_name(&v),
                            "isRoot": p.is_null(&v),
                        })
                    }
                    "roots" => {
                        let mut roots = Vec::new();
                        for b in p.sample() {
                            if poly::is_root(p, &f, &b) {
                                roots.push(p.el_name(&b));
                            }
                        }
                        serde_json::json!({
                            "roots": roots,
                            "sampled": !p.caps().enumerable,
                        })
                    }
                    "derivative" => {
                        let d = poly::derivative(p, &f);
                        let terms: Vec<serde_json::Value> = d
                            .terms
                            .iter()
                            .map(|(k, c)| serde_json::json!({"power": k, "coeff": p.el_name(c)}))
                            .collect();
                        serde_json::json!({ "terms": terms })
                    }
                    "divides" => {
                        let by = a.by.as_deref().ok_or_else(|| {
                            KernelError::Invalid("`divides` needs --by (the divisor)".into())
                        })?;
                        let f1 = poly::parse_upoly(p, by)?;
                        let kind = match a.kind.as_str() {
                            "plain" => poly::DivKind::Plain,
                            "surpass" => poly::DivKind::Surpassed,
                            "null" => poly::DivKind::Null,
                            other => {
                                return Err(KernelError::Invalid(format!(
                                    "unknown divisibility kind `{other}`"
                                )))
                            }
                        };
                        let w = poly::divides(p, kind, p.canonical_rel(), &f1, &f, a.degree_bound)?;
                        match w {
                            None => serde_json::json!({ "witness": null, "note": "none within bound" }),
                            Some(g) => {
                                let terms: Vec<serde_json::Value> = g
                                    .terms
                                    .iter()
                                    .map(|(k, c)| {
                                        serde_json::json!({"power": k, "coeff": p.el_name(c)})
                                    })
                                    .collect();
                                serde_json::json!({ "witness": terms })
                            }
                        }
                    }
                    other => {
                        return Err(KernelError::Invalid(format!("unknown poly op `{other}`")))
                    }
                }
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Linalg(a) => {
            if a.op != "conditions" {
                return Err(KernelError::Invalid(format!(
                    "unknown linalg op `{}`",
                    a.op
                )));
            }
            let inst = instances::lookup(&a.instance)?;
            let Some(p) = inst.as_finite() else {
                return Err(KernelError::Unsupported(
                    "condition sweeps need an enumerable instance".into(),
                ));
            };
            let palette: Vec<u16> = match &a.palette {
                None => p.elements().unwrap(),
                Some(s) => {
                    let mut out = Vec::new();
                    for tok in s.split(',') {
                        out.push(p.parse_el(tok.trim()).ok_or_else(|| KernelError::Parse {
                            location: tok.into(),
                            message: "unknown element".into(),
                        })?);
                    }
                    out
                }
            };
            let coeffs: Vec<u16> = palette
                .iter()
                .copied()
                .filter(|e| p.is_tangible(e))
                .collect();
            let report = linalg::condition_harness(p, a.nmax, &palette, &coeffs)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Cong(a) => {
            let inst = instances::lookup(&a.instance)?;
            let Some(p) = inst.as_finite() else {
                return Err(KernelError::Unsupported(
                    "congruence enumeration needs an enumerable instance".into(),
                ));
            };
            let all = cong::enumerate_congruences(p)?;
            let describe = |c: &cong::Congruence| -> serde_json::Value {
                let classes: Vec<Vec<String>> = c
                    .classes()
                    .iter()
                    .map(|cl| cl.iter().map(|e| p.el_name(e)).collect())
                    .collect();
                serde_json::json!(classes)
            };
            let doc = match a.op.as_str() {
                "enumerate" => {
                    let list: Vec<serde_json::Value> = all.iter().map(describe).collect();
                    serde_json::json!({ "congruences": list })
                }
                "primes" => {
                    let list: Vec<serde_json::Value> = all
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "classes": describe(c),
                                "prime": cong::is_prime(p, c, &all),
                                "semiprime": cong::is_semiprime(p, c, &all),
                                "irreducible": cong::is_irreducible(c, &all),
                            })
                        })
                        .collect();
                    serde_json::json!({ "congruences": list })
                }
                other => return Err(KernelError::Invalid(format!("unknown cong op `{other}`"))),
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Hyper(a) => {
            if a.op != "quotient" {
                return Err(KernelError::Invalid(format!("unknown hyper op `{}`", a.op)));
            }
            let field = a
                .field
                .as_deref()
                .ok_or_else(|| KernelError::Invalid("`quotient` needs --field, e.g. F5".into()))?;
            let prime: u8 =
                field
                    .trim_start_matches(['F', 'f'])
                    .parse()
                    .map_err(|_| KernelError::Parse {
                        location: field.into(),
                        message: "expected a prime field like F5".into(),
                    })?;
            let subgroup: Vec<u8> = match &a.subgroup {
                None => (1..prime).collect(),
                Some(s) => {
                    let mut out = Vec::new();
                    for tok in s.split(',') {
                        out.push(tok.trim().parse().map_err(|_| KernelError::Parse {
                            location: tok.into(),
                            message: "expected a field element".into(),
                        })?);
                    }
                    out
                }
            };
            let h = hyper::quotient_hyperfield_fp(prime, &subgroup)?;
            let axioms = hyper::verify_hypergroup(&h);
            let doc = serde_json::json!({
                "hypergroup": serde_json::to_value(hyper::hypergroup_to_json(&h)).unwrap(),
                "axiomsPass": axioms.all_ok(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(if axioms.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Morphism(a) => match a.op.as_str() {
            "registry" => {
                let reports = morph::registry_consistency()?;
                println!("{}", serde_json::to_string_pretty(&reports).unwrap());
                Ok(ExitCode::SUCCESS)
            }
            "check" => {
                let path = a
                    .map
                    .as_deref()
                    .ok_or_else(|| KernelError::Invalid("`check` needs --map <file>".into()))?;
                let text = std::fs::read_to_string(path).map_err(|e| KernelError::Parse {
                    location: path.to_string(),
                    message: e.to_string(),
                })?;
                let (p, q, graph) = morph::map_from_json(&text)?;
                let report = morph::map_report("user-map", &p, &q, &graph)?;
                let verdict = match a.class.as_str() {
                    "weak" => report.weak,
                    "preceq" => report.preceq.unwrap_or(false),
                    "hom" => report.hom,
                    other => {
                        return Err(KernelError::Invalid(format!(
                            "unknown morphism class `{other}`"
                        )))
                    }
                };
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
                Ok(if verdict {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            other => Err(KernelError::Invalid(format!(
                "unknown morphism op `{other}`"
            ))),
        },
    }
}
