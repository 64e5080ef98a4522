use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use centsplit::centralizer::{brute_force_w_of_s, SemisimpleClass};
use centsplit::frobenius::{centralizer_f_stable, f_stable_splitting, frobenius_datum, FrobeniusAction};
use centsplit::fundgroup::FundamentalGroup;
use centsplit::lifting::{weyl_word_1based, ConjugatorJson, LiftMethod, Lifter, SplittingCertificate};
use centsplit::verify::{self, VerifyConfig};
use centsplit::weyl::weyl_order;
use centsplit::{Error, RationalVector, RootDatum};

const SCHEMA_VERSION: u32 = 1;

/// `println!` that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {
        write_line(format_args!($($arg)*))
    };
}

fn write_line(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

/// Centralizers of semisimple elements and splittings of their component groups.
#[derive(Parser, Debug)]
#[command(name = "centsplit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Characteristic override (0 or a prime).
    #[arg(long, global = true)]
    p: Option<u64>,

    /// Largest |W| the brute-force oracle may enumerate.
    #[arg(long, global = true, env = "CENTSPLIT_ORACLE_LIMIT", default_value_t = 51840)]
    limit: u128,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Basis {
    /// Simple-coroot coordinates (central coordinates last).
    Coroot,
    /// Fundamental-coweight coordinates (central coordinates last).
    Fundamental,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Recipe,
    Search,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize a root datum.
    Describe { datum: String },
    /// Normalize λ and compute Φ(s), W^0(s) and A_G(s).
    Centralize {
        datum: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Basis::Coroot)]
        basis: Basis,
        /// Build and verify the splitting certificate.
        #[arg(long)]
        certify: bool,
        /// Cross-check against enumeration of W(s).
        #[arg(long)]
        oracle: bool,
    },
    /// Show the lift τ of 𝒜 and τ_2 on 𝒜_G.
    Lift {
        datum: String,
        #[arg(long, value_enum, default_value_t = Method::Recipe)]
        method: Method,
    },
    /// F-stability of C(s) and of the splitting for t ↦ q·t.
    Frobenius {
        datum: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Basis::Coroot)]
        basis: Basis,
        #[arg(long)]
        q: u64,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        /// Also write the JSON report to this file.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification { .. } => 3,
        Error::TooLarge { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn parse_datum(s: &str, p: Option<u64>) -> Result<RootDatum, Error> {
    let d: RootDatum = s.parse()?;
    match p {
        Some(p) => d.with_p(p),
        None => Ok(d),
    }
}

fn parse_class(r: &RootDatum, lambda: &str, basis: Basis) -> Result<SemisimpleClass, Error> {
    let v: RationalVector = lambda.parse()?;
    match basis {
        Basis::Coroot => SemisimpleClass::new(r, v),
        Basis::Fundamental => SemisimpleClass::from_fundamental(r, &v),
    }
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Describe { datum } => describe(cli, &parse_datum(datum, cli.p)?),
        Command::Centralize {
            datum,
            lambda,
            basis,
            certify,
            oracle,
        } => {
            let r = parse_datum(datum, cli.p)?;
            let s = parse_class(&r, lambda, *basis)?;
            centralize(cli, &s, *certify, *oracle)
        }
        Command::Lift { datum, method } => lift(cli, &parse_datum(datum, cli.p)?, *method),
        Command::Frobenius { datum, lambda, basis, q } => {
            let r = parse_datum(datum, cli.p)?;
            let s = parse_class(&r, lambda, *basis)?;
            frobenius(cli, &s, FrobeniusAction::new(*q)?)
        }
        Command::Verify {
            suite,
            seed,
            max_rank,
            output,
        } => {
            let suites = verify::parse_suites(suite)?;
            let cfg = VerifyConfig {
                seed: *seed,
                max_rank: *max_rank,
                oracle_limit: cli.limit,
                ..VerifyConfig::default()
            };
            let report = verify::run(&suites, &cfg);
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            if let Some(path) = output {
                std::fs::write(path, format!("{text}\n"))
                    .map_err(|e| Error::Unsupported(format!("cannot write {}: {e}", path.display())))?;
            }
            if cli.json {
                out!("{text}");
            } else {
                for s in &report.suites {
                    let status = if s.passed { "PASS" } else { "FAIL" };
                    out!("{status} {} count={} failures={}", s.name, s.count, s.failures);
                    for note in &s.notes {
                        out!("  note: {note}");
                    }
                    for c in s.cases.iter().filter(|c| !c.ok) {
                        out!(
                            "  failed {} [{}]: {}",
                            c.key,
                            c.identity,
                            c.detail.as_deref().unwrap_or("")
                        );
                    }
                }
            }
            Ok(if report.passed { 0 } else { 3 })
        }
    }
}

fn structure_string(f: &[u64]) -> String {
    if f.is_empty() {
        "trivial".into()
    } else {
        f.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x ")
    }
}

fn describe(cli: &Cli, r: &RootDatum) -> Result<u8, Error> {
    let fg = FundamentalGroup::new(r)?;
    let ag: Vec<u64> = {
        let elems = fg.a_sub_g(r)?;
        centsplit::group::invariant_factors(&elems.iter().map(|a| a.order).collect::<Vec<_>>())
    };
    let minuscule: Vec<usize> = r.minuscule_coweights().iter().map(|(j, _)| j + 1).collect();
    let rho = r.rho_check();
    let basis: Vec<Vec<String>> = r.y().basis().iter().map(|b| b.to_strings()).collect();
    if cli.json {
        print_json(&json!({
            "version": SCHEMA_VERSION,
            "datum": r.name(),
            "type": r.cartan_type().to_string(),
            "roots": r.num_roots(),
            "weyl_order": weyl_order(r).to_string(),
            "connection_index": r.cartan_type().connection_index(),
            "isogeny_index": r.isogeny_index(),
            "y_basis": basis,
            "fundamental_group": fg.structure(),
            "fundamental_group_of_g": ag,
            "minuscule_nodes": minuscule,
            "rho_check": rho.to_strings(),
        }));
    } else {
        out!("datum: {}", r.name());
        out!("type: {}", r.cartan_type());
        out!("|Φ| = {}", r.num_roots());
        out!("|W| = {}", weyl_order(r));
        out!("connection index = {}", r.cartan_type().connection_index());
        out!("[Y : Q^∨] = {}", r.isogeny_index());
        out!("𝒜 ≅ {}", structure_string(&fg.structure()));
        out!("𝒜_G ≅ {}", structure_string(&ag));
        out!("minuscule nodes: {minuscule:?}");
        out!("ρ^∨ = {rho}");
    }
    Ok(0)
}

fn certificate_value(cert: &SplittingCertificate) -> Value {
    serde_json::to_value(cert.to_json()).expect("certificate serializes")
}

fn centralize(cli: &Cli, s: &SemisimpleClass, certify: bool, oracle: bool) -> Result<u8, Error> {
    let r = s.datum();
    let lifter = Lifter::new(r, LiftMethod::Recipe)?;
    let data = centsplit::centralizer::analyze(s, lifter.fundamental_group())?;
    let cert = if certify { Some(lifter.certificate(s)?) } else { None };
    let oracle_result = if oracle {
        if weyl_order(r) > cli.limit {
            return Err(Error::TooLarge {
                order: weyl_order(r),
                limit: cli.limit,
            });
        }
        let o = brute_force_w_of_s(&data.normalized, cli.limit)?;
        let agree = o.w0_s_order as u128 == data.w0s_order
            && o.w_s_order as u128 == data.w0s_order * data.a_w_s.len() as u128
            && o.invariant_factors == data.a_g_structure();
        if !agree {
            return Err(Error::verification(
                "oracle",
                format!("enumeration gives {o:?}, pipeline gives |W0(s)| = {} and A_G(s) = {:?}", data.w0s_order, data.a_g_structure()),
            ));
        }
        Some(o)
    } else {
        None
    };
    let basis: Vec<Vec<i64>> = data.basis_s.iter().map(|&a| r.root(a).coords.clone()).collect();
    if cli.json {
        let mut v = json!({
            "version": SCHEMA_VERSION,
            "datum": r.name(),
            "lambda": s.lambda().to_strings(),
            "projected_to_p_prime": s.projected,
            "normalized": data.normalized.lambda().to_strings(),
            "conjugator": serde_json::to_value(ConjugatorJson::new(r, &data.conjugator)).expect("serializes"),
            "phi_s": {
                "size": data.phi_s.len(),
                "positive": data.phi_pos_s.len(),
                "basis": basis,
            },
            "w0s": {
                "type": data.w0s_type.to_string(),
                "order": data.w0s_order.to_string(),
            },
            "a_g_s": data.a_g_structure(),
        });
        if let Some(c) = &cert {
            v["certificate"] = certificate_value(c);
        }
        if let Some(o) = &oracle_result {
            v["oracle"] = json!({
                "w_s": o.w_s_order,
                "w0_s": o.w0_s_order,
                "invariant_factors": o.invariant_factors,
            });
        }
        print_json(&v);
    } else {
        if s.projected {
            out!("warning: λ had p-torsion and was replaced by its p'-part");
        }
        out!("datum: {}", r.name());
        out!("λ = {}", s.lambda());
        out!("normalized λ' = {}", data.normalized.lambda());
        out!(
            "conjugator: w = [{}], μ = {}",
            weyl_word_1based(r, &data.conjugator.w)
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            data.conjugator.mu
        );
        out!("|Φ(s)| = {}", data.phi_s.len());
        out!("basis of Φ(s): {basis:?}");
        out!("W^0(s): type {}, order {}", data.w0s_type, data.w0s_order);
        out!("A_G(s) ≅ {}", structure_string(&data.a_g_structure()));
        if let Some(o) = &oracle_result {
            out!(
                "oracle: |W(s)| = {}, |W^0(s)| = {}, invariant factors {:?} (agrees)",
                o.w_s_order, o.w0_s_order, o.invariant_factors
            );
        }
        if let Some(c) = &cert {
            out!("certificate: |A_0| = {}", c.a_zero.len());
            for (x, n) in c.generators.iter().zip(&c.generator_orders) {
                out!(
                    "  generator: w = {:?}, t = {}, order {n}",
                    weyl_word_1based(r, &x.w),
                    x.t
                );
            }
            out!("  verified: {}", c.checks.join(", "));
        }
    }
    Ok(0)
}

fn lift(cli: &Cli, r: &RootDatum, method: Method) -> Result<u8, Error> {
    let method = match method {
        Method::Recipe => LiftMethod::Recipe,
        Method::Search => LiftMethod::Search,
    };
    let lifter = Lifter::new(r, method)?;
    let sc = lifter.sc_datum();
    let mut flat = Vec::new();
    for l in &lifter.flat {
        for g in &l.generators {
            flat.push(json!({
                "component": l.component + 1,
                "node": g.node + 1,
                "weyl_word": weyl_word_1based(sc, &g.image.w),
                "torus_class": g.image.t.to_strings(),
                "order": g.element.order,
                "provenance": serde_json::to_value(g.provenance).expect("serializes"),
            }));
        }
    }
    let mut tau2 = Vec::new();
    for a in lifter.fundamental_group().a_sub_g(r)? {
        if let Some(x) = lifter.tau2(&a.w) {
            tau2.push(json!({
                "weyl_word": weyl_word_1based(r, &x.w),
                "torus_class": x.t.to_strings(),
                "order": a.order,
            }));
        }
    }
    if cli.json {
        print_json(&json!({
            "version": SCHEMA_VERSION,
            "datum": r.name(),
            "flat_lift": flat,
            "tau2": tau2,
        }));
    } else {
        out!("datum: {}", r.name());
        out!("flat lift of 𝒜 (simply connected cover):");
        for v in &flat {
            out!("  {v}");
        }
        out!("τ_2 on 𝒜_G:");
        for v in &tau2 {
            out!("  {v}");
        }
    }
    Ok(0)
}

fn frobenius(cli: &Cli, s: &SemisimpleClass, f: FrobeniusAction) -> Result<u8, Error> {
    let r = frobenius_datum(s.datum(), f)?;
    let lifter = Lifter::new(&r, LiftMethod::Recipe)?;
    let s = SemisimpleClass::new(&r, s.lambda().clone())?;
    let stable = centralizer_f_stable(&s, f, lifter.fundamental_group())?;
    let split = if stable {
        Some(f_stable_splitting(&lifter, &s, f)?)
    } else {
        None
    };
    if cli.json {
        let mut v = json!({
            "version": SCHEMA_VERSION,
            "datum": r.name(),
            "lambda": s.lambda().to_strings(),
            "q": f.q(),
            "centralizer_f_stable": stable,
        });
        if let Some(x) = &split {
            v["sigma_path"] = json!(x.sigma_path);
            v["a_g_s"] = json!(x.certificate.data.a_g_structure());
            v["certificate"] = certificate_value(&x.certificate);
        }
        print_json(&v);
    } else {
        out!("datum: {}", r.name());
        out!("λ = {}, q = {}", s.lambda(), f.q());
        out!("C(s) F-stable: {stable}");
        if let Some(x) = &split {
            if x.sigma_path {
                out!("even q: section σ used (characteristic 2)");
            }
            out!(
                "A_0 of order {} is F-fixed; A_G(s)^F ≅ {}",
                x.certificate.a_zero.len(),
                structure_string(&x.certificate.data.a_g_structure())
            );
        }
    }
    Ok(0)
}
