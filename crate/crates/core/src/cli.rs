//! The `coxembed` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::Error;
use crate::presentation::{
    artin_presentation, build_artin_instance, build_klein_instance, build_prop2_instance, build_thm1_instance,
    coxeter_presentation, parse_ext_list, parse_ext_matrix, parse_presentation, pc_presentation, CoxeterMatrix,
    EmbeddingInstance, ExtNat, PcSpec, Presentation,
};
use crate::schreier::{evaluated_kernel_presentation, raw_kernel_of, KernelPresentation};
use crate::tietze::{normalize_relators, simplify, SimplifyConfig};
use crate::verify::{
    abelianization, match_presentations, todd_coxeter, verify_instance, AbelianInvariants, VerifyBudgets,
    DEFAULT_MAX_COSETS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coxembed", version, about = "Kernels of Coxeter doubles onto elementary abelian 2-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Coxeter or commutator-power matrix file.
    #[arg(long = "m", global = true, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Comma-separated generator orders; `inf` allowed.
    #[arg(long = "p", global = true, value_name = "LIST")]
    orders: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Evaluated)]
    mode: Mode,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS, value_parser = positive)]
    max_cosets: usize,
    #[arg(long, global = true, default_value_t = SimplifyConfig::default().max_relator_length, value_parser = positive)]
    max_relator_length: usize,
    #[arg(long, global = true, default_value_t = SimplifyConfig::default().max_passes, value_parser = positive)]
    max_passes: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Evaluated,
    Raw,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    Coxeter,
    Pc,
    Artin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Thm1,
    Prop2,
    Klein,
    Artin,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a Coxeter, pc or Artin presentation.
    Build { kind: BuildKind },
    /// Print an embedding instance.
    Embed { family: FamilyArg },
    /// Kernel presentation of an instance.
    Kernel { family: FamilyArg },
    /// Tietze-simplify a presentation.
    Simplify { presentation: String },
    /// Group order by coset enumeration.
    Order { presentation: String },
    /// Index of the subgroup generated by the given words.
    Index { presentation: String, words: Vec<String> },
    Abelianization { presentation: String },
    /// Find a generator bijection between two presentations.
    Match { first: String, second: String },
    /// Run every check on an instance.
    Verify { family: FamilyArg },
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Artifacts go to `out` unless `--out` is given; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.opts.out {
                Some(path) => fs::write(path, &text).map_err(|e| format!("error: cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| format!("error: {e}")),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(err, "{msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

type Outcome = std::result::Result<(String, i32), String>;

fn execute(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    let json = o.format == Format::Json;
    let cfg = SimplifyConfig { max_passes: o.max_passes, max_relator_length: o.max_relator_length, eliminate: true };
    match &cli.command {
        Command::Build { kind } => {
            let p = match kind {
                BuildKind::Coxeter => coxeter_presentation(&coxeter_matrix(o)?),
                BuildKind::Artin => artin_presentation(&coxeter_matrix(o)?),
                BuildKind::Pc => {
                    let orders = orders(o)?;
                    let rows = parse_ext_matrix(&read(required(&o.matrix, "--m")?)?).map_err(msg)?;
                    pc_presentation(&PcSpec::new(rows, orders).map_err(msg)?)
                }
            };
            Ok((if json { pretty(&presentation_json(&p)) } else { format!("{p}\n") }, EXIT_OK))
        }
        Command::Embed { family } => {
            let inst = instance(*family, o)?;
            Ok((if json { pretty(&instance_json(&inst)) } else { instance_text(&inst) }, EXIT_OK))
        }
        Command::Kernel { family } => {
            let inst = instance(*family, o)?;
            let mut parts = Vec::new();
            if matches!(o.mode, Mode::Evaluated | Mode::Both) {
                parts.push(("evaluated", evaluated_kernel_presentation(&inst).map_err(msg)?));
            }
            if matches!(o.mode, Mode::Raw | Mode::Both) {
                parts.push(("raw", raw_kernel_of(&inst).map_err(msg)?));
            }
            if json {
                let map: serde_json::Map<String, Value> =
                    parts.iter().map(|(name, k)| (name.to_string(), kernel_json(&inst.ambient, k))).collect();
                Ok((pretty(&Value::Object(map)), EXIT_OK))
            } else {
                let mut text = String::new();
                for (name, k) in &parts {
                    if parts.len() > 1 {
                        text.push_str(&format!("[{name}]\n"));
                    }
                    text.push_str(&kernel_text(&inst.ambient, k));
                }
                Ok((text, EXIT_OK))
            }
        }
        Command::Simplify { presentation } => {
            let p = load_presentation(presentation)?;
            let (q, trace) = simplify(&p, &cfg);
            if json {
                let gens: Vec<Value> =
                    trace.generators.iter().map(|(n, w)| json!({"name": n, "word": p.display_word(w)})).collect();
                let v = json!({"presentation": presentation_json(&q), "generators": gens, "trace": trace.steps});
                Ok((pretty(&v), EXIT_OK))
            } else {
                let mut text = format!("{q}\n");
                for (n, w) in &trace.generators {
                    text.push_str(&format!("  {n} = {}\n", p.display_word(w)));
                }
                Ok((text, EXIT_OK))
            }
        }
        Command::Order { presentation } => {
            let p = load_presentation(presentation)?;
            let table = todd_coxeter(&p, &[], o.max_cosets).map_err(msg)?;
            let order = table.index();
            let code = if order.is_some() { EXIT_OK } else { EXIT_FAIL };
            let text = if json {
                pretty(&json!({"order": order, "cosets_defined": table.cosets_defined()}))
            } else {
                order.map_or_else(|| format!("unknown (more than {} cosets)\n", o.max_cosets), |n| format!("{n}\n"))
            };
            Ok((text, code))
        }
        Command::Index { presentation, words } => {
            let p = load_presentation(presentation)?;
            let ws = words.iter().map(|w| p.word(w)).collect::<Result<Vec<_>, _>>().map_err(msg)?;
            let table = todd_coxeter(&p, &ws, o.max_cosets).map_err(msg)?;
            let index = table.index();
            let code = if index.is_some() { EXIT_OK } else { EXIT_FAIL };
            let text = if json {
                pretty(&json!({"index": index, "cosets_defined": table.cosets_defined()}))
            } else {
                index.map_or_else(|| format!("unknown (more than {} cosets)\n", o.max_cosets), |n| format!("{n}\n"))
            };
            Ok((text, code))
        }
        Command::Abelianization { presentation } => {
            let p = load_presentation(presentation)?;
            let ab = abelianization::<BigInt>(&p);
            Ok((if json { pretty(&abelian_json(&ab)) } else { format!("{ab}\n") }, EXIT_OK))
        }
        Command::Match { first, second } => {
            let p = load_presentation(first)?;
            let q = load_presentation(second)?;
            let found = match_presentations(&p, &q).map_err(msg)?;
            let code = if found.is_some() { EXIT_OK } else { EXIT_FAIL };
            let text = match (&found, json) {
                (Some(m), true) => {
                    let pairs: Vec<Value> = m
                        .iter()
                        .enumerate()
                        .map(|(g, &(h, inv))| json!({"from": p.generators()[g], "to": q.generators()[h], "inverted": inv}))
                        .collect();
                    pretty(&json!({ "bijection": pairs }))
                }
                (None, true) => pretty(&json!({ "bijection": null })),
                (Some(m), false) => m
                    .iter()
                    .enumerate()
                    .map(|(g, &(h, inv))| {
                        format!("{} -> {}{}\n", p.generators()[g], q.generators()[h], if inv { "^-1" } else { "" })
                    })
                    .collect(),
                (None, false) => "no match\n".into(),
            };
            Ok((text, code))
        }
        Command::Verify { family } => {
            let inst = instance(*family, o)?;
            let report = verify_instance(&inst, &VerifyBudgets { max_cosets: o.max_cosets, simplify: cfg });
            let text = if json { format!("{}\n", report.to_json()) } else { report.to_text() };
            Ok((text, if report.passed() { EXIT_OK } else { EXIT_FAIL }))
        }
    }
}

fn msg(e: Error) -> String {
    e.to_string()
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json value serializes"))
}

fn read(path: &Path) -> std::result::Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn required<'a, T>(v: &'a Option<T>, flag: &str) -> std::result::Result<&'a T, String> {
    v.as_ref().ok_or_else(|| format!("{flag} is required for this command"))
}

/// A presentation given inline or as `@file`.
fn load_presentation(arg: &str) -> std::result::Result<Presentation, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => arg.to_string(),
    };
    parse_presentation(&text).map_err(msg)
}

fn coxeter_matrix(o: &GlobalOpts) -> std::result::Result<CoxeterMatrix, String> {
    CoxeterMatrix::parse(&read(required(&o.matrix, "--m")?)?).map_err(msg)
}

fn orders(o: &GlobalOpts) -> std::result::Result<Vec<ExtNat>, String> {
    parse_ext_list(required(&o.orders, "--p")?).map_err(msg)
}

fn instance(family: FamilyArg, o: &GlobalOpts) -> std::result::Result<EmbeddingInstance, String> {
    match family {
        FamilyArg::Thm1 => build_thm1_instance(&coxeter_matrix(o)?, &orders(o)?).map_err(msg),
        FamilyArg::Prop2 => build_prop2_instance(&coxeter_matrix(o)?, &orders(o)?).map_err(msg),
        FamilyArg::Klein => Ok(build_klein_instance()),
        FamilyArg::Artin => build_artin_instance(&coxeter_matrix(o)?).map_err(msg),
    }
}

fn presentation_json(p: &Presentation) -> Value {
    let rels: Vec<String> = p.relators().iter().map(|r| p.display_word(r)).collect();
    json!({"generators": p.generators(), "relators": rels})
}

fn vector_text(v: u64, n: usize) -> String {
    (0..n).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn instance_json(inst: &EmbeddingInstance) -> Value {
    let a = &inst.ambient;
    let n = inst.rank();
    let images: serde_json::Map<String, Value> = a
        .generators()
        .iter()
        .enumerate()
        .map(|(g, name)| (name.clone(), Value::String(vector_text(inst.hom.images()[g], n))))
        .collect();
    let words: Vec<Value> = inst
        .expected_kernel
        .generators()
        .iter()
        .zip(&inst.expected_words)
        .map(|(name, w)| json!({"name": name, "word": a.display_word(w)}))
        .collect();
    json!({
        "family": inst.family,
        "params": inst.params,
        "ambient": presentation_json(a),
        "hom": {"dim": n, "images": images},
        "transversal_generators": inst.transversal_gens.iter().map(|&g| &a.generators()[g]).collect::<Vec<_>>(),
        "expected_kernel": presentation_json(&inst.expected_kernel),
        "expected_words": words,
    })
}

fn instance_text(inst: &EmbeddingInstance) -> String {
    let a = &inst.ambient;
    let n = inst.rank();
    let mut text = format!("family      {}\nambient     {a}\n", inst.family);
    let images: Vec<String> =
        a.generators().iter().enumerate().map(|(g, name)| format!("{name} -> {}", vector_text(inst.hom.images()[g], n))).collect();
    text.push_str(&format!("hom         {}\n", images.join(", ")));
    let tg: Vec<&str> = inst.transversal_gens.iter().map(|&g| a.generators()[g].as_str()).collect();
    text.push_str(&format!("transversal {}\n", tg.join(", ")));
    text.push_str(&format!("expected    {}\n", inst.expected_kernel));
    for (name, w) in inst.expected_kernel.generators().iter().zip(&inst.expected_words) {
        text.push_str(&format!("  {name} = {}\n", a.display_word(w)));
    }
    text
}

fn kernel_json(ambient: &Presentation, k: &KernelPresentation) -> Value {
    let gens: Vec<Value> = k
        .generators
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "word": ambient.display_word(&g.defining_word),
                "coset": ambient.display_word(&g.origin_t),
                "generator": ambient.generators()[g.origin_x],
            })
        })
        .collect();
    json!({"mode": k.mode, "presentation": presentation_json(&normalize_relators(&k.presentation)), "generators": gens})
}

fn kernel_text(ambient: &Presentation, k: &KernelPresentation) -> String {
    let mut text = format!("{}\n", normalize_relators(&k.presentation));
    for g in &k.generators {
        text.push_str(&format!("  {} = {}\n", g.name, ambient.display_word(&g.defining_word)));
    }
    text
}

fn abelian_json(ab: &AbelianInvariants<BigInt>) -> Value {
    let torsion: Vec<Value> =
        ab.torsion.iter().map(|d| d.to_u64().map_or_else(|| Value::String(d.to_string()), Value::from)).collect();
    json!({"free_rank": ab.free_rank, "torsion": torsion, "text": ab.to_string()})
}
