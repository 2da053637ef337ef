use clap::{Args, Parser, Subcommand};
use liereal::complexsub::{maximal_reductive_nonsemisimple, maximal_regular_semisimple, SubalgebraDescriptor};
use liereal::error::{Error, Partial};
use liereal::pipeline::{collect_rows, maximal_targets, resolve_form, verify_form_with, RowsResult, VerifyOptions};
use liereal::realform::{enumerate_real_forms, ThetaKind};
use liereal::regreal::{regular_real_embeddings, Budget, RealFormContext};
use liereal::rootsys::RootSystem;
use liereal::ssub::{builtin_embeddings, EmbeddingData, SOptions, SProblem, SReport};
use liereal::chevalley::ChevalleyAlgebra;
use rayon::prelude::*;
use std::io::Write;
use serde_json::{json, Value};
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "liereal", version, about = "Regular and S-subalgebras of real simple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit one JSON object instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse real-form pipelines above this rank.
    #[arg(long, global = true, default_value_t = 6)]
    rank_limit: usize,
    /// Seed for the random slices used by the S pipeline.
    #[arg(long, global = true, default_value_t = SOptions::default().seed)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, marks and positive roots of a simple type.
    Roots { ty: String },
    /// Maximal regular subalgebras of a simple type.
    Maximal { ty: String },
    /// Census of real forms of a simple type.
    Realforms { ty: String },
    /// Embedding pipelines.
    Embed {
        #[command(subcommand)]
        kind: EmbedKind,
    },
    /// Compare computed rows with the shipped table for a real form.
    Verify { form: String },
}

#[derive(Subcommand, Debug)]
enum EmbedKind {
    /// Maximal regular real subalgebras of a real form.
    Regular {
        form: String,
        /// Restrict to one Cartan class id.
        #[arg(long)]
        cartan: Option<usize>,
    },
    /// Real forms through an S-subalgebra embedding.
    S {
        /// Ambient type (all real forms) or a real form label.
        target: String,
        /// Embedding JSON file or shipped embedding name.
        #[arg(long)]
        embedding: Option<String>,
    },
}

enum Failure {
    Usage(Error),
    Budget { partial: Value, reason: String },
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidType { .. } | Error::BadTypeLabel(_) | Error::UnknownLabel(_) | Error::LabelToken(_) => {
                Failure::Usage(e)
            }
            Error::Budget(reason) => Failure::Budget { partial: Value::Null, reason },
            e => Failure::Other(e),
        }
    }
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, mut value: Value, text: impl FnOnce() -> String) {
        if self.json {
            let obj = value.as_object_mut().expect("object");
            obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
            write_stdout(&format!("{}\n", serde_json::to_string_pretty(&value).unwrap()));
        } else {
            write_stdout(&text());
        }
    }
}

/// A closed pipe (`| head`) is not an error worth a panic.
fn write_stdout(s: &str) {
    let mut lock = std::io::stdout().lock();
    if lock.write_all(s.as_bytes()).and_then(|_| lock.flush()).is_err() {
        std::process::exit(0);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(g.jobs).build().expect("thread pool");
    let out = Out { json: g.json };
    let result = pool.install(|| run(cli.command, &g, &out));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Budget { partial, reason }) => {
            if g.json {
                let v = json!({ "schema_version": SCHEMA_VERSION, "partial": true, "reason": reason, "found": partial });
                write_stdout(&format!("{}\n", serde_json::to_string_pretty(&v).unwrap()));
            }
            eprintln!("error: budget exceeded: {reason}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn budget_for(rank: usize, g: &Global) -> Result<Budget, Failure> {
    if rank > g.rank_limit {
        return Err(Failure::Budget {
            partial: Value::Null,
            reason: format!("rank {rank} is above --rank-limit {}", g.rank_limit),
        });
    }
    let mut b = Budget::default();
    if g.rank_limit > 6 {
        b.weyl_limit = u128::MAX;
        b.orbit_limit = usize::MAX;
    }
    Ok(b)
}

fn s_options(g: &Global) -> SOptions {
    SOptions { seed: g.seed, ..SOptions::default() }
}

fn parallel_rows(ctx: &RealFormContext, targets: &[SubalgebraDescriptor], cartan: Option<usize>, b: Budget) -> Vec<RowsResult> {
    targets.par_iter().map(|t| regular_real_embeddings(ctx, t, cartan, b)).collect()
}

fn run(cmd: Command, g: &Global, out: &Out) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Roots { ty } => roots(&ty, out),
        Command::Maximal { ty } => maximal(&ty, out),
        Command::Realforms { ty } => realforms(&ty, out),
        Command::Embed { kind: EmbedKind::Regular { form, cartan } } => embed_regular(&form, cartan, g, out),
        Command::Embed { kind: EmbedKind::S { target, embedding } } => embed_s(&target, embedding.as_deref(), g, out),
        Command::Verify { form } => verify(&form, g, out),
    }
}

fn roots(ty: &str, out: &Out) -> Result<ExitCode, Failure> {
    let rs = RootSystem::parse(ty)?;
    let positive: Vec<&Vec<i32>> = (0..rs.num_positive()).map(|i| rs.root(i)).collect();
    let v = json!({
        "type": rs.label(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan(),
        "marks": rs.marks(),
        "weyl_group_order": rs.weyl_group_order().to_string(),
        "positive_roots": positive,
    });
    out.emit(v, || {
        let mut s = format!("{}  rank {}  |W| = {}\n", rs.label(), rs.rank(), rs.weyl_group_order());
        s += "cartan matrix:\n";
        for row in rs.cartan() {
            s += &format!("  {}\n", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
        }
        s += &format!("marks: {:?}\npositive roots ({}):\n", rs.marks(), positive.len());
        for (i, r) in positive.iter().enumerate() {
            s += &format!("  {i:>4}  {r:?}\n");
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn descriptor_json(rs: &RootSystem, d: &SubalgebraDescriptor) -> Value {
    json!({
        "type": d.type_label.to_string(),
        "toral_rank": d.toral_rank,
        "origin": d.origin,
        "deleted_node": d.node,
        "dim": d.dim(rs),
        "psi": d.psi,
    })
}

fn maximal(ty: &str, out: &Out) -> Result<ExitCode, Failure> {
    let rs = RootSystem::parse(ty)?;
    let ss = maximal_regular_semisimple(&rs).items;
    let red = maximal_reductive_nonsemisimple(&rs).items;
    let v = json!({
        "type": rs.label(),
        "semisimple": ss.iter().map(|d| descriptor_json(&rs, d)).collect::<Vec<_>>(),
        "reductive_nonsemisimple": red.iter().map(|d| descriptor_json(&rs, d)).collect::<Vec<_>>(),
    });
    out.emit(v, || {
        let mut s = format!("maximal regular subalgebras of {}\n", rs.label());
        for (kind, items) in [("semisimple", &ss), ("reductive", &red)] {
            for d in items.iter() {
                let node = d.node.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
                s += &format!("  {:<11} {:<16} dim {:>4}  node {}\n", kind, d.type_label.to_string(), d.dim(&rs), node);
            }
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn realforms(ty: &str, out: &Out) -> Result<ExitCode, Failure> {
    let rs = RootSystem::parse(ty)?;
    let alg = ChevalleyAlgebra::new(&rs);
    let forms = enumerate_real_forms(&alg);
    let entries: Vec<Value> = forms
        .iter()
        .map(|f| {
            let kind = match &f.kind {
                ThetaKind::Inner { lambda } => json!({ "inner": lambda }),
                ThetaKind::Outer { perm, signs } => json!({ "outer": { "perm": perm, "signs": signs } }),
            };
            json!({
                "label": f.label,
                "character": f.character,
                "dim_k": f.dim_k(),
                "k_type": f.k_type.to_string(),
                "theta": kind,
            })
        })
        .collect();
    out.emit(json!({ "type": rs.label(), "forms": entries }), || {
        let mut s = format!("{:<12} {:>9} {:>6}  k\n", "form", "character", "dim k");
        for f in &forms {
            s += &format!("{:<12} {:>9} {:>6}  {}\n", f.label, f.character, f.dim_k(), f.k_type);
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn embed_regular(label: &str, cartan: Option<usize>, g: &Global, out: &Out) -> Result<ExitCode, Failure> {
    let resolved = resolve_form(label)?;
    let budget = budget_for(resolved.rs.rank(), g)?;
    let ctx = RealFormContext::new(&resolved.form, &resolved.rs, budget.weyl_limit)?;
    if let Some(id) = cartan {
        if id >= ctx.classes.len() {
            return Err(Failure::Usage(Error::UnknownLabel(format!("cartan class {id}"))));
        }
    }
    let classes: Vec<Value> = ctx
        .classes
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "compact_dim": c.compact_dim,
                "noncompact_dim": c.noncompact_dim,
                "real_weyl_order": ctx.real_weyl[c.id].order(),
                "cayley_path": c.cayley_path,
            })
        })
        .collect();
    let targets = maximal_targets(&ctx.rs);
    let rows = match collect_rows(parallel_rows(&ctx, &targets, cartan, budget)) {
        Ok(r) => r,
        Err(Partial { found, reason }) => {
            return Err(Failure::Budget { partial: json!({ "form": ctx.form.label, "rows": found }), reason });
        }
    };
    let v = json!({ "form": ctx.form.label, "cartan_filter": cartan, "cartan_classes": classes, "rows": rows });
    out.emit(v, || {
        let mut s = format!("{}: {} Cartan classes\n", ctx.form.label, ctx.classes.len());
        for r in &rows {
            let m = if r.multiplicity > 1 { format!(" ({}x)", r.multiplicity) } else { String::new() };
            s += &format!("  {:<16} {}  {}{}\n", r.subalgebra_complex_type, r.flag, r.real_sublabel, m);
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn load_embedding(arg: &str) -> Result<EmbeddingData, Failure> {
    if std::path::Path::new(arg).exists() {
        return Ok(EmbeddingData::load(arg)?);
    }
    builtin_embeddings()?
        .into_iter()
        .find(|e| e.name == arg)
        .ok_or_else(|| Failure::Usage(Error::UnknownLabel(format!("embedding `{arg}`"))))
}

fn embed_s(target: &str, embedding: Option<&str>, g: &Global, out: &Out) -> Result<ExitCode, Failure> {
    let (ambient, form) = match RootSystem::parse(target) {
        Ok(rs) => (rs.label(), None),
        Err(_) => {
            let r = resolve_form(target)?;
            (r.rs.label(), Some(r.form.label))
        }
    };
    budget_for(RootSystem::parse(&ambient)?.rank(), g)?;
    let embeddings = match embedding {
        Some(arg) => {
            let e = load_embedding(arg)?;
            if e.ambient_type != ambient {
                return Err(Failure::Usage(Error::Embedding(format!(
                    "embedding `{}` lives in {}, not {ambient}",
                    e.name, e.ambient_type
                ))));
            }
            vec![e]
        }
        None => builtin_embeddings()?.into_iter().filter(|e| e.ambient_type == ambient).collect(),
    };
    let opts = s_options(g);
    let mut results = Vec::new();
    for emb in &embeddings {
        let problem = SProblem::new(emb)?;
        let forms = liereal::ssub::sub_real_forms(&emb.sub_label()?)?;
        let reports: Vec<SReport> =
            forms.par_iter().map(|f| problem.run(f, &opts)).collect::<Result<Vec<_>, _>>()?;
        let inside: Option<Vec<String>> = form.as_ref().map(|fl| {
            let mut v: Vec<String> =
                reports.iter().filter(|r| r.labels.contains(fl)).map(|r| r.sub_form.clone()).collect();
            v.sort();
            v.dedup();
            v
        });
        results.push((emb, reports, inside));
    }
    let v = json!({
        "ambient": ambient,
        "form": form,
        "seed": g.seed,
        "embeddings": results.iter().map(|(e, reports, inside)| json!({
            "name": e.name,
            "sub_type": e.sub_type,
            "dynkin_index": e.dynkin_index,
            "maximal": e.maximal,
            "reports": reports,
            "sub_forms_in_form": inside,
        })).collect::<Vec<_>>(),
    });
    let undetermined: usize = results.iter().flat_map(|(_, r, _)| r.iter()).map(|r| r.undetermined_components).sum();
    out.emit(v, || {
        let mut s = String::new();
        for (e, reports, inside) in &results {
            s += &format!("{} ({} in {})\n", e.name, e.sub_type, e.ambient_type);
            match inside {
                Some(v) => s += &format!("  inside {}: {}\n", form.as_deref().unwrap_or(""), v.join(", ")),
                None => {
                    for r in reports {
                        s += &format!("  {:<22} -> {}\n", r.sub_form, r.labels.join(", "));
                    }
                }
            }
        }
        if undetermined > 0 {
            s += &format!("warning: {undetermined} trace components without a real witness\n");
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn verify(label: &str, g: &Global, out: &Out) -> Result<ExitCode, Failure> {
    let resolved = resolve_form(label)?;
    let budget = budget_for(resolved.rs.rank(), g)?;
    let opts = VerifyOptions { budget, include_s: true, s: s_options(g) };
    let report = verify_form_with(label, &opts, |ctx, targets| parallel_rows(ctx, targets, None, budget))?;
    let pass = report.passed();
    out.emit(serde_json::to_value(&report).unwrap(), || report.to_string());
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
