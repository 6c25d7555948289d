//! Command dispatch: document → pipeline → JSON report.

use crate::document::{Auto, Document, TermKind, Vertical};
use crate::expr::ParseError;
use ramcc_core::abbes_saito::{cc, cc_of, compare_cc_kcc, decompose, hasse_arf_check, rsw_closed_form};
use ramcc_core::algebra::factor::DEFAULT_SEED;
use ramcc_core::galois::{
    characters, find_conjugates, verify_conjugates, AbstractExtensionData, Character1, Tower, VirtualRep,
};
use ramcc_core::kato::{cyclotomic_level, integrality_check, kato_different, kcc, swan_diffval, swan_parts};
use ramcc_core::local::{ExtensionSpec, OrderElement};
use ramcc_core::nearby::{dimtot_vertical, euler_nearby, HorizontalPointData, TripleDescription, VerticalPointData};
use ramcc_core::Error;
use serde_json::{json, Map, Value};
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Invariants,
    Swan,
    Cc,
    Compare,
    Nearby,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Invariants => "invariants",
            Command::Swan => "swan",
            Command::Cc => "cc",
            Command::Compare => "compare",
            Command::Nearby => "nearby",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// From the command line; wins over everything.
    pub precision: Option<i64>,
    /// From RAMCC_PRECISION; replaces only the computed default.
    pub env_precision: Option<i64>,
    pub seed: Option<u64>,
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunError {
    Parse(ParseError),
    Core { context: String, error: Error },
    Input(String),
}

impl RunError {
    /// 1 for a violated identity, 2 for anything wrong with the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core { error, .. } if error.is_mismatch() => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Parse(e) => write!(f, "parse error: {e}"),
            RunError::Core { context, error } => write!(f, "{context}: {error}"),
            RunError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for RunError {}

fn core(context: &str) -> impl Fn(Error) -> RunError + '_ {
    move |error| RunError::Core { context: context.to_string(), error }
}

/// Report plus exit status; per-representation failures are recorded
/// in the report and raise the status instead of aborting the run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub status: i32,
}

struct Context {
    doc: Document,
    tower: Option<Tower>,
    spec: Option<std::sync::Arc<ExtensionSpec>>,
    m: u32,
    a: u32,
    seed: u64,
}

impl Context {
    fn tower(&self) -> Result<&Tower, RunError> {
        self.tower
            .as_ref()
            .ok_or_else(|| RunError::Input("this command needs an [extension] or [abstract] section".into()))
    }
    fn q(&self) -> u32 {
        self.doc.p.pow(self.m)
    }
}

fn build(doc: Document, opts: &RunOptions) -> Result<Context, RunError> {
    let p = doc.p;
    let seed = opts.seed.unwrap_or(DEFAULT_SEED);
    let mut tower = None;
    let mut spec_out = None;
    if let Some(e) = &doc.extension {
        let prec = opts.precision.or(doc.precision).or(opts.env_precision);
        let spec = ExtensionSpec::build(p, e.n, e.coeffs.clone(), prec, seed).map_err(core("[extension]"))?;
        let group = if e.conjugates.is_empty() {
            let roots = find_conjugates(&spec).map_err(core("[extension] conjugates"))?;
            verify_conjugates(roots[0].spec(), &roots)
        } else {
            let mut roots = vec![OrderElement::gen(&spec)];
            roots.extend(e.conjugates.iter().map(|c| OrderElement::from_poly(&spec, c)));
            verify_conjugates(&spec, &roots)
        }
        .map_err(core("[extension] conjugates"))?;
        spec_out = Some(group.spec().clone());
        tower = Some(Tower::new(&group).map_err(core("[extension] ramification"))?);
    } else if let Some(a) = &doc.abstract_data {
        let mut elements = vec![vec![0; a.n as usize]];
        elements.extend(a.elements.iter().map(|e| e.coords.clone()));
        let data = AbstractExtensionData {
            p,
            n: a.n,
            elements,
            jumps: a.elements.iter().map(|e| e.jump).collect(),
            u_values: a.elements.iter().map(|e| e.u.clone()).collect(),
            abar0: a.abar0.clone(),
            seed,
        };
        let d = data.ramification_data().map_err(core("[abstract]"))?;
        tower = Some(Tower::from_data(d));
    }
    let m = tower.as_ref().map(|t| cyclotomic_level(t.top())).unwrap_or(1);
    let a = doc.representation.as_ref().and_then(|r| r.psi0).unwrap_or(1);
    if a % p == 0 {
        return Err(RunError::Input("psi0 must be a unit mod p".into()));
    }
    Ok(Context { doc, tower, spec: spec_out, m, a: a % p, seed })
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn term_name(chi: &Character1, all: usize) -> String {
    if chi.subgroup().len() == all {
        format!("char({})", join(chi.values()))
    } else {
        let h: Vec<u32> = chi.subgroup().iter().map(|&s| s as u32).collect();
        format!("ind({}: {})", join(&h), join(chi.values()))
    }
}

fn auto_reps(ctx: &Context, mode: Auto) -> Result<Vec<(String, VirtualRep)>, RunError> {
    let t = ctx.tower()?;
    let d = t.top();
    let g = d.group();
    let q = ctx.q();
    let all: Vec<usize> = (0..d.degree()).collect();
    let mut out = Vec::new();
    if matches!(mode, Auto::Wild | Auto::All) {
        for chi in characters(g, &all, q).into_iter().filter(|c| !c.is_trivial()) {
            out.push((term_name(&chi, all.len()), VirtualRep::single(chi)));
        }
    }
    if matches!(mode, Auto::Induced | Auto::All) {
        for h in g.subgroups().into_iter().filter(|h| h.len() * ctx.doc.p as usize == d.degree()) {
            for theta in characters(g, &h, q) {
                out.push((term_name(&theta, all.len()), VirtualRep::single(theta)));
            }
        }
    }
    if mode == Auto::All {
        let regular = Character1::trivial(vec![0], q);
        let name = term_name(&regular, all.len());
        if !out.iter().any(|(n, _)| *n == name) {
            out.push((name, VirtualRep::single(regular)));
        }
    }
    Ok(out)
}

fn resolve(ctx: &Context, default_auto: Option<Auto>) -> Result<Vec<(String, VirtualRep)>, RunError> {
    let rep = ctx.doc.representation.clone().unwrap_or_default();
    let t = ctx.tower()?;
    let g = t.top().group();
    let q = ctx.q();
    let mut out = Vec::new();
    for (name, terms) in &rep.reps {
        let ctxs = format!("[representation] {name}");
        let mut v = VirtualRep::default();
        for term in terms {
            let chi = match &term.kind {
                TermKind::Char(e) => Character1::new(g, (0..g.order()).collect(), e.clone(), q),
                TermKind::Ind(h, e) => Character1::new(g, h.clone(), e.clone(), q),
            }
            .map_err(core(&ctxs))?;
            v = v.plus(term.mult, chi);
        }
        out.push((name.clone(), v));
    }
    let mode = rep.auto.or(if rep.reps.is_empty() { default_auto } else { None });
    if let Some(mode) = mode {
        for (name, v) in auto_reps(ctx, mode)? {
            if !out.iter().any(|(n, r)| *n == name || *r == v) {
                out.push((name, v));
            }
        }
    }
    Ok(out)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn invariants(ctx: &Context) -> Result<Value, RunError> {
    let t = ctx.tower()?;
    let d = t.top();
    let elements: Vec<Value> = (0..d.degree())
        .map(|i| {
            let mut m = Map::new();
            m.insert("index".into(), json!(i));
            if let Some(g) = &t.level(0).group {
                m.insert("image".into(), json!(g.element(i).image().to_string()));
            }
            m.insert("jump".into(), json!(d.jump(i)));
            m.insert("u".into(), json!(d.jump(i).map(|_| d.u_value(i).to_string())));
            m.insert("in_gc".into(), json!(d.in_gc(i)));
            Value::Object(m)
        })
        .collect();
    let levels: Vec<Value> = t
        .levels()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            json!({
                "level": k,
                "degree": l.data.degree(),
                "conductor": l.data.conductor(),
                "rho": l.data.rho(),
                "gc_order": l.data.gc().len(),
                "generator": l.generator.as_ref().map(|g| g.to_string()),
            })
        })
        .collect();
    let different = kato_different(d, ctx.m).map_err(core("different"))?;
    Ok(json!({
        "p": d.p(),
        "n": d.n(),
        "degree": d.degree(),
        "abar0": d.abar0().to_string(),
        "hbar": d.hbar().to_string(),
        "provenance": to_value(&d.provenance()),
        "elements": elements,
        "rho": d.rho(),
        "conductor": d.conductor(),
        "gc": d.gc(),
        "fbar_c": d.fbar_c().to_string(),
        "kato_different": to_value(&different),
        "tower": levels,
        "tower_stopped": t.levels().last().filter(|l| l.data.gc().len() != l.data.degree()).map(|_| t.unavailable().to_string()),
        "group_abelian": d.group().is_abelian(),
        "cyclotomic_order": ctx.q(),
    }))
}

fn swan_entry(ctx: &Context, rep: &VirtualRep) -> Result<Value, Error> {
    let t = ctx.tower.as_ref().expect("checked");
    let d = t.top();
    let sw = swan_diffval(d, rep, ctx.m, ctx.a)?;
    let parts = swan_parts(&sw, d.n())?;
    let k = kcc(d, rep, ctx.m, ctx.a)?;
    Ok(json!({
        "dim": rep.dim(d.degree()),
        "trivial_multiplicity": rep.trivial_multiplicity(),
        "swan": to_value(&sw),
        "integrality": to_value(&integrality_check(&sw, d.n())),
        "conductor_part": parts.conductor,
        "delta": parts.delta.to_string(),
        "m": parts.m,
        "kcc": to_value(&k.descend_to_base().unwrap_or(k)),
    }))
}

fn cc_entry(ctx: &Context, rep: &VirtualRep) -> Result<Value, Error> {
    let t = ctx.tower.as_ref().expect("checked");
    let dec = decompose(t, rep, ctx.a)?;
    let mut slots = Vec::new();
    for s in &dec.slots {
        let r = rsw_closed_form(&t.level(s.level).data, &s.central)?;
        slots.push(json!({
            "level": s.level,
            "slope": s.slope,
            "central": s.central,
            "mult": s.mult,
            "rsw": to_value(&r),
        }));
    }
    let c = cc_of(t, &dec)?;
    Ok(json!({
        "dim": dec.dim(),
        "tame_dim": dec.tame_dim,
        "slopes": dec.by_slope().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>(),
        "slots": slots,
        "cc": to_value(&c.descend_to_base().unwrap_or_else(|| c.clone())),
        "hasse_arf": hasse_arf_check(&c),
    }))
}

fn compare_entry(ctx: &Context, rep: &VirtualRep) -> Result<Value, Error> {
    let t = ctx.tower.as_ref().expect("checked");
    let r = compare_cc_kcc(t, rep, ctx.m, ctx.a)?;
    Ok(json!({
        "cc": to_value(&r.cc),
        "kcc": to_value(&r.kcc),
        "equal": true,
        "hasse_arf": r.hasse_arf,
        "slopes": r.decomposition.by_slope().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>(),
    }))
}

type Entry = fn(&Context, &VirtualRep) -> Result<Value, Error>;

fn per_rep(ctx: &Context, f: Entry, status: &mut i32) -> Result<Value, RunError> {
    let reps = resolve(ctx, Some(Auto::All))?;
    let mut out = Map::new();
    for (name, rep) in reps {
        let v = match f(ctx, &rep) {
            Ok(v) => v,
            Err(e) => {
                *status = (*status).max(if e.is_mismatch() { 1 } else { 2 });
                json!({ "error": e.to_string(), "mismatch": e.is_mismatch() })
            }
        };
        out.insert(name, v);
    }
    Ok(Value::Object(out))
}

fn nearby(ctx: &Context) -> Result<Value, RunError> {
    let tr = ctx.doc.triple.as_ref().ok_or_else(|| RunError::Input("nearby needs a [triple] section".into()))?;
    let horizontal = tr
        .horizontal
        .iter()
        .map(|&(d, s, r)| HorizontalPointData::new(d, s, r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(core("[triple] horizontal"))?;
    let mut vertical = Vec::new();
    let mut reps: Option<Vec<(String, VirtualRep)>> = None;
    for v in &tr.vertical {
        vertical.push(match v {
            Vertical::Deligne(value) => VerticalPointData::Deligne { value: *value },
            Vertical::Computed { rep, swan_bar, rank_bar } => {
                if reps.is_none() {
                    reps = Some(resolve(ctx, None)?);
                }
                let (_, r) = reps
                    .as_ref()
                    .expect("resolved")
                    .iter()
                    .find(|(n, _)| n == rep)
                    .ok_or_else(|| RunError::Input(format!("[triple] vertical: no representation named {rep}")))?
                    .clone();
                let c = cc(ctx.tower()?, &r, ctx.a).map_err(core("[triple] vertical"))?;
                let c = c.descend_to_base().unwrap_or(c);
                VerticalPointData::Computed { cc: c, swan_bar: *swan_bar, rank_bar: *rank_bar }
            }
        });
    }
    let desc = TripleDescription { delta: tr.delta, rank: tr.rank, psi0_dim: tr.psi0_dim, horizontal, vertical };
    let dimtots = desc.vertical.iter().map(dimtot_vertical).collect::<Result<Vec<_>, _>>().map_err(core("[triple]"))?;
    let report = euler_nearby(&desc).map_err(core("[triple]"))?;
    let mut v = to_value(&report);
    v["vertical_dimtot"] = json!(dimtots);
    v["vertical"] = to_value(&desc.vertical);
    Ok(v)
}

fn validate(ctx: &Context) -> Result<Value, RunError> {
    let mut v = json!({ "valid": true, "p": ctx.doc.p });
    if let Some(t) = &ctx.tower {
        let d = t.top();
        v["degree"] = json!(d.degree());
        v["conductor"] = json!(d.conductor());
        v["levels"] = json!(t.levels().len());
        v["provenance"] = to_value(&d.provenance());
        d.check_fbar_two_path().map_err(core("[extension]"))?;
        let reps = resolve(ctx, None)?;
        v["representations"] =
            Value::Object(reps.iter().map(|(n, r)| (n.clone(), json!({ "dim": r.dim(d.degree()) }))).collect());
    }
    if ctx.doc.triple.is_some() {
        v["nearby"] = nearby(ctx)?;
    }
    Ok(v)
}

/// Runs one document through one command.
pub fn run(text: &str, cmd: Command, opts: &RunOptions) -> Result<Outcome, RunError> {
    let start = Instant::now();
    let doc = Document::parse(text).map_err(RunError::Parse)?;
    let input = doc.print();
    let ctx = build(doc, opts)?;
    let built = start.elapsed();
    let mut status = 0;
    let results = match cmd {
        Command::Validate => validate(&ctx)?,
        Command::Invariants => invariants(&ctx)?,
        Command::Swan => per_rep(&ctx, swan_entry, &mut status)?,
        Command::Cc => per_rep(&ctx, cc_entry, &mut status)?,
        Command::Compare => per_rep(&ctx, compare_entry, &mut status)?,
        Command::Nearby => nearby(&ctx)?,
    };
    let mut diagnostics = Vec::new();
    if ctx.doc.options.unramified_base {
        diagnostics.push("unramified_base is recorded; the computation runs over the given base".to_string());
    }
    if ctx.doc.options.coefficients != 0 {
        diagnostics.push(format!(
            "coefficients of characteristic {} are lifted multiplicatively; results are those of the lift",
            ctx.doc.options.coefficients
        ));
    }
    if let Some(w) = results.get("warnings").and_then(|w| w.as_array()) {
        diagnostics.extend(w.iter().filter_map(|s| s.as_str().map(String::from)));
    }
    let mut report = json!({
        "command": cmd.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": ctx.seed,
        "psi0": ctx.a,
        "precision": ctx.spec.as_ref().map(|s| s.precision()),
        "input": input,
        "results": results,
        "diagnostics": diagnostics,
    });
    if opts.timings {
        report["timings_ms"] = json!({
            "build": built.as_secs_f64() * 1e3,
            "total": start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(Outcome { report, status })
}
