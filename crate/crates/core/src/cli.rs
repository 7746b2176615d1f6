//! Command-line surface. `run` returns the exit code and the full output so
//! the binary stays a thin wrapper and tests can call it directly.
//!
//! Exit codes: 0 success, 2 input error, 3 budget exceeded (an interval was
//! reported), 4 a certificate failed verification.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use crate::corpus;
use crate::error::{Error, Result};
use crate::group::{GPoset, Subgroup};
use crate::homotopy::FenceCertificate;
use crate::invariants::{self, verify, Budget, BoundStatus, Evidence, InvariantResult, Value};
use crate::io::{self, Space};
use crate::sc::{self, Approximation};
use crate::simplicial::{self, OrderedGComplex};
use crate::subdivision;

#[derive(Parser, Debug)]
#[command(name = "eqtc", version, about = "Equivariant LS-category and topological complexity of finite G-spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Search nodes allowed per goodness test and for the cover search.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub budget: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for `examples random`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a space or complex.
    Validate { file: String },
    /// Barycentric subdivision, emitted as a document.
    Sd {
        file: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Orbits and stabilizer orders.
    Orbits { file: String },
    /// Fixed points of a subgroup: `whole`, `trivial`, or comma-separated
    /// group element names generating it.
    Fixed {
        file: String,
        #[arg(long, default_value = "whole")]
        subgroup: String,
    },
    /// Whether every fixed-point set is path-connected.
    Gconnected { file: String },
    /// Equivariant LS-category.
    Lscat { file: String },
    /// Equivariant combinatorial complexity, at one path length or stabilized.
    Cc {
        file: String,
        #[arg(long, conflicts_with = "max_m")]
        m: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
    },
    /// Equivariant topological complexity, computed as the stabilized
    /// combinatorial complexity.
    Tc { file: String },
    /// Equivariant simplicial complexity at subdivision depth `b` and
    /// contiguity length `c`.
    Sc {
        file: String,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 1)]
        c: usize,
        /// Verify the subcomplexes listed in this document's `cover` field.
        #[arg(long)]
        verify: Option<String>,
    },
    /// Evaluate the standard inequalities between the invariants.
    Bounds { file: String },
    /// Emit a built-in space: point, jm M, pseudo-circle, sigma1-swap,
    /// pseudo-torus, pseudo-torus-swap, circle K, antipodal-circle K,
    /// simplex N, random.
    Examples {
        #[arg(required = true, num_args = 1..)]
        name: Vec<String>,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build();
    let outcome = match pool {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Error::Input(format!("cannot start thread pool: {e}"))),
    };
    match outcome {
        Ok(out) => (out.code, out.text),
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded(_) | Error::SizeBudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_INPUT,
            };
            (code, format!("error: {e}\n"))
        }
    }
}

struct Output {
    code: i32,
    text: String,
}

struct Loaded {
    space: Space,
    source: String,
    sha256: String,
}

fn load(file: &str) -> Result<Loaded> {
    if let Some(name) = file.strip_prefix("builtin:") {
        let space = if corpus::is_complex_name(name) {
            Space::Complex {
                complex: corpus::builtin_complex(name)?,
                normalized: false,
            }
        } else {
            Space::Poset(corpus::builtin_poset(name)?)
        };
        let doc = match &space {
            Space::Poset(x) => io::poset_document(x),
            Space::Complex { complex, .. } => io::complex_document(complex),
        };
        return Ok(Loaded {
            space,
            source: file.to_string(),
            sha256: io::sha256_hex(io::to_json(&doc).as_bytes()),
        });
    }
    let bytes = std::fs::read(file).map_err(|e| Error::Input(format!("{file}: {e}")))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Input(format!("{file}: not UTF-8")))?;
    let (_, space) = io::parse_space(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{file}: {m}")),
        e => Error::Input(format!("{file}: {e}")),
    })?;
    Ok(Loaded {
        space,
        source: file.to_string(),
        sha256: io::sha256_hex(&bytes),
    })
}

fn need_poset(l: &Loaded, what: &str) -> Result<GPoset> {
    match &l.space {
        Space::Poset(x) => Ok(x.clone()),
        Space::Complex { .. } => Err(Error::Input(format!("{what} needs a poset input"))),
    }
}

fn value_json(v: Value) -> Json {
    match v {
        Value::Finite(n) => json!(n),
        Value::Infinite => json!("infinity"),
        Value::Interval { lower, upper } => json!({
            "lower": lower,
            "upper": upper.map_or(json!("infinity"), |u| json!(u)),
            "status": "budget",
        }),
    }
}

fn names(x: &GPoset, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&v| x.name(v).to_string()).collect()
}

fn fence_json(source: &GPoset, target: &GPoset, f: &FenceCertificate) -> Json {
    json!({
        "domain": names(source, &f.domain),
        "directions": f.directions,
        "maps": f.maps.iter().map(|m| names(target, m)).collect::<Vec<_>>(),
    })
}

fn cover_json(y: &GPoset, x: &GPoset, r: &InvariantResult) -> Json {
    r.cover
        .iter()
        .map(|c| match &c.evidence {
            Evidence::Fence(f) => json!({
                "elements": names(y, &c.elements),
                "fence": fence_json(y, x, f),
            }),
            Evidence::Section(s) => json!({
                "elements": names(y, &c.elements),
                "section": names(x, s),
            }),
        })
        .collect()
}

fn infinity_json(y: &GPoset, r: &InvariantResult) -> Json {
    match &r.infinity {
        None => Json::Null,
        Some(c) => json!({
            "witness": y.name(c.witness),
            "witness_orbit": names(y, &y.orbit(c.witness).to_vec()),
            "neighbourhood": names(y, &c.neighbourhood),
            "reason": c.reason,
        }),
    }
}

fn subgroup_names(x: &GPoset, h: &Subgroup) -> Vec<String> {
    h.members.iter().map(|g| x.group().name(g).to_string()).collect()
}

fn parse_subgroup(x: &GPoset, spec: &str) -> Result<Subgroup> {
    let g = x.group();
    match spec.trim() {
        "whole" => Ok(g.whole()),
        "trivial" => Ok(g.trivial_subgroup()),
        s => {
            let gens = s
                .split(',')
                .map(|n| {
                    let n = n.trim();
                    g.names()
                        .iter()
                        .position(|m| m == n)
                        .ok_or_else(|| Error::Input(format!("unknown group element {n:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(g.closure(gens))
        }
    }
}

/// A report under construction; keys are kept sorted so output is stable.
struct Report {
    map: Map<String, Json>,
    code: i32,
}

impl Report {
    fn new(command: &str, l: &Loaded, budget: Budget) -> Self {
        let mut map = Map::new();
        map.insert("command".into(), json!(command));
        map.insert("input".into(), json!({ "source": l.source, "sha256": l.sha256 }));
        map.insert(
            "limits".into(),
            json!({
                "oracle_nodes": budget.oracle_nodes,
                "cover_nodes": budget.cover_nodes,
                "quick_length": budget.quick_length,
            }),
        );
        map.insert("format_version".into(), json!(io::FORMAT_VERSION));
        Report { map, code: EXIT_OK }
    }

    fn set(&mut self, k: &str, v: Json) {
        self.map.insert(k.into(), v);
    }

    fn value(&mut self, v: Value) {
        if !v.is_exact() {
            self.code = self.code.max(EXIT_BUDGET);
        }
        self.set("value", value_json(v));
    }

    fn verified(&mut self, check: std::result::Result<(), String>) {
        match check {
            Ok(()) => self.set("verified", json!(true)),
            Err(m) => {
                self.set("verified", json!(false));
                self.set("verification_error", json!(m));
                self.code = EXIT_VERIFY;
            }
        }
    }

    fn render(self, format: Format) -> Output {
        let text = match format {
            Format::Structured => io::to_json(&Json::Object(self.map)),
            Format::Text => render_text(&self.map),
        };
        Output { code: self.code, text }
    }
}

fn render_text(map: &Map<String, Json>) -> String {
    let mut out = String::new();
    for (k, v) in map {
        match v {
            Json::Null => {}
            Json::String(s) => writeln!(out, "{k}: {s}").unwrap(),
            Json::Number(_) | Json::Bool(_) => writeln!(out, "{k}: {v}").unwrap(),
            Json::Object(o) if o.values().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = o
                    .iter()
                    .map(|(a, b)| match b {
                        Json::String(s) => format!("{a}={s}"),
                        _ => format!("{a}={b}"),
                    })
                    .collect();
                writeln!(out, "{k}: {}", parts.join(", ")).unwrap();
            }
            _ => {
                writeln!(out, "{k}:").unwrap();
                for line in serde_json::to_string_pretty(v).unwrap().lines() {
                    writeln!(out, "  {line}").unwrap();
                }
            }
        }
    }
    out
}

fn budget_of(cli: &Cli) -> Budget {
    Budget::with_nodes(cli.budget)
}

fn execute(cli: &Cli) -> Result<Output> {
    let budget = budget_of(cli);
    match &cli.command {
        Command::Examples { name } => examples(&name.join(" "), cli.seed),
        Command::Sd { file, n } => sd(&load(file)?, *n),
        Command::Validate { file } => validate(&load(file)?, cli, budget),
        Command::Orbits { file } => orbits(&load(file)?, cli, budget),
        Command::Fixed { file, subgroup } => fixed(&load(file)?, subgroup, cli, budget),
        Command::Gconnected { file } => gconnected(&load(file)?, cli, budget),
        Command::Lscat { file } => lscat(&load(file)?, cli, budget),
        Command::Cc { file, m, max_m } => cc(&load(file)?, *m, *max_m, "cc", cli, budget),
        Command::Tc { file } => cc(&load(file)?, None, None, "tc", cli, budget),
        Command::Sc { file, b, c, verify } => sc_cmd(&load(file)?, *b, *c, verify.as_deref(), cli, budget),
        Command::Bounds { file } => bounds(&load(file)?, cli, budget),
    }
}

fn examples(name: &str, seed: u64) -> Result<Output> {
    let doc = if name.trim() == "random" {
        io::poset_document(&corpus::random_gposet(seed, 6))
    } else if corpus::is_complex_name(name) {
        io::complex_document(&corpus::builtin_complex(name)?)
    } else {
        io::poset_document(&corpus::builtin_poset(name)?)
    };
    Ok(Output {
        code: EXIT_OK,
        text: io::to_json(&doc),
    })
}

fn sd(l: &Loaded, n: usize) -> Result<Output> {
    let doc = match &l.space {
        Space::Poset(x) => io::poset_document(&subdivision::subdivide_n(x, n)?),
        Space::Complex { complex, .. } => {
            let mut k = complex.clone();
            for _ in 0..n {
                k = simplicial::sd_complex(&k)?;
            }
            io::complex_document(&k)
        }
    };
    Ok(Output {
        code: EXIT_OK,
        text: io::to_json(&doc),
    })
}

fn validate(l: &Loaded, cli: &Cli, budget: Budget) -> Result<Output> {
    let mut r = Report::new("validate", l, budget);
    match &l.space {
        Space::Poset(x) => {
            r.set("kind", json!("poset"));
            r.set("elements", json!(x.len()));
            r.set("cover_relations", json!(x.poset().cover_pairs().len()));
            r.set("group_order", json!(x.group().order()));
            r.set("orbits", json!(x.orbit_count()));
        }
        Space::Complex { complex, normalized } => {
            r.set("kind", json!("complex"));
            r.set("vertices", json!(complex.vertex_count()));
            r.set("simplices", json!(complex.complex.simplex_count()));
            r.set("dimension", json!(complex.complex.dimension()));
            r.set("group_order", json!(complex.group().order()));
            r.set("normalized_by_subdivision", json!(normalized));
        }
    }
    r.set("valid", json!(true));
    Ok(r.render(cli.format))
}

fn vertex_space(l: &Loaded) -> GPoset {
    match &l.space {
        Space::Poset(x) => x.clone(),
        Space::Complex { complex, .. } => complex.vertices.clone(),
    }
}

fn orbits(l: &Loaded, cli: &Cli, budget: Budget) -> Result<Output> {
    let x = vertex_space(l);
    let mut r = Report::new("orbits", l, budget);
    let list: Vec<Json> = x
        .orbits()
        .iter()
        .map(|o| {
            json!({
                "members": names(&x, o),
                "stabilizer_order": x.stabilizer(o[0]).order(),
            })
        })
        .collect();
    r.set("group_order", json!(x.group().order()));
    r.set("orbit_count", json!(list.len()));
    r.set("orbits", Json::Array(list));
    Ok(r.render(cli.format))
}

fn fixed(l: &Loaded, spec: &str, cli: &Cli, budget: Budget) -> Result<Output> {
    let x = vertex_space(l);
    let h = parse_subgroup(&x, spec)?;
    let mut r = Report::new("fixed", l, budget);
    r.set("subgroup", json!(subgroup_names(&x, &h)));
    match &l.space {
        Space::Poset(_) => {
            let f = x.fixed_points(&h);
            r.set("fixed", json!(f.names()));
            r.set("path_connected", json!(f.is_path_connected()));
            r.set("space", serde_json::to_value(io::poset_document(&GPoset::trivial(f))).unwrap());
        }
        Space::Complex { complex, .. } => {
            let (sub, verts) = simplicial::fixed_subcomplex(complex, &h);
            r.set("fixed", json!(names(&x, &verts)));
            r.set("path_connected", json!(sub.is_connected()));
            let facets: Vec<Vec<String>> = sub
                .facets()
                .into_iter()
                .map(|f| sub.simplex(f).iter().map(|&v| sub.name(v).to_string()).collect())
                .collect();
            r.set("simplices", json!(facets));
        }
    }
    Ok(r.render(cli.format))
}

fn gconnected(l: &Loaded, cli: &Cli, budget: Budget) -> Result<Output> {
    let mut r = Report::new("gconnected", l, budget);
    match &l.space {
        Space::Poset(x) => {
            let c = x.g_connectivity();
            r.set("g_connected", json!(c.connected));
            r.set("subgroups_checked", json!(c.subgroups_checked));
            r.set("empty_fixed_sets", json!(c.empty_fixed_sets));
            if let Some(h) = &c.failing_subgroup {
                r.set("failing_subgroup", json!(subgroup_names(x, h)));
            }
        }
        Space::Complex { complex, .. } => {
            r.set("g_connected", json!(simplicial::g_connected_complex(complex)?));
        }
    }
    Ok(r.render(cli.format))
}

fn lscat(l: &Loaded, cli: &Cli, budget: Budget) -> Result<Output> {
    let x = need_poset(l, "lscat")?;
    let res = invariants::ls_cat_g(&x, budget);
    let mut r = Report::new("lscat", l, budget);
    r.set("invariant", json!("LS_G"));
    r.value(res.value);
    r.set("certificate", json!({ "cover": cover_json(&x, &x, &res) }));
    r.set("infinity", infinity_json(&x, &res));
    if let Some(n) = &res.note {
        r.set("note", json!(n));
    }
    let check = match res.value {
        Value::Infinite => recheck_infinity(&x, &res, budget),
        Value::Finite(_) => verify::verify_ls_cover(&x, &res.cover),
        Value::Interval { upper: Some(_), .. } => verify::verify_ls_cover(&x, &res.cover)
            .or_else(|e| if res.cover.is_empty() { Ok(()) } else { Err(e) }),
        Value::Interval { .. } => Ok(()),
    };
    r.verified(check);
    Ok(r.render(cli.format))
}

/// Re-runs the categoricity test on the witness neighbourhood.
fn recheck_infinity(x: &GPoset, res: &InvariantResult, budget: Budget) -> std::result::Result<(), String> {
    let c = res.infinity.as_ref().ok_or("infinite value without a witness")?;
    let u = crate::bits::ElemSet::from_indices(x.len(), c.neighbourhood.iter().copied());
    if u != x.saturated_down_closure(c.witness) {
        return Err("neighbourhood is not the minimal invariant open set of the witness".into());
    }
    match invariants::is_g_categorical(x, &u, budget).map_err(|e| e.to_string())? {
        invariants::cover::Verdict::Bad(_) => Ok(()),
        _ => Err("witness neighbourhood is categorical on re-check".into()),
    }
}

/// Re-decides the witness neighbourhood, through the categoricity of the
/// first factor when the second coordinate is a fixed point.
fn recheck_motion_infinity(
    x: &GPoset,
    res: &InvariantResult,
    m: Option<usize>,
    budget: Budget,
) -> std::result::Result<(), String> {
    let c = res.infinity.as_ref().ok_or("infinite value without a witness")?;
    let xx = x.diagonal();
    let u = crate::bits::ElemSet::from_indices(xx.len(), c.neighbourhood.iter().copied());
    if u != xx.saturated_down_closure(c.witness) {
        return Err("neighbourhood is not the minimal invariant open set of the witness".into());
    }
    let (w, x0) = (c.witness / x.len(), c.witness % x.len());
    if m.is_none() && x.fixed_set(&x.group().whole()).contains(x0) {
        let uw = x.saturated_down_closure(w);
        if let Ok(invariants::cover::Verdict::Bad(_)) = invariants::is_g_categorical(x, &uw, budget) {
            return Ok(());
        }
    }
    match invariants::motion_verdict(x, &u, m, budget) {
        invariants::cover::Verdict::Bad(_) => Ok(()),
        invariants::cover::Verdict::Good(_) => Err("witness neighbourhood is good on re-check".into()),
        invariants::cover::Verdict::Unknown(r) => Err(format!("re-check undecided: {r}")),
    }
}

fn cc(l: &Loaded, m: Option<usize>, max_m: Option<usize>, command: &str, cli: &Cli, budget: Budget) -> Result<Output> {
    let x = need_poset(l, command)?;
    let xx = x.diagonal();
    let mut r = Report::new(command, l, budget);
    if let Some(max_m) = max_m {
        let values: Vec<Value> = (0..=max_m).map(|m| invariants::cc_g_m(&x, m, budget).value).collect();
        let monotone = values
            .windows(2)
            .all(|w| invariants::compare(w[1], w[0]) != BoundStatus::Violated);
        r.set("invariant", json!("CC_G,m"));
        r.set(
            "values",
            Json::Array(
                values
                    .iter()
                    .enumerate()
                    .map(|(m, v)| json!({ "m": m, "value": value_json(*v) }))
                    .collect(),
            ),
        );
        r.set("nonincreasing", json!(monotone));
        let last = *values.last().unwrap();
        r.value(last);
        if !monotone {
            r.code = EXIT_VERIFY;
        }
        return Ok(r.render(cli.format));
    }
    let (res, stab) = match m {
        Some(m) => (invariants::cc_g_m(&x, m, budget), json!({ "m": m })),
        None => {
            let c = invariants::cc_g(&x, budget);
            let s = json!({
                "stabilizing_m": c.stabilizing_m,
                "path_length_bound": c.path_length_bound.to_string(),
            });
            (c.result, s)
        }
    };
    r.set(
        "invariant",
        json!(match (command, m) {
            ("tc", _) => "TC_G (= CC_G)",
            (_, Some(_)) => "CC_G,m",
            _ => "CC_G",
        }),
    );
    r.value(res.value);
    r.set("stabilization", stab);
    r.set("certificate", json!({ "cover": cover_json(&xx, &x, &res) }));
    r.set("infinity", infinity_json(&xx, &res));
    if let Some(n) = &res.note {
        r.set("note", json!(n));
    }
    let check = match res.value {
        Value::Infinite => recheck_motion_infinity(&x, &res, m, budget),
        _ if res.cover.is_empty() => Ok(()),
        _ => verify::verify_motion_cover(&x, &res.cover, m),
    };
    r.verified(check);
    Ok(r.render(cli.format))
}

fn as_complex(l: &Loaded) -> Result<(OrderedGComplex, bool)> {
    match &l.space {
        Space::Poset(x) => Ok((simplicial::order_complex(x)?, false)),
        Space::Complex { complex, normalized } => Ok((complex.clone(), *normalized)),
    }
}

fn simplex_names(k: &OrderedGComplex, s: &[usize]) -> Vec<String> {
    s.iter().map(|&v| k.complex.name(v).to_string()).collect()
}

fn sc_cmd(l: &Loaded, b: usize, c: usize, verify_file: Option<&str>, cli: &Cli, budget: Budget) -> Result<Output> {
    let (k, normalized) = as_complex(l)?;
    let setup = sc::projection_composites(&k, b, Approximation::Last)?;
    let mut r = Report::new("sc", l, budget);
    r.set("invariant", json!("SC_G^{b,c}"));
    r.set("stabilization", json!({ "b": b, "c": c }));
    r.set("normalized_by_subdivision", json!(normalized));
    r.set("domain_simplices", json!(setup.domain.complex.simplex_count()));
    let lower = simplicial::realization_tc_lower_bound(&k)?;
    r.set("realization_tc_lower_bound", lower.map_or(json!("infinity"), |v| json!(v)));
    let d = &setup.domain;
    if let Some(path) = verify_file {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))?;
        let sets = cover_sets(&text)
            .map_err(|e| Error::Input(format!("{path}: {e}")))?
            .iter()
            .map(|set| {
                set.iter()
                    .map(|simplex| {
                        let vs = simplex
                            .iter()
                            .map(|n| d.complex.vertex_index(n))
                            .collect::<Result<Vec<_>>>()?;
                        d.complex
                            .simplex_index(&vs)
                            .ok_or_else(|| Error::Input(format!("{simplex:?} is not a simplex")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        r.set("sets", json!(sets.len()));
        match sc::certify_sets(&setup, c, &sets, budget) {
            Ok(_) => {
                r.value(Value::Interval {
                    lower: 0,
                    upper: Some(sets.len()),
                });
                r.code = EXIT_OK;
                r.set("value", json!({ "upper": sets.len(), "status": "verified cover" }));
                r.verified(Ok(()));
            }
            Err(Error::BudgetExceeded(m)) => {
                r.set("verified", json!(false));
                r.set("verification_error", json!(m));
                r.code = EXIT_BUDGET;
            }
            Err(e) => r.verified(Err(e.to_string())),
        }
        return Ok(r.render(cli.format));
    }
    let res = sc::sc_g_bc_on(&setup, c, budget)?;
    r.value(res.value);
    let sets: Vec<Json> = res
        .certificate
        .sets
        .iter()
        .map(|s| {
            let gens: Vec<Vec<usize>> = s.simplices.iter().map(|&i| d.complex.simplex(i).to_vec()).collect();
            let mut verts: Vec<usize> = gens.iter().flatten().copied().collect();
            verts.sort_unstable();
            verts.dedup();
            json!({
                "simplices": gens.iter().map(|g| simplex_names(d, g)).collect::<Vec<_>>(),
                "vertices": simplex_names(d, &verts),
                "chain": s.chain.iter().map(|m| simplex_names(&k, m)).collect::<Vec<_>>(),
            })
        })
        .collect();
    r.set("certificate", json!({ "b": b, "c": c, "sets": sets }));
    if let Some(w) = &res.witness {
        r.set(
            "infinity",
            json!({
                "witness_simplex": simplex_names(d, d.complex.simplex(w.simplex)),
                "reason": w.reason,
            }),
        );
    }
    if let Some(n) = &res.note {
        r.set("note", json!(n));
    }
    let check = if res.certificate.sets.is_empty() {
        Ok(())
    } else {
        sc::verify_sc_cover(&setup, &res.certificate).map_err(|e| e.to_string())
    };
    r.verified(check);
    Ok(r.render(cli.format))
}

/// The subcomplexes named in a cover file: either a document with a `cover`
/// field or a structured `sc` report, whose certificate sets are read.
fn cover_sets(text: &str) -> std::result::Result<Vec<Vec<Vec<String>>>, String> {
    let v: Json = serde_json::from_str(text).map_err(|e| format!("line {}: {e}", e.line()))?;
    if let Some(version) = v.get("format_version") {
        if version != &json!(io::FORMAT_VERSION) {
            return Err(format!("unsupported format_version {version}"));
        }
    }
    let sets: Vec<Json> = if let Some(cover) = v.get("cover") {
        serde_json::from_value(cover.clone()).map_err(|e| e.to_string())?
    } else if let Some(cert) = v.pointer("/certificate/sets") {
        let sets: Vec<Json> = serde_json::from_value(cert.clone()).map_err(|e| e.to_string())?;
        sets.into_iter().map(|s| s["simplices"].clone()).collect()
    } else {
        return Err("no `cover` field and no `certificate.sets`".into());
    };
    sets.into_iter()
        .map(|s| serde_json::from_value(s).map_err(|e| e.to_string()))
        .collect()
}

fn bounds(l: &Loaded, cli: &Cli, budget: Budget) -> Result<Output> {
    let x = need_poset(l, "bounds")?;
    let rep = invariants::bound_report(&x, budget)?;
    let mut r = Report::new("bounds", l, budget);
    r.set("LS_G(X)", value_json(rep.ls));
    r.set("TC_G(X)", value_json(rep.tc));
    r.set("LS_G(X x X)", value_json(rep.ls_square));
    r.set("LS_G(sd X)", value_json(rep.ls_subdivision));
    r.set("g_connected", json!(rep.g_connected));
    r.set("fixed_set_nonempty", json!(rep.fixed_nonempty));
    let mut violated = false;
    let entries: Vec<Json> = rep
        .entries
        .iter()
        .map(|e| {
            let status = match &e.status {
                BoundStatus::Holds => json!("holds"),
                BoundStatus::Violated => {
                    violated = true;
                    json!("violated")
                }
                BoundStatus::Unknown => json!("unknown"),
                BoundStatus::Skipped(why) => json!(format!("skipped: {why}")),
            };
            json!({
                "bound": e.name,
                "lhs": value_json(e.lhs),
                "rhs": value_json(e.rhs),
                "status": status,
            })
        })
        .collect();
    r.set("bounds", Json::Array(entries));
    for v in [rep.ls, rep.tc, rep.ls_square, rep.ls_subdivision] {
        if !v.is_exact() {
            r.code = r.code.max(EXIT_BUDGET);
        }
    }
    if violated {
        r.code = EXIT_VERIFY;
    }
    Ok(r.render(cli.format))
}
