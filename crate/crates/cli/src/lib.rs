//! Command-line front end for `dynkin-stab`.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use dynkin_stab::diagram::MarkedPair;
use dynkin_stab::hweights::{self, TwoSidedWeight};
use dynkin_stab::lattice::{self, Weight};
use dynkin_stab::linalg::q_string;
use dynkin_stab::oracle::WeylContext;
use dynkin_stab::parse;
use dynkin_stab::paths;
use dynkin_stab::ring::StarRing;
use dynkin_stab::stab::{self, BcdSeries, StabOptions};
use dynkin_stab::Error;

pub const SCHEMA: &str = "dynkin-stab/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Clone, Debug, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "dynkin-stab", version, about = "Tensor and branching multiplicities on Z_k(X1,X2)")]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cap on path nodes per multiplicity computation.
    #[arg(long, global = true, default_value_t = stab::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Cartan matrix, symmetrizer, determinants and a-sequence of a marked diagram.
    DiagramInfo {
        #[arg(long)]
        diagram: String,
        #[arg(long, default_value_t = 8)]
        a_count: usize,
    },
    /// Extensibility of a pair and det Z_k by formula and by elimination.
    PairCheck {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
    },
    /// γ^(k) in fundamental weight coordinates.
    Specialize {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        k: usize,
    },
    /// Number of boxes |γ|.
    Boxes {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        gamma: String,
    },
    /// Depth of γ (requires |γ| = 0).
    Depth {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        gamma: String,
    },
    /// Root coefficients b, s, c of γ^(k).
    Bici {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// c_u − c_v, the order of ω_u − ω_v modulo Q(Z_k), and optionally the congruence for γ.
    OrderCheck {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Tensor multiplicities by path counting, on one diagram or on Z_k.
    Tensor {
        #[arg(long = "type")]
        diagram: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: Option<String>,
        /// Write the crystal of λ as Graphviz DOT.
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
    },
    /// Branching multiplicity b^λ_β(k) to the Levi subalgebra of X1 ⊔ X2.
    Branch {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        beta: String,
    },
    /// Stable tensor multiplicity c^ν_{λμ}(∞).
    StabilizeTensor {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long, default_value_t = 2)]
        probes: usize,
    },
    /// Stable branching multiplicity b^λ_β(∞).
    StabilizeBranch {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 2)]
        probes: usize,
    },
    /// Height of γ for B_n, C_n or D_n and whether γ^(n) has constant middle coefficients.
    BcdHeight {
        #[arg(long)]
        series: char,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Stable tensor multiplicity along B_n, C_n or D_n.
    BcdStabilize {
        #[arg(long)]
        series: char,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        /// Extra ranks to report, e.g. `3..8`.
        #[arg(long)]
        ranks: Option<String>,
    },
    /// Dominant weights above γ: U(γ) on one diagram, or U(γ, s) for a pair.
    IntervalUp {
        #[arg(long = "type")]
        diagram: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        s: Option<i64>,
    },
    /// Dominant ν with λ1 ≽ ν ≽ λ2.
    IntervalBetween {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        lambda1: String,
        #[arg(long)]
        lambda2: String,
    },
    /// v_λ * v_μ truncated at a depth.
    Star {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 1)]
        depth: i64,
    },
    /// Associativity of * on one triple, optionally against the direct triple count.
    AssocCheck {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long, default_value_t = 1)]
        depth: i64,
        #[arg(long)]
        triple: bool,
    },
    /// L(λ) ⊗ L(μ) by the Brauer–Klimyk rule (finite type).
    OracleTensor {
        #[arg(long = "type")]
        diagram: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Weyl dimension of L(λ) (finite type).
    OracleDim {
        #[arg(long = "type")]
        diagram: String,
        #[arg(long)]
        lambda: String,
    },
    /// [10…01] ⊗ [10…01] on B3, B4, B5 against the embedded tables.
    ReproduceBTables,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DiagramInfo { .. } => "diagram-info",
            Command::PairCheck { .. } => "pair-check",
            Command::Specialize { .. } => "specialize",
            Command::Boxes { .. } => "boxes",
            Command::Depth { .. } => "depth",
            Command::Bici { .. } => "bici",
            Command::OrderCheck { .. } => "order-check",
            Command::Tensor { .. } => "tensor",
            Command::Branch { .. } => "branch",
            Command::StabilizeTensor { .. } => "stabilize-tensor",
            Command::StabilizeBranch { .. } => "stabilize-branch",
            Command::BcdHeight { .. } => "bcd-height",
            Command::BcdStabilize { .. } => "bcd-stabilize",
            Command::IntervalUp { .. } => "interval-up",
            Command::IntervalBetween { .. } => "interval-between",
            Command::Star { .. } => "star",
            Command::AssocCheck { .. } => "assoc-check",
            Command::OracleTensor { .. } => "oracle-tensor",
            Command::OracleDim { .. } => "oracle-dim",
            Command::ReproduceBTables => "reproduce-b-tables",
        }
    }
}

/// Result of one command: a JSON object and its TSV rendering.
struct Output {
    json: Value,
    tsv: Vec<String>,
    /// A check ran and failed; reported with exit code 2.
    failed: Option<String>,
}

impl Output {
    fn new(json: Value, tsv: Vec<String>) -> Self {
        Output { json, tsv, failed: None }
    }

    /// One `key\tvalue` line per top-level scalar field.
    fn flat(json: Value) -> Self {
        let tsv = match &json {
            Value::Object(m) => m.iter().map(|(k, v)| format!("{k}\t{}", tsv_cell(v))).collect(),
            v => vec![tsv_cell(v)],
        };
        Output::new(json, tsv)
    }

    fn check(mut self, ok: bool, what: &str) -> Self {
        if !ok {
            self.failed = Some(what.to_string());
        }
        self
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn weight_text(w: &Weight) -> String {
    if w.0.iter().all(|x| (0..=9).contains(x)) {
        stab::digits(w)
    } else {
        format!("[{}]", w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_DOMAIN
    }
}

fn pair_of(s: &str) -> Result<MarkedPair, Error> {
    parse::pair_spec(s)
}

fn tw(s: &str) -> Result<TwoSidedWeight, Error> {
    parse::two_sided(s)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Error> {
    v.as_deref().ok_or_else(|| Error::Invalid(format!("{flag} is required here")))
}

fn parse_range(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Parse(format!("bad rank range {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    Ok((a..=b).collect())
}

fn execute(job: &JobSpec) -> Result<Output, Error> {
    let budget = job.budget;
    let opts = |probes: usize| StabOptions { budget, probes };
    Ok(match &job.command {
        Command::DiagramInfo { diagram, a_count } => {
            let md = parse::diagram_spec(diagram)?;
            let d = &md.diagram;
            let class = match d.classify() {
                Ok(c) => format!("{c:?}").to_lowercase(),
                Err(Error::Decomposable) => "decomposable".into(),
                Err(e) => return Err(e),
            };
            let extensible = md.is_extensible();
            let a_seq = if extensible { Some(md.a_sequence(*a_count)?) } else { None };
            Output::flat(json!({
                "rank": d.rank(),
                "cartan": d.cartan(),
                "symmetrizer": d.symmetrizer(),
                "det": d.det(),
                "class": class,
                "mark": md.mark + 1,
                "delta": md.delta(),
                "extensible": extensible,
                "det_extended": (-1..=4).map(|m| json!({"m": m, "det": md.det_extended(m)})).collect::<Vec<_>>(),
                "a_sequence": a_seq,
                "spec": parse::format_diagram(&md),
            }))
        }
        Command::PairCheck { pair, k_max } => {
            let p = pair_of(pair)?;
            let mut rows = Vec::new();
            let mut all = true;
            for k in 1..=*k_max {
                let direct = p.build_zk(k)?.det();
                let formula = p.det_zk_formula(k as i64);
                all &= direct == formula;
                rows.push(json!({"k": k, "formula": formula, "direct": direct}));
            }
            Output::flat(json!({
                "extensible_pair": p.is_extensible_pair(),
                "extensible1": p.x1.is_extensible(),
                "extensible2": p.x2.is_extensible(),
                "d1": p.d1, "d2": p.d2,
                "delta1": p.delta1, "delta2": p.delta2,
                "det1": p.det1, "det2": p.det2,
                "singular_k": p.singular_k(),
                "det_zk": rows,
                "formula_matches": all,
            }))
            .check(all, "det Z_k formula disagrees with elimination")
        }
        Command::Specialize { pair, gamma, k } => {
            let p = pair_of(pair)?;
            let w = hweights::specialize(&p, &tw(gamma)?, *k)?;
            Output::flat(json!({"k": k, "n": w.rank(), "weight": w}))
        }
        Command::Boxes { pair, gamma } => {
            let p = pair_of(pair)?;
            let g = tw(gamma)?;
            let (b1, b2) = lattice::b_values(&p, &g)?;
            Output::flat(json!({
                "boxes": lattice::number_of_boxes(&p, &g)?,
                "b1": q_string(&b1), "b2": q_string(&b2),
            }))
        }
        Command::Depth { pair, gamma } => {
            let p = pair_of(pair)?;
            Output::flat(json!({"depth": lattice::depth(&p, &tw(gamma)?)?}))
        }
        Command::Bici { pair, gamma, k } => {
            let p = pair_of(pair)?;
            let g = tw(gamma)?;
            let k = lattice::nonsingular_k(&p, k.unwrap_or_else(|| lattice::min_k(&p, &g)));
            let b = lattice::bici_decomposition(&p, &g, k)?;
            let coords = b.root_coords(&p.build_zk(k)?);
            Output::flat(json!({
                "b": b.b, "s": b.s, "c": b.c, "k": b.probe_k,
                "nonnegative": b.is_nonnegative(),
                "root_coords": coords,
            }))
        }
        Command::OrderCheck { pair, k, gamma } => {
            let p = pair_of(pair)?;
            let zk = p.build_zk(*k)?;
            let (u, v) = lattice::bridge_uv(&zk);
            let cu = lattice::cu_minus_cv(&zk, u, v)?;
            let order = lattice::order_uv(&zk)?;
            let mut ok = order == zk.det().abs();
            let mut out = json!({
                "k": k, "det": zk.det(),
                "cu_minus_cv": q_string(&cu),
                "order": order,
                "order_equals_det": ok,
            });
            if let Some(g) = gamma {
                let g = tw(g)?;
                let holds = lattice::congruence_holds(&zk, &g)?;
                ok &= holds;
                out["boxes"] = json!(lattice::number_of_boxes(&p, &g)?);
                out["congruence"] = json!(holds);
            }
            Output::flat(out).check(ok, "order or congruence check failed")
        }
        Command::Tensor { diagram, pair, k, lambda, mu, nu, dot } => {
            if let Some(spec) = diagram {
                let d = parse::plain_diagram(spec)?;
                let (l, m) = (parse::weight(lambda)?, parse::weight(mu)?);
                if let Some(path) = dot {
                    let crystal = paths::generate_crystal(&d, &l, None, budget)?;
                    std::fs::write(path, crystal.to_dot()).map_err(|e| Error::Invalid(e.to_string()))?;
                }
                if let Some(nu) = nu {
                    let c = paths::tensor_count(&d, &l, &m, &parse::weight(nu)?, budget)?;
                    Output::flat(json!({"count": c.count, "path_nodes_expanded": c.expanded}))
                } else {
                    let dec = paths::tensor_decompose_paths(&d, &l, &m, budget)?;
                    table(&dec)
                }
            } else {
                let p = pair_of(need(pair, "--pair or --type")?)?;
                let k = k.ok_or_else(|| Error::Invalid("--k is required with --pair".into()))?;
                let zk = p.build_zk(k)?;
                let (l, m, n) = (tw(lambda)?, tw(mu)?, tw(need(nu, "--nu")?)?);
                if let Some(path) = dot {
                    let crystal =
                        paths::generate_crystal(&zk.diagram, &hweights::specialize(&p, &l, k)?, None, budget)?;
                    std::fs::write(path, crystal.to_dot()).map_err(|e| Error::Invalid(e.to_string()))?;
                }
                let c = paths::tensor_count_h2(&zk, &l, &m, &n, budget)?;
                Output::flat(json!({"k": k, "count": c.count, "path_nodes_expanded": c.expanded}))
            }
        }
        Command::Branch { pair, k, lambda, beta } => {
            let p = pair_of(pair)?;
            let c = paths::branching_count(&p.build_zk(*k)?, &tw(lambda)?, &tw(beta)?, budget)?;
            Output::flat(json!({"k": k, "count": c.count, "path_nodes_expanded": c.expanded}))
        }
        Command::StabilizeTensor { pair, lambda, mu, nu, probes } => {
            let p = pair_of(pair)?;
            let r = stab::stable_tensor(&p, &tw(lambda)?, &tw(mu)?, &tw(nu)?, opts(*probes))?;
            Output::flat(serde_json::to_value(r).expect("serializable"))
        }
        Command::StabilizeBranch { pair, lambda, beta, probes } => {
            let p = pair_of(pair)?;
            let r = stab::stable_branching(&p, &tw(lambda)?, &tw(beta)?, opts(*probes))?;
            Output::flat(serde_json::to_value(r).expect("serializable"))
        }
        Command::BcdHeight { series, gamma, l, r } => {
            let s = BcdSeries::from_char(*series)?;
            let g = tw(gamma)?;
            let l = l.unwrap_or(g.left.len());
            let r = r.unwrap_or(g.right.len());
            let norm = stab::bcd_rs_membership(s, &g, l, r)?;
            Output::flat(json!({
                "height": q_string(&stab::height(s, &g)),
                "in_rs": norm.is_some(),
                "norm": norm,
            }))
        }
        Command::BcdStabilize { series, lambda, mu, nu, ranks } => {
            let s = BcdSeries::from_char(*series)?;
            let (l, m, n) = (tw(lambda)?, tw(mu)?, tw(nu)?);
            let r = stab::bcd_stable_tensor(s, &l, &m, &n, opts(2))?;
            let mut out = serde_json::to_value(&r).expect("serializable");
            if let Some(ranks) = ranks {
                let obs = stab::bcd_observe(s, &l, &m, &n, &parse_range(ranks)?, budget)?;
                out["observed"] = json!(obs.iter().map(|(n, c)| json!({"n": n, "value": c})).collect::<Vec<_>>());
            }
            Output::flat(out)
        }
        Command::IntervalUp { diagram, pair, gamma, s } => {
            if let Some(spec) = diagram {
                let d = parse::plain_diagram(spec)?;
                let ws = hweights::interval_up(&d, &parse::weight(gamma)?)?;
                let tsv = ws.iter().map(weight_text).collect();
                Output::new(json!({"count": ws.len(), "weights": ws}), tsv)
            } else {
                let p = pair_of(need(pair, "--pair or --type")?)?;
                let s = s.ok_or_else(|| Error::Invalid("--s is required with --pair".into()))?;
                weights_out(hweights::interval_up_h2(&p, &tw(gamma)?, s)?)
            }
        }
        Command::IntervalBetween { pair, lambda1, lambda2 } => {
            let p = pair_of(pair)?;
            weights_out(hweights::interval_between(&p, &tw(lambda1)?, &tw(lambda2)?)?)
        }
        Command::Star { pair, lambda, mu, depth } => {
            let ring = StarRing::new(pair_of(pair)?, opts(2))?;
            let e = ring.star_basis(&tw(lambda)?, &tw(mu)?, *depth)?;
            let tsv = e.terms.iter().map(|(w, c)| format!("{w}\t{}", q_string(c))).collect();
            Output::new(serde_json::to_value(&e).expect("serializable"), tsv)
        }
        Command::AssocCheck { pair, lambda, mu, nu, depth, triple } => {
            let ring = StarRing::new(pair_of(pair)?, opts(2))?;
            let (l, m, n) = (tw(lambda)?, tw(mu)?, tw(nu)?);
            let rep = ring.associativity_check(&l, &m, &n, *depth)?;
            let mut ok = rep.equal;
            let mut out = json!({"associative": rep.equal, "compared": rep.compared, "left": rep.left, "right": rep.right});
            let mut tsv = vec![format!("associative\t{}", rep.equal), format!("compared\t{}", rep.compared)];
            if *triple {
                let t = ring.triple_check(&l, &m, &n, *depth)?;
                ok &= t.equal;
                tsv.push(format!("triple_product\t{}", t.equal));
                out["triple_product"] = serde_json::to_value(&t).expect("serializable");
            }
            Output::new(out, tsv).check(ok, "ring law check failed")
        }
        Command::OracleTensor { diagram, lambda, mu } => {
            let ctx = WeylContext::new(&parse::plain_diagram(diagram)?)?;
            table(&ctx.tensor_decompose(&parse::weight(lambda)?, &parse::weight(mu)?)?)
        }
        Command::OracleDim { diagram, lambda } => {
            let ctx = WeylContext::new(&parse::plain_diagram(diagram)?)?;
            Output::flat(json!({"dimension": ctx.dimension(&parse::weight(lambda)?)?}))
        }
        Command::ReproduceBTables => {
            let rep = stab::reproduce_b_tables(budget)?;
            let mut tsv = Vec::new();
            for t in &rep.tables {
                for r in &t.rows {
                    tsv.push(format!("B{}\t{}\t{}\t{}\t{}", t.rank, r.weight, r.golden, r.oracle, r.paths));
                }
            }
            let ok = rep.all_match;
            Output::new(serde_json::to_value(&rep).expect("serializable"), tsv)
                .check(ok, "computed tables differ from the embedded ones")
        }
    })
}

fn table(dec: &std::collections::BTreeMap<Weight, i64>) -> Output {
    let terms: Vec<Value> =
        dec.iter().map(|(w, m)| json!({"weight": w, "label": weight_text(w), "mult": m})).collect();
    let tsv = dec.iter().map(|(w, m)| format!("{}\t{m}", weight_text(w))).collect();
    Output::new(json!({"terms": terms, "count": dec.len()}), tsv)
}

fn weights_out(ws: Vec<TwoSidedWeight>) -> Output {
    let tsv = ws.iter().map(|w| w.to_string()).collect();
    Output::new(json!({"count": ws.len(), "weights": ws}), tsv)
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match JobSpec::try_parse_from(argv) {
        Ok(job) => job,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    run_job(&job, out, err)
}

pub fn run_job(job: &JobSpec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = job.jobs {
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| execute(job)),
        Err(e) => Err(Error::Invalid(e.to_string())),
    };
    match result {
        Ok(output) => {
            match job.format {
                Format::Json => {
                    let mut doc = json!({"schema": SCHEMA, "command": job.command.name()});
                    match output.json {
                        Value::Object(m) => doc.as_object_mut().expect("object").extend(m),
                        v => doc["result"] = v,
                    }
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                Format::Tsv => {
                    for line in &output.tsv {
                        let _ = writeln!(out, "{line}");
                    }
                }
            }
            match output.failed {
                Some(why) => {
                    let _ = writeln!(err, "error: {why}");
                    EXIT_DOMAIN
                }
                None => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
