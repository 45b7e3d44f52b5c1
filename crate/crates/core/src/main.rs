use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::{json, Value};

use prosimpl::budget::{max_simplices, DEFAULT_MAP_CAP};
use prosimpl::category::FinCategory;
use prosimpl::complexes::{face_poset, order_complex, SimplicialComplex};
use prosimpl::diagrams::{
    corner_extension_test, filtered_refinement_solve, hocolim_capped, induced_hocolim_capped, pro_equivalence_check_with,
    realize_lk, slice_category, Diagram, FibrantTestObject, ProEqBudgets, RefinementOutcome, RefinementProblem,
};
use prosimpl::diagrams::lk::RefinementDomain;
use prosimpl::error::Error;
use prosimpl::homology::{homology, ChainComplex, HomologyGroup};
use prosimpl::io::{self, Loader};
use prosimpl::kan_ex::{ex_capped, weq_test, CornerFrame, LiftingProblem, WeqBudgets};
use prosimpl::nerve::CategoryNerve;
use prosimpl::realization::functor_of_map;
use prosimpl::simplex::{pushout, FinSSet, Product, SMap};
use prosimpl::subdivision::SubdivisionTower;

#[derive(Parser)]
#[command(name = "prosimpl", version, about = "Finite simplicial sets, subdivision, homotopy colimits and pro-equivalence checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Debug)]
struct Global {
    /// Truncation dimension; each command has its own default.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Largest n of lifting problems.
    #[arg(long, global = true, default_value_t = 3)]
    nmax: usize,
    /// Largest number of subdivisions.
    #[arg(long, global = true, default_value_t = 2)]
    sdmax: usize,
    /// Cap on maps enumerated per dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_MAP_CAP)]
    map_cap: usize,
    /// Search nodes per extension problem.
    #[arg(long, global = true, default_value_t = 200_000)]
    node_cap: u64,
    /// Lifting problems posed per dimension.
    #[arg(long, global = true, default_value_t = 16)]
    problem_cap: usize,
    /// Cap on simplices of any constructed object (also PROSIMPL_MAX_SIMPLICES).
    #[arg(long, global = true)]
    max_simplices: Option<usize>,
    /// Run independent checks on separate threads.
    #[arg(long, global = true)]
    parallel: bool,
    /// Print a timing record to stderr after the result.
    #[arg(long, global = true)]
    meta: bool,
}

impl Global {
    fn weq(&self) -> WeqBudgets {
        WeqBudgets { n_max: self.nmax, k_max: self.sdmax, map_cap: self.map_cap, node_cap: self.node_cap, problem_cap: self.problem_cap }
    }

    fn dim_or(&self, d: usize) -> usize {
        self.dim.unwrap_or(d)
    }

    fn echo(&self, dim: Option<usize>) -> Value {
        json!({
            "dim": dim,
            "nmax": self.nmax,
            "sdmax": self.sdmax,
            "map_cap": self.map_cap,
            "node_cap": self.node_cap,
            "problem_cap": self.problem_cap,
            "max_simplices": max_simplices(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a file of any supported kind.
    Validate {
        input: PathBuf,
        /// sset, map, complex, category, functor, diagram or promap; guessed when absent.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Iterated barycentric subdivision.
    Sd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the last-vertex map sd^k X → X.
        #[arg(long)]
        emit_gamma: Option<PathBuf>,
    },
    /// Nerve of a finite category.
    Nerve {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Order complex of the face poset of a simplicial complex.
    OrderComplex {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Face poset of a simplicial set.
    FacePoset {
        #[arg(long)]
        input: PathBuf,
    },
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pushout of B ← A → C given by two maps out of A.
    Pushout {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Homology {
        input: PathBuf,
        /// Write boundary matrices as `<prefix><n>.txt`.
        #[arg(long)]
        export_matrices: Option<String>,
    },
    /// Ex through dimension `dim`.
    Ex {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bounded weak-equivalence test of a map.
    CheckWeq {
        #[arg(long)]
        map: PathBuf,
    },
    Hocolim {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        fibrant: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Nerve of the category of pairs (i, X(i) → Z), compared with the hocolim.
    SliceNerve {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        fibrant: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    CheckProeq {
        #[arg(long)]
        promap: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        fibrant: Vec<PathBuf>,
    },
    /// L_K X and f_ω for a map ω from a complex into the hocolim.
    RealizeLk {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        fibrant: PathBuf,
        /// The complex K.
        #[arg(long)]
        complex: PathBuf,
        /// `{"on": {...}}` from K into the hocolim, by simplex names.
        #[arg(long)]
        omega: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Corner extension test for an inclusion of diagrams on the prism frame.
    CornerTest {
        #[arg(long)]
        promap: PathBuf,
        #[arg(long)]
        fibrant: PathBuf,
        #[arg(long)]
        n: usize,
        /// Map ∂Δⁿ → hocolim(Y), by simplex names.
        #[arg(long)]
        boundary: PathBuf,
        /// Map Δⁿ → hocolim(X) extending the restriction of the boundary map.
        #[arg(long)]
        simplex: PathBuf,
    },
    /// Extension after restricting along some j → i, over a filtered index.
    RefineSolve {
        #[arg(long)]
        promap: PathBuf,
        #[arg(long)]
        fibrant: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        n: usize,
        /// Map from (∂Δⁿ × Y_i) ∪ (Δⁿ × X_i) to Z; without it the domain is printed.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Graphviz text for a category or the face poset of a simplicial set.
    ExportDot {
        #[arg(long, conflicts_with = "face_poset", required_unless_present = "face_poset")]
        category: Option<PathBuf>,
        #[arg(long)]
        face_poset: Option<PathBuf>,
    },
}

struct Outcome {
    summary: String,
    result: Value,
}

type Run = Result<Outcome, Error>;

fn out(summary: impl Into<String>, result: Value) -> Run {
    Ok(Outcome { summary: summary.into(), result })
}

fn open(path: &Path) -> Result<(Loader, Value), Error> {
    Loader::open(path)
}

fn load_sset(path: &Path) -> Result<Arc<FinSSet>, Error> {
    let (l, v) = open(path)?;
    l.sset(&v)
}

fn load_map(path: &Path) -> Result<SMap, Error> {
    let (l, v) = open(path)?;
    l.smap(&v, None, None)
}

fn load_fibrant(path: &Path) -> Result<FibrantTestObject, Error> {
    let (l, v) = open(path)?;
    l.fibrant(&v)
}

fn load_diagram(path: &Path) -> Result<Arc<Diagram>, Error> {
    let (l, v) = open(path)?;
    l.diagram(&v)
}

fn write(path: &Option<PathBuf>, v: &Value) -> Result<(), Error> {
    if let Some(p) = path {
        std::fs::write(p, io::to_text(v))?;
    }
    Ok(())
}

fn counts(x: &FinSSet) -> String {
    let c: Vec<String> = x.counts().iter().map(ToString::to_string).collect();
    format!("({})", c.join(", "))
}

fn group_json(g: &HomologyGroup) -> Value {
    json!({ "rank": g.rank, "torsion": g.torsion_u64() })
}

fn group_text(g: &HomologyGroup) -> String {
    let mut parts: Vec<String> = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion_u64().iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn guess_kind(v: &Value) -> &'static str {
    let has = |k: &str| v.get(k).is_some();
    if has("simplices") {
        "sset"
    } else if has("vertices") {
        "complex"
    } else if has("on") {
        "map"
    } else if has("identities") {
        "category"
    } else if has("index") {
        "diagram"
    } else if has("theta") {
        "promap"
    } else if has("objects") && has("source") {
        "functor"
    } else {
        "unknown"
    }
}

fn validate(input: &Path, kind: Option<String>) -> Run {
    let (l, v) = open(input)?;
    let kind = kind.unwrap_or_else(|| guess_kind(&v).to_string());
    let violations: Vec<String> = match kind.as_str() {
        "sset" => l.sset(&v)?.validate(),
        "complex" => {
            l.complex(&v)?;
            Vec::new()
        }
        "map" => l.smap(&v, None, None)?.validate(),
        "category" => l.category(&v)?.validate(),
        "functor" => l.functor(&v, None, None)?.validate(),
        "diagram" => l.diagram(&v)?.validate(),
        "promap" => l.promap(&v)?.validate(),
        other => return Err(Error::Parse(format!("cannot tell what kind of file this is ({other})"))),
    };
    if !violations.is_empty() {
        return Err(Error::Validation(violations.join("; ")));
    }
    out(format!("{kind}: valid"), json!({ "kind": kind, "valid": true, "violations": violations }))
}

fn run(cmd: Command, g: &Global) -> Run {
    match cmd {
        Command::Validate { input, kind } => validate(&input, kind),
        Command::Sd { input, iterations, output, emit_gamma } => {
            let x = load_sset(&input)?;
            let tower = SubdivisionTower::new(x, iterations)?;
            let top = tower.top();
            write(&output, &io::sset_to_json(top))?;
            if let Some(p) = emit_gamma {
                // refs resolve next to the map file, so store absolute paths
                let source = match &output {
                    Some(o) => json!(std::fs::canonicalize(o)?.display().to_string()),
                    None => io::sset_to_json(top),
                };
                let target = json!(std::fs::canonicalize(&input)?.display().to_string());
                let g = io::smap_to_json(&tower.gamma_composite(), source, target);
                std::fs::write(p, io::to_text(&g))?;
            }
            out(
                format!("sd^{iterations}: counts {}", counts(top)),
                json!({ "iterations": iterations, "counts": top.counts(), "euler_characteristic": top.euler_characteristic() }),
            )
        }
        Command::Nerve { category, output } => {
            let dim = g.dim;
            let (l, v) = open(&category)?;
            let c = l.category(&v)?;
            let n = CategoryNerve::new(c, dim)?;
            write(&output, &io::sset_to_json(&n.nerve.space))?;
            out(format!("nerve: counts {}", counts(&n.nerve.space)), json!({ "counts": n.nerve.counts(), "cap": n.nerve.cap }))
        }
        Command::OrderComplex { input, output } => {
            let (l, v) = open(&input)?;
            let k = order_complex(&l.complex(&v)?);
            write(&output, &io::complex_to_json(&k))?;
            out(format!("order complex: counts ({})", k.counts().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")), json!({ "counts": k.counts() }))
        }
        Command::FacePoset { input } => {
            let x = load_sset(&input)?;
            let fp = face_poset(&x);
            let p = &fp.poset;
            let covers: Vec<Value> = (0..p.len())
                .flat_map(|a| (0..p.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| p.lt(a, b) && !(0..p.len()).any(|c| p.lt(a, c) && p.lt(c, b)))
                .map(|(a, b)| json!([p.elements()[a], p.elements()[b]]))
                .collect();
            out(
                format!("face poset: {} elements, {} covering relations", p.len(), covers.len()),
                json!({ "elements": p.elements(), "covers": covers, "chain_counts": p.chain_counts() }),
            )
        }
        Command::Product { left, right, output } => {
            let p = Product::new(load_sset(&left)?, load_sset(&right)?);
            write(&output, &io::sset_to_json(p.space()))?;
            out(format!("product: counts {}", counts(p.space())), json!({ "counts": p.space().counts() }))
        }
        Command::Pushout { f, g, output } => {
            let po = pushout(&load_map(&f)?, &load_map(&g)?)?;
            write(&output, &io::sset_to_json(&po.space))?;
            out(
                format!("pushout: counts {}", counts(&po.space)),
                json!({ "counts": po.space.counts(), "euler_characteristic": po.space.euler_characteristic() }),
            )
        }
        Command::Homology { input, export_matrices } => {
            let x = load_sset(&input)?;
            let groups = homology(&x);
            if let Some(prefix) = export_matrices {
                for (n, m) in ChainComplex::of(&x).boundaries.iter().enumerate().skip(1) {
                    std::fs::write(format!("{prefix}{n}.txt"), m.to_text())?;
                }
            }
            let text: Vec<String> = groups.iter().enumerate().map(|(n, g)| format!("H{n} = {}", group_text(g))).collect();
            out(text.join(", "), json!({ "degrees": groups.iter().map(group_json).collect::<Vec<_>>() }))
        }
        Command::Ex { input, output } => {
            let dim = g.dim_or(3);
            let x = load_sset(&input)?;
            let e = ex_capped(x.clone(), dim, g.map_cap)?;
            write(&output, &io::sset_to_json(&e.ex.space))?;
            let all: Vec<usize> = (0..=dim).map(|n| e.levels.all_count(n)).collect();
            let verdict = weq_test(&e.natural, &g.weq());
            let iso = verdict.as_ref().map(|v| v.witness.is_none()).unwrap_or(false);
            out(
                format!("Ex through dimension {dim}: counts {}", counts(&e.ex.space)),
                json!({
                    "dim": dim,
                    "counts": e.ex.counts(),
                    "all_counts": all,
                    "homology_degrees": e.ex.homology_bound(),
                    "homology": prosimpl::homology::homology_truncated(&e.ex).iter().map(group_json).collect::<Vec<_>>(),
                    "natural_map_no_witness": iso,
                    "budgets": g.echo(Some(dim)),
                }),
            )
        }
        Command::CheckWeq { map } => {
            let f = load_map(&map)?;
            let v = weq_test(&f, &g.weq())?;
            out(format!("{:?}", v.status), serde_json::to_value(&v)?)
        }
        Command::Hocolim { diagram, fibrant, output } => {
            let dim = g.dim_or(2);
            let x = load_diagram(&diagram)?;
            let z = load_fibrant(&fibrant)?;
            let h = hocolim_capped(x, &z, dim, g.map_cap)?;
            write(&output, &io::sset_to_json(&h.complex.space))?;
            out(
                format!("hocolim over {} through dimension {dim}: counts {}", z.name(), counts(&h.complex.space)),
                json!({
                    "test_object": z.name(),
                    "dim": dim,
                    "counts": h.complex.counts(),
                    "homology": prosimpl::homology::homology_truncated(&h.complex).iter().map(group_json).collect::<Vec<_>>(),
                }),
            )
        }
        Command::SliceNerve { diagram, fibrant, output } => {
            let dim = g.dim_or(2);
            let x = load_diagram(&diagram)?;
            let z = load_fibrant(&fibrant)?;
            let top = x.objects.iter().filter_map(|o| o.dim()).max().unwrap_or(0);
            let zt = z.through(top)?;
            let cat = slice_category(&x, &zt.space, g.map_cap)?;
            let trunc = if cat.is_loop_free() { None } else { Some(dim) };
            let n = CategoryNerve::new(Arc::new(cat), trunc)?;
            write(&output, &io::sset_to_json(&n.nerve.space))?;
            // both models, compared through their homology
            let h = hocolim_capped(x, &z, dim, g.map_cap)?;
            let degrees = n.nerve.homology_bound().min(h.complex.homology_bound());
            let a = ChainComplex::of(&n.nerve.space).homology(degrees);
            let b = ChainComplex::of(&h.complex.space).homology(degrees);
            out(
                format!("slice nerve: counts {}; homology {} the hocolim below degree {degrees}", counts(&n.nerve.space), if a == b { "agrees with" } else { "differs from" }),
                json!({
                    "counts": n.nerve.counts(),
                    "cap": n.nerve.cap,
                    "comparison": {
                        "degrees": degrees,
                        "slice_nerve": a.iter().map(group_json).collect::<Vec<_>>(),
                        "hocolim": b.iter().map(group_json).collect::<Vec<_>>(),
                        "agree": a == b,
                    },
                }),
            )
        }
        Command::CheckProeq { promap, fibrant } => {
            let dim = g.dim_or(3);
            let (l, v) = open(&promap)?;
            let p = l.promap(&v)?;
            let zs = fibrant.iter().map(|f| load_fibrant(f)).collect::<Result<Vec<_>, _>>()?;
            let b = ProEqBudgets { dim, weq: g.weq() };
            let verdict = pro_equivalence_check_with(&p, &zs, &b, g.parallel)?;
            let summary = match &verdict.failed {
                Some(c) => format!("{:?} ({c})", verdict.status),
                None => format!("{:?}", verdict.status),
            };
            out(summary, serde_json::to_value(&verdict)?)
        }
        Command::RealizeLk { diagram, fibrant, complex, omega, output } => {
            let dim = g.dim_or(2);
            let x = load_diagram(&diagram)?;
            let z = load_fibrant(&fibrant)?;
            let h = hocolim_capped(x, &z, dim, g.map_cap)?;
            let (lk_, kv) = open(&complex)?;
            let k: SimplicialComplex = lk_.complex(&kv)?;
            let ks = Arc::new(k.to_sset());
            let (lo, ov) = open(&omega)?;
            let om = lo.smap(&ov, Some(&ks), Some(&h.complex.space))?;
            let data = functor_of_map(&om)?;
            let lk = realize_lk(&h, &data)?;
            write(&output, &io::sset_to_json(lk.space()))?;
            let round_trip = lk.expand(&h)?.same_as(&om);
            out(
                format!("L_K: counts {}", counts(lk.space())),
                json!({ "counts": lk.space().counts(), "f": io::smap_to_json(&lk.f, Value::Null, Value::Null)["on"], "round_trip": round_trip }),
            )
        }
        Command::CornerTest { promap, fibrant, n, boundary, simplex } => {
            let dim = g.dim_or(2);
            let (l, v) = open(&promap)?;
            let p = l.promap(&v)?;
            let z = load_fibrant(&fibrant)?;
            let ind = induced_hocolim_capped(&p, &z, dim, g.map_cap)?;
            let (lb, bv) = open(&boundary)?;
            let omega = lb.smap(&bv, Some(&LiftingProblem::boundary_source(n)), Some(&ind.source.complex.space))?;
            let (ls, sv) = open(&simplex)?;
            let dn = Arc::new(SimplicialComplex::simplex(n).to_sset());
            let b = ls.smap(&sv, Some(&dn), Some(&ind.target.complex.space))?;
            let lp = LiftingProblem::constant_homotopy(n, omega.clone(), &b, ind.map.clone())?;
            let t = corner_extension_test(&p, &ind, &CornerFrame::prism(n), &omega, &lp.hb, g.sdmax, g.node_cap)?;
            let summary = match t.outcome.k() {
                Some(k) => format!("success at k = {k}"),
                None => t.outcome.label().to_string(),
            };
            let mut r = t.to_json();
            r["budgets"] = g.echo(Some(dim));
            out(summary, r)
        }
        Command::RefineSolve { promap, fibrant, object, n, map } => {
            let (l, v) = open(&promap)?;
            let p = l.promap(&v)?;
            let z = load_fibrant(&fibrant)?;
            let i = p.x.index.object_index(&object).ok_or_else(|| Error::Validation(format!("unknown object {object}")))?;
            let dom = RefinementDomain::new(&p, i, n)?;
            let Some(map) = map else {
                return out(format!("domain: counts {}", counts(&dom.space)), json!({ "domain": io::sset_to_json(&dom.space) }));
            };
            let top = p.y.objects.iter().filter_map(|o| o.dim()).max().unwrap_or(0);
            let zt = z.through(n + top)?;
            let (lm, mv) = open(&map)?;
            let f = lm.smap(&mv, Some(&dom.space), Some(&zt.space))?;
            let problem = RefinementProblem::new(&p, i, n, f)?;
            let (outcome, transcript) = filtered_refinement_solve(&p, &problem, &zt, g.node_cap)?;
            let c = &p.x.index;
            let (summary, alpha) = match &outcome {
                RefinementOutcome::Solved { alpha, .. } => {
                    (format!("solved along {}", c.morphism(*alpha).id), json!(c.morphism(*alpha).id))
                }
                other => (other.label().to_string(), Value::Null),
            };
            out(summary, json!({ "status": outcome.label(), "alpha": alpha, "transcript": transcript, "budgets": g.echo(None) }))
        }
        Command::ExportDot { category, face_poset: fp } => {
            let text = match (category, fp) {
                (Some(c), _) => {
                    let (l, v) = open(&c)?;
                    let cat: Arc<FinCategory> = l.category(&v)?;
                    io::category_to_dot(&cat, "category")
                }
                (None, Some(x)) => io::poset_to_dot(&face_poset(&*load_sset(&x)?).poset, "face_poset"),
                (None, None) => unreachable!("clap requires one input"),
            };
            print!("{text}");
            Ok(Outcome { summary: String::new(), result: Value::Null })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    let name = matches.subcommand_name().unwrap_or_default().to_string();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    let g = cli.global;
    if let Some(cap) = g.max_simplices {
        // read back by every constructor through the budget module
        std::env::set_var("PROSIMPL_MAX_SIMPLICES", cap.to_string());
    }
    let started = std::time::Instant::now();
    let dot = matches!(cli.command, Command::ExportDot { .. });
    let result = run(cli.command, &g);
    let code = match result {
        Ok(o) => {
            if !dot {
                let record = json!({ "command": name, "status": "ok", "summary": o.summary, "result": o.result });
                print!("{}", io::to_text(&record));
            }
            0
        }
        Err(e) => {
            let code = exit_code(&e);
            let record = json!({ "command": name, "status": "error", "code": code, "error": e.to_string() });
            print!("{}", io::to_text(&record));
            eprintln!("error: {e}");
            code
        }
    };
    if g.meta {
        eprintln!("{}", json!({ "elapsed_ms": started.elapsed().as_millis() as u64, "unix_time": unix_time() }));
    }
    ExitCode::from(code)
}

fn unix_time() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}
