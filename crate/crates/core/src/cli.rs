//! Command-line front end. Tables go out as TSV, verdicts and certificates as
//! JSON; `--format` overrides either. Exit codes: 0 done, 1 a check failed,
//! 2 usage or configuration error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Config, ModuleSpec};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hwt::{growth_probe, offsets, stabilized_rank, GrowthCase, HwtSpec, TensorTop};
use crate::lattice::GroupElem;
use crate::lmod::wedge_module;
use crate::spanprobe::{
    check_intertwiner, fingerprint, iso_psi_rank1, iso_shift, separation, simplicity_report, GammaK, TildeGamma,
    Whole, DEFAULT_CAP,
};
use crate::suite::run_suite;
use crate::tensor::TensorVec;
use crate::witt::WittElem;
use crate::worked;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "genwitt", version, about = "Exact computations with generalized Witt algebras and their weight modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; tables default to tsv, verdicts to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Fiber box radius; for `verma`, the first partition/raising window.
    #[arg(long, global = true)]
    pub window: Option<i64>,

    /// Operator box radius.
    #[arg(long, global = true)]
    pub opwindow: Option<i64>,

    /// Largest degree for `verma`, largest `s` for `growth`.
    #[arg(long, global = true)]
    pub depth: Option<i64>,

    /// Replaces the config module: `wedge:K`, `vc:C` or `adjoint`.
    #[arg(long, global = true)]
    pub module: Option<String>,

    /// Replaces the config sigma, as comma-separated scalars.
    #[arg(long, global = true)]
    pub sigma: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Runs the identity suite for the datum.
    Check {
        config: PathBuf,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// Brackets two elements given as `t^(a)[d] + ...`.
    Bracket { config: PathBuf, x: String, y: String },
    /// Applies an element to the basis vector `t^b ⊗ v_i`.
    Act {
        config: PathBuf,
        x: String,
        point: String,
        #[arg(default_value_t = 0)]
        index: usize,
    },
    /// Fiber dimensions of the Koszul images and kernels over the box.
    Fiber { config: PathBuf },
    /// Ranks of the Koszul maps over the box, with `π∘π = 0` checked.
    Pi {
        config: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Simplicity verdict with certificate.
    Simplicity { config: PathBuf },
    /// Intertwiner checks for the shift and ψ, and separation certificates.
    Iso {
        config: PathBuf,
        #[arg(long)]
        shift: Option<String>,
        #[arg(long, default_value_t = 300)]
        instances: usize,
    },
    /// Per-fiber dimensions and support shape of the module and its Koszul pieces.
    Fingerprint { config: PathBuf },
    /// Weight multiplicity lower bounds for the highest-weight-type quotient.
    Verma {
        config: PathBuf,
        #[arg(long)]
        offset: Option<String>,
    },
    /// Rank of the growth vectors from the infinite-multiplicity argument.
    Growth,
    /// Bundled worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List,
    Run { name: String },
}

/// Output of one command.
enum Output {
    Table { header: Vec<String>, rows: Vec<Vec<String>> },
    Doc(Value),
    Lines(Vec<Vec<String>>),
}

impl Output {
    fn table(header: &[&str], rows: Vec<Vec<String>>) -> Output {
        Output::Table { header: header.iter().map(|s| s.to_string()).collect(), rows }
    }

    fn doc(v: &impl Serialize) -> Output {
        Output::Doc(serde_json::to_value(v).expect("serializable"))
    }

    fn render(&self, format: Option<Format>) -> String {
        let mut out = String::new();
        match (self, format) {
            (Output::Table { header, rows }, None | Some(Format::Tsv)) => {
                out.push_str(&header.join("\t"));
                out.push('\n');
                for r in rows {
                    out.push_str(&r.join("\t"));
                    out.push('\n');
                }
            }
            (Output::Table { header, rows }, Some(Format::Json)) => {
                let objs: Vec<Value> = rows
                    .iter()
                    .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|x| json!(x))).collect()))
                    .collect();
                out = serde_json::to_string_pretty(&objs).expect("json") + "\n";
            }
            (Output::Doc(v), None | Some(Format::Json)) => out = serde_json::to_string_pretty(v).expect("json") + "\n",
            (Output::Doc(v), Some(Format::Tsv)) => {
                let mut lines = Vec::new();
                flatten("", v, &mut lines);
                for (k, x) in lines {
                    out.push_str(&format!("{k}\t{x}\n"));
                }
            }
            (Output::Lines(rows), Some(Format::Json)) => out = serde_json::to_string_pretty(rows).expect("json") + "\n",
            (Output::Lines(rows), _) => {
                for r in rows {
                    out.push_str(&r.join("\t"));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), "-".into())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Parses arguments, runs, writes the report, and returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    run(&cli, out, err)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Error::config("--jobs", e.to_string())),
        },
        None => dispatch(cli),
    };
    match result {
        Ok((output, passed)) => {
            let _ = out.write_all(output.render(cli.format).as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(cli: &Cli, path: &PathBuf) -> Result<Config> {
    let mut cfg = Config::load(path)?;
    if let Some(m) = &cli.module {
        cfg.module = ModuleSpec::parse_flag(m, cfg.m)?;
    }
    if let Some(s) = &cli.sigma {
        let sigma: Vec<Scalar> =
            s.split(',').map(|x| Scalar::parse(x.trim(), cfg.m)).collect::<Result<_>>().map_err(|e| Error::config("--sigma", e.to_string()))?;
        if sigma.len() != cfg.r() {
            return Err(Error::config("--sigma", format!("expected {} entries, got {}", cfg.r(), sigma.len())));
        }
        cfg.sigma = sigma;
    }
    if let Some(w) = cli.window {
        cfg.windows.box_radius = w;
    }
    if let Some(w) = cli.opwindow {
        cfg.windows.opbox = w;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn point(text: &str, n: usize, flag: &str) -> Result<GroupElem> {
    let p = GroupElem::parse(text).map_err(|e| Error::config(flag, e.to_string()))?;
    if p.len() != n {
        return Err(Error::config(flag, format!("expected {n} coordinates")));
    }
    Ok(p)
}

fn dispatch(cli: &Cli) -> Result<(Output, bool)> {
    match &cli.command {
        Command::Check { config, instances } => {
            let cfg = load(cli, config)?;
            let desc = cfg.desc()?;
            let rows = run_suite(&desc, &cfg.window()?, *instances, cfg.seed);
            let passed = rows.iter().all(|r| r.passed());
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.instances.to_string(),
                        r.failures.to_string(),
                        if r.passed() { "pass" } else { "fail" }.into(),
                        r.first_failure.clone().unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            Ok((Output::table(&["check", "instances", "failures", "status", "first_failure"], table), passed))
        }
        Command::Bracket { config, x, y } => {
            let cfg = load(cli, config)?;
            let (x, y) = (WittElem::parse(x, cfg.m)?, WittElem::parse(y, cfg.m)?);
            for e in [&x, &y] {
                if let Some((a, d)) = e.terms().find(|(a, d)| a.len() != cfg.n || d.len() != cfg.r()) {
                    return Err(Error::Shape(format!("term t^{a}{d} does not fit n={}, r={}", cfg.n, cfg.r())));
                }
            }
            let z = x.bracket(&y, &cfg.pairing);
            Ok((Output::table(&["x", "y", "bracket"], vec![vec![x.to_string(), y.to_string(), z.to_string()]]), true))
        }
        Command::Act { config, x, point: b, index } => {
            let cfg = load(cli, config)?;
            let desc = cfg.desc()?;
            let x = WittElem::parse(x, cfg.m)?;
            let b = point(b, cfg.n, "point")?;
            if *index >= desc.dim_v() {
                return Err(Error::Range(format!("index {index} but dim V = {}", desc.dim_v())));
            }
            let v = desc.act_witt(&x, &TensorVec::basis(b, *index));
            let rows = v.terms().map(|((p, i), c)| vec![p.to_string(), i.to_string(), c.to_string()]).collect();
            Ok((Output::table(&["point", "index", "coefficient"], rows), true))
        }
        Command::Fiber { config } => {
            let cfg = load(cli, config)?;
            let desc = cfg.desc()?;
            if !desc.sigma_kills_ker2() {
                return Err(Error::pre("the Koszul chain needs sigma to vanish on Ker2"));
            }
            let rbar = desc.rbar();
            let descs = (0..=rbar).map(|k| desc.with_module(wedge_module(rbar, k)?)).collect::<Result<Vec<_>>>()?;
            let mut header = vec!["point".to_string()];
            header.extend((1..=rbar).map(|k| format!("gamma{k}")));
            header.extend((0..=rbar).map(|k| format!("kernel{k}")));
            let mut rows = Vec::new();
            for b in cfg.window()?.fibers(cfg.n) {
                let mut row = vec![b.to_string()];
                for k in 1..=rbar {
                    row.push(descs[k].gamma_k_fiber(k, &b)?.len().to_string());
                }
                for k in 0..=rbar {
                    row.push(descs[k].tilde_gamma_k_fiber(k, &b)?.len().to_string());
                }
                rows.push(row);
            }
            Ok((Output::Table { header, rows }, true))
        }
        Command::Pi { config, point: at } => {
            let cfg = load(cli, config)?;
            let desc = cfg.desc()?;
            if !desc.sigma_kills_ker2() {
                return Err(Error::pre("the Koszul chain needs sigma to vanish on Ker2"));
            }
            let points = match at {
                Some(t) => vec![point(t, cfg.n, "--point")?],
                None => cfg.window()?.fibers(cfg.n),
            };
            let rbar = desc.rbar();
            let mut rows = Vec::new();
            let mut passed = true;
            for b in points {
                for k in 0..rbar {
                    let m = desc.pi_matrix(k, &b);
                    let chain = if k + 1 < rbar { desc.pi_matrix(k + 1, &b).mul(&m).is_zero() } else { true };
                    passed &= chain;
                    rows.push(vec![
                        b.to_string(),
                        k.to_string(),
                        format!("{}x{}", m.rows(), m.cols()),
                        m.rank().to_string(),
                        if chain { "ok" } else { "nonzero" }.into(),
                    ]);
                }
            }
            Ok((Output::table(&["point", "k", "shape", "rank", "pi_next_after_pi"], rows), passed))
        }
        Command::Simplicity { config } => {
            let cfg = load(cli, config)?;
            let rep = simplicity_report(&cfg.desc()?, &cfg.window()?, cfg.seed, DEFAULT_CAP);
            let ok = rep.agrees();
            Ok((Output::doc(&rep), ok))
        }
        Command::Iso { config, shift, instances } => {
            let cfg = load(cli, config)?;
            let desc = cfg.desc()?;
            let w = cfg.window()?;
            let a = match shift {
                Some(t) => point(t, cfg.n, "--shift")?,
                None => GroupElem::unit(cfg.n, 0),
            };
            let (tau, target) = iso_shift(&desc, &a)?;
            let shift_rep = check_intertwiner(&desc, &target, &tau, &w, *instances, cfg.seed);
            let mut passed = shift_rep.passed();
            let rbar = desc.rbar();
            let psi = if rbar == 1 {
                match desc.with_module(wedge_module(1, 0)?).and_then(|d| iso_psi_rank1(&d).map(|m| (d, m))) {
                    Ok((src, (psi, dst))) => {
                        let r = check_intertwiner(&src, &dst, &psi, &w, *instances, cfg.seed + 1);
                        passed &= r.passed();
                        json!({ "report": r })
                    }
                    Err(e) => json!({ "skipped": e.to_string() }),
                }
            } else {
                json!({ "skipped": format!("rbar = {rbar}") })
            };
            let mut seps = Vec::new();
            if desc.sigma_kills_ker2() {
                for i in 1..=rbar {
                    for j in i + 1..=rbar {
                        match separation(&desc, i, j, &w)? {
                            Some(s) => seps.push(serde_json::to_value(&s).expect("json")),
                            None => {
                                passed = false;
                                seps.push(json!({ "i": i, "j": j, "found": false }));
                            }
                        }
                    }
                }
            }
            let doc = json!({
                "shift": { "a": a.to_string(), "report": shift_rep },
                "psi": psi,
                "separations": seps,
            });
            Ok((Output::Doc(doc), passed))
        }
        Command::Fingerprint { config } => {
            let cfg = load(cli, config)?;
            let desc = cfg.desc()?;
            let w = cfg.window()?;
            let mut doc = vec![json!({ "name": "whole", "fingerprint": fingerprint(&desc, &Whole(desc.dim_v()), &w) })];
            if desc.sigma_kills_ker2() {
                let rbar = desc.rbar();
                for k in 0..=rbar {
                    let d = desc.with_module(wedge_module(rbar, k)?)?;
                    if k >= 1 {
                        let g = GammaK { desc: &d, k };
                        doc.push(json!({ "name": format!("gamma{k}"), "fingerprint": fingerprint(&d, &g, &w) }));
                    }
                    let t = TildeGamma { desc: &d, k };
                    doc.push(json!({ "name": format!("kernel{k}"), "fingerprint": fingerprint(&d, &t, &w) }));
                }
            }
            Ok((Output::Doc(Value::Array(doc)), true))
        }
        Command::Verma { config, offset } => {
            let mut cfg = Config::load(config)?;
            if let Some(m) = &cli.module {
                cfg.module = ModuleSpec::parse_flag(m, cfg.m)?;
            }
            let desc = cfg.desc()?;
            let split = cfg.splitting()?;
            let spec = HwtSpec::new(cfg.pairing.clone(), split.clone(), Box::new(TensorTop::new(desc)))?;
            let depth = cli.depth.unwrap_or(3);
            let w0 = cli.window.unwrap_or(cfg.windows.partwin).max(1);
            let alphas = match offset {
                Some(t) => vec![point(t, cfg.n, "--offset")?],
                None => offsets(&split, cfg.windows.box_radius),
            };
            let mut rows = Vec::new();
            let mut passed = true;
            for k in 1..=depth {
                for alpha in &alphas {
                    let cell = stabilized_rank(&spec, k, alpha, w0, w0 + 2);
                    passed &= cell.stable;
                    let ranks = cell.ranks.iter().map(|(w, r)| format!("{w}:{r}")).collect::<Vec<_>>().join(",");
                    rows.push(vec![
                        k.to_string(),
                        cell.offset.clone(),
                        ranks,
                        cell.rank().to_string(),
                        if cell.stable { "stable" } else { "unstable" }.into(),
                    ]);
                }
            }
            Ok((Output::table(&["k", "offset", "ranks", "rank", "mark"], rows), passed))
        }
        Command::Growth => {
            let smax = cli.depth.unwrap_or(4);
            if smax < 1 {
                return Err(Error::config("--depth", "must be at least 1"));
            }
            let mut rows = Vec::new();
            let mut passed = true;
            for s in 1..=smax as usize {
                for case in [GrowthCase::One, GrowthCase::Other] {
                    let r = growth_probe(s, case)?;
                    let ok = r.exact && r.rank == s;
                    passed &= ok;
                    rows.push(vec![
                        s.to_string(),
                        serde_json::to_value(case).expect("json").as_str().unwrap_or("?").to_string(),
                        r.c.clone(),
                        r.expected_diagonal.clone(),
                        r.rank.to_string(),
                        if ok { "pass" } else { "fail" }.into(),
                    ]);
                }
            }
            Ok((Output::table(&["s", "case", "c", "diagonal", "rank", "status"], rows), passed))
        }
        Command::Examples { action } => match action {
            ExamplesAction::List => Ok((Output::Lines(worked::NAMES.iter().map(|n| vec![n.to_string()]).collect()), true)),
            ExamplesAction::Run { name } => {
                let rep = worked::run(name)?;
                Ok((Output::Lines(rep.rows), rep.passed))
            }
        },
    }
}
