//! Batch runner: argument parsing, validation, dispatch and JSON reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use schur_core::cohom::{solve_coboundary, MAX_GROUP_ORDER};
use schur_core::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
use schur_core::grouporacle::{compare_ring_kinds, orbit_census, run_oracle, Congruence, OracleOptions, RingKind};
use schur_core::matalg::{format_element, ComplementHint, Matrix, Poly, RegularMatrix, SymplecticSpace, UnitGroup};
use schur_core::schurmult::{conjecture_sweep, sweep_tables, RhoSelector, SplitWitness, SweepOptions};
use schur_core::weilrep::{QuadraticCase, WeilCocycle};
use schur_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CONFIG: i32 = 64;

#[derive(Parser, Debug, Clone)]
#[command(name = "schur", version, about = "Schur-multiplier cocycles of regular matrices over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide the class of c_{β̄,ρ}·c_T for every selected ρ.
    CheckConjecture {
        #[command(flatten)]
        beta: BetaArgs,
        #[command(flatten)]
        common: Common,
        /// Attach a coboundary witness to every trivial class.
        #[arg(long)]
        witnesses: bool,
    },
    /// Run the GL_n(O_3) oracle and compare [c_U] with [c_{β̄,ρ}·c_T].
    OracleCompare {
        #[command(flatten)]
        beta: BetaArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a coboundary witness δ.
    Witness {
        #[command(flatten)]
        beta: BetaArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit census of X(ψ_β) for β̄ in Jordan form.
    Orbits {
        #[command(flatten)]
        beta: BetaArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Weil constants γ(a) of the canonical character.
    WeilTable {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct BetaArgs {
    /// Jordan blocks as size:eigenvalue, comma separated (e.g. 2:0 or 1:0,1:1).
    #[arg(long, conflicts_with_all = ["charpoly", "matrix"])]
    pub jordan: Option<String>,
    /// Companion matrix of a monic polynomial (e.g. "t^2+2").
    #[arg(long, conflicts_with = "matrix")]
    pub charpoly: Option<String>,
    /// File with one matrix row per line.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// all | diag | comma separated coordinates.
    #[arg(long, default_value = "all")]
    pub rho: String,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Field order.
    #[arg(long)]
    pub q: u64,
    /// Local ring for the oracle.
    #[arg(long, value_enum, default_value_t = RingArg::Both)]
    pub ring: RingArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print a flattened view of the report instead of JSON.
    #[arg(long)]
    pub pretty: bool,
    /// Leave wall-clock timings out, making the report byte-reproducible.
    #[arg(long)]
    pub no_timings: bool,
    /// Worker threads; SCHUR_THREADS overrides.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RingArg {
    Unequal,
    Equal,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSpec {
    Jordan(Vec<(usize, String)>),
    Charpoly(String),
    Matrix(Vec<Vec<String>>),
    /// The quadratic normal form [[0, α], [1, 0]] when nothing is given.
    Default,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoSpec {
    All,
    Diagonal,
    Single(Vec<u32>),
}

/// A validated run: everything a command needs, fixed by (config, seed).
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub q: u64,
    pub n: usize,
    pub beta: BetaSpec,
    pub beta_descriptor: String,
    pub rho: RhoSpec,
    pub ring: RingArg,
    pub seed: u64,
    pub witnesses: bool,
    pub threads: Option<usize>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub pretty: bool,
    #[serde(skip)]
    pub timings: bool,
}

#[derive(Debug, Clone)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn cfg_err(e: impl std::fmt::Display) -> ConfigError {
    ConfigError(e.to_string())
}

fn parse_jordan(s: &str) -> Result<Vec<(usize, String)>, ConfigError> {
    s.split(',')
        .map(|part| {
            let (m, a) = part.trim().split_once(':').ok_or_else(|| cfg_err(format!("block '{part}' is not size:eigenvalue")))?;
            let m: usize = m.trim().parse().map_err(|_| cfg_err(format!("bad block size '{m}'")))?;
            Ok((m, a.trim().to_string()))
        })
        .collect()
}

fn parse_rho(s: &str) -> Result<RhoSpec, ConfigError> {
    match s.trim() {
        "all" => Ok(RhoSpec::All),
        "diag" | "diagonal" => Ok(RhoSpec::Diagonal),
        other => other
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| cfg_err(format!("bad ρ coordinate '{c}'"))))
            .collect::<Result<Vec<_>, _>>()
            .map(RhoSpec::Single),
    }
}

fn read_matrix(path: &PathBuf) -> Result<Vec<Vec<String>>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| cfg_err(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(String::from).collect())
        .collect())
}

pub fn build_beta(k: &FiniteField, spec: &BetaSpec) -> schur_core::Result<RegularMatrix> {
    match spec {
        BetaSpec::Jordan(blocks) => {
            let b = blocks.iter().map(|(m, a)| Ok((k.parse(a)?, *m))).collect::<schur_core::Result<Vec<(Fq, usize)>>>()?;
            RegularMatrix::jordan(k, &b)
        }
        BetaSpec::Charpoly(p) => RegularMatrix::companion(k, &Poly::parse(p, k)?),
        BetaSpec::Matrix(rows) => {
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch("matrix file is not square".into()));
            }
            let data = rows.iter().flatten().map(|t| k.parse(t)).collect::<schur_core::Result<Vec<_>>>()?;
            RegularMatrix::new(k, Matrix::from_vec(n, n, data)?)
        }
        BetaSpec::Default => QuadraticCase::standard(k),
    }
}

/// Parses and validates; no computation beyond building β̄.
pub fn configure(cli: &Cli) -> Result<(RunConfig, Option<(FiniteField, RegularMatrix)>), ConfigError> {
    let (name, beta_args, common, witnesses) = match &cli.command {
        Command::CheckConjecture { beta, common, witnesses } => ("check-conjecture", Some(beta), common, *witnesses),
        Command::OracleCompare { beta, common } => ("oracle-compare", Some(beta), common, false),
        Command::Witness { beta, common } => ("witness", Some(beta), common, false),
        Command::Orbits { beta, common } => ("orbits", Some(beta), common, false),
        Command::WeilTable { common } => ("weil-table", None, common, false),
    };
    let k = FiniteField::with_order(common.q).map_err(cfg_err)?;
    if k.p() == 2 {
        return Err(cfg_err(Error::OddCharRequired));
    }
    let threads = std::env::var("SCHUR_THREADS").ok().and_then(|s| s.parse().ok()).or(common.threads);
    let mut cfg = RunConfig {
        command: name.to_string(),
        q: common.q,
        n: 0,
        beta: BetaSpec::Default,
        beta_descriptor: String::new(),
        rho: RhoSpec::All,
        ring: common.ring,
        seed: common.seed,
        witnesses,
        threads,
        output: common.output.clone(),
        pretty: common.pretty,
        timings: !common.no_timings,
    };
    let Some(b) = beta_args else {
        return Ok((cfg, None));
    };
    cfg.beta = if let Some(j) = &b.jordan {
        BetaSpec::Jordan(parse_jordan(j)?)
    } else if let Some(p) = &b.charpoly {
        BetaSpec::Charpoly(p.clone())
    } else if let Some(path) = &b.matrix {
        BetaSpec::Matrix(read_matrix(path)?)
    } else {
        BetaSpec::Default
    };
    cfg.rho = parse_rho(&b.rho)?;
    let beta = build_beta(&k, &cfg.beta).map_err(cfg_err)?;
    cfg.n = beta.n();
    cfg.beta_descriptor = beta.descriptor().to_string();
    if let RhoSpec::Single(a) = &cfg.rho {
        if a.len() > beta.n() {
            return Err(cfg_err(format!("ρ has {} coordinates, n = {}", a.len(), beta.n())));
        }
        if a.iter().any(|&x| x as u64 >= common.q) {
            return Err(cfg_err("ρ coordinate out of range"));
        }
    }
    match name {
        "oracle-compare" | "orbits" => {
            if k.f() != 1 {
                return Err(cfg_err("the oracle needs a prime field"));
            }
            if beta.n() > 3 {
                return Err(cfg_err("the oracle supports n ≤ 3"));
            }
            if name == "orbits" && beta.jordan_data().is_none() {
                return Err(cfg_err(Error::NotSplit));
            }
            if cfg.rho == RhoSpec::Diagonal && beta.jordan_data().is_none() {
                return Err(cfg_err(Error::NotSplit));
            }
        }
        "check-conjecture" => {
            if cfg.rho == RhoSpec::Diagonal && beta.jordan_data().is_none() {
                return Err(cfg_err(Error::NotSplit));
            }
        }
        _ => {}
    }
    Ok((cfg, Some((k, beta))))
}

/// Exit code plus report body.
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn padded(a: &[u32], n: usize) -> Vec<Fq> {
    let mut v: Vec<Fq> = a.iter().map(|&x| Fq(x)).collect();
    v.resize(n, Fq::ZERO);
    v
}

/// μ_4 values get their usual names; everything else is ζ_m^e.
pub fn format_root(r: &RootOfUnity) -> String {
    let r = r.reduced();
    match (r.modulus(), r.exponent()) {
        (1, _) => "1".into(),
        (2, 1) => "-1".into(),
        (4, 1) => "i".into(),
        (4, 3) => "-i".into(),
        (m, e) => format!("ζ_{m}^{e}"),
    }
}

fn check_conjecture(cfg: &RunConfig, k: &FiniteField, beta: &RegularMatrix) -> schur_core::Result<Outcome> {
    let chi = AdditiveCharacter::canonical(k);
    let rho = match &cfg.rho {
        RhoSpec::All => RhoSelector::All,
        RhoSpec::Diagonal => RhoSelector::Diagonal,
        RhoSpec::Single(a) => RhoSelector::Single(padded(a, beta.n()).iter().map(|x| x.0).collect()),
    };
    let r = conjecture_sweep(beta, &chi, &SweepOptions { rho, witnesses: cfg.witnesses, ..Default::default() })?;
    let code = if r.all_trivial() { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
    Ok(Outcome { code, report: to_value(&r) })
}

fn oracle_functionals(cfg: &RunConfig, k: &FiniteField, beta: &RegularMatrix) -> Option<Vec<Vec<Fq>>> {
    match &cfg.rho {
        RhoSpec::All => None,
        RhoSpec::Single(a) => Some(vec![padded(a, beta.n())]),
        RhoSpec::Diagonal => {
            // restrictions of ψ_A, A diagonal: ℓ_j = tr(β̄^j A)
            let n = beta.n();
            let q = k.q() as usize;
            Some(
                (0..q.pow(n as u32))
                    .map(|mut i| {
                        let a = Matrix::from_fn(n, n, |r, c| {
                            if r == c {
                                let x = Fq((i % q) as u32);
                                i /= q;
                                x
                            } else {
                                Fq::ZERO
                            }
                        });
                        beta.centralizer_basis().iter().map(|b| b.mul(&a, k).trace(k)).collect()
                    })
                    .collect(),
            )
        }
    }
}

fn oracle_compare(cfg: &RunConfig, k: &FiniteField, beta: &RegularMatrix) -> schur_core::Result<Outcome> {
    let opts = OracleOptions { rhos: oracle_functionals(cfg, k, beta), seed: cfg.seed, timings: cfg.timings, ..Default::default() };
    let (ok, matched, report) = match cfg.ring {
        RingArg::Both => {
            let c = compare_ring_kinds(beta, &opts)?;
            let checks = c.unequal.checks_passed && c.equal.checks_passed;
            let matched = c.unequal.matches_algebraic_class && c.equal.matches_algebraic_class && c.classes_agree && c.census_agree;
            (checks, matched, to_value(&c))
        }
        RingArg::Unequal | RingArg::Equal => {
            let kind = if cfg.ring == RingArg::Unequal { RingKind::Unequal } else { RingKind::Equal };
            let r = run_oracle(kind, beta, &opts)?;
            (r.checks_passed, r.matches_algebraic_class, to_value(&r))
        }
    };
    let code = if !matched {
        EXIT_MISMATCH
    } else if !ok {
        EXIT_ERROR
    } else {
        EXIT_OK
    };
    Ok(Outcome { code, report })
}

fn witness(cfg: &RunConfig, k: &FiniteField, beta: &RegularMatrix) -> schur_core::Result<Outcome> {
    let chi = AdditiveCharacter::canonical(k);
    let a = match &cfg.rho {
        RhoSpec::Single(a) => padded(a, beta.n()),
        RhoSpec::All => vec![Fq::ZERO; beta.n()],
        RhoSpec::Diagonal => return Err(Error::WrongShape("witness needs a single ρ".into())),
    };
    let units = UnitGroup::new(beta.algebra(), MAX_GROUP_ORDER)?;
    let alg = beta.algebra();
    let single_block = beta.jordan_data().is_some_and(|j| j.len() == 1) && beta.n() >= 2;
    if single_block {
        // closed-form δ, ρ given by its coefficients on powers of N = β̄ − a
        if let Ok(w) = SplitWitness::new(beta, &a, &chi) {
            let check = if units.order() <= 4096 { w.check_exhaustive()? } else { w.check_sampled(100_000, cfg.seed)? };
            let delta: Vec<Value> = units
                .elements()
                .iter()
                .map(|e| Ok(json!({"eps": format_element(alg, e), "delta": w.delta(e)?})))
                .collect::<schur_core::Result<_>>()?;
            let code = if check.passed() { EXIT_OK } else { EXIT_ERROR };
            return Ok(Outcome {
                code,
                report: json!({"method": "split_closed_form", "rho_coefficients": a.iter().map(|x| x.0).collect::<Vec<_>>(), "check": check, "delta": delta}),
            });
        }
    }
    if let Ok(qc) = QuadraticCase::new(beta, &chi) {
        let space = SymplecticSpace::new(beta, ComplementHint::Greedy)?;
        let c_t = WeilCocycle::canonical(&space, &chi)?.table(&units)?;
        let els = units.elements();
        let mut mismatches = 0;
        for (i, e) in els.iter().enumerate() {
            for (j, f) in els.iter().enumerate() {
                let d = qc.witness(f)?.mul(&qc.witness(e)?).div(&qc.witness(&alg.mul(e, f))?);
                mismatches += (d != c_t.root(i, j)) as usize;
            }
        }
        let delta: Vec<Value> =
            els.iter().map(|e| Ok(json!({"eps": format_element(alg, e), "delta": qc.witness(e)?}))).collect::<schur_core::Result<_>>()?;
        let code = if mismatches == 0 { EXIT_OK } else { EXIT_ERROR };
        return Ok(Outcome {
            code,
            report: json!({"method": "quadratic_closed_form", "cocycle": "c_T", "pairs": els.len() * els.len(), "mismatches": mismatches, "delta": delta}),
        });
    }
    let opts = SweepOptions { rho: RhoSelector::Single(a.iter().map(|x| x.0).collect()), ..Default::default() };
    let t = sweep_tables(beta, &chi, &opts)?;
    let (_, c) = &t.products[0];
    if !c.is_trivial_class() {
        return Ok(Outcome { code: EXIT_COUNTEREXAMPLE, report: json!({"method": "solver", "trivial": false}) });
    }
    let w = solve_coboundary(c)?;
    let code = if w.verifies(c) { EXIT_OK } else { EXIT_ERROR };
    Ok(Outcome { code, report: json!({"method": "solver", "trivial": true, "witness": w}) })
}

fn orbits(cfg: &RunConfig, beta: &RegularMatrix) -> schur_core::Result<Outcome> {
    let units = UnitGroup::new(beta.algebra(), MAX_GROUP_ORDER)?;
    let kinds = match cfg.ring {
        RingArg::Both => vec![RingKind::Unequal, RingKind::Equal],
        RingArg::Unequal => vec![RingKind::Unequal],
        RingArg::Equal => vec![RingKind::Equal],
    };
    let mut censuses = Vec::new();
    for kind in kinds {
        let cong = Congruence::new(kind, beta)?;
        censuses.push((kind, orbit_census(&cong, &units, cfg.seed)?));
    }
    let first = &censuses[0].1;
    let agree = censuses.iter().all(|(_, c)| c == first);
    let ok = agree && censuses.iter().all(|(_, c)| c.trace_criterion_holds && c.restriction_criterion_holds && c.orbit_sizes_uniform);
    let report = json!({
        "X": first.x_count,
        "orbits": first.orbit_count,
        "X0": first.x0_count,
        "orbits_meeting_X0": first.orbits_meeting_x0,
        "ring_kinds_agree": agree,
        "census": censuses.iter().map(|(k, c)| json!({"ring_kind": k, "census": c})).collect::<Vec<_>>(),
    });
    Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_ERROR }, report })
}

fn weil_table(k: &FiniteField) -> schur_core::Result<Outcome> {
    let chi = AdditiveCharacter::canonical(k);
    let rows: Vec<Value> = k
        .units()
        .map(|a| {
            let g = chi.weil_constant_scalar(a)?;
            Ok(json!({"a": k.format(a), "square": k.is_square(a), "gamma": g, "value": format_root(&g)}))
        })
        .collect::<schur_core::Result<_>>()?;
    let g1 = chi.gamma_one();
    let report = json!({
        "p": k.p(),
        "f": k.f(),
        "gamma_one": g1,
        "gamma_one_value": format_root(&g1),
        "gauss_sum_coordinates": chi.gauss_sum(),
        "table": rows,
    });
    Ok(Outcome { code: EXIT_OK, report })
}

/// Runs a validated config; core errors become exit 1 (or 64 for input faults).
pub fn execute(cfg: &RunConfig, inputs: Option<&(FiniteField, RegularMatrix)>) -> Outcome {
    let start = Instant::now();
    let res = match (cfg.command.as_str(), inputs) {
        ("weil-table", _) => FiniteField::with_order(cfg.q).and_then(|k| weil_table(&k)),
        ("check-conjecture", Some((k, b))) => check_conjecture(cfg, k, b),
        ("oracle-compare", Some((k, b))) => oracle_compare(cfg, k, b),
        ("witness", Some((k, b))) => witness(cfg, k, b),
        ("orbits", Some((_, b))) => orbits(cfg, b),
        _ => Err(Error::WrongShape("missing β̄".into())),
    };
    let (code, report) = match res {
        Ok(o) => (o.code, o.report),
        Err(e) => {
            let code = match e {
                Error::OddCharRequired | Error::Parse(_) | Error::DuplicateEigenvalue(_) | Error::NotRegular => EXIT_CONFIG,
                _ => EXIT_ERROR,
            };
            (code, json!({"error": e.to_string()}))
        }
    };
    Outcome { code, report: envelope(cfg, code, report, start) }
}

fn envelope(cfg: &RunConfig, code: i32, report: Value, start: Instant) -> Value {
    let mut out = json!({
        "config": cfg,
        "versions": {"schur-core": schur_core::VERSION, "schur-cli": env!("CARGO_PKG_VERSION")},
        "exit_code": code,
        "report": report,
    });
    if cfg.timings {
        let mut t = BTreeMap::new();
        t.insert("wall_seconds", start.elapsed().as_secs_f64());
        out["timings"] = to_value(&t);
    }
    out
}

/// Config errors in the same envelope shape.
pub fn config_error_report(e: &ConfigError) -> Value {
    json!({"versions": {"schur-core": schur_core::VERSION, "schur-cli": env!("CARGO_PKG_VERSION")}, "exit_code": EXIT_CONFIG, "error": e.0})
}

/// `key.path = value` lines; long arrays are summarized.
pub fn render_pretty(v: &Value) -> String {
    fn walk(v: &Value, path: &str, out: &mut Vec<String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x, &p, out);
                }
            }
            Value::Array(a) if a.len() > 12 => out.push(format!("{path} = [{} items]", a.len())),
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                out.push(format!("{path} = [{}]", items.join(", ")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, &format!("{path}[{i}]"), out);
                }
            }
            other => out.push(format!("{path} = {other}")),
        }
    }
    let mut lines = Vec::new();
    walk(v, "", &mut lines);
    lines.join("\n")
}

/// Full run from argv; returns the exit code and the text written.
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let (cfg, inputs) = match configure(&cli) {
        Ok(x) => x,
        Err(e) => return (EXIT_CONFIG, serde_json::to_string_pretty(&config_error_report(&e)).unwrap()),
    };
    let outcome = match cfg.threads {
        Some(t) if t > 0 => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cfg, inputs.as_ref())),
            Err(_) => execute(&cfg, inputs.as_ref()),
        },
        _ => execute(&cfg, inputs.as_ref()),
    };
    let json_text = serde_json::to_string_pretty(&outcome.report).unwrap();
    let text = if cfg.pretty { render_pretty(&outcome.report) } else { json_text.clone() };
    if let Some(path) = &cfg.output {
        if let Err(e) = std::fs::write(path, &json_text) {
            return (EXIT_ERROR, format!("cannot write {}: {e}", path.display()));
        }
    }
    (outcome.code, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_parsing() {
        assert_eq!(parse_jordan("2:0").unwrap(), vec![(2, "0".to_string())]);
        assert_eq!(parse_jordan("1:0, 1:1").unwrap().len(), 2);
        assert!(parse_jordan("2-0").is_err());
    }

    #[test]
    fn rho_parsing() {
        assert_eq!(parse_rho("all").unwrap(), RhoSpec::All);
        assert_eq!(parse_rho("diag").unwrap(), RhoSpec::Diagonal);
        assert_eq!(parse_rho("0,1").unwrap(), RhoSpec::Single(vec![0, 1]));
        assert!(parse_rho("x").is_err());
    }

    #[test]
    fn roots_are_named() {
        assert_eq!(format_root(&RootOfUnity::new(4, 1)), "i");
        assert_eq!(format_root(&RootOfUnity::new(8, 4)), "-1");
        assert_eq!(format_root(&RootOfUnity::new(12, 0)), "1");
        assert_eq!(format_root(&RootOfUnity::new(3, 1)), "ζ_3^1");
    }

    #[test]
    fn pretty_flattens() {
        let v = json!({"a": {"b": 1, "c": [1, 2]}, "d": [{"e": true}]});
        assert_eq!(render_pretty(&v), "a.b = 1\na.c = [1, 2]\nd[0].e = true");
    }
}
