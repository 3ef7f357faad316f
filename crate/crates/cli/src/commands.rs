use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use hklab_core::estimator::{
    bounds_report, ehk_samples, hypersurface_ehk_coefficient, mhk_gorenstein, probe_diagonal_hypersurface,
    relative_hk_sample, BoundsInput, CheckStatus,
};
use hklab_core::groebner::oracle::linear_algebra_length;
use hklab_core::groebner::{bracket_power, EngineConfig, IdealSpec, DEFAULT_STEP_BUDGET};
use hklab_core::quotient::{
    canonical_cover_check, quotient_ehk, quotient_mhk, veronese_semigroup_length, VeroneseParams,
};
use hklab_core::rational::{abs_diff, parse_rational, rat};
use hklab_core::segre::{
    gorenstein_sum, one_sided_limit, rees_formulas, segre_ehk_closed, segre_finite_q, segre_mhk_closed,
    socle_annihilator_count, SegreParams,
};
use hklab_core::stirling::{binomial, stirling2, stirling2_explicit};
use hklab_core::HkError;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::report::{estimate_obj, sample_rows, Obj, Report};
use crate::spec::{parse_ladder, parse_spec, InputSpec, SpecError};

#[derive(Debug, Parser)]
#[command(name = "hk-lab", version, about = "Hilbert–Kunz multiplicity toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit the sample table as CSV.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Reduction-step budget for Gröbner runs and enumerations.
    #[arg(long, global = true, env = "HKLAB_BUDGET")]
    pub budget: Option<u64>,
    /// Add elapsed wall time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stirling number of the second kind S(n, k).
    Stirling { n: usize, k: usize },
    /// Closed forms and finite-q tables for k[x_1..x_r] # k[y_1..y_s].
    Segre {
        r: u32,
        s: u32,
        #[arg(long, value_name = "LIST")]
        q_ladder: Option<String>,
    },
    /// e_HK and m_HK of the Rees algebra k[x_1,x_2] # k[y_1..y_s].
    Rees { s: u32 },
    /// e-th Veronese subring of k[x,y]: closed forms and lattice lengths.
    Veronese {
        e: u64,
        #[arg(long, value_name = "LIST")]
        q_ladder: Option<String>,
    },
    /// Quotient singularity by a group of order |G| with μ module generators.
    Quotient {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        mu: u64,
        /// Characteristic; checked to be coprime to the group order.
        #[arg(long)]
        p: Option<u64>,
        /// Order of a subgroup H for the canonical cover check.
        #[arg(long)]
        subgroup: Option<u64>,
    },
    /// Sample l(A/I^[q])/q^d and extrapolate e_HK(I).
    Ehk {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Named ideal from the spec; defaults to the ideal of all variables.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 3)]
        emax: u32,
        /// Confirm every length by per-degree linear algebra (homogeneous input only).
        #[arg(long)]
        verify: bool,
    },
    /// m_HK of a Gorenstein ring from a parameter ideal J.
    Mhk {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long, default_value = "J")]
        ideal: String,
        #[arg(long, default_value_t = 3)]
        emax: u32,
    },
    /// Relative samples [l(A/I^[q]) − l(A/I'^[q])]/q^d for I ⊆ I' of colength 1.
    Relhk {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        ideal_prime: String,
        #[arg(long, default_value_t = 3)]
        emax: u32,
    },
    /// Check m_HK and e_HK against the multiplicity and hypersurface bounds.
    Bounds {
        #[arg(long)]
        e_mult: String,
        #[arg(long)]
        ehk: String,
        #[arg(long)]
        mhk: String,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        hypersurface: bool,
    },
    /// m_HK samples of x_0^d + ... + x_d^d next to 1/(2^{d−1}(d−1)!).
    #[command(name = "probe-q26")]
    ProbeQ26 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        emax: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stirling { .. } => "stirling",
            Command::Segre { .. } => "segre",
            Command::Rees { .. } => "rees",
            Command::Veronese { .. } => "veronese",
            Command::Quotient { .. } => "quotient",
            Command::Ehk { .. } => "ehk",
            Command::Mhk { .. } => "mhk",
            Command::Relhk { .. } => "relhk",
            Command::Bounds { .. } => "bounds",
            Command::ProbeQ26 { .. } => "probe-q26",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] HkError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Spec(e) => e.code(),
            CliError::Algebra(e) => e.code(),
            CliError::Input(_) => "invalid_input",
            CliError::Io(_) => "io_error",
        }
    }

    /// 3 for an exhausted budget, 1 for internal faults, 2 for anything the
    /// user can fix by changing the input.
    pub fn exit_code(&self) -> i32 {
        let hk = match self {
            CliError::Spec(SpecError::Algebra(e)) | CliError::Algebra(e) => Some(e),
            _ => None,
        };
        match hk {
            Some(HkError::BudgetExceeded { .. }) => 3,
            Some(HkError::ArithmeticBug(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn engine_config(cli: &Cli) -> EngineConfig {
    EngineConfig {
        step_budget: cli.budget.unwrap_or(DEFAULT_STEP_BUDGET),
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let config = engine_config(cli);
    let mut report = match &cli.command {
        Command::Stirling { n, k } => stirling(*n, *k)?,
        Command::Segre { r, s, q_ladder } => segre(*r, *s, q_ladder.as_deref(), config.step_budget)?,
        Command::Rees { s } => rees(*s)?,
        Command::Veronese { e, q_ladder } => veronese(*e, q_ladder.as_deref(), config.step_budget)?,
        Command::Quotient { order, mu, p, subgroup } => quotient(*order, *mu, *p, *subgroup)?,
        Command::Ehk {
            spec,
            ideal,
            emax,
            verify,
        } => ehk(&load_spec(spec)?, ideal.as_deref(), *emax, *verify, &config)?,
        Command::Mhk { spec, ideal, emax } => mhk(&load_spec(spec)?, ideal, *emax, &config)?,
        Command::Relhk {
            spec,
            ideal,
            ideal_prime,
            emax,
        } => relhk(&load_spec(spec)?, ideal, ideal_prime, *emax, &config)?,
        Command::Bounds {
            e_mult,
            ehk,
            mhk,
            dim,
            hypersurface,
        } => bounds(e_mult, ehk, mhk, *dim, *hypersurface)?,
        Command::ProbeQ26 { p, d, emax } => probe(*p, *d, *emax, &config)?,
    };
    if cli.timing {
        let mut t = Obj::new();
        t.set("elapsed_ms", start.elapsed().as_millis() as u64);
        report.body.child("timing", t);
    }
    Ok(report)
}

fn load_spec(path: &PathBuf) -> Result<InputSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_spec(&text)?)
}

fn ladder(text: Option<&str>, default: Vec<u64>) -> Result<Vec<u64>> {
    match text {
        None => Ok(default),
        Some(t) => parse_ladder(t).map_err(CliError::Input),
    }
}

fn rational_arg(name: &str, text: &str) -> Result<BigRational> {
    parse_rational(text).ok_or_else(|| CliError::Input(format!("--{name}: `{text}` is not a rational number")))
}

/// Strictly decreasing, allowing an exact value to stay exact.
fn errors_decrease(errors: &[BigRational]) -> bool {
    errors.windows(2).all(|w| w[1] < w[0] || (w[0].is_zero() && w[1].is_zero()))
}

fn stirling(n: usize, k: usize) -> Result<Report> {
    let mut r = Report::new("stirling");
    let value = stirling2(n, k);
    let explicit = stirling2_explicit(n, k)?;
    r.body
        .set("n", n)
        .set("k", k)
        .set("value", value.to_string())
        .set("explicit_sum", explicit.to_string())
        .flag("recurrence_matches_explicit", CheckStatus::from_bool(value == explicit));
    let binom = if n >= 1 && k + 1 == n {
        CheckStatus::from_bool(value == binomial(n as i64, 2))
    } else {
        CheckStatus::NotApplicable
    };
    r.body.flag("binomial_identity", binom);
    Ok(r)
}

fn segre(r: u32, s: u32, q_ladder: Option<&str>, budget: u64) -> Result<Report> {
    let p = SegreParams::new(r, s)?;
    let qs = ladder(q_ladder, vec![2, 4, 8, 16, 32, 64])?;
    let ehk = segre_ehk_closed(&p);
    let mhk = segre_mhk_closed(&p);
    let one_sided = one_sided_limit(&p);
    let mut rep = Report::new("segre");
    rep.body
        .set("r", r)
        .set("s", s)
        .set("d", p.d())
        .set("q_ladder", qs.clone())
        .rational("ehk", &ehk)
        .rational("mhk", &mhk)
        .rational("ehk_plus_mhk", &(&ehk + &mhk))
        .rational("one_sided_limit", &one_sided);

    let mut rows = Vec::new();
    let (mut e_err, mut m_err, mut o_err) = (Vec::new(), Vec::new(), Vec::new());
    for &q in &qs {
        let f = segre_finite_q(&p, q)?;
        let mut row = Obj::new();
        row.set("q", q)
            .set("ehk_numerator", f.ehk_numerator.to_string())
            .set("mhk_numerator", f.mhk_numerator.to_string())
            .set("one_sided_numerator", f.one_sided_numerator.to_string())
            .rational("ehk_ratio", &f.ehk_ratio(&p))
            .rational("mhk_ratio", &f.mhk_ratio(&p))
            .rational("one_sided_ratio", &f.one_sided_ratio(&p));
        match socle_annihilator_count(r, s, q, budget) {
            Ok(c) => {
                row.set("socle_count", c.to_string())
                    .flag("socle_oracle", CheckStatus::from_bool(c == f.mhk_numerator));
            }
            Err(HkError::BudgetExceeded { .. }) => {
                row.set("socle_count", serde_json::Value::Null)
                    .flag("socle_oracle", CheckStatus::NotApplicable);
            }
            Err(e) => return Err(e.into()),
        }
        e_err.push(abs_diff(&f.ehk_ratio(&p), &ehk));
        m_err.push(abs_diff(&f.mhk_ratio(&p), &mhk));
        o_err.push(abs_diff(&f.one_sided_ratio(&p), &one_sided));
        rows.push(row);
    }
    rep.body.list("finite_q", rows);
    rep.table = Some("finite_q");

    let mut checks = Obj::new();
    let d = p.d();
    let stirling_sum = BigRational::new(
        hklab_core::stirling::factorial(r as u64) * stirling2(d as usize, r as usize)
            + hklab_core::stirling::factorial(s as u64) * stirling2(d as usize, s as usize),
        hklab_core::stirling::factorial(d as u64),
    );
    checks.flag("sum_identity", CheckStatus::from_bool(&ehk + &mhk == stirling_sum));
    let rees = if r == 2 {
        let (re, rm) = rees_formulas(s)?;
        CheckStatus::from_bool(re == ehk && rm == mhk)
    } else {
        CheckStatus::NotApplicable
    };
    checks.flag("rees_agreement", rees);
    let gor = if r == s {
        CheckStatus::from_bool(gorenstein_sum(r)? == &ehk + &mhk)
    } else {
        CheckStatus::NotApplicable
    };
    checks.flag("gorenstein_sum", gor);
    let trend = |errs: &[BigRational]| {
        if errs.len() < 2 {
            CheckStatus::NotApplicable
        } else {
            CheckStatus::from_bool(errors_decrease(errs))
        }
    };
    checks
        .flag("ehk_error_decreasing", trend(&e_err))
        .flag("mhk_error_decreasing", trend(&m_err))
        .flag("one_sided_error_decreasing", trend(&o_err));
    rep.body.child("checks", checks);
    Ok(rep)
}

fn rees(s: u32) -> Result<Report> {
    let (e, m) = rees_formulas(s)?;
    let p = SegreParams::new(2, s)?;
    let mut rep = Report::new("rees");
    rep.body.set("s", s).rational("ehk", &e).rational("mhk", &m);
    let mut checks = Obj::new();
    checks
        .flag("ehk_matches_general", CheckStatus::from_bool(e == segre_ehk_closed(&p)))
        .flag("mhk_matches_general", CheckStatus::from_bool(m == segre_mhk_closed(&p)));
    rep.body.child("checks", checks);
    Ok(rep)
}

fn veronese(e: u64, q_ladder: Option<&str>, budget: u64) -> Result<Report> {
    let v = VeroneseParams::new(e)?;
    // q ≡ 1 mod e keeps the periodic part of the error fixed along the ladder.
    let qs = ladder(q_ladder, (1..=3).map(|k| (e + 1).pow(k)).collect())?;
    let params = v.quotient_params(None)?;
    let ehk = quotient_ehk(&params);
    let mhk = quotient_mhk(v.group_order())?;
    let mut rep = Report::new("veronese");
    rep.body
        .set("e", e)
        .set("group_order", v.group_order())
        .set("mu", params.mu)
        .set("q_ladder", qs.clone())
        .rational("ehk", &ehk)
        .rational("mhk", &mhk);
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for &q in &qs {
        let len = veronese_semigroup_length(e, q, budget)?;
        let ratio = BigRational::new(len.clone(), (q as u128 * q as u128).into());
        let err = abs_diff(&ratio, &ehk);
        let mut row = Obj::new();
        row.set("q", q)
            .set("length", len.to_string())
            .rational("ratio", &ratio)
            .rational("error", &err);
        rows.push(row);
        errors.push(err);
    }
    rep.body.list("samples", rows);
    rep.table = Some("samples");
    let mut checks = Obj::new();
    checks.flag(
        "error_decreasing",
        if errors.len() < 2 {
            CheckStatus::NotApplicable
        } else {
            CheckStatus::from_bool(errors_decrease(&errors))
        },
    );
    checks.flag(
        "final_error_below_0_05",
        errors
            .last()
            .map(|err| CheckStatus::from_bool(*err < rat(1, 20)))
            .unwrap_or(CheckStatus::NotApplicable),
    );
    checks.flag("mhk_le_ehk", CheckStatus::from_bool(mhk <= ehk));
    rep.body.child("checks", checks);
    Ok(rep)
}

fn quotient(order: u64, mu: u64, p: Option<u64>, subgroup: Option<u64>) -> Result<Report> {
    let params = hklab_core::quotient::QuotientParams::new(order, mu, p)?;
    let ehk = quotient_ehk(&params);
    let mhk = quotient_mhk(order)?;
    let mut rep = Report::new("quotient");
    rep.body
        .set("group_order", order)
        .set("mu", mu)
        .set("characteristic", p)
        .set("no_pseudo_reflections", "assumed")
        .rational("ehk", &ehk)
        .rational("mhk", &mhk);
    let mut checks = Obj::new();
    checks.flag("mhk_le_ehk", CheckStatus::from_bool(mhk <= ehk));
    rep.body.child("checks", checks);
    if let Some(h) = subgroup {
        let c = canonical_cover_check(order, h, None)?;
        let mut cover = Obj::new();
        cover
            .set("subgroup_order", h)
            .set("index", c.index)
            .rational("mhk_cover", &c.mhk_cover)
            .rational("mhk_base", &c.mhk_base)
            .flag("cover_identity", CheckStatus::from_bool(c.identity_holds));
        rep.body.child("canonical_cover", cover);
    }
    Ok(rep)
}

fn echo_spec(rep: &mut Report, spec: &InputSpec) {
    rep.body
        .set("spec", spec.render())
        .set("characteristic", spec.characteristic());
}

fn generators(ideal: &IdealSpec) -> Vec<String> {
    ideal.generators().iter().map(|g| g.to_string()).collect()
}

fn ehk(spec: &InputSpec, ideal_name: Option<&str>, e_max: u32, verify: bool, config: &EngineConfig) -> Result<Report> {
    let ring = spec.ring_spec()?;
    let ideal = spec.ideal_spec(ideal_name)?;
    let samples = ehk_samples(&ring, &ideal, e_max, config)?;
    let mut rep = Report::new("ehk");
    echo_spec(&mut rep, spec);
    rep.body
        .set("ideal", ideal_name.unwrap_or("maximal"))
        .set("generators", generators(&ideal))
        .set("dimension", ring.dimension())
        .set("emax", e_max);
    let mut rows = sample_rows(&samples);
    let homogeneous = ideal.sum(ring.relations())?.is_homogeneous();
    for (row, s) in rows.iter_mut().zip(&samples.samples) {
        if verify && homogeneous {
            let bracket = bracket_power(&ideal, s.q)?;
            let max_degree = oracle_degree_bound(&bracket, ring.relations());
            let la = linear_algebra_length(&bracket, ring.relations(), max_degree)?;
            row.set("oracle_length", la.to_string())
                .flag("oracle", CheckStatus::from_bool(s.length == la.into()));
        } else {
            row.flag("oracle", CheckStatus::NotApplicable);
        }
    }
    rep.body.list("samples", rows);
    rep.table = Some("samples");
    if samples.samples.len() >= 2 {
        let est = hklab_core::estimator::extrapolate(&samples, ring.dimension())?;
        rep.body.child("estimate", estimate_obj(&est));
    }
    Ok(rep)
}

/// Degree cap for the oracle. A complete intersection quotient has top degree
/// Σ(deg − 1); the oracle stops at the first vanishing degree anyway.
fn oracle_degree_bound(ideal: &IdealSpec, relations: &IdealSpec) -> u32 {
    let degs: u64 = ideal
        .generators()
        .iter()
        .chain(relations.generators())
        .map(|g| g.total_degree().unwrap_or(0))
        .sum();
    degs.min(u32::MAX as u64) as u32
}

fn mhk(spec: &InputSpec, ideal_name: &str, e_max: u32, config: &EngineConfig) -> Result<Report> {
    let ring = spec.ring_spec()?;
    let j = spec.ideal_spec(Some(ideal_name))?;
    let res = mhk_gorenstein(&ring, &j, e_max, config)?;
    let mut rep = Report::new("mhk");
    echo_spec(&mut rep, spec);
    rep.body
        .set("ideal", ideal_name)
        .set("generators", generators(&j))
        .set("colon_generators", generators(&res.colon))
        .set("length_j", res.length_j)
        .set("length_colon", res.length_colon)
        .set("dimension", ring.dimension())
        .set("emax", e_max)
        .list("samples", sample_rows(&res.samples))
        .child("estimate", estimate_obj(&res.estimate));
    rep.table = Some("samples");
    let mut checks = Obj::new();
    let unit = |r: &BigRational| *r >= BigRational::zero() && *r <= BigRational::one();
    checks
        .flag("samples_in_unit_interval", CheckStatus::from_bool(res.samples.ratios().all(unit)))
        .flag("estimate_in_unit_interval", CheckStatus::from_bool(unit(&res.estimate.point)));
    rep.body.child("checks", checks);
    Ok(rep)
}

fn relhk(spec: &InputSpec, i_name: &str, ip_name: &str, e_max: u32, config: &EngineConfig) -> Result<Report> {
    let ring = spec.ring_spec()?;
    let i = spec.ideal_spec(Some(i_name))?;
    let ip = spec.ideal_spec(Some(ip_name))?;
    let res = relative_hk_sample(&ring, &i, &ip, e_max, config)?;
    let mut rep = Report::new("relhk");
    echo_spec(&mut rep, spec);
    rep.body
        .set("ideal", i_name)
        .set("ideal_prime", ip_name)
        .set("dimension", ring.dimension())
        .set("emax", e_max)
        .list("samples", sample_rows(&res.samples))
        .child("estimate", estimate_obj(&res.estimate));
    rep.table = Some("samples");
    let mut checks = Obj::new();
    checks.flag(
        "samples_nonnegative",
        CheckStatus::from_bool(res.samples.ratios().all(|r| *r >= BigRational::zero())),
    );
    rep.body.child("checks", checks);
    Ok(rep)
}

fn bounds(e_mult: &str, ehk: &str, mhk: &str, dim: u32, hypersurface: bool) -> Result<Report> {
    let input = BoundsInput {
        e_mult: rational_arg("e-mult", e_mult)?,
        ehk: rational_arg("ehk", ehk)?,
        mhk: rational_arg("mhk", mhk)?,
        dimension: dim,
        hypersurface,
    };
    if input.e_mult < BigRational::one() || dim == 0 {
        return Err(CliError::Input("bounds need e(A) >= 1 and dim >= 1".into()));
    }
    let mut rep = Report::new("bounds");
    rep.body
        .rational("e_mult", &input.e_mult)
        .rational("ehk", &input.ehk)
        .rational("mhk", &input.mhk)
        .set("dimension", dim)
        .set("hypersurface", hypersurface)
        .rational("ehk_lower_coefficient", &hypersurface_ehk_coefficient(dim));
    let rows = bounds_report(&input)
        .into_iter()
        .map(|c| {
            let mut row = Obj::new();
            row.set("name", c.name).flag("status", c.status).set("equality", c.equality);
            match &c.bound {
                Some(b) => row.rational("bound", b),
                None => row.set("bound", serde_json::Value::Null),
            };
            row
        })
        .collect();
    rep.body.list("checks", rows);
    rep.table = Some("checks");
    Ok(rep)
}

fn probe(p: u32, d: u32, e_max: u32, config: &EngineConfig) -> Result<Report> {
    let pr = probe_diagonal_hypersurface(p, d, e_max, config)?;
    let mut rep = Report::new("probe-q26");
    let relation = pr.ring.relations().generators().first().map(|f| f.to_string()).unwrap_or_default();
    rep.body
        .set("p", p)
        .set("d", d)
        .set("emax", e_max)
        .set("relation", relation)
        .set("length_j", pr.result.length_j)
        .set("length_colon", pr.result.length_colon)
        .rational("conjectural", &pr.conjectural)
        .set("assertion", "none")
        .list("samples", sample_rows(&pr.result.samples))
        .child("estimate", estimate_obj(&pr.result.estimate));
    rep.table = Some("samples");
    Ok(rep)
}

/// Error document written in place of a report.
pub fn error_report(command: &str, err: &CliError) -> Report {
    let mut rep = Report::new(command);
    let mut e = Obj::new();
    e.set("code", err.code()).set("message", err.to_string());
    rep.body.child("error", e);
    rep
}
