//! Command surface shared by the `homext` binary and the C interface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{Algebra, Element, LinMap};
use crate::audit::{audit_family, audit_right_linear, audit_zero_mult};
use crate::bridge::{gamma_bar_convention, probe_type0, verify_diagram, BridgeContext, BridgeError, DEFAULT_SAMPLES};
use crate::catalog::{daleth, ZeroMultSpec};
use crate::documents::{daleth_document, family_from_params, zero_mult_document};
use crate::dsl::{parse, Document, QuintupleParts};
use crate::error::Error;
use crate::homext::{extension_algebra, ExtAlgebra};
use crate::multiplier::{check_datum, is_double_homothetism, DatumError};
use crate::ore::OreError;
use crate::report::{CheckRecord, Report, SCHEMA_VERSION};
use crate::scalar::{Scalar, ScalarRing};
use crate::skewderiv::{
    check_deriv_ext, check_endo_ext, extend_deriv, extend_endo, is_endomorphism, is_skew_derivation, members,
    solve_deriv_ext, solve_deriv_ext_free_mu, solve_endo_ext, Quintuple, SkewError, Varsigma, WSolutions,
    DEFAULT_ENUM_CAP,
};

pub const DEFAULT_DEGREE_CAP: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "homext", version, about = "Homothetic extensions, skew derivations and Ore extensions")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest Ore degree handled by the bridge and by ore-mul.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    /// Largest number of candidate states a solver may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_CAP)]
    pub enum_cap: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Document file.
    pub file: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Datum,
    Endo,
    Deriv,
    Skew,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a datum, an endomorphism extension, a derivation extension or a skew derivation.
    Check {
        kind: CheckKind,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        datum: Option<String>,
        #[arg(long)]
        quintuple: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        delta: Option<String>,
    },
    /// All w for which alpha extends to R(sigma, s).
    SolveW {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        datum: Option<String>,
        /// `zero`, `identity` or the name of a map.
        #[arg(long, default_value = "zero")]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        varsigma: u8,
    },
    /// All e for which delta extends, given the rest of a quintuple.
    SolveE {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quintuple: Option<String>,
        /// Solve for (e, mu) jointly when varsigma = 0.
        #[arg(long)]
        free_mu: bool,
    },
    /// Build alpha_S and delta_S from a quintuple.
    Extend {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quintuple: Option<String>,
    },
    /// Multiply two Ore polynomials.
    OreMul {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Verify the embedding of R[x] into R(sigma, s)[x] for a type 1 quintuple.
    BridgeVerify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quintuple: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Probe the projection for a type 0 quintuple.
    ProbeType0 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quintuple: Option<String>,
    },
    /// Emit a catalog document.
    Example {
        #[command(subcommand)]
        which: Example,
    },
    /// Compare stated formulas with solver output: family=0..4, family=rlin or family=zeromult.
    Audit {
        target: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "F2")]
        field: String,
        #[arg(long, default_value = "1,1,1,1")]
        dims: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Example {
    /// The matrix-unit algebra with the datum (eps_k, 0).
    Daleth {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "F2")]
        field: String,
        /// Add a quintuple from a theta family (0..4).
        #[arg(long)]
        family: Option<u8>,
        /// Comma-separated family parameters.
        #[arg(long, default_value = "")]
        params: String,
        /// Comma-separated gamma_1..gamma_n of the derivation.
        #[arg(long)]
        gammas: Option<String>,
    },
    /// The zero-multiplication algebra with four blocks.
    Zeromult {
        #[arg(long, default_value = "1,1,1,1")]
        dims: String,
        #[arg(long, default_value = "F2")]
        field: String,
        /// Add a random quintuple of this type.
        #[arg(long)]
        varsigma: Option<u8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command writes and the exit status it ends with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

/// Runs a full argument vector (program name first).
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    run_with_document(args, None)
}

/// Like [`run_args`], reading definitions from `doc` instead of a file.
pub fn run_with_document<I, T>(args: I, doc: Option<&Document>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let echo = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    match execute(&cli, doc) {
        Ok(Output::Report(mut rep)) => {
            rep.command = echo;
            let stdout = if cli.json { rep.render_json() } else { rep.render_text() };
            Outcome {
                stdout,
                stderr: String::new(),
                code: rep.exit_code(),
            }
        }
        Ok(Output::Document(d)) => {
            let text = d.to_string();
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&json!({
                    "schema": SCHEMA_VERSION,
                    "command": echo,
                    "document": text,
                }))
                .expect("serializable");
                s.push('\n');
                s
            } else {
                text
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: 0,
            }
        }
        Err(e) => Outcome::error(&e),
    }
}

pub enum Output {
    Report(Report),
    Document(Document),
}

fn load(input: &Input, doc: Option<&Document>) -> Result<Document, Error> {
    match (&input.file, doc) {
        (None, Some(d)) => Ok(d.clone()),
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Ok(parse(&text)?)
        }
        (None, None) => Err(Error::Usage("a document file is required".into())),
    }
}

fn parse_ring(s: &str) -> Result<ScalarRing, Error> {
    Ok(s.parse::<ScalarRing>()?)
}

fn parse_list(ring: ScalarRing, s: &str) -> Result<Vec<Scalar>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| ring.parse_value(t).map_err(Error::from))
        .collect()
}

fn parse_dims(s: &str, ring: ScalarRing) -> Result<ZeroMultSpec, Error> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Usage(format!("bad dimension `{t}`"))))
        .collect::<Result<_, _>>()?;
    let dims: [usize; 4] = v
        .try_into()
        .map_err(|_| Error::Usage(format!("--dims takes four values, got `{s}`")))?;
    Ok(ZeroMultSpec { dims, ring })
}

fn varsigma(x: u8) -> Result<Varsigma, Error> {
    Varsigma::from_u8(x).map_err(|e| Error::Usage(e.to_string()))
}

/// Failed conditions on the input data, reported as failing checks.
fn math_failure(e: &SkewError) -> bool {
    matches!(
        e,
        SkewError::ConditionsFail(_)
            | SkewError::EndoPreconditionFailed(_)
            | SkewError::NotAnEndomorphism(_)
            | SkewError::NotASkewDerivation(_)
            | SkewError::NotABimultiplication(_)
            | SkewError::MuConstraintViolated(_)
            | SkewError::NonIdempotentVarsigma(_)
    )
}

fn datum_failure(e: &DatumError) -> bool {
    !matches!(e, DatumError::Algebra(_))
}

fn bridge_failure(e: &BridgeError) -> bool {
    match e {
        BridgeError::PreconditionFailed(_) => true,
        BridgeError::Skew(s) | BridgeError::Ore(OreError::Skew(s)) => math_failure(s),
        _ => false,
    }
}

fn build_quintuple(alg: &Algebra, p: QuintupleParts) -> Result<Result<Quintuple, SkewError>, Error> {
    match Quintuple::new(alg, &p.datum, p.alpha, p.delta, p.w, p.e, p.varsigma, p.mu) {
        Ok(q) => Ok(Ok(q)),
        Err(e) if math_failure(&e) => Ok(Err(e)),
        Err(e) => Err(e.into()),
    }
}

fn failed(name: &str, e: impl std::fmt::Display) -> Report {
    let mut rep = Report::new("");
    rep.push(CheckRecord::fail(name, e.to_string()));
    rep
}

fn map_lines(alg: &Algebra, f: &LinMap) -> Vec<String> {
    (0..f.domain_dim())
        .map(|i| format!("{} -> {}", alg.label(i), alg.format_element(&f.image(i))))
        .collect()
}

pub fn execute(cli: &Cli, doc: Option<&Document>) -> Result<Output, Error> {
    let rep = match &cli.command {
        Command::Check {
            kind,
            input,
            datum,
            quintuple,
            alpha,
            delta,
        } => check(*kind, &load(input, doc)?, datum, quintuple, alpha, delta)?,
        Command::SolveW {
            input,
            datum,
            alpha,
            varsigma: vs,
        } => solve_w(&load(input, doc)?, datum, alpha, varsigma(*vs)?, cli.enum_cap)?,
        Command::SolveE {
            input,
            quintuple,
            free_mu,
        } => solve_e(&load(input, doc)?, quintuple, *free_mu, cli.enum_cap)?,
        Command::Extend { input, quintuple } => extend(&load(input, doc)?, quintuple)?,
        Command::OreMul { input, left, right } => ore_mul(&load(input, doc)?, left, right, cli.degree_cap)?,
        Command::BridgeVerify {
            input,
            quintuple,
            samples,
            seed,
        } => bridge_verify(&load(input, doc)?, quintuple, cli.degree_cap, *samples, *seed)?,
        Command::ProbeType0 { input, quintuple } => probe(&load(input, doc)?, quintuple, cli.degree_cap)?,
        Command::Example { which } => return example(which, cli.enum_cap).map(Output::Document),
        Command::Audit {
            target,
            n,
            k,
            field,
            dims,
            samples,
            seed,
        } => audit(target, *n, *k, field, dims, *samples, *seed, cli.enum_cap)?,
    };
    Ok(Output::Report(rep))
}

fn check(
    kind: CheckKind,
    doc: &Document,
    datum: &Option<String>,
    quintuple: &Option<String>,
    alpha: &Option<String>,
    delta: &Option<String>,
) -> Result<Report, Error> {
    let mut rep = Report::new("");
    match kind {
        CheckKind::Datum => {
            let name = doc.pick("datum", datum.as_deref())?;
            let (alg, d) = doc.datum(&name)?;
            rep.push(CheckRecord::from_verdict(
                "sigma is a double homothetism",
                is_double_homothetism(&alg, d.sigma()),
            ));
            match check_datum(&alg, d.sigma(), d.s()) {
                Ok(()) => rep.push(CheckRecord::pass("datum axioms")),
                Err(e) if datum_failure(&e) => rep.push(CheckRecord::fail("datum axioms", e.to_string())),
                Err(e) => return Err(e.into()),
            }
            match extension_algebra(&alg, d.sigma(), d.s()) {
                Ok(_) => rep.push(CheckRecord::pass("R(sigma,s) is associative")),
                Err(e @ crate::algebra::AlgebraError::AssociativityViolation { .. }) => {
                    rep.push(CheckRecord::fail("R(sigma,s) is associative", e.to_string()))
                }
                Err(e) => return Err(e.into()),
            }
        }
        CheckKind::Endo => {
            let name = doc.pick("quintuple", quintuple.as_deref())?;
            let (alg, p) = doc.quintuple(&name)?;
            rep.push(CheckRecord::from_verdict("alpha is an endomorphism", is_endomorphism(&alg, &p.alpha)));
            rep.push(CheckRecord::from_verdict(
                "alpha extends with (w, varsigma)",
                check_endo_ext(&alg, &p.datum, &p.alpha, &p.w, p.varsigma),
            ));
        }
        CheckKind::Deriv => {
            let name = doc.pick("quintuple", quintuple.as_deref())?;
            let (alg, p) = doc.quintuple(&name)?;
            rep.push(CheckRecord::from_verdict(
                "delta is an alpha-skew derivation",
                is_skew_derivation(&alg, &p.alpha, &p.delta),
            ));
            match check_deriv_ext(&alg, &p.datum, &p.alpha, &p.w, p.varsigma, &p.delta, &p.e, &p.mu) {
                Ok(v) => rep.push(CheckRecord::from_verdict("delta extends with (e, mu)", v)),
                Err(e) if math_failure(&e) => rep.push(CheckRecord::fail("delta extends with (e, mu)", e.to_string())),
                Err(e) => return Err(e.into()),
            }
        }
        CheckKind::Skew => {
            let (alg, a, d) = match (alpha, delta) {
                (Some(a), Some(d)) => {
                    let (alg, a) = doc.map(a)?;
                    let (_, d) = doc.map(d)?;
                    (alg, a, d)
                }
                (None, None) => {
                    let name = doc.pick("quintuple", quintuple.as_deref())?;
                    let (alg, p) = doc.quintuple(&name)?;
                    (alg, p.alpha, p.delta)
                }
                _ => return Err(Error::Usage("give both --alpha and --delta, or neither".into())),
            };
            rep.push(CheckRecord::from_verdict("alpha is an endomorphism", is_endomorphism(&alg, &a)));
            rep.push(CheckRecord::from_verdict(
                "delta is an alpha-skew derivation",
                is_skew_derivation(&alg, &a, &d),
            ));
        }
    }
    Ok(rep)
}

fn solve_w(doc: &Document, datum: &Option<String>, alpha: &str, vs: Varsigma, enum_cap: u128) -> Result<Report, Error> {
    let name = doc.pick("datum", datum.as_deref())?;
    let (alg, d) = doc.datum(&name)?;
    let a = match alpha {
        "zero" => LinMap::zero(alg.ring(), alg.dim(), alg.dim()),
        "identity" => LinMap::identity(alg.ring(), alg.dim()),
        other => doc.map(other)?.1,
    };
    let mut rep = Report::new("");
    rep.push(CheckRecord::from_verdict("alpha is an endomorphism", is_endomorphism(&alg, &a)));
    match solve_endo_ext(&alg, &d, &a, vs, enum_cap) {
        Ok(WSolutions::Listed(ws)) => {
            rep.push(CheckRecord::from_bool(
                "alpha extends",
                !ws.is_empty(),
                format!("{} solutions", ws.len()),
            ));
            rep.section(
                format!("w solutions ({})", ws.len()),
                ws.iter().map(|w| alg.format_element(w)).collect(),
            );
        }
        Ok(WSolutions::Indeterminate(set)) => {
            rep.push(CheckRecord::pass("alpha extends").with_detail("solution set of (ii), (iii) is infinite"));
            rep.section("linear relaxation", set_lines(&alg, &set));
        }
        Err(e) if math_failure(&e) => rep.push(CheckRecord::fail("alpha extends", e.to_string())),
        Err(e) => return Err(e.into()),
    }
    Ok(rep)
}

fn set_lines(alg: &Algebra, set: &crate::linalg::AffineSolutionSet) -> Vec<String> {
    let fmt = |v: &Vec<Scalar>| {
        if v.len() == alg.dim() {
            alg.format_element(&Element::new(v.clone()))
        } else {
            crate::witness::fmt_coords(v)
        }
    };
    let mut lines = vec![match &set.particular {
        Some(p) => format!("particular: {}", fmt(p)),
        None => "inconsistent".to_string(),
    }];
    lines.extend(set.kernel_basis.iter().map(|k| format!("direction: {}", fmt(k))));
    lines
}

fn solve_e(doc: &Document, quintuple: &Option<String>, free_mu: bool, enum_cap: u128) -> Result<Report, Error> {
    let name = doc.pick("quintuple", quintuple.as_deref())?;
    let (alg, p) = doc.quintuple(&name)?;
    let mut rep = Report::new("");
    let set = if free_mu {
        if p.varsigma.is_one() {
            return Err(Error::Usage("--free-mu needs varsigma = 0".into()));
        }
        solve_deriv_ext_free_mu(&alg, &p.datum, &p.alpha, &p.w, &p.delta)
    } else {
        solve_deriv_ext(&alg, &p.datum, &p.alpha, &p.w, p.varsigma, &p.delta, &p.mu)
    };
    let set = match set {
        Ok(s) => s,
        Err(e) if math_failure(&e) => {
            rep.push(CheckRecord::fail("delta extends", e.to_string()));
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    let d = alg.dim();
    let fmt = |v: &Element| {
        if free_mu {
            format!(
                "e = {}, mu = {}",
                alg.format_element(&Element::new(v.coords()[..d].to_vec())),
                v.coord(d)
            )
        } else {
            alg.format_element(v)
        }
    };
    match members(&set, enum_cap)? {
        Some(list) => {
            rep.push(CheckRecord::from_bool(
                "delta extends",
                !list.is_empty(),
                format!("{} solutions", list.len()),
            ));
            rep.section(format!("e solutions ({})", list.len()), list.iter().map(fmt).collect());
        }
        None => {
            rep.push(CheckRecord::pass("delta extends").with_detail("infinitely many solutions"));
            rep.section("solution set", set_lines(&alg, &set));
        }
    }
    Ok(rep)
}

fn extend(doc: &Document, quintuple: &Option<String>) -> Result<Report, Error> {
    let name = doc.pick("quintuple", quintuple.as_deref())?;
    let (alg, p) = doc.quintuple(&name)?;
    let q = match build_quintuple(&alg, p)? {
        Ok(q) => q,
        Err(e) => return Ok(failed("quintuple conditions", e)),
    };
    let ext = match ExtAlgebra::new(&alg, &q.datum) {
        Ok(x) => x,
        Err(e) => return Ok(failed("R(sigma,s) is associative", e)),
    };
    let alpha_s = extend_endo(&ext, &q.alpha, &q.w, q.varsigma)?;
    let delta_s = extend_deriv(&ext, &q)?;
    let s = ext.as_algebra();
    let mut rep = Report::new("");
    rep.push(CheckRecord::pass("quintuple conditions"));
    rep.push(CheckRecord::from_verdict("alpha_S is an endomorphism", is_endomorphism(s, &alpha_s)));
    rep.push(CheckRecord::from_verdict(
        "delta_S is an alpha_S-skew derivation",
        is_skew_derivation(s, &alpha_s, &delta_s),
    ));
    rep.section("alpha_S", map_lines(s, &alpha_s));
    rep.section("delta_S", map_lines(s, &delta_s));
    Ok(rep)
}

fn ore_mul(doc: &Document, left: &str, right: &str, degree_cap: usize) -> Result<Report, Error> {
    let (ring, p) = doc.orepoly(left, degree_cap)?;
    let (other, q) = doc.orepoly(right, degree_cap)?;
    if ring.algebra() != other.algebra() || ring.alpha() != other.alpha() || ring.delta() != other.delta() {
        return Err(Error::Usage(format!("`{left}` and `{right}` live in different Ore rings")));
    }
    let mut rep = Report::new("");
    match ring.ore_mul(&p, &q) {
        Ok(pq) => rep.section("product", vec![ring.format(&pq)]),
        Err(e @ OreError::DegreeCapExceeded { .. }) => return Err(Error::Usage(e.to_string())),
        Err(e) => return Err(e.into()),
    }
    Ok(rep)
}

fn bridge_verify(
    doc: &Document,
    quintuple: &Option<String>,
    degree: usize,
    samples: usize,
    seed: u64,
) -> Result<Report, Error> {
    let name = doc.pick("quintuple", quintuple.as_deref())?;
    let (alg, p) = doc.quintuple(&name)?;
    let q = match build_quintuple(&alg, p)? {
        Ok(q) => q,
        Err(e) => return Ok(failed("quintuple conditions", e)),
    };
    let ctx = match BridgeContext::new(&alg, q, degree) {
        Ok(c) => c,
        Err(e) if bridge_failure(&e) => return Ok(failed("bridge context", e)),
        Err(e) => return Err(e.into()),
    };
    let mut rep = verify_diagram(&ctx, samples, seed);
    let conv = gamma_bar_convention(&ctx, degree.min(5))?;
    rep.section(
        "Gamma-bar(n,n) against sums of alpha^i(w)",
        conv.rows
            .iter()
            .map(|(n, inc, exc)| format!("n={n}: i<=n {inc}, i<n {exc}"))
            .collect(),
    );
    Ok(rep)
}

fn probe(doc: &Document, quintuple: &Option<String>, degree: usize) -> Result<Report, Error> {
    let name = doc.pick("quintuple", quintuple.as_deref())?;
    let (alg, p) = doc.quintuple(&name)?;
    let q = match build_quintuple(&alg, p)? {
        Ok(q) => q,
        Err(e) => return Ok(failed("quintuple conditions", e)),
    };
    match probe_type0(&alg, &q, degree) {
        Ok(r) => Ok(r),
        Err(e) if bridge_failure(&e) => Ok(failed("probe context", e)),
        Err(e) => Err(e.into()),
    }
}

fn example(which: &Example, enum_cap: u128) -> Result<Document, Error> {
    match which {
        Example::Daleth {
            n,
            k,
            field,
            family,
            params,
            gammas,
        } => {
            let ring = parse_ring(field)?;
            match family {
                None => {
                    if gammas.is_some() || !params.is_empty() {
                        return Err(Error::Usage("--params and --gammas need --family".into()));
                    }
                    Ok(daleth_document(*n, *k, ring, None, enum_cap)?)
                }
                Some(f) => {
                    let fam = family_from_params(*f, *n, *k, ring, &parse_list(ring, params)?)?;
                    let gammas = match gammas {
                        Some(g) => parse_list(ring, g)?,
                        None => vec![ring.zero(); *n],
                    };
                    Ok(daleth_document(*n, *k, ring, Some((&fam, &gammas)), enum_cap)?)
                }
            }
        }
        Example::Zeromult {
            dims,
            field,
            varsigma: vs,
            seed,
        } => {
            let ring = parse_ring(field)?;
            let spec = parse_dims(dims, ring)?;
            let vs = vs.map(varsigma).transpose()?;
            Ok(zero_mult_document(spec, vs, *seed)?)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn audit(
    target: &str,
    n: usize,
    k: usize,
    field: &str,
    dims: &str,
    samples: usize,
    seed: u64,
    enum_cap: u128,
) -> Result<Report, Error> {
    let ring = parse_ring(field)?;
    let which = target
        .strip_prefix("family=")
        .ok_or_else(|| Error::Usage(format!("expected family=0..4|rlin|zeromult, got `{target}`")))?;
    match which {
        "rlin" => Ok(audit_right_linear(&daleth(n, ring)?)),
        "zeromult" => Ok(audit_zero_mult(parse_dims(dims, ring)?, samples, seed)?),
        f => {
            let f: u8 = f
                .parse()
                .ok()
                .filter(|x| *x <= 4)
                .ok_or_else(|| Error::Usage(format!("unknown family `{f}`")))?;
            let dal = daleth(n, ring)?;
            Ok(audit_family(&dal, k, f, enum_cap)?.report(ring))
        }
    }
}
