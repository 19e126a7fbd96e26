//! Command-line front end. Parsing and dispatch live here so they can be
//! exercised in-process; the binary only performs IO.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::classifier::{self, AffineEndo, CurveInProduct};
use crate::config::{ConfigFile, Format, RunConfig, Truncation, OUTPUT_DIR_ENV};
use crate::discriminant::{self, DEFAULT_CLUSTERING_TOL};
use crate::error::{Error, Result};
use crate::jordan;
use crate::projective::Hyperplane;
use crate::report::{Claim, Report};
use crate::sextic;
use crate::theta::ThetaBasis;
use crate::torus::DivisorClass;

#[derive(Debug, Parser)]
#[command(name = "bgdual", version, about = "Elliptic normal curves, their discriminants, and related certificates")]
pub struct Cli {
    /// JSON configuration file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Period as `re,im`.
    #[arg(long, global = true, value_parser = parse_pair, allow_hyphen_values = true)]
    pub tau: Option<[f64; 2]>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// `auto` or a positive integer.
    #[arg(long, global = true)]
    pub truncation: Option<Truncation>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stratum {
    /// Tangent hyperplanes at one point.
    Generic,
    /// Osculating hyperplanes at torsion points.
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HyperplaneKind {
    Generic,
    Tangent,
    Osculating,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Image of a point on the normal curve.
    Embed {
        /// Lattice coordinates `a,b` of `a + b tau`; random when absent.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        point: Option<[f64; 2]>,
    },
    /// Zeros of a hyperplane section.
    Section {
        /// Coordinates `re,im;re,im;...`; random when absent.
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: Option<String>,
    },
    /// Tangent hyperplanes in random pencils.
    DiscriminantDegree {
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Multiplicity of the discriminant at sampled points.
    Multiplicity {
        #[arg(long, value_enum, default_value = "generic")]
        stratum: Stratum,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Osculating hyperplanes at torsion points.
    Stratify,
    /// Fitted discriminant curve for `n = 3`.
    DualSextic {
        /// Also write a heat map of the fitted form.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Multiplicity partition and fiber type of a hyperplane.
    FiberType {
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: Option<String>,
        #[arg(long, value_enum, default_value = "generic")]
        kind: HyperplaneKind,
    },
    /// Verdict for a curve in `E^n`, read from the configuration file.
    Classify,
    /// Exact Jordan-constant bounds.
    JordanBound {
        /// Tabulate from `n` up to this value.
        #[arg(long)]
        max_n: Option<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Embed { .. } => "embed",
            Self::Section { .. } => "section",
            Self::DiscriminantDegree { .. } => "discriminant-degree",
            Self::Multiplicity { .. } => "multiplicity",
            Self::Stratify => "stratify",
            Self::DualSextic { .. } => "dual-sextic",
            Self::FiberType { .. } => "fiber-type",
            Self::Classify => "classify",
            Self::JordanBound { .. } => "jordan-bound",
        }
    }
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([a.parse().map_err(|e| format!("{a:?}: {e}"))?, b.parse().map_err(|e| format!("{b:?}: {e}"))?]),
        _ => Err(format!("expected `x,y`, got {s:?}")),
    }
}

/// `re,im;re,im;...`
pub fn parse_hyperplane(s: &str) -> Result<Hyperplane> {
    let coords: Vec<Complex64> = s
        .split(';')
        .map(|p| parse_pair(p).map(|[re, im]| Complex64::new(re, im)))
        .collect::<std::result::Result<_, _>>()
        .map_err(Error::Config)?;
    Hyperplane::new(coords)
}

/// Everything the binary needs to finish a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    /// Report or error object.
    pub rendered: String,
    /// Where `rendered` goes; stdout when `None`.
    pub destination: Option<PathBuf>,
    /// Additional files (e.g. plots).
    pub files: Vec<(PathBuf, String)>,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn error_outcome(kind: &str, message: String) -> Outcome {
    let mut rendered = serde_json::to_string_pretty(&ErrorObject { error: ErrorBody { kind, message } }).expect("serializes");
    rendered.push('\n');
    Outcome { code: 2, rendered, destination: None, files: Vec::new() }
}

/// Parse arguments, run, and render. `env_dir` is the value of the
/// output-directory variable.
pub fn run_from_args<I, T>(args: I, env_dir: Option<PathBuf>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, rendered: e.to_string(), destination: None, files: Vec::new() };
            }
            return error_outcome("usage", e.to_string());
        }
    };
    run(cli, env_dir)
}

/// Reads the output-directory variable from the environment.
pub fn env_output_dir() -> Option<PathBuf> {
    std::env::var_os(OUTPUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn run(cli: Cli, env_dir: Option<PathBuf>) -> Outcome {
    let config = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => return error_outcome(e.kind(), e.to_string()),
    };
    let name = cli.command.name();
    match dispatch(&cli.command, &config) {
        Ok((report, files)) => {
            let code = if report.passed() { 0 } else { 1 };
            let files = files
                .into_iter()
                .map(|(p, s)| match &env_dir {
                    Some(dir) => (dir.join(p.file_name().unwrap_or(p.as_os_str())), s),
                    None => (p, s),
                })
                .collect();
            Outcome { code, rendered: report.render(), destination: config.destination(name, env_dir), files }
        }
        Err(e) => error_outcome(e.kind(), e.to_string()),
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        tau: cli.tau,
        n: cli.n,
        tolerance: cli.tolerance,
        truncation: cli.truncation,
        seed: cli.seed,
        output: cli.output.clone(),
        format: cli.format,
        ..Default::default()
    };
    RunConfig::resolve(file.overridden_by(flags))
}

type Dispatched = (Report, Vec<(PathBuf, String)>);

fn basis(config: &RunConfig) -> Result<ThetaBasis> {
    if config.n < 3 {
        return Err(Error::Config(format!("n = {} must be at least 3 for this command", config.n)));
    }
    ThetaBasis::calibrated(config.n, config.param()?, config.truncation.as_option())
}

fn dispatch(command: &Command, config: &RunConfig) -> Result<Dispatched> {
    let name = command.name();
    let report = match command {
        Command::Embed { point } => embed(name, config, *point)?,
        Command::Section { hyperplane } => section(name, config, hyperplane.as_deref())?,
        Command::DiscriminantDegree { samples } => degree(name, config, *samples)?,
        Command::Multiplicity { stratum, samples } => multiplicity(name, config, *stratum, *samples)?,
        Command::Stratify => stratify(name, config)?,
        Command::DualSextic { svg } => return dual_sextic(name, config, svg.clone()),
        Command::FiberType { hyperplane, kind } => fiber_type(name, config, hyperplane.as_deref(), *kind)?,
        Command::Classify => classify(name, config)?,
        Command::JordanBound { max_n } => jordan_bound(name, config, *max_n)?,
    };
    Ok((report, Vec::new()))
}

fn embed(name: &str, config: &RunConfig, point: Option<[f64; 2]>) -> Result<Report> {
    let b = basis(config)?;
    let param = b.param();
    let x = match point {
        Some([a, c]) => param.point(a, c),
        None => param.random_point(&mut ChaCha8Rng::seed_from_u64(config.seed)),
    };
    let image = b.embed(x)?;
    let shifted = [x.z() + 1.0, x.z() + param.tau(), x.z() - param.tau() + 2.0];
    let periodicity = shifted.iter().map(|&z| b.embed_z(z).map(|p| p.distance(&image))).collect::<Result<Vec<_>>>()?;
    let periodicity = periodicity.into_iter().fold(0.0, f64::max);
    let doubled = ThetaBasis::new(b.n(), *param, Some(2 * b.truncation()))?.with_offset(b.offset());
    let truncation_change = doubled.embed(x)?.distance(&image);
    let result = json!({
        "point": x,
        "lattice_coords": param.coords(x.z()),
        "image": image,
        "truncation": b.truncation(),
        "offset": b.offset(),
    });
    let claims = vec![
        Claim::below("the image is unchanged by lattice translations of the point", 1e-10, periodicity),
        Claim::below("doubling the series truncation leaves the image unchanged", 1e-12, truncation_change),
    ];
    Ok(Report::new(name, config, &result, claims))
}

fn section(name: &str, config: &RunConfig, hyperplane: Option<&str>) -> Result<Report> {
    let b = basis(config)?;
    let h = match hyperplane {
        Some(s) => parse_hyperplane(s)?,
        None => Hyperplane::random(b.n(), &mut ChaCha8Rng::seed_from_u64(config.seed)),
    };
    let zeros = discriminant::hyperplane_section(&h, &b)?;
    let param = b.param();
    let abel = param.distance(zeros.abel_sum(param), param.zero());
    let result = json!({ "hyperplane": h, "zeros": zeros, "abel_sum_distance": abel });
    let claims = vec![
        Claim::equal("a hyperplane meets the curve in n points counted with multiplicity", b.n(), zeros.degree()),
        Claim::below("the points of a hyperplane section sum to zero on the curve", 1e-7, abel),
    ];
    Ok(Report::new(name, config, &result, claims))
}

fn degree(name: &str, config: &RunConfig, samples: usize) -> Result<Report> {
    let b = basis(config)?;
    let probes: Vec<_> = (0..samples.max(1) as u64)
        .into_par_iter()
        .map(|i| discriminant::discriminant_degree_probe(&b, config.seed.wrapping_add(i)))
        .collect::<Result<_>>()?;
    let degrees: Vec<usize> = probes.iter().map(|p| p.degree).collect();
    let n = b.n();
    let result: serde_json::Value = if probes.len() == 1 { degrees[0].into() } else { json!(degrees) };
    let mut claims: Vec<Claim> = probes
        .iter()
        .map(|p| Claim::equal("a generic pencil contains exactly 2n hyperplanes tangent to the curve", 2 * n, p.degree))
        .collect();
    claims.extend(
        probes
            .iter()
            .map(|p| Claim::equal("the ramification divisor of a generic projection to a line has degree 2n", 2 * n, p.ramification_total)),
    );
    Ok(Report::new(name, config, &result, claims).with_expected(&(2 * n)).with_details(&json!({ "probes": probes })))
}

fn sample_tangent(b: &ThetaBasis, rng: &mut ChaCha8Rng) -> Result<Hyperplane> {
    let param = b.param();
    let mut last = Error::Degenerate("no sample drawn".into());
    for _ in 0..discriminant::RESAMPLE_LIMIT {
        let xs: Vec<_> = (0..b.n() - 2).map(|_| param.random_point(rng)).collect();
        let branch = rng.random_range(0..4);
        match discriminant::sample_d_tilde(&xs, branch, b) {
            Ok(h) => return Ok(h),
            Err(e @ Error::Degenerate(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn multiplicity(name: &str, config: &RunConfig, stratum: Stratum, samples: usize) -> Result<Report> {
    let b = basis(config)?;
    let n = b.n();
    let torsion = b.param().torsion_points(n)?;
    let rows: Vec<_> = (0..samples.max(1) as u64)
        .into_par_iter()
        .map(|i| -> Result<_> {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(i));
            let h = match stratum {
                Stratum::Generic => sample_tangent(&b, &mut rng)?,
                Stratum::Top => b.osculating_hyperplane(torsion[i as usize % torsion.len()])?,
            };
            let (_, partition) = discriminant::in_discriminant(&h, &b, DEFAULT_CLUSTERING_TOL)?;
            let probe = discriminant::multiplicity_probe(&h, &b, rng.random())?;
            Ok((h, partition, probe))
        })
        .collect::<Result<_>>()?;
    let claims = rows
        .iter()
        .map(|(_, partition, probe)| {
            Claim::equal("a point of the discriminant with r distinct section points has multiplicity n - r", n - partition.len(), probe.multiplicity)
        })
        .collect();
    let result: Vec<_> = rows
        .iter()
        .map(|(h, partition, probe)| json!({ "hyperplane": h, "partition": partition.parts(), "probe": probe }))
        .collect();
    Ok(Report::new(name, config, &result, claims))
}

fn stratify(name: &str, config: &RunConfig) -> Result<Report> {
    let b = basis(config)?;
    let n = b.n();
    let report = discriminant::top_stratum(&b, config.seed)?;
    let claims = vec![
        Claim::equal("the deepest stratum has n^2 points", n * n, report.points.len()),
        Claim::equal("each osculating hyperplane has multiplicity n - 1", vec![n - 1; n * n], report.multiplicities.clone()),
        Claim::equal("the deepest stratum spans the dual space", n, report.span_rank),
    ];
    Ok(Report::new(name, config, &report, claims))
}

fn dual_sextic(name: &str, config: &RunConfig, svg: Option<PathBuf>) -> Result<Dispatched> {
    if config.n != 3 {
        return Err(Error::Config(format!("dual-sextic needs n = 3, got {}", config.n)));
    }
    let b = basis(config)?;
    let s = sextic::dual_sextic(&b, config.seed)?;
    let match_distance = s.singular_points.iter().map(|p| p.top_stratum_distance).fold(0.0, f64::max);
    let mut matched = vec![false; s.top_stratum.len()];
    for p in &s.singular_points {
        if let Some(i) = (0..s.top_stratum.len()).find(|&i| s.top_stratum[i].distance(&p.point) < 1e-6) {
            matched[i] = true;
        }
    }
    let claims = vec![
        Claim::below("the discriminant of a plane cubic satisfies a sextic equation", 1e-7, s.fit_residual),
        Claim::above("no quintic vanishes on the discriminant", 1e-3, s.degree5_residual),
        Claim::equal("the discriminant curve has 9 singular points", 9, s.singular_points.len()),
        Claim::equal("every singular point is a cusp", 9, s.cusp_count),
        Claim::below("the cusps are the osculating hyperplanes at 3-torsion points", 1e-6, match_distance),
        Claim::equal("every osculating hyperplane at a 3-torsion point is a cusp", 9, matched.iter().filter(|&&m| m).count()),
        Claim::equal("the discriminant curve has geometric genus 1", 1, s.geometric_genus),
    ];
    let files = svg.map(|p| (p, sextic::render_svg(&s, 96, 2.0))).into_iter().collect();
    Ok((Report::new(name, config, &s, claims), files))
}

fn fiber_type(name: &str, config: &RunConfig, hyperplane: Option<&str>, kind: HyperplaneKind) -> Result<Report> {
    let b = basis(config)?;
    let n = b.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (h, expected) = match (hyperplane, kind) {
        (Some(s), _) => (parse_hyperplane(s)?, None),
        (None, HyperplaneKind::Generic) => (Hyperplane::random(n, &mut rng), Some(vec![1; n])),
        (None, HyperplaneKind::Tangent) => {
            let mut parts = vec![2];
            parts.extend(std::iter::repeat_n(1, n - 2));
            (sample_tangent(&b, &mut rng)?, Some(parts))
        }
        (None, HyperplaneKind::Osculating) => (b.osculating_hyperplane(b.param().zero())?, Some(vec![n])),
    };
    let fiber = discriminant::fiber_report(&h, &b)?;
    let mut claims = vec![Claim::equal("the section multiplicities add up to n", n, fiber.partition.total())];
    if let Some(parts) = expected {
        claims.push(Claim::equal("the multiplicity partition matches the construction", parts, fiber.partition.parts().to_vec()));
    }
    Ok(Report::new(name, config, &json!({ "hyperplane": h, "fiber": fiber }), claims))
}

fn classify(name: &str, config: &RunConfig) -> Result<Report> {
    let param = config.param()?;
    let pt = |[re, im]: [f64; 2]| param.reduce(Complex64::new(re, im));
    let spec = config.l.ok_or_else(|| Error::Config("classify needs `L` in the configuration".into()))?;
    let comps = config.components.as_ref().ok_or_else(|| Error::Config("classify needs `components`".into()))?;
    let l = DivisorClass::new(spec.degree, pt(spec.aj)?);
    let z = CurveInProduct::new(comps.iter().map(|c| Ok(AffineEndo::new(c.m, pt(c.t)?))).collect::<Result<_>>()?)?;
    let verdict = classifier::classify(&z, &l, &param)?;
    let reversed: Vec<usize> = (0..z.n()).rev().collect();
    let permuted = classifier::classify(&z.permuted(&reversed)?, &l, &param)?;
    let shift = param.random_point(&mut ChaCha8Rng::seed_from_u64(config.seed));
    let moved = classifier::classify(&z.reparametrize(shift, &param), &l, &param)?;
    let mut claims = vec![
        Claim::equal("the verdict does not depend on the order of the factors", verdict.case, permuted.case),
        Claim::equal("the verdict does not depend on the parametrization of the curve", verdict.case, moved.case),
    ];
    if let Some(expected) = config.expected {
        claims.push(Claim::equal("the verdict matches the expected case", expected, verdict.case));
    }
    Ok(Report::new(name, config, &verdict, claims))
}

fn jordan_bound(name: &str, config: &RunConfig, max_n: Option<u64>) -> Result<Report> {
    let n0 = config.n as u64;
    let n1 = max_n.unwrap_or(n0);
    if n1 < n0 {
        return Err(Error::Config(format!("--max-n {n1} is below n = {n0}")));
    }
    let reports: Vec<jordan::BoundReport> = (n0..=n1).map(jordan::jordan_upper_bound).collect::<Result<_>>()?;
    let claims = reports
        .iter()
        .map(|r| Claim::equal(&format!("both closed forms of the bound agree for n = {}", r.n), true, r.forms_agree))
        .collect();
    let mut report = if reports.len() == 1 {
        Report::new(name, config, &reports[0], claims)
    } else {
        Report::new(name, config, &reports, claims)
    };
    let mut table = String::from("n\td\tgamma_bound\tjordan_bound\tnote\n");
    for r in &reports {
        table.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.n, r.d, r.gamma_bound, r.jordan_bound, r.validity_note));
    }
    report.table = Some(table);
    Ok(report)
}

/// Runs a command on an explicit configuration (used by tests and bindings).
pub fn report_for(command: &Command, config: &RunConfig) -> Result<Report> {
    dispatch(command, config).map(|(r, _)| r)
}

/// Default configuration for a given `tau`, `n` and seed.
pub fn config_for(tau: Complex64, n: usize, seed: u64) -> Result<RunConfig> {
    RunConfig::resolve(ConfigFile { tau: Some([tau.re, tau.im]), n: Some(n), seed: Some(seed), ..Default::default() })
}
