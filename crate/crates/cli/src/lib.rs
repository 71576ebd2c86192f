//! Command-line front end. [`run`] parses arguments, calls the library and
//! returns the rendered output together with the exit status.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conicinv_core::conjugacy::{decide_equivalent, decide_up_to_mobius, ConjugacyError};
use conicinv_core::family::{corollary_demo, FamilyError};
use conicinv_core::invariants::{classify, fixed_curve_cb, fixed_curve_dj, real_locus};
use conicinv_core::models::{
    is_iskovskikh_normal_form, mk_conic_bundle, mk_dejonquieres, validate_conic_bundle, ConicBundleModel,
};
use conicinv_core::projmaps::{HomMap, Image, ProjPoint};
use conicinv_core::{InvariantError, Rat, RatPoly};

pub mod json;
pub mod selfcheck;

use json::{ModelInputError, ModelJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "conicinv",
    version,
    about = "Invariants and equivalence of real conic-bundle involutions"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a model A x^2 + B xy + C y^2 = H z^2 is valid.
    Validate(ModelSource),
    /// Fixed curve, real locus and class of a model.
    Invariants {
        #[command(flatten)]
        model: ModelSource,
        /// Cross-check the real locus at this many random points (0 = off).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// De Jonquieres or d-twisted Iskovskikh label of a model.
    Classify(ModelSource),
    /// Decide equivalence of two models given as JSON files.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Also search rational changes of the base coordinate.
        #[arg(long)]
        up_to_mobius: bool,
    },
    /// Pairwise comparison of x^2 + f y^2 = -(t-a)(t-b) z^2 over parameter pairs.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Pairs as "a1,b1;a2,b2;...".
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
    },
    /// Evaluate and compose plane maps.
    Cremona {
        #[arg(long, value_enum, default_value_t = MapName::Cremona)]
        map: MapName,
        /// Image of a point such as "1,2,3".
        #[arg(long, allow_hyphen_values = true)]
        apply: Option<String>,
        /// Print map ∘ other.
        #[arg(long, value_enum)]
        compose: Option<MapName>,
        #[arg(long)]
        base_points: bool,
        /// Check m(m(p)) = p on random points.
        #[arg(long)]
        check_involution: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Invariants of the model xy = f(z, t).
    Dejonquieres {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(Args, Debug)]
struct ModelSource {
    /// JSON model file {"A": .., "B": .., "C": .., "H": ..}; overrides the flags.
    file: Option<PathBuf>,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true, default_value = "0")]
    b: String,
    #[arg(long = "C", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long = "H", allow_hyphen_values = true)]
    h: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapName {
    /// [yz:xz:xy]
    Cremona,
    /// [x:y:-z]
    Linear,
    /// [y:z:x]
    Cyclic,
    Identity,
}

impl MapName {
    fn build(self) -> HomMap {
        match self {
            MapName::Cremona => HomMap::standard_cremona(),
            MapName::Linear => HomMap::linear_involution(),
            MapName::Cyclic => HomMap::cyclic_permutation(),
            MapName::Identity => HomMap::identity(),
        }
    }
}

/// Exit status plus everything to print.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

struct Out {
    json: bool,
    text: String,
    value: Value,
    code: i32,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn block(&mut self, s: impl std::fmt::Display) {
        let _ = write!(self.text, "{s}");
        if !self.text.ends_with('\n') {
            self.text.push('\n');
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    let mut out = Out {
        json: cli.json,
        text: String::new(),
        value: Value::Null,
        code: EXIT_OK,
    };
    match dispatch(cli.command, &mut out) {
        Ok(()) => Outcome {
            code: out.code,
            stdout: if out.json {
                format!("{}\n", serde_json::to_string_pretty(&out.value).expect("serializable"))
            } else {
                out.text
            },
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Invalid(msg)) => Outcome {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn parse_poly(field: &str, s: &str) -> Result<RatPoly, Failure> {
    s.parse()
        .map_err(|e| Failure::Usage(format!("malformed polynomial for {field} ({s:?}): {e}")))
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    let p = parse_poly("parameter", s)?;
    match p.degree() {
        None => Ok(Rat::from_integer(0.into())),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(Failure::Usage(format!("{s:?} is not a rational number"))),
    }
}

fn read_model_json(path: &Path) -> Result<ModelJson, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed model file {}: {e}", path.display())))
}

impl ModelSource {
    fn to_json(&self) -> Result<ModelJson, Failure> {
        if let Some(path) = &self.file {
            return read_model_json(path);
        }
        let need = |v: &Option<String>, name: &str| {
            v.clone()
                .ok_or_else(|| Failure::Usage(format!("missing --{name} (or give a model file)")))
        };
        Ok(ModelJson {
            a: need(&self.a, "A")?,
            b: self.b.clone(),
            c: need(&self.c, "C")?,
            h: need(&self.h, "H")?,
        })
    }
}

fn polys_of(mj: &ModelJson) -> Result<[RatPoly; 4], Failure> {
    mj.polys().map_err(|e| match e {
        ModelInputError::Parse { field, err } => Failure::Usage(format!("malformed polynomial for {field}: {err}")),
        ModelInputError::Invalid(_) => unreachable!("parsing only"),
    })
}

/// Builds a model, or renders the validation report and sets exit status 1.
fn load_model(mj: &ModelJson, out: &mut Out) -> Result<Option<ConicBundleModel>, Failure> {
    let [a, b, c, h] = polys_of(mj)?;
    match mk_conic_bundle(a, b, c, h) {
        Ok(m) => Ok(Some(m)),
        Err(report) => {
            out.code = EXIT_INVALID;
            out.value = json!({ "model": mj, "validation": json::report(&report) });
            out.line("invalid model");
            out.block(&report);
            Ok(None)
        }
    }
}

fn model_line(m: &ConicBundleModel) -> String {
    format!("model: {m}")
}

fn dispatch(cmd: Command, out: &mut Out) -> Result<(), Failure> {
    match cmd {
        Command::Validate(src) => cmd_validate(&src.to_json()?, out),
        Command::Invariants { model, samples, seed } => cmd_invariants(&model.to_json()?, samples, seed, out),
        Command::Classify(src) => cmd_classify(&src.to_json()?, out),
        Command::Compare {
            first,
            second,
            up_to_mobius,
        } => cmd_compare(&read_model_json(&first)?, &read_model_json(&second)?, up_to_mobius, out),
        Command::Family { f, pairs } => cmd_family(&f, &pairs, out),
        Command::Cremona {
            map,
            apply,
            compose,
            base_points,
            check_involution,
            samples,
            seed,
        } => cmd_cremona(
            map,
            apply,
            compose,
            base_points,
            check_involution.then_some((samples, seed)),
            out,
        ),
        Command::Dejonquieres { f } => cmd_dejonquieres(&f, out),
    }
}

fn cmd_validate(mj: &ModelJson, out: &mut Out) -> Result<(), Failure> {
    let [a, b, c, h] = polys_of(mj)?;
    let report = validate_conic_bundle(&a, &b, &c, &h);
    let mut value = json!({ "model": mj, "validation": json::report(&report) });
    out.line(format!("A = {a}, B = {b}, C = {c}, H = {h}"));
    out.block(&report);
    if let Ok(m) = mk_conic_bundle(a, b, c, h) {
        let nf = is_iskovskikh_normal_form(&m);
        out.line("Iskovskikh normal form:");
        out.block(&nf);
        value["normal_form"] = json::report(&nf);
    } else {
        out.code = EXIT_INVALID;
    }
    out.value = value;
    Ok(())
}

fn cmd_invariants(mj: &ModelJson, samples: usize, seed: u64, out: &mut Out) -> Result<(), Failure> {
    let Some(m) = load_model(mj, out)? else {
        return Ok(());
    };
    let curve = fixed_curve_cb(&m);
    let locus = real_locus(&m);
    out.line(model_line(&m));
    out.line(format!("fixed curve: {curve}"));
    out.line(format!("real locus: {locus}"));
    let mut value = json!({
        "model": ModelJson::from_model(&m),
        "fixed_curve": json::fixed_curve(&curve),
        "real_locus": json::locus(&locus),
    });
    match classify(&m) {
        Ok(label) => {
            out.line(format!("class: {label}"));
            value["class"] = json!(label.to_string());
        }
        Err(e) => {
            out.line(format!("class: unavailable ({})", first_line(&e.to_string())));
            value["class"] = Value::Null;
        }
    }
    if samples > 0 {
        let check = selfcheck::check_locus(&m, &locus, samples, seed);
        out.line(format!(
            "self-check (seed {seed}): {} of {} samples agree with the floating-point oracle, {} near endpoints skipped",
            check.agree, check.samples, check.skipped
        ));
        for t in &check.disagreements {
            out.line(format!("  disagreement at t ≈ {t}"));
        }
        value["self_check"] = json!({
            "seed": seed,
            "samples": check.samples,
            "agree": check.agree,
            "skipped": check.skipped,
            "disagreements": check.disagreements,
        });
        if !check.disagreements.is_empty() {
            out.code = EXIT_INVALID;
        }
    }
    out.value = value;
    Ok(())
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn cmd_classify(mj: &ModelJson, out: &mut Out) -> Result<(), Failure> {
    let Some(m) = load_model(mj, out)? else {
        return Ok(());
    };
    out.line(model_line(&m));
    match classify(&m) {
        Ok(label) => {
            out.line(format!("class: {label}"));
            out.value = json!({ "model": mj, "class": label.to_string() });
        }
        Err(InvariantError::NotNormalForm(report)) => {
            out.code = EXIT_INVALID;
            out.line("not in Iskovskikh normal form:");
            out.block(&report);
            out.value = json!({ "model": mj, "class": Value::Null, "normal_form": json::report(&report) });
        }
        Err(e) => return Err(Failure::Invalid(e.to_string())),
    }
    Ok(())
}

fn cmd_compare(m1: &ModelJson, m2: &ModelJson, up_to_mobius: bool, out: &mut Out) -> Result<(), Failure> {
    let Some(a) = load_model(m1, out)? else {
        return Ok(());
    };
    let Some(b) = load_model(m2, out)? else {
        return Ok(());
    };
    let result = if up_to_mobius {
        decide_up_to_mobius(&a, &b)
    } else {
        decide_equivalent(&a, &b)
    };
    match result {
        Ok(d) => {
            out.line(format!("first:  {a}"));
            out.line(format!("second: {b}"));
            out.block(&d);
            out.value = json!({ "first": m1, "second": m2, "decision": json::decision(&d) });
        }
        Err(ConjugacyError::NotNormalForm { which, report }) => {
            out.code = EXIT_INVALID;
            out.line(format!("model {which} is not in Iskovskikh normal form:"));
            out.block(&report);
            out.value = json!({ "error": "not_normal_form", "which": which, "normal_form": json::report(&report) });
        }
    }
    Ok(())
}

fn parse_pairs(s: &str) -> Result<Vec<(Rat, Rat)>, Failure> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let parts: Vec<&str> = p.split(',').collect();
            if parts.len() != 2 {
                return Err(Failure::Usage(format!("pair {p:?} must be \"a,b\"")));
            }
            Ok((parse_rat(parts[0].trim())?, parse_rat(parts[1].trim())?))
        })
        .collect()
}

fn cmd_family(f: &str, pairs: &str, out: &mut Out) -> Result<(), Failure> {
    let f = parse_poly("f", f)?;
    let pairs = parse_pairs(pairs)?;
    match corollary_demo(&f, &pairs) {
        Ok(r) => {
            out.block(&r);
            out.value = json::corollary(&r);
        }
        Err(FamilyError::InvalidInput(report)) => {
            out.code = EXIT_INVALID;
            out.line(format!("f = {f} is not admissible:"));
            out.block(&report);
            out.value = json!({ "f": f.to_string(), "validation": json::report(&report) });
        }
        Err(e @ FamilyError::EmptyDemo) => return Err(Failure::Invalid(e.to_string())),
    }
    Ok(())
}

fn cmd_cremona(
    name: MapName,
    apply: Option<String>,
    compose: Option<MapName>,
    base_points: bool,
    involution: Option<(usize, u64)>,
    out: &mut Out,
) -> Result<(), Failure> {
    let map = name.build();
    let mut value = json!({ "map": map.to_string() });
    let mut acted = false;
    if let Some(p) = apply {
        acted = true;
        let p: ProjPoint = p.parse().map_err(Failure::Usage)?;
        match map.apply(&p) {
            Image::Point(q) => {
                out.line(q.to_string());
                value["image"] = json!(q.to_string());
            }
            Image::BasePoint => {
                out.code = EXIT_INVALID;
                out.line(format!("{p} is a base point"));
                value["image"] = Value::Null;
            }
        }
    }
    if let Some(other) = compose {
        acted = true;
        let c = map
            .compose(&other.build())
            .map_err(|e| Failure::Invalid(e.to_string()))?;
        out.line(c.to_string());
        value["composition"] = json!(c.to_string());
    }
    if base_points {
        acted = true;
        let pts: Vec<String> = map.base_points().iter().map(ToString::to_string).collect();
        out.line(format!(
            "base points: {}",
            if pts.is_empty() {
                "none".to_string()
            } else {
                pts.join(" ")
            }
        ));
        value["base_points"] = json!(pts);
    }
    if let Some((n, seed)) = involution {
        acted = true;
        let pts = selfcheck::random_points(n, seed);
        let ok = map
            .check_involution(&pts)
            .map_err(|e| Failure::Invalid(e.to_string()))?;
        out.line(format!("involution on {n} random points (seed {seed}): {ok}"));
        value["involution"] = json!({ "samples": n, "seed": seed, "holds": ok });
    }
    if !acted {
        out.line(map.to_string());
    }
    out.value = value;
    Ok(())
}

fn cmd_dejonquieres(f: &str, out: &mut Out) -> Result<(), Failure> {
    let f = parse_poly("f", f)?;
    match mk_dejonquieres(f.clone()) {
        Ok(m) => {
            let curve = fixed_curve_dj(&m);
            out.line(format!("xy = f(z, t) with f = {f}, d = {}", m.d()));
            out.line(format!("fixed curve: {curve}"));
            out.value = json!({ "f": f.to_string(), "d": m.d(), "fixed_curve": json::fixed_curve(&curve) });
        }
        Err(report) => {
            out.code = EXIT_INVALID;
            out.line(format!("f = {f} does not define a de Jonquieres model:"));
            out.block(&report);
            out.value = json!({ "f": f.to_string(), "validation": json::report(&report) });
        }
    }
    Ok(())
}
