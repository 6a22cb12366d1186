//! Command-line front end for the `jacpoisson` engine.
//!
//! Every subcommand prints one JSON document (or, with `--text`, a short
//! human summary). Exit codes: 0 success, 1 domain error, 2 usage error.

mod encode;
mod input;

use clap::{Args, Parser, Subcommand};
use jacpoisson::cohomology::{
    cohomology_dims, mon_pi, poincare_dual_image, thom_top_image, DEFAULT_BLOCK_CAP,
};
use jacpoisson::mapping_class::{
    genus_reduction, hurwitz_check, parse_curve, twist_power, word_matrix,
};
use jacpoisson::poisson::{
    is_casimir, jacobi_check, modular_rot_formula, modular_vf, region_glue_check, Region, RegionWeights,
};
use jacpoisson::singularity::{classify_point, singular_locus};
use jacpoisson::{H1Lattice, LeafTubeData, TwistWord, VolumeForm, WeightVector};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "jacpoisson", version, about = "Jacobian Poisson structures, their cohomology and fibration data")]
struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

/// A bivector, either from Casimirs `F, G` and factor `k` or from raw terms.
#[derive(Args, Debug, Clone)]
pub struct BivectorArgs {
    /// First Casimir F.
    #[arg(short = 'F', long = "first", allow_hyphen_values = true)]
    first: Option<String>,
    /// Second Casimir G.
    #[arg(short = 'G', long = "second", allow_hyphen_values = true)]
    second: Option<String>,
    /// Conformal factor k.
    #[arg(short = 'k', long = "factor", default_value = "1", allow_hyphen_values = true)]
    factor: String,
    /// Hand-entered component "i,j:expr" (0-based, t=0 x=1 y=2 z=3); repeatable.
    #[arg(long, allow_hyphen_values = true)]
    term: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GermArgs {
    /// Normal form: fold, cusp or lefschetz.
    #[arg(long)]
    germ: Option<String>,
    /// Sign pattern, e.g. "-1,1,1" for a fold.
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Deformation: birth, merging, flipping or wrinkling.
    #[arg(long = "move")]
    r#move: Option<String>,
    /// Deformation parameter.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f2: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct TubeArgs {
    /// First transverse 1-form as "dt,dx,dy,dz" coefficients.
    #[arg(long, allow_hyphen_values = true)]
    t1: String,
    #[arg(long, allow_hyphen_values = true)]
    t2: String,
    /// Leaf volume form as ";"-separated "i,j:expr" terms.
    #[arg(long, default_value = "0,1:1", allow_hyphen_values = true)]
    vol: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the Jacobian Poisson bivector.
    Bivector(BivectorArgs),
    /// Check the Jacobi identity [pi, pi] = 0.
    Jacobi(BivectorArgs),
    /// Check whether a function is a Casimir.
    Casimir {
        #[command(flatten)]
        pi: BivectorArgs,
        #[arg(short = 'f', long = "function", allow_hyphen_values = true)]
        function: String,
    },
    /// Modular vector field by definition and by the curl formula.
    Modular {
        #[command(flatten)]
        pi: BivectorArgs,
        /// Volume factor m of (1/m) vol; defaults to k.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Truncated Poisson cohomology dimensions.
    Cohomology {
        #[command(flatten)]
        pi: BivectorArgs,
        #[arg(long, default_value = "1,1,1,1")]
        weights: String,
        #[arg(long, allow_hyphen_values = true)]
        cutoff: i64,
        #[arg(long, default_value_t = DEFAULT_BLOCK_CAP)]
        cap: usize,
    },
    /// Singular locus of a map germ.
    Locus(GermArgs),
    /// Classify a point of the singular locus.
    Classify {
        #[command(flatten)]
        germ: GermArgs,
        /// Point "t,x,y,z" with rational entries.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Dehn twist matrix on first homology.
    Twist {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// Use the inverse twist.
        #[arg(long)]
        inverse: bool,
    },
    /// Matrix of a product of twists, e.g. "1,0;0,1^-1".
    Word {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Check the global relation of a Hurwitz system.
    Hurwitz {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Surgery along a curve: map to the lattice of genus one less.
    Reduce {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Poincare dual (or top-degree Thom) image of a leaf.
    Thom {
        #[command(flatten)]
        pi: BivectorArgs,
        #[command(flatten)]
        tube: TubeArgs,
        /// Top-degree image instead of the Poincare dual.
        #[arg(long)]
        top: bool,
    },
    /// Monodromy image of a first-homology class.
    Monpi {
        #[command(flatten)]
        pi: BivectorArgs,
        #[command(flatten)]
        tube: TubeArgs,
        #[arg(long)]
        genus: usize,
        /// Monodromy as a twist word; empty for the identity.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// One 1-form per lattice basis element, ";"-separated, each "dt,dx,dy,dz".
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
    },
    /// Glue region-wise bivectors against a base structure.
    Glue {
        #[command(flatten)]
        base: BivectorArgs,
        /// Piece "REGION=i,j:expr;i,j:expr"; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        piece: Vec<String>,
        /// Declare that U_C and U_Gamma overlap.
        #[arg(long)]
        overlap: bool,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(jacpoisson::Error),
}

impl From<jacpoisson::Error> for Failure {
    fn from(e: jacpoisson::Error) -> Self {
        Failure::Domain(e)
    }
}

/// Exit status and everything written to standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

struct Output {
    json: Value,
    text: String,
}

fn domain<E: Into<jacpoisson::Error>>(e: E) -> Failure {
    Failure::Domain(e.into())
}

fn lattice(genus: usize) -> Result<H1Lattice, Failure> {
    if genus == 0 {
        return Err(domain(jacpoisson::error::LatticeError::ZeroGenus));
    }
    Ok(H1Lattice::new(genus))
}

fn curve(text: &str) -> Result<Vec<i64>, Failure> {
    parse_curve(text).map_err(Failure::Usage)
}

fn word(text: &str) -> Result<TwistWord, Failure> {
    TwistWord::parse(text).map_err(Failure::Usage)
}

fn tube(args: &TubeArgs) -> Result<LeafTubeData, Failure> {
    LeafTubeData::new(input::one_form(&args.t1)?, input::one_form(&args.t2)?, input::form_terms(&args.vol, 2)?)
        .map_err(domain)
}

fn execute(command: &Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Bivector(b) => {
            let pi = input::bivector(b)?;
            let mut json = encode::bivector(&pi);
            json["is_zero"] = json!(pi.is_zero());
            Output { json, text: pi.to_string() }
        }
        Command::Jacobi(b) => {
            let pi = input::bivector(b)?;
            let jac = jacobi_check(&pi);
            let text = if jac.is_zero() {
                "Poisson: [pi, pi] = 0".to_string()
            } else {
                format!("not Poisson: [pi, pi] = {jac}")
            };
            Output {
                json: json!({"is_poisson": jac.is_zero(), "obstruction": encode::terms(&jac)}),
                text,
            }
        }
        Command::Casimir { pi, function } => {
            let pi = input::bivector(pi)?;
            let f = input::expr(function)?;
            let yes = is_casimir(&pi, &f);
            Output {
                json: json!({"function": f.to_string(), "is_casimir": yes}),
                text: format!("{f} is {}a Casimir", if yes { "" } else { "not " }),
            }
        }
        Command::Modular { pi: b, mu } => {
            let pi = input::bivector(b)?;
            let k = input::expr(mu.as_deref().unwrap_or(&b.factor))?;
            let mu = VolumeForm::new(k).map_err(domain)?;
            let definition = modular_vf(&pi, &mu);
            let mut json = json!({
                "volume": {"k": mu.factor().to_string(), "nonvanishing": mu.status().label()},
                "definition": encode::vector_field(&definition),
                "unimodular": definition.is_zero(),
            });
            let mut text = format!("Z = {definition}");
            match modular_rot_formula(&pi, &mu) {
                Ok(r) => {
                    json["rot_formula"] = encode::vector_field(&r.rot_formula);
                    json["agree"] = json!(r.agree);
                    json["agree_up_to_sign"] = json!(r.agree_up_to_sign);
                    text.push_str(&format!("\ncurl formula: {}\nagree: {}", r.rot_formula, r.agree));
                }
                Err(e) => {
                    json["rot_formula"] = Value::Null;
                    json["rot_formula_error"] = json!(e.to_string());
                }
            }
            Output { json, text }
        }
        Command::Cohomology { pi, weights, cutoff, cap } => {
            let pi = input::bivector(pi)?;
            let w = input::integers(weights)?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Failure::Usage(format!("weight {x} out of range"))))
                .collect::<Result<Vec<_>, _>>()?;
            let w = WeightVector::new(w).map_err(domain)?;
            let r = cohomology_dims(&pi, &w, *cutoff, *cap).map_err(domain)?;
            let mut text: Vec<String> = r
                .blocks
                .iter()
                .map(|b| format!("H^{} degree {}: {} (ker {}, im {})", b.p, b.d, b.h, b.ker, b.im))
                .collect();
            text.extend(r.flags.iter().map(|f| format!("note: {f}")));
            Output {
                json: encode::cohomology(&r),
                text: text.join("\n"),
            }
        }
        Command::Locus(g) => {
            let germ = input::germ(g)?;
            let l = singular_locus(&germ);
            let gens: Vec<String> = l.generators.iter().map(ToString::to_string).collect();
            let text = format!("germ {germ}\ngenerators: {}\n{} sample points", gens.join(", "), l.samples.len());
            Output {
                json: encode::locus(&germ, &l),
                text,
            }
        }
        Command::Classify { germ, point } => {
            let germ = input::germ(germ)?;
            let p = input::rationals(point)?;
            let class = classify_point(&germ, &p).map_err(domain)?;
            Output {
                json: json!({"germ": encode::germ(&germ), "point": encode::point(&p), "class": class.name()}),
                text: class.name().to_string(),
            }
        }
        Command::Twist { genus, curve: c, inverse } => {
            let l = lattice(*genus)?;
            let m = twist_power(&l, &curve(c)?, if *inverse { -1 } else { 1 }).map_err(domain)?;
            Output { json: json!({"matrix": encode::matrix(&m)}), text: m.to_string() }
        }
        Command::Word { genus, word: w } => {
            let l = lattice(*genus)?;
            let m = word_matrix(&l, &word(w)?).map_err(domain)?;
            Output { json: json!({"matrix": encode::matrix(&m)}), text: m.to_string() }
        }
        Command::Hurwitz { genus, word: w, curve: c } => {
            let l = lattice(*genus)?;
            let r = hurwitz_check(&l, &word(w)?, &curve(c)?).map_err(domain)?;
            let text = format!(
                "{}\nfixes c: {}\nequals +-T_c: {}",
                r.matrix, r.fixes_c, r.equals_pm_twist_c
            );
            Output {
                json: json!({
                    "matrix": encode::matrix(&r.matrix),
                    "fixes_c": r.fixes_c,
                    "equals_pm_twist_c": r.equals_pm_twist_c,
                }),
                text,
            }
        }
        Command::Reduce { genus, curve: c } => {
            let l = lattice(*genus)?;
            let r = genus_reduction(&l, &curve(c)?).map_err(domain)?;
            Output {
                json: json!({"partner": r.d, "complement_basis": r.complement_basis, "matrix": encode::matrix(&r.matrix)}),
                text: r.matrix.to_string(),
            }
        }
        Command::Thom { pi, tube: t, top } => {
            let pi = input::bivector(pi)?;
            let tube = tube(t)?;
            let img = if *top { thom_top_image(&pi, &tube) } else { poincare_dual_image(&pi, &tube) };
            Output { json: encode::image(&img), text: img.to_string() }
        }
        Command::Monpi { pi, tube: t, genus, word: w, alpha, basis } => {
            let pi = input::bivector(pi)?;
            let tube = tube(t)?;
            let l = lattice(*genus)?;
            let mono = word_matrix(&l, &word(w)?).map_err(domain)?;
            let forms = basis
                .split(';')
                .map(input::one_form)
                .collect::<Result<Vec<_>, _>>()?;
            let img = mon_pi(&pi, &tube, &input::integers(alpha)?, &mono, &forms).map_err(domain)?;
            Output { json: encode::image(&img), text: img.to_string() }
        }
        Command::Glue { base, piece, overlap } => {
            let base = input::bivector(base)?;
            let mut pieces = Vec::new();
            for p in piece {
                let (region, terms) = p
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("piece '{p}' must look like 'REGION=i,j:expr;...'")))?;
                let region = Region::parse(region.trim()).map_err(domain)?;
                let args = BivectorArgs {
                    first: None,
                    second: None,
                    factor: "1".into(),
                    term: terms.split(';').map(str::to_string).collect(),
                };
                pieces.push((region, input::bivector(&args)?));
            }
            let weights = RegionWeights { uc_meets_ugamma: *overlap };
            let r = region_glue_check(&pieces, &base, &weights).map_err(domain)?;
            let text = format!("({}) * pi_F, {}", r.expression, r.relation);
            Output { json: encode::glue(&r), text }
        }
    })
}

fn envelope(body: Value) -> String {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    match body {
        Value::Object(m) => doc.extend(m),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let mut out = Value::Object(doc).to_string();
    out.push('\n');
    out
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string() };
            }
            let hint = e.render().to_string();
            let body = json!({"error": {"kind": "usage", "message": e.kind().to_string(), "hint": hint.trim_end()}});
            return Outcome { code: 2, stdout: envelope(body) };
        }
    };
    match execute(&cli.command) {
        Ok(out) if cli.text => Outcome { code: 0, stdout: format!("{}\n", out.text) },
        Ok(out) => Outcome { code: 0, stdout: envelope(out.json) },
        Err(Failure::Usage(message)) => {
            let body = json!({"error": {"kind": "usage", "message": message}});
            Outcome { code: 2, stdout: envelope(body) }
        }
        Err(Failure::Domain(e)) => {
            let body = json!({"error": {"kind": "domain", "module": e.module(), "message": e.to_string()}});
            Outcome { code: 1, stdout: envelope(body) }
        }
    }
}
