//! Batch command-line interface: config ingestion, validation, command
//! dispatch and deterministic JSON/table/TSV emission.
//!
//! Exit codes: 0 success, 2 validation or usage error, 3 infeasible or
//! empty query.  Output is byte-for-byte deterministic for fixed input:
//! map keys are emitted in sorted order and all rationals are reduced
//! `"p/q"` strings (integers as plain numbers).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use wallcross::chern::{
    bogomolov_defect, dim_moduli_1dim, dim_stack_lambda, euler_pairing, hilb_length,
    ktheory_hyperplane_rank, ChernVector, Polarization,
};
use wallcross::config;
use wallcross::hilbpoly;
use wallcross::lambdawalls::{
    self, enumerate_walls_lambda, reduction_certificate, CrossingClass, LambdaCodim,
    LambdaWallKind, ReductionKind, SlopeValue, WallLambda,
};
use wallcross::lattice::{DivisorClass, SurfaceGeometry};
use wallcross::rat::{rat_from_str, rat_to_string, Rat};
use wallcross::special52::{
    self, chambers_i0, walls_i0, ChamberInterval, IntervalPosition, NormalizeStep, RaySpec,
};
use wallcross::walls1d::{
    instantiate_walls_1d, CrossingCodim, MoveTag, ParamBox, Wall1D, WallClassFamily, WallKind,
};

#[derive(Parser)]
#[command(name = "wallcross", version, about = "Wall-and-chamber computations for moduli of sheaves on elliptic surfaces", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a surface description and print its derived invariants.
    Validate { surface: PathBuf },
    /// Euler pairing of two invariants.
    Pairing {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dimension formulas, Bogomolov defect and Hilbert length.
    Dim {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        chern: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Wall families (and walls inside an alpha-box) for a 1-dimensional class.
    Walls1d {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        chern: String,
        /// Twist alpha as a JSON array of rationals (default zero).
        #[arg(long)]
        alpha: Option<String>,
        /// Alpha box "lo:hi,lo:hi,..." (one pair per NS coordinate).
        #[arg(long = "box", allow_hyphen_values = true)]
        alpha_box: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Walls on the lambda line below a threshold.
    WallsLambda {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        chern: String,
        #[arg(long)]
        alpha: Option<String>,
        /// Upper end of the window (exclusive), as a rational.
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
        /// Optional lower end of the window (exclusive).
        #[arg(long, allow_hyphen_values = true)]
        lambda_min: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Birational-reduction certificate toward (1, 0, a').
    Reduce {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        chern: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The explicit rank-two picture: walls, chambers, normalization, cones.
    Special {
        #[arg(long)]
        l: i128,
        /// Optional parameter t to normalize into the base interval.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Optional surface (NS = ZH + Zf) for cone rays.
        #[arg(long)]
        surface: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hodge polynomial of Hilb^n x Pic^0 (or of the target of an invariant).
    Hodge {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        n: Option<i128>,
        #[arg(long)]
        chern: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// 0 success; 2 validation/usage; 3 infeasible or empty.
enum Outcome {
    Ok(String),
    Empty(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok(out)) => {
            println!("{out}");
            ExitCode::from(0)
        }
        Ok(Outcome::Empty(out)) => {
            println!("{out}");
            ExitCode::from(3)
        }
        Err(err) => {
            let (code, diag) = classify_error(&err);
            eprintln!("{diag}");
            ExitCode::from(code)
        }
    }
}

fn classify_error(err: &anyhow::Error) -> (u8, String) {
    if let Some(we) = err.downcast_ref::<wallcross::Error>() {
        let code = match we {
            wallcross::Error::Infeasible(_)
            | wallcross::Error::NegativeLength(_) => 3,
            _ => 2,
        };
        let diag = json!({"error": we.to_string()});
        (code, serde_json::to_string(&diag).expect("serializable"))
    } else {
        let diag = json!({"error": err.to_string()});
        (2, serde_json::to_string(&diag).expect("serializable"))
    }
}

fn load_surface(path: &PathBuf) -> anyhow::Result<SurfaceGeometry> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("invalid JSON in {}: {e}", path.display()))?;
    Ok(config::surface_from_json(&value)?)
}

fn parse_chern(text: &str) -> anyhow::Result<ChernVector> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| anyhow::anyhow!("invalid chern JSON: {e}"))?;
    Ok(config::chern_from_json(&value)?)
}

fn parse_alpha(s: &SurfaceGeometry, alpha: &Option<String>) -> anyhow::Result<DivisorClass> {
    match alpha {
        None => Ok(DivisorClass::zero(s.ns_rank)),
        Some(text) => {
            let value: Value = serde_json::from_str(text)
                .map_err(|e| anyhow::anyhow!("invalid alpha JSON: {e}"))?;
            let arr = value
                .as_array()
                .ok_or_else(|| anyhow::anyhow!("alpha must be a JSON array"))?;
            let coords = arr
                .iter()
                .map(config::rat_from_json)
                .collect::<wallcross::Result<Vec<Rat>>>()?;
            Ok(DivisorClass(coords))
        }
    }
}

fn parse_rat_arg(text: &str, what: &str) -> anyhow::Result<Rat> {
    rat_from_str(text).ok_or_else(|| anyhow::anyhow!("cannot parse {what} rational from `{text}`"))
}

fn parse_box(s: &SurfaceGeometry, text: &str) -> anyhow::Result<ParamBox> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for part in text.split(',') {
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| anyhow::anyhow!("box entries must look like lo:hi"))?;
        lo.push(parse_rat_arg(a.trim(), "box lower bound")?);
        hi.push(parse_rat_arg(b.trim(), "box upper bound")?);
    }
    if lo.len() != s.ns_rank {
        anyhow::bail!(
            "box has {} coordinate ranges but ns_rank is {}",
            lo.len(),
            s.ns_rank
        );
    }
    Ok(ParamBox::new(lo, hi)?)
}

fn rat_json(r: &Rat) -> Value {
    config::rat_to_json(r)
}

fn slope_json(v: &SlopeValue) -> Value {
    match v {
        SlopeValue::Infinite => Value::String("-inf".into()),
        SlopeValue::Finite(r) => rat_json(r),
    }
}

fn emit(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Table => render_table(value),
        Format::Tsv => render_table(value),
    }
}

/// Minimal aligned-text rendering of the JSON result (tables are derived
/// from the same deterministic value tree).
fn render_table(value: &Value) -> String {
    let mut out = String::new();
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, val, out);
                }
            }
            Value::Array(items) => {
                if items.iter().all(|i| !i.is_object() && !i.is_array()) {
                    let row: Vec<String> = items.iter().map(scalar_to_string).collect();
                    out.push_str(&format!("{prefix}\t{}\n", row.join("\t")));
                } else {
                    for (i, item) in items.iter().enumerate() {
                        walk(&format!("{prefix}[{i}]"), item, out);
                    }
                }
            }
            scalar => out.push_str(&format!("{prefix}\t{}\n", scalar_to_string(scalar))),
        }
    }
    walk("", value, &mut out);
    out.pop();
    out
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Validate { surface } => {
            let s = load_surface(&surface)?;
            let k = wallcross::lattice::canonical_class(&s);
            let value = json!({
                "status": "ok",
                "ns_rank": s.ns_rank,
                "p_g": s.p_g() as i64,
                "h11": s.h11() as i64,
                "euler_number": s.euler_number() as i64,
                "canonical_coefficient": rat_json(&s.canonical_coefficient()),
                "canonical_class": config::divisor_to_json(&k),
                "multiple_fibers": s.multiple_fibers,
                "fiber_lattices": s.fiber_lattices.iter().map(|l| l.fiber_id.clone()).collect::<Vec<_>>(),
                "surface": config::surface_to_json(&s),
            });
            Ok(Outcome::Ok(emit(&value, Format::Json)))
        }
        Command::Pairing {
            surface,
            e1,
            e2,
            format,
        } => {
            let s = load_surface(&surface)?;
            let e1 = parse_chern(&e1)?;
            let e2 = parse_chern(&e2)?;
            let chi12 = euler_pairing(&s, &e1, &e2)?;
            let chi21 = euler_pairing(&s, &e2, &e1)?;
            let xi12 = s.pair(&e1.xi, &e2.xi)?;
            let value = json!({
                "chi_e1_e2": rat_json(&chi12),
                "chi_e2_e1": rat_json(&chi21),
                "xi1_dot_xi2": rat_json(&xi12),
                "hyperplane_rank": ktheory_hyperplane_rank(&s, &e2).ok(),
            });
            Ok(Outcome::Ok(emit(&value, format)))
        }
        Command::Dim {
            surface,
            chern,
            format,
        } => {
            let s = load_surface(&surface)?;
            let e = parse_chern(&chern)?;
            let mut obj = Map::new();
            obj.insert("chern".into(), config::chern_to_json(&e));
            let signal_empty;
            if e.r == 0 {
                let dim = dim_moduli_1dim(&s, &e)?;
                obj.insert("kind".into(), Value::from("one_dimensional"));
                obj.insert("dim_stack".into(), Value::from(dim as i64));
                obj.insert("dim_moduli".into(), Value::from(dim as i64 + 1));
                signal_empty = dim < 0;
            } else {
                let dim = dim_stack_lambda(&s, &e)?;
                obj.insert("kind".into(), Value::from("positive_rank"));
                obj.insert("dim_stack".into(), Value::from(dim as i64));
                obj.insert("dim_moduli".into(), Value::from(dim as i64 + 1));
                let defect = bogomolov_defect(&s, &e)?;
                obj.insert("bogomolov_defect".into(), rat_json(&defect));
                match hilb_length(&s, &e) {
                    Ok(l) => {
                        obj.insert("hilb_length".into(), Value::from(l as i64));
                    }
                    Err(err) => {
                        obj.insert("hilb_length_error".into(), Value::from(err.to_string()));
                    }
                }
                signal_empty = dim < 0 || defect < Rat::from_integer(0);
            }
            let value = Value::Object(obj);
            if signal_empty {
                Ok(Outcome::Empty(emit(&value, format)))
            } else {
                Ok(Outcome::Ok(emit(&value, format)))
            }
        }
        Command::Walls1d {
            surface,
            chern,
            alpha,
            alpha_box,
            format,
        } => {
            let s = load_surface(&surface)?;
            let e = parse_chern(&chern)?;
            let alpha = parse_alpha(&s, &alpha)?;
            let p = Polarization::new(&s, s.h.clone(), alpha)?;
            match alpha_box {
                None => {
                    let fams = wallcross::walls1d::enumerate_wall_classes_1d(&s, &e, true)?;
                    let rows: Vec<Value> = fams.iter().map(family_json).collect();
                    let empty = rows.is_empty();
                    let value = json!({
                        "alpha_used": config::divisor_to_json(&p.alpha),
                        "families": rows,
                    });
                    if empty {
                        Ok(Outcome::Empty(emit(&value, format)))
                    } else {
                        Ok(Outcome::Ok(emit(&value, format)))
                    }
                }
                Some(spec) => {
                    let bx = parse_box(&s, &spec)?;
                    let walls = instantiate_walls_1d(&s, &e, &p, &bx)?;
                    let rows: Vec<Value> = walls.iter().map(wall1d_json).collect();
                    let empty = rows.is_empty();
                    let value = json!({
                        "alpha_used": config::divisor_to_json(&p.alpha),
                        "walls": rows,
                    });
                    if empty {
                        Ok(Outcome::Empty(emit(&value, format)))
                    } else {
                        Ok(Outcome::Ok(emit(&value, format)))
                    }
                }
            }
        }
        Command::WallsLambda {
            surface,
            chern,
            alpha,
            lambda0,
            lambda_min,
            format,
        } => {
            let s = load_surface(&surface)?;
            let e = parse_chern(&chern)?;
            let alpha = parse_alpha(&s, &alpha)?;
            let p = Polarization::new(&s, s.h.clone(), alpha)?;
            let lambda0 = parse_rat_arg(&lambda0, "lambda0")?;
            let lambda_min = match lambda_min {
                None => None,
                Some(t) => Some(parse_rat_arg(&t, "lambda_min")?),
            };
            let walls = enumerate_walls_lambda(&s, &e, &p, lambda0, lambda_min)?;
            let rows: Vec<Value> = walls.iter().map(wall_lambda_json).collect();
            let empty = rows.is_empty();
            let value = json!({
                "alpha_used": config::divisor_to_json(&p.alpha),
                "lambda0": rat_json(&lambda0),
                "walls": rows,
            });
            if empty {
                Ok(Outcome::Empty(emit(&value, format)))
            } else {
                Ok(Outcome::Ok(emit(&value, format)))
            }
        }
        Command::Reduce {
            surface,
            chern,
            format,
        } => {
            let s = load_surface(&surface)?;
            let e = parse_chern(&chern)?;
            let cert = reduction_certificate(&s, &e)?;
            let value = certificate_json(&cert);
            Ok(Outcome::Ok(emit(&value, format)))
        }
        Command::Special {
            l,
            t,
            surface,
            format,
        } => {
            let walls = walls_i0(l)?;
            let chambers = chambers_i0(l)?;
            if format == Format::Tsv {
                return Ok(Outcome::Ok(special_tsv(l, &walls, &chambers)));
            }
            let mut obj = Map::new();
            obj.insert("l".into(), Value::from(l as i64));
            obj.insert(
                "walls".into(),
                Value::Array(walls.iter().map(rat_json).collect()),
            );
            obj.insert(
                "chambers".into(),
                Value::Array(chambers.iter().map(chamber_json).collect()),
            );
            if let Some(t) = t {
                let t = parse_rat_arg(&t, "t")?;
                let mut tobj = Map::new();
                tobj.insert("t".into(), rat_json(&t));
                match special52::interval_index(t)? {
                    IntervalPosition::Interior(n) => {
                        tobj.insert("interval".into(), Value::from(n));
                    }
                    IntervalPosition::Boundary(n) => {
                        tobj.insert("boundary_of".into(), Value::from(n));
                    }
                }
                if let Ok((normalized, word)) = special52::normalize_to_i0(t) {
                    tobj.insert("normalized".into(), rat_json(&normalized));
                    tobj.insert(
                        "word".into(),
                        Value::Array(
                            word.iter()
                                .map(|w| {
                                    Value::String(
                                        match w {
                                            NormalizeStep::Phi => "phi",
                                            NormalizeStep::DualPhi => "dual_phi",
                                        }
                                        .into(),
                                    )
                                })
                                .collect(),
                        ),
                    );
                }
                obj.insert("parameter".into(), Value::Object(tobj));
            }
            if let Some(path) = surface {
                let s = load_surface(&path)?;
                let (mlo, mhi) = special52::movable_cone(&s, l)?;
                obj.insert(
                    "movable_cone".into(),
                    json!([ray_json(&mlo), ray_json(&mhi)]),
                );
                let nef: Vec<Value> = chambers
                    .iter()
                    .map(|c| {
                        special52::nef_cone(&s, c, l).map(|(a, b)| {
                            json!({
                                "chamber": chamber_json(c),
                                "rays": [ray_json(&a), ray_json(&b)],
                            })
                        })
                    })
                    .collect::<wallcross::Result<_>>()?;
                obj.insert("nef_cones".into(), Value::Array(nef));
                obj.insert(
                    "f_class_sign".into(),
                    Value::String("-(H.K) (hyperplane-corrected)".into()),
                );
            }
            Ok(Outcome::Ok(emit(&Value::Object(obj), format)))
        }
        Command::Hodge {
            surface,
            n,
            chern,
            format,
        } => {
            let s = load_surface(&surface)?;
            let (poly, length) = match (n, chern) {
                (Some(n), None) => (
                    hilbpoly::hodge_poly_hilb(&s, n)?.mul(&hilbpoly::hodge_poly_pic0(&s)?),
                    n,
                ),
                (None, Some(text)) => {
                    let e = parse_chern(&text)?;
                    let l = wallcross::chern::hilb_length(&s, &e)?;
                    (hilbpoly::moduli_hodge(&s, &e)?, l)
                }
                _ => anyhow::bail!("exactly one of --n and --chern is required"),
            };
            let coeffs: Vec<Value> = poly
                .coefficients
                .iter()
                .map(|(&(p, q), &v)| json!([p, q, v as i64]))
                .collect();
            let value = json!({
                "coefficients": coeffs,
                "euler": poly.euler() as i64,
                "hilb_length": length as i64,
                "symmetric": poly.is_symmetric(),
            });
            Ok(Outcome::Ok(emit(&value, format)))
        }
    }
}

fn family_json(f: &WallClassFamily) -> Value {
    match f {
        WallClassFamily::Root { class, xi_d } => json!({
            "kind": "root",
            "class": config::divisor_to_json(class),
            "xi_dot_d": rat_json(xi_d),
        }),
        WallClassFamily::Isotropic { r } => json!({
            "kind": "isotropic",
            "r": *r as i64,
        }),
    }
}

fn codim_json(c: &CrossingCodim) -> Value {
    match c {
        CrossingCodim::Empty => Value::String("empty".into()),
        CrossingCodim::Dim(d) => Value::from(*d as i64),
    }
}

fn move_json(tag: &MoveTag) -> Value {
    Value::String(
        match tag {
            MoveTag::ReflectionIso => "reflection_iso".to_string(),
            MoveTag::DoubleReflectionBirational => "double_reflection_birational".to_string(),
            MoveTag::FmIso => "fm_iso".to_string(),
            MoveTag::FmDetTwistIso => "fm_det_twist_iso".to_string(),
            MoveTag::DualBirational(c) => format!("dual_birational_codim_{c}"),
            MoveTag::IdentityOffCodim2 => "identity_off_codim_2".to_string(),
        },
    )
}

fn wall1d_json(w: &Wall1D) -> Value {
    json!({
        "kind": match w.kind { WallKind::Root => "root", WallKind::Isotropic => "isotropic" },
        "u": config::chern_to_json(&w.u),
        "codim": codim_json(&w.codim),
        "divisorial": w.divisorial,
        "move": move_json(&w.mv.tag),
        "move_target": config::chern_to_json(&w.mv.target),
        "locus": {
            "alpha_coefficients": w.locus.coeffs.iter().map(rat_json).collect::<Vec<_>>(),
            "rhs": rat_json(&w.locus.rhs),
        },
        "certified": w.certified,
        "general_position_assumed": w.general_position_assumed,
    })
}

fn wall_lambda_json(w: &WallLambda) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "kind".into(),
        Value::from(match w.kind {
            LambdaWallKind::Root => "root",
            LambdaWallKind::Isotropic => "isotropic",
        }),
    );
    obj.insert("tau".into(), config::chern_to_json(&w.tau));
    obj.insert("lambda".into(), slope_json(&w.lambda.value));
    if let Some((r0, d0)) = w.lambda.slope_pair {
        obj.insert(
            "slope_pair".into(),
            json!([r0 as i64, d0 as i64]),
        );
    }
    obj.insert(
        "codim".into(),
        match w.codim {
            LambdaCodim::Empty => Value::String("empty".into()),
            LambdaCodim::Dim(d) => Value::from(d as i64),
        },
    );
    if let Some(class) = &w.classification {
        obj.insert(
            "classification".into(),
            match class {
                CrossingClass::Isomorphism => Value::String("isomorphism".into()),
                CrossingClass::Codim1 { case_ii, projective } => json!({
                    "codim1_case": if *case_ii { "II" } else { "I" },
                    "projective": projective,
                }),
                CrossingClass::HigherCodim(d) => json!({"higher_codim": *d as i64}),
            },
        );
    }
    if let Some(mt) = &w.min_tuple {
        obj.insert(
            "min_tuple".into(),
            json!({
                "l_i": mt.l_i.iter().map(|v| *v as i64).collect::<Vec<_>>(),
                "l": mt.l as i64,
                "value": mt.value as i64,
            }),
        );
    }
    obj.insert(
        "general_position_assumed".into(),
        Value::Bool(true),
    );
    Value::Object(obj)
}

fn certificate_json(cert: &lambdawalls::ReductionCertificate) -> Value {
    json!({
        "kind": match cert.kind {
            ReductionKind::IsomorphismToHilb => "isomorphism_to_hilb",
            ReductionKind::BirationalCodim2 => "birational_codim_2",
            ReductionKind::BirationalWeaker => "birational_weaker",
        },
        "target": cert.target.as_ref().map(config::chern_to_json),
        "length_l": rat_json(&cert.length_l),
        "chosen_pair": [cert.chosen_pair.0 as i64, cert.chosen_pair.1 as i64],
        "used_dual_trick": cert.used_dual_trick,
        "obstructions": cert.obstructions.iter().map(wall_lambda_json).collect::<Vec<_>>(),
        "witnesses": cert.witnesses.iter().map(|w| json!({
            "label": w.label,
            "lhs": w.lhs as i64,
            "rhs": w.rhs as i64,
            "holds": w.holds,
        })).collect::<Vec<_>>(),
        "alpha_used": config::divisor_to_json(&cert.alpha_used),
    })
}

fn chamber_json(c: &ChamberInterval) -> Value {
    json!({
        "t1": slope_json(&c.t1),
        "t2": rat_json(&c.t2),
        "interval": c.interval_index,
    })
}

fn ray_json(r: &RaySpec) -> Value {
    json!({
        "t": slope_json(&r.t),
        "r": rat_json(&r.r),
        "xi": config::divisor_to_json(&r.xi),
        "a": rat_json(&r.a),
        "primitive": r.primitive.iter().map(|v| *v as i64).collect::<Vec<_>>(),
    })
}

/// Plottable chamber-diagram data: one row per wall and per chamber
/// endpoint pair.
fn special_tsv(l: i128, walls: &[Rat], chambers: &[ChamberInterval]) -> String {
    let mut out = String::new();
    out.push_str("row\tl\tvalue1\tvalue2\n");
    for w in walls {
        out.push_str(&format!("wall\t{l}\t{}\t\n", rat_to_string(w)));
    }
    for c in chambers {
        let t1 = match &c.t1 {
            SlopeValue::Infinite => "-inf".to_string(),
            SlopeValue::Finite(r) => rat_to_string(r),
        };
        out.push_str(&format!(
            "chamber\t{l}\t{t1}\t{}\n",
            rat_to_string(&c.t2)
        ));
    }
    out.pop();
    out
}
