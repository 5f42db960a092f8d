//! One function per subcommand, each producing both renderings of its report.
//!
//! JSON reports are objects with sorted keys. Every report carries `schema`
//! and `command`; vectors are comma-separated strings, rationals are `p/q`,
//! ray and cone indices are 0-based.

use std::io;

use serde_json::{json, Value};

use toricnef::batyrev::{classify, focus, primitive_collections, primitive_relation, Generality};
use toricnef::catalog;
use toricnef::divisor::DivisorCones;
use toricnef::fan::{project_fan, star_subdivision, Projection};
use toricnef::{Error, Fan, IntMatrix, LatticeVector, RationalCone};

use crate::format;
use crate::{pretty, CliError, Command};

pub const SCHEMA: &str = "toricnef-report/1";

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn new(command: &str, text: String, mut json: Value) -> Self {
        json["schema"] = SCHEMA.into();
        json["command"] = command.into();
        Self { text, json, code: 0 }
    }

    /// A fan in the interchange format; the same text in both modes.
    fn fan(fan: &Fan) -> Self {
        let text = format!("{}\n", fan.to_json());
        Self { json: Value::String(text.clone()), text, code: 0 }
    }

    pub fn json_text(&self) -> String {
        match &self.json {
            Value::String(s) => s.clone(),
            v => pretty(v),
        }
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Analyze { .. } => "analyze",
        Command::Nef { .. } => "nef",
        Command::Mori { .. } => "mori",
        Command::Collections { .. } => "collections",
        Command::Bignef { .. } => "bignef",
        Command::General { .. } => "general",
        Command::Subdivide { .. } => "subdivide",
        Command::Project { .. } => "project",
        Command::Catalog { .. } => "catalog",
    }
}

type Reader<'a> = &'a mut dyn FnMut(&str) -> io::Result<String>;

fn load(path: &str, read: Reader<'_>) -> Result<Fan, CliError> {
    let text = read(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(Fan::from_json(&text)?)
}

fn load_valid(path: &str, read: Reader<'_>) -> Result<Fan, CliError> {
    let fan = load(path, read)?;
    if let Some(v) = fan.validate().violations.first() {
        return Err(Error::InvalidFan(v.to_string()).into());
    }
    Ok(fan)
}

pub fn execute(command: &Command, read: Reader<'_>) -> Result<Report, CliError> {
    match command {
        Command::Validate { fan } => Ok(validate(&load(fan, read)?)),
        Command::Analyze { fan } => analyze(&load_valid(fan, read)?),
        Command::Nef { fan } => cone_report("nef", &load_valid(fan, read)?),
        Command::Mori { fan } => cone_report("mori", &load_valid(fan, read)?),
        Command::Collections { fan } => collections(&load_valid(fan, read)?),
        Command::Bignef { fan } => bignef(&load_valid(fan, read)?),
        Command::General { fan } => Ok(general(&load_valid(fan, read)?)),
        Command::Subdivide { fan, at } => {
            let fan = load_valid(fan, read)?;
            let w = LatticeVector::new(format::parse_integers(at, "--at")?);
            Ok(Report::fan(&star_subdivision(&fan, &w)?))
        }
        Command::Project { fan, matrix } => project(&load_valid(fan, read)?, matrix),
        Command::Catalog { name, param, n, k } => Ok(Report::fan(&catalog_fan(name, param.as_deref(), *n, *k)?)),
    }
}

fn validate(fan: &Fan) -> Report {
    let report = fan.validate();
    let mut text = String::new();
    if report.is_valid() {
        text.push_str("valid\n");
    } else {
        text.push_str(&format!("invalid: {} violation(s)\n", report.violations.len()));
        for v in &report.violations {
            text.push_str(&format!("  {}: {v}\n", v.kind()));
        }
    }
    let violations: Vec<Value> =
        report.violations.iter().map(|v| json!({ "kind": v.kind(), "message": v.to_string() })).collect();
    let mut r = Report::new("validate", text, json!({ "valid": report.is_valid(), "violations": violations }));
    r.code = if report.is_valid() { 0 } else { 1 };
    r
}

fn analyze(fan: &Fan) -> Result<Report, CliError> {
    let (smooth, complete, simplicial) = (fan.is_smooth(), fan.is_complete(), fan.is_simplicial());
    let mut text = format!(
        "dim: {}, m: {}\nmaximal cones: {}\nsmooth: {smooth}, complete: {complete}\n",
        fan.dim(),
        fan.num_rays(),
        fan.max_cones().len()
    );
    let (projective, rho) = if complete && simplicial {
        let cones = DivisorCones::new(fan)?;
        let p = cones.is_projective();
        text.push_str(&format!("projective: {p}, ρ={}\n", cones.picard_rank()));
        (Value::Bool(p), json!(cones.picard_rank()))
    } else {
        text.push_str("projective: false (fan is not complete)\n");
        (Value::Bool(false), Value::Null)
    };
    let json = json!({
        "dim": fan.dim(),
        "num_rays": fan.num_rays(),
        "num_max_cones": fan.max_cones().len(),
        "smooth": smooth,
        "complete": complete,
        "simplicial": simplicial,
        "projective": projective,
        "picard_rank": rho,
    });
    Ok(Report::new("analyze", text, json))
}

fn cone_json(c: &RationalCone) -> Value {
    json!({
        "dim": c.dim(),
        "ambient_dim": c.ambient_dim(),
        "extremal_rays": format::vectors(c.extremal_rays()),
        "lineality": format::vectors(c.lineality()),
        "facets": format::vectors(c.facets()),
        "equations": format::vectors(c.equations()),
    })
}

fn cone_text(title: &str, c: &RationalCone, ray_notes: &[String]) -> String {
    let mut s = format!("{title}: dim {} in ρ={}\n", c.dim(), c.ambient_dim());
    s.push_str(&format!("extremal rays ({}):\n", c.extremal_rays().len()));
    for (i, r) in c.extremal_rays().iter().enumerate() {
        match ray_notes.get(i) {
            Some(note) => s.push_str(&format!("  {r}  {note}\n")),
            None => s.push_str(&format!("  {r}\n")),
        }
    }
    for (label, vs) in [("lineality", c.lineality()), ("facets", c.facets()), ("equations", c.equations())] {
        if vs.is_empty() && label != "facets" {
            continue;
        }
        s.push_str(&format!("{label} ({}):\n", vs.len()));
        for v in vs {
            s.push_str(&format!("  {v}\n"));
        }
    }
    s
}

fn coordinates_text(cones: &DivisorCones) -> String {
    let q = cones.space.projection();
    let mut s = String::from("class coordinates Q·d of Σ d_i D_i, Q rows:\n");
    for i in 0..q.nrows() {
        s.push_str(&format!("  {}\n", q.row_vector(i)));
    }
    s
}

fn cone_report(which: &'static str, fan: &Fan) -> Result<Report, CliError> {
    let cones = DivisorCones::new(fan)?;
    let q = cones.space.projection();
    let basis: Vec<String> = (0..q.nrows()).map(|i| q.row_vector(i).to_string()).collect();
    let (cone, notes, extra) = if which == "nef" {
        (&cones.nef, Vec::new(), Value::Null)
    } else {
        // one wall curve per extremal ray, the first in wall order
        let mut notes = Vec::new();
        let mut witnesses = Vec::new();
        for r in cones.mori.extremal_rays() {
            let w = cones
                .wall_curves
                .iter()
                .position(|c| c.coordinates.primitive_integer().as_ref() == Some(r))
                .map(|i| &cones.walls[i]);
            match w {
                Some(w) => {
                    notes.push(format!("wall {}: {}", format::cone(&w.ray_indices), format::relation(&w.relation)));
                    witnesses.push(json!({
                        "wall": w.ray_indices,
                        "relation": LatticeVector::new(w.relation.clone()).to_string(),
                    }));
                }
                None => {
                    notes.push(String::new());
                    witnesses.push(Value::Null);
                }
            }
        }
        (&cones.mori, notes, Value::Array(witnesses))
    };
    let mut text = coordinates_text(&cones);
    text.push_str(&cone_text(&format!("{which} cone"), cone, &notes));
    let mut json = json!({ "picard_rank": cones.picard_rank(), "class_basis": basis, "cone": cone_json(cone) });
    if !extra.is_null() {
        json["ray_walls"] = extra;
    }
    Ok(Report::new(which, text, json))
}

fn collections(fan: &Fan) -> Result<Report, CliError> {
    if !fan.is_complete() {
        return Err(Error::Incomplete.into());
    }
    let mut text = String::new();
    let mut entries = Vec::new();
    let all = primitive_collections(fan);
    text.push_str(&format!("primitive collections ({}):\n", all.len()));
    for p in &all {
        let f = focus(fan, p)?;
        match primitive_relation(fan, p) {
            Ok(rel) => {
                let lhs = format::combination(p.indices().iter().map(|&i| (format::ray(i), num_bigint::BigInt::from(1))));
                let rhs = format::combination(rel.focus.iter().zip(&rel.coefficients).map(|(&i, a)| (format::ray(i), a.clone())));
                text.push_str(&format!("  {}: {lhs} = {rhs}  (focus {})\n", format::collection(p.indices()), format::cone(&f)));
                entries.push(json!({
                    "collection": p.indices(),
                    "focus": f,
                    "coefficients": rel.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "relation": LatticeVector::new(rel.relation.clone()).to_string(),
                }));
            }
            Err(Error::NotSmooth(_)) => {
                text.push_str(&format!(
                    "  {}: focus {}, relation not integral\n",
                    format::collection(p.indices()),
                    format::cone(&f)
                ));
                entries.push(json!({ "collection": p.indices(), "focus": f, "coefficients": null, "relation": null }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::new("collections", text, json!({ "collections": entries })))
}

fn bignef(fan: &Fan) -> Result<Report, CliError> {
    let cones = DivisorCones::new(fan)?;
    let verdicts = cones.nef_ray_bigness();
    let predicate = verdicts.iter().all(|(_, big)| *big);
    let mut text = format!("predicate: {}\n", if predicate { "TRUE" } else { "FALSE" });
    text.push_str(&format!(
        "nef cone: dim {} in ρ={} ({})\n",
        cones.nef.dim(),
        cones.picard_rank(),
        if cones.is_projective() { "projective" } else { "not projective" }
    ));
    for (r, big) in &verdicts {
        text.push_str(&format!("  nef ray {r}: {}\n", if *big { "big" } else { "not big" }));
    }
    let witness = cones.nonbig_nef_witness();
    let witness_json = match &witness {
        Some(w) => {
            text.push_str(&format!("witness: {} (class {}) is nef and not big\n", format::divisor(&w.coefficients), w.image));
            json!({ "divisor": w.coefficients.to_string(), "class": w.image.to_string() })
        }
        None => Value::Null,
    };
    let nef_equals_pe = cones.nef_equals_pe();
    text.push_str(&format!("nef cone equals pseudo-effective cone: {nef_equals_pe}\n"));
    let rays: Vec<Value> = verdicts.iter().map(|(r, big)| json!({ "ray": r.to_string(), "big": big })).collect();
    let json = json!({
        "predicate": predicate,
        "picard_rank": cones.picard_rank(),
        "nef_dim": cones.nef.dim(),
        "projective": cones.is_projective(),
        "nef_rays": rays,
        "witness": witness_json,
        "nef_equals_pe": nef_equals_pe,
    });
    Ok(Report::new("bignef", text, json))
}

fn general(fan: &Fan) -> Report {
    let n = fan.dim();
    match classify(fan) {
        Generality::General => Report::new(
            "general",
            format!("general (no positive relation of size ≤ {n})\n"),
            json!({ "general": true, "certificate": null }),
        ),
        Generality::Special { rays, coefficients } => {
            let rel = format::combination(rays.iter().zip(&coefficients).map(|(&i, a)| (format::ray(i), a.clone())));
            Report::new(
                "general",
                format!("special: {rel} = 0 ({} rays, at most {n})\n", rays.len()),
                json!({
                    "general": false,
                    "certificate": {
                        "rays": rays,
                        "coefficients": coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    },
                }),
            )
        }
    }
}

fn parse_matrix(text: &str) -> Result<IntMatrix, CliError> {
    let rows = text.split(';').map(|r| format::parse_integers(r, "--matrix")).collect::<Result<Vec<_>, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, rows).map_err(|_| CliError::Usage("--matrix: rows must have equal length".into()))
}

fn project(fan: &Fan, matrix: &str) -> Result<Report, CliError> {
    let map = parse_matrix(matrix)?;
    match project_fan(fan, &map)? {
        Projection::Quotient(q) => {
            let fan_value: Value = serde_json::from_str(&q.to_json()).expect("fan JSON parses");
            Ok(Report::new("project", format!("{}\n", q.to_json()), json!({ "kind": "quotient", "fan": fan_value })))
        }
        Projection::Overlap(cert) => {
            let (a, b) = (&fan.max_cones()[cert.first], &fan.max_cones()[cert.second]);
            let text = format!(
                "overlap: images of {} and {} meet in dimension {}\n  image of {}: rays {}\n  image of {}: rays {}\n",
                format::cone(a),
                format::cone(b),
                cert.intersection_dim,
                format::cone(a),
                format::vectors(cert.first_image.extremal_rays()).join("; "),
                format::cone(b),
                format::vectors(cert.second_image.extremal_rays()).join("; "),
            );
            let json = json!({
                "kind": "overlap",
                "first": { "cone": a, "image": cone_json(&cert.first_image) },
                "second": { "cone": b, "image": cone_json(&cert.second_image) },
                "intersection_dim": cert.intersection_dim,
            });
            Ok(Report::new("project", text, json))
        }
    }
}

pub const CATALOG_NAMES: &[&str] = &[
    "p",
    "example-8-10",
    "xk",
    "miyake-oda",
    "general-ndim",
    "blown-up-p2",
    "hirzebruch",
    "p1xp1",
    "p1xp2",
    "product",
];

fn catalog_fan(name: &str, param: Option<&str>, n: Option<usize>, k: Option<usize>) -> Result<Fan, CliError> {
    let number = |flag: Option<usize>, what: &str| -> Result<usize, CliError> {
        match (flag, param) {
            (Some(v), _) => Ok(v),
            (None, Some(p)) => p.parse().map_err(|_| CliError::Usage(format!("{name}: {what} must be a number, got \"{p}\""))),
            (None, None) => Err(CliError::Usage(format!("{name} needs a parameter {what}"))),
        }
    };
    let fan = match name {
        "p" => catalog::projective_space(number(n, "n")?)?,
        "example-8-10" => catalog::example_8_10(),
        "xk" => catalog::example_xk(number(k, "k")?)?,
        "miyake-oda" => catalog::miyake_oda(),
        "general-ndim" => catalog::general_ndim(number(n, "n")?)?,
        "blown-up-p2" => catalog::blown_up_p2(),
        "hirzebruch" => {
            let a = param.unwrap_or("0");
            catalog::hirzebruch(a.parse().map_err(|_| CliError::Usage(format!("hirzebruch: bad parameter \"{a}\"")))?)
        }
        "p1xp1" => catalog::product_of_projective_spaces(&[1, 1])?,
        "p1xp2" => catalog::product_of_projective_spaces(&[1, 2])?,
        "product" => {
            let dims = param.ok_or_else(|| CliError::Usage("product needs dimensions like 1,2".into()))?;
            let dims = dims
                .split(',')
                .map(|d| d.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("product: bad dimensions \"{dims}\"")))?;
            catalog::product_of_projective_spaces(&dims)?
        }
        _ => {
            return Err(CliError::Usage(format!("unknown catalog fan \"{name}\"; known: {}", CATALOG_NAMES.join(", "))))
        }
    };
    Ok(fan)
}
