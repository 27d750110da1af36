//! Command pipelines: load documents, run the kernels, build the result.
//!
//! Maximal cones are labelled from 1 in every result document; ray indices
//! keep the 0-based numbering of the input document.

use std::path::Path;

use serde_json::{json, Value};
use toric_kring_core::plp::{from_kclass, validate_plp};
use toric_kring_core::{
    build_gkm, certify_cellular, construct_basis, coordinates, structure_constants,
    CellularCertificate, Cone, Fan, GkmGraph, KBasis, KClass, LatticeVector, Rejection, Violation,
};

use crate::document::{
    cone_json, object, parse_json, poly_json, quotient_elem_json, vector_json, BasisDocument,
    ClassDocument, FanDocument, ResultDocument,
};
use crate::error::CliError;
use crate::fixtures;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Complete,
    Cellular,
    Gkm,
    Plp,
    Basis,
    Coords,
    Structconst,
}

/// One invocation. `fan`, `class` and `basis` are file paths or fixture
/// names.
#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub fan: String,
    pub v: Option<Vec<i64>>,
    pub class: Option<String>,
    pub basis: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: ResultDocument,
    pub exit_code: i32,
    pub warnings: Vec<String>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_FAN: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_NOT_MEMBER: i32 = 4;

/// Ends a pipeline early, either with an error or with a finished document.
enum Stop {
    Error(CliError),
    Done(ResultDocument, i32),
}

impl From<CliError> for Stop {
    fn from(e: CliError) -> Self {
        Stop::Error(e)
    }
}

impl From<toric_kring_core::Error> for Stop {
    fn from(e: toric_kring_core::Error) -> Self {
        Stop::Error(e.into())
    }
}

type Step<T> = Result<T, Stop>;

pub fn run(req: &Request) -> Result<Outcome, CliError> {
    let mut warnings = Vec::new();
    match dispatch(req, &mut warnings) {
        Ok((document, exit_code)) | Err(Stop::Done(document, exit_code)) => Ok(Outcome {
            document,
            exit_code,
            warnings,
        }),
        Err(Stop::Error(e)) => Err(e),
    }
}

fn dispatch(req: &Request, warnings: &mut Vec<String>) -> Step<(ResultDocument, i32)> {
    let doc: FanDocument = parse_json(&read_source(&req.fan)?, "fan document")?;
    let fan = load_fan(&doc, warnings)?;
    if req.command == Command::Validate {
        let violations = fan.validate();
        let code = if violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_INVALID_FAN
        };
        return Ok((validation_doc(&violations), code));
    }
    if !fan.is_valid() {
        return Err(Stop::Done(
            validation_doc(&fan.validate()),
            EXIT_INVALID_FAN,
        ));
    }
    if req.command == Command::Complete {
        return Ok(completeness(&fan));
    }

    let v = resolve_v(req, &doc)?;
    let cert = match certify_cellular(&fan, &v) {
        Ok(c) => c,
        Err(r) => return Err(Stop::Done(rejection_doc(&r), EXIT_REJECTED)),
    };
    if req.command == Command::Cellular {
        return Ok((certificate_doc(&cert), EXIT_OK));
    }

    if !fan.is_complete() {
        let payload = object([
            ("reason", json!("not complete")),
            (
                "message",
                json!(toric_kring_core::Error::NotComplete.to_string()),
            ),
        ]);
        return Err(Stop::Done(
            ResultDocument::new("rejection", payload),
            EXIT_REJECTED,
        ));
    }
    let g = build_gkm(&fan, &cert)?;
    match req.command {
        Command::Gkm => Ok((gkm_doc(&g), EXIT_OK)),
        Command::Basis => {
            let b = construct_basis(&g, &cert)?;
            Ok((basis_doc(&cert, &b), EXIT_OK))
        }
        Command::Structconst => {
            let b = construct_basis(&g, &cert)?;
            let sc = structure_constants(&g, &cert, &b)?;
            let constants: Vec<Value> = sc
                .iter()
                .map(|(&(i, j, p), a)| {
                    object([
                        ("i", json!(i + 1)),
                        ("j", json!(j + 1)),
                        ("p", json!(p + 1)),
                        ("value", poly_json(a)),
                    ])
                })
                .collect();
            let payload = object([
                ("order", labels(&cert.order)),
                ("constants", Value::Array(constants)),
            ]);
            Ok((ResultDocument::new("structure-constants", payload), EXIT_OK))
        }
        Command::Plp => {
            let a = load_class(req, &g)?;
            let p = from_kclass(&g, &fan, &a)?;
            let report = validate_plp(&fan, &p)?;
            let cones: Vec<Value> = fan
                .cones()
                .iter()
                .zip(p.components())
                .map(|(c, x)| {
                    let mut entry = quotient_elem_json(x);
                    entry["rays"] = cone_json(c);
                    entry["dim"] = json!(c.dim());
                    entry
                })
                .collect();
            let payload = object([
                ("cones", Value::Array(cones)),
                ("valid", json!(report.is_valid())),
            ]);
            Ok((ResultDocument::new("plp", payload), EXIT_OK))
        }
        Command::Coords => {
            let a = load_class(req, &g)?;
            let (b, source) = match &req.basis {
                Some(spec) => (load_basis(spec, &g, &cert)?, "supplied"),
                None => (construct_basis(&g, &cert)?, "constructed"),
            };
            let coeffs = coordinates(&g, &cert, &b, &a)?;
            let reconstructs = b.combine(&coeffs)? == a;
            let entries: Vec<Value> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| object([("cone", json!(i + 1)), ("terms", poly_json(c))]))
                .collect();
            let payload = object([
                ("basis", json!(source)),
                ("coordinates", Value::Array(entries)),
                ("reconstructs", json!(reconstructs)),
            ]);
            Ok((ResultDocument::new("coordinates", payload), EXIT_OK))
        }
        Command::Validate | Command::Complete | Command::Cellular => unreachable!(),
    }
}

/// Reads a path, falling back to a built-in fixture of that name.
pub fn read_source(spec: &str) -> Result<String, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: spec.to_string(),
            source,
        });
    }
    fixtures::get(spec)
        .map(str::to_string)
        .ok_or_else(|| CliError::Io {
            path: spec.to_string(),
            source: std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!(
                    "no such file or fixture (fixtures: {})",
                    fixtures::names().collect::<Vec<_>>().join(", ")
                ),
            ),
        })
}

fn load_fan(doc: &FanDocument, warnings: &mut Vec<String>) -> Step<Fan> {
    let n = doc.rank;
    if n == 0 {
        return Err(CliError::Parse("rank: must be positive".into()).into());
    }
    let mut rays = Vec::with_capacity(doc.rays.len());
    for (k, r) in doc.rays.iter().enumerate() {
        if r.len() != n {
            return Err(CliError::Parse(format!(
                "rays[{k}]: has {} entries, expected {n}",
                r.len()
            ))
            .into());
        }
        let raw = LatticeVector::from_i64s(r);
        let prim = raw
            .primitive()
            .map_err(|_| CliError::Parse(format!("rays[{k}]: zero vector")))?;
        if prim != raw {
            warnings.push(format!("ray {k} {raw} normalized to primitive {prim}"));
        }
        rays.push(prim);
    }
    for (i, c) in doc.max_cones.iter().enumerate() {
        for (j, &k) in c.iter().enumerate() {
            if k >= rays.len() {
                return Err(CliError::Parse(format!(
                    "max_cones[{i}][{j}]: ray index {k} out of range ({} rays)",
                    rays.len()
                ))
                .into());
            }
        }
        let gens: Vec<LatticeVector> = c.iter().map(|&k| rays[k].clone()).collect();
        if Cone::from_rays(n, &gens).is_err() {
            let payload = object([
                ("valid", json!(false)),
                (
                    "violations",
                    json!([object([
                        ("type", json!("not-strongly-convex")),
                        ("cones", json!([i + 1])),
                        (
                            "message",
                            json!(format!("σ{} is not strongly convex", i + 1))
                        ),
                    ])]),
                ),
            ]);
            return Err(Stop::Done(
                ResultDocument::new("validation", payload),
                EXIT_INVALID_FAN,
            ));
        }
    }
    Ok(Fan::new(n, rays, doc.max_cones.clone())?)
}

fn resolve_v(req: &Request, doc: &FanDocument) -> Step<LatticeVector> {
    let v = req.v.as_ref().or(doc.v.as_ref()).ok_or_else(|| {
        CliError::Usage("v missing: pass --v or set \"v\" in the fan document".into())
    })?;
    if v.len() != doc.rank {
        return Err(
            CliError::Usage(format!("v has {} entries, expected {}", v.len(), doc.rank)).into(),
        );
    }
    Ok(LatticeVector::from_i64s(v))
}

fn load_class(req: &Request, g: &GkmGraph) -> Step<KClass> {
    let spec = req
        .class
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --class".into()))?;
    let doc: ClassDocument = parse_json(&read_source(spec)?, "class document")?;
    check_class_shape(doc.rank, doc.components.len(), g, "class document")?;
    member(g, doc.to_polys()?)
}

fn check_class_shape(rank: usize, len: usize, g: &GkmGraph, what: &str) -> Step<()> {
    if rank != g.rank() {
        return Err(CliError::Parse(format!("{what}: rank {rank}, fan rank {}", g.rank())).into());
    }
    if len != g.m() {
        return Err(CliError::Parse(format!(
            "{what}: {len} components for {} maximal cones",
            g.m()
        ))
        .into());
    }
    Ok(())
}

fn member(g: &GkmGraph, comps: Vec<toric_kring_core::LaurentPoly>) -> Step<KClass> {
    let m = g.is_member(&comps)?;
    if !m.is_member() {
        let edges: Vec<Value> = m
            .violated
            .iter()
            .map(|&(i, j)| json!([i + 1, j + 1]))
            .collect();
        let payload = object([
            ("reason", json!("not a member")),
            ("violated_edges", Value::Array(edges)),
        ]);
        return Err(Stop::Done(
            ResultDocument::new("rejection", payload),
            EXIT_NOT_MEMBER,
        ));
    }
    Ok(g.kclass(comps)?)
}

fn load_basis(spec: &str, g: &GkmGraph, cert: &CellularCertificate) -> Step<KBasis> {
    let doc: BasisDocument = parse_json(&read_source(spec)?, "basis document")?;
    check_class_shape(doc.rank, doc.classes.len(), g, "basis document")?;
    let mut classes = Vec::with_capacity(doc.classes.len());
    for comps in doc.to_polys()? {
        check_class_shape(doc.rank, comps.len(), g, "basis class")?;
        classes.push(member(g, comps)?);
    }
    KBasis::from_classes(g, cert, classes).map_err(|e| {
        let payload = object([
            ("reason", json!("invalid basis")),
            ("message", json!(e.to_string())),
        ]);
        Stop::Done(ResultDocument::new("rejection", payload), EXIT_NOT_MEMBER)
    })
}

fn labels(order: &[usize]) -> Value {
    json!(order.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn violation_json(v: &Violation) -> Value {
    let (kind, cones, rays) = match v {
        Violation::EmptyFan => ("empty-fan", vec![], vec![]),
        Violation::DuplicateRay { first, second } => {
            ("duplicate-ray", vec![], vec![*first, *second])
        }
        Violation::IntersectionNotFace { i, j } => {
            ("intersection-not-face", vec![i + 1, j + 1], vec![])
        }
        Violation::NotMaximal { i, j } => ("not-maximal", vec![i + 1, j + 1], vec![]),
    };
    let message = match v {
        Violation::IntersectionNotFace { i, j } => {
            format!("intersection not a face: σ{} ∩ σ{}", i + 1, j + 1)
        }
        Violation::NotMaximal { i, j } => format!("σ{} is a face of σ{}", i + 1, j + 1),
        other => other.to_string(),
    };
    object([
        ("type", json!(kind)),
        ("cones", json!(cones)),
        ("rays", json!(rays)),
        ("message", json!(message)),
    ])
}

fn validation_doc(violations: &[Violation]) -> ResultDocument {
    let payload = object([
        ("valid", json!(violations.is_empty())),
        (
            "violations",
            Value::Array(violations.iter().map(violation_json).collect()),
        ),
    ]);
    ResultDocument::new("validation", payload)
}

fn completeness(fan: &Fan) -> (ResultDocument, i32) {
    let walls: Vec<Value> = fan
        .walls()
        .iter()
        .map(|w| {
            object([
                ("cones", json!([w.i + 1, w.j + 1])),
                ("rays", cone_json(&w.cone)),
            ])
        })
        .collect();
    let complete = fan.is_complete();
    let payload = object([
        ("complete", json!(complete)),
        ("pure", json!(fan.is_pure())),
        ("strongly_connected", json!(fan.stars_strongly_connected())),
        ("walls", Value::Array(walls)),
    ]);
    let code = if complete { EXIT_OK } else { EXIT_REJECTED };
    (ResultDocument::new("completeness", payload), code)
}

fn rejection_doc(r: &Rejection) -> ResultDocument {
    let mut fields = vec![
        ("reason", json!(r.reason())),
        ("message", json!(r.to_string())),
    ];
    match r {
        Rejection::InvalidFan(v) => fields.push((
            "violations",
            Value::Array(v.iter().map(violation_json).collect()),
        )),
        Rejection::NotPure { cone } => fields.push(("cone", json!(cone + 1))),
        Rejection::NotGeneric => {}
        Rejection::OrderingCycle(c) => fields.push(("cycle", labels(c))),
        Rejection::NonSmoothQuotient { cone, tau } => {
            fields.push(("cone", json!(cone + 1)));
            fields.push(("tau", cone_json(tau)));
            fields.push(("tau_dim", json!(tau.dim())));
        }
    }
    ResultDocument::new("rejection", object(fields))
}

fn certificate_doc(cert: &CellularCertificate) -> ResultDocument {
    let cones: Vec<Value> = (0..cert.len())
        .map(|i| {
            object([
                ("label", json!(i + 1)),
                ("position", json!(cert.position[i] + 1)),
                ("rays", cone_json(&cert.fan.max_cones()[i])),
                ("tau", cone_json(&cert.tau[i])),
                ("tau_dim", json!(cert.tau[i].dim())),
                ("cell_dim", json!(cert.cell_dims[i])),
                (
                    "cell_characters",
                    Value::Array(cert.cell_characters[i].iter().map(vector_json).collect()),
                ),
            ])
        })
        .collect();
    let payload = object([
        ("v", vector_json(&cert.v)),
        ("order", labels(&cert.order)),
        ("cones", Value::Array(cones)),
    ]);
    ResultDocument::new("cellular-certificate", payload)
}

fn gkm_doc(g: &GkmGraph) -> ResultDocument {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            object([
                ("i", json!(e.i + 1)),
                ("j", json!(e.j + 1)),
                ("chi", vector_json(&e.chi)),
            ])
        })
        .collect();
    let payload = object([
        ("vertices", json!(g.m())),
        ("order", labels(g.order())),
        ("edges", Value::Array(edges)),
    ]);
    ResultDocument::new("gkm-graph", payload)
}

fn basis_doc(cert: &CellularCertificate, b: &KBasis) -> ResultDocument {
    let classes: Vec<Value> = b
        .classes()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            object([
                ("label", json!(i + 1)),
                ("diagonal", poly_json(&b.euler_diagonals()[i])),
                (
                    "components",
                    Value::Array(f.components().iter().map(poly_json).collect()),
                ),
            ])
        })
        .collect();
    let payload = object([
        ("order", labels(&cert.order)),
        ("classes", Value::Array(classes)),
    ]);
    ResultDocument::new("basis", payload)
}
