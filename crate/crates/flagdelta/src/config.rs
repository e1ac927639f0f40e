//! Named, versioned case files.
//!
//! A case file names a threefold model, a surface model, the class of the
//! surface on the threefold and how threefold classes restrict to it.  Flag
//! cases add a flag curve, points on it and an optional blow-up; quotient
//! cases add a fibre class and externally quoted δ-bounds as formulas.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use exactkernel::Rational;
use serde::Deserialize;
use surfgeom::{DivisorClass, SurfaceLattice};

use crate::error::FlagError;
use crate::flag::{FlagSurface, PointData, Restriction};
use crate::ratfun::{parse_ratfun, RatFun};
use crate::threefold::{threefold_path, DivisorPath1D, ThreefoldModel};

/// Highest supported case-file version.
pub const CASE_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseFile {
    name: String,
    version: u32,
    kind: String,
    #[serde(default)]
    description: String,
    threefold: String,
    surface: String,
    divisor: String,
    #[serde(default)]
    curve: Option<String>,
    restriction: RestrictionFile,
    #[serde(default)]
    point: Vec<PointFile>,
    #[serde(default)]
    blowup: Option<BlowupFile>,
    #[serde(default)]
    fibre: Option<String>,
    #[serde(default)]
    anticanonical: Option<String>,
    #[serde(default)]
    delta_surface: Option<Rational>,
    #[serde(default)]
    bound: Vec<BoundFile>,
    #[serde(default)]
    case: Vec<QuotientCaseFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RestrictionFile {
    classes: BTreeMap<String, String>,
    #[serde(default)]
    components: BTreeMap<String, BTreeMap<String, Rational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    name: String,
    #[serde(default)]
    description: String,
    #[serde(default)]
    through: BTreeMap<String, Rational>,
    #[serde(default)]
    orbifold_order: Option<u32>,
    #[serde(default)]
    reference_total: Option<Rational>,
    #[serde(default)]
    refine: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlowupFile {
    name: String,
    center: BTreeMap<String, Rational>,
    weights: [u32; 2],
    #[serde(default)]
    point: Vec<PointFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundFile {
    fiber_type: String,
    formula: String,
    t_range: [Rational; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientCaseFile {
    fiber_type: String,
    #[serde(rename = "on_E")]
    on_e: bool,
    #[serde(default)]
    expected: Option<Rational>,
}

/// A point of a flag case.
#[derive(Clone, Debug)]
pub struct CasePoint {
    /// Point data.
    pub data: PointData,
    /// Whether the point is treated again through the blow-up.
    pub refine: bool,
}

/// The blow-up part of a flag case.
#[derive(Clone, Debug)]
pub struct BlowupCase {
    /// The blown-up flag with the exceptional curve as flag curve.
    pub flag: FlagSurface,
    /// Points on the exceptional curve.
    pub points: Vec<PointData>,
}

/// A flag case `S ⊃ C` with points of `C`.
#[derive(Clone, Debug)]
pub struct FlagCase {
    /// Case name.
    pub name: String,
    /// File version.
    pub version: u32,
    /// Description.
    pub description: String,
    /// The threefold.
    pub model: ThreefoldModel,
    /// Class of the surface on the threefold.
    pub surface_class: DivisorClass,
    /// `−K_X − uS`.
    pub path: DivisorPath1D,
    /// The flag.
    pub flag: FlagSurface,
    /// Points of the flag curve.
    pub points: Vec<CasePoint>,
    /// Optional blow-up refinement.
    pub blowup: Option<BlowupCase>,
}

/// A quoted lower bound for `δ_P(S, −K_S + tC)`.
#[derive(Clone, Debug)]
pub struct BoundFormula {
    /// Fibre type it applies to.
    pub fiber_type: String,
    /// Source text.
    pub source: String,
    /// The formula in `t`.
    pub formula: RatFun,
    /// Interval of `t` where it is valid.
    pub t_range: (Rational, Rational),
}

/// One row of a quotient case.
#[derive(Clone, Debug)]
pub struct QuotientRow {
    /// Fibre type.
    pub fiber_type: String,
    /// Whether the point lies on `E`.
    pub on_e: bool,
    /// Expected value of the bound, if recorded.
    pub expected: Option<Rational>,
}

/// A quotient-bound case.
#[derive(Clone, Debug)]
pub struct QuotientCase {
    /// Case name.
    pub name: String,
    /// File version.
    pub version: u32,
    /// Description.
    pub description: String,
    /// The threefold.
    pub model: ThreefoldModel,
    /// `−K_X − uS`.
    pub path: DivisorPath1D,
    /// The surface.
    pub lattice: SurfaceLattice,
    /// Restricted path pieces.
    pub pieces: Vec<crate::flag::FlagPiece>,
    /// Fibre class `C`.
    pub fibre: DivisorClass,
    /// `−K_S`.
    pub anticanonical: DivisorClass,
    /// Lower bound for `δ(S)`.
    pub delta_surface: Rational,
    /// Quoted bounds.
    pub bounds: Vec<BoundFormula>,
    /// Rows to evaluate.
    pub rows: Vec<QuotientRow>,
}

/// A loaded case file.
#[derive(Clone, Debug)]
pub enum Case {
    /// A flag computation.
    Flag(Box<FlagCase>),
    /// A quotient-bound computation.
    Quotient(Box<QuotientCase>),
}

impl Case {
    /// Case name.
    pub fn name(&self) -> &str {
        match self {
            Case::Flag(c) => &c.name,
            Case::Quotient(c) => &c.name,
        }
    }
}

fn io_err(path: &Path, e: impl ToString) -> FlagError {
    FlagError::Io { path: path.display().to_string(), reason: e.to_string() }
}

fn point_data(p: &PointFile) -> PointData {
    PointData {
        name: p.name.clone(),
        description: p.description.clone(),
        through: p.through.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        orbifold_order: p.orbifold_order.unwrap_or(1),
        reference_total: p.reference_total.clone(),
    }
}

/// Files referenced by a case file (for content hashing).
pub fn case_dependencies(path: &Path) -> Result<Vec<PathBuf>, FlagError> {
    let src = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let f: CaseFile = toml::from_str(&src).map_err(|e| FlagError::Model(e.to_string()))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(vec![dir.join(&f.threefold), dir.join(&f.surface)])
}

/// Path of a named case below a data directory.
pub fn case_path(data_dir: &Path, name: &str) -> PathBuf {
    data_dir.join("flags").join(format!("{name}.toml"))
}

/// Loads a case by name from a data directory.
pub fn load_named_case(data_dir: &Path, name: &str) -> Result<Case, FlagError> {
    let path = case_path(data_dir, name);
    if !path.exists() {
        return Err(FlagError::UnknownCase(name.to_string()));
    }
    load_case(&path)
}

/// Loads a case file.
pub fn load_case(path: &Path) -> Result<Case, FlagError> {
    let src = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let f: CaseFile = toml::from_str(&src).map_err(|e| FlagError::Model(format!("{}: {e}", path.display())))?;
    if f.version == 0 || f.version > CASE_VERSION {
        return Err(FlagError::Model(format!("unsupported case version {}", f.version)));
    }
    let dir = path.parent().unwrap_or(Path::new("."));
    let model = ThreefoldModel::from_path(&dir.join(&f.threefold))?;
    let sp = dir.join(&f.surface);
    let lattice = SurfaceLattice::from_path(&sp)?;
    let surface_class = DivisorClass::parse(&f.divisor, &model.basis)?;
    let direction = surface_class.scale(&Rational::from(-1));
    let path1d = threefold_path(&model, &model.anticanonical, &direction)?;
    let mut classes = Vec::new();
    for b in &model.basis {
        let src = f
            .restriction
            .classes
            .get(b)
            .ok_or_else(|| FlagError::Model(format!("no restriction given for {b}")))?;
        classes.push(lattice.parse_class(src)?);
    }
    if f.restriction.classes.len() != model.basis.len() {
        return Err(FlagError::Model("restriction names classes outside the basis".into()));
    }
    let restriction = Restriction {
        classes,
        components: f
            .restriction
            .components
            .iter()
            .map(|(g, cs)| (g.clone(), cs.iter().map(|(k, v)| (k.clone(), v.clone())).collect()))
            .collect(),
    };
    match f.kind.as_str() {
        "flag" => {
            let curve = f.curve.as_deref().ok_or_else(|| FlagError::Model("flag case without a curve".into()))?;
            let flag = FlagSurface::restrict(&model, &path1d, lattice, &restriction, &surface_class, curve)?;
            let points: Vec<CasePoint> = f
                .point
                .iter()
                .map(|p| CasePoint { data: point_data(p), refine: p.refine })
                .collect();
            for p in &points {
                flag.check_point(&p.data)?;
            }
            let blowup = match &f.blowup {
                Some(b) => {
                    let center: Vec<(String, Rational)> =
                        b.center.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                    let bf = flag.blow_up(&center, (b.weights[0], b.weights[1]), &b.name)?;
                    let pts: Vec<PointData> = b.point.iter().map(point_data).collect();
                    for p in &pts {
                        bf.check_point(p)?;
                    }
                    Some(BlowupCase { flag: bf, points: pts })
                }
                None => None,
            };
            if points.iter().any(|p| p.refine) && blowup.is_none() {
                return Err(FlagError::Model("a point asks for refinement but no blow-up is given".into()));
            }
            Ok(Case::Flag(Box::new(FlagCase {
                name: f.name,
                version: f.version,
                description: f.description,
                model,
                surface_class,
                path: path1d,
                flag,
                points,
                blowup,
            })))
        }
        "quotient" => {
            let pieces = crate::flag::restrict_pieces(&model, &path1d, &lattice, &restriction, &surface_class)?;
            let need = |x: Option<String>, what: &str| {
                x.ok_or_else(|| FlagError::Model(format!("quotient case without {what}")))
            };
            let fibre = lattice.parse_class(&need(f.fibre, "a fibre class")?)?;
            let anticanonical = lattice.parse_class(&need(f.anticanonical, "an anticanonical class")?)?;
            let delta_surface = f
                .delta_surface
                .ok_or_else(|| FlagError::Model("quotient case without delta_surface".into()))?;
            let bounds = f
                .bound
                .iter()
                .map(|b| {
                    Ok(BoundFormula {
                        fiber_type: b.fiber_type.clone(),
                        source: b.formula.clone(),
                        formula: parse_ratfun(&b.formula, "t")?,
                        t_range: (b.t_range[0].clone(), b.t_range[1].clone()),
                    })
                })
                .collect::<Result<Vec<_>, FlagError>>()?;
            let rows = f
                .case
                .iter()
                .map(|c| QuotientRow { fiber_type: c.fiber_type.clone(), on_e: c.on_e, expected: c.expected.clone() })
                .collect();
            Ok(Case::Quotient(Box::new(QuotientCase {
                name: f.name,
                version: f.version,
                description: f.description,
                model,
                path: path1d,
                lattice,
                pieces,
                fibre,
                anticanonical,
                delta_surface,
                bounds,
                rows,
            })))
        }
        other => Err(FlagError::Model(format!("unknown case kind {other:?}"))),
    }
}
