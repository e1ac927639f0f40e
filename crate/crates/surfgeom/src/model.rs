//! Loading surface models from TOML files.
//!
//! ```toml
//! name = "bl2p2"
//! basis = ["L", "E1", "E2"]
//! gram = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
//! effective = ["E1", "E2", "L - E1 - E2"]
//!
//! [[tracked]]
//! name = "E1"
//! class = "E1"
//! ```
//!
//! Classes are written either as linear combinations of basis names or as
//! coordinate vectors; rationals may be integers or `"p/q"` strings.

use exactkernel::{QMatrix, Rational};
use serde::Deserialize;

use crate::error::SurfError;
use crate::lattice::{DivisorClass, NamedCurve, SurfaceLattice};

/// A class as written in a model file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    /// Coordinate vector.
    Vector(Vec<Rational>),
    /// Linear combination of basis (or already defined curve) names.
    Expr(String),
}

impl ClassSpec {
    /// Resolves the class against basis names and previously named curves.
    pub fn resolve(&self, basis: &[String], known: &[NamedCurve]) -> Result<DivisorClass, SurfError> {
        match self {
            ClassSpec::Vector(v) => {
                if v.len() != basis.len() {
                    return Err(SurfError::RankMismatch {
                        expected: basis.len(),
                        got: v.len(),
                    });
                }
                Ok(DivisorClass(v.clone()))
            }
            ClassSpec::Expr(s) => match known.iter().find(|c| c.name == s.trim()) {
                Some(c) => Ok(c.class.clone()),
                None => DivisorClass::parse(s, basis),
            },
        }
    }
}

#[derive(Debug, Deserialize)]
struct CurveEntry {
    name: String,
    class: ClassSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    name: String,
    #[serde(default)]
    #[allow(dead_code)]
    description: String,
    basis: Vec<String>,
    gram: Vec<Vec<Rational>>,
    #[serde(default)]
    effective: Option<Vec<ClassSpec>>,
    #[serde(default)]
    tracked: Vec<CurveEntry>,
    #[serde(default)]
    named: Vec<CurveEntry>,
}

impl SurfaceLattice {
    /// Parses a surface model from TOML text.
    pub fn from_toml(src: &str) -> Result<Self, SurfError> {
        let f: SurfaceFile = toml::from_str(src).map_err(|e| SurfError::Model(e.to_string()))?;
        let gram = QMatrix::from_rows(f.gram).map_err(SurfError::Kernel)?;
        let mut known: Vec<NamedCurve> = Vec::new();
        let mut tracked = Vec::new();
        for e in &f.tracked {
            let c = NamedCurve {
                name: e.name.clone(),
                class: e.class.resolve(&f.basis, &known)?,
            };
            known.push(c.clone());
            tracked.push(c);
        }
        let mut named = Vec::new();
        for e in &f.named {
            let c = NamedCurve {
                name: e.name.clone(),
                class: e.class.resolve(&f.basis, &known)?,
            };
            known.push(c.clone());
            named.push(c);
        }
        let eff = f
            .effective
            .map(|v| {
                v.iter()
                    .map(|s| s.resolve(&f.basis, &known))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let mut names: Vec<&str> = known.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(SurfError::Model("duplicate curve names".into()));
        }
        SurfaceLattice::new(f.name, f.basis, gram, tracked, named, eff)
    }

    /// Reads a surface model from a file.
    pub fn from_path(path: &std::path::Path) -> Result<Self, SurfError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| SurfError::Model(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src)
    }
}
