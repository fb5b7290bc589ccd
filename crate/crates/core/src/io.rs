//! JSON file schemas for systems, laws, matrices, and geodesic
//! requests, plus the trajectory CSV writer.
//!
//! Loading distinguishes schema problems (malformed JSON, wrong shapes,
//! missing fields) from invariant violations (well-formed data that
//! fails a mathematical precondition); front ends map them to different
//! exit codes.

use crate::cartan::{build_so_n1, build_su2_pauli, build_su_n};
use crate::control::{Bound, ControlLaw, ControlSystem};
use crate::error::CoreError;
use crate::geodesics::{GeodesicSpec, Trajectory};
use crate::matrix::{c, ComplexMatrix};
use crate::su2::{sigma_x, sigma_y, sigma_z};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Matrix64 and friends are defined at the crate root; io is concrete
/// over f64 because file payloads are double-precision JSON numbers.
type Matrix64 = ComplexMatrix<f64>;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    /// Structural problem: unparseable JSON, wrong field shapes.
    #[error("schema: {0}")]
    Schema(String),
    /// Well-formed file whose content violates a precondition.
    #[error(transparent)]
    Invariant(#[from] CoreError),
}

pub type LoadResult<V> = std::result::Result<V, LoadError>;

fn schema(msg: impl Into<String>) -> LoadError {
    LoadError::Schema(msg.into())
}

/// Dense complex matrix as JSON: row-major real part, optional
/// imaginary part of the same shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixLiteral {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixLiteral {
    pub fn to_matrix(&self) -> LoadResult<Matrix64> {
        let n = self.n;
        if n == 0 {
            return Err(schema("matrix size must be at least 1"));
        }
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.re) {
            return Err(schema(format!("field re must be {n} rows of {n} numbers")));
        }
        if let Some(im) = &self.im {
            if !shape_ok(im) {
                return Err(schema(format!("field im must be {n} rows of {n} numbers")));
            }
        }
        Ok(ComplexMatrix::from_fn(n, |i, j| {
            Complex::new(self.re[i][j], self.im.as_ref().map_or(0.0, |im| im[i][j]))
        }))
    }

    pub fn from_matrix(m: &Matrix64) -> Self {
        let n = m.n();
        let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let has_im = (0..n).any(|i| (0..n).any(|j| m[(i, j)].im != 0.0));
        let im = has_im
            .then(|| (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect());
        Self { n, re, im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Generators given as Hermitian H; converted internally to -iH.
    Hermitian,
    /// Generators given directly as anti-Hermitian matrices.
    AntiHermitian,
}

/// Amplitude bound field: a positive number or the string "unbounded".
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundField {
    Number(f64),
    Word(String),
}

impl BoundField {
    fn to_bound(&self) -> LoadResult<Bound<f64>> {
        match self {
            BoundField::Number(b) => Ok(Bound::Amplitude(*b)),
            BoundField::Word(w) if w == "unbounded" => Ok(Bound::Unbounded),
            BoundField::Word(w) => Err(schema(format!(
                "bound must be a number or \"unbounded\", got \"{w}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub n: usize,
    pub convention: Convention,
    #[serde(default)]
    pub drift: Option<MatrixLiteral>,
    pub controls: Vec<MatrixLiteral>,
    pub bound: BoundField,
}

impl SystemFile {
    pub fn into_system(self) -> LoadResult<ControlSystem<f64>> {
        if self.controls.is_empty() {
            return Err(schema("controls must list at least one generator"));
        }
        let convert = |lit: &MatrixLiteral| -> LoadResult<Matrix64> {
            if lit.n != self.n {
                return Err(schema(format!(
                    "matrix size {} does not match the declared n = {}",
                    lit.n, self.n
                )));
            }
            let m = lit.to_matrix()?;
            Ok(match self.convention {
                Convention::AntiHermitian => m,
                Convention::Hermitian => m.scale_complex(c(0.0, -1.0)),
            })
        };
        let drift = self.drift.as_ref().map(convert).transpose()?;
        let controls = self
            .controls
            .iter()
            .map(convert)
            .collect::<LoadResult<Vec<_>>>()?;
        let bound = self.bound.to_bound()?;
        Ok(ControlSystem::new(drift, controls, bound)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawFile {
    pub breakpoints: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl LawFile {
    pub fn into_law(self) -> LoadResult<ControlLaw<f64>> {
        if self.breakpoints.is_empty() || self.values.is_empty() {
            return Err(schema("law needs breakpoints and values"));
        }
        Ok(ControlLaw::new(self.breakpoints, self.values)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Su2,
    Sun,
    SoN1,
}

/// Geodesic request: either su2 torus coordinates (theta, c) or
/// explicit generator matrices for any family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicFile {
    pub family: FamilyName,
    #[serde(default)]
    pub theta: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub x0: Option<MatrixLiteral>,
    #[serde(default)]
    pub a_k: Option<MatrixLiteral>,
    #[serde(default)]
    pub a_p: Option<MatrixLiteral>,
}

impl GeodesicFile {
    pub fn into_spec(self) -> LoadResult<GeodesicSpec<f64>> {
        let explicit = |field: &Option<MatrixLiteral>, name: &str| -> LoadResult<Matrix64> {
            field
                .as_ref()
                .ok_or_else(|| schema(format!("field {name} is required here")))?
                .to_matrix()
        };
        let (pair, a_k, a_p) = match self.family {
            FamilyName::Su2 => {
                let pair = build_su2_pauli::<f64>();
                match (self.theta, self.c, &self.a_k, &self.a_p) {
                    (Some(theta), Some(c0), None, None) => {
                        let a_p = &sigma_x::<f64>().scale(theta.cos())
                            + &sigma_y::<f64>().scale(theta.sin());
                        (pair, sigma_z::<f64>().scale(c0), a_p)
                    }
                    (None, None, Some(_), Some(_)) => {
                        let a_k = explicit(&self.a_k, "a_k")?;
                        let a_p = explicit(&self.a_p, "a_p")?;
                        (pair, a_k, a_p)
                    }
                    _ => {
                        return Err(schema(
                            "su2 takes either theta and c, or a_k and a_p",
                        ))
                    }
                }
            }
            FamilyName::Sun => {
                let a_k = explicit(&self.a_k, "a_k")?;
                let a_p = explicit(&self.a_p, "a_p")?;
                let pair = build_su_n(a_p.n())?;
                (pair, a_k, a_p)
            }
            FamilyName::SoN1 => {
                let a_k = explicit(&self.a_k, "a_k")?;
                let a_p = explicit(&self.a_p, "a_p")?;
                if a_p.n() < 3 {
                    return Err(schema("so_n1 matrices are (n+1) x (n+1) with n >= 2"));
                }
                let pair = build_so_n1(a_p.n() - 1)?;
                (pair, a_k, a_p)
            }
        };
        let x0 = match &self.x0 {
            Some(lit) => lit.to_matrix()?,
            None => ComplexMatrix::identity(a_p.n()),
        };
        Ok(GeodesicSpec::new(x0, a_k, a_p, pair)?)
    }
}

pub fn parse_system(text: &str) -> LoadResult<ControlSystem<f64>> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    file.into_system()
}

pub fn parse_law(text: &str) -> LoadResult<ControlLaw<f64>> {
    let file: LawFile = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    file.into_law()
}

pub fn parse_matrix(text: &str) -> LoadResult<Matrix64> {
    let lit: MatrixLiteral = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    lit.to_matrix()
}

pub fn parse_geodesic(text: &str) -> LoadResult<GeodesicSpec<f64>> {
    let file: GeodesicFile = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    file.into_spec()
}

/// Renders a trajectory as CSV: one `#` metadata line, a header
/// `t,re_00,im_00,...` (entries row-major), then one row per sample.
/// Uses the shortest round-trip float formatting, so identical
/// trajectories render to identical bytes.
pub fn trajectory_csv(traj: &Trajectory<f64>, meta: &str) -> String {
    let n = traj.n();
    let mut out = String::new();
    out.push_str("# ");
    out.push_str(meta);
    out.push('\n');
    out.push('t');
    for i in 0..n {
        for j in 0..n {
            out.push_str(&format!(",re_{i}{j},im_{i}{j}"));
        }
    }
    out.push('\n');
    for (t, point) in traj.times().iter().zip(traj.points()) {
        out.push_str(&format!("{t}"));
        for i in 0..n {
            for j in 0..n {
                let z = point[(i, j)];
                out.push_str(&format!(",{},{}", z.re, z.im));
            }
        }
        out.push('\n');
    }
    out
}
