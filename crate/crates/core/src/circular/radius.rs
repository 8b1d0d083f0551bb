use num_complex::Complex64;
use serde::Serialize;

use super::CircularError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PshClass {
    Psh,
    StrictlyPsh,
    NotPsh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "id", rename_all = "kebab-case")]
pub enum RadiusKind {
    /// `ρ(ζ) = |ζ|` on the punctured unit disc.
    Abs,
    /// `ρ(ζ) = |ζ|^a` on the punctured unit disc.
    AbsPower { exponent: f64 },
    /// `ρ(ζ) = 0.1 + 0.5‖ζ‖²` on the unit ball of ℂ^m.
    SqnormAffine,
    /// `ρ(ζ) = 0.5·exp(−‖ζ‖²)` on the unit ball of ℂ^m.
    GaussBump,
}

/// A radius function `ρ: U → (0, 1)` from the built-in catalog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusFunction {
    kind: RadiusKind,
    m: usize,
}

impl RadiusFunction {
    pub fn new(kind: RadiusKind, m: usize) -> Result<Self, CircularError> {
        match kind {
            RadiusKind::Abs if m != 1 => Err(CircularError::DimensionMismatch { expected: 1, got: m }),
            RadiusKind::AbsPower { .. } if m != 1 => {
                Err(CircularError::DimensionMismatch { expected: 1, got: m })
            }
            RadiusKind::AbsPower { exponent } if !(exponent > 0.0 && exponent.is_finite()) => {
                Err(CircularError::InvalidParameter(format!("abs-power exponent must be positive, got {exponent}")))
            }
            _ if m == 0 => Err(CircularError::DimensionMismatch { expected: 1, got: 0 }),
            _ => Ok(Self { kind, m }),
        }
    }

    /// Looks up `abs`, `abs-power` (with `exponent`), `sqnorm-affine`, `gauss-bump`.
    pub fn from_catalog(name: &str, m: usize, exponent: Option<f64>) -> Result<Self, CircularError> {
        let kind = match name {
            "abs" => RadiusKind::Abs,
            "abs-power" => RadiusKind::AbsPower {
                exponent: exponent.unwrap_or(2.0),
            },
            "sqnorm-affine" => RadiusKind::SqnormAffine,
            "gauss-bump" => RadiusKind::GaussBump,
            other => return Err(CircularError::UnknownName(other.to_string())),
        };
        Self::new(kind, m)
    }

    pub fn id(&self) -> &'static str {
        match self.kind {
            RadiusKind::Abs => "abs",
            RadiusKind::AbsPower { .. } => "abs-power",
            RadiusKind::SqnormAffine => "sqnorm-affine",
            RadiusKind::GaussBump => "gauss-bump",
        }
    }

    pub fn kind(&self) -> RadiusKind {
        self.kind
    }

    /// Complex dimension of the parameter domain `U`.
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn psh_class(&self) -> PshClass {
        match self.kind {
            RadiusKind::Abs | RadiusKind::AbsPower { .. } => PshClass::Psh,
            RadiusKind::SqnormAffine => PshClass::StrictlyPsh,
            RadiusKind::GaussBump => PshClass::NotPsh,
        }
    }

    fn norm(zeta: &[Complex64]) -> f64 {
        zeta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Distance from `ζ` to `∂U`; non-positive outside `U`.
    pub fn boundary_distance(&self, zeta: &[Complex64]) -> f64 {
        if zeta.len() != self.m {
            return f64::NEG_INFINITY;
        }
        let r = Self::norm(zeta);
        match self.kind {
            RadiusKind::Abs | RadiusKind::AbsPower { .. } => r.min(1.0 - r),
            RadiusKind::SqnormAffine | RadiusKind::GaussBump => 1.0 - r,
        }
    }

    pub fn contains(&self, zeta: &[Complex64]) -> bool {
        self.boundary_distance(zeta) > 0.0
    }

    pub fn eval(&self, zeta: &[Complex64]) -> Result<f64, CircularError> {
        if zeta.len() != self.m {
            return Err(CircularError::DimensionMismatch {
                expected: self.m,
                got: zeta.len(),
            });
        }
        if !self.contains(zeta) {
            return Err(CircularError::ParameterOutsideDomain { rho: self.id() });
        }
        let r = Self::norm(zeta);
        Ok(match self.kind {
            RadiusKind::Abs => r,
            RadiusKind::AbsPower { exponent } => r.powf(exponent),
            RadiusKind::SqnormAffine => 0.1 + 0.5 * r * r,
            RadiusKind::GaussBump => 0.5 * (-r * r).exp(),
        })
    }
}
