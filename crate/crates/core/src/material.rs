//! Elastic and strength parameters of the solid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2D idealization used by the spring factors and energy densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaneMode {
    #[serde(rename = "plane-stress")]
    Stress,
    #[serde(rename = "plane-strain")]
    Strain,
}

impl PlaneMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PlaneMode::Stress => "plane-stress",
            PlaneMode::Strain => "plane-strain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Material {
    /// Young's modulus E [Pa].
    pub youngs_modulus: f64,
    /// Poisson ratio.
    pub poisson_ratio: f64,
    /// Tensile strength F_t [Pa].
    pub tensile_strength: f64,
    /// Out-of-plane thickness t [m].
    pub thickness: f64,
    pub plane: PlaneMode,
}

impl Material {
    pub fn plane_stress(youngs_modulus: f64, poisson_ratio: f64, tensile_strength: f64) -> Self {
        Material {
            youngs_modulus,
            poisson_ratio,
            tensile_strength,
            thickness: 1.0,
            plane: PlaneMode::Stress,
        }
    }

    pub fn plane_strain(youngs_modulus: f64, poisson_ratio: f64, tensile_strength: f64) -> Self {
        Material {
            plane: PlaneMode::Strain,
            ..Material::plane_stress(youngs_modulus, poisson_ratio, tensile_strength)
        }
    }

    pub fn with_thickness(self, thickness: f64) -> Self {
        Material { thickness, ..self }
    }

    pub fn with_tensile_strength(self, tensile_strength: f64) -> Self {
        Material { tensile_strength, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_positive = |v: f64| v.is_finite() && v > 0.0;
        if !finite_positive(self.youngs_modulus) {
            return Err(Error::config("youngs_modulus", "must be positive"));
        }
        if !(self.poisson_ratio > -1.0 && self.poisson_ratio < 0.5) {
            return Err(Error::config("poisson_ratio", "must lie in (-1, 0.5)"));
        }
        if !finite_positive(self.tensile_strength) {
            return Err(Error::config("tensile_strength", "must be positive"));
        }
        if !finite_positive(self.thickness) {
            return Err(Error::config("thickness", "must be positive"));
        }
        Ok(())
    }
}
