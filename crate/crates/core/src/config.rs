//! Point configurations and their provenance metadata.

use std::collections::BTreeMap;
use std::fmt;

use crate::geom::UnitPoint;

/// Point-set family tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GenSpiral,
    Fibonacci,
    FibonacciLattice,
    Hammersley,
    ZonalEqualArea,
    Healpix,
    RadialIcosahedral,
    CubedSphere,
    Octahedral,
    IcosEqualArea,
    Random,
    MinimalEnergy,
    External,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::GenSpiral => "gen_spiral",
            Family::Fibonacci => "fibonacci",
            Family::FibonacciLattice => "fibonacci_lattice",
            Family::Hammersley => "hammersley",
            Family::ZonalEqualArea => "zonal",
            Family::Healpix => "healpix",
            Family::RadialIcosahedral => "radial_icosahedral",
            Family::CubedSphere => "cubed_sphere",
            Family::Octahedral => "octahedral",
            Family::IcosEqualArea => "icos_equal_area",
            Family::Random => "random",
            Family::MinimalEnergy => "minimal_energy",
            Family::External => "external",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "gen_spiral" | "spiral" => Family::GenSpiral,
            "fibonacci" => Family::Fibonacci,
            "fibonacci_lattice" => Family::FibonacciLattice,
            "hammersley" => Family::Hammersley,
            "zonal" | "zonal_equal_area" => Family::ZonalEqualArea,
            "healpix" => Family::Healpix,
            "radial_icosahedral" | "radial_icos" => Family::RadialIcosahedral,
            "cubed_sphere" => Family::CubedSphere,
            "octahedral" => Family::Octahedral,
            "icos_equal_area" | "icos" => Family::IcosEqualArea,
            "random" => Family::Random,
            "minimal_energy" => Family::MinimalEnergy,
            "external" => Family::External,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered spherical point set with provenance.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Configuration {
    pub points: Vec<UnitPoint>,
    pub family: Family,
    /// Family-specific integer parameters (N, k, m, n).
    pub params: BTreeMap<String, i64>,
    pub seed: Option<u64>,
}

impl Configuration {
    pub fn new(points: Vec<UnitPoint>, family: Family) -> Self {
        Self {
            points,
            family,
            params: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One "x,y,z" row per point, 17 significant digits, canonical order.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * 64);
        for p in &self.points {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", p.x, p.y, p.z));
        }
        out
    }

    /// Compact description of the parameters, e.g. `n=1001` or `m=7,n=5`.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}
