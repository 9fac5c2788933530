//! The random tree models.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::offspring::OffspringDistribution;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    LabeledRooted,
    LabeledUnrooted,
    FullBinary,
    PrunedBinary,
    Plane,
    PolyaRooted,
    PolyaUnrooted,
    /// Conditioned Galton–Watson trees with custom finite weights.
    Custom(OffspringDistribution),
}

impl Family {
    pub const NAMED: [Family; 7] = [
        Family::LabeledRooted,
        Family::LabeledUnrooted,
        Family::FullBinary,
        Family::PrunedBinary,
        Family::Plane,
        Family::PolyaRooted,
        Family::PolyaUnrooted,
    ];

    pub fn is_unrooted(&self) -> bool {
        matches!(self, Family::LabeledUnrooted | Family::PolyaUnrooted)
    }

    /// Offspring law for the conditioned Galton–Watson families.
    pub fn offspring(&self) -> Option<OffspringDistribution> {
        match self {
            Family::LabeledRooted | Family::LabeledUnrooted => Some(OffspringDistribution::Poisson),
            Family::FullBinary => Some(OffspringDistribution::FullBinary),
            Family::PrunedBinary => Some(OffspringDistribution::PrunedBinary),
            Family::Plane => Some(OffspringDistribution::Geometric),
            Family::Custom(d) => Some(d.clone()),
            Family::PolyaRooted | Family::PolyaUnrooted => None,
        }
    }

    /// Published `(mu, sigma^2)` where known. Rooted and unrooted versions
    /// share their constants.
    pub fn reference_constants(&self) -> Option<(f64, f64)> {
        match self {
            Family::LabeledRooted | Family::LabeledUnrooted => Some((0.0522901, 0.0394984)),
            Family::FullBinary => Some((0.0939359, 0.0252103)),
            Family::PrunedBinary => Some((0.0145850, 0.0084835)),
            Family::PolyaRooted | Family::PolyaUnrooted => Some((0.1373423, 0.1967696)),
            Family::Plane | Family::Custom(_) => None,
        }
    }

    /// Whether order `n` trees exist in this family.
    pub fn attainable(&self, n: usize) -> bool {
        match self {
            Family::FullBinary => n % 2 == 1,
            Family::Custom(d) => d
                .finite_support()
                .is_some_and(|s| crate::sample::gw::attainable(n, &s)),
            _ => n >= 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Family::Custom(d) = self {
            d.validate()?;
            d.tau()?;
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::LabeledRooted => f.write_str("labeled-rooted"),
            Family::LabeledUnrooted => f.write_str("labeled-unrooted"),
            Family::FullBinary => f.write_str("full-binary"),
            Family::PrunedBinary => f.write_str("pruned-binary"),
            Family::Plane => f.write_str("plane"),
            Family::PolyaRooted => f.write_str("polya-rooted"),
            Family::PolyaUnrooted => f.write_str("polya-unrooted"),
            Family::Custom(OffspringDistribution::Custom(p)) => {
                let w: Vec<String> = p.weights().iter().map(|w| w.to_string()).collect();
                write!(f, "custom:{}", w.join(","))
            }
            Family::Custom(d) => write!(f, "custom:{d}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts the named families and `custom:w0,w1,...`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("custom:") {
            let weights = rest
                .split(',')
                .map(|w| {
                    w.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad weight {w:?}: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let family = Family::Custom(OffspringDistribution::custom(weights)?);
            family.validate()?;
            return Ok(family);
        }
        Family::NAMED
            .iter()
            .find(|f| f.to_string() == s)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Family::NAMED {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        let c: Family = "custom:1,0,0,1".parse().unwrap();
        assert_eq!(c.to_string(), "custom:1,0,0,1");
        assert!("custom:1,1".parse::<Family>().is_err());
        assert!("trees".parse::<Family>().is_err());
    }
}
