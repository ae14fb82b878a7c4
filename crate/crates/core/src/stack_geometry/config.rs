use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Perforation, PoleFamily, RadiusFunction};
use crate::{Error, Result, C64};

/// JSON form of a perforation:
///
/// ```json
/// {"poles": "roots_of_unity" | "meander" | {"explicit": [[n, re, im], ...]},
///  "radius": {"c": 0.05, "alpha": 2} | {"table": [[n, r], ...]},
///  "lambda": 1.5}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerforationConfig {
    pub poles: PoleSpec,
    pub radius: RadiusSpec,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleSpec {
    RootsOfUnity,
    Meander,
    Explicit(Vec<(usize, f64, f64)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadiusSpec {
    Diophantine { c: f64, alpha: f64 },
    Table { table: Vec<(usize, f64)> },
}

impl PerforationConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<Perforation> {
        let poles = match &self.poles {
            PoleSpec::RootsOfUnity => PoleFamily::RootsOfUnity,
            PoleSpec::Meander => PoleFamily::Meander,
            PoleSpec::Explicit(list) => {
                let mut map: BTreeMap<usize, Vec<C64>> = BTreeMap::new();
                for &(n, re, im) in list {
                    map.entry(n).or_default().push(C64::new(re, im));
                }
                PoleFamily::Explicit(map)
            }
        };
        let radius = match &self.radius {
            RadiusSpec::Diophantine { c, alpha } => {
                RadiusFunction::diophantine(*c, *alpha, self.lambda)?
            }
            RadiusSpec::Table { table } => {
                RadiusFunction::explicit(table.iter().copied().collect(), self.lambda)?
            }
        };
        Perforation::new(poles, radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_pole_and_radius_form() {
        let a = PerforationConfig::from_json(
            r#"{"poles": "roots_of_unity", "radius": {"c": 0.05, "alpha": 2}, "lambda": 1.5}"#,
        )
        .unwrap();
        assert_eq!(a.poles, PoleSpec::RootsOfUnity);
        a.build().unwrap();

        let b = PerforationConfig::from_json(
            r#"{"poles": {"explicit": [[1, 0.0, 0.0], [1, 0.15, 0.0]]},
                "radius": {"table": [[1, 0.1]]}, "lambda": 1.5}"#,
        )
        .unwrap();
        let p = b.build().unwrap();
        assert_eq!(p.poles.poles(1).len(), 2);
        assert_eq!(p.radius.value(1), Some(0.1));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(PerforationConfig::from_json(r#"{"poles": "meander"}"#).is_err());
        assert!(PerforationConfig::from_json(
            r#"{"poles": "spiral", "radius": {"c": 0.1, "alpha": 2}, "lambda": 1.5}"#
        )
        .is_err());
        let bad_lambda = PerforationConfig::from_json(
            r#"{"poles": "meander", "radius": {"c": 0.1, "alpha": 2}, "lambda": 0.9}"#,
        )
        .unwrap();
        assert!(bad_lambda.build().is_err());
    }
}
