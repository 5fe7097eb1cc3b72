use std::path::Path;

use serde::{Deserialize, Serialize};

use super::variety::BlowupVariety;
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, DEFAULT_DEGREE_BOUND};
use crate::polyspace::ProjPoint;

/// On-disk point configuration: `{ "n": 2, "p": 32003, "points": [[..], ..] }`,
/// optionally with `"extra_points"` for a point scheme on the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub n: usize,
    pub p: u32,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_points: Option<Vec<Vec<i64>>>,
}

impl PointConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn from_variety(x: &BlowupVariety) -> Self {
        let field = x.spec().field;
        Self {
            n: x.n(),
            p: field.p(),
            points: x
                .points()
                .iter()
                .map(|q| q.coords().iter().map(|&c| c as i64).collect())
                .collect(),
            extra_points: None,
        }
    }

    pub fn spec(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, DEFAULT_DEGREE_BOUND)
    }

    fn parse_points(&self, spec: &FieldSpec, pts: &[Vec<i64>]) -> Result<Vec<ProjPoint>> {
        pts.iter()
            .map(|c| {
                if c.len() != self.n + 1 {
                    return Err(Error::InvalidPoint(format!(
                        "{c:?} has {} coordinates, expected {}",
                        c.len(),
                        self.n + 1
                    )));
                }
                ProjPoint::new(spec.field, c)
            })
            .collect()
    }

    pub fn variety(&self) -> Result<BlowupVariety> {
        let spec = self.spec()?;
        let pts = self.parse_points(&spec, &self.points)?;
        BlowupVariety::new(spec, self.n, pts)
    }

    pub fn extra(&self) -> Result<Vec<ProjPoint>> {
        let spec = self.spec()?;
        self.parse_points(&spec, self.extra_points.as_deref().unwrap_or(&[]))
    }
}
