use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{InAxesPlacement, Placement, RegularPlacement, Strategy};
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// On-disk form of a placement.
///
/// ```json
/// {"grid":{"planes":60,"sats_per_plane":42},"strategy":"axes",
///  "h_axis":[11,18,24],"v_axis":[8,15],"r":null}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementFile {
    pub grid: GridSpec,
    pub strategy: Strategy,
    #[serde(default)]
    pub h_axis: Vec<u32>,
    #[serde(default)]
    pub v_axis: Vec<u32>,
    #[serde(default)]
    pub r: Option<u32>,
}

impl PlacementFile {
    pub fn new(grid: GridSpec, placement: &Placement) -> Self {
        match placement {
            Placement::InAxes(p) => PlacementFile {
                grid,
                strategy: Strategy::Axes,
                h_axis: p.horizontal().to_vec(),
                v_axis: p.vertical().to_vec(),
                r: None,
            },
            Placement::Regular(p) => PlacementFile {
                grid,
                strategy: Strategy::Regular,
                h_axis: Vec::new(),
                v_axis: Vec::new(),
                r: Some(p.r()),
            },
        }
    }

    pub fn placement(&self) -> Result<Placement> {
        match self.strategy {
            Strategy::Axes => {
                if self.r.is_some() {
                    return Err(Error::InvalidPlacement("axes placement must not set r".into()));
                }
                let p = InAxesPlacement::new(self.h_axis.clone(), self.v_axis.clone(), &self.grid)?;
                Ok(Placement::InAxes(p))
            }
            Strategy::Regular => {
                if !self.h_axis.is_empty() || !self.v_axis.is_empty() {
                    return Err(Error::InvalidPlacement(
                        "regular placement is described by r alone".into(),
                    ));
                }
                let r = self
                    .r
                    .ok_or_else(|| Error::InvalidPlacement("regular placement needs r".into()))?;
                Ok(Placement::Regular(RegularPlacement::new(r, &self.grid)?))
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("placement file always serializes")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_both_strategies() {
        let g = GridSpec::new(60, 42).unwrap();
        let axes = Placement::InAxes(InAxesPlacement::new(vec![11, 18, 24], vec![8, 15], &g).unwrap());
        let regular = Placement::Regular(RegularPlacement::new(3, &g).unwrap());
        for p in [axes, regular, Placement::none()] {
            let f = PlacementFile::new(g, &p);
            let back = PlacementFile::from_json(&f.to_json()).unwrap();
            assert_eq!(back, f);
            assert_eq!(back.placement().unwrap(), p);
        }
    }

    #[test]
    fn parses_documented_shape() {
        let s = r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"axes",
                    "h_axis":[11,18,24],"v_axis":[8,15],"r":null}"#;
        let f = PlacementFile::from_json(s).unwrap();
        assert_eq!(f.placement().unwrap().network_cache_count(), 10);
    }

    #[test]
    fn rejects_bad_documents() {
        for s in [
            r#"{"grid":{"planes":1,"sats_per_plane":42},"strategy":"axes"}"#,
            r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"ring"}"#,
            r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"axes","h_axis":[30]}"#,
            r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"regular","r":2}"#,
            r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"regular"}"#,
            r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"axes","extra":1}"#,
        ] {
            let parsed = PlacementFile::from_json(s).and_then(|f| f.placement());
            assert!(parsed.is_err(), "{s}");
        }
    }
}
