//! JSON file formats. Rationals are strings of the form `"num/den"` or `"num"`.

use serde::{Deserialize, Serialize};
use trophodge_core::cycles::WeightKind;
use trophodge_core::fans::builtin;
use trophodge_core::weightss::SSPage;
use trophodge_core::{Error, Fan, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    /// Generating cones as lists of ray indices.
    pub cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn from_fan(fan: &Fan) -> Self {
        FanFile {
            rank: fan.rank(),
            rays: fan.rays().to_vec(),
            cones: fan.maximal_cones().iter().map(|&c| fan.cones()[c].clone()).collect(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan, Error> {
        Fan::new(self.rank, self.rays.clone(), &self.cones)
    }
}

/// A fan given inline or by built-in name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FanSource {
    Builtin(String),
    Inline(FanFile),
}

impl FanSource {
    pub fn to_fan(&self) -> Result<Fan, Error> {
        match self {
            FanSource::Builtin(name) => builtin(name),
            FanSource::Inline(f) => f.to_fan(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellFile {
    /// Ray indices spanning the sedentarity cone.
    pub sedentarity: Vec<usize>,
    /// Generators in `N` coordinates; they are projected to the stratum.
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub base_fan: FanSource,
    pub cells: Vec<CellFile>,
}

impl ComplexFile {
    pub fn cell_list(&self) -> Vec<(Vec<usize>, Vec<Vec<i64>>)> {
        self.cells.iter().map(|c| (c.sedentarity.clone(), c.rays.clone())).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindFile {
    #[default]
    Minkowski,
    Orbit,
}

impl From<KindFile> for WeightKind {
    fn from(k: KindFile) -> Self {
        match k {
            KindFile::Minkowski => WeightKind::Minkowski,
            KindFile::Orbit => WeightKind::Orbit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub cone: Vec<usize>,
    pub w: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSource>,
    pub codim: usize,
    pub weights: Vec<WeightEntry>,
    #[serde(default)]
    pub kind: KindFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFile {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageFile {
    pub level: u8,
    pub entries: Vec<EntryFile>,
}

impl From<&SSPage> for PageFile {
    fn from(page: &SSPage) -> Self {
        PageFile {
            level: page.level,
            entries: page.entries.iter().map(|e| EntryFile { p: e.p, q: e.q, dim: e.dim }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub entries: Vec<EntryFile>,
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.split('/').nth(1).is_some_and(|d| d.trim_start_matches(['+', '-']).chars().all(|c| c == '0')) {
        return None;
    }
    s.parse().ok()
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use trophodge_core::exactla::q;

    #[test]
    fn rationals_round_trip() {
        assert_eq!(parse_rational("-2/4"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("3"), Some(q(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rational(&q(5)), "5");
    }

    #[test]
    fn fan_round_trip() {
        let fan = builtin("hirzebruch(2)").unwrap();
        let file = FanFile::from_fan(&fan);
        let text = serde_json::to_string(&file).unwrap();
        let back: FanFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_fan().unwrap(), fan);
    }

    #[test]
    fn sources() {
        let s: FanSource = serde_json::from_str("\"p2\"").unwrap();
        assert_eq!(s.to_fan().unwrap(), builtin("p2").unwrap());
        let w: WeightsFile =
            serde_json::from_str(r#"{"fan":"p2","codim":1,"weights":[{"cone":[0],"w":"1"}]}"#).unwrap();
        assert_eq!(w.kind, KindFile::Minkowski);
    }
}
