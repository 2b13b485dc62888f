use num_complex::Complex;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::complex::{gaussian_to_string, GaussianRational};
use crate::series::SeriesPoint;
use crate::special::QuadraticIrrational;

pub const REGISTRY_JSON: &str = include_str!("../../data/table1.json");
pub const ALLOWED_DEGREES: [u32; 6] = [3, 5, 7, 13, 17, 19];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: i64,
    pub den: i64,
}

impl RationalRecord {
    pub fn to_rational(self) -> Result<BigRational, HarnessError> {
        if self.den == 0 {
            return Err(HarnessError::Registry("zero denominator".into()));
        }
        Ok(BigRational::new(self.num.into(), self.den.into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianRecord {
    pub re: RationalRecord,
    pub im: RationalRecord,
}

impl GaussianRecord {
    pub fn to_gaussian(self) -> Result<GaussianRational, HarnessError> {
        Ok(Complex::new(self.re.to_rational()?, self.im.to_rational()?))
    }
}

/// `re + im_scale * i * sqrt(im_radicand)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauRecord {
    pub re: RationalRecord,
    pub im_scale: RationalRecord,
    pub im_radicand: RationalRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub id: String,
    pub x: GaussianRecord,
    pub y: GaussianRecord,
    pub tau: TauRecord,
    pub p: u32,
    pub starred: bool,
    pub cross_ref: String,
    #[serde(default)]
    pub expected_failure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryFile {
    pub schema_version: u32,
    pub entries: Vec<EntryRecord>,
}

/// One row of the modular parametrization table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub id: String,
    pub point: SeriesPoint,
    pub tau: QuadraticIrrational,
    pub p: u32,
    /// `Y = 1/k'(p tau)` instead of `k'(p tau)`
    pub starred: bool,
    pub cross_ref: String,
    /// the pair satisfies the relations but not the hypergeometric form
    pub expected_failure: bool,
}

impl TableEntry {
    pub fn from_record(r: &EntryRecord) -> Result<Self, HarnessError> {
        if !ALLOWED_DEGREES.contains(&r.p) {
            return Err(HarnessError::Registry(format!("{}: degree {} not allowed", r.id, r.p)));
        }
        let point = SeriesPoint::new(r.x.to_gaussian()?, r.y.to_gaussian()?)
            .map_err(|e| HarnessError::Registry(format!("{}: {e}", r.id)))?;
        let tau = QuadraticIrrational::from_parts(
            r.tau.re.to_rational()?,
            r.tau.im_scale.to_rational()?,
            r.tau.im_radicand.to_rational()?,
        )
        .map_err(|e| HarnessError::Registry(format!("{}: {e}", r.id)))?;
        if !tau.in_upper_half_plane() {
            return Err(HarnessError::Registry(format!("{}: tau not in the upper half-plane", r.id)));
        }
        Ok(TableEntry {
            id: r.id.clone(),
            point,
            tau,
            p: r.p,
            starred: r.starred,
            cross_ref: r.cross_ref.clone(),
            expected_failure: r.expected_failure,
        })
    }

    pub fn describe(&self) -> String {
        format!(
            "x = {}, y = {}, tau = {}, p = {}{}",
            gaussian_to_string(&self.point.x),
            gaussian_to_string(&self.point.y),
            self.tau,
            self.p,
            if self.starred { "*" } else { "" }
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Registry {
    pub entries: Vec<TableEntry>,
}

impl Registry {
    pub fn parse(json: &str) -> Result<Self, HarnessError> {
        let file: RegistryFile = serde_json::from_str(json).map_err(|e| HarnessError::Registry(e.to_string()))?;
        let entries = file.entries.iter().map(TableEntry::from_record).collect::<Result<Vec<_>, _>>()?;
        let mut ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(HarnessError::Registry("duplicate id".into()));
        }
        Ok(Registry { entries })
    }

    pub fn builtin() -> Self {
        Self::parse(REGISTRY_JSON).expect("checked-in registry is valid")
    }

    pub fn get(&self, id: &str) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Table rows, without the expected-failure records.
    pub fn table(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(|e| !e.expected_failure)
    }

    pub fn expected_failures(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(|e| e.expected_failure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shape() {
        let r = Registry::builtin();
        assert_eq!(r.entries.len(), 18);
        assert_eq!(r.table().count(), 17);
        assert_eq!(r.table().filter(|e| e.starred).count(), 3);
        let e = r.get("3.24").unwrap();
        assert_eq!(e.p, 5);
        assert_eq!(e.tau.to_string(), "1/2 + (3/10)i*sqrt(5)");
    }

    #[test]
    fn rejects_bad_degree() {
        let bad = REGISTRY_JSON.replacen("\"p\": 5", "\"p\": 11", 1);
        assert!(matches!(Registry::parse(&bad), Err(HarnessError::Registry(_))));
    }
}
