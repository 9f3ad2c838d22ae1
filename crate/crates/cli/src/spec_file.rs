//! The legislature description read from disk.
//!
//! ```json
//! {
//!   "chambers": [
//!     {"name": "senate", "size": 100, "quota": 51},
//!     {"name": "house", "size": 435, "quota": 218}
//!   ],
//!   "executive": {
//!     "president": true,
//!     "vice_president": true,
//!     "override": {"senate": 67, "house": 290}
//!   }
//! }
//! ```
//!
//! Without `executive` the file describes a multicameral legislature in which
//! a bill needs a quota in every chamber. With it, exactly two chambers are
//! required; the first plays the senate and the second the house.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use votepower::{ChamberSpec, MulticamSpec, UsSpec};

use crate::error::{invalid, CliError};
use crate::model::Model;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub chambers: Vec<ChamberEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub executive: Option<Executive>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberEntry {
    pub name: String,
    pub size: u64,
    pub quota: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Executive {
    pub president: bool,
    pub vice_president: bool,
    #[serde(rename = "override")]
    pub override_quotas: BTreeMap<String, u64>,
}

impl SpecFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("{origin}: {e}")))
    }

    pub fn to_model(&self) -> Result<Model, CliError> {
        if self.chambers.is_empty() {
            return Err(invalid("chambers: at least one chamber is required"));
        }
        let mut seen = HashSet::new();
        for (i, c) in self.chambers.iter().enumerate() {
            let at = format!("chambers[{i}] ({:?})", c.name);
            if c.name.is_empty() {
                return Err(invalid(format!("chambers[{i}]: name must not be empty")));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(invalid(format!("{at}: duplicate chamber name")));
            }
            if c.size == 0 {
                return Err(invalid(format!("{at}: size must be at least 1")));
            }
            if c.quota == 0 || c.quota > c.size {
                return Err(invalid(format!(
                    "{at}: quota {} outside [1, {}]",
                    c.quota, c.size
                )));
            }
        }
        match &self.executive {
            None => {
                let chambers = self
                    .chambers
                    .iter()
                    .map(|c| ChamberSpec::new(c.name.clone(), c.size, c.quota))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| invalid(e.to_string()))?;
                Ok(Model::Chambers(
                    MulticamSpec::new(chambers).map_err(|e| invalid(e.to_string()))?,
                ))
            }
            Some(exec) => self.us_model(exec),
        }
    }

    fn us_model(&self, exec: &Executive) -> Result<Model, CliError> {
        let [senate, house] = self.chambers.as_slice() else {
            return Err(invalid(format!(
                "executive: requires exactly two chambers, found {}",
                self.chambers.len()
            )));
        };
        if let Some(name) = exec
            .override_quotas
            .keys()
            .find(|k| *k != &senate.name && *k != &house.name)
        {
            return Err(invalid(format!("executive.override: unknown chamber {name:?}")));
        }
        let override_for = |c: &ChamberEntry| {
            let q = *exec.override_quotas.get(&c.name).ok_or_else(|| {
                invalid(format!("executive.override: missing quota for chamber {:?}", c.name))
            })?;
            if q < c.quota || q > c.size {
                return Err(invalid(format!(
                    "executive.override.{}: {q} outside [{}, {}]",
                    c.name, c.quota, c.size
                )));
            }
            Ok(q)
        };
        let spec = UsSpec {
            senate_size: senate.size,
            house_size: house.size,
            senate_quota: senate.quota,
            house_quota: house.quota,
            senate_override: override_for(senate)?,
            house_override: override_for(house)?,
            has_president: exec.president,
            has_vp: exec.vice_president,
        };
        spec.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(Model::Us {
            spec,
            senate: senate.name.clone(),
            house: house.name.clone(),
        })
    }
}
