use std::str::FromStr;

use votepower::legislature::member_critical_vector;
use votepower::oracle::{from_multicam, from_us, SimpleGame, MAX_PLAYERS};
use votepower::us_model::class_critical_vector;
use votepower::{CountVector, MulticamSpec, PlayerClass, UsSpec};

use crate::error::{invalid, CliError};

/// A validated legislature, either plain chambers or the executive system.
#[derive(Debug, Clone)]
pub enum Model {
    Chambers(MulticamSpec),
    Us {
        spec: UsSpec,
        senate: String,
        house: String,
    },
}

impl Model {
    pub fn us(spec: UsSpec) -> Self {
        Model::Us {
            spec,
            senate: "senate".into(),
            house: "house".into(),
        }
    }

    pub fn players(&self) -> u64 {
        match self {
            Model::Chambers(spec) => spec.total_members(),
            Model::Us { spec, .. } => spec.total_players(),
        }
    }

    /// Class labels in declaration order.
    pub fn classes(&self) -> Vec<String> {
        match self {
            Model::Chambers(spec) => spec.chambers().iter().map(|c| c.name().to_string()).collect(),
            Model::Us { spec, .. } => spec.classes().iter().map(|c| c.as_str().to_string()).collect(),
        }
    }

    /// Maps a user-supplied name to a class label. In the executive system
    /// the chamber names stand for their members.
    pub fn resolve(&self, name: &str) -> Result<String, CliError> {
        let unknown = || {
            invalid(format!(
                "unknown class {name:?}; expected one of: {}",
                self.classes().join(", ")
            ))
        };
        match self {
            Model::Chambers(spec) => spec
                .chamber(name)
                .map(|c| c.name().to_string())
                .map_err(|_| unknown()),
            Model::Us { spec, senate, house } => {
                let class = if name == senate {
                    PlayerClass::Senator
                } else if name == house {
                    PlayerClass::Representative
                } else {
                    PlayerClass::from_str(name).map_err(|_| unknown())?
                };
                if !spec.has_class(class) {
                    return Err(unknown());
                }
                Ok(class.as_str().to_string())
            }
        }
    }

    pub fn critical_vector(&self, class: &str) -> Result<CountVector, CliError> {
        match self {
            Model::Chambers(spec) => {
                member_critical_vector(spec, class).map_err(|e| invalid(e.to_string()))
            }
            Model::Us { spec, .. } => {
                let c = PlayerClass::from_str(class).map_err(invalid)?;
                class_critical_vector(spec, c).map_err(|e| invalid(e.to_string()))
            }
        }
    }

    /// The enumerable game, labeled with the same class names as [`Model::classes`].
    pub fn game(&self) -> Result<SimpleGame, CliError> {
        let n = self.players();
        if n > MAX_PLAYERS as u64 {
            return Err(CliError::Bound(format!(
                "spec has {n} players; exhaustive enumeration is limited to {MAX_PLAYERS}"
            )));
        }
        match self {
            Model::Chambers(spec) => from_multicam(spec),
            Model::Us { spec, .. } => from_us(spec),
        }
        .map_err(|e| invalid(e.to_string()))
    }
}
