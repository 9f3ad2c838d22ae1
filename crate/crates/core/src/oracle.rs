//! Brute-force simple games over labeled players.
//!
//! Every query enumerates all `2^n` coalitions, so results here do not depend
//! on any closed form. Player counts are capped at [`MAX_PLAYERS`].
//! Enumeration is split over fixed ranges of the subset index space and the
//! partial counts are added, so results do not depend on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::coalition::CountVector;
use crate::legislature::MulticamSpec;
use crate::us_model::{PlayerClass, UsSpec};

pub const MAX_PLAYERS: usize = 25;

/// A set of players as a bit mask: bit `i` is player `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Coalition(players.into_iter().fold(0, |m, p| m | 1 << (p - 1)))
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 >> (player - 1) & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << (player - 1))
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << (player - 1)))
    }

    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    /// Player indices in increasing order.
    pub fn members(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    fn count_in(self, mask: u32) -> u64 {
        (self.0 & mask).count_ones() as u64
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Player {
    pub index: usize,
    pub class: String,
}

/// Which simple-game axiom a rule breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyWins,
    FullLoses,
    /// `smaller` wins, `larger` is a superset of it and loses.
    NotMonotone { smaller: Coalition, larger: Coalition },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyWins => f.write_str("the empty coalition wins"),
            Violation::FullLoses => f.write_str("the grand coalition loses"),
            Violation::NotMonotone { smaller, larger } => {
                write!(f, "{smaller:?} wins but its superset {larger:?} loses")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{players} players exceed the enumeration bound of {MAX_PLAYERS}")]
    TooManyPlayers { players: u64 },
    #[error("not a simple game: {0}")]
    Invalid(Violation),
    #[error("player indices must be 1..=n in order")]
    BadIndices,
    #[error("unknown player {0}")]
    UnknownPlayer(usize),
}

pub type WinRule = Arc<dyn Fn(Coalition) -> bool + Send + Sync>;

/// A validated monotone simple game.
#[derive(Clone)]
pub struct SimpleGame {
    players: Vec<Player>,
    rule: WinRule,
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGame")
            .field("players", &self.players)
            .finish_non_exhaustive()
    }
}

impl SimpleGame {
    /// Builds a game and validates it exhaustively.
    pub fn new<F>(players: Vec<Player>, rule: F) -> Result<Self, OracleError>
    where
        F: Fn(Coalition) -> bool + Send + Sync + 'static,
    {
        if players.len() > MAX_PLAYERS {
            return Err(OracleError::TooManyPlayers {
                players: players.len() as u64,
            });
        }
        if players.iter().enumerate().any(|(i, p)| p.index != i + 1) {
            return Err(OracleError::BadIndices);
        }
        let game = Self {
            players,
            rule: Arc::new(rule),
        };
        game.validate().map_err(OracleError::Invalid)?;
        Ok(game)
    }

    /// Players `1..=n` all of class `class`.
    pub fn anonymous<F>(n: usize, class: &str, rule: F) -> Result<Self, OracleError>
    where
        F: Fn(Coalition) -> bool + Send + Sync + 'static,
    {
        let players = (1..=n)
            .map(|index| Player {
                index,
                class: class.to_string(),
            })
            .collect();
        Self::new(players, rule)
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn wins(&self, s: Coalition) -> bool {
        (self.rule)(s)
    }

    fn full(&self) -> Coalition {
        Coalition(((1u64 << self.n()) - 1) as u32)
    }

    /// Checks the three axioms; the monotonicity witness is the first failing
    /// `(S, S + i)` pair in increasing mask order.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.wins(Coalition(0)) {
            return Err(Violation::EmptyWins);
        }
        if !self.wins(self.full()) {
            return Err(Violation::FullLoses);
        }
        let n = self.n();
        let witness = (0..(1u64 << n)).into_par_iter().find_map_first(|mask| {
            let s = Coalition(mask as u32);
            if !self.wins(s) {
                return None;
            }
            (1..=n)
                .filter(|&i| !s.contains(i))
                .map(|i| s.with(i))
                .find(|t| !self.wins(*t))
                .map(|t| (s, t))
        });
        match witness {
            Some((smaller, larger)) => Err(Violation::NotMonotone { smaller, larger }),
            None => Ok(()),
        }
    }

    /// For each size `k`, how many winning coalitions of size `k` contain
    /// `player` and lose without them.
    pub fn critical_vector(&self, player: usize) -> Result<CountVector, OracleError> {
        let n = self.n();
        if player == 0 || player > n {
            return Err(OracleError::UnknownPlayer(player));
        }
        // Enumerate the other n - 1 players and splice `player` back in.
        let low_mask = (1u64 << (player - 1)) - 1;
        let counts = (0..(1u64 << (n - 1)))
            .into_par_iter()
            .fold(
                || vec![0u64; n + 1],
                |mut acc, rest| {
                    let without = (rest & low_mask) | ((rest & !low_mask) << 1);
                    let without = Coalition(without as u32);
                    let with = without.with(player);
                    if self.wins(with) && !self.wins(without) {
                        acc[with.size() as usize] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(CountVector::from_dense(
            0,
            counts.into_iter().map(BigUint::from).collect(),
        ))
    }

    /// Inclusion-minimal winning coalitions in increasing mask order.
    pub fn minimal_winning(&self) -> Vec<Coalition> {
        let n = self.n();
        (0..(1u64 << n))
            .into_par_iter()
            .map(|m| Coalition(m as u32))
            .filter(|&s| self.wins(s) && s.members().iter().all(|&i| !self.wins(s.without(i))))
            .collect()
    }

    /// First player index of each class, in order of appearance.
    pub fn class_representatives(&self) -> Vec<(String, usize)> {
        let mut seen: Vec<(String, usize)> = Vec::new();
        for p in &self.players {
            if !seen.iter().any(|(c, _)| c == &p.class) {
                seen.push((p.class.clone(), p.index));
            }
        }
        seen
    }

    /// Critical vectors for every player, grouped by class. Each entry holds
    /// the vector of the first player of that class and whether every other
    /// player of the class has the same vector.
    pub fn class_critical_vectors(&self) -> Result<BTreeMap<String, (CountVector, bool)>, OracleError> {
        let mut out: BTreeMap<String, (CountVector, bool)> = BTreeMap::new();
        for p in &self.players {
            let v = self.critical_vector(p.index)?;
            match out.get_mut(&p.class) {
                Some((first, same)) => *same &= *first == v,
                None => {
                    out.insert(p.class.clone(), (v, true));
                }
            }
        }
        Ok(out)
    }
}

fn check_size(players: u64) -> Result<(), OracleError> {
    if players > MAX_PLAYERS as u64 {
        return Err(OracleError::TooManyPlayers { players });
    }
    Ok(())
}

/// Labeled game of a multicameral legislature; players are listed chamber by
/// chamber and labeled with the chamber name.
pub fn from_multicam(spec: &MulticamSpec) -> Result<SimpleGame, OracleError> {
    check_size(spec.total_members())?;
    let mut players = Vec::new();
    let mut masks = Vec::new();
    for c in spec.chambers() {
        let start = players.len();
        for _ in 0..c.size() {
            players.push(Player {
                index: players.len() + 1,
                class: c.name().to_string(),
            });
        }
        let mask = (((1u64 << c.size()) - 1) << start) as u32;
        masks.push((mask, c.quota()));
    }
    SimpleGame::new(players, move |s| {
        masks.iter().all(|&(mask, q)| s.count_in(mask) >= q)
    })
}

/// Labeled game of a [`UsSpec`]: president, vice president, senators,
/// representatives, in that order, labeled by [`PlayerClass`] name.
pub fn from_us(spec: &UsSpec) -> Result<SimpleGame, OracleError> {
    check_size(spec.total_players())?;
    let mut players = Vec::new();
    let mut push = |class: PlayerClass, count: u64| {
        let start = players.len();
        for _ in 0..count {
            players.push(Player {
                index: players.len() + 1,
                class: class.as_str().to_string(),
            });
        }
        (((1u64 << count) - 1) << start) as u32
    };
    let president = push(PlayerClass::President, u64::from(spec.has_president));
    let vp = push(PlayerClass::VicePresident, u64::from(spec.has_vp));
    let senate = push(PlayerClass::Senator, spec.senate_size);
    let house = push(PlayerClass::Representative, spec.house_size);
    let spec = *spec;
    SimpleGame::new(players, move |s| {
        spec.passes(
            s.count_in(president) > 0,
            s.count_in(vp) > 0,
            s.count_in(senate),
            s.count_in(house),
        )
    })
}
