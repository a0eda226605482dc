//! Exhaustive classical Monty Hall evaluator.
//!
//! The host always opens the lowest-numbered door that is neither the prize
//! nor the player's first pick. Every quantum verdict in this crate is
//! checked against this module.

use std::fmt;
use std::io;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::door::DoorId;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Win,
    Lose,
}

impl Outcome {
    pub fn from_win(win: bool) -> Self {
        if win {
            Outcome::Win
        } else {
            Outcome::Lose
        }
    }

    pub fn is_win(self) -> bool {
        self == Outcome::Win
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Outcome::Win => "win",
            Outcome::Lose => "lose",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Stick,
    Switch,
}

/// Door the host opens: the smallest one that is neither `prize` nor `first`.
pub fn host_open(prize: DoorId, first: DoorId) -> DoorId {
    DoorId::ALL
        .into_iter()
        .find(|&d| d != prize && d != first)
        .expect("three doors always leave one to open")
}

/// The door that is neither `first` nor `opened`.
pub fn other_door(first: DoorId, opened: DoorId) -> DoorId {
    DoorId::ALL
        .into_iter()
        .find(|&d| d != first && d != opened)
        .expect("first and opened differ")
}

/// Final door for a strategy after the host has opened his door.
pub fn strategy_door(strategy: Strategy, prize: DoorId, first: DoorId) -> DoorId {
    match strategy {
        Strategy::Stick => first,
        Strategy::Switch => other_door(first, host_open(prize, first)),
    }
}

/// Win iff `second` is the prize. Choosing the opened door is a rule violation.
pub fn outcome(prize: DoorId, first: DoorId, second: DoorId) -> Result<Outcome> {
    let opened = host_open(prize, first);
    if second == opened {
        return Err(Error::RuleViolation(format!(
            "door {second} was opened by the host and cannot be chosen"
        )));
    }
    Ok(Outcome::from_win(second == prize))
}

/// Exact win probability of `strategy` under a uniform prize and uniform first pick.
pub fn strategy_payoff(strategy: Strategy) -> Ratio<u32> {
    let wins = DoorId::ALL
        .into_iter()
        .flat_map(|p| DoorId::ALL.into_iter().map(move |f| (p, f)))
        .filter(|&(p, f)| {
            let second = strategy_door(strategy, p, f);
            outcome(p, f, second).expect("strategies never pick the opened door") == Outcome::Win
        })
        .count();
    Ratio::new(wins as u32, 9)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub prize: DoorId,
    pub first: DoorId,
    pub opened: DoorId,
    pub second: DoorId,
    pub win: bool,
}

/// All 18 valid (prize, first, second) rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseTable {
    rows: Vec<CaseRow>,
}

impl CaseTable {
    pub fn rows(&self) -> &[CaseRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with header `prize,first,opened,second,win`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        for r in &self.rows {
            wtr.serialize(r)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Enumerates the table in prize-major, then first, then second order.
pub fn full_table() -> CaseTable {
    let mut rows = Vec::with_capacity(18);
    for prize in DoorId::ALL {
        for first in DoorId::ALL {
            let opened = host_open(prize, first);
            for second in DoorId::ALL.into_iter().filter(|&d| d != opened) {
                rows.push(CaseRow {
                    prize,
                    first,
                    opened,
                    second,
                    win: second == prize,
                });
            }
        }
    }
    CaseTable { rows }
}

/// The nine (prize, first) pairs in prize-major order.
pub fn all_pairs() -> impl Iterator<Item = (DoorId, DoorId)> {
    DoorId::ALL
        .into_iter()
        .flat_map(|p| DoorId::ALL.into_iter().map(move |f| (p, f)))
}

/// The 18 valid (prize, first, second) triples, same order as [`full_table`].
pub fn all_triples() -> impl Iterator<Item = (DoorId, DoorId, DoorId)> {
    all_pairs().flat_map(|(p, f)| {
        let opened = host_open(p, f);
        DoorId::ALL
            .into_iter()
            .filter(move |&s| s != opened)
            .map(move |s| (p, f, s))
    })
}
