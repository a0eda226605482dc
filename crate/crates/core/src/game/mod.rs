//! Interactive game sessions.
//!
//! A session moves through `AwaitingFirstPick → HostOpened →
//! AwaitingFinalPick → Revealed`. The prize is drawn from the seed when the
//! session is created and stays hidden from the client view until the
//! reveal.

mod blob;

use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use blob::{SessionView, SCHEMA_VERSION};

use crate::classical::{host_open, other_door, outcome, Outcome};
use crate::door::DoorId;
use crate::error::{Error, Result};
use crate::scheme1;
use crate::scheme2;
use crate::sim::format_bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    AwaitingFirstPick,
    HostOpened,
    AwaitingFinalPick,
    Revealed,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::AwaitingFirstPick => "awaiting_first_pick",
            Phase::HostOpened => "host_opened",
            Phase::AwaitingFinalPick => "awaiting_final_pick",
            Phase::Revealed => "revealed",
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What decides the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    #[serde(rename = "classical")]
    Classical,
    #[serde(rename = "scheme1")]
    QuantumScheme1,
    #[serde(rename = "scheme2")]
    QuantumScheme2,
}

impl Engine {
    pub const ALL: [Engine; 3] = [
        Engine::Classical,
        Engine::QuantumScheme1,
        Engine::QuantumScheme2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Classical => "classical",
            Engine::QuantumScheme1 => "scheme1",
            Engine::QuantumScheme2 => "scheme2",
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::validation(format!("unknown engine `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FinalChoice {
    Stick,
    Switch,
    Door(DoorId),
}

/// Amplitude of one basis state of the final-choice register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub basis: String,
    pub re: f64,
    pub im: f64,
    pub prob: f64,
}

/// Parameters that rebuild the circuit that produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitRef {
    pub scheme: Engine,
    pub prize: DoorId,
    pub first: DoorId,
    pub second: DoorId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EventKind {
    Created {
        engine: Engine,
    },
    FirstPick {
        door: DoorId,
    },
    HostOpened {
        door: DoorId,
    },
    FinalPick {
        choice: FinalChoice,
        door: DoorId,
    },
    Revealed {
        prize: DoorId,
        result: Outcome,
        circuit: CircuitRef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        amplitudes: Option<Vec<AmplitudeEntry>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ancilla: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub at_ms: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

impl Event {
    fn now(kind: EventKind) -> Self {
        let at_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        Self { at_ms, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSession {
    pub schema: u32,
    pub id: String,
    pub phase: Phase,
    pub engine: Engine,
    pub seed: u64,
    pub prize: DoorId,
    pub first: Option<DoorId>,
    pub opened: Option<DoorId>,
    #[serde(rename = "final")]
    pub final_door: Option<DoorId>,
    pub result: Option<Outcome>,
    pub transcript: Vec<Event>,
}

/// Prize door drawn from `seed`.
pub fn prize_for_seed(seed: u64) -> DoorId {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DoorId::ALL[rng.random_range(0..3)]
}

/// Amplitudes of the final-choice register for the scheme-1 circuit.
pub fn alice_amplitude_entries(prize: DoorId, first: DoorId) -> Result<Vec<AmplitudeEntry>> {
    let amps = scheme1::alice_amplitudes(prize, first)?;
    Ok(amps
        .iter()
        .enumerate()
        .map(|(k, a)| AmplitudeEntry {
            basis: format_bits(k as u64, 2),
            re: a.re,
            im: a.im,
            prob: a.norm_sqr(),
        })
        .collect())
}

impl GameSession {
    pub fn new(engine: Engine, seed: u64) -> Self {
        Self::with_id(uuid::Uuid::new_v4().to_string(), engine, seed)
    }

    pub fn with_id(id: String, engine: Engine, seed: u64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            id,
            phase: Phase::AwaitingFirstPick,
            engine,
            seed,
            prize: prize_for_seed(seed),
            first: None,
            opened: None,
            final_door: None,
            result: None,
            transcript: vec![Event::now(EventKind::Created { engine })],
        }
    }

    fn expect_phase(&self, want: Phase, action: &str) -> Result<()> {
        if self.phase != want {
            return Err(Error::State {
                phase: self.phase.to_string(),
                action: action.to_string(),
            });
        }
        Ok(())
    }

    /// First pick; the host opens his door immediately.
    pub fn pick_first(&mut self, door: DoorId) -> Result<DoorId> {
        self.expect_phase(Phase::AwaitingFirstPick, "first_pick")?;
        let opened = host_open(self.prize, door);
        self.first = Some(door);
        self.transcript
            .push(Event::now(EventKind::FirstPick { door }));
        self.phase = Phase::HostOpened;
        self.opened = Some(opened);
        self.transcript
            .push(Event::now(EventKind::HostOpened { door: opened }));
        self.phase = Phase::AwaitingFinalPick;
        Ok(opened)
    }

    /// Door a final choice resolves to, once the host has opened his door.
    pub fn resolve(&self, choice: FinalChoice) -> Result<DoorId> {
        let (first, opened) = self.first.zip(self.opened).ok_or_else(|| Error::State {
            phase: self.phase.to_string(),
            action: "final_pick".into(),
        })?;
        match choice {
            FinalChoice::Stick => Ok(first),
            FinalChoice::Switch => Ok(other_door(first, opened)),
            FinalChoice::Door(d) if d == opened => {
                Err(Error::RuleViolation(format!("door {d} is already open")))
            }
            FinalChoice::Door(d) => Ok(d),
        }
    }

    /// Final pick; the engine decides the result and the prize is revealed.
    pub fn pick_final(&mut self, choice: FinalChoice) -> Result<Outcome> {
        self.expect_phase(Phase::AwaitingFinalPick, "final_pick")?;
        let door = self.resolve(choice)?;
        let first = self.first.expect("set in AwaitingFinalPick");
        let prize = self.prize;

        let circuit = CircuitRef {
            scheme: self.engine,
            prize,
            first,
            second: door,
        };
        let (result, amplitudes, ancilla) = match self.engine {
            Engine::Classical => (outcome(prize, first, door)?, None, None),
            Engine::QuantumScheme1 => {
                let run = scheme1::Scheme1Run::new(prize, first)?;
                let win = run.door_holds_prize(door)?;
                (
                    Outcome::from_win(win),
                    Some(alice_amplitude_entries(prize, first)?),
                    None,
                )
            }
            Engine::QuantumScheme2 => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let v = scheme2::verdict(prize, first, door, &mut rng)?;
                (v.result, None, Some(v.pattern()))
            }
        };

        self.final_door = Some(door);
        self.transcript
            .push(Event::now(EventKind::FinalPick { choice, door }));
        self.result = Some(result);
        self.phase = Phase::Revealed;
        self.transcript.push(Event::now(EventKind::Revealed {
            prize,
            result,
            circuit,
            amplitudes,
            ancilla,
        }));
        Ok(result)
    }

    /// Scheme-1 amplitudes recorded at the reveal, if any.
    pub fn revealed_amplitudes(&self) -> Option<&[AmplitudeEntry]> {
        self.transcript.iter().find_map(|e| match &e.kind {
            EventKind::Revealed {
                amplitudes: Some(a),
                ..
            } => Some(a.as_slice()),
            _ => None,
        })
    }
}
