//! Session blob (storage form) and the redacted client view.
//!
//! The blob is pretty-printed JSON with stable field names:
//!
//! ```json
//! {
//!   "schema": 1,
//!   "id": "…",
//!   "phase": "awaiting_final_pick",
//!   "engine": "scheme2",
//!   "seed": 7,
//!   "prize": "D3",
//!   "first": "D1",
//!   "opened": "D2",
//!   "final": null,
//!   "result": null,
//!   "transcript": [
//!     { "at_ms": 1760000000000, "type": "created", "engine": "scheme2" },
//!     { "at_ms": 1760000000100, "type": "first_pick", "door": "D1" },
//!     { "at_ms": 1760000000100, "type": "host_opened", "door": "D2" }
//!   ]
//! }
//! ```
//!
//! The blob always carries the prize. [`SessionView`] is what clients get:
//! it drops `prize` and `seed` until the session is revealed.

use serde::{Deserialize, Serialize};

use super::{AmplitudeEntry, Engine, Event, EventKind, GameSession, Phase};
use crate::classical::{host_open, Outcome};
use crate::door::DoorId;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

impl GameSession {
    pub fn to_blob(&self) -> String {
        serde_json::to_string_pretty(self).expect("session serializes")
    }

    /// Parses and validates a blob. Errors carry the line and column.
    pub fn from_blob(blob: &str) -> Result<GameSession> {
        let s: GameSession = serde_json::from_str(blob).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        s.validate()?;
        Ok(s)
    }

    /// Cross-field consistency of a decoded session.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            column: 0,
            message: m.to_string(),
        };
        if self.schema != SCHEMA_VERSION {
            return Err(bad(&format!("unsupported schema {}", self.schema)));
        }
        let picked = self.first.is_some();
        let opened_ok = match (self.first, self.opened) {
            (Some(f), Some(o)) => host_open(self.prize, f) == o,
            (None, None) => true,
            _ => false,
        };
        if !opened_ok {
            return Err(bad("opened door inconsistent with first pick and prize"));
        }
        let finished = self.final_door.is_some() && self.result.is_some();
        let expected = match self.phase {
            Phase::AwaitingFirstPick => {
                !picked && self.final_door.is_none() && self.result.is_none()
            }
            Phase::HostOpened | Phase::AwaitingFinalPick => {
                picked && self.final_door.is_none() && self.result.is_none()
            }
            Phase::Revealed => picked && finished,
        };
        if !expected {
            return Err(bad(&format!(
                "fields inconsistent with phase {}",
                self.phase
            )));
        }
        if let (Some(d), Some(o)) = (self.final_door, self.opened) {
            if d == o {
                return Err(bad("final door is the opened door"));
            }
        }
        match self.transcript.first() {
            Some(Event {
                kind: EventKind::Created { engine },
                ..
            }) if *engine == self.engine => Ok(()),
            _ => Err(bad("transcript must start with the created event")),
        }
    }

    /// Client-facing projection.
    pub fn view(&self) -> SessionView {
        let revealed = self.phase == Phase::Revealed;
        SessionView {
            schema: self.schema,
            id: self.id.clone(),
            phase: self.phase,
            engine: self.engine,
            seed: revealed.then_some(self.seed),
            prize: revealed.then_some(self.prize),
            first: self.first,
            opened: self.opened,
            final_door: self.final_door,
            result: self.result,
            amplitudes: self.revealed_amplitudes().map(<[AmplitudeEntry]>::to_vec),
            transcript: self.transcript.clone(),
        }
    }
}

/// Redacted session for clients. `prize` and `seed` are absent (not null)
/// before the reveal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub schema: u32,
    pub id: String,
    pub phase: Phase,
    pub engine: Engine,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prize: Option<DoorId>,
    pub first: Option<DoorId>,
    pub opened: Option<DoorId>,
    #[serde(rename = "final")]
    pub final_door: Option<DoorId>,
    pub result: Option<Outcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<AmplitudeEntry>>,
    pub transcript: Vec<Event>,
}
