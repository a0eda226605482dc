use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three doors, with two-bit encoding D1 = 00, D2 = 01, D3 = 10.
/// The pattern 11 is never a door.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DoorId {
    D1,
    D2,
    D3,
}

impl DoorId {
    pub const ALL: [DoorId; 3] = [DoorId::D1, DoorId::D2, DoorId::D3];

    /// Two-bit register value (0, 1 or 2).
    pub const fn code(self) -> u64 {
        match self {
            DoorId::D1 => 0b00,
            DoorId::D2 => 0b01,
            DoorId::D3 => 0b10,
        }
    }

    pub fn from_code(code: u64) -> Option<DoorId> {
        match code {
            0b00 => Some(DoorId::D1),
            0b01 => Some(DoorId::D2),
            0b10 => Some(DoorId::D3),
            _ => None,
        }
    }

    /// `(high, low)` bits of the encoding.
    pub const fn bits(self) -> (bool, bool) {
        let c = self.code();
        (c & 0b10 != 0, c & 0b01 != 0)
    }

    /// Position 0, 1, 2 in D1 < D2 < D3 order.
    pub const fn index(self) -> usize {
        self.code() as usize
    }

    /// Human door number 1..=3.
    pub const fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<DoorId> {
        match n {
            1 => Some(DoorId::D1),
            2 => Some(DoorId::D2),
            3 => Some(DoorId::D3),
            _ => None,
        }
    }

    /// Ket label such as `"01"`.
    pub fn ket(self) -> &'static str {
        match self {
            DoorId::D1 => "00",
            DoorId::D2 => "01",
            DoorId::D3 => "10",
        }
    }
}

impl fmt::Display for DoorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(["D1", "D2", "D3"][self.index()])
    }
}

impl FromStr for DoorId {
    type Err = Error;

    /// Accepts `D1`/`d1` or a bare door number `1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix(['D', 'd']).unwrap_or(t);
        digits
            .parse::<u8>()
            .ok()
            .and_then(DoorId::from_number)
            .ok_or_else(|| Error::validation(format!("unknown door `{t}`")))
    }
}
