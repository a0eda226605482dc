use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Probability distribution over `width`-bit outcomes.
///
/// Outcome values are read most-significant bit first: for a marginal over
/// `[q_a, q_b]` the value `0b10` means `q_a = 1, q_b = 0`. For the full
/// register the leftmost bit is the highest qubit index.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    width: usize,
    entries: BTreeMap<u64, f64>,
}

impl Distribution {
    pub(crate) fn from_entries(width: usize, entries: BTreeMap<u64, f64>) -> Self {
        Self { width, entries }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Probability of `value` (0 if it was below the noise floor).
    pub fn prob(&self, value: u64) -> f64 {
        self.entries.get(&value).copied().unwrap_or(0.0)
    }

    /// Probability of a bitstring such as `"01"`.
    ///
    /// Panics if `bits` is not a `width`-long string of `0`/`1`.
    pub fn prob_of(&self, bits: &str) -> f64 {
        assert_eq!(bits.len(), self.width, "bitstring width mismatch");
        let value = u64::from_str_radix(bits, 2).expect("bitstring");
        self.prob(value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn bitstring(&self, value: u64) -> String {
        format_bits(value, self.width)
    }

    /// Largest absolute probability difference over the union of outcomes.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|&k| (self.prob(k) - other.prob(k)).abs())
            .fold(0.0, f64::max)
    }
}

pub fn format_bits(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if (value >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, p)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {p:.6}", self.bitstring(k))?;
        }
        f.write_str("}")
    }
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (k, p) in self.iter() {
            map.serialize_entry(&self.bitstring(k), &p)?;
        }
        map.end()
    }
}
