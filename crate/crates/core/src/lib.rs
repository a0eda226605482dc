//! Quantum Monty Hall on a dense statevector simulator.
//!
//! * [`sim`]: statevector, controlled gates, marginals, seeded measurement.
//! * [`gates`]: named gates, circuits, text export, ladder decomposition
//!   and a dense-matrix oracle.
//! * [`classical`]: exhaustive classical game with the lowest-door host rule.
//! * [`scheme1`]: circuit yielding the final-door distribution.
//! * [`scheme2`]: circuit yielding a win/lose verdict on three ancillas.
//! * [`game`]: interactive sessions backed by any of the above.

pub mod classical;
pub mod door;
pub mod error;
pub mod gadget;
pub mod game;
pub mod gates;
pub mod scheme1;
pub mod scheme2;
pub mod sim;

pub use classical::{host_open, outcome, strategy_payoff, Outcome, Strategy};
pub use door::DoorId;
pub use error::{Error, Result};
pub use gates::Circuit;
pub use sim::{ControlSpec, Distribution, GateKind, GateOp, Polarity, StateVector};
