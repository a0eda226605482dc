//! Win-probability circuit.
//!
//! Twelve qubits: prize flags `D1 D2 D3`, their copies `D1' D2' D3'` used for
//! the win readout, Bob's register `B1 B2`, Alice's first pick `A1 A2` and her
//! final register `A3 A4`.
//!
//! The gate sequence, in order:
//!
//! 1. X on the prize flag and a CNOT copying it to the primed twin.
//! 2. X-encoding of the first pick on `A1 A2`.
//! 3. The three-door superposition on `B1 B2` and on `A3 A4`.
//! 4. Removal of the first pick from `B1 B2`, one gadget per pick, each
//!    conditioned on the `A1 A2` pattern.
//! 5. Removal of the host's door from `A3 A4`, one gadget per
//!    (prize, first) pair, conditioned on the prize flag and the `A1 A2` pattern.
//! 6. CNOT `A3 → B1` and `A4 → B2`.
//!
//! Measuring `A3 A4` then yields one of the two unopened doors with equal
//! probability, and the primed flag of that door says whether it holds the prize.
//!
//! The wiring is a reconstruction; it is pinned down by the support sets
//! (`A3 A4` always ends up on exactly the two doors the host left closed).

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::classical::{all_pairs, host_open, other_door};
use crate::door::DoorId;
use crate::error::{Error, Result};
use crate::gadget::DoorRegister;
use crate::gates::{cx, x, Circuit};
use crate::sim::{Amplitude, ControlSpec, Distribution, StateVector, SUPPORT_THRESHOLD};

/// Qubit indices of the twelve-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scheme1Layout {
    pub doors: [usize; 3],
    pub copies: [usize; 3],
    pub bob: DoorRegister,
    pub first: DoorRegister,
    pub alice: DoorRegister,
}

pub const LAYOUT: Scheme1Layout = Scheme1Layout {
    doors: [0, 1, 2],
    copies: [3, 4, 5],
    bob: DoorRegister::new(6, 7),
    first: DoorRegister::new(8, 9),
    alice: DoorRegister::new(10, 11),
};

pub const N_QUBITS: usize = 12;

pub const LABELS: [&str; N_QUBITS] = [
    "D1", "D2", "D3", "D1'", "D2'", "D3'", "B1", "B2", "A1", "A2", "A3", "A4",
];

/// Which stages to emit. Everything is on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scheme1Options {
    /// Emit the final CNOTs linking `A3 A4` to `B1 B2`.
    pub entangle: bool,
}

impl Default for Scheme1Options {
    fn default() -> Self {
        Self { entangle: true }
    }
}

pub fn build_scheme1(prize: DoorId, first: DoorId) -> Result<Circuit> {
    build_scheme1_with(prize, first, Scheme1Options::default())
}

pub fn build_scheme1_with(prize: DoorId, first: DoorId, opts: Scheme1Options) -> Result<Circuit> {
    let l = LAYOUT;
    let mut c = Circuit::with_labels(LABELS.iter().map(|s| s.to_string()).collect())?;

    let pq = l.doors[prize.index()];
    c.push(x(pq))?;
    c.push(cx(pq, l.copies[prize.index()])?)?;

    c.extend(l.first.encode(first))?;

    c.extend(l.bob.three_state()?)?;
    c.extend(l.alice.three_state()?)?;

    for pick in DoorId::ALL {
        c.extend(l.bob.controlled_removal(pick, &l.first.pattern(pick))?)?;
    }

    for (p, f) in all_pairs() {
        let mut ctl = vec![ControlSpec::pos(l.doors[p.index()])];
        ctl.extend(l.first.pattern(f));
        c.extend(l.alice.controlled_removal(host_open(p, f), &ctl)?)?;
    }

    if opts.entangle {
        c.push(cx(l.alice.hi, l.bob.hi)?)?;
        c.push(cx(l.alice.lo, l.bob.lo)?)?;
    }

    c.measure(&l.alice.qubits(), "alice")?;
    c.measure(&l.copies, "prize")?;
    Ok(c)
}

/// Amplitudes of the pure `A3 A4` state before measurement, indexed by door
/// code (|00⟩, |01⟩, |10⟩, |11⟩).
///
/// Read off the pre-entanglement state, where `A3 A4` factors out of the rest
/// of the register.
pub fn alice_amplitudes(prize: DoorId, first: DoorId) -> Result<[Amplitude; 4]> {
    let opts = Scheme1Options { entangle: false };
    let state = build_scheme1_with(prize, first, opts)?.simulate()?;
    factor_pair(&state, LAYOUT.alice)
}

/// Extracts the state of `reg` from a register where it is in a product
/// with everything else.
fn factor_pair(state: &StateVector, reg: DoorRegister) -> Result<[Amplitude; 4]> {
    let mask = (1usize << reg.hi) | (1usize << reg.lo);
    let (anchor, _) = state
        .amplitudes()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .ok_or_else(|| Error::internal("empty state"))?;
    let base = anchor & !mask;
    let index = |code: usize| base | ((code >> 1) << reg.hi) | ((code & 1) << reg.lo);
    let slice: Vec<Complex64> = (0..4).map(|k| state.amplitude(index(k))).collect();
    let norm = slice.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    // phase of the rest of the register, taken from the anchor entry
    let phase = state.amplitude(anchor) / state.amplitude(anchor).norm();
    let amps: Vec<Complex64> = slice.iter().map(|a| a / norm / phase).collect();

    let marginal = state.marginal(&reg.qubits())?;
    for (k, a) in amps.iter().enumerate() {
        if (a.norm_sqr() - marginal.prob(k as u64)).abs() > 1e-9 {
            return Err(Error::internal("register is entangled with the rest"));
        }
    }
    Ok([amps[0], amps[1], amps[2], amps[3]])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scheme1Result {
    pub alice_marginal: Distribution,
    pub opened: DoorId,
    pub final_door: DoorId,
    pub win: bool,
}

/// Simulated circuit for one (prize, first) pair, ready to be sampled many times.
#[derive(Debug, Clone)]
pub struct Scheme1Run {
    prize: DoorId,
    first: DoorId,
    opened: DoorId,
    state: StateVector,
    alice_marginal: Distribution,
}

impl Scheme1Run {
    pub fn new(prize: DoorId, first: DoorId) -> Result<Self> {
        let state = build_scheme1(prize, first)?.simulate()?;
        let alice_marginal = state.marginal(&LAYOUT.alice.qubits())?;
        Ok(Self {
            prize,
            first,
            opened: host_open(prize, first),
            state,
            alice_marginal,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn alice_marginal(&self) -> &Distribution {
        &self.alice_marginal
    }

    pub fn opened(&self) -> DoorId {
        self.opened
    }

    pub fn prize(&self) -> DoorId {
        self.prize
    }

    pub fn first(&self) -> DoorId {
        self.first
    }

    /// Measures `A3 A4`, then the primed prize flag of the door it names.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Scheme1Result> {
        let mut s = self.state.clone();
        let code = s.measure(&LAYOUT.alice.qubits(), rng)?;
        let final_door = DoorId::from_code(code)
            .ok_or_else(|| Error::internal("final register collapsed to |11⟩"))?;
        if final_door == self.opened {
            return Err(Error::internal(format!(
                "final register collapsed to the opened door {final_door}"
            )));
        }
        let flag = s.measure(&[LAYOUT.copies[final_door.index()]], rng)?;
        Ok(Scheme1Result {
            alice_marginal: self.alice_marginal.clone(),
            opened: self.opened,
            final_door,
            win: flag == 1,
        })
    }

    /// Win flag of `door` read from its primed copy (deterministic here).
    pub fn door_holds_prize(&self, door: DoorId) -> Result<bool> {
        let d = self.state.marginal(&[LAYOUT.copies[door.index()]])?;
        Ok(d.prob(1) > 0.5)
    }
}

/// One shot of the restricted measurement.
pub fn restricted_measurement<R: Rng + ?Sized>(
    prize: DoorId,
    first: DoorId,
    rng: &mut R,
) -> Result<Scheme1Result> {
    Scheme1Run::new(prize, first)?.sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme1Strategy {
    Stick,
    Switch,
    MeasureQuantum,
}

pub fn win_probability(prize: DoorId, first: DoorId, strategy: Scheme1Strategy) -> Result<f64> {
    let opened = host_open(prize, first);
    Ok(match strategy {
        Scheme1Strategy::Stick => f64::from(u8::from(prize == first)),
        Scheme1Strategy::Switch => f64::from(u8::from(prize == other_door(first, opened))),
        Scheme1Strategy::MeasureQuantum => {
            let amps = alice_amplitudes(prize, first)?;
            amps[prize.code() as usize].norm_sqr()
        }
    })
}

/// One row of the nine-case sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scheme1Row {
    pub prize: DoorId,
    pub first: DoorId,
    pub opened: DoorId,
    pub support: Vec<DoorId>,
    pub p_stick: f64,
    pub p_switch: f64,
    pub p_measure: f64,
}

/// Final-register support of a simulated state as doors. Errors on |11⟩.
pub fn alice_support(state: &StateVector) -> Result<Vec<DoorId>> {
    state
        .marginal_support(&LAYOUT.alice.qubits(), SUPPORT_THRESHOLD)?
        .into_iter()
        .map(|c| DoorId::from_code(c).ok_or_else(|| Error::internal("|11⟩ in final register")))
        .collect()
}

pub fn sweep_row(prize: DoorId, first: DoorId) -> Result<Scheme1Row> {
    let run = Scheme1Run::new(prize, first)?;
    Ok(Scheme1Row {
        prize,
        first,
        opened: run.opened,
        support: alice_support(&run.state)?,
        p_stick: win_probability(prize, first, Scheme1Strategy::Stick)?,
        p_switch: win_probability(prize, first, Scheme1Strategy::Switch)?,
        p_measure: win_probability(prize, first, Scheme1Strategy::MeasureQuantum)?,
    })
}

/// All nine rows, prize-major.
pub fn sweep() -> Result<Vec<Scheme1Row>> {
    static CACHE: OnceLock<Vec<Scheme1Row>> = OnceLock::new();
    if let Some(rows) = CACHE.get() {
        return Ok(rows.clone());
    }
    let rows = all_pairs()
        .map(|(p, f)| sweep_row(p, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(CACHE.get_or_init(|| rows).clone())
}
