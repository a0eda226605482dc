//! Win/lose verdict circuit.
//!
//! Twelve qubits: prize flags `D1 D2 D3`, first pick `I11 I12`, second pick
//! `I21 I22`, the door-state register `S1 S2` and the verdict ancillas
//! `A1 A2 A3`.
//!
//! Stages:
//!
//! 1. X-encoding of the prize (one-hot), the first pick and the second pick.
//! 2. Three-door superposition on `S1 S2`.
//! 3. Bob's stage: the host's door is removed from `S1 S2`, leaving an
//!    equal superposition of the two closed doors. Available as nine
//!    case-controlled gadgets or in the merged form (see [`BobForm`]).
//! 4. Verdict stages A, B and C, one per pair of closed doors
//!    ({D1,D2}, {D1,D3}, {D2,D3}). For every winning configuration
//!    (second pick = prize) the pair is rotated onto a basis state, and two
//!    multi-controlled NOTs per stage (one per prize door of the pair) flip
//!    ancilla A1, A2 or A3 respectively.
//!
//! Losing configurations touch no ancilla, so measuring `A1 A2 A3` gives a
//! one-hot pattern exactly when Alice wins.

use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use crate::classical::{all_pairs, all_triples, host_open, outcome, Outcome};
use crate::door::DoorId;
use crate::error::{Error, Result};
use crate::gadget::DoorRegister;
use crate::gates::{ach, cx, h, lower_multi_controlled, mcx, x, Circuit};
use crate::sim::{ControlSpec, Distribution, GateOp, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scheme2Layout {
    pub doors: [usize; 3],
    pub first: DoorRegister,
    pub second: DoorRegister,
    pub s: DoorRegister,
    pub ancillas: [usize; 3],
}

pub const LAYOUT: Scheme2Layout = Scheme2Layout {
    doors: [0, 1, 2],
    first: DoorRegister::new(3, 4),
    second: DoorRegister::new(5, 6),
    s: DoorRegister::new(7, 8),
    ancillas: [9, 10, 11],
};

pub const N_QUBITS: usize = 12;

pub const LABELS: [&str; N_QUBITS] = [
    "D1", "D2", "D3", "I11", "I12", "I21", "I22", "S1", "S2", "A1", "A2", "A3",
];

/// Scratch qubits appended in decomposed mode.
pub const SCRATCH_LABELS: [&str; 4] = ["W1", "W2", "W3", "W4"];

/// Form of Bob's door-opening stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BobForm {
    /// One removal gadget per (prize, first) pair.
    #[default]
    NineCase,
    /// The host's door is first written into `A1 A2` (free at this point),
    /// then one shared gadget per removable door runs controlled on that
    /// code, and the code is uncomputed.
    MergedFour,
}

/// How gates with three or more controls are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum McxForm {
    #[default]
    Native,
    /// Lowered to 1- and 2-control gates with an ancilla ladder on scratch
    /// qubits `W1..W4` appended to the register.
    Decomposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Scheme2Options {
    pub bob: BobForm,
    pub mcx: McxForm,
}

/// Verdict stage a winning configuration falls into, named after the pair of
/// closed doors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairCase {
    /// {D1, D2}; ancilla A1.
    A,
    /// {D1, D3}; ancilla A2.
    B,
    /// {D2, D3}; ancilla A3.
    C,
}

impl PairCase {
    pub const ALL: [PairCase; 3] = [PairCase::A, PairCase::B, PairCase::C];

    /// The case whose pair is left after the host opens `opened`.
    pub fn after_opening(opened: DoorId) -> PairCase {
        match opened {
            DoorId::D3 => PairCase::A,
            DoorId::D2 => PairCase::B,
            DoorId::D1 => PairCase::C,
        }
    }

    pub fn ancilla(self) -> usize {
        LAYOUT.ancillas[self as usize]
    }

    pub fn doors(self) -> [DoorId; 2] {
        match self {
            PairCase::A => [DoorId::D1, DoorId::D2],
            PairCase::B => [DoorId::D1, DoorId::D3],
            PairCase::C => [DoorId::D2, DoorId::D3],
        }
    }

    /// Gates taking the equal superposition of this pair to a basis state
    /// when `prize` is the door Alice picked, and that basis state.
    pub fn transform(self, prize: DoorId) -> Result<(Vec<GateOp>, DoorId)> {
        let s = LAYOUT.s;
        Ok(match (self, prize) {
            (PairCase::A, DoorId::D1) => (vec![ach(s.hi, s.lo)?, x(s.lo)], DoorId::D2),
            (PairCase::A, DoorId::D2) => (vec![ach(s.hi, s.lo)?], DoorId::D1),
            (PairCase::B, DoorId::D1) => (vec![ach(s.lo, s.hi)?, x(s.hi)], DoorId::D3),
            (PairCase::B, DoorId::D3) => (vec![ach(s.lo, s.hi)?], DoorId::D1),
            (PairCase::C, DoorId::D2) => (vec![cx(s.hi, s.lo)?, h(s.hi)], DoorId::D2),
            (PairCase::C, DoorId::D3) => {
                (vec![cx(s.hi, s.lo)?, h(s.hi), x(s.hi), x(s.lo)], DoorId::D3)
            }
            (case, door) => {
                return Err(Error::validation(format!(
                    "door {door} is not in pair {case:?}"
                )))
            }
        })
    }
}

fn labeled(extra: usize) -> Result<Circuit> {
    let labels = LABELS
        .iter()
        .chain(SCRATCH_LABELS.iter().take(extra))
        .map(|s| s.to_string())
        .collect();
    Circuit::with_labels(labels)
}

fn case_controls(prize: DoorId, first: DoorId) -> Vec<ControlSpec> {
    let mut ctl = vec![ControlSpec::pos(LAYOUT.doors[prize.index()])];
    ctl.extend(LAYOUT.first.pattern(first));
    ctl
}

/// Bob's door-opening stage as a 12-qubit fragment.
pub fn build_bob_stage(form: BobForm) -> Result<Circuit> {
    let l = LAYOUT;
    let mut c = labeled(0)?;
    match form {
        BobForm::NineCase => {
            for (p, f) in all_pairs() {
                c.extend(l.s.controlled_removal(host_open(p, f), &case_controls(p, f))?)?;
            }
        }
        BobForm::MergedFour => {
            let flag = DoorRegister::new(l.ancillas[0], l.ancillas[1]);
            let mut compute = Vec::new();
            for (p, f) in all_pairs() {
                let opened = host_open(p, f);
                let (hi, lo) = opened.bits();
                for (bit, q) in [(hi, flag.hi), (lo, flag.lo)] {
                    if bit {
                        compute.push(mcx(&case_controls(p, f), q)?);
                    }
                }
            }
            c.extend(compute.iter().cloned())?;
            for opened in DoorId::ALL {
                c.extend(l.s.controlled_removal(opened, &flag.pattern(opened))?)?;
            }
            c.extend(compute.into_iter().rev())?;
        }
    }
    Ok(c)
}

/// Cases whose removal gadget is `opened`, in (prize, first) order.
pub fn bob_group(opened: DoorId) -> Vec<(DoorId, DoorId)> {
    all_pairs()
        .filter(|&(p, f)| host_open(p, f) == opened)
        .collect()
}

/// Verdict stages A, B, C as a 12-qubit fragment.
pub fn build_verdict_stage() -> Result<Circuit> {
    let l = LAYOUT;
    let mut c = labeled(0)?;
    for case in PairCase::ALL {
        for (p, f) in all_pairs() {
            if PairCase::after_opening(host_open(p, f)) != case {
                continue;
            }
            let (ops, _) = case.transform(p)?;
            let mut ctl = case_controls(p, f);
            ctl.extend(l.second.pattern(p));
            for g in ops {
                c.push(g.with_extra_controls(&ctl)?)?;
            }
        }
        for prize in case.doors() {
            let (_, landing) = case.transform(prize)?;
            let mut ctl = vec![ControlSpec::pos(l.doors[prize.index()])];
            ctl.extend(l.second.pattern(prize));
            ctl.extend(l.s.pattern(landing));
            c.push(mcx(&ctl, case.ancilla())?)?;
        }
    }
    Ok(c)
}

/// Whole circuit for one valid triple.
pub fn build_scheme2(prize: DoorId, first: DoorId, second: DoorId) -> Result<Circuit> {
    build_scheme2_with(prize, first, second, Scheme2Options::default())
}

pub fn build_scheme2_with(
    prize: DoorId,
    first: DoorId,
    second: DoorId,
    opts: Scheme2Options,
) -> Result<Circuit> {
    outcome(prize, first, second)?;
    let l = LAYOUT;
    let mut c = labeled(0)?;
    c.push(x(l.doors[prize.index()]))?;
    c.extend(l.first.encode(first))?;
    c.extend(l.second.encode(second))?;
    c.extend(l.s.three_state()?)?;
    c.append(&build_bob_stage(opts.bob)?)?;
    c.append(&build_verdict_stage()?)?;
    c.measure(&l.ancillas, "verdict")?;

    match opts.mcx {
        McxForm::Native => Ok(c),
        McxForm::Decomposed => {
            let scratch_needed = c.max_controls().saturating_sub(2);
            let mut wide = labeled(scratch_needed)?;
            wide.append(&c)?;
            let scratch: Vec<usize> = (N_QUBITS..N_QUBITS + scratch_needed).collect();
            lower_multi_controlled(&wide, &scratch)
        }
    }
}

/// Largest control count per stage, for reporting.
pub fn stage_control_counts(form: BobForm) -> Result<Vec<(&'static str, usize)>> {
    let verdict = build_verdict_stage()?;
    let (transforms, flips): (Vec<&GateOp>, Vec<&GateOp>) = verdict
        .ops()
        .iter()
        .partition(|g| !LAYOUT.ancillas.contains(&g.target()));
    Ok(vec![
        ("bob", build_bob_stage(form)?.max_controls()),
        (
            "transform",
            transforms
                .iter()
                .map(|g| g.controls().len())
                .max()
                .unwrap_or(0),
        ),
        (
            "ancilla_flip",
            flips.iter().map(|g| g.controls().len()).max().unwrap_or(0),
        ),
    ])
}

/// Measured ancilla pattern and the verdict it encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// `A1 A2 A3`, A1 most significant.
    pub ancilla_bits: u8,
    pub result: Outcome,
}

impl Verdict {
    pub fn from_bits(bits: u8) -> Result<Self> {
        match bits {
            0b000 => Ok(Self {
                ancilla_bits: bits,
                result: Outcome::Lose,
            }),
            0b100 | 0b010 | 0b001 => Ok(Self {
                ancilla_bits: bits,
                result: Outcome::Win,
            }),
            _ => Err(Error::internal(format!(
                "ancillas measured {bits:03b}; verdict cases are exclusive"
            ))),
        }
    }

    pub fn pattern(&self) -> String {
        format!("{:03b}", self.ancilla_bits)
    }
}

fn simulate(prize: DoorId, first: DoorId, second: DoorId) -> Result<StateVector> {
    build_scheme2(prize, first, second)?.simulate()
}

/// Measures the three ancillas of the simulated circuit.
pub fn verdict<R: Rng + ?Sized>(
    prize: DoorId,
    first: DoorId,
    second: DoorId,
    rng: &mut R,
) -> Result<Verdict> {
    let mut state = simulate(prize, first, second)?;
    let bits = state.measure(&LAYOUT.ancillas, rng)?;
    Verdict::from_bits(bits as u8)
}

/// Exact pre-measurement distribution of `A1 A2 A3`.
pub fn ancilla_distribution(prize: DoorId, first: DoorId, second: DoorId) -> Result<Distribution> {
    simulate(prize, first, second)?.marginal(&LAYOUT.ancillas)
}

/// Probability mass on the one-hot patterns.
pub fn win_mass(dist: &Distribution) -> f64 {
    [0b100, 0b010, 0b001].iter().map(|&v| dist.prob(v)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scheme2Row {
    pub prize: DoorId,
    pub first: DoorId,
    pub second: DoorId,
    pub ancilla: String,
    pub win_quantum: bool,
    pub win_classical: bool,
    pub agree: bool,
}

pub fn sweep_row<R: Rng + ?Sized>(
    prize: DoorId,
    first: DoorId,
    second: DoorId,
    rng: &mut R,
) -> Result<Scheme2Row> {
    let v = verdict(prize, first, second, rng)?;
    let classical = outcome(prize, first, second)?.is_win();
    Ok(Scheme2Row {
        prize,
        first,
        second,
        ancilla: v.pattern(),
        win_quantum: v.result.is_win(),
        win_classical: classical,
        agree: v.result.is_win() == classical,
    })
}

/// All 18 rows in classical-table order. Every ancilla state here is a basis
/// state, so the result does not depend on the seed.
pub fn sweep() -> Result<Vec<Scheme2Row>> {
    use rand::SeedableRng;
    static CACHE: OnceLock<Vec<Scheme2Row>> = OnceLock::new();
    if let Some(rows) = CACHE.get() {
        return Ok(rows.clone());
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let rows = all_triples()
        .map(|(p, f, s)| sweep_row(p, f, s, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(CACHE.get_or_init(|| rows).clone())
}
