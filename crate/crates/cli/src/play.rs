//! Interactive terminal game.

use std::io::{BufRead, Write};

use anyhow::bail;
use qmonty_core::game::{Engine, FinalChoice, GameSession};
use qmonty_core::scheme2::ancilla_distribution;
use qmonty_core::{DoorId, Error};

/// Reads one trimmed line; fails at end of input.
fn prompt(input: &mut dyn BufRead, out: &mut dyn Write, text: &str) -> anyhow::Result<String> {
    write!(out, "{text}")?;
    out.flush()?;
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        writeln!(out)?;
        bail!("input ended before the game finished");
    }
    Ok(line.trim().to_lowercase())
}

fn door_number(s: &str) -> Option<DoorId> {
    s.parse::<u8>().ok().and_then(DoorId::from_number)
}

fn parse_choice(s: &str) -> Option<FinalChoice> {
    match s {
        "stick" | "s" => Some(FinalChoice::Stick),
        "switch" | "w" => Some(FinalChoice::Switch),
        _ => door_number(s).map(FinalChoice::Door),
    }
}

/// Plays one game. Doors are numbered 1 to 3 on the terminal.
pub fn play(
    engine: Engine,
    seed: u64,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let mut s = GameSession::new(engine, seed);
    writeln!(out, "engine {engine}, seed {seed}")?;

    let first = loop {
        let line = prompt(input, out, "Pick a door (1-3): ")?;
        match door_number(&line) {
            Some(d) => break d,
            None => writeln!(out, "`{line}` is not a door; enter 1, 2 or 3.")?,
        }
    };
    let opened = s.pick_first(first)?;
    writeln!(out, "The host opens door {}. It is empty.", opened.number())?;

    let result = loop {
        let line = prompt(input, out, "stick, switch, or a door number: ")?;
        let Some(choice) = parse_choice(&line) else {
            writeln!(out, "`{line}` is not a choice; enter stick, switch or 1-3.")?;
            continue;
        };
        match s.pick_final(choice) {
            Ok(r) => break r,
            Err(Error::RuleViolation(m)) => writeln!(out, "{m}; choose again.")?,
            Err(e) => return Err(e.into()),
        }
    };

    let final_door = s.final_door.expect("set by the reveal");
    writeln!(out, "You end on door {}.", final_door.number())?;
    writeln!(out, "The prize is behind door {}.", s.prize.number())?;
    writeln!(out, "result: {result}")?;

    match engine {
        Engine::Classical => {}
        Engine::QuantumScheme1 => {
            writeln!(out, "final-choice register amplitudes:")?;
            writeln!(out, "  basis  door  re        im        prob")?;
            for a in s.revealed_amplitudes().unwrap_or_default() {
                let door = u64::from_str_radix(&a.basis, 2)
                    .ok()
                    .and_then(DoorId::from_code)
                    .map_or("-".to_string(), |d| d.to_string());
                writeln!(
                    out,
                    "  |{}⟩   {:<4}  {:>8.5}  {:>8.5}  {:.5}",
                    a.basis, door, a.re, a.im, a.prob
                )?;
            }
        }
        Engine::QuantumScheme2 => {
            let dist = ancilla_distribution(s.prize, first, final_door)?;
            writeln!(out, "ancilla register A1 A2 A3:")?;
            writeln!(out, "  basis   prob")?;
            for (bits, p) in dist.iter() {
                writeln!(out, "  |{}⟩   {p:.5}", dist.bitstring(bits))?;
            }
        }
    }
    Ok(())
}
