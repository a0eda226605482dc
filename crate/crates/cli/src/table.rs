//! Sweep output in table, CSV and JSON form.

use std::io::Write;

use qmonty_core::classical::full_table;
use qmonty_core::scheme1;
use qmonty_core::scheme2::Scheme2Row;
use qmonty_core::DoorId;

use crate::Format;

fn doors(ds: &[DoorId]) -> String {
    let names: Vec<String> = ds.iter().map(DoorId::to_string).collect();
    format!("{{{}}}", names.join(","))
}

fn json<T: serde::Serialize>(rows: &T, out: &mut dyn Write) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn classical(format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    let t = full_table();
    match format {
        Format::Csv => t.write_csv(&mut *out)?,
        Format::Json => json(&t.rows(), out)?,
        Format::Table => {
            writeln!(out, "prize  first  opened  second  win")?;
            for r in t.rows() {
                writeln!(
                    out,
                    "{:<5}  {:<5}  {:<6}  {:<6}  {}",
                    r.prize, r.first, r.opened, r.second, r.win
                )?;
            }
        }
    }
    Ok(())
}

pub fn scheme1(format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    let rows = scheme1::sweep()?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "prize",
                "first",
                "opened",
                "p_stick",
                "p_switch",
                "p_measure",
            ])?;
            for r in &rows {
                w.write_record([
                    r.prize.to_string(),
                    r.first.to_string(),
                    r.opened.to_string(),
                    r.p_stick.to_string(),
                    r.p_switch.to_string(),
                    r.p_measure.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => json(&rows, out)?,
        Format::Table => {
            writeln!(
                out,
                "prize  first  opened  support  p_stick  p_switch  p_measure"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<5}  {:<5}  {:<6}  {:<7}  {:<7.4}  {:<8.4}  {:.4}",
                    r.prize,
                    r.first,
                    r.opened,
                    doors(&r.support),
                    r.p_stick,
                    r.p_switch,
                    r.p_measure
                )?;
            }
        }
    }
    Ok(())
}

pub fn scheme2(rows: &[Scheme2Row], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "prize",
                "first",
                "second",
                "ancilla",
                "win_quantum",
                "win_classical",
                "agree",
            ])?;
            for r in rows {
                w.write_record([
                    r.prize.to_string(),
                    r.first.to_string(),
                    r.second.to_string(),
                    r.ancilla.clone(),
                    r.win_quantum.to_string(),
                    r.win_classical.to_string(),
                    r.agree.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => json(&rows, out)?,
        Format::Table => {
            writeln!(
                out,
                "prize  first  second  ancilla  quantum  classical  agree"
            )?;
            for r in rows {
                writeln!(
                    out,
                    "{:<5}  {:<5}  {:<6}  {:<7}  {:<7}  {:<9}  {}",
                    r.prize,
                    r.first,
                    r.second,
                    r.ancilla,
                    outcome(r.win_quantum),
                    outcome(r.win_classical),
                    if r.agree { "yes" } else { "NO" }
                )?;
            }
        }
    }
    Ok(())
}

fn outcome(win: bool) -> &'static str {
    if win {
        "win"
    } else {
        "lose"
    }
}
