//! Line-oriented circuit text format.
//!
//! ```text
//! qmonty-circuit 1
//! qubits 3
//! labels S1 S2 A1
//! h q[0]
//! ch q[0],q[1]
//! x q[1]
//! ccx q[0],q[1],q[2]
//! x q[1]
//! measure q[2] -> win
//! ```
//!
//! Grammar (one statement per line, `#` starts a comment, blank lines ignored):
//!
//! ```text
//! file     = header qubits [labels] { gate | measure }
//! header   = "qmonty-circuit" SP "1"
//! qubits   = "qubits" SP count                       ; 1..=16
//! labels   = "labels" { SP label }                   ; exactly `count` labels
//! gate     = { "c" } kind SP operand { "," operand } ; k leading c's = k controls
//! kind     = "h" | "x" | "z"
//! measure  = "measure" SP operand { "," operand } SP "->" SP label
//! operand  = "q[" index "]"
//! label    = (ALPHA | "_") { ALNUM | "_" | "'" }
//! ```
//!
//! A gate line with `k` leading `c`s takes `k + 1` operands: the controls,
//! then the target. All controls in the file are positive; an exporter
//! brackets each negative control with `x` lines. Operands may be separated
//! by `,` followed by optional spaces; the exporter writes no spaces.

use std::fmt::Write as _;

use super::Circuit;
use crate::error::{Error, Result};
use crate::sim::{ControlSpec, GateKind, GateOp, Polarity, MAX_QUBITS};

pub const MAGIC: &str = "qmonty-circuit";
pub const VERSION: u32 = 1;

/// Serializes `c` in the canonical text form.
///
/// Fails for gates built from an unnamed matrix, which have no mnemonic.
pub fn to_text(c: &Circuit) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(out, "qubits {}", c.n_qubits()).unwrap();
    writeln!(out, "labels {}", c.labels().join(" ")).unwrap();
    for g in c.ops() {
        let kind = g
            .kind()
            .ok_or_else(|| Error::validation("gate with an unnamed matrix cannot be exported"))?;
        let negs: Vec<usize> = g
            .controls()
            .iter()
            .filter(|c| c.polarity == Polarity::Negative)
            .map(|c| c.qubit)
            .collect();
        for &q in &negs {
            writeln!(out, "x q[{q}]").unwrap();
        }
        let prefix = "c".repeat(g.controls().len());
        let operands: Vec<String> = g
            .controls()
            .iter()
            .map(|c| c.qubit)
            .chain(std::iter::once(g.target()))
            .map(|q| format!("q[{q}]"))
            .collect();
        writeln!(out, "{prefix}{kind} {}", operands.join(",")).unwrap();
        for &q in negs.iter().rev() {
            writeln!(out, "x q[{q}]").unwrap();
        }
    }
    for m in c.measurements() {
        let qs: Vec<String> = m.qubits.iter().map(|q| format!("q[{q}]")).collect();
        writeln!(out, "measure {} -> {}", qs.join(","), m.tag).unwrap();
    }
    Ok(out)
}

/// Parses the text form back into a circuit.
pub fn from_text(src: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut seen_header = false;
    let mut declared: Option<(usize, usize)> = None; // (qubits, line)
    let mut labels_done = false;

    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_end();
        let indent = trimmed.len() - trimmed.trim_start().len();
        let stmt = trimmed.trim_start();
        if stmt.is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| Error::Parse {
            line: line_no,
            column: col + 1,
            message: msg,
        };
        let (head, rest) = match stmt.find(' ') {
            Some(p) => (&stmt[..p], &stmt[p + 1..]),
            None => (stmt, ""),
        };
        let rest_col = indent + head.len() + 1;

        if !seen_header {
            if head != MAGIC {
                return Err(err(indent, format!("expected `{MAGIC} {VERSION}` header")));
            }
            if rest.trim() != VERSION.to_string() {
                return Err(err(
                    rest_col,
                    format!("unsupported version `{}`", rest.trim()),
                ));
            }
            seen_header = true;
            continue;
        }

        if declared.is_none() {
            if head != "qubits" {
                return Err(err(indent, "expected `qubits <count>`".into()));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(rest_col, format!("invalid qubit count `{}`", rest.trim())))?;
            if !(1..=MAX_QUBITS).contains(&n) {
                return Err(err(
                    rest_col,
                    format!("qubit count {n} out of range 1..={MAX_QUBITS}"),
                ));
            }
            declared = Some((n, line_no));
            continue;
        }
        let n = declared.map(|(n, _)| n).unwrap_or(0);

        if head == "labels" {
            if labels_done || circuit.is_some() {
                return Err(err(indent, "`labels` must directly follow `qubits`".into()));
            }
            let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if labels.len() != n {
                return Err(err(
                    rest_col,
                    format!("expected {n} labels, found {}", labels.len()),
                ));
            }
            circuit = Some(Circuit::with_labels(labels).map_err(|e| err(rest_col, e.to_string()))?);
            labels_done = true;
            continue;
        }

        let c = match circuit.as_mut() {
            Some(c) => c,
            None => {
                circuit = Some(Circuit::new(n).map_err(|e| err(indent, e.to_string()))?);
                circuit.as_mut().unwrap()
            }
        };
        labels_done = true;

        if head == "measure" {
            let (ops, tag) = rest
                .split_once(" -> ")
                .ok_or_else(|| err(rest_col, "expected `measure <operands> -> <tag>`".into()))?;
            let qubits = parse_operands(ops, rest_col, n).map_err(|(col, m)| err(col, m))?;
            let tag_col = rest_col + ops.len() + 4;
            c.measure(&qubits, tag.trim())
                .map_err(|e| err(tag_col, e.to_string()))?;
            continue;
        }

        let ncontrols = head.bytes().take_while(|&b| b == b'c').count();
        let kind: GateKind = head[ncontrols..]
            .parse()
            .map_err(|_| err(indent, format!("unknown statement `{head}`")))?;
        let qubits = parse_operands(rest, rest_col, n).map_err(|(col, m)| err(col, m))?;
        if qubits.len() != ncontrols + 1 {
            return Err(err(
                rest_col,
                format!(
                    "`{head}` takes {} operands, found {}",
                    ncontrols + 1,
                    qubits.len()
                ),
            ));
        }
        let (target, ctl) = qubits.split_last().expect("at least one operand");
        let controls = ctl.iter().map(|&q| ControlSpec::pos(q)).collect();
        let g = GateOp::named(kind, *target, controls).map_err(|e| err(rest_col, e.to_string()))?;
        c.push(g).map_err(|e| err(rest_col, e.to_string()))?;
    }

    if !seen_header {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    match (circuit, declared) {
        (Some(c), _) => Ok(c),
        (None, Some((n, _))) => Circuit::new(n),
        (None, None) => Err(Error::Parse {
            line: src.lines().count().max(1),
            column: 1,
            message: "missing `qubits` declaration".into(),
        }),
    }
}

/// Parses `q[i],q[j],...`; `col` is the zero-based column of `s` in the line.
fn parse_operands(
    s: &str,
    col: usize,
    n: usize,
) -> std::result::Result<Vec<usize>, (usize, String)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let lead = part.len() - part.trim_start().len();
        let tok = part.trim();
        let at = col + offset + lead;
        let inner = tok
            .strip_prefix("q[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| (at, format!("expected operand `q[<index>]`, found `{tok}`")))?;
        if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
            return Err((at + 2, format!("invalid qubit index `{inner}`")));
        }
        let q: usize = inner
            .parse()
            .map_err(|_| (at + 2, format!("invalid qubit index `{inner}`")))?;
        if q >= n {
            return Err((at + 2, format!("qubit {q} out of range for {n} qubits")));
        }
        out.push(q);
        offset += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{ach, ch, h, mcx};

    fn sample() -> Circuit {
        let mut c = Circuit::with_labels(vec!["S1".into(), "S2".into(), "A1".into()]).unwrap();
        c.push(h(0)).unwrap();
        c.push(h(1)).unwrap();
        c.push(ch(0, 1).unwrap()).unwrap();
        c.push(ach(0, 1).unwrap()).unwrap();
        c.push(mcx(&[ControlSpec::neg(0), ControlSpec::pos(1)], 2).unwrap())
            .unwrap();
        c.measure(&[2], "win").unwrap();
        c
    }

    #[test]
    fn canonical_text() {
        let text = to_text(&sample()).unwrap();
        let expect = "\
qmonty-circuit 1
qubits 3
labels S1 S2 A1
h q[0]
h q[1]
ch q[0],q[1]
x q[0]
ch q[0],q[1]
x q[0]
x q[0]
ccx q[0],q[1],q[2]
x q[0]
measure q[2] -> win
";
        assert_eq!(text, expect);
    }

    #[test]
    fn round_trip_statevector() {
        let c = sample();
        let back = from_text(&to_text(&c).unwrap()).unwrap();
        assert_eq!(back.labels(), c.labels());
        assert_eq!(back.measurements(), c.measurements());
        let a = c.simulate().unwrap();
        let b = back.simulate().unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn comments_blank_lines_and_default_labels() {
        let src = "# demo\n\nqmonty-circuit 1\nqubits 2  # two\ncx q[0], q[1]\n";
        let c = from_text(src).unwrap();
        assert_eq!(c.labels(), &["q0".to_string(), "q1".to_string()]);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn header_only() {
        let c = from_text("qmonty-circuit 1\nqubits 4\n").unwrap();
        assert_eq!(c.n_qubits(), 4);
        assert!(c.is_empty());
    }

    fn parse_err(src: &str) -> (usize, usize) {
        match from_text(src) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_err(""), (1, 1));
        assert_eq!(parse_err("qasm 2\n"), (1, 1));
        assert_eq!(parse_err("qmonty-circuit 2\n"), (1, 16));
        assert_eq!(parse_err("qmonty-circuit 1\nqubits 99\n"), (2, 8));
        assert_eq!(parse_err("qmonty-circuit 1\nqubits 2\nh q[5]\n"), (3, 5));
        assert_eq!(
            parse_err("qmonty-circuit 1\nqubits 2\ncx q[0],r[1]\n"),
            (3, 9)
        );
        assert_eq!(parse_err("qmonty-circuit 1\nqubits 2\ncx q[0]\n"), (3, 4));
        assert_eq!(
            parse_err("qmonty-circuit 1\nqubits 2\ncx q[0],q[0]\n"),
            (3, 4)
        );
        assert_eq!(parse_err("qmonty-circuit 1\nqubits 2\ny q[0]\n"), (3, 1));
        assert_eq!(parse_err("qmonty-circuit 1\nqubits 2\nlabels a\n"), (3, 8));
        assert_eq!(
            parse_err("qmonty-circuit 1\nqubits 1\nmeasure q[0] -> 9\n"),
            (3, 17)
        );
        assert_eq!(parse_err("qmonty-circuit 1\nh q[0]\n"), (2, 1));
    }

    #[test]
    fn labels_after_gates_rejected() {
        assert!(from_text("qmonty-circuit 1\nqubits 1\nh q[0]\nlabels a\n").is_err());
    }
}
