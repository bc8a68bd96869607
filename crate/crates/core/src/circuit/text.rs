//! Line-oriented circuit text format.
//!
//! ```text
//! QUBITS 3
//! # comment
//! H 0
//! X 1
//! #@ begin F
//! P 5/8 +2 -1 -> 0
//! #@ end
//! SWAP 0 2
//! ```
//!
//! `P` takes a dyadic turn `num/2^k` (or a decimal real turn), an optional list
//! of signed controls (`+q` fires on `|1⟩`, `-q` on `|0⟩`) and a target after
//! `->`. `#@ begin <name>` / `#@ end` delimit a labeled block. The `QUBITS`
//! header is optional when parsing; without it the width is the highest qubit
//! index plus one.

use std::fmt::Write as _;

use super::{Circuit, Control, DyadicTurn, Gate, Label, Polarity, Turn, MAX_DYADIC_EXPONENT};
use crate::error::{Error, ParseError};

const BLOCK_BEGIN: &str = "#@ begin ";
const BLOCK_END: &str = "#@ end";

/// Canonical text form: a `QUBITS` header and one gate per line.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "QUBITS {}", circuit.num_qubits()).unwrap();
    let mut labels = circuit.labels().iter().peekable();
    let mut open_end: Option<usize> = None;
    for (i, gate) in circuit.gates().iter().enumerate() {
        while let Some(l) = labels.next_if(|l| l.start == i) {
            writeln!(out, "{BLOCK_BEGIN}{}", l.name).unwrap();
            if l.end == i {
                writeln!(out, "{BLOCK_END}").unwrap();
            } else {
                open_end = Some(l.end);
                break;
            }
        }
        write_gate(&mut out, gate);
        if open_end == Some(i + 1) {
            writeln!(out, "{BLOCK_END}").unwrap();
            open_end = None;
        }
    }
    for l in labels {
        writeln!(out, "{BLOCK_BEGIN}{}", l.name).unwrap();
        writeln!(out, "{BLOCK_END}").unwrap();
    }
    out
}

fn write_turn(out: &mut String, turn: Turn) {
    match turn {
        Turn::Dyadic(d) => write!(out, "{}/{}", d.numerator(), d.denominator()).unwrap(),
        Turn::Real(v) => write!(out, "{v:?}").unwrap(),
    }
}

fn write_gate(out: &mut String, gate: &Gate) {
    match gate {
        Gate::H(q) => writeln!(out, "H {q}").unwrap(),
        Gate::X(q) => writeln!(out, "X {q}").unwrap(),
        Gate::Swap(a, b) => writeln!(out, "SWAP {a} {b}").unwrap(),
        Gate::Phase {
            turn,
            controls,
            target,
        } => {
            out.push_str("P ");
            write_turn(out, *turn);
            for c in controls {
                let sign = match c.polarity {
                    Polarity::Positive => '+',
                    Polarity::Negative => '-',
                };
                write!(out, " {sign}{}", c.qubit).unwrap();
            }
            writeln!(out, " -> {target}").unwrap();
        }
    }
}

/// Parses the text format. Errors carry the 1-based line number.
pub fn parse(text: &str) -> Result<Circuit, Error> {
    let mut header: Option<usize> = None;
    let mut gates: Vec<Gate> = Vec::new();
    let mut lines_of: Vec<usize> = Vec::new();
    let mut labels: Vec<Label> = Vec::new();
    let mut open: Option<(String, usize, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(name) = line.strip_prefix(BLOCK_BEGIN) {
            if open.is_some() {
                return Err(ParseError::new(line_no, "nested block").into());
            }
            let name = name.trim();
            if name.is_empty() {
                return Err(ParseError::new(line_no, "block without a name").into());
            }
            open = Some((name.to_string(), gates.len(), line_no));
            continue;
        }
        if line == BLOCK_END {
            let (name, start, _) = open
                .take()
                .ok_or_else(|| ParseError::new(line_no, "block end without begin"))?;
            labels.push(Label {
                name,
                start,
                end: gates.len(),
            });
            continue;
        }
        let content = match line.find('#') {
            Some(pos) => line[..pos].trim(),
            None => line,
        };
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let op = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        if op == "QUBITS" {
            if header.is_some() || !gates.is_empty() {
                return Err(
                    ParseError::new(line_no, "QUBITS must appear once, before any gate").into(),
                );
            }
            let [n] = args[..] else {
                return Err(ParseError::new(line_no, "QUBITS takes one argument").into());
            };
            let n = parse_index(n, line_no)?;
            if n == 0 {
                return Err(ParseError::new(line_no, "QUBITS must be at least 1").into());
            }
            header = Some(n);
            continue;
        }
        gates.push(parse_gate(op, &args, line_no)?);
        lines_of.push(line_no);
    }
    if let Some((name, _, line)) = open {
        return Err(ParseError::new(line, format!("block {name:?} is never closed")).into());
    }

    let num_qubits = match header {
        Some(n) => n,
        None => gates
            .iter()
            .flat_map(|g| g.qubits())
            .max()
            .map_or(1, |q| q + 1),
    };
    for (g, &line) in gates.iter().zip(&lines_of) {
        g.validate(num_qubits)
            .map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Circuit::from_parts(num_qubits, gates, labels)
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line,
            format!("expected qubit index, got {token:?}"),
        ));
    }
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("qubit index {token:?} too large")))
}

fn parse_turn(token: &str, line: usize) -> Result<Turn, ParseError> {
    let bad = || ParseError::new(line, format!("invalid turn {token:?}"));
    if let Some((num, den)) = token.split_once('/') {
        let num: u64 = num.parse().map_err(|_| bad())?;
        let den: u64 = den.parse().map_err(|_| bad())?;
        if !den.is_power_of_two() {
            return Err(ParseError::new(
                line,
                format!("turn denominator {den} is not a power of two"),
            ));
        }
        let exponent = den.trailing_zeros();
        if exponent > MAX_DYADIC_EXPONENT {
            return Err(ParseError::new(
                line,
                format!("turn denominator {den} too large"),
            ));
        }
        return Ok(Turn::Dyadic(
            DyadicTurn::new(num, exponent).map_err(|_| bad())?,
        ));
    }
    if token.bytes().all(|b| b.is_ascii_digit()) {
        let num: u64 = token.parse().map_err(|_| bad())?;
        return Ok(Turn::Dyadic(DyadicTurn::new(num, 0).map_err(|_| bad())?));
    }
    let value: f64 = token.parse().map_err(|_| bad())?;
    Turn::real(value).map_err(|_| bad())
}

fn parse_gate(op: &str, args: &[&str], line: usize) -> Result<Gate, ParseError> {
    match op {
        "H" | "X" => {
            let [q] = args else {
                return Err(ParseError::new(line, format!("{op} takes one qubit")));
            };
            let q = parse_index(q, line)?;
            Ok(if op == "H" { Gate::H(q) } else { Gate::X(q) })
        }
        "SWAP" => {
            let [a, b] = args else {
                return Err(ParseError::new(line, "SWAP takes two qubits"));
            };
            Ok(Gate::Swap(parse_index(a, line)?, parse_index(b, line)?))
        }
        "P" => {
            let Some((turn, rest)) = args.split_first() else {
                return Err(ParseError::new(line, "P needs a turn"));
            };
            let turn = parse_turn(turn, line)?;
            let arrow = rest
                .iter()
                .position(|t| *t == "->")
                .ok_or_else(|| ParseError::new(line, "P needs '-> <target>'"))?;
            let [target] = rest[arrow + 1..] else {
                return Err(ParseError::new(
                    line,
                    "P needs exactly one target after '->'",
                ));
            };
            let target = parse_index(target, line)?;
            let controls = rest[..arrow]
                .iter()
                .map(|tok| {
                    let (polarity, q) = if let Some(q) = tok.strip_prefix('+') {
                        (Polarity::Positive, q)
                    } else if let Some(q) = tok.strip_prefix('-') {
                        (Polarity::Negative, q)
                    } else {
                        return Err(ParseError::new(
                            line,
                            format!("control {tok:?} must start with '+' or '-'"),
                        ));
                    };
                    Ok(Control {
                        qubit: parse_index(q, line)?,
                        polarity,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Gate::Phase {
                turn,
                controls,
                target,
            })
        }
        other => Err(ParseError::new(line, format!("unknown gate {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(n: u64, e: u32) -> Turn {
        Turn::dyadic(n, e).unwrap()
    }

    fn single(gate: Gate, n: usize) -> Circuit {
        let mut c = Circuit::new(n).unwrap();
        c.push(gate).unwrap();
        c
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(serialize(&single(Gate::H(0), 1)), "QUBITS 1\nH 0\n");
        let p = Gate::controlled_phase(dy(5, 3), vec![Control::positive(2)], 0);
        assert_eq!(serialize(&single(p, 3)), "QUBITS 3\nP 5/8 +2 -> 0\n");
        let parsed = parse("P 1/2 -1 -> 0").unwrap();
        assert_eq!(parsed.num_qubits(), 2);
        assert_eq!(
            parsed.gates(),
            &[Gate::controlled_phase(
                dy(1, 1),
                vec![Control::negative(1)],
                0
            )]
        );
    }

    #[test]
    fn zero_turn_and_real_turn() {
        assert_eq!(
            serialize(&single(Gate::phase(Turn::ZERO, 0), 1)),
            "QUBITS 1\nP 0/1 -> 0\n"
        );
        let c = parse("QUBITS 1\nP 0.3333333333333333 -> 0\n").unwrap();
        assert!(matches!(
            c.gates()[0],
            Gate::Phase {
                turn: Turn::Real(_),
                ..
            }
        ));
        assert_eq!(parse(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn comments_labels_blank_lines() {
        let text = "# header\nQUBITS 2\n\nH 0 # trailing\n#@ begin U^{2^0}\nP 1/4 +0 -> 1\n#@ end\n#@ begin empty\n#@ end\n";
        let c = parse(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.labels().len(), 2);
        assert_eq!(c.labels()[0].name, "U^{2^0}");
        assert_eq!((c.labels()[1].start, c.labels()[1].end), (2, 2));
        assert_eq!(parse(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn errors_report_line_numbers() {
        let cases = [
            ("H 0\nFOO 1\n", 2, "unknown gate"),
            ("QUBITS 2\nH 2\n", 2, "out of range"),
            ("P 1/3 -> 0\n", 1, "power of two"),
            ("P 1/2 1 -> 0\n", 1, "'+' or '-'"),
            ("P 1/2 +1\n", 1, "->"),
            ("H 0\nQUBITS 1\n", 2, "once"),
            ("#@ end\n", 1, "without begin"),
            ("#@ begin A\nH 0\n", 1, "never closed"),
            ("SWAP 1 1\n", 1, "more than once"),
            ("H x\n", 1, "expected qubit"),
        ];
        for (text, line, needle) in cases {
            match parse(text) {
                Err(Error::Parse(e)) => {
                    assert_eq!(e.line, line, "{text:?}");
                    assert!(e.reason.contains(needle), "{text:?}: {}", e.reason);
                }
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }
}
