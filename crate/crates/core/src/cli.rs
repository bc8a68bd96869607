//! Command-line front end.
//!
//! Output is line-oriented and locale-independent. `--json` replaces it with
//! a single JSON object `{command, inputs, result, gate_counts}`.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 a readout that should be
//! deterministic is not.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abacus::{ancilla_width, bits_from_str, build_counter, CountTarget, MAX_RUN_COUNT_BITS};
use crate::circuit::{self, Circuit, GateCounts};
use crate::encoder::{build_encoder, decode_register, phase_turns};
use crate::error::Error;
use crate::pea::build_qft_pea;
use crate::qarray::{
    build_create, build_create_arithmetic, build_update_add, read_all, ArrayContents, ArrayLayout,
    IndexPredicate,
};
use crate::qft::{build_inverse_qft, build_qft, INVERSE_QFT_LABEL, SWAP_LABEL};
use crate::statevector::StateVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_DETERMINISTIC: i32 = 3;

/// Amplitudes at or below this probability are omitted from dumps.
pub const DUMP_THRESHOLD: f64 = 1e-12;

const ARRAY_HEADER: &str = "# qarray";
const DEFAULT_ARRAY_FILE: &str = "qarray.qc";

#[derive(Parser, Debug)]
#[command(
    name = "qabacus",
    version,
    about = "Phase-encoded counting, integers and arrays on a state-vector simulator"
)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Readout tolerance: an outcome counts as deterministic at probability >= 1 - tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count ones or zeros in a bit string (most significant qubit first).
    Count {
        bits: String,
        #[arg(long, value_enum, default_value_t = TargetArg::Ones)]
        target: TargetArg,
        /// Also print the counting circuit.
        #[arg(long)]
        circuit: bool,
    },
    /// Encode an integer as per-qubit phases, then decode it.
    Encode {
        value: u64,
        #[arg(long)]
        qubits: usize,
        /// Also dump the encoded state.
        #[arg(long)]
        amplitudes: bool,
    },
    /// Create, update and inspect quantum arrays stored as circuit files.
    Array {
        #[command(subcommand)]
        action: ArrayAction,
    },
    /// Print circuits produced by the builders.
    Circuit {
        #[command(subcommand)]
        action: CircuitAction,
    },
}

#[derive(Subcommand, Debug)]
enum ArrayAction {
    /// Build an array from a comma-separated value list or a values file.
    Create {
        values: Option<String>,
        /// Read values (comma or whitespace separated) from a file.
        #[arg(long, conflicts_with = "values")]
        file: Option<PathBuf>,
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long, default_value = DEFAULT_ARRAY_FILE)]
        state: PathBuf,
    },
    /// Add a constant to every selected entry.
    Add {
        addend: u64,
        /// `even`, `odd`, `all`, or `mask=M,match=V`.
        #[arg(long = "where", default_value = "all")]
        predicate: String,
        #[arg(long, default_value = DEFAULT_ARRAY_FILE)]
        state: PathBuf,
    },
    /// Print the stored values.
    Dump {
        #[arg(long, default_value = DEFAULT_ARRAY_FILE)]
        state: PathBuf,
        /// Also dump the amplitudes.
        #[arg(long)]
        amplitudes: bool,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct LayoutArgs {
    /// Index qubits (inferred from the value count when omitted).
    #[arg(short = 'm')]
    index_qubits: Option<usize>,
    /// Data qubits.
    #[arg(short = 'p')]
    data_qubits: usize,
}

#[derive(Subcommand, Debug)]
enum CircuitAction {
    Print {
        #[command(subcommand)]
        builder: Builder,
        /// Replace negative controls by X-conjugated positive ones.
        #[arg(long, global = true)]
        lowered: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Builder {
    Qft {
        n: usize,
        #[arg(long)]
        no_swaps: bool,
    },
    Iqft {
        n: usize,
        #[arg(long)]
        no_swaps: bool,
    },
    QftPea {
        n: usize,
    },
    Counter {
        n: usize,
        #[arg(long, value_enum, default_value_t = TargetArg::Ones)]
        target: TargetArg,
    },
    Encoder {
        value: u64,
        #[arg(long)]
        qubits: usize,
    },
    Create {
        values: String,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    Arithmetic {
        first: u64,
        step: u64,
        #[arg(short = 'm')]
        index_qubits: usize,
        #[arg(short = 'p')]
        data_qubits: usize,
    },
    Update {
        addend: u64,
        #[arg(long = "where", default_value = "all")]
        predicate: String,
        #[arg(short = 'm')]
        index_qubits: usize,
        #[arg(short = 'p')]
        data_qubits: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TargetArg {
    Ones,
    Zeros,
}

impl From<TargetArg> for CountTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Ones => CountTarget::Ones,
            TargetArg::Zeros => CountTarget::Zeros,
        }
    }
}

/// A command failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotDeterministic { .. } | Error::MalformedArray { .. } => EXIT_NOT_DETERMINISTIC,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<String, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// its report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{first}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    if !(cli.tolerance > 0.0 && cli.tolerance < 1.0) {
        return Err(usage(format!(
            "--tolerance {} must lie strictly between 0 and 1",
            cli.tolerance
        )));
    }
    match &cli.command {
        Command::Count {
            bits,
            target,
            circuit,
        } => command_count(bits, (*target).into(), *circuit, cli),
        Command::Encode {
            value,
            qubits,
            amplitudes,
        } => command_encode(*value, *qubits, *amplitudes, cli),
        Command::Array { action } => command_array(action, cli),
        Command::Circuit {
            action: CircuitAction::Print { builder, lowered },
        } => command_circuit_print(builder, *lowered, cli),
    }
}

fn finish(cli: &Cli, text: String, json_value: Value) -> CmdResult {
    if cli.json {
        Ok(format!("{json_value}\n"))
    } else {
        Ok(text)
    }
}

fn counts_json(c: &GateCounts) -> Value {
    let mut map = serde_json::Map::new();
    for (name, n) in c.entries() {
        map.insert(name.to_string(), json!(n));
    }
    map.insert("total".to_string(), json!(c.total()));
    Value::Object(map)
}

fn is_readout_label(name: &str) -> bool {
    name == INVERSE_QFT_LABEL || name == SWAP_LABEL
}

fn command_count(bits_text: &str, target: CountTarget, show_circuit: bool, cli: &Cli) -> CmdResult {
    let bits = bits_from_str(bits_text)?;
    let n = bits.len();
    if n == 0 || n > MAX_RUN_COUNT_BITS {
        return Err(usage(format!(
            "bit string length {n} outside 1..={MAX_RUN_COUNT_BITS}"
        )));
    }
    let circuit = build_counter(n, target)?;
    let m = ancilla_width(n);
    let input = bits
        .iter()
        .enumerate()
        .fold(0usize, |acc, (k, &b)| acc | ((b as usize) << k));
    let state = StateVector::new_basis_state(n + m, input)?.run(&circuit)?;
    let ancillas: Vec<usize> = (n..n + m).collect();
    let count = state.deterministic_register_outcome(&ancillas, cli.tolerance)?;

    let counting = circuit.block_gate_counts(|name| !is_readout_label(name));
    let readout = circuit.block_gate_counts(is_readout_label);
    let target_name = match target {
        CountTarget::Ones => "ones",
        CountTarget::Zeros => "zeros",
    };
    let mut text = format!("count={count} m={m} gates{counting} iqft{readout}\n");
    if show_circuit {
        text.push_str(&circuit::serialize(&circuit));
    }
    let mut inputs = json!({"bits": bits_text, "target": target_name, "n": n, "m": m});
    if show_circuit {
        inputs["circuit"] = json!(circuit::serialize(&circuit));
    }
    finish(
        cli,
        text,
        json!({
            "command": "count",
            "inputs": inputs,
            "result": {"count": count},
            "gate_counts": {"counting": counts_json(&counting), "iqft": counts_json(&readout), "total": counts_json(&circuit.gate_counts())},
        }),
    )
}

fn command_encode(value: u64, n: usize, show_amplitudes: bool, cli: &Cli) -> CmdResult {
    let turns = phase_turns(value, n)?;
    let circuit = build_encoder(value, n)?;
    let state = StateVector::new_basis_state(n, 0)?.run(&circuit)?;
    let decoded = decode_register(&state, n, cli.tolerance)?;
    if decoded != value {
        return Err(Failure {
            code: EXIT_NOT_DETERMINISTIC,
            message: format!("decoded {decoded}, expected {value}"),
        });
    }
    let turn_text: Vec<String> = turns.iter().map(|t| t.to_string()).collect();
    let mut text = format!(
        "d={value} n={n}\nturns {}\ndecoded={decoded}\n",
        turn_text.join(" ")
    );
    if show_amplitudes {
        text.push_str(&dump_state(&state));
    }
    finish(
        cli,
        text,
        json!({
            "command": "encode",
            "inputs": {"d": value, "n": n},
            "result": {"turns": turn_text, "decoded": decoded},
            "gate_counts": counts_json(&circuit.gate_counts()),
        }),
    )
}

/// `bitstring re im prob` rows for every amplitude above [`DUMP_THRESHOLD`].
pub fn dump_state(state: &StateVector) -> String {
    let n = state.num_qubits();
    let mut out = String::new();
    for (i, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p <= DUMP_THRESHOLD {
            continue;
        }
        let bits: String = (0..n)
            .rev()
            .map(|q| if (i >> q) & 1 == 1 { '1' } else { '0' })
            .collect();
        out.push_str(&format!(
            "{bits} {} {} {}\n",
            fixed(a.re),
            fixed(a.im),
            fixed(p)
        ));
    }
    out
}

/// Twelve decimals, without a negative sign on values that round to zero.
fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-')
        .bytes()
        .all(|b| b == b'0' || b == b'.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn parse_values(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| usage(format!("invalid array value {t:?}")))
        })
        .collect()
}

fn parse_predicate(text: &str) -> Result<IndexPredicate, Failure> {
    match text {
        "even" => return Ok(IndexPredicate::even()),
        "odd" => return Ok(IndexPredicate::odd()),
        "all" => return Ok(IndexPredicate::all()),
        _ => {}
    }
    let bad = || {
        usage(format!(
            "invalid predicate {text:?}; use even, odd, all or mask=M,match=V"
        ))
    };
    let mut mask = None;
    let mut value = None;
    for part in text.split(',') {
        let (key, v) = part.split_once('=').ok_or_else(bad)?;
        let v = parse_int(v.trim()).ok_or_else(bad)?;
        match key.trim() {
            "mask" => mask = Some(v),
            "match" => value = Some(v),
            _ => return Err(bad()),
        }
    }
    let (Some(mask), Some(value)) = (mask, value) else {
        return Err(bad());
    };
    Ok(IndexPredicate::new(mask, value)?)
}

fn parse_int(s: &str) -> Option<usize> {
    match s.strip_prefix("0b") {
        Some(bin) => usize::from_str_radix(bin, 2).ok(),
        None => s.parse().ok(),
    }
}

fn resolve_layout(len: usize, args: LayoutArgs) -> Result<ArrayLayout, Failure> {
    let layout = ArrayLayout::for_len(len, args.data_qubits)?;
    if let Some(m) = args.index_qubits {
        if m != layout.index_qubits() {
            return Err(usage(format!(
                "-m {m} does not match {len} values (needs m={})",
                layout.index_qubits()
            )));
        }
    }
    Ok(layout)
}

fn write_array_file(path: &Path, layout: ArrayLayout, circuit: &Circuit) -> Result<(), Failure> {
    let text = format!(
        "{ARRAY_HEADER} m={} p={}\n{}",
        layout.index_qubits(),
        layout.data_qubits(),
        circuit::serialize(circuit)
    );
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn read_array_file(path: &Path) -> Result<(ArrayLayout, Circuit), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let header = text.lines().next().unwrap_or_default();
    let bad = || usage(format!("{} is not a quantum array file", path.display()));
    let fields = header.strip_prefix(ARRAY_HEADER).ok_or_else(bad)?;
    let mut m = None;
    let mut p = None;
    for field in fields.split_whitespace() {
        match field.split_once('=') {
            Some(("m", v)) => m = v.parse().ok(),
            Some(("p", v)) => p = v.parse().ok(),
            _ => return Err(bad()),
        }
    }
    let (Some(m), Some(p)) = (m, p) else {
        return Err(bad());
    };
    let layout = ArrayLayout::new(m, p)?;
    let circuit = circuit::parse(&text)?;
    if circuit.num_qubits() != layout.num_qubits() {
        return Err(bad());
    }
    Ok((layout, circuit))
}

fn values_text(contents: &ArrayContents) -> String {
    let parts: Vec<String> = contents.values().iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn simulate_array(
    layout: ArrayLayout,
    circuit: &Circuit,
    tolerance: f64,
) -> Result<(StateVector, ArrayContents), Failure> {
    let state = StateVector::new_basis_state(layout.num_qubits(), 0)?.run(circuit)?;
    let contents = read_all(&state, layout, tolerance)?;
    Ok((state, contents))
}

fn command_array(action: &ArrayAction, cli: &Cli) -> CmdResult {
    match action {
        ArrayAction::Create {
            values,
            file,
            layout,
            state,
        } => {
            let values = match (values, file) {
                (Some(v), None) => parse_values(v)?,
                (None, Some(path)) => parse_values(
                    &fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
                )?,
                _ => return Err(usage("array create needs a value list or --file")),
            };
            let layout = resolve_layout(values.len(), *layout)?;
            let contents = ArrayContents::new(values);
            let circuit = build_create(&contents, layout)?;
            let (sv, read) = simulate_array(layout, &circuit, cli.tolerance)?;
            write_array_file(state, layout, &circuit)?;
            let counts = circuit.gate_counts();
            let mut text = format!(
                "array m={} p={} gates{counts}\n",
                layout.index_qubits(),
                layout.data_qubits()
            );
            text.push_str(&dump_state(&sv));
            finish(
                cli,
                text,
                json!({
                    "command": "array create",
                    "inputs": {"values": contents.values(), "m": layout.index_qubits(), "p": layout.data_qubits()},
                    "result": {"values": read.values()},
                    "gate_counts": counts_json(&counts),
                }),
            )
        }
        ArrayAction::Add {
            addend,
            predicate,
            state,
        } => {
            let pred = parse_predicate(predicate)?;
            let (layout, mut circuit) = read_array_file(state)?;
            let (_, before) = simulate_array(layout, &circuit, cli.tolerance)?;
            let update = build_update_add(*addend, pred, layout)?;
            circuit.append(&update)?;
            let (_, after) = simulate_array(layout, &circuit, cli.tolerance)?;
            write_array_file(state, layout, &circuit)?;
            let text = format!(
                "before={}\nafter={}\n",
                values_text(&before),
                values_text(&after)
            );
            finish(
                cli,
                text,
                json!({
                    "command": "array add",
                    "inputs": {"addend": addend, "mask": pred.mask(), "match": pred.value()},
                    "result": {"before": before.values(), "after": after.values()},
                    "gate_counts": counts_json(&update.gate_counts()),
                }),
            )
        }
        ArrayAction::Dump { state, amplitudes } => {
            let (layout, circuit) = read_array_file(state)?;
            let (sv, contents) = simulate_array(layout, &circuit, cli.tolerance)?;
            let mut text = format!("{}\n", values_text(&contents));
            if *amplitudes {
                text.push_str(&dump_state(&sv));
            }
            finish(
                cli,
                text,
                json!({
                    "command": "array dump",
                    "inputs": {"m": layout.index_qubits(), "p": layout.data_qubits()},
                    "result": {"values": contents.values()},
                    "gate_counts": counts_json(&circuit.gate_counts()),
                }),
            )
        }
    }
}

fn build_named(builder: &Builder) -> Result<(String, Circuit), Failure> {
    Ok(match builder {
        Builder::Qft { n, no_swaps } => ("qft".into(), build_qft(*n, !no_swaps)?),
        Builder::Iqft { n, no_swaps } => ("iqft".into(), build_inverse_qft(*n, !no_swaps)?),
        Builder::QftPea { n } => ("qft-pea".into(), build_qft_pea(*n)?),
        Builder::Counter { n, target } => ("counter".into(), build_counter(*n, (*target).into())?),
        Builder::Encoder { value, qubits } => ("encoder".into(), build_encoder(*value, *qubits)?),
        Builder::Create { values, layout } => {
            let values = parse_values(values)?;
            let layout = resolve_layout(values.len(), *layout)?;
            (
                "create".into(),
                build_create(&ArrayContents::new(values), layout)?,
            )
        }
        Builder::Arithmetic {
            first,
            step,
            index_qubits,
            data_qubits,
        } => (
            "arithmetic".into(),
            build_create_arithmetic(
                *first,
                *step,
                ArrayLayout::new(*index_qubits, *data_qubits)?,
            )?,
        ),
        Builder::Update {
            addend,
            predicate,
            index_qubits,
            data_qubits,
        } => (
            "update".into(),
            build_update_add(
                *addend,
                parse_predicate(predicate)?,
                ArrayLayout::new(*index_qubits, *data_qubits)?,
            )?,
        ),
    })
}

fn command_circuit_print(builder: &Builder, lowered: bool, cli: &Cli) -> CmdResult {
    let (name, mut circuit) = build_named(builder)?;
    if lowered {
        circuit = circuit.lower_negative_controls();
    }
    let text = circuit::serialize(&circuit);
    finish(
        cli,
        text.clone(),
        json!({
            "command": "circuit print",
            "inputs": {"builder": name, "lowered": lowered},
            "result": {"circuit": text},
            "gate_counts": counts_json(&circuit.gate_counts()),
        }),
    )
}
