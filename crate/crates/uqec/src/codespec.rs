//! Line-oriented text format for codes and their error models.
//!
//! ```text
//! # comment
//! code bitflip3
//! qubits 3
//! zero:
//! +1|000>
//! one:
//! +1|111>
//! errors:
//! 0.25 III
//! 0.25 XII
//! 0.25 IXI
//! 0.25 IIX
//! ```
//!
//! `#` starts a comment, blank lines are ignored. Coefficients default to 1
//! when omitted; both the ASCII hyphen and U+2212 are accepted as the minus
//! sign. Serialization emits ASCII only. Codeword coefficients may be
//! unnormalized (they are normalized on construction); error probabilities
//! must sum to 1 within 1e-9.

use std::fmt::Write as _;

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::errors::ErrorModel;
use crate::pauli::PauliOperator;
use crate::qstate::{index_to_bits, PureState};

/// A parsed code file: the code plus its optional error model.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    pub code: Code,
    pub error_model: Option<ErrorModel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    None,
    Zero,
    One,
    Errors,
}

/// Parses the code file format. Errors report the offending line number.
pub fn parse(text: &str) -> Result<CodeSpec> {
    let mut name: Option<String> = None;
    let mut n_qubits: Option<usize> = None;
    let mut zero_terms: Vec<(f64, usize)> = Vec::new();
    let mut one_terms: Vec<(f64, usize)> = Vec::new();
    let mut error_entries: Vec<(f64, PauliOperator)> = Vec::new();
    let mut saw_errors_block = false;
    let mut block = Block::None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };

        if let Some(rest) = line.strip_prefix("code ") {
            name = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = line.strip_prefix("qubits ") {
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| err(format!("`{}` is not a qubit count", rest.trim())))?;
            if n == 0 {
                return Err(err("qubit count must be positive".into()));
            }
            n_qubits = Some(n);
            continue;
        }
        match line {
            "zero:" => {
                block = Block::Zero;
                continue;
            }
            "one:" => {
                block = Block::One;
                continue;
            }
            "errors:" => {
                block = Block::Errors;
                saw_errors_block = true;
                continue;
            }
            _ => {}
        }

        let n = n_qubits.ok_or_else(|| err("`qubits <n>` must come before any block".into()))?;
        match block {
            Block::None => return Err(err(format!("unexpected line `{line}` outside any block"))),
            Block::Zero | Block::One => {
                let (coeff, index) = parse_term(line, n, line_no)?;
                if block == Block::Zero {
                    zero_terms.push((coeff, index));
                } else {
                    one_terms.push((coeff, index));
                }
            }
            Block::Errors => {
                let (prob_str, letters) = line
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(format!("expected `<prob> <letters>`, got `{line}`")))?;
                let prob = prob_str
                    .parse::<f64>()
                    .map_err(|_| err(format!("`{prob_str}` is not a probability")))?;
                let letters = letters.trim();
                if letters.len() != n {
                    return Err(err(format!(
                        "operator `{letters}` has {} letters, expected {n}",
                        letters.len()
                    )));
                }
                let op = PauliOperator::from_letters(letters).map_err(|e| err(e.to_string()))?;
                error_entries.push((prob, op));
            }
        }
    }

    let n = n_qubits.ok_or(Error::Parse {
        line: 1,
        msg: "missing `qubits <n>` header".into(),
    })?;
    let name = name.unwrap_or_else(|| "unnamed".to_string());
    if zero_terms.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty `zero:` codeword".into(),
        });
    }
    if one_terms.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty `one:` codeword".into(),
        });
    }

    let build = |terms: &[(f64, usize)]| -> Result<PureState> {
        let mut amplitudes = vec![num_complex::Complex64::new(0.0, 0.0); 1 << n];
        for &(coeff, index) in terms {
            amplitudes[index] += num_complex::Complex64::new(coeff, 0.0);
        }
        PureState::new(n, amplitudes)
    };
    let code = Code::new(&name, build(&zero_terms)?, build(&one_terms)?)?;

    let error_model = if saw_errors_block {
        if error_entries.is_empty() {
            return Err(Error::Parse {
                line: 1,
                msg: "empty `errors:` block".into(),
            });
        }
        Some(ErrorModel::new(error_entries)?)
    } else {
        None
    };

    Ok(CodeSpec { code, error_model })
}

/// Parses `<sign><coeff>|<bitstring>>` into `(signed coefficient, index)`.
fn parse_term(line: &str, n_qubits: usize, line_no: usize) -> Result<(f64, usize)> {
    let err = |msg: String| Error::Parse { line: line_no, msg };
    let mut chars = line.chars();
    let sign = match chars.next() {
        Some('+') => 1.0,
        Some('-') | Some('\u{2212}') => -1.0,
        _ => {
            return Err(err(format!(
                "term `{line}` must start with an explicit + or - sign"
            )))
        }
    };
    let rest = chars.as_str();
    let bar = rest
        .find('|')
        .ok_or_else(|| err(format!("term `{line}` is missing `|`")))?;
    let coeff_str = &rest[..bar];
    let coeff = if coeff_str.is_empty() {
        1.0
    } else {
        coeff_str
            .parse::<f64>()
            .map_err(|_| err(format!("`{coeff_str}` is not a coefficient")))?
    };
    let ket = &rest[bar + 1..];
    let bits = ket
        .strip_suffix('>')
        .ok_or_else(|| err(format!("term `{line}` is missing the closing `>`")))?;
    if bits.len() != n_qubits {
        return Err(err(format!(
            "bitstring `{bits}` has length {}, expected {n_qubits}",
            bits.len()
        )));
    }
    let index = crate::qstate::bits_to_index(n_qubits, bits).map_err(|e| err(e.to_string()))?;
    Ok((sign * coeff, index))
}

/// Serializes a code (and optionally its error model) in the file format;
/// ASCII only, 17 significant digits per coefficient.
pub fn serialize(code: &Code, error_model: Option<&ErrorModel>) -> String {
    let mut out = String::new();
    let n = code.n_qubits();
    writeln!(out, "code {}", code.name()).unwrap();
    writeln!(out, "qubits {n}").unwrap();
    for (label, state) in [("zero:", code.logical_zero()), ("one:", code.logical_one())] {
        writeln!(out, "{label}").unwrap();
        for (index, amp) in state.amplitudes().iter().enumerate() {
            if amp.norm() < 1e-15 {
                continue;
            }
            // Codewords in this format are real-amplitude by construction.
            let sign = if amp.re >= 0.0 { '+' } else { '-' };
            writeln!(
                out,
                "{sign}{:.16e}|{}>",
                amp.re.abs(),
                index_to_bits(n, index)
            )
            .unwrap();
        }
    }
    if let Some(model) = error_model {
        writeln!(out, "errors:").unwrap();
        for (p, op) in model.entries() {
            writeln!(out, "{:.16e} {}", p, op.label()).unwrap();
        }
    }
    out
}
