//! Resolution of `--code` and `--errors` values into concrete objects.
//!
//! A code source is a builtin name or a path to a code file. An error
//! source is one of the named sets below, an inline comma-separated list,
//! or a path to a file with an `errors:` block:
//!
//! * `paper-sequence` - the published sixteen-operator ordering for the
//!   permuted five-qubit code, uniform probabilities.
//! * `single-qubit` - the identity plus every single-qubit Pauli, uniform.
//! * `noiseless` - the identity with probability 1.
//! * inline - items like `I,X1,X2,X3` (uniform) or `0.7 I, 0.1 X1, 0.1 X2,
//!   0.1 X3`; probabilities may also be fractions (`1/4`). Operators are
//!   single-qubit tokens (`X4`) or full letter strings (`IIIXI`).

use std::path::Path;

use uqec::{
    builtin, codespec, full_single_qubit_set, laflamme5_permuted_sequence, Code, Error, ErrorModel,
    PauliOperator, Result, BUILTIN_CODES,
};

/// A resolved code plus the error model embedded in its file, if any.
pub struct CodeSource {
    pub code: Code,
    pub embedded_errors: Option<ErrorModel>,
}

pub fn resolve_code(source: &str) -> Result<CodeSource> {
    if BUILTIN_CODES.contains(&source) {
        return Ok(CodeSource {
            code: builtin(source)?,
            embedded_errors: None,
        });
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Error::UnknownCode {
            name: source.to_string(),
            available: format!("{} or a code file path", BUILTIN_CODES.join(", ")),
        });
    }
    let text = std::fs::read_to_string(path)?;
    let spec = codespec::parse(&text)?;
    Ok(CodeSource {
        code: spec.code,
        embedded_errors: spec.error_model,
    })
}

pub fn resolve_errors(source: Option<&str>, code: &CodeSource) -> Result<ErrorModel> {
    let n = code.code.n_qubits();
    let Some(source) = source else {
        return code.embedded_errors.clone().ok_or_else(|| {
            Error::InvalidErrorModel(
                "no --errors given and the code file has no errors: block".into(),
            )
        });
    };
    match source.trim() {
        "paper-sequence" => {
            if n != 5 {
                return Err(Error::InvalidErrorModel(format!(
                    "paper-sequence is a five-qubit operator list; the code has {n} qubits"
                )));
            }
            ErrorModel::uniform(laflamme5_permuted_sequence())
        }
        "single-qubit" => ErrorModel::uniform(full_single_qubit_set(n)),
        "noiseless" => ErrorModel::new(vec![(1.0, PauliOperator::identity(n))]),
        trimmed if trimmed.contains(',') => parse_inline(n, trimmed),
        trimmed => {
            let path = Path::new(trimmed);
            if path.exists() {
                let text = std::fs::read_to_string(path)?;
                let spec = codespec::parse(&text)?;
                spec.error_model.ok_or_else(|| {
                    Error::InvalidErrorModel(format!("{trimmed} has no errors: block"))
                })
            } else {
                Err(Error::InvalidErrorModel(format!(
                    "`{trimmed}` is not a named set (paper-sequence, single-qubit, noiseless), \
                     an inline list, or an existing file"
                )))
            }
        }
    }
}

fn parse_probability(s: &str) -> Result<f64> {
    if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num.trim().parse().map_err(|_| bad_prob(s))?;
        let den: f64 = den.trim().parse().map_err(|_| bad_prob(s))?;
        if den == 0.0 {
            return Err(bad_prob(s));
        }
        return Ok(num / den);
    }
    s.parse().map_err(|_| bad_prob(s))
}

fn bad_prob(s: &str) -> Error {
    Error::InvalidErrorModel(format!("`{s}` is not a probability"))
}

fn parse_inline(n_qubits: usize, text: &str) -> Result<ErrorModel> {
    let mut entries: Vec<(Option<f64>, PauliOperator)> = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::InvalidErrorModel(
                "empty item in the operator list".into(),
            ));
        }
        let (prob, token) = match item.rsplit_once(char::is_whitespace) {
            Some((prob, token)) => (Some(parse_probability(prob.trim())?), token.trim()),
            None => (None, item),
        };
        entries.push((prob, PauliOperator::from_token(n_qubits, token)?));
    }
    let with_probs = entries.iter().filter(|(p, _)| p.is_some()).count();
    if with_probs == 0 {
        ErrorModel::uniform(entries.into_iter().map(|(_, op)| op).collect())
    } else if with_probs == entries.len() {
        ErrorModel::new(
            entries
                .into_iter()
                .map(|(p, op)| (p.unwrap(), op))
                .collect(),
        )
    } else {
        Err(Error::InvalidErrorModel(
            "give a probability for every operator or for none".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bitflip() -> CodeSource {
        resolve_code("bitflip3").unwrap()
    }

    #[test]
    fn named_sets_resolve() {
        let five = resolve_code("laflamme5-permuted").unwrap();
        let model = resolve_errors(Some("paper-sequence"), &five).unwrap();
        assert_eq!(model.len(), 16);
        let model = resolve_errors(Some("single-qubit"), &bitflip()).unwrap();
        assert_eq!(model.len(), 10);
        let model = resolve_errors(Some("noiseless"), &bitflip()).unwrap();
        assert_eq!(model.len(), 1);
        assert!(resolve_errors(Some("paper-sequence"), &bitflip()).is_err());
    }

    #[test]
    fn inline_uniform_and_weighted() {
        let model = resolve_errors(Some("I,X1,X2,X3"), &bitflip()).unwrap();
        assert_eq!(model.len(), 4);
        assert!((model.probabilities()[0] - 0.25).abs() < 1e-15);
        let model = resolve_errors(Some("0.7 I, 0.1 X1, 0.1 X2, 0.1 X3"), &bitflip()).unwrap();
        assert!((model.probabilities()[0] - 0.7).abs() < 1e-12);
        let model = resolve_errors(Some("1/4 I, 1/4 X1, 1/4 X2, 1/4 X3"), &bitflip()).unwrap();
        assert!((model.probabilities()[2] - 0.25).abs() < 1e-15);
        assert!(resolve_errors(Some("0.7 I, X1"), &bitflip()).is_err());
        assert!(resolve_errors(Some("I, W2"), &bitflip()).is_err());
    }

    #[test]
    fn unknown_sources_are_rejected() {
        assert!(resolve_code("not-a-code").is_err());
        assert!(resolve_errors(Some("mystery"), &bitflip()).is_err());
        assert!(resolve_errors(None, &bitflip()).is_err());
    }
}
