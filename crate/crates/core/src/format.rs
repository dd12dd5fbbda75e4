// Copyright 2026 The sparsevqe Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Line grammar shared by Hamiltonian and ansatz files.
//!
//! One term per line, `<number> <pauli>`, where the Pauli text follows
//! [`crate::pauli::parse_factors`]. Blank lines and lines starting with `#`
//! are skipped. Lines of the form `key: value` are headers.

use crate::error::{Error, Result};
use crate::pauli::{parse_factors, Factor, PauliString, MAX_QUBITS};

#[derive(Debug)]
pub(crate) struct TermLine {
    pub line: usize,
    pub value: f64,
    pub factors: Vec<(Factor, usize)>,
}

#[derive(Debug, Default)]
pub(crate) struct ParsedFile {
    pub headers: Vec<(usize, String, String)>,
    pub terms: Vec<TermLine>,
}

impl ParsedFile {
    pub fn header(&self, key: &str) -> Option<(usize, &str)> {
        self.headers
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(line, _, v)| (*line, v.as_str()))
    }

    /// Register size: the `qubits:` header if present, else one past the
    /// largest qubit index mentioned (at least 1).
    pub fn n_qubits(&self) -> Result<usize> {
        let needed = self
            .terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|&(_, q)| q + 1))
            .max()
            .unwrap_or(1);
        match self.header("qubits") {
            Some((line, v)) => {
                let n: usize = v.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad qubit count `{v}`"),
                })?;
                if n == 0 || n > MAX_QUBITS || n < needed {
                    return Err(Error::Parse {
                        line,
                        message: format!("qubit count {n} does not cover indices up to {}", needed - 1),
                    });
                }
                Ok(n)
            }
            None if needed > MAX_QUBITS => Err(Error::QubitCount(needed)),
            None => Ok(needed),
        }
    }

    pub fn paulis(&self, n_qubits: usize) -> Result<Vec<(f64, PauliString)>> {
        self.terms
            .iter()
            .map(|t| {
                PauliString::from_factors(n_qubits, &t.factors)
                    .map(|p| (t.value, p))
                    .map_err(|e| Error::Parse {
                        line: t.line,
                        message: e.to_string(),
                    })
            })
            .collect()
    }
}

pub(crate) fn parse_lines(text: &str, allowed_headers: &[&str]) -> Result<ParsedFile> {
    let mut out = ParsedFile::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = trimmed.split_once(':') {
            let key = key.trim();
            if !allowed_headers.contains(&key) {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown header `{key}`"),
                });
            }
            out.headers.push((line, key.to_string(), value.trim().to_string()));
            continue;
        }
        let (number, rest) = trimmed
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse {
                line,
                message: "expected `<number> <pauli>`".into(),
            })?;
        let value: f64 = number.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad number `{number}`"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("non-finite number `{number}`"),
            });
        }
        let factors = parse_factors(rest).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        out.terms.push(TermLine {
            line,
            value,
            factors,
        });
    }
    Ok(out)
}
