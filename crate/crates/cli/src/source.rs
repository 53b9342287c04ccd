use std::path::PathBuf;

use code_ent_core::codes::{self, format::parse_generator};
use code_ent_core::statevec::derive_seed;
use code_ent_core::LinearCode;

use crate::CliError;

/// Where a code comes from: a builtin family or a generator file.
#[derive(Debug, Clone)]
pub enum CodeSource {
    Family {
        name: String,
        n: Option<usize>,
        k: Option<usize>,
        l: Option<usize>,
        seed: u64,
    },
    File(PathBuf),
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Input(format!("family {family} requires {flag}")))
}

impl CodeSource {
    pub fn load(&self) -> Result<LinearCode, CliError> {
        match self {
            CodeSource::File(path) => load_file(path),
            CodeSource::Family {
                name,
                n,
                k,
                l,
                seed,
            } => {
                let code = match name.as_str() {
                    "repetition" => codes::repetition(need(*n, "--n", name)?)?,
                    "full" => codes::full(need(*n, "--n", name)?)?,
                    "zero" => codes::zero(need(*n, "--n", name)?)?,
                    "even-weight" | "even_weight" => codes::even_weight(need(*n, "--n", name)?)?,
                    "hamming" | "hamming-7-4" | "hamming_7_4" => codes::hamming_7_4(),
                    "toric" => codes::toric_x_code(need(*l, "--L", name)?)?,
                    "random" => codes::random_code(
                        need(*n, "--n", name)?,
                        need(*k, "--k", name)?,
                        derive_seed(*seed, "random-code", 0),
                    )?,
                    other => {
                        return Err(CliError::Input(format!(
                            "unknown family {other:?} (expected repetition, full, zero, even-weight, hamming, toric, random)"
                        )))
                    }
                };
                Ok(code)
            }
        }
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        match self {
            CodeSource::File(path) => path.display().to_string(),
            CodeSource::Family {
                name,
                n,
                k,
                l,
                seed,
            } => {
                let mut s = name.clone();
                if let Some(n) = n {
                    s.push_str(&format!(" n={n}"));
                }
                if let Some(k) = k {
                    s.push_str(&format!(" k={k}"));
                }
                if let Some(l) = l {
                    s.push_str(&format!(" L={l}"));
                }
                if name == "random" {
                    s.push_str(&format!(" seed={seed}"));
                }
                s
            }
        }
    }
}

pub fn load_file(path: &std::path::Path) -> Result<LinearCode, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_generator(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
