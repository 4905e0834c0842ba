use std::io::Write;
use std::path::Path;

use serde::Serialize;

/// Exit status plus message for a failed command.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            message: message.into(),
        }
    }
}

impl From<qslforge::Error> for Failure {
    fn from(err: qslforge::Error) -> Self {
        use qslforge::Error::*;
        let code = match &err {
            ConvergenceFailure { .. } => EXIT_NUMERICAL,
            NotAllowedProtocol { .. } => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::usage(err.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Failure::usage(err.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

/// Parses a norm order: a number `>= 1` or `inf`.
pub fn parse_p(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s == "∞" {
        return Ok(f64::INFINITY);
    }
    match s.parse::<f64>() {
        Ok(p) if p >= 1.0 => Ok(p),
        Ok(p) => Err(format!("norm order must be >= 1, got {p}")),
        Err(_) => Err(format!("`{s}` is not a number or `inf`")),
    }
}

/// Writes through a temporary file in the destination directory and renames
/// it into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn print(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
}
