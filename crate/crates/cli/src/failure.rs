use std::fmt;
use std::process::ExitCode;

/// Process exit codes.
///
/// | code | meaning |
/// |------|---------|
/// | 0 | success |
/// | 1 | unexpected internal error |
/// | 2 | usage or configuration error, nothing was processed |
/// | 3 | processing error on at least one input (the others were still processed) |
/// | 4 | accuracy below the `--min-accuracy` floor |
pub mod code {
    pub const OK: u8 = 0;
    pub const INTERNAL: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const PROCESSING: u8 = 3;
    pub const ACCURACY_FLOOR: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Processing(String),

    #[error("overall accuracy {accuracy:.4} is below the floor {floor:.4}")]
    AccuracyFloor { accuracy: f64, floor: f64 },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Failure {
    pub fn config(msg: impl fmt::Display) -> Self {
        Failure::Config(msg.to_string())
    }

    pub fn processing(msg: impl fmt::Display) -> Self {
        Failure::Processing(msg.to_string())
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => code::CONFIG,
            Failure::Processing(_) => code::PROCESSING,
            Failure::AccuracyFloor { .. } => code::ACCURACY_FLOOR,
            Failure::Internal(_) => code::INTERNAL,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

/// Per-input failures collected during a batch run.
#[derive(Debug, Default)]
pub struct BatchErrors {
    errors: Vec<(String, String)>,
}

impl BatchErrors {
    pub fn push(&mut self, input: impl Into<String>, msg: impl fmt::Display) {
        self.errors.push((input.into(), msg.to_string()));
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }

    /// `Ok` when nothing failed, otherwise a processing failure listing every input.
    pub fn finish(self, what: &str) -> CliResult {
        if self.errors.is_empty() {
            return Ok(());
        }
        let mut msg = format!("{} of the inputs failed during {what}:", self.errors.len());
        for (input, e) in &self.errors {
            msg.push_str(&format!("\n  {input}: {e}"));
        }
        Err(Failure::Processing(msg))
    }
}
