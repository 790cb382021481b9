use std::fmt;

use wavelet_plm::Error;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_IO: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_ESTIMATION: u8 = 3;

impl Failure {
    pub fn io(message: String) -> Self {
        Self { code: EXIT_IO, message }
    }

    pub fn input(message: String) -> Self {
        Self { code: EXIT_INPUT, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::Input(_) => EXIT_INPUT,
            Error::Estimation(_) => EXIT_ESTIMATION,
        };
        Self { code, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // keep diagnostics on one line
        f.write_str(&self.message.replace('\n', " "))
    }
}
