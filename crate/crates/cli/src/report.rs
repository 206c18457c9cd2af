//! Plain-text reports. Every line is produced in a fixed order from exact
//! data, so identical inputs give byte-identical output.

use std::fmt::Display;

use stringnet::field::Field;
use stringnet::linalg::Matrix;

/// How a command ended, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Reject,
    Breach,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Reject => 1,
            Status::Breach => 3,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Reject => "reject",
            Status::Breach => "invariant breach",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    lines: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { lines: vec![format!("command: {command}")], status: Status::Ok }
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn line(&mut self, text: impl Display) {
        self.lines.push(text.to_string());
    }

    pub fn matrix<F: Field>(&mut self, key: &str, m: &Matrix<F>) {
        self.lines.push(format!("{key}: {}x{}", m.rows(), m.cols()));
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            self.lines.push(format!("  {}", row.join(" ")));
        }
    }

    /// Records a failed check; the worst status wins.
    pub fn fail(&mut self, status: Status) {
        if status == Status::Breach || self.status == Status::Ok {
            self.status = status;
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push_str(&format!("\nstatus: {}\n", self.status.word()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::CliError;
    use stringnet::error::Error;
    use stringnet::field::Q;

    #[test]
    fn worst_status_wins() {
        let mut r = Report::new("center");
        r.matrix("value", &Matrix::<Q>::identity(2));
        r.fail(Status::Reject);
        r.fail(Status::Breach);
        r.fail(Status::Reject);
        assert_eq!(r.status.exit_code(), 3);
        assert_eq!(r.render(), "command: center\nvalue: 2x2\n  1 0\n  0 1\nstatus: invariant breach\n");
    }

    #[test]
    fn law_failures_exit_with_three() {
        assert_eq!(CliError::Engine(Error::LawFailure("associativity".into())).exit_code(), 3);
        assert_eq!(CliError::Input("bad".into()).exit_code(), 2);
    }
}
