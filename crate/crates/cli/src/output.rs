use braidstat::sparse::SparseMatrix;
use braidstat::Error;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

use crate::Format;

pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "config", message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let config = matches!(
            e,
            Error::EvenN(_)
                | Error::InvalidParamSet(_)
                | Error::MissingParameter(_)
                | Error::InadmissibleLambda(_)
                | Error::NonPrimeOrder(_)
                | Error::UnsupportedN(_)
                | Error::OrderOverflow { .. }
                | Error::Invalid(_)
                | Error::ZeroParameter(_)
                | Error::SingularParameter(_)
        );
        if config {
            Failure { code: 2, kind: "config", message: e.to_string() }
        } else {
            Failure { code: 1, kind: "computation", message: e.to_string() }
        }
    }
}

pub fn fail(f: &Failure) -> ExitCode {
    let v = json!({"error": {"kind": f.kind, "message": f.message, "exit_code": f.code}});
    let _ = writeln!(std::io::stderr(), "{}", serde_json::to_string(&v).expect("serializable"));
    ExitCode::from(f.code)
}

pub struct Report {
    pub pass: bool,
    pub json: Value,
    pub text: String,
    pub csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn force_csv(mut self, on: bool) -> Self {
        if on {
            self.json = Value::Null;
        }
        self
    }

    pub fn emit(self, format: Format) -> ExitCode {
        let format = if self.json.is_null() { Format::Csv } else { format };
        let body = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
            Format::Text => self.text,
            Format::Csv => {
                let (header, rows) = self.csv.unwrap_or_default();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header).expect("in-memory write");
                for row in rows {
                    w.write_record(&row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
            }
        };
        let mut out = std::io::stdout().lock();
        if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
            return ExitCode::from(1);
        }
        if self.pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

/// Sparse matrix as `{"rows", "cols", "entries": [[i, j, value], ...]}`.
pub fn sparse_json<T>(m: &SparseMatrix<T>, show: impl Fn(&T) -> String) -> Value
where
    T: braidstat::ring::Ring,
{
    json!({
        "rows": m.nrows(),
        "cols": m.ncols(),
        "entries": m.triplets().map(|(i, j, v)| json!([i, j, show(v)])).collect::<Vec<_>>(),
    })
}
