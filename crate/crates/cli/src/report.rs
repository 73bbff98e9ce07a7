use std::fmt::Write as _;

use cbgraph::DistanceOracle;

/// Line-oriented output. In text mode a row is `k=v k=v` on one line, optionally
/// prefixed by `group:`; in kv mode every value gets its own `group.k=v` line and
/// free-form notes (timings, headers) are dropped so the output is reproducible.
pub struct Out {
    kv: bool,
    buf: String,
}

impl Out {
    pub fn new(kv: bool) -> Self {
        Self { kv, buf: String::new() }
    }

    pub fn is_kv(&self) -> bool {
        self.kv
    }

    pub fn header(&mut self, command: &str, source: &str, d: &DistanceOracle) {
        let g = d.graph();
        self.row(
            None,
            &[
                ("command", command.to_string()),
                ("graph", source.to_string()),
                ("n", g.n().to_string()),
                ("m", g.m().to_string()),
                ("diameter", d.diameter().to_string()),
            ],
        );
    }

    pub fn row(&mut self, group: Option<&str>, pairs: &[(&str, String)]) {
        if self.kv {
            for (k, v) in pairs {
                match group {
                    Some(g) => writeln!(self.buf, "{g}.{k}={v}"),
                    None => writeln!(self.buf, "{k}={v}"),
                }
                .unwrap();
            }
        } else {
            if let Some(g) = group {
                write!(self.buf, "{g}: ").unwrap();
            }
            let parts: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(self.buf, "{}", parts.join(" ")).unwrap();
        }
    }

    pub fn note(&mut self, text: &str) {
        if !self.kv {
            writeln!(self.buf, "{text}").unwrap();
        }
    }

    /// The invocation that reproduces a reported witness, minus `--threads`.
    pub fn rerun(&mut self) {
        let mut args = vec!["cbgraph".to_string()];
        let mut rest = std::env::args().skip(1);
        while let Some(a) = rest.next() {
            if a == "--threads" {
                rest.next();
            } else if !a.starts_with("--threads=") {
                args.push(a);
            }
        }
        let cmd = shlex::try_join(args.iter().map(String::as_str)).unwrap_or_else(|_| args.join(" "));
        self.row(None, &[("rerun", cmd)]);
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

pub fn list(vs: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = vs.into_iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}
