use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use milnor_core::freelie::degree_cap;
use milnor_core::series::{format_word, TruncatedSeries};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report field `{0}` is missing or has the wrong type")]
    Field(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A module rejected the input (exit code 1).
    Error,
    /// A check ran and did not hold (exit code 1).
    Fail,
    /// Bad invocation (exit code 2).
    Usage,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::Fail => "fail",
            Status::Usage => "usage",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ok" => Status::Ok,
            "error" => Status::Error,
            "fail" => Status::Fail,
            "usage" => Status::Usage,
            _ => return None,
        })
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error | Status::Fail => 1,
            Status::Usage => 2,
        }
    }
}

pub fn conventions() -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    put(
        "crossing_sign",
        json!("oriented sign; x+ is right-handed, so for two upward strands the lower-left to upper-right strand passes over"),
    );
    put("composition", json!("(a o b)(w) = a(b(w)); A_n(s # t) = A_n(s) o A_n(t) with t stacked above s"));
    put("grading", json!("X, Y have degree 1; level n is Aut0(F/F_{n+1}), Magnus series truncated above degree n"));
    put("johnson_sign", json!("D(X) = degree n+1 part of image_x - (1+X) = [u, X], and D(Y) = [v, Y]"));
    put("longitude", json!("lambda_j = o_k^e_k ... o_1^e_1 over the undercrossings of strand j from the bottom, zero-framed; A_n: x_j -> lambda_j x_j lambda_j^-1"));
    put("derivation_bracket", json!("[D1, D2] = D1 D2 - D2 D1"));
    put("degree_cap", json!(degree_cap()));
    m
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub conventions: Map<String, Value>,
    pub error: Option<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Ok,
            inputs: Map::new(),
            results: Map::new(),
            conventions: conventions(),
            error: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn fail(&mut self, status: Status, kind: &str, message: &str) -> &mut Self {
        self.status = status;
        self.error = Some((kind.to_string(), message.to_string()));
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    fn to_value(&self) -> Value {
        let error = match &self.error {
            Some((k, m)) => json!({ "kind": k, "message": m }),
            None => Value::Null,
        };
        json!({
            "command": self.command,
            "status": self.status.as_str(),
            "inputs": self.inputs,
            "results": self.results,
            "conventions": self.conventions,
            "error": error,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let v: Value = serde_json::from_str(text)?;
        let obj = |k: &'static str| v.get(k).and_then(Value::as_object).cloned().ok_or(ReportError::Field(k));
        let command = v.get("command").and_then(Value::as_str).ok_or(ReportError::Field("command"))?;
        let status = v
            .get("status")
            .and_then(Value::as_str)
            .and_then(Status::parse)
            .ok_or(ReportError::Field("status"))?;
        let error = match v.get("error") {
            Some(Value::Null) => None,
            Some(e) => {
                let k = e.get("kind").and_then(Value::as_str).ok_or(ReportError::Field("error"))?;
                let m = e.get("message").and_then(Value::as_str).ok_or(ReportError::Field("error"))?;
                Some((k.to_string(), m.to_string()))
            }
            None => return Err(ReportError::Field("error")),
        };
        Ok(Report {
            command: command.to_string(),
            status,
            inputs: obj("inputs")?,
            results: obj("results")?,
            conventions: obj("conventions")?,
            error,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("milnor {}\nstatus: {}\n", self.command, self.status.as_str());
        if let Some((k, m)) = &self.error {
            s.push_str(&format!("error: {k}: {m}\n"));
        }
        for (title, map) in [("inputs", &self.inputs), ("results", &self.results), ("conventions", &self.conventions)] {
            if map.is_empty() {
                continue;
            }
            s.push_str(title);
            s.push_str(":\n");
            for (k, v) in map {
                write_text(&mut s, k, v, 1);
            }
        }
        s
    }
}

fn write_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in m {
                write_text(out, k, v, depth + 1);
            }
        }
        Value::String(t) if t.contains('\n') => {
            out.push_str(&format!("{pad}{key}:\n"));
            for line in t.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        Value::String(t) => out.push_str(&format!("{pad}{key}: {t}\n")),
        other => out.push_str(&format!("{pad}{key}: {other}\n")),
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

/// Nonzero coefficients of a series keyed by word.
pub fn series_value(s: &TruncatedSeries) -> Value {
    let mut m = Map::new();
    for (w, c) in s.terms() {
        m.insert(format_word(&w), int(c));
    }
    Value::Object(m)
}
