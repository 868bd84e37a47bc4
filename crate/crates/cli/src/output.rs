//! Artifacts: canonical `report.json`, `tables.txt` and CSV files.

use crate::commands::RunOutput;
use crate::config::RunConfig;
use serde_json::{json, Value};
use std::fs;
use std::io;

/// JSON with object keys sorted and a trailing newline, so identical runs
/// give identical bytes.
pub fn canonical_json(v: &Value) -> String {
    fn sort(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let mut keys: Vec<&String> = m.keys().collect();
                keys.sort();
                Value::Object(keys.into_iter().map(|k| (k.clone(), sort(&m[k]))).collect())
            }
            Value::Array(a) => Value::Array(a.iter().map(sort).collect()),
            x => x.clone(),
        }
    }
    serde_json::to_string_pretty(&sort(v)).expect("value serializes") + "\n"
}

pub fn report_value(command: &str, cfg: &RunConfig, out: &RunOutput) -> Value {
    json!({
        "command": command,
        "config": cfg,
        "passed": out.passed(),
        "reports": out.reports,
        "summary": out.summary,
    })
}

pub fn write(command: &str, cfg: &RunConfig, out: &RunOutput) -> io::Result<()> {
    fs::create_dir_all(&cfg.out_dir)?;
    fs::write(cfg.out_dir.join("report.json"), canonical_json(&report_value(command, cfg, out)))?;
    let mut text = String::new();
    for r in &out.reports {
        text.push_str(&r.to_text());
        text.push('\n');
    }
    text.push_str(&out.text);
    fs::write(cfg.out_dir.join("tables.txt"), text)?;
    for (name, body) in &out.csv {
        fs::write(cfg.out_dir.join(name), body)?;
    }
    Ok(())
}
