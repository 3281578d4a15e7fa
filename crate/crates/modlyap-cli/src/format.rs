use serde::Serialize;

use crate::error::CliResult;

pub const FORMAT_VERSION: u32 = 1;

/// `x` with 11 significant digits.
pub fn sig11(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = 10 - exp;
    if (0..=15).contains(&decimals) {
        format!("{x:.*}", decimals as usize)
    } else {
        format!("{x:.10e}")
    }
}

/// Pretty JSON with `format_version` as the first field.
pub fn json<T: Serialize>(body: &T) -> CliResult<String> {
    let mut out = serde_json::Map::new();
    out.insert("format_version".into(), FORMAT_VERSION.into());
    match serde_json::to_value(body).map_err(|e| crate::error::CliError::Compute(e.to_string()))? {
        serde_json::Value::Object(m) => out.extend(m),
        other => {
            out.insert("data".into(), other);
        }
    }
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(out)).expect("valid JSON value");
    s.push('\n');
    Ok(s)
}

/// CSV with a leading `# format_version` comment, a header row and the given records.
pub fn csv<R: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: R) -> CliResult<String> {
    let mut out = format!("# format_version {FORMAT_VERSION}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(&r)?;
        }
        w.flush()?;
    }
    Ok(String::from_utf8(out).expect("CSV of UTF-8 fields"))
}
