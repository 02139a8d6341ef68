//! Loading JSON inputs given either inline or as a file path.

use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::response::CodedError;

/// Arguments starting with `{` or `[` are inline JSON; anything else is a
/// path to a JSON file.
pub fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (arg.to_owned(), "inline JSON".to_owned())
    } else {
        let path = Path::new(arg);
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {what} from {}", path.display()))?;
        (text, path.display().to_string())
    };
    parse(&text, what, &origin)
}

fn parse<T: DeserializeOwned>(text: &str, what: &str, origin: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        CodedError::new(
            "malformed_json",
            format!(
                "{what} ({origin}) is not valid JSON at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
        )
    })?;
    serde_json::from_value(value).map_err(|e| {
        CodedError::new("schema_violation", format!("{what} ({origin}): {e}")).into()
    })
}
