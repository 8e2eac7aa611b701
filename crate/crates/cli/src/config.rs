//! `--config FILE` expansion.
//!
//! A config file is flat `key = value` text where each key is a flag name
//! without the leading dashes. Blank lines and `#` comments are skipped.
//! The file's pairs are spliced in right after the subcommand, ahead of the
//! real flags, so any flag given on the command line overrides the file.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::error::CliError;

pub fn parse_config(text: &str, origin: &Path) -> Result<Vec<OsString>, CliError> {
    let mut tokens = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{}:{}: expected `key = value`", origin.display(), index + 1))
        })?;
        let key = key.trim().trim_start_matches('-');
        let value = value.trim().trim_matches('"');
        if key.is_empty() || key == "config" {
            return Err(CliError::Usage(format!("{}:{}: invalid key {key:?}", origin.display(), index + 1)));
        }
        tokens.push(OsString::from(format!("--{key}")));
        tokens.push(OsString::from(value));
    }
    Ok(tokens)
}

/// Replaces every `--config FILE` in `argv` with the file's flags.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let is_subcommand = argv.get(1).and_then(|a| a.to_str()).is_some_and(|a| !a.starts_with('-'));
    if !is_subcommand {
        return Ok(argv);
    }
    let mut head: Vec<OsString> = argv[..2].to_vec();
    let mut from_files = Vec::new();
    let mut rest = Vec::new();
    let mut iter = argv.into_iter().skip(2);
    while let Some(arg) = iter.next() {
        let text = arg.to_str().unwrap_or("");
        let path = if text == "--config" {
            match iter.next() {
                Some(p) => p,
                None => return Err(CliError::Usage("--config needs a file path".into())),
            }
        } else if let Some(p) = text.strip_prefix("--config=") {
            OsString::from(p)
        } else {
            rest.push(arg);
            continue;
        };
        let path = Path::new(&path);
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        from_files.extend(parse_config(&text, path)?);
    }
    head.extend(from_files);
    head.extend(rest);
    Ok(head)
}
