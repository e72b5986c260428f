//! `key=value` config files, spliced into the argument list ahead of the
//! user's own flags. With `args_override_self` the later flag wins.

use std::ffi::OsString;
use std::path::Path;

use clap::CommandFactory;

use crate::cli::Cli;
use crate::error::{CliError, Result};

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::InvalidArgs(format!("config line {}: expected key=value", n + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::InvalidArgs(format!("config line {}: empty key", n + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Splits `--config FILE` / `--config=FILE` out of `args`.
fn take_config(args: &mut Vec<OsString>) -> Result<Option<OsString>> {
    let Some(pos) = args
        .iter()
        .position(|a| a == "--config" || a.to_string_lossy().starts_with("--config="))
    else {
        return Ok(None);
    };
    let flag = args.remove(pos);
    if let Some(v) = flag.to_string_lossy().strip_prefix("--config=") {
        return Ok(Some(v.into()));
    }
    if pos < args.len() {
        Ok(Some(args.remove(pos)))
    } else {
        Err(CliError::InvalidArgs("--config needs a file".into()))
    }
}

/// Returns `args` with the config file's entries spliced in.
pub fn expand_args(mut args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = take_config(&mut args)? else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let entries = parse_config(&text)?;

    let root = Cli::command();
    let global: Vec<&str> = root
        .get_arguments()
        .filter(|a| a.is_global_set())
        .filter_map(|a| a.get_long())
        .collect();
    let sub_pos = args
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, a)| root.find_subcommand(a.to_string_lossy().as_ref()).is_some())
        .map(|(i, _)| i);
    let sub_longs: Vec<String> = sub_pos
        .and_then(|i| root.find_subcommand(args[i].to_string_lossy().as_ref()))
        .map(|s| {
            s.get_arguments()
                .filter_map(|a| a.get_long())
                .map(String::from)
                .collect()
        })
        .unwrap_or_default();

    let mut front = Vec::new();
    let mut after_sub = Vec::new();
    for (key, value) in entries {
        let flag = OsString::from(format!("--{key}={value}"));
        if global.contains(&key.as_str()) && key != "config" {
            front.push(flag);
        } else if sub_longs.contains(&key) {
            after_sub.push(flag);
        } else {
            return Err(CliError::InvalidArgs(format!(
                "config key `{key}` is not an option of this command"
            )));
        }
    }
    let mut out = Vec::with_capacity(args.len() + front.len() + after_sub.len());
    out.push(args[0].clone());
    out.extend(front);
    match sub_pos {
        Some(i) => {
            out.extend_from_slice(&args[1..=i]);
            out.extend(after_sub);
            out.extend_from_slice(&args[i + 1..]);
        }
        None => out.extend_from_slice(&args[1..]),
    }
    Ok(out)
}
