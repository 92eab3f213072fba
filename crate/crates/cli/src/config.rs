//! `key = value` config files merged underneath command-line flags.
//!
//! Keys are the long flag names of the chosen subcommand (or the global
//! flags). Boolean flags take `true`/`false`. Lines starting with `#` and
//! blank lines are ignored; a `#` after a value starts a comment too.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::{ArgAction, Command};

#[derive(Debug)]
pub struct ConfigError(pub String);

pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("line {}: expected key = value", i + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(ConfigError(format!("line {}: empty key", i + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn find_arg<'a>(cmd: &'a Command, sub: &'a Command, key: &str) -> Option<&'a clap::Arg> {
    sub.get_arguments()
        .chain(cmd.get_arguments())
        .find(|a| a.get_long() == Some(key))
}

/// Turns config pairs into flag tokens for `subcommand`.
pub fn to_tokens(
    cmd: &Command,
    subcommand: &str,
    pairs: &[(String, String)],
) -> Result<Vec<OsString>, ConfigError> {
    let sub = cmd
        .find_subcommand(subcommand)
        .ok_or_else(|| ConfigError(format!("unknown subcommand {subcommand:?}")))?;
    let mut out = Vec::new();
    for (k, v) in pairs {
        if k == "config" {
            return Err(ConfigError(
                "config files cannot include other config files".into(),
            ));
        }
        let arg = find_arg(cmd, sub, k)
            .ok_or_else(|| ConfigError(format!("unknown key {k:?} for {subcommand}")))?;
        match arg.get_action() {
            ArgAction::SetTrue => match v.as_str() {
                "true" => out.push(format!("--{k}").into()),
                "false" => {}
                _ => return Err(ConfigError(format!("key {k:?} expects true or false"))),
            },
            _ => {
                out.push(format!("--{k}").into());
                out.push(v.into());
            }
        }
    }
    Ok(out)
}

/// Rebuilds argv as `bin <subcommand> <file flags> <original flags>`, so that
/// command-line flags, parsed later, override the file.
pub fn merge(
    cmd: &Command,
    argv: &[OsString],
    subcommand: &str,
    config: &Path,
) -> Result<Vec<OsString>, ConfigError> {
    let text = fs::read_to_string(config)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", config.display())))?;
    let tokens = to_tokens(cmd, subcommand, &parse_pairs(&text)?)?;
    let pos = argv
        .iter()
        .skip(1)
        .position(|a| a == subcommand)
        .map(|p| p + 1)
        .ok_or_else(|| ConfigError("subcommand not found in arguments".into()))?;
    let mut out = vec![argv[0].clone(), argv[pos].clone()];
    out.extend(tokens);
    out.extend(argv[1..pos].iter().cloned());
    out.extend(argv[pos + 1..].iter().cloned());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_and_comments() {
        let p = parse_pairs("# header\nmax = 8 # inline\n\n mode=strict\n").unwrap();
        assert_eq!(
            p,
            vec![("max".into(), "8".into()), ("mode".into(), "strict".into())]
        );
        assert!(parse_pairs("novalue").is_err());
        assert!(parse_pairs(" = 3").is_err());
    }
}
