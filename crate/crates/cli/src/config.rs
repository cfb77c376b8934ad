//! Flat `key = value` scenario files.
//!
//! Several pairs may share a line (`n_s=4 n_r=4 n_d=4`); a value runs up to
//! the next `key=` or the end of the line, so multi-word values such as
//! `cov_Rr = exponential 0.5` need no quoting. `#` starts a comment.
//!
//! | key | value |
//! |-----|-------|
//! | `n_s`, `n_r`, `n_d` | positive integer (required) |
//! | `rho`, `alpha` | real (required) |
//! | `cov_Ts`, `cov_Rr`, `cov_Tr`, `cov_Rd` | `identity`, `exponential R`, `file PATH` |
//! | `precoder`, `forwarder` | `identity`, `file PATH` |
//! | `s2_variant` | `consistent` (default) or `printed` |
//!
//! Relative paths resolve against the directory of the config file.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use afrelay_core::model::build_covariance;
use afrelay_core::{BeamformerSpec, ChannelConfig, CovarianceSpec, S2Variant};
use regex::Regex;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Key {
    Ns,
    Nr,
    Nd,
    Rho,
    Alpha,
    CovTs,
    CovRr,
    CovTr,
    CovRd,
    Precoder,
    Forwarder,
    S2Variant,
}

const KEYS: [(&str, Key); 12] = [
    ("n_s", Key::Ns),
    ("n_r", Key::Nr),
    ("n_d", Key::Nd),
    ("rho", Key::Rho),
    ("alpha", Key::Alpha),
    ("cov_ts", Key::CovTs),
    ("cov_rr", Key::CovRr),
    ("cov_tr", Key::CovTr),
    ("cov_rd", Key::CovRd),
    ("precoder", Key::Precoder),
    ("forwarder", Key::Forwarder),
    ("s2_variant", Key::S2Variant),
];

fn key_pattern() -> &'static Regex {
    static PATTERN: OnceLock<Regex> = OnceLock::new();
    PATTERN.get_or_init(|| Regex::new(r"([A-Za-z_][A-Za-z0-9_]*)\s*=").expect("valid regex"))
}

/// One `key = value` occurrence with its 1-based line.
#[derive(Debug)]
struct Entry {
    line: usize,
    name: String,
    key: Key,
    value: String,
}

fn tokenize(text: &str) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let matches: Vec<_> = key_pattern().captures_iter(content).collect();
        let Some(first) = matches.first() else {
            return Err(CliError::config(
                line,
                format!("expected key=value, found `{}`", content.trim()),
            ));
        };
        let lead = &content[..first.get(0).map_or(0, |m| m.start())];
        if !lead.trim().is_empty() {
            return Err(CliError::config(
                line,
                format!("expected key=value, found `{}`", lead.trim()),
            ));
        }
        for (i, caps) in matches.iter().enumerate() {
            let whole = caps.get(0).expect("match");
            let name = caps[1].to_string();
            let end = matches
                .get(i + 1)
                .map_or(content.len(), |next| next.get(0).expect("match").start());
            let value = content[whole.end()..end].trim().to_string();
            let key = KEYS
                .iter()
                .find(|(k, _)| k.eq_ignore_ascii_case(&name))
                .map(|&(_, key)| key)
                .ok_or_else(|| CliError::config(line, format!("unknown key `{name}`")))?;
            if value.is_empty() {
                return Err(CliError::config(line, format!("`{name}` has no value")));
            }
            entries.push(Entry {
                line,
                name,
                key,
                value,
            });
        }
    }
    Ok(entries)
}

fn parse_count(e: &Entry) -> Result<usize> {
    let n: usize = e.value.parse().map_err(|_| {
        CliError::config(
            e.line,
            format!("{} must be a positive integer, got `{}`", e.name, e.value),
        )
    })?;
    if n == 0 {
        return Err(CliError::config(e.line, format!("{} must be at least 1", e.name)));
    }
    Ok(n)
}

fn parse_real(e: &Entry) -> Result<f64> {
    let x: f64 = e.value.parse().map_err(|_| {
        CliError::config(
            e.line,
            format!("{} must be a real number, got `{}`", e.name, e.value),
        )
    })?;
    if !x.is_finite() {
        return Err(CliError::config(e.line, format!("{} must be finite", e.name)));
    }
    Ok(x)
}

/// Splits `word rest` into the keyword and its (possibly empty) argument.
fn split_keyword(value: &str) -> (String, &str) {
    let mut parts = value.splitn(2, char::is_whitespace);
    let word = parts.next().unwrap_or("").to_ascii_lowercase();
    (word, parts.next().unwrap_or("").trim())
}

fn parse_path(e: &Entry, arg: &str, base: &Path) -> Result<PathBuf> {
    if arg.is_empty() {
        return Err(CliError::config(e.line, format!("{} needs a file path", e.name)));
    }
    let path = PathBuf::from(arg);
    Ok(if path.is_absolute() { path } else { base.join(path) })
}

fn parse_covariance(e: &Entry, base: &Path) -> Result<CovarianceSpec> {
    let (word, arg) = split_keyword(&e.value);
    match word.as_str() {
        "identity" if arg.is_empty() => Ok(CovarianceSpec::Identity),
        "exponential" | "exp" => {
            let r: f64 = arg.parse().map_err(|_| {
                CliError::config(
                    e.line,
                    format!("{}: exponential needs a coefficient, got `{arg}`", e.name),
                )
            })?;
            if !(0.0..1.0).contains(&r) {
                return Err(CliError::config(
                    e.line,
                    format!("{}: exponential coefficient {r} outside [0, 1)", e.name),
                ));
            }
            Ok(CovarianceSpec::Exponential(r))
        }
        "file" | "explicit" => Ok(CovarianceSpec::Explicit(parse_path(e, arg, base)?)),
        _ => Err(CliError::config(
            e.line,
            format!(
                "{}: expected identity, exponential R or file PATH, got `{}`",
                e.name, e.value
            ),
        )),
    }
}

fn parse_beamformer(e: &Entry, base: &Path) -> Result<BeamformerSpec> {
    let (word, arg) = split_keyword(&e.value);
    match word.as_str() {
        "identity" if arg.is_empty() => Ok(BeamformerSpec::Identity),
        "file" | "explicit" => Ok(BeamformerSpec::Explicit(parse_path(e, arg, base)?)),
        _ => Err(CliError::config(
            e.line,
            format!("{}: expected identity or file PATH, got `{}`", e.name, e.value),
        )),
    }
}

/// Parses and fully validates a scenario; relative file paths resolve
/// against the working directory.
pub fn parse_config(text: &str) -> Result<ChannelConfig> {
    parse_config_in(text, Path::new(""))
}

/// [`parse_config`] with relative paths resolved against `base`.
pub fn parse_config_in(text: &str, base: &Path) -> Result<ChannelConfig> {
    let entries = tokenize(text)?;
    for (i, e) in entries.iter().enumerate() {
        if let Some(prev) = entries[..i].iter().find(|p| p.key == e.key) {
            return Err(CliError::config(
                e.line,
                format!("duplicate key `{}` (first set on line {})", e.name, prev.line),
            ));
        }
    }
    let find = |key: Key| entries.iter().find(|e| e.key == key);
    let last_line = text.lines().count().max(1);
    let required = |key: Key, name: &str| {
        find(key).ok_or_else(|| CliError::config(last_line, format!("missing required key `{name}`")))
    };

    let n_s = parse_count(required(Key::Ns, "n_s")?)?;
    let n_r = parse_count(required(Key::Nr, "n_r")?)?;
    let n_d = parse_count(required(Key::Nd, "n_d")?)?;
    let rho_entry = required(Key::Rho, "rho")?;
    let rho = parse_real(rho_entry)?;
    if rho < 0.0 {
        return Err(CliError::config(
            rho_entry.line,
            format!("rho must be >= 0, got {rho}"),
        ));
    }
    let alpha_entry = required(Key::Alpha, "alpha")?;
    let alpha = parse_real(alpha_entry)?;
    if alpha <= 0.0 {
        return Err(CliError::config(
            alpha_entry.line,
            format!("alpha must be > 0, got {alpha}"),
        ));
    }

    let mut config = ChannelConfig::new(n_s, n_r, n_d, rho, alpha)?;
    for (key, dim) in [
        (Key::CovTs, n_s),
        (Key::CovRr, n_r),
        (Key::CovTr, n_r),
        (Key::CovRd, n_d),
    ] {
        let Some(e) = find(key) else { continue };
        let spec = parse_covariance(e, base)?;
        build_covariance(&spec, dim).map_err(|err| CliError::config(e.line, format!("{}: {err}", e.name)))?;
        match key {
            Key::CovTs => config.cov_ts = spec,
            Key::CovRr => config.cov_rr = spec,
            Key::CovTr => config.cov_tr = spec,
            _ => config.cov_rd = spec,
        }
    }
    for (key, dim) in [(Key::Precoder, n_s), (Key::Forwarder, n_r)] {
        let Some(e) = find(key) else { continue };
        let spec = parse_beamformer(e, base)?;
        spec.resolve(dim)
            .map_err(|err| CliError::config(e.line, format!("{}: {err}", e.name)))?;
        if key == Key::Precoder {
            config.precoder = spec;
        } else {
            config.forwarder = spec;
        }
    }
    if let Some(e) = find(Key::S2Variant) {
        config.s2_variant = e
            .value
            .parse::<S2Variant>()
            .map_err(|err| CliError::config(e.line, err.to_string()))?;
    }

    // Folding can still fail (power normalization, definiteness); blame the
    // beamformer line when there is one.
    if let Err(err) = config.covariances() {
        let line = find(Key::Forwarder)
            .or_else(|| find(Key::Precoder))
            .map_or(last_line, |e| e.line);
        return Err(CliError::config(line, err.to_string()));
    }
    Ok(config)
}

/// Reads a scenario file; relative paths inside resolve against its
/// directory.
pub fn load_config(path: &Path) -> Result<ChannelConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    parse_config_in(&text, base)
}
