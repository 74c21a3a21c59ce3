//! `key = value` config files, merged into the command line.
//!
//! Each entry becomes `--key=value` right after the subcommand name, so flags
//! given on the command line come later and win.

use std::fs;
use std::path::Path;

/// Parses config text into `--key=value` arguments.
pub fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut args = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected `key = value`", n + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
            return Err(format!("config line {}: invalid key `{key}`", n + 1));
        }
        if key == "config" {
            return Err(format!("config line {}: nested config files are not supported", n + 1));
        }
        args.push(format!("--{key}={value}"));
    }
    Ok(args)
}

/// Removes `--config PATH` / `--config=PATH` from `argv` and splices the file's
/// entries in after the subcommand.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            path = Some(it.next().ok_or("--config requires a path")?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| format!("cannot read config file {path}: {e}"))?;
    let extra = parse(&text)?;
    // program name, then the subcommand; file entries go right after it
    let at = rest.len().min(2);
    rest.splice(at..at, extra);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_entries_and_comments() {
        let text = "# viewport\nwidth = 64\n\n  height=32  # inline\nc-char = -1,-1\n";
        assert_eq!(
            parse(text).unwrap(),
            strings(&["--width=64", "--height=32", "--c-char=-1,-1"])
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("width 64").is_err());
        assert!(parse(" = 3").is_err());
        assert!(parse("--width = 3").is_err());
        assert!(parse("config = other.conf").is_err());
    }

    #[test]
    fn expand_without_config_is_identity() {
        let argv = strings(&["hypdyn", "julia", "--c-char", "-1,-1"]);
        assert_eq!(expand(argv.clone()).unwrap(), argv);
    }

    #[test]
    fn expand_splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "width = 8\nheight = 8\n").unwrap();
        let p = path.to_str().unwrap();
        let argv = strings(&["hypdyn", "--config", p, "mandelbrot", "--width", "16"]);
        assert_eq!(
            expand(argv).unwrap(),
            strings(&["hypdyn", "mandelbrot", "--width=8", "--height=8", "--width", "16"])
        );
        let argv = strings(&["hypdyn", "mandelbrot", &format!("--config={p}")]);
        assert_eq!(
            expand(argv).unwrap(),
            strings(&["hypdyn", "mandelbrot", "--width=8", "--height=8"])
        );
    }

    #[test]
    fn missing_file_is_an_error() {
        let argv = strings(&["hypdyn", "--config", "/nonexistent/x.conf", "classify"]);
        assert!(expand(argv).is_err());
        assert!(expand(strings(&["hypdyn", "classify", "--config"])).is_err());
    }
}
