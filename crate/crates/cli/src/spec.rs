//! Parsing of the textual specs accepted by the flags.

use std::fs;
use std::path::Path;

use qwalk_core::structures::{CircleMeasure, FiniteGroup, GroupState};

use crate::error::CliError;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(Path::new(path)).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn number<T: std::str::FromStr>(flag: &str, s: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(flag, format!("`{s}` is not a valid number")))
}

/// `cyclic:s`, `dihedral:n` or `cayley:path`.
pub fn parse_group(s: &str) -> Result<FiniteGroup, CliError> {
    let (kind, arg) = s.split_once(':').ok_or_else(|| {
        CliError::usage("--group", "expected cyclic:s, dihedral:n or cayley:path")
    })?;
    let g = match kind {
        "cyclic" => FiniteGroup::cyclic(number("--group", arg)?)?,
        "dihedral" => FiniteGroup::dihedral(number("--group", arg)?)?,
        "cayley" => FiniteGroup::parse(&read(arg)?)?,
        _ => {
            return Err(CliError::usage(
                "--group",
                format!("unknown group kind `{kind}`"),
            ))
        }
    };
    Ok(g)
}

/// `trivial`, `haar`, `character:j` or a path to a file of `re im` lines.
pub fn parse_psi(s: &str, group: &FiniteGroup) -> Result<GroupState, CliError> {
    Ok(match s {
        "trivial" => GroupState::trivial(group),
        "haar" => GroupState::haar(group),
        _ => match s.strip_prefix("character:") {
            Some(j) => GroupState::cyclic_character(group, number("--psi", j)?)?,
            None => GroupState::parse(group, &read(s)?)?,
        },
    })
}

/// `haar`, `delta:θ`, `atoms:path` or `porod` (which uses `n`).
pub fn parse_nu(s: &str, n: u64) -> Result<CircleMeasure, CliError> {
    if s == "haar" {
        return Ok(CircleMeasure::Haar);
    }
    if s == "porod" {
        return Ok(CircleMeasure::porod(n)?);
    }
    match s.split_once(':') {
        Some(("delta", a)) => Ok(CircleMeasure::delta(number("--nu", a)?)),
        Some(("atoms", path)) => Ok(CircleMeasure::parse_atoms(&read(path)?)?),
        _ => Err(CliError::usage(
            "--nu",
            format!("expected haar, delta:θ, atoms:path or porod, got `{s}`"),
        )),
    }
}

/// `a:b:step`, inclusive of `b` up to rounding.
pub fn parse_range(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(CliError::usage(
            flag,
            format!("expected a:b:step, got `{s}`"),
        ));
    };
    let (a, b, step): (f64, f64, f64) = (number(flag, a)?, number(flag, b)?, number(flag, step)?);
    if !(a.is_finite() && b.is_finite() && step > 0.0 && step.is_finite()) {
        return Err(CliError::usage(
            flag,
            "bounds must be finite and the step positive",
        ));
    }
    if b < a {
        return Ok(Vec::new());
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a + i as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("--c-range", "-5:5:1").unwrap().len(), 11);
        assert_eq!(parse_range("--c-range", "0:1:0.1").unwrap().len(), 11);
        assert!(parse_range("--c-range", "1:0:1").unwrap().is_empty());
        assert!(parse_range("--c-range", "0:1").is_err());
        assert!(parse_range("--c-range", "0:1:0").is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(parse_group("cyclic:3").unwrap().order(), 3);
        assert_eq!(parse_group("dihedral:4").unwrap().order(), 8);
        assert!(parse_group("free:2").is_err());
        let g = parse_group("cyclic:4").unwrap();
        assert!(parse_psi("character:1", &g).is_ok());
        assert!(matches!(
            parse_nu("delta:0.5", 10).unwrap(),
            CircleMeasure::Atomic(_)
        ));
        assert!(parse_nu("uniform", 10).is_err());
    }
}
