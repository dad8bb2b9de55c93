//! Parsing of per-dimension boundary flags.
//!
//! A spec is either `open` or `periodic:LO:HI`. `--dim` gives one spec per
//! dimension in order; `--boundary` applies one spec to every dimension, and
//! `--all-periodic LO:HI` is shorthand for `--boundary periodic:LO:HI`.

use pbc_dbscan::{Boundary, Domain};

use crate::error::{CliError, Result};

pub fn parse_spec(spec: &str) -> Result<Boundary> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("open") {
        return Ok(Boundary::Open);
    }
    let rest = spec.strip_prefix("periodic:").ok_or_else(|| {
        CliError::usage(format!(
            "invalid boundary {spec:?}: expected open or periodic:LO:HI"
        ))
    })?;
    parse_range(rest).map_err(|e| CliError::usage(format!("invalid boundary {spec:?}: {e}")))
}

pub fn parse_range(range: &str) -> Result<Boundary> {
    let (lo, hi) = range
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("expected LO:HI, got {range:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("cannot parse bound {s:?}")))
    };
    Ok(Boundary::periodic(parse(lo)?, parse(hi)?)?)
}

/// Which boundary flags were given on the command line.
#[derive(Debug, Clone, Default)]
pub struct BoundaryFlags {
    pub dims: Vec<String>,
    pub boundary: Option<String>,
    pub all_periodic: Option<String>,
}

impl BoundaryFlags {
    /// Dimension fixed by the flags, if they fix one.
    pub fn explicit_dim(&self) -> Option<usize> {
        (!self.dims.is_empty()).then_some(self.dims.len())
    }

    /// Builds the domain for data of dimension `dim`. With no flags every
    /// dimension is open.
    pub fn domain(&self, dim: usize) -> Result<Domain> {
        let given = [
            !self.dims.is_empty(),
            self.boundary.is_some(),
            self.all_periodic.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(CliError::usage(
                "use only one of --dim, --boundary and --all-periodic",
            ));
        }
        let dims = if !self.dims.is_empty() {
            if self.dims.len() != dim {
                return Err(CliError::usage(format!(
                    "dimension mismatch: {} --dim flags given but the data has {dim} columns",
                    self.dims.len()
                )));
            }
            self.dims
                .iter()
                .map(|s| parse_spec(s))
                .collect::<Result<Vec<_>>>()?
        } else if let Some(spec) = &self.boundary {
            vec![parse_spec(spec)?; dim]
        } else if let Some(range) = &self.all_periodic {
            vec![parse_range(range)?; dim]
        } else {
            vec![Boundary::Open; dim]
        };
        Ok(Domain::new(dims)?)
    }
}

/// Renders a domain back into `--dim` flag syntax.
pub fn describe(domain: &Domain) -> String {
    domain
        .boundaries()
        .iter()
        .map(|b| match *b {
            Boundary::Open => "--dim open".to_string(),
            Boundary::Periodic { lower, upper } => format!("--dim periodic:{lower}:{upper}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_spec("open").unwrap(), Boundary::Open);
        assert_eq!(
            parse_spec("periodic:-1:2.5").unwrap(),
            Boundary::Periodic {
                lower: -1.0,
                upper: 2.5
            }
        );
        assert!(parse_spec("periodic:1:1").is_err());
        assert!(parse_spec("periodic:0").is_err());
        assert!(parse_spec("closed").is_err());
    }

    #[test]
    fn per_dimension_flags() {
        let flags = BoundaryFlags {
            dims: vec!["periodic:0:1".into(), "open".into()],
            ..Default::default()
        };
        let d = flags.domain(2).unwrap();
        assert!(d.boundaries()[0].is_periodic() && !d.boundaries()[1].is_periodic());
        assert!(flags
            .domain(3)
            .unwrap_err()
            .to_string()
            .contains("dimension mismatch"));
        assert_eq!(describe(&d), "--dim periodic:0:1 --dim open");
    }

    #[test]
    fn shorthand_and_defaults() {
        let all = BoundaryFlags {
            all_periodic: Some("0:1".into()),
            ..Default::default()
        };
        assert!(all
            .domain(3)
            .unwrap()
            .boundaries()
            .iter()
            .all(Boundary::is_periodic));
        assert!(BoundaryFlags::default().domain(2).unwrap().is_all_open());
        let conflicting = BoundaryFlags {
            boundary: Some("open".into()),
            all_periodic: Some("0:1".into()),
            ..Default::default()
        };
        assert!(conflicting.domain(1).is_err());
    }
}
