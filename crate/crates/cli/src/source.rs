//! Datum sources: JSON files and `gen:` pseudo-paths naming built-in
//! constructors.

use moddata::constructors::{radford_datum, semion_datum, trivial_datum};
use moddata::ModularDatum;

use crate::error::{CliError, Result};
use crate::json::parse_datum;

/// Resolves `gen:semion`, `gen:trivial`, `gen:radford:N`, `gen:radford:N:E`
/// and products such as `gen:semion*radford:3`; anything else is read as a
/// JSON file.
pub fn load_datum(spec: &str) -> Result<ModularDatum> {
    match spec.strip_prefix("gen:") {
        Some(rest) => generate(rest),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|source| CliError::Io {
                path: spec.to_owned(),
                source,
            })?;
            parse_datum(&text)
        }
    }
}

fn generate(spec: &str) -> Result<ModularDatum> {
    let mut factors = spec.split('*').map(generate_one);
    let first = factors.next().expect("split yields at least one part")?;
    factors.try_fold(first, |acc, next| Ok(acc.kronecker_product(&next?)?))
}

fn generate_one(name: &str) -> Result<ModularDatum> {
    let parts: Vec<&str> = name.split(':').collect();
    let int = |s: &str| -> Result<i64> {
        s.parse()
            .map_err(|_| CliError::Usage(format!("expected an integer in gen:{}, found {:?}", name, s)))
    };
    match parts.as_slice() {
        ["semion"] => Ok(semion_datum()),
        ["trivial"] => Ok(trivial_datum()),
        ["radford", n] => radford(int(n)?, 1),
        ["radford", n, e] => radford(int(n)?, int(e)?),
        _ => Err(CliError::Usage(format!(
            "unknown generator gen:{} (expected semion, trivial, radford:N[:E], or a '*' product)",
            name
        ))),
    }
}

fn radford(n: i64, e: i64) -> Result<ModularDatum> {
    let n = u64::try_from(n).map_err(|_| CliError::Usage("radford order must be positive".into()))?;
    radford_datum(n, e).map_err(|err| CliError::Usage(format!("gen:radford:{}:{}: {}", n, e, err)))
}
