//! Optional TOML file of defaults. Command-line flags take precedence.

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub format: Option<crate::Format>,
    pub max_iter: Option<usize>,
    pub depth: Option<usize>,
    pub terms: Option<usize>,
    pub m_max: Option<usize>,
    pub lambda_max: Option<usize>,
    pub margin: Option<usize>,
    pub max_bits: Option<u32>,
    pub sequential: Option<bool>,
}

impl Config {
    pub fn load(path: &str) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::usage("--config", format!("{path}: {e}")))?;
        toml::from_str(&text).map_err(|e| CliError::usage("--config", format!("{path}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_parse_and_unknown_keys_fail() {
        let c: Config = toml::from_str("max_iter = 7\nformat = \"csv\"\nsequential = true").unwrap();
        assert_eq!(c.max_iter, Some(7));
        assert_eq!(c.format, Some(crate::Format::Csv));
        assert!(toml::from_str::<Config>("bogus = 1").is_err());
    }
}
