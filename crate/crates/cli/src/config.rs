//! Scoring configuration resolution.
//!
//! Precedence: built-in defaults, then the optional JSON config file, then
//! the `--frameworks` flag. A config file that lists any framework replaces
//! the default all-enabled set with exactly the listed entries (minus those
//! marked `"enabled": false`); hyperparameters apply to listed frameworks
//! whether or not they stay enabled. The flag overrides only the enabled
//! set and leaves hyperparameters alone.

use std::collections::BTreeMap;
use std::path::Path;

use legibility_core::frameworks::{FrameworkId, ScoreConfig};
use serde::Deserialize;

use crate::error::HarnessError;
use crate::formats::read_json;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub frameworks: BTreeMap<String, FrameworkEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkEntry {
    #[serde(default = "enabled_default")]
    pub enabled: bool,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

fn enabled_default() -> bool {
    true
}

fn valid_names() -> String {
    let names: Vec<&str> = FrameworkId::ALL.iter().map(|id| id.name()).collect();
    names.join(", ")
}

fn apply_params(
    config: &mut ScoreConfig,
    id: FrameworkId,
    params: &BTreeMap<String, f64>,
    path: &Path,
) -> Result<(), HarnessError> {
    let unknown = |param: &str| {
        HarnessError::format(
            path,
            format!("framework '{}' has no parameter '{param}'", id.name()),
        )
    };
    match id {
        FrameworkId::BoddenPoint | FrameworkId::BoddenVelocity => {
            let target = if id == FrameworkId::BoddenPoint {
                &mut config.bodden_point
            } else {
                &mut config.bodden_velocity
            };
            for (param, &value) in params {
                match param.as_str() {
                    "alpha" => target.alpha = value,
                    "beta" => target.beta = value,
                    "epsilon" => target.epsilon = value,
                    other => return Err(unknown(other)),
                }
            }
        }
        FrameworkId::Dragan | FrameworkId::Nikolaidis => {
            if let Some(param) = params.keys().next() {
                return Err(unknown(param));
            }
        }
        FrameworkId::Busch => {
            for (param, &value) in params {
                match param.as_str() {
                    "beta" => config.busch.beta = value,
                    "epsilon" => config.busch.epsilon = value,
                    other => return Err(unknown(other)),
                }
            }
        }
        FrameworkId::ZhaoFastApp | FrameworkId::ZhaoEffDist => {
            let target = if id == FrameworkId::ZhaoFastApp {
                &mut config.zhao_fastapp
            } else {
                &mut config.zhao_effdist
            };
            for (param, &value) in params {
                match param.as_str() {
                    "r0" => target.r0 = value,
                    "epsilon_threshold" => target.epsilon_threshold = value,
                    "beta" => target.beta = value,
                    other => return Err(unknown(other)),
                }
            }
        }
        FrameworkId::BiedObsL | FrameworkId::BiedObsP | FrameworkId::BiedObsD => {
            let target = match id {
                FrameworkId::BiedObsL => &mut config.bied_obs_l,
                FrameworkId::BiedObsP => &mut config.bied_obs_p,
                _ => &mut config.bied_obs_d,
            };
            for (param, &value) in params {
                match param.as_str() {
                    "beta" => target.beta = value,
                    "epsilon" => target.epsilon = value,
                    "sigma" => target.sigma = value,
                    other => return Err(unknown(other)),
                }
            }
        }
    }
    Ok(())
}

fn apply_file(config: &mut ScoreConfig, file: &ConfigFile, path: &Path) -> Result<(), HarnessError> {
    if file.frameworks.is_empty() {
        return Ok(());
    }
    let mut enabled = Vec::new();
    for (name, entry) in &file.frameworks {
        let id = FrameworkId::parse(name).ok_or_else(|| {
            HarnessError::format(
                path,
                format!("unknown framework '{name}'; valid names: {}", valid_names()),
            )
        })?;
        if entry.enabled {
            enabled.push(id);
        }
        apply_params(config, id, &entry.params, path)?;
    }
    enabled.sort_unstable();
    config.enabled = enabled;
    Ok(())
}

/// Parses a comma-separated framework list into a sorted, deduplicated
/// enabled set.
pub fn parse_framework_list(list: &str) -> Result<Vec<FrameworkId>, HarnessError> {
    let mut enabled = Vec::new();
    for raw in list.split(',') {
        let name = raw.trim();
        let id = FrameworkId::parse(name).ok_or_else(|| {
            HarnessError::Invalid(format!(
                "unknown framework '{name}'; valid names: {}",
                valid_names()
            ))
        })?;
        enabled.push(id);
    }
    enabled.sort_unstable();
    enabled.dedup();
    Ok(enabled)
}

/// Builds the effective [`ScoreConfig`] from the optional config file and
/// the optional `--frameworks` override.
pub fn resolve_config(
    config_path: Option<&Path>,
    frameworks_flag: Option<&str>,
) -> Result<ScoreConfig, HarnessError> {
    let mut config = ScoreConfig::default();
    if let Some(path) = config_path {
        let file: ConfigFile = read_json(path)?;
        apply_file(&mut config, &file, path)?;
    }
    if let Some(list) = frameworks_flag {
        config.enabled = parse_framework_list(list)?;
    }
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write_config(text: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.json");
        fs::write(&path, text).unwrap();
        (dir, path)
    }

    #[test]
    fn no_inputs_gives_the_default_config() {
        let config = resolve_config(None, None).unwrap();
        assert_eq!(config, ScoreConfig::default());
    }

    #[test]
    fn listing_frameworks_replaces_the_enabled_set() {
        let (_dir, path) = write_config(
            r#"{"frameworks": {"dragan": {}, "busch": {"enabled": false}, "bied_obs_p": {}}}"#,
        );
        let config = resolve_config(Some(&path), None).unwrap();
        assert_eq!(config.enabled, vec![FrameworkId::Dragan, FrameworkId::BiedObsP]);
        assert_eq!(config.busch, legibility_core::frameworks::BuschParams::default());
    }

    #[test]
    fn params_reach_the_right_framework() {
        let (_dir, path) = write_config(
            r#"{"frameworks": {
                "bodden_point": {"params": {"alpha": 2.0, "epsilon": 0.0}},
                "bodden_velocity": {},
                "zhao_effdist": {"params": {"r0": 3.0, "epsilon_threshold": 0.1}},
                "bied_obs_d": {"params": {"sigma": 4.0}}
            }}"#,
        );
        let config = resolve_config(Some(&path), None).unwrap();
        assert_eq!(config.bodden_point.alpha, 2.0);
        assert_eq!(config.bodden_point.epsilon, 0.0);
        assert_eq!(config.bodden_velocity.alpha, 1.0);
        assert_eq!(config.zhao_effdist.r0, 3.0);
        assert_eq!(config.zhao_effdist.epsilon_threshold, 0.1);
        assert_eq!(config.zhao_fastapp.r0, 10.0);
        assert_eq!(config.bied_obs_d.sigma, 4.0);
        assert_eq!(
            config.enabled,
            vec![
                FrameworkId::BoddenPoint,
                FrameworkId::BoddenVelocity,
                FrameworkId::ZhaoEffDist,
                FrameworkId::BiedObsD,
            ]
        );
    }

    #[test]
    fn unknown_names_and_params_are_rejected() {
        let (_dir, path) = write_config(r#"{"frameworks": {"draagan": {}}}"#);
        let error = resolve_config(Some(&path), None).unwrap_err();
        assert!(error.to_string().contains("draagan"), "{error}");

        let (_dir, path) = write_config(
            r#"{"frameworks": {"busch": {"params": {"gamma": 1.0}}}}"#,
        );
        let error = resolve_config(Some(&path), None).unwrap_err();
        assert!(error.to_string().contains("gamma"), "{error}");

        let (_dir, path) = write_config(
            r#"{"frameworks": {"dragan": {"params": {"beta": 1.0}}}}"#,
        );
        let error = resolve_config(Some(&path), None).unwrap_err();
        assert!(error.to_string().contains("no parameter"), "{error}");
    }

    #[test]
    fn flag_overrides_the_enabled_set_but_keeps_params() {
        let (_dir, path) = write_config(
            r#"{"frameworks": {"busch": {"params": {"beta": 5.0}}}}"#,
        );
        let config =
            resolve_config(Some(&path), Some("nikolaidis, dragan, nikolaidis")).unwrap();
        assert_eq!(config.enabled, vec![FrameworkId::Dragan, FrameworkId::Nikolaidis]);
        assert_eq!(config.busch.beta, 5.0);

        let error = resolve_config(None, Some("dragan,unheard_of")).unwrap_err();
        assert!(error.to_string().contains("unheard_of"), "{error}");
    }

    #[test]
    fn invalid_hyperparameters_fail_validation() {
        let (_dir, path) = write_config(
            r#"{"frameworks": {"bied_obs_d": {"params": {"sigma": -1.0}}}}"#,
        );
        let error = resolve_config(Some(&path), None).unwrap_err();
        assert!(error.to_string().contains("sigma"), "{error}");
    }
}
