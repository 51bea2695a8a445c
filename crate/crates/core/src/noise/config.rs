use serde::{Deserialize, Serialize};

use crate::daqc::{Mode, DEFAULT_DELTA_T};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 2021;

/// Coherent-noise widths and run parameters.
///
/// All widths are multiplied by `error_scale` before use. `tqgn` is a
/// standard deviation unless `tqgn_is_std` is false, in which case it is
/// read as a variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseConfig {
    /// Half-width of the uniform single-qubit generator scale around 1.
    pub sqgn: f64,
    /// Width of the Gaussian phase error on `pi/4` ZZ entanglers.
    pub tqgn: f64,
    pub tqgn_is_std: bool,
    /// Gaussian width of analog duration errors, stepwise protocol.
    pub abn_s: f64,
    /// Gaussian width of analog duration errors, banged protocol.
    pub abn_b: f64,
    pub error_scale: f64,
    pub seed: u64,
    /// Banged rotation window.
    pub delta_t: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            sqgn: 0.0005,
            tqgn: 0.2,
            tqgn_is_std: true,
            abn_s: 0.02,
            abn_b: 0.01,
            error_scale: 1.0,
            seed: DEFAULT_SEED,
            delta_t: DEFAULT_DELTA_T,
        }
    }
}

impl NoiseConfig {
    /// Default run parameters with every noise width set to zero.
    pub fn ideal() -> Self {
        Self {
            sqgn: 0.0,
            tqgn: 0.0,
            abn_s: 0.0,
            abn_b: 0.0,
            ..Self::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let widths = [
            ("sqgn", self.sqgn),
            ("tqgn", self.tqgn),
            ("abn_s", self.abn_s),
            ("abn_b", self.abn_b),
            ("error_scale", self.error_scale),
        ];
        for (name, v) in widths {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if !(self.delta_t > 0.0 && self.delta_t.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "delta_t must be positive, got {}",
                self.delta_t
            )));
        }
        Ok(())
    }

    pub fn with_error_scale(&self, scale: f64) -> Self {
        Self {
            error_scale: scale,
            ..self.clone()
        }
    }

    pub fn sqg_half_width(&self) -> f64 {
        self.sqgn * self.error_scale
    }

    pub fn tqg_sigma(&self) -> f64 {
        let base = if self.tqgn_is_std {
            self.tqgn
        } else {
            self.tqgn.sqrt()
        };
        base * self.error_scale
    }

    pub fn abn_sigma(&self, mode: Mode) -> f64 {
        let base = match mode {
            Mode::Stepwise => self.abn_s,
            Mode::Banged => self.abn_b,
        };
        base * self.error_scale
    }

    /// True when every effective width is zero, so runs are deterministic.
    pub fn is_noiseless(&self) -> bool {
        self.sqg_half_width() == 0.0
            && self.tqg_sigma() == 0.0
            && self.abn_sigma(Mode::Stepwise) == 0.0
            && self.abn_sigma(Mode::Banged) == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = NoiseConfig::default();
        assert_eq!(c.abn_s, 2.0 * c.abn_b);
        assert_eq!((c.sqgn, c.tqgn), (0.0005, 0.2));
        assert!(!c.is_noiseless());
        assert!(NoiseConfig::ideal().is_noiseless());
        assert!(c.with_error_scale(0.0).is_noiseless());
    }

    #[test]
    fn json_parsing() {
        let c = NoiseConfig::from_json(r#"{"sqgn": 0.001, "seed": 7}"#).unwrap();
        assert_eq!(c.sqgn, 0.001);
        assert_eq!(c.seed, 7);
        assert_eq!(c.tqgn, 0.2);
        assert!(NoiseConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert!(NoiseConfig::from_json(r#"{"tqgn": -0.1}"#).is_err());
        assert!(NoiseConfig::from_json(r#"{"delta_t": 0}"#).is_err());
        let back = NoiseConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn variance_reading() {
        let c = NoiseConfig {
            tqgn: 0.04,
            tqgn_is_std: false,
            error_scale: 2.0,
            ..NoiseConfig::default()
        };
        assert!((c.tqg_sigma() - 0.4).abs() < 1e-15);
    }
}
