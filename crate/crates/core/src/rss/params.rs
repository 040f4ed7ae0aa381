use serde::{Deserialize, Serialize};

use super::RssError;

/// RSS response-time and acceleration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RssParams {
    /// Response time ρ (s).
    pub rho: f64,
    /// Lateral fluctuation margin μ (m).
    pub mu: f64,
    /// Sampling period (s).
    pub dt: f64,
    pub a_lon_min_br: f64,
    pub a_lon_max_acc: f64,
    pub a_lon_max_br: f64,
    pub a_lat_min_br: f64,
    pub a_lat_max_acc: f64,
}

impl Default for RssParams {
    fn default() -> Self {
        RssParams {
            rho: 0.5,
            mu: 0.4,
            dt: 0.01,
            a_lon_min_br: 4.0,
            a_lon_max_acc: 4.5,
            a_lon_max_br: 2.5,
            a_lat_min_br: 3.0,
            a_lat_max_acc: 3.0,
        }
    }
}

impl RssParams {
    pub fn validate(&self) -> Result<(), RssError> {
        let fields = [
            ("rho", self.rho),
            ("mu", self.mu),
            ("dt", self.dt),
            ("a_lon_min_br", self.a_lon_min_br),
            ("a_lon_max_acc", self.a_lon_max_acc),
            ("a_lon_max_br", self.a_lon_max_br),
            ("a_lat_min_br", self.a_lat_min_br),
            ("a_lat_max_acc", self.a_lat_max_acc),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(RssError::InvalidParams(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let k = self.rho / self.dt;
        if (k - k.round()).abs() > 1e-9 * k.max(1.0) {
            return Err(RssError::InvalidParams(format!("rho = {} is not a multiple of dt = {}", self.rho, self.dt)));
        }
        Ok(())
    }

    /// ρ in samples.
    pub fn rho_steps(&self) -> usize {
        (self.rho / self.dt).round() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = RssParams::default();
        p.validate().unwrap();
        assert_eq!(p.rho_steps(), 50);
    }

    #[test]
    fn rho_off_grid_is_rejected() {
        let p = RssParams { rho: 0.505, ..RssParams::default() };
        assert!(p.validate().is_err());
        let p = RssParams { dt: 0.1, rho: 0.3, ..RssParams::default() };
        p.validate().unwrap();
    }

    #[test]
    fn nonpositive_values_are_rejected() {
        assert!(RssParams { mu: 0.0, ..RssParams::default() }.validate().is_err());
        assert!(RssParams { a_lat_min_br: -1.0, ..RssParams::default() }.validate().is_err());
        assert!(RssParams { rho: f64::NAN, ..RssParams::default() }.validate().is_err());
    }

    #[test]
    fn reads_from_toml() {
        let p: RssParams = toml::from_str("rho = 1.0\na_lon_max_acc = 3.5").unwrap();
        assert_eq!(p.rho, 1.0);
        assert_eq!(p.a_lon_max_acc, 3.5);
        assert_eq!(p.mu, 0.4);
        assert!(toml::from_str::<RssParams>("gamma = 1.0").is_err());
    }
}
