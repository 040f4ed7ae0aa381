//! Hand-built margin traces for the RSS formula.

use rss_stl::rss::{
    A_LAT_MAX_ACC, A_LAT_MIN_BR, A_LON_MAX_ACC, A_LON_MIN_BR, RssParams, S_LAT, S_LON, V_EPS, V_LAT_NEG, V_LAT_STOP,
};
use rss_stl::stl::Trace;

/// Margins for a stationary lateral situation with the given longitudinal
/// gap margin and ego longitudinal acceleration per sample.
pub fn margins(s_lat: f64, s_lon: &[f64], a_lon: &[f64], p: &RssParams) -> Trace {
    let n = s_lon.len();
    assert_eq!(a_lon.len(), n);
    Trace::with_channels(
        p.dt,
        [
            (S_LON, s_lon.to_vec()),
            (S_LAT, vec![s_lat; n]),
            (A_LON_MAX_ACC, a_lon.iter().map(|a| p.a_lon_max_acc - a).collect()),
            (A_LON_MIN_BR, a_lon.iter().map(|a| -a - p.a_lon_min_br).collect()),
            (A_LAT_MAX_ACC, vec![p.a_lat_max_acc; n]),
            (A_LAT_MIN_BR, vec![-p.a_lat_min_br; n]),
            (V_LAT_STOP, vec![V_EPS; n]),
            (V_LAT_NEG, vec![V_EPS; n]),
            ("dx_a1", vec![30.0; n]),
            ("dy_a1", vec![1.7; n]),
            ("dx_a2", vec![30.0; n]),
            ("dy_a2", vec![8.7; n]),
        ],
    )
    .unwrap()
}

/// The ego sits laterally too close to a neighbour (S_lat = -3). The
/// longitudinal gap turns unsafe after the first sample while the ego keeps
/// accelerating at 6 m/s² through the hesitation window, then brakes at
/// 5 m/s².
pub fn over_acceleration(p: &RssParams) -> Trace {
    let n = 100;
    let rho = p.rho_steps();
    let s_lon: Vec<f64> = (0..n).map(|i| if i == 0 { 2.0 } else { -2.0 }).collect();
    let a_lon: Vec<f64> = (0..n).map(|i| if i <= rho { 6.0 } else { -5.0 }).collect();
    margins(-3.0, &s_lon, &a_lon, p)
}
