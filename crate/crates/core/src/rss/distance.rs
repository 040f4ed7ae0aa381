use super::{RssError, RssParams};

/// Zero-velocity tolerance for the lateral stop predicate (m/s).
pub const V_EPS: f64 = 0.01;

fn finite(values: &[f64]) -> Result<(), RssError> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(RssError::NonFinite(*v)),
        None => Ok(()),
    }
}

/// Minimal longitudinal gap for a rear car at `v_rear` behind a front car
/// at `v_front`: the rear car accelerates for ρ, then brakes at the minimum
/// rate while the front car brakes at the maximum rate.
pub fn lon_safe_distance(v_rear: f64, v_front: f64, p: &RssParams) -> Result<f64, RssError> {
    finite(&[v_rear, v_front])?;
    let vr = v_rear.max(0.0);
    let vf = v_front.max(0.0);
    let v_rho = vr + p.rho * p.a_lon_max_acc;
    let d = vr * p.rho + 0.5 * p.a_lon_max_acc * p.rho * p.rho + v_rho * v_rho / (2.0 * p.a_lon_min_br)
        - vf * vf / (2.0 * p.a_lon_max_br);
    Ok(d.max(0.0))
}

/// Minimal lateral gap between a left car and a right car. Velocities are
/// signed toward the right. Each car closes in at the maximum rate for ρ,
/// then brakes its lateral velocity to zero; the braking displacement
/// `v|v|/2a` keeps the direction of motion, so diverging cars only need μ.
pub fn lat_safe_distance(v_left: f64, v_right: f64, p: &RssParams) -> Result<f64, RssError> {
    finite(&[v_left, v_right])?;
    let v1 = v_left + p.rho * p.a_lat_max_acc;
    let v2 = v_right - p.rho * p.a_lat_max_acc;
    let left = (v_left + v1) / 2.0 * p.rho + v1 * v1.abs() / (2.0 * p.a_lat_min_br);
    let right = (v_right + v2) / 2.0 * p.rho + v2 * v2.abs() / (2.0 * p.a_lat_min_br);
    Ok(p.mu + (left - right).max(0.0))
}

/// Lateral velocity with a displacement deadband: zero whenever the
/// position moved less than μ/2 over the trailing ρ window, otherwise the
/// central difference (one-sided at the ends).
pub fn mu_lateral_velocity(y: &[f64], p: &RssParams) -> Result<Vec<f64>, RssError> {
    let n = y.len();
    if n < 2 {
        return Err(RssError::TooShort(n));
    }
    finite(y)?;
    let w = p.rho_steps();
    Ok((0..n)
        .map(|i| {
            if (y[i] - y[i.saturating_sub(w)]).abs() < p.mu / 2.0 {
                return 0.0;
            }
            if i == 0 {
                (y[1] - y[0]) / p.dt
            } else if i == n - 1 {
                (y[i] - y[i - 1]) / p.dt
            } else {
                (y[i + 1] - y[i - 1]) / (2.0 * p.dt)
            }
        })
        .collect())
}
