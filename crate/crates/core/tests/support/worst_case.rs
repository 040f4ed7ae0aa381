//! Safe distances recomputed by integrating the worst-case maneuvers on a
//! fine grid instead of using the closed forms.

use rss_stl::rss::RssParams;

pub const DT: f64 = 0.001;

/// Displacement of a car that applies `a_first` for `t_first` seconds and
/// then decelerates at `a_stop` until its velocity is zero.
fn travel(v0: f64, a_first: f64, t_first: f64, a_stop: f64) -> f64 {
    let mut v = v0;
    let mut x = 0.0;
    let steps = (t_first / DT).round() as usize;
    for _ in 0..steps {
        let v1 = v + a_first * DT;
        x += 0.5 * (v + v1) * DT;
        v = v1;
    }
    while v.abs() > 0.0 {
        let dv = a_stop * DT;
        if v.abs() <= dv {
            // stop inside this step: v / a_stop seconds left at constant decel
            x += 0.5 * v * v.abs() / a_stop;
            break;
        }
        let v1 = v - v.signum() * dv;
        x += 0.5 * (v + v1) * DT;
        v = v1;
    }
    x
}

/// Rear car speeds up for ρ and then brakes at the minimum rate; front car
/// brakes at the maximum rate from the start.
pub fn lon(v_rear: f64, v_front: f64, p: &RssParams) -> f64 {
    let rear = travel(v_rear.max(0.0), p.a_lon_max_acc, p.rho, p.a_lon_min_br);
    let front = travel(v_front.max(0.0), 0.0, 0.0, p.a_lon_max_br);
    (rear - front).max(0.0)
}

/// Both cars push toward each other for ρ, then brake their lateral
/// velocity to zero. Velocities are positive toward the right.
pub fn lat(v_left: f64, v_right: f64, p: &RssParams) -> f64 {
    let left = travel(v_left, p.a_lat_max_acc, p.rho, p.a_lat_min_br);
    let right = travel(v_right, -p.a_lat_max_acc, p.rho, p.a_lat_min_br);
    p.mu + (left - right).max(0.0)
}
