use std::fmt::Write;

use rss_stl::sim::{SimConfig, WorldTrajectory};

const COLORS: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];
const WIDTH: f64 = 1200.0;
const MARGIN: f64 = 40.0;
/// Pixels per meter across the road; the road is stretched vertically so
/// lane changes stay visible over a few hundred meters.
const Y_SCALE: f64 = 20.0;

/// Top view of the road with every vehicle's path and its outline every
/// second.
pub fn lane_diagram(world: &WorldTrajectory, cfg: &SimConfig) -> String {
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in world.tracks() {
        for &x in &t.x {
            x_lo = x_lo.min(x);
            x_hi = x_hi.max(x);
        }
    }
    x_lo -= cfg.vehicle.length;
    x_hi += cfg.vehicle.length;
    let sx = (WIDTH - 2.0 * MARGIN) / (x_hi - x_lo).max(1.0);
    let half = cfg.road.half_width();
    let height = 2.0 * half * Y_SCALE + 2.0 * MARGIN + 20.0;
    let px = |x: f64| MARGIN + (x - x_lo) * sx;
    // north up: larger y (left) is drawn higher
    let py = |y: f64| MARGIN + (half - y) * Y_SCALE;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#eeeeee"/>"##, px(x_lo), py(half), px(x_hi) - px(x_lo), 2.0 * half * Y_SCALE);
    for k in 0..=cfg.road.num_lanes {
        let y = -half + k as f64 * cfg.road.lane_width;
        let dash = if k == 0 || k == cfg.road.num_lanes { "" } else { r#" stroke-dasharray="8 6""# };
        let _ = writeln!(s, r##"<line x1="{}" y1="{2}" x2="{}" y2="{2}" stroke="#888888"{dash}/>"##, px(x_lo), px(x_hi), py(y));
    }
    let every = (1.0 / world.dt()).round().max(1.0) as usize;
    for (k, t) in world.tracks().iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = t.x.iter().zip(&t.y).map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        for i in (0..t.len()).step_by(every) {
            let (w, h) = (cfg.vehicle.length * sx, cfg.vehicle.width * Y_SCALE);
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{w:.2}" height="{h:.2}" fill="{color}" fill-opacity="0.25" stroke="{color}"/>"#,
                px(t.x[i]) - w / 2.0,
                py(t.y[i]) - h / 2.0
            );
        }
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" fill="{color}">{}</text>"#, px(t.x[0]), py(t.y[0]) - 12.0, t.name);
    }
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{:.2}">x from {x_lo:.1} m to {x_hi:.1} m, outlines every 1 s</text>"#, height - 8.0);
    s.push_str("</svg>\n");
    s
}
