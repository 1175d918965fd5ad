//! Small helpers shared by the SVG writers. Coordinates are printed with two
//! decimals so output is byte-stable.

pub(crate) fn svg_header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

pub(crate) fn svg_footer() -> String {
    "</svg>\n".to_string()
}

/// Green at relative PST 1, red at 0.
pub(crate) fn sensitivity_color(value: f64) -> String {
    let v = if value.is_finite() { value.clamp(0.0, 1.0) } else { 0.0 };
    let r = (220.0 * (1.0 - v)).round() as u8;
    let g = (160.0 * v).round() as u8;
    format!("#{r:02x}{g:02x}00")
}

/// Stroke width, 1 at relative PST 1 up to 6 at 0.
pub(crate) fn sensitivity_width(value: f64) -> f64 {
    let v = if value.is_finite() { value.clamp(0.0, 1.0) } else { 0.0 };
    1.0 + 5.0 * (1.0 - v)
}

pub(crate) fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Qualitative palette for curve plots.
pub(crate) const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
