use std::fmt::Write;

use fibsnow_core::turtle::{bounding_box, LatticePath};

pub const DEFAULT_SIZE: u32 = 1024;
pub const DEFAULT_STROKE_WIDTH: f64 = 1.0;
const MARGIN: f64 = 0.05;

/// Renders a lattice path as a single SVG polyline on a square canvas of
/// `size` pixels with a 5% margin. The y-axis is flipped so that lattice
/// "up" is screen "up".
pub fn render_svg(path: &LatticePath, size: u32, stroke_width: f64) -> String {
    let b = bounding_box(path);
    let extent = b.width().max(b.height()).max(1) as f64;
    let size_f = size as f64;
    let inner = size_f * (1.0 - 2.0 * MARGIN);
    let scale = inner / extent;
    // centre the drawing within the inner square
    let off_x = size_f * MARGIN + (inner - b.width() as f64 * scale) / 2.0;
    let off_y = size_f * MARGIN + (inner - b.height() as f64 * scale) / 2.0;

    let mut points = String::with_capacity(path.vertices().len() * 16);
    for (i, p) in path.vertices().iter().enumerate() {
        let x = off_x + (p.x - b.min.x) as f64 * scale;
        let y = size_f - (off_y + (p.y - b.min.y) as f64 * scale);
        if i > 0 {
            points.push(' ');
        }
        write!(points, "{x:.3},{y:.3}").unwrap();
    }

    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n",
            "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\" stroke-linejoin=\"miter\" points=\"{points}\"/>\n",
            "</svg>\n"
        ),
        size = size,
        sw = stroke_width,
        points = points
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use fibsnow_core::turtle::trace;

    #[test]
    fn square_fills_the_margin_box() {
        let p = trace(&"LLL".parse().unwrap());
        let svg = render_svg(&p, 100, 2.0);
        assert!(svg.contains(
            "points=\"5.000,95.000 95.000,95.000 95.000,5.000 5.000,5.000 5.000,95.000\""
        ));
        assert!(svg.contains("stroke-width=\"2\""));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
