//! Plain (P2) PGM rendering.

use std::fmt::Write as _;

/// Render `value(col, row)` as an ASCII grayscale image, scaled linearly so
/// that the maximum maps to 255. An all-zero image stays black.
pub fn render(width: usize, height: usize, value: impl Fn(usize, usize) -> f64) -> String {
    let mut max = 0.0f64;
    for row in 0..height {
        for col in 0..width {
            max = max.max(value(col, row));
        }
    }
    let mut out = format!("P2\n{width} {height}\n255\n");
    for row in 0..height {
        let line: Vec<String> = (0..width)
            .map(|col| {
                let v = if max > 0.0 {
                    value(col, row) / max * 255.0
                } else {
                    0.0
                };
                (v.round().clamp(0.0, 255.0) as u8).to_string()
            })
            .collect();
        writeln!(out, "{}", line.join(" ")).expect("write to string");
    }
    out
}
