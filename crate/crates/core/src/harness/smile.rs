use crate::error::{CatError, Result};
use crate::oracle::Point;

/// A stylized smiling face on the `2^n_q` lattice.
///
/// The mouth is every lattice point within distance 1 of the lower half of
/// the circle of radius `N/4` around `(N/2, N/2)`. The eyes are two blocks
/// 3 points wide and `N/16` tall centered at `(N/2 +- N/8, 5N/8)`.
pub fn build_initial_smile(n_q: usize) -> Result<Vec<Point>> {
    if !(4..=15).contains(&n_q) {
        return Err(CatError::LatticeTooSmall(n_q));
    }
    let n = 1usize << n_q;
    let c = (n / 2) as f64;
    let r = (n / 4) as f64;
    let mut points = Vec::new();
    for i in 0..n {
        for j in 0..=n / 2 {
            let (dx, dy) = (i as f64 - c, j as f64 - c);
            if ((dx * dx + dy * dy).sqrt() - r).abs() <= 1.0 {
                points.push((i, j));
            }
        }
    }
    let eye_h = n / 16;
    let eye_y = 5 * n / 8;
    for eye_x in [n / 2 - n / 8, n / 2 + n / 8] {
        for i in eye_x - 1..=eye_x + 1 {
            for j in eye_y - eye_h / 2..eye_y - eye_h / 2 + eye_h {
                points.push((i, j));
            }
        }
    }
    points.sort_unstable();
    points.dedup();
    Ok(points)
}
