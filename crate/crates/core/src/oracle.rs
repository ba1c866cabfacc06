//! Exact classical cat map on the `N x N` lattice.
//!
//! Points are integer pairs `(i, j)` with `x = i / N`, `y = j / N`, so the
//! map has no round-off at all.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;

use crate::error::{CatError, Result};
use crate::metrics::CellGrid;

/// Lattice point `(i, j)`: `i` indexes x, `j` indexes y.
pub type Point = (usize, usize);

fn check_point((i, j): Point, n: usize) -> Result<()> {
    if i >= n || j >= n {
        return Err(CatError::PointOutOfRange { i, j, n });
    }
    Ok(())
}

/// `(i, j) -> ((j + 2i) mod N, (j + i) mod N)`.
pub fn cat_step(p: Point, n: usize) -> Result<Point> {
    check_point(p, n)?;
    Ok(step_unchecked(p, n))
}

#[inline]
fn step_unchecked((i, j): Point, n: usize) -> Point {
    ((j + 2 * i) % n, (j + i) % n)
}

/// Inverse of [`cat_step`]: `(i, j) -> ((i - j) mod N, (2j - i) mod N)`.
pub fn cat_step_inverse(p: Point, n: usize) -> Result<Point> {
    check_point(p, n)?;
    let (i, j) = p;
    Ok(((i + n - j) % n, (2 * j + n - i) % n))
}

/// Smallest `t >= 1` with `cat_step^t = identity` on the whole lattice.
pub fn period(n: usize) -> usize {
    // The map is linear, so it suffices to follow the two basis vectors.
    let (mut e1, mut e2) = ((1 % n, 0), (0, 1 % n));
    let mut t = 0;
    loop {
        e1 = step_unchecked(e1, n);
        e2 = step_unchecked(e2, n);
        t += 1;
        if e1 == (1 % n, 0) && e2 == (0, 1 % n) {
            return t;
        }
    }
}

fn check_lattice(n: usize) -> Result<()> {
    if !n.is_power_of_two() || n < 2 {
        return Err(CatError::config(
            "N",
            format!("{n} is not a power of two >= 2"),
        ));
    }
    Ok(())
}

/// Probability weights on the lattice, row-major with `i` major.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeDistribution {
    n: usize,
    weights: Vec<f64>,
}

impl LatticeDistribution {
    /// Uniform weight `1 / N_d` on each distinct point.
    pub fn from_points(n: usize, points: &[Point]) -> Result<Self> {
        check_lattice(n)?;
        if points.is_empty() {
            return Err(CatError::EmptyDistribution);
        }
        for &p in points {
            check_point(p, n)?;
        }
        let mut occupied = vec![false; n * n];
        for &(i, j) in points {
            occupied[i * n + j] = true;
        }
        let count = occupied.iter().filter(|&&o| o).count() as f64;
        let weights = occupied
            .into_iter()
            .map(|o| if o { 1.0 / count } else { 0.0 })
            .collect();
        Ok(Self { n, weights })
    }

    pub fn from_weights(n: usize, weights: Vec<f64>) -> Result<Self> {
        check_lattice(n)?;
        if weights.len() != n * n {
            return Err(CatError::config(
                "weights",
                format!("expected {} entries", n * n),
            ));
        }
        Ok(Self { n, weights })
    }

    pub fn lattice_size(&self) -> usize {
        self.n
    }

    pub fn weight(&self, (i, j): Point) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Transport the weights `t` steps along the map.
    pub fn iterate(&self, t: usize) -> LatticeDistribution {
        let n = self.n;
        let mut cur = self.weights.clone();
        let mut next = vec![0.0; n * n];
        for _ in 0..t {
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = step_unchecked((i, j), n);
                    next[a * n + b] = cur[i * n + j];
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        LatticeDistribution { n, weights: cur }
    }

    /// Sum the weights over `2^n_g x 2^n_g` cells.
    pub fn cells(&self, n_g: usize) -> Result<CellGrid> {
        let n_q = self.n.trailing_zeros() as usize;
        if n_g == 0 || n_g > n_q {
            return Err(CatError::CoarseLevel { n_g, n_q });
        }
        let shift = n_q - n_g;
        let mut grid = CellGrid::zeros(n_g);
        for i in 0..self.n {
            for j in 0..self.n {
                grid.add(i >> shift, j >> shift, self.weight((i, j)));
            }
        }
        Ok(grid)
    }

    /// Grayscale P2 image of the weights, y increasing upwards.
    pub fn to_pgm(&self) -> String {
        crate::pgm::render(self.n, self.n, |col, row| {
            self.weight((col, self.n - 1 - row))
        })
    }
}

/// Alias matching the operation name used by the harness.
pub fn iterate_distribution(dist: &LatticeDistribution, t: usize) -> LatticeDistribution {
    dist.iterate(t)
}

/// Iterate each given start point `t` steps and bin the end points.
pub fn trajectory_cells(starts: &[Point], n: usize, t: usize, n_g: usize) -> Result<CellGrid> {
    check_lattice(n)?;
    if starts.is_empty() {
        return Err(CatError::EmptyDistribution);
    }
    let n_q = n.trailing_zeros() as usize;
    if n_g == 0 || n_g > n_q {
        return Err(CatError::CoarseLevel { n_g, n_q });
    }
    for &p in starts {
        check_point(p, n)?;
    }
    let shift = n_q - n_g;
    let side = 1usize << n_g;
    let bin = |p: Point| {
        let mut q = p;
        for _ in 0..t {
            q = step_unchecked(q, n);
        }
        (q.0 >> shift) * side + (q.1 >> shift)
    };
    let counts = count_bins(starts, side * side, bin);
    let w = 1.0 / starts.len() as f64;
    Ok(CellGrid::from_cells(
        n_g,
        counts.into_iter().map(|c| c as f64 * w).collect(),
    ))
}

#[cfg(feature = "parallel")]
fn count_bins(starts: &[Point], bins: usize, bin: impl Fn(Point) -> usize + Sync) -> Vec<u64> {
    use rayon::prelude::*;
    starts
        .par_iter()
        .fold(
            || vec![0u64; bins],
            |mut acc, &p| {
                acc[bin(p)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

#[cfg(not(feature = "parallel"))]
fn count_bins(starts: &[Point], bins: usize, bin: impl Fn(Point) -> usize) -> Vec<u64> {
    let mut acc = vec![0u64; bins];
    for &p in starts {
        acc[bin(p)] += 1;
    }
    acc
}

/// Monte Carlo estimate of the coarse-grained density: `n_traj` start points
/// drawn uniformly with replacement from `initial`, each iterated `t` steps.
pub fn monte_carlo_cells<R: Rng + ?Sized>(
    initial: &[Point],
    n: usize,
    n_traj: usize,
    t: usize,
    n_g: usize,
    rng: &mut R,
) -> Result<CellGrid> {
    if initial.is_empty() {
        return Err(CatError::EmptyDistribution);
    }
    if n_traj == 0 {
        return Err(CatError::config("n_traj", "must be at least 1"));
    }
    let starts: Vec<Point> = (0..n_traj)
        .map(|_| initial[rng.gen_range(0..initial.len())])
        .collect();
    trajectory_cells(&starts, n, t, n_g)
}

/// Parse a point list: one `i j` pair per line, `#` comments allowed.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CatError::Parse {
            location: format!("line {}", lineno + 1),
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected `i j`, got {line:?}")));
        }
        let parse = |f: &str| f.parse::<usize>().map_err(|e| err(format!("{f:?}: {e}")));
        points.push((parse(fields[0])?, parse(fields[1])?));
    }
    Ok(points)
}

pub fn format_points(points: &[Point]) -> String {
    let mut out = String::new();
    for (i, j) in points {
        writeln!(out, "{i} {j}").expect("write to string");
    }
    out
}

pub fn read_points(path: &Path) -> Result<Vec<Point>> {
    let text = std::fs::read_to_string(path).map_err(|e| CatError::io(path, e))?;
    parse_points(&text).map_err(|e| match e {
        CatError::Parse { location, message } => CatError::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

pub fn write_points(path: &Path, points: &[Point]) -> Result<()> {
    std::fs::write(path, format_points(points)).map_err(|e| CatError::io(path, e))
}
