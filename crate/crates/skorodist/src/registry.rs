//! Named interpolation functions, usable as path fills and as
//! betweennesses.

use skorodist_core::betweenness::{Coordinates, Interpolation};

pub const NAMES: [&str; 3] = ["linear", "geometric", "smoothstep"];

fn lerp(x: &[f64], z: &[f64], s: f64) -> Vec<f64> {
    x.iter().zip(z).map(|(a, b)| a + s * (b - a)).collect()
}

/// The interpolation registered under `name`.
pub fn interpolation<P: Coordinates + 'static>(name: &str) -> Option<Interpolation<P>> {
    let f: fn(&[f64], &[f64], f64) -> Vec<f64> = match name {
        "linear" => lerp,
        // Coordinatewise x^(1-p) z^p; needs positive coordinates.
        "geometric" => |x, z, p| x.iter().zip(z).map(|(a, b)| a.powf(1.0 - p) * b.powf(p)).collect(),
        "smoothstep" => |x, z, p| lerp(x, z, p * p * (3.0 - 2.0 * p)),
        _ => return None,
    };
    Some(Interpolation::new(name, move |x: &P, z: &P, p| {
        P::from_coords(&f(x.coords(), z.coords(), p))
    }))
}

/// Whether the interpolation `name` is defined at a point.
pub fn admits(name: &str, coords: &[f64]) -> bool {
    match name {
        "geometric" => coords.iter().all(|&c| c > 0.0),
        _ => true,
    }
}
