//! Lennard-Jones cluster energy in reduced units.
//!
//! Positions are flattened as `[x0, y0, z0, x1, y1, z1, ...]`. Coincident
//! particles make the energy `+inf` and the gradient undefined.

/// Total pair energy `4 * sum_{i<j} (r^-12 - r^-6)`.
pub fn lj_energy(positions: &[f64]) -> f64 {
    debug_assert_eq!(positions.len() % 3, 0);
    let m = positions.len() / 3;
    let mut terms = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let r2 = dist2(positions, i, j);
            if r2 == 0.0 {
                return f64::INFINITY;
            }
            let inv6 = (1.0 / r2).powi(3);
            terms.push(inv6 * inv6 - inv6);
        }
    }
    // Summing in sorted order makes the energy independent of particle labels.
    terms.sort_unstable_by(f64::total_cmp);
    4.0 * terms.iter().sum::<f64>()
}

/// Analytic gradient, `None` if two particles coincide.
pub fn lj_gradient(positions: &[f64]) -> Option<Vec<f64>> {
    let m = positions.len() / 3;
    let mut grad = vec![0.0; positions.len()];
    for i in 0..m {
        for j in i + 1..m {
            let r2 = dist2(positions, i, j);
            if r2 == 0.0 {
                return None;
            }
            let inv2 = 1.0 / r2;
            let inv6 = inv2 * inv2 * inv2;
            // 24 (-2 r^-14 + r^-8)
            let c = 24.0 * inv2 * inv6 * (1.0 - 2.0 * inv6);
            for k in 0..3 {
                let d = positions[3 * i + k] - positions[3 * j + k];
                grad[3 * i + k] += c * d;
                grad[3 * j + k] -= c * d;
            }
        }
    }
    Some(grad)
}

fn dist2(p: &[f64], i: usize, j: usize) -> f64 {
    (0..3).map(|k| (p[3 * i + k] - p[3 * j + k]).powi(2)).sum()
}

/// Pair distance at the bottom of the well, `2^(1/6)`.
pub fn pair_minimum_distance() -> f64 {
    2f64.powf(1.0 / 6.0)
}

/// Equilateral triangle with side `2^(1/6)`, centred at the origin.
pub fn triangle() -> Vec<f64> {
    let a = pair_minimum_distance();
    let h = a * 3f64.sqrt() / 2.0;
    vec![
        -a / 2.0,
        -h / 3.0,
        0.0, //
        a / 2.0,
        -h / 3.0,
        0.0, //
        0.0,
        2.0 * h / 3.0,
        0.0,
    ]
}

/// Regular tetrahedron with edge `2^(1/6)`, centred at the origin.
pub fn tetrahedron() -> Vec<f64> {
    // Alternate cube corners have edge s * sqrt(2).
    let s = pair_minimum_distance() / (2.0 * 2f64.sqrt());
    vec![
        s, s, s, //
        s, -s, -s, //
        -s, s, -s, //
        -s, -s, s,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_at_unit_distance_is_zero() {
        assert_eq!(lj_energy(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn pair_at_well_bottom() {
        let r = pair_minimum_distance();
        let p = [0.0, 0.0, 0.0, r, 0.0, 0.0];
        assert!((lj_energy(&p) + 1.0).abs() < 1e-12);
        assert!(lj_gradient(&p).unwrap().iter().all(|g| g.abs() < 1e-10));
    }

    #[test]
    fn triangle_and_tetrahedron() {
        assert!((lj_energy(&triangle()) + 3.0).abs() < 1e-9);
        assert!((lj_energy(&tetrahedron()) + 6.0).abs() < 1e-9);
        assert!(lj_gradient(&tetrahedron())
            .unwrap()
            .iter()
            .all(|g| g.abs() < 1e-8));
    }

    #[test]
    fn coincident_particles_are_singular() {
        let p = [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0];
        assert_eq!(lj_energy(&p), f64::INFINITY);
        assert!(lj_gradient(&p).is_none());
    }
}
