//! Walker moves: value-dependent jump scale and the Gaussian displacement.

use crate::problem::{BoxDomain, Sense};
use crate::rng::RngStream;

/// Perturbation scale for a walker with scaled value `phi`. When
/// minimizing, `phi` = 0 gives 1e-5 and `phi` = 1 gives 1e-1. When
/// maximizing (with `phi` scaled on the objective itself), the roles flip.
pub fn jump_scale(phi: f64, sense: Sense) -> f64 {
    match sense {
        Sense::Minimize => 10f64.powf(-(5.0 - 4.0 * phi)),
        Sense::Maximize => 10f64.powf(-(1.0 + 4.0 * phi)),
    }
}

/// Displaces every coordinate by `L[n] * N(0, delta)`, halving `delta` and
/// redrawing the whole vector until the candidate lies in the domain.
pub fn perturb_position(
    x: &[f64],
    delta: f64,
    domain: &BoxDomain,
    rng: &mut RngStream,
) -> Vec<f64> {
    debug_assert!(domain.contains(x));
    let mut delta = delta;
    let mut candidate = Vec::with_capacity(x.len());
    while delta > 0.0 {
        candidate.clear();
        for (n, xn) in x.iter().enumerate() {
            candidate.push(xn + domain.length(n) * delta * rng.standard_normal());
        }
        if domain.contains(&candidate) {
            return candidate;
        }
        delta *= 0.5;
    }
    // Underflow: the distribution has collapsed onto the incumbent.
    x.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jump_scale_endpoints() {
        assert!((jump_scale(0.0, Sense::Minimize) - 1e-5).abs() < 1e-20);
        assert!((jump_scale(1.0, Sense::Minimize) - 1e-1).abs() < 1e-16);
        assert!((jump_scale(0.0, Sense::Maximize) - 1e-1).abs() < 1e-16);
        assert!((jump_scale(1.0, Sense::Maximize) - 1e-5).abs() < 1e-20);
    }

    #[test]
    fn displacement_std_matches_length_times_delta() {
        let d = BoxDomain::cube(-5.0, 5.0, 2).unwrap();
        let mut rng = RngStream::new(17);
        let steps: Vec<f64> = (0..20_000)
            .map(|_| perturb_position(&[0.0, 0.0], 1e-5, &d, &mut rng)[0])
            .collect();
        let std = (steps.iter().map(|s| s * s).sum::<f64>() / steps.len() as f64).sqrt();
        assert!((std - 1e-4).abs() < 3e-6, "std {std}");
    }

    #[test]
    fn corner_walker_stays_inside() {
        let d = BoxDomain::cube(-1.0, 1.0, 3).unwrap();
        let mut rng = RngStream::new(2);
        for _ in 0..200 {
            let p = perturb_position(&[1.0, -1.0, 1.0], 0.1, &d, &mut rng);
            assert!(d.contains(&p));
        }
    }

    #[test]
    fn seeded_perturbation_replays() {
        let d = BoxDomain::cube(-1.0, 1.0, 4).unwrap();
        let a = perturb_position(&[0.1; 4], 0.05, &d, &mut RngStream::new(8));
        let b = perturb_position(&[0.1; 4], 0.05, &d, &mut RngStream::new(8));
        assert_eq!(a, b);
    }
}
