//! Two-dimensional benchmark functions and d-dimensional Rastrigin.
//!
//! Each function comes with its analytic gradient. Where a formula has a
//! kink (`|.|` inside Eggholder and Schaffer N.4, the cone tip of Ackley)
//! the gradient returns the one-sided value or zero on the locus itself.

use std::f64::consts::{E, PI};

pub fn ackley(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let s = (0.5 * (a * a + b * b)).sqrt();
    -20.0 * (-0.2 * s).exp() - (0.5 * ((2.0 * PI * a).cos() + (2.0 * PI * b).cos())).exp()
        + E
        + 20.0
}

pub fn ackley_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let s = (0.5 * (a * a + b * b)).sqrt();
    let c = (0.5 * ((2.0 * PI * a).cos() + (2.0 * PI * b).cos())).exp();
    let radial = if s > 0.0 {
        2.0 * (-0.2 * s).exp() / s
    } else {
        0.0
    };
    vec![
        radial * a + PI * (2.0 * PI * a).sin() * c,
        radial * b + PI * (2.0 * PI * b).sin() * c,
    ]
}

fn beale_terms(x: &[f64]) -> [f64; 3] {
    let (a, b) = (x[0], x[1]);
    [
        1.5 - a + a * b,
        2.25 - a + a * b * b,
        2.625 - a + a * b * b * b,
    ]
}

pub fn beale(x: &[f64]) -> f64 {
    beale_terms(x).iter().map(|t| t * t).sum()
}

pub fn beale_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let [t1, t2, t3] = beale_terms(x);
    vec![
        2.0 * t1 * (b - 1.0) + 2.0 * t2 * (b * b - 1.0) + 2.0 * t3 * (b * b * b - 1.0),
        2.0 * t1 * a + 4.0 * t2 * a * b + 6.0 * t3 * a * b * b,
    ]
}

pub fn booth(x: &[f64]) -> f64 {
    let p = x[0] + 2.0 * x[1] - 7.0;
    let q = 2.0 * x[0] + x[1] - 5.0;
    p * p + q * q
}

pub fn booth_grad(x: &[f64]) -> Vec<f64> {
    let p = x[0] + 2.0 * x[1] - 7.0;
    let q = 2.0 * x[0] + x[1] - 5.0;
    vec![2.0 * p + 4.0 * q, 4.0 * p + 2.0 * q]
}

pub fn easom(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
}

pub fn easom_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let e = (-((a - PI).powi(2) + (b - PI).powi(2))).exp();
    vec![
        e * b.cos() * (a.sin() + 2.0 * (a - PI) * a.cos()),
        e * a.cos() * (b.sin() + 2.0 * (b - PI) * b.cos()),
    ]
}

pub fn eggholder(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -(b + 47.0) * (a / 2.0 + b + 47.0).abs().sqrt().sin() - a * (a - (b + 47.0)).abs().sqrt().sin()
}

/// d sin(sqrt|u|) / du, zero on the kink `u = 0`.
fn sin_sqrt_abs_deriv(u: f64) -> f64 {
    let r = u.abs().sqrt();
    if r == 0.0 {
        0.0
    } else {
        r.cos() * u.signum() / (2.0 * r)
    }
}

pub fn eggholder_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let u = a / 2.0 + b + 47.0;
    let v = a - (b + 47.0);
    let du = sin_sqrt_abs_deriv(u);
    let dv = sin_sqrt_abs_deriv(v);
    vec![
        -(b + 47.0) * du * 0.5 - v.abs().sqrt().sin() - a * dv,
        -u.abs().sqrt().sin() - (b + 47.0) * du + a * dv,
    ]
}

fn goldstein_parts(x: &[f64]) -> (f64, f64, f64, f64, f64, f64) {
    let (a, b) = (x[0], x[1]);
    let s = a + b + 1.0;
    let p = 19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b;
    let t = 2.0 * a - 3.0 * b;
    let q = 18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b;
    (s, p, t, q, 1.0 + s * s * p, 30.0 + t * t * q)
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (.., left, right) = goldstein_parts(x);
    left * right
}

pub fn goldstein_price_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let (s, p, t, q, left, right) = goldstein_parts(x);
    let dp = -14.0 + 6.0 * a + 6.0 * b;
    let dleft = 2.0 * s * p + s * s * dp;
    let dright_a = 4.0 * t * q + t * t * (-32.0 + 24.0 * a - 36.0 * b);
    let dright_b = -6.0 * t * q + t * t * (48.0 - 36.0 * a + 54.0 * b);
    vec![
        dleft * right + left * dright_a,
        dleft * right + left * dright_b,
    ]
}

pub fn levy13(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (3.0 * PI * a).sin().powi(2)
        + (a - 1.0).powi(2) * (1.0 + (3.0 * PI * b).sin().powi(2))
        + (b - 1.0).powi(2) * (1.0 + (2.0 * PI * b).sin().powi(2))
}

pub fn levy13_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    vec![
        3.0 * PI * (6.0 * PI * a).sin() + 2.0 * (a - 1.0) * (1.0 + (3.0 * PI * b).sin().powi(2)),
        (a - 1.0).powi(2) * 3.0 * PI * (6.0 * PI * b).sin()
            + 2.0 * (b - 1.0) * (1.0 + (2.0 * PI * b).sin().powi(2))
            + (b - 1.0).powi(2) * 2.0 * PI * (4.0 * PI * b).sin(),
    ]
}

pub fn matyas(x: &[f64]) -> f64 {
    0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1]
}

pub fn matyas_grad(x: &[f64]) -> Vec<f64> {
    vec![0.52 * x[0] - 0.48 * x[1], 0.52 * x[1] - 0.48 * x[0]]
}

pub fn mccormick(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + b).sin() + (a - b).powi(2) - 1.5 * a + 2.5 * b + 1.0
}

pub fn mccormick_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let c = (a + b).cos();
    vec![c + 2.0 * (a - b) - 1.5, c - 2.0 * (a - b) + 2.5]
}

/// `10 d + sum(x_n^2 - 10 cos(2 pi x_n))`.
pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

pub fn rastrigin_grad(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|v| 2.0 * v + 20.0 * PI * (2.0 * PI * v).sin())
        .collect()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    100.0 * (x[1] - x[0] * x[0]).powi(2) + (x[0] - 1.0).powi(2)
}

pub fn rosenbrock_grad(x: &[f64]) -> Vec<f64> {
    vec![
        -400.0 * x[0] * (x[1] - x[0] * x[0]) + 2.0 * (x[0] - 1.0),
        200.0 * (x[1] - x[0] * x[0]),
    ]
}

fn schaffer_denominator(x: &[f64]) -> f64 {
    1.0 + 0.001 * (x[0] * x[0] + x[1] * x[1])
}

pub fn schaffer2(x: &[f64]) -> f64 {
    let w = x[0] * x[0] - x[1] * x[1];
    0.5 + (w.sin().powi(2) - 0.5) / schaffer_denominator(x).powi(2)
}

pub fn schaffer2_grad(x: &[f64]) -> Vec<f64> {
    let w = x[0] * x[0] - x[1] * x[1];
    let num = w.sin().powi(2) - 0.5;
    let den = schaffer_denominator(x);
    let dn_dw = (2.0 * w).sin();
    let scale = -0.004 * num / den.powi(3);
    vec![
        dn_dw * 2.0 * x[0] / (den * den) + scale * x[0],
        -dn_dw * 2.0 * x[1] / (den * den) + scale * x[1],
    ]
}

pub fn schaffer4(x: &[f64]) -> f64 {
    let w = (x[0] * x[0] - x[1] * x[1]).abs();
    0.5 + (w.sin().cos().powi(2) - 0.5) / schaffer_denominator(x).powi(2)
}

pub fn schaffer4_grad(x: &[f64]) -> Vec<f64> {
    let w = x[0] * x[0] - x[1] * x[1];
    let aw = w.abs();
    let num = aw.sin().cos().powi(2) - 0.5;
    let den = schaffer_denominator(x);
    let dn_dw = if w == 0.0 {
        0.0
    } else {
        -(2.0 * aw.sin()).sin() * aw.cos() * w.signum()
    };
    let scale = -0.004 * num / den.powi(3);
    vec![
        dn_dw * 2.0 * x[0] / (den * den) + scale * x[0],
        -dn_dw * 2.0 * x[1] / (den * den) + scale * x[1],
    ]
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn sphere_grad(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| 2.0 * v).collect()
}

pub fn three_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    2.0 * a * a - 1.05 * a.powi(4) + a.powi(6) / 6.0 + a * b + b * b
}

pub fn three_hump_camel_grad(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    vec![4.0 * a - 4.2 * a.powi(3) + a.powi(5) + b, a + 2.0 * b]
}
