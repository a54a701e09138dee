//! Exact spectral differential operators and Poisson inverses in the mixed
//! sine/cosine basis.
//!
//! Differentiation acts mode-wise: a cosine mode l maps to −πl times the sine
//! mode l (and vice versa with +πl), flipping the axis parity. The composition
//! rules make div∘curl and curl∘grad vanish identically in the discrete
//! calculus, and the Poisson inverses divide by the eigenvalue −π²(l²+m²+n²).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{
    curl_component_signature, current_component_signature, Parity, ParitySignature, ScalarField3,
    VectorField3, ALL_EVEN, ALL_ODD,
};
use crate::transform::{Spectrum3, Transformer};

/// Mode-wise derivative along `axis`; the output parity flips on that axis.
///
/// The cosine mode n−1 maps to the sine mode n−1, which vanishes at every
/// grid node and is dropped (stored as the structural zero slot).
pub fn differentiate_spectrum(spec: &Spectrum3, axis: usize) -> Spectrum3 {
    let n = spec.n();
    let sign = match spec.parity()[axis] {
        Parity::Even => -1.0,
        Parity::Odd => 1.0,
    };
    let mut parity = spec.parity();
    parity[axis] = parity[axis].flipped();
    let mut out = Spectrum3::zeros(n, parity);
    let factors: Vec<f64> = (0..n).map(|l| sign * PI * l as f64).collect();
    for k in 0..n {
        for m in 0..n {
            for l in 0..n {
                let mode = [l, m, k][axis];
                if mode == 0 || mode == n - 1 {
                    continue;
                }
                *out.at_mut(l, m, k) = factors[mode] * spec.at(l, m, k);
            }
        }
    }
    out
}

/// Spectral gradient of an all-even field; component a lands in the
/// current-type signature (odd on its own axis).
pub fn gradient(tf: &mut Transformer, f: &ScalarField3) -> Result<VectorField3> {
    if f.parity() != ALL_EVEN {
        return Err(Error::ParityMismatch(format!(
            "gradient expects an all-even field, got {:?}",
            f.parity()
        )));
    }
    let spec = tf.forward(f);
    let comps: Vec<ScalarField3> = (0..3)
        .map(|a| tf.inverse(&differentiate_spectrum(&spec, a)))
        .collect();
    let [cx, cy, cz]: [ScalarField3; 3] = comps.try_into().unwrap();
    VectorField3::new(cx, cy, cz)
}

/// Checks that a set of derivative terms agree in parity; terms that are
/// identically zero (e.g. derivatives of constants) are parity-neutral.
fn combine_terms(
    tf: &mut Transformer,
    terms: Vec<(Spectrum3, f64)>,
    fallback: ParitySignature,
) -> Result<ScalarField3> {
    let n = terms[0].0.n();
    let scale: f64 = terms
        .iter()
        .map(|(s, _)| s.coeffs().iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .fold(0.0, f64::max);
    let tol = 1e-14 * scale.max(1e-300);
    let mut parity: Option<ParitySignature> = None;
    for (spec, _) in &terms {
        let nonzero = spec.coeffs().iter().any(|v| v.abs() > tol);
        if !nonzero {
            continue;
        }
        match parity {
            None => parity = Some(spec.parity()),
            Some(p) if p == spec.parity() => {}
            Some(p) => {
                return Err(Error::ParityMismatch(format!(
                    "inconsistent parity signature: derivative terms land in {:?} and {:?}",
                    p,
                    spec.parity()
                )))
            }
        }
    }
    let parity = parity.unwrap_or(fallback);
    let mut acc = Spectrum3::zeros(n, parity);
    for (spec, weight) in &terms {
        if spec.parity() == parity {
            for (a, b) in acc.coeffs_mut().iter_mut().zip(spec.coeffs()) {
                *a += weight * b;
            }
        }
        // terms with a different parity are identically zero here
    }
    Ok(tf.inverse(&acc))
}

/// Spectral curl. Accepts any consistent component signature (current-type
/// and curl-type fields map into each other).
pub fn curl(tf: &mut Transformer, v: &VectorField3) -> Result<VectorField3> {
    let specs: Vec<Spectrum3> = v.components().iter().map(|c| tf.forward(c)).collect();
    let mut comps = Vec::with_capacity(3);
    for a in 0..3 {
        let b = (a + 1) % 3;
        let c = (a + 2) % 3;
        let term1 = differentiate_spectrum(&specs[c], b); // ∂_b v_c
        let term2 = differentiate_spectrum(&specs[b], c); // ∂_c v_b
        comps.push(combine_terms(
            tf,
            vec![(term1, 1.0), (term2, -1.0)],
            curl_component_signature(a),
        )?);
    }
    let [cx, cy, cz]: [ScalarField3; 3] = comps.try_into().unwrap();
    VectorField3::new(cx, cy, cz)
}

/// Spectral divergence.
pub fn divergence(tf: &mut Transformer, v: &VectorField3) -> Result<ScalarField3> {
    let terms: Vec<(Spectrum3, f64)> = (0..3)
        .map(|a| (differentiate_spectrum(&tf.forward(v.component(a)), a), 1.0))
        .collect();
    let fallback = if v.has_signature(curl_component_signature) {
        ALL_ODD
    } else {
        ALL_EVEN
    };
    combine_terms(tf, terms, fallback)
}

/// Solves Δu = rhs with u = 0 on the boundary for an all-odd right-hand side.
pub fn poisson_dirichlet(tf: &mut Transformer, rhs: &ScalarField3) -> Result<ScalarField3> {
    if rhs.parity() != ALL_ODD {
        return Err(Error::ParityMismatch(format!(
            "poisson_dirichlet expects an all-odd field, got {:?}",
            rhs.parity()
        )));
    }
    let mut spec = tf.forward(rhs);
    divide_by_eigenvalue(&mut spec)?;
    Ok(tf.inverse(&spec))
}

/// Solves Δu = rhs component-wise for a current-type right-hand side. The
/// zero-eigenvalue mode cannot occur because component a has l_a ≥ 1 on its
/// odd axis; a non-zero coefficient there is an internal-consistency error.
pub fn poisson_mixed(tf: &mut Transformer, rhs: &VectorField3) -> Result<VectorField3> {
    if !rhs.has_signature(current_component_signature) {
        return Err(Error::ParityMismatch(
            "poisson_mixed expects the current-type parity signature".into(),
        ));
    }
    let mut comps = Vec::with_capacity(3);
    for a in 0..3 {
        let mut spec = tf.forward(rhs.component(a));
        divide_by_eigenvalue(&mut spec).map_err(|_| {
            Error::SpectralConsistency(format!(
                "component {a} carries a non-zero coefficient on the zero-eigenvalue mode"
            ))
        })?;
        comps.push(tf.inverse(&spec));
    }
    let [cx, cy, cz]: [ScalarField3; 3] = comps.try_into().unwrap();
    VectorField3::new(cx, cy, cz)
}

fn divide_by_eigenvalue(spec: &mut Spectrum3) -> Result<()> {
    let n = spec.n();
    let scale = spec.coeffs().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for k in 0..n {
        for m in 0..n {
            for l in 0..n {
                let c = spec.at(l, m, k);
                if l == 0 && m == 0 && k == 0 {
                    if c.abs() > 1e-13 * scale.max(1e-300) {
                        return Err(Error::SpectralConsistency(
                            "zero-eigenvalue mode has a non-zero coefficient".into(),
                        ));
                    }
                    *spec.at_mut(0, 0, 0) = 0.0;
                    continue;
                }
                let eig = -PI * PI * (l * l + m * m + k * k) as f64;
                *spec.at_mut(l, m, k) = c / eig;
            }
        }
    }
    Ok(())
}

/// Projects a curl-type field onto its divergence-free part:
/// v ← v − ∇Δ⁻¹(∇·v), carried out entirely in mode space.
pub fn leray_project(tf: &mut Transformer, v: &VectorField3) -> Result<VectorField3> {
    if !v.has_signature(curl_component_signature) {
        return Err(Error::ParityMismatch(
            "leray_project expects the curl-type parity signature".into(),
        ));
    }
    let mut specs: Vec<Spectrum3> = v.components().iter().map(|c| tf.forward(c)).collect();
    let n = v.n();
    let mut div = Spectrum3::zeros(n, ALL_ODD);
    for (a, spec) in specs.iter().enumerate() {
        let d = differentiate_spectrum(spec, a);
        for (acc, term) in div.coeffs_mut().iter_mut().zip(d.coeffs()) {
            *acc += term;
        }
    }
    divide_by_eigenvalue(&mut div)?;
    for (a, spec) in specs.iter_mut().enumerate() {
        let grad_a = differentiate_spectrum(&div, a);
        for (c, g) in spec.coeffs_mut().iter_mut().zip(grad_a.coeffs()) {
            *c -= g;
        }
    }
    let comps: Vec<ScalarField3> = specs.iter().map(|s| tf.inverse(s)).collect();
    let [cx, cy, cz]: [ScalarField3; 3] = comps.try_into().unwrap();
    VectorField3::new(cx, cy, cz)
}

/// Exact mode-wise antiderivative ∫₀^{x_axis} d dx' of an all-odd integrand.
/// The output is even on the integration axis (the sine mode q integrates to
/// (1 − cos(πqx))/(πq), split between the axis mode 0 and mode q).
pub fn integrate_from_zero(
    tf: &mut Transformer,
    d: &ScalarField3,
    axis: usize,
) -> Result<ScalarField3> {
    if d.parity() != ALL_ODD {
        return Err(Error::ParityMismatch(format!(
            "integrate_from_zero expects an all-odd integrand, got {:?}",
            d.parity()
        )));
    }
    let n = d.n();
    let spec = tf.forward(d);
    let mut parity = ALL_ODD;
    parity[axis] = Parity::Even;
    let mut out = Spectrum3::zeros(n, parity);
    for k in 0..n {
        for m in 0..n {
            for l in 0..n {
                let mode = [l, m, k][axis];
                if mode == 0 || mode == n - 1 {
                    continue;
                }
                let c = spec.at(l, m, k) / (PI * mode as f64);
                let mut zero_idx = [l, m, k];
                zero_idx[axis] = 0;
                *out.at_mut(zero_idx[0], zero_idx[1], zero_idx[2]) += c;
                *out.at_mut(l, m, k) -= c;
            }
        }
    }
    Ok(tf.inverse(&out))
}

/// Optional isotropic raised-cosine low-pass on mode radius, cutting in at
/// `cutoff` (fraction of the Nyquist radius n−1) and reaching zero at 1.
pub fn raised_cosine_filter(spec: &mut Spectrum3, cutoff: f64) {
    let n = spec.n();
    let nyquist = (n - 1) as f64;
    for k in 0..n {
        for m in 0..n {
            for l in 0..n {
                let r = ((l * l + m * m + k * k) as f64).sqrt() / nyquist;
                let factor = if r <= cutoff {
                    1.0
                } else if r >= 1.0 {
                    0.0
                } else {
                    0.5 * (1.0 + (PI * (r - cutoff) / (1.0 - cutoff)).cos())
                };
                *spec.at_mut(l, m, k) *= factor;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(n: usize, parity: ParitySignature, seed: u64) -> ScalarField3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<f64> = (0..n * n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        ScalarField3::from_values(n, parity, values).unwrap()
    }

    fn random_current_field(n: usize, seed: u64) -> VectorField3 {
        VectorField3::new(
            random_field(n, current_component_signature(0), seed),
            random_field(n, current_component_signature(1), seed + 1),
            random_field(n, current_component_signature(2), seed + 2),
        )
        .unwrap()
    }

    #[test]
    fn gradient_of_constant_is_zero() {
        let mut tf = Transformer::new();
        let f = ScalarField3::from_fn(9, ALL_EVEN, |_, _, _| 1.0).unwrap();
        let g = gradient(&mut tf, &f).unwrap();
        assert!(g.max_abs() < 1e-13);
    }

    #[test]
    fn gradient_of_cosine_mode_is_exact() {
        let mut tf = Transformer::new();
        let n = 17;
        let f = ScalarField3::from_fn(n, ALL_EVEN, |x, _, _| (PI * x).cos()).unwrap();
        let g = gradient(&mut tf, &f).unwrap();
        let expected =
            ScalarField3::from_fn(n, current_component_signature(0), |x, _, _| {
                -PI * (PI * x).sin()
            })
            .unwrap();
        let diff: f64 = g
            .component(0)
            .values()
            .iter()
            .zip(expected.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-12, "max diff {diff}");
        assert!(g.component(1).max_abs() < 1e-13);
        assert!(g.component(2).max_abs() < 1e-13);
        assert_eq!(g.component(0).parity(), current_component_signature(0));
    }

    #[test]
    fn gradient_rejects_non_even_input() {
        let mut tf = Transformer::new();
        let f = random_field(9, ALL_ODD, 5);
        assert!(matches!(
            gradient(&mut tf, &f),
            Err(Error::ParityMismatch(_))
        ));
    }

    #[test]
    fn gradient_matches_centered_differences_in_interior() {
        let mut tf = Transformer::new();
        let n = 33;
        let f = ScalarField3::from_fn(n, ALL_EVEN, |x, y, z| {
            (PI * x).cos() * (2.0 * PI * y).cos() * (PI * z).cos() + 0.3 * (3.0 * PI * x).cos()
        })
        .unwrap();
        let g = gradient(&mut tf, &f).unwrap();
        let h = f.spacing();
        let mut max_err = 0.0f64;
        for iz in 1..n - 1 {
            for iy in 1..n - 1 {
                for ix in 1..n - 1 {
                    let fd = (f.at(ix + 1, iy, iz) - f.at(ix - 1, iy, iz)) / (2.0 * h);
                    max_err = max_err.max((fd - g.component(0).at(ix, iy, iz)).abs());
                }
            }
        }
        // centered differences are O(h²); the spectral result is the reference
        assert!(max_err < 30.0 * h * h, "max err {max_err} vs h² {}", h * h);
        assert!(max_err > 1e-8, "finite differences should differ from exact");
    }

    #[test]
    fn curl_of_gradient_vanishes() {
        let mut tf = Transformer::new();
        let f = random_field(11, ALL_EVEN, 3);
        let g = gradient(&mut tf, &f).unwrap();
        let c = curl(&mut tf, &g).unwrap();
        assert!(c.max_abs() < 1e-12 * f.max_abs().max(1.0));
    }

    #[test]
    fn divergence_of_curl_vanishes() {
        let mut tf = Transformer::new();
        let v = random_current_field(11, 17);
        let c = curl(&mut tf, &v).unwrap();
        let d = divergence(&mut tf, &c).unwrap();
        assert!(d.max_abs() < 1e-12 * v.max_abs().max(1.0));
        assert_eq!(d.parity(), ALL_ODD);
    }

    #[test]
    fn constant_vector_has_zero_curl_and_divergence() {
        let mut tf = Transformer::new();
        let comp = |v: f64| ScalarField3::from_fn(7, ALL_EVEN, move |_, _, _| v).unwrap();
        let v = VectorField3::new(comp(0.3), comp(-1.1), comp(0.9)).unwrap();
        let c = curl(&mut tf, &v).unwrap();
        let d = divergence(&mut tf, &v).unwrap();
        assert!(c.max_abs() < 1e-13);
        assert!(d.max_abs() < 1e-13);
    }

    #[test]
    fn curl_rejects_genuinely_inconsistent_signature() {
        let mut tf = Transformer::new();
        // all-even components with non-trivial variation cannot be combined
        let v = VectorField3::new(
            ScalarField3::from_fn(9, ALL_EVEN, |x, y, _| (PI * x).cos() * (PI * y).cos()).unwrap(),
            ScalarField3::from_fn(9, ALL_EVEN, |_, y, _| (PI * y).cos()).unwrap(),
            ScalarField3::from_fn(9, ALL_EVEN, |x, _, z| (PI * x).cos() * (PI * z).cos()).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            curl(&mut tf, &v),
            Err(Error::ParityMismatch(_))
        ));
    }

    /// Per-mode oracle: apply the differentiation rules by explicit basis
    /// summation at every node (O(n⁶)).
    #[test]
    fn curl_matches_per_mode_oracle() {
        let mut tf = Transformer::new();
        let n = 9;
        let v = random_current_field(n, 23);
        let fast = curl(&mut tf, &v).unwrap();

        let h = 1.0 / (n - 1) as f64;
        let eval = |spec: &Spectrum3, deriv_axis: usize, ix: usize, iy: usize, iz: usize| -> f64 {
            // evaluate ∂_axis of the series directly
            let x = [ix as f64 * h, iy as f64 * h, iz as f64 * h];
            let mut acc = 0.0;
            for k in 0..n {
                for m in 0..n {
                    for l in 0..n {
                        let c = spec.at(l, m, k);
                        if c == 0.0 {
                            continue;
                        }
                        let modes = [l, m, k];
                        let mut term = c;
                        for (axis, &mode) in modes.iter().enumerate() {
                            let arg = PI * mode as f64 * x[axis];
                            let par = spec.parity()[axis];
                            term *= if axis == deriv_axis {
                                match par {
                                    Parity::Even => -PI * mode as f64 * arg.sin(),
                                    Parity::Odd => PI * mode as f64 * arg.cos(),
                                }
                            } else {
                                match par {
                                    Parity::Even => arg.cos(),
                                    Parity::Odd => arg.sin(),
                                }
                            };
                        }
                        acc += term;
                    }
                }
            }
            acc
        };

        let specs: Vec<Spectrum3> = v.components().iter().map(|c| tf.forward(c)).collect();
        let mut max_err = 0.0f64;
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    for a in 0..3 {
                        let b = (a + 1) % 3;
                        let c = (a + 2) % 3;
                        let oracle = eval(&specs[c], b, ix, iy, iz) - eval(&specs[b], c, ix, iy, iz);
                        max_err = max_err.max((oracle - fast.component(a).at(ix, iy, iz)).abs());
                    }
                }
            }
        }
        assert!(max_err < 1e-10, "curl oracle mismatch {max_err}");
    }

    #[test]
    fn poisson_dirichlet_inverts_the_eigenfunction() {
        let mut tf = Transformer::new();
        let n = 17;
        let rhs = ScalarField3::from_fn(n, ALL_ODD, |x, y, z| {
            -3.0 * PI * PI * (PI * x).sin() * (PI * y).sin() * (PI * z).sin()
        })
        .unwrap();
        let u = poisson_dirichlet(&mut tf, &rhs).unwrap();
        let expected = ScalarField3::from_fn(n, ALL_ODD, |x, y, z| {
            (PI * x).sin() * (PI * y).sin() * (PI * z).sin()
        })
        .unwrap();
        let err: f64 = u
            .values()
            .iter()
            .zip(expected.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn poisson_dirichlet_of_zero_is_zero() {
        let mut tf = Transformer::new();
        let rhs = ScalarField3::zeros(9, ALL_ODD).unwrap();
        let u = poisson_dirichlet(&mut tf, &rhs).unwrap();
        assert!(u.max_abs() == 0.0);
    }

    #[test]
    fn poisson_dirichlet_laplacian_roundtrip() {
        let mut tf = Transformer::new();
        let rhs = random_field(11, ALL_ODD, 31);
        let u = poisson_dirichlet(&mut tf, &rhs).unwrap();
        // apply Δ spectrally through two differentiations per axis
        let spec = tf.forward(&u);
        let mut lap = Spectrum3::zeros(11, ALL_ODD);
        for a in 0..3 {
            let d2 = differentiate_spectrum(&differentiate_spectrum(&spec, a), a);
            for (acc, t) in lap.coeffs_mut().iter_mut().zip(d2.coeffs()) {
                *acc += t;
            }
        }
        let back = tf.inverse(&lap);
        let err: f64 = back
            .values()
            .iter()
            .zip(rhs.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-11 * rhs.max_abs(), "Δu ≠ rhs: {err}");
    }

    #[test]
    fn poisson_mixed_inverts_the_eigenfunction() {
        let mut tf = Transformer::new();
        let n = 17;
        let mut rhs = VectorField3::zeros_current(n).unwrap();
        *rhs.component_mut(0) =
            ScalarField3::from_fn(n, current_component_signature(0), |x, y, _| {
                -PI * PI * 2.0 * (PI * x).sin() * (PI * y).cos()
            })
            .unwrap();
        let u = poisson_mixed(&mut tf, &rhs).unwrap();
        let expected = ScalarField3::from_fn(n, current_component_signature(0), |x, y, _| {
            (PI * x).sin() * (PI * y).cos()
        })
        .unwrap();
        let err: f64 = u
            .component(0)
            .values()
            .iter()
            .zip(expected.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
        assert!(u.component(1).max_abs() < 1e-14);
        assert!(u.component(2).max_abs() < 1e-14);
    }

    #[test]
    fn poisson_mixed_zero_maps_to_zero() {
        let mut tf = Transformer::new();
        let rhs = VectorField3::zeros_current(9).unwrap();
        let u = poisson_mixed(&mut tf, &rhs).unwrap();
        assert_eq!(u.max_abs(), 0.0);
    }

    #[test]
    fn leray_projection_is_idempotent_and_kills_divergence() {
        let mut tf = Transformer::new();
        let n = 11;
        let v = VectorField3::new(
            random_field(n, curl_component_signature(0), 41),
            random_field(n, curl_component_signature(1), 42),
            random_field(n, curl_component_signature(2), 43),
        )
        .unwrap();
        let p = leray_project(&mut tf, &v).unwrap();
        let d = divergence(&mut tf, &p).unwrap();
        assert!(d.max_abs() < 1e-11 * v.max_abs());
        let pp = leray_project(&mut tf, &p).unwrap();
        let drift: f64 = pp
            .component(0)
            .values()
            .iter()
            .zip(p.component(0).values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(drift < 1e-12);
    }

    #[test]
    fn integrate_from_zero_inverts_the_axis_derivative() {
        let mut tf = Transformer::new();
        let n = 17;
        // F vanishes at x₃ = 0; D = ∂₃F; integrating D recovers F
        let f = ScalarField3::from_fn(n, [Parity::Odd, Parity::Odd, Parity::Even], |x, y, z| {
            (PI * x).sin() * (2.0 * PI * y).sin() * ((PI * z).cos() - 1.0)
        })
        .unwrap();
        let d = ScalarField3::from_fn(n, ALL_ODD, |x, y, z| {
            -PI * (PI * x).sin() * (2.0 * PI * y).sin() * (PI * z).sin()
        })
        .unwrap();
        let rec = integrate_from_zero(&mut tf, &d, 2).unwrap();
        let err: f64 = rec
            .values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "antiderivative error {err}");
    }

    #[test]
    fn raised_cosine_filter_keeps_low_and_kills_high_modes() {
        let n = 17;
        let mut spec = Spectrum3::zeros(n, ALL_ODD);
        *spec.at_mut(1, 1, 1) = 1.0;
        *spec.at_mut(n - 2, n - 2, n - 2) = 1.0;
        raised_cosine_filter(&mut spec, 0.5);
        assert!((spec.at(1, 1, 1) - 1.0).abs() < 1e-15);
        assert!(spec.at(n - 2, n - 2, n - 2).abs() < 0.02);
    }
}
