//! Fast mixed sine/cosine transforms between grid samples and mode
//! coefficients.
//!
//! An even axis uses the n-point cosine family `cos(π l x_i)`, l = 0..n−1;
//! an odd axis uses the (n−2)-point interior sine family `sin(π l x_i)`,
//! l = 1..n−2 (the sine modes 0 and n−1 vanish at every node and are stored
//! as structural zeros). Both are realised through one complex FFT of length
//! 2(n−1) on the even/odd extension of the line, so a full 3D transform costs
//! O(n³ log n).
//!
//! Normalisation: `forward` returns coefficients A such that
//! `f(x) = Σ A_{lmn} b_l(x₁) b_m(x₂) b_n(x₃)` with `b` the plain cos/sin
//! basis functions, and `inverse(forward(f)) == f` to round-off.

use std::collections::HashMap;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::field::{Parity, ParitySignature, ScalarField3};

/// Mode coefficients of a field, same x-fastest layout and size as the grid.
/// Odd axes carry structural zeros at indices 0 and n−1.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum3 {
    n: usize,
    parity: ParitySignature,
    coeffs: Vec<f64>,
}

impl Spectrum3 {
    pub fn zeros(n: usize, parity: ParitySignature) -> Self {
        Self {
            n,
            parity,
            coeffs: vec![0.0; n * n * n],
        }
    }

    pub fn from_parts(n: usize, parity: ParitySignature, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != n * n * n {
            return Err(Error::GridMismatch(format!(
                "expected {} coefficients, got {}",
                n * n * n,
                coeffs.len()
            )));
        }
        Ok(Self { n, parity, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> ParitySignature {
        self.parity
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    #[inline]
    pub fn idx(&self, l: usize, m: usize, k: usize) -> usize {
        l + self.n * (m + self.n * k)
    }

    #[inline]
    pub fn at(&self, l: usize, m: usize, k: usize) -> f64 {
        self.coeffs[self.idx(l, m, k)]
    }

    #[inline]
    pub fn at_mut(&mut self, l: usize, m: usize, k: usize) -> &mut f64 {
        let idx = self.idx(l, m, k);
        &mut self.coeffs[idx]
    }
}

/// Transform engine with cached FFT plans, reusable across fields of any size.
pub struct Transformer {
    planner: FftPlanner<f64>,
    plans: HashMap<usize, Arc<dyn Fft<f64>>>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Default for Transformer {
    fn default() -> Self {
        Self::new()
    }
}

impl Transformer {
    pub fn new() -> Self {
        Self {
            planner: FftPlanner::new(),
            plans: HashMap::new(),
            buf: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn plan(&mut self, len: usize) -> Arc<dyn Fft<f64>> {
        let planner = &mut self.planner;
        self.plans
            .entry(len)
            .or_insert_with(|| planner.plan_fft_forward(len))
            .clone()
    }

    /// Grid samples → mode coefficients.
    pub fn forward(&mut self, field: &ScalarField3) -> Spectrum3 {
        let n = field.n();
        let parity = field.parity();
        let mut data = field.values().to_vec();
        self.forward_values(&mut data, n, parity);
        Spectrum3 {
            n,
            parity,
            coeffs: data,
        }
    }

    /// Mode coefficients → grid samples.
    pub fn inverse(&mut self, spectrum: &Spectrum3) -> ScalarField3 {
        let n = spectrum.n;
        let mut data = spectrum.coeffs.clone();
        self.inverse_values(&mut data, n, spectrum.parity);
        ScalarField3::from_values(n, spectrum.parity, data)
            .expect("inverse transform produced an invalid field")
    }

    /// In-place 3D forward transform of a raw x-fastest n³ buffer.
    pub fn forward_values(&mut self, data: &mut [f64], n: usize, parity: ParitySignature) {
        for axis in 0..3 {
            self.axis_pass(data, [n, n, n], axis, parity[axis], Direction::Forward);
        }
    }

    /// In-place 3D inverse transform of a raw x-fastest n³ buffer.
    pub fn inverse_values(&mut self, data: &mut [f64], n: usize, parity: ParitySignature) {
        for axis in 0..3 {
            self.axis_pass(data, [n, n, n], axis, parity[axis], Direction::Inverse);
        }
    }

    /// In-place 2D forward transform of a raw row-major (first axis fastest)
    /// n×n buffer.
    pub fn forward_values_2d(&mut self, data: &mut [f64], n: usize, parity: [Parity; 2]) {
        for axis in 0..2 {
            self.axis_pass(data, [n, n, 1], axis, parity[axis], Direction::Forward);
        }
    }

    /// In-place 2D inverse transform of a raw n×n buffer.
    pub fn inverse_values_2d(&mut self, data: &mut [f64], n: usize, parity: [Parity; 2]) {
        for axis in 0..2 {
            self.axis_pass(data, [n, n, 1], axis, parity[axis], Direction::Inverse);
        }
    }

    fn axis_pass(
        &mut self,
        data: &mut [f64],
        dims: [usize; 3],
        axis: usize,
        parity: Parity,
        dir: Direction,
    ) {
        let n = dims[axis];
        debug_assert!(n >= 3);
        let len = 2 * (n - 1);
        let plan = self.plan(len);
        self.buf.resize(len, Complex64::default());
        self.scratch
            .resize(plan.get_inplace_scratch_len(), Complex64::default());

        let strides = [1, dims[0], dims[0] * dims[1]];
        let stride = strides[axis];
        let (oa, ob) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut line = vec![0.0f64; n];
        for b in 0..dims[ob] {
            for a in 0..dims[oa] {
                let start = a * strides[oa] + b * strides[ob];
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + i * stride];
                }
                line_pass(
                    &mut line,
                    parity,
                    dir,
                    plan.as_ref(),
                    &mut self.buf,
                    &mut self.scratch,
                );
                for (i, &v) in line.iter().enumerate() {
                    data[start + i * stride] = v;
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Inverse,
}

fn line_pass(
    line: &mut [f64],
    parity: Parity,
    dir: Direction,
    fft: &dyn Fft<f64>,
    buf: &mut [Complex64],
    scratch: &mut [Complex64],
) {
    let n = line.len();
    let len = 2 * (n - 1);
    debug_assert_eq!(buf.len(), len);
    match (parity, dir) {
        (Parity::Even, Direction::Forward) => {
            fill_even(buf, line);
            fft.process_with_scratch(buf, scratch);
            let mid = 1.0 / (n - 1) as f64;
            let end = 0.5 * mid;
            line[0] = buf[0].re * end;
            line[n - 1] = buf[n - 1].re * end;
            for l in 1..n - 1 {
                line[l] = buf[l].re * mid;
            }
        }
        (Parity::Even, Direction::Inverse) => {
            // pre-scale interior modes by 1/2, endpoints by 1
            let mut g = line.to_vec();
            for v in g.iter_mut().take(n - 1).skip(1) {
                *v *= 0.5;
            }
            fill_even(buf, &g);
            fft.process_with_scratch(buf, scratch);
            for (i, slot) in line.iter_mut().enumerate() {
                *slot = buf[i].re;
            }
        }
        (Parity::Odd, Direction::Forward) => {
            fill_odd(buf, line);
            fft.process_with_scratch(buf, scratch);
            let scale = 1.0 / (n - 1) as f64;
            line[0] = 0.0;
            line[n - 1] = 0.0;
            for l in 1..n - 1 {
                line[l] = -buf[l].im * scale;
            }
        }
        (Parity::Odd, Direction::Inverse) => {
            let mut g = line.to_vec();
            for v in &mut g {
                *v *= 0.5;
            }
            g[0] = 0.0;
            g[n - 1] = 0.0;
            fill_odd(buf, &g);
            fft.process_with_scratch(buf, scratch);
            line[0] = 0.0;
            line[n - 1] = 0.0;
            for (i, slot) in line.iter_mut().enumerate().take(n - 1).skip(1) {
                *slot = -buf[i].im;
            }
        }
    }
}

/// Even extension of length 2(n−1): [f0 .. f_{n-1}, f_{n-2} .. f_1].
fn fill_even(buf: &mut [Complex64], line: &[f64]) {
    let n = line.len();
    for (i, &v) in line.iter().enumerate() {
        buf[i] = Complex64::new(v, 0.0);
    }
    for j in 1..n - 1 {
        buf[2 * (n - 1) - j] = Complex64::new(line[j], 0.0);
    }
}

/// Odd extension of length 2(n−1): [0, f1 .. f_{n-2}, 0, -f_{n-2} .. -f1].
fn fill_odd(buf: &mut [Complex64], line: &[f64]) {
    let n = line.len();
    buf[0] = Complex64::default();
    buf[n - 1] = Complex64::default();
    for j in 1..n - 1 {
        buf[j] = Complex64::new(line[j], 0.0);
        buf[2 * (n - 1) - j] = Complex64::new(-line[j], 0.0);
    }
}
