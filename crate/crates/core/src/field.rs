//! Scalar and vector fields on a uniform n×n×n grid over the unit cube.
//!
//! Nodes sit at x_i = i/(n−1), i = 0..n−1, boundary included. Every field
//! carries a per-axis parity tag declaring its symmetric extension across the
//! faces: `Even` extends by even reflection (cosine series), `Odd` by odd
//! reflection (sine series, zero on that axis's boundary planes). The parity
//! tags decide which fast transform applies along each axis and how the
//! spectral differential operators map between bases.
//!
//! Values are stored x-fastest: `idx = ix + n*(iy + n*iz)`.

use crate::error::{Error, Result};

/// Symmetric-extension tag for one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Even reflection across both faces; cosine basis `cos(π l x)`, l = 0..n−1.
    Even,
    /// Odd reflection; sine basis `sin(π l x)`, l = 1..n−2, zero boundary planes.
    Odd,
}

impl Parity {
    pub fn code(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(Error::Format(format!("unknown parity code {other}"))),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Per-axis parity tags of a scalar field.
pub type ParitySignature = [Parity; 3];

pub const ALL_EVEN: ParitySignature = [Parity::Even; 3];
pub const ALL_ODD: ParitySignature = [Parity::Odd; 3];

/// Signature of component `a` of a current-type vector field: odd on its own
/// axis, even on the other two. This is the basis that builds the prescribed
/// normal flux into the current representation.
pub fn current_component_signature(axis: usize) -> ParitySignature {
    let mut sig = ALL_EVEN;
    sig[axis] = Parity::Odd;
    sig
}

/// Signature of component `a` of a curl-type vector field: even on its own
/// axis, odd on the other two. Spectral curls of current-type fields land here.
pub fn curl_component_signature(axis: usize) -> ParitySignature {
    let mut sig = ALL_ODD;
    sig[axis] = Parity::Even;
    sig
}

/// Scalar samples on the uniform grid with a per-axis parity tag.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField3 {
    n: usize,
    parity: ParitySignature,
    values: Vec<f64>,
}

impl ScalarField3 {
    /// Zero field.
    pub fn zeros(n: usize, parity: ParitySignature) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            parity,
            values: vec![0.0; n * n * n],
        })
    }

    /// Builds a field from raw samples. Rejects non-finite entries and
    /// projects the parity invariant: boundary planes of odd axes are zeroed.
    pub fn from_values(n: usize, parity: ParitySignature, values: Vec<f64>) -> Result<Self> {
        check_n(n)?;
        if values.len() != n * n * n {
            return Err(Error::GridMismatch(format!(
                "expected {} values for n = {n}, got {}",
                n * n * n,
                values.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("field values"));
        }
        let mut field = Self { n, parity, values };
        field.enforce_odd_boundaries();
        Ok(field)
    }

    /// Samples `f(x1, x2, x3)` at the grid nodes.
    pub fn from_fn(
        n: usize,
        parity: ParitySignature,
        f: impl Fn(f64, f64, f64) -> f64,
    ) -> Result<Self> {
        check_n(n)?;
        let h = 1.0 / (n - 1) as f64;
        let mut values = Vec::with_capacity(n * n * n);
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    values.push(f(ix as f64 * h, iy as f64 * h, iz as f64 * h));
                }
            }
        }
        Self::from_values(n, parity, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Grid spacing 1/(n−1).
    pub fn spacing(&self) -> f64 {
        1.0 / (self.n - 1) as f64
    }

    pub fn parity(&self) -> ParitySignature {
        self.parity
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Re-tags the field with a new signature, re-projecting the odd-axis
    /// boundary invariant.
    pub fn with_parity(mut self, parity: ParitySignature) -> Self {
        self.parity = parity;
        self.enforce_odd_boundaries();
        self
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ix + self.n * (iy + self.n * iz)
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize, iz: usize) -> f64 {
        self.values[self.idx(ix, iy, iz)]
    }

    #[inline]
    pub fn at_mut(&mut self, ix: usize, iy: usize, iz: usize) -> &mut f64 {
        let idx = self.idx(ix, iy, iz);
        &mut self.values[idx]
    }

    /// Plain discrete l2 norm of the samples.
    pub fn l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for v in &mut self.values {
            *v *= factor;
        }
        self
    }

    /// Zeroes the boundary planes of every odd axis.
    fn enforce_odd_boundaries(&mut self) {
        let n = self.n;
        for axis in 0..3 {
            if self.parity[axis] != Parity::Odd {
                continue;
            }
            for &plane in &[0, n - 1] {
                for b in 0..n {
                    for c in 0..n {
                        let idx = match axis {
                            0 => self.idx(plane, b, c),
                            1 => self.idx(b, plane, c),
                            _ => self.idx(b, c, plane),
                        };
                        self.values[idx] = 0.0;
                    }
                }
            }
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "grid size n must be at least 3, got {n}"
        )));
    }
    Ok(())
}

/// Three scalar components on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField3 {
    components: [ScalarField3; 3],
}

impl VectorField3 {
    pub fn new(cx: ScalarField3, cy: ScalarField3, cz: ScalarField3) -> Result<Self> {
        if cx.n() != cy.n() || cy.n() != cz.n() {
            return Err(Error::GridMismatch(format!(
                "vector components must share n, got ({}, {}, {})",
                cx.n(),
                cy.n(),
                cz.n()
            )));
        }
        Ok(Self {
            components: [cx, cy, cz],
        })
    }

    pub fn zeros(n: usize, signature: impl Fn(usize) -> ParitySignature) -> Result<Self> {
        Ok(Self {
            components: [
                ScalarField3::zeros(n, signature(0))?,
                ScalarField3::zeros(n, signature(1))?,
                ScalarField3::zeros(n, signature(2))?,
            ],
        })
    }

    /// Zero field in the current-type parity family.
    pub fn zeros_current(n: usize) -> Result<Self> {
        Self::zeros(n, current_component_signature)
    }

    /// Zero field in the curl-type parity family.
    pub fn zeros_curl(n: usize) -> Result<Self> {
        Self::zeros(n, curl_component_signature)
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn component(&self, axis: usize) -> &ScalarField3 {
        &self.components[axis]
    }

    pub fn component_mut(&mut self, axis: usize) -> &mut ScalarField3 {
        &mut self.components[axis]
    }

    pub fn components(&self) -> &[ScalarField3; 3] {
        &self.components
    }

    pub fn into_components(self) -> [ScalarField3; 3] {
        self.components
    }

    pub fn has_signature(&self, signature: impl Fn(usize) -> ParitySignature) -> bool {
        (0..3).all(|a| self.components[a].parity() == signature(a))
    }

    /// Vector value at a node.
    #[inline]
    pub fn at(&self, ix: usize, iy: usize, iz: usize) -> [f64; 3] {
        [
            self.components[0].at(ix, iy, iz),
            self.components[1].at(ix, iy, iz),
            self.components[2].at(ix, iy, iz),
        ]
    }

    pub fn l2(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.l2().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.max_abs())
            .fold(0.0, f64::max)
    }
}

/// One of the six cube faces, identified by its normal axis and side.
/// Face order everywhere (files, measurement layout) is
/// x₁=0, x₁=1, x₂=0, x₂=1, x₃=0, x₃=1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub axis: usize,
    pub upper: bool,
}

impl Face {
    pub fn all() -> [Face; 6] {
        let mut faces = [Face {
            axis: 0,
            upper: false,
        }; 6];
        for (i, f) in faces.iter_mut().enumerate() {
            f.axis = i / 2;
            f.upper = i % 2 == 1;
        }
        faces
    }

    pub fn index(self) -> usize {
        self.axis * 2 + self.upper as usize
    }

    /// Coordinate of the face plane along its normal axis.
    pub fn coord(self) -> f64 {
        if self.upper {
            1.0
        } else {
            0.0
        }
    }

    /// The two in-face (tangential) axes in ascending order.
    pub fn tangents(self) -> (usize, usize) {
        match self.axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }
}

/// Mode triple of the mixed sine/cosine basis with its Laplacian eigenvalue
/// −π²(l²+m²+n²).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumIndex {
    pub l: usize,
    pub m: usize,
    pub n: usize,
}

impl SpectrumIndex {
    pub fn new(l: usize, m: usize, n: usize) -> Self {
        Self { l, m, n }
    }

    pub fn eigenvalue(&self) -> f64 {
        let s = (self.l * self.l + self.m * self.m + self.n * self.n) as f64;
        -std::f64::consts::PI.powi(2) * s
    }

    pub fn is_zero_mode(&self) -> bool {
        self.l == 0 && self.m == 0 && self.n == 0
    }
}
