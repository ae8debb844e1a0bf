use alloc::vec::Vec;

use super::DensityMatrix;
use crate::model::CollapseOperator;
use crate::operators::{ComplexMatrix, CsrMatrix};
use crate::{Error, Result, C64};

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T_MAX: f64 = 50.0;

const ZERO: C64 = C64::new(0.0, 0.0);

struct Generator {
    d: usize,
    heff: CsrMatrix,
    /// Nonzero entries `(row, col, value)` of each `√r C`.
    jumps: Vec<Vec<(usize, usize, C64)>>,
    scratch: Vec<C64>,
}

impl Generator {
    fn new(h: &ComplexMatrix, cs: &[CollapseOperator]) -> Self {
        let mut heff = h.clone();
        for c in cs {
            let cdc = &c.op.dagger() * &c.op;
            heff = &heff - &cdc.scale(C64::new(0.0, 0.5 * c.rate));
        }
        let d = h.rows();
        Self {
            d,
            heff: CsrMatrix::from_dense(&heff),
            jumps: cs
                .iter()
                .filter(|c| c.rate > 0.0)
                .map(|c| c.op.nonzeros().map(|(r, k, v)| (r, k, v * libm::sqrt(c.rate))).collect())
                .collect(),
            scratch: alloc::vec![ZERO; d * d],
        }
    }

    /// `out = −i (Heff ρ − ρ Heff†) + Σ r C ρ C†` for Hermitian `ρ`, using
    /// `ρ Heff† = (Heff ρ)†`.
    fn apply(&mut self, rho: &[C64], out: &mut [C64]) {
        let d = self.d;
        self.scratch.fill(ZERO);
        self.heff.mul_dense_acc(rho, d, C64::new(0.0, -1.0), &mut self.scratch);
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = self.scratch[i * d + j] + self.scratch[j * d + i].conj();
            }
        }
        for c in &self.jumps {
            for &(r1, k1, v1) in c {
                for &(r2, k2, v2) in c {
                    out[r1 * d + r2] += v1 * rho[k1 * d + k2] * v2.conj();
                }
            }
        }
    }
}

/// Integrates the master equation from `rho0` up to `t_max` with classical
/// fourth-order Runge-Kutta.
///
/// The number of steps is `ceil(t_max / dt)` with the step shortened so that
/// the final time is hit exactly. Independent of the Liouvillian assembly, so
/// it doubles as a check on the steady-state solver.
pub fn evolve(
    h: &ComplexMatrix,
    cs: &[CollapseOperator],
    rho0: &DensityMatrix,
    dt: f64,
    t_max: f64,
) -> Result<DensityMatrix> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter { name: "dt", reason: "time step must be positive" });
    }
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidParameter { name: "t_max", reason: "final time must be non-negative" });
    }
    let d = rho0.dim();
    if h.rows() != d || !h.is_square() {
        return Err(Error::DimensionMismatch { expected: d, found: h.rows() });
    }
    for c in cs {
        if c.op.rows() != d || c.op.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: c.op.rows() });
        }
    }

    let steps = libm::ceil(t_max / dt - 1e-9).max(0.0) as usize;
    if steps == 0 {
        return Ok(rho0.clone());
    }
    let h_step = t_max / steps as f64;
    let mut gen = Generator::new(h, cs);
    let mut rho = rho0.matrix().as_slice().to_vec();
    let n = d * d;
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (alloc::vec![ZERO; n], alloc::vec![ZERO; n], alloc::vec![ZERO; n], alloc::vec![ZERO; n], alloc::vec![ZERO; n]);

    for step in 0..steps {
        gen.apply(&rho, &mut k1);
        axpy(&rho, 0.5 * h_step, &k1, &mut tmp);
        gen.apply(&tmp, &mut k2);
        axpy(&rho, 0.5 * h_step, &k2, &mut tmp);
        gen.apply(&tmp, &mut k3);
        axpy(&rho, h_step, &k3, &mut tmp);
        gen.apply(&tmp, &mut k4);
        let w = h_step / 6.0;
        let mut finite = true;
        for i in 0..n {
            rho[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * w;
            finite &= rho[i].re.is_finite() && rho[i].im.is_finite();
        }
        if !finite {
            return Err(Error::NonFinite { time: (step + 1) as f64 * h_step });
        }
    }
    DensityMatrix::from_matrix(ComplexMatrix::from_vec(d, d, rho)?)
}

fn axpy(x: &[C64], a: f64, y: &[C64], out: &mut [C64]) {
    for ((o, &xi), &yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + yi * a;
    }
}
