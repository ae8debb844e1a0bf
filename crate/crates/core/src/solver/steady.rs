use alloc::vec::Vec;

use super::liouvillian::{vec_index, Liouvillian};
use super::DensityMatrix;
use crate::operators::{ComplexMatrix, LuDecomposition};
use crate::{Error, Result, C64};

/// Eigenvalues of ρ below `-NEGATIVITY_TOLERANCE` raise the negativity flag.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-8;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Steady state of a Liouvillian together with solver diagnostics.
#[derive(Clone, Debug)]
pub struct SteadyState {
    pub rho: DensityMatrix,
    /// `‖L vec(ρ)‖₂`.
    pub residual: f64,
    /// `‖L‖_F`.
    pub liouvillian_norm: f64,
    /// Smallest over largest pivot magnitude met during factorization.
    pub pivot_ratio: f64,
    pub min_eigenvalue: f64,
    pub negativity_warning: bool,
    /// Row of `L` (in `vec` order) that was traded for the trace condition.
    pub replaced_row: usize,
}

impl SteadyState {
    /// `residual / ‖L‖_F`.
    pub fn relative_residual(&self) -> f64 {
        if self.liouvillian_norm > 0.0 {
            self.residual / self.liouvillian_norm
        } else {
            self.residual
        }
    }
}

/// Solves `L vec(ρ) = 0` with `Tr ρ = 1`.
///
/// Uses block elimination when the Liouvillian carries a grading and the
/// dense route otherwise.
pub fn steady_state(l: &Liouvillian) -> Result<SteadyState> {
    if l.grading().is_some() {
        steady_state_blocked(l)
    } else {
        steady_state_dense(l)
    }
}

/// Picks the row to replace by the trace condition: the smallest `|L_vv|`
/// among the given candidates, lowest index on ties.
fn pick_row(l: &Liouvillian, candidates: impl Iterator<Item = usize>) -> usize {
    let mut best = (f64::INFINITY, 0);
    for v in candidates {
        let a = l.matrix().get(v, v).norm();
        if a < best.0 {
            best = (a, v);
        }
    }
    best.1
}

fn finish(l: &Liouvillian, mut rho: DensityMatrix, pivot_ratio: f64, replaced_row: usize) -> Result<SteadyState> {
    if !rho.matrix().is_finite() {
        return Err(Error::Singular { pivot_ratio });
    }
    rho.hermitize();
    let residual = libm::sqrt(l.matrix().mul_vec(&rho.to_column_stacked()).iter().map(|z| z.norm_sqr()).sum());
    let min_eigenvalue = rho.min_eigenvalue()?;
    Ok(SteadyState {
        rho,
        residual,
        liouvillian_norm: l.frobenius_norm(),
        pivot_ratio,
        min_eigenvalue,
        negativity_warning: min_eigenvalue < -NEGATIVITY_TOLERANCE,
        replaced_row,
    })
}

/// Direct route: one row of the dense `D² × D²` Liouvillian is replaced by the
/// trace functional and the system is solved by LU. Memory grows as `D⁴`, so
/// this is meant for small cutoffs and for cross-checking.
pub fn steady_state_dense(l: &Liouvillian) -> Result<SteadyState> {
    let d = l.dim();
    let n = d * d;
    let row = pick_row(l, 0..n);
    let mut a = l.to_dense();
    a.row_mut(row).fill(ZERO);
    for i in 0..d {
        a[(row, vec_index(i, i, d))] = ONE;
    }
    let lu = LuDecomposition::new(a)?;
    let mut b = alloc::vec![ZERO; n];
    b[row] = ONE;
    let x = lu.solve(&b)?;
    let rho =
        DensityMatrix::from_column_stacked(&x, d).map_err(|_| Error::Singular { pivot_ratio: lu.pivot_ratio() })?;
    finish(l, rho, lu.pivot_ratio(), row)
}

/// Sparse blocks of `L` grouped by coherence order.
struct Blocks {
    /// `vec` indices of each order `m ≥ 0`, ascending.
    index: Vec<Vec<usize>>,
    /// Position of a `vec` index inside its block (only for `m ≥ 0`).
    local: Vec<usize>,
    diag: Vec<Vec<(usize, usize, C64)>>,
    up: Vec<Vec<(usize, usize, C64)>>,
    down: Vec<Vec<(usize, usize, C64)>>,
}

impl Blocks {
    fn new(l: &Liouvillian, grading: &[i32]) -> Self {
        let d = l.dim();
        let order = |v: usize| grading[v % d] - grading[v / d];
        let top = (0..d * d).map(order).max().unwrap_or(0).max(0) as usize;
        let mut index = alloc::vec![Vec::new(); top + 1];
        let mut local = alloc::vec![usize::MAX; d * d];
        for v in 0..d * d {
            let m = order(v);
            if m >= 0 {
                let blk = &mut index[m as usize];
                local[v] = blk.len();
                blk.push(v);
            }
        }
        let mut diag = alloc::vec![Vec::new(); top + 1];
        let mut up = alloc::vec![Vec::new(); top + 1];
        let mut down = alloc::vec![Vec::new(); top + 1];
        for (r, c, x) in l.matrix().triplets() {
            let (mr, mc) = (order(r), order(c));
            if mr < 0 || mc < 0 {
                continue;
            }
            let e = (local[r], local[c], x);
            match mc - mr {
                0 => diag[mr as usize].push(e),
                1 => up[mr as usize].push(e),
                -1 => down[mr as usize].push(e),
                _ => {}
            }
        }
        Self { index, local, diag, up, down }
    }

    fn len(&self, m: usize) -> usize {
        self.index[m].len()
    }
}

fn dense_from(rows: usize, cols: usize, entries: &[(usize, usize, C64)]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(rows, cols);
    for &(r, c, x) in entries {
        out[(r, c)] += x;
    }
    out
}

/// `U · X` for sparse `U` (rows × k) and dense `X` (k × cols).
fn sparse_times_dense(rows: usize, entries: &[(usize, usize, C64)], x: &ComplexMatrix) -> ComplexMatrix {
    let cols = x.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for &(r, c, v) in entries {
        let src = x.row(c);
        for (o, &s) in out.row_mut(r).iter_mut().zip(src) {
            *o += v * s;
        }
    }
    out
}

/// Block elimination over coherence orders.
///
/// With a grading `q` on the Hilbert basis, coherence `|i⟩⟨j|` has order
/// `m = q_i − q_j` and `L` couples only neighbouring orders. Starting from the
/// highest order, each block is expressed through the one below it,
/// `x_m = X_m x_{m−1}` with `X_m = −(A_m + U_m X_{m+1})⁻¹ D_m`. Negative orders
/// are the Hermitian conjugates of positive ones and are folded into the
/// order-zero block by symmetry, which is then solved with the trace
/// condition. Dense LU is only ever applied to single blocks.
pub fn steady_state_blocked(l: &Liouvillian) -> Result<SteadyState> {
    let grading = l
        .grading()
        .ok_or(Error::InvalidParameter { name: "grading", reason: "block elimination needs a graded Liouvillian" })?;
    let d = l.dim();
    let blocks = Blocks::new(l, grading);
    let top = blocks.index.len() - 1;

    let mut min_pivot_ratio = f64::INFINITY;
    // x_m = xs[m] · x_{m−1}, for m = 1..=top.
    let mut xs: Vec<Option<ComplexMatrix>> = alloc::vec![None; top + 2];
    for m in (1..=top).rev() {
        let size = blocks.len(m);
        let mut s = dense_from(size, size, &blocks.diag[m]);
        if let Some(next) = &xs[m + 1] {
            s = &s + &sparse_times_dense(size, &blocks.up[m], next);
        }
        let lu = LuDecomposition::new(s)?;
        min_pivot_ratio = min_pivot_ratio.min(lu.pivot_ratio());
        let mut rhs = dense_from(size, blocks.len(m - 1), &blocks.down[m]).scale(-ONE);
        lu.solve_matrix_in_place(&mut rhs)?;
        xs[m] = Some(rhs);
    }

    let n0 = blocks.len(0);
    let mut s0 = dense_from(n0, n0, &blocks.diag[0]);
    if let Some(x1) = &xs[1] {
        let p = sparse_times_dense(n0, &blocks.up[0], x1);
        // The order −1 side contributes conj(P) with rows and columns
        // permuted by the transpose map (i, j) ↦ (j, i).
        let mirror: Vec<usize> = blocks.index[0].iter().map(|&v| blocks.local[vec_index(v / d, v % d, d)]).collect();
        for r in 0..n0 {
            for c in 0..n0 {
                s0[(r, c)] += p[(r, c)] + p[(mirror[r], mirror[c])].conj();
            }
        }
    }

    let row_v = pick_row(l, blocks.index[0].iter().copied());
    let row = blocks.local[row_v];
    s0.row_mut(row).fill(ZERO);
    for i in 0..d {
        s0[(row, blocks.local[vec_index(i, i, d)])] = ONE;
    }
    let lu = LuDecomposition::new(s0)?;
    min_pivot_ratio = min_pivot_ratio.min(lu.pivot_ratio());
    let mut rhs = alloc::vec![ZERO; n0];
    rhs[row] = ONE;
    let mut x = lu.solve(&rhs)?;

    let mut rho = ComplexMatrix::zeros(d, d);
    for (k, &v) in blocks.index[0].iter().enumerate() {
        rho[(v % d, v / d)] = x[k];
    }
    for m in 1..=top {
        let xm = xs[m].as_ref().expect("every order above zero is eliminated");
        x = xm.mul_vec(&x)?;
        for (k, &v) in blocks.index[m].iter().enumerate() {
            let (i, j) = (v % d, v / d);
            rho[(i, j)] = x[k];
            rho[(j, i)] = x[k].conj();
        }
    }
    let rho = DensityMatrix::from_matrix(rho).map_err(|_| Error::Singular { pivot_ratio: min_pivot_ratio })?;
    finish(l, rho, min_pivot_ratio, row_v)
}

/// Second-smallest singular value `σ₂(L)`, a measure of how well the steady
/// state is isolated.
///
/// Works on the dense `L†L` with the known null direction `vec(ρ)` shifted up
/// by `‖L‖_F²`, then runs inverse iteration. Cost is `O(D⁶)`; only use on
/// small cutoffs.
pub fn second_smallest_singular_value(l: &Liouvillian, steady: &DensityMatrix) -> Result<f64> {
    let dense = l.to_dense();
    let n = dense.rows();
    let mut u = steady.to_column_stacked();
    if u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u.len() });
    }
    let un = libm::sqrt(u.iter().map(|z| z.norm_sqr()).sum::<f64>());
    u.iter_mut().for_each(|z| *z /= un);

    let norm = l.frobenius_norm();
    let shift = (norm * norm).max(1.0);
    let mut m = dense.dagger().matmul(&dense)?;
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += u[i] * u[j].conj() * shift;
        }
    }
    let lu = LuDecomposition::new(m.clone())?;

    let mut x: Vec<C64> = (0..n).map(|i| C64::new(1.0, (i % 7) as f64 * 0.1)).collect();
    let mut lambda = f64::INFINITY;
    for _ in 0..500 {
        let y = lu.solve(&x)?;
        let norm = libm::sqrt(y.iter().map(|z| z.norm_sqr()).sum::<f64>());
        x = y.into_iter().map(|z| z / norm).collect();
        let mx = m.mul_vec(&x)?;
        let next: f64 = x.iter().zip(&mx).map(|(a, b)| (a.conj() * b).re).sum();
        let done = (next - lambda).abs() <= 1e-13 * next.abs();
        lambda = next;
        if done {
            break;
        }
    }
    Ok(libm::sqrt(lambda.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, collapse_operators, CollapseOperator, SystemParams};
    use crate::solver::build_liouvillian;

    fn params() -> SystemParams {
        SystemParams {
            fock_cutoff: 2,
            j: 4.0,
            omega_d: 3.0,
            omega_p: 0.8,
            delta: 1.5,
            phi_z: 0.9,
            gamma_ge: 0.2,
            gamma_se: 0.1,
            gamma_gs: 0.05,
            ..Default::default()
        }
    }

    fn liouvillian(p: &SystemParams) -> Liouvillian {
        let h = build_hamiltonian(p).unwrap();
        let cs = collapse_operators(p).unwrap();
        build_liouvillian(&h, &cs).unwrap().with_grading(p.space().unwrap().excitation_grading()).unwrap()
    }

    #[test]
    fn blocked_matches_dense() {
        let l = liouvillian(&params());
        let a = steady_state_blocked(&l).unwrap();
        let b = steady_state_dense(&l).unwrap();
        assert!(a.rho.matrix().max_abs_diff(b.rho.matrix()) < 1e-10);
        assert!(a.relative_residual() < 1e-9);
        assert!(b.relative_residual() < 1e-9);
        assert!(!a.negativity_warning);
        assert_eq!(a.replaced_row, 0);
        assert_eq!(b.replaced_row, 0);
    }

    #[test]
    fn two_level_bloch_solution() {
        // Driven, damped two-level system: H = Ω/2 σx − Δ σ+σ−, decay γ.
        let (omega, delta, gamma) = (0.7, 0.4, 1.3);
        let h = ComplexMatrix::from_real(2, 2, &[0.0, omega / 2.0, omega / 2.0, -delta]).unwrap();
        let lower = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let l = build_liouvillian(&h, &[CollapseOperator { rate: gamma, op: lower }]).unwrap();
        let ss = steady_state(&l).unwrap();
        let pe = ss.rho.matrix()[(1, 1)].re;
        let expect = (omega * omega / 4.0) / (delta * delta + gamma * gamma / 4.0 + omega * omega / 2.0);
        assert!((pe - expect).abs() < 1e-13, "{pe} vs {expect}");
    }

    #[test]
    fn trace_is_one_and_state_is_physical() {
        let l = liouvillian(&params());
        let ss = steady_state(&l).unwrap();
        let diag = ss.rho.check().unwrap();
        assert!(diag.is_physical(1e-12, -NEGATIVITY_TOLERANCE));
    }

    #[test]
    fn ungraded_blocked_is_rejected() {
        let h = ComplexMatrix::zeros(2, 2);
        let l = build_liouvillian(&h, &[]).unwrap();
        assert!(steady_state_blocked(&l).is_err());
    }

    #[test]
    fn isolated_steady_state_has_gap() {
        let mut p = params();
        p.fock_cutoff = 2;
        let l = liouvillian(&p);
        let ss = steady_state(&l).unwrap();
        let s2 = second_smallest_singular_value(&l, &ss.rho).unwrap();
        assert!(s2 > 1e-6, "{s2}");
    }
}
