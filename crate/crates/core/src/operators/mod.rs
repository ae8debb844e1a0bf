//! Dense linear algebra and the elementary operators of the model.

mod eigen;
mod lu;
mod matrix;
mod sparse;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use lu::LuDecomposition;
pub use matrix::{ComplexMatrix, StateVector};
pub use sparse::CsrMatrix;

use crate::hilbert::{AtomLevel, SpaceConfig};
use crate::solver::DensityMatrix;
use crate::{Error, Result, C64};

/// Kronecker product: `(A⊗B)[i·rB + k, j·cB + l] = A[i,j] · B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(a.rows() * rb, a.cols() * cb);
    for (i, j, x) in a.nonzeros() {
        for k in 0..rb {
            for l in 0..cb {
                out[(i * rb + k, j * cb + l)] = x * b[(k, l)];
            }
        }
    }
    out
}

/// Truncated bosonic annihilation operator on `N + 1` Fock states,
/// `⟨n−1|a|n⟩ = √n`.
pub fn annihilation(cutoff: usize) -> ComplexMatrix {
    let f = cutoff + 1;
    ComplexMatrix::from_fn(
        f,
        f,
        |i, j| {
            if j == i + 1 {
                C64::new(libm::sqrt(j as f64), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        },
    )
}

/// Which of the two atoms an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    First,
    Second,
}

impl Atom {
    pub const BOTH: [Atom; 2] = [Atom::First, Atom::Second];
}

fn atomic_projector(top: AtomLevel, bot: AtomLevel) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3, 3);
    m[(top.code(), bot.code())] = C64::new(1.0, 0.0);
    m
}

/// `σ^i_{top,bot} = |top⟩⟨bot|` on one atom, identity on the other atom and
/// on the field.
pub fn atomic_transition(atom: Atom, top: AtomLevel, bot: AtomLevel, cfg: &SpaceConfig) -> ComplexMatrix {
    let sigma = atomic_projector(top, bot);
    let id3 = ComplexMatrix::identity(3);
    let idf = ComplexMatrix::identity(cfg.fock_dim());
    match atom {
        Atom::First => kron(&kron(&sigma, &id3), &idf),
        Atom::Second => kron(&kron(&id3, &sigma), &idf),
    }
}

/// Cavity annihilation operator embedded in the full space.
pub fn field_annihilation(cfg: &SpaceConfig) -> ComplexMatrix {
    kron(&ComplexMatrix::identity(9), &annihilation(cfg.cutoff()))
}

/// Photon number operator `a†a` in the full space.
pub fn photon_number(cfg: &SpaceConfig) -> ComplexMatrix {
    let a = field_annihilation(cfg);
    &a.dagger() * &a
}

/// Normally ordered moment `a†^k a^k` in the full space.
pub fn normal_ordered_moment(cfg: &SpaceConfig, k: u32) -> ComplexMatrix {
    let a = field_annihilation(cfg);
    let ak = a.pow(k).expect("square");
    &ak.dagger() * &ak
}

/// `Tr(op · ρ)`.
pub fn expectation(op: &ComplexMatrix, rho: &DensityMatrix) -> Result<C64> {
    let r = rho.matrix();
    if op.rows() != r.rows() || op.cols() != r.cols() {
        return Err(Error::DimensionMismatch { expected: r.rows(), found: op.rows() });
    }
    let n = r.rows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for (k, &o) in op.row(i).iter().enumerate() {
            if o != C64::new(0.0, 0.0) {
                acc += o * r[(k, i)];
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::AtomLevel::{Excited as E, Ground as G, Metastable as S};
    use alloc::vec::Vec;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn kron_identities() {
        let i6 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert_eq!(i6, ComplexMatrix::identity(6));

        let d12 = ComplexMatrix::from_diagonal(&[re(1.0), re(2.0)]);
        let d34 = ComplexMatrix::from_diagonal(&[re(3.0), re(4.0)]);
        assert_eq!(kron(&d12, &d34), ComplexMatrix::from_diagonal(&[re(3.0), re(4.0), re(6.0), re(8.0)]));
    }

    #[test]
    fn kron_is_associative() {
        let mk = |s: f64| ComplexMatrix::from_fn(2, 2, |i, j| C64::new(s * (i as f64 + 1.0), s - j as f64));
        let (a, b, c) = (mk(0.3), mk(-1.1), mk(2.5));
        let lhs = kron(&kron(&a, &b), &c);
        let rhs = kron(&a, &kron(&b, &c));
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn ladder_operator() {
        let a1 = annihilation(1);
        assert_eq!(a1, ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap());

        let n = 5;
        let a = annihilation(n);
        let num = &a.dagger() * &a;
        let diag: Vec<f64> = num.diagonal().iter().map(|z| z.re).collect();
        for (k, d) in diag.iter().enumerate() {
            assert!((d - k as f64).abs() < 1e-14);
        }

        // [a, a†] = I − (N+1)|N⟩⟨N| in the truncated space.
        let comm = a.commutator(&a.dagger()).unwrap();
        let mut expect = ComplexMatrix::identity(n + 1);
        expect[(n, n)] = re(1.0 - (n as f64 + 1.0));
        assert!(comm.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn atomic_completeness_and_action() {
        let cfg = SpaceConfig::new(2).unwrap();
        let sum = &(&atomic_transition(Atom::First, E, E, &cfg) + &atomic_transition(Atom::First, S, S, &cfg))
            + &atomic_transition(Atom::First, G, G, &cfg);
        assert_eq!(sum, ComplexMatrix::identity(cfg.dim()));

        let raised = cfg.product_state(G, G, 0).unwrap().apply(&atomic_transition(Atom::First, E, G, &cfg)).unwrap();
        assert_eq!(raised, cfg.product_state(E, G, 0).unwrap());

        let raised2 = cfg.product_state(G, G, 1).unwrap().apply(&atomic_transition(Atom::Second, S, G, &cfg)).unwrap();
        assert_eq!(raised2, cfg.product_state(G, S, 1).unwrap());
    }

    #[test]
    fn distinct_atoms_commute() {
        let cfg = SpaceConfig::new(2).unwrap();
        let s1 = atomic_transition(Atom::First, E, G, &cfg);
        let s2 = atomic_transition(Atom::Second, G, E, &cfg);
        assert_eq!(s1.commutator(&s2).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn expectation_values() {
        let cfg = SpaceConfig::new(3).unwrap();
        let id = ComplexMatrix::identity(cfg.dim());
        let num = photon_number(&cfg);

        let vac = DensityMatrix::from_pure(&cfg.product_state(G, G, 0).unwrap());
        assert_eq!(expectation(&id, &vac).unwrap(), re(1.0));
        assert_eq!(expectation(&num, &vac).unwrap(), re(0.0));

        let two = DensityMatrix::from_pure(&cfg.product_state(G, G, 2).unwrap());
        assert!((expectation(&num, &two).unwrap() - re(2.0)).norm() < 1e-14);

        let wrong = ComplexMatrix::identity(4);
        assert!(expectation(&wrong, &vac).is_err());
    }

    #[test]
    fn hermitian_expectation_is_real() {
        let cfg = SpaceConfig::new(2).unwrap();
        let psi = crate::operators::StateVector::from_vec(
            (0..cfg.dim()).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.7).cos())).collect(),
        )
        .normalized();
        let rho = DensityMatrix::from_pure(&psi);
        let x = &field_annihilation(&cfg) + &field_annihilation(&cfg).dagger();
        assert!(expectation(&x, &rho).unwrap().im.abs() < 1e-10);
    }
}
