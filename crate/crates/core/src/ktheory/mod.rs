//! Incidence matrices, Smith normal form, determinants and K0 as a cokernel.

mod group;
mod matrix;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use group::{group_iso, pointed_iso_exists, FgAbelianGroup, PointedIso};
pub use matrix::IntMatrix;
pub use snf::{det, invariant_factors, smith_normal_form, NotSquare};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("K-theory matrix undefined for infinite emitters")]
    InfiniteEmitters,
    #[error(transparent)]
    NotSquare(#[from] NotSquare),
}

/// A_E(i, j) = number of edges v_i -> v_j, in declaration order.
pub fn incidence_matrix(g: &Graph) -> Result<IntMatrix, KTheoryError> {
    if !g.is_row_finite() {
        return Err(KTheoryError::InfiniteEmitters);
    }
    let n = g.vertex_count();
    let mut a = IntMatrix::zeros(n, n);
    for e in g.edges() {
        a[(e.source, e.range)] += 1;
    }
    Ok(a)
}

/// I - A_E.
pub fn i_minus_a(g: &Graph) -> Result<IntMatrix, KTheoryError> {
    let a = incidence_matrix(g)?;
    let n = a.rows();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= &a[(i, j)];
        }
    }
    Ok(m)
}

/// det(I - A_E), with sign.
pub fn det_i_minus_a(g: &Graph) -> Result<BigInt, KTheoryError> {
    Ok(det(&i_minus_a(g)?)?)
}

/// Z^rows modulo the column span of `m`, with the class of `x` distinguished.
pub fn cokernel(m: &IntMatrix, x: &[BigInt]) -> FgAbelianGroup {
    let (u, d, _) = smith_normal_form(m);
    let y = u.mul_vec(x);
    let diag = invariant_factors(&d);
    let mut torsion = Vec::new();
    let mut torsion_coords = Vec::new();
    let mut free_coords = Vec::new();
    for (i, yi) in y.into_iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            free_coords.push(yi);
        } else if !di.is_one() {
            torsion_coords.push(yi.mod_floor(&di));
            torsion.push(di);
        }
    }
    if torsion.len() == 1 && free_coords.is_empty() {
        // Elements of Z/d with equal gcd against d are automorphic; present the gcd.
        let g = torsion_coords[0].gcd(&torsion[0]);
        torsion_coords[0] = if g == torsion[0] { BigInt::zero() } else { g };
    }
    let free_rank = free_coords.len();
    torsion_coords.extend(free_coords);
    FgAbelianGroup { free_rank, torsion, unit_class: torsion_coords }
}

/// K0 of the Leavitt path algebra: Z^{E⁰} modulo the relations [v] = Σ_{s(e)=v} [r(e)],
/// i.e. the cokernel of (I - A_E)ᵀ, with the class of the unit Σ [v].
pub fn k0(g: &Graph) -> Result<FgAbelianGroup, KTheoryError> {
    let m = i_minus_a(g)?.transpose();
    let ones = vec![BigInt::one(); g.vertex_count()];
    Ok(cokernel(&m, &ones))
}
