use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{LpaContext, LpaElement, SymbolicError};

/// Square matrix over L_K(E).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpaMatrix {
    dim: usize,
    entries: Vec<LpaElement>,
}

impl LpaMatrix {
    pub fn from_rows(rows: Vec<Vec<LpaElement>>) -> Result<Self, SymbolicError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(SymbolicError::Dimension("empty matrix".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(SymbolicError::Dimension(format!("row of length {} in a {dim}x{dim} matrix", r.len())));
        }
        let entries: Vec<LpaElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|x| x.check(&entries[0]).is_err()) {
            return Err(SymbolicError::Mismatch);
        }
        Ok(LpaMatrix { dim, entries })
    }

    pub fn identity(ctx: &Arc<LpaContext>, dim: usize) -> Self {
        let entries = (0..dim * dim)
            .map(|k| if k / dim == k % dim { LpaElement::one(ctx) } else { LpaElement::zero(ctx) })
            .collect();
        LpaMatrix { dim, entries }
    }

    pub fn zero(ctx: &Arc<LpaContext>, dim: usize) -> Self {
        LpaMatrix { dim, entries: vec![LpaElement::zero(ctx); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LpaElement {
        &self.entries[i * self.dim + j]
    }

    fn ctx(&self) -> &Arc<LpaContext> {
        self.entries[0].context()
    }

    fn check(&self, other: &Self) -> Result<(), SymbolicError> {
        if self.dim != other.dim {
            return Err(SymbolicError::Dimension(format!("{0}x{0} against {1}x{1}", self.dim, other.dim)));
        }
        self.entries[0].check(&other.entries[0])
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(LpaMatrix { dim: self.dim, entries })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LpaElement::zero(self.ctx());
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.multiply(b)?)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(LpaMatrix { dim: n, entries })
    }

    /// Transpose with star applied entrywise.
    pub fn star(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).star()).collect();
        LpaMatrix { dim: n, entries }
    }

    /// First entry (i, j) where the two matrices differ.
    fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        (0..self.dim * self.dim).find(|&k| self.entries[k] != other.entries[k]).map(|k| (k / self.dim, k % self.dim))
    }
}

pub fn mat_multiply(a: &LpaMatrix, b: &LpaMatrix) -> Result<LpaMatrix, SymbolicError> {
    a.multiply(b)
}

impl fmt::Display for LpaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DaggerReport {
    pub n: usize,
    pub dim: usize,
    pub checks: usize,
    pub passed: usize,
    /// Description of the first failing relation.
    pub first_failure: Option<String>,
}

impl DaggerReport {
    pub fn holds(&self) -> bool {
        self.passed == self.checks
    }
}

impl fmt::Display for DaggerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "all {} relation checks pass", self.checks),
            Some(w) => write!(f, "{} of {} relation checks pass; first failure: {w}", self.passed, self.checks),
        }
    }
}

/// Checks Y_i X_j = δ_ij I for all i, j and Σ X_i Y_i = I.
pub fn verify_dagger(xs: &[LpaMatrix], ys: &[LpaMatrix]) -> Result<DaggerReport, SymbolicError> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(SymbolicError::Dimension(format!("{} X matrices and {} Y matrices", xs.len(), ys.len())));
    }
    let first = &xs[0];
    for m in xs.iter().chain(ys) {
        first.check(m)?;
    }
    let n = xs.len();
    let identity = LpaMatrix::identity(first.ctx(), first.dim);
    let zero = LpaMatrix::zero(first.ctx(), first.dim);
    let mut report = DaggerReport { n, dim: first.dim, checks: n * n + 1, passed: 0, first_failure: None };
    let record = |ok: Option<(usize, usize)>, what: String, got: &LpaMatrix, report: &mut DaggerReport| match ok {
        None => report.passed += 1,
        Some((r, c)) if report.first_failure.is_none() => {
            report.first_failure = Some(format!("{what}: entry ({}, {}) is {}", r + 1, c + 1, got.get(r, c)));
        }
        Some(_) => {}
    };
    for (i, y) in ys.iter().enumerate() {
        for (j, x) in xs.iter().enumerate() {
            let p = y.multiply(x)?;
            let want = if i == j { &identity } else { &zero };
            let what = format!("Y{}·X{} = {}", i + 1, j + 1, if i == j { "I" } else { "0" });
            record(p.first_difference(want), what, &p, &mut report);
        }
    }
    let mut sum = zero.clone();
    for (x, y) in xs.iter().zip(ys) {
        sum = sum.add(&x.multiply(y)?)?;
    }
    record(sum.first_difference(&identity), "Σ Xi·Yi = I".into(), &sum, &mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::graph::families;

    #[test]
    fn one_by_one_leavitt() {
        let ctx = LpaContext::new(families::rose(3), Field::Rationals).unwrap();
        let x: Vec<LpaMatrix> = (0..3).map(|e| LpaMatrix::from_rows(vec![vec![LpaElement::edge(&ctx, e)]]).unwrap()).collect();
        let y: Vec<LpaMatrix> = x.iter().map(LpaMatrix::star).collect();
        let r = verify_dagger(&x, &y).unwrap();
        assert!(r.holds());
        assert_eq!(r.to_string(), "all 10 relation checks pass");
        let r = verify_dagger(&y, &x).unwrap();
        assert!(!r.holds());
        assert_eq!(r.passed, 0);
        assert!(r.first_failure.unwrap().starts_with("Y1·X1 = I"));
    }

    #[test]
    fn shapes() {
        let ctx = LpaContext::new(families::rose(2), Field::Rationals).unwrap();
        let i2 = LpaMatrix::identity(&ctx, 2);
        let i3 = LpaMatrix::identity(&ctx, 3);
        assert!(matches!(i2.multiply(&i3), Err(SymbolicError::Dimension(_))));
        assert!(verify_dagger(&[i2.clone()], &[]).is_err());
        assert_eq!(i2.multiply(&i2).unwrap(), i2);
        assert_eq!(i2.star(), i2);
        let e = LpaElement::edge(&ctx, 0);
        let z = LpaElement::zero(&ctx);
        let m = LpaMatrix::from_rows(vec![vec![z.clone(), e.clone()], vec![z.clone(), z]]).unwrap();
        assert_eq!(m.star().get(1, 0), &e.star());
        assert_eq!(m.to_string(), "[[0, e1], [0, 0]]");
        assert!(LpaMatrix::from_rows(vec![vec![e]]).is_ok());
    }
}
