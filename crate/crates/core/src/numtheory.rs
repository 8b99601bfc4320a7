//! The residue sequences Σ^{d,r} and the partitions S1 ⊔ S2 of {1..d} they induce.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("need 1 <= r <= d, got d = {d}, r = {r}")]
    OutOfRange { d: u64, r: u64 },
    #[error("gcd(d, r - 1) = gcd({d}, {rm1}) is not 1")]
    NotCoprime { d: u64, rm1: u64 },
    #[error("d = 1 gives no partition with d in S2")]
    Degenerate,
    #[error("n must be at least 1")]
    BadN,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionData {
    pub d: u64,
    pub r: u64,
    pub s: u64,
    pub i_r: u64,
    pub sigma: Vec<u64>,
    pub sigma1: Vec<u64>,
    pub sigma2: Vec<u64>,
    pub s1: BTreeSet<u64>,
    pub s2: BTreeSet<u64>,
}

/// Representative of x mod d in {1..d}.
fn residue(x: u64, d: u64) -> u64 {
    match x % d {
        0 => d,
        k => k,
    }
}

/// Σ^{d,r} = 1, 1+s, 1+2s, ... (mod d, representatives in 1..d) with s = d - (r - 1);
/// i_r is the position holding r - 1, S1 the first i_r entries, S2 the rest.
pub fn partition(d: u64, r: u64) -> Result<PartitionData, NumTheoryError> {
    if r < 1 || r > d {
        return Err(NumTheoryError::OutOfRange { d, r });
    }
    if d == 1 {
        return Err(NumTheoryError::Degenerate);
    }
    if d.gcd(&(r - 1)) != 1 {
        return Err(NumTheoryError::NotCoprime { d, rm1: r - 1 });
    }
    let s = d - (r - 1);
    let sigma: Vec<u64> = (0..d).map(|k| residue(1 + k * s, d)).collect();
    let target = residue(r - 1, d);
    let i_r = sigma.iter().position(|&x| x == target).expect("complete residue system") as u64 + 1;
    let sigma1 = sigma[..i_r as usize].to_vec();
    let sigma2 = sigma[i_r as usize..].to_vec();
    Ok(PartitionData {
        d,
        r,
        s,
        i_r,
        s1: sigma1.iter().copied().collect(),
        s2: sigma2.iter().copied().collect(),
        sigma,
        sigma1,
        sigma2,
    })
}

/// i_r · (r - 1) ≡ 1 (mod d).
pub fn i_r_inverse_check(d: u64, r: u64) -> Result<bool, NumTheoryError> {
    let p = partition(d, r)?;
    Ok((p.i_r * (r - 1)) % d == 1 % d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedPartition {
    pub d: u64,
    pub r: u64,
    pub n: u64,
    pub s1: BTreeSet<u64>,
    pub s2: BTreeSet<u64>,
}

/// Extends S1^{d,r} ⊔ S2^{d,r} to {1..n} mod d, where n ≡ r (mod d) with 1 <= r <= d.
pub fn extend_partition(d: u64, n: u64) -> Result<ExtendedPartition, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::BadN);
    }
    let r = residue(n, d);
    let p = partition(d, r)?;
    let (mut s1, mut s2) = (BTreeSet::new(), BTreeSet::new());
    for k in 1..=n {
        if p.s1.contains(&residue(k, d)) {
            s1.insert(k);
        } else {
            s2.insert(k);
        }
    }
    Ok(ExtendedPartition { d, r, n, s1, s2 })
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCount {
    pub d: u64,
    pub count: u64,
    pub phi: u64,
    /// {1} ⊔ {2..d} and {1..d-1} ⊔ {d} both occur.
    pub universal_present: bool,
    pub partitions: Vec<BTreeSet<u64>>,
}

/// Distinct S1 sets over all admissible r, compared with φ(d).
pub fn count_achievable_partitions(d: u64) -> Result<PartitionCount, NumTheoryError> {
    if d < 2 {
        return Err(NumTheoryError::Degenerate);
    }
    let mut found: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    for r in 2..=d + 1 {
        let r = residue(r, d);
        if let Ok(p) = partition(d, r) {
            found.insert(p.s1);
        }
    }
    let first: BTreeSet<u64> = [1].into();
    let all_but_last: BTreeSet<u64> = (1..d).collect();
    Ok(PartitionCount {
        d,
        count: found.len() as u64,
        phi: euler_phi(d),
        universal_present: found.contains(&first) && found.contains(&all_but_last),
        partitions: found.into_iter().collect(),
    })
}

/// Whether S1 (with S2 its complement in {1..d}) arises from some admissible r.
pub fn is_achievable(d: u64, s1: &BTreeSet<u64>) -> bool {
    (2..=d).any(|r| partition(d, r).is_ok_and(|p| &p.s1 == s1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn printed_examples() {
        let p = partition(3, 2).unwrap();
        assert_eq!((p.sigma.clone(), p.s1.clone(), p.s2.clone()), (vec![1, 3, 2], set(&[1]), set(&[2, 3])));
        let p = partition(3, 3).unwrap();
        assert_eq!((p.sigma.clone(), p.s1.clone(), p.s2.clone()), (vec![1, 2, 3], set(&[1, 2]), set(&[3])));
        let p = partition(13, 9).unwrap();
        assert_eq!(p.s, 5);
        assert_eq!(p.sigma, vec![1, 6, 11, 3, 8, 13, 5, 10, 2, 7, 12, 4, 9]);
        assert_eq!(p.s1, set(&[1, 3, 6, 8, 11]));
        assert_eq!(p.s2, set(&[2, 4, 5, 7, 9, 10, 12, 13]));
        assert_eq!(p.i_r, 5);
    }

    #[test]
    fn inverse_checks() {
        assert!(i_r_inverse_check(3, 2).unwrap());
        assert!(i_r_inverse_check(3, 3).unwrap());
        assert!(i_r_inverse_check(13, 9).unwrap());
    }

    #[test]
    fn rejections() {
        assert_eq!(partition(4, 3), Err(NumTheoryError::NotCoprime { d: 4, rm1: 2 }));
        assert_eq!(partition(3, 1), Err(NumTheoryError::NotCoprime { d: 3, rm1: 0 }));
        assert_eq!(partition(3, 4), Err(NumTheoryError::OutOfRange { d: 3, r: 4 }));
        assert_eq!(partition(1, 1), Err(NumTheoryError::Degenerate));
    }

    #[test]
    fn extensions() {
        let e = extend_partition(3, 5).unwrap();
        assert_eq!((e.s1, e.s2), (set(&[1, 4]), set(&[2, 3, 5])));
        assert!(extend_partition(3, 4).is_err());
        assert!(extend_partition(3, 7).is_err());
        let e = extend_partition(3, 8).unwrap();
        assert_eq!((e.r, e.s1, e.s2), (2, set(&[1, 4, 7]), set(&[2, 3, 5, 6, 8])));
    }

    #[test]
    fn counts() {
        for (d, phi) in [(3, 2), (4, 2), (13, 12)] {
            let c = count_achievable_partitions(d).unwrap();
            assert_eq!((c.count, c.phi), (phi, phi));
            assert!(c.universal_present);
        }
        assert!(!is_achievable(3, &set(&[1, 3])));
        assert!(is_achievable(3, &set(&[1])));
    }

    #[test]
    fn phi_against_gcd_count() {
        for d in 1..200u64 {
            let brute = (1..=d).filter(|k| k.gcd(&d) == 1).count() as u64;
            assert_eq!(euler_phi(d), brute, "d = {d}");
        }
    }
}
