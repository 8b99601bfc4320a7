use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// A finitely generated abelian group Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk (d1 | d2 | ..., each ≥ 2)
/// with a distinguished element. `unit_class` lists torsion coordinates first, then free ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::json::ints")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ints")]
    pub unit_class: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointedIso {
    Yes,
    No,
    Unknown,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new(), unit_class: Vec::new() }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn unit_is_zero(&self) -> bool {
        self.unit_class.iter().all(Zero::is_zero)
    }

    fn torsion_part_of_unit(&self) -> &[BigInt] {
        &self.unit_class[..self.torsion.len()]
    }

    fn free_part_of_unit(&self) -> &[BigInt] {
        &self.unit_class[self.torsion.len()..]
    }

    /// Additive order of the distinguished element; `None` when it has infinite order.
    pub fn unit_order(&self) -> Option<BigInt> {
        if self.free_part_of_unit().iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.torsion.iter().zip(self.torsion_part_of_unit()).fold(BigInt::one(), |acc, (d, x)| {
            acc.lcm(&(d / d.gcd(x)))
        }))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        let group = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
        let unit = match self.unit_class.as_slice() {
            [] => "0".to_string(),
            [x] => x.to_string(),
            xs => format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
        };
        write!(f, "{group}; [1] ↦ {unit}")
    }
}

/// Same free rank and invariant factors.
pub fn group_iso(a: &FgAbelianGroup, b: &FgAbelianGroup) -> bool {
    a.free_rank == b.free_rank && a.torsion == b.torsion
}

/// Largest invariant factor handled by prime factorization in pointed isomorphism tests.
const FACTOR_LIMIT: u64 = 1_000_000_000_000;

fn factor(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

fn valuation(mut x: BigInt, p: &BigInt) -> u32 {
    let mut k = 0;
    while !x.is_zero() && x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    k
}

/// For each prime p, the height sequence h(x), h(px), h(p²x), ... of the p-component of x.
/// In a finite abelian p-group two elements lie in one automorphism orbit exactly when
/// these sequences agree.
fn orbit_invariant(torsion: &[BigInt], x: &[BigInt]) -> Option<BTreeMap<u64, Vec<u32>>> {
    let mut primes = Vec::new();
    for d in torsion {
        let d = d.to_u64().filter(|&d| d <= FACTOR_LIMIT)?;
        primes.extend(factor(d));
    }
    primes.sort();
    primes.dedup();
    let mut out = BTreeMap::new();
    for p in primes {
        let pb = BigInt::from(p);
        let moduli: Vec<BigInt> = torsion.iter().map(|d| pb.pow(valuation(d.clone(), &pb))).collect();
        let mut y: Vec<BigInt> = x.iter().zip(&moduli).map(|(xi, m)| xi.mod_floor(m)).collect();
        let mut heights = Vec::new();
        while y.iter().any(|c| !c.is_zero()) {
            let h = y.iter().filter(|c| !c.is_zero()).map(|c| valuation(c.clone(), &pb)).min().unwrap();
            heights.push(h);
            y = y.iter().zip(&moduli).map(|(c, m)| (c * &pb).mod_floor(m)).collect();
        }
        out.insert(p, heights);
    }
    Some(out)
}

/// Whether some group isomorphism a -> b carries the distinguished element of a to that of b.
pub fn pointed_iso_exists(a: &FgAbelianGroup, b: &FgAbelianGroup) -> PointedIso {
    if !group_iso(a, b) {
        return PointedIso::No;
    }
    let (fa, fb) = (
        a.free_part_of_unit().iter().any(|x| !x.is_zero()),
        b.free_part_of_unit().iter().any(|x| !x.is_zero()),
    );
    if a.unit_is_zero() && b.unit_is_zero() {
        return PointedIso::Yes;
    }
    if a.unit_is_zero() != b.unit_is_zero() || fa != fb {
        // Zero and the torsion subgroup are preserved by every automorphism.
        return PointedIso::No;
    }
    if fa {
        if a.torsion.is_empty() {
            // In Z^r two vectors lie in one GL_r(Z) orbit exactly when their contents agree.
            let content = |g: &FgAbelianGroup| g.unit_class.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            return if content(a) == content(b) { PointedIso::Yes } else { PointedIso::No };
        }
        return PointedIso::Unknown;
    }
    match (
        orbit_invariant(&a.torsion, a.torsion_part_of_unit()),
        orbit_invariant(&b.torsion, b.torsion_part_of_unit()),
    ) {
        (Some(x), Some(y)) if x == y => PointedIso::Yes,
        (Some(_), Some(_)) => PointedIso::No,
        _ => PointedIso::Unknown,
    }
}
