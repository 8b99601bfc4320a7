use std::collections::BTreeSet;

use rand::seq::IteratorRandom;
use rand::Rng;
use serde::Serialize;

use super::{equal_bounded, Equality, MonoidElement, MonoidPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub samples: usize,
    /// Samples whose hypotheses were established within the bound.
    pub tested: usize,
    /// Samples where the conclusion could not be certified within the bound.
    pub violations: usize,
    pub witnesses: Vec<String>,
}

fn random_element<R: Rng>(p: &MonoidPresentation, max_size: u32, rng: &mut R) -> MonoidElement {
    let mut v = vec![0u32; p.rank()];
    let size = rng.gen_range(1..=max_size.max(1));
    for _ in 0..size {
        v[rng.gen_range(0..p.rank())] += 1;
    }
    MonoidElement(v)
}

/// Some z with x + z = y, searched within the bounded class of y.
fn below(p: &MonoidPresentation, x: &MonoidElement, y: &MonoidElement, bound: u32) -> bool {
    p.bounded_class(y, bound).iter().any(|w| w.dominates(x))
}

/// Samples a, c and builds b with a + c = b + c; whenever c ≤ n·a and c ≤ n·b for some
/// n (with n·a, n·b within the bound), checks a = b, searching up to twice the bound.
pub fn separativity_probe<R: Rng>(
    p: &MonoidPresentation,
    samples: usize,
    bound: u32,
    rng: &mut R,
) -> ProbeReport {
    let mut report = ProbeReport { samples, tested: 0, violations: 0, witnesses: Vec::new() };
    if p.rank() == 0 {
        return report;
    }
    let piece = (bound / 4).max(1);
    for _ in 0..samples {
        let a = random_element(p, piece, rng);
        let c = random_element(p, piece, rng);
        let sum = a.add(&c);
        let Some(w) = p.bounded_class(&sum, bound).into_iter().filter(|w| w.dominates(&c)).choose(rng) else {
            continue;
        };
        let b = w.minus(&c);
        let comparable = |x: &MonoidElement| {
            (1..=bound).take_while(|&n| x.size() * n <= bound).any(|n| below(p, &c, &x.scale(n), bound))
        };
        if b.size() == 0 || !comparable(&a) || !comparable(&b) {
            continue;
        }
        report.tested += 1;
        // The hypotheses hold within `bound`; the conclusion may need a longer detour.
        if equal_bounded(p, &a, &b, 2 * bound) != Ok(Equality::Equal) {
            report.violations += 1;
            report.witnesses.push(format!(
                "a = {}, b = {}, c = {}",
                p.display(&a),
                p.display(&b),
                p.display(&c)
            ));
        }
    }
    report
}

/// Samples a1 + a2 = b1 + b2 and searches for c_ij with a_i = c_i1 + c_i2, b_j = c_1j + c_2j.
pub fn refinement_probe<R: Rng>(
    p: &MonoidPresentation,
    samples: usize,
    bound: u32,
    rng: &mut R,
) -> ProbeReport {
    let mut report = ProbeReport { samples, tested: 0, violations: 0, witnesses: Vec::new() };
    if p.rank() == 0 {
        return report;
    }
    let piece = (bound / 4).max(1);
    for _ in 0..samples {
        let a1 = random_element(p, piece, rng);
        let a2 = random_element(p, piece, rng);
        let Some(w) = p.bounded_class(&a1.add(&a2), bound).into_iter().choose(rng) else {
            continue;
        };
        // Split w coordinatewise at random.
        let b1 = MonoidElement(w.0.iter().map(|&k| rng.gen_range(0..=k)).collect());
        let b2 = w.minus(&b1);
        report.tested += 1;
        if refine(p, [&a1, &a2], [&b1, &b2], bound).is_none() {
            report.violations += 1;
            report.witnesses.push(format!(
                "{} + {} = {} + {}",
                p.display(&a1),
                p.display(&a2),
                p.display(&b1),
                p.display(&b2)
            ));
        }
    }
    report
}

/// A refinement matrix [[c11, c12], [c21, c22]] if one exists among bounded representatives.
pub fn refine(
    p: &MonoidPresentation,
    a: [&MonoidElement; 2],
    b: [&MonoidElement; 2],
    bound: u32,
) -> Option<[[MonoidElement; 2]; 2]> {
    let class = |x: &MonoidElement| p.bounded_class(x, bound);
    let (ca1, ca2, cb1, cb2) = (class(a[0]), class(a[1]), class(b[0]), class(b[1]));
    let sums_b: BTreeSet<(MonoidElement, MonoidElement, MonoidElement)> = cb1
        .iter()
        .flat_map(|x| cb2.iter().map(move |y| (x.add(y), x.clone(), y.clone())))
        .collect();
    for x1 in &ca1 {
        for x2 in &ca2 {
            let s = x1.add(x2);
            let hit = sums_b.range((s.clone(), MonoidElement(vec![]), MonoidElement(vec![]))..).next();
            if let Some((t, y1, y2)) = hit {
                if *t != s {
                    continue;
                }
                // Coordinatewise 2x2 table with margins (x1, x2) and (y1, y2).
                let c11 = MonoidElement(x1.0.iter().zip(&y1.0).map(|(a, b)| *a.min(b)).collect());
                let c12 = x1.minus(&c11);
                let c21 = y1.minus(&c11);
                let c22 = y2.minus(&c12);
                debug_assert_eq!(c21.add(&c22), *x2);
                return Some([[c11, c12], [c21, c22]]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::monoid::presentation;
    use rand::SeedableRng;

    #[test]
    fn probes_find_no_violations() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for g in [families::rose(3), families::a_n(2), crate::parse_graph("vertex a\nvertex b\n").unwrap()] {
            let p = presentation(&g);
            let s = separativity_probe(&p, 100, 10, &mut rng);
            assert_eq!(s.violations, 0, "{:?}", s.witnesses);
            let r = refinement_probe(&p, 100, 10, &mut rng);
            assert_eq!(r.violations, 0, "{:?}", r.witnesses);
            assert!(r.tested > 0);
        }
    }

    #[test]
    fn refinement_of_rose_relation() {
        let p = presentation(&families::rose(2));
        let x = MonoidElement(vec![1]);
        // x + x = x + 0 holds because x = 2x; the refinement puts both copies of x under b1.
        let m = refine(&p, [&x, &x], [&x, &x.scale(0)], 6).unwrap();
        assert_eq!(m[0][1], x.scale(0));
        assert_eq!(m[1][1], x.scale(0));
        let m = refine(&p, [&x, &x], [&x, &x], 6).unwrap();
        assert_eq!(m[0][0].add(&m[0][1]), x);
    }
}
