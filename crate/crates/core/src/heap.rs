//! Finite heaps: sets with a ternary operation `<a, b, c>` that is outer
//! associative and satisfies the Mal'cev identities. A heap is a group that
//! has forgotten its unit; pointing it at any element recovers a group.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exhaustive associativity checks are O(n^5); above this size use
/// [`check_heap_sampled`].
pub const MAX_EXHAUSTIVE_CARRIER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HeapViolation {
    /// `<a, b, <c, d, e>> != <<a, b, c>, d, e>`
    Associativity([usize; 5]),
    /// `<a, a, b> != b`
    MalcevLeft([usize; 2]),
    /// `<b, a, a> != b`
    MalcevRight([usize; 2]),
    /// `<a, <d, c, b>, e> != <<a, b, c>, d, e>`
    MiddleAssociativity([usize; 5]),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeapError {
    #[error("heap axiom violated: {0:?}")]
    NotAHeap(HeapViolation),
    #[error("carrier of size {0} exceeds the exhaustive bound {MAX_EXHAUSTIVE_CARRIER}")]
    CarrierTooLarge(usize),
    #[error("a group cannot be formed from the empty heap")]
    EmptyHeap,
    #[error("element {0} is not in the carrier")]
    NotInCarrier(usize),
    #[error("ternary table has {got} entries, expected {expected}")]
    BadTable { expected: usize, got: usize },
    #[error("group axiom violated at {0:?}")]
    NotAGroup(Vec<usize>),
    #[error("orbits do not partition the carrier")]
    NotAPartition,
    #[error("quotient law is not well defined: {0:?} and {1:?} land in different classes")]
    IllDefined([usize; 3], [usize; 3]),
    #[error("ternary law leaves the set at {0:?}")]
    ClosureViolation([usize; 3]),
}

/// A finite heap given by its full ternary table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHeap {
    carrier: Vec<String>,
    law: Vec<usize>,
}

impl FiniteHeap {
    pub fn new(carrier: Vec<String>, law: Vec<usize>) -> Result<Self, HeapError> {
        let n = carrier.len();
        if law.len() != n * n * n {
            return Err(HeapError::BadTable {
                expected: n * n * n,
                got: law.len(),
            });
        }
        if let Some(&bad) = law.iter().find(|&&x| x >= n) {
            return Err(HeapError::NotInCarrier(bad));
        }
        Ok(Self { carrier, law })
    }

    pub fn from_fn(carrier: Vec<String>, op: impl Fn(usize, usize, usize) -> usize) -> Self {
        let n = carrier.len();
        let mut law = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    law.push(op(a, b, c));
                }
            }
        }
        Self::new(carrier, law).expect("operation stays inside the carrier")
    }

    pub fn empty() -> Self {
        Self {
            carrier: Vec::new(),
            law: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn op(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.size();
        self.law[(a * n + b) * n + c]
    }

    pub fn with_law_entry(&self, a: usize, b: usize, c: usize, value: usize) -> Self {
        let n = self.size();
        let mut law = self.law.clone();
        law[(a * n + b) * n + c] = value;
        Self::new(self.carrier.clone(), law).expect("value inside carrier")
    }
}

fn malcev_violation(hp: &FiniteHeap, a: usize, b: usize) -> Option<HeapViolation> {
    if hp.op(a, a, b) != b {
        return Some(HeapViolation::MalcevLeft([a, b]));
    }
    if hp.op(b, a, a) != b {
        return Some(HeapViolation::MalcevRight([a, b]));
    }
    None
}

fn associativity_violation(hp: &FiniteHeap, t: [usize; 5]) -> Option<HeapViolation> {
    let [a, b, c, d, e] = t;
    (hp.op(a, b, hp.op(c, d, e)) != hp.op(hp.op(a, b, c), d, e))
        .then_some(HeapViolation::Associativity(t))
}

/// Exhaustive check of outer associativity and the Mal'cev identities.
pub fn check_heap(hp: &FiniteHeap) -> Result<(), HeapError> {
    let n = hp.size();
    if n > MAX_EXHAUSTIVE_CARRIER {
        return Err(HeapError::CarrierTooLarge(n));
    }
    for a in 0..n {
        for b in 0..n {
            if let Some(v) = malcev_violation(hp, a, b) {
                return Err(HeapError::NotAHeap(v));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if let Some(v) = associativity_violation(hp, [a, b, c, d, e]) {
                            return Err(HeapError::NotAHeap(v));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Randomized check for heaps above the exhaustive bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledCheck {
    pub samples: usize,
    pub violation: Option<HeapViolation>,
    /// Sampling gives evidence, not proof.
    pub note: String,
}

pub fn check_heap_sampled(hp: &FiniteHeap, samples: usize, rng: &mut impl Rng) -> SampledCheck {
    let n = hp.size();
    let mut violation = None;
    if n > 0 {
        for _ in 0..samples {
            let t: [usize; 5] = std::array::from_fn(|_| rng.random_range(0..n));
            violation = malcev_violation(hp, t[0], t[1]).or_else(|| associativity_violation(hp, t));
            if violation.is_some() {
                break;
            }
        }
    }
    SampledCheck {
        samples,
        note: format!(
            "randomized: {samples} uniform 5-tuples out of {}; absence of a violation is not a proof",
            (n as u128).pow(5)
        ),
        violation,
    }
}

/// The "middle" associativity `<a, <d, c, b>, e> = <<a, b, c>, d, e>`.
/// Follows from the heap axioms; checked separately as a derived property.
pub fn check_middle_associativity(hp: &FiniteHeap) -> Result<(), HeapViolation> {
    let n = hp.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = hp.op(a, b, c);
                for d in 0..n {
                    let dcb = hp.op(d, c, b);
                    for e in 0..n {
                        if hp.op(a, dcb, e) != hp.op(abc, d, e) {
                            return Err(HeapViolation::MiddleAssociativity([a, b, c, d, e]));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A finite group as a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    carrier: Vec<String>,
    table: Vec<usize>,
    unit: usize,
}

impl FiniteGroup {
    pub fn new(carrier: Vec<String>, table: Vec<usize>, unit: usize) -> Result<Self, HeapError> {
        let n = carrier.len();
        if table.len() != n * n {
            return Err(HeapError::BadTable {
                expected: n * n,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().chain(std::iter::once(&unit)).find(|&&x| x >= n) {
            return Err(HeapError::NotInCarrier(bad));
        }
        let g = Self {
            carrier,
            table,
            unit,
        };
        for a in 0..n {
            if g.mul(unit, a) != a || g.mul(a, unit) != a {
                return Err(HeapError::NotAGroup(vec![unit, a]));
            }
            if !(0..n).any(|b| g.mul(a, b) == unit && g.mul(b, a) == unit) {
                return Err(HeapError::NotAGroup(vec![a]));
            }
            for b in 0..n {
                for c in 0..n {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(HeapError::NotAGroup(vec![a, b, c]));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn from_fn(carrier: Vec<String>, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self, HeapError> {
        let n = carrier.len();
        let table = (0..n * n).map(|i| mul(i / n, i % n)).collect();
        Self::new(carrier, table, unit)
    }

    /// `Z/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), 0, |a, b| (a + b) % n)
            .expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The symmetric group on `n` letters, elements in lexicographic order of
    /// their one-line notation, product `(s * t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Self {
        use itertools::Itertools;
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("permutation");
        let names = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<String>())
            .collect();
        Self::from_fn(names, 0, |a, b| {
            let prod: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index(&prod)
        })
        .expect("symmetric group")
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }
    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }
    pub fn unit(&self) -> usize {
        self.unit
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }
    pub fn inverse(&self, a: usize) -> usize {
        (0..self.size())
            .find(|&b| self.mul(a, b) == self.unit)
            .expect("group elements are invertible")
    }
}

/// `<g, h, i> = g h^-1 i`
pub fn heap_from_group(g: &FiniteGroup) -> FiniteHeap {
    FiniteHeap::from_fn(g.carrier.clone(), |a, b, c| g.mul(g.mul(a, g.inverse(b)), c))
}

/// `g .e h = <g, e, h>` with unit `e`.
pub fn group_from_pointed_heap(hp: &FiniteHeap, e: usize) -> Result<FiniteGroup, HeapError> {
    if hp.size() == 0 {
        return Err(HeapError::EmptyHeap);
    }
    if e >= hp.size() {
        return Err(HeapError::NotInCarrier(e));
    }
    FiniteGroup::from_fn(hp.carrier.clone(), e, |a, b| hp.op(a, e, b))
}

/// `f(<a, b, c>) = <f(a), f(b), f(c)>` on every triple; `Err` carries the
/// first failing triple.
pub fn is_heap_morphism(f: &[usize], a: &FiniteHeap, b: &FiniteHeap) -> Result<(), [usize; 3]> {
    assert_eq!(f.len(), a.size(), "map must be total on the source carrier");
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if f[a.op(x, y, z)] != b.op(f[x], f[y], f[z]) {
                    return Err([x, y, z]);
                }
            }
        }
    }
    Ok(())
}

/// Quotient by a partition into classes, provided the law is well defined
/// on classes. Class `i` of the result is `orbits[i]`.
pub fn quotient_heap(hp: &FiniteHeap, orbits: &[Vec<usize>]) -> Result<FiniteHeap, HeapError> {
    let n = hp.size();
    let mut class_of = vec![usize::MAX; n];
    for (ci, orbit) in orbits.iter().enumerate() {
        if orbit.is_empty() {
            return Err(HeapError::NotAPartition);
        }
        for &x in orbit {
            if x >= n || class_of[x] != usize::MAX {
                return Err(HeapError::NotAPartition);
            }
            class_of[x] = ci;
        }
    }
    if class_of.contains(&usize::MAX) {
        return Err(HeapError::NotAPartition);
    }
    let k = orbits.len();
    let mut law = vec![0; k * k * k];
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let reference = [orbits[a][0], orbits[b][0], orbits[c][0]];
                let target = class_of[hp.op(reference[0], reference[1], reference[2])];
                for &x in &orbits[a] {
                    for &y in &orbits[b] {
                        for &z in &orbits[c] {
                            if class_of[hp.op(x, y, z)] != target {
                                return Err(HeapError::IllDefined(reference, [x, y, z]));
                            }
                        }
                    }
                }
                law[(a * k + b) * k + c] = target;
            }
        }
    }
    let carrier = orbits
        .iter()
        .map(|o| {
            let names: Vec<&str> = o.iter().map(|&x| hp.carrier[x].as_str()).collect();
            format!("[{}]", names.join(","))
        })
        .collect();
    FiniteHeap::new(carrier, law)
}

/// Heap file format: `{ "carrier": [ids], "law": [[i, j, k, result], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HeapFile {
    pub carrier: Vec<String>,
    pub law: Vec<[usize; 4]>,
}

impl From<&FiniteHeap> for HeapFile {
    fn from(hp: &FiniteHeap) -> Self {
        let n = hp.size();
        let mut law = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    law.push([a, b, c, hp.op(a, b, c)]);
                }
            }
        }
        Self {
            carrier: hp.carrier.clone(),
            law,
        }
    }
}

impl TryFrom<HeapFile> for FiniteHeap {
    type Error = HeapError;

    fn try_from(file: HeapFile) -> Result<Self, HeapError> {
        let n = file.carrier.len();
        let mut law = vec![usize::MAX; n * n * n];
        for [a, b, c, r] in file.law {
            if a >= n || b >= n || c >= n {
                return Err(HeapError::NotInCarrier(a.max(b).max(c)));
            }
            law[(a * n + b) * n + c] = r;
        }
        if law.contains(&usize::MAX) {
            return Err(HeapError::BadTable {
                expected: n * n * n,
                got: law.iter().filter(|&&x| x != usize::MAX).count(),
            });
        }
        FiniteHeap::new(file.carrier, law)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_heap() -> FiniteHeap {
        FiniteHeap::from_fn(vec!["0".into(), "1".into()], |a, b, c| (a + b + c) % 2)
    }

    #[test]
    fn empty_heap_is_a_heap() {
        assert_eq!(check_heap(&FiniteHeap::empty()), Ok(()));
        assert_eq!(
            group_from_pointed_heap(&FiniteHeap::empty(), 0),
            Err(HeapError::EmptyHeap)
        );
    }

    #[test]
    fn z2_sum_law() {
        assert_eq!(check_heap(&z2_heap()), Ok(()));
        assert_eq!(heap_from_group(&FiniteGroup::cyclic(2)), z2_heap());
    }

    #[test]
    fn corrupted_z3_fails() {
        let hp = heap_from_group(&FiniteGroup::cyclic(3));
        let bad = hp.with_law_entry(1, 2, 0, (hp.op(1, 2, 0) + 1) % 3);
        assert!(matches!(check_heap(&bad), Err(HeapError::NotAHeap(_))));
    }

    #[test]
    fn trivial_group_gives_singleton() {
        let hp = heap_from_group(&FiniteGroup::trivial());
        assert_eq!(hp.size(), 1);
        assert_eq!(check_heap(&hp), Ok(()));
    }

    #[test]
    fn pointing_z2_at_one() {
        let g = group_from_pointed_heap(&z2_heap(), 1).unwrap();
        assert_eq!(g.unit(), 1);
        assert_eq!(g.mul(0, 0), 1);
        assert_eq!(g.mul(0, 1), 0);
    }

    #[test]
    fn constant_maps_are_morphisms() {
        let a = heap_from_group(&FiniteGroup::symmetric(3));
        let b = heap_from_group(&FiniteGroup::cyclic(3));
        for c in 0..3 {
            assert_eq!(is_heap_morphism(&[c; 6], &a, &b), Ok(()));
        }
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(is_heap_morphism(&id, &a, &a), Ok(()));
    }

    #[test]
    fn quotient_extremes() {
        let hp = heap_from_group(&FiniteGroup::cyclic(4));
        let singletons: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
        let q = quotient_heap(&hp, &singletons).unwrap();
        assert_eq!((0..64).map(|i| q.op(i / 16, i / 4 % 4, i % 4)).collect::<Vec<_>>(),
                   (0..64).map(|i| hp.op(i / 16, i / 4 % 4, i % 4)).collect::<Vec<_>>());
        let one = quotient_heap(&hp, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(one.size(), 1);
        // cosets of {0, 2} in Z/4 are fine, {0, 1} is not a subgroup
        assert!(quotient_heap(&hp, &[vec![0, 2], vec![1, 3]]).is_ok());
        assert!(matches!(
            quotient_heap(&hp, &[vec![0, 1], vec![2, 3]]),
            Err(HeapError::IllDefined(..))
        ));
        assert_eq!(quotient_heap(&hp, &[vec![0, 1]]), Err(HeapError::NotAPartition));
    }

    #[test]
    fn large_heaps_need_sampling() {
        let hp = heap_from_group(&FiniteGroup::cyclic(65));
        assert_eq!(check_heap(&hp), Err(HeapError::CarrierTooLarge(65)));
        let mut rng = rand::rng();
        let s = check_heap_sampled(&hp, 2000, &mut rng);
        assert!(s.violation.is_none());
    }

    #[test]
    fn file_round_trip() {
        let hp = heap_from_group(&FiniteGroup::symmetric(3));
        let text = serde_json::to_string(&HeapFile::from(&hp)).unwrap();
        let back: HeapFile = serde_json::from_str(&text).unwrap();
        assert_eq!(FiniteHeap::try_from(back).unwrap(), hp);
    }
}
