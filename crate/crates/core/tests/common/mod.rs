//! Brute-force oracles shared by the integration tests. They work from raw
//! structure constants or from the bare composition engine and never call
//! the enumeration code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use pivotal_workbench::exalg::{Field, Matrix, PrimeField};
use pivotal_workbench::freecat::{self as fc, Diagram};
use pivotal_workbench::hopf::HopfAlgebra;
use rand::rngs::StdRng;
use rand::Rng;

pub type H = HopfAlgebra<PrimeField>;

/// Every vector of `F_p^n`, lexicographically.
pub fn all_vectors(p: u64, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = code % p;
            code /= p;
        }
        v
    })
}

/// Group-likes straight from the comultiplication constants.
pub fn oracle_group_likes(h: &H) -> BTreeSet<Vec<u64>> {
    let p = h.field().modulus();
    let n = h.dim();
    all_vectors(p, n)
        .filter(|g| {
            let eps: u64 = g.iter().zip(h.counit()).map(|(a, b)| a * b).sum::<u64>() % p;
            if eps != 1 {
                return false;
            }
            let mut delta = vec![0u64; n * n];
            for (i, j, k, c) in h.comult().entries() {
                delta[j * n + k] = (delta[j * n + k] + c * g[*i]) % p;
            }
            (0..n).all(|j| (0..n).all(|k| delta[j * n + k] == g[j] * g[k] % p))
        })
        .collect()
}

/// Characters straight from the multiplication constants.
pub fn oracle_characters(h: &H) -> BTreeSet<Vec<u64>> {
    let p = h.field().modulus();
    let n = h.dim();
    all_vectors(p, n)
        .filter(|b| {
            let on_unit: u64 = b.iter().zip(h.unit()).map(|(x, y)| x * y).sum::<u64>() % p;
            if on_unit != 1 {
                return false;
            }
            let mut prod = vec![0u64; n * n];
            for (i, j, k, c) in h.mult().entries() {
                prod[i * n + j] = (prod[i * n + j] + c * b[*k]) % p;
            }
            (0..n).all(|i| (0..n).all(|j| prod[i * n + j] == b[i] * b[j] % p))
        })
        .collect()
}

/// `g x g^-1 == beta(y1) S^2(y)_2 beta^-1(y3)` with `y = S^2(x)`, assembled
/// from products, coproducts and antipodes of basis vectors.
pub fn oracle_is_pair(h: &H, beta: &[u64], g: &[u64]) -> bool {
    let f = h.field();
    let n = h.dim();
    let g_inv = h.apply_antipode(g);
    let beta_inv: Vec<u64> = (0..n)
        .map(|a| h.pair(beta, &h.apply_antipode(&h.basis_vector(a))))
        .collect();
    (0..n).all(|a| {
        let x = h.basis_vector(a);
        let lhs = h.mul(&h.mul(g, &x), &g_inv);
        let y = h.apply_antipode(&h.apply_antipode(&x));
        let mut rhs = vec![0; n];
        let dy = h.comul(&y);
        for (t, c) in dy.iter().enumerate().filter(|(_, c)| **c != 0) {
            let (y1, rest) = (t / n, t % n);
            let d2 = h.comul(&h.basis_vector(rest));
            for (t2, c2) in d2.iter().enumerate().filter(|(_, c)| **c != 0) {
                let (y2, y3) = (t2 / n, t2 % n);
                let coeff = f.mul(&f.mul(c, c2), &f.mul(&beta[y1], &beta_inv[y3]));
                rhs[y2] = f.add(&rhs[y2], &coeff);
            }
        }
        lhs == rhs
    })
}

/// A copy of `h` with one structure constant shifted by a nonzero amount.
pub fn mutate(h: &H, rng: &mut StdRng, round: usize) -> (String, H) {
    let f = h.field();
    let n = h.dim();
    let p = f.modulus();
    let delta = rng.random_range(1..p);
    let (i, j, k) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
    match round % 4 {
        0 => {
            let old = h.mult().get(i, j, k);
            (format!("mult[{i},{j},{k}]"), h.with_mult(h.mult().with_entry(i, j, k, (old + delta) % p)))
        }
        1 => {
            let old = h.comult().get(i, j, k);
            (format!("comult[{i},{j},{k}]"), h.with_comult(h.comult().with_entry(i, j, k, (old + delta) % p)))
        }
        2 => {
            let mut s: Matrix<PrimeField> = h.antipode().clone();
            let old = *s.get(i, j);
            s.set(i, j, (old + delta) % p);
            (format!("antipode[{i},{j}]"), h.with_antipode(s))
        }
        _ => {
            let mut counit = h.counit().to_vec();
            counit[i] = (counit[i] + delta) % p;
            let m = HopfAlgebra::new(
                h.name(),
                *f,
                n,
                h.mult().clone(),
                h.unit().to_vec(),
                h.comult().clone(),
                counit,
                h.antipode().clone(),
            )
            .unwrap();
            (format!("counit[{i}]"), m)
        }
    }
}

fn id(n: usize) -> Diagram {
    Diagram::identity(n)
}

fn c(g: &Diagram, f: &Diagram) -> Diagram {
    fc::compose(g, f).unwrap()
}

fn t(f: &Diagram, g: &Diagram) -> Diagram {
    fc::tensor(f, g)
}

/// Every loop-free morphism `X^n -> X^m`.
pub fn all_loop_free(n: usize, m: usize) -> Vec<Diagram> {
    fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let Some((&first, rest)) = points.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        for (k, &q) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| *p).collect();
            for mut tail in matchings(&remaining) {
                tail.push((first, q));
                out.push(tail);
            }
        }
        out
    }
    if (n + m) % 2 == 1 {
        return Vec::new();
    }
    let points: Vec<usize> = (0..n + m).collect();
    let mut out = Vec::new();
    for pairs in matchings(&points) {
        let k = pairs.len();
        for bits in 0..1u32 << k {
            let strands = pairs.iter().enumerate().map(|(i, &(a, b))| (a, b, ((bits >> i) & 1) as u8));
            out.push(Diagram::new(n, m, strands, (0, 0)).unwrap());
        }
    }
    out
}

/// `chi_{Y, X^k}` from a width-one component `chi: X^{n+1} -> X^{1+n}`.
pub fn extend(chi: &Diagram, n: usize, k: usize) -> Diagram {
    let mut out = id(n);
    for i in 0..k {
        // chi_{Y, X^i ⊗ X} = (id_{X^i} ⊗ chi) ∘ (chi_{Y, X^i} ⊗ id_X)
        out = c(&t(&id(i), chi), &t(&out, &id(1)));
    }
    out
}

/// Half-braidings on `X^n` found by brute force: every automorphism of
/// `X^{n+1}` whose extension is natural against rho, sigma, ev and coev.
pub fn oracle_half_braidings(n: usize) -> BTreeSet<Diagram> {
    let g = fc::generators();
    let gens = [g.rho, g.sigma, g.ev, g.coev];
    fc::all_automorphisms(n + 1)
        .into_iter()
        .filter(|chi| {
            gens.iter().all(|gen| {
                let (a, b) = (gen.source(), gen.target());
                let lhs = c(&extend(chi, n, b), &t(&id(n), gen));
                let rhs = c(&t(gen, &id(n)), &extend(chi, n, a));
                lhs == rhs
            })
        })
        .collect()
}

