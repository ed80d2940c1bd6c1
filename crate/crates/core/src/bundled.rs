//! The bundled example algebras, written from their defining presentations.
//! Every constructor here is validated by `check_axioms` in the tests.

use crate::exalg::{self, Field, Matrix, PrimeField, Rationals, Tensor3};
use crate::heap::FiniteGroup;
use crate::hopf::HopfAlgebra;

/// Names accepted by [`by_name`], in canonical order.
pub const BUNDLED: [&str; 5] = ["kc2_f5", "kc3_f7", "sweedler_f5", "taft3_f7", "s3_f7"];

pub fn by_name(name: &str) -> Option<HopfAlgebra<PrimeField>> {
    match name {
        "kc2_f5" => Some(kc2_f5()),
        "kc3_f7" => Some(kc3_f7()),
        "sweedler_f5" => Some(sweedler_f5()),
        "taft3_f7" => Some(taft3_f7()),
        "s3_f7" => Some(s3_f7()),
        _ => None,
    }
}

pub fn all() -> Vec<HopfAlgebra<PrimeField>> {
    BUNDLED.iter().map(|n| by_name(n).expect("bundled name")).collect()
}

/// The group algebra `kG`: `e_g e_h = e_gh`, `Delta(e_g) = e_g (x) e_g`,
/// `eps = 1`, `S(e_g) = e_{g^-1}`.
pub fn group_algebra<F: Field>(name: &str, field: F, group: &FiniteGroup) -> HopfAlgebra<F> {
    let n = group.size();
    let one = field.one();
    let mult = Tensor3::new(
        &field,
        (n, n, n),
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, group.mul(a, b), one.clone())),
    )
    .expect("group table is well-formed");
    let comult = Tensor3::new(&field, (n, n, n), (0..n).map(|a| (a, a, a, one.clone())))
        .expect("diagonal tensor");
    let unit = exalg::basis_vector(&field, n, group.unit());
    let counit = vec![one; n];
    let cols: Vec<_> = (0..n)
        .map(|a| exalg::basis_vector(&field, n, group.inverse(a)))
        .collect();
    let antipode = Matrix::from_columns(&field, n, &cols);
    HopfAlgebra::new(name, field, n, mult, unit, comult, counit, antipode)
        .expect("group algebra shapes")
        .with_basis_names(group.carrier().to_vec())
}

fn cyclic_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{a}"),
        })
        .collect()
}

fn cyclic_algebra<F: Field>(name: &str, field: F, n: usize) -> HopfAlgebra<F> {
    group_algebra(name, field, &FiniteGroup::cyclic(n)).with_basis_names(cyclic_names(n))
}

pub fn kc2_f5() -> HopfAlgebra<PrimeField> {
    cyclic_algebra("kc2_f5", PrimeField::new(5).expect("prime"), 2)
}

pub fn kc3_f7() -> HopfAlgebra<PrimeField> {
    cyclic_algebra("kc3_f7", PrimeField::new(7).expect("prime"), 3)
}

pub fn kc2_rationals() -> HopfAlgebra<Rationals> {
    cyclic_algebra("kc2_q", Rationals, 2)
}

pub fn s3_f7() -> HopfAlgebra<PrimeField> {
    group_algebra("s3_f7", PrimeField::new(7).expect("prime"), &FiniteGroup::symmetric(3))
}

/// Sweedler's four-dimensional algebra over F_5: the Taft algebra with
/// `n = 2`, `q = -1`. Basis `(1, g, x, gx)`.
pub fn sweedler_f5() -> HopfAlgebra<PrimeField> {
    let f = PrimeField::new(5).expect("prime");
    let q = f.from_i64(-1);
    taft("sweedler_f5", f, 2, q)
}

/// The Taft algebra of dimension 9 over F_7 with `q = 2`.
pub fn taft3_f7() -> HopfAlgebra<PrimeField> {
    let f = PrimeField::new(7).expect("prime");
    taft("taft3_f7", f, 3, 2)
}

/// Taft algebra `T_n(q)`: generated by `g, x` with `g^n = 1`, `x^n = 0`,
/// `x g = q g x`, `Delta(g) = g (x) g`, `Delta(x) = x (x) 1 + g (x) x`,
/// `S(g) = g^-1`, `S(x) = -g^-1 x`. Basis `g^a x^b` at index `a + n b`.
///
/// Only the algebra structure is written out by hand; `Delta` and `S` are
/// extended from the generators as an algebra map and an anti-algebra map.
pub fn taft<F: Field>(name: &str, field: F, n: usize, q: F::Elem) -> HopfAlgebra<F> {
    let dim = n * n;
    let idx = |a: usize, b: usize| a % n + n * b;
    let q_pow = |e: usize| (0..e).fold(field.one(), |acc, _| field.mul(&acc, &q));
    let mut mult = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if b + d < n {
                        // x^b g^c = q^{bc} g^c x^b
                        mult.push((idx(a, b), idx(c, d), idx(a + c, b + d), q_pow(b * c)));
                    }
                }
            }
        }
    }
    let mult = Tensor3::new(&field, (dim, dim, dim), mult).expect("taft multiplication");
    let unit = exalg::basis_vector(&field, dim, 0);
    let mut counit = exalg::zeros(&field, dim);
    for a in 0..n {
        counit[idx(a, 0)] = field.one();
    }
    // provisional structure: correct algebra, placeholder coalgebra
    let placeholder = Tensor3::new(&field, (dim, dim, dim), Vec::new()).expect("empty");
    let base = HopfAlgebra::new(
        name,
        field.clone(),
        dim,
        mult.clone(),
        unit.clone(),
        placeholder,
        counit.clone(),
        Matrix::identity(&field, dim),
    )
    .expect("taft shapes");

    let e = |i| exalg::basis_vector(&field, dim, i);
    let g = e(idx(1, 0));
    let x = e(idx(0, 1));
    let delta_g = exalg::kron(&field, &g, &g);
    let mut delta_x = exalg::kron(&field, &x, &unit);
    exalg::axpy(&field, &mut delta_x, &field.one(), &exalg::kron(&field, &g, &x));
    let g_inv = e(idx(n - 1, 0));
    let s_g = g_inv.clone();
    let s_x = exalg::scale(&field, &field.from_i64(-1), &base.mul(&g_inv, &x));

    let mut comult = Vec::new();
    let mut s_cols = vec![Vec::new(); dim];
    for a in 0..n {
        for b in 0..n {
            // Delta(g^a x^b) = Delta(g)^a Delta(x)^b
            let mut d = exalg::kron(&field, &unit, &unit);
            let mut s = unit.clone();
            for _ in 0..a {
                d = base.mul_tensor2(&d, &delta_g);
                s = base.mul(&s_g, &s);
            }
            for _ in 0..b {
                d = base.mul_tensor2(&d, &delta_x);
                s = base.mul(&s_x, &s);
            }
            for (t, c) in exalg::support(&field, &d) {
                comult.push((idx(a, b), t / dim, t % dim, c));
            }
            s_cols[idx(a, b)] = s;
        }
    }
    let comult = Tensor3::new(&field, (dim, dim, dim), comult).expect("taft comultiplication");
    let antipode = Matrix::from_columns(&field, dim, &s_cols);
    let names = (0..dim)
        .map(|i| {
            let (a, b) = (i % n, i / n);
            let gp = match a {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{a}"),
            };
            let xp = match b {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{b}"),
            };
            if a == 0 && b == 0 {
                "1".to_string()
            } else {
                format!("{gp}{xp}")
            }
        })
        .collect();
    HopfAlgebra::new(name, field, dim, mult, unit, comult, counit, antipode)
        .expect("taft shapes")
        .with_basis_names(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_axioms;

    #[test]
    fn bundled_algebras_pass() {
        for h in all() {
            let report = check_axioms(&h);
            assert!(report.all_passed(), "{}: {:?}", h.name(), report.failures());
        }
        assert!(check_axioms(&kc2_rationals()).all_passed());
    }

    #[test]
    fn sweedler_presentation() {
        let h = sweedler_f5();
        assert_eq!(h.basis_names(), ["1", "g", "x", "gx"]);
        let e = |i| h.basis_vector(i);
        // x g = -g x
        assert_eq!(h.mul(&e(2), &e(1)), vec![0, 0, 0, 4]);
        // Delta(x) = x (x) 1 + g (x) x
        let mut expected = vec![0; 16];
        expected[2 * 4] = 1;
        expected[4 + 2] = 1;
        assert_eq!(h.comul(&e(2)), expected);
        // S(x) = -gx
        assert_eq!(h.apply_antipode(&e(2)), vec![0, 0, 0, 4]);
        assert_eq!(h.apply_antipode(&e(1)), e(1));
    }

    #[test]
    fn taft_dimension_and_order() {
        let h = taft3_f7();
        assert_eq!(h.dim(), 9);
        let g = h.basis_vector(1);
        let g3 = h.mul(&h.mul(&g, &g), &g);
        assert_eq!(g3, h.unit().to_vec());
        let x = h.basis_vector(3);
        assert_eq!(h.mul(&h.mul(&x, &x), &x), vec![0; 9]);
    }
}
