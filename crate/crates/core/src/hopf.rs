//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! Conventions: `mult` holds `(i, j, k, c)` for `e_i e_j = ... + c e_k`,
//! `comult` holds `(i, j, k, c)` for `Delta(e_i) = ... + c e_j (x) e_k`, and the
//! antipode matrix has `S(e_j) = sum_i S[i][j] e_i`. Functionals (characters,
//! the counit) are coordinate covectors `beta_i = beta(e_i)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exalg::{self, ExalgError, Field, Matrix, Tensor3};
use crate::heap::{FiniteHeap, HeapError};

/// Default cap on visited search nodes for the exhaustive scans.
pub const DEFAULT_MAX_SCAN: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error(transparent)]
    Exalg(#[from] ExalgError),
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("field {0} is infinite; exhaustive enumeration needs a prime field")]
    FieldNotEnumerable(String),
    #[error("search exceeded the scan limit of {0} candidates")]
    SearchSpaceTooLarge(u64),
    #[error("element is not group-like")]
    NotGroupLike,
    #[error("functional is not a character")]
    NotACharacter,
    #[error(transparent)]
    Heap(#[from] HeapError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct HopfAlgebra<F: Field> {
    name: String,
    field: F,
    dim: usize,
    basis: Vec<String>,
    mult: Tensor3<F>,
    unit: Vec<F::Elem>,
    comult: Tensor3<F>,
    counit: Vec<F::Elem>,
    antipode: Matrix<F>,
}

impl<F: Field> fmt::Debug for HopfAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({}, dim {}, over {})", self.name, self.dim, self.field.kind())
    }
}

impl<F: Field> HopfAlgebra<F> {
    /// Assemble structure maps after checking their shapes. Axioms are not
    /// checked here; see [`check_axioms`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        field: F,
        dim: usize,
        mult: Tensor3<F>,
        unit: Vec<F::Elem>,
        comult: Tensor3<F>,
        counit: Vec<F::Elem>,
        antipode: Matrix<F>,
    ) -> Result<Self, HopfError> {
        if mult.dims() != (dim, dim, dim) {
            return Err(HopfError::Shape(format!("mult has dims {:?}", mult.dims())));
        }
        if comult.dims() != (dim, dim, dim) {
            return Err(HopfError::Shape(format!("comult has dims {:?}", comult.dims())));
        }
        if unit.len() != dim || counit.len() != dim {
            return Err(HopfError::Shape("unit/counit length differs from dim".into()));
        }
        if antipode.rows() != dim || antipode.cols() != dim {
            return Err(HopfError::Shape("antipode is not dim x dim".into()));
        }
        Ok(Self {
            name: name.into(),
            field,
            dim,
            basis: (0..dim).map(|i| format!("e{i}")).collect(),
            mult,
            unit,
            comult,
            counit,
            antipode,
        })
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim, "one name per basis vector");
        self.basis = names;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }
    pub fn mult(&self) -> &Tensor3<F> {
        &self.mult
    }
    pub fn comult(&self) -> &Tensor3<F> {
        &self.comult
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn counit(&self) -> &[F::Elem] {
        &self.counit
    }
    pub fn antipode(&self) -> &Matrix<F> {
        &self.antipode
    }

    pub fn with_mult(&self, mult: Tensor3<F>) -> Self {
        Self { mult, ..self.clone() }
    }
    pub fn with_comult(&self, comult: Tensor3<F>) -> Self {
        Self { comult, ..self.clone() }
    }
    pub fn with_antipode(&self, antipode: Matrix<F>) -> Self {
        Self { antipode, ..self.clone() }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        exalg::basis_vector(&self.field, self.dim, i)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.mult.bilinear(x, y)
    }

    /// `Delta(x)`, indexed `j * dim + k`.
    pub fn comul(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.comult.colinear(x)
    }

    pub fn eval_counit(&self, x: &[F::Elem]) -> F::Elem {
        exalg::dot(&self.field, &self.counit, x)
    }

    pub fn apply_antipode(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.antipode.apply(x)
    }

    /// Product in `H (x) H` of two dense tensors.
    pub fn mul_tensor2(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = exalg::zeros(f, n * n);
        for (xi, xc) in exalg::support(f, x) {
            for (yi, yc) in exalg::support(f, y) {
                let c = f.mul(&xc, &yc);
                for (k1, c1) in self.mult.pair_terms(xi / n, yi / n) {
                    let c1 = f.mul(&c, c1);
                    for (k2, c2) in self.mult.pair_terms(xi % n, yi % n) {
                        let idx = k1 * n + k2;
                        out[idx] = f.add(&out[idx], &f.mul(&c1, c2));
                    }
                }
            }
        }
        out
    }

    /// Terms `(x, y, z, c)` of `(Delta (x) id) Delta(e_a)`.
    pub fn coproduct2(&self, a: usize) -> Vec<(usize, usize, usize, F::Elem)> {
        let f = &self.field;
        let mut terms = Vec::new();
        for (u, z, c) in self.comult.first_terms(a) {
            for (x, y, d) in self.comult.first_terms(*u) {
                terms.push((*x, *y, *z, f.mul(c, d)));
            }
        }
        terms
    }

    /// Evaluate a functional on a vector.
    pub fn pair(&self, functional: &[F::Elem], x: &[F::Elem]) -> F::Elem {
        exalg::dot(&self.field, functional, x)
    }

    /// `beta o S` as a covector.
    pub fn functional_after_antipode(&self, beta: &[F::Elem]) -> Vec<F::Elem> {
        (0..self.dim)
            .map(|i| exalg::dot(&self.field, beta, &self.antipode.column(i)))
            .collect()
    }

    /// Convolution `(a * b)(x) = a(x1) b(x2)` of two functionals.
    pub fn convolve(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.dim)
            .map(|i| {
                self.comult
                    .first_terms(i)
                    .iter()
                    .fold(f.zero(), |acc, (j, k, c)| {
                        f.add(&acc, &f.mul(c, &f.mul(&a[*j], &b[*k])))
                    })
            })
            .collect()
    }

    /// Name of `x` if it is (a scalar multiple of) a basis vector.
    pub fn describe(&self, x: &[F::Elem]) -> String {
        let f = &self.field;
        let terms = exalg::support(f, x);
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(i, c)| {
                if f.is_one(c) {
                    self.basis[*i].clone()
                } else {
                    format!("{}*{}", f.to_json(c), self.basis[*i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

// ---------------------------------------------------------------------------
// axioms

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First failing basis tuple.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn first_witness(tuples: impl IntoIterator<Item = Vec<usize>>, mut fails: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    tuples.into_iter().find(|t| fails(t))
}

fn check(name: &'static str, witness: Option<Vec<usize>>) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

fn singles(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).map(|a| vec![a])
}

fn pairs(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n * n).map(move |i| vec![i / n, i % n])
}

fn triples(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n * n * n).map(move |i| vec![i / (n * n), i / n % n, i % n])
}

/// Associativity and unitality of an algebra given by structure constants.
pub(crate) fn algebra_axioms<F: Field>(field: &F, mult: &Tensor3<F>, unit: &[F::Elem]) -> Vec<AxiomCheck> {
    let n = unit.len();
    let e = |i| exalg::basis_vector(field, n, i);
    let assoc = first_witness(triples(n), |t| {
        let ab = mult.bilinear(&e(t[0]), &e(t[1]));
        let bc = mult.bilinear(&e(t[1]), &e(t[2]));
        mult.bilinear(&ab, &e(t[2])) != mult.bilinear(&e(t[0]), &bc)
    });
    let left_unit = first_witness(singles(n), |t| mult.bilinear(unit, &e(t[0])) != e(t[0]));
    let right_unit = first_witness(singles(n), |t| mult.bilinear(&e(t[0]), unit) != e(t[0]));
    vec![
        check("associativity", assoc),
        check("left unit", left_unit),
        check("right unit", right_unit),
    ]
}

/// Verify every Hopf algebra axiom exactly on basis tuples.
pub fn check_axioms<F: Field>(h: &HopfAlgebra<F>) -> AxiomReport {
    let f = &h.field;
    let n = h.dim;
    let e = |i| h.basis_vector(i);
    let mut checks = algebra_axioms(f, &h.mult, &h.unit);

    let delta: Vec<Vec<F::Elem>> = (0..n).map(|i| h.comul(&e(i))).collect();
    // (Delta (x) id) and (id (x) Delta) applied to a dense element of H (x) H
    let delta_left = |x: &[F::Elem]| {
        let mut out = exalg::zeros(f, n * n * n);
        for (idx, c) in exalg::support(f, x) {
            let (u, z) = (idx / n, idx % n);
            for (a, b, d) in h.comult.first_terms(u) {
                let k = (a * n + b) * n + z;
                out[k] = f.add(&out[k], &f.mul(&c, d));
            }
        }
        out
    };
    let delta_right = |x: &[F::Elem]| {
        let mut out = exalg::zeros(f, n * n * n);
        for (idx, c) in exalg::support(f, x) {
            let (a, u) = (idx / n, idx % n);
            for (b, z, d) in h.comult.first_terms(u) {
                let k = (a * n + b) * n + z;
                out[k] = f.add(&out[k], &f.mul(&c, d));
            }
        }
        out
    };
    let coassoc = first_witness(singles(n), |t| delta_left(&delta[t[0]]) != delta_right(&delta[t[0]]));
    let counit_left = first_witness(singles(n), |t| {
        let mut out = exalg::zeros(f, n);
        for (idx, c) in exalg::support(f, &delta[t[0]]) {
            out[idx % n] = f.add(&out[idx % n], &f.mul(&c, &h.counit[idx / n]));
        }
        out != e(t[0])
    });
    let counit_right = first_witness(singles(n), |t| {
        let mut out = exalg::zeros(f, n);
        for (idx, c) in exalg::support(f, &delta[t[0]]) {
            out[idx / n] = f.add(&out[idx / n], &f.mul(&c, &h.counit[idx % n]));
        }
        out != e(t[0])
    });
    checks.push(check("coassociativity", coassoc));
    checks.push(check("left counit", counit_left));
    checks.push(check("right counit", counit_right));

    let comult_mult = first_witness(pairs(n), |t| {
        let prod = h.mul(&e(t[0]), &e(t[1]));
        h.comul(&prod) != h.mul_tensor2(&delta[t[0]], &delta[t[1]])
    });
    let comult_unit = (h.comul(&h.unit) != exalg::kron(f, &h.unit, &h.unit)).then(Vec::new);
    let counit_mult = first_witness(pairs(n), |t| {
        let prod = h.mul(&e(t[0]), &e(t[1]));
        h.eval_counit(&prod) != f.mul(&h.counit[t[0]], &h.counit[t[1]])
    });
    let counit_unit = (!f.is_one(&h.eval_counit(&h.unit))).then(Vec::new);
    checks.push(check("comultiplication multiplicative", comult_mult));
    checks.push(check("comultiplication unital", comult_unit));
    checks.push(check("counit multiplicative", counit_mult));
    checks.push(check("counit unital", counit_unit));

    let s_cols: Vec<Vec<F::Elem>> = (0..n).map(|i| h.antipode.column(i)).collect();
    let convolve_side = |a: usize, left: bool| {
        let mut out = exalg::zeros(f, n);
        for (j, k, c) in h.comult.first_terms(a) {
            let prod = if left {
                h.mul(&s_cols[*j], &e(*k))
            } else {
                h.mul(&e(*j), &s_cols[*k])
            };
            exalg::axpy(f, &mut out, c, &prod);
        }
        out
    };
    let antipode_left = first_witness(singles(n), |t| {
        convolve_side(t[0], true) != exalg::scale(f, &h.counit[t[0]], &h.unit)
    });
    let antipode_right = first_witness(singles(n), |t| {
        convolve_side(t[0], false) != exalg::scale(f, &h.counit[t[0]], &h.unit)
    });
    checks.push(check("antipode left", antipode_left));
    checks.push(check("antipode right", antipode_right));
    checks.push(check(
        "antipode invertible",
        h.antipode.invert().is_err().then(Vec::new),
    ));
    AxiomReport { checks }
}

/// `S o S`.
pub fn antipode_squared<F: Field>(h: &HopfAlgebra<F>) -> Matrix<F> {
    h.antipode.mat_mul(&h.antipode).expect("square matrix")
}

/// The dual Hopf algebra on the dual basis: multiplication is the transpose
/// of the comultiplication and vice versa, the unit is the counit, and the
/// antipode is the transpose.
pub fn dual<F: Field>(h: &HopfAlgebra<F>) -> HopfAlgebra<F> {
    let f = &h.field;
    let n = h.dim;
    let mult = Tensor3::new(
        f,
        (n, n, n),
        h.comult.entries().iter().map(|(i, j, k, c)| (*j, *k, *i, c.clone())),
    )
    .expect("transpose of a well-formed tensor");
    let comult = Tensor3::new(
        f,
        (n, n, n),
        h.mult.entries().iter().map(|(i, j, k, c)| (*k, *i, *j, c.clone())),
    )
    .expect("transpose of a well-formed tensor");
    HopfAlgebra {
        name: format!("{}*", h.name),
        field: f.clone(),
        dim: n,
        basis: h.basis.iter().map(|b| format!("{b}*")).collect(),
        mult,
        unit: h.counit.clone(),
        comult,
        counit: h.unit.clone(),
        antipode: h.antipode.transpose(),
    }
}

// ---------------------------------------------------------------------------
// group-likes and characters

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLike<F: Field> {
    pub element: Vec<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character<F: Field> {
    pub functional: Vec<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairInInvolution<F: Field> {
    pub beta: Character<F>,
    pub g: GroupLike<F>,
}

impl<F: Field> GroupLike<F> {
    pub fn is_group_like(h: &HopfAlgebra<F>, x: &[F::Elem]) -> bool {
        h.field.is_one(&h.eval_counit(x)) && h.comul(x) == exalg::kron(&h.field, x, x)
    }

    pub fn new(h: &HopfAlgebra<F>, element: Vec<F::Elem>) -> Result<Self, HopfError> {
        if Self::is_group_like(h, &element) {
            Ok(Self { element })
        } else {
            Err(HopfError::NotGroupLike)
        }
    }

    pub fn one(h: &HopfAlgebra<F>) -> Self {
        Self {
            element: h.unit.clone(),
        }
    }

    /// `g^-1 = S(g)`.
    pub fn inverse(&self, h: &HopfAlgebra<F>) -> Self {
        Self {
            element: h.apply_antipode(&self.element),
        }
    }

    pub fn mul(&self, other: &Self, h: &HopfAlgebra<F>) -> Self {
        Self {
            element: h.mul(&self.element, &other.element),
        }
    }
}

impl<F: Field> Character<F> {
    pub fn is_character(h: &HopfAlgebra<F>, beta: &[F::Elem]) -> bool {
        let f = &h.field;
        if !f.is_one(&h.pair(beta, &h.unit)) {
            return false;
        }
        (0..h.dim).all(|i| {
            (0..h.dim).all(|j| {
                let prod = h.mul(&h.basis_vector(i), &h.basis_vector(j));
                h.pair(beta, &prod) == f.mul(&beta[i], &beta[j])
            })
        })
    }

    pub fn new(h: &HopfAlgebra<F>, functional: Vec<F::Elem>) -> Result<Self, HopfError> {
        if Self::is_character(h, &functional) {
            Ok(Self { functional })
        } else {
            Err(HopfError::NotACharacter)
        }
    }

    /// The counit, the unit of the character group.
    pub fn counit(h: &HopfAlgebra<F>) -> Self {
        Self {
            functional: h.counit.clone(),
        }
    }

    /// `beta^-1 = beta o S`.
    pub fn inverse(&self, h: &HopfAlgebra<F>) -> Self {
        Self {
            functional: h.functional_after_antipode(&self.functional),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self, h: &HopfAlgebra<F>) -> Self {
        Self {
            functional: h.convolve(&self.functional, &other.functional),
        }
    }

    pub fn eval(&self, h: &HopfAlgebra<F>, x: &[F::Elem]) -> F::Elem {
        h.pair(&self.functional, x)
    }
}

/// Human-readable labels used in reports: the counit is `eps`, other
/// characters are listed by their values.
pub fn character_label<F: Field>(h: &HopfAlgebra<F>, beta: &Character<F>) -> String {
    if beta.functional == h.counit {
        return "eps".into();
    }
    let values: Vec<String> = beta
        .functional
        .iter()
        .zip(&h.basis)
        .map(|(v, b)| format!("{b}:{}", h.field.to_json(v)))
        .collect();
    format!("beta({})", values.join(","))
}

pub fn group_like_label<F: Field>(h: &HopfAlgebra<F>, g: &GroupLike<F>) -> String {
    h.describe(&g.element)
}

/// A system `x_a x_b = sum_k c_k x_k` (one per quadratic constraint) plus a
/// single linear constraint `sum_k l_k x_k = 1`, solved by exhaustive
/// backtracking over the prime field. Every constraint is tested as soon as
/// its highest-indexed variable is assigned, so the traversal visits the
/// full candidate space minus provably dead branches.
/// `(a, b, coefficients)`: the product `x_a x_b` with its coefficient in
/// each equation.
type QuadraticTerm<F> = (usize, usize, Vec<(usize, <F as Field>::Elem)>);

struct QuadraticSystem<F: Field> {
    field: F,
    vars: usize,
    // bucketed by the largest variable index involved
    quadratic: Vec<Vec<QuadraticTerm<F>>>,
    linear: Vec<(usize, F::Elem)>,
    linear_last: usize,
}

impl<F: Field> QuadraticSystem<F> {
    fn new(field: &F, vars: usize, linear: Vec<(usize, F::Elem)>) -> Self {
        let linear_last = linear.iter().map(|(i, _)| *i).max().unwrap_or(0);
        Self {
            field: field.clone(),
            vars,
            quadratic: vec![Vec::new(); vars],
            linear,
            linear_last,
        }
    }

    fn push(&mut self, a: usize, b: usize, rhs: Vec<(usize, F::Elem)>) {
        let last = rhs.iter().map(|(i, _)| *i).chain([a, b]).max().expect("nonempty");
        self.quadratic[last].push((a, b, rhs));
    }

    fn solve(&self, max_nodes: u64) -> Result<Vec<Vec<F::Elem>>, HopfError> {
        let elements = self
            .field
            .elements()
            .ok_or_else(|| HopfError::FieldNotEnumerable(self.field.kind().to_string()))?;
        let mut assignment = vec![self.field.zero(); self.vars];
        let mut solutions = Vec::new();
        let mut nodes = 0u64;
        self.extend(0, &elements, &mut assignment, &mut solutions, &mut nodes, max_nodes)?;
        Ok(solutions)
    }

    fn satisfied(&self, t: usize, x: &[F::Elem]) -> bool {
        let f = &self.field;
        if t == self.linear_last {
            let lhs = self
                .linear
                .iter()
                .fold(f.zero(), |acc, (i, c)| f.add(&acc, &f.mul(c, &x[*i])));
            if !f.is_one(&lhs) {
                return false;
            }
        }
        self.quadratic[t].iter().all(|(a, b, rhs)| {
            let r = rhs
                .iter()
                .fold(f.zero(), |acc, (i, c)| f.add(&acc, &f.mul(c, &x[*i])));
            f.mul(&x[*a], &x[*b]) == r
        })
    }

    fn extend(
        &self,
        t: usize,
        elements: &[F::Elem],
        x: &mut Vec<F::Elem>,
        out: &mut Vec<Vec<F::Elem>>,
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Result<(), HopfError> {
        if t == self.vars {
            out.push(x.clone());
            return Ok(());
        }
        for v in elements {
            *nodes += 1;
            if *nodes > max_nodes {
                return Err(HopfError::SearchSpaceTooLarge(max_nodes));
            }
            x[t] = v.clone();
            if self.satisfied(t, x) {
                self.extend(t + 1, elements, x, out, nodes, max_nodes)?;
            }
        }
        Ok(())
    }
}

/// All group-likes, by exhaustive search over coordinate vectors (prime
/// fields only). Results come in lexicographic coordinate order.
pub fn enumerate_group_likes<F: Field>(h: &HopfAlgebra<F>) -> Result<Vec<GroupLike<F>>, HopfError> {
    enumerate_group_likes_bounded(h, DEFAULT_MAX_SCAN)
}

pub fn enumerate_group_likes_bounded<F: Field>(
    h: &HopfAlgebra<F>,
    max_scan: u64,
) -> Result<Vec<GroupLike<F>>, HopfError> {
    let f = &h.field;
    let n = h.dim;
    let linear = exalg::support(f, &h.counit);
    let mut sys = QuadraticSystem::new(f, n, linear);
    // Delta(g)_{jk} = g_j g_k
    let mut rhs: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); n * n];
    for (i, j, k, c) in h.comult.entries() {
        rhs[j * n + k].push((*i, c.clone()));
    }
    for (idx, r) in rhs.into_iter().enumerate() {
        sys.push(idx / n, idx % n, r);
    }
    Ok(sys
        .solve(max_scan)?
        .into_iter()
        .map(|element| GroupLike { element })
        .collect())
}

/// All characters (multiplicative unital functionals), by exhaustive search.
pub fn enumerate_characters<F: Field>(h: &HopfAlgebra<F>) -> Result<Vec<Character<F>>, HopfError> {
    enumerate_characters_bounded(h, DEFAULT_MAX_SCAN)
}

pub fn enumerate_characters_bounded<F: Field>(
    h: &HopfAlgebra<F>,
    max_scan: u64,
) -> Result<Vec<Character<F>>, HopfError> {
    let f = &h.field;
    let n = h.dim;
    let linear = exalg::support(f, &h.unit);
    let mut sys = QuadraticSystem::new(f, n, linear);
    // beta(e_i e_j) = beta_i beta_j
    for i in 0..n {
        for j in 0..n {
            sys.push(i, j, h.mult.pair_terms(i, j).to_vec());
        }
    }
    Ok(sys
        .solve(max_scan)?
        .into_iter()
        .map(|functional| Character { functional })
        .collect())
}

// ---------------------------------------------------------------------------
// adjoint actions and pairs in involution

/// `Ad_g(x) = g x g^-1`.
pub fn adjoint_action_group_like<F: Field>(h: &HopfAlgebra<F>, g: &GroupLike<F>) -> Result<Matrix<F>, HopfError> {
    let inv = g.inverse(h);
    if h.mul(&g.element, &inv.element) != h.unit {
        return Err(ExalgError::NotInvertible.into());
    }
    let cols: Vec<Vec<F::Elem>> = (0..h.dim)
        .map(|a| h.mul(&h.mul(&g.element, &h.basis_vector(a)), &inv.element))
        .collect();
    Ok(Matrix::from_columns(&h.field, h.dim, &cols))
}

/// `Ad_beta(x) = beta(x1) x2 beta(S(x3))`.
pub fn adjoint_action_character<F: Field>(h: &HopfAlgebra<F>, beta: &Character<F>) -> Matrix<F> {
    let f = &h.field;
    let inv = beta.inverse(h);
    let cols: Vec<Vec<F::Elem>> = (0..h.dim)
        .map(|a| {
            let mut col = exalg::zeros(f, h.dim);
            for (x, y, z, c) in h.coproduct2(a) {
                let coeff = f.mul(&c, &f.mul(&beta.functional[x], &inv.functional[z]));
                col[y] = f.add(&col[y], &coeff);
            }
            col
        })
        .collect();
    Matrix::from_columns(f, h.dim, &cols)
}

/// Does `Ad_g = Ad_beta S^2` hold?
pub fn is_pair_in_involution<F: Field>(h: &HopfAlgebra<F>, beta: &Character<F>, g: &GroupLike<F>) -> Result<bool, HopfError> {
    let ad_g = adjoint_action_group_like(h, g)?;
    let rhs = adjoint_action_character(h, beta).mat_mul(&antipode_squared(h))?;
    Ok(ad_g == rhs)
}

/// All pairs `(beta, g)` in `Char(h) x Gr(h)` with `Ad_g = Ad_beta S^2`,
/// ordered by character then group-like.
pub fn find_pairs_in_involution<F: Field>(h: &HopfAlgebra<F>) -> Result<Vec<PairInInvolution<F>>, HopfError> {
    find_pairs_in_involution_bounded(h, DEFAULT_MAX_SCAN)
}

pub fn find_pairs_in_involution_bounded<F: Field>(
    h: &HopfAlgebra<F>,
    max_scan: u64,
) -> Result<Vec<PairInInvolution<F>>, HopfError> {
    let chars = enumerate_characters_bounded(h, max_scan)?;
    let groups = enumerate_group_likes_bounded(h, max_scan)?;
    let s2 = antipode_squared(h);
    let mut out = Vec::new();
    for beta in &chars {
        let rhs = adjoint_action_character(h, beta).mat_mul(&s2)?;
        for g in &groups {
            if adjoint_action_group_like(h, g)? == rhs {
                out.push(PairInInvolution {
                    beta: beta.clone(),
                    g: g.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Componentwise heap law `<p1, p2, p3> = (b1 b2^-1 b3, g1 g2^-1 g3)`.
pub fn pair_heap_law<F: Field>(
    h: &HopfAlgebra<F>,
    a: &PairInInvolution<F>,
    b: &PairInInvolution<F>,
    c: &PairInInvolution<F>,
) -> PairInInvolution<F> {
    PairInInvolution {
        beta: a.beta.mul(&b.beta.inverse(h), h).mul(&c.beta, h),
        g: a.g.mul(&b.g.inverse(h), h).mul(&c.g, h),
    }
}

pub fn pair_label<F: Field>(h: &HopfAlgebra<F>, p: &PairInInvolution<F>) -> String {
    format!("({}, {})", character_label(h, &p.beta), group_like_label(h, &p.g))
}

/// The heap on a set of pairs; fails with the first triple whose product
/// leaves the set.
pub fn pii_heap<F: Field>(h: &HopfAlgebra<F>, pairs: &[PairInInvolution<F>]) -> Result<FiniteHeap, HopfError> {
    let n = pairs.len();
    let mut law = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let r = pair_heap_law(h, &pairs[a], &pairs[b], &pairs[c]);
                let idx = pairs
                    .iter()
                    .position(|p| *p == r)
                    .ok_or(HeapError::ClosureViolation([a, b, c]))?;
                law.push(idx);
            }
        }
    }
    let carrier = pairs.iter().map(|p| pair_label(h, p)).collect();
    Ok(FiniteHeap::new(carrier, law)?)
}
