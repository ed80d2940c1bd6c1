//! Drinfeld double `D(H)` and anti-Drinfeld double `A(H)` on `H* (x) H`,
//! (anti-)Yetter-Drinfeld modules, and the correspondence between pairs in
//! involution, one-dimensional anti-Yetter-Drinfeld modules and algebra
//! isomorphisms `D(H) -> A(H)`.
//!
//! Conventions (right modules, left comodules `v -> v_{-1} (x) v_0`):
//!
//! * basis `e^i (x) e_a` of `H* (x) H` sits at index `i * n + a`;
//! * `H*` carries the convolution `(p q)(y) = p(y_1) q(y_2)`, and
//!   `v . p = p(v_{-1}) v_0` is a right action;
//! * `(p (x) a)(q (x) b) = p q' (x) a_2 b` with
//!   `q'(w) = q(T(a_3) w a_1)`, `T = S^-1` for `D(H)` and `T = S` for `A(H)`;
//! * YD compatibility `delta(v.h) = S^-1(h_3) v_{-1} h_1 (x) v_0 h_2`; the anti
//!   version replaces `S^-1(h_3)` by `S(h_3)`;
//! * an (anti-)YD module `V` becomes a right module over the double through
//!   `v . (p (x) a) = p(v_{-1}) v_0 . a`;
//! * `D(H)` has `Delta(p (x) a) = (p_2 (x) a_1) (x) (p_1 (x) a_2)` where
//!   `p(xy) = p_1(x) p_2(y)`, `S(p (x) a) = (eps (x) S(a)) (p o S^-1 (x) 1)`
//!   and `R = sum_i (eps (x) e_i) (x) (e^i (x) 1)`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exalg::{self, ExalgError, Field, Matrix, Tensor3};
use crate::heap::{self, FiniteHeap, HeapError};
use crate::hopf::{self, Character, GroupLike, HopfAlgebra, HopfError, PairInInvolution};
use crate::io::{self, HopfFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Exalg(#[from] ExalgError),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error("axiom `{0}` fails")]
    AxiomFailure(String),
    #[error("module structure does not match the double: {0}")]
    ConventionMismatch(String),
    #[error("twist is not an algebra isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("element is not a pivot of the double")]
    NotPivotal,
    #[error("operation needs the Drinfeld double")]
    NotDrinfeld,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DoubleKind {
    Drinfeld,
    Anti,
}

impl std::fmt::Display for DoubleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DoubleKind::Drinfeld => "drinfeld",
            DoubleKind::Anti => "anti",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct DrinfeldExtra<F: Field> {
    comult: Tensor3<F>,
    counit: Vec<F::Elem>,
    antipode: Matrix<F>,
    /// `R` as a dense element of `D (x) D`, index `u * N + v`.
    rmatrix: Vec<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleAlgebra<F: Field> {
    kind: DoubleKind,
    base: HopfAlgebra<F>,
    mult: Tensor3<F>,
    unit: Vec<F::Elem>,
    extra: Option<DrinfeldExtra<F>>,
}

/// Precomputed data of `H` shared by the constructions.
struct BaseData<F: Field> {
    n: usize,
    s: Matrix<F>,
    s_inv: Matrix<F>,
    /// `e^i e^j` in the convolution algebra, indexed `i * n + j`.
    conv: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> BaseData<F> {
    fn new(h: &HopfAlgebra<F>) -> Result<Self, DoubleError> {
        let n = h.dim();
        let s = h.antipode().clone();
        let s_inv = s.invert()?;
        let f = h.field();
        let mut conv: Vec<BTreeMap<usize, F::Elem>> = vec![BTreeMap::new(); n * n];
        // (e^i e^j)(e_y) = coefficient of e_i (x) e_j in Delta(e_y)
        for (y, u, v, c) in h.comult().entries() {
            let slot = conv[u * n + v].entry(*y).or_insert_with(|| f.zero());
            *slot = f.add(slot, c);
        }
        let conv = conv
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| !f.is_zero(c)).collect())
            .collect();
        Ok(Self {
            n,
            s,
            s_inv,
            conv,
        })
    }
}

fn idx(n: usize, i: usize, a: usize) -> usize {
    i * n + a
}

/// Multiplication table of the double of the given kind.
fn double_mult<F: Field>(h: &HopfAlgebra<F>, bd: &BaseData<F>, kind: DoubleKind) -> Tensor3<F> {
    let f = h.field();
    let n = bd.n;
    let big = n * n;
    let twist = match kind {
        DoubleKind::Drinfeld => &bd.s_inv,
        DoubleKind::Anti => &bd.s,
    };
    let t_cols: Vec<Vec<F::Elem>> = (0..n).map(|z| twist.column(z)).collect();
    // conj[(x, z)][w] = T(e_z) e_w e_x as a vector
    let mut conj: BTreeMap<(usize, usize), Vec<Vec<F::Elem>>> = BTreeMap::new();
    let mut entries = Vec::new();
    for a in 0..n {
        let d2 = h.coproduct2(a);
        for (x, _, z, _) in &d2 {
            conj.entry((*x, *z)).or_insert_with(|| {
                (0..n)
                    .map(|w| h.mul(&h.mul(&t_cols[*z], &h.basis_vector(w)), &h.basis_vector(*x)))
                    .collect()
            });
        }
        for i in 0..n {
            for j in 0..n {
                for b in 0..n {
                    for (x, y, z, c) in &d2 {
                        let table = &conj[&(*x, *z)];
                        for (w, row) in table.iter().enumerate() {
                            // q'(e_w) for q = e^j
                            let qw = &row[j];
                            if f.is_zero(qw) {
                                continue;
                            }
                            let coeff = f.mul(c, qw);
                            for (k, c1) in &bd.conv[i * n + w] {
                                let c1 = f.mul(&coeff, c1);
                                for (l, c2) in h.mult().pair_terms(*y, b) {
                                    entries.push((idx(n, i, a), idx(n, j, b), idx(n, *k, *l), f.mul(&c1, c2)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Tensor3::accumulate(f, (big, big, big), entries)
}

fn double_unit<F: Field>(h: &HopfAlgebra<F>) -> Vec<F::Elem> {
    exalg::kron(h.field(), h.counit(), h.unit())
}

impl<F: Field> DoubleAlgebra<F> {
    pub fn kind(&self) -> DoubleKind {
        self.kind
    }
    pub fn base(&self) -> &HopfAlgebra<F> {
        &self.base
    }
    pub fn dim(&self) -> usize {
        self.unit.len()
    }
    pub fn mult(&self) -> &Tensor3<F> {
        &self.mult
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn field(&self) -> &F {
        self.base.field()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.mult.bilinear(x, y)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        exalg::basis_vector(self.field(), self.dim(), i)
    }

    /// The element `p (x) a`.
    pub fn pure(&self, p: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        exalg::kron(self.field(), p, a)
    }

    pub fn basis_names(&self) -> Vec<String> {
        let names = self.base.basis_names();
        names
            .iter()
            .flat_map(|p| names.iter().map(move |a| format!("{p}*|{a}")))
            .collect()
    }

    /// The R-matrix as a dense element of `D (x) D`.
    pub fn rmatrix(&self) -> Option<&[F::Elem]> {
        self.extra.as_ref().map(|e| e.rmatrix.as_slice())
    }

    /// `D(H)` as a Hopf algebra; `None` for the anti-double.
    pub fn as_hopf(&self) -> Option<HopfAlgebra<F>> {
        let extra = self.extra.as_ref()?;
        let h = HopfAlgebra::new(
            format!("D({})", self.base.name()),
            self.field().clone(),
            self.dim(),
            self.mult.clone(),
            self.unit.clone(),
            extra.comult.clone(),
            extra.counit.clone(),
            extra.antipode.clone(),
        )
        .expect("double shapes")
        .with_basis_names(self.basis_names());
        Some(h)
    }

    pub fn name(&self) -> String {
        match self.kind {
            DoubleKind::Drinfeld => format!("D({})", self.base.name()),
            DoubleKind::Anti => format!("A({})", self.base.name()),
        }
    }

    /// Export in the structure-constant file format; the Drinfeld double
    /// carries its coalgebra, antipode and `rmatrix`.
    pub fn to_file(&self) -> HopfFile {
        let f = self.field();
        let mut file = HopfFile {
            name: self.name(),
            field: f.kind(),
            dim: self.dim(),
            basis: Some(self.basis_names()),
            mult: io::tensor_entries(f, &self.mult),
            unit: self.unit.iter().map(|c| f.to_json(c)).collect(),
            comult: None,
            counit: None,
            antipode: None,
            rmatrix: None,
        };
        if let Some(extra) = &self.extra {
            let big = self.dim();
            file.comult = Some(io::tensor_entries(f, &extra.comult));
            file.counit = Some(extra.counit.iter().map(|c| f.to_json(c)).collect());
            file.antipode = Some(io::matrix_entries(&extra.antipode));
            file.rmatrix = Some(
                exalg::support(f, &extra.rmatrix)
                    .into_iter()
                    .map(|(uv, c)| (uv / big, uv % big, f.to_json(&c)))
                    .collect(),
            );
        }
        file
    }
}

/// Build `D(H)`; the result is checked against the Hopf and
/// quasitriangularity axioms before it is returned.
fn check_input<F: Field>(h: &HopfAlgebra<F>) -> Result<(), DoubleError> {
    match hopf::check_axioms(h).first_failure() {
        Some(fail) => Err(DoubleError::AxiomFailure(format!("input {}", fail.name))),
        None => Ok(()),
    }
}

pub fn build_drinfeld_double<F: Field>(h: &HopfAlgebra<F>) -> Result<DoubleAlgebra<F>, DoubleError> {
    check_input(h)?;
    let d = build_drinfeld_double_unchecked(h)?;
    let hopf = d.as_hopf().expect("drinfeld");
    if let Some(fail) = hopf::check_axioms(&hopf).first_failure() {
        return Err(DoubleError::AxiomFailure(fail.name.to_string()));
    }
    if let Some(fail) = check_rmatrix(&d)?.first_failure() {
        return Err(DoubleError::AxiomFailure(fail.name.to_string()));
    }
    Ok(d)
}

/// Build `D(H)` without running the axiom checks (they are `O(N^3)` in the
/// double's dimension).
pub fn build_drinfeld_double_unchecked<F: Field>(h: &HopfAlgebra<F>) -> Result<DoubleAlgebra<F>, DoubleError> {
    let bd = BaseData::new(h)?;
    let f = h.field();
    let n = bd.n;
    let big = n * n;
    let mult = double_mult(h, &bd, DoubleKind::Drinfeld);
    let unit = double_unit(h);

    let mut comult = Vec::new();
    for (u, v, i, c) in h.mult().entries() {
        for a in 0..n {
            for (x, y, d) in h.comult().first_terms(a) {
                comult.push((idx(n, *i, a), idx(n, *v, *x), idx(n, *u, *y), f.mul(c, d)));
            }
        }
    }
    let comult = Tensor3::accumulate(f, (big, big, big), comult);
    let counit: Vec<F::Elem> = (0..big)
        .map(|ia| f.mul(&h.unit()[ia / n], &h.counit()[ia % n]))
        .collect();

    let partial = DoubleAlgebra {
        kind: DoubleKind::Drinfeld,
        base: h.clone(),
        mult,
        unit,
        extra: None,
    };
    let mut s_cols = Vec::with_capacity(big);
    for i in 0..n {
        // e^i o S^-1 = sum_k S^-1[i][k] e^k
        let p_twisted: Vec<F::Elem> = (0..n).map(|k| bd.s_inv.get(i, k).clone()).collect();
        let right = partial.pure(&p_twisted, h.unit());
        for a in 0..n {
            let left = partial.pure(h.counit(), &bd.s.column(a));
            s_cols.push(partial.mul(&left, &right));
        }
    }
    let antipode = Matrix::from_columns(f, big, &s_cols);

    let mut rmatrix = exalg::zeros(f, big * big);
    for i in 0..n {
        let left = partial.pure(&h.basis_vector(i), h.unit());
        let right = partial.pure(h.counit(), &h.basis_vector(i));
        exalg::axpy(f, &mut rmatrix, &f.one(), &exalg::kron(f, &right, &left));
    }
    Ok(DoubleAlgebra {
        extra: Some(DrinfeldExtra {
            comult,
            counit,
            antipode,
            rmatrix,
        }),
        ..partial
    })
}

/// Build `A(H)`; associativity and unitality are checked.
pub fn build_anti_double<F: Field>(h: &HopfAlgebra<F>) -> Result<DoubleAlgebra<F>, DoubleError> {
    check_input(h)?;
    let a = build_anti_double_unchecked(h)?;
    if let Some(fail) = check_algebra(&a).into_iter().find(|c| !c.passed) {
        return Err(DoubleError::AxiomFailure(fail.name.to_string()));
    }
    Ok(a)
}

pub fn build_anti_double_unchecked<F: Field>(h: &HopfAlgebra<F>) -> Result<DoubleAlgebra<F>, DoubleError> {
    let bd = BaseData::new(h)?;
    Ok(DoubleAlgebra {
        kind: DoubleKind::Anti,
        base: h.clone(),
        mult: double_mult(h, &bd, DoubleKind::Anti),
        unit: double_unit(h),
        extra: None,
    })
}

pub fn build_double<F: Field>(h: &HopfAlgebra<F>, kind: DoubleKind) -> Result<DoubleAlgebra<F>, DoubleError> {
    match kind {
        DoubleKind::Drinfeld => build_drinfeld_double(h),
        DoubleKind::Anti => build_anti_double(h),
    }
}

/// Associativity and unit checks of either double.
pub fn check_algebra<F: Field>(d: &DoubleAlgebra<F>) -> Vec<hopf::AxiomCheck> {
    hopf::algebra_axioms(d.field(), &d.mult, &d.unit)
}

// ---------------------------------------------------------------------------
// tensor powers of D

/// Product in `D^{(x) k}` of dense tensors (lexicographic leg order).
fn mul_power<F: Field>(d: &DoubleAlgebra<F>, k: usize, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let f = d.field();
    let big = d.dim();
    let mut out = exalg::zeros(f, x.len());
    let ys = exalg::support(f, y);
    for (xi, xc) in exalg::support(f, x) {
        for (yi, yc) in &ys {
            let mut terms = vec![(0usize, f.mul(&xc, yc))];
            for leg in (0..k).rev() {
                let place = big.pow(leg as u32);
                let (xl, yl) = (xi / place % big, yi / place % big);
                let mut next = Vec::new();
                for (t, c) in &terms {
                    for (l, cl) in d.mult.pair_terms(xl, yl) {
                        next.push((t * big + l, f.mul(c, cl)));
                    }
                }
                terms = next;
            }
            for (t, c) in terms {
                out[t] = f.add(&out[t], &c);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RMatrixReport {
    pub checks: Vec<hopf::AxiomCheck>,
}

impl RMatrixReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn first_failure(&self) -> Option<&hopf::AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Quasitriangularity of `D(H)`: `R` invertible with inverse `(S (x) id) R`,
/// `Delta^op(x) R = R Delta(x)`, `(Delta (x) id) R = R_13 R_23` and
/// `(id (x) Delta) R = R_13 R_12`.
pub fn check_rmatrix<F: Field>(d: &DoubleAlgebra<F>) -> Result<RMatrixReport, DoubleError> {
    let extra = d.extra.as_ref().ok_or(DoubleError::NotDrinfeld)?;
    let f = d.field();
    let big = d.dim();
    let r = &extra.rmatrix;
    let r_terms = exalg::support(f, r);
    let unit = &d.unit;
    let unit2 = exalg::kron(f, unit, unit);

    let mut r_inv = exalg::zeros(f, big * big);
    for (uv, c) in &r_terms {
        let su = extra.antipode.column(uv / big);
        for (s, cs) in exalg::support(f, &su) {
            let t = s * big + uv % big;
            r_inv[t] = f.add(&r_inv[t], &f.mul(c, &cs));
        }
    }
    let invertible = mul_power(d, 2, r, &r_inv) == unit2 && mul_power(d, 2, &r_inv, r) == unit2;

    let delta = |x: usize| extra.comult.colinear(&exalg::basis_vector(f, big, x));
    let flip = |t: &[F::Elem]| {
        let mut out = exalg::zeros(f, t.len());
        for (uv, c) in exalg::support(f, t) {
            out[(uv % big) * big + uv / big] = c;
        }
        out
    };
    let conj = (0..big).find(|&x| {
        let dx = delta(x);
        mul_power(d, 2, &flip(&dx), r) != mul_power(d, 2, r, &dx)
    });

    // legs placed into D^{(x)3}
    let place = |positions: [usize; 2]| {
        let mut out = exalg::zeros(f, big * big * big);
        for (uv, c) in &r_terms {
            for (w, cw) in exalg::support(f, unit) {
                let mut legs = [w; 3];
                legs[positions[0]] = uv / big;
                legs[positions[1]] = uv % big;
                let t = (legs[0] * big + legs[1]) * big + legs[2];
                out[t] = f.add(&out[t], &f.mul(c, &cw));
            }
        }
        out
    };
    let (r12, r13, r23) = (place([0, 1]), place([0, 2]), place([1, 2]));
    let mut delta_left = exalg::zeros(f, big * big * big);
    let mut delta_right = exalg::zeros(f, big * big * big);
    for (uv, c) in &r_terms {
        let (u, v) = (uv / big, uv % big);
        for (a, b, cd) in extra.comult.first_terms(u) {
            let t = (a * big + b) * big + v;
            delta_left[t] = f.add(&delta_left[t], &f.mul(c, cd));
        }
        for (a, b, cd) in extra.comult.first_terms(v) {
            let t = (u * big + a) * big + b;
            delta_right[t] = f.add(&delta_right[t], &f.mul(c, cd));
        }
    }
    let left_ok = delta_left == mul_power(d, 3, &r13, &r23);
    let right_ok = delta_right == mul_power(d, 3, &r13, &r12);
    let flag = |ok: bool| (!ok).then(Vec::new);
    Ok(RMatrixReport {
        checks: vec![
            hopf::AxiomCheck {
                name: "R invertible",
                passed: invertible,
                witness: flag(invertible),
            },
            hopf::AxiomCheck {
                name: "Delta^op R = R Delta",
                passed: conj.is_none(),
                witness: conj.map(|x| vec![x]),
            },
            hopf::AxiomCheck {
                name: "(Delta x id) R = R13 R23",
                passed: left_ok,
                witness: flag(left_ok),
            },
            hopf::AxiomCheck {
                name: "(id x Delta) R = R13 R12",
                passed: right_ok,
                witness: flag(right_ok),
            },
        ],
    })
}

// ---------------------------------------------------------------------------
// (anti-)Yetter-Drinfeld modules

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Yd,
    Ayd,
}

impl Flavor {
    pub fn double_kind(self) -> DoubleKind {
        match self {
            Flavor::Yd => DoubleKind::Drinfeld,
            Flavor::Ayd => DoubleKind::Anti,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDModule<F: Field> {
    pub dim: usize,
    /// `(v, a, w, c)`: `e_v . e_a = sum c e_w`.
    pub action: Tensor3<F>,
    /// `(v, x, w, c)`: `delta(e_v) = sum c e_x (x) e_w`.
    pub coaction: Tensor3<F>,
    pub flavor: Flavor,
}

impl<F: Field> YDModule<F> {
    /// The one-dimensional module `k_beta` with coaction `1 -> g (x) 1`.
    pub fn one_dim(h: &HopfAlgebra<F>, beta: &Character<F>, g: &GroupLike<F>, flavor: Flavor) -> Self {
        let f = h.field();
        let n = h.dim();
        let action = Tensor3::new(f, (1, n, 1), (0..n).map(|a| (0, a, 0, beta.functional[a].clone())))
            .expect("one-dimensional action");
        let coaction = Tensor3::new(f, (1, n, 1), (0..n).map(|x| (0, x, 0, g.element[x].clone())))
            .expect("one-dimensional coaction");
        Self {
            dim: 1,
            action,
            coaction,
            flavor,
        }
    }

    /// The trivial module: action by the counit, coaction `v -> 1 (x) v`.
    pub fn trivial(h: &HopfAlgebra<F>, flavor: Flavor) -> Self {
        Self::one_dim(h, &Character::counit(h), &GroupLike::one(h), flavor)
    }

    /// `H` acting on itself by right multiplication, with the coaction
    /// `v -> T(v_3) v_1 (x) v_2` (`T = S^-1` for YD, `T = S` for anti-YD).
    pub fn regular(h: &HopfAlgebra<F>, flavor: Flavor) -> Result<Self, DoubleError> {
        let f = h.field();
        let n = h.dim();
        let twist = match flavor {
            Flavor::Yd => h.antipode().invert()?,
            Flavor::Ayd => h.antipode().clone(),
        };
        let mut entries = Vec::new();
        for v in 0..n {
            for (x, y, z, c) in h.coproduct2(v) {
                let left = h.mul(&twist.column(z), &h.basis_vector(x));
                for (k, ck) in exalg::support(f, &left) {
                    entries.push((v, k, y, f.mul(&c, &ck)));
                }
            }
        }
        Ok(Self {
            dim: n,
            action: h.mult().clone(),
            coaction: Tensor3::accumulate(f, (n, n, n), entries),
            flavor,
        })
    }

    pub fn act(&self, v: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        self.action.bilinear(v, a)
    }

    /// `delta(v)` indexed `x * dim + w`.
    pub fn coact(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.coaction.colinear(v)
    }
}

/// `V (x) W` with `(v (x) w) . h = v . h_1 (x) w . h_2` and
/// `delta(v (x) w) = w_{-1} v_{-1} (x) v_0 (x) w_0`. A YD module tensored
/// with an anti-YD module is anti-YD; `None` for other flavor combinations.
pub fn tensor_modules<F: Field>(h: &HopfAlgebra<F>, v: &YDModule<F>, w: &YDModule<F>) -> Option<YDModule<F>> {
    let flavor = match (v.flavor, w.flavor) {
        (Flavor::Yd, Flavor::Yd) => Flavor::Yd,
        (Flavor::Yd, Flavor::Ayd) => Flavor::Ayd,
        _ => return None,
    };
    let f = h.field();
    let (dv, dw) = (v.dim, w.dim);
    let dim = dv * dw;
    let mut action = Vec::new();
    for i in 0..dv {
        for j in 0..dw {
            for a in 0..h.dim() {
                for (a1, a2, c) in h.comult().first_terms(a) {
                    for (k, ck) in v.action.pair_terms(i, *a1) {
                        for (l, cl) in w.action.pair_terms(j, *a2) {
                            action.push((i * dw + j, a, k * dw + l, f.mul(c, &f.mul(ck, cl))));
                        }
                    }
                }
            }
        }
    }
    let mut coaction = Vec::new();
    for i in 0..dv {
        for j in 0..dw {
            for (x, k, ck) in v.coaction.first_terms(i) {
                for (y, l, cl) in w.coaction.first_terms(j) {
                    for (z, cz) in h.mult().pair_terms(*y, *x) {
                        coaction.push((i * dw + j, *z, k * dw + l, f.mul(cz, &f.mul(ck, cl))));
                    }
                }
            }
        }
    }
    Some(YDModule {
        dim,
        action: Tensor3::accumulate(f, (dim, h.dim(), dim), action),
        coaction: Tensor3::accumulate(f, (dim, h.dim(), dim), coaction),
        flavor,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatResult {
    pub passed: bool,
    pub failed_check: Option<&'static str>,
    /// Basis indices `(a, v)` of the first failure.
    pub witness: Option<(usize, usize)>,
}

impl CompatResult {
    fn pass() -> Self {
        Self {
            passed: true,
            failed_check: None,
            witness: None,
        }
    }
    fn fail(check: &'static str, witness: (usize, usize)) -> Self {
        Self {
            passed: false,
            failed_check: Some(check),
            witness: Some(witness),
        }
    }
}

/// Module, comodule and compatibility axioms of an (anti-)YD module.
pub fn yd_compat_check<F: Field>(h: &HopfAlgebra<F>, m: &YDModule<F>) -> CompatResult {
    let f = h.field();
    let n = h.dim();
    let md = m.dim;
    if m.action.dims() != (md, n, md) || m.coaction.dims() != (md, n, md) {
        return CompatResult::fail("dimensions", (0, 0));
    }
    let ev = |v| exalg::basis_vector(f, md, v);
    for v in 0..md {
        if m.act(&ev(v), h.unit()) != ev(v) {
            return CompatResult::fail("unital action", (0, v));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = h.mul(&h.basis_vector(a), &h.basis_vector(b));
                if m.act(&ev(v), &ab) != m.act(&m.act(&ev(v), &h.basis_vector(a)), &h.basis_vector(b)) {
                    return CompatResult::fail("associative action", (a * n + b, v));
                }
            }
        }
        let dv = m.coact(&ev(v));
        let mut counit_side = exalg::zeros(f, md);
        let mut left = exalg::zeros(f, n * n * md);
        let mut right = exalg::zeros(f, n * n * md);
        for (xw, c) in exalg::support(f, &dv) {
            let (x, w) = (xw / md, xw % md);
            counit_side[w] = f.add(&counit_side[w], &f.mul(&c, &h.counit()[x]));
            for (y, z, d) in h.comult().first_terms(x) {
                let t = (y * n + z) * md + w;
                left[t] = f.add(&left[t], &f.mul(&c, d));
            }
            for (z, u, d) in m.coaction.first_terms(w) {
                let t = (x * n + z) * md + u;
                right[t] = f.add(&right[t], &f.mul(&c, d));
            }
        }
        if counit_side != ev(v) {
            return CompatResult::fail("counital coaction", (0, v));
        }
        if left != right {
            return CompatResult::fail("coassociative coaction", (0, v));
        }
    }

    let twist = match m.flavor {
        Flavor::Ayd => h.antipode().clone(),
        Flavor::Yd => match h.antipode().invert() {
            Ok(s) => s,
            Err(_) => return CompatResult::fail("invertible antipode", (0, 0)),
        },
    };
    for a in 0..n {
        let d2 = h.coproduct2(a);
        for v in 0..md {
            let lhs = m.coact(&m.act(&ev(v), &h.basis_vector(a)));
            let mut rhs = exalg::zeros(f, n * md);
            for (xw, c) in exalg::support(f, &m.coact(&ev(v))) {
                let (x, w) = (xw / md, xw % md);
                for (a1, a2, a3, d) in &d2 {
                    let coeff = f.mul(&c, d);
                    let hpart = h.mul(&h.mul(&twist.column(*a3), &h.basis_vector(x)), &h.basis_vector(*a1));
                    let mpart = m.act(&ev(w), &h.basis_vector(*a2));
                    let term = exalg::kron(f, &hpart, &mpart);
                    exalg::axpy(f, &mut rhs, &coeff, &term);
                }
            }
            if lhs != rhs {
                let name = match m.flavor {
                    Flavor::Yd => "yd compatibility",
                    Flavor::Ayd => "ayd compatibility",
                };
                return CompatResult::fail(name, (a, v));
            }
        }
    }
    CompatResult::pass()
}

/// A right representation of a double: `v . e_x = matrices[x] v`, so that
/// `matrices` is an anti-homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleModule<F: Field> {
    pub dim: usize,
    pub matrices: Vec<Matrix<F>>,
}

impl<F: Field> DoubleModule<F> {
    pub fn represent(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = self.matrices[0].field();
        let mut out = Matrix::zero(f, self.dim, self.dim);
        for (i, c) in exalg::support(f, x) {
            for r in 0..self.dim {
                for s in 0..self.dim {
                    let v = f.add(out.get(r, s), &f.mul(&c, self.matrices[i].get(r, s)));
                    out.set(r, s, v);
                }
            }
        }
        out
    }

    /// One-dimensional module given by a functional on the double.
    pub fn from_character(field: &F, chi: &[F::Elem]) -> Self {
        Self {
            dim: 1,
            matrices: chi
                .iter()
                .map(|c| Matrix::from_rows(field, vec![vec![c.clone()]]).expect("1x1"))
                .collect(),
        }
    }
}

/// The action of the double induced by `v . (p (x) a) = p(v_{-1}) v_0 . a`.
pub fn induced_module<F: Field>(h: &HopfAlgebra<F>, m: &YDModule<F>) -> DoubleModule<F> {
    let f = h.field();
    let n = h.dim();
    let md = m.dim;
    let mut matrices = Vec::with_capacity(n * n);
    for i in 0..n {
        for a in 0..n {
            let cols: Vec<Vec<F::Elem>> = (0..md)
                .map(|v| {
                    let delta = m.coact(&exalg::basis_vector(f, md, v));
                    let mut col = exalg::zeros(f, md);
                    for w in 0..md {
                        let c = &delta[i * md + w];
                        if !f.is_zero(c) {
                            let wa = m.act(&exalg::basis_vector(f, md, w), &h.basis_vector(a));
                            exalg::axpy(f, &mut col, c, &wa);
                        }
                    }
                    col
                })
                .collect();
            matrices.push(Matrix::from_columns(f, md, &cols));
        }
    }
    DoubleModule { dim: md, matrices }
}

/// Is `rep` a unital right representation of `d`? Returns the first failing
/// pair of basis indices (`None` for the unit).
pub fn check_representation<F: Field>(d: &DoubleAlgebra<F>, rep: &DoubleModule<F>) -> Result<(), Option<(usize, usize)>> {
    if !rep.represent(d.unit()).is_identity() {
        return Err(None);
    }
    let big = d.dim();
    for x in 0..big {
        for y in 0..big {
            let prod = rep.represent(&d.mul(&d.basis_vector(x), &d.basis_vector(y)));
            let composed = rep.matrices[y].mat_mul(&rep.matrices[x]).expect("square");
            if prod != composed {
                return Err(Some((x, y)));
            }
        }
    }
    Ok(())
}

/// Verify that the module induced from `m` is a module over the double of
/// the matching kind.
pub fn module_correspondence_check<F: Field>(
    d: &DoubleAlgebra<F>,
    m: &YDModule<F>,
) -> Result<(), DoubleError> {
    if d.kind() != m.flavor.double_kind() {
        return Err(DoubleError::ConventionMismatch(format!(
            "{:?} module against {} double",
            m.flavor,
            d.kind()
        )));
    }
    let rep = induced_module(d.base(), m);
    check_representation(d, &rep).map_err(|w| {
        DoubleError::ConventionMismatch(match w {
            None => "unit does not act as identity".to_string(),
            Some((x, y)) => format!("product of basis elements {x} and {y}"),
        })
    })
}

/// All `(beta, g)` in `Char x Gr` for which `k_beta` with coaction `g (x) -`
/// is a module of the given flavor.
pub fn enumerate_one_dim<F: Field>(
    h: &HopfAlgebra<F>,
    flavor: Flavor,
    max_scan: u64,
) -> Result<Vec<PairInInvolution<F>>, DoubleError> {
    let chars = hopf::enumerate_characters_bounded(h, max_scan)?;
    let groups = hopf::enumerate_group_likes_bounded(h, max_scan)?;
    let mut out = Vec::new();
    for beta in &chars {
        for g in &groups {
            if yd_compat_check(h, &YDModule::one_dim(h, beta, g, flavor)).passed {
                out.push(PairInInvolution {
                    beta: beta.clone(),
                    g: g.clone(),
                });
            }
        }
    }
    Ok(out)
}

pub fn enumerate_one_dim_ayd<F: Field>(h: &HopfAlgebra<F>) -> Result<Vec<PairInInvolution<F>>, DoubleError> {
    enumerate_one_dim(h, Flavor::Ayd, hopf::DEFAULT_MAX_SCAN)
}

// ---------------------------------------------------------------------------
// isomorphisms D(H) -> A(H)

/// The twist `p (x) a -> sum beta^-1(a_2) p(g^-1 -) (x) a_1`. It is the
/// inverse of the algebra map `A(H) -> D(H)` obtained by tensoring a YD
/// module on the right with the one-dimensional anti-YD module `k_beta`
/// coacted on by `g`; it is an algebra isomorphism exactly when `(beta, g)`
/// is a pair in involution.
pub fn twist_map<F: Field>(h: &HopfAlgebra<F>, beta: &Character<F>, g: &GroupLike<F>) -> Matrix<F> {
    let f = h.field();
    let n = h.dim();
    let beta_inv = beta.inverse(h);
    let g_inv = g.inverse(h);
    // shifted[w] = g^-1 e_w, so (e^i(g^-1 -))(e_w) = shifted[w][i]
    let shifted: Vec<Vec<F::Elem>> = (0..n).map(|w| h.mul(&g_inv.element, &h.basis_vector(w))).collect();
    let mut cols = Vec::with_capacity(n * n);
    for i in 0..n {
        for a in 0..n {
            let mut col = exalg::zeros(f, n * n);
            for (a1, a2, c) in h.comult().first_terms(a) {
                let coeff = f.mul(c, &beta_inv.functional[*a2]);
                if f.is_zero(&coeff) {
                    continue;
                }
                for (w, row) in shifted.iter().enumerate() {
                    let t = idx(n, w, *a1);
                    col[t] = f.add(&col[t], &f.mul(&coeff, &row[i]));
                }
            }
            cols.push(col);
        }
    }
    Matrix::from_columns(f, n * n, &cols)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IsoFailure {
    NotInvertible,
    NotUnital,
    NotMultiplicative(usize, usize),
    Dimension,
}

/// Is `map` a unital algebra isomorphism `a -> b`?
pub fn is_algebra_iso<F: Field>(map: &Matrix<F>, a: &DoubleAlgebra<F>, b: &DoubleAlgebra<F>) -> Result<(), IsoFailure> {
    let big = a.dim();
    if map.rows() != b.dim() || map.cols() != big {
        return Err(IsoFailure::Dimension);
    }
    if map.invert().is_err() {
        return Err(IsoFailure::NotInvertible);
    }
    if map.apply(a.unit()) != b.unit() {
        return Err(IsoFailure::NotUnital);
    }
    let images: Vec<Vec<F::Elem>> = (0..big).map(|x| map.column(x)).collect();
    for x in 0..big {
        for y in 0..big {
            let lhs = map.apply(&a.mul(&a.basis_vector(x), &a.basis_vector(y)));
            if lhs != b.mul(&images[x], &images[y]) {
                return Err(IsoFailure::NotMultiplicative(x, y));
            }
        }
    }
    Ok(())
}

/// The isomorphism `D(H) -> A(H)` attached to a pair in involution, verified.
pub fn iso_from_pair<F: Field>(
    d: &DoubleAlgebra<F>,
    a: &DoubleAlgebra<F>,
    pair: &PairInInvolution<F>,
) -> Result<Matrix<F>, DoubleError> {
    let map = twist_map(d.base(), &pair.beta, &pair.g);
    is_algebra_iso(&map, d, a).map_err(|e| DoubleError::NotAnIsomorphism(format!("{e:?}")))?;
    Ok(map)
}

// ---------------------------------------------------------------------------
// symmetric objects, pivots and the heap morphisms

/// `(pi (x) id)(R_21 R) == id (x) 1` for the module `rep` of `D(H)`.
pub fn symmetric_test<F: Field>(d: &DoubleAlgebra<F>, rep: &DoubleModule<F>) -> Result<bool, DoubleError> {
    let r = d.rmatrix().ok_or(DoubleError::NotDrinfeld)?;
    let f = d.field();
    let big = d.dim();
    let mut r21 = exalg::zeros(f, big * big);
    for (uv, c) in exalg::support(f, r) {
        r21[(uv % big) * big + uv / big] = c;
    }
    let monodromy = mul_power(d, 2, &r21, r);
    // sum over first-leg basis elements: pi(e_u) (x) (coefficient vector)
    let md = rep.dim;
    for row in 0..md {
        for col in 0..md {
            let mut second = exalg::zeros(f, big);
            for (uv, c) in exalg::support(f, &monodromy) {
                let entry = rep.matrices[uv / big].get(row, col);
                second[uv % big] = f.add(&second[uv % big], &f.mul(&c, entry));
            }
            let expected = if row == col {
                d.unit().to_vec()
            } else {
                exalg::zeros(f, big)
            };
            if second != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The character `p (x) a -> p(gamma) beta(a)` of `D(H)`.
pub fn double_character<F: Field>(h: &HopfAlgebra<F>, beta: &Character<F>, gamma: &GroupLike<F>) -> Vec<F::Elem> {
    let f = h.field();
    let n = h.dim();
    (0..n * n)
        .map(|ia| f.mul(&gamma.element[ia / n], &beta.functional[ia % n]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotalElement<F: Field> {
    pub element: Vec<F::Elem>,
}

/// Is `l` group-like in `D(H)` with `S_D^2 = Ad_l`?
pub fn is_pivot<F: Field>(d: &DoubleAlgebra<F>, l: &[F::Elem]) -> Result<bool, DoubleError> {
    let hopf_d = d.as_hopf().ok_or(DoubleError::NotDrinfeld)?;
    if !GroupLike::is_group_like(&hopf_d, l) {
        return Ok(false);
    }
    let gl = GroupLike { element: l.to_vec() };
    let ad = hopf::adjoint_action_group_like(&hopf_d, &gl)?;
    Ok(ad == hopf::antipode_squared(&hopf_d))
}

/// Pivots among the candidates `chi (x) gamma`, `chi` a character and
/// `gamma` a group-like of `H`. Pivots outside this family are not searched.
pub fn pivotal_elements<F: Field>(d: &DoubleAlgebra<F>, max_scan: u64) -> Result<Vec<PivotalElement<F>>, DoubleError> {
    let h = d.base();
    let chars = hopf::enumerate_characters_bounded(h, max_scan)?;
    let groups = hopf::enumerate_group_likes_bounded(h, max_scan)?;
    let mut out = Vec::new();
    for chi in &chars {
        for gamma in &groups {
            let l = d.pure(&chi.functional, &gamma.element);
            if is_pivot(d, &l)? {
                out.push(PivotalElement { element: l });
            }
        }
    }
    Ok(out)
}

/// `kappa(beta, g) = beta^-1 (x) g`, checked to be a pivot.
pub fn kappa<F: Field>(d: &DoubleAlgebra<F>, pair: &PairInInvolution<F>) -> Result<PivotalElement<F>, DoubleError> {
    let h = d.base();
    let l = d.pure(&pair.beta.inverse(h).functional, &pair.g.element);
    if is_pivot(d, &l)? {
        Ok(PivotalElement { element: l })
    } else {
        Err(DoubleError::NotPivotal)
    }
}

/// The heap `<l1, l2, l3> = l1 l2^-1 l3` on a list of pivots (closure
/// verified).
pub fn pivot_heap<F: Field>(d: &DoubleAlgebra<F>, pivots: &[PivotalElement<F>]) -> Result<FiniteHeap, DoubleError> {
    let hopf_d = d.as_hopf().ok_or(DoubleError::NotDrinfeld)?;
    let n = pivots.len();
    let mut law = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            let ab = hopf_d.mul(&pivots[a].element, &hopf_d.apply_antipode(&pivots[b].element));
            for c in 0..n {
                let r = hopf_d.mul(&ab, &pivots[c].element);
                let i = pivots
                    .iter()
                    .position(|p| p.element == r)
                    .ok_or(HeapError::ClosureViolation([a, b, c]))?;
                law.push(i);
            }
        }
    }
    let carrier = pivots.iter().map(|p| hopf_d.describe(&p.element)).collect();
    Ok(FiniteHeap::new(carrier, law)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaReport {
    pub pairs: Vec<String>,
    pub pivots: Vec<String>,
    /// `kappa_table[i]` is the pivot index of pair `i`.
    pub kappa_table: Vec<usize>,
    pub is_heap_morphism: bool,
    pub morphism_witness: Option<[usize; 3]>,
}

/// Apply `kappa` to the pair heap and check it is a heap morphism into the
/// heap of pivots found among the candidate family.
pub fn kappa_report<F: Field>(d: &DoubleAlgebra<F>, pairs: &[PairInInvolution<F>], max_scan: u64) -> Result<KappaReport, DoubleError> {
    let h = d.base();
    let pair_heap = hopf::pii_heap(h, pairs)?;
    let pivots = pivotal_elements(d, max_scan)?;
    let piv_heap = pivot_heap(d, &pivots)?;
    let mut table = Vec::with_capacity(pairs.len());
    for p in pairs {
        let k = kappa(d, p)?;
        let i = pivots
            .iter()
            .position(|q| *q == k)
            .ok_or(DoubleError::NotPivotal)?;
        table.push(i);
    }
    let morphism = heap::is_heap_morphism(&table, &pair_heap, &piv_heap);
    let hopf_d = d.as_hopf().expect("drinfeld");
    Ok(KappaReport {
        pairs: pair_heap.carrier().to_vec(),
        pivots: pivots.iter().map(|p| hopf_d.describe(&p.element)).collect(),
        kappa_table: table,
        is_heap_morphism: morphism.is_ok(),
        morphism_witness: morphism.err(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IotaReport {
    /// One-dimensional D(H)-modules `(beta', gamma')` that are symmetric.
    pub symmetric_classes: Vec<String>,
    pub orbits: Vec<Vec<usize>>,
    pub orbit_count: usize,
    pub action_closed: bool,
    pub kappa_constant_on_orbits: bool,
    pub iota_injective: bool,
    /// Pivot index of each orbit.
    pub iota_table: Vec<usize>,
    pub quotient_size: usize,
}

impl IotaReport {
    pub fn passed(&self) -> bool {
        self.action_closed && self.kappa_constant_on_orbits && self.iota_injective
    }
}

/// Symmetric invertible classes act on the pair set by
/// `(beta', gamma') . (beta, g) = (beta' beta, gamma' g)`; compute the orbit
/// quotient of the pair heap and check that `kappa` descends to an injective
/// map on it.
pub fn quotient_and_iota_check<F: Field>(d: &DoubleAlgebra<F>, max_scan: u64) -> Result<IotaReport, DoubleError> {
    let h = d.base();
    let pairs = hopf::find_pairs_in_involution_bounded(h, max_scan)?;
    let chars = hopf::enumerate_characters_bounded(h, max_scan)?;
    let groups = hopf::enumerate_group_likes_bounded(h, max_scan)?;
    let mut symmetric = Vec::new();
    for beta in &chars {
        for gamma in &groups {
            // one-dimensional D(H)-modules are exactly the YD pairs
            if !yd_compat_check(h, &YDModule::one_dim(h, beta, gamma, Flavor::Yd)).passed {
                continue;
            }
            let rep = DoubleModule::from_character(h.field(), &double_character(h, beta, gamma));
            if symmetric_test(d, &rep)? {
                symmetric.push((beta.clone(), gamma.clone()));
            }
        }
    }
    let mut action_closed = true;
    let mut component: Vec<usize> = (0..pairs.len()).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for (i, p) in pairs.iter().enumerate() {
        for (beta, gamma) in &symmetric {
            let moved = PairInInvolution {
                beta: beta.mul(&p.beta, h),
                g: gamma.mul(&p.g, h),
            };
            match pairs.iter().position(|q| *q == moved) {
                Some(j) => {
                    let (ri, rj) = (find(&mut component, i), find(&mut component, j));
                    component[ri.max(rj)] = ri.min(rj);
                }
                None => action_closed = false,
            }
        }
    }
    let mut orbit_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..pairs.len() {
        let r = find(&mut component, i);
        orbit_map.entry(r).or_default().push(i);
    }
    let orbits: Vec<Vec<usize>> = orbit_map.into_values().collect();
    let pair_heap = hopf::pii_heap(h, &pairs)?;
    let quotient = heap::quotient_heap(&pair_heap, &orbits)?;

    let pivots = pivotal_elements(d, max_scan)?;
    let mut kappa_idx = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let k = kappa(d, p)?;
        kappa_idx.push(pivots.iter().position(|q| *q == k).ok_or(DoubleError::NotPivotal)?);
    }
    let kappa_constant = orbits
        .iter()
        .all(|o| o.iter().all(|&i| kappa_idx[i] == kappa_idx[o[0]]));
    let iota_table: Vec<usize> = orbits.iter().map(|o| kappa_idx[o[0]]).collect();
    let mut seen = iota_table.clone();
    seen.sort_unstable();
    seen.dedup();
    let injective = seen.len() == iota_table.len();
    Ok(IotaReport {
        symmetric_classes: symmetric
            .iter()
            .map(|(b, g)| {
                format!(
                    "({}, {})",
                    hopf::character_label(h, b),
                    hopf::group_like_label(h, g)
                )
            })
            .collect(),
        orbit_count: orbits.len(),
        orbits,
        action_closed,
        kappa_constant_on_orbits: kappa_constant,
        iota_injective: injective,
        iota_table,
        quotient_size: quotient.size(),
    })
}
