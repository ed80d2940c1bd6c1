//! A strict rigid symmetric category on one self-dual object `X`, generated
//! by `rho: X -> X`, `sigma: X^2 -> X^2`, `ev: X^2 -> 1` and `coev: 1 -> X^2`
//! subject to `rho^2 = id`, `sigma^2 = id`, the snake identities,
//! self-duality of every generator and naturality of `sigma`.
//!
//! A morphism `X^n -> X^m` is stored in normal form: a perfect matching of
//! the `n + m` boundary points, a `Z_2` decoration on every strand (the
//! parity of the `rho`s it carries) and one counter for each of the two
//! species of closed loop. Inputs are the points `0..n`, outputs the points
//! `n..n+m`, both numbered left to right.
//!
//! Text form: `"n>m (a-b)[d] ... L=(p,q)"`, the loop suffix omitted when
//! there are no loops.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::heap::FiniteHeap;

/// Largest width accepted by [`enumerate_half_braidings`].
pub const MAX_ENUM_WIDTH: usize = 6;
/// Largest width bound accepted by [`verify_pivotal`] and friends.
pub const MAX_VERIFY_BOUND: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreecatError {
    #[error("width mismatch: {0}")]
    WidthMismatch(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("cannot parse diagram `{text}`: {message}")]
    Parse { text: String, message: String },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid half-braiding parameter: {0}")]
    InvalidParam(String),
    #[error("result leaves the half-braiding parameter family: {0}")]
    NotInParameterFamily(String),
    #[error("bound {got} exceeds the supported maximum {max}")]
    BoundTooLarge { got: usize, max: usize },
    #[error("heap law leaves the supplied assignments: <{}> is new", .0.label())]
    ClosureViolation(Box<PivotalAssignment>),
}

/// One strand joining boundary points `a < b`, carrying `rho^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub a: usize,
    pub b: usize,
    pub d: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    m: usize,
    strands: Vec<Strand>,
    /// (plain loops, decorated loops)
    loops: (u32, u32),
}

impl Diagram {
    pub fn new(
        n: usize,
        m: usize,
        strands: impl IntoIterator<Item = (usize, usize, u8)>,
        loops: (u32, u32),
    ) -> Result<Self, FreecatError> {
        let total = n + m;
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for (a, b, d) in strands {
            let (a, b) = (a.min(b), a.max(b));
            if d > 1 {
                return Err(FreecatError::InvalidDiagram(format!("decoration {d} is not in Z_2")));
            }
            if b >= total || a == b {
                return Err(FreecatError::InvalidDiagram(format!("strand ({a}-{b}) on {total} points")));
            }
            for p in [a, b] {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(FreecatError::InvalidDiagram(format!("point {p} used twice")));
                }
            }
            out.push(Strand { a, b, d });
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(FreecatError::InvalidDiagram(format!("point {p} is unmatched")));
        }
        out.sort();
        Ok(Self { n, m, strands: out, loops })
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn loops(&self) -> (u32, u32) {
        self.loops
    }

    fn partners(&self) -> Vec<(usize, u8)> {
        let mut p = vec![(0, 0); self.n + self.m];
        for s in &self.strands {
            p[s.a] = (s.b, s.d);
            p[s.b] = (s.a, s.d);
        }
        p
    }

    pub fn is_automorphism(&self) -> bool {
        self.n == self.m && self.loops == (0, 0) && self.strands.iter().all(|s| s.a < self.n && s.b >= self.n)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).map(|i| (i, n + i, 0)), (0, 0)).expect("identity")
    }

    pub fn rho() -> Self {
        Self::new(1, 1, [(0, 1, 1)], (0, 0)).expect("rho")
    }

    pub fn sigma() -> Self {
        braiding(1, 1)
    }

    pub fn ev() -> Self {
        Self::new(2, 0, [(0, 1, 0)], (0, 0)).expect("ev")
    }

    pub fn coev() -> Self {
        Self::new(0, 2, [(0, 1, 0)], (0, 0)).expect("coev")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.n, self.m)?;
        for s in &self.strands {
            write!(f, " ({}-{})[{}]", s.a, s.b, s.d)?;
        }
        if self.loops != (0, 0) {
            write!(f, " L=({},{})", self.loops.0, self.loops.1)?;
        }
        Ok(())
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Diagram {
    type Err = FreecatError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |message: &str| FreecatError::Parse {
            text: text.to_string(),
            message: message.to_string(),
        };
        let mut tokens = text.split_whitespace();
        let header = tokens.next().ok_or_else(|| err("empty input"))?;
        let (n, m) = header.split_once('>').ok_or_else(|| err("header must look like n>m"))?;
        let n: usize = n.parse().map_err(|_| err("bad source width"))?;
        let m: usize = m.parse().map_err(|_| err("bad target width"))?;
        let mut strands = Vec::new();
        let mut loops = (0, 0);
        for tok in tokens {
            if let Some(rest) = tok.strip_prefix("L=(") {
                let inner = rest.strip_suffix(')').ok_or_else(|| err("unterminated loop suffix"))?;
                let (p, q) = inner.split_once(',').ok_or_else(|| err("loop suffix needs two counts"))?;
                loops = (
                    p.parse().map_err(|_| err("bad plain loop count"))?,
                    q.parse().map_err(|_| err("bad decorated loop count"))?,
                );
                continue;
            }
            let inner = tok.strip_prefix('(').ok_or_else(|| err("strand must look like (a-b)[d]"))?;
            let (pair, dec) = inner.split_once(")[").ok_or_else(|| err("strand must look like (a-b)[d]"))?;
            let dec = dec.strip_suffix(']').ok_or_else(|| err("unterminated decoration"))?;
            let (a, b) = pair.split_once('-').ok_or_else(|| err("strand must look like (a-b)[d]"))?;
            strands.push((
                a.parse().map_err(|_| err("bad endpoint"))?,
                b.parse().map_err(|_| err("bad endpoint"))?,
                dec.parse().map_err(|_| err("bad decoration"))?,
            ));
        }
        Diagram::new(n, m, strands, loops)
    }
}

pub struct Generators {
    pub id_x: Diagram,
    pub rho: Diagram,
    pub sigma: Diagram,
    pub ev: Diagram,
    pub coev: Diagram,
}

pub fn generators() -> Generators {
    Generators {
        id_x: Diagram::identity(1),
        rho: Diagram::rho(),
        sigma: Diagram::sigma(),
        ev: Diagram::ev(),
        coev: Diagram::coev(),
    }
}

fn named_generators() -> [(&'static str, Diagram); 4] {
    [
        ("rho", Diagram::rho()),
        ("sigma", Diagram::sigma()),
        ("ev", Diagram::ev()),
        ("coev", Diagram::coev()),
    ]
}

/// `g ∘ f` by path tracing through the middle boundary.
pub fn compose(g: &Diagram, f: &Diagram) -> Result<Diagram, FreecatError> {
    if f.m != g.n {
        return Err(FreecatError::WidthMismatch(format!(
            "cannot compose {}>{} after {}>{}",
            g.n, g.m, f.n, f.m
        )));
    }
    let (n, mid, k) = (f.n, f.m, g.m);
    let pf = f.partners();
    let pg = g.partners();
    let mut visited = vec![false; mid];
    let mut strands = Vec::new();

    // external points: f inputs are (true, 0..n), g outputs are (false, mid..mid+k)
    let externals = (0..n).map(|p| (true, p)).chain((mid..mid + k).map(|p| (false, p)));
    let mut used_f = vec![false; n];
    let mut used_g = vec![false; k];
    let global = |in_f: bool, p: usize| if in_f { p } else { n + p - mid };
    for (start_f, start) in externals {
        let done = if start_f { used_f[start] } else { used_g[start - mid] };
        if done {
            continue;
        }
        let (mut in_f, mut p, mut dec) = (start_f, start, 0u8);
        let end = loop {
            let (q, d) = if in_f { pf[p] } else { pg[p] };
            dec ^= d;
            if in_f && q < n {
                break (true, q);
            }
            if !in_f && q >= mid {
                break (false, q);
            }
            let i = if in_f { q - n } else { q };
            visited[i] = true;
            if in_f {
                in_f = false;
                p = i;
            } else {
                in_f = true;
                p = n + i;
            }
        };
        for (side, point) in [(start_f, start), end] {
            if side {
                used_f[point] = true;
            } else {
                used_g[point - mid] = true;
            }
        }
        strands.push((global(start_f, start), global(end.0, end.1), dec));
    }

    let mut loops = (f.loops.0 + g.loops.0, f.loops.1 + g.loops.1);
    for i in 0..mid {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let (mut in_f, mut p, mut dec) = (true, n + i, 0u8);
        loop {
            let (q, d) = if in_f { pf[p] } else { pg[p] };
            dec ^= d;
            let idx = if in_f { q - n } else { q };
            if in_f {
                in_f = false;
                p = idx;
            } else {
                in_f = true;
                p = n + idx;
            }
            if in_f && idx == i {
                break;
            }
            visited[idx] = true;
        }
        if dec == 0 {
            loops.0 += 1;
        } else {
            loops.1 += 1;
        }
    }
    Diagram::new(n, k, strands, loops)
}

/// Compose a chain written in diagrammatic order reversed: `compose_all([h, g, f]) = h ∘ g ∘ f`.
pub fn compose_all(chain: &[Diagram]) -> Result<Diagram, FreecatError> {
    let (last, rest) = chain
        .split_last()
        .ok_or_else(|| FreecatError::WidthMismatch("empty composition".into()))?;
    rest.iter().rev().try_fold(last.clone(), |acc, g| compose(g, &acc))
}

pub fn tensor(f: &Diagram, g: &Diagram) -> Diagram {
    let (n, m) = (f.n + g.n, f.m + g.m);
    let place_f = |p: usize| if p < f.n { p } else { n + (p - f.n) };
    let place_g = |p: usize| if p < g.n { f.n + p } else { n + f.m + (p - g.n) };
    let strands = f
        .strands
        .iter()
        .map(|s| (place_f(s.a), place_f(s.b), s.d))
        .chain(g.strands.iter().map(|s| (place_g(s.a), place_g(s.b), s.d)));
    let loops = (f.loops.0 + g.loops.0, f.loops.1 + g.loops.1);
    Diagram::new(n, m, strands, loops).expect("juxtaposition of valid diagrams")
}

pub fn tensor_all(parts: &[Diagram]) -> Diagram {
    parts.iter().fold(Diagram::identity(0), |acc, d| tensor(&acc, d))
}

/// Left dual: the diagram rotated by a half turn.
pub fn dual(f: &Diagram) -> Diagram {
    let (n, m) = (f.n, f.m);
    let rot = |p: usize| if p < n { m + (n - 1 - p) } else { m - 1 - (p - n) };
    Diagram::new(m, n, f.strands.iter().map(|s| (rot(s.a), rot(s.b), s.d)), f.loops).expect("rotation")
}

/// Left dual written out with (co)evaluations:
/// `(ev_{X^m} ⊗ id) ∘ (id ⊗ f ⊗ id) ∘ (id ⊗ coev_{X^n})`.
pub fn dual_via_snakes(f: &Diagram) -> Diagram {
    let (n, m) = (f.n, f.m);
    let a = tensor(&Diagram::identity(m), &nested_coev(n));
    let b = tensor_all(&[Diagram::identity(m), f.clone(), Diagram::identity(n)]);
    let c = tensor(&nested_ev(m), &Diagram::identity(n));
    compose_all(&[c, b, a]).expect("widths line up")
}

/// Upside-down mirror image; on automorphisms this is the inverse.
pub fn flip(f: &Diagram) -> Diagram {
    let (n, m) = (f.n, f.m);
    let mir = |p: usize| if p < n { m + p } else { p - n };
    Diagram::new(m, n, f.strands.iter().map(|s| (mir(s.a), mir(s.b), s.d)), f.loops).expect("mirror")
}

pub fn inverse(f: &Diagram) -> Result<Diagram, FreecatError> {
    if !f.is_automorphism() {
        return Err(FreecatError::NotAutomorphism(f.to_string()));
    }
    Ok(flip(f))
}

/// `ev_{X^n}: X^{2n} -> 1`, nested caps.
pub fn nested_ev(n: usize) -> Diagram {
    Diagram::new(2 * n, 0, (0..n).map(|i| (i, 2 * n - 1 - i, 0)), (0, 0)).expect("caps")
}

/// `coev_{X^n}: 1 -> X^{2n}`, nested cups.
pub fn nested_coev(n: usize) -> Diagram {
    dual(&nested_ev(n))
}

/// The symmetry `sigma_{X^a, X^b}: X^{a+b} -> X^{b+a}`.
pub fn braiding(a: usize, b: usize) -> Diagram {
    let n = a + b;
    let out = |i: usize| if i < a { b + i } else { i - a };
    Diagram::new(n, n, (0..n).map(|i| (i, n + out(i), 0)), (0, 0)).expect("block swap")
}

/// `rho^{j} ⊗ ... ⊗ rho^{j}` on `X^n`.
pub fn rho_power(n: usize, j: u8) -> Diagram {
    decoration_diagram(&vec![j & 1; n]).expect("valid decorations")
}

fn check_permutation(s: &[usize]) -> Result<(), FreecatError> {
    let mut seen = vec![false; s.len()];
    for &x in s {
        if x >= s.len() || std::mem::replace(&mut seen[x], true) {
            return Err(FreecatError::InvalidParam(format!("{s:?} is not a permutation")));
        }
    }
    Ok(())
}

fn check_z2(v: &[u8]) -> Result<(), FreecatError> {
    match v.iter().find(|&&x| x > 1) {
        Some(x) => Err(FreecatError::InvalidParam(format!("{x} is not in Z_2"))),
        None => Ok(()),
    }
}

/// `f_s`: input `i` runs to output `s[i]`.
pub fn perm_diagram(s: &[usize]) -> Result<Diagram, FreecatError> {
    automorphism(s, &vec![0; s.len()])
}

/// `f_phi = rho^{phi_1} ⊗ ... ⊗ rho^{phi_n}`.
pub fn decoration_diagram(phi: &[u8]) -> Result<Diagram, FreecatError> {
    let s: Vec<usize> = (0..phi.len()).collect();
    automorphism(&s, phi)
}

/// `f_s ∘ f_phi`.
pub fn automorphism(s: &[usize], phi: &[u8]) -> Result<Diagram, FreecatError> {
    if s.len() != phi.len() {
        return Err(FreecatError::InvalidParam(format!("{} strands but {} decorations", s.len(), phi.len())));
    }
    check_permutation(s)?;
    check_z2(phi)?;
    let n = s.len();
    Ok(Diagram::new(n, n, (0..n).map(|i| (i, n + s[i], phi[i])), (0, 0)).expect("automorphism"))
}

/// Permutation and characteristic sequence of `f = f_s f_phi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AutDecomposition {
    pub s: Vec<usize>,
    pub phi: Vec<u8>,
}

pub fn decompose_automorphism(f: &Diagram) -> Result<AutDecomposition, FreecatError> {
    if !f.is_automorphism() {
        return Err(FreecatError::NotAutomorphism(f.to_string()));
    }
    let n = f.n;
    let mut s = vec![0; n];
    let mut phi = vec![0; n];
    for st in &f.strands {
        s[st.a] = st.b - n;
        phi[st.a] = st.d;
    }
    Ok(AutDecomposition { s, phi })
}

/// Every automorphism of `X^n`, ordered by permutation then decoration.
pub fn all_automorphisms(n: usize) -> Vec<Diagram> {
    (0..n)
        .permutations(n)
        .flat_map(|s| z2_vectors(n).into_iter().map(move |phi| automorphism(&s, &phi).expect("valid")))
        .collect()
}

fn z2_vectors(n: usize) -> Vec<Vec<u8>> {
    (0..1usize << n)
        .map(|bits| (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect())
        .collect()
}

/// A random morphism `X^n -> X^m` (`n + m` must be even) with at most
/// `max_loops` loops of each species.
pub fn random_diagram(rng: &mut impl Rng, n: usize, m: usize, max_loops: u32) -> Diagram {
    assert!((n + m).is_multiple_of(2), "odd number of boundary points");
    let mut points: Vec<usize> = (0..n + m).collect();
    points.shuffle(rng);
    let strands: Vec<_> = points.chunks(2).map(|c| (c[0], c[1], rng.random_range(0..2u8))).collect();
    let loops = (rng.random_range(0..=max_loops), rng.random_range(0..=max_loops));
    Diagram::new(n, m, strands, loops).expect("random matching")
}

/// Half-braiding datum `chi_{X^n, X} = sigma_{X^n, X} ∘ (f_s f_phi ⊗ rho^j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfBraidingParam {
    pub s: Vec<usize>,
    pub phi: Vec<u8>,
    pub j: u8,
}

impl HalfBraidingParam {
    /// Requires `s^2 = id` and `phi_{s(i)} = phi_i`.
    pub fn new(s: Vec<usize>, phi: Vec<u8>, j: u8) -> Result<Self, FreecatError> {
        if s.len() != phi.len() {
            return Err(FreecatError::InvalidParam(format!("{} strands but {} decorations", s.len(), phi.len())));
        }
        check_permutation(&s)?;
        check_z2(&phi)?;
        check_z2(&[j])?;
        for i in 0..s.len() {
            if s[s[i]] != i {
                return Err(FreecatError::InvalidParam(format!("{s:?} is not an involution")));
            }
            if phi[s[i]] != phi[i] {
                return Err(FreecatError::InvalidParam(format!("{phi:?} is not invariant under {s:?}")));
            }
        }
        Ok(Self { s, phi, j })
    }

    pub fn width(&self) -> usize {
        self.s.len()
    }

    /// The automorphism `f = f_s f_phi` of `X^n`.
    pub fn automorphism(&self) -> Diagram {
        automorphism(&self.s, &self.phi).expect("validated")
    }
}

fn mark(bit: u8) -> &'static str {
    if bit == 1 {
        "∘"
    } else {
        "•"
    }
}

/// An object `(X^n, chi)` of the Drinfeld centre.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CentreObject {
    n: usize,
    hb: HalfBraidingParam,
}

impl CentreObject {
    pub fn new(hb: HalfBraidingParam) -> Self {
        Self { n: hb.width(), hb }
    }

    /// The unit `1` with half-braiding `rho^j`.
    pub fn unit(j: u8) -> Self {
        Self::new(HalfBraidingParam { s: Vec::new(), phi: Vec::new(), j: j & 1 })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn hb(&self) -> &HalfBraidingParam {
        &self.hb
    }

    pub fn signature(&self) -> &[u8] {
        &self.hb.phi
    }

    /// Width-one objects use the labels `(X, σ^{φ,j})` with `∘ = 1`, `• = 0`.
    pub fn label(&self) -> String {
        let hb = &self.hb;
        match self.n {
            1 => format!("(X, σ^{{{},{}}})", mark(hb.phi[0]), mark(hb.j)),
            0 => format!("(1, rho^{})", hb.j),
            n => format!(
                "(X^{n}, s={}, phi={}, j={})",
                hb.s.iter().join(""),
                hb.phi.iter().join(""),
                hb.j
            ),
        }
    }
}

/// All `(s, phi, j)` with `s` an involution and `phi` `s`-invariant, in
/// lexicographic order.
pub fn enumerate_half_braidings(n: usize) -> Result<Vec<HalfBraidingParam>, FreecatError> {
    if n > MAX_ENUM_WIDTH {
        return Err(FreecatError::BoundTooLarge { got: n, max: MAX_ENUM_WIDTH });
    }
    let mut out = Vec::new();
    for s in (0..n).permutations(n) {
        if (0..n).any(|i| s[s[i]] != i) {
            continue;
        }
        for phi in z2_vectors(n) {
            if (0..n).all(|i| phi[s[i]] == phi[i]) {
                for j in 0..2 {
                    out.push(HalfBraidingParam { s: s.clone(), phi: phi.clone(), j });
                }
            }
        }
    }
    Ok(out)
}

/// Centre objects of width `0..=bound`.
pub fn centre_objects(bound: usize) -> Result<Vec<CentreObject>, FreecatError> {
    let mut out = Vec::new();
    for n in 0..=bound {
        out.extend(enumerate_half_braidings(n)?.into_iter().map(CentreObject::new));
    }
    Ok(out)
}

/// `chi_{Y, X^k}: X^{n+k} -> X^{k+n}`, extended from `k = 1` by
/// `chi_{Y, X ⊗ Z} = (id_X ⊗ chi_{Y,Z}) ∘ (chi_{Y,X} ⊗ id_Z)`.
pub fn hb_component(c: &CentreObject, k: usize) -> Diagram {
    let n = c.n;
    let mut chi = Diagram::identity(n);
    if k == 0 {
        return chi;
    }
    let base = compose(&braiding(n, 1), &tensor(&c.hb.automorphism(), &rho_power(1, c.hb.j))).expect("widths");
    chi = base.clone();
    for i in 1..k {
        let upper = tensor(&Diagram::identity(1), &chi);
        let lower = tensor(&base, &Diagram::identity(i));
        chi = compose(&upper, &lower).expect("widths");
    }
    chi
}

/// Read `(s, phi, j)` back off a width-one component `chi: X^{n+1} -> X^{1+n}`.
pub fn param_from_component(chi: &Diagram) -> Result<HalfBraidingParam, FreecatError> {
    if chi.n == 0 {
        return Err(FreecatError::NotInParameterFamily(chi.to_string()));
    }
    let n = chi.n - 1;
    let untwisted = compose(&braiding(1, n), chi)?;
    let dec = decompose_automorphism(&untwisted).map_err(|_| FreecatError::NotInParameterFamily(chi.to_string()))?;
    if dec.s[n] != n {
        return Err(FreecatError::NotInParameterFamily(format!("{chi}: the X strand is not a through strand")));
    }
    HalfBraidingParam::new(dec.s[..n].to_vec(), dec.phi[..n].to_vec(), dec.phi[n])
        .map_err(|e| FreecatError::NotInParameterFamily(format!("{chi}: {e}")))
}

/// `(Y, chi) ⊗ (W, theta)` with `(chi ⊗ id_W) ∘ (id_Y ⊗ theta)`, glued in the
/// engine and read back.
pub fn centre_tensor(c1: &CentreObject, c2: &CentreObject) -> Result<CentreObject, FreecatError> {
    let left = tensor(&hb_component(c1, 1), &Diagram::identity(c2.n));
    let right = tensor(&Diagram::identity(c1.n), &hb_component(c2, 1));
    Ok(CentreObject::new(param_from_component(&compose(&left, &right)?)?))
}

/// Left dual `(Y^v, (ev_Y ⊗ id ⊗ id) ∘ (id ⊗ chi^{-1} ⊗ id) ∘ (id ⊗ id ⊗ coev_Y))`.
pub fn centre_dual(c: &CentreObject) -> Result<CentreObject, FreecatError> {
    let n = c.n;
    let chi_inv = inverse(&hb_component(c, 1))?;
    let a = tensor(&Diagram::identity(n + 1), &nested_coev(n));
    let b = tensor_all(&[Diagram::identity(n), chi_inv, Diagram::identity(n)]);
    let top = tensor(&nested_ev(n), &Diagram::identity(1 + n));
    Ok(CentreObject::new(param_from_component(&compose_all(&[top, b, a])?)?))
}

/// Whether `g: Y1 -> Y2` in `C` is a morphism `c1 -> c2` of the centre:
/// `chi_{c2,X} ∘ (g ⊗ id) == (id ⊗ g) ∘ chi_{c1,X}`.
pub fn morphism_lifts(g: &Diagram, c1: &CentreObject, c2: &CentreObject) -> Result<bool, FreecatError> {
    if g.n != c1.n || g.m != c2.n {
        return Err(FreecatError::WidthMismatch(format!(
            "{}>{} between objects of width {} and {}",
            g.n, g.m, c1.n, c2.n
        )));
    }
    let x = Diagram::identity(1);
    let lhs = compose(&hb_component(c2, 1), &tensor(g, &x))?;
    let rhs = compose(&tensor(&x, g), &hb_component(c1, 1))?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiftCheck {
    pub engine: bool,
    pub formula: bool,
}

impl LiftCheck {
    pub fn agree(&self) -> bool {
        self.engine == self.formula
    }
}

/// Closed-form lift criterion for `g = f_r f_lambda: (s, phi, j) -> (t, psi, k)`,
/// additively mod 2: `j = k`, `t r = r s` and, writing `lambda_out[r(i)] =
/// lambda_i` for the decoration read at the output end,
/// `phi_i + lambda_out[r(s(i))] = psi_{r(i)} + lambda_out[r(i)]` for all `i`.
pub fn restriction_formula(g: &AutDecomposition, c1: &CentreObject, c2: &CentreObject) -> bool {
    let (r, lambda) = (&g.s, &g.phi);
    let (s, phi) = (&c1.hb.s, &c1.hb.phi);
    let (t, psi) = (&c2.hb.s, &c2.hb.phi);
    let n = r.len();
    if c1.hb.j != c2.hb.j || s.len() != n || t.len() != n {
        return false;
    }
    let mut lambda_out = vec![0u8; n];
    for i in 0..n {
        lambda_out[r[i]] = lambda[i];
    }
    (0..n).all(|i| t[r[i]] == r[s[i]]) && (0..n).all(|i| phi[i] ^ lambda_out[r[s[i]]] == psi[r[i]] ^ lambda_out[r[i]])
}

/// Engine lift test for an automorphism, cross-validated by the closed form.
pub fn lift_check(g: &Diagram, c1: &CentreObject, c2: &CentreObject) -> Result<LiftCheck, FreecatError> {
    let dec = decompose_automorphism(g)?;
    Ok(LiftCheck {
        engine: morphism_lifts(g, c1, c2)?,
        formula: restriction_formula(&dec, c1, c2),
    })
}

/// A candidate family `Y ↦ p(Y) ∈ Aut(Y)` on centre objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PivotalAssignment {
    /// constant `id`
    LiftId,
    /// constant `rho ⊗ ... ⊗ rho`
    LiftRho,
    /// `f_s f_phi`, the automorphism part of the half-braiding
    Zeta,
    /// `rho^{phi_1} ⊗ ... ⊗ rho^{phi_n}` read off the signature alone
    SignatureOnly,
    /// pointwise `p ∘ q^{-1} ∘ r`
    Composite(Box<[PivotalAssignment; 3]>),
}

impl PivotalAssignment {
    pub fn composite(p: PivotalAssignment, q: PivotalAssignment, r: PivotalAssignment) -> Self {
        PivotalAssignment::Composite(Box::new([p, q, r]))
    }

    pub fn value(&self, c: &CentreObject) -> Diagram {
        match self {
            PivotalAssignment::LiftId => Diagram::identity(c.n),
            PivotalAssignment::LiftRho => rho_power(c.n, 1),
            PivotalAssignment::Zeta => c.hb.automorphism(),
            PivotalAssignment::SignatureOnly => decoration_diagram(&c.hb.phi).expect("validated"),
            PivotalAssignment::Composite(parts) => {
                let [p, q, r] = parts.as_ref();
                let q_inv = inverse(&q.value(c)).expect("assignments are automorphisms");
                compose_all(&[p.value(c), q_inv, r.value(c)]).expect("same width")
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            PivotalAssignment::LiftId => "lift_id".into(),
            PivotalAssignment::LiftRho => "lift_rho".into(),
            PivotalAssignment::Zeta => "zeta".into(),
            PivotalAssignment::SignatureOnly => "signature_only".into(),
            PivotalAssignment::Composite(parts) => {
                format!("<{}>", parts.iter().map(PivotalAssignment::label).join(","))
            }
        }
    }
}

impl fmt::Display for PivotalAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotalWitness {
    pub check: &'static str,
    pub source: String,
    pub target: String,
    pub morphism: String,
    pub left: Diagram,
    pub right: Diagram,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotalReport {
    pub assignment: String,
    pub bound: usize,
    pub objects: usize,
    pub monoidal_checks: usize,
    pub morphisms_tested: usize,
    pub lifts_found: usize,
    pub witness: Option<PivotalWitness>,
}

impl PivotalReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// `id_{X^a} ⊗ gen ⊗ id_{X^b}` for every generator and padding with both
/// ends of width at most `bound`, identities included.
pub fn generator_placements(bound: usize) -> Vec<(String, Diagram)> {
    let mut out: Vec<(String, Diagram)> = (0..=bound).map(|w| (format!("id_{w}"), Diagram::identity(w))).collect();
    for (name, gen) in named_generators() {
        for a in 0..=bound {
            for b in 0..=bound {
                if a + gen.n + b <= bound && a + gen.m + b <= bound {
                    let g = tensor_all(&[Diagram::identity(a), gen.clone(), Diagram::identity(b)]);
                    out.push((format!("id_{a} ⊗ {name} ⊗ id_{b}"), g));
                }
            }
        }
    }
    out
}

fn check_bound(bound: usize) -> Result<(), FreecatError> {
    if bound > MAX_VERIFY_BOUND {
        return Err(FreecatError::BoundTooLarge { got: bound, max: MAX_VERIFY_BOUND });
    }
    Ok(())
}

/// Check that `p` is a monoidal natural automorphism of the identity on the
/// centre, truncated to objects of width at most `bound`. Naturality is
/// tested against every lift of a padded generator.
pub fn verify_pivotal(p: &PivotalAssignment, bound: usize) -> Result<PivotalReport, FreecatError> {
    check_bound(bound)?;
    let objects = centre_objects(bound)?;
    let values: Vec<Diagram> = objects.iter().map(|c| p.value(c)).collect();
    let mut report = PivotalReport {
        assignment: p.label(),
        bound,
        objects: objects.len(),
        monoidal_checks: 0,
        morphisms_tested: 0,
        lifts_found: 0,
        witness: None,
    };
    for (c, v) in objects.iter().zip(&values) {
        if !v.is_automorphism() || v.n != c.n {
            report.witness = Some(PivotalWitness {
                check: "automorphism",
                source: c.label(),
                target: c.label(),
                morphism: String::new(),
                left: v.clone(),
                right: Diagram::identity(c.n),
            });
            return Ok(report);
        }
    }

    for (c1, v1) in objects.iter().zip(&values) {
        for (c2, v2) in objects.iter().zip(&values) {
            if c1.n + c2.n > bound {
                continue;
            }
            report.monoidal_checks += 1;
            let prod = centre_tensor(c1, c2)?;
            let lhs = p.value(&prod);
            let rhs = tensor(v1, v2);
            if lhs != rhs {
                report.witness = Some(PivotalWitness {
                    check: "monoidality",
                    source: c1.label(),
                    target: c2.label(),
                    morphism: String::new(),
                    left: lhs,
                    right: rhs,
                });
                return Ok(report);
            }
        }
    }

    let components: Vec<Diagram> = objects.iter().map(|c| hb_component(c, 1)).collect();
    let x = Diagram::identity(1);
    for (name, g) in generator_placements(bound) {
        report.morphisms_tested += 1;
        let g_x = tensor(&g, &x);
        let x_g = tensor(&x, &g);
        for (i1, c1) in objects.iter().enumerate().filter(|(_, c)| c.n == g.n) {
            let right_side = compose(&x_g, &components[i1])?;
            for (i2, c2) in objects.iter().enumerate().filter(|(_, c)| c.n == g.m) {
                if compose(&components[i2], &g_x)? != right_side {
                    continue;
                }
                report.lifts_found += 1;
                let lhs = compose(&values[i2], &g)?;
                let rhs = compose(&g, &values[i1])?;
                if lhs != rhs {
                    report.witness = Some(PivotalWitness {
                        check: "naturality",
                        source: c1.label(),
                        target: c2.label(),
                        morphism: name.clone(),
                        left: lhs,
                        right: rhs,
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// A pivotal structure `a^{⊗n}` of `C` determined by its value `a` on `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardElement {
    pub label: String,
    pub value_on_x: Diagram,
    pub induced: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XObjectRow {
    pub object: String,
    pub zeta: Diagram,
    pub induced: Vec<Diagram>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonInducedReport {
    pub bound: usize,
    pub picard: Vec<PicardElement>,
    pub table: Vec<XObjectRow>,
    pub induced_constant_on_x: bool,
    pub zeta_constant_on_x: bool,
    pub verified: Vec<PivotalReport>,
    pub distinct_verified: usize,
    pub signature_only: PivotalReport,
    pub zeta_not_induced: bool,
}

impl NonInducedReport {
    pub fn passed(&self) -> bool {
        self.zeta_not_induced && self.verified.iter().all(PivotalReport::passed)
    }
}

/// Pivotal structures of `C` itself: each is fixed by an automorphism `a`
/// of `X`, and `a^{⊗n}` is kept when it commutes with every generator.
pub fn picard_of_base() -> Vec<PicardElement> {
    let mut out = Vec::new();
    for a in all_automorphisms(1) {
        let family = |n: usize| tensor_all(&vec![a.clone(); n]);
        let natural = named_generators()
            .iter()
            .all(|(_, g)| compose(&family(g.m), g).ok() == compose(g, &family(g.n)).ok());
        if natural {
            let is_id = a == Diagram::identity(1);
            out.push(PicardElement {
                label: if is_id { "id".into() } else { "rho".into() },
                value_on_x: a.clone(),
                induced: if is_id { PivotalAssignment::LiftId } else { PivotalAssignment::LiftRho }.label(),
            });
        }
    }
    out
}

fn assignment_by_label(label: &str) -> PivotalAssignment {
    match label {
        "lift_id" => PivotalAssignment::LiftId,
        _ => PivotalAssignment::LiftRho,
    }
}

pub fn non_inducedness_report(bound: usize) -> Result<NonInducedReport, FreecatError> {
    check_bound(bound.max(1))?;
    let bound = bound.max(1);
    let picard = picard_of_base();
    let induced: Vec<PivotalAssignment> = picard.iter().map(|p| assignment_by_label(&p.induced)).collect();
    let zeta = PivotalAssignment::Zeta;
    let x_objects: Vec<CentreObject> = enumerate_half_braidings(1)?.into_iter().map(CentreObject::new).collect();
    let table: Vec<XObjectRow> = x_objects
        .iter()
        .map(|c| XObjectRow {
            object: c.label(),
            zeta: zeta.value(c),
            induced: induced.iter().map(|p| p.value(c)).collect(),
        })
        .collect();
    let constant = |col: &dyn Fn(&XObjectRow) -> &Diagram| table.iter().map(col).all_equal();
    let induced_constant_on_x = (0..induced.len()).all(|k| constant(&|r: &XObjectRow| &r.induced[k]));
    let zeta_constant_on_x = constant(&|r: &XObjectRow| &r.zeta);

    let mut candidates = induced.clone();
    candidates.push(zeta.clone());
    let verified = candidates
        .iter()
        .map(|p| verify_pivotal(p, bound))
        .collect::<Result<Vec<_>, _>>()?;
    let objects = centre_objects(bound)?;
    let tables: Vec<Vec<Diagram>> = candidates
        .iter()
        .map(|p| objects.iter().map(|c| p.value(c)).collect())
        .collect();
    let distinct_verified = tables
        .iter()
        .zip(&verified)
        .filter(|(_, r)| r.passed())
        .map(|(t, _)| t)
        .unique()
        .count();
    let zeta_table = tables.last().expect("zeta present");
    let zeta_not_induced = tables[..induced.len()].iter().all(|t| t != zeta_table)
        && induced_constant_on_x
        && !zeta_constant_on_x;
    Ok(NonInducedReport {
        bound,
        picard,
        table,
        induced_constant_on_x,
        zeta_constant_on_x,
        verified,
        distinct_verified,
        signature_only: verify_pivotal(&PivotalAssignment::SignatureOnly, bound)?,
        zeta_not_induced,
    })
}

/// The pointwise heap `<p,q,r>(Y) = p(Y) q(Y)^{-1} r(Y)` on the supplied
/// assignments, compared on all centre objects up to `bound`.
pub fn piv_heap(assignments: &[PivotalAssignment], bound: usize) -> Result<FiniteHeap, FreecatError> {
    check_bound(bound)?;
    let objects = centre_objects(bound)?;
    let tables: Vec<Vec<Diagram>> = assignments
        .iter()
        .map(|p| objects.iter().map(|c| p.value(c)).collect())
        .collect();
    let k = assignments.len();
    let mut law = Vec::with_capacity(k * k * k);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let candidate = PivotalAssignment::composite(
                    assignments[a].clone(),
                    assignments[b].clone(),
                    assignments[c].clone(),
                );
                let values: Vec<Diagram> = objects.iter().map(|o| candidate.value(o)).collect();
                match tables.iter().position(|t| *t == values) {
                    Some(idx) => law.push(idx),
                    None => return Err(FreecatError::ClosureViolation(Box::new(candidate))),
                }
            }
        }
    }
    let carrier = assignments.iter().map(PivotalAssignment::label).collect();
    Ok(FiniteHeap::new(carrier, law).expect("indices inside the carrier"))
}

/// Grow `seed` by the heap law until it closes (compared up to `bound`).
pub fn heap_closure(seed: &[PivotalAssignment], bound: usize) -> Result<Vec<PivotalAssignment>, FreecatError> {
    let mut current = seed.to_vec();
    loop {
        match piv_heap(&current, bound) {
            Ok(_) => return Ok(current),
            Err(FreecatError::ClosureViolation(new)) => current.push(*new),
            Err(e) => return Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: &'static str,
    pub holds: bool,
}

/// The defining relations and the dualities derived from them.
pub fn relations() -> Vec<Relation> {
    let id = Diagram::identity;
    let g = generators();
    let c = |a: &Diagram, b: &Diagram| compose(a, b).expect("relation widths");
    let t = |a: &Diagram, b: &Diagram| tensor(a, b);
    let rho_id = t(&g.rho, &id(1));
    let id_rho = t(&id(1), &g.rho);
    let sigma_x_x2 = braiding(1, 2);
    let checks = [
        ("rho^2 = id", c(&g.rho, &g.rho) == g.id_x),
        ("sigma^2 = id", c(&g.sigma, &g.sigma) == id(2)),
        (
            "left snake",
            c(&t(&id(1), &g.ev), &t(&g.coev, &id(1))) == g.id_x,
        ),
        (
            "right snake",
            c(&t(&g.ev, &id(1)), &t(&id(1), &g.coev)) == g.id_x,
        ),
        ("rho on a cup slides", c(&rho_id, &g.coev) == c(&id_rho, &g.coev)),
        ("rho on a cap slides", c(&g.ev, &rho_id) == c(&g.ev, &id_rho)),
        ("sigma absorbs a cup", c(&g.sigma, &g.coev) == g.coev),
        ("sigma absorbs a cap", c(&g.ev, &g.sigma) == g.ev),
        ("dual rho = rho", dual(&g.rho) == g.rho && dual_via_snakes(&g.rho) == g.rho),
        ("dual sigma = sigma", dual(&g.sigma) == g.sigma && dual_via_snakes(&g.sigma) == g.sigma),
        ("dual ev = coev", dual(&g.ev) == g.coev && dual_via_snakes(&g.ev) == g.coev),
        ("dual coev = ev", dual(&g.coev) == g.ev && dual_via_snakes(&g.coev) == g.ev),
        ("rho natural for sigma", c(&g.sigma, &rho_id) == c(&id_rho, &g.sigma)),
        (
            "braid relation",
            compose_all(&[t(&g.sigma, &id(1)), t(&id(1), &g.sigma), t(&g.sigma, &id(1))]).ok()
                == compose_all(&[t(&id(1), &g.sigma), t(&g.sigma, &id(1)), t(&id(1), &g.sigma)]).ok(),
        ),
        (
            "sigma natural for coev",
            c(&sigma_x_x2, &t(&id(1), &g.coev)) == t(&g.coev, &id(1)),
        ),
        (
            "pivotal rho natural for ev",
            c(&g.ev, &t(&g.rho, &g.rho)) == g.ev,
        ),
        (
            "plain loop",
            c(&g.ev, &g.coev).loops() == (1, 0),
        ),
        (
            "decorated loop",
            compose_all(&[g.ev.clone(), rho_id.clone(), g.coev.clone()]).expect("widths").loops() == (0, 1),
        ),
    ];
    checks.into_iter().map(|(name, holds)| Relation { name, holds }).collect()
}
