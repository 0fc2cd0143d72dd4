//! Words in the triangle reflection group Γ_pqr and the representation family ρ_t.
//!
//! With v_i the standard basis and α_i the rows of the Gram matrix of pairings,
//! the generators act by the reflections ρ(s_i) = I − v_i ⊗ α_i.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{cos_embed, number_field, AlgInt, LaurentPoly, Mat3, NFElem, NumberField, Ring};
use crate::error::{Error, Result};
use crate::spectral::ScaledMat3;

/// Exponents (p, q, r) of Γ_pqr = ⟨a, b, c | a², b², c², (ab)^p, (bc)^q, (ca)^r⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    p: u32,
    q: u32,
    r: u32,
}

impl Presentation {
    /// Validates hyperbolicity 1/p + 1/q + 1/r < 1.
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        let text = format!("{p},{q},{r}");
        if p < 2 || q < 2 || r < 2 {
            return Err(Error::InvalidPresentation(text, "exponents must be at least 2"));
        }
        let (p64, q64, r64) = (p as u64, q as u64, r as u64);
        if q64 * r64 + p64 * r64 + p64 * q64 >= p64 * q64 * r64 {
            return Err(Error::InvalidPresentation(text, "1/p + 1/q + 1/r must be < 1"));
        }
        Ok(Presentation { p, q, r })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Order of the product of two distinct generators.
    pub fn dihedral_order(&self, x: Gen, y: Gen) -> u32 {
        use Gen::*;
        match (x, y) {
            (A, B) | (B, A) => self.p,
            (B, C) | (C, B) => self.q,
            (C, A) | (A, C) => self.r,
            _ => 1,
        }
    }

    /// lcm(p, q, r): all three cosines live in ℚ(2cos(π/lcm)).
    pub fn field_order(&self) -> u32 {
        lcm(lcm(self.p, self.q), self.r)
    }

    pub fn field(&self) -> Arc<NumberField> {
        number_field(self.field_order()).expect("field order is at least 2")
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = |why| Error::InvalidPresentation(s.to_string(), why);
        if parts.len() != 3 {
            return Err(bad("expected three comma-separated integers"));
        }
        let mut v = [0u32; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| bad("expected three comma-separated integers"))?;
        }
        Presentation::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p, self.q, self.r)
    }
}

/// A generator; all three are involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::A, Gen::B, Gen::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_char(c: char) -> Option<Gen> {
        match c {
            'a' => Some(Gen::A),
            'b' => Some(Gen::B),
            'c' => Some(Gen::C),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
        }
    }
}

/// A word over {a, b, c}. Ordering is lexicographic on letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_gens(gens: Vec<Gen>) -> Self {
        Word(gens)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.0.len() % 2 == 0
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Removes adjacent equal letters until none remain.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Gen> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    /// Strips equal first/last letters (conjugating) until they differ.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.reduce().0;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo] == w[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    /// Letters in reverse order; represents the inverse element.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Gen::from_char)
            .collect::<Option<Vec<_>>>()
            .map(Word)
            .ok_or_else(|| Error::InvalidWord(s.to_string()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.to_char())?;
        }
        Ok(())
    }
}

pub fn reduce_word(w: &Word) -> Word {
    w.reduce()
}

pub fn cyclic_reduce(w: &Word) -> Word {
    w.cyclic_reduce()
}

/// Numeric parameter, tagged by whether it is t or the triple ratio t².
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    T(f64),
    T2(f64),
}

impl Param {
    pub fn t(&self) -> f64 {
        match *self {
            Param::T(t) => t,
            Param::T2(t2) => t2.sqrt(),
        }
    }

    pub fn t2(&self) -> f64 {
        match *self {
            Param::T(t) => t * t,
            Param::T2(t2) => t2,
        }
    }
}

/// The three cosines 2cos(π/p), 2cos(π/q), 2cos(π/r) in the common field.
fn cosines<C: crate::algebra::Coeff>(
    pres: &Presentation,
    field: &Arc<NumberField>,
) -> [crate::algebra::NfElem<C>; 3] {
    let m = field.order();
    [
        cos_embed(field, m / pres.p),
        cos_embed(field, m / pres.q),
        cos_embed(field, m / pres.r),
    ]
}

/// Symbolic Gram matrix of pairings α_i(v_j) with entries in ℚ(y)[t, t⁻¹].
pub fn gram_matrix_symbolic(pres: &Presentation) -> Mat3<LaurentPoly> {
    let field = pres.field();
    let [yp, yq, yr]: [NFElem; 3] = cosines(pres, &field);
    let two = LaurentPoly::constant(NFElem::from_i64(&field, 2));
    let c = |e: &NFElem, exp: i32| LaurentPoly::monomial(e.neg(), exp);
    Mat3([
        [two.clone(), c(&yp, 1), c(&yr, 0)],
        [c(&yp, -1), two.clone(), c(&yq, 0)],
        [c(&yr, 0), c(&yq, 0), two],
    ])
}

/// Gram matrix at a numeric t > 0.
pub fn gram_matrix_numeric(pres: &Presentation, t: f64) -> Mat3<f64> {
    let cos = |n: u32| 2.0 * (std::f64::consts::PI / n as f64).cos();
    let (yp, yq, yr) = (cos(pres.p), cos(pres.q), cos(pres.r));
    Mat3([
        [2.0, -yp * t, -yr],
        [-yp / t, 2.0, -yq],
        [-yr, -yq, 2.0],
    ])
}

/// Gram matrix at t = 1 with exact algebraic-integer entries.
fn gram_matrix_integral(pres: &Presentation) -> Mat3<AlgInt> {
    let field = pres.field();
    let [yp, yq, yr]: [AlgInt; 3] = cosines(pres, &field);
    let two = AlgInt::from_i64(&field, 2);
    Mat3([
        [two.clone(), yp.neg(), yr.neg()],
        [yp.neg(), two.clone(), yq.neg()],
        [yr.neg(), yq.neg(), two],
    ])
}

/// ρ(s_i) = I − e_i ⊗ (row i of the Gram matrix).
fn reflection<R: Ring>(gram: &Mat3<R>, i: usize) -> Mat3<R> {
    let id = Mat3::identity_like(gram.get(0, 0));
    Mat3::from_fn(|r, c| {
        if r == i {
            id.get(r, c).sub_ref(gram.get(i, c))
        } else {
            id.get(r, c).clone()
        }
    })
}

/// M·ρ(s_i), using that ρ(s_i) differs from I only in row i.
pub(crate) fn mul_right_gen<R: Ring>(m: &Mat3<R>, gram: &Mat3<R>, i: usize) -> Mat3<R> {
    let mut out = m.clone();
    for r in 0..3 {
        let mi = m.get(r, i);
        for c in 0..3 {
            out.0[r][c] = m.get(r, c).sub_ref(&mi.mul_ref(gram.get(i, c)));
        }
    }
    out
}

/// ρ(s_i)·M: only row i changes.
pub(crate) fn mul_left_gen<R: Ring>(m: &Mat3<R>, gram: &Mat3<R>, i: usize) -> Mat3<R> {
    let mut out = m.clone();
    for c in 0..3 {
        let mut acc = m.get(i, c).clone();
        for j in 0..3 {
            acc = acc.sub_ref(&gram.get(i, j).mul_ref(m.get(j, c)));
        }
        out.0[i][c] = acc;
    }
    out
}

/// Outcome of one relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

fn relation_checks<R: Ring>(
    pres: &Presentation,
    gens: &[Mat3<R>; 3],
    is_identity: impl Fn(&Mat3<R>) -> bool,
    det_is_minus_one: impl Fn(&R) -> bool,
) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for g in Gen::ALL {
        let m = &gens[g.index()];
        out.push(RelationCheck {
            name: format!("{}^2 = 1", g.to_char()),
            passed: is_identity(&m.mul(m)),
        });
        out.push(RelationCheck {
            name: format!("det {} = -1", g.to_char()),
            passed: det_is_minus_one(&m.det()),
        });
    }
    for (x, y) in [(Gen::A, Gen::B), (Gen::B, Gen::C), (Gen::C, Gen::A)] {
        let n = pres.dihedral_order(x, y);
        let prod = gens[x.index()].mul(&gens[y.index()]);
        out.push(RelationCheck {
            name: format!("({}{})^{} = 1", x.to_char(), y.to_char(), n),
            passed: is_identity(&prod.pow(n)),
        });
    }
    out
}

fn ensure_all_pass(checks: &[RelationCheck]) -> Result<()> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::RelationFailure(c.name.clone())),
        None => Ok(()),
    }
}

/// ρ_t with t a formal variable.
#[derive(Clone, Debug)]
pub struct SymbolicRep {
    pres: Presentation,
    field: Arc<NumberField>,
    gram: Mat3<LaurentPoly>,
    gens: [Mat3<LaurentPoly>; 3],
}

impl SymbolicRep {
    /// Builds the representation and verifies involutions, determinants and
    /// the Coxeter relations exactly.
    pub fn new(pres: Presentation) -> Result<Self> {
        let gram = gram_matrix_symbolic(&pres);
        let gens = [0, 1, 2].map(|i| reflection(&gram, i));
        let rep = SymbolicRep {
            pres,
            field: pres.field(),
            gram,
            gens,
        };
        ensure_all_pass(&rep.verify_relations())?;
        Ok(rep)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn gram(&self) -> &Mat3<LaurentPoly> {
        &self.gram
    }

    pub fn generator(&self, g: Gen) -> &Mat3<LaurentPoly> {
        &self.gens[g.index()]
    }

    pub fn verify_relations(&self) -> Vec<RelationCheck> {
        let minus_one = LaurentPoly::constant(NFElem::from_i64(&self.field, -1));
        relation_checks(
            &self.pres,
            &self.gens,
            |m| m.is_identity(),
            |d| *d == minus_one,
        )
    }

    /// α₁(v₂)α₂(v₃)α₃(v₁) / (α₁(v₃)α₂(v₁)α₃(v₂)), exactly t².
    pub fn triple_ratio(&self) -> Result<LaurentPoly> {
        let g = &self.gram;
        let entries = [g.get(0, 1), g.get(1, 2), g.get(2, 0), g.get(0, 2), g.get(1, 0), g.get(2, 1)];
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::TripleRatioUndefined(self.pres.to_string()));
        }
        let num = g.get(0, 1).mul(g.get(1, 2)).mul(g.get(2, 0));
        let den = g.get(0, 2).mul(g.get(1, 0)).mul(g.get(2, 1));
        num.div_monomial(&den)
    }

    /// Exact matrix of `w`, letters acting in reading order:
    /// ρ(w) = ρ(s_n)···ρ(s_1) for w = s_1…s_n.
    pub fn evaluate(&self, w: &Word) -> Mat3<LaurentPoly> {
        let mut m = Mat3::identity_like(&LaurentPoly::one(&self.field));
        for g in w.gens() {
            m = mul_left_gen(&m, &self.gram, g.index());
        }
        m
    }
}

/// ρ_t at a fixed numeric t > 0.
#[derive(Clone, Debug)]
pub struct NumericRep {
    pres: Presentation,
    t: f64,
    gram: Mat3<f64>,
    gens: [Mat3<f64>; 3],
}

impl NumericRep {
    pub fn new(pres: Presentation, param: Param) -> Result<Self> {
        let t = param.t();
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t must be positive and finite, got {t}"
            )));
        }
        let gram = gram_matrix_numeric(&pres, t);
        let gens = [0, 1, 2].map(|i| reflection(&gram, i));
        let rep = NumericRep { pres, t, gram, gens };
        ensure_all_pass(&rep.verify_relations(1e-9))?;
        Ok(rep)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn gram(&self) -> &Mat3<f64> {
        &self.gram
    }

    pub fn generator(&self, g: Gen) -> &Mat3<f64> {
        &self.gens[g.index()]
    }

    /// Relation checks with relative tolerance `tol` (scaled by the entry size).
    pub fn verify_relations(&self, tol: f64) -> Vec<RelationCheck> {
        let scale = self.gens.iter().map(Mat3::max_abs).fold(1.0, f64::max);
        relation_checks(
            &self.pres,
            &self.gens,
            |m| {
                let n = m.max_abs().max(1.0);
                m.max_abs_diff(&Mat3::identity()) <= tol * n * scale
            },
            |d| (d + 1.0).abs() <= tol * scale.powi(3),
        )
    }

    pub fn triple_ratio(&self) -> Result<f64> {
        let g = &self.gram;
        let den = g.get(0, 2) * g.get(1, 0) * g.get(2, 1);
        if [g.get(0, 1), g.get(1, 2), g.get(2, 0)].iter().any(|e| **e == 0.0) || den == 0.0 {
            return Err(Error::TripleRatioUndefined(self.pres.to_string()));
        }
        Ok(g.get(0, 1) * g.get(1, 2) * g.get(2, 0) / den)
    }

    /// Overflow-safe matrix of `w`, with the same letter order as
    /// [`SymbolicRep::evaluate`].
    pub fn evaluate(&self, w: &Word) -> ScaledMat3 {
        let mut m = ScaledMat3::identity();
        for g in w.gens() {
            m = m.apply_with(|x| mul_left_gen(x, &self.gram, g.index()));
        }
        m
    }
}

pub fn evaluate_word_symbolic(rep: &SymbolicRep, w: &Word) -> Mat3<LaurentPoly> {
    rep.evaluate(w)
}

pub fn evaluate_word_numeric(rep: &NumericRep, w: &Word) -> ScaledMat3 {
    rep.evaluate(w)
}

/// Canonical identifier of a group element: its exact matrix at t = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementId(Mat3<AlgInt>);

impl ElementId {
    pub fn matrix(&self) -> &Mat3<AlgInt> {
        &self.0
    }
}

/// Solves the word problem through the faithful representation at t = 1.
#[derive(Clone, Debug)]
pub struct WordProblem {
    pres: Presentation,
    gram: Mat3<AlgInt>,
}

impl WordProblem {
    pub fn new(pres: Presentation) -> Self {
        WordProblem {
            pres,
            gram: gram_matrix_integral(&pres),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn identity(&self) -> ElementId {
        ElementId(Mat3::identity_like(self.gram.get(0, 0)))
    }

    pub fn id(&self, w: &Word) -> ElementId {
        let mut m = self.identity();
        for g in w.gens() {
            m = self.mul_gen(&m, *g);
        }
        m
    }

    /// id(w·s).
    pub fn mul_gen(&self, x: &ElementId, s: Gen) -> ElementId {
        ElementId(mul_right_gen(&x.0, &self.gram, s.index()))
    }

    /// id(s·w).
    pub fn gen_mul(&self, s: Gen, x: &ElementId) -> ElementId {
        ElementId(mul_left_gen(&x.0, &self.gram, s.index()))
    }

    /// id(s·w·s).
    pub fn conjugate_by_gen(&self, x: &ElementId, s: Gen) -> ElementId {
        self.gen_mul(s, &self.mul_gen(x, s))
    }

    /// Exact action on vectors at t = 1.
    pub fn act(&self, x: &ElementId, v: &[AlgInt; 3]) -> [AlgInt; 3] {
        x.0.mul_vec(v)
    }

    pub fn gram(&self) -> &Mat3<AlgInt> {
        &self.gram
    }

    /// A geodesic word for the same element, obtained by repeatedly deleting
    /// a pair of letters s_i, s_j with s_i·(s_{i+1}…s_{j−1}) = (s_{i+1}…s_{j−1})·s_j.
    pub fn geodesic(&self, w: &Word) -> Word {
        let mut gens = w.reduce().0;
        'outer: loop {
            for i in 0..gens.len() {
                let mut between = self.identity();
                for j in i + 1..gens.len() {
                    if self.gen_mul(gens[i], &between) == self.mul_gen(&between, gens[j]) {
                        gens.remove(j);
                        gens.remove(i);
                        gens = Word(gens).reduce().0;
                        continue 'outer;
                    }
                    between = self.mul_gen(&between, gens[j]);
                }
            }
            return Word(gens);
        }
    }

    /// A conjugate of `w` all of whose cyclic rotations are geodesic.
    pub fn cyclic_geodesic(&self, w: &Word) -> Word {
        let mut best = self.geodesic(w).cyclic_reduce();
        'outer: loop {
            for k in 1..best.len() {
                let shorter = self.geodesic(&best.rotate(k)).cyclic_reduce();
                if shorter.len() < best.len() {
                    best = shorter;
                    continue 'outer;
                }
            }
            return best;
        }
    }
}

pub fn element_id(pres: &Presentation, w: &Word) -> ElementId {
    WordProblem::new(*pres).id(w)
}
