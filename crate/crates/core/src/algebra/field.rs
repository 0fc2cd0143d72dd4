//! Real cyclotomic fields ℚ(2cos(π/m)) in the power basis of their generator.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{AddAssign, Neg, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with rational coefficients, lowest degree first.
type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division `num / den`; panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> QPoly {
    let mut rem: QPoly = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() < den.len() {
        assert!(rem.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// The n-th cyclotomic polynomial, via x^n − 1 = ∏_{d | n} Φ_d.
pub(crate) fn cyclotomic(n: u32) -> QPoly {
    let mut memo: HashMap<u32, QPoly> = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, QPoly>) -> QPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_memo(d, memo);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Dickson-type polynomials D_k with D_k(x + 1/x) = x^k + x^{-k}.
fn dickson(k: usize) -> QPoly {
    let two = BigRational::from_integer(2.into());
    let mut prev: QPoly = vec![two];
    if k == 0 {
        return prev;
    }
    let mut cur: QPoly = vec![BigRational::zero(), BigRational::one()];
    for _ in 1..k {
        // D_{j+1} = y·D_j − D_{j−1}
        let mut next = vec![BigRational::zero()];
        next.extend(cur.iter().cloned());
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        trim(&mut next);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn euler_phi(mut n: u32) -> u32 {
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

const HP_BITS: u32 = 256;

fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x * BigRational::from_integer(scale.clone())).round().to_integer();
    BigRational::new(n, scale)
}

fn eval_with_derivative(poly: &[BigRational], x: &BigRational) -> (BigRational, BigRational) {
    let mut p = BigRational::zero();
    let mut dp = BigRational::zero();
    for c in poly.iter().rev() {
        dp = &dp * x + &p;
        p = &p * x + c;
    }
    (p, dp)
}

/// Newton refinement of a simple root in exact dyadic arithmetic.
fn high_precision_root(poly: &[BigRational], approx: f64) -> BigRational {
    let mut x = BigRational::from_float(approx).expect("finite embedding");
    for _ in 0..5 {
        let (p, dp) = eval_with_derivative(poly, &x);
        if p.is_zero() || dp.is_zero() {
            break;
        }
        x = round_dyadic(&(x - p / dp), HP_BITS);
    }
    x
}

/// The field ℚ(y) with y = 2cos(π/m).
pub struct NumberField {
    order: u32,
    min_poly: Vec<BigRational>,
    embedding: f64,
    /// Dyadic approximations (error < 2^-250) of y^i, i < deg, for float conversion.
    powers_hp: Vec<BigRational>,
    /// x^{deg+k}, k = 0..deg, reduced into the power basis.
    reduce_q: Vec<Vec<BigRational>>,
    reduce_z: Vec<Vec<BigInt>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("order", &self.order)
            .field("min_poly", &self.min_poly_string())
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for NumberField {}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<NumberField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<NumberField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds ℚ(2cos(π/m)) by deflating the 2m-th cyclotomic polynomial under
/// the substitution y = x + x⁻¹. Fields are cached per order.
pub fn number_field(m: u32) -> Result<Arc<NumberField>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "number field order must be at least 2, got {m}"
        )));
    }
    let mut cache = field_cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(f) = cache.get(&m) {
        return Ok(Arc::clone(f));
    }
    let field = Arc::new(NumberField::build(m));
    cache.insert(m, Arc::clone(&field));
    Ok(field)
}

impl NumberField {
    fn build(m: u32) -> Self {
        let phi = cyclotomic(2 * m);
        let big = phi.len() - 1;
        debug_assert!(big % 2 == 0);
        let k = big / 2;
        // x^{-k}Φ(x) = a_k + Σ_{j≥1} a_{k+j}(x^j + x^{-j}) by palindromy.
        let mut min_poly: QPoly = vec![phi[k].clone()];
        for j in 1..=k {
            let d = dickson(j);
            if min_poly.len() < d.len() {
                min_poly.resize(d.len(), BigRational::zero());
            }
            for (i, c) in d.iter().enumerate() {
                min_poly[i] += &phi[k + j] * c;
            }
        }
        trim(&mut min_poly);
        let deg = min_poly.len() - 1;
        assert!(min_poly[deg].is_one(), "deflated polynomial must be monic");
        assert_eq!(deg as u32, euler_phi(2 * m) / 2, "unexpected degree");

        let embedding = 2.0 * (std::f64::consts::PI / m as f64).cos();

        let mut reduce_q = Vec::with_capacity(deg);
        // x^deg = −Σ c_i x^i
        let mut cur: Vec<BigRational> = min_poly[..deg].iter().map(|c| -c.clone()).collect();
        for _ in 0..deg {
            reduce_q.push(cur.clone());
            let top = cur[deg - 1].clone();
            let mut next = vec![BigRational::zero(); deg];
            for i in 1..deg {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..deg {
                next[i] -= &top * &min_poly[i];
            }
            cur = next;
        }
        let reduce_z = reduce_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        assert!(c.is_integer(), "minimal polynomial must be integral");
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();

        let root = high_precision_root(&min_poly, embedding);
        let mut powers_hp = Vec::with_capacity(deg);
        let mut acc = BigRational::one();
        for _ in 0..deg {
            powers_hp.push(acc.clone());
            acc = round_dyadic(&(&acc * &root), HP_BITS);
        }
        let field = NumberField {
            order: m,
            min_poly,
            embedding,
            powers_hp,
            reduce_q,
            reduce_z,
        };
        let step = field.root_distance(embedding);
        assert!(step < 1e-12, "embedding is not a root: Newton step {step}");
        field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Minimal polynomial coefficients, constant term first; monic.
    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    /// Float value of the generator 2cos(π/m).
    pub fn embedding(&self) -> f64 {
        self.embedding
    }

    pub fn eval_min_poly(&self, x: f64) -> f64 {
        self.min_poly
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + Coeff::to_f64(c))
    }

    /// Newton-step estimate |P(x)/P'(x)| of the distance from x to a root,
    /// evaluated exactly at the dyadic value of x.
    pub fn root_distance(&self, x: f64) -> f64 {
        let Some(xq) = BigRational::from_float(x) else {
            return f64::INFINITY;
        };
        let (p, dp) = eval_with_derivative(&self.min_poly, &xq);
        if dp.is_zero() {
            return f64::INFINITY;
        }
        ToPrimitive::to_f64(&(p / dp).abs()).unwrap_or(f64::INFINITY)
    }

    pub fn min_poly_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.min_poly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let mag = c.abs();
            let coeff = if mag.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{mag}*")
            } else {
                format!("{mag}")
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, format!("{coeff}{mono}")));
        }
        let mut out = String::new();
        for (k, (sign, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        out
    }
}

/// Coefficient rings usable for field elements: ℚ for general arithmetic and
/// ℤ for the algebraic integers ℤ[y] that appear at the reference parameter.
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn mul_ref(&self, other: &Self) -> Self;
    fn reduction(field: &NumberField) -> &[Vec<Self>];
    fn to_f64(&self) -> f64;
    fn to_rational(&self) -> BigRational;
    fn from_i64(v: i64) -> Self;
}

impl Coeff for BigRational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn reduction(field: &NumberField) -> &[Vec<Self>] {
        &field.reduce_q
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

impl Coeff for BigInt {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn reduction(field: &NumberField) -> &[Vec<Self>] {
        &field.reduce_z
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn from_i64(v: i64) -> Self {
        v.into()
    }
}

/// An element of ℚ(2cos(π/m)) (or of ℤ[2cos(π/m)] when `C = BigInt`) as a
/// coordinate vector in the basis 1, y, …, y^(deg−1).
#[derive(Clone)]
pub struct NfElem<C: Coeff> {
    field: Arc<NumberField>,
    coords: Vec<C>,
}

/// Field element with rational coordinates.
pub type NFElem = NfElem<BigRational>;
/// Algebraic integer in ℤ[y]; used for exact group-element identification.
pub type AlgInt = NfElem<BigInt>;

impl<C: Coeff> PartialEq for NfElem<C> {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl<C: Coeff> Eq for NfElem<C> {}

impl<C: Coeff> Hash for NfElem<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<C: Coeff> fmt::Debug for NfElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for NfElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})y")?,
                _ => write!(f, "({c})y^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: Coeff> NfElem<C> {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        NfElem {
            field: Arc::clone(field),
            coords: vec![C::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: &Arc<NumberField>, v: i64) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = C::from_i64(v);
        e
    }

    /// The generator y = 2cos(π/m).
    pub fn generator(field: &Arc<NumberField>) -> Self {
        let mut coords = vec![C::zero(); field.degree() + 1];
        coords[1] = C::one();
        Self::from_poly(field, coords)
    }

    /// Reduces an arbitrary-length coefficient vector modulo the minimal polynomial.
    pub fn from_poly(field: &Arc<NumberField>, mut poly: Vec<C>) -> Self {
        let deg = field.degree();
        let table = C::reduction(field);
        let mut coords: Vec<C> = vec![C::zero(); deg];
        // Higher powers beyond the table are folded down first.
        while poly.len() > 2 * deg {
            let top_idx = poly.len() - 1;
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            // x^top_idx = x^{top_idx-deg} · x^deg
            let shift = top_idx - deg;
            for (i, c) in table[0].iter().enumerate() {
                poly[shift + i] += &top.mul_ref(c);
            }
        }
        for (i, c) in poly.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < deg {
                coords[i] += &c;
            } else {
                for (j, r) in table[i - deg].iter().enumerate() {
                    coords[j] += &c.mul_ref(r);
                }
            }
        }
        NfElem {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> f64 {
        if self.field.degree() == 1 {
            return self.coords[0].to_f64();
        }
        let mut acc = BigRational::zero();
        for (c, p) in self.coords.iter().zip(&self.field.powers_hp) {
            if !c.is_zero() {
                acc += c.to_rational() * p;
            }
        }
        ToPrimitive::to_f64(&acc).unwrap_or(f64::NAN)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        NfElem {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let deg = self.field.degree();
        if deg == 1 {
            return NfElem {
                field: Arc::clone(&self.field),
                coords: vec![self.coords[0].mul_ref(&other.coords[0])],
            };
        }
        let mut prod = vec![C::zero(); 2 * deg - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += &a.mul_ref(b);
            }
        }
        Self::from_poly(&self.field, prod)
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        let c = C::from_i64(k);
        NfElem {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|x| x.mul_ref(&c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl NFElem {
    /// Builds an element from rational coordinates; the vector must have the field's degree.
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(NfElem {
            field: Arc::clone(field),
            coords,
        })
    }

    /// Multiplicative inverse, by solving the linear system of multiplication-by-self.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let deg = self.field.degree();
        // Column j of the system is self·y^j.
        let mut cols = Vec::with_capacity(deg);
        let mut basis = Self::one(&self.field);
        let y = Self::generator(&self.field);
        for _ in 0..deg {
            cols.push(self.mul(&basis).coords);
            basis = basis.mul(&y);
        }
        // Augmented matrix rows: a[i][j] = cols[j][i], rhs e_0.
        let mut a: Vec<Vec<BigRational>> = (0..deg)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..deg).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..deg {
            let pivot = (col..deg)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..deg {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=deg {
                        let delta = &f * &a[col][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        let coords = a.into_iter().map(|row| row[deg].clone()).collect();
        Ok(NfElem {
            field: Arc::clone(&self.field),
            coords,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl From<&AlgInt> for NFElem {
    fn from(a: &AlgInt) -> Self {
        NfElem {
            field: Arc::clone(&a.field),
            coords: a
                .coords
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

/// 2cos(kπ/m) as a field element, via D_k(y) reduced modulo the minimal polynomial.
pub fn cos_embed<C: Coeff>(field: &Arc<NumberField>, k: u32) -> NfElem<C> {
    let y = NfElem::<C>::generator(field);
    let mut prev = NfElem::from_i64(field, 2);
    if k == 0 {
        return prev;
    }
    let mut cur = y.clone();
    for _ in 1..k {
        let next = y.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
