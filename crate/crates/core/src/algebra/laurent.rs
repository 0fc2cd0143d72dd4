//! Laurent polynomials in t over a real cyclotomic field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::field::{number_field, NFElem, NumberField};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial; no stored coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly {
    field: Arc<NumberField>,
    terms: BTreeMap<i32, NFElem>,
}

impl LaurentPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        LaurentPoly {
            field: Arc::clone(field),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::constant(NFElem::one(field))
    }

    pub fn constant(c: NFElem) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·t^exp`.
    pub fn monomial(c: NFElem, exp: i32) -> Self {
        let field = Arc::clone(c.field());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { field, terms }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &NFElem)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i32) -> NFElem {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| NFElem::zero(&self.field))
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top_degree(&self) -> Result<i32> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::UndefinedDegree)
    }

    pub fn bottom_degree(&self) -> Result<i32> {
        self.terms.keys().next().copied().ok_or(Error::UndefinedDegree)
    }

    fn insert_add(terms: &mut BTreeMap<i32, NFElem>, exp: i32, c: &NFElem) {
        use std::collections::btree_map::Entry;
        match terms.entry(exp) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c);
        }
        LaurentPoly {
            field: Arc::clone(&self.field),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            field: Arc::clone(&self.field),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                Self::insert_add(&mut terms, ea + eb, &ca.mul(cb));
            }
        }
        LaurentPoly {
            field: Arc::clone(&self.field),
            terms,
        }
    }

    /// Exact division by a single nonzero term.
    pub fn div_monomial(&self, divisor: &Self) -> Result<Self> {
        if divisor.terms.len() != 1 {
            return Err(Error::InvalidParameter(
                "divisor must be a single nonzero term".into(),
            ));
        }
        let (de, dc) = divisor.terms.iter().next().expect("one term");
        let inv = dc.inv()?;
        Ok(LaurentPoly {
            field: Arc::clone(&self.field),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e - de, c.mul(&inv)))
                .collect(),
        })
    }

    /// Float evaluation at t.
    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64() * t.powi(*e))
            .sum()
    }

    /// Canonical serializable form: terms sorted by exponent, coefficients as rational strings.
    pub fn to_repr(&self) -> LaurentRepr {
        LaurentRepr {
            field_order: self.field.order(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| LaurentTerm {
                    exponent: *e,
                    coeffs: c.coords().iter().map(|q| q.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_repr(repr: &LaurentRepr) -> Result<Self> {
        let field = number_field(repr.field_order)?;
        let mut out = Self::zero(&field);
        for term in &repr.terms {
            let coords = term
                .coeffs
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            let c = NFElem::from_coords(&field, coords)?;
            Self::insert_add(&mut out.terms, term.exponent, &c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTerm {
    pub exponent: i32,
    pub coeffs: Vec<String>,
}

/// JSON-facing form of a [`LaurentPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentRepr {
    pub field_order: u32,
    pub terms: Vec<LaurentTerm>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        LaurentPoly::from_repr(&repr).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]t")?,
                _ => write!(f, "[{c}]t^{e}")?,
            }
        }
        Ok(())
    }
}
