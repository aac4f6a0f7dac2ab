//! Sparse homogeneous polynomials with exact coefficients.
//!
//! A variable is a multi-index: `x_{i_1..i_d}` for tensor entries, `[i]` for
//! point coordinates, or an opaque id tuple for parameters. Monomials are
//! kept as sorted `(variable, exponent)` lists.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{denominator_lcm, integer_content, Field, Scalar};
use crate::error::{Error, Result};
use crate::tensor::Tensor;

pub type Var = Vec<usize>;

/// Which variables a polynomial lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarSpace {
    /// `x_{i_1..i_d}` with `i_a < dims[a]`.
    Tensor(Vec<usize>),
    /// `x_i` with `i < n`.
    Point(usize),
    /// Parametrization variables; not bounds-checked.
    Params,
}

impl VarSpace {
    fn check(&self, v: &Var) -> Result<()> {
        let ok = match self {
            VarSpace::Tensor(dims) => v.len() == dims.len() && v.iter().zip(dims).all(|(i, n)| i < n),
            VarSpace::Point(n) => v.len() == 1 && v[0] < *n,
            VarSpace::Params => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("variable {v:?} outside {self:?}")))
        }
    }
}

/// Sorted `(variable, exponent)` list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(mut powers: Vec<(Var, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes one factor of `v`, if present.
    pub fn div_var(&self, v: &Var) -> Option<Monomial> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let mut out = self.0.clone();
        if out[i].1 == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some(Monomial(out))
    }

    pub fn map_vars(&self, mut f: impl FnMut(&Var) -> Var) -> Monomial {
        Monomial::from_powers(self.0.iter().map(|(v, e)| (f(v), *e)).collect())
    }

    /// Each variable repeated by its exponent.
    pub fn factors(&self) -> impl Iterator<Item = &Var> {
        self.0
            .iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v, *e as usize))
    }
}

/// Graded lexicographic: higher degree is larger; at equal degree, compare
/// exponent vectors with variables in increasing index order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for (x, y) in self.0.iter().zip(&other.0) {
            match x.0.cmp(&y.0) {
                // the smaller variable has a positive exponent only in x
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    space: VarSpace,
    field: Field,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(space: VarSpace, field: Field, degree: u32) -> Self {
        Poly {
            space,
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VarSpace, c: Scalar) -> Self {
        let mut p = Poly::zero(space, c.field(), 0);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    /// Sums duplicate monomials; every monomial must have `degree`.
    pub fn from_terms(
        space: VarSpace,
        field: Field,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(space, field, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "monomial of degree {} in a degree-{degree} polynomial",
                    m.degree()
                )));
            }
            for (v, _) in m.powers() {
                p.space.check(v)?;
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("coefficient {c} not in {field}")));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience constructor from 0-based variables and small integers.
    pub fn from_i64(
        space: VarSpace,
        field: Field,
        terms: &[(&[&[usize]], i64)],
    ) -> Result<Self> {
        let degree = terms.first().map_or(0, |(vs, _)| vs.len() as u32);
        Self::from_terms(
            space,
            field,
            degree,
            terms.iter().map(|(vs, c)| {
                (
                    Monomial::from_powers(vs.iter().map(|v| (v.to_vec(), 1)).collect()),
                    field.from_i64(*c),
                )
            }),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Same polynomial in a larger (or different) variable space.
    pub fn with_space(&self, space: VarSpace) -> Result<Poly> {
        Self::from_terms(
            space,
            self.field,
            self.degree,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("polynomial fields differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidInput("adding polynomials of different degrees".into()));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.space.clone(), self.field, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.space.clone(), self.field, self.degree + other.degree);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut acc = Poly::constant(self.space.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes each variable by a polynomial in `space` and expands.
    pub fn compose(&self, space: VarSpace, mut sub: impl FnMut(&Var) -> Poly) -> Result<Poly> {
        let mut cache: BTreeMap<Var, Poly> = BTreeMap::new();
        let mut out: Option<Poly> = None;
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(space.clone(), c.clone());
            for (v, e) in m.powers() {
                let s = cache.entry(v.clone()).or_insert_with(|| sub(v));
                acc = acc.mul(&s.pow(*e)?)?;
            }
            out = Some(match out {
                None => acc,
                Some(o) => o.add(&acc)?,
            });
        }
        Ok(out.unwrap_or_else(|| Poly::zero(space, self.field, 0)))
    }

    /// Evaluates with the given variable assignment.
    pub fn eval_with(&self, mut value: impl FnMut(&Var) -> Scalar) -> Scalar {
        let mut total = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                t = &t * &value(v).pow(*e);
                if t.is_zero() {
                    break;
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Value at the tensor with axis-`a` index `i` read as `inj[a][i]`.
    /// Coefficients are mapped into the tensor's field.
    pub fn eval_tensor(&self, t: &Tensor, inj: &[Vec<usize>]) -> Result<Scalar> {
        let p = if self.field == t.field() {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.to_field(t.field())?)
        };
        let mut idx = vec![0; t.order()];
        Ok(p.eval_with(|v| {
            for (a, &i) in v.iter().enumerate() {
                idx[a] = inj[a][i];
            }
            t.get(&idx).clone()
        }))
    }

    /// Value at the tensor using identity index placement.
    pub fn eval_at(&self, t: &Tensor) -> Result<Scalar> {
        let inj: Vec<Vec<usize>> = t.dims().iter().map(|&n| (0..n).collect()).collect();
        if let VarSpace::Tensor(dims) = &self.space {
            if dims.len() != t.order() || dims.iter().zip(t.dims()).any(|(a, b)| a > b) {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial on {dims:?} evaluated at {:?}",
                    t.dims()
                )));
            }
        }
        self.eval_tensor(t, &inj)
    }

    pub fn to_field(&self, field: Field) -> Result<Poly> {
        let mut out = Poly::zero(self.space.clone(), field, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.to_field(field)?);
        }
        Ok(out)
    }

    pub fn map_vars(&self, space: VarSpace, mut f: impl FnMut(&Var) -> Var) -> Result<Poly> {
        Self::from_terms(
            space,
            self.field,
            self.degree,
            self.terms.iter().map(|(m, c)| (m.map_vars(&mut f), c.clone())),
        )
    }

    /// Relabels tensor-variable indices: axis `a` index `i` becomes
    /// `perms[a][i]`.
    pub fn permute_indices(&self, perms: &[Vec<usize>]) -> Poly {
        let mut out = Poly::zero(self.space.clone(), self.field, self.degree);
        for (m, c) in &self.terms {
            let m2 = m.map_vars(|v| v.iter().enumerate().map(|(a, &i)| perms[a][i]).collect());
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Over Q: the primitive integer polynomial with positive leading
    /// coefficient. Over GF(p): scaled to a monic leading term.
    pub fn normalized(&self) -> Poly {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        match self.field {
            Field::Prime(_) => self.scale(&lead.inv().expect("nonzero")),
            Field::Rational => {
                let qs: Vec<&BigRational> =
                    self.terms.values().map(|c| c.as_rational().unwrap()).collect();
                let l = denominator_lcm(qs.iter().copied());
                let ints: Vec<BigInt> = qs
                    .iter()
                    .map(|q| (*q * BigRational::from_integer(l.clone())).to_integer())
                    .collect();
                let mut g = integer_content(ints.iter());
                if ints.last().unwrap().is_negative() {
                    g = -g;
                }
                let factor = BigRational::new(l, g);
                self.scale(&Scalar::Rat(factor))
            }
        }
    }

    /// Integer coefficients, when every coefficient is integral over Q.
    pub fn integer_coefficients(&self) -> Result<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let q = c.as_rational().ok_or(Error::NotIntegral)?;
                if !q.denom().is_one() {
                    return Err(Error::NotIntegral);
                }
                Ok((m.clone(), q.numer().clone()))
            })
            .collect()
    }

    /// Divides integer coefficients by their gcd (sign preserved).
    pub(crate) fn content_normalized(&self) -> Result<Poly> {
        let ints = self.integer_coefficients()?;
        let g = integer_content(ints.iter().map(|(_, c)| c));
        if g.is_zero() || g.is_one() {
            return Ok(self.clone());
        }
        let inv = Scalar::Rat(BigRational::new(BigInt::one(), g));
        Ok(self.scale(&inv))
    }

    /// Drops terms using a variable for which `keep` is false.
    pub fn filter_vars(&self, mut keep: impl FnMut(&Var) -> bool) -> Poly {
        let mut out = Poly::zero(self.space.clone(), self.field, self.degree);
        for (m, c) in &self.terms {
            if m.powers().iter().all(|(v, _)| keep(v)) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in m.powers() {
                let idx: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "*x_{{{}}}", idx.join(","))?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det2() -> Poly {
        Poly::from_i64(
            VarSpace::Tensor(vec![2, 2]),
            Field::Rational,
            &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], -1)],
        )
        .unwrap()
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let x = |i: usize| Monomial::var(vec![i]);
        assert!(x(0) > x(1));
        assert!(x(0).mul(&x(0)) > x(0).mul(&x(1)));
        assert!(x(0).mul(&x(1)) > x(1).mul(&x(1)));
        assert!(x(2).mul(&x(2)) > x(0));
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let d = det2();
        let sq = d.mul(&d).unwrap();
        assert_eq!(sq.degree(), 4);
        assert_eq!(sq.len(), 3);
        let t = Tensor::from_i64_matrix(Field::Rational, &[&[1, 2], &[3, 4]]);
        assert_eq!(d.eval_at(&t).unwrap(), Field::Rational.from_i64(-2));
        assert!(d.sub(&d).unwrap().is_zero());
        let swapped = d.permute_indices(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(swapped, d.neg());
    }

    #[test]
    fn normalization() {
        let q = Field::Rational;
        let p = Poly::from_terms(
            VarSpace::Point(2),
            q,
            1,
            vec![
                (Monomial::var(vec![0]), q.parse_scalar("-2/3").unwrap()),
                (Monomial::var(vec![1]), q.parse_scalar("4").unwrap()),
            ],
        )
        .unwrap();
        let n = p.normalized();
        assert_eq!(n.coefficient(&Monomial::var(vec![0])), q.from_i64(1));
        assert_eq!(n.coefficient(&Monomial::var(vec![1])), q.from_i64(-6));
    }

    #[test]
    fn composition_expands() {
        // det(u v^T) = 0 symbolically
        let space = VarSpace::Params;
        let q = Field::Rational;
        let comp = det2()
            .compose(space.clone(), |v| {
                Poly::from_terms(
                    space.clone(),
                    q,
                    2,
                    [(
                        Monomial::from_powers(vec![(vec![0, v[0]], 1), (vec![1, v[1]], 1)]),
                        q.one(),
                    )],
                )
                .unwrap()
            })
            .unwrap();
        assert!(comp.is_zero());
    }
}
