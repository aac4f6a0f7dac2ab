//! Torus weights of tensor-entry polynomials, polarization and
//! multilinearization.

use std::collections::BTreeMap;

use super::poly::{Monomial, Poly, VarSpace};
use crate::algebra::Field;
use crate::error::{Error, Result};

/// Per-axis index multiplicities `(alpha_1, ..., alpha_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<Vec<u32>>);

impl WeightVector {
    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|a| a.iter().all(|&w| w <= 1))
    }
}

fn tensor_dims(f: &Poly) -> Result<&[usize]> {
    match f.space() {
        VarSpace::Tensor(dims) => Ok(dims),
        other => Err(Error::InvalidInput(format!(
            "expected tensor-entry variables, got {other:?}"
        ))),
    }
}

fn monomial_weight(dims: &[usize], m: &Monomial) -> WeightVector {
    let mut w: Vec<Vec<u32>> = dims.iter().map(|&n| vec![0; n]).collect();
    for (v, e) in m.powers() {
        for (a, &i) in v.iter().enumerate() {
            w[a][i] += e;
        }
    }
    WeightVector(w)
}

fn show(m: &Monomial) -> String {
    Poly::from_terms(VarSpace::Params, Field::Rational, m.degree(), [(m.clone(), Field::Rational.one())])
        .map(|p| p.to_string())
        .unwrap_or_default()
}

/// The common weight of all monomials of `f`.
pub fn weight_of(f: &Poly) -> Result<WeightVector> {
    let dims = tensor_dims(f)?;
    let mut terms = f.terms();
    let Some((first, _)) = terms.next() else {
        return Ok(WeightVector(dims.iter().map(|&n| vec![0; n]).collect()));
    };
    let w = monomial_weight(dims, first);
    for (m, _) in terms {
        if monomial_weight(dims, m) != w {
            return Err(Error::NotWeightHomogeneous {
                first: show(first),
                second: show(m),
            });
        }
    }
    Ok(w)
}

/// Splits `f` into weight-homogeneous parts, ordered by weight.
pub fn weight_components(f: &Poly) -> Result<Vec<(WeightVector, Poly)>> {
    let dims = tensor_dims(f)?;
    let mut parts: BTreeMap<WeightVector, Vec<(Monomial, crate::algebra::Scalar)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        parts
            .entry(monomial_weight(dims, m))
            .or_default()
            .push((m.clone(), c.clone()));
    }
    parts
        .into_iter()
        .map(|(w, terms)| {
            Ok((w, Poly::from_terms(f.space().clone(), f.field(), f.degree(), terms)?))
        })
        .collect()
}

/// Applies the raising derivation that moves one occurrence of index `j`
/// on `axis` to the fresh index `dims[axis]`, then divides by the content.
pub fn polarize(f: &Poly, axis: usize, j: usize) -> Result<Poly> {
    let dims = tensor_dims(f)?.to_vec();
    if axis >= dims.len() || j >= dims[axis] {
        return Err(Error::IndexOutOfRange(format!("axis {axis}, index {j}")));
    }
    let w = weight_of(f)?;
    if w.0[axis][j] < 2 {
        return Err(Error::WeightTooLow {
            axis,
            index: j,
            weight: w.0[axis][j],
        });
    }
    f.integer_coefficients()?;
    let fresh = dims[axis];
    let mut new_dims = dims.clone();
    new_dims[axis] += 1;
    let mut out = Poly::zero(VarSpace::Tensor(new_dims), f.field(), f.degree());
    for (m, c) in f.terms() {
        for (v, e) in m.powers() {
            if v[axis] != j {
                continue;
            }
            let mut moved = v.clone();
            moved[axis] = fresh;
            let rest = m.div_var(v).expect("variable occurs");
            let coef = c * &f.field().from_u32(*e);
            out.add_term(rest.mul(&Monomial::var(moved)), coef);
        }
    }
    debug_assert!(!out.is_zero(), "derivation of a nonzero weight vector");
    out.content_normalized()
}

/// Drops index slices that no variable uses and compacts the rest in order.
pub fn remove_unused_slices(f: &Poly) -> Result<Poly> {
    let dims = tensor_dims(f)?;
    let w = weight_of(f)?;
    let maps: Vec<Vec<usize>> = w
        .0
        .iter()
        .map(|a| {
            let mut next = 0;
            a.iter()
                .map(|&x| {
                    let k = next;
                    if x > 0 {
                        next += 1;
                    }
                    k
                })
                .collect()
        })
        .collect();
    let new_dims: Vec<usize> = w
        .0
        .iter()
        .zip(dims)
        .map(|(a, _)| a.iter().filter(|&&x| x > 0).count())
        .collect();
    f.map_vars(VarSpace::Tensor(new_dims), |v| {
        v.iter().enumerate().map(|(a, &i)| maps[a][i]).collect()
    })
}

/// Polarizes until every weight entry is 0 or 1, removes unused slices,
/// and normalizes the content. The input must be a nonzero weight vector
/// with integer coefficients.
pub fn multilinearize(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot multilinearize the zero polynomial".into()));
    }
    let mut g = f.content_normalized()?;
    loop {
        let w = weight_of(&g)?;
        let next = w
            .0
            .iter()
            .enumerate()
            .find_map(|(a, al)| al.iter().position(|&x| x >= 2).map(|j| (a, j)));
        match next {
            Some((a, j)) => g = polarize(&g, a, j)?,
            None => break,
        }
    }
    let g = remove_unused_slices(&g)?;
    let dims = tensor_dims(&g)?;
    debug_assert!(dims.iter().all(|&n| n as u32 == g.degree()));
    Ok(g)
}

/// Multilinearizes each weight component of a general polynomial.
pub fn multilinearize_components(f: &Poly) -> Result<Vec<Poly>> {
    weight_components(f)?
        .into_iter()
        .map(|(_, p)| multilinearize(&p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn poly(dims: &[usize], terms: &[(&[&[usize]], i64)]) -> Poly {
        Poly::from_i64(VarSpace::Tensor(dims.to_vec()), q(), terms).unwrap()
    }

    #[test]
    fn weights() {
        let det = poly(&[2, 2], &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], -1)]);
        assert_eq!(weight_of(&det).unwrap(), WeightVector(vec![vec![1, 1], vec![1, 1]]));
        let sq = poly(&[1, 1], &[(&[&[0, 0], &[0, 0]], 1)]);
        assert_eq!(weight_of(&sq).unwrap(), WeightVector(vec![vec![2], vec![2]]));
        let mixed = poly(&[2, 2], &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 0], &[1, 0]], 1)]);
        assert!(matches!(weight_of(&mixed), Err(Error::NotWeightHomogeneous { .. })));
        assert_eq!(weight_components(&mixed).unwrap().len(), 2);
    }

    #[test]
    fn polarization_steps() {
        let sq = poly(&[1, 1], &[(&[&[0, 0], &[0, 0]], 1)]);
        let p1 = polarize(&sq, 0, 0).unwrap();
        assert_eq!(p1, poly(&[2, 1], &[(&[&[0, 0], &[1, 0]], 1)]));
        let p2 = polarize(&p1, 1, 0).unwrap();
        assert_eq!(
            p2,
            poly(&[2, 2], &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], 1)])
        );
        assert!(matches!(polarize(&p2, 0, 0), Err(Error::WeightTooLow { .. })));
    }

    #[test]
    fn multilinearization() {
        let det = poly(&[2, 2], &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], -1)]);
        assert_eq!(multilinearize(&det).unwrap(), det);
        let perm = poly(&[2, 2], &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], 1)]);
        let sq = poly(&[1, 1], &[(&[&[0, 0], &[0, 0]], 1)]);
        assert_eq!(multilinearize(&sq).unwrap(), perm);
        let x = poly(&[1, 2], &[(&[&[0, 0], &[0, 1]], 1)]);
        assert_eq!(multilinearize(&x).unwrap(), perm);
        // unused slices in the declared space are dropped
        let sparse = poly(&[3, 3], &[(&[&[2, 2], &[2, 2]], 3)]);
        assert_eq!(multilinearize(&sparse).unwrap(), perm);
    }
}
