//! Pure binomials as signed exponent vectors, A-degrees, the conformal
//! order, and multivariate division by binomial bases.

use crate::error::{Error, Result};
use crate::linalg::{self, IntegerMatrix};
use crate::order::TermOrder;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Integer vector `m` indexed by edges, encoding the pure binomial
/// `f_m = e^{m_+} - e^{m_-}` where `m_+` and `m_-` are the positive and
/// negative parts. The two supports are disjoint by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedExponentVector {
    entries: Vec<BigInt>,
}

impl SignedExponentVector {
    /// Sign-normalized binomial from a nonzero integer vector: the entry at
    /// the lowest-index support edge is made positive.
    pub fn from_vector(mut entries: Vec<BigInt>) -> Result<Self> {
        if entries.iter().all(BigInt::is_zero) {
            return Err(Error::ZeroVector);
        }
        linalg::sign_normalize(&mut entries);
        Ok(SignedExponentVector { entries })
    }

    /// Raw constructor keeping the given signs (used where a formula fixes
    /// the sign, e.g. the shared-path closed form).
    pub fn from_vector_unnormalized(entries: Vec<BigInt>) -> Result<Self> {
        if entries.iter().all(BigInt::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(SignedExponentVector { entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn positive_part(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|x| {
                if x.is_positive() {
                    x.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    pub fn negative_part(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|x| {
                if x.is_negative() {
                    -x.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&i| !self.entries[i].is_zero())
            .collect()
    }

    pub fn negated(&self) -> SignedExponentVector {
        SignedExponentVector {
            entries: self.entries.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn sign_normalized(&self) -> SignedExponentVector {
        let mut entries = self.entries.clone();
        linalg::sign_normalize(&mut entries);
        SignedExponentVector { entries }
    }

    /// Total degree `|m_+| + |m_-|`, the sorting key for canonical bases.
    pub fn total_degree(&self) -> BigInt {
        self.entries.iter().map(|x| x.abs()).sum()
    }

    /// Canonical string like `e1^3*e2^3*e5^2 - e3*e4^8`: factors sorted by
    /// edge index, caret exponents, positive part first. Bit-exact across
    /// runs.
    pub fn render(&self, labels: &[String]) -> String {
        let pos = render_monomial(&self.positive_part(), labels);
        let neg = render_monomial(&self.negative_part(), labels);
        format!("{pos} - {neg}")
    }

    /// Parses the canonical format produced by [`render`](Self::render).
    pub fn parse(s: &str, labels: &[String]) -> Result<Self> {
        let (pos_str, neg_str) = s
            .split_once(" - ")
            .ok_or_else(|| Error::BinomialParse(s.to_string()))?;
        let pos = parse_monomial(pos_str, labels)?;
        let neg = parse_monomial(neg_str, labels)?;
        let entries: Vec<BigInt> = pos.iter().zip(neg.iter()).map(|(p, n)| p - n).collect();
        Self::from_vector(entries)
    }
}

pub fn render_monomial(exponents: &[BigInt], labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, e) in exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(labels[i].clone());
        } else {
            parts.push(format!("{}^{}", labels[i], e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn parse_monomial(s: &str, labels: &[String]) -> Result<Vec<BigInt>> {
    let mut exps = vec![BigInt::zero(); labels.len()];
    let s = s.trim();
    if s == "1" {
        return Ok(exps);
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: BigInt = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::BinomialParse(factor.to_string()))?;
                (n.trim(), e)
            }
            None => (factor, BigInt::one()),
        };
        let idx = labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))?;
        if exp.is_negative() {
            return Err(Error::NegativeExponent);
        }
        exps[idx] += exp;
    }
    Ok(exps)
}

/// A-degree of a monomial exponent vector: the vector `A·u` over the vertex
/// rows. Both monomials of any binomial in the toric ideal share it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ADegree(pub Vec<BigInt>);

pub fn a_degree(matrix: &IntegerMatrix, u: &[BigInt]) -> Result<ADegree> {
    if u.iter().any(|x| x.is_negative()) {
        return Err(Error::NegativeExponent);
    }
    Ok(ADegree(matrix.mul_vector(u)?))
}

/// Conformal order: `u ⊑ v` iff `u_+ <= v_+` and `u_- <= v_-` componentwise,
/// i.e. sign-compatible divisibility of both monomials.
pub fn conformal_leq(u: &[BigInt], v: &[BigInt]) -> bool {
    u.iter().zip(v.iter()).all(|(a, b)| {
        if a.is_positive() {
            b >= a
        } else if a.is_negative() {
            b <= a
        } else {
            true
        }
    })
}

/// One- or two-term remainder of a division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    Zero,
    Monomial(Vec<BigInt>),
    /// Leading term first with respect to the order used in the division.
    Binomial(Vec<BigInt>, Vec<BigInt>),
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero)
    }
}

/// Basis element prepared for division: leading and trailing monomials with
/// respect to a fixed term order.
#[derive(Debug, Clone)]
pub struct OrientedBinomial {
    pub lead: Vec<BigInt>,
    pub tail: Vec<BigInt>,
}

impl OrientedBinomial {
    pub fn orient(b: &SignedExponentVector, order: &TermOrder) -> Self {
        let pos = b.positive_part();
        let neg = b.negative_part();
        match order.cmp_monomials(&pos, &neg) {
            Ordering::Less => OrientedBinomial {
                lead: neg,
                tail: pos,
            },
            _ => OrientedBinomial {
                lead: pos,
                tail: neg,
            },
        }
    }

    pub fn to_vector(&self) -> Vec<BigInt> {
        self.lead
            .iter()
            .zip(self.tail.iter())
            .map(|(l, t)| l - t)
            .collect()
    }
}

pub fn monomial_divides(d: &[BigInt], m: &[BigInt]) -> bool {
    d.iter().zip(m.iter()).all(|(a, b)| a <= b)
}

/// Reduces one monomial by the first basis element whose leading term
/// divides it (lowest index wins, which makes division deterministic).
fn reduce_once(m: &mut [BigInt], basis: &[OrientedBinomial]) -> bool {
    for b in basis {
        if monomial_divides(&b.lead, m) {
            for (mi, (lead, tail)) in m.iter_mut().zip(b.lead.iter().zip(&b.tail)) {
                *mi = &*mi - lead + tail;
            }
            return true;
        }
    }
    false
}

/// Normal form of a monomial or a difference of two monomials modulo a list
/// of oriented binomials. Terms are rewritten until none is divisible by a
/// leading term; equal terms cancel to zero.
pub fn normal_form(
    target: (&[BigInt], Option<&[BigInt]>),
    basis: &[OrientedBinomial],
    order: &TermOrder,
    mut budget: Option<&mut u64>,
) -> Result<NormalForm> {
    let mut first = target.0.to_vec();
    let mut second = target.1.map(<[BigInt]>::to_vec);
    loop {
        if let Some(b) = budget.as_deref_mut() {
            if *b == 0 {
                return Err(Error::CompletionCap(0));
            }
            *b -= 1;
        }
        if let Some(s) = &second {
            if *s == first {
                return Ok(NormalForm::Zero);
            }
        }
        if reduce_once(&mut first, basis) {
            continue;
        }
        let second_reduced = match &mut second {
            Some(s) => reduce_once(s, basis),
            None => false,
        };
        if !second_reduced {
            break;
        }
    }
    match second {
        None => Ok(NormalForm::Monomial(first)),
        Some(s) if s == first => Ok(NormalForm::Zero),
        Some(s) => {
            if order.cmp_monomials(&first, &s) == Ordering::Less {
                Ok(NormalForm::Binomial(s, first))
            } else {
                Ok(NormalForm::Binomial(first, s))
            }
        }
    }
}
