//! Fibers of the monomial map: all nonnegative integer exponent vectors
//! with a fixed A-degree, enumerated exhaustively through the kernel
//! lattice rather than by scanning exponent boxes.

use crate::binomial::ADegree;
use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;
use crate::Limits;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// The finite set `F_b = { u >= 0 : A u = b }`, stored sorted.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub degree: ADegree,
    pub points: Vec<Vec<BigInt>>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Complete fiber of `b = A·witness`, computed as `(witness + ker_Z(A)) ∩ N^m`.
///
/// The lattice coefficients live in the polytope `{λ : witness + Gλ >= 0}`;
/// its integer points are enumerated coordinate by coordinate with exact
/// Fourier–Motzkin bounds, so the enumeration is exhaustive. Kernel
/// dimensions stay tiny (≤ 3) for every graph class handled here.
pub fn fiber(matrix: &IntegerMatrix, witness: &[BigInt], limits: &Limits) -> Result<Fiber> {
    if witness.iter().any(|x| x.is_negative()) {
        return Err(Error::NegativeExponent);
    }
    if witness.len() != matrix.cols() {
        return Err(Error::DimensionMismatch {
            expected: matrix.cols(),
            got: witness.len(),
        });
    }
    if !matrix.is_positively_graded() {
        return Err(Error::NotPositivelyGraded); // fibers would be infinite
    }
    let degree = ADegree(matrix.mul_vector(witness)?);
    let lattice = matrix.integer_kernel_basis();
    let d = lattice.len();
    if d == 0 {
        return Ok(Fiber {
            degree,
            points: vec![witness.to_vec()],
        });
    }
    // constraints: for each edge i, sum_j lattice[j][i] * λ_j >= -witness[i]
    let constraints: Vec<(Vec<BigRational>, BigRational)> = (0..witness.len())
        .map(|i| {
            let coeffs = (0..d)
                .map(|j| BigRational::from(lattice[j][i].clone()))
                .collect();
            (coeffs, BigRational::from(-witness[i].clone()))
        })
        .collect();
    let mut candidates: u64 = 0;
    let mut points = Vec::new();
    let mut assignment = vec![BigInt::zero(); d];
    enumerate(
        &constraints,
        0,
        &mut assignment,
        &mut candidates,
        limits,
        &mut |lambda| {
            let mut point = witness.to_vec();
            for (j, l) in lambda.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                for i in 0..point.len() {
                    point[i] += l * &lattice[j][i];
                }
            }
            debug_assert!(point.iter().all(|x| !x.is_negative()));
            points.push(point);
            if points.len() as u64 > limits.max_fiber_points {
                return Err(Error::FiberSizeCap(limits.max_fiber_points));
            }
            Ok(())
        },
    )?;
    points.sort();
    Ok(Fiber { degree, points })
}

/// Recursively enumerates integer points of `{λ : coeffs·λ >= rhs ∀rows}`,
/// fixing λ_level within exact projection bounds at each level.
fn enumerate(
    constraints: &[(Vec<BigRational>, BigRational)],
    level: usize,
    assignment: &mut [BigInt],
    candidates: &mut u64,
    limits: &Limits,
    emit: &mut dyn FnMut(&[BigInt]) -> Result<()>,
) -> Result<()> {
    let d = assignment.len();
    if level == d {
        let ok = constraints.iter().all(|(coeffs, rhs)| {
            let lhs: BigRational = coeffs
                .iter()
                .zip(assignment.iter())
                .map(|(c, a)| c * BigRational::from(a.clone()))
                .sum();
            lhs >= *rhs
        });
        if ok {
            emit(assignment)?;
        }
        return Ok(());
    }
    let Some((lo, hi)) = projection_bounds(constraints, level, assignment) else {
        return Ok(()); // infeasible branch
    };
    let mut v = lo;
    while v <= hi {
        *candidates += 1;
        if *candidates > limits.max_fiber_candidates {
            return Err(Error::FiberCandidateCap(limits.max_fiber_candidates));
        }
        assignment[level] = v.clone();
        enumerate(constraints, level + 1, assignment, candidates, limits, emit)?;
        v += 1;
    }
    assignment[level] = BigInt::zero();
    Ok(())
}

/// Integer bounds on λ_level given fixed λ_0..λ_{level-1}, obtained by
/// Fourier–Motzkin elimination of the later variables. Returns `None` when
/// the projected interval is empty, `(lo, hi)` otherwise.
fn projection_bounds(
    constraints: &[(Vec<BigRational>, BigRational)],
    level: usize,
    fixed: &[BigInt],
) -> Option<(BigInt, BigInt)> {
    let d = fixed.len();
    // substitute the fixed prefix: rows become coeffs over λ_level..λ_{d-1}
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = constraints
        .iter()
        .map(|(coeffs, rhs)| {
            let mut r = rhs.clone();
            for j in 0..level {
                r -= &coeffs[j] * BigRational::from(fixed[j].clone());
            }
            (coeffs[level..].to_vec(), r)
        })
        .collect();
    // eliminate variables after λ_level, last to first
    for var in (1..d - level).rev() {
        let mut lower = Vec::new(); // rows with positive coefficient: λ_var >= ...
        let mut upper = Vec::new(); // rows with negative coefficient: λ_var <= ...
        let mut rest = Vec::new();
        for (coeffs, rhs) in rows {
            let c = coeffs[var].clone();
            if c.is_zero() {
                rest.push((coeffs, rhs));
            } else if c.is_positive() {
                lower.push((coeffs, rhs, c));
            } else {
                upper.push((coeffs, rhs, c));
            }
        }
        for (lc, lr, lcoef) in &lower {
            for (uc, ur, ucoef) in &upper {
                // combine to cancel λ_var; inequality directions preserved
                let mut coeffs: Vec<BigRational> = (0..lc.len())
                    .map(|j| &lc[j] * (-ucoef.clone()) + &uc[j] * lcoef.clone())
                    .collect();
                let rhs = lr * (-ucoef.clone()) + ur * lcoef.clone();
                coeffs[var] = BigRational::zero();
                rest.push((coeffs, rhs));
            }
        }
        // a one-sided variable is unbounded on that side only if some row
        // still mentions it; nonnegativity of the fiber keeps the polytope
        // bounded, so dropping the one-sided rows is sound for bounds on
        // λ_level (they cannot tighten its interval).
        rows = rest;
    }
    // rows now involve only λ_level
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for (coeffs, rhs) in &rows {
        let c = &coeffs[0];
        if c.is_zero() {
            if rhs.is_positive() {
                return None; // 0 >= positive: infeasible
            }
            continue;
        }
        let bound = rhs / c;
        if c.is_positive() {
            if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|h| bound < *h) {
            hi = Some(bound);
        }
    }
    let (lo, hi) = (lo?, hi?);
    let lo_int = lo.ceil().to_integer();
    let hi_int = hi.floor().to_integer();
    (lo_int <= hi_int).then_some((lo_int, hi_int))
}
