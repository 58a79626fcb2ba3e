//! Enumeration-based point counters, independent of the chi-sum path under
//! test: plain modular arithmetic, no calls into the counting code.

use num_rational::BigRational;
use qmsurf_core::curve::CurveModel;
use qmsurf_core::quadfield::QuadElem;

/// A rational curve model from integer coefficients; None when the degree
/// falls below 5.
pub fn rational_curve(coeffs: [i64; 7]) -> Option<CurveModel> {
    let elems = coeffs.map(|c| {
        QuadElem::new(1, BigRational::from_integer(c.into()), BigRational::from_integer(0.into()))
            .unwrap()
    });
    CurveModel::new(1, elems).ok()
}

fn eval(coeffs: &[u64; 7], x: u64, p: u64) -> u64 {
    let mut acc: u64 = 0;
    for k in (0..7).rev() {
        acc = (acc * x + coeffs[k] % p) % p;
    }
    acc
}

fn degree(coeffs: &[u64; 7], p: u64) -> usize {
    if coeffs[6] % p != 0 {
        6
    } else {
        5
    }
}

/// Literal (x, y) double loop over F_p, plus points at infinity.
pub fn degree1(coeffs: &[u64; 7], p: u64) -> u64 {
    let mut n = 0;
    for x in 0..p {
        let fx = eval(coeffs, x, p);
        for y in 0..p {
            if y * y % p == fx {
                n += 1;
            }
        }
    }
    if degree(coeffs, p) == 6 {
        let lc = coeffs[6] % p;
        if (1..p).any(|y| y * y % p == lc) {
            n += 2;
        }
    } else {
        n += 1;
    }
    n
}

// F_{p^2} as pairs (a, b) = a + b w, w^2 = nr, nr the smallest non-residue.

fn nonresidue(p: u64) -> u64 {
    let squares: std::collections::HashSet<u64> = (1..p).map(|y| y * y % p).collect();
    (2..p).find(|n| !squares.contains(n)).expect("odd p has a non-residue")
}

fn mul2(x: (u64, u64), y: (u64, u64), p: u64, nr: u64) -> (u64, u64) {
    ((x.0 * y.0 + x.1 * y.1 % p * nr) % p, (x.0 * y.1 + x.1 * y.0) % p)
}

fn eval2(coeffs: &[u64; 7], x: (u64, u64), p: u64, nr: u64) -> (u64, u64) {
    let mut acc = (0, 0);
    for k in (0..7).rev() {
        acc = mul2(acc, x, p, nr);
        acc = ((acc.0 + coeffs[k] % p) % p, acc.1);
    }
    acc
}

/// Enumerates all (x, y) in F_{p^2} x F_{p^2}, organised by tabulating the
/// multiset of squares y^2 first.
pub fn degree2(coeffs: &[u64; 7], p: u64) -> u64 {
    let nr = nonresidue(p);
    let mut sq_count = std::collections::HashMap::new();
    for a in 0..p {
        for b in 0..p {
            let y2 = mul2((a, b), (a, b), p, nr);
            *sq_count.entry(y2).or_insert(0u64) += 1;
        }
    }
    let mut n = 0;
    for a in 0..p {
        for b in 0..p {
            let fx = eval2(coeffs, (a, b), p, nr);
            n += sq_count.get(&fx).copied().unwrap_or(0);
        }
    }
    if degree(coeffs, p) == 6 {
        let lc = (coeffs[6] % p, 0);
        if sq_count.get(&lc).copied().unwrap_or(0) > 0 {
            n += 2;
        }
    } else {
        n += 1;
    }
    n
}

/// The same count by the literal quadruple loop; O(p^4), small p only.
pub fn degree2_quadruple_loop(coeffs: &[u64; 7], p: u64) -> u64 {
    let nr = nonresidue(p);
    let mut n = 0;
    for xa in 0..p {
        for xb in 0..p {
            let fx = eval2(coeffs, (xa, xb), p, nr);
            for ya in 0..p {
                for yb in 0..p {
                    if mul2((ya, yb), (ya, yb), p, nr) == fx {
                        n += 1;
                    }
                }
            }
        }
    }
    if degree(coeffs, p) == 6 {
        let lc = (coeffs[6] % p, 0);
        let mut square = false;
        'outer: for ya in 0..p {
            for yb in 0..p {
                if (ya, yb) != (0, 0) && mul2((ya, yb), (ya, yb), p, nr) == lc {
                    square = true;
                    break 'outer;
                }
            }
        }
        if square {
            n += 2;
        }
    } else {
        n += 1;
    }
    n
}
