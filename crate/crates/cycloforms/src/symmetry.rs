//! Automorphism groups of cyclotomic forms, the rational weights `w_n`, and
//! the isomorphism classification.
//!
//! The group is `D4` (the eight signed permutation matrices) exactly when
//! `4 | n`, else `D2 = {I, -I, swap, -swap}`. Groups are written down from
//! that classification and then re-verified by evaluation, so a slip in the
//! matrix lists cannot go unnoticed.

use num_rational::Ratio;

use crate::cycloform::cyclotomic_poly;
use crate::{Error, Result};

/// 2x2 integer matrix acting on column vectors `(x, y)`.
pub type Mat = [[i64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    D2,
    D4,
}

/// The automorphism group of a cyclotomic form, as explicit matrices.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub kind: GroupKind,
    pub generators: Vec<Mat>,
    pub elements: Vec<Mat>,
}

const IDENTITY: Mat = [[1, 0], [0, 1]];
const SWAP: Mat = [[0, 1], [1, 0]];
const FLIP_Y: Mat = [[1, 0], [0, -1]];

fn neg(m: Mat) -> Mat {
    [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
}

fn mat_mul(a: Mat, b: Mat) -> Mat {
    let mut c = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Apply `m` to the pair `(x, y)`.
pub fn mat_apply(m: Mat, x: i64, y: i64) -> (i64, i64) {
    (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)
}

/// Deterministic sample pairs for verifying the defining identity.
fn sample_pairs(seed: u64, count: usize) -> Vec<(i64, i64)> {
    let mut state = seed | 1;
    let mut next = || {
        // xorshift64; range clipped to small magnitudes to keep values exact-cheap.
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 19) as i64 - 9
    };
    (0..count).map(|_| (next(), next())).collect()
}

/// Whether `m` fixes the form `Phi_n` at the given sample pairs.
fn is_automorphism_at(n: u64, m: Mat, pairs: &[(i64, i64)]) -> Result<bool> {
    let form = cyclotomic_poly(n)?;
    for &(x, y) in pairs {
        let (u, v) = mat_apply(m, x, y);
        if form.evaluate_i64(u, v) != form.evaluate_i64(x, y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The automorphism group of `Phi_n`: `D4` iff `4 | n`, else `D2`.
///
/// The element list is verified by evaluation at 5 pseudo-random sample
/// pairs before being returned.
pub fn automorphism_group(n: u64) -> Result<AutGroup> {
    if n < 3 {
        return Err(Error::IndexTooSmall(n, 3));
    }
    let (kind, generators) = if n % 4 == 0 {
        (GroupKind::D4, vec![SWAP, FLIP_Y])
    } else {
        (GroupKind::D2, vec![SWAP, neg(IDENTITY)])
    };
    // Close the generators under multiplication.
    let mut elements = vec![IDENTITY];
    let mut frontier = elements.clone();
    while let Some(m) = frontier.pop() {
        for &g in &generators {
            let p = mat_mul(m, g);
            if !elements.contains(&p) {
                elements.push(p);
                frontier.push(p);
            }
        }
    }
    let expected = match kind {
        GroupKind::D2 => 4,
        GroupKind::D4 => 8,
    };
    debug_assert_eq!(elements.len(), expected);
    let pairs = sample_pairs(n.wrapping_mul(0x9e3779b97f4a7c15), 5);
    for &m in &elements {
        if !is_automorphism_at(n, m, &pairs)? {
            return Err(Error::AutomorphismRejected(n));
        }
    }
    elements.sort_unstable();
    Ok(AutGroup {
        kind,
        generators,
        elements,
    })
}

/// The Stewart-Xiao weight for the two groups cyclotomic forms realise.
///
/// `D2` takes one lattice determinant `d` and returns `(1 - 1/(2d)) / 2`;
/// `D4` takes determinants `(d1, d2, d3, d)` and returns
/// `(1 - 1/(2 d1) - 1/(2 d2) - 1/(2 d3) + 3/(4 d)) / 2`.
pub fn stewart_xiao_weight(kind: GroupKind, lattice_dets: &[i64]) -> Result<Ratio<i64>> {
    if lattice_dets.iter().any(|&d| d == 0) {
        return Err(Error::ZeroDeterminant);
    }
    let dets: Vec<i64> = lattice_dets.iter().map(|&d| d.abs()).collect();
    let half = Ratio::new(1, 2);
    match kind {
        GroupKind::D2 => {
            if dets.len() != 1 {
                return Err(Error::BadDeterminantCount {
                    kind: "D2",
                    expected: 1,
                    got: dets.len(),
                });
            }
            Ok(half * (Ratio::from_integer(1) - Ratio::new(1, 2 * dets[0])))
        }
        GroupKind::D4 => {
            if dets.len() != 4 {
                return Err(Error::BadDeterminantCount {
                    kind: "D4",
                    expected: 4,
                    got: dets.len(),
                });
            }
            let sum = Ratio::from_integer(1) - Ratio::new(1, 2 * dets[0])
                - Ratio::new(1, 2 * dets[1])
                - Ratio::new(1, 2 * dets[2])
                + Ratio::new(3, 4 * dets[3]);
            Ok(half * sum)
        }
    }
}

/// The weight `w_n`: `1/4` if `4` does not divide `n`, else `1/8`.
pub fn w_weight(n: u64) -> Result<Ratio<i64>> {
    if n < 3 {
        return Err(Error::IndexTooSmall(n, 3));
    }
    Ok(if n % 4 == 0 {
        Ratio::new(1, 8)
    } else {
        Ratio::new(1, 4)
    })
}

/// Whether `Phi_n1` and `Phi_n2` are isomorphic: equal indices, or
/// `{n1, n2} = {k, 2k}` with `k` odd.
pub fn are_isomorphic(n1: u64, n2: u64) -> bool {
    if n1 == n2 {
        return true;
    }
    let (small, large) = if n1 < n2 { (n1, n2) } else { (n2, n1) };
    large == 2 * small && small % 2 == 1
}

/// The representative of the isomorphism class of `Phi_n`:
/// `n` itself unless `n = 2 mod 4`, in which case the odd half.
pub fn canonicalize(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}
