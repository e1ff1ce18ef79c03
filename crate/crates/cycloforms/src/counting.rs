//! Exact represented-integer sets `B_n(N)`, the union counts `A_d(N)`,
//! common-value counters for pairs of forms, and representation-multiplicity
//! statistics.
//!
//! Everything here is exhaustive lattice enumeration: the search box comes
//! from the height bound `max(|x|, |y|) <= (2/sqrt 3) m^{1/phi(n)}`, values
//! are pruned with capped evaluation, and the union count is realised as a
//! presence bitmap over `[1, N]`. Results are contracted to be independent
//! of work partitioning.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::cycloform::{cyclotomic_poly, Bounded, BinaryForm};
use crate::numtheory::euler_phi;
use crate::{Error, Result};

/// Default cap on the sieve range `[1, N]`.
pub const DEFAULT_SIEVE_CAP: u64 = 1 << 31;
/// Default cap on the half-side of enumeration boxes `[-B, B]^2`.
pub const DEFAULT_BOX_CAP: u64 = 20_000;

/// What a [`RepresentationTable`] was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub indices: Vec<u64>,
    pub limit: u64,
    pub require_height2: bool,
}

/// One witnessing representation `value = Phi_index(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub index: u64,
    pub x: i64,
    pub y: i64,
}

/// Sorted, duplicate-free list of represented integers in `[1, limit]`.
#[derive(Debug, Clone)]
pub struct RepresentationTable {
    pub spec: TableSpec,
    pub members: Vec<u64>,
    pub witnesses: Option<BTreeMap<u64, Witness>>,
}

impl RepresentationTable {
    pub fn count(&self) -> u64 {
        self.members.len() as u64
    }
}

/// The search radius for representations of `m` by `Phi_n`:
/// `(2/sqrt 3) * m^(1/phi(n))`.
pub fn height_bound(m: u64, n: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::ZeroArgument("m"));
    }
    let d = euler_phi(n)?;
    if d < 2 {
        return Err(Error::DegreeTooSmall(n, d, 2));
    }
    Ok(2.0 / 3f64.sqrt() * (m as f64).powf(1.0 / d as f64))
}

/// Degree and index cutoffs for values up to `N`:
/// `max_degree = floor((2/log 3) log N)` and
/// `max_index = floor(5.383 (log N)^1.161)`.
pub fn degree_bound(n_limit: u64) -> Result<(u64, u64)> {
    if n_limit < 3 {
        return Err(Error::IndexTooSmall(n_limit, 3));
    }
    let log_n = (n_limit as f64).ln();
    let max_degree = (2.0 / 3f64.ln() * log_n).floor() as u64;
    let max_index = (5.383 * log_n.powf(1.161)).floor() as u64;
    Ok((max_degree, max_index))
}

/// Exact `B_n(N)`: the integers in `[1, N]` of the form `Phi_n(x, y)`,
/// with `max(|x|, |y|) >= 2` when `require_height2` is set.
pub fn represented_by_form(n: u64, limit: u64, require_height2: bool) -> Result<RepresentationTable> {
    if n < 3 {
        return Err(Error::IndexTooSmall(n, 3));
    }
    if limit == 0 {
        return Err(Error::ZeroArgument("limit"));
    }
    if limit > DEFAULT_SIEVE_CAP {
        return Err(Error::SieveCapExceeded(limit, DEFAULT_SIEVE_CAP));
    }
    let form = cyclotomic_poly(n)?;
    let evaluator = form.form().bounded_evaluator()?;
    let bound = height_bound(limit, n)?.floor() as i64;
    let mut witnesses: BTreeMap<u64, Witness> = BTreeMap::new();
    let mut visit = |x: i64, y: i64| {
        if require_height2 && x.abs().max(y.abs()) < 2 {
            return;
        }
        if let Bounded::Value(v) = evaluator.eval(x, y, limit) {
            if v >= 1 {
                witnesses.entry(v).or_insert(Witness { index: n, x, y });
            }
        }
    };
    // Central symmetry: one representative per {(x,y), (-x,-y)} orbit.
    for y in 0..=bound {
        visit(0, y);
    }
    for x in 1..=bound {
        for y in -bound..=bound {
            visit(x, y);
        }
    }
    let members: Vec<u64> = witnesses.keys().copied().collect();
    Ok(RepresentationTable {
        spec: TableSpec {
            indices: vec![n],
            limit,
            require_height2,
        },
        members,
        witnesses: Some(witnesses),
    })
}

/// The index set entering `A_d(N)`: all `n != 2 mod 4` with
/// `d <= phi(n) <= max_degree`.
///
/// The scan runs to `2 max_degree^2`, which is exhaustive because
/// `phi(n) >= sqrt(n / 2)`; the printed index cutoff of [`degree_bound`]
/// is not relied on.
fn union_indices(d: u64, max_degree: u64) -> Result<Vec<u64>> {
    let mut indices = Vec::new();
    for n in 3..=2 * max_degree * max_degree {
        if n % 4 == 2 {
            continue;
        }
        let phi = euler_phi(n)?;
        if phi >= d && phi <= max_degree {
            indices.push(n);
        }
    }
    Ok(indices)
}

struct Bitmap {
    words: Vec<u64>,
}

impl Bitmap {
    fn new(limit: u64) -> Self {
        Self {
            words: vec![0; (limit as usize >> 6) + 1],
        }
    }

    fn set(&mut self, v: u64) {
        self.words[(v >> 6) as usize] |= 1 << (v & 63);
    }

    fn merge(&mut self, other: &Bitmap) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn members(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as u64;
                out.push((i as u64) << 6 | b);
                w &= w - 1;
            }
        }
        out
    }
}

/// Exact `A_d(N)` with the work split into `partitions` independent stripes
/// whose bitmaps are merged by disjunction. The result is identical for any
/// partition count; [`count_ad`] uses a single stripe.
pub fn count_ad_with_partitions(
    d: u64,
    limit: u64,
    partitions: u64,
) -> Result<(u64, RepresentationTable)> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::NotTotient(d));
    }
    if limit == 0 || partitions == 0 {
        return Err(Error::ZeroArgument("limit/partitions"));
    }
    if limit > DEFAULT_SIEVE_CAP {
        return Err(Error::SieveCapExceeded(limit, DEFAULT_SIEVE_CAP));
    }
    let spec = |indices: Vec<u64>| TableSpec {
        indices,
        limit,
        require_height2: true,
    };
    if limit < 3 {
        // The smallest value with max(|x|, |y|) >= 2 is Phi_3(2, -1) = 3.
        return Ok((
            0,
            RepresentationTable {
                spec: spec(Vec::new()),
                members: Vec::new(),
                witnesses: None,
            },
        ));
    }
    let (max_degree, _) = degree_bound(limit)?;
    let indices = union_indices(d, max_degree)?;
    let mut merged = Bitmap::new(limit);
    for part in 0..partitions {
        let mut local = Bitmap::new(limit);
        for &n in &indices {
            let form = cyclotomic_poly(n)?;
            let evaluator = form.form().bounded_evaluator()?;
            let bound = height_bound(limit, n)?.floor() as i64;
            let mut visit = |x: i64, y: i64| {
                if x.abs().max(y.abs()) < 2 {
                    return;
                }
                if let Bounded::Value(v) = evaluator.eval(x, y, limit) {
                    if v >= 1 {
                        local.set(v);
                    }
                }
            };
            for y in 0..=bound {
                if y as u64 % partitions == part {
                    visit(0, y);
                }
            }
            for x in 1..=bound {
                if x as u64 % partitions != part {
                    continue;
                }
                for y in -bound..=bound {
                    visit(x, y);
                }
            }
        }
        merged.merge(&local);
    }
    let members = merged.members();
    let count = members.len() as u64;
    Ok((
        count,
        RepresentationTable {
            spec: spec(indices),
            members,
            witnesses: None,
        },
    ))
}

/// Exact `A_d(N)`: the number of integers in `[1, N]` of the form
/// `Phi_n(x, y)` with `phi(n) >= d`, `n != 2 mod 4` and `max(|x|, |y|) >= 2`.
pub fn count_ad(d: u64, limit: u64) -> Result<(u64, RepresentationTable)> {
    count_ad_with_partitions(d, limit, 1)
}

/// The number of quadruples `(x1, x2, x3, x4)` in `[-B, B]^4` with
/// `f1(x1, x2) = f2(x3, x4)`, the zero quadruple included.
pub fn common_values_count(f1: &BinaryForm, f2: &BinaryForm, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::ZeroArgument("B"));
    }
    if b > DEFAULT_BOX_CAP {
        return Err(Error::BoxCapExceeded(b, DEFAULT_BOX_CAP));
    }
    let b = b as i64;
    let mut counts: HashMap<BigInt, u64> = HashMap::new();
    for x in -b..=b {
        for y in -b..=b {
            *counts.entry(f1.evaluate_i64(x, y)).or_insert(0) += 1;
        }
    }
    let mut total = 0u64;
    for x in -b..=b {
        for y in -b..=b {
            if let Some(&c) = counts.get(&f2.evaluate_i64(x, y)) {
                total += c;
            }
        }
    }
    Ok(total)
}

/// Exact `R(N)` for two cyclotomic forms: the number of integers in `[0, N]`
/// represented by both, with no height condition (so 0 always counts).
pub fn common_represented(n1: u64, n2: u64, limit: u64) -> Result<u64> {
    let t1 = represented_by_form(n1, limit, false)?;
    let t2 = represented_by_form(n2, limit, false)?;
    let mut common = 1u64; // value 0: Phi(0, 0) = 0 for both
    let mut i = 0;
    let mut j = 0;
    while i < t1.members.len() && j < t2.members.len() {
        match t1.members[i].cmp(&t2.members[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(common)
}

/// For each value attained by `Phi_m` on a box, how many `(a, b)` attain it.
#[derive(Debug, Clone)]
pub struct MultiplicityHistogram {
    pub index: u64,
    pub bound: u64,
    pub constraint: Option<(u64, u64, u64)>,
    /// multiplicity -> number of values attained with that multiplicity
    pub histogram: BTreeMap<u64, u64>,
    pub admissible_pairs: u64,
}

/// Representation multiplicities of `Phi_m` over `[-B, B]^2`, optionally
/// restricted to `a = a0, b = b0 (mod D)` via `constraint = (D, a0, b0)`.
pub fn multiplicity_histogram(
    m_index: u64,
    b: u64,
    constraint: Option<(u64, u64, u64)>,
) -> Result<MultiplicityHistogram> {
    if m_index < 3 {
        return Err(Error::IndexTooSmall(m_index, 3));
    }
    if b == 0 {
        return Err(Error::ZeroArgument("B"));
    }
    if b > DEFAULT_BOX_CAP {
        return Err(Error::BoxCapExceeded(b, DEFAULT_BOX_CAP));
    }
    if let Some((d, _, _)) = constraint {
        if d == 0 {
            return Err(Error::ZeroArgument("D"));
        }
    }
    let form = cyclotomic_poly(m_index)?;
    let bi = b as i64;
    let admits = |v: i64, modulus: u64, residue: u64| v.rem_euclid(modulus as i64) as u64 == residue;
    let mut by_value: HashMap<BigInt, u64> = HashMap::new();
    let mut pairs = 0u64;
    for a in -bi..=bi {
        for bb in -bi..=bi {
            if let Some((d, a0, b0)) = constraint {
                if !admits(a, d, a0) || !admits(bb, d, b0) {
                    continue;
                }
            }
            pairs += 1;
            *by_value.entry(form.evaluate_i64(a, bb)).or_insert(0) += 1;
        }
    }
    let mut histogram = BTreeMap::new();
    for &mult in by_value.values() {
        *histogram.entry(mult).or_insert(0) += 1;
    }
    Ok(MultiplicityHistogram {
        index: m_index,
        bound: b,
        constraint,
        histogram,
        admissible_pairs: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn height_bound_examples() {
        let v = height_bound(5, 5).unwrap();
        assert!((v - 1.7266).abs() < 1e-3);
        let v = height_bound(1, 7).unwrap();
        assert!((v - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        // Algebraic inversion: m = (sqrt(3) x / 2)^phi(n) gives back x.
        for (x, n) in [(4.0f64, 5u64), (10.0, 7), (3.0, 12)] {
            let d = euler_phi(n).unwrap();
            let m = (3f64.sqrt() * x / 2.0).powi(d as i32);
            let v = 2.0 / 3f64.sqrt() * m.powf(1.0 / d as f64);
            assert!((v - x).abs() < 1e-9);
        }
        assert!(height_bound(5, 1).is_err());
    }

    #[test]
    fn degree_bound_examples() {
        assert_eq!(degree_bound(3).unwrap().0, 2);
        let (deg, idx) = degree_bound(1_000_000).unwrap();
        assert_eq!(deg, 25);
        assert_eq!(idx, 113);
        assert!(degree_bound(2).is_err());
    }

    #[test]
    fn represented_by_form_examples() {
        let t = represented_by_form(4, 25, true).unwrap();
        assert_eq!(t.members, vec![4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25]);
        assert_eq!(t.count(), 11);
        let t = represented_by_form(3, 3, true).unwrap();
        assert_eq!(t.members, vec![3]);
        let w = t.witnesses.as_ref().unwrap()[&3];
        let f = cyclotomic_poly(3).unwrap();
        assert_eq!(f.evaluate_i64(w.x, w.y), BigInt::from(3));
        let t = represented_by_form(5, 4, true).unwrap();
        assert!(t.members.is_empty());
    }

    #[test]
    fn witnesses_verify() {
        for n in [3u64, 4, 5, 8, 9, 12] {
            let t = represented_by_form(n, 500, true).unwrap();
            let f = cyclotomic_poly(n).unwrap();
            for (&v, w) in t.witnesses.as_ref().unwrap() {
                assert_eq!(f.evaluate_i64(w.x, w.y), BigInt::from(v));
                assert!(w.x.abs().max(w.y.abs()) >= 2);
            }
        }
    }

    fn oracle_members(n: u64, limit: u64, require_height2: bool) -> Vec<u64> {
        let f = cyclotomic_poly(n).unwrap();
        let bound = height_bound(limit, n).unwrap().ceil() as i64;
        let mut set = BTreeSet::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                if require_height2 && x.abs().max(y.abs()) < 2 {
                    continue;
                }
                let v = f.evaluate_i64(x, y);
                if v >= BigInt::from(1) && v <= BigInt::from(limit) {
                    set.insert(u64::try_from(v).unwrap());
                }
            }
        }
        set.into_iter().collect()
    }

    #[test]
    fn represented_matches_oracle() {
        for n in [3u64, 4, 5, 7, 8, 9, 12] {
            for limit in [10u64, 100, 1000] {
                let t = represented_by_form(n, limit, true).unwrap();
                assert_eq!(t.members, oracle_members(n, limit, true), "n={n} N={limit}");
            }
        }
    }

    fn oracle_ad(d: u64, limit: u64) -> Vec<u64> {
        let (max_degree, _) = degree_bound(limit.max(3)).unwrap();
        let mut set = BTreeSet::new();
        for n in 3..=2 * max_degree * max_degree {
            let phi = euler_phi(n).unwrap();
            if n % 4 == 2 || phi < d || phi > max_degree {
                continue;
            }
            set.extend(oracle_members(n, limit, true));
        }
        set.into_iter().collect()
    }

    #[test]
    fn count_ad_matches_oracle_small() {
        for (d, limit) in [(4u64, 12u64), (2, 25), (4, 100), (6, 100)] {
            let (count, table) = count_ad(d, limit).unwrap();
            let oracle = oracle_ad(d, limit);
            assert_eq!(table.members, oracle, "d={d} N={limit}");
            assert_eq!(count, oracle.len() as u64);
        }
        assert_eq!(count_ad(4, 1).unwrap().0, 0);
    }

    #[test]
    fn count_ad_monotone() {
        let mut prev = u64::MAX;
        for d in [2u64, 4, 6, 8] {
            let (c, _) = count_ad(d, 1000).unwrap();
            assert!(c <= prev);
            prev = c;
        }
        let mut prev = 0;
        for limit in [10u64, 100, 1000, 5000] {
            let (c, _) = count_ad(4, limit).unwrap();
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn count_ad_partition_independent() {
        let baseline = count_ad(4, 2000).unwrap();
        for parts in [2u64, 8] {
            let split = count_ad_with_partitions(4, 2000, parts).unwrap();
            assert_eq!(split.0, baseline.0);
            assert_eq!(split.1.members, baseline.1.members);
        }
    }

    #[test]
    fn height_bound_holds_on_box() {
        use num_traits::ToPrimitive;
        for n in 3..=20u64 {
            let f = cyclotomic_poly(n).unwrap();
            let d = f.degree();
            for x in -10i64..=10 {
                for y in -10i64..=10 {
                    let h = x.abs().max(y.abs());
                    if h < 2 {
                        continue;
                    }
                    let m = f.evaluate_i64(x, y);
                    let mf = m.to_f64().unwrap();
                    assert!(
                        h as f64 <= 2.0 / 3f64.sqrt() * mf.powf(1.0 / d as f64) + 1e-9,
                        "n={n} x={x} y={y}"
                    );
                }
            }
        }
    }

    #[test]
    fn common_values_examples() {
        let f4 = cyclotomic_poly(4).unwrap();
        assert_eq!(
            common_values_count(f4.form(), f4.form(), 1).unwrap(),
            33
        );
        // Oracle for Phi_5 vs Phi_8 at B = 2: literal quadruple loop.
        let f5 = cyclotomic_poly(5).unwrap();
        let f8 = cyclotomic_poly(8).unwrap();
        let mut oracle = 0u64;
        for x1 in -2i64..=2 {
            for x2 in -2i64..=2 {
                for x3 in -2i64..=2 {
                    for x4 in -2i64..=2 {
                        if f5.evaluate_i64(x1, x2) == f8.evaluate_i64(x3, x4) {
                            oracle += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(common_values_count(f5.form(), f8.form(), 2).unwrap(), oracle);
    }

    #[test]
    fn common_represented_examples() {
        assert_eq!(common_represented(5, 8, 1).unwrap(), 2);
        // Isomorphic forms represent the same integers.
        for limit in [10u64, 50, 200] {
            let r = common_represented(3, 6, limit).unwrap();
            let b3 = represented_by_form(3, limit, false).unwrap();
            assert_eq!(r, b3.count() + 1);
        }
        // Oracle for (4, 3, 10).
        let b4: BTreeSet<u64> = represented_by_form(4, 10, false)
            .unwrap()
            .members
            .into_iter()
            .collect();
        let b3: BTreeSet<u64> = represented_by_form(3, 10, false)
            .unwrap()
            .members
            .into_iter()
            .collect();
        let expected = b4.intersection(&b3).count() as u64 + 1;
        assert_eq!(common_represented(4, 3, 10).unwrap(), expected);
    }

    #[test]
    fn multiplicity_histogram_examples() {
        let h = multiplicity_histogram(4, 2, None).unwrap();
        // Recover per-value multiplicities from an independent scan.
        let f = cyclotomic_poly(4).unwrap();
        let mut mult_of_1 = 0;
        let mut mult_of_5 = 0;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let v = f.evaluate_i64(a, b);
                if v == BigInt::from(1) {
                    mult_of_1 += 1;
                }
                if v == BigInt::from(5) {
                    mult_of_5 += 1;
                }
            }
        }
        assert_eq!(mult_of_1, 4);
        assert_eq!(mult_of_5, 8);
        let total: u64 = h.histogram.iter().map(|(m, c)| m * c).sum();
        assert_eq!(total, h.admissible_pairs);
        assert_eq!(h.admissible_pairs, 25);

        let h = multiplicity_histogram(5, 2, Some((20, 5, 17))).unwrap();
        assert!(h.histogram.is_empty());
        assert_eq!(h.admissible_pairs, 0);
    }

    #[test]
    fn guards() {
        assert!(represented_by_form(4, DEFAULT_SIEVE_CAP + 1, true).is_err());
        assert!(common_values_count(
            cyclotomic_poly(4).unwrap().form(),
            cyclotomic_poly(4).unwrap().form(),
            DEFAULT_BOX_CAP + 1
        )
        .is_err());
        assert!(multiplicity_histogram(2, 2, None).is_err());
        assert!(count_ad(3, 100).is_err());
    }
}
