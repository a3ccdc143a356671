//! Monte-Carlo cross-check of the Weyl-level torus statistics in actual
//! matrix groups over prime fields.
//!
//! A uniform element of GL_n(q) or SL_n(q) is classified by the
//! factorization shape of its characteristic polynomial: the polynomial is
//! squarefree exactly when the element is regular semisimple, and the
//! multiset of irreducible-factor degrees is then the partition naming the
//! Weyl class of its maximal torus. Empirical frequencies converge to the
//! exact probabilities of [`crate::weyl_stats`] at rate 1/q, which is what
//! [`compare_to_weyl`] measures.
//!
//! Only prime q is supported here; extension-field moduli are left behind
//! a constructor that currently rejects them.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::weyl_stats::{ClassData, GroupFamily, Partition, Rational, torus_classes};

/// Prime field F_p, the k = 1 slice of F_{p^k}.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PrimePowerField {
    p: u64,
    k: u32,
}

impl PrimePowerField {
    pub fn prime(p: u64) -> Self {
        Self::new(p, 1)
    }

    /// `q = p^k`. The `k` field is kept so the representation survives an
    /// extension-modulus build, but only `k = 1` is accepted now.
    pub fn new(p: u64, k: u32) -> Self {
        assert!(k == 1, "extension fields are not enabled: k must be 1, got {k}");
        assert!(p < 1 << 31, "p must be below 2^31, got {p}");
        assert!(is_prime(p), "p must be prime, got {p}");
        PrimePowerField { p, k }
    }

    pub fn q(self) -> u64 {
        self.p
    }

    // products of two reduced elements stay below 2^62, so plain u64
    // arithmetic never overflows
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    fn neg(self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Square matrix over a prime field, row major, entries reduced.
///
/// Sizes run 1..=8: the statistics only use n >= 2, but 1x1 matrices are
/// legal so the degenerate sampling cases stay expressible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMatrix {
    field: PrimePowerField,
    n: usize,
    entries: Vec<u64>,
}

impl SquareMatrix {
    pub fn new(field: PrimePowerField, n: usize, entries: Vec<u64>) -> Self {
        assert!((1..=8).contains(&n), "matrix size must be 1..=8, got {n}");
        assert!(entries.len() == n * n, "expected {} entries, got {}", n * n, entries.len());
        assert!(entries.iter().all(|&e| e < field.q()), "entries must be reduced mod p");
        SquareMatrix { field, n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimePowerField {
        self.field
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.n + col]
    }

    /// Gaussian elimination; 0 exactly for singular matrices.
    pub fn determinant(&self) -> u64 {
        let f = self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = f.neg(det);
            }
            let lead = a[col * n + col];
            det = f.mul(det, lead);
            let inv = f.inv(lead);
            for row in col + 1..n {
                let factor = f.mul(a[row * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let t = f.mul(factor, a[col * n + c]);
                    a[row * n + c] = f.sub(a[row * n + c], t);
                }
            }
        }
        det
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum MatrixGroup {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SL")]
    Sl,
}

impl fmt::Display for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixGroup::Gl => "GL",
            MatrixGroup::Sl => "SL",
        })
    }
}

// Polynomials over F_p: little-endian coefficient vectors with no trailing
// zeros; the zero polynomial is the empty vector.

fn p_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn p_deg(p: &[u64]) -> usize {
    assert!(!p.is_empty(), "degree of the zero polynomial");
    p.len() - 1
}

fn p_sub(f: PrimePowerField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.sub(x, y);
    }
    p_trim(out)
}

fn p_mul(f: PrimePowerField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn p_rem(f: PrimePowerField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = p_deg(b);
    let lead_inv = f.inv(b[db]);
    let mut r = p_trim(a.to_vec());
    while r.len() > db {
        let coef = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate().take(db) {
            let t = f.mul(coef, bc);
            r[shift + i] = f.sub(r[shift + i], t);
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn p_div_exact(f: PrimePowerField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = p_deg(b);
    let lead_inv = f.inv(b[db]);
    let mut r = p_trim(a.to_vec());
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let coef = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - db;
        q[shift] = coef;
        for (i, &bc) in b.iter().enumerate().take(db) {
            let t = f.mul(coef, bc);
            r[shift + i] = f.sub(r[shift + i], t);
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

fn p_monic(f: PrimePowerField, mut a: Vec<u64>) -> Vec<u64> {
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = f.inv(lead);
            for c in &mut a {
                *c = f.mul(*c, inv);
            }
        }
    }
    a
}

fn p_gcd(f: PrimePowerField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = p_trim(a.to_vec());
    let mut y = p_trim(b.to_vec());
    while !y.is_empty() {
        let r = p_rem(f, &x, &y);
        x = y;
        y = r;
    }
    p_monic(f, x)
}

fn p_deriv(f: PrimePowerField, a: &[u64]) -> Vec<u64> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, i as u64 % f.q()))
        .collect();
    p_trim(out)
}

fn p_mulmod(f: PrimePowerField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    p_rem(f, &p_mul(f, a, b), m)
}

fn p_powmod(f: PrimePowerField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = p_rem(f, &[1], m);
    let mut b = p_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = p_mulmod(f, &acc, &b, m);
        }
        b = p_mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// Characteristic polynomial det(xI - M), monic, constant term first.
///
/// Similarity reduction to upper Hessenberg form, then the principal-block
/// recurrence p_r = (x - h_rr) p_{r-1} - sum_i h_ir (prod subdiagonals)
/// p_{i-1}.
pub fn char_poly(m: &SquareMatrix) -> Vec<u64> {
    let f = m.field;
    let n = m.n;
    let mut h = m.entries.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(pivot) = (col + 1..n).find(|&r| h[r * n + col] != 0) else {
            continue;
        };
        if pivot != col + 1 {
            for c in 0..n {
                h.swap(pivot * n + c, (col + 1) * n + c);
            }
            for r in 0..n {
                h.swap(r * n + pivot, r * n + col + 1);
            }
        }
        let inv = f.inv(h[(col + 1) * n + col]);
        for row in col + 2..n {
            let factor = f.mul(h[row * n + col], inv);
            if factor == 0 {
                continue;
            }
            // row op below the subdiagonal, paired column op: a similarity
            for c in 0..n {
                let t = f.mul(factor, h[(col + 1) * n + c]);
                h[row * n + c] = f.sub(h[row * n + c], t);
            }
            for r in 0..n {
                let t = f.mul(factor, h[r * n + row]);
                h[r * n + col + 1] = f.add(h[r * n + col + 1], t);
            }
        }
    }

    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for r in 1..=n {
        let prev = &polys[r - 1];
        let mut next = vec![0u64; r + 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            let t = f.mul(h[(r - 1) * n + (r - 1)], c);
            next[i] = f.sub(next[i], t);
        }
        let mut subprod = 1u64;
        for i in (1..r).rev() {
            subprod = f.mul(subprod, h[i * n + (i - 1)]);
            if subprod == 0 {
                break;
            }
            let coef = f.mul(h[(i - 1) * n + (r - 1)], subprod);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                let t = f.mul(coef, c);
                next[k] = f.sub(next[k], t);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("one block per size")
}

/// Squarefree test over F_p: a vanishing derivative means a perfect p-th
/// power, otherwise squarefree is gcd(f, f') constant.
fn poly_squarefree(f: PrimePowerField, poly: &[u64]) -> bool {
    let deriv = p_deriv(f, poly);
    !deriv.is_empty() && p_deg(&p_gcd(f, poly, &deriv)) == 0
}

/// Degrees of the irreducible factors of monic `poly`, with multiplicity.
///
/// Distinct-degree sieve: after stage d every factor of degree <= d is gone
/// (all copies, by repeated extraction), so at stage d the gcd with
/// x^{q^d} - x is exactly the product of the distinct degree-d factors
/// still present.
fn factor_degrees(f: PrimePowerField, poly: &[u64]) -> Vec<u32> {
    let mut rem = p_monic(f, p_trim(poly.to_vec()));
    let x = vec![0, 1];
    let mut h = p_rem(f, &x, &rem);
    let mut degrees = Vec::new();
    for d in 1..=p_deg(poly) {
        if rem.len() <= 1 {
            break;
        }
        h = p_powmod(f, &h, f.q(), &rem);
        loop {
            let g = p_gcd(f, &p_sub(f, &h, &x), &rem);
            if g.len() <= 1 {
                break;
            }
            let extracted = p_deg(&g);
            assert!(extracted.is_multiple_of(d), "degree-{extracted} block at stage {d}");
            for _ in 0..extracted / d {
                degrees.push(d as u32);
            }
            rem = p_div_exact(f, &rem, &g);
            if rem.len() <= 1 {
                break;
            }
            h = p_rem(f, &h, &rem);
        }
    }
    assert!(rem.len() <= 1, "unfactored remainder of degree {}", p_deg(&rem));
    degrees
}

/// Factorization shape of a characteristic polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct CharPolyAnalysis {
    /// Monic coefficients, constant term first.
    pub poly: Vec<u64>,
    pub squarefree: bool,
    /// Irreducible-factor degrees with multiplicity; parts sum to n.
    pub degree_partition: Partition,
}

pub fn char_poly_analysis(m: &SquareMatrix) -> CharPolyAnalysis {
    let f = m.field;
    let poly = char_poly(m);
    assert!(poly[0] != 0, "char_poly_analysis requires an invertible matrix");
    let squarefree = poly_squarefree(f, &poly);
    let degree_partition = Partition::new(factor_degrees(f, &poly));
    assert!(degree_partition.n() as usize == m.n, "factor degrees must sum to n");
    CharPolyAnalysis { poly, squarefree, degree_partition }
}

fn draw_gl(
    f: PrimePowerField,
    n: usize,
    rng: &mut impl Rng,
    rejected: &mut u64,
) -> (SquareMatrix, u64) {
    loop {
        let entries: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
        let m = SquareMatrix::new(f, n, entries);
        let det = m.determinant();
        if det != 0 {
            return (m, det);
        }
        *rejected += 1;
    }
}

fn draw_sl(f: PrimePowerField, n: usize, rng: &mut impl Rng, rejected: &mut u64) -> SquareMatrix {
    let (mut m, det) = draw_gl(f, n, rng, rejected);
    let scale = f.inv(det);
    for c in 0..n {
        m.entries[c] = f.mul(m.entries[c], scale);
    }
    m
}

/// Uniform element of GL_n(q), by rejection from uniform matrices; the
/// acceptance rate is prod_{i=1..n} (1 - q^-i).
pub fn random_gl(n: u32, q: u64, rng: &mut impl Rng) -> SquareMatrix {
    let f = PrimePowerField::prime(q);
    draw_gl(f, n as usize, rng, &mut 0).0
}

/// Uniform element of SL_n(q): a GL draw with its first row scaled by the
/// inverse determinant, which maps every determinant fiber bijectively onto
/// SL_n(q).
pub fn random_sl(n: u32, q: u64, rng: &mut impl Rng) -> SquareMatrix {
    let f = PrimePowerField::prime(q);
    draw_sl(f, n as usize, rng, &mut 0)
}

/// Tally of one sampling or enumeration run.
#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub group: MatrixGroup,
    pub n: u32,
    pub q: u64,
    /// Group elements classified.
    pub samples: u64,
    /// None for exhaustive enumeration.
    pub seed: Option<u64>,
    pub streams: u32,
    pub exhaustive: bool,
    /// Regular semisimple tallies by factor-degree partition; partitions
    /// never observed are absent.
    #[serde(serialize_with = "serialize_partition_counts")]
    pub partition_counts: BTreeMap<Partition, u64>,
    pub regular_semisimple: u64,
    /// Uniform draws discarded as singular; for exhaustive runs, candidate
    /// matrices outside the group.
    pub rejected_draws: u64,
}

fn serialize_partition_counts<S: Serializer>(
    counts: &BTreeMap<Partition, u64>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_map(counts.iter().map(|(partition, count)| (partition.to_string(), count)))
}

struct Tally {
    counts: BTreeMap<Partition, u64>,
    rs: u64,
    rejected: u64,
}

fn record(m: &SquareMatrix, tally: &mut Tally) {
    let analysis = char_poly_analysis(m);
    if analysis.squarefree {
        tally.rs += 1;
        *tally.counts.entry(analysis.degree_partition).or_insert(0) += 1;
    }
}

fn sample_stream(
    group: MatrixGroup,
    f: PrimePowerField,
    n: usize,
    seed: u64,
    stream: u64,
    load: u64,
) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut tally = Tally { counts: BTreeMap::new(), rs: 0, rejected: 0 };
    for _ in 0..load {
        let m = match group {
            MatrixGroup::Gl => draw_gl(f, n, &mut rng, &mut tally.rejected).0,
            MatrixGroup::Sl => draw_sl(f, n, &mut rng, &mut tally.rejected),
        };
        record(&m, &mut tally);
    }
    tally
}

/// Classify `samples` uniform elements; a sample lands in a partition tally
/// exactly when its characteristic polynomial is squarefree.
pub fn torus_statistics(
    group: MatrixGroup,
    n: u32,
    q: u64,
    samples: u64,
    seed: u64,
) -> SampleReport {
    torus_statistics_streams(group, n, q, samples, seed, 1)
}

/// Multi-stream variant: stream i draws from the (seed, i) generator and
/// tallies merge by addition, so the report depends only on (seed,
/// streams), never on scheduling.
pub fn torus_statistics_streams(
    group: MatrixGroup,
    n: u32,
    q: u64,
    samples: u64,
    seed: u64,
    streams: u32,
) -> SampleReport {
    let f = PrimePowerField::prime(q);
    assert!((2..=8).contains(&n), "torus statistics require 2 <= n <= 8, got {n}");
    assert!(samples <= 100_000_000, "samples capped at 10^8, got {samples}");
    assert!(streams >= 1, "at least one stream");
    let per = samples / streams as u64;
    let extra = samples % streams as u64;
    let loads: Vec<(u64, u64)> =
        (0..streams as u64).map(|i| (i, per + u64::from(i < extra))).collect();
    let tallies: Vec<Tally> = loads
        .par_iter()
        .map(|&(stream, load)| sample_stream(group, f, n as usize, seed, stream, load))
        .collect();

    let mut counts = BTreeMap::new();
    let mut rs = 0;
    let mut rejected = 0;
    for tally in tallies {
        for (partition, count) in tally.counts {
            *counts.entry(partition).or_insert(0) += count;
        }
        rs += tally.rs;
        rejected += tally.rejected;
    }
    SampleReport {
        group,
        n,
        q,
        samples,
        seed: Some(seed),
        streams,
        exhaustive: false,
        partition_counts: counts,
        regular_semisimple: rs,
        rejected_draws: rejected,
    }
}

/// |GL_n(q)| = prod_{i<n} (q^n - q^i), |SL_n(q)| the same over (q - 1).
fn group_order(group: MatrixGroup, n: u32, q: u64) -> Option<u128> {
    let qn = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(q as u128))?;
    let mut order = 1u128;
    let mut qi = 1u128;
    for _ in 0..n {
        order = order.checked_mul(qn - qi)?;
        qi = qi.checked_mul(q as u128)?;
    }
    Some(match group {
        MatrixGroup::Gl => order,
        MatrixGroup::Sl => order / (q as u128 - 1),
    })
}

/// Classify every element of the group. Gated to group order <= 10^6 and
/// q^(n^2) <= 10^7 candidate matrices.
pub fn torus_statistics_exhaustive(group: MatrixGroup, n: u32, q: u64) -> SampleReport {
    let f = PrimePowerField::prime(q);
    assert!((2..=8).contains(&n), "torus statistics require 2 <= n <= 8, got {n}");
    let order = group_order(group, n, q)
        .filter(|&o| o <= 1_000_000)
        .unwrap_or_else(|| panic!("exhaustive mode needs group order <= 10^6: {group}{n}({q})"));
    (0..n * n)
        .try_fold(1u128, |acc, _| acc.checked_mul(q as u128).filter(|&c| c <= 10_000_000))
        .unwrap_or_else(|| panic!("exhaustive mode needs q^(n^2) <= 10^7 candidates"));

    let nn = (n * n) as usize;
    let mut tally = Tally { counts: BTreeMap::new(), rs: 0, rejected: 0 };
    let mut members = 0u64;
    let mut entries = vec![0u64; nn];
    loop {
        let m = SquareMatrix::new(f, n as usize, entries.clone());
        let det = m.determinant();
        let keep = match group {
            MatrixGroup::Gl => det != 0,
            MatrixGroup::Sl => det == 1,
        };
        if keep {
            members += 1;
            record(&m, &mut tally);
        } else {
            tally.rejected += 1;
        }
        if !increment(&mut entries, q) {
            break;
        }
    }
    assert!(members as u128 == order, "enumerated {members} members, expected {order}");
    SampleReport {
        group,
        n,
        q,
        samples: members,
        seed: None,
        streams: 1,
        exhaustive: true,
        partition_counts: tally.counts,
        regular_semisimple: tally.rs,
        rejected_draws: tally.rejected,
    }
}

fn increment(entries: &mut [u64], q: u64) -> bool {
    for e in entries.iter_mut() {
        *e += 1;
        if *e < q {
            return true;
        }
        *e = 0;
    }
    false
}

/// One partition row of the deviation table.
#[derive(Clone, Debug, Serialize)]
pub struct DeviationRow {
    pub partition: String,
    pub count: u64,
    /// count / samples, 6 decimals.
    pub frequency: String,
    /// Exact Weyl probability of the partition's torus class.
    pub exact: Rational,
    pub deviation: String,
    pub sigma: String,
    pub flagged: bool,
}

/// Empirical frequencies against the exact Weyl probabilities.
///
/// The flag rule is |deviation| > 1/q + 4 sigma with sigma the per-row
/// binomial standard error at the exact probability: wide enough for the
/// 1/q drift, tight enough to catch a broken sampler.
#[derive(Clone, Debug, Serialize)]
pub struct DeviationTable {
    pub group: MatrixGroup,
    pub n: u32,
    pub q: u64,
    pub samples: u64,
    pub regular_semisimple: u64,
    pub non_rs_frequency: String,
    pub rows: Vec<DeviationRow>,
    pub any_flagged: bool,
}

pub fn compare_to_weyl(report: &SampleReport) -> DeviationTable {
    assert!(report.samples > 0, "compare_to_weyl: report has no samples");
    let family = GroupFamily::LinearA { n: report.n };
    let samples = report.samples as f64;
    let mut rows = Vec::new();
    let mut any_flagged = false;
    for t in torus_classes(family) {
        let ClassData::Linear(lambda) = &t.data else {
            unreachable!("linear families carry partition data")
        };
        let count = report.partition_counts.get(lambda).copied().unwrap_or(0);
        let freq = count as f64 / samples;
        let p = t.probability.to_f64();
        let deviation = freq - p;
        let sigma = (p * (1.0 - p) / samples).sqrt();
        let flagged = deviation.abs() > 1.0 / report.q as f64 + 4.0 * sigma;
        any_flagged |= flagged;
        rows.push(DeviationRow {
            partition: lambda.to_string(),
            count,
            frequency: format!("{freq:.6}"),
            exact: t.probability.clone(),
            deviation: format!("{deviation:.6}"),
            sigma: format!("{sigma:.6}"),
            flagged,
        });
    }
    let non_rs = (report.samples - report.regular_semisimple) as f64 / samples;
    DeviationTable {
        group: report.group,
        n: report.n,
        q: report.q,
        samples: report.samples,
        regular_semisimple: report.regular_semisimple,
        non_rs_frequency: format!("{non_rs:.6}"),
        rows,
        any_flagged,
    }
}
