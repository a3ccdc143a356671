//! Torus-class combinatorics for Weyl groups and their twisted cosets.
//!
//! Conjugacy classes of maximal tori of a finite group of Lie type of rank
//! parameter n/m are parametrized by partitions (type A, split or unitary)
//! or signed partitions (types B/C/D), and each class carries an exact
//! probability: the mass of the corresponding conjugacy class in the Weyl
//! group, or in the twisted coset for 2A and D-. For D-type families a
//! W(B_m)-class with all cycles positive and all lengths even splits into two
//! W(D_m)-classes; such classes are kept merged with their combined mass and
//! a `split` flag.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Exact rational arithmetic for class probabilities.
///
/// Always renders as `"numerator/denominator"` in lowest terms with positive
/// denominator, including integers (`"1/1"`) and zero (`"0/1"`); that string
/// form is also the JSON serialization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "Rational::new: zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "Rational::from_big: zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.0.is_zero(), "Rational::recip of zero");
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.0.is_zero(), "Rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Cycle sign in a signed permutation, multiplicative under products.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Partition of a positive integer, parts descending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty(), "Partition: no parts");
        assert!(parts.iter().all(|&p| p > 0), "Partition: zero part");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Runs of equal parts as (length, multiplicity), parts descending.
    pub fn runs(&self) -> Vec<(u32, u32)> {
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match runs.last_mut() {
                Some((len, mult)) if *len == p => *mult += 1,
                _ => runs.push((p, 1)),
            }
        }
        runs
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// All partitions of n, canonical order: descending lexicographic, so (n)
/// first and (1,...,1) last.
pub fn partitions(n: u32) -> Vec<Partition> {
    assert!((1..=60).contains(&n), "partitions: n must be in 1..=60, got {n}");
    fn rec(remaining: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            acc.push(next);
            rec(remaining - next, next, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One signed cycle: length and sign.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPart {
    pub len: u32,
    pub sign: Sign,
}

/// Signed partition of m: partition with a sign on every part.
/// Canonical part order: length descending, `+` before `-` within a length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPartition {
    parts: Vec<SignedPart>,
}

impl SignedPartition {
    pub fn new(mut parts: Vec<SignedPart>) -> Self {
        assert!(!parts.is_empty(), "SignedPartition: no parts");
        assert!(parts.iter().all(|p| p.len > 0), "SignedPartition: zero part");
        parts.sort_unstable_by(|a, b| b.len.cmp(&a.len).then(a.sign.cmp(&b.sign)));
        SignedPartition { parts }
    }

    pub fn from_pairs(pairs: &[(u32, Sign)]) -> Self {
        SignedPartition::new(pairs.iter().map(|&(len, sign)| SignedPart { len, sign }).collect())
    }

    pub fn m(&self) -> u32 {
        self.parts.iter().map(|p| p.len).sum()
    }

    pub fn parts(&self) -> &[SignedPart] {
        &self.parts
    }

    pub fn sign_product(&self) -> Sign {
        self.parts.iter().fold(Sign::Plus, |acc, p| acc.times(p.sign))
    }

    pub fn count(&self, len: u32, sign: Sign) -> u32 {
        self.parts.iter().filter(|p| p.len == len && p.sign == sign).count() as u32
    }

    pub fn has(&self, len: u32, sign: Sign) -> bool {
        self.count(len, sign) > 0
    }

    pub fn all_positive(&self) -> bool {
        self.parts.iter().all(|p| p.sign == Sign::Plus)
    }

    pub fn all_even(&self) -> bool {
        self.parts.iter().all(|p| p.len % 2 == 0)
    }

    /// Runs of equal (length, sign) as ((length, sign), multiplicity).
    pub fn runs(&self) -> Vec<((u32, Sign), u32)> {
        let mut runs: Vec<((u32, Sign), u32)> = Vec::new();
        for p in &self.parts {
            match runs.last_mut() {
                Some(((len, sign), mult)) if *len == p.len && *sign == p.sign => *mult += 1,
                _ => runs.push(((p.len, p.sign), 1)),
            }
        }
        runs
    }
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}{}", p.len, p.sign.as_char())?;
            first = false;
        }
        Ok(())
    }
}

/// All signed partitions of m. Canonical order: underlying partitions in
/// `partitions` order; within a partition, signs assigned run by run with the
/// minus count increasing, so e.g. m=2 gives (2+), (2-), (1+,1+), (1+,1-),
/// (1-,1-).
pub fn signed_partitions(m: u32) -> Vec<SignedPartition> {
    assert!((1..=40).contains(&m), "signed_partitions: m must be in 1..=40, got {m}");
    fn rec(
        runs: &[(u32, u32)],
        chosen: &mut Vec<SignedPart>,
        out: &mut Vec<SignedPartition>,
    ) {
        let Some(&(len, mult)) = runs.first() else {
            out.push(SignedPartition { parts: chosen.clone() });
            return;
        };
        for minus in 0..=mult {
            let base = chosen.len();
            for _ in 0..(mult - minus) {
                chosen.push(SignedPart { len, sign: Sign::Plus });
            }
            for _ in 0..minus {
                chosen.push(SignedPart { len, sign: Sign::Minus });
            }
            rec(&runs[1..], chosen, out);
            chosen.truncate(base);
        }
    }
    let mut out = Vec::new();
    for lambda in partitions(m) {
        rec(&lambda.runs(), &mut Vec::new(), &mut out);
    }
    out
}

/// Parity of the field size q. Only the parity ever matters combinatorially.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QParity {
    Odd,
    Even,
}

/// The bounded-rank group families covered by this crate.
///
/// Rank caps (60 for type A, 40 for B/C/D) are safety bounds on enumeration,
/// matching the partition enumerators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupFamily {
    /// SL_n(q), n >= 2.
    LinearA { n: u32 },
    /// SU_n(q), n >= 3.
    UnitaryTwistedA { n: u32 },
    /// Sp_2m(q), m >= 2; behavior branches on the parity of q.
    SymplecticC { m: u32, q: QParity },
    /// Omega_{2m+1}(q), m >= 3, q odd.
    OrthogonalOddB { m: u32 },
    /// Omega^+_{2m}(q), m >= 4.
    OrthogonalDPlus { m: u32 },
    /// Omega^-_{2m}(q), m >= 4.
    OrthogonalDMinus { m: u32 },
    /// G2(q); `p3` records whether 3 divides q.
    ExceptionalG2 { p3: bool },
}

impl GroupFamily {
    /// Rank range check as a result, for callers that turn violations into
    /// usage errors instead of panics.
    pub fn try_validate(self) -> Result<(), String> {
        let (label, rank, lo, hi) = match self {
            GroupFamily::LinearA { n } => ("LinearA", n, 2, 60),
            GroupFamily::UnitaryTwistedA { n } => ("UnitaryTwistedA", n, 3, 60),
            GroupFamily::SymplecticC { m, .. } => ("SymplecticC", m, 2, 40),
            GroupFamily::OrthogonalOddB { m } => ("OrthogonalOddB", m, 3, 40),
            GroupFamily::OrthogonalDPlus { m } => ("OrthogonalDPlus", m, 4, 40),
            GroupFamily::OrthogonalDMinus { m } => ("OrthogonalDMinus", m, 4, 40),
            GroupFamily::ExceptionalG2 { .. } => return Ok(()),
        };
        let flag = match self {
            GroupFamily::LinearA { .. } | GroupFamily::UnitaryTwistedA { .. } => "n",
            _ => "m",
        };
        if (lo..=hi).contains(&rank) {
            Ok(())
        } else {
            Err(format!("{label} requires {lo} <= {flag} <= {hi}, got {rank}"))
        }
    }

    pub fn validate(self) {
        if let Err(msg) = self.try_validate() {
            panic!("{msg}");
        }
    }

    /// The partition-size parameter: n for type A families, m for B/C/D,
    /// 2 for G2 (its Weyl rank).
    pub fn rank(self) -> u32 {
        match self {
            GroupFamily::LinearA { n } | GroupFamily::UnitaryTwistedA { n } => n,
            GroupFamily::SymplecticC { m, .. }
            | GroupFamily::OrthogonalOddB { m }
            | GroupFamily::OrthogonalDPlus { m }
            | GroupFamily::OrthogonalDMinus { m } => m,
            GroupFamily::ExceptionalG2 { .. } => 2,
        }
    }

    pub fn is_classical(self) -> bool {
        !matches!(self, GroupFamily::ExceptionalG2 { .. })
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupFamily::LinearA { n } => write!(f, "A({n})"),
            GroupFamily::UnitaryTwistedA { n } => write!(f, "2A({n})"),
            GroupFamily::SymplecticC { m, q: QParity::Odd } => write!(f, "C({m}, q odd)"),
            GroupFamily::SymplecticC { m, q: QParity::Even } => write!(f, "C({m}, q even)"),
            GroupFamily::OrthogonalOddB { m } => write!(f, "B({m})"),
            GroupFamily::OrthogonalDPlus { m } => write!(f, "D+({m})"),
            GroupFamily::OrthogonalDMinus { m } => write!(f, "D-({m})"),
            GroupFamily::ExceptionalG2 { p3: true } => write!(f, "G2 (3|q)"),
            GroupFamily::ExceptionalG2 { p3: false } => write!(f, "G2 (3 does not divide q)"),
        }
    }
}

/// Combinatorial data identifying a torus class within its family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClassData {
    /// Type A (split or unitary): a partition of n.
    Linear(Partition),
    /// Types B/C/D: a signed partition of m.
    Signed(SignedPartition),
    /// G2: 1-based index into the fixed class list (see `rootsys_g2`).
    G2(u8),
}

impl fmt::Display for ClassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassData::Linear(p) => write!(f, "{p}"),
            ClassData::Signed(sp) => write!(f, "{sp}"),
            ClassData::G2(i) => write!(f, "T{i}"),
        }
    }
}

/// A conjugacy class of maximal tori with its exact leading probability.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusClass {
    pub family: GroupFamily,
    pub data: ClassData,
    /// True for a merged pair of D-type classes (all parts even, all
    /// positive); `probability` is then the combined mass of both halves.
    pub split: bool,
    pub probability: Rational,
}

impl fmt::Display for TorusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.data)
    }
}

/// G2 torus-class probabilities, in the fixed class order: short reflection,
/// long reflection, identity, -1, order 3, order 6. Class sizes 3,3,1,1,2,2
/// out of |W(G2)| = 12; `rootsys_g2` re-derives these from the root system.
pub const G2_CLASS_SIZES: [u32; 6] = [3, 3, 1, 1, 2, 2];
pub const G2_WEYL_ORDER: u32 = 12;

fn factorial(k: u32) -> BigInt {
    (1..=k as u64).map(BigInt::from).fold(BigInt::one(), |a, b| a * b)
}

/// z_lambda = prod i^{a_i} a_i! ; 1/z_lambda is the S_n cycle-type
/// probability.
fn prob_type_a(lambda: &Partition) -> Rational {
    let mut z = BigInt::one();
    for (len, mult) in lambda.runs() {
        z *= BigInt::from(len as u64).pow(mult) * factorial(mult);
    }
    Rational::from_big(BigInt::one(), z)
}

/// W(B_m) class probability of a signed type: 1 / prod (2 len)^{a} a! over
/// runs of (length, sign).
fn prob_type_b(sp: &SignedPartition) -> Rational {
    let mut z = BigInt::one();
    for ((len, _), mult) in sp.runs() {
        z *= BigInt::from(2 * len as u64).pow(mult) * factorial(mult);
    }
    Rational::from_big(BigInt::one(), z)
}

fn is_split_d(sp: &SignedPartition) -> bool {
    sp.all_even() && sp.all_positive()
}

/// All torus classes of a family in canonical order, probabilities attached.
pub fn torus_classes(family: GroupFamily) -> Vec<TorusClass> {
    family.validate();
    match family {
        GroupFamily::LinearA { n } | GroupFamily::UnitaryTwistedA { n } => partitions(n)
            .into_iter()
            .map(|p| TorusClass {
                family,
                split: false,
                probability: prob_type_a(&p),
                data: ClassData::Linear(p),
            })
            .collect(),
        GroupFamily::SymplecticC { m, .. } | GroupFamily::OrthogonalOddB { m } => {
            signed_partitions(m)
                .into_iter()
                .map(|sp| TorusClass {
                    family,
                    split: false,
                    probability: prob_type_b(&sp),
                    data: ClassData::Signed(sp),
                })
                .collect()
        }
        GroupFamily::OrthogonalDPlus { m } => signed_partitions(m)
            .into_iter()
            .filter(|sp| sp.sign_product() == Sign::Plus)
            .map(|sp| TorusClass {
                family,
                split: is_split_d(&sp),
                probability: Rational::from_int(2) * prob_type_b(&sp),
                data: ClassData::Signed(sp),
            })
            .collect(),
        GroupFamily::OrthogonalDMinus { m } => signed_partitions(m)
            .into_iter()
            .filter(|sp| sp.sign_product() == Sign::Minus)
            .map(|sp| TorusClass {
                family,
                split: false,
                probability: Rational::from_int(2) * prob_type_b(&sp),
                data: ClassData::Signed(sp),
            })
            .collect(),
        GroupFamily::ExceptionalG2 { .. } => G2_CLASS_SIZES
            .iter()
            .enumerate()
            .map(|(i, &size)| TorusClass {
                family,
                split: false,
                probability: Rational::new(size as i64, G2_WEYL_ORDER as i64),
                data: ClassData::G2(i as u8 + 1),
            })
            .collect(),
    }
}

/// Recompute the probability of `t` within `family` from its class data.
pub fn class_probability(family: GroupFamily, t: &TorusClass) -> Rational {
    family.validate();
    assert!(t.family == family, "class_probability: class belongs to {}, not {}", t.family, family);
    match (&t.data, family) {
        (ClassData::Linear(p), GroupFamily::LinearA { n })
        | (ClassData::Linear(p), GroupFamily::UnitaryTwistedA { n }) => {
            assert!(p.n() == n, "class_probability: partition of {} in rank-{n} family", p.n());
            prob_type_a(p)
        }
        (ClassData::Signed(sp), GroupFamily::SymplecticC { m, .. })
        | (ClassData::Signed(sp), GroupFamily::OrthogonalOddB { m }) => {
            assert!(sp.m() == m, "class_probability: signed partition of {} in rank-{m} family", sp.m());
            prob_type_b(sp)
        }
        (ClassData::Signed(sp), GroupFamily::OrthogonalDPlus { m }) => {
            assert!(sp.m() == m && sp.sign_product() == Sign::Plus, "class_probability: not a D+ class");
            Rational::from_int(2) * prob_type_b(sp)
        }
        (ClassData::Signed(sp), GroupFamily::OrthogonalDMinus { m }) => {
            assert!(sp.m() == m && sp.sign_product() == Sign::Minus, "class_probability: not a D- class");
            Rational::from_int(2) * prob_type_b(sp)
        }
        (ClassData::G2(i), GroupFamily::ExceptionalG2 { .. }) => {
            assert!((1..=6).contains(i), "class_probability: G2 class index out of range");
            Rational::new(G2_CLASS_SIZES[*i as usize - 1] as i64, G2_WEYL_ORDER as i64)
        }
        _ => panic!("class_probability: class data does not match family {family}"),
    }
}

fn signed(pairs: &[(u32, Sign)]) -> ClassData {
    ClassData::Signed(SignedPartition::from_pairs(pairs))
}

/// Torus classes of the family's distinguished generating set (the same
/// classes `invgen::ab_set` decorates with element metadata).
pub fn distinguished_class_data(family: GroupFamily) -> Vec<ClassData> {
    use Sign::{Minus, Plus};
    family.validate();
    let m = family.rank();
    match family {
        GroupFamily::LinearA { n } | GroupFamily::UnitaryTwistedA { n } => vec![
            ClassData::Linear(Partition::new(vec![n])),
            ClassData::Linear(Partition::new(vec![n - 1, 1])),
        ],
        GroupFamily::OrthogonalOddB { .. } => {
            vec![signed(&[(m, Minus)]), signed(&[(m, Plus)])]
        }
        GroupFamily::OrthogonalDMinus { .. } => {
            vec![signed(&[(m, Minus)]), signed(&[(m - 1, Minus), (1, Plus)])]
        }
        GroupFamily::SymplecticC { q: QParity::Odd, .. } if m.is_multiple_of(2) => {
            vec![signed(&[(m, Minus)]), signed(&[(m - 1, Minus), (1, Plus)])]
        }
        GroupFamily::SymplecticC { q: QParity::Odd, .. } => {
            assert!(m >= 3, "SymplecticC odd-rank row requires m >= 3");
            vec![
                signed(&[(m, Minus)]),
                signed(&[(m - 1, Minus), (1, Minus)]),
                signed(&[(m, Plus)]),
            ]
        }
        GroupFamily::SymplecticC { q: QParity::Even, .. } => vec![
            signed(&[(m, Minus)]),
            signed(&[(m - 1, Minus), (1, Plus)]),
            signed(&[(m - 1, Minus), (1, Minus)]),
            signed(&[(m, Plus)]),
        ],
        GroupFamily::OrthogonalDPlus { .. } if m % 2 == 1 => {
            assert!(m >= 5);
            vec![signed(&[(m, Plus)]), signed(&[(m - 1, Minus), (1, Minus)])]
        }
        GroupFamily::OrthogonalDPlus { .. } => vec![
            signed(&[(m, Plus)]),
            signed(&[(m - 1, Minus), (1, Minus)]),
            signed(&[(m - 2, Minus), (2, Minus)]),
            signed(&[(m - 2, Minus), (1, Minus), (1, Plus)]),
        ],
        GroupFamily::ExceptionalG2 { .. } => {
            panic!("distinguished_class_data: defined for classical families only")
        }
    }
}

/// Minimum class probability over the family's distinguished classes, with
/// the class attaining it; ties broken by canonical class order.
pub fn min_class_probability(family: GroupFamily) -> (TorusClass, Rational) {
    assert!(family.is_classical(), "min_class_probability: family must be classical");
    let all = torus_classes(family);
    let distinguished = distinguished_class_data(family);
    let mut best: Option<&TorusClass> = None;
    for t in &all {
        if !distinguished.contains(&t.data) {
            continue;
        }
        // canonical enumeration order already sorts ties
        if best.is_none_or(|b| t.probability < b.probability) {
            best = Some(t);
        }
    }
    let best = best.expect("distinguished classes all appear in torus_classes");
    (best.clone(), best.probability.clone())
}

/// Exact probability that a uniform W(B_m) element has the given product of
/// cycle signs. Computed by a cycle-insertion count, not assumed; it must
/// come out to 1/2 for both signs.
pub fn prob_sign_product(m: u32, sign: Sign) -> Rational {
    assert!((1..=40).contains(&m), "prob_sign_product: m must be in 1..=40, got {m}");
    // counts[k] = (elements of W(B_k) with sign product +, with product -)
    let mut counts: Vec<(BigInt, BigInt)> = vec![(BigInt::one(), BigInt::zero())];
    for k in 1..=m as usize {
        let mut plus = BigInt::zero();
        let mut minus = BigInt::zero();
        // the cycle through point k has length l; (k-1)...(k-l+1) ordered
        // choices of its remaining support, 2^(l-1) sign vectors for either
        // cycle sign; a + cycle keeps the running product, a - cycle flips it
        let mut arrangements = BigInt::one();
        for l in 1..=k {
            if l > 1 {
                arrangements *= BigInt::from((k - l + 1) as u64);
            }
            let ways = &arrangements * BigInt::from(2u64).pow(l as u32 - 1);
            let (sub_plus, sub_minus) = &counts[k - l];
            plus += &ways * sub_plus + &ways * sub_minus;
            minus += &ways * sub_minus + &ways * sub_plus;
        }
        counts.push((plus, minus));
    }
    let total = BigInt::from(2u64).pow(m) * factorial(m);
    let chosen = match sign {
        Sign::Plus => counts[m as usize].0.clone(),
        Sign::Minus => counts[m as usize].1.clone(),
    };
    Rational::from_big(chosen, total)
}

/// Exact probability that a uniform W(B_m) element has at least one positive
/// 1-cycle (a fixed point with positive sign).
pub fn prob_positive_fixed_part(m: u32) -> Rational {
    assert!((1..=80).contains(&m), "prob_positive_fixed_part: m must be in 1..=80, got {m}");
    // b[k] = elements of W(B_k) with no positive 1-cycle; insert the cycle
    // through point k: length 1 forces sign -, length l >= 2 allows 2^l signed
    // variants (2^(l-1) per cycle sign, both signs allowed).
    let mut b: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=m as usize {
        let mut total = b[k - 1].clone(); // 1-cycle, sign forced to -
        let mut arrangements = BigInt::one();
        for l in 2..=k {
            arrangements *= BigInt::from((k - l + 1) as u64);
            total += &arrangements * BigInt::from(2u64).pow(l as u32) * &b[k - l];
        }
        b.push(total);
    }
    let total = BigInt::from(2u64).pow(m) * factorial(m);
    Rational::one() - Rational::from_big(b[m as usize].clone(), total)
}
