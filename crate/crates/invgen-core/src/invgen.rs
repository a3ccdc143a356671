//! Leading-term invariable generation: the distinguished generating sets,
//! the torus sets T(x), their residual intersections, the relation `sim`
//! between torus classes, and the leading coefficients built from it.
//!
//! Everything here is exact rational arithmetic at the Weyl-group level; no
//! q enters except as a parity flag on symplectic families and as order
//! descriptors in element metadata.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, Integer, One, Zero};
use serde::Serialize;

use crate::rootsys_g2::g2_incidence;
use crate::torus_lattice::{
    class_profile, contains_profile, non_normalizer_families, FamilyKind, SubgroupFamily,
    CATALOG_NOTE,
};
use crate::weyl_stats::{
    class_probability, distinguished_class_data, torus_classes, ClassData, GroupFamily, QParity,
    Rational, Sign, SignedPartition, TorusClass,
};

/// One distinguished element: a torus class plus order metadata. The order
/// rule is a descriptor of the element's order as a function of q (maximal
/// order on each block of its torus); it never enters any computation.
#[derive(Clone, Debug)]
pub struct ElementSpec {
    pub family: GroupFamily,
    pub torus: TorusClass,
    pub label: String,
    pub order_rule: String,
}

/// The distinguished generating set of a classical family: 2 to 4 elements.
#[derive(Clone, Debug)]
pub struct ABSet {
    pub family: GroupFamily,
    pub elements: Vec<ElementSpec>,
}

fn qpow(a: u32, sign: Sign) -> String {
    let base = if a == 1 { "q".to_string() } else { format!("q^{a}") };
    match sign {
        Sign::Minus => format!("{base}+1"),
        Sign::Plus => format!("{base}-1"),
    }
}

fn order_rule(family: GroupFamily, data: &ClassData, label: &str) -> String {
    match (family, data) {
        (GroupFamily::LinearA { n }, ClassData::Linear(p)) => {
            if p.parts() == [n] {
                format!("(q^{n}-1)/(q-1)")
            } else {
                qpow(n - 1, Sign::Plus)
            }
        }
        (GroupFamily::UnitaryTwistedA { n }, ClassData::Linear(p)) => {
            // a k-block of the twisted torus has order q^k - (-1)^k
            if p.parts() == [n] {
                if n % 2 == 1 {
                    format!("(q^{n}+1)/(q+1)")
                } else {
                    format!("(q^{n}-1)/(q+1)")
                }
            } else if (n - 1) % 2 == 0 {
                qpow(n - 1, Sign::Plus)
            } else {
                qpow(n - 1, Sign::Minus)
            }
        }
        (_, ClassData::Signed(sp)) => {
            let blocks: Vec<String> = sp.parts().iter().map(|p| qpow(p.len, p.sign)).collect();
            let core = if blocks.len() == 1 {
                blocks[0].clone()
            } else {
                format!("lcm({})", blocks.join(", "))
            };
            let orthogonal = matches!(
                family,
                GroupFamily::OrthogonalOddB { .. }
                    | GroupFamily::OrthogonalDPlus { .. }
                    | GroupFamily::OrthogonalDMinus { .. }
            );
            let base = if orthogonal { format!("({core})/gcd(2,q-1)") } else { core };
            // the two order-refined elements: a pair (g, g^2) on equal blocks
            match (family, sp.parts()) {
                (GroupFamily::SymplecticC { m: 2, q: QParity::Even }, parts)
                    if label == "x3" && parts.len() == 2 =>
                {
                    format!("{base}; taken as (g, g^2) with g of order q+1")
                }
                (GroupFamily::OrthogonalDPlus { m: 4 }, parts)
                    if label == "x3" && parts.len() == 2 =>
                {
                    format!("{base}; taken as (g, g^2) with g of order (q^2+1)/gcd(2,q-1)")
                }
                _ => base,
            }
        }
        _ => panic!("order_rule: class data does not match family {family}"),
    }
}

/// Class masses as integer multiples of a common reciprocal: n! for the
/// unsigned types, 2^m m! for the signed ones. Avoids rational
/// normalization in the hot loops; quotients are cached per distinct
/// denominator.
struct MassScale {
    den: BigInt,
    quotients: HashMap<BigInt, BigInt>,
}

impl MassScale {
    fn new(family: GroupFamily) -> Self {
        let factorial = |k: u32| (1..=k).fold(BigInt::one(), |acc, i| acc * i);
        let den = match family {
            GroupFamily::LinearA { n } | GroupFamily::UnitaryTwistedA { n } => factorial(n),
            GroupFamily::ExceptionalG2 { .. } => BigInt::from(12),
            _ => {
                let m = family.rank();
                factorial(m) << m
            }
        };
        MassScale { den, quotients: HashMap::new() }
    }

    fn weight(&mut self, t: &TorusClass) -> BigInt {
        let q = self.quotients.entry(t.probability.denom().clone()).or_insert_with(|| {
            let (quot, rem) = self.den.div_rem(t.probability.denom());
            assert!(rem.is_zero(), "weight denominator does not clear {t}");
            quot
        });
        t.probability.numer() * &*q
    }

    fn to_rational(&self, weight: BigInt) -> Rational {
        Rational::from_big(weight, self.den.clone())
    }
}

fn class_with_probability(family: GroupFamily, data: ClassData) -> TorusClass {
    let split = match (&data, family) {
        (
            ClassData::Signed(sp),
            GroupFamily::OrthogonalDPlus { .. } | GroupFamily::OrthogonalDMinus { .. },
        ) => sp.all_even() && sp.all_positive(),
        _ => false,
    };
    let mut t = TorusClass { family, data, split, probability: Rational::zero() };
    t.probability = class_probability(family, &t);
    t
}

/// The distinguished generating set of the family, with element metadata.
/// Panics when the rank falls below the row's condition.
pub fn ab_set(family: GroupFamily) -> ABSet {
    assert!(family.is_classical(), "ab_set: classical families only, got {family}");
    let elements = distinguished_class_data(family)
        .into_iter()
        .enumerate()
        .map(|(i, data)| {
            let label = format!("x{}", i + 1);
            let order_rule = order_rule(family, &data, &label);
            ElementSpec {
                family,
                torus: class_with_probability(family, data),
                label,
                order_rule,
            }
        })
        .collect();
    ABSet { family, elements }
}

/// Per-class membership bitmask over the non-normalizer families, in catalog
/// order. Two distinct classes share an overgroup class iff their masks
/// intersect; a class always shares its own normalizer with itself.
fn signatures(family: GroupFamily, classes: &[TorusClass]) -> Vec<u128> {
    let families = non_normalizer_families(family);
    assert!(families.len() <= 128, "family catalog exceeds signature width");
    classes
        .iter()
        .map(|t| {
            let profile = class_profile(t);
            families
                .iter()
                .enumerate()
                .filter(|(_, f)| contains_profile(f, &profile))
                .fold(0u128, |acc, (i, _)| acc | (1 << i))
        })
        .collect()
}

/// T(x) for a single class: every class contained in some maximal-rank
/// family that also contains `x`, plus x's own class (its normalizer).
fn torus_set_of_class(x: &TorusClass) -> Vec<TorusClass> {
    let classes = torus_classes(x.family);
    let sigs = signatures(x.family, &classes);
    let xi = classes.iter().position(|t| t.data == x.data).expect("class not in its family");
    classes
        .iter()
        .enumerate()
        .filter(|&(i, t)| sigs[i] & sigs[xi] != 0 || t.data == x.data)
        .map(|(_, t)| t.clone())
        .collect()
}

/// The torus set of a distinguished element.
pub fn torus_set(x: &ElementSpec) -> Vec<TorusClass> {
    torus_set_of_class(&x.torus)
}

/// Intersection of the torus sets of the given classes, in catalog order.
pub fn residual_of_classes(family: GroupFamily, members: &[TorusClass]) -> Vec<TorusClass> {
    assert!(!members.is_empty(), "residual of an empty element set is undefined");
    let classes = torus_classes(family);
    let sigs = signatures(family, &classes);
    let member_sigs: Vec<(u128, &ClassData)> = members
        .iter()
        .map(|x| {
            assert!(x.family == family, "residual member from {} in {}", x.family, family);
            let i = classes.iter().position(|t| t.data == x.data).expect("unknown class");
            (sigs[i], &x.data)
        })
        .collect();
    classes
        .iter()
        .enumerate()
        .filter(|&(i, t)| {
            member_sigs.iter().all(|&(s, d)| sigs[i] & s != 0 || t.data == *d)
        })
        .map(|(_, t)| t.clone())
        .collect()
}

/// Intersection over the elements' torus sets. Panics on an empty slice.
pub fn residual_classes(a: &[ElementSpec]) -> Vec<TorusClass> {
    assert!(!a.is_empty(), "residual of an empty element set is undefined");
    let family = a[0].family;
    assert!(a.iter().all(|x| x.family == family), "residual elements must share a family");
    let members: Vec<TorusClass> = a.iter().map(|x| x.torus.clone()).collect();
    residual_of_classes(family, &members)
}

/// Total leading mass of the residual classes; exactly zero iff empty.
pub fn residual_leading(a: &[ElementSpec]) -> Rational {
    assert!(!a.is_empty(), "residual of an empty element set is undefined");
    let mut scale = MassScale::new(a[0].family);
    let total: BigInt = residual_classes(a).iter().map(|t| scale.weight(t)).sum();
    scale.to_rational(total)
}

/// Unordered pairs of distinct torus classes with no common maximal-rank
/// overgroup class. Symmetric and irreflexive by construction.
pub fn relation_sim(family: GroupFamily) -> Vec<(TorusClass, TorusClass)> {
    let classes = torus_classes(family);
    let mut out = Vec::new();
    match family {
        GroupFamily::ExceptionalG2 { p3 } => {
            let inc = g2_incidence(p3);
            for i in 0..classes.len() {
                for j in i + 1..classes.len() {
                    if !inc.share_column(i as u8 + 1, j as u8 + 1) {
                        out.push((classes[i].clone(), classes[j].clone()));
                    }
                }
            }
        }
        _ => {
            let sigs = signatures(family, &classes);
            for i in 0..classes.len() {
                for j in i + 1..classes.len() {
                    if sigs[i] & sigs[j] == 0 {
                        out.push((classes[i].clone(), classes[j].clone()));
                    }
                }
            }
        }
    }
    out
}

/// Leading coefficient of the probability that two independent uniform
/// elements invariably generate: the sum of P_i * P_j over ordered pairs of
/// unrelated classes, grouped by signature.
pub fn leading_term_two_random(family: GroupFamily) -> Rational {
    if let GroupFamily::ExceptionalG2 { .. } = family {
        let two = Rational::from_int(2);
        return relation_sim(family)
            .iter()
            .map(|(a, b)| two.clone() * a.probability.clone() * b.probability.clone())
            .sum();
    }
    let classes = torus_classes(family);
    let sigs = signatures(family, &classes);
    let mut scale = MassScale::new(family);
    // group classes by signature: weight sum and weight-square sum per group
    let mut groups: BTreeMap<u128, (BigInt, BigInt)> = BTreeMap::new();
    for (i, t) in classes.iter().enumerate() {
        let w = scale.weight(t);
        let entry = groups.entry(sigs[i]).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
        entry.0 += &w;
        entry.1 += &w * &w;
    }
    let groups: Vec<(u128, BigInt, BigInt)> =
        groups.into_iter().map(|(s, (m, sq))| (s, m, sq)).collect();
    let mut total = BigInt::zero();
    for (i, (si, mi, sqi)) in groups.iter().enumerate() {
        // distinct classes sharing an empty signature share no overgroup
        if *si == 0 {
            total += mi * mi - sqi;
        }
        for (sj, mj, _) in groups.iter().skip(i + 1) {
            if si & sj == 0 {
                total += 2 * mi * mj;
            }
        }
    }
    Rational::from_big(total, &scale.den * &scale.den)
}

/// Leading proportion of elements that invariably generate together with a
/// fixed element of class `t`: the total mass of t's unrelated classes.
pub fn pinv_leading(t: &TorusClass) -> Rational {
    let classes = torus_classes(t.family);
    match t.family {
        GroupFamily::ExceptionalG2 { p3 } => {
            let ClassData::G2(i) = t.data else {
                panic!("pinv_leading: non-G2 class data in a G2 family")
            };
            let inc = g2_incidence(p3);
            classes
                .iter()
                .filter(|u| {
                    let ClassData::G2(j) = u.data else { unreachable!() };
                    j != i && !inc.share_column(i, j)
                })
                .map(|u| u.probability.clone())
                .sum()
        }
        _ => {
            let sigs = signatures(t.family, &classes);
            let ti = classes.iter().position(|u| u.data == t.data).expect("class not in family");
            let mut scale = MassScale::new(t.family);
            let total: BigInt = classes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ti && sigs[j] & sigs[ti] == 0)
                .map(|(_, u)| scale.weight(u))
                .sum();
            scale.to_rational(total)
        }
    }
}

/// Diagnostics for one subset of the distinguished set.
#[derive(Clone, Debug, Serialize)]
pub struct SubsetResidual {
    pub count: usize,
    pub leading: Rational,
    /// Up to three residual classes, in catalog order.
    pub sample: Vec<String>,
}

/// Verification report for one distinguished generating set.
#[derive(Clone, Debug, Serialize)]
pub struct AbReport {
    pub family: String,
    pub rank: u32,
    pub labels: Vec<String>,
    pub empty: bool,
    pub residual: Vec<String>,
    /// Element label -> tags of the maximal-rank families containing it.
    pub per_element_families: BTreeMap<String, Vec<String>>,
    /// Proper nonempty subsets of the labels -> residual diagnostics.
    pub pairwise_residuals: BTreeMap<String, SubsetResidual>,
    pub note: String,
}

/// Verify that the distinguished set's torus sets have empty intersection,
/// and report every proper subset's residual for diagnosis.
pub fn verify_ab(family: GroupFamily) -> AbReport {
    let ab = ab_set(family);
    let k = ab.elements.len();
    let classes = torus_classes(family);
    let sigs = signatures(family, &classes);
    let element_sigs: Vec<u128> = ab
        .elements
        .iter()
        .map(|x| {
            let i = classes.iter().position(|t| t.data == x.torus.data).expect("class in family");
            sigs[i]
        })
        .collect();

    let families = non_normalizer_families(family);
    let mut per_element_families = BTreeMap::new();
    for (x, &sig) in ab.elements.iter().zip(&element_sigs) {
        let mut tags: Vec<String> = families
            .iter()
            .enumerate()
            .filter(|(i, _)| sig >> i & 1 == 1)
            .map(|(_, f)| f.tag())
            .collect();
        tags.push(
            SubgroupFamily {
                family,
                kind: FamilyKind::TorusNormalizer { class: x.torus.data.clone() },
            }
            .tag(),
        );
        per_element_families.insert(x.label.clone(), tags);
    }

    // single pass: per class, the subset of elements whose torus set holds it
    let mut scale = MassScale::new(family);
    let full: u32 = (1 << k) - 1;
    let mut subset_data: Vec<(usize, BigInt, Vec<String>)> =
        vec![(0, BigInt::zero(), Vec::new()); 1 << k];
    let mut residual = Vec::new();
    for (i, t) in classes.iter().enumerate() {
        let mut hit: u32 = 0;
        for (e, &s) in element_sigs.iter().enumerate() {
            if sigs[i] & s != 0 || t.data == ab.elements[e].torus.data {
                hit |= 1 << e;
            }
        }
        if hit == full {
            residual.push(t.to_string());
        }
        if hit == 0 {
            continue;
        }
        let weight = scale.weight(t);
        for subset in 1..full {
            if hit & subset == subset {
                let entry = &mut subset_data[subset as usize];
                entry.0 += 1;
                entry.1 += &weight;
                if entry.2.len() < 3 {
                    entry.2.push(t.to_string());
                }
            }
        }
    }

    let mut pairwise_residuals = BTreeMap::new();
    for subset in 1..full {
        let key: Vec<String> = (0..k)
            .filter(|e| subset >> e & 1 == 1)
            .map(|e| ab.elements[e].label.clone())
            .collect();
        let (count, weight, sample) = subset_data[subset as usize].clone();
        pairwise_residuals.insert(
            key.join(","),
            SubsetResidual { count, leading: scale.to_rational(weight), sample },
        );
    }

    AbReport {
        family: family.to_string(),
        rank: family.rank(),
        labels: ab.elements.iter().map(|x| x.label.clone()).collect(),
        empty: residual.is_empty(),
        residual,
        per_element_families,
        pairwise_residuals,
        note: CATALOG_NOTE.to_string(),
    }
}

/// Report for the three-element lower bound in even-characteristic
/// symplectic groups.
#[derive(Clone, Debug, Serialize)]
pub struct SharpnessReport {
    pub family: String,
    pub m: u32,
    pub triples: usize,
    /// True iff every 3-subset of torus classes has a nonempty residual.
    pub all_triples_blocked: bool,
    /// True iff the construction's designated witness was valid for every
    /// triple (it is recorded in `witnesses` whenever so).
    pub proof_witnesses_valid: bool,
    /// Triple "a|b|c" -> a witness class in its residual.
    pub witnesses: BTreeMap<String, String>,
}

/// For every 3-subset of torus classes of Sp_2m(q), q even, exhibit a common
/// torus class in the intersection of their torus sets. The designated
/// witnesses: (1+,...,1+) when (m-) is absent; (1+,...,1+,1-) when (m-) is
/// present but (m+) is not; (m^e) with e the sign product of the third class
/// when both are present.
pub fn sharpness_triples(m: u32) -> SharpnessReport {
    assert!((2..=6).contains(&m), "sharpness_triples: 2 <= m <= 6, got {m}");
    let family = GroupFamily::SymplecticC { m, q: QParity::Even };
    let classes = torus_classes(family);
    let sigs = signatures(family, &classes);
    let by_data = |data: &ClassData| -> usize {
        classes.iter().position(|t| &t.data == data).expect("class in family")
    };
    let single = |sign: Sign| ClassData::Signed(SignedPartition::from_pairs(&[(m, sign)]));
    let coxeter_minus = by_data(&single(Sign::Minus));
    let coxeter_plus = by_data(&single(Sign::Plus));
    let mostly_ones = |last: Sign| -> usize {
        let mut pairs = vec![(1, Sign::Plus); m as usize - 1];
        pairs.push((1, last));
        by_data(&ClassData::Signed(SignedPartition::from_pairs(&pairs)))
    };
    let all_plus_ones = mostly_ones(Sign::Plus);
    let one_minus = mostly_ones(Sign::Minus);

    let hits = |w: usize, y: usize| sigs[w] & sigs[y] != 0 || w == y;
    let mut witnesses = BTreeMap::new();
    let mut all_triples_blocked = true;
    let mut proof_witnesses_valid = true;
    let mut triples = 0;
    let n = classes.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples += 1;
                let triple = [a, b, c];
                let witness = if !triple.contains(&coxeter_minus) {
                    all_plus_ones
                } else if !triple.contains(&coxeter_plus) {
                    one_minus
                } else {
                    let third = *triple
                        .iter()
                        .find(|&&y| y != coxeter_minus && y != coxeter_plus)
                        .expect("triples have three members");
                    let ClassData::Signed(sp) = &classes[third].data else { unreachable!() };
                    by_data(&single(sp.sign_product()))
                };
                let key = format!("{}|{}|{}", classes[a], classes[b], classes[c]);
                if triple.iter().all(|&y| hits(witness, y)) {
                    witnesses.insert(key, classes[witness].to_string());
                } else {
                    proof_witnesses_valid = false;
                    match (0..n).find(|&w| triple.iter().all(|&y| hits(w, y))) {
                        Some(w) => {
                            witnesses.insert(key, classes[w].to_string());
                        }
                        None => {
                            all_triples_blocked = false;
                        }
                    }
                }
            }
        }
    }
    SharpnessReport {
        family: family.to_string(),
        m,
        triples,
        all_triples_blocked,
        proof_witnesses_valid,
        witnesses,
    }
}

/// One distinguished class checked against the 1/(4m) lower bound.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaRow {
    pub family: String,
    pub class: String,
    pub probability: Rational,
    pub bound: Rational,
    pub ok: bool,
    pub equality: bool,
}

/// The signed families whose distinguished rows the bound covers, ranks 2
/// through m_max. The symplectic rows are taken at odd q: the Weyl-level
/// data is the same hyperoctahedral group for both parities, and the
/// even-q rows only add elements.
fn alpha_families(m_max: u32) -> Vec<GroupFamily> {
    let mut out = Vec::new();
    for m in 2..=m_max {
        out.push(GroupFamily::SymplecticC { m, q: QParity::Odd });
        if m >= 3 {
            out.push(GroupFamily::OrthogonalOddB { m });
        }
        if m >= 4 {
            out.push(GroupFamily::OrthogonalDPlus { m });
            out.push(GroupFamily::OrthogonalDMinus { m });
        }
    }
    out
}

/// Every distinguished class of every signed family up to rank m_max,
/// against the 1/(4 rank) bound.
pub fn alpha_scan(m_max: u32) -> Vec<AlphaRow> {
    assert!((2..=30).contains(&m_max), "alpha_scan: 2 <= m_max <= 30, got {m_max}");
    let mut rows = Vec::new();
    for family in alpha_families(m_max) {
        let m = family.rank();
        let bound = Rational::new(1, 4 * m as i64);
        for data in distinguished_class_data(family) {
            let t = class_with_probability(family, data);
            let ok = t.probability >= bound;
            let equality = t.probability == bound;
            rows.push(AlphaRow {
                family: family.to_string(),
                class: t.to_string(),
                probability: t.probability,
                bound: bound.clone(),
                ok,
                equality,
            });
        }
    }
    rows
}

/// True iff every distinguished class probability meets the 1/(4 rank)
/// bound up to m_max, with equality exactly at (2-,2-) in rank 4 plus type.
pub fn alpha_check(m_max: u32) -> bool {
    let rows = alpha_scan(m_max);
    let equalities: Vec<&AlphaRow> = rows.iter().filter(|r| r.equality).collect();
    rows.iter().all(|r| r.ok)
        && match m_max {
            2..=3 => equalities.is_empty(),
            _ => {
                equalities.len() == 1
                    && equalities[0].family == GroupFamily::OrthogonalDPlus { m: 4 }.to_string()
                    && equalities[0].class == "2-,2-"
            }
        }
}
