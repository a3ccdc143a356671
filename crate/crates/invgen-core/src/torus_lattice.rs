//! Catalog of the classes of maximal-rank subgroups of each classical family
//! and the containment predicate between those classes and torus classes.
//!
//! A `SubgroupFamily` stands for one class of (connected components of)
//! maximal subgroups of maximal rank: subspace stabilizers (parabolic and
//! nondegenerate), imprimitive decomposition stabilizers, extension-field
//! subgroups, the unitary-over-q subgroups, the q-even orthogonal subgroups
//! of symplectic groups, and torus normalizers. Containment of a torus class
//! is a pure predicate on its (signed) partition.
//!
//! Conventions baked into the catalog:
//! - dimensions are halved where a form is present: `NondegStabO { a, .. }`
//!   stabilizes a nondegenerate 2a-space, `TotSingStab { k }` a totally
//!   singular k-space;
//! - stabilizers of complementary nondegenerate spaces are the same family
//!   (the predicate is invariant under complements, because the type of an
//!   orthogonal direct sum is the product of the types);
//! - for the minus orthogonal family with m even, the self-complementary
//!   half-dimension family is stored once with a + sign;
//! - orthogonal imprimitive families carry the common type of their
//!   isometric blocks: opposite-type wreaths are different subgroup classes,
//!   and only sign-consistent families (block sign^t = ambient sign) exist;
//! - GU_m(q) is a maximal-rank family of Sp_2m(q) only for q odd; for q even
//!   it falls inside the orthogonal subgroups, which are listed instead;
//! - the odd orthogonal family has no extension-field and no imprimitive
//!   families (they are not of maximal rank there);
//! - for the plus orthogonal family, totally singular (m-1)-space
//!   stabilizers are omitted (they lie inside the two spinor parabolics) and
//!   the two classes of maximal totally singular m-spaces are folded into
//!   `TotSingStab(m)`, with `TotSingPairGL` kept as an alias.

use std::collections::HashSet;

use crate::weyl_stats::{ClassData, GroupFamily, QParity, Sign, TorusClass};

/// Note attached to reports: the catalog's class-identification assumption.
pub const CATALOG_NOTE: &str = "catalog assumes one subgroup class per family \
descriptor; orthogonal imprimitive descriptors are refined by the common \
block type";

/// The kinds of maximal-rank subgroup families, with their parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    /// Type A only: stabilizer of a k-space, 1 <= k <= n-1.
    ParabolicStab { k: u32 },
    /// Unitary: stabilizer of a nondegenerate k-space (unordered with its
    /// complement), 1 <= k <= n/2.
    NondegStabA { k: u32 },
    /// Stabilizer of a totally singular k-space.
    TotSingStab { k: u32 },
    /// Symplectic: stabilizer of a nondegenerate 2a-space (unordered with
    /// its complement), 1 <= a <= m/2.
    NondegStabSp { a: u32 },
    /// Orthogonal: stabilizer of a nondegenerate 2a-space of type `sign`.
    NondegStabO { a: u32, sign: Sign },
    /// Symplectic, q even only: SO^sign_2m(q) < Sp_2m(q).
    HyperplaneSO { sign: Sign },
    /// Stabilizer of a decomposition into t isometric blocks of rank ell;
    /// `block_sign` is the common block type for orthogonal families.
    Imprimitive { ell: u32, t: u32, block_sign: Option<Sign> },
    /// GL_{n/2}(q^2) < SU_n (n even), or GL_m(q) < Sp_2m / Omega^+_2m:
    /// stabilizer of a dual pair of maximal totally singular spaces.
    /// An alias of `TotSingStab(max)`.
    TotSingPairGL,
    /// Extension-field subgroup of prime degree b.
    ExtField { b: u32 },
    /// GU_m(q) inside Sp_2m(q) (q odd) or Omega^eps_2m(q) (eps = + iff m
    /// even).
    GUOverQ,
    /// Normalizer of a torus of the given class; contains exactly it.
    TorusNormalizer { class: ClassData },
}

/// One class of maximal-rank subgroups of a classical family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubgroupFamily {
    pub family: GroupFamily,
    pub kind: FamilyKind,
}

impl SubgroupFamily {
    /// Stable string tag, used as a column label and in JSON reports.
    pub fn tag(&self) -> String {
        match &self.kind {
            FamilyKind::ParabolicStab { k } | FamilyKind::TotSingStab { k } => format!("P({k})"),
            FamilyKind::NondegStabA { k } => format!("N({k})"),
            FamilyKind::NondegStabSp { a } => format!("N({a})"),
            FamilyKind::NondegStabO { a, sign } => format!("N({a},{})", sign.as_char()),
            FamilyKind::HyperplaneSO { sign } => format!("SO({})", sign.as_char()),
            FamilyKind::Imprimitive { ell, t, block_sign: None } => format!("Imp({ell},{t})"),
            FamilyKind::Imprimitive { ell, t, block_sign: Some(s) } => {
                format!("Imp({ell},{t},{})", s.as_char())
            }
            FamilyKind::TotSingPairGL => "GLpair".to_string(),
            FamilyKind::ExtField { b } => format!("EF({b})"),
            FamilyKind::GUOverQ => "GU".to_string(),
            FamilyKind::TorusNormalizer { class } => format!("Norm({class})"),
        }
    }

    pub fn is_normalizer(&self) -> bool {
        matches!(self.kind, FamilyKind::TorusNormalizer { .. })
    }
}

fn primes_dividing(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            out.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

/// (ell, t) with ell * t = m and t >= 2, t ascending.
fn block_shapes(m: u32) -> Vec<(u32, u32)> {
    (2..=m).filter(|t| m.is_multiple_of(*t)).map(|t| (m / t, t)).collect()
}

/// Valid extension-field primes for symplectic and even orthogonal
/// families: 2m/b must stay even, so b odd dividing m, or b = 2 with m even.
fn ext_primes_bcd(m: u32) -> Vec<u32> {
    primes_dividing(m).into_iter().filter(|&b| b % 2 == 1 || m.is_multiple_of(2)).collect()
}

/// The catalog without torus normalizers, in a stable order.
pub fn non_normalizer_families(family: GroupFamily) -> Vec<SubgroupFamily> {
    family.validate();
    let mk = |kind: FamilyKind| SubgroupFamily { family, kind };
    let mut out = Vec::new();
    match family {
        GroupFamily::LinearA { n } => {
            for k in 1..n {
                out.push(mk(FamilyKind::ParabolicStab { k }));
            }
            for (ell, t) in block_shapes(n) {
                out.push(mk(FamilyKind::Imprimitive { ell, t, block_sign: None }));
            }
            for b in primes_dividing(n) {
                out.push(mk(FamilyKind::ExtField { b }));
            }
        }
        GroupFamily::UnitaryTwistedA { n } => {
            for k in 1..=n / 2 {
                out.push(mk(FamilyKind::TotSingStab { k }));
            }
            for k in 1..=n / 2 {
                out.push(mk(FamilyKind::NondegStabA { k }));
            }
            if n % 2 == 0 {
                out.push(mk(FamilyKind::TotSingPairGL));
            }
            for (ell, t) in block_shapes(n) {
                out.push(mk(FamilyKind::Imprimitive { ell, t, block_sign: None }));
            }
            for b in primes_dividing(n).into_iter().filter(|&b| b % 2 == 1) {
                out.push(mk(FamilyKind::ExtField { b }));
            }
        }
        GroupFamily::SymplecticC { m, q } => {
            for k in 1..=m {
                out.push(mk(FamilyKind::TotSingStab { k }));
            }
            for a in 1..=m / 2 {
                out.push(mk(FamilyKind::NondegStabSp { a }));
            }
            if q == QParity::Even {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(mk(FamilyKind::HyperplaneSO { sign }));
                }
            }
            out.push(mk(FamilyKind::TotSingPairGL));
            for (ell, t) in block_shapes(m) {
                out.push(mk(FamilyKind::Imprimitive { ell, t, block_sign: None }));
            }
            for b in ext_primes_bcd(m) {
                out.push(mk(FamilyKind::ExtField { b }));
            }
            if q == QParity::Odd {
                out.push(mk(FamilyKind::GUOverQ));
            }
        }
        GroupFamily::OrthogonalOddB { m } => {
            for k in 1..=m {
                out.push(mk(FamilyKind::TotSingStab { k }));
            }
            for a in 1..=m {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(mk(FamilyKind::NondegStabO { a, sign }));
                }
            }
        }
        GroupFamily::OrthogonalDPlus { m } => {
            for k in (1..=m).filter(|&k| k != m - 1) {
                out.push(mk(FamilyKind::TotSingStab { k }));
            }
            for a in 1..=m / 2 {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(mk(FamilyKind::NondegStabO { a, sign }));
                }
            }
            out.push(mk(FamilyKind::TotSingPairGL));
            for (ell, t) in block_shapes(m) {
                for sign in [Sign::Plus, Sign::Minus] {
                    // the type of the sum of t isometric blocks is sign^t
                    let consistent = sign == Sign::Plus || t % 2 == 0;
                    if consistent {
                        out.push(mk(FamilyKind::Imprimitive { ell, t, block_sign: Some(sign) }));
                    }
                }
            }
            for b in ext_primes_bcd(m) {
                out.push(mk(FamilyKind::ExtField { b }));
            }
            if m % 2 == 0 {
                out.push(mk(FamilyKind::GUOverQ));
            }
        }
        GroupFamily::OrthogonalDMinus { m } => {
            for k in 1..m {
                out.push(mk(FamilyKind::TotSingStab { k }));
            }
            for a in 1..=(m - 1) / 2 {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(mk(FamilyKind::NondegStabO { a, sign }));
                }
            }
            if m % 2 == 0 {
                out.push(mk(FamilyKind::NondegStabO { a: m / 2, sign: Sign::Plus }));
            }
            for (ell, t) in block_shapes(m) {
                if t % 2 == 1 {
                    out.push(mk(FamilyKind::Imprimitive { ell, t, block_sign: Some(Sign::Minus) }));
                }
            }
            for b in ext_primes_bcd(m) {
                out.push(mk(FamilyKind::ExtField { b }));
            }
            if m % 2 == 1 {
                out.push(mk(FamilyKind::GUOverQ));
            }
        }
        GroupFamily::ExceptionalG2 { .. } => {
            panic!("subgroup catalog is for classical families; G2 goes through rootsys_g2")
        }
    }
    out
}

/// The complete catalog: the non-normalizer families plus one normalizer per
/// torus class.
pub fn subgroup_families(family: GroupFamily) -> Vec<SubgroupFamily> {
    let mut out = non_normalizer_families(family);
    for t in crate::weyl_stats::torus_classes(family) {
        out.push(SubgroupFamily { family, kind: FamilyKind::TorusNormalizer { class: t.data } });
    }
    out
}

/// Precomputed subset-sum structure of one torus class, shared across many
/// containment queries. All sums fit in u64 bitmasks (ranks <= 60).
pub(crate) struct ClassProfile {
    /// Bit s: some sub-multiset of parts sums to s.
    sum_mask: u64,
    /// Bit s: some sub-multiset with sign product + (resp. -) sums to s.
    plus_mask: u64,
    minus_mask: u64,
    /// Bit s: some subset of positive parts sums to s.
    pos_mask: u64,
    /// Bit s: some subset of even parts has half-sum s.
    even_half_mask: u64,
    sign_product: Sign,
    all_even: bool,
    all_positive: bool,
    gu_pattern: bool,
    len_gcd: u32,
    parts: Vec<(u32, Sign)>,
    data: ClassData,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn class_profile(t: &TorusClass) -> ClassProfile {
    let parts: Vec<(u32, Sign)> = match &t.data {
        ClassData::Linear(p) => p.parts().iter().map(|&len| (len, Sign::Plus)).collect(),
        ClassData::Signed(sp) => sp.parts().iter().map(|p| (p.len, p.sign)).collect(),
        ClassData::G2(_) => panic!("class profiles are for classical families"),
    };
    let mut sum_mask = 1u64;
    let mut plus_mask = 1u64;
    let mut minus_mask = 0u64;
    let mut pos_mask = 1u64;
    let mut even_half_mask = 1u64;
    let mut len_gcd = 0u32;
    for &(len, sign) in &parts {
        sum_mask |= sum_mask << len;
        match sign {
            Sign::Plus => {
                plus_mask |= plus_mask << len;
                minus_mask |= minus_mask << len;
                pos_mask |= pos_mask << len;
            }
            Sign::Minus => {
                let p = plus_mask | (minus_mask << len);
                let m = minus_mask | (plus_mask << len);
                plus_mask = p;
                minus_mask = m;
            }
        }
        if len % 2 == 0 {
            even_half_mask |= even_half_mask << (len / 2);
        }
        len_gcd = gcd(len_gcd, len);
    }
    let sign_product = parts.iter().fold(Sign::Plus, |acc, &(_, s)| acc.times(s));
    ClassProfile {
        sum_mask,
        plus_mask,
        minus_mask,
        pos_mask,
        even_half_mask,
        sign_product,
        all_even: parts.iter().all(|&(len, _)| len % 2 == 0),
        all_positive: parts.iter().all(|&(_, s)| s == Sign::Plus),
        gu_pattern: parts
            .iter()
            .all(|&(len, s)| if len % 2 == 1 { s == Sign::Minus } else { s == Sign::Plus }),
        len_gcd,
        parts,
        data: t.data.clone(),
    }
}

fn bit(mask: u64, s: u32) -> bool {
    s <= 63 && (mask >> s) & 1 == 1
}

/// Can `parts` be split into t groups, each of sum ell, and (when
/// `block_sign` is set) each of sign product `block_sign`? Exact cover by
/// identical bins: each bin is anchored at the largest remaining part (bins
/// are interchangeable, so that is canonical), fillings enumerate run
/// multiplicities, and failed remainder multisets are memoized at bin
/// boundaries.
fn imprimitive_fits(parts: &[(u32, Sign)], ell: u32, t: u32, block_sign: Option<Sign>) -> bool {
    let total: u32 = parts.iter().map(|&(len, _)| len).sum();
    if total != ell * t || parts.iter().any(|&(len, _)| len > ell) {
        return false;
    }
    let minus_count = parts.iter().filter(|&&(_, s)| s == Sign::Minus).count() as u32;
    if let Some(sign) = block_sign {
        let global = if minus_count.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
        let expected = if t.is_multiple_of(2) { Sign::Plus } else { sign };
        if global != expected {
            return false;
        }
        // a minus bin holds an odd number of minus parts
        if sign == Sign::Minus && minus_count < t {
            return false;
        }
    }
    let mut runs: Vec<(u32, Sign, u8)> = Vec::new();
    for &(len, sign) in parts {
        match runs.last_mut() {
            Some(r) if r.0 == len && r.1 == sign => r.2 += 1,
            _ => runs.push((len, sign, 1)),
        }
    }
    let mut counts: Vec<u8> = runs.iter().map(|r| r.2).collect();
    let mut search = ImpSearch { runs, ell, block_sign, failed: HashSet::new() };
    search.bins(&mut counts, t)
}

struct ImpSearch {
    /// Distinct (len, sign) in descending part order, with multiplicities.
    runs: Vec<(u32, Sign, u8)>,
    ell: u32,
    block_sign: Option<Sign>,
    /// Remainder multisets (as count vectors) that cannot be covered.
    failed: HashSet<Vec<u8>>,
}

impl ImpSearch {
    fn bins(&mut self, counts: &mut Vec<u8>, bins_left: u32) -> bool {
        if bins_left == 0 {
            // length conservation: nothing remains
            return true;
        }
        if self.failed.contains(counts) {
            return false;
        }
        let anchor = counts.iter().position(|&c| c > 0).expect("parts remain with bins left");
        counts[anchor] -= 1;
        let (len, sign, _) = self.runs[anchor];
        let ok = self.pick(counts, anchor, self.ell - len, sign, bins_left);
        counts[anchor] += 1;
        if !ok {
            self.failed.insert(counts.clone());
        }
        ok
    }

    /// Complete the current bin from runs[from..]: `need` more length, bin
    /// sign product so far `acc`.
    fn pick(
        &mut self,
        counts: &mut Vec<u8>,
        from: usize,
        need: u32,
        acc: Sign,
        bins_left: u32,
    ) -> bool {
        if need == 0 {
            if let Some(want) = self.block_sign {
                if acc != want {
                    return false;
                }
            }
            return self.bins(counts, bins_left - 1);
        }
        let usable: u32 = (from..self.runs.len())
            .filter(|&i| self.runs[i].0 <= need)
            .map(|i| counts[i] as u32 * self.runs[i].0)
            .sum();
        if usable < need {
            return false;
        }
        let (len, sign, _) = self.runs[from];
        let max_take = (counts[from] as u32).min(need / len);
        for k in (0..=max_take).rev() {
            counts[from] -= k as u8;
            let acc_k = if sign == Sign::Minus && k % 2 == 1 { acc.flip() } else { acc };
            if self.pick(counts, from + 1, need - k * len, acc_k, bins_left) {
                counts[from] += k as u8;
                return true;
            }
            counts[from] += k as u8;
        }
        false
    }
}

pub(crate) fn contains_profile(f: &SubgroupFamily, p: &ClassProfile) -> bool {
    match &f.kind {
        FamilyKind::ParabolicStab { k } => bit(p.sum_mask, *k),
        FamilyKind::NondegStabA { k } => bit(p.sum_mask, *k),
        FamilyKind::NondegStabSp { a } => bit(p.sum_mask, *a),
        FamilyKind::TotSingStab { k } => match f.family {
            GroupFamily::LinearA { .. } => bit(p.sum_mask, *k),
            GroupFamily::UnitaryTwistedA { .. } => bit(p.even_half_mask, *k),
            _ => bit(p.pos_mask, *k),
        },
        FamilyKind::NondegStabO { a, sign } => match sign {
            Sign::Plus => bit(p.plus_mask, *a),
            Sign::Minus => bit(p.minus_mask, *a),
        },
        FamilyKind::HyperplaneSO { sign } => p.sign_product == *sign,
        FamilyKind::Imprimitive { ell, t, block_sign } => {
            imprimitive_fits(&p.parts, *ell, *t, *block_sign)
        }
        FamilyKind::TotSingPairGL => match f.family {
            GroupFamily::UnitaryTwistedA { .. } => p.all_even,
            _ => p.all_positive,
        },
        FamilyKind::ExtField { b } => p.len_gcd.is_multiple_of(*b),
        FamilyKind::GUOverQ => p.gu_pattern,
        FamilyKind::TorusNormalizer { class } => p.data == *class,
    }
}

/// Does the family contain the torus class?
pub fn contains(f: &SubgroupFamily, t: &TorusClass) -> bool {
    assert!(
        f.family == t.family,
        "containment query across families: {} vs {}",
        f.family,
        t.family
    );
    contains_profile(f, &class_profile(t))
}

/// True iff some maximal-rank family contains both classes. Reflexive: every
/// class shares its own normalizer with itself.
pub fn shares_overgroup(t1: &TorusClass, t2: &TorusClass) -> bool {
    assert!(t1.family == t2.family, "shares_overgroup across families");
    if t1.data == t2.data {
        return true;
    }
    let (p1, p2) = (class_profile(t1), class_profile(t2));
    non_normalizer_families(t1.family)
        .iter()
        .any(|f| contains_profile(f, &p1) && contains_profile(f, &p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_stats::{torus_classes, SignedPartition};

    fn fam(family: GroupFamily) -> Vec<String> {
        non_normalizer_families(family).iter().map(|f| f.tag()).collect()
    }

    fn cls(family: GroupFamily, label: &str) -> TorusClass {
        torus_classes(family)
            .into_iter()
            .find(|t| t.to_string() == label)
            .unwrap_or_else(|| panic!("no class {label} in {family}"))
    }

    fn sp(pairs: &[(u32, char)]) -> SignedPartition {
        SignedPartition::from_pairs(
            &pairs
                .iter()
                .map(|&(len, c)| (len, if c == '+' { Sign::Plus } else { Sign::Minus }))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn linear_a3_catalog() {
        assert_eq!(fam(GroupFamily::LinearA { n: 3 }), ["P(1)", "P(2)", "Imp(1,3)", "EF(3)"]);
        let full = subgroup_families(GroupFamily::LinearA { n: 3 });
        let norms: Vec<String> =
            full.iter().filter(|f| f.is_normalizer()).map(|f| f.tag()).collect();
        assert_eq!(norms, ["Norm(3)", "Norm(2,1)", "Norm(1,1,1)"]);
    }

    #[test]
    fn linear_a4_catalog() {
        assert_eq!(
            fam(GroupFamily::LinearA { n: 4 }),
            ["P(1)", "P(2)", "P(3)", "Imp(2,2)", "Imp(1,4)", "EF(2)"]
        );
    }

    #[test]
    fn odd_orthogonal_catalog_is_lean() {
        let fams = non_normalizer_families(GroupFamily::OrthogonalOddB { m: 3 });
        assert_eq!(fams.len(), 9); // P(1..3) and N(1..3, both signs)
        assert!(fams.iter().all(|f| matches!(
            f.kind,
            FamilyKind::TotSingStab { .. } | FamilyKind::NondegStabO { .. }
        )));
    }

    #[test]
    fn symplectic_catalog_q_parity() {
        let odd = fam(GroupFamily::SymplecticC { m: 3, q: QParity::Odd });
        assert!(odd.contains(&"GU".to_string()));
        assert!(!odd.iter().any(|t| t.starts_with("SO")));
        assert!(odd.contains(&"EF(3)".to_string()));
        assert!(!odd.contains(&"EF(2)".to_string())); // 2m/b odd for b=2, m=3

        let even = fam(GroupFamily::SymplecticC { m: 3, q: QParity::Even });
        assert!(even.contains(&"SO(+)".to_string()) && even.contains(&"SO(-)".to_string()));
        assert!(!even.contains(&"GU".to_string()));

        let m4 = fam(GroupFamily::SymplecticC { m: 4, q: QParity::Odd });
        assert!(m4.contains(&"EF(2)".to_string()));
        assert!(m4.contains(&"Imp(2,2)".to_string()) && m4.contains(&"Imp(1,4)".to_string()));
    }

    #[test]
    fn d_plus_catalog() {
        let tags = fam(GroupFamily::OrthogonalDPlus { m: 4 });
        let parabolics: Vec<&String> = tags.iter().filter(|t| t.starts_with("P(")).collect();
        assert_eq!(parabolics, ["P(1)", "P(2)", "P(4)"]); // no P(3)
        for t in ["N(1,+)", "N(1,-)", "N(2,+)", "N(2,-)", "GLpair", "EF(2)", "GU"] {
            assert!(tags.contains(&t.to_string()), "missing {t}");
        }
        let imps: Vec<&String> = tags.iter().filter(|t| t.starts_with("Imp")).collect();
        assert_eq!(imps, ["Imp(2,2,+)", "Imp(2,2,-)", "Imp(1,4,+)", "Imp(1,4,-)"]);

        // odd m: no GU, no even-t sign trick needed
        let tags5 = fam(GroupFamily::OrthogonalDPlus { m: 5 });
        assert!(!tags5.contains(&"GU".to_string()));
        assert!(!tags5.iter().any(|t| t.starts_with("Imp") && t.ends_with("-)")));
    }

    #[test]
    fn d_minus_catalog() {
        let tags = fam(GroupFamily::OrthogonalDMinus { m: 4 });
        assert_eq!(
            tags,
            ["P(1)", "P(2)", "P(3)", "N(1,+)", "N(1,-)", "N(2,+)", "EF(2)"]
        );
        // m = 9: imprimitive minus blocks with odd t survive
        let tags9 = fam(GroupFamily::OrthogonalDMinus { m: 9 });
        assert!(tags9.contains(&"Imp(3,3,-)".to_string()));
        assert!(tags9.contains(&"Imp(1,9,-)".to_string()));
        assert!(!tags9.iter().any(|t| t.starts_with("Imp") && t.contains("+)")));
        assert!(tags9.contains(&"GU".to_string())); // m odd
    }

    #[test]
    fn hyperplane_so_matches_sign_product() {
        for m in 2..=6 {
            let family = GroupFamily::SymplecticC { m, q: QParity::Even };
            let plus = SubgroupFamily { family, kind: FamilyKind::HyperplaneSO { sign: Sign::Plus } };
            let minus =
                SubgroupFamily { family, kind: FamilyKind::HyperplaneSO { sign: Sign::Minus } };
            for t in torus_classes(family) {
                let prod = match &t.data {
                    ClassData::Signed(sp) => sp.sign_product(),
                    _ => unreachable!(),
                };
                assert_eq!(contains(&plus, &t), prod == Sign::Plus);
                assert_eq!(contains(&minus, &t), prod == Sign::Minus);
            }
        }
    }

    #[test]
    fn contains_worked_examples() {
        // SO(-) holds the minus Coxeter class and not the plus one
        let family = GroupFamily::SymplecticC { m: 4, q: QParity::Even };
        let so_minus =
            SubgroupFamily { family, kind: FamilyKind::HyperplaneSO { sign: Sign::Minus } };
        assert!(contains(&so_minus, &cls(family, "4-")));
        assert!(!contains(&so_minus, &cls(family, "4+")));

        // GU in odd symplectic rank: odd parts must carry -
        let family = GroupFamily::SymplecticC { m: 5, q: QParity::Odd };
        let gu = SubgroupFamily { family, kind: FamilyKind::GUOverQ };
        assert!(contains(&gu, &cls(family, "5-")));
        assert!(!contains(&gu, &cls(family, "5+")));
        assert!(contains(&gu, &cls(family, "4+,1-")));

        // nondegenerate minus 4-space stabilizer in the plus orthogonal group
        let family = GroupFamily::OrthogonalDPlus { m: 6 };
        let n2m = SubgroupFamily {
            family,
            kind: FamilyKind::NondegStabO { a: 2, sign: Sign::Minus },
        };
        assert!(contains(&n2m, &cls(family, "4-,2-")));
        // {1-,1-} has sign product +, so it does not deliver a minus 4-space
        assert!(!contains(&n2m, &cls(family, "4+,1-,1-")));
        let n2p = SubgroupFamily {
            family,
            kind: FamilyKind::NondegStabO { a: 2, sign: Sign::Plus },
        };
        assert!(contains(&n2p, &cls(family, "4+,1-,1-")));
    }

    #[test]
    fn unitary_tot_sing_is_even_half_sums() {
        let family = GroupFamily::UnitaryTwistedA { n: 8 };
        let p4 = SubgroupFamily { family, kind: FamilyKind::TotSingStab { k: 4 } };
        let glpair = SubgroupFamily { family, kind: FamilyKind::TotSingPairGL };
        for t in torus_classes(family) {
            let all_even = match &t.data {
                ClassData::Linear(p) => p.parts().iter().all(|&x| x % 2 == 0),
                _ => unreachable!(),
            };
            // a subset of even parts sums to n iff it is everything
            assert_eq!(contains(&p4, &t), all_even);
            assert_eq!(contains(&glpair, &t), all_even);
        }
        let p2 = SubgroupFamily { family, kind: FamilyKind::TotSingStab { k: 2 } };
        assert!(contains(&p2, &cls(family, "4,3,1")));
        assert!(!contains(&p2, &cls(family, "3,3,2")));
    }

    #[test]
    fn imprimitive_block_types() {
        let family = GroupFamily::OrthogonalDPlus { m: 4 };
        let imp = |sign: Sign| SubgroupFamily {
            family,
            kind: FamilyKind::Imprimitive { ell: 2, t: 2, block_sign: Some(sign) },
        };
        assert!(contains(&imp(Sign::Minus), &cls(family, "2-,2-")));
        assert!(!contains(&imp(Sign::Plus), &cls(family, "2-,2-")));
        assert!(contains(&imp(Sign::Plus), &cls(family, "2+,1-,1-")));
        assert!(!contains(&imp(Sign::Minus), &cls(family, "2+,1-,1-")));
        assert!(contains(&imp(Sign::Minus), &cls(family, "2-,1+,1-")));
        // {1+,1-},{1+,1-} gives minus blocks; {1+,1+},{1-,1-} plus blocks
        assert!(contains(&imp(Sign::Minus), &cls(family, "1+,1+,1-,1-")));
        assert!(contains(&imp(Sign::Plus), &cls(family, "1+,1+,1-,1-")));
        assert!(!contains(&imp(Sign::Minus), &cls(family, "4+")));

        let family = GroupFamily::SymplecticC { m: 2, q: QParity::Even };
        let imp12 = SubgroupFamily {
            family,
            kind: FamilyKind::Imprimitive { ell: 1, t: 2, block_sign: None },
        };
        assert!(contains(&imp12, &cls(family, "1+,1-")));
        assert!(!contains(&imp12, &cls(family, "2+")));
    }

    #[test]
    fn nondeg_complement_consistency() {
        for (family, global) in [
            (GroupFamily::OrthogonalDPlus { m: 5 }, Sign::Plus),
            (GroupFamily::OrthogonalDPlus { m: 6 }, Sign::Plus),
            (GroupFamily::OrthogonalDMinus { m: 5 }, Sign::Minus),
            (GroupFamily::OrthogonalDMinus { m: 6 }, Sign::Minus),
        ] {
            let m = family.rank();
            for t in torus_classes(family) {
                for a in 1..m {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let f = SubgroupFamily { family, kind: FamilyKind::NondegStabO { a, sign } };
                        let c = SubgroupFamily {
                            family,
                            kind: FamilyKind::NondegStabO { a: m - a, sign: sign.times(global) },
                        };
                        assert_eq!(contains(&f, &t), contains(&c, &t), "{family} {t} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn shares_overgroup_examples() {
        let a2 = GroupFamily::LinearA { n: 2 };
        assert!(!shares_overgroup(&cls(a2, "2"), &cls(a2, "1,1")));
        assert!(shares_overgroup(&cls(a2, "2"), &cls(a2, "2")));

        let a3 = GroupFamily::LinearA { n: 3 };
        assert!(shares_overgroup(&cls(a3, "2,1"), &cls(a3, "1,1,1")));
        assert!(!shares_overgroup(&cls(a3, "3"), &cls(a3, "2,1")));
    }

    #[test]
    fn normalizer_contains_exactly_its_class() {
        let family = GroupFamily::SymplecticC { m: 3, q: QParity::Odd };
        let classes = torus_classes(family);
        for t in &classes {
            let norm = SubgroupFamily {
                family,
                kind: FamilyKind::TorusNormalizer { class: t.data.clone() },
            };
            for u in &classes {
                assert_eq!(contains(&norm, u), t.data == u.data);
            }
        }
    }

    #[test]
    fn d_minus_self_complementary_family_is_sign_free() {
        // for an ambient minus type, a sub-multiset of half rank with + product
        // exists iff one with - product exists (the complement)
        let family = GroupFamily::OrthogonalDMinus { m: 6 };
        for t in torus_classes(family) {
            let p = class_profile(&t);
            assert_eq!(bit(p.plus_mask, 3), bit(p.minus_mask, 3), "{t}");
        }
    }

    #[test]
    fn imprimitive_many_small_parts_is_fast() {
        // (1+^20) into ten blocks of two: first-fit must not blow up
        let family = GroupFamily::SymplecticC { m: 20, q: QParity::Odd };
        let parts: Vec<(u32, Sign)> = (0..20).map(|_| (1, Sign::Plus)).collect();
        let t = TorusClass {
            family,
            data: ClassData::Signed(sp(&parts.iter().map(|&(l, _)| (l, '+')).collect::<Vec<_>>())),
            split: false,
            probability: crate::weyl_stats::Rational::new(1, 1),
        };
        let f = SubgroupFamily {
            family,
            kind: FamilyKind::Imprimitive { ell: 2, t: 10, block_sign: None },
        };
        assert!(contains(&f, &t));
        let f5 = SubgroupFamily {
            family,
            kind: FamilyKind::Imprimitive { ell: 4, t: 5, block_sign: None },
        };
        assert!(contains(&f5, &t));
    }

    /// Assign each part to one of t bins outright; no pruning beyond bin
    /// capacity. Exponential, usable as an oracle at tiny ranks.
    fn imprimitive_oracle(
        parts: &[(u32, Sign)],
        ell: u32,
        t: u32,
        block_sign: Option<Sign>,
    ) -> bool {
        fn go(
            parts: &[(u32, Sign)],
            idx: usize,
            bins: &mut Vec<(u32, Sign)>,
            block_sign: Option<Sign>,
        ) -> bool {
            if idx == parts.len() {
                return bins.iter().all(|&(rem, prod)| {
                    rem == 0 && block_sign.is_none_or(|want| prod == want)
                });
            }
            let (len, sign) = parts[idx];
            for i in 0..bins.len() {
                let (rem, prod) = bins[i];
                if rem < len {
                    continue;
                }
                bins[i] = (rem - len, prod.times(sign));
                if go(parts, idx + 1, bins, block_sign) {
                    bins[i] = (rem, prod);
                    return true;
                }
                bins[i] = (rem, prod);
            }
            false
        }
        let total: u32 = parts.iter().map(|&(len, _)| len).sum();
        if total != ell * t {
            return false;
        }
        let mut bins = vec![(ell, Sign::Plus); t as usize];
        go(parts, 0, &mut bins, block_sign)
    }

    #[test]
    fn imprimitive_search_matches_exhaustive_assignment() {
        for m in [4u32, 6, 8] {
            for sp in crate::weyl_stats::signed_partitions(m) {
                let parts: Vec<(u32, Sign)> =
                    sp.parts().iter().map(|p| (p.len, p.sign)).collect();
                for t in (2..=m).filter(|t| m % t == 0) {
                    let ell = m / t;
                    for block_sign in [None, Some(Sign::Plus), Some(Sign::Minus)] {
                        assert_eq!(
                            imprimitive_fits(&parts, ell, t, block_sign),
                            imprimitive_oracle(&parts, ell, t, block_sign),
                            "{sp} into {t} bins of {ell}, sign {block_sign:?}",
                        );
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "containment query across families")]
    fn contains_rejects_family_mismatch() {
        let a2 = GroupFamily::LinearA { n: 2 };
        let a3 = GroupFamily::LinearA { n: 3 };
        let f = SubgroupFamily { family: a3, kind: FamilyKind::ParabolicStab { k: 1 } };
        contains(&f, &cls(a2, "2"));
    }
}
