//! The G2 root system and the incidence between its maximal-torus classes
//! and maximal-rank subgroup classes, derived from the root geometry rather
//! than transcribed.
//!
//! Roots live in the plane with exact coordinates: a vector is stored as
//! (x, y) representing x*e1 + y*sqrt(3)*e2, so inner products are the exact
//! integers x1*x2 + 3*y1*y2 and every Weyl image of a root stays integral.
//! The Weyl group (dihedral of order 12) is generated as permutations of the
//! 12 roots; subsystem subgroups, their normalizer quotients, and the
//! fixed-point-class structure all come out of that action.
//!
//! Key derived facts used downstream:
//! - a torus class lies in a parabolic of a given type iff its Weyl class
//!   meets the rank-1 reflection subgroup of the corresponding Levi;
//! - for a w-stable subsystem S, the class of the fixed-point overgroup is
//!   the image of w in N_W(W(S))/W(S); for the A2 subsystems that quotient
//!   has order 2 and the trivial image picks the split (SL3-type) form, the
//!   nontrivial one the twisted (SU3-type) form;
//! - the order of the torus T_w is the characteristic polynomial of w on the
//!   root lattice evaluated at q.

use std::collections::BTreeSet;

use crate::weyl_stats::{Rational, G2_CLASS_SIZES, G2_WEYL_ORDER};

/// Exact root-plane vector: (x, y) stands for x*e1 + y*sqrt(3)*e2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RootVec {
    pub x: i64,
    pub y: i64,
}

impl RootVec {
    fn dot(self, other: RootVec) -> i64 {
        self.x * other.x + 3 * self.y * other.y
    }

    fn add(self, other: RootVec) -> RootVec {
        RootVec { x: self.x + other.x, y: self.y + other.y }
    }

    fn neg(self) -> RootVec {
        RootVec { x: -self.x, y: -self.y }
    }

    fn norm2(self) -> i64 {
        self.dot(self)
    }

    /// Reflection of `v` in the hyperplane orthogonal to `self`.
    fn reflect(self, v: RootVec) -> RootVec {
        let twice = 2 * self.dot(v);
        let nn = self.norm2();
        assert!(twice % nn == 0, "non-integral reflection coefficient");
        let k = twice / nn;
        RootVec { x: v.x - k * self.x, y: v.y - k * self.y }
    }
}

/// The 12 roots: 6 short of squared length 4, 6 long of squared length 12.
const ROOTS: [RootVec; 12] = [
    RootVec { x: 2, y: 0 },
    RootVec { x: -2, y: 0 },
    RootVec { x: 1, y: 1 },
    RootVec { x: -1, y: -1 },
    RootVec { x: -1, y: 1 },
    RootVec { x: 1, y: -1 },
    RootVec { x: 0, y: 2 },
    RootVec { x: 0, y: -2 },
    RootVec { x: 3, y: 1 },
    RootVec { x: -3, y: -1 },
    RootVec { x: -3, y: 1 },
    RootVec { x: 3, y: -1 },
];

const SHORT_NORM: i64 = 4;
const LONG_NORM: i64 = 12;

// base: short simple root (2,0), long simple root (-3,1), at 150 degrees
const SIMPLE_SHORT: usize = 0;
const SIMPLE_LONG: usize = 10;

fn root_index(v: RootVec) -> Option<usize> {
    ROOTS.iter().position(|&r| r == v)
}

fn is_short(i: usize) -> bool {
    let n = ROOTS[i].norm2();
    debug_assert!(n == SHORT_NORM || n == LONG_NORM);
    n == SHORT_NORM
}

/// A Weyl element as a permutation of root indices.
pub type Perm = [u8; 12];

fn perm_of_map(f: impl Fn(RootVec) -> RootVec) -> Perm {
    let mut p = [0u8; 12];
    for (i, &r) in ROOTS.iter().enumerate() {
        p[i] = root_index(f(r)).expect("image of a root must be a root") as u8;
    }
    p
}

/// Apply b, then a.
fn compose(a: &Perm, b: &Perm) -> Perm {
    let mut c = [0u8; 12];
    for i in 0..12 {
        c[i] = a[b[i] as usize];
    }
    c
}

fn perm_order(p: &Perm) -> u32 {
    let mut cur = *p;
    let id = perm_of_map(|v| v);
    let mut k = 1;
    while cur != id {
        cur = compose(p, &cur);
        k += 1;
        assert!(k <= 12);
    }
    k
}

/// The matrix of w in the simple-root basis; exact integers.
fn matrix_in_simple_basis(p: &Perm) -> [[i64; 2]; 2] {
    // coordinates of v in the (alpha, beta) basis, alpha = (2,0), beta = (-3,1)
    fn coords(v: RootVec) -> (i64, i64) {
        let q = v.y;
        let num = v.x + 3 * q;
        assert!(num % 2 == 0, "vector outside the root lattice");
        (num / 2, q)
    }
    let (a, c) = coords(ROOTS[p[SIMPLE_SHORT] as usize]);
    let (b, d) = coords(ROOTS[p[SIMPLE_LONG] as usize]);
    [[a, b], [c, d]]
}

/// |T_w| as a polynomial in q: det(q*I - w) on the root lattice.
fn torus_order_poly(p: &Perm) -> (i64, i64) {
    let m = matrix_in_simple_basis(p);
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    (tr, det)
}

fn torus_order_string(tr: i64, det: i64) -> String {
    match (tr, det) {
        (0, -1) => "q^2-1".to_string(),
        (2, 1) => "(q-1)^2".to_string(),
        (-2, 1) => "(q+1)^2".to_string(),
        (1, 1) => "q^2-q+1".to_string(),
        (-1, 1) => "q^2+q+1".to_string(),
        _ => {
            let mut s = "q^2".to_string();
            if tr != 0 {
                s.push_str(&format!("{:+}q", -tr));
            }
            s.push_str(&format!("{:+}", det));
            s
        }
    }
}

/// A conjugacy class of W(G2), in the fixed order: short reflection, long
/// reflection, identity, -1, rotation of order 3, rotation of order 6.
#[derive(Clone, Debug)]
pub struct G2Class {
    /// 1-based index, matching `weyl_stats::ClassData::G2`.
    pub index: u8,
    pub label: &'static str,
    pub size: u32,
    pub element_order: u32,
    /// |T_w| as a polynomial in q.
    pub torus_order: String,
    pub probability: Rational,
    rep: Perm,
}

/// Kinds of proper nonempty subsystems of G2 (up to the graph symmetry there
/// are five; the A2 of short roots only counts as p-closed when 3 | q).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubsystemKind {
    A1Long,
    A1Short,
    A1xA1,
    A2Long,
    A2Short,
}

impl SubsystemKind {
    pub fn label(self) -> &'static str {
        match self {
            SubsystemKind::A1Long => "A1-long",
            SubsystemKind::A1Short => "A1~-short",
            SubsystemKind::A1xA1 => "A1xA1~",
            SubsystemKind::A2Long => "A2-long",
            SubsystemKind::A2Short => "A2-short",
        }
    }
}

/// A closed (or, for 3 | q, p-closed) proper nonempty subsystem.
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub kind: SubsystemKind,
    /// Sorted indices into the root list.
    pub roots: Vec<usize>,
}

struct G2 {
    identity: Perm,
    classes: Vec<G2Class>,
}

fn build_group() -> G2 {
    let identity = perm_of_map(|v| v);
    let gens = [
        perm_of_map(|v| ROOTS[SIMPLE_SHORT].reflect(v)),
        perm_of_map(|v| ROOTS[SIMPLE_LONG].reflect(v)),
    ];
    let mut elements = vec![identity];
    let mut frontier = vec![identity];
    while let Some(w) = frontier.pop() {
        for g in &gens {
            let next = compose(g, &w);
            if !elements.contains(&next) {
                elements.push(next);
                frontier.push(next);
            }
        }
    }
    assert_eq!(elements.len(), G2_WEYL_ORDER as usize, "W(G2) must have order 12");

    let classes = conjugacy_partition(&elements);
    G2 { identity, classes }
}

fn conjugacy_partition(elements: &[Perm]) -> Vec<G2Class> {
    let inverse = |p: &Perm| -> Perm {
        let mut inv = [0u8; 12];
        for i in 0..12 {
            inv[p[i] as usize] = i as u8;
        }
        inv
    };
    let mut remaining: BTreeSet<Perm> = elements.iter().copied().collect();
    let mut raw: Vec<Vec<Perm>> = Vec::new();
    while let Some(&w) = remaining.iter().next() {
        let mut orbit = BTreeSet::new();
        for g in elements {
            orbit.insert(compose(&compose(g, &w), &inverse(g)));
        }
        for x in &orbit {
            remaining.remove(x);
        }
        raw.push(orbit.into_iter().collect());
    }
    assert_eq!(raw.len(), 6, "W(G2) must have 6 conjugacy classes");

    let minus_one = perm_of_map(|v| v.neg());
    let negated_roots = |p: &Perm| -> Vec<usize> {
        (0..12).filter(|&i| ROOTS[p[i] as usize] == ROOTS[i].neg()).collect()
    };

    // slot the raw classes into the fixed order
    let mut slots: [Option<(Vec<Perm>, &'static str, u32)>; 6] = Default::default();
    for class in raw {
        let rep = class[0];
        let order = perm_order(&rep);
        let neg = negated_roots(&rep);
        let (slot, label) = if rep == perm_of_map(|v| v) {
            (2, "identity")
        } else if rep == minus_one {
            (3, "minus one")
        } else if order == 2 && neg.len() == 2 {
            if is_short(neg[0]) {
                (0, "short reflection")
            } else {
                (1, "long reflection")
            }
        } else if order == 3 {
            (4, "rotation of order 3")
        } else {
            assert_eq!(order, 6);
            (5, "rotation of order 6")
        };
        assert!(slots[slot].is_none());
        slots[slot] = Some((class, label, order));
    }

    slots
        .into_iter()
        .enumerate()
        .map(|(i, slot)| {
            let (class, label, order) = slot.expect("all six class slots filled");
            assert_eq!(class.len() as u32, G2_CLASS_SIZES[i], "class size at slot {i}");
            let rep = class[0];
            let (tr, det) = torus_order_poly(&rep);
            G2Class {
                index: i as u8 + 1,
                label,
                size: class.len() as u32,
                element_order: order,
                torus_order: torus_order_string(tr, det),
                probability: Rational::new(class.len() as i64, G2_WEYL_ORDER as i64),
                rep,
            }
        })
        .collect()
}

/// The six torus classes of G2(q) in the fixed order, with class sizes,
/// element orders, torus orders and probabilities.
pub fn conjugacy_classes_g2() -> Vec<G2Class> {
    build_group().classes
}

/// All proper nonempty subsystems closed in characteristic p: the closed
/// ones, plus the short-root A2 when 3 | q (in characteristic 3 the
/// commutators binding two short root subgroups to a long root subgroup
/// vanish, so escaping short+short sums do not obstruct closure).
fn enumerate_subsystems(p3: bool) -> Vec<Subsystem> {
    // the 6 antipodal pairs
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = [false; 12];
    for i in 0..12 {
        if seen[i] {
            continue;
        }
        let j = root_index(ROOTS[i].neg()).unwrap();
        seen[i] = true;
        seen[j] = true;
        pairs.push((i, j));
    }
    assert_eq!(pairs.len(), 6);

    let mut out = Vec::new();
    for mask in 1u32..(1 << 6) - 1 {
        let set: BTreeSet<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(pi, _)| (mask >> pi) & 1 == 1)
            .flat_map(|(_, &(i, j))| [i, j])
            .collect();
        let ok = set.iter().all(|&i| {
            set.iter().all(|&j| match root_index(ROOTS[i].add(ROOTS[j])) {
                Some(k) if !set.contains(&k) => {
                    p3 && is_short(i) && is_short(j) && !is_short(k)
                }
                _ => true,
            })
        });
        if !ok {
            continue;
        }
        // a subsystem is a root system in its own right: stable under its
        // own reflections (automatic for closed sets, cuts the escape rule
        // down to the all-short A2)
        let reflective = set.iter().all(|&i| {
            set.iter().all(|&j| {
                root_index(ROOTS[i].reflect(ROOTS[j])).is_some_and(|k| set.contains(&k))
            })
        });
        if !reflective {
            continue;
        }
        let shorts = set.iter().filter(|&&i| is_short(i)).count();
        let kind = match (set.len(), shorts) {
            (2, 0) => SubsystemKind::A1Long,
            (2, 2) => SubsystemKind::A1Short,
            (4, 2) => SubsystemKind::A1xA1,
            (6, 0) => SubsystemKind::A2Long,
            (6, 6) => SubsystemKind::A2Short,
            other => panic!("unexpected subsystem shape {other:?}"),
        };
        if kind == SubsystemKind::A1xA1 {
            // the two pairs must be orthogonal, one long and one short
            let v: Vec<usize> = set.iter().copied().collect();
            assert!(v.iter().any(|&i| is_short(i)) && v.iter().any(|&i| !is_short(i)));
        }
        out.push(Subsystem { kind, roots: set.into_iter().collect() });
    }
    out
}

fn apply_to_set(p: &Perm, roots: &[usize]) -> BTreeSet<usize> {
    roots.iter().map(|&i| p[i] as usize).collect()
}

fn is_stable(p: &Perm, s: &Subsystem) -> bool {
    apply_to_set(p, &s.roots) == s.roots.iter().copied().collect()
}

/// Subgroup of W generated by the reflections in the subsystem's roots.
fn reflection_subgroup(g2: &G2, s: &Subsystem) -> BTreeSet<Perm> {
    let gens: Vec<Perm> = s.roots.iter().map(|&i| perm_of_map(|v| ROOTS[i].reflect(v))).collect();
    let mut sub: BTreeSet<Perm> = BTreeSet::new();
    sub.insert(g2.identity);
    let mut frontier = vec![g2.identity];
    while let Some(w) = frontier.pop() {
        for g in &gens {
            let next = compose(g, &w);
            if sub.insert(next) {
                frontier.push(next);
            }
        }
    }
    sub
}

/// Subsystems (closed, or p-closed when `p3`) stable under the given torus
/// class, by 1-based class index.
pub fn stable_subsystems(class_index: u8, p3: bool) -> Vec<Subsystem> {
    let g2 = build_group();
    let rep = class_rep(&g2, class_index);
    enumerate_subsystems(p3).into_iter().filter(|s| is_stable(&rep, s)).collect()
}

fn class_rep(g2: &G2, class_index: u8) -> Perm {
    assert!((1..=6).contains(&class_index), "G2 class index must be 1..=6");
    g2.classes[class_index as usize - 1].rep
}

/// The X_sigma-class of the fixed-point overgroup attached to a w-stable
/// subsystem: the image of w in N_W(W(S))/W(S). For the A2 subsystems that
/// quotient has order 2; trivial image = split (SL3-type) fixed points,
/// nontrivial = twisted (SU3-type).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SubgroupClass {
    pub trivial: bool,
    pub label: &'static str,
}

pub fn subgroup_class_of(class_index: u8, subsystem: &Subsystem, p3: bool) -> SubgroupClass {
    let g2 = build_group();
    let rep = class_rep(&g2, class_index);
    assert!(
        is_stable(&rep, subsystem),
        "subgroup_class_of: subsystem not stable under class {class_index}"
    );
    let _ = p3; // the quotient computation does not depend on the parity flag
    let sub = reflection_subgroup(&g2, subsystem);
    let trivial = sub.contains(&rep);
    let label = match (subsystem.kind, trivial) {
        (SubsystemKind::A2Long | SubsystemKind::A2Short, true) => "SL3-type",
        (SubsystemKind::A2Long | SubsystemKind::A2Short, false) => "SU3-type",
        (_, true) => "trivial",
        (_, false) => "nontrivial",
    };
    SubgroupClass { trivial, label }
}

/// One incidence column: a class of maximal-rank overgroups and the torus
/// classes meeting it.
#[derive(Clone, Debug)]
pub struct G2Column {
    pub label: String,
    pub contains: [bool; 6],
}

/// The full derived incidence between the six torus classes and the
/// maximal-rank subgroup classes of G2(q).
#[derive(Clone, Debug)]
pub struct G2Incidence {
    pub p3: bool,
    pub classes: Vec<G2Class>,
    pub columns: Vec<G2Column>,
    /// Cross-check of the A1xA1~ column (the involution-centralizer class)
    /// against the independent rule "torus of even order" (q odd): any
    /// disagreement is surfaced here, never silently resolved.
    pub c_column_consistent: bool,
}

impl G2Incidence {
    pub fn column(&self, label: &str) -> Option<&G2Column> {
        self.columns.iter().find(|c| c.label == label)
    }

    /// True when some column contains both classes (1-based indices).
    pub fn share_column(&self, i: u8, j: u8) -> bool {
        self.columns
            .iter()
            .any(|c| c.contains[i as usize - 1] && c.contains[j as usize - 1])
    }
}

pub fn g2_incidence(p3: bool) -> G2Incidence {
    let g2 = build_group();
    let reps: Vec<Perm> = g2.classes.iter().map(|c| c.rep).collect();
    let mut columns = Vec::new();

    // Parabolic columns, one per node: T_w lies in a parabolic of the given
    // type iff w is conjugate into the rank-1 reflection subgroup of its
    // Levi, i.e. w = 1 or w is a reflection of that length.
    for (label, want_short) in [("P(s)", true), ("P(l)", false)] {
        let mut contains = [false; 6];
        for (i, rep) in reps.iter().enumerate() {
            let cls = &g2.classes[i];
            contains[i] = *rep == g2.identity
                || (cls.element_order == 2
                    && (0..12).any(|r| {
                        ROOTS[rep[r] as usize] == ROOTS[r].neg() && is_short(r) == want_short
                    })
                    && cls.size == 3);
        }
        columns.push(G2Column { label: label.to_string(), contains });
    }

    // A2 fixed-point classes: each A2 subsystem is stable under all of W, and
    // contributes a split and a twisted class of overgroups.
    let subsystems = enumerate_subsystems(p3);
    for s in &subsystems {
        let tag = match s.kind {
            SubsystemKind::A2Long => "A2l",
            SubsystemKind::A2Short => "A2s",
            _ => continue,
        };
        let sub = reflection_subgroup(&g2, s);
        for (form, want_trivial) in [("SL3", true), ("SU3", false)] {
            let mut contains = [false; 6];
            for (i, rep) in reps.iter().enumerate() {
                assert!(is_stable(rep, s), "A2 subsystems are W-stable");
                contains[i] = sub.contains(rep) == want_trivial;
            }
            columns.push(G2Column { label: format!("{tag}:{form}"), contains });
        }
    }

    // A1xA1~ subsystem subgroups (the involution-centralizer class): the
    // normalizer quotient is trivial, so there is a single class; T_w meets
    // it iff some copy is w-stable.
    let mut c_contains = [false; 6];
    for (i, rep) in reps.iter().enumerate() {
        c_contains[i] = subsystems
            .iter()
            .filter(|s| s.kind == SubsystemKind::A1xA1)
            .any(|s| is_stable(rep, s));
    }
    columns.push(G2Column { label: "C".to_string(), contains: c_contains });

    // torus normalizers
    for i in 0..6 {
        let mut contains = [false; 6];
        contains[i] = true;
        columns.push(G2Column { label: format!("N(T{})", i + 1), contains });
    }

    // independent check of the C column: at odd q, |T_w| is even iff
    // det(q*I - w) = 1 - tr + det (mod 2) vanishes
    let c_column_consistent = (0..6).all(|i| {
        let (tr, det) = torus_order_poly(&reps[i]);
        let even_order = (1 - tr + det) % 2 == 0;
        c_contains[i] == even_order
    });

    G2Incidence { p3, classes: g2.classes, columns, c_column_consistent }
}
