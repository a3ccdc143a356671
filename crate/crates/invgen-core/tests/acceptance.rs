//! End-to-end gates for the exact leading-term machinery and the
//! finite-field cross-validation. One test per gate; each prints a PASS
//! line with its measured numbers and enforces its runtime budget.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use invgen_core::ffmc::{self, MatrixGroup, SampleReport};
use invgen_core::invgen::{
    ab_set, alpha_scan, leading_term_two_random, pinv_leading, relation_sim, residual_of_classes,
    sharpness_triples, verify_ab,
};
use invgen_core::rootsys_g2::g2_incidence;
use invgen_core::weyl_stats::{
    min_class_probability, prob_positive_fixed_part, prob_sign_product, torus_classes, ClassData,
    GroupFamily, Partition, QParity, Rational, Sign, SignedPartition,
};

fn g2(p3: bool) -> GroupFamily {
    GroupFamily::ExceptionalG2 { p3 }
}

fn sym(m: u32, q: QParity) -> GroupFamily {
    GroupFamily::SymplecticC { m, q }
}

/// Every classical family at every admissible rank up to `max`.
fn classical_sweep(max: u32) -> Vec<GroupFamily> {
    let mut out = Vec::new();
    for n in 2..=max {
        out.push(GroupFamily::LinearA { n });
    }
    for n in 3..=max {
        out.push(GroupFamily::UnitaryTwistedA { n });
    }
    for m in 2..=max {
        out.push(sym(m, QParity::Odd));
        out.push(sym(m, QParity::Even));
    }
    for m in 3..=max {
        out.push(GroupFamily::OrthogonalOddB { m });
    }
    for m in 4..=max {
        out.push(GroupFamily::OrthogonalDPlus { m });
        out.push(GroupFamily::OrthogonalDMinus { m });
    }
    out
}

#[test]
fn gate_01_g2_leading_term() {
    let start = Instant::now();
    assert_eq!(leading_term_two_random(g2(true)), Rational::new(1, 9));
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "budget exceeded: {elapsed:?}");
    println!("PASS g2 leading term = 1/9 in {} ms", elapsed.as_millis());
}

#[test]
fn gate_02_sl2_leading_term() {
    let start = Instant::now();
    assert_eq!(
        leading_term_two_random(GroupFamily::LinearA { n: 2 }),
        Rational::new(1, 2)
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "budget exceeded: {elapsed:?}");
    println!("PASS sl2 leading term = 1/2 in {} ms", elapsed.as_millis());
}

#[test]
fn gate_03_distinguished_rows_to_rank_30() {
    let start = Instant::now();
    let sweep = classical_sweep(30);
    let mut subsets = 0usize;
    for family in &sweep {
        let report = verify_ab(*family);
        assert!(
            report.empty,
            "{family}: residual {:?} should be empty",
            report.residual
        );
        // rows of three or more elements: every proper subset leaves a
        // nonempty residual, so no element is redundant
        if report.labels.len() >= 3 {
            for (key, sub) in &report.pairwise_residuals {
                assert!(sub.count > 0, "{family}: proper subset {{{key}}} already empty");
                subsets += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "budget exceeded: {elapsed:?}");
    println!(
        "PASS {} family/rank rows empty, {} proper subsets all nonempty, in {} ms",
        sweep.len(),
        subsets,
        elapsed.as_millis()
    );
}

#[test]
fn gate_04_g2_fine_structure() {
    let family = g2(true);
    let classes = torus_classes(family);

    let small_pinv = classes
        .iter()
        .filter(|t| matches!(t.data, ClassData::G2(i) if i >= 3))
        .map(pinv_leading)
        .min()
        .expect("classes 3-6 exist");
    assert_eq!(small_pinv, Rational::new(1, 6));

    let reflection_mass: Rational = classes
        .iter()
        .filter(|t| matches!(t.data, ClassData::G2(i) if i <= 2))
        .map(|t| t.probability.clone())
        .sum();
    assert_eq!(reflection_mass, Rational::new(1, 2));

    // every class meets both reflection classes inside some subsystem
    let inc = g2_incidence(true);
    for j in 1..=6u8 {
        assert!(inc.share_column(1, j), "class T{j} misses class T1");
        assert!(inc.share_column(2, j), "class T{j} misses class T2");
    }
    println!("PASS g2 fine structure: min pinv(T3..T6) = 1/6, P(T1)+P(T2) = 1/2, star check");
}

/// Signed permutations of 0..m as (one-line permutation, sign bitmask),
/// reduced to the signed cycle type. Small-rank ground truth for gate 05.
fn signed_cycle_census(m: usize) -> BTreeMap<SignedPartition, u64> {
    fn perms(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(m - 1) {
            for slot in 0..m {
                let mut next = p.clone();
                next.insert(slot, m - 1);
                out.push(next);
            }
        }
        out
    }
    let mut counts: BTreeMap<SignedPartition, u64> = BTreeMap::new();
    for p in perms(m) {
        for signs in 0u32..1 << m {
            let mut seen = vec![false; m];
            let mut pairs = Vec::new();
            for start in 0..m {
                if seen[start] {
                    continue;
                }
                let mut len = 0u32;
                let mut sign = Sign::Plus;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    len += 1;
                    if signs >> i & 1 == 1 {
                        sign = sign.times(Sign::Minus);
                    }
                    i = p[i];
                }
                pairs.push((len, sign));
            }
            *counts.entry(SignedPartition::from_pairs(&pairs)).or_insert(0) += 1;
        }
    }
    counts
}

#[test]
fn gate_05_alpha_bound_with_exhaustive_oracle() {
    let rows = alpha_scan(30);
    assert!(rows.iter().all(|r| r.ok), "a distinguished class fell under 1/(4m)");
    let equalities: Vec<_> = rows.iter().filter(|r| r.equality).collect();
    assert_eq!(equalities.len(), 1, "the bound must be tight exactly once");
    assert_eq!(equalities[0].family, "D+(4)");
    assert_eq!(equalities[0].class, "2-,2-");
    assert_eq!(equalities[0].probability, Rational::new(1, 16));

    let (witness, minimum) = min_class_probability(GroupFamily::OrthogonalDPlus { m: 4 });
    assert_eq!(witness.to_string(), "2-,2-");
    assert_eq!(minimum, Rational::new(1, 16));

    // ground truth at small rank: enumerate all signed permutations and
    // compare every catalog probability against the census
    for m in 2u32..=4 {
        let counts = signed_cycle_census(m as usize);
        let order: u64 = (1..=m as u64).product::<u64>() << m;
        assert_eq!(counts.values().sum::<u64>(), order);
        let minus: u64 = counts
            .iter()
            .filter(|(sp, _)| sp.sign_product() == Sign::Minus)
            .map(|(_, c)| c)
            .sum();
        assert_eq!(minus * 2, order, "sign-product coset must split evenly");

        let mut families = vec![sym(m, QParity::Odd), sym(m, QParity::Even)];
        if m >= 3 {
            families.push(GroupFamily::OrthogonalOddB { m });
        }
        if m >= 4 {
            families.push(GroupFamily::OrthogonalDPlus { m });
            families.push(GroupFamily::OrthogonalDMinus { m });
        }
        for family in families {
            let index_two = !matches!(
                family,
                GroupFamily::SymplecticC { .. } | GroupFamily::OrthogonalOddB { .. }
            );
            let denom = if index_two { order / 2 } else { order };
            for t in torus_classes(family) {
                let ClassData::Signed(sp) = &t.data else { panic!("signed class expected") };
                assert_eq!(
                    t.probability,
                    Rational::new(counts[sp] as i64, denom as i64),
                    "{family}: class {t} disagrees with the census"
                );
            }
        }
    }
    println!("PASS alpha bound to rank 30; equality only at 2-,2- in D+(4); census agrees to rank 4");
}

#[test]
fn gate_06_sign_statistics() {
    for m in 1..=30 {
        assert_eq!(prob_sign_product(m, Sign::Plus), Rational::new(1, 2));
        assert_eq!(prob_sign_product(m, Sign::Minus), Rational::new(1, 2));
    }
    let floor = (1.0 - (-1.0f64).exp()) / 2.0;
    for m in 2..=60 {
        assert!(
            prob_positive_fixed_part(m).to_f64() >= floor,
            "positive fixed part probability fell under (1-1/e)/2 at m = {m}"
        );
    }
    let limit = 1.0 - (-0.5f64).exp();
    let at60 = prob_positive_fixed_part(60).to_f64();
    assert!((at60 - limit).abs() < 0.01, "value at m = 60 strays from 1 - exp(-1/2): {at60}");
    println!("PASS sign product = 1/2 to m = 30; fixed-part bound holds, value(60) = {at60:.6}");
}

#[test]
fn gate_07_sharpness_triples() {
    let start = Instant::now();
    for m in 2u32..=4 {
        let report = sharpness_triples(m);
        let classes = torus_classes(sym(m, QParity::Even));
        let n = classes.len();
        assert_eq!(report.triples, n * (n - 1) * (n - 2) / 6);
        assert!(report.all_triples_blocked, "m = {m}: a triple had empty residual");
        assert!(report.proof_witnesses_valid, "m = {m}: a designated witness failed");

        // the residual mass of any triple stays at or above one Weyl atom
        let atom = Rational::new(1, ((1..=m as i64).product::<i64>()) << m);
        let mut min_mass: Option<Rational> = None;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let triple =
                        [classes[a].clone(), classes[b].clone(), classes[c].clone()];
                    let residual = residual_of_classes(sym(m, QParity::Even), &triple);
                    assert!(!residual.is_empty());
                    let mass: Rational =
                        residual.iter().map(|t| t.probability.clone()).sum();
                    assert!(mass >= atom, "m = {m}: triple mass {mass} under {atom}");
                    if min_mass.as_ref().is_none_or(|cur| &mass < cur) {
                        min_mass = Some(mass);
                    }
                }
            }
        }
        println!("  m = {m}: {} triples, min residual mass {}", report.triples, min_mass.unwrap());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "budget exceeded: {elapsed:?}");
    println!("PASS sharpness triples m = 2, 3, 4 in {} ms", elapsed.as_millis());
}

#[test]
fn gate_08_normalization_and_relation_shape() {
    let start = Instant::now();
    let mut families = classical_sweep(30);
    families.push(g2(true));
    families.push(g2(false));
    let count = families.len();
    for family in families {
        // exact sum, grouped by denominator so the big ranks stay cheap
        let mut by_den: BTreeMap<num::BigInt, num::BigInt> = BTreeMap::new();
        for t in torus_classes(family) {
            *by_den.entry(t.probability.denom().clone()).or_default() += t.probability.numer();
        }
        let total: Rational =
            by_den.into_iter().map(|(den, num)| Rational::from_big(num, den)).sum();
        assert_eq!(total, Rational::from_int(1), "{family}: probabilities must sum to 1");
    }

    // relation shape and residual monotonicity, spot-checked here; the
    // property suite drives them across random families
    for family in [GroupFamily::LinearA { n: 6 }, sym(5, QParity::Even), g2(false)] {
        let pairs = relation_sim(family);
        let mut seen = std::collections::HashSet::new();
        for (a, b) in &pairs {
            assert!(a.data != b.data, "{family}: reflexive pair");
            assert!(seen.insert((a.to_string(), b.to_string())));
            assert!(seen.insert((b.to_string(), a.to_string())));
        }
    }
    let family = sym(5, QParity::Odd);
    let row = ab_set(family);
    let mut chain: Vec<Vec<String>> = Vec::new();
    for k in 1..=row.elements.len() {
        let members: Vec<_> = row.elements[..k].iter().map(|x| x.torus.clone()).collect();
        let names: Vec<String> =
            residual_of_classes(family, &members).iter().map(|t| t.to_string()).collect();
        if let Some(prev) = chain.last() {
            assert!(names.iter().all(|t| prev.contains(t)), "residual grew");
        }
        chain.push(names);
    }
    let elapsed = start.elapsed();
    println!(
        "PASS normalization over {} families, relation irreflexive and unordered, residual monotone, in {} ms",
        count,
        elapsed.as_millis()
    );
}

/// Per-partition agreement of a sampled report against exhaustive ground
/// truth, within four binomial standard errors.
fn assert_within_4_sigma(mc: &SampleReport, exact: &SampleReport) {
    let order = exact.samples as f64;
    let draws = mc.samples as f64;
    let mut keys: Vec<&Partition> = mc.partition_counts.keys().collect();
    keys.extend(exact.partition_counts.keys());
    keys.sort();
    keys.dedup();
    for key in keys {
        let p = exact.partition_counts.get(key).copied().unwrap_or(0) as f64 / order;
        let freq = mc.partition_counts.get(key).copied().unwrap_or(0) as f64 / draws;
        let sigma = (p * (1.0 - p) / draws).sqrt();
        assert!(
            (freq - p).abs() <= 4.0 * sigma,
            "partition {key}: sampled {freq} vs exact {p} (sigma {sigma})"
        );
    }
    let p = exact.regular_semisimple as f64 / order;
    let freq = mc.regular_semisimple as f64 / draws;
    let sigma = (p * (1.0 - p) / draws).sqrt();
    assert!((freq - p).abs() <= 4.0 * sigma, "regular semisimple total off: {freq} vs {p}");
}

#[test]
fn gate_09_exhaustive_groups_and_sampler_agreement() {
    // frozen ground truth, originally computed by the brute-force
    // enumeration oracle in the module tests
    let gl32 = ffmc::torus_statistics_exhaustive(MatrixGroup::Gl, 3, 2);
    assert_eq!(gl32.samples, 168);
    assert_eq!(gl32.rejected_draws, 512 - 168);
    assert_eq!(gl32.regular_semisimple, 104);
    assert_eq!(gl32.partition_counts[&Partition::new(vec![3])], 48);
    assert_eq!(gl32.partition_counts[&Partition::new(vec![2, 1])], 56);
    assert_eq!(gl32.partition_counts.len(), 2, "no split torus in GL3(2)");

    let sl25 = ffmc::torus_statistics_exhaustive(MatrixGroup::Sl, 2, 5);
    assert_eq!(sl25.samples, 120);
    assert_eq!(sl25.rejected_draws, 625 - 120);
    assert_eq!(sl25.regular_semisimple, 70);
    assert_eq!(sl25.partition_counts[&Partition::new(vec![2])], 40);
    assert_eq!(sl25.partition_counts[&Partition::new(vec![1, 1])], 30);

    let mc_gl = ffmc::torus_statistics(MatrixGroup::Gl, 3, 2, 100_000, 2026);
    assert_within_4_sigma(&mc_gl, &gl32);
    let mc_sl = ffmc::torus_statistics(MatrixGroup::Sl, 2, 5, 100_000, 2026);
    assert_within_4_sigma(&mc_sl, &sl25);
    println!("PASS GL3(2) and SL2(5) exhaustive tables frozen; 10^5 draws inside 4 sigma");
}

#[test]
fn gate_10_weyl_bridge_at_q_101() {
    let start = Instant::now();

    let gl = ffmc::torus_statistics(MatrixGroup::Gl, 3, 101, 100_000, 1);
    let draws = gl.samples as f64;
    for (parts, num, den) in [(vec![3], 1i64, 3i64), (vec![2, 1], 1, 2), (vec![1, 1, 1], 1, 6)] {
        let key = Partition::new(parts);
        let exact = Rational::new(num, den);
        let freq = gl.partition_counts.get(&key).copied().unwrap_or(0) as f64 / draws;
        assert!(
            (freq - exact.to_f64()).abs() <= 0.02,
            "GL3(101) partition {key}: {freq} vs {exact}"
        );
    }
    assert!(!ffmc::compare_to_weyl(&gl).any_flagged, "GL3(101) deviation flagged");

    let sl = ffmc::torus_statistics(MatrixGroup::Sl, 2, 101, 100_000, 42);
    for parts in [vec![2], vec![1, 1]] {
        let key = Partition::new(parts);
        let freq = sl.partition_counts.get(&key).copied().unwrap_or(0) as f64 / sl.samples as f64;
        assert!((freq - 0.5).abs() <= 0.02, "SL2(101) partition {key}: {freq}");
    }

    let mut last = f64::INFINITY;
    for q in [5u64, 7, 11, 13, 101] {
        let report = ffmc::torus_statistics(MatrixGroup::Sl, 2, q, 100_000, 5);
        let non_rs =
            (report.samples - report.regular_semisimple) as f64 / report.samples as f64;
        assert!(non_rs < last, "non-rs proportion must decrease in q (q = {q})");
        assert!(non_rs <= 3.0 / q as f64, "non-rs proportion above 3/q at q = {q}: {non_rs}");
        last = non_rs;
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "budget exceeded: {elapsed:?}");
    println!(
        "PASS q = 101 frequencies within 0.02 of Weyl values; non-rs decay under 3/q, in {} ms",
        elapsed.as_millis()
    );
}
