//! The `paper-m4` reproduction suite: one deterministic, self-contained
//! check per acceptance criterion, shared by `bentforge reproduce` and the
//! acceptance test target.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::{BitMatrix, BooleanFunction, SpectrumTag};
use crate::classify::{
    concat_m_subspaces, concat_outside_check, find_m_subspaces, find_m_subspaces_capped, has_p1,
    is_in_m_sharp, m_subspace_report, p1star_violations, unique_max_m_subspace_criterion,
};
use crate::gf2::{enumerate_subspaces, monomial_map, FieldGf2m, Subspace, VectorialMap};
use crate::gmm::{
    build_gmm, dual_closed_form, outsidein_companions, partition_from_phi, phi_from_partition,
    qg_construction, realize, sample_admissible_h, shared_phi_concat_check,
};
use crate::partitions::{
    classify_partition, enumerate_partitions, product_partition, EnumMode, FlatPartition,
    PairPartition, PartitionTag,
};
use crate::Error;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const CRITERIA: [&str; 10] = [
    "partitions",
    "small-oracle",
    "dual",
    "outside-msharp",
    "inside-msharp",
    "outsidein",
    "qg",
    "p1star",
    "properties",
    "fingerprint",
];

/// Shared m=4 enumeration, computed once per run.
struct Ctx {
    partitions: Vec<FlatPartition>,
    proper: Vec<usize>,
}

impl Ctx {
    fn new() -> Self {
        let partitions =
            enumerate_partitions(4, EnumMode::Procedure).expect("m=4 is within bounds");
        let proper = partitions
            .iter()
            .enumerate()
            .filter(|(_, p)| classify_partition(p).is_proper())
            .map(|(i, _)| i)
            .collect();
        Ctx { partitions, proper }
    }
}

/// Runs the suite, optionally restricted to one criterion by name or
/// 1-based index. `full` replaces the seeded subsample in criterion 4 by
/// the complete 3785-partition sweep and cross-checks exhaustive
/// enumeration in criterion 1.
pub fn run(filter: Option<&str>, full: bool) -> Vec<CriterionResult> {
    let selected: Vec<usize> = (0..CRITERIA.len())
        .filter(|&i| match filter {
            None => true,
            Some(f) => f == CRITERIA[i] || f.parse() == Ok(i + 1),
        })
        .collect();
    let ctx = Ctx::new();
    selected
        .into_iter()
        .map(|i| {
            let started = Instant::now();
            let (pass, mut detail) = match i {
                0 => c1_partitions(&ctx, full),
                1 => c2_small_oracle(),
                2 => c3_dual(&ctx),
                3 => c4_outside_msharp(&ctx, full),
                4 => c5_inside_msharp(&ctx),
                5 => c6_outsidein(&ctx),
                6 => c7_qg(),
                7 => c8_p1star(),
                8 => c9_properties(&ctx),
                _ => c10_fingerprint(&ctx),
            };
            detail.push_str(&format!(" elapsed_ms={}", started.elapsed().as_millis()));
            CriterionResult {
                index: i + 1,
                name: CRITERIA[i],
                pass,
                detail,
            }
        })
        .collect()
}

fn c1_partitions(ctx: &Ctx, full: bool) -> (bool, String) {
    let total = ctx.partitions.len();
    let proper = ctx.proper.len();
    let mut detail =
        format!("mode=procedure total={total} proper={proper} expected_total=4960 expected_proper=3785");
    let pass = total == 4960 && proper == 3785;
    if full {
        // cross-check only; the criterion passes on the procedure figures
        let exhaustive = enumerate_partitions(4, EnumMode::Exhaustive)
            .map(|ps| ps.len())
            .unwrap_or(0);
        detail.push_str(&format!(" exhaustive_total={exhaustive}"));
    }
    (pass, detail)
}

fn c2_small_oracle() -> (bool, String) {
    let parts = enumerate_partitions(2, EnumMode::Exhaustive).expect("m=2 is within bounds");
    if parts.len() != 7 {
        return (false, format!("total={} expected=7", parts.len()));
    }
    for p in &parts {
        let mut bent = 0u32;
        for bits in 0..1u32 << 8 {
            let h = BooleanFunction::from_fn(3, |y| bits >> y & 1 == 1);
            let f = build_gmm(p, &h).expect("partition is valid");
            match f.realized().classify_spectrum().tag {
                SpectrumTag::Bent => bent += 1,
                SpectrumTag::SemiBent | SpectrumTag::FiveValued => {}
                tag => return (false, format!("unexpected class {tag:?} for h={bits:08b}")),
            }
        }
        if bent != 64 {
            return (false, format!("bent_h={bent} expected=64"));
        }
    }
    (true, "partitions=7 bent_h_per_phi=64/256".to_string())
}

fn c3_dual(ctx: &Ctx) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    for i in 0..1000 {
        let p = &ctx.partitions[rng.gen_range(0..ctx.partitions.len())];
        let h = sample_admissible_h(p, rng.gen());
        let f = match build_gmm(p, &h) {
            Ok(f) => f,
            Err(e) => return (false, format!("sample={i} error={e}")),
        };
        if !f.is_bent() {
            return (false, format!("sample={i} not bent"));
        }
        let closed = dual_closed_form(&f).expect("f is bent");
        let wht = f.realized().dual().expect("f is bent");
        if closed != wht {
            return (false, format!("sample={i} duals differ"));
        }
    }
    (true, "samples=1000 bent=1000 duals_equal=1000".to_string())
}

fn c4_outside_msharp(ctx: &Ctx, full: bool) -> (bool, String) {
    let indices: Vec<usize> = if full {
        ctx.proper.clone()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
        rand::seq::index::sample(&mut rng, ctx.proper.len(), 200)
            .into_iter()
            .map(|i| ctx.proper[i])
            .collect()
    };
    for &i in &indices {
        let p = &ctx.partitions[i];
        let h = sample_admissible_h(p, 4000 + i as u64);
        let f = build_gmm(p, &h).expect("sampled h is admissible");
        match is_in_m_sharp(f.realized()) {
            Ok(None) => {}
            Ok(Some(w)) => {
                return (
                    false,
                    format!("partition={i} unexpectedly in msharp, witness={}", basis(&w)),
                )
            }
            Err(e) => return (false, format!("partition={i} error={e}")),
        }
    }
    let mode = if full { "full" } else { "subsample" };
    (
        true,
        format!("mode={mode} checked={} outside=all", indices.len()),
    )
}

fn c5_inside_msharp(ctx: &Ctx) -> (bool, String) {
    // every trivial partition of F_2^5: the cosets of each 2-dim subspace
    let trivial: Vec<FlatPartition> = enumerate_subspaces(5, 2)
        .iter()
        .map(|s| FlatPartition::cosets(4, s).expect("cosets of a 2-dim subspace partition"))
        .collect();
    for (i, p) in trivial.iter().enumerate() {
        let h = sample_admissible_h(p, 5000 + i as u64);
        let f = build_gmm(p, &h).expect("sampled h is admissible");
        if !matches!(is_in_m_sharp(f.realized()), Ok(Some(_))) {
            return (false, format!("trivial={i} not in msharp"));
        }
        let found = find_m_subspaces_capped(f.realized(), 4, 3).len();
        if found < 3 {
            return (false, format!("trivial={i} max_dim_subspaces={found} expected>=3"));
        }
    }
    // seeded non-proper, non-trivial partitions: products of the trivial
    // pair partition of F_2 with random non-trivial matchings of F_2^4,
    // plus whatever non-proper partitions the harvest produced
    let mut nonproper: Vec<FlatPartition> = (0..50)
        .map(|i| {
            let left = PairPartition::trivial(1, 1);
            let right = seeded_nontrivial_matching(4, 5500 + i);
            product_partition(&left, &right).expect("pair partitions are valid")
        })
        .collect();
    nonproper.extend(
        ctx.partitions
            .iter()
            .filter(|p| classify_partition(p).tag == PartitionTag::NonProperNonTrivial)
            .cloned(),
    );
    for (i, p) in nonproper.iter().enumerate() {
        debug_assert!(!classify_partition(p).is_proper());
        let h = sample_admissible_h(p, 5600 + i as u64);
        let f = build_gmm(p, &h).expect("sampled h is admissible");
        if !matches!(is_in_m_sharp(f.realized()), Ok(Some(_))) {
            return (false, format!("nonproper={i} not in msharp"));
        }
    }
    (
        true,
        format!(
            "trivial={} nonproper={} inside=all",
            trivial.len(),
            nonproper.len()
        ),
    )
}

fn c6_outsidein(ctx: &Ctx) -> (bool, String) {
    let p = &ctx.partitions[ctx.proper[0]];
    let h1 = sample_admissible_h(p, 6000);
    let f1 = build_gmm(p, &h1).expect("sampled h is admissible");
    if !matches!(is_in_m_sharp(f1.realized()), Ok(None)) {
        return (false, "f1 not outside msharp".to_string());
    }
    let (h2, h3, h4) = outsidein_companions(&f1).expect("f1 is bent");
    let parts: Vec<BooleanFunction> = [&h1, &h2, &h3, &h4]
        .iter()
        .map(|h| realize(f1.phi(), h))
        .collect();
    let f = BooleanFunction::concat4([&parts[0], &parts[1], &parts[2], &parts[3]])
        .expect("equal arity by construction");
    if !f.is_bent() {
        return (false, "concatenation not bent".to_string());
    }
    if !matches!(is_in_m_sharp(&f), Ok(Some(_))) {
        return (false, "concatenation not in msharp".to_string());
    }
    if f.restrict_last2(false, false) != *f1.realized() {
        return (false, "(0,0)-restriction differs from f1".to_string());
    }
    (
        true,
        "f1_outside=true concat_bent=true concat_msharp=true restriction_matches=true".to_string(),
    )
}

/// Lexicographically first permutation of F_2^m with property (P1).
fn first_p1_permutation(m: usize) -> VectorialMap {
    let mut table: Vec<u32> = (0..1u32 << m).collect();
    loop {
        let pi = VectorialMap::new(m, m, table.clone());
        if has_p1(&pi).expect("table is a permutation") {
            return pi;
        }
        assert!(next_permutation(&mut table), "some P1 permutation exists");
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn qg_parts(pi: &VectorialMap) -> [BooleanFunction; 4] {
    let f = qg_construction(pi).expect("pi has (P1)");
    [
        f.restrict_last2(false, false),
        f.restrict_last2(false, true),
        f.restrict_last2(true, false),
        f.restrict_last2(true, true),
    ]
}

fn c7_qg() -> (bool, String) {
    let pi3 = first_p1_permutation(3);
    let f8 = qg_construction(&pi3).expect("pi3 has (P1) by construction");
    if !f8.is_bent() || !matches!(is_in_m_sharp(&f8), Ok(None)) {
        return (false, "n=8 construction not bent outside msharp".to_string());
    }
    let parts = qg_parts(&pi3);
    let refs = [&parts[0], &parts[1], &parts[2], &parts[3]];
    match concat_outside_check(refs) {
        Ok(true) => {}
        other => return (false, format!("concat_outside_check={other:?}")),
    }
    for dim in 2..=4 {
        let structural: BTreeSet<Subspace> =
            concat_m_subspaces(refs, dim).expect("equal arity").into_iter().collect();
        let direct: BTreeSet<Subspace> = find_m_subspaces(&f8, dim).into_iter().collect();
        if structural != direct {
            return (
                false,
                format!(
                    "dim={dim} structural={} direct={}",
                    structural.len(),
                    direct.len()
                ),
            );
        }
    }
    let field = FieldGf2m::with_default_modulus(4);
    let alpha = field.pow(field.a(), 6);
    let pi4 = monomial_map(&field, 7, alpha).expect("alpha is nonzero");
    let f10 = match qg_construction(&pi4) {
        Ok(f) => f,
        Err(e) => return (false, format!("d=7 monomial rejected: {e}")),
    };
    if !f10.is_bent() || !matches!(is_in_m_sharp(&f10), Ok(None)) {
        return (false, "n=10 construction not bent outside msharp".to_string());
    }
    (
        true,
        "n8_bent=true n8_msharp=false concat_outside=true structural_vs_direct=equal \
         n10_bent=true n10_msharp=false"
            .to_string(),
    )
}

fn c8_p1star() -> (bool, String) {
    let field = FieldGf2m::new(5, 0b100101).expect("x^5+x^2+1 is irreducible");
    let phi = monomial_map(&field, 14, 1)
        .expect("coefficient 1 is nonzero")
        .truncate_outputs(3);
    let violations = p1star_violations(&phi);
    let checked = enumerate_subspaces(5, 2).len();
    if !violations.is_empty() || checked != 155 {
        return (false, format!("p1star={}/{checked}", checked - violations.len()));
    }
    match unique_max_m_subspace_criterion(&phi) {
        Ok(true) => {}
        other => return (false, format!("unique_criterion={other:?}")),
    }
    match partition_from_phi(&phi) {
        Err(Error::PreimageNotFlat {
            output: 0,
            preimage,
            ..
        }) if preimage == [0b00000, 0b10010, 0b11000, 0b11001] => {}
        other => return (false, format!("partition_from_phi={other:?}")),
    }
    (
        true,
        "p1star=155/155 unique_criterion=true rejection=PreimageNotFlat(000)".to_string(),
    )
}

fn c9_properties(ctx: &Ctx) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    // Moebius round-trip
    for n in 1..=10 {
        for _ in 0..3 {
            let f = random_function(n, &mut rng);
            if f.anf().truth_table() != f {
                return (false, format!("moebius round-trip failed at n={n}"));
            }
        }
    }
    // Parseval and fast-vs-naive WHT
    for n in 2..=8 {
        let f = random_function(n, &mut rng);
        let w = f.walsh_transform();
        let energy: i64 = w.values().iter().map(|&v| (v as i64) * (v as i64)).sum();
        if energy != 1i64 << (2 * n) {
            return (false, format!("parseval failed at n={n}"));
        }
        for omega in 0..f.domain_size() {
            let naive: i32 = (0..f.domain_size())
                .map(|x| {
                    if f.get(x) ^ ((x & omega).count_ones() & 1 == 1) {
                        -1
                    } else {
                        1
                    }
                })
                .sum();
            if naive != w.value(omega) {
                return (false, format!("naive WHT mismatch at n={n} omega={omega}"));
            }
        }
    }
    // dual involution and compose_affine spectrum invariance
    let p = &ctx.partitions[0];
    let f = build_gmm(p, &sample_admissible_h(p, 9000))
        .expect("sampled h is admissible")
        .realized()
        .clone();
    let dual = f.dual().expect("f is bent");
    if dual.dual().expect("dual is bent") != f {
        return (false, "dual involution failed".to_string());
    }
    let n = f.variables();
    for _ in 0..20 {
        let a = random_invertible(n, &mut rng);
        let b = rng.gen_range(0..f.domain_size());
        let c = rng.gen_range(0..f.domain_size());
        let d = rng.gen_bool(0.5);
        let g = f.compose_affine(&a, b, c, d).expect("matrix is square");
        let (sf, sg) = (f.classify_spectrum(), g.classify_spectrum());
        if sf.distinct_abs_values != sg.distinct_abs_values || sf.tag != sg.tag {
            return (false, "compose_affine changed the spectrum".to_string());
        }
    }
    // subspace search vs enumerate-and-filter at n = 6
    let small = {
        let p2 = enumerate_partitions(2, EnumMode::Exhaustive).expect("m=2 is within bounds");
        build_gmm(&p2[0], &sample_admissible_h(&p2[0], 9001))
            .expect("sampled h is admissible")
            .realized()
            .clone()
    };
    for g in [&small, &random_function(6, &mut rng)] {
        for k in 1..=3 {
            let found: BTreeSet<Subspace> = find_m_subspaces(g, k).into_iter().collect();
            let oracle: BTreeSet<Subspace> = enumerate_subspaces(g.variables(), k)
                .into_iter()
                .filter(|s| {
                    let els = s.elements();
                    els.iter()
                        .all(|&a| els.iter().all(|&b| g.second_derivative_vanishes(a, b)))
                })
                .collect();
            if found != oracle {
                return (false, format!("subspace search mismatch at k={k}"));
            }
        }
    }
    // concat check iff WHT bentness, 100 seeded tuples
    for t in 0..100 {
        let p = &ctx.partitions[rng.gen_range(0..ctx.partitions.len())];
        let hs: Vec<BooleanFunction> = (0..4)
            .map(|j| sample_admissible_h(p, 9100 + 4 * t + j))
            .collect();
        let check = shared_phi_concat_check(p, [&hs[0], &hs[1], &hs[2], &hs[3]])
            .expect("parts are bent for admissible h");
        let phi = phi_from_partition(p);
        let parts: Vec<BooleanFunction> = hs.iter().map(|h| realize(&phi, h)).collect();
        let concat = BooleanFunction::concat4([&parts[0], &parts[1], &parts[2], &parts[3]])
            .expect("equal arity");
        if check.bent != concat.is_bent() {
            return (false, format!("concat check mismatch at tuple={t}"));
        }
    }
    (true, "moebius=ok parseval=ok wht=ok dual=ok affine=ok subspaces=ok concat=100/100".to_string())
}

fn c10_fingerprint(ctx: &Ctx) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0010);
    let picks = rand::seq::index::sample(&mut rng, ctx.proper.len(), 40);
    let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
    for i in picks {
        let p = &ctx.partitions[ctx.proper[i]];
        let h = sample_admissible_h(p, 10_000 + i as u64);
        let f = build_gmm(p, &h).expect("sampled h is admissible");
        classes.insert(m_subspace_report(f.realized(), 0).counts_by_dim);
    }
    (
        classes.len() >= 2,
        format!("sampled=40 distinct_fingerprints={}", classes.len()),
    )
}

/// Seeded random pair partition of `F_2^dim` with at least two distinct
/// pair directions.
fn seeded_nontrivial_matching(dim: usize, seed: u64) -> PairPartition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut points: Vec<u32> = (0..1u32 << dim).collect();
        for i in (1..points.len()).rev() {
            points.swap(i, rng.gen_range(0..=i));
        }
        let pairs: Vec<(u32, u32)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        let p = PairPartition::new(dim, pairs).expect("a matching is a pair partition");
        let dirs = p.directions();
        if dirs.iter().any(|&d| d != dirs[0]) {
            return p;
        }
    }
}

fn random_function(n: usize, rng: &mut ChaCha8Rng) -> BooleanFunction {
    let mut f = BooleanFunction::zero(n);
    for x in 0..f.domain_size() {
        f.set(x, rng.gen_bool(0.5));
    }
    f
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
    loop {
        let rows: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
        let a = BitMatrix::new(n, rows);
        if a.is_invertible() {
            return a;
        }
    }
}

fn basis(s: &Subspace) -> String {
    let w = s.ambient();
    s.basis()
        .iter()
        .map(|b| format!("{:0w$b}", b))
        .collect::<Vec<_>>()
        .join(",")
}
