//! Generalized Maiorana-McFarland constructions: `f(x,y) = x.phi(y) + h(y)`
//! with `x` of `m-1` and `y` of `m+1` variables, built from partitions of
//! `F_2^{m+1}` into 2-flats; closed-form duals, shared-phi 4-concatenation
//! tests, companion constructions, and the general bent test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::BooleanFunction;
use crate::classify;
use crate::gf2::{Point, VectorialMap};
use crate::partitions::FlatPartition;
use crate::{Error, Result};

/// A function in the generalized MM form together with its realization on
/// `F_2^{2m}`: `realized(x,y) = x.phi(y) + h(y)`, x in the `m-1` most
/// significant index bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmmFunction {
    m: usize,
    phi: VectorialMap,
    h: BooleanFunction,
    realized: BooleanFunction,
}

impl GmmFunction {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn phi(&self) -> &VectorialMap {
        &self.phi
    }

    pub fn h(&self) -> &BooleanFunction {
        &self.h
    }

    pub fn realized(&self) -> &BooleanFunction {
        &self.realized
    }

    pub fn is_bent(&self) -> bool {
        self.realized.is_bent()
    }
}

/// Maps the points of the i-th flat (rep order) to the (m-1)-bit value i-1,
/// big-endian; the preimages of the result are exactly the flats.
pub fn phi_from_partition(p: &FlatPartition) -> VectorialMap {
    let m = p.m();
    let mut table = vec![0u32; 1 << (m + 1)];
    for (i, flat) in p.flats().iter().enumerate() {
        for pt in flat.points() {
            table[pt as usize] = i as u32;
        }
    }
    VectorialMap::new(m + 1, m - 1, table)
}

/// Recovers the partition from a 4-to-1 map whose preimages are flats.
pub fn partition_from_phi(phi: &VectorialMap) -> Result<FlatPartition> {
    assert_eq!(phi.in_dim(), phi.out_dim() + 2);
    let m = phi.out_dim() + 1;
    let mut preimages: Vec<Vec<Point>> = vec![Vec::new(); 1 << (m - 1)];
    for y in 0..1u32 << (m + 1) {
        preimages[phi.apply(y) as usize].push(y);
    }
    if preimages.iter().any(|pre| pre.len() != 4) {
        return Err(Error::NotFourToOne);
    }
    let mut flats = Vec::with_capacity(preimages.len());
    for (a, pre) in preimages.iter().enumerate() {
        let pts = [pre[0], pre[1], pre[2], pre[3]];
        if pts[0] ^ pts[1] ^ pts[2] ^ pts[3] != 0 {
            return Err(Error::PreimageNotFlat {
                output: a as u32,
                preimage: pre.clone(),
                width: m - 1,
            });
        }
        flats.push(crate::gf2::Flat::from_points(m + 1, pts)?);
    }
    FlatPartition::from_flats(m, flats)
}

/// Per-flat choice of an admissible restriction of `h`: the restriction has
/// weight 1 (a single one at the distinguished point) or weight 3 (a single
/// zero there), giving 8 choices per flat.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HChoice {
    pub weight_three: bool,
    /// Position of the distinguished point within the flat, in idx order.
    pub point: usize,
}

/// Builds `h` from a per-flat selector; the restriction of the result to
/// every flat has odd weight.
pub fn admissible_h(p: &FlatPartition, selector: &[HChoice]) -> Result<BooleanFunction> {
    if selector.len() != p.flats().len() || selector.iter().any(|c| c.point >= 4) {
        return Err(Error::InvalidSelector);
    }
    let mut h = BooleanFunction::zero(p.ambient());
    for (flat, choice) in p.flats().iter().zip(selector) {
        for (i, pt) in flat.points().into_iter().enumerate() {
            h.set(pt, (i == choice.point) ^ choice.weight_three);
        }
    }
    Ok(h)
}

/// Number of admissible `h` for any fixed partition: `8^(2^(m-1))`.
pub fn count_admissible_h(m: usize) -> u128 {
    assert!((2..=6).contains(&m), "count exceeds u128 beyond m=6");
    1u128 << (3 << (m - 1))
}

/// Uniform seeded draw over the `8^(2^(m-1))` admissible selectors.
pub fn sample_admissible_h(p: &FlatPartition, seed: u64) -> BooleanFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let selector: Vec<HChoice> = (0..p.flats().len())
        .map(|_| {
            let v: u8 = rng.gen_range(0..8);
            HChoice {
                weight_three: v & 4 != 0,
                point: (v & 3) as usize,
            }
        })
        .collect();
    admissible_h(p, &selector).expect("selector is well-formed by construction")
}

/// Realizes `f(x,y) = x.phi(y) + h(y)` on `F_2^{2m}`; bent iff `h` has odd
/// weight on every flat.
pub fn build_gmm(p: &FlatPartition, h: &BooleanFunction) -> Result<GmmFunction> {
    gmm_from_phi(&phi_from_partition(p), h)
}

/// Same realization for an explicitly labelled 4-to-1 map with flat
/// preimages (labels need not follow the canonical flat order).
pub fn gmm_from_phi(phi: &VectorialMap, h: &BooleanFunction) -> Result<GmmFunction> {
    if h.variables() != phi.in_dim() {
        return Err(Error::ArityMismatch);
    }
    partition_from_phi(phi)?;
    let realized = realize(phi, h);
    Ok(GmmFunction {
        m: phi.out_dim() + 1,
        phi: phi.clone(),
        h: h.clone(),
        realized,
    })
}

/// Recovers the GMM form of a function under the canonical split: `h` is
/// the restriction at `x = 0` and the bits of `phi` come from the
/// restrictions at the unit vectors of `x`.
pub fn gmm_from_realized(f: &BooleanFunction) -> Result<GmmFunction> {
    let n = f.variables();
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::NotGmmForm);
    }
    let m = n / 2;
    let h = BooleanFunction::from_fn(m + 1, |y| f.get(y));
    let phi = VectorialMap::from_fn(m + 1, m - 1, |y| {
        let mut out = 0;
        for j in 0..m - 1 {
            let x = 1u32 << (n - 1 - j);
            out = (out << 1) | (f.get(x | y) ^ h.get(y)) as u32;
        }
        out
    });
    if &realize(&phi, &h) != f {
        return Err(Error::NotGmmForm);
    }
    gmm_from_phi(&phi, &h)
}

/// `f(x,y) = x.phi(y) + h(y)` for any map shape, `x` most significant.
pub fn realize(phi: &VectorialMap, h: &BooleanFunction) -> BooleanFunction {
    assert_eq!(h.variables(), phi.in_dim());
    let (a, b) = (phi.in_dim(), phi.out_dim());
    BooleanFunction::from_fn(a + b, |xy| {
        let x = xy >> a;
        let y = xy & ((1 << a) - 1);
        ((x & phi.apply(y)).count_ones() & 1 == 1) ^ h.get(y)
    })
}

/// Dual of a bent GMM function, evaluated from `phi` and `h` alone:
/// `f*(a,b) = sum over idx-ordered pairs y < y' in the preimage of a of
/// (h(y)+y.b)(h(y')+y'.b)`.
pub fn dual_closed_form(f: &GmmFunction) -> Result<BooleanFunction> {
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    let m = f.m;
    let p = partition_from_phi(&f.phi).expect("phi of a bent function partitions");
    let mut dual = BooleanFunction::zero(2 * m);
    for flat in p.flats() {
        let pts = flat.points();
        let a = f.phi.apply(pts[0]);
        for b in 0..1u32 << (m + 1) {
            let z: Vec<bool> = pts
                .iter()
                .map(|&y| f.h.get(y) ^ ((y & b).count_ones() & 1 == 1))
                .collect();
            let mut acc = false;
            for i in 0..4 {
                for j in i + 1..4 {
                    acc ^= z[i] & z[j];
                }
            }
            dual.set((a << (m + 1)) | b, acc);
        }
    }
    Ok(dual)
}

/// The 4x4 value matrix of `h_1..h_4` on one flat, columns indexed by the
/// flat's points in idx order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HaMatrix {
    pub rows: [[bool; 4]; 4],
}

impl HaMatrix {
    pub fn row_weights(&self) -> [u32; 4] {
        self.rows.map(|r| r.iter().filter(|&&b| b).count() as u32)
    }

    /// Sum of the columns: entry i is the parity of row i (all-ones iff
    /// every part is bent).
    pub fn column_sum(&self) -> [bool; 4] {
        self.rows.map(|r| r.iter().fold(false, |a, &b| a ^ b))
    }

    /// Sum of the rows: entry j is the parity of column j.
    pub fn row_sum(&self) -> [bool; 4] {
        let mut s = [false; 4];
        for r in &self.rows {
            for (j, &b) in r.iter().enumerate() {
                s[j] ^= b;
            }
        }
        s
    }

    /// Condition (I): an odd number of rows of weight 3.
    pub fn condition_i(&self) -> bool {
        self.row_weights().iter().filter(|&&w| w == 3).count() % 2 == 1
    }

    /// Condition (II): the sum of the rows is all-0 or all-1.
    pub fn condition_ii(&self) -> bool {
        let s = self.row_sum();
        s == [false; 4] || s == [true; 4]
    }
}

#[derive(Clone, Debug)]
pub struct ConcatCheck {
    pub bent: bool,
    /// One matrix per flat, in rep order.
    pub ha_matrices: Vec<HaMatrix>,
}

/// Bentness test for `f1||f2||f3||f4` with shared phi: holds iff on every
/// flat (I) an odd number of rows of H_a have weight 3 and (II) the sum of
/// the rows of H_a is constant.
pub fn shared_phi_concat_check(
    p: &FlatPartition,
    hs: [&BooleanFunction; 4],
) -> Result<ConcatCheck> {
    let mut ha_matrices = Vec::with_capacity(p.flats().len());
    let mut bent = true;
    for flat in p.flats() {
        let pts = flat.points();
        let mut rows = [[false; 4]; 4];
        for (i, h) in hs.iter().enumerate() {
            for (j, &y) in pts.iter().enumerate() {
                rows[i][j] = h.get(y);
            }
        }
        let ha = HaMatrix { rows };
        if ha.column_sum() != [true; 4] {
            return Err(Error::PartNotBent);
        }
        bent &= ha.condition_i() && ha.condition_ii();
        ha_matrices.push(ha);
    }
    Ok(ConcatCheck { bent, ha_matrices })
}

/// Companions `h_2, h_3, h_4` for a bent `f_1` such that all four parts are
/// bent with the same phi, `f_1||f_2||f_3||f_4` is bent, the h's sum to
/// zero pointwise, and the concatenation lands in the completed MM class.
pub fn outsidein_companions(
    f1: &GmmFunction,
) -> Result<(BooleanFunction, BooleanFunction, BooleanFunction)> {
    if !f1.is_bent() {
        return Err(Error::NotBent);
    }
    let p = partition_from_phi(&f1.phi).expect("phi of a bent function partitions");
    let n = p.ambient();
    let mut h2 = BooleanFunction::zero(n);
    let mut h3 = BooleanFunction::zero(n);
    let mut h4 = BooleanFunction::zero(n);
    for flat in p.flats() {
        let pts = flat.points();
        let ones: Vec<Point> = pts.iter().copied().filter(|&y| f1.h.get(y)).collect();
        match ones.len() {
            3 => {
                // H_a pattern for a weight-3 row: one extra 1 per companion
                // on the points where h1 is 1, in idx order
                h2.set(ones[0], true);
                h3.set(ones[1], true);
                h4.set(ones[2], true);
            }
            1 => {
                // weight-1 row: companions take the remaining points; the
                // last companion gets weight 3 so the rows sum to zero
                let rest: Vec<Point> = pts.iter().copied().filter(|&y| !f1.h.get(y)).collect();
                h2.set(rest[0], true);
                h3.set(rest[1], true);
                h4.set(ones[0], true);
                h4.set(rest[0], true);
                h4.set(rest[1], true);
            }
            _ => unreachable!("bent GMM function has odd weight on every flat"),
        }
    }
    Ok((h2, h3, h4))
}

/// `q||g||q||(g+1)` for a permutation `pi` with property (P1), where
/// `q(x,y) = x.pi(y)` on `F_2^{2m}` and `g = q o A`, with `A` swapping the
/// coordinates `x_m` and `y_1`. The result is bent and outside the
/// completed MM class.
pub fn qg_construction(pi: &VectorialMap) -> Result<BooleanFunction> {
    if !pi.is_permutation() {
        return Err(Error::NotPermutation);
    }
    if !classify::has_p1(pi)? {
        return Err(Error::P1Violated);
    }
    let m = pi.in_dim();
    let q = realize(pi, &BooleanFunction::zero(m));
    // x_m and y_1 are index bits m and m-1 of the 2m-bit index
    let g = BooleanFunction::from_fn(2 * m, |v| {
        let (bm, bm1) = ((v >> m) & 1, (v >> (m - 1)) & 1);
        let swapped = (v & !((1u32 << m) | (1 << (m - 1)))) | (bm1 << m) | (bm << (m - 1));
        q.get(swapped)
    });
    BooleanFunction::concat4([&q, &g, &q, &g.complement()])
}

/// General bentness test for `x.phi(y) + h(y)` with `phi` mapping
/// `n/2+k -> n/2-k` bits: `phi` must be `2^(2k)`-to-1 and every partial
/// exponential sum over a preimage must have absolute value `2^k`.
pub fn gmmk_bent_check(phi: &VectorialMap, h: &BooleanFunction, k: usize) -> bool {
    assert_eq!(h.variables(), phi.in_dim());
    assert_eq!(phi.in_dim(), phi.out_dim() + 2 * k);
    let fibre = 1usize << (2 * k);
    let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); 1 << phi.out_dim()];
    for y in 0..1u32 << phi.in_dim() {
        preimages[phi.apply(y) as usize].push(y);
    }
    if preimages.iter().any(|pre| pre.len() != fibre) {
        return false;
    }
    let target = 1i64 << k;
    for pre in &preimages {
        for beta in 0..1u32 << phi.in_dim() {
            let s: i64 = pre
                .iter()
                .map(|&y| {
                    if h.get(y) ^ ((y & beta).count_ones() & 1 == 1) {
                        -1
                    } else {
                        1
                    }
                })
                .sum();
            if s.abs() != target {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::SpectrumTag;
    use crate::gf2::{monomial_map, FieldGf2m};
    use crate::partitions::{enumerate_partitions, EnumMode};
    use crate::testdata::a0_a7;

    #[test]
    fn phi_round_trip() {
        let p = a0_a7();
        let phi = phi_from_partition(&p);
        assert_eq!(phi.apply(0b00000), 0);
        // flats are sorted by their minimum: 00111 lies in the fifth flat,
        // 10100 in the third
        assert_eq!(phi.apply(0b00111), 4);
        assert_eq!(phi.apply(0b10100), 2);
        let q = partition_from_phi(&phi).unwrap();
        assert_eq!(p.fingerprint(), q.fingerprint());
    }

    #[test]
    fn x14_restriction_preimage_not_flat() {
        let f5 = FieldGf2m::with_default_modulus(5);
        let pi = monomial_map(&f5, 14, 1).unwrap();
        let phi = pi.truncate_outputs(3);
        match partition_from_phi(&phi) {
            Err(Error::PreimageNotFlat { output, preimage, .. }) => {
                assert_eq!(output, 0);
                assert_eq!(preimage, vec![0b00000, 0b10010, 0b11000, 0b11001]);
            }
            other => panic!("expected PreimageNotFlat, got {other:?}"),
        }
    }

    #[test]
    fn admissible_h_selector_and_counting() {
        let p = a0_a7();
        assert_eq!(count_admissible_h(2), 64);
        assert_eq!(count_admissible_h(4), 1 << 24);
        // weight-1-at-rep selector: wt(h) = number of flats
        let sel = vec![
            HChoice {
                weight_three: false,
                point: 0
            };
            8
        ];
        let h = admissible_h(&p, &sel).unwrap();
        assert_eq!(h.weight(), 8);
        assert!(admissible_h(&p, &sel[..7]).is_err());
        let mut bad = sel.clone();
        bad[0].point = 4;
        assert_eq!(admissible_h(&p, &bad), Err(Error::InvalidSelector));
    }

    #[test]
    fn build_gmm_bent_iff_admissible() {
        let p = a0_a7();
        let h = sample_admissible_h(&p, 7);
        let f = build_gmm(&p, &h).unwrap();
        assert!(f.is_bent());
        // break the weight on the first flat: spectrum degrades but stays
        // in the semi-bent / 5-valued family
        let mut h_bad = h.clone();
        h_bad.set(p.flats()[0].points()[0], !h_bad.get(p.flats()[0].points()[0]));
        let g = build_gmm(&p, &h_bad).unwrap();
        let tag = g.realized().classify_spectrum().tag;
        assert!(tag == SpectrumTag::SemiBent || tag == SpectrumTag::FiveValued);
    }

    #[test]
    fn m2_exhaustive_h_census() {
        // for each of the 7 partitions of F_2^3: exactly 64 of the 256 h
        // are bent, the rest semi-bent or 5-valued
        for p in enumerate_partitions(2, EnumMode::Exhaustive).unwrap() {
            let mut bent = 0;
            for ht in 0..256u32 {
                let h = BooleanFunction::from_fn(3, |y| (ht >> y) & 1 == 1);
                let f = build_gmm(&p, &h).unwrap();
                match f.realized().classify_spectrum().tag {
                    SpectrumTag::Bent => bent += 1,
                    SpectrumTag::SemiBent | SpectrumTag::FiveValued => {}
                    SpectrumTag::Other => panic!("unexpected spectrum"),
                }
            }
            assert_eq!(bent, 64);
        }
    }

    #[test]
    fn walsh_identity_on_preimages() {
        // W_f(a,b) = 2^(m-1) * sum over the preimage of a of (-1)^(h(y)+b.y)
        let p = a0_a7();
        let h = sample_admissible_h(&p, 11);
        let f = build_gmm(&p, &h).unwrap();
        let w = f.realized().walsh_transform();
        for (a, flat) in p.flats().iter().enumerate() {
            for b in 0..32u32 {
                let s: i32 = flat
                    .points()
                    .iter()
                    .map(|&y| {
                        if h.get(y) ^ ((y & b).count_ones() & 1 == 1) {
                            -1
                        } else {
                            1
                        }
                    })
                    .sum();
                assert_eq!(w.value(((a as u32) << 5) | b), 8 * s);
            }
        }
    }

    #[test]
    fn dual_closed_form_m2_exhaustive() {
        for p in enumerate_partitions(2, EnumMode::Exhaustive).unwrap() {
            for ht in 0..256u32 {
                let h = BooleanFunction::from_fn(3, |y| (ht >> y) & 1 == 1);
                let f = build_gmm(&p, &h).unwrap();
                if f.is_bent() {
                    assert_eq!(
                        dual_closed_form(&f).unwrap(),
                        f.realized().dual().unwrap()
                    );
                } else {
                    assert_eq!(dual_closed_form(&f), Err(Error::NotBent));
                }
            }
        }
    }

    #[test]
    fn dual_closed_form_m4_samples() {
        let p = a0_a7();
        for seed in 0..20 {
            let h = sample_admissible_h(&p, seed);
            let f = build_gmm(&p, &h).unwrap();
            assert_eq!(dual_closed_form(&f).unwrap(), f.realized().dual().unwrap());
        }
    }

    #[test]
    fn concat_check_matches_wht() {
        let p = a0_a7();
        for seed in 0..25u64 {
            let hs: Vec<BooleanFunction> = (0..4)
                .map(|i| sample_admissible_h(&p, 1000 + 4 * seed + i))
                .collect();
            let check =
                shared_phi_concat_check(&p, [&hs[0], &hs[1], &hs[2], &hs[3]]).unwrap();
            let fs: Vec<BooleanFunction> = hs
                .iter()
                .map(|h| build_gmm(&p, h).unwrap().realized().clone())
                .collect();
            let concat =
                BooleanFunction::concat4([&fs[0], &fs[1], &fs[2], &fs[3]]).unwrap();
            assert_eq!(check.bent, concat.is_bent(), "seed {seed}");
        }
    }

    #[test]
    fn concat_of_identical_parts_never_bent() {
        let p = a0_a7();
        let h = sample_admissible_h(&p, 3);
        let check = shared_phi_concat_check(&p, [&h, &h, &h, &h]).unwrap();
        assert!(!check.bent);
    }

    #[test]
    fn concat_check_rejects_non_bent_part() {
        let p = a0_a7();
        let h = sample_admissible_h(&p, 3);
        let bad = BooleanFunction::zero(5);
        assert!(matches!(
            shared_phi_concat_check(&p, [&h, &h, &h, &bad]),
            Err(Error::PartNotBent)
        ));
    }

    #[test]
    fn outsidein_pattern_properties() {
        let p = a0_a7();
        for seed in 0..10 {
            let h1 = sample_admissible_h(&p, 50 + seed);
            let f1 = build_gmm(&p, &h1).unwrap();
            let (h2, h3, h4) = outsidein_companions(&f1).unwrap();
            // rows sum to zero pointwise
            let sum = h1.xor(&h2).unwrap().xor(&h3).unwrap().xor(&h4).unwrap();
            assert!(sum.is_zero());
            let check = shared_phi_concat_check(&p, [&h1, &h2, &h3, &h4]).unwrap();
            assert!(check.bent);
            for ha in &check.ha_matrices {
                assert_eq!(ha.column_sum(), [true; 4]);
                assert_eq!(ha.row_sum(), [false; 4]);
                assert!(ha.condition_i());
            }
        }
    }

    #[test]
    fn realized_round_trip() {
        let p = a0_a7();
        let h = sample_admissible_h(&p, 42);
        let f = build_gmm(&p, &h).unwrap();
        let g = gmm_from_realized(f.realized()).unwrap();
        assert_eq!(g.realized(), f.realized());
        assert_eq!(g.h(), f.h());
        assert_eq!(g.phi(), f.phi());
        // a function with x-degree 2 is not of GMM shape
        let bad = BooleanFunction::from_fn(10, |v| (v >> 9) & (v >> 8) & 1 == 1);
        assert_eq!(gmm_from_realized(&bad), Err(Error::NotGmmForm));
    }

    #[test]
    fn gmmk_check_agrees_with_bentness() {
        let p = a0_a7();
        let phi = phi_from_partition(&p);
        let good = sample_admissible_h(&p, 1);
        assert!(gmmk_bent_check(&phi, &good, 1));
        let mut bad = good.clone();
        bad.set(0, !bad.get(0));
        assert!(!gmmk_bent_check(&phi, &bad, 1));
        // non-flat preimage: never bent, for any h
        let f5 = FieldGf2m::with_default_modulus(5);
        let phi_bad = monomial_map(&f5, 14, 1).unwrap().truncate_outputs(3);
        assert!(!gmmk_bent_check(&phi_bad, &good, 1));
        // k = 0 with a permutation: plain MM, any h works
        let f4 = FieldGf2m::with_default_modulus(4);
        let pi = monomial_map(&f4, 7, 1).unwrap();
        let h = BooleanFunction::from_fn(4, |y| y % 3 == 0);
        assert!(gmmk_bent_check(&pi, &h, 0));
    }
}
