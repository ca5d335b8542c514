//! Class membership analysis: M-subspaces (subspaces on which all second
//! derivatives vanish), completed Maiorana-McFarland membership, the
//! derivative properties (P1)/(P1*) of vectorial maps, the structure of
//! M-subspaces of 4-concatenations, and strict MM representations.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::boolfn::BooleanFunction;
use crate::gf2::{canonical_subspace, enumerate_subspaces, Subspace, VectorialMap};
use crate::gmm::{realize, GmmFunction};
use crate::{Error, Result};

/// For each direction `b`, the bitset of directions `a` with
/// `D_a D_b f = 0`; symmetric, and rows/columns 0 are all-ones.
pub struct VanishingPairSet {
    n: usize,
    adj: Vec<Vec<u64>>,
}

impl VanishingPairSet {
    pub fn of(f: &BooleanFunction) -> Self {
        let n = f.variables();
        let size = 1usize << n;
        let words = size.div_ceil(64);
        let adj: Vec<Vec<u64>> = (0..size as u32)
            .into_par_iter()
            .map(|b| {
                let d = f.derivative(b);
                let mut row = vec![0u64; words];
                for a in 0..size as u32 {
                    // D_b f is a-periodic exactly when D_a D_b f = 0
                    if d.xor_periodic(a) {
                        row[(a >> 6) as usize] |= 1 << (a & 63);
                    }
                }
                row
            })
            .collect();
        VanishingPairSet { n, adj }
    }

    /// Pairs vanishing for every function simultaneously.
    pub fn common(fs: &[&BooleanFunction]) -> Result<Self> {
        let n = fs[0].variables();
        if fs.iter().any(|f| f.variables() != n) {
            return Err(Error::ArityMismatch);
        }
        let mut sets = fs.iter().map(|f| Self::of(f));
        let mut acc = sets.next().expect("at least one function");
        for s in sets {
            for (ra, rs) in acc.adj.iter_mut().zip(&s.adj) {
                for (wa, ws) in ra.iter_mut().zip(rs) {
                    *wa &= ws;
                }
            }
        }
        Ok(acc)
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vanishes(&self, a: u32, b: u32) -> bool {
        (self.adj[b as usize][(a >> 6) as usize] >> (a & 63)) & 1 == 1
    }
}

/// Canonical DFS over k-dimensional subspaces whose basis vectors pairwise
/// satisfy the vanishing predicate; second derivatives are bilinear in the
/// translation directions, so basis pairs suffice.
fn search_m_subspaces(
    pairs: &VanishingPairSet,
    k: usize,
    stop_at: u64,
    witness_cap: usize,
) -> (u64, Vec<Subspace>) {
    let mut basis = Vec::new();
    let mut span = vec![0u32];
    let mut count = 0;
    let mut out = Vec::new();
    extend(
        pairs,
        k,
        &mut basis,
        &mut span,
        &mut count,
        &mut out,
        stop_at,
        witness_cap,
    );
    (count, out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    pairs: &VanishingPairSet,
    k: usize,
    basis: &mut Vec<u32>,
    span: &mut Vec<u32>,
    count: &mut u64,
    out: &mut Vec<Subspace>,
    stop_at: u64,
    witness_cap: usize,
) -> bool {
    if basis.len() == k {
        *count += 1;
        if out.len() < witness_cap {
            out.push(canonical_subspace(pairs.n, basis));
        }
        return *count >= stop_at;
    }
    let start = basis.last().map_or(1, |&b| b + 1);
    for c in start..1u32 << pairs.n {
        // c must be the coset minimum and pair with the whole basis
        if span.iter().any(|&s| (c ^ s) < c) || basis.iter().any(|&b| !pairs.vanishes(c, b)) {
            continue;
        }
        basis.push(c);
        let old_len = span.len();
        let ext: Vec<u32> = span.iter().map(|&s| s ^ c).collect();
        span.extend(ext);
        let stop = extend(pairs, k, basis, span, count, out, stop_at, witness_cap);
        span.truncate(old_len);
        basis.pop();
        if stop {
            return true;
        }
    }
    false
}

/// All k-dimensional M-subspaces of `f`, in canonical order.
pub fn find_m_subspaces(f: &BooleanFunction, k: usize) -> Vec<Subspace> {
    let pairs = VanishingPairSet::of(f);
    search_m_subspaces(&pairs, k, u64::MAX, usize::MAX).1
}

/// The canonically first k-dimensional M-subspace of `f`, if any.
pub fn find_any_m_subspace(f: &BooleanFunction, k: usize) -> Option<Subspace> {
    let pairs = VanishingPairSet::of(f);
    search_m_subspaces(&pairs, k, 1, 1).1.into_iter().next()
}

/// At most `limit` k-dimensional M-subspaces, canonically first.
pub fn find_m_subspaces_capped(f: &BooleanFunction, k: usize, limit: usize) -> Vec<Subspace> {
    let pairs = VanishingPairSet::of(f);
    search_m_subspaces(&pairs, k, limit as u64, limit).1
}

/// All k-dimensional common M-subspaces of several functions.
pub fn common_m_subspaces(fs: &[&BooleanFunction], k: usize) -> Result<Vec<Subspace>> {
    let pairs = VanishingPairSet::common(fs)?;
    Ok(search_m_subspaces(&pairs, k, u64::MAX, usize::MAX).1)
}

/// Census of the M-subspaces of a function by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSubspaceReport {
    /// Largest dimension of an M-subspace.
    pub max_dim: usize,
    /// Entry d = number of d-dimensional M-subspaces (entry 0 is 1).
    pub counts_by_dim: Vec<u64>,
    /// Witnesses of maximal dimension, capped.
    pub witnesses: Vec<Subspace>,
}

/// Counts the M-subspaces of every dimension; the counts are invariant
/// under extended-affine equivalence.
pub fn m_subspace_report(f: &BooleanFunction, witness_cap: usize) -> MSubspaceReport {
    let pairs = VanishingPairSet::of(f);
    let mut counts_by_dim = vec![1u64];
    let mut witnesses = vec![Subspace::zero(f.variables())];
    for k in 1..=f.variables() {
        let (count, wit) = search_m_subspaces(&pairs, k, u64::MAX, witness_cap);
        if count == 0 {
            break;
        }
        counts_by_dim.push(count);
        witnesses = wit;
    }
    MSubspaceReport {
        max_dim: counts_by_dim.len() - 1,
        counts_by_dim,
        witnesses: witnesses.into_iter().take(witness_cap).collect(),
    }
}

/// Completed MM membership of a bent function: holds iff an (n/2)-dim
/// M-subspace exists; returns a witness.
pub fn is_in_m_sharp(f: &BooleanFunction) -> Result<Option<Subspace>> {
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    Ok(find_any_m_subspace(f, f.variables() / 2))
}

/// Smallest k such that `f` lies in the completed generalized MM class of
/// level n/2+k, i.e. n/2 minus the maximal M-subspace dimension (0 means
/// the ordinary completed MM class).
pub fn gmm_sharp_level(f: &BooleanFunction) -> Result<usize> {
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    let half = f.variables() / 2;
    let pairs = VanishingPairSet::of(f);
    for k in (1..=half).rev() {
        if search_m_subspaces(&pairs, k, 1, 0).0 > 0 {
            return Ok(half - k);
        }
    }
    Ok(half)
}

/// 2-dimensional subspaces `<v, w>` with `D_v D_w phi = 0` identically
/// (the second derivative depends only on the spanned subspace).
pub fn p1star_violations(phi: &VectorialMap) -> Vec<Subspace> {
    enumerate_subspaces(phi.in_dim(), 2)
        .into_par_iter()
        .filter(|s| {
            let (v, w) = (s.basis()[0], s.basis()[1]);
            (0..1u32 << phi.in_dim())
                .all(|y| phi.apply(y) ^ phi.apply(y ^ v) ^ phi.apply(y ^ w) ^ phi.apply(y ^ v ^ w) == 0)
        })
        .collect()
}

/// (P1*): no vanishing second derivative along any pair of linearly
/// independent directions.
pub fn has_p1star(phi: &VectorialMap) -> bool {
    p1star_violations(phi).is_empty()
}

/// (P1) for permutations: the same derivative condition, but restricted to
/// bijective maps.
pub fn has_p1(pi: &VectorialMap) -> Result<bool> {
    if !pi.is_permutation() {
        return Err(Error::NotPermutation);
    }
    Ok(has_p1star(pi))
}

/// Nonzero directions along which the derivative of `g` is constant.
pub fn linear_structures(g: &BooleanFunction) -> Vec<u32> {
    (1..g.domain_size())
        .filter(|&a| g.derivative_constant(a).is_some())
        .collect()
}

/// For `phi` with (P1*) mapping `F_2^(m+k) -> F_2^(m-k)`, decides whether
/// `x.phi(y) + h(y)` has the unique maximal M-subspace
/// `F_2^(m-k) x {0}` (for every h): this fails iff some nonzero direction
/// `b` leaves a kernel `{c : c . D_b phi = 0}` of dimension at least
/// `max(m-k-1, 1)`.
pub fn unique_max_m_subspace_criterion(phi: &VectorialMap) -> Result<bool> {
    if !has_p1star(phi) {
        return Err(Error::P1StarRequired);
    }
    let out = phi.out_dim();
    let threshold = (out - 1).max(1);
    for b in 1..1u32 << phi.in_dim() {
        let d = phi.derivative(b);
        // dim of the kernel = out - rank of the image of D_b phi
        let mut rows: Vec<u32> = Vec::new();
        for y in 0..1u32 << phi.in_dim() {
            let mut v = d.apply(y);
            for &r in &rows {
                v = v.min(v ^ r);
            }
            if v != 0 {
                rows.push(v);
            }
        }
        if out - rows.len() >= threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sufficient condition for (P1*) on a map with balanced nonzero
/// components: for every nonzero `a`, the linear structures common to all
/// derivatives `D_a phi_i` of the coordinate functions are exactly `{0, a}`.
pub fn p1star_sufficient_intersection(phi: &VectorialMap) -> Result<bool> {
    let (in_dim, out) = (phi.in_dim(), phi.out_dim());
    for c in 1..1u32 << out {
        if phi.component(c).weight() != 1 << (in_dim - 1) {
            return Err(Error::ComponentNotBalanced);
        }
    }
    let ok = (1..1u32 << in_dim).into_par_iter().all(|a| {
        let dags: Vec<BooleanFunction> = (0..out)
            .map(|i| phi.component(1 << (out - 1 - i)).derivative(a))
            .collect();
        for v in 1..1u32 << in_dim {
            if v == a {
                continue;
            }
            if dags.iter().all(|g| g.derivative_constant(v).is_some()) {
                return false;
            }
        }
        true
    });
    Ok(ok)
}

/// `D_v f_i + D_v f_j(. + a) = 0` identically.
fn pair_derivative_condition(fi: &BooleanFunction, fj: &BooleanFunction, v: u32, a: u32) -> bool {
    fi.derivative(v) == fj.derivative(v).translate(a)
}

// Selector masks of the concatenation index for the three extension kinds:
// flipping the low selector bit swaps f1<->f2 and f3<->f4, the high bit
// swaps f1<->f3 and f2<->f4, both bits f1<->f4 and f2<->f3.
const EXT_F2: u32 = 0b01;
const EXT_F3: u32 = 0b10;
const EXT_F4: u32 = 0b11;

/// All M-subspaces of `f1||f2||f3||f4` of the given dimension (>= 2),
/// assembled structurally from common M-subspaces of the parts:
/// either V x {00}, or V x {00} extended by one vector (a, s) with
/// matching pairwise derivative conditions, or by two vectors (a, s),
/// (b, s') with the additional 4-term compatibility condition.
pub fn concat_m_subspaces(
    fs: [&BooleanFunction; 4],
    dim: usize,
) -> Result<Vec<Subspace>> {
    let n = fs[0].variables();
    if fs.iter().any(|f| f.variables() != n) {
        return Err(Error::ArityMismatch);
    }
    assert!((2..=n + 2).contains(&dim));
    let pairs = VanishingPairSet::common(&fs)?;
    let embed = |v: u32| v << 2;
    let mut found: BTreeSet<Subspace> = BTreeSet::new();

    // plain form: a common dim-dimensional M-subspace of the parts
    for v in search_m_subspaces(&pairs, dim, u64::MAX, usize::MAX).1 {
        let basis: Vec<u32> = v.basis().iter().map(|&b| embed(b)).collect();
        found.insert(canonical_subspace(n + 2, &basis));
    }

    // one extension vector: (f1,f2)(f3,f4) / (f1,f3)(f2,f4) / (f1,f4)(f2,f3)
    let pairings: [(u32, usize, usize, usize, usize); 3] = [
        (EXT_F2, 0, 1, 2, 3),
        (EXT_F3, 0, 2, 1, 3),
        (EXT_F4, 0, 3, 1, 2),
    ];
    for v in search_m_subspaces(&pairs, dim - 1, u64::MAX, usize::MAX).1 {
        for &(sel, i1, j1, i2, j2) in &pairings {
            for a in 0..1u32 << n {
                let ok = v.basis().iter().all(|&b| {
                    pair_derivative_condition(fs[i1], fs[j1], b, a)
                        && pair_derivative_condition(fs[i2], fs[j2], b, a)
                });
                if ok {
                    let mut basis: Vec<u32> = v.basis().iter().map(|&b| embed(b)).collect();
                    basis.push(embed(a) | sel);
                    found.insert(canonical_subspace(n + 2, &basis));
                }
            }
        }
    }

    // two extension vectors (a, f1<->f3) and (b, f1<->f2)
    if dim >= 2 {
        for v in search_m_subspaces(&pairs, dim - 2, u64::MAX, usize::MAX).1 {
            let cond = |i1: usize, j1: usize, i2: usize, j2: usize, t: u32| {
                v.basis().iter().all(|&b| {
                    pair_derivative_condition(fs[i1], fs[j1], b, t)
                        && pair_derivative_condition(fs[i2], fs[j2], b, t)
                })
            };
            let az: Vec<u32> = (0..1u32 << n).filter(|&a| cond(0, 2, 1, 3, a)).collect();
            let bz: Vec<u32> = (0..1u32 << n).filter(|&b| cond(0, 1, 2, 3, b)).collect();
            for &a in &az {
                for &b in &bz {
                    // f1(x) + f2(x+b) + f3(x+a) + f4(x+a+b) = 0
                    let quad = fs[0]
                        .xor(&fs[1].translate(b))?
                        .xor(&fs[2].translate(a))?
                        .xor(&fs[3].translate(a ^ b))?;
                    if quad.is_zero() {
                        let mut basis: Vec<u32> =
                            v.basis().iter().map(|&w| embed(w)).collect();
                        basis.push(embed(a) | EXT_F3);
                        basis.push(embed(b) | EXT_F2);
                        found.insert(canonical_subspace(n + 2, &basis));
                    }
                }
            }
        }
    }

    Ok(found.into_iter().filter(|s| s.dim() == dim).collect())
}

/// Whether the bent concatenation `f1||f2||f3||f4` lies outside the
/// completed MM class: no (n/2+1)-dimensional M-subspace of any of the
/// three structural kinds exists.
pub fn concat_outside_check(fs: [&BooleanFunction; 4]) -> Result<bool> {
    let concat = BooleanFunction::concat4(fs)?;
    if !concat.is_bent() {
        return Err(Error::ConcatNotBent);
    }
    let half = fs[0].variables() / 2;
    Ok(concat_m_subspaces(fs, half + 1)?.is_empty())
}

/// Strict MM representation of a bent GMM function: exists iff phi is
/// constant in the first input coordinate and `h'(y) = h(0,y) + h(1,y)`
/// extends the coordinates of phi to a permutation pi; the witness
/// satisfies `f(x, y1, y) = (x, y1) . pi(y) + g(y)` with `g = h(0, .)`.
pub fn mm_strict_witness(
    f: &GmmFunction,
) -> Result<Option<(VectorialMap, BooleanFunction)>> {
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    let m = f.m();
    let top = 1u32 << m;
    let phi = f.phi();
    if (0..top).any(|y| phi.apply(y) != phi.apply(y | top)) {
        return Ok(None);
    }
    let pi = VectorialMap::from_fn(m, m, |y| {
        let h_prime = (f.h().get(y) ^ f.h().get(y | top)) as u32;
        (phi.apply(y) << 1) | h_prime
    });
    if !pi.is_permutation() {
        return Ok(None);
    }
    let g = BooleanFunction::from_fn(m, |y| f.h().get(y));
    debug_assert_eq!(&realize(&pi, &g), f.realized());
    Ok(Some((pi, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::AnfPolynomial;
    use crate::gf2::{monomial_map, FieldGf2m};
    use crate::gmm::{build_gmm, partition_from_phi, sample_admissible_h};
    use crate::testdata::a0_a7;

    fn quadratic_bent4() -> BooleanFunction {
        AnfPolynomial::new(4, [0b1100, 0b0011]).truth_table()
    }

    /// mask for a product of y-variables on `n` inputs, 1-based indices
    fn mono(n: usize, vars: &[usize]) -> u32 {
        vars.iter().fold(0, |acc, &i| acc | 1 << (n - i))
    }

    #[test]
    fn vanishing_pairs_match_direct_check() {
        let f = BooleanFunction::from_fn(6, |x| (x * x + 3 * x) % 64 > 31);
        let pairs = VanishingPairSet::of(&f);
        for a in 0..64u32 {
            for b in 0..64u32 {
                assert_eq!(pairs.vanishes(a, b), f.second_derivative_vanishes(a, b));
            }
        }
    }

    #[test]
    fn quadratic_bent_census() {
        // the symplectic form of x1x2 + x3x4 has 15 isotropic lines and
        // 15 Lagrangian planes
        let report = m_subspace_report(&quadratic_bent4(), 4);
        assert_eq!(report.max_dim, 2);
        assert_eq!(report.counts_by_dim, vec![1, 15, 15]);
        assert_eq!(report.witnesses.len(), 4);
        assert!(report.witnesses.iter().all(|w| w.dim() == 2));
    }

    #[test]
    fn m_sharp_membership_of_mm_function() {
        let f = quadratic_bent4();
        let witness = is_in_m_sharp(&f).unwrap().expect("quadratic bent is in MM#");
        assert_eq!(witness.dim(), 2);
        assert_eq!(gmm_sharp_level(&f).unwrap(), 0);
        assert_eq!(is_in_m_sharp(&BooleanFunction::zero(4)), Err(Error::NotBent));
    }

    #[test]
    fn common_subspaces_of_identical_functions() {
        let f = quadratic_bent4();
        let direct = find_m_subspaces(&f, 2);
        let common = common_m_subspaces(&[&f, &f, &f, &f], 2).unwrap();
        assert_eq!(direct, common);
        assert_eq!(direct.len(), 15);
    }

    #[test]
    fn linear_structures_examples() {
        // x1 has every direction as a linear structure
        let linear = AnfPolynomial::new(3, [0b100]).truth_table();
        assert_eq!(linear_structures(&linear).len(), 7);
        // x1x2 on 2 variables: only a = 0 works
        let quad = AnfPolynomial::new(2, [0b11]).truth_table();
        assert!(linear_structures(&quad).is_empty());
    }

    #[test]
    fn p1_star_of_truncated_power_permutation() {
        // first three coordinates of y^14 over GF(2^5)
        let f5 = FieldGf2m::with_default_modulus(5);
        let pi = monomial_map(&f5, 14, 1).unwrap();
        assert!(has_p1(&pi).unwrap());
        let phi = pi.truncate_outputs(3);
        assert!(has_p1star(&phi));
        assert_eq!(p1star_violations(&phi).len(), 0);
        assert_eq!(p1star_sufficient_intersection(&phi), Ok(true));
        assert_eq!(unique_max_m_subspace_criterion(&phi), Ok(true));
    }

    #[test]
    fn p1_star_violation_of_selector_concatenation() {
        // sigma_i = alpha_i x^7 over GF(2^4), phi = s1||s2||s3||(s1+s2+s3):
        // the only vanishing pair is the span of the two selector bits
        let f4 = FieldGf2m::new(4, 0b10011).unwrap();
        let a = f4.a();
        let s1 = monomial_map(&f4, 7, f4.pow(a, 6)).unwrap();
        let s2 = monomial_map(&f4, 7, f4.pow(a, 10)).unwrap();
        let s3 = monomial_map(&f4, 7, a).unwrap();
        for s in [&s1, &s2, &s3] {
            assert!(has_p1star(s));
        }
        let s4 = s1.xor(&s2).unwrap().xor(&s3).unwrap();
        assert!(s4.is_permutation());
        let phi = VectorialMap::concat4([&s1, &s2, &s3, &s4]).unwrap();
        let violations = p1star_violations(&phi);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].basis(), [0b000001, 0b000010]);
        assert_eq!(
            unique_max_m_subspace_criterion(&phi),
            Err(Error::P1StarRequired)
        );
    }

    #[test]
    fn unique_criterion_matches_direct_search() {
        // random (P1*) maps F_2^4 -> F_2^2: the criterion must agree with
        // a direct search for 2-dim M-subspaces of x . phi(y) on F_2^6,
        // whose canonical M-subspace is <100000, 010000>
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let canonical = canonical_subspace(6, &[0b100000, 0b010000]);
        let mut checked = 0;
        for _ in 0..4000 {
            let table: Vec<u32> = (0..16).map(|_| rng.gen_range(0..4)).collect();
            let phi = VectorialMap::new(4, 2, table);
            if !has_p1star(&phi) {
                continue;
            }
            let f = realize(&phi, &BooleanFunction::zero(4));
            // (P1*) caps the M-subspace dimension at out_dim
            assert!(find_m_subspaces(&f, 3).is_empty());
            let subs = find_m_subspaces(&f, 2);
            assert!(subs.contains(&canonical));
            assert_eq!(
                unique_max_m_subspace_criterion(&phi).unwrap(),
                subs.len() == 1
            );
            checked += 1;
            if checked == 12 {
                break;
            }
        }
        assert!(checked >= 3, "too few (P1*) samples: {checked}");
    }

    #[test]
    fn unique_criterion_vacuous_for_single_output() {
        // out_dim 1: a violation would need a vanishing derivative, which
        // (P1*) already excludes, so the criterion always holds
        let f4 = FieldGf2m::new(4, 0b10011).unwrap();
        let pi = monomial_map(&f4, 7, f4.pow(f4.a(), 6)).unwrap();
        let phi = pi.truncate_outputs(1);
        if has_p1star(&phi) {
            assert_eq!(unique_max_m_subspace_criterion(&phi), Ok(true));
        }
    }

    #[test]
    fn concat_m_subspaces_match_direct_search() {
        // four 4-variable parts, concatenation on 6 variables
        let f = quadratic_bent4();
        let g = f.translate(0b0110);
        let h = f.complement();
        let parts = [&f, &g, &h, &f];
        let concat = BooleanFunction::concat4(parts).unwrap();
        for dim in 2..=4 {
            let structural = concat_m_subspaces(parts, dim).unwrap();
            let direct = find_m_subspaces(&concat, dim);
            assert_eq!(structural, direct, "dim {dim}");
        }
    }

    #[test]
    fn concat_outside_check_matches_membership() {
        let p = a0_a7();
        let h1 = sample_admissible_h(&p, 9);
        let f1 = build_gmm(&p, &h1).unwrap();
        let (h2, h3, h4) = crate::gmm::outsidein_companions(&f1).unwrap();
        let fs: Vec<BooleanFunction> = [&h1, &h2, &h3, &h4]
            .iter()
            .map(|h| build_gmm(&p, h).unwrap().realized().clone())
            .collect();
        let parts = [&fs[0], &fs[1], &fs[2], &fs[3]];
        let outside = concat_outside_check(parts).unwrap();
        let concat = BooleanFunction::concat4(parts).unwrap();
        let member = is_in_m_sharp(&concat).unwrap().is_some();
        assert!(!outside);
        assert!(member);
    }

    #[test]
    fn mm_strict_witness_of_coordinate_projection() {
        // phi = first 3 coordinates, independent of y_1; h supplies the
        // missing permutation coordinate
        let n = 5;
        let phi1 = AnfPolynomial::new(
            n,
            [
                mono(n, &[2, 3]),
                mono(n, &[2, 5]),
                mono(n, &[3, 5]),
                mono(n, &[4, 5]),
                mono(n, &[2, 4, 5]),
                mono(n, &[3, 4, 5]),
            ],
        )
        .truth_table();
        let phi2 = AnfPolynomial::new(
            n,
            [
                mono(n, &[3]),
                mono(n, &[4]),
                mono(n, &[5]),
                mono(n, &[2, 5]),
                mono(n, &[3, 5]),
                mono(n, &[4, 5]),
            ],
        )
        .truth_table();
        let phi3 = AnfPolynomial::new(
            n,
            [
                mono(n, &[2]),
                mono(n, &[3]),
                mono(n, &[2, 3]),
                mono(n, &[2, 4]),
                mono(n, &[3, 4]),
                mono(n, &[5]),
                mono(n, &[4, 5]),
                mono(n, &[2, 4, 5]),
                mono(n, &[3, 4, 5]),
            ],
        )
        .truth_table();
        let h = AnfPolynomial::new(
            n,
            [
                mono(n, &[1]),
                mono(n, &[1, 2]),
                mono(n, &[1, 3]),
                mono(n, &[1, 4]),
                mono(n, &[3, 4]),
                mono(n, &[1, 3, 4]),
                mono(n, &[2, 5]),
                mono(n, &[1, 2, 5]),
                mono(n, &[1, 3, 5]),
                mono(n, &[1, 2, 3, 5]),
                mono(n, &[2, 4, 5]),
                mono(n, &[1, 3, 4, 5]),
                mono(n, &[2, 3, 4, 5]),
            ],
        )
        .truth_table();
        let phi = VectorialMap::from_fn(5, 3, |y| {
            ((phi1.get(y) as u32) << 2) | ((phi2.get(y) as u32) << 1) | phi3.get(y) as u32
        });
        let p = partition_from_phi(&phi).unwrap();
        let f = build_gmm(&p, &h).unwrap();
        assert!(f.is_bent());
        let (pi, g) = mm_strict_witness(&f).unwrap().expect("function is in MM");
        assert!(pi.is_permutation());
        assert_eq!(&realize(&pi, &g), f.realized());
        // and the canonical M-subspace test agrees
        assert!(is_in_m_sharp(f.realized()).unwrap().is_some());
    }

    #[test]
    fn mm_strict_witness_rejects_phi_depending_on_first_variable() {
        let p = a0_a7();
        let h = sample_admissible_h(&p, 4);
        let f = build_gmm(&p, &h).unwrap();
        // A_0..A_7 has flats separating y_1, so phi depends on it
        assert_eq!(mm_strict_witness(&f).unwrap(), None);
    }
}
