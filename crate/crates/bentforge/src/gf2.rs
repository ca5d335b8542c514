//! Linear algebra over `F_2`: subspaces in canonical form, 2-dimensional
//! flats, exhaustive subspace enumeration, and `GF(2^m)` arithmetic for
//! monomial permutations.

use std::fmt;

use crate::{Error, Result};

/// Points of `F_2^n` are plain words in the global idx convention.
pub type Point = u32;

/// A linear subspace of `F_2^n` with its unique reduced-row-echelon basis,
/// stored in ascending idx order. Two subspaces are equal iff their
/// canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Point>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, basis=[", self.ambient)?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:0width$b}", b, width = self.ambient)?;
        }
        write!(f, "])")
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// Span of arbitrary vectors, reduced to canonical form.
    pub fn span(ambient: usize, vectors: &[Point]) -> Self {
        let mut basis: Vec<Point> = Vec::new();
        for &v in vectors {
            debug_assert!(ambient == 32 || v < 1 << ambient);
            let mut v = v;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
            }
        }
        // full RREF: clear each pivot from every other row
        let mut i = 0;
        while i < basis.len() {
            let pivot = 1u32 << (31 - basis[i].leading_zeros());
            for j in 0..basis.len() {
                if j != i && basis[j] & pivot != 0 {
                    basis[j] ^= basis[i];
                }
            }
            i += 1;
        }
        basis.sort_unstable();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn contains(&self, mut v: Point) -> bool {
        for &b in &self.basis {
            v = v.min(v ^ b);
        }
        v == 0
    }

    /// All `2^k` elements, in no particular order beyond determinism.
    pub fn elements(&self) -> Vec<Point> {
        let mut out = vec![0];
        for &b in &self.basis {
            let ext: Vec<Point> = out.iter().map(|&e| e ^ b).collect();
            out.extend(ext);
        }
        out
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        // small dims throughout; filter the smaller element list
        let (small, big) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let common: Vec<Point> = small
            .elements()
            .into_iter()
            .filter(|&v| big.contains(v))
            .collect();
        Subspace::span(self.ambient, &common)
    }
}

/// A 2-dimensional flat (affine subspace) of `F_2^n`, stored canonically:
/// `rep` is the idx-minimum of its four points and `dir` the direction
/// subspace, so equal flats compare equal bitwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    ambient: usize,
    rep: Point,
    dir: Subspace,
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pts = self.points();
        pts.sort_unstable();
        write!(f, "Flat{:?}", pts)
    }
}

impl Flat {
    /// Builds the flat through 4 distinct points, or reports why not.
    pub fn from_points(ambient: usize, points: [Point; 4]) -> Result<Self> {
        if !distinct(&points) {
            return Err(Error::DuplicatePoints);
        }
        let rep = *points.iter().min().unwrap();
        let dirs: Vec<Point> = points.iter().map(|&p| p ^ rep).collect();
        let dir = Subspace::span(ambient, &dirs);
        if dir.dim() != 2 {
            // distinct 4-sets with nonzero XOR never span exactly a 2-space
            return Err(Error::PreimageNotFlat {
                output: 0,
                preimage: points.to_vec(),
                width: ambient,
            });
        }
        Ok(Flat { ambient, rep, dir })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rep(&self) -> Point {
        self.rep
    }

    pub fn dir(&self) -> &Subspace {
        &self.dir
    }

    /// The four points, in ascending idx order.
    pub fn points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.dir.elements().iter().map(|&d| self.rep ^ d).collect();
        pts.sort_unstable();
        pts
    }

    pub fn contains(&self, p: Point) -> bool {
        self.dir.contains(p ^ self.rep)
    }

    pub fn is_linear(&self) -> bool {
        self.rep == 0
    }
}

fn distinct(points: &[Point; 4]) -> bool {
    for i in 0..4 {
        for j in i + 1..4 {
            if points[i] == points[j] {
                return false;
            }
        }
    }
    true
}

/// True iff 4 distinct points of `F_2^n` form a 2-dimensional flat,
/// equivalently XOR to zero.
pub fn is_flat(points: [Point; 4]) -> Result<bool> {
    if !distinct(&points) {
        return Err(Error::DuplicatePoints);
    }
    Ok(points[0] ^ points[1] ^ points[2] ^ points[3] == 0)
}

/// Canonical subspace spanned by arbitrary vectors.
pub fn canonical_subspace(ambient: usize, vectors: &[Point]) -> Subspace {
    Subspace::span(ambient, vectors)
}

/// All `k`-dimensional subspaces of `F_2^n`, each exactly once, in
/// lexicographic order of the canonical basis.
///
/// The ascending RREF basis `v_1 < ... < v_k` is exactly the greedy basis
/// in which each `v_i` is the minimum of its coset modulo the span of its
/// predecessors, so a depth-first search over coset-minimal extensions
/// visits every subspace once.
pub fn enumerate_subspaces(n: usize, k: usize) -> Vec<Subspace> {
    assert!(k <= n && n <= 16);
    let mut out = Vec::new();
    let mut basis: Vec<Point> = Vec::new();
    let mut span: Vec<Point> = vec![0];
    extend_subspaces(n, k, &mut basis, &mut span, &mut out);
    out
}

fn extend_subspaces(
    n: usize,
    k: usize,
    basis: &mut Vec<Point>,
    span: &mut Vec<Point>,
    out: &mut Vec<Subspace>,
) {
    if basis.len() == k {
        out.push(Subspace {
            ambient: n,
            basis: basis.clone(),
        });
        return;
    }
    let start = basis.last().map_or(1, |&b| b + 1);
    for c in start..1u32 << n {
        // c must be the minimum of c + span(basis)
        if span.iter().any(|&s| (c ^ s) < c) {
            continue;
        }
        basis.push(c);
        let old_len = span.len();
        let ext: Vec<Point> = span.iter().map(|&s| s ^ c).collect();
        span.extend(ext);
        extend_subspaces(n, k, basis, span, out);
        span.truncate(old_len);
        basis.pop();
    }
}

/// Gaussian binomial `[n choose k]_2`, the number of k-dim subspaces of F_2^n.
pub fn gaussian_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (k - i)) - 1;
    }
    num / den
}

/// `GF(2^m)` in a polynomial basis, `2 <= m <= 16`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldGf2m {
    m: usize,
    modulus: u32,
}

impl FieldGf2m {
    /// Constructs the field from an irreducibility-checked modulus
    /// (degree-m polynomial as a bit mask, bit i = coefficient of a^i).
    pub fn new(m: usize, modulus: u32) -> Result<Self> {
        assert!((2..=16).contains(&m));
        assert_eq!(31 - modulus.leading_zeros() as usize, m, "modulus degree");
        if !poly_irreducible(modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(FieldGf2m { m, modulus })
    }

    /// The field with the lexicographically smallest irreducible modulus.
    pub fn with_default_modulus(m: usize) -> Self {
        let modulus = (1u32 << m..1u32 << (m + 1))
            .find(|&p| poly_irreducible(p))
            .expect("an irreducible polynomial of every degree exists");
        FieldGf2m { m, modulus }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.order() && b < self.order());
        reduce(clmul(a, b), self.modulus)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut base = a;
        let mut e = e;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The element `a` (the class of x) generates the polynomial basis.
    pub fn a(&self) -> u32 {
        2
    }

    /// Embedding into `F_2^m` points: coordinate `v_i` is the coefficient
    /// of `a^{i-1}`, so the point is the m-bit reversal of the element.
    pub fn point_of(&self, elem: u32) -> Point {
        elem.reverse_bits() >> (32 - self.m)
    }

    pub fn elem_of(&self, p: Point) -> u32 {
        p.reverse_bits() >> (32 - self.m)
    }
}

fn clmul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    let mut a = a as u64;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

fn reduce(mut v: u64, modulus: u32) -> u32 {
    let deg = 31 - modulus.leading_zeros();
    while v >> deg != 0 {
        let shift = 63 - v.leading_zeros() - deg;
        v ^= (modulus as u64) << shift;
    }
    v as u32
}

/// Irreducibility over F_2 by trial division by every lower-degree
/// polynomial of degree >= 1.
fn poly_irreducible(p: u32) -> bool {
    let deg = 31 - p.leading_zeros();
    if deg == 0 {
        return false;
    }
    for d in 2..1u32 << deg {
        if d < 2 {
            continue;
        }
        if poly_rem(p, d) == 0 {
            return false;
        }
    }
    true
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = 31 - b.leading_zeros();
    while a != 0 {
        let da = 31 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// A map `F_2^a -> F_2^b` tabulated over all inputs in idx order.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorialMap {
    in_dim: usize,
    out_dim: usize,
    table: Vec<u32>,
}

impl fmt::Debug for VectorialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorialMap({} -> {})", self.in_dim, self.out_dim)
    }
}

impl VectorialMap {
    pub fn new(in_dim: usize, out_dim: usize, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), 1 << in_dim);
        assert!(table.iter().all(|&v| out_dim == 32 || v < 1 << out_dim));
        VectorialMap {
            in_dim,
            out_dim,
            table,
        }
    }

    pub fn from_fn(in_dim: usize, out_dim: usize, f: impl Fn(u32) -> u32) -> Self {
        Self::new(in_dim, out_dim, (0..1u32 << in_dim).map(f).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |y| y)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, y: u32) -> u32 {
        self.table[y as usize]
    }

    pub fn is_permutation(&self) -> bool {
        if self.in_dim != self.out_dim {
            return false;
        }
        let mut seen = vec![false; self.table.len()];
        for &v in &self.table {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// The component function `y -> c . phi(y)`.
    pub fn component(&self, c: u32) -> crate::boolfn::BooleanFunction {
        crate::boolfn::BooleanFunction::from_fn(self.in_dim, |y| {
            (self.apply(y) & c).count_ones() & 1 == 1
        })
    }

    /// Derivative map `y -> phi(y+a) + phi(y)`.
    pub fn derivative(&self, a: u32) -> VectorialMap {
        Self::from_fn(self.in_dim, self.out_dim, |y| {
            self.apply(y ^ a) ^ self.apply(y)
        })
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.in_dim != other.in_dim || self.out_dim != other.out_dim {
            return Err(Error::ArityMismatch);
        }
        Ok(Self::new(
            self.in_dim,
            self.out_dim,
            self.table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a ^ b)
                .collect(),
        ))
    }

    /// Keeps the first `b` output coordinates (the most significant bits).
    pub fn truncate_outputs(&self, b: usize) -> Self {
        assert!(b <= self.out_dim);
        let shift = self.out_dim - b;
        Self::new(
            self.in_dim,
            b,
            self.table.iter().map(|&v| v >> shift).collect(),
        )
    }

    /// Concatenation of four maps over two appended selector variables,
    /// mirroring `BooleanFunction::concat4`.
    pub fn concat4(parts: [&VectorialMap; 4]) -> Result<Self> {
        let (a, b) = (parts[0].in_dim, parts[0].out_dim);
        if parts.iter().any(|p| p.in_dim != a || p.out_dim != b) {
            return Err(Error::ArityMismatch);
        }
        Ok(Self::from_fn(a + 2, b, |y| {
            parts[(y & 3) as usize].apply(y >> 2)
        }))
    }
}

/// The map `y -> alpha * y^d` over `GF(2^m)` as a table on `F_2^m` points.
pub fn monomial_map(field: &FieldGf2m, d: u64, alpha: u32) -> Result<VectorialMap> {
    if alpha == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let m = field.m();
    Ok(VectorialMap::from_fn(m, m, |p| {
        let y = field.elem_of(p);
        field.point_of(field.mul(alpha, field.pow(y, d)))
    }))
}
