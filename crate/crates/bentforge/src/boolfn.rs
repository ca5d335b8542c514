//! Boolean-function algebra on word-packed truth tables: ANF via the fast
//! Mobius transform, Walsh-Hadamard spectra, derivatives, bentness, duals,
//! affine composition and canonical 4-concatenation.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits;
use crate::{Error, Result};

/// An `n`-variable Boolean function stored as a `2^n`-bit truth table.
///
/// Bit at position `idx(v)` is `f(v)`, with `idx(v_1,...,v_n) = sum v_i 2^(n-i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, wt={})", self.n, self.weight())
    }
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 16, "at most 16 variables supported");
        BooleanFunction {
            n,
            words: vec![0; bits::words_for(n)],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> bool) -> Self {
        let mut out = Self::zero(n);
        for x in 0..out.domain_size() {
            out.set(x, f(x));
        }
        out
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn domain_size(&self) -> u32 {
        1 << self.n
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        bits::get(&self.words, x)
    }

    pub fn set(&mut self, x: u32, v: bool) {
        bits::set(&mut self.words, x, v);
    }

    pub fn weight(&self) -> u64 {
        bits::popcount(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Pointwise sum (XOR) of two functions on the same variables.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch);
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BooleanFunction { n: self.n, words })
    }

    /// `f + 1`, the pointwise complement.
    pub fn complement(&self) -> Self {
        let mask = self.valid_mask();
        let words = self.words.iter().map(|w| !w & mask).collect();
        BooleanFunction { n: self.n, words }
    }

    fn valid_mask(&self) -> u64 {
        if self.n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.n)) - 1
        }
    }

    /// The translate `x -> f(x + a)`.
    pub fn translate(&self, a: u32) -> Self {
        BooleanFunction {
            n: self.n,
            words: bits::xor_translate(&self.words, a),
        }
    }

    /// First-order derivative `D_a f(x) = f(x+a) + f(x)`.
    pub fn derivative(&self, a: u32) -> Self {
        let mut t = self.translate(a);
        for (w, s) in t.words.iter_mut().zip(&self.words) {
            *w ^= s;
        }
        t
    }

    /// True iff `D_a D_b f = 0`, i.e. `f(x)+f(x+a)+f(x+b)+f(x+a+b) = 0` for all `x`.
    pub fn second_derivative_vanishes(&self, a: u32, b: u32) -> bool {
        // D_b f is a-periodic exactly when the second derivative vanishes.
        let d = self.derivative(b);
        bits::invariant_under_xor(&d.words, a)
    }

    /// True iff `f(x+a) = f(x)` for all `x`.
    pub fn xor_periodic(&self, a: u32) -> bool {
        bits::invariant_under_xor(&self.words, a)
    }

    /// `D_a f` constant (possibly zero); returns the constant when it is.
    pub fn derivative_constant(&self, a: u32) -> Option<bool> {
        let d = self.derivative(a);
        if d.is_zero() {
            Some(false)
        } else if d.weight() == self.domain_size() as u64 {
            Some(true)
        } else {
            None
        }
    }

    pub fn walsh_transform(&self) -> WalshSpectrum {
        let size = self.domain_size() as usize;
        let mut values: Vec<i32> = (0..size)
            .map(|x| if self.get(x as u32) { -1 } else { 1 })
            .collect();
        let mut half = 1;
        while half < size {
            let mut start = 0;
            while start < size {
                for i in start..start + half {
                    let (a, b) = (values[i], values[i + half]);
                    values[i] = a + b;
                    values[i + half] = a - b;
                }
                start += 2 * half;
            }
            half *= 2;
        }
        WalshSpectrum { n: self.n, values }
    }

    pub fn classify_spectrum(&self) -> SpectrumClass {
        self.walsh_transform().classify()
    }

    pub fn is_bent(&self) -> bool {
        self.classify_spectrum().tag == SpectrumTag::Bent
    }

    /// Dual of a bent function: `f*(w) = 0` iff `W_f(w) = +2^(n/2)`.
    pub fn dual(&self) -> Result<Self> {
        let spectrum = self.walsh_transform();
        if spectrum.classify().tag != SpectrumTag::Bent {
            return Err(Error::NotBent);
        }
        let mut out = Self::zero(self.n);
        for (w, &v) in spectrum.values.iter().enumerate() {
            out.set(w as u32, v < 0);
        }
        Ok(out)
    }

    /// `g(x) = f(xA + b) + c.x + d` for invertible `A`.
    pub fn compose_affine(&self, a: &BitMatrix, b: u32, c: u32, d: bool) -> Result<Self> {
        if a.n != self.n {
            return Err(Error::ArityMismatch);
        }
        if !a.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let mut out = Self::zero(self.n);
        for x in 0..self.domain_size() {
            let v = self.get(a.apply(x) ^ b) ^ (((x & c).count_ones() & 1) == 1) ^ d;
            out.set(x, v);
        }
        Ok(out)
    }

    /// Canonical concatenation `f1 || f2 || f3 || f4` with the two selector
    /// variables appended as the least significant index bits:
    /// `F(x,0,0)=f1(x)`, `F(x,0,1)=f2(x)`, `F(x,1,0)=f3(x)`, `F(x,1,1)=f4(x)`.
    pub fn concat4(parts: [&BooleanFunction; 4]) -> Result<Self> {
        let n = parts[0].n;
        if parts.iter().any(|p| p.n != n) {
            return Err(Error::ArityMismatch);
        }
        let mut out = Self::zero(n + 2);
        for x in 0..1u32 << n {
            for (sel, part) in parts.iter().enumerate() {
                out.set((x << 2) | sel as u32, part.get(x));
            }
        }
        Ok(out)
    }

    /// Restriction fixing the two least significant (appended) variables.
    pub fn restrict_last2(&self, s1: bool, s2: bool) -> Self {
        assert!(self.n >= 2);
        let sel = ((s1 as u32) << 1) | s2 as u32;
        Self::from_fn(self.n - 2, |x| self.get((x << 2) | sel))
    }

    pub fn anf(&self) -> AnfPolynomial {
        AnfPolynomial::from_truth_table(self)
    }

    pub fn degree(&self) -> usize {
        self.anf()
            .monomials()
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `(wt(f), deg(f))`, with `deg(0) = 0` by convention.
    pub fn weight_and_degree(&self) -> (u64, usize) {
        (self.weight(), self.degree())
    }
}

/// ANF of an `n`-variable function: the set of exponent masks `u` with
/// `lambda_u = 1`, in the same `idx` packing as truth-table points
/// (mask bit `n-i` set iff `x_i` is present).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfPolynomial {
    n: usize,
    monomials: BTreeSet<u32>,
}

impl AnfPolynomial {
    pub fn new(n: usize, monomials: impl IntoIterator<Item = u32>) -> Self {
        let monomials: BTreeSet<u32> = monomials.into_iter().collect();
        assert!(monomials.iter().all(|&m| m < 1 << n));
        AnfPolynomial { n, monomials }
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &BTreeSet<u32> {
        &self.monomials
    }

    /// Truth table via the fast Mobius (zeta) transform.
    pub fn truth_table(&self) -> BooleanFunction {
        let mut f = BooleanFunction::zero(self.n);
        for &m in &self.monomials {
            f.set(m, !f.get(m));
        }
        mobius_in_place(&mut f);
        f
    }

    /// Inverse direction; the Mobius transform is an involution over F_2.
    pub fn from_truth_table(f: &BooleanFunction) -> Self {
        let mut t = f.clone();
        mobius_in_place(&mut t);
        let monomials = (0..t.domain_size()).filter(|&x| t.get(x)).collect();
        AnfPolynomial {
            n: f.n,
            monomials,
        }
    }

    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

fn mobius_in_place(f: &mut BooleanFunction) {
    let size = f.domain_size();
    for j in 0..f.n {
        let bit = 1u32 << j;
        for x in 0..size {
            if x & bit != 0 && f.get(x ^ bit) {
                f.set(x, !f.get(x));
            }
        }
    }
}

/// Walsh-Hadamard spectrum `W_f(w) = sum_x (-1)^(f(x)+w.x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn value(&self, w: u32) -> i32 {
        self.values[w as usize]
    }

    /// Distinct absolute spectrum values, sorted.
    pub fn distinct_abs_values(&self) -> Vec<u32> {
        let mut set: BTreeSet<u32> = self.values.iter().map(|v| v.unsigned_abs()).collect();
        set.remove(&u32::MAX); // unreachable, keeps clippy quiet about empty branch
        set.into_iter().collect()
    }

    pub fn classify(&self) -> SpectrumClass {
        let distinct = self.distinct_abs_values();
        let tag = if self.n.is_multiple_of(2) {
            let flat = 1u32 << (self.n / 2);
            let double = flat << 1;
            if distinct == [flat] {
                SpectrumTag::Bent
            } else if distinct.iter().all(|&v| v == 0 || v == double) {
                SpectrumTag::SemiBent
            } else if distinct.iter().all(|&v| v == 0 || v == flat || v == double) {
                SpectrumTag::FiveValued
            } else {
                SpectrumTag::Other
            }
        } else {
            SpectrumTag::Other
        };
        SpectrumClass {
            tag,
            distinct_abs_values: distinct,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumTag {
    Bent,
    SemiBent,
    FiveValued,
    Other,
}

impl fmt::Display for SpectrumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpectrumTag::Bent => "bent",
            SpectrumTag::SemiBent => "semi-bent",
            SpectrumTag::FiveValued => "five-valued",
            SpectrumTag::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumClass {
    pub tag: SpectrumTag,
    pub distinct_abs_values: Vec<u32>,
}

/// An `n x n` bit matrix acting on row vectors, `row i` = image of `e_i`
/// packed in the idx convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn new(n: usize, rows: Vec<u32>) -> Self {
        assert_eq!(rows.len(), n);
        BitMatrix { n, rows }
    }

    pub fn identity(n: usize) -> Self {
        // Coordinate v_i corresponds to index bit n-i.
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1u32 << (n - 1 - i)).collect(),
        }
    }

    /// Swap coordinates `i` and `j` (1-based).
    pub fn coordinate_swap(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows.swap(i - 1, j - 1);
        m
    }

    /// `x A` for a row vector `x`.
    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        for (i, &row) in self.rows.iter().enumerate() {
            if (x >> (self.n - 1 - i)) & 1 == 1 {
                out ^= row;
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for bit in (0..self.n).rev() {
            if let Some(p) = (rank..rows.len()).find(|&r| (rows[r] >> bit) & 1 == 1) {
                rows.swap(rank, p);
                let pivot = rows[rank];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && (*row >> bit) & 1 == 1 {
                        *row ^= pivot;
                    }
                }
                rank += 1;
            }
        }
        rank == self.n
    }
}
