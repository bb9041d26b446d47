//! Points, point sets, faces, switchings and integer linear inequalities on
//! the 0/1 cube.
//!
//! Vertex indexing convention, used everywhere including all I/O: coordinate
//! i (0-based in code) is bit i of the vertex bitmask, i.e. the first
//! coordinate is the least significant bit.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{ceil_div, gcd_all, Rat};

/// Largest cube dimension we store point sets for (the bitset has 2^n bits).
pub const MAX_DIM: usize = 20;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// A vertex of {0,1}^n, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CubePoint {
    pub n: usize,
    pub mask: u64,
}

impl CubePoint {
    pub fn new(n: usize, mask: u64) -> Self {
        debug_assert!(n <= MAX_DIM && (n == 64 || mask < (1u64 << n)));
        CubePoint { n, mask }
    }

    pub fn bit(&self, i: usize) -> u8 {
        ((self.mask >> i) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.bit(i)).collect()
    }

    pub fn coords(&self) -> Vec<Rat> {
        (0..self.n).map(|i| Rat::from(BigInt::from(self.bit(i)))).collect()
    }

    pub fn support(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn hamming(&self, other: &CubePoint) -> u32 {
        (self.mask ^ other.mask).count_ones()
    }
}

impl std::fmt::Display for CubePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

/// A subset S of {0,1}^n as a bitset over all 2^n vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    n: usize,
    blocks: Vec<u64>,
}

impl PointSet {
    fn block_count(n: usize) -> usize {
        if n >= 6 {
            1usize << (n - 6)
        } else {
            1
        }
    }

    pub fn check_dim(n: usize) -> Result<()> {
        if n > MAX_DIM {
            Err(Error::DimensionTooLarge { n, max: MAX_DIM })
        } else {
            Ok(())
        }
    }

    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds bitset capacity");
        PointSet { n, blocks: vec![0; Self::block_count(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        let total = 1u64 << n;
        for v in 0..total {
            s.insert(v);
        }
        s
    }

    pub fn from_masks<I: IntoIterator<Item = u64>>(n: usize, masks: I) -> Self {
        let mut s = Self::empty(n);
        for m in masks {
            s.insert(m);
        }
        s
    }

    /// All x in {0,1}^n with pred(x) true.
    pub fn from_predicate<F: FnMut(u64) -> bool>(n: usize, mut pred: F) -> Self {
        let mut s = Self::empty(n);
        for v in 0..(1u64 << n) {
            if pred(v) {
                s.insert(v);
            }
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn insert(&mut self, mask: u64) {
        debug_assert!(mask < self.vertex_count());
        self.blocks[(mask >> 6) as usize] |= 1u64 << (mask & 63);
    }

    pub fn remove(&mut self, mask: u64) {
        self.blocks[(mask >> 6) as usize] &= !(1u64 << (mask & 63));
    }

    pub fn contains(&self, mask: u64) -> bool {
        debug_assert!(mask < self.vertex_count());
        (self.blocks[(mask >> 6) as usize] >> (mask & 63)) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        let full_bits: u64 = self.blocks.iter().map(|b| b.count_ones() as u64).sum();
        if self.n < 6 {
            (self.blocks[0] & ((1u64 << (1 << self.n)) - 1)).count_ones() as u64
        } else {
            full_bits
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.vertex_count()
    }

    pub fn complement(&self) -> PointSet {
        Self::from_predicate(self.n, |v| !self.contains(v))
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.vertex_count()).filter(move |&v| self.contains(v))
    }

    pub fn points(&self) -> Vec<CubePoint> {
        self.members().map(|m| CubePoint::new(self.n, m)).collect()
    }

    /// Relabel coordinates: bit i of the result is bit perm[i] of the input.
    pub fn apply_perm(&self, perm: &[usize]) -> PointSet {
        assert_eq!(perm.len(), self.n);
        Self::from_masks(
            self.n,
            self.members().map(|m| {
                let mut out = 0u64;
                for (i, &p) in perm.iter().enumerate() {
                    out |= ((m >> p) & 1) << i;
                }
                out
            }),
        )
    }
}

/// A coordinate-flip symmetry of the cube: x_j -> 1 - x_j on flipped bits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Switching {
    pub n: usize,
    pub flipped: u64,
}

impl Switching {
    pub fn new(n: usize, flipped: u64) -> Self {
        debug_assert!(n == 64 || flipped < (1u64 << n));
        Switching { n, flipped }
    }

    pub fn identity(n: usize) -> Self {
        Switching { n, flipped: 0 }
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        mask ^ self.flipped
    }
}

pub fn switch_points(s: &PointSet, f: &Switching) -> Result<PointSet> {
    if f.n != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: f.n });
    }
    Ok(PointSet::from_masks(s.n(), s.members().map(|m| f.apply_mask(m))))
}

/// An integer linear inequality a·x >= rhs over R^n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinIneq {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

/// Which primitive normalization to apply; the two differ when the gcd of
/// the coefficients does not divide the right-hand side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimitiveMode {
    /// Divide coefficients and rhs by their common gcd: the unique primitive
    /// representative of the same boundary hyperplane.
    Halfspace,
    /// Divide by the coefficient gcd g and round the rhs up to ceil(rhs/g):
    /// the normalization a cutting-plane round applies.
    CgNormalize,
}

impl LinIneq {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Self {
        LinIneq { coeffs, rhs }
    }

    pub fn from_i64(coeffs: &[i64], rhs: i64) -> Self {
        LinIneq {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            rhs: BigInt::from(rhs),
        }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval_mask(&self, mask: u64) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                acc += c;
            }
        }
        acc
    }

    pub fn holds_mask(&self, mask: u64) -> bool {
        self.eval_mask(mask) >= self.rhs
    }

    pub fn eval_point(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.n());
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, xi)| Rat::from(c.clone()) * xi)
            .sum()
    }

    pub fn holds_point(&self, x: &[Rat]) -> bool {
        self.eval_point(x) >= Rat::from(self.rhs.clone())
    }

    pub fn norm_inf(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The switched view (I, J, c, delta): flip every negative coordinate so
    /// all coefficients become nonnegative. Returns the flip mask, the
    /// nonnegative coefficient vector and the switched right-hand side
    /// delta = rhs - sum of negative coefficients.
    pub fn switched_view(&self) -> (u64, Vec<BigInt>, BigInt) {
        let mut flip = 0u64;
        let mut c = Vec::with_capacity(self.n());
        let mut delta = self.rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_negative() {
                flip |= 1u64 << i;
                delta -= a;
                c.push(-a);
            } else {
                c.push(a.clone());
            }
        }
        (flip, c, delta)
    }
}

impl std::fmt::Display for LinIneq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_one() {
                    write!(f, "x{}", i + 1)?;
                } else if *c == BigInt::from(-1) {
                    write!(f, "-x{}", i + 1)?;
                } else {
                    write!(f, "{} x{}", c, i + 1)?;
                }
                first = false;
            } else if c.is_negative() {
                if *c == BigInt::from(-1) {
                    write!(f, " - x{}", i + 1)?;
                } else {
                    write!(f, " - {} x{}", -c, i + 1)?;
                }
            } else if c.is_one() {
                write!(f, " + x{}", i + 1)?;
            } else {
                write!(f, " + {} x{}", c, i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " >= {}", self.rhs)
    }
}

pub fn switch_ineq(q: &LinIneq, f: &Switching) -> Result<LinIneq> {
    if f.n != q.n() {
        return Err(Error::DimensionMismatch { expected: q.n(), found: f.n });
    }
    let mut coeffs = q.coeffs.clone();
    let mut rhs = q.rhs.clone();
    for i in 0..q.n() {
        if (f.flipped >> i) & 1 == 1 {
            rhs -= &coeffs[i];
            let neg = -coeffs[i].clone();
            coeffs[i] = neg;
        }
    }
    Ok(LinIneq::new(coeffs, rhs))
}

pub fn primitive_form(q: &LinIneq, mode: PrimitiveMode) -> Result<LinIneq> {
    if q.is_zero() {
        return Err(Error::ZeroCoefficients);
    }
    match mode {
        PrimitiveMode::Halfspace => {
            let g = gcd_all(q.coeffs.iter().chain(std::iter::once(&q.rhs)));
            if g <= BigInt::one() {
                return Ok(q.clone());
            }
            Ok(LinIneq::new(
                q.coeffs.iter().map(|c| c / &g).collect(),
                &q.rhs / &g,
            ))
        }
        PrimitiveMode::CgNormalize => {
            let g = gcd_all(q.coeffs.iter());
            if g.is_one() {
                return Ok(q.clone());
            }
            Ok(LinIneq::new(
                q.coeffs.iter().map(|c| c / &g).collect(),
                ceil_div(&q.rhs, &g),
            ))
        }
    }
}

/// True iff the 0/1 points on the boundary hyperplane a·x = rhs have affine
/// hull of dimension n-1.
pub fn spanned_by_01(q: &LinIneq) -> bool {
    let n = q.n();
    assert!(n >= 1 && n <= MAX_DIM);
    assert!(!q.is_zero());
    let incident: Vec<Vec<Rat>> = (0..(1u64 << n))
        .filter(|&m| q.eval_mask(m) == q.rhs)
        .map(|m| CubePoint::new(n, m).coords())
        .collect();
    if incident.is_empty() {
        return false;
    }
    crate::linalg::affine_rank(&incident) == n - 1
}

/// A face of [0,1]^n given by fixing a subset of coordinates to 0/1 values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CubeFace {
    pub n: usize,
    /// Bits set on the fixed coordinates.
    pub fixed: u64,
    /// The fixed values; subset of `fixed`.
    pub values: u64,
}

impl CubeFace {
    pub fn new(n: usize, fixed: u64, values: u64) -> Self {
        debug_assert!(values & !fixed == 0);
        debug_assert!(n == 64 || fixed < (1u64 << n));
        CubeFace { n, fixed, values }
    }

    pub fn dim(&self) -> usize {
        self.n - self.fixed.count_ones() as usize
    }

    /// Vertex bitmasks of the face, in increasing order.
    pub fn vertices(&self) -> Vec<u64> {
        let free = !self.fixed & ((1u64 << self.n) - 1);
        let mut out = Vec::with_capacity(1 << self.dim());
        // enumerate submasks of `free` in increasing order
        let mut sub = 0u64;
        loop {
            out.push(sub | self.values);
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
        out.sort_unstable();
        out
    }
}

pub fn enumerate_faces(n: usize, d: usize) -> Result<Vec<CubeFace>> {
    if d > n {
        return Err(Error::FaceDimOutOfRange { n, d });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let fix_size = (n - d) as u32;
    let mut faces = Vec::new();
    for fixed in 0..=all {
        if fixed.count_ones() != fix_size {
            continue;
        }
        // all value assignments on the fixed coordinates
        let mut vals = 0u64;
        loop {
            faces.push(CubeFace::new(n, fixed, vals));
            if vals == fixed {
                break;
            }
            vals = (vals.wrapping_sub(fixed)) & fixed;
        }
    }
    Ok(faces)
}

pub fn face_intersects(face: &CubeFace, s: &PointSet) -> Result<bool> {
    if face.n != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: face.n });
    }
    Ok(face.vertices().into_iter().any(|v| s.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::SplitMix64;
    use crate::rat::int;

    #[test]
    fn pointset_basics() {
        let mut s = PointSet::empty(3);
        assert!(s.is_empty());
        s.insert(0b101);
        s.insert(0b011);
        assert_eq!(s.len(), 2);
        assert!(s.contains(5) && s.contains(3) && !s.contains(0));
        assert_eq!(s.complement().len(), 6);
        assert!(PointSet::full(4).is_full());
        let t = PointSet::from_predicate(3, |v| v.count_ones() >= 2);
        assert_eq!(t.members().collect::<Vec<_>>(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn switch_points_identity_and_flip() {
        let s = PointSet::from_masks(2, [0b00]);
        let id = Switching::identity(2);
        assert_eq!(switch_points(&s, &id).unwrap(), s);
        let f = Switching::new(2, 0b01);
        let t = switch_points(&s, &f).unwrap();
        assert_eq!(t.members().collect::<Vec<_>>(), vec![0b01]);
    }

    #[test]
    fn switch_points_is_involution() {
        let mut rng = SplitMix64::new(0xfeed);
        for _ in 0..100 {
            let n = 1 + (rng.next_u64() % 6) as usize;
            let s = PointSet::from_predicate(n, |_| rng.next_u64() & 1 == 1);
            let f = Switching::new(n, rng.next_u64() & ((1 << n) - 1));
            let round = switch_points(&switch_points(&s, &f).unwrap(), &f).unwrap();
            assert_eq!(round, s);
        }
    }

    #[test]
    fn switch_points_rejects_dim_mismatch() {
        let s = PointSet::empty(3);
        let f = Switching::identity(2);
        assert!(switch_points(&s, &f).is_err());
    }

    #[test]
    fn switch_ineq_examples() {
        let q = LinIneq::from_i64(&[1, 1], 1);
        let f = Switching::new(2, 0b10);
        let sw = switch_ineq(&q, &f).unwrap();
        assert_eq!(sw, LinIneq::from_i64(&[1, -1], 0));
        let id = Switching::identity(2);
        assert_eq!(switch_ineq(&q, &id).unwrap(), q);
    }

    #[test]
    fn switching_commutes_with_satisfaction() {
        // exhaustive over {0,1}^4 for a few inequalities and all switchings
        let qs = [
            LinIneq::from_i64(&[1, -2, 3, 0], 1),
            LinIneq::from_i64(&[2, 2, -1, 5], 3),
            LinIneq::from_i64(&[0, 0, 1, 1], 1),
        ];
        for q in &qs {
            for flip in 0..16u64 {
                let f = Switching::new(4, flip);
                let sw = switch_ineq(q, &f).unwrap();
                for x in 0..16u64 {
                    assert_eq!(q.holds_mask(x), sw.holds_mask(f.apply_mask(x)));
                }
            }
        }
    }

    #[test]
    fn face_counts() {
        assert_eq!(enumerate_faces(2, 2).unwrap().len(), 1);
        assert_eq!(enumerate_faces(2, 1).unwrap().len(), 4);
        assert_eq!(enumerate_faces(3, 1).unwrap().len(), 12);
        assert!(enumerate_faces(2, 3).is_err());
    }

    #[test]
    fn face_counts_match_formula_and_are_distinct() {
        for n in 0..=6usize {
            for d in 0..=n {
                let faces = enumerate_faces(n, d).unwrap();
                let want = binomial(n, d) * (1u64 << (n - d));
                assert_eq!(faces.len() as u64, want, "n={n} d={d}");
                let set: std::collections::HashSet<_> = faces.iter().collect();
                assert_eq!(set.len(), faces.len());
                assert!(faces.iter().all(|f| f.dim() == d));
            }
        }
    }

    #[test]
    fn face_intersection_cases() {
        let s = PointSet::from_predicate(3, |v| v.count_ones() >= 2);
        let whole = CubeFace::new(3, 0, 0);
        assert!(face_intersects(&whole, &s).unwrap());
        let empty = PointSet::empty(3);
        assert!(!face_intersects(&whole, &empty).unwrap());
        // x1 = 0, x2 = 0: vertices 000 and 100 (mask 0 and 4) — support <= 1
        let f = CubeFace::new(3, 0b011, 0b000);
        assert_eq!(f.vertices(), vec![0, 4]);
        assert!(!face_intersects(&f, &s).unwrap());
    }

    #[test]
    fn primitive_form_modes() {
        let q = LinIneq::from_i64(&[2, 2, 2], 4);
        assert_eq!(
            primitive_form(&q, PrimitiveMode::Halfspace).unwrap(),
            LinIneq::from_i64(&[1, 1, 1], 2)
        );
        let coprime = LinIneq::from_i64(&[4, 2, 2, 1, 1, 3], 8);
        assert_eq!(primitive_form(&coprime, PrimitiveMode::Halfspace).unwrap(), coprime);
        let odd = LinIneq::from_i64(&[3, 3], 2);
        assert_eq!(primitive_form(&odd, PrimitiveMode::Halfspace).unwrap(), odd);
        // CG mode rounds the rhs up after dividing by the coefficient gcd
        let cg = LinIneq::from_i64(&[2, 2], 1);
        assert_eq!(
            primitive_form(&cg, PrimitiveMode::CgNormalize).unwrap(),
            LinIneq::from_i64(&[1, 1], 1)
        );
        assert!(primitive_form(&LinIneq::from_i64(&[0, 0], 1), PrimitiveMode::Halfspace).is_err());
    }

    #[test]
    fn primitive_form_idempotent() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..200 {
            let n = 1 + (rng.next_u64() % 5) as usize;
            let coeffs: Vec<i64> = (0..n).map(|_| (rng.next_u64() % 21) as i64 - 10).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let rhs = (rng.next_u64() % 21) as i64 - 10;
            let q = LinIneq::from_i64(&coeffs, rhs);
            for mode in [PrimitiveMode::Halfspace, PrimitiveMode::CgNormalize] {
                let once = primitive_form(&q, mode).unwrap();
                let twice = primitive_form(&once, mode).unwrap();
                assert_eq!(once, twice);
            }
        }
    }

    #[test]
    fn spanned_examples() {
        // x1+x2+x3 = 2 has the three affinely independent incident points
        assert!(spanned_by_01(&LinIneq::from_i64(&[1, 1, 1], 2)));
        // 2x1 = 1 passes through no 0/1 point
        assert!(!spanned_by_01(&LinIneq::from_i64(&[2, 0, 0], 1)));
        // x1 = 0 in R^3 is spanned by the 4 face vertices
        assert!(spanned_by_01(&LinIneq::from_i64(&[1, 0, 0], 0)));
    }

    #[test]
    fn spanned_invariance() {
        let qs = [
            LinIneq::from_i64(&[1, 1, 1], 2),
            LinIneq::from_i64(&[1, -1, 0], 0),
            LinIneq::from_i64(&[2, 0, 0], 1),
            LinIneq::from_i64(&[1, 2, 2], 3),
        ];
        for q in &qs {
            let base = spanned_by_01(q);
            for flip in 0..8u64 {
                let sw = switch_ineq(q, &Switching::new(3, flip)).unwrap();
                assert_eq!(spanned_by_01(&sw), base, "{q} flip {flip}");
            }
            for k in 2..5i64 {
                let scaled = LinIneq::new(
                    q.coeffs.iter().map(|c| c * int(k)).collect(),
                    &q.rhs * int(k),
                );
                assert_eq!(spanned_by_01(&scaled), base);
            }
        }
    }

    #[test]
    fn switched_view_roundtrip() {
        let q = LinIneq::from_i64(&[2, -3, 0, 1], -1);
        let (flip, c, delta) = q.switched_view();
        assert_eq!(flip, 0b0010);
        assert_eq!(c, vec![int(2), int(3), int(0), int(1)]);
        assert_eq!(delta, int(2));
        // switching by the flip mask must produce exactly (c, delta)
        let sw = switch_ineq(&q, &Switching::new(4, flip)).unwrap();
        assert_eq!(sw.coeffs, c);
        assert_eq!(sw.rhs, delta);
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
    }
}
