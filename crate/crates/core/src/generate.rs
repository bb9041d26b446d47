//! Instance families: the rhs-1/2 and rhs-1 vertex-exclusion relaxations,
//! the bad-facet family, threshold/support point sets, and seeded random
//! point sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{LinIneq, PointSet, MAX_DIM};
use crate::polytope::HPolytope;
use crate::rat::{gcd_all, Rat};

/// SplitMix64: the pinned deterministic PRNG for every seeded suite and the
/// `random` generator. 64-bit state advanced by the golden-gamma constant,
/// output finalized by two xor-multiply rounds; identical streams on every
/// platform for a given seed.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in [0, bound); bound must be positive. The modulo
    /// bias is irrelevant at the tiny bounds used here.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    pub fn i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Box plus, per excluded vertex a, the doubled rhs-1/2 row
/// 2·(sum over a_i=0 of x_i) + 2·(sum over a_i=1 of (1-x_i)) >= 1.
pub fn worst_relaxation(s: &PointSet) -> HPolytope {
    exclusion_relaxation(s, 2, 1)
}

/// Box plus the rhs-1 rows (all coefficients of absolute value 1).
pub fn unit_relaxation(s: &PointSet) -> HPolytope {
    exclusion_relaxation(s, 1, 1)
}

fn exclusion_relaxation(s: &PointSet, scale: i64, rhs: i64) -> HPolytope {
    let n = s.n();
    let mut p = HPolytope::unit_box(n);
    for a in s.complement().members() {
        let mut coeffs = Vec::with_capacity(n);
        let mut right = BigInt::from(rhs);
        for i in 0..n {
            if (a >> i) & 1 == 1 {
                coeffs.push(BigInt::from(-scale));
                right -= BigInt::from(scale);
            } else {
                coeffs.push(BigInt::from(scale));
            }
        }
        p.ineqs.push(LinIneq::new(coeffs, right));
    }
    p
}

/// The family with bounded notch but exponential gap: dimension 2n+2,
/// threshold inequality c·x >= 2^(n+1) where c follows the halving
/// recurrence from c_1 = 2^n, c_2 = 2^(n-1).
#[derive(Clone, Debug)]
pub struct BadFacetInstance {
    pub n_param: usize,
    pub dim: usize,
    pub c: Vec<BigInt>,
    pub threshold: BigInt,
    pub facet: LinIneq,
    pub s: PointSet,
}

pub fn badfacet_instance(n: usize) -> Result<BadFacetInstance> {
    if n < 1 {
        return Err(Error::InvalidParameter("bad-facet parameter must be >= 1".into()));
    }
    let dim = 2 * n + 2;
    if dim > MAX_DIM {
        return Err(Error::InvalidParameter(format!(
            "bad-facet dimension {dim} exceeds the point-set cap {MAX_DIM}"
        )));
    }
    let two_n = BigInt::one() << n;
    // 1-based c[1..=2n+2]
    let mut c = vec![BigInt::zero(); dim + 1];
    c[1] = two_n.clone();
    c[2] = BigInt::one() << (n - 1);
    for i in 3..=2 * n + 1 {
        if i % 2 == 1 {
            c[i] = c[i - 1].clone();
        } else {
            let num = &two_n - &c[i - 1];
            let (q, r) = num.div_rem(&BigInt::from(2));
            if !r.is_zero() {
                return Err(Error::Construction(format!(
                    "halving step at index {i} is not integral"
                )));
            }
            c[i] = q;
        }
    }
    c[2 * n + 2] = &two_n - &c[2 * n + 1];

    // closed form c_{2i} = c_{2i+1} = (2^n - (-1)^i 2^(n-i)) / 3
    for i in 1..=n {
        let signed = if i % 2 == 0 {
            &two_n - (BigInt::one() << (n - i))
        } else {
            &two_n + (BigInt::one() << (n - i))
        };
        let (q, r) = signed.div_rem(&BigInt::from(3));
        if !r.is_zero() || c[2 * i] != q || c[2 * i + 1] != q {
            return Err(Error::Construction(format!(
                "closed form disagrees with the recurrence at pair {i}"
            )));
        }
    }
    let c: Vec<BigInt> = c[1..].to_vec();
    if !gcd_all(c.iter()).is_one() {
        return Err(Error::Construction("coefficient gcd is not 1".into()));
    }

    let threshold = BigInt::one() << (n + 1);
    let facet = LinIneq::new(c.clone(), threshold.clone());
    let s = PointSet::from_predicate(dim, |m| facet.holds_mask(m));
    Ok(BadFacetInstance { n_param: n, dim, c, threshold, facet, s })
}

/// {x in {0,1}^n : x_p + ... + x_n >= 1} (1-based p).
pub fn notch_p_example(n: usize, p: usize) -> Result<PointSet> {
    if p < 1 || p > n {
        return Err(Error::InvalidParameter(format!("need 1 <= p <= n, got p={p}, n={n}")));
    }
    PointSet::check_dim(n)?;
    let tail: u64 = ((1u64 << n) - 1) & !((1u64 << (p - 1)) - 1);
    Ok(PointSet::from_predicate(n, |m| m & tail != 0))
}

/// {x in {0,1}^n : |x| >= k}; k = n+1 gives the empty set.
pub fn support_at_least(n: usize, k: usize) -> Result<PointSet> {
    if k > n + 1 {
        return Err(Error::InvalidParameter(format!("need 0 <= k <= n+1, got k={k}, n={n}")));
    }
    PointSet::check_dim(n)?;
    Ok(PointSet::from_predicate(n, |m| m.count_ones() as usize >= k))
}

/// Seeded Bernoulli point set: vertex v (in increasing mask order) is
/// included iff draw_v / 2^64 < density, compared exactly in integers.
pub fn random_pointset(n: usize, density: &Rat, seed: u64) -> Result<PointSet> {
    if density.is_negative() || *density > Rat::one() {
        return Err(Error::InvalidParameter(format!("density {density} outside [0,1]")));
    }
    PointSet::check_dim(n)?;
    let mut rng = SplitMix64::new(seed);
    let num = density.numer().clone();
    let den = density.denom().clone();
    let scale = BigInt::one() << 64;
    let threshold = &num * &scale; // include iff r * den < num * 2^64
    Ok(PointSet::from_predicate(n, |_| {
        let r = BigInt::from(rng.next_u64());
        r * &den < threshold
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::is_valid;
    use crate::rat::{rat, ratio};

    #[test]
    fn splitmix_reference_stream() {
        // first outputs for seed 0 (reference values of the standard
        // SplitMix64 finalizer)
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn worst_relaxation_rows() {
        let s = PointSet::from_masks(2, [0b00, 0b01, 0b10]);
        let p = worst_relaxation(&s);
        assert_eq!(p.ineqs.len(), 5);
        assert_eq!(*p.ineqs.last().unwrap(), LinIneq::from_i64(&[-2, -2], -3));
        let full = worst_relaxation(&PointSet::full(3));
        assert_eq!(full.ineqs.len(), 6); // box only
    }

    #[test]
    fn unit_relaxation_rows() {
        let s = PointSet::from_masks(2, [0b00, 0b01, 0b10]);
        let p = unit_relaxation(&s);
        assert_eq!(*p.ineqs.last().unwrap(), LinIneq::from_i64(&[-1, -1], -1));
        assert!(p.norm_inf().is_one());
    }

    #[test]
    fn relaxations_cut_exactly_the_complement() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..60 {
            let n = 1 + (rng.below(5)) as usize;
            let s = PointSet::from_predicate(n, |_| rng.next_u64() & 1 == 1);
            assert_eq!(worst_relaxation(&s).integer_points(), s);
            assert_eq!(unit_relaxation(&s).integer_points(), s);
        }
    }

    #[test]
    fn unit_contained_in_worst() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..20 {
            let n = 1 + (rng.below(3)) as usize;
            let s = PointSet::from_predicate(n, |_| rng.next_u64() & 1 == 1);
            let unit = unit_relaxation(&s);
            for row in &worst_relaxation(&s).ineqs {
                assert!(is_valid(&unit, row).unwrap());
            }
        }
    }

    #[test]
    fn badfacet_small_values() {
        let b1 = badfacet_instance(1).unwrap();
        assert_eq!(b1.dim, 4);
        assert_eq!(b1.c, [2, 1, 1, 1].map(BigInt::from));
        assert_eq!(b1.threshold, BigInt::from(4));
        let b2 = badfacet_instance(2).unwrap();
        assert_eq!(b2.c, [4, 2, 2, 1, 1, 3].map(BigInt::from));
        assert_eq!(b2.threshold, BigInt::from(8));
        let b3 = badfacet_instance(3).unwrap();
        assert_eq!(b3.c, [8, 4, 4, 2, 2, 3, 3, 5].map(BigInt::from));
        assert_eq!(b3.threshold, BigInt::from(16));
        assert!(badfacet_instance(0).is_err());
    }

    #[test]
    fn badfacet_set_matches_threshold() {
        let b = badfacet_instance(2).unwrap();
        for m in b.s.members().take(20) {
            assert!(b.facet.eval_mask(m) >= b.threshold);
        }
        assert!(!b.s.is_empty() && !b.s.is_full());
    }

    #[test]
    fn notch_p_examples() {
        let s = notch_p_example(4, 1).unwrap();
        assert_eq!(s.len(), 15); // everything but the origin
        assert!(!s.contains(0));
        let t = notch_p_example(5, 3).unwrap();
        assert_eq!(t.len(), 32 - 4); // excluded: x3=x4=x5=0, 4 points
        assert!(notch_p_example(3, 0).is_err());
        assert!(notch_p_example(3, 4).is_err());
    }

    #[test]
    fn support_sets() {
        assert!(support_at_least(3, 0).unwrap().is_full());
        assert!(support_at_least(3, 4).unwrap().is_empty());
        let s = support_at_least(3, 2).unwrap();
        assert_eq!(s.members().collect::<Vec<_>>(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn random_pointset_contract() {
        assert!(random_pointset(4, &rat(1), 9).unwrap().is_full());
        assert!(random_pointset(4, &rat(0), 9).unwrap().is_empty());
        let a = random_pointset(4, &ratio(1, 2), 7).unwrap();
        let b = random_pointset(4, &ratio(1, 2), 7).unwrap();
        assert_eq!(a, b);
        assert!(random_pointset(4, &ratio(3, 2), 7).is_err());
    }
}
