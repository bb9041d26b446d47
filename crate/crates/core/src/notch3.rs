//! Classifier for facets of hulls of sets with notch at most 3: every such
//! facet, in switched form, is a box bound or matches one of five fixed
//! coefficient templates after scaling to a canonical right-hand level.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::geom::{switch_ineq, LinIneq, Switching};
use crate::rat::gcd_all;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetShape {
    Box,
    Form1,
    Form2,
    Form3,
    Form4,
    Form5,
}

impl FacetShape {
    pub fn label(self) -> &'static str {
        match self {
            FacetShape::Box => "BOX",
            FacetShape::Form1 => "FORM1",
            FacetShape::Form2 => "FORM2",
            FacetShape::Form3 => "FORM3",
            FacetShape::Form4 => "FORM4",
            FacetShape::Form5 => "FORM5",
        }
    }
}

/// A successful classification: the switching that produced nonnegative
/// coefficients, and the partition of coordinate indices by scaled
/// coefficient value. Every value used by the matched template is present as
/// a key, possibly with an empty index list; together the lists cover [n].
#[derive(Clone, Debug)]
pub struct Notch3Form {
    pub shape: FacetShape,
    pub switching: Switching,
    pub partition: BTreeMap<u32, Vec<usize>>,
}

/// Template table: target level, admissible coefficient values, and the side
/// condition on the value-class sizes.
const TEMPLATES: [(FacetShape, u32, &[u32]); 5] = [
    (FacetShape::Form1, 1, &[0, 1]),
    (FacetShape::Form2, 2, &[0, 1, 2]),
    (FacetShape::Form3, 3, &[1, 2, 3]),
    (FacetShape::Form4, 4, &[1, 2, 3, 4]),
    (FacetShape::Form5, 6, &[2, 3, 4, 6]),
];

fn side_condition(shape: FacetShape, count: impl Fn(u32) -> usize) -> bool {
    match shape {
        FacetShape::Box => true,
        FacetShape::Form1 => count(0) == 2,
        FacetShape::Form2 => count(0) <= 1,
        FacetShape::Form3 => count(1) >= 3,
        FacetShape::Form4 => count(1) == 2 && count(2) >= 1,
        FacetShape::Form5 => count(2) >= 3,
    }
}

/// Attempts to classify an inequality as a box bound or one of the five
/// templates. All switchings yielding nonnegative coefficients are searched
/// (zero coefficients leave the switching underdetermined); the switched row
/// is made primitive and then scaled up so its level hits each template's
/// target level in turn. Returns None when nothing matches.
pub fn classify_notch3_facet(q: &LinIneq) -> Option<Notch3Form> {
    let n = q.n();
    if q.is_zero() {
        return None;
    }
    for flip in 0..(1u64 << n) {
        let sw = switch_ineq(q, &Switching::new(n, flip)).expect("same dimension");
        if sw.coeffs.iter().any(|c| c.is_negative()) {
            continue;
        }
        // primitive nonnegative row: coefficients c >= 0, level = rhs
        let mut parts: Vec<BigInt> = sw.coeffs.clone();
        parts.push(sw.rhs.clone());
        let g = gcd_all(parts.iter());
        let (c0, level0): (Vec<BigInt>, BigInt) = if g.is_zero() {
            (sw.coeffs.clone(), sw.rhs.clone())
        } else {
            (sw.coeffs.iter().map(|x| x / &g).collect(), &sw.rhs / &g)
        };
        if let Some(form) = match_templates(n, &c0, &level0, flip) {
            return Some(form);
        }
    }
    None
}

fn match_templates(n: usize, c0: &[BigInt], level0: &BigInt, flip: u64) -> Option<Notch3Form> {
    if level0.is_zero() {
        // box bound: a single unit coefficient
        let ones: Vec<usize> = (0..n).filter(|&i| !c0[i].is_zero()).collect();
        if ones.len() == 1 && c0[ones[0]] == BigInt::from(1) {
            let mut partition = BTreeMap::new();
            partition.insert(1u32, ones.clone());
            partition.insert(0u32, (0..n).filter(|i| *i != ones[0]).collect());
            return Some(Notch3Form {
                shape: FacetShape::Box,
                switching: Switching::new(n, flip),
                partition,
            });
        }
        return None;
    }
    if level0.is_negative() {
        return None;
    }
    for (shape, target, allowed) in TEMPLATES {
        let target = BigInt::from(target);
        if (&target % level0).is_zero() {
            let k = &target / level0;
            let scaled: Vec<BigInt> = c0.iter().map(|x| x * &k).collect();
            let mut partition: BTreeMap<u32, Vec<usize>> =
                allowed.iter().map(|&v| (v, Vec::new())).collect();
            let mut ok = true;
            for (i, v) in scaled.iter().enumerate() {
                match allowed.iter().find(|&&a| BigInt::from(a) == *v) {
                    Some(&a) => partition.get_mut(&a).unwrap().push(i),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && side_condition(shape, |v| partition.get(&v).map_or(0, Vec::len)) {
                return Some(Notch3Form {
                    shape,
                    switching: Switching::new(n, flip),
                    partition,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ineq(coeffs: &[i64], rhs: i64) -> LinIneq {
        LinIneq::from_i64(coeffs, rhs)
    }

    fn classify(coeffs: &[i64], rhs: i64) -> Option<Notch3Form> {
        classify_notch3_facet(&ineq(coeffs, rhs))
    }

    #[test]
    fn box_bounds() {
        let f = classify(&[1, 0, 0], 0).unwrap();
        assert_eq!(f.shape, FacetShape::Box);
        assert_eq!(f.partition[&1], vec![0]);
        // upper bound x_0 <= 1 arrives as -x_0 >= -1
        let f = classify(&[-1, 0, 0], -1).unwrap();
        assert_eq!(f.shape, FacetShape::Box);
        assert_eq!(f.switching.flipped & 1, 1);
    }

    #[test]
    fn two_zero_coefficients_level_one() {
        let f = classify(&[0, 0, 1, 1], 1).unwrap();
        assert_eq!(f.shape, FacetShape::Form1);
        assert_eq!(f.partition[&0], vec![0, 1]);
        assert_eq!(f.partition[&1], vec![2, 3]);
    }

    #[test]
    fn all_ones_level_two() {
        let f = classify(&[1, 1, 1], 2).unwrap();
        assert_eq!(f.shape, FacetShape::Form2);
        assert_eq!(f.partition[&1], vec![0, 1, 2]);
        assert!(f.partition[&0].is_empty());
        assert!(f.partition[&2].is_empty());
    }

    #[test]
    fn scaling_reaches_template_level() {
        // primitive level 1 must be doubled to match the level-2 template
        let f = classify(&[1, 1, 1], 1).unwrap();
        assert_eq!(f.shape, FacetShape::Form2);
        assert_eq!(f.partition[&2], vec![0, 1, 2]);
        // and a non-primitive input reduces first
        let f = classify(&[2, 2, 2], 4).unwrap();
        assert_eq!(f.shape, FacetShape::Form2);
        assert_eq!(f.partition[&1], vec![0, 1, 2]);
    }

    #[test]
    fn mixed_heavy_template() {
        let f = classify(&[2, 2, 2, 3], 6).unwrap();
        assert_eq!(f.shape, FacetShape::Form5);
        assert_eq!(f.partition[&2], vec![0, 1, 2]);
        assert_eq!(f.partition[&3], vec![3]);
    }

    #[test]
    fn negative_coefficient_switches_in() {
        // a triangle edge: x_0 + x_1 - x_2 >= 0, switched via bit 2
        let f = classify(&[1, 1, -1], 0).unwrap();
        assert_eq!(f.shape, FacetShape::Form2);
        assert_eq!(f.switching.flipped, 0b100);
        assert_eq!(f.partition[&2], vec![0, 1, 2]);
    }

    #[test]
    fn non_matching_rows() {
        assert!(classify(&[3, 1], 3).is_none());
        assert!(classify(&[1, 2, 3, 4, 5], 7).is_none());
        assert!(classify(&[0, 0], 0).is_none());
        // level-0 non-box row
        assert!(classify(&[1, 1, 0], 0).is_none());
        // x_0 >= 1 in dimension 4: three zero coefficients fit no template
        assert!(classify(&[1, 0, 0, 0], 1).is_none());
    }

    #[test]
    fn side_conditions_enforced() {
        // level 4 with |I_1| = 3 misses the level-4 template
        assert!(classify(&[1, 1, 1, 4], 4).is_none());
        // but |I_1| = 2 with a 2 present matches
        let f = classify(&[1, 1, 2, 4], 4).unwrap();
        assert_eq!(f.shape, FacetShape::Form4);
    }
}
