//! H- and V-descriptions of rational polytopes contained in the unit box.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geom::{primitive_form, LinIneq, PointSet, PrimitiveMode};
use crate::linalg;
use crate::rat::{primitive_int_vec, Rat};

/// An integer linear equation a·x = rhs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinEq {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl LinEq {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Self {
        LinEq { coeffs, rhs }
    }

    pub fn from_i64(coeffs: &[i64], rhs: i64) -> Self {
        LinEq {
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
        self.eval_mask(mask) == self.rhs
    }

    pub fn eval_point(&self, x: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, xi)| Rat::from(c.clone()) * xi)
            .sum()
    }

    pub fn holds_point(&self, x: &[Rat]) -> bool {
        self.eval_point(x) == Rat::from(self.rhs.clone())
    }
}

/// Intersection of integer inequalities a·x >= b and equations a·x = b.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPolytope {
    pub n: usize,
    pub ineqs: Vec<LinIneq>,
    pub eqs: Vec<LinEq>,
}

impl HPolytope {
    pub fn new(n: usize, ineqs: Vec<LinIneq>, eqs: Vec<LinEq>) -> Self {
        debug_assert!(ineqs.iter().all(|q| q.n() == n));
        debug_assert!(eqs.iter().all(|e| e.n() == n));
        HPolytope { n, ineqs, eqs }
    }

    /// The unit box [0,1]^n: x_i >= 0 and -x_i >= -1.
    pub fn unit_box(n: usize) -> Self {
        let mut ineqs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut lo = vec![BigInt::zero(); n];
            lo[i] = BigInt::one();
            ineqs.push(LinIneq::new(lo, BigInt::zero()));
            let mut hi = vec![BigInt::zero(); n];
            hi[i] = -BigInt::one();
            ineqs.push(LinIneq::new(hi, -BigInt::one()));
        }
        HPolytope::new(n, ineqs, Vec::new())
    }

    /// The canonical description of the empty set: 0·x >= 1.
    pub fn infeasible(n: usize) -> Self {
        HPolytope::new(
            n,
            vec![LinIneq::new(vec![BigInt::zero(); n], BigInt::one())],
            Vec::new(),
        )
    }

    pub fn is_canonical_infeasible(&self) -> bool {
        self.eqs.is_empty()
            && self.ineqs.len() == 1
            && self.ineqs[0].is_zero()
            && self.ineqs[0].rhs.is_one()
    }

    /// Same polytope with any missing unit-box rows appended.
    pub fn with_box(&self) -> HPolytope {
        let mut out = self.clone();
        let have: std::collections::HashSet<LinIneq> = out
            .ineqs
            .iter()
            .filter(|q| !q.is_zero())
            .map(|q| primitive_form(q, PrimitiveMode::Halfspace).unwrap())
            .collect();
        for row in HPolytope::unit_box(self.n).ineqs {
            if !have.contains(&row) {
                out.ineqs.push(row);
            }
        }
        out
    }

    /// Max absolute coefficient over all rows (the matrix norm ‖A‖∞ used by
    /// the cut-enumeration bound); rhs entries do not count.
    pub fn norm_inf(&self) -> BigInt {
        let mut m = BigInt::zero();
        for q in &self.ineqs {
            m = m.max(q.norm_inf());
        }
        for e in &self.eqs {
            for c in &e.coeffs {
                m = m.max(c.abs());
            }
        }
        m
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|q| q.holds_point(x))
            && self.eqs.iter().all(|e| e.holds_point(x))
    }

    pub fn holds_mask(&self, mask: u64) -> bool {
        self.ineqs.iter().all(|q| q.holds_mask(mask))
            && self.eqs.iter().all(|e| e.holds_mask(mask))
    }

    /// The 0/1 points satisfying every row.
    pub fn integer_points(&self) -> PointSet {
        PointSet::from_predicate(self.n, |m| self.holds_mask(m))
    }

    /// Deterministic normal form: inequalities halfspace-primitive, sorted
    /// lexicographically by (coeffs, rhs) and deduplicated; equations reduced
    /// to a primitive integer echelon basis. An inconsistent equation system
    /// collapses to the canonical infeasible description.
    pub fn canonicalized(&self) -> HPolytope {
        let n = self.n;
        // equations: rational RREF of [A | b], then primitive integer rows
        let mut eq_rows: Vec<Vec<Rat>> = self
            .eqs
            .iter()
            .map(|e| {
                let mut row: Vec<Rat> =
                    e.coeffs.iter().map(|c| Rat::from(c.clone())).collect();
                row.push(Rat::from(e.rhs.clone()));
                row
            })
            .collect();
        let pivots = linalg::rref(&mut eq_rows);
        if pivots.last() == Some(&n) {
            return HPolytope::infeasible(n);
        }
        let mut eqs: Vec<LinEq> = eq_rows
            .iter()
            .map(|row| {
                let ints = primitive_int_vec(row);
                let rhs = ints[n].clone();
                LinEq::new(ints[..n].to_vec(), rhs)
            })
            .collect();
        eqs.sort_by(|a, b| (&a.coeffs, &a.rhs).cmp(&(&b.coeffs, &b.rhs)));

        let mut ineqs: Vec<LinIneq> = Vec::new();
        for q in &self.ineqs {
            if q.is_zero() {
                if q.rhs.is_positive() {
                    return HPolytope::infeasible(n);
                }
                continue; // 0 >= nonpositive is vacuous
            }
            ineqs.push(primitive_form(q, PrimitiveMode::Halfspace).unwrap());
        }
        ineqs.sort_by(|a, b| (&a.coeffs, &a.rhs).cmp(&(&b.coeffs, &b.rhs)));
        ineqs.dedup();
        HPolytope::new(n, ineqs, eqs)
    }
}

/// A polytope given by its exact rational vertex list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VPolytope {
    pub n: usize,
    pub vertices: Vec<Vec<Rat>>,
}

impl VPolytope {
    /// Builds the sorted, deduplicated vertex list.
    pub fn new(n: usize, mut vertices: Vec<Vec<Rat>>) -> Self {
        debug_assert!(vertices.iter().all(|v| v.len() == n));
        vertices.sort();
        vertices.dedup();
        VPolytope { n, vertices }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices that are 0/1 points, as a PointSet.
    pub fn integral_vertices(&self) -> PointSet {
        PointSet::from_masks(
            self.n,
            self.vertices.iter().filter_map(|v| {
                let mut mask = 0u64;
                for (i, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    } else if x.is_one() {
                        mask |= 1u64 << i;
                    } else {
                        return None;
                    }
                }
                Some(mask)
            }),
        )
    }

    /// True iff every vertex is a 0/1 point.
    pub fn is_integral(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|x| x.is_zero() || x.is_one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn box_contains_cube_points() {
        let b = HPolytope::unit_box(3);
        assert_eq!(b.ineqs.len(), 6);
        assert_eq!(b.integer_points().len(), 8);
        assert!(b.contains(&[ratio(1, 2), rat(0), rat(1)]));
        assert!(!b.contains(&[ratio(3, 2), rat(0), rat(0)]));
    }

    #[test]
    fn infeasible_is_canonical() {
        let p = HPolytope::infeasible(2);
        assert!(p.is_canonical_infeasible());
        assert!(p.integer_points().is_empty());
    }

    #[test]
    fn with_box_appends_missing_rows_only() {
        let p = HPolytope::new(2, vec![LinIneq::from_i64(&[1, 0], 0)], Vec::new());
        let boxed = p.with_box();
        assert_eq!(boxed.ineqs.len(), 4); // x1>=0 kept once
        let again = boxed.with_box();
        assert_eq!(again.ineqs.len(), 4);
    }

    #[test]
    fn canonicalized_sorts_and_dedupes() {
        let p = HPolytope::new(
            2,
            vec![
                LinIneq::from_i64(&[2, 2], 2),
                LinIneq::from_i64(&[1, 1], 1),
                LinIneq::from_i64(&[0, 0], -3),
            ],
            vec![LinEq::from_i64(&[0, 2], 2)],
        );
        let c = p.canonicalized();
        assert_eq!(c.ineqs, vec![LinIneq::from_i64(&[1, 1], 1)]);
        assert_eq!(c.eqs, vec![LinEq::from_i64(&[0, 1], 1)]);
    }

    #[test]
    fn canonicalized_detects_contradiction() {
        let p = HPolytope::new(
            2,
            Vec::new(),
            vec![LinEq::from_i64(&[1, 1], 0), LinEq::from_i64(&[1, 1], 1)],
        );
        assert!(p.canonicalized().is_canonical_infeasible());
        let q = HPolytope::new(2, vec![LinIneq::from_i64(&[0, 0], 1)], Vec::new());
        assert!(q.canonicalized().is_canonical_infeasible());
    }

    #[test]
    fn vpolytope_dedupes_and_sorts() {
        let v = VPolytope::new(
            2,
            vec![
                vec![rat(1), rat(0)],
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
            ],
        );
        assert_eq!(v.vertices.len(), 2);
        assert_eq!(v.vertices[0], vec![rat(0), rat(0)]);
        assert!(v.is_integral());
        assert_eq!(v.integral_vertices().members().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn norm_ignores_rhs() {
        let p = HPolytope::new(
            2,
            vec![LinIneq::from_i64(&[2, -3], 100)],
            vec![LinEq::from_i64(&[0, 1], -50)],
        );
        assert_eq!(p.norm_inf(), BigInt::from(3));
    }
}
