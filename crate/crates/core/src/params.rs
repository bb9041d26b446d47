//! The two combinatorial parameters of a subset of the 0/1 cube — notch and
//! gap — plus optimization over the set through a membership oracle.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{
    binomial, enumerate_faces, face_intersects, primitive_form, spanned_by_01, CubePoint, LinIneq,
    PointSet, PrimitiveMode,
};
use crate::hull::{hull_facets, vertices, PolytopeDD};
use crate::polytope::HPolytope;
use crate::rat::Rat;

/// Smallest p such that every p-dimensional face of the cube contains a point
/// of S. The empty set yields n+1 (no face of any dimension meets it).
pub fn notch(s: &PointSet) -> usize {
    let n = s.n();
    'dims: for d in 0..=n {
        for f in enumerate_faces(n, d).expect("d <= n") {
            if !face_intersects(&f, s).expect("dimensions agree") {
                continue 'dims;
            }
        }
        return d;
    }
    n + 1
}

/// Iterative-deepening search ceiling on the gap value.
pub const GAP_DELTA_CAP: u64 = 64;
/// Dimension guard for the general (deepening) gap search.
pub const GAP_MAX_DIM: usize = 8;

#[derive(Clone, Debug)]
pub struct GapCertificate {
    pub delta: BigInt,
    /// System of switched-form inequalities (stored expanded) whose solution
    /// set is exactly conv(S), each with right-hand level at most `delta`.
    pub witness_system: Vec<LinIneq>,
    /// For nonempty S a facet realizing the maximum level, witnessing that no
    /// smaller bound suffices.
    pub lower_bound_facet: Option<LinIneq>,
}

/// Switched right-hand level of an inequality: rewrite with nonnegative
/// coefficients by substituting 1-x_j on the negative support.
fn switched_level(q: &LinIneq) -> BigInt {
    q.switched_view().2
}

/// The gap of S: the least D such that conv(S) is cut out by switched-form
/// inequalities with nonnegative integer coefficients, right-hand side at
/// most D, and 0/1-spanned hyperplanes. Full sets give 0, the empty set 1.
///
/// Full-dimensional hulls are handled directly from the facet description:
/// every facet must appear in any defining system, facet rows are already
/// primitive and 0/1-spanned, and rescaling only raises the level, so the
/// answer is the maximum switched level over facets. Lower-dimensional and
/// empty sets fall back to the deepening search.
pub fn gap(s: &PointSet) -> Result<GapCertificate> {
    let hull = hull_facets(s);
    if hull.eqs.is_empty() && !s.is_empty() {
        let mut best: Option<(BigInt, LinIneq)> = None;
        for q in &hull.ineqs {
            let d = switched_level(q);
            debug_assert!(
                !d.is_negative(),
                "facet of a 0/1 polytope has nonnegative switched level"
            );
            if best.as_ref().map_or(true, |(b, _)| d > *b) {
                best = Some((d.clone(), q.clone()));
            }
        }
        let (delta, facet) = best.expect("nonempty full-dimensional hull has facets");
        return Ok(GapCertificate {
            delta,
            witness_system: hull.ineqs.clone(),
            lower_bound_facet: Some(facet),
        });
    }
    gap_by_deepening(s, GAP_DELTA_CAP)
}

/// General gap search by iterative deepening on the level D: admit the 2n box
/// rows plus every valid, primitive, 0/1-spanned switched inequality with
/// coefficients in {0..d} and level d <= D, and test whether the admitted
/// system already has solution set conv(S). The first D that succeeds is the
/// gap. Errors with `GapCapExceeded` beyond `cap`.
pub fn gap_by_deepening(s: &PointSet, cap: u64) -> Result<GapCertificate> {
    let n = s.n();
    if n > GAP_MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: GAP_MAX_DIM });
    }
    let hull = hull_facets(s);
    let members: Vec<u64> = s.members().collect();
    let mut pool: Vec<LinIneq> = HPolytope::unit_box(n).ineqs;
    for delta in 0..=cap {
        if delta > 0 {
            collect_level(n, delta, &members, &mut pool);
        }
        let system = HPolytope { n, ineqs: pool.clone(), eqs: Vec::new() };
        if system_matches_hull(&system, &hull)? {
            let lower = if s.is_empty() {
                None
            } else {
                pool.iter()
                    .find(|q| switched_level(q) == BigInt::from(delta))
                    .cloned()
            };
            return Ok(GapCertificate {
                delta: BigInt::from(delta),
                witness_system: pool,
                lower_bound_facet: lower,
            });
        }
    }
    Err(Error::GapCapExceeded { cap })
}

/// Appends to `pool` every admissible switched inequality with level exactly
/// `delta`: coefficients in {0..delta}, not all zero, some subset of the
/// support complemented, primitive, valid on S, hyperplane 0/1-spanned.
fn collect_level(n: usize, delta: u64, members: &[u64], pool: &mut Vec<LinIneq>) {
    let base = delta + 1;
    let total = (base as u128).pow(n as u32);
    let mut c = vec![0i64; n];
    for idx in 0..total {
        let mut rest = idx;
        let mut all_zero = true;
        for item in c.iter_mut() {
            *item = (rest % base as u128) as i64;
            rest /= base as u128;
            if *item != 0 {
                all_zero = false;
            }
        }
        if all_zero {
            continue;
        }
        let supp: Vec<usize> = (0..n).filter(|&i| c[i] != 0).collect();
        for comp_bits in 0..(1u64 << supp.len()) {
            let mut flip = 0u64;
            for (t, &i) in supp.iter().enumerate() {
                if comp_bits >> t & 1 == 1 {
                    flip |= 1 << i;
                }
            }
            // expanded row: flipped coordinates get -c_i, rhs drops by c_i
            let mut coeffs = Vec::with_capacity(n);
            let mut rhs = BigInt::from(delta);
            for i in 0..n {
                if flip >> i & 1 == 1 {
                    coeffs.push(BigInt::from(-c[i]));
                    rhs -= BigInt::from(c[i]);
                } else {
                    coeffs.push(BigInt::from(c[i]));
                }
            }
            let q = LinIneq::new(coeffs, rhs);
            match primitive_form(&q, PrimitiveMode::Halfspace) {
                Ok(p) if p == q => {}
                _ => continue, // a scaling of a shallower row
            }
            if !members.iter().all(|&m| q.holds_mask(m)) {
                continue;
            }
            if !spanned_by_01(&q) {
                continue;
            }
            pool.push(q);
        }
    }
    pool.sort_by(|a, b| (&a.coeffs, &a.rhs).cmp(&(&b.coeffs, &b.rhs)));
    pool.dedup();
}

/// Does the candidate system describe exactly the hull? Containment of the
/// hull in the system is automatic (every pooled row is valid on S), so only
/// the reverse inclusion is tested: each hull constraint must be valid for
/// the system's solution set.
fn system_matches_hull(system: &HPolytope, hull: &HPolytope) -> Result<bool> {
    // The pool runs to thousands of rows, which an LP per hull facet cannot
    // afford. Intersect incrementally under double description instead,
    // skipping rows the current intersection already satisfies, and compare
    // vertex sets: the pool contains conv(S) by construction, so equality
    // of vertex sets is equality of polytopes.
    let mut dd = PolytopeDD::from_hpolytope(&HPolytope::unit_box(system.n));
    for q in &system.ineqs {
        if !dd.cut_is_valid(q) {
            dd.add_cut(q);
        }
    }
    let mut got = dd.vertex_list().vertices;
    let mut want = vertices(hull).vertices;
    got.sort();
    want.sort();
    Ok(got == want)
}

/// Minimizes a linear cost over S using only membership queries, given an
/// upper bound p on the notch of S. The box optimum x* (coordinate i set to 1
/// exactly when c_i < 0) lies within Hamming distance p of some point of S,
/// so scanning the ball of radius p suffices. Returns the optimal point
/// (ties broken by smallest mask) and the number of oracle calls made.
pub fn oracle_optimize<F: FnMut(u64) -> bool>(
    mut member: F,
    n: usize,
    cost: &[Rat],
    p: usize,
) -> Result<(CubePoint, u64)> {
    if cost.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: cost.len() });
    }
    let mut xstar = 0u64;
    for (i, ci) in cost.iter().enumerate() {
        if ci.is_negative() {
            xstar |= 1 << i;
        }
    }
    let radius = p.min(n);
    let mut calls = 0u64;
    let mut best: Option<(Rat, u64)> = None;
    for k in 0..=radius {
        for flip in 0..(1u64 << n) {
            if flip.count_ones() as usize != k {
                continue;
            }
            let v = xstar ^ flip;
            calls += 1;
            if member(v) {
                let val = point_cost(cost, v);
                let better = match &best {
                    None => true,
                    Some((bv, bm)) => val < *bv || (val == *bv && v < *bm),
                };
                if better {
                    best = Some((val, v));
                }
            }
        }
    }
    debug_assert_eq!(calls, (0..=radius).map(|k| binomial(n, k)).sum::<u64>());
    match best {
        Some((_, m)) => Ok((CubePoint::new(n, m), calls)),
        None => Err(Error::NoFeasibleInBall { radius }),
    }
}

/// Size of the Hamming ball of radius p in {0,1}^n; the oracle's call count
/// never exceeds it.
pub fn binomial_sum(n: usize, p: usize) -> u64 {
    (0..=p.min(n)).map(|k| binomial(n, k)).sum()
}

fn point_cost(cost: &[Rat], mask: u64) -> Rat {
    let mut acc = Rat::zero();
    for (i, ci) in cost.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc += ci;
        }
    }
    acc
}
