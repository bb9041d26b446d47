//! Double description method: exact conversion between vertex and facet
//! descriptions of rational polytopes inside the unit box.
//!
//! Everything runs over pointed cones with primitive integer ray data.
//! H→V homogenizes (x, t) with the box rows adjoined, so the cone is always
//! pointed; V→H works on the dual cone {(z0, a) : z0 + a·s >= 0 for all
//! vertices s}, compressing its lineality space away first (the lineality
//! vectors are exactly the affine-hull equations of the polytope).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geom::{LinIneq, PointSet};
use crate::linalg;
use crate::polytope::{HPolytope, LinEq, VPolytope};
use crate::rat::{primitive_int_vec, reduce_int_vec, Rat};

// bitsets over row indices, growable u64 blocks

fn zs_set(z: &mut Vec<u64>, i: usize) {
    let blk = i / 64;
    if z.len() <= blk {
        z.resize(blk + 1, 0);
    }
    z[blk] |= 1u64 << (i % 64);
}

fn zs_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn zs_count(a: &[u64]) -> u32 {
    a.iter().map(|x| x.count_ones()).sum()
}

fn zs_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, x)| x & !b.get(i).copied().unwrap_or(0) == 0)
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    /// Bit i set iff inserted row i is tight on this ray.
    zero: Vec<u64>,
}

/// Extreme rays of a pointed cone {z : row·z >= 0 for all rows}, maintained
/// incrementally one constraint at a time.
pub struct ConeDD {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    rays: Vec<Ray>,
}

impl ConeDD {
    /// Builds the ray description. The rows must span R^dim (pointed cone);
    /// they are primitive-reduced, sorted and deduplicated, the first
    /// linearly independent `dim` of them seed a simplicial cone and the
    /// rest are inserted in order.
    pub fn new(dim: usize, input_rows: Vec<Vec<BigInt>>) -> ConeDD {
        let mut cleaned: Vec<Vec<BigInt>> = input_rows
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|mut r| {
                reduce_int_vec(&mut r);
                r
            })
            .collect();
        cleaned.sort();
        cleaned.dedup();

        // greedy maximal independent prefix
        let mut chosen: Vec<usize> = Vec::new();
        let mut chosen_rat: Vec<Vec<Rat>> = Vec::new();
        for (i, r) in cleaned.iter().enumerate() {
            if chosen.len() == dim {
                break;
            }
            let mut trial = chosen_rat.clone();
            trial.push(r.iter().map(|x| Rat::from(x.clone())).collect());
            if linalg::rank(&trial) > chosen.len() {
                chosen_rat = trial;
                chosen.push(i);
            }
        }
        assert_eq!(chosen.len(), dim, "cone description does not span R^{dim}: not pointed");

        let mut state = ConeDD { dim, rows: Vec::new(), rays: Vec::new() };
        for &i in &chosen {
            state.rows.push(cleaned[i].clone());
        }
        // simplicial seed: ray j solves B r = e_j up to positive scaling
        for j in 0..dim {
            let mut e = vec![Rat::zero(); dim];
            e[j] = Rat::one();
            let sol = linalg::solve(&chosen_rat, &e).expect("basis matrix is invertible");
            let coords = primitive_int_vec(&sol);
            let mut zero = Vec::new();
            for i in 0..dim {
                if i != j {
                    zs_set(&mut zero, i);
                }
            }
            state.rays.push(Ray { coords, zero });
        }
        let chosen_set: std::collections::HashSet<usize> = chosen.into_iter().collect();
        for (i, r) in cleaned.into_iter().enumerate() {
            if !chosen_set.contains(&i) {
                state.insert(r);
            }
        }
        state
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_coords(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rays.iter().map(|r| r.coords.as_slice())
    }

    fn dot(row: &[BigInt], coords: &[BigInt]) -> BigInt {
        row.iter().zip(coords).map(|(a, b)| a * b).sum()
    }

    /// True iff row·z >= 0 already holds on every extreme ray.
    pub fn row_is_valid(&self, row: &[BigInt]) -> bool {
        self.rays.iter().all(|r| !Self::dot(row, &r.coords).is_negative())
    }

    /// Adds one constraint row·z >= 0 and updates the extreme rays.
    pub fn insert(&mut self, mut row: Vec<BigInt>) {
        if row.iter().all(|x| x.is_zero()) {
            return; // 0 >= 0 is vacuous
        }
        reduce_int_vec(&mut row);
        let idx = self.rows.len();
        let dots: Vec<BigInt> = self
            .rays
            .iter()
            .map(|r| Self::dot(&row, &r.coords))
            .collect();
        self.rows.push(row);

        if dots.iter().all(|d| !d.is_negative()) {
            for (r, d) in self.rays.iter_mut().zip(&dots) {
                if d.is_zero() {
                    zs_set(&mut r.zero, idx);
                }
            }
            return;
        }

        let pos: Vec<usize> = (0..dots.len()).filter(|&i| dots[i].is_positive()).collect();
        let neg: Vec<usize> = (0..dots.len()).filter(|&i| dots[i].is_negative()).collect();

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let z = zs_and(&self.rays[p].zero, &self.rays[q].zero);
                // rank necessary condition, then the combinatorial
                // adjacency test: no third ray may be tight on all of z
                if (zs_count(&z) as usize) + 2 < self.dim {
                    continue;
                }
                let blocked = self
                    .rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && zs_subset(&z, &r.zero));
                if blocked {
                    continue;
                }
                // positive combination annihilating the new row
                let (dp, dq) = (&dots[p], &dots[q]);
                let mut coords: Vec<BigInt> = self.rays[p]
                    .coords
                    .iter()
                    .zip(&self.rays[q].coords)
                    .map(|(cp, cq)| -dq * cp + dp * cq)
                    .collect();
                reduce_int_vec(&mut coords);
                let mut zero = z;
                zs_set(&mut zero, idx);
                fresh.push(Ray { coords, zero });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in std::mem::take(&mut self.rays).into_iter().enumerate() {
            if dots[i].is_positive() {
                kept.push(r);
            } else if dots[i].is_zero() {
                zs_set(&mut r.zero, idx);
                kept.push(r);
            }
        }
        kept.extend(fresh);
        self.rays = kept;
    }
}

/// Homogenization rows of P in R^(n+1), coordinate layout (x_1..x_n, t):
/// a·x >= b becomes (a, -b)·(x,t) >= 0; equations contribute both signs;
/// the box rows and t >= 0 are always included.
fn homogenized_rows(p: &HPolytope) -> Vec<Vec<BigInt>> {
    let n = p.n;
    let boxed = p.with_box();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for q in &boxed.ineqs {
        let mut r = q.coeffs.clone();
        r.push(-q.rhs.clone());
        rows.push(r);
    }
    for e in &boxed.eqs {
        let mut r = e.coeffs.clone();
        r.push(-e.rhs.clone());
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    let mut t_row = vec![BigInt::zero(); n];
    t_row.push(BigInt::one());
    rows.push(t_row);
    rows
}

/// Incrementally maintained vertex description of a polytope in the box.
pub struct PolytopeDD {
    pub n: usize,
    cone: ConeDD,
}

impl PolytopeDD {
    pub fn from_hpolytope(p: &HPolytope) -> PolytopeDD {
        PolytopeDD { n: p.n, cone: ConeDD::new(p.n + 1, homogenized_rows(p)) }
    }

    /// Cuts the polytope with a·x >= rhs.
    pub fn add_cut(&mut self, q: &LinIneq) {
        let mut row = q.coeffs.clone();
        row.push(-q.rhs.clone());
        self.cone.insert(row);
    }

    /// True iff a·x >= rhs already holds on the current vertex set.
    pub fn cut_is_valid(&self, q: &LinIneq) -> bool {
        let mut row = q.coeffs.clone();
        row.push(-q.rhs.clone());
        self.cone.row_is_valid(&row)
    }

    pub fn is_empty(&self) -> bool {
        self.cone.ray_count() == 0
    }

    /// Vertices as (numerators, denominator) with the denominator positive:
    /// the vertex is numerators/denominator, both primitive integer.
    pub fn vertex_data(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.cone
            .ray_coords()
            .map(|r| {
                let t = r[self.n].clone();
                assert!(t.is_positive(), "homogenization ray with t <= 0: box rows missing");
                (r[..self.n].to_vec(), t)
            })
            .collect()
    }

    pub fn vertex_list(&self) -> VPolytope {
        let verts: Vec<Vec<Rat>> = self
            .vertex_data()
            .into_iter()
            .map(|(num, den)| {
                num.into_iter()
                    .map(|x| Rat::new(x, den.clone()))
                    .collect()
            })
            .collect();
        debug_assert!(verts.iter().all(|v| {
            v.iter().all(|x| !x.is_negative() && *x <= Rat::one())
        }));
        VPolytope::new(self.n, verts)
    }
}

/// Exact vertex list of P (box rows adjoined automatically).
pub fn vertices(p: &HPolytope) -> VPolytope {
    PolytopeDD::from_hpolytope(p).vertex_list()
}

/// Irredundant facet/equation description of conv(V): affine-hull equations
/// from the lineality of the dual cone, facets from its extreme rays.
pub fn vpoly_to_hpoly(v: &VPolytope) -> HPolytope {
    let n = v.n;
    if v.is_empty() {
        return HPolytope::infeasible(n);
    }
    // dual-cone rows (1, s) per vertex, cleared to primitive integers
    let rows: Vec<Vec<BigInt>> = v
        .vertices
        .iter()
        .map(|s| {
            let mut row = Vec::with_capacity(n + 1);
            row.push(Rat::one());
            row.extend(s.iter().cloned());
            primitive_int_vec(&row)
        })
        .collect();
    let rat_rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from(x.clone())).collect())
        .collect();

    // lineality vectors (z0, a) give the equations a·x = -z0
    let lin = linalg::kernel_basis(&rat_rows);
    let eqs: Vec<LinEq> = lin
        .iter()
        .map(|l| {
            let iv = primitive_int_vec(l);
            LinEq::new(iv[1..].to_vec(), -iv[0].clone())
        })
        .collect();

    // compress the lineality away: drop the pivot columns of its RREF
    let mut lmat = lin.clone();
    let pivots = linalg::rref(&mut lmat);
    let pivot_set: std::collections::HashSet<usize> = pivots.into_iter().collect();
    let free_cols: Vec<usize> = (0..=n).filter(|c| !pivot_set.contains(c)).collect();
    let comp_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| free_cols.iter().map(|&c| r[c].clone()).collect())
        .collect();

    let cone = ConeDD::new(free_cols.len(), comp_rows);
    let mut ineqs: Vec<LinIneq> = Vec::new();
    for w in cone.ray_coords() {
        let mut z = vec![BigInt::zero(); n + 1];
        for (j, &c) in free_cols.iter().enumerate() {
            z[c] = w[j].clone();
        }
        // the far-face ray is tight at no vertex and is not a facet
        let tight_somewhere = rows.iter().any(|r| ConeDD::dot(r, &z).is_zero());
        if !tight_somewhere {
            continue;
        }
        ineqs.push(LinIneq::new(z[1..].to_vec(), -z[0].clone()));
    }
    HPolytope::new(n, ineqs, eqs).canonicalized()
}

/// Irredundant exact description of conv(S) for a 0/1 point set.
pub fn hull_facets(s: &PointSet) -> HPolytope {
    let verts: Vec<Vec<Rat>> = s.points().iter().map(|p| p.coords()).collect();
    vpoly_to_hpoly(&VPolytope::new(s.n(), verts))
}
