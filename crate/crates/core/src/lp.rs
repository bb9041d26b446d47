//! Exact rational linear programming: two-phase primal simplex with Bland's
//! anti-cycling rule, plus the validity / redundancy / equality operations
//! built on it.
//!
//! The tableau is dense `BigRational`. Free structural variables are split
//! x = u - w with u, w >= 0; every ">=" row gets a slack, every row whose
//! normalized right-hand side cannot be covered by its slack gets an
//! artificial variable for phase 1.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::LinIneq;
use crate::polytope::HPolytope;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Infeasible => None,
        }
    }
}

struct Tableau {
    /// m rows of length ncols+1; the last entry is the right-hand side.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, l: usize, e: usize) {
        let piv = self.rows[l][e].clone();
        for x in self.rows[l].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..self.rows.len() {
            if r != l && !self.rows[r][e].is_zero() {
                let f = self.rows[r][e].clone();
                for j in 0..=self.ncols {
                    let sub = &f * &self.rows[l][j];
                    self.rows[r][j] = &self.rows[r][j] - &sub;
                }
            }
        }
        self.basis[l] = e;
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

/// Minimizes costs·vars over the tableau with Bland's rule. `allowed[j]`
/// gates which columns may enter the basis.
fn simplex(t: &mut Tableau, costs: &[Rat], allowed: &[bool]) -> SimplexEnd {
    loop {
        // reduced costs d_j = c_j - y·A_j with y_r = c_{basis r}
        let y: Vec<Rat> = t.basis.iter().map(|&b| costs[b].clone()).collect();
        let mut entering = None;
        for j in 0..t.ncols {
            if !allowed[j] {
                continue;
            }
            let mut d = costs[j].clone();
            for (r, yr) in y.iter().enumerate() {
                if !yr.is_zero() && !t.rows[r][j].is_zero() {
                    let sub = yr * &t.rows[r][j];
                    d = d - sub;
                }
            }
            if d.is_negative() {
                entering = Some(j);
                break; // Bland: first (lowest-index) improving column
            }
        }
        let Some(e) = entering else {
            return SimplexEnd::Optimal;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..t.rows.len() {
            if t.rows[r][e].is_positive() {
                let ratio = t.rhs(r) / &t.rows[r][e];
                match &leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, best)) => {
                        if ratio < *best
                            || (ratio == *best && t.basis[r] < t.basis[*lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            return SimplexEnd::Unbounded;
        };
        t.pivot(l, e);
    }
}

/// Exact minimum of c·x over P. `Infeasible` when P is empty; `Unbounded`
/// error when the minimum is -infinity (possible only if P escapes the box
/// contract).
pub fn lp_min(p: &HPolytope, c: &[BigInt]) -> Result<LpOutcome> {
    if c.len() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: c.len() });
    }
    let n = p.n;

    // collect rows as (coeffs, rhs, is_eq), dropping vacuous zero rows and
    // short-circuiting on contradictory ones
    let mut rows: Vec<(Vec<BigInt>, BigInt, bool)> = Vec::new();
    for q in &p.ineqs {
        if q.is_zero() {
            if q.rhs.is_positive() {
                return Ok(LpOutcome::Infeasible);
            }
            continue;
        }
        rows.push((q.coeffs.clone(), q.rhs.clone(), false));
    }
    for e in &p.eqs {
        if e.coeffs.iter().all(|x| x.is_zero()) {
            if !e.rhs.is_zero() {
                return Ok(LpOutcome::Infeasible);
            }
            continue;
        }
        rows.push((e.coeffs.clone(), e.rhs.clone(), true));
    }
    if rows.is_empty() {
        // whole space; bounded only for the zero objective
        if c.iter().all(|x| x.is_zero()) {
            return Ok(LpOutcome::Optimal { value: Rat::zero(), point: vec![Rat::zero(); n] });
        }
        return Err(Error::Unbounded);
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|(_, _, is_eq)| !is_eq).count();
    // columns: u (n) | w (n) | slacks | artificials (at most one per row)
    let slack_start = 2 * n;
    let art_start = slack_start + n_slack;
    let mut ncols = art_start;

    let mut t = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), ncols: 0 };
    let mut art_cols: Vec<usize> = Vec::new();
    let mut raw: Vec<(Vec<Rat>, usize)> = Vec::new(); // (row, basis var)
    let mut slack_idx = 0;
    for (a, b, is_eq) in rows {
        // normalize to nonnegative rhs
        let flip = b.is_negative();
        let sign = if flip { -1 } else { 1 };
        let mut row = vec![Rat::zero(); art_start];
        for (j, aj) in a.iter().enumerate() {
            let v = Rat::from(aj * sign);
            row[n + j] = -v.clone();
            row[j] = v;
        }
        let rhs = Rat::from(&b * sign);
        let basis_var;
        if is_eq {
            basis_var = ncols;
            art_cols.push(ncols);
            ncols += 1;
        } else {
            // a·x - s = b; after a sign flip the slack coefficient is +1 and
            // can start in the basis
            let s_col = slack_start + slack_idx;
            slack_idx += 1;
            if flip {
                row[s_col] = Rat::from(BigInt::from(1));
                basis_var = s_col;
            } else {
                row[s_col] = Rat::from(BigInt::from(-1));
                basis_var = ncols;
                art_cols.push(ncols);
                ncols += 1;
            }
        }
        row.push(rhs);
        raw.push((row, basis_var));
    }
    // widen rows to the final column count (artificial block), set unit cols
    for (ri, (row, basis_var)) in raw.into_iter().enumerate() {
        let mut full = row;
        let rhs = full.pop().unwrap();
        full.resize(ncols, Rat::zero());
        if basis_var >= art_start {
            full[basis_var] = Rat::from(BigInt::from(1));
        }
        full.push(rhs);
        t.rows.push(full);
        t.basis.push(basis_var);
        let _ = ri;
    }
    t.ncols = ncols;

    // phase 1: minimize the sum of artificials
    if !art_cols.is_empty() {
        let mut costs = vec![Rat::zero(); ncols];
        for &j in &art_cols {
            costs[j] = Rat::from(BigInt::from(1));
        }
        let allowed = vec![true; ncols];
        match simplex(&mut t, &costs, &allowed) {
            SimplexEnd::Unbounded => unreachable!("phase-1 objective is bounded below by 0"),
            SimplexEnd::Optimal => {}
        }
        let obj: Rat = t
            .basis
            .iter()
            .enumerate()
            .map(|(r, &b)| &costs[b] * t.rhs(r))
            .sum();
        if !obj.is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive artificials out of the basis; rows that cannot pivot are
        // redundant and dropped
        let is_art = |j: usize| j >= art_start;
        let mut r = 0;
        while r < t.rows.len() {
            if is_art(t.basis[r]) {
                if let Some(j) = (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, j);
                } else {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }

    // phase 2
    let mut costs = vec![Rat::zero(); ncols];
    for j in 0..n {
        costs[j] = Rat::from(c[j].clone());
        costs[n + j] = Rat::from(-c[j].clone());
    }
    let mut allowed = vec![true; ncols];
    for j in art_start..ncols {
        allowed[j] = false;
    }
    match simplex(&mut t, &costs, &allowed) {
        SimplexEnd::Unbounded => return Err(Error::Unbounded),
        SimplexEnd::Optimal => {}
    }
    let mut point = vec![Rat::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = &point[b] + t.rhs(r);
        } else if b < 2 * n {
            point[b - n] = &point[b - n] - t.rhs(r);
        }
    }
    let value: Rat = c
        .iter()
        .zip(&point)
        .map(|(cj, xj)| Rat::from(cj.clone()) * xj)
        .sum();
    Ok(LpOutcome::Optimal { value, point })
}

/// True iff a·x >= rhs holds everywhere on P (vacuously on empty P).
pub fn is_valid(p: &HPolytope, q: &LinIneq) -> Result<bool> {
    if q.n() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: q.n() });
    }
    match lp_min(p, &q.coeffs) {
        Ok(LpOutcome::Optimal { value, .. }) => Ok(value >= Rat::from(q.rhs.clone())),
        Ok(LpOutcome::Infeasible) => Ok(true),
        Err(Error::Unbounded) => Ok(false),
        Err(e) => Err(e),
    }
}

/// True iff a·x = rhs holds everywhere on P.
fn eq_is_valid(p: &HPolytope, coeffs: &[BigInt], rhs: &BigInt) -> Result<bool> {
    let fwd = LinIneq::new(coeffs.to_vec(), rhs.clone());
    if !is_valid(p, &fwd)? {
        return Ok(false);
    }
    let back = LinIneq::new(coeffs.iter().map(|c| -c).collect(), -rhs.clone());
    is_valid(p, &back)
}

/// Minimal subsystem describing the same set; every removed inequality is
/// certified implied by an LP over the remaining rows.
pub fn remove_redundancy(p: &HPolytope) -> Result<HPolytope> {
    let canon = p.canonicalized();
    if canon.is_canonical_infeasible() {
        return Ok(canon);
    }
    match lp_min(&canon, &vec![BigInt::zero(); canon.n])? {
        LpOutcome::Infeasible => return Ok(HPolytope::infeasible(canon.n)),
        LpOutcome::Optimal { .. } => {}
    }
    let mut kept = canon.ineqs.clone();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        let row = trial.remove(i);
        let sub = HPolytope::new(canon.n, trial, canon.eqs.clone());
        let implied = match lp_min(&sub, &row.coeffs) {
            Ok(LpOutcome::Optimal { value, .. }) => value >= Rat::from(row.rhs.clone()),
            Ok(LpOutcome::Infeasible) => true,
            Err(Error::Unbounded) => false,
            Err(e) => return Err(e),
        };
        if implied {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(HPolytope::new(canon.n, kept, canon.eqs))
}

/// Set equality of two H-descriptions: every row of each system must be
/// valid for the other. Syntactically identical canonical forms short-cut
/// the LP work.
pub fn polytopes_equal(p: &HPolytope, q: &HPolytope) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: q.n });
    }
    let cp = p.canonicalized();
    let cq = q.canonicalized();
    if cp == cq {
        return Ok(true);
    }
    contains_all_rows(&cp, &cq).and_then(|a| {
        if !a {
            return Ok(false);
        }
        contains_all_rows(&cq, &cp)
    })
}

/// True iff every row of `sys` is valid for `p` (i.e. p ⊆ sys's set).
fn contains_all_rows(sys: &HPolytope, p: &HPolytope) -> Result<bool> {
    for row in &sys.ineqs {
        if !is_valid(p, row)? {
            return Ok(false);
        }
    }
    for e in &sys.eqs {
        if !eq_is_valid(p, &e.coeffs, &e.rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, ratio};

    fn halfsum_box() -> HPolytope {
        // [0,1]^2 with x1 + x2 <= 3/2, integer data via doubling
        let mut p = HPolytope::unit_box(2);
        p.ineqs.push(LinIneq::from_i64(&[-2, -2], -3));
        p
    }

    #[test]
    fn min_over_box_is_zero() {
        let p = HPolytope::unit_box(2);
        let out = lp_min(&p, &[int(1), int(1)]).unwrap();
        assert_eq!(out.value(), Some(&rat(0)));
    }

    #[test]
    fn min_hits_fractional_vertex() {
        let out = lp_min(&halfsum_box(), &[int(-1), int(-1)]).unwrap();
        assert_eq!(out.value(), Some(&ratio(-3, 2)));
        if let LpOutcome::Optimal { point, .. } = out {
            let s: Rat = point.iter().sum();
            assert_eq!(s, ratio(3, 2));
        }
    }

    #[test]
    fn infeasible_detected() {
        let mut p = HPolytope::unit_box(2);
        p.ineqs.push(LinIneq::from_i64(&[2, 2], 5)); // x1+x2 >= 5/2
        assert_eq!(lp_min(&p, &[int(1), int(0)]).unwrap(), LpOutcome::Infeasible);
        assert_eq!(
            lp_min(&HPolytope::infeasible(2), &[int(1), int(1)]).unwrap(),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn unbounded_reported() {
        let p = HPolytope::new(2, vec![LinIneq::from_i64(&[1, 0], 0)], Vec::new());
        assert!(matches!(lp_min(&p, &[int(0), int(1)]), Err(Error::Unbounded)));
    }

    #[test]
    fn equations_respected() {
        use crate::polytope::LinEq;
        let p = HPolytope::new(
            3,
            HPolytope::unit_box(3).ineqs,
            vec![LinEq::from_i64(&[1, 1, 0], 1)],
        );
        let out = lp_min(&p, &[int(1), int(2), int(1)]).unwrap();
        assert_eq!(out.value(), Some(&rat(1))); // x1=1, x2=0, x3=0
    }

    #[test]
    fn validity_checks() {
        let p = HPolytope::unit_box(2);
        assert!(is_valid(&p, &LinIneq::from_i64(&[1, 1], 0)).unwrap());
        assert!(!is_valid(&halfsum_box(), &LinIneq::from_i64(&[1, 1], 1)).unwrap());
        assert!(is_valid(&HPolytope::infeasible(2), &LinIneq::from_i64(&[1, 1], 99)).unwrap());
    }

    #[test]
    fn redundancy_removed() {
        let mut p = HPolytope::unit_box(2);
        p.ineqs.push(LinIneq::from_i64(&[1, 1], -1));
        let r = remove_redundancy(&p).unwrap();
        assert_eq!(r.canonicalized(), HPolytope::unit_box(2).canonicalized());
    }

    #[test]
    fn irredundant_input_unchanged() {
        let p = HPolytope::unit_box(2).canonicalized();
        let r = remove_redundancy(&p).unwrap();
        assert_eq!(r.canonicalized(), p);
    }

    #[test]
    fn equality_checks() {
        let p = halfsum_box();
        assert!(polytopes_equal(&p, &p).unwrap());
        assert!(!polytopes_equal(&p, &HPolytope::unit_box(2)).unwrap());
        // same set, different presentation: doubled rows
        let doubled = HPolytope::new(
            2,
            p.ineqs
                .iter()
                .map(|q| {
                    LinIneq::new(
                        q.coeffs.iter().map(|c| c * 2).collect(),
                        &q.rhs * 2,
                    )
                })
                .collect(),
            Vec::new(),
        );
        assert!(polytopes_equal(&p, &doubled).unwrap());
    }

    #[test]
    fn infeasible_polytopes_equal() {
        let a = HPolytope::infeasible(2);
        let mut b = HPolytope::unit_box(2);
        b.ineqs.push(LinIneq::from_i64(&[2, 2], 5));
        assert!(polytopes_equal(&a, &b).unwrap());
        assert!(!polytopes_equal(&a, &HPolytope::unit_box(2)).unwrap());
    }
}
