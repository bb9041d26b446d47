//! Rounding closures of rational polytopes inside the unit box: one round
//! intersects all integral-rounding cuts, iterating measures the number of
//! rounds to reach the integer hull, and validity depth asks when a given
//! inequality becomes valid.
//!
//! A round enumerates every primitive integer normal with entries bounded by
//! n times the coefficient norm of the current description; that bound is
//! enough because any facet of the rounded body can be written with such a
//! normal, and cuts from non-primitive normals are implied by the primitive
//! ones. The enumeration size is checked against a hard budget up front and
//! the round refuses to run (rather than truncate) when it would exceed it.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{LinIneq, PointSet};
use crate::hull::{vpoly_to_hpoly, PolytopeDD};
use crate::params::notch;
use crate::polytope::HPolytope;
use crate::rat::{ceil_div, Rat};

#[derive(Clone, Debug)]
pub struct ClosureConfig {
    /// Upper bound on (2nM+1)^n, the number of candidate normals a round may
    /// enumerate. Exceeding it is an error, never a silent truncation.
    pub enum_budget: u64,
    pub threads: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { enum_budget: 2_000_000, threads: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureRound {
    /// 1-based index of this round.
    pub round_index: usize,
    /// Coefficient norm of the description the round enumerated against.
    pub input_norm: BigInt,
    /// Primitive normals examined, counting both orientations.
    pub candidates_enumerated: u64,
    /// Cuts that actually tightened the body (valid cuts are skipped).
    pub cuts_kept: u64,
    /// Canonical irredundant facet description of the rounded body.
    pub output: HPolytope,
}

#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub rank: usize,
    pub converged: bool,
    pub cap: usize,
    pub rounds: Vec<ClosureRound>,
}

/// Default iteration cap for rank computations.
pub fn default_rank_cap(n: usize) -> usize {
    let nf = n as f64;
    (nf * nf * (3.0 + ((nf + 1.0).log2()))).ceil() as usize
}

/// Iterated-closure state for one polytope: stage 0 is the input, stage t
/// the t-fold closure. Rounds and vertex snapshots are memoized so rank and
/// depth queries over the same polytope share work.
pub struct ClosureEngine {
    cfg: ClosureConfig,
    n: usize,
    s: PointSet,
    current: HPolytope,
    dd: PolytopeDD,
    rounds: Vec<ClosureRound>,
    /// Vertex data per stage: (numerators, positive denominator) per vertex.
    snapshots: Vec<Vec<(Vec<BigInt>, BigInt)>>,
}

impl ClosureEngine {
    /// Builds the engine, confirming that the integer points of the boxed
    /// input are exactly `s`.
    pub fn new(p: &HPolytope, s: &PointSet, cfg: &ClosureConfig) -> Result<Self> {
        if p.n != s.n() {
            return Err(Error::DimensionMismatch { expected: s.n(), found: p.n });
        }
        let boxed = p.with_box();
        let actual = boxed.integer_points();
        if actual != *s {
            let vertex = (0..(1u64 << p.n))
                .find(|&m| actual.contains(m) != s.contains(m))
                .expect("sets differ");
            return Err(Error::IntegerPointMismatch { vertex });
        }
        let current = boxed.canonicalized();
        let dd = PolytopeDD::from_hpolytope(&current);
        let snapshots = vec![dd.vertex_data()];
        Ok(ClosureEngine {
            cfg: cfg.clone(),
            n: p.n,
            s: s.clone(),
            current,
            dd,
            rounds: Vec::new(),
            snapshots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rounds(&self) -> &[ClosureRound] {
        &self.rounds
    }

    pub fn stage_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn ensure_rounds(&mut self, t: usize) -> Result<()> {
        while self.rounds.len() < t {
            self.advance()?;
        }
        Ok(())
    }

    /// Stage t equals the integer hull iff its vertices are exactly the
    /// points of S.
    pub fn stage_matches_hull(&self, t: usize) -> bool {
        let snap = &self.snapshots[t];
        if snap.len() as u64 != self.s.len() {
            return false;
        }
        for (nums, den) in snap {
            let mut mask = 0u64;
            for (i, num) in nums.iter().enumerate() {
                if num.is_zero() {
                    continue;
                }
                if num == den {
                    mask |= 1 << i;
                } else {
                    return false;
                }
            }
            if !self.s.contains(mask) {
                return false;
            }
        }
        true
    }

    /// Is the inequality valid at stage t? Exact vertex scan.
    pub fn valid_at_stage(&self, t: usize, q: &LinIneq) -> bool {
        self.snapshots[t].iter().all(|(nums, den)| {
            let mut acc = BigInt::zero();
            for (c, num) in q.coeffs.iter().zip(nums) {
                acc += c * num;
            }
            acc >= &q.rhs * den
        })
    }

    /// Runs rounds until the hull is reached or `cap` rounds exist; returns
    /// the stage that matched, if any.
    pub fn rank_up_to(&mut self, cap: usize) -> Result<Option<usize>> {
        for t in 0..=cap {
            self.ensure_rounds(t)?;
            if self.stage_matches_hull(t) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Smallest stage <= cap at which the inequality is valid.
    pub fn depth_up_to(&mut self, q: &LinIneq, cap: usize) -> Result<Option<usize>> {
        for t in 0..=cap {
            self.ensure_rounds(t)?;
            if self.valid_at_stage(t, q) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// One closure round appended to the memo.
    fn advance(&mut self) -> Result<()> {
        let n = self.n;
        let index = self.rounds.len() + 1;
        let input_norm = self.current.norm_inf();
        if self.dd.is_empty() {
            // the closure of the empty body is empty
            let output = HPolytope::infeasible(n);
            self.rounds.push(ClosureRound {
                round_index: index,
                input_norm,
                candidates_enumerated: 0,
                cuts_kept: 0,
                output: output.clone(),
            });
            self.current = output;
            self.dd = PolytopeDD::from_hpolytope(&self.current);
            self.snapshots.push(Vec::new());
            return Ok(());
        }
        let bound_big: BigInt = BigInt::from(n) * &input_norm;
        let required = (BigInt::from(2) * &bound_big + 1u8).pow(n as u32);
        if required > BigInt::from(self.cfg.enum_budget) {
            return Err(Error::NormBudgetExceeded {
                required,
                budget: self.cfg.enum_budget,
            });
        }
        let bound = bound_big.to_i64().expect("budget keeps the bound small");
        let cuts = enumerate_cuts(n, bound, &self.snapshots[self.rounds.len()], self.cfg.threads);
        let candidates = cuts.candidates;
        let mut kept = 0u64;
        let mut cache = RayCache::build(&self.dd);
        for (coeffs, rhs) in cuts.rows {
            let row = LinIneq::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(rhs));
            let valid = match &cache {
                Some(c) => c.row_valid(&coeffs, rhs),
                None => self.dd.cut_is_valid(&row),
            };
            if !valid {
                self.dd.add_cut(&row);
                kept += 1;
                cache = RayCache::build(&self.dd);
            }
        }
        let verts = self.dd.vertex_list();
        let output = vpoly_to_hpoly(&verts);
        self.rounds.push(ClosureRound {
            round_index: index,
            input_norm,
            candidates_enumerated: candidates,
            cuts_kept: kept,
            output: output.clone(),
        });
        self.current = output;
        self.dd = PolytopeDD::from_hpolytope(&self.current);
        self.snapshots.push(self.dd.vertex_data());
        Ok(())
    }
}

/// i128 view of the vertex rays for fast validity scans; None when the
/// magnitudes do not safely fit.
struct RayCache {
    n: usize,
    nums: Vec<i128>,
    dens: Vec<i128>,
}

impl RayCache {
    fn build(dd: &PolytopeDD) -> Option<RayCache> {
        let data = dd.vertex_data();
        let n = dd.n;
        let mut nums = Vec::with_capacity(data.len() * n);
        let mut dens = Vec::with_capacity(data.len());
        for (coords, den) in &data {
            let d = den.to_i128()?;
            if d <= 0 || d >= 1 << 40 {
                return None;
            }
            dens.push(d);
            for c in coords {
                let v = c.to_i128()?;
                if v.abs() >= 1 << 50 {
                    return None;
                }
                nums.push(v);
            }
        }
        Some(RayCache { n, nums, dens })
    }

    fn row_valid(&self, coeffs: &[i64], rhs: i128) -> bool {
        for (v, &den) in self.dens.iter().enumerate() {
            let base = v * self.n;
            let mut acc: i128 = 0;
            for (j, &c) in coeffs.iter().enumerate() {
                acc += c as i128 * self.nums[base + j];
            }
            if acc < rhs * den {
                return false;
            }
        }
        true
    }
}

struct CutBatch {
    candidates: u64,
    rows: Vec<(Vec<i64>, i128)>,
}

/// Enumerates canonical primitive normals c with entries in [-bound, bound]
/// (first nonzero entry positive; both orientations are handled by taking
/// the minimum and the maximum over the vertices) and emits a rounding cut
/// for every fractional extreme value. Rows come back sorted and deduped.
fn enumerate_cuts(
    n: usize,
    bound: i64,
    snapshot: &[(Vec<BigInt>, BigInt)],
    threads: usize,
) -> CutBatch {
    let base = (2 * bound + 1) as u64;
    let total = (base as u128).pow(n as u32) as u64;
    let fast = FastScan::build(n, bound, snapshot);
    let workers = threads.max(1).min(total.max(1) as usize);
    let chunk = total.div_ceil(workers as u64).max(1);
    let mut parts: Vec<CutBatch> = Vec::new();
    if workers <= 1 {
        parts.push(scan_range(n, bound, base, 0, total, &fast, snapshot));
    } else {
        let ranges: Vec<(u64, u64)> = (0..workers as u64)
            .map(|w| (w * chunk, ((w + 1) * chunk).min(total)))
            .filter(|(lo, hi)| lo < hi)
            .collect();
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(lo, hi)| {
                    let fast_ref = &fast;
                    scope.spawn(move || scan_range(n, bound, base, lo, hi, fast_ref, snapshot))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker")).collect::<Vec<_>>()
        });
        parts.extend(results);
    }
    let mut candidates = 0u64;
    let mut rows: Vec<(Vec<i64>, i128)> = Vec::new();
    for p in parts {
        candidates += p.candidates;
        rows.extend(p.rows);
    }
    rows.sort();
    rows.dedup();
    CutBatch { candidates, rows }
}

/// Flattened i128 vertex table, available when all magnitudes are small
/// enough that the dot products and cross-multiplied comparisons stay inside
/// i128 with room to spare.
struct FastScan {
    nums: Vec<i128>,
    dens: Vec<i128>,
}

impl FastScan {
    fn build(n: usize, bound: i64, snapshot: &[(Vec<BigInt>, BigInt)]) -> Option<FastScan> {
        let mut nums = Vec::with_capacity(snapshot.len() * n);
        let mut dens = Vec::with_capacity(snapshot.len());
        let scale = n as i128 * bound.max(1) as i128;
        for (coords, den) in snapshot {
            let d = den.to_i128()?;
            if d <= 0 || d >= 1 << 40 {
                return None;
            }
            dens.push(d);
            for c in coords {
                let v = c.to_i128()?;
                if scale.checked_mul(v.abs())? >= 1 << 62 {
                    return None;
                }
                nums.push(v);
            }
        }
        Some(FastScan { nums, dens })
    }
}

fn div_floor_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a % b;
    if r != 0 && (r < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn scan_range(
    n: usize,
    bound: i64,
    base: u64,
    lo: u64,
    hi: u64,
    fast: &Option<FastScan>,
    snapshot: &[(Vec<BigInt>, BigInt)],
) -> CutBatch {
    let mut candidates = 0u64;
    let mut rows: Vec<(Vec<i64>, i128)> = Vec::new();
    let mut c = vec![0i64; n];
    for idx in lo..hi {
        // decode base-(2B+1) digits into coefficients in [-B, B]
        let mut rest = idx;
        for item in c.iter_mut() {
            *item = (rest % base) as i64 - bound;
            rest /= base;
        }
        match c.iter().find(|&&x| x != 0) {
            None => continue,
            Some(&first) if first < 0 => continue, // mirror handled via max side
            _ => {}
        }
        let mut g = 0u64;
        for &x in &c {
            g = gcd_u64(g, x.unsigned_abs());
            if g == 1 {
                break;
            }
        }
        if g != 1 {
            continue;
        }
        candidates += 2;
        match fast {
            Some(f) => scan_fast(n, &c, f, &mut rows),
            None => scan_big(&c, snapshot, &mut rows),
        }
    }
    CutBatch { candidates, rows }
}

fn scan_fast(n: usize, c: &[i64], f: &FastScan, rows: &mut Vec<(Vec<i64>, i128)>) {
    let mut mn: Option<(i128, i128)> = None;
    let mut mx: Option<(i128, i128)> = None;
    for (v, &den) in f.dens.iter().enumerate() {
        let basei = v * n;
        let mut acc: i128 = 0;
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                acc += cj as i128 * f.nums[basei + j];
            }
        }
        match mn {
            Some((num, d)) if acc * d >= num * den => {}
            _ => mn = Some((acc, den)),
        }
        match mx {
            Some((num, d)) if acc * d <= num * den => {}
            _ => mx = Some((acc, den)),
        }
    }
    let (mn_num, mn_den) = mn.expect("nonempty vertex set");
    let (mx_num, mx_den) = mx.expect("nonempty vertex set");
    if mn_num.rem_euclid(mn_den) != 0 {
        let rhs = -div_floor_i128(-mn_num, mn_den); // ceil
        rows.push((c.to_vec(), rhs));
    }
    if mx_num.rem_euclid(mx_den) != 0 {
        let rhs = -div_floor_i128(mx_num, mx_den);
        rows.push((c.iter().map(|&x| -x).collect(), rhs));
    }
}

fn scan_big(c: &[i64], snapshot: &[(Vec<BigInt>, BigInt)], rows: &mut Vec<(Vec<i64>, i128)>) {
    let mut mn: Option<Rat> = None;
    let mut mx: Option<Rat> = None;
    for (coords, den) in snapshot {
        let mut acc = BigInt::zero();
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                acc += BigInt::from(cj) * &coords[j];
            }
        }
        let val = Rat::new(acc, den.clone());
        if mn.as_ref().map_or(true, |m| val < *m) {
            mn = Some(val.clone());
        }
        if mx.as_ref().map_or(true, |m| val > *m) {
            mx = Some(val);
        }
    }
    let mn = mn.expect("nonempty vertex set");
    let mx = mx.expect("nonempty vertex set");
    if !mn.is_integer() {
        let rhs = ceil_div(mn.numer(), mn.denom())
            .to_i128()
            .expect("cut level bounded by coefficient sizes");
        rows.push((c.to_vec(), rhs));
    }
    if !mx.is_integer() {
        let rhs = (-mx.floor().to_integer())
            .to_i128()
            .expect("cut level bounded by coefficient sizes");
        rows.push((c.iter().map(|&x| -x).collect(), rhs));
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// One closure round of a polytope given by an inequality description.
pub fn elementary_closure(p: &HPolytope, cfg: &ClosureConfig) -> Result<ClosureRound> {
    let s = p.with_box().integer_points();
    let mut engine = ClosureEngine::new(p, &s, cfg)?;
    engine.ensure_rounds(1)?;
    Ok(engine.rounds()[0].clone())
}

/// Number of closure rounds needed to shrink P (boxed) to the hull of its
/// integer points S, which must be supplied and match. Stops at `cap`
/// rounds; the certificate records whether convergence happened.
pub fn cg_rank(
    p: &HPolytope,
    s: &PointSet,
    cap: usize,
    cfg: &ClosureConfig,
) -> Result<RankCertificate> {
    let mut engine = ClosureEngine::new(p, s, cfg)?;
    let found = engine.rank_up_to(cap)?;
    Ok(match found {
        Some(rank) => RankCertificate { rank, converged: true, cap, rounds: engine.rounds().to_vec() },
        None => RankCertificate {
            rank: engine.stage_count(),
            converged: false,
            cap,
            rounds: engine.rounds().to_vec(),
        },
    })
}

/// Smallest t such that the inequality is valid for the t-fold closure of
/// the boxed input; the inequality must already be valid on S. None when the
/// cap is reached first.
pub fn validity_depth(
    p: &HPolytope,
    s: &PointSet,
    q: &LinIneq,
    cap: usize,
    cfg: &ClosureConfig,
) -> Result<Option<usize>> {
    if q.n() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: q.n() });
    }
    if !s.members().all(|m| q.holds_mask(m)) {
        return Err(Error::InvalidParameter(
            "inequality is not valid on the point set".into(),
        ));
    }
    let mut engine = ClosureEngine::new(p, s, cfg)?;
    engine.depth_up_to(q, cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproxFacetStatus {
    /// Scaled inequality verified valid at the target stage.
    Verified,
    /// Facet has a coefficient above its level, outside the guarantee.
    NotCovered,
    Violated,
}

#[derive(Clone, Debug)]
pub struct ApproxReport {
    pub notch: usize,
    pub eps: Rat,
    /// Stage promised by the guarantee: notch/eps - 1, clamped at zero.
    pub rounds_required: usize,
    /// Stage actually inspected (early convergence permits fewer rounds).
    pub rounds_used: usize,
    pub facets: Vec<(LinIneq, ApproxFacetStatus)>,
    pub all_pass: bool,
}

/// For notch p and admissible eps (positive, at most 1, with p/eps a
/// nonnegative integer), every hull facet whose switched coefficients are
/// bounded by its level keeps validity after relaxing the level by the
/// factor (1 - eps), already at stage p/eps - 1.
pub fn approx_closure_check(
    p: &HPolytope,
    s: &PointSet,
    eps: &Rat,
    cfg: &ClosureConfig,
) -> Result<ApproxReport> {
    if !eps.is_positive() || eps > &Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    let pn = notch(s);
    let ratio = Rat::from(BigInt::from(pn)) / eps;
    if !ratio.is_integer() {
        return Err(Error::EpsNotAdmissible { value: eps.clone() });
    }
    let rounds_required = (ratio.to_integer() - BigInt::one())
        .max(BigInt::zero())
        .to_usize()
        .expect("notch/eps stays small");
    let mut engine = ClosureEngine::new(p, s, cfg)?;
    let mut stage = 0;
    while stage < rounds_required && !engine.stage_matches_hull(stage) {
        engine.ensure_rounds(stage + 1)?;
        stage += 1;
    }
    let hull = crate::hull::hull_facets(s);
    let mut facets = Vec::new();
    let mut all_pass = true;
    for q in &hull.ineqs {
        let (_, coeffs, delta) = q.switched_view();
        if coeffs.iter().any(|c| c > &delta) {
            facets.push((q.clone(), ApproxFacetStatus::NotCovered));
            continue;
        }
        // relax the level: a.x >= beta - eps*delta, cleared to integers
        let slack = eps * Rat::from(delta);
        let target = Rat::from(q.rhs.clone()) - slack;
        let denom = target.denom().clone();
        let row = LinIneq::new(
            q.coeffs.iter().map(|c| c * &denom).collect(),
            target.numer().clone(),
        );
        let status = if engine.valid_at_stage(stage, &row) {
            ApproxFacetStatus::Verified
        } else {
            all_pass = false;
            ApproxFacetStatus::Violated
        };
        facets.push((q.clone(), status));
    }
    Ok(ApproxReport {
        notch: pn,
        eps: eps.clone(),
        rounds_required,
        rounds_used: stage,
        facets,
        all_pass,
    })
}
