//! Exact linear systems over the rationals: Fourier-Motzkin feasibility with
//! strict inequalities, affine dimension, recession tests, and facet
//! enumeration of bounded polyhedra.

use super::matrix::{rank_over_rationals, IntMatrix};
use crate::error::{HhlError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Lt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<BigInt>,
    pub bound: BigRational,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(normal: Vec<BigInt>, relation: Relation, bound: BigRational) -> Self {
        Constraint { normal, bound, relation }
    }

    fn eval(&self, p: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (c, x) in self.normal.iter().zip(p) {
            acc += BigRational::from(c.clone()) * x;
        }
        acc
    }

    pub fn holds_at(&self, p: &[BigRational]) -> bool {
        let v = self.eval(p);
        match self.relation {
            Relation::Eq => v == self.bound,
            Relation::Le => v <= self.bound,
            Relation::Lt => v < self.bound,
        }
    }
}

/// A finite list of linear constraints on Q^dim.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem { dim, constraints: Vec::new() }
    }

    pub fn push(&mut self, normal: Vec<BigInt>, relation: Relation, bound: BigRational) {
        assert_eq!(normal.len(), self.dim, "normal vector dimension mismatch");
        self.constraints.push(Constraint::new(normal, relation, bound));
    }

    pub fn push_int(&mut self, normal: Vec<BigInt>, relation: Relation, bound: BigInt) {
        self.push(normal, relation, BigRational::from(bound));
    }

    /// Same constraints with strict inequalities relaxed to weak ones.
    pub fn closure(&self) -> LinearSystem {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let relation = match c.relation {
                    Relation::Lt => Relation::Le,
                    r => r,
                };
                Constraint::new(c.normal.clone(), relation, c.bound.clone())
            })
            .collect();
        LinearSystem { dim: self.dim, constraints }
    }

    pub fn satisfied_by(&self, p: &RationalPoint) -> bool {
        assert_eq!(p.dim(), self.dim);
        self.constraints.iter().all(|c| c.holds_at(&p.0))
    }
}

/// A point of Q^dim; coordinates are always stored reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn origin(dim: usize) -> Self {
        RationalPoint(vec![BigRational::zero(); dim])
    }
}

#[derive(Clone, Debug)]
struct FmRow {
    normal: Vec<BigInt>,
    bound: BigRational,
    strict: bool,
}

impl FmRow {
    fn normalize(&mut self) {
        let mut g = BigInt::zero();
        for c in &self.normal {
            g = g.gcd(c);
        }
        if g > BigInt::one() {
            for c in self.normal.iter_mut() {
                *c /= &g;
            }
            self.bound /= BigRational::from(g);
        }
    }
}

fn expand_rows(sys: &LinearSystem) -> Vec<FmRow> {
    let mut rows = Vec::new();
    for c in &sys.constraints {
        match c.relation {
            Relation::Le | Relation::Lt => rows.push(FmRow {
                normal: c.normal.clone(),
                bound: c.bound.clone(),
                strict: c.relation == Relation::Lt,
            }),
            Relation::Eq => {
                rows.push(FmRow { normal: c.normal.clone(), bound: c.bound.clone(), strict: false });
                rows.push(FmRow {
                    normal: c.normal.iter().map(|v| -v.clone()).collect(),
                    bound: -c.bound.clone(),
                    strict: false,
                });
            }
        }
    }
    rows
}

/// Eliminates variables `keep..dim` (highest first). Returns the surviving
/// rows (supported on `0..keep`) and, per eliminated variable, the rows that
/// mentioned it at its elimination stage. Returns `None` when a constant row
/// is contradictory.
fn eliminate(rows: Vec<FmRow>, dim: usize, keep: usize) -> Option<(Vec<FmRow>, Vec<Vec<FmRow>>)> {
    let mut current = rows;
    let mut stages: Vec<Vec<FmRow>> = vec![Vec::new(); dim];
    for j in (keep..dim).rev() {
        let mut lower: Vec<FmRow> = Vec::new();
        let mut upper: Vec<FmRow> = Vec::new();
        let mut untouched: Vec<FmRow> = Vec::new();
        for row in current {
            match row.normal[j].sign() {
                num_bigint::Sign::Plus => upper.push(row),
                num_bigint::Sign::Minus => lower.push(row),
                num_bigint::Sign::NoSign => untouched.push(row),
            }
        }
        for up in &upper {
            for lo in &lower {
                let a = up.normal[j].clone(); // > 0
                let b = -lo.normal[j].clone(); // > 0
                let mut normal = vec![BigInt::zero(); dim];
                for (idx, slot) in normal.iter_mut().enumerate() {
                    *slot = &b * &up.normal[idx] + &a * &lo.normal[idx];
                }
                debug_assert!(normal[j].is_zero());
                let bound =
                    BigRational::from(b) * &up.bound + BigRational::from(a) * &lo.bound;
                let mut row = FmRow { normal, bound, strict: up.strict || lo.strict };
                row.normalize();
                if row.normal.iter().all(Zero::is_zero) {
                    if row.bound.is_negative() || (row.bound.is_zero() && row.strict) {
                        return None;
                    }
                } else {
                    untouched.push(row);
                }
            }
        }
        let mut stage = upper;
        stage.extend(lower);
        stages[j] = stage;
        current = untouched;
    }
    // rows that were constant from the start
    let mut residual = Vec::new();
    for row in current {
        if row.normal.iter().all(Zero::is_zero) {
            if row.bound.is_negative() || (row.bound.is_zero() && row.strict) {
                return None;
            }
        } else {
            residual.push(row);
        }
    }
    Some((residual, stages))
}

/// Exact feasibility with strict-inequality support. Returns a witness point
/// satisfying every constraint (strict ones strictly) iff one exists.
pub fn strict_feasible(sys: &LinearSystem) -> Option<RationalPoint> {
    let dim = sys.dim;
    let rows = expand_rows(sys);
    let (residual, stages) = eliminate(rows, dim, 0)?;
    debug_assert!(residual.is_empty());

    // back-substitute, lowest variable first
    let mut x = vec![BigRational::zero(); dim];
    for j in 0..dim {
        let mut lo: Option<(BigRational, bool)> = None;
        let mut hi: Option<(BigRational, bool)> = None;
        for row in &stages[j] {
            let mut rest = row.bound.clone();
            for i in 0..j {
                rest -= BigRational::from(row.normal[i].clone()) * &x[i];
            }
            let coef = BigRational::from(row.normal[j].clone());
            let v = rest / coef;
            if row.normal[j].is_positive() {
                hi = Some(match hi {
                    None => (v, row.strict),
                    Some((hv, hs)) => {
                        if v < hv {
                            (v, row.strict)
                        } else if v == hv {
                            (hv, hs || row.strict)
                        } else {
                            (hv, hs)
                        }
                    }
                });
            } else {
                lo = Some(match lo {
                    None => (v, row.strict),
                    Some((lv, ls)) => {
                        if v > lv {
                            (v, row.strict)
                        } else if v == lv {
                            (lv, ls || row.strict)
                        } else {
                            (lv, ls)
                        }
                    }
                });
            }
        }
        x[j] = match (lo, hi) {
            (None, None) => BigRational::zero(),
            (Some((l, _)), None) => l + BigRational::one(),
            (None, Some((h, _))) => h - BigRational::one(),
            (Some((l, ls)), Some((h, hs))) => {
                if l < h {
                    (l + h) / BigRational::from(BigInt::from(2))
                } else {
                    debug_assert!(l == h && !ls && !hs, "projection must leave a valid interval");
                    l
                }
            }
        };
    }
    let p = RationalPoint(x);
    debug_assert!(sys.satisfied_by(&p), "witness must satisfy the system");
    Some(p)
}

/// Dimension of the relative interior of the solution set, or `None` if the
/// system is infeasible.
pub fn affine_dimension(sys: &LinearSystem) -> Option<usize> {
    strict_feasible(sys)?;
    let mut eq_normals: Vec<Vec<BigInt>> = sys
        .constraints
        .iter()
        .filter(|c| c.relation == Relation::Eq)
        .map(|c| c.normal.clone())
        .collect();
    let le_rows: Vec<usize> = sys
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.relation == Relation::Le)
        .map(|(i, _)| i)
        .collect();
    if !le_rows.is_empty() {
        // all weak rows strict at once: the common case has no implied equalities
        let mut all_strict = sys.clone();
        for &i in &le_rows {
            all_strict.constraints[i].relation = Relation::Lt;
        }
        if strict_feasible(&all_strict).is_none() {
            for &i in &le_rows {
                let mut probe = sys.clone();
                probe.constraints[i].relation = Relation::Lt;
                if strict_feasible(&probe).is_none() {
                    eq_normals.push(sys.constraints[i].normal.clone());
                }
            }
        }
    }
    let rank = if eq_normals.is_empty() {
        0
    } else {
        rank_over_rationals(&IntMatrix::from_rows(eq_normals))
    };
    Some(sys.dim - rank)
}

/// Indices of weak rows that hold with equality on every solution.
pub fn implied_equalities(sys: &LinearSystem) -> Option<Vec<usize>> {
    strict_feasible(sys)?;
    let le_rows: Vec<usize> = sys
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.relation == Relation::Le)
        .map(|(i, _)| i)
        .collect();
    if le_rows.is_empty() {
        return Some(Vec::new());
    }
    // common case: everything can be strict at once
    let mut all_strict = sys.clone();
    for &i in &le_rows {
        all_strict.constraints[i].relation = Relation::Lt;
    }
    if strict_feasible(&all_strict).is_some() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for &i in &le_rows {
        let mut probe = sys.clone();
        probe.constraints[i].relation = Relation::Lt;
        if strict_feasible(&probe).is_none() {
            out.push(i);
        }
    }
    Some(out)
}

/// A point in the relative interior of the solution set.
pub fn relative_interior_point(sys: &LinearSystem) -> Option<RationalPoint> {
    let implied = implied_equalities(sys)?;
    let mut refined = sys.clone();
    for (i, c) in refined.constraints.iter_mut().enumerate() {
        if c.relation == Relation::Le {
            c.relation = if implied.contains(&i) { Relation::Eq } else { Relation::Lt };
        }
    }
    let p = strict_feasible(&refined);
    debug_assert!(p.is_some(), "relative interior of a nonempty set is nonempty");
    p
}

/// True iff `{x : a x <= 0}` is the origin alone, i.e. the rows of `a`
/// positively span the whole space.
pub fn is_recession_trivial(a: &IntMatrix) -> bool {
    let k = a.ncols();
    let mut sys = LinearSystem::new(k);
    for i in 0..a.nrows() {
        sys.push_int(a.row(i).to_vec(), Relation::Le, BigInt::zero());
    }
    affine_dimension(&sys) == Some(0)
}

/// Exact range of the linear functional `f . x` over the solution set.
/// Returns `None` if infeasible; unbounded sides come back as `None` bounds.
pub fn linear_functional_interval(
    sys: &LinearSystem,
    f: &[BigInt],
) -> Option<(Option<BigRational>, Option<BigRational>)> {
    let dim = sys.dim;
    assert_eq!(f.len(), dim);
    // auxiliary variable t at index 0, original variables shifted up
    let mut rows = Vec::new();
    for c in &sys.constraints {
        let mut normal = vec![BigInt::zero(); dim + 1];
        normal[1..].clone_from_slice(&c.normal);
        match c.relation {
            Relation::Eq => {
                rows.push(FmRow { normal: normal.clone(), bound: c.bound.clone(), strict: false });
                rows.push(FmRow {
                    normal: normal.iter().map(|v| -v.clone()).collect(),
                    bound: -c.bound.clone(),
                    strict: false,
                });
            }
            rel => rows.push(FmRow {
                normal,
                bound: c.bound.clone(),
                strict: rel == Relation::Lt,
            }),
        }
    }
    // t = f . x
    let mut tie = vec![BigInt::zero(); dim + 1];
    tie[0] = BigInt::one();
    for (i, v) in f.iter().enumerate() {
        tie[1 + i] = -v.clone();
    }
    rows.push(FmRow { normal: tie.clone(), bound: BigRational::zero(), strict: false });
    rows.push(FmRow {
        normal: tie.iter().map(|v| -v.clone()).collect(),
        bound: BigRational::zero(),
        strict: false,
    });

    let (residual, _) = eliminate(rows, dim + 1, 1)?;
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for row in &residual {
        let coef = &row.normal[0];
        debug_assert!(!coef.is_zero());
        let v = &row.bound / BigRational::from(coef.clone());
        if coef.is_positive() {
            hi = Some(match hi {
                None => v,
                Some(h) => h.min(v),
            });
        } else {
            lo = Some(match lo {
                None => v,
                Some(l) => l.max(v),
            });
        }
    }
    Some((lo, hi))
}

/// Facets (faces of dimension one less) of the closed polyhedron described by
/// `sys`, each given by turning a maximal consistent set of weak rows into
/// equalities. Errors on unbounded input.
pub fn polytope_facets(sys: &LinearSystem) -> Result<Vec<LinearSystem>> {
    let closed = sys.closure();
    if strict_feasible(&closed).is_none() {
        return Err(HhlError::EmptyPolyhedron);
    }
    // recession cone: all bounds go to zero
    let mut recession = LinearSystem::new(closed.dim);
    for c in &closed.constraints {
        recession.push(c.normal.clone(), c.relation, BigRational::zero());
    }
    if affine_dimension(&recession) != Some(0) {
        return Err(HhlError::UnboundedPolyhedron);
    }
    let ambient_eq: Vec<usize> = implied_equalities(&closed).expect("feasible");
    let rank_of = |tight: &[usize]| -> usize {
        let rows: Vec<Vec<BigInt>> = tight
            .iter()
            .map(|&j| closed.constraints[j].normal.clone())
            .collect();
        if rows.is_empty() {
            0
        } else {
            rank_over_rationals(&IntMatrix::from_rows(rows))
        }
    };
    let mut ambient_tight: Vec<usize> = closed
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.relation == Relation::Eq)
        .map(|(j, _)| j)
        .collect();
    ambient_tight.extend(ambient_eq.iter().copied());
    ambient_tight.sort_unstable();
    ambient_tight.dedup();
    let ambient_rank = rank_of(&ambient_tight);
    let dim = closed.dim - ambient_rank;

    let mut facets: std::collections::BTreeMap<Vec<usize>, LinearSystem> =
        std::collections::BTreeMap::new();
    for (i, c) in closed.constraints.iter().enumerate() {
        if c.relation != Relation::Le || ambient_eq.contains(&i) {
            continue;
        }
        let mut tightened = closed.clone();
        tightened.constraints[i].relation = Relation::Eq;
        let Some(implied) = implied_equalities(&tightened) else {
            continue;
        };
        let mut tight: Vec<usize> = ambient_tight.clone();
        tight.push(i);
        tight.extend(implied.iter().copied());
        tight.sort_unstable();
        tight.dedup();
        if dim == 0 || closed.dim - rank_of(&tight) != dim - 1 {
            continue;
        }
        facets.entry(tight.clone()).or_insert_with(|| {
            let mut facet = closed.clone();
            for &j in &tight {
                facet.constraints[j].relation = Relation::Eq;
            }
            facet
        });
    }
    Ok(facets.into_values().collect())
}

/// All integer points of `{z : a z <= b}`; errors when the region is
/// unbounded. Output is in lexicographic order.
pub fn integer_points(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let k = a.ncols();
    assert_eq!(a.nrows(), b.len());
    if k == 1 {
        return integer_points_interval(a, b);
    }
    let mut sys = LinearSystem::new(k);
    for i in 0..a.nrows() {
        sys.push_int(a.row(i).to_vec(), Relation::Le, b[i].clone());
    }
    if strict_feasible(&sys).is_none() {
        return Ok(Vec::new());
    }
    let mut ranges: Vec<(BigInt, BigInt)> = Vec::with_capacity(k);
    for j in 0..k {
        let mut f = vec![BigInt::zero(); k];
        f[j] = BigInt::one();
        let (lo, hi) = linear_functional_interval(&sys, &f).expect("feasible");
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(HhlError::UnboundedPolyhedron);
        };
        ranges.push((lo.ceil().to_integer(), hi.floor().to_integer()));
    }
    let mut out = Vec::new();
    let mut point = vec![BigInt::zero(); k];
    fn recurse(
        a: &IntMatrix,
        b: &[BigInt],
        ranges: &[(BigInt, BigInt)],
        point: &mut Vec<BigInt>,
        level: usize,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if level == ranges.len() {
            let img = a.mul_vec(point);
            if img.iter().zip(b).all(|(v, bound)| v <= bound) {
                out.push(point.clone());
            }
            return;
        }
        let (lo, hi) = &ranges[level];
        let mut z = lo.clone();
        while &z <= hi {
            point[level] = z.clone();
            recurse(a, b, ranges, point, level + 1, out);
            z += 1;
        }
    }
    recurse(a, b, &ranges, &mut point, 0, &mut out);
    Ok(out)
}

/// Enumerates `{z in Z^k : psi z <= b}` for many right-hand sides, with the
/// projection structure of the elimination precomputed once. The projected
/// bound of each coordinate is a fixed integer functional of `b`.
#[derive(Clone, Debug)]
pub struct ShiftEnumerator {
    psi: IntMatrix,
    /// Per coordinate `j`: rows `(c, lambda)` meaning `c * z_j <= lambda . b`.
    coord_bounds: Option<Vec<Vec<(BigInt, Vec<BigInt>)>>>,
}

impl ShiftEnumerator {
    pub fn new(psi: &IntMatrix) -> Self {
        let k = psi.ncols();
        let n = psi.nrows();
        if k == 0 || k > 2 {
            return ShiftEnumerator { psi: psi.clone(), coord_bounds: None };
        }
        // symbolic rows: (normal in Z^k, functional on b)
        let base: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n)
            .map(|i| {
                let mut f = vec![BigInt::zero(); n];
                f[i] = BigInt::one();
                (psi.row(i).to_vec(), f)
            })
            .collect();
        let mut coord_bounds = Vec::with_capacity(k);
        for j in 0..k {
            let mut rows = base.clone();
            for other in (0..k).filter(|&o| o != j) {
                let mut kept = Vec::new();
                let mut uppers = Vec::new();
                let mut lowers = Vec::new();
                for row in rows {
                    match row.0[other].sign() {
                        num_bigint::Sign::Plus => uppers.push(row),
                        num_bigint::Sign::Minus => lowers.push(row),
                        num_bigint::Sign::NoSign => kept.push(row),
                    }
                }
                for (un, uf) in &uppers {
                    for (ln, lf) in &lowers {
                        let a = un[other].clone();
                        let c = -ln[other].clone();
                        let normal: Vec<BigInt> = un
                            .iter()
                            .zip(ln)
                            .map(|(u, l)| &c * u + &a * l)
                            .collect();
                        let functional: Vec<BigInt> = uf
                            .iter()
                            .zip(lf)
                            .map(|(u, l)| &c * u + &a * l)
                            .collect();
                        let mut g = BigInt::zero();
                        for v in normal.iter().chain(&functional) {
                            g = g.gcd(v);
                        }
                        if g > BigInt::one() {
                            kept.push((
                                normal.iter().map(|v| v / &g).collect(),
                                functional.iter().map(|v| v / &g).collect(),
                            ));
                        } else {
                            kept.push((normal, functional));
                        }
                    }
                }
                rows = kept;
            }
            let bounds: Vec<(BigInt, Vec<BigInt>)> = rows
                .into_iter()
                .filter(|(normal, _)| !normal[j].is_zero())
                .map(|(normal, f)| (normal[j].clone(), f))
                .collect();
            coord_bounds.push(bounds);
        }
        ShiftEnumerator { psi: psi.clone(), coord_bounds: Some(coord_bounds) }
    }

    pub fn points(&self, b: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
        let Some(coord_bounds) = &self.coord_bounds else {
            return integer_points(&self.psi, b);
        };
        let k = self.psi.ncols();
        let mut ranges = Vec::with_capacity(k);
        for bounds in coord_bounds {
            let mut lo: Option<BigInt> = None;
            let mut hi: Option<BigInt> = None;
            for (c, f) in bounds {
                let beta: BigInt = f.iter().zip(b).map(|(a, v)| a * v).sum();
                let q = beta.div_floor(c);
                if c.is_positive() {
                    hi = Some(match hi {
                        None => q,
                        Some(h) => h.min(q),
                    });
                } else {
                    let bound = if (c * &q) == beta { q } else { q + 1 };
                    lo = Some(match lo {
                        None => bound,
                        Some(l) => l.max(bound),
                    });
                }
            }
            let (Some(lo), Some(hi)) = (lo, hi) else {
                return Err(HhlError::UnboundedPolyhedron);
            };
            ranges.push((lo, hi));
        }
        let mut out = Vec::new();
        let mut point = vec![BigInt::zero(); k];
        grid_filter(&self.psi, b, &ranges, &mut point, 0, &mut out);
        Ok(out)
    }
}

fn grid_filter(
    psi: &IntMatrix,
    b: &[BigInt],
    ranges: &[(BigInt, BigInt)],
    point: &mut Vec<BigInt>,
    level: usize,
    out: &mut Vec<Vec<BigInt>>,
) {
    if level == ranges.len() {
        let img = psi.mul_vec(point);
        if img.iter().zip(b).all(|(v, bound)| v <= bound) {
            out.push(point.clone());
        }
        return;
    }
    let (lo, hi) = &ranges[level];
    let mut z = lo.clone();
    while &z <= hi {
        point[level] = z.clone();
        grid_filter(psi, b, ranges, point, level + 1, out);
        z += 1;
    }
}

/// One-variable case of `integer_points`: a direct interval scan.
fn integer_points_interval(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for i in 0..a.nrows() {
        let c = a.at(i, 0);
        if c.is_zero() {
            if b[i].is_negative() {
                return Ok(Vec::new());
            }
            continue;
        }
        let q = b[i].div_floor(c);
        if c.is_positive() {
            // z <= floor(b/c)
            hi = Some(match hi {
                None => q,
                Some(h) => h.min(q),
            });
        } else {
            // z >= ceil(b/c) = floor with sign care
            let bound = if (c * &q) == b[i] { q } else { q + 1 };
            lo = Some(match lo {
                None => bound,
                Some(l) => l.max(bound),
            });
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(HhlError::UnboundedPolyhedron);
    };
    let mut out = Vec::new();
    let mut z = lo;
    while z <= hi {
        out.push(vec![z.clone()]);
        z += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rat2(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn feasible_forced_point() {
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::from(1)], Relation::Le, BigInt::zero());
        sys.push_int(vec![BigInt::from(-1)], Relation::Le, BigInt::zero());
        let p = strict_feasible(&sys).unwrap();
        assert_eq!(p.0[0], rat(0));
    }

    #[test]
    fn infeasible_interval() {
        // 3x <= -1 and -2x <= 0 need x >= 0 and x <= -1/3
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::from(3)], Relation::Le, BigInt::from(-1));
        sys.push_int(vec![BigInt::from(-2)], Relation::Le, BigInt::zero());
        assert!(strict_feasible(&sys).is_none());
    }

    #[test]
    fn open_interval_witness() {
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::from(-1)], Relation::Lt, BigInt::zero());
        sys.push_int(vec![BigInt::from(1)], Relation::Lt, BigInt::one());
        let p = strict_feasible(&sys).unwrap();
        assert!(p.0[0] > rat(0) && p.0[0] < rat(1));
    }

    #[test]
    fn empty_system_origin() {
        let sys = LinearSystem::new(2);
        let p = strict_feasible(&sys).unwrap();
        assert_eq!(p, RationalPoint::origin(2));
    }

    #[test]
    fn affine_dimension_examples() {
        let mut point = LinearSystem::new(1);
        point.push_int(vec![BigInt::one()], Relation::Eq, BigInt::zero());
        assert_eq!(affine_dimension(&point), Some(0));

        let mut open = LinearSystem::new(1);
        open.push_int(vec![BigInt::from(-1)], Relation::Lt, BigInt::zero());
        open.push_int(vec![BigInt::one()], Relation::Lt, BigInt::one());
        assert_eq!(affine_dimension(&open), Some(1));

        let mut single = LinearSystem::new(1);
        single.push_int(vec![BigInt::from(3)], Relation::Eq, BigInt::one());
        assert_eq!(affine_dimension(&single), Some(0));

        let mut empty = LinearSystem::new(1);
        empty.push_int(vec![BigInt::one()], Relation::Le, BigInt::from(-1));
        empty.push_int(vec![BigInt::from(-1)], Relation::Le, BigInt::zero());
        assert_eq!(affine_dimension(&empty), None);
    }

    #[test]
    fn implied_equality_detection() {
        // x <= 0 and -x <= 0 are both implied equalities
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::one()], Relation::Le, BigInt::zero());
        sys.push_int(vec![BigInt::from(-1)], Relation::Le, BigInt::zero());
        assert_eq!(implied_equalities(&sys), Some(vec![0, 1]));
    }

    #[test]
    fn recession_examples() {
        assert!(is_recession_trivial(&IntMatrix::from_i64_rows(&[vec![3], vec![-2]])));
        assert!(!is_recession_trivial(&IntMatrix::from_i64_rows(&[
            vec![2, -1],
            vec![-1, 2]
        ])));
        assert!(!is_recession_trivial(&IntMatrix::identity(1)));
    }

    #[test]
    fn facets_of_interval() {
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::from(-1)], Relation::Le, BigInt::zero());
        sys.push_int(vec![BigInt::one()], Relation::Le, BigInt::one());
        let facets = polytope_facets(&sys).unwrap();
        assert_eq!(facets.len(), 2);
        // first facet pins x = 0, second x = 1
        let p0 = strict_feasible(&facets[0]).unwrap();
        let p1 = strict_feasible(&facets[1]).unwrap();
        assert_eq!(p0.0[0], rat(0));
        assert_eq!(p1.0[0], rat(1));
    }

    #[test]
    fn facets_of_triangle() {
        let mut sys = LinearSystem::new(2);
        sys.push_int(vec![BigInt::from(-1), BigInt::zero()], Relation::Le, BigInt::zero());
        sys.push_int(vec![BigInt::zero(), BigInt::from(-1)], Relation::Le, BigInt::zero());
        sys.push_int(vec![BigInt::one(), BigInt::one()], Relation::Le, BigInt::one());
        let facets = polytope_facets(&sys).unwrap();
        assert_eq!(facets.len(), 3);
        for f in &facets {
            assert_eq!(affine_dimension(f), Some(1));
        }
    }

    #[test]
    fn facets_of_scaled_segment() {
        // 0 <= 3x <= 1, endpoints at x = 0 and x = 1/3
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::from(-3)], Relation::Le, BigInt::zero());
        sys.push_int(vec![BigInt::from(3)], Relation::Le, BigInt::one());
        let facets = polytope_facets(&sys).unwrap();
        assert_eq!(facets.len(), 2);
        let pts: Vec<BigRational> = facets
            .iter()
            .map(|f| strict_feasible(f).unwrap().0[0].clone())
            .collect();
        assert!(pts.contains(&rat(0)));
        assert!(pts.contains(&rat2(1, 3)));
    }

    #[test]
    fn facets_reject_unbounded() {
        let mut sys = LinearSystem::new(1);
        sys.push_int(vec![BigInt::one()], Relation::Le, BigInt::zero());
        assert!(matches!(
            polytope_facets(&sys),
            Err(HhlError::UnboundedPolyhedron)
        ));
    }

    #[test]
    fn facet_dimension_drop() {
        // every facet of a feasible bounded region has dimension exactly one less
        let mut sys = LinearSystem::new(2);
        sys.push_int(vec![BigInt::from(2), BigInt::from(-1)], Relation::Le, BigInt::from(1));
        sys.push_int(vec![BigInt::from(-1), BigInt::from(2)], Relation::Le, BigInt::from(1));
        sys.push_int(vec![BigInt::from(-1), BigInt::from(-1)], Relation::Le, BigInt::from(1));
        let d = affine_dimension(&sys).unwrap();
        for f in polytope_facets(&sys).unwrap() {
            assert_eq!(affine_dimension(&f), Some(d - 1));
        }
    }

    #[test]
    fn functional_interval_on_box() {
        let mut sys = LinearSystem::new(2);
        for j in 0..2 {
            let mut up = vec![BigInt::zero(); 2];
            up[j] = BigInt::one();
            let mut down = vec![BigInt::zero(); 2];
            down[j] = BigInt::from(-1);
            sys.push_int(up, Relation::Le, BigInt::one());
            sys.push_int(down, Relation::Le, BigInt::zero());
        }
        let (lo, hi) =
            linear_functional_interval(&sys, &[BigInt::from(2), BigInt::from(-1)]).unwrap();
        assert_eq!(lo, Some(rat(-1)));
        assert_eq!(hi, Some(rat(2)));
    }

    #[test]
    fn integer_points_triangle() {
        // z1 >= 0, z2 >= 0, z1 + z2 <= 2
        let a = IntMatrix::from_i64_rows(&[vec![-1, 0], vec![0, -1], vec![1, 1]]);
        let b = vec![BigInt::zero(), BigInt::zero(), BigInt::from(2)];
        let pts = integer_points(&a, &b).unwrap();
        assert_eq!(pts.len(), 6);
    }
}
