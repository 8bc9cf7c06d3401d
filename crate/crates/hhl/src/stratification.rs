//! Bondal stratification of the torus dual to `Lambda`, induced by the
//! periodic hyperplanes `H_i = a`. Strata are enumerated from candidates over
//! a fundamental cube, canonicalized by Hermite coset reduction of their
//! ceiling vectors, and equipped with deterministic orientations and facet
//! incidence records.

use crate::error::{HhlError, Result};
use crate::exactmath::{
    coords_in_basis, det_sign_of_columns, hermite_coset_reduce, nullspace_basis, polytope_facets,
    rank_over_rationals, relative_interior_point, strict_feasible, IntMatrix, LinearSystem,
    RationalPoint, Relation,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// The pair `(L, psi: L -> Lambda)`: row `i` of `psi` is the image of the
/// i-th basis vector of `L` in `Lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMapInput {
    pub n: usize,
    pub k: usize,
    pub psi: IntMatrix,
}

impl LatticeMapInput {
    pub fn new(rows: &[Vec<i64>], k: usize) -> Self {
        let psi = IntMatrix::from_i64_rows(rows);
        LatticeMapInput { n: psi.nrows(), k, psi }
    }

    /// Finite cokernel check: the matrix with rows `psi(v_i)` has rank `k`.
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.n < self.k {
            return Err(HhlError::BadRanks { n: self.n, k: self.k });
        }
        if self.psi.nrows() != self.n || self.psi.ncols() != self.k {
            return Err(HhlError::Input(format!(
                "psi must be a {}x{} matrix",
                self.n, self.k
            )));
        }
        if rank_over_rationals(&self.psi) != self.k {
            return Err(HhlError::CokernelNotFinite);
        }
        Ok(())
    }

    pub fn hyperplane_normal(&self, i: usize) -> &[BigInt] {
        self.psi.row(i)
    }

    pub fn h_value(&self, i: usize, p: &RationalPoint) -> BigRational {
        let mut acc = BigRational::zero();
        for (c, x) in self.psi.row(i).iter().zip(&p.0) {
            acc += BigRational::from(c.clone()) * x;
        }
        acc
    }

    /// Ceiling vectors of lifts of one torus stratum differ by this lattice.
    pub fn ceiling_lattice(&self) -> &IntMatrix {
        &self.psi
    }

    pub fn reduce_ceilings(&self, c: &[BigInt]) -> Vec<BigInt> {
        hermite_coset_reduce(c, &self.psi)
    }
}

pub fn validate_input(input: &LatticeMapInput) -> Result<()> {
    input.validate()
}

/// Combinatorial type of a lifted stratum: which hyperplanes it lies on and
/// the ceiling vector `(ceil H_i)_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StratumType {
    pub walls: BTreeSet<usize>,
    pub ceilings: Vec<BigInt>,
    pub dim: usize,
}

/// A stratum of the torus, stored through its canonical lift.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub id: usize,
    pub ty: StratumType,
    /// Ordered rational basis of the direction space `{x : <psi(v_i), x> = 0
    /// for all walls i}`; the fixed orientation of the stratum.
    pub orientation: Vec<Vec<BigRational>>,
    pub interior_point: RationalPoint,
}

/// One facet incidence between a stratum and a specific lift of one of its
/// facets. Several records may connect the same pair of torus strata.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IncidenceRecord {
    pub from: usize,
    pub to: usize,
    pub lift_ceilings: Vec<BigInt>,
    pub epsilon: Vec<u8>,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct StrataComplex {
    pub input: LatticeMapInput,
    pub strata: Vec<Stratum>,
    /// Stratum ids grouped by dimension 0..=k.
    pub by_dim: Vec<Vec<usize>>,
    pub incidences: Vec<IncidenceRecord>,
    index: BTreeMap<(Vec<usize>, Vec<BigInt>), usize>,
}

impl StrataComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(m, &count)| if m % 2 == 0 { count as i64 } else { -(count as i64) })
            .sum()
    }

    pub fn lookup(&self, walls: &BTreeSet<usize>, reduced_ceilings: &[BigInt]) -> Option<usize> {
        let key = (walls.iter().copied().collect(), reduced_ceilings.to_vec());
        self.index.get(&key).copied()
    }

    pub fn incidences_from(&self, sigma: usize) -> impl Iterator<Item = &IncidenceRecord> {
        self.incidences.iter().filter(move |r| r.from == sigma)
    }

    /// Closed system cut out by the canonical lift of a stratum.
    pub fn canonical_lift_closure(&self, sigma: usize) -> LinearSystem {
        stratum_system(&self.input, &self.strata[sigma].ty, false)
    }

    /// Rebuild the complex with the orientation of the listed strata
    /// reversed; incidence signs are recomputed from scratch.
    pub fn flip_orientations(&self, flips: &BTreeSet<usize>) -> StrataComplex {
        let mut out = self.clone();
        for &id in flips {
            let s = &mut out.strata[id];
            if s.ty.dim == 0 {
                continue;
            }
            for v in s.orientation[0].iter_mut() {
                *v = -v.clone();
            }
        }
        out.incidences = build_incidences(&out);
        out
    }
}

/// The defining system of the lift with the given type: wall rows as
/// equalities, slab rows `c_i - 1 (<|<=) H_i (<|<=) c_i` otherwise.
pub fn stratum_system(input: &LatticeMapInput, ty: &StratumType, open: bool) -> LinearSystem {
    let rel = if open { Relation::Lt } else { Relation::Le };
    let mut sys = LinearSystem::new(input.k);
    for i in 0..input.n {
        let normal = input.psi.row(i).to_vec();
        if ty.walls.contains(&i) {
            sys.push_int(normal, Relation::Eq, ty.ceilings[i].clone());
        } else {
            sys.push_int(normal.clone(), rel, ty.ceilings[i].clone());
            let neg: Vec<BigInt> = normal.iter().map(|v| -v.clone()).collect();
            sys.push_int(neg, rel, BigInt::one() - &ty.ceilings[i]);
        }
    }
    sys
}

fn wall_matrix(input: &LatticeMapInput, walls: &BTreeSet<usize>) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = walls.iter().map(|&i| input.psi.row(i).to_vec()).collect();
    if rows.is_empty() {
        IntMatrix::zero(0, input.k)
    } else {
        IntMatrix::from_rows(rows)
    }
}

/// Candidate ceiling range for index `i` over the cube `offset + [0,1]^k`:
/// integers in `[min H_i, max H_i + 1]`.
fn ceiling_range(input: &LatticeMapInput, i: usize, offset: &[BigInt]) -> (BigInt, BigInt) {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (j, c) in input.psi.row(i).iter().enumerate() {
        let base = c * &offset[j];
        if c.is_negative() {
            lo += &base + c;
            hi += base;
        } else {
            lo += &base;
            hi += base + c;
        }
    }
    (lo, hi + 1)
}

struct CandidateSearch<'a> {
    input: &'a LatticeMapInput,
    ranges: Vec<(BigInt, BigInt)>,
    base: LinearSystem,
    found: Vec<(BTreeSet<usize>, Vec<BigInt>)>,
}

impl<'a> CandidateSearch<'a> {
    fn run(input: &'a LatticeMapInput, offset: &[BigInt]) -> Vec<(BTreeSet<usize>, Vec<BigInt>)> {
        let k = input.k;
        let mut base = LinearSystem::new(k);
        for j in 0..k {
            let mut up = vec![BigInt::zero(); k];
            up[j] = BigInt::one();
            let mut down = vec![BigInt::zero(); k];
            down[j] = BigInt::from(-1);
            base.push_int(up, Relation::Le, &offset[j] + 1);
            base.push_int(down, Relation::Le, -offset[j].clone());
        }
        let ranges = (0..input.n).map(|i| ceiling_range(input, i, offset)).collect();
        let mut search = CandidateSearch { input, ranges, base, found: Vec::new() };
        let mut walls = BTreeSet::new();
        let mut ceilings = Vec::new();
        search.descend(0, &mut walls, &mut ceilings);
        search.found
    }

    fn descend(&mut self, level: usize, walls: &mut BTreeSet<usize>, ceilings: &mut Vec<BigInt>) {
        if level == self.input.n {
            self.found.push((walls.clone(), ceilings.clone()));
            return;
        }
        let (lo, hi) = self.ranges[level].clone();
        let normal = self.input.psi.row(level).to_vec();
        let mut a = lo;
        while a <= hi {
            // wall branch: H_level = a
            let row_len = self.base.constraints.len();
            self.base.push_int(normal.clone(), Relation::Eq, a.clone());
            if strict_feasible(&self.base).is_some() {
                walls.insert(level);
                ceilings.push(a.clone());
                self.descend(level + 1, walls, ceilings);
                ceilings.pop();
                walls.remove(&level);
            }
            self.base.constraints.truncate(row_len);

            // open slab branch: a - 1 < H_level < a
            self.base.push_int(normal.clone(), Relation::Lt, a.clone());
            let neg: Vec<BigInt> = normal.iter().map(|v| -v.clone()).collect();
            self.base.push_int(neg, Relation::Lt, BigInt::one() - &a);
            if strict_feasible(&self.base).is_some() {
                ceilings.push(a.clone());
                self.descend(level + 1, walls, ceilings);
                ceilings.pop();
            }
            self.base.constraints.truncate(row_len);

            a += 1;
        }
    }
}

/// Enumerate the Bondal stratification. Strata are found as candidates over
/// a fundamental cube, coset-reduced, deduplicated, sorted, and given
/// deterministic ids; facet incidences are attached.
pub fn enumerate_strata(input: &LatticeMapInput) -> Result<StrataComplex> {
    enumerate_strata_with_offset(input, &vec![BigInt::zero(); input.k])
}

/// Same enumeration seeded from the translated cube `offset + [0,1]^k`; the
/// result is independent of the offset.
pub fn enumerate_strata_with_offset(
    input: &LatticeMapInput,
    offset: &[BigInt],
) -> Result<StrataComplex> {
    input.validate()?;
    let raw = CandidateSearch::run(input, offset);

    let mut canonical: BTreeMap<(Vec<usize>, Vec<BigInt>), BTreeSet<usize>> = BTreeMap::new();
    for (walls, ceilings) in raw {
        let reduced = input.reduce_ceilings(&ceilings);
        canonical
            .entry((walls.iter().copied().collect(), reduced))
            .or_insert(walls);
    }

    let mut strata = Vec::new();
    for ((_, ceilings), walls) in canonical {
        let dim = input.k - rank_over_rationals(&wall_matrix(input, &walls));
        let ty = StratumType { walls, ceilings, dim };
        let open = stratum_system(input, &ty, true);
        let interior_point = strict_feasible(&open)
            .expect("canonical lift of an enumerated stratum is nonempty");
        let orientation = nullspace_basis(&wall_matrix(input, &ty.walls));
        debug_assert_eq!(orientation.len(), dim);
        strata.push(Stratum { id: 0, ty, orientation, interior_point });
    }

    strata.sort_by(|a, b| {
        a.ty.dim
            .cmp(&b.ty.dim)
            .then_with(|| a.ty.walls.cmp(&b.ty.walls))
            .then_with(|| a.ty.ceilings.cmp(&b.ty.ceilings))
    });
    let mut by_dim = vec![Vec::new(); input.k + 1];
    let mut index = BTreeMap::new();
    for (id, s) in strata.iter_mut().enumerate() {
        s.id = id;
        by_dim[s.ty.dim].push(id);
        index.insert(
            (s.ty.walls.iter().copied().collect(), s.ty.ceilings.clone()),
            id,
        );
    }

    let mut complex = StrataComplex {
        input: input.clone(),
        strata,
        by_dim,
        incidences: Vec::new(),
        index,
    };
    complex.incidences = build_incidences(&complex);
    Ok(complex)
}

fn build_incidences(complex: &StrataComplex) -> Vec<IncidenceRecord> {
    let mut records = Vec::new();
    for s in &complex.strata {
        if s.ty.dim == 0 {
            continue;
        }
        records.extend(facet_incidences(complex, s.id));
    }
    records.sort();
    records
}

/// Facet data read off a relative-interior point: integral values become
/// walls, the rest contribute ceilings.
pub fn stratum_type_at(input: &LatticeMapInput, p: &RationalPoint) -> StratumType {
    let mut walls = BTreeSet::new();
    let mut ceilings = Vec::with_capacity(input.n);
    for i in 0..input.n {
        let v = input.h_value(i, p);
        if v.is_integer() {
            walls.insert(i);
            ceilings.push(v.to_integer());
        } else {
            ceilings.push(v.ceil().to_integer());
        }
    }
    let dim = input.k - rank_over_rationals(&wall_matrix(input, &walls));
    StratumType { walls, ceilings, dim }
}

/// All facet incidences of the canonical lift of `sigma`.
pub fn facet_incidences(complex: &StrataComplex, sigma: usize) -> Vec<IncidenceRecord> {
    let input = &complex.input;
    let s = &complex.strata[sigma];
    assert!(s.ty.dim >= 1, "facets are defined for dim >= 1");
    let closure = complex.canonical_lift_closure(sigma);
    let facets = polytope_facets(&closure)
        .expect("canonical lifts are bounded nonempty polytopes");
    let mut records = Vec::new();
    for facet_sys in facets {
        let p = relative_interior_point(&facet_sys)
            .expect("facets of a nonempty polytope are nonempty");
        let ty = stratum_type_at(input, &p);
        debug_assert_eq!(ty.dim, s.ty.dim - 1);
        let epsilon: Vec<u8> = (0..input.n)
            .map(|i| {
                let e = &s.ty.ceilings[i] - &ty.ceilings[i];
                assert!(
                    e.is_zero() || e.is_one(),
                    "ceiling drop across a facet must be 0 or 1"
                );
                u8::from(e.is_one())
            })
            .collect();
        let reduced = input.reduce_ceilings(&ty.ceilings);
        let to = complex
            .lookup(&ty.walls, &reduced)
            .expect("every facet descends to an enumerated torus stratum");
        let sign = orientation_sign(s, &complex.strata[to].orientation, &p);
        records.push(IncidenceRecord {
            from: sigma,
            to,
            lift_ceilings: ty.ceilings,
            epsilon,
            sign,
        });
    }
    records.sort();
    records
}

/// Boundary orientation sign: expresses `[u, B_tau]` in the basis `B_sigma`,
/// where `u` points from the interior of `sigma`'s lift out through the
/// facet, and takes the sign of the determinant.
pub fn orientation_sign(
    sigma: &Stratum,
    tau_orientation: &[Vec<BigRational>],
    facet_point: &RationalPoint,
) -> i8 {
    let u: Vec<BigRational> = facet_point
        .0
        .iter()
        .zip(&sigma.interior_point.0)
        .map(|(a, b)| a - b)
        .collect();
    let mut targets = vec![u];
    targets.extend(tau_orientation.iter().cloned());
    let coords = coords_in_basis(&sigma.orientation, &targets);
    let sign = det_sign_of_columns(&coords);
    debug_assert!(sign != 0, "outward vector and facet frame must span");
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn cusp_input() -> LatticeMapInput {
        LatticeMapInput::new(&[vec![3], vec![-2]], 1)
    }

    fn torsion_input() -> LatticeMapInput {
        LatticeMapInput::new(&[vec![2, -1], vec![-1, 2]], 2)
    }

    #[test]
    fn validate_examples() {
        assert!(cusp_input().validate().is_ok());
        assert!(matches!(
            LatticeMapInput::new(&[vec![0]], 1).validate(),
            Err(HhlError::CokernelNotFinite)
        ));
        assert!(torsion_input().validate().is_ok());
    }

    #[test]
    fn census_cusp() {
        let c = enumerate_strata(&cusp_input()).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4]);
        // torus points 0, 1/3, 1/2, 2/3
        let mut points: Vec<BigRational> = c.by_dim[0]
            .iter()
            .map(|&id| {
                let x = &c.strata[id].interior_point.0[0];
                x - x.floor()
            })
            .collect();
        points.sort();
        let mut expect: Vec<BigRational> = [(0, 1), (1, 3), (1, 2), (2, 3)]
            .iter()
            .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        expect.sort();
        assert_eq!(points, expect);
    }

    #[test]
    fn census_torsion() {
        let c = enumerate_strata(&torsion_input()).unwrap();
        assert_eq!(c.f_vector(), vec![3, 6, 3]);
    }

    #[test]
    fn census_identity_map() {
        let c = enumerate_strata(&LatticeMapInput::new(&[vec![1]], 1)).unwrap();
        assert_eq!(c.f_vector(), vec![1, 1]);
    }

    #[test]
    fn euler_characteristic_vanishes() {
        for input in [
            cusp_input(),
            torsion_input(),
            LatticeMapInput::new(&[vec![1]], 1),
            LatticeMapInput::new(&[vec![1], vec![-1], vec![2]], 1),
            LatticeMapInput::new(&[vec![1, 0], vec![0, 1], vec![-1, -1]], 2),
        ] {
            let c = enumerate_strata(&input).unwrap();
            assert_eq!(c.euler_characteristic(), 0, "{:?}", input);
        }
    }

    #[test]
    fn translated_window_is_canonical() {
        let input = cusp_input();
        let a = enumerate_strata(&input).unwrap();
        for offset in [vec![1i64], vec![-2], vec![5]] {
            let off: Vec<BigInt> = offset.iter().map(|&v| BigInt::from(v)).collect();
            let b = enumerate_strata_with_offset(&input, &off).unwrap();
            assert_eq!(a.f_vector(), b.f_vector());
            for (x, y) in a.strata.iter().zip(&b.strata) {
                assert_eq!(x.ty, y.ty);
            }
            assert_eq!(a.incidences, b.incidences);
        }
        let input2 = torsion_input();
        let a2 = enumerate_strata(&input2).unwrap();
        let off = vec![BigInt::from(2), BigInt::from(-1)];
        let b2 = enumerate_strata_with_offset(&input2, &off).unwrap();
        for (x, y) in a2.strata.iter().zip(&b2.strata) {
            assert_eq!(x.ty, y.ty);
        }
        assert_eq!(a2.incidences, b2.incidences);
    }

    #[test]
    fn identity_map_incidences() {
        // single 1-cell over the circle: records at both endpoints with
        // epsilon 1 (floor facet) and 0 (ceiling facet), opposite signs
        let c = enumerate_strata(&LatticeMapInput::new(&[vec![1]], 1)).unwrap();
        let one_cell = c.by_dim[1][0];
        let recs: Vec<_> = c.incidences_from(one_cell).collect();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].to, recs[1].to);
        let mut eps: Vec<Vec<u8>> = recs.iter().map(|r| r.epsilon.clone()).collect();
        eps.sort();
        assert_eq!(eps, vec![vec![0], vec![1]]);
        assert_eq!(recs[0].sign * recs[1].sign, -1);
    }

    #[test]
    fn epsilon_entries_are_bits() {
        for input in [cusp_input(), torsion_input()] {
            let c = enumerate_strata(&input).unwrap();
            for r in &c.incidences {
                assert!(r.epsilon.iter().all(|&e| e <= 1));
            }
        }
    }

    #[test]
    fn cells_have_enough_facets() {
        for input in [cusp_input(), torsion_input()] {
            let c = enumerate_strata(&input).unwrap();
            for s in &c.strata {
                if s.ty.dim >= 1 {
                    let count = c.incidences_from(s.id).count();
                    assert!(count >= s.ty.dim + 1, "stratum {} has {} facets", s.id, count);
                    assert!(count >= 2);
                }
            }
        }
    }

    #[test]
    fn canonical_lifts_are_bounded() {
        for input in [cusp_input(), torsion_input()] {
            let c = enumerate_strata(&input).unwrap();
            for s in &c.strata {
                let closure = c.canonical_lift_closure(s.id);
                // recession cone of the closure is trivial
                let mut rec = LinearSystem::new(input.k);
                for con in &closure.constraints {
                    rec.push(con.normal.clone(), con.relation, BigRational::zero());
                }
                assert_eq!(crate::exactmath::affine_dimension(&rec), Some(0));
            }
        }
    }

    #[test]
    fn orientation_sign_interval() {
        // interval oriented by +1: top facet gets +1, bottom facet -1
        let input = LatticeMapInput::new(&[vec![1]], 1);
        let c = enumerate_strata(&input).unwrap();
        let seg = &c.strata[c.by_dim[1][0]];
        let hi = seg.ty.ceilings[0].clone();
        let top = RationalPoint(vec![BigRational::from(hi.clone())]);
        let bottom = RationalPoint(vec![BigRational::from(hi - 1)]);
        let sign_of = |p: &RationalPoint| orientation_sign(seg, &[], p);
        if seg.orientation[0][0].is_positive() {
            assert_eq!(sign_of(&top), 1);
            assert_eq!(sign_of(&bottom), -1);
        } else {
            assert_eq!(sign_of(&top), -1);
            assert_eq!(sign_of(&bottom), 1);
        }
    }

    #[test]
    fn flip_reverses_signs() {
        let input = cusp_input();
        let c = enumerate_strata(&input).unwrap();
        let flip_id = c.by_dim[1][0];
        let flipped = c.flip_orientations(&BTreeSet::from([flip_id]));
        for (a, b) in c.incidences.iter().zip(&flipped.incidences) {
            assert_eq!(a.from, b.from);
            assert_eq!(a.to, b.to);
            if a.from == flip_id {
                assert_eq!(a.sign, -b.sign);
            } else {
                assert_eq!(a.sign, b.sign);
            }
        }
    }
}
