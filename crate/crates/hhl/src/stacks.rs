//! Subfans of the first orthant fan, chart localization, character-group
//! labels for quotient stacks, and conversion from fan-plus-lattice input
//! data (rays, beta, phi) to the lattice-map form used everywhere else.

use crate::complex::{DegreeLabel, GradingGroup, HHLComplex, Quotient};
use crate::error::{HhlError, Result};
use crate::exactmath::{rank_over_rationals, smith_normal_form, IntMatrix};
use crate::stratification::{LatticeMapInput, StrataComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// A subfan of the first orthant fan on `Z^n`, stored as a downward-closed
/// family of subsets of `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub n: usize,
    pub maximal_cones: Vec<BTreeSet<usize>>,
    pub cones: BTreeSet<BTreeSet<usize>>,
}

impl Fan {
    pub fn contains(&self, cone: &BTreeSet<usize>) -> bool {
        self.cones.contains(cone)
    }

    /// The full orthant fan: one maximal cone on all indices.
    pub fn orthant(n: usize) -> Fan {
        validate_fan(&[(0..n).collect()], n).expect("orthant fan is valid")
    }
}

/// Check cone indices (0-based) and compute the downward closure.
pub fn validate_fan(maximal_cones: &[BTreeSet<usize>], n: usize) -> Result<Fan> {
    for cone in maximal_cones {
        for &i in cone {
            if i >= n {
                return Err(HhlError::IndexOutOfRange { index: i + 1, n });
            }
        }
    }
    let mut cones = BTreeSet::new();
    cones.insert(BTreeSet::new());
    for cone in maximal_cones {
        let items: Vec<usize> = cone.iter().copied().collect();
        for mask in 0u64..(1u64 << items.len()) {
            let subset: BTreeSet<usize> = items
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            cones.insert(subset);
        }
    }
    Ok(Fan { n, maximal_cones: maximal_cones.to_vec(), cones })
}

/// Character data of an abelian group `G` mapping to `Spec C[M]`: the
/// character group `X` as free rank plus torsion orders, and the images in
/// `X` of the canonical generators of `M` (torsion generators first).
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub char_map: Vec<DegreeLabel>,
}

impl GroupSpec {
    /// The trivial group: all characters vanish.
    pub fn trivial(grading: &GradingGroup) -> GroupSpec {
        let gens = grading.torsion().len() + grading.free_rank();
        GroupSpec {
            free_rank: 0,
            torsion: Vec::new(),
            char_map: vec![DegreeLabel::zero(0, 0); gens],
        }
    }

    /// The full kernel group: `X = M` with the identity map.
    pub fn full(grading: &GradingGroup) -> GroupSpec {
        let torsion = grading.torsion().to_vec();
        let free_rank = grading.free_rank();
        let mut char_map = Vec::new();
        for (j, _) in torsion.iter().enumerate() {
            let mut label = DegreeLabel::zero(free_rank, torsion.len());
            label.torsion[j] = BigInt::one();
            char_map.push(label);
        }
        for f in 0..free_rank {
            let mut label = DegreeLabel::zero(free_rank, torsion.len());
            label.free[f] = BigInt::one();
            char_map.push(label);
        }
        GroupSpec { free_rank, torsion, char_map }
    }

    /// Explicit character data; validated against the torsion orders of `M`.
    pub fn explicit(
        grading: &GradingGroup,
        free_rank: usize,
        torsion: Vec<BigInt>,
        char_map: Vec<DegreeLabel>,
    ) -> Result<GroupSpec> {
        let gens = grading.torsion().len() + grading.free_rank();
        if char_map.len() != gens {
            return Err(HhlError::BadCharacterMap(format!(
                "expected one image per generator of M ({gens}), got {}",
                char_map.len()
            )));
        }
        let spec = GroupSpec { free_rank, torsion, char_map };
        for (j, d) in grading.torsion().iter().enumerate() {
            let image = &spec.char_map[j];
            if image.free.len() != spec.free_rank || image.torsion.len() != spec.torsion.len() {
                return Err(HhlError::BadCharacterMap("image has wrong shape".into()));
            }
            let killed = spec.scale(d, image);
            if !spec.is_zero(&killed) {
                return Err(HhlError::BadCharacterMap(format!(
                    "torsion generator of order {d} maps to an element not killed by {d}"
                )));
            }
        }
        for image in &spec.char_map {
            if image.free.len() != spec.free_rank || image.torsion.len() != spec.torsion.len() {
                return Err(HhlError::BadCharacterMap("image has wrong shape".into()));
            }
        }
        Ok(spec)
    }

    fn reduce(&self, label: &DegreeLabel) -> DegreeLabel {
        DegreeLabel {
            free: label.free.clone(),
            torsion: label
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(t, d)| t.mod_floor(d))
                .collect(),
        }
    }

    fn add(&self, a: &DegreeLabel, b: &DegreeLabel) -> DegreeLabel {
        self.reduce(&DegreeLabel {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        })
    }

    fn scale(&self, c: &BigInt, a: &DegreeLabel) -> DegreeLabel {
        self.reduce(&DegreeLabel {
            free: a.free.iter().map(|x| c * x).collect(),
            torsion: a.torsion.iter().map(|x| c * x).collect(),
        })
    }

    fn is_zero(&self, a: &DegreeLabel) -> bool {
        a.free.iter().all(Zero::is_zero)
            && a.torsion
                .iter()
                .zip(&self.torsion)
                .all(|(t, d)| t.mod_floor(d).is_zero())
    }

    pub fn zero(&self) -> DegreeLabel {
        DegreeLabel::zero(self.free_rank, self.torsion.len())
    }

    /// Push an M-degree along the character map.
    pub fn push_label(&self, label: &DegreeLabel) -> DegreeLabel {
        let mut out = self.zero();
        let coords = label.torsion.iter().chain(label.free.iter());
        for (coef, image) in coords.zip(&self.char_map) {
            out = self.add(&out, &self.scale(coef, image));
        }
        out
    }
}

/// The line bundle attached to a stratum: coefficients `-ceil(H_i)` of the
/// canonical lift and the class in the character group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LineBundleLabel {
    pub stratum: usize,
    pub coefficients: Vec<BigInt>,
    pub class: DegreeLabel,
}

pub fn line_bundle_labels(
    complex: &HHLComplex,
    strata: &StrataComplex,
    group: &GroupSpec,
) -> Vec<LineBundleLabel> {
    strata
        .strata
        .iter()
        .map(|s| {
            let coefficients: Vec<BigInt> = s.ty.ceilings.iter().map(|c| -c.clone()).collect();
            let label = complex.grading.project(&coefficients);
            LineBundleLabel {
                stratum: s.id,
                coefficients,
                class: group.push_label(&label),
            }
        })
        .collect()
}

/// Distinct line-bundle classes appearing in the complex, sorted.
pub fn thomsen_bondal_collection(
    complex: &HHLComplex,
    strata: &StrataComplex,
    group: &GroupSpec,
) -> BTreeSet<DegreeLabel> {
    line_bundle_labels(complex, strata, group)
        .into_iter()
        .map(|l| l.class)
        .collect()
}

/// The complex restricted to a chart of the fan: the same matrices with the
/// variables outside the cone inverted.
#[derive(Clone, Debug)]
pub struct ChartComplex<'a> {
    pub complex: &'a HHLComplex,
    pub cone: BTreeSet<usize>,
    pub inverted: BTreeSet<usize>,
}

pub fn localize_chart<'a>(
    complex: &'a HHLComplex,
    fan: &Fan,
    cone: &BTreeSet<usize>,
) -> Result<ChartComplex<'a>> {
    if !fan.contains(cone) {
        return Err(HhlError::ConeNotInFan);
    }
    let inverted = (0..fan.n).filter(|i| !cone.contains(i)).collect();
    Ok(ChartComplex { complex, cone: cone.clone(), inverted })
}

/// Degree labels of all generators pushed to the character group, grouped by
/// homological position.
pub fn equivariant_degrees(complex: &HHLComplex, group: &GroupSpec) -> Vec<Vec<DegreeLabel>> {
    complex
        .generators
        .iter()
        .map(|gens| gens.iter().map(|g| group.push_label(&g.degree)).collect())
        .collect()
}

/// The pushed labels are preserved by every differential entry.
pub fn equivariant_degrees_consistent(
    complex: &HHLComplex,
    strata: &StrataComplex,
    group: &GroupSpec,
) -> bool {
    let labels = equivariant_degrees(complex, group);
    for record in &strata.incidences {
        let from_dim = strata.strata[record.from].ty.dim;
        let from_label = &labels[from_dim][complex.position_of[record.from]];
        let eps: Vec<u32> = record.epsilon.iter().map(|&e| e as u32).collect();
        let to_degree =
            crate::complex::degree_of_monomial(complex, strata, &eps, record.to);
        if *from_label != group.push_label(&to_degree) {
            return false;
        }
    }
    true
}

/// Input data in the fan-plus-lattice style: ray generators in `L_X`, a fan
/// given by ray index sets, `beta: L_X -> N_X`, and an injection
/// `phi: N_Y -> N_X` with free cokernel.
#[derive(Clone, Debug)]
pub struct GSInput {
    pub rays: Vec<Vec<BigInt>>,
    /// 0-based ray index sets of the maximal cones.
    pub max_cones: Vec<BTreeSet<usize>>,
    /// Matrix of `beta` (rank N_X rows, rank L_X columns).
    pub beta: IntMatrix,
    /// Matrix of `phi` (rank N_X rows, rank N_Y columns).
    pub phi: IntMatrix,
}

/// Convert to `(psi, fan, group)`: `L = Z^rays`, `psi(e_rho)` the image of
/// the ray generator in `coker phi`, and the group of the kernel torus with
/// character group `Z^rays / (beta-ray image lattice)`.
pub fn convert_gs_input(gs: &GSInput) -> Result<(LatticeMapInput, Fan, GroupSpec)> {
    let n_x = gs.beta.nrows();
    let n_y = gs.phi.ncols();
    if gs.phi.nrows() != n_x {
        return Err(HhlError::Input("phi and beta target ranks differ".into()));
    }
    if rank_over_rationals(&gs.phi) != n_y {
        return Err(HhlError::NonInjectivePhi);
    }
    let snf = smith_normal_form(&gs.phi);
    if !snf.invariant_factors().iter().all(|f| f.is_one()) {
        return Err(HhlError::CokernelNotFree);
    }
    let k = n_x - n_y;
    if k == 0 {
        return Err(HhlError::DegenerateSubstack);
    }
    // projection N_X -> coker phi = Z^k: the last k rows of u
    let projection: Vec<Vec<BigInt>> = (n_y..n_x).map(|j| snf.u.row(j).to_vec()).collect();

    let n = gs.rays.len();
    if n == 0 {
        return Err(HhlError::Input("fan has no rays".into()));
    }
    for ray in &gs.rays {
        if ray.len() != gs.beta.ncols() {
            return Err(HhlError::Input("ray dimension does not match beta".into()));
        }
    }
    // beta images of the ray generators, as rows
    let beta_rays: Vec<Vec<BigInt>> = gs.rays.iter().map(|r| gs.beta.mul_vec(r)).collect();
    let psi_rows: Vec<Vec<BigInt>> = beta_rays
        .iter()
        .map(|img| {
            projection
                .iter()
                .map(|p| p.iter().zip(img).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let psi = IntMatrix::from_rows(psi_rows);
    let input = LatticeMapInput { n, k, psi };
    input.validate()?;

    let fan = validate_fan(&gs.max_cones, n)?;

    // character group X = Z^n / colspan(beta-ray matrix transposed)
    let b_mat = IntMatrix::from_rows(beta_rays);
    debug_assert_eq!(b_mat.nrows(), n);
    let x = Quotient::new(&b_mat);
    let grading = GradingGroup::new(&input)?;
    // M surjects onto X: push each canonical generator of M
    let m_quotient = &grading.quotient;
    let mut char_map = Vec::new();
    let gens = grading.torsion().len() + grading.free_rank();
    for g in 0..gens {
        let mut label = DegreeLabel::zero(grading.free_rank(), grading.torsion().len());
        if g < grading.torsion().len() {
            label.torsion[g] = BigInt::one();
        } else {
            label.free[g - grading.torsion().len()] = BigInt::one();
        }
        let lift = m_quotient.lift(&label);
        char_map.push(x.project(&lift));
    }
    let group = GroupSpec::explicit(&grading, x.free_rank(), x.torsion.clone(), char_map)?;
    Ok((input, fan, group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_affine_complex;
    use crate::stratification::enumerate_strata;

    fn torsion_setup() -> (StrataComplex, HHLComplex) {
        let input = LatticeMapInput::new(&[vec![2, -1], vec![-1, 2]], 2);
        let strata = enumerate_strata(&input).unwrap();
        let complex = build_affine_complex(&strata).unwrap();
        (strata, complex)
    }

    fn p1_point_gs() -> GSInput {
        GSInput {
            rays: vec![vec![BigInt::from(1)], vec![BigInt::from(-1)]],
            max_cones: vec![BTreeSet::from([0]), BTreeSet::from([1])],
            beta: IntMatrix::identity(1),
            phi: IntMatrix::zero(1, 0),
        }
    }

    #[test]
    fn fan_validation() {
        let fan = validate_fan(&[BTreeSet::from([0, 1])], 2).unwrap();
        assert_eq!(fan.cones.len(), 4); // {}, {0}, {1}, {0,1}
        let fan2 = validate_fan(&[BTreeSet::from([0]), BTreeSet::from([1])], 2).unwrap();
        assert_eq!(fan2.cones.len(), 3);
        assert!(fan2.contains(&BTreeSet::new()));
        assert!(matches!(
            validate_fan(&[BTreeSet::from([2])], 2),
            Err(HhlError::IndexOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn thomsen_bondal_torsion_full_group() {
        let (strata, complex) = torsion_setup();
        let group = GroupSpec::full(&complex.grading);
        let classes = thomsen_bondal_collection(&complex, &strata, &group);
        assert_eq!(strata.strata.len(), 12);
        assert_eq!(classes.len(), 3);
        let trivial = GroupSpec::trivial(&complex.grading);
        let classes0 = thomsen_bondal_collection(&complex, &strata, &trivial);
        assert_eq!(classes0.len(), 1);
    }

    #[test]
    fn localize_charts() {
        let (_, complex) = torsion_setup();
        let fan = Fan::orthant(2);
        let chart = localize_chart(&complex, &fan, &BTreeSet::from([0, 1])).unwrap();
        assert!(chart.inverted.is_empty());
        let torus = localize_chart(&complex, &fan, &BTreeSet::new()).unwrap();
        assert_eq!(torus.inverted, BTreeSet::from([0, 1]));

        let fan2 = validate_fan(&[BTreeSet::from([0]), BTreeSet::from([1])], 2).unwrap();
        let chart2 = localize_chart(&complex, &fan2, &BTreeSet::from([0])).unwrap();
        assert_eq!(chart2.inverted, BTreeSet::from([1]));
        assert!(matches!(
            localize_chart(&complex, &fan2, &BTreeSet::from([0, 1])),
            Err(HhlError::ConeNotInFan)
        ));
    }

    #[test]
    fn equivariant_labels() {
        let (strata, complex) = torsion_setup();
        let trivial = GroupSpec::trivial(&complex.grading);
        for labels in equivariant_degrees(&complex, &trivial) {
            assert!(labels.iter().all(|l| l.free.is_empty() && l.torsion.is_empty()));
        }
        let full = GroupSpec::full(&complex.grading);
        // the three generators per position carry the three characters
        for labels in equivariant_degrees(&complex, &full) {
            let distinct: BTreeSet<_> = labels.iter().cloned().collect();
            assert_eq!(distinct.len(), 3);
        }
        assert!(equivariant_degrees_consistent(&complex, &strata, &full));
        assert!(equivariant_degrees_consistent(&complex, &strata, &trivial));
    }

    #[test]
    fn convert_p1_point() {
        let (input, fan, group) = convert_gs_input(&p1_point_gs()).unwrap();
        assert_eq!(input.n, 2);
        assert_eq!(input.k, 1);
        assert_eq!(input.psi.row(0), &[BigInt::from(1)]);
        assert_eq!(input.psi.row(1), &[BigInt::from(-1)]);
        assert_eq!(fan.maximal_cones.len(), 2);
        // X = Z^2 / (1,-1) = Z
        assert_eq!(group.free_rank, 1);
        assert!(group.torsion.is_empty());

        let strata = enumerate_strata(&input).unwrap();
        let complex = build_affine_complex(&strata).unwrap();
        assert_eq!(strata.f_vector(), vec![1, 1]);
        let classes = thomsen_bondal_collection(&complex, &strata, &group);
        let values: Vec<BigInt> = classes.iter().map(|c| c.free[0].clone()).collect();
        assert_eq!(values, vec![BigInt::from(-1), BigInt::zero()]);
        // differential is +-(x_1 - x_2)
        let entry = complex.boundary(1).entry(0, 0).unwrap();
        assert_eq!(entry.len(), 2);
        let coeffs: BTreeSet<i64> = entry.iter().map(|t| t.coeff).collect();
        assert_eq!(coeffs, BTreeSet::from([-1, 1]));
    }

    #[test]
    fn convert_rejects_degenerate() {
        let gs = GSInput {
            rays: vec![vec![BigInt::one()]],
            max_cones: vec![BTreeSet::from([0])],
            beta: IntMatrix::identity(1),
            phi: IntMatrix::identity(1),
        };
        assert!(matches!(convert_gs_input(&gs), Err(HhlError::DegenerateSubstack)));
    }

    #[test]
    fn convert_rejects_torsion_cokernel() {
        // phi: Z -> Z^2, e -> (2, 0): injective, coker = Z + Z/2: not free
        let gs = GSInput {
            rays: vec![vec![BigInt::one(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]],
            max_cones: vec![BTreeSet::from([0])],
            beta: IntMatrix::identity(2),
            phi: IntMatrix::from_i64_rows(&[vec![2], vec![0]]),
        };
        assert!(matches!(convert_gs_input(&gs), Err(HhlError::CokernelNotFree)));
    }

    #[test]
    fn line_bundle_class_is_lift_invariant() {
        let (strata, complex) = torsion_setup();
        let group = GroupSpec::full(&complex.grading);
        let labels = line_bundle_labels(&complex, &strata, &group);
        let input = &strata.input;
        for label in &labels {
            let s = &strata.strata[label.stratum];
            for z in [vec![1i64, 0], vec![0, -2], vec![3, 1]] {
                let zv: Vec<BigInt> = z.iter().map(|&v| BigInt::from(v)).collect();
                let shift = input.psi.mul_vec(&zv);
                let other: Vec<BigInt> = s
                    .ty
                    .ceilings
                    .iter()
                    .zip(&shift)
                    .map(|(c, d)| -(c + d))
                    .collect();
                let other_class = group.push_label(&complex.grading.project(&other));
                assert_eq!(other_class, label.class);
            }
        }
    }
}
