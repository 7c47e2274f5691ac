//! The space of compatible 2-additive capacities as a convex polytope over
//! Shapley and declared interaction coordinates, its Chebyshev center, and a
//! Hit-And-Run sampler running in the null space of the equality constraints.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dot, norm, null_space, AffineParametrization, LinalgError};
use crate::lp::{maximize, LpOutcome};
use crate::model::{
    CriterionPair, InteractionSign, InteractionVector, PreferenceStatements, ShapleyRelation,
};
use crate::scalar::Scalar;

/// Chord length below which a direction is considered degenerate.
const MIN_CHORD: f64 = 1e-12;
const MAX_DIRECTION_RETRIES: usize = 100;
/// Seed-point radius cap; reaching it means the polytope is unbounded.
const RADIUS_CAP: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CapacityError {
    #[error("contradictory Shapley relations: criterion {0} would be strictly more important than itself")]
    Contradiction(usize),
    #[error("criterion index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("no compatible model: constraints cannot hold together ({})", .0.join("; "))]
    Infeasible(Vec<String>),
    #[error("no compatible model with a non-empty interior (Chebyshev radius {0:e})")]
    Flat(f64),
    #[error("capacity space is unbounded")]
    Unbounded,
    #[error("Hit-And-Run found only degenerate chords after {0} directions")]
    DegenerateChord(usize),
}

/// Chain keeps one Markov chain alive across draws; restart walks `thinning` steps
/// from the seed point for every draw.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HarMode {
    #[default]
    Chain,
    Restart,
}

/// `coefficients · x <= bound` (inequality) or `= bound` (equality).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint<T> {
    pub coefficients: Vec<T>,
    pub bound: T,
    /// Strict in the original statement, closed here with the margin folded into `bound`.
    pub strict: bool,
    pub label: String,
}

/// Coordinate layout: `I_1..I_n`, then the declared pairs in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientLayout {
    n: usize,
    pairs: Vec<CriterionPair>,
}

impl AmbientLayout {
    pub fn new(n: usize, mut pairs: Vec<CriterionPair>) -> Self {
        pairs.sort();
        pairs.dedup();
        Self { n, pairs }
    }

    pub fn n_criteria(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[CriterionPair] {
        &self.pairs
    }

    pub fn dim(&self) -> usize {
        self.n + self.pairs.len()
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.n)
            .map(|j| format!("I_{j}"))
            .chain(self.pairs.iter().map(CriterionPair::label))
            .collect()
    }

    pub fn coordinate_of(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Undeclared pairs are zero.
    pub fn to_interaction_vector<T: Scalar>(&self, x: &[T]) -> InteractionVector<T> {
        let interactions = self
            .pairs
            .iter()
            .zip(&x[self.n..])
            .map(|(&p, &v)| (p, v))
            .collect();
        InteractionVector::new(x[..self.n].to_vec(), interactions)
            .expect("layout pairs are unique and in range")
    }

    pub fn to_ambient<T: Scalar>(&self, iv: &InteractionVector<T>) -> Vec<T> {
        let mut x = iv.shapley().to_vec();
        x.extend(self.pairs.iter().map(|p| iv.interaction(p.low(), p.high())));
        x
    }
}

/// Compatible-capacity polytope with its affine parametrization `x = x0 + B y`.
#[derive(Debug, Clone)]
pub struct CapacityPolytope<T> {
    layout: AmbientLayout,
    equalities: Vec<LinearConstraint<T>>,
    inequalities: Vec<LinearConstraint<T>>,
    parametrization: AffineParametrization<T>,
    /// Inequalities in reduced coordinates: `row · y <= rhs`.
    reduced: Vec<(Vec<T>, T)>,
}

fn check_relations(n: usize, prefs: &PreferenceStatements) -> Result<(), CapacityError> {
    // 0 = unrelated, 1 = at least as important, 2 = strictly more important
    let mut reach = vec![vec![0u8; n]; n];
    for st in prefs.shapley_relations() {
        for idx in [st.left, st.right] {
            if idx >= n {
                return Err(CapacityError::IndexOutOfRange { index: idx + 1, n });
            }
        }
        match st.relation {
            ShapleyRelation::Preferred => reach[st.left][st.right] = 2,
            ShapleyRelation::WeaklyPreferred => {
                reach[st.left][st.right] = reach[st.left][st.right].max(1)
            }
            ShapleyRelation::Indifferent => {
                reach[st.left][st.right] = reach[st.left][st.right].max(1);
                reach[st.right][st.left] = reach[st.right][st.left].max(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (reach[i][k], reach[k][j]);
                if a > 0 && b > 0 {
                    reach[i][j] = reach[i][j].max(a.max(b));
                }
            }
        }
    }
    match (0..n).find(|&i| reach[i][i] == 2) {
        Some(i) => Err(CapacityError::Contradiction(i + 1)),
        None => Ok(()),
    }
}

/// Builds the polytope of interaction vectors compatible with `prefs` and with the
/// boundary and monotonicity conditions. Strict statements use `strict_margin`.
pub fn build_polytope<T: Scalar>(
    n: usize,
    prefs: &PreferenceStatements,
    strict_margin: T,
) -> Result<CapacityPolytope<T>, CapacityError> {
    check_relations(n, prefs)?;
    if let Some(p) = prefs.interaction_signs().keys().find(|p| p.high() >= n) {
        return Err(CapacityError::IndexOutOfRange {
            index: p.high() + 1,
            n,
        });
    }
    let signs: Vec<(CriterionPair, InteractionSign)> = prefs
        .interaction_signs()
        .iter()
        .map(|(&p, &s)| (p, s))
        .collect();
    let layout = AmbientLayout::new(n, signs.iter().map(|(p, _)| *p).collect());
    let dim = layout.dim();
    let zero_row = || vec![T::zero(); dim];
    let half = T::lit(0.5);

    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();

    let mut boundary = zero_row();
    boundary[..n].iter_mut().for_each(|c| *c = T::one());
    equalities.push(LinearConstraint {
        coefficients: boundary,
        bound: T::one(),
        strict: false,
        label: "sum of Shapley indices = 1".into(),
    });

    for (offset, (pair, sign)) in signs.iter().enumerate() {
        let mut row = zero_row();
        let (coef, label) = match sign {
            InteractionSign::Redundancy => (T::one(), format!("{} < 0 (redundancy)", pair.label())),
            InteractionSign::Synergy => (-T::one(), format!("{} > 0 (synergy)", pair.label())),
        };
        row[n + offset] = coef;
        inequalities.push(LinearConstraint {
            coefficients: row,
            bound: -strict_margin,
            strict: true,
            label,
        });
    }

    // I_j - 1/2 sum_s sigma_js I_js >= 0, written as <= 0.
    for j in 0..n {
        let mut row = zero_row();
        row[j] = -T::one();
        for (offset, (pair, sign)) in signs.iter().enumerate() {
            if pair.contains(j) {
                let sigma = match sign {
                    InteractionSign::Synergy => T::one(),
                    InteractionSign::Redundancy => -T::one(),
                };
                row[n + offset] = half * sigma;
            }
        }
        inequalities.push(LinearConstraint {
            coefficients: row,
            bound: T::zero(),
            strict: false,
            label: format!("monotonicity of criterion {}", j + 1),
        });
    }

    for st in prefs.shapley_relations() {
        let (l, r) = (st.left, st.right);
        let mut row = zero_row();
        match st.relation {
            ShapleyRelation::Indifferent => {
                row[l] = T::one();
                row[r] = -T::one();
                equalities.push(LinearConstraint {
                    coefficients: row,
                    bound: T::zero(),
                    strict: false,
                    label: format!("I_{} = I_{}", l + 1, r + 1),
                });
            }
            ShapleyRelation::Preferred | ShapleyRelation::WeaklyPreferred => {
                row[r] = T::one();
                row[l] = -T::one();
                let strict = st.relation == ShapleyRelation::Preferred;
                inequalities.push(LinearConstraint {
                    coefficients: row,
                    bound: if strict { -strict_margin } else { T::zero() },
                    strict,
                    label: format!(
                        "I_{} {} I_{}",
                        l + 1,
                        if strict { ">" } else { ">=" },
                        r + 1
                    ),
                });
            }
        }
    }

    let eq_rows: Vec<Vec<T>> = equalities.iter().map(|c| c.coefficients.clone()).collect();
    let eq_rhs: Vec<T> = equalities.iter().map(|c| c.bound).collect();
    let parametrization = null_space(dim, &eq_rows, &eq_rhs).map_err(|e| match e {
        LinalgError::Inconsistent(_) => {
            CapacityError::Infeasible(equalities.iter().map(|c| c.label.clone()).collect())
        }
        LinalgError::Shape { .. } => unreachable!("rows built with ambient width"),
    })?;
    let reduced = inequalities
        .iter()
        .map(|c| {
            let (row, offset) = parametrization.project_row(&c.coefficients);
            (row, c.bound - offset)
        })
        .collect();

    Ok(CapacityPolytope {
        layout,
        equalities,
        inequalities,
        parametrization,
        reduced,
    })
}

/// Seed point of the sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevCenter<T> {
    pub reduced: Vec<T>,
    pub ambient: Vec<T>,
    pub radius: T,
}

impl<T: Scalar> CapacityPolytope<T> {
    pub fn layout(&self) -> &AmbientLayout {
        &self.layout
    }

    pub fn ambient_dim(&self) -> usize {
        self.layout.dim()
    }

    /// Dimension left after eliminating the equalities.
    pub fn reduced_dim(&self) -> usize {
        self.parametrization.reduced_dim()
    }

    pub fn equalities(&self) -> &[LinearConstraint<T>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[LinearConstraint<T>] {
        &self.inequalities
    }

    pub fn parametrization(&self) -> &AffineParametrization<T> {
        &self.parametrization
    }

    /// Largest violation of any equality or (margin-closed) inequality at `x`.
    pub fn max_violation(&self, x: &[T]) -> T {
        let eq = self
            .equalities
            .iter()
            .map(|c| (dot(&c.coefficients, x) - c.bound).abs());
        let ineq = self
            .inequalities
            .iter()
            .map(|c| dot(&c.coefficients, x) - c.bound);
        eq.chain(ineq).fold(T::zero(), T::max)
    }

    /// Like [`max_violation`](Self::max_violation) but against the closure of the
    /// original constraints, i.e. strict rows without their margin.
    pub fn closure_violation(&self, x: &[T], strict_margin: T) -> T {
        let eq = self
            .equalities
            .iter()
            .map(|c| (dot(&c.coefficients, x) - c.bound).abs());
        let ineq = self.inequalities.iter().map(|c| {
            let bound = if c.strict {
                c.bound + strict_margin
            } else {
                c.bound
            };
            dot(&c.coefficients, x) - bound
        });
        eq.chain(ineq).fold(T::zero(), T::max)
    }

    /// Center of the largest ball inscribed in the reduced polytope.
    pub fn chebyshev_center(&self) -> Result<ChebyshevCenter<T>, CapacityError> {
        let d = self.reduced_dim();
        let tol = T::tolerance();
        let tiny = T::epsilon() * T::lit(1e3);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut source = Vec::new();
        let mut violated = Vec::new();
        for (i, (row, b)) in self.reduced.iter().enumerate() {
            let rn = norm(row);
            if rn <= tiny {
                if *b < -tol {
                    violated.push(self.inequalities[i].label.clone());
                }
                continue;
            }
            // y = y+ - y-, then radius
            let mut lp_row: Vec<T> = row.clone();
            lp_row.extend(row.iter().map(|&v| -v));
            lp_row.push(rn);
            rows.push(lp_row);
            rhs.push(*b);
            source.push(i);
        }
        if !violated.is_empty() {
            return Err(CapacityError::Infeasible(violated));
        }
        if d == 0 {
            let radius = rhs.iter().fold(T::infinity(), |acc, &b| acc.min(b));
            return Ok(ChebyshevCenter {
                reduced: Vec::new(),
                ambient: self.parametrization.origin.clone(),
                radius: if radius.is_finite() {
                    radius.max(T::zero())
                } else {
                    T::zero()
                },
            });
        }
        let mut cap = vec![T::zero(); 2 * d + 1];
        cap[2 * d] = T::one();
        rows.push(cap);
        rhs.push(T::lit(RADIUS_CAP));
        let mut objective = vec![T::zero(); 2 * d + 1];
        objective[2 * d] = T::one();

        match maximize(&objective, &rows, &rhs) {
            LpOutcome::Optimal { x, value } => {
                if value >= T::lit(RADIUS_CAP) * T::lit(0.5) {
                    return Err(CapacityError::Unbounded);
                }
                if value <= tol {
                    return Err(CapacityError::Flat(value.to_f64_lossy()));
                }
                let reduced: Vec<T> = (0..d).map(|i| x[i] - x[d + i]).collect();
                let ambient = self.parametrization.to_ambient(&reduced);
                Ok(ChebyshevCenter {
                    reduced,
                    ambient,
                    radius: value,
                })
            }
            LpOutcome::Infeasible { rows } => Err(CapacityError::Infeasible(
                rows.iter()
                    .filter_map(|&r| source.get(r))
                    .map(|&i| self.inequalities[i].label.clone())
                    .collect(),
            )),
            LpOutcome::Unbounded => Err(CapacityError::Unbounded),
        }
    }

    /// Strictly interior point in ambient coordinates.
    pub fn interior_point(&self) -> Result<Vec<T>, CapacityError> {
        self.chebyshev_center().map(|c| c.ambient)
    }

    /// Feasible step interval `[lo, hi]` along `direction` from reduced point `y`.
    fn chord(&self, y: &[T], direction: &[T]) -> Result<(T, T), CapacityError> {
        let tiny = T::epsilon() * T::lit(16.0);
        let mut lo = T::neg_infinity();
        let mut hi = T::infinity();
        for (row, b) in &self.reduced {
            let rate = dot(row, direction);
            let slack = (*b - dot(row, y)).max(T::zero());
            if rate > tiny {
                hi = hi.min(slack / rate);
            } else if rate < -tiny {
                lo = lo.max(slack / rate);
            }
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(CapacityError::Unbounded);
        }
        Ok((lo, hi))
    }
}

/// Burn-in, thinning and chain mode for one sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarConfig {
    pub burn_in: usize,
    pub thinning: usize,
    pub mode: HarMode,
}

impl HarConfig {
    /// Unset values default to `d^3` for reduced dimension `d` (at least one step).
    pub fn resolve(
        burn_in: Option<usize>,
        thinning: Option<usize>,
        mode: HarMode,
        d: usize,
    ) -> Self {
        let cube = d.pow(3).max(1);
        Self {
            burn_in: burn_in.unwrap_or(cube),
            thinning: thinning.unwrap_or(cube).max(1),
            mode,
        }
    }
}

/// Hit-And-Run walker over a [`CapacityPolytope`].
#[derive(Debug, Clone)]
pub struct HarSampler<'a, T> {
    polytope: &'a CapacityPolytope<T>,
    start: Vec<T>,
    position: Vec<T>,
    config: HarConfig,
}

impl<'a, T: Scalar> HarSampler<'a, T> {
    /// Starts at `start` (reduced coordinates) and runs burn-in when chaining.
    pub fn new<R: Rng + ?Sized>(
        polytope: &'a CapacityPolytope<T>,
        start: Vec<T>,
        config: HarConfig,
        rng: &mut R,
    ) -> Result<Self, CapacityError> {
        let mut sampler = Self {
            polytope,
            position: start.clone(),
            start,
            config,
        };
        if config.mode == HarMode::Chain {
            for _ in 0..config.burn_in {
                sampler.step(rng)?;
            }
        }
        Ok(sampler)
    }

    /// Sampler seeded at the polytope's Chebyshev center.
    pub fn from_center<R: Rng + ?Sized>(
        polytope: &'a CapacityPolytope<T>,
        config: HarConfig,
        rng: &mut R,
    ) -> Result<Self, CapacityError> {
        let center = polytope.chebyshev_center()?;
        Self::new(polytope, center.reduced, config, rng)
    }

    pub fn config(&self) -> HarConfig {
        self.config
    }

    /// Current point in reduced coordinates.
    pub fn position(&self) -> &[T] {
        &self.position
    }

    /// One Hit-And-Run move: uniform direction, uniform point on the chord.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(), CapacityError> {
        let d = self.position.len();
        if d == 0 {
            return Ok(());
        }
        let min_chord = T::lit(MIN_CHORD);
        for _ in 0..MAX_DIRECTION_RETRIES {
            let mut direction: Vec<T> = (0..d).map(|_| T::sample_standard_normal(rng)).collect();
            let len = norm(&direction);
            if len <= T::zero() {
                continue;
            }
            direction.iter_mut().for_each(|v| *v = *v / len);
            let (lo, hi) = self.polytope.chord(&self.position, &direction)?;
            if hi - lo < min_chord {
                continue;
            }
            let t = lo + (hi - lo) * T::sample_unit(rng);
            for (p, &u) in self.position.iter_mut().zip(&direction) {
                *p = *p + t * u;
            }
            return Ok(());
        }
        Err(CapacityError::DegenerateChord(MAX_DIRECTION_RETRIES))
    }

    /// Next emitted point in ambient coordinates.
    pub fn next_ambient<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Vec<T>, CapacityError> {
        if self.config.mode == HarMode::Restart {
            self.position.clone_from(&self.start);
        }
        for _ in 0..self.config.thinning {
            self.step(rng)?;
        }
        Ok(self.polytope.parametrization.to_ambient(&self.position))
    }

    pub fn next_capacity<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> Result<InteractionVector<T>, CapacityError> {
        let x = self.next_ambient(rng)?;
        Ok(self.polytope.layout.to_interaction_vector(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_prefs() -> PreferenceStatements {
        PreferenceStatements::new()
            .with_interaction(0, 1, InteractionSign::Redundancy)
            .unwrap()
            .with_relation(0, ShapleyRelation::Indifferent, 1)
    }

    #[test]
    fn example_center_in_single_precision() {
        let c = build_polytope(2, &example_prefs(), 1e-6_f32)
            .unwrap()
            .chebyshev_center()
            .unwrap();
        assert!((c.radius - 0.5).abs() < 1e-3);
        assert!((c.ambient[2] + 0.5).abs() < 1e-3);
    }

    #[test]
    fn example_polytope_structure() {
        let p = build_polytope(2, &example_prefs(), 1e-6_f64).unwrap();
        assert_eq!(p.ambient_dim(), 3);
        assert_eq!(p.equalities().len(), 2);
        assert_eq!(p.inequalities().len(), 3);
        assert_eq!(p.reduced_dim(), 1);
        assert_eq!(p.inequalities()[0].coefficients, vec![0.0, 0.0, 1.0]);
        assert_eq!(p.inequalities()[0].bound, -1e-6);
        assert_eq!(p.inequalities()[1].coefficients, vec![-1.0, 0.0, -0.5]);
        assert_eq!(p.inequalities()[2].coefficients, vec![0.0, -1.0, -0.5]);
        assert_eq!(p.layout().labels(), vec!["I_1", "I_2", "I_12"]);
    }

    #[test]
    fn example_center() {
        let p = build_polytope(2, &example_prefs(), 1e-6_f64).unwrap();
        let c = p.chebyshev_center().unwrap();
        assert!((c.ambient[0] - 0.5).abs() < 1e-12);
        assert!((c.ambient[1] - 0.5).abs() < 1e-12);
        assert!((c.ambient[2] + 0.5).abs() < 1e-5);
        for ineq in p.inequalities() {
            assert!(ineq.bound - dot(&ineq.coefficients, &c.ambient) >= 0.5e-6);
        }
    }

    #[test]
    fn simplex_center() {
        let p = build_polytope::<f64>(3, &PreferenceStatements::new(), 1e-6).unwrap();
        assert_eq!(p.ambient_dim(), 3);
        assert_eq!(p.reduced_dim(), 2);
        let x = p.interior_point().unwrap();
        for v in x {
            assert!((v - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn strict_cycle_rejected() {
        let prefs = PreferenceStatements::new()
            .with_relation(0, ShapleyRelation::Preferred, 1)
            .with_relation(1, ShapleyRelation::Preferred, 0);
        assert!(matches!(
            build_polytope::<f64>(2, &prefs, 1e-6),
            Err(CapacityError::Contradiction(_))
        ));
        let prefs = PreferenceStatements::new()
            .with_relation(0, ShapleyRelation::WeaklyPreferred, 1)
            .with_relation(1, ShapleyRelation::Indifferent, 2)
            .with_relation(2, ShapleyRelation::Preferred, 0);
        assert!(matches!(
            build_polytope::<f64>(3, &prefs, 1e-6),
            Err(CapacityError::Contradiction(_))
        ));
    }

    #[test]
    fn weak_cycle_is_not_a_contradiction() {
        let prefs = PreferenceStatements::new()
            .with_relation(0, ShapleyRelation::WeaklyPreferred, 1)
            .with_relation(1, ShapleyRelation::WeaklyPreferred, 0);
        assert!(build_polytope::<f64>(2, &prefs, 1e-6).is_ok());
    }

    #[test]
    fn empty_space_names_constraints() {
        let prefs = PreferenceStatements::new()
            .with_relation(0, ShapleyRelation::Indifferent, 1)
            .with_relation(0, ShapleyRelation::Preferred, 1);
        assert!(matches!(
            build_polytope::<f64>(2, &prefs, 1e-6),
            Err(CapacityError::Contradiction(_))
        ));
        // |I_12| <= 1 under monotonicity, so a margin of 2.5 leaves nothing.
        let prefs = PreferenceStatements::new()
            .with_interaction(0, 1, InteractionSign::Synergy)
            .unwrap();
        let p = build_polytope::<f64>(2, &prefs, 2.5).unwrap();
        match p.chebyshev_center() {
            Err(CapacityError::Infeasible(labels)) => assert!(!labels.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pinned_capacity_is_degenerate_but_usable() {
        let prefs = PreferenceStatements::new().with_relation(0, ShapleyRelation::Indifferent, 1);
        let p = build_polytope::<f64>(2, &prefs, 1e-6).unwrap();
        assert_eq!(p.reduced_dim(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = HarConfig::resolve(None, None, HarMode::Chain, p.reduced_dim());
        let mut s = HarSampler::from_center(&p, cfg, &mut rng).unwrap();
        for _ in 0..10 {
            let iv = s.next_capacity(&mut rng).unwrap();
            assert_eq!(iv.shapley().len(), 2);
            assert!((iv.shapley()[0] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn samples_stay_feasible() {
        let prefs = PreferenceStatements::new()
            .with_interaction(0, 1, InteractionSign::Redundancy)
            .unwrap()
            .with_interaction(1, 2, InteractionSign::Synergy)
            .unwrap()
            .with_relation(0, ShapleyRelation::Preferred, 2);
        let p = build_polytope::<f64>(3, &prefs, 1e-6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for mode in [HarMode::Chain, HarMode::Restart] {
            let cfg = HarConfig::resolve(None, Some(2), mode, p.reduced_dim());
            let mut s = HarSampler::from_center(&p, cfg, &mut rng).unwrap();
            for _ in 0..2000 {
                let x = s.next_ambient(&mut rng).unwrap();
                assert!(p.max_violation(&x) <= 1e-9);
                let iv = p.layout().to_interaction_vector(&x);
                iv.check(1e-9).unwrap();
            }
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let p = build_polytope::<f64>(3, &PreferenceStatements::new(), 1e-6).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cfg = HarConfig::resolve(None, None, HarMode::Chain, p.reduced_dim());
            let mut s = HarSampler::from_center(&p, cfg, &mut rng).unwrap();
            (0..50)
                .map(|_| s.next_ambient(&mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        assert_ne!(draw(5), draw(6));
    }

    #[test]
    fn defaults_follow_cube_rule() {
        let c = HarConfig::resolve(None, None, HarMode::Chain, 2);
        assert_eq!((c.burn_in, c.thinning), (8, 8));
        let c = HarConfig::resolve(Some(0), Some(3), HarMode::Restart, 2);
        assert_eq!((c.burn_in, c.thinning), (0, 3));
    }
}
