//! Local analysis of a singular rational curve given by a polynomial
//! parametrization `t ↦ (f₀(t) : f₁(t) : … : f_n(t))`.
//!
//! The singular point `P` is the image of `t = 0` in the affine chart
//! `f₀ ≠ 0`; its local ring `O_P` is the subring of `ℚ[[t]]` generated
//! by the coordinate functions `xᵢ = fᵢ/f₀`, and the value semigroup
//! `S = v(O_P)` is computed exactly by a triangular closure with a
//! stabilization certificate ([`algebra`]). On top of that sit the exact
//! degree and base-point classification of pencils and certified
//! gonality brackets ([`pencil`]), map degrees over a generic fiber and
//! the quadric-hull cover detection ([`maps`]), the three-valued
//! hyperelliptic decision ([`solver`]), and rational normal scroll
//! containment ([`scroll`]).

pub mod algebra;
pub mod maps;
pub mod pencil;
pub mod scroll;
pub mod solver;

pub use algebra::LocalAlgebra;
pub use maps::{map_degree, quadric_hull, CoverVerdict, QuadricHullReport};
pub use pencil::{
    gonality_bounds, non_removable_pencil, pencil_degree, BasePointStatus, GonalityBounds,
    Pencil, StalkValues,
};
pub use scroll::{
    bielliptic_embedding, hyperelliptic_cone, scroll_codimension, verify_scroll_containment,
    ScrollBound, ScrollModel,
};
pub use solver::{is_hyperelliptic, HyperellipticDecision};

use num_traits::Zero;
use thiserror::Error;

use crate::numset::{NumericalSemigroup, WeightReport};
use crate::{Config, RatPoly};

/// Errors from curve construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("a parametrization needs at least two coordinates, got {got}")]
    TooFewCoordinates { got: usize },
    #[error("coordinate {index} is the zero polynomial")]
    ZeroCoordinate { index: usize },
    #[error("the chart coordinate vanishes at t = 0 even after removing common factors")]
    ChartVanishesAtOrigin,
    #[error("the coordinates are proportional: the map is constant")]
    ConstantMap,
    #[error("the parametrization is not birational onto its image (map degree {degree})")]
    NotBirational { degree: u64 },
    #[error("value semigroup did not stabilize below truncation order {max_order}")]
    TruncationInsufficient { max_order: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("numerator and denominator both vanish at t = 0; divide out the common factor first")]
    CommonRootAtOrigin,
    #[error("{function} does not lie in the local ring")]
    NotInLocalRing { function: String },
    #[error("scroll layout expects {expected} coordinates, got {got}")]
    BlockCoordinateMismatch { expected: usize, got: usize },
    #[error("the chart coordinate has roots outside ℚ; the scroll bound needs a split form")]
    DenominatorDoesNotSplit,
    #[error("cover parameter must have valuation 2 at t = 0, found {valuation:?}")]
    CoverParameterValuation { valuation: Option<usize> },
    #[error("no coordinates of valuation 4 and 6 to span the quadric hull")]
    NoQuarticSexticPair,
    #[error("no model available at genus {genus}")]
    UnsupportedGenus { genus: u64 },
}

/// A rational curve with a unibranch singularity at the image of
/// `t = 0`, given by a birational polynomial parametrization.
#[derive(Debug, Clone)]
pub struct RationalCurve {
    tuple: Vec<RatPoly>,
    algebra: LocalAlgebra,
}

/// Summary of the curve's local data for serialization.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CurveAnalysis {
    /// Valuations of the coordinate functions `fᵢ/f₀` for `i ≥ 1`.
    pub valuations: Vec<usize>,
    /// Truncation order at which the closure stabilized.
    pub order: usize,
    /// Weight and classification report of the value semigroup.
    pub report: WeightReport,
}

impl RationalCurve {
    /// Validates and normalizes the parametrization, checks
    /// birationality onto the image, and closes the local ring.
    ///
    /// Normalization divides out the gcd of all coordinates; after that
    /// `f₀(0) ≠ 0` is required so the singular point lies in the chart.
    /// A non-birational tuple is rejected up front: its "value
    /// semigroup" would be the image curve's (unramified covers) or not
    /// stabilize at all (ramified ones), neither of which is the data of
    /// this parametrization.
    pub fn new(tuple: &[RatPoly], config: &Config) -> Result<Self, CurveError> {
        if tuple.len() < 2 {
            return Err(CurveError::TooFewCoordinates { got: tuple.len() });
        }
        if let Some(index) = tuple.iter().position(|p| p.is_zero()) {
            return Err(CurveError::ZeroCoordinate { index });
        }
        let g = tuple.iter().skip(1).fold(tuple[0].clone(), |acc, p| acc.gcd(p));
        let mut tuple: Vec<RatPoly> = tuple
            .iter()
            .map(|p| {
                let (q, r) = p.div_rem(&g);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        if tuple[0].coeff(0).is_zero() {
            return Err(CurveError::ChartVanishesAtOrigin);
        }
        // Scale the chart coordinate to f₀(0) = 1 for determinism.
        let inv = tuple[0].coeff(0).recip();
        for p in &mut tuple {
            *p = p.scale(&inv);
        }
        let degree = maps::map_degree(&tuple)?;
        if degree != 1 {
            return Err(CurveError::NotBirational { degree });
        }
        let algebra = LocalAlgebra::closure(&tuple[1..], &tuple[0], config.max_order)?;
        Ok(RationalCurve { tuple, algebra })
    }

    pub fn tuple(&self) -> &[RatPoly] {
        &self.tuple
    }

    pub fn algebra(&self) -> &LocalAlgebra {
        &self.algebra
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        self.algebra.semigroup()
    }

    pub fn genus(&self) -> u64 {
        self.semigroup().genus()
    }

    pub fn multiplicity(&self) -> u64 {
        self.semigroup().multiplicity()
    }

    /// Membership of the rational function `f/h` in `O_P`.
    pub fn contains(&self, f: &RatPoly, h: &RatPoly) -> Result<bool, CurveError> {
        self.algebra.contains_ratio(f, h)
    }

    /// Exact degree and base-point status of the pencil `⟨h, f⟩`.
    pub fn pencil(&self, f: &RatPoly, h: &RatPoly) -> Result<Pencil, CurveError> {
        pencil::pencil_degree(&self.algebra, f, h)
    }

    /// The canonical non-removable pencil `⟨1, t²⟩` on multiplicity-2
    /// curves, when its existence conditions hold.
    pub fn non_removable_pencil(&self) -> Result<Option<Pencil>, CurveError> {
        pencil::non_removable_pencil(&self.algebra, &self.tuple)
    }

    /// Certified gonality bracket with a witness pencil.
    pub fn gonality(&self, config: &Config) -> Result<GonalityBounds, CurveError> {
        pencil::gonality_bounds(&self.algebra, &self.tuple, config)
    }

    /// Three-valued hyperelliptic decision.
    pub fn hyperelliptic(&self) -> Result<HyperellipticDecision, CurveError> {
        solver::is_hyperelliptic(&self.algebra)
    }

    /// The quadric-hull construction `(1, u², u³, u⁴)`; see
    /// [`maps::quadric_hull`].
    pub fn quadric_hull(
        &self,
        u: Option<(&RatPoly, &RatPoly)>,
    ) -> Result<QuadricHullReport, CurveError> {
        maps::quadric_hull(&self.algebra, &self.tuple, u)
    }

    /// Scroll codimension bound from the pencil direction `⟨f₀, f₁⟩`.
    pub fn scroll_bound(&self) -> Result<ScrollBound, CurveError> {
        scroll::scroll_codimension(&self.tuple)
    }

    pub fn analyze(&self) -> CurveAnalysis {
        CurveAnalysis {
            valuations: self.tuple[1..]
                .iter()
                .map(|p| p.valuation().expect("coordinates are nonzero"))
                .collect(),
            order: self.algebra.order(),
            report: self.semigroup().report(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Poly;
    use crate::Rat;
    use num_traits::One;

    fn poly(coeffs: &[i64]) -> RatPoly {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    fn mono(k: usize) -> RatPoly {
        Poly::monomial(Rat::one(), k)
    }

    #[test]
    fn rejects_degenerate_tuples() {
        let cfg = Config::default();
        assert!(matches!(
            RationalCurve::new(&[Poly::one()], &cfg),
            Err(CurveError::TooFewCoordinates { got: 1 })
        ));
        assert!(matches!(
            RationalCurve::new(&[Poly::one(), Poly::zero()], &cfg),
            Err(CurveError::ZeroCoordinate { index: 1 })
        ));
        // Coprime coordinates with f₀(0) = 0 leave no chart at t = 0.
        assert!(matches!(
            RationalCurve::new(&[mono(1), poly(&[1, 1])], &cfg),
            Err(CurveError::ChartVanishesAtOrigin)
        ));
        assert!(matches!(
            RationalCurve::new(&[Poly::one(), mono(2)], &cfg),
            Err(CurveError::NotBirational { degree: 2 })
        ));
        assert!(matches!(
            RationalCurve::new(&[poly(&[2]), poly(&[4])], &cfg),
            Err(CurveError::ConstantMap)
        ));
    }

    #[test]
    fn normalizes_common_factors_and_chart_unit() {
        // (2 + 2t)·(1, t³, t¹³) in disguise.
        let base = [Poly::one(), mono(3), mono(13)];
        let unit = poly(&[2, 2]);
        let tuple: Vec<RatPoly> = base.iter().map(|p| p.mul(&unit)).collect();
        let curve = RationalCurve::new(&tuple, &Config::default()).unwrap();
        assert_eq!(curve.tuple(), &base);
        assert_eq!(curve.genus(), 12);
        assert_eq!(curve.multiplicity(), 3);
    }

    #[test]
    fn analysis_reports_coordinate_valuations() {
        let tuple = [Poly::one(), mono(4), mono(6).add(&mono(7)), mono(8)];
        let curve = RationalCurve::new(&tuple, &Config::default()).unwrap();
        let analysis = curve.analyze();
        assert_eq!(analysis.valuations, vec![4, 6, 8]);
        assert_eq!(analysis.report.genus, 8);
        assert!(analysis.report.bielliptic);
    }
}
