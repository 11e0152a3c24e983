//! Degrees of rational maps given by polynomial tuples, and the
//! quadric-hull construction `(1, u², u³, u⁴)` for double covers.
//!
//! The degree of `t ↦ (f₀(t) : … : f_n(t))` onto its image is computed
//! exactly: over the field ℚ(τ) of rational functions in a generic
//! parameter, the fiber through the generic point `t = τ` is the common
//! vanishing locus of the cross products `fᵢ(t)·fⱼ(τ) − fⱼ(t)·fᵢ(τ)`.
//! In characteristic zero the generic fiber is reduced and misses
//! `t = ∞`, so the degree of the gcd of the cross products (a polynomial
//! in `t` with ℚ(τ)-coefficients) is the map degree. No sampling of
//! special points is involved.

use num_traits::{One, Zero};

use crate::curve::algebra::{LocalAlgebra, RatPoly};
use crate::curve::pencil::module_profile;
use crate::curve::CurveError;
use crate::series::Poly;
use crate::Rat;

// ---------------------------------------------------------------------
// The coefficient field ℚ(τ).
// ---------------------------------------------------------------------

/// Rational function in the generic parameter τ, kept in canonical form:
/// reduced fraction, monic denominator, and `0/1` for zero.
#[derive(Clone, PartialEq, Debug)]
struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    fn reduced(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in ℚ(τ)");
        if num.is_zero() {
            return RatFunc { num: Poly::zero(), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r1.is_zero() && r2.is_zero());
        let inv = Rat::one() / den.leading().unwrap().clone();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    fn constant(c: Rat) -> Self {
        RatFunc { num: Poly::new(vec![c]), den: Poly::one() }
    }

    /// The element `p(τ)` of ℚ(τ).
    fn of_poly(p: &RatPoly) -> Self {
        RatFunc { num: p.clone(), den: Poly::one() }
    }
}

impl std::ops::Add for RatFunc {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RatFunc::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl std::ops::Sub for RatFunc {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        RatFunc::reduced(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl std::ops::Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl std::ops::Mul for RatFunc {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RatFunc::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl std::ops::Div for RatFunc {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.num.is_zero(), "division by zero in ℚ(τ)");
        RatFunc::reduced(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
}

// ---------------------------------------------------------------------
// Map degree.
// ---------------------------------------------------------------------

/// Degree of `t ↦ (f₀ : … : f_n)` onto its image; `1` means birational.
/// Zero coordinates are ignored; a common polynomial factor is divided
/// out first (it only adds base points, not fibers). Errors with
/// `ConstantMap` when all coordinate ratios are constant.
pub fn map_degree(tuple: &[RatPoly]) -> Result<u64, CurveError> {
    let mut polys: Vec<RatPoly> = tuple.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.len() < 2 {
        return Err(CurveError::ConstantMap);
    }
    let g = polys.iter().skip(1).fold(polys[0].clone(), |acc, p| acc.gcd(p));
    for p in &mut polys {
        let (q, r) = p.div_rem(&g);
        debug_assert!(r.is_zero());
        *p = q;
    }

    let lifted: Vec<Poly<RatFunc>> = polys
        .iter()
        .map(|p| Poly::new(p.coeffs().iter().map(|c| RatFunc::constant(c.clone())).collect()))
        .collect();
    let generic: Vec<RatFunc> = polys.iter().map(RatFunc::of_poly).collect();

    let mut fiber: Poly<RatFunc> = Poly::zero();
    for i in 0..lifted.len() {
        for j in (i + 1)..lifted.len() {
            let cross = lifted[i].scale(&generic[j]).sub(&lifted[j].scale(&generic[i]));
            if cross.is_zero() {
                continue;
            }
            fiber = if fiber.is_zero() { cross } else { fiber.gcd(&cross) };
        }
    }
    if fiber.is_zero() {
        return Err(CurveError::ConstantMap);
    }
    // t = τ always lies on the fiber, so the degree is at least 1.
    let d = fiber.degree().expect("fiber polynomial is nonzero") as u64;
    debug_assert!(d >= 1);
    Ok(d)
}

// ---------------------------------------------------------------------
// The quadric-hull tuple (1, u², u³, u⁴).
// ---------------------------------------------------------------------

/// What the quadric-hull map revealed about the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverVerdict {
    /// The tuple separates points: the curve embeds (map degree 1).
    Birational,
    /// The map is 2 : 1 onto its image.
    DoubleCover,
    /// The map factors through a higher-degree cover.
    HigherCover(u64),
}

/// Report of the `(1, u², u³, u⁴)` construction.
#[derive(Debug, Clone)]
pub struct QuadricHullReport {
    /// The cleared polynomial tuple actually mapped, gcd-reduced.
    pub tuple: Vec<RatPoly>,
    /// Projective dimension of the span of the tuple (3 when the four
    /// sections are independent).
    pub dimension: usize,
    /// Degree of the linear series on the curve: singular-point length
    /// plus pole contributions away from the origin and at infinity.
    pub series_degree: u64,
    /// Degree of the induced map onto its image.
    pub map_degree: u64,
    /// `series_degree / map_degree` when it divides: the degree of the
    /// image curve in ℙ³.
    pub image_degree: Option<u64>,
    /// No length is concentrated at the singular point.
    pub base_point_free: bool,
    pub verdict: CoverVerdict,
}

fn rank_over_q(polys: &[RatPoly]) -> usize {
    let width = polys.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let mut rows: Vec<Vec<Rat>> = polys
        .iter()
        .map(|p| {
            let mut r = p.coeffs().to_vec();
            r.resize(width, Rat::zero());
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rat::one() / rows[rank][col].clone();
        for c in col..width {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..width {
                    let delta = rows[rank][c].clone() * f.clone();
                    rows[r][c] = rows[r][c].clone() - delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Runs the quadric-hull construction on the curve with the given local
/// algebra and coordinate tuple.
///
/// With `u = fu/hu` supplied, the mapped tuple is the cleared form of
/// `(1, u², u³, u⁴)`; both `u²` and `u³` must lie in the local ring.
/// Without `u`, coordinates of valuation 4 and 6 play the roles of `u²`
/// and `u³` and the tuple is `(1, x, y, x²)` cleared by `f₀²`.
///
/// The series degree splits as `B_P + deg q + max{0, max deg pᵢ − deg q}`
/// for the reduced tuple `(q, p₁, p₂, p₃)`: the away-from-origin part is
/// exact because at every root of `q` some `pᵢ` is a unit (the tuple is
/// gcd-reduced), and `B_P` is the module-closure count at the origin.
pub fn quadric_hull(
    algebra: &LocalAlgebra,
    tuple: &[RatPoly],
    u: Option<(&RatPoly, &RatPoly)>,
) -> Result<QuadricHullReport, CurveError> {
    let mut quartet: Vec<RatPoly> = match u {
        Some((fu, hu)) => {
            if hu.is_zero() {
                return Err(CurveError::ZeroDenominator);
            }
            if fu.is_zero() {
                return Err(CurveError::ConstantMap);
            }
            let g = fu.gcd(hu);
            let (fu, _) = fu.div_rem(&g);
            let (hu, _) = hu.div_rem(&g);
            let fu2 = fu.mul(&fu);
            let hu2 = hu.mul(&hu);
            if !algebra.contains_ratio(&fu2, &hu2)? {
                return Err(CurveError::NotInLocalRing { function: "u^2".to_string() });
            }
            let fu3 = fu2.mul(&fu);
            let hu3 = hu2.mul(&hu);
            if !algebra.contains_ratio(&fu3, &hu3)? {
                return Err(CurveError::NotInLocalRing { function: "u^3".to_string() });
            }
            vec![hu3.mul(&hu), fu2.mul(&hu2), fu3.mul(&hu), fu2.mul(&fu2)]
        }
        None => {
            let f0 = &tuple[0];
            let x4 = tuple.iter().find(|p| p.valuation() == Some(4));
            let x6 = tuple.iter().find(|p| p.valuation() == Some(6));
            let (Some(x4), Some(x6)) = (x4, x6) else {
                return Err(CurveError::NoQuarticSexticPair);
            };
            vec![f0.mul(f0), f0.mul(x4), f0.mul(x6), x4.mul(x4)]
        }
    };

    let g = quartet.iter().skip(1).fold(quartet[0].clone(), |acc, p| acc.gcd(p));
    for p in &mut quartet {
        let (q, r) = p.div_rem(&g);
        debug_assert!(r.is_zero());
        *p = q;
    }

    let dimension = rank_over_q(&quartet).saturating_sub(1);
    let gens: Vec<(&RatPoly, &RatPoly)> =
        quartet[1..].iter().map(|p| (p, &quartet[0])).collect();
    let profile = module_profile(algebra, &gens)?;
    let b_p = profile.outside.len() as u64;
    let q_deg = quartet[0].degree().unwrap() as u64;
    let p_deg = quartet[1..].iter().filter_map(|p| p.degree()).max().unwrap_or(0) as u64;
    let series_degree = b_p + q_deg + p_deg.saturating_sub(q_deg);
    let map_deg = map_degree(&quartet)?;
    let image_degree = (series_degree % map_deg == 0).then(|| series_degree / map_deg);
    let verdict = match map_deg {
        1 => CoverVerdict::Birational,
        2 => CoverVerdict::DoubleCover,
        d => CoverVerdict::HigherCover(d),
    };

    Ok(QuadricHullReport {
        tuple: quartet,
        dimension,
        series_degree,
        map_degree: map_deg,
        image_degree,
        base_point_free: b_p == 0,
        verdict,
    })
}
