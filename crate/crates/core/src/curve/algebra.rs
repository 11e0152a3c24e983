//! The local ring of a parametrized curve at its singular point.
//!
//! For a parametrization `(f_0 : … : f_n)` with `f_0(0) ≠ 0`, the affine
//! coordinates `x_i = f_i/f_0` generate a subalgebra `O_P ⊆ ℚ[[t]]`, the
//! local ring of the image curve at the image of `t = 0`. Its value
//! semigroup `S = v(O_P)` is computed exactly: a triangular (one basis
//! element per valuation, monic) basis of the algebra is closed under
//! multiplication by the generators, truncated modulo `t^N`. Valuations of
//! a triangular span admit no cancellation, so the observed value set
//! below `N` is exact; the closure is accepted once the set certifies its
//! own conductor (see [`LocalAlgebra::closure`]).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::curve::CurveError;
use crate::numset::NumericalSemigroup;
use crate::series::{Poly, TruncatedSeries};
use crate::Rat;

pub(crate) type RatSeries = TruncatedSeries<Rat>;
pub(crate) type RatPoly = Poly<Rat>;

/// Triangular model of the local ring at the singular point.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    order: usize,
    conductor: usize,
    /// Monic basis elements keyed by valuation, one per member of the
    /// value semigroup below the conductor.
    basis: BTreeMap<usize, RatSeries>,
    semigroup: NumericalSemigroup,
    source: AlgebraSource,
}

/// Enough data to re-expand the basis at any truncation order; module
/// closures over the algebra may need more coefficients than the order
/// the stabilization loop settled on.
#[derive(Debug, Clone)]
enum AlgebraSource {
    Ratio { numerators: Vec<RatPoly>, denominator: RatPoly },
    CoverLift { f: RatPoly, h: RatPoly },
}

impl LocalAlgebra {
    /// Closes the algebra generated by `numerators[i]/denominator` and
    /// certifies its value semigroup.
    ///
    /// Starting from a truncation order suited to the input degrees, the
    /// closure doubles the order until the value set `V` below `N`
    /// certifies stability: with `c* = (largest gap) + 1` and `m` the
    /// smallest positive value, `c* + m ≤ N` guarantees `[c*, c* + m) ⊆ V`,
    /// and then `V ∪ [c*, ∞)` is closed under addition of `m`, hence is
    /// the exact value semigroup. Failure to certify by `max_order` is an
    /// error; if the parametrization is not birational the value set can
    /// never be cofinite, which is reported as its own error.
    pub fn closure(
        numerators: &[RatPoly],
        denominator: &RatPoly,
        max_order: usize,
    ) -> Result<Self, CurveError> {
        assert!(
            !denominator.coeff(0).is_zero(),
            "algebra closure requires a denominator that is a unit at t = 0"
        );
        let max_deg = numerators
            .iter()
            .chain(std::iter::once(denominator))
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        let mut order = (4 * max_deg + 8).min(max_order.max(8));
        let mut birational_checked = false;
        loop {
            if let Some(algebra) = Self::close_at_order(numerators, denominator, order) {
                return Ok(algebra);
            }
            if !birational_checked {
                // A parametrization that factors through a cover ramified
                // at t = 0 has values inside d·ℕ + corrections and can
                // never be cofinite; report the cover degree rather than
                // doubling the truncation forever. (Covers unramified at
                // t = 0 do stabilize; callers that require a birational
                // parametrization check the map degree up front.)
                let mut tuple = vec![denominator.clone()];
                tuple.extend(numerators.iter().cloned());
                let degree = crate::curve::maps::map_degree(&tuple)?;
                if degree > 1 {
                    return Err(CurveError::NotBirational { degree });
                }
                birational_checked = true;
            }
            if order >= max_order {
                return Err(CurveError::TruncationInsufficient { max_order });
            }
            order = (order * 2).min(max_order);
        }
    }

    fn close_at_order(
        numerators: &[RatPoly],
        denominator: &RatPoly,
        order: usize,
    ) -> Option<LocalAlgebra> {
        let den_inv = denominator.series(order).invert();
        let gens: Vec<RatSeries> =
            numerators.iter().map(|p| p.series(order).mul(&den_inv)).collect();

        let mut basis: BTreeMap<usize, RatSeries> = BTreeMap::new();
        basis.insert(0, Poly::one().series(order));
        let mut queue: Vec<RatSeries> = gens.clone();
        while let Some(mut s) = queue.pop() {
            loop {
                let Some(v) = s.valuation() else { break };
                if let Some(b) = basis.get(&v) {
                    let c = s.coeff(v);
                    s = s.sub(&b.scale(&c));
                } else {
                    let inv = Rat::new(1.into(), 1.into()) / s.coeff(v);
                    let monic = s.scale(&inv);
                    for g in &gens {
                        queue.push(monic.mul(g));
                    }
                    basis.insert(v, monic);
                    break;
                }
            }
        }

        // Stability certificate for the observed value set.
        let values: Vec<usize> = basis.keys().copied().collect();
        let multiplicity = values.iter().copied().find(|&v| v > 0)?;
        let largest_gap = (0..order).rev().find(|v| !basis.contains_key(v));
        let conductor = match largest_gap {
            None => 0,
            Some(l) => l + 1,
        };
        if conductor + multiplicity > order {
            return None;
        }

        let semigroup = NumericalSemigroup::from_set(
            crate::numset::CofiniteSet::from_members(
                conductor as u64,
                values.iter().map(|&v| v as u64),
            )
            .expect("algebra values contain 0"),
        )
        .expect("value sets of algebras are additively closed");

        basis.retain(|&v, _| v < conductor);
        Some(LocalAlgebra {
            order,
            conductor,
            basis,
            semigroup,
            source: AlgebraSource::Ratio {
                numerators: numerators.to_vec(),
                denominator: denominator.clone(),
            },
        })
    }

    /// The triangular basis re-expanded modulo `t^order` (recomputed from
    /// the defining data when `order` exceeds the stored truncation).
    pub(crate) fn expanded_basis(&self, order: usize) -> BTreeMap<usize, RatSeries> {
        if order <= self.order {
            return self.basis.iter().map(|(&v, b)| (v, b.truncate(order))).collect();
        }
        match &self.source {
            AlgebraSource::Ratio { numerators, denominator } => {
                let wide = Self::close_at_order(numerators, denominator, order)
                    .expect("a certified closure stays certified at larger order");
                debug_assert_eq!(wide.conductor, self.conductor);
                wide.basis
            }
            AlgebraSource::CoverLift { f, h } => {
                let wide = Self::double_cover_lift_at_order(f, h, order)
                    .expect("a valid cover lift re-expands at any order");
                wide.basis
            }
        }
    }

    /// The ring `ℚ[u², u³] + u⁴ℚ[[t]]` for a parameter `u = f/h` of
    /// valuation 2: the smallest bielliptic-type singularity through which
    /// the pair `(u², u³)` factors. Its value semigroup is always
    /// `{0, 4, 6} ∪ [8, ∞)`, of genus 5.
    pub fn double_cover_lift(
        f: &RatPoly,
        h: &RatPoly,
        max_order: usize,
    ) -> Result<Self, CurveError> {
        Self::double_cover_lift_at_order(f, h, max_order.clamp(24, 64))
    }

    fn double_cover_lift_at_order(
        f: &RatPoly,
        h: &RatPoly,
        order: usize,
    ) -> Result<Self, CurveError> {
        if h.is_zero() {
            return Err(CurveError::ZeroDenominator);
        }
        let (vf, vh) = (f.valuation(), h.valuation().unwrap());
        if vf.map_or(true, |v| v < vh) {
            return Err(CurveError::CoverParameterValuation { valuation: None });
        }
        let u = ratio_series(f, h, 0, order)?;
        if u.valuation() != Some(2) {
            return Err(CurveError::CoverParameterValuation { valuation: u.valuation() });
        }
        let conductor = 8usize;
        let mut basis: BTreeMap<usize, RatSeries> = BTreeMap::new();
        basis.insert(0, Poly::one().series(order));
        let u2 = u.mul(&u);
        let inv2 = Rat::new(1.into(), 1.into()) / u2.coeff(4);
        basis.insert(4, u2.scale(&inv2));
        let u3 = u2.mul(&u);
        let inv3 = Rat::new(1.into(), 1.into()) / u3.coeff(6);
        basis.insert(6, u3.scale(&inv3));
        // u⁴ℚ[[t]] = t⁸ℚ[[t]] since u⁴ = t⁸·(unit); no further reduction
        // is needed above the conductor.
        let semigroup = NumericalSemigroup::from_gaps(&[1, 2, 3, 5, 7])
            .expect("bielliptic gap set is closed");
        Ok(LocalAlgebra {
            order,
            conductor,
            basis,
            semigroup,
            source: AlgebraSource::CoverLift { f: f.clone(), h: h.clone() },
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub(crate) fn basis(&self) -> &BTreeMap<usize, RatSeries> {
        &self.basis
    }

    /// Reduces a series against the basis; the residual has either no
    /// valuation below `min(order of s, conductor-tail)` or a valuation
    /// outside the value semigroup.
    pub(crate) fn reduce(&self, mut s: RatSeries) -> RatSeries {
        loop {
            let Some(v) = s.valuation() else { return s };
            let Some(b) = self.basis.get(&v) else { return s };
            let c = s.coeff(v);
            let n = s.order();
            s = s.sub(&b.truncate(n).scale(&c));
        }
    }

    /// Decides `f/h ∈ O_P` exactly.
    ///
    /// The residual of `f/h` after basis reduction either vanishes below
    /// the conductor (then it lies in the conductor ideal `t^cŌ ⊆ O_P`,
    /// so the answer is yes) or exposes a valuation outside the value
    /// semigroup (no). A pole at `t = 0` is an immediate no; a common
    /// root of `f` and `h` at `t = 0` violates the coprimality the
    /// answer would be read against and is an error.
    pub fn contains_ratio(&self, f: &RatPoly, h: &RatPoly) -> Result<bool, CurveError> {
        if h.is_zero() {
            return Err(CurveError::ZeroDenominator);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let vf = f.valuation().unwrap();
        let vh = h.valuation().unwrap();
        if vf >= 1 && vh >= 1 {
            return Err(CurveError::CommonRootAtOrigin);
        }
        if vf < vh {
            return Ok(false);
        }
        if self.conductor == 0 {
            return Ok(true);
        }
        let s = ratio_series(f, h, 0, self.conductor)?;
        let residual = self.reduce(s);
        match residual.valuation() {
            None => Ok(true),
            Some(v) => {
                debug_assert!(!self.semigroup.contains(v as u64));
                Ok(false)
            }
        }
    }
}

/// Expands `t^shift · f/h` as a series modulo `t^order`; requires the
/// result to be regular at `t = 0` (i.e. `shift + v(f) ≥ v(h)`).
pub(crate) fn ratio_series(
    f: &RatPoly,
    h: &RatPoly,
    shift: usize,
    order: usize,
) -> Result<RatSeries, CurveError> {
    if h.is_zero() {
        return Err(CurveError::ZeroDenominator);
    }
    if f.is_zero() {
        return Ok(TruncatedSeries::zero(order));
    }
    let vh = h.valuation().unwrap();
    let vf = f.valuation().unwrap();
    assert!(
        shift + vf >= vh,
        "ratio series would have a pole: shift {shift} + v(f) {vf} < v(h) {vh}"
    );
    // Cancel t^vh from both parts; the denominator becomes a unit.
    let h_unit = Poly::new(h.coeffs()[vh..].to_vec());
    let f_shifted = Poly::new(f.coeffs()[vf..].to_vec()).shift(shift + vf - vh);
    Ok(f_shifted.series(order).mul(&h_unit.series(order).invert()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn poly(cs: &[i64]) -> RatPoly {
        Poly::new(cs.iter().map(|&c| q(c)).collect())
    }

    fn closure_of(nums: &[&[i64]], den: &[i64]) -> LocalAlgebra {
        let nums: Vec<RatPoly> = nums.iter().map(|c| poly(c)).collect();
        LocalAlgebra::closure(&nums, &poly(den), 512).unwrap()
    }

    #[test]
    fn monomial_semigroup_closure() {
        // (1, t³, t¹³, t¹⁴): the value semigroup is ⟨3,13,14⟩.
        let alg = closure_of(
            &[
                &[0, 0, 0, 1],
                &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
                &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
            ],
            &[1],
        );
        assert_eq!(alg.semigroup().generators(), &[3, 13, 14]);
        assert_eq!(alg.conductor(), 12);
    }

    #[test]
    fn cancellation_produces_odd_values() {
        // x = t⁴, y = t⁶ + t⁷: y² − x³ = 2t¹³ + t¹⁴ gives odd values; the
        // value semigroup is ⟨4,6,13⟩.
        let alg = closure_of(
            &[&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1, 1]],
            &[1],
        );
        assert_eq!(alg.semigroup().generators(), &[4, 6, 13]);
        assert_eq!(alg.semigroup().genus(), 8);
        assert!(alg.semigroup().is_bielliptic());
    }

    #[test]
    fn genus_three_family_member() {
        // (1 + t³, t², t⁴): gaps {1, 3, 5}.
        let alg = closure_of(&[&[0, 0, 1], &[0, 0, 0, 0, 1]], &[1, 0, 0, 1]);
        assert_eq!(alg.semigroup().gaps(), vec![1, 3, 5]);
        assert_eq!(alg.conductor(), 6);
    }

    #[test]
    fn nonbirational_tuple_is_rejected() {
        // (1, u², u³) for u = t²/(1+t³) factors through u; the value set
        // is contained in the even numbers and can never be cofinite.
        let u_sq = poly(&[0, 0, 0, 0, 1, 0, 0, 1]); // t⁴(1+t³)
        let u_cu = poly(&[0, 0, 0, 0, 0, 0, 1]); // t⁶
        let den = poly(&[1]).add(&poly(&[0, 0, 0, 1])); // 1+t³
        let den3 = den.mul(&den).mul(&den);
        let err = LocalAlgebra::closure(&[u_sq, u_cu], &den3, 256).unwrap_err();
        assert_eq!(err, CurveError::NotBirational { degree: 3 });
    }

    #[test]
    fn double_cover_lift_semigroup() {
        // u = t²/(1+t³): the lift is the genus-5 nonsymmetric bielliptic
        // singularity {0,4,6,8,→}.
        let alg =
            LocalAlgebra::double_cover_lift(&poly(&[0, 0, 1]), &poly(&[1, 0, 0, 1]), 512)
                .unwrap();
        assert_eq!(alg.semigroup().gaps(), vec![1, 2, 3, 5, 7]);
        assert_eq!(alg.conductor(), 8);
        assert!(alg.semigroup().is_bielliptic());
        assert!(!alg.semigroup().is_symmetric());
        // u² = t⁴/(1+t³)² lies in the ring; u and t² do not.
        let den2 = poly(&[1, 0, 0, 2, 0, 0, 1]);
        assert!(alg.contains_ratio(&poly(&[0, 0, 0, 0, 1]), &den2).unwrap());
        assert!(!alg.contains_ratio(&poly(&[0, 0, 1]), &poly(&[1, 0, 0, 1])).unwrap());
        assert!(!alg.contains_ratio(&poly(&[0, 0, 1]), &poly(&[1])).unwrap());
    }

    #[test]
    fn membership_in_closed_algebra() {
        let alg = closure_of(
            &[&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1, 1]],
            &[1],
        );
        // t⁴, t⁶ + t⁷, t¹², and anything from t¹⁶ = t^c on are members.
        assert!(alg.contains_ratio(&poly(&[0, 0, 0, 0, 1]), &poly(&[1])).unwrap());
        assert!(alg
            .contains_ratio(&poly(&[0, 0, 0, 0, 0, 0, 1, 1]), &poly(&[1]))
            .unwrap());
        assert!(alg
            .contains_ratio(&Poly::monomial(q(1), 12), &poly(&[1]))
            .unwrap());
        let tail = Poly::monomial(q(5), 16).add(&Poly::monomial(q(-3), 17));
        assert!(alg.contains_ratio(&tail, &poly(&[1])).unwrap());
        // t⁶ alone is not (only the combination t⁶ + t⁷ is), and neither
        // is 5t¹² − 3t¹³: reducing it leaves a tail of valuation 15, a
        // gap, because every ring element of valuation 14 is
        // t¹⁴ + t¹⁵ + O(t¹⁶).
        assert!(!alg.contains_ratio(&poly(&[0, 0, 0, 0, 0, 0, 1]), &poly(&[1])).unwrap());
        assert!(!alg
            .contains_ratio(&poly(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5, -3]), &poly(&[1]))
            .unwrap());
        // Rational members: t⁴/(1 − t) = t⁴ + t⁵ + … has value pattern
        // 4, 5, …; 5 is a gap, so it is not a member.
        assert!(!alg.contains_ratio(&poly(&[0, 0, 0, 0, 1]), &poly(&[1, -1])).unwrap());
        // Poles are rejected outright.
        assert!(!alg.contains_ratio(&poly(&[1]), &poly(&[0, 1])).unwrap());
        assert!(alg.contains_ratio(&Poly::zero(), &poly(&[1])).unwrap());
        assert_eq!(
            alg.contains_ratio(&poly(&[1]), &Poly::zero()),
            Err(CurveError::ZeroDenominator)
        );
    }
}
