//! Rational normal scrolls: containment certificates and the
//! directrix-section bound for curves with a degree-2 pencil direction.
//!
//! A scroll in ℙ^r is recorded by its block layout `(m_1, …, m_k)` with
//! `Σ(m_b + 1) = r + 1`: block `b` occupies the next `m_b + 1`
//! coordinates, and the scroll is cut out by the 2×2 minors of the
//! matrix whose columns are `(x_{o+j}, x_{o+j+1})` for `j < m_b` within
//! each block. Blocks of size 0 are cone vertices and contribute no
//! columns. Containment of a parametrized curve is a polynomial
//! identity: every minor must vanish identically in `t`.

use num_traits::{One, Zero};

use crate::curve::algebra::RatPoly;
use crate::curve::solver::rational_factorization;
use crate::curve::CurveError;
use crate::series::Poly;
use crate::Rat;

/// A parametrized curve in ℙ^r together with a scroll block layout.
#[derive(Debug, Clone)]
pub struct ScrollModel {
    pub coords: Vec<RatPoly>,
    pub blocks: Vec<usize>,
}

/// Checks that the parametrized curve lies on the scroll with the given
/// block layout: all 2×2 minors of the block-column matrix vanish
/// identically. Errors when the layout does not match the coordinate
/// count.
pub fn verify_scroll_containment(
    coords: &[RatPoly],
    blocks: &[usize],
) -> Result<bool, CurveError> {
    let expected: usize = blocks.iter().map(|&m| m + 1).sum();
    if expected != coords.len() {
        return Err(CurveError::BlockCoordinateMismatch { expected, got: coords.len() });
    }
    let mut columns: Vec<(&RatPoly, &RatPoly)> = Vec::new();
    let mut offset = 0;
    for &m in blocks {
        for j in 0..m {
            columns.push((&coords[offset + j], &coords[offset + j + 1]));
        }
        offset += m + 1;
    }
    for (a, b) in columns.iter() {
        for (c, d) in columns.iter() {
            let minor = a.mul(d).sub(&b.mul(c));
            if !minor.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The cone over a rational normal curve of degree `g` with vertex block:
/// the scroll model of a hyperelliptic curve with witness `h`. The
/// coordinates are the cleared powers of `x = t²/h` together with the
/// vertex section `t^{2g+1}`, so every column pair has the uniform ratio
/// `t²/h` and containment holds identically.
pub fn hyperelliptic_cone(genus: u64, h: &RatPoly) -> ScrollModel {
    let g = genus as usize;
    let mut coords = Vec::with_capacity(g + 2);
    coords.push(Poly::monomial(Rat::one(), 2 * g + 1));
    let mut h_pow: Vec<RatPoly> = vec![Poly::one()];
    for _ in 0..g {
        let next = h_pow.last().unwrap().mul(h);
        h_pow.push(next);
    }
    for i in 0..=g {
        coords.push(Poly::monomial(Rat::one(), 2 * i).mul(&h_pow[g - i]));
    }
    ScrollModel { coords, blocks: vec![0, g] }
}

/// Monomial scroll model of the bielliptic singularity of genus `g ≥ 5`:
/// the symmetric curve `⟨4, 6, 2g−3⟩` or the non-symmetric one with
/// members `{0, 4, 6, …, 2g−4} ∪ [2g−2, ∞)`. Coordinates are the powers
/// `x^i`, `x^i y` (`x = t⁴`, `y = t⁶`) below the conductor plus the tail
/// sections; the block layout has two ruling blocks and either one
/// length-1 block (symmetric) or two vertices (non-symmetric).
pub fn bielliptic_embedding(genus: u64, symmetric: bool) -> Result<ScrollModel, CurveError> {
    if genus < 5 {
        return Err(CurveError::UnsupportedGenus { genus });
    }
    let g = genus as usize;
    let m = g / 2;
    let n = g - 2 - m;
    let mono = |k: usize| Poly::monomial(Rat::one(), k);
    let mut coords = Vec::with_capacity(g + 2);
    for i in 0..=m {
        coords.push(mono(4 * i));
    }
    for i in 0..=n {
        coords.push(mono(6 + 4 * i));
    }
    let blocks = if symmetric {
        coords.push(mono(2 * g - 3));
        coords.push(mono(2 * g + 1));
        vec![m, n, 1]
    } else {
        coords.push(mono(2 * g - 1));
        coords.push(mono(2 * g + 1));
        vec![m, n, 0, 0]
    };
    debug_assert_eq!(coords.len(), g + 2);
    Ok(ScrollModel { coords, blocks })
}

/// Outcome of the directrix-section bound: the curve lies on a scroll of
/// codimension `dim U` inside its span, cut out by the 2×2 minors of a
/// rank-1 matrix of sections.
#[derive(Debug, Clone)]
pub struct ScrollBound {
    /// Basis of the section space `U` (monic representatives).
    pub directrix: Vec<RatPoly>,
    /// `dim U`: codimension of the scroll in the span of the curve.
    pub codimension: usize,
    /// `h⁰ = dim U + 1`.
    pub sections: usize,
    /// The cleared 2 × (dim U + 1) matrix `(f₀, f₁)ᵀ · (f₀, u_1, …)`
    /// whose minors vanish identically.
    pub matrix: Vec<Vec<RatPoly>>,
}

fn derivative(p: &RatPoly) -> RatPoly {
    if p.coeffs().len() <= 1 {
        return Poly::zero();
    }
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * Rat::from_integer(k.into()))
            .collect(),
    )
}

fn order_at(p: &RatPoly, c: &Rat) -> usize {
    let linear = Poly::new(vec![-c.clone(), Rat::one()]);
    let mut work = p.clone();
    let mut ord = 0;
    loop {
        let (q, r) = work.div_rem(&linear);
        if !r.is_zero() {
            return ord;
        }
        work = q;
        ord += 1;
        if work.is_zero() {
            return ord;
        }
    }
}

/// Reduced row echelon form; returns the nonzero rows.
fn echelon(mut rows: Vec<Vec<Rat>>, width: usize) -> Vec<Vec<Rat>> {
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
    rows.truncate(rank);
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    rows
}

/// Bounds the scroll containing the image of the curve, using the pencil
/// direction `⟨f₀, f₁⟩`.
///
/// For each root `c_j` of `f₀` (which must split over ℚ) the surplus
/// `β_j = H_j − D_j ≥ 0` compares the hyperplane correction
/// `H_j = max{0, m_j − min_{i≥1} ord_{c_j} f_i}` with the pencil's own
/// `D_j = max{0, m_j − ord_{c_j} f_1}`, and likewise at infinity via
/// degrees. The directrix space is
/// `U = {f ∈ ⟨f₁, …, f_n⟩ : ord_{c_j} f ≥ m_j − β_j, deg f ≤ deg f₀ + β_∞}`,
/// computed by exact linear algebra; every `u ∈ U` makes `(f₀, f₁)ᵀ ·
/// (f₀, u)` a rank-1 matrix of sections, so the curve lies on the
/// corresponding scroll of codimension `dim U`.
pub fn scroll_codimension(tuple: &[RatPoly]) -> Result<ScrollBound, CurveError> {
    if tuple.len() < 2 {
        return Err(CurveError::TooFewCoordinates { got: tuple.len() });
    }
    let f0 = &tuple[0];
    let f1 = &tuple[1];
    if f0.is_zero() {
        return Err(CurveError::ZeroDenominator);
    }
    let Some((roots, cofactor)) = rational_factorization(f0) else {
        return Err(CurveError::DenominatorDoesNotSplit);
    };
    if cofactor.degree().map_or(false, |d| d >= 1) {
        return Err(CurveError::DenominatorDoesNotSplit);
    }

    let rest = &tuple[1..];
    let d_max = rest.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let d0 = f0.degree().unwrap();

    // Surplus at infinity.
    let h_inf = d_max.saturating_sub(d0);
    let d_inf = f1.degree().unwrap_or(0).saturating_sub(d0);
    let beta_inf = h_inf - d_inf.min(h_inf);
    let degree_cap = d0 + beta_inf;

    // Surpluses at the finite roots of f₀.
    struct RootCondition {
        at: Rat,
        min_order: usize,
    }
    let mut conditions: Vec<RootCondition> = Vec::new();
    for (c, m) in &roots {
        let m_prime = rest.iter().map(|p| order_at(p, c)).min().unwrap_or(0);
        let h_j = m.saturating_sub(m_prime);
        let d_j = m.saturating_sub(order_at(f1, c));
        let beta_j = h_j - d_j.min(h_j);
        let min_order = m.saturating_sub(beta_j);
        if min_order > 0 {
            conditions.push(RootCondition { at: c.clone(), min_order });
        }
    }

    // Independent basis of V = ⟨f₁, …⟩ as coefficient rows.
    let width = d_max + 1;
    let v_rows: Vec<Vec<Rat>> = rest
        .iter()
        .map(|p| {
            let mut r = p.coeffs().to_vec();
            r.resize(width, Rat::zero());
            r
        })
        .collect();
    let v_basis = echelon(v_rows, width);
    let basis_polys: Vec<RatPoly> = v_basis.iter().map(|r| Poly::new(r.clone())).collect();

    // Linear conditions on V-coordinates: derivative vanishing at each
    // root up to the required order, and coefficient vanishing beyond
    // the degree cap.
    let mut cond_rows: Vec<Vec<Rat>> = Vec::new();
    for cond in &conditions {
        for l in 0..cond.min_order {
            let mut row = Vec::with_capacity(basis_polys.len());
            for b in &basis_polys {
                let mut d = b.clone();
                for _ in 0..l {
                    d = derivative(&d);
                }
                row.push(d.eval(&cond.at));
            }
            cond_rows.push(row);
        }
    }
    for k in (degree_cap + 1)..width {
        cond_rows.push(basis_polys.iter().map(|b| b.coeff(k)).collect());
    }

    // Kernel of the condition matrix gives the directrix space.
    let nv = basis_polys.len();
    let reduced = echelon(cond_rows, nv);
    let mut pivots = vec![false; nv];
    for row in &reduced {
        let p = row.iter().position(|c| !c.is_zero()).unwrap();
        pivots[p] = true;
    }
    let mut directrix: Vec<RatPoly> = Vec::new();
    for free in 0..nv {
        if pivots[free] {
            continue;
        }
        // Back-substitute the free coordinate.
        let mut coeffs = vec![Rat::zero(); nv];
        coeffs[free] = Rat::one();
        for row in &reduced {
            let p = row.iter().position(|c| !c.is_zero()).unwrap();
            coeffs[p] = -row[free].clone();
        }
        let mut u = Poly::zero();
        for (x, b) in coeffs.iter().zip(&basis_polys) {
            u = u.add(&b.scale(x));
        }
        if !u.is_zero() {
            let inv = Rat::one() / u.leading().unwrap().clone();
            directrix.push(u.scale(&inv));
        }
    }

    let mut matrix = vec![Vec::with_capacity(directrix.len() + 1); 2];
    for (r, factor) in [f0, f1].into_iter().enumerate() {
        matrix[r].push(factor.mul(f0));
        for u in &directrix {
            matrix[r].push(factor.mul(u));
        }
    }

    let codimension = directrix.len();
    Ok(ScrollBound { directrix, codimension, sections: codimension + 1, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> RatPoly {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    fn mono(k: usize) -> RatPoly {
        Poly::monomial(Rat::one(), k)
    }

    #[test]
    fn rational_normal_quartic_lies_on_its_scroll() {
        let coords = [Poly::one(), mono(1), mono(2), mono(3), mono(4)];
        assert!(verify_scroll_containment(&coords, &[2, 1]).unwrap());
        let cone = [Poly::one(), mono(1), mono(2), mono(4)];
        assert!(verify_scroll_containment(&cone, &[2, 0]).unwrap());
    }

    #[test]
    fn perturbed_coordinates_fall_off_the_scroll() {
        let coords = [Poly::one(), mono(1), mono(2).add(&mono(1)), mono(3), mono(4)];
        assert!(!verify_scroll_containment(&coords, &[2, 1]).unwrap());
    }

    #[test]
    fn layout_size_must_match() {
        let coords = [Poly::one(), mono(1)];
        assert!(matches!(
            verify_scroll_containment(&coords, &[2, 1]),
            Err(CurveError::BlockCoordinateMismatch { expected: 5, got: 2 })
        ));
    }

    #[test]
    fn hyperelliptic_cone_contains_its_curve() {
        let model = hyperelliptic_cone(3, &poly(&[1, 1]));
        assert_eq!(model.coords.len(), 5);
        assert!(verify_scroll_containment(&model.coords, &model.blocks).unwrap());
    }

    #[test]
    fn bielliptic_models_have_the_expected_shape() {
        let sym = bielliptic_embedding(8, true).unwrap();
        assert_eq!(sym.blocks, vec![4, 2, 1]);
        assert_eq!(sym.coords.len(), 10);
        assert_eq!(sym.coords.iter().filter_map(|p| p.degree()).max(), Some(17));
        assert!(verify_scroll_containment(&sym.coords, &sym.blocks).unwrap());

        let nonsym = bielliptic_embedding(5, false).unwrap();
        assert_eq!(nonsym.blocks, vec![2, 1, 0, 0]);
        assert_eq!(nonsym.coords.len(), 7);
        assert_eq!(nonsym.coords.iter().filter_map(|p| p.degree()).max(), Some(11));
        assert!(verify_scroll_containment(&nonsym.coords, &nonsym.blocks).unwrap());

        assert!(matches!(
            bielliptic_embedding(4, true),
            Err(CurveError::UnsupportedGenus { genus: 4 })
        ));
    }

    #[test]
    fn monomial_curve_directrix_is_one_dimensional() {
        let tuple = [Poly::one(), mono(3), mono(13), mono(14)];
        let bound = scroll_codimension(&tuple).unwrap();
        assert_eq!(bound.codimension, 1);
        assert_eq!(bound.sections, 2);
        assert_eq!(bound.directrix, vec![mono(3)]);
        assert_eq!(bound.matrix[0], vec![Poly::one(), mono(3)]);
        assert_eq!(bound.matrix[1], vec![mono(3), mono(6)]);
    }

    #[test]
    fn irrational_denominator_roots_are_reported() {
        let tuple = [poly(&[1, 0, 1]), mono(2)];
        assert!(matches!(
            scroll_codimension(&tuple),
            Err(CurveError::DenominatorDoesNotSplit)
        ));
    }
}
