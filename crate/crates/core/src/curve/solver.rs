//! Decides whether a curve is hyperelliptic: is there `h` with
//! `h(0) ≠ 0`, `deg h ≤ 2`, and `t²/h ∈ O_P`?
//!
//! Normalizing `h = 1 + αt + βt²`, membership of `t²/h` in `O_P` is
//! equivalent to the vanishing of finitely many polynomials in `(α, β)`:
//! expand `t²·h⁻¹` symbolically to the conductor, reduce against the
//! triangular basis of `O_P` (whose pivots are data-independent), and
//! read off the residual coefficients at the gaps. The decision is then
//! a question about the rational solutions of that system:
//!
//! * no solutions over ℚ̄ at all (trivial Gröbner basis, or an
//!   inconsistent linear system) — certified **no**;
//! * a rational solution, verified by an independent membership check —
//!   **yes** with the witness `h`;
//! * solutions over ℚ̄ but no rational one found — **undetermined**.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::ops::{Mul, Sub};

use crate::curve::algebra::{LocalAlgebra, RatPoly};
use crate::curve::CurveError;
use crate::series::{Poly, TruncatedSeries};
use crate::Rat;

/// Outcome of the hyperelliptic decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperellipticDecision {
    /// Witness `h` with `t²/h ∈ O_P`, verified by direct membership.
    Yes(RatPoly),
    /// Certified: no witness exists even over ℚ̄.
    No,
    /// Witnesses exist over ℚ̄, but none with rational coefficients was
    /// found.
    Undetermined,
}

// ---------------------------------------------------------------------
// Bivariate polynomials over ℚ in the unknowns α, β.
// ---------------------------------------------------------------------

/// Element of ℚ[α,β]; keys are exponent pairs `(i, j)` for `α^i β^j` and
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct MPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl MPoly {
    fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        MPoly { terms }
    }

    fn alpha() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), Rat::one());
        MPoly { terms }
    }

    fn beta() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 1), Rat::one());
        MPoly { terms }
    }

    fn add_term(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Leading term in lex order with β ≫ α.
    fn leading(&self) -> Option<((u32, u32), Rat)> {
        self.terms
            .iter()
            .max_by_key(|&(&(i, j), _)| (j, i))
            .map(|(&k, c)| (k, c.clone()))
    }

    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(&k, v)| (k, v.clone() * c.clone())).collect() }
    }

    fn mul_monomial(&self, exp: (u32, u32), c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((i + exp.0, j + exp.1), v.clone() * c.clone()))
                .collect(),
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    fn coeff(&self, key: (u32, u32)) -> Rat {
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    /// True when no β appears.
    fn is_alpha_only(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    /// Reads a β-free element as a univariate polynomial in α.
    fn as_alpha_poly(&self) -> RatPoly {
        let deg = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            debug_assert_eq!(j, 0);
            coeffs[i as usize] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Substitutes `α = a`, leaving a univariate polynomial in β.
    fn subst_alpha(&self, a: &Rat) -> RatPoly {
        let deg = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let mut pow = Rat::one();
            for _ in 0..i {
                pow = pow * a.clone();
            }
            coeffs[j as usize] = coeffs[j as usize].clone() + c.clone() * pow;
        }
        Poly::new(coeffs)
    }
}

impl std::ops::Add for MPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl std::ops::Sub for MPoly {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
        self
    }
}

impl std::ops::Neg for MPoly {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl std::ops::Mul for MPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = MPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(Rat::one())
    }
}

// ---------------------------------------------------------------------
// Gröbner machinery (lex, β ≫ α), sized for two variables.
// ---------------------------------------------------------------------

fn monomial_divides(a: (u32, u32), b: (u32, u32)) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

/// Full normal form of `p` modulo `basis` (every term irreducible).
fn normal_form(mut p: MPoly, basis: &[MPoly]) -> MPoly {
    let mut out = MPoly::zero();
    'outer: while let Some((lt, lc)) = p.leading() {
        for g in basis {
            let (glt, glc) = g.leading().expect("basis elements are nonzero");
            if monomial_divides(glt, lt) {
                let exp = (lt.0 - glt.0, lt.1 - glt.1);
                let factor = lc.clone() / glc;
                p = p.sub(g.mul_monomial(exp, &factor));
                continue 'outer;
            }
        }
        out.add_term(lt, lc);
        p.terms.remove(&lt);
    }
    out
}

fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let (ltf, lcf) = f.leading().unwrap();
    let (ltg, lcg) = g.leading().unwrap();
    let lcm = (ltf.0.max(ltg.0), ltf.1.max(ltg.1));
    let a = f.mul_monomial((lcm.0 - ltf.0, lcm.1 - ltf.1), &(Rat::one() / lcf));
    let b = g.mul_monomial((lcm.0 - ltg.0, lcm.1 - ltg.1), &(Rat::one() / lcg));
    a.sub(b)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (monic
/// elements, pairwise fully reduced).
fn buchberger(gens: &[MPoly]) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let (_, lc) = g.leading().unwrap();
            basis.push(g.scale(&(Rat::one() / lc)));
        }
    }
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|i| (0..i).map(move |j| (j, i))).collect();
    while let Some((i, j)) = pairs.pop() {
        let s = s_poly(&basis[i], &basis[j]);
        let nf = normal_form(s, &basis);
        if !nf.is_zero() {
            let (_, lc) = nf.leading().unwrap();
            let nf = nf.scale(&(Rat::one() / lc));
            let k = basis.len();
            pairs.extend((0..k).map(|i| (i, k)));
            basis.push(nf);
        }
    }
    // Interreduce to the unique reduced basis.
    loop {
        let mut changed = false;
        let mut next: Vec<MPoly> = Vec::new();
        for i in 0..basis.len() {
            let others: Vec<MPoly> = basis
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let nf = normal_form(basis[i].clone(), &others);
            if nf != basis[i] {
                changed = true;
            }
            if !nf.is_zero() {
                let (_, lc) = nf.leading().unwrap();
                next.push(nf.scale(&(Rat::one() / lc)));
            }
        }
        next.sort_by_key(|g| g.leading().map(|((i, j), _)| (j, i)));
        next.dedup();
        basis = next;
        if !changed {
            return basis;
        }
    }
}

// ---------------------------------------------------------------------
// Rational root extraction.
// ---------------------------------------------------------------------

/// Divisor-search cutoff: beyond this the candidate enumeration is
/// abandoned rather than risk an unbounded trial division.
const ROOT_SEARCH_LIMIT: i64 = 1_000_000_000_000;

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn to_i64_checked(n: &BigInt) -> Option<i64> {
    let limited: i64 = n.try_into().ok()?;
    (limited.abs() <= ROOT_SEARCH_LIMIT).then_some(limited)
}

/// Rational roots of `p` with multiplicities, plus the root-free
/// cofactor. `None` when the coefficient divisors are too large to
/// enumerate (the caller must treat the factorization as unknown).
pub(crate) fn rational_factorization(p: &RatPoly) -> Option<(Vec<(Rat, usize)>, RatPoly)> {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let v = p.valuation().unwrap();
    let mut work = Poly::new(p.coeffs()[v..].to_vec());
    if v > 0 {
        roots.push((Rat::zero(), v));
    }
    'find: while work.degree().map_or(false, |d| d >= 1) {
        // Integer model: clear denominators, strip content.
        let mut denom_lcm = BigInt::one();
        for c in work.coeffs() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            work.coeffs().iter().map(|c| c.numer() * (&denom_lcm / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();

        let a0 = to_i64_checked(&ints[0])?;
        let alead = to_i64_checked(ints.last().unwrap())?;
        for num in divisors(a0) {
            for den in divisors(alead) {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = Rat::new((sign * num).into(), den.into());
                    if work.eval(&cand).is_zero() {
                        let linear = Poly::new(vec![-cand.clone(), Rat::one()]);
                        let mut mult = 0;
                        loop {
                            let (q, r) = work.div_rem(&linear);
                            if !r.is_zero() {
                                break;
                            }
                            work = q;
                            mult += 1;
                        }
                        roots.push((cand, mult));
                        continue 'find;
                    }
                }
            }
        }
        break;
    }
    Some((roots, work))
}

/// Distinct rational roots of `p`; empty when none are certified (an
/// abandoned divisor search also yields empty, so absence of roots here
/// is not a certificate of their nonexistence).
pub(crate) fn rational_roots(p: &RatPoly) -> Vec<Rat> {
    if p.is_zero() {
        return Vec::new();
    }
    match rational_factorization(p) {
        Some((roots, _)) => roots.into_iter().map(|(r, _)| r).collect(),
        None => Vec::new(),
    }
}

// ---------------------------------------------------------------------
// The decision procedure.
// ---------------------------------------------------------------------

/// Membership equations for `t²/(1 + αt + βt²) ∈ O_P`: the residual
/// coefficients at the gaps below the conductor after triangular
/// reduction. The pivots of the reduction are the (rational) basis
/// elements of `O_P`, so the elimination order never depends on `α, β`.
fn membership_equations(algebra: &LocalAlgebra) -> Vec<MPoly> {
    let c = algebra.conductor();
    let mut h = vec![MPoly::one(), MPoly::alpha(), MPoly::beta()];
    h.truncate(c.max(1));
    h.resize(c, MPoly::zero());
    let z = TruncatedSeries::new(h).invert_normalized().shift(2);
    let mut res: Vec<MPoly> = z.coeffs().to_vec();
    for (&v, b) in algebra.basis() {
        let pivot = res[v].clone();
        if pivot.is_zero() {
            continue;
        }
        for (k, bc) in b.coeffs().iter().enumerate().take(c).skip(v) {
            let delta = pivot.clone().mul(MPoly::constant(bc.clone()));
            res[k] = res[k].clone().sub(delta);
        }
    }
    let s = algebra.semigroup();
    (0..c)
        .filter(|&v| !s.contains(v as u64))
        .map(|v| res[v].clone())
        .filter(|e| !e.is_zero())
        .collect()
}

/// Builds `h` and confirms `t²/h ∈ O_P` by an independent membership
/// computation; a symbolic solution is never reported without this.
fn verify_witness(
    algebra: &LocalAlgebra,
    alpha: &Rat,
    beta: &Rat,
) -> Result<Option<RatPoly>, CurveError> {
    let h = Poly::new(vec![Rat::one(), alpha.clone(), beta.clone()]);
    let t2 = Poly::monomial(Rat::one(), 2);
    Ok(algebra.contains_ratio(&t2, &h)?.then_some(h))
}

/// Attempts all rational β for fixed α = `a`: the β-constraints are the
/// substituted Gröbner elements. Returns a verified witness if found.
fn search_beta(
    algebra: &LocalAlgebra,
    gb: &[MPoly],
    a: &Rat,
) -> Result<Option<RatPoly>, CurveError> {
    let constraints: Vec<RatPoly> =
        gb.iter().map(|g| g.subst_alpha(a)).filter(|p| !p.is_zero()).collect();
    if constraints.is_empty() {
        // β is unconstrained; the simplest representative suffices.
        return verify_witness(algebra, a, &Rat::zero());
    }
    let q = constraints.iter().fold(Poly::zero(), |acc: RatPoly, p| {
        if acc.is_zero() {
            p.clone()
        } else {
            acc.gcd(p)
        }
    });
    if q.degree() == Some(0) {
        return Ok(None);
    }
    for b in rational_roots(&q) {
        if let Some(h) = verify_witness(algebra, a, &b)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Solves an all-linear system in `(α, β)` by Gaussian elimination;
/// `Err(())` signals inconsistency (certified over ℚ̄ by rank).
fn solve_linear(equations: &[MPoly]) -> Result<(Rat, Rat), ()> {
    // Rows (cα, cβ, rhs) for cα·α + cβ·β = rhs.
    let mut rows: Vec<(Rat, Rat, Rat)> = equations
        .iter()
        .map(|e| (e.coeff((1, 0)), e.coeff((0, 1)), -e.coeff((0, 0))))
        .collect();
    let mut alpha = Rat::zero();
    let mut beta = Rat::zero();
    if let Some(i) = rows.iter().position(|r| !r.0.is_zero()) {
        let (ca, cb, rhs) = rows.swap_remove(i);
        let (cb, rhs) = (cb / ca.clone(), rhs / ca);
        for row in &mut rows {
            let f = row.0.clone();
            row.1 = row.1.clone() - f.clone() * cb.clone();
            row.2 = row.2.clone() - f.clone() * rhs.clone();
            row.0 = Rat::zero();
        }
        if let Some(j) = rows.iter().position(|r| !r.1.is_zero()) {
            let (_, cb2, rhs2) = rows.swap_remove(j);
            beta = rhs2 / cb2;
        }
        alpha = rhs - cb * beta.clone();
    } else if let Some(j) = rows.iter().position(|r| !r.1.is_zero()) {
        let (_, cb, rhs) = rows.swap_remove(j);
        beta = rhs / cb;
    }
    for (ca, cb, rhs) in &rows {
        if (ca.clone() * alpha.clone() + cb.clone() * beta.clone() - rhs.clone()) != Rat::zero() {
            return Err(());
        }
    }
    Ok((alpha, beta))
}

/// Decides the hyperelliptic condition for the curve with local algebra
/// `algebra`. See the module docs for the three-valued semantics; `No`
/// always certifies nonexistence over ℚ̄, never merely over ℚ.
pub fn is_hyperelliptic(algebra: &LocalAlgebra) -> Result<HyperellipticDecision, CurveError> {
    let s = algebra.semigroup();
    // v(t²/h) = 2, so 2 ∈ S is necessary.
    if !s.contains(2) {
        return Ok(HyperellipticDecision::No);
    }
    if algebra.conductor() == 0 {
        return Ok(match verify_witness(algebra, &Rat::zero(), &Rat::zero())? {
            Some(h) => HyperellipticDecision::Yes(h),
            None => HyperellipticDecision::Undetermined,
        });
    }

    let equations = membership_equations(algebra);
    if equations.is_empty() {
        return Ok(match verify_witness(algebra, &Rat::zero(), &Rat::zero())? {
            Some(h) => HyperellipticDecision::Yes(h),
            None => HyperellipticDecision::Undetermined,
        });
    }
    if equations.iter().any(|e| e.is_constant()) {
        return Ok(HyperellipticDecision::No);
    }
    if equations.iter().all(|e| e.total_degree() <= 1) {
        return Ok(match solve_linear(&equations) {
            Ok((a, b)) => match verify_witness(algebra, &a, &b)? {
                Some(h) => HyperellipticDecision::Yes(h),
                None => HyperellipticDecision::Undetermined,
            },
            Err(()) => HyperellipticDecision::No,
        });
    }

    let gb = buchberger(&equations);
    if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
        // 1 ∈ I: empty variety over ℚ̄.
        return Ok(HyperellipticDecision::No);
    }
    let alpha_only: Vec<RatPoly> =
        gb.iter().filter(|g| g.is_alpha_only()).map(|g| g.as_alpha_poly()).collect();
    if !alpha_only.is_empty() {
        let p = alpha_only
            .iter()
            .fold(Poly::zero(), |acc: RatPoly, q| if acc.is_zero() { q.clone() } else { acc.gcd(q) });
        let Some((roots, _)) = rational_factorization(&p) else {
            return Ok(HyperellipticDecision::Undetermined);
        };
        for (a, _) in roots {
            if let Some(h) = search_beta(algebra, &gb, &a)? {
                return Ok(HyperellipticDecision::Yes(h));
            }
        }
        return Ok(HyperellipticDecision::Undetermined);
    }

    // Positive-dimensional solution set projecting onto the α-line:
    // sample small rational α and solve for β.
    for num in [0i64, 1, -1, 2, -2, 3, -3] {
        for den in [1i64, 2] {
            let a = Rat::new(num.into(), den.into());
            if let Some(h) = search_beta(algebra, &gb, &a)? {
                return Ok(HyperellipticDecision::Yes(h));
            }
        }
    }
    Ok(HyperellipticDecision::Undetermined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::algebra::LocalAlgebra;

    fn poly(coeffs: &[i64]) -> RatPoly {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    fn closure(tuple: &[RatPoly]) -> LocalAlgebra {
        LocalAlgebra::closure(&tuple[1..], &tuple[0], 512).expect("closure stabilizes")
    }

    #[test]
    fn factors_split_part_and_leaves_irreducible_cofactor() {
        // t·(t−1)²·(2t+1)·(t²+1)
        let p = poly(&[0, 1])
            .mul(&poly(&[-1, 1]))
            .mul(&poly(&[-1, 1]))
            .mul(&poly(&[1, 2]))
            .mul(&poly(&[1, 0, 1]));
        let (roots, rest) = rational_factorization(&p).expect("small coefficients");
        let expect = [
            (Rat::zero(), 1),
            (Rat::one(), 2),
            (Rat::new((-1).into(), 2.into()), 1),
        ];
        for (r, m) in expect {
            assert!(roots.contains(&(r, m)));
        }
        assert_eq!(roots.len(), 3);
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn odd_multiplicity_curve_is_not_hyperelliptic() {
        let alg = closure(&[poly(&[1]), poly(&[0, 0, 0, 1]), Poly::monomial(Rat::one(), 13)]);
        assert_eq!(is_hyperelliptic(&alg).unwrap(), HyperellipticDecision::No);
    }

    #[test]
    fn monomial_double_cover_yields_trivial_witness() {
        let alg = closure(&[poly(&[1]), poly(&[0, 0, 1]), Poly::monomial(Rat::one(), 5)]);
        match is_hyperelliptic(&alg).unwrap() {
            HyperellipticDecision::Yes(h) => assert_eq!(h, Poly::one()),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn unit_denominator_witness_is_recovered() {
        // Coordinates 1/(1+t), t²/(1+t), t⁵/(1+t): here t²/(1+t) is a ring
        // generator, so h = 1 + t witnesses the double cover.
        let alg = closure(&[poly(&[1, 1]), poly(&[0, 0, 1]), Poly::monomial(Rat::one(), 5)]);
        match is_hyperelliptic(&alg).unwrap() {
            HyperellipticDecision::Yes(h) => assert_eq!(h, poly(&[1, 1])),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn obstructed_genus_three_member_is_certified() {
        // 2 ∈ S but the membership equations force 1 ∈ I.
        let alg = closure(&[poly(&[1, -2]), poly(&[0, 0, 1, -1]), Poly::monomial(Rat::one(), 4)]);
        assert_eq!(is_hyperelliptic(&alg).unwrap(), HyperellipticDecision::No);
    }
}
