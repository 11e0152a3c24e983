//! Cofinite subsets of the naturals and numerical semigroups.
//!
//! Conventions used throughout: for a cofinite set `T ⊆ ℕ` containing 0,
//! the *gaps* are the elements of the finite complement, listed in
//! increasing order as `ℓ_1 < ℓ_2 < … < ℓ_g`; `g` is the *genus*, the
//! *conductor* `c` is the least integer with `[c, ∞) ⊆ T`, and the weight
//! is `W_T = Σ (ℓ_i − i)`. For a numerical semigroup `S` (additively
//! closed, `0 ∈ S`), the *Frobenius number* is `c − 1`, the *multiplicity*
//! `m` is the least positive member, and the *dual set* is
//! `K = {a : c − 1 − a ∉ S}`, a cofinite set with conductor exactly `c`
//! that is a semigroup iff `S` is symmetric (`c = 2g`).

use serde::Serialize;
use thiserror::Error;

/// Errors arising when constructing semigroups from user data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty after discarding zeros")]
    EmptyGenerators,
    #[error("generators have gcd {gcd} > 1, so the complement is infinite")]
    InfiniteComplement { gcd: u64 },
    #[error("not closed under addition: {a} and {b} are members but {a} + {b} is not")]
    NotClosed { a: u64, b: u64 },
    #[error("0 must be a member (it cannot be listed as a gap)")]
    MissingZero,
    #[error("the root of the semigroup tree has no parent")]
    RootHasNoParent,
}

/// A subset of ℕ with finite complement, containing 0.
///
/// Membership below the conductor is stored in a bitset; everything from
/// the conductor on is a member implicitly. The encoding is canonical
/// (minimal conductor, no stray bits), so derived equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CofiniteSet {
    conductor: u64,
    bits: Vec<u64>,
}

impl CofiniteSet {
    /// The whole of ℕ (conductor 0, no gaps).
    pub fn natural() -> Self {
        CofiniteSet { conductor: 0, bits: Vec::new() }
    }

    /// Builds the set `(members ∩ [0, horizon)) ∪ [horizon, ∞)`.
    ///
    /// Fails unless 0 is a member; every set handled by this crate
    /// contains 0.
    pub fn from_members(
        horizon: u64,
        members: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SemigroupError> {
        let set = Self::from_members_unchecked(horizon, members);
        if !set.contains(0) {
            return Err(SemigroupError::MissingZero);
        }
        Ok(set)
    }

    pub(crate) fn from_members_unchecked(
        horizon: u64,
        members: impl IntoIterator<Item = u64>,
    ) -> Self {
        let blocks = (horizon as usize + 63) / 64;
        let mut bits = vec![0u64; blocks];
        for n in members {
            if n < horizon {
                bits[(n / 64) as usize] |= 1 << (n % 64);
            }
        }
        Self::normalized(horizon, bits)
    }

    /// Canonicalizes: trims the conductor to its minimal value and masks
    /// bits at or beyond it.
    fn normalized(horizon: u64, mut bits: Vec<u64>) -> Self {
        let mut c = horizon;
        while c > 0 && bits[((c - 1) / 64) as usize] >> ((c - 1) % 64) & 1 == 1 {
            c -= 1;
        }
        bits.truncate((c as usize + 63) / 64);
        if c % 64 != 0 {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << (c % 64)) - 1;
            }
        }
        CofiniteSet { conductor: c, bits }
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Least `c` with `[c, ∞)` contained in the set; 0 for ℕ.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        let present: u64 = self.bits.iter().map(|b| b.count_ones() as u64).sum();
        self.conductor - present
    }

    /// The complement, in increasing order (all gaps are `< conductor`).
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&n| !self.contains(n)).collect()
    }

    /// Members below the conductor, in increasing order.
    pub fn members_below_conductor(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&n| self.contains(n)).collect()
    }

    /// `W_T = Σ (ℓ_i − i)`, gaps indexed from 1. Each term is nonnegative
    /// because 0 ∈ T forces `ℓ_i ≥ i`.
    pub fn weight(&self) -> u64 {
        self.gaps().iter().enumerate().map(|(i, &l)| l - (i as u64 + 1)).sum()
    }

    /// Weight by the forward walk from 0 to the conductor: each gap
    /// contributes the number of positive members already passed.
    pub fn weight_forward(&self) -> u64 {
        let mut members_passed = 0u64;
        let mut total = 0u64;
        for n in 0..self.conductor {
            if self.contains(n) {
                if n > 0 {
                    members_passed += 1;
                }
            } else {
                total += members_passed;
            }
        }
        total
    }

    /// Weight by the backward walk from the conductor down to 0: each
    /// positive member contributes the number of gaps already passed.
    pub fn weight_backward(&self) -> u64 {
        let mut gaps_passed = 0u64;
        let mut total = 0u64;
        for n in (1..self.conductor).rev() {
            if self.contains(n) {
                total += gaps_passed;
            } else {
                gaps_passed += 1;
            }
        }
        total
    }
}

/// A numerical semigroup: a [`CofiniteSet`] closed under addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    set: CofiniteSet,
    multiplicity: u64,
    genus: u64,
    /// Minimal generators, increasing. Canonical: recomputed even when the
    /// semigroup was built from a redundant generating set.
    generators: Vec<u64>,
}

impl NumericalSemigroup {
    /// The smallest semigroup containing `gens` (zeros are ignored).
    ///
    /// Uses the shortest-path characterization of the Apéry set: for
    /// `m = min(gens)`, the least member in each residue class mod `m` is
    /// the shortest path weight in the cyclic residue graph whose edges
    /// add one generator.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&x| x > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        let gcd = gens.iter().copied().fold(0u64, num_integer::gcd);
        if gcd != 1 {
            return Err(SemigroupError::InfiniteComplement { gcd });
        }
        let m = gens[0];
        if m == 1 {
            return Ok(Self::from_set_unchecked(CofiniteSet::natural()));
        }

        // Dijkstra over residues mod m; dist[r] = least member ≡ r (mod m).
        let mu = m as usize;
        let mut dist = vec![u64::MAX; mu];
        dist[0] = 0;
        let mut heap = std::collections::BinaryHeap::new();
        heap.push(std::cmp::Reverse((0u64, 0usize)));
        while let Some(std::cmp::Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &a in &gens {
                if a % m == 0 {
                    continue;
                }
                let nr = (r + (a % m) as usize) % mu;
                let nd = d + a;
                if nd < dist[nr] {
                    dist[nr] = nd;
                    heap.push(std::cmp::Reverse((nd, nr)));
                }
            }
        }
        let frobenius = dist.iter().max().copied().unwrap() - m;
        let conductor = frobenius + 1;
        let set = CofiniteSet::from_members_unchecked(
            conductor,
            (0..conductor).filter(|&n| dist[(n % m) as usize] <= n),
        );
        Ok(Self::from_set_unchecked(set))
    }

    /// The semigroup whose gap set is exactly `gaps`.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self, SemigroupError> {
        if gaps.contains(&0) {
            return Err(SemigroupError::MissingZero);
        }
        let mut gaps: Vec<u64> = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        let horizon = gaps.last().map_or(0, |&l| l + 1);
        let mut is_gap = vec![false; horizon as usize];
        for &l in &gaps {
            is_gap[l as usize] = true;
        }
        let set = CofiniteSet::from_members_unchecked(
            horizon,
            (0..horizon).filter(|&n| !is_gap[n as usize]),
        );
        Self::from_set(set)
    }

    /// Wraps a cofinite set after verifying additive closure.
    pub fn from_set(set: CofiniteSet) -> Result<Self, SemigroupError> {
        if !set.contains(0) {
            return Err(SemigroupError::MissingZero);
        }
        let c = set.conductor();
        let members = set.members_below_conductor();
        // Sums ≥ c are members automatically; only sums below c can fail.
        for (i, &a) in members.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &b in &members[i..] {
                if a + b >= c {
                    break;
                }
                if !set.contains(a + b) {
                    return Err(SemigroupError::NotClosed { a, b });
                }
            }
        }
        Ok(Self::from_set_unchecked(set))
    }

    /// Trusted constructor for internally produced sets (tree navigation).
    pub(crate) fn from_set_unchecked(set: CofiniteSet) -> Self {
        let multiplicity = (1..=set.conductor())
            .find(|&n| set.contains(n))
            .unwrap_or_else(|| if set.conductor() == 0 { 1 } else { set.conductor() });
        let genus = set.genus();
        let generators = minimal_generators(&set, multiplicity);
        NumericalSemigroup { set, multiplicity, genus, generators }
    }

    /// Trusted constructor when multiplicity and generators are already
    /// known (incremental tree construction).
    pub(crate) fn from_parts_unchecked(
        set: CofiniteSet,
        multiplicity: u64,
        generators: Vec<u64>,
    ) -> Self {
        debug_assert_eq!(generators, minimal_generators(&set, multiplicity));
        let genus = set.genus();
        NumericalSemigroup { set, multiplicity, genus, generators }
    }

    pub fn set(&self) -> &CofiniteSet {
        &self.set
    }

    pub fn contains(&self, n: u64) -> bool {
        self.set.contains(n)
    }

    pub fn conductor(&self) -> u64 {
        self.set.conductor()
    }

    /// Frobenius number `c − 1`; `None` for ℕ.
    pub fn frobenius(&self) -> Option<u64> {
        self.conductor().checked_sub(1)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Least positive member (1 for ℕ).
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gaps(&self) -> Vec<u64> {
        self.set.gaps()
    }

    pub fn weight(&self) -> u64 {
        self.set.weight()
    }

    /// `c = 2g` (equivalently: exactly one of `a`, `c−1−a` is a member for
    /// every `0 ≤ a < c`).
    pub fn is_symmetric(&self) -> bool {
        self.conductor() == 2 * self.genus
    }

    /// The dual set `K = {a ∈ ℕ : c − 1 − a ∉ S}`.
    ///
    /// Over ℤ the same condition holds automatically for `a ≥ c` and fails
    /// for `a < 0`, so restricting to ℕ loses nothing. `K` contains `S`,
    /// has conductor exactly `c` (since `0 ∈ S` keeps `c − 1` out of `K`),
    /// and genus `c − g`.
    pub fn dual_set(&self) -> CofiniteSet {
        let c = self.conductor();
        CofiniteSet::from_members_unchecked(
            c,
            (0..c).filter(|&a| !self.contains(c - 1 - a)),
        )
    }

    /// Pole orders `{c − a : a ∈ K ∩ [0, c)}` in increasing order.
    ///
    /// There are exactly `g` of them (members of `K` below `c` biject with
    /// gaps of `S` via `a ↦ c − 1 − a`). Dropping the largest (always `c`,
    /// from `a = 0`), the remaining `g − 1` values `k_1 < … < k_{g−1}`
    /// satisfy `Σ (k_i − i) = W_K`: writing K's gaps as `ℓ'_1 < … < ℓ'_{c−g}`,
    /// both sides count the pairs (member of K below c, smaller gap of K).
    pub fn pole_orders(&self) -> Vec<u64> {
        let k = self.dual_set();
        let c = self.conductor();
        let mut orders: Vec<u64> =
            (0..c).filter(|&a| k.contains(a)).map(|a| c - a).collect();
        orders.sort_unstable();
        orders
    }

    /// `2 ∈ S` (0-hyperelliptic).
    pub fn is_hyperelliptic(&self) -> bool {
        self.contains(2)
    }

    /// 4 and 6 are the two smallest positive members.
    pub fn is_bielliptic(&self) -> bool {
        self.multiplicity == 4 && !self.contains(5) && self.contains(6)
    }

    /// (a) exactly `κ` even members in `[2, 4κ]`, and (b) `4κ + 2 ∈ S`.
    pub fn is_kappa_hyperelliptic(&self, kappa: u64) -> bool {
        let evens = (1..=2 * kappa).filter(|&j| self.contains(2 * j)).count() as u64;
        evens == kappa && self.contains(4 * kappa + 2)
    }

    /// All `κ` for which the semigroup is κ-hyperelliptic.
    ///
    /// Matches are confined to `κ ≤ g`: among the `2κ` even numbers in
    /// `[2, 4κ]` at most `g` are gaps, so a match forces `κ ≥ 2κ − g`.
    /// (Multiple matches occur — e.g. gaps `{1,2,4}` matches κ = 2 only,
    /// while its genus-bound window `⌊g/2⌋` would be 1 — so callers get
    /// the full list.)
    pub fn kappa_matches(&self) -> Vec<u64> {
        (0..=self.genus).filter(|&k| self.is_kappa_hyperelliptic(k)).collect()
    }

    /// Every odd member in `[1, 2g]` exceeds the next-to-largest gap
    /// `ℓ_{g−1}`; vacuously true when `g < 2`.
    pub fn technical_hypothesis(&self) -> bool {
        if self.genus < 2 {
            return true;
        }
        let gaps = self.gaps();
        let second_largest_gap = gaps[gaps.len() - 2];
        (0..self.genus)
            .map(|j| 2 * j + 1)
            .filter(|&n| self.contains(n))
            .all(|n| n > second_largest_gap)
    }

    /// Full classification and weight summary.
    pub fn report(&self) -> WeightReport {
        let dual = self.dual_set();
        WeightReport {
            generators: self.generators.clone(),
            multiplicity: self.multiplicity,
            genus: self.genus,
            conductor: self.conductor(),
            frobenius: self.frobenius(),
            gaps: self.gaps(),
            weight: self.weight(),
            symmetric: self.is_symmetric(),
            dual_genus: dual.genus(),
            dual_weight: dual.weight(),
            dual_members_below_conductor: dual.members_below_conductor(),
            pole_orders: self.pole_orders(),
            hyperelliptic: self.is_hyperelliptic(),
            bielliptic: self.is_bielliptic(),
            kappa: self.kappa_matches(),
            technical_hypothesis: self.technical_hypothesis(),
        }
    }
}

/// Minimal generators by sieve: a positive member `n` is minimal iff it is
/// not a sum of two positive members. Every minimal generator is below
/// `c + m` (otherwise `n − m` is already a member and splits it).
fn minimal_generators(set: &CofiniteSet, multiplicity: u64) -> Vec<u64> {
    let c = set.conductor();
    if c == 0 {
        return vec![1];
    }
    let mut gens = Vec::new();
    'outer: for n in multiplicity..c + multiplicity {
        if !set.contains(n) {
            continue;
        }
        let mut a = multiplicity;
        while 2 * a <= n {
            if set.contains(a) && set.contains(n - a) {
                continue 'outer;
            }
            a += 1;
        }
        gens.push(n);
    }
    gens
}

/// Classification and weight summary of one semigroup, serialized by the
/// CLI as JSON or a CSV row.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WeightReport {
    pub generators: Vec<u64>,
    pub multiplicity: u64,
    pub genus: u64,
    pub conductor: u64,
    pub frobenius: Option<u64>,
    pub gaps: Vec<u64>,
    /// `W_S`.
    pub weight: u64,
    pub symmetric: bool,
    /// Genus of the dual set `K`; equals `c − g`.
    pub dual_genus: u64,
    /// `W_K`; equals `W_S + 2g − c`.
    pub dual_weight: u64,
    pub dual_members_below_conductor: Vec<u64>,
    pub pole_orders: Vec<u64>,
    pub hyperelliptic: bool,
    pub bielliptic: bool,
    /// All κ for which the semigroup is κ-hyperelliptic.
    pub kappa: Vec<u64>,
    pub technical_hypothesis: bool,
}
