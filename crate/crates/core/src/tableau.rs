//! Lattice paths and Young diagrams attached to cofinite sets.
//!
//! For a cofinite set `T` containing 0, walk `i = 1, 2, …, L` with
//! `L = max(2·genus, conductor)` and record an up-step when `i ∉ T` and a
//! right-step when `i ∈ T`. The up-step at the `i`-th gap `ℓ_i` sits after
//! exactly `ℓ_i − i` right-steps, so reading gaps from largest to smallest
//! gives a partition `λ = (ℓ_g − g ≥ … ≥ ℓ_1 − 1)` whose box count is the
//! weight `W_T`. For a semigroup `S` the grid is `g × g`; for its dual `K`
//! it is `(c − g) × g`. Removing the top row leaves the subdiagram `T₁`;
//! the two duals are linked by `T₁(K) = transpose(T₁(S))`.

use crate::numset::CofiniteSet;

/// One step of the lattice walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Right,
}

/// Young diagram (with its bounding grid and lattice path) of a cofinite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    /// Row lengths, weakly decreasing, zero rows dropped.
    rows: Vec<u64>,
    /// (up-steps, right-steps) = (genus, L − genus).
    grid: (u64, u64),
    steps: Vec<Step>,
}

impl Tableau {
    pub fn of(set: &CofiniteSet) -> Tableau {
        let g = set.genus();
        let len = (2 * g).max(set.conductor());
        let steps: Vec<Step> = (1..=len)
            .map(|i| if set.contains(i) { Step::Right } else { Step::Up })
            .collect();
        let gaps = set.gaps();
        let mut rows: Vec<u64> = gaps
            .iter()
            .enumerate()
            .rev()
            .map(|(i, &l)| l - (i as u64 + 1))
            .take_while(|&r| r > 0)
            .collect();
        // Weakly decreasing already (ℓ_{i+1} − (i+1) ≥ ℓ_i − i); the rev +
        // take_while only trims trailing zero rows.
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        rows.shrink_to_fit();
        Tableau { rows, grid: (g, len - g), steps }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Total number of boxes; equals the weight of the underlying set.
    pub fn boxes(&self) -> u64 {
        self.rows.iter().sum()
    }

    /// (height, width) of the bounding grid.
    pub fn grid(&self) -> (u64, u64) {
        self.grid
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Length of the top (longest) row; 0 for the empty diagram.
    pub fn top_row(&self) -> u64 {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Rows strictly below the top row (the subdiagram `T₁`).
    pub fn below_top(&self) -> Vec<u64> {
        self.rows.iter().skip(1).copied().collect()
    }

    /// ASCII rendering, one `#` per box, top row first.
    pub fn render(&self) -> String {
        if self.rows.is_empty() {
            return "(empty diagram)".to_string();
        }
        let mut out = String::new();
        for (i, &r) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.extend(std::iter::repeat('#').take(r as usize));
        }
        out
    }
}

/// Conjugate partition: column lengths of the diagram with the given rows.
pub fn transpose(rows: &[u64]) -> Vec<u64> {
    let width = rows.first().copied().unwrap_or(0);
    (1..=width).map(|j| rows.iter().filter(|&&r| r >= j).count() as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numset::NumericalSemigroup;
    use crate::tree::fold_tree;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn dual_pair_diagrams() {
        // ⟨4,10,11,17⟩: diagrams with 10 and 12 boxes, top rows 5 and 7,
        // and transposed subdiagrams below the top.
        let s = sg(&[4, 10, 11, 17]);
        let t_s = Tableau::of(s.set());
        let t_k = Tableau::of(&s.dual_set());

        assert_eq!(t_s.rows(), &[5, 2, 1, 1, 1]);
        assert_eq!(t_s.boxes(), 10);
        assert_eq!(t_s.grid(), (8, 8));
        assert_eq!(t_s.top_row(), s.conductor() - 1 - s.genus());

        assert_eq!(t_k.rows(), &[7, 4, 1]);
        assert_eq!(t_k.boxes(), 12);
        assert_eq!(t_k.grid(), (6, 8));
        assert_eq!(t_k.top_row(), s.genus() - 1);

        assert_eq!(transpose(&t_s.below_top()), t_k.below_top());
        assert_eq!(transpose(&t_k.below_top()), t_s.below_top());
    }

    #[test]
    fn worked_example_diagrams() {
        let s = sg(&[3, 13, 14]);
        let t_s = Tableau::of(s.set());
        let t_k = Tableau::of(&s.dual_set());
        assert_eq!(t_s.rows(), &[3, 3, 2, 2, 1, 1]);
        assert_eq!(t_s.boxes(), 12);
        assert_eq!(t_k.rows(), &[7, 5, 3, 1]);
        assert_eq!(t_k.boxes(), 16);
    }

    #[test]
    fn extremal_subdiagram_shapes() {
        // Minimal κ = 3 pattern at genus 20: even members 8, 10, 12, …,
        // odd members 35, 37, 39; the dual subdiagram is an exact staircase.
        let mut gaps: Vec<u64> = (1..=7).collect();
        gaps.extend((9..=33).step_by(2));
        let s_min = NumericalSemigroup::from_gaps(&gaps).unwrap();
        assert_eq!(s_min.genus(), 20);
        assert_eq!(s_min.weight(), 91);
        let k_min = Tableau::of(&s_min.dual_set());
        assert_eq!(k_min.boxes(), 97);
        assert_eq!(k_min.below_top(), (1..=12).rev().collect::<Vec<_>>());

        // Maximal pattern 4, 8, 12 at genus 20: the dual's gaps are
        // {33 − s : s ∈ S, s < 34} = {1, 3, …, 21, 25, 29, 33}, a
        // staircase broken by three jumps of 4.
        let mut gaps: Vec<u64> = vec![2, 6, 10];
        gaps.extend((1..=33).step_by(2));
        gaps.sort_unstable();
        let s_max = NumericalSemigroup::from_gaps(&gaps).unwrap();
        assert_eq!(s_max.genus(), 20);
        let k_max = Tableau::of(&s_max.dual_set());
        assert_eq!(k_max.boxes(), 103);
        assert_eq!(k_max.below_top(), vec![16, 13, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1]);
        assert_eq!(
            transpose(&Tableau::of(s_max.set()).below_top()),
            k_max.below_top()
        );

        // ⟨4,14,29⟩: the weight-extremal symmetric semigroup has a
        // self-transpose subdiagram.
        let s0 = sg(&[4, 14, 29]);
        let t1 = Tableau::of(&s0.dual_set()).below_top();
        assert_eq!(t1, transpose(&t1));
        assert_eq!(Tableau::of(&s0.dual_set()).boxes(), 109);
    }

    #[test]
    fn path_step_counts() {
        let s = sg(&[3, 13, 14]);
        let t = Tableau::of(s.set());
        let ups = t.steps().iter().filter(|&&x| x == Step::Up).count() as u64;
        assert_eq!(ups, s.genus());
        assert_eq!(t.steps().len() as u64, 2 * s.genus());
        let k = Tableau::of(&s.dual_set());
        // Dual conductor exceeds twice the dual genus here, so the walk
        // runs to the conductor instead.
        assert_eq!(k.steps().len() as u64, s.conductor());
    }

    #[test]
    fn render_shapes() {
        let s = sg(&[4, 10, 11, 17]);
        assert_eq!(Tableau::of(s.set()).render(), "#####\n##\n#\n#\n#");
        assert_eq!(Tableau::of(sg(&[1]).set()).render(), "(empty diagram)");
    }

    #[test]
    fn transpose_theorem_and_weight_identity_small_genus() {
        // For every semigroup of genus ≤ 9: T₁(K) = transpose(T₁(S)) and
        // W_K = |T₁(S)| + g − 1 (for g ≥ 1).
        let failures = fold_tree(
            9,
            0,
            || 0u64,
            |s, bad| {
                let t1s = Tableau::of(s.set()).below_top();
                let k = Tableau::of(&s.dual_set());
                if k.below_top() != transpose(&t1s) {
                    *bad += 1;
                }
                if s.genus() >= 1 {
                    let t1_boxes: u64 = t1s.iter().sum();
                    if k.boxes() != t1_boxes + s.genus() - 1 {
                        *bad += 1;
                    }
                }
            },
            |a, b| a + b,
        );
        assert_eq!(failures, 0);
    }
}
