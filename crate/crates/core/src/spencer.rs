//! Tableau prolongations, Cartan's test, Spencer cohomology dimensions, and
//! the restricted skewing kernel that seeds elementary reduction.
//!
//! A prolongation `A^(rho)` lives in `W ⊗ (⊗^{rho+1} V*)`, flattened so that
//! the coordinate of `(a, k_0, …, k_rho)` sits at Horner index
//! `((a·n + k_0)·n + k_1)·n + …`.  All spaces here are expressed in the
//! original coordinates of `W` and `V`, so they compose directly with
//! direction subspaces of `V` produced elsewhere.

use num::Zero;

use crate::mat::Mat;
use crate::par;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::tableau::Tableau;

/// Binomial coefficient with the usual out-of-range convention.
pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binom(n, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// One prolongation step on a flattened subspace whose trailing tensor slot
/// has size `nvars`: returns `{Q ∈ space ⊗ V* : Q symmetric in the last two
/// slots}`, flattened with one more trailing slot.
pub(crate) fn prolong_step(space: &Subspace, nvars: usize) -> Subspace {
    let m = space.ambient();
    assert!(nvars > 0, "prolongation needs at least one variable");
    assert_eq!(m % nvars, 0, "ambient does not factor through the slot size");
    let out_ambient = m * nvars;
    let d = space.dim();
    if d == 0 {
        return Subspace::zero(out_ambient);
    }
    let mpre = m / nvars;
    let basis = space.basis();
    // Parameters c[t*nvars + k] describe Q = Σ_{t,k} c[t,k] · basis_t ⊗ e^k.
    // Symmetry of the last two slots pins, for every prefix p and j < k:
    //   Σ_t c[t,k]·basis_t[p·nvars + j] − Σ_t c[t,j]·basis_t[p·nvars + k] = 0.
    let pairs = subsets(nvars, 2);
    let rows = par::map_indexed(mpre * pairs.len(), |row| {
        let p = row / pairs.len();
        let (j, k) = {
            let pair = &pairs[row % pairs.len()];
            (pair[0], pair[1])
        };
        let mut cons = vec![Scalar::zero(); d * nvars];
        for t in 0..d {
            let bj = basis.at(t, p * nvars + j);
            let bk = basis.at(t, p * nvars + k);
            if !bj.is_zero() {
                cons[t * nvars + k] = bj.clone();
            }
            if !bk.is_zero() {
                cons[t * nvars + j] = -bk.clone();
            }
        }
        cons
    });
    let kernel = Mat::from_rows(d * nvars, rows).kernel();
    let vecs = par::map_indexed(kernel.rows(), |i| {
        let coeff = kernel.row(i);
        let mut v = vec![Scalar::zero(); out_ambient];
        for t in 0..d {
            for k in 0..nvars {
                let c = &coeff[t * nvars + k];
                if c.is_zero() {
                    continue;
                }
                for q in 0..m {
                    let b = basis.at(t, q);
                    if !b.is_zero() {
                        v[q * nvars + k] += c * b;
                    }
                }
            }
        }
        v
    });
    Subspace::span(out_ambient, &vecs)
}

/// Whether every basis element of `space` (ambient `r·n^slots`) is symmetric
/// under swapping any two adjacent tensor slots.
fn fully_symmetric(space: &Subspace, n: usize, slots: usize) -> bool {
    if slots < 2 {
        return true;
    }
    let basis = space.basis();
    let ambient = space.ambient();
    let mut npow = vec![1usize; slots + 1];
    for i in 1..=slots {
        npow[i] = npow[i - 1] * n;
    }
    for row in 0..basis.rows() {
        for idx in 0..ambient {
            for slot in 0..slots - 1 {
                // Digits count from the most significant tensor slot.
                let hi = npow[slots - 1 - slot];
                let lo = npow[slots - 2 - slot];
                let di = (idx / hi) % n;
                let dj = (idx / lo) % n;
                if di == dj {
                    continue;
                }
                let swapped = idx - di * hi - dj * lo + dj * hi + di * lo;
                if basis.at(row, idx) != basis.at(row, swapped) {
                    return false;
                }
            }
        }
    }
    true
}

/// A tableau prolongation `A^(rho)` in flattened original coordinates.
#[derive(Debug, Clone)]
pub struct ProlongedTableau {
    pub base: Tableau,
    pub rho: usize,
    pub space: Subspace,
}

impl ProlongedTableau {
    /// The order-zero prolongation: the tableau itself, flattened.
    pub fn initial(t: &Tableau) -> Self {
        ProlongedTableau {
            base: t.clone(),
            rho: 0,
            space: t.span_original(),
        }
    }
}

/// The next prolongation `A^(rho+1) = {Q ∈ A^(rho) ⊗ V* : Q symmetric in the
/// last two slots}`.  Symmetry in all slots follows and is checked.
pub fn prolong(p: &ProlongedTableau) -> ProlongedTableau {
    let n = p.base.n();
    let space = prolong_step(&p.space, n);
    debug_assert!(
        fully_symmetric(&space, n, p.rho + 2),
        "prolongation lost full slot symmetry"
    );
    ProlongedTableau {
        base: p.base.clone(),
        rho: p.rho + 1,
        space,
    }
}

/// The prolongation of order `rho`, starting from the tableau itself.
pub fn prolonged(t: &Tableau, rho: usize) -> ProlongedTableau {
    let mut p = ProlongedTableau::initial(t);
    for _ in 0..rho {
        p = prolong(&p);
    }
    p
}

/// Cartan's test: `(involutive, dim A^(1), Σ_k k·s_k)`.  The inequality
/// `dim A^(1) ≤ Σ_k k·s_k` holds for every tableau and is asserted; equality
/// is involutivity.
pub fn cartan_test(t: &Tableau) -> (bool, usize, usize) {
    let dim_a1 = prolong(&ProlongedTableau::initial(t)).space.dim();
    let bound = t.cartan_bound();
    assert!(
        dim_a1 <= bound,
        "first prolongation exceeds the character bound"
    );
    (dim_a1 == bound, dim_a1, bound)
}

/// Rank of the skewing map on `space ⊗ Λ^q V*`, where `space ⊆ W ⊗ (⊗^{p+1} V*)`
/// is slot-symmetric.  The map sends `T ⊗ e^J` to
/// `Σ_m ± (slice of T by its last slot at m) ⊗ e^{J ∪ {m}}`, landing in
/// `(W ⊗ ⊗^p V*) ⊗ Λ^{q+1} V*`.
fn delta_image_rank(space: &Subspace, r: usize, n: usize, p: usize, q: usize) -> usize {
    let d = space.dim();
    let lam_out = binom(n, q + 1);
    if d == 0 || lam_out == 0 {
        return 0;
    }
    let npow_p = n.pow(p as u32);
    let out_ambient = r * npow_p * lam_out;
    let qsets = subsets(n, q);
    let out_sets = subsets(n, q + 1);
    // Rank of the (q+1)-subset J' in lexicographic order.
    let rank_of = |set: &[usize]| -> usize {
        out_sets
            .binary_search_by(|probe| probe.as_slice().cmp(set))
            .expect("subset enumeration is exhaustive")
    };
    let basis = space.basis();
    let images = par::map_indexed(d * qsets.len(), |item| {
        let t = item / qsets.len();
        let j_set = &qsets[item % qsets.len()];
        let mut v = vec![Scalar::zero(); out_ambient];
        for m in 0..n {
            if j_set.contains(&m) {
                continue;
            }
            let mut merged = j_set.clone();
            let pos = merged.iter().position(|&x| x > m).unwrap_or(merged.len());
            merged.insert(pos, m);
            let negative = pos % 2 == 1;
            let jrank = rank_of(&merged);
            for a in 0..r {
                for tpre in 0..npow_p {
                    let src = basis.at(t, (a * npow_p + tpre) * n + m);
                    if src.is_zero() {
                        continue;
                    }
                    let dst = (a * npow_p + tpre) * lam_out + jrank;
                    if negative {
                        v[dst] -= src;
                    } else {
                        v[dst] += src;
                    }
                }
            }
        }
        v
    });
    Subspace::span(out_ambient, &images).dim()
}

/// Spencer cohomology dimensions of the prolongation sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpencerReport {
    /// `dim A^(rho)` for `rho = 0..=rho_max`.
    pub dims_a: Vec<usize>,
    /// `dim H^rho(A)` for `rho = 2..=rho_max` (entry `i` holds `rho = i + 2`).
    pub dims_h: Vec<usize>,
    /// Whether every listed cohomology dimension vanishes.
    pub involutive: bool,
}

/// Dimensions of the Spencer cohomology groups `H^rho(A)` for
/// `rho = 2..=rho_max`, together with the prolongation dimensions they rest
/// on.  `H^rho` is the cohomology of
/// `A^(rho-1) ⊗ Λ¹ → A^(rho-2) ⊗ Λ² → A^(rho-3) ⊗ Λ³`
/// at the middle spot (with `A^(-1) = W`), so the zero tableau reports zeros
/// and an involutive tableau reports zeros at every listed order.
pub fn spencer_h_dims(t: &Tableau, rho_max: usize) -> SpencerReport {
    let n = t.n();
    let r = t.r();
    assert!(
        (2..=n + 1).contains(&rho_max),
        "cohomology order must lie in 2..=n+1"
    );
    let mut spaces = Vec::with_capacity(rho_max + 1);
    spaces.push(ProlongedTableau::initial(t));
    for _ in 0..rho_max {
        let next = prolong(spaces.last().expect("nonempty"));
        spaces.push(next);
    }
    let dims_a: Vec<usize> = spaces.iter().map(|p| p.space.dim()).collect();
    let mut dims_h = Vec::with_capacity(rho_max - 1);
    for rho in 2..=rho_max {
        let p = rho - 2;
        let cycles = dims_a[p] * binom(n, 2) - delta_image_rank(&spaces[p].space, r, n, p, 2);
        let boundaries = n * dims_a[rho - 1] - dims_a[rho];
        assert!(
            boundaries <= cycles,
            "skewing image escaped the kernel at order {rho}"
        );
        dims_h.push(cycles - boundaries);
    }
    let involutive = dims_h.iter().all(|&h| h == 0);
    SpencerReport {
        dims_a,
        dims_h,
        involutive,
    }
}

/// The kernel of the restricted skewing map on `A ⊗ X*`:
/// `E = {Q : Σ_k Q[(a,k),j]·X_i[k] = Σ_k Q[(a,k),i]·X_j[k] for all a, i < j}`,
/// flattened in `W ⊗ V* ⊗ X*` with index `(a·n + k)·dim x + i`.  The slices of
/// `Q` along `X*` lie in the tableau, and the skew part of the contraction of
/// the `V*` slot against `x` vanishes.  This is the tableau of the elementary
/// extension at the formal level.
pub fn delta_x_kernel(t: &Tableau, x: &Subspace) -> Subspace {
    let n = t.n();
    let r = t.r();
    assert_eq!(x.ambient(), n, "direction space must live in V");
    assert!(
        !x.is_zero(),
        "restricted skewing needs a nonzero direction space"
    );
    let u = x.dim();
    let xb = x.basis();
    let a_space = t.span_original();
    let d = a_space.dim();
    let out_ambient = r * n * u;
    if d == 0 {
        return Subspace::zero(out_ambient);
    }
    let ab = a_space.basis();
    // contraction[t][a·u + i] = Σ_k basis_t[(a,k)] · X_i[k]
    let contraction: Vec<Vec<Scalar>> = par::map_indexed(d, |t| {
        let mut c = vec![Scalar::zero(); r * u];
        for a in 0..r {
            for i in 0..u {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    let b = ab.at(t, a * n + k);
                    if !b.is_zero() {
                        acc += b * xb.at(i, k);
                    }
                }
                c[a * u + i] = acc;
            }
        }
        c
    });
    let pairs = subsets(u, 2);
    let rows = par::map_indexed(r * pairs.len(), |row| {
        let a = row / pairs.len();
        let (i, j) = {
            let pair = &pairs[row % pairs.len()];
            (pair[0], pair[1])
        };
        let mut cons = vec![Scalar::zero(); d * u];
        for t in 0..d {
            let ci = &contraction[t][a * u + i];
            let cj = &contraction[t][a * u + j];
            if !ci.is_zero() {
                cons[t * u + j] = ci.clone();
            }
            if !cj.is_zero() {
                cons[t * u + i] = -cj.clone();
            }
        }
        cons
    });
    let kernel = Mat::from_rows(d * u, rows).kernel();
    let vecs = par::map_indexed(kernel.rows(), |krow| {
        let coeff = kernel.row(krow);
        let mut v = vec![Scalar::zero(); out_ambient];
        for t in 0..d {
            for i in 0..u {
                let c = &coeff[t * u + i];
                if c.is_zero() {
                    continue;
                }
                for pos in 0..r * n {
                    let b = ab.at(t, pos);
                    if !b.is_zero() {
                        v[pos * u + i] += c * b;
                    }
                }
            }
        }
        v
    });
    Subspace::span(out_ambient, &vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::mat;
    use crate::mat::vec_i;

    fn caps() -> Caps {
        Caps::default()
    }

    fn heat_1d() -> Tableau {
        let gens = vec![mat![[1, 0], [0, 0]], mat![[0, 1], [1, 0]]];
        Tableau::from_generators(2, 2, gens, 0, &caps()).unwrap()
    }

    fn heat_2d() -> Tableau {
        let gens = vec![
            mat![[1, 0, 0], [0, 0, 0], [0, 0, 1]],
            mat![[0, 1, 0], [0, 0, 1], [0, 0, 0]],
            mat![[0, 0, 0], [1, 0, 0], [0, 1, 0]],
            mat![[0, 0, -1], [0, 1, 0], [0, 0, 0]],
            mat![[0, 0, 0], [0, 0, 0], [1, 0, 0]],
        ];
        Tableau::from_generators(3, 3, gens, 0, &caps()).unwrap()
    }

    fn full_tableau(n: usize, r: usize) -> Tableau {
        let mut gens = Vec::new();
        for a in 0..r {
            for k in 0..n {
                gens.push(Mat::from_fn(r, n, |i, j| {
                    if i == a && j == k {
                        crate::scalar::int(1)
                    } else {
                        Scalar::zero()
                    }
                }));
            }
        }
        Tableau::from_generators(n, r, gens, 0, &caps()).unwrap()
    }

    /// One generator with an anti-diagonal matrix; its only prolongation is
    /// zero while the character bound is one, so nothing about it is
    /// involutive.
    fn antidiagonal() -> Tableau {
        let gens = vec![mat![[0, 1], [1, 0]]];
        Tableau::from_generators(2, 2, gens, 0, &caps()).unwrap()
    }

    #[test]
    fn binomials_and_subsets() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        let pairs = subsets(3, 2);
        assert_eq!(pairs, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn initial_prolongation_is_the_flattened_tableau() {
        let t = heat_1d();
        let p = ProlongedTableau::initial(&t);
        assert_eq!(p.rho, 0);
        assert_eq!(p.space, t.span_original());
    }

    #[test]
    fn full_tableau_prolongations_are_symmetric_powers() {
        let t = full_tableau(3, 2);
        assert_eq!(prolonged(&t, 1).space.dim(), 2 * 6);
        let t = full_tableau(2, 2);
        assert_eq!(prolonged(&t, 1).space.dim(), 2 * 3);
        assert_eq!(prolonged(&t, 2).space.dim(), 2 * 4);
    }

    #[test]
    fn heat_1d_prolongation_dimensions() {
        let t = heat_1d();
        assert_eq!(prolonged(&t, 1).space.dim(), 2);
        assert_eq!(prolonged(&t, 2).space.dim(), 2);
        assert_eq!(prolonged(&t, 3).space.dim(), 2);
    }

    #[test]
    fn zero_tableau_prolongations_vanish() {
        let t = Tableau::from_generators(2, 2, vec![], 0, &caps()).unwrap();
        assert_eq!(prolonged(&t, 1).space.dim(), 0);
        assert_eq!(prolonged(&t, 2).space.dim(), 0);
    }

    #[test]
    fn cartan_test_on_involutive_examples() {
        assert_eq!(cartan_test(&heat_1d()), (true, 2, 2));
        assert_eq!(cartan_test(&heat_2d()), (true, 7, 7));
        assert_eq!(cartan_test(&full_tableau(2, 1)), (true, 3, 3));
    }

    #[test]
    fn cartan_test_detects_the_antidiagonal_defect() {
        assert_eq!(cartan_test(&antidiagonal()), (false, 0, 1));
    }

    #[test]
    fn spencer_cohomology_vanishes_for_heat_1d() {
        let report = spencer_h_dims(&heat_1d(), 3);
        assert_eq!(report.dims_a, vec![2, 2, 2, 2]);
        assert_eq!(report.dims_h, vec![0, 0]);
        assert!(report.involutive);
    }

    #[test]
    fn spencer_cohomology_vanishes_for_heat_2d() {
        let report = spencer_h_dims(&heat_2d(), 4);
        assert_eq!(report.dims_a, vec![5, 7, 9, 11, 13]);
        assert_eq!(report.dims_h, vec![0, 0, 0]);
        assert!(report.involutive);
    }

    #[test]
    fn spencer_cohomology_vanishes_for_the_zero_tableau() {
        let t = Tableau::from_generators(3, 2, vec![], 0, &caps()).unwrap();
        let report = spencer_h_dims(&t, 4);
        assert_eq!(report.dims_a, vec![0, 0, 0, 0, 0]);
        assert_eq!(report.dims_h, vec![0, 0, 0]);
        assert!(report.involutive);
    }

    #[test]
    fn spencer_cohomology_detects_the_antidiagonal_defect() {
        let report = spencer_h_dims(&antidiagonal(), 3);
        assert_eq!(report.dims_a, vec![1, 0, 0, 0]);
        assert_eq!(report.dims_h, vec![1, 0]);
        assert!(!report.involutive);
    }

    #[test]
    fn three_oracles_agree_on_the_small_examples() {
        for t in [heat_1d(), heat_2d(), full_tableau(2, 2), antidiagonal()] {
            let gnf = t.gnf_report().involutive;
            let (cartan, _, _) = cartan_test(&t);
            let spencer = spencer_h_dims(&t, t.n() + 1).involutive;
            assert_eq!(gnf, cartan);
            assert_eq!(cartan, spencer);
        }
    }

    #[test]
    fn restricted_skewing_with_full_directions_is_the_first_prolongation() {
        for t in [heat_1d(), full_tableau(2, 1)] {
            let e = delta_x_kernel(&t, &Subspace::full(t.n()));
            let a1 = prolonged(&t, 1).space;
            assert!(e.leq(&a1) && a1.leq(&e));
        }
    }

    #[test]
    fn restricted_skewing_on_one_variable_keeps_the_whole_tableau() {
        let t = heat_1d();
        let x = Subspace::span(2, &[vec_i(&[0, 1])]);
        let e = delta_x_kernel(&t, &x);
        assert_eq!(e.dim(), t.dim());
    }

    #[test]
    fn full_tableau_restricted_skewing_is_the_symmetric_square() {
        let t = full_tableau(2, 1);
        let e = delta_x_kernel(&t, &Subspace::full(2));
        assert_eq!(e.dim(), 3);
    }
}
