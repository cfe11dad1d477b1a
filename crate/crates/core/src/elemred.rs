//! Recursive elementary reduction: the flag of direction subspaces obtained
//! by repeatedly restricting a tableau to the annihilator of the span of its
//! characteristic variety, plus the containment checks for the restricted
//! prolongation and characteristic-variety chains.
//!
//! One step passes from `A` on `V` to `A|_{X¹}` on `X¹`, where `X¹` is the
//! annihilator of the span of the characteristic variety.  Iterating from
//! `X⁰ = V` yields a strictly decreasing flag `X⁰ ⊃ X¹ ⊃ …` that must stop
//! in one of three ways: the span fills the whole current space (the
//! restriction is Frobenius and the next space is zero), the restricted
//! tableau itself vanishes, or the span is empty and the flag stalls on a
//! nonzero space.  The number of strict drops is the elementary depth.  For
//! an involutive tableau the terminal space equals the retracting space of
//! the original tableau; this is asserted.
//!
//! Coordinates: every flag subspace is re-expressed in the original `V` of
//! the starting tableau, so consecutive steps are comparable; each
//! restricted tableau is rebuilt with a fresh seeded generic adaptation.

use num::Zero;
use serde::Serialize;

use crate::charvar::{
    basis_strings, classify, minors_ideal, span_accumulate, variety_span, CharData, FlagEntry,
    Report,
};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ideal::radical_membership;
use crate::mat::Mat;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::spencer::{delta_x_kernel, prolong_step, prolonged, spencer_h_dims, SpencerReport};
use crate::subspace::Subspace;
use crate::tableau::Tableau;

/// One stage of the reduction flag.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    /// Flag level `k`, starting at zero.
    pub level: usize,
    /// The direction subspace `X^k`, in the original `V` coordinates of the
    /// starting tableau.
    pub x: Subspace,
    /// The starting tableau restricted to `x`, with its own fresh generic
    /// adaptation.
    pub tableau: Tableau,
    /// Characteristic data of the restricted tableau; its `x_one` is
    /// expressed in `x`-basis coordinates.
    pub chardata: CharData,
}

/// Why the reduction flag stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminalReason {
    /// The span filled the whole direction space, so the next subspace is
    /// zero: the last restriction is Frobenius.
    SpanFullFrobenius,
    /// The restricted tableau vanished; every further restriction is the
    /// same zero tableau.
    TableauZero,
    /// The span was empty on a nonzero space, so the flag repeats itself.
    Stabilized,
}

impl std::fmt::Display for TerminalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TerminalReason::SpanFullFrobenius => "span-full-frobenius",
            TerminalReason::TableauZero => "tableau-zero",
            TerminalReason::Stabilized => "stabilized",
        };
        f.write_str(s)
    }
}

/// The full reduction flag `X⁰ ⊃ X¹ ⊃ … ⊃ Xᵉ`.
#[derive(Clone, Debug)]
pub struct ReductionFlag {
    /// One entry per flag level, starting with `X⁰ = V`.
    pub steps: Vec<ReductionStep>,
    /// The elementary depth: the number of strict drops in the flag.
    pub depth: usize,
    /// Why the iteration stopped.
    pub terminal_reason: TerminalReason,
}

/// Dimensions compared as evidence for the span-equality conjecture on the
/// characteristic varieties of the restricted-skewing kernel and of the
/// projected tableau.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanComparison {
    /// Dimension of the span of the characteristic variety of the
    /// restricted-skewing kernel `E`.
    pub restricted_span_dim: usize,
    /// Dimension of the span of the characteristic variety of the projected
    /// tableau `A|_X`.
    pub projected_span_dim: usize,
    /// Whether the two spans agree as subspaces.
    pub equal: bool,
}

/// Express `inner`, given in coordinates relative to the basis of `frame`,
/// as a subspace of `frame`'s ambient space.
fn embed(inner: &Subspace, frame: &Subspace) -> Subspace {
    assert_eq!(
        inner.ambient(),
        frame.dim(),
        "embedding expects frame-basis coordinates"
    );
    inner.map(&frame.basis().transpose())
}

/// The tensor product `space ⊗ (u-dimensional dual)`: every basis element
/// paired with every trailing dual slot, ambient `space.ambient() * u`.
fn tensor_with_dual(space: &Subspace, u: usize) -> Subspace {
    let m = space.ambient();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(space.dim() * u);
    for t in 0..space.dim() {
        for i in 0..u {
            let mut v = vec![Scalar::zero(); m * u];
            for q in 0..m {
                let b = space.basis().at(t, q);
                if !b.is_zero() {
                    v[q * u + i] = b.clone();
                }
            }
            rows.push(v);
        }
    }
    Subspace::span(m * u, &rows)
}

/// Project the trailing `slots` size-`n` tensor factors of `space` onto a
/// direction subspace `x` of dimension `u`, factor by factor from the last
/// inward.  The ambient shrinks from `pre·n^slots` to `pre·u^slots`.
fn restrict_trailing(space: &Subspace, n: usize, slots: usize, x: &Subspace) -> Subspace {
    let u = x.dim();
    let xb = x.basis();
    let mut cur = space.clone();
    let mut tail = 1usize;
    for _ in 0..slots {
        let m = cur.ambient();
        assert_eq!(m % (n * tail), 0, "tensor factor layout mismatch");
        let pre = m / (n * tail);
        let out_ambient = pre * u * tail;
        let rows: Vec<Vec<Scalar>> = (0..cur.dim())
            .map(|row| {
                let b = cur.basis().row(row);
                let mut out = vec![Scalar::zero(); out_ambient];
                for p in 0..pre {
                    for i in 0..u {
                        for s in 0..tail {
                            let mut acc = Scalar::zero();
                            for k in 0..n {
                                let v = &b[(p * n + k) * tail + s];
                                if !v.is_zero() {
                                    acc += v * xb.at(i, k);
                                }
                            }
                            out[(p * u + i) * tail + s] = acc;
                        }
                    }
                }
                out
            })
            .collect();
        cur = Subspace::span(out_ambient, &rows);
        tail *= u;
    }
    cur
}

/// Rewrite `space ⊆ value ⊗ (u-dimensional dual)` in coordinates relative
/// to the basis of `value`: ambient `value.dim() * u`.  Every trailing
/// slice of every basis element must lie in `value`.
fn in_value_coords(space: &Subspace, value: &Subspace) -> Subspace {
    let e = value.dim();
    if e == 0 {
        assert!(space.is_zero(), "slices must lie in the value space");
        return Subspace::zero(0);
    }
    let m = value.ambient();
    assert_eq!(space.ambient() % m, 0, "value factor layout mismatch");
    let u = space.ambient() / m;
    let columns = Mat::from_fn(m, e, |q, t| value.basis().at(t, q).clone());
    let rows: Vec<Vec<Scalar>> = (0..space.dim())
        .map(|row| {
            let b = space.basis().row(row);
            let mut out = vec![Scalar::zero(); e * u];
            for i in 0..u {
                let slice: Vec<Scalar> = (0..m).map(|q| b[q * u + i].clone()).collect();
                let c = columns
                    .solve(&slice)
                    .expect("slices must lie in the value space");
                for (t, ct) in c.into_iter().enumerate() {
                    out[t * u + i] = ct;
                }
            }
            out
        })
        .collect();
    Subspace::span(e * u, &rows)
}

/// The ideal in `u` covector variables cutting out the covectors `xi` for
/// which some nonzero element `w` of the value space has `w ⊗ xi` inside
/// `space ⊆ value ⊗ (u-dimensional dual)` (given in value coordinates):
/// the maximal minors of the annihilator contraction matrix.
fn rank_one_ideal(
    space: &Subspace,
    value_dim: usize,
    u: usize,
    caps: &Caps,
) -> Result<Vec<Poly>> {
    assert_eq!(space.ambient(), value_dim * u, "value coordinate mismatch");
    let ann = space.annihilator();
    let m: Vec<Vec<Poly>> = (0..ann.dim())
        .map(|row| {
            (0..value_dim)
                .map(|a| {
                    let coeffs: Vec<Scalar> = (0..u)
                        .map(|alpha| ann.basis().at(row, a * u + alpha).clone())
                        .collect();
                    Poly::from_linear(Scalar::zero(), &coeffs)
                })
                .collect()
        })
        .collect();
    minors_ideal(&m, value_dim, u, caps)
}

/// The ideal in `u` covector variables cutting out the covectors `xi` for
/// which some nonzero tableau element, projected to the direction space,
/// is annihilated by skewing against `xi`: the maximal minors of the
/// skewing matrix with one column per tableau basis element and one row
/// per value row and index pair.
fn restricted_prolongation_ideal(t: &Tableau, x: &Subspace, caps: &Caps) -> Result<Vec<Poly>> {
    let n = t.n();
    let r = t.r();
    let u = x.dim();
    let d = t.dim();
    let a_space = t.span_original();
    let ab = a_space.basis();
    let xb = x.basis();
    // projected[t][a*u + i] = sum_k basis_t[(a,k)] * x_i[k]
    let projected: Vec<Vec<Scalar>> = (0..d)
        .map(|t| {
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
        })
        .collect();
    let mut m: Vec<Vec<Poly>> = Vec::new();
    for a in 0..r {
        for i in 0..u {
            for j in i + 1..u {
                let row: Vec<Poly> = (0..d)
                    .map(|t| {
                        let mut coeffs = vec![Scalar::zero(); u];
                        coeffs[j] = projected[t][a * u + i].clone();
                        coeffs[i] = -projected[t][a * u + j].clone();
                        Poly::from_linear(Scalar::zero(), &coeffs)
                    })
                    .collect();
                m.push(row);
            }
        }
    }
    minors_ideal(&m, d, u, caps)
}

/// Whether the variety of `inner` is contained in the variety of `outer`:
/// every generator of `outer` must lie in the radical of `inner`.
fn variety_contained(inner: &[Poly], outer: &[Poly]) -> bool {
    outer.iter().all(|g| radical_membership(inner, g))
}

/// One elementary reduction step: the annihilator `X¹` of the span of the
/// characteristic variety, and the restriction of the tableau to it.  A
/// Frobenius tableau returns `X¹ = V` and an unchanged (possibly zero)
/// tableau; a tableau whose span fills `V*` returns `X¹ = 0` and the empty
/// tableau.
pub fn elem_step(t: &Tableau, seed: u64, caps: &Caps) -> Result<(Subspace, Tableau)> {
    let data = variety_span(t, seed, caps)?;
    let reduced = t.restrict(&data.x_one, seed, caps)?;
    Ok((data.x_one, reduced))
}

/// The full reduction flag, iterating [`elem_step`]-style restrictions of
/// the original tableau until the span fills the space, the restricted
/// tableau vanishes, or the flag stabilizes.  For a tableau that passes the
/// normal-form involutivity test, the terminal space is asserted to equal
/// the retracting space.
pub fn elem_flag(t: &Tableau, seed: u64, caps: &Caps) -> Result<ReductionFlag> {
    let n = t.n();
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut cur = t.clone();
    let mut cur_x = Subspace::full(n);
    let attach_partial = |e: Error, level: usize, steps: &[ReductionStep]| match e {
        Error::Unstable { rounds } => Error::UnstableFlag {
            level,
            rounds,
            partial_dims: steps.iter().map(|s| s.x.dim()).collect(),
        },
        other => other,
    };
    let terminal_reason = loop {
        let level = steps.len();
        assert!(level <= n, "flag levels exceeded the ambient dimension");
        let chardata =
            variety_span(&cur, seed, caps).map_err(|e| attach_partial(e, level, &steps))?;
        let x_next = embed(&chardata.x_one, &cur_x);
        steps.push(ReductionStep {
            level,
            x: cur_x.clone(),
            tableau: cur.clone(),
            chardata,
        });
        if cur.dim() == 0 {
            break TerminalReason::TableauZero;
        }
        if !x_next.leq(&cur_x) {
            return Err(Error::NonmonotoneFlag { level });
        }
        if x_next.dim() == cur_x.dim() {
            break TerminalReason::Stabilized;
        }
        if x_next.is_zero() {
            let bottom = t.restrict(&x_next, seed, caps)?;
            let bottom_data = variety_span(&bottom, seed, caps)
                .map_err(|e| attach_partial(e, level + 1, &steps))?;
            steps.push(ReductionStep {
                level: level + 1,
                x: x_next,
                tableau: bottom,
                chardata: bottom_data,
            });
            break TerminalReason::SpanFullFrobenius;
        }
        cur = t.restrict(&x_next, seed, caps)?;
        cur_x = x_next;
    };
    let depth = steps.len() - 1;
    let flag = ReductionFlag {
        steps,
        depth,
        terminal_reason,
    };
    if t.gnf_report().involutive {
        let terminal = &flag.steps.last().expect("flag has at least one step").x;
        assert_eq!(
            *terminal,
            t.cauchy_space(),
            "terminal flag space must equal the retracting space"
        );
    }
    Ok(flag)
}

impl ReductionFlag {
    /// The flag subspace dimensions, one per level.
    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.x.dim()).collect()
    }

    /// The terminal subspace `Xᵉ` in original coordinates.
    pub fn terminal(&self) -> &Subspace {
        &self.steps.last().expect("flag has at least one step").x
    }

    /// Serializable per-level summaries for the classification report.
    pub fn entries(&self) -> Vec<FlagEntry> {
        self.steps
            .iter()
            .map(|s| FlagEntry {
                level: s.level,
                dim: s.x.dim(),
                basis: basis_strings(&s.x),
                characters: s.tableau.characters().to_vec(),
                ell: s.chardata.ell,
                big_l: s.chardata.big_l,
            })
            .collect()
    }

    /// Spencer cohomology of every nonempty stage, as evidence about the
    /// involutivity of the restricted tableaux.  The requested order is
    /// clamped into each stage's admissible range; stages on a
    /// zero-dimensional direction space are skipped.
    pub fn spencer_evidence(&self, rho_max: usize) -> Vec<(usize, SpencerReport)> {
        self.steps
            .iter()
            .filter(|s| s.tableau.n() > 0)
            .map(|s| {
                let order = rho_max.clamp(2, s.tableau.n() + 1);
                (s.level, spencer_h_dims(&s.tableau, order))
            })
            .collect()
    }
}

/// The classification report together with the reduction flag, the flag
/// also serialized into the report.
pub fn classify_with_flag(t: &Tableau, seed: u64, caps: &Caps) -> Result<(Report, ReductionFlag)> {
    let mut report = classify(t, seed, caps)?;
    let flag = elem_flag(t, seed, caps)?;
    report.flag = Some(flag.entries());
    Ok((report, flag))
}

/// Verify, for `rho = 0..=rho_max`, the two containments of the restricted
/// prolongation chain: the full prolongation projected onto the direction
/// space sits inside the iterated prolongation of the restricted-skewing
/// kernel, which sits inside the space with symmetry imposed only on the
/// trailing direction slots.
pub fn check_dxe(t: &Tableau, x: &Subspace, rho_max: usize) -> bool {
    assert_eq!(x.ambient(), t.n(), "direction space must live in V");
    if x.is_zero() {
        return true;
    }
    let u = x.dim();
    let mut e = delta_x_kernel(t, x);
    let mut symmetric_only = tensor_with_dual(&t.span_original(), u);
    for rho in 0..=rho_max {
        let projected = restrict_trailing(&prolonged(t, rho + 1).space, t.n(), rho + 1, x);
        if !(projected.leq(&e) && e.leq(&symmetric_only)) {
            return false;
        }
        if rho < rho_max {
            e = prolong_step(&e, u);
            symmetric_only = prolong_step(&symmetric_only, u);
        }
    }
    true
}

/// Verify the characteristic-variety containment chain for the
/// restricted-skewing kernel `E`: the variety of `E`'s prolongation sits in
/// the variety of `E`, which sits in the variety of the projected
/// tableau's prolongation (taken with the whole tableau as value space),
/// which sits in the variety of the projected tableau itself.  Every
/// containment is checked by radical membership of the generators.
pub fn check_elemchar(t: &Tableau, x: &Subspace, caps: &Caps) -> Result<bool> {
    assert_eq!(x.ambient(), t.n(), "direction space must live in V");
    if x.is_zero() || t.dim() == 0 {
        return Ok(true);
    }
    let u = x.dim();
    let d = t.dim();
    let a_space = t.span_original();
    let e_c = in_value_coords(&delta_x_kernel(t, x), &a_space);
    let ideal_e = rank_one_ideal(&e_c, d, u, caps)?;
    let e_prolonged = in_value_coords(&prolong_step(&e_c, u), &e_c);
    let ideal_e_prolonged = rank_one_ideal(&e_prolonged, e_c.dim(), u, caps)?;
    let projected = restrict_trailing(&a_space, t.n(), 1, x);
    let ideal_projected = rank_one_ideal(&projected, t.r(), u, caps)?;
    let ideal_projected_prolonged = restricted_prolongation_ideal(t, x, caps)?;
    Ok(variety_contained(&ideal_e_prolonged, &ideal_e)
        && variety_contained(&ideal_e, &ideal_projected_prolonged)
        && variety_contained(&ideal_projected_prolonged, &ideal_projected))
}

/// Compare the spans of the characteristic varieties of the
/// restricted-skewing kernel and of the projected tableau, as evidence for
/// the conjectured span equality.  No verdict is attached: the result
/// records both dimensions and whether the spans agree.
pub fn span_conjecture_evidence(
    t: &Tableau,
    x: &Subspace,
    seed: u64,
    caps: &Caps,
) -> Result<SpanComparison> {
    assert_eq!(x.ambient(), t.n(), "direction space must live in V");
    if x.is_zero() {
        return Ok(SpanComparison {
            restricted_span_dim: 0,
            projected_span_dim: 0,
            equal: true,
        });
    }
    let u = x.dim();
    let d = t.dim();
    let a_space = t.span_original();
    let e_c = in_value_coords(&delta_x_kernel(t, x), &a_space);
    let ideal_e = rank_one_ideal(&e_c, d, u, caps)?;
    let projected = restrict_trailing(&a_space, t.n(), 1, x);
    let ideal_projected = rank_one_ideal(&projected, t.r(), u, caps)?;
    let restricted = span_accumulate(&ideal_e, u, seed, caps)?;
    let proj = span_accumulate(&ideal_projected, u, seed, caps)?;
    Ok(SpanComparison {
        restricted_span_dim: restricted.span.dim(),
        projected_span_dim: proj.span.dim(),
        equal: restricted.span == proj.span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, FixtureParams};
    use crate::mat;
    use crate::scalar::int;

    fn caps() -> Caps {
        Caps::default()
    }

    fn zero_tableau() -> Tableau {
        Tableau::from_generators(2, 2, vec![], 0, &caps()).unwrap()
    }

    fn full_tableau() -> Tableau {
        Tableau::from_generators(
            2,
            2,
            vec![
                mat![[1, 0], [0, 0]],
                mat![[0, 1], [0, 0]],
                mat![[0, 0], [1, 0]],
                mat![[0, 0], [0, 1]],
            ],
            0,
            &caps(),
        )
        .unwrap()
    }

    /// Span of the identity matrix: its characteristic variety is empty, so
    /// the reduction flag stalls on the full space at once.
    fn scalar_tableau() -> Tableau {
        Tableau::from_generators(2, 2, vec![mat![[1, 0], [0, 1]]], 0, &caps()).unwrap()
    }

    fn x_one_of(t: &Tableau) -> Subspace {
        variety_span(t, 0, &caps()).unwrap().x_one
    }

    #[test]
    fn elem_step_of_the_heat_tableau_restricts_to_a_line() {
        let t = fixtures::heat_1d();
        let (x1, reduced) = elem_step(&t, 0, &caps()).unwrap();
        assert_eq!(x1, Subspace::span(2, &[vec![int(0), int(1)]]));
        assert_eq!(reduced.n(), 1);
        assert_eq!(reduced.characters(), &[1]);
    }

    #[test]
    fn elem_step_of_the_plane_heat_tableau_collapses_completely() {
        let (x1, reduced) = elem_step(&fixtures::heat_2d(), 0, &caps()).unwrap();
        assert!(x1.is_zero());
        assert_eq!(reduced.n(), 0);
        assert_eq!(reduced.dim(), 0);
    }

    #[test]
    fn elem_step_of_the_zero_tableau_keeps_the_whole_space() {
        let (x1, reduced) = elem_step(&zero_tableau(), 0, &caps()).unwrap();
        assert!(x1.is_full());
        assert_eq!(reduced.n(), 2);
        assert_eq!(reduced.dim(), 0);
    }

    #[test]
    fn heat_flag_descends_through_a_line_to_zero() {
        let flag = elem_flag(&fixtures::heat_1d(), 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![2, 1, 0]);
        assert_eq!(flag.depth, 2);
        assert_eq!(flag.terminal_reason, TerminalReason::SpanFullFrobenius);
        let entries = flag.entries();
        let levels: Vec<usize> = entries.iter().map(|e| e.level).collect();
        assert_eq!(levels, vec![0, 1, 2]);
        assert_eq!(entries[0].characters, vec![2, 0]);
        assert_eq!(entries[1].characters, vec![1]);
        assert!(entries[2].characters.is_empty());
        let ells: Vec<usize> = entries.iter().map(|e| e.ell).collect();
        assert_eq!(ells, vec![1, 1, 0]);
        let big_ls: Vec<usize> = entries.iter().map(|e| e.big_l).collect();
        assert_eq!(big_ls, vec![1, 1, 0]);
        assert_eq!(entries[1].basis, vec![vec!["0".to_string(), "1".to_string()]]);
    }

    #[test]
    fn zero_tableau_flag_stops_immediately_on_the_full_space() {
        let flag = elem_flag(&zero_tableau(), 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![2]);
        assert_eq!(flag.depth, 0);
        assert_eq!(flag.terminal_reason, TerminalReason::TableauZero);
        assert!(flag.terminal().is_full());
    }

    #[test]
    fn padded_heat_flag_terminates_on_the_unused_direction() {
        let flag = elem_flag(&fixtures::heat_1d_padded(), 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![3, 2, 1]);
        assert_eq!(flag.depth, 2);
        assert_eq!(flag.terminal_reason, TerminalReason::TableauZero);
        assert_eq!(*flag.terminal(), fixtures::third_direction());
    }

    #[test]
    fn plane_heat_flag_is_a_single_frobenius_drop() {
        let flag = elem_flag(&fixtures::heat_2d(), 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![3, 0]);
        assert_eq!(flag.depth, 1);
        assert_eq!(flag.terminal_reason, TerminalReason::SpanFullFrobenius);
    }

    #[test]
    fn five_variable_family_flag_has_depth_two() {
        let t = fixtures::artificial_355(&FixtureParams::default()).unwrap();
        let flag = elem_flag(&t, 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![5, 1, 0]);
        assert_eq!(flag.depth, 2);
        assert_eq!(flag.terminal_reason, TerminalReason::SpanFullFrobenius);
        let big_ls: Vec<usize> = flag.entries().iter().map(|e| e.big_l).collect();
        assert_eq!(big_ls, vec![4, 1, 0]);
    }

    #[test]
    fn empty_variety_flag_stabilizes_on_the_whole_space() {
        let flag = elem_flag(&scalar_tableau(), 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![2]);
        assert_eq!(flag.depth, 0);
        assert_eq!(flag.terminal_reason, TerminalReason::Stabilized);
        assert!(flag.terminal().is_full());
    }

    #[test]
    fn prolongation_containments_hold_for_the_heat_tableau() {
        let t = fixtures::heat_1d();
        let x1 = Subspace::span(2, &[vec![int(0), int(1)]]);
        assert!(check_dxe(&t, &x1, 1));
        assert!(check_dxe(&t, &Subspace::full(2), 1));
    }

    #[test]
    fn prolongation_containments_hold_for_the_full_and_zero_tableaux() {
        assert!(check_dxe(&full_tableau(), &Subspace::full(2), 1));
        assert!(check_dxe(&zero_tableau(), &Subspace::full(2), 1));
    }

    #[test]
    fn prolongation_containments_hold_for_the_padded_heat_tableau() {
        let t = fixtures::heat_1d_padded();
        let x1 = x_one_of(&t);
        assert_eq!(x1.dim(), 2);
        assert!(check_dxe(&t, &x1, 1));
    }

    #[test]
    fn prolongation_containments_hold_for_the_five_variable_family() {
        let t = fixtures::artificial_355(&FixtureParams::default()).unwrap();
        let x1 = x_one_of(&t);
        assert_eq!(x1.dim(), 1);
        assert!(check_dxe(&t, &x1, 1));
    }

    #[test]
    fn characteristic_chain_holds_for_the_heat_tableau() {
        let t = fixtures::heat_1d();
        let x1 = Subspace::span(2, &[vec![int(0), int(1)]]);
        assert!(check_elemchar(&t, &x1, &caps()).unwrap());
    }

    #[test]
    fn characteristic_chain_holds_for_the_full_tableau_on_the_whole_space() {
        assert!(check_elemchar(&full_tableau(), &Subspace::full(2), &caps()).unwrap());
    }

    #[test]
    fn characteristic_chain_holds_for_the_five_variable_family() {
        let t = fixtures::artificial_355(&FixtureParams::default()).unwrap();
        assert!(check_elemchar(&t, &x_one_of(&t), &caps()).unwrap());
    }

    #[test]
    fn characteristic_chain_detects_the_projection_kernel_gap() {
        // The padded heat tableau restricts onto its active plane with a
        // nonzero kernel.  The kernel contributes a zero column to the
        // skewing matrix, making the skewed-restriction variety the whole
        // space while the projected tableau's variety stays a proper line,
        // so the final containment of the chain genuinely fails.
        let t = fixtures::heat_1d_padded();
        let x1 = x_one_of(&t);
        assert_eq!(x1.dim(), 2);
        assert!(!check_elemchar(&t, &x1, &caps()).unwrap());
    }

    #[test]
    fn span_evidence_agrees_for_the_five_variable_family() {
        let t = fixtures::artificial_355(&FixtureParams::default()).unwrap();
        let cmp = span_conjecture_evidence(&t, &x_one_of(&t), 0, &caps()).unwrap();
        assert_eq!(
            cmp,
            SpanComparison {
                restricted_span_dim: 1,
                projected_span_dim: 1,
                equal: true,
            }
        );
    }

    #[test]
    fn span_evidence_records_the_kernel_gap_of_the_padded_heat_tableau() {
        let t = fixtures::heat_1d_padded();
        let cmp = span_conjecture_evidence(&t, &x_one_of(&t), 0, &caps()).unwrap();
        assert_eq!(
            cmp,
            SpanComparison {
                restricted_span_dim: 2,
                projected_span_dim: 1,
                equal: false,
            }
        );
    }

    #[test]
    fn classification_report_embeds_the_flag() {
        let (report, flag) = classify_with_flag(&fixtures::heat_1d(), 0, &caps()).unwrap();
        assert_eq!(flag.dims(), vec![2, 1, 0]);
        let json = report.to_json();
        assert!(json.contains("\"flag\""));
        assert!(json.contains("\"L\""));
    }

    #[test]
    fn spencer_evidence_covers_every_nonempty_stage() {
        let flag = elem_flag(&fixtures::heat_1d(), 0, &caps()).unwrap();
        let evidence = flag.spencer_evidence(3);
        let levels: Vec<usize> = evidence.iter().map(|(level, _)| *level).collect();
        assert_eq!(levels, vec![0, 1]);
        assert!(evidence.iter().all(|(_, report)| report.involutive));
    }
}
