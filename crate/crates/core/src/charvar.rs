//! Characteristic ideal, the span of the characteristic variety, and the
//! classification report.
//!
//! The characteristic variety is the cone of covectors whose symbol map has
//! nontrivial kernel; it is cut out by the maximal minors of the symbol
//! matrix. Its *linear span* is computed at the reduced-variety level: the
//! homogeneous minors ideal is saturated, sliced down to dimension zero by
//! seeded random affine charts and linear cuts, made radical, and the linear
//! span of each finite point set is accumulated until the result is stable.
//! Working with the reduced variety is deliberate: the minors ideal can be
//! non-reduced (the 1-d heat tableau gives the ideal `(x2^2)`, whose
//! degree-one part is zero even though the variety is a single line), so the
//! slicing sees exactly the points and not their multiplicities.
//!
//! Coordinates: the ideal and the span live in the adapted `xi`
//! coordinates of the tableau's generic basis; the perpendicular space
//! `x_one` is returned in original coordinates, because its consumers
//! (restriction, the reduction flag) operate on the original tableau.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::Zero;
use rand::Rng;
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ideal::{
    ideal_dimension, linear_part, quotient_basis, radical_membership, saturate,
    saturate_irrelevant, zero_dim_radical,
};
use crate::mat::Mat;
use crate::par;
use crate::poly::{MonomialOrder, Poly};
use crate::rng::subrng;
use crate::scalar::{int, Scalar};
use crate::spencer::{binom, subsets};
use crate::subspace::Subspace;
use crate::tableau::Tableau;

const TAG_SLICE: u64 = 0x73_6c_69_63;
const TAG_PEEL: u64 = 0x70_65_65_6c;
const TAG_NILP: u64 = 0x6e_69_6c_70;

/// The symbol matrix of `t`: one row per dependent slot `(k, a)`, one
/// column per `W`-coordinate `b`, with entries linear in the adapted
/// covector coordinates `xi`.
///
/// A covector `xi` is characteristic exactly when some nonzero `w` solves
/// every row, i.e. when `w ⊗ xi` satisfies all tableau relations.
pub fn symbol_matrix(t: &Tableau) -> Vec<Vec<Poly>> {
    let n = t.n();
    let r = t.r();
    t.relations()
        .into_iter()
        .map(|(k, a)| {
            (0..r)
                .map(|b| {
                    let mut p = Poly::zero(n);
                    if a == b {
                        p = p.add(&Poly::var(n, k));
                    }
                    for lambda in 0..k {
                        let c = t.coeff(a, lambda, k, b);
                        if !c.is_zero() {
                            p = p.sub(&Poly::var(n, lambda).scale(&c));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// Determinant of the submatrix on `rows x cols` by Laplace expansion
/// along the first listed row, with subresults shared across calls.
fn minor_det(
    m: &[Vec<Poly>],
    rows: &[usize],
    cols: &[usize],
    memo: &mut BTreeMap<(Vec<usize>, Vec<usize>), Poly>,
) -> Poly {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let key = (rows.to_vec(), cols.to_vec());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let nvars = m[0][0].nvars();
    let mut acc = Poly::zero(nvars);
    let sub_rows: Vec<usize> = rows[1..].to_vec();
    for (j, &col) in cols.iter().enumerate() {
        let entry = &m[rows[0]][col];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|&(jj, _)| jj != j)
            .map(|(_, &c)| c)
            .collect();
        let sub = minor_det(m, &sub_rows, &sub_cols, memo);
        if sub.is_zero() {
            continue;
        }
        let term = entry.mul(&sub);
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    memo.insert(key, acc.clone());
    acc
}

/// All `size x size` minors of a polynomial matrix with exactly `size`
/// columns, made monic and deduplicated. Fewer rows than `size` means no
/// maximal minor exists, so the zero ideal (empty generator list) is
/// returned: every point satisfies the rank deficiency. A zero `size`
/// yields the unit ideal — the empty minor is 1, the rank can never fall
/// below zero, and the variety is empty.
pub(crate) fn minors_ideal(
    m: &[Vec<Poly>],
    size: usize,
    nvars: usize,
    caps: &Caps,
) -> Result<Vec<Poly>> {
    if size == 0 {
        return Ok(vec![Poly::one(nvars)]);
    }
    if m.len() < size {
        return Ok(Vec::new());
    }
    let count = binom(m.len(), size);
    if count > caps.max_minors {
        return Err(Error::MinorExplosion {
            count,
            cap: caps.max_minors,
        });
    }
    let cols: Vec<usize> = (0..size).collect();
    let mut memo = BTreeMap::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut gens: Vec<Poly> = Vec::new();
    for rows in subsets(m.len(), size) {
        let d = minor_det(&m, &rows, &cols, &mut memo);
        if d.is_zero() {
            continue;
        }
        let d = d.monic(MonomialOrder::GrevLex);
        if seen.insert(d.to_string()) {
            gens.push(d);
        }
    }
    Ok(gens)
}

/// The characteristic ideal: all `r x r` minors of the symbol matrix,
/// made monic and deduplicated. Fewer relation rows than `r` means no
/// maximal minor exists and every covector is characteristic, so the zero
/// ideal (empty generator list) is returned.
pub fn char_ideal(t: &Tableau, caps: &Caps) -> Result<Vec<Poly>> {
    minors_ideal(&symbol_matrix(t), t.r(), t.n(), caps)
}

/// Affine dimension of a homogeneous ideal's cone, clamped at zero.
fn cone_dimension(gens: &[Poly], n: usize) -> usize {
    let d = ideal_dimension(gens, n);
    debug_assert!(d >= 0, "a homogeneous ideal is never the unit ideal");
    d.max(0) as usize
}

/// The dimension `ell` of the characteristic cone (projective dimension
/// plus one; zero when the only solution is the origin).
pub fn char_dimension(t: &Tableau, caps: &Caps) -> Result<usize> {
    Ok(cone_dimension(&char_ideal(t, caps)?, t.n()))
}

/// One random slice attempt in the span accumulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceRecord {
    pub round: usize,
    pub codim: usize,
    pub trial: usize,
    /// Distinct points cut out; `None` when the slice was skipped because
    /// it was not zero-dimensional.
    pub points: Option<usize>,
    /// Dimension of the accumulated span after joining this slice.
    pub span_dim_after: usize,
}

/// Characteristic data of a tableau: ideal, cone dimension, the linear
/// span of the variety, and its perpendicular space.
#[derive(Clone, Debug)]
pub struct CharData {
    /// Monic generators of the minors ideal, adapted coordinates.
    pub ideal: Vec<Poly>,
    /// Affine dimension of the characteristic cone.
    pub ell: usize,
    /// Linear span of the characteristic variety, a subspace of `V*` in
    /// adapted coordinates.
    pub span: Subspace,
    /// Annihilator of the span, a subspace of `V` in original coordinates.
    pub x_one: Subspace,
    /// Dimension of the span.
    pub big_l: usize,
    /// Point count of the first successful top-dimensional slice — the
    /// degree of the reduced variety as observed, multiplicities ignored.
    pub observed_degree: Option<usize>,
    /// Every slice attempt, in evaluation order.
    pub slice_log: Vec<SliceRecord>,
    /// Number of accumulation rounds actually run.
    pub rounds: usize,
}

/// A nonzero linear form with small random integer coefficients.
fn random_linear<R: Rng>(rng: &mut R, n: usize, constant: i64) -> Poly {
    loop {
        let coeffs: Vec<Scalar> = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return Poly::from_linear(int(constant), &coeffs);
        }
    }
}

/// A nonzero linear form whose coefficient vector is a random small
/// integer combination of basis rows of the given covector space.
fn random_form_in<R: Rng>(rng: &mut R, space: &Subspace) -> Poly {
    let n = space.ambient();
    assert!(space.dim() > 0, "cannot draw a form from the zero space");
    loop {
        let mut coeffs = vec![int(0); n];
        for i in 0..space.dim() {
            let c = int(rng.gen_range(-3..=3));
            if c.is_zero() {
                continue;
            }
            for (slot, e) in coeffs.iter_mut().zip(space.basis().row(i)) {
                *slot = &*slot + &(&c * e);
            }
        }
        if coeffs.iter().any(|c| !c.is_zero()) {
            return Poly::from_linear(int(0), &coeffs);
        }
    }
}

/// Cut the saturated cone down to points with one random affine chart and
/// `codim` random linear cuts; returns the linear span of the rays through
/// the resulting points together with the point count, or `None` when the
/// slice is not zero-dimensional.
fn slice_once<R: Rng>(sat: &[Poly], n: usize, codim: usize, rng: &mut R) -> Option<(Subspace, usize)> {
    let mut j: Vec<Poly> = sat.to_vec();
    j.push(random_linear(rng, n, -1));
    for _ in 0..codim {
        j.push(random_linear(rng, n, 0));
    }
    if ideal_dimension(&j, n) != 0 {
        return None;
    }
    let rad = zero_dim_radical(&j, n).ok()?;
    let count = quotient_basis(&rad, MonomialOrder::GrevLex, n).ok()?.len();
    // The chart equation makes the homogenization of every affine-linear
    // element of the radical available, so its homogeneous linear part cuts
    // out exactly the span of the rays through the sliced points.
    let forms = linear_part(&rad, n);
    Some((forms.annihilator(), count))
}

/// Outcome of the span accumulation on a homogeneous ideal.
pub(crate) struct SpanAccumulation {
    pub span: Subspace,
    pub ell: usize,
    pub observed_degree: Option<usize>,
    pub slice_log: Vec<SliceRecord>,
    pub rounds: usize,
}

/// Accumulate the linear span of a homogeneous ideal's variety by repeated
/// zero-dimensional slicing with component peeling.
///
/// Per round, every codimension `0..n` is tried `trials_per_cut` times with
/// independently seeded randomness; contributions are joined in a fixed
/// order, so the result is deterministic for a given seed regardless of
/// evaluation order. A slice is only usable when it is zero-dimensional,
/// and for a non-equidimensional variety the top-dimensional components
/// shadow the lower ones: the codimension that would cut a small component
/// down to points leaves the big ones positive-dimensional, while enough
/// cuts to finish the big ones have already emptied the small component.
/// So once the span is nonzero, each round slices the ideal saturated by a
/// random linear form vanishing on the span: a component lies in the zero
/// set of a generic such form exactly when its own span is already
/// accumulated, so saturation peels off precisely the covered components
/// and exposes what remains. Saturation never adds points, so every
/// contribution is still genuine.
///
/// Only an exact certificate ends the loop, so the accumulated span never
/// depends on the seed: either the span reaches the upper bound forced by
/// the linear part of the saturated ideal, or every linear form vanishing
/// on the accumulated span is verified to lie in the radical of the
/// saturated ideal (Nullstellensatz: the variety is then contained in the
/// span, which therefore is the whole span). Rounds that add nothing and
/// fail the certificate are retried with fresh randomness; `stable_rounds`
/// consecutive such rounds, or `max_rounds` in total, raise `Unstable`
/// rather than returning an underestimate. In particular peeling leaving
/// the unit ideal is treated as a stagnant round, not as proof of
/// completeness — the randomly drawn peeling form can vanish on an
/// uncovered component.
pub(crate) fn span_accumulate(
    ideal: &[Poly],
    n: usize,
    seed: u64,
    caps: &Caps,
) -> Result<SpanAccumulation> {
    let ell = cone_dimension(ideal, n);
    let sat = saturate_irrelevant(ideal, n)?;
    // Linear forms in the saturated ideal vanish on the whole variety, so
    // as vectors of `V` they lie in the perpendicular space: the span can
    // never grow past their annihilator.
    let bound = linear_part(&sat, n).annihilator();
    // Exact completeness certificate: the variety lies inside `acc` exactly
    // when every linear form vanishing on `acc` is in the radical of the
    // saturated ideal. Combined with `acc` only ever growing by spans of
    // genuine points, a passing certificate means `acc` *is* the span — a
    // conclusion no random choice can influence.
    let covers_variety = |acc: &Subspace| -> bool {
        let perp = acc.annihilator();
        (0..perp.dim()).all(|i| {
            let form = Poly::from_linear(Scalar::zero(), perp.basis().row(i));
            radical_membership(&sat, &form)
        })
    };
    let mut acc = Subspace::zero(n);
    let mut slice_log: Vec<SliceRecord> = Vec::new();
    let mut observed_degree: Option<usize> = None;
    let mut rounds = 0;
    let mut stagnant = 0;
    let mut stabilized = acc == bound;
    while !stabilized && rounds < caps.max_rounds {
        let round = rounds;
        let before = acc.dim();
        let work: Vec<Poly> = if acc.dim() == 0 {
            sat.clone()
        } else {
            let mut rng = subrng(seed, &[TAG_PEEL, round as u64]);
            let peel = random_form_in(&mut rng, &acc.annihilator());
            saturate(&sat, &peel)
        };
        // Peeling can leave the unit ideal; only the certificate below may
        // conclude completeness from that, because the randomly drawn
        // peeling form can vanish on components not yet covered.
        if ideal_dimension(&work, n) >= 0 {
            let jobs: Vec<(usize, usize)> = (0..n)
                .flat_map(|c| (0..caps.trials_per_cut).map(move |trial| (c, trial)))
                .collect();
            let results: Vec<Option<(Subspace, usize)>> = par::map_slice(&jobs, |&(c, trial)| {
                let mut rng = subrng(seed, &[TAG_SLICE, round as u64, c as u64, trial as u64]);
                slice_once(&work, n, c, &mut rng)
            });
            for (&(c, trial), res) in jobs.iter().zip(results) {
                let points = match res {
                    Some((contribution, count)) => {
                        acc = acc.join(&contribution);
                        if count > 0 && c + 1 == ell && observed_degree.is_none() {
                            observed_degree = Some(count);
                        }
                        Some(count)
                    }
                    None => None,
                };
                slice_log.push(SliceRecord {
                    round,
                    codim: c,
                    trial,
                    points,
                    span_dim_after: acc.dim(),
                });
            }
        }
        rounds += 1;
        if acc == bound {
            stabilized = true;
        } else if acc.dim() == before {
            stagnant += 1;
            if covers_variety(&acc) {
                stabilized = true;
            } else if stagnant >= caps.stable_rounds {
                return Err(Error::Unstable { rounds });
            }
        } else {
            stagnant = 0;
        }
    }
    if !stabilized {
        return Err(Error::Unstable { rounds });
    }
    Ok(SpanAccumulation {
        span: acc,
        ell,
        observed_degree,
        slice_log,
        rounds,
    })
}

/// Characteristic data of a tableau: the minors ideal, the accumulated
/// span of its variety (adapted coordinates), and the perpendicular
/// space in original coordinates. See `span_accumulate` for the
/// slicing-with-peeling strategy and its stopping rules.
pub fn variety_span(t: &Tableau, seed: u64, caps: &Caps) -> Result<CharData> {
    let n = t.n();
    let ideal = char_ideal(t, caps)?;
    let accum = span_accumulate(&ideal, n, seed, caps)?;
    let perp_adapted = accum.span.annihilator();
    let x_rows: Vec<Vec<Scalar>> = (0..perp_adapted.dim())
        .map(|i| t.v_to_original(perp_adapted.basis().row(i)))
        .collect();
    let x_one = Subspace::span(n, &x_rows);
    let big_l = accum.span.dim();
    debug_assert_eq!(x_one.dim(), n - big_l);
    Ok(CharData {
        ideal,
        ell: accum.ell,
        span: accum.span,
        x_one,
        big_l,
        observed_degree: accum.observed_degree,
        slice_log: accum.slice_log,
        rounds: accum.rounds,
    })
}

/// Kernel of the symbol matrix evaluated at a rational covector in
/// adapted coordinates: the vectors `w` with `w ⊗ xi` in the tableau.
pub fn symbol_kernel_at(t: &Tableau, xi: &[Scalar]) -> Subspace {
    assert_eq!(xi.len(), t.n(), "covector length mismatch");
    let m = symbol_matrix(t);
    if m.is_empty() {
        return Subspace::full(t.r());
    }
    let rows: Vec<Vec<Scalar>> = m
        .iter()
        .map(|row| row.iter().map(|p| p.eval(xi)).collect())
        .collect();
    Subspace::from_rows(t.r(), &Mat::from_rows(t.r(), rows).kernel())
}

/// The matrix of `m` restricted to an invariant subspace, in the
/// subspace's basis; `None` when the subspace is not invariant.
pub fn restriction_matrix(m: &Mat, sub: &Subspace) -> Option<Mat> {
    let d = sub.dim();
    let basis_t = sub.basis().transpose();
    let mut rest = Mat::zeros(d, d);
    for i in 0..d {
        let img = m.mul_vec(sub.basis().row(i));
        let x = basis_t.solve(&img)?;
        for (jj, c) in x.into_iter().enumerate() {
            rest.set(jj, i, c);
        }
    }
    Some(rest)
}

/// Whether the square matrix is nilpotent.
pub fn is_nilpotent(m: &Mat) -> bool {
    let d = m.rows();
    if d == 0 {
        return true;
    }
    let mut p = m.clone();
    for _ in 1..d {
        if p.is_zero() {
            return true;
        }
        p = p.mul(m);
    }
    p.is_zero()
}

/// Soundness certificate for a claimed perpendicular space `x1` (original
/// coordinates): for `sample_count` random covectors `phi` supported on
/// the leading columns and every basis vector `v` of `x1`, the space
/// `W^1(phi)` must be invariant under `B(phi)(v)` with nilpotent
/// restriction. Returns `false` on the first failure.
///
/// This certifies `x1 ⊆ X^1` behavior for involutive tableaux; it does not
/// certify maximality of `x1`.
pub fn nilpotency_certificate(t: &Tableau, x1: &Subspace, sample_count: usize, seed: u64) -> bool {
    assert_eq!(x1.ambient(), t.n(), "subspace ambient mismatch");
    let ell = t.ell();
    for sample in 0..sample_count {
        let mut rng = subrng(seed, &[TAG_NILP, sample as u64]);
        let mut phi = vec![Scalar::zero(); t.n()];
        if ell > 0 {
            loop {
                for slot in phi.iter_mut().take(ell) {
                    *slot = int(rng.gen_range(-3..=3));
                }
                if phi.iter().any(|c| !c.is_zero()) {
                    break;
                }
            }
        }
        let Ok(w1) = t.w_one(&phi) else { return false };
        for vi in 0..x1.dim() {
            let v_ad = t.v_to_adapted(x1.basis().row(vi));
            let Ok(endo) = t.symbol_endo(&phi, &v_ad) else {
                return false;
            };
            match restriction_matrix(&endo, &w1) {
                Some(rest) => {
                    if !is_nilpotent(&rest) {
                        return false;
                    }
                }
                None => return false,
            }
        }
    }
    true
}

/// Classification of a tableau: the dimension chain and the three
/// structure verdicts, plus the data they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub r: usize,
    pub characters: Vec<usize>,
    pub ell: usize,
    #[serde(rename = "L")]
    pub big_l: usize,
    pub nu: usize,
    pub frobenius: bool,
    pub elementary: bool,
    pub cauchy_free: bool,
    pub involutive: bool,
    /// Basis rows of the span's perpendicular space, original coordinates.
    #[serde(rename = "x1_basis")]
    pub x_one_basis: Vec<Vec<String>>,
    /// Basis rows of the retraction space, original coordinates.
    #[serde(rename = "S_basis")]
    pub s_basis: Vec<Vec<String>>,
    pub char_ideal_generators: Vec<String>,
    /// Stages of the reduction flag, present once a flag computation has
    /// filled them in.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<Vec<FlagEntry>>,
}

/// One stage of the reduction flag as it appears in the report: the
/// direction space at this level (original coordinates) and the headline
/// invariants of the tableau restricted to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagEntry {
    pub level: usize,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub characters: Vec<usize>,
    pub ell: usize,
    #[serde(rename = "L")]
    pub big_l: usize,
}

pub(crate) fn basis_strings(s: &Subspace) -> Vec<Vec<String>> {
    (0..s.dim())
        .map(|i| s.basis().row(i).iter().map(|c| c.to_string()).collect())
        .collect()
}

/// Assemble the classification report: `ell` from the ideal, `L` from the
/// span accumulation, `nu` from the retraction space, and the verdicts
/// `frobenius (ell = 0)`, `elementary (L = n)`, `cauchy-free (nu = n)`.
/// The chain `ell <= L <= nu <= n` is asserted before the report is
/// returned.
pub fn classify(t: &Tableau, seed: u64, caps: &Caps) -> Result<Report> {
    let data = variety_span(t, seed, caps)?;
    let n = t.n();
    let nu = t.nu();
    assert!(
        data.ell <= data.big_l && data.big_l <= nu && nu <= n,
        "dimension chain violated: ell={} L={} nu={} n={}",
        data.ell,
        data.big_l,
        nu,
        n
    );
    Ok(Report {
        n,
        r: t.r(),
        characters: t.characters().to_vec(),
        ell: data.ell,
        big_l: data.big_l,
        nu,
        frobenius: data.ell == 0,
        elementary: data.big_l == n,
        cauchy_free: nu == n,
        involutive: t.gnf_report().involutive,
        x_one_basis: basis_strings(&data.x_one),
        s_basis: basis_strings(&t.cauchy_space()),
        char_ideal_generators: data.ideal.iter().map(|p| p.to_string()).collect(),
        flag: None,
    })
}

impl Report {
    /// Stable JSON rendering with fixed key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yesno = |b: bool| if b { "yes" } else { "no" };
        let rows = |rows: &[Vec<String>]| {
            if rows.is_empty() {
                "(none)".to_string()
            } else {
                rows.iter()
                    .map(|r| format!("[{}]", r.join(", ")))
                    .collect::<Vec<_>>()
                    .join("  ")
            }
        };
        writeln!(f, "tableau classification (n={}, r={})", self.n, self.r)?;
        let characters = self
            .characters
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(f, "  characters       {characters}")?;
        writeln!(
            f,
            "  ell / L / nu / n {} / {} / {} / {}",
            self.ell, self.big_l, self.nu, self.n
        )?;
        writeln!(f, "  frobenius        {}", yesno(self.frobenius))?;
        writeln!(f, "  elementary       {}", yesno(self.elementary))?;
        writeln!(f, "  cauchy-free      {}", yesno(self.cauchy_free))?;
        writeln!(f, "  involutive       {}", yesno(self.involutive))?;
        writeln!(f, "  X^1 basis        {}", rows(&self.x_one_basis))?;
        writeln!(f, "  S basis          {}", rows(&self.s_basis))?;
        let ideal = if self.char_ideal_generators.is_empty() {
            "(0)".to_string()
        } else {
            format!("({})", self.char_ideal_generators.join(", "))
        };
        writeln!(f, "  char ideal       {ideal}")?;
        if let Some(flag) = &self.flag {
            let dims = flag
                .iter()
                .map(|e| e.dim.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(f, "  flag dims        {dims}")?;
        }
        Ok(())
    }
}
