//! Worked example tableaux and a seeded sampler of involutive tableaux.
//!
//! The fixed examples are stored in their displayed coordinates: the heat
//! tableaux as explicit generator matrices, the five-direction family in
//! reduced form. The sampler assembles block-diagonal sums of involutive
//! building blocks, conjugates them by random invertible changes of basis,
//! and re-runs the generic adaptation, so its output exercises the whole
//! construction pipeline rather than just the blocks themselves.

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::mat;
use crate::mat::Mat;
use crate::rng::subrng;
use crate::scalar::{int, Scalar};
use crate::spencer;
use crate::subspace::Subspace;
use crate::tableau::Tableau;

const TAG_SAMPLER: u64 = 0x73_61_6d_70;
const TAG_PERTURB: u64 = 0x70_65_72_74;

/// The two-direction tableau with matrix form `[[x, y], [y, 0]]`.
pub fn heat_1d() -> Tableau {
    let gens = vec![mat![[1, 0], [0, 0]], mat![[0, 1], [1, 0]]];
    Tableau::from_generators(2, 2, gens, 0, &Caps::default())
        .expect("the 1-d heat tableau is a valid fixture")
}

/// The three-direction tableau with rows `(a, b, -d)`, `(c, d, b)`,
/// `(e, c, a)` over five free parameters.
pub fn heat_2d() -> Tableau {
    let gens = vec![
        mat![[1, 0, 0], [0, 0, 0], [0, 0, 1]],
        mat![[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        mat![[0, 0, 0], [1, 0, 0], [0, 1, 0]],
        mat![[0, 0, -1], [0, 1, 0], [0, 0, 0]],
        mat![[0, 0, 0], [0, 0, 0], [1, 0, 0]],
    ];
    Tableau::from_generators(3, 3, gens, 0, &Caps::default())
        .expect("the 2-d heat tableau is a valid fixture")
}

/// The 1-d heat tableau embedded in a three-dimensional direction space,
/// leaving one direction unused. The unused direction is a nontrivial
/// retraction: every symbol endomorphism it induces vanishes.
pub fn heat_1d_padded() -> Tableau {
    let gens = vec![
        mat![[1, 0, 0], [0, 0, 0]],
        mat![[0, 1, 0], [1, 0, 0]],
    ];
    Tableau::from_generators(3, 2, gens, 0, &Caps::default())
        .expect("the padded 1-d heat tableau is a valid fixture")
}

/// Rational parameters for the five-direction involutive family.
#[derive(Clone, Debug)]
pub struct FixtureParams {
    pub p: Scalar,
    pub q: Scalar,
    pub g: Scalar,
    pub h: Scalar,
    pub z2: Scalar,
    pub z3: Scalar,
    pub z4: Scalar,
}

impl FixtureParams {
    /// Parameters from plain integers, in the order `p, q, g, h, z2, z3, z4`.
    pub fn from_ints(p: i64, q: i64, g: i64, h: i64, z2: i64, z3: i64, z4: i64) -> Self {
        FixtureParams {
            p: int(p),
            q: int(q),
            g: int(g),
            h: int(h),
            z2: int(z2),
            z3: int(z3),
            z4: int(z4),
        }
    }
}

impl Default for FixtureParams {
    /// The reference point `p=2, q=3, g=h=z2=z3=z4=1`.
    fn default() -> Self {
        FixtureParams::from_ints(2, 3, 1, 1, 1, 1, 1)
    }
}

/// The five-direction, three-equation involutive family with characters
/// `(3, 2, 2, 0, 0)`.
///
/// All six trailing-column blocks are multiples of one nilpotent kernel
/// matrix `K = [[1, 1/h], [-h, -1]]`:
///
/// * columns 4 and 5 carry `p*g*K + z4*E33`, `(p/q)*K`, `p*K` and
///   `g*K`, `(1/q)*K`, `K`;
/// * columns 2 and 3 carry only the corner entries `z2*E33`, `z3*E33`.
///
/// The denominators require `q != 0` and `h != 0`.
pub fn artificial_355(params: &FixtureParams) -> Result<Tableau> {
    if params.q.is_zero() {
        return Err(Error::ParameterDomain("q must be nonzero".into()));
    }
    if params.h.is_zero() {
        return Err(Error::ParameterDomain("h must be nonzero".into()));
    }
    let kmat = [
        [int(1), params.h.recip()],
        [-&params.h, int(-1)],
    ];
    let mut entries: Vec<(usize, usize, usize, usize, Scalar)> = vec![
        (2, 0, 1, 2, params.z2.clone()),
        (2, 0, 2, 2, params.z3.clone()),
        (2, 0, 3, 2, params.z4.clone()),
    ];
    let scaled_blocks: [(usize, usize, Scalar); 6] = [
        (0, 3, &params.p * &params.g),
        (1, 3, &params.p / &params.q),
        (2, 3, params.p.clone()),
        (0, 4, params.g.clone()),
        (1, 4, params.q.recip()),
        (2, 4, int(1)),
    ];
    for (lambda, k, scale) in scaled_blocks {
        for (a, krow) in kmat.iter().enumerate() {
            for (b, kval) in krow.iter().enumerate() {
                entries.push((a, lambda, k, b, &scale * kval));
            }
        }
    }
    Tableau::from_reduced(5, 3, vec![3, 2, 2, 0, 0], &entries, &Caps::default())
}

/// Draw a random small rational, nonzero when `nonzero` is set.
fn small_rational<R: Rng>(rng: &mut R, nonzero: bool) -> Scalar {
    loop {
        let v = int(rng.gen_range(-3..=3));
        if !nonzero || !v.is_zero() {
            return v;
        }
    }
}

/// A random invertible matrix with small integer entries.
fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Mat {
    loop {
        let m = Mat::from_fn(d, d, |_, _| int(rng.gen_range(-2..=2)));
        if m.rank() == d {
            return m;
        }
    }
}

/// Copy the entries of `block` into a fresh `r x n` matrix at `row_offset`.
fn embed(block: &Mat, r: usize, n: usize, row_offset: usize) -> Mat {
    let mut m = Mat::zeros(r, n);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            if !block.at(i, j).is_zero() {
                m.set(row_offset + i, j, block.at(i, j).clone());
            }
        }
    }
    m
}

/// Generate an involutive tableau of ambient dimensions `(n, r)`.
///
/// The sampler stacks involutive blocks (idle rows, full row bands, the
/// heat tableaux, the five-direction family at random parameters) into a
/// block-diagonal sum, conjugates by random invertible matrices on both
/// sides, shuffles the generators, and re-derives a generic adaptation.
/// Both involutivity oracles are checked before a sample is returned;
/// draws that fail the generic-basis search are retried.
pub fn random_involutive(seed: u64, n: usize, r: usize, caps: &Caps) -> Result<Tableau> {
    assert!(n >= 1 && r >= 1, "ambient dimensions must be positive");
    assert!(
        n <= caps.max_dim && r <= caps.max_dim,
        "ambient dimensions exceed the configured cap"
    );
    let attempts = 48;
    for attempt in 0..attempts {
        let mut rng = subrng(seed, &[TAG_SAMPLER, attempt as u64]);
        let mut gens: Vec<Mat> = Vec::new();
        let mut row = 0;
        while row < r {
            let left = r - row;
            let mut kinds: Vec<u8> = vec![0, 1];
            if left >= 2 && n >= 2 {
                kinds.push(2);
            }
            if left >= 3 && n >= 3 {
                kinds.push(3);
            }
            if left >= 3 && n >= 5 {
                kinds.push(4);
            }
            match kinds[rng.gen_range(0..kinds.len())] {
                // Idle rows: directions of W that no generator touches.
                0 => {
                    row += rng.gen_range(1..=left);
                }
                // A full band: every slot of `height` rows and `c` leading
                // columns is free.
                1 => {
                    let height = rng.gen_range(1..=left);
                    let c = rng.gen_range(1..=n);
                    for a in 0..height {
                        for j in 0..c {
                            let mut m = Mat::zeros(r, n);
                            m.set(row + a, j, Scalar::one());
                            gens.push(m);
                        }
                    }
                    row += height;
                }
                2 => {
                    for p in heat_1d().generators() {
                        gens.push(embed(p, r, n, row));
                    }
                    row += 2;
                }
                3 => {
                    for p in heat_2d().generators() {
                        gens.push(embed(p, r, n, row));
                    }
                    row += 3;
                }
                4 => {
                    let params = FixtureParams {
                        p: small_rational(&mut rng, false),
                        q: small_rational(&mut rng, true),
                        g: small_rational(&mut rng, false),
                        h: small_rational(&mut rng, true),
                        z2: small_rational(&mut rng, false),
                        z3: small_rational(&mut rng, false),
                        z4: small_rational(&mut rng, false),
                    };
                    let t = artificial_355(&params).expect("denominators drawn nonzero");
                    for p in t.generators() {
                        gens.push(embed(p, r, n, row));
                    }
                    row += 3;
                }
                _ => unreachable!(),
            }
        }
        let pmat = random_invertible(&mut rng, r);
        let qmat = random_invertible(&mut rng, n);
        let mut gens: Vec<Mat> = gens.iter().map(|m| pmat.mul(m).mul(&qmat)).collect();
        gens.shuffle(&mut rng);
        let subseed = rng.next_u64();
        let t = match Tableau::from_generators(n, r, gens, subseed, caps) {
            Ok(t) => t,
            Err(Error::GenericityFailure { .. }) => continue,
            Err(e) => return Err(e),
        };
        let (cartan_ok, _, _) = spencer::cartan_test(&t);
        if t.gnf_report().involutive && cartan_ok {
            return Ok(t);
        }
    }
    Err(Error::GenerationFailed { attempts })
}

/// Perturb one reduced-form coefficient of `t` by a random nonzero amount
/// and rebuild from the perturbed generators with a fresh generic
/// adaptation.
///
/// The perturbation stays inside the triangular support, so the result is
/// always a valid tableau of the same dimension; it is usually, but not
/// necessarily, non-involutive.
pub fn perturbed(t: &Tableau, seed: u64, caps: &Caps) -> Result<Tableau> {
    let (n, r) = (t.n(), t.r());
    let s = t.characters().to_vec();
    let mut slots: Vec<(usize, usize, usize, usize)> = Vec::new();
    for lambda in 0..n {
        for k in (lambda + 1)..n {
            for b in 0..s[lambda] {
                for a in s[k]..r {
                    slots.push((a, lambda, k, b));
                }
            }
        }
    }
    if slots.is_empty() {
        return Err(Error::GenerationFailed { attempts: 0 });
    }
    let attempts = 48;
    for attempt in 0..attempts {
        let mut rng = subrng(seed, &[TAG_PERTURB, attempt as u64]);
        let (a, lambda, k, b) = slots[rng.gen_range(0..slots.len())];
        let delta = small_rational(&mut rng, true);
        let mut gens = Vec::new();
        for lam in 0..n {
            for bb in 0..s[lam] {
                let mut m = Mat::zeros(r, n);
                m.set(bb, lam, Scalar::one());
                for kk in 0..n {
                    for aa in s[kk]..r {
                        let mut v = t.coeff(aa, lam, kk, bb);
                        if (aa, lam, kk, bb) == (a, lambda, k, b) {
                            v += &delta;
                        }
                        if !v.is_zero() {
                            m.set(aa, kk, v);
                        }
                    }
                }
                gens.push(m);
            }
        }
        match Tableau::from_generators(n, r, gens, rng.next_u64(), caps) {
            Ok(t2) => return Ok(t2),
            Err(Error::GenericityFailure { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed { attempts })
}

/// The direction subspace a padded fixture leaves idle, for tests that
/// need a nonzero retraction space.
pub fn third_direction() -> Subspace {
    Subspace::span(3, &[vec![int(0), int(0), int(1)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn heat_1d_matches_its_display() {
        let t = heat_1d();
        assert_eq!((t.n(), t.r(), t.dim()), (2, 2, 2));
        assert_eq!(t.characters(), &[2, 0]);
        assert!(t.gnf_report().involutive);
        let coeffs: Vec<_> = t.reduced_coeffs().iter().collect();
        assert_eq!(coeffs, vec![(&(0, 0, 1, 1), &int(1))]);
    }

    #[test]
    fn heat_2d_matches_its_display() {
        let t = heat_2d();
        assert_eq!((t.n(), t.r(), t.dim()), (3, 3, 5));
        assert_eq!(t.characters(), &[3, 2, 0]);
        assert_eq!(t.ell(), 2);
        assert!(t.gnf_report().involutive);
    }

    #[test]
    fn heat_2d_symbol_endomorphisms_match_their_display() {
        let t = heat_2d();
        let u1 = [int(1), int(0), int(0)];
        let u2 = [int(0), int(1), int(0)];
        let e2 = [int(0), int(1), int(0)];
        let e3 = [int(0), int(0), int(1)];
        assert_eq!(
            t.symbol_endo(&u1, &e2).unwrap(),
            mat![[0, 0, 0], [0, 0, 0], [0, 1, 0]]
        );
        assert_eq!(
            t.symbol_endo(&u1, &e3).unwrap(),
            mat![[0, 0, 0], [0, 0, 0], [1, 0, 0]]
        );
        assert_eq!(
            t.symbol_endo(&u2, &e3).unwrap(),
            mat![[0, -1, 0], [1, 0, 0], [0, 0, 0]]
        );
    }

    #[test]
    fn padded_heat_keeps_an_idle_direction() {
        let t = heat_1d_padded();
        assert_eq!(t.characters(), &[2, 0, 0]);
        assert!(t.gnf_report().involutive);
        let s = t.cauchy_space();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(t.nu(), 2);
    }

    #[test]
    fn family_reference_point_is_involutive_with_frozen_characters() {
        let t = artificial_355(&FixtureParams::default()).unwrap();
        assert_eq!((t.n(), t.r(), t.dim()), (5, 3, 7));
        assert_eq!(t.characters(), &[3, 2, 2, 0, 0]);
        assert!(t.gnf_report().involutive);
        assert_eq!(spencer::cartan_test(&t), (true, 13, 13));
        assert_eq!(t.cauchy_space().dim(), 0);
        assert_eq!(t.nu(), 5);
    }

    #[test]
    fn family_blocks_satisfy_the_constructed_proportionality() {
        let params = FixtureParams::from_ints(2, 3, 1, 1, 1, 1, 1);
        let t = artificial_355(&params).unwrap();
        assert_eq!(t.bhat(1, 3), t.bhat(1, 4).scale(&params.p));
        assert_eq!(t.bhat(2, 3), t.bhat(2, 4).scale(&params.p));
        let k = t.bhat(2, 4);
        assert!(k.mul(&k).is_zero(), "the kernel block is nilpotent");
    }

    #[test]
    fn family_is_involutive_across_random_parameters() {
        for draw in 0..6u64 {
            let mut rng = subrng(99, &[draw]);
            let params = FixtureParams {
                p: small_rational(&mut rng, false),
                q: small_rational(&mut rng, true),
                g: small_rational(&mut rng, false),
                h: small_rational(&mut rng, true),
                z2: small_rational(&mut rng, false),
                z3: small_rational(&mut rng, false),
                z4: small_rational(&mut rng, false),
            };
            let t = artificial_355(&params).unwrap();
            assert!(t.gnf_report().involutive, "draw {draw} fails the reduced test");
            assert!(spencer::cartan_test(&t).0, "draw {draw} fails the dimension test");
        }
    }

    #[test]
    fn family_rejects_zero_denominators() {
        let zero_q = FixtureParams::from_ints(2, 0, 1, 1, 1, 1, 1);
        assert!(matches!(
            artificial_355(&zero_q),
            Err(Error::ParameterDomain(_))
        ));
        let zero_h = FixtureParams::from_ints(2, 3, 1, 0, 1, 1, 1);
        assert!(matches!(
            artificial_355(&zero_h),
            Err(Error::ParameterDomain(_))
        ));
    }

    #[test]
    fn family_accepts_fractional_parameters() {
        let params = FixtureParams {
            p: frac(1, 2),
            q: frac(-2, 3),
            g: int(0),
            h: frac(5, 1),
            z2: int(-1),
            z3: frac(3, 4),
            z4: int(0),
        };
        let t = artificial_355(&params).unwrap();
        assert_eq!(t.characters(), &[3, 2, 2, 0, 0]);
        assert!(t.gnf_report().involutive);
    }

    #[test]
    fn sampler_output_passes_both_oracles() {
        for (seed, n, r) in [(1u64, 2, 2), (2, 3, 3), (3, 4, 3), (4, 5, 4)] {
            let t = random_involutive(seed, n, r, &caps()).unwrap();
            assert_eq!((t.n(), t.r()), (n, r));
            assert!(t.gnf_report().involutive, "seed {seed} sample not involutive");
            assert!(spencer::cartan_test(&t).0, "seed {seed} sample fails the dimension test");
        }
    }

    #[test]
    fn sampler_is_deterministic_per_seed() {
        let a = random_involutive(7, 3, 3, &caps()).unwrap();
        let b = random_involutive(7, 3, 3, &caps()).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert_eq!(a.characters(), b.characters());
    }

    #[test]
    fn perturbation_preserves_shape_and_is_deterministic() {
        let t = heat_2d();
        let p1 = perturbed(&t, 11, &caps()).unwrap();
        let p2 = perturbed(&t, 11, &caps()).unwrap();
        assert_eq!((p1.n(), p1.r(), p1.dim()), (3, 3, 5));
        assert_eq!(p1.generators(), p2.generators());
    }

    #[test]
    fn perturbation_usually_breaks_involutivity() {
        let t = heat_2d();
        let broken = (0..8u64)
            .filter(|&s| {
                let p = perturbed(&t, s, &caps()).unwrap();
                !p.gnf_report().involutive
            })
            .count();
        assert!(broken >= 4, "only {broken} of 8 perturbations broke involutivity");
    }

    #[test]
    fn perturbation_verdicts_agree_between_oracles() {
        let t = artificial_355(&FixtureParams::default()).unwrap();
        for seed in 0..4u64 {
            let p = perturbed(&t, seed, &caps()).unwrap();
            let gnf = p.gnf_report().involutive;
            let (cartan, _, _) = spencer::cartan_test(&p);
            assert_eq!(gnf, cartan, "oracle disagreement at seed {seed}");
        }
    }
}
