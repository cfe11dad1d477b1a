//! Tableaux of linear maps `V -> W` with exact-rational entries: generic
//! bases, Cartan characters, the reduced coefficient form, symbol
//! endomorphisms, and first-order subspace invariants.
//!
//! A tableau is a subspace `A` of `W ⊗ V*`, stored as its original
//! generators together with an adapted pair of basis changes `(g, h)` of
//! `V` and `W` under which the characters are generic (lexicographically
//! maximal and nonincreasing) and the column flag is nested. In adapted
//! coordinates the subspace is described by its reduced coefficients
//! `B[(a, lambda, k, b)]`: the entry of a basis element in dependent slot
//! `(a, k)` (row `a >= s_k`, column `k`, zero-based) is a combination of its
//! free slots `(b, lambda)` (row `b < s_lambda`).
//!
//! Coordinate conventions for results: subspaces of `V` and covector spans
//! are reported in original coordinates; subspaces of `W` and the reduced
//! coefficients live in adapted coordinates.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::par;
use crate::rng::subrng;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use num::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Entry bound for random basis-change candidates.
const CHANGE_BOX: i64 = 3;
/// RNG stream tag for the genericity search.
const TAG_GENERICITY: u64 = 0x6765_6e65_7269_6373;

/// Flattened index of the matrix slot (row `a`, column `k`).
pub fn flat(a: usize, k: usize, n: usize) -> usize {
    a * n + k
}

/// Reduced-form coefficients keyed by `(a, lambda, k, b)`, zero-based.
pub type ReducedCoeffs = BTreeMap<(usize, usize, usize, usize), Scalar>;

/// A single violation of the involutivity conditions on the reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GnfViolation {
    /// `B[(a, lambda, k, b)]` is nonzero although `a >= s_lambda`.
    Linear {
        a: usize,
        lambda: usize,
        k: usize,
        b: usize,
    },
    /// Entry `(a, b)` of `B^lambda_l B^mu_k - B^lambda_k B^mu_l` is nonzero
    /// for `a >= s_l`.
    Quadratic {
        lambda: usize,
        mu: usize,
        l: usize,
        k: usize,
        a: usize,
        b: usize,
    },
}

/// Outcome of the reduced-form involutivity test.
#[derive(Clone, Debug)]
pub struct GnfReport {
    pub involutive: bool,
    pub violations: Vec<GnfViolation>,
}

/// A tableau with a chosen generic adaptation.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    r: usize,
    generators: Vec<Mat>,
    g: Mat,
    h: Mat,
    adapted: Vec<Mat>,
    characters: Vec<usize>,
    coeffs: ReducedCoeffs,
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend(m.row(i).iter().cloned());
    }
    v
}

fn unflatten(v: &[Scalar], r: usize, n: usize) -> Mat {
    Mat::from_fn(r, n, |a, k| v[flat(a, k, n)].clone())
}

fn flatten_first_cols(m: &Mat, k: usize) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * k);
    for i in 0..m.rows() {
        v.extend(m.row(i)[..k].iter().cloned());
    }
    v
}

fn random_invertible(n: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let m = Mat::from_fn(n, n, |_, _| {
            crate::scalar::int(rng.gen_range(-CHANGE_BOX..=CHANGE_BOX))
        });
        if n == 0 || !m.det().is_zero() {
            return m;
        }
    }
}

/// Characters of the column filtration for one basis candidate, or `None`
/// if the candidate is inadmissible (characters not monotone, or column
/// flag not nested).
fn eval_candidate(n: usize, r: usize, gens: &[Mat], g: &Mat) -> Option<Vec<usize>> {
    let ag: Vec<Mat> = gens.iter().map(|p| p.mul(g)).collect();
    let mut d = vec![0usize; n + 1];
    for k in 1..=n {
        let rows: Vec<Vec<Scalar>> = ag.iter().map(|p| flatten_first_cols(p, k)).collect();
        d[k] = Mat::from_rows(r * k, rows).rank();
    }
    let s: Vec<usize> = (1..=n).map(|k| d[k] - d[k - 1]).collect();
    if (1..n).any(|i| s[i] > s[i - 1]) {
        return None;
    }
    let ell = s.iter().filter(|&&x| x > 0).count();
    let flag = column_flag(r, &ag, ell);
    if (1..ell).any(|k| !flag[k].leq(&flag[k - 1])) {
        return None;
    }
    Some(s)
}

/// The nested column spaces `C_k` (zero-based `k < ell`): the image of
/// column `k` on the subspace of elements whose earlier columns vanish.
fn column_flag(r: usize, ag: &[Mat], ell: usize) -> Vec<Subspace> {
    let m = ag.len();
    (0..ell)
        .map(|k| {
            let rows: Vec<Vec<Scalar>> = ag.iter().map(|p| flatten_first_cols(p, k)).collect();
            let constraint = Mat::from_rows(r * k, rows);
            let coeff_kernel = constraint.transpose().kernel();
            let cols: Vec<Vec<Scalar>> = (0..coeff_kernel.rows())
                .map(|i| {
                    let c = coeff_kernel.row(i);
                    let mut col = vec![Scalar::zero(); r];
                    for (j, gen) in ag.iter().enumerate() {
                        if c[j].is_zero() {
                            continue;
                        }
                        for (a, slot) in col.iter_mut().enumerate() {
                            *slot += &c[j] * gen.at(a, k);
                        }
                    }
                    col
                })
                .collect();
            let _ = m;
            Subspace::span(r, &cols)
        })
        .collect()
}

impl Tableau {
    /// Build a tableau from independent generators, searching for a generic
    /// basis of `V` (identity first, then seeded random candidates) and an
    /// adapted basis of `W` realizing the nested column flag on coordinate
    /// subspaces.
    pub fn from_generators(
        n: usize,
        r: usize,
        generators: Vec<Mat>,
        seed: u64,
        caps: &Caps,
    ) -> Result<Tableau> {
        if n > caps.max_dim || r > caps.max_dim {
            return Err(Error::Value(format!(
                "dimensions ({n}, {r}) exceed the supported bound {}",
                caps.max_dim
            )));
        }
        if generators.len() > caps.max_generators {
            return Err(Error::Value(format!(
                "{} generators exceed the cap {}",
                generators.len(),
                caps.max_generators
            )));
        }
        for (i, p) in generators.iter().enumerate() {
            if p.rows() != r || p.cols() != n {
                return Err(Error::Value(format!(
                    "generator {i} has shape {}x{}, expected {r}x{n}",
                    p.rows(),
                    p.cols()
                )));
            }
        }
        // Independence check, reporting the first dependent generator.
        let mut stacked: Vec<Vec<Scalar>> = Vec::new();
        for (i, p) in generators.iter().enumerate() {
            stacked.push(flatten(p));
            if Mat::from_rows(r * n, stacked.clone()).rank() != stacked.len() {
                return Err(Error::DependentGenerators { index: i });
            }
        }

        let mut candidates = vec![Mat::identity(n)];
        let mut rng = subrng(seed, &[TAG_GENERICITY]);
        for _ in 0..caps.genericity_trials {
            candidates.push(random_invertible(n, &mut rng));
        }
        let evals = par::map_slice(&candidates, |g| eval_candidate(n, r, &generators, g));
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (i, ev) in evals.iter().enumerate() {
            if let Some(s) = ev {
                let better = match &best {
                    None => true,
                    Some((_, cur)) => s > cur,
                };
                if better {
                    best = Some((i, s.clone()));
                }
            }
        }
        let Some((winner, characters)) = best else {
            return Err(Error::GenericityFailure {
                trials: candidates.len(),
            });
        };
        let g = candidates[winner].clone();
        let vg: Vec<Mat> = generators.iter().map(|p| p.mul(&g)).collect();
        let ell = characters.iter().filter(|&&x| x > 0).count();
        let flag = column_flag(r, &vg, ell);

        // W-basis: identity if the flag already sits on coordinate
        // subspaces, otherwise a change sending a flag-adapted basis to the
        // standard one.
        let coordinate_nested = (0..ell).all(|k| {
            let std = Subspace::span(
                r,
                &(0..characters[k])
                    .map(|b| {
                        let mut v = vec![Scalar::zero(); r];
                        v[b] = Scalar::one();
                        v
                    })
                    .collect::<Vec<_>>(),
            );
            flag[k] == std
        });
        let h = if coordinate_nested {
            Mat::identity(r)
        } else {
            let mut vecs: Vec<Vec<Scalar>> = Vec::new();
            for k in (0..ell).rev() {
                let basis = flag[k].basis();
                for i in 0..basis.rows() {
                    let candidate = basis.row(i).to_vec();
                    let mut trial = vecs.clone();
                    trial.push(candidate.clone());
                    if Mat::from_rows(r, trial.clone()).rank() == trial.len() {
                        vecs.push(candidate);
                    }
                }
                debug_assert_eq!(vecs.len(), characters[k]);
            }
            for i in 0..r {
                let mut e = vec![Scalar::zero(); r];
                e[i] = Scalar::one();
                let mut trial = vecs.clone();
                trial.push(e.clone());
                if Mat::from_rows(r, trial.clone()).rank() == trial.len() {
                    vecs.push(e);
                }
            }
            let p = Mat::from_rows(r, vecs).transpose();
            p.inverse().expect("flag basis must be invertible")
        };

        let adapted_gens: Vec<Mat> = vg.iter().map(|p| h.mul(p)).collect();
        let (adapted, coeffs) = reduce_to_normal_form(n, r, &characters, &adapted_gens);
        Ok(Tableau {
            n,
            r,
            generators,
            g,
            h,
            adapted,
            characters,
            coeffs,
        })
    }

    /// Build a tableau directly from reduced-form data, trusting the given
    /// characters (no genericity search; `g = h = I`).
    pub fn from_reduced(
        n: usize,
        r: usize,
        characters: Vec<usize>,
        entries: &[(usize, usize, usize, usize, Scalar)],
        caps: &Caps,
    ) -> Result<Tableau> {
        if n > caps.max_dim || r > caps.max_dim {
            return Err(Error::Value(format!(
                "dimensions ({n}, {r}) exceed the supported bound {}",
                caps.max_dim
            )));
        }
        if characters.len() != n {
            return Err(Error::Value(format!(
                "expected {n} characters, got {}",
                characters.len()
            )));
        }
        if characters.iter().any(|&s| s > r) {
            return Err(Error::Value("a character exceeds the ambient dimension".into()));
        }
        if (1..n).any(|i| characters[i] > characters[i - 1]) {
            return Err(Error::Value("characters must be nonincreasing".into()));
        }
        let mut coeffs: ReducedCoeffs = BTreeMap::new();
        for &(a, lambda, k, b, ref v) in entries {
            let in_support = lambda < k
                && k < n
                && a < r
                && a >= characters[k]
                && b < characters[lambda];
            if !in_support {
                return Err(Error::TriangularityViolated { a, lambda, k, b });
            }
            if v.is_zero() {
                continue;
            }
            if coeffs.insert((a, lambda, k, b), v.clone()).is_some() {
                return Err(Error::Value(format!(
                    "duplicate reduced-form entry ({a}, {lambda}, {k}, {b})"
                )));
            }
        }
        let mut generators = Vec::new();
        for lambda in 0..n {
            for b in 0..characters[lambda] {
                let mut m = Mat::zeros(r, n);
                m.set(b, lambda, Scalar::one());
                for k in 0..n {
                    for a in characters[k]..r {
                        if let Some(v) = coeffs.get(&(a, lambda, k, b)) {
                            m.set(a, k, v.clone());
                        }
                    }
                }
                generators.push(m);
            }
        }
        Ok(Tableau {
            n,
            r,
            adapted: generators.clone(),
            generators,
            g: Mat::identity(n),
            h: Mat::identity(r),
            characters,
            coeffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension of the tableau as a subspace of `W ⊗ V*`.
    pub fn dim(&self) -> usize {
        self.adapted.len()
    }

    /// Cartan characters `s_1 >= s_2 >= ... >= s_n` in the adapted basis.
    pub fn characters(&self) -> &[usize] {
        &self.characters
    }

    /// Index of the last positive character.
    pub fn ell(&self) -> usize {
        self.characters.iter().filter(|&&s| s > 0).count()
    }

    /// The bound `sum k * s_k` on the dimension of the first prolongation.
    pub fn cartan_bound(&self) -> usize {
        self.characters
            .iter()
            .enumerate()
            .map(|(k, &s)| (k + 1) * s)
            .sum()
    }

    /// Original generators, as supplied.
    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    /// Slot-ordered basis in adapted coordinates: one element per free slot
    /// `(lambda, b)`, ordered by `lambda`, then `b`.
    pub fn adapted_basis(&self) -> &[Mat] {
        &self.adapted
    }

    /// The free slots `(lambda, b)` in basis order.
    pub fn slots(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|lambda| (0..self.characters[lambda]).map(move |b| (lambda, b)))
            .collect()
    }

    /// Basis change of `V`: `v_original = g * v_adapted`.
    pub fn basis_change_v(&self) -> &Mat {
        &self.g
    }

    /// Basis change of `W`: `z_adapted = h * z_original`.
    pub fn basis_change_w(&self) -> &Mat {
        &self.h
    }

    pub fn reduced_coeffs(&self) -> &ReducedCoeffs {
        &self.coeffs
    }

    /// Reduced coefficient `B[(a, lambda, k, b)]`.
    pub fn coeff(&self, a: usize, lambda: usize, k: usize, b: usize) -> Scalar {
        self.coeffs
            .get(&(a, lambda, k, b))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Dependent slots `(k, a)` with `a >= s_k`, in row-major order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|k| (self.characters[k]..self.r).map(move |a| (k, a)))
            .collect()
    }

    /// The tableau as a subspace of flattened `r * n` space, adapted
    /// coordinates.
    pub fn span_adapted(&self) -> Subspace {
        let rows: Vec<Vec<Scalar>> = self.adapted.iter().map(flatten).collect();
        Subspace::span(self.r * self.n, &rows)
    }

    /// The tableau as a subspace of flattened `r * n` space, original
    /// coordinates.
    pub fn span_original(&self) -> Subspace {
        let rows: Vec<Vec<Scalar>> = self.generators.iter().map(flatten).collect();
        Subspace::span(self.r * self.n, &rows)
    }

    /// Covector transform into adapted coordinates: `xi_adapted = g^T xi`.
    pub fn xi_to_adapted(&self, xi: &[Scalar]) -> Vec<Scalar> {
        self.g.transpose().mul_vec(xi)
    }

    /// Covector transform out of adapted coordinates.
    pub fn xi_to_original(&self, xi: &[Scalar]) -> Vec<Scalar> {
        self.g
            .transpose()
            .inverse()
            .expect("basis change is invertible")
            .mul_vec(xi)
    }

    /// Vector transform out of adapted coordinates: `v_original = g * v`.
    pub fn v_to_original(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.g.mul_vec(v)
    }

    /// Vector transform into adapted coordinates.
    pub fn v_to_adapted(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.g
            .inverse()
            .expect("basis change is invertible")
            .mul_vec(v)
    }

    /// `W`-vector transform into adapted coordinates: `z_adapted = h * z`.
    pub fn z_to_adapted(&self, z: &[Scalar]) -> Vec<Scalar> {
        self.h.mul_vec(z)
    }

    /// `W`-vector transform out of adapted coordinates.
    pub fn z_to_original(&self, z: &[Scalar]) -> Vec<Scalar> {
        self.h
            .inverse()
            .expect("basis change is invertible")
            .mul_vec(z)
    }

    /// The Cauchy space: vectors annihilated by every element of the
    /// tableau, in original coordinates.
    pub fn cauchy_space(&self) -> Subspace {
        let mut m = Mat::zeros(0, self.n);
        for p in &self.generators {
            m = m.vstack(p);
        }
        Subspace::from_rows(self.n, &m.kernel())
    }

    /// Codimension of the Cauchy space.
    pub fn nu(&self) -> usize {
        self.n - self.cauchy_space().dim()
    }

    /// Projector of `W` onto its first `s` coordinates.
    fn projector(&self, s: usize) -> Mat {
        Mat::from_fn(self.r, self.r, |i, j| {
            if i == j && i < s {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// The block `B̂^lambda_k` as an `r x r` matrix (rows `a >= s_k`,
    /// columns `b < s_lambda`).
    pub fn bhat(&self, lambda: usize, k: usize) -> Mat {
        let mut m = Mat::zeros(self.r, self.r);
        for (&(a, l, kk, b), v) in &self.coeffs {
            if l == lambda && kk == k {
                m.set(a, b, v.clone());
            }
        }
        m
    }

    /// The full endomorphism `B(u^lambda)(u_k)`: the projector on the
    /// diagonal plus the reduced block strictly above it.
    pub fn full_endo(&self, lambda: usize, k: usize) -> Mat {
        use std::cmp::Ordering;
        match lambda.cmp(&k) {
            Ordering::Greater => Mat::zeros(self.r, self.r),
            Ordering::Equal => self.projector(self.characters[lambda]),
            Ordering::Less => self.bhat(lambda, k),
        }
    }

    fn check_support(&self, phi: &[Scalar]) -> Result<()> {
        assert_eq!(phi.len(), self.n, "covector length mismatch");
        let ell = self.ell();
        for (index, c) in phi.iter().enumerate() {
            if index >= ell && !c.is_zero() {
                return Err(Error::SupportViolation { ell, index });
            }
        }
        Ok(())
    }

    /// The symbol endomorphism family of the covector `phi` (adapted
    /// coordinates, support inside the first `ell` slots): one endomorphism
    /// of `W` per basis vector of `V`.
    pub fn symbol_endo_matrices(&self, phi: &[Scalar]) -> Result<Vec<Mat>> {
        self.check_support(phi)?;
        let ell = self.ell();
        Ok((0..self.n)
            .map(|k| {
                let mut e = if k < ell && !phi[k].is_zero() {
                    self.projector(self.characters[k]).scale(&phi[k])
                } else {
                    Mat::zeros(self.r, self.r)
                };
                for lambda in 0..k.min(ell) {
                    if !phi[lambda].is_zero() {
                        e = e.add(&self.bhat(lambda, k).scale(&phi[lambda]));
                    }
                }
                e
            })
            .collect())
    }

    /// The symbol endomorphism `B(phi)(v)` of `W`.
    pub fn symbol_endo(&self, phi: &[Scalar], v: &[Scalar]) -> Result<Mat> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let mats = self.symbol_endo_matrices(phi)?;
        let mut out = Mat::zeros(self.r, self.r);
        for (k, m) in mats.iter().enumerate() {
            if !v[k].is_zero() {
                out = out.add(&m.scale(&v[k]));
            }
        }
        Ok(out)
    }

    /// `{z : z^a = 0 for all a <= s_k}` — the last `r - s_k` coordinates
    /// of `W`, adapted coordinates, zero-based `k`.
    pub fn w_minus(&self, k: usize) -> Subspace {
        let s = self.characters[k];
        let rows: Vec<Vec<Scalar>> = (s..self.r)
            .map(|i| {
                let mut v = vec![Scalar::zero(); self.r];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace::span(self.r, &rows)
    }

    /// `{z : z^a = 0 for all a > s_k}` — the first `s_k` coordinates of
    /// `W`, adapted coordinates, zero-based `k`.
    pub fn w_plus(&self, k: usize) -> Subspace {
        let s = self.characters[k];
        let rows: Vec<Vec<Scalar>> = (0..s)
            .map(|i| {
                let mut v = vec![Scalar::zero(); self.r];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace::span(self.r, &rows)
    }

    /// The space `W^1(phi) = {z : z ⊗ phi + sum_rho J_rho ⊗ u^rho ∈ A}`
    /// with `rho` running over the slack columns (`rho >= ell`), adapted
    /// coordinates.
    ///
    /// Solved as a joint linear system in `(z, J)` projected to `z`; the
    /// equivalent direct description by the membership constraints in the
    /// leading columns is asserted against it.
    pub fn w_one(&self, phi: &[Scalar]) -> Result<Subspace> {
        self.check_support(phi)?;
        let (n, r, ell) = (self.n, self.r, self.ell());
        let unknowns = r + r * (n - ell);
        let mut u = Mat::zeros(r * n, unknowns);
        for c in 0..r {
            for k in 0..n {
                if !phi[k].is_zero() {
                    u.set(flat(c, k, n), c, phi[k].clone());
                }
            }
        }
        for rho in ell..n {
            for c in 0..r {
                u.set(flat(c, rho, n), r + (rho - ell) * r + c, Scalar::one());
            }
        }
        let ann = self.span_adapted().annihilator();
        let basis_rows: Vec<Vec<Scalar>> = (0..ann.dim())
            .map(|i| ann.basis().row(i).to_vec())
            .collect();
        let sys = Mat::from_rows(r * n, basis_rows).mul(&u);
        let kern = sys.kernel();
        let zrows: Vec<Vec<Scalar>> = (0..kern.rows())
            .map(|i| kern.row(i)[..r].to_vec())
            .collect();
        let solution = Subspace::span(r, &zrows);
        debug_assert_eq!(solution, self.w_one_direct(phi));
        Ok(solution)
    }

    /// Direct form of `W^1(phi)`: the kernel of the leading-column
    /// membership constraints on `z` alone.
    fn w_one_direct(&self, phi: &[Scalar]) -> Subspace {
        let (r, ell) = (self.r, self.ell());
        let mut rows = Vec::new();
        for k in 0..ell {
            for a in self.characters[k]..r {
                let mut row = vec![Scalar::zero(); r];
                row[a] += &phi[k];
                for lambda in 0..k {
                    for b in 0..self.characters[lambda] {
                        if phi[lambda].is_zero() {
                            continue;
                        }
                        let c = self.coeff(a, lambda, k, b);
                        if !c.is_zero() {
                            row[b] = &row[b] - &(&c * &phi[lambda]);
                        }
                    }
                }
                rows.push(row);
            }
        }
        Subspace::from_rows(r, &Mat::from_rows(r, rows).kernel())
    }

    /// Check the two reduced-form involutivity conditions, returning every
    /// violation. Only meaningful in the generic adapted basis produced by
    /// `from_generators`.
    pub fn gnf_report(&self) -> GnfReport {
        let mut violations: Vec<GnfViolation> = Vec::new();
        for (&(a, lambda, k, b), v) in &self.coeffs {
            if !v.is_zero() && a >= self.characters[lambda] {
                violations.push(GnfViolation::Linear { a, lambda, k, b });
            }
        }
        let mut quads: Vec<(usize, usize, usize, usize)> = Vec::new();
        for l in 0..self.n {
            for k in l + 1..self.n {
                for lambda in 0..l {
                    for mu in lambda..k {
                        quads.push((lambda, mu, l, k));
                    }
                }
            }
        }
        let found = par::map_slice(&quads, |&(lambda, mu, l, k)| {
            let m = self
                .full_endo(lambda, l)
                .mul(&self.full_endo(mu, k))
                .sub(&self.full_endo(lambda, k).mul(&self.full_endo(mu, l)));
            let mut local = Vec::new();
            for a in self.characters[l]..self.r {
                for b in 0..self.r {
                    if !m.at(a, b).is_zero() {
                        local.push(GnfViolation::Quadratic {
                            lambda,
                            mu,
                            l,
                            k,
                            a,
                            b,
                        });
                    }
                }
            }
            local
        });
        violations.extend(found.into_iter().flatten());
        GnfReport {
            involutive: violations.is_empty(),
            violations,
        }
    }

    /// Restrict the tableau to a subspace `X` of `V` (original
    /// coordinates) and re-adapt.
    pub fn restrict(&self, x: &Subspace, seed: u64, caps: &Caps) -> Result<Tableau> {
        assert_eq!(x.ambient(), self.n, "restriction ambient mismatch");
        let nb = x.dim();
        let bx = Mat::from_fn(self.n, nb, |i, j| x.basis().at(j, i).clone());
        let mut kept: Vec<Mat> = Vec::new();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for p in &self.generators {
            let q = p.mul(&bx);
            let mut trial = rows.clone();
            trial.push(flatten(&q));
            if Mat::from_rows(self.r * nb, trial.clone()).rank() == trial.len() {
                rows = trial;
                kept.push(q);
            }
        }
        Tableau::from_generators(nb, self.r, kept, seed, caps)
    }
}

/// Extract the slot-ordered basis and reduced coefficients from adapted
/// generators whose characters and column flag are already generic and
/// coordinate-nested.
fn reduce_to_normal_form(
    n: usize,
    r: usize,
    characters: &[usize],
    adapted_gens: &[Mat],
) -> (Vec<Mat>, ReducedCoeffs) {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|lambda| (0..characters[lambda]).map(move |b| (lambda, b)))
        .collect();
    let dim = adapted_gens.len();
    assert_eq!(slots.len(), dim, "free slot count must match dimension");
    if dim == 0 {
        return (Vec::new(), BTreeMap::new());
    }
    let m = Mat::from_fn(dim, dim, |i, j| {
        let (lambda, b) = slots[j];
        adapted_gens[i].at(b, lambda).clone()
    });
    let minv = m
        .inverse()
        .expect("free-slot matrix is invertible for an admissible flag");
    let flat_gens = Mat::from_rows(
        r * n,
        adapted_gens.iter().map(flatten).collect::<Vec<_>>(),
    );
    let basis_flat = minv.mul(&flat_gens);
    let mut adapted = Vec::with_capacity(dim);
    let mut coeffs: ReducedCoeffs = BTreeMap::new();
    for (j, &(lambda, b)) in slots.iter().enumerate() {
        let elem = unflatten(basis_flat.row(j), r, n);
        for k in 0..n {
            for a in characters[k]..r {
                let v = elem.at(a, k);
                if !v.is_zero() {
                    debug_assert!(
                        lambda < k,
                        "nested flag must force triangular coefficients"
                    );
                    coeffs.insert((a, lambda, k, b), v.clone());
                }
            }
        }
        if cfg!(debug_assertions) {
            for (jj, &(l2, b2)) in slots.iter().enumerate() {
                let expect = if jj == j { Scalar::one() } else { Scalar::zero() };
                debug_assert_eq!(elem.at(b2, l2), &expect, "free slots must be unit");
            }
        }
        adapted.push(elem);
    }
    (adapted, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;
    use crate::mat::vec_i;
    use crate::scalar::int;

    fn caps() -> Caps {
        Caps::default()
    }

    pub fn heat_1d_gens() -> Vec<Mat> {
        vec![mat![[1, 0], [0, 0]], mat![[0, 1], [1, 0]]]
    }

    pub fn heat_2d_gens() -> Vec<Mat> {
        vec![
            mat![[1, 0, 0], [0, 0, 0], [0, 0, 1]],
            mat![[0, 1, 0], [0, 0, 1], [0, 0, 0]],
            mat![[0, 0, 0], [1, 0, 0], [0, 1, 0]],
            mat![[0, 0, -1], [0, 1, 0], [0, 0, 0]],
            mat![[0, 0, 0], [0, 0, 0], [1, 0, 0]],
        ]
    }

    #[test]
    fn heat_1d_adaptation() {
        let t = Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap();
        assert_eq!(t.characters(), &[2, 0]);
        assert_eq!(t.ell(), 1);
        assert_eq!(t.basis_change_v(), &Mat::identity(2));
        assert_eq!(t.basis_change_w(), &Mat::identity(2));
        let coeffs: Vec<_> = t.reduced_coeffs().iter().collect();
        assert_eq!(coeffs, vec![(&(0, 0, 1, 1), &int(1))]);
        assert_eq!(t.adapted_basis(), &heat_1d_gens()[..]);
        assert_eq!(t.cartan_bound(), 2);
    }

    #[test]
    fn heat_2d_adaptation() {
        let t = Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap();
        assert_eq!(t.characters(), &[3, 2, 0]);
        assert_eq!(t.ell(), 2);
        assert_eq!(t.basis_change_v(), &Mat::identity(3));
        assert_eq!(t.basis_change_w(), &Mat::identity(3));
        let expect: Vec<((usize, usize, usize, usize), Scalar)> = vec![
            ((0, 1, 2, 1), int(-1)),
            ((1, 1, 2, 0), int(1)),
            ((2, 0, 1, 1), int(1)),
            ((2, 0, 2, 0), int(1)),
        ];
        let got: Vec<_> = t
            .reduced_coeffs()
            .iter()
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        assert_eq!(got, expect);
        assert_eq!(t.cartan_bound(), 3 + 2 * 2);
    }

    #[test]
    fn heat_2d_symbol_endomorphisms() {
        let t = Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap();
        // B(u^1)(u_2), B(u^1)(u_3), B(u^2)(u_3) entry for entry.
        let b1 = t.symbol_endo_matrices(&vec_i(&[1, 0, 0])).unwrap();
        assert_eq!(b1[1], mat![[0, 0, 0], [0, 0, 0], [0, 1, 0]]);
        assert_eq!(b1[2], mat![[0, 0, 0], [0, 0, 0], [1, 0, 0]]);
        let b2 = t.symbol_endo_matrices(&vec_i(&[0, 1, 0])).unwrap();
        assert_eq!(b2[2], mat![[0, -1, 0], [1, 0, 0], [0, 0, 0]]);
        // The diagonal part of B(u^1)(u_1) is the projector on s_1 = 3.
        assert_eq!(b1[0], Mat::identity(3));
        // Support outside the first ell slots is rejected.
        assert!(matches!(
            t.symbol_endo_matrices(&vec_i(&[0, 0, 1])),
            Err(Error::SupportViolation { ell: 2, index: 2 })
        ));
    }

    #[test]
    fn heat_1d_symbol_endomorphism_matrix() {
        let t = Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap();
        let v = vec_i(&[5, 7]);
        let b = t.symbol_endo(&vec_i(&[1, 0]), &v).unwrap();
        assert_eq!(b, mat![[5, 7], [0, 5]]);
    }

    #[test]
    fn w_spaces_and_w_one() {
        let t = Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap();
        assert_eq!(t.w_minus(0).dim(), 0);
        assert_eq!(t.w_plus(0).dim(), 2);
        assert_eq!(t.w_minus(1).dim(), 2);
        assert_eq!(t.w_plus(1).dim(), 0);
        let w1 = t.w_one(&vec_i(&[1, 0])).unwrap();
        assert!(w1.is_full());
        let t2 = Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap();
        let w1 = t2.w_one(&vec_i(&[1, 0, 0])).unwrap();
        // Membership constraints in column 2 force z^3 = 0 here.
        assert_eq!(w1.dim(), 2);
        assert!(w1.leq(&t2.w_plus(0)));
    }

    #[test]
    fn cauchy_space_of_fixtures_is_trivial() {
        let t = Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap();
        assert!(t.cauchy_space().is_zero());
        assert_eq!(t.nu(), 2);
        let t2 = Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap();
        assert!(t2.cauchy_space().is_zero());
        assert_eq!(t2.nu(), 3);
    }

    #[test]
    fn gnf_involutive_on_heat_tableaux() {
        for t in [
            Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap(),
            Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap(),
        ] {
            let report = t.gnf_report();
            assert!(report.involutive, "unexpected violations: {:?}", report.violations);
        }
    }

    #[test]
    fn crossed_tableau_in_declared_basis_fails_linear_condition() {
        // The span of [[x, y], [0, x]] declared with characters (1, 1):
        // the linear condition fails at B[(1, 0, 1, 0)].
        let t = Tableau::from_reduced(
            2,
            2,
            vec![1, 1],
            &[(1, 0, 1, 0, int(1))],
            &caps(),
        )
        .unwrap();
        let report = t.gnf_report();
        assert!(!report.involutive);
        assert_eq!(
            report.violations,
            vec![GnfViolation::Linear {
                a: 1,
                lambda: 0,
                k: 1,
                b: 0
            }]
        );
    }

    #[test]
    fn crossed_tableau_re_genericizes_to_involutive() {
        // The same subspace through the generic pipeline gets characters
        // (2, 0) and is involutive.
        let gens = vec![mat![[1, 0], [0, 1]], mat![[0, 1], [0, 0]]];
        let t = Tableau::from_generators(2, 2, gens, 0, &caps()).unwrap();
        assert_eq!(t.characters(), &[2, 0]);
        assert!(t.gnf_report().involutive);
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let gens = vec![
            mat![[1, 0], [0, 0]],
            mat![[0, 1], [1, 0]],
            mat![[1, 1], [1, 0]],
        ];
        assert!(matches!(
            Tableau::from_generators(2, 2, gens, 0, &caps()),
            Err(Error::DependentGenerators { index: 2 })
        ));
    }

    #[test]
    fn from_reduced_validates_support_and_characters() {
        assert!(matches!(
            Tableau::from_reduced(2, 2, vec![0, 1], &[], &caps()),
            Err(Error::Value(_))
        ));
        // lambda >= k is outside the triangular support.
        assert!(matches!(
            Tableau::from_reduced(2, 2, vec![1, 1], &[(1, 1, 1, 0, int(1))], &caps()),
            Err(Error::TriangularityViolated {
                a: 1,
                lambda: 1,
                k: 1,
                b: 0
            })
        ));
    }

    #[test]
    fn from_reduced_round_trips_the_heat_tableau() {
        let t = Tableau::from_reduced(2, 2, vec![2, 0], &[(0, 0, 1, 1, int(1))], &caps()).unwrap();
        assert_eq!(t.adapted_basis(), &heat_1d_gens()[..]);
        assert_eq!(t.span_original(), {
            let u =
                Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap();
            u.span_original()
        });
    }

    #[test]
    fn restriction_of_heat_2d_to_a_coordinate_plane() {
        let t = Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap();
        let x = Subspace::span(3, &[vec_i(&[1, 0, 0]), vec_i(&[0, 1, 0])]);
        let restricted = t.restrict(&x, 0, &caps()).unwrap();
        assert_eq!(restricted.n(), 2);
        assert_eq!(restricted.r(), 3);
        // Columns 1 and 2 of the five generators span a 5-dimensional space.
        assert_eq!(restricted.dim(), 5);
        assert_eq!(restricted.characters(), &[3, 2]);
    }

    #[test]
    fn zero_tableau_is_admissible() {
        let t = Tableau::from_generators(3, 2, Vec::new(), 0, &caps()).unwrap();
        assert_eq!(t.characters(), &[0, 0, 0]);
        assert_eq!(t.dim(), 0);
        assert_eq!(t.ell(), 0);
        assert!(t.gnf_report().involutive);
        assert!(t.cauchy_space().is_full());
        assert_eq!(t.nu(), 0);
    }

    #[test]
    fn random_basis_changes_preserve_span_and_characters() {
        use rand::Rng;
        let mut rng = subrng(11, &[1]);
        for trial in 0..6 {
            let gens = heat_2d_gens();
            let g = random_invertible(3, &mut rng);
            let h = random_invertible(3, &mut rng);
            let moved: Vec<Mat> = gens.iter().map(|p| h.mul(&p.mul(&g))).collect();
            let t = Tableau::from_generators(3, 3, moved, trial as u64, &caps()).unwrap();
            assert_eq!(t.characters(), &[3, 2, 0], "trial {trial}");
            assert!(t.gnf_report().involutive, "trial {trial}");
            let _ = rng.gen_range(0..2);
        }
    }

    #[test]
    fn columns_reconstruct_from_plus_parts_and_endomorphisms() {
        // Every adapted element is determined by the leading parts of its
        // columns, and the endomorphism family performs the reconstruction:
        // column k equals the sum over lambda of B(u^lambda)(u_k) applied to
        // the w_plus(lambda)-part of column lambda.
        let fixtures: Vec<Tableau> = vec![
            Tableau::from_generators(2, 2, heat_1d_gens(), 0, &caps()).unwrap(),
            Tableau::from_generators(3, 3, heat_2d_gens(), 0, &caps()).unwrap(),
            crate::fixtures::artificial_355(&crate::fixtures::FixtureParams::default()).unwrap(),
        ];
        for t in &fixtures {
            for pi in t.adapted_basis() {
                let plus_parts: Vec<Vec<Scalar>> = (0..t.n())
                    .map(|lambda| {
                        let mut z = pi.col(lambda);
                        for slot in z.iter_mut().skip(t.characters()[lambda]) {
                            *slot = Scalar::zero();
                        }
                        z
                    })
                    .collect();
                for k in 0..t.n() {
                    let mut rebuilt = vec![Scalar::zero(); t.r()];
                    for (lambda, z) in plus_parts.iter().enumerate() {
                        let img = t.full_endo(lambda, k).mul_vec(z);
                        for (slot, v) in rebuilt.iter_mut().zip(img) {
                            *slot = &*slot + &v;
                        }
                    }
                    assert_eq!(rebuilt, pi.col(k), "n={} k={k}", t.n());
                }
            }
        }
    }
}
