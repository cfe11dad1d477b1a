//! Polynomial ideals over the rationals: Gröbner bases, elimination,
//! saturation, dimension, radicals of zero-dimensional ideals, and the
//! linear part of an ideal.
//!
//! Gröbner bases are computed with Buchberger's algorithm using the coprime
//! and chain criteria and normal (smallest-lcm-first) pair selection; every
//! returned basis is the reduced basis — monic, inter-reduced, sorted with
//! the largest leading monomial first — so it is canonical for the pair
//! (ideal, order).

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly::{Exp, MonomialOrder, Poly};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use num::Zero;
use std::collections::BTreeSet;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Fully reduce `p` modulo `basis`: no monomial of the result is divisible
/// by any basis leading monomial.
pub fn normal_form(p: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let lts: Vec<(Exp, Scalar)> = basis
        .iter()
        .map(|g| g.leading_term(order).expect("zero element in basis"))
        .collect();
    let mut h = p.clone();
    let mut out = Poly::zero(p.nvars());
    'outer: while !h.is_zero() {
        let (lm, lc) = h.leading_term(order).unwrap();
        for (g, (glm, glc)) in basis.iter().zip(&lts) {
            if divides(glm, &lm) {
                let c = &lc / glc;
                h = h.sub(&g.mul_term(&sub_exp(&lm, glm), &c));
                continue 'outer;
            }
        }
        out.add_term(lm.clone(), lc.clone());
        h.add_term(lm, -lc);
    }
    out
}

fn spoly(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let (flm, flc) = f.leading_term(order).unwrap();
    let (glm, glc) = g.leading_term(order).unwrap();
    let l = lcm_exp(&flm, &glm);
    let a = f.mul_term(&sub_exp(&l, &flm), &flc.recip());
    let b = g.mul_term(&sub_exp(&l, &glm), &glc.recip());
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[Poly], order: MonomialOrder) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic(order))
        .collect();
    if g.is_empty() {
        return Vec::new();
    }
    let lm = |p: &Poly| p.leading_term(order).unwrap().0;
    let mut lms: Vec<Exp> = g.iter().map(|p| lm(p)).collect();
    let mut pending: BTreeSet<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while !pending.is_empty() {
        // Normal selection: smallest lcm under the order, ties by index.
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = lcm_exp(&lms[a], &lms[b]);
                let l2 = lcm_exp(&lms[c], &lms[d]);
                order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));
        done.insert((i, j));
        let l = lcm_exp(&lms[i], &lms[j]);
        // Coprime criterion.
        if l == lms[i].iter().zip(&lms[j]).map(|(a, b)| a + b).collect::<Exp>() {
            continue;
        }
        // Chain criterion.
        let chained = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(&lms[k], &l)
                && done.contains(&(k.min(i), k.max(i)))
                && done.contains(&(k.min(j), k.max(j)))
        });
        if chained {
            continue;
        }
        let r = normal_form(&spoly(&g[i], &g[j], order), &g, order);
        if !r.is_zero() {
            let r = r.monic(order);
            let t = g.len();
            lms.push(lm(&r));
            g.push(r);
            pending.extend((0..t).map(|k| (k, t)));
        }
    }
    reduce_basis(g, order)
}

/// Minimalize and tail-reduce a Gröbner basis into the reduced basis.
fn reduce_basis(g: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    let lms: Vec<Exp> = g.iter().map(|p| p.leading_term(order).unwrap().0).collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..g.len() {
        let redundant = (0..g.len())
            .any(|j| j != i && divides(&lms[j], &lms[i]) && (lms[j] != lms[i] || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let mut minimal: Vec<Poly> = keep.iter().map(|&i| g[i].clone()).collect();
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if !others.is_empty() {
            minimal[i] = normal_form(&minimal[i], &others, order).monic(order);
        }
    }
    minimal.retain(|p| !p.is_zero());
    minimal.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order.cmp(&lb, &la)
    });
    minimal
}

/// Does the (Gröbner) basis generate the unit ideal?
pub fn contains_one(gb: &[Poly]) -> bool {
    gb.iter().any(|p| !p.is_zero() && p.total_degree() == 0)
}

/// Ideal membership via normal form against a Gröbner basis.
pub fn ideal_contains(p: &Poly, gb: &[Poly], order: MonomialOrder) -> bool {
    if gb.is_empty() {
        return p.is_zero();
    }
    normal_form(p, gb, order).is_zero()
}

/// Generators of the elimination ideal `I ∩ K[x_i : i ∉ elim]`, returned in
/// the original variable indexing.
pub fn eliminate(gens: &[Poly], elim: &[usize]) -> Vec<Poly> {
    let nvars = gens.first().map_or(0, Poly::nvars);
    let elim_set: BTreeSet<usize> = elim.iter().copied().collect();
    let k = elim_set.len();
    // Send eliminated variables to the front block, kept ones behind.
    let mut perm = vec![0usize; nvars];
    let mut front = 0;
    let mut back = k;
    for i in 0..nvars {
        if elim_set.contains(&i) {
            perm[i] = front;
            front += 1;
        } else {
            perm[i] = back;
            back += 1;
        }
    }
    let permuted: Vec<Poly> = gens.iter().map(|p| p.permute_vars(&perm)).collect();
    let gb = groebner(&permuted, MonomialOrder::Block(k));
    let mut inv = vec![0usize; nvars];
    for (i, &pi) in perm.iter().enumerate() {
        inv[pi] = i;
    }
    gb.into_iter()
        .filter(|p| p.support_vars().iter().all(|&v| v >= k))
        .map(|p| p.permute_vars(&inv))
        .collect()
}

/// Saturation `I : f^∞`.
pub fn saturate(gens: &[Poly], f: &Poly) -> Vec<Poly> {
    let n = f.nvars();
    let mut lifted: Vec<Poly> = gens.iter().map(|p| p.extend_vars(1)).collect();
    // 1 - t * f with t the fresh last variable.
    let t = Poly::var(n + 1, n);
    lifted.push(Poly::one(n + 1).sub(&t.mul(&f.extend_vars(1))));
    eliminate(&lifted, &[n])
        .into_iter()
        .map(|p| p.restrict_vars(n))
        .collect()
}

/// Intersection of two ideals in the same variable set.
pub fn intersect(a: &[Poly], b: &[Poly], nvars: usize) -> Vec<Poly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let t = Poly::var(nvars + 1, nvars);
    let one_minus_t = Poly::one(nvars + 1).sub(&t);
    let mut gens: Vec<Poly> = a.iter().map(|p| p.extend_vars(1).mul(&t)).collect();
    gens.extend(b.iter().map(|p| p.extend_vars(1).mul(&one_minus_t)));
    eliminate(&gens, &[nvars])
        .into_iter()
        .map(|p| p.restrict_vars(nvars))
        .collect()
}

/// Saturate a homogeneous ideal by the irrelevant maximal ideal
/// `(x1, ..., xn)`, removing any component supported at the origin alone.
pub fn saturate_irrelevant(gens: &[Poly], nvars: usize) -> Result<Vec<Poly>> {
    if gens.iter().any(|p| !p.is_homogeneous()) {
        return Err(Error::NonHomogeneous);
    }
    let live: Vec<&Poly> = gens.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        return Ok(Vec::new());
    }
    let mut acc: Option<Vec<Poly>> = None;
    for k in 0..nvars {
        let sat = saturate(gens, &Poly::var(nvars, k));
        acc = Some(match acc {
            None => sat,
            Some(cur) => intersect(&cur, &sat, nvars),
        });
    }
    Ok(groebner(&acc.unwrap_or_default(), MonomialOrder::GrevLex))
}

/// Radical membership test: is `f` in the radical of the ideal?
pub fn radical_membership(gens: &[Poly], f: &Poly) -> bool {
    let n = f.nvars();
    if f.is_zero() {
        return true;
    }
    let mut lifted: Vec<Poly> = gens.iter().map(|p| p.extend_vars(1)).collect();
    let t = Poly::var(n + 1, n);
    lifted.push(Poly::one(n + 1).sub(&t.mul(&f.extend_vars(1))));
    contains_one(&groebner(&lifted, MonomialOrder::GrevLex))
}

/// Krull dimension of the affine variety of the ideal inside `nvars`-space:
/// `-1` for the unit ideal, `nvars` for the zero ideal, and otherwise the
/// largest number of variables independent modulo the leading-term ideal.
pub fn ideal_dimension(gens: &[Poly], nvars: usize) -> i64 {
    let gb = groebner(gens, MonomialOrder::GrevLex);
    if contains_one(&gb) {
        return -1;
    }
    if gb.is_empty() {
        return nvars as i64;
    }
    let supports: Vec<u32> = gb
        .iter()
        .map(|p| {
            let lm = p.leading_term(MonomialOrder::GrevLex).unwrap().0;
            lm.iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .fold(0u32, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let mut best = 0i64;
    for mask in 0u32..(1 << nvars) {
        if supports.iter().all(|&s| s & !mask != 0) {
            best = best.max(mask.count_ones() as i64);
        }
    }
    best
}

/// Monomials outside the leading-term ideal of a zero-dimensional Gröbner
/// basis; errors if the quotient is not finite-dimensional.
pub fn quotient_basis(gb: &[Poly], order: MonomialOrder, nvars: usize) -> Result<Vec<Exp>> {
    if contains_one(gb) {
        return Ok(Vec::new());
    }
    let lms: Vec<Exp> = gb
        .iter()
        .map(|p| p.leading_term(order).unwrap().0)
        .collect();
    for i in 0..nvars {
        let has_pure_power = lms
            .iter()
            .any(|lm| lm.iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if !has_pure_power {
            return Err(Error::NotZeroDimensional);
        }
    }
    let mut basis: BTreeSet<Exp> = BTreeSet::new();
    let mut queue: Vec<Exp> = vec![vec![0; nvars]];
    while let Some(e) = queue.pop() {
        if basis.contains(&e) || lms.iter().any(|lm| divides(lm, &e)) {
            continue;
        }
        for i in 0..nvars {
            let mut ne = e.clone();
            ne[i] += 1;
            queue.push(ne);
        }
        basis.insert(e);
    }
    Ok(basis.into_iter().collect())
}

/// Univariate polynomial helpers on ascending coefficient vectors.
mod univariate {
    use super::Scalar;
    use num::{One, Zero};

    fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
        while v.last().is_some_and(Scalar::is_zero) {
            v.pop();
        }
        v
    }

    fn monic(v: Vec<Scalar>) -> Vec<Scalar> {
        let v = trim(v);
        match v.last() {
            None => v,
            Some(lc) => {
                let inv = lc.recip();
                v.iter().map(|c| c * &inv).collect()
            }
        }
    }

    pub fn derivative(p: &[Scalar]) -> Vec<Scalar> {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_integer(num::BigInt::from(i)))
                .collect(),
        )
    }

    pub fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "univariate division by zero");
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lb = b.last().unwrap().clone();
        while r.len() > db {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            let f = &lr / &lb;
            for (i, bc) in b.iter().enumerate() {
                let v = &r[shift + i] - &(&f * bc);
                r[shift + i] = v;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut x = monic(a.to_vec());
        let mut y = monic(b.to_vec());
        while !y.is_empty() {
            let r = monic(rem(&x, &y));
            x = y;
            y = r;
        }
        x
    }

    /// Exact quotient; the divisor must divide.
    pub fn div_exact(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lb = b.last().unwrap().clone();
        let mut q = vec![Scalar::zero(); r.len().saturating_sub(db)];
        while r.len() > db {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            let f = &lr / &lb;
            q[shift] = f.clone();
            for (i, bc) in b.iter().enumerate() {
                let v = &r[shift + i] - &(&f * bc);
                r[shift + i] = v;
            }
            r = trim(r);
        }
        assert!(r.is_empty(), "inexact univariate division");
        trim(q)
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(p: &[Scalar]) -> Vec<Scalar> {
        let p = monic(p.to_vec());
        if p.len() <= 1 {
            return p;
        }
        let g = gcd(&p, &derivative(&p));
        if g.len() <= 1 {
            return p;
        }
        monic(div_exact(&p, &g))
    }

    pub fn one() -> Vec<Scalar> {
        vec![Scalar::one()]
    }
}

/// Minimal polynomial of variable `x_{var+1}` modulo a zero-dimensional
/// ideal, as ascending univariate coefficients (monic).
fn minimal_poly_of_var(
    gb: &[Poly],
    order: MonomialOrder,
    nvars: usize,
    var: usize,
    qbasis: &[Exp],
) -> Vec<Scalar> {
    use num::One;
    if qbasis.is_empty() {
        // Unit ideal: the minimal polynomial is 1.
        return univariate::one();
    }
    let index: std::collections::BTreeMap<&Exp, usize> =
        qbasis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let dim = qbasis.len();
    let to_vec = |p: &Poly| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (e, c) in p.terms() {
            v[*index.get(e).expect("normal form outside quotient basis")] = c.clone();
        }
        v
    };
    let x = Poly::var(nvars, var);
    let mut power = Poly::one(nvars);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    loop {
        let nf = normal_form(&power, gb, order);
        let v = to_vec(&nf);
        // Try to express v over the accumulated rows.
        let k = rows.len();
        if k > 0 {
            let m = Mat::from_rows(dim, rows.clone()).transpose();
            if let Some(c) = m.solve(&v) {
                // x^k = sum c_l x^l mod I  =>  m(T) = T^k - sum c_l T^l.
                let mut coeffs = c;
                for cc in coeffs.iter_mut() {
                    *cc = -cc.clone();
                }
                coeffs.push(Scalar::one());
                return coeffs;
            }
        } else if v.iter().all(Scalar::is_zero) {
            // 1 lies in the ideal.
            return univariate::one();
        }
        rows.push(v);
        power = normal_form(&power.mul(&x), gb, order);
        assert!(rows.len() <= dim, "minimal polynomial search exceeded quotient dimension");
    }
}

/// Reduced Gröbner basis of the radical of a zero-dimensional ideal.
pub fn zero_dim_radical(gens: &[Poly], nvars: usize) -> Result<Vec<Poly>> {
    let order = MonomialOrder::GrevLex;
    let gb = groebner(gens, order);
    if contains_one(&gb) {
        return Ok(gb);
    }
    if gb.is_empty() {
        return Err(Error::NotZeroDimensional);
    }
    let qbasis = quotient_basis(&gb, order, nvars)?;
    let mut additions: Vec<Poly> = Vec::new();
    for var in 0..nvars {
        let m = minimal_poly_of_var(&gb, order, nvars, var, &qbasis);
        let sf = univariate::squarefree_part(&m);
        if sf.len() < m.len() {
            let mut p = Poly::zero(nvars);
            for (k, c) in sf.iter().enumerate() {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                p.add_term(e, c.clone());
            }
            additions.push(p);
        }
    }
    if additions.is_empty() {
        return Ok(gb);
    }
    let mut all = gb;
    all.extend(additions);
    Ok(groebner(&all, order))
}

/// The space of homogeneous linear forms contained in the ideal, as a
/// subspace of coefficient vectors in `nvars`-space.
pub fn linear_part(gens: &[Poly], nvars: usize) -> Subspace {
    let gb = groebner(gens, MonomialOrder::GrevLex);
    if contains_one(&gb) {
        return Subspace::full(nvars);
    }
    // Degree-compatible order: every affine-linear element of the ideal is a
    // constant combination of the degree <= 1 basis elements.
    let rows: Vec<Vec<Scalar>> = gb
        .iter()
        .filter(|p| p.total_degree() <= 1)
        .filter_map(|p| {
            p.as_linear().map(|(c, coeffs)| {
                let mut row = vec![c];
                row.extend(coeffs);
                row
            })
        })
        .collect();
    if rows.is_empty() {
        return Subspace::zero(nvars);
    }
    let affine = Subspace::span(nvars + 1, &rows);
    let no_constant = {
        let rows: Vec<Vec<Scalar>> = (1..=nvars)
            .map(|i| {
                let mut v = vec![Scalar::zero(); nvars + 1];
                v[i] = num::One::one();
                v
            })
            .collect();
        Subspace::span(nvars + 1, &rows)
    };
    let homogeneous = affine.meet(&no_constant);
    let rows: Vec<Vec<Scalar>> = (0..homogeneous.dim())
        .map(|i| homogeneous.basis().row(i)[1..].to_vec())
        .collect();
    Subspace::span(nvars, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::vec_i;

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, s).unwrap()
    }

    fn gb(n: usize, gens: &[&str]) -> Vec<Poly> {
        let gens: Vec<Poly> = gens.iter().map(|s| p(n, s)).collect();
        groebner(&gens, MonomialOrder::GrevLex)
    }

    fn strs(polys: &[Poly]) -> Vec<String> {
        polys.iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn groebner_of_circle_pair() {
        // (x^2 + y^2, xy) needs the S-polynomial y^3.
        let g = gb(2, &["x1^2 + x2^2", "x1*x2"]);
        assert_eq!(strs(&g), vec!["x2^3", "x1^2 + x2^2", "x1*x2"]);
    }

    #[test]
    fn groebner_is_generator_order_invariant() {
        let a = gb(3, &["x1 + 2*x2", "x1*x3", "x2*x3 - x3"]);
        let b = gb(3, &["x2*x3 - x3", "x1*x3", "x1 + 2*x2"]);
        assert_eq!(strs(&a), strs(&b));
    }

    #[test]
    fn membership_and_unit_detection() {
        let g = gb(2, &["x1^2 + x2^2", "x1*x2"]);
        assert!(ideal_contains(&p(2, "x2^3"), &g, MonomialOrder::GrevLex));
        assert!(!ideal_contains(&p(2, "x2^2"), &g, MonomialOrder::GrevLex));
        let unit = gb(2, &["x1", "x1 + 1"]);
        assert!(contains_one(&unit));
        assert_eq!(strs(&unit), vec!["1"]);
    }

    #[test]
    fn elimination_of_a_parametrization() {
        // x = t^2, y = t^3 eliminates to the cuspidal cubic.
        let gens = vec![p(3, "x2 - x1^2"), p(3, "x3 - x1^3")];
        let el = eliminate(&gens, &[0]);
        assert_eq!(strs(&el), vec!["x2^3 - x3^2"]);
    }

    #[test]
    fn saturation_clears_embedded_factor() {
        let gens = vec![p(2, "x1^2*x2"), p(2, "x1*x2^2")];
        let s = saturate(&gens, &p(2, "x1"));
        assert_eq!(strs(&groebner(&s, MonomialOrder::GrevLex)), vec!["x2"]);
    }

    #[test]
    fn irrelevant_saturation_recovers_cone() {
        let gens = vec![
            p(3, "x2*x1^2 + x2*x3^2"),
            p(3, "x1^3 + x1*x3^2"),
            p(3, "x3*x1^2 + x3^3"),
        ];
        // The variety is the cone x1^2 + x3^2 = 0 together with the origin.
        let s = saturate_irrelevant(&gens, 3).unwrap();
        assert_eq!(strs(&s), vec!["x1^2 + x3^2"]);
        assert!(matches!(
            saturate_irrelevant(&[p(2, "x1^2 - x2")], 2),
            Err(Error::NonHomogeneous)
        ));
    }

    #[test]
    fn radical_membership_on_products() {
        let gens: Vec<Poly> = ["x2", "x1", "x3"]
            .iter()
            .map(|v| p(3, &format!("{}*x2^2 + {}*x3^2", v, v)))
            .collect();
        assert!(radical_membership(&gens, &p(3, "x2^2 + x3^2")));
        assert!(!radical_membership(&gens, &p(3, "x1")));
        assert!(!radical_membership(&gens, &p(3, "x2 + x3")));
        assert!(radical_membership(&gens, &Poly::zero(3)));
    }

    #[test]
    fn dimensions_of_reference_ideals() {
        assert_eq!(ideal_dimension(&[], 3), 3);
        assert_eq!(ideal_dimension(&[Poly::one(3)], 3), -1);
        assert_eq!(ideal_dimension(&[p(3, "x1")], 3), 2);
        assert_eq!(ideal_dimension(&[p(2, "x1^2 + x2^2"), p(2, "x1*x2")], 2), 0);
        // Cone over two skew planes: dimension two.
        let gens: Vec<Poly> = ["x2", "x1", "x3"]
            .iter()
            .map(|v| p(3, &format!("{}*x2^2 + {}*x3^2", v, v)))
            .collect();
        assert_eq!(ideal_dimension(&gens, 3), 2);
    }

    #[test]
    fn quotient_basis_of_fat_origin() {
        let g = gb(2, &["x1^2 + x2^2", "x1*x2"]);
        let qb = quotient_basis(&g, MonomialOrder::GrevLex, 2).unwrap();
        assert_eq!(qb, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]);
        let thin = gb(2, &["x1"]);
        assert!(matches!(
            quotient_basis(&thin, MonomialOrder::GrevLex, 2),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn radical_of_fat_origin_is_maximal() {
        let r = zero_dim_radical(&[p(2, "x1^2 + x2^2"), p(2, "x1*x2")], 2).unwrap();
        assert_eq!(strs(&r), vec!["x1", "x2"]);
    }

    #[test]
    fn radical_of_reduced_pair_is_unchanged() {
        let gens = vec![p(2, "x1^2 - 1"), p(2, "x2 - x1")];
        let r = zero_dim_radical(&gens, 2).unwrap();
        assert_eq!(strs(&r), vec!["x2^2 - 1", "x1 - x2"]);
        assert!(matches!(
            zero_dim_radical(&[p(2, "x1")], 2),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn linear_parts() {
        let u = linear_part(&[p(3, "x1 + 2*x2"), p(3, "x1*x3")], 3);
        assert_eq!(u.dim(), 1);
        assert!(u.contains(&vec_i(&[1, 2, 0])));
        // Radical of a single point (1, 3, 0): forms vanishing there.
        let point = vec![p(3, "x1 - 1"), p(3, "x2 - 3"), p(3, "x3")];
        let lp = linear_part(&point, 3);
        assert_eq!(lp.dim(), 2);
        assert!(lp.contains(&vec_i(&[-3, 1, 0])));
        assert!(lp.contains(&vec_i(&[0, 0, 1])));
        assert_eq!(linear_part(&[p(2, "x1*x2")], 2).dim(), 0);
        assert!(linear_part(&[Poly::one(2)], 2).is_full());
    }
}
