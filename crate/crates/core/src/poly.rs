//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are stored canonically in a `BTreeMap` keyed by exponent vectors;
//! the monomial order used for leading terms, division, and Gröbner bases is
//! passed explicitly, so one polynomial value can be viewed under several
//! orders.

use crate::scalar::Scalar;
use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; length equals the number of variables.
pub type Exp = Vec<u32>;

/// Global monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `x1 > x2 > ... > xn`.
    GrevLex,
    /// Pure lexicographic, `x1 > x2 > ... > xn`.
    Lex,
    /// Product order: grevlex on the first `k` variables dominates, then
    /// grevlex on the rest. An elimination order for the first block.
    Block(usize),
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            // Smaller exponent in the last differing slot means larger monomial.
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compare two exponent vectors of equal length.
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::Lex => {
                for i in 0..a.len() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(k) => match grevlex_cmp(&a[..k], &b[..k]) {
                Ordering::Equal => grevlex_cmp(&a[k..], &b[k..]),
                o => o,
            },
        }
    }
}

/// A sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exp, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    /// The affine-linear polynomial `constant + sum coeffs[i] * x_{i+1}`.
    pub fn from_linear(constant: Scalar, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::constant(n, constant);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `c * x^e` in place.
    pub fn add_term(&mut self, e: Exp, c: Scalar) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += c;
                if entry.get().is_zero() {
                    entry.remove();
                }
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the single term `c * x^e`.
    pub fn mul_term(&self, e: &[u32], c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(te, tc)| {
                    let ne: Exp = te.iter().zip(e).map(|(a, b)| a + b).collect();
                    (ne, tc * c)
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &other.terms {
            for (se, sc) in &self.terms {
                let ne: Exp = se.iter().zip(e).map(|(a, b)| a + b).collect();
                out.add_term(ne, sc * c);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under `order`, as a cloned (exponent, coefficient) pair.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Exp, Scalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Divide by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// If the polynomial is affine-linear, its (constant, coefficients) split.
    pub fn as_linear(&self) -> Option<(Scalar, Vec<Scalar>)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut constant = Scalar::zero();
        let mut coeffs = vec![Scalar::zero(); self.nvars];
        for (e, c) in &self.terms {
            match e.iter().position(|&x| x > 0) {
                None => constant = c.clone(),
                Some(i) => coeffs[i] = c.clone(),
            }
        }
        Some((constant, coeffs))
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Relabel variables: old index `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.nvars);
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = vec![0; self.nvars];
                    for (i, &x) in e.iter().enumerate() {
                        ne[perm[i]] = x;
                    }
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Append `extra` fresh variables (exponent zero everywhere).
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.extend(std::iter::repeat(0).take(extra));
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Drop trailing variables, which must not occur.
    pub fn restrict_vars(&self, new_nvars: usize) -> Poly {
        assert!(new_nvars <= self.nvars);
        Poly {
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(
                        e[new_nvars..].iter().all(|&x| x == 0),
                        "restricted variable still occurs"
                    );
                    (e[..new_nvars].to_vec(), c.clone())
                })
                .collect(),
        }
    }

    /// Substitute `images[i]` for `x_{i+1}`; all images must share a variable
    /// count, which becomes the variable count of the result.
    pub fn subst(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Parse from the textual format produced by `Display`, e.g.
    /// `"3/2*x1^2*x3 - x2"`.
    pub fn parse(nvars: usize, s: &str) -> Result<Poly, String> {
        let mut p = Poly::zero(nvars);
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let read_uint = |i: &mut usize| -> Result<u64, String> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            if *i == start {
                return Err(format!("expected a number at position {start}"));
            }
            chars[start..*i]
                .iter()
                .collect::<String>()
                .parse::<u64>()
                .map_err(|e| e.to_string())
        };
        skip_ws(&mut i);
        if i == chars.len() {
            return Err("empty polynomial".into());
        }
        let mut first = true;
        while i < chars.len() {
            // sign
            let mut negative = false;
            skip_ws(&mut i);
            if !first || matches!(chars.get(i), Some('+') | Some('-')) {
                match chars.get(i) {
                    Some('+') => i += 1,
                    Some('-') => {
                        negative = true;
                        i += 1;
                    }
                    _ if first => {}
                    other => return Err(format!("expected '+' or '-', found {other:?}")),
                }
            }
            first = false;
            // factors separated by '*'
            let mut coeff = Scalar::one();
            let mut exp = vec![0u32; nvars];
            loop {
                skip_ws(&mut i);
                match chars.get(i) {
                    Some('x') => {
                        i += 1;
                        let v = read_uint(&mut i)? as usize;
                        if v == 0 || v > nvars {
                            return Err(format!("variable x{v} out of range 1..={nvars}"));
                        }
                        let mut power = 1u64;
                        if chars.get(i) == Some(&'^') {
                            i += 1;
                            power = read_uint(&mut i)?;
                        }
                        exp[v - 1] += power as u32;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let num = read_uint(&mut i)?;
                        let mut den = 1u64;
                        if chars.get(i) == Some(&'/') {
                            i += 1;
                            den = read_uint(&mut i)?;
                            if den == 0 {
                                return Err("zero denominator".into());
                            }
                        }
                        coeff *= crate::scalar::frac(num as i64, den as i64);
                    }
                    other => return Err(format!("expected a factor, found {other:?}")),
                }
                skip_ws(&mut i);
                if chars.get(i) == Some(&'*') {
                    i += 1;
                } else {
                    break;
                }
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut exps: Vec<&Exp> = self.terms.keys().collect();
        exps.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b, a));
        for (idx, e) in exps.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c < &Scalar::zero();
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(mag.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 1 {
                    factors.push(format!("x{}", i + 1));
                } else if x > 1 {
                    factors.push(format!("x{}^{}", i + 1, x));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact quotient `p / q`; panics if `q` does not divide `p`.
pub fn div_exact(p: &Poly, q: &Poly, order: MonomialOrder) -> Poly {
    assert!(!q.is_zero(), "division by the zero polynomial");
    let (qlm, qlc) = q.leading_term(order).unwrap();
    let mut rem = p.clone();
    let mut quot = Poly::zero(p.nvars());
    while !rem.is_zero() {
        let (rlm, rlc) = rem.leading_term(order).unwrap();
        let diff: Option<Exp> = rlm
            .iter()
            .zip(&qlm)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        let Some(e) = diff else {
            panic!("inexact polynomial division");
        };
        let c = &rlc / &qlc;
        quot.add_term(e.clone(), c.clone());
        rem = rem.sub(&q.mul_term(&e, &c));
    }
    quot
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn det_poly(m: &[Vec<Poly>], order: MonomialOrder) -> Poly {
    let n = m.len();
    let nvars = if n == 0 { 0 } else { m[0][0].nvars() };
    if n == 0 {
        return Poly::one(nvars);
    }
    for row in m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        // Pivot selection: first row with a nonzero entry in column k.
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero(nvars);
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = div_exact(&num, &prev, order);
            }
        }
        for i in k + 1..n {
            a[i][k] = Poly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, s).unwrap()
    }

    #[test]
    fn grevlex_orders_classic_examples() {
        let ord = MonomialOrder::GrevLex;
        // x1 > x2 in degree one
        assert_eq!(ord.cmp(&[1, 0], &[0, 1]), Ordering::Greater);
        // x1*x3 < x2^2 under grevlex (same degree, last difference favors x2^2)
        assert_eq!(ord.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        // higher total degree always wins
        assert_eq!(ord.cmp(&[0, 0, 3], &[1, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn lex_and_block_orders() {
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0, 9], &[0, 5, 0]), Ordering::Greater);
        // Block(1): the first variable dominates regardless of total degree
        let b = MonomialOrder::Block(1);
        assert_eq!(b.cmp(&[1, 0, 0], &[0, 7, 7]), Ordering::Greater);
        assert_eq!(b.cmp(&[2, 0, 1], &[2, 3, 0]), Ordering::Less);
    }

    #[test]
    fn parse_display_round_trip() {
        let q = p(3, "3/2*x1^2*x3 - x2");
        assert_eq!(q.to_string(), "3/2*x1^2*x3 - x2");
        assert_eq!(q.coeff(&[2, 0, 1]), frac(3, 2));
        assert_eq!(q.coeff(&[0, 1, 0]), int(-1));
        assert_eq!(p(2, "0").to_string(), "0");
        assert_eq!(p(2, "x1 - x1").to_string(), "0");
        assert_eq!(p(2, "-x1 + 5").to_string(), "-x1 + 5");
        assert!(Poly::parse(2, "x3").is_err());
        assert!(Poly::parse(2, "x1 +").is_err());
    }

    #[test]
    fn arithmetic_and_substitution() {
        let f = p(2, "x1^2 + x2");
        let images = vec![p(2, "x1 + x2"), p(2, "x1*x2")];
        assert_eq!(f.subst(&images), p(2, "x1^2 + 3*x1*x2 + x2^2"));
        assert_eq!(f.eval(&[int(2), int(3)]), int(7));
        assert_eq!(f.mul(&f), p(2, "x1^4 + 2*x1^2*x2 + x2^2"));
        assert!(p(2, "x1^2 + x1*x2").is_homogeneous());
        assert!(!f.is_homogeneous());
    }

    #[test]
    fn linear_split() {
        let f = p(3, "2*x1 - x3 + 4");
        let (c, coeffs) = f.as_linear().unwrap();
        assert_eq!(c, int(4));
        assert_eq!(coeffs, vec![int(2), int(0), int(-1)]);
        assert!(p(3, "x1*x2").as_linear().is_none());
    }

    #[test]
    fn exact_division() {
        let ord = MonomialOrder::GrevLex;
        let f = p(2, "x1^2 - x2^2");
        let g = p(2, "x1 - x2");
        assert_eq!(div_exact(&f, &g, ord), p(2, "x1 + x2"));
        assert_eq!(div_exact(&Poly::zero(2), &g, ord), Poly::zero(2));
    }

    #[test]
    fn polynomial_determinants() {
        let ord = MonomialOrder::GrevLex;
        // [[x1, x2], [x3, x1]] -> x1^2 - x2*x3
        let m = vec![
            vec![p(3, "x1"), p(3, "x2")],
            vec![p(3, "x3"), p(3, "x1")],
        ];
        assert_eq!(det_poly(&m, ord), p(3, "x1^2 - x2*x3"));
        // singular matrix
        let s = vec![
            vec![p(2, "x1"), p(2, "x2")],
            vec![p(2, "2*x1"), p(2, "2*x2")],
        ];
        assert_eq!(det_poly(&s, ord), Poly::zero(2));
        // 3x3 Vandermonde-flavored exercise for the exact divisions
        let v = vec![
            vec![p(3, "1"), p(3, "x1"), p(3, "x1^2")],
            vec![p(3, "1"), p(3, "x2"), p(3, "x2^2")],
            vec![p(3, "1"), p(3, "x3"), p(3, "x3^2")],
        ];
        let expect = p(3, "x2 - x1")
            .mul(&p(3, "x3 - x1"))
            .mul(&p(3, "x3 - x2"));
        assert_eq!(det_poly(&v, ord), expect);
        // zero column with sign bookkeeping
        let z = vec![
            vec![Poly::zero(1), p(1, "x1")],
            vec![Poly::zero(1), p(1, "1")],
        ];
        assert_eq!(det_poly(&z, ord), Poly::zero(1));
    }

    #[test]
    fn variable_plumbing() {
        let f = p(3, "x1*x3 + x2");
        let g = f.permute_vars(&[2, 1, 0]);
        assert_eq!(g, p(3, "x3*x1 + x2"));
        let ext = f.extend_vars(2);
        assert_eq!(ext.nvars(), 5);
        assert_eq!(ext.restrict_vars(3), f);
        assert_eq!(f.support_vars(), vec![0, 1, 2]);
        assert_eq!(p(3, "x2").support_vars(), vec![1]);
    }
}
