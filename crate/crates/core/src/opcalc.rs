//! Exact calculus for the curvature-weighted operators
//! `box = sum_i (1/k_i) d^2/dx_i^2` and the bilinear pairing
//! `diamond(u, v) = sum_i (1/k_i) (d_i u)(d_i v)`, together with the
//! Leibniz-type expansion of `box^n(uv)` and its integer coefficient table.
//!
//! Everything here is exact rational arithmetic: the expansion is a
//! combinatorial identity and floating point would mask coefficient errors.

use alloc::vec::Vec;
use core::fmt;

use alloc::collections::BTreeMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub const MAX_VARS: usize = 3;
/// Exact-arithmetic budget for the polynomial expansion.
pub const MAX_EXPANSION_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpcalcError {
    DimensionMismatch,
    BudgetExceeded,
    ZeroCurvature,
    TooManyVars,
}

impl fmt::Display for OpcalcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpcalcError::DimensionMismatch => write!(f, "operands disagree on the variable count"),
            OpcalcError::BudgetExceeded => {
                write!(f, "expansion order exceeds the exact-arithmetic budget")
            }
            OpcalcError::ZeroCurvature => write!(f, "curvatures must all be nonzero"),
            OpcalcError::TooManyVars => write!(f, "at most {MAX_VARS} variables are supported"),
        }
    }
}

impl core::error::Error for OpcalcError {}

/// Multivariate polynomial with exact rational coefficients.
///
/// Zero-coefficient terms are never stored; the map keyed by exponent tuples
/// gives a canonical form, so equality is exact structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<[u16; MAX_VARS], Rat>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Result<Self, OpcalcError> {
        if n_vars == 0 || n_vars > MAX_VARS {
            return Err(OpcalcError::TooManyVars);
        }
        Ok(Self {
            n_vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(n_vars: usize, c: Rat) -> Result<Self, OpcalcError> {
        let mut p = Self::zero(n_vars)?;
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        Ok(p)
    }

    /// The monomial `x_var`.
    pub fn var(n_vars: usize, var: usize) -> Result<Self, OpcalcError> {
        let mut p = Self::zero(n_vars)?;
        if var >= n_vars {
            return Err(OpcalcError::DimensionMismatch);
        }
        let mut e = [0u16; MAX_VARS];
        e[var] = 1;
        p.terms.insert(e, Rat::one());
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16; MAX_VARS], &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: [u16; MAX_VARS], c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, OpcalcError> {
        if self.n_vars != o.n_vars {
            return Err(OpcalcError::DimensionMismatch);
        }
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        Ok(r)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self {
                n_vars: self.n_vars,
                terms: BTreeMap::new(),
            };
        }
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c *= s.clone();
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Result<Self, OpcalcError> {
        if self.n_vars != o.n_vars {
            return Err(OpcalcError::DimensionMismatch);
        }
        let mut r = Self::zero(self.n_vars)?;
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for i in 0..MAX_VARS {
                    e[i] += eb[i];
                }
                r.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(r)
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut r = Self {
            n_vars: self.n_vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut en = *e;
            en[var] -= 1;
            r.add_term(en, c.clone() * rat(e[var] as i64, 1));
        }
        r
    }

    /// Constant term (the value at the origin).
    pub fn eval_zero(&self) -> Rat {
        self.terms
            .get(&[0; MAX_VARS])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Truncated Taylor polynomial of `exp(x_0)` to the given order.
    pub fn exp_jet(n_vars: usize, order: usize) -> Result<Self, OpcalcError> {
        let mut p = Self::zero(n_vars)?;
        let mut c = Rat::one();
        for k in 0..=order {
            if k > 0 {
                c /= rat(k as i64, 1);
            }
            let mut e = [0u16; MAX_VARS];
            e[0] = k as u16;
            p.add_term(e, c.clone());
        }
        Ok(p)
    }
}

/// Nonzero principal curvatures, one per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvatures {
    inv: Vec<Rat>,
}

impl Curvatures {
    pub fn new(ks: Vec<Rat>) -> Result<Self, OpcalcError> {
        if ks.is_empty() || ks.len() > MAX_VARS {
            return Err(OpcalcError::TooManyVars);
        }
        if ks.iter().any(|k| k.is_zero()) {
            return Err(OpcalcError::ZeroCurvature);
        }
        Ok(Self {
            inv: ks.iter().map(|k| k.recip()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv.is_empty()
    }

    pub fn inv_k(&self, i: usize) -> &Rat {
        &self.inv[i]
    }
}

/// `box p = sum_i (1/k_i) d^2 p / dx_i^2`, exactly.
pub fn apply_box(p: &MultiPoly, kk: &Curvatures) -> Result<MultiPoly, OpcalcError> {
    if p.n_vars() != kk.len() {
        return Err(OpcalcError::DimensionMismatch);
    }
    let mut r = MultiPoly::zero(p.n_vars())?;
    for i in 0..kk.len() {
        let second = p.partial(i).partial(i);
        r = r.add(&second.scale(kk.inv_k(i)))?;
    }
    Ok(r)
}

/// `diamond(u, v) = sum_i (1/k_i) (d_i u)(d_i v)`, exactly.
pub fn apply_diamond(u: &MultiPoly, v: &MultiPoly, kk: &Curvatures) -> Result<MultiPoly, OpcalcError> {
    if u.n_vars() != kk.len() || v.n_vars() != kk.len() {
        return Err(OpcalcError::DimensionMismatch);
    }
    let mut r = MultiPoly::zero(u.n_vars())?;
    for i in 0..kk.len() {
        let prod = u.partial(i).mul(&v.partial(i))?;
        r = r.add(&prod.scale(kk.inv_k(i)))?;
    }
    Ok(r)
}

/// n-fold box.
pub fn box_power(p: &MultiPoly, n: usize, kk: &Curvatures) -> Result<MultiPoly, OpcalcError> {
    let mut r = p.clone();
    for _ in 0..n {
        r = apply_box(&r, kk)?;
    }
    Ok(r)
}

/// m-fold bilinear diamond on the ordered pair `(u, v)`:
/// `diamond^m(u, v) = sum_{|beta| = m} m!/beta! (prod k_i^-beta_i) d^beta u d^beta v`.
///
/// This is the multinomial expansion of applying
/// `sum_i (1/k_i) d_i (x) d_i` m times to the pair; `diamond^0` is the plain
/// product. It reproduces the univariate identities
/// `diamond^2(u,v) = box u box v` and
/// `diamond^{2j+1}(u,v) = diamond(box^j u, box^j v)`.
pub fn diamond_power(
    u: &MultiPoly,
    v: &MultiPoly,
    m: usize,
    kk: &Curvatures,
) -> Result<MultiPoly, OpcalcError> {
    if u.n_vars() != kk.len() || v.n_vars() != kk.len() {
        return Err(OpcalcError::DimensionMismatch);
    }
    if m == 0 {
        return u.mul(v);
    }
    let n_vars = kk.len();
    let mut result = MultiPoly::zero(n_vars)?;
    let mut beta = [0usize; MAX_VARS];
    enumerate_multi_indices(m, n_vars, 0, &mut beta, &mut |beta| {
        let mut du = u.clone();
        let mut dv = v.clone();
        let mut weight = multinomial(m, &beta[..n_vars]);
        for i in 0..n_vars {
            for _ in 0..beta[i] {
                du = du.partial(i);
                dv = dv.partial(i);
            }
            for _ in 0..beta[i] {
                weight *= kk.inv_k(i).clone();
            }
        }
        if du.is_zero() || dv.is_zero() {
            return Ok(());
        }
        let term = du.mul(&dv)?.scale(&weight);
        result = result.add(&term)?;
        Ok(())
    })?;
    Ok(result)
}

fn enumerate_multi_indices<F: FnMut(&[usize; MAX_VARS]) -> Result<(), OpcalcError>>(
    remaining: usize,
    n_vars: usize,
    pos: usize,
    beta: &mut [usize; MAX_VARS],
    f: &mut F,
) -> Result<(), OpcalcError> {
    if pos + 1 == n_vars {
        beta[pos] = remaining;
        f(beta)?;
        beta[pos] = 0;
        return Ok(());
    }
    for take in 0..=remaining {
        beta[pos] = take;
        enumerate_multi_indices(remaining - take, n_vars, pos + 1, beta, f)?;
    }
    beta[pos] = 0;
    Ok(())
}

fn multinomial(m: usize, beta: &[usize]) -> Rat {
    let mut num = Rat::one();
    for k in 2..=m {
        num *= rat(k as i64, 1);
    }
    for &b in beta {
        for k in 2..=b {
            num /= rat(k as i64, 1);
        }
    }
    num
}

/// Reference m-fold diamond by direct recursion
/// `D^m(u, v) = sum_i (1/k_i) D^{m-1}(d_i u, d_i v)`; used to cross-check the
/// multinomial form.
pub fn diamond_power_recursive(
    u: &MultiPoly,
    v: &MultiPoly,
    m: usize,
    kk: &Curvatures,
) -> Result<MultiPoly, OpcalcError> {
    if m == 0 {
        return u.mul(v);
    }
    let mut r = MultiPoly::zero(u.n_vars())?;
    for i in 0..kk.len() {
        let inner = diamond_power_recursive(&u.partial(i), &v.partial(i), m - 1, kk)?;
        r = r.add(&inner.scale(kk.inv_k(i)))?;
    }
    Ok(r)
}

/// Integer coefficient table `d_k^n` of the Leibniz-type expansion,
/// `1 <= k <= n+1`, with `d_1^n = 1` by convention.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    n_max: usize,
    /// d[n-1][k-1] holds d_k^n.
    d: Vec<Vec<i64>>,
}

/// Builds the table from the closed forms
/// `d_2^n = 2n`, `d_3^n = 2(n-2)(n+1) + 4`, `d_n^n = n 2^{n-1}` (n >= 4),
/// `d_{n+1}^n = 2^n`, and the recurrence
/// `d_k^n = 2 sum_{j=k}^{n-1} d_{k-1}^j + d_k^k` for `4 <= k <= n-1`.
pub fn leibniz_table(n_max: usize) -> CoeffTable {
    let n_max = n_max.max(1);
    let mut d: Vec<Vec<i64>> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut row = alloc::vec![0i64; n + 1];
        row[0] = 1; // d_1^n
        row[1] = 2 * n as i64; // d_2^n
        if n >= 2 {
            row[n] = 1i64 << n; // d_{n+1}^n
        }
        if n >= 3 {
            row[2] = 2 * (n as i64 - 2) * (n as i64 + 1) + 4; // d_3^n
        }
        if n >= 4 {
            row[n - 1] = n as i64 * (1i64 << (n - 1)); // d_n^n
        }
        for k in 4..n {
            // d_k^n = 2 sum_{j=k}^{n-1} d_{k-1}^j + d_k^k
            let mut acc = 0i64;
            for j in k..n {
                acc += d[j - 1][k - 2];
            }
            row[k - 1] = 2 * acc + d[k - 1][k - 1];
        }
        d.push(row);
    }
    CoeffTable { n_max, d }
}

impl CoeffTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `d_k^n` for `1 <= k <= n+1`.
    pub fn get(&self, k: usize, n: usize) -> i64 {
        assert!(n >= 1 && n <= self.n_max && k >= 1 && k <= n + 1);
        self.d[n - 1][k - 1]
    }

    /// Rows as `(n, k, d)` triples in table order.
    pub fn rows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for n in 1..=self.n_max {
            for k in 1..=n + 1 {
                out.push((n, k, self.get(k, n)));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionMode {
    Formula,
    BruteForce,
}

/// `box^n(u v)`, either by the Leibniz-type formula
/// `sum_{k=1}^{n+1} d_k^n diamond^{k-1} sum_a C(n-k+1, a) (box^{n-k+1-a} u, box^a v)`
/// or by brute-force iteration of `box` on the product. The two modes agree
/// exactly.
pub fn expand_box_power(
    u: &MultiPoly,
    v: &MultiPoly,
    n: usize,
    kk: &Curvatures,
    mode: ExpansionMode,
) -> Result<MultiPoly, OpcalcError> {
    if u.n_vars() != kk.len() || v.n_vars() != kk.len() {
        return Err(OpcalcError::DimensionMismatch);
    }
    if n > MAX_EXPANSION_ORDER {
        return Err(OpcalcError::BudgetExceeded);
    }
    match mode {
        ExpansionMode::BruteForce => box_power(&u.mul(v)?, n, kk),
        ExpansionMode::Formula => {
            if n == 0 {
                return u.mul(v);
            }
            let table = leibniz_table(n);
            // box powers are reused across all k
            let mut bu = Vec::with_capacity(n + 1);
            let mut bv = Vec::with_capacity(n + 1);
            bu.push(u.clone());
            bv.push(v.clone());
            for j in 1..=n {
                bu.push(apply_box(&bu[j - 1], kk)?);
                bv.push(apply_box(&bv[j - 1], kk)?);
            }
            let mut result = MultiPoly::zero(u.n_vars())?;
            for k in 1..=n + 1 {
                let coeff = rat(table.get(k, n), 1);
                let order = n + 1 - k; // binomial order of the inner sum
                let mut inner = MultiPoly::zero(u.n_vars())?;
                for a in 0..=order {
                    let c = rat(binomial(order, a), 1);
                    let pair = diamond_power(&bu[order - a], &bv[a], k - 1, kk)?;
                    inner = inner.add(&pair.scale(&c))?;
                }
                result = result.add(&inner.scale(&coeff))?;
            }
            Ok(result)
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}
