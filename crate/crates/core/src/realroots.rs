//! Real roots of squarefree integer polynomials via Sturm sequences.
//!
//! Everything here is exact: signs are taken on rational points with integer
//! arithmetic, and decimal output is only produced once an isolating interval is
//! narrow enough that both endpoints truncate to the same digits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::{Polynomial, Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A real root of an irreducible polynomial, pinned by an isolating interval.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: Polynomial,
    isol: Interval,
}

impl AlgebraicReal {
    /// Caller guarantees that `isol` isolates exactly one root of `minpoly`, with a
    /// sign change across it unless the interval is a single point.
    pub fn from_isolating(minpoly: Polynomial, isol: Interval) -> Self {
        AlgebraicReal { minpoly, isol }
    }

    pub fn minpoly(&self) -> &Polynomial {
        &self.minpoly
    }

    pub fn interval(&self) -> &Interval {
        &self.isol
    }

    pub fn is_rational(&self) -> bool {
        self.isol.is_point()
    }

    /// Exact value when the root is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.isol.is_point().then_some(&self.isol.lo)
    }

    fn bisect(&mut self) {
        if self.isol.is_point() {
            return;
        }
        let mid = self.isol.midpoint();
        match self.minpoly.sign_at(&mid) {
            Ordering::Equal => self.isol = Interval::point(mid),
            s if s == self.minpoly.sign_at(&self.isol.lo) => self.isol.lo = mid,
            _ => self.isol.hi = mid,
        }
    }

    /// Certified decimal truncated toward zero to `digits` fractional digits.
    ///
    /// Rational roots are printed as exact fractions instead.
    pub fn truncated_decimal(&self, digits: u32) -> String {
        if let Some(r) = self.as_rational() {
            return r.to_string();
        }
        let scale = BigInt::from(10).pow(digits);
        let eps = Rational::new(BigInt::one(), &scale * BigInt::from(10));
        let mut a = refine_to(self, &eps);
        loop {
            let (lo, hi) = (&a.isol.lo, &a.isol.hi);
            let same_sign =
                (lo.is_positive() && hi.is_positive()) || (lo.is_negative() && hi.is_negative());
            if same_sign {
                let tl = (lo * &scale).trunc();
                let th = (hi * &scale).trunc();
                if tl == th {
                    return format_scaled(tl.numer(), lo.is_negative(), digits);
                }
            }
            a.bisect();
            if let Some(r) = a.as_rational() {
                return r.to_string();
            }
        }
    }
}

fn format_scaled(t: &BigInt, negative: bool, digits: u32) -> String {
    let mag = t.abs().to_string();
    let width = digits as usize + 1;
    let padded = format!("{mag:0>width$}");
    let (int, frac) = padded.split_at(padded.len() - digits as usize);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Sign-change upper bounds for positive and negative roots.
pub fn descartes_bound(p: &Polynomial) -> (usize, usize) {
    (sign_changes(p), sign_changes(&p.reflect()))
}

fn sign_changes(p: &Polynomial) -> usize {
    let signs: Vec<bool> = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `p, p', -rem(p, p'), ...` with every member scaled by a positive integer.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn polys(&self) -> &[Polynomial] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations<F: Fn(&Polynomial) -> Ordering>(&self, sign: F) -> usize {
        let signs: Vec<Ordering> = self.chain.iter().map(sign).filter(|s| s.is_ne()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        self.variations(|q| q.sign_at(x))
    }

    /// Sign variations at `+inf` (`positive`) or `-inf`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        self.variations(|q| {
            let lead = q
                .leading()
                .map_or(Ordering::Equal, |c| c.cmp(&BigInt::zero()));
            let odd = q.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                lead.reverse()
            } else {
                lead
            }
        })
    }
}

/// Remainder of `|lc(b)|^(deg a - deg b + 1) * a` divided by `b`; exact over the integers.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let db = b.degree().expect("nonzero divisor");
    let da = a.degree().expect("nonzero dividend");
    let lc = b.leading().expect("nonzero").clone();
    let mut r: Vec<BigInt> = (a * &lc.abs().pow((da - db + 1) as u32)).coeffs().to_vec();
    while r.len() > db {
        let top = r.last().cloned().expect("nonempty");
        if top.is_zero() {
            r.pop();
            continue;
        }
        let q = &top / &lc;
        debug_assert!((&q * &lc) == top);
        let shift = r.len() - 1 - db;
        for (j, c) in b.coeffs().iter().enumerate() {
            r[shift + j] -= &q * c;
        }
        r.pop();
    }
    Polynomial::new(r)
}

pub fn sturm_chain(p: &Polynomial) -> Result<SturmChain> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(SturmChain { chain });
    }
    chain.push(d);
    loop {
        let n = chain.len();
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = pseudo_remainder(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let next = -&r;
        let content = next.content()?;
        let next = Polynomial::new(next.coeffs().iter().map(|c| c / &content).collect());
        chain.push(next);
    }
    Ok(SturmChain { chain })
}

/// Number of distinct roots of the chain's first member in the open interval.
pub fn count_roots_in(s: &SturmChain, iv: &Interval) -> Result<usize> {
    if iv.lo >= iv.hi {
        return Err(Error::Precondition(format!(
            "interval {iv} is empty or a point"
        )));
    }
    let p = &s.chain[0];
    for e in [&iv.lo, &iv.hi] {
        if p.sign_at(e).is_eq() {
            return Err(Error::EndpointIsRoot(e.clone()));
        }
    }
    Ok(s.variations_at(&iv.lo) - s.variations_at(&iv.hi))
}

/// `1 + max |a_j| / a_k`; every complex root lies strictly inside this radius.
pub fn cauchy_bound(p: &Polynomial) -> Rational {
    let lc = p.leading().expect("nonzero").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(BigInt::abs)
        .max()
        .unwrap_or_default();
    Rational::one() + Rational::new(max, lc)
}

/// All real roots of a squarefree polynomial in ascending order.
pub fn isolate_roots(p: &Polynomial) -> Result<Vec<AlgebraicReal>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        let root = Rational::new(-p.coeff(0), p.coeff(1));
        return Ok(vec![AlgebraicReal::from_isolating(
            p.clone(),
            Interval::point(root),
        )]);
    }
    let chain = sturm_chain(p)?;
    let m = cauchy_bound(p);
    let start = Interval::new(-m.clone(), m);
    let total = count_roots_in(&chain, &start)?;
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(start, total)];
    while let Some((iv, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(AlgebraicReal::from_isolating(p.clone(), iv)),
            _ => {
                let mid = split_point(p, &iv);
                if p.sign_at(&mid).is_eq() {
                    // only reachable for non-squarefree or rational-root inputs
                    return Err(Error::EndpointIsRoot(mid));
                }
                let left = Interval::new(iv.lo.clone(), mid.clone());
                let right = Interval::new(mid, iv.hi.clone());
                let cl = count_roots_in(&chain, &left)?;
                let cr = count - cl;
                stack.push((right, cr));
                stack.push((left, cl));
            }
        }
    }
    Ok(out)
}

/// Midpoint of `iv`, nudged right by `width / 2^t` while it lands on a root.
fn split_point(p: &Polynomial, iv: &Interval) -> Rational {
    let mid = iv.midpoint();
    if !p.sign_at(&mid).is_eq() {
        return mid;
    }
    let w = iv.width();
    let mut t = 2u32;
    loop {
        let cand = &mid + &w / BigInt::from(2).pow(t);
        if !p.sign_at(&cand).is_eq() {
            return cand;
        }
        t += 1;
    }
}

/// Bisects until the isolating interval is no wider than `eps`.
pub fn refine_to(a: &AlgebraicReal, eps: &Rational) -> AlgebraicReal {
    assert!(eps.is_positive(), "refinement width must be positive");
    let mut out = a.clone();
    while !out.isol.is_point() && out.isol.width() > *eps {
        out.bisect();
    }
    out
}

/// Total order on real algebraic numbers.
pub fn compare(a: &AlgebraicReal, b: &AlgebraicReal) -> Ordering {
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        if a.isol.is_point() && b.isol.is_point() {
            return a.isol.lo.cmp(&b.isol.lo);
        }
        if a.isol.hi < b.isol.lo
            || (a.isol.hi == b.isol.lo && !(a.isol.is_point() && b.isol.is_point()))
        {
            return Ordering::Less;
        }
        if b.isol.hi < a.isol.lo
            || (b.isol.hi == a.isol.lo && !(a.isol.is_point() && b.isol.is_point()))
        {
            return Ordering::Greater;
        }
        if a.minpoly == b.minpoly && shares_root(&a, &b) {
            return Ordering::Equal;
        }
        a.bisect();
        b.bisect();
    }
}

/// Same minimal polynomial and overlapping intervals: equal iff the overlap holds a root.
fn shares_root(a: &AlgebraicReal, b: &AlgebraicReal) -> bool {
    let lo = (&a.isol.lo).max(&b.isol.lo).clone();
    let hi = (&a.isol.hi).min(&b.isol.hi).clone();
    if lo > hi {
        return false;
    }
    if lo == hi {
        return a.minpoly.sign_at(&lo).is_eq();
    }
    let p = &a.minpoly;
    if p.sign_at(&lo).is_eq() || p.sign_at(&hi).is_eq() {
        return true;
    }
    p.sign_at(&lo) != p.sign_at(&hi)
}

/// `(base + sign * sqrt(disc)) / den` with `disc` a positive non-square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub base: BigInt,
    pub sign: Sign,
    pub disc: BigInt,
    pub den: BigInt,
}

impl QuadraticSurd {
    /// Decimal approximation with absolute error below `10^-digits`.
    pub fn approximate(&self, digits: u32) -> Rational {
        let guard = digits + 4;
        let scale = BigInt::from(10).pow(guard);
        let root = (&self.disc * &scale * &scale).sqrt();
        let num = &self.base * &scale + self.sign.apply(&root);
        Rational::new(num, &self.den * &scale)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{}sqrt({}))/{}",
            self.base,
            self.sign.symbol(),
            self.disc,
            self.den
        )
    }
}

/// Closed-form roots of `q x^2 + s1 a1 x + s2 N`, smaller root first.
pub fn quadratic_roots_closed_form(
    q: &BigInt,
    a1: &BigInt,
    n: &BigInt,
    s1: Sign,
    s2: Sign,
) -> Result<(QuadraticSurd, QuadraticSurd)> {
    if !q.is_positive() || a1.is_negative() || !n.is_positive() {
        return Err(Error::Precondition(format!(
            "quadratic needs q > 0, a1 >= 0, N > 0; got q={q}, a1={a1}, N={n}"
        )));
    }
    let disc = a1 * a1 - s2.apply(&(BigInt::from(4) * q * n));
    if !disc.is_positive() {
        return Err(Error::Precondition(format!(
            "discriminant {disc} is not positive"
        )));
    }
    let r = disc.sqrt();
    if &r * &r == disc {
        return Err(Error::Precondition(format!(
            "discriminant {disc} is a perfect square"
        )));
    }
    let base = -s1.apply(a1);
    let den = BigInt::from(2) * q;
    let make = |sign| QuadraticSurd {
        base: base.clone(),
        sign,
        disc: disc.clone(),
        den: den.clone(),
    };
    Ok((make(Sign::Minus), make(Sign::Plus)))
}
