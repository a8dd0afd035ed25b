//! Irreducibility over the integers.
//!
//! [`is_irreducible`] screens for rational roots and then searches for factors of
//! degree `2..=deg/2` inside the Mignotte coefficient box. Candidates are generated
//! by interpolation from divisors of `p` at a few integer points, so only trial
//! divisors that could possibly divide `p` are tried.
//!
//! [`oracle_factor_search`] is an independent brute-force search used by the test
//! suites to cross-check verdicts.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intpoly::{Polynomial, Rational};

/// Evidence of reducibility: `factor * cofactor == input`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWitness {
    pub factor: Polynomial,
    pub cofactor: Polynomial,
}

impl FactorWitness {
    fn new(p: &Polynomial, factor: Polynomial) -> Self {
        let cofactor = p
            .exact_divide(&factor)
            .expect("factor is nonzero")
            .expect("factor divides input");
        let (df, dc) = (factor.degree().unwrap_or(0), cofactor.degree().unwrap_or(0));
        if df <= dc {
            FactorWitness { factor, cofactor }
        } else {
            FactorWitness {
                factor: cofactor,
                cofactor: factor,
            }
        }
    }

    pub fn product(&self) -> Polynomial {
        &self.factor * &self.cofactor
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(FactorWitness),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }

    pub fn witness(&self) -> Option<&FactorWitness> {
        match self {
            Irreducibility::Irreducible => None,
            Irreducibility::Reducible(w) => Some(w),
        }
    }
}

/// Positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots of `p`, ascending.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let mut roots = BTreeSet::new();
    let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.insert(Rational::zero());
    }
    let a0 = &p.coeffs()[shift];
    let lc = p.leading().expect("nonzero");
    if shift < deg {
        let dens = divisors(lc);
        for u in divisors(a0) {
            for v in &dens {
                for num in [u.clone(), -&u] {
                    let r = Rational::new(num, v.clone());
                    if !roots.contains(&r) && p.sign_at(&r).is_eq() {
                        roots.insert(r);
                    }
                }
            }
        }
    }
    roots.into_iter().collect()
}

/// Coefficient bound `a_k * 2^k * ceil(sqrt(1 + sum a_j^2))` for factors of `p`.
pub fn mignotte_bound(p: &Polynomial) -> BigInt {
    let k = p.degree().unwrap_or(0);
    let sumsq: BigInt = BigInt::one() + p.coeffs().iter().map(|c| c * c).sum::<BigInt>();
    let mut root = sumsq.sqrt();
    if &root * &root < sumsq {
        root += 1;
    }
    let lc = p.leading().cloned().unwrap_or_else(BigInt::one).abs();
    lc * (BigInt::one() << k) * root
}

/// Linear factor `v x - u` for the root `u/v`.
fn linear_factor(r: &Rational) -> Polynomial {
    Polynomial::new(vec![-r.numer().clone(), r.denom().clone()])
}

pub fn is_irreducible(p: &Polynomial) -> Result<Irreducibility> {
    p.ensure_canonical()?;
    let deg = p.degree().expect("canonical is nonzero");
    if deg == 0 {
        return Err(Error::Precondition(format!("{p} has degree 0")));
    }
    if deg == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if let Some(r) = rational_roots(p).last() {
        return Ok(Irreducibility::Reducible(FactorWitness::new(
            p,
            linear_factor(r),
        )));
    }
    if deg <= 3 {
        return Ok(Irreducibility::Irreducible);
    }
    let bound = mignotte_bound(p);
    for e in 2..=deg / 2 {
        if let Some(f) = search_factor_of_degree(p, e, &bound) {
            return Ok(Irreducibility::Reducible(FactorWitness::new(p, f)));
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// Integer sample points 0, 1, -1, 2, -2, ...
fn sample_points() -> impl Iterator<Item = BigInt> {
    (0i64..)
        .flat_map(|i| if i == 0 { vec![0] } else { vec![i, -i] })
        .map(BigInt::from)
}

/// Looks for a divisor of degree `e` with coefficients inside `[-bound, bound]`.
///
/// Any such divisor `d` satisfies `d(x_i) | p(x_i)` at every sample point and has a
/// leading coefficient dividing `a_k`; those values pin `d` down by interpolation.
fn search_factor_of_degree(p: &Polynomial, e: usize, bound: &BigInt) -> Option<Polynomial> {
    let points: Vec<(BigInt, BigInt)> = sample_points()
        .map(|x| {
            let v = p.eval_int(&x);
            (x, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .take(e)
        .collect();
    let xs: Vec<BigInt> = points.iter().map(|(x, _)| x.clone()).collect();

    // T(x) = prod (x - x_j); N_i(x) = prod_{j != i} (x - x_j); W_i = N_i(x_i)
    let lin = |x: &BigInt| Polynomial::new(vec![-x.clone(), BigInt::one()]);
    let t = xs
        .iter()
        .fold(Polynomial::constant(BigInt::one()), |acc, x| &acc * &lin(x));
    let basis: Vec<(Polynomial, BigInt)> = (0..e)
        .map(|i| {
            let n = xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Polynomial::constant(BigInt::one()), |acc, (_, x)| {
                    &acc * &lin(x)
                });
            let w = n.eval_int(&xs[i]);
            (n, w)
        })
        .collect();
    let denom = basis.iter().fold(BigInt::one(), |acc, (_, w)| acc.lcm(w));
    let scaled: Vec<Polynomial> = basis.iter().map(|(n, w)| n * &(&denom / w)).collect();
    let value_choices: Vec<Vec<BigInt>> = points
        .iter()
        .map(|(_, v)| {
            divisors(v)
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();
    let check_point = BigInt::from(2 + e as i64 + 1);
    let p_check = p.eval_int(&check_point);

    let lc_p = p.leading().expect("nonzero");
    for lc in divisors(lc_p) {
        if &lc > bound {
            break;
        }
        let base = &t * &(&lc * &denom);
        let mut idx = vec![0usize; e];
        loop {
            let mut num = base.clone();
            for (i, &k) in idx.iter().enumerate() {
                num = &num + &(&scaled[i] * &value_choices[i][k]);
            }
            if let Some(d) = divide_all(&num, &denom) {
                let in_box = d.coeffs().iter().all(|c| c.abs() <= *bound);
                let quick = p_check.is_zero() || {
                    let dv = d.eval_int(&check_point);
                    !dv.is_zero() && (&p_check % &dv).is_zero()
                };
                if in_box && quick {
                    if let Ok(Some(_)) = p.exact_divide(&d) {
                        return Some(d);
                    }
                }
            }
            // odometer over the divisor choices
            let mut pos = 0;
            while pos < e {
                idx[pos] += 1;
                if idx[pos] < value_choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == e {
                break;
            }
        }
    }
    None
}

fn divide_all(p: &Polynomial, d: &BigInt) -> Option<Polynomial> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        let (q, r) = c.div_rem(d);
        if !r.is_zero() {
            return None;
        }
        out.push(q);
    }
    Some(Polynomial::new(out))
}

/// Largest degree accepted by [`oracle_factor_search`].
pub const ORACLE_MAX_DEGREE: usize = 8;
/// Largest coefficient l1 norm accepted by [`oracle_factor_search`].
pub const ORACLE_MAX_L1: i64 = 64;

/// Brute-force factor search.
///
/// Tries every polynomial `d` with positive leading coefficient, degree between 1 and
/// `deg p / 2`, and coefficient l1 norm at most that of `p`, by exact long division.
pub fn oracle_factor_search(p: &Polynomial) -> Result<Irreducibility> {
    p.ensure_canonical()?;
    let deg = p.degree().expect("canonical is nonzero");
    if !(2..=ORACLE_MAX_DEGREE).contains(&deg) {
        return Err(Error::Precondition(format!(
            "oracle needs degree 2..={ORACLE_MAX_DEGREE}, got {p}"
        )));
    }
    let coeffs: Vec<i64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition(format!("coefficients of {p} too large")))?;
    let l1: i64 = coeffs.iter().map(|c| c.abs()).sum();
    if l1 > ORACLE_MAX_L1 {
        return Err(Error::Precondition(format!(
            "l1 norm of {p} exceeds {ORACLE_MAX_L1}"
        )));
    }
    let lc = coeffs[deg];
    let mut trial = Vec::new();
    for e in 1..=deg / 2 {
        trial.clear();
        trial.resize(e + 1, 0);
        for d_lc in 1..=lc.min(l1) {
            trial[e] = d_lc;
            if fill_lower(&coeffs, &mut trial, e, l1 - d_lc) {
                let factor = Polynomial::from_coeffs(&trial);
                return Ok(Irreducibility::Reducible(FactorWitness::new(p, factor)));
            }
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// Assigns `trial[0..j]` within the remaining l1 budget; true once a divisor is found.
fn fill_lower(p: &[i64], trial: &mut [i64], j: usize, budget: i64) -> bool {
    if j == 0 {
        return divides_i64(p, trial);
    }
    let slot = j - 1;
    for c in -budget..=budget {
        trial[slot] = c;
        if fill_lower(p, trial, slot, budget - c.abs()) {
            return true;
        }
    }
    trial[slot] = 0;
    false
}

/// Exact division test on ascending coefficient slices, `d` with nonzero leading term.
fn divides_i64(p: &[i64], d: &[i64]) -> bool {
    let dd = d.len() - 1;
    let lc = d[dd];
    let mut rem: [i64; ORACLE_MAX_DEGREE + 1] = [0; ORACLE_MAX_DEGREE + 1];
    rem[..p.len()].copy_from_slice(p);
    let pd = p.len() - 1;
    for shift in (0..=pd - dd).rev() {
        let top = rem[shift + dd];
        if top == 0 {
            continue;
        }
        if top % lc != 0 {
            return false;
        }
        let q = top / lc;
        for (j, &dc) in d.iter().enumerate() {
            rem[shift + j] -= q * dc;
        }
    }
    rem[..dd].iter().all(|&r| r == 0)
}
