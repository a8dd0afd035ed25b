//! Candidate polynomials of a given height and degree.
//!
//! A candidate is built from a relatively prime composition of `K = n - k + 1`,
//! a placement of its parts into the coefficient slots `a_k..a_0`, and a sign for
//! every nonzero non-leading part. [`classify`] then decides whether it is primitive,
//! irreducible and has real roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intpoly::{Polynomial, Sign};
use crate::irreducibility::{is_irreducible, FactorWitness, Irreducibility};
use crate::ordering::{composition_order, partitions_with_parts};
use crate::realroots::{isolate_roots, AlgebraicReal};

/// Unsigned coefficient magnitudes `b_k, ..., b_0` of a degree-`k` polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionLayout {
    pub n: u32,
    pub k: u32,
    parts: Vec<u32>,
}

impl CompositionLayout {
    pub fn new(n: u32, k: u32, parts: Vec<u32>) -> Result<Self> {
        if parts.len() != k as usize + 1 || parts[0] == 0 {
            return Err(Error::Precondition(format!(
                "layout {parts:?} does not fit degree {k} with a nonzero leading part"
            )));
        }
        let big_k: u32 = parts.iter().sum();
        if big_k + k - 1 != n {
            return Err(Error::Precondition(format!(
                "layout {parts:?} has K = {big_k}, not height {n} at degree {k}"
            )));
        }
        Ok(CompositionLayout { n, k, parts })
    }

    /// Magnitudes from the leading slot down to the constant slot.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn nonzero_parts(&self) -> Vec<u32> {
        self.parts.iter().copied().filter(|&b| b != 0).collect()
    }

    pub fn big_k(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn m(&self) -> usize {
        self.parts.iter().filter(|&&b| b != 0).count()
    }

    /// Number of zero slots.
    pub fn z(&self) -> usize {
        self.parts.len() - self.m()
    }

    /// Zeros are shown only when there are at least three nonzero parts.
    pub fn display(&self) -> String {
        let shown: Vec<u32> = if self.m() <= 2 {
            self.nonzero_parts()
        } else {
            self.parts.clone()
        };
        let body: Vec<String> = shown.iter().map(u32::to_string).collect();
        format!("[{}]", body.join(","))
    }
}

impl fmt::Display for CompositionLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Signs of the nonzero non-leading coefficients by falling power of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<Sign>);

impl Signature {
    pub fn signs(&self) -> &[Sign] {
        &self.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|s| s.symbol().to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Position of a layout in the generation order of its `(n, k)` group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayoutRank {
    pub partition: usize,
    pub composition: usize,
    pub placement: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub layout: CompositionLayout,
    pub rank: LayoutRank,
    pub signature: Signature,
    pub poly: Polynomial,
}

/// A candidate that passed every filter, with its real roots ascending.
#[derive(Clone, Debug)]
pub struct Survivor {
    pub candidate: Candidate,
    pub roots: Vec<AlgebraicReal>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    NonPrimitive,
    Reducible(FactorWitness),
    NoRealRoots,
    Survives(Vec<AlgebraicReal>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Skip `k = n` (n >= 2) and `k = n - 1` (n >= 3), which never yield survivors.
    pub skip_lemma_degrees: bool,
    /// Also place parts so that the constant slot stays empty.
    pub allow_zero_constant: bool,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions {
            skip_lemma_degrees: true,
            allow_zero_constant: false,
        }
    }
}

impl GeneratorOptions {
    /// Every degree and every placement, for checking the shortcuts.
    pub fn exhaustive() -> Self {
        GeneratorOptions {
            skip_lemma_degrees: false,
            allow_zero_constant: true,
        }
    }
}

/// `a_k + sum_{j<k} |a_j|`.
pub fn k_of(p: &Polynomial) -> BigInt {
    p.l1_norm()
}

/// `K + k - 1`.
pub fn height_of(p: &Polynomial) -> BigInt {
    k_of(p) + BigInt::from(p.degree().unwrap_or(0)) - BigInt::one()
}

/// Relatively prime compositions of `big_k` into `m` parts, in catalog order.
pub fn coprime_compositions(big_k: u32, m: usize) -> Vec<Vec<u32>> {
    partitions_with_parts(big_k, m)
        .iter()
        .flat_map(|p| composition_order(p))
        .collect()
}

/// Layouts of `parts` over the slots of a degree-`k` polynomial, descending lexicographic.
///
/// The leading slot always takes `parts[0]`; the constant slot takes the last part
/// unless `allow_zero_constant` is set. A single part always sits alone in front.
pub fn zero_placements(
    parts: &[u32],
    k: u32,
    allow_zero_constant: bool,
) -> Result<Vec<CompositionLayout>> {
    let m = parts.len();
    let slots = k as usize + 1;
    if m == 0 || m > slots {
        return Err(Error::Precondition(format!(
            "{m} parts do not fit the {slots} slots of degree {k}"
        )));
    }
    let n = parts.iter().sum::<u32>() + k - 1;
    let mut out = Vec::new();
    let mut positions = Vec::with_capacity(m);
    positions.push(0usize);
    place_rest(
        parts,
        slots,
        allow_zero_constant,
        &mut positions,
        &mut |pos| {
            let mut layout = vec![0u32; slots];
            for (&p, &b) in pos.iter().zip(parts) {
                layout[p] = b;
            }
            out.push(layout);
        },
    );
    out.sort_by(|a, b| b.cmp(a));
    out.into_iter()
        .map(|l| CompositionLayout::new(n, k, l))
        .collect()
}

fn place_rest(
    parts: &[u32],
    slots: usize,
    allow_zero_constant: bool,
    positions: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let placed = positions.len();
    if placed == parts.len() {
        let last = *positions.last().expect("leading slot placed");
        if parts.len() == 1 || allow_zero_constant || last == slots - 1 {
            emit(positions);
        }
        return;
    }
    let prev = *positions.last().expect("leading slot placed");
    let remaining = parts.len() - placed;
    for slot in prev + 1..=slots - remaining {
        positions.push(slot);
        place_rest(parts, slots, allow_zero_constant, positions, emit);
        positions.pop();
    }
}

/// All `2^(m-1)` signatures, `+` before `-` at each position.
pub fn signatures_for(layout: &CompositionLayout) -> Vec<Signature> {
    let len = layout.m() - 1;
    (0..1usize << len)
        .map(|mask| {
            Signature(
                (0..len)
                    .map(|i| {
                        if mask >> (len - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The signed polynomial of a layout; the leading coefficient stays positive.
pub fn apply_signature(layout: &CompositionLayout, sig: &Signature) -> Result<Polynomial> {
    if sig.0.len() + 1 != layout.m() {
        return Err(Error::Precondition(format!(
            "signature {sig} does not match layout {layout}"
        )));
    }
    let k = layout.k as usize;
    let mut coeffs = vec![BigInt::zero(); k + 1];
    let mut signs = sig.0.iter();
    for (i, &b) in layout.parts.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let mag = BigInt::from(b);
        coeffs[k - i] = if i == 0 {
            mag
        } else {
            signs.next().expect("length checked").apply(&mag)
        };
    }
    Ok(Polynomial::new(coeffs))
}

pub fn classify(poly: &Polynomial) -> Result<Verdict> {
    if !poly.content()?.is_one() {
        return Ok(Verdict::NonPrimitive);
    }
    if let Irreducibility::Reducible(w) = is_irreducible(poly)? {
        return Ok(Verdict::Reducible(w));
    }
    let roots = isolate_roots(poly)?;
    if roots.is_empty() {
        Ok(Verdict::NoRealRoots)
    } else {
        Ok(Verdict::Survives(roots))
    }
}

/// Whether `k` is one of the degrees the shortcuts rule out at height `n`.
pub fn lemma_excludes(n: u32, k: u32) -> bool {
    (n >= 2 && k == n) || (n >= 3 && k + 1 == n)
}

/// Every signed candidate of height `n` and degree `k`, in generation order.
pub fn raw_candidates(n: u32, k: u32, opts: GeneratorOptions) -> Vec<Candidate> {
    if k == 0 || k > n || (opts.skip_lemma_degrees && lemma_excludes(n, k)) {
        return Vec::new();
    }
    let big_k = n + 1 - k;
    let mut out = Vec::new();
    let mut partition_rank = 0;
    for m in 1..=(big_k as usize).min(k as usize + 1) {
        for partition in partitions_with_parts(big_k, m) {
            for (ci, comp) in composition_order(&partition).into_iter().enumerate() {
                let layouts = zero_placements(&comp, k, opts.allow_zero_constant)
                    .expect("part count bounded by slots");
                for (pi, layout) in layouts.into_iter().enumerate() {
                    let rank = LayoutRank {
                        partition: partition_rank,
                        composition: ci,
                        placement: pi,
                    };
                    for signature in signatures_for(&layout) {
                        let poly =
                            apply_signature(&layout, &signature).expect("matching signature");
                        out.push(Candidate {
                            layout: layout.clone(),
                            rank,
                            signature,
                            poly,
                        });
                    }
                }
            }
            partition_rank += 1;
        }
    }
    out
}

/// Candidates of height `n` and degree `k` that survive every filter.
pub fn candidates_for(n: u32, k: u32) -> Result<Vec<Survivor>> {
    candidates_for_with(n, k, GeneratorOptions::default())
}

pub fn candidates_for_with(n: u32, k: u32, opts: GeneratorOptions) -> Result<Vec<Survivor>> {
    let mut out = Vec::new();
    for candidate in raw_candidates(n, k, opts) {
        if let Verdict::Survives(roots) = classify(&candidate.poly)? {
            out.push(Survivor { candidate, roots });
        }
    }
    Ok(out)
}

/// Product of the distinct primes dividing `n`; `radical(1) = 1`.
pub fn radical(mut n: u64) -> u64 {
    assert!(n > 0, "radical of zero");
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            r *= p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

/// Expected survival of `lead x^2 - tail` at height `n`: `gcd(rad(lead), n - 1) = 1`
/// and the two magnitudes are not both squares.
pub fn binomial_quadratic_survives(lead: u64, tail: u64, n: u64) -> bool {
    radical(lead).gcd(&(n - 1)) == 1 && !(is_square(lead) && is_square(tail))
}

/// `(q, a_0)` when `p = q x^2 + a_0` with no linear term.
pub fn binomial_quadratic(p: &Polynomial) -> Option<(BigInt, BigInt)> {
    (p.degree() == Some(2) && p.coeff(1).is_zero() && !p.coeff(0).is_zero())
        .then(|| (p.coeff(2), p.coeff(0)))
}
