//! The catalog order: partitions, compositions, zero placements, signatures, roots.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::enumerate::{LayoutRank, Survivor};
use crate::realroots::compare;

/// Position of an entry in the catalog; compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderKey {
    pub n: u32,
    pub k: u32,
    pub layout: LayoutRank,
    pub signature: usize,
    pub root: usize,
}

/// Relatively prime partitions of `big_k` into exactly `m` parts, anti-lexicographic.
pub fn partitions_with_parts(big_k: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fill_partition(big_k, m, big_k, &mut current, &mut out);
    out.retain(|p| p.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1);
    out
}

fn fill_partition(
    rest: u32,
    slots: usize,
    max: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if slots == 0 {
        if rest == 0 {
            out.push(current.clone());
        }
        return;
    }
    let slots_u = slots as u32;
    if rest < slots_u {
        return;
    }
    // leave at least one for every remaining slot
    let hi = max.min(rest - (slots_u - 1));
    for part in (1..=hi).rev() {
        if part * slots_u < rest {
            break;
        }
        current.push(part);
        fill_partition(rest - part, slots - 1, part, current, out);
        current.pop();
    }
}

/// Relatively prime partitions of `big_k` by ascending part count.
pub fn partition_order(big_k: u32) -> Vec<Vec<u32>> {
    (1..=big_k as usize)
        .flat_map(|m| partitions_with_parts(big_k, m))
        .collect()
}

/// Distinct orderings of a partition's parts, descending lexicographic.
pub fn composition_order(partition: &[u32]) -> Vec<Vec<u32>> {
    let mut pool = partition.to_vec();
    pool.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut used = vec![false; pool.len()];
    let mut current = Vec::with_capacity(pool.len());
    permute(&pool, &mut used, &mut current, &mut out);
    out
}

fn permute(pool: &[u32], used: &mut [bool], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if current.len() == pool.len() {
        out.push(current.clone());
        return;
    }
    for i in 0..pool.len() {
        // pool is descending, so skipping repeats of an unused equal value keeps orderings distinct
        if used[i] || (i > 0 && pool[i] == pool[i - 1] && !used[i - 1]) {
            continue;
        }
        used[i] = true;
        current.push(pool[i]);
        permute(pool, used, current, out);
        current.pop();
        used[i] = false;
    }
}

/// Order of the signatures of one layout, as indices into `survivors`.
///
/// Signatures are sorted by their smallest root. Then every single-root signature
/// pulls its mirror image (the reflected polynomial, when that is also a surviving
/// single-root signature) to the slot right after it.
pub fn signature_order(survivors: &[Survivor]) -> Vec<usize> {
    let mut by_root: Vec<usize> = (0..survivors.len()).collect();
    by_root.sort_by(|&a, &b| smallest_root_cmp(&survivors[a], &survivors[b]));

    let single = |i: usize| survivors[i].roots.len() == 1;
    let mut placed = vec![false; survivors.len()];
    let mut out = Vec::with_capacity(survivors.len());
    for &i in &by_root {
        if placed[i] {
            continue;
        }
        placed[i] = true;
        out.push(i);
        if !single(i) {
            continue;
        }
        let mirror = survivors[i].candidate.poly.reflect();
        if mirror == survivors[i].candidate.poly {
            continue;
        }
        if let Some(j) = (0..survivors.len())
            .find(|&j| !placed[j] && single(j) && survivors[j].candidate.poly == mirror)
        {
            placed[j] = true;
            out.push(j);
        }
    }
    out
}

fn smallest_root_cmp(a: &Survivor, b: &Survivor) -> Ordering {
    compare(&a.roots[0], &b.roots[0])
}

/// `(signature rank, survivor index, root index)` in catalog order.
pub fn flatten_roots(survivors: &[Survivor], order: &[usize]) -> Vec<(usize, usize, usize)> {
    order
        .iter()
        .enumerate()
        .flat_map(|(rank, &s)| (0..survivors[s].roots.len()).map(move |r| (rank, s, r)))
        .collect()
}
