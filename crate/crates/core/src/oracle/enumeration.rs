use std::collections::BTreeMap;

use serde::Serialize;

use super::blocks::{block_determinant, Color};
use crate::error::{Error, Result};
use crate::geometry::GeometryDerived;
use crate::summation::CompensatedSum;

/// Largest number of round trips accepted by the cut-set enumeration.
pub const ENUMERATION_MAX_R: usize = 6;

/// One block partition of the closed chain, up to cyclic rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionTerm {
    /// `(size, start color)` in cyclic order, rotated to the smallest sequence.
    pub blocks: Vec<(usize, Color)>,
    pub k: usize,
    /// Number of cut-sets realizing this cyclic block sequence.
    pub multiplicity: usize,
}

impl PartitionTerm {
    /// Each block's start color follows from its predecessor, around the whole loop.
    pub fn is_color_consistent(&self) -> bool {
        let k = self.blocks.len();
        (0..k).all(|i| {
            let (n, c) = self.blocks[i];
            self.blocks[(i + 1) % k].1 == c.after_block(n)
        })
    }

    pub fn total_size(&self) -> usize {
        self.blocks.iter().map(|b| b.0).sum()
    }
}

/// Everything produced by walking all non-empty cut-sets of the `2r`-cycle.
#[derive(Debug, Clone, Serialize)]
pub struct CutSetEnumeration {
    pub r: usize,
    /// `Delta_r = (rho1 rho2)^r sum_S (-1)^{|S|} / prod det`.
    pub delta_r: f64,
    /// Contribution of cut-sets with `k` cuts (index `k`), including the prefactor and sign.
    pub by_blocks: Vec<f64>,
    /// Number of cut-sets with `k` cuts.
    pub cut_set_counts: Vec<usize>,
    pub partitions: Vec<PartitionTerm>,
}

/// Blocks cut out by the edges in `mask`; edge `i` joins nodes `i` and `i + 1`.
fn blocks_of(mask: u32, n: usize) -> Vec<(usize, Color)> {
    let cuts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    let k = cuts.len();
    (0..k)
        .map(|i| {
            let from = cuts[i];
            let to = cuts[(i + 1) % k];
            let size = if k == 1 { n } else { (to + n - from) % n };
            (size, Color::of_node((from + 1) % n))
        })
        .collect()
}

fn canonical_rotation(blocks: &[(usize, Color)]) -> Vec<(usize, Color)> {
    let k = blocks.len();
    (0..k)
        .map(|s| {
            blocks[s..]
                .iter()
                .chain(&blocks[..s])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Brute-force `Delta_r` over all `2^{2r} - 1` cut-sets.
pub fn enumerate_cut_sets(r: usize, geom: &GeometryDerived) -> Result<CutSetEnumeration> {
    if r == 0 || r > ENUMERATION_MAX_R {
        return Err(Error::CapExceeded {
            what: "round trips for enumeration",
            value: r,
            max: ENUMERATION_MAX_R,
        });
    }
    let n = 2 * r;
    let inv: BTreeMap<(usize, Color), f64> = (1..=n)
        .flat_map(|m| {
            [Color::One, Color::Two].map(|c| ((m, c), 1.0 / block_determinant(m, c, geom)))
        })
        .collect();
    let mut sums = vec![CompensatedSum::new(); n + 1];
    let mut counts = vec![0usize; n + 1];
    let mut groups: BTreeMap<Vec<(usize, Color)>, usize> = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let blocks = blocks_of(mask, n);
        let k = blocks.len();
        let weight: f64 = blocks.iter().map(|b| inv[b]).product();
        sums[k].add(weight);
        counts[k] += 1;
        *groups.entry(canonical_rotation(&blocks)).or_default() += 1;
    }
    let scale = geom.rho_product.powi(r as i32);
    let by_blocks: Vec<f64> = sums
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if k % 2 == 0 {
                scale * s.value()
            } else {
                -scale * s.value()
            }
        })
        .collect();
    let delta_r = by_blocks
        .iter()
        .copied()
        .collect::<CompensatedSum>()
        .value();
    let partitions = groups
        .into_iter()
        .map(|(blocks, multiplicity)| PartitionTerm {
            k: blocks.len(),
            blocks,
            multiplicity,
        })
        .collect();
    Ok(CutSetEnumeration {
        r,
        delta_r,
        by_blocks,
        cut_set_counts: counts,
        partitions,
    })
}

pub fn delta_r_enumeration(r: usize, geom: &GeometryDerived) -> Result<f64> {
    Ok(enumerate_cut_sets(r, geom)?.delta_r)
}

/// `-sum_{r<=r_max} Delta_r / r` from the enumeration.
pub fn delta_partial_sum_enumeration(r_max: usize, geom: &GeometryDerived) -> Result<f64> {
    (1..=r_max).try_fold(0.0, |acc, r| {
        Ok(acc - delta_r_enumeration(r, geom)? / r as f64)
    })
}
