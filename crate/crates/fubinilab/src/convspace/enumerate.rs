//! Exhaustive enumeration of convergence structures on small carriers.

use super::{canonical_antichain, AxiomMode, ConvSpace};
use crate::error::{Error, Result};

/// Default ceiling on carriers admitted to exhaustive enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 3;

/// All convergence structures on carriers of size `0 ..= max_size`, in a
/// deterministic order: ascending carrier size, then lexicographically on
/// the per-point family bitsets (point 0 most significant).
pub fn enumerate_spaces(max_size: usize, mode: AxiomMode) -> Result<Vec<ConvSpace>> {
    enumerate_spaces_bounded(max_size, mode, DEFAULT_ENUM_BOUND)
}

/// As [`enumerate_spaces`] with an explicit bound on `max_size`.
pub fn enumerate_spaces_bounded(
    max_size: usize,
    mode: AxiomMode,
    bound: usize,
) -> Result<Vec<ConvSpace>> {
    if max_size > bound {
        return Err(Error::BoundExceeded(format!(
            "enumeration of carriers up to {max_size} points (bound {bound})"
        )));
    }
    let mut out = Vec::new();
    for k in 0..=max_size {
        out.extend(enumerate_size(k, mode));
    }
    Ok(out)
}

/// All admissible converging families for one point, each given by the
/// antichain of its maximal members, in ascending family-bitset order.
fn point_families(k: usize, x: usize, mode: AxiomMode) -> Vec<Vec<u64>> {
    let full: u64 = (1u64 << k) - 1;
    match mode {
        AxiomMode::Limit => {
            // Union- and down-closed families are the subsets of a unique
            // maximal set containing x.
            (0..=full)
                .filter(|m| m >> x & 1 == 1)
                .map(|m| vec![m])
                .collect()
        }
        AxiomMode::DownOnly => {
            // Families are arbitrary down-closed collections of nonempty
            // subsets containing {x}; enumerate them as bitsets indexed by
            // the subset masks 1..=full.
            let mut out = Vec::new();
            'family: for fam in 0u64..(1u64 << (full + 1)) {
                // Skip families marking the empty set or missing {x}.
                if fam & 1 != 0 || fam >> (1u64 << x) & 1 == 0 {
                    continue;
                }
                let mut members = Vec::new();
                for m in 1..=full {
                    if fam >> m & 1 == 1 {
                        // Down closure: every nonempty submask must be marked.
                        let mut s = (m - 1) & m;
                        while s != 0 {
                            if fam >> s & 1 == 0 {
                                continue 'family;
                            }
                            s = (s - 1) & m;
                        }
                        members.push(m);
                    }
                }
                out.push(canonical_antichain(&members));
            }
            out
        }
    }
}

fn enumerate_size(k: usize, mode: AxiomMode) -> Vec<ConvSpace> {
    if k == 0 {
        return vec![ConvSpace::new(0, mode, vec![]).expect("empty space")];
    }
    let per_point: Vec<Vec<Vec<u64>>> = (0..k).map(|x| point_families(k, x, mode)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    'outer: loop {
        let gens: Vec<Vec<u64>> = (0..k).map(|x| per_point[x][choice[x]].clone()).collect();
        out.push(ConvSpace::new(k, mode, gens).expect("enumerated structure is valid"));
        // Advance with point 0 most significant (last point varies fastest).
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < per_point[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
    out
}
