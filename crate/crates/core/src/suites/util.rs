//! Shared enumeration and sampling helpers for the suites.

use crate::finset_lcc::{hom_tables, FinSetMor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All maps into a base of size `z` whose fibers have size at most
/// `fiber_max`, one per fiber-size profile, with elements grouped by fiber.
pub fn shaped_maps(z: usize, fiber_max: usize) -> Vec<FinSetMor> {
    hom_tables(z, fiber_max + 1)
        .map(|shape| {
            let mut table = Vec::new();
            for (point, &k) in shape.iter().enumerate() {
                for _ in 0..k {
                    table.push(point);
                }
            }
            FinSetMor::new(table.len(), z, table).unwrap()
        })
        .collect()
}

/// All maps `X -> Z` for `X <= x_max`, filtered to fibers of size at most
/// `fiber_max`.
pub fn all_maps_with_small_fibers(z: usize, x_max: usize, fiber_max: usize) -> Vec<FinSetMor> {
    let mut out = Vec::new();
    for x in 0..=x_max {
        for table in hom_tables(x, z) {
            let f = FinSetMor::new(x, z, table).unwrap();
            let mut counts = vec![0usize; z];
            for &v in &f.table {
                counts[v] += 1;
            }
            if counts.iter().all(|&c| c <= fiber_max) {
                out.push(f);
            }
        }
    }
    out
}

/// All morphisms `W -> Y` lying over the base (`m ; g = h`), generated by
/// walking the fibers of `g` directly.
pub fn homs_over(h: &FinSetMor, g: &FinSetMor) -> Vec<FinSetMor> {
    let fibers = crate::finset_lcc::fibers(g);
    if (0..h.dom).any(|w| fibers[h.apply(w)].is_empty()) {
        return Vec::new();
    }
    let mut choice = vec![0usize; h.dom];
    let mut out = Vec::new();
    loop {
        let table: Vec<usize> = (0..h.dom).map(|w| fibers[h.apply(w)][choice[w]]).collect();
        out.push(FinSetMor::new(h.dom, g.dom, table).unwrap());
        let mut pos = h.dom;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < fibers[h.apply(pos)].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_mor(rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> FinSetMor {
    assert!(cod > 0 || dom == 0);
    let table = (0..dom).map(|_| rng.gen_range(0..cod)).collect();
    FinSetMor::new(dom, cod, table).unwrap()
}

/// A random permutation of `0..n`.
pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> FinSetMor {
    let mut table: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        table.swap(i, j);
    }
    FinSetMor::new(n, n, table).unwrap()
}
