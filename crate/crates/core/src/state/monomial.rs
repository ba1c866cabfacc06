//! Sparse kernels for monomial gates.
//!
//! The support is kept sorted by basis index so that iteration order (and
//! therefore the order of per-amplitude random draws) matches the dense
//! backend exactly.

use crate::gate::Block;
use crate::C64;

pub(crate) fn apply_monomial(
    entries: &mut [(usize, C64)],
    target_bit: usize,
    control_mask: usize,
    block: &Block,
) {
    debug_assert!(block.is_monomial());
    let target_mask = 1usize << target_bit;
    let [[b00, b01], [b10, b11]] = block.0;
    let anti = block.is_anti_diagonal();
    for (index, amp) in entries.iter_mut() {
        if *index & control_mask != control_mask {
            continue;
        }
        let bit_set = *index & target_mask != 0;
        if anti {
            // |0> -> b10 |1>, |1> -> b01 |0>
            *amp *= if bit_set { b01 } else { b10 };
            *index ^= target_mask;
        } else {
            *amp *= if bit_set { b11 } else { b00 };
        }
    }
    if anti {
        entries.sort_unstable_by_key(|&(index, _)| index);
    }
}

pub(crate) fn norm_sqr(entries: &[(usize, C64)]) -> f64 {
    entries.iter().map(|(_, a)| a.norm_sqr()).sum()
}
