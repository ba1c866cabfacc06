//! Dense statevector kernels.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::exec::Exec;
#[cfg(feature = "parallel")]
use crate::exec::GRAIN;
use crate::gate::Block;
use crate::C64;

/// Apply `block` to every amplitude pair `(idx, idx | 1 << target_bit)` whose
/// index has all bits of `control_mask` set and the target bit clear.
pub(crate) fn apply_block(
    amps: &mut [C64],
    target_bit: usize,
    control_mask: usize,
    block: &Block,
    exec: Exec,
) {
    let half = 1usize << target_bit;
    let stride = half << 1;

    #[cfg(feature = "parallel")]
    if exec.is_parallel() && amps.len() > GRAIN {
        if half >= GRAIN {
            // Few wide chunks: split each half into grains.
            for (c, chunk) in amps.chunks_mut(stride).enumerate() {
                let (lo, hi) = chunk.split_at_mut(half);
                lo.par_chunks_mut(GRAIN)
                    .zip(hi.par_chunks_mut(GRAIN))
                    .enumerate()
                    .for_each(|(s, (l, h))| {
                        update_pairs(l, h, c * stride + s * GRAIN, control_mask, block)
                    });
            }
        } else {
            amps.par_chunks_mut(stride)
                .with_min_len(GRAIN / stride)
                .enumerate()
                .for_each(|(c, chunk)| {
                    let (lo, hi) = chunk.split_at_mut(half);
                    update_pairs(lo, hi, c * stride, control_mask, block)
                });
        }
        return;
    }
    let _ = exec;
    for (c, chunk) in amps.chunks_mut(stride).enumerate() {
        let (lo, hi) = chunk.split_at_mut(half);
        update_pairs(lo, hi, c * stride, control_mask, block);
    }
}

#[inline]
fn update_pairs(lo: &mut [C64], hi: &mut [C64], base: usize, control_mask: usize, block: &Block) {
    let [[b00, b01], [b10, b11]] = block.0;
    for (k, (a0, a1)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
        if (base + k) & control_mask == control_mask {
            let (x0, x1) = (*a0, *a1);
            *a0 = b00 * x0 + b01 * x1;
            *a1 = b10 * x0 + b11 * x1;
        }
    }
}

pub(crate) fn norm_sqr(amps: &[C64], exec: Exec) -> f64 {
    crate::exec::chunked_sum(amps, exec, |_, chunk| {
        chunk.iter().map(|a| a.norm_sqr()).sum()
    })
}
