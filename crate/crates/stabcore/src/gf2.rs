//! Rank of bit-packed vectors over GF(2).

/// Rank of the vectors stored back to back in `buf`, `words` words each.
/// The buffer is overwritten.
pub fn rank_in_place(buf: &mut [u64], words: usize) -> usize {
    if words == 0 || buf.is_empty() {
        return 0;
    }
    let count = buf.len() / words;
    let mut rank = 0;
    for w in 0..words {
        for b in 0..64 {
            if rank == count {
                return rank;
            }
            let bit = 1u64 << b;
            let Some(p) = (rank..count).find(|&r| buf[r * words + w] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..words {
                    buf.swap(p * words + k, rank * words + k);
                }
            }
            let (head, tail) = buf.split_at_mut((rank + 1) * words);
            let pivot = &head[rank * words..];
            for row in tail.chunks_exact_mut(words) {
                if row[w] & bit != 0 {
                    for k in w..words {
                        row[k] ^= pivot[k];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Number of 64-bit words holding `bits` bits.
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}
