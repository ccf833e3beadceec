//! Per-sample seed derivation. A sample's seed depends only on the master seed, the
//! stream name and the sample index, so results do not depend on scheduling.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn sample_seed(master: u64, stream: &str, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ fnv1a(stream)).wrapping_add(index))
}

/// Seed of the second element of a pair whose first element uses `seed`.
pub fn partner(seed: u64) -> u64 {
    splitmix64(seed ^ 0x5851_f42d_4c95_7f2d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_and_indices_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for stream in ["diff", "srp", "symmetry"] {
            for i in 0..1000 {
                assert!(seen.insert(sample_seed(7, stream, i)));
            }
        }
        assert_ne!(sample_seed(7, "diff", 0), sample_seed(8, "diff", 0));
        assert_ne!(partner(5), 5);
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
