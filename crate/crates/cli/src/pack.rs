//! Bit packing for binary output, most significant bit first.

pub fn pack_bits(bits: &[u8]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |byte, (i, &b)| byte | (b & 1) << (7 - i))
        })
        .collect()
}

/// Inverse of [`pack_bits`] given the exact bit count.
#[cfg(test)]
pub fn unpack_bits(bytes: &[u8], count: usize) -> Vec<u8> {
    (0..count)
        .map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn msb_first() {
        assert_eq!(pack_bits(&[1, 0, 1]), [0b1010_0000]);
        assert_eq!(pack_bits(&[0, 0, 0, 0, 0, 0, 0, 1, 1]), [1, 0x80]);
        assert!(pack_bits(&[]).is_empty());
    }

    proptest! {
        #[test]
        fn round_trip(bits in prop::collection::vec(0u8..2, 0..200)) {
            let packed = pack_bits(&bits);
            prop_assert_eq!(packed.len(), bits.len().div_ceil(8));
            prop_assert_eq!(unpack_bits(&packed, bits.len()), bits);
        }
    }
}
