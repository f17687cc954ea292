//! The extended binary Golay code [24, 12, 8].

use std::collections::BTreeMap;

/// Generator rows, bit `i` = coordinate `i`. Systematic encoding of the
/// cyclic code with generator polynomial x¹¹+x⁹+x⁷+x⁶+x⁵+x+1, extended by an
/// overall parity bit.
pub const GOLAY_GENERATOR: [u32; 12] = [
    0x800ae3, 0x8015c6, 0x00216f, 0x0042de, 0x0085bc, 0x81019b, 0x820336, 0x84066c, 0x08063b,
    0x900695, 0x2007c9, 0xc00571,
];

#[derive(Clone, Debug)]
pub struct GolayCode {
    codewords: Vec<u32>,
}

pub fn golay_code() -> GolayCode {
    GolayCode::new()
}

impl GolayCode {
    /// All 4096 codewords spanned by [`GOLAY_GENERATOR`], sorted.
    pub fn new() -> Self {
        let mut codewords: Vec<u32> = (0u32..4096)
            .map(|m| {
                GOLAY_GENERATOR
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| m >> k & 1 == 1)
                    .fold(0, |w, (_, row)| w ^ row)
            })
            .collect();
        codewords.sort_unstable();
        codewords.dedup();
        Self { codewords }
    }

    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, word: u32) -> bool {
        self.codewords.binary_search(&word).is_ok()
    }

    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for w in &self.codewords {
            *h.entry(w.count_ones()).or_default() += 1;
        }
        h
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.codewords
            .iter()
            .map(|w| w.count_ones())
            .filter(|&w| w > 0)
            .min()
    }

    /// The 759 weight-8 codewords.
    pub fn octads(&self) -> impl Iterator<Item = u32> + '_ {
        self.codewords
            .iter()
            .copied()
            .filter(|w| w.count_ones() == 8)
    }
}

impl Default for GolayCode {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_enumeration() {
        let code = golay_code();
        assert_eq!(code.len(), 4096);
        let dist: Vec<(u32, usize)> = code.weight_distribution().into_iter().collect();
        assert_eq!(dist, vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
        assert_eq!(code.min_weight(), Some(8));
        assert_eq!(code.octads().count(), 759);
    }

    #[test]
    fn closed_under_addition_and_self_orthogonal() {
        let code = golay_code();
        for &a in GOLAY_GENERATOR.iter() {
            for &b in GOLAY_GENERATOR.iter() {
                assert!(code.contains(a ^ b));
                assert_eq!((a & b).count_ones() % 2, 0);
            }
        }
    }
}
