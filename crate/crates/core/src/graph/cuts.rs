/// Vertex pairs `(a, b)`, `a < b`, of `K_r` in lexicographic order; this is
/// the coordinate order of cut vectors.
pub fn cut_edge_pairs(r: usize) -> Vec<(usize, usize)> {
    (0..r)
        .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
        .collect()
}

/// One 0/1 cut vector per bipartition `{S, V∖S}` of `K_r`, the empty cut
/// included. Bipartitions are enumerated by the subsets `S` that avoid the
/// last vertex, so the output has exactly `2^(r-1)` entries.
pub fn enumerate_cut_vectors(r: usize) -> Vec<Vec<u8>> {
    assert!(r >= 1, "K_r needs r >= 1");
    assert!(r <= 24, "K_{r} has too many cuts to enumerate");
    let pairs = cut_edge_pairs(r);
    (0u32..1 << (r - 1))
        .map(|side| {
            pairs
                .iter()
                .map(|&(a, b)| (((side >> a) ^ (side >> b)) & 1) as u8)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_cut_vectors(1), vec![Vec::<u8>::new()]);
        let two: BTreeSet<_> = enumerate_cut_vectors(2).into_iter().collect();
        assert_eq!(two, BTreeSet::from([vec![0], vec![1]]));
        let three: BTreeSet<_> = enumerate_cut_vectors(3).into_iter().collect();
        let expect = BTreeSet::from([vec![0, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(three, expect);
        assert_eq!(enumerate_cut_vectors(4).len(), 8);
    }

    #[test]
    fn distinct_and_complement_closed() {
        for r in 1..=7 {
            let cuts = enumerate_cut_vectors(r);
            let set: BTreeSet<_> = cuts.iter().cloned().collect();
            assert_eq!(set.len(), 1 << (r - 1));
            // δ(S) computed from the complement side is already in the set.
            let pairs = cut_edge_pairs(r);
            for side in 0u32..1 << r {
                let v: Vec<u8> = pairs
                    .iter()
                    .map(|&(a, b)| (((side >> a) ^ (side >> b)) & 1) as u8)
                    .collect();
                assert!(set.contains(&v));
            }
        }
    }
}
