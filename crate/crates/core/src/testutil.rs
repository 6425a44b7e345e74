use crate::build::pair_arrow;
use crate::groupoid::Groupoid;
use crate::sets::ArrowSet;

/// `{(i, j) | |i − j| ≤ width}` in the pair groupoid on `n` points.
pub fn band(g: &Groupoid, n: usize, width: u32) -> ArrowSet {
    g.arrow_set((0..n as u32).flat_map(|i| (0..n as u32).filter(move |&j| i.abs_diff(j) <= width).map(move |j| pair_arrow(n, i, j))))
}

/// All pairs inside each block, in the pair groupoid on `n` points.
pub fn blocks(g: &Groupoid, n: usize, blocks: &[&[u32]]) -> ArrowSet {
    let mut out = g.unit_arrows();
    for b in blocks {
        for &i in *b {
            for &j in *b {
                out.insert(pair_arrow(n, i, j));
            }
        }
    }
    out
}
