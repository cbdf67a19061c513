use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn row_op(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for c in 0..self.cols {
            let v = mul_sub(self.get(dst, c), k, self.get(src, c))?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    fn col_op(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for r in 0..self.rows {
            let v = mul_sub(self.get(r, dst), k, self.get(r, src))?;
            self.set(r, dst, v);
        }
        Ok(())
    }
}

fn mul_sub(a: i128, k: i128, b: i128) -> Result<i128> {
    k.checked_mul(b)
        .and_then(|kb| a.checked_sub(kb))
        .ok_or(Error::Overflow("smith normal form"))
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_invariants(m: &IntMatrix) -> Result<Vec<i128>> {
    let mut a = m.clone();
    let mut out = Vec::new();
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..a.rows {
            for c in t..a.cols {
                let v = a.get(r, c).abs();
                if v != 0 && best.is_none_or(|(br, bc)| v < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((r, c)) = best else { break };
        a.swap_rows(t, r);
        a.swap_cols(t, c);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for r in t + 1..a.rows {
                let q = a.get(r, t) / p;
                if q != 0 {
                    a.row_op(r, t, q)?;
                }
                if a.get(r, t) != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..a.cols {
                let q = a.get(t, c) / p;
                if q != 0 {
                    a.col_op(c, t, q)?;
                }
                if a.get(t, c) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..a.rows)
                    .flat_map(|r| (t + 1..a.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| a.get(r, c) % p != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        a.row_op(t, r, -1)?;
                        continue;
                    }
                }
            }
            // move the smallest remainder onto the pivot
            let mut best = (t, t);
            for r in t..a.rows {
                let v = a.get(r, t).abs();
                if v != 0 && v < a.get(best.0, best.1).abs() {
                    best = (r, t);
                }
            }
            for c in t..a.cols {
                let v = a.get(t, c).abs();
                if v != 0 && v < a.get(best.0, best.1).abs() {
                    best = (t, c);
                }
            }
            a.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
        }
        out.push(a.get(t, t).abs());
        t += 1;
    }
    Ok(out)
}

/// Free rank and torsion coefficients of one homology group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology of the chain complex whose `k`-th boundary map `C_k -> C_{k-1}`
/// is `boundaries[k]`; `boundaries[0]` has `C_0` columns and is the zero map
/// or the augmentation.
pub fn homology(boundaries: &[IntMatrix]) -> Result<Vec<HomologyGroup>> {
    let invariants: Vec<Vec<i128>> = boundaries
        .iter()
        .map(smith_invariants)
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(boundaries.len());
    for k in 0..boundaries.len() {
        let dim = boundaries[k].cols;
        let rank_out = invariants[k].len();
        let (rank_in, torsion) = match invariants.get(k + 1) {
            Some(inv) => (inv.len(), inv.iter().copied().filter(|&d| d > 1).collect()),
            None => (0, Vec::new()),
        };
        out.push(HomologyGroup {
            rank: dim - rank_out - rank_in,
            torsion,
        });
    }
    Ok(out)
}
