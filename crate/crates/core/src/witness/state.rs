use crate::geom::PrefixTable;
use crate::oracle::AngleData;
use crate::scalar::Scalar;

use super::ReconError;

/// Rank bookkeeping shared by both reconstruction drivers.
///
/// `forward[i]` records, for targets at cyclic offset `1..=window` after
/// `i`, the target's CCW visibility rank at `i` (0 while unknown).
/// `backward[i]` does the same for targets at offset `1..=window` before
/// `i`. Only these halves are ever written, so each row stores `window`
/// slots instead of `n - 1`.
#[derive(Debug, Clone)]
pub struct FbState<T> {
    n: usize,
    window: usize,
    degree: Vec<usize>,
    prefix: Vec<PrefixTable<T>>,
    forward: Vec<u32>,
    backward: Vec<u32>,
    forward_count: Vec<u32>,
    last_forward: Vec<usize>,
    backward_count: Vec<u32>,
    first_backward: Vec<usize>,
}

impl<T: Scalar> FbState<T> {
    /// Boundary neighbours recorded both ways; every other rank unknown.
    pub fn init(data: &AngleData<T>) -> Result<Self, ReconError> {
        let prefix = data
            .prefix_tables()
            .map_err(|e| ReconError::InconsistentInput(e.to_string()))?;
        let n = data.n();
        let window = n.div_ceil(2);
        let degree: Vec<usize> = (0..n).map(|i| data.degree(i)).collect();
        if let Some(&d) = degree.iter().find(|&&d| d > u32::MAX as usize) {
            return Err(ReconError::InconsistentInput(format!("degree {d} too large")));
        }
        let mut state = FbState {
            n,
            window,
            prefix,
            forward: vec![0; n * window],
            backward: vec![0; n * window],
            forward_count: vec![1; n],
            last_forward: (0..n).map(|i| (i + 1) % n).collect(),
            backward_count: vec![1; n],
            first_backward: (0..n).map(|i| (i + n - 1) % n).collect(),
            degree,
        };
        for i in 0..n {
            state.forward[i * window] = 1;
            state.backward[i * window] = state.degree[i] as u32;
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `⌈n / 2⌉`: the largest separation examined.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    pub fn prefix(&self, i: usize) -> &PrefixTable<T> {
        &self.prefix[i]
    }

    /// `L_i`: number of identified forward ranks of `i`.
    pub fn forward_count(&self, i: usize) -> usize {
        self.forward_count[i] as usize
    }

    /// `I_i`: the last vertex identified in `i`'s forward table.
    pub fn last_forward(&self, i: usize) -> usize {
        self.last_forward[i]
    }

    /// `L'_i`.
    pub fn backward_count(&self, i: usize) -> usize {
        self.backward_count[i] as usize
    }

    /// `I'_i`: the first vertex identified in `i`'s backward table.
    pub fn first_backward(&self, i: usize) -> usize {
        self.first_backward[i]
    }

    #[inline]
    pub(crate) fn offset(&self, from: usize, to: usize) -> usize {
        if to >= from {
            to - from
        } else {
            to + self.n - from
        }
    }

    #[inline]
    fn forward_slot(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.offset(i, j);
        (d >= 1 && d <= self.window).then(|| i * self.window + d - 1)
    }

    #[inline]
    fn backward_slot(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.offset(j, i);
        (d >= 1 && d <= self.window).then(|| i * self.window + d - 1)
    }

    /// `F[i][j]`, 0 when unknown or outside the forward half.
    #[inline]
    pub fn forward_rank(&self, i: usize, j: usize) -> usize {
        self.forward_slot(i, j).map_or(0, |s| self.forward[s] as usize)
    }

    /// `B[i][j]`, 0 when unknown or outside the backward half.
    #[inline]
    pub fn backward_rank(&self, i: usize, j: usize) -> usize {
        self.backward_slot(i, j).map_or(0, |s| self.backward[s] as usize)
    }

    /// Records `i` sees `j = i + k`: `j` becomes the next forward rank of
    /// `i`, and `i` the next backward rank of `j`.
    pub(crate) fn record(&mut self, i: usize, j: usize) -> Result<(usize, usize), ReconError> {
        let f_rank = self.forward_count[i] as usize + 1;
        let b_rank = self.degree[j] as isize - self.backward_count[j] as isize;
        if f_rank > self.degree[i] || b_rank < 1 {
            return Err(ReconError::InconsistentInput(format!(
                "recording edge {{{i}, {j}}} exceeds a vertex degree"
            )));
        }
        let fs = self.forward_slot(i, j).expect("j ahead of i within the window");
        let bs = self.backward_slot(j, i).expect("i behind j within the window");
        self.forward[fs] = f_rank as u32;
        self.backward[bs] = b_rank as u32;
        self.forward_count[i] += 1;
        self.backward_count[j] += 1;
        self.last_forward[i] = j;
        self.first_backward[j] = i;
        Ok((f_rank, b_rank as usize))
    }

    /// Vertices identified around `i`, by cyclic offset, with their ranks.
    ///
    /// A vertex present in both tables must carry the same rank in each;
    /// the result is sorted by offset.
    pub fn identified(&self, i: usize) -> Result<Vec<(usize, usize)>, ReconError> {
        let mut out = Vec::new();
        for d in 1..self.n {
            let j = (i + d) % self.n;
            let f = self.forward_rank(i, j);
            let b = self.backward_rank(i, j);
            match (f, b) {
                (0, 0) => {}
                (r, 0) | (0, r) => out.push((j, r)),
                (f, b) if f == b => out.push((j, f)),
                (f, b) => {
                    return Err(ReconError::InconsistentInput(format!(
                        "vertex {i}: {j} has forward rank {f} but backward rank {b}"
                    )))
                }
            }
        }
        Ok(out)
    }
}
