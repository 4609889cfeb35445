/// Ring buffer holding the most recent `capacity` state rows.
#[derive(Debug, Clone)]
pub(crate) struct History<T> {
    dim: usize,
    capacity: usize,
    data: Vec<T>,
    start: usize,
    len: usize,
}

impl<T: Copy + Default> History<T> {
    pub fn new(dim: usize, capacity: usize) -> Self {
        let capacity = capacity.max(1);
        Self { dim, capacity, data: vec![T::default(); dim * capacity], start: 0, len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn push(&mut self, row: &[T]) {
        let slot = if self.len < self.capacity {
            self.len += 1;
            (self.start + self.len - 1) % self.capacity
        } else {
            let s = self.start;
            self.start = (self.start + 1) % self.capacity;
            s
        };
        self.data[slot * self.dim..(slot + 1) * self.dim].copy_from_slice(row);
    }

    /// The `k`-th most recent row, `k` in `1..=len`.
    #[inline]
    pub fn back(&self, k: usize) -> &[T] {
        debug_assert!(k >= 1 && k <= self.len);
        let slot = (self.start + self.len - k) % self.capacity;
        &self.data[slot * self.dim..(slot + 1) * self.dim]
    }

    pub fn for_each_row_mut(&mut self, mut f: impl FnMut(&mut [T])) {
        for k in 0..self.len {
            let slot = (self.start + k) % self.capacity;
            f(&mut self.data[slot * self.dim..(slot + 1) * self.dim]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_latest_rows() {
        let mut h = History::new(2, 3);
        for i in 0..5 {
            h.push(&[i, 10 * i]);
        }
        assert_eq!(h.len(), 3);
        assert_eq!(h.back(1), &[4, 40]);
        assert_eq!(h.back(3), &[2, 20]);
        h.for_each_row_mut(|r| r[0] += 100);
        assert_eq!(h.back(2), &[103, 30]);
    }
}
