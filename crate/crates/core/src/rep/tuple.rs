/// Mixed-radix bijection between `K^d` and `0..|K|^d`, first coordinate
/// most significant (lexicographic order).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleIndex {
    base: usize,
    dim: usize,
    len: usize,
}

impl TupleIndex {
    /// `None` if `base^dim` overflows `usize`.
    pub fn new(base: usize, dim: usize) -> Option<Self> {
        let len = (0..dim).try_fold(1usize, |acc, _| acc.checked_mul(base))?;
        Some(TupleIndex { base, dim, len })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn encode(&self, point: &[usize]) -> usize {
        debug_assert_eq!(point.len(), self.dim);
        point.iter().fold(0, |acc, &k| acc * self.base + k)
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.dim);
        for slot in out.iter_mut().rev() {
            *slot = index % self.base;
            index /= self.base;
        }
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        self.decode_into(index, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lexicographic() {
        let t = TupleIndex::new(3, 2).unwrap();
        assert_eq!(t.len(), 9);
        assert_eq!(t.encode(&[0, 2]), 2);
        assert_eq!(t.encode(&[1, 0]), 3);
        assert_eq!(t.decode(8), vec![2, 2]);
        assert_eq!(TupleIndex::new(5, 0).unwrap().len(), 1);
        assert!(TupleIndex::new(10, 40).is_none());
    }

    proptest! {
        #[test]
        fn round_trip(base in 1usize..7, dim in 0usize..6, seed in any::<u64>()) {
            let t = TupleIndex::new(base, dim).unwrap();
            let i = (seed as usize) % t.len();
            prop_assert_eq!(t.encode(&t.decode(i)), i);
        }
    }
}
