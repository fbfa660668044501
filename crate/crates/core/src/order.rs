//! Finite strict partial orders on `0..n`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A transitively closed, irreflexive relation on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    n: usize,
    less: Vec<bool>,
}

impl Poset {
    pub fn discrete(n: usize) -> Self {
        Poset {
            n,
            less: vec![false; n * n],
        }
    }

    /// Transitive closure of `pairs`; `None` if the closure has a cycle.
    pub fn from_relation(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Option<Self> {
        let mut p = Poset::discrete(n);
        for (a, b) in pairs {
            assert!(a < n && b < n, "element out of range");
            p.less[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if p.less[i * n + k] {
                    for j in 0..n {
                        if p.less[k * n + j] {
                            p.less[i * n + j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| p.less[i * n + i]) {
            None
        } else {
            Some(p)
        }
    }

    /// The chain `order[0] < order[1] < ...`.
    pub fn chain(order: &[usize]) -> Self {
        let n = order.len();
        let mut p = Poset::discrete(n);
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i + 1..] {
                p.less[a * n + b] = true;
            }
        }
        p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a * self.n + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.less(b, a)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..self.n).any(|c| self.less(a, c) && self.less(c, b)))
            .collect()
    }

    /// Elements strictly below `b`.
    pub fn below(&self, b: usize) -> Vec<usize> {
        (0..self.n).filter(|&a| self.less(a, b)).collect()
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.comparable(a, b)))
    }

    pub fn is_linear_extension(&self, seq: &[usize]) -> bool {
        if seq.len() != self.n {
            return false;
        }
        let mut rank = vec![usize::MAX; self.n];
        for (i, &a) in seq.iter().enumerate() {
            if a >= self.n || rank[a] != usize::MAX {
                return false;
            }
            rank[a] = i;
        }
        self.pairs().into_iter().all(|(a, b)| rank[a] < rank[b])
    }

    /// All linear extensions, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        self.extend(&mut cur, &mut used, &mut out);
        out
    }

    fn extend(&self, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == self.n {
            out.push(cur.clone());
            return;
        }
        for a in 0..self.n {
            if !used[a] && (0..self.n).all(|b| used[b] || !self.less(b, a)) {
                used[a] = true;
                cur.push(a);
                self.extend(cur, used, out);
                cur.pop();
                used[a] = false;
            }
        }
    }

    /// Number of linear extensions, by dynamic programming over down-sets.
    pub fn count_linear_extensions(&self) -> BigUint {
        assert!(self.n <= 24, "too many elements to count extensions");
        let full = (1usize << self.n) - 1;
        let mut pred = vec![0usize; self.n];
        for (a, b) in self.pairs() {
            pred[b] |= 1 << a;
        }
        let mut ways = vec![BigUint::zero(); full + 1];
        ways[0] = BigUint::one();
        for s in 0..=full {
            if ways[s].is_zero() {
                continue;
            }
            let w = ways[s].clone();
            for (a, &p) in pred.iter().enumerate() {
                if s & (1 << a) == 0 && p & !s == 0 {
                    ways[s | (1 << a)] += &w;
                }
            }
        }
        ways[full].clone()
    }

    /// The induced order on `keep`, renumbered `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let m = keep.len();
        let mut p = Poset::discrete(m);
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                p.less[i * m + j] = self.less(a, b);
            }
        }
        p
    }

    /// The order transported along `perm`, where `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Poset {
        let mut p = Poset::discrete(self.n);
        for (a, b) in self.pairs() {
            p.less[perm[a] * self.n + perm[b]] = true;
        }
        p
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset({}, {:?})", self.n, self.hasse())
    }
}
