//! Breadth-first enumeration of N-paths on a bounded set of rationals.
//!
//! Scaling by N turns N-paths into 1-paths, and on a shortest 1-path no
//! interior entry has a denominator larger than both its neighbours (such an
//! entry is the mediant of its two Farey neighbours and can be dropped). So
//! the entries of a shortest N-path between endpoints with `den(N x) <= d`
//! all satisfy `den(N x) <= d`, and searching that finite graph is exact.

use std::collections::VecDeque;

use num_integer::Integer;
use num_rational::Ratio;

pub type R = Ratio<i64>;

pub fn step(a: R, b: R, n: i64) -> bool {
    let l = |x: R| n.lcm(x.denom());
    a > b && a - b == R::new(n, l(a) * l(b))
}

/// All rationals in `[0, hi]` with denominator at most `d`, ascending.
pub fn farey_range(hi: i64, d: i64) -> Vec<R> {
    let mut v: Vec<R> = (1..=d)
        .flat_map(|q| (0..=hi * q).filter(move |p| p.gcd(&q) == 1).map(move |p| R::new(p, q)))
        .collect();
    v.sort();
    v
}

pub struct Graph {
    pub n: i64,
    pub nodes: Vec<R>,
    down: Vec<Vec<usize>>,
}

impl Graph {
    /// Nodes `x` in `[0, hi]` with `den(n x) <= d`; edges are N-path steps.
    pub fn new(n: i64, hi: i64, d: i64) -> Self {
        let nodes: Vec<R> = farey_range(hi * n, d).into_iter().map(|x| x / n).collect();
        let down = nodes
            .iter()
            .map(|&a| (0..nodes.len()).filter(|&j| step(a, nodes[j], n)).collect())
            .collect();
        Graph { n, nodes, down }
    }

    pub fn index(&self, x: R) -> Option<usize> {
        self.nodes.binary_search(&x).ok()
    }

    /// Distances from `src`, the number of shortest paths (saturating) and one
    /// predecessor per node.
    pub fn bfs(&self, src: usize) -> Search {
        let m = self.nodes.len();
        let mut dist = vec![usize::MAX; m];
        let mut count = vec![0u64; m];
        let mut pred = vec![usize::MAX; m];
        dist[src] = 0;
        count[src] = 1;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.down[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    pred[w] = u;
                    queue.push_back(w);
                }
                if dist[w] == dist[u] + 1 {
                    count[w] = count[w].saturating_add(count[u]);
                }
            }
        }
        Search { src, dist, count, pred }
    }
}

pub struct Search {
    src: usize,
    pub dist: Vec<usize>,
    pub count: Vec<u64>,
    pred: Vec<usize>,
}

impl Search {
    pub fn path(&self, g: &Graph, to: usize) -> Option<Vec<R>> {
        if self.dist[to] == usize::MAX {
            return None;
        }
        let mut out = vec![g.nodes[to]];
        let mut u = to;
        while u != self.src {
            u = self.pred[u];
            out.push(g.nodes[u]);
        }
        out.reverse();
        Some(out)
    }
}
