//! Exact k-nearest-neighbor search with deterministic tie-breaking.
//!
//! Results are bit-identical to a brute-force scan that sorts candidates by
//! `(distance, index)`: equal distances resolve toward the lower original
//! index. Distances are plain Euclidean over the stored coordinates, so an
//! augmented metric is obtained by building the tree over augmented
//! coordinates.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{euclidean, Stencil};

#[derive(Clone, Copy, Debug, PartialEq)]
struct Candidate {
    dist: f64,
    index: usize,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        // Total order: finite distances only enter the heap.
        self.dist
            .partial_cmp(&other.dist)
            .unwrap()
            .then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

enum Node {
    Leaf {
        items: Vec<usize>,
    },
    Split {
        axis: usize,
        value: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

const LEAF_SIZE: usize = 16;

pub struct KdTree {
    points: Vec<Vec<f64>>,
    root: Node,
}

impl KdTree {
    pub fn build(points: Vec<Vec<f64>>) -> Self {
        assert!(!points.is_empty(), "KdTree over an empty point set");
        let mut items: Vec<usize> = (0..points.len()).collect();
        let root = build_node(&points, &mut items, 0);
        KdTree { points, root }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The `n` nearest stored points to `query`; all points if `n` exceeds
    /// the tree size.
    pub fn knn(&self, query: &[f64], n: usize) -> Stencil {
        assert!(n >= 1, "knn needs n >= 1");
        let n = n.min(self.points.len());
        let mut heap: BinaryHeap<Candidate> = BinaryHeap::with_capacity(n + 1);
        self.search(&self.root, query, n, &mut heap);
        let mut cand = heap.into_vec();
        cand.sort();
        let indices: Vec<usize> = cand.iter().map(|c| c.index).collect();
        let distances: Vec<f64> = cand.iter().map(|c| c.dist).collect();
        let radius = *distances.last().unwrap();
        Stencil { indices, distances, radius }
    }

    fn search(&self, node: &Node, query: &[f64], n: usize, heap: &mut BinaryHeap<Candidate>) {
        match node {
            Node::Leaf { items } => {
                for &i in items {
                    let dist = euclidean(query, &self.points[i]);
                    let cand = Candidate { dist, index: i };
                    if heap.len() < n {
                        heap.push(cand);
                    } else if cand < *heap.peek().unwrap() {
                        heap.pop();
                        heap.push(cand);
                    }
                }
            }
            Node::Split { axis, value, left, right } => {
                let diff = query[*axis] - value;
                let (near, far) = if diff <= 0.0 { (left, right) } else { (right, left) };
                self.search(near, query, n, heap);
                // The far side may still hold a tie with a lower index, so
                // recurse on equality too.
                if heap.len() < n || diff.abs() <= heap.peek().unwrap().dist {
                    self.search(far, query, n, heap);
                }
            }
        }
    }
}

fn build_node(points: &[Vec<f64>], items: &mut [usize], depth: usize) -> Node {
    if items.len() <= LEAF_SIZE {
        let mut sorted = items.to_vec();
        sorted.sort_unstable();
        return Node::Leaf { items: sorted };
    }
    let dim = points[0].len();
    let axis = depth % dim;
    let mid = items.len() / 2;
    items.select_nth_unstable_by(mid, |&a, &b| {
        points[a][axis]
            .partial_cmp(&points[b][axis])
            .unwrap()
            .then(a.cmp(&b))
    });
    let value = points[items[mid]][axis];
    let (lo, hi) = items.split_at_mut(mid);
    Node::Split {
        axis,
        value,
        left: Box::new(build_node(points, lo, depth + 1)),
        right: Box::new(build_node(points, hi, depth + 1)),
    }
}
