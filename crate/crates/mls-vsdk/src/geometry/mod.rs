//! Point sets, node generation, distance metrics and stencil search.

mod halton;
mod kdtree;

pub use halton::halton_nodes;
pub use kdtree::KdTree;

use crate::error::{Error, Result};

/// A point of `Omega` in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("point needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("point coordinates must be finite"));
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point { coords: vec![x] }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { coords: vec![x, y] }
    }
}

/// Euclidean distance between two coordinate slices.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Data sites with optional sampled values.
///
/// Points are expected to be pairwise distinct; duplicates are not rejected
/// at construction but lead to a zero separation distance and singular local
/// systems downstream.
#[derive(Clone, Debug)]
pub struct NodeSet {
    dim: usize,
    points: Vec<Point>,
    values: Option<Vec<f64>>,
}

impl NodeSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::invalid(format!(
                "point {:?} has dimension {}, expected {}",
                p.coords, p.dim(), dim
            )));
        }
        Ok(NodeSet { dim, points, values: None })
    }

    pub fn with_values(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.points.len() {
            return Err(Error::invalid(format!(
                "{} values for {} points",
                values.len(),
                self.points.len()
            )));
        }
        self.values = Some(values);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }
}

/// The `n` nearest data sites of a query point, sorted by distance.
#[derive(Clone, Debug)]
pub struct Stencil {
    pub indices: Vec<usize>,
    pub distances: Vec<f64>,
    pub radius: f64,
}

/// Axis-aligned bounding box of the domain.
#[derive(Clone, Debug)]
pub struct DomainBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl DomainBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::invalid("box bounds must be nonempty and of equal length"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(Error::invalid("box needs lower < upper componentwise"));
        }
        Ok(DomainBox { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.coords()
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(c, (l, u))| *c >= *l && *c <= *u)
    }
}

/// Tensor grid over `box`, equispaced and inclusive of the box endpoints.
/// Ordering is row-major with axis 0 running fastest.
pub fn uniform_nodes(domain: &DomainBox, counts: &[usize]) -> Result<NodeSet> {
    let d = domain.dim();
    if counts.len() != d {
        return Err(Error::invalid("one count per axis required"));
    }
    if counts.iter().any(|&c| c < 2) {
        return Err(Error::invalid("at least two nodes per axis required"));
    }
    let total: usize = counts.iter().product();
    let mut points = Vec::with_capacity(total);
    let mut idx = vec![0usize; d];
    for _ in 0..total {
        let coords: Vec<f64> = (0..d)
            .map(|j| {
                let t = idx[j] as f64 / (counts[j] - 1) as f64;
                domain.lower[j] + t * (domain.upper[j] - domain.lower[j])
            })
            .collect();
        points.push(Point { coords });
        for j in 0..d {
            idx[j] += 1;
            if idx[j] < counts[j] {
                break;
            }
            idx[j] = 0;
        }
    }
    NodeSet::new(d, points)
}

/// `q_X = 1/2 min_{i != j} ||x_i - x_j||_2`.
pub fn separation_distance(nodes: &NodeSet) -> Result<f64> {
    if nodes.len() < 2 {
        return Err(Error::invalid("separation distance needs at least two nodes"));
    }
    let pts = nodes.points();
    let mut min = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = euclidean(pts[i].coords(), pts[j].coords());
            if d < min {
                min = d;
            }
        }
    }
    Ok(0.5 * min)
}

/// Probe-set estimate of the fill distance `h_{X,Omega}`: the maximum over
/// probe points of the distance to the nearest node. A lower bound of the
/// continuous fill distance; sharp as the probe set refines.
pub fn fill_distance(nodes: &NodeSet, probe: &NodeSet) -> Result<f64> {
    if nodes.is_empty() || probe.is_empty() {
        return Err(Error::invalid("fill distance needs nonempty node and probe sets"));
    }
    if nodes.dim() != probe.dim() {
        return Err(Error::invalid("fill distance: dimension mismatch"));
    }
    let tree = KdTree::build(nodes.points().iter().map(|p| p.coords().to_vec()).collect());
    let mut h = 0.0f64;
    for p in probe.points() {
        let s = tree.knn(p.coords(), 1);
        if s.distances[0] > h {
            h = s.distances[0];
        }
    }
    Ok(h)
}

/// Brute-force k-nearest-neighbor search under an arbitrary metric.
/// Ties in the metric are broken toward the lower node index.
pub fn knn<M>(nodes: &NodeSet, query: &Point, n: usize, metric: M) -> Result<Stencil>
where
    M: Fn(&[f64], &[f64]) -> f64,
{
    if nodes.is_empty() {
        return Err(Error::invalid("knn over an empty node set"));
    }
    if n == 0 {
        return Err(Error::invalid("knn needs n >= 1"));
    }
    let mut cand: Vec<(f64, usize)> = nodes
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| (metric(query.coords(), p.coords()), i))
        .collect();
    cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    cand.truncate(n);
    let (distances, indices): (Vec<f64>, Vec<usize>) = cand.into_iter().unzip();
    let radius = *distances.last().unwrap();
    Ok(Stencil { indices, distances, radius })
}
