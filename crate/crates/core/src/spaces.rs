//! Decision spaces: finite sets of alternatives with a metric.
//!
//! Three families have closed-form metrics (the uniform grid on `[0, 1)`,
//! the hypercube under Hamming distance) or a small shortest-path table
//! (stars and arbitrary connected graphs given as edge lists). All metrics
//! are integer hop counts scaled by a per-space unit, which keeps interval
//! and median computations exact.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest graph whose median property is checked while the space is built.
pub const MEDIAN_CHECK_LIMIT: usize = 512;

/// Largest supported hypercube dimension (the space is enumerated).
pub const MAX_HYPERCUBE_DIM: u32 = 20;

/// Upper end of the clamp applied to continuous points on the line.
pub const LINE_UPPER: f64 = 1.0 - 1e-9;

/// Index of an alternative within its space, in `[0, |S|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alternative(pub usize);

impl Alternative {
    pub fn id(self) -> usize {
        self.0
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    Line,
    Hypercube,
    Star,
    GeneralGraph,
}

/// Space-specific position of an alternative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coordinate {
    Line(f64),
    Bits { bits: u64, dim: u32 },
    Vertex(usize),
}

/// Where an agent sits: a continuous point (line only) or a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Bliss {
    Point(f64),
    Vertex(Alternative),
}

#[derive(Clone, Debug)]
enum Layout {
    Line { size: usize },
    Hypercube { dim: u32 },
    Table(HopTable),
}

#[derive(Clone, Debug)]
struct HopTable {
    n: usize,
    hops: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl HopTable {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self loop at vertex {u}")));
            }
            if !adjacency[u].contains(&v) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|src| bfs(&adjacency, src))
            .collect();
        let mut hops = Vec::with_capacity(n * n);
        for (src, row) in rows.iter().enumerate() {
            if let Some(dst) = row.iter().position(|&d| d == u32::MAX) {
                return Err(Error::structural(format!(
                    "graph is disconnected: no path from {src} to {dst}"
                )));
            }
            hops.extend_from_slice(row);
        }
        let mut edges: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Ok(HopTable { n, hops, edges })
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> u32 {
        self.hops[u * self.n + v]
    }
}

fn bfs(adjacency: &[Vec<usize>], src: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adjacency.len()];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// A finite decision space. Immutable once built.
#[derive(Clone, Debug)]
pub struct DecisionSpace {
    kind: SpaceKind,
    layout: Layout,
    is_median_graph: bool,
}

impl DecisionSpace {
    /// The uniform grid `{i / size : 0 <= i < size}` with `d(u, v) = |u - v|`.
    pub fn line(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("line space needs at least one alternative"));
        }
        Ok(DecisionSpace {
            kind: SpaceKind::Line,
            layout: Layout::Line { size },
            is_median_graph: true,
        })
    }

    /// `{0,1}^dim` under Hamming distance. Alternative ids are the bit patterns.
    pub fn hypercube(dim: u32) -> Result<Self> {
        if dim == 0 || dim > MAX_HYPERCUBE_DIM {
            return Err(Error::input(format!(
                "hypercube dimension must be in 1..={MAX_HYPERCUBE_DIM}, got {dim}"
            )));
        }
        Ok(DecisionSpace {
            kind: SpaceKind::Hypercube,
            layout: Layout::Hypercube { dim },
            is_median_graph: true,
        })
    }

    /// A star with center `#0` and leaves `#1..=#leaves`.
    pub fn star(leaves: usize) -> Result<Self> {
        if leaves == 0 {
            return Err(Error::input("star needs at least one leaf"));
        }
        let edges: Vec<_> = (1..=leaves).map(|leaf| (0, leaf)).collect();
        Self::build_graph(SpaceKind::Star, leaves + 1, &edges)
    }

    /// An undirected, unit-weight graph on vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("graph needs at least one vertex"));
        }
        Self::build_graph(SpaceKind::GeneralGraph, n, edges)
    }

    /// Parses the edge-list text format: one `u v` pair per line, 0-based ids.
    /// Blank lines and lines starting with `#` are skipped. The vertex count
    /// is one more than the largest id mentioned.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let edges = parse_edges(text)?;
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::from_edges(n, &edges)
    }

    pub fn from_edge_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_edge_list(&text)
    }

    fn build_graph(kind: SpaceKind, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let table = HopTable::from_edges(n, edges)?;
        let mut space = DecisionSpace {
            kind,
            layout: Layout::Table(table),
            is_median_graph: false,
        };
        if n <= MEDIAN_CHECK_LIMIT {
            space.is_median_graph = validate_median_graph(&space)?;
        }
        Ok(space)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn is_median_graph(&self) -> bool {
        self.is_median_graph
    }

    pub fn len(&self) -> usize {
        match &self.layout {
            Layout::Line { size } => *size,
            Layout::Hypercube { dim } => 1usize << dim,
            Layout::Table(t) => t.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Hypercube dimension, if this is a hypercube.
    pub fn dimension(&self) -> Option<u32> {
        match self.layout {
            Layout::Hypercube { dim } => Some(dim),
            _ => None,
        }
    }

    /// Edges of a table-backed graph (star or general graph).
    pub fn edges(&self) -> Option<&[(usize, usize)]> {
        match &self.layout {
            Layout::Table(t) => Some(&t.edges),
            _ => None,
        }
    }

    pub fn alternatives(&self) -> impl Iterator<Item = Alternative> + '_ {
        (0..self.len()).map(Alternative)
    }

    pub fn contains(&self, a: Alternative) -> bool {
        a.0 < self.len()
    }

    pub fn check(&self, a: Alternative) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "alternative {a} is not in a space of {} alternatives",
                self.len()
            )))
        }
    }

    pub fn coordinate(&self, a: Alternative) -> Coordinate {
        match self.layout {
            Layout::Line { size } => Coordinate::Line(a.0 as f64 / size as f64),
            Layout::Hypercube { dim } => Coordinate::Bits {
                bits: a.0 as u64,
                dim,
            },
            Layout::Table(_) => Coordinate::Vertex(a.0),
        }
    }

    /// Position on the line; `None` for other spaces.
    pub fn line_position(&self, a: Alternative) -> Option<f64> {
        match self.layout {
            Layout::Line { size } => Some(a.0 as f64 / size as f64),
            _ => None,
        }
    }

    /// Scalar used in plot-ready output: the coordinate on the line, the id elsewhere.
    pub fn label(&self, a: Alternative) -> f64 {
        self.line_position(a).unwrap_or(a.0 as f64)
    }

    /// Metric value of one hop (grid spacing on the line, 1 elsewhere).
    pub fn unit(&self) -> f64 {
        match self.layout {
            Layout::Line { size } => 1.0 / size as f64,
            _ => 1.0,
        }
    }

    /// Integer path length between two alternatives in the space's graph.
    #[inline]
    pub fn hops(&self, x: Alternative, y: Alternative) -> u32 {
        match &self.layout {
            Layout::Line { .. } => x.0.abs_diff(y.0) as u32,
            Layout::Hypercube { .. } => (x.0 ^ y.0).count_ones(),
            Layout::Table(t) => t.get(x.0, y.0),
        }
    }

    /// Checked metric between two alternatives.
    pub fn distance(&self, x: Alternative, y: Alternative) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.dist(x, y))
    }

    #[inline]
    pub(crate) fn dist(&self, x: Alternative, y: Alternative) -> f64 {
        self.hops(x, y) as f64 * self.unit()
    }

    /// Distance from a bliss location to an alternative.
    ///
    /// # Panics
    /// If a continuous point is used outside the line space. Populations are
    /// validated against their space by [`DecisionSpace::check_bliss`].
    #[inline]
    pub fn bliss_distance(&self, bliss: &Bliss, a: Alternative) -> f64 {
        match (*bliss, &self.layout) {
            (Bliss::Point(p), Layout::Line { size }) => (p - a.0 as f64 / *size as f64).abs(),
            (Bliss::Vertex(v), _) => self.dist(v, a),
            (Bliss::Point(_), _) => panic!("continuous bliss point in a {:?} space", self.kind),
        }
    }

    pub fn check_bliss(&self, bliss: &Bliss) -> Result<()> {
        match *bliss {
            Bliss::Vertex(v) => self.check(v),
            Bliss::Point(p) if self.kind == SpaceKind::Line => {
                if (0.0..1.0).contains(&p) {
                    Ok(())
                } else {
                    Err(Error::input(format!("line bliss point {p} outside [0, 1)")))
                }
            }
            Bliss::Point(_) => Err(Error::input(format!(
                "continuous bliss points are only meaningful on the line, not {:?}",
                self.kind
            ))),
        }
    }

    /// The alternative a bliss location snaps to.
    pub fn snap(&self, bliss: &Bliss) -> Result<Alternative> {
        match *bliss {
            Bliss::Vertex(v) => {
                self.check(v)?;
                Ok(v)
            }
            Bliss::Point(p) => nearest_alternative(self, p),
        }
    }
}

pub(crate) fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = || -> Result<usize> {
            fields
                .next()
                .ok_or_else(|| Error::input(format!("line {}: expected `u v`", lineno + 1)))?
                .parse()
                .map_err(|e| Error::input(format!("line {}: {e}", lineno + 1)))
        };
        let u = next()?;
        let v = next()?;
        if fields.next().is_some() {
            return Err(Error::input(format!(
                "line {}: expected exactly two ids",
                lineno + 1
            )));
        }
        edges.push((u, v));
    }
    Ok(edges)
}

/// Checked metric; see [`DecisionSpace::distance`].
pub fn distance(space: &DecisionSpace, x: Alternative, y: Alternative) -> Result<f64> {
    space.distance(x, y)
}

/// The unique alternative on all three pairwise shortest paths.
///
/// Middle value on the line, bitwise majority on the hypercube, brute-force
/// interval intersection on table-backed graphs.
pub fn median3(
    space: &DecisionSpace,
    u: Alternative,
    v: Alternative,
    w: Alternative,
) -> Result<Alternative> {
    space.check(u)?;
    space.check(v)?;
    space.check(w)?;
    if !space.is_median_graph {
        return Err(Error::structural(format!(
            "median3 on a {:?} space that is not a median graph",
            space.kind
        )));
    }
    Ok(median3_unchecked(space, u, v, w))
}

pub(crate) fn median3_unchecked(
    space: &DecisionSpace,
    u: Alternative,
    v: Alternative,
    w: Alternative,
) -> Alternative {
    match &space.layout {
        Layout::Line { .. } => {
            let (a, b, c) = (u.0, v.0, w.0);
            Alternative(a.max(b).min(a.min(b).max(c)))
        }
        Layout::Hypercube { .. } => Alternative((u.0 & v.0) | (u.0 & w.0) | (v.0 & w.0)),
        Layout::Table(_) => {
            let common = interval_intersection(space, u, v, w);
            debug_assert_eq!(common.len(), 1);
            common[0]
        }
    }
}

/// Every alternative lying on some shortest path between each of the three pairs.
pub fn interval_intersection(
    space: &DecisionSpace,
    u: Alternative,
    v: Alternative,
    w: Alternative,
) -> Vec<Alternative> {
    let (uv, uw, vw) = (space.hops(u, v), space.hops(u, w), space.hops(v, w));
    space
        .alternatives()
        .filter(|&x| {
            let (ux, vx, wx) = (space.hops(u, x), space.hops(v, x), space.hops(w, x));
            ux + vx == uv && ux + wx == uw && vx + wx == vw
        })
        .collect()
}

/// Brute force: every triple must have exactly one common interval vertex.
pub fn validate_median_graph(space: &DecisionSpace) -> Result<bool> {
    let n = space.len();
    if let Layout::Table(t) = &space.layout {
        if t.hops.contains(&u32::MAX) {
            return Err(Error::structural("graph is disconnected"));
        }
    }
    let words = n.div_ceil(64);
    // intervals[u * n + v] is the bitset of I(u, v) for u < v.
    let intervals: Vec<Vec<u64>> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (u, v) = (Alternative(idx / n), Alternative(idx % n));
            if u.0 >= v.0 {
                return Vec::new();
            }
            let d = space.hops(u, v);
            let mut bits = vec![0u64; words];
            for x in 0..n {
                if space.hops(u, Alternative(x)) + space.hops(Alternative(x), v) == d {
                    bits[x / 64] |= 1 << (x % 64);
                }
            }
            bits
        })
        .collect();
    let ok = (0..n).into_par_iter().all(|u| {
        for v in u + 1..n {
            let iuv = &intervals[u * n + v];
            for w in v + 1..n {
                let iuw = &intervals[u * n + w];
                let ivw = &intervals[v * n + w];
                let count: u32 = (0..words)
                    .map(|k| (iuv[k] & iuw[k] & ivw[k]).count_ones())
                    .sum();
                if count != 1 {
                    return false;
                }
            }
        }
        true
    });
    Ok(ok)
}

/// Snaps a point of `[0, 1)` to the closest grid alternative; exact
/// midpoints go to the lower index.
pub fn nearest_alternative(space: &DecisionSpace, p: f64) -> Result<Alternative> {
    let Layout::Line { size } = space.layout else {
        return Err(Error::UnsupportedSpace {
            op: "nearest_alternative",
            kind: space.kind,
        });
    };
    if !(0.0..1.0).contains(&p) {
        return Err(Error::input(format!("point {p} outside [0, 1)")));
    }
    let scaled = p * size as f64;
    let lower = scaled.floor();
    // Grid units; absorbs rounding in the product so that decimal midpoints tie.
    let idx = if scaled - lower <= 0.5 + 1e-9 {
        lower as usize
    } else {
        lower as usize + 1
    };
    Ok(Alternative(idx.min(size - 1)))
}
