//! The three graphs attached to a degree set.
//!
//! * `B` (bipartite divisor graph): primes and nonlinear degrees, with a
//!   prime joined to every degree it divides.
//! * `Δ` (prime degree graph): primes, with `p ~ q` when `pq` divides some
//!   degree.
//! * `Γ` (common divisor graph): nonlinear degrees, with `m ~ n` when they
//!   share a prime.
//!
//! All three use the same [`DivisorGraph`] representation. Vertices are kept
//! in canonical order (primes ascending, then degrees ascending), so edge
//! lists, components and serialized output are deterministic.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, DegreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("the diameter of a graph without vertices is undefined")]
    Empty,
    #[error("unknown graph flavor {0:?} (expected B, delta or gamma)")]
    UnknownFlavor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Prime,
    Degree,
}

/// A vertex of a divisor graph. A prime `p` and a degree equal to `p` are
/// different vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub value: u64,
}

impl Vertex {
    pub fn prime(p: u64) -> Self {
        Vertex { kind: VertexKind::Prime, value: p }
    }

    pub fn degree(m: u64) -> Self {
        Vertex { kind: VertexKind::Degree, value: m }
    }

    /// DOT node identifier: `p2`, `d10`.
    pub fn node_id(&self) -> String {
        match self.kind {
            VertexKind::Prime => format!("p{}", self.value),
            VertexKind::Degree => format!("d{}", self.value),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.node_id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "B")]
    Bipartite,
    #[serde(rename = "delta")]
    PrimeDegree,
    #[serde(rename = "gamma")]
    CommonDivisor,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Bipartite, Flavor::PrimeDegree, Flavor::CommonDivisor];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Bipartite => "B",
            Flavor::PrimeDegree => "delta",
            Flavor::CommonDivisor => "gamma",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b" | "bipartite" => Ok(Flavor::Bipartite),
            "delta" | "prime" => Ok(Flavor::PrimeDegree),
            "gamma" | "common" => Ok(Flavor::CommonDivisor),
            _ => Err(GraphError::UnknownFlavor(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorGraph {
    flavor: Flavor,
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<usize>>,
    source: DegreeSet,
}

/// Builds `B`, `Δ` or `Γ` of `x`. The member 1 is ignored; `{}` and `{1}`
/// give the empty graph.
pub fn build_graph(x: &DegreeSet, flavor: Flavor) -> DivisorGraph {
    let primes: Vec<u64> = x.primes().iter().copied().collect();
    let degrees: Vec<u64> = x.nonlinear().collect();
    let mut vertices = Vec::new();
    if flavor != Flavor::CommonDivisor {
        vertices.extend(primes.iter().map(|&p| Vertex::prime(p)));
    }
    if flavor != Flavor::PrimeDegree {
        vertices.extend(degrees.iter().map(|&m| Vertex::degree(m)));
    }
    let n = vertices.len();
    let mut adjacency = vec![Vec::new(); n];
    let mut join = |i: usize, j: usize| {
        adjacency[i].push(j);
        adjacency[j].push(i);
    };
    match flavor {
        Flavor::Bipartite => {
            let offset = primes.len();
            for (i, &p) in primes.iter().enumerate() {
                for (j, &m) in degrees.iter().enumerate() {
                    if m % p == 0 {
                        join(i, offset + j);
                    }
                }
            }
        }
        Flavor::PrimeDegree => {
            for i in 0..primes.len() {
                for j in i + 1..primes.len() {
                    let (p, q) = (primes[i], primes[j]);
                    if degrees.iter().any(|&m| m % p == 0 && m % q == 0) {
                        join(i, j);
                    }
                }
            }
        }
        Flavor::CommonDivisor => {
            for i in 0..degrees.len() {
                for j in i + 1..degrees.len() {
                    if gcd(degrees[i], degrees[j]) != 1 {
                        join(i, j);
                    }
                }
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    DivisorGraph { flavor, vertices, adjacency, source: x.clone() }
}

impl DivisorGraph {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn source(&self) -> &DegreeSet {
        &self.source
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn vertex_degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components as sorted vertex-index lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// BFS distances from `source`; `None` for vertices in other components.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance between two vertices of one component.
    pub fn component_diameter(&self, component: &[usize]) -> usize {
        component
            .iter()
            .map(|&v| self.distances_from(v).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Maximum distance between vertices lying in the same component.
    /// A disconnected graph has the largest of its component diameters.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        Ok((0..self.vertex_count())
            .map(|v| self.distances_from(v).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn component_shape(&self, component: &[usize]) -> Shape {
        let n = component.len();
        let edges = component.iter().map(|&v| self.vertex_degree(v)).sum::<usize>() / 2;
        let max_degree = component.iter().map(|&v| self.vertex_degree(v)).max().unwrap_or(0);
        if edges + 1 == n && max_degree <= 2 {
            Shape::Path(edges)
        } else if n >= 3 && edges == n && component.iter().all(|&v| self.vertex_degree(v) == 2) {
            Shape::Cycle(edges)
        } else if edges == n * (n - 1) / 2 {
            Shape::Complete(n)
        } else {
            Shape::Other
        }
    }

    /// Shape of the whole graph and of each component.
    pub fn classify_shape(&self) -> ShapeVerdict {
        let component_shapes: Vec<Shape> =
            self.components().iter().map(|c| self.component_shape(c)).collect();
        let shape = match component_shapes.as_slice() {
            [] => Shape::Empty,
            [only] => only.clone(),
            many => {
                let mut lengths = Vec::with_capacity(many.len());
                for s in many {
                    match s {
                        Shape::Path(len) => lengths.push(*len),
                        _ => break,
                    }
                }
                if lengths.len() == many.len() {
                    lengths.sort_unstable();
                    Shape::UnionOfPaths(lengths)
                } else {
                    Shape::Other
                }
            }
        };
        ShapeVerdict { shape, component_shapes }
    }

    /// Graphviz rendering. Primes are circles, degrees are boxes.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph {} {{\n", dot_name(self.flavor));
        for v in &self.vertices {
            let shape = match v.kind {
                VertexKind::Prime => "circle",
                VertexKind::Degree => "box",
            };
            out.push_str(&format!("  {} [shape={shape}, label=\"{}\"];\n", v.node_id(), v.value));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!(
                "  {} -- {};\n",
                self.vertices[i].node_id(),
                self.vertices[j].node_id()
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            flavor: self.flavor,
            vertices: self.vertices.clone(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

fn dot_name(flavor: Flavor) -> &'static str {
    match flavor {
        Flavor::Bipartite => "B",
        Flavor::PrimeDegree => "Delta",
        Flavor::CommonDivisor => "Gamma",
    }
}

/// Serialized form: edges index into the canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub flavor: Flavor,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Empty,
    /// Path with the given number of edges; `Path(0)` is a single vertex.
    Path(usize),
    /// Cycle with the given number of edges (at least 3).
    Cycle(usize),
    /// Complete graph on the given number of vertices, when no path or
    /// cycle description applies (so at least 4 vertices).
    Complete(usize),
    /// Two or more components, each a path; lengths ascending.
    UnionOfPaths(Vec<usize>),
    Other,
}

impl Shape {
    pub fn is_path(&self) -> bool {
        matches!(self, Shape::Path(_))
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, Shape::Cycle(_))
    }

    /// True for a single path or a union of paths.
    pub fn is_paths(&self) -> bool {
        matches!(self, Shape::Path(_) | Shape::UnionOfPaths(_))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Empty => write!(f, "Empty"),
            Shape::Path(n) => write!(f, "Path({n})"),
            Shape::Cycle(n) => write!(f, "Cycle({n})"),
            Shape::Complete(k) => write!(f, "Complete({k})"),
            Shape::UnionOfPaths(lengths) => {
                let parts: Vec<String> = lengths.iter().map(usize::to_string).collect();
                write!(f, "UnionOfPaths([{}])", parts.join(","))
            }
            Shape::Other => write!(f, "Other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeVerdict {
    pub shape: Shape,
    /// One entry per component, in canonical component order.
    pub component_shapes: Vec<Shape>,
}

/// Which of the two diameter alternatives a component triple satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiameterCase {
    /// `diam B = 2 max(diam Δ, diam Γ)`
    Even,
    /// `diam B = 2 diam Δ + 1 = 2 diam Γ + 1`
    Odd,
}

pub fn diameter_case(bipartite: usize, prime: usize, common: usize) -> Option<DiameterCase> {
    if bipartite == 2 * prime.max(common) {
        Some(DiameterCase::Even)
    } else if bipartite == 2 * prime + 1 && prime == common {
        Some(DiameterCase::Odd)
    } else {
        None
    }
}

/// The three graphs of one degree set.
#[derive(Debug, Clone)]
pub struct DivisorGraphs {
    pub bipartite: DivisorGraph,
    pub prime: DivisorGraph,
    pub common: DivisorGraph,
}

/// A component of `B` together with the components of `Δ` and `Γ` that share
/// its vertex values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTriple {
    pub bipartite: Vec<Vertex>,
    pub prime: Vec<Vertex>,
    pub common: Vec<Vertex>,
    pub bipartite_diameter: usize,
    pub prime_diameter: usize,
    pub common_diameter: usize,
    /// Whether the `Δ` and `Γ` components hold exactly the primes and the
    /// degrees of the `B` component.
    pub aligned: bool,
}

impl DivisorGraphs {
    pub fn new(x: &DegreeSet) -> Self {
        DivisorGraphs {
            bipartite: build_graph(x, Flavor::Bipartite),
            prime: build_graph(x, Flavor::PrimeDegree),
            common: build_graph(x, Flavor::CommonDivisor),
        }
    }

    pub fn get(&self, flavor: Flavor) -> &DivisorGraph {
        match flavor {
            Flavor::Bipartite => &self.bipartite,
            Flavor::PrimeDegree => &self.prime,
            Flavor::CommonDivisor => &self.common,
        }
    }

    pub fn component_counts(&self) -> [usize; 3] {
        [
            self.bipartite.component_count(),
            self.prime.component_count(),
            self.common.component_count(),
        ]
    }

    /// Matches every `B` component with the `Δ` component of its smallest
    /// prime and the `Γ` component of its smallest degree.
    pub fn matched_components(&self) -> Vec<ComponentTriple> {
        let prime_comps = self.prime.components();
        let common_comps = self.common.components();
        let locate = |g: &DivisorGraph, comps: &[Vec<usize>], v: Vertex| -> Vec<usize> {
            let idx = g.index_of(v).expect("vertex shared between graphs");
            comps.iter().find(|c| c.contains(&idx)).cloned().unwrap_or_default()
        };
        let mut out = Vec::new();
        for comp in self.bipartite.components() {
            let members: Vec<Vertex> = comp.iter().map(|&i| self.bipartite.vertices[i]).collect();
            let primes: Vec<Vertex> =
                members.iter().copied().filter(|v| v.kind == VertexKind::Prime).collect();
            let degrees: Vec<Vertex> =
                members.iter().copied().filter(|v| v.kind == VertexKind::Degree).collect();
            let prime_comp = primes
                .first()
                .map(|&v| locate(&self.prime, &prime_comps, v))
                .unwrap_or_default();
            let common_comp = degrees
                .first()
                .map(|&v| locate(&self.common, &common_comps, v))
                .unwrap_or_default();
            let prime_vertices: Vec<Vertex> =
                prime_comp.iter().map(|&i| self.prime.vertices[i]).collect();
            let common_vertices: Vec<Vertex> =
                common_comp.iter().map(|&i| self.common.vertices[i]).collect();
            out.push(ComponentTriple {
                bipartite_diameter: self.bipartite.component_diameter(&comp),
                prime_diameter: self.prime.component_diameter(&prime_comp),
                common_diameter: self.common.component_diameter(&common_comp),
                aligned: prime_vertices == primes && common_vertices == degrees,
                bipartite: members,
                prime: prime_vertices,
                common: common_vertices,
            });
        }
        out
    }
}
