//! Dense matrix views of a graph and the operations on them.
//!
//! Every view orders nodes by [`Graph::sorted_node_ids`]. Reverse links are
//! folded into their forward reading before entries are filled, so a view
//! only ever sees forward arrows; `N` links fill both `(i, j)` and `(j, i)`.

mod skeleton;
mod spectral;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, LinkId, NodeId};
use crate::types::LinkFamily;

pub use skeleton::{
    check_factorization, derived_generator, derived_meta_adjacency, join_diff, paper_join_matrix, skeleton,
    CountMismatch, FactorizationReport, GeneratorEntry, GeneratorMismatch, JoinCell, JoinDiff, MetaCell,
    MetaCellMismatch, SkeletonMatrices, INCIDENCE_LABELS, JOIN_ORDER,
};
pub use spectral::{principal_eigenvector, SpectralResult, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Below this magnitude a determinant counts as zero.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// Largest size for which determinants use full cofactor expansion.
const COFACTOR_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix has no non-zero entries")]
    ZeroMatrix,
    #[error("damping {0} is outside (0, 1]")]
    InvalidDamping(f64),
    #[error("tolerance must be positive")]
    InvalidTolerance,
    #[error("value {0} is negative or not finite")]
    InvalidValue(f64),
    #[error("all values are zero")]
    AllZero,
    #[error("entropy base must be at least 2")]
    InvalidBase,
    #[error("node {0} has no links of family {1}")]
    IsolatedNode(NodeId, LinkFamily),
    #[error("node {0} is not part of the vector")]
    MissingNode(NodeId),
}

/// Weighted adjacency of a graph, or of one link family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjacencyView {
    pub node_order: Vec<NodeId>,
    /// `entries[i][j]` is the total weight of arrows `order[i] -> order[j]`.
    pub entries: Vec<Vec<f64>>,
    pub family_filter: Option<LinkFamily>,
    /// Always false: orientation is folded away before entries are filled.
    pub signed: bool,
}

impl AdjacencyView {
    /// Wraps a raw square matrix; node `i` gets id `NodeId::new(i)`.
    pub fn from_rows(entries: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        if let Some(&bad) = entries.iter().flatten().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(MatrixError::InvalidValue(bad));
        }
        Ok(AdjacencyView { node_order: (0..n).map(NodeId::new).collect(), entries, family_filter: None, signed: false })
    }

    pub fn len(&self) -> usize {
        self.node_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_order.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn transpose(&self) -> AdjacencyView {
        AdjacencyView { entries: transpose(&self.entries), ..self.clone() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries == transpose(&self.entries)
    }

    /// Indices of rows that are entirely zero (nodes with no way out).
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].iter().all(|&x| x == 0.0)).collect()
    }

    /// Indices of columns that are entirely zero (nodes with no way in).
    pub fn zero_cols(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.entries.iter().all(|r| r[j] == 0.0)).collect()
    }

    /// Position of `id` in the node order.
    pub fn position(&self, id: NodeId) -> Option<usize> {
        self.node_order.iter().position(|&n| n == id)
    }
}

pub(crate) fn transpose(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

pub(crate) fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Builds the weighted adjacency matrix of `g`, optionally for one family.
pub fn adjacency(g: &Graph, family: Option<LinkFamily>) -> AdjacencyView {
    let order = g.sorted_node_ids();
    let rank = g.node_ranks();
    let n = order.len();
    let mut entries = vec![vec![0.0; n]; n];
    for a in g.arrows(family) {
        entries[rank[a.from.index()]][rank[a.to.index()]] += a.weight;
    }
    AdjacencyView { node_order: order, entries, family_filter: family, signed: false }
}

/// Per-node values in a fixed node order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueVector {
    pub node_order: Vec<NodeId>,
    pub values: Vec<f64>,
}

impl ValueVector {
    pub fn new(node_order: Vec<NodeId>, values: Vec<f64>) -> Result<Self, MatrixError> {
        if node_order.len() != values.len() {
            return Err(MatrixError::DimensionMismatch { expected: node_order.len(), actual: values.len() });
        }
        Ok(ValueVector { node_order, values })
    }

    /// The same value at every node of `view`.
    pub fn constant(view: &AdjacencyView, value: f64) -> Self {
        ValueVector { node_order: view.node_order.clone(), values: vec![value; view.len()] }
    }

    pub fn get(&self, id: NodeId) -> Option<f64> {
        self.node_order.iter().position(|&n| n == id).map(|i| self.values[i])
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|x| x.abs()).sum()
    }
}

fn check_conforms(a: &AdjacencyView, v: &ValueVector) -> Result<(), MatrixError> {
    if a.node_order != v.node_order {
        let actual = v.values.len();
        return Err(MatrixError::DimensionMismatch { expected: a.len(), actual });
    }
    Ok(())
}

/// `Aᵀ·v`: each node receives the weighted values of its predecessors.
pub fn forward_step(a: &AdjacencyView, v: &ValueVector) -> Result<ValueVector, MatrixError> {
    check_conforms(a, v)?;
    let values = mat_vec(&transpose(&a.entries), &v.values);
    Ok(ValueVector { node_order: v.node_order.clone(), values })
}

/// `A·v`: each node receives the weighted values of its successors.
pub fn backward_step(a: &AdjacencyView, v: &ValueVector) -> Result<ValueVector, MatrixError> {
    check_conforms(a, v)?;
    let values = mat_vec(&a.entries, &v.values);
    Ok(ValueVector { node_order: v.node_order.clone(), values })
}

/// `v[from] - v[to]` for every link, read forward. Links are listed in id
/// order.
pub fn graph_gradient(v: &ValueVector, g: &Graph) -> Result<Vec<(LinkId, f64)>, MatrixError> {
    let pos: BTreeMap<NodeId, usize> = v.node_order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let value = |id: NodeId| pos.get(&id).map(|&i| v.values[i]).ok_or(MatrixError::MissingNode(id));
    g.link_ids()
        .map(|id| {
            let (from, to) = g.link(id).forward_endpoints();
            Ok((id, value(from)? - value(to)?))
        })
        .collect()
}

/// Shannon entropy `-Σ p log_C p` of the normalized values, with
/// `0·log 0 = 0`.
pub fn entropy(values: &[f64], base: u32) -> Result<f64, MatrixError> {
    if base < 2 {
        return Err(MatrixError::InvalidBase);
    }
    if let Some(&bad) = values.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(MatrixError::InvalidValue(bad));
    }
    let total: f64 = values.iter().sum();
    if total <= 0.0 {
        return Err(MatrixError::AllZero);
    }
    let ln_base = f64::from(base).ln();
    let s: f64 = values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let p = x / total;
            -p * p.ln() / ln_base
        })
        .sum();
    Ok(s.max(0.0))
}

/// Incoming and outgoing weight per neighbour for one family.
fn flows(g: &Graph, node: NodeId, family: LinkFamily) -> (Vec<f64>, Vec<f64>) {
    let mut ins: BTreeMap<NodeId, f64> = BTreeMap::new();
    let mut outs: BTreeMap<NodeId, f64> = BTreeMap::new();
    for a in g.arrows(Some(family)) {
        if a.to == node {
            *ins.entry(a.from).or_default() += a.weight;
        }
        if a.from == node {
            *outs.entry(a.to).or_default() += a.weight;
        }
    }
    (ins.into_values().collect(), outs.into_values().collect())
}

/// Entropy of the outgoing weight distribution minus that of the incoming
/// one, in base `max(in-degree, out-degree, 2)`. A node with no outflow
/// reports `-S(in)`, one with no inflow `+S(out)`.
pub fn node_entropy_delta(g: &Graph, node: NodeId, family: LinkFamily) -> Result<f64, MatrixError> {
    if g.get_node(node).is_none() {
        return Err(MatrixError::MissingNode(node));
    }
    let (ins, outs) = flows(g, node, family);
    if ins.is_empty() && outs.is_empty() {
        return Err(MatrixError::IsolatedNode(node, family));
    }
    let base = ins.len().max(outs.len()).max(2) as u32;
    let side = |v: &[f64]| if v.is_empty() { Ok(0.0) } else { entropy(v, base) };
    Ok(side(&outs)? - side(&ins)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityReport {
    pub determinant: f64,
    pub zero_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
    pub invertible: bool,
}

pub fn singularity_report(a: &AdjacencyView) -> SingularityReport {
    let determinant = determinant(&a.entries);
    SingularityReport {
        determinant,
        zero_rows: a.zero_rows(),
        zero_cols: a.zero_cols(),
        invertible: determinant.abs() > SINGULARITY_THRESHOLD,
    }
}

/// Determinant of a square matrix: cofactor expansion up to 12×12, LU
/// with partial pivoting above that. The empty matrix has determinant 1.
pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n <= COFACTOR_LIMIT {
        cofactor_det(m)
    } else {
        lu_det(m)
    }
}

/// Laplace expansion along rows, memoized over the set of used columns.
fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let full = (1usize << n) - 1;
    let mut memo = vec![0.0; 1 << n];
    memo[full] = 1.0;
    for used in (0..full).rev() {
        let row = used.count_ones() as usize;
        let mut acc = 0.0;
        let mut free_before = 0;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            let x = m[row][j];
            if x != 0.0 {
                let sign = if free_before % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * x * memo[used | (1 << j)];
            }
            free_before += 1;
        }
        memo[used] = acc;
    }
    memo[0]
}

fn lu_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).expect("non-empty range");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}

/// Inverse of a 3×3 matrix by its adjugate, or `None` when singular.
pub fn inverse3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let [[a, b, c], [d, e, f], [h, i, j]] = *m;
    let det = a * (e * j - i * f) - b * (d * j - h * f) + c * (d * i - h * e);
    if det.abs() <= SINGULARITY_THRESHOLD {
        return None;
    }
    let adj = [
        [e * j - i * f, -(b * j - i * c), b * f - e * c],
        [-(d * j - h * f), a * j - h * c, -(a * f - d * c)],
        [d * i - h * e, -(a * i - h * b), a * e - d * b],
    ];
    Some(adj.map(|row| row.map(|x| x / det)))
}
