//! Nested Archimedean copula trees with regularly varying generators.
//!
//! Only the regular-variation index `α_v` of each generator `ψ_v` enters the
//! tail copula and its maximizer, so an internal vertex carries just `α_v`.
//! Leaf `j` (0-based here, 1-based in JSON) is the variable `u_j`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Map, Value};

use crate::numeric::{check_point, min_of};
use crate::{Error, Result};

/// Index of a vertex in a [`NacTree`]. The root is always `0`.
pub type VertexId = usize;

/// Recursive description of a tree, used to build a [`NacTree`].
#[derive(Debug, Clone, PartialEq)]
pub enum NacNode {
    Internal { alpha: f64, children: Vec<NacNode> },
    /// A leaf with an optional 0-based variable index. Either every leaf
    /// carries an index or none does; unindexed leaves are numbered left to
    /// right.
    Leaf(Option<usize>),
}

impl NacNode {
    pub fn internal(alpha: f64, children: Vec<NacNode>) -> Self {
        NacNode::Internal { alpha, children }
    }

    pub fn leaf(index: usize) -> Self {
        NacNode::Leaf(Some(index))
    }

    /// `n` unindexed leaves.
    pub fn leaves(n: usize) -> Vec<NacNode> {
        vec![NacNode::Leaf(None); n]
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Vertex {
    Internal { alpha: f64, children: Vec<VertexId> },
    Leaf { index: usize },
}

/// A validated rooted tree with precomputed leaf sets and parents.
#[derive(Debug, Clone, PartialEq)]
pub struct NacTree {
    vertices: Vec<Vertex>,
    parent: Vec<Option<VertexId>>,
    /// Sorted variable indices below each vertex.
    leaf_sets: Vec<Vec<usize>>,
    /// Vertex holding each variable index.
    leaf_vertex: Vec<VertexId>,
}

/// A parent–child edge that breaks the Clayton nesting condition
/// `α_parent ≥ α_child`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct NestingViolation {
    pub parent: VertexId,
    pub child: VertexId,
    pub parent_alpha: f64,
    pub child_alpha: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct NestingReport {
    pub valid: bool,
    pub violations: Vec<NestingViolation>,
}

impl NacTree {
    pub fn new(root: NacNode) -> Result<Self> {
        if !matches!(root, NacNode::Internal { .. }) {
            return Err(Error::InvalidTree("the root must be an internal vertex".into()));
        }
        let mut tree = NacTree {
            vertices: Vec::new(),
            parent: Vec::new(),
            leaf_sets: Vec::new(),
            leaf_vertex: Vec::new(),
        };
        let mut given = Vec::new();
        let mut unindexed = 0usize;
        tree.push(&root, None, &mut given, &mut unindexed)?;
        let d = given.len() + unindexed;
        if !given.is_empty() && unindexed > 0 {
            return Err(Error::InvalidTree(
                "either every leaf carries an index or none does".into(),
            ));
        }
        // Assign left-to-right indices where they were omitted.
        let mut next = 0;
        let mut seen = vec![false; d];
        for v in 0..tree.vertices.len() {
            if let Vertex::Leaf { index } = &mut tree.vertices[v] {
                if unindexed > 0 {
                    *index = next;
                    next += 1;
                }
                if *index >= d || seen[*index] {
                    return Err(Error::InvalidTree(format!(
                        "leaf indices must be a permutation of 1..={d}, found {}",
                        *index + 1
                    )));
                }
                seen[*index] = true;
            }
        }
        tree.leaf_vertex = vec![0; d];
        tree.leaf_sets = vec![Vec::new(); tree.vertices.len()];
        tree.fill_leaf_sets(0);
        Ok(tree)
    }

    fn push(
        &mut self,
        node: &NacNode,
        parent: Option<VertexId>,
        given: &mut Vec<usize>,
        unindexed: &mut usize,
    ) -> Result<VertexId> {
        let id = self.vertices.len();
        self.parent.push(parent);
        match node {
            NacNode::Leaf(index) => {
                match index {
                    Some(j) => given.push(*j),
                    None => *unindexed += 1,
                }
                self.vertices.push(Vertex::Leaf {
                    index: index.unwrap_or(usize::MAX),
                });
            }
            NacNode::Internal { alpha, children } => {
                if !(alpha.is_finite() && *alpha > 0.0) {
                    return Err(Error::InvalidTree(format!(
                        "alpha must be a positive finite real, got {alpha}"
                    )));
                }
                if children.len() < 2 {
                    return Err(Error::InvalidTree(format!(
                        "internal vertex with {} child(ren); a vertex needs at least two \
                         children, collapse single-child vertices into their parent",
                        children.len()
                    )));
                }
                self.vertices.push(Vertex::Internal {
                    alpha: *alpha,
                    children: Vec::new(),
                });
                let mut ids = Vec::with_capacity(children.len());
                for child in children {
                    ids.push(self.push(child, Some(id), given, unindexed)?);
                }
                if let Vertex::Internal { children, .. } = &mut self.vertices[id] {
                    *children = ids;
                }
            }
        }
        Ok(id)
    }

    fn fill_leaf_sets(&mut self, v: VertexId) {
        let set = match &self.vertices[v] {
            Vertex::Leaf { index } => {
                self.leaf_vertex[*index] = v;
                vec![*index]
            }
            Vertex::Internal { children, .. } => {
                let children = children.clone();
                let mut set = Vec::new();
                for w in children {
                    self.fill_leaf_sets(w);
                    set.extend_from_slice(&self.leaf_sets[w]);
                }
                set.sort_unstable();
                set
            }
        };
        self.leaf_sets[v] = set;
    }

    pub fn root(&self) -> VertexId {
        0
    }

    /// Number of variables `d`.
    pub fn dim(&self) -> usize {
        self.leaf_vertex.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        matches!(self.vertices[v], Vertex::Leaf { .. })
    }

    /// `α_v` for internal vertices, `None` for leaves.
    pub fn alpha(&self, v: VertexId) -> Option<f64> {
        match &self.vertices[v] {
            Vertex::Internal { alpha, .. } => Some(*alpha),
            Vertex::Leaf { .. } => None,
        }
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        match &self.vertices[v] {
            Vertex::Internal { children, .. } => children,
            Vertex::Leaf { .. } => &[],
        }
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    /// `d(v)`, the number of leaves below `v`.
    pub fn leaf_count(&self, v: VertexId) -> usize {
        self.leaf_sets[v].len()
    }

    /// Sorted 0-based variable indices below `v`.
    pub fn leaves(&self, v: VertexId) -> &[usize] {
        &self.leaf_sets[v]
    }

    /// Vertex of the leaf holding variable `j`.
    pub fn leaf_vertex(&self, j: usize) -> VertexId {
        self.leaf_vertex[j]
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).filter(|&v| !self.is_leaf(v))
    }

    /// Internal vertices of the subtree rooted at `v`, including `v`.
    fn subtree_internal(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Vertex::Internal { children, .. } = &self.vertices[u] {
                out.push(u);
                stack.extend(children.iter().copied());
            }
        }
        out
    }

    fn require_internal(&self, v: VertexId) -> Result<f64> {
        if v >= self.vertices.len() {
            return Err(Error::InvalidTree(format!("vertex {v} does not exist")));
        }
        self.alpha(v).ok_or(Error::LeafVertex(v))
    }

    /// Tail copula `Λ_root(x)`.
    pub fn tail_copula(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.dim())?;
        if x.contains(&0.0) {
            return Ok(0.0);
        }
        Ok(self.tail_copula_at(self.root(), x))
    }

    pub(crate) fn tail_copula_at(&self, v: VertexId, x: &[f64]) -> f64 {
        match &self.vertices[v] {
            Vertex::Leaf { index } => x[*index],
            Vertex::Internal { alpha, children } => {
                let values: Vec<f64> = children.iter().map(|&w| self.tail_copula_at(w, x)).collect();
                // (Σ Λ_w^{-1/α})^{-α} = m (Σ (m/Λ_w)^{1/α})^{-α} with m = min Λ_w
                let m = min_of(&values);
                if m == 0.0 {
                    return 0.0;
                }
                let inner: f64 = values.iter().map(|&l| (m / l).powf(1.0 / alpha)).sum();
                m * inner.powf(-alpha)
            }
        }
    }

    /// Checks `α_pa(v) ≥ α_v` for every internal non-root vertex, which is
    /// the sufficient nesting condition for Clayton generators.
    pub fn check_clayton_nesting(&self) -> NestingReport {
        let mut violations = Vec::new();
        for v in self.internal_vertices() {
            let Some(p) = self.parent[v] else { continue };
            let (pa, ca) = (self.alpha(p).unwrap(), self.alpha(v).unwrap());
            if pa < ca {
                violations.push(NestingViolation {
                    parent: p,
                    child: v,
                    parent_alpha: pa,
                    child_alpha: ca,
                });
            }
        }
        NestingReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// `λ*` of the whole tree by the child-product recursion.
    pub fn mtcm_recursive(&self) -> f64 {
        self.log_mtcm_recursive(self.root()).exp()
    }

    /// `λ*_v` of the subtree at `v` by the child-product recursion.
    pub fn mtcm_recursive_at(&self, v: VertexId) -> Result<f64> {
        self.require_internal(v)?;
        Ok(self.log_mtcm_recursive(v).exp())
    }

    fn log_mtcm_recursive(&self, v: VertexId) -> f64 {
        match &self.vertices[v] {
            Vertex::Leaf { .. } => 0.0,
            Vertex::Internal { alpha, children } => {
                let dv = self.leaf_count(v) as f64;
                let mut acc = -alpha * dv.ln();
                for &w in children {
                    let dw = self.leaf_count(w) as f64;
                    acc += (dw / dv) * (alpha * dw.ln() + self.log_mtcm_recursive(w));
                }
                acc
            }
        }
    }

    fn log_mtcm_closed(&self, v: VertexId, alpha_v: f64) -> f64 {
        let dv = self.leaf_count(v) as f64;
        let mut acc = -alpha_v * dv.ln();
        for w in self.subtree_internal(v) {
            if w == v {
                continue;
            }
            let p = self.parent[w].expect("non-root internal vertex has a parent");
            let dw = self.leaf_count(w) as f64;
            acc += (self.alpha(p).unwrap() - self.alpha(w).unwrap()) * (dw / dv) * dw.ln();
        }
        acc
    }

    /// `λ*_v` of the subtree at `v` as a product over its internal
    /// descendants.
    pub fn mtcm_closed(&self, v: VertexId) -> Result<f64> {
        let alpha_v = self.require_internal(v)?;
        Ok(self.log_mtcm_closed(v, alpha_v).exp())
    }

    /// The unique maximizer `b*_v` of the subtree at `v`, one entry per
    /// variable in [`leaves(v)`](Self::leaves) in the same (ascending) order.
    pub fn maximizer(&self, v: VertexId) -> Result<Vec<f64>> {
        let alpha_v = self.require_internal(v)?;
        let base = self.log_mtcm_closed(v, alpha_v) + alpha_v * (self.leaf_count(v) as f64).ln();
        Ok(self.leaf_sets[v]
            .iter()
            .map(|&j| {
                let mut log_b = base;
                let mut w = self.parent[self.leaf_vertex[j]].expect("leaf has a parent");
                while w != v {
                    let p = self.parent[w].expect("w lies strictly below v");
                    let dw = self.leaf_count(w) as f64;
                    log_b += (self.alpha(w).unwrap() - self.alpha(p).unwrap()) * dw.ln();
                    w = p;
                }
                log_b.exp()
            })
            .collect())
    }

    /// Parses the nested JSON form
    /// `{"alpha": a, "children": [ ... | {"leaf": j} ]}` with 1-based `j`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let root = parse_node(value, "")?;
        NacTree::new(root)
    }

    /// Emits the nested JSON form with explicit 1-based leaf indices.
    pub fn to_json(&self) -> Value {
        self.vertex_json(self.root())
    }

    fn vertex_json(&self, v: VertexId) -> Value {
        match &self.vertices[v] {
            Vertex::Leaf { index } => json!({ "leaf": index + 1 }),
            Vertex::Internal { alpha, children } => {
                let kids: Vec<Value> = children.iter().map(|&w| self.vertex_json(w)).collect();
                json!({ "alpha": alpha, "children": kids })
            }
        }
    }
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: if path.is_empty() { "<root>".into() } else { path.to_string() },
        message: message.into(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn parse_node(value: &Value, path: &str) -> Result<NacNode> {
    let obj: &Map<String, Value> = value
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    if obj.contains_key("children") || obj.contains_key("alpha") {
        if let Some(key) = obj.keys().find(|k| *k != "alpha" && *k != "children") {
            return Err(schema(&join(path, key), "unknown field"));
        }
        let alpha_path = join(path, "alpha");
        let alpha = obj
            .get("alpha")
            .ok_or_else(|| schema(&alpha_path, "missing field"))?
            .as_f64()
            .ok_or_else(|| schema(&alpha_path, "expected a number"))?;
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(schema(&alpha_path, format!("must be positive, got {alpha}")));
        }
        let children_path = join(path, "children");
        let children = obj
            .get("children")
            .ok_or_else(|| schema(&children_path, "missing field"))?
            .as_array()
            .ok_or_else(|| schema(&children_path, "expected an array"))?;
        if children.len() < 2 {
            return Err(schema(
                &children_path,
                format!(
                    "a vertex needs at least two children, found {}; collapse it into its parent",
                    children.len()
                ),
            ));
        }
        let children = children
            .iter()
            .enumerate()
            .map(|(i, c)| parse_node(c, &format!("{children_path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(NacNode::Internal { alpha, children });
    }
    if let Some(key) = obj.keys().find(|k| *k != "leaf") {
        return Err(schema(&join(path, key), "unknown field"));
    }
    match obj.get("leaf") {
        None | Some(Value::Null) => Ok(NacNode::Leaf(None)),
        Some(v) => {
            let j = v
                .as_u64()
                .filter(|&j| j >= 1)
                .ok_or_else(|| schema(&join(path, "leaf"), "expected a positive integer"))?;
            Ok(NacNode::Leaf(Some(j as usize - 1)))
        }
    }
}

/// Shape limits for [`random_tree`].
#[derive(Debug, Clone, Copy)]
pub struct RandomTreeOptions {
    /// Maximum number of internal levels, root included.
    pub max_depth: usize,
    pub max_leaves: usize,
    /// Draw `α` so that `α_parent ≥ α_child` on every edge.
    pub nesting_valid: bool,
}

/// Draws a random valid tree with shuffled leaf indices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, opts: RandomTreeOptions) -> NacTree {
    assert!(opts.max_depth >= 1 && opts.max_leaves >= 2);
    let n = rng.gen_range(2..=opts.max_leaves);
    let alpha = rng.gen_range(0.3..3.0);
    let root = random_node(rng, n, 1, alpha, &opts);
    let mut tree = NacTree::new(root).expect("generated tree is valid");
    let mut perm: Vec<usize> = (0..tree.dim()).collect();
    perm.shuffle(rng);
    for vertex in tree.vertices.iter_mut() {
        if let Vertex::Leaf { index } = vertex {
            *index = perm[*index];
        }
    }
    tree.leaf_vertex = vec![0; tree.dim()];
    tree.fill_leaf_sets(0);
    tree
}

fn random_node<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    depth: usize,
    alpha: f64,
    opts: &RandomTreeOptions,
) -> NacNode {
    if depth >= opts.max_depth || n == 2 {
        return NacNode::internal(alpha, NacNode::leaves(n));
    }
    // Split n leaves into m >= 2 consecutive groups.
    let m = rng.gen_range(2..=n);
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..m - 1].to_vec();
    cuts.sort_unstable();
    cuts.push(n);
    let mut children = Vec::with_capacity(m);
    let mut start = 0;
    for cut in cuts {
        let size = cut - start;
        start = cut;
        if size == 1 {
            children.push(NacNode::Leaf(None));
        } else {
            let child_alpha = if opts.nesting_valid {
                alpha * rng.gen_range(0.2..1.0)
            } else {
                rng.gen_range(0.2..3.0)
            };
            children.push(random_node(rng, size, depth + 1, child_alpha, opts));
        }
    }
    NacNode::internal(alpha, children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn single_level(alpha: f64, d: usize) -> NacTree {
        NacTree::new(NacNode::internal(alpha, NacNode::leaves(d))).unwrap()
    }

    /// Root α0 over leaf 1 and a block (α1; leaves 2, 3).
    fn fully_nested(a0: f64, a1: f64) -> NacTree {
        NacTree::new(NacNode::internal(
            a0,
            vec![NacNode::Leaf(None), NacNode::internal(a1, NacNode::leaves(2))],
        ))
        .unwrap()
    }

    /// Root α0 over a 2-block α1 and a 3-block α2.
    fn two_blocks(a0: f64, a1: f64, a2: f64) -> NacTree {
        NacTree::new(NacNode::internal(
            a0,
            vec![
                NacNode::internal(a1, NacNode::leaves(2)),
                NacNode::internal(a2, NacNode::leaves(3)),
            ],
        ))
        .unwrap()
    }

    fn archimedean(alpha: f64, x: &[f64]) -> f64 {
        x.iter().map(|v| v.powf(-1.0 / alpha)).sum::<f64>().powf(-alpha)
    }

    #[test]
    fn structure_and_derived_data() {
        let t = two_blocks(2.0, 1.0, 0.5);
        assert_eq!(t.dim(), 5);
        assert_eq!(t.leaf_count(0), 5);
        let blocks = t.children(0).to_vec();
        assert_eq!(t.leaves(blocks[0]), &[0, 1]);
        assert_eq!(t.leaves(blocks[1]), &[2, 3, 4]);
        assert_eq!(t.parent(blocks[1]), Some(0));
        assert_eq!(t.internal_vertices().count(), 3);
        for v in t.internal_vertices() {
            let s: usize = t.children(v).iter().map(|&w| t.leaf_count(w)).sum();
            assert_eq!(s, t.leaf_count(v));
        }
    }

    #[test]
    fn rejects_malformed_trees() {
        assert!(NacTree::new(NacNode::Leaf(None)).is_err());
        assert!(NacTree::new(NacNode::internal(1.0, NacNode::leaves(1))).is_err());
        assert!(NacTree::new(NacNode::internal(
            1.0,
            vec![NacNode::Leaf(None), NacNode::internal(1.0, NacNode::leaves(1))]
        ))
        .is_err());
        assert!(NacTree::new(NacNode::internal(-1.0, NacNode::leaves(2))).is_err());
        assert!(NacTree::new(NacNode::internal(1.0, vec![NacNode::leaf(0), NacNode::leaf(0)])).is_err());
        assert!(NacTree::new(NacNode::internal(1.0, vec![NacNode::leaf(0), NacNode::leaf(2)])).is_err());
        assert!(NacTree::new(NacNode::internal(1.0, vec![NacNode::leaf(0), NacNode::Leaf(None)])).is_err());
    }

    #[test]
    fn tail_copula_reduces_to_archimedean() {
        let t = single_level(0.7, 4);
        assert!(close(t.tail_copula(&[1.0; 4]).unwrap(), 4f64.powf(-0.7), 1e-15));
        let t = fully_nested(1.3, 1.3);
        assert!(close(t.tail_copula(&[1.0; 3]).unwrap(), 3f64.powf(-1.3), 1e-15));
        assert_eq!(t.tail_copula(&[1.0, 0.0, 2.0]).unwrap(), 0.0);
        assert!(t.tail_copula(&[1.0, -1.0, 2.0]).is_err());
    }

    #[test]
    fn two_level_tail_copula_matches_hand_formula() {
        let (a0, a1, a2) = (2.0, 1.0, 0.5);
        let t = two_blocks(a0, a1, a2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x: Vec<f64> = (0..5).map(|_| rng.gen_range(0.05..4.0)).collect();
            let l1 = archimedean(a1, &x[..2]);
            let l2 = archimedean(a2, &x[2..]);
            let expected = archimedean(a0, &[l1, l2]);
            let got = t.tail_copula(&x).unwrap();
            assert!(close(got, expected, 1e-13 * expected.max(1.0)), "{got} vs {expected}");
        }
    }

    #[test]
    fn nesting_check() {
        assert!(fully_nested(2.0, 1.0).check_clayton_nesting().valid);
        let bad = fully_nested(1.0, 2.0).check_clayton_nesting();
        assert!(!bad.valid);
        assert_eq!(bad.violations.len(), 1);
        assert_eq!(bad.violations[0].parent, 0);
        assert!(single_level(1.0, 3).check_clayton_nesting().valid);
    }

    #[test]
    fn recursion_examples() {
        assert!(close(single_level(0.8, 5).mtcm_recursive(), 5f64.powf(-0.8), 1e-15));
        // 3^-2 * 2^(2/3) = 0.176378...
        let v = fully_nested(2.0, 1.0).mtcm_recursive();
        assert!(close(v, 0.176_378, 1e-6), "{v}");
        assert!(close(v, 2f64.powf(2.0 / 3.0) / 9.0, 1e-15));
        let (a0, a1, a2) = (2.0, 1.0, 0.5);
        let expected = 5f64.powf(-a0)
            / (2f64.powf(2.0 * (a1 - a0) / 5.0) * 3f64.powf(3.0 * (a2 - a0) / 5.0));
        let t = two_blocks(a0, a1, a2);
        assert!(close(t.mtcm_recursive(), expected, 1e-15));
        assert!(close(t.mtcm_closed(0).unwrap(), expected, 1e-15));
    }

    #[test]
    fn closed_form_requires_internal_vertex() {
        let t = fully_nested(2.0, 1.0);
        let leaf = t.leaf_vertex(0);
        assert!(matches!(t.mtcm_closed(leaf), Err(Error::LeafVertex(_))));
        assert!(matches!(t.maximizer(leaf), Err(Error::LeafVertex(_))));
        assert!(t.mtcm_closed(99).is_err());
    }

    #[test]
    fn maximizer_of_fully_nested_example() {
        let t = fully_nested(2.0, 1.0);
        let b = t.maximizer(0).unwrap();
        let expected = [2f64.powf(2.0 / 3.0), 2f64.powf(-1.0 / 3.0), 2f64.powf(-1.0 / 3.0)];
        for (g, e) in b.iter().zip(expected) {
            assert!(close(*g, e, 1e-14));
        }
        assert!(close(b[0], 1.5874, 1e-4) && close(b[1], 0.7937, 1e-4));
        assert!(close(b.iter().product::<f64>(), 1.0, 1e-12));
        let lambda = t.mtcm_closed(0).unwrap();
        assert!(close(t.tail_copula(&b).unwrap(), lambda, 1e-12));
        assert_eq!(single_level(1.7, 4).maximizer(0).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn subtree_maximizer_covers_its_leaves() {
        let t = two_blocks(2.0, 1.0, 0.5);
        let block = t.children(0)[1];
        let b = t.maximizer(block).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|&v| close(v, 1.0, 1e-14)));
        assert!(close(t.mtcm_closed(block).unwrap(), 3f64.powf(-0.5), 1e-15));
    }

    #[test]
    fn closed_form_equals_recursion_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for i in 0..100 {
            let tree = random_tree(
                &mut rng,
                RandomTreeOptions {
                    max_depth: 4,
                    max_leaves: 12,
                    nesting_valid: i % 2 == 0,
                },
            );
            for v in tree.internal_vertices() {
                let a = tree.mtcm_recursive_at(v).unwrap();
                let b = tree.mtcm_closed(v).unwrap();
                assert!(((a - b) / b).abs() <= 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"alpha": 2, "children": [{"leaf": 3}, {"alpha": 1, "children": [{"leaf": 1}, {"leaf": 2}]}]}"#;
        let tree = NacTree::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(tree.leaves(0), &[0, 1, 2]);
        assert_eq!(tree.leaf_vertex(2), 1);
        let again = NacTree::from_json(&tree.to_json()).unwrap();
        assert_eq!(again, tree);

        let implicit = r#"{"alpha": 2, "children": [{}, {"alpha": 1, "children": [{"leaf": null}, {}]}]}"#;
        let t2 = NacTree::from_json(&serde_json::from_str(implicit).unwrap()).unwrap();
        assert_eq!(t2, fully_nested(2.0, 1.0));

        let one_child = r#"{"alpha": 2, "children": [{}, {"alpha": 1, "children": [{}]}]}"#;
        match NacTree::from_json(&serde_json::from_str(one_child).unwrap()) {
            Err(Error::Schema { path, message }) => {
                assert_eq!(path, "children[1].children");
                assert!(message.contains("collapse"));
            }
            other => panic!("{other:?}"),
        }
        let bad_alpha = r#"{"alpha": "x", "children": [{}, {}]}"#;
        assert!(matches!(
            NacTree::from_json(&serde_json::from_str(bad_alpha).unwrap()),
            Err(Error::Schema { path, .. }) if path == "alpha"
        ));
    }
}
