//! The extremal family of mixed multigraphs whose oriented radius is
//! exactly `r^2 + 3r - 1`.
//!
//! The family member for parameter `r` glues two copies of a decorated
//! ternary tree of height `r` at their roots. Every internal tree vertex
//! has a left, middle and right child; middle children are always
//! leaves. Siblings at level `i + 1` are joined by detour paths of
//! length `2r - 2i - 1` running left -> middle -> right, and only the
//! middle edge of each detour path is directed (along the detour). Those
//! few arcs force the direction of every edge except the ones between a
//! parent and its middle child.

use std::collections::BTreeMap;

use crate::driver::Orientation;
use crate::graph::{EdgeId, MixedMultigraph, VertexId};
use crate::oracle::forced_orientations;

/// Children of one internal tree vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Children {
    pub left: VertexId,
    pub middle: VertexId,
    pub right: VertexId,
}

/// Tree structure of one of the two glued copies; the root is shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyLabels {
    /// Every vertex of the copy, including the shared root and the
    /// detour-path interior vertices.
    pub vertices: Vec<VertexId>,
    /// Internal tree vertices in creation (breadth-first) order.
    pub internal: Vec<VertexId>,
    pub children: BTreeMap<VertexId, Children>,
    /// Tree edge joining each non-root tree vertex to its parent.
    pub parent_edge: BTreeMap<VertexId, EdgeId>,
    /// Level (root distance in the tree) of each tree vertex.
    pub level: BTreeMap<VertexId, usize>,
    /// Deepest all-left-children leaf.
    pub leftmost_leaf: VertexId,
    /// Deepest all-right-children leaf.
    pub rightmost_leaf: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundFamily {
    pub r: usize,
    pub graph: MixedMultigraph,
    pub root: VertexId,
    pub copies: [CopyLabels; 2],
}

fn build_copy(g: &mut MixedMultigraph, root: VertexId, r: usize) -> CopyLabels {
    let mut labels = CopyLabels {
        vertices: vec![root],
        internal: Vec::new(),
        children: BTreeMap::new(),
        parent_edge: BTreeMap::new(),
        level: BTreeMap::from([(root, 0)]),
        leftmost_leaf: root,
        rightmost_leaf: root,
    };
    let new_vertex = |g: &mut MixedMultigraph, labels: &mut CopyLabels| {
        let v = g.add_vertex();
        labels.vertices.push(v);
        v
    };

    // (vertex, level); levels 0..r-1 are internal.
    let mut queue = std::collections::VecDeque::from([(root, 0usize)]);
    while let Some((p, lvl)) = queue.pop_front() {
        labels.internal.push(p);
        let left = new_vertex(g, &mut labels);
        let middle = new_vertex(g, &mut labels);
        let right = new_vertex(g, &mut labels);
        for child in [left, middle, right] {
            let e = g.add_undirected(p, child);
            labels.parent_edge.insert(child, e);
            labels.level.insert(child, lvl + 1);
        }
        labels.children.insert(p, Children { left, middle, right });

        // Detour paths left -> middle -> right, each of odd length
        // 2r - 2*lvl - 1 with only the central edge directed.
        let len = 2 * r - 2 * lvl - 1;
        for (from, to) in [(left, middle), (middle, right)] {
            let mut prev = from;
            for step in 1..=len {
                let next = if step == len {
                    to
                } else {
                    new_vertex(g, &mut labels)
                };
                if step == (len + 1) / 2 {
                    g.add_directed(prev, next);
                } else {
                    g.add_undirected(prev, next);
                }
                prev = next;
            }
        }

        if lvl + 1 <= r - 1 {
            queue.push_back((left, lvl + 1));
            queue.push_back((right, lvl + 1));
        }
    }

    let mut v = root;
    while let Some(c) = labels.children.get(&v) {
        v = c.left;
    }
    labels.leftmost_leaf = v;
    v = root;
    while let Some(c) = labels.children.get(&v) {
        v = c.right;
    }
    labels.rightmost_leaf = v;
    labels
}

/// Builds the family member for `r >= 1`. Its radius is `r`, its unique
/// centre is the shared root, and its oriented radius is
/// `r^2 + 3r - 1`.
pub fn lower_bound_family(r: usize) -> LowerBoundFamily {
    assert!(r >= 1);
    let mut g = MixedMultigraph::new(1);
    let root = 0;
    let first = build_copy(&mut g, root, r);
    let second = build_copy(&mut g, root, r);
    LowerBoundFamily {
        r,
        graph: g,
        root,
        copies: [first, second],
    }
}

/// The radius the optimal orientation of the family attains.
pub fn lower_bound_value(r: usize) -> usize {
    r * r + 3 * r - 1
}

/// Orients a family graph to radius exactly `r^2 + 3r - 1`.
///
/// All forced edges are committed first; each remaining parent-to-middle
/// edge then copies the direction of its parent's own tree edge (away
/// from the parent exactly when the parent's edge points away from it),
/// with the root's middle edge pointing down in both copies.
pub fn optimal_lower_bound_orientation(fam: &LowerBoundFamily) -> Orientation {
    let (_, mut heads) = forced_orientations(&fam.graph).expect("family graph is orientable");
    for copy in &fam.copies {
        for &p in &copy.internal {
            let c = copy.children[&p];
            let middle_edge = copy.parent_edge[&c.middle];
            assert!(
                !heads.contains_key(&middle_edge),
                "middle edge was unexpectedly forced"
            );
            let head = if p == fam.root {
                c.middle
            } else {
                let up = copy.parent_edge[&p];
                let up_head = *heads.get(&up).expect("non-middle tree edge is forced");
                if up_head == p {
                    // Parent edge points at p, so the middle edge does
                    // too.
                    p
                } else {
                    c.middle
                }
            };
            heads.insert(middle_edge, head);
        }
    }
    let orientation = Orientation {
        source: fam.graph.clone(),
        heads,
    };
    assert!(orientation.is_total(), "some edge stayed unforced");
    orientation
}
