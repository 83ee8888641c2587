//! Split tree: recursive halving of the bounding box along its longest side.
//!
//! Written for points in `R^D`; the rest of the crate only instantiates `D = 2`.

use std::ops::Range;

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox<const D: usize> {
    pub min: [f64; D],
    pub max: [f64; D],
}

impl<const D: usize> BoundingBox<D> {
    pub fn of<'a>(points: impl IntoIterator<Item = &'a [f64; D]>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let mut b = Self {
            min: first,
            max: first,
        };
        for p in it {
            for k in 0..D {
                b.min[k] = b.min[k].min(p[k]);
                b.max[k] = b.max[k].max(p[k]);
            }
        }
        Some(b)
    }

    pub fn side(&self, k: usize) -> f64 {
        self.max[k] - self.min[k]
    }

    /// Index and length of the longest side; ties go to the lowest index.
    pub fn longest_side(&self) -> (usize, f64) {
        (0..D).fold((0, self.side(0)), |(bk, bl), k| {
            if self.side(k) > bl {
                (k, self.side(k))
            } else {
                (bk, bl)
            }
        })
    }

    pub fn center(&self) -> [f64; D] {
        std::array::from_fn(|k| 0.5 * (self.min[k] + self.max[k]))
    }

    /// Radius of the smallest ball centered at [`Self::center`] containing the box.
    pub fn half_diagonal(&self) -> f64 {
        0.5 * (0..D).map(|k| self.side(k).powi(2)).sum::<f64>().sqrt()
    }

    pub fn contains(&self, p: &[f64; D]) -> bool {
        (0..D).all(|k| self.min[k] <= p[k] && p[k] <= self.max[k])
    }
}

pub(crate) fn euclid<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    (0..D).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitNode<const D: usize> {
    /// Tight bounding box of the node's points.
    pub bbox: BoundingBox<D>,
    /// Positions in [`SplitTree::order`] holding this node's points.
    pub range: Range<usize>,
    pub children: Option<(usize, usize)>,
    pub parent: Option<usize>,
}

impl<const D: usize> SplitNode<D> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn size(&self) -> usize {
        self.range.len()
    }
}

/// Split tree over a point set. Every node's subset is a contiguous run of
/// [`SplitTree::order`], and children's runs partition their parent's.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitTree<const D: usize = 2> {
    coords: Vec<[f64; D]>,
    nodes: Vec<SplitNode<D>>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl<const D: usize> SplitTree<D> {
    /// Builds the tree. Points lying exactly on a cutting hyperplane go to the
    /// lower child. Coordinates must be finite and pairwise distinct.
    pub fn build(coords: Vec<[f64; D]>) -> Self {
        assert!(!coords.is_empty(), "split tree of an empty set");
        let n = coords.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut nodes: Vec<SplitNode<D>> = Vec::with_capacity(2 * n - 1);
        // (node range, parent, is_left_child); popped in preorder
        let mut stack = vec![(0..n, None::<usize>, false)];
        while let Some((range, parent, is_left)) = stack.pop() {
            let bbox = BoundingBox::of(order[range.clone()].iter().map(|&i| &coords[i]))
                .expect("non-empty range");
            let id = nodes.len();
            nodes.push(SplitNode {
                bbox,
                range: range.clone(),
                children: None,
                parent,
            });
            if let Some(p) = parent {
                let ch = nodes[p].children.get_or_insert((usize::MAX, usize::MAX));
                if is_left {
                    ch.0 = id;
                } else {
                    ch.1 = id;
                }
            }
            if range.len() == 1 {
                continue;
            }
            let mid = split_range(&coords, &mut order[range.clone()], &bbox) + range.start;
            stack.push((mid..range.end, Some(id), false));
            stack.push((range.start..mid, Some(id), true));
        }
        let mut position = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            position[i] = pos;
        }
        Self {
            coords,
            nodes,
            order,
            position,
        }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node(&self, id: usize) -> &SplitNode<D> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[SplitNode<D>] {
        &self.nodes
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn coords(&self) -> &[[f64; D]] {
        &self.coords
    }

    pub fn point_count(&self) -> usize {
        self.coords.len()
    }

    /// Point indices of node `id`, in tree order.
    pub fn points(&self, id: usize) -> &[usize] {
        &self.order[self.nodes[id].range.clone()]
    }

    pub fn contains(&self, id: usize, point: usize) -> bool {
        self.nodes[id].range.contains(&self.position[point])
    }

    pub fn leaf_of(&self, point: usize) -> usize {
        let mut id = self.root();
        while let Some((l, r)) = self.nodes[id].children {
            id = if self.contains(l, point) { l } else { r };
        }
        id
    }

    /// Deepest node containing both points.
    pub fn lowest_common_node(&self, p: usize, q: usize) -> usize {
        let mut id = self.root();
        while let Some((l, r)) = self.nodes[id].children {
            match (self.contains(l, p), self.contains(l, q)) {
                (true, true) => id = l,
                (false, false) => id = r,
                _ => break,
            }
        }
        id
    }

    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        for id in 1..self.nodes.len() {
            depth[id] = depth[self.nodes[id].parent.expect("non-root")] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

/// Partitions `slice` by the midpoint of the longest side and returns the
/// size of the lower part.
fn split_range<const D: usize>(coords: &[[f64; D]], slice: &mut [usize], bbox: &BoundingBox<D>) -> usize {
    let (k, _) = bbox.longest_side();
    let cut = 0.5 * (bbox.min[k] + bbox.max[k]);
    let (mut lower, upper): (Vec<usize>, Vec<usize>) = slice.iter().partition(|&&i| coords[i][k] <= cut);
    if upper.is_empty() {
        // only reachable when min and max are adjacent floats
        let top = lower.iter().rposition(|&i| coords[i][k] == bbox.max[k]).expect("max attained");
        let moved = lower.remove(top);
        let n = lower.len();
        slice[..n].copy_from_slice(&lower);
        slice[n] = moved;
        return n;
    }
    let n = lower.len();
    slice[..n].copy_from_slice(&lower);
    slice[n..].copy_from_slice(&upper);
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_a_leaf() {
        let t = SplitTree::build(vec![[0.5, 0.5]]);
        assert_eq!(t.nodes().len(), 1);
        assert!(t.node(0).is_leaf());
    }

    #[test]
    fn two_points_cut_orthogonal_to_x() {
        let t = SplitTree::build(vec![[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(t.nodes().len(), 3);
        let (l, r) = t.node(0).children.unwrap();
        assert_eq!(t.points(l), &[0]);
        assert_eq!(t.points(r), &[1]);
        assert_eq!(t.node(0).bbox.longest_side(), (0, 1.0));
    }

    #[test]
    fn unit_square_corners() {
        let t = SplitTree::build(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        // square: tie -> cut x at 0.5; each half is a vertical pair -> cut y
        assert_eq!(t.depth(), 2);
        assert_eq!(t.nodes().iter().filter(|n| n.is_leaf()).count(), 4);
        let (l, r) = t.node(0).children.unwrap();
        let mut left = t.points(l).to_vec();
        left.sort();
        assert_eq!(left, vec![0, 3]);
        assert_eq!(t.node(l).bbox.longest_side(), (1, 1.0));
        assert_eq!(t.node(r).bbox.longest_side(), (1, 1.0));
    }

    #[test]
    fn point_on_cut_goes_low() {
        let t = SplitTree::build(vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]]);
        let (l, _) = t.node(0).children.unwrap();
        assert_eq!(t.node(l).size(), 2);
        assert!(t.contains(l, 1));
    }

    #[test]
    fn structural_invariants() {
        let coords: Vec<[f64; 2]> = (0..60)
            .map(|i| {
                let f = i as f64;
                [(f * 0.618_033_988_7).fract(), (f * 0.414_213_562_3).fract()]
            })
            .collect();
        let t = SplitTree::build(coords.clone());
        for node in t.nodes() {
            match node.children {
                None => assert_eq!(node.size(), 1),
                Some((l, r)) => {
                    let (nl, nr) = (t.node(l), t.node(r));
                    assert_eq!(nl.range.start, node.range.start);
                    assert_eq!(nl.range.end, nr.range.start);
                    assert_eq!(nr.range.end, node.range.end);
                    let (k, longest) = node.bbox.longest_side();
                    assert!(nl.bbox.side(k) <= 0.5 * longest);
                    assert!(nr.bbox.side(k) <= 0.5 * longest);
                }
            }
            for &i in &t.order()[node.range.clone()] {
                assert!(node.bbox.contains(&coords[i]));
            }
        }
        for i in 0..coords.len() {
            assert_eq!(t.points(t.leaf_of(i)), &[i]);
        }
    }

    #[test]
    fn three_dimensions() {
        let t = SplitTree::build(vec![[0.0, 0.0, 0.0], [0.0, 0.0, 4.0], [0.0, 1.0, 0.0]]);
        assert_eq!(t.node(0).bbox.longest_side(), (2, 4.0));
        assert_eq!(t.nodes().len(), 5);
    }
}
