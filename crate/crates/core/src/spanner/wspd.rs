//! Well-separated pair decomposition computed from a split tree.

use serde::{Deserialize, Serialize};

use super::split_tree::{euclid, BoundingBox, SplitTree};

/// How a pair's endpoint for the spanner edge is chosen from each subset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RepresentativePolicy {
    #[default]
    LowestIndex,
    HighestIndex,
    /// Point closest to the center of the node's bounding box, lowest index on ties.
    NearestCenter,
}

impl RepresentativePolicy {
    fn pick<const D: usize>(self, tree: &SplitTree<D>, node: usize) -> usize {
        let pts = tree.points(node);
        match self {
            Self::LowestIndex => *pts.iter().min().expect("non-empty node"),
            Self::HighestIndex => *pts.iter().max().expect("non-empty node"),
            Self::NearestCenter => {
                let c = tree.node(node).bbox.center();
                *pts.iter()
                    .min_by(|&&i, &&j| {
                        euclid(&tree.coords()[i], &c)
                            .total_cmp(&euclid(&tree.coords()[j], &c))
                            .then(i.cmp(&j))
                    })
                    .expect("non-empty node")
            }
        }
    }
}

/// Decides well-separation of two boxes with respect to `s`.
///
/// Both boxes are enclosed in balls of the common radius `r`, the larger of
/// the two half-diagonals, centered at the box centers. The boxes are
/// well-separated iff the gap between the balls is at least `s * r`.
pub fn well_separated<const D: usize>(a: &BoundingBox<D>, b: &BoundingBox<D>, s: f64) -> (bool, f64) {
    let r = a.half_diagonal().max(b.half_diagonal());
    let gap = euclid(&a.center(), &b.center()) - 2.0 * r;
    (gap >= s * r, r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WsPair {
    pub node_a: usize,
    pub node_b: usize,
    pub rep_a: usize,
    pub rep_b: usize,
    /// Common radius of the two enclosing balls.
    pub radius: f64,
    pub separation: f64,
    /// The internal node whose children's pairing produced this pair.
    pub origin: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wspd<const D: usize = 2> {
    pub pairs: Vec<WsPair>,
    pub s: f64,
    pub tree: SplitTree<D>,
    by_origin: Vec<Vec<usize>>,
}

/// WSPD with lowest-index representatives.
pub fn compute_wspd<const D: usize>(tree: SplitTree<D>, s: f64) -> Wspd<D> {
    compute_wspd_with(tree, s, RepresentativePolicy::default())
}

/// Pairs the two children of every internal node, splitting the box with the
/// longer longest side until the pair is well-separated. Ties split the
/// second argument.
pub fn compute_wspd_with<const D: usize>(tree: SplitTree<D>, s: f64, policy: RepresentativePolicy) -> Wspd<D> {
    assert!(s > 0.0, "separation must be positive");
    let mut pairs = Vec::new();
    let mut by_origin = vec![Vec::new(); tree.nodes().len()];
    for origin in 0..tree.nodes().len() {
        let Some((l, r)) = tree.node(origin).children else {
            continue;
        };
        let mut stack = vec![(l, r)];
        while let Some((v, w)) = stack.pop() {
            let (bv, bw) = (&tree.node(v).bbox, &tree.node(w).bbox);
            let (separated, radius) = well_separated(bv, bw, s);
            if separated {
                by_origin[origin].push(pairs.len());
                pairs.push(WsPair {
                    node_a: v,
                    node_b: w,
                    rep_a: policy.pick(&tree, v),
                    rep_b: policy.pick(&tree, w),
                    radius,
                    separation: s,
                    origin,
                });
                continue;
            }
            // both leaves are always separated, so the split node is internal
            if bv.longest_side().1 > bw.longest_side().1 {
                let (vl, vr) = tree.node(v).children.expect("internal node");
                stack.push((vr, w));
                stack.push((vl, w));
            } else {
                let (wl, wr) = tree.node(w).children.expect("internal node");
                stack.push((v, wr));
                stack.push((v, wl));
            }
        }
    }
    Wspd {
        pairs,
        s,
        tree,
        by_origin,
    }
}

impl<const D: usize> Wspd<D> {
    /// The pair separating `p` from `q`, and whether `p` lies on its `b` side.
    pub fn pair_for(&self, p: usize, q: usize) -> Option<(usize, bool)> {
        if p == q {
            return None;
        }
        let origin = self.tree.lowest_common_node(p, q);
        self.by_origin[origin].iter().find_map(|&i| {
            let pair = &self.pairs[i];
            let t = &self.tree;
            if t.contains(pair.node_a, p) && t.contains(pair.node_b, q) {
                Some((i, false))
            } else if t.contains(pair.node_a, q) && t.contains(pair.node_b, p) {
                Some((i, true))
            } else {
                None
            }
        })
    }

    pub fn subset_a(&self, pair: usize) -> &[usize] {
        self.tree.points(self.pairs[pair].node_a)
    }

    pub fn subset_b(&self, pair: usize) -> &[usize] {
        self.tree.points(self.pairs[pair].node_b)
    }

    pub fn to_document(&self) -> WspdDocument {
        WspdDocument {
            s: self.s,
            pairs: self
                .pairs
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let mut a = self.subset_a(i).to_vec();
                    let mut b = self.subset_b(i).to_vec();
                    a.sort_unstable();
                    b.sort_unstable();
                    PairDocument {
                        a,
                        b,
                        rep_a: p.rep_a,
                        rep_b: p.rep_b,
                        r: p.radius,
                    }
                })
                .collect(),
        }
    }
}

/// On-disk WSPD format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WspdDocument {
    pub s: f64,
    pub pairs: Vec<PairDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDocument {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub rep_a: usize,
    pub rep_b: usize,
    pub r: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(min: [f64; 2], max: [f64; 2]) -> BoundingBox<2> {
        BoundingBox { min, max }
    }

    /// Number of pairs covering `{p, q}`, by direct subset membership.
    fn coverage(w: &Wspd, p: usize, q: usize) -> usize {
        (0..w.pairs.len())
            .filter(|&i| {
                let (a, b) = (w.subset_a(i), w.subset_b(i));
                (a.contains(&p) && b.contains(&q)) || (a.contains(&q) && b.contains(&p))
            })
            .count()
    }

    #[test]
    fn well_separated_examples() {
        let (ok, r) = well_separated(&boxed([0.0, 0.0], [0.0, 0.0]), &boxed([1.0, 0.0], [1.0, 0.0]), 1e6);
        assert!(ok);
        assert_eq!(r, 0.0);
        let unit = boxed([0.0, 0.0], [1.0, 1.0]);
        let (ok, r) = well_separated(&unit, &boxed([10.0, 0.0], [11.0, 1.0]), 2.0);
        assert!(ok);
        assert!((r - 0.5f64.sqrt()).abs() < 1e-15);
        let (ok, _) = well_separated(&unit, &boxed([2.0, 0.0], [3.0, 1.0]), 2.0);
        assert!(!ok);
    }

    #[test]
    fn two_points_one_pair() {
        let w = compute_wspd(SplitTree::build(vec![[0.0, 0.0], [1.0, 0.0]]), 2.0);
        assert_eq!(w.pairs.len(), 1);
        assert_eq!(w.pair_for(1, 0), Some((0, true)));
    }

    #[test]
    fn collinear_triple_covered_once() {
        let w = compute_wspd(SplitTree::build(vec![[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]), 1.0);
        for p in 0..3 {
            for q in p + 1..3 {
                assert_eq!(coverage(&w, p, q), 1, "pair ({p}, {q})");
                let (i, swapped) = w.pair_for(p, q).unwrap();
                let (a, b) = (w.subset_a(i), w.subset_b(i));
                if swapped {
                    assert!(a.contains(&q) && b.contains(&p));
                } else {
                    assert!(a.contains(&p) && b.contains(&q));
                }
            }
        }
    }

    #[test]
    fn pairs_are_separated_pointwise() {
        let coords: Vec<[f64; 2]> = (0..30)
            .map(|i| {
                let f = i as f64;
                [(f * 0.754_877_666).fract(), (f * 0.569_840_291).fract()]
            })
            .collect();
        let s = 3.0;
        let w = compute_wspd(SplitTree::build(coords.clone()), s);
        for (i, pair) in w.pairs.iter().enumerate() {
            for &x in w.subset_a(i) {
                for &y in w.subset_b(i) {
                    assert!(euclid(&coords[x], &coords[y]) >= s * pair.radius);
                }
            }
            assert!(w.subset_a(i).contains(&pair.rep_a));
            assert!(w.subset_b(i).contains(&pair.rep_b));
        }
        for p in 0..coords.len() {
            for q in p + 1..coords.len() {
                assert_eq!(coverage(&w, p, q), 1);
            }
        }
    }

    #[test]
    fn representative_policies() {
        let tree = SplitTree::build(vec![[0.0, 0.0], [0.1, 0.0], [0.2, 0.0], [5.0, 0.0]]);
        let low = compute_wspd_with(tree.clone(), 2.0, RepresentativePolicy::LowestIndex);
        let high = compute_wspd_with(tree.clone(), 2.0, RepresentativePolicy::HighestIndex);
        let mid = compute_wspd_with(tree, 2.0, RepresentativePolicy::NearestCenter);
        let big = |w: &Wspd| w.pairs.iter().find(|p| w.tree.node(p.node_a).size() == 3).map(|p| p.rep_a);
        assert_eq!(big(&low), Some(0));
        assert_eq!(big(&high), Some(2));
        assert_eq!(big(&mid), Some(1));
    }

    #[test]
    fn document_lists_sorted_subsets() {
        let w = compute_wspd(SplitTree::build(vec![[0.0, 0.0], [1.0, 0.0]]), 2.0);
        let json = serde_json::to_string(&w.to_document()).unwrap();
        assert_eq!(json, r#"{"s":2.0,"pairs":[{"a":[0],"b":[1],"rep_a":0,"rep_b":1,"r":0.0}]}"#);
    }
}
