//! Minimum spanning tree over a complete graph, and the least-cost
//! backhaul/core topology built from it.

use crate::error::{Error, Result};
use crate::model::{Backhaul, CoordinateSystem, FiberPop, Region};

use super::{Link, LinkKind};

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal's algorithm on the complete graph over `0..n`.
///
/// Returns `n - 1` edges `(i, j, w)` with `i < j`, in the order they were
/// accepted. Equal weights are broken by `(i, j)`, so callers that want a
/// particular tie order should number nodes accordingly.
pub fn minimum_spanning_tree(
    n: usize,
    weight: impl Fn(usize, usize) -> f64,
) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, weight(i, j)));
        }
    }
    edges.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let mut sets = DisjointSet::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for (i, j, w) in edges {
        if sets.union(i, j) {
            tree.push((i, j, w));
            if tree.len() + 1 == n {
                break;
            }
        }
    }
    tree
}

/// The spanning tree connecting every region node to the fiber network.
#[derive(Debug, Clone, PartialEq)]
pub struct BackhaulTree {
    /// Every tree edge with its kind under wireless backhaul. Region-to-region
    /// edges are re-labelled by [`BackhaulTree::links`] for fiber.
    edges: Vec<Link>,
    /// For each input region, the index into `edges` of the edge joining it to
    /// its parent (towards the nearest point of presence).
    region_edge: Vec<usize>,
}

impl BackhaulTree {
    /// All tree edges for the given backhaul technology.
    pub fn links(&self, backhaul: Backhaul) -> Vec<Link> {
        self.edges
            .iter()
            .map(|l| l.for_backhaul(backhaul))
            .collect()
    }

    /// The edge that connects region `index` (input order) towards the core.
    pub fn region_link(&self, index: usize, backhaul: Backhaul) -> Link {
        self.edges[self.region_edge[index]].for_backhaul(backhaul)
    }

    pub fn total_length_m(&self) -> f64 {
        self.edges.iter().map(|l| l.length_m).sum()
    }
}

/// Least-cost tree joining all region nodes and fiber points of presence.
///
/// Edges between two points of presence weigh zero since those sites are
/// already on the backbone. Each region is attributed the tree edge towards
/// its parent: if the parent is a point of presence the edge is new core
/// fiber, otherwise it is regional backhaul.
pub fn design_backhaul(
    regions: &[Region],
    pops: &[FiberPop],
    coords: CoordinateSystem,
) -> Result<BackhaulTree> {
    if pops.is_empty() {
        return Err(Error::NoFiberPop);
    }
    // (id, coord, is_pop, input index), numbered in id order for tie-breaking.
    let mut nodes: Vec<(&str, crate::model::NodeCoord, bool, usize)> = pops
        .iter()
        .enumerate()
        .map(|(i, p)| (p.id.as_str(), p.node, true, i))
        .chain(
            regions
                .iter()
                .enumerate()
                .map(|(i, r)| (r.id.as_str(), r.node, false, i)),
        )
        .collect();
    nodes.sort_by(|a, b| a.0.cmp(b.0).then(b.2.cmp(&a.2)));

    let weight = |i: usize, j: usize| {
        if nodes[i].2 && nodes[j].2 {
            0.0
        } else {
            coords.distance_km(nodes[i].1, nodes[j].1)
        }
    };
    let tree = minimum_spanning_tree(nodes.len(), weight);

    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (e, &(i, j, _)) in tree.iter().enumerate() {
        adjacency[i].push((j, e));
        adjacency[j].push((i, e));
    }

    // Multi-source BFS from the points of presence gives each region a parent.
    let mut parent_edge: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut visited = vec![false; nodes.len()];
    let mut queue = std::collections::VecDeque::new();
    for (i, n) in nodes.iter().enumerate() {
        if n.2 {
            visited[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &adjacency[u] {
            if !visited[v] {
                visited[v] = true;
                parent_edge[v] = Some(e);
                queue.push_back(v);
            }
        }
    }

    let mut edges = Vec::with_capacity(tree.len());
    let mut edge_kind_parent: Vec<Option<usize>> = vec![None; tree.len()];
    for (v, pe) in parent_edge.iter().enumerate() {
        if let Some(e) = pe {
            edge_kind_parent[*e] = Some(v);
        }
    }
    for (e, &(i, j, _)) in tree.iter().enumerate() {
        let (a, b) = (&nodes[i], &nodes[j]);
        let length_m = coords.distance_km(a.1, b.1) * 1000.0;
        let kind = match (a.2, b.2) {
            (true, true) => LinkKind::ExistingFiber,
            (true, false) | (false, true) => LinkKind::NewCoreFiber,
            (false, false) => LinkKind::NewBackhaulWireless,
        };
        // Orient from parent to child where a child exists.
        let (from, to) = match edge_kind_parent[e] {
            Some(child) if child == i => (b.0, a.0),
            _ => (a.0, b.0),
        };
        edges.push(Link::new(from, to, length_m, kind));
    }

    let mut region_edge = vec![usize::MAX; regions.len()];
    for (v, n) in nodes.iter().enumerate() {
        if !n.2 {
            region_edge[n.3] = parent_edge[v].expect("tree spans every node");
        }
    }
    Ok(BackhaulTree { edges, region_edge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NodeCoord;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn region(id: &str, x: f64, y: f64) -> Region {
        Region {
            id: id.into(),
            country: "X".into(),
            population: 1000.0,
            area_km2: 10.0,
            mean_luminosity: 1.0,
            existing_sites: None,
            node: NodeCoord::new(x, y),
        }
    }

    fn pop(id: &str, x: f64, y: f64) -> FiberPop {
        FiberPop {
            id: id.into(),
            node: NodeCoord::new(x, y),
        }
    }

    /// Exhaustive minimum over all spanning trees via Prüfer sequences.
    fn brute_force_weight(n: usize, w: &dyn Fn(usize, usize) -> f64) -> f64 {
        if n <= 1 {
            return 0.0;
        }
        if n == 2 {
            return w(0, 1);
        }
        let mut best = f64::INFINITY;
        let total = n.pow((n - 2) as u32);
        for code in 0..total {
            let mut seq = Vec::with_capacity(n - 2);
            let mut c = code;
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut weights = Vec::with_capacity(n - 1);
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                weights.push(w(leaf, s));
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            weights.push(w(rest[0], rest[1]));
            weights.sort_by(f64::total_cmp);
            best = best.min(weights.iter().sum());
        }
        best
    }

    #[test]
    fn collinear_example() {
        let regions = [region("a", 10.0, 0.0), region("b", 20.0, 0.0)];
        let tree =
            design_backhaul(&regions, &[pop("p", 0.0, 0.0)], CoordinateSystem::PlanarKm).unwrap();
        let links = tree.links(Backhaul::Fiber);
        assert_eq!(links.len(), 2);
        assert!(links.contains(&Link::new("p", "a", 10_000.0, LinkKind::NewCoreFiber)));
        assert!(links.contains(&Link::new("a", "b", 10_000.0, LinkKind::NewBackhaulFiber)));
        assert_eq!(
            tree.region_link(1, Backhaul::Wireless).kind,
            LinkKind::NewBackhaulWireless
        );
        assert_eq!(tree.region_link(1, Backhaul::Wireless).hops, 1);
    }

    #[test]
    fn region_at_pop() {
        let tree = design_backhaul(
            &[region("a", 3.0, 4.0)],
            &[pop("p", 3.0, 4.0)],
            CoordinateSystem::PlanarKm,
        )
        .unwrap();
        let links = tree.links(Backhaul::Wireless);
        assert_eq!(links.len(), 1);
        assert_eq!(links[0].length_m, 0.0);
    }

    #[test]
    fn no_pop_is_an_error() {
        assert!(matches!(
            design_backhaul(&[region("a", 0.0, 0.0)], &[], CoordinateSystem::PlanarKm),
            Err(Error::NoFiberPop)
        ));
    }

    #[test]
    fn pops_join_at_zero_cost() {
        let regions = [region("r", 50.0, 1.0)];
        let pops = [pop("p1", 0.0, 0.0), pop("p2", 50.0, 0.0)];
        let tree = design_backhaul(&regions, &pops, CoordinateSystem::PlanarKm).unwrap();
        let links = tree.links(Backhaul::Fiber);
        assert_eq!(links.len(), 2);
        assert!(links.iter().any(|l| l.kind == LinkKind::ExistingFiber));
        let r = tree.region_link(0, Backhaul::Fiber);
        assert_eq!(r.kind, LinkKind::NewCoreFiber);
        assert!((r.length_m - 1000.0).abs() < 1e-6);
    }

    #[test]
    fn matches_exhaustive_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(1..=7);
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.random::<f64>() * 100.0, rng.random::<f64>() * 100.0))
                .collect();
            let w = |i: usize, j: usize| (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1);
            let tree = minimum_spanning_tree(n, w);
            assert_eq!(tree.len(), n.saturating_sub(1));
            let mut ws: Vec<f64> = tree.iter().map(|e| e.2).collect();
            ws.sort_by(f64::total_cmp);
            let got: f64 = ws.iter().sum();
            assert_eq!(got, brute_force_weight(n, &w));
        }
    }
}
