use alloc::vec;
use alloc::vec::Vec;

use crate::geom::Point;
use crate::math::floor;
use crate::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeNode {
    pub id: NodeId,
    pub position: Point,
    pub parent: Option<NodeId>,
    /// Path length from the root, m.
    pub cost: f64,
    /// s
    pub arrival_time: f64,
}

/// Uniform grid over a fixed box; points outside it go to a linear overflow list.
#[derive(Debug, Clone)]
struct Grid {
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    cells: Vec<Vec<NodeId>>,
    overflow: Vec<NodeId>,
}

impl Grid {
    fn new(center: Point, half_extent: f64, cell: f64) -> Self {
        let n = ((2.0 * half_extent / cell) as usize).clamp(1, 4096);
        Grid {
            origin: Point::new(center.north - half_extent, center.east - half_extent),
            cell: 2.0 * half_extent / n as f64,
            cols: n,
            rows: n,
            cells: vec![Vec::new(); n * n],
            overflow: Vec::new(),
        }
    }

    fn coords(&self, p: Point) -> (i64, i64) {
        (
            floor((p.north - self.origin.north) / self.cell) as i64,
            floor((p.east - self.origin.east) / self.cell) as i64,
        )
    }

    fn slot(&self, row: i64, col: i64) -> Option<usize> {
        if row < 0 || col < 0 || row >= self.rows as i64 || col >= self.cols as i64 {
            None
        } else {
            Some(row as usize * self.cols + col as usize)
        }
    }

    fn insert(&mut self, id: NodeId, p: Point) {
        let (r, c) = self.coords(p);
        match self.slot(r, c) {
            Some(k) => self.cells[k].push(id),
            None => self.overflow.push(id),
        }
    }
}

/// RRT* tree: nodes, child lists and a spatial index.
#[derive(Debug, Clone)]
pub struct PlanTree {
    nodes: Vec<TreeNode>,
    children: Vec<Vec<NodeId>>,
    grid: Grid,
    speed: f64,
}

impl PlanTree {
    /// `speed` converts cost to arrival time. The index covers the square of
    /// half-side `half_extent` around `center` with cells of `cell` meters.
    pub fn new(root: Point, speed: f64, center: Point, half_extent: f64, cell: f64) -> Result<Self> {
        if !(speed > 0.0 && half_extent > 0.0 && cell > 0.0) {
            return Err(Error::invalid("tree needs positive speed, extent and cell size"));
        }
        let mut grid = Grid::new(center, half_extent, cell);
        grid.insert(0, root);
        Ok(PlanTree {
            nodes: vec![TreeNode {
                id: 0,
                position: root,
                parent: None,
                cost: 0.0,
                arrival_time: 0.0,
            }],
            children: vec![Vec::new()],
            grid,
            speed,
        })
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id]
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn parent(&self, id: NodeId) -> Option<&TreeNode> {
        self.nodes[id].parent.map(|p| &self.nodes[p])
    }

    pub fn insert(&mut self, position: Point, parent: NodeId) -> NodeId {
        let id = self.nodes.len();
        let cost = self.nodes[parent].cost + self.nodes[parent].position.distance(position);
        self.nodes.push(TreeNode {
            id,
            position,
            parent: Some(parent),
            cost,
            arrival_time: cost / self.speed,
        });
        self.children.push(Vec::new());
        self.children[parent].push(id);
        self.grid.insert(id, position);
        id
    }

    /// Whether `ancestor` lies on the root path of `id` (inclusive).
    pub fn is_ancestor(&self, ancestor: NodeId, id: NodeId) -> bool {
        let mut cur = Some(id);
        while let Some(c) = cur {
            if c == ancestor {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    /// Nodes of the subtree rooted at `id`, in breadth-first order.
    pub fn subtree(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            out.extend_from_slice(&self.children[out[k]]);
            k += 1;
        }
        out
    }

    /// Moves `id` under `new_parent` and propagates cost and time to its subtree.
    pub fn reparent(&mut self, id: NodeId, new_parent: NodeId) -> Result<()> {
        if id == 0 {
            return Err(Error::invalid("the root has no parent"));
        }
        if self.is_ancestor(id, new_parent) {
            return Err(Error::invalid("reparenting would create a cycle"));
        }
        if let Some(old) = self.nodes[id].parent {
            self.children[old].retain(|&c| c != id);
        }
        self.nodes[id].parent = Some(new_parent);
        self.children[new_parent].push(id);
        for n in self.subtree(id) {
            let p = self.nodes[n].parent.expect("non-root node has a parent");
            let cost = self.nodes[p].cost + self.nodes[p].position.distance(self.nodes[n].position);
            self.nodes[n].cost = cost;
            self.nodes[n].arrival_time = cost / self.speed;
        }
        Ok(())
    }

    /// Root path of `id`, root first.
    pub fn path_to(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut cur = Some(id);
        while let Some(c) = cur {
            out.push(c);
            cur = self.nodes[c].parent;
        }
        out.reverse();
        out
    }

    /// Checks the tree invariants: single root, parent and child links agree,
    /// every node reaches the root, and costs equal recomputed path sums.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.nodes.is_empty() || self.nodes[0].parent.is_some() || self.nodes[0].cost != 0.0 {
            return Err(Error::invalid("root must exist with zero cost and no parent"));
        }
        for (id, n) in self.nodes.iter().enumerate() {
            if n.id != id {
                return Err(Error::invalid("node id mismatch"));
            }
            if id > 0 {
                let p = n.parent.ok_or_else(|| Error::invalid("non-root node without parent"))?;
                if !self.children[p].contains(&id) {
                    return Err(Error::invalid("parent does not list child"));
                }
            }
            for &c in &self.children[id] {
                if self.nodes[c].parent != Some(id) {
                    return Err(Error::invalid("child does not point back to parent"));
                }
            }
            // walking up must end at the root within len steps
            let mut steps = 0;
            let mut cur = id;
            let mut sum = 0.0;
            while let Some(p) = self.nodes[cur].parent {
                sum += self.nodes[p].position.distance(self.nodes[cur].position);
                cur = p;
                steps += 1;
                if steps > self.nodes.len() {
                    return Err(Error::invalid("cycle in parent links"));
                }
            }
            if cur != 0 {
                return Err(Error::invalid("node not connected to root"));
            }
            if (sum - n.cost).abs() > tol * (1.0 + sum) {
                return Err(Error::invalid("cached cost differs from path sum"));
            }
            if (n.arrival_time - n.cost / self.speed).abs() > tol * (1.0 + n.arrival_time) {
                return Err(Error::invalid("arrival time inconsistent with cost"));
            }
        }
        Ok(())
    }
}

/// Node closest to `point`; ties go to the lowest id.
pub fn nearest_node(tree: &PlanTree, point: Point) -> &TreeNode {
    let grid = &tree.grid;
    let mut best: Option<(f64, NodeId)> = None;
    let consider = |id: NodeId, best: &mut Option<(f64, NodeId)>| {
        let d = tree.nodes[id].position.distance(point);
        match *best {
            Some((bd, bid)) if d > bd || (d == bd && id > bid) => {}
            _ => *best = Some((d, id)),
        }
    };
    for &id in &grid.overflow {
        consider(id, &mut best);
    }
    let (qr, qc) = grid.coords(point);
    // clamp the ring origin into the grid so rings always make progress
    let r0 = qr.clamp(0, grid.rows as i64 - 1);
    let c0 = qc.clamp(0, grid.cols as i64 - 1);
    let outside = (qr - r0).abs().max((qc - c0).abs());
    let max_ring = grid.rows.max(grid.cols) as i64;
    for k in 0..=max_ring {
        if let Some((bd, _)) = best {
            // unvisited cells are at least max(k, outside) − 1 cells away
            if ((k.max(outside) - 1).max(0) as f64) * grid.cell > bd {
                break;
            }
        }
        for r in (r0 - k)..=(r0 + k) {
            for c in (c0 - k)..=(c0 + k) {
                if (r - r0).abs() != k && (c - c0).abs() != k {
                    continue;
                }
                if let Some(s) = grid.slot(r, c) {
                    for &id in &grid.cells[s] {
                        consider(id, &mut best);
                    }
                }
            }
        }
    }
    &tree.nodes[best.expect("tree has a root").1]
}

/// Ids of nodes within `radius` of `point`, ascending.
pub fn near_nodes(tree: &PlanTree, point: Point, radius: f64) -> Vec<NodeId> {
    let grid = &tree.grid;
    let mut out: Vec<NodeId> = grid
        .overflow
        .iter()
        .copied()
        .filter(|&id| tree.nodes[id].position.distance(point) <= radius)
        .collect();
    if radius >= 0.0 {
        let (r_lo, c_lo) = grid.coords(Point::new(point.north - radius, point.east - radius));
        let (r_hi, c_hi) = grid.coords(Point::new(point.north + radius, point.east + radius));
        let r_lo = r_lo.max(0);
        let c_lo = c_lo.max(0);
        let r_hi = r_hi.min(grid.rows as i64 - 1);
        let c_hi = c_hi.min(grid.cols as i64 - 1);
        for r in r_lo..=r_hi {
            for c in c_lo..=c_hi {
                if let Some(s) = grid.slot(r, c) {
                    out.extend(
                        grid.cells[s]
                            .iter()
                            .copied()
                            .filter(|&id| tree.nodes[id].position.distance(point) <= radius),
                    );
                }
            }
        }
    }
    out.sort_unstable();
    out
}
