//! Mutable rotation-system view of a planar diagram: per element, the ordered
//! upper and lower covers. Local edits (subdividing an edge, adding or
//! removing a vertex) keep the rotation consistent; [`Embedding::finish`]
//! recomputes heights and level orders and validates the result.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::lattice::{validate, ElementId, LatticeError, LeveledLattice, RawLattice};

#[derive(Clone, Debug)]
pub(crate) struct Embedding {
    pub up: Vec<Vec<ElementId>>,
    pub down: Vec<Vec<ElementId>>,
    pub labels: Vec<String>,
    pub alive: Vec<bool>,
}

fn replace(list: &mut [ElementId], old: ElementId, new: ElementId) {
    let slot = list.iter_mut().find(|x| **x == old).expect("edge present");
    *slot = new;
}

impl Embedding {
    pub fn of(l: &LeveledLattice) -> Self {
        Embedding {
            up: l.elements().map(|x| l.up_covers(x).to_vec()).collect(),
            down: l.elements().map(|x| l.down_covers(x).to_vec()).collect(),
            labels: l.labels().to_vec(),
            alive: vec![true; l.len()],
        }
    }

    pub fn add(&mut self, label: String) -> ElementId {
        self.up.push(Vec::new());
        self.down.push(Vec::new());
        self.labels.push(label);
        self.alive.push(true);
        self.up.len() - 1
    }

    /// Puts a new element on the edge `lower ≺ upper`.
    pub fn subdivide(&mut self, lower: ElementId, upper: ElementId, label: String) -> ElementId {
        let x = self.add(label);
        replace(&mut self.up[lower], upper, x);
        replace(&mut self.down[upper], lower, x);
        self.up[x].push(upper);
        self.down[x].push(lower);
        x
    }

    /// Inverse of [`subdivide`](Self::subdivide) for an element whose other
    /// covers have already been detached.
    pub fn unsubdivide(&mut self, x: ElementId, lower: ElementId, upper: ElementId) {
        replace(&mut self.up[lower], x, upper);
        replace(&mut self.down[upper], x, lower);
        self.up[x].clear();
        self.down[x].clear();
        self.alive[x] = false;
    }

    pub fn detach(&mut self, lower: ElementId, upper: ElementId) {
        self.up[lower].retain(|&y| y != upper);
        self.down[upper].retain(|&y| y != lower);
    }

    /// Left-right order of two distinct elements of equal height: descend
    /// from both along leftmost lower covers in lockstep until the paths
    /// merge, then compare the branches at the merge point.
    fn compare_same_height(&self, a: ElementId, b: ElementId) -> Ordering {
        let (mut x, mut y) = (a, b);
        loop {
            if x == y {
                return Ordering::Equal;
            }
            let (dx, dy) = (self.down[x][0], self.down[y][0]);
            if dx == dy {
                let ups = &self.up[dx];
                let px = ups.iter().position(|&z| z == x).unwrap();
                let py = ups.iter().position(|&z| z == y).unwrap();
                return px.cmp(&py);
            }
            x = dx;
            y = dy;
        }
    }

    /// Rebuilds a validated lattice from the live elements. Returns the
    /// lattice and, for each embedding index, its new id (`usize::MAX` for
    /// removed elements).
    pub fn finish(&self) -> Result<(LeveledLattice, Vec<ElementId>), LatticeError> {
        let n = self.up.len();
        let live: Vec<ElementId> = (0..n).filter(|&x| self.alive[x]).collect();
        let bottoms: Vec<ElementId> = live.iter().copied().filter(|&x| self.down[x].is_empty()).collect();
        if bottoms.len() != 1 {
            return Err(LatticeError::Malformed("edited diagram has no unique bottom".into()));
        }
        // longest-path heights via Kahn's order
        let mut indeg: Vec<usize> = (0..n).map(|x| self.down[x].len()).collect();
        let mut height = vec![0usize; n];
        let mut queue = bottoms.clone();
        let mut seen = 0;
        while let Some(x) = queue.pop() {
            seen += 1;
            for &y in &self.up[x] {
                height[y] = height[y].max(height[x] + 1);
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if seen != live.len() {
            return Err(LatticeError::Malformed("edited diagram has a cycle or a stray element".into()));
        }
        for &x in &live {
            if self.down[x].iter().any(|&u| height[u] + 1 != height[x]) {
                return Err(LatticeError::Malformed("edited diagram is not graded".into()));
            }
        }
        let top = live.iter().map(|&x| height[x]).max().unwrap();
        let mut levels: Vec<Vec<ElementId>> = vec![Vec::new(); top + 1];
        for &x in &live {
            levels[height[x]].push(x);
        }
        for level in &mut levels {
            level.sort_by(|&a, &b| self.compare_same_height(a, b));
        }
        let mut local = vec![usize::MAX; n];
        for (k, &x) in live.iter().enumerate() {
            local[x] = k;
        }
        let raw = RawLattice {
            levels: levels.iter().map(|lv| lv.iter().map(|&x| local[x]).collect()).collect(),
            covers: live
                .iter()
                .flat_map(|&u| self.up[u].iter().map(move |&v| (u, v)))
                .map(|(u, v)| (local[u], local[v]))
                .collect(),
            labels: live.iter().map(|&x| Some(self.labels[x].clone())).collect(),
        };
        let lattice = validate(&raw)?;
        // validate numbers level-major in the order given above
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for level in &levels {
            for &x in level {
                new_id[x] = next;
                next += 1;
            }
        }
        for &x in &live {
            let id = new_id[x];
            let same = |a: &[ElementId], b: &[ElementId]| a.len() == b.len() && a.iter().zip(b).all(|(&p, &q)| new_id[p] == q);
            if !same(&self.up[x], lattice.up_covers(id)) || !same(&self.down[x], lattice.down_covers(id)) {
                return Err(LatticeError::Malformed("edited rotation disagrees with the level order".into()));
            }
        }
        Ok((lattice, new_id))
    }
}
