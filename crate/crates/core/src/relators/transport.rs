//! Exact-rational transportation solver.
//!
//! Balanced transportation problems are solved by network simplex on the
//! bipartite support graph: northwest-corner start, spanning-tree basis,
//! Bland's rule for anti-cycling. The optimal basis yields dual potentials
//! for free, so every solution carries an exact strong-duality certificate
//! (`Σ uᵢaᵢ + Σ vⱼbⱼ = Σ cᵢⱼxᵢⱼ` with `uᵢ + vⱼ ≤ cᵢⱼ` everywhere).

use crate::error::Error;
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::Zero;

/// A balanced transportation instance. Supplies and demands are positive
/// and sum to the same total; costs are arbitrary nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportProblem {
    pub supplies: Vec<BigRational>,
    pub demands: Vec<BigRational>,
    /// `costs[i][j]` is the unit cost of routing supply `i` to demand `j`.
    pub costs: Vec<Vec<BigRational>>,
}

/// An optimal solution with its dual certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportSolution {
    pub cost: BigRational,
    pub coupling: Vec<Vec<BigRational>>,
    pub row_potentials: Vec<BigRational>,
    pub col_potentials: Vec<BigRational>,
}

impl TransportProblem {
    fn validate(&self) -> Result<()> {
        let m = self.supplies.len();
        let n = self.demands.len();
        if m == 0 || n == 0 {
            return Err(Error::InvalidConfig("empty transport problem".to_string()));
        }
        if self.costs.len() != m || self.costs.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidConfig("cost matrix dimensions mismatch".to_string()));
        }
        if self.supplies.iter().chain(self.demands.iter()).any(|x| *x <= BigRational::zero()) {
            return Err(Error::InvalidConfig("masses must be positive".to_string()));
        }
        let sa: BigRational = self.supplies.iter().sum();
        let sb: BigRational = self.demands.iter().sum();
        if sa != sb {
            return Err(Error::UnbalancedTransport { left: format!("{sa}"), right: format!("{sb}") });
        }
        Ok(())
    }
}

impl TransportSolution {
    /// Checks primal feasibility, dual feasibility, and equality of the two
    /// objectives, all in exact arithmetic.
    pub fn verify_certificate(&self, p: &TransportProblem) -> bool {
        let m = p.supplies.len();
        let n = p.demands.len();
        for i in 0..m {
            let row: BigRational = self.coupling[i].iter().sum();
            if row != p.supplies[i] {
                return false;
            }
        }
        for j in 0..n {
            let col: BigRational = (0..m).map(|i| self.coupling[i][j].clone()).sum();
            if col != p.demands[j] {
                return false;
            }
        }
        let mut primal = BigRational::zero();
        for i in 0..m {
            for j in 0..n {
                if self.coupling[i][j] < BigRational::zero() {
                    return false;
                }
                if &self.row_potentials[i] + &self.col_potentials[j] > p.costs[i][j] {
                    return false;
                }
                primal += &p.costs[i][j] * &self.coupling[i][j];
            }
        }
        let dual: BigRational = (0..m)
            .map(|i| &self.row_potentials[i] * &p.supplies[i])
            .chain((0..n).map(|j| &self.col_potentials[j] * &p.demands[j]))
            .sum();
        primal == self.cost && dual == self.cost
    }
}

/// Node ids in the basis tree: rows are `0..m`, columns `m..m+n`.
struct Basis {
    m: usize,
    n: usize,
    cells: Vec<(usize, usize)>,
    flow: BTreeMap<(usize, usize), BigRational>,
}

impl Basis {
    fn adjacency(&self) -> Vec<Vec<(usize, usize, usize)>> {
        // node -> (neighbour, cell_i, cell_j)
        let mut adj = vec![Vec::new(); self.m + self.n];
        for &(i, j) in &self.cells {
            adj[i].push((self.m + j, i, j));
            adj[self.m + j].push((i, i, j));
        }
        adj
    }

    /// Tree path between two nodes, as the list of cells crossed.
    fn path(&self, from: usize, to: usize) -> Vec<(usize, usize)> {
        let adj = self.adjacency();
        let total = self.m + self.n;
        let mut parent: Vec<Option<(usize, (usize, usize))>> = vec![None; total];
        let mut visited = vec![false; total];
        let mut queue = alloc::collections::VecDeque::new();
        visited[from] = true;
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(w, ci, cj) in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some((u, (ci, cj)));
                    queue.push_back(w);
                }
            }
        }
        let mut cells = Vec::new();
        let mut cur = to;
        while cur != from {
            let (prev, cell) = parent[cur].expect("basis is a spanning tree");
            cells.push(cell);
            cur = prev;
        }
        cells
    }

    /// Potentials from `u_0 = 0` propagated over the tree.
    fn potentials(&self, costs: &[Vec<BigRational>]) -> (Vec<BigRational>, Vec<BigRational>) {
        let adj = self.adjacency();
        let total = self.m + self.n;
        let mut pot: Vec<Option<BigRational>> = vec![None; total];
        pot[0] = Some(BigRational::zero());
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(0usize);
        while let Some(node) = queue.pop_front() {
            let here = pot[node].clone().expect("set before queueing");
            for &(next, i, j) in &adj[node] {
                if pot[next].is_none() {
                    // u_i + v_j = c_ij on basic cells, whichever side is known.
                    pot[next] = Some(&costs[i][j] - &here);
                    queue.push_back(next);
                }
            }
        }
        let u: Vec<BigRational> =
            (0..self.m).map(|i| pot[i].clone().expect("tree spans all rows")).collect();
        let v: Vec<BigRational> =
            (0..self.n).map(|j| pot[self.m + j].clone().expect("tree spans all columns")).collect();
        (u, v)
    }
}

/// Northwest-corner starting basis: exactly `m + n − 1` cells forming a
/// spanning tree (degenerate cells carry zero flow).
fn northwest_corner(p: &TransportProblem) -> Basis {
    let m = p.supplies.len();
    let n = p.demands.len();
    let mut a = p.supplies.clone();
    let mut b = p.demands.clone();
    let mut cells = Vec::with_capacity(m + n - 1);
    let mut flow = BTreeMap::new();
    let (mut i, mut j) = (0usize, 0usize);
    loop {
        let x = a[i].clone().min(b[j].clone());
        a[i] -= &x;
        b[j] -= &x;
        cells.push((i, j));
        flow.insert((i, j), x);
        if i == m - 1 && j == n - 1 {
            break;
        }
        if a[i].is_zero() && i < m - 1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    Basis { m, n, cells, flow }
}

/// Solves a balanced transportation problem exactly, returning the optimal
/// coupling and feasible dual potentials with equal objective value.
pub fn solve_transport(p: &TransportProblem) -> Result<TransportSolution> {
    p.validate()?;
    let m = p.supplies.len();
    let n = p.demands.len();
    let mut basis = northwest_corner(p);

    // Bland's rule: entering cell is the lexicographically least with
    // negative reduced cost; leaving cell the least among the minimizers.
    let max_pivots = 200_000usize;
    for _ in 0..max_pivots {
        let (u, v) = basis.potentials(&p.costs);
        let mut entering = None;
        #[allow(clippy::needless_range_loop)]
        'scan: for i in 0..m {
            for j in 0..n {
                if basis.flow.contains_key(&(i, j)) {
                    continue;
                }
                if &p.costs[i][j] - &u[i] - &v[j] < BigRational::zero() {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            let coupling: Vec<Vec<BigRational>> = (0..m)
                .map(|i| {
                    (0..n)
                        .map(|j| basis.flow.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero))
                        .collect()
                })
                .collect();
            let cost = (0..m)
                .map(|i| {
                    (0..n).map(|j| &p.costs[i][j] * &coupling[i][j]).sum::<BigRational>()
                })
                .sum();
            return Ok(TransportSolution { cost, coupling, row_potentials: u, col_potentials: v });
        };

        // The unique cycle: entering cell plus the tree path from its column
        // node back to its row node. Walking the path from the column end,
        // cells alternate − + − + … relative to the entering cell's +.
        let path = basis.path(m + ej, ei);
        let mut minus_cells = Vec::new();
        let mut plus_cells = vec![(ei, ej)];
        for (idx, cell) in path.iter().enumerate() {
            if idx % 2 == 0 {
                minus_cells.push(*cell);
            } else {
                plus_cells.push(*cell);
            }
        }
        let theta = minus_cells
            .iter()
            .map(|c| basis.flow[c].clone())
            .min()
            .expect("cycle has at least one reverse cell");
        let leaving = *minus_cells
            .iter()
            .filter(|c| basis.flow[*c] == theta)
            .min()
            .expect("a minimizer exists");
        for c in &minus_cells {
            let f = basis.flow.get_mut(c).expect("basic cell");
            *f -= &theta;
        }
        for c in &plus_cells {
            if *c == (ei, ej) {
                continue;
            }
            let f = basis.flow.get_mut(c).expect("basic cell");
            *f += &theta;
        }
        basis.flow.remove(&leaving);
        basis.flow.insert((ei, ej), theta);
        let pos = basis.cells.iter().position(|c| *c == leaving).expect("in basis");
        basis.cells[pos] = (ei, ej);
    }
    Err(Error::InvalidConfig("network simplex exceeded the pivot bound".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn dirac_vs_dirac_costs_the_single_cell() {
        let p = TransportProblem {
            supplies: vec![r(1, 1)],
            demands: vec![r(1, 1)],
            costs: vec![vec![r(2, 3)]],
        };
        let s = solve_transport(&p).unwrap();
        assert_eq!(s.cost, r(2, 3));
        assert!(s.verify_certificate(&p));
    }

    #[test]
    fn identical_marginals_with_discrete_metric_cost_zero() {
        let p = TransportProblem {
            supplies: vec![r(1, 2), r(1, 2)],
            demands: vec![r(1, 2), r(1, 2)],
            costs: vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]],
        };
        let s = solve_transport(&p).unwrap();
        assert_eq!(s.cost, r(0, 1));
        assert!(s.verify_certificate(&p));
    }

    #[test]
    fn split_target_pays_for_the_expensive_half() {
        let p = TransportProblem {
            supplies: vec![r(1, 1)],
            demands: vec![r(1, 2), r(1, 2)],
            costs: vec![vec![r(0, 1), r(1, 1)]],
        };
        let s = solve_transport(&p).unwrap();
        assert_eq!(s.cost, r(1, 2));
        assert!(s.verify_certificate(&p));
    }

    #[test]
    fn unbalanced_masses_are_rejected() {
        let p = TransportProblem {
            supplies: vec![r(1, 2)],
            demands: vec![r(1, 1)],
            costs: vec![vec![r(0, 1)]],
        };
        assert!(matches!(solve_transport(&p), Err(Error::UnbalancedTransport { .. })));
    }

    #[test]
    fn degenerate_instances_terminate() {
        // Equal supplies and demands force degenerate pivots.
        let p = TransportProblem {
            supplies: vec![r(1, 3), r(1, 3), r(1, 3)],
            demands: vec![r(1, 3), r(1, 3), r(1, 3)],
            costs: vec![
                vec![r(5, 7), r(1, 7), r(3, 7)],
                vec![r(2, 7), r(6, 7), r(1, 7)],
                vec![r(4, 7), r(2, 7), r(2, 7)],
            ],
        };
        let s = solve_transport(&p).unwrap();
        assert!(s.verify_certificate(&p));
        // Equal marginals make this an assignment problem; the best
        // permutation picks costs 1/7, 2/7, 2/7 -> (1/3)(1+2+2)/7 = 5/21.
        assert_eq!(s.cost, r(5, 21));
    }
}
