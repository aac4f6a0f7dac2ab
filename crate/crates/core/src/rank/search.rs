//! Exhaustive search for short sums of "split-rank-one" terms over GF(p).
//!
//! A term of group `g` is `v (x) w` where `v` ranges over the side space of
//! the group and `w` over the other space; `pos` places the product of side
//! coordinate `s` and other coordinate `o` in the ambient space. Fixing the
//! side vectors of all terms turns the question into a linear one: the target
//! must lie in the span of the generators `sum_s v[s] e_{pos(s, o)}`.
//!
//! So the search enumerates, per group, a subspace of side vectors (one RREF
//! basis vector at a time) and keeps an echelon basis of the generated span
//! with the target reduced against it.

use crate::algebra::inv_mod;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Group {
    pub side_len: usize,
    pub other_len: usize,
    /// `pos[s * other_len + o]`
    pub pos: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub p: u32,
    pub ambient: usize,
    pub target: Vec<u32>,
    pub groups: Vec<Group>,
}

/// One chosen term: its group, side vector and other-side coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FoundTerm {
    pub group: usize,
    pub side: Vec<u32>,
    pub other: Vec<u32>,
}

/// Shared node counter for a whole query.
#[derive(Clone, Debug)]
pub struct NodeBudget {
    limit: u64,
    used: u64,
}

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        NodeBudget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

struct Echelon {
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c == 0 {
                continue;
            }
            let neg = (p - c as u64) % p;
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = ((*x as u64 + neg * r as u64) % p) as u32;
                }
            }
        }
    }

    /// Adds `v` if it is independent; returns whether it was added.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], self.p) as u64;
        let p = self.p as u64;
        for x in v.iter_mut() {
            *x = ((*x as u64 * inv) % p) as u32;
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    fn truncate(&mut self, len: usize) {
        self.rows.truncate(len);
        self.pivots.truncate(len);
    }
}

struct Dfs<'a> {
    problem: &'a Problem,
    budget: &'a mut NodeBudget,
    basis: Echelon,
    residual: Vec<u32>,
    chosen: Vec<(usize, usize, Vec<u32>)>,
    order: Vec<usize>,
}

impl Dfs<'_> {
    fn generators(&self, group: usize, v: &[u32]) -> Vec<Vec<u32>> {
        let g = &self.problem.groups[group];
        let p = self.problem.p as u64;
        (0..g.other_len)
            .map(|o| {
                let mut gen = vec![0u32; self.problem.ambient];
                for (s, &c) in v.iter().enumerate() {
                    if c != 0 {
                        let at = g.pos[s * g.other_len + o];
                        gen[at] = ((gen[at] as u64 + c as u64) % p) as u32;
                    }
                }
                gen
            })
            .collect()
    }

    /// Returns true once the residual is zero.
    fn run(&mut self, depth_left: usize, from: usize) -> Result<bool> {
        if self.residual.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        if depth_left == 0 {
            return Ok(false);
        }
        let q = self.problem.p;
        for oi in from..self.order.len() {
            let group = self.order[oi];
            let side_len = self.problem.groups[group].side_len;
            let start = match self.chosen.last() {
                Some(&(g, piv, _)) if g == group => piv + 1,
                _ => 0,
            };
            for piv in start..side_len {
                if self
                    .chosen
                    .iter()
                    .any(|(g, _, v)| *g == group && v[piv] != 0)
                {
                    continue;
                }
                let mut v = vec![0u32; side_len];
                v[piv] = 1;
                loop {
                    if self.try_vector(group, piv, &v, depth_left, oi)? {
                        return Ok(true);
                    }
                    // odometer over the free tail
                    let mut i = side_len;
                    let mut done = true;
                    while i > piv + 1 {
                        i -= 1;
                        v[i] += 1;
                        if v[i] < q {
                            done = false;
                            break;
                        }
                        v[i] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
        Ok(false)
    }

    fn try_vector(
        &mut self,
        group: usize,
        piv: usize,
        v: &[u32],
        depth_left: usize,
        oi: usize,
    ) -> Result<bool> {
        self.budget.tick()?;
        let mark = self.basis.rows.len();
        let mut grew = false;
        for gen in self.generators(group, v) {
            grew |= self.basis.insert(gen);
        }
        if !grew {
            // same span as the parent node, which is already covered
            return Ok(false);
        }
        let saved = self.residual.clone();
        self.basis.reduce(&mut self.residual);
        self.chosen.push((group, piv, v.to_vec()));
        let found = self.run(depth_left - 1, oi)?;
        if !found {
            self.chosen.pop();
            self.residual = saved;
            self.basis.truncate(mark);
        }
        Ok(found)
    }
}

/// Searches for at most `max_terms` terms summing to the target. `order`
/// lists the groups in the order they are tried.
pub(crate) fn search(
    problem: &Problem,
    max_terms: usize,
    order: &[usize],
    budget: &mut NodeBudget,
) -> Result<Option<Vec<FoundTerm>>> {
    let mut dfs = Dfs {
        problem,
        budget,
        basis: Echelon {
            p: problem.p,
            rows: Vec::new(),
            pivots: Vec::new(),
        },
        residual: problem.target.clone(),
        chosen: Vec::new(),
        order: order.to_vec(),
    };
    if !dfs.run(max_terms, 0)? {
        return Ok(None);
    }
    let chosen = std::mem::take(&mut dfs.chosen);
    Ok(Some(solve_coefficients(problem, chosen)))
}

/// Recovers other-side coefficients for fixed side vectors by elimination.
fn solve_coefficients(problem: &Problem, chosen: Vec<(usize, usize, Vec<u32>)>) -> Vec<FoundTerm> {
    let p = problem.p;
    let pu = p as u64;
    // columns: one per (term, o); augmented with the target
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for (t, (g, _, _)) in chosen.iter().enumerate() {
        for o in 0..problem.groups[*g].other_len {
            cols.push((t, o));
        }
    }
    let ncols = cols.len();
    let mut rows = vec![vec![0u32; ncols + 1]; problem.ambient];
    for (c, &(t, o)) in cols.iter().enumerate() {
        let (g, _, v) = &chosen[t];
        let grp = &problem.groups[*g];
        for (s, &x) in v.iter().enumerate() {
            if x != 0 {
                let at = grp.pos[s * grp.other_len + o];
                rows[at][c] = ((rows[at][c] as u64 + x as u64) % pu) as u32;
            }
        }
    }
    for (row, &t) in rows.iter_mut().zip(&problem.target) {
        row[ncols] = t;
    }
    let pivots = crate::algebra::gauss_jordan_mod(&mut rows, ncols + 1, p);
    assert!(
        !pivots.contains(&ncols),
        "search reported a solution to an inconsistent system"
    );
    let mut sol = vec![0u32; ncols];
    for (k, &pc) in pivots.iter().enumerate() {
        sol[pc] = rows[k][ncols];
    }
    let mut out: Vec<FoundTerm> = chosen
        .into_iter()
        .map(|(group, _, side)| FoundTerm {
            group,
            other: vec![0; problem.groups[group].other_len],
            side,
        })
        .collect();
    for (c, &(t, o)) in cols.iter().enumerate() {
        out[t].other[o] = sol[c];
    }
    out.retain(|t| t.other.iter().any(|&x| x != 0));
    out
}
