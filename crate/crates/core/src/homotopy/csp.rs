//! Constraint propagation over poset-valued variables.
//!
//! Every constraint has the form `g·v[a] <= v[b]` in a target poset carrying a
//! group action. Domains are bitsets over target elements, all stored in one
//! flat buffer so that a search node is a single `Vec<u64>` copy.

use crate::bits::{raw, words_for};
use crate::poset::FinitePoset;

pub(crate) struct OrderCsp {
    w: usize,
    nvars: usize,
    domains: Vec<u64>,
    cons: Vec<(u32, u32, u16)>,
    incident: Vec<Vec<u32>>,
    /// `ups[g][x]` = up-set of `g·x`, flattened `n * w` per group element.
    ups: Vec<Vec<u64>>,
    /// `downs[g][y]` = down-set of `g⁻¹·y`.
    downs: Vec<Vec<u64>>,
}

pub(crate) enum Solve {
    Found(Vec<usize>),
    Infeasible,
    Budget,
}

impl OrderCsp {
    /// `act[g]` is the permutation of target elements for group element `g`,
    /// `inv[g]` its inverse index.
    pub fn new(target: &FinitePoset, act: &[Vec<usize>], inv: &[usize], nvars: usize) -> Self {
        let n = target.len();
        let w = words_for(n).max(1);
        let mut ups = Vec::with_capacity(act.len());
        let mut downs = Vec::with_capacity(act.len());
        for g in 0..act.len() {
            let mut u = vec![0u64; n * w];
            let mut d = vec![0u64; n * w];
            for x in 0..n {
                u[x * w..(x + 1) * w].copy_from_slice(target.up_closure(act[g][x]).words());
                d[x * w..(x + 1) * w]
                    .copy_from_slice(target.down_closure(act[inv[g]][x]).words());
            }
            ups.push(u);
            downs.push(d);
        }
        let mut domains = vec![0u64; nvars * w];
        for v in 0..nvars {
            for x in 0..n {
                raw::set(&mut domains[v * w..(v + 1) * w], x);
            }
        }
        Self {
            w,
            nvars,
            domains,
            cons: Vec::new(),
            incident: vec![Vec::new(); nvars],
            ups,
            downs,
        }
    }

    pub fn restrict(&mut self, var: usize, allowed: &[u64]) {
        let w = self.w;
        raw::and_into(&mut self.domains[var * w..(var + 1) * w], allowed);
    }

    pub fn restrict_to(&mut self, var: usize, value: usize) {
        let w = self.w;
        let d = &mut self.domains[var * w..(var + 1) * w];
        let keep = raw::get(d, value);
        raw::clear(d);
        if keep {
            raw::set(d, value);
        }
    }

    /// Adds `g·v[a] <= v[b]`.
    pub fn add_le(&mut self, a: usize, b: usize, g: usize) {
        let id = self.cons.len() as u32;
        self.cons.push((a as u32, b as u32, g as u16));
        self.incident[a].push(id);
        if a != b {
            self.incident[b].push(id);
        }
    }

    fn propagate(&self, dom: &mut [u64], queue: &mut Vec<u32>, queued: &mut [bool]) -> bool {
        let w = self.w;
        let mut tmp = vec![0u64; w];
        while let Some(c) = queue.pop() {
            queued[c as usize] = false;
            let (a, b, g) = self.cons[c as usize];
            let (a, b, g) = (a as usize, b as usize, g as usize);
            // v[b] must lie above g·x for some x in D(a)
            raw::clear(&mut tmp);
            for x in raw::ones(&dom[a * w..(a + 1) * w]) {
                raw::or_into(&mut tmp, &self.ups[g][x * w..(x + 1) * w]);
            }
            if raw::and_into(&mut dom[b * w..(b + 1) * w], &tmp) {
                if raw::is_zero(&dom[b * w..(b + 1) * w]) {
                    return false;
                }
                for &d in &self.incident[b] {
                    if d != c && !queued[d as usize] {
                        queued[d as usize] = true;
                        queue.push(d);
                    }
                }
            }
            raw::clear(&mut tmp);
            for y in raw::ones(&dom[b * w..(b + 1) * w]) {
                raw::or_into(&mut tmp, &self.downs[g][y * w..(y + 1) * w]);
            }
            if raw::and_into(&mut dom[a * w..(a + 1) * w], &tmp) {
                if raw::is_zero(&dom[a * w..(a + 1) * w]) {
                    return false;
                }
                for &d in &self.incident[a] {
                    if d != c && !queued[d as usize] {
                        queued[d as usize] = true;
                        queue.push(d);
                    }
                }
            }
        }
        true
    }

    fn propagate_all(&self, dom: &mut [u64]) -> bool {
        if (0..self.nvars).any(|v| raw::is_zero(&dom[v * self.w..(v + 1) * self.w])) {
            return false;
        }
        let mut queue: Vec<u32> = (0..self.cons.len() as u32).rev().collect();
        let mut queued = vec![true; self.cons.len()];
        self.propagate(dom, &mut queue, &mut queued)
    }

    fn propagate_from(&self, dom: &mut [u64], var: usize) -> bool {
        let mut queued = vec![false; self.cons.len()];
        let mut queue = Vec::new();
        for &c in self.incident[var].iter().rev() {
            queued[c as usize] = true;
            queue.push(c);
        }
        self.propagate(dom, &mut queue, &mut queued)
    }

    fn pick(&self, dom: &[u64]) -> Option<usize> {
        let w = self.w;
        let mut best = None;
        let mut best_count = u32::MAX;
        for v in 0..self.nvars {
            let c = raw::count(&dom[v * w..(v + 1) * w]);
            if c > 1 && c < best_count {
                best_count = c;
                best = Some(v);
            }
        }
        best
    }

    fn extract(&self, dom: &[u64]) -> Vec<usize> {
        (0..self.nvars)
            .map(|v| raw::ones(&dom[v * self.w..(v + 1) * self.w]).next().unwrap())
            .collect()
    }

    /// First solution in value order, spending at most `budget` nodes.
    pub fn solve(&self, budget: &mut u64) -> Solve {
        let mut dom = self.domains.clone();
        if !self.propagate_all(&mut dom) {
            return Solve::Infeasible;
        }
        let mut found = None;
        match self.dfs(dom, budget, &mut |s| {
            found = Some(s);
            false
        }) {
            Walk::Stopped => Solve::Found(found.unwrap()),
            Walk::Done => Solve::Infeasible,
            Walk::Budget => Solve::Budget,
        }
    }

    /// Calls `visit` on every solution in value order until it returns false.
    /// Returns false if the budget ran out.
    pub fn for_each_solution(&self, budget: &mut u64, mut visit: impl FnMut(Vec<usize>) -> bool) -> bool {
        let mut dom = self.domains.clone();
        if !self.propagate_all(&mut dom) {
            return true;
        }
        !matches!(self.dfs(dom, budget, &mut visit), Walk::Budget)
    }

    fn dfs(&self, dom: Vec<u64>, budget: &mut u64, visit: &mut dyn FnMut(Vec<usize>) -> bool) -> Walk {
        if *budget == 0 {
            return Walk::Budget;
        }
        *budget -= 1;
        let Some(v) = self.pick(&dom) else {
            return if visit(self.extract(&dom)) {
                Walk::Done
            } else {
                Walk::Stopped
            };
        };
        let w = self.w;
        let values: Vec<usize> = raw::ones(&dom[v * w..(v + 1) * w]).collect();
        for x in values {
            let mut next = dom.clone();
            let d = &mut next[v * w..(v + 1) * w];
            raw::clear(d);
            raw::set(d, x);
            if self.propagate_from(&mut next, v) {
                match self.dfs(next, budget, visit) {
                    Walk::Done => {}
                    other => return other,
                }
            }
        }
        Walk::Done
    }
}

enum Walk {
    Done,
    Stopped,
    Budget,
}
