//! Exact minimum covers by good sets when goodness is hereditary.
//!
//! The space is described by items (closures of orbits of maximal cells).
//! Any cover by good invariant sets can be shrunk to a partition of the
//! items into bins whose unions are good, so the invariant equals the
//! minimum number of bins.

use std::cell::{Cell, RefCell};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::bits::ElemSet;

#[derive(Clone, Debug)]
pub enum Verdict<E> {
    Good(E),
    Bad(String),
    Unknown(String),
}

impl<E> Verdict<E> {
    fn kind(&self) -> Kind {
        match self {
            Verdict::Good(_) => Kind::Good,
            Verdict::Bad(_) => Kind::Bad,
            Verdict::Unknown(_) => Kind::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Good,
    Bad,
    Unknown,
}

pub trait Goodness: Sync {
    type Evidence: Clone + Send + Sync;
    fn test(&self, set: &ElemSet) -> Verdict<Self::Evidence>;

    /// A cheaper test for the greedy heuristics; `Unknown` answers from it
    /// are not recorded.
    fn probe(&self, set: &ElemSet) -> Verdict<Self::Evidence> {
        self.test(set)
    }
}

#[derive(Clone, Debug)]
pub struct Bin<E> {
    pub items: Vec<usize>,
    pub set: ElemSet,
    pub evidence: E,
}

#[derive(Clone, Debug)]
pub enum CoverOutcome<E> {
    Exact(Vec<Bin<E>>),
    /// Item `item` alone is not good, so nothing containing it is.
    Infinite { item: usize, reason: String },
    Bounds {
        lower: usize,
        upper: Option<usize>,
        cover: Option<Vec<Bin<E>>>,
        reason: String,
    },
}

pub struct CoverSearch<'a, O: Goodness> {
    items: &'a [ElemSet],
    oracle: &'a O,
    node_budget: u64,
    memo: RefCell<FxHashMap<ElemSet, Verdict<O::Evidence>>>,
    saw_unknown: Cell<bool>,
    /// Decided sets, for inference by heredity.
    goods: RefCell<Vec<ElemSet>>,
    bads: RefCell<Vec<ElemSet>>,
    /// Fresh oracle calls left for the exhaustive phase.
    tests_left: Cell<u64>,
    adjacency: Option<Vec<Vec<usize>>>,
}

enum Minimum {
    Exact(Vec<Vec<usize>>),
    Partial {
        lower: usize,
        upper: Option<Vec<Vec<usize>>>,
    },
}

enum Feasible {
    Yes(Vec<Vec<usize>>),
    No,
    OutOfNodes,
}

impl<'a, O: Goodness> CoverSearch<'a, O> {
    pub fn new(items: &'a [ElemSet], oracle: &'a O, node_budget: u64) -> Self {
        Self {
            items,
            oracle,
            node_budget,
            memo: RefCell::new(FxHashMap::default()),
            saw_unknown: Cell::new(false),
            goods: RefCell::new(Vec::new()),
            bads: RefCell::new(Vec::new()),
            tests_left: Cell::new((node_budget / 100).max(100)),
            adjacency: None,
        }
    }

    /// Items adjacent in the underlying space. Bins are then also grown as
    /// connected regions, which often finds small covers quickly.
    pub fn with_adjacency(mut self, adjacency: Vec<Vec<usize>>) -> Self {
        self.adjacency = Some(adjacency);
        self
    }

    fn key(&self, members: &[usize]) -> ElemSet {
        ElemSet::from_indices(self.items.len(), members.iter().copied())
    }

    fn union(&self, members: &[usize]) -> ElemSet {
        let mut s = self.items[members[0]].clone();
        for &i in &members[1..] {
            s.union_with(&self.items[i]);
        }
        s
    }

    fn verdict(&self, members: &[usize]) -> Verdict<O::Evidence> {
        let key = self.key(members);
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        self.tests_left.set(self.tests_left.get().saturating_sub(1));
        let v = self.oracle.test(&self.union(members));
        self.remember(key, v.clone());
        v
    }

    fn remember(&self, key: ElemSet, v: Verdict<O::Evidence>) {
        match v {
            Verdict::Unknown(_) => self.saw_unknown.set(true),
            Verdict::Good(_) => self.goods.borrow_mut().push(key.clone()),
            Verdict::Bad(_) => self.bads.borrow_mut().push(key.clone()),
        }
        self.memo.borrow_mut().insert(key, v);
    }

    /// Decides `members` from recorded sets by heredity, if possible.
    fn inferred(&self, key: &ElemSet, optimistic: bool) -> Option<bool> {
        if let Some(v) = self.memo.borrow().get(key) {
            return Some(match v {
                Verdict::Good(_) => true,
                Verdict::Unknown(_) => optimistic,
                Verdict::Bad(_) => false,
            });
        }
        if self.goods.borrow().iter().any(|g| key.is_subset(g)) {
            return Some(true);
        }
        if self.bads.borrow().iter().any(|b| b.is_subset(key)) {
            return Some(false);
        }
        None
    }

    fn probe_accepts(&self, members: &[usize], optimistic: bool) -> bool {
        let key = self.key(members);
        if let Some(v) = self.inferred(&key, optimistic) {
            return v;
        }
        match self.oracle.probe(&self.union(members)) {
            Verdict::Unknown(_) => optimistic,
            v => {
                let good = matches!(v, Verdict::Good(_));
                self.remember(key, v);
                good
            }
        }
    }

    fn accepts(&self, members: &[usize], optimistic: bool) -> bool {
        let key = self.key(members);
        if let Some(v) = self.inferred(&key, optimistic) {
            return v;
        }
        match self.verdict(members) {
            Verdict::Good(_) => true,
            Verdict::Unknown(_) => optimistic,
            Verdict::Bad(_) => false,
        }
    }

    fn attach(&self, bins: Vec<Vec<usize>>) -> Vec<Bin<O::Evidence>> {
        let mut bins: Vec<Bin<O::Evidence>> = bins
            .into_iter()
            .map(|mut items| {
                items.sort_unstable();
                let evidence = match self.verdict(&items) {
                    Verdict::Good(e) => e,
                    // accepted through a good superset; use that instead
                    _ => {
                        let key = self.key(&items);
                        let sup = self
                            .goods
                            .borrow()
                            .iter()
                            .find(|g| key.is_subset(g))
                            .cloned()
                            .expect("bins are only formed from good sets");
                        items = sup.to_vec();
                        match self.verdict(&items) {
                            Verdict::Good(e) => e,
                            _ => unreachable!(),
                        }
                    }
                };
                Bin {
                    set: self.union(&items),
                    items,
                    evidence,
                }
            })
            .collect();
        bins.sort_by(|a, b| a.items.cmp(&b.items));
        bins
    }

    pub fn run(self) -> CoverOutcome<O::Evidence> {
        let k = self.items.len();
        if k == 0 {
            return CoverOutcome::Exact(Vec::new());
        }
        let all: Vec<usize> = (0..k).collect();
        let whole = self.verdict(&all).kind();
        if whole == Kind::Good {
            return CoverOutcome::Exact(self.attach(vec![all]));
        }
        if k == 1 {
            return match self.verdict(&all) {
                Verdict::Bad(r) => CoverOutcome::Infinite { item: 0, reason: r },
                _ => CoverOutcome::Bounds {
                    lower: 1,
                    upper: None,
                    cover: None,
                    reason: "goodness of the whole space undecided within budget".into(),
                },
            };
        }
        let singles: Vec<Verdict<O::Evidence>> = (0..k)
            .into_par_iter()
            .map(|i| self.oracle.test(&self.items[i]))
            .collect();
        let single_kind: Vec<Kind> = singles.iter().map(|v| v.kind()).collect();
        if let Some(i) = single_kind.iter().position(|&s| s == Kind::Bad) {
            let Verdict::Bad(reason) = &singles[i] else { unreachable!() };
            return CoverOutcome::Infinite {
                item: i,
                reason: reason.clone(),
            };
        }
        for (i, v) in singles.into_iter().enumerate() {
            self.remember(self.key(&[i]), v);
        }

        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        let pair_results: Vec<Verdict<O::Evidence>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let mut s = self.items[i].clone();
                s.union_with(&self.items[j]);
                self.oracle.test(&s)
            })
            .collect();
        let mut compat = vec![vec![Kind::Good; k]; k];
        for (&(i, j), v) in pairs.iter().zip(pair_results) {
            compat[i][j] = v.kind();
            compat[j][i] = v.kind();
            self.remember(self.key(&[i, j]), v);
        }

        let clique = clique_lower_bound(&compat);
        let lower = if whole == Kind::Bad { clique.max(2) } else { clique.max(1) };
        let mut nodes = self.node_budget;
        let pess = self.minimize(&compat, &single_kind, false, lower.max(2), &mut nodes);
        let optimistic_lower = |this: &Self| -> usize {
            let mut nodes = this.node_budget;
            match this.minimize(&compat, &single_kind, true, lower, &mut nodes) {
                Minimum::Exact(b) => b.len(),
                Minimum::Partial { lower, .. } => lower,
            }
        };
        match pess {
            Minimum::Exact(bins) if !self.saw_unknown.get() => CoverOutcome::Exact(self.attach(bins)),
            Minimum::Exact(bins) => {
                let lo = optimistic_lower(&self);
                if lo == bins.len() {
                    CoverOutcome::Exact(self.attach(bins))
                } else {
                    let n = bins.len();
                    CoverOutcome::Bounds {
                        lower: lo,
                        upper: Some(n),
                        cover: Some(self.attach(bins)),
                        reason: "goodness undecided within budget for some sets".into(),
                    }
                }
            }
            Minimum::Partial { lower: lo, upper } => {
                let lo = if self.saw_unknown.get() {
                    optimistic_lower(&self).min(lo)
                } else {
                    lo
                };
                let reason = if upper.is_none() {
                    "goodness of some single orbit undecided within budget"
                } else {
                    "cover search exceeded its budget"
                };
                CoverOutcome::Bounds {
                    lower: lo,
                    upper: upper.as_ref().map(|b| b.len()),
                    cover: upper.map(|b| self.attach(b)),
                    reason: reason.into(),
                }
            }
        }
    }

    fn minimize(
        &self,
        compat: &[Vec<Kind>],
        single: &[Kind],
        optimistic: bool,
        lower: usize,
        nodes: &mut u64,
    ) -> Minimum {
        let k = self.items.len();
        if !optimistic && single.iter().any(|&s| s != Kind::Good) {
            return Minimum::Partial { lower, upper: None };
        }
        let ok_pair = |i: usize, j: usize| match compat[i][j] {
            Kind::Good => true,
            Kind::Unknown => optimistic,
            Kind::Bad => false,
        };
        // Most constrained items first.
        let conflicts: Vec<usize> = (0..k)
            .map(|i| (0..k).filter(|&j| j != i && !ok_pair(i, j)).count())
            .collect();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(conflicts[i]), i));

        let mut best = self.greedy(&order, &ok_pair, optimistic);
        if let Some(adj) = &self.adjacency {
            for t in 0..4 {
                let grown = self.grow_regions(adj, t * k / 4, &ok_pair, optimistic);
                if grown.len() < best.len() {
                    best = grown;
                }
            }
        }
        let mut target = lower.min(best.len());
        while target < best.len() {
            match self.feasible(&order, &ok_pair, optimistic, target, nodes) {
                Feasible::Yes(bins) => {
                    best = bins;
                    break;
                }
                Feasible::No => target += 1,
                Feasible::OutOfNodes => {
                    return Minimum::Partial {
                        lower: target,
                        upper: (!optimistic).then_some(best),
                    }
                }
            }
        }
        Minimum::Exact(best)
    }

    fn greedy(
        &self,
        order: &[usize],
        ok_pair: &dyn Fn(usize, usize) -> bool,
        optimistic: bool,
    ) -> Vec<Vec<usize>> {
        let mut bins: Vec<Vec<usize>> = Vec::new();
        for &i in order {
            let mut placed = false;
            for b in bins.iter_mut() {
                if b.iter().all(|&j| ok_pair(i, j)) {
                    let mut cand = b.clone();
                    cand.push(i);
                    cand.sort_unstable();
                    if cand.len() <= 2 || self.probe_accepts(&cand, optimistic) {
                        *b = cand;
                        placed = true;
                        break;
                    }
                }
            }
            if !placed {
                bins.push(vec![i]);
            }
        }
        bins
    }

    /// Greedy bins grown breadth-first from `start` along the adjacency.
    fn grow_regions(
        &self,
        adj: &[Vec<usize>],
        start: usize,
        ok_pair: &dyn Fn(usize, usize) -> bool,
        optimistic: bool,
    ) -> Vec<Vec<usize>> {
        let k = self.items.len();
        let mut order = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        for root in (start..k).chain(0..start) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                order.push(i);
                for &j in &adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        let mut assigned = vec![false; k];
        let mut bins = Vec::new();
        for &seed in &order {
            if assigned[seed] {
                continue;
            }
            assigned[seed] = true;
            let mut bin = vec![seed];
            let mut rejected = vec![false; k];
            let mut queue: std::collections::VecDeque<usize> = adj[seed].iter().copied().collect();
            while let Some(j) = queue.pop_front() {
                if assigned[j] || rejected[j] {
                    continue;
                }
                let mut cand = bin.clone();
                cand.push(j);
                cand.sort_unstable();
                if bin.iter().all(|&i| ok_pair(i, j)) && (cand.len() <= 2 || self.probe_accepts(&cand, optimistic)) {
                    bin = cand;
                    assigned[j] = true;
                    queue.extend(adj[j].iter().copied());
                } else {
                    rejected[j] = true;
                }
            }
            bins.push(bin);
        }
        bins
    }

    fn feasible(
        &self,
        order: &[usize],
        ok_pair: &dyn Fn(usize, usize) -> bool,
        optimistic: bool,
        target: usize,
        nodes: &mut u64,
    ) -> Feasible {
        let mut bins: Vec<Vec<usize>> = Vec::new();
        match self.place(0, order, ok_pair, optimistic, target, &mut bins, nodes) {
            Some(true) => Feasible::Yes(bins),
            Some(false) => Feasible::No,
            None => Feasible::OutOfNodes,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &self,
        pos: usize,
        order: &[usize],
        ok_pair: &dyn Fn(usize, usize) -> bool,
        optimistic: bool,
        target: usize,
        bins: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) -> Option<bool> {
        if pos == order.len() {
            return Some(true);
        }
        if *nodes == 0 || self.tests_left.get() == 0 {
            return None;
        }
        *nodes -= 1;
        let i = order[pos];
        for b in 0..bins.len() {
            if !bins[b].iter().all(|&j| ok_pair(i, j)) {
                continue;
            }
            let mut cand = bins[b].clone();
            cand.push(i);
            cand.sort_unstable();
            if cand.len() > 2 && !self.accepts(&cand, optimistic) {
                continue;
            }
            let saved = std::mem::replace(&mut bins[b], cand);
            match self.place(pos + 1, order, ok_pair, optimistic, target, bins, nodes) {
                Some(false) => bins[b] = saved,
                other => return other,
            }
        }
        if bins.len() < target {
            bins.push(vec![i]);
            match self.place(pos + 1, order, ok_pair, optimistic, target, bins, nodes) {
                Some(false) => {
                    bins.pop();
                }
                other => return other,
            }
        }
        Some(false)
    }
}

/// Size of a greedily grown set of pairwise incompatible items.
fn clique_lower_bound(compat: &[Vec<Kind>]) -> usize {
    let k = compat.len();
    let mut best = 1;
    for start in 0..k {
        let mut clique = vec![start];
        for j in 0..k {
            if j != start && clique.iter().all(|&c| compat[c][j] == Kind::Bad) {
                clique.push(j);
            }
        }
        best = best.max(clique.len());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sets are good when they avoid containing both elements of any listed pair.
    struct Avoid(Vec<(usize, usize)>);

    impl Goodness for Avoid {
        type Evidence = ();
        fn test(&self, set: &ElemSet) -> Verdict<()> {
            if self.0.iter().any(|&(a, b)| set.contains(a) && set.contains(b)) {
                Verdict::Bad("pair".into())
            } else {
                Verdict::Good(())
            }
        }
    }

    fn items(n: usize) -> Vec<ElemSet> {
        (0..n).map(|i| ElemSet::from_indices(n, [i])).collect()
    }

    #[test]
    fn colouring_an_odd_cycle_needs_three() {
        let it = items(5);
        let o = Avoid(vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        match CoverSearch::new(&it, &o, 10_000).run() {
            CoverOutcome::Exact(b) => assert_eq!(b.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn whole_good_is_one() {
        let it = items(3);
        let o = Avoid(vec![]);
        assert!(matches!(CoverSearch::new(&it, &o, 10).run(), CoverOutcome::Exact(b) if b.len() == 1));
    }
}
