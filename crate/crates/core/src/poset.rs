//! Finite posets, read as finite T0 spaces: the open sets are the downsets.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// A downward-closed subset of a poset, i.e. an open set of the finite space.
pub type Downset = ElemSet;

/// A finite partially ordered set with a dense reachability matrix.
///
/// `down[x]` holds every `y <= x` and `up[x]` every `y >= x`, so `leq` is a
/// single bit probe.
#[derive(Clone)]
pub struct FinitePoset {
    names: Vec<String>,
    index: FxHashMap<String, usize>,
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.down == other.down
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from named elements and generating relations `(lo, hi)`,
    /// taking the reflexive-transitive closure.
    pub fn from_cover_relations<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = FxHashMap::default();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            pairs.push((ia, ib));
        }
        Self::from_relation_indices(names, &pairs)
    }

    /// Same as [`from_cover_relations`](Self::from_cover_relations) with
    /// relations given by element index.
    pub fn from_relation_indices(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut down: Vec<ElemSet> = (0..n).map(|i| ElemSet::from_indices(n, [i])).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            down[b].insert(a);
        }
        // Warshall closure on rows: if k <= j then everything below k is below j.
        for k in 0..n {
            let dk = down[k].clone();
            for row in down.iter_mut() {
                if row.contains(k) {
                    row.union_with(&dk);
                }
            }
        }
        for a in 0..n {
            for b in down[a].iter() {
                if b != a && down[b].contains(a) {
                    return Err(Error::Cycle(names[b].clone(), names[a].clone()));
                }
            }
        }
        Ok(Self::from_down_sets(names, down))
    }

    /// Trusted constructor: `down` must already be a closed, antisymmetric
    /// reachability matrix.
    pub(crate) fn from_down_sets(names: Vec<String>, down: Vec<ElemSet>) -> Self {
        let n = names.len();
        let mut up: Vec<ElemSet> = (0..n).map(|_| ElemSet::empty(n)).collect();
        for (x, d) in down.iter().enumerate() {
            for y in d.iter() {
                up[y].insert(x);
            }
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self {
            names,
            index,
            down,
            up,
        }
    }

    /// Builds a poset from a `leq` predicate that is known to be a partial order.
    pub(crate) fn from_leq_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let down = (0..n)
            .map(|x| ElemSet::from_indices(n, (0..n).filter(|&y| leq(y, x))))
            .collect();
        Self::from_down_sets(names, down)
    }

    pub fn point() -> Self {
        Self::from_down_sets(vec!["*".into()], vec![ElemSet::full(1)])
    }

    pub fn empty() -> Self {
        Self::from_down_sets(Vec::new(), Vec::new())
    }

    pub fn antichain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_leq_fn(names, |a, b| a == b)
    }

    /// The total order `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_leq_fn(names, |a, b| a <= b)
    }

    /// The fence `J_m`: `0 < 1 > 2 < 3 ...` on `m + 1` elements, with every
    /// even element below its odd neighbours.
    pub fn combinatorial_interval(m: usize) -> Self {
        let names = (0..=m).map(|i| i.to_string()).collect();
        Self::from_leq_fn(names, |a, b| {
            a == b || (a % 2 == 0 && b % 2 == 1 && a.abs_diff(b) == 1)
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `U_x`, the smallest open set containing `x`.
    pub fn down_closure(&self, x: usize) -> &Downset {
        &self.down[x]
    }

    pub fn up_closure(&self, x: usize) -> &ElemSet {
        &self.up[x]
    }

    pub fn down_closure_named(&self, x: &str) -> Result<Downset> {
        Ok(self.down[self.index_of(x)?].clone())
    }

    pub fn down_closure_of_set(&self, s: &ElemSet) -> Downset {
        let mut out = ElemSet::empty(self.len());
        for x in s.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn is_downset(&self, s: &ElemSet) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn all_elements(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            for x in self.lower_covers(y) {
                out.push((x, y));
            }
        }
        out
    }

    pub fn lower_covers(&self, y: usize) -> Vec<usize> {
        let below: Vec<usize> = self.down[y].iter().filter(|&x| x != y).collect();
        below
            .iter()
            .copied()
            .filter(|&x| !below.iter().any(|&z| z != x && self.leq(x, z)))
            .collect()
    }

    pub fn maximal_elements(&self, s: &ElemSet) -> Vec<usize> {
        s.iter()
            .filter(|&x| !s.iter().any(|y| y != x && self.leq(x, y)))
            .collect()
    }

    pub fn minimal_elements(&self, s: &ElemSet) -> Vec<usize> {
        s.iter()
            .filter(|&x| !s.iter().any(|y| y != x && self.leq(y, x)))
            .collect()
    }

    /// A linear extension, smallest index first among available elements.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut remaining: Vec<usize> = (0..n).map(|x| self.down[x].len() - 1).collect();
        let mut order = Vec::with_capacity(n);
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&x| remaining[x] == 0).collect();
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for y in self.up[x].iter() {
                if y != x {
                    remaining[y] -= 1;
                    if remaining[y] == 0 {
                        ready.insert(y);
                    }
                }
            }
        }
        order
    }

    /// Every downset exactly once; fails once more than `cap` have been found.
    pub fn all_downsets(&self, cap: usize) -> Result<Vec<Downset>> {
        let ext = self.linear_extension();
        let covers: Vec<Vec<usize>> = (0..self.len()).map(|y| self.lower_covers(y)).collect();
        let mut out = Vec::new();
        let mut cur = ElemSet::empty(self.len());
        fn rec(
            k: usize,
            ext: &[usize],
            covers: &[Vec<usize>],
            cur: &mut ElemSet,
            out: &mut Vec<ElemSet>,
            cap: usize,
        ) -> Result<()> {
            if k == ext.len() {
                if out.len() >= cap {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {cap} downsets"
                    )));
                }
                out.push(cur.clone());
                return Ok(());
            }
            rec(k + 1, ext, covers, cur, out, cap)?;
            let x = ext[k];
            if covers[x].iter().all(|&c| cur.contains(c)) {
                cur.insert(x);
                rec(k + 1, ext, covers, cur, out, cap)?;
                cur.remove(x);
            }
            Ok(())
        }
        rec(0, &ext, &covers, &mut cur, &mut out, cap)?;
        Ok(out)
    }

    /// Componentwise order on pairs; `(x, y)` has index `x * #Q + y`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (n, m) = (self.len(), other.len());
        let mut names = Vec::with_capacity(n * m);
        for a in &self.names {
            for b in &other.names {
                names.push(format!("({a},{b})"));
            }
        }
        let down = (0..n * m)
            .map(|p| {
                let (x, y) = (p / m, p % m);
                let mut s = ElemSet::empty(n * m);
                for a in self.down[x].iter() {
                    for b in other.down[y].iter() {
                        s.insert(a * m + b);
                    }
                }
                s
            })
            .collect();
        Self::from_down_sets(names, down)
    }

    /// The same elements with the reversed order.
    pub fn opposite(&self) -> FinitePoset {
        Self::from_down_sets(self.names.clone(), self.up.clone())
    }

    /// The induced subposet on `s`, with the original index of each new element.
    pub fn subposet(&self, s: &ElemSet) -> (FinitePoset, Vec<usize>) {
        let keep = s.to_vec();
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let p = Self::from_leq_fn(names, |a, b| self.leq(keep[a], keep[b]));
        (p, keep)
    }

    /// Connected components of the comparability graph, each as a sorted list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in self.down[x].iter().chain(self.up[x].iter()) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        q.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Path-connectedness of the finite space; the empty poset counts as
    /// connected.
    pub fn is_path_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Shortest fence from `x` to `y` in the comparability graph, as the
    /// sequence of visited elements.
    fn shortest_fence(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        let n = self.len();
        let mut prev = vec![usize::MAX; n];
        prev[x] = x;
        let mut q = VecDeque::from([x]);
        while let Some(a) = q.pop_front() {
            if a == y {
                break;
            }
            for b in self.down[a].iter().chain(self.up[a].iter()) {
                if prev[b] == usize::MAX {
                    prev[b] = a;
                    q.push_back(b);
                }
            }
        }
        if prev[y] == usize::MAX {
            return None;
        }
        let mut walk = vec![y];
        let mut cur = y;
        while cur != x {
            cur = prev[cur];
            walk.push(cur);
        }
        walk.reverse();
        Some(walk)
    }

    /// A combinatorial path `J_n -> P` with `n = #P` from `x` to `y`, or
    /// `None` when they lie in different components.
    pub fn connect_with_path(&self, x: usize, y: usize) -> Option<MonotoneMap> {
        let n = self.len();
        let walk = self.shortest_fence(x, y)?;
        // Lay the walk onto J_n: steps from even slots go up, from odd slots
        // down. A step in the wrong direction is absorbed by repeating.
        let mut path = vec![x];
        for &b in &walk[1..] {
            let a = *path.last().unwrap();
            let t = path.len() - 1;
            let ok = if t % 2 == 0 {
                self.leq(a, b)
            } else {
                self.leq(b, a)
            };
            if !ok {
                path.push(a);
            }
            path.push(b);
        }
        if path.len() > n + 1 {
            return None;
        }
        while path.len() < n + 1 {
            path.push(y);
        }
        Some(MonotoneMap { assignment: path })
    }

    pub fn connect_with_path_named(&self, x: &str, y: &str) -> Result<Option<MonotoneMap>> {
        Ok(self.connect_with_path(self.index_of(x)?, self.index_of(y)?))
    }

    /// Whether `f` (given by element index) is order preserving from `self`
    /// into `cod`.
    pub fn is_monotone_into(&self, cod: &FinitePoset, f: &[usize]) -> bool {
        f.len() == self.len()
            && f.iter().all(|&v| v < cod.len())
            && (0..self.len()).all(|y| {
                self.lower_covers(y)
                    .into_iter()
                    .all(|x| cod.leq(f[x], f[y]))
            })
    }
}

/// An order-preserving map, stored as the image index of each domain element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    pub assignment: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: &FinitePoset, cod: &FinitePoset, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != dom.len() || assignment.iter().any(|&v| v >= cod.len()) {
            return Err(Error::NotMonotone("assignment is not a total map".into()));
        }
        for (x, y) in dom.cover_pairs() {
            if !cod.leq(assignment[x], assignment[y]) {
                return Err(Error::NotMonotone(format!(
                    "{} <= {} but {} is not <= {}",
                    dom.name(x),
                    dom.name(y),
                    cod.name(assignment[x]),
                    cod.name(assignment[y])
                )));
            }
        }
        Ok(Self { assignment })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }
}
