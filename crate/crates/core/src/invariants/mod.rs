//! Equivariant LS-category, combinatorial complexity and sectional category
//! of finite G-posets, computed as exact minimum covers with certificates.

pub mod cover;
pub mod homology;
pub mod verify;

use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::{GPoset, Subgroup};
use crate::homotopy::{FenceCertificate, Goal, MapSpace, Search};
use crate::subdivision::{self, SecondSubdivision};

use cover::{Bin, CoverOutcome, CoverSearch, Goodness, Verdict};
use homology::Loops;

/// Work limits. Each goodness test gets `oracle_nodes` on its own, so
/// results never depend on scheduling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub oracle_nodes: u64,
    /// Branch nodes of the cover search. A hundredth of it caps the fresh
    /// goodness tests made while proving a cover minimal.
    pub cover_nodes: u64,
    /// Fence lengths tried by direct constraint search with the full budget.
    /// Lengths up to four times this get a sixteenth each before the
    /// component search.
    pub quick_length: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            oracle_nodes: 2_000_000,
            cover_nodes: 2_000_000,
            quick_length: 3,
        }
    }
}

impl Budget {
    pub fn with_nodes(n: u64) -> Self {
        Self {
            oracle_nodes: n,
            cover_nodes: n,
            ..Self::default()
        }
    }
}

/// A computed invariant: an exact count, infinity, or bounds left open by
/// the budget (`upper: None` means no finite cover was found).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(usize),
    Infinite,
    Interval { lower: usize, upper: Option<usize> },
}

impl Value {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Value::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Interval { .. })
    }

    /// `(lower, upper)` with `None` for infinity.
    pub fn range(&self) -> (Option<usize>, Option<usize>) {
        match *self {
            Value::Finite(v) => (Some(v), Some(v)),
            Value::Infinite => (None, None),
            Value::Interval { lower, upper } => (Some(lower), upper),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinite => write!(f, "infinity"),
            Value::Interval { lower, upper: Some(u) } => write!(f, "[{lower}, {u}]"),
            Value::Interval { lower, upper: None } => write!(f, "[{lower}, infinity]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Equivariant fence from the inclusion (or first projection) to the goal.
    Fence(FenceCertificate),
    /// A strict equivariant section, listed on the set's elements in order.
    Section(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedSet {
    pub elements: Vec<usize>,
    pub evidence: Evidence,
}

/// A point whose minimal invariant neighbourhood is not good.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityCertificate {
    pub witness: usize,
    pub neighbourhood: Vec<usize>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct InvariantResult {
    pub value: Value,
    /// The cover realizing the value, or the best cover found for intervals.
    pub cover: Vec<CertifiedSet>,
    pub infinity: Option<InfinityCertificate>,
    pub note: Option<String>,
}

/// Closures of orbits of maximal elements, with the representative of each.
fn maximal_items(y: &GPoset) -> (Vec<usize>, Vec<ElemSet>) {
    let maxima = y.poset().maximal_elements(&y.poset().all_elements());
    let mut reps: Vec<usize> = maxima.iter().map(|&m| y.rep(m)).collect();
    reps.sort_unstable();
    reps.dedup();
    let items = reps.iter().map(|&r| y.saturated_down_closure(r)).collect();
    (reps, items)
}

fn bins_to_cover(bins: Vec<Bin<Evidence>>) -> Vec<CertifiedSet> {
    bins.into_iter()
        .map(|b| CertifiedSet {
            elements: b.set.to_vec(),
            evidence: b.evidence,
        })
        .collect()
}

fn finish(y: &GPoset, reps: &[usize], items: &[ElemSet], outcome: CoverOutcome<Evidence>) -> InvariantResult {
    match outcome {
        CoverOutcome::Exact(bins) => InvariantResult {
            value: Value::Finite(bins.len()),
            cover: bins_to_cover(bins),
            infinity: None,
            note: None,
        },
        CoverOutcome::Infinite { item, reason } => InvariantResult {
            value: Value::Infinite,
            cover: Vec::new(),
            infinity: Some(InfinityCertificate {
                witness: reps[item],
                neighbourhood: items[item].to_vec(),
                reason: format!("{}: {reason}", y.name(reps[item])),
            }),
            note: None,
        },
        CoverOutcome::Bounds {
            lower,
            upper,
            cover,
            reason,
        } => InvariantResult {
            value: Value::Interval { lower, upper },
            cover: cover.map(bins_to_cover).unwrap_or_default(),
            infinity: None,
            note: Some(reason),
        },
    }
}

fn search_outcome(s: Search<Vec<Vec<usize>>>) -> std::result::Result<Vec<Vec<usize>>, Verdict<Evidence>> {
    match s {
        Search::Found(f) => Ok(f),
        Search::Exhausted { explored } => Err(Verdict::Bad(format!("{explored} states searched"))),
        Search::Budget { explored } => Err(Verdict::Unknown(format!(
            "undecided after {explored} states"
        ))),
    }
}

/// G-categoricity: the inclusion of `U` is G-homotopic to a map into one orbit.
struct Categorical<'a> {
    x: &'a GPoset,
    budget: Budget,
    loops: Option<&'a Loops>,
}

enum AnyFence {
    Found(Vec<Vec<usize>>),
    /// The component of the start was exhausted; it has this many maps.
    Disconnected(u64),
    Undecided(String),
}

/// A fence of any length: short lengths by constraint search, longer ones
/// with a share of the budget each, then the component search.
fn any_fence(space: &MapSpace, start: &[usize], goal: &Goal, first: usize, budget: Budget) -> AnyFence {
    let mut nodes = budget.oracle_nodes;
    for m in first..=budget.quick_length {
        match space.fence_of_length(start, goal, m, &mut nodes) {
            Search::Found(f) => return AnyFence::Found(f),
            Search::Budget { explored } => {
                return AnyFence::Undecided(format!("undecided after {explored} search nodes"))
            }
            Search::Exhausted { .. } => {}
        }
    }
    for m in budget.quick_length + 1..=4 * budget.quick_length {
        let mut share = nodes / 16;
        nodes -= share;
        let found = space.fence_of_length(start, goal, m, &mut share);
        nodes += share;
        if let Search::Found(f) = found {
            return AnyFence::Found(f);
        }
    }
    match space.connect(start, goal, &mut nodes) {
        Search::Found(f) => AnyFence::Found(f),
        Search::Exhausted { explored } => AnyFence::Disconnected(explored + 1),
        Search::Budget { explored } => AnyFence::Undecided(format!(
            "component search stopped after {explored} maps and no fence of length at most {} was found",
            4 * budget.quick_length
        )),
    }
}

impl Goodness for Categorical<'_> {
    type Evidence = Evidence;

    fn test(&self, set: &ElemSet) -> Verdict<Evidence> {
        if let Some(why) = orbit_obstruction(self.x, set) {
            return Verdict::Bad(why);
        }
        // a map into one orbit factors through a discrete space
        if let Some(l) = self.loops {
            if !l.agree(self.x.poset(), set, &|u| u, None) {
                return Verdict::Bad("a loop in the set is not a boundary in the space".into());
            }
        }
        let space = MapSpace::new(self.x, self.x, set.clone());
        let start = space.reps.clone();
        match any_fence(&space, &start, &Goal::SingleOrbit, 0, self.budget) {
            AnyFence::Found(f) => Verdict::Good(Evidence::Fence(space.certificate(&f))),
            AnyFence::Disconnected(n) => Verdict::Bad(format!(
                "the path component of the inclusion in the equivariant hom-poset has {n} maps, none with image in a single orbit"
            )),
            AnyFence::Undecided(r) => Verdict::Unknown(r),
        }
    }
}

/// Open, invariant and G-categorical.
pub fn is_g_categorical(x: &GPoset, u: &ElemSet, budget: Budget) -> Result<Verdict<FenceCertificate>> {
    if !x.poset().is_downset(u) {
        return Err(Error::NotOpen);
    }
    if !x.is_invariant(u) {
        return Err(Error::NotInvariant);
    }
    let loops = Loops::new(x.poset());
    let oracle = Categorical {
        x,
        budget,
        loops: loops.as_ref(),
    };
    Ok(match oracle.test(u) {
        Verdict::Good(Evidence::Fence(f)) => Verdict::Good(f),
        Verdict::Good(Evidence::Section(_)) => unreachable!(),
        Verdict::Bad(r) => Verdict::Bad(r),
        Verdict::Unknown(r) => Verdict::Unknown(r),
    })
}

/// `LS_G(X)`: the least number of open invariant G-categorical sets
/// covering `X`.
pub fn ls_cat_g(x: &GPoset, budget: Budget) -> InvariantResult {
    let (reps, items) = maximal_items(x);
    let loops = Loops::new(x.poset());
    let oracle = Categorical {
        x,
        budget,
        loops: loops.as_ref(),
    };
    let outcome = CoverSearch::new(&items, &oracle, budget.cover_nodes).run();
    finish(x, &reps, &items, outcome)
}

/// Fences from the first to the second projection over sets of `X × X`.
struct Motion<'a> {
    x: &'a GPoset,
    xx: &'a GPoset,
    budget: Budget,
    /// `Some(m)`: fences of length exactly `m`; `None`: any length.
    length: Option<usize>,
    separated: ElemSet,
    loops: Option<Loops>,
}

/// Pairs `(x, y)` with `x` and `y` in different path components of the
/// points fixed by the stabilizer of the pair. A homotopy from `p1` to `p2`
/// would give a path between them there, so no good set contains one.
fn separated_pairs(x: &GPoset, xx: &GPoset) -> ElemSet {
    let n = x.len();
    let mut labels = FixedComponents::default();
    ElemSet::from_indices(
        xx.len(),
        (0..xx.len()).filter(|&w| {
            let label = labels.get(x, &xx.stabilizer(w));
            label[w / n] != label[w % n]
        }),
    )
}

/// Path-component labels of fixed sets, by subgroup; `usize::MAX` marks
/// points outside the fixed set.
#[derive(Default)]
struct FixedComponents(FxHashMap<Vec<usize>, Vec<usize>>);

impl FixedComponents {
    fn get(&mut self, x: &GPoset, h: &Subgroup) -> &[usize] {
        self.0.entry(h.members.to_vec()).or_insert_with(|| {
            let (p, keep) = x.poset().subposet(&x.fixed_set(h));
            let mut label = vec![usize::MAX; x.len()];
            for (c, members) in p.components().iter().enumerate() {
                for &i in members {
                    label[keep[i]] = c;
                }
            }
            label
        })
    }
}

/// A homotopy into one orbit ends constant on each component of `set`
/// (orbits are antichains), and moves each point `u` inside the points fixed
/// by its stabilizer. Reports a set for which no orbit can serve.
fn orbit_obstruction(x: &GPoset, set: &ElemSet) -> Option<String> {
    let (sub, keep) = x.poset().subposet(set);
    let parts: Vec<Vec<usize>> = sub
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| keep[i]).collect())
        .collect();
    if parts.len() <= 1 && x.group().is_trivial() {
        return None;
    }
    let mut fixed = FixedComponents::default();
    let labels: Vec<Vec<usize>> = set.iter().map(|u| fixed.get(x, &x.stabilizer(u)).to_vec()).collect();
    let at: FxHashMap<usize, usize> = set.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let reaches = |u: usize, y: usize| {
        let label = &labels[at[&u]];
        label[u] == label[y]
    };
    let possible = x
        .orbits()
        .iter()
        .any(|o| parts.iter().all(|d| o.iter().any(|&y| d.iter().all(|&u| reaches(u, y)))));
    (!possible).then(|| {
        format!(
            "no orbit is reachable from all {} components of the set inside the fixed sets of their points",
            parts.len()
        )
    })
}

impl<'a> Motion<'a> {
    fn new(x: &'a GPoset, xx: &'a GPoset, budget: Budget, length: Option<usize>) -> Self {
        Motion {
            x,
            xx,
            budget,
            length,
            separated: separated_pairs(x, xx),
            loops: Loops::new(x.poset()),
        }
    }

    /// For a fixed point `x`, a homotopy from `p1` to `p2` restricts to one
    /// from the constant map at `x` to the inclusion of the slice
    /// `{v : (x, v) ∈ set}`, and likewise in the other coordinate. A slice
    /// that is not categorical makes the set bad.
    fn slice_obstruction(&self, set: &ElemSet) -> Option<String> {
        let n = self.x.len();
        let whole = self.x.group().whole();
        let fixed = self.x.fixed_set(&whole);
        let probe = Categorical {
            x: self.x,
            loops: self.loops.as_ref(),
            budget: Budget {
                oracle_nodes: self.budget.oracle_nodes / 16,
                ..self.budget
            },
        };
        let mut seen = FxHashSet::default();
        for x in fixed.iter() {
            for first in [true, false] {
                let slice: Vec<usize> = set
                    .iter()
                    .filter_map(|w| {
                        let (a, b) = (w / n, w % n);
                        if first { (a == x).then_some(b) } else { (b == x).then_some(a) }
                    })
                    .collect();
                if slice.is_empty() || !seen.insert(slice.clone()) {
                    continue;
                }
                let v = ElemSet::from_indices(n, slice);
                if let Verdict::Bad(why) = probe.test(&v) {
                    let names: Vec<&str> = v.iter().map(|i| self.x.name(i)).collect();
                    return Some(format!(
                        "the slice at the fixed point {} would contract {{{}}} onto it, but {why}",
                        self.x.name(x),
                        names.join(", ")
                    ));
                }
            }
        }
        None
    }

    fn endpoints(&self, space: &MapSpace) -> (Vec<usize>, Vec<usize>) {
        let n = self.x.len();
        (
            space.reps.iter().map(|&r| r / n).collect(),
            space.reps.iter().map(|&r| r % n).collect(),
        )
    }
}

impl Goodness for Motion<'_> {
    type Evidence = Evidence;

    fn test(&self, set: &ElemSet) -> Verdict<Evidence> {
        if let Some(w) = set.intersection(&self.separated).first() {
            return Verdict::Bad(format!(
                "{} and {} lie in different path components of the points fixed by the stabilizer of the pair",
                self.x.name(w / self.x.len()),
                self.x.name(w % self.x.len())
            ));
        }
        if let Some(l) = &self.loops {
            let n = self.x.len();
            if !l.agree(self.xx.poset(), set, &|w| w / n, Some(&|w| w % n)) {
                return Verdict::Bad("the two projections differ on a loop of the set".into());
            }
        }
        if let Some(why) = self.slice_obstruction(set) {
            return Verdict::Bad(why);
        }
        let space = MapSpace::new(self.xx, self.x, set.clone());
        let (p1, p2) = self.endpoints(&space);
        let goal = Goal::Map(p2);
        let mut nodes = self.budget.oracle_nodes;
        if let Some(m) = self.length {
            return match search_outcome(space.fence_of_length(&p1, &goal, m, &mut nodes)) {
                Ok(f) => Verdict::Good(Evidence::Fence(space.certificate(&f))),
                Err(Verdict::Bad(_)) => Verdict::Bad(format!("no fence of length {m}")),
                Err(v) => v,
            };
        }
        match any_fence(&space, &p1, &goal, 1, self.budget) {
            AnyFence::Found(f) => Verdict::Good(Evidence::Fence(space.certificate(&f))),
            AnyFence::Disconnected(n) => Verdict::Bad(format!(
                "the projections lie in different path components ({n} maps reachable from the first)"
            )),
            AnyFence::Undecided(r) => Verdict::Unknown(r),
        }
    }
}

/// `CC_{G,m}(X) = secat_G(q_m)`, via fences of length `m` over `X × X`.
pub fn cc_g_m(x: &GPoset, m: usize, budget: Budget) -> InvariantResult {
    let xx = x.diagonal();
    let (reps, items) = maximal_items(&xx);
    let oracle = Motion::new(x, &xx, budget, Some(m));
    let outcome = CoverSearch::new(&items, &oracle, budget.cover_nodes).run();
    finish(&xx, &reps, &items, outcome)
}

/// `#X^{#(X×X/G)}`, beyond which longer paths never help.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathLengthBound {
    pub base: usize,
    pub exponent: usize,
}

impl PathLengthBound {
    pub fn value(&self) -> Option<u128> {
        (self.base as u128).checked_pow(self.exponent as u32)
    }
}

impl fmt::Display for PathLengthBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base, self.exponent)
    }
}

#[derive(Clone, Debug)]
pub struct ComplexityResult {
    pub result: InvariantResult,
    /// A path length `m >= 1` at which `CC_{G,m}` already equals the value:
    /// the longest minimal fence among the certified sets.
    pub stabilizing_m: Option<usize>,
    pub path_length_bound: PathLengthBound,
}

/// `CC_G(X) = min_{m >= 1} CC_{G,m}(X)`, which equals `TC_G(X)`.
///
/// A set is good for some `m` exactly when both projections lie in one path
/// component of the equivariant hom-poset, so the minimum over `m` is a
/// single cover problem. Each chosen set then gets its shortest fence.
pub fn cc_g(x: &GPoset, budget: Budget) -> ComplexityResult {
    if let Some(cert) = motion_obstruction(x, budget) {
        return ComplexityResult {
            result: InvariantResult {
                value: Value::Infinite,
                cover: Vec::new(),
                infinity: Some(cert),
                note: None,
            },
            stabilizing_m: None,
            path_length_bound: PathLengthBound {
                base: x.len(),
                exponent: x.diagonal().orbit_count(),
            },
        };
    }
    cc_g_by_search(x, budget)
}

/// An infinity certificate for `CC_G` read off from one for `LS_G`.
///
/// If `G·U_w` is not G-categorical and `x0` is fixed by `G`, a G-homotopy
/// between the projections on `G·U_(w,x0)` restricts to `G·U_w × {x0}` and
/// contracts `G·U_w` onto the orbit of `x0`.
pub fn motion_obstruction(x: &GPoset, budget: Budget) -> Option<InfinityCertificate> {
    let x0 = x.fixed_set(&x.group().whole()).iter().next()?;
    let ls = ls_cat_g(x, budget);
    let w = ls.infinity?.witness;
    let xx = x.diagonal();
    let z = w * x.len() + x0;
    Some(InfinityCertificate {
        witness: z,
        neighbourhood: xx.saturated_down_closure(z).to_vec(),
        reason: format!(
            "{}: {} is fixed and the minimal invariant neighbourhood of {} is not G-categorical",
            xx.name(z),
            x.name(x0),
            x.name(w)
        ),
    })
}

/// Equivariant fences from the first to the second projection on `U`, of
/// length `m` or of any length.
pub fn motion_verdict(x: &GPoset, u: &ElemSet, length: Option<usize>, budget: Budget) -> Verdict<FenceCertificate> {
    let xx = x.diagonal();
    let oracle = Motion::new(x, &xx, budget, length);
    match oracle.test(u) {
        Verdict::Good(Evidence::Fence(f)) => Verdict::Good(f),
        Verdict::Good(Evidence::Section(_)) => unreachable!(),
        Verdict::Bad(r) => Verdict::Bad(r),
        Verdict::Unknown(r) => Verdict::Unknown(r),
    }
}

/// `CC_G` by the cover search alone, without the reduction to `LS_G`.
pub fn cc_g_by_search(x: &GPoset, budget: Budget) -> ComplexityResult {
    let xx = x.diagonal();
    let (reps, items) = maximal_items(&xx);
    let oracle = Motion::new(x, &xx, budget, None);
    let outcome = CoverSearch::new(&items, &oracle, budget.cover_nodes).run();
    let mut result = finish(&xx, &reps, &items, outcome);
    let mut stabilizing = None;
    if result.value.finite().is_some() {
        let mut worst = 1;
        for set in result.cover.iter_mut() {
            let u = ElemSet::from_indices(xx.len(), set.elements.iter().copied());
            let space = MapSpace::new(&xx, x, u);
            let n = x.len();
            let p1: Vec<usize> = space.reps.iter().map(|&r| r / n).collect();
            let goal = Goal::Map(space.reps.iter().map(|&r| r % n).collect());
            let Evidence::Fence(found) = &set.evidence else { unreachable!() };
            let longest = found.len().max(1);
            let mut best = found.padded(1);
            for m in 1..longest.min(4 * budget.quick_length + 1) {
                let mut nodes = budget.oracle_nodes / 10;
                if let Search::Found(f) = space.fence_of_length(&p1, &goal, m, &mut nodes) {
                    best = space.certificate(&f);
                    break;
                }
            }
            worst = worst.max(best.len());
            set.evidence = Evidence::Fence(best);
        }
        stabilizing = Some(worst);
    }
    ComplexityResult {
        result,
        stabilizing_m: stabilizing,
        path_length_bound: PathLengthBound {
            base: x.len(),
            exponent: xx.orbit_count(),
        },
    }
}

/// Strict equivariant sections of `p: E -> B` over open invariant sets.
struct Sections<'a> {
    e: &'a GPoset,
    b: &'a GPoset,
    fibres: Vec<ElemSet>,
    budget: Budget,
}

impl Goodness for Sections<'_> {
    type Evidence = Evidence;

    fn test(&self, set: &ElemSet) -> Verdict<Evidence> {
        let mut space = MapSpace::new(self.b, self.e, set.clone());
        for slot in 0..space.slots() {
            let fibre = self.fibres[space.reps[slot]].clone();
            space.narrow(slot, &fibre);
        }
        let mut nodes = self.budget.oracle_nodes;
        match space.find_map(&mut nodes) {
            Search::Found(v) => Verdict::Good(Evidence::Section(space.expand(&v))),
            Search::Exhausted { .. } => Verdict::Bad("no equivariant section".into()),
            Search::Budget { explored } => {
                Verdict::Unknown(format!("undecided after {explored} search nodes"))
            }
        }
    }
}

/// `secat_G(p)` for a monotone equivariant `p: E -> B` given by element images.
pub fn secat_g(e: &GPoset, b: &GPoset, p: &[usize], budget: Budget) -> Result<InvariantResult> {
    if !e.same_group(b) {
        return Err(Error::GroupMismatch("total space and base carry different groups".into()));
    }
    if !e.poset().is_monotone_into(b.poset(), p) {
        return Err(Error::NotMonotone("projection".into()));
    }
    for g in 0..e.group().order() {
        if (0..e.len()).any(|v| p[e.act(g, v)] != b.act(g, p[v])) {
            return Err(Error::NotEquivariant("projection".into()));
        }
    }
    let mut fibres = vec![ElemSet::empty(e.len()); b.len()];
    for (v, &img) in p.iter().enumerate() {
        fibres[img].insert(v);
    }
    let (reps, items) = maximal_items(b);
    let oracle = Sections {
        e,
        b,
        fibres,
        budget,
    };
    let outcome = CoverSearch::new(&items, &oracle, budget.cover_nodes).run();
    Ok(finish(b, &reps, &items, outcome))
}

/// Phase-one finiteness of `LS_G(sd²(X))` by explicit contractions: one
/// verified certificate per orbit of maximal elements.
pub struct Sd2Finiteness {
    pub sd2: SecondSubdivision,
    pub certificates: Vec<subdivision::Sd2Certificate>,
    /// Number of orbits of maximal elements, an upper bound for the category.
    pub upper_bound: usize,
}

pub fn sd2_finiteness(x: &GPoset) -> Result<Sd2Finiteness> {
    let sd2 = SecondSubdivision::new(x)?;
    let (reps, _) = maximal_items(sd2.space());
    let certificates = reps
        .iter()
        .map(|&s| subdivision::sd2_categorical_certificate(&sd2, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sd2Finiteness {
        upper_bound: reps.len(),
        sd2,
        certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundStatus {
    Holds,
    Violated,
    Skipped(String),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    pub status: BoundStatus,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub ls: Value,
    pub tc: Value,
    pub ls_square: Value,
    pub ls_subdivision: Value,
    pub group_order: usize,
    pub g_connected: bool,
    pub empty_fixed_sets: usize,
    pub fixed_nonempty: bool,
    pub entries: Vec<BoundEntry>,
}

/// Compares `lhs <= rhs` with infinity and intervals.
pub fn compare(lhs: Value, rhs: Value) -> BoundStatus {
    // None stands for infinity.
    let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a <= b,
    };
    let (llo, lhi) = lhs.range();
    let (rlo, rhi) = rhs.range();
    if le(lhi, rlo) {
        BoundStatus::Holds
    } else if !le(llo, rhi) {
        BoundStatus::Violated
    } else {
        BoundStatus::Unknown
    }
}

/// `c · a · b` on values.
pub fn scaled_product(c: usize, a: Value, b: Value) -> Value {
    let mul = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (Some(x), Some(y)) => Some(c * x * y),
        _ => None,
    };
    match (a, b) {
        (Value::Finite(x), Value::Finite(y)) => Value::Finite(c * x * y),
        (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
        _ => {
            let (alo, ahi) = a.range();
            let (blo, bhi) = b.range();
            Value::Interval {
                lower: mul(alo, blo).unwrap_or(0),
                upper: mul(ahi, bhi),
            }
        }
    }
}

/// Evaluates the invariants of `X` and checks every applicable inequality.
pub fn bound_report(x: &GPoset, budget: Budget) -> Result<BoundReport> {
    let ls = ls_cat_g(x, budget).value;
    let tc = cc_g_by_search(x, budget).result.value;
    let ls_square = ls_cat_g(&x.diagonal(), budget).value;
    let sd = subdivision::subdivide(x)?;
    let ls_subdivision = ls_cat_g(&sd.space, budget).value;
    let conn = x.g_connectivity();
    let fixed_nonempty = !x.fixed_set(&x.group().whole()).is_empty();
    let order = x.group().order();
    let mut entries = Vec::new();
    let skip_unless = |cond: bool, why: &str, lhs: Value, rhs: Value| {
        if cond {
            compare(lhs, rhs)
        } else {
            BoundStatus::Skipped(why.to_string())
        }
    };
    entries.push(BoundEntry {
        name: "TC_G(X) <= LS_G(X x X)".into(),
        lhs: tc,
        rhs: ls_square,
        status: skip_unless(conn.connected, "X is not G-connected", tc, ls_square),
    });
    entries.push(BoundEntry {
        name: "LS_G(X) <= TC_G(X)".into(),
        lhs: ls,
        rhs: tc,
        status: skip_unless(
            conn.connected && fixed_nonempty,
            "requires X G-connected with nonempty fixed set",
            ls,
            tc,
        ),
    });
    let product_bound = scaled_product(order, ls, ls);
    entries.push(BoundEntry {
        name: "LS_G(X x X) <= #G * LS_G(X)^2".into(),
        lhs: ls_square,
        rhs: product_bound,
        status: compare(ls_square, product_bound),
    });
    entries.push(BoundEntry {
        name: "LS_G(sd X) <= LS_G(X)".into(),
        lhs: ls_subdivision,
        rhs: ls,
        status: compare(ls_subdivision, ls),
    });
    // sd² of a G-connected space has finite TC_G, bounded by #G·LS_G(sd²X)².
    let (sd2_lhs, sd2_status) = if !conn.connected {
        (
            Value::Interval {
                lower: 0,
                upper: None,
            },
            BoundStatus::Skipped("X is not G-connected".into()),
        )
    } else {
        match sd2_finiteness(x) {
            Ok(f) => (
                Value::Interval {
                    lower: 1,
                    upper: Some(order * f.upper_bound * f.upper_bound),
                },
                BoundStatus::Holds,
            ),
            Err(Error::SizeBudgetExceeded { .. }) => (
                Value::Interval {
                    lower: 0,
                    upper: None,
                },
                BoundStatus::Skipped("second subdivision exceeds the size cap".into()),
            ),
            Err(e) => return Err(e),
        }
    };
    entries.push(BoundEntry {
        name: "TC_G(sd^2 X) < infinity".into(),
        lhs: sd2_lhs,
        rhs: Value::Infinite,
        status: sd2_status,
    });
    Ok(BoundReport {
        ls,
        tc,
        ls_square,
        ls_subdivision,
        group_order: order,
        g_connected: conn.connected,
        empty_fixed_sets: conn.empty_fixed_sets,
        fixed_nonempty,
        entries,
    })
}
