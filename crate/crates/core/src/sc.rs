//! Equivariant simplicial complexity `SC_G^{b,c}(K)` and its limits.
//!
//! `K × K` is triangulated as the staircase product. The two composites
//! `sd^b(K ⊗ K) -> K ⊗ K -> K` use last-vertex approximations of the
//! identity. A subcomplex is good when the two composites are joined by an
//! equivariant contiguity chain of length at most `c` on it. Goodness passes
//! to subcomplexes, so minimum covers are minimum partitions of the orbits
//! of maximal simplices.

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::invariants::cover::{CoverOutcome, CoverSearch, Goodness, Verdict};
use crate::invariants::{Budget, Value};
use crate::simplicial::{
    self, contiguity_chain, order_complex_capped, staircase_product, verify_contiguity_chain, Chain,
    OrderedGComplex, Restriction,
};
use crate::subdivision;

/// Exact search is only attempted up to this many simplices in the domain.
pub const EXACT_SIMPLEX_LIMIT: usize = 5_000;
pub const EXACT_B_LIMIT: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Approximation {
    /// A simplex goes to its largest vertex.
    #[default]
    Last,
    /// A simplex goes to its smallest vertex.
    First,
}

/// `sd^b(K ⊗ K)` with the two composite projections to `K`.
#[derive(Clone, Debug)]
pub struct ScSetup {
    pub base: OrderedGComplex,
    pub product: OrderedGComplex,
    pub b: usize,
    pub domain: OrderedGComplex,
    pub pi1: Vec<usize>,
    pub pi2: Vec<usize>,
}

pub fn projection_composites(k: &OrderedGComplex, b: usize, approx: Approximation) -> Result<ScSetup> {
    projection_composites_capped(k, b, approx, simplicial::DEFAULT_SIMPLEX_CAP)
}

pub fn projection_composites_capped(
    k: &OrderedGComplex,
    b: usize,
    approx: Approximation,
    cap: usize,
) -> Result<ScSetup> {
    let product = staircase_product(k, k)?;
    let n = k.vertex_count();
    let pick = |m: &OrderedGComplex, s: &[usize]| match approx {
        Approximation::Last => m.last_vertex(s),
        Approximation::First => m.first_vertex(s),
    };
    let (domain, down): (OrderedGComplex, Vec<usize>) = if b == 0 {
        (product.clone(), (0..product.vertex_count()).collect())
    } else {
        // sd^b(M) = 𝒦(sd^{b-1}(χ(M))), and the last-vertex map on each
        // level is the top of the chain.
        let mut levels = Vec::new();
        let mut cur = product.face_poset();
        for _ in 1..b {
            let sd = subdivision::subdivide_capped(&cur, cap)?;
            cur = sd.space.clone();
            levels.push(sd);
        }
        let domain = order_complex_capped(&cur, cap)?;
        let down = (0..domain.vertex_count())
            .map(|mut e| {
                for sd in levels.iter().rev() {
                    let ch = &sd.chains[e];
                    e = match approx {
                        Approximation::Last => *ch.last().unwrap(),
                        Approximation::First => ch[0],
                    };
                }
                pick(&product, product.complex.simplex(e))
            })
            .collect();
        (domain, down)
    };
    Ok(ScSetup {
        base: k.clone(),
        b,
        pi1: down.iter().map(|&v| v / n).collect(),
        pi2: down.iter().map(|&v| v % n).collect(),
        product,
        domain,
    })
}

impl ScSetup {
    pub fn act(&self) -> &[Vec<usize>] {
        self.domain.vertices.action_table()
    }

    /// Maximal simplices of the domain, grouped into orbits.
    pub fn facet_orbits(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let facets = self.domain.complex.facets();
        let pos: rustc_hash::FxHashMap<usize, usize> =
            facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut seen = vec![false; facets.len()];
        let mut orbits = Vec::new();
        for i in 0..facets.len() {
            if seen[i] {
                continue;
            }
            let s = self.domain.complex.simplex(facets[i]);
            let mut o: Vec<usize> = (0..self.domain.group().order())
                .map(|g| {
                    let img = self.domain.act_simplex(g, s);
                    pos[&self.domain.complex.simplex_index(&img).unwrap()]
                })
                .collect();
            o.sort_unstable();
            o.dedup();
            for &j in &o {
                seen[j] = true;
            }
            orbits.push(o);
        }
        (facets, orbits)
    }

    /// Searches for a chain of length `c` on the subcomplex spanned by the
    /// given domain simplices.
    pub fn chain_on(&self, generators: &[usize], c: usize, nodes: &mut u64) -> Result<(Restriction, Chain)> {
        let gens: Vec<Vec<usize>> = generators
            .iter()
            .map(|&s| self.domain.complex.simplex(s).to_vec())
            .collect();
        let r = Restriction::new(self.act(), &gens)?;
        let chain = contiguity_chain(&r, &self.base, &r.restrict(&self.pi1), &r.restrict(&self.pi2), c, nodes)?;
        Ok((r, chain))
    }
}

/// An invariant subcomplex spanned by `simplices` (domain simplex indices)
/// with a contiguity chain listed over its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScSet {
    pub simplices: Vec<usize>,
    pub chain: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScCertificate {
    pub b: usize,
    pub c: usize,
    pub sets: Vec<ScSet>,
}

/// A maximal simplex whose orbit spans a subcomplex admitting no chain of
/// length `c`; no good subcomplex contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScWitness {
    pub simplex: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ScResult {
    pub b: usize,
    pub c: usize,
    pub value: Value,
    pub certificate: ScCertificate,
    pub witness: Option<ScWitness>,
    pub note: Option<String>,
}

struct Oracle<'a> {
    setup: &'a ScSetup,
    facets: &'a [usize],
    c: usize,
    nodes: u64,
}

impl Goodness for Oracle<'_> {
    type Evidence = Vec<Vec<usize>>;

    fn test(&self, set: &ElemSet) -> Verdict<Self::Evidence> {
        self.test_with(set, self.nodes)
    }

    fn probe(&self, set: &ElemSet) -> Verdict<Self::Evidence> {
        self.test_with(set, (self.nodes / 100).max(1000))
    }
}

impl Oracle<'_> {
    fn test_with(&self, set: &ElemSet, mut nodes: u64) -> Verdict<Vec<Vec<usize>>> {
        let gens: Vec<usize> = set.iter().map(|i| self.facets[i]).collect();
        match self.setup.chain_on(&gens, self.c, &mut nodes) {
            Ok((_, Chain::Found(levels))) => Verdict::Good(levels),
            Ok((_, Chain::Infeasible)) => Verdict::Bad(format!(
                "the composite projections admit no equivariant contiguity chain of length {}",
                self.c
            )),
            Ok((_, Chain::Budget)) => Verdict::Unknown("contiguity search exceeded its budget".into()),
            Err(e) => Verdict::Unknown(e.to_string()),
        }
    }
}

fn lower_from_realization(k: &OrderedGComplex) -> usize {
    match simplicial::realization_tc_lower_bound(k) {
        Ok(Some(l)) => l,
        _ => 1,
    }
}

/// `SC_G^{b,c}(K)`.
pub fn sc_g_bc(k: &OrderedGComplex, b: usize, c: usize, budget: Budget) -> Result<ScResult> {
    let setup = projection_composites(k, b, Approximation::Last)?;
    sc_g_bc_on(&setup, c, budget)
}

pub fn sc_g_bc_on(setup: &ScSetup, c: usize, budget: Budget) -> Result<ScResult> {
    let (facets, orbits) = setup.facet_orbits();
    let nf = facets.len();
    let items: Vec<ElemSet> = orbits
        .iter()
        .map(|o| ElemSet::from_indices(nf, o.iter().copied()))
        .collect();
    let oracle = Oracle {
        setup,
        facets: &facets,
        c,
        nodes: budget.oracle_nodes,
    };
    let to_sets = |bins: Vec<crate::invariants::cover::Bin<Vec<Vec<usize>>>>| -> Vec<ScSet> {
        bins.into_iter()
            .map(|bin| ScSet {
                simplices: bin.set.iter().map(|i| facets[i]).collect(),
                chain: bin.evidence,
            })
            .collect()
    };
    let mut result = ScResult {
        b: setup.b,
        c,
        value: Value::Finite(0),
        certificate: ScCertificate {
            b: setup.b,
            c,
            sets: Vec::new(),
        },
        witness: None,
        note: None,
    };
    let exact = setup.b <= EXACT_B_LIMIT && setup.domain.complex.simplex_count() <= EXACT_SIMPLEX_LIMIT;
    if !exact {
        let lower = lower_from_realization(&setup.base);
        match greedy(&oracle, &items) {
            Greedy::Cover(bins) if bins.len() == lower => {
                result.value = Value::Finite(lower);
                result.certificate.sets = to_sets(bins);
            }
            Greedy::Cover(bins) => {
                result.value = Value::Interval {
                    lower,
                    upper: Some(bins.len()),
                };
                result.certificate.sets = to_sets(bins);
            }
            Greedy::Bad(item, reason) => {
                result.value = Value::Infinite;
                result.witness = Some(ScWitness {
                    simplex: facets[orbits[item][0]],
                    reason,
                });
                return Ok(result);
            }
            Greedy::Undecided => result.value = Value::Interval { lower, upper: None },
        }
        if !result.value.is_exact() {
            result.note = Some(format!(
                "exact search is limited to b <= {EXACT_B_LIMIT} and {EXACT_SIMPLEX_LIMIT} simplices; greedy upper bound only"
            ));
        }
        return Ok(result);
    }
    let adjacency = orbit_adjacency(setup, &facets, &orbits);
    match CoverSearch::new(&items, &oracle, budget.cover_nodes)
        .with_adjacency(adjacency)
        .run()
    {
        CoverOutcome::Exact(bins) => {
            result.value = Value::Finite(bins.len());
            result.certificate.sets = to_sets(bins);
        }
        CoverOutcome::Infinite { item, reason } => {
            result.value = Value::Infinite;
            result.witness = Some(ScWitness {
                simplex: facets[orbits[item][0]],
                reason,
            });
        }
        CoverOutcome::Bounds {
            lower,
            upper,
            cover,
            reason,
        } => {
            let lower = lower.max(lower_from_realization(&setup.base));
            result.value = Value::Interval { lower, upper };
            result.certificate.sets = cover.map(to_sets).unwrap_or_default();
            result.note = Some(reason);
        }
    }
    Ok(result)
}

/// Facet orbits sharing a codimension-one face.
fn orbit_adjacency(setup: &ScSetup, facets: &[usize], orbits: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![0; facets.len()];
    for (o, members) in orbits.iter().enumerate() {
        for &f in members {
            orbit_of[f] = o;
        }
    }
    let mut by_face: rustc_hash::FxHashMap<Vec<usize>, Vec<usize>> = Default::default();
    for (i, &f) in facets.iter().enumerate() {
        let s = setup.domain.complex.simplex(f);
        for skip in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            by_face.entry(face).or_default().push(orbit_of[i]);
        }
    }
    let mut adj = vec![Vec::new(); orbits.len()];
    for owners in by_face.values() {
        for &a in owners {
            for &b in owners {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

enum Greedy {
    Cover(Vec<crate::invariants::cover::Bin<Vec<Vec<usize>>>>),
    /// This single orbit is not good.
    Bad(usize, String),
    Undecided,
}

fn greedy(oracle: &Oracle<'_>, items: &[ElemSet]) -> Greedy {
    use crate::invariants::cover::Bin;
    let mut bins: Vec<Bin<Vec<Vec<usize>>>> = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let mut placed = false;
        for bin in bins.iter_mut() {
            let set = bin.set.union(item);
            if let Verdict::Good(e) = oracle.probe(&set) {
                bin.items.push(i);
                bin.set = set;
                bin.evidence = e;
                placed = true;
                break;
            }
        }
        if !placed {
            match oracle.test(item) {
                Verdict::Good(e) => bins.push(Bin {
                    items: vec![i],
                    set: item.clone(),
                    evidence: e,
                }),
                Verdict::Bad(r) => return Greedy::Bad(i, r),
                Verdict::Unknown(_) => return Greedy::Undecided,
            }
        }
    }
    Greedy::Cover(bins)
}

/// Values over a grid of `(b, c)`, with the monotonicity checks.
#[derive(Clone, Debug)]
pub struct ScSweep {
    pub results: Vec<ScResult>,
    /// Smallest upper bound seen and where.
    pub best: Value,
    pub best_at: Option<(usize, usize)>,
    /// Lower bound for `TC_G(|K|)`; `None` is infinity.
    pub lower_bound: Option<usize>,
    pub monotone_in_c: bool,
    pub monotone_in_b: bool,
}

impl ScSweep {
    /// Whether the best value is pinned by the lower bound, which makes it
    /// the exact limit.
    pub fn is_exact(&self) -> bool {
        match (self.best, self.lower_bound) {
            (Value::Finite(v), Some(l)) => v == l,
            (Value::Infinite, None) => true,
            _ => false,
        }
    }

    pub fn value_at(&self, b: usize, c: usize) -> Option<Value> {
        self.results.iter().find(|r| r.b == b && r.c == c).map(|r| r.value)
    }
}

/// `a <= b` is not ruled out by the two ranges.
fn may_be_le(a: Value, b: Value) -> bool {
    let (alo, _) = a.range();
    let (_, bhi) = b.range();
    match (alo, bhi) {
        (None, None) => true,
        (None, Some(_)) => false,
        (Some(_), None) => true,
        (Some(x), Some(y)) => x <= y,
    }
}

/// `SC_G^b(K)` over `c = 0..=c_max`.
pub fn sc_g_b(k: &OrderedGComplex, b: usize, c_max: usize, budget: Budget) -> Result<ScSweep> {
    sc_g(k, b..=b, c_max, budget)
}

/// `SC_G(K)` over the grid `bs × 0..=c_max`.
pub fn sc_g(
    k: &OrderedGComplex,
    bs: std::ops::RangeInclusive<usize>,
    c_max: usize,
    budget: Budget,
) -> Result<ScSweep> {
    let mut results = Vec::new();
    for b in bs {
        let setup = projection_composites(k, b, Approximation::Last)?;
        for c in 0..=c_max {
            results.push(sc_g_bc_on(&setup, c, budget)?);
        }
    }
    let lower_bound = simplicial::realization_tc_lower_bound(k)?;
    let mut best = Value::Infinite;
    let mut best_at = None;
    for r in &results {
        let better = match (r.value.range().1, best.range().1) {
            (Some(u), Some(v)) => u < v,
            (Some(_), None) => true,
            _ => false,
        };
        if better || best_at.is_none() && r.value == Value::Infinite {
            best = r.value;
            best_at = Some((r.b, r.c));
        }
    }
    if let Value::Interval { upper: Some(u), .. } = best {
        best = Value::Interval {
            lower: lower_bound.unwrap_or(1),
            upper: Some(u),
        };
    }
    let get = |b: usize, c: usize| results.iter().find(|r| r.b == b && r.c == c).map(|r| r.value);
    let monotone_in_c = results.iter().all(|r| match get(r.b, r.c + 1) {
        Some(next) => may_be_le(next, r.value),
        None => true,
    });
    // SC^{b,c} >= SC^{b+1,c+2}
    let monotone_in_b = results.iter().all(|r| match get(r.b + 1, r.c + 2) {
        Some(next) => may_be_le(next, r.value),
        None => true,
    });
    Ok(ScSweep {
        results,
        best,
        best_at,
        lower_bound,
        monotone_in_c,
        monotone_in_b,
    })
}

/// Checks a proposed cover of `sd^b(K ⊗ K)` using only simplicial
/// predicates: every set spans an invariant subcomplex, the subcomplexes
/// contain every simplex, and each chain joins the two composites with
/// 1-contiguous equivariant maps in at most `c` steps.
pub fn verify_sc_cover(setup: &ScSetup, cert: &ScCertificate) -> Result<()> {
    let d = &setup.domain;
    let fail = |m: String| Err(Error::MalformedCover(m));
    if cert.b != setup.b {
        return fail(format!("certificate is for b = {}, not {}", cert.b, setup.b));
    }
    let mut covered = vec![false; d.complex.simplex_count()];
    for (i, set) in cert.sets.iter().enumerate() {
        if set.simplices.iter().any(|&s| s >= d.complex.simplex_count()) {
            return fail(format!("set {i} names an unknown simplex"));
        }
        let gens: Vec<&[usize]> = set.simplices.iter().map(|&s| d.complex.simplex(s)).collect();
        let in_span = |t: &[usize]| gens.iter().any(|g| t.iter().all(|v| g.contains(v)));
        for g in &gens {
            for h in 0..d.group().order() {
                if !in_span(&d.act_simplex(h, g)) {
                    return fail(format!("set {i} is not invariant"));
                }
            }
        }
        for (j, t) in d.complex.simplices().iter().enumerate() {
            if in_span(t) {
                covered[j] = true;
            }
        }
        let owned: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
        let r = Restriction::new(setup.act(), &owned).map_err(|e| Error::MalformedCover(e.to_string()))?;
        if set.chain.len() > cert.c + 1 {
            return fail(format!("set {i} has a chain longer than {}", cert.c));
        }
        verify_contiguity_chain(&r, &setup.base, &r.restrict(&setup.pi1), &r.restrict(&setup.pi2), &set.chain)
            .map_err(|m| Error::MalformedCover(format!("set {i}: {m}")))?;
    }
    if let Some(j) = covered.iter().position(|&c| !c) {
        return fail(format!("simplex {} is not covered", d.complex.simplex_name(d.complex.simplex(j))));
    }
    Ok(())
}

/// Builds a certificate for user-supplied subcomplexes by searching for
/// each chain, then verifies it.
pub fn certify_sets(setup: &ScSetup, c: usize, sets: &[Vec<usize>], budget: Budget) -> Result<ScCertificate> {
    let mut out = Vec::new();
    for (i, gens) in sets.iter().enumerate() {
        let mut nodes = budget.oracle_nodes;
        let (_, chain) = setup
            .chain_on(gens, c, &mut nodes)
            .map_err(|e| Error::MalformedCover(format!("set {i}: {e}")))?;
        match chain {
            Chain::Found(levels) => out.push(ScSet {
                simplices: gens.clone(),
                chain: levels,
            }),
            Chain::Infeasible => {
                return Err(Error::MalformedCover(format!("set {i} admits no chain of length {c}")))
            }
            Chain::Budget => return Err(Error::BudgetExceeded(format!("chain search for set {i}"))),
        }
    }
    let cert = ScCertificate {
        b: setup.b,
        c,
        sets: out,
    };
    verify_sc_cover(setup, &cert)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GPoset;
    use crate::poset::FinitePoset;
    use crate::simplicial::order_complex;

    #[test]
    fn interval_is_one() {
        let d1 = order_complex(&GPoset::trivial(FinitePoset::chain(2))).unwrap();
        let r = sc_g_bc(&d1, 0, 1, Budget::default()).unwrap();
        assert_eq!(r.value, Value::Finite(1));
        let setup = projection_composites(&d1, 0, Approximation::Last).unwrap();
        verify_sc_cover(&setup, &r.certificate).unwrap();
        let r0 = sc_g_bc(&d1, 0, 0, Budget::default()).unwrap();
        assert!(r0.value.range().0.unwrap_or(usize::MAX) >= 1);
    }
}
