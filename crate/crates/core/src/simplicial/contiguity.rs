//! Equivariant contiguity chains between simplicial maps, found by a
//! constraint search over the intermediate maps.
//!
//! Intermediate maps are determined by their values on orbit
//! representatives of the domain. Consecutive maps must be 1-contiguous,
//! which for every pair of vertices in a common simplex means their images
//! are equal or adjacent; the full simplex condition is checked as soon as
//! all its values are known.

use rustc_hash::FxHashSet;

use super::{OrderedGComplex, SimplicialComplex};
use crate::error::{Error, Result};

/// A subcomplex of a domain with a group action, given by its maximal
/// simplices, restricted to its own vertices.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// Domain vertices, sorted; maps are listed over these.
    pub vertices: Vec<usize>,
    /// Simplices in local vertex indices.
    pub facets: Vec<Vec<usize>>,
    /// `act[g][u]` on local vertices.
    pub act: Vec<Vec<usize>>,
}

impl Restriction {
    /// `generators` must span a subcomplex closed under the action.
    pub fn new(act: &[Vec<usize>], generators: &[Vec<usize>]) -> Result<Self> {
        let mut verts: Vec<usize> = generators.iter().flatten().copied().collect();
        verts.sort_unstable();
        verts.dedup();
        let n = act.first().map_or(0, |p| p.len());
        let mut local = vec![usize::MAX; n];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut table = Vec::with_capacity(act.len());
        for p in act {
            let mut row = Vec::with_capacity(verts.len());
            for &v in &verts {
                let w = local[p[v]];
                if w == usize::MAX {
                    return Err(Error::NotInvariant);
                }
                row.push(w);
            }
            table.push(row);
        }
        let facets = generators
            .iter()
            .map(|s| s.iter().map(|&v| local[v]).collect())
            .collect();
        Ok(Self {
            vertices: verts,
            facets,
            act: table,
        })
    }

    /// The whole complex.
    pub fn whole(k: &SimplicialComplex, act: &[Vec<usize>]) -> Self {
        let gens: Vec<Vec<usize>> = k.facets().iter().map(|&f| k.simplex(f).to_vec()).collect();
        // isolated vertices are facets too, so every vertex is present
        Self::new(act, &gens).expect("whole complex is invariant")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lists a map given on all domain vertices over this subcomplex.
    pub fn restrict(&self, f: &[usize]) -> Vec<usize> {
        self.vertices.iter().map(|&v| f[v]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chain {
    /// Maps `φ_0, ..., φ_c` listed over the restriction's vertices.
    Found(Vec<Vec<usize>>),
    Infeasible,
    Budget,
}

/// Target data as bitmasks over at most 64 vertices.
struct Target {
    /// `near[a]`: vertices equal or adjacent to `a`.
    near: Vec<u64>,
    simplices: FxHashSet<u64>,
    act: Vec<Vec<usize>>,
    n: usize,
}

impl Target {
    fn new(k: &OrderedGComplex) -> Result<Self> {
        let n = k.vertex_count();
        if n > 64 {
            return Err(Error::SizeBudgetExceeded {
                what: "target vertices for contiguity".into(),
                cap: 64,
            });
        }
        let mut near: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
        let mut simplices = FxHashSet::default();
        for s in k.complex.simplices() {
            if s.len() == 2 {
                near[s[0]] |= 1 << s[1];
                near[s[1]] |= 1 << s[0];
            }
            simplices.insert(s.iter().fold(0u64, |m, &v| m | 1 << v));
        }
        Ok(Self {
            near,
            simplices,
            act: k.vertices.action_table().to_vec(),
            n,
        })
    }

    fn permute(&self, g: usize, mask: u64) -> u64 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.act[g][b];
        }
        out
    }
}

enum Slot {
    Fixed(usize),
    /// Value `act[g][var]`.
    Var(usize, usize),
}

struct Problem<'a> {
    t: &'a Target,
    domains: Vec<u64>,
    /// `arcs[y]`: `(x, k)` meaning every value `a` of `x` needs some `b` of `y`
    /// with `a ~ k·b`.
    arcs: Vec<Vec<(usize, usize)>>,
    /// Simplex constraints touching each variable.
    watch: Vec<Vec<usize>>,
    checks: Vec<Vec<Slot>>,
}

impl Problem<'_> {
    fn revise(&self, d: &mut [u64], x: usize, y: usize, k: usize) -> bool {
        let pm = self.t.permute(k, d[y]);
        let mut keep = 0u64;
        let mut m = d[x];
        while m != 0 {
            let a = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.t.near[a] & pm != 0 {
                keep |= 1 << a;
            }
        }
        let changed = keep != d[x];
        d[x] = keep;
        changed
    }

    fn propagate(&self, d: &mut [u64], start: &[usize]) -> bool {
        let mut queue: Vec<usize> = start.to_vec();
        let mut queued = vec![false; d.len()];
        for &v in start {
            queued[v] = true;
        }
        while let Some(y) = queue.pop() {
            queued[y] = false;
            for &(x, k) in &self.arcs[y] {
                if self.revise(d, x, y, k) {
                    if d[x] == 0 {
                        return false;
                    }
                    if !queued[x] {
                        queued[x] = true;
                        queue.push(x);
                    }
                }
            }
        }
        true
    }

    fn check_ok(&self, d: &[u64], c: usize) -> bool {
        let mut mask = 0u64;
        for s in &self.checks[c] {
            match *s {
                Slot::Fixed(a) => mask |= 1 << a,
                Slot::Var(x, g) => {
                    if d[x].count_ones() != 1 {
                        return true;
                    }
                    mask |= 1 << self.t.act[g][d[x].trailing_zeros() as usize];
                }
            }
        }
        self.t.simplices.contains(&mask)
    }

    fn search(&self, d: &mut Vec<u64>, budget: &mut u64) -> Option<bool> {
        let Some(x) = (0..d.len())
            .filter(|&x| d[x].count_ones() > 1)
            .min_by_key(|&x| (d[x].count_ones(), x))
        else {
            // propagation may have fixed variables without their checks
            return Some((0..self.checks.len()).all(|c| self.check_ok(d, c)));
        };
        let mut m = d[x];
        while m != 0 {
            let a = m.trailing_zeros() as usize;
            m &= m - 1;
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let mut e = d.clone();
            e[x] = 1 << a;
            if !self.watch[x].iter().all(|&c| self.check_ok(&e, c)) {
                continue;
            }
            if !self.propagate(&mut e, &[x]) {
                continue;
            }
            match self.search(&mut e, budget) {
                Some(true) => {
                    *d = e;
                    return Some(true);
                }
                Some(false) => {}
                None => return None,
            }
        }
        Some(false)
    }
}

/// Searches for equivariant simplicial maps `φ_0 = start, ..., φ_c = end`
/// on the restriction, consecutive ones 1-contiguous. `start` and `end` are
/// listed over the restriction's vertices and assumed equivariant.
pub fn contiguity_chain(
    r: &Restriction,
    target: &OrderedGComplex,
    start: &[usize],
    end: &[usize],
    c: usize,
    budget: &mut u64,
) -> Result<Chain> {
    let t = Target::new(target)?;
    let nv = r.len();
    let order = r.act.len();
    // orbit representative and transporter for each local vertex
    let mut rep_of = vec![usize::MAX; nv];
    let mut via = vec![0usize; nv];
    let mut reps = Vec::new();
    for u in 0..nv {
        if rep_of[u] != usize::MAX {
            continue;
        }
        let i = reps.len();
        reps.push(u);
        for g in 0..order {
            let w = r.act[g][u];
            if rep_of[w] == usize::MAX {
                rep_of[w] = i;
                via[w] = g;
            }
        }
    }
    let nr = reps.len();
    let group = target.group();
    let inv: Vec<usize> = (0..order).map(|g| group.inv(g)).collect();

    let fixed_by_stab = |u: usize| -> u64 {
        let mut m = if t.n == 64 { u64::MAX } else { (1u64 << t.n) - 1 };
        for g in 0..order {
            if r.act[g][u] == u {
                let mut keep = 0;
                for a in 0..t.n {
                    if t.act[g][a] == a {
                        keep |= 1 << a;
                    }
                }
                m &= keep;
            }
        }
        m
    };

    if c == 0 {
        return Ok(if start == end {
            Chain::Found(vec![start.to_vec()])
        } else {
            Chain::Infeasible
        });
    }

    let var = |level: usize, i: usize| (level - 1) * nr + i;
    let nvars = (c - 1) * nr;
    let mut domains = vec![0u64; nvars];
    for level in 1..c {
        for (i, &u) in reps.iter().enumerate() {
            domains[var(level, i)] = fixed_by_stab(u);
        }
    }

    // pairs of local vertices sharing a simplex, both orders, with u == w
    let mut pairs = FxHashSet::default();
    for f in &r.facets {
        for &u in f {
            for &w in f {
                pairs.insert((u, w));
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    pairs.sort_unstable();

    let slot = |level: usize, u: usize| -> Slot {
        if level == 0 {
            Slot::Fixed(start[u])
        } else if level == c {
            Slot::Fixed(end[u])
        } else {
            Slot::Var(var(level, rep_of[u]), via[u])
        }
    };

    let mut arcs = vec![Vec::new(); nvars];
    let mut arc_set = FxHashSet::default();
    let mut add_binary = |x: usize, gx: usize, y: usize, gy: usize, arcs: &mut Vec<Vec<(usize, usize)>>| {
        // gx·a ~ gy·b  <=>  a ~ (gx⁻¹ gy)·b
        let k = group.mul(inv[gx], gy);
        if arc_set.insert((x, y, k)) {
            arcs[y].push((x, k));
        }
        let k2 = group.mul(inv[gy], gx);
        if arc_set.insert((y, x, k2)) {
            arcs[x].push((y, k2));
        }
    };
    for level in 0..c {
        for &(u, w) in &pairs {
            // same level (for variable levels), and across to the next level
            let same = [(level, u, level, w), (level, u, level + 1, w)];
            for (l1, a, l2, b) in same {
                if l1 == l2 && (l1 == 0 || u == w) {
                    continue;
                }
                match (slot(l1, a), slot(l2, b)) {
                    (Slot::Fixed(p), Slot::Fixed(q)) => {
                        if t.near[p] >> q & 1 == 0 {
                            return Ok(Chain::Infeasible);
                        }
                    }
                    (Slot::Fixed(p), Slot::Var(y, gy)) | (Slot::Var(y, gy), Slot::Fixed(p)) => {
                        // gy·b ∈ near[p]  <=>  b ∈ gy⁻¹·near[p]
                        domains[y] &= t.permute(inv[gy], t.near[p]);
                    }
                    (Slot::Var(x, gx), Slot::Var(y, gy)) => {
                        if x == y && gx == gy {
                            continue;
                        }
                        add_binary(x, gx, y, gy, &mut arcs);
                    }
                }
            }
        }
    }
    if domains.iter().any(|&d| d == 0) {
        return Ok(Chain::Infeasible);
    }

    let mut checks = Vec::new();
    let mut watch = vec![Vec::new(); nvars];
    for level in 0..c {
        for f in &r.facets {
            let slots: Vec<Slot> = f
                .iter()
                .flat_map(|&u| [slot(level, u), slot(level + 1, u)])
                .collect();
            let id = checks.len();
            let mut fixed_mask = 0u64;
            let mut any_var = false;
            for s in &slots {
                match *s {
                    Slot::Fixed(a) => fixed_mask |= 1 << a,
                    Slot::Var(x, _) => {
                        any_var = true;
                        if !watch[x].contains(&id) {
                            watch[x].push(id);
                        }
                    }
                }
            }
            if !any_var && !t.simplices.contains(&fixed_mask) {
                return Ok(Chain::Infeasible);
            }
            checks.push(slots);
        }
    }

    let p = Problem {
        t: &t,
        domains,
        arcs,
        watch,
        checks,
    };
    let mut d = p.domains.clone();
    let all: Vec<usize> = (0..nvars).collect();
    if !p.propagate(&mut d, &all) {
        return Ok(Chain::Infeasible);
    }
    // singletons after propagation still need their simplex checks
    if !(0..p.checks.len()).all(|c| p.check_ok(&d, c)) {
        return Ok(Chain::Infeasible);
    }
    match p.search(&mut d, budget) {
        None => Ok(Chain::Budget),
        Some(false) => Ok(Chain::Infeasible),
        Some(true) => {
            let mut levels = vec![start.to_vec()];
            for level in 1..c {
                levels.push(
                    (0..nv)
                        .map(|u| {
                            let a = d[var(level, rep_of[u])].trailing_zeros() as usize;
                            t.act[via[u]][a]
                        })
                        .collect(),
                );
            }
            levels.push(end.to_vec());
            Ok(Chain::Found(levels))
        }
    }
}

/// Checks a chain from scratch: endpoints, equivariance of every map, and
/// 1-contiguity of consecutive maps on every listed simplex.
pub fn verify_contiguity_chain(
    r: &Restriction,
    target: &OrderedGComplex,
    start: &[usize],
    end: &[usize],
    levels: &[Vec<usize>],
) -> std::result::Result<(), String> {
    let (Some(first), Some(last)) = (levels.first(), levels.last()) else {
        return Err("empty chain".into());
    };
    if first.as_slice() != start || last.as_slice() != end {
        return Err("chain does not join the two maps".into());
    }
    for (t, f) in levels.iter().enumerate() {
        if f.len() != r.len() || f.iter().any(|&v| v >= target.vertex_count()) {
            return Err(format!("map {t} has the wrong shape"));
        }
        for g in 0..r.act.len() {
            for u in 0..r.len() {
                if f[r.act[g][u]] != target.act(g, f[u]) {
                    return Err(format!("map {t} is not equivariant"));
                }
            }
        }
        for s in &r.facets {
            let img: Vec<usize> = s.iter().map(|&u| f[u]).collect();
            if !target.complex.contains(&img) {
                return Err(format!("map {t} is not simplicial"));
            }
        }
    }
    for (t, w) in levels.windows(2).enumerate() {
        for s in &r.facets {
            let img: Vec<usize> = s.iter().flat_map(|&u| [w[0][u], w[1][u]]).collect();
            if !target.complex.contains(&img) {
                return Err(format!("maps {t} and {} are not 1-contiguous", t + 1));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContiguityDistance {
    /// Shortest chain, with its maps.
    Within(usize, Vec<Vec<usize>>),
    /// No chain exists at all: every length up to the number of equivariant
    /// maps was ruled out.
    Unreachable,
    /// No chain of length at most the given bound.
    NotWithin(usize),
    Budget,
}

/// Shortest equivariant contiguity chain between `phi` and `psi` on the
/// restriction, trying lengths `0..=max_len`.
pub fn contiguity_distance_equivariant(
    r: &Restriction,
    target: &OrderedGComplex,
    phi: &[usize],
    psi: &[usize],
    max_len: usize,
    budget: &mut u64,
) -> Result<ContiguityDistance> {
    // a shortest chain never repeats a map
    let mut orbits = 0u32;
    let mut seen = vec![false; r.len()];
    for u in 0..r.len() {
        if !seen[u] {
            orbits += 1;
            for p in &r.act {
                seen[p[u]] = true;
            }
        }
    }
    let maps = (target.vertex_count() as f64).powi(orbits as i32);
    let exhaustive = maps - 1.0 <= max_len as f64;
    let limit = if exhaustive { (maps - 1.0).max(0.0) as usize } else { max_len };
    for c in 0..=limit {
        match contiguity_chain(r, target, phi, psi, c, budget)? {
            Chain::Found(levels) => return Ok(ContiguityDistance::Within(c, levels)),
            Chain::Budget => return Ok(ContiguityDistance::Budget),
            Chain::Infeasible => {}
        }
    }
    Ok(if exhaustive {
        ContiguityDistance::Unreachable
    } else {
        ContiguityDistance::NotWithin(max_len)
    })
}
