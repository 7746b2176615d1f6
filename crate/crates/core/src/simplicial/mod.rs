//! Simplicial complexes, ordered G-complexes and the passage between
//! complexes and posets (order complex, face poset, subdivision).

pub mod contiguity;

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GPoset, Subgroup, GROUP_ORDER_CAP};
use crate::poset::FinitePoset;
use crate::subdivision;

pub use contiguity::{
    contiguity_chain, contiguity_distance_equivariant, verify_contiguity_chain, Chain,
    ContiguityDistance, Restriction,
};

pub const DEFAULT_SIMPLEX_CAP: usize = 200_000;

/// A finite abstract simplicial complex. Simplices are stored as sorted
/// vertex lists, ordered by dimension and then lexicographically.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    names: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: FxHashMap<Vec<usize>, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// The closure of `generators` under taking nonempty faces, with every
    /// vertex included as a singleton.
    pub fn from_generators(names: Vec<String>, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_generators_capped(names, generators, DEFAULT_SIMPLEX_CAP)
    }

    pub fn from_generators_capped(
        names: Vec<String>,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        let n = names.len();
        let mut seen = FxHashSet::default();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        let mut all: FxHashSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for g in generators {
            let mut s = g.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.iter().any(|&v| v >= n) {
                return Err(Error::InvalidComplex("empty simplex or unknown vertex".into()));
            }
            if s.len() > 24 {
                return Err(Error::InvalidComplex("simplex of dimension above 23".into()));
            }
            if !seen.insert(s.clone()) {
                continue;
            }
            for mask in 1u32..(1u32 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(face);
                if all.len() > cap {
                    return Err(Error::SizeBudgetExceeded {
                        what: "simplices".into(),
                        cap,
                    });
                }
            }
        }
        Ok(Self::from_closed(names, all.into_iter().collect()))
    }

    /// From a family already closed under faces.
    pub(crate) fn from_closed(names: Vec<String>, mut simplices: Vec<Vec<usize>>) -> Self {
        for s in &mut simplices {
            s.sort_unstable();
        }
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self {
            names,
            simplices,
            index,
        }
    }

    pub fn from_named<S: AsRef<str>>(vertices: &[S], simplices: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let pos: FxHashMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let gens = simplices
            .iter()
            .map(|s| {
                s.iter()
                    .map(|v| pos.get(v.as_ref()).copied().ok_or_else(|| Error::UnknownElement(v.as_ref().into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(names, &gens)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.into()))
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplex(&self, i: usize) -> &[usize] {
        &self.simplices[i]
    }

    /// Index of a simplex given in any vertex order.
    pub fn simplex_index(&self, vertices: &[usize]) -> Option<usize> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        self.index.get(&s).copied()
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        self.simplex_index(vertices).is_some()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Indices of the maximal simplices.
    pub fn facets(&self) -> Vec<usize> {
        let mut covered = vec![false; self.simplices.len()];
        for s in &self.simplices {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                covered[self.index[&face]] = true;
            }
        }
        (0..self.simplices.len()).filter(|&i| !covered[i]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Components of the 1-skeleton, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            let (a, b) = (find(&mut parent, s[0]), find(&mut parent, s[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Connected 1-skeleton; the empty complex counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `χ(K)`: simplices ordered by inclusion, named by their vertex lists.
    pub fn face_poset(&self) -> FinitePoset {
        let n = self.simplices.len();
        let down = self
            .simplices
            .iter()
            .map(|s| {
                let mut d = ElemSet::empty(n);
                for mask in 1u32..(1u32 << s.len()) {
                    let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                    d.insert(self.index[&face]);
                }
                d
            })
            .collect();
        let names = self.simplices.iter().map(|s| self.simplex_name(s)).collect();
        FinitePoset::from_down_sets(names, down)
    }

    pub fn simplex_name(&self, s: &[usize]) -> String {
        let parts: Vec<&str> = s.iter().map(|&v| self.name(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Renames vertices through a bijection given as a permutation.
    pub fn relabel(&self, perm: &[usize], names: Vec<String>) -> SimplicialComplex {
        let simplices = self
            .simplices
            .iter()
            .map(|s| s.iter().map(|&v| perm[v]).collect())
            .collect();
        Self::from_closed(names, simplices)
    }

    /// Whether `perm` carries simplices to simplices.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.simplices
            .iter()
            .all(|s| self.contains(&s.iter().map(|&v| perm[v]).collect::<Vec<_>>()))
    }
}

/// A complex whose vertex order totally orders every simplex, with a group
/// acting by monotone simplicial automorphisms. The vertex order and the
/// action live in `vertices`.
#[derive(Clone, Debug)]
pub struct OrderedGComplex {
    pub complex: SimplicialComplex,
    pub vertices: GPoset,
}

impl OrderedGComplex {
    pub fn new(complex: SimplicialComplex, vertices: GPoset) -> Result<Self> {
        if complex.names() != vertices.poset().names() {
            return Err(Error::InvalidComplex("vertex order is over different vertices".into()));
        }
        let p = vertices.poset();
        for s in complex.simplices() {
            for (i, &a) in s.iter().enumerate() {
                if s[i + 1..].iter().any(|&b| !p.comparable(a, b)) {
                    return Err(Error::InvalidComplex(format!(
                        "simplex {} is not totally ordered",
                        complex.simplex_name(s)
                    )));
                }
            }
        }
        for g in 0..vertices.group().order() {
            if !complex.is_automorphism(&vertices.action_table()[g]) {
                return Err(Error::InvalidComplex(format!(
                    "{} is not simplicial",
                    vertices.group().name(g)
                )));
            }
        }
        Ok(Self { complex, vertices })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.vertices.group()
    }

    pub fn act(&self, g: usize, v: usize) -> usize {
        self.vertices.act(g, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn act_simplex(&self, g: usize, s: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = s.iter().map(|&v| self.act(g, v)).collect();
        img.sort_unstable();
        img
    }

    /// Largest vertex of a simplex in the vertex order.
    pub fn last_vertex(&self, s: &[usize]) -> usize {
        let p = self.vertices.poset();
        *s.iter().find(|&&v| s.iter().all(|&w| p.leq(w, v))).unwrap()
    }

    pub fn first_vertex(&self, s: &[usize]) -> usize {
        let p = self.vertices.poset();
        *s.iter().find(|&&v| s.iter().all(|&w| p.leq(v, w))).unwrap()
    }

    /// The face poset with the induced action.
    pub fn face_poset(&self) -> GPoset {
        face_poset_g(&self.complex, self.vertices.group_arc(), self.vertices.action_table())
    }
}

/// `χ(K)` with `g·σ = {g·v : v ∈ σ}`. The action must be simplicial.
pub fn face_poset_g(k: &SimplicialComplex, group: &Arc<FiniteGroup>, act: &[Vec<usize>]) -> GPoset {
    let poset = k.face_poset();
    let table = act
        .iter()
        .map(|p| {
            k.simplices()
                .iter()
                .map(|s| {
                    let img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
                    k.simplex_index(&img).expect("action is simplicial")
                })
                .collect()
        })
        .collect();
    GPoset::new_unchecked(Arc::new(poset), group.clone(), table)
}

/// `𝒦(P)`: the nonempty chains of `P`, ordered and acted on as in `P`.
pub fn order_complex(p: &GPoset) -> Result<OrderedGComplex> {
    order_complex_capped(p, DEFAULT_SIMPLEX_CAP)
}

pub fn order_complex_capped(p: &GPoset, cap: usize) -> Result<OrderedGComplex> {
    let chains = subdivision::chains(p.poset(), cap)?;
    let complex = SimplicialComplex::from_closed(p.poset().names().to_vec(), chains);
    Ok(OrderedGComplex {
        complex,
        vertices: p.clone(),
    })
}

/// Normalizes an unordered G-complex by subdividing once: `sd(K) = 𝒦(χ(K))`
/// is always ordered.
pub fn from_unordered(
    complex: SimplicialComplex,
    gens: &[(String, Vec<usize>)],
) -> Result<OrderedGComplex> {
    let (group, act) = FiniteGroup::generated_by(complex.vertex_count(), gens, GROUP_ORDER_CAP)?;
    for (name, p) in gens {
        if !complex.is_automorphism(p) {
            return Err(Error::InvalidComplex(format!("{name} is not simplicial")));
        }
    }
    order_complex(&face_poset_g(&complex, &Arc::new(group), &act))
}

/// `sd(K) = 𝒦(χ(K))`; its vertices are the simplices of `K` in order.
pub fn sd_complex(k: &OrderedGComplex) -> Result<OrderedGComplex> {
    order_complex(&k.face_poset())
}

/// A vertex assignment between complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialMap {
    pub assignment: Vec<usize>,
}

impl SimplicialMap {
    /// Validates that simplices go to simplices.
    pub fn new(dom: &SimplicialComplex, cod: &SimplicialComplex, assignment: Vec<usize>) -> Result<Self> {
        let m = SimplicialMap { assignment };
        if m.assignment.len() != dom.vertex_count() || m.assignment.iter().any(|&v| v >= cod.vertex_count()) {
            return Err(Error::InvalidComplex("map has the wrong shape".into()));
        }
        if !m.is_simplicial(dom, cod) {
            return Err(Error::InvalidComplex("map is not simplicial".into()));
        }
        Ok(m)
    }

    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        s.iter().map(|&v| self.assignment[v]).collect()
    }

    pub fn is_simplicial(&self, dom: &SimplicialComplex, cod: &SimplicialComplex) -> bool {
        dom.facets().iter().all(|&f| cod.contains(&self.image(dom.simplex(f))))
    }

    pub fn is_equivariant(&self, dom: &GPoset, cod: &GPoset) -> bool {
        (0..dom.group().order()).all(|g| {
            (0..self.assignment.len()).all(|v| self.assignment[dom.act(g, v)] == cod.act(g, self.assignment[v]))
        })
    }

    pub fn compose(&self, after: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            assignment: self.assignment.iter().map(|&v| after.assignment[v]).collect(),
        }
    }
}

/// `φ(σ) ∪ ψ(σ)` is a simplex for every simplex `σ`.
pub fn one_contiguous(dom: &SimplicialComplex, cod: &SimplicialComplex, phi: &SimplicialMap, psi: &SimplicialMap) -> bool {
    dom.facets().iter().all(|&f| {
        let s = dom.simplex(f);
        let mut u = phi.image(s);
        u.extend(psi.image(s));
        cod.contains(&u)
    })
}

/// `τ: sd(K) -> K`, a simplex to its largest vertex. Vertices of `sd(K)` are
/// indexed like the simplices of `K`.
pub fn last_vertex_approximation(k: &OrderedGComplex) -> SimplicialMap {
    SimplicialMap {
        assignment: k.complex.simplices().iter().map(|s| k.last_vertex(s)).collect(),
    }
}

/// The variant sending a simplex to its smallest vertex; also an equivariant
/// approximation of the identity.
pub fn first_vertex_approximation(k: &OrderedGComplex) -> SimplicialMap {
    SimplicialMap {
        assignment: k.complex.simplices().iter().map(|s| k.first_vertex(s)).collect(),
    }
}

/// The staircase triangulation of `K × L`: chains in the product order whose
/// projections are simplices, with the diagonal action.
pub fn staircase_product(k: &OrderedGComplex, l: &OrderedGComplex) -> Result<OrderedGComplex> {
    staircase_product_capped(k, l, DEFAULT_SIMPLEX_CAP)
}

pub fn staircase_product_capped(k: &OrderedGComplex, l: &OrderedGComplex, cap: usize) -> Result<OrderedGComplex> {
    let vertices = k.vertices.product(&l.vertices)?;
    let m = l.vertex_count();
    let p = vertices.poset();
    let proj_ok = |chain: &[usize]| {
        let a: Vec<usize> = chain.iter().map(|&v| v / m).collect();
        let b: Vec<usize> = chain.iter().map(|&v| v % m).collect();
        k.complex.contains(&a) && l.complex.contains(&b)
    };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn grow(
        p: &FinitePoset,
        ok: &dyn Fn(&[usize]) -> bool,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::SizeBudgetExceeded {
                what: "product simplices".into(),
                cap,
            });
        }
        out.push(stack.clone());
        let top = *stack.last().unwrap();
        for y in p.up_closure(top).iter() {
            if y == top {
                continue;
            }
            stack.push(y);
            if ok(stack) {
                grow(p, ok, stack, out, cap)?;
            }
            stack.pop();
        }
        Ok(())
    }
    for v in 0..p.len() {
        stack.push(v);
        grow(p, &proj_ok, &mut stack, &mut out, cap)?;
        stack.pop();
    }
    let complex = SimplicialComplex::from_closed(p.names().to_vec(), out);
    Ok(OrderedGComplex { complex, vertices })
}

/// The product projections as vertex maps `K ⊗ L -> K` and `K ⊗ L -> L`.
pub fn product_projections(k: &OrderedGComplex, l: &OrderedGComplex) -> (SimplicialMap, SimplicialMap) {
    let m = l.vertex_count();
    let n = k.vertex_count() * m;
    (
        SimplicialMap {
            assignment: (0..n).map(|v| v / m).collect(),
        },
        SimplicialMap {
            assignment: (0..n).map(|v| v % m).collect(),
        },
    )
}

/// `K^H`: the simplices all of whose vertices are fixed by `H`, on the fixed
/// vertices. Returns the fixed vertices too.
pub fn fixed_subcomplex(k: &OrderedGComplex, h: &Subgroup) -> (SimplicialComplex, Vec<usize>) {
    let fixed = k.vertices.fixed_set(h);
    let verts = fixed.to_vec();
    let mut local = vec![usize::MAX; k.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let simplices = k
        .complex
        .simplices()
        .iter()
        .filter(|s| s.iter().all(|&v| fixed.contains(v)))
        .map(|s| s.iter().map(|&v| local[v]).collect())
        .collect();
    let names = verts.iter().map(|&v| k.complex.name(v).to_string()).collect();
    (SimplicialComplex::from_closed(names, simplices), verts)
}

/// Every fixed subcomplex has a connected 1-skeleton (empty counts as
/// connected, as for posets).
pub fn g_connected_complex(k: &OrderedGComplex) -> Result<bool> {
    for h in k.vertices.all_subgroups()? {
        if !fixed_subcomplex(k, &h).0.is_connected() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `LS_G(|𝒦(P)|) <= #(P/G)` from the invariant open stars of vertex orbits.
pub fn realization_ls_upper_bound(p: &GPoset) -> usize {
    p.orbit_count()
}

/// `TC_G(|𝒦(P)|) <= #(G)·#(P/G)²` when `P` is G-connected; `None` when the
/// hypothesis fails and no bound is claimed.
pub fn realization_tc_upper_bound(p: &GPoset) -> Option<usize> {
    p.is_g_connected().then(|| p.group().order() * p.orbit_count() * p.orbit_count())
}

/// A lower bound for `TC_G(|K|)`: infinite when some fixed subcomplex is
/// disconnected, at least 2 when some nonempty fixed subcomplex has Euler
/// characteristic other than 1 (so is not contractible), and 1 otherwise.
pub fn realization_tc_lower_bound(k: &OrderedGComplex) -> Result<Option<usize>> {
    let mut bound = 1;
    for h in k.vertices.all_subgroups()? {
        let (f, _) = fixed_subcomplex(k, &h);
        if !f.is_connected() {
            return Ok(None);
        }
        if f.vertex_count() > 0 && f.euler_characteristic() != 1 {
            bound = 2;
        }
    }
    Ok(Some(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;

    fn simplex(n: usize) -> OrderedGComplex {
        order_complex(&GPoset::trivial(FinitePoset::chain(n + 1))).unwrap()
    }

    #[test]
    fn simplex_counts() {
        let d2 = simplex(2);
        assert_eq!(d2.complex.simplex_count(), 7);
        assert_eq!(d2.complex.face_poset().len(), 7);
        assert_eq!(d2.complex.euler_characteristic(), 1);
        let d1 = simplex(1);
        let sd = sd_complex(&d1).unwrap();
        assert_eq!(sd.vertex_count(), 3);
        assert_eq!(sd.complex.simplices().iter().filter(|s| s.len() == 2).count(), 2);
        let tau = last_vertex_approximation(&d1);
        assert_eq!(tau.assignment, vec![0, 1, 1]);
    }

    #[test]
    fn staircase_square() {
        let d1 = simplex(1);
        let sq = staircase_product(&d1, &d1).unwrap();
        assert_eq!(sq.vertex_count(), 4);
        assert_eq!(sq.complex.simplices().iter().filter(|s| s.len() == 3).count(), 2);
        assert_eq!(sq.complex.facets().len(), 2);
    }

    #[test]
    fn pseudo_circle_complex() {
        let p = FinitePoset::from_cover_relations(
            &["a", "b", "c", "d"],
            &[("c", "a"), ("d", "a"), ("c", "b"), ("d", "b")],
        )
        .unwrap();
        let s = GPoset::trivial(p);
        let k = order_complex(&s).unwrap();
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.complex.simplices().iter().filter(|s| s.len() == 2).count(), 4);
        assert_eq!(k.complex.dimension(), Some(1));
        assert_eq!(k.complex.euler_characteristic(), 0);
    }
}
