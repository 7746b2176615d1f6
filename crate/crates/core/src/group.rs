//! Finite groups presented by permutations, and their monotone actions on
//! posets.

use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Largest group the engine will materialize.
pub const GROUP_ORDER_CAP: usize = 24;

/// A finite group as a full multiplication table. Element 0 is the identity
/// and `mul[g][h]` is the product `gh`, acting as `(gh)·x = g·(h·x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self {
            names: vec!["e".into()],
            mul: vec![vec![0]],
            inv: vec![0],
        }
    }

    /// Builds a group from an explicit table, validating the group axioms.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup("table is not square over the elements".into()));
        }
        if (0..n).any(|g| mul[0][g] != g || mul[g][0] != g) {
            return Err(Error::InvalidGroup("element 0 is not the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup("multiplication is not associative".into()));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mul[g][h] == 0 && mul[h][g] == 0) {
                Some(h) => inv[g] = h,
                None => return Err(Error::InvalidGroup(format!("{} has no inverse", names[g]))),
            }
        }
        Ok(Self { names, mul, inv })
    }

    /// Closes a set of permutations of `0..degree` under composition. Returns
    /// the group together with the permutation realizing each element.
    pub fn generated_by(
        degree: usize,
        gens: &[(String, Vec<usize>)],
        cap: usize,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id.clone()];
        let mut names = vec!["e".to_string()];
        let mut seen: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
        seen.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gname, gp) in gens {
                // left-multiply: (gen ∘ perm_i)
                let p: Vec<usize> = perms[i].iter().map(|&x| gp[x]).collect();
                if seen.contains_key(&p) {
                    continue;
                }
                if perms.len() >= cap {
                    return Err(Error::ClosureBudgetExceeded { cap });
                }
                let name = if i == 0 {
                    gname.clone()
                } else {
                    format!("{gname}*{}", names[i])
                };
                seen.insert(p.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(p);
                names.push(name);
            }
        }
        let n = perms.len();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        let p: Vec<usize> = perms[h].iter().map(|&x| perms[g][x]).collect();
                        seen[&p]
                    })
                    .collect()
            })
            .collect();
        let inv = (0..n)
            .map(|g| (0..n).find(|&h| mul[g][h] == 0).unwrap())
            .collect();
        Ok((Self { names, mul, inv }, perms))
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: ElemSet::full(self.order()),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: ElemSet::from_indices(self.order(), [0]),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut members = ElemSet::from_indices(self.order(), [0]);
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let b = self.mul(g, a);
                if members.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        Subgroup { members }
    }

    /// Every subgroup, smallest first; ties broken by member encoding.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order() > cap {
            return Err(Error::BudgetExceeded(format!(
                "group of order {} exceeds subgroup enumeration cap {cap}",
                self.order()
            )));
        }
        let cyclic: Vec<Subgroup> = (0..self.order()).map(|g| self.closure([g])).collect();
        let mut found: Vec<Subgroup> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for c in &cyclic {
            if seen.insert(c.members.clone()) {
                found.push(c.clone());
            }
        }
        // Every subgroup is a join of cyclic ones.
        let mut i = 0;
        while i < found.len() {
            for c in &cyclic {
                let joined = self.closure(found[i].members.union(&c.members).iter());
                if seen.insert(joined.members.clone()) {
                    found.push(joined);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| {
            (a.order(), a.members.to_vec()).cmp(&(b.order(), b.members.to_vec()))
        });
        Ok(found)
    }
}

/// A subgroup, as a member set of its ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: ElemSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, group: &FiniteGroup) -> bool {
        self.members.capacity() == group.order()
            && self.members.contains(0)
            && self.members.iter().all(|g| {
                self.members.contains(group.inv(g))
                    && self.members.iter().all(|h| self.members.contains(group.mul(g, h)))
            })
    }
}

/// A poset with a group acting by order automorphisms.
#[derive(Clone, Debug)]
pub struct GPoset {
    poset: Arc<FinitePoset>,
    group: Arc<FiniteGroup>,
    act: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl GPoset {
    /// Validates `act` as an action of `group` by order automorphisms.
    pub fn new(poset: FinitePoset, group: Arc<FiniteGroup>, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = poset.len();
        if act.len() != group.order() {
            return Err(Error::InvalidGroup("one permutation per group element required".into()));
        }
        for (g, p) in act.iter().enumerate() {
            let mut hit = vec![false; n];
            if p.len() != n {
                return Err(Error::NotBijective(format!("{} is not total", group.name(g))));
            }
            for &v in p {
                if v >= n || std::mem::replace(&mut hit[v], true) {
                    return Err(Error::NotBijective(group.name(g).to_string()));
                }
            }
            if !poset.is_monotone_into(&poset, p) {
                return Err(Error::NotMonotone(group.name(g).to_string()));
            }
        }
        if act[0].iter().enumerate().any(|(x, &v)| x != v) {
            return Err(Error::InvalidGroup("identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..n).any(|x| act[gh][x] != act[g][act[h][x]]) {
                    return Err(Error::InvalidGroup("action is not compatible with the table".into()));
                }
            }
        }
        Ok(Self::new_unchecked(Arc::new(poset), group, act))
    }

    pub(crate) fn new_unchecked(
        poset: Arc<FinitePoset>,
        group: Arc<FiniteGroup>,
        act: Vec<Vec<usize>>,
    ) -> Self {
        let n = poset.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut o: Vec<usize> = act.iter().map(|p| p[x]).collect();
            o.sort_unstable();
            o.dedup();
            for &y in &o {
                orbit_of[y] = orbits.len();
            }
            orbits.push(o);
        }
        Self {
            poset,
            group,
            act,
            orbit_of,
            orbits,
        }
    }

    /// The poset with the trivial group acting.
    pub fn trivial(poset: FinitePoset) -> Self {
        let n = poset.len();
        Self::new_unchecked(
            Arc::new(poset),
            Arc::new(FiniteGroup::trivial()),
            vec![(0..n).collect()],
        )
    }

    /// The group generated by named permutations of the elements, given as
    /// image lists in element order.
    pub fn from_generator_perms(poset: FinitePoset, gens: &[(String, Vec<usize>)]) -> Result<Self> {
        let n = poset.len();
        for (name, p) in gens {
            let mut hit = vec![false; n];
            if p.len() != n || p.iter().any(|&v| v >= n || std::mem::replace(&mut hit[v], true)) {
                return Err(Error::NotBijective(name.clone()));
            }
            if !poset.is_monotone_into(&poset, p) {
                return Err(Error::NotMonotone(format!("generator {name}")));
            }
        }
        let (group, perms) = FiniteGroup::generated_by(n, gens, GROUP_ORDER_CAP)?;
        Ok(Self::new_unchecked(Arc::new(poset), Arc::new(group), perms))
    }

    /// As [`from_generator_perms`](Self::from_generator_perms) with generators
    /// given as name-to-name maps.
    pub fn from_named_generators(
        poset: FinitePoset,
        gens: &[(String, Vec<(String, String)>)],
    ) -> Result<Self> {
        let n = poset.len();
        let mut perms = Vec::new();
        for (name, pairs) in gens {
            let mut p = vec![usize::MAX; n];
            for (a, b) in pairs {
                let ia = poset.index_of(a)?;
                let ib = poset.index_of(b)?;
                if p[ia] != usize::MAX {
                    return Err(Error::NotBijective(format!("{name} maps {a} twice")));
                }
                p[ia] = ib;
            }
            // Unlisted elements are fixed.
            for (x, v) in p.iter_mut().enumerate() {
                if *v == usize::MAX {
                    *v = x;
                }
            }
            perms.push((name.clone(), p));
        }
        Self::from_generator_perms(poset, &perms)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub(crate) fn poset_arc(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    pub fn orbit_id(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// Orbit representative: the smallest index in the orbit.
    pub fn rep(&self, x: usize) -> usize {
        self.orbits[self.orbit_of[x]][0]
    }

    pub fn orbit(&self, x: usize) -> ElemSet {
        ElemSet::from_indices(self.len(), self.orbits[self.orbit_of[x]].iter().copied())
    }

    /// All orbits, ordered by their smallest element.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        Subgroup {
            members: ElemSet::from_indices(
                self.group.order(),
                (0..self.group.order()).filter(|&g| self.act[g][x] == x),
            ),
        }
    }

    /// Some group element carrying `from` to `to`, if they share an orbit.
    pub fn transporter(&self, from: usize, to: usize) -> Option<usize> {
        (0..self.group.order()).find(|&g| self.act[g][from] == to)
    }

    /// Elements fixed by every member of `h`.
    pub fn fixed_set(&self, h: &Subgroup) -> ElemSet {
        ElemSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&x| h.members.iter().all(|g| self.act[g][x] == x)),
        )
    }

    /// The fixed subposet `X^H` with its inherited order.
    pub fn fixed_points(&self, h: &Subgroup) -> FinitePoset {
        self.poset.subposet(&self.fixed_set(h)).0
    }

    /// `G·V`, the smallest invariant superset of `v`.
    pub fn saturate(&self, v: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.len());
        for x in v.iter() {
            for &y in &self.orbits[self.orbit_of[x]] {
                out.insert(y);
            }
        }
        out
    }

    pub fn is_invariant(&self, v: &ElemSet) -> bool {
        v.iter()
            .all(|x| self.orbits[self.orbit_of[x]].iter().all(|&y| v.contains(y)))
    }

    pub fn translate(&self, g: usize, v: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.len(), v.iter().map(|x| self.act[g][x]))
    }

    /// `G·U_x`, the minimal open invariant neighbourhood of `x`.
    pub fn saturated_down_closure(&self, x: usize) -> ElemSet {
        self.saturate(self.poset.down_closure(x))
    }

    /// Whether distinct members of the orbit of `x` are pairwise incomparable.
    pub fn orbit_subspace_is_discrete(&self, x: usize) -> bool {
        let o = &self.orbits[self.orbit_of[x]];
        o.iter()
            .all(|&a| o.iter().all(|&b| a == b || !self.poset.comparable(a, b)))
    }

    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.group.all_subgroups(GROUP_ORDER_CAP)
    }

    /// Whether `X^H` is path-connected for every subgroup `H`. Empty fixed
    /// sets count as connected.
    pub fn is_g_connected(&self) -> bool {
        self.g_connectivity().connected
    }

    pub fn g_connectivity(&self) -> GConnectivity {
        let subgroups = self
            .all_subgroups()
            .expect("group order is capped at construction");
        let mut connected = true;
        let mut empty_fixed_sets = 0;
        let mut failing = None;
        for h in &subgroups {
            let fixed = self.fixed_points(h);
            if fixed.is_empty() {
                empty_fixed_sets += 1;
            }
            if !fixed.is_path_connected() {
                connected = false;
                if failing.is_none() {
                    failing = Some(h.clone());
                }
            }
        }
        GConnectivity {
            connected,
            subgroups_checked: subgroups.len(),
            empty_fixed_sets,
            failing_subgroup: failing,
        }
    }

    pub fn same_group(&self, other: &GPoset) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    /// `X × Y` with the diagonal action; both factors must carry the same group.
    pub fn product(&self, other: &GPoset) -> Result<GPoset> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch("factors carry different groups".into()));
        }
        let m = other.len();
        let p = self.poset.product(&other.poset);
        let act = (0..self.group.order())
            .map(|g| {
                (0..p.len())
                    .map(|z| self.act[g][z / m] * m + other.act[g][z % m])
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(Arc::new(p), self.group.clone(), act))
    }

    /// `X × X` with `g·(x, y) = (g·x, g·y)`.
    pub fn diagonal(&self) -> GPoset {
        self.product(self).expect("same group")
    }

    /// The fixed subposet as a G-poset with the trivial group.
    pub fn forget_group(&self) -> GPoset {
        GPoset::trivial((*self.poset).clone())
    }

    /// Restricts the action to a subgroup, renumbering its elements.
    pub fn restrict_group(&self, h: &Subgroup) -> GPoset {
        let members = h.members.to_vec();
        let pos: FxHashMap<usize, usize> = members.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let names = members.iter().map(|&g| self.group.name(g).to_string()).collect();
        let mul = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[&self.group.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_table(names, mul).expect("subgroup table");
        let act = members.iter().map(|&g| self.act[g].clone()).collect();
        Self::new_unchecked(self.poset.clone(), Arc::new(group), act)
    }

    /// The induced sub-G-poset on an invariant subset.
    pub fn invariant_subspace(&self, s: &ElemSet) -> Result<(GPoset, Vec<usize>)> {
        if !self.is_invariant(s) {
            return Err(Error::NotInvariant);
        }
        let (p, keep) = self.poset.subposet(s);
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            pos[x] = i;
        }
        let act = self
            .act
            .iter()
            .map(|perm| keep.iter().map(|&x| pos[perm[x]]).collect())
            .collect();
        Ok((Self::new_unchecked(Arc::new(p), self.group.clone(), act), keep))
    }
}

/// Outcome of the G-connectedness test, with the empty-fixed-set convention
/// made visible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GConnectivity {
    pub connected: bool,
    pub subgroups_checked: usize,
    pub empty_fixed_sets: usize,
    pub failing_subgroup: Option<Subgroup>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma1() -> FinitePoset {
        FinitePoset::from_cover_relations(
            &["a", "b", "c", "d"],
            &[("c", "a"), ("d", "a"), ("c", "b"), ("d", "b")],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_four_has_three_subgroups() {
        let p = FinitePoset::antichain(4);
        let x = GPoset::from_generator_perms(p, &[("r".into(), vec![1, 2, 3, 0])]).unwrap();
        assert_eq!(x.group().order(), 4);
        assert_eq!(x.all_subgroups().unwrap().len(), 3);
        for h in x.all_subgroups().unwrap() {
            assert!(h.is_subgroup_of(x.group()));
        }
    }

    #[test]
    fn swap_on_pseudo_circle() {
        let x = GPoset::from_named_generators(
            sigma1(),
            &[(
                "s".into(),
                vec![
                    ("a".into(), "b".into()),
                    ("b".into(), "a".into()),
                    ("c".into(), "d".into()),
                    ("d".into(), "c".into()),
                ],
            )],
        )
        .unwrap();
        assert_eq!(x.group().order(), 2);
        assert_eq!(x.orbits(), &[vec![0, 1], vec![2, 3]]);
        assert!(x.fixed_points(&x.group().whole()).is_empty());
        let c = x.g_connectivity();
        assert!(c.connected);
        assert_eq!(c.empty_fixed_sets, 1);
    }

    #[test]
    fn non_monotone_generator_rejected() {
        let p = FinitePoset::chain(2);
        let e = GPoset::from_generator_perms(p, &[("t".into(), vec![1, 0])]);
        assert!(matches!(e, Err(Error::NotMonotone(_))));
        let p = FinitePoset::antichain(2);
        let e = GPoset::from_generator_perms(p, &[("t".into(), vec![0, 0])]);
        assert!(matches!(e, Err(Error::NotBijective(_))));
    }

    #[test]
    fn closure_cap() {
        let p = FinitePoset::antichain(5);
        let e = GPoset::from_generator_perms(
            p,
            &[
                ("a".into(), vec![1, 2, 3, 4, 0]),
                ("b".into(), vec![1, 0, 2, 3, 4]),
            ],
        );
        assert!(matches!(e, Err(Error::ClosureBudgetExceeded { .. })));
    }
}
