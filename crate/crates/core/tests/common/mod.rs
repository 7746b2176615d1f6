//! Brute-force oracles for small G-posets. They only read the order relation
//! and the action table of the library's spaces and share no search code
//! with it.

#![allow(dead_code)]

use eqtc::GPoset;

/// A finite G-poset as a raw relation matrix and action table.
pub struct Raw {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub act: Vec<Vec<usize>>,
}

impl Raw {
    pub fn of(x: &GPoset) -> Raw {
        let n = x.len();
        Raw {
            n,
            leq: (0..n).map(|a| (0..n).map(|b| x.poset().leq(a, b)).collect()).collect(),
            act: (0..x.group().order()).map(|g| (0..n).map(|a| x.act(g, a)).collect()).collect(),
        }
    }

    /// `X × X` with the componentwise order and the diagonal action; the
    /// pair `(a, b)` is `a * n + b`.
    pub fn square(&self) -> Raw {
        let n = self.n;
        let nn = n * n;
        Raw {
            n: nn,
            leq: (0..nn)
                .map(|v| (0..nn).map(|w| self.leq[v / n][w / n] && self.leq[v % n][w % n]).collect())
                .collect(),
            act: self
                .act
                .iter()
                .map(|g| (0..nn).map(|v| g[v / n] * n + g[v % n]).collect())
                .collect(),
        }
    }

    fn is_downset(&self, s: &[bool]) -> bool {
        (0..self.n).all(|b| !s[b] || (0..self.n).all(|a| !self.leq[a][b] || s[a]))
    }

    fn is_invariant(&self, s: &[bool]) -> bool {
        self.act.iter().all(|g| (0..self.n).all(|a| !s[a] || s[g[a]]))
    }

    fn orbit_of(&self, a: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.act.iter().map(|g| g[a]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    fn maximal(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| b == a || !self.leq[a][b]))
            .collect()
    }
}

/// Every function `dom -> 0..n`, as a vector indexed like `dom`.
fn all_functions(k: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if k == 0 { 1 } else { n.pow(k as u32) };
    (0..total).map(move |mut code| {
        (0..k)
            .map(|_| {
                let d = code % n;
                code /= n;
                d
            })
            .collect()
    })
}

fn find(parent: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = a;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Every monotone equivariant map from the invariant subset `u` of `a` into
/// `x`, by backtracking over `u` with all constraints checked against the
/// values placed so far.
pub fn equivariant_maps(a: &Raw, u: &[usize], x: &Raw) -> Vec<Vec<usize>> {
    let pos = |e: usize| u.iter().position(|&b| b == e).unwrap();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; u.len()];
    fn place(a: &Raw, u: &[usize], x: &Raw, i: usize, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, pos: &dyn Fn(usize) -> usize) {
        if i == u.len() {
            out.push(f.clone());
            return;
        }
        for v in 0..x.n {
            f[i] = v;
            let ok = (0..=i).all(|j| {
                (!a.leq[u[j]][u[i]] || x.leq[f[j]][v]) && (!a.leq[u[i]][u[j]] || x.leq[v][f[j]])
            }) && (0..a.act.len()).all(|g| {
                (0..=i).all(|j| {
                    let k = pos(a.act[g][u[j]]);
                    k > i || f[k] == x.act[g][f[j]]
                })
            });
            if ok {
                place(a, u, x, i + 1, f, out, pos);
            }
        }
        f[i] = usize::MAX;
    }
    place(a, u, x, 0, &mut f, &mut out, &pos);
    out
}

/// Whether the invariant downset `u` is G-categorical: every monotone
/// equivariant map `u -> X` is listed, comparable maps are joined, and the
/// component of the inclusion must hold a map into a single orbit.
pub fn categorical(x: &Raw, u: &[usize]) -> bool {
    if u.is_empty() {
        return true;
    }
    let maps = equivariant_maps(x, u, x);
    let mut parent: Vec<usize> = (0..maps.len()).collect();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let le = (0..u.len()).all(|t| x.leq[maps[i][t]][maps[j][t]]);
            let ge = (0..u.len()).all(|t| x.leq[maps[j][t]][maps[i][t]]);
            if le || ge {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let inclusion = maps.iter().position(|f| f.as_slice() == u).expect("inclusion is a map");
    let root = find(&mut parent, inclusion);
    (0..maps.len()).any(|i| {
        find(&mut parent, i) == root && {
            let orbit = x.orbit_of(maps[i][0]);
            maps[i].iter().all(|v| orbit.contains(v))
        }
    })
}

/// Smallest number of sets from `good` (bitmasks) whose union is `all`.
fn min_cover(good: &[u64], all: u64) -> Option<usize> {
    let mut seen = std::collections::HashSet::from([0u64]);
    let mut frontier = vec![0u64];
    let mut k = 0;
    loop {
        if seen.contains(&all) {
            return Some(k);
        }
        let mut next = Vec::new();
        for &c in &frontier {
            for &g in good {
                if seen.insert(c | g) {
                    next.push(c | g);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
        k += 1;
    }
}

/// `LS_G(X)` by trying every invariant downset; `None` is infinity.
pub fn ls_oracle(x: &Raw) -> Option<usize> {
    assert!(x.n <= 20);
    let mut good = Vec::new();
    for mask in 1u64..(1 << x.n) {
        let s: Vec<bool> = (0..x.n).map(|i| mask >> i & 1 == 1).collect();
        if !x.is_downset(&s) || !x.is_invariant(&s) {
            continue;
        }
        let u: Vec<usize> = (0..x.n).filter(|&i| s[i]).collect();
        if categorical(x, &u) {
            good.push(mask);
        }
    }
    min_cover(&good, (1u64 << x.n) - 1)
}

/// Every monotone map `J_m -> X`, with `J_m = 0 < 1 > 2 < 3 ...`.
pub fn paths(x: &Raw, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn grow(x: &Raw, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in 0..x.n {
            let ok = match cur.last() {
                None => true,
                Some(&p) if cur.len() % 2 == 1 => x.leq[p][v],
                Some(&p) => x.leq[v][p],
            };
            if ok {
                cur.push(v);
                grow(x, m, cur, out);
                cur.pop();
            }
        }
    }
    grow(x, m, &mut cur, &mut out);
    out
}

/// The values forced on an orbit by choosing a path at its representative.
type Placement = Vec<(usize, Vec<usize>)>;

/// Motion planning over fences of length `m`: the sections of the endpoint
/// map of `X^{J_m}`, searched by backtracking.
pub struct MotionOracle<'a> {
    x: &'a Raw,
    xx: Raw,
    paths: Vec<Vec<usize>>,
    /// Paths by their endpoint pair.
    by_ends: Vec<Vec<usize>>,
}

impl<'a> MotionOracle<'a> {
    pub fn new(x: &'a Raw, m: usize) -> Self {
        let paths = paths(x, m);
        let mut by_ends = vec![Vec::new(); x.n * x.n];
        for (i, p) in paths.iter().enumerate() {
            by_ends[p[0] * x.n + p[m]].push(i);
        }
        MotionOracle {
            x,
            xx: x.square(),
            paths,
            by_ends,
        }
    }

    fn act_path(&self, g: usize, p: usize) -> Vec<usize> {
        self.paths[p].iter().map(|&v| self.x.act[g][v]).collect()
    }

    fn path_le(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().zip(b).all(|(&u, &v)| self.x.leq[u][v])
    }

    /// Whether the invariant set `w` of pairs has an equivariant monotone
    /// section.
    pub fn has_section(&self, w: &[usize]) -> bool {
        let xx = &self.xx;
        let mut reps: Vec<usize> = Vec::new();
        for &e in w {
            if !reps.iter().any(|&r| xx.orbit_of(r).contains(&e)) {
                reps.push(e);
            }
        }
        // lower elements first
        reps.sort_by_key(|&r| (0..xx.n).filter(|&b| xx.leq[b][r]).count());
        let domains: Vec<Vec<usize>> = reps
            .iter()
            .map(|&r| {
                let stab: Vec<usize> = (0..xx.act.len()).filter(|&g| xx.act[g][r] == r).collect();
                self.by_ends[r]
                    .iter()
                    .copied()
                    .filter(|&p| stab.iter().all(|&g| self.act_path(g, p) == self.paths[p]))
                    .collect()
            })
            .collect();
        let domains: Vec<Vec<Placement>> = reps
            .iter()
            .zip(&domains)
            .map(|(&r, d)| {
                d.iter()
                    .map(|&p| {
                        (0..xx.act.len())
                            .map(|g| (xx.act[g][r], self.act_path(g, p)))
                            .collect()
                    })
                    .filter(|pl| self.compatible(pl, pl))
                    .collect()
            })
            .collect();
        self.assign(domains)
    }

    fn compatible(&self, a: &Placement, b: &Placement) -> bool {
        a.iter().all(|(e, pe)| {
            b.iter().all(|(f, pf)| {
                (!self.xx.leq[*f][*e] || self.path_le(pf, pe)) && (!self.xx.leq[*e][*f] || self.path_le(pe, pf))
            })
        })
    }

    /// Backtracking with forward checking over the orbit representatives.
    fn assign(&self, domains: Vec<Vec<Placement>>) -> bool {
        let Some((first, rest)) = domains.split_first() else { return true };
        first.iter().any(|choice| {
            let narrowed: Vec<Vec<Placement>> = rest
                .iter()
                .map(|d| d.iter().filter(|q| self.compatible(choice, q)).cloned().collect())
                .collect();
            narrowed.iter().all(|d: &Vec<Placement>| !d.is_empty()) && self.assign(narrowed)
        })
    }

    /// The smallest number of good invariant open sets covering `X × X`;
    /// `None` is infinity. Good sets are closed under shrinking, so it is
    /// enough to split the orbits of maximal pairs into groups.
    pub fn complexity(&self) -> Option<usize> {
        let xx = &self.xx;
        if xx.n == 0 {
            return Some(0);
        }
        let mut items: Vec<Vec<usize>> = Vec::new();
        for m in xx.maximal() {
            let o = xx.orbit_of(m);
            if !items.contains(&o) {
                items.push(o);
            }
        }
        // good sets stay good when shrunk
        let (mut goods, mut bads): (Vec<u64>, Vec<u64>) = (Vec::new(), Vec::new());
        let mut good = |group: u64| -> bool {
            if goods.iter().any(|&g| group & !g == 0) {
                return true;
            }
            if bads.iter().any(|&b| b & !group == 0) {
                return false;
            }
            let w: Vec<usize> = (0..xx.n)
                .filter(|&e| {
                    (0..items.len()).any(|i| group >> i & 1 == 1 && items[i].iter().any(|&t| xx.leq[e][t]))
                })
                .collect();
            let ok = self.has_section(&w);
            if ok { goods.push(group) } else { bads.push(group) }
            ok
        };
        if (0..items.len()).any(|i| !good(1 << i)) {
            return None;
        }
        for k in 1..=items.len() {
            let mut groups = Vec::new();
            if split(items.len(), 0, k, &mut groups, &mut good) {
                return Some(k);
            }
        }
        unreachable!("singletons are good")
    }
}

/// Places items `i..` into at most `k` groups, each good.
fn split(count: usize, i: usize, k: usize, groups: &mut Vec<u64>, good: &mut impl FnMut(u64) -> bool) -> bool {
    if i == count {
        return true;
    }
    for g in 0..groups.len() {
        let grown = groups[g] | 1 << i;
        if good(grown) {
            let old = groups[g];
            groups[g] = grown;
            if split(count, i + 1, k, groups, good) {
                return true;
            }
            groups[g] = old;
        }
    }
    if groups.len() < k {
        groups.push(1 << i);
        if split(count, i + 1, k, groups, good) {
            return true;
        }
        groups.pop();
    }
    false
}

/// `CC_{G,m}(X)`; `None` is infinity.
pub fn cc_m_oracle(x: &Raw, m: usize) -> Option<usize> {
    MotionOracle::new(x, m).complexity()
}

/// Equivariant monotone maps `A -> X` by filtering every function, with no
/// pruning at all.
pub fn naive_map_count(a: &Raw, x: &Raw) -> usize {
    all_functions(a.n, x.n)
        .filter(|f| {
            (0..a.n).all(|i| (0..a.n).all(|j| !a.leq[i][j] || x.leq[f[i]][f[j]]))
                && (0..a.act.len()).all(|g| (0..a.n).all(|i| f[a.act[g][i]] == x.act[g][f[i]]))
        })
        .count()
}

pub fn show(v: Option<usize>) -> String {
    v.map_or("infinity".into(), |k| k.to_string())
}
