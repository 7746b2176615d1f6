//! Hom-posets of equivariant maps, fences between them, and combinatorial
//! path spaces.

mod csp;
pub mod search;

use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::GPoset;
use crate::poset::FinitePoset;

pub use search::{Goal, MapSpace, Search};

pub const DEFAULT_MAP_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The next map lies pointwise above.
    Up,
    Down,
}

/// A fence of equivariant maps on an invariant open set, each map listed on
/// the elements of `domain` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FenceCertificate {
    pub domain: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
    pub directions: Vec<Direction>,
}

impl FenceCertificate {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Checks from scratch: the domain is an invariant downset of `source`,
    /// every map is monotone and equivariant into `target`, and adjacent maps
    /// compare as recorded.
    pub fn verify(&self, source: &GPoset, target: &GPoset) -> bool {
        let dom = ElemSet::from_indices(source.len(), self.domain.iter().copied());
        if dom.len() != self.domain.len()
            || !source.poset().is_downset(&dom)
            || !source.is_invariant(&dom)
            || self.maps.is_empty()
            || self.directions.len() + 1 != self.maps.len()
        {
            return false;
        }
        let mut pos = vec![usize::MAX; source.len()];
        for (i, &x) in self.domain.iter().enumerate() {
            pos[x] = i;
        }
        let sp = source.poset();
        let tp = target.poset();
        for f in &self.maps {
            if f.len() != self.domain.len() || f.iter().any(|&v| v >= target.len()) {
                return false;
            }
            for (i, &x) in self.domain.iter().enumerate() {
                for (j, &y) in self.domain.iter().enumerate() {
                    if sp.leq(x, y) && !tp.leq(f[i], f[j]) {
                        return false;
                    }
                }
                for g in 0..source.group().order() {
                    if f[pos[source.act(g, x)]] != target.act(g, f[i]) {
                        return false;
                    }
                }
            }
        }
        self.maps.windows(2).zip(&self.directions).all(|(w, d)| {
            let (a, b) = (&w[0], &w[1]);
            a.iter().zip(b).all(|(&x, &y)| match d {
                Direction::Up => tp.leq(x, y),
                Direction::Down => tp.leq(y, x),
            })
        })
    }

    /// Whether the directions alternate starting upwards.
    pub fn is_up_first_alternating(&self) -> bool {
        self.directions.iter().enumerate().all(|(t, d)| {
            *d == if t % 2 == 0 {
                Direction::Up
            } else {
                Direction::Down
            }
        })
    }

    /// Pads with copies of the last map up to length `m`.
    pub fn padded(&self, m: usize) -> FenceCertificate {
        let mut out = self.clone();
        while out.directions.len() < m {
            let t = out.directions.len();
            out.maps.push(out.maps.last().unwrap().clone());
            out.directions.push(if t % 2 == 0 {
                Direction::Up
            } else {
                Direction::Down
            });
        }
        out
    }
}

/// An explicitly enumerated set of monotone equivariant maps `A -> X` under
/// the pointwise order.
#[derive(Clone, Debug)]
pub struct HomPoset {
    pub maps: Vec<Vec<usize>>,
    index: FxHashMap<Vec<usize>, usize>,
    cod: Arc<FinitePoset>,
}

/// Comparison pattern for fence distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FencePattern {
    /// Each step goes up or down freely.
    Free,
    /// `f0 <= f1 >= f2 <= ...`
    UpFirst,
}

impl HomPoset {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn index_of(&self, f: &[usize]) -> Result<usize> {
        self.index.get(f).copied().ok_or(Error::MapNotInPoset)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.maps[a]
            .iter()
            .zip(&self.maps[b])
            .all(|(&x, &y)| self.cod.leq(x, y))
    }

    /// Shortest fence from `f` to `g` respecting the pattern, up to `max_len`
    /// steps. Equality counts as both directions.
    pub fn fence_distance(
        &self,
        f: &[usize],
        g: &[usize],
        pattern: FencePattern,
        max_len: usize,
    ) -> Result<Option<usize>> {
        let (s, t) = (self.index_of(f)?, self.index_of(g)?);
        let n = self.len();
        // state = (map, parity of the step count)
        let mut dist = vec![[usize::MAX; 2]; n];
        dist[s][0] = 0;
        let mut q = VecDeque::from([(s, 0usize)]);
        while let Some((a, p)) = q.pop_front() {
            let d = dist[a][p];
            if a == t {
                return Ok(Some(d));
            }
            if d == max_len {
                continue;
            }
            let np = 1 - p;
            for b in 0..n {
                let ok = match pattern {
                    FencePattern::Free => self.leq(a, b) || self.leq(b, a),
                    FencePattern::UpFirst if p == 0 => self.leq(a, b),
                    FencePattern::UpFirst => self.leq(b, a),
                };
                let slot = if pattern == FencePattern::Free { 0 } else { np };
                if ok && dist[b][slot] == usize::MAX {
                    dist[b][slot] = d + 1;
                    q.push_back((b, slot));
                }
            }
        }
        Ok(None)
    }
}

/// All monotone equivariant maps `A -> X`, determined by their values on
/// orbit representatives of `A` (each in the fixed set of its stabilizer).
pub fn enumerate_equivariant_maps(a: &GPoset, x: &GPoset, budget: usize) -> Result<HomPoset> {
    if !a.same_group(x) {
        return Err(Error::GroupMismatch("source and target carry different groups".into()));
    }
    let space = MapSpace::new(a, x, a.poset().all_elements());
    let mut nodes = budget as u64 * 4;
    let vals = space.enumerate(&mut nodes, budget).ok_or_else(|| {
        Error::BudgetExceeded(format!("more than {budget} equivariant maps"))
    })?;
    let maps: Vec<Vec<usize>> = vals.iter().map(|v| space.expand(v)).collect();
    let index = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(HomPoset {
        maps,
        index,
        cod: x.poset_arc().clone(),
    })
}

/// The upper bound `#X^{#(A/G)}` on the number of equivariant maps.
pub fn equivariant_map_bound(a: &GPoset, x: &GPoset) -> f64 {
    (x.len() as f64).powi(a.orbit_count() as i32)
}

/// The combinatorial path space `X^{J_m}` with `G` acting pointwise, and the
/// endpoint map into `X × X`.
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub m: usize,
    pub paths: Vec<Vec<usize>>,
    pub space: GPoset,
    /// `q_m(α) = (α(0), α(m))` as an index into `X × X`.
    pub endpoints: Vec<usize>,
}

pub fn path_space(x: &GPoset, m: usize, budget: usize) -> Result<PathSpace> {
    let jm = GPoset::trivial(FinitePoset::combinatorial_interval(m));
    let plain = x.forget_group();
    let space = MapSpace::new(&jm, &plain, jm.poset().all_elements());
    let mut nodes = budget as u64 * 4;
    let paths = space
        .enumerate(&mut nodes, budget)
        .ok_or_else(|| Error::BudgetExceeded(format!("more than {budget} paths")))?;
    let index: FxHashMap<&[usize], usize> =
        paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let xp = x.poset();
    let names = paths
        .iter()
        .map(|p| {
            let parts: Vec<&str> = p.iter().map(|&v| xp.name(v)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let poset = FinitePoset::from_leq_fn(names, |a, b| {
        paths[a].iter().zip(&paths[b]).all(|(&u, &v)| xp.leq(u, v))
    });
    let act = (0..x.group().order())
        .map(|g| {
            paths
                .iter()
                .map(|p| {
                    let img: Vec<usize> = p.iter().map(|&v| x.act(g, v)).collect();
                    index[img.as_slice()]
                })
                .collect()
        })
        .collect();
    let n = x.len();
    let endpoints = paths.iter().map(|p| p[0] * n + p[m]).collect();
    Ok(PathSpace {
        m,
        space: GPoset::new_unchecked(Arc::new(poset), x.group_arc().clone(), act),
        paths,
        endpoints,
    })
}

/// A map `U × J_m -> X` stored level by level: `levels[t][i]` is the image of
/// `(domain[i], t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub domain: Vec<usize>,
    pub levels: Vec<Vec<usize>>,
}

impl Homotopy {
    /// Each domain element's path `t ↦ H(u, t)`.
    pub fn curry(&self) -> Vec<Vec<usize>> {
        (0..self.domain.len())
            .map(|i| self.levels.iter().map(|l| l[i]).collect())
            .collect()
    }

    pub fn uncurry(domain: Vec<usize>, paths: &[Vec<usize>]) -> Homotopy {
        let m = paths.first().map_or(0, |p| p.len().saturating_sub(1));
        let levels = (0..=m)
            .map(|t| paths.iter().map(|p| p[t]).collect())
            .collect();
        Homotopy { domain, levels }
    }

    /// Whether the map is monotone on `U × J_m` and equivariant for the
    /// action that is trivial on `J_m`.
    pub fn verify(&self, source: &GPoset, target: &GPoset) -> bool {
        let fence = FenceCertificate {
            domain: self.domain.clone(),
            maps: self.levels.clone(),
            directions: (0..self.levels.len().saturating_sub(1))
                .map(|t| if t % 2 == 0 { Direction::Up } else { Direction::Down })
                .collect(),
        };
        fence.verify(source, target)
    }

    pub fn from_fence(fence: &FenceCertificate) -> Option<Homotopy> {
        fence.is_up_first_alternating().then(|| Homotopy {
            domain: fence.domain.clone(),
            levels: fence.maps.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_self_maps() {
        let j1 = GPoset::trivial(FinitePoset::combinatorial_interval(1));
        let h = enumerate_equivariant_maps(&j1, &j1, 100).unwrap();
        assert_eq!(h.len(), 3);
        let d = h
            .fence_distance(&[0, 0], &[1, 1], FencePattern::UpFirst, 5)
            .unwrap();
        assert_eq!(d, Some(1));
        let d = h
            .fence_distance(&[1, 1], &[0, 0], FencePattern::UpFirst, 5)
            .unwrap();
        assert_eq!(d, Some(2));
        let ps = path_space(&j1, 1, 100).unwrap();
        assert_eq!(ps.paths.len(), 3);
    }
}
