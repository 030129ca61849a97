//! Weighted dual graphs of exceptional loci, fundamental cycles, and the
//! catalog of singularity types.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertices are smooth rational curves; `meet[(i, j)]` (i < j) is Eᵢ·Eⱼ.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DualGraph {
    selfint: Vec<i64>,
    meet: BTreeMap<(usize, usize), i64>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl DualGraph {
    pub fn new(selfint: Vec<i64>, edges: &[(usize, usize, i64)]) -> DualGraph {
        let mut g = DualGraph { selfint, meet: BTreeMap::new() };
        for &(i, j, w) in edges {
            g.add_meet(i, j, w);
        }
        g
    }

    pub fn add_meet(&mut self, i: usize, j: usize, w: i64) {
        assert_ne!(i, j);
        let e = self.meet.entry(key(i, j)).or_insert(0);
        *e += w;
        if *e == 0 {
            self.meet.remove(&key(i, j));
        }
    }

    pub fn len(&self) -> usize {
        self.selfint.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selfint.is_empty()
    }

    pub fn selfint(&self, i: usize) -> i64 {
        self.selfint[i]
    }

    pub fn self_intersections(&self) -> &[i64] {
        &self.selfint
    }

    pub fn meet(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.selfint[i]
        } else {
            self.meet.get(&key(i, j)).copied().unwrap_or(0)
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.meet.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// K·Eᵢ = −2 − Eᵢ² by adjunction on a smooth rational curve.
    pub fn canonical_degree(&self, i: usize) -> i64 {
        -2 - self.selfint[i]
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j != i && self.meet(i, j) != 0).collect()
    }

    pub fn valence(&self, i: usize) -> usize {
        self.neighbours(i).len()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.meet(i, j)).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges().all(|(_, _, w)| w == 1) && self.meet.len() + 1 == self.len()
    }

    /// Exact test via leading principal minors of −M (Bareiss elimination).
    pub fn is_negative_definite(&self) -> bool {
        let n = self.len();
        let mut a: Vec<Vec<i128>> =
            self.matrix().into_iter().map(|row| row.into_iter().map(|x| -(x as i128)).collect()).collect();
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] <= 0 {
                return false;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        true
    }

    /// Contract (−1)-vertices until none remain.
    pub fn contract_minus_one(&self) -> DualGraph {
        let mut g = self.clone();
        while let Some(e) = (0..g.len()).find(|&i| g.selfint[i] == -1) {
            let nb = g.neighbours(e);
            for &i in &nb {
                let a = g.meet(i, e);
                g.selfint[i] += a * a;
                for &j in nb.iter().filter(|&&j| j > i) {
                    let b = g.meet(j, e);
                    g.add_meet(i, j, a * b);
                }
            }
            let keep: Vec<usize> = (0..g.len()).filter(|&i| i != e).collect();
            let idx = |old: usize| keep.iter().position(|&k| k == old).unwrap();
            let mut h = DualGraph { selfint: keep.iter().map(|&i| g.selfint[i]).collect(), meet: BTreeMap::new() };
            for (i, j, w) in g.edges() {
                if i != e && j != e {
                    h.add_meet(idx(i), idx(j), w);
                }
            }
            g = h;
        }
        g
    }
}

impl Serialize for DualGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Vertex {
            selfint: i64,
            canonical_degree: i64,
        }
        let vertices: Vec<Vertex> = (0..self.len())
            .map(|i| Vertex { selfint: self.selfint[i], canonical_degree: self.canonical_degree(i) })
            .collect();
        let mut edges = Vec::new();
        for (i, j, w) in self.edges() {
            for _ in 0..w.max(0) {
                edges.push([i, j]);
            }
        }
        let mut st = s.serialize_struct("DualGraph", 2)?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// Largest set of pairwise disjoint (−2)-vertices.
pub fn disjoint_minus_two(g: &DualGraph) -> usize {
    let cand: Vec<usize> = (0..g.len()).filter(|&i| g.selfint(i) == -2).collect();
    let n = cand.len();
    assert!(n <= 24, "graph too large for exhaustive search");
    (0u32..1 << n)
        .filter(|mask| {
            let chosen: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| cand[b]).collect();
            chosen.iter().enumerate().all(|(k, &i)| chosen[k + 1..].iter().all(|&j| g.meet(i, j) == 0))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// `[-2, -2, -3]; 0-1, 1-2x2` lists self-intersections, then edges with weights above 1.
impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.selfint)?;
        let edges: Vec<String> = self
            .meet
            .iter()
            .map(|(&(i, j), &w)| if w == 1 { format!("{i}-{j}") } else { format!("{i}-{j}x{w}") })
            .collect();
        if !edges.is_empty() {
            write!(f, "; {}", edges.join(", "))?;
        }
        Ok(())
    }
}

/// Artin's fundamental cycle with its self-intersection and arithmetic genus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FundamentalCycle {
    pub multiplicities: Vec<i64>,
    pub self_intersection: i64,
    pub canonical_degree: i64,
    pub arithmetic_genus: i64,
}

impl fmt::Display for FundamentalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z = {:?}, Z^2 = {}, p_a(Z) = {}", self.multiplicities, self.self_intersection, self.arithmetic_genus)
    }
}

pub fn fundamental_cycle(g: &DualGraph) -> Result<FundamentalCycle> {
    if g.is_empty() || !g.is_connected() || !g.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let n = g.len();
    let dot = |z: &[i64], i: usize| -> i64 { (0..n).map(|j| z[j] * g.meet(i, j)).sum() };
    let mut z = vec![1i64; n];
    while let Some(i) = (0..n).find(|&i| dot(&z, i) > 0) {
        z[i] += 1;
    }
    let z2: i64 = (0..n).map(|i| z[i] * dot(&z, i)).sum();
    let kz: i64 = (0..n).map(|i| z[i] * g.canonical_degree(i)).sum();
    debug_assert_eq!((z2 + kz) % 2, 0);
    Ok(FundamentalCycle { multiplicities: z, self_intersection: z2, canonical_degree: kz, arithmetic_genus: 1 + (z2 + kz) / 2 })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SingularityType {
    A1,
    D4,
    D8,
    /// Only reached through the blow-up engine, never through the order table.
    E8,
    /// Minimally elliptic, star of a (−3)-curve with five (−2)-tips.
    Elliptic19,
    Unclassified(u32, u32),
}

impl SingularityType {
    pub fn is_rational(&self) -> bool {
        matches!(self, SingularityType::A1 | SingularityType::D4 | SingularityType::D8 | SingularityType::E8)
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, SingularityType::Elliptic19)
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, SingularityType::Unclassified(..))
    }

    /// Number of exceptional curves in the minimal resolution.
    pub fn exceptional_curves(&self) -> Option<u32> {
        match self {
            SingularityType::A1 => Some(1),
            SingularityType::D4 => Some(4),
            SingularityType::D8 | SingularityType::E8 => Some(8),
            SingularityType::Elliptic19 => Some(6),
            SingularityType::Unclassified(..) => None,
        }
    }

    /// Z² of the fundamental cycle, which is also the drop in K² under resolution
    /// for elliptic points (0 for rational double points).
    pub fn canonical_correction(&self) -> Option<i64> {
        match self {
            SingularityType::Elliptic19 => Some(-2),
            SingularityType::Unclassified(..) => None,
            _ => Some(0),
        }
    }

    /// Graph of the minimal resolution.
    pub fn graph(&self) -> Option<DualGraph> {
        let chain = |n: usize| -> Vec<(usize, usize, i64)> { (1..n).map(|i| (i - 1, i, 1)).collect() };
        Some(match self {
            SingularityType::A1 => DualGraph::new(vec![-2], &[]),
            SingularityType::D4 => DualGraph::new(vec![-2; 4], &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]),
            SingularityType::D8 => {
                // chain of seven with an extra tip on the second vertex
                let mut e = chain(7);
                e.push((1, 7, 1));
                DualGraph::new(vec![-2; 8], &e)
            }
            SingularityType::E8 => {
                let mut e = chain(7);
                e.push((2, 7, 1));
                DualGraph::new(vec![-2; 8], &e)
            }
            SingularityType::Elliptic19 => {
                let mut s = vec![-3];
                s.extend([-2; 5]);
                DualGraph::new(s, &(1..6).map(|i| (0, i, 1)).collect::<Vec<_>>())
            }
            SingularityType::Unclassified(..) => return None,
        })
    }

    pub fn label(&self) -> String {
        match self {
            SingularityType::A1 => "A1".into(),
            SingularityType::D4 => "D4".into(),
            SingularityType::D8 => "D8".into(),
            SingularityType::E8 => "E8".into(),
            SingularityType::Elliptic19 => "(19)_0".into(),
            SingularityType::Unclassified(a, b) => format!("unclassified({a},{b})"),
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for SingularityType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Table lookup by the absolute orders of f and g.
pub fn classify_pair(a: u32, b: u32) -> SingularityType {
    match (a, b) {
        (1, 1) => SingularityType::A1,
        (2, 2) => SingularityType::D4,
        (4, 2) | (2, 4) => SingularityType::D8,
        (4, 4) => SingularityType::Elliptic19,
        _ => SingularityType::Unclassified(a, b),
    }
}

/// Arm lengths from the unique trivalent vertex of a tree, sorted.
fn arms(g: &DualGraph) -> Option<Vec<usize>> {
    let centres: Vec<usize> = (0..g.len()).filter(|&i| g.valence(i) >= 3).collect();
    if centres.len() != 1 || g.valence(centres[0]) != 3 {
        return None;
    }
    let c = centres[0];
    let mut out: Vec<usize> = g
        .neighbours(c)
        .into_iter()
        .map(|mut v| {
            let mut prev = c;
            let mut len = 1;
            loop {
                let next: Vec<usize> = g.neighbours(v).into_iter().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [w] => {
                        prev = v;
                        v = *w;
                        len += 1;
                    }
                    _ => return len,
                }
            }
        })
        .collect();
    out.sort();
    Some(out)
}

/// Match a minimal resolution graph against the catalog.
pub fn classify_graph(g: &DualGraph) -> Option<SingularityType> {
    if !g.is_tree() {
        return None;
    }
    let all_minus_two = g.self_intersections().iter().all(|&s| s == -2);
    if all_minus_two {
        return match (g.len(), arms(g)) {
            (1, _) => Some(SingularityType::A1),
            (4, Some(a)) if a == [1, 1, 1] => Some(SingularityType::D4),
            (8, Some(a)) if a == [1, 1, 5] => Some(SingularityType::D8),
            (8, Some(a)) if a == [1, 2, 4] => Some(SingularityType::E8),
            _ => None,
        };
    }
    let centre: Vec<usize> = (0..g.len()).filter(|&i| g.selfint(i) == -3).collect();
    if g.len() == 6 && centre.len() == 1 && g.valence(centre[0]) == 5 {
        let cycle = fundamental_cycle(g).ok()?;
        if cycle.arithmetic_genus == 1 {
            return Some(SingularityType::Elliptic19);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_graphs_classify_to_themselves() {
        for t in [
            SingularityType::A1,
            SingularityType::D4,
            SingularityType::D8,
            SingularityType::E8,
            SingularityType::Elliptic19,
        ] {
            let g = t.graph().unwrap();
            assert!(g.is_negative_definite(), "{t}");
            assert_eq!(classify_graph(&g), Some(t));
        }
    }

    #[test]
    fn fundamental_cycles() {
        let a1 = fundamental_cycle(&SingularityType::A1.graph().unwrap()).unwrap();
        assert_eq!((a1.multiplicities.clone(), a1.self_intersection, a1.arithmetic_genus), (vec![1], -2, 0));
        let d4 = fundamental_cycle(&SingularityType::D4.graph().unwrap()).unwrap();
        assert_eq!(d4.multiplicities, vec![2, 1, 1, 1]);
        assert_eq!((d4.self_intersection, d4.arithmetic_genus), (-2, 0));
        let d8 = fundamental_cycle(&SingularityType::D8.graph().unwrap()).unwrap();
        assert_eq!((d8.self_intersection, d8.arithmetic_genus), (-2, 0));
        let e = fundamental_cycle(&SingularityType::Elliptic19.graph().unwrap()).unwrap();
        assert_eq!(e.multiplicities, vec![2, 1, 1, 1, 1, 1]);
        assert_eq!((e.self_intersection, e.arithmetic_genus), (-2, 1));
        assert_eq!(e.canonical_degree, 2);
    }

    #[test]
    fn indefinite_graph_is_rejected() {
        let g = DualGraph::new(vec![-1, -1], &[(0, 1, 1)]);
        assert!(!g.is_negative_definite());
        assert!(matches!(fundamental_cycle(&g), Err(Error::NotNegativeDefinite)));
    }

    #[test]
    fn contraction_of_minus_one_curves() {
        // -1 between two -2's: contracting gives two -1's meeting, then a single 0
        let g = DualGraph::new(vec![-3, -1, -3], &[(0, 1, 1), (1, 2, 1)]);
        let c = g.contract_minus_one();
        assert_eq!(c.self_intersections(), &[-2, -2]);
        assert_eq!(c.meet(0, 1), 1);
    }

    #[test]
    fn disjoint_curves_per_type() {
        let count = |t: SingularityType| disjoint_minus_two(&t.graph().unwrap());
        assert_eq!(count(SingularityType::A1), 1);
        assert_eq!(count(SingularityType::D4), 3);
        assert_eq!(count(SingularityType::D8), 5);
        assert_eq!(count(SingularityType::E8), 4);
        assert_eq!(count(SingularityType::Elliptic19), 5);
    }

    #[test]
    fn pair_table() {
        assert_eq!(classify_pair(1, 1), SingularityType::A1);
        assert_eq!(classify_pair(2, 4), SingularityType::D8);
        assert_eq!(classify_pair(6, 4), SingularityType::Unclassified(6, 4));
        assert!(classify_pair(4, 4).is_elliptic());
    }
}
