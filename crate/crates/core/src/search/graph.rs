use crate::error::Result;
use crate::linalg::{inner_product, Vector};
use crate::padic::{abs_p, PadicAbs, Prime};

/// Fixed-size bitset over vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect() }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// Keeps one vector per line: of `v` and `-v`, the lexicographically smaller.
/// The result is sorted and free of duplicates.
pub fn sign_class_representatives(vectors: &[Vector]) -> Vec<Vector> {
    let mut reps: Vec<Vector> = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| {
            let neg = v.negate();
            if neg < *v {
                neg
            } else {
                v.clone()
            }
        })
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

/// `|<u, v>|_p` for every pair of vertices.
pub fn pairwise_angles(vertices: &[Vector], p: Prime) -> Result<Vec<Vec<PadicAbs>>> {
    use rayon::prelude::*;
    (0..vertices.len())
        .into_par_iter()
        .map(|i| {
            (0..vertices.len())
                .map(|j| Ok(abs_p(&inner_product(&vertices[i], &vertices[j])?, p)))
                .collect()
        })
        .collect()
}

/// Undirected graph on line representatives; `u ~ v` iff `|<u, v>|_p = gamma`.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    pub vertices: Vec<Vector>,
    pub gamma: PadicAbs,
    adjacency: Vec<BitSet>,
}

impl CompatibilityGraph {
    pub fn from_angles(vertices: Vec<Vector>, angles: &[Vec<PadicAbs>], gamma: PadicAbs) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && angles[i][j] == gamma {
                    adjacency[i].insert(j);
                }
            }
        }
        CompatibilityGraph { vertices, gamma, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adjacency[i]
    }
}

pub fn build_compatibility_graph(vectors: &[Vector], gamma: PadicAbs, p: Prime) -> Result<CompatibilityGraph> {
    let reps = sign_class_representatives(vectors);
    let angles = pairwise_angles(&reps, p)?;
    Ok(CompatibilityGraph::from_angles(reps, &angles, gamma))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cliques {
    /// Vertex sets in ascending order; the list is sorted lexicographically.
    pub sets: Vec<Vec<usize>>,
    /// Some clique was cut off at `max_n`, or the clique budget ran out.
    pub truncated: bool,
}

/// Maximal cliques of size at least two, grown by Bron-Kerbosch with
/// pivoting. Growth stops at `max_n` vertices and after `max_cliques` sets.
pub fn grow_cliques(graph: &CompatibilityGraph, max_n: usize, max_cliques: usize) -> Cliques {
    let mut state = CliqueState { graph, max_n, max_cliques, out: Cliques::default() };
    let n = graph.vertex_count();
    let mut r = Vec::new();
    state.expand(&mut r, BitSet::full(n), BitSet::new(n));
    state.out.sets.sort();
    state.out
}

struct CliqueState<'a> {
    graph: &'a CompatibilityGraph,
    max_n: usize,
    max_cliques: usize,
    out: Cliques,
}

impl CliqueState<'_> {
    fn emit(&mut self, r: &[usize]) {
        if r.len() >= 2 {
            if self.out.sets.len() >= self.max_cliques {
                self.out.truncated = true;
                return;
            }
            let mut set = r.to_vec();
            set.sort_unstable();
            self.out.sets.push(set);
        }
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut candidates: BitSet, mut excluded: BitSet) {
        if self.out.sets.len() >= self.max_cliques {
            self.out.truncated = true;
            return;
        }
        if candidates.is_empty() {
            if excluded.is_empty() {
                self.emit(r);
            }
            return;
        }
        if r.len() >= self.max_n {
            self.out.truncated = true;
            self.emit(r);
            return;
        }
        // pivot: the vertex of P u X with the most neighbours in P, lowest index on ties
        let pivot = candidates
            .union(&excluded)
            .iter()
            .max_by_key(|&u| (self.graph.neighbors(u).intersection(&candidates).len(), std::cmp::Reverse(u)))
            .expect("nonempty");
        let branch: Vec<usize> = candidates.difference(self.graph.neighbors(pivot)).iter().collect();
        for v in branch {
            let nv = self.graph.neighbors(v);
            r.push(v);
            self.expand(r, candidates.intersection(nv), excluded.intersection(nv));
            r.pop();
            candidates.remove(v);
            excluded.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Rational;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn five() -> Prime {
        Prime::new(5).unwrap()
    }

    /// All cliques by brute force over subsets, keeping the maximal ones.
    fn brute_maximal(g: &CompatibilityGraph) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        let is_clique = |m: u32| {
            (0..n).all(|i| (0..n).all(|j| i == j || m >> i & 1 == 0 || m >> j & 1 == 0 || g.has_edge(i, j)))
        };
        let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique(m)).collect();
        let mut out: Vec<Vec<usize>> = cliques
            .iter()
            .filter(|&&m| m.count_ones() >= 2 && !cliques.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn standard_basis_is_complete() {
        let basis: Vec<Vector> = (0..4).map(|i| Vector::basis(4, i)).collect();
        let g = build_compatibility_graph(&basis, PadicAbs::Zero, five()).unwrap();
        assert_eq!(g.edge_count(), 6);
        let c = grow_cliques(&g, 16, 1000);
        assert_eq!(c.sets, vec![vec![0, 1, 2, 3]]);
        assert!(!c.truncated);
    }

    #[test]
    fn pair_has_single_edge() {
        let vs = vec![Vector::basis(2, 0), Vector::new(vec![q("3/5"), q("4/5")])];
        let g = build_compatibility_graph(&vs, PadicAbs::Pow(1), five()).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(grow_cliques(&g, 16, 1000).sets, vec![vec![0, 1]]);
        let g = build_compatibility_graph(&vs, PadicAbs::Pow(99), five()).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(grow_cliques(&g, 16, 1000).sets.is_empty());
    }

    #[test]
    fn sign_classes_collapse() {
        let vs = vec![
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[-1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[0, -1]),
        ];
        let reps = sign_class_representatives(&vs);
        assert_eq!(reps, vec![Vector::from_ints(&[-1, 0]), Vector::from_ints(&[0, -1])]);
    }

    #[test]
    fn cap_truncates() {
        let basis: Vec<Vector> = (0..5).map(|i| Vector::basis(5, i)).collect();
        let g = build_compatibility_graph(&basis, PadicAbs::Zero, five()).unwrap();
        let c = grow_cliques(&g, 3, 1000);
        assert!(c.truncated);
        assert!(c.sets.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..11);
            let vertices: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
            let mut angles = vec![vec![PadicAbs::ONE; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        angles[i][j] = PadicAbs::Zero;
                        angles[j][i] = PadicAbs::Zero;
                    }
                }
            }
            let g = CompatibilityGraph::from_angles(vertices, &angles, PadicAbs::Zero);
            assert_eq!(grow_cliques(&g, 64, usize::MAX).sets, brute_maximal(&g));
        }
    }
}
