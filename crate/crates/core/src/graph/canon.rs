//! Canonical labeling by individualization and refinement.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, pick the first smallest non-singleton cell, individualize
//! each of its vertices in turn and recurse. Every step depends only on the
//! ordered partition, never on vertex labels, so the set of leaves is an
//! isomorphism invariant and the least leaf encoding is canonical.
//!
//! Two prunings keep symmetric graphs cheap. Twins (`N(u)∖{v} = N(v)∖{u}`)
//! in the target cell are interchangeable, so only one is tried. Leaves that
//! reproduce the best encoding yield automorphisms, and branches in the same
//! orbit under automorphisms fixing the current prefix are skipped.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{graph6_decode, Graph};

/// The graph6 string of the canonically relabeled graph. Two graphs have
/// equal forms iff they are isomorphic; the ordering is by graph6 bytes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Box<str>);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        graph6_decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Returns the canonical form and the relabeling `v -> position` that
/// produces it, i.e. `g.permute(&labels)` is the canonical graph.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let mut search = Search { rows: g.rows(), n, best: None, autos: Vec::new() };
    let mut cells = if n == 0 { Vec::new() } else { vec![full_mask(n)] };
    refine(g.rows(), &mut cells);
    let mut prefix = Vec::with_capacity(n);
    search.descend(cells, &mut prefix);
    let (code, labels) = search.best.expect("search reaches at least one leaf");
    let mut text = String::with_capacity(code.len() + 4);
    text.push_str(&header(n));
    text.push_str(std::str::from_utf8(&code).expect("graph6 body is ASCII"));
    (CanonicalForm(text.into_boxed_str()), labels)
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn header(n: usize) -> String {
    if n <= 62 {
        char::from(n as u8 + 63).to_string()
    } else {
        let mut s = String::from("~");
        for shift in [12, 6, 0] {
            s.push(char::from(((n >> shift) & 0x3f) as u8 + 63));
        }
        s
    }
}

/// Splits cells by neighbor counts into every cell until equitable. New
/// cells replace the old one in increasing order of count.
fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    let mut by_count = [0u64; 65];
    let mut scratch = Vec::with_capacity(cells.len() + 8);
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            let splitter = cells[w];
            scratch.clear();
            let mut split_any = false;
            for &cell in cells.iter() {
                if cell & cell.wrapping_sub(1) == 0 {
                    scratch.push(cell);
                    continue;
                }
                let (mut lo, mut hi) = (64usize, 0usize);
                let mut bits = cell;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let c = (rows[v] & splitter).count_ones() as usize;
                    by_count[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    by_count[lo] = 0;
                    scratch.push(cell);
                    continue;
                }
                split_any = true;
                for slot in &mut by_count[lo..=hi] {
                    if *slot != 0 {
                        scratch.push(*slot);
                        *slot = 0;
                    }
                }
            }
            if split_any {
                std::mem::swap(cells, &mut scratch);
                changed = true;
            }
            w += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Search<'g> {
    rows: &'g [u64],
    n: usize,
    /// Best leaf so far: graph6 body bytes and the vertex -> position map.
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) {
        let Some(target) = target_cell(&cells) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut tried = Vec::new();
        let mut seen_autos = usize::MAX;
        let mut orbit = Orbits::new(self.n);
        let mut bits = cell;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if seen_autos != self.autos.len() {
                orbit = self.orbits(cell, prefix);
                seen_autos = self.autos.len();
            }
            let rep = orbit.find(v);
            if tried.iter().any(|&u| orbit.find(u) == rep) {
                continue;
            }
            tried.push(v);

            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.rows, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// Orbits on `cell` generated by twin swaps and by the known
    /// automorphisms that fix `prefix` pointwise.
    fn orbits(&self, cell: u64, prefix: &[usize]) -> Orbits {
        let mut orbits = Orbits::new(self.n);
        let verts: Vec<usize> = (0..self.n).filter(|&v| cell >> v & 1 == 1).collect();
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if self.rows[u] & !(1 << v) == self.rows[v] & !(1 << u) {
                    orbits.union(u, v);
                }
            }
        }
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] == p) {
                for &v in &verts {
                    orbits.union(v, a[v]);
                }
            }
        }
        orbits
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.n;
        let mut inv = Vec::with_capacity(n);
        let mut pos = vec![0usize; n];
        for (i, &c) in cells.iter().enumerate() {
            let v = c.trailing_zeros() as usize;
            inv.push(v);
            pos[v] = i;
        }
        let code = encode_body(self.rows, &inv);
        match &self.best {
            Some((best, best_pos)) if *best == code => {
                let mut best_inv = vec![0usize; n];
                for (v, &p) in best_pos.iter().enumerate() {
                    best_inv[p] = v;
                }
                let auto: Vec<usize> = (0..n).map(|v| best_inv[pos[v]]).collect();
                if auto.iter().enumerate().any(|(v, &w)| v != w) {
                    self.autos.push(auto);
                }
            }
            Some((best, _)) if *best < code => {}
            _ => self.best = Some((code, pos)),
        }
    }
}

fn target_cell(cells: &[u64]) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.count_ones() > 1)
        .min_by_key(|&(i, c)| (c.count_ones(), i))
        .map(|(i, _)| i)
}

/// graph6 body of the graph relabeled so that position `i` holds `inv[i]`.
fn encode_body(rows: &[u64], inv: &[usize]) -> Vec<u8> {
    let n = inv.len();
    let mut out = Vec::with_capacity((n * n.saturating_sub(1) / 2).div_ceil(6));
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = rows[inv[j]];
        for &u in &inv[..j] {
            acc = acc << 1 | (row >> u & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph6_encode;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn shuffled(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.permute(&perm)
    }

    /// Least graph6 string over all relabelings.
    fn brute_force_form(g: &Graph) -> String {
        fn permutations(k: usize, items: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
            if k == items.len() {
                out(items);
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                permutations(k + 1, items, out);
                items.swap(k, i);
            }
        }
        let mut best: Option<String> = None;
        let mut items: Vec<usize> = (0..g.n()).collect();
        permutations(0, &mut items, &mut |perm| {
            let s = graph6_encode(&g.permute(perm));
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        });
        best.unwrap()
    }

    #[test]
    fn relabeled_paths_agree() {
        let p4 = Graph::path(4).unwrap();
        let reversed = p4.permute(&[3, 2, 1, 0]);
        assert_eq!(canonical_form(&p4), canonical_form(&reversed));
        let k3k1 = Graph::clique_union(&[3, 1]).unwrap();
        assert_ne!(canonical_form(&Graph::cycle(4).unwrap()), canonical_form(&k3k1));
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(canonical_form(&c5), canonical_form(&c5.complement()));
    }

    #[test]
    fn labeling_produces_the_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(0..12);
            let g = random_graph(&mut rng, n, 0.4);
            let (form, labels) = canonical_labeling(&g);
            assert_eq!(graph6_encode(&g.permute(&labels)), form.as_str());
            assert_eq!(form.graph(), g.permute(&labels));
        }
    }

    #[test]
    fn isomorphism_class_counts() {
        // Graphs on n unlabeled vertices.
        for (n, want) in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let forms: HashSet<_> = labeled_graphs(n).map(|g| canonical_form(&g)).collect();
            assert_eq!(forms.len(), want, "n = {n}");
        }
    }

    #[test]
    fn agrees_with_brute_force_partition() {
        // Same equivalence relation as the global minimum over all n! labelings.
        for n in 0..=5 {
            let mut ours = std::collections::HashMap::new();
            let mut brute = std::collections::HashMap::new();
            for g in labeled_graphs(n) {
                let a = canonical_form(&g);
                let b = brute_force_form(&g);
                assert_eq!(ours.entry(a.clone()).or_insert_with(|| b.clone()), &b);
                assert_eq!(brute.entry(b).or_insert(a.clone()), &a);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(6..=7);
            let g = random_graph(&mut rng, n, 0.5);
            let h = shuffled(&mut rng, &g);
            assert_eq!(brute_force_form(&g), brute_force_form(&h));
            assert_eq!(canonical_form(&g), canonical_form(&h));
        }
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut tests = vec![
            Graph::petersen(),
            Graph::empty(12).unwrap(),
            Graph::complete(12).unwrap(),
            Graph::clique_union(&[3, 3, 3, 3]).unwrap(),
            Graph::cycle(11).unwrap(),
            Graph::complete_bipartite(5, 6).unwrap(),
            Graph::turan(12, 4).unwrap(),
        ];
        for _ in 0..20 {
            let n = rng.gen_range(1..16);
            tests.push(random_graph(&mut rng, n, 0.3));
        }
        for g in &tests {
            let want = canonical_form(g);
            for _ in 0..100 {
                assert_eq!(canonical_form(&shuffled(&mut rng, g)), want, "{g:?}");
            }
        }
    }

    #[test]
    fn distinguishes_regular_graphs() {
        // Same degree sequence, different graphs.
        let c6 = Graph::cycle(6).unwrap();
        let two_c3 = Graph::clique_union(&[3, 3]).unwrap();
        assert_ne!(canonical_form(&c6), canonical_form(&two_c3));
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_ne!(canonical_form(&prism), canonical_form(&Graph::complete_bipartite(3, 3).unwrap()));
    }
}
