use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::ElementSet;

/// Default cap on the number of flats enumerated.
pub const DEFAULT_FLAT_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Flat {
    pub elements: ElementSet,
    pub rank: usize,
}

/// The lattice of flats, with flats sorted by `(rank, element bitmask)`.
///
/// Flat ids are positions in that order, so the bottom flat is id 0 and
/// the top flat is the last id.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    ground_size: usize,
    flats: Vec<Flat>,
    rank_starts: Vec<usize>,
    index: HashMap<ElementSet, usize>,
    /// `atom_join[f * ground_size + e]` = id of `cl(F ∪ e)`.
    atom_join: Vec<u32>,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    ground: usize,
    flats: Vec<FlatJson<'a>>,
    covers: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct FlatJson<'a> {
    id: usize,
    rank: usize,
    elements: &'a ElementSet,
}

impl FlatLattice {
    pub(crate) fn from_levels(ground_size: usize, levels: Vec<Vec<ElementSet>>) -> Self {
        let mut flats = Vec::new();
        let mut rank_starts = Vec::new();
        for (rank, mut level) in levels.into_iter().enumerate() {
            level.sort_by_key(|s| s.bits());
            rank_starts.push(flats.len());
            flats.extend(level.into_iter().map(|elements| Flat { elements, rank }));
        }
        rank_starts.push(flats.len());
        let index: HashMap<ElementSet, usize> = flats
            .iter()
            .enumerate()
            .map(|(k, f)| (f.elements, k))
            .collect();
        // cl(F ∪ e) is the unique flat of rank rk F + 1 containing F ∪ e
        // (or F itself when e ∈ F).
        let mut atom_join = vec![0u32; flats.len() * ground_size];
        for (k, f) in flats.iter().enumerate() {
            for e in 0..ground_size {
                let target = if f.elements.contains(e) {
                    k
                } else {
                    let want = f.elements.with(e);
                    let (lo, hi) = (rank_starts[f.rank + 1], rank_starts[f.rank + 2]);
                    (lo..hi)
                        .find(|&g| want.is_subset(flats[g].elements))
                        .expect("flat lattice is missing a cover")
                };
                atom_join[k * ground_size + e] = target as u32;
            }
        }
        FlatLattice {
            ground_size,
            flats,
            rank_starts,
            index,
            atom_join,
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> Flat {
        self.flats[id]
    }

    pub fn rank(&self) -> usize {
        self.rank_starts.len() - 2
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn id_of(&self, elements: ElementSet) -> Option<usize> {
        self.index.get(&elements).copied()
    }

    /// Ids of flats of rank `r`.
    pub fn of_rank(&self, r: usize) -> std::ops::Range<usize> {
        if r + 1 >= self.rank_starts.len() {
            return 0..0;
        }
        self.rank_starts[r]..self.rank_starts[r + 1]
    }

    /// Number of flats of each rank.
    pub fn whitney_numbers(&self) -> Vec<usize> {
        self.rank_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Id of the rank-one flat spanned by a non-loop element.
    pub fn atom(&self, e: usize) -> usize {
        self.atom_join(0, e)
    }

    #[inline]
    pub fn atom_join(&self, f: usize, e: usize) -> usize {
        self.atom_join[f * self.ground_size + e] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let (small, big) = if self.flats[a].rank <= self.flats[b].rank {
            (a, b)
        } else {
            (b, a)
        };
        self.flats[small]
            .elements
            .iter()
            .fold(big, |acc, e| self.atom_join(acc, e))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let inter = self.flats[a].elements.intersection(self.flats[b].elements);
        self.id_of(inter).expect("intersection of flats is a flat")
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.flats[a].elements.is_subset(self.flats[b].elements)
    }

    /// Pairs `(lower, upper)` of covering flats.
    pub fn covers(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for (k, f) in self.flats.iter().enumerate() {
            let mut ups: Vec<usize> = (0..self.ground_size)
                .filter(|&e| !f.elements.contains(e))
                .map(|e| self.atom_join(k, e))
                .collect();
            ups.sort_unstable();
            ups.dedup();
            out.extend(ups.into_iter().map(|u| [k, u]));
        }
        out
    }

    /// Graphviz rendering: one node per flat labelled by its elements and rank.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph flats {\n  rankdir=BT;\n");
        for (k, f) in self.flats.iter().enumerate() {
            let _ = writeln!(s, "  f{k} [label=\"{} (rank {})\"];", f.elements, f.rank);
        }
        for [a, b] in self.covers() {
            let _ = writeln!(s, "  f{a} -> f{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = LatticeJson {
            ground: self.ground_size,
            flats: self
                .flats
                .iter()
                .enumerate()
                .map(|(id, f)| FlatJson {
                    id,
                    rank: f.rank,
                    elements: &f.elements,
                })
                .collect(),
            covers: self.covers(),
        };
        serde_json::to_value(j).expect("lattice serializes")
    }
}

#[cfg(test)]
mod tests {
    use crate::bitset::ElementSet;
    use crate::matroid::NamedMatroid;

    fn set(v: &[usize]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    #[test]
    fn example21_lattice_structure() {
        let lat = NamedMatroid::Example21.build().unwrap().flats().unwrap();
        let rank2: Vec<ElementSet> = lat.of_rank(2).map(|k| lat.flat(k).elements).collect();
        // abc, cde, ad, ae, bd, be
        for f in [
            set(&[0, 1, 2]),
            set(&[2, 3, 4]),
            set(&[0, 3]),
            set(&[0, 4]),
            set(&[1, 3]),
            set(&[1, 4]),
        ] {
            assert!(rank2.contains(&f), "missing {f}");
        }
        assert_eq!(lat.covers().len(), 25);
        let abc = lat.id_of(set(&[0, 1, 2])).unwrap();
        let cde = lat.id_of(set(&[2, 3, 4])).unwrap();
        assert_eq!(lat.join(abc, cde), lat.top());
        assert_eq!(lat.meet(abc, cde), lat.id_of(set(&[2])).unwrap());
    }

    #[test]
    fn dot_and_json_exports() {
        let lat = NamedMatroid::Example21.build().unwrap().flats().unwrap();
        let dot = lat.to_dot();
        assert_eq!(dot.matches("label=").count(), 13);
        let j = lat.to_json();
        assert_eq!(j["flats"].as_array().unwrap().len(), 13);
        assert_eq!(j["covers"].as_array().unwrap().len(), 25);
    }
}
