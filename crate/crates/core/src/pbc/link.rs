use std::collections::{BTreeMap, HashMap};

use crate::dbscan::Label;

/// Equivalence classes of cluster ids that were found to be periodic images
/// of one another.
///
/// Every class is represented by its smallest member. Negative ids (noise)
/// are never admitted.
#[derive(Debug, Clone, Default)]
pub struct LinkTable {
    parent: HashMap<Label, Label>,
}

impl LinkTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Smallest id in the class of `label`. Unlinked ids represent themselves.
    pub fn find(&self, label: Label) -> Label {
        let mut cur = label;
        while let Some(&p) = self.parent.get(&cur) {
            if p == cur {
                break;
            }
            cur = p;
        }
        cur
    }

    fn find_compress(&mut self, label: Label) -> Label {
        let root = self.find(label);
        let mut cur = label;
        while cur != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`. Returns `false` when either id is
    /// negative or both already share a class.
    pub fn union(&mut self, a: Label, b: Label) -> bool {
        if a < 0 || b < 0 {
            return false;
        }
        let ra = self.find_compress(a);
        let rb = self.find_compress(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.entry(lo).or_insert(lo);
        self.parent.insert(hi, lo);
        true
    }

    /// True when no two ids have been linked.
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// All classes with more than one member, each sorted, ordered by representative.
    pub fn classes(&self) -> Vec<Vec<Label>> {
        let mut by_root: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        for &id in self.parent.keys() {
            by_root.entry(self.find(id)).or_default().push(id);
        }
        by_root
            .into_values()
            .filter(|c| c.len() > 1)
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect()
    }
}
