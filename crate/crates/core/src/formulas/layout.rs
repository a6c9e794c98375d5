//! Block-ordered first-fit labelling engine used by the constructive
//! labellings. Each vertex receives the smallest label at or above a block
//! floor that respects the real adjacency (gap >= 2) and distance-two
//! (distinct) constraints against everything already labelled.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;
use crate::l21::Labelling;

pub(crate) struct Layout<'g> {
    g: &'g Graph,
    d2: Vec<FixedBitSet>,
    label_of: Vec<u32>,
    assigned: Vec<bool>,
    max_label: Option<u32>,
}

impl<'g> Layout<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Layout {
            d2: g.distance_two_rows(),
            label_of: vec![0; g.vertex_count()],
            assigned: vec![false; g.vertex_count()],
            max_label: None,
            g,
        }
    }

    pub fn current_max(&self) -> Option<u32> {
        self.max_label
    }

    #[cfg(test)]
    pub fn label_of(&self, v: usize) -> Option<u32> {
        self.assigned[v].then_some(self.label_of[v])
    }

    fn assign(&mut self, v: usize, l: u32) {
        debug_assert!(!self.assigned[v]);
        self.assigned[v] = true;
        self.label_of[v] = l;
        self.max_label = Some(self.max_label.map_or(l, |m| m.max(l)));
    }

    /// Assign the smallest valid label `>= floor` to `v` and return it.
    pub fn first_fit_from(&mut self, v: usize, floor: u32) -> u32 {
        // `current_max + 2` is always valid, so the scan window is bounded
        let hi = (self.max_label.map_or(0, |m| m + 2)).max(floor) as usize;
        let mut forbidden = vec![0u64; hi / 64 + 2];
        let mut set = |bit: usize| forbidden[bit / 64] |= 1 << (bit % 64);
        for u in self.g.neighbors(v) {
            if self.assigned[u] {
                let l = self.label_of[u] as usize;
                if l > 0 {
                    set(l - 1);
                }
                set(l);
                set(l + 1);
            }
        }
        for u in self.d2[v].ones() {
            if self.assigned[u] {
                set(self.label_of[u] as usize);
            }
        }
        let mut l = floor as usize;
        loop {
            debug_assert!(l <= hi + 1);
            if forbidden[l / 64] & (1 << (l % 64)) == 0 {
                break;
            }
            l += 1;
        }
        self.assign(v, l as u32);
        l as u32
    }

    /// First-fit a whole block in order; returns (min, max) label placed.
    pub fn place_block(&mut self, vs: &[usize], floor: u32) -> Option<(u32, u32)> {
        let mut lo = u32::MAX;
        let mut hi = 0;
        for &v in vs {
            let l = self.first_fit_from(v, floor);
            lo = lo.min(l);
            hi = hi.max(l);
        }
        (!vs.is_empty()).then_some((lo, hi))
    }

    pub fn into_labelling(self) -> Labelling {
        assert!(self.assigned.iter().all(|&a| a), "layout left vertices unlabelled");
        Labelling::new(self.label_of)
    }
}
