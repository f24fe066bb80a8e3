use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrontError {
    #[error("event {event}: slot {slot} out of range with {live} live strands")]
    SlotOutOfRange {
        event: usize,
        slot: usize,
        live: usize,
    },
    #[error("front word leaves {leftover} strands open at the end")]
    UnbalancedWord { leftover: usize },
    #[error("component index {index} out of range ({count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("linking number requires two distinct components")]
    SameComponent,
    #[error("expected {components} orientation seeds, got {given}")]
    SeedCountMismatch { components: usize, given: usize },
    #[error("operation requires a single-component front, found {count}")]
    MultiComponent { count: usize },
}

/// One Morse event of a front word. Slots are 1-based from the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorseEvent {
    /// Inserts two strands at positions `slot`, `slot + 1`.
    LeftCusp(usize),
    /// Joins and removes the strands at positions `slot`, `slot + 1`.
    RightCusp(usize),
    /// Exchanges the strands at positions `slot`, `slot + 1`.
    Crossing(usize),
}

impl MorseEvent {
    pub fn slot(&self) -> usize {
        match *self {
            MorseEvent::LeftCusp(s) | MorseEvent::RightCusp(s) | MorseEvent::Crossing(s) => s,
        }
    }
}

impl fmt::Display for MorseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorseEvent::LeftCusp(s) => write!(f, "L{s}"),
            MorseEvent::RightCusp(s) => write!(f, "R{s}"),
            MorseEvent::Crossing(s) => write!(f, "X{s}"),
        }
    }
}

/// Parses a whitespace-separated event word such as `"L1 L2 R1 R1"`.
pub fn parse_word(s: &str) -> Result<Vec<MorseEvent>, String> {
    s.split_whitespace()
        .map(|tok| {
            let (kind, num) = tok.split_at(1);
            let slot: usize = num.parse().map_err(|_| format!("bad event `{tok}`"))?;
            match kind {
                "L" => Ok(MorseEvent::LeftCusp(slot)),
                "R" => Ok(MorseEvent::RightCusp(slot)),
                "X" => Ok(MorseEvent::Crossing(slot)),
                _ => Err(format!("bad event `{tok}`")),
            }
        })
        .collect()
}

/// A validated multi-component Legendrian front.
///
/// Construction checks the word, so every `FrontDiagram` value is valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontDiagram {
    events: Vec<MorseEvent>,
    /// Per component: is the upper strand at its first left cusp directed
    /// rightward?
    seeds: Vec<bool>,
    labels: Vec<Option<String>>,
    component_count: usize,
}

/// Component decomposition returned by [`FrontDiagram::components`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Event indices touching each component, in word order. Crossings
    /// between two components appear in both lists.
    pub events: Vec<Vec<usize>>,
}

pub(crate) struct Cusp {
    pub event: usize,
    pub left: bool,
    /// Insertion/removal slot of the cusp.
    pub slot: usize,
    pub upper: usize,
    pub lower: usize,
}

pub(crate) struct CrossingEvent {
    pub event: usize,
    /// Strand descending from `slot` to `slot + 1`; by the frozen front
    /// convention this is the over-strand.
    pub over: usize,
    pub under: usize,
}

/// Full traversal data for a validated front.
pub(crate) struct Traversal {
    pub component_count: usize,
    pub seg_comp: Vec<usize>,
    /// Direction of each strand segment: `true` = rightward.
    pub seg_right: Vec<bool>,
    pub cusps: Vec<Cusp>,
    pub crossings: Vec<CrossingEvent>,
    /// Per component: (event index, slot) of its first left cusp.
    pub first_cusp: Vec<(usize, usize)>,
}

struct WordScan {
    cusps: Vec<Cusp>,
    crossings: Vec<CrossingEvent>,
    seg_count: usize,
    seg_birth_cusp: Vec<usize>,
    seg_death_cusp: Vec<usize>,
}

fn scan_word(events: &[MorseEvent]) -> Result<WordScan, FrontError> {
    let mut stack: Vec<usize> = Vec::new();
    let mut cusps = Vec::new();
    let mut crossings = Vec::new();
    let mut seg_birth_cusp = Vec::new();
    let mut seg_death_cusp = Vec::new();

    for (t, ev) in events.iter().enumerate() {
        let live = stack.len();
        match *ev {
            MorseEvent::LeftCusp(slot) => {
                if slot < 1 || slot > live + 1 {
                    return Err(FrontError::SlotOutOfRange {
                        event: t,
                        slot,
                        live,
                    });
                }
                let a = seg_birth_cusp.len();
                let b = a + 1;
                seg_birth_cusp.push(cusps.len());
                seg_birth_cusp.push(cusps.len());
                seg_death_cusp.push(usize::MAX);
                seg_death_cusp.push(usize::MAX);
                stack.insert(slot - 1, a);
                stack.insert(slot, b);
                cusps.push(Cusp {
                    event: t,
                    left: true,
                    slot,
                    upper: a,
                    lower: b,
                });
            }
            MorseEvent::RightCusp(slot) => {
                if live < 2 || slot < 1 || slot > live - 1 {
                    return Err(FrontError::SlotOutOfRange {
                        event: t,
                        slot,
                        live,
                    });
                }
                let u = stack.remove(slot - 1);
                let v = stack.remove(slot - 1);
                seg_death_cusp[u] = cusps.len();
                seg_death_cusp[v] = cusps.len();
                cusps.push(Cusp {
                    event: t,
                    left: false,
                    slot,
                    upper: u,
                    lower: v,
                });
            }
            MorseEvent::Crossing(slot) => {
                if live < 2 || slot < 1 || slot > live - 1 {
                    return Err(FrontError::SlotOutOfRange {
                        event: t,
                        slot,
                        live,
                    });
                }
                let u = stack[slot - 1];
                let v = stack[slot];
                crossings.push(CrossingEvent {
                    event: t,
                    over: u,
                    under: v,
                });
                stack.swap(slot - 1, slot);
            }
        }
    }
    if !stack.is_empty() {
        return Err(FrontError::UnbalancedWord {
            leftover: stack.len(),
        });
    }
    Ok(WordScan {
        seg_count: seg_birth_cusp.len(),
        cusps,
        crossings,
        seg_birth_cusp,
        seg_death_cusp,
    })
}

/// Union-find over segments joined at cusps; components numbered by the
/// event order of their first left cusp.
fn component_partition(scan: &WordScan) -> (usize, Vec<usize>, Vec<(usize, usize)>) {
    let n = scan.seg_count;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for cusp in &scan.cusps {
        let a = find(&mut parent, cusp.upper);
        let b = find(&mut parent, cusp.lower);
        parent[a] = b;
    }
    // First left cusp per root, in event order.
    let mut comp_of_root: Vec<Option<usize>> = vec![None; n];
    let mut first_cusp = Vec::new();
    let mut seg_comp = vec![usize::MAX; n];
    let mut count = 0;
    for cusp in scan.cusps.iter().filter(|c| c.left) {
        let root = find(&mut parent, cusp.upper);
        if comp_of_root[root].is_none() {
            comp_of_root[root] = Some(count);
            first_cusp.push((cusp.event, cusp.slot));
            count += 1;
        }
    }
    for s in 0..n {
        let root = find(&mut parent, s);
        seg_comp[s] = comp_of_root[root].expect("segment without a left cusp");
    }
    (count, seg_comp, first_cusp)
}

impl FrontDiagram {
    /// The empty front: no events, no components.
    pub fn empty() -> Self {
        FrontDiagram {
            events: Vec::new(),
            seeds: Vec::new(),
            labels: Vec::new(),
            component_count: 0,
        }
    }

    /// Validates a word and builds a front with all orientation seeds set to
    /// `true` (upper strand of each first left cusp directed rightward).
    pub fn from_word(events: Vec<MorseEvent>) -> Result<Self, FrontError> {
        let scan = scan_word(&events)?;
        let (count, _, _) = component_partition(&scan);
        Ok(FrontDiagram {
            events,
            seeds: vec![true; count],
            labels: vec![None; count],
            component_count: count,
        })
    }

    pub fn with_seeds(events: Vec<MorseEvent>, seeds: Vec<bool>) -> Result<Self, FrontError> {
        let mut front = FrontDiagram::from_word(events)?;
        if seeds.len() != front.component_count {
            return Err(FrontError::SeedCountMismatch {
                components: front.component_count,
                given: seeds.len(),
            });
        }
        front.seeds = seeds;
        Ok(front)
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn seed(&self, comp: usize) -> bool {
        self.seeds[comp]
    }

    pub fn seeds(&self) -> &[bool] {
        &self.seeds
    }

    pub fn set_seed(&mut self, comp: usize, rightward: bool) -> Result<(), FrontError> {
        self.check_component(comp)?;
        self.seeds[comp] = rightward;
        Ok(())
    }

    pub fn label(&self, comp: usize) -> Option<&str> {
        self.labels.get(comp).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn set_label(&mut self, comp: usize, label: Option<String>) -> Result<(), FrontError> {
        self.check_component(comp)?;
        self.labels[comp] = label;
        Ok(())
    }

    pub(crate) fn check_component(&self, comp: usize) -> Result<(), FrontError> {
        if comp >= self.component_count {
            return Err(FrontError::ComponentOutOfRange {
                index: comp,
                count: self.component_count,
            });
        }
        Ok(())
    }

    /// `(event index, slot)` of each component's first left cusp, in
    /// component order.
    pub fn component_first_cusps(&self) -> Vec<(usize, usize)> {
        self.traverse().first_cusp
    }

    /// Component decomposition with per-component event membership.
    pub fn components(&self) -> Components {
        let tr = self.traverse();
        let mut events: Vec<Vec<usize>> = vec![Vec::new(); tr.component_count];
        for cusp in &tr.cusps {
            events[tr.seg_comp[cusp.upper]].push(cusp.event);
        }
        for x in &tr.crossings {
            let a = tr.seg_comp[x.over];
            let b = tr.seg_comp[x.under];
            events[a].push(x.event);
            if b != a {
                events[b].push(x.event);
            }
        }
        for list in &mut events {
            list.sort_unstable();
        }
        Components {
            count: tr.component_count,
            events,
        }
    }

    /// Recomputes the full traversal. The word was validated at
    /// construction, so this cannot fail.
    pub(crate) fn traverse(&self) -> Traversal {
        let scan = scan_word(&self.events).expect("validated front");
        let (count, seg_comp, first_cusp) = component_partition(&scan);
        debug_assert_eq!(count, self.component_count);

        // Orient each component: walk the cycle of segments, alternating
        // direction at every cusp.
        let mut seg_right = vec![false; scan.seg_count];
        for comp in 0..count {
            let (ev, _) = first_cusp[comp];
            let cusp = scan
                .cusps
                .iter()
                .find(|c| c.event == ev)
                .expect("first cusp");
            let start = cusp.upper;
            seg_right[start] = self.seeds[comp];
            let mut cur = start;
            loop {
                let cusp_idx = if seg_right[cur] {
                    scan.seg_death_cusp[cur]
                } else {
                    scan.seg_birth_cusp[cur]
                };
                let c = &scan.cusps[cusp_idx];
                let partner = if c.upper == cur { c.lower } else { c.upper };
                if partner == start {
                    break;
                }
                seg_right[partner] = !seg_right[cur];
                cur = partner;
            }
        }

        Traversal {
            component_count: count,
            seg_comp,
            seg_right,
            cusps: scan.cusps,
            crossings: scan.crossings,
            first_cusp,
        }
    }

    pub fn thurston_bennequin(&self, comp: usize) -> Result<i64, FrontError> {
        self.check_component(comp)?;
        let inv = self.all_invariants();
        Ok(inv.tb[comp])
    }

    pub fn rotation(&self, comp: usize) -> Result<i64, FrontError> {
        self.check_component(comp)?;
        let inv = self.all_invariants();
        Ok(inv.rot[comp])
    }

    pub fn writhe(&self, comp: usize) -> Result<i64, FrontError> {
        self.check_component(comp)?;
        let inv = self.all_invariants();
        Ok(inv.writhe[comp])
    }

    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64, FrontError> {
        self.check_component(a)?;
        self.check_component(b)?;
        if a == b {
            return Err(FrontError::SameComponent);
        }
        let inv = self.all_invariants();
        Ok(inv.lk[a][b])
    }

    /// Computes tb, rot, writhe and the linking matrix in one pass.
    pub(crate) fn all_invariants(&self) -> FrontInvariants {
        let tr = self.traverse();
        let n = tr.component_count;
        let mut cusp_count = vec![0i64; n];
        let mut down_count = vec![0i64; n];
        let mut writhe = vec![0i64; n];
        let mut lk = vec![vec![0i64; n]; n];

        for cusp in &tr.cusps {
            let comp = tr.seg_comp[cusp.upper];
            cusp_count[comp] += 1;
            // A cusp is a down-cusp when the traversal descends through it:
            // the upper branch is directed into the cusp point.
            let upper_right = tr.seg_right[cusp.upper];
            let down = if cusp.left { !upper_right } else { upper_right };
            if down {
                down_count[comp] += 1;
            }
        }
        for x in &tr.crossings {
            // Frozen convention: the strand descending in the page is the
            // over-strand, and with it the crossing sign reduces to the
            // product of the two horizontal directions.
            let sign = if tr.seg_right[x.over] == tr.seg_right[x.under] {
                1
            } else {
                -1
            };
            let a = tr.seg_comp[x.over];
            let b = tr.seg_comp[x.under];
            if a == b {
                writhe[a] += sign;
            } else {
                lk[a][b] += sign;
                lk[b][a] += sign;
            }
        }
        let tb: Vec<i64> = (0..n).map(|c| writhe[c] - cusp_count[c] / 2).collect();
        let rot: Vec<i64> = (0..n)
            .map(|c| down_count[c] - cusp_count[c] / 2)
            .collect();
        for row in &mut lk {
            for entry in row.iter_mut() {
                debug_assert_eq!(*entry % 2, 0, "odd inter-component crossing sum");
                *entry /= 2;
            }
        }
        FrontInvariants {
            tb,
            rot,
            writhe,
            lk,
        }
    }
}

pub(crate) struct FrontInvariants {
    pub tb: Vec<i64>,
    pub rot: Vec<i64>,
    pub writhe: Vec<i64>,
    pub lk: Vec<Vec<i64>>,
}
