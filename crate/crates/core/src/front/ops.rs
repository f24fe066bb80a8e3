use super::diagram::{FrontDiagram, FrontError, MorseEvent};

/// Zigzag type for stabilization, named by the cusps it adds: `Down` adds
/// two down-cusps (rot + 1), `Up` adds two up-cusps (rot - 1). Either way
/// tb drops by one and all linking numbers are unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Zigzag {
    Up,
    Down,
}

impl FrontDiagram {
    /// Inserts one zigzag into the component right after its first left
    /// cusp. The zigzag has zero net effect on the strand stack, so the
    /// rest of the word is untouched.
    pub fn stabilize(&self, comp: usize, sign: Zigzag) -> Result<FrontDiagram, FrontError> {
        self.check_component(comp)?;
        let tr = self.traverse();
        let (event, slot) = tr.first_cusp[comp];
        let rightward = self.seed(comp);
        // On a rightward strand at slot i, [L(i+1), R(i)] steps the strand
        // down through two down-cusps; on a leftward strand the same word
        // yields two up-cusps, so the insertion flips with the direction.
        let type_a = rightward == (sign == Zigzag::Down);
        let zig = if type_a {
            [MorseEvent::LeftCusp(slot + 1), MorseEvent::RightCusp(slot)]
        } else {
            [MorseEvent::LeftCusp(slot), MorseEvent::RightCusp(slot + 1)]
        };
        let mut events = self.events().to_vec();
        events.splice(event + 1..event + 1, zig);
        let mut out = FrontDiagram::with_seeds(events, self.seeds().to_vec())
            .expect("zigzag insertion keeps the word valid");
        out.copy_labels_from(self);
        Ok(out)
    }

    /// Adds a Legendrian push-off of the component: a parallel copy running
    /// immediately below it. The copy becomes component `comp + 1` (its
    /// first left cusp directly follows the original's) and later
    /// components shift up by one.
    ///
    /// Contract: `tb(copy) = tb`, `rot(copy) = rot`, `lk(copy, original) =
    /// tb(original)`, and `lk(copy, other) = lk(original, other)`.
    pub fn push_off(&self, comp: usize) -> Result<FrontDiagram, FrontError> {
        self.check_component(comp)?;
        let tr = self.traverse();
        // Live strand flags for the original word: true if the strand at
        // that stack position belongs to the doubled component.
        let mut flags: Vec<bool> = Vec::new();
        let mut out: Vec<MorseEvent> = Vec::with_capacity(self.events().len() * 3);
        let mut cusp_iter = tr.cusps.iter();
        let mut cross_iter = tr.crossings.iter().peekable();

        let new_slot = |flags: &[bool], old_slot: usize| -> usize {
            1 + flags[..old_slot - 1]
                .iter()
                .map(|&f| if f { 2 } else { 1 })
                .sum::<usize>()
        };

        for (t, ev) in self.events().iter().enumerate() {
            match *ev {
                MorseEvent::LeftCusp(slot) => {
                    let cusp = cusp_iter.next().expect("cusp in sync");
                    debug_assert!(cusp.left && cusp.event == t);
                    let doubled = tr.seg_comp[cusp.upper] == comp;
                    let ns = new_slot(&flags, slot);
                    if doubled {
                        // Copy cusp nested below, then one crossing brings
                        // the original lower branch above the copy's upper.
                        out.push(MorseEvent::LeftCusp(ns));
                        out.push(MorseEvent::LeftCusp(ns + 2));
                        out.push(MorseEvent::Crossing(ns + 1));
                    } else {
                        out.push(MorseEvent::LeftCusp(ns));
                    }
                    flags.insert(slot - 1, doubled);
                    flags.insert(slot, doubled);
                }
                MorseEvent::RightCusp(slot) => {
                    let cusp = cusp_iter.next().expect("cusp in sync");
                    debug_assert!(!cusp.left && cusp.event == t);
                    let doubled = tr.seg_comp[cusp.upper] == comp;
                    let ns = new_slot(&flags, slot);
                    if doubled {
                        out.push(MorseEvent::Crossing(ns + 1));
                        out.push(MorseEvent::RightCusp(ns));
                        out.push(MorseEvent::RightCusp(ns));
                    } else {
                        out.push(MorseEvent::RightCusp(ns));
                    }
                    flags.remove(slot - 1);
                    flags.remove(slot - 1);
                }
                MorseEvent::Crossing(slot) => {
                    let x = cross_iter.next().expect("crossing in sync");
                    debug_assert_eq!(x.event, t);
                    let upper = flags[slot - 1];
                    let lower = flags[slot];
                    let ns = new_slot(&flags, slot);
                    match (upper, lower) {
                        (true, true) => {
                            // 2-cable block [p p' q q'] -> [q q' p p'].
                            out.push(MorseEvent::Crossing(ns + 1));
                            out.push(MorseEvent::Crossing(ns));
                            out.push(MorseEvent::Crossing(ns + 2));
                            out.push(MorseEvent::Crossing(ns + 1));
                        }
                        (true, false) => {
                            out.push(MorseEvent::Crossing(ns + 1));
                            out.push(MorseEvent::Crossing(ns));
                        }
                        (false, true) => {
                            out.push(MorseEvent::Crossing(ns));
                            out.push(MorseEvent::Crossing(ns + 1));
                        }
                        (false, false) => {
                            out.push(MorseEvent::Crossing(ns));
                        }
                    }
                    flags.swap(slot - 1, slot);
                }
            }
        }

        let mut seeds = self.seeds().to_vec();
        seeds.insert(comp + 1, seeds[comp]);
        let mut labels = self.labels().to_vec();
        labels.insert(comp + 1, None);
        let mut front = FrontDiagram::with_seeds(out, seeds)
            .expect("push-off rewriting keeps the word valid");
        for (i, label) in labels.into_iter().enumerate() {
            front.set_label(i, label).unwrap();
        }
        Ok(front)
    }

    /// Reverses the orientation of one component: tb unchanged, rot negated,
    /// linking numbers involving the component negated.
    pub fn reverse_orientation(&self, comp: usize) -> Result<FrontDiagram, FrontError> {
        self.check_component(comp)?;
        let mut out = self.clone();
        let seed = out.seed(comp);
        out.set_seed(comp, !seed)?;
        Ok(out)
    }

    /// Rotates the whole diagram by 180 degrees in the page, keeping the
    /// orientations of the knots: tb and lk unchanged, every rot negated.
    ///
    /// Returns the rotated front together with the component permutation,
    /// `perm[new] = old`.
    pub fn mirror_rotate180(&self) -> (FrontDiagram, Vec<usize>) {
        let tr = self.traverse();
        let n = self.events().len();
        // Live strand counts before each event.
        let mut live_before = Vec::with_capacity(n);
        let mut live = 0usize;
        for ev in self.events() {
            live_before.push(live);
            match ev {
                MorseEvent::LeftCusp(_) => live += 2,
                MorseEvent::RightCusp(_) => live -= 2,
                MorseEvent::Crossing(_) => {}
            }
        }
        let mut out = Vec::with_capacity(n);
        for t in (0..n).rev() {
            out.push(match self.events()[t] {
                // The pair occupies slots (i, i+1) of the stack of size s at
                // the event; rotating maps slot j to s + 1 - j.
                MorseEvent::LeftCusp(i) => MorseEvent::RightCusp(live_before[t] + 2 - i),
                MorseEvent::RightCusp(i) => MorseEvent::LeftCusp(live_before[t] - i),
                MorseEvent::Crossing(i) => MorseEvent::Crossing(live_before[t] - i),
            });
        }
        let mut front = FrontDiagram::from_word(out).expect("rotation keeps the word valid");
        debug_assert_eq!(front.component_count(), self.component_count());

        // New left cusps are images of old right cusps; the new upper branch
        // is the image of the old lower one, with its direction flipped.
        let new_tr = front.traverse();
        let mut perm = vec![0usize; front.component_count()];
        let mut seeds = vec![true; front.component_count()];
        for (new_comp, &(ev, _)) in new_tr.first_cusp.iter().enumerate() {
            let old_event = n - 1 - ev;
            let old_cusp = tr
                .cusps
                .iter()
                .find(|c| c.event == old_event)
                .expect("mirror image of a right cusp");
            debug_assert!(!old_cusp.left);
            perm[new_comp] = tr.seg_comp[old_cusp.lower];
            seeds[new_comp] = !tr.seg_right[old_cusp.lower];
        }
        for (new_comp, &old_comp) in perm.iter().enumerate() {
            front.set_seed(new_comp, seeds[new_comp]).unwrap();
            front
                .set_label(new_comp, self.labels()[old_comp].clone())
                .unwrap();
        }
        (front, perm)
    }

    /// Places two fronts side by side; no new crossings, all inter-part
    /// linking numbers are zero.
    pub fn disjoint_union(&self, other: &FrontDiagram) -> FrontDiagram {
        let mut events = self.events().to_vec();
        events.extend_from_slice(other.events());
        let mut seeds = self.seeds().to_vec();
        seeds.extend_from_slice(other.seeds());
        let mut front =
            FrontDiagram::with_seeds(events, seeds).expect("concatenation of valid words");
        for (i, label) in self
            .labels()
            .iter()
            .chain(other.labels().iter())
            .enumerate()
        {
            front.set_label(i, label.clone()).unwrap();
        }
        front
    }

    fn copy_labels_from(&mut self, other: &FrontDiagram) {
        for (i, label) in other.labels().to_vec().into_iter().enumerate() {
            self.set_label(i, label).unwrap();
        }
    }
}
