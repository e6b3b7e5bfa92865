//! Boolean algebra, projection, determinization and minimization for
//! multi-track automata.
//!
//! Lsd-first padding discipline: trailing all-zero tuples must not change
//! acceptance. Product, complement and track re-wiring preserve this on
//! their own; projection does not (the witness digit string for the
//! removed track may be longer than the remaining tracks), so projection
//! performs an explicit zero-closure pass before determinizing.

use super::{
    alphabet_size, digits_of, letter_of, MultiTrackDfa, MultiTrackDfao, StateId, NO_STATE,
};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Cap on live states during potentially exploding constructions.
///
/// Subset construction and products stop with [`Error::StateCap`] once the
/// cap is hit. The per-state transition row also counts against a cell
/// budget of `64 * states`, so wide-alphabet intermediates degrade
/// predictably instead of exhausting memory.
#[derive(Debug, Clone, Copy)]
pub struct StateCap {
    pub states: usize,
}

impl Default for StateCap {
    fn default() -> Self {
        StateCap { states: 1_000_000 }
    }
}

impl StateCap {
    pub fn new(states: usize) -> Self {
        StateCap { states }
    }

    fn cells(&self) -> usize {
        self.states.saturating_mul(64)
    }

    fn check(&self, states: usize, alpha: usize, what: &str) -> Result<()> {
        if states > self.states {
            return Err(Error::StateCap(format!(
                "{what}: {states} live states (cap {})",
                self.states
            )));
        }
        if states.saturating_mul(alpha) > self.cells() {
            return Err(Error::StateCap(format!(
                "{what}: {states} states x {alpha} letters exceeds the cell budget"
            )));
        }
        Ok(())
    }
}

/// Boolean connective for [`product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    AndNot,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Xor => a != b,
            BoolOp::AndNot => a && !b,
        }
    }
}

/// Product construction: accepts `v` iff `op(a accepts v, b accepts v)`.
/// The result is minimized.
pub fn product(
    a: &MultiTrackDfa,
    b: &MultiTrackDfa,
    op: BoolOp,
    cap: &StateCap,
) -> Result<MultiTrackDfa> {
    if a.track_bases() != b.track_bases() {
        return Err(Error::BaseMismatch(format!(
            "product of {:?} and {:?}",
            a.track_bases(),
            b.track_bases()
        )));
    }
    let alpha = a.alphabet();
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut trans: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::new();

    let start = (a.initial(), b.initial());
    ids.insert(start, 0);
    pairs.push(start);
    queue.push_back(start);

    while let Some((qa, qb)) = queue.pop_front() {
        cap.check(pairs.len(), alpha, "product")?;
        for letter in 0..alpha {
            let next = (a.step(qa, letter), b.step(qb, letter));
            let id = *ids.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(next);
                (pairs.len() - 1) as StateId
            });
            trans.push(id);
        }
    }

    let accepting = pairs
        .iter()
        .map(|&(qa, qb)| op.apply(a.is_accepting(qa), b.is_accepting(qb)))
        .collect();
    let dfa = MultiTrackDfa::new(a.track_bases().to_vec(), 0, accepting, trans)?;
    Ok(minimize(&dfa))
}

/// Flips acceptance. Sound because recognizers are total.
pub fn complement(a: &MultiTrackDfa) -> MultiTrackDfa {
    let mut out = a.clone();
    for acc in &mut out.accepting {
        *acc = !*acc;
    }
    out
}

/// Rewires tracks: `mapping[i]` names the track of the result that old
/// track `i` reads. Unmapped result tracks are unconstrained, two old
/// tracks mapped to the same result track read the same digit, so this
/// one primitive covers cylindrification, permutation and track merging.
pub fn map_tracks(
    a: &MultiTrackDfa,
    new_bases: Vec<u32>,
    mapping: &[usize],
) -> Result<MultiTrackDfa> {
    if mapping.len() != a.num_tracks() {
        return Err(Error::Precondition("mapping arity mismatch".into()));
    }
    for (i, &m) in mapping.iter().enumerate() {
        if m >= new_bases.len() {
            return Err(Error::TrackIndex {
                index: m,
                tracks: new_bases.len(),
            });
        }
        if new_bases[m] != a.track_bases()[i] {
            return Err(Error::BaseMismatch(format!(
                "track {i} (base {}) mapped onto base {}",
                a.track_bases()[i],
                new_bases[m]
            )));
        }
    }
    let alpha_new = alphabet_size(&new_bases);
    let n = a.num_states();
    let mut trans = Vec::with_capacity(n * alpha_new);
    let mut old_digits = vec![0u32; a.num_tracks()];
    for q in 0..n as StateId {
        for letter in 0..alpha_new {
            let new_digits = digits_of(&new_bases, letter);
            for (i, &m) in mapping.iter().enumerate() {
                old_digits[i] = new_digits[m];
            }
            trans.push(a.step(q, letter_of(a.track_bases(), &old_digits)));
        }
    }
    MultiTrackDfa::new(new_bases, a.initial(), a.accepting.clone(), trans)
}

/// Inserts an unconstrained track at `index`.
pub fn add_track(a: &MultiTrackDfa, index: usize, base: u32) -> Result<MultiTrackDfa> {
    if index > a.num_tracks() {
        return Err(Error::TrackIndex {
            index,
            tracks: a.num_tracks(),
        });
    }
    let mut new_bases: Vec<u32> = a.track_bases().to_vec();
    new_bases.insert(index, base);
    let mapping: Vec<usize> = (0..a.num_tracks())
        .map(|i| if i < index { i } else { i + 1 })
        .collect();
    map_tracks(a, new_bases, &mapping)
}

/// Reorders tracks: result track `perm[i]` is old track `i`.
pub fn permute_tracks(a: &MultiTrackDfa, perm: &[usize]) -> Result<MultiTrackDfa> {
    let mut seen = vec![false; a.num_tracks()];
    for &p in perm {
        if p >= a.num_tracks() || seen[p] {
            return Err(Error::Precondition("not a permutation".into()));
        }
        seen[p] = true;
    }
    let mut new_bases = vec![0u32; a.num_tracks()];
    for (i, &p) in perm.iter().enumerate() {
        new_bases[p] = a.track_bases()[i];
    }
    map_tracks(a, new_bases, perm)
}

/// Existential projection of one track (public form; a single-track
/// automaton cannot be projected here, the prover uses [`project_any`]
/// when eliminating the last variable).
pub fn project(a: &MultiTrackDfa, track: usize, cap: &StateCap) -> Result<MultiTrackDfa> {
    if a.num_tracks() < 2 {
        return Err(Error::TooFewTracks {
            need: 2,
            have: a.num_tracks(),
        });
    }
    project_any(a, track, cap)
}

/// Existential projection: accepts `v` iff some digit string on the
/// removed track, possibly longer than `v` continued with zero tuples on
/// the remaining tracks, makes `a` accept. Implemented as nondeterministic
/// projection, zero-closure of the accepting set, subset construction and
/// minimization.
pub(crate) fn project_any(
    a: &MultiTrackDfa,
    track: usize,
    cap: &StateCap,
) -> Result<MultiTrackDfa> {
    if track >= a.num_tracks() {
        return Err(Error::TrackIndex {
            index: track,
            tracks: a.num_tracks(),
        });
    }
    let mut rem_bases: Vec<u32> = a.track_bases().to_vec();
    let removed_base = rem_bases.remove(track);
    let n = a.num_states();

    // letters of the full alphabet sorted by (remaining letter, removed digit)
    let rem_alpha = alphabet_size(&rem_bases);
    let mut embed = vec![0usize; rem_alpha * removed_base as usize];
    for rem_letter in 0..rem_alpha {
        let mut digits = digits_of(&rem_bases, rem_letter);
        digits.insert(track, 0);
        for d in 0..removed_base {
            digits[track] = d;
            embed[rem_letter * removed_base as usize + d as usize] =
                letter_of(a.track_bases(), &digits);
        }
    }

    // Zero-closure: a state is accepting for the NFA if some path of
    // remaining-zero tuples (removed digit arbitrary) reaches acceptance.
    let zero_rem = 0usize; // all-zero remaining tuple has letter index 0
    let mut good: Vec<bool> = (0..n).map(|q| a.accepting[q]).collect();
    let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for q in 0..n as StateId {
        for d in 0..removed_base as usize {
            let to = a.step(q, embed[zero_rem * removed_base as usize + d]);
            rev[to as usize].push(q);
        }
    }
    let mut queue: VecDeque<StateId> = (0..n as StateId).filter(|&q| good[q as usize]).collect();
    while let Some(q) = queue.pop_front() {
        for &p in &rev[q as usize] {
            if !good[p as usize] {
                good[p as usize] = true;
                queue.push_back(p);
            }
        }
    }

    // Subset construction over the remaining alphabet.
    let dfa = determinize(
        rem_bases,
        &[a.initial()],
        |q| good[q as usize],
        |q, rem_letter, out| {
            for d in 0..removed_base as usize {
                out.push(a.step(q, embed[rem_letter * removed_base as usize + d]));
            }
        },
        cap,
        "projection",
    )?;
    Ok(minimize(&dfa))
}

/// Generic subset construction. `successors` pushes every NFA successor of
/// `q` under `letter`.
pub(crate) fn determinize(
    bases: Vec<u32>,
    initial: &[StateId],
    is_accepting: impl Fn(StateId) -> bool,
    successors: impl Fn(StateId, usize, &mut Vec<StateId>),
    cap: &StateCap,
    what: &str,
) -> Result<MultiTrackDfa> {
    let alpha = alphabet_size(&bases);
    let mut start: Vec<StateId> = initial.to_vec();
    start.sort_unstable();
    start.dedup();

    let mut ids: HashMap<Box<[StateId]>, StateId> = HashMap::new();
    let mut subsets: Vec<Box<[StateId]>> = Vec::new();
    let mut trans: Vec<StateId> = Vec::new();
    let mut queue: VecDeque<StateId> = VecDeque::new();

    let boxed: Box<[StateId]> = start.into();
    ids.insert(boxed.clone(), 0);
    subsets.push(boxed);
    queue.push_back(0);

    let mut succ = Vec::new();
    while let Some(id) = queue.pop_front() {
        cap.check(subsets.len(), alpha, what)?;
        for letter in 0..alpha {
            succ.clear();
            for &q in subsets[id as usize].iter() {
                successors(q, letter, &mut succ);
            }
            succ.sort_unstable();
            succ.dedup();
            let key: Box<[StateId]> = succ.as_slice().into();
            let next = match ids.get(&key) {
                Some(&n) => n,
                None => {
                    let n = subsets.len() as StateId;
                    ids.insert(key.clone(), n);
                    subsets.push(key);
                    queue.push_back(n);
                    n
                }
            };
            trans.push(next);
        }
    }

    let accepting: Vec<bool> = subsets
        .iter()
        .map(|s| s.iter().any(|&q| is_accepting(q)))
        .collect();
    MultiTrackDfa::new(bases, 0, accepting, trans)
}

/// Hopcroft partition refinement preceded by a reachability trim; states
/// of the result are renumbered in BFS order from the initial state so
/// equal inputs give identical outputs.
pub fn minimize(a: &MultiTrackDfa) -> MultiTrackDfa {
    let alpha = a.alphabet();
    // reachable trim
    let mut order: Vec<StateId> = vec![a.initial()];
    let mut seen = vec![false; a.num_states()];
    seen[a.initial() as usize] = true;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for letter in 0..alpha {
            let t = a.step(q, letter);
            if !seen[t as usize] {
                seen[t as usize] = true;
                order.push(t);
            }
        }
    }
    let mut dense = vec![StateId::MAX; a.num_states()];
    for (i, &q) in order.iter().enumerate() {
        dense[q as usize] = i as StateId;
    }
    let n = order.len();
    let mut trans = Vec::with_capacity(n * alpha);
    let mut accepting = Vec::with_capacity(n);
    for &q in &order {
        accepting.push(a.accepting[q as usize]);
        for letter in 0..alpha {
            trans.push(dense[a.step(q, letter) as usize]);
        }
    }

    let classes = hopcroft(n, alpha, &trans, &accepting);
    let num_classes = classes.iter().map(|&c| c as usize + 1).max().unwrap_or(1);

    // one representative per class
    let mut rep = vec![StateId::MAX; num_classes];
    for q in 0..n {
        let c = classes[q] as usize;
        if rep[c] == StateId::MAX {
            rep[c] = q as StateId;
        }
    }
    let mut min_trans = Vec::with_capacity(num_classes * alpha);
    let mut min_acc = Vec::with_capacity(num_classes);
    for c in 0..num_classes {
        let q = rep[c] as usize;
        min_acc.push(accepting[q]);
        for letter in 0..alpha {
            min_trans.push(classes[trans[q * alpha + letter] as usize]);
        }
    }
    let min = MultiTrackDfa::new(
        a.track_bases().to_vec(),
        classes[0], // state 0 is the (renumbered) initial
        min_acc,
        min_trans,
    )
    .expect("minimization produces a well-formed automaton");
    renumber_bfs(&min)
}

/// Hopcroft's algorithm; returns the class of each state.
fn hopcroft(n: usize, alpha: usize, trans: &[StateId], accepting: &[bool]) -> Vec<StateId> {
    if n == 0 {
        return Vec::new();
    }
    // inverse transitions in CSR form, per letter
    let mut counts = vec![0u32; n * alpha];
    for q in 0..n {
        for letter in 0..alpha {
            let t = trans[q * alpha + letter] as usize;
            counts[letter * n + t] += 1;
        }
    }
    let mut starts = vec![0u32; n * alpha + 1];
    for i in 0..n * alpha {
        starts[i + 1] = starts[i] + counts[i];
    }
    let mut fill = starts.clone();
    let mut preimage = vec![0 as StateId; n * alpha];
    for q in 0..n {
        for letter in 0..alpha {
            let t = trans[q * alpha + letter] as usize;
            let slot = &mut fill[letter * n + t];
            preimage[*slot as usize] = q as StateId;
            *slot += 1;
        }
    }

    // partition as an indexed family of blocks
    let mut block_of: Vec<u32> = accepting.iter().map(|&a| a as u32).collect();
    let mut blocks: Vec<Vec<StateId>> = vec![Vec::new(), Vec::new()];
    for q in 0..n {
        blocks[block_of[q] as usize].push(q as StateId);
    }
    if blocks[1].is_empty() || blocks[0].is_empty() {
        let nonempty = if blocks[0].is_empty() { 1 } else { 0 };
        blocks = vec![std::mem::take(&mut blocks[nonempty])];
        for b in block_of.iter_mut() {
            *b = 0;
        }
    }

    let mut worklist: VecDeque<(u32, usize)> = VecDeque::new();
    let mut on_list: Vec<bool> = Vec::new();
    let list_idx = |b: u32, letter: usize, alpha: usize| b as usize * alpha + letter;
    for b in 0..blocks.len() as u32 {
        for letter in 0..alpha {
            worklist.push_back((b, letter));
        }
    }
    on_list.resize(blocks.len() * alpha, true);

    let mut in_x: Vec<bool> = vec![false; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut moved: Vec<Vec<StateId>> = Vec::new();

    while let Some((splitter, letter)) = worklist.pop_front() {
        on_list[list_idx(splitter, letter, alpha)] = false;
        // X = preimage of the splitter block under `letter`
        touched.clear();
        let mut x_members: Vec<StateId> = Vec::new();
        for &t in &blocks[splitter as usize] {
            let lo = starts[letter * n + t as usize] as usize;
            let hi = starts[letter * n + t as usize + 1] as usize;
            x_members.extend_from_slice(&preimage[lo..hi]);
        }
        for &q in &x_members {
            if !in_x[q as usize] {
                in_x[q as usize] = true;
                let b = block_of[q as usize];
                if moved.len() <= b as usize {
                    moved.resize_with(blocks.len(), Vec::new);
                }
                if moved[b as usize].is_empty() {
                    touched.push(b);
                }
                moved[b as usize].push(q);
            }
        }
        for &b in &touched {
            let hit = std::mem::take(&mut moved[b as usize]);
            if hit.len() == blocks[b as usize].len() {
                continue; // block entirely inside X: no split
            }
            // split block b into (kept = b \ X) and (new = hit)
            let kept: Vec<StateId> = blocks[b as usize]
                .iter()
                .copied()
                .filter(|&q| !in_x[q as usize])
                .collect();
            let new_id = blocks.len() as u32;
            for &q in &hit {
                block_of[q as usize] = new_id;
            }
            blocks[b as usize] = kept;
            blocks.push(hit);
            on_list.resize(blocks.len() * alpha, false);
            moved.resize_with(blocks.len(), Vec::new);
            // queue the smaller part for every letter; if (b, l) is already
            // queued the new block must be queued too
            let small = if blocks[b as usize].len() <= blocks[new_id as usize].len() {
                b
            } else {
                new_id
            };
            for l in 0..alpha {
                if on_list[list_idx(b, l, alpha)] {
                    if !on_list[list_idx(new_id, l, alpha)] {
                        on_list[list_idx(new_id, l, alpha)] = true;
                        worklist.push_back((new_id, l));
                    }
                } else if !on_list[list_idx(small, l, alpha)] {
                    on_list[list_idx(small, l, alpha)] = true;
                    worklist.push_back((small, l));
                }
            }
        }
        for q in x_members {
            in_x[q as usize] = false;
        }
    }
    block_of
}

/// BFS renumbering from the initial state for canonical state order.
fn renumber_bfs(a: &MultiTrackDfa) -> MultiTrackDfa {
    let alpha = a.alphabet();
    let mut order = vec![a.initial()];
    let mut dense = vec![StateId::MAX; a.num_states()];
    dense[a.initial() as usize] = 0;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for letter in 0..alpha {
            let t = a.step(q, letter);
            if dense[t as usize] == StateId::MAX {
                dense[t as usize] = order.len() as StateId;
                order.push(t);
            }
        }
    }
    let mut trans = Vec::with_capacity(order.len() * alpha);
    let mut accepting = Vec::with_capacity(order.len());
    for &q in &order {
        accepting.push(a.accepting[q as usize]);
        for letter in 0..alpha {
            trans.push(dense[a.step(q, letter) as usize]);
        }
    }
    MultiTrackDfa::new(a.track_bases().to_vec(), 0, accepting, trans).unwrap()
}

/// Zero-reach closure: make states accepting when padding alone reaches
/// acceptance. Deterministic automata only need to chase the zero letter.
fn close_zero_reach(a: &MultiTrackDfa) -> MultiTrackDfa {
    let mut out = a.clone();
    let zero = 0usize;
    for q in 0..a.num_states() as StateId {
        if out.accepting[q as usize] {
            continue;
        }
        let mut cur = q;
        let mut seen = vec![q];
        loop {
            cur = a.step(cur, zero);
            if a.accepting[cur as usize] {
                out.accepting[q as usize] = true;
                break;
            }
            if seen.contains(&cur) {
                break;
            }
            seen.push(cur);
        }
    }
    out
}

/// Trim closure: acceptance of `w` is redefined as acceptance of `w` with
/// trailing zero tuples removed. Tracks the state at the last nonzero
/// tuple alongside the current state.
fn close_trim(a: &MultiTrackDfa, cap: &StateCap) -> Result<MultiTrackDfa> {
    let alpha = a.alphabet();
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = Vec::new();
    let mut trans = Vec::new();
    let mut queue = VecDeque::new();
    let start = (a.initial(), a.initial());
    ids.insert(start, 0);
    pairs.push(start);
    queue.push_back(start);
    while let Some((cur, last)) = queue.pop_front() {
        cap.check(pairs.len(), alpha, "padding normalization")?;
        for letter in 0..alpha {
            let next_cur = a.step(cur, letter);
            let next = if letter == 0 {
                (next_cur, last)
            } else {
                (next_cur, next_cur)
            };
            let id = *ids.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(next);
                (pairs.len() - 1) as StateId
            });
            trans.push(id);
        }
    }
    let accepting = pairs.iter().map(|&(_, last)| a.accepting[last as usize]).collect();
    MultiTrackDfa::new(a.track_bases().to_vec(), 0, accepting, trans)
}

/// Enforces padding stability: acceptance becomes a function of the value
/// tuple (read off at the last nonzero tuple, with zero-reach applied
/// first so too-short paddings are also accepted). Identity on automata
/// that are already padding-stable, up to minimization.
pub fn normalize_padding(a: &MultiTrackDfa, cap: &StateCap) -> Result<MultiTrackDfa> {
    let closed = close_trim(&close_zero_reach(a), cap)?;
    let m = minimize(&closed);
    debug_assert!(is_padding_stable(&m));
    Ok(m)
}

/// Checks that appending one zero tuple never changes acceptance.
pub fn is_padding_stable(a: &MultiTrackDfa) -> bool {
    (0..a.num_states() as StateId).all(|q| a.accepting[a.step(q, 0) as usize] == a.accepting[q as usize])
}

/// Language emptiness (for padding-stable automata this is also value-set
/// emptiness).
pub fn is_empty(a: &MultiTrackDfa) -> bool {
    let alpha = a.alphabet();
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::from([a.initial()]);
    seen[a.initial() as usize] = true;
    while let Some(q) = queue.pop_front() {
        if a.accepting[q as usize] {
            return false;
        }
        for letter in 0..alpha {
            let t = a.step(q, letter);
            if !seen[t as usize] {
                seen[t as usize] = true;
                queue.push_back(t);
            }
        }
    }
    true
}

/// Language equivalence via emptiness of the symmetric difference.
pub fn equivalent(a: &MultiTrackDfa, b: &MultiTrackDfa) -> Result<bool> {
    let diff = product(a, b, BoolOp::Xor, &StateCap::default())?;
    Ok(is_empty(&diff))
}

/// Shortest accepted digit-tuple word, as value tuples, if any. Useful as
/// a witness in reports.
pub fn shortest_accepted(a: &MultiTrackDfa) -> Option<Vec<u64>> {
    let alpha = a.alphabet();
    let mut prev: Vec<Option<(StateId, usize)>> = vec![None; a.num_states()];
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::from([a.initial()]);
    seen[a.initial() as usize] = true;
    let mut hit = None;
    'bfs: while let Some(q) = queue.pop_front() {
        if a.accepting[q as usize] {
            hit = Some(q);
            break 'bfs;
        }
        for letter in 0..alpha {
            let t = a.step(q, letter);
            if !seen[t as usize] {
                seen[t as usize] = true;
                prev[t as usize] = Some((q, letter));
                queue.push_back(t);
            }
        }
    }
    let mut q = hit?;
    let mut letters = Vec::new();
    while let Some((p, letter)) = prev[q as usize] {
        letters.push(letter);
        q = p;
    }
    letters.reverse();
    let mut values = vec![0u64; a.num_tracks()];
    let mut weight = vec![1u64; a.num_tracks()];
    for letter in letters {
        let digits = digits_of(a.track_bases(), letter);
        for i in 0..values.len() {
            values[i] += digits[i] as u64 * weight[i];
            weight[i] *= a.track_bases()[i] as u64;
        }
    }
    Some(values)
}

/// All accepted value tuples whose padded digit length is at most
/// `max_len`, deduplicated by value and sorted. Walks only paths that can
/// still reach acceptance, so sparse languages enumerate cheaply.
pub fn enumerate(a: &MultiTrackDfa, max_len: usize) -> Vec<Vec<u64>> {
    let alpha = a.alphabet();
    // states that can reach acceptance
    let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); a.num_states()];
    for q in 0..a.num_states() as StateId {
        for letter in 0..alpha {
            rev[a.step(q, letter) as usize].push(q);
        }
    }
    let mut productive = vec![false; a.num_states()];
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for q in 0..a.num_states() as StateId {
        if a.accepting[q as usize] {
            productive[q as usize] = true;
            queue.push_back(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        for &p in &rev[q as usize] {
            if !productive[p as usize] {
                productive[p as usize] = true;
                queue.push_back(p);
            }
        }
    }

    // positional weight of depth d on track i is base_i^d
    fn walk(
        a: &MultiTrackDfa,
        q: StateId,
        depth: usize,
        max_len: usize,
        weights: &mut [u64],
        values: &mut [u64],
        productive: &[bool],
        out: &mut BTreeSet<Vec<u64>>,
    ) {
        if a.is_accepting(q) {
            out.insert(values.to_vec());
        }
        if depth == max_len {
            return;
        }
        for letter in 0..a.alphabet() {
            let t = a.step(q, letter);
            if !productive[t as usize] {
                continue;
            }
            let digits = digits_of(a.track_bases(), letter);
            for i in 0..values.len() {
                values[i] += digits[i] as u64 * weights[i];
                weights[i] *= a.track_bases()[i] as u64;
            }
            walk(a, t, depth + 1, max_len, weights, values, productive, out);
            for i in 0..values.len() {
                weights[i] /= a.track_bases()[i] as u64;
                values[i] -= digits[i] as u64 * weights[i];
            }
        }
    }

    let mut out = BTreeSet::new();
    let mut values = vec![0u64; a.num_tracks()];
    let mut weights = vec![1u64; a.num_tracks()];
    if productive[a.initial() as usize] {
        walk(
            a,
            a.initial(),
            0,
            max_len,
            &mut weights,
            &mut values,
            &productive,
            &mut out,
        );
    }
    out.into_iter().collect()
}

/// The recognizer for "output of `m` equals `v`": runs that leave the
/// table land in an explicit dead state and reject.
pub fn output_dfa(m: &MultiTrackDfao, v: u32) -> MultiTrackDfa {
    let n = m.num_states();
    let alpha = m.alphabet();
    let dead = n as StateId;
    let mut trans = Vec::with_capacity((n + 1) * alpha);
    for q in 0..n {
        for letter in 0..alpha {
            let t = m.raw_trans()[q * alpha + letter];
            trans.push(if t == NO_STATE { dead } else { t });
        }
    }
    trans.extend(std::iter::repeat(dead).take(alpha));
    let mut accepting: Vec<bool> = m.outputs.iter().map(|&o| o == v).collect();
    accepting.push(false);
    MultiTrackDfa::new(m.track_bases().to_vec(), m.initial(), accepting, trans)
        .expect("output recognizer is well-formed")
}

/// Moore partition refinement for automata with output, respecting
/// partial transitions. States are renumbered reachable-first.
pub fn minimize_dfao(m: &MultiTrackDfao) -> MultiTrackDfao {
    let alpha = m.alphabet();
    // reachable trim
    let mut order = vec![m.initial()];
    let mut dense = vec![NO_STATE; m.num_states()];
    dense[m.initial() as usize] = 0;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for letter in 0..alpha {
            if let Some(t) = m.step(q, letter) {
                if dense[t as usize] == NO_STATE {
                    dense[t as usize] = order.len() as StateId;
                    order.push(t);
                }
            }
        }
    }
    let n = order.len();
    let mut outputs = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n * alpha);
    for &q in &order {
        outputs.push(m.output(q));
        for letter in 0..alpha {
            trans.push(match m.step(q, letter) {
                Some(t) => dense[t as usize],
                None => NO_STATE,
            });
        }
    }

    // initial classes by output value
    let mut class: Vec<u32> = Vec::with_capacity(n);
    {
        let mut seen: HashMap<u32, u32> = HashMap::new();
        for &o in &outputs {
            let next = seen.len() as u32;
            class.push(*seen.entry(o).or_insert(next));
        }
    }
    // refine until the class count stops growing (each signature embeds the
    // previous class, so rounds only ever split)
    let mut num_before = class.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let mut sig_ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut next_class = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(alpha + 1);
            sig.push(class[q]);
            for letter in 0..alpha {
                let t = trans[q * alpha + letter];
                sig.push(if t == NO_STATE { u32::MAX } else { class[t as usize] });
            }
            let fresh = sig_ids.len() as u32;
            next_class.push(*sig_ids.entry(sig).or_insert(fresh));
        }
        let num_after = sig_ids.len();
        class = next_class;
        if num_after == num_before {
            break;
        }
        num_before = num_after;
    }

    // classes are stable now; rebuild
    let num_classes = class.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut rep = vec![usize::MAX; num_classes];
    for q in 0..n {
        if rep[class[q] as usize] == usize::MAX {
            rep[class[q] as usize] = q;
        }
    }
    let mut min_outputs = Vec::with_capacity(num_classes);
    let mut min_trans = Vec::with_capacity(num_classes * alpha);
    for c in 0..num_classes {
        let q = rep[c];
        min_outputs.push(outputs[q]);
        for letter in 0..alpha {
            let t = trans[q * alpha + letter];
            min_trans.push(if t == NO_STATE { NO_STATE } else { class[t as usize] });
        }
    }
    MultiTrackDfao::new(m.track_bases().to_vec(), class[0], min_outputs, min_trans)
        .expect("minimized DFAO is well-formed")
}

/// Output equivalence: on every input the two automata either both fall
/// off their tables or produce the same output.
pub fn equivalent_dfao(a: &MultiTrackDfao, b: &MultiTrackDfao) -> Result<bool> {
    if a.track_bases() != b.track_bases() {
        return Err(Error::BaseMismatch(format!(
            "{:?} vs {:?}",
            a.track_bases(),
            b.track_bases()
        )));
    }
    let alpha = a.alphabet();
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::from([(Some(a.initial()), Some(b.initial()))]);
    seen.insert((Some(a.initial()), Some(b.initial())));
    while let Some((qa, qb)) = queue.pop_front() {
        match (qa, qb) {
            (Some(x), Some(y)) => {
                if a.output(x) != b.output(y) {
                    return Ok(false);
                }
            }
            (None, None) => continue, // both dead forever
            _ => return Ok(false),
        }
        for letter in 0..alpha {
            let next = (
                qa.and_then(|q| a.step(q, letter)),
                qb.and_then(|q| b.step(q, letter)),
            );
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}
