//! Dense integer sets over `[0, cap]` with bit-parallel sumset computation.
//!
//! A [`SumSet`] stores membership of every integer in `[0, cap]` as a bitset,
//! one bit per value. Sumsets (`{a + b : a in A, b in B}` truncated to a cap)
//! are computed by OR-ing shifted copies of one operand, one shift per member
//! of the other operand, which keeps everything exact and word-parallel.
//!
//! Sets produced by [`sumset`] and [`subset_sums`] always contain 0. The
//! [`prefix`] and [`suffix`] filters return raw membership sets that may be
//! empty (in particular `prefix(s, t)` with `t < 0`); callers that rely on
//! `0` being present must guard for that case themselves.

const WORD_BITS: usize = 64;

fn nwords(cap: usize) -> usize {
    cap / WORD_BITS + 1
}

/// Clears any bits above `cap` in the last word.
fn mask_top(words: &mut [u64], cap: usize) {
    let top = cap % WORD_BITS;
    if let Some(last) = words.last_mut() {
        if top + 1 < WORD_BITS {
            *last &= (1u64 << (top + 1)) - 1;
        }
    }
}

/// A dense set of integers in `[0, cap]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSet {
    cap: usize,
    words: Vec<u64>,
}

impl SumSet {
    /// The set `{0}` over `[0, cap]`.
    pub fn zero(cap: usize) -> Self {
        let mut words = vec![0u64; nwords(cap)];
        words[0] = 1;
        SumSet { cap, words }
    }

    /// A set with no members at all (raw; violates the `0 ∈ S` convention).
    pub fn empty(cap: usize) -> Self {
        SumSet {
            cap,
            words: vec![0u64; nwords(cap)],
        }
    }

    /// A set containing exactly the given members (values above `cap` are ignored).
    pub fn from_members<I: IntoIterator<Item = usize>>(cap: usize, members: I) -> Self {
        let mut s = SumSet::empty(cap);
        for m in members {
            if m <= cap {
                s.insert(m);
            }
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn contains(&self, x: usize) -> bool {
        x <= self.cap && self.words[x / WORD_BITS] >> (x % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x <= self.cap, "member {} exceeds cap {}", x, self.cap);
        self.words[x / WORD_BITS] |= 1u64 << (x % WORD_BITS);
    }

    /// Number of members.
    pub fn member_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Largest member, or `None` for a raw empty set.
    pub fn max_member(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// Iterates members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + bit)
            })
        })
    }

    /// Removes every member strictly greater than `bound`. The cap is unchanged.
    pub fn trim(&mut self, bound: usize) {
        if bound >= self.cap {
            return;
        }
        let keep = nwords(bound);
        for w in &mut self.words[keep..] {
            *w = 0;
        }
        let top = bound % WORD_BITS;
        if top + 1 < WORD_BITS {
            self.words[keep - 1] &= (1u64 << (top + 1)) - 1;
        }
    }

    /// Adds all members of `other`; `other.cap` must not exceed `self.cap`.
    pub fn union_with(&mut self, other: &SumSet) {
        assert!(other.cap <= self.cap);
        for (d, s) in self.words.iter_mut().zip(&other.words) {
            *d |= *s;
        }
    }

    /// In-place `self = self ∪ (self ⊕ {offset})`, truncated at the cap.
    pub fn or_shift(&mut self, offset: usize) {
        if offset == 0 || offset > self.cap {
            return;
        }
        let n = self.words.len();
        let q = offset / WORD_BITS;
        let r = offset % WORD_BITS;
        if r == 0 {
            for j in (q..n).rev() {
                self.words[j] |= self.words[j - q];
            }
        } else {
            for j in (q + 1..n).rev() {
                self.words[j] |=
                    (self.words[j - q] << r) | (self.words[j - q - 1] >> (WORD_BITS - r));
            }
            self.words[q] |= self.words[0] << r;
        }
        mask_top(&mut self.words, self.cap);
    }
}

/// OR a left-shifted copy of `src` into `dst` (distinct buffers).
fn or_shifted_from(dst: &mut [u64], src: &[u64], shift: usize) {
    let n = dst.len();
    let q = shift / WORD_BITS;
    if q >= n {
        return;
    }
    let r = shift % WORD_BITS;
    let m = src.len().min(n - q);
    if r == 0 {
        for j in 0..m {
            dst[j + q] |= src[j];
        }
    } else {
        dst[q] |= src[0] << r;
        for j in 1..m {
            dst[j + q] |= (src[j] << r) | (src[j - 1] >> (WORD_BITS - r));
        }
        if m + q < n && m == src.len() {
            dst[m + q] |= src[m - 1] >> (WORD_BITS - r);
        }
    }
}

/// The sumset `{a + b : a ∈ A, b ∈ B}` truncated to `[0, cap]`.
///
/// Members of the operand with the smaller cap provide the shift offsets;
/// the other operand is OR-ed in once per offset.
pub fn sumset(a: &SumSet, b: &SumSet, cap: usize) -> SumSet {
    assert!(
        a.cap <= cap && b.cap <= cap,
        "operand caps must not exceed cap"
    );
    let (shifts, base) = if a.cap <= b.cap { (a, b) } else { (b, a) };
    let mut out = SumSet::empty(cap);
    let width = out.words.len();
    for m in shifts.members() {
        if m > cap {
            break;
        }
        or_shifted_from(&mut out.words[..width], &base.words, m);
    }
    mask_top(&mut out.words, cap);
    out
}

/// All subset sums of `values` that do not exceed `cap`; always contains 0.
///
/// Built by pairwise merging of `{0, v}` sets, so intermediate caps stay
/// proportional to the partial totals.
pub fn subset_sums(values: &[usize], cap: usize) -> SumSet {
    debug_assert!(values.iter().all(|&v| v >= 1));
    let mut sets: Vec<SumSet> = values
        .iter()
        .map(|&v| SumSet::from_members(v.min(cap), [0, v]))
        .collect();
    if sets.is_empty() {
        return SumSet::zero(0);
    }
    while sets.len() > 1 {
        let mut merged = Vec::with_capacity(sets.len().div_ceil(2));
        let mut it = sets.drain(..);
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => {
                    let c = cap.min(a.cap + b.cap);
                    merged.push(sumset(&a, &b, c));
                }
                None => merged.push(a),
            }
        }
        drop(it);
        sets = merged;
    }
    sets.pop().unwrap()
}

/// Members of `s` that are `≤ t`. For `t < 0` the result is a raw empty set.
pub fn prefix(s: &SumSet, t: i64) -> SumSet {
    if t < 0 {
        return SumSet::empty(0);
    }
    let bound = (t as usize).min(s.cap);
    let mut out = SumSet {
        cap: bound,
        words: s.words[..nwords(bound)].to_vec(),
    };
    mask_top(&mut out.words, bound);
    out
}

/// Members of `s` that are `> t` (a raw set; 0 is dropped whenever `t ≥ 0`).
pub fn suffix(s: &SumSet, t: i64) -> SumSet {
    let mut out = s.clone();
    if t < 0 {
        return out;
    }
    let bound = t as usize;
    if bound >= s.cap {
        for w in &mut out.words {
            *w = 0;
        }
        return out;
    }
    let full = bound / WORD_BITS;
    for w in &mut out.words[..full] {
        *w = 0;
    }
    let top = bound % WORD_BITS;
    if top + 1 < WORD_BITS {
        out.words[full] &= !((1u64 << (top + 1)) - 1);
    } else {
        out.words[full] = 0;
    }
    out
}
