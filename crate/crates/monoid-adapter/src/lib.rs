//! Finitely presented monoids viewed as one-object categories.
//!
//! Morphisms are words over the generators modulo the relations.  Words
//! compose by concatenation with the outer factor on the left: in a
//! factorization `w = u·v` the prefix `u` is the morphism applied last, so
//! `u` is the candidate mono part and the suffix `v` the candidate epi
//! part.  A monomorphism cancels on the left (`w·P = w·Q ⇒ P = Q`), an
//! epimorphism on the right.
//!
//! Hom-sets are infinite, so every classification is decided only over
//! words up to a length bound and reported three-valued: `No` always
//! carries a concrete witness pair, `Yes` means "no witness among words up
//! to the bound", and `UnknownAtBound` is returned whenever bounded
//! rewriting cannot certify equality testing (the oriented rules fail the
//! overlap check) or an enumeration escapes the bound.  Witnesses survive
//! any increase of the bound, so a `No` never flips.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

/// A word over the generator alphabet, each letter an index into the
/// presentation's symbol list.
pub type Word = Vec<u8>;

pub const DEFAULT_BOUND: usize = 8;

/// Words kept in an equivalence-class search before giving up.
const CLASS_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("too many generators (at most 255)")]
    TooManyGenerators,
    #[error("generator {0:?} is declared twice")]
    DuplicateGenerator(String),
    #[error("the word bound must be positive")]
    ZeroBound,
    #[error("a relation references generator index {0}, outside the alphabet")]
    UnknownGenerator(u8),
    #[error("unknown symbol {0:?} in word")]
    UnknownSymbol(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("word of length {len} exceeds the rewriting window {max}")]
    WordTooLong { len: usize, max: usize },
    #[error("non-terminating orientation detected: rewriting revisited a word")]
    NonTerminating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    UnknownAtBound,
}

/// Answer to a classification question truncated at a word bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedVerdict {
    pub value: Verdict,
    pub bound_used: usize,
    /// For `No`, the violating pair: the colliding words for a failed
    /// cancellation, or the factorization `(mono part, inner part)` for a
    /// failed immediacy or extremality.  Always present on `No`.
    pub witness: Option<(Word, Word)>,
}

impl BoundedVerdict {
    fn yes(bound_used: usize) -> Self {
        BoundedVerdict { value: Verdict::Yes, bound_used, witness: None }
    }
    fn no(bound_used: usize, witness: (Word, Word)) -> Self {
        BoundedVerdict { value: Verdict::No, bound_used, witness: Some(witness) }
    }
    fn unknown(bound_used: usize) -> Self {
        BoundedVerdict { value: Verdict::UnknownAtBound, bound_used, witness: None }
    }
    pub fn is_yes(&self) -> bool {
        self.value == Verdict::Yes
    }
}

#[derive(Clone, Debug)]
pub struct MonoidPresentation {
    symbols: Vec<String>,
    /// Oriented rules `ℓ → r`; the right side is never longer than the
    /// left, so rewriting never grows a word.
    rules: Vec<(Word, Word)>,
    bound: usize,
    confluent_at_bound: bool,
}

impl MonoidPresentation {
    /// Relations are oriented as written when the sides have equal length
    /// and from the longer to the shorter side otherwise; trivial
    /// relations are dropped.  Local confluence of the resulting rules is
    /// checked on all overlaps, with each side normalized inside the
    /// bounded window; the flag it produces decides whether distinct
    /// normal forms may be trusted to mean distinct morphisms.
    pub fn new(
        symbols: Vec<String>,
        relations: Vec<(Word, Word)>,
        bound: usize,
    ) -> Result<MonoidPresentation, PresentationError> {
        if symbols.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        if symbols.len() > 255 {
            return Err(PresentationError::TooManyGenerators);
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.clone()) {
                return Err(PresentationError::DuplicateGenerator(s.clone()));
            }
        }
        if bound == 0 {
            return Err(PresentationError::ZeroBound);
        }
        let mut rules = Vec::new();
        for (l, r) in relations {
            if let Some(&g) = l.iter().chain(r.iter()).find(|&&g| g as usize >= symbols.len()) {
                return Err(PresentationError::UnknownGenerator(g));
            }
            let oriented = if r.len() > l.len() { (r, l) } else { (l, r) };
            if oriented.0 != oriented.1 {
                rules.push(oriented);
            }
        }
        let mut p = MonoidPresentation { symbols, rules, bound, confluent_at_bound: false };
        p.confluent_at_bound = p.overlaps_join();
        Ok(p)
    }

    /// Three generators with the single relation `ac = bc`: the standard
    /// example separating immediate from extremal epimorphisms, at the
    /// default bound.
    pub fn ac_equals_bc() -> MonoidPresentation {
        MonoidPresentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(vec![0, 2], vec![1, 2])],
            DEFAULT_BOUND,
        )
        .expect("a fixed well-formed presentation")
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn generator_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_confluent_at_bound(&self) -> bool {
        self.confluent_at_bound
    }

    /// Longest word the rewriting engine accepts: a bounded word composed
    /// with another bounded word.
    fn window(&self) -> usize {
        2 * self.bound
    }

    /// Reads a word: either whitespace-separated symbol names, or, when
    /// every symbol is a single character, a bare string of letters.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let lookup: HashMap<&str, u8> = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u8))
            .collect();
        if text.split_whitespace().count() <= 1 && self.symbols.iter().all(|s| s.len() == 1) {
            return text
                .trim()
                .chars()
                .map(|ch| {
                    lookup
                        .get(ch.to_string().as_str())
                        .copied()
                        .ok_or_else(|| PresentationError::UnknownSymbol(ch.to_string()))
                })
                .collect();
        }
        text.split_whitespace()
            .map(|tok| {
                lookup
                    .get(tok)
                    .copied()
                    .ok_or_else(|| PresentationError::UnknownSymbol(tok.to_string()))
            })
            .collect()
    }

    pub fn format_word(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if self.symbols.iter().all(|s| s.len() == 1) { "" } else { " " };
        w.iter()
            .map(|&g| self.symbols[g as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Leftmost-position, first-rule rewriting to a fixed point.  Rules
    /// never grow a word, so the reachable set is finite and a revisited
    /// word is a genuine cycle.
    pub fn normal_form(&self, w: &[u8]) -> Result<Word, RewriteError> {
        if w.len() > self.window() {
            return Err(RewriteError::WordTooLong { len: w.len(), max: self.window() });
        }
        let mut cur = w.to_vec();
        let mut seen = HashSet::new();
        loop {
            if !seen.insert(cur.clone()) {
                return Err(RewriteError::NonTerminating);
            }
            match self.rewrite_once(&cur) {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
    }

    fn rewrite_once(&self, w: &[u8]) -> Option<Word> {
        for i in 0..w.len() {
            for (l, r) in &self.rules {
                if w[i..].starts_with(l) {
                    let mut out = Vec::with_capacity(w.len());
                    out.extend_from_slice(&w[..i]);
                    out.extend_from_slice(r);
                    out.extend_from_slice(&w[i + l.len()..]);
                    return Some(out);
                }
            }
        }
        None
    }

    fn joinable(&self, u: &[u8], v: &[u8]) -> bool {
        matches!(
            (self.normal_form(u), self.normal_form(v)),
            (Ok(a), Ok(b)) if a == b
        )
    }

    /// Local confluence on critical pairs: one rule's left side inside
    /// another's, and proper suffix/prefix overlaps.
    fn overlaps_join(&self) -> bool {
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                for pos in 0..=l1.len().saturating_sub(l2.len()) {
                    if l1[pos..pos + l2.len()] == l2[..] {
                        let mut other = l1[..pos].to_vec();
                        other.extend_from_slice(r2);
                        other.extend_from_slice(&l1[pos + l2.len()..]);
                        if !self.joinable(r1, &other) {
                            return false;
                        }
                    }
                }
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut a = r1.clone();
                        a.extend_from_slice(&l2[k..]);
                        let mut b = l1[..l1.len() - k].to_vec();
                        b.extend_from_slice(r2);
                        if !self.joinable(&a, &b) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// All words of length ≤ `max`, shortest first, lexicographic within a
    /// length.
    fn words_up_to(&self, max: usize) -> Vec<Word> {
        let k = self.symbols.len() as u8;
        let mut out = vec![Word::new()];
        let mut frontier = vec![Word::new()];
        for _ in 0..max {
            let mut next = Vec::with_capacity(frontier.len() * k as usize);
            for w in &frontier {
                for g in 0..k {
                    let mut e = w.clone();
                    e.push(g);
                    next.push(e);
                }
            }
            out.extend_from_slice(&next);
            frontier = next;
        }
        out
    }

    /// Left cancellation over all bounded words: `w·P = w·Q ⇒ P = Q`.
    pub fn bounded_is_mono(&self, w: &[u8]) -> BoundedVerdict {
        self.cancellation_verdict(w, true)
    }

    /// Right cancellation over all bounded words: `P·w = Q·w ⇒ P = Q`.
    pub fn bounded_is_epi(&self, w: &[u8]) -> BoundedVerdict {
        self.cancellation_verdict(w, false)
    }

    fn cancellation_verdict(&self, w: &[u8], cancel_left: bool) -> BoundedVerdict {
        if !self.confluent_at_bound {
            return BoundedVerdict::unknown(self.bound);
        }
        let mut by_composite: HashMap<Word, Word> = HashMap::new();
        for p in self.words_up_to(self.bound) {
            let composite = if cancel_left {
                [w, p.as_slice()].concat()
            } else {
                [p.as_slice(), w].concat()
            };
            let (Ok(key), Ok(pnf)) = (self.normal_form(&composite), self.normal_form(&p)) else {
                return BoundedVerdict::unknown(self.bound);
            };
            match by_composite.entry(key) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != pnf {
                        return BoundedVerdict::no(self.bound, (e.get().clone(), pnf));
                    }
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(pnf);
                }
            }
        }
        BoundedVerdict::yes(self.bound)
    }

    /// None when rewriting fails inside the window.
    fn is_invertible(&self, w: &[u8]) -> Option<bool> {
        let wnf = self.normal_form(w).ok()?;
        if wnf.is_empty() {
            return Some(true);
        }
        if self.rules.iter().all(|(l, r)| l.len() == r.len()) {
            // Length is invariant, so nothing composes down to the empty
            // word.
            return Some(false);
        }
        for v in self.words_up_to(self.bound) {
            let lv = self.normal_form(&[w, v.as_slice()].concat()).ok()?;
            let vl = self.normal_form(&[v.as_slice(), w].concat()).ok()?;
            if lv.is_empty() && vl.is_empty() {
                return Some(true);
            }
        }
        Some(false)
    }

    fn bool_of(&self, v: BoundedVerdict) -> Option<bool> {
        match v.value {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::UnknownAtBound => None,
        }
    }

    /// Every word provably equal to `w` inside the window, by applying
    /// relations in both directions; None when the class escapes the cap.
    fn equivalence_class(&self, w: &[u8]) -> Option<Vec<Word>> {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        seen.insert(w.to_vec());
        let mut queue = vec![w.to_vec()];
        while let Some(cur) = queue.pop() {
            for (l, r) in &self.rules {
                for (pat, rep) in [(l, r), (r, l)] {
                    if pat.len() > cur.len() {
                        continue;
                    }
                    for i in 0..=cur.len() - pat.len() {
                        if cur[i..i + pat.len()] == pat[..] {
                            let mut next = cur[..i].to_vec();
                            next.extend_from_slice(rep);
                            next.extend_from_slice(&cur[i + pat.len()..]);
                            if next.len() <= self.window() && seen.insert(next.clone()) {
                                if seen.len() > CLASS_CAP {
                                    return None;
                                }
                                queue.push(next);
                            }
                        }
                    }
                }
            }
        }
        Some(seen.into_iter().collect())
    }

    /// Whether every genuine mediator factorization is trivial: for each
    /// `w = u·v` (ranging over the whole equivalence class of `w`) with
    /// `u` a monomorphism and `v` a non-invertible epimorphism, `u` must
    /// be invertible.  Factorizations whose inner part is invertible are
    /// excluded: they merely re-parenthesize `w` itself rather than route
    /// it through a proper quotient.  A word that is not even an
    /// epimorphism gets `No` with the cancellation witness.
    pub fn bounded_is_immediate_epi(&self, w: &[u8]) -> BoundedVerdict {
        self.epi_factor_verdict(w, true)
    }

    /// Like [`Self::bounded_is_immediate_epi`] but quantifying over every
    /// factorization `w = u·v` with `u` a monomorphism, with no condition
    /// on `v` at all; a split through any non-invertible mono prefix
    /// defeats the property.
    pub fn bounded_is_extremal_epi(&self, w: &[u8]) -> BoundedVerdict {
        self.epi_factor_verdict(w, false)
    }

    fn epi_factor_verdict(&self, w: &[u8], require_epi_inner: bool) -> BoundedVerdict {
        if !self.confluent_at_bound {
            return BoundedVerdict::unknown(self.bound);
        }
        let epi = self.bounded_is_epi(w);
        match epi.value {
            Verdict::No => return epi,
            Verdict::UnknownAtBound => return BoundedVerdict::unknown(self.bound),
            Verdict::Yes => {}
        }
        let Some(class) = self.equivalence_class(w) else {
            return BoundedVerdict::unknown(self.bound);
        };
        for word in &class {
            for k in 0..=word.len() {
                let (u, v) = word.split_at(k);
                let Some(u_invertible) = self.is_invertible(u) else {
                    return BoundedVerdict::unknown(self.bound);
                };
                if u_invertible {
                    continue;
                }
                let Some(u_mono) = self.bool_of(self.bounded_is_mono(u)) else {
                    return BoundedVerdict::unknown(self.bound);
                };
                if !u_mono {
                    continue;
                }
                if require_epi_inner {
                    let Some(v_invertible) = self.is_invertible(v) else {
                        return BoundedVerdict::unknown(self.bound);
                    };
                    if v_invertible {
                        continue;
                    }
                    let Some(v_epi) = self.bool_of(self.bounded_is_epi(v)) else {
                        return BoundedVerdict::unknown(self.bound);
                    };
                    if !v_epi {
                        continue;
                    }
                }
                return BoundedVerdict::no(self.bound, (u.to_vec(), v.to_vec()));
            }
        }
        BoundedVerdict::yes(self.bound)
    }
}
