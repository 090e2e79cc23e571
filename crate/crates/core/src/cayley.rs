//! Balls in the Cayley graph of G = ⟨u, ᵗu³⟩ ⊂ PSL(2,ℤ) and brute-force
//! checks of its cone-type structure.
//!
//! Letters are read through [`Alphabet::windtree_image`]: `A = u`, `B = v = ᵗu³`,
//! lowercase for inverses. The ball is built layer by layer; an element's
//! geodesic suffixes are read off the BFS back-edges, so every geodesic is
//! accounted for without enumerating words.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use thiserror::Error;

use crate::gg_bound::{TypeAutomaton, TypeRow};
use crate::matgroup::{evaluate, for_each_reduced_word, Alphabet, Letter, Mat64, MatGroupError, Word};

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("suffix set {0} matches no known cone-type shape")]
    UnclassifiableSuffixSet(SuffixSet),
    #[error(transparent)]
    Arithmetic(#[from] MatGroupError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A set of letters, stored as a 4-bit mask indexed by [`Letter::index`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug)]
pub struct LetterSet(u8);

impl LetterSet {
    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l.index();
    }
    pub fn contains(&self, l: Letter) -> bool {
        self.0 & (1 << l.index()) != 0
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        Letter::ALL.into_iter().filter(|&l| self.contains(l))
    }
}

/// A set of two-letter words `xy`, stored as a 16-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug)]
pub struct PairSet(u16);

impl PairSet {
    fn bit(x: Letter, y: Letter) -> u16 {
        1 << (4 * x.index() + y.index())
    }
    pub fn insert(&mut self, x: Letter, y: Letter) {
        self.0 |= Self::bit(x, y);
    }
    pub fn contains(&self, x: Letter, y: Letter) -> bool {
        self.0 & Self::bit(x, y) != 0
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        Letter::ALL
            .into_iter()
            .flat_map(|x| Letter::ALL.into_iter().map(move |y| (x, y)))
            .filter(|&(x, y)| self.contains(x, y))
    }
}

/// The level-2 suffix set `𝐒₂*(g)`: the two-letter geodesic suffixes, or the
/// one-letter ones when `g` has word norm one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SuffixSet {
    Empty,
    Letters(LetterSet),
    Pairs(PairSet),
}

impl SuffixSet {
    pub fn words(&self) -> Vec<Word> {
        match self {
            SuffixSet::Empty => vec![],
            SuffixSet::Letters(s) => s.iter().map(|l| Word::from_letters([l])).collect(),
            SuffixSet::Pairs(p) => p.iter().map(|(x, y)| Word::from_letters([x, y])).collect(),
        }
    }
}

impl fmt::Display for SuffixSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words().iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", words.join(", "))
    }
}

fn same_sign(x: Letter, y: Letter) -> bool {
    x.is_positive() == y.is_positive()
}

/// Reduces `𝐒₂*(g)` to the four-valued type `T(g)`.
///
/// With `{a, b}` one of `{u, v}` or `{ū, v̄}`:
/// `0` for `∅`; `1` for `{a}`, `{a²}`, `{ba}`, `{ba, a²}`; `2` for `{b̄a}`;
/// `3` for `{āb, b̄a}`.
pub fn classify(star: &SuffixSet) -> Result<u8, CayleyError> {
    let fail = || CayleyError::UnclassifiableSuffixSet(*star);
    match star {
        SuffixSet::Empty => Ok(0),
        SuffixSet::Letters(s) if s.len() == 1 => Ok(1),
        SuffixSet::Letters(_) => Err(fail()),
        SuffixSet::Pairs(p) => {
            let pairs: Vec<(Letter, Letter)> = p.iter().collect();
            match *pairs.as_slice() {
                [(x, y)] if x == y => Ok(1),
                [(x, y)] if x == y.inverse() => Err(fail()),
                [(x, y)] if same_sign(x, y) => Ok(1),
                [(_, _)] => Ok(2),
                [(x1, y1), (x2, y2)] => {
                    let square_and_other = |(sx, sy): (Letter, Letter), (ox, oy): (Letter, Letter)| {
                        sx == sy && oy == sy && ox != sy && same_sign(ox, sy)
                    };
                    if square_and_other((x1, y1), (x2, y2)) || square_and_other((x2, y2), (x1, y1)) {
                        Ok(1)
                    } else if y1 != y2
                        && same_sign(y1, y2)
                        && x1 == y2.inverse()
                        && x2 == y1.inverse()
                    {
                        Ok(3)
                    } else {
                        Err(fail())
                    }
                }
                _ => Err(fail()),
            }
        }
    }
}

/// One element of the ball with its geodesic suffix data.
#[derive(Clone, Debug)]
pub struct BallEntry {
    /// PSL-normalized matrix.
    pub element: Mat64,
    pub word_norm: usize,
    /// Last letters of geodesics, `𝐒₁(g)`.
    pub suffix1: LetterSet,
    /// Last two letters of geodesics, `𝐒₂(g)`; empty when `word_norm < 2`.
    pub suffix2: PairSet,
    /// Index of `g·s` for each letter, `None` outside the ball.
    pub neighbors: [Option<u32>; 4],
}

impl BallEntry {
    pub fn suffix2star(&self) -> SuffixSet {
        if !self.suffix2.is_empty() {
            SuffixSet::Pairs(self.suffix2)
        } else if !self.suffix1.is_empty() {
            SuffixSet::Letters(self.suffix1)
        } else {
            SuffixSet::Empty
        }
    }

    pub fn cone_type(&self) -> Result<u8, CayleyError> {
        classify(&self.suffix2star())
    }

    /// `S⁻(g)`: letters `s` with `|gs| = |g| − 1`, i.e. inverses of geodesic suffixes.
    pub fn descending(&self) -> LetterSet {
        let mut out = LetterSet::default();
        for l in self.suffix1.iter() {
            out.insert(l.inverse());
        }
        out
    }
}

/// The ball of radius `radius` in the Cayley graph of G, ordered by word norm
/// and then by matrix entries.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    pub entries: Vec<BallEntry>,
    index: HashMap<Mat64, u32>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn find(&self, m: &Mat64) -> Option<&BallEntry> {
        self.index.get(&m.normalized()).map(|&i| &self.entries[i as usize])
    }

    pub fn find_word(&self, w: &Word) -> Option<&BallEntry> {
        let g = evaluate(w, &Alphabet::windtree_image()).to_mat64()?;
        self.find(&g)
    }

    /// Number of elements of each word norm `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for e in &self.entries {
            out[e.word_norm] += 1;
        }
        out
    }

    /// CSV with columns `a,b,c,d,word_norm,cone_type`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CayleyError> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["a", "b", "c", "d", "word_norm", "cone_type"])?;
        for e in &self.entries {
            let m = e.element;
            let t = e.cone_type()?;
            wtr.write_record([
                m.a.to_string(),
                m.b.to_string(),
                m.c.to_string(),
                m.d.to_string(),
                e.word_norm.to_string(),
                t.to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Breadth-first enumeration of all elements of word norm at most `radius`
/// over `S = {u^{±1}, v^{±1}}`.
pub fn build_ball(radius: usize) -> Result<Ball, CayleyError> {
    let gens = Alphabet::windtree_image().images64();
    let mut entries = vec![BallEntry {
        element: Mat64::IDENTITY,
        word_norm: 0,
        suffix1: LetterSet::default(),
        suffix2: PairSet::default(),
        neighbors: [None; 4],
    }];
    let mut index: HashMap<Mat64, u32> = HashMap::from([(Mat64::IDENTITY, 0)]);
    let mut layer: Vec<u32> = vec![0];

    for norm in 0..radius {
        // collect the next sphere in canonical order before assigning indices
        let mut incoming: HashMap<Mat64, Vec<(u32, Letter)>> = HashMap::new();
        for &gi in &layer {
            let g = entries[gi as usize].element;
            for l in Letter::ALL {
                let h = g.try_mul(&gens[l.index()])?.normalized();
                if let Some(&hi) = index.get(&h) {
                    entries[gi as usize].neighbors[l.index()] = Some(hi);
                } else {
                    incoming.entry(h).or_default().push((gi, l));
                }
            }
        }
        let mut next: Vec<(Mat64, Vec<(u32, Letter)>)> = incoming.into_iter().collect();
        next.sort_unstable_by_key(|(m, _)| *m);
        let mut new_layer = Vec::with_capacity(next.len());
        for (h, preds) in next {
            let hi = entries.len() as u32;
            let mut suffix1 = LetterSet::default();
            let mut suffix2 = PairSet::default();
            for &(gi, l) in &preds {
                suffix1.insert(l);
                entries[gi as usize].neighbors[l.index()] = Some(hi);
                for x in entries[gi as usize].suffix1.iter() {
                    suffix2.insert(x, l);
                }
            }
            let mut neighbors = [None; 4];
            for &(gi, l) in &preds {
                neighbors[l.inverse().index()] = Some(gi);
            }
            index.insert(h, hi);
            entries.push(BallEntry {
                element: h,
                word_norm: norm + 1,
                suffix1,
                suffix2,
                neighbors,
            });
            new_layer.push(hi);
        }
        layer = new_layer;
    }
    // close up edges inside the outer sphere
    for &gi in &layer {
        let g = entries[gi as usize].element;
        for l in Letter::ALL {
            if entries[gi as usize].neighbors[l.index()].is_some() {
                continue;
            }
            let h = g.try_mul(&gens[l.index()])?.normalized();
            entries[gi as usize].neighbors[l.index()] = index.get(&h).copied();
        }
    }
    Ok(Ball {
        radius,
        entries,
        index,
    })
}

pub fn cone_type(e: &BallEntry) -> Result<u8, CayleyError> {
    e.cone_type()
}

/// Expected successor types for each cone type.
pub fn expected_successors(t: u8) -> &'static [u8] {
    match t {
        0 => &[1, 1, 1, 1],
        1 => &[1, 1, 2],
        2 => &[1, 1, 3],
        3 => &[1, 1],
        _ => &[],
    }
}

#[derive(Clone, Debug)]
pub struct ConeTypeReport {
    pub radius: usize,
    pub checked: usize,
    pub type_counts: [usize; 4],
    pub counterexample: Option<String>,
    /// Successor multiset and predecessor count per type, as observed.
    pub observed: Vec<Option<(Vec<usize>, usize)>>,
}

impl ConeTypeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// The automaton read off the ball. `None` if some type was never seen or
    /// the check failed.
    pub fn automaton(&self) -> Option<TypeAutomaton> {
        if !self.passed() {
            return None;
        }
        let types = self
            .observed
            .iter()
            .map(|row| {
                row.as_ref().map(|(succ, pred)| TypeRow {
                    successors: succ.clone(),
                    predecessors: *pred,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        TypeAutomaton::new(4, Some(0), types).ok()
    }
}

/// Checks on every element of norm below `radius` that the cone types of its
/// successors form the expected multiset and that `#S⁺ + #S⁻ = 4`.
pub fn verify_cone_types(radius: usize) -> Result<ConeTypeReport, CayleyError> {
    let ball = build_ball(radius)?;
    verify_ball(&ball)
}

pub fn verify_ball(ball: &Ball) -> Result<ConeTypeReport, CayleyError> {
    let mut report = ConeTypeReport {
        radius: ball.radius,
        checked: 0,
        type_counts: [0; 4],
        counterexample: None,
        observed: vec![None; 4],
    };
    let types: Vec<u8> = ball
        .entries
        .iter()
        .map(|e| e.cone_type())
        .collect::<Result<_, _>>()?;
    for (e, &t) in ball.entries.iter().zip(&types) {
        if e.word_norm + 1 > ball.radius {
            continue;
        }
        report.checked += 1;
        report.type_counts[t as usize] += 1;
        let mut succ: Vec<usize> = Vec::new();
        let mut n_pred = 0;
        let mut n_other = 0;
        for l in Letter::ALL {
            let nb = e.neighbors[l.index()].map(|i| &ball.entries[i as usize]);
            match nb {
                Some(n) if n.word_norm == e.word_norm + 1 => {
                    succ.push(types[e.neighbors[l.index()].unwrap() as usize] as usize)
                }
                Some(n) if n.word_norm + 1 == e.word_norm => n_pred += 1,
                _ => n_other += 1,
            }
        }
        succ.sort_unstable();
        let expected: Vec<usize> = expected_successors(t).iter().map(|&x| x as usize).collect();
        let describe = || {
            format!(
                "{:?} (norm {}, 𝐒₂* = {}, type {t}): successors {succ:?}, predecessors {n_pred}, other {n_other}",
                e.element,
                e.word_norm,
                e.suffix2star()
            )
        };
        if n_other != 0 || succ.len() + n_pred != 4 || succ != expected {
            report.counterexample.get_or_insert_with(describe);
        }
        match &report.observed[t as usize] {
            None => report.observed[t as usize] = Some((succ, n_pred)),
            Some((s, p)) if *s != succ || *p != n_pred => {
                report.counterexample.get_or_insert_with(describe);
            }
            _ => {}
        }
    }
    Ok(report)
}

fn w(s: &str) -> Word {
    s.parse().expect("static word")
}

/// `(u v̄)³, (ū v)³, (v ū)³, (v̄ u)³`.
pub fn primitive_relators() -> Vec<Word> {
    ["Ab", "aB", "Ba", "bA"].iter().map(|s| w(s).pow(3)).collect()
}

#[derive(Clone, Debug)]
pub struct RelatorReport {
    pub relators_trivial: bool,
    pub subwords_nontrivial: bool,
    /// No reduced word of length 1..=`max_len` is trivial.
    pub no_short_relators: bool,
    pub max_len: usize,
    pub ball_sizes_match_free_group: bool,
    pub failures: Vec<String>,
}

impl RelatorReport {
    pub fn passed(&self) -> bool {
        self.relators_trivial
            && self.subwords_nontrivial
            && self.no_short_relators
            && self.ball_sizes_match_free_group
    }
}

/// Audits the relator list: each relator is trivial, each proper subword is
/// not, and no reduced word of length at most `max_len` is trivial.
pub fn relator_audit(max_len: usize) -> Result<RelatorReport, CayleyError> {
    let alphabet = Alphabet::windtree_image();
    let mut failures = Vec::new();
    let rels = primitive_relators();
    let relators_trivial = rels.iter().all(|r| {
        let ok = evaluate(r, &alphabet).is_psl_identity();
        if !ok {
            failures.push(format!("relator {r} is not trivial"));
        }
        ok
    });
    let mut subwords_nontrivial = true;
    for r in &rels {
        for s in r.proper_subwords() {
            if evaluate(&s, &alphabet).is_psl_identity() {
                subwords_nontrivial = false;
                failures.push(format!("proper subword {s} of {r} is trivial"));
            }
        }
    }
    let mut no_short_relators = true;
    for_each_reduced_word(&alphabet.images64(), max_len, |letters, m| {
        if !letters.is_empty() && m.is_psl_identity() {
            no_short_relators = false;
            failures.push(format!("short relator {}", Word::from_letters(letters.iter().copied())));
        }
        true
    })?;
    // a relator of length ≤ 2k would collide two words of length ≤ k
    let k = max_len / 2;
    let ball = build_ball(k)?;
    let free: Vec<usize> = (0..=k).map(free_sphere_size).collect();
    let ball_sizes_match_free_group = ball.sphere_sizes() == free;
    if !ball_sizes_match_free_group {
        failures.push(format!("sphere sizes {:?} differ from {:?}", ball.sphere_sizes(), free));
    }
    Ok(RelatorReport {
        relators_trivial,
        subwords_nontrivial,
        no_short_relators,
        max_len,
        ball_sizes_match_free_group,
        failures,
    })
}

/// Number of reduced words of length `n` in a free group of rank two.
pub fn free_sphere_size(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        4 * 3usize.pow(n as u32 - 1)
    }
}

/// One forbidden configuration of geodesic suffixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenPair {
    pub first: Word,
    pub second: Word,
}

impl fmt::Display for ForbiddenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} and {}", self.first, self.second)
    }
}

/// Lists every forbidden configuration present in the suffix sets: `s, s̄`;
/// `sr, s̄r`; `s, r²`; `sr, s`; `u, v̄`; `ū, v` (with `r ∉ {s, s̄}`).
pub fn forbidden_pairs(suffix1: LetterSet, suffix2: PairSet) -> Vec<ForbiddenPair> {
    let one = |l: Letter| Word::from_letters([l]);
    let two = |x: Letter, y: Letter| Word::from_letters([x, y]);
    let mut out = Vec::new();
    for s in Letter::ALL {
        if suffix1.contains(s) && suffix1.contains(s.inverse()) && s.is_positive() {
            out.push(ForbiddenPair { first: one(s), second: one(s.inverse()) });
        }
        for r in Letter::ALL.into_iter().filter(|&r| r != s && r != s.inverse()) {
            if s.is_positive() && suffix2.contains(s, r) && suffix2.contains(s.inverse(), r) {
                out.push(ForbiddenPair { first: two(s, r), second: two(s.inverse(), r) });
            }
            if suffix1.contains(s) && suffix2.contains(r, r) {
                out.push(ForbiddenPair { first: one(s), second: two(r, r) });
            }
            if suffix2.contains(s, r) && suffix1.contains(s) {
                out.push(ForbiddenPair { first: two(s, r), second: one(s) });
            }
        }
    }
    if suffix1.contains(Letter::A) && suffix1.contains(Letter::BInv) {
        out.push(ForbiddenPair { first: one(Letter::A), second: one(Letter::BInv) });
    }
    if suffix1.contains(Letter::AInv) && suffix1.contains(Letter::B) {
        out.push(ForbiddenPair { first: one(Letter::AInv), second: one(Letter::B) });
    }
    out
}

#[derive(Clone, Debug)]
pub struct ForbiddenReport {
    pub radius: usize,
    pub checked: usize,
    pub violations: Vec<(Mat64, ForbiddenPair)>,
}

impl ForbiddenReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn forbidden_suffixes_check(radius: usize) -> Result<ForbiddenReport, CayleyError> {
    let ball = build_ball(radius)?;
    let mut violations = Vec::new();
    for e in &ball.entries {
        for p in forbidden_pairs(e.suffix1, e.suffix2) {
            violations.push((e.element, p));
        }
    }
    Ok(ForbiddenReport {
        radius,
        checked: ball.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_of(words: &[&str]) -> SuffixSet {
        let ws: Vec<Word> = words.iter().map(|s| w(s)).collect();
        if ws.is_empty() {
            return SuffixSet::Empty;
        }
        if ws[0].len() == 1 {
            let mut s = LetterSet::default();
            ws.iter().for_each(|x| s.insert(x.letters()[0]));
            SuffixSet::Letters(s)
        } else {
            let mut p = PairSet::default();
            ws.iter().for_each(|x| p.insert(x.letters()[0], x.letters()[1]));
            SuffixSet::Pairs(p)
        }
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify(&star_of(&[])).unwrap(), 0);
        for s in ["A", "a", "B", "b"] {
            assert_eq!(classify(&star_of(&[s])).unwrap(), 1);
        }
        for s in ["AA", "bb", "BA", "AB", "ab", "ba"] {
            assert_eq!(classify(&star_of(&[s])).unwrap(), 1, "{s}");
        }
        for s in ["aB", "bA", "Ab", "Ba"] {
            assert_eq!(classify(&star_of(&[s])).unwrap(), 2, "{s}");
        }
        assert_eq!(classify(&star_of(&["AA", "BA"])).unwrap(), 1);
        assert_eq!(classify(&star_of(&["aa", "ba"])).unwrap(), 1);
        assert_eq!(classify(&star_of(&["bA", "aB"])).unwrap(), 3);
        assert_eq!(classify(&star_of(&["Ba", "Ab"])).unwrap(), 3);
    }

    #[test]
    fn classification_rejects_unlisted_shapes() {
        for bad in [&["A", "B"][..], &["Aa"], &["AA", "BB"], &["AA", "bA"], &["AB", "BA", "AA"]] {
            assert!(
                matches!(classify(&star_of(bad)), Err(CayleyError::UnclassifiableSuffixSet(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn small_balls() {
        let b0 = build_ball(0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.entries[0].cone_type().unwrap(), 0);
        let b1 = build_ball(1).unwrap();
        assert_eq!(b1.len(), 5);
        assert!(b1.entries[1..].iter().all(|e| e.cone_type().unwrap() == 1));
    }

    #[test]
    fn entry_with_two_geodesics() {
        let ball = build_ball(4).unwrap();
        let e = ball.find_word(&w("AbA")).unwrap();
        assert_eq!(e.word_norm, 3);
        assert_eq!(e.suffix2star(), star_of(&["bA", "aB"]));
        assert_eq!(e.cone_type().unwrap(), 3);
        assert_eq!(ball.find_word(&w("A")).unwrap().cone_type().unwrap(), 1);
        assert_eq!(ball.find_word(&w("Ab")).unwrap().cone_type().unwrap(), 2);
    }

    #[test]
    fn cone_types_small_radii() {
        let r1 = verify_cone_types(1).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.checked, 1);
        assert!(verify_cone_types(3).unwrap().passed());
    }

    #[test]
    fn relators() {
        let rels = primitive_relators();
        assert_eq!(rels.len(), 4);
        assert!(rels.iter().all(|r| r.len() == 6));
        let alphabet = Alphabet::windtree_image();
        assert!(!evaluate(&w("AbAb"), &alphabet).is_psl_identity());
        let report = relator_audit(5).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn forbidden_negative_self_test() {
        let mut s1 = LetterSet::default();
        s1.insert(Letter::A);
        assert!(forbidden_pairs(s1, PairSet::default()).is_empty());
        s1.insert(Letter::AInv);
        let v = forbidden_pairs(s1, PairSet::default());
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "A and a");
        let mut s1 = LetterSet::default();
        s1.insert(Letter::A);
        s1.insert(Letter::BInv);
        assert!(!forbidden_pairs(s1, PairSet::default()).is_empty());
        let mut p = PairSet::default();
        p.insert(Letter::B, Letter::B);
        let mut s1 = LetterSet::default();
        s1.insert(Letter::A);
        assert!(!forbidden_pairs(s1, p).is_empty());
    }

    #[test]
    fn forbidden_on_ball() {
        let r = forbidden_suffixes_check(6).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn csv_dump() {
        let ball = build_ball(1).unwrap();
        let mut buf = Vec::new();
        ball.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,b,c,d,word_norm,cone_type");
        assert_eq!(lines[1], "1,0,0,1,0,0");
        assert_eq!(lines.len(), 6);
    }
}
