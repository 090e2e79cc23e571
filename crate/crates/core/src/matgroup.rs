//! Exact arithmetic in SL(2,ℤ) and PSL(2,ℤ), words over a two-generator
//! alphabet, and the word problem for Γ₀ = ⟨u², ᵗu²⟩.
//!
//! Two matrix types live here. [`GroupElement`] carries arbitrary-precision
//! entries and is the reference representation. [`Mat64`] is a compact
//! `i64` matrix with checked arithmetic, used by the enumeration code where
//! millions of products are formed and entries stay far below `i64::MAX`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatGroupError {
    #[error(
        "matrix ({} {}; {} {}) has determinant {det}, expected 1",
        .entries[0], .entries[1], .entries[2], .entries[3]
    )]
    NotUnimodular { entries: Box<[BigInt; 4]>, det: BigInt },
    #[error("element {0} is not in Γ₀ = ⟨u², ᵗu²⟩")]
    NotInGamma0(Box<GroupElement>),
    #[error("cannot parse word {0:?}: unexpected character {1:?}")]
    BadWord(String, char),
    #[error("64-bit overflow while multiplying matrices")]
    Overflow,
}

/// A 2×2 integer matrix `(a b; c d)` of determinant one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl GroupElement {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, MatGroupError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(MatGroupError::NotUnimodular {
                entries: Box::new([a, b, c, d]),
                det,
            });
        }
        Ok(Self { a, b, c, d })
    }

    /// Builds from small entries. Panics if the determinant is not one, so only
    /// use it for literals.
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a, b, c, d).expect("literal matrix must have determinant 1")
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    /// `uᵏ = (1 k; 0 1)`.
    pub fn u_pow(k: i64) -> Self {
        Self::from_i64(1, k, 0, 1)
    }

    /// `ᵗuᵏ = (1 0; k 1)`.
    pub fn ut_pow(k: i64) -> Self {
        Self::from_i64(1, 0, k, 1)
    }

    /// The order-four rotation `r = (0 1; −1 0)`.
    pub fn rotation() -> Self {
        Self::from_i64(0, 1, -1, 0)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as `f64`, for geometry.
    pub fn entries_f64(&self) -> [f64; 4] {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        [f(&self.a), f(&self.b), f(&self.c), f(&self.d)]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// `a² + b² + c² + d²`; equals `2 cosh d(i, g·i)`.
    pub fn frobenius_norm_sq(&self) -> BigInt {
        self.entries().iter().map(|x| *x * *x).sum()
    }

    /// Canonical representative of the PSL class: the first nonzero entry in
    /// the order `(c, d, a, b)` is positive.
    pub fn normalized(&self) -> Self {
        if self.is_sign_normalized() {
            self.clone()
        } else {
            self.negate()
        }
    }

    pub fn is_sign_normalized(&self) -> bool {
        [&self.c, &self.d, &self.a, &self.b]
            .into_iter()
            .find(|x| !x.is_zero())
            .is_none_or(|x| x.is_positive())
    }

    pub fn psl_eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_psl_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Reduction mod 2 is the identity: `a, d` odd and `b, c` even. For
    /// determinant-one matrices this is exactly membership in Γ₀ (as a PSL class).
    pub fn has_gamma0_parity(&self) -> bool {
        self.a.is_odd() && self.d.is_odd() && self.b.is_even() && self.c.is_even()
    }

    pub fn to_mat64(&self) -> Option<Mat64> {
        Some(Mat64::new_unchecked(
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ))
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.multiply(rhs)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.multiply(&rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Compact determinant-one matrix with `i64` entries.
///
/// Ordering and hashing follow the entry tuple `(a, b, c, d)`, which after
/// [`Mat64::normalized`] is a canonical order on PSL classes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat64 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat64 {
    pub const IDENTITY: Mat64 = Mat64 {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub(crate) const fn new_unchecked(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn checked_mul(&self, o: &Mat64) -> Option<Mat64> {
        let dot = |x: i64, y: i64, z: i64, w: i64| x.checked_mul(y)?.checked_add(z.checked_mul(w)?);
        Some(Mat64 {
            a: dot(self.a, o.a, self.b, o.c)?,
            b: dot(self.a, o.b, self.b, o.d)?,
            c: dot(self.c, o.a, self.d, o.c)?,
            d: dot(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn try_mul(&self, o: &Mat64) -> Result<Mat64, MatGroupError> {
        self.checked_mul(o).ok_or(MatGroupError::Overflow)
    }

    pub fn inverse(&self) -> Mat64 {
        Mat64::new_unchecked(self.d, -self.b, -self.c, self.a)
    }

    pub fn normalized(&self) -> Mat64 {
        let lead = [self.c, self.d, self.a, self.b]
            .into_iter()
            .find(|&x| x != 0)
            .unwrap_or(1);
        if lead > 0 {
            *self
        } else {
            Mat64::new_unchecked(-self.a, -self.b, -self.c, -self.d)
        }
    }

    pub fn is_psl_identity(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// `a² + b² + c² + d²`, computed in `i128`.
    pub fn norm_sq(&self) -> i128 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .map(|&x| (x as i128) * (x as i128))
            .sum()
    }

    pub fn to_group_element(&self) -> GroupElement {
        GroupElement {
            a: self.a.into(),
            b: self.b.into(),
            c: self.c.into(),
            d: self.d.into(),
        }
    }
}

/// One of the four letters of a symmetric two-generator alphabet.
///
/// Written `A`, `B` for the generators and `a`, `b` for their inverses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::A | Letter::B)
    }

    /// True for `A` and `a`.
    pub fn is_a(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::AInv => 'a',
            Letter::B => 'B',
            Letter::BInv => 'b',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'A' => Some(Letter::A),
            'a' => Some(Letter::AInv),
            'B' => Some(Letter::B),
            'b' => Some(Letter::BInv),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A word over `{A, a, B, b}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self {
            letters: letters.into_iter().collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// Cancels adjacent letter/inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, n: usize) -> Word {
        Word {
            letters: self.letters.repeat(n),
        }
    }

    /// Subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// All nonempty proper subwords (contiguous, length 1..len−1).
    pub fn proper_subwords(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.len();
        (1..n).flat_map(move |len| (0..=n - len).map(move |s| self.slice(s, s + len)))
    }
}

impl FromStr for Word {
    type Err = MatGroupError;

    /// Parses `A`/`B` as generators and `a`/`b` as inverses; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Letter::from_char(c).ok_or_else(|| MatGroupError::BadWord(s.to_string(), c)))
            .collect::<Result<Vec<_>, _>>()
            .map(|letters| Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Images of the two generators `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub a: GroupElement,
    pub b: GroupElement,
}

impl Alphabet {
    /// `A ↦ u²`, `B ↦ ᵗu²`: the Veech group Γ₀.
    pub fn gamma0() -> Self {
        Self {
            a: GroupElement::u_pow(2),
            b: GroupElement::ut_pow(2),
        }
    }

    /// `A ↦ u`, `B ↦ ᵗu³`: the image group G of the homology representation.
    pub fn windtree_image() -> Self {
        Self {
            a: GroupElement::u_pow(1),
            b: GroupElement::ut_pow(3),
        }
    }

    pub fn image(&self, l: Letter) -> GroupElement {
        match l {
            Letter::A => self.a.clone(),
            Letter::AInv => self.a.inverse(),
            Letter::B => self.b.clone(),
            Letter::BInv => self.b.inverse(),
        }
    }

    /// The four letter images as `i64` matrices, indexed by [`Letter::index`].
    pub fn images64(&self) -> [Mat64; 4] {
        Letter::ALL.map(|l| {
            self.image(l)
                .to_mat64()
                .expect("generator entries fit in i64")
        })
    }
}

/// Product of the letter images, free reduction applied first, returned in
/// PSL canonical form.
pub fn evaluate(w: &Word, alphabet: &Alphabet) -> GroupElement {
    w.free_reduce()
        .letters()
        .iter()
        .fold(GroupElement::identity(), |acc, &l| acc.multiply(&alphabet.image(l)))
        .normalized()
}

/// Writes an element of Γ₀ as the unique reduced word in `u^{±2}`, `ᵗu^{±2}`.
///
/// Norm descent: strip the first letter by left-multiplying with the inverse
/// generator that strictly lowers `a² + b² + c² + d²`. In Γ₀ exactly one
/// letter does so until the identity is reached.
pub fn sanov_decompose(g: &GroupElement) -> Result<Word, MatGroupError> {
    let not_in = || MatGroupError::NotInGamma0(Box::new(g.clone()));
    if !g.has_gamma0_parity() {
        return Err(not_in());
    }
    let alphabet = Alphabet::gamma0();
    let strip: Vec<(Letter, GroupElement)> = Letter::ALL
        .iter()
        .map(|&l| (l, alphabet.image(l.inverse())))
        .collect();
    let mut current = g.normalized();
    let mut norm = current.frobenius_norm_sq();
    let mut word = Word::empty();
    while !current.is_psl_identity() {
        let best = strip
            .iter()
            .map(|(l, inv)| {
                let next = inv.multiply(&current);
                let n = next.frobenius_norm_sq();
                (n, *l, next)
            })
            .min_by(|x, y| x.0.cmp(&y.0))
            .expect("four letters");
        if best.0 >= norm {
            return Err(not_in());
        }
        word.push(best.1);
        norm = best.0;
        current = best.2;
    }
    Ok(word)
}

/// Calls `visit` on every reduced word of length at most `max_len`, in
/// depth-first order, together with its product under `images` (raw SL
/// product, not sign-normalized). `visit` returns whether to descend below
/// the current word.
pub fn for_each_reduced_word<F>(
    images: &[Mat64; 4],
    max_len: usize,
    mut visit: F,
) -> Result<(), MatGroupError>
where
    F: FnMut(&[Letter], &Mat64) -> bool,
{
    let mut stack: Vec<Letter> = Vec::with_capacity(max_len);
    fn rec<F: FnMut(&[Letter], &Mat64) -> bool>(
        images: &[Mat64; 4],
        max_len: usize,
        stack: &mut Vec<Letter>,
        m: &Mat64,
        visit: &mut F,
    ) -> Result<(), MatGroupError> {
        if !visit(stack, m) || stack.len() == max_len {
            return Ok(());
        }
        for l in Letter::ALL {
            if stack.last() == Some(&l.inverse()) {
                continue;
            }
            let next = m.try_mul(&images[l.index()])?;
            stack.push(l);
            rec(images, max_len, stack, &next, visit)?;
            stack.pop();
        }
        Ok(())
    }
    rec(images, max_len, &mut stack, &Mat64::IDENTITY, &mut visit)
}
