//! Word problem for the dihedral Artin group
//! `DA_n = <a, b | aba... = bab...>` (n letters per side) via the left-greedy
//! Garside normal form `Delta^k s_1 ... s_r`.
//!
//! Proper simple elements are the alternating positive words of length
//! `1..n-1`; each is fixed by its first letter and length. A pair `(s, t)` of
//! proper simples is left-weighted exactly when `s` ends with the letter `t`
//! starts with.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    fn as_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter {
        gen: Gen::A,
        inverse: false,
    };
    pub const B: Letter = Letter {
        gen: Gen::B,
        inverse: false,
    };
    pub const A_INV: Letter = Letter {
        gen: Gen::A,
        inverse: true,
    };
    pub const B_INV: Letter = Letter {
        gen: Gen::B,
        inverse: true,
    };
    pub const ALL: [Letter; 4] = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn as_char(self) -> char {
        let c = self.gen.as_char();
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// Parses `a`, `b` (generators) and `A`, `B` or `a^-1`, `a⁻¹` (inverses).
/// Whitespace is ignored.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < chars.len() {
        let mut letter = match chars[i] {
            'a' => Letter::A,
            'b' => Letter::B,
            'A' => Letter::A_INV,
            'B' => Letter::B_INV,
            c => return Err(Error::Domain(format!("unexpected character {c:?} in word {s:?}"))),
        };
        i += 1;
        let rest: String = chars[i..].iter().take(3).collect();
        if rest.starts_with("^-1") {
            letter = letter.inv();
            i += 3;
        } else if rest.starts_with("⁻¹") {
            letter = letter.inv();
            i += 2;
        }
        out.push(letter);
    }
    Ok(out)
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

pub fn invert_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Alternating positive word of length `len` starting with `start`.
pub fn alternating(start: Gen, len: u32) -> Vec<Letter> {
    let mut g = start;
    (0..len)
        .map(|_| {
            let l = Letter { gen: g, inverse: false };
            g = g.other();
            l
        })
        .collect()
}

/// A proper simple element: alternating positive word, `1 <= len < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simple {
    pub start: Gen,
    pub len: u32,
}

impl Simple {
    pub fn last(self) -> Gen {
        if self.len % 2 == 1 {
            self.start
        } else {
            self.start.other()
        }
    }
}

/// Canonical form `Delta^delta * factors[0] * ... * factors[r-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GarsideElement {
    pub delta: i64,
    pub factors: Vec<Simple>,
}

impl GarsideElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.delta == 0 && self.factors.is_empty()
    }

    /// Length in the word metric whose generators are the simple elements.
    pub fn simple_length(&self) -> u64 {
        let inf = self.delta;
        let sup = self.delta + self.factors.len() as i64;
        (sup.max(0) - inf.min(0)) as u64
    }
}

impl fmt::Display for GarsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut parts = Vec::new();
        if self.delta != 0 {
            parts.push(format!("D^{}", self.delta));
        }
        for s in &self.factors {
            parts.push(word_to_string(&alternating(s.start, s.len)));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// The group `DA_n` with normal-form arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dihedral {
    n: u32,
}

impl Dihedral {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("dihedral Artin group needs n >= 2, got {n}")));
        }
        Ok(Dihedral { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// Conjugation by Delta: swaps the generators when `n` is odd.
    fn tau(self, g: Gen) -> Gen {
        if self.n % 2 == 1 {
            g.other()
        } else {
            g
        }
    }

    fn tau_all(self, x: &mut GarsideElement) {
        for s in &mut x.factors {
            s.start = self.tau(s.start);
        }
    }

    fn push_positive(self, x: &mut GarsideElement, g: Gen) {
        match x.factors.last_mut() {
            Some(last) if last.last() != g => {
                last.len += 1;
                if last.len == self.n {
                    // s_1..s_{r-1} Delta = Delta tau(s_1)..tau(s_{r-1})
                    x.factors.pop();
                    self.tau_all(x);
                    x.delta += 1;
                }
            }
            _ => {
                x.factors.push(Simple { start: g, len: 1 });
            }
        }
    }

    fn push_delta_inverse(self, x: &mut GarsideElement) {
        self.tau_all(x);
        x.delta -= 1;
    }

    /// Right-multiplies `x` by a single letter in place.
    pub fn push_letter(self, x: &mut GarsideElement, l: Letter) {
        if l.inverse {
            // l^{-1}... x^{-1} = rest * Delta^{-1} where Delta = x * rest
            for r in alternating(l.gen.other(), self.n - 1) {
                self.push_positive(x, r.gen);
            }
            self.push_delta_inverse(x);
        } else {
            self.push_positive(x, l.gen);
        }
    }

    pub fn normalize(self, word: &[Letter]) -> GarsideElement {
        let mut x = GarsideElement::identity();
        for &l in word {
            self.push_letter(&mut x, l);
        }
        x
    }

    pub fn delta_word(self) -> Vec<Letter> {
        alternating(Gen::A, self.n)
    }

    /// A word representing `x` (Delta powers expanded).
    pub fn to_word(self, x: &GarsideElement) -> Vec<Letter> {
        let mut w = Vec::new();
        let d = self.delta_word();
        let d_inv = invert_word(&d);
        for _ in 0..x.delta.unsigned_abs() {
            w.extend_from_slice(if x.delta > 0 { &d } else { &d_inv });
        }
        for s in &x.factors {
            w.extend(alternating(s.start, s.len));
        }
        w
    }

    pub fn multiply(self, x: &GarsideElement, y: &GarsideElement) -> GarsideElement {
        let mut out = x.clone();
        if y.delta >= 0 {
            for _ in 0..y.delta {
                for l in self.delta_word() {
                    self.push_positive(&mut out, l.gen);
                }
            }
        } else {
            for _ in 0..(-y.delta) {
                self.push_delta_inverse(&mut out);
            }
        }
        for s in &y.factors {
            for l in alternating(s.start, s.len) {
                self.push_positive(&mut out, l.gen);
            }
        }
        out
    }

    pub fn multiply_word(self, x: &GarsideElement, w: &[Letter]) -> GarsideElement {
        let mut out = x.clone();
        for &l in w {
            self.push_letter(&mut out, l);
        }
        out
    }

    pub fn inverse(self, x: &GarsideElement) -> GarsideElement {
        self.normalize(&invert_word(&self.to_word(x)))
    }

    pub fn generator(self, l: Letter) -> GarsideElement {
        self.normalize(&[l])
    }

    /// `u_i`: alternating positive word of length `i` starting with `a`.
    pub fn upper(self, i: u32) -> GarsideElement {
        self.normalize(&alternating(Gen::A, i))
    }

    /// `d_i`: alternating positive word of length `i` starting with `b`.
    pub fn lower(self, i: u32) -> GarsideElement {
        self.normalize(&alternating(Gen::B, i))
    }

    /// The relator `aba... (bab...)^{-1}` of length `2n`.
    pub fn relator(self) -> Vec<Letter> {
        let mut r = alternating(Gen::A, self.n);
        r.extend(invert_word(&alternating(Gen::B, self.n)));
        r
    }

    /// Elements of word length at most `radius` over `{a, b}^{±1}`, in BFS order.
    pub fn ball_elements(self, radius: u32) -> Vec<GarsideElement> {
        self.ball_elements_capped(radius, usize::MAX).expect("uncapped")
    }

    /// As [`Self::ball_elements`], failing once more than `cap` elements are found.
    pub fn ball_elements_capped(self, radius: u32, cap: usize) -> Result<Vec<GarsideElement>> {
        let mut seen = HashSet::new();
        let mut order = vec![GarsideElement::identity()];
        seen.insert(GarsideElement::identity());
        let mut frontier = VecDeque::from([(GarsideElement::identity(), 0u32)]);
        while let Some((g, d)) = frontier.pop_front() {
            if d == radius {
                continue;
            }
            for l in Letter::ALL {
                let h = self.multiply_word(&g, &[l]);
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Config(format!(
                            "ball of radius {radius} in DA_{} exceeds {cap} elements",
                            self.n
                        )));
                    }
                    order.push(h.clone());
                    frontier.push_back((h, d + 1));
                }
            }
        }
        Ok(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Vec<Letter> {
        let len = rng.gen_range(0..=max);
        (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect()
    }

    #[test]
    fn braid_relation() {
        let g = Dihedral::new(3).unwrap();
        assert_eq!(
            g.normalize(&parse_word("aba").unwrap()),
            g.normalize(&parse_word("bab").unwrap())
        );
        assert_eq!(g.normalize(&parse_word("aba").unwrap()).delta, 1);
        assert_ne!(
            g.normalize(&parse_word("ab").unwrap()),
            g.normalize(&parse_word("ba").unwrap())
        );
    }

    #[test]
    fn commuting_case() {
        let g = Dihedral::new(2).unwrap();
        let lhs = g.normalize(&parse_word("a b a^-1").unwrap());
        assert_eq!(lhs, g.normalize(&parse_word("b").unwrap()));
    }

    #[test]
    fn empty_word_is_identity() {
        let g = Dihedral::new(5).unwrap();
        let e = g.normalize(&[]);
        assert!(e.is_identity());
        assert_eq!(e.to_string(), "e");
        assert!(Dihedral::new(1).is_err());
    }

    #[test]
    fn normal_form_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=6 {
            let g = Dihedral::new(n).unwrap();
            for _ in 0..200 {
                let x = g.normalize(&random_word(&mut rng, 12));
                for w in x.factors.windows(2) {
                    assert_eq!(w[0].last(), w[1].start);
                }
                assert!(x.factors.iter().all(|s| s.len >= 1 && s.len < n));
                assert_eq!(g.normalize(&g.to_word(&x)), x);
            }
        }
    }

    #[test]
    fn group_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=5 {
            let g = Dihedral::new(n).unwrap();
            for _ in 0..200 {
                let x = g.normalize(&random_word(&mut rng, 8));
                let y = g.normalize(&random_word(&mut rng, 8));
                let z = g.normalize(&random_word(&mut rng, 8));
                assert!(g.multiply(&x, &g.inverse(&x)).is_identity());
                assert_eq!(g.multiply(&GarsideElement::identity(), &y), y);
                assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
            }
        }
    }

    #[test]
    fn relator_is_trivial_and_delta_squared_central() {
        for n in 2..=7 {
            let g = Dihedral::new(n).unwrap();
            assert!(g.normalize(&g.relator()).is_identity());
            let d2 = g.normalize(&[g.delta_word(), g.delta_word()].concat());
            for l in Letter::ALL {
                let x = g.generator(l);
                assert_eq!(g.multiply(&d2, &x), g.multiply(&x, &d2));
            }
        }
    }

    #[test]
    fn small_balls() {
        for n in 2..=6 {
            let g = Dihedral::new(n).unwrap();
            assert_eq!(g.ball_elements(1).len(), 5);
            assert_eq!(g.ball_elements(2).len(), if n == 2 { 13 } else { 17 });
        }
        assert!(Dihedral::new(3).unwrap().ball_elements_capped(6, 50).is_err());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("aB").unwrap(), vec![Letter::A, Letter::B_INV]);
        assert_eq!(parse_word("a⁻¹b").unwrap(), vec![Letter::A_INV, Letter::B]);
        assert!(parse_word("c").is_err());
        assert_eq!(free_reduce(&parse_word("abBa").unwrap()), parse_word("aa").unwrap());
    }
}
