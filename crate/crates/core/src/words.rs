//! Reduced words in the free group on `a` and `b`, and the relator words of
//! two-bridge knots `b(p, q)` and double twist knots `J(k, 2n)`.
//!
//! ASCII form uses a capital letter for an inverse generator, so `aBAb` is
//! `a b^-1 a^-1 b`. The Unicode rendering (`Display`) writes `ab⁻¹a⁻¹b`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
}

/// A generator raised to `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Generator,
    pub inverted: bool,
}

impl Letter {
    pub const A: Letter = Letter::new(Generator::A, false);
    pub const A_INV: Letter = Letter::new(Generator::A, true);
    pub const B: Letter = Letter::new(Generator::B, false);
    pub const B_INV: Letter = Letter::new(Generator::B, true);

    pub const fn new(gen: Generator, inverted: bool) -> Self {
        Letter { gen, inverted }
    }

    pub fn exponent(self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.gen, !self.inverted)
    }

    /// `a -> b^-1`, `b -> a^-1`.
    pub fn tilde(self) -> Letter {
        let gen = match self.gen {
            Generator::A => Generator::B,
            Generator::B => Generator::A,
        };
        Letter::new(gen, !self.inverted)
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverted != other.inverted
    }

    fn ascii(self) -> char {
        match (self.gen, self.inverted) {
            (Generator::A, false) => 'a',
            (Generator::A, true) => 'A',
            (Generator::B, false) => 'b',
            (Generator::B, true) => 'B',
        }
    }
}

/// A freely reduced word. Construction always reduces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    pub fn letter(l: Letter) -> Self {
        FreeWord { letters: vec![l] }
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

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Letters in reverse order with exponents kept.
    pub fn reverse(&self) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().rev().copied())
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let reps = n.unsigned_abs() as usize;
        FreeWord::from_letters(std::iter::repeat_n(base.letters.iter().copied(), reps).flatten())
    }

    pub fn tilde(&self) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().map(|l| l.tilde()))
    }

    /// `w != 1` and `tilde(w) = w^-1`, the condition under which
    /// `<a, b | wa = bw>` has a single Riley polynomial.
    pub fn is_admissible(&self) -> bool {
        !self.is_empty() && self.tilde() == self.inverse()
    }

    pub fn to_ascii(&self) -> String {
        self.letters.iter().map(|l| l.ascii()).collect()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            let g = match l.gen {
                Generator::A => 'a',
                Generator::B => 'b',
            };
            if l.inverted {
                write!(f, "{g}⁻¹")?;
            } else {
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Parses the ASCII form. Whitespace is ignored; `1` or an empty string is
    /// the identity.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "1" {
            return Ok(FreeWord::empty());
        }
        let mut letters = Vec::with_capacity(trimmed.len());
        for ch in trimmed.chars() {
            let l = match ch {
                'a' => Letter::A,
                'A' => Letter::A_INV,
                'b' => Letter::B,
                'B' => Letter::B_INV,
                c if c.is_whitespace() => continue,
                found => {
                    return Err(Error::ParseWord {
                        input: s.to_string(),
                        found,
                    })
                }
            };
            letters.push(l);
        }
        Ok(FreeWord::from_letters(letters))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ascii())
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters of the two-bridge knot `b(p, q)`: odd, coprime, `p > |q| >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoBridgeParams {
    p: i64,
    q: i64,
}

impl TwoBridgeParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || p % 2 == 0 || q % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "b({p},{q}): p must be odd positive and q odd"
            )));
        }
        if q.abs() >= p {
            return Err(Error::InvalidParams(format!(
                "b({p},{q}): need p > |q| >= 1"
            )));
        }
        if gcd(p, q.abs()) != 1 {
            return Err(Error::InvalidParams(format!(
                "b({p},{q}): p and q must be coprime"
            )));
        }
        Ok(TwoBridgeParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// All valid parameter pairs with `p <= max_p`.
    pub fn enumerate(max_p: i64) -> Vec<TwoBridgeParams> {
        let mut out = Vec::new();
        for p in (3..=max_p).step_by(2) {
            for q in (-(p - 1)..p).filter(|q| q % 2 != 0) {
                if let Ok(params) = TwoBridgeParams::new(p, q) {
                    out.push(params);
                }
            }
        }
        out
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

/// `w = a^e1 b^e2 ... a^e_{p-2} b^e_{p-1}` with `e_i = (-1)^floor(iq/p)`.
pub fn twobridge_word(params: &TwoBridgeParams) -> FreeWord {
    let (p, q) = (params.p, params.q);
    FreeWord::from_letters((1..p).map(|i| {
        let inverted = (i * q).div_euclid(p).rem_euclid(2) == 1;
        let gen = if i % 2 == 1 {
            Generator::A
        } else {
            Generator::B
        };
        Letter::new(gen, inverted)
    }))
}

/// Which closed form applies to `J(k, 2n)`: `k = 2m + 1` or `k = 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "parity", content = "m", rename_all = "lowercase")]
pub enum Family {
    Odd(u32),
    Even(u32),
}

impl Family {
    pub fn of_k(k: u32) -> Family {
        if k % 2 == 1 {
            Family::Odd(k / 2)
        } else {
            Family::Even(k / 2)
        }
    }

    pub fn m(self) -> u32 {
        match self {
            Family::Odd(m) | Family::Even(m) => m,
        }
    }
}

/// The double twist knot `J(k, 2n)` with `k >= 2` and `n != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotParam {
    k: u32,
    n: i32,
}

impl KnotParam {
    pub fn new(k: i64, n: i64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("J({k},2n): need k >= 2")));
        }
        if n == 0 {
            return Err(Error::InvalidParams("J(k,2n): need n != 0".into()));
        }
        let k = u32::try_from(k).map_err(|_| Error::InvalidParams(format!("k = {k} too large")))?;
        let n = i32::try_from(n).map_err(|_| Error::InvalidParams(format!("n = {n} too large")))?;
        Ok(KnotParam { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn family(&self) -> Family {
        Family::of_k(self.k)
    }

    /// Relator base word `w`; the knot group is `<a, b | w^n a = b w^n>`.
    pub fn word(&self) -> FreeWord {
        jk_word_unchecked(self.k)
    }
}

impl fmt::Display for KnotParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", self.k, 2 * self.n)
    }
}

/// `(ba^-1)^m ba (b^-1a)^m` for `k = 2m + 1`, `(ba^-1)^m (b^-1a)^m` for `k = 2m`.
pub fn jk_word(k: i64) -> Result<FreeWord> {
    if k < 2 {
        return Err(Error::InvalidParams(format!(
            "jk_word: need k >= 2, got {k}"
        )));
    }
    let k = u32::try_from(k).map_err(|_| Error::InvalidParams(format!("k = {k} too large")))?;
    Ok(jk_word_unchecked(k))
}

fn jk_word_unchecked(k: u32) -> FreeWord {
    let left = FreeWord::from_letters([Letter::B, Letter::A_INV]);
    let right = FreeWord::from_letters([Letter::B_INV, Letter::A]);
    let m = i64::from(k / 2);
    let middle = if k % 2 == 1 {
        FreeWord::from_letters([Letter::B, Letter::A])
    } else {
        FreeWord::empty()
    };
    left.pow(m).concat(&middle).concat(&right.pow(m))
}
