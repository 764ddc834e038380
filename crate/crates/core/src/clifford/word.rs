//! Generators and canonical words of the algebra generated by `c(f_i)`,
//! `c(h_s)` and `ĉ(h_s)`.

use std::fmt;

/// Largest generator index per kind.
pub const MAX_INDEX: u8 = 21;

/// A single generator; indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    /// `c(f_i)`, squares to `−1`.
    Cf(u8),
    /// `c(h_s)`, squares to `−1`.
    Ch(u8),
    /// `ĉ(h_s)`, squares to `+1`.
    Hh(u8),
}

impl Generator {
    fn bit(self) -> u32 {
        let (base, i) = match self {
            Generator::Cf(i) => (0, i),
            Generator::Ch(i) => (MAX_INDEX as u32, i),
            Generator::Hh(i) => (2 * MAX_INDEX as u32, i),
        };
        assert!((1..=MAX_INDEX).contains(&i), "generator index out of range: {self:?}");
        base + i as u32 - 1
    }

    fn from_bit(b: u32) -> Generator {
        let m = MAX_INDEX as u32;
        let i = (b % m + 1) as u8;
        match b / m {
            0 => Generator::Cf(i),
            1 => Generator::Ch(i),
            _ => Generator::Hh(i),
        }
    }

    /// The value of the generator squared.
    pub fn square(self) -> i8 {
        match self {
            Generator::Cf(_) | Generator::Ch(_) => -1,
            Generator::Hh(_) => 1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cf(i) => write!(f, "c(f{i})"),
            Generator::Ch(s) => write!(f, "c(h{s})"),
            Generator::Hh(s) => write!(f, "ĉ(h{s})"),
        }
    }
}

/// A canonical word: distinct generators in the order `Cf < Ch < Hh`, increasing
/// index within each kind. The sign of a raw word is returned separately by
/// [`normalize`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CliffordWord {
    mask: u64,
}

impl CliffordWord {
    pub fn identity() -> Self {
        Self { mask: 0 }
    }

    pub fn single(g: Generator) -> Self {
        Self { mask: 1u64 << g.bit() }
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        let mut m = self.mask;
        while m != 0 {
            let b = m.trailing_zeros();
            out.push(Generator::from_bit(b));
            m &= m - 1;
        }
        out
    }

    /// Product of canonical words: `(sign, word)`.
    pub fn mul(&self, o: &CliffordWord) -> (i8, CliffordWord) {
        let mut swaps = 0u32;
        let mut m = o.mask;
        while m != 0 {
            let b = m.trailing_zeros();
            let above = if b == 63 { 0 } else { self.mask & (!0u64 << (b + 1)) };
            swaps += above.count_ones();
            m &= m - 1;
        }
        let mut sign: i8 = if swaps.is_multiple_of(2) { 1 } else { -1 };
        let mut common = self.mask & o.mask;
        while common != 0 {
            let b = common.trailing_zeros();
            sign *= Generator::from_bit(b).square();
            common &= common - 1;
        }
        (sign, CliffordWord { mask: self.mask ^ o.mask })
    }
}

impl fmt::Display for CliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(""))
    }
}

impl fmt::Debug for CliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rewrites a raw product of generators into `sign · canonical word`.
pub fn normalize(raw: &[Generator]) -> (i8, CliffordWord) {
    raw.iter().fold((1, CliffordWord::identity()), |(s, w), g| {
        let (t, w2) = w.mul(&CliffordWord::single(*g));
        (s * t, w2)
    })
}
