//! Faces of model cubes and the embeddings that glue cells together.
//!
//! A face of `[0,1]^k` is a [`Pattern`]: every coordinate is either fixed at
//! 0 or 1, or free. An [`Embedding`] is an isometry from a lower-dimensional
//! model cube onto one face of a higher one; composing facet embeddings gives
//! every face of a cell together with the exact way it is attached.

use std::fmt;

/// A face of the model cube `[0,1]^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(pub Vec<Option<bool>>);

impl Pattern {
    pub fn full(k: usize) -> Self {
        Pattern(vec![None; k])
    }

    pub fn corner(bits: &[bool]) -> Self {
        Pattern(bits.iter().copied().map(Some).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    /// Dimension of the face (number of free coordinates).
    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| c.is_none()).count()
    }

    pub fn free_axes(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_none()).collect()
    }

    pub fn fixed_axes(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_some()).collect()
    }

    pub fn with(&self, axis: usize, value: Option<bool>) -> Self {
        let mut p = self.clone();
        p.0[axis] = value;
        p
    }

    /// `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Pattern) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| b.is_none() || a == b)
    }

    /// Base-3 code, used to index per-cell face tables.
    pub fn code(&self) -> usize {
        self.0.iter().rev().fold(0, |acc, c| {
            acc * 3
                + match c {
                    None => 0,
                    Some(false) => 1,
                    Some(true) => 2,
                }
        })
    }

    pub fn from_code(k: usize, mut code: usize) -> Self {
        let mut v = Vec::with_capacity(k);
        for _ in 0..k {
            v.push(match code % 3 {
                0 => None,
                1 => Some(false),
                _ => Some(true),
            });
            code /= 3;
        }
        Pattern(v)
    }

    pub fn all(k: usize) -> impl Iterator<Item = Pattern> {
        (0..3usize.pow(k as u32)).map(move |c| Pattern::from_code(k, c))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            let ch = match c {
                None => '*',
                Some(false) => '0',
                Some(true) => '1',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coord {
    Const(bool),
    /// Parent coordinate equals sub-cube coordinate `src`, reflected when `flip`.
    Var { src: usize, flip: bool },
}

/// Isometric embedding of `[0,1]^j` onto a face of `[0,1]^k`, one entry per
/// parent coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub coords: Vec<Coord>,
}

impl Embedding {
    pub fn identity(k: usize) -> Self {
        Embedding { coords: (0..k).map(|i| Coord::Var { src: i, flip: false }).collect() }
    }

    pub fn parent_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.coords.iter().filter(|c| matches!(c, Coord::Var { .. })).count()
    }

    /// The face of the parent cube covered by the image.
    pub fn image(&self) -> Pattern {
        Pattern(
            self.coords
                .iter()
                .map(|c| match c {
                    Coord::Const(b) => Some(*b),
                    Coord::Var { .. } => None,
                })
                .collect(),
        )
    }

    /// `self ∘ inner`: `inner` embeds into the sub-cube of `self`.
    pub fn compose(&self, inner: &Embedding) -> Embedding {
        Embedding {
            coords: self
                .coords
                .iter()
                .map(|c| match *c {
                    Coord::Const(b) => Coord::Const(b),
                    Coord::Var { src, flip } => match inner.coords[src] {
                        Coord::Const(b) => Coord::Const(b ^ flip),
                        Coord::Var { src: s2, flip: f2 } => Coord::Var { src: s2, flip: flip ^ f2 },
                    },
                })
                .collect(),
        }
    }

    /// Image of a sub-cube face in parent coordinates.
    pub fn push(&self, sub: &Pattern) -> Pattern {
        Pattern(
            self.coords
                .iter()
                .map(|c| match *c {
                    Coord::Const(b) => Some(b),
                    Coord::Var { src, flip } => sub.0[src].map(|b| b ^ flip),
                })
                .collect(),
        )
    }

    /// Preimage of a parent face lying inside the image; `None` otherwise.
    pub fn pull(&self, parent: &Pattern) -> Option<Pattern> {
        let mut out = vec![None; self.sub_dim()];
        for (c, p) in self.coords.iter().zip(&parent.0) {
            match (*c, *p) {
                (Coord::Const(b), Some(v)) if b != v => return None,
                (Coord::Const(_), None) => return None,
                (Coord::Const(_), Some(_)) => {}
                (Coord::Var { src, flip }, v) => out[src] = v.map(|b| b ^ flip),
            }
        }
        Some(Pattern(out))
    }

    /// Parent coordinate that carries sub-cube coordinate `src`.
    pub fn parent_axis(&self, src: usize) -> Option<(usize, bool)> {
        self.coords.iter().enumerate().find_map(|(i, c)| match *c {
            Coord::Var { src: s, flip } if s == src => Some((i, flip)),
            _ => None,
        })
    }

    /// Integer affine form `x ↦ M x + o` (`M` is `parent × sub`).
    pub fn affine(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let k = self.parent_dim();
        let j = self.sub_dim();
        let mut m = vec![vec![0i64; j]; k];
        let mut o = vec![0i64; k];
        for (r, c) in self.coords.iter().enumerate() {
            match *c {
                Coord::Const(b) => o[r] = i64::from(b),
                Coord::Var { src, flip } => {
                    m[r][src] = if flip { -1 } else { 1 };
                    o[r] = i64::from(flip);
                }
            }
        }
        (m, o)
    }
}
