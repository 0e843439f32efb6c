use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One lattice step. The discriminants are the frozen two-bit storage codes
/// and the ordering D < L < R < U is the enumeration alphabet order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Step {
    Down = 0b00,
    Left = 0b01,
    Right = 0b10,
    Up = 0b11,
}

pub const ALPHABET: [Step; 4] = [Step::Down, Step::Left, Step::Right, Step::Up];

impl Step {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Step {
        match code & 0b11 {
            0b00 => Step::Down,
            0b01 => Step::Left,
            0b10 => Step::Right,
            _ => Step::Up,
        }
    }

    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::Down => (0, -1),
            Step::Left => (-1, 0),
            Step::Right => (1, 0),
            Step::Up => (0, 1),
        }
    }

    /// Step in the opposite direction.
    pub fn reversed(self) -> Step {
        match self {
            Step::Down => Step::Up,
            Step::Left => Step::Right,
            Step::Right => Step::Left,
            Step::Up => Step::Down,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Step::Down => 'D',
            Step::Left => 'L',
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }

    pub fn from_char(c: char) -> Result<Step> {
        match c {
            'D' => Ok(Step::Down),
            'L' => Ok(Step::Left),
            'R' => Ok(Step::Right),
            'U' => Ok(Step::Up),
            other => Err(Error::BadStepChar(other)),
        }
    }
}

/// A walk on the square lattice as a step sequence starting at the origin.
/// Canonical polygons compare lexicographically through the derived `Ord`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    steps: Vec<Step>,
}

impl Word {
    pub fn new(steps: Vec<Step>) -> Word {
        Word { steps }
    }

    pub fn empty() -> Word {
        Word { steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Vertices visited after each step, starting from the origin; for a
    /// closed walk the final entry is (0, 0).
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut pos = (0i64, 0i64);
        self.steps
            .iter()
            .map(|s| {
                let (dx, dy) = s.delta();
                pos = (pos.0 + dx, pos.1 + dy);
                pos
            })
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        let (mut x, mut y) = (0i64, 0i64);
        for s in &self.steps {
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
        }
        x == 0 && y == 0 && !self.is_empty()
    }

    /// Closed with pairwise-distinct visited vertices. The length-2 doubled
    /// edge qualifies: it revisits an edge but no vertex.
    pub fn is_self_avoiding_polygon(&self) -> bool {
        if !self.is_closed() {
            return false;
        }
        let verts = self.vertices();
        let mut seen = HashSet::with_capacity(verts.len());
        verts.iter().all(|v| seen.insert(*v))
    }

    /// Independent geometric check that this word is the canonical
    /// representative of its polygon: closed, self-avoiding, base-pointed at
    /// the origin (nothing below the base row, nothing west of the origin on
    /// it), first letter R and, for length >= 4, last letter D.
    pub fn is_canonical(&self) -> bool {
        let l = self.len();
        if l < 2 || l % 2 != 0 {
            return false;
        }
        if self.steps[0] != Step::Right {
            return false;
        }
        if l >= 4 && self.steps[l - 1] != Step::Down {
            return false;
        }
        if !self.is_self_avoiding_polygon() {
            return false;
        }
        self.vertices()
            .iter()
            .all(|&(x, y)| y > 0 || (y == 0 && x >= 0))
    }

    /// The same closed walk re-rooted to start at vertex `k` of the cycle,
    /// keeping the orientation.
    pub fn rotate_root(&self, k: usize) -> Word {
        let l = self.len();
        let mut steps = Vec::with_capacity(l);
        steps.extend_from_slice(&self.steps[k..]);
        steps.extend_from_slice(&self.steps[..k]);
        Word::new(steps)
    }

    /// The same closed walk traversed in the opposite orientation.
    pub fn reverse_orientation(&self) -> Word {
        Word::new(self.steps.iter().rev().map(|s| s.reversed()).collect())
    }

    /// Image under one of the eight symmetries of the square lattice,
    /// indexed 0..8: four rotations then four reflections.
    pub fn dihedral_image(&self, which: usize) -> Word {
        use Step::{Down, Left, Right, Up};
        let map = |s: Step| -> Step {
            match which % 8 {
                0 => s,
                // quarter turns
                1 => match s {
                    Right => Up,
                    Up => Left,
                    Left => Down,
                    Down => Right,
                },
                2 => s.reversed(),
                3 => match s {
                    Right => Down,
                    Down => Left,
                    Left => Up,
                    Up => Right,
                },
                // mirror x, mirror y, and the two diagonal mirrors
                4 => match s {
                    Right => Left,
                    Left => Right,
                    other => other,
                },
                5 => match s {
                    Up => Down,
                    Down => Up,
                    other => other,
                },
                6 => match s {
                    Right => Up,
                    Up => Right,
                    Left => Down,
                    Down => Left,
                },
                _ => match s {
                    Right => Down,
                    Down => Right,
                    Left => Up,
                    Up => Left,
                },
            }
        };
        Word::new(self.steps.iter().map(|&s| map(s)).collect())
    }
}

/// Canonical word of the L x L square: R^L U^L L^L D^L.
pub fn square_word(side: usize) -> Word {
    assert!(side >= 1);
    let mut steps = Vec::with_capacity(4 * side);
    for step in [Step::Right, Step::Up, Step::Left, Step::Down] {
        steps.extend(std::iter::repeat_n(step, side));
    }
    Word::new(steps)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        s.chars().map(Step::from_char).collect::<Result<Vec<_>>>().map(Word::new)
    }
}
