use crate::error::{Error, Result};

use super::word::Step;

/// Sentinel for "never visited" in the per-cell time stamps and for the
/// kappa guard slot; larger than any valid step index.
pub const NEVER: u32 = u32::MAX;

/// The decorated finite grid on which length-`len` admissible words grow.
///
/// Cells are addressed as `width * y + x` with (0,0) bottom-left. Each cell
/// carries its Manhattan distance `d` to the base cell (`u32::MAX` on
/// forbidden cells, which encodes both the walls and the base-point
/// constraint) and a last-visit step stamp `t` that is only cleared lazily:
/// stale stamps are disambiguated against the `kappa` path array.
pub struct GameBoard {
    len: usize,
    width: usize,
    height: usize,
    base: usize,
    dist: Vec<u32>,
    time: Vec<u32>,
    /// kappa[k] = cell occupied after k steps of the current word; slot
    /// len is the guard written by the deepest apply.
    kappa: Vec<u32>,
}

impl GameBoard {
    /// Board for polygons of even length `len >= 4`: width len-1, height
    /// len/2 + 2, base cell one column in from the west wall past the
    /// forbidden stretch west of the base point.
    pub fn new(len: usize) -> Result<GameBoard> {
        if len % 2 != 0 {
            return Err(Error::OddLength(len));
        }
        assert!(len >= 4, "the length-2 polygon bypasses the board");
        let east_reach = len / 2 - 1;
        // one column in from the wall, past the len/2 - 3 cells the west
        // reach needs (none for the shortest boards)
        let base_x = (len / 2).saturating_sub(3) + 1;
        let base_y = 1usize;
        let width = len - 1;
        let height = len / 2 + 2;
        let mut dist = vec![NEVER; width * height];
        for y in 0..height {
            for x in 0..width {
                let forbidden = y == 0
                    || y == height - 1
                    || x == 0
                    || x > base_x + east_reach
                    || (y == base_y && x < base_x);
                if !forbidden {
                    let d = x.abs_diff(base_x) + y.abs_diff(base_y);
                    dist[width * y + x] = d as u32;
                }
            }
        }
        Ok(GameBoard {
            len,
            width,
            height,
            base: width * base_y + base_x,
            dist,
            time: vec![NEVER; width * height],
            kappa: vec![NEVER; len + 1],
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn base_cell(&self) -> usize {
        self.base
    }

    pub fn base_xy(&self) -> (usize, usize) {
        (self.base % self.width, self.base / self.width)
    }

    /// Destination cell of a step, or None when it leaves the grid.
    pub fn neighbor(&self, cell: usize, s: Step) -> Option<usize> {
        let (x, y) = (cell % self.width, cell / self.width);
        let (nx, ny) = match s {
            Step::Down => (x as isize, y as isize - 1),
            Step::Left => (x as isize - 1, y as isize),
            Step::Right => (x as isize + 1, y as isize),
            Step::Up => (x as isize, y as isize + 1),
        };
        if nx < 0 || ny < 0 || nx >= self.width as isize || ny >= self.height as isize {
            None
        } else {
            Some(self.width * ny as usize + nx as usize)
        }
    }

    /// Whether step `s` may be appended as letter `k` (0-based) of the word,
    /// standing on `cell` after `k` steps.
    ///
    /// The budget rule allows equality, (k+1) + d(destination) <= len, and
    /// subsumes walls through their infinite distance. Landing on the base
    /// cell is closure when it happens at exactly step `len` and a
    /// self-intersection otherwise; other revisits are detected by the time
    /// stamp confirmed against kappa, which weeds out stale stamps left by
    /// abandoned branches.
    pub fn can_add(&self, cell: usize, k: usize, s: Step) -> bool {
        let Some(dest) = self.neighbor(cell, s) else {
            return false;
        };
        let d = self.dist[dest];
        if d == NEVER || (k + 1) + d as usize > self.len {
            return false;
        }
        if dest == self.base {
            return k + 1 == self.len;
        }
        let t = self.time[dest];
        !(t != NEVER && (t as usize) <= k && self.kappa[t as usize] == dest as u32)
    }

    /// Records letter `k` taken from `cell`: stamps the cell, stores the
    /// path position, and resets the guard slot above.
    pub fn apply(&mut self, cell: usize, k: usize) {
        self.time[cell] = k as u32;
        self.kappa[k] = cell as u32;
        self.kappa[k + 1] = NEVER;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_base() {
        let b = GameBoard::new(8).unwrap();
        assert_eq!((b.width(), b.height()), (7, 6));
        assert_eq!(b.base_xy(), (2, 1));

        let b = GameBoard::new(4).unwrap();
        assert_eq!((b.width(), b.height()), (3, 4));
        assert_eq!(b.base_xy(), (1, 1));

        assert!(matches!(GameBoard::new(7), Err(Error::OddLength(7))));
    }

    #[test]
    fn forbidden_cells_have_infinite_distance() {
        let b = GameBoard::new(8).unwrap();
        let d = |x: usize, y: usize| b.dist[b.width() * y + x];
        // walls
        assert_eq!(d(0, 1), NEVER);
        assert_eq!(d(3, 0), NEVER);
        assert_eq!(d(3, 5), NEVER);
        assert_eq!(d(6, 2), NEVER);
        // west of the base point on the base row
        assert_eq!(d(1, 1), NEVER);
        // interior distances are Manhattan
        assert_eq!(d(2, 1), 0);
        assert_eq!(d(5, 3), 5);
        assert_eq!(d(4, 4), 5);
    }

    #[test]
    fn fig8_rejections() {
        // state after w = RURU on the length-8 board
        let mut b = GameBoard::new(8).unwrap();
        let mut cell = b.base_cell();
        let mut k = 0;
        for s in [Step::Right, Step::Up, Step::Right, Step::Up] {
            assert!(b.can_add(cell, k, s));
            b.apply(cell, k);
            cell = b.neighbor(cell, s).unwrap();
            k += 1;
        }
        // D revisits the cell entered at step 3; R and U run out of budget
        assert!(!b.can_add(cell, k, Step::Down));
        assert!(!b.can_add(cell, k, Step::Right));
        assert!(!b.can_add(cell, k, Step::Up));
        assert!(b.can_add(cell, k, Step::Left));
    }
}
