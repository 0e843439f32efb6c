//! Construction of canonical self-avoiding polygons: word geometry, the
//! decorated game board, and the depth-first enumerator.

mod board;
mod enumerate;
mod word;

pub use board::GameBoard;
pub use enumerate::{count, enumerate, partition, Explorer};
pub use word::{square_word, Step, Word, ALPHABET};
