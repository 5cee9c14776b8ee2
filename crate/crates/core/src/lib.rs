//! Constructions, embedding machinery and exact small-scale search for
//! oriented Ramsey numbers of sparse acyclic digraphs.

pub mod bitset;
pub mod cert;
pub mod digraph;
pub mod embed;
pub mod format;
pub mod mesh;
pub mod prefix;
pub mod ramsey;
pub mod random;
pub mod tourney;
pub mod walks;
