//! Exact finite-field geometry and a permutation-group engine for the natural
//! 2-transitive actions of PGL(2,n), PSL(2,n), PGU(3,n), PSU(3,n), Sz(n) and
//! Ree(n), together with checkers for their involution, conjugacy, partition
//! and semi-regular subgroup structure.

pub mod arith;
pub mod ffield;
pub mod groups;
pub mod permeng;
pub mod projgeom;
pub mod verify;
