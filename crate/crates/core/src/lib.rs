//! Exact ramification invariants of finite extensions of `Q_p`: Newton
//! polygons, Herbrand functions, level partitions of root sets, and the
//! ramification filtration of a Galois group recovered from them.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod galois;
pub mod herbrand;
pub mod local_field;
pub mod numeric;
pub mod ramification;
