#![allow(clippy::needless_range_loop)]

pub mod autonomous;
pub mod bell;
pub mod cli;
pub mod error;
pub mod flow;
pub mod homogeneity;
pub mod hurwitz;
pub mod rings;
pub mod verify;
