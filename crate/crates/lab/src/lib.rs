//! Scenario runner for the boostlab toolkit. The binary is a thin clap
//! front end over [`scenarios`].

// `!(a > b)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod scenarios;
