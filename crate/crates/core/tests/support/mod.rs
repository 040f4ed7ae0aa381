#![allow(dead_code)]

pub mod gen;
pub mod naive;
pub mod worst_case;
pub mod traces;
