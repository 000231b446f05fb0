pub mod construct;
pub mod field;
pub mod multipoly;
pub mod setsystem;
pub mod unipoly;
pub mod vecfamily;
