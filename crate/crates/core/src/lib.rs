pub mod algebra;
pub mod fields;
pub mod format;
pub mod linalg;
pub mod uce;
pub mod theorem;
