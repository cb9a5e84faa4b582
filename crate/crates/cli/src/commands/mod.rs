pub mod audit;
pub mod compare;
pub mod masks;
pub mod rank;
pub mod schema;
pub mod stability;
