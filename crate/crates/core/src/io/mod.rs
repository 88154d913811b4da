pub mod graph6;
pub mod text;
