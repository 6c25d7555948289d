pub mod document;
pub mod expr;
pub mod report;
pub mod run;
