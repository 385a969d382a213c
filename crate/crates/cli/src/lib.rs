pub mod commands;
pub mod corpus;
pub mod engine;
pub mod report;
pub mod selfcheck;
pub mod session;
pub mod verify;
