//! HTTP service and command line around the [`infoforge`] engine.
//!
//! The router in [`api`] serves sessions, stateless recommendation
//! endpoints, provenance re-rendering and static corpus files. Sessions
//! persist through a [`store::SessionStore`]; [`store::FileStore`] keeps
//! one JSON file per session.

pub mod api;
pub mod cli;
pub mod error;
pub mod session;
pub mod store;

pub use api::{router, AppState};
pub use error::ApiError;
pub use session::{CreateSession, Session, SessionPatch};
pub use store::{FileStore, MemoryStore, SessionStore, Sessions, StoreError};
